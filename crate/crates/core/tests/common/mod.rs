//! Reference computations shared by the integration tests. They avoid the
//! library's adaptive machinery so they can serve as independent oracles.
#![allow(dead_code)]

/// Composite Simpson rule on `[y0, y1] x [t0, t1]` with `n` (even) panels per axis.
pub fn simpson2d<G: Fn(f64, f64) -> f64>(g: G, y: (f64, f64), t: (f64, f64), n: usize) -> f64 {
    assert!(n.is_multiple_of(2));
    let hy = (y.1 - y.0) / n as f64;
    let ht = (t.1 - t.0) / n as f64;
    let w = |i: usize| {
        if i == 0 || i == n {
            1.0
        } else if i % 2 == 1 {
            4.0
        } else {
            2.0
        }
    };
    let mut acc = 0.0;
    for i in 0..=n {
        let yi = y.0 + hy * i as f64;
        let mut row = 0.0;
        for j in 0..=n {
            row += w(j) * g(yi, t.0 + ht * j as f64);
        }
        acc += w(i) * row;
    }
    acc * hy * ht / 9.0
}

/// `a_n` from the self-similarity `a_n(tau) = a_{n-1}(3 tau)/2` on the left
/// third, `1/2` on the middle third, `1/2 + a_{n-1}(3 tau - 2)/2` on the right.
pub fn staircase(n: u32, tau: f64) -> f64 {
    if tau <= 0.0 {
        return 0.0;
    }
    if tau >= 1.0 {
        return 1.0;
    }
    if n == 0 {
        return tau;
    }
    if tau <= 1.0 / 3.0 {
        0.5 * staircase(n - 1, 3.0 * tau)
    } else if tau < 2.0 / 3.0 {
        0.5
    } else {
        0.5 + 0.5 * staircase(n - 1, 3.0 * tau - 2.0)
    }
}

pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|j| {
            if j + 1 == n {
                hi
            } else {
                lo + (hi - lo) * j as f64 / (n - 1) as f64
            }
        })
        .collect()
}

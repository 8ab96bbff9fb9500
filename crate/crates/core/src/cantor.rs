//! Ternary Cantor set levels, the staircase `a` and its piecewise-affine
//! approximants `a_n`, and the sets `C_y(n)` swept by the strip flow.
//!
//! Interval indices are exact integers: `C(n, k) = [k / 3^n, (k + 1) / 3^n]`
//! for `k` whose `n` ternary digits avoid 1. The staircase value at the left
//! end of the `m`-th such interval (in increasing order) is `m / 2^n`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{integrate1d, Integral, QuadratureSpec};

/// Ratio of total length between consecutive levels.
pub const Q: f64 = 2.0 / 3.0;

/// Largest level for which `3^n` fits the index arithmetic.
pub const MAX_LEVEL: u32 = 40;

/// Tree depth used when inverting the limit strip map.
const LIMIT_DEPTH: u32 = 40;

/// Ternary digits read when evaluating the limit staircase.
const LIMIT_DIGITS: u32 = 60;

/// Which staircase: the level-`n` approximant or the limit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CantorOrder {
    Level(u32),
    Limit,
}

/// The closed set `C(n)` as a union of `2^n` intervals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CantorLevel {
    pub n: u32,
}

pub fn cantor_level(n: u32) -> Result<CantorLevel> {
    if n > MAX_LEVEL {
        return Err(Error::InvalidArgument(format!(
            "Cantor level {n} exceeds {MAX_LEVEL}"
        )));
    }
    Ok(CantorLevel { n })
}

impl CantorLevel {
    pub fn count(&self) -> u64 {
        1u64 << self.n
    }

    pub fn denominator(&self) -> u64 {
        3u64.pow(self.n)
    }

    pub fn total_length(&self) -> f64 {
        Q.powi(self.n as i32)
    }

    /// Index `k` of the `m`-th interval: the binary digits of `m` become ternary digits 0/2.
    pub fn index(&self, m: u64) -> u64 {
        let mut k = 0u64;
        for bit in (0..self.n).rev() {
            k = 3 * k + 2 * ((m >> bit) & 1);
        }
        k
    }

    /// The index set `J_n` in increasing order.
    pub fn indices(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.count()).map(move |m| self.index(m))
    }

    pub fn interval(&self, k: u64) -> (f64, f64) {
        let d = self.denominator() as f64;
        (k as f64 / d, (k + 1) as f64 / d)
    }

    /// Is `k` in `J_n`?
    pub fn contains_index(&self, k: u64) -> bool {
        if k >= self.denominator() {
            return false;
        }
        let mut k = k;
        for _ in 0..self.n {
            if k % 3 == 1 {
                return false;
            }
            k /= 3;
        }
        true
    }

    /// `(tau_left, a(tau_left))` for every interval, in increasing order.
    pub fn left_ends(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        let d = self.denominator() as f64;
        let two_n = (1u64 << self.n) as f64;
        (0..self.count()).map(move |m| (self.index(m) as f64 / d, m as f64 / two_n))
    }

    /// All interval endpoints, sorted; these are where `a_n'` jumps.
    pub fn breakpoints(&self) -> Vec<f64> {
        let d = self.denominator() as f64;
        let mut out = Vec::with_capacity(2 * self.count() as usize);
        for k in self.indices() {
            out.push(k as f64 / d);
            out.push((k + 1) as f64 / d);
        }
        out.dedup();
        out
    }
}

/// Exact ternary expansion of a double in `(0, 1)`.
struct TernaryDigits {
    num: u128,
    shift: u32,
}

impl TernaryDigits {
    /// `None` when the number has too many binary digits to track in 128 bits.
    fn new(x: f64) -> Option<Self> {
        debug_assert!(x > 0.0 && x < 1.0);
        let bits = x.to_bits();
        let exp = ((bits >> 52) & 0x7ff) as i32;
        let (mant, e) = if exp == 0 {
            (bits & ((1u64 << 52) - 1), -1074)
        } else {
            ((bits & ((1u64 << 52) - 1)) | (1u64 << 52), exp - 1075)
        };
        // x = mant * 2^e with e < 0
        let shift = (-e) as u32;
        if shift > 125 {
            return None;
        }
        Some(Self {
            num: mant as u128,
            shift,
        })
    }

    fn next_digit(&mut self) -> u8 {
        let v = self.num * 3;
        let d = (v >> self.shift) as u8;
        self.num = v & ((1u128 << self.shift) - 1);
        d
    }

    fn remainder(&self) -> f64 {
        self.num as f64 / (1u128 << self.shift) as f64
    }
}

fn depth_of(order: CantorOrder) -> u32 {
    match order {
        CantorOrder::Level(n) => n,
        CantorOrder::Limit => LIMIT_DIGITS,
    }
}

/// Staircase value: `a_n(tau)` for `Level(n)`, the Cantor function for `Limit`.
pub fn cantor_a(order: CantorOrder, tau: f64) -> f64 {
    if !(tau > 0.0) {
        return 0.0;
    }
    if tau >= 1.0 {
        return 1.0;
    }
    let depth = depth_of(order);
    let Some(mut digits) = TernaryDigits::new(tau) else {
        // below 2^-72 every relevant digit is 0 up to depth ~45; use self-similarity
        let k = 40;
        let scaled = tau * 3f64.powi(k);
        let inner = match order {
            CantorOrder::Level(n) if n <= k as u32 => return tau * 1.5f64.powi(n as i32),
            CantorOrder::Level(n) => CantorOrder::Level(n - k as u32),
            CantorOrder::Limit => CantorOrder::Limit,
        };
        return cantor_a(inner, scaled) / 2f64.powi(k);
    };
    let mut acc = 0.0;
    let mut scale = 1.0;
    for _ in 0..depth {
        scale *= 0.5;
        match digits.next_digit() {
            0 => {}
            1 => return acc + scale,
            _ => acc += scale,
        }
    }
    acc + scale * digits.remainder()
}

/// `a_n'(tau)`: `q^-n` on the interior of `C(n)`, 0 elsewhere. On interval
/// endpoints the ternary descent decides, which amounts to a one-sided value.
/// The limit staircase has no bounded derivative on the Cantor set; `None`
/// is returned there.
pub fn cantor_slope(order: CantorOrder, tau: f64) -> Option<f64> {
    if !(tau > 0.0) || tau >= 1.0 {
        return Some(0.0);
    }
    let depth = depth_of(order);
    let in_set = match TernaryDigits::new(tau) {
        Some(mut d) => (0..depth).all(|_| d.next_digit() != 1),
        None => true,
    };
    match order {
        CantorOrder::Level(n) => Some(if in_set { 1.5f64.powi(n as i32) } else { 0.0 }),
        CantorOrder::Limit => {
            if in_set {
                None
            } else {
                Some(0.0)
            }
        }
    }
}

/// Result of inverting `tau -> a(tau) y^2 / 2 + tau` at a given `t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Inverse {
    pub tau: f64,
    pub a: f64,
    /// `tau` lies in an interval of `C(depth)` rather than in a gap.
    pub in_set: bool,
}

/// Solve `a(tau) y^2 / 2 + tau = t` by descending the ternary tree in the
/// image variable. Gaps are solved in closed form; at the bottom level the
/// approximant is affine and solved exactly.
pub fn cantor_inverse(order: CantorOrder, y: f64, t: f64) -> Inverse {
    let hy = 0.5 * y * y;
    if t <= 0.0 {
        return Inverse {
            tau: t,
            a: 0.0,
            in_set: false,
        };
    }
    if t >= 1.0 + hy {
        return Inverse {
            tau: t - hy,
            a: 1.0,
            in_set: false,
        };
    }
    let depth = match order {
        CantorOrder::Level(n) => n,
        CantorOrder::Limit => LIMIT_DEPTH,
    };
    // current interval [k / 3^m, (k+1) / 3^m], staircase values [alo, alo + 2^-m]
    let mut k: u64 = 0;
    let mut pow3: u64 = 1;
    let mut alo = 0.0;
    let mut awidth = 1.0;
    for _ in 0..depth {
        let third = 1.0 / (3 * pow3) as f64;
        let lo = k as f64 / pow3 as f64;
        let amid = alo + 0.5 * awidth;
        let gap_lo = lo + third;
        let gap_hi = lo + 2.0 * third;
        let t_gap_lo = amid * hy + gap_lo;
        let t_gap_hi = amid * hy + gap_hi;
        if t < t_gap_lo {
            k *= 3;
        } else if t > t_gap_hi {
            k = 3 * k + 2;
            alo = amid;
        } else {
            return Inverse {
                tau: (t - amid * hy).clamp(gap_lo, gap_hi),
                a: amid,
                in_set: false,
            };
        }
        pow3 *= 3;
        awidth *= 0.5;
    }
    let lo = k as f64 / pow3 as f64;
    let width = 1.0 / pow3 as f64;
    let slope = awidth / width;
    let tau = lo + (t - alo * hy - lo) / (1.0 + slope * hy);
    let tau = tau.clamp(lo, lo + width);
    Inverse {
        tau,
        a: alo + slope * (tau - lo),
        in_set: true,
    }
}

/// `C_y(n)`: images of the level-`n` intervals under `tau -> a(tau) y^2/2 + tau`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CySets {
    pub n: u32,
    pub y: f64,
    pub intervals: Vec<(f64, f64)>,
    /// Length of each interval, `2^-n (y^2/2 + q^n)`.
    pub piece_length: f64,
    /// `|C_y(n)| = y^2/2 + q^n`
    pub measure_level: f64,
    /// `|C_y| = y^2/2`
    pub measure_limit: f64,
}

pub fn cy_sets(n: u32, y: f64) -> Result<CySets> {
    let level = cantor_level(n)?;
    if n > 24 {
        return Err(Error::InvalidArgument(format!(
            "enumerating 2^{n} intervals is not supported; use n <= 24"
        )));
    }
    let hy = 0.5 * y * y;
    let d = level.denominator() as f64;
    let da = 1.0 / (1u64 << n) as f64;
    let intervals: Vec<(f64, f64)> = level
        .left_ends()
        .map(|(tau, a)| (a * hy + tau, (a + da) * hy + tau + 1.0 / d))
        .collect();
    Ok(CySets {
        n,
        y,
        intervals,
        piece_length: da * (hy + level.total_length()),
        measure_level: hy + level.total_length(),
        measure_limit: hy,
    })
}

/// Does `t` lie in `C_y(n)` (resp. `C_y` for the limit)?
pub fn in_cy(order: CantorOrder, y: f64, t: f64) -> bool {
    let hy = 0.5 * y * y;
    if t < 0.0 || t > 1.0 + hy {
        return false;
    }
    cantor_inverse(order, y, t).in_set
}

/// `d_t f_n(y, t)`: `y / (y^2/2 + q^n)` on `C_y(n)`, else 0; the limit gives `2 / y` on `C_y`.
pub fn cantor_dt_fn(order: CantorOrder, y: f64, t: f64) -> f64 {
    if !in_cy(order, y, t) {
        return 0.0;
    }
    match order {
        CantorOrder::Level(n) => y / (0.5 * y * y + Q.powi(n as i32)),
        CantorOrder::Limit => {
            if y == 0.0 {
                0.0
            } else {
                2.0 / y
            }
        }
    }
}

/// Closed form of `int_0^ell int |d_t f_n - d_t f|^2 dt dy`.
pub fn cantor_l2_closed(n: u32, ell: f64) -> f64 {
    let qh = Q.powf(0.5 * n as f64);
    2.0 * 2f64.sqrt() * qh * (ell / (2f64.sqrt() * qh)).atan()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct L2Distance {
    pub closed: f64,
    pub quadrature: Integral,
}

/// `L^2` distance between `d_t f_n` and `d_t f` over `[0, ell] x R`.
///
/// For fixed `y` the integrand is piecewise constant in `t`: on each
/// `C_y(n, k)` it equals `(y/(y^2/2+q^n) - 2/y)^2` on the part inside `C_y`
/// and `(y/(y^2/2+q^n))^2` on the rest. The part inside `C_y` has measure
/// `|C_y(n,k)|` minus the images of the removed gaps, which in the image
/// variable keep their length; summing the gap lengths over all deeper
/// levels leaves `2^-n y^2 / 2`. The `t` integral is therefore exact and
/// only `y` is integrated numerically.
pub fn cantor_l2_distance(n: u32, ell: f64, spec: &QuadratureSpec) -> Result<L2Distance> {
    if !(ell > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "ell={ell} must be positive"
        )));
    }
    let level = cantor_level(n)?;
    let qn = level.total_length();
    let pieces = level.count() as f64;
    let slice = |y: f64| -> f64 {
        if y == 0.0 {
            return 0.0;
        }
        let hy = 0.5 * y * y;
        let vn = y / (hy + qn);
        let vlim = 2.0 / y;
        let piece_len = (hy + qn) / pieces;
        // gaps removed from one piece at depth n + j: 2^j gaps of length 3^-(n+j+1)
        let gap_total: f64 = (0..200)
            .map(|j| 2f64.powi(j) * 3f64.powi(-(n as i32 + j + 1)))
            .take_while(|g| *g > 0.0)
            .sum();
        let inside = piece_len - gap_total;
        let outside = piece_len - inside;
        pieces * ((vn - vlim).powi(2) * inside + vn * vn * outside)
    };
    let quadrature = integrate1d(slice, 0.0, ell, &[], spec).checked()?;
    Ok(L2Distance {
        closed: cantor_l2_closed(n, ell),
        quadrature,
    })
}

/// Quantities in the vanishing bound for the negative part of the second variation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SvQuantities {
    pub n: u32,
    /// `int_0^1 a_n' / (1 + a_n^2)^{3/2}`, summed exactly over the intervals.
    pub tau_integral: f64,
    /// `int_R ds / (a_n' s^2/2 + 1) = sqrt(2 q^n) pi`
    pub s_integral_factor: f64,
    /// `M pi q^{n/2}`
    pub bound: f64,
}

pub fn cantor_sv_quantities(n: u32, m_sup: f64) -> Result<SvQuantities> {
    let level = cantor_level(n)?;
    // Partition finer than 2^24 pieces only repeats the same telescoping
    // sum; the per-interval values agree with a coarser partition exactly.
    let enum_level = cantor_level(n.min(24))?;
    let anti = |v: f64| v / (1.0 + v * v).sqrt();
    let da = 1.0 / enum_level.count() as f64;
    let mut tau_integral = 0.0;
    for m in 0..enum_level.count() {
        let a0 = m as f64 * da;
        let a1 = (m + 1) as f64 * da;
        tau_integral += anti(a1) - anti(a0);
    }
    let qn = level.total_length();
    Ok(SvQuantities {
        n,
        tau_integral,
        s_integral_factor: (2.0 * qn).sqrt() * std::f64::consts::PI,
        bound: m_sup * std::f64::consts::PI * qn.sqrt(),
    })
}

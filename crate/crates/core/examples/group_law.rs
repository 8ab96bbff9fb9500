//! Group law, dilations, the horizontal frame and the graph map.

use heis::group::{dilate, graph_map, hgroup_mul, horizontal_frame, HPoint};

fn main() -> heis::Result<()> {
    let p = HPoint::new(1.0, 2.0, 3.0);
    let q = HPoint::new(-0.5, 0.25, 1.0);
    let pq = hgroup_mul(p, q);
    println!("p q        = {pq:?}");
    println!("p p^-1     = {:?}", hgroup_mul(p, p.inverse()));

    let lam = 2.0;
    let lhs = dilate(lam, pq)?;
    let rhs = hgroup_mul(dilate(lam, p)?, dilate(lam, q)?);
    println!(
        "delta_2(pq) - delta_2(p) delta_2(q) = {:.3e}",
        lhs.dist_euclid(&rhs)
    );

    let (x, y) = horizontal_frame(p);
    println!("X(p) = {:?}", x.ambient());
    println!("Y(p) = {:?}", y.ambient());

    // a point of the intrinsic graph of f at (y, t) = (1, 0.3) with f = 0.6
    println!("graph point = {:?}", graph_map(0.6, 1.0, 0.3));
    Ok(())
}

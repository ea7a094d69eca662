//! Single instances of each inequality, with margins and noise bounds.

use affquerm::verify::{check_af, check_bm, check_minkowski, check_product, random_polytope};
use affquerm::{InequalityReport, SampleStream};

fn show(r: &InequalityReport) {
    println!(
        "{:<20} lhs {:>10.6}  rhs {:>10.6}  margin {:>+10.6}  noise {:.2e}  {}",
        r.kind.name(),
        r.lhs,
        r.rhs,
        r.margin,
        r.noise_bound,
        if r.satisfied { "ok" } else { "VIOLATED" }
    );
}

fn main() -> affquerm::Result<()> {
    let bodies: Vec<_> = (0..3)
        .map(|t| random_polytope(SampleStream::new(42, t), 3, 8))
        .collect::<Result<_, _>>()?;
    let (k, l) = (&bodies[0], &bodies[1]);
    show(&check_minkowski(k, l, 2, 2000, 1)?);
    show(&check_af(&bodies[..2], 2, 2000, 1)?);
    show(&check_product(&bodies[..2], 2000, 1)?);
    // three bodies in R^3: j = n, both sides are exact mixed volumes
    show(&check_product(&bodies, 2000, 1)?);
    for eps in [0.5, 1.0, 2.0] {
        show(&check_bm(k, l, eps, 2, 2000, 1)?);
    }

    // equality case: K and a homothetic copy
    let copy = k.scale(2.5)?.translate(&[0.3, -0.1, 0.2])?;
    let r = check_minkowski(k, &copy, 2, 2000, 1)?;
    print!("homothetic pair: ");
    show(&r);
    Ok(())
}

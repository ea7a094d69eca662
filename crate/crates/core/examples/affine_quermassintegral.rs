//! Monte Carlo estimates of Phi_{n-j}(K) with standard errors.

use affquerm::querm::phi;
use affquerm::Body;

fn main() -> affquerm::Result<()> {
    let ball = Body::unit_ball(3)?;
    let cube = Body::cube(3, 1.0)?;
    for j in 0..=3 {
        let b = phi(&ball, j, 500, 0)?;
        println!("Phi_{}(B) = {:.12}", 3 - j, b.value);
    }
    for samples in [500, 2000, 8000] {
        let e = phi(&cube, 2, samples, 1)?;
        println!(
            "Phi_1(C), N = {samples:>5}: {:.6} +- {:.6}",
            e.value, e.std_error
        );
    }
    let big = phi(&cube.scale(2.0)?, 2, 2000, 1)?;
    println!(
        "Phi_1(2C) / Phi_1(C) = {:.12} (homogeneous of degree j = 2)",
        big.value / phi(&cube, 2, 2000, 1)?.value
    );
    Ok(())
}

//! In the plane Phi_1(K) reduces to a one-dimensional integral of the
//! width function, which quadrature evaluates to near machine precision.

use affquerm::cli::seeded_pentagon;
use affquerm::querm::{phi, phi_exact_2d};
use affquerm::Body;

fn main() -> affquerm::Result<()> {
    let square = Body::cube(2, 1.0)?;
    let closed = std::f64::consts::PI / (8.0 / std::f64::consts::PI).sqrt();
    println!(
        "unit square: quadrature {:.15}, closed form {closed:.15}",
        phi_exact_2d(&square, 4096)?
    );

    for seed in 0..5 {
        let k = seeded_pentagon(seed);
        let exact = phi_exact_2d(&k, 1024)?;
        let mc = phi(&k, 1, 2000, seed + 100)?;
        println!(
            "pentagon {seed}: exact {exact:.6}, Monte Carlo {:.6} +- {:.6} ({:+.2} sigma)",
            mc.value,
            mc.std_error,
            (mc.value - exact) / mc.std_error
        );
    }
    Ok(())
}

//! Mixed volumes by polarization, checked against a polynomial fit.

use affquerm::mixedvol::{mixed_volume, mixed_volume_detailed, mixed_volume_oracle};
use affquerm::verify::random_polytope;
use affquerm::{Body, SampleStream};

fn rect(a: f64, b: f64) -> affquerm::Result<Body> {
    affquerm::geometry::convex_hull(&[vec![0.0, 0.0], vec![a, 0.0], vec![0.0, b], vec![a, b]], 2)
}

fn main() -> affquerm::Result<()> {
    // V(K, L) for axis-parallel rectangles is (a1 b2 + a2 b1) / 2
    let v = mixed_volume(&[rect(1.0, 2.0)?, rect(3.0, 4.0)?])?;
    println!("V([0,1]x[0,2], [0,3]x[0,4]) = {v}");

    let cube = Body::cube(3, 1.0)?;
    println!(
        "V(C, C, C) = vol(C) = {}",
        mixed_volume(&[cube.clone(), cube.clone(), cube])?
    );

    let bodies: Vec<Body> = (0..3)
        .map(|t| random_polytope(SampleStream::new(11, t), 3, 7))
        .collect::<Result<_, _>>()?;
    let detailed = mixed_volume_detailed(&bodies)?;
    let fit = mixed_volume_oracle(&bodies, 5)?;
    println!(
        "random triple: polarization {:.12}, polynomial fit {:.12}, cancellation ratio {:.2}",
        detailed.value, fit, detailed.cancellation_ratio
    );
    Ok(())
}

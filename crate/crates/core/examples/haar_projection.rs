//! Haar-random subspaces and projections onto them.

use affquerm::grassmann::{haar_sample, project};
use affquerm::{Body, SampleStream};

fn main() -> affquerm::Result<()> {
    let cube = Body::cube(3, 1.0)?;
    let seed = 7;
    for i in 0..4 {
        let xi = haar_sample(SampleStream::new(seed, i), 3, 2)?;
        let shadow = project(&cube, &xi)?;
        println!(
            "xi_{i}: residual {:.1e}, shadow has {} vertices, area {:.6}",
            xi.orthonormality_residual(),
            shadow.vertex_count().unwrap(),
            shadow.volume()
        );
    }

    // the shadow area of the unit cube averages to 3/2 over G(3,2)
    let n = 20_000;
    let mean: f64 = (0..n)
        .map(|i| {
            project(
                &cube,
                &haar_sample(SampleStream::new(seed, i), 3, 2).unwrap(),
            )
            .unwrap()
            .volume()
        })
        .sum::<f64>()
        / n as f64;
    println!("mean shadow area over {n} planes: {mean:.4} (exact 1.5)");
    Ok(())
}

//! Convex hulls, volumes and the basic body operations.

use affquerm::geometry::{convex_hull, unit_ball_volume};
use affquerm::{Body, LinearMap};

fn main() -> affquerm::Result<()> {
    // square with its center and edge midpoints: only the corners survive
    let pts = vec![
        vec![0.0, 0.0],
        vec![1.0, 0.0],
        vec![1.0, 1.0],
        vec![0.0, 1.0],
        vec![0.5, 0.5],
        vec![0.5, 0.0],
    ];
    let sq = convex_hull(&pts, 2)?;
    println!(
        "square: {} vertices, area {}",
        sq.vertex_count().unwrap(),
        sq.volume()
    );

    let cube = Body::cube(3, 1.0)?;
    let simplex = Body::simplex(3)?;
    let sum = cube.minkowski_sum(&simplex)?;
    println!("vol(cube) = {}", cube.volume());
    println!("vol(simplex) = {:.12}", simplex.volume());
    println!(
        "vol(cube + simplex) = {:.12} ({} vertices)",
        sum.volume(),
        sum.vertex_count().unwrap()
    );
    println!("vol(2 cube) = {}", cube.scale(2.0)?.volume());

    let shear = LinearMap::new(&[
        vec![1.0, 0.7, 0.0],
        vec![0.0, 1.0, 0.0],
        vec![0.0, 0.0, 1.0],
    ])?;
    let sheared = cube.linear_image(&shear)?;
    println!("unimodular shear keeps volume: {:.15}", sheared.volume());

    // a planar triangle in R^3 is handled in its affine hull
    let flat = convex_hull(
        &[
            vec![0.0, 0.0, 0.0],
            vec![1.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
        ],
        3,
    )?;
    println!(
        "flat triangle: affine dim {}, volume {}",
        flat.affine_dim(),
        flat.volume()
    );

    for d in 1..=4 {
        println!("omega_{d} = {:.12}", unit_ball_volume(d));
    }
    Ok(())
}

//! Mixed, two-body and i-th mixed affine quermassintegrals.

use affquerm::querm::{phi, phi_ith, phi_ith_mixed, phi_mixed, phi_pair};
use affquerm::verify::random_polytope;
use affquerm::{Body, SampleStream};

fn main() -> affquerm::Result<()> {
    let k = random_polytope(SampleStream::new(3, 0), 3, 8)?;
    let l = random_polytope(SampleStream::new(3, 1), 3, 8)?;
    let (n_samples, seed) = (2000, 5);

    let same = phi_mixed(&[k.clone(), k.clone()], n_samples, seed)?;
    let plain = phi(&k, 2, n_samples, seed)?;
    println!(
        "Phi_1(K, K) = {} and Phi_1(K) = {}",
        same.value, plain.value
    );

    let mixed = phi_mixed(&[k.clone(), l.clone()], n_samples, seed)?;
    println!("Phi_1(K, L) = {:.6} +- {:.6}", mixed.value, mixed.std_error);
    let pair = phi_pair(&k, &l, 3, n_samples, seed)?;
    println!("Phi_0(K, K, L) = {:.6} (j = n, exact)", pair.value);

    let cube = Body::cube(3, 1.0)?;
    for i in 0..2 {
        let e = phi_ith(&cube, i, 2, 200, n_samples, seed)?;
        println!("Phi_(1,{i})(C) = {:.6} +- {:.6}", e.value, e.std_error);
    }
    let e = phi_ith_mixed(&cube, &k, 1, 3, 200, n_samples, seed)?;
    println!("Phi_(0,1)(C, K) = {:.6}", e.value);
    Ok(())
}

use affquerm::geometry::convex_hull;
use affquerm::verify::random_polytope;
use affquerm::{Body, LinearMap, SampleStream};
use proptest::prelude::*;

fn points(dim: usize, max: usize) -> impl Strategy<Value = Vec<Vec<f64>>> {
    prop::collection::vec(prop::collection::vec(-10.0..10.0f64, dim), dim + 1..max)
}

/// Shoelace area of the hull vertices, ordered by angle about their mean.
fn shoelace(body: &Body) -> f64 {
    let p = body.as_polytope().unwrap();
    let mut v: Vec<[f64; 2]> = p.vertices().map(|x| [x[0], x[1]]).collect();
    let (cx, cy) = v.iter().fold((0.0, 0.0), |(a, b), x| (a + x[0], b + x[1]));
    let (cx, cy) = (cx / v.len() as f64, cy / v.len() as f64);
    v.sort_by(|a, b| {
        (a[1] - cy)
            .atan2(a[0] - cx)
            .total_cmp(&(b[1] - cy).atan2(b[0] - cx))
    });
    let n = v.len();
    0.5 * (0..n)
        .map(|i| v[i][0] * v[(i + 1) % n][1] - v[(i + 1) % n][0] * v[i][1])
        .sum::<f64>()
        .abs()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hull_is_idempotent(pts in points(3, 25)) {
        let h = convex_hull(&pts, 3).unwrap();
        let verts: Vec<Vec<f64>> = h.as_polytope().unwrap().vertices().map(<[f64]>::to_vec).collect();
        let again = convex_hull(&verts, 3).unwrap();
        prop_assert_eq!(again.vertex_count(), h.vertex_count());
        prop_assert!((again.volume() - h.volume()).abs() <= 1e-12 * h.volume().max(1.0));
    }

    #[test]
    fn planar_area_matches_shoelace(pts in points(2, 30)) {
        let h = convex_hull(&pts, 2).unwrap();
        prop_assume!(h.affine_dim() == 2);
        let s = shoelace(&h);
        prop_assert!((h.volume() - s).abs() <= 1e-9 * s.max(1.0), "{} vs {}", h.volume(), s);
    }

    #[test]
    fn self_sum_doubles_linearly(seed in 0u64..1000, dim in 2usize..=4) {
        let p = random_polytope(SampleStream::new(seed, 0), dim, dim + 4).unwrap();
        let s = p.minkowski_sum(&p).unwrap();
        let expect = 2f64.powi(dim as i32) * p.volume();
        prop_assert!((s.volume() - expect).abs() <= 1e-9 * expect);
        prop_assert!(s.is_homothetic_to(&p));
    }

    #[test]
    fn linear_image_scales_by_det(seed in 0u64..1000, m in prop::collection::vec(-2.0..2.0f64, 9)) {
        let rows: Vec<Vec<f64>> = m.chunks(3).map(<[f64]>::to_vec).collect();
        let map = LinearMap::new(&rows).unwrap();
        prop_assume!(map.det().abs() > 1e-3);
        let p = random_polytope(SampleStream::new(seed, 1), 3, 8).unwrap();
        let img = p.linear_image(&map).unwrap();
        let expect = map.det().abs() * p.volume();
        prop_assert!((img.volume() - expect).abs() <= 1e-8 * expect.max(1e-6));
    }

    #[test]
    fn translation_keeps_volume(seed in 0u64..1000, v in prop::collection::vec(-5.0..5.0f64, 3)) {
        let p = random_polytope(SampleStream::new(seed, 2), 3, 9).unwrap();
        let q = p.translate(&v).unwrap();
        prop_assert!((q.volume() - p.volume()).abs() <= 1e-10 * p.volume());
        prop_assert!(q.is_homothetic_to(&p));
    }
}

#[test]
fn cube_plus_simplex_volume() {
    // vol(C + T) = vol C + 3 V(C,C,T) + 3 V(C,T,T) + vol T, where 3 V(C,C,T) sums
    // h_T over the cube's facets (= 3) and 3 V(T,T,C) sums h_C times facet area
    // over the simplex's facets (= sqrt 3 * sqrt 3 / 2)
    let s = Body::cube(3, 1.0)
        .unwrap()
        .minkowski_sum(&Body::simplex(3).unwrap())
        .unwrap();
    assert!((s.volume() - (1.0 + 3.0 + 1.5 + 1.0 / 6.0)).abs() < 1e-12);
}

//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::Instant;

use affquerm::cli::{haar_first_coordinate_moment, seeded_pentagon};
use affquerm::geometry::{convex_hull, unit_ball_volume};
use affquerm::mixedvol::{mixed_volume, mixed_volume_oracle};
use affquerm::querm::{phi, phi_exact_2d, phi_mixed};
use affquerm::rng::derive_seed;
use affquerm::verify::{random_polytope, random_sl_matrix, run_suite};
use affquerm::{Body, InequalityKind, SampleStream, SuiteConfig};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn poly(seed: u64, index: u64, dim: usize, vertices: usize) -> Body {
    random_polytope(SampleStream::new(seed, index), dim, vertices).expect("random polytope")
}

fn ball_identity() -> Outcome {
    let ball = Body::unit_ball(3).map_err(|e| e.to_string())?;
    let omega3 = 4.0 * std::f64::consts::PI / 3.0;
    ensure((unit_ball_volume(3) - omega3).abs() < 1e-15, || {
        "omega_3".into()
    })?;
    for j in [1, 2] {
        let e = phi(&ball, j, 2000, 0).map_err(|e| e.to_string())?;
        ensure(e.value == unit_ball_volume(3) && e.std_error == 0.0, || {
            format!("j={j}: {e:?}")
        })?;
    }
    let cube = Body::cube(3, 1.0).map_err(|e| e.to_string())?;
    let e0 = phi(&cube, 0, 2000, 0).map_err(|e| e.to_string())?;
    let e3 = phi(&cube, 3, 2000, 0).map_err(|e| e.to_string())?;
    ensure(
        e0.value == unit_ball_volume(3) && e0.std_error == 0.0,
        || format!("j=0: {e0:?}"),
    )?;
    ensure(e3.value == 1.0 && e3.std_error == 0.0, || {
        format!("j=3: {e3:?}")
    })?;
    Ok("ball j=1,2 and cube endpoints exact".into())
}

fn homogeneity() -> Outcome {
    let mut worst: f64 = 0.0;
    for t in 0..10u64 {
        let k = poly(100, 2 * t, 3, 6 + (t as usize % 5));
        let l = poly(100, 2 * t + 1, 3, 6 + (t as usize % 4));
        let k2 = k.scale(2.0).unwrap();
        for j in [1, 2] {
            let a = phi(&k2, j, 500, t).unwrap().value;
            let b = phi(&k, j, 500, t).unwrap().value;
            worst = worst.max(rel(a, 2f64.powi(j as i32) * b));
        }
        let a = phi_mixed(&[k2.clone(), l.clone()], 500, t).unwrap().value;
        let b = phi_mixed(&[k.clone(), l.clone()], 500, t).unwrap().value;
        worst = worst.max(rel(a, 2.0 * b));
    }
    ensure(worst <= 1e-10, || {
        format!("worst relative error {worst:.3e}")
    })?;
    Ok(format!("10 polytopes, worst relative error {worst:.2e}"))
}

fn rect(a: f64, b: f64) -> Body {
    convex_hull(&[vec![0.0, 0.0], vec![a, 0.0], vec![0.0, b], vec![a, b]], 2).unwrap()
}

fn mixed_volume_diagonal() -> Outcome {
    let mut worst: f64 = 0.0;
    for j in [2usize, 3, 4] {
        for t in 0..5u64 {
            let k = poly(200 + j as u64, t, j, j + 3 + t as usize);
            let v = mixed_volume(&vec![k.clone(); j]).unwrap();
            worst = worst.max(rel(v, k.volume()));
        }
    }
    ensure(worst <= 1e-8, || format!("diagonal worst {worst:.3e}"))?;
    let r = mixed_volume(&[rect(1.0, 2.0), rect(3.0, 4.0)]).unwrap();
    ensure((r - 5.0).abs() <= 1e-9, || format!("rectangles {r}"))?;
    let seg = convex_hull(&[vec![0.0, 0.0], vec![1.0, 0.0]], 2).unwrap();
    let s = mixed_volume(&[rect(1.0, 1.0), seg]).unwrap();
    ensure((s - 0.5).abs() <= 1e-12, || format!("square-segment {s}"))?;
    Ok(format!(
        "diagonal worst {worst:.2e}, rectangles {r}, square-segment {s}"
    ))
}

fn oracle_agreement() -> Outcome {
    let mut worst: f64 = 0.0;
    for t in 0..20u64 {
        let bodies: Vec<Body> = (0..3)
            .map(|i| poly(300 + t, i, 3, 5 + ((t + i) as usize % 6)))
            .collect();
        let a = mixed_volume(&bodies).unwrap();
        let b = mixed_volume_oracle(&bodies, 5).unwrap();
        worst = worst.max(rel(a, b));
    }
    ensure(worst <= 1e-6, || format!("mixed volume worst {worst:.3e}"))?;
    let mut worst_sigma: f64 = 0.0;
    for seed in 0..5u64 {
        let k = seeded_pentagon(seed);
        let exact = phi_exact_2d(&k, 1024).unwrap();
        let mc = phi(&k, 1, 2000, derive_seed(seed, 1)).unwrap();
        let z = (mc.value - exact).abs() / mc.std_error;
        worst_sigma = worst_sigma.max(z);
        ensure(z <= 3.0, || {
            format!("pentagon {seed}: {} vs {exact} at {z:.2} sigma", mc.value)
        })?;
    }
    Ok(format!(
        "20 triples worst rel {worst:.2e}; 5 polygons worst {worst_sigma:.2} sigma"
    ))
}

fn haar_moment() -> Outcome {
    let (mean, se) = haar_first_coordinate_moment(100_000, 0).map_err(|e| e.to_string())?;
    let z = (mean - 1.0 / 3.0).abs() / se;
    ensure(z <= 3.0, || format!("mean {mean} at {z:.2} sigma"))?;
    Ok(format!("mean {mean:.5}, {z:.2} sigma"))
}

fn theorem_suite() -> Outcome {
    let config = SuiteConfig {
        suites: vec![
            InequalityKind::Minkowski,
            InequalityKind::AleksandrovFenchel,
            InequalityKind::Product,
            InequalityKind::BrunnMinkowski,
        ],
        instances: 100,
        n: 3,
        j: 2,
        samples: 2000,
        r: 2,
        epsilons: vec![0.5, 1.0, 2.0],
        ..SuiteConfig::default()
    };
    let report = run_suite(&config).map_err(|e| e.to_string())?;
    ensure(report.errors.is_empty(), || {
        format!("{} instance errors", report.errors.len())
    })?;
    ensure(report.reports.len() == 600, || {
        format!("{} reports", report.reports.len())
    })?;
    let violated = report
        .reports
        .iter()
        .filter(|r| r.margin < -r.noise_bound)
        .count();
    ensure(violated == 0, || format!("{violated} violations"))?;
    let homothetic: Vec<_> = report
        .reports
        .iter()
        .filter(|r| r.equality_expected)
        .collect();
    ensure(!homothetic.is_empty(), || "no homothetic instances".into())?;
    let off = homothetic
        .iter()
        .filter(|r| r.margin.abs() > r.noise_bound)
        .count();
    ensure(off == 0, || {
        format!("{off} homothetic instances outside the noise bound")
    })?;
    Ok(format!(
        "600 instances, 0 violations, {} homothetic within noise",
        homothetic.len()
    ))
}

fn sl_invariance() -> Outcome {
    let mut within = 0;
    let mut worst: f64 = 0.0;
    for t in 0..20u64 {
        let bodies = vec![poly(700, 2 * t, 3, 7), poly(700, 2 * t + 1, 3, 8)];
        let g = random_sl_matrix(SampleStream::new(701, t), 3).unwrap();
        let moved: Vec<Body> = bodies.iter().map(|b| b.linear_image(&g).unwrap()).collect();
        let a = phi_mixed(&moved, 10_000, derive_seed(702, 2 * t)).unwrap();
        let b = phi_mixed(&bodies, 10_000, derive_seed(702, 2 * t + 1)).unwrap();
        let z = (a.value - b.value).abs() / a.std_error.hypot(b.std_error);
        worst = worst.max(z);
        within += usize::from(z <= 3.0);
    }
    ensure(within >= 19, || format!("only {within}/20 within 3 sigma"))?;
    Ok(format!(
        "{within}/20 within 3 sigma, worst {worst:.2} sigma"
    ))
}

fn run_cli(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_affquerm"))
        .args(args)
        .output()
        .expect("spawn affquerm");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = |name: &str| dir.path().join(name).to_string_lossy().into_owned();
    let (k, l) = (path("k.json"), path("l.json"));
    for (file, kind) in [(&k, "--random"), (&l, "--cube")] {
        let (code, _) = run_cli(&[
            "gen",
            "--out",
            file,
            kind,
            "--dim",
            "3",
            "--vertices",
            "9",
            "--seed",
            "4",
        ]);
        ensure(code == 0, || format!("gen {kind} exited {code}"))?;
    }
    let first = std::fs::read(&k).map_err(|e| e.to_string())?;
    run_cli(&[
        "gen",
        "--out",
        &k,
        "--random",
        "--dim",
        "3",
        "--vertices",
        "9",
        "--seed",
        "4",
    ]);
    ensure(
        std::fs::read(&k).map_err(|e| e.to_string())? == first,
        || "gen not byte-identical".into(),
    )?;

    let both = format!("{k},{l}");
    let invocations: Vec<Vec<&str>> = vec![
        vec!["compute", "--bodies", &k, "-j", "2", "--samples", "3000"],
        vec![
            "compute",
            "--bodies",
            &both,
            "--samples",
            "3000",
            "--format",
            "csv",
        ],
        vec![
            "compute",
            "--bodies",
            &both,
            "-j",
            "2",
            "--ith",
            "1",
            "--samples",
            "1000",
        ],
        vec![
            "verify",
            "--suite",
            "all",
            "--instances",
            "4",
            "--samples",
            "500",
            "--seed",
            "3",
        ],
        vec![
            "verify",
            "--suite",
            "bm",
            "--instances",
            "4",
            "--format",
            "csv",
            "--epsilon",
            "0.5",
        ],
        vec!["oracle", "--check", "phi2d", "--seed", "2"],
        vec!["oracle", "--check", "mixedvol", "--seed", "2"],
    ];
    for args in &invocations {
        let (code, reference) = run_cli(args);
        ensure(code == 0 && !reference.is_empty(), || {
            format!("{args:?} exited {code}")
        })?;
        for threads in [None, Some("1"), Some("2"), Some("4")] {
            let mut full: Vec<&str> = args.clone();
            if let Some(t) = threads {
                full.extend(["--threads", t]);
            }
            let (c, out) = run_cli(&full);
            ensure(c == code && out == reference, || {
                format!("{full:?} differs")
            })?;
        }
    }
    Ok(format!(
        "{} invocations x 5 runs byte-identical; gen replayable",
        invocations.len()
    ))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("1 ball identity and endpoints", ball_identity),
        ("2 homogeneity and multilinearity", homogeneity),
        (
            "3 mixed volume diagonal and hand instances",
            mixed_volume_diagonal,
        ),
        ("4 oracle agreement", oracle_agreement),
        ("5 Haar sampler moment", haar_moment),
        ("6 theorem suite", theorem_suite),
        ("7 SL(n) invariance", sl_invariance),
        ("8 CLI determinism", determinism),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (name, check) in criteria {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or(p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default())
        });
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS  {name}: {detail} ({secs:.1}s)"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name}: {detail} ({secs:.1}s)");
            }
        }
    }
    let total = start.elapsed().as_secs_f64();
    let budget_ok = total < 300.0;
    println!(
        "{}  total runtime {total:.1}s (budget 300s)",
        if budget_ok { "PASS" } else { "FAIL" }
    );
    if failed > 0 || !budget_ok {
        std::process::exit(1);
    }
}

//! Run the seeded verification corpus and summarize it per inequality.
//!
//! ```text
//! cargo run --release --example verification_suite -- [instances] [samples] [seed]
//! ```

use std::collections::BTreeMap;
use std::time::Instant;

use affquerm::verify::run_suite;
use affquerm::{InequalityKind, SuiteConfig};

fn main() {
    let mut args = std::env::args()
        .skip(1)
        .map(|a| a.parse::<u64>().expect("numeric argument"));
    let config = SuiteConfig {
        instances: args.next().unwrap_or(20) as usize,
        samples: args.next().unwrap_or(2000) as usize,
        master_seed: args.next().unwrap_or(0),
        epsilons: vec![0.5, 1.0, 2.0],
        ..SuiteConfig::default()
    };
    let start = Instant::now();
    let report = run_suite(&config).expect("valid configuration");
    let mut per_kind: BTreeMap<InequalityKind, (usize, usize, f64)> = BTreeMap::new();
    for r in &report.reports {
        let e = per_kind.entry(r.kind).or_insert((0, 0, f64::INFINITY));
        e.0 += 1;
        e.1 += usize::from(!r.satisfied);
        // smallest margin in units of its noise bound
        if r.noise_bound > 0.0 {
            e.2 = e.2.min(r.margin / r.noise_bound);
        }
    }
    println!(
        "{:<22} {:>9} {:>9} {:>14}",
        "inequality", "instances", "violated", "min margin/nb"
    );
    for (kind, (count, bad, worst)) in per_kind {
        println!("{:<22} {count:>9} {bad:>9} {worst:>14.3}", kind.name());
    }
    println!(
        "satisfied {} / {} ({} errors) in {:.1?}",
        report.satisfied,
        report.reports.len(),
        report.errors.len(),
        start.elapsed()
    );
}

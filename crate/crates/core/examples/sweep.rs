//! Runs a small seeded sweep and prints the per-n summary.
//!
//! cargo run --example sweep -- [d] [max_n] [instances_per_n]

use zonelab::sweep::{run_sweep, SweepSpec};
use zonelab::verify::CheckKind;

fn main() -> zonelab::error::Result<()> {
    let args: Vec<usize> = std::env::args()
        .skip(1)
        .map(|a| a.parse().expect("integer argument"))
        .collect();
    let d = args.first().copied().unwrap_or(2);
    let max_n = args.get(1).copied().unwrap_or(6);
    let count = args.get(2).copied().unwrap_or(10);
    let spec = SweepSpec {
        d,
        n_values: (d..=max_n).collect(),
        instances_per_n: count,
        base_seed: 2024,
        checks: CheckKind::ALL.to_vec(),
    };
    let outcome = run_sweep(&spec)?;
    print!("{}", outcome.summary_csv());
    println!("failures: {}", outcome.fail_count());
    Ok(())
}

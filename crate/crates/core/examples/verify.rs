//! Runs every applicable bound check on one random instance per dimension.

use zonelab::gen::{perturb, GenConfig};
use zonelab::instance::Instance;
use zonelab::verify::{run_checks, CheckKind, CheckResult};

fn main() -> zonelab::error::Result<()> {
    println!("{}", CheckResult::csv_header());
    for (d, n) in [(1, 6), (2, 6), (3, 5)] {
        let seed = 11;
        let mut inst = Instance::generate(&GenConfig::new(seed, n, d))?;
        inst.hyperplanes = perturb(&inst.hyperplanes, &inst.body, 8, seed)?;
        let (_, checks) = run_checks(&inst.hyperplanes, &inst.body, &CheckKind::ALL, Some(seed))?;
        for c in checks {
            println!("{}", c.csv_row());
        }
    }
    Ok(())
}

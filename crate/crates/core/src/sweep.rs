//! Seeded batches of random instances with every requested check.
//!
//! Instance `index` for a given `n` uses seed
//! `base_seed ^ splitmix64((n << 32) | index)`. The body shape rotates with
//! the index: `index % 4` of 0 is a random polytope with `d + 2` facets, 1 an
//! axis box, 2 a random polytope with `2d + 2` facets, 3 a single halfspace.
//! Instances that are not in general position are perturbed with precision
//! [`SWEEP_PRECISION`] and the instance seed.

use std::fmt::Write as _;

use rayon::prelude::*;

use crate::body::general_position_check;
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::gen::{perturb, GenConfig};
use crate::instance::Instance;
use crate::verify::{run_checks, CheckKind, CheckResult, CheckStatus};
use crate::zone::{ZoneReport, MAX_DIM};

pub const CSV_VERSION: &str = "#zonelab-v1";
pub const MAX_SWEEP_DIM: usize = 4;
pub const MAX_SWEEP_N: usize = 12;
pub const MAX_INSTANCES_PER_N: usize = 200;
pub const SWEEP_PRECISION: u64 = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepSpec {
    pub d: usize,
    pub n_values: Vec<usize>,
    pub instances_per_n: usize,
    pub base_seed: u64,
    pub checks: Vec<CheckKind>,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.n_values.is_empty() {
            return Err(Error::Budget("n_values is empty".into()));
        }
        if self.n_values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Budget("n_values must be strictly increasing".into()));
        }
        if self.d == 0 || self.d > MAX_SWEEP_DIM {
            return Err(Error::Budget(format!("d must be in 1..={MAX_SWEEP_DIM}")));
        }
        if self.n_values.last().is_some_and(|&n| n > MAX_SWEEP_N) {
            return Err(Error::Budget(format!("n must be at most {MAX_SWEEP_N}")));
        }
        if self.instances_per_n > MAX_INSTANCES_PER_N {
            return Err(Error::Budget(format!(
                "at most {MAX_INSTANCES_PER_N} instances per n"
            )));
        }
        Ok(())
    }
}

pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub fn instance_seed(base_seed: u64, n: usize, index: usize) -> u64 {
    base_seed ^ splitmix64(((n as u64) << 32) | index as u64)
}

/// The generator settings used for sweep instance `index`.
pub fn sweep_config(d: usize, n: usize, index: usize, seed: u64) -> GenConfig {
    let mut cfg = GenConfig::new(seed, n, d);
    match index % 4 {
        0 => cfg.body_facets = d + 2,
        1 => cfg.axis_box = true,
        2 => cfg.body_facets = 2 * d + 2,
        _ => cfg.body_facets = 1,
    }
    cfg
}

/// Generates sweep instance `index`, perturbed into general position if needed.
/// The flag reports whether perturbation happened.
pub fn sweep_instance(
    d: usize,
    n: usize,
    index: usize,
    base_seed: u64,
) -> Result<(Instance, bool)> {
    let seed = instance_seed(base_seed, n, index);
    let mut inst = Instance::generate(&sweep_config(d, n, index, seed))?;
    if general_position_check(&inst.hyperplanes, &inst.body)?.is_empty() {
        return Ok((inst, false));
    }
    inst.hyperplanes = perturb(&inst.hyperplanes, &inst.body, SWEEP_PRECISION, seed)?;
    Ok((inst, true))
}

#[derive(Clone, Debug)]
pub struct SweepInstance {
    pub n: usize,
    pub index: usize,
    pub seed: u64,
    pub perturbed: bool,
    pub report: ZoneReport,
    pub checks: Vec<CheckResult>,
}

#[derive(Clone, Debug)]
pub struct SweepOutcome {
    pub spec: SweepSpec,
    pub instances: Vec<SweepInstance>,
}

pub fn run_sweep(spec: &SweepSpec) -> Result<SweepOutcome> {
    spec.validate()?;
    let jobs: Vec<(usize, usize)> = spec
        .n_values
        .iter()
        .flat_map(|&n| (0..spec.instances_per_n).map(move |i| (n, i)))
        .collect();
    let instances = jobs
        .par_iter()
        .map(|&(n, index)| {
            let (inst, perturbed) = sweep_instance(spec.d, n, index, spec.base_seed)?;
            let seed = inst.seed.expect("generated instances carry a seed");
            let (report, checks) =
                run_checks(&inst.hyperplanes, &inst.body, &spec.checks, Some(seed))?;
            Ok(SweepInstance {
                n,
                index,
                seed,
                perturbed,
                report,
                checks,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepOutcome {
        spec: spec.clone(),
        instances,
    })
}

fn ratio(num: usize, den: usize) -> Rational {
    Rational::from_parts(num.into(), den.into())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SummaryRow {
    pub n: usize,
    pub instances: usize,
    pub perturbed: usize,
    pub fails: usize,
    pub max_ratio_cz: Option<Rational>,
    /// `max tau_i / n` for `i < d`, absent when `n = 0`.
    pub max_tau_over_n: Vec<Option<Rational>>,
}

impl SweepOutcome {
    pub fn fail_count(&self) -> usize {
        self.all_checks()
            .filter(|c| c.status == CheckStatus::Fail)
            .count()
    }

    pub fn all_checks(&self) -> impl Iterator<Item = &CheckResult> {
        self.instances.iter().flat_map(|i| &i.checks)
    }

    pub fn summary(&self) -> Vec<SummaryRow> {
        self.spec
            .n_values
            .iter()
            .map(|&n| {
                let group: Vec<&SweepInstance> =
                    self.instances.iter().filter(|i| i.n == n).collect();
                let max_tau_over_n = (0..self.spec.d)
                    .map(|k| {
                        let m = group.iter().map(|i| i.report.tau[k]).max()?;
                        (n > 0).then(|| ratio(m, n))
                    })
                    .collect();
                SummaryRow {
                    n,
                    instances: group.len(),
                    perturbed: group.iter().filter(|i| i.perturbed).count(),
                    fails: group
                        .iter()
                        .flat_map(|i| &i.checks)
                        .filter(|c| c.status == CheckStatus::Fail)
                        .count(),
                    max_ratio_cz: group.iter().filter_map(|i| i.report.ratio_cz.clone()).max(),
                    max_tau_over_n,
                }
            })
            .collect()
    }

    pub fn checks_csv(&self) -> String {
        let mut s = format!("{CSV_VERSION}\n{}\n", CheckResult::csv_header());
        for c in self.all_checks() {
            s.push_str(&c.csv_row());
            s.push('\n');
        }
        s
    }

    pub fn zone_csv(&self) -> String {
        let mut s = format!(
            "{CSV_VERSION}\nindex,instance_seed,perturbed,{}\n",
            ZoneReport::csv_header()
        );
        for i in &self.instances {
            let _ = writeln!(
                s,
                "{},{},{},{}",
                i.index,
                i.seed,
                i.perturbed as u8,
                i.report.csv_row()
            );
        }
        s
    }

    pub fn summary_csv(&self) -> String {
        let mut s = format!("{CSV_VERSION}\nn,d,instances,perturbed,fails,max_ratio_CZ");
        for k in 0..MAX_DIM {
            let _ = write!(s, ",max_tau_{k}_over_n");
        }
        s.push('\n');
        let opt = |r: &Option<Rational>| r.as_ref().map_or(String::new(), ToString::to_string);
        for row in self.summary() {
            let _ = write!(
                s,
                "{},{},{},{},{},{}",
                row.n,
                self.spec.d,
                row.instances,
                row.perturbed,
                row.fails,
                opt(&row.max_ratio_cz)
            );
            for k in 0..MAX_DIM {
                let _ = write!(
                    s,
                    ",{}",
                    row.max_tau_over_n.get(k).map_or(String::new(), opt)
                );
            }
            s.push('\n');
        }
        s
    }

    /// Writes `checks.csv`, `zone.csv` and `summary.csv` into `dir`.
    pub fn write_to(&self, dir: &std::path::Path) -> Result<()> {
        std::fs::create_dir_all(dir)?;
        std::fs::write(dir.join("checks.csv"), self.checks_csv())?;
        std::fs::write(dir.join("zone.csv"), self.zone_csv())?;
        std::fs::write(dir.join("summary.csv"), self.summary_csv())?;
        Ok(())
    }
}

//! The `zonelab` command line: gen, zone, verify, sweep and render.
//!
//! Exit codes: 0 on success, 1 when any check FAILs, 2 on any other error.
//! `ZONELAB_SEED`, when set, replaces every seed taken from flags or files.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::arrangement::build_arrangement;
use crate::error::{Error, Result};
use crate::exact::parse_rational;
use crate::gen::{perturb, GenConfig};
use crate::instance::Instance;
use crate::render::render_svg;
use crate::sweep::{run_sweep, SweepSpec, CSV_VERSION, SWEEP_PRECISION};
use crate::verify::{run_checks, CheckKind, CheckResult, CheckStatus};
use crate::zone::{checked_analysis, ZoneReport};

pub const SEED_ENV: &str = "ZONELAB_SEED";

pub const EXIT_FAIL: u8 = 1;
pub const EXIT_ERROR: u8 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "zonelab",
    version,
    about = "Exact zone complexity experiments for convex bodies in hyperplane arrangements"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a random instance.
    Gen(GenArgs),
    /// Print the zone report of an instance.
    Zone(ZoneArgs),
    /// Run every applicable bound check on an instance.
    Verify(VerifyArgs),
    /// Run a seeded batch of random instances.
    Sweep(SweepArgs),
    /// Draw a planar instance as SVG.
    Render(RenderArgs),
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub d: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Hyperplane coefficients are drawn from [-b, b].
    #[arg(long, default_value_t = 10)]
    pub coeff_bound: i64,
    /// Number of random facets of the body (default d + 2).
    #[arg(long)]
    pub body_facets: Option<usize>,
    /// Scale of the body, as a rational.
    #[arg(long, default_value = "1")]
    pub body_scale: String,
    /// Use an axis-parallel box as the body.
    #[arg(long)]
    pub axis_box: bool,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PerturbArgs {
    /// Perturb the instance into general position first.
    #[arg(long)]
    pub perturb: bool,
    #[arg(long, default_value_t = SWEEP_PRECISION)]
    pub precision: u64,
    /// Perturbation seed; defaults to the instance seed, then 0.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct ZoneArgs {
    pub instance: PathBuf,
    #[command(flatten)]
    pub perturb: PerturbArgs,
    /// Also list every outer border as `i;face_signs;cell_signs`.
    #[arg(long)]
    pub dump_borders: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub instance: PathBuf,
    #[command(flatten)]
    pub perturb: PerturbArgs,
    /// Comma-separated check ids; all of them when absent.
    #[arg(long, value_delimiter = ',')]
    pub checks: Vec<CheckKind>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub d: usize,
    /// Values of n: a comma-separated list, or an inclusive range `a..b`.
    #[arg(long, value_parser = parse_n_values)]
    pub n: NValues,
    #[arg(long, default_value_t = 10)]
    pub instances: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_delimiter = ',')]
    pub checks: Vec<CheckKind>,
    /// Directory for checks.csv, zone.csv and summary.csv.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    pub instance: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NValues(pub Vec<usize>);

fn parse_n_values(s: &str) -> std::result::Result<NValues, String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
    if let Some((a, b)) = s.split_once("..") {
        let (a, b) = (num(a)?, num(b.trim_start_matches('='))?);
        return Ok(NValues((a..=b).collect()));
    }
    s.split(',')
        .map(num)
        .collect::<std::result::Result<_, _>>()
        .map(NValues)
}

/// `ZONELAB_SEED` if set, else `fallback`.
pub fn effective_seed(fallback: Option<u64>) -> Result<Option<u64>> {
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|e| Error::Parse(format!("{SEED_ENV}={v:?}: {e}"))),
        Err(std::env::VarError::NotPresent) => Ok(fallback),
        Err(e) => Err(Error::Parse(format!("{SEED_ENV}: {e}"))),
    }
}

fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn load(path: &Path, p: &PerturbArgs) -> Result<Instance> {
    let mut inst = Instance::read(path)?;
    if p.perturb {
        let seed = effective_seed(p.seed.or(inst.seed))?.unwrap_or(0);
        inst.hyperplanes = perturb(&inst.hyperplanes, &inst.body, p.precision, seed)?;
    }
    Ok(inst)
}

fn cmd_gen(a: &GenArgs, out: &mut dyn Write) -> Result<u8> {
    let seed = effective_seed(Some(a.seed))?.unwrap_or(a.seed);
    let mut cfg = GenConfig::new(seed, a.n, a.d);
    cfg.coeff_bound = a.coeff_bound;
    cfg.body_facets = a.body_facets.unwrap_or(cfg.body_facets);
    cfg.body_scale = parse_rational(&a.body_scale)?;
    cfg.axis_box = a.axis_box;
    let inst = Instance::generate(&cfg)?;
    emit(out, a.out.as_deref(), &inst.to_json())?;
    Ok(0)
}

fn cmd_zone(a: &ZoneArgs, out: &mut dyn Write) -> Result<u8> {
    let inst = load(&a.instance, &a.perturb)?;
    let arr = build_arrangement(inst.hyperplanes.clone(), inst.dim)?;
    let analysis = checked_analysis(&arr, &inst.body)?;
    let report = ZoneReport::from_analysis(&analysis);
    let mut text = format!(
        "{CSV_VERSION}\n{}\n{}\n",
        ZoneReport::csv_header(),
        report.csv_row()
    );
    if a.dump_borders {
        text.push_str("#borders i;face_signs;cell_signs\n");
        for i in 0..inst.dim {
            for b in analysis.borders(i) {
                text.push_str(&format!("{i};{};{}\n", b.face.signs(), b.cell.signs()));
            }
        }
    }
    emit(out, a.out.as_deref(), &text)?;
    Ok(0)
}

fn any_fail<'a>(checks: impl IntoIterator<Item = &'a CheckResult>) -> bool {
    checks.into_iter().any(|c| c.status == CheckStatus::Fail)
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> Result<u8> {
    let inst = load(&a.instance, &a.perturb)?;
    let kinds = if a.checks.is_empty() {
        CheckKind::ALL.to_vec()
    } else {
        a.checks.clone()
    };
    let seed = effective_seed(inst.seed)?;
    let (_, checks) = run_checks(&inst.hyperplanes, &inst.body, &kinds, seed)?;
    let mut text = format!("{CSV_VERSION}\n{}\n", CheckResult::csv_header());
    for c in &checks {
        text.push_str(&c.csv_row());
        text.push('\n');
    }
    emit(out, a.out.as_deref(), &text)?;
    Ok(if any_fail(&checks) { EXIT_FAIL } else { 0 })
}

fn cmd_sweep(a: &SweepArgs, out: &mut dyn Write) -> Result<u8> {
    let spec = SweepSpec {
        d: a.d,
        n_values: a.n.0.clone(),
        instances_per_n: a.instances,
        base_seed: effective_seed(Some(a.seed))?.unwrap_or(a.seed),
        checks: if a.checks.is_empty() {
            CheckKind::ALL.to_vec()
        } else {
            a.checks.clone()
        },
    };
    let outcome = run_sweep(&spec)?;
    if let Some(dir) = &a.out {
        outcome.write_to(dir)?;
    }
    out.write_all(outcome.summary_csv().as_bytes())?;
    Ok(if outcome.fail_count() > 0 {
        EXIT_FAIL
    } else {
        0
    })
}

fn cmd_render(a: &RenderArgs, out: &mut dyn Write) -> Result<u8> {
    let inst = Instance::read(&a.instance)?;
    let svg = render_svg(&inst.hyperplanes, &inst.body)?;
    emit(out, a.out.as_deref(), &svg)?;
    Ok(0)
}

pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<u8> {
    match &cli.command {
        Command::Gen(a) => cmd_gen(a, out),
        Command::Zone(a) => cmd_zone(a, out),
        Command::Verify(a) => cmd_verify(a, out),
        Command::Sweep(a) => cmd_sweep(a, out),
        Command::Render(a) => cmd_render(a, out),
    }
}

/// Runs one command, reporting errors on `err`. Returns the exit code.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    match execute(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            let findings = match &e {
                Error::GeneralPosition(f) => f.as_slice(),
                Error::Perturbation { findings, .. } => findings.as_slice(),
                _ => &[],
            };
            for f in findings {
                let _ = writeln!(err, "  {f}");
            }
            if matches!(e, Error::GeneralPosition(_)) {
                let _ = writeln!(
                    err,
                    "pass --perturb to nudge the instance into general position"
                );
            }
            EXIT_ERROR
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n_value_forms() {
        assert_eq!(parse_n_values("2..5").unwrap(), NValues(vec![2, 3, 4, 5]));
        assert_eq!(parse_n_values("2..=3").unwrap(), NValues(vec![2, 3]));
        assert_eq!(parse_n_values("2,4,6").unwrap(), NValues(vec![2, 4, 6]));
        assert!(parse_n_values("a").is_err());
    }

    #[test]
    fn any_fail_sets_the_exit_code() {
        let row = |status| CheckResult {
            check_id: "x".into(),
            status,
            lhs: None,
            rhs: None,
            n: 1,
            d: 1,
            i: None,
            instance_seed: None,
            note: String::new(),
        };
        let ok = [
            row(CheckStatus::Pass),
            row(CheckStatus::ReportOnly),
            row(CheckStatus::NotApplicable),
        ];
        assert!(!any_fail(&ok));
        assert!(any_fail(&[row(CheckStatus::Pass), row(CheckStatus::Fail)]));
    }

    #[test]
    fn parses_every_command() {
        for argv in [
            "zonelab gen --n 4 --d 2 --seed 7 --out x.json",
            "zonelab zone x.json --perturb --dump-borders",
            "zonelab verify x.json --checks claim24,lemma22",
            "zonelab sweep --d 2 --n 2..4 --instances 3 --seed 1",
            "zonelab render x.json --out x.svg",
        ] {
            Cli::try_parse_from(argv.split(' ')).unwrap();
        }
        assert!(Cli::try_parse_from("zonelab verify x.json --checks nope".split(' ')).is_err());
    }
}

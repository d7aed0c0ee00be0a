//! Instance-level checks of the outer-zone bounds.
//!
//! Checks with explicit constants return PASS or FAIL from an exact
//! comparison; a FAIL on a general-position instance means either a bug or
//! a counterexample. Quantities whose constants are unspecified are emitted
//! as REPORT_ONLY rows carrying the measured values.

use std::fmt;

use crate::arrangement::{build_arrangement, restrict_to_hyperplane, Arrangement, Hyperplane};
use crate::body::{intersect_body_with_flat, ConvexBody, FaceClass};
use crate::error::{Error, Result};
use crate::exact::{Integer, Rational};
use crate::zone::{checked_analysis, zone_report, ZoneAnalysis, ZoneClassifier, ZoneReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CheckStatus {
    Pass,
    Fail,
    NotApplicable,
    ReportOnly,
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckStatus::Pass => "PASS",
            CheckStatus::Fail => "FAIL",
            CheckStatus::NotApplicable => "NOT_APPLICABLE",
            CheckStatus::ReportOnly => "REPORT_ONLY",
        })
    }
}

/// Which family of checks a result belongs to; used to select checks in sweeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CheckKind {
    Dim1,
    Lemma22,
    Prop23,
    Recurrence,
    Claim24,
    Tau1Tau0,
    TheoremMain,
}

impl CheckKind {
    pub const ALL: [CheckKind; 7] = [
        CheckKind::Dim1,
        CheckKind::Lemma22,
        CheckKind::Prop23,
        CheckKind::Recurrence,
        CheckKind::Claim24,
        CheckKind::Tau1Tau0,
        CheckKind::TheoremMain,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Dim1 => "dim1",
            CheckKind::Lemma22 => "lemma22",
            CheckKind::Prop23 => "prop23",
            CheckKind::Recurrence => "recurrence",
            CheckKind::Claim24 => "claim24",
            CheckKind::Tau1Tau0 => "tau1_tau0",
            CheckKind::TheoremMain => "theorem_main",
        }
    }
}

impl std::str::FromStr for CheckKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CheckKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown check {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub check_id: String,
    pub status: CheckStatus,
    pub lhs: Option<Rational>,
    pub rhs: Option<Rational>,
    pub n: usize,
    pub d: usize,
    pub i: Option<usize>,
    pub instance_seed: Option<u64>,
    pub note: String,
}

impl CheckResult {
    fn new(check_id: &str, status: CheckStatus, n: usize, d: usize) -> Self {
        CheckResult {
            check_id: check_id.to_string(),
            status,
            lhs: None,
            rhs: None,
            n,
            d,
            i: None,
            instance_seed: None,
            note: String::new(),
        }
    }

    fn inequality(check_id: &str, lhs: Rational, rhs: Rational, n: usize, d: usize) -> Self {
        let status = if lhs <= rhs {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        };
        CheckResult {
            lhs: Some(lhs),
            rhs: Some(rhs),
            ..Self::new(check_id, status, n, d)
        }
    }

    fn report_only(check_id: &str, lhs: Rational, rhs: Rational, n: usize, d: usize) -> Self {
        CheckResult {
            lhs: Some(lhs),
            rhs: Some(rhs),
            ..Self::new(check_id, CheckStatus::ReportOnly, n, d)
        }
    }

    fn not_applicable(check_id: &str, n: usize, d: usize, note: impl Into<String>) -> Self {
        CheckResult {
            note: note.into(),
            ..Self::new(check_id, CheckStatus::NotApplicable, n, d)
        }
    }

    fn at(mut self, i: usize) -> Self {
        self.i = Some(i);
        self
    }

    pub fn with_seed(mut self, seed: Option<u64>) -> Self {
        self.instance_seed = seed;
        self
    }

    /// Whether `lhs <= rhs` held, for rows that carry both sides.
    pub fn holds(&self) -> Option<bool> {
        Some(self.lhs.as_ref()? <= self.rhs.as_ref()?)
    }

    pub fn csv_header() -> &'static str {
        "check_id,status,lhs,rhs,n,d,i,instance_seed"
    }

    pub fn csv_row(&self) -> String {
        let opt = |r: &Option<Rational>| r.as_ref().map_or(String::new(), ToString::to_string);
        format!(
            "{},{},{},{},{},{},{},{}",
            self.check_id,
            self.status,
            opt(&self.lhs),
            opt(&self.rhs),
            self.n,
            self.d,
            self.i.map_or(String::new(), |i| i.to_string()),
            self.instance_seed.map_or(String::new(), |s| s.to_string()),
        )
    }
}

fn q(v: usize) -> Rational {
    Rational::from(v)
}

fn qi(v: i64) -> Rational {
    Rational::from(v)
}

fn binomial(n: usize, k: usize) -> Integer {
    if k > n {
        return Integer::ZERO;
    }
    (0..k).fold(Integer::ONE, |acc, j| {
        acc * Integer::from(n - j) / Integer::from(j + 1)
    })
}

fn factorial(n: usize) -> Integer {
    (1..=n).fold(Integer::ONE, |acc, k| acc * Integer::from(k))
}

/// `4 (d-i)! C(n, d-i) n^(i-1)` for `i >= 1`.
pub fn prop23_bound(n: usize, d: usize, i: usize) -> Integer {
    assert!(i >= 1 && i <= d, "bound defined for 1 <= i <= d");
    Integer::from(4) * factorial(d - i) * binomial(n, d - i) * Integer::from(n).pow(i - 1)
}

/// One-dimensional case: at most two outer 0-borders.
pub fn check_dim1(report: &ZoneReport) -> CheckResult {
    let id = "dim1";
    if report.d != 1 {
        return CheckResult::not_applicable(id, report.n, report.d, "requires d = 1");
    }
    CheckResult::inequality(id, q(report.tau[0]), qi(2), report.n, report.d).at(0)
}

/// Planar case: `tau_1 <= 4n` and `tau_0 <= 12n`.
pub fn check_lemma22(report: &ZoneReport) -> [CheckResult; 2] {
    let (n, d) = (report.n, report.d);
    if d != 2 {
        return [
            CheckResult::not_applicable("lemma22_tau1", n, d, "requires d = 2"),
            CheckResult::not_applicable("lemma22_tau0", n, d, "requires d = 2"),
        ];
    }
    [
        CheckResult::inequality("lemma22_tau1", q(report.tau[1]), q(4 * n), n, d).at(1),
        CheckResult::inequality("lemma22_tau0", q(report.tau[0]), q(12 * n), n, d).at(0),
    ]
}

/// `tau_i <= 4 (d-i)! C(n, d-i) n^(i-1)` for `d >= 3`, `2 <= i < d`.
pub fn check_prop23(report: &ZoneReport, i: usize) -> CheckResult {
    let (n, d) = (report.n, report.d);
    if d < 3 || i < 2 || i >= d {
        return CheckResult::not_applicable("prop23", n, d, "requires d >= 3 and 2 <= i < d");
    }
    let bound = Rational::from(prop23_bound(n, d, i));
    CheckResult::inequality("prop23", q(report.tau[i]), bound, n, d).at(i)
}

/// Every `tau` appearing on either side of the deletion/restriction
/// recurrence, each recomputed from a freshly built arrangement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrenceData {
    pub n: usize,
    pub d: usize,
    pub tau: Vec<usize>,
    /// `tau(K, H \ {h})` for each `h`.
    pub deleted: Vec<Vec<usize>>,
    /// `tau(K ∩ h, H ∩ h)` for each `h`, in `d-1` dimensions; all zeros when
    /// `K ∩ h` is empty.
    pub restricted: Vec<Vec<usize>>,
}

/// A sub-instance of the recurrence that could not be evaluated.
#[derive(Debug)]
pub struct Inapplicable {
    pub hyperplane: Option<usize>,
    pub error: Error,
}

impl RecurrenceData {
    pub fn compute(
        hyperplanes: &[Hyperplane],
        body: &ConvexBody,
    ) -> std::result::Result<Self, Inapplicable> {
        let d = body.dim();
        let whole = |e| Inapplicable {
            hyperplane: None,
            error: e,
        };
        let arr = build_arrangement(hyperplanes.to_vec(), d).map_err(whole)?;
        let tau = zone_report(&arr, body).map_err(whole)?.tau;
        Self::from_parts(hyperplanes, body, tau)
    }

    /// Same as `compute` with `tau` of the whole instance already known.
    fn from_parts(
        hyperplanes: &[Hyperplane],
        body: &ConvexBody,
        tau: Vec<usize>,
    ) -> std::result::Result<Self, Inapplicable> {
        let d = body.dim();
        let n = hyperplanes.len();

        let mut deleted = Vec::with_capacity(n);
        let mut restricted = Vec::with_capacity(n);
        for (j, h) in hyperplanes.iter().enumerate() {
            let at = |e| Inapplicable {
                hyperplane: Some(j),
                error: e,
            };
            let rest: Vec<Hyperplane> = hyperplanes
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != j)
                .map(|(_, g)| g.clone())
                .collect();
            let sub = build_arrangement(rest, d).map_err(at)?;
            deleted.push(zone_report(&sub, body).map_err(at)?.tau);

            if d < 2 {
                restricted.push(Vec::new());
                continue;
            }
            let r = restrict_to_hyperplane(hyperplanes, h).map_err(at)?;
            let slice = intersect_body_with_flat(body, &r.chart).map_err(at)?;
            if slice.is_empty() {
                restricted.push(vec![0; d - 1]);
                continue;
            }
            let sub = build_arrangement(r.induced, d - 1).map_err(at)?;
            restricted.push(zone_report(&sub, &slice).map_err(at)?.tau);
        }
        Ok(RecurrenceData {
            n,
            d,
            tau,
            deleted,
            restricted,
        })
    }

    /// `(n-d+i) tau_i(K,H)` and `Σ_h tau_i(K,H\h) + Σ_h tau_{i-1}(K∩h, H∩h)`.
    pub fn sides(&self, i: usize) -> (Rational, Rational) {
        let coeff = self.n as i64 - self.d as i64 + i as i64;
        let lhs = qi(coeff) * q(self.tau[i]);
        let rhs: usize = self.deleted.iter().map(|t| t[i]).sum::<usize>()
            + self.restricted.iter().map(|t| t[i - 1]).sum::<usize>();
        (lhs, q(rhs))
    }

    pub fn check(&self, i: usize) -> CheckResult {
        if i < 1 || i >= self.d {
            return CheckResult::not_applicable(
                "recurrence",
                self.n,
                self.d,
                "requires 1 <= i < d",
            );
        }
        let (lhs, rhs) = self.sides(i);
        CheckResult::inequality("recurrence", lhs, rhs, self.n, self.d).at(i)
    }
}

/// Deletion/restriction recurrence for one `i`, recomputing every term.
pub fn check_recurrence(hyperplanes: &[Hyperplane], body: &ConvexBody, i: usize) -> CheckResult {
    let (n, d) = (hyperplanes.len(), body.dim());
    if i < 1 || i >= d {
        return CheckResult::not_applicable("recurrence", n, d, "requires 1 <= i < d");
    }
    match RecurrenceData::compute(hyperplanes, body) {
        Ok(data) => data.check(i),
        Err(e) => recurrence_not_applicable(n, d, &e).at(i),
    }
}

fn recurrence_not_applicable(n: usize, d: usize, e: &Inapplicable) -> CheckResult {
    let note = match e.hyperplane {
        Some(h) => format!("sub-instance for hyperplane {h}: {}", e.error),
        None => e.error.to_string(),
    };
    CheckResult::not_applicable("recurrence", n, d, note)
}

/// Facets that meet the complement and border two zone cells must cross
/// the boundary. For `d = 2` this is the edge statement used in the planar
/// bound. `lhs` counts violating facets.
pub fn check_claim24_analysis(analysis: &ZoneAnalysis<'_>) -> CheckResult {
    let arr = analysis.arrangement();
    let (n, d) = (arr.n(), arr.dim());
    if d == 0 {
        return CheckResult::not_applicable("claim24", n, d, "requires d >= 1");
    }
    let mut violations = 0usize;
    let mut first = None;
    for (f, class) in arr
        .faces_of_dim(d - 1)
        .iter()
        .zip(analysis.classes_of_dim(d - 1))
    {
        if *class == FaceClass::Inner {
            continue;
        }
        if *class != FaceClass::Crossing && analysis.incident_zone_cells(f).len() >= 2 {
            violations += 1;
            first.get_or_insert_with(|| f.signs().to_string());
        }
    }
    let mut r = CheckResult::inequality("claim24", q(violations), qi(0), n, d).at(d - 1);
    if let Some(s) = first {
        r.note = format!("outer facet {s} borders two zone cells");
    }
    r
}

pub fn check_claim24<C: ZoneClassifier + ?Sized>(
    arr: &Arrangement,
    classifier: &C,
) -> Result<CheckResult> {
    Ok(check_claim24_analysis(&ZoneAnalysis::new(arr, classifier)?))
}

/// `tau_1` against `(d/2) tau_0`, plus the variant that accounts for
/// outer edges with fewer than two outer endpoints. Both are REPORT_ONLY.
pub fn check_tau1_tau0(report: &ZoneReport) -> [CheckResult; 2] {
    let (n, d) = (report.n, report.d);
    if d < 3 {
        return [
            CheckResult::not_applicable("tau1_tau0", n, d, "requires d >= 3"),
            CheckResult::not_applicable("tau1_tau0_corrected", n, d, "requires d >= 3"),
        ];
    }
    let half_d = Rational::from_parts(d.into(), 2u8.into());
    let plain = &half_d * q(report.tau[0]);
    let corrected =
        plain.clone() + Rational::from_parts(report.endpoint_deficit.into(), 2u8.into());
    [
        CheckResult::report_only("tau1_tau0", q(report.tau[1]), plain, n, d).at(1),
        CheckResult::report_only("tau1_tau0_corrected", q(report.tau[1]), corrected, n, d).at(1),
    ]
}

/// Measured `C(Z) / (d n^(d-1))`; for `d = 2` also the exact `C(Z) <= 16n`.
pub fn check_theorem_main(report: &ZoneReport) -> Vec<CheckResult> {
    let (n, d) = (report.n, report.d);
    if n == 0 {
        return vec![CheckResult::not_applicable(
            "theorem_main_ratio",
            n,
            d,
            "requires n >= 1",
        )];
    }
    let scale = Rational::from(Integer::from(d) * Integer::from(n).pow(d - 1));
    let mut out = vec![CheckResult::report_only(
        "theorem_main_ratio",
        q(report.outer_complexity),
        scale,
        n,
        d,
    )];
    if d == 2 {
        out.push(CheckResult::inequality(
            "theorem_main_d2",
            q(report.outer_complexity),
            q(16 * n),
            n,
            d,
        ));
    }
    out
}

/// Builds the arrangement, the report and every requested applicable check.
/// Instances outside general position are refused with the findings.
pub fn run_checks(
    hyperplanes: &[Hyperplane],
    body: &ConvexBody,
    kinds: &[CheckKind],
    seed: Option<u64>,
) -> Result<(ZoneReport, Vec<CheckResult>)> {
    let d = body.dim();
    let arr = build_arrangement(hyperplanes.to_vec(), d)?;
    let analysis = checked_analysis(&arr, body)?;
    let report = ZoneReport::from_analysis(&analysis);
    let want = |k| kinds.contains(&k);
    let mut out = Vec::new();
    if want(CheckKind::Dim1) && d == 1 {
        out.push(check_dim1(&report));
    }
    if want(CheckKind::Lemma22) && d == 2 {
        out.extend(check_lemma22(&report));
    }
    if want(CheckKind::Prop23) && d >= 3 {
        out.extend((2..d).map(|i| check_prop23(&report, i)));
    }
    if want(CheckKind::Recurrence) && d >= 2 {
        match RecurrenceData::from_parts(hyperplanes, body, report.tau.clone()) {
            Ok(data) => out.extend((1..d).map(|i| data.check(i))),
            Err(e) => out.extend((1..d).map(|i| recurrence_not_applicable(report.n, d, &e).at(i))),
        }
    }
    if want(CheckKind::Claim24) {
        out.push(check_claim24_analysis(&analysis));
    }
    if want(CheckKind::Tau1Tau0) && d >= 3 {
        out.extend(check_tau1_tau0(&report));
    }
    if want(CheckKind::TheoremMain) {
        out.extend(check_theorem_main(&report));
    }
    let out = out.into_iter().map(|r| r.with_seed(seed)).collect();
    Ok((report, out))
}

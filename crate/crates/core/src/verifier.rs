//! Runs the three-way check (direct sum, signed enumeration, fixed-point
//! census) at single parameter points and over sweeps, and renders the
//! results as JSON, CSV or text.

use std::collections::BTreeMap;
use std::fmt;
use std::io;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use crate::dominoes::{DominoConfig, DominoFamily, Orientation, Variant};
use crate::exact::{factorial, int_to_string, Integer, QPoly, Var, XPoly};
use crate::matrices::{Classification, ColumnChoice, MatrixConfig, MatrixFamily, StepOutcome};
use crate::ominoes::{OminoConfig, OminoFamily};
use crate::strip::InvolutionOutcome;
use crate::sums;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error("unknown mode {0:?}")]
    UnknownMode(String),
    #[error("family {family} needs parameter {param}")]
    MissingParam { family: Family, param: &'static str },
    #[error("k must satisfy 0 <= k <= m (got m={m}, k={k})")]
    KOutOfRange { m: u32, k: u32 },
    #[error("family eq6 needs k < m (got m={m}, k={k}); use eq6_special for k = m")]
    KNotBelowM { m: u32, k: u32 },
    #[error("malformed range {0:?} (expected a, a..b or, for k, a..m)")]
    BadRange(String),
    #[error("the sweep produced no valid parameter points")]
    EmptySweep,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    #[serde(rename = "eq3")]
    Eq3,
    #[serde(rename = "eq4")]
    Eq4,
    #[serde(rename = "eq5")]
    Eq5,
    #[serde(rename = "eq6")]
    Eq6,
    #[serde(rename = "eq6_special")]
    Eq6Special,
    #[serde(rename = "master1")]
    Master1,
    #[serde(rename = "master2")]
    Master2,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::Eq3,
        Family::Eq4,
        Family::Eq5,
        Family::Eq6,
        Family::Eq6Special,
        Family::Master1,
        Family::Master2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Eq3 => "eq3",
            Family::Eq4 => "eq4",
            Family::Eq5 => "eq5",
            Family::Eq6 => "eq6",
            Family::Eq6Special => "eq6_special",
            Family::Master1 => "master1",
            Family::Master2 => "master2",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = VerifyError;
    fn from_str(s: &str) -> Result<Self, VerifyError> {
        let s = s.replace('-', "_").to_ascii_lowercase();
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or(VerifyError::UnknownFamily(s))
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Formula,
    Enumerate,
    Involution,
    #[default]
    All,
}

impl Mode {
    fn enumerates(self) -> bool {
        matches!(self, Mode::Enumerate | Mode::All)
    }

    fn involutes(self) -> bool {
        matches!(self, Mode::Involution | Mode::All)
    }

    fn needs_configs(self) -> bool {
        self != Mode::Formula
    }
}

impl FromStr for Mode {
    type Err = VerifyError;
    fn from_str(s: &str) -> Result<Self, VerifyError> {
        match s {
            "formula" => Ok(Mode::Formula),
            "enumerate" => Ok(Mode::Enumerate),
            "involution" => Ok(Mode::Involution),
            "all" => Ok(Mode::All),
            other => Err(VerifyError::UnknownMode(other.to_string())),
        }
    }
}

/// Parameters of one check. Which fields are required depends on the family.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Params {
    pub m: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z: Option<i64>,
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m={}", self.m)?;
        let optional = [
            ("k", self.k.map(i64::from)),
            ("b", self.b.map(i64::from)),
            ("q", self.q.map(i64::from)),
            ("x", self.x),
            ("y", self.y),
            ("z", self.z),
        ];
        for (name, v) in optional {
            if let Some(v) = v {
                write!(f, " {name}={v}")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CheckCase {
    pub family: Family,
    pub params: Params,
    #[serde(skip)]
    pub mode: Mode,
}

impl CheckCase {
    pub fn new(family: Family, params: Params, mode: Mode) -> Result<Self, VerifyError> {
        let need = |v: bool, param: &'static str| {
            if v {
                Ok(())
            } else {
                Err(VerifyError::MissingParam { family, param })
            }
        };
        let m = params.m;
        match family {
            Family::Eq3 | Family::Eq4 | Family::Eq5 | Family::Eq6 => {
                need(params.k.is_some(), "k")?;
                let k = params.k.unwrap_or(0);
                if k > m {
                    return Err(VerifyError::KOutOfRange { m, k });
                }
                if family == Family::Eq6 && k == m {
                    return Err(VerifyError::KNotBelowM { m, k });
                }
                if matches!(family, Family::Eq3 | Family::Eq5) {
                    need(params.b.is_some(), "b")?;
                }
                if family == Family::Eq5 {
                    need(params.q.is_some(), "q")?;
                }
            }
            Family::Eq6Special => {}
            Family::Master1 => need(params.y.is_some(), "y")?,
            Family::Master2 => {
                need(params.y.is_some(), "y")?;
                need(params.z.is_some(), "z")?;
            }
        }
        Ok(Self { family, params, mode })
    }
}

/// Enumeration size limits; points beyond them are reported as skipped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ceilings {
    /// Largest domino or omino ground set.
    pub max_ground: usize,
    /// Largest `m` for the matrix family.
    pub max_matrix_m: u32,
}

impl Default for Ceilings {
    fn default() -> Self {
        Self {
            max_ground: 16,
            max_matrix_m: 8,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Options {
    pub orientation: Orientation,
    pub ceilings: Ceilings,
    /// Pivot column of the second matrix step; `First` is a deliberate fault.
    pub column_choice: ColumnChoice,
}

/// A compared quantity: an integer, or a polynomial in `q` or `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Int(Integer),
    Q(QPoly),
    X(XPoly),
}

impl Value {
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Value::Int(v) => json!(int_to_string(v)),
            Value::Q(p) => json!(p.to_strings()),
            Value::X(p) => json!(p.to_strings()),
        }
    }

    fn to_cell(&self) -> String {
        match self {
            Value::Int(v) => int_to_string(v),
            Value::Q(p) => format!("[{}]", p.to_strings().join(" ")),
            Value::X(p) => format!("[{}]", p.to_strings().join(" ")),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(v) => write!(f, "{v}"),
            Value::Q(p) => write!(f, "{p}"),
            Value::X(p) => write!(f, "{p}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub pass: bool,
    /// First counterexample in enumeration order, when the check failed.
    pub witness: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Mismatch,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Ok => "ok",
            Status::Mismatch => "mismatch",
            Status::Skipped => "skipped",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub case: CheckCase,
    pub formula: Option<Value>,
    pub closed_form: Option<Value>,
    pub enumerated: Option<Value>,
    pub fixed_points: Option<Value>,
    pub config_count: Option<Integer>,
    pub checks: BTreeMap<String, CheckOutcome>,
    pub status: Status,
    pub reason: Option<String>,
    pub elapsed: Duration,
}

impl VerificationReport {
    fn new(case: CheckCase) -> Self {
        Self {
            case,
            formula: None,
            closed_form: None,
            enumerated: None,
            fixed_points: None,
            config_count: None,
            checks: BTreeMap::new(),
            status: Status::Ok,
            reason: None,
            elapsed: Duration::ZERO,
        }
    }

    fn check(&mut self, name: &str, pass: bool, witness: impl FnOnce() -> String) {
        let witness = (!pass).then(witness);
        self.checks.insert(name.to_string(), CheckOutcome { pass, witness });
    }

    fn compare<T: PartialEq + fmt::Display>(&mut self, name: &str, left: &T, right: &T) {
        self.check(name, left == right, || format!("{left} != {right}"));
    }

    fn record_first(&mut self, name: &str, first_failure: Option<String>) {
        let pass = first_failure.is_none();
        self.checks.insert(
            name.to_string(),
            CheckOutcome {
                pass,
                witness: first_failure,
            },
        );
    }

    fn skip(&mut self, reason: String) {
        self.status = Status::Skipped;
        self.reason = Some(reason);
    }

    fn finish(&mut self) {
        if self.checks.values().any(|c| !c.pass) {
            self.status = Status::Mismatch;
        }
    }

    pub fn is_ok(&self) -> bool {
        self.status == Status::Ok
    }

    /// The stable report object. Timing goes into a separate `volatile`
    /// section, and only on request, so repeated runs are byte-identical.
    pub fn to_json(&self, timings: bool) -> serde_json::Value {
        let opt = |v: &Option<Value>| v.as_ref().map_or(serde_json::Value::Null, Value::to_json);
        let mut obj = json!({
            "family": self.case.family,
            "params": self.case.params,
            "mode": self.case.mode,
            "formula": opt(&self.formula),
            "closed_form": opt(&self.closed_form),
            "enumerated": opt(&self.enumerated),
            "fixed_points": opt(&self.fixed_points),
            "config_count": self.config_count.as_ref().map(int_to_string),
            "checks": self.checks,
            "status": self.status,
        });
        if let Some(reason) = &self.reason {
            obj["reason"] = json!(reason);
        }
        if timings {
            obj["volatile"] = json!({ "elapsed_ms": self.elapsed.as_secs_f64() * 1e3 });
        }
        obj
    }

    pub fn text_line(&self) -> String {
        let mut line = format!(
            "{} {} [{}]: {}",
            self.case.family,
            self.case.params,
            serde_json::to_value(self.case.mode).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default(),
            self.status
        );
        let fields = [
            ("formula", &self.formula),
            ("closed", &self.closed_form),
            ("enumerated", &self.enumerated),
            ("fixed", &self.fixed_points),
        ];
        for (name, v) in fields {
            if let Some(v) = v {
                line.push_str(&format!("  {name}={v}"));
            }
        }
        if let Some(c) = &self.config_count {
            line.push_str(&format!("  configs={c}"));
        }
        for (name, c) in self.checks.iter().filter(|(_, c)| !c.pass) {
            line.push_str(&format!("\n    FAIL {name}: {}", c.witness.as_deref().unwrap_or("")));
        }
        if let Some(reason) = &self.reason {
            line.push_str(&format!("  ({reason})"));
        }
        line
    }

    fn csv_record(&self) -> Vec<String> {
        let cell = |v: &Option<Value>| v.as_ref().map(Value::to_cell).unwrap_or_default();
        let checks = self
            .checks
            .iter()
            .map(|(name, c)| match (&c.pass, &c.witness) {
                (true, _) => format!("{name}=pass"),
                (false, Some(w)) => format!("{name}=fail({w})"),
                (false, None) => format!("{name}=fail"),
            })
            .collect::<Vec<_>>()
            .join(";");
        let params = self.case.params.to_string().replace(' ', ";");
        vec![
            self.case.family.to_string(),
            params,
            cell(&self.formula),
            cell(&self.closed_form),
            cell(&self.enumerated),
            cell(&self.fixed_points),
            self.config_count.as_ref().map(int_to_string).unwrap_or_default(),
            checks,
            self.status.to_string(),
            self.reason.clone().unwrap_or_default(),
        ]
    }
}

pub const CSV_HEADER: [&str; 10] = [
    "family",
    "params",
    "formula",
    "closed_form",
    "enumerated",
    "fixed_points",
    "config_count",
    "checks",
    "status",
    "reason",
];

/// Counts of each status over a list of reports.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub ok: usize,
    pub mismatch: usize,
    pub skipped: usize,
}

impl Summary {
    pub fn of(reports: &[VerificationReport]) -> Self {
        let mut s = Summary {
            total: reports.len(),
            ..Default::default()
        };
        for r in reports {
            match r.status {
                Status::Ok => s.ok += 1,
                Status::Mismatch => s.mismatch += 1,
                Status::Skipped => s.skipped += 1,
            }
        }
        s
    }

    pub fn all_ok(&self) -> bool {
        self.ok == self.total
    }
}

pub fn write_json(reports: &[VerificationReport], timings: bool, out: &mut (impl io::Write + ?Sized)) -> io::Result<()> {
    let doc = json!({
        "reports": reports.iter().map(|r| r.to_json(timings)).collect::<Vec<_>>(),
        "summary": Summary::of(reports),
    });
    serde_json::to_writer_pretty(&mut *out, &doc)?;
    writeln!(out)
}

pub fn write_csv(reports: &[VerificationReport], out: &mut (impl io::Write + ?Sized)) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in reports {
        w.write_record(r.csv_record())?;
    }
    w.flush()
}

pub fn write_text(reports: &[VerificationReport], out: &mut (impl io::Write + ?Sized)) -> io::Result<()> {
    for r in reports {
        writeln!(out, "{}", r.text_line())?;
    }
    let s = Summary::of(reports);
    writeln!(
        out,
        "{} cases: {} ok, {} mismatch, {} skipped",
        s.total, s.ok, s.mismatch, s.skipped
    )
}

/// First failure per named check; keeps the smallest key seen.
#[derive(Default)]
struct FirstFailures<K: Ord> {
    failures: BTreeMap<&'static str, (K, String)>,
}

impl<K: Ord> FirstFailures<K> {
    fn note(&mut self, name: &'static str, key: K, witness: impl FnOnce() -> String) {
        match self.failures.get(name) {
            Some((k, _)) if *k <= key => {}
            _ => {
                self.failures.insert(name, (key, witness()));
            }
        }
    }

    fn merge(mut self, other: Self) -> Self {
        for (name, (key, w)) in other.failures {
            self.note(name, key, || w);
        }
        self
    }

    fn get(&self, name: &str) -> Option<String> {
        self.failures.get(name).map(|(_, w)| w.clone())
    }
}

#[derive(Debug, Clone, Default)]
pub struct Verifier {
    pub options: Options,
}

impl Verifier {
    pub fn new(options: Options) -> Self {
        Self { options }
    }

    pub fn run(&self, case: &CheckCase) -> VerificationReport {
        let start = Instant::now();
        let mut r = VerificationReport::new(*case);
        match case.family {
            Family::Eq3 | Family::Eq4 | Family::Eq5 => self.run_line(case, &mut r),
            Family::Eq6 | Family::Eq6Special => self.run_matrix(case, &mut r),
            Family::Master1 | Family::Master2 => run_master(case, &mut r),
        }
        if r.status != Status::Skipped {
            r.finish();
        }
        r.elapsed = start.elapsed();
        r
    }

    /// Runs every case on a pool of `jobs` threads; reports come back in
    /// parameter order regardless of scheduling.
    pub fn sweep(&self, cases: &[CheckCase], jobs: usize) -> Vec<VerificationReport> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build()
            .expect("thread pool");
        let mut reports: Vec<VerificationReport> = pool.install(|| cases.par_iter().map(|c| self.run(c)).collect());
        reports.sort_by_key(|r| r.case);
        reports
    }

    fn run_line(&self, case: &CheckCase, r: &mut VerificationReport) {
        let p = case.params;
        let (m, k) = (p.m, p.k.unwrap_or(0));
        let b = p.b.unwrap_or(0);
        let (formula, closed) = match case.family {
            Family::Eq3 => (sums::eq3_sum(m, k, b), sums::eq3_closed(k)),
            Family::Eq4 => (sums::eq4_sum(m, k), sums::eq4_closed(m, k)),
            _ => {
                let q = p.q.unwrap_or(1);
                (sums::eq5_sum(m, k, b, q), sums::eq5_closed(m, k, q))
            }
        };
        r.compare("formula_vs_closed", &formula, &closed);
        r.formula = Some(Value::Int(formula.clone()));
        r.closed_form = Some(Value::Int(closed.clone()));
        if !case.mode.needs_configs() {
            return;
        }
        let ceiling = self.options.ceilings.max_ground;
        let orientation = self.options.orientation;
        match case.family {
            Family::Eq3 | Family::Eq4 => {
                let variant = if case.family == Family::Eq3 { Variant::Sun3 } else { Variant::Sun4 };
                let fam = match DominoFamily::new(variant, m, k, b) {
                    Ok(f) if f.ground_size() <= ceiling => f,
                    Ok(f) => return r.skip(format!("ground size {} exceeds ceiling {ceiling}", f.ground_size())),
                    Err(e) => return r.skip(e.to_string()),
                };
                line_checks(
                    r,
                    case.mode,
                    fam.enumerate(),
                    fam.expected_count(),
                    fam.fixed_points(orientation),
                    &formula,
                    &closed,
                    LineOps {
                        involute: |c: &DominoConfig| c.involute(orientation),
                        weight: |c: &DominoConfig| c.weight(),
                        conserved: |c: &DominoConfig| c.domino_count() + c.black_count(),
                        valid: |c: &DominoConfig| c.is_valid(),
                    },
                );
            }
            _ => {
                let q = p.q.unwrap_or(1);
                let fam = match OminoFamily::new(m, k, b, q) {
                    Ok(f) if f.ground_size() <= ceiling => f,
                    Ok(f) => return r.skip(format!("ground size {} exceeds ceiling {ceiling}", f.ground_size())),
                    Err(e) => return r.skip(e.to_string()),
                };
                line_checks(
                    r,
                    case.mode,
                    fam.enumerate(),
                    fam.expected_count(),
                    fam.fixed_points(),
                    &formula,
                    &closed,
                    LineOps {
                        involute: |c: &OminoConfig| c.involute(),
                        weight: |c: &OminoConfig| c.weight(),
                        conserved: |c: &OminoConfig| c.omino_count() + c.black_count(),
                        valid: |c: &OminoConfig| c.is_valid(),
                    },
                );
            }
        }
    }

    fn run_matrix(&self, case: &CheckCase, r: &mut VerificationReport) {
        let p = case.params;
        let m = p.m;
        let k = if case.family == Family::Eq6Special { m } else { p.k.unwrap_or(0) };
        let formula = if k == m {
            sums::eq6_special_poly(m)
        } else {
            sums::eq6_poly(m, k).expect("k < m checked by CheckCase")
        };
        let closed = sums::matrix_closed_poly(m, k).expect("k <= m");
        r.compare("formula_vs_closed", &formula, &closed);
        if let Some(q) = p.q {
            let numeric = if k == m {
                sums::eq6_special_sum(m, q)
            } else {
                sums::eq6_sum(m, k, q).expect("k < m")
            };
            r.compare("numeric_at_q", &numeric, &closed.eval_int(q as i64));
        }
        r.formula = Some(Value::Q(formula.clone()));
        r.closed_form = Some(Value::Q(closed.clone()));
        if !case.mode.needs_configs() {
            return;
        }
        let ceiling = self.options.ceilings.max_matrix_m;
        if m > ceiling {
            return r.skip(format!("matrix size m={m} exceeds ceiling {ceiling}"));
        }
        let fam = MatrixFamily::new(m, k).expect("k <= m");
        let survivors = fam.survivors();
        let survivor_total = survivors
            .iter()
            .fold(QPoly::zero(Var::Q), |acc, c| &acc + &c.weight().to_poly());
        r.compare("survivors_vs_closed", &survivor_total, &closed);
        r.fixed_points = Some(Value::Q(survivor_total));

        let choice = self.options.column_choice;
        let involutes = case.mode.involutes();
        const PARTS: u64 = 25;
        let merged = (0..PARTS)
            .into_par_iter()
            .map(|part| matrix_partition(&fam, part, PARTS, choice, involutes))
            .reduce(MatrixPass::default, MatrixPass::merge);

        let total = QPoly::new(Var::Q, merged.weights.iter().map(|&w| Integer::from(w)).collect());
        r.compare("enumerated_vs_formula", &total, &formula);
        r.enumerated = Some(Value::Q(total));
        r.config_count = Some(Integer::from(merged.count));
        if involutes {
            for name in ["constraint_preservation", "involutivity", "sign_reversal", "step_ordering"] {
                r.record_first(name, merged.failures.get(name));
            }
            let mut found = merged.survivors;
            found.sort();
            let first_diff = first_difference(&found, &survivors);
            r.record_first("survivor_characterization", first_diff);
        }
    }
}

fn first_difference<C: Eq + fmt::Display>(found: &[C], expected: &[C]) -> Option<String> {
    if found == expected {
        return None;
    }
    let extra = found.iter().find(|c| !expected.contains(c));
    let missing = expected.iter().find(|c| !found.contains(c));
    Some(match (extra, missing) {
        (Some(c), _) => format!("unexpected fixed point {c}"),
        (None, Some(c)) => format!("missing fixed point {c}"),
        (None, None) => "fixed points repeated or out of order".to_string(),
    })
}

struct LineOps<I, W, S, V> {
    involute: I,
    weight: W,
    conserved: S,
    valid: V,
}

#[allow(clippy::too_many_arguments)]
fn line_checks<C, It, I, W, S, V>(
    r: &mut VerificationReport,
    mode: Mode,
    configs: It,
    expected_count: Integer,
    constructed_fixed: Vec<C>,
    formula: &Integer,
    closed: &Integer,
    ops: LineOps<I, W, S, V>,
) where
    C: Clone + Eq + fmt::Display,
    It: Iterator<Item = C>,
    I: Fn(&C) -> InvolutionOutcome<C>,
    W: Fn(&C) -> i32,
    S: Fn(&C) -> usize,
    V: Fn(&C) -> bool,
{
    let mut total = 0i64;
    let mut count = 0u64;
    let mut found_fixed = Vec::new();
    let mut failures: FirstFailures<u64> = FirstFailures::default();
    for c in configs {
        let w = (ops.weight)(&c);
        total += w as i64;
        if mode.involutes() {
            match (ops.involute)(&c) {
                InvolutionOutcome::Fixed => found_fixed.push(c.clone()),
                InvolutionOutcome::Moved { partner, .. } => {
                    if !(ops.valid)(&partner) {
                        failures.note("partner_validity", count, || format!("{c} -> {partner}"));
                    }
                    let back = (ops.involute)(&partner);
                    if back.partner() != Some(&c) {
                        failures.note("involutivity", count, || match back.partner() {
                            Some(d) => format!("{c} -> {partner} -> {d}"),
                            None => format!("{c} -> {partner} (fixed)"),
                        });
                    }
                    if (ops.weight)(&partner) != -w {
                        failures.note("sign_reversal", count, || format!("{c} -> {partner}"));
                    }
                    if (ops.conserved)(&partner) != (ops.conserved)(&c) {
                        failures.note("conservation", count, || format!("{c} -> {partner}"));
                    }
                }
            }
        }
        count += 1;
    }
    let total = Integer::from(total);
    let fixed_count = Integer::from(constructed_fixed.len());
    r.compare("fixed_vs_closed", &fixed_count, closed);
    r.fixed_points = Some(Value::Int(fixed_count));
    if mode.enumerates() || mode.involutes() {
        r.compare("enumerated_vs_formula", &total, formula);
        r.compare("config_count", &Integer::from(count), &expected_count);
        r.enumerated = Some(Value::Int(total));
        r.config_count = Some(Integer::from(count));
    }
    if mode.involutes() {
        for name in ["partner_validity", "involutivity", "sign_reversal", "conservation"] {
            r.record_first(name, failures.get(name));
        }
        r.record_first("fixed_characterization", first_difference(&found_fixed, &constructed_fixed));
    }
}

#[derive(Default)]
struct MatrixPass {
    count: u64,
    weights: Vec<i64>,
    failures: FirstFailures<(u64, u64)>,
    survivors: Vec<MatrixConfig>,
}

impl MatrixPass {
    fn merge(mut self, other: Self) -> Self {
        self.count += other.count;
        if self.weights.len() < other.weights.len() {
            self.weights.resize(other.weights.len(), 0);
        }
        for (a, b) in self.weights.iter_mut().zip(&other.weights) {
            *a += b;
        }
        self.failures = self.failures.merge(other.failures);
        self.survivors.extend(other.survivors);
        self
    }
}

fn matrix_partition(fam: &MatrixFamily, part: u64, parts: u64, choice: ColumnChoice, involutes: bool) -> MatrixPass {
    let mut pass = MatrixPass {
        weights: vec![0; 2 * fam.m as usize + 1],
        ..Default::default()
    };
    for c in fam.enumerate_partition(part, parts) {
        pass.count += 1;
        let w = c.weight();
        pass.weights[w.exponent as usize] += w.sign as i64;
        if !involutes {
            continue;
        }
        match c.classify_with(choice) {
            Classification::Survivor(_) => pass.survivors.push(c),
            Classification::Killed { step, partner } => {
                let key = c.enumeration_index();
                if !partner.is_legal() {
                    pass.failures.note("constraint_preservation", key, || format!("{c} -> {partner}"));
                    continue;
                }
                if partner.weight() != -w {
                    pass.failures.note("sign_reversal", key, || {
                        format!("{c} ({w}) -> {partner} ({})", partner.weight())
                    });
                }
                let earlier_fires = match step {
                    1 => false,
                    2 => matches!(partner.step1_underline(), StepOutcome::Moved(_)),
                    _ => {
                        matches!(partner.step1_underline(), StepOutcome::Moved(_))
                            || matches!(partner.step2_bij1_with(choice), StepOutcome::Moved(_))
                            || (step == 4 && partner.step3_extflip() != StepOutcome::NotApplicable)
                    }
                };
                if earlier_fires {
                    pass.failures.note("step_ordering", key, || {
                        format!("step {step}: {c} -> {partner}, which an earlier step claims")
                    });
                }
                match partner.classify_with(choice) {
                    Classification::Killed { step: s, partner: back } if s == step && back == c => {}
                    other => pass.failures.note("involutivity", key, || {
                        let back = match other {
                            Classification::Killed { step: s, partner: d } => format!("step {s} -> {d}"),
                            Classification::Survivor(kind) => format!("survivor {kind:?}"),
                        };
                        format!("step {step}: {c} -> {partner} -> {back}")
                    }),
                }
            }
        }
    }
    pass
}

fn run_master(case: &CheckCase, r: &mut VerificationReport) {
    let p = case.params;
    let m = p.m;
    let y = p.y.unwrap_or(0);
    let z = p.z.unwrap_or(1);
    let (lhs, rhs) = match case.family {
        Family::Master1 => sums::poly_sides1(y, m),
        _ => sums::poly_sides2(y, z, m),
    };
    let eq = lhs.try_equal(&rhs).unwrap_or(false);
    r.check("poly_equal", eq, || format!("{lhs} != {rhs}"));
    let degree = Some(m as usize + 1);
    r.check("degree", lhs.degree() == degree && rhs.degree() == degree, || {
        format!("degrees {:?} and {:?}, expected {}", lhs.degree(), rhs.degree(), m + 1)
    });
    let lc = BigRational::new(Integer::one(), factorial(m));
    r.check(
        "leading_coefficient",
        lhs.leading_coefficient() == lc && rhs.leading_coefficient() == lc,
        || format!("{} and {}, expected {lc}", lhs.leading_coefficient(), rhs.leading_coefficient()),
    );
    if case.family == Family::Master1 {
        let root = (0..=m as i64).find(|&x| !rhs.eval_int(x).is_zero());
        r.check("rhs_vanishes", root.is_none(), || format!("x = {}", root.unwrap_or_default()));
    }

    let numeric = |x: i64| -> (Integer, Integer) {
        match case.family {
            Family::Master1 => (sums::lhs1(x, y, m), sums::rhs1(x, y, m)),
            _ => (sums::lhs2(x, y, z, m), sums::rhs2(x, y, z, m)),
        }
    };
    let spot = (-5..=10).find(|&x| {
        let (l, rr) = numeric(x);
        lhs.eval_int(x) != BigRational::from_integer(l) || rhs.eval_int(x) != BigRational::from_integer(rr)
    });
    r.check("numeric_spot_checks", spot.is_none(), || format!("x = {}", spot.unwrap_or_default()));
    if let Some(x) = p.x {
        let (l, rr) = numeric(x);
        r.compare("numeric_at_x", &l, &rr);
    }
    if y >= 0 && (case.family == Family::Master1 || z >= 0) {
        let violation = (0..=m).find_map(|k| {
            let res = match case.family {
                Family::Master1 => sums::reduction_chain1(m, k, y as u32),
                _ => sums::reduction_chain2(m, k, y as u32, z as u32),
            };
            res.err().map(|e| format!("k={k}: {e}"))
        });
        r.record_first("reduction_chain", violation);
    }
    r.formula = Some(Value::X(lhs));
    r.closed_form = Some(Value::X(rhs));
}

/// An inclusive integer range, written `a` or `a..b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntRange {
    pub lo: i64,
    pub hi: i64,
}

impl IntRange {
    pub fn single(v: i64) -> Self {
        Self { lo: v, hi: v }
    }

    pub fn values(self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }
}

impl FromStr for IntRange {
    type Err = VerifyError;
    fn from_str(s: &str) -> Result<Self, VerifyError> {
        let bad = || VerifyError::BadRange(s.to_string());
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?),
            None => {
                let v = s.trim().parse().map_err(|_| bad())?;
                (v, v)
            }
        };
        if lo > hi {
            return Err(bad());
        }
        Ok(Self { lo, hi })
    }
}

/// A `k` range whose upper end may be the symbol `m`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct KRange {
    pub lo: u32,
    /// `None` stands for `m`.
    pub hi: Option<u32>,
}

impl KRange {
    fn values(self, m: u32) -> impl Iterator<Item = u32> {
        self.lo..=self.hi.unwrap_or(m)
    }
}

impl FromStr for KRange {
    type Err = VerifyError;
    fn from_str(s: &str) -> Result<Self, VerifyError> {
        let bad = || VerifyError::BadRange(s.to_string());
        let parse = |t: &str| t.trim().parse::<u32>().map_err(|_| bad());
        match s.split_once("..") {
            Some((a, b)) if b.trim() == "m" => Ok(Self { lo: parse(a)?, hi: None }),
            Some((a, b)) => {
                let (lo, hi) = (parse(a)?, parse(b)?);
                if lo > hi {
                    return Err(bad());
                }
                Ok(Self { lo, hi: Some(hi) })
            }
            None if s.trim() == "m" => Err(bad()),
            None => {
                let v = parse(s)?;
                Ok(Self { lo: v, hi: Some(v) })
            }
        }
    }
}

/// Parameter ranges of a sweep. Unset ranges fall back to a single default
/// value (`b = 0`, `q = 1`, `y = 0`, `z = 1`); `x` is only checked when set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepRanges {
    pub m: IntRange,
    pub k: KRange,
    pub b: Option<IntRange>,
    pub q: Option<IntRange>,
    pub x: Option<IntRange>,
    pub y: Option<IntRange>,
    pub z: Option<IntRange>,
}

impl Default for SweepRanges {
    fn default() -> Self {
        Self {
            m: IntRange::single(0),
            k: KRange::default(),
            b: None,
            q: None,
            x: None,
            y: None,
            z: None,
        }
    }
}

fn opt_values(r: Option<IntRange>, default: i64) -> Vec<i64> {
    r.unwrap_or(IntRange::single(default)).values().collect()
}

fn opt_values_or_none(r: Option<IntRange>) -> Vec<Option<i64>> {
    match r {
        Some(r) => r.values().map(Some).collect(),
        None => vec![None],
    }
}

/// Every valid parameter point of `family` in the ranges. Explicit `k`
/// values above `m` (or equal to `m` for eq6) are dropped; negative `m`,
/// `b` and `q` values are rejected.
pub fn cases(family: Family, ranges: &SweepRanges, mode: Mode) -> Result<Vec<CheckCase>, VerifyError> {
    let nonneg = |r: IntRange| -> Result<(), VerifyError> {
        if r.lo < 0 {
            Err(VerifyError::BadRange(format!("{}..{}", r.lo, r.hi)))
        } else {
            Ok(())
        }
    };
    nonneg(ranges.m)?;
    for r in [ranges.b, ranges.q].into_iter().flatten() {
        nonneg(r)?;
    }
    let mut out = Vec::new();
    for m in ranges.m.values().map(|m| m as u32) {
        let base = Params { m, ..Default::default() };
        let ks: Vec<u32> = ranges
            .k
            .values(m)
            .filter(|&k| k <= m && !(family == Family::Eq6 && k == m))
            .collect();
        let mut points = Vec::new();
        match family {
            Family::Eq3 => {
                for &k in &ks {
                    for b in opt_values(ranges.b, 0) {
                        points.push(Params { k: Some(k), b: Some(b as u32), ..base });
                    }
                }
            }
            Family::Eq4 => points.extend(ks.iter().map(|&k| Params { k: Some(k), ..base })),
            Family::Eq5 => {
                for &k in &ks {
                    for b in opt_values(ranges.b, 0) {
                        for q in opt_values(ranges.q, 1) {
                            points.push(Params { k: Some(k), b: Some(b as u32), q: Some(q as u32), ..base });
                        }
                    }
                }
            }
            Family::Eq6 => {
                for &k in &ks {
                    for q in opt_values_or_none(ranges.q) {
                        points.push(Params { k: Some(k), q: q.map(|q| q as u32), ..base });
                    }
                }
            }
            Family::Eq6Special => {
                for q in opt_values_or_none(ranges.q) {
                    points.push(Params { q: q.map(|q| q as u32), ..base });
                }
            }
            Family::Master1 | Family::Master2 => {
                let zs: Vec<Option<i64>> = if family == Family::Master2 {
                    opt_values(ranges.z, 1).into_iter().map(Some).collect()
                } else {
                    vec![None]
                };
                for y in opt_values(ranges.y, 0) {
                    for &z in &zs {
                        for x in opt_values_or_none(ranges.x) {
                            points.push(Params { y: Some(y), z, x, ..base });
                        }
                    }
                }
            }
        }
        for p in points {
            out.push(CheckCase::new(family, p, mode)?);
        }
    }
    if out.is_empty() {
        let m = ranges.m.hi as u32;
        return Err(match ranges.k.hi {
            Some(_) if ranges.k.lo > m => VerifyError::KOutOfRange { m, k: ranges.k.lo },
            Some(_) if family == Family::Eq6 && ranges.k.lo == m => VerifyError::KNotBelowM { m, k: m },
            _ => VerifyError::EmptySweep,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn case(family: Family, params: Params) -> CheckCase {
        CheckCase::new(family, params, Mode::All).unwrap()
    }

    #[test]
    fn eq3_worked_point() {
        let r = Verifier::default().run(&case(
            Family::Eq3,
            Params { m: 4, k: Some(1), b: Some(2), ..Default::default() },
        ));
        assert_eq!(r.status, Status::Ok, "{}", r.text_line());
        assert_eq!(r.formula, Some(Value::Int(2.into())));
        assert_eq!(r.enumerated, Some(Value::Int(2.into())));
        assert_eq!(r.fixed_points, Some(Value::Int(2.into())));
    }

    #[test]
    fn eq6_special_m1() {
        let r = Verifier::default().run(&case(Family::Eq6Special, Params { m: 1, ..Default::default() }));
        assert!(r.is_ok(), "{}", r.text_line());
        let two = Value::Q(QPoly::constant(Var::Q, 2.into()));
        assert_eq!(r.formula.as_ref(), Some(&two));
        assert_eq!(r.enumerated.as_ref(), Some(&two));
        assert_eq!(r.fixed_points.as_ref(), Some(&two));
    }

    #[test]
    fn master1_m0() {
        let r = Verifier::default().run(&case(Family::Master1, Params { m: 0, y: Some(0), ..Default::default() }));
        assert!(r.is_ok(), "{}", r.text_line());
        match &r.formula {
            Some(Value::X(p)) => assert_eq!(p.degree(), Some(1)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn ceilings_skip() {
        let v = Verifier::new(Options {
            ceilings: Ceilings { max_ground: 4, max_matrix_m: 2 },
            ..Default::default()
        });
        let r = v.run(&case(Family::Eq4, Params { m: 3, k: Some(0), ..Default::default() }));
        assert_eq!(r.status, Status::Skipped);
        let r = v.run(&case(Family::Eq6Special, Params { m: 3, ..Default::default() }));
        assert_eq!(r.status, Status::Skipped);
        let f = CheckCase::new(Family::Eq4, Params { m: 3, k: Some(0), ..Default::default() }, Mode::Formula).unwrap();
        assert_eq!(v.run(&f).status, Status::Ok);
    }

    #[test]
    fn case_validation() {
        assert_eq!(
            CheckCase::new(Family::Eq6, Params { m: 3, k: Some(5), ..Default::default() }, Mode::All),
            Err(VerifyError::KOutOfRange { m: 3, k: 5 })
        );
        assert!(CheckCase::new(Family::Eq6, Params { m: 3, k: Some(3), ..Default::default() }, Mode::All).is_err());
        assert!(CheckCase::new(Family::Eq5, Params { m: 3, k: Some(1), b: Some(0), ..Default::default() }, Mode::All).is_err());
    }

    #[test]
    fn range_parsing() {
        assert_eq!("0..5".parse::<IntRange>(), Ok(IntRange { lo: 0, hi: 5 }));
        assert_eq!("-5..10".parse::<IntRange>(), Ok(IntRange { lo: -5, hi: 10 }));
        assert_eq!("3".parse::<IntRange>(), Ok(IntRange::single(3)));
        assert!("5..1".parse::<IntRange>().is_err());
        assert!("a..b".parse::<IntRange>().is_err());
        assert_eq!("0..m".parse::<KRange>(), Ok(KRange { lo: 0, hi: None }));
        assert_eq!("2".parse::<KRange>(), Ok(KRange { lo: 2, hi: Some(2) }));
        assert!("m".parse::<KRange>().is_err());
    }

    #[test]
    fn sweep_cases_resolve_symbolic_k() {
        let ranges = SweepRanges {
            m: IntRange { lo: 0, hi: 2 },
            b: Some(IntRange { lo: 0, hi: 1 }),
            ..Default::default()
        };
        let cs = cases(Family::Eq3, &ranges, Mode::All).unwrap();
        // (1 + 2 + 3) k values times 2 b values
        assert_eq!(cs.len(), 12);
        let eq6 = cases(Family::Eq6, &ranges, Mode::All).unwrap();
        assert_eq!(eq6.len(), 3);
        let bad = SweepRanges {
            m: IntRange::single(3),
            k: KRange { lo: 5, hi: Some(5) },
            ..Default::default()
        };
        assert_eq!(cases(Family::Eq6, &bad, Mode::All), Err(VerifyError::KOutOfRange { m: 3, k: 5 }));
        let empty = SweepRanges { m: IntRange::single(0), ..Default::default() };
        assert_eq!(cases(Family::Eq6, &empty, Mode::All), Err(VerifyError::EmptySweep));
    }

    #[test]
    fn reports_are_reproducible() {
        let cs = cases(
            Family::Eq5,
            &SweepRanges {
                m: IntRange { lo: 0, hi: 2 },
                q: Some(IntRange { lo: 1, hi: 2 }),
                ..Default::default()
            },
            Mode::All,
        )
        .unwrap();
        let v = Verifier::default();
        let mut a = Vec::new();
        let mut b = Vec::new();
        write_json(&v.sweep(&cs, 1), false, &mut a).unwrap();
        write_json(&v.sweep(&cs, 4), false, &mut b).unwrap();
        assert_eq!(a, b);
    }
}

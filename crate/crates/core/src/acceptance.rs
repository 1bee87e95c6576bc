//! The acceptance criteria as runnable checks, shared by the `selftest`
//! subcommand and the `acceptance` test target.

use std::fmt;

use num_traits::One;

use crate::dominoes::{DominoFamily, Orientation};
use crate::exact::{ipow, Integer, QPoly, Var};
use crate::matrices::{Classification, ColumnChoice, MatrixConfig, MatrixFamily, StepOutcome};
use crate::sums;
use crate::verifier::{
    cases, CheckCase, Family, IntRange, KRange, Mode, Options, Status, SweepRanges, VerificationReport, Verifier,
};
use crate::InvolutionOutcome;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriterionResult {
    pub id: u8,
    pub title: &'static str,
    pub pass: bool,
    pub detail: String,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        write!(f, "[{verdict}] {}. {}: {}", self.id, self.title, self.detail)
    }
}

pub const TITLES: [&str; 8] = [
    "domino sum, fixed colour count",
    "domino sum, free colouring",
    "omino sum",
    "matrix sum, k = m",
    "matrix sum, k < m",
    "involution property suites",
    "master identities",
    "worked examples",
];

/// Runs one criterion (1 to 8) on `jobs` threads.
pub fn run(id: u8, jobs: usize) -> CriterionResult {
    let (pass, detail) = match id {
        1 => criterion1(jobs),
        2 => criterion2(jobs),
        3 => criterion3(jobs),
        4 => criterion4(jobs),
        5 => criterion5(jobs),
        6 => criterion6(jobs),
        7 => criterion7(jobs),
        8 => criterion8(),
        _ => (false, format!("no criterion {id}")),
    };
    CriterionResult {
        id,
        title: TITLES.get(id as usize - 1).copied().unwrap_or("unknown"),
        pass,
        detail,
    }
}

pub fn run_all(jobs: usize) -> Vec<CriterionResult> {
    (1..=8).map(|id| run(id, jobs)).collect()
}

fn m_range(lo: i64, hi: i64) -> IntRange {
    IntRange { lo, hi }
}

fn sweep(family: Family, ranges: SweepRanges, mode: Mode) -> Vec<CheckCase> {
    cases(family, &ranges, mode).expect("acceptance ranges are valid")
}

/// Every report must be `ok`; the detail names the first one that is not.
fn all_ok(label: &str, reports: &[VerificationReport]) -> (bool, String) {
    match reports.iter().find(|r| r.status != Status::Ok) {
        None => (true, format!("{label}: {} points ok", reports.len())),
        Some(r) => (false, format!("{label}: {}", r.text_line().replace('\n', " "))),
    }
}

fn combine(parts: Vec<(bool, String)>) -> (bool, String) {
    let pass = parts.iter().all(|(p, _)| *p);
    let detail = parts
        .into_iter()
        .filter(|(p, _)| pass || !*p)
        .map(|(_, d)| d)
        .collect::<Vec<_>>()
        .join("; ");
    (pass, detail)
}

fn criterion1(jobs: usize) -> (bool, String) {
    let v = Verifier::default();
    let formula = v.sweep(
        &sweep(
            Family::Eq3,
            SweepRanges {
                m: m_range(0, 8),
                b: Some(m_range(0, 4)),
                ..Default::default()
            },
            Mode::Formula,
        ),
        jobs,
    );
    let full = v.sweep(
        &sweep(
            Family::Eq3,
            SweepRanges {
                m: m_range(0, 5),
                b: Some(m_range(0, 4)),
                ..Default::default()
            },
            Mode::All,
        ),
        jobs,
    );
    let direct = direct_closed(&formula, |r| ipow(2, r.case.params.k.unwrap_or(0)));
    combine(vec![all_ok("formula m<=8", &formula), all_ok("three-way m<=5", &full), direct])
}

fn criterion2(jobs: usize) -> (bool, String) {
    let v = Verifier::default();
    let formula = v.sweep(
        &sweep(Family::Eq4, SweepRanges { m: m_range(0, 8), ..Default::default() }, Mode::Formula),
        jobs,
    );
    let full = v.sweep(
        &sweep(Family::Eq4, SweepRanges { m: m_range(0, 5), ..Default::default() }, Mode::All),
        jobs,
    );
    let direct = direct_closed(&formula, |r| {
        let (m, k) = (r.case.params.m as i64, r.case.params.k.unwrap_or(0));
        Integer::from(2 * m - k as i64 + 1) * ipow(2, k)
    });
    combine(vec![all_ok("formula m<=8", &formula), all_ok("three-way m<=5", &full), direct])
}

/// Compares each report's direct sum with a closed form computed here.
fn direct_closed(reports: &[VerificationReport], expected: impl Fn(&VerificationReport) -> Integer) -> (bool, String) {
    use crate::verifier::Value;
    let bad = reports.iter().find(|r| match &r.formula {
        Some(Value::Int(v)) => *v != expected(r),
        _ => true,
    });
    match bad {
        None => (true, "closed forms match".to_string()),
        Some(r) => (false, format!("closed form differs at {} {}", r.case.family, r.case.params)),
    }
}

fn criterion3(jobs: usize) -> (bool, String) {
    let v = Verifier::default();
    let mut full_cases = Vec::new();
    for q in 1..=4i64 {
        for m in 0..=12 / (q + 1) {
            full_cases.extend(sweep(
                Family::Eq5,
                SweepRanges {
                    m: IntRange::single(m),
                    b: Some(m_range(0, 12 - (q + 1) * m)),
                    q: Some(IntRange::single(q)),
                    ..Default::default()
                },
                Mode::All,
            ));
        }
    }
    let full = v.sweep(&full_cases, jobs);
    let formula = v.sweep(
        &sweep(
            Family::Eq5,
            SweepRanges {
                m: m_range(0, 6),
                b: Some(m_range(0, 3)),
                q: Some(m_range(1, 4)),
                ..Default::default()
            },
            Mode::Formula,
        ),
        jobs,
    );
    let direct = direct_closed(&formula, |r| {
        let p = r.case.params;
        let (k, q) = (p.k.unwrap_or(0), p.q.unwrap_or(1) as i64);
        ipow(q, p.m - k) * ipow(1 + q, k)
    });
    combine(vec![
        all_ok("three-way (q+1)m+b<=12", &full),
        all_ok("formula m<=6", &formula),
        direct,
    ])
}

fn criterion4(jobs: usize) -> (bool, String) {
    let v = Verifier::default();
    let full = v.sweep(
        &sweep(Family::Eq6Special, SweepRanges { m: m_range(0, 8), ..Default::default() }, Mode::All),
        jobs,
    );
    let numeric = v.sweep(
        &sweep(
            Family::Eq6Special,
            SweepRanges {
                m: m_range(0, 8),
                q: Some(m_range(0, 4)),
                ..Default::default()
            },
            Mode::Formula,
        ),
        jobs,
    );
    let direct = (0..=8u32)
        .flat_map(|m| (0..=4u32).map(move |q| (m, q)))
        .find(|&(m, q)| sums::eq6_special_sum(m, q) != Integer::from(m + 1));
    let totals = (0..=8u32).find(|&m| {
        let fam = MatrixFamily::new(m, m).expect("k = m");
        fam.weight_total() != QPoly::constant(Var::Q, Integer::from(m + 1))
    });
    combine(vec![
        all_ok("enumeration m<=8", &full),
        all_ok("numeric q<=4", &numeric),
        match direct {
            None => (true, "sum = m+1".to_string()),
            Some((m, q)) => (false, format!("eq6_special_sum({m},{q}) != {}", m + 1)),
        },
        match totals {
            None => (true, "weight_total = m+1".to_string()),
            Some(m) => (false, format!("weight_total({m},{m}) != {}", m + 1)),
        },
    ])
}

fn criterion5(jobs: usize) -> (bool, String) {
    let v = Verifier::default();
    let full = v.sweep(
        &sweep(Family::Eq6, SweepRanges { m: m_range(1, 6), ..Default::default() }, Mode::All),
        jobs,
    );
    let mut bad = None;
    for m in 1..=6u32 {
        for k in 0..m {
            let d = m - k;
            let fam = MatrixFamily::new(m, k).expect("k < m");
            let q = QPoly::monomial(Var::Q, Integer::one(), 1);
            let closed = &(&QPoly::constant(Var::Q, Integer::from(d)) + &q.scale(&Integer::from(m + 1)))
                * &q.pow(d - 1);
            let survivors = &q.pow(d).scale(&Integer::from(m + 1)) + &q.pow(d - 1).scale(&Integer::from(d));
            let total = fam.weight_total();
            let formula = sums::eq6_poly(m, k).expect("k < m");
            if total != closed || formula != closed || survivors != closed || fam.survivor_total_closed() != closed {
                bad = Some((m, k));
            }
        }
    }
    combine(vec![
        all_ok("three-way k<m<=6", &full),
        match bad {
            None => (true, "weight_total = eq6_poly = survivor total".to_string()),
            Some((m, k)) => (false, format!("polynomials differ at m={m} k={k}")),
        },
    ])
}

fn involution_cases() -> Vec<CheckCase> {
    let mut out = sweep(
        Family::Eq3,
        SweepRanges {
            m: m_range(0, 5),
            b: Some(m_range(0, 4)),
            ..Default::default()
        },
        Mode::Involution,
    );
    out.extend(sweep(Family::Eq4, SweepRanges { m: m_range(0, 5), ..Default::default() }, Mode::Involution));
    for q in 1..=4i64 {
        for m in 0..=12 / (q + 1) {
            out.extend(sweep(
                Family::Eq5,
                SweepRanges {
                    m: IntRange::single(m),
                    b: Some(m_range(0, 12 - (q + 1) * m)),
                    q: Some(IntRange::single(q)),
                    ..Default::default()
                },
                Mode::Involution,
            ));
        }
    }
    out.extend(matrix_involution_cases());
    out.extend(sweep(Family::Eq6Special, SweepRanges { m: m_range(7, 8), ..Default::default() }, Mode::Involution));
    out
}

fn matrix_involution_cases() -> Vec<CheckCase> {
    let mut out = sweep(Family::Eq6, SweepRanges { m: m_range(1, 6), ..Default::default() }, Mode::Involution);
    out.extend(sweep(Family::Eq6Special, SweepRanges { m: m_range(0, 6), ..Default::default() }, Mode::Involution));
    out
}

fn criterion6(jobs: usize) -> (bool, String) {
    let bw = Verifier::default().sweep(&involution_cases(), jobs);
    let wb_cases: Vec<CheckCase> = involution_cases()
        .into_iter()
        .filter(|c| matches!(c.family, Family::Eq3 | Family::Eq4))
        .collect();
    let wb = Verifier::new(Options {
        orientation: Orientation::Wb,
        ..Default::default()
    })
    .sweep(&wb_cases, jobs);
    let mutant = Verifier::new(Options {
        column_choice: ColumnChoice::First,
        ..Default::default()
    })
    .sweep(&matrix_involution_cases(), jobs);
    let caught = mutant.iter().filter(|r| r.status == Status::Mismatch).count();
    let guard = if caught > 0 {
        (true, format!("first-column mutant caught at {caught} points"))
    } else {
        (false, "first-column mutant passed every suite".to_string())
    };
    combine(vec![all_ok("BW suites", &bw), all_ok("WB domino suites", &wb), guard])
}

fn criterion7(jobs: usize) -> (bool, String) {
    let v = Verifier::default();
    let ranges = SweepRanges {
        m: m_range(0, 6),
        k: KRange::default(),
        x: None,
        y: Some(m_range(0, 3)),
        z: Some(m_range(0, 3)),
        ..Default::default()
    };
    let first = v.sweep(&sweep(Family::Master1, ranges, Mode::Formula), jobs);
    let second = v.sweep(&sweep(Family::Master2, ranges, Mode::Formula), jobs);
    combine(vec![all_ok("master1", &first), all_ok("master2", &second)])
}

fn criterion8() -> (bool, String) {
    let mut parts = Vec::new();

    let fam = DominoFamily::sun3(4, 1, 2).expect("valid family");
    let pair = fam
        .parse("W B B W W W [..] W | B")
        .and_then(|a| fam.parse("W B [..] W W [..] W | B").map(|b| (a, b)));
    let ok = match &pair {
        Ok((a, b)) => {
            a.weight() == -1
                && b.weight() == 1
                && a.involute(Orientation::Bw).partner() == Some(b)
                && b.involute(Orientation::Bw).partner() == Some(a)
                && matches!(a.involute(Orientation::Bw), InvolutionOutcome::Moved { .. })
        }
        Err(_) => false,
    };
    parts.push((ok, "domino worked pair exchanged with weights -1/+1".to_string()));

    let left: Result<MatrixConfig, _> = "010000000 / 110101110".parse();
    let right: Result<MatrixConfig, _> = "010010000 / 110111100".parse();
    let ok = match (&left, &right) {
        (Ok(l), Ok(r)) => {
            l.step2_bij1() == StepOutcome::Moved(r.clone()) && r.step2_bij1() == StepOutcome::Moved(l.clone())
        }
        _ => false,
    };
    parts.push((ok, "bij1 worked pair exchanged both ways".to_string()));

    let ok = match "0u10110000 / 111011u000".parse::<MatrixConfig>() {
        Ok(c) => {
            c.k_set() == [3, 5, 6]
                && c.j_set() == [1, 2, 3, 5, 6]
                && c.a_set() == [2]
                && c.b_set() == [7]
                && matches!(c.classify(), Classification::Killed { step: 1, .. })
        }
        Err(_) => false,
    };
    parts.push((ok, "m=10 matrix sets and step-1 kill".to_string()));

    let pass = parts.iter().all(|(p, _)| *p);
    let detail = parts
        .into_iter()
        .map(|(p, d)| if p { d } else { format!("FAILED {d}") })
        .collect::<Vec<_>>()
        .join("; ");
    (pass, detail)
}

//! Marked `2 x m` matrices with an `(m-k)`-cell extension of the top row,
//! and the four-step pruning involution on them.
//!
//! Each main column is one of `(0,0)`, `(0,1)`, `(1,1)`, `(0̲,1)`, `(0,0̲)`
//! (top over bottom, `0̲` an underlined zero). Extension cells are `0`, `1`
//! or `0̲`. Reading the marks as sets on `[1, 2m-k]`:
//!
//! | set | cells                                            |
//! |-----|--------------------------------------------------|
//! | `K` | ones in the top row and the extension            |
//! | `J` | ones in the bottom row                           |
//! | `A` | underlined zeros in the top row and the extension |
//! | `B` | underlined zeros in the bottom row               |
//!
//! The bottom row has to end in at least `|K|` plain zeros. A configuration
//! weighs `(-1)^(|K|+|B|) q^(|A|+|B|)`: every element of `A` or `B` carries
//! one of `q` colors, and since no step ever recolors anything the colors are
//! tracked only as a power of `q`.
//!
//! The pruning runs four involutions in order; the first one that applies
//! pairs the configuration with a partner of opposite sign and equal
//! `q`-exponent:
//!
//! 1. toggle the leftmost underlined main column `(0,0̲) <-> (0̲,1)`;
//! 2. with `c*` the last `(1,1)` column and the tail the bottom entries
//!    after it: if the tail contains `01`, turn the column of the zero of
//!    its last `01` into `(1,1)` and the tail's last one into a zero;
//!    otherwise clear `c*` and turn the tail's first zero into a one;
//! 3. (`k < m`) with the extension `0̲^i a w` and an all-zero bottom row and
//!    `a = 0`: flip the first non-underlined entry of `w`;
//! 4. (`k < m`) move a one between `a` and the end of the bottom row's
//!    leading block of ones.
//!
//! Survivors: for `k = m` the `m+1` matrices with an empty `K` and
//! `J = [1, t]`; for `k < m`, `m+1` matrices with a fully underlined
//! extension (weight `q^(m-k)`) and `m-k` with an all-zero bottom row and an
//! extension underlined everywhere but one plain zero (weight `q^(m-k-1)`).

use std::fmt;
use std::ops::Neg;
use std::str::FromStr;

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::exact::{Integer, QPoly, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("k must satisfy 0 <= k <= m (got m={m}, k={k})")]
    KOutOfRange { m: u32, k: u32 },
    #[error("rows must have length m={m} and the extension m-k={ext}")]
    Shape { m: usize, ext: usize },
    #[error("column {0} is not one of (0,0), (0,1), (1,1), (0̲,1), (0,0̲)")]
    IllegalColumn(usize),
    #[error("bottom row ends in {trailing} plain zeros but |K| = {k_size}")]
    Trailing { trailing: usize, k_size: usize },
    #[error("cannot parse matrix: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CellMark {
    Plain0,
    One,
    Underlined0,
}

use CellMark::{One, Plain0, Underlined0};

impl CellMark {
    pub fn symbol(self) -> char {
        match self {
            Plain0 => '0',
            One => '1',
            Underlined0 => 'u',
        }
    }

    fn from_symbol(c: char) -> Option<Self> {
        match c {
            '0' => Some(Plain0),
            '1' => Some(One),
            'u' | 'U' => Some(Underlined0),
            _ => None,
        }
    }
}

/// The five legal `(top, bottom)` main columns, in enumeration order.
pub const COLUMNS: [(CellMark, CellMark); 5] = [
    (Plain0, Plain0),
    (Plain0, One),
    (One, One),
    (Underlined0, One),
    (Plain0, Underlined0),
];

const EXT_MARKS: [CellMark; 3] = [Plain0, One, Underlined0];

/// `sign * q^exponent`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct QMonomial {
    pub sign: i8,
    pub exponent: u32,
}

impl QMonomial {
    pub fn to_poly(self) -> QPoly {
        QPoly::signed_monomial(self.sign, self.exponent as usize)
    }
}

impl Neg for QMonomial {
    type Output = QMonomial;
    fn neg(self) -> QMonomial {
        QMonomial {
            sign: -self.sign,
            exponent: self.exponent,
        }
    }
}

impl fmt::Display for QMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.sign < 0 { "-" } else { "+" };
        write!(f, "{s}q^{}", self.exponent)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SurvivorKind {
    /// `k = m`: empty `K`, `J` an initial segment.
    InitialSegment,
    /// `k < m`: extension fully underlined, bottom row `1^t 0^(m-t)`.
    FullyColoredExt,
    /// `k < m`: bottom row all zeros, extension `0̲^i 0 0̲^(m-k-1-i)`.
    SinglePlainExt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StepOutcome {
    NotApplicable,
    Survivor(SurvivorKind),
    Moved(MatrixConfig),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    Killed { step: u8, partner: MatrixConfig },
    Survivor(SurvivorKind),
}

/// Which `(1,1)` column the second step pivots on. Only [`Last`] gives an
/// involution; [`First`] exists so test suites can show they catch it.
///
/// [`Last`]: ColumnChoice::Last
/// [`First`]: ColumnChoice::First
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize)]
pub enum ColumnChoice {
    #[default]
    Last,
    First,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MatrixConfig {
    m: u32,
    k: u32,
    top: Vec<CellMark>,
    bottom: Vec<CellMark>,
    ext: Vec<CellMark>,
}

fn marks_positions(marks: &[CellMark], mark: CellMark, offset: usize) -> Vec<usize> {
    marks
        .iter()
        .enumerate()
        .filter(|(_, &c)| c == mark)
        .map(|(i, _)| i + 1 + offset)
        .collect()
}

fn count(marks: &[CellMark], mark: CellMark) -> usize {
    marks.iter().filter(|&&c| c == mark).count()
}

impl MatrixConfig {
    pub fn new(
        m: u32,
        k: u32,
        top: Vec<CellMark>,
        bottom: Vec<CellMark>,
        ext: Vec<CellMark>,
    ) -> Result<Self, MatrixError> {
        if k > m {
            return Err(MatrixError::KOutOfRange { m, k });
        }
        let c = Self { m, k, top, bottom, ext };
        c.validate()?;
        Ok(c)
    }

    fn validate(&self) -> Result<(), MatrixError> {
        let m = self.m as usize;
        if self.top.len() != m || self.bottom.len() != m || self.ext.len() != m - self.k as usize {
            return Err(MatrixError::Shape {
                m,
                ext: m - self.k as usize,
            });
        }
        if let Some(p) = (0..m).find(|&i| !COLUMNS.contains(&(self.top[i], self.bottom[i]))) {
            return Err(MatrixError::IllegalColumn(p + 1));
        }
        let trailing = self.trailing_plain_zeros();
        let k_size = self.k_size();
        if trailing < k_size {
            return Err(MatrixError::Trailing { trailing, k_size });
        }
        Ok(())
    }

    pub fn is_legal(&self) -> bool {
        self.validate().is_ok()
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn top(&self) -> &[CellMark] {
        &self.top
    }

    pub fn bottom(&self) -> &[CellMark] {
        &self.bottom
    }

    pub fn ext(&self) -> &[CellMark] {
        &self.ext
    }

    /// 1-based; extension cell `i` is element `m + i` of `E = [m+1, 2m-k]`.
    pub fn k_set(&self) -> Vec<usize> {
        let mut v = marks_positions(&self.top, One, 0);
        v.extend(marks_positions(&self.ext, One, self.m as usize));
        v
    }

    pub fn j_set(&self) -> Vec<usize> {
        marks_positions(&self.bottom, One, 0)
    }

    pub fn a_set(&self) -> Vec<usize> {
        let mut v = marks_positions(&self.top, Underlined0, 0);
        v.extend(marks_positions(&self.ext, Underlined0, self.m as usize));
        v
    }

    pub fn b_set(&self) -> Vec<usize> {
        marks_positions(&self.bottom, Underlined0, 0)
    }

    pub fn k_size(&self) -> usize {
        count(&self.top, One) + count(&self.ext, One)
    }

    /// Derived summation index `i = m - |K|`.
    pub fn i_index(&self) -> usize {
        self.m as usize - self.k_size()
    }

    pub fn trailing_plain_zeros(&self) -> usize {
        self.bottom.iter().rev().take_while(|&&c| c == Plain0).count()
    }

    pub fn weight(&self) -> QMonomial {
        let b = count(&self.bottom, Underlined0);
        let a = count(&self.top, Underlined0) + count(&self.ext, Underlined0);
        QMonomial {
            sign: if (self.k_size() + b).is_multiple_of(2) { 1 } else { -1 },
            exponent: (a + b) as u32,
        }
    }

    fn main_has_underline(&self) -> bool {
        self.top.contains(&Underlined0) || self.bottom.contains(&Underlined0)
    }

    fn one_one_columns(&self) -> Vec<usize> {
        (0..self.m as usize)
            .filter(|&c| self.top[c] == One && self.bottom[c] == One)
            .collect()
    }

    fn has_zero_one(&self, from: usize) -> bool {
        self.last_zero_one(from).is_some()
    }

    /// Index of the zero in the last `01` of `bottom[from..]`.
    fn last_zero_one(&self, from: usize) -> Option<usize> {
        let m = self.m as usize;
        (from..m.saturating_sub(1))
            .rev()
            .find(|&c| self.bottom[c] == Plain0 && self.bottom[c + 1] == One)
    }

    /// Steps 1 and 2 cannot fire.
    fn main_pruned(&self) -> bool {
        !self.main_has_underline() && self.one_one_columns().is_empty() && !self.has_zero_one(0)
    }

    /// Length of the leading block of ones in the bottom row.
    fn leading_ones(&self) -> usize {
        self.bottom.iter().take_while(|&&c| c == One).count()
    }

    fn first_non_underlined_ext(&self) -> Option<usize> {
        self.ext.iter().position(|&c| c != Underlined0)
    }

    /// Position in [`MatrixFamily::enumerate`] order as (main index,
    /// extension index).
    pub fn enumeration_index(&self) -> (u64, u64) {
        let main = self.top.iter().zip(&self.bottom).fold(0u64, |acc, (t, b)| {
            let col = COLUMNS.iter().position(|c| *c == (*t, *b)).unwrap_or(0);
            acc * 5 + col as u64
        });
        let ext = self.ext.iter().fold(0u64, |acc, c| {
            acc * 3 + EXT_MARKS.iter().position(|e| e == c).unwrap_or(0) as u64
        });
        (main, ext)
    }

    /// Step 1: toggle the leftmost underlined main column.
    pub fn step1_underline(&self) -> StepOutcome {
        let Some(p) = (0..self.m as usize)
            .find(|&c| self.top[c] == Underlined0 || self.bottom[c] == Underlined0)
        else {
            return StepOutcome::NotApplicable;
        };
        let mut d = self.clone();
        if self.bottom[p] == Underlined0 {
            d.top[p] = Underlined0;
            d.bottom[p] = One;
        } else {
            d.top[p] = Plain0;
            d.bottom[p] = Underlined0;
        }
        StepOutcome::Moved(d)
    }

    /// Step 2 with the last `(1,1)` column as pivot.
    pub fn step2_bij1(&self) -> StepOutcome {
        self.step2_bij1_with(ColumnChoice::Last)
    }

    pub fn step2_bij1_with(&self, choice: ColumnChoice) -> StepOutcome {
        if self.main_has_underline() {
            return StepOutcome::NotApplicable;
        }
        let pivots = self.one_one_columns();
        if pivots.is_empty() && !self.has_zero_one(0) {
            return StepOutcome::NotApplicable;
        }
        let pivot = match choice {
            ColumnChoice::Last => pivots.last().copied(),
            ColumnChoice::First => pivots.first().copied(),
        };
        let tail = pivot.map_or(0, |c| c + 1);
        let m = self.m as usize;
        let mut d = self.clone();
        if let Some(p) = self.last_zero_one(tail) {
            let last_one = (tail..m)
                .rev()
                .find(|&c| self.bottom[c] == One)
                .expect("a 01 string contains a one");
            d.top[p] = One;
            d.bottom[p] = One;
            d.bottom[last_one] = Plain0;
        } else {
            let c = pivot.expect("without a (1,1) column the whole row holds a 01");
            // The trailing plain zeros outnumber |K| >= 1, so a zero exists.
            let Some(first_zero) = (tail..m).find(|&i| self.bottom[i] == Plain0) else {
                return StepOutcome::NotApplicable;
            };
            d.top[c] = Plain0;
            d.bottom[c] = Plain0;
            d.bottom[first_zero] = One;
        }
        StepOutcome::Moved(d)
    }

    /// Step 3: flip within the extension when the bottom row is all zeros
    /// and the first non-underlined extension entry is a plain zero.
    pub fn step3_extflip(&self) -> StepOutcome {
        if self.k >= self.m || !self.main_pruned() {
            return StepOutcome::NotApplicable;
        }
        let Some(a) = self.first_non_underlined_ext() else {
            return StepOutcome::NotApplicable;
        };
        if self.leading_ones() != 0 || self.ext[a] != Plain0 {
            return StepOutcome::NotApplicable;
        }
        match (a + 1..self.ext.len()).find(|&i| self.ext[i] != Underlined0) {
            None => StepOutcome::Survivor(SurvivorKind::SinglePlainExt),
            Some(w) => {
                let mut d = self.clone();
                d.ext[w] = if self.ext[w] == One { Plain0 } else { One };
                StepOutcome::Moved(d)
            }
        }
    }

    /// Step 4: trade the extension entry `a` against the last leading one
    /// of the bottom row.
    pub fn step4_transfer(&self) -> StepOutcome {
        if self.k >= self.m || !self.main_pruned() {
            return StepOutcome::NotApplicable;
        }
        let Some(a) = self.first_non_underlined_ext() else {
            return StepOutcome::NotApplicable;
        };
        let t = self.leading_ones();
        let mut d = self.clone();
        if self.ext[a] == One {
            // |K| >= 1 forces a trailing zero, so t < m.
            d.ext[a] = Plain0;
            d.bottom[t] = One;
        } else if t >= 1 {
            d.ext[a] = One;
            d.bottom[t - 1] = Plain0;
        } else {
            return StepOutcome::NotApplicable;
        }
        StepOutcome::Moved(d)
    }

    pub fn classify(&self) -> Classification {
        self.classify_with(ColumnChoice::Last)
    }

    /// Runs the steps in order and reports the first that fires.
    pub fn classify_with(&self, choice: ColumnChoice) -> Classification {
        if let StepOutcome::Moved(partner) = self.step1_underline() {
            return Classification::Killed { step: 1, partner };
        }
        if let StepOutcome::Moved(partner) = self.step2_bij1_with(choice) {
            return Classification::Killed { step: 2, partner };
        }
        if self.k == self.m {
            return Classification::Survivor(SurvivorKind::InitialSegment);
        }
        if self.first_non_underlined_ext().is_none() {
            return Classification::Survivor(SurvivorKind::FullyColoredExt);
        }
        match self.step3_extflip() {
            StepOutcome::Moved(partner) => return Classification::Killed { step: 3, partner },
            StepOutcome::Survivor(kind) => return Classification::Survivor(kind),
            StepOutcome::NotApplicable => {}
        }
        match self.step4_transfer() {
            StepOutcome::Moved(partner) => Classification::Killed { step: 4, partner },
            other => unreachable!("step 4 must apply once steps 1-3 do not, got {other:?}"),
        }
    }
}

impl fmt::Display for MatrixConfig {
    /// `top [ext] / bottom`, with `u` for an underlined zero.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let row = |r: &[CellMark]| r.iter().map(|c| c.symbol()).collect::<String>();
        write!(f, "{}", row(&self.top))?;
        if !self.ext.is_empty() {
            write!(f, " {}", row(&self.ext))?;
        }
        write!(f, " / {}", row(&self.bottom))
    }
}

impl FromStr for MatrixConfig {
    type Err = MatrixError;

    fn from_str(s: &str) -> Result<Self, MatrixError> {
        let (upper, lower) = s
            .split_once('/')
            .ok_or_else(|| MatrixError::Parse("expected `top [ext] / bottom`".into()))?;
        let row = |text: &str| -> Result<Vec<CellMark>, MatrixError> {
            text.chars()
                .map(|c| {
                    CellMark::from_symbol(c)
                        .ok_or_else(|| MatrixError::Parse(format!("unknown mark {c:?}")))
                })
                .collect()
        };
        let parts: Vec<&str> = upper.split_whitespace().collect();
        let (top, ext) = match parts.as_slice() {
            [top] => (row(top)?, Vec::new()),
            [top, ext] => (row(top)?, row(ext)?),
            _ => return Err(MatrixError::Parse("top row needs one or two words".into())),
        };
        let bottom = row(lower.trim())?;
        let m = top.len();
        if ext.len() > m {
            return Err(MatrixError::Parse("extension longer than the main rows".into()));
        }
        let k = m - ext.len();
        MatrixConfig::new(m as u32, k as u32, top, bottom, ext)
    }
}

/// One parameter point of the matrix family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct MatrixFamily {
    pub m: u32,
    pub k: u32,
}

/// Words of length `len` over `0..base`, in lexicographic order.
fn word(n: u64, len: usize, base: u64) -> Vec<usize> {
    let mut digits = vec![0usize; len];
    let mut n = n;
    for d in digits.iter_mut().rev() {
        *d = (n % base) as usize;
        n /= base;
    }
    digits
}

impl MatrixFamily {
    pub fn new(m: u32, k: u32) -> Result<Self, MatrixError> {
        if k > m {
            return Err(MatrixError::KOutOfRange { m, k });
        }
        Ok(Self { m, k })
    }

    pub fn ext_len(&self) -> usize {
        (self.m - self.k) as usize
    }

    /// Every legal configuration, ordered lexicographically by main columns
    /// (in [`COLUMNS`] order) and then by extension (`0 < 1 < 0̲`).
    pub fn enumerate(&self) -> impl Iterator<Item = MatrixConfig> {
        self.enumerate_partition(0, 1)
    }

    /// The configurations whose main-matrix index is `part` modulo `parts`;
    /// the `parts` partitions together cover [`enumerate`](Self::enumerate).
    pub fn enumerate_partition(&self, part: u64, parts: u64) -> impl Iterator<Item = MatrixConfig> {
        let (m, k) = (self.m, self.k);
        let mlen = m as usize;
        let elen = self.ext_len();
        let mains = 5u64.pow(m);
        let exts = 3u64.pow(elen as u32);
        (part..mains).step_by(parts as usize).flat_map(move |n| {
            let cols = word(n, mlen, 5);
            let top: Vec<CellMark> = cols.iter().map(|&c| COLUMNS[c].0).collect();
            let bottom: Vec<CellMark> = cols.iter().map(|&c| COLUMNS[c].1).collect();
            let trailing = bottom.iter().rev().take_while(|&&c| c == Plain0).count();
            let budget = trailing as i64 - count(&top, One) as i64;
            let ext_range = if budget < 0 { 0..0 } else { 0..exts };
            ext_range.filter_map(move |e| {
                let ext: Vec<CellMark> = word(e, elen, 3).into_iter().map(|i| EXT_MARKS[i]).collect();
                (count(&ext, One) as i64 <= budget).then(|| MatrixConfig {
                    m,
                    k,
                    top: top.clone(),
                    bottom: bottom.clone(),
                    ext,
                })
            })
        })
    }

    /// Signed weight total over all configurations, as a polynomial in `q`.
    pub fn weight_total(&self) -> QPoly {
        const PARTS: u64 = 25;
        let totals = (0..PARTS)
            .into_par_iter()
            .map(|part| {
                let mut acc = vec![0i64; 2 * self.m as usize + 1];
                for c in self.enumerate_partition(part, PARTS) {
                    let w = c.weight();
                    acc[w.exponent as usize] += w.sign as i64;
                }
                acc
            })
            .reduce(
                || vec![0i64; 2 * self.m as usize + 1],
                |a, b| a.iter().zip(&b).map(|(x, y)| x + y).collect(),
            );
        QPoly::new(Var::Q, totals.into_iter().map(Integer::from).collect())
    }

    /// Survivors built directly, in enumeration order.
    pub fn survivors(&self) -> Vec<MatrixConfig> {
        let m = self.m as usize;
        let elen = self.ext_len();
        let staircase = |t: usize| -> Vec<CellMark> { (0..m).map(|i| if i < t { One } else { Plain0 }).collect() };
        let mut out = Vec::new();
        for t in 0..=m {
            if elen == 0 {
                out.push(self.raw(vec![Plain0; m], staircase(t), Vec::new()));
            } else {
                out.push(self.raw(vec![Plain0; m], staircase(t), vec![Underlined0; elen]));
            }
        }
        for i in 0..elen {
            let mut ext = vec![Underlined0; elen];
            ext[i] = Plain0;
            out.push(self.raw(vec![Plain0; m], vec![Plain0; m], ext));
        }
        out.sort();
        out
    }

    fn raw(&self, top: Vec<CellMark>, bottom: Vec<CellMark>, ext: Vec<CellMark>) -> MatrixConfig {
        MatrixConfig::new(self.m, self.k, top, bottom, ext).expect("constructed survivor is legal")
    }

    /// `m + 1` for `k = m`; `(m+1) q^(m-k) + (m-k) q^(m-k-1)` otherwise.
    pub fn survivor_total_closed(&self) -> QPoly {
        let (m, k) = (self.m, self.k);
        if k == m {
            return QPoly::constant(Var::Q, Integer::from(m + 1));
        }
        let a = QPoly::monomial(Var::Q, Integer::from(m + 1), (m - k) as usize);
        let b = QPoly::monomial(Var::Q, Integer::from(m - k), (m - k - 1) as usize);
        &a + &b
    }

    /// Signed count of the original objects `(i, J, K, A, B)`: `J ⊆ [i]`,
    /// `K ⊆ J ∪ E` with `|K| = m - i`, `A ⊆ (J ∪ E) \ K` and `B ⊆ [i] \ J`,
    /// with every element of `A` and `B` given one of `q` explicit colors and
    /// sign `(-1)^(|K|+|B|)`. Works on sets directly rather than on the
    /// matrix encoding, so it checks that encoding as well.
    pub fn colored_tuple_total(&self, q: u32) -> Integer {
        let m = self.m as usize;
        let e_mask: u64 = (m..m + self.ext_len()).fold(0, |acc, b| acc | 1 << b);
        let mut total = 0i64;
        for i in 0..=m {
            let i_mask: u64 = (1u64 << i) - 1;
            for j_mask in submasks(i_mask) {
                let je = j_mask | e_mask;
                for k_mask in submasks(je).filter(|s| s.count_ones() as usize == m - i) {
                    for a_mask in submasks(je & !k_mask) {
                        for b_mask in submasks(i_mask & !j_mask) {
                            let sign = if (k_mask.count_ones() + b_mask.count_ones()) % 2 == 0 { 1 } else { -1 };
                            let slots = (a_mask.count_ones() + b_mask.count_ones()) as usize;
                            let colorings = if slots == 0 {
                                1
                            } else {
                                itertools::repeat_n(0..q, slots).multi_cartesian_product().count() as i64
                            };
                            total += sign * colorings;
                        }
                    }
                }
            }
        }
        total.into()
    }
}

/// All submasks of `mask`, including `0` and `mask`.
fn submasks(mask: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(mask);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 { None } else { Some((cur - 1) & mask) };
        Some(cur)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m10_example() -> MatrixConfig {
        "0u10110000 / 111011u000".parse().unwrap()
    }

    #[test]
    fn m10_example_sets_and_weight() {
        let c = m10_example();
        assert_eq!(c.k_set(), vec![3, 5, 6]);
        assert_eq!(c.j_set(), vec![1, 2, 3, 5, 6]);
        assert_eq!(c.a_set(), vec![2]);
        assert_eq!(c.b_set(), vec![7]);
        assert_eq!(c.trailing_plain_zeros(), 3);
        assert_eq!(c.weight(), QMonomial { sign: 1, exponent: 2 });
        assert_eq!(c.i_index(), 7);
        match c.classify() {
            Classification::Killed { step: 1, partner } => {
                assert_eq!(partner.to_string(), "0010110000 / 1u1011u000");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn tiny_enumerations() {
        let all: Vec<String> = MatrixFamily::new(1, 1).unwrap().enumerate().map(|c| c.to_string()).collect();
        assert_eq!(all, vec!["0 / 0", "0 / 1", "u / 1", "0 / u"]);
        assert_eq!(MatrixFamily::new(0, 0).unwrap().enumerate().count(), 1);
        assert_eq!(MatrixFamily::new(1, 1).unwrap().weight_total(), QPoly::constant(Var::Q, 2.into()));
        assert_eq!(MatrixFamily::new(1, 0).unwrap().weight_total(), QPoly::q_linear(1, 2));
    }

    #[test]
    fn single_bottom_underline_weight() {
        let c: MatrixConfig = "0 / u".parse().unwrap();
        assert_eq!(c.weight(), QMonomial { sign: -1, exponent: 1 });
        let p: MatrixConfig = "0000000000 / 0000000000".parse().unwrap();
        assert_eq!(p.weight(), QMonomial { sign: 1, exponent: 0 });
    }

    #[test]
    fn step1_ignores_extension_underlines() {
        let c: MatrixConfig = "00 u / 00".parse().unwrap();
        assert_eq!(c.step1_underline(), StepOutcome::NotApplicable);
        let d: MatrixConfig = "00 / 1u".parse().unwrap();
        assert_eq!(d.step1_underline(), StepOutcome::Moved("0u / 11".parse().unwrap()));
    }

    #[test]
    fn bij1_worked_pair() {
        let left: MatrixConfig = "010000000 / 110101110".parse().unwrap();
        let right: MatrixConfig = "010010000 / 110111100".parse().unwrap();
        assert_eq!(left.k_set(), vec![2]);
        assert_eq!(left.j_set(), vec![1, 2, 4, 6, 7, 8]);
        assert_eq!(right.k_set(), vec![2, 5]);
        assert_eq!(right.j_set(), vec![1, 2, 4, 5, 6, 7]);
        assert_eq!(left.step2_bij1(), StepOutcome::Moved(right.clone()));
        assert_eq!(right.step2_bij1(), StepOutcome::Moved(left));
    }

    #[test]
    fn bij1_small_case() {
        let c: MatrixConfig = "00 / 01".parse().unwrap();
        let d: MatrixConfig = "10 / 10".parse().unwrap();
        assert_eq!(c.step2_bij1(), StepOutcome::Moved(d.clone()));
        assert_eq!(d.step2_bij1(), StepOutcome::Moved(c));
        let survivor: MatrixConfig = "000 / 110".parse().unwrap();
        assert_eq!(survivor.step2_bij1(), StepOutcome::NotApplicable);
        assert_eq!(survivor.classify(), Classification::Survivor(SurvivorKind::InitialSegment));
    }

    #[test]
    fn ext_steps() {
        let c: MatrixConfig = "000 00 / 000".parse().unwrap();
        assert_eq!(c.step3_extflip(), StepOutcome::Moved("000 01 / 000".parse().unwrap()));
        let b: MatrixConfig = "000 0u / 000".parse().unwrap();
        assert_eq!(b.step3_extflip(), StepOutcome::Survivor(SurvivorKind::SinglePlainExt));
        let a: MatrixConfig = "000 uu / 100".parse().unwrap();
        assert_eq!(a.step3_extflip(), StepOutcome::NotApplicable);
        assert_eq!(a.classify(), Classification::Survivor(SurvivorKind::FullyColoredExt));

        let x: MatrixConfig = "00 1 / 00".parse().unwrap();
        let y: MatrixConfig = "00 0 / 10".parse().unwrap();
        assert_eq!(x.step4_transfer(), StepOutcome::Moved(y.clone()));
        assert_eq!(y.step4_transfer(), StepOutcome::Moved(x.clone()));
        assert_eq!(x.step3_extflip(), StepOutcome::NotApplicable);
        assert_eq!(y.classify(), Classification::Killed { step: 4, partner: x });
    }

    #[test]
    fn legality_errors() {
        assert_eq!("1 / 0".parse::<MatrixConfig>(), Err(MatrixError::IllegalColumn(1)));
        assert_eq!(
            "1 / 1".parse::<MatrixConfig>(),
            Err(MatrixError::Trailing { trailing: 0, k_size: 1 })
        );
        assert_eq!(
            "00 11 / 00".parse::<MatrixConfig>(),
            Ok(MatrixConfig::new(2, 0, vec![Plain0; 2], vec![Plain0; 2], vec![One; 2]).unwrap())
        );
        assert!("00 111 / 00".parse::<MatrixConfig>().is_err());
        assert!(MatrixFamily::new(1, 2).is_err());
    }

    #[test]
    fn survivor_totals() {
        for m in 0..=4 {
            for k in 0..=m {
                let fam = MatrixFamily::new(m, k).unwrap();
                let total = fam
                    .survivors()
                    .iter()
                    .fold(QPoly::zero(Var::Q), |acc, c| &acc + &c.weight().to_poly());
                assert_eq!(total, fam.survivor_total_closed());
            }
        }
    }
}

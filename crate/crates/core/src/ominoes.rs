//! `(q+1)`-omino configurations.
//!
//! Ground `[1, (q+1)m+b]`, omino range `[1, (q+1)m+b-k]`, exactly
//! `m - #ominoes` black vertices, weight `(-1)^#ominoes`. A window of `q+1`
//! consecutive range vertices is active when it is an omino or reads
//! `W^q B`; toggling the leftmost active window is a weight-reversing
//! involution whose fixed points number `q^(m-k) (1+q)^k`.

use std::fmt;

use itertools::Itertools;

use crate::exact::{binom, ipow, Integer};
use crate::strip::{BlackRule, Color, ConfigError, InvolutionOutcome, Layout, Line, WindowKind, MAX_GROUND};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OminoFamily {
    pub m: u32,
    pub k: u32,
    pub b: u32,
    pub q: u32,
}

impl OminoFamily {
    /// `q = 0` is rejected: every in-range black would then be an active
    /// window on its own.
    pub fn new(m: u32, k: u32, b: u32, q: u32) -> Result<Self, ConfigError> {
        if k > m {
            return Err(ConfigError::KOutOfRange { m, k });
        }
        if q == 0 {
            return Err(ConfigError::ZeroQ);
        }
        let family = Self { m, k, b, q };
        if family.ground_size() > MAX_GROUND {
            return Err(ConfigError::TooLarge(family.ground_size()));
        }
        Ok(family)
    }

    pub fn ground_size(&self) -> usize {
        ((self.q + 1) * self.m + self.b) as usize
    }

    pub fn range_size(&self) -> usize {
        self.ground_size() - self.k as usize
    }

    pub fn omino_len(&self) -> usize {
        self.q as usize + 1
    }

    /// `W^q B`.
    pub fn pattern(&self) -> Vec<Color> {
        let mut p = vec![Color::White; self.q as usize];
        p.push(Color::Black);
        p
    }

    pub(crate) fn line(&self) -> Line {
        Line {
            ground: self.ground_size(),
            range: self.range_size(),
            block: self.omino_len(),
            rule: BlackRule::Complement(self.m as usize),
        }
    }

    fn wrap(&self, layout: Layout) -> OminoConfig {
        OminoConfig {
            family: *self,
            layout,
        }
    }

    /// Same ordering as the domino engine: omino set, then black set.
    pub fn enumerate(&self) -> impl Iterator<Item = OminoConfig> {
        let family = *self;
        self.line().layouts().map(move |l| family.wrap(l))
    }

    pub fn expected_count(&self) -> Integer {
        let (ground, range) = (self.ground_size() as i64, self.range_size() as i64);
        let (m, q) = (self.m as i64, self.q as i64);
        (0..=m)
            .map(|i| binom(range - q * i, i) * binom(ground - (q + 1) * i, m - i))
            .sum()
    }

    /// Survivors built directly: `j` blacks among the last `k` vertices,
    /// then the range reads `W^i1 B W^i2 B ... W^i(m-j) B W...W` with every
    /// exponent below `q`. Same order as [`enumerate`](Self::enumerate).
    pub fn fixed_points(&self) -> Vec<OminoConfig> {
        let range = self.range_size();
        let outside: Vec<usize> = (range + 1..=self.ground_size()).collect();
        let mut out = Vec::new();
        for j in 0..=outside.len().min(self.m as usize) {
            let inner = self.m as usize - j;
            for outer in outside.iter().copied().combinations(j) {
                for gaps in gap_words(inner, self.q as usize) {
                    let mut blacks = Vec::with_capacity(self.m as usize);
                    let mut p = 0;
                    for g in gaps {
                        p += g + 1;
                        blacks.push(p);
                    }
                    blacks.extend(&outer);
                    let layout = self.line().build(&[], &blacks).expect("survivor is a valid configuration");
                    out.push(self.wrap(layout));
                }
            }
        }
        out.sort_by_key(OminoConfig::blacks);
        out
    }

    /// `q^(m-k) (1+q)^k`.
    pub fn fixed_count_closed(&self) -> Integer {
        ipow(self.q as i64, self.m - self.k) * ipow(self.q as i64 + 1, self.k)
    }

    pub fn config(&self, ominoes: &[usize], blacks: &[usize]) -> Result<OminoConfig, ConfigError> {
        Ok(self.wrap(self.line().build(ominoes, blacks)?))
    }

    pub fn parse(&self, text: &str) -> Result<OminoConfig, ConfigError> {
        Ok(self.wrap(self.line().parse(text)?))
    }
}

/// All words of the given length over `0..q`.
fn gap_words(len: usize, q: usize) -> Vec<Vec<usize>> {
    if len == 0 {
        return vec![Vec::new()];
    }
    itertools::repeat_n(0..q, len).multi_cartesian_product().collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OminoConfig {
    family: OminoFamily,
    layout: Layout,
}

impl OminoConfig {
    pub fn family(&self) -> &OminoFamily {
        &self.family
    }

    pub fn ominoes(&self) -> Vec<usize> {
        Line::starts_list(&self.layout)
    }

    pub fn blacks(&self) -> Vec<usize> {
        Line::blacks_list(&self.layout)
    }

    pub fn omino_count(&self) -> usize {
        self.layout.starts.count_ones() as usize
    }

    pub fn black_count(&self) -> usize {
        self.layout.blacks.count_ones() as usize
    }

    pub fn weight(&self) -> i32 {
        if self.omino_count().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn is_valid(&self) -> bool {
        self.family.line().is_valid(&self.layout)
    }

    pub fn leftmost_active_tuple(&self) -> Option<(usize, WindowKind)> {
        self.family
            .line()
            .leftmost_active(&self.layout, &self.family.pattern())
    }

    pub fn involute(&self) -> InvolutionOutcome<OminoConfig> {
        match self.family.line().involute(&self.layout, &self.family.pattern()) {
            InvolutionOutcome::Fixed => InvolutionOutcome::Fixed,
            InvolutionOutcome::Moved { partner, site, kind } => InvolutionOutcome::Moved {
                partner: self.family.wrap(partner),
                site,
                kind,
            },
        }
    }
}

impl fmt::Display for OminoConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.family.line().render(&self.layout, f)
    }
}

//! Domino configurations and the leftmost-active-pair involution.
//!
//! A configuration places nonoverlapping dominoes inside the domino range
//! `[1, range]` and colors every uncovered vertex of `[1, ground]` black or
//! white. Its weight is `(-1)^#dominoes`.
//!
//! * [`Variant::Sun3`]: ground `2m+b`, range `2m+b-k`, exactly
//!   `m - #dominoes` black vertices. Signed total `2^k`.
//! * [`Variant::Sun4`]: ground `2m`, range `2m-k`, coloring unrestricted.
//!   Signed total `(2m-k+1) 2^k`.
//!
//! A pair `(p, p+1)` inside the range is active when a domino covers it or
//! when it carries the orientation's color pattern. [`Orientation::Bw`]
//! (black then white) is the default; its fixed points have the in-range
//! blacks flush right. [`Orientation::Wb`] gives the mirror-image involution
//! with blacks flush left.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::Serialize;

use crate::exact::{binom, ipow, Integer};
use crate::strip::{BlackRule, Color, ConfigError, InvolutionOutcome, Layout, Line, WindowKind, MAX_GROUND};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Variant {
    /// Exactly `m - #dominoes` blacks.
    Sun3,
    /// Free coloring.
    Sun4,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    #[default]
    Bw,
    Wb,
}

impl Orientation {
    pub fn pattern(self) -> [Color; 2] {
        match self {
            Orientation::Bw => [Color::Black, Color::White],
            Orientation::Wb => [Color::White, Color::Black],
        }
    }
}

impl FromStr for Orientation {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "bw" => Ok(Orientation::Bw),
            "wb" => Ok(Orientation::Wb),
            other => Err(format!("unknown orientation {other:?} (expected bw or wb)")),
        }
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Orientation::Bw => "bw",
            Orientation::Wb => "wb",
        })
    }
}

/// One parameter point of a domino family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct DominoFamily {
    pub variant: Variant,
    pub m: u32,
    pub k: u32,
    /// Always 0 for [`Variant::Sun4`].
    pub b: u32,
}

impl DominoFamily {
    pub fn new(variant: Variant, m: u32, k: u32, b: u32) -> Result<Self, ConfigError> {
        if k > m {
            return Err(ConfigError::KOutOfRange { m, k });
        }
        let b = if variant == Variant::Sun4 { 0 } else { b };
        let family = Self { variant, m, k, b };
        if family.ground_size() > MAX_GROUND {
            return Err(ConfigError::TooLarge(family.ground_size()));
        }
        Ok(family)
    }

    pub fn sun3(m: u32, k: u32, b: u32) -> Result<Self, ConfigError> {
        Self::new(Variant::Sun3, m, k, b)
    }

    pub fn sun4(m: u32, k: u32) -> Result<Self, ConfigError> {
        Self::new(Variant::Sun4, m, k, 0)
    }

    pub fn ground_size(&self) -> usize {
        (2 * self.m + self.b) as usize
    }

    pub fn range_size(&self) -> usize {
        self.ground_size() - self.k as usize
    }

    pub(crate) fn line(&self) -> Line {
        Line {
            ground: self.ground_size(),
            range: self.range_size(),
            block: 2,
            rule: match self.variant {
                Variant::Sun3 => BlackRule::Complement(self.m as usize),
                Variant::Sun4 => BlackRule::Free,
            },
        }
    }

    fn wrap(&self, layout: Layout) -> DominoConfig {
        DominoConfig {
            family: *self,
            layout,
        }
    }

    /// Every configuration once, ordered by domino set (count, then start
    /// list) and then by black set (size, then lexicographically).
    pub fn enumerate(&self) -> impl Iterator<Item = DominoConfig> {
        let family = *self;
        self.line().layouts().map(move |l| family.wrap(l))
    }

    /// Number of configurations, from the product-of-binomials count.
    pub fn expected_count(&self) -> Integer {
        let (ground, range) = (self.ground_size() as i64, self.range_size() as i64);
        let m = self.m as i64;
        (0..=m)
            .map(|i| {
                let placements = binom(range - i, i);
                let colorings = match self.variant {
                    Variant::Sun3 => binom(ground - 2 * i, m - i),
                    Variant::Sun4 if ground >= 2 * i => ipow(2, (ground - 2 * i) as u32),
                    Variant::Sun4 => Integer::zero(),
                };
                placements * colorings
            })
            .sum()
    }

    /// Fixed points of the involution, constructed directly: no dominoes,
    /// the in-range blacks packed against the end the orientation dictates,
    /// and the last `k` vertices colored freely. Same order as
    /// [`enumerate`](Self::enumerate).
    pub fn fixed_points(&self, orientation: Orientation) -> Vec<DominoConfig> {
        let range = self.range_size();
        let ground = self.ground_size();
        let outside: Vec<usize> = (range + 1..=ground).collect();
        let packed = |count: usize| -> Vec<usize> {
            match orientation {
                Orientation::Bw => (range + 1 - count..=range).collect(),
                Orientation::Wb => (1..=count).collect(),
            }
        };
        let mut out = Vec::new();
        for mask in 0u64..(1u64 << outside.len()) {
            let outer: Vec<usize> = outside
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &v)| v)
                .collect();
            let inside_counts: Vec<usize> = match self.variant {
                Variant::Sun3 => match (self.m as usize).checked_sub(outer.len()) {
                    Some(c) if c <= range => vec![c],
                    _ => vec![],
                },
                Variant::Sun4 => (0..=range).collect(),
            };
            for c in inside_counts {
                let mut blacks = packed(c);
                blacks.extend(&outer);
                let layout = self.line().build(&[], &blacks).expect("constructed fixed point is valid");
                out.push(self.wrap(layout));
            }
        }
        out.sort_by_key(|c| (c.layout.blacks.count_ones(), c.blacks()));
        out
    }

    /// `2^k` for Sun3, `(2m-k+1) 2^k` for Sun4.
    pub fn fixed_count_closed(&self) -> Integer {
        match self.variant {
            Variant::Sun3 => ipow(2, self.k),
            Variant::Sun4 => Integer::from(2 * self.m - self.k + 1) * ipow(2, self.k),
        }
    }

    pub fn config(&self, dominoes: &[usize], blacks: &[usize]) -> Result<DominoConfig, ConfigError> {
        Ok(self.wrap(self.line().build(dominoes, blacks)?))
    }

    /// Parses the trace encoding, e.g. `W B B W W W [..] W | B`.
    pub fn parse(&self, text: &str) -> Result<DominoConfig, ConfigError> {
        Ok(self.wrap(self.line().parse(text)?))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DominoConfig {
    family: DominoFamily,
    layout: Layout,
}

impl DominoConfig {
    pub fn family(&self) -> &DominoFamily {
        &self.family
    }

    /// Sorted start positions; domino `p` covers `{p, p+1}`.
    pub fn dominoes(&self) -> Vec<usize> {
        Line::starts_list(&self.layout)
    }

    pub fn blacks(&self) -> Vec<usize> {
        Line::blacks_list(&self.layout)
    }

    pub fn domino_count(&self) -> usize {
        self.layout.starts.count_ones() as usize
    }

    pub fn black_count(&self) -> usize {
        self.layout.blacks.count_ones() as usize
    }

    pub fn weight(&self) -> i32 {
        if self.domino_count().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn is_valid(&self) -> bool {
        self.family.line().is_valid(&self.layout)
    }

    pub fn leftmost_active_pair(&self, orientation: Orientation) -> Option<(usize, WindowKind)> {
        self.family
            .line()
            .leftmost_active(&self.layout, &orientation.pattern())
    }

    pub fn involute(&self, orientation: Orientation) -> InvolutionOutcome<DominoConfig> {
        match self.family.line().involute(&self.layout, &orientation.pattern()) {
            InvolutionOutcome::Fixed => InvolutionOutcome::Fixed,
            InvolutionOutcome::Moved { partner, site, kind } => InvolutionOutcome::Moved {
                partner: self.family.wrap(partner),
                site,
                kind,
            },
        }
    }
}

impl fmt::Display for DominoConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.family.line().render(&self.layout, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strip::ToggleKind;

    fn worked_pair() -> (DominoConfig, DominoConfig) {
        let fam = DominoFamily::sun3(4, 1, 2).unwrap();
        (
            fam.config(&[7], &[2, 3, 10]).unwrap(),
            fam.config(&[3, 7], &[2, 10]).unwrap(),
        )
    }

    #[test]
    fn small_enumerations() {
        let fam = DominoFamily::sun3(1, 0, 0).unwrap();
        let all: Vec<String> = fam.enumerate().map(|c| c.to_string()).collect();
        assert_eq!(all, vec!["B W", "W B", "[..]"]);
        assert_eq!(DominoFamily::sun3(0, 0, 0).unwrap().enumerate().count(), 1);
        let sun4 = DominoFamily::sun4(1, 0).unwrap();
        assert_eq!(sun4.enumerate().count(), 5);
        assert_eq!(sun4.expected_count(), 5.into());
    }

    #[test]
    fn worked_pair_weights_and_sites() {
        let (first, second) = worked_pair();
        assert_eq!(first.weight(), -1);
        assert_eq!(second.weight(), 1);
        assert_eq!(first.leftmost_active_pair(Orientation::Bw), Some((3, WindowKind::Colors)));
        assert_eq!(second.leftmost_active_pair(Orientation::Bw), Some((3, WindowKind::Block)));
        assert_eq!(first.to_string(), "W B B W W W [..] W | B");
        assert_eq!(second.to_string(), "W B [..] W W [..] W | B");
    }

    #[test]
    fn worked_pair_is_exchanged() {
        let (first, second) = worked_pair();
        assert_eq!(
            first.involute(Orientation::Bw),
            InvolutionOutcome::Moved {
                partner: second.clone(),
                site: 3,
                kind: ToggleKind::ColorsToBlock
            }
        );
        assert_eq!(second.involute(Orientation::Bw).partner(), Some(&first));
    }

    #[test]
    fn tiny_involution_cases() {
        let fam = DominoFamily::sun3(1, 0, 0).unwrap();
        let wb = fam.config(&[], &[2]).unwrap();
        assert!(wb.involute(Orientation::Bw).is_fixed());
        let bw = fam.config(&[], &[1]).unwrap();
        let dom = fam.config(&[1], &[]).unwrap();
        assert_eq!(bw.involute(Orientation::Bw).partner(), Some(&dom));
        assert_eq!(dom.involute(Orientation::Bw).partner(), Some(&bw));
        let white = DominoFamily::sun4(2, 0).unwrap().config(&[], &[]).unwrap();
        assert_eq!(white.leftmost_active_pair(Orientation::Bw), None);
        // mirror orientation swaps the roles
        assert!(bw.involute(Orientation::Wb).is_fixed());
        assert_eq!(wb.involute(Orientation::Wb).partner(), Some(&dom));
    }

    #[test]
    fn fixed_point_examples() {
        let fam = DominoFamily::sun3(1, 0, 0).unwrap();
        let fixed = fam.fixed_points(Orientation::Bw);
        assert_eq!(fixed.len(), 1);
        assert_eq!(fixed[0].blacks(), vec![2]);
        assert_eq!(DominoFamily::sun3(4, 1, 2).unwrap().fixed_points(Orientation::Bw).len(), 2);
        assert_eq!(DominoFamily::sun4(4, 1).unwrap().fixed_points(Orientation::Bw).len(), 16);
        assert_eq!(DominoFamily::sun4(4, 1).unwrap().fixed_count_closed(), 16.into());
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(
            DominoFamily::sun3(2, 3, 0),
            Err(ConfigError::KOutOfRange { m: 2, k: 3 })
        );
        assert!(matches!(DominoFamily::sun3(30, 0, 10), Err(ConfigError::TooLarge(70))));
    }

    #[test]
    fn orientation_parsing() {
        assert_eq!("BW".parse::<Orientation>(), Ok(Orientation::Bw));
        assert_eq!("wb".parse::<Orientation>(), Ok(Orientation::Wb));
        assert!("bb".parse::<Orientation>().is_err());
    }
}

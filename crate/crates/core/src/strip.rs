//! Configurations on a line `[1, ground]`: blocks of a fixed length placed
//! inside the prefix `[1, range]`, and a black/white coloring of the
//! uncovered vertices. Dominoes and `(q+1)`-ominoes are both built on this.
//!
//! Positions are 1-based. Vertex `p` is bit `p - 1` of a mask.

use std::fmt;

use itertools::Itertools;
use serde::Serialize;
use thiserror::Error;

/// Largest supported ground set.
pub const MAX_GROUND: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("k must satisfy 0 <= k <= m (got m={m}, k={k})")]
    KOutOfRange { m: u32, k: u32 },
    #[error("q must be at least 1 for the omino engine")]
    ZeroQ,
    #[error("ground set of {0} vertices exceeds the supported maximum of {MAX_GROUND}")]
    TooLarge(usize),
    #[error("block at {start} leaves the range [1, {range}]")]
    BlockOutOfRange { start: usize, range: usize },
    #[error("blocks at {0} and {1} overlap")]
    Overlap(usize, usize),
    #[error("black vertex {0} is outside the ground set or covered")]
    BadBlack(usize),
    #[error("expected {expected} black vertices, found {found}")]
    BlackCount { expected: usize, found: usize },
    #[error("cannot parse configuration: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Color {
    White,
    Black,
}

/// Which way a toggle went.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ToggleKind {
    /// A block was replaced by the active color pattern.
    BlockToColors,
    /// The active color pattern was covered by a block.
    ColorsToBlock,
}

/// What made the leftmost active window active.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum WindowKind {
    Block,
    Colors,
}

impl WindowKind {
    fn toggle(self) -> ToggleKind {
        match self {
            WindowKind::Block => ToggleKind::BlockToColors,
            WindowKind::Colors => ToggleKind::ColorsToBlock,
        }
    }
}

/// Result of applying a weight-reversing involution to one configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InvolutionOutcome<C> {
    Fixed,
    Moved {
        partner: C,
        site: usize,
        kind: ToggleKind,
    },
}

impl<C> InvolutionOutcome<C> {
    pub fn partner(&self) -> Option<&C> {
        match self {
            InvolutionOutcome::Fixed => None,
            InvolutionOutcome::Moved { partner, .. } => Some(partner),
        }
    }

    pub fn is_fixed(&self) -> bool {
        matches!(self, InvolutionOutcome::Fixed)
    }
}

/// How many vertices are black.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) enum BlackRule {
    /// `#blacks = total - #blocks`.
    Complement(usize),
    Free,
}

/// Geometry shared by every configuration of one family at one parameter point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) struct Line {
    pub ground: usize,
    pub range: usize,
    pub block: usize,
    pub rule: BlackRule,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct Layout {
    /// Bit `p-1` set iff a block starts at `p`.
    pub starts: u64,
    pub blacks: u64,
}

fn bit(p: usize) -> u64 {
    1u64 << (p - 1)
}

fn positions(mask: u64) -> Vec<usize> {
    (0..64).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect()
}

fn mask_of(ps: impl IntoIterator<Item = usize>) -> u64 {
    ps.into_iter().fold(0, |acc, p| acc | bit(p))
}

impl Line {
    pub fn covered(&self, starts: u64) -> u64 {
        (0..self.block).fold(0, |acc, s| acc | starts << s)
    }

    pub fn ground_mask(&self) -> u64 {
        if self.ground == 64 {
            u64::MAX
        } else {
            (1u64 << self.ground) - 1
        }
    }

    /// Every set of pairwise disjoint blocks inside the range, ordered by
    /// block count and then lexicographically by start list.
    pub fn placements(&self) -> Vec<u64> {
        let mut by_count: Vec<Vec<Vec<usize>>> = Vec::new();
        let mut current = Vec::new();
        self.place_from(1, &mut current, &mut by_count);
        by_count
            .into_iter()
            .flat_map(|mut lists| {
                lists.sort();
                lists.into_iter().map(mask_of)
            })
            .collect()
    }

    fn place_from(&self, from: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<Vec<usize>>>) {
        if out.len() <= current.len() {
            out.resize(current.len() + 1, Vec::new());
        }
        out[current.len()].push(current.clone());
        let mut p = from;
        while p + self.block - 1 <= self.range {
            current.push(p);
            self.place_from(p + self.block, current, out);
            current.pop();
            p += 1;
        }
    }

    /// All layouts, ordered by placement and then by black set (by size,
    /// then lexicographically).
    pub fn layouts(self) -> impl Iterator<Item = Layout> {
        self.placements().into_iter().flat_map(move |starts| {
            let free = positions(self.ground_mask() & !self.covered(starts));
            let nblocks = starts.count_ones() as usize;
            let sizes: Vec<usize> = match self.rule {
                BlackRule::Complement(total) if nblocks > total => Vec::new(),
                BlackRule::Complement(total) => vec![total - nblocks],
                BlackRule::Free => (0..=free.len()).collect(),
            };
            sizes.into_iter().flat_map(move |size| {
                free.clone()
                    .into_iter()
                    .combinations(size)
                    .map(move |bs| Layout {
                        starts,
                        blacks: mask_of(bs),
                    })
            })
        })
    }

    /// Leftmost window `[p, p + block)` inside the range that is either a
    /// block or exactly the given uncovered color pattern.
    pub fn leftmost_active(&self, layout: &Layout, pattern: &[Color]) -> Option<(usize, WindowKind)> {
        debug_assert_eq!(pattern.len(), self.block);
        let covered = self.covered(layout.starts);
        let last = (self.range + 1).saturating_sub(self.block);
        (1..=last).find_map(|p| {
            if layout.starts & bit(p) != 0 {
                return Some((p, WindowKind::Block));
            }
            let matches = pattern.iter().enumerate().all(|(s, c)| {
                let v = p + s;
                covered & bit(v) == 0 && (layout.blacks & bit(v) != 0) == (*c == Color::Black)
            });
            matches.then_some((p, WindowKind::Colors))
        })
    }

    /// Swap the window at `p` between a block and the color pattern.
    pub fn toggle(&self, layout: &Layout, pattern: &[Color], p: usize, kind: WindowKind) -> Layout {
        let window = mask_of(p..p + self.block);
        let pattern_blacks = mask_of(
            pattern
                .iter()
                .enumerate()
                .filter(|(_, c)| **c == Color::Black)
                .map(|(s, _)| p + s),
        );
        match kind {
            WindowKind::Block => Layout {
                starts: layout.starts & !bit(p),
                blacks: layout.blacks | pattern_blacks,
            },
            WindowKind::Colors => Layout {
                starts: layout.starts | bit(p),
                blacks: layout.blacks & !window,
            },
        }
    }

    pub fn involute(&self, layout: &Layout, pattern: &[Color]) -> InvolutionOutcome<Layout> {
        match self.leftmost_active(layout, pattern) {
            None => InvolutionOutcome::Fixed,
            Some((site, kind)) => InvolutionOutcome::Moved {
                partner: self.toggle(layout, pattern, site, kind),
                site,
                kind: kind.toggle(),
            },
        }
    }

    pub fn build(&self, starts: &[usize], blacks: &[usize]) -> Result<Layout, ConfigError> {
        let mut sorted = starts.to_vec();
        sorted.sort_unstable();
        for &s in &sorted {
            if s == 0 || s + self.block - 1 > self.range {
                return Err(ConfigError::BlockOutOfRange {
                    start: s,
                    range: self.range,
                });
            }
        }
        for (a, b) in sorted.iter().tuple_windows() {
            if b - a < self.block {
                return Err(ConfigError::Overlap(*a, *b));
            }
        }
        let layout = Layout {
            starts: mask_of(sorted.iter().copied()),
            blacks: 0,
        };
        let covered = self.covered(layout.starts);
        for &v in blacks {
            if v == 0 || v > self.ground || covered & bit(v) != 0 {
                return Err(ConfigError::BadBlack(v));
            }
        }
        let layout = Layout {
            blacks: mask_of(blacks.iter().copied()),
            ..layout
        };
        self.check_rule(&layout)?;
        Ok(layout)
    }

    fn check_rule(&self, layout: &Layout) -> Result<(), ConfigError> {
        if let BlackRule::Complement(total) = self.rule {
            let nblocks = layout.starts.count_ones() as usize;
            let found = layout.blacks.count_ones() as usize;
            let expected = total.checked_sub(nblocks).ok_or(ConfigError::BlackCount {
                expected: 0,
                found: nblocks,
            })?;
            if found != expected {
                return Err(ConfigError::BlackCount { expected, found });
            }
        }
        Ok(())
    }

    /// Full structural validity check of a layout.
    pub fn is_valid(&self, layout: &Layout) -> bool {
        let starts = positions(layout.starts);
        let blacks = positions(layout.blacks);
        self.build(&starts, &blacks).as_ref() == Ok(layout)
    }

    /// Tokens `W`, `B`, `[..]` (one dot per covered vertex), with `|` after
    /// the last vertex of the range.
    pub fn render(&self, layout: &Layout, f: &mut impl fmt::Write) -> fmt::Result {
        let mut tokens: Vec<String> = Vec::new();
        let mut p = 1;
        while p <= self.ground {
            if layout.starts & bit(p) != 0 {
                tokens.push(format!("[{}]", ".".repeat(self.block)));
                p += self.block;
            } else {
                tokens.push(if layout.blacks & bit(p) != 0 { "B" } else { "W" }.to_string());
                p += 1;
            }
            if p - 1 == self.range && self.range < self.ground {
                tokens.push("|".to_string());
            }
        }
        write!(f, "{}", tokens.join(" "))
    }

    pub fn parse(&self, text: &str) -> Result<Layout, ConfigError> {
        let mut starts = Vec::new();
        let mut blacks = Vec::new();
        let mut p = 1;
        let mut saw_bar = false;
        for tok in text.split_whitespace() {
            match tok {
                "W" | "w" => p += 1,
                "B" | "b" => {
                    blacks.push(p);
                    p += 1;
                }
                "|" => {
                    if p - 1 != self.range {
                        return Err(ConfigError::Parse(format!(
                            "range marker after vertex {} but the range ends at {}",
                            p - 1,
                            self.range
                        )));
                    }
                    saw_bar = true;
                }
                t if t.starts_with('[') && t.ends_with(']') => {
                    let cells = t.len() - 2;
                    if cells != self.block || !t[1..t.len() - 1].chars().all(|c| c == '.') {
                        return Err(ConfigError::Parse(format!(
                            "block token {t} should cover {} vertices",
                            self.block
                        )));
                    }
                    starts.push(p);
                    p += self.block;
                }
                t => return Err(ConfigError::Parse(format!("unknown token {t}"))),
            }
        }
        if p - 1 != self.ground {
            return Err(ConfigError::Parse(format!(
                "configuration covers {} vertices, expected {}",
                p - 1,
                self.ground
            )));
        }
        if !saw_bar && self.range < self.ground {
            return Err(ConfigError::Parse("missing range marker |".into()));
        }
        self.build(&starts, &blacks)
    }

    pub fn starts_list(layout: &Layout) -> Vec<usize> {
        positions(layout.starts)
    }

    pub fn blacks_list(layout: &Layout) -> Vec<usize> {
        positions(layout.blacks)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn domino_line(ground: usize, range: usize) -> Line {
        Line {
            ground,
            range,
            block: 2,
            rule: BlackRule::Free,
        }
    }

    #[test]
    fn placements_are_ordered_and_disjoint() {
        let line = domino_line(5, 5);
        let lists: Vec<Vec<usize>> = line.placements().iter().map(|m| positions(*m)).collect();
        assert_eq!(
            lists,
            vec![
                vec![],
                vec![1],
                vec![2],
                vec![3],
                vec![4],
                vec![1, 3],
                vec![1, 4],
                vec![2, 4]
            ]
        );
    }

    #[test]
    fn render_and_parse() {
        let line = Line {
            ground: 10,
            range: 9,
            block: 2,
            rule: BlackRule::Complement(4),
        };
        let layout = line.build(&[7], &[2, 3, 10]).unwrap();
        let mut s = String::new();
        line.render(&layout, &mut s).unwrap();
        assert_eq!(s, "W B B W W W [..] W | B");
        assert_eq!(line.parse(&s).unwrap(), layout);
        assert!(line.parse("W B B W W W [..] W B").is_err());
        assert!(line.parse("W B B W W W [...] B").is_err());
    }

    #[test]
    fn build_rejects_bad_layouts() {
        let line = domino_line(6, 4);
        assert_eq!(
            line.build(&[4], &[]),
            Err(ConfigError::BlockOutOfRange { start: 4, range: 4 })
        );
        assert_eq!(line.build(&[1, 2], &[]), Err(ConfigError::Overlap(1, 2)));
        assert_eq!(line.build(&[1], &[2]), Err(ConfigError::BadBlack(2)));
        assert_eq!(line.build(&[], &[7]), Err(ConfigError::BadBlack(7)));
        assert!(line.build(&[1, 3], &[5, 6]).is_ok());
    }
}

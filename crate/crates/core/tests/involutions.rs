//! Exhaustive checks of the line involutions, independent of the verifier.

use std::collections::BTreeSet;

use sun_identity::dominoes::{DominoFamily, Orientation, Variant};
use sun_identity::exact::ipow;
use sun_identity::ominoes::OminoFamily;
use sun_identity::InvolutionOutcome;

fn domino_families() -> impl Iterator<Item = DominoFamily> {
    let sun3 = (0..=5u32).flat_map(|m| {
        (0..=m).flat_map(move |k| (0..=4u32).map(move |b| DominoFamily::sun3(m, k, b).unwrap()))
    });
    let sun4 = (0..=5u32).flat_map(|m| (0..=m).map(move |k| DominoFamily::sun4(m, k).unwrap()));
    sun3.chain(sun4)
}

#[test]
fn domino_involution_both_orientations() {
    for fam in domino_families() {
        for orientation in [Orientation::Bw, Orientation::Wb] {
            let mut fixed = BTreeSet::new();
            let mut total = 0i64;
            for c in fam.enumerate() {
                total += c.weight() as i64;
                match c.involute(orientation) {
                    InvolutionOutcome::Fixed => {
                        fixed.insert(c.to_string());
                    }
                    InvolutionOutcome::Moved { partner, .. } => {
                        assert!(partner.is_valid(), "{fam:?} {c}");
                        assert_eq!(partner.weight(), -c.weight(), "{fam:?} {c}");
                        assert_eq!(
                            partner.domino_count() + partner.black_count(),
                            c.domino_count() + c.black_count()
                        );
                        assert_eq!(partner.involute(orientation).partner(), Some(&c), "{fam:?} {c}");
                    }
                }
            }
            let constructed: BTreeSet<String> = fam.fixed_points(orientation).iter().map(|c| c.to_string()).collect();
            assert_eq!(fixed, constructed, "{fam:?} {orientation}");
            // Every fixed point has weight +1, so the signed total is the census.
            assert_eq!(total, fixed.len() as i64, "{fam:?}");
            assert_eq!(fam.fixed_count_closed(), (fixed.len() as i64).into());
        }
    }
}

#[test]
fn sun4_census_matches_closed_form() {
    for m in 0..=5u32 {
        for k in 0..=m {
            let fam = DominoFamily::new(Variant::Sun4, m, k, 0).unwrap();
            let expected = ipow(2, k) * (2 * m - k + 1);
            assert_eq!(fam.fixed_points(Orientation::Bw).len().to_string(), expected.to_string());
        }
    }
}

#[test]
fn omino_involution_exhaustive() {
    for q in 1..=4u32 {
        for m in 0..=12 / (q + 1) {
            for k in 0..=m {
                for b in 0..=12 - (q + 1) * m {
                    let fam = OminoFamily::new(m, k, b, q).unwrap();
                    let mut fixed = Vec::new();
                    for c in fam.enumerate() {
                        match c.involute() {
                            InvolutionOutcome::Fixed => fixed.push(c),
                            InvolutionOutcome::Moved { partner, .. } => {
                                assert!(partner.is_valid());
                                assert_eq!(partner.weight(), -c.weight());
                                assert_eq!(partner.omino_count() + partner.black_count(), c.omino_count() + c.black_count());
                                assert_eq!(partner.involute().partner(), Some(&c), "{fam:?} {c}");
                            }
                        }
                    }
                    let want: BTreeSet<String> = fam.fixed_points().iter().map(|c| c.to_string()).collect();
                    let got: BTreeSet<String> = fixed.iter().map(|c| c.to_string()).collect();
                    assert_eq!(got, want, "{fam:?}");
                    assert_eq!(fixed.len().to_string(), (ipow(q as i64, m - k) * ipow(1 + q as i64, k)).to_string());
                }
            }
        }
    }
}

/// With `q = 1` the omino pattern is `W B`, so the omino involution is the
/// WB-oriented domino involution of the Sun3 variant.
#[test]
fn unit_q_ominoes_are_wb_dominoes() {
    for m in 0..=5u32 {
        for k in 0..=m {
            for b in 0..=3u32 {
                let ominoes = OminoFamily::new(m, k, b, 1).unwrap();
                let dominoes = DominoFamily::sun3(m, k, b).unwrap();
                let o: Vec<(String, Option<String>)> = ominoes
                    .enumerate()
                    .map(|c| (c.to_string(), c.involute().partner().map(|p| p.to_string())))
                    .collect();
                let mut d: Vec<(String, Option<String>)> = dominoes
                    .enumerate()
                    .map(|c| (c.to_string(), c.involute(Orientation::Wb).partner().map(|p| p.to_string())))
                    .collect();
                let mut o = o;
                o.sort();
                d.sort();
                assert_eq!(o, d, "m={m} k={k} b={b}");
            }
        }
    }
}

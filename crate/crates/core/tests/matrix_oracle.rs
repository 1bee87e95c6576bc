//! The matrix weight total against an independent count of coloured
//! `(i, J, K, A, B)` tuples, and the pipeline against its survivor list.

use sun_identity::exact::Integer;
use sun_identity::matrices::{Classification, MatrixFamily};
use sun_identity::sums;

#[test]
fn weight_total_matches_coloured_tuples() {
    for m in 0..=4u32 {
        for k in 0..=m {
            let fam = MatrixFamily::new(m, k).unwrap();
            let total = fam.weight_total();
            for q in 1..=3u32 {
                assert_eq!(
                    fam.colored_tuple_total(q),
                    total.eval_int(q as i64),
                    "m={m} k={k} q={q}"
                );
            }
        }
    }
}

#[test]
fn numeric_sums_match_polynomials() {
    for m in 1..=6u32 {
        for k in 0..m {
            let poly = sums::eq6_poly(m, k).unwrap();
            for q in 0..=4u32 {
                assert_eq!(sums::eq6_sum(m, k, q).unwrap(), poly.eval_int(q as i64));
            }
        }
    }
    for m in 0..=8u32 {
        for q in 0..=4u32 {
            assert_eq!(sums::eq6_special_sum(m, q), Integer::from(m + 1));
        }
    }
}

#[test]
fn survivors_are_exactly_the_unkilled() {
    for m in 0..=5u32 {
        for k in 0..=m {
            let fam = MatrixFamily::new(m, k).unwrap();
            let mut unkilled: Vec<_> = fam
                .enumerate()
                .filter(|c| matches!(c.classify(), Classification::Survivor(_)))
                .collect();
            unkilled.sort();
            assert_eq!(unkilled, fam.survivors(), "m={m} k={k}");
            let expected = if k == m { m + 1 } else { 2 * m + 1 - k };
            assert_eq!(unkilled.len() as u32, expected);
        }
    }
}

use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use sun_identity::dominoes::{DominoFamily, Orientation};
use sun_identity::exact::{binom, binomial_poly, rational_to_string, Integer, QPoly, Rational, Var, XPoly};
use sun_identity::matrices::{Classification, MatrixFamily};
use sun_identity::sums;

fn xpoly() -> impl Strategy<Value = XPoly> {
    prop::collection::vec((-20i64..20, 1i64..6), 0..5).prop_map(|cs| {
        XPoly::new(
            Var::X,
            cs.into_iter().map(|(n, d)| Rational::new(n.into(), d.into())).collect(),
        )
    })
}

proptest! {
    #[test]
    fn pascal(n in -200i64..200, r in 0i64..60) {
        prop_assert_eq!(binom(n, r), binom(n - 1, r - 1) + binom(n - 1, r));
    }

    #[test]
    fn upper_negation(n in 0i64..80, r in 0i64..40) {
        let sign = if r % 2 == 0 { Integer::one() } else { -Integer::one() };
        prop_assert_eq!(binom(-n, r), sign * binom(n + r - 1, r));
    }

    #[test]
    fn negative_lower_index_is_zero(n in -100i64..100, r in -50i64..0) {
        prop_assert!(binom(n, r).is_zero());
    }

    #[test]
    fn binomial_poly_interpolates(shift in -10i64..10, r in 0i64..9, t in -30i64..30) {
        let p = binomial_poly(&XPoly::x_plus(shift), r).unwrap();
        prop_assert_eq!(p.eval_int(t), Rational::from_integer(binom(t + shift, r)));
    }

    #[test]
    fn rationals_render_in_lowest_terms(n in -1000i64..1000, d in 1i64..1000) {
        let v = Rational::new(n.into(), d.into());
        let s = rational_to_string(&v);
        let (num, den) = s.split_once('/').unwrap();
        let (num, den): (Integer, Integer) = (num.parse().unwrap(), den.parse().unwrap());
        prop_assert!(den.is_positive());
        let reduced = Rational::new(num.clone(), den.clone());
        prop_assert_eq!(&reduced, &v);
        prop_assert_eq!(reduced.numer(), &num);
        prop_assert_eq!(reduced.denom(), &den);
    }

    #[test]
    fn polynomial_ring_laws(a in xpoly(), b in xpoly(), c in xpoly(), t in -10i64..10) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!((&a * &b).eval_int(t), a.eval_int(t) * b.eval_int(t));
        prop_assert!((&a - &a).is_zero());
        if let (Some(da), Some(db)) = (a.degree(), b.degree()) {
            prop_assert_eq!((&a * &b).degree(), Some(da + db));
        }
    }

    #[test]
    fn master_identities_at_integers(x in -40i64..40, y in -6i64..6, z in -6i64..6, m in 0u32..7) {
        prop_assert_eq!(sums::lhs1(x, y, m), sums::rhs1(x, y, m));
        prop_assert_eq!(sums::lhs2(x, y, z, m), sums::rhs2(x, y, z, m));
    }

    #[test]
    fn domino_involution_at_random_points(
        m in 0u32..6, k in 0u32..6, b in 0u32..5, pick in any::<prop::sample::Index>(), wb in any::<bool>()
    ) {
        prop_assume!(k <= m);
        let fam = DominoFamily::sun3(m, k, b).unwrap();
        let all: Vec<_> = fam.enumerate().collect();
        let c = pick.get(&all);
        let orientation = if wb { Orientation::Wb } else { Orientation::Bw };
        if let Some(p) = c.involute(orientation).partner() {
            prop_assert_eq!(p.weight(), -c.weight());
            let back = p.involute(orientation);
            prop_assert_eq!(back.partner(), Some(c));
        }
    }

    #[test]
    fn matrix_pipeline_at_random_points(m in 0u32..6, k in 0u32..6, pick in any::<prop::sample::Index>()) {
        prop_assume!(k <= m);
        let fam = MatrixFamily::new(m, k).unwrap();
        let all: Vec<_> = fam.enumerate().collect();
        let c = pick.get(&all);
        prop_assert!(c.is_legal());
        if let Classification::Killed { step, partner } = c.classify() {
            prop_assert!(partner.is_legal());
            prop_assert_eq!(partner.weight(), -c.weight());
            prop_assert_eq!(partner.classify(), Classification::Killed { step, partner: c.clone() });
        }
    }

    #[test]
    fn q_polynomials_evaluate_consistently(m in 1u32..7, k in 0u32..7, q in 0i64..6) {
        prop_assume!(k < m);
        let p: QPoly = sums::eq6_poly(m, k).unwrap();
        prop_assert_eq!(p.eval_int(q), sums::eq6_sum(m, k, q as u32).unwrap());
    }
}

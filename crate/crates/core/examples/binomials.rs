//! Generalized binomial coefficients and exact polynomials.

use sun_identity::exact::{binom, binomial_poly, XPoly};

fn main() {
    println!("C(n, 3) for n = -4..=6:");
    for n in -4..=6 {
        println!("  C({n:>2}, 3) = {}", binom(n, 3));
    }
    println!("C(5, -1) = {}", binom(5, -1));

    let p = binomial_poly(&XPoly::x_plus(2), 3).unwrap();
    println!("C(x+2, 3) = {p}");
    println!("degree {:?}, leading coefficient {}", p.degree(), p.leading_coefficient());
    for t in [-3, 0, 4] {
        println!("  at x = {t}: {} (direct {})", p.eval_int(t), binom(t + 2, 3));
    }
}

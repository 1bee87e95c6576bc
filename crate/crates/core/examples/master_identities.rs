//! Both master identities as polynomials in x, checked against numeric sums.

use sun_identity::sums;

fn main() {
    for m in 0..=3 {
        let (lhs, rhs) = sums::poly_sides1(2, m);
        println!("m={m} y=2: {lhs}");
        println!("          equal to the right side: {}", lhs == rhs);
    }
    let (lhs, rhs) = sums::poly_sides2(1, 3, 3);
    println!("\ngeneralized, m=3 y=1 z=3: {lhs}  (equal: {})", lhs == rhs);
    for x in [-2, 0, 5] {
        println!("  x={x}: lhs2 {} rhs2 {}", sums::lhs2(x, 1, 3, 3), sums::rhs2(x, 1, 3, 3));
    }
    for k in 0..=3 {
        println!("reduction chain m=3 k={k} b=2 q=2: {:?}", sums::reduction_chain2(3, k, 2, 2));
    }
}

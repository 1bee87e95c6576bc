//! Fixed-point census of the omino involution against q^(m-k) (1+q)^k.

use sun_identity::ominoes::OminoFamily;
use sun_identity::sums;

fn main() {
    println!(" q  m  k  b  configs  signed  fixed  closed");
    for q in 1..=3 {
        for m in 0..=2 {
            for k in 0..=m {
                let b = 1;
                let fam = OminoFamily::new(m, k, b, q).unwrap();
                let signed: i32 = fam.enumerate().map(|c| c.weight()).sum();
                println!(
                    "{q:>2} {m:>2} {k:>2} {b:>2} {:>8} {signed:>7} {:>6} {:>7}",
                    fam.expected_count(),
                    fam.fixed_points().len(),
                    sums::eq5_closed(m, k, q)
                );
            }
        }
    }
    let fam = OminoFamily::new(2, 1, 0, 2).unwrap();
    println!("\nfixed points for q=2 m=2 k=1 b=0:");
    for c in fam.fixed_points() {
        println!("  {c}");
    }
}

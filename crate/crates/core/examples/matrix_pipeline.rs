//! The four-step cancellation on marked matrices.

use sun_identity::matrices::{Classification, MatrixConfig, MatrixFamily};

fn main() {
    let c: MatrixConfig = "0u10110000 / 111011u000".parse().unwrap();
    println!("{c}");
    println!("  K={:?} J={:?} A={:?} B={:?} weight {}", c.k_set(), c.j_set(), c.a_set(), c.b_set(), c.weight());
    if let Classification::Killed { step, partner } = c.classify() {
        println!("  killed at step {step} by {partner} ({})", partner.weight());
    }

    for (m, k) in [(3, 3), (3, 1)] {
        let fam = MatrixFamily::new(m, k).unwrap();
        let mut killed = [0usize; 4];
        for c in fam.enumerate() {
            if let Classification::Killed { step, .. } = c.classify() {
                killed[step as usize - 1] += 1;
            }
        }
        println!("\nm={m} k={k}: weight total {}", fam.weight_total());
        println!("  killed per step {killed:?}");
        for s in fam.survivors() {
            println!("  survivor {s}  {}", s.weight());
        }
    }
}

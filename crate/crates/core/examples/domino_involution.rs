//! Walks the domino involution on a small family and lists its fixed points.

use sun_identity::dominoes::{DominoFamily, Orientation};
use sun_identity::InvolutionOutcome;

fn main() {
    let fam = DominoFamily::sun3(4, 1, 2).unwrap();
    let first = fam.parse("W B B W W W [..] W | B").unwrap();
    println!("{first}  weight {:+}", first.weight());
    if let InvolutionOutcome::Moved { partner, site, kind } = first.involute(Orientation::Bw) {
        println!("{partner}  weight {:+}  ({kind:?} at {site})", partner.weight());
    }

    let small = DominoFamily::sun3(2, 1, 1).unwrap();
    let total: i32 = small.enumerate().map(|c| c.weight()).sum();
    println!("\nm=2 k=1 b=1: {} configurations, signed total {total}", small.expected_count());
    for orientation in [Orientation::Bw, Orientation::Wb] {
        println!("fixed points ({orientation}):");
        for c in small.fixed_points(orientation) {
            println!("  {c}");
        }
    }

    let sun4 = DominoFamily::sun4(3, 2).unwrap();
    println!(
        "\nfree colouring m=3 k=2: {} fixed points, closed form {}",
        sun4.fixed_points(Orientation::Bw).len(),
        sun4.fixed_count_closed()
    );
}

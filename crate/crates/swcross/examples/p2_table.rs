//! The invariant table of the projective plane: classes are odd integers,
//! SW(+) = 1 exactly for c >= 3, SW(-) = -1 exactly for c <= -3, and the
//! jump SW(+) - SW(-) is 1 whenever the index is non-negative.
//!
//! ```bash
//! cargo run -p swcross --example p2_table
//! ```

use swcross::exterior::MultiIndex;
use swcross::kahler::{sw_values, RationalSurface};
use swcross::manifold::make_char_class;

fn main() {
    let surface = RationalSurface::projective_plane();
    let manifold = surface.manifold();

    println!("c    w_c  SW(+)  SW(-)");
    for c in (-9..=9i64).filter(|c| c.rem_euclid(2) == 1) {
        let cc = make_char_class(&manifold, &[c]).unwrap();
        let sw = sw_values(&surface, &cc).unwrap();
        println!(
            "{c:<4} {:<4} {:<6} {}",
            cc.index(),
            sw.plus_value(MultiIndex::EMPTY),
            sw.minus_value(MultiIndex::EMPTY)
        );
    }
}

//! Divisor tuples (d; m_1, ..., m_r) on a blown-up plane solving
//! w = d(d+3) - sum m_i(m_i+1): each one carries a class c = 2m - K with
//! index exactly w and non-trivial invariants, and there are infinitely
//! many for every even w >= 0.
//!
//! ```bash
//! cargo run -p swcross --example blowup_enumeration
//! ```

use swcross::kahler::enumerate_blowup_classes;

fn main() {
    for w in [0i64, 2] {
        println!("r = 3, prescribed index w = {w}:");
        let result = enumerate_blowup_classes(3, w, 12, 30).unwrap();
        for solution in &result.solutions {
            println!(
                "  ({}; {:?})  ->  c = {:?}, w_c = {}",
                solution.divisor.degree,
                solution.divisor.multiplicities,
                solution.class,
                solution.index
            );
        }
    }

    // the solution count keeps growing with the degree bound
    let mut previous = 0usize;
    print!("cumulative counts for w = 0, d <= 0,5,10,...,30:");
    for bound in (0..=30i64).step_by(5) {
        let count = enumerate_blowup_classes(3, 0, usize::MAX, bound)
            .unwrap()
            .solutions
            .len();
        assert!(count > previous);
        previous = count;
        print!(" {count}");
    }
    println!();
}

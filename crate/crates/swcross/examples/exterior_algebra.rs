//! Exact exterior-algebra arithmetic: wedge products, divided powers,
//! truncated exponentials, and the top-degree pairing.
//!
//! ```bash
//! cargo run -p swcross --example exterior_algebra
//! ```

use swcross::exterior::{
    divided_power, pair_top, truncated_exp, wedge, ExtElement, MultiIndex, Orientation, Sign,
};

fn main() {
    let b1 = 4;
    let l1 = ExtElement::generator(b1, 1);
    let l2 = ExtElement::generator(b1, 2);

    println!("l1 ^ l2          = {}", wedge(&l1, &l2).unwrap());
    println!("l2 ^ l1          = {}", wedge(&l2, &l1).unwrap());

    let odd = &l1 + &l2;
    println!("(l1 + l2)^2      = {}", wedge(&odd, &odd).unwrap());

    // a degree-2 element with two disjoint blocks
    let u = ExtElement::from_integer_terms(
        b1,
        [
            (MultiIndex::from_indices(&[1, 2]).unwrap(), 1),
            (MultiIndex::from_indices(&[3, 4]).unwrap(), 1),
        ],
    );
    println!("u                = {u}");
    println!("u^2              = {}", wedge(&u, &u).unwrap());
    // the divided power u^2/2! stays integral
    println!("u^2 / 2!         = {}", divided_power(&u, 2).unwrap());

    let exp_plus = truncated_exp(&u, Sign::Plus).unwrap();
    let exp_minus = truncated_exp(&u, Sign::Minus).unwrap();
    println!("exp(u)           = {exp_plus}");
    println!("exp(-u)          = {exp_minus}");
    println!(
        "exp(u) ^ exp(-u) = {}",
        wedge(&exp_plus, &exp_minus).unwrap()
    );

    println!(
        "<exp(u), l_O>    = {}",
        pair_top(&exp_plus, Orientation::Positive)
    );
    println!(
        "with l_O flipped = {}",
        pair_top(&exp_plus, Orientation::Negative)
    );
}

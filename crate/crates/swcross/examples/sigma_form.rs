//! The wall-crossing form sigma evaluated by its two equivalent formulas:
//! the pairing against exp(-u_c), and the closed divided-power expression.
//!
//! ```bash
//! cargo run -p swcross --example sigma_form
//! ```

use swcross::crossing::{build_uc, SigmaForm};
use swcross::exterior::{ExtElement, MultiIndex, Orientation};
use swcross::manifold::{make_char_class, FourManifold, FourManifoldData, QuadTensor, TripleTensor};

fn main() {
    let m = FourManifold::new(FourManifoldData {
        name: "T2xS2".into(),
        b1: 2,
        b_plus: 1,
        b_minus: 1,
        intersection_form: vec![vec![0, 1], vec![1, 0]],
        triple: TripleTensor::from_entries(2, 2, &[(1, 2, 1, 1)]).unwrap(),
        quad: QuadTensor::zero(),
        ref_pos: vec![1, 1],
    })
    .unwrap();

    let cc = make_char_class(&m, &[2, 2]).unwrap();
    let uc = build_uc(&m, &cc).unwrap();
    println!("c = (2,2): w_c = {}, u_c = {}", cc.index(), uc.element());

    let sigma = SigmaForm::new(&m, &cc, Orientation::Positive).unwrap();
    println!("admissible degrees: {:?}", sigma.admissible_degrees());

    println!("monomial  exp-route  divided-power-route");
    for degree in 0..=m.b1() {
        for monomial in MultiIndex::all_of_degree(m.b1(), degree) {
            let lambda = ExtElement::from_integer_terms(m.b1(), [(monomial, 1)]);
            println!(
                "{:<8}  {:>9}  {:>19}",
                monomial.to_string(),
                sigma.eval(&lambda).unwrap().to_string(),
                sigma.eval_via_divided_power(&lambda).unwrap().to_string(),
            );
        }
    }

    // the form is odd under an orientation flip
    let reversed = SigmaForm::new(&m, &cc, Orientation::Negative).unwrap();
    let one = ExtElement::one(m.b1());
    println!(
        "sigma(1) with the two orientations: {} and {}",
        sigma.eval(&one).unwrap(),
        reversed.eval(&one).unwrap()
    );
}

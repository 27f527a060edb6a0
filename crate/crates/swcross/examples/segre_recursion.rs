//! The pushforward recursion p_{k} = -sum c_i p_{k-i} for an index bundle,
//! its series-inverse characterization, and the Dirac-family closed form.
//!
//! ```bash
//! cargo run -p swcross --example segre_recursion
//! ```

use swcross::crossing::UcClass;
use swcross::exterior::{ExtElement, MultiIndex};
use swcross::manifold::{
    make_char_class, FourManifold, FourManifoldData, QuadTensor, TripleTensor,
};
use swcross::segre::{
    chern_character_expansion, default_k_max, dirac_chern_classes, segre_polynomials, ChernInput,
};

fn mi(indices: &[u32]) -> MultiIndex {
    MultiIndex::from_indices(indices).unwrap()
}

fn main() {
    // generic Chern classes c1 (degree 2) and c2 (degree 4)
    let b1 = 4;
    let c1 = ExtElement::from_integer_terms(b1, [(mi(&[1, 2]), 1), (mi(&[3, 4]), 2)]);
    let c2 = ExtElement::from_integer_terms(b1, [(mi(&[1, 2, 3, 4]), 5)]);
    let input = ChernInput::new(b1, 1, vec![c1, c2]).unwrap();

    let sequence = segre_polynomials(&input, default_k_max(&input)).unwrap();
    for (k, p) in sequence.iter() {
        println!("p_{k} = {p}");
    }

    let product = input.total().wedge(&sequence.total()).unwrap();
    println!("(1 + c1 + c2) ^ (p_0 + p_1 + p_2) = {product}");

    // the Dirac family: c_k = u^k/k! closes the recursion as
    // p_{delta-1+k} = (-1)^k u^k/k!
    let mut pairings = vec![vec![0i64; b1]; b1];
    pairings[0][1] = 2;
    pairings[1][0] = -2;
    pairings[2][3] = 2;
    pairings[3][2] = -2;
    let uc = UcClass::from_even_pairings(b1, &pairings, 1).unwrap();
    println!("u_c = {}", uc.element());

    let dirac = dirac_chern_classes(&uc, b1 / 2).unwrap();
    let sequence = segre_polynomials(&dirac, default_k_max(&dirac)).unwrap();
    for (k, p) in sequence.iter() {
        println!("dirac p_{k} = {p}");
    }

    // the graded Chern character pieces of a Dirac index bundle; the
    // degree-4 piece vanishes identically when b+ = 1
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
    let character = chern_character_expansion(&m, &cc).unwrap();
    println!(
        "chern character: rank = {}, degree-2 = {}, degree-4 = {}",
        character.rank, character.degree_two, character.degree_four
    );
}

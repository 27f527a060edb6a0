//! Building manifold data, validating it, and computing the index data of
//! characteristic classes.
//!
//! ```bash
//! cargo run -p swcross --example manifold_indices
//! ```

use swcross::manifold::{
    cij_tensor, make_char_class, FourManifold, FourManifoldData, QuadTensor, TripleTensor,
};

fn main() {
    // S2 x T2: hyperbolic intersection form, b1 = 2, and one nonzero
    // triple product <l^1 u l^2 u h_1, [X]> = 1.
    let data = FourManifoldData {
        name: "T2xS2".into(),
        b1: 2,
        b_plus: 1,
        b_minus: 1,
        intersection_form: vec![vec![0, 1], vec![1, 0]],
        triple: TripleTensor::from_entries(2, 2, &[(1, 2, 1, 1)]).unwrap(),
        quad: QuadTensor::zero(),
        ref_pos: vec![1, 1],
    };
    println!("validation: {}", data.validate());

    let m = FourManifold::new(data).unwrap();
    println!(
        "signature = {}, euler characteristic = {}",
        m.signature(),
        m.euler_characteristic()
    );

    for c in [[0, 0], [2, 0], [2, 2], [4, 2]] {
        let cc = make_char_class(&m, &c).unwrap();
        let cij = cij_tensor(&m, &cc).unwrap();
        println!(
            "c = ({},{}): w_c = {}, delta_c = {}, c_12 = {}",
            c[0],
            c[1],
            cc.index(),
            cc.dirac_index(),
            cij[0][1]
        );
    }

    // an even class fails the characteristic test on the plane
    let plane = FourManifold::new(FourManifoldData {
        name: "P2".into(),
        b1: 0,
        b_plus: 1,
        b_minus: 0,
        intersection_form: vec![vec![1]],
        triple: TripleTensor::zero(0, 1),
        quad: QuadTensor::zero(),
        ref_pos: vec![1],
    })
    .unwrap();
    match make_char_class(&plane, &[2]) {
        Err(e) => println!("plane, c = 2: {e}"),
        Ok(_) => unreachable!(),
    }
}

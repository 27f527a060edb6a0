//! Walking a twist class across the wall of a class: chamber labels flip,
//! goodness fails exactly on the wall, and the zero-twist slice of H0 is
//! certified to stay inside a single chamber.
//!
//! ```bash
//! cargo run -p swcross --example chamber_walk
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;
use swcross::chamber::{
    c_good_at, c_good_sufficient, classify, component_of, zero_twist_chamber_constancy,
    ChamberQuery, PeriodDirection,
};
use swcross::manifold::{make_char_class, FourManifold, FourManifoldData, QuadTensor, TripleTensor};

fn rat(n: i64) -> BigRational {
    BigRational::from(BigInt::from(n))
}

fn main() {
    let m = FourManifold::new(FourManifoldData {
        name: "lorentz-rank-2".into(),
        b1: 0,
        b_plus: 1,
        b_minus: 1,
        intersection_form: vec![vec![1, 0], vec![0, -1]],
        triple: TripleTensor::zero(0, 2),
        quad: QuadTensor::zero(),
        ref_pos: vec![1, 0],
    })
    .unwrap();
    let cc = make_char_class(&m, &[5, 1]).unwrap();

    let omega = PeriodDirection::from_integers(&[2, 1]);
    println!(
        "omega = (2,1) lies in component {}",
        component_of(&m, &omega).unwrap()
    );

    // slide the twist through the wall Q(c - b, omega) = 0
    println!("twist       chamber      good at omega");
    for b0 in [0i64, 3, 4, 5, 6, 9] {
        let twist = vec![rat(b0), rat(1)];
        let query = ChamberQuery {
            omega: omega.clone(),
            twist: twist.clone(),
            class: cc.clone(),
        };
        println!(
            "b = ({b0},1)   {:<11}  {}",
            classify(&m, &query).unwrap().to_string(),
            c_good_at(&m, &cc, &twist, &omega).unwrap()
        );
    }

    // metric-independent goodness
    println!(
        "(c - 0) is good for every period: {}",
        c_good_sufficient(&m, &cc, &[rat(0), rat(0)])
    );

    // the zero-twist slice of H0 never meets the wall of c when c^2 >= 0
    let certificate = zero_twist_chamber_constancy(&m, &cc, 300, 0).unwrap();
    println!(
        "zero-twist certificate: sign {} over {} sampled directions",
        certificate.sign, certificate.samples
    );
}

//! Walls, chambers and goodness predicates in the positive cone.
//!
//! For `b₊ = 1` the positive cone `{ω : Q(ω,ω) > 0}` has two components;
//! the reference class of the manifold singles out one of them, `H₀`.
//! A class `c` cuts the wall `{(ω, b) : Q(c - b, ω) = 0}` out of
//! (period, twist) space, leaving exactly four chambers `C_{±H₀,±}`.
//! Everything here is decided by exact rational sign computations and
//! depends only on the ray of the period class.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::fmt;

use crate::error::Error;
use crate::exterior::Sign;
use crate::manifold::{to_rational_vec, CharClass, FourManifold};

/// A rational period class, interpreted up to positive rescaling. Its ray
/// must lie in the positive cone, which the operations check exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodDirection {
    omega: Vec<BigRational>,
}

impl PeriodDirection {
    pub fn new(omega: Vec<BigRational>) -> PeriodDirection {
        PeriodDirection { omega }
    }

    pub fn from_integers(omega: &[i64]) -> PeriodDirection {
        PeriodDirection {
            omega: to_rational_vec(omega),
        }
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.omega
    }

    pub fn scaled(&self, factor: &BigRational) -> PeriodDirection {
        PeriodDirection {
            omega: self.omega.iter().map(|x| x * factor).collect(),
        }
    }

    pub fn negated(&self) -> PeriodDirection {
        PeriodDirection {
            omega: self.omega.iter().map(|x| -x).collect(),
        }
    }
}

/// One of the two components of the positive cone: the one containing the
/// reference class, or its negative.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConeComponent {
    H0,
    NegH0,
}

impl ConeComponent {
    pub fn flip(self) -> ConeComponent {
        match self {
            ConeComponent::H0 => ConeComponent::NegH0,
            ConeComponent::NegH0 => ConeComponent::H0,
        }
    }
}

impl fmt::Display for ConeComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConeComponent::H0 => write!(f, "H0"),
            ConeComponent::NegH0 => write!(f, "-H0"),
        }
    }
}

/// Where a (period, twist) pair sits relative to the wall of a class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChamberClass {
    Wall,
    Chamber { component: ConeComponent, side: Sign },
}

impl fmt::Display for ChamberClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChamberClass::Wall => write!(f, "wall"),
            ChamberClass::Chamber { component, side } => {
                write!(f, "C_{{{component},{side}}}")
            }
        }
    }
}

/// A point of (period, twist) space to classify against the wall of `class`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChamberQuery {
    pub omega: PeriodDirection,
    pub twist: Vec<BigRational>,
    pub class: CharClass,
}

fn require_positive_cone(m: &FourManifold, omega: &PeriodDirection) -> Result<(), Error> {
    if omega.coords().len() != m.b2() {
        return Err(Error::VectorLengthMismatch {
            expected: m.b2(),
            found: omega.coords().len(),
        });
    }
    let square = m.pairing_rational(omega.coords(), omega.coords());
    if square.is_positive() {
        Ok(())
    } else {
        Err(Error::OutsidePositiveCone {
            square: square.to_string(),
        })
    }
}

/// Decides which component of the positive cone the period ray lies in:
/// `H₀` when it pairs positively with the reference class. For `b₊ = 1`
/// two classes of positive square never pair to zero, so the sign decides.
pub fn component_of(m: &FourManifold, omega: &PeriodDirection) -> Result<ConeComponent, Error> {
    require_positive_cone(m, omega)?;
    let reference = to_rational_vec(m.ref_pos());
    let pairing = m.pairing_rational(omega.coords(), &reference);
    debug_assert!(
        !pairing.is_zero(),
        "positive-square classes cannot be orthogonal when b+ = 1"
    );
    if pairing.is_positive() {
        Ok(ConeComponent::H0)
    } else {
        Ok(ConeComponent::NegH0)
    }
}

/// The quantity `Q(c - b, ω)` whose sign cuts out the wall and chambers.
fn wall_pairing(
    m: &FourManifold,
    cc: &CharClass,
    twist: &[BigRational],
    omega: &PeriodDirection,
) -> Result<BigRational, Error> {
    let b2 = m.b2();
    if twist.len() != b2 {
        return Err(Error::VectorLengthMismatch {
            expected: b2,
            found: twist.len(),
        });
    }
    let difference: Vec<BigRational> = cc
        .coords()
        .iter()
        .zip(twist)
        .map(|(&ci, bi)| BigRational::from(BigInt::from(ci)) - bi)
        .collect();
    Ok(m.pairing_rational(&difference, omega.coords()))
}

/// Classifies a (period, twist) pair: on the wall when `Q(c - b, ω) = 0`,
/// otherwise in the chamber `C_{component,±}` whose sign label makes
/// `±Q(c - b, ω) < 0` hold.
pub fn classify(m: &FourManifold, query: &ChamberQuery) -> Result<ChamberClass, Error> {
    let component = component_of(m, &query.omega)?;
    let pairing = wall_pairing(m, &query.class, &query.twist, &query.omega)?;
    Ok(if pairing.is_zero() {
        ChamberClass::Wall
    } else if pairing.is_negative() {
        ChamberClass::Chamber {
            component,
            side: Sign::Plus,
        }
    } else {
        ChamberClass::Chamber {
            component,
            side: Sign::Minus,
        }
    })
}

/// The metric-independent sufficient condition for goodness: `c - b` is
/// nonzero and has non-negative square, so its harmonic representative can
/// never become anti-self-dual.
pub fn c_good_sufficient(m: &FourManifold, cc: &CharClass, twist: &[BigRational]) -> bool {
    if twist.len() != m.b2() {
        return false;
    }
    let difference: Vec<BigRational> = cc
        .coords()
        .iter()
        .zip(twist)
        .map(|(&ci, bi)| BigRational::from(BigInt::from(ci)) - bi)
        .collect();
    if difference.iter().all(|x| x.is_zero()) {
        return false;
    }
    !m.pairing_rational(&difference, &difference).is_negative()
}

/// Goodness at a specific period: for `b₊ = 1` the self-dual part of the
/// harmonic representative of `c - b` is its projection onto the period
/// line, so the pair is good exactly when `Q(c - b, ω) ≠ 0`.
pub fn c_good_at(
    m: &FourManifold,
    cc: &CharClass,
    twist: &[BigRational],
    omega: &PeriodDirection,
) -> Result<bool, Error> {
    require_positive_cone(m, omega)?;
    Ok(!wall_pairing(m, cc, twist, omega)?.is_zero())
}

/// Certificate produced by [`zero_twist_chamber_constancy`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ZeroTwistCertificate {
    /// The constant sign of `Q(c, ω)` over the sampled directions in `H₀`.
    pub sign: Sign,
    pub samples: usize,
}

/// Samples random rational period directions in `H₀` and certifies that the
/// sign of `Q(c, ω)` never changes, i.e. that the zero-twist slice of `H₀`
/// stays inside a single chamber. Requires `c ≠ 0` and `c² ≥ 0`; under
/// those hypotheses a sign change is impossible, so a failure indicates
/// corrupted input or a bug.
pub fn zero_twist_chamber_constancy(
    m: &FourManifold,
    cc: &CharClass,
    samples: usize,
    seed: u64,
) -> Result<ZeroTwistCertificate, Error> {
    if cc.coords().iter().all(|&x| x == 0) {
        return Err(Error::ZeroTwistHypothesis("the class is zero".into()));
    }
    let c_sq = m.pairing(cc.coords(), cc.coords());
    if c_sq < BigInt::zero() {
        return Err(Error::ZeroTwistHypothesis(format!(
            "the class has negative square {c_sq}"
        )));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let class_rational = to_rational_vec(cc.coords());
    let mut constant: Option<Sign> = None;
    for _ in 0..samples {
        let omega = sample_positive_direction(m, &mut rng);
        let omega = match component_of(m, &omega)? {
            ConeComponent::H0 => omega,
            ConeComponent::NegH0 => omega.negated(),
        };
        let pairing = m.pairing_rational(&class_rational, omega.coords());
        let sign = if pairing.is_positive() {
            Sign::Plus
        } else if pairing.is_negative() {
            Sign::Minus
        } else {
            return Err(Error::ZeroTwistInconsistent);
        };
        match constant {
            None => constant = Some(sign),
            Some(s) if s != sign => return Err(Error::ZeroTwistInconsistent),
            Some(_) => {}
        }
    }
    Ok(ZeroTwistCertificate {
        sign: constant.expect("at least one sample"),
        samples,
    })
}

/// Draws a random rational class of positive square: a random small jitter,
/// with the reference class mixed in ever more strongly until the square
/// goes positive (guaranteed for a large enough multiple).
pub(crate) fn sample_positive_direction(
    m: &FourManifold,
    rng: &mut ChaCha8Rng,
) -> PeriodDirection {
    let b2 = m.b2();
    loop {
        let jitter: Vec<i64> = (0..b2).map(|_| rng.gen_range(-9..=9)).collect();
        for scale in 0..=64i64 {
            let candidate: Vec<i64> = m
                .ref_pos()
                .iter()
                .zip(&jitter)
                .map(|(&r, &j)| r * scale + j)
                .collect();
            if candidate.iter().all(|&x| x == 0) {
                continue;
            }
            if m.pairing(&candidate, &candidate) > BigInt::zero() {
                let denominator = rng.gen_range(1..=7i64);
                return PeriodDirection::new(
                    candidate
                        .iter()
                        .map(|&x| BigRational::new(BigInt::from(x), BigInt::from(denominator)))
                        .collect(),
                );
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifold::{make_char_class, FourManifoldData, QuadTensor, TripleTensor};

    fn projective_plane() -> FourManifold {
        FourManifold::new(FourManifoldData {
            name: "P2".into(),
            b1: 0,
            b_plus: 1,
            b_minus: 0,
            intersection_form: vec![vec![1]],
            triple: TripleTensor::zero(0, 1),
            quad: QuadTensor::zero(),
            ref_pos: vec![1],
        })
        .unwrap()
    }

    fn lorentz_plane() -> FourManifold {
        FourManifold::new(FourManifoldData {
            name: "lorentz".into(),
            b1: 0,
            b_plus: 1,
            b_minus: 1,
            intersection_form: vec![vec![1, 0], vec![0, -1]],
            triple: TripleTensor::zero(0, 2),
            quad: QuadTensor::zero(),
            ref_pos: vec![1, 0],
        })
        .unwrap()
    }

    fn rat_vec(xs: &[i64]) -> Vec<BigRational> {
        to_rational_vec(xs)
    }

    #[test]
    fn component_follows_the_reference_ray() {
        let m = projective_plane();
        assert_eq!(
            component_of(&m, &PeriodDirection::from_integers(&[2])).unwrap(),
            ConeComponent::H0
        );
        assert_eq!(
            component_of(&m, &PeriodDirection::from_integers(&[-1])).unwrap(),
            ConeComponent::NegH0
        );
    }

    #[test]
    fn cone_error_for_nonpositive_square() {
        let m = lorentz_plane();
        let err = component_of(&m, &PeriodDirection::from_integers(&[1, 2])).unwrap_err();
        assert_eq!(
            err,
            Error::OutsidePositiveCone {
                square: "-3".into()
            }
        );
    }

    #[test]
    fn classification_on_the_projective_plane() {
        let m = projective_plane();
        let cc = make_char_class(&m, &[5]).unwrap();
        let omega = PeriodDirection::from_integers(&[1]);

        let classify_with = |twist: &[i64]| {
            classify(
                &m,
                &ChamberQuery {
                    omega: omega.clone(),
                    twist: rat_vec(twist),
                    class: cc.clone(),
                },
            )
            .unwrap()
        };

        assert_eq!(
            classify_with(&[7]),
            ChamberClass::Chamber {
                component: ConeComponent::H0,
                side: Sign::Plus
            }
        );
        assert_eq!(classify_with(&[5]), ChamberClass::Wall);
        assert_eq!(
            classify_with(&[0]),
            ChamberClass::Chamber {
                component: ConeComponent::H0,
                side: Sign::Minus
            }
        );
    }

    #[test]
    fn classification_is_scale_invariant_and_flips_with_omega() {
        let m = lorentz_plane();
        let cc = make_char_class(&m, &[3, 1]).unwrap();
        let query = ChamberQuery {
            omega: PeriodDirection::from_integers(&[3, 1]),
            twist: rat_vec(&[0, 0]),
            class: cc,
        };
        let class = classify(&m, &query).unwrap();

        let scaled = ChamberQuery {
            omega: query.omega.scaled(&BigRational::new(7.into(), 3.into())),
            ..query.clone()
        };
        assert_eq!(classify(&m, &scaled).unwrap(), class);

        let flipped = ChamberQuery {
            omega: query.omega.negated(),
            ..query.clone()
        };
        match (class, classify(&m, &flipped).unwrap()) {
            (
                ChamberClass::Chamber { component, side },
                ChamberClass::Chamber {
                    component: fc,
                    side: fs,
                },
            ) => {
                assert_eq!(fc, component.flip());
                assert_eq!(fs, side.flip());
            }
            other => panic!("expected chambers, got {other:?}"),
        }
    }

    #[test]
    fn goodness_predicates() {
        let m = projective_plane();
        let cc = make_char_class(&m, &[3]).unwrap();
        assert!(c_good_sufficient(&m, &cc, &rat_vec(&[0])));
        assert!(!c_good_sufficient(&m, &cc, &rat_vec(&[3])));

        let m2 = lorentz_plane();
        let cc2 = make_char_class(&m2, &[1, 1]).unwrap();
        // (c - b)² = 0 is still sufficient
        assert!(c_good_sufficient(&m2, &cc2, &rat_vec(&[0, 0])));
    }

    #[test]
    fn goodness_at_a_period_detects_the_wall() {
        let m = projective_plane();
        let cc = make_char_class(&m, &[5]).unwrap();
        let omega = PeriodDirection::from_integers(&[1]);
        assert!(!c_good_at(&m, &cc, &rat_vec(&[5]), &omega).unwrap());
        assert!(c_good_at(&m, &cc, &rat_vec(&[0]), &omega).unwrap());

        // an anti-self-dual difference: c - b = (0,1) against ω = (1,0)
        let m2 = lorentz_plane();
        let cc2 = make_char_class(&m2, &[1, 1]).unwrap();
        let omega2 = PeriodDirection::from_integers(&[1, 0]);
        assert!(!c_good_at(&m2, &cc2, &rat_vec(&[1, 0]), &omega2).unwrap());
    }

    #[test]
    fn zero_twist_certificate_on_the_projective_plane() {
        let m = projective_plane();
        let cc = make_char_class(&m, &[3]).unwrap();
        let cert = zero_twist_chamber_constancy(&m, &cc, 100, 0).unwrap();
        assert_eq!(cert.sign, Sign::Plus);
        assert_eq!(cert.samples, 100);
    }

    #[test]
    fn zero_twist_certificate_on_a_light_cone_class() {
        let m = lorentz_plane();
        let cc = make_char_class(&m, &[1, 1]).unwrap();
        let cert = zero_twist_chamber_constancy(&m, &cc, 200, 7).unwrap();
        assert_eq!(cert.sign, Sign::Plus);
    }

    #[test]
    fn zero_twist_hypothesis_failures() {
        // negative square: c = (1,3) has c² = -8 on diag(1,-1)
        let m = lorentz_plane();
        let cc = make_char_class(&m, &[1, 3]).unwrap();
        assert!(matches!(
            zero_twist_chamber_constancy(&m, &cc, 10, 0),
            Err(Error::ZeroTwistHypothesis(_))
        ));

        // the zero class is characteristic for an even form
        let hyperbolic = FourManifold::new(FourManifoldData {
            name: "hyperbolic".into(),
            b1: 0,
            b_plus: 1,
            b_minus: 1,
            intersection_form: vec![vec![0, 1], vec![1, 0]],
            triple: TripleTensor::zero(0, 2),
            quad: QuadTensor::zero(),
            ref_pos: vec![1, 1],
        })
        .unwrap();
        let cc = make_char_class(&hyperbolic, &[0, 0]).unwrap();
        assert!(matches!(
            zero_twist_chamber_constancy(&hyperbolic, &cc, 10, 0),
            Err(Error::ZeroTwistHypothesis(_))
        ));
    }

    #[test]
    fn sufficient_goodness_implies_goodness_at_every_period() {
        let m = lorentz_plane();
        let cc = make_char_class(&m, &[3, 1]).unwrap();
        let twist = rat_vec(&[0, 0]);
        assert!(c_good_sufficient(&m, &cc, &twist));
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..1000 {
            let omega = sample_positive_direction(&m, &mut rng);
            assert!(c_good_at(&m, &cc, &twist, &omega).unwrap());
        }
    }

    #[test]
    fn chamber_rendering_is_stable() {
        assert_eq!(ChamberClass::Wall.to_string(), "wall");
        assert_eq!(
            ChamberClass::Chamber {
                component: ConeComponent::NegH0,
                side: Sign::Minus
            }
            .to_string(),
            "C_{-H0,-}"
        );
    }
}

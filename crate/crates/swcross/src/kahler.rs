//! Invariants of rational surfaces through linear systems.
//!
//! On a Kähler surface with `p_g = q = 0` the monopole moduli spaces are
//! projective linear systems, so the invariants of a class `c` with
//! non-negative index reduce to one non-emptiness question for the divisor
//! class `m = (c + K)/2`:
//!
//! ```text
//! SW(+) = 1, SW(-) =  0   when |m| is nonempty,
//! SW(+) = 0, SW(-) = -1   when |m| is empty,
//! ```
//!
//! relative to the component `H₀` containing the Kähler ray. On the plane
//! non-emptiness is exact (`deg ≥ 0`); on blow-ups of the plane the module
//! uses the naive parameter count `d(d+3)/2 - Σ mᵢ(mᵢ+1)/2 ≥ 0` with
//! `d, mᵢ ≥ 0`, flagged as such in every output. The blow-up enumeration
//! lists divisor tuples realizing any prescribed even index `w ≥ 0`, and
//! there are infinitely many for every such `w`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use crate::chamber::ConeComponent;
use crate::crossing::SwForm;
use crate::error::Error;
use crate::exterior::MultiIndex;
use crate::manifold::{
    make_char_class, CharClass, FourManifold, FourManifoldData, QuadTensor, TripleTensor,
};

/// Which rational surface is in play.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SurfaceKind {
    /// The projective plane; `H²` has basis `h` with `h² = 1`.
    ProjectivePlane,
    /// The plane blown up in `points` generic points; `H²` has basis
    /// `L, E₁, …, E_r` with `Q = diag(1, -1, …, -1)`.
    BlownUpPlane { points: usize },
}

/// A rational surface with `b₁ = 0`, `b₊ = 1`, together with its canonical
/// class and intersection form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalSurface {
    kind: SurfaceKind,
    canonical: Vec<i64>,
}

impl RationalSurface {
    pub fn projective_plane() -> RationalSurface {
        RationalSurface {
            kind: SurfaceKind::ProjectivePlane,
            canonical: vec![-3],
        }
    }

    /// The plane blown up in `points ≥ 1` points; `K = -3L + Σ Eᵢ`.
    pub fn blown_up_plane(points: usize) -> RationalSurface {
        assert!(points >= 1, "blow up at least one point");
        let mut canonical = vec![-3];
        canonical.extend(std::iter::repeat(1).take(points));
        RationalSurface {
            kind: SurfaceKind::BlownUpPlane { points },
            canonical,
        }
    }

    pub fn kind(&self) -> SurfaceKind {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.canonical.len()
    }

    pub fn canonical_class(&self) -> &[i64] {
        &self.canonical
    }

    pub fn intersection_form(&self) -> Vec<Vec<i64>> {
        let n = self.rank();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i != j {
                            0
                        } else if i == 0 {
                            1
                        } else {
                            -1
                        }
                    })
                    .collect()
            })
            .collect()
    }

    /// The canonical topological data: `b₁ = 0`, `b₊ = 1`, and the Kähler
    /// ray `L` (or `h`) as the reference class.
    pub fn manifold(&self) -> FourManifold {
        let n = self.rank();
        let mut ref_pos = vec![0i64; n];
        ref_pos[0] = 1;
        FourManifold::new(FourManifoldData {
            name: match self.kind {
                SurfaceKind::ProjectivePlane => "P2".to_string(),
                SurfaceKind::BlownUpPlane { points } => format!("BlowupP2({points})"),
            },
            b1: 0,
            b_plus: 1,
            b_minus: n - 1,
            intersection_form: self.intersection_form(),
            triple: TripleTensor::zero(0, n),
            quad: QuadTensor::zero(),
            ref_pos,
        })
        .expect("canonical surface data is valid")
    }

    fn pairing(&self, x: &[i64], y: &[i64]) -> i64 {
        let mut acc = 0i64;
        acc += x[0] * y[0];
        for i in 1..self.rank() {
            acc -= x[i] * y[i];
        }
        acc
    }
}

/// A divisor class `dL - Σ mᵢ Eᵢ` on a blow-up, or `k h` on the plane
/// (empty multiplicity list).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorClass {
    pub degree: i64,
    pub multiplicities: Vec<i64>,
}

impl DivisorClass {
    pub fn plane(degree: i64) -> DivisorClass {
        DivisorClass {
            degree,
            multiplicities: Vec::new(),
        }
    }

    pub fn new(degree: i64, multiplicities: Vec<i64>) -> DivisorClass {
        DivisorClass {
            degree,
            multiplicities,
        }
    }

    /// Coordinates in the `(L, E₁, …, E_r)` basis: `(d, -m₁, …, -m_r)`.
    pub fn class_vector(&self) -> Vec<i64> {
        let mut out = vec![self.degree];
        out.extend(self.multiplicities.iter().map(|&m| -m));
        out
    }

    fn check_rank(&self, surface: &RationalSurface) -> Result<(), Error> {
        let expected = surface.rank() - 1;
        if self.multiplicities.len() != expected {
            return Err(Error::MultiplicityCountMismatch {
                expected,
                found: self.multiplicities.len(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.multiplicities.is_empty() {
            write!(f, "{}", self.degree)
        } else {
            write!(f, "{};", self.degree)?;
            for (n, m) in self.multiplicities.iter().enumerate() {
                if n > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{m}")?;
            }
            Ok(())
        }
    }
}

/// The naive dimension count of the linear system: `d(d+3)/2` minus the
/// conditions `mᵢ(mᵢ+1)/2` imposed by the assigned multiplicities. On the
/// plane this is the exact dimension for `d ≥ 0`.
pub fn expected_dim(surface: &RationalSurface, class: &DivisorClass) -> Result<i64, Error> {
    class.check_rank(surface)?;
    let d = class.degree as i128;
    let mut doubled = d * (d + 3);
    for &m in &class.multiplicities {
        let m = m as i128;
        doubled -= m * (m + 1);
    }
    Ok((doubled / 2) as i64)
}

/// Whether the linear system of the class is nonempty. Exact on the plane;
/// the naive criterion (non-negative degree and multiplicities, non-negative
/// parameter count) on blow-ups.
pub fn dou_nonempty(surface: &RationalSurface, class: &DivisorClass) -> Result<bool, Error> {
    class.check_rank(surface)?;
    match surface.kind() {
        SurfaceKind::ProjectivePlane => Ok(class.degree >= 0),
        SurfaceKind::BlownUpPlane { .. } => {
            if class.degree < 0 || class.multiplicities.iter().any(|&m| m < 0) {
                return Ok(false);
            }
            Ok(expected_dim(surface, class)? >= 0)
        }
    }
}

/// Non-emptiness query with an optional Serre-duality flip: with
/// `serre_dual` set, the question is asked of `K - m` instead of `m`, which
/// is the system governing the other side of the wall.
pub fn dou_query(
    surface: &RationalSurface,
    class: &DivisorClass,
    serre_dual: bool,
) -> Result<bool, Error> {
    if !serre_dual {
        return dou_nonempty(surface, class);
    }
    class.check_rank(surface)?;
    let k = surface.canonical_class();
    let dual = DivisorClass {
        degree: k[0] - class.degree,
        multiplicities: class
            .multiplicities
            .iter()
            .enumerate()
            .map(|(i, &m)| -k[i + 1] - m)
            .collect(),
    };
    dou_nonempty(surface, &dual)
}

/// The divisor class `m = (c + K)/2` attached to a characteristic class,
/// or an error when the sum is odd somewhere.
pub fn spinor_divisor(
    surface: &RationalSurface,
    cc: &CharClass,
) -> Result<DivisorClass, Error> {
    let k = surface.canonical_class();
    if cc.coords().len() != k.len() {
        return Err(Error::VectorLengthMismatch {
            expected: k.len(),
            found: cc.coords().len(),
        });
    }
    let mut vector = Vec::with_capacity(k.len());
    for (i, (&ci, &ki)) in cc.coords().iter().zip(k).enumerate() {
        let sum = ci + ki;
        if sum % 2 != 0 {
            return Err(Error::NonIntegralSpinor { index: i + 1 });
        }
        vector.push(sum / 2);
    }
    Ok(DivisorClass {
        degree: vector[0],
        multiplicities: vector[1..].iter().map(|&x| -x).collect(),
    })
}

/// The invariants of a class on a rational surface, relative to the
/// component containing the Kähler ray. Classes of negative index give the
/// zero form; otherwise one non-emptiness question decides both values.
pub fn sw_values(surface: &RationalSurface, cc: &CharClass) -> Result<SwForm, Error> {
    let divisor = spinor_divisor(surface, cc)?;

    // m(m - K) must reproduce the index; a mismatch means inconsistent input
    let m_vec = divisor.class_vector();
    let k = surface.canonical_class();
    let difference: Vec<i64> = m_vec.iter().zip(k).map(|(&a, &b)| a - b).collect();
    let self_pairing = surface.pairing(&m_vec, &difference);
    if self_pairing != cc.index() {
        return Err(Error::IndexMismatch {
            expected: self_pairing,
            found: cc.index(),
        });
    }

    if cc.index() < 0 {
        return Ok(SwForm::zero(0));
    }

    let nonempty = dou_nonempty(surface, &divisor)?;
    let mut plus = BTreeMap::new();
    let mut minus = BTreeMap::new();
    if nonempty {
        plus.insert(MultiIndex::EMPTY, BigInt::from(1));
    } else {
        minus.insert(MultiIndex::EMPTY, BigInt::from(-1));
    }
    Ok(SwForm::new(0, ConeComponent::H0, plus, minus))
}

/// One solution of the blow-up equation, with its derived class data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowupSolution {
    pub divisor: DivisorClass,
    /// The characteristic class `2m - K` in the `(L, E₁, …)` basis.
    pub class: Vec<i64>,
    /// Its index, always equal to the prescribed `w`.
    pub index: i64,
}

/// Outcome of the enumeration; `bound_exceeded` is set when fewer than the
/// requested number of solutions exist below the degree bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowupEnumeration {
    pub solutions: Vec<BlowupSolution>,
    pub bound_exceeded: bool,
    pub max_degree: i64,
}

/// Enumerates solutions `(d; m₁, …, m_r) ∈ ℕ^{r+1}` of
/// `w = d(d+3) - Σ mᵢ(mᵢ+1)` in lexicographic order by `(d, m)`, stopping
/// after `count` solutions or at the degree bound. Every emitted tuple is
/// re-checked against the index formula on the blow-up lattice.
pub fn enumerate_blowup_classes(
    points: usize,
    w: i64,
    count: usize,
    max_degree: i64,
) -> Result<BlowupEnumeration, Error> {
    if points < 3 {
        return Err(Error::TooFewPoints(points));
    }
    if w < 0 || w % 2 != 0 {
        return Err(Error::BadTargetIndex(w));
    }

    let surface = RationalSurface::blown_up_plane(points);
    let manifold = surface.manifold();
    let mut solutions = Vec::new();
    let mut exhausted = true;

    'outer: for d in 0..=max_degree {
        let budget = d * (d + 3) - w;
        if budget < 0 {
            continue;
        }
        let mut stack = Vec::with_capacity(points);
        if !collect_multiplicities(budget, points, &mut stack, &mut |tuple| {
            let divisor = DivisorClass::new(d, tuple.to_vec());
            let class: Vec<i64> = divisor
                .class_vector()
                .iter()
                .zip(surface.canonical_class())
                .map(|(&m2, &k)| 2 * m2 - k)
                .collect();
            let cc = make_char_class(&manifold, &class)
                .expect("classes of the form 2m - K are characteristic");
            assert_eq!(cc.index(), w, "enumerated class must have the target index");
            solutions.push(BlowupSolution {
                divisor,
                class,
                index: cc.index(),
            });
            solutions.len() < count
        }) {
            exhausted = false;
            break 'outer;
        }
    }

    Ok(BlowupEnumeration {
        bound_exceeded: exhausted && solutions.len() < count,
        solutions,
        max_degree,
    })
}

/// Recursively extends `prefix` with multiplicities whose doubled triangular
/// numbers sum to `budget`, in lexicographic order. The visitor returns
/// `false` to stop the whole enumeration; the function mirrors that flag.
fn collect_multiplicities(
    budget: i64,
    slots: usize,
    prefix: &mut Vec<i64>,
    visit: &mut impl FnMut(&[i64]) -> bool,
) -> bool {
    if slots == 0 {
        return budget != 0 || visit(prefix);
    }
    let mut m = 0i64;
    while m * (m + 1) <= budget {
        prefix.push(m);
        let keep_going =
            collect_multiplicities(budget - m * (m + 1), slots - 1, prefix, visit);
        prefix.pop();
        if !keep_going {
            return false;
        }
        m += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn plane_systems_are_exact() {
        let p2 = RationalSurface::projective_plane();
        assert!(dou_nonempty(&p2, &DivisorClass::plane(2)).unwrap());
        assert_eq!(expected_dim(&p2, &DivisorClass::plane(2)).unwrap(), 5);
        assert!(!dou_nonempty(&p2, &DivisorClass::plane(-1)).unwrap());
    }

    #[test]
    fn blow_up_uses_the_naive_count() {
        let s = RationalSurface::blown_up_plane(3);
        let conic = DivisorClass::new(2, vec![2, 1, 1]);
        assert_eq!(expected_dim(&s, &conic).unwrap(), 0);
        assert!(dou_nonempty(&s, &conic).unwrap());

        let impossible = DivisorClass::new(1, vec![1, 1, 1]);
        assert!(!dou_nonempty(&s, &impossible).unwrap());

        let negative = DivisorClass::new(0, vec![-1, 0, 0]);
        assert!(!dou_nonempty(&s, &negative).unwrap());
    }

    #[test]
    fn serre_dual_queries_flip_to_the_canonical_side() {
        let p2 = RationalSurface::projective_plane();
        // K - m for m = -4 is degree 1, which is effective
        let m = DivisorClass::plane(-4);
        assert!(!dou_query(&p2, &m, false).unwrap());
        assert!(dou_query(&p2, &m, true).unwrap());
    }

    #[test]
    fn plane_invariants_match_the_table() {
        let p2 = RationalSurface::projective_plane();
        let m = p2.manifold();

        let checks: [(i64, i64, i64); 5] =
            [(3, 1, 0), (5, 1, 0), (-5, 0, -1), (-3, 0, -1), (1, 0, 0)];
        for (c, plus, minus) in checks {
            let cc = make_char_class(&m, &[c]).unwrap();
            let sw = sw_values(&p2, &cc).unwrap();
            assert_eq!(
                sw.plus_value(MultiIndex::EMPTY),
                BigInt::from(plus),
                "c = {c}"
            );
            assert_eq!(
                sw.minus_value(MultiIndex::EMPTY),
                BigInt::from(minus),
                "c = {c}"
            );
        }
    }

    #[test]
    fn spinor_divisor_is_integral_for_characteristic_classes() {
        // on these lattices characteristic means odd in every coordinate,
        // which forces c + K even; the parity error is purely defensive
        let s = RationalSurface::blown_up_plane(3);
        let m = s.manifold();
        assert!(make_char_class(&m, &[4, -1, -1, -1]).is_err());

        let cc = make_char_class(&m, &[5, -1, -3, -1]).unwrap();
        let divisor = spinor_divisor(&s, &cc).unwrap();
        assert_eq!(divisor.degree, 1);
        assert_eq!(divisor.multiplicities, vec![0, 1, 0]);
    }

    #[test]
    fn index_equals_divisor_self_pairing() {
        let p2 = RationalSurface::projective_plane();
        let m = p2.manifold();
        for k in -20i64..=20 {
            let c = 2 * k + 3;
            let cc = make_char_class(&m, &[c]).unwrap();
            assert_eq!(cc.index(), k * (k + 3), "k = {k}");
            // the corollary hypothesis is exactly w >= 0
            let divisor = spinor_divisor(&p2, &cc).unwrap();
            assert_eq!(divisor.degree, k);
            let m_vec = divisor.class_vector();
            let km = p2.canonical_class();
            let diff: Vec<i64> = m_vec.iter().zip(km).map(|(&a, &b)| a - b).collect();
            assert_eq!(p2.pairing(&m_vec, &diff), cc.index());
        }
    }

    #[test]
    fn enumeration_finds_the_small_solutions() {
        let result = enumerate_blowup_classes(3, 0, 20, 10).unwrap();
        let tuples: Vec<(i64, Vec<i64>)> = result
            .solutions
            .iter()
            .map(|s| (s.divisor.degree, s.divisor.multiplicities.clone()))
            .collect();
        assert!(tuples.contains(&(0, vec![0, 0, 0])));
        assert!(tuples.contains(&(1, vec![1, 1, 0])));
        assert!(tuples.contains(&(2, vec![2, 1, 1])));
        for s in &result.solutions {
            assert_eq!(s.index, 0);
        }
        // lexicographic by (d, m)
        let mut sorted = tuples.clone();
        sorted.sort();
        assert_eq!(tuples, sorted);
    }

    #[test]
    fn enumeration_with_positive_index() {
        let result = enumerate_blowup_classes(3, 2, 10, 10).unwrap();
        let tuples: Vec<(i64, Vec<i64>)> = result
            .solutions
            .iter()
            .map(|s| (s.divisor.degree, s.divisor.multiplicities.clone()))
            .collect();
        assert!(tuples.contains(&(1, vec![1, 0, 0])));
        for s in &result.solutions {
            assert_eq!(s.index, 2);
        }
    }

    #[test]
    fn enumeration_flags_an_exhausted_bound() {
        let result = enumerate_blowup_classes(3, 0, 1000, 3).unwrap();
        assert!(result.bound_exceeded);
        assert_eq!(result.solutions.len(), 14);
    }

    #[test]
    fn enumeration_rejects_bad_parameters() {
        assert_eq!(
            enumerate_blowup_classes(2, 0, 1, 10),
            Err(Error::TooFewPoints(2))
        );
        assert_eq!(
            enumerate_blowup_classes(3, 1, 1, 10),
            Err(Error::BadTargetIndex(1))
        );
        assert_eq!(
            enumerate_blowup_classes(3, -2, 1, 10),
            Err(Error::BadTargetIndex(-2))
        );
    }

    #[test]
    fn enumerated_classes_have_nonempty_systems() {
        for points in [3usize, 4, 5] {
            let surface = RationalSurface::blown_up_plane(points);
            let manifold = surface.manifold();
            let result = enumerate_blowup_classes(points, 0, 25, 30).unwrap();
            assert_eq!(result.solutions.len(), 25);
            for s in &result.solutions {
                assert!(dou_nonempty(&surface, &s.divisor).unwrap());
                let cc = make_char_class(&manifold, &s.class).unwrap();
                let sw = sw_values(&surface, &cc).unwrap();
                assert_eq!(sw.plus_value(MultiIndex::EMPTY), BigInt::from(1));
                assert!(sw.minus_value(MultiIndex::EMPTY).is_zero());
            }
        }
    }
}

//! The universal wall-crossing form.
//!
//! For a 4-manifold with `b₊ = 1` the jump of the Seiberg-Witten invariant
//! across the wall of a class `c` is the form
//!
//! ```text
//! σ(λ) = ⟨λ ∧ exp(-u_c), l_O⟩      for deg λ ≡ b₁ (mod 2), deg λ ≤ min(b₁, w),
//! σ(λ) = 0                         otherwise,
//! ```
//!
//! where `u_c = Σ_{i<j} (c_{ij}/2) l_i ∧ l_j` is the first Chern class of
//! the Dirac index bundle over the twist torus. Expanding the exponential
//! gives an equivalent closed form through a single divided power,
//!
//! ```text
//! σ(λ) = (-1)^k / k! · ⟨λ ∧ u_c^k, l_O⟩,     k = (b₁ - deg λ)/2,
//! ```
//!
//! and the module implements both routes so each can check the other.
//! [`verify_wall_crossing`] compares an externally supplied pair of
//! invariants against `σ` on every basis monomial.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::chamber::ConeComponent;
use crate::error::Error;
use crate::exterior::{
    divided_power, pair_top, truncated_exp, ExtElement, MultiIndex, Orientation, Sign,
};
use crate::manifold::{cij_tensor, CharClass, FourManifold};

/// The degree-2 class `u_c` with coefficient `c_{ij}/2` on `l_i ∧ l_j`,
/// together with the Dirac index of the class it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UcClass {
    element: ExtElement,
    dirac_index: i64,
}

impl UcClass {
    pub fn element(&self) -> &ExtElement {
        &self.element
    }

    pub fn dirac_index(&self) -> i64 {
        self.dirac_index
    }

    /// Assembles `u_c` from a raw antisymmetric matrix of even pairings.
    /// Mostly useful for tests and synthetic sweeps; [`build_uc`] is the
    /// manifold-driven constructor.
    pub fn from_even_pairings(
        b1: usize,
        pairings: &[Vec<i64>],
        dirac_index: i64,
    ) -> Result<UcClass, Error> {
        let mut terms = Vec::new();
        for i in 1..=b1 {
            for j in (i + 1)..=b1 {
                let value = pairings[i - 1][j - 1];
                if value % 2 != 0 {
                    return Err(Error::ParityViolation {
                        i,
                        j,
                        value: value.to_string(),
                    });
                }
                if value != 0 {
                    let monomial = MultiIndex::from_indices(&[i as u32, j as u32])?;
                    terms.push((monomial, value / 2));
                }
            }
        }
        Ok(UcClass {
            element: ExtElement::from_integer_terms(b1, terms),
            dirac_index,
        })
    }
}

/// Builds `u_c` from the manifold's triple products; the parity check on
/// the pairings guarantees integrality of the halved coefficients.
pub fn build_uc(m: &FourManifold, cc: &CharClass) -> Result<UcClass, Error> {
    let pairings = cij_tensor(m, cc)?;
    UcClass::from_even_pairings(m.b1(), &pairings, cc.dirac_index())
}

/// The wall-crossing form of a class, ready to evaluate on elements of the
/// exterior algebra. Construction precomputes `exp(-u_c)` once.
#[derive(Debug, Clone)]
pub struct SigmaForm {
    b1: usize,
    index: i64,
    uc: ExtElement,
    exp_minus_uc: ExtElement,
    /// Divided powers `u_c^k / k!` for `0 ≤ k ≤ ⌊b₁/2⌋`.
    powers: Vec<ExtElement>,
    orientation: Orientation,
}

impl SigmaForm {
    pub fn new(m: &FourManifold, cc: &CharClass, orientation: Orientation) -> Result<SigmaForm, Error> {
        if m.b_plus() != 1 {
            return Err(Error::RequiresBPlusOne(m.b_plus()));
        }
        let uc = build_uc(m, cc)?;
        SigmaForm::from_parts(m.b1(), cc.index(), uc.element().clone(), orientation)
    }

    /// Assembles the form from raw parts: the generator count, the index
    /// `w` governing the degree cutoff, and the degree-2 class.
    pub fn from_parts(
        b1: usize,
        index: i64,
        uc: ExtElement,
        orientation: Orientation,
    ) -> Result<SigmaForm, Error> {
        let exp_minus_uc = truncated_exp(&uc, Sign::Minus)?;
        let powers = (0..=b1 / 2)
            .map(|k| divided_power(&uc, k))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SigmaForm {
            b1,
            index,
            uc,
            exp_minus_uc,
            powers,
            orientation,
        })
    }

    pub fn index(&self) -> i64 {
        self.index
    }

    pub fn uc(&self) -> &ExtElement {
        &self.uc
    }

    /// The degrees on which the form may be nonzero: `r ≡ b₁ (mod 2)` and
    /// `0 ≤ r ≤ min(b₁, w)`.
    pub fn admissible_degrees(&self) -> Vec<usize> {
        let cap = (self.b1 as i64).min(self.index);
        (0..=self.b1)
            .filter(|&r| r % 2 == self.b1 % 2 && (r as i64) <= cap)
            .collect()
    }

    fn admits(&self, degree: usize) -> bool {
        degree % 2 == self.b1 % 2 && (degree as i64) <= (self.b1 as i64).min(self.index)
    }

    fn degree_of(&self, lambda: &ExtElement) -> Result<Option<usize>, Error> {
        if lambda.b1() != self.b1 {
            return Err(Error::GeneratorCountMismatch {
                left: self.b1,
                right: lambda.b1(),
            });
        }
        let degrees = lambda.degrees();
        match degrees.len() {
            0 => Ok(None),
            1 => Ok(degrees.into_iter().next()),
            _ => Err(Error::NotHomogeneous {
                expected: self.b1 % 2,
                found: degrees.into_iter().collect(),
            }),
        }
    }

    /// Evaluates `σ(λ) = ⟨λ ∧ exp(-u_c), l_O⟩` on a homogeneous element,
    /// returning 0 outside the admissible degrees.
    pub fn eval(&self, lambda: &ExtElement) -> Result<BigInt, Error> {
        let degree = match self.degree_of(lambda)? {
            None => return Ok(BigInt::zero()),
            Some(r) => r,
        };
        if !self.admits(degree) {
            return Ok(BigInt::zero());
        }
        let product = lambda.wedge(&self.exp_minus_uc)?;
        let value = pair_top(&product, self.orientation);
        if !value.is_integer() {
            return Err(Error::NotIntegral {
                monomial: MultiIndex::full(self.b1).to_string(),
                coefficient: value.to_string(),
            });
        }
        Ok(value.to_integer())
    }

    /// Evaluates the same form through the closed coefficient formula
    /// `(-1)^k ⟨λ ∧ (u_c^k / k!), l_O⟩` with `k = (b₁ - deg λ)/2`.
    pub fn eval_via_divided_power(&self, lambda: &ExtElement) -> Result<BigInt, Error> {
        let degree = match self.degree_of(lambda)? {
            None => return Ok(BigInt::zero()),
            Some(r) => r,
        };
        if !self.admits(degree) {
            return Ok(BigInt::zero());
        }
        let k = (self.b1 - degree) / 2;
        let product = lambda.wedge(&self.powers[k])?;
        let mut value = pair_top(&product, self.orientation);
        if k % 2 == 1 {
            value = -value;
        }
        if !value.is_integer() {
            return Err(Error::NotIntegral {
                monomial: MultiIndex::full(self.b1).to_string(),
                coefficient: value.to_string(),
            });
        }
        Ok(value.to_integer())
    }

    /// The coefficient table of the form over all basis monomials of
    /// admissible degree (zero values included).
    pub fn table(&self) -> Result<Vec<(MultiIndex, BigInt)>, Error> {
        if self.b1 > 16 {
            return Err(Error::TableTooLarge(self.b1));
        }
        let mut rows = Vec::new();
        for degree in self.admissible_degrees() {
            for monomial in MultiIndex::all_of_degree(self.b1, degree) {
                let lambda = ExtElement::from_integer_terms(self.b1, [(monomial, 1)]);
                rows.push((monomial, self.eval(&lambda)?));
            }
        }
        Ok(rows)
    }
}

/// Evaluates the wall-crossing form by the exponential pairing.
pub fn sigma_eval(
    m: &FourManifold,
    cc: &CharClass,
    orientation: Orientation,
    lambda: &ExtElement,
) -> Result<BigInt, Error> {
    SigmaForm::new(m, cc, orientation)?.eval(lambda)
}

/// Evaluates the wall-crossing form by the closed coefficient formula; must
/// agree with [`sigma_eval`] on every input.
pub fn sigma_eval_coefficient_formula(
    m: &FourManifold,
    cc: &CharClass,
    orientation: Orientation,
    lambda: &ExtElement,
) -> Result<BigInt, Error> {
    SigmaForm::new(m, cc, orientation)?.eval_via_divided_power(lambda)
}

/// A pair of invariant tables, one per side of the wall, tagged with the
/// positive-cone component its sign conventions refer to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwForm {
    b1: usize,
    component: ConeComponent,
    plus: BTreeMap<MultiIndex, BigInt>,
    minus: BTreeMap<MultiIndex, BigInt>,
}

impl SwForm {
    pub fn new(
        b1: usize,
        component: ConeComponent,
        plus: BTreeMap<MultiIndex, BigInt>,
        minus: BTreeMap<MultiIndex, BigInt>,
    ) -> SwForm {
        let prune = |map: BTreeMap<MultiIndex, BigInt>| {
            map.into_iter().filter(|(_, v)| !v.is_zero()).collect()
        };
        SwForm {
            b1,
            component,
            plus: prune(plus),
            minus: prune(minus),
        }
    }

    pub fn zero(b1: usize) -> SwForm {
        SwForm::new(b1, ConeComponent::H0, BTreeMap::new(), BTreeMap::new())
    }

    pub fn b1(&self) -> usize {
        self.b1
    }

    pub fn component(&self) -> ConeComponent {
        self.component
    }

    pub fn plus_value(&self, monomial: MultiIndex) -> BigInt {
        self.plus.get(&monomial).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn minus_value(&self, monomial: MultiIndex) -> BigInt {
        self.minus.get(&monomial).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn side_value(&self, side: Sign, monomial: MultiIndex) -> BigInt {
        match side {
            Sign::Plus => self.plus_value(monomial),
            Sign::Minus => self.minus_value(monomial),
        }
    }

    /// Re-tags the form as expressing conventions relative to the given
    /// component without touching the values.
    pub fn with_component(mut self, component: ConeComponent) -> SwForm {
        self.component = component;
        self
    }

    /// Rewrites the form relative to `H₀` using the component-flip rule:
    /// flipping the component swaps the two sides and negates the values.
    pub fn normalized(&self) -> SwForm {
        match self.component {
            ConeComponent::H0 => self.clone(),
            ConeComponent::NegH0 => SwForm {
                b1: self.b1,
                component: ConeComponent::H0,
                plus: self.minus.iter().map(|(m, v)| (*m, -v)).collect(),
                minus: self.plus.iter().map(|(m, v)| (*m, -v)).collect(),
            },
        }
    }

    /// Degrees carrying support on either side.
    pub fn supported_degrees(&self) -> Vec<usize> {
        let mut degrees: Vec<usize> = self
            .plus
            .keys()
            .chain(self.minus.keys())
            .map(|m| m.degree())
            .collect();
        degrees.sort_unstable();
        degrees.dedup();
        degrees
    }

    /// Checks the support parity `r ≡ w (mod 2)` required of an invariant
    /// table for a class of index `w`.
    pub fn validate_support(&self, cc: &CharClass) -> Result<(), Error> {
        let parity = cc.index().rem_euclid(2) as usize;
        for degree in self.supported_degrees() {
            if degree % 2 != parity {
                return Err(Error::NotHomogeneous {
                    expected: parity,
                    found: vec![degree],
                });
            }
        }
        Ok(())
    }
}

/// One monomial where the supplied invariants and the wall-crossing form
/// disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Discrepancy {
    pub monomial: MultiIndex,
    /// The supplied jump `SW(+) - SW(-)`.
    pub jump: BigInt,
    /// The value `σ` predicts for that monomial.
    pub predicted: BigInt,
}

/// Result of checking the wall-crossing identity; empty means it holds.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WallCrossingReport {
    pub discrepancies: Vec<Discrepancy>,
}

impl WallCrossingReport {
    pub fn is_consistent(&self) -> bool {
        self.discrepancies.is_empty()
    }
}

/// Compares `SW(+) - SW(-)` against `σ` on every basis monomial that could
/// carry a nonzero value on either side: the admissible degrees of `σ` plus
/// the support of the supplied tables. The supplied form is normalized to
/// the `H₀` convention first.
pub fn verify_wall_crossing(
    sw: &SwForm,
    m: &FourManifold,
    cc: &CharClass,
    orientation: Orientation,
) -> Result<WallCrossingReport, Error> {
    if sw.b1() != m.b1() {
        return Err(Error::GeneratorCountMismatch {
            left: m.b1(),
            right: sw.b1(),
        });
    }
    let sw = sw.normalized();
    let sigma = SigmaForm::new(m, cc, orientation)?;

    let mut monomials: Vec<MultiIndex> = Vec::new();
    for degree in sigma.admissible_degrees() {
        monomials.extend(MultiIndex::all_of_degree(m.b1(), degree));
    }
    monomials.extend(sw.plus.keys().copied());
    monomials.extend(sw.minus.keys().copied());
    monomials.sort();
    monomials.dedup();

    let mut discrepancies = Vec::new();
    for monomial in monomials {
        let lambda = ExtElement::from_integer_terms(m.b1(), [(monomial, 1)]);
        let predicted = sigma.eval(&lambda)?;
        let jump = sw.plus_value(monomial) - sw.minus_value(monomial);
        if jump != predicted {
            discrepancies.push(Discrepancy {
                monomial,
                jump,
                predicted,
            });
        }
    }
    Ok(WallCrossingReport { discrepancies })
}

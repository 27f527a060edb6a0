//! Direct images of powers of the hyperplane class via Chern classes.
//!
//! Given a family of Fredholm operators of constant index `δ` with Chern
//! classes `c_i`, the pushforwards of powers of the relative hyperplane
//! class obey the inverse-series recursion
//!
//! ```text
//! p_{δ-1} = 1,    p_k = -Σ_{i=1}^{k-δ+1} c_i · p_{k-i},
//! ```
//!
//! which is exactly the statement `(1 + Σ c_i) ∧ (Σ p_j) = 1` weight by
//! weight. For the Dirac family of a class on a manifold with `b₊ = 1` the
//! Chern classes collapse to divided powers, `c_k = u_c^k / k!`, and the
//! recursion closes as `p_{δ-1+k} = (-1)^k u_c^k / k!`.

use crate::crossing::{build_uc, UcClass};
use crate::error::Error;
use crate::exterior::{divided_power, ExtElement};
use crate::manifold::{CharClass, FourManifold};

/// Chern classes `c₁, c₂, …` of an index bundle, each homogeneous of degree
/// `2i`, together with the Fredholm index `δ` of the family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChernInput {
    b1: usize,
    fredholm_index: i64,
    classes: Vec<ExtElement>,
}

impl ChernInput {
    /// `classes[i]` is `c_{i+1}` and must be homogeneous of degree `2(i+1)`.
    /// Classes beyond the top degree of the algebra are dropped, since they
    /// vanish identically.
    pub fn new(
        b1: usize,
        fredholm_index: i64,
        classes: Vec<ExtElement>,
    ) -> Result<ChernInput, Error> {
        let mut kept = Vec::new();
        for (offset, class) in classes.into_iter().enumerate() {
            let degree = 2 * (offset + 1);
            if class.b1() != b1 {
                return Err(Error::GeneratorCountMismatch {
                    left: b1,
                    right: class.b1(),
                });
            }
            if !class.is_homogeneous(degree) {
                return Err(Error::NotHomogeneous {
                    expected: degree,
                    found: class.degrees().into_iter().collect(),
                });
            }
            // beyond the top degree the class is necessarily zero
            if degree <= b1 {
                kept.push(class);
            }
        }
        while matches!(kept.last(), Some(c) if c.is_zero()) {
            kept.pop();
        }
        Ok(ChernInput {
            b1,
            fredholm_index,
            classes: kept,
        })
    }

    pub fn b1(&self) -> usize {
        self.b1
    }

    pub fn fredholm_index(&self) -> i64 {
        self.fredholm_index
    }

    /// The class `c_i` (1-based); zero beyond the stored support.
    pub fn class(&self, i: usize) -> ExtElement {
        assert!(i >= 1);
        self.classes
            .get(i - 1)
            .cloned()
            .unwrap_or_else(|| ExtElement::zero(self.b1))
    }

    pub fn support_len(&self) -> usize {
        self.classes.len()
    }

    /// The total Chern class `1 + Σ c_i`.
    pub fn total(&self) -> ExtElement {
        let mut acc = ExtElement::one(self.b1);
        for c in &self.classes {
            acc = acc + c.clone();
        }
        acc
    }
}

/// The sequence `p_{δ-1}, …, p_{k_max}` produced by the recursion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SegreSequence {
    start: i64,
    polys: Vec<ExtElement>,
}

impl SegreSequence {
    /// The first index, `δ - 1`.
    pub fn start(&self) -> i64 {
        self.start
    }

    pub fn get(&self, k: i64) -> Option<&ExtElement> {
        if k < self.start {
            None
        } else {
            self.polys.get((k - self.start) as usize)
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &ExtElement)> {
        self.polys
            .iter()
            .enumerate()
            .map(|(offset, p)| (self.start + offset as i64, p))
    }

    /// The sum `Σ_k p_k` over the computed range.
    pub fn total(&self) -> ExtElement {
        let b1 = self
            .polys
            .first()
            .map(|p| p.b1())
            .expect("sequence holds at least p_{δ-1}");
        let mut acc = ExtElement::zero(b1);
        for p in &self.polys {
            acc = acc + p.clone();
        }
        acc
    }
}

/// Runs the recursion `p_{δ-1} = 1`, `p_k = -Σ c_i p_{k-i}` up to `k_max`.
pub fn segre_polynomials(input: &ChernInput, k_max: i64) -> Result<SegreSequence, Error> {
    let start = input.fredholm_index() - 1;
    if k_max < start {
        return Err(Error::KMaxBelowStart { k_max, start });
    }
    let mut polys: Vec<ExtElement> = vec![ExtElement::one(input.b1())];
    for k in (start + 1)..=k_max {
        let mut acc = ExtElement::zero(input.b1());
        let reach = (k - start) as usize;
        for i in 1..=reach {
            let c_i = input.class(i);
            if c_i.is_zero() {
                continue;
            }
            let p_prev = &polys[reach - i];
            acc = acc + c_i.wedge(p_prev)?;
        }
        polys.push(-acc);
    }
    Ok(SegreSequence { start, polys })
}

/// Default cutoff `δ - 1 + ⌊b₁/2⌋`; beyond it every `p_k` vanishes because
/// its degree exceeds the top of the algebra.
pub fn default_k_max(input: &ChernInput) -> i64 {
    input.fredholm_index() - 1 + (input.b1() / 2) as i64
}

/// Chern classes of the Dirac family of a class: `c_k = u_c^k / k!`, with
/// `δ` the Dirac index.
pub fn dirac_chern_classes(uc: &UcClass, k_max: usize) -> Result<ChernInput, Error> {
    let b1 = uc.element().b1();
    let mut classes = Vec::new();
    for k in 1..=k_max.min(b1 / 2) {
        classes.push(divided_power(uc.element(), k)?);
    }
    ChernInput::new(b1, uc.dirac_index(), classes)
}

/// The graded pieces of the Chern character of the Dirac index bundle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChernCharacter {
    /// Rank piece: the Dirac index `δ = (c² - σ)/8`.
    pub rank: i64,
    /// Degree-2 piece: the class `u_c`.
    pub degree_two: ExtElement,
    /// Degree-4 piece `Σ_{h<i<j<k} l_{hijk} · l_h ∧ l_i ∧ l_j ∧ l_k`;
    /// identically zero whenever `b₊ = 1`.
    pub degree_four: ExtElement,
}

/// Expands the Chern character of the Dirac index bundle over the twist
/// torus into its graded pieces.
pub fn chern_character_expansion(
    m: &FourManifold,
    cc: &CharClass,
) -> Result<ChernCharacter, Error> {
    let uc = build_uc(m, cc)?;
    let b1 = m.b1();
    let mut quad_terms = Vec::new();
    for (indices, value) in m.quad().canonical_entries() {
        let monomial = crate::exterior::MultiIndex::from_indices(&[
            indices[0] as u32,
            indices[1] as u32,
            indices[2] as u32,
            indices[3] as u32,
        ])?;
        quad_terms.push((monomial, *value));
    }
    Ok(ChernCharacter {
        rank: cc.dirac_index(),
        degree_two: uc.element().clone(),
        degree_four: ExtElement::from_integer_terms(b1, quad_terms),
    })
}

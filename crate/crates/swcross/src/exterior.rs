//! Exact exterior algebra over the integers on up to 64 generators.
//!
//! Elements of `Λ*(H¹)` are stored as sparse maps from basis monomials
//! `l_{i₁} ∧ … ∧ l_{i_r}` to exact rational coefficients. Monomials are
//! bitmasks, so disjointness tests and shuffle signs cost a handful of
//! popcounts. Coefficients are arbitrary-precision rationals internally;
//! the operations for which the result is known to be integral (divided
//! powers, truncated exponentials) assert integrality before returning.
//!
//! The sign convention: the wedge of two disjoint sorted monomials is the
//! sorted union times `(-1)^inv`, where `inv` counts pairs that must cross
//! when the two sequences are merged. The orientation generator is
//! `l₁ ∧ … ∧ l_{b₁}` in input basis order.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Hard capacity of the algebra: monomials are machine-word bitmasks.
pub const MAX_GENERATORS: usize = 64;

/// A sign, `+1` or `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn unit(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    /// `self` raised to the `k`-th power.
    pub fn pow(self, k: usize) -> Sign {
        match self {
            Sign::Plus => Sign::Plus,
            Sign::Minus => {
                if k % 2 == 0 {
                    Sign::Plus
                } else {
                    Sign::Minus
                }
            }
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sign::Plus => write!(f, "+"),
            Sign::Minus => write!(f, "-"),
        }
    }
}

/// An orientation of `H¹`, i.e. a choice of sign for the top generator
/// `l₁ ∧ … ∧ l_{b₁}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Positive,
    Negative,
}

impl Orientation {
    pub fn sign(self) -> Sign {
        match self {
            Orientation::Positive => Sign::Plus,
            Orientation::Negative => Sign::Minus,
        }
    }
}

/// A strictly increasing set of generator indices in `1..=64`, stored as a
/// bitmask; bit `i - 1` stands for the generator `l_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MultiIndex(u64);

impl MultiIndex {
    /// The empty monomial, i.e. the unit of the algebra.
    pub const EMPTY: MultiIndex = MultiIndex(0);

    pub fn from_mask(mask: u64) -> MultiIndex {
        MultiIndex(mask)
    }

    /// Builds a multi-index from 1-based generator indices, which must be
    /// strictly increasing and at most 64.
    pub fn from_indices(indices: &[u32]) -> Result<MultiIndex, Error> {
        let mut mask = 0u64;
        let mut prev = 0u32;
        for &i in indices {
            if i == 0 || i > MAX_GENERATORS as u32 {
                return Err(Error::GeneratorOutOfRange(i));
            }
            if i <= prev {
                return Err(Error::IndicesNotIncreasing);
            }
            mask |= 1u64 << (i - 1);
            prev = i;
        }
        Ok(MultiIndex(mask))
    }

    /// The full monomial `l₁ ∧ … ∧ l_count`.
    pub fn full(count: usize) -> MultiIndex {
        debug_assert!(count <= MAX_GENERATORS);
        if count == MAX_GENERATORS {
            MultiIndex(u64::MAX)
        } else {
            MultiIndex((1u64 << count) - 1)
        }
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    /// 1-based generator indices in increasing order.
    pub fn indices(self) -> impl Iterator<Item = u32> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let i = rest.trailing_zeros();
                rest &= rest - 1;
                Some(i + 1)
            }
        })
    }

    pub fn contains(self, index: u32) -> bool {
        index >= 1 && index <= 64 && self.0 & (1u64 << (index - 1)) != 0
    }

    pub fn is_disjoint(self, other: MultiIndex) -> bool {
        self.0 & other.0 == 0
    }

    pub fn union(self, other: MultiIndex) -> MultiIndex {
        MultiIndex(self.0 | other.0)
    }

    pub fn fits(self, b1: usize) -> bool {
        self.0 & !MultiIndex::full(b1).0 == 0
    }

    /// Sign of the shuffle that sorts `self` followed by `other`; the two
    /// index sets must be disjoint.
    fn merge_sign(self, other: MultiIndex) -> Sign {
        debug_assert!(self.is_disjoint(other));
        let mut inversions = 0u32;
        let mut rest = other.0;
        while rest != 0 {
            let i = rest.trailing_zeros();
            // bits of `self` strictly above position i
            inversions += self.0.checked_shr(i + 1).unwrap_or(0).count_ones();
            rest &= rest - 1;
        }
        if inversions % 2 == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    /// All monomials of the given degree on `b1` generators, in increasing
    /// [`Ord`] order.
    pub fn all_of_degree(b1: usize, degree: usize) -> Vec<MultiIndex> {
        assert!(b1 <= MAX_GENERATORS);
        if degree > b1 {
            return Vec::new();
        }
        if degree == 0 {
            return vec![MultiIndex::EMPTY];
        }
        // Gosper's hack over b1-bit masks.
        let limit = MultiIndex::full(b1).0;
        let mut out = Vec::new();
        let mut v: u64 = (1u64 << degree) - 1;
        loop {
            out.push(MultiIndex(v));
            if v == 0 || v.leading_zeros() < (64 - b1) as u32 {
                break;
            }
            let t = v | (v - 1);
            if t == u64::MAX {
                break;
            }
            let next = (t + 1) | (((!t & (t + 1)) - 1) >> (v.trailing_zeros() + 1));
            if next > limit {
                break;
            }
            v = next;
        }
        out.sort();
        out
    }
}

impl Ord for MultiIndex {
    /// Graded order: first by degree, then lexicographically on the sorted
    /// index sequences. Gives human-readable table rows.
    fn cmp(&self, other: &MultiIndex) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.indices().cmp(other.indices()))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &MultiIndex) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return write!(f, "1");
        }
        let mut first = true;
        for i in self.indices() {
            if !first {
                write!(f, "^")?;
            }
            write!(f, "l{i}")?;
            first = false;
        }
        Ok(())
    }
}

/// An element of the exterior algebra on `b1` generators with exact
/// rational coefficients. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtElement {
    b1: usize,
    terms: BTreeMap<MultiIndex, BigRational>,
}

impl ExtElement {
    fn check_capacity(b1: usize) {
        assert!(
            b1 <= MAX_GENERATORS,
            "exterior algebra capacity is {MAX_GENERATORS} generators, requested {b1}"
        );
    }

    pub fn zero(b1: usize) -> ExtElement {
        Self::check_capacity(b1);
        ExtElement {
            b1,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(b1: usize) -> ExtElement {
        Self::monomial(b1, MultiIndex::EMPTY, BigRational::one())
    }

    /// The generator `l_index` (1-based).
    pub fn generator(b1: usize, index: u32) -> ExtElement {
        assert!(
            index >= 1 && (index as usize) <= b1,
            "generator l{index} outside 1..={b1}"
        );
        Self::monomial(
            b1,
            MultiIndex::from_indices(&[index]).unwrap(),
            BigRational::one(),
        )
    }

    pub fn monomial(b1: usize, monomial: MultiIndex, coeff: BigRational) -> ExtElement {
        Self::check_capacity(b1);
        assert!(
            monomial.fits(b1),
            "monomial {monomial} does not fit in {b1} generators"
        );
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(monomial, coeff);
        }
        ExtElement { b1, terms }
    }

    pub fn from_terms<I>(b1: usize, iter: I) -> ExtElement
    where
        I: IntoIterator<Item = (MultiIndex, BigRational)>,
    {
        let mut out = ExtElement::zero(b1);
        for (m, c) in iter {
            out.add_term(m, c);
        }
        out
    }

    /// Convenience constructor from integer coefficients.
    pub fn from_integer_terms<I>(b1: usize, iter: I) -> ExtElement
    where
        I: IntoIterator<Item = (MultiIndex, i64)>,
    {
        ExtElement::from_terms(
            b1,
            iter.into_iter()
                .map(|(m, c)| (m, BigRational::from(BigInt::from(c)))),
        )
    }

    fn add_term(&mut self, monomial: MultiIndex, coeff: BigRational) {
        assert!(monomial.fits(self.b1));
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(monomial) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn b1(&self) -> usize {
        self.b1
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support_size(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (MultiIndex, &BigRational)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn coeff(&self, monomial: MultiIndex) -> BigRational {
        self.terms
            .get(&monomial)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Degrees carrying nonzero support.
    pub fn degrees(&self) -> BTreeSet<usize> {
        self.terms.keys().map(|m| m.degree()).collect()
    }

    /// True when every nonzero term has the given degree. The zero element
    /// is homogeneous of every degree.
    pub fn is_homogeneous(&self, degree: usize) -> bool {
        self.terms.keys().all(|m| m.degree() == degree)
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Extracts the coefficient table as integers, failing on the first
    /// non-integral coefficient.
    pub fn integer_terms(&self) -> Result<BTreeMap<MultiIndex, BigInt>, Error> {
        let mut out = BTreeMap::new();
        for (m, c) in &self.terms {
            if !c.is_integer() {
                return Err(Error::NotIntegral {
                    monomial: m.to_string(),
                    coefficient: c.to_string(),
                });
            }
            out.insert(*m, c.to_integer());
        }
        Ok(out)
    }

    pub fn scaled(&self, factor: &BigRational) -> ExtElement {
        if factor.is_zero() {
            return ExtElement::zero(self.b1);
        }
        ExtElement {
            b1: self.b1,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, c * factor))
                .collect(),
        }
    }

    pub fn scaled_int(&self, factor: i64) -> ExtElement {
        self.scaled(&BigRational::from(BigInt::from(factor)))
    }

    /// Exterior product. Bilinear; on monomials the product is zero when
    /// the index sets meet, otherwise the union monomial with the shuffle
    /// sign.
    pub fn wedge(&self, other: &ExtElement) -> Result<ExtElement, Error> {
        if self.b1 != other.b1 {
            return Err(Error::GeneratorCountMismatch {
                left: self.b1,
                right: other.b1,
            });
        }
        let mut out = ExtElement::zero(self.b1);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if !ma.is_disjoint(*mb) {
                    continue;
                }
                let mut coeff = ca * cb;
                if ma.merge_sign(*mb) == Sign::Minus {
                    coeff = -coeff;
                }
                out.add_term(ma.union(*mb), coeff);
            }
        }
        Ok(out)
    }

    /// Projection onto the terms of the given degree.
    pub fn degree_part(&self, degree: usize) -> ExtElement {
        ExtElement {
            b1: self.b1,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == degree)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }
}

impl fmt::Display for ExtElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let negative = c.is_negative();
            let abs = c.abs();
            if first {
                if negative {
                    write!(f, "-")?;
                }
                first = false;
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.mask() == 0 {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

fn assert_same_algebra(a: &ExtElement, b: &ExtElement) {
    assert_eq!(
        a.b1, b.b1,
        "elements live in exterior algebras on {} and {} generators",
        a.b1, b.b1
    );
}

impl Add for &ExtElement {
    type Output = ExtElement;
    fn add(self, rhs: &ExtElement) -> ExtElement {
        assert_same_algebra(self, rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Add for ExtElement {
    type Output = ExtElement;
    fn add(self, rhs: ExtElement) -> ExtElement {
        &self + &rhs
    }
}

impl Sub for &ExtElement {
    type Output = ExtElement;
    fn sub(self, rhs: &ExtElement) -> ExtElement {
        assert_same_algebra(self, rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl Sub for ExtElement {
    type Output = ExtElement;
    fn sub(self, rhs: ExtElement) -> ExtElement {
        &self - &rhs
    }
}

impl Neg for &ExtElement {
    type Output = ExtElement;
    fn neg(self) -> ExtElement {
        ExtElement {
            b1: self.b1,
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

impl Neg for ExtElement {
    type Output = ExtElement;
    fn neg(self) -> ExtElement {
        -&self
    }
}

/// Exterior product of two elements; errors when the generator counts differ.
pub fn wedge(x: &ExtElement, y: &ExtElement) -> Result<ExtElement, Error> {
    x.wedge(y)
}

fn require_even_integral(u: &ExtElement) -> Result<(), Error> {
    if !u.is_homogeneous(2) {
        return Err(Error::NotHomogeneous {
            expected: 2,
            found: u.degrees().into_iter().collect(),
        });
    }
    if !u.is_integral() {
        let (m, c) = u
            .terms()
            .find(|(_, c)| !c.is_integer())
            .expect("non-integral element has a non-integral term");
        return Err(Error::NotIntegral {
            monomial: m.to_string(),
            coefficient: c.to_string(),
        });
    }
    Ok(())
}

/// The divided power `u^k / k!` of an integral element of pure degree 2.
///
/// The result is again integral: expanding `u^k` groups the `k!` orderings
/// of each set of `k` pairwise-disjoint index pairs. Beyond the top degree
/// (`2k > b₁`) the divided power is zero, which is not an error.
pub fn divided_power(u: &ExtElement, k: usize) -> Result<ExtElement, Error> {
    require_even_integral(u)?;
    if k == 0 {
        return Ok(ExtElement::one(u.b1()));
    }
    if 2 * k > u.b1() {
        return Ok(ExtElement::zero(u.b1()));
    }
    // Build u^k/k! stepwise as γ_j = γ_{j-1} ∧ u / j to keep coefficients small.
    let mut gamma = u.clone();
    for j in 2..=k {
        gamma = gamma.wedge(u)?;
        gamma = gamma.scaled(&BigRational::new(BigInt::one(), BigInt::from(j)));
    }
    assert!(
        gamma.is_integral(),
        "divided power of an integral degree-2 element must be integral; got {gamma}"
    );
    Ok(gamma)
}

/// The truncated exponential `Σ_k (±u)^k / k!`, summed over `0 ≤ k ≤ ⌊b₁/2⌋`.
/// Exact in a finite exterior algebra, where the series terminates.
pub fn truncated_exp(u: &ExtElement, sign: Sign) -> Result<ExtElement, Error> {
    require_even_integral(u)?;
    let mut acc = ExtElement::one(u.b1());
    for k in 1..=u.b1() / 2 {
        let mut term = divided_power(u, k)?;
        if term.is_zero() {
            break;
        }
        if sign.pow(k) == Sign::Minus {
            term = -term;
        }
        acc = acc + term;
    }
    Ok(acc)
}

/// The pairing of `x` against the orientation generator: the orientation
/// sign times the coefficient of `l₁ ∧ … ∧ l_{b₁}`. All lower degrees are
/// ignored; for `b₁ = 0` this is the scalar part.
pub fn pair_top(x: &ExtElement, orientation: Orientation) -> BigRational {
    let top = x.coeff(MultiIndex::full(x.b1()));
    match orientation {
        Orientation::Positive => top,
        Orientation::Negative => -top,
    }
}

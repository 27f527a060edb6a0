//! The topological skeleton of a closed oriented 4-manifold.
//!
//! A [`FourManifoldData`] records the Betti numbers, the intersection form
//! `Q` on `H²/Tors`, the triple cup products `t[i][j][k] = ⟨l^i ∪ l^j ∪ h_k, [X]⟩`,
//! the optional quadruple products, and a reference class with positive
//! square that pins the component `H₀` of the positive cone. Validation is
//! report-style and entirely exact: the signature of `Q` is computed by
//! symmetric reduction over the rationals, never numerically.
//!
//! A characteristic class `c` carries two derived integers: the index
//! `w = (c² - 3σ - 2e)/4`, which is the expected dimension of the monopole
//! moduli space, and the Dirac index `δ = (c² - σ)/8`. Both must be
//! integers for the input to be consistent; `δ ∈ ℤ` is exactly the
//! congruence `c² ≡ σ (mod 8)` familiar from unimodular lattices.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::error::Error;
use crate::exterior::MAX_GENERATORS;

/// Dense triple-product tensor of shape `b₁ × b₁ × b₂`, antisymmetric in
/// its first two slots.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TripleTensor {
    b1: usize,
    b2: usize,
    entries: Vec<i64>,
}

impl TripleTensor {
    pub fn zero(b1: usize, b2: usize) -> TripleTensor {
        TripleTensor {
            b1,
            b2,
            entries: vec![0; b1 * b1 * b2],
        }
    }

    /// Builds the tensor from sparse 1-based entries `(i, j, k, value)`,
    /// completing antisymmetry in `(i, j)` automatically. Listing the same
    /// slot twice (directly or through the mirrored pair) is an error, as
    /// is a diagonal entry `i = j` with a nonzero value.
    pub fn from_entries(
        b1: usize,
        b2: usize,
        entries: &[(usize, usize, usize, i64)],
    ) -> Result<TripleTensor, TensorEntryError> {
        let mut t = TripleTensor::zero(b1, b2);
        let mut seen = std::collections::BTreeSet::new();
        for &(i, j, k, value) in entries {
            if i == 0 || i > b1 || j == 0 || j > b1 || k == 0 || k > b2 {
                return Err(TensorEntryError::OutOfRange { i, j, k });
            }
            if i == j {
                if value != 0 {
                    return Err(TensorEntryError::DiagonalNonzero { i, k, value });
                }
                continue;
            }
            let canonical = (i.min(j), i.max(j), k);
            if !seen.insert(canonical) {
                return Err(TensorEntryError::Duplicate { i, j, k });
            }
            let idx = t.flat(i, j, k);
            t.entries[idx] = value;
            let idx = t.flat(j, i, k);
            t.entries[idx] = -value;
        }
        Ok(t)
    }

    pub fn from_dense(b1: usize, b2: usize, entries: Vec<i64>) -> TripleTensor {
        assert_eq!(entries.len(), b1 * b1 * b2, "dense tensor has wrong length");
        TripleTensor { b1, b2, entries }
    }

    fn flat(&self, i: usize, j: usize, k: usize) -> usize {
        ((i - 1) * self.b1 + (j - 1)) * self.b2 + (k - 1)
    }

    /// 1-based access.
    pub fn get(&self, i: usize, j: usize, k: usize) -> i64 {
        self.entries[self.flat(i, j, k)]
    }

    pub fn b1(&self) -> usize {
        self.b1
    }

    pub fn b2(&self) -> usize {
        self.b2
    }

    /// Returns the first slot breaking antisymmetry, if any.
    pub fn antisymmetry_defect(&self) -> Option<(usize, usize, usize)> {
        for i in 1..=self.b1 {
            for j in i..=self.b1 {
                for k in 1..=self.b2 {
                    if self.get(i, j, k) != -self.get(j, i, k) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// Nonzero canonical entries `(i, j, k, value)` with `i < j`.
    pub fn canonical_entries(&self) -> Vec<(usize, usize, usize, i64)> {
        let mut out = Vec::new();
        for i in 1..=self.b1 {
            for j in i + 1..=self.b1 {
                for k in 1..=self.b2 {
                    let v = self.get(i, j, k);
                    if v != 0 {
                        out.push((i, j, k, v));
                    }
                }
            }
        }
        out
    }
}

fn sort_with_parity(indices: [usize; 4]) -> ([usize; 4], usize) {
    let mut sorted = indices;
    let mut swaps = 0usize;
    for a in 1..4 {
        let mut b = a;
        while b > 0 && sorted[b - 1] > sorted[b] {
            sorted.swap(b - 1, b);
            swaps += 1;
            b -= 1;
        }
    }
    (sorted, swaps)
}

/// Sparse totally antisymmetric quadruple-product tensor; keys are strictly
/// increasing index quadruples, so antisymmetry is structural.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct QuadTensor {
    entries: BTreeMap<[usize; 4], i64>,
}

impl QuadTensor {
    pub fn zero() -> QuadTensor {
        QuadTensor::default()
    }

    /// Inserts an entry given on arbitrary (1-based) indices, canonicalizing
    /// by the permutation sign. Repeated indices with a nonzero value and
    /// duplicate quadruples are errors.
    pub fn insert(
        &mut self,
        b1: usize,
        indices: [usize; 4],
        value: i64,
    ) -> Result<(), TensorEntryError> {
        for &x in &indices {
            if x == 0 || x > b1 {
                return Err(TensorEntryError::QuadOutOfRange(indices));
            }
        }
        let (sorted, swaps) = sort_with_parity(indices);
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            if value != 0 {
                return Err(TensorEntryError::QuadRepeatedIndex(indices));
            }
            return Ok(());
        }
        if self.entries.contains_key(&sorted) {
            return Err(TensorEntryError::QuadDuplicate(indices));
        }
        let signed = if swaps % 2 == 0 { value } else { -value };
        if signed != 0 {
            self.entries.insert(sorted, signed);
        }
        Ok(())
    }

    /// Value at arbitrary indices, with the permutation sign applied.
    pub fn get(&self, indices: [usize; 4]) -> i64 {
        let (sorted, swaps) = sort_with_parity(indices);
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return 0;
        }
        let v = self.entries.get(&sorted).copied().unwrap_or(0);
        if swaps % 2 == 0 {
            v
        } else {
            -v
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn canonical_entries(&self) -> impl Iterator<Item = (&[usize; 4], &i64)> {
        self.entries.iter()
    }
}

/// Errors while assembling sparse tensor data.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TensorEntryError {
    #[error("key t: entry ({i},{j},{k}) out of range")]
    OutOfRange { i: usize, j: usize, k: usize },
    #[error("key t: diagonal entry ({i},{i},{k}) = {value} must be zero by antisymmetry")]
    DiagonalNonzero { i: usize, k: usize, value: i64 },
    #[error("key t: duplicate entry for slot ({i},{j},{k}) (possibly via its mirror)")]
    Duplicate { i: usize, j: usize, k: usize },
    #[error("key l4: entry {0:?} out of range")]
    QuadOutOfRange([usize; 4]),
    #[error("key l4: entry {0:?} repeats an index with a nonzero value")]
    QuadRepeatedIndex([usize; 4]),
    #[error("key l4: duplicate entry for quadruple {0:?}")]
    QuadDuplicate([usize; 4]),
}

/// Plain topological input data. Construct it directly or parse it from a
/// manifold document; run [`FourManifoldData::validate`] or convert into a
/// [`FourManifold`] before doing anything else with it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FourManifoldData {
    pub name: String,
    pub b1: usize,
    pub b_plus: usize,
    pub b_minus: usize,
    /// Intersection form on `H²/Tors`, a symmetric `b₂ × b₂` integer matrix.
    pub intersection_form: Vec<Vec<i64>>,
    pub triple: TripleTensor,
    pub quad: QuadTensor,
    /// A class of positive square selecting the component `H₀`.
    pub ref_pos: Vec<i64>,
}

/// A single violated invariant.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("key b1: {0} exceeds the 64-generator capacity")]
    TooManyGenerators(usize),
    #[error("key b_plus: must be positive")]
    NonPositiveBPlus,
    #[error("key Q: expected a {expected}x{expected} matrix, found {rows} rows (row {bad_row} has {bad_len} entries)")]
    WrongFormShape {
        expected: usize,
        rows: usize,
        bad_row: usize,
        bad_len: usize,
    },
    #[error("key Q: not symmetric at ({i},{j}): {a} vs {b}")]
    AsymmetricForm { i: usize, j: usize, a: i64, b: i64 },
    #[error("key Q: the form is degenerate")]
    DegenerateForm,
    #[error("key Q: signature is ({pos},{neg}) but (b_plus, b_minus) = ({b_plus},{b_minus})")]
    SignatureMismatch {
        pos: usize,
        neg: usize,
        b_plus: usize,
        b_minus: usize,
    },
    #[error("key t: tensor shape is {tb1}x{tb1}x{tb2}, expected {b1}x{b1}x{b2}")]
    WrongTripleShape {
        tb1: usize,
        tb2: usize,
        b1: usize,
        b2: usize,
    },
    #[error("key t: antisymmetry broken at ({i},{j},{k})")]
    TripleNotAntisymmetric { i: usize, j: usize, k: usize },
    #[error("key l4: entry {indices:?} out of range for b1 = {b1}")]
    QuadOutOfRange { indices: [usize; 4], b1: usize },
    #[error("key l4: nonzero entry at {indices:?}, but b_plus = 1 forces the quadruple tensor to vanish")]
    QuadMustVanish { indices: [usize; 4] },
    #[error("key ref_pos: has length {found}, expected {expected}")]
    RefWrongLength { expected: usize, found: usize },
    #[error("key ref_pos: self-intersection {0} is not positive")]
    RefNotPositive(String),
}

/// The outcome of validating a [`FourManifoldData`]; empty means valid.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            write!(f, "valid")
        } else {
            for (n, v) in self.violations.iter().enumerate() {
                if n > 0 {
                    writeln!(f)?;
                }
                write!(f, "violation: {v}")?;
            }
            Ok(())
        }
    }
}

/// Signature of a symmetric rational matrix by symmetric reduction:
/// diagonal pivots are preferred, a congruence `row/col k += row/col b`
/// manufactures one when the remaining diagonal vanishes, and the signs of
/// the resulting diagonal are counted. Returns `None` when the form is
/// degenerate.
fn exact_signature(q: &[Vec<i64>]) -> Option<(usize, usize)> {
    let n = q.len();
    let mut m: Vec<Vec<BigRational>> = q
        .iter()
        .map(|row| {
            row.iter()
                .map(|&x| BigRational::from(BigInt::from(x)))
                .collect()
        })
        .collect();
    let mut pos = 0usize;
    let mut neg = 0usize;
    for k in 0..n {
        if m[k][k].is_zero() {
            if let Some(l) = (k + 1..n).find(|&l| !m[l][l].is_zero()) {
                m.swap(k, l);
                for row in m.iter_mut() {
                    row.swap(k, l);
                }
            } else {
                // every remaining diagonal entry vanishes; pull a nonzero
                // off-diagonal entry onto the diagonal by a congruence
                let mut found = None;
                'search: for a in k..n {
                    for b in (a + 1)..n {
                        if !m[a][b].is_zero() {
                            found = Some((a, b));
                            break 'search;
                        }
                    }
                }
                let (a, b) = found?;
                if a != k {
                    m.swap(k, a);
                    for row in m.iter_mut() {
                        row.swap(k, a);
                    }
                }
                for col in 0..n {
                    let add = m[b][col].clone();
                    m[k][col] += add;
                }
                for row in 0..n {
                    let add = m[row][b].clone();
                    m[row][k] += add;
                }
            }
        }
        let pivot = m[k][k].clone();
        if pivot.is_zero() {
            return None;
        }
        if pivot.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        for r in (k + 1)..n {
            let factor = &m[r][k] / &pivot;
            if factor.is_zero() {
                continue;
            }
            for c in 0..n {
                let sub = &factor * &m[k][c];
                m[r][c] -= sub;
            }
            for row in 0..n {
                let sub = &factor * &m[row][k];
                m[row][r] -= sub;
            }
        }
    }
    Some((pos, neg))
}

fn pair_int(q: &[Vec<i64>], x: &[i64], y: &[i64]) -> BigInt {
    let mut acc = BigInt::zero();
    for (i, xi) in x.iter().enumerate() {
        if *xi == 0 {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            if *yj == 0 {
                continue;
            }
            acc += BigInt::from(*xi) * BigInt::from(q[i][j]) * BigInt::from(*yj);
        }
    }
    acc
}

fn pair_rat(q: &[Vec<i64>], x: &[BigRational], y: &[BigRational]) -> BigRational {
    let mut acc = BigRational::zero();
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            if yj.is_zero() {
                continue;
            }
            acc += xi * BigRational::from(BigInt::from(q[i][j])) * yj;
        }
    }
    acc
}

pub fn to_rational_vec(x: &[i64]) -> Vec<BigRational> {
    x.iter()
        .map(|&v| BigRational::from(BigInt::from(v)))
        .collect()
}

impl FourManifoldData {
    pub fn b2(&self) -> usize {
        self.b_plus + self.b_minus
    }

    /// Checks every structural invariant and returns the list of violations.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let b2 = self.b2();

        if self.b1 > MAX_GENERATORS {
            violations.push(Violation::TooManyGenerators(self.b1));
        }
        if self.b_plus == 0 {
            violations.push(Violation::NonPositiveBPlus);
        }

        let mut shape_ok = self.intersection_form.len() == b2;
        let mut bad = (self.intersection_form.len(), 0, 0);
        for (i, row) in self.intersection_form.iter().enumerate() {
            if row.len() != b2 {
                shape_ok = false;
                bad = (self.intersection_form.len(), i + 1, row.len());
                break;
            }
        }
        if !shape_ok {
            violations.push(Violation::WrongFormShape {
                expected: b2,
                rows: bad.0,
                bad_row: bad.1,
                bad_len: bad.2,
            });
            // nothing downstream of the form is checkable
            return ValidationReport { violations };
        }

        let mut symmetric = true;
        'sym: for i in 0..b2 {
            for j in (i + 1)..b2 {
                if self.intersection_form[i][j] != self.intersection_form[j][i] {
                    violations.push(Violation::AsymmetricForm {
                        i: i + 1,
                        j: j + 1,
                        a: self.intersection_form[i][j],
                        b: self.intersection_form[j][i],
                    });
                    symmetric = false;
                    break 'sym;
                }
            }
        }

        if symmetric {
            match exact_signature(&self.intersection_form) {
                None => violations.push(Violation::DegenerateForm),
                Some((pos, neg)) => {
                    if pos != self.b_plus || neg != self.b_minus {
                        violations.push(Violation::SignatureMismatch {
                            pos,
                            neg,
                            b_plus: self.b_plus,
                            b_minus: self.b_minus,
                        });
                    }
                }
            }
        }

        if self.triple.b1() != self.b1 || self.triple.b2() != b2 {
            violations.push(Violation::WrongTripleShape {
                tb1: self.triple.b1(),
                tb2: self.triple.b2(),
                b1: self.b1,
                b2,
            });
        } else if let Some((i, j, k)) = self.triple.antisymmetry_defect() {
            violations.push(Violation::TripleNotAntisymmetric { i, j, k });
        }

        for (indices, value) in self.quad.canonical_entries() {
            if indices.iter().any(|&x| x == 0 || x > self.b1) {
                violations.push(Violation::QuadOutOfRange {
                    indices: *indices,
                    b1: self.b1,
                });
            } else if self.b_plus == 1 && *value != 0 {
                violations.push(Violation::QuadMustVanish { indices: *indices });
            }
        }

        if self.ref_pos.len() != b2 {
            violations.push(Violation::RefWrongLength {
                expected: b2,
                found: self.ref_pos.len(),
            });
        } else {
            let square = pair_int(&self.intersection_form, &self.ref_pos, &self.ref_pos);
            if square <= BigInt::zero() {
                violations.push(Violation::RefNotPositive(square.to_string()));
            }
        }

        ValidationReport { violations }
    }
}

/// A validated, immutable manifold. All operations downstream take this
/// type, so their "the data validates" precondition holds by construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FourManifold {
    data: FourManifoldData,
}

impl FourManifold {
    pub fn new(data: FourManifoldData) -> Result<FourManifold, ValidationReport> {
        let report = data.validate();
        if report.is_valid() {
            Ok(FourManifold { data })
        } else {
            Err(report)
        }
    }

    pub fn data(&self) -> &FourManifoldData {
        &self.data
    }

    pub fn name(&self) -> &str {
        &self.data.name
    }

    pub fn b1(&self) -> usize {
        self.data.b1
    }

    pub fn b_plus(&self) -> usize {
        self.data.b_plus
    }

    pub fn b_minus(&self) -> usize {
        self.data.b_minus
    }

    pub fn b2(&self) -> usize {
        self.data.b2()
    }

    pub fn signature(&self) -> i64 {
        self.data.b_plus as i64 - self.data.b_minus as i64
    }

    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * self.data.b1 as i64 + self.data.b2() as i64
    }

    pub fn intersection_form(&self) -> &[Vec<i64>] {
        &self.data.intersection_form
    }

    pub fn triple(&self) -> &TripleTensor {
        &self.data.triple
    }

    pub fn quad(&self) -> &QuadTensor {
        &self.data.quad
    }

    pub fn ref_pos(&self) -> &[i64] {
        &self.data.ref_pos
    }

    pub fn pairing(&self, x: &[i64], y: &[i64]) -> BigInt {
        pair_int(&self.data.intersection_form, x, y)
    }

    pub fn pairing_rational(&self, x: &[BigRational], y: &[BigRational]) -> BigRational {
        pair_rat(&self.data.intersection_form, x, y)
    }
}

/// A characteristic class together with its derived indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharClass {
    coords: Vec<i64>,
    index: i64,
    dirac_index: i64,
    /// Opaque tag distinguishing torsion lifts with the same Chern class;
    /// nothing computed here depends on it.
    pub torsion_label: Option<String>,
}

impl CharClass {
    /// Coordinates of `c` in the `H²` basis.
    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    /// The index `w = (c² - 3σ - 2e)/4`: the expected dimension of the
    /// monopole moduli space.
    pub fn index(&self) -> i64 {
        self.index
    }

    /// The Dirac index `δ = (c² - σ)/8`.
    pub fn dirac_index(&self) -> i64 {
        self.dirac_index
    }
}

fn to_i64(v: &BigInt) -> Result<i64, Error> {
    v.to_i64().ok_or_else(|| Error::IndexOverflow(v.to_string()))
}

/// Checks the characteristic condition `Q(c, h_k) ≡ Q(h_k, h_k) (mod 2)` on
/// every basis vector, gates on `c² ≡ σ (mod 8)`, and computes the derived
/// indices exactly.
pub fn make_char_class(m: &FourManifold, c: &[i64]) -> Result<CharClass, Error> {
    let b2 = m.b2();
    if c.len() != b2 {
        return Err(Error::VectorLengthMismatch {
            expected: b2,
            found: c.len(),
        });
    }
    let q = m.intersection_form();
    for k in 0..b2 {
        let mut pairing = BigInt::zero();
        for (i, ci) in c.iter().enumerate() {
            pairing += BigInt::from(*ci) * BigInt::from(q[i][k]);
        }
        let diagonal = BigInt::from(q[k][k]);
        if (&pairing - &diagonal) % 2i32 != BigInt::zero() {
            return Err(Error::NotCharacteristic {
                basis_index: k + 1,
                pairing: pairing.to_string(),
                self_pairing: diagonal.to_string(),
            });
        }
    }

    let c_sq = m.pairing(c, c);
    let sigma = BigInt::from(m.signature());
    let euler = BigInt::from(m.euler_characteristic());

    let diff = &c_sq - &sigma;
    if &diff % 8i32 != BigInt::zero() {
        return Err(Error::LatticeInconsistency {
            difference: diff.to_string(),
        });
    }
    let dirac_index = to_i64(&(diff / 8i32))?;
    let index = to_i64(&((&c_sq - BigInt::from(3) * &sigma - BigInt::from(2) * &euler) / 4i32))?;

    Ok(CharClass {
        coords: c.to_vec(),
        index,
        dirac_index,
        torsion_label: None,
    })
}

/// The antisymmetric matrix `c_{ij} = Σ_k c[k] · t[i][j][k]` of triple
/// pairings against the class. Every entry must be even, which is exactly
/// what the characteristic condition forces for consistent tensor data.
pub fn cij_tensor(m: &FourManifold, cc: &CharClass) -> Result<Vec<Vec<i64>>, Error> {
    let b1 = m.b1();
    let mut out = vec![vec![0i64; b1]; b1];
    for i in 1..=b1 {
        for j in (i + 1)..=b1 {
            let mut acc = BigInt::zero();
            for (k, ck) in cc.coords().iter().enumerate() {
                if *ck == 0 {
                    continue;
                }
                acc += BigInt::from(*ck) * BigInt::from(m.triple().get(i, j, k + 1));
            }
            if &acc % 2i32 != BigInt::zero() {
                return Err(Error::ParityViolation {
                    i,
                    j,
                    value: acc.to_string(),
                });
            }
            let v = to_i64(&acc)?;
            out[i - 1][j - 1] = v;
            out[j - 1][i - 1] = -v;
        }
    }
    Ok(out)
}

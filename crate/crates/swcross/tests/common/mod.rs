//! Shared generators for the integration suites: random exterior elements,
//! random unimodular Lorentzian forms, and random characteristic vectors.

#![allow(dead_code)]

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use swcross::exterior::{ExtElement, MultiIndex};
use swcross::manifold::{FourManifold, FourManifoldData, QuadTensor, TripleTensor};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random element with up to `max_terms` monomials, coefficients in -9..=9.
pub fn random_element(rng: &mut ChaCha8Rng, b1: usize, max_terms: usize) -> ExtElement {
    let mask_cap: u64 = if b1 == 0 { 0 } else { (1u64 << b1) - 1 };
    let terms = rng.gen_range(0..=max_terms);
    ExtElement::from_integer_terms(
        b1,
        (0..terms).map(|_| {
            (
                MultiIndex::from_mask(rng.gen_range(0..=mask_cap)),
                rng.gen_range(-9..=9),
            )
        }),
    )
}

/// A random homogeneous element of the given degree.
pub fn random_homogeneous(
    rng: &mut ChaCha8Rng,
    b1: usize,
    degree: usize,
    max_terms: usize,
) -> ExtElement {
    let monomials = MultiIndex::all_of_degree(b1, degree);
    if monomials.is_empty() {
        return ExtElement::zero(b1);
    }
    let terms = rng.gen_range(0..=max_terms);
    ExtElement::from_integer_terms(
        b1,
        (0..terms).map(|_| {
            (
                monomials[rng.gen_range(0..monomials.len())],
                rng.gen_range(-9..=9),
            )
        }),
    )
}

/// A random integral element of pure degree 2.
pub fn random_degree_two(rng: &mut ChaCha8Rng, b1: usize) -> ExtElement {
    random_homogeneous(rng, b1, 2, 6)
}

/// A random antisymmetric matrix with even entries in -10..=10.
pub fn random_even_pairings(rng: &mut ChaCha8Rng, b1: usize) -> Vec<Vec<i64>> {
    let mut out = vec![vec![0i64; b1]; b1];
    for i in 0..b1 {
        for j in (i + 1)..b1 {
            let value = 2 * rng.gen_range(-5..=5);
            out[i][j] = value;
            out[j][i] = -value;
        }
    }
    out
}

/// A random unimodular change of basis applied to `diag(1, -1, …, -1)`,
/// together with a vector of positive square for the reference class.
pub fn random_lorentzian_form(rng: &mut ChaCha8Rng, rank: usize) -> (Vec<Vec<i64>>, Vec<i64>) {
    // D = diag(1, -1, ..., -1)
    let mut q: Vec<Vec<i64>> = (0..rank)
        .map(|i| {
            (0..rank)
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
        .collect();
    // U starts as the identity; V tracks U^{-1}
    let mut u: Vec<Vec<i64>> = (0..rank)
        .map(|i| (0..rank).map(|j| i64::from(i == j)).collect())
        .collect();
    let mut v = u.clone();
    let ops = rng.gen_range(0..=2 * rank);
    for _ in 0..ops {
        let i = rng.gen_range(0..rank);
        let mut j = rng.gen_range(0..rank);
        while rank > 1 && j == i {
            j = rng.gen_range(0..rank);
        }
        if rank == 1 {
            break;
        }
        let t: i64 = if rng.gen_bool(0.5) { 1 } else { -1 };
        // U <- E U with E adding t * row i to row j; V <- V E^{-1}
        for col in 0..rank {
            u[j][col] += t * u[i][col];
        }
        for row in 0..rank {
            let sub = t * v[row][j];
            v[row][i] -= sub;
        }
    }
    // Q = U^T D U
    let mut udu = vec![vec![0i64; rank]; rank];
    for a in 0..rank {
        for b in 0..rank {
            let mut acc = 0i64;
            for k in 0..rank {
                let d = if k == 0 { 1 } else { -1 };
                acc += u[k][a] * d * u[k][b];
            }
            udu[a][b] = acc;
        }
    }
    q.clone_from(&udu);
    // ref = U^{-1} e_0 has square +1
    let reference: Vec<i64> = (0..rank).map(|row| v[row][0]).collect();
    (q, reference)
}

/// Solves `Q c ≡ diag(Q) (mod 2)` over GF(2) (always solvable for a
/// unimodular form) and adds an even random vector.
pub fn random_characteristic_vector(
    rng: &mut ChaCha8Rng,
    q: &[Vec<i64>],
) -> Vec<i64> {
    let n = q.len();
    // augmented GF(2) elimination
    let mut rows: Vec<(Vec<u8>, u8)> = (0..n)
        .map(|i| {
            (
                (0..n).map(|j| (q[i][j].rem_euclid(2)) as u8).collect(),
                (q[i][i].rem_euclid(2)) as u8,
            )
        })
        .collect();
    let mut solution = vec![0u8; n];
    let mut pivot_row = 0usize;
    let mut pivots = Vec::new();
    for col in 0..n {
        if let Some(r) = (pivot_row..n).find(|&r| rows[r].0[col] == 1) {
            rows.swap(pivot_row, r);
            for other in 0..n {
                if other != pivot_row && rows[other].0[col] == 1 {
                    let (head, val) = rows[pivot_row].clone();
                    for (a, b) in rows[other].0.iter_mut().zip(&head) {
                        *a ^= *b;
                    }
                    rows[other].1 ^= val;
                }
            }
            pivots.push((pivot_row, col));
            pivot_row += 1;
        }
    }
    assert_eq!(pivot_row, n, "unimodular form must be invertible mod 2");
    for &(row, col) in &pivots {
        solution[col] = rows[row].1;
    }
    (0..n)
        .map(|i| i64::from(solution[i]) + 2 * rng.gen_range(-4..=4i64))
        .collect()
}

/// A validated manifold with a random Lorentzian form of the given rank.
pub fn random_lorentzian_manifold(
    rng: &mut ChaCha8Rng,
    rank: usize,
    b1: usize,
) -> FourManifold {
    let (q, reference) = random_lorentzian_form(rng, rank);
    FourManifold::new(FourManifoldData {
        name: "random-lorentzian".into(),
        b1,
        b_plus: 1,
        b_minus: rank - 1,
        intersection_form: q,
        triple: TripleTensor::zero(b1, rank),
        quad: QuadTensor::zero(),
        ref_pos: reference,
    })
    .expect("congruent image of a Lorentzian form stays Lorentzian")
}

//! Seeded random coefficient data for the campaigns. Entries are `p/q` with
//! `|p| ≤ 8` and `1 ≤ q ≤ 8`; every trial draws from its own stream so results
//! do not depend on how trials are scheduled.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::linalg::{cayley, RatMatrix};
use crate::mapspec::{ComplexPoly, ComplexPolyMap, Gauss};
use crate::scalar::rat;
use crate::spaces::SpaceLabel;
use crate::{Expr, Rational};

pub const MAX_NUMERATOR: i64 = 8;
pub const MAX_DENOMINATOR: i64 = 8;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Independent stream for `(seed, trial)`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(splitmix64(seed ^ splitmix64(trial)))
}

pub fn rational(rng: &mut impl Rng) -> Rational {
    rat(rng.gen_range(-MAX_NUMERATOR..=MAX_NUMERATOR), rng.gen_range(1..=MAX_DENOMINATOR))
}

pub fn nonzero_rational(rng: &mut impl Rng) -> Rational {
    let p = rng.gen_range(1..=MAX_NUMERATOR) * if rng.gen_bool(0.5) { 1 } else { -1 };
    rat(p, rng.gen_range(1..=MAX_DENOMINATOR))
}

/// Zero with probability `zero_prob`, otherwise a nonzero entry.
pub fn sparse_rational(rng: &mut impl Rng, zero_prob: f64) -> Rational {
    if rng.gen_bool(zero_prob) {
        Rational::zero()
    } else {
        nonzero_rational(rng)
    }
}

pub fn vector(rng: &mut impl Rng, n: usize) -> Vec<Rational> {
    (0..n).map(|_| rational(rng)).collect()
}

pub fn matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> RatMatrix {
    RatMatrix::from_rows((0..rows).map(|_| vector(rng, cols)).collect()).expect("rectangular")
}

pub fn nonzero_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> RatMatrix {
    RatMatrix::from_rows((0..rows).map(|_| (0..cols).map(|_| nonzero_rational(rng)).collect()).collect()).expect("rectangular")
}

pub fn symmetric(rng: &mut impl Rng, m: usize, zero_prob: f64) -> RatMatrix {
    let mut a = RatMatrix::zeros(m, m);
    for i in 0..m {
        for j in i..m {
            let v = sparse_rational(rng, zero_prob);
            a.set(i, j, v.clone());
            a.set(j, i, v);
        }
    }
    a
}

/// A nonzero symmetric matrix.
pub fn nonzero_symmetric(rng: &mut impl Rng, m: usize) -> RatMatrix {
    let mut a = symmetric(rng, m, 0.5);
    if a.is_zero() {
        let i = rng.gen_range(0..m);
        a.set(i, i, nonzero_rational(rng));
    }
    a
}

pub fn skew(rng: &mut impl Rng, n: usize) -> RatMatrix {
    let mut s = RatMatrix::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            let v = rational(rng);
            s.set(j, i, -v.clone());
            s.set(i, j, v);
        }
    }
    s
}

/// `n × m` matrix with orthonormal columns (`m ≤ n`), from the Cayley
/// transform of a random skew matrix.
pub fn orthonormal_columns(rng: &mut impl Rng, n: usize, m: usize) -> Result<RatMatrix> {
    Ok(cayley(&skew(rng, n))?.first_columns(m))
}

pub fn gauss(rng: &mut impl Rng) -> Gauss {
    (rational(rng), rational(rng))
}

/// Exponent vectors of total degree ≤ `degree` in `m` variables.
pub fn exponents(m: usize, degree: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut exps = vec![0u32; m];
    loop {
        if exps.iter().sum::<u32>() <= degree {
            out.push(exps.clone());
        }
        // odometer over [0, degree]^m
        let mut k = 0;
        while k < m && exps[k] == degree {
            exps[k] = 0;
            k += 1;
        }
        if k == m {
            return out;
        }
        exps[k] += 1;
    }
}

/// Random real polynomial of total degree ≤ `degree`, each monomial present
/// with probability `density`.
pub fn polynomial(rng: &mut impl Rng, m: usize, degree: u32, density: f64) -> Expr {
    let mut e = Expr::zero(m);
    for exps in exponents(m, degree) {
        if rng.gen_bool(density) {
            let mono = exps
                .iter()
                .enumerate()
                .fold(Expr::constant(m, nonzero_rational(rng)), |acc, (i, &k)| &acc * &Expr::var(m, i).expect("in range").pow(k));
            e = &e + &mono;
        }
    }
    e
}

/// Random polynomial in `m` complex variables of total degree ≤ `degree`,
/// each monomial present with probability `density`.
pub fn complex_poly(rng: &mut impl Rng, m: usize, degree: u32, density: f64) -> ComplexPoly {
    let terms: Vec<_> = exponents(m, degree).into_iter().filter(|_| rng.gen_bool(density)).collect();
    ComplexPoly::from_terms(m, terms.into_iter().map(|e| (e, gauss(rng))))
}

/// Affine polynomial `λ z_i + z₀` with the slope real or complex at random.
pub fn homothety(rng: &mut impl Rng, m: usize) -> ComplexPoly {
    let i = rng.gen_range(0..m);
    let mut e = vec![0; m];
    e[i] = 1;
    let lambda = if rng.gen_bool(0.5) { (nonzero_rational(rng), Rational::zero()) } else { (rational(rng), nonzero_rational(rng)) };
    ComplexPoly::from_terms(m, [(e, lambda), (vec![0; m], gauss(rng))])
}

pub fn complex_map(rng: &mut impl Rng, m: usize, n: usize, degree: u32) -> ComplexPolyMap {
    let comps = (0..n).map(|_| complex_poly(rng, m, degree, 0.4)).collect();
    ComplexPolyMap::new(comps).expect("shared arity")
}

/// A harmonic linear map with the positions of its structural zeros; every
/// other entry is nonzero so that flipping one structural zero breaks the
/// pattern.
#[derive(Clone, Debug)]
pub struct Pattern {
    pub a: RatMatrix,
    pub b: Vec<Rational>,
    pub zeros: Vec<(usize, usize)>,
}

fn masked(rng: &mut impl Rng, rows: usize, cols: usize, zero: impl Fn(usize, usize) -> bool) -> Pattern {
    let mut a = RatMatrix::zeros(rows, cols);
    let mut zeros = Vec::new();
    for i in 0..rows {
        for j in 0..cols {
            if zero(i, j) {
                zeros.push((i, j));
            } else {
                a.set(i, j, nonzero_rational(rng));
            }
        }
    }
    Pattern { a, b: vector(rng, rows), zeros }
}

/// Random instance of one of the harmonic linear normal forms for the pair,
/// or `None` when the pair has no structured positive family.
pub fn linear_pattern(rng: &mut impl Rng, domain: &SpaceLabel, codomain: &SpaceLabel) -> Result<Option<Pattern>> {
    let first = rng.gen_bool(0.5);
    linear_pattern_variant(rng, domain, codomain, first)
}

/// As [`linear_pattern`], choosing the first or second normal form where the
/// pair has two.
pub fn linear_pattern_variant(rng: &mut impl Rng, domain: &SpaceLabel, codomain: &SpaceLabel, first: bool) -> Result<Option<Pattern>> {
    use SpaceLabel::*;
    let (m, n) = (domain.dim(), codomain.dim());
    Ok(Some(match (domain, codomain) {
        (Nil, Euclidean(_)) => masked(rng, n, m, |_, j| if first { j == 0 } else { j == 2 }),
        (Sol, Euclidean(_)) => masked(rng, n, m, |_, j| if first { j == 2 } else { j < 2 }),
        (Euclidean(_), Nil) => masked(rng, n, m, |i, _| if first { i == 0 } else { i == 1 }),
        (Euclidean(_), Sol) => masked(rng, n, m, |i, _| if first { i == 2 } else { i < 2 }),
        (SphereStereographic(_), SphereStereographic(_)) if m <= n => {
            Pattern { a: orthonormal_columns(rng, n, m)?, b: vec![Rational::zero(); n], zeros: Vec::new() }
        }
        (Euclidean(_), SphereStereographic(_)) | (SphereStereographic(_), Euclidean(_)) => {
            let zeros = (0..n).flat_map(|i| (0..m).map(move |j| (i, j))).collect();
            Pattern { a: RatMatrix::zeros(n, m), b: vector(rng, n), zeros }
        }
        _ => return Ok(None),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_deterministic_and_distinct() {
        let a: Vec<Rational> = vector(&mut trial_rng(7, 3), 5);
        assert_eq!(a, vector(&mut trial_rng(7, 3), 5));
        assert_ne!(a, vector(&mut trial_rng(7, 4), 5));
    }

    #[test]
    fn cayley_columns_are_orthonormal() {
        let mut rng = trial_rng(1, 0);
        for (n, m) in [(2, 2), (3, 2), (4, 3)] {
            let a = orthonormal_columns(&mut rng, n, m).unwrap();
            assert_eq!(a.transpose().mul(&a).unwrap(), RatMatrix::identity(m));
        }
    }
}

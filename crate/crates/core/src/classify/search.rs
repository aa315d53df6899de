use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::RatMatrix;
use crate::mapspec::{ComplexPolyMap, MapSpec};
use crate::spaces::{ModelSpace, SpaceLabel};
use crate::Rational;

use super::predict::cross_validate;
use super::random::{self, trial_rng};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Linear,
    Quadratic,
    Holomorphic,
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "linear" => Ok(Family::Linear),
            "quadratic" => Ok(Family::Quadratic),
            "holomorphic" => Ok(Family::Holomorphic),
            _ => Err(Error::parse("family", format!("unknown family {s:?}; expected linear, quadratic or holomorphic"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Linear => "linear",
            Family::Quadratic => "quadratic",
            Family::Holomorphic => "holomorphic",
        })
    }
}

/// A map on which the predicted and the direct verdicts differ.
#[derive(Clone, Debug)]
pub struct Counterexample {
    pub trial: u64,
    pub spec: MapSpec,
    pub predicted_harmonic: bool,
    pub theorem: &'static str,
    /// Point where the direct ∞-tension is nonzero, when it is.
    pub witness: Option<Vec<Rational>>,
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub family: Family,
    pub trials: u64,
    pub seed: u64,
    /// Trials predicted harmonic; shows that both branches were exercised.
    pub predicted_harmonic: u64,
    pub counterexamples: Vec<Counterexample>,
}

impl SearchOutcome {
    pub fn survived(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

fn random_linear(rng: &mut impl Rng, d: &SpaceLabel, c: &SpaceLabel) -> Result<MapSpec> {
    let (m, n) = (d.dim(), c.dim());
    let spec = match rng.gen_range(0..8) {
        0..=2 => random::linear_pattern(rng, d, c)?.map(|p| MapSpec::affine(p.a, p.b)).transpose()?,
        3 => Some(MapSpec::affine(RatMatrix::zeros(n, m), random::vector(rng, n))?),
        _ => None,
    };
    match spec {
        Some(s) => Ok(s),
        None => {
            let zero_prob = if rng.gen_bool(0.5) { 0.0 } else { 0.5 };
            let rows = (0..n).map(|_| (0..m).map(|_| random::sparse_rational(rng, zero_prob)).collect()).collect();
            let b = if rng.gen_bool(0.5) { vec![Rational::default(); n] } else { random::vector(rng, n) };
            MapSpec::affine(RatMatrix::from_rows(rows)?, b)
        }
    }
}

fn random_quadratic(rng: &mut impl Rng, d: &SpaceLabel, c: &SpaceLabel) -> Result<MapSpec> {
    let (m, n) = (d.dim(), c.dim());
    let both_euclidean = matches!((d, c), (SpaceLabel::Euclidean(_), SpaceLabel::Euclidean(_)));
    let quad: Vec<RatMatrix> = if rng.gen_range(0..6) == 0 {
        vec![RatMatrix::zeros(m, m); n]
    } else {
        let zero_prob = rng.gen_range(0..3) as f64 * 0.3;
        (0..n).map(|_| random::symmetric(rng, m, zero_prob)).collect()
    };
    let affine = (both_euclidean || quad.iter().all(RatMatrix::is_zero)) && rng.gen_bool(0.5);
    if affine {
        MapSpec::quadratic(quad, random::matrix(rng, n, m), random::vector(rng, n))
    } else {
        MapSpec::pure_quadratic(quad)
    }
}

fn random_holomorphic(rng: &mut impl Rng, d: &SpaceLabel, c: &SpaceLabel) -> Result<MapSpec> {
    let (p, q) = (d.dim(), c.dim());
    if !matches!((d, c), (SpaceLabel::Euclidean(_), SpaceLabel::Euclidean(_))) || p % 2 != 0 || q % 2 != 0 {
        return Err(Error::UnsupportedPair(format!("holomorphic maps {d} -> {c}")));
    }
    let (m, n) = (p / 2, q / 2);
    let map = match rng.gen_range(0..4) {
        0 if n == 1 => ComplexPolyMap::new(vec![random::homothety(rng, m)])?,
        1 => random::complex_map(rng, m, n, 1),
        _ => random::complex_map(rng, m, n, 3),
    };
    Ok(MapSpec::holomorphic(map))
}

/// Draws the spec of one trial.
pub(crate) fn sample_spec(family: Family, rng: &mut impl Rng, d: &SpaceLabel, c: &SpaceLabel) -> Result<MapSpec> {
    match family {
        Family::Linear => random_linear(rng, d, c),
        Family::Quadratic => random_quadratic(rng, d, c),
        Family::Holomorphic => random_holomorphic(rng, d, c),
    }
}

/// Runs `trials` random cross-validations; trial `k` uses the stream
/// `(seed, k)`, so the outcome does not depend on the worker count.
pub fn falsify_search(family: Family, domain: &ModelSpace, codomain: &ModelSpace, trials: u64, seed: u64) -> Result<SearchOutcome> {
    if trials == 0 {
        return Err(Error::validation("trials", "must be at least 1"));
    }
    let (d, c) = (domain.label(), codomain.label());
    let results: Vec<(bool, Option<Counterexample>)> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let spec = sample_spec(family, &mut trial_rng(seed, trial), d, c)?;
            let cv = cross_validate(domain, codomain, &spec)?;
            let predicted =
                cv.predicted.ok_or_else(|| Error::UnsupportedPair(format!("no {family} classification for {d} -> {c}")))?;
            let bad = (predicted.harmonic != cv.direct.verdict.is_zero()).then(|| Counterexample {
                trial,
                predicted_harmonic: predicted.harmonic,
                theorem: predicted.theorem,
                witness: match cv.direct.verdict {
                    crate::calculus::TensionVerdict::NonZero { witness, .. } => Some(witness),
                    crate::calculus::TensionVerdict::Zero => None,
                },
                spec,
            });
            Ok((predicted.harmonic, bad))
        })
        .collect::<Result<_>>()?;
    let predicted_harmonic = results.iter().filter(|r| r.0).count() as u64;
    let counterexamples = results.into_iter().filter_map(|r| r.1).collect();
    Ok(SearchOutcome { family, trials, seed, predicted_harmonic, counterexamples })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(s: &str) -> ModelSpace {
        ModelSpace::parse(s).unwrap()
    }

    #[test]
    fn flat_linear_is_trivial() {
        let e2 = space("euclid:2");
        let out = falsify_search(Family::Linear, &e2, &e2, 10, 3).unwrap();
        assert!(out.survived());
        assert_eq!(out.predicted_harmonic, 10);
    }

    #[test]
    fn deterministic_under_seed() {
        let (d, c) = (space("nil"), space("euclid:2"));
        let a = falsify_search(Family::Linear, &d, &c, 40, 11).unwrap();
        let b = falsify_search(Family::Linear, &d, &c, 40, 11).unwrap();
        assert!(a.survived());
        assert_eq!(a.predicted_harmonic, b.predicted_harmonic);
        assert!(a.predicted_harmonic > 0 && a.predicted_harmonic < 40);
    }

    #[test]
    fn unsupported_pair_is_an_error() {
        let r = falsify_search(Family::Quadratic, &space("nil"), &space("sol"), 3, 1);
        assert!(matches!(r, Err(Error::UnsupportedPair(_))));
    }
}

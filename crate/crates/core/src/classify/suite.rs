//! Seeded campaigns, one per theorem id, plus the structured positive-family
//! and scalar-linear checks.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use rand::Rng;
use rayon::prelude::*;

use crate::calculus::{self, Mode, TensionVerdict};
use crate::error::{Error, Result};
use crate::linalg::RatMatrix;
use crate::mapspec::{ComplexPolyMap, MapSpec};
use crate::spaces::{ModelSpace, SpaceLabel};
use crate::{rat, Expr, Rational};

use super::lemma::matrix_lemma_condition;
use super::predict::{cross_validate, holomorphic_split};
use super::random::{self, trial_rng};
use super::search::{sample_spec, Family};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TheoremId {
    L2_1,
    T2_2,
    T2_3,
    L3_1,
    T3_2,
    T3_3,
    T4_1,
    T5_1,
    T5_2,
    T6_1,
    T6_2,
    T7_1,
    T7_2,
    T8_1,
    T8_3,
    Phm,
    Lem1_1,
}

pub const ALL_THEOREMS: [TheoremId; 17] = [
    TheoremId::L2_1,
    TheoremId::T2_2,
    TheoremId::T2_3,
    TheoremId::L3_1,
    TheoremId::T3_2,
    TheoremId::T3_3,
    TheoremId::T4_1,
    TheoremId::T5_1,
    TheoremId::T5_2,
    TheoremId::T6_1,
    TheoremId::T6_2,
    TheoremId::T7_1,
    TheoremId::T7_2,
    TheoremId::T8_1,
    TheoremId::T8_3,
    TheoremId::Phm,
    TheoremId::Lem1_1,
];

impl TheoremId {
    pub fn as_str(self) -> &'static str {
        use TheoremId::*;
        match self {
            L2_1 => "L2.1",
            T2_2 => "T2.2",
            T2_3 => "T2.3",
            L3_1 => "L3.1",
            T3_2 => "T3.2",
            T3_3 => "T3.3",
            T4_1 => "T4.1",
            T5_1 => "T5.1",
            T5_2 => "T5.2",
            T6_1 => "T6.1",
            T6_2 => "T6.2",
            T7_1 => "T7.1",
            T7_2 => "T7.2",
            T8_1 => "T8.1",
            T8_3 => "T8.3",
            Phm => "PHM",
            Lem1_1 => "LEM1.1",
        }
    }

    /// One-line statement of what the campaign checks.
    pub fn describe(self) -> &'static str {
        use TheoremId::*;
        match self {
            L2_1 => "symmetric A_i with (sum A_j^2)A_i + A_i(sum A_j^2) = 0 are all zero",
            T2_2 => "pure quadratic R^m -> R^n is infinity-harmonic iff constant",
            T2_3 => "quadratic plus affine R^m -> R^n is infinity-harmonic iff affine",
            L3_1 => "affine maps between conformally flat spaces: |A|^2 <A^a, grad(F/lambda o phi)> = 0",
            T3_2 => "linear sphere -> sphere is infinity-harmonic iff A = 0 or A^t A = I",
            T3_3 => "affine maps between Euclidean space and a sphere are infinity-harmonic iff constant",
            T4_1 => "pure quadratic maps between Euclidean space and a sphere are infinity-harmonic iff constant",
            T5_1 => "affine Nil -> R^n is infinity-harmonic iff column 1 or column 3 vanishes",
            T5_2 => "affine R^m -> Nil is infinity-harmonic iff row 1 or row 2 vanishes",
            T6_1 => "affine Sol -> R^n is infinity-harmonic iff column 3 or columns 1, 2 vanish",
            T6_2 => "affine R^m -> Sol is infinity-harmonic iff row 3 or rows 1, 2 vanish",
            T7_1 => "pure quadratic R^m -> Sol is infinity-harmonic iff constant",
            T7_2 => "pure quadratic R^m -> Nil is infinity-harmonic iff constant",
            T8_1 => "holomorphic C^m -> C^n is infinity-harmonic iff its real part is iff its imaginary part is",
            T8_3 => "holomorphic C^m -> C is infinity-harmonic iff lambda z_i + z0 with real lambda",
            Phm => "tau_p = |dphi|^(p-2) tau_2 + (p-2)|dphi|^(p-4) tau_inf at p = 4",
            Lem1_1 => "infinity-Laplacian equals the Hessian form (and the coordinate form on R^m); p-Laplacian splits at p = 4",
        }
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ALL_THEOREMS
            .iter()
            .copied()
            .find(|t| t.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::parse("theorem", format!("unknown theorem id {s:?}")))
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug)]
pub struct TheoremReport {
    pub id: TheoremId,
    pub trials: u64,
    pub seed: u64,
    /// Trials on which the criterion predicted (or the identity asserted) the
    /// positive case.
    pub positives: u64,
    /// One line per disagreement.
    pub disagreements: Vec<String>,
    /// Maps whose exact direct verdict was Zero.
    pub zero_cases: Vec<ZeroCase>,
    /// The maps behind map-level disagreements, in trial order.
    pub mismatches: Vec<Mismatch>,
}

impl TheoremReport {
    pub fn agreements(&self) -> u64 {
        self.trials - self.disagreements.len() as u64
    }

    pub fn passed(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// A map with an exact Zero verdict, kept for the numeric cross-check.
#[derive(Clone, Debug)]
pub struct ZeroCase {
    pub domain: String,
    pub codomain: String,
    pub spec: MapSpec,
}

impl ZeroCase {
    pub fn new(domain: &str, codomain: &str, spec: MapSpec) -> Self {
        ZeroCase { domain: domain.to_string(), codomain: codomain.to_string(), spec }
    }

    /// Largest normalized numeric ∞-tension over the standard sample points.
    pub fn numeric_residual(&self) -> Result<f64> {
        let (d, c) = (ModelSpace::parse(&self.domain)?, ModelSpace::parse(&self.codomain)?);
        calculus::numeric_residual(&d, &c, &self.spec.materialize(), calculus::SAMPLE_POINTS, calculus::SAMPLE_SEED)
    }
}

/// A map on which a criterion and the direct computation disagree.
#[derive(Clone, Debug)]
pub struct Mismatch {
    pub spec: MapSpec,
    pub predicted_harmonic: bool,
    pub direct_harmonic: bool,
}

struct Trial {
    positive: bool,
    failure: Option<String>,
    zero: Option<ZeroCase>,
    mismatch: Option<Mismatch>,
}

impl Trial {
    fn identity(failure: Option<String>) -> Self {
        Trial { positive: true, failure, zero: None, mismatch: None }
    }
}

fn exact_zero(d: &str, c: &str, spec: &MapSpec, direct: &calculus::TensionReport) -> Option<ZeroCase> {
    (direct.mode == Mode::Exact && direct.verdict.is_zero()).then(|| ZeroCase::new(d, c, spec.clone()))
}

fn space(name: &str) -> ModelSpace {
    ModelSpace::parse(name).expect("catalog space")
}

fn pick<'a>(rng: &mut impl Rng, items: &'a [(&'a str, &'a str)]) -> (&'a str, &'a str) {
    items[rng.gen_range(0..items.len())]
}

fn describe_spec(spec: &MapSpec) -> String {
    spec.to_json().to_string()
}

fn cross_trial(d: &str, c: &str, spec: &MapSpec) -> Result<Trial> {
    let (dom, cod) = (space(d), space(c));
    let cv = cross_validate(&dom, &cod, spec)?;
    let predicted = cv.predicted.ok_or_else(|| Error::UnsupportedPair(format!("{d} -> {c}")))?;
    let direct = cv.direct.verdict.is_zero();
    let failure = (predicted.harmonic != direct).then(|| {
        format!("{d} -> {c} {}: predicted harmonic={} ({}), direct harmonic={direct}", describe_spec(spec), predicted.harmonic, predicted.theorem)
    });
    let mismatch = failure.is_some().then(|| Mismatch { spec: spec.clone(), predicted_harmonic: predicted.harmonic, direct_harmonic: direct });
    Ok(Trial { positive: predicted.harmonic, failure, zero: exact_zero(d, c, spec, &cv.direct), mismatch })
}

fn family_trial(family: Family, rng: &mut impl Rng, pairs: &[(&str, &str)]) -> Result<Trial> {
    let (d, c) = pick(rng, pairs);
    let spec = sample_spec(family, rng, &space(d).label().clone(), &space(c).label().clone())?;
    cross_trial(d, c, &spec)
}

fn lemma_trial(rng: &mut impl Rng) -> Result<Trial> {
    let (m, n) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
    let quad: Vec<RatMatrix> = if rng.gen_range(0..8) == 0 {
        vec![RatMatrix::zeros(m, m); n]
    } else {
        let zero_prob = rng.gen_range(0..4) as f64 * 0.3;
        (0..n).map(|_| random::symmetric(rng, m, zero_prob)).collect()
    };
    let out = matrix_lemma_condition(&quad)?;
    let failure = (out.holds != out.all_zero).then(|| format!("m={m} n={n}: holds={} all_zero={}", out.holds, out.all_zero));
    Ok(Trial { positive: out.holds, failure, zero: None, mismatch: None })
}

fn sphere_linear_trial(rng: &mut impl Rng) -> Result<Trial> {
    let (m, n) = (rng.gen_range(1..=2), rng.gen_range(2..=3));
    let (m, n) = (m.min(n), n);
    let a = match rng.gen_range(0..4) {
        0 => random::orthonormal_columns(rng, n, m)?,
        1 => random::orthonormal_columns(rng, n, m)?.scale(&random::nonzero_rational(rng)),
        2 => RatMatrix::zeros(n, m),
        _ => random::matrix(rng, n, m),
    };
    let spec = MapSpec::linear(a)?;
    cross_trial(&format!("sphere:{m}"), &format!("sphere:{n}"), &spec)
}

fn conformal_trial(rng: &mut impl Rng) -> Result<Trial> {
    const PAIRS: [(&str, &str); 5] = [
        ("sphere:2", "sphere:2"),
        ("sphere:1", "sphere:2"),
        ("euclid:2", "conformal:2:1 + x^2 + 2*y^2"),
        ("conformal:2:2 + x^2:3", "euclid:1"),
        ("conformal:2:1 + y^2", "sphere:2"),
    ];
    let (d, c) = pick(rng, &PAIRS);
    let (m, n) = (space(d).dim(), space(c).dim());
    let a = match rng.gen_range(0..4) {
        0 => RatMatrix::zeros(n, m),
        1 if m <= n => random::orthonormal_columns(rng, n, m)?,
        _ => random::matrix(rng, n, m),
    };
    let b = if rng.gen_bool(0.25) { vec![Rational::zero(); n] } else { random::vector(rng, n) };
    cross_trial(d, c, &MapSpec::affine(a, b)?)
}

fn euclid_sphere_trial(rng: &mut impl Rng) -> Result<Trial> {
    const PAIRS: [(&str, &str); 4] = [("euclid:3", "sphere:2"), ("euclid:1", "sphere:2"), ("sphere:2", "euclid:2"), ("sphere:3", "euclid:1")];
    let (d, c) = pick(rng, &PAIRS);
    let (m, n) = (space(d).dim(), space(c).dim());
    let a = if rng.gen_range(0..3) == 0 { RatMatrix::zeros(n, m) } else { random::matrix(rng, n, m) };
    cross_trial(d, c, &MapSpec::affine(a, random::vector(rng, n))?)
}

fn holomorphic_split_trial(rng: &mut impl Rng) -> Result<Trial> {
    let (m, n) = (rng.gen_range(1..=2), 2);
    let degree = if rng.gen_bool(0.3) { 1 } else { 3 };
    let map = random::complex_map(rng, m, n, degree);
    let split = holomorphic_split(&map)?;
    let (dom, cod) = (space(&format!("euclid:{}", 2 * m)), space(&format!("euclid:{}", 2 * n)));
    let spec = MapSpec::holomorphic(map.clone());
    let report = calculus::infinity_tension(&dom, &cod, &spec)?;
    let direct = report.verdict.is_zero();
    let (u, v) = (split.real_part_harmonic, split.imag_part_harmonic);
    let failure = (!(u == v && v == direct)).then(|| format!("{:?}: map={direct} real part={u} imaginary part={v}", map.render()));
    let zero = exact_zero(&format!("euclid:{}", 2 * m), &format!("euclid:{}", 2 * n), &spec, &report);
    let mismatch = failure.is_some().then(|| Mismatch { spec, predicted_harmonic: u && v, direct_harmonic: direct });
    Ok(Trial { positive: direct, failure, zero, mismatch })
}

fn holomorphic_trial(rng: &mut impl Rng) -> Result<Trial> {
    let m = rng.gen_range(1..=2);
    let map = match rng.gen_range(0..4) {
        0 => ComplexPolyMap::new(vec![random::homothety(rng, m)])?,
        1 => random::complex_map(rng, m, 1, 1),
        _ => random::complex_map(rng, m, 1, 3),
    };
    cross_trial(&format!("complex:{m}"), "complex:1", &MapSpec::holomorphic(map))
}

fn phm_trial(rng: &mut impl Rng) -> Result<Trial> {
    let (m, n) = (rng.gen_range(1..=3), rng.gen_range(1..=2));
    let comps: Vec<Expr> = (0..n).map(|_| random::polynomial(rng, m, 3, 0.35)).collect();
    let (dom, cod) = (space(&format!("euclid:{m}")), space(&format!("euclid:{n}")));
    let r = calculus::phm_residual(&dom, &cod, &comps, 4)?;
    let names = crate::exprcore::default_names(m);
    let failure = (!calculus::all_zero(&r)).then(|| format!("{:?}", comps.iter().map(|c| c.render(&names)).collect::<Vec<_>>()));
    Ok(Trial::identity(failure))
}

/// Spaces on which the scalar operator identities are checked.
pub const SCALAR_SPACES: [&str; 6] = ["euclid:3", "semi-euclid:3:+-+", "sphere:3", "conformal:2:1 + x^2 + y^2", "nil", "sol"];

/// Checks `Δ∞u = Hess_u(∇u, ∇u)`, the coordinate form on Euclidean space, and
/// `Δ₄u = |∇u|²Δu + 2Δ∞u`.
pub fn scalar_identity_failure(sp: &ModelSpace, u: &Expr) -> Result<Option<String>> {
    let names = crate::exprcore::default_names(sp.dim());
    let inf = calculus::infinity_laplacian(sp, u)?;
    let mut bad = Vec::new();
    if !inf.equivalent(&calculus::hessian_form(sp, u)?) {
        bad.push("hessian form");
    }
    if matches!(sp.label(), SpaceLabel::Euclidean(_)) && !inf.equivalent(&calculus::euclidean_infinity_laplacian(u)?.into()) {
        bad.push("coordinate form");
    }
    if sp.is_riemannian() {
        let split = calculus::gradient_norm_sq(sp, u)?.mul(&calculus::laplace_beltrami(sp, u)?).add(&inf.scale(&rat(2, 1)));
        if !calculus::p_laplacian(sp, u, 4)?.equivalent(&split) {
            bad.push("p-Laplacian split");
        }
    }
    Ok((!bad.is_empty()).then(|| format!("{} u={}: {}", sp.label(), u.render(&names), bad.join(", "))))
}

fn scalar_trial(rng: &mut impl Rng) -> Result<Trial> {
    let name = SCALAR_SPACES[rng.gen_range(0..SCALAR_SPACES.len())];
    let sp = space(name);
    let u = random::polynomial(rng, sp.dim(), 3, 0.3);
    Ok(Trial::identity(scalar_identity_failure(&sp, &u)?))
}

fn run_trial(id: TheoremId, rng: &mut impl Rng) -> Result<Trial> {
    use TheoremId::*;
    match id {
        L2_1 => lemma_trial(rng),
        T2_2 | T2_3 => {
            let (m, n) = (rng.gen_range(1..=3), rng.gen_range(1..=2));
            let quad: Vec<RatMatrix> = if rng.gen_range(0..5) == 0 {
                vec![RatMatrix::zeros(m, m); n]
            } else {
                (0..n).map(|_| random::symmetric(rng, m, 0.5)).collect()
            };
            let spec = if id == T2_2 {
                MapSpec::pure_quadratic(quad)?
            } else {
                MapSpec::quadratic(quad, random::matrix(rng, n, m), random::vector(rng, n))?
            };
            cross_trial(&format!("euclid:{m}"), &format!("euclid:{n}"), &spec)
        }
        L3_1 => conformal_trial(rng),
        T3_2 => sphere_linear_trial(rng),
        T3_3 => euclid_sphere_trial(rng),
        T4_1 => family_trial(Family::Quadratic, rng, &[("euclid:2", "sphere:2"), ("euclid:1", "sphere:2"), ("sphere:2", "euclid:1"), ("sphere:2", "euclid:2")]),
        T5_1 => family_trial(Family::Linear, rng, &[("nil", "euclid:1"), ("nil", "euclid:2"), ("nil", "euclid:3")]),
        T5_2 => family_trial(Family::Linear, rng, &[("euclid:1", "nil"), ("euclid:2", "nil"), ("euclid:3", "nil")]),
        T6_1 => family_trial(Family::Linear, rng, &[("sol", "euclid:1"), ("sol", "euclid:2"), ("sol", "euclid:3")]),
        T6_2 => family_trial(Family::Linear, rng, &[("euclid:1", "sol"), ("euclid:2", "sol"), ("euclid:3", "sol")]),
        T7_1 => family_trial(Family::Quadratic, rng, &[("euclid:1", "sol"), ("euclid:2", "sol")]),
        T7_2 => family_trial(Family::Quadratic, rng, &[("euclid:1", "nil"), ("euclid:2", "nil")]),
        T8_1 => holomorphic_split_trial(rng),
        T8_3 => holomorphic_trial(rng),
        Phm => phm_trial(rng),
        Lem1_1 => scalar_trial(rng),
    }
}

/// Runs `trials` seeded trials of one theorem's campaign in parallel.
pub fn run_theorem(id: TheoremId, trials: u64, seed: u64) -> Result<TheoremReport> {
    if trials == 0 {
        return Err(Error::validation("trials", "must be at least 1"));
    }
    let results: Vec<Trial> = (0..trials).into_par_iter().map(|k| run_trial(id, &mut trial_rng(seed, k))).collect::<Result<_>>()?;
    let positives = results.iter().filter(|t| t.positive).count() as u64;
    let mut disagreements = Vec::new();
    let mut zero_cases = Vec::new();
    let mut mismatches = Vec::new();
    for (k, t) in results.into_iter().enumerate() {
        disagreements.extend(t.failure.map(|f| format!("trial {k}: {f}")));
        zero_cases.extend(t.zero);
        mismatches.extend(t.mismatch);
    }
    Ok(TheoremReport { id, trials, seed, positives, disagreements, zero_cases, mismatches })
}

/// Structured harmonic families: the Nil/Sol row and column patterns and
/// Cayley-orthogonal sphere maps.
pub const POSITIVE_FAMILIES: [(&str, &str, &str); 9] = [
    ("nil -> R^n, column 1 zero", "nil", "euclid:2"),
    ("nil -> R^n, column 3 zero", "nil", "euclid:2"),
    ("sol -> R^n, column 3 zero", "sol", "euclid:2"),
    ("sol -> R^n, columns 1, 2 zero", "sol", "euclid:2"),
    ("R^m -> nil, row 1 zero", "euclid:2", "nil"),
    ("R^m -> nil, row 2 zero", "euclid:2", "nil"),
    ("R^m -> sol, row 3 zero", "euclid:2", "sol"),
    ("R^m -> sol, rows 1, 2 zero", "euclid:2", "sol"),
    ("sphere -> sphere, Cayley isometry", "sphere:2", "sphere:3"),
];

#[derive(Clone, Debug)]
pub struct FamilyCheck {
    pub family: &'static str,
    /// Instances whose direct verdict was Zero, out of `flips`.
    pub zero_instances: usize,
    pub flips: usize,
    /// Perturbed instances whose direct verdict was NonZero.
    pub flipped: usize,
    pub zero_cases: Vec<ZeroCase>,
}

impl FamilyCheck {
    pub fn passed(&self) -> bool {
        self.zero_instances == self.flips && self.flipped == self.flips
    }
}

fn perturbation(rng: &mut impl Rng, current: &Rational) -> Rational {
    // keeps a unit column off the unit sphere and the entry nonzero
    loop {
        let d = random::nonzero_rational(rng);
        if d != -(current * rat(2, 1)) && d != -current.clone() {
            return d;
        }
    }
}

/// For `flips` random instances of family `index`: the instance must be
/// harmonic, and changing one structurally zero entry (any entry for the
/// isometries) must make it non-harmonic.
pub fn positive_family_check(index: usize, flips: usize, seed: u64) -> Result<FamilyCheck> {
    let (family, d, c) = POSITIVE_FAMILIES[index];
    let (dom, cod) = (space(d), space(c));
    let first = index % 2 == 0;
    let outcomes: Vec<(Option<ZeroCase>, bool)> = (0..flips as u64)
        .into_par_iter()
        .map(|k| {
            let rng = &mut trial_rng(seed ^ ((index as u64) << 32), k);
            let p = random::linear_pattern_variant(rng, dom.label(), cod.label(), first)?.expect("structured pair");
            let spec = MapSpec::affine(p.a.clone(), p.b.clone())?;
            let zero = exact_zero(d, c, &spec, &calculus::infinity_tension(&dom, &cod, &spec)?);
            let (i, j) = if p.zeros.is_empty() {
                (rng.gen_range(0..p.a.rows()), rng.gen_range(0..p.a.cols()))
            } else {
                p.zeros[rng.gen_range(0..p.zeros.len())]
            };
            let mut a = p.a.clone();
            let v = a.get(i, j) + perturbation(rng, a.get(i, j));
            a.set(i, j, v);
            let verdict = calculus::infinity_tension(&dom, &cod, &MapSpec::affine(a, p.b)?)?.verdict;
            Ok((zero, matches!(verdict, TensionVerdict::NonZero { .. })))
        })
        .collect::<Result<_>>()?;
    let flipped = outcomes.iter().filter(|o| o.1).count();
    let zero_cases: Vec<ZeroCase> = outcomes.into_iter().filter_map(|o| o.0).collect();
    Ok(FamilyCheck { family, zero_instances: zero_cases.len(), flips, flipped, zero_cases })
}

#[derive(Clone, Debug)]
pub struct ScalarCheck {
    pub cases: usize,
    pub mismatches: Vec<String>,
    /// Functions with `Δ∞f = 0`, as maps into the line.
    pub zero_cases: Vec<ZeroCase>,
}

/// `f = Ax + By + Cz` on Nil is ∞-harmonic iff `A = 0` or `C = 0`; on Sol iff
/// `C = 0` or `A = B = 0`. Runs all sign patterns in `{−1, 0, 1}³` and
/// `random` seeded rational triples.
pub fn scalar_linear_check(random_cases: usize, seed: u64) -> Result<ScalarCheck> {
    let mut triples: Vec<[Rational; 3]> = Vec::new();
    for a in -1..=1 {
        for b in -1..=1 {
            for c in -1..=1 {
                triples.push([rat(a, 1), rat(b, 1), rat(c, 1)]);
            }
        }
    }
    for k in 0..random_cases as u64 {
        let rng = &mut trial_rng(seed, k);
        triples.push([0, 1, 2].map(|_| random::sparse_rational(rng, 0.3)));
    }
    let (nil, sol) = (space("nil"), space("sol"));
    let mut mismatches = Vec::new();
    let mut zero_cases = Vec::new();
    for [a, b, c] in &triples {
        let spec = MapSpec::linear(RatMatrix::from_rows(vec![vec![a.clone(), b.clone(), c.clone()]])?)?;
        let f = spec.materialize().remove(0);
        let nil_pred = a.is_zero() || c.is_zero();
        let sol_pred = c.is_zero() || (a.is_zero() && b.is_zero());
        for (sp, pred, name) in [(&nil, nil_pred, "nil"), (&sol, sol_pred, "sol")] {
            let direct = calculus::infinity_laplacian(sp, &f)?.is_zero();
            if direct {
                zero_cases.push(ZeroCase::new(name, "euclid:1", spec.clone()));
            }
            if direct != pred {
                mismatches.push(format!("{name} (A, B, C) = ({a}, {b}, {c}): predicted {pred}, direct {direct}"));
            }
        }
    }
    Ok(ScalarCheck { cases: triples.len(), mismatches, zero_cases })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip() {
        for id in ALL_THEOREMS {
            assert_eq!(id.as_str().parse::<TheoremId>().unwrap(), id);
        }
        assert!("T9.9".parse::<TheoremId>().is_err());
    }

    #[test]
    fn small_campaigns_agree() {
        for id in [TheoremId::L2_1, TheoremId::T5_1, TheoremId::T6_2, TheoremId::T2_2, TheoremId::Lem1_1] {
            let r = run_theorem(id, 20, 5).unwrap();
            assert!(r.passed(), "{id}: {:?}", r.disagreements);
        }
    }

    #[test]
    fn scalar_linear_patterns() {
        let r = scalar_linear_check(10, 2).unwrap();
        assert_eq!(r.cases, 37);
        assert!(r.mismatches.is_empty(), "{:?}", r.mismatches);
    }

    #[test]
    fn cayley_family_flips() {
        let r = positive_family_check(8, 5, 1).unwrap();
        assert!(r.passed(), "{r:?}");
    }
}

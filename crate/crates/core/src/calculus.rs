//! Differential operators on model spaces: metric gradients, energy density,
//! ∞-tension, the scalar ∞-Laplacian and Hessian form, Laplace–Beltrami and
//! p-Laplacian, harmonic tension and p-tension.
//!
//! The ∞-tension components are `T^α = g(grad φ^α, grad |dφ|²)`, i.e. twice
//! the component of `dφ(grad ½|dφ|²)`; the factor ½ only enters the p-tension
//! identity `τ_p = |dφ|^{p−2}τ₂ + (p−2)|dφ|^{p−4}·½T`.

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cleared::{self, Cleared};
use crate::error::{Error, Result};
use crate::mapspec::MapSpec;
use crate::scalar::rat;
use crate::spaces::ModelSpace;
use crate::{Expr, Rational};

/// Points sampled by the numeric route.
pub const SAMPLE_POINTS: usize = 64;
/// Absolute tolerance after normalization.
pub const TOLERANCE: f64 = 1e-9;
/// Largest denominator of sampled rational coordinates.
pub const MAX_DENOMINATOR: i64 = 64;
/// Seed of the standard numeric sample points.
pub const SAMPLE_SEED: u64 = 0x5eed_0f_1a;
const FD_STEP: f64 = 1e-4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exact,
    NumericSampled,
}

#[derive(Clone, Debug, PartialEq)]
pub enum TensionVerdict {
    Zero,
    /// `value` is the component `component` evaluated at `witness`.
    NonZero { witness: Vec<Rational>, component: usize, value: f64 },
}

impl TensionVerdict {
    pub fn is_zero(&self) -> bool {
        matches!(self, TensionVerdict::Zero)
    }
}

#[derive(Clone, Debug)]
pub struct TensionReport {
    /// `|dφ|²`; absent when only the numeric route applies.
    pub energy_density: Option<Cleared>,
    pub infinity_tension: Vec<Cleared>,
    pub verdict: TensionVerdict,
    pub mode: Mode,
}

fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn to_f64_point(p: &[Rational]) -> Vec<f64> {
    p.iter().map(to_f64).collect()
}

/// Deterministic rational points in `[−1, 1]^m` with denominators at most
/// [`MAX_DENOMINATOR`].
pub fn sample_points(m: usize, count: usize, seed: u64) -> Vec<Vec<Rational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            (0..m)
                .map(|_| {
                    let q = rng.gen_range(1..=MAX_DENOMINATOR);
                    rat(rng.gen_range(-q..=q), q)
                })
                .collect()
        })
        .collect()
}

fn check_arity(space: &ModelSpace, e: &Expr, what: &str) -> Result<()> {
    if e.nvars() != space.dim() {
        return Err(Error::Dimension(format!("{what} has {} coordinates, space has {}", e.nvars(), space.dim())));
    }
    Ok(())
}

fn partials(e: &Cleared, m: usize) -> Result<Vec<Cleared>> {
    (0..m).map(|i| e.partial(i)).collect()
}

fn expr_partials(e: &Expr, m: usize) -> Result<Vec<Cleared>> {
    (0..m).map(|i| e.partial(i).map(Cleared::from)).collect()
}

/// `Σ_ij g^{ij} a_i b_j`.
fn cometric(space: &ModelSpace, a: &[Cleared], b: &[Cleared]) -> Cleared {
    let m = space.dim();
    let g = space.g_upper();
    let terms = (0..m).flat_map(|i| (0..m).map(move |j| (i, j))).filter_map(|(i, j)| {
        if g[i][j].is_zero() || a[i].is_zero() || b[j].is_zero() {
            None
        } else {
            Some(g[i][j].mul(&a[i]).mul(&b[j]))
        }
    });
    cleared::sum(m, terms)
}

/// `(grad f)^i = Σ_j g^{ij} ∂_j f`.
pub fn metric_gradient(space: &ModelSpace, f: &Expr) -> Result<Vec<Cleared>> {
    check_arity(space, f, "function")?;
    let m = space.dim();
    let df = expr_partials(f, m)?;
    Ok((0..m)
        .map(|i| cleared::sum(m, (0..m).map(|j| space.g_upper()[i][j].mul(&df[j]))).reduce())
        .collect())
}

fn check_map(domain: &ModelSpace, codomain: &ModelSpace, comps: &[Expr]) -> Result<()> {
    if comps.len() != codomain.dim() {
        return Err(Error::Dimension(format!("map has {} components, codomain has dimension {}", comps.len(), codomain.dim())));
    }
    for c in comps {
        check_arity(domain, c, "map component")?;
    }
    Ok(())
}

/// Jacobian entries `∂_i φ^α`, indexed `[α][i]`.
fn jacobian(domain: &ModelSpace, comps: &[Expr]) -> Result<Vec<Vec<Cleared>>> {
    comps.iter().map(|c| expr_partials(c, domain.dim())).collect()
}

/// `|dφ|² = g^{ij} ∂_iφ^α ∂_jφ^β (h_αβ ∘ φ)` for explicit components.
pub fn energy_density_of(domain: &ModelSpace, codomain: &ModelSpace, comps: &[Expr]) -> Result<Cleared> {
    check_map(domain, codomain, comps)?;
    let n = codomain.dim();
    let jac = jacobian(domain, comps)?;
    let h = codomain.g_lower_at(comps)?;
    let mut terms = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if h[a][b].is_zero() {
                continue;
            }
            let inner = cometric(domain, &jac[a], &jac[b]);
            if !inner.is_zero() {
                terms.push(h[a][b].mul(&inner));
            }
        }
    }
    Ok(cleared::sum(domain.dim(), terms).reduce())
}

pub fn energy_density(domain: &ModelSpace, codomain: &ModelSpace, spec: &MapSpec) -> Result<Cleared> {
    energy_density_of(domain, codomain, &spec.materialize())
}

/// Exact `(|dφ|², T)` with `T^α = g(grad φ^α, grad |dφ|²)`.
pub fn infinity_tension_exact(domain: &ModelSpace, codomain: &ModelSpace, comps: &[Expr]) -> Result<(Cleared, Vec<Cleared>)> {
    let e = energy_density_of(domain, codomain, comps)?;
    let de = partials(&e, domain.dim())?;
    let jac = jacobian(domain, comps)?;
    let t = jac.iter().map(|row| cometric(domain, row, &de).reduce()).collect();
    Ok((e, t))
}

/// Runs the exact computation, falling back to numeric sampling when a
/// composition leaves the expression class.
pub fn infinity_tension(domain: &ModelSpace, codomain: &ModelSpace, spec: &MapSpec) -> Result<TensionReport> {
    infinity_tension_of(domain, codomain, &spec.materialize())
}

pub fn infinity_tension_of(domain: &ModelSpace, codomain: &ModelSpace, comps: &[Expr]) -> Result<TensionReport> {
    match infinity_tension_exact(domain, codomain, comps) {
        Ok((e, t)) => {
            let verdict = if t.iter().all(Cleared::is_zero) { TensionVerdict::Zero } else { find_witness(domain.dim(), &t) };
            Ok(TensionReport { energy_density: Some(e), infinity_tension: t, verdict, mode: Mode::Exact })
        }
        Err(Error::Unsupported(_)) => {
            let verdict = numeric_verdict(domain, codomain, comps, SAMPLE_POINTS, SAMPLE_SEED)?;
            Ok(TensionReport { energy_density: None, infinity_tension: Vec::new(), verdict, mode: Mode::NumericSampled })
        }
        Err(e) => Err(e),
    }
}

/// A point where some nonzero component is visibly nonzero: the all-ones
/// point first, then deterministic samples; the largest value wins if none
/// clears the tolerance.
fn find_witness(m: usize, comps: &[Cleared]) -> TensionVerdict {
    let mut candidates = vec![vec![rat(1, 1); m]];
    candidates.extend(sample_points(m, 255, SAMPLE_SEED));
    let mut best: Option<(Vec<Rational>, usize, f64)> = None;
    for p in candidates {
        let pf = to_f64_point(&p);
        for (k, c) in comps.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let v = match c.evaluate(&pf) {
                Ok(v) if v.is_finite() => v,
                _ => continue,
            };
            if v.abs() > TOLERANCE {
                return TensionVerdict::NonZero { witness: p, component: k, value: v };
            }
            if best.as_ref().is_none_or(|b| v.abs() > b.2.abs()) {
                best = Some((p.clone(), k, v));
            }
        }
    }
    let (witness, component, value) = best.unwrap_or((vec![rat(1, 1); m], 0, 0.0));
    TensionVerdict::NonZero { witness, component, value }
}

// ---------------------------------------------------------------------------
// numeric route

/// Pointwise evaluation of the map data used by the numeric route.
struct NumericMap<'a> {
    domain: &'a ModelSpace,
    codomain: &'a ModelSpace,
    comps: &'a [Expr],
    jac: Vec<Vec<Expr>>,
}

impl<'a> NumericMap<'a> {
    fn new(domain: &'a ModelSpace, codomain: &'a ModelSpace, comps: &'a [Expr]) -> Result<Self> {
        check_map(domain, codomain, comps)?;
        let jac = comps.iter().map(|c| (0..domain.dim()).map(|i| c.partial(i)).collect()).collect::<Result<_>>()?;
        Ok(NumericMap { domain, codomain, comps, jac })
    }

    fn jacobian_at(&self, p: &[f64]) -> Result<Vec<Vec<f64>>> {
        self.jac.iter().map(|row| row.iter().map(|e| e.evaluate(p)).collect()).collect()
    }

    fn g_upper_at(&self, p: &[f64]) -> Result<Vec<Vec<f64>>> {
        self.domain.g_upper().iter().map(|row| row.iter().map(|e| e.evaluate(p)).collect()).collect()
    }

    /// `|dφ|²` and the sum of the absolute values of its summands, which is
    /// the scale of its rounding error when the metrics are indefinite.
    fn energy_parts_at(&self, p: &[f64]) -> Result<(f64, f64)> {
        let q: Vec<f64> = self.comps.iter().map(|c| c.evaluate(p)).collect::<Result<_>>()?;
        let h: Vec<Vec<f64>> =
            self.codomain.g_lower().iter().map(|row| row.iter().map(|e| e.evaluate(&q)).collect()).collect::<Result<_>>()?;
        let j = self.jacobian_at(p)?;
        let g = self.g_upper_at(p)?;
        let (m, n) = (self.domain.dim(), self.codomain.dim());
        let (mut s, mut scale) = (0.0, 0.0);
        for a in 0..n {
            for b in 0..n {
                for i in 0..m {
                    for k in 0..m {
                        let t = g[i][k] * j[a][i] * j[b][k] * h[a][b];
                        s += t;
                        scale += t.abs();
                    }
                }
            }
        }
        Ok((s, scale))
    }

    fn energy_at(&self, p: &[f64]) -> Result<f64> {
        Ok(self.energy_parts_at(p)?.0)
    }

    fn energy_gradient_at(&self, p: &[f64]) -> Result<Vec<f64>> {
        (0..p.len()).map(|i| central_difference(|q| self.energy_at(q), p, i, FD_STEP)).collect()
    }

    /// Raw components `T^α(p)` and their normalizers.
    fn tension_at(&self, p: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
        let (_, e) = self.energy_parts_at(p)?;
        let de = self.energy_gradient_at(p)?;
        let j = self.jacobian_at(p)?;
        let g = self.g_upper_at(p)?;
        let m = self.domain.dim();
        let mut vals = Vec::with_capacity(j.len());
        let mut norms = Vec::with_capacity(j.len());
        for row in &j {
            let mut v = 0.0;
            let mut w = 1.0;
            for i in 0..m {
                for k in 0..m {
                    let c = g[i][k] * row[i];
                    v += c * de[k];
                    w += c.abs() * (de[k].abs() + e);
                }
            }
            vals.push(v);
            norms.push(w);
        }
        Ok((vals, norms))
    }
}

/// Fourth-order central difference of `f` along coordinate `i`.
pub fn central_difference(f: impl Fn(&[f64]) -> Result<f64>, p: &[f64], i: usize, h: f64) -> Result<f64> {
    let at = |d: f64| {
        let mut q = p.to_vec();
        q[i] += d;
        f(&q)
    };
    Ok((-at(2.0 * h)? + 8.0 * at(h)? - 8.0 * at(-h)? + at(-2.0 * h)?) / (12.0 * h))
}

/// Largest normalized ∞-tension residual over `count` sampled points,
/// computed without symbolic composition (finite-difference energy gradient).
pub fn numeric_residual(domain: &ModelSpace, codomain: &ModelSpace, comps: &[Expr], count: usize, seed: u64) -> Result<f64> {
    let nm = NumericMap::new(domain, codomain, comps)?;
    let mut worst: f64 = 0.0;
    for p in sample_points(domain.dim(), count, seed) {
        let (vals, norms) = nm.tension_at(&to_f64_point(&p))?;
        for (v, w) in vals.iter().zip(&norms) {
            worst = worst.max(v.abs() / w);
        }
    }
    Ok(worst)
}

fn numeric_verdict(domain: &ModelSpace, codomain: &ModelSpace, comps: &[Expr], count: usize, seed: u64) -> Result<TensionVerdict> {
    let nm = NumericMap::new(domain, codomain, comps)?;
    for p in sample_points(domain.dim(), count, seed) {
        let (vals, norms) = nm.tension_at(&to_f64_point(&p))?;
        for (k, (v, w)) in vals.iter().zip(&norms).enumerate() {
            if !(v.abs() / w <= TOLERANCE) {
                return Ok(TensionVerdict::NonZero { witness: p, component: k, value: *v });
            }
        }
    }
    Ok(TensionVerdict::Zero)
}

/// Numeric-route verdict for a map, independent of the symbolic pipeline.
pub fn numeric_tension_verdict(domain: &ModelSpace, codomain: &ModelSpace, spec: &MapSpec) -> Result<TensionVerdict> {
    numeric_verdict(domain, codomain, &spec.materialize(), SAMPLE_POINTS, SAMPLE_SEED)
}

/// Largest absolute value of the exact components over the sample points.
pub fn sampled_max_abs(comps: &[Cleared], m: usize, count: usize, seed: u64) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for p in sample_points(m, count, seed) {
        let pf = to_f64_point(&p);
        for c in comps {
            worst = worst.max(c.evaluate(&pf)?.abs());
        }
    }
    Ok(worst)
}

// ---------------------------------------------------------------------------
// scalar operators

/// `|∇u|²_g`.
pub fn gradient_norm_sq(space: &ModelSpace, u: &Expr) -> Result<Cleared> {
    check_arity(space, u, "function")?;
    let du = expr_partials(u, space.dim())?;
    Ok(cometric(space, &du, &du).reduce())
}

/// `Δ∞u = ½ g(∇u, ∇|∇u|²)`.
pub fn infinity_laplacian(space: &ModelSpace, u: &Expr) -> Result<Cleared> {
    let m = space.dim();
    let du = expr_partials(u, m)?;
    let n2 = gradient_norm_sq(space, u)?;
    let dn2 = partials(&n2, m)?;
    Ok(cometric(space, &du, &dn2).scale(&rat(1, 2)).reduce())
}

/// `Hess_u(∇u, ∇u)` with `Hess_ij = ∂_i∂_j u − Γ^k_ij ∂_k u`.
pub fn hessian_form(space: &ModelSpace, u: &Expr) -> Result<Cleared> {
    check_arity(space, u, "function")?;
    let m = space.dim();
    let du = expr_partials(u, m)?;
    let grad = metric_gradient(space, u)?;
    let mut terms = Vec::new();
    for i in 0..m {
        // the form is symmetric, so off-diagonal pairs are counted twice
        for j in i..m {
            if grad[i].is_zero() || grad[j].is_zero() {
                continue;
            }
            let mut h = Cleared::from(du[i].partial(j)?);
            for (k, duk) in du.iter().enumerate() {
                let c = space.christoffel(k, i, j);
                if !c.is_zero() && !duk.is_zero() {
                    h = h.sub(&c.mul(duk));
                }
            }
            let t = h.mul(&grad[i]).mul(&grad[j]);
            terms.push(if i == j { t } else { t.scale(&Rational::from_integer(2.into())) });
        }
    }
    Ok(cleared::sum(m, terms).reduce())
}

/// Flat coordinate form `Σ u_ij u_i u_j`.
pub fn euclidean_infinity_laplacian(u: &Expr) -> Result<Expr> {
    let m = u.nvars();
    let du: Vec<Expr> = (0..m).map(|i| u.partial(i)).collect::<Result<_>>()?;
    let mut s = Expr::zero(m);
    for i in 0..m {
        for j in 0..m {
            s = &s + &(&(&du[i].partial(j)? * &du[i]) * &du[j]);
        }
    }
    Ok(s)
}

/// Laplace–Beltrami `Δu = ρ⁻¹ ∂_i(ρ g^{ij} ∂_j u)`, `ρ = √|det g|`.
pub fn laplace_beltrami(space: &ModelSpace, u: &Expr) -> Result<Cleared> {
    check_arity(space, u, "function")?;
    let m = space.dim();
    let du = expr_partials(u, m)?;
    let mut div = Cleared::zero(m);
    for i in 0..m {
        let flux = cleared::sum(m, (0..m).map(|j| space.g_upper()[i][j].mul(&du[j])));
        div = div.add(&space.volume().mul(&flux).partial(i)?);
    }
    Ok(space.inv_volume().mul(&div).reduce())
}

fn check_even_p(p: u32, min: u32) -> Result<()> {
    if p % 2 != 0 || p < min {
        return Err(Error::Unsupported(format!("exact mode needs an even p >= {min}, got {p}")));
    }
    Ok(())
}

/// `|∇u|^{p−4}(|∇u|²Δu + (p−2)Δ∞u)` for even `p ≥ 4`, and `Δu` at `p = 2`.
pub fn p_laplacian(space: &ModelSpace, u: &Expr, p: u32) -> Result<Cleared> {
    check_even_p(p, 2)?;
    let lap = laplace_beltrami(space, u)?;
    if p == 2 {
        return Ok(lap);
    }
    let n2 = gradient_norm_sq(space, u)?;
    let inner = n2.mul(&lap).add(&infinity_laplacian(space, u)?.scale(&Rational::from_integer((p - 2).into())));
    Ok(n2.pow((p - 4) / 2).mul(&inner).reduce())
}

/// `|∇u|^{p−2}(Δu + (p−2)|∇u|⁻²Δ∞u)` at a point, for real `p > 2`.
pub fn p_laplacian_numeric(space: &ModelSpace, u: &Expr, p: f64, point: &[f64]) -> Result<f64> {
    if !(p > 2.0) {
        return Err(Error::Unsupported(format!("numeric p-Laplacian needs p > 2, got {p}")));
    }
    let n2 = gradient_norm_sq(space, u)?.evaluate(point)?;
    let lap = laplace_beltrami(space, u)?.evaluate(point)?;
    let inf = infinity_laplacian(space, u)?.evaluate(point)?;
    Ok(n2.powf((p - 2.0) / 2.0) * (lap + (p - 2.0) * inf / n2))
}

// ---------------------------------------------------------------------------
// map tensions

/// Codomain Christoffel symbols composed with the map, `[γ][α][β]`.
fn codomain_connection_at(codomain: &ModelSpace, comps: &[Expr]) -> Result<Vec<Vec<Vec<Cleared>>>> {
    let n = codomain.dim();
    (0..n)
        .map(|c| (0..n).map(|a| (0..n).map(|b| codomain.christoffel(c, a, b).substitute(comps)).collect()).collect())
        .collect()
}

/// `S g^{ij}(Γ^γ_αβ∘φ) ∂_iφ^α ∂_jφ^β` summed over α, β, for each γ.
fn connection_terms(domain: &ModelSpace, codomain: &ModelSpace, comps: &[Expr], jac: &[Vec<Cleared>]) -> Result<Vec<Cleared>> {
    let n = codomain.dim();
    let m = domain.dim();
    if codomain.label().is_flat() {
        return Ok(vec![Cleared::zero(m); n]);
    }
    let gam = codomain_connection_at(codomain, comps)?;
    Ok((0..n)
        .map(|c| {
            let terms = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|&(a, b)| !gam[c][a][b].is_zero()).map(|(a, b)| {
                gam[c][a][b].mul(&cometric(domain, &jac[a], &jac[b]))
            });
            cleared::sum(m, terms)
        })
        .collect())
}

/// Harmonic tension `τ₂^γ = g^{ij}(∂_i∂_jφ^γ − Γ^k_ij ∂_kφ^γ + (Γ^γ_αβ∘φ)∂_iφ^α∂_jφ^β)`.
pub fn tension_field(domain: &ModelSpace, codomain: &ModelSpace, comps: &[Expr]) -> Result<Vec<Cleared>> {
    check_map(domain, codomain, comps)?;
    let m = domain.dim();
    let jac = jacobian(domain, comps)?;
    let conn = connection_terms(domain, codomain, comps, &jac)?;
    let g = domain.g_upper();
    let mut out = Vec::with_capacity(comps.len());
    for (c, phi) in comps.iter().enumerate() {
        let mut terms = Vec::new();
        for i in 0..m {
            for j in 0..m {
                if g[i][j].is_zero() {
                    continue;
                }
                let mut h = Cleared::from(phi.partial(i)?.partial(j)?);
                for k in 0..m {
                    let gk = domain.christoffel(k, i, j);
                    if !gk.is_zero() && !jac[c][k].is_zero() {
                        h = h.sub(&gk.mul(&jac[c][k]));
                    }
                }
                terms.push(g[i][j].mul(&h));
            }
        }
        out.push(cleared::sum(m, terms).add(&conn[c]).reduce());
    }
    Ok(out)
}

/// p-tension by the divergence route,
/// `τ_p^γ = ρ⁻¹∂_i(ρ S g^{ij}∂_jφ^γ) + S g^{ij}(Γ^γ_αβ∘φ)∂_iφ^α∂_jφ^β` with
/// `S = |dφ|^{p−2}`, for even `p ≥ 2`.
pub fn p_tension(domain: &ModelSpace, codomain: &ModelSpace, comps: &[Expr], p: u32) -> Result<Vec<Cleared>> {
    check_even_p(p, 2)?;
    check_map(domain, codomain, comps)?;
    let m = domain.dim();
    let s = energy_density_of(domain, codomain, comps)?.pow((p - 2) / 2);
    let jac = jacobian(domain, comps)?;
    let conn = connection_terms(domain, codomain, comps, &jac)?;
    let weight = domain.volume().mul(&s);
    let mut out = Vec::with_capacity(comps.len());
    for c in 0..comps.len() {
        let mut div = Cleared::zero(m);
        for i in 0..m {
            let flux = cleared::sum(m, (0..m).map(|j| domain.g_upper()[i][j].mul(&jac[c][j])));
            if !flux.is_zero() {
                div = div.add(&weight.mul(&flux).partial(i)?);
            }
        }
        out.push(domain.inv_volume().mul(&div).add(&s.mul(&conn[c])).reduce());
    }
    Ok(out)
}

/// `τ_p − (|dφ|^{p−2}τ₂ + (p−2)|dφ|^{p−4}·½T)` per component, even `p ≥ 4`.
pub fn phm_residual(domain: &ModelSpace, codomain: &ModelSpace, comps: &[Expr], p: u32) -> Result<Vec<Cleared>> {
    check_even_p(p, 4)?;
    let tp = p_tension(domain, codomain, comps, p)?;
    let t2 = tension_field(domain, codomain, comps)?;
    let (e, t) = infinity_tension_exact(domain, codomain, comps)?;
    let k = Rational::from_integer((p - 2).into()) * rat(1, 2);
    Ok((0..tp.len())
        .map(|c| {
            let rhs = e.pow((p - 2) / 2).mul(&t2[c]).add(&e.pow((p - 4) / 2).mul(&t[c]).scale(&k));
            tp[c].sub(&rhs).reduce()
        })
        .collect())
}

/// True when every component is symbolically zero.
pub fn all_zero(v: &[Cleared]) -> bool {
    v.iter().all(Cleared::is_zero)
}

#[cfg(test)]
mod tests;

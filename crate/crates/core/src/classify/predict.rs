use num_traits::Zero;

use crate::calculus::{self, TensionReport};
use crate::cleared::{self, Cleared};
use crate::error::{Error, Result};
use crate::linalg::RatMatrix;
use crate::mapspec::{ComplexPoly, ComplexPolyMap, MapKind, MapSpec};
use crate::spaces::{ModelSpace, SpaceLabel};
use crate::{Expr, Rational};

use super::lemma::anticommutators;
use super::{Classification, Residual, Verdict};

fn unsupported(domain: &SpaceLabel, codomain: &SpaceLabel, family: &str) -> Error {
    Error::UnsupportedPair(format!("{family} maps {domain} -> {codomain}"))
}

fn check_shape(domain: &SpaceLabel, codomain: &SpaceLabel, a: &RatMatrix, b: &[Rational]) -> Result<()> {
    if a.cols() != domain.dim() || a.rows() != codomain.dim() || b.len() != codomain.dim() {
        return Err(Error::Dimension(format!(
            "A is {}x{} with {} offsets, pair {domain} -> {codomain} needs {}x{}",
            a.rows(),
            a.cols(),
            b.len(),
            codomain.dim(),
            domain.dim()
        )));
    }
    Ok(())
}

/// `u ⊗ v` as a `|u| × |v|` matrix.
fn outer(u: &[Rational], v: &[Rational]) -> RatMatrix {
    let rows = u.iter().map(|x| v.iter().map(|y| x * y).collect()).collect();
    RatMatrix::from_rows(rows).expect("rectangular")
}

fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

fn concat(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().chain(b).cloned().collect()
}

/// Tag of a two-pattern criterion: the first matching form, `Unconstrained`
/// when neither matches.
fn pattern_tag(a: &RatMatrix, forms: [(bool, Classification); 2]) -> Classification {
    if a.is_zero() {
        return Classification::ConstantMap;
    }
    forms.into_iter().find(|(ok, _)| *ok).map_or(Classification::Unconstrained, |(_, t)| t)
}

fn required_or_constant(a: &RatMatrix, tag: Classification) -> Classification {
    if a.is_zero() {
        Classification::ConstantMap
    } else {
        tag
    }
}

/// `|A|²·⟨A^α, ∇q⟩` with `q = F/(λ∘φ)` for `F⁻²δ → λ⁻²δ`; the ∞-tension is a
/// positive multiple of it.
fn conformal_residuals(domain: &SpaceLabel, codomain: &SpaceLabel, a: &RatMatrix, b: &[Rational]) -> Result<Vec<Residual>> {
    let (f_num, f_den) = domain.conformal_factor().ok_or_else(|| unsupported(domain, codomain, "linear"))?;
    let (l_num, l_den) = codomain.conformal_factor().ok_or_else(|| unsupported(domain, codomain, "linear"))?;
    let m = domain.dim();
    let phi = MapSpec::affine(a.clone(), b.to_vec())?.materialize();
    let num = &f_num * &l_den.substitute(&phi)?;
    let den = &f_den * &l_num.substitute(&phi)?;
    let q = Cleared::new(num, [(den, 1)])?;
    let grad = (0..m).map(|i| q.partial(i)).collect::<Result<Vec<_>>>()?;
    let norm = a.frobenius_sq();
    Ok((0..a.rows())
        .map(|al| {
            let terms = a.row(al).iter().zip(&grad).filter(|(k, _)| !k.is_zero()).map(|(k, g)| g.scale(k));
            let r = cleared::sum(m, terms).scale(&norm).reduce();
            Residual::expr(format!("|A|^2 <A^{}, grad q>", al + 1), r)
        })
        .collect())
}

/// Exact criterion for an affine map `AX + b` between the labelled spaces.
pub fn predict_linear(domain: &SpaceLabel, codomain: &SpaceLabel, a: &RatMatrix, b: &[Rational]) -> Result<Verdict> {
    use SpaceLabel::*;
    check_shape(domain, codomain, a, b)?;
    let col = |j: usize| a.column(j);
    let row = |i: usize| a.row(i).to_vec();
    match (domain, codomain) {
        (Nil, Euclidean(_)) => {
            let (c1, c3) = (col(0), col(2));
            let tag = pattern_tag(
                a,
                [
                    (is_zero_vec(&c1), Classification::ProjectionThenLinear(vec![2, 3])),
                    (is_zero_vec(&c3), Classification::ProjectionThenLinear(vec![1, 2])),
                ],
            );
            Ok(Verdict::from_residuals("T5.1", tag, vec![Residual::matrix("col1 (x) col3", outer(&c1, &c3))]))
        }
        (Sol, Euclidean(_)) => {
            let (c1, c2, c3) = (col(0), col(1), col(2));
            let c12 = concat(&c1, &c2);
            let tag = pattern_tag(
                a,
                [
                    (is_zero_vec(&c3), Classification::ProjectionThenLinear(vec![1, 2])),
                    (is_zero_vec(&c12), Classification::ProjectionThenLinear(vec![3])),
                ],
            );
            Ok(Verdict::from_residuals("T6.1", tag, vec![Residual::matrix("col3 (x) [col1; col2]", outer(&c3, &c12))]))
        }
        (Euclidean(_), Nil) => {
            let (r1, r2) = (row(0), row(1));
            let tag = pattern_tag(
                a,
                [
                    (is_zero_vec(&r1), Classification::InclusionForm(vec![2, 3])),
                    (is_zero_vec(&r2), Classification::InclusionForm(vec![1, 3])),
                ],
            );
            Ok(Verdict::from_residuals("T5.2", tag, vec![Residual::matrix("row1 (x) row2", outer(&r1, &r2))]))
        }
        (Euclidean(_), Sol) => {
            let (r1, r2, r3) = (row(0), row(1), row(2));
            let r12 = concat(&r1, &r2);
            let tag = pattern_tag(
                a,
                [
                    (is_zero_vec(&r3), Classification::InclusionForm(vec![1, 2])),
                    (is_zero_vec(&r12), Classification::InclusionForm(vec![3])),
                ],
            );
            Ok(Verdict::from_residuals("T6.2", tag, vec![Residual::matrix("row3 (x) [row1, row2]", outer(&r3, &r12))]))
        }
        (Euclidean(_), Euclidean(_)) => Ok(Verdict::from_residuals("T2.3", Classification::AffineOnly, Vec::new())),
        (d, c) if d.is_flat() && c.is_flat() => Ok(Verdict::from_residuals("flat", Classification::AffineOnly, Vec::new())),
        (SphereStereographic(_), SphereStereographic(_)) if is_zero_vec(b) => {
            let gram = a.transpose().mul(a)?.sub(&RatMatrix::identity(a.cols()))?;
            let r = gram.scale(&a.frobenius_sq());
            let tag = required_or_constant(a, Classification::IsometricImmersion);
            Ok(Verdict::from_residuals("T3.2", tag, vec![Residual::matrix("|A|^2 (A^t A - I)", r)]))
        }
        (Euclidean(_), SphereStereographic(_)) | (SphereStereographic(_), Euclidean(_)) => {
            Ok(Verdict::from_residuals("T3.3", Classification::ConstantMap, vec![Residual::matrix("A", a.clone())]))
        }
        (d, c) if d.conformal_factor().is_some() && c.conformal_factor().is_some() => {
            let tag = required_or_constant(a, Classification::Unconstrained);
            Ok(Verdict::from_residuals("L3.1", tag, conformal_residuals(d, c, a, b)?))
        }
        _ => Err(unsupported(domain, codomain, "linear")),
    }
}

/// Exact criterion for `(XᵗA_αX + A^αX + b_α)_α`. Maps with a nonzero
/// quadratic part are only covered between Euclidean spaces, or in pure
/// quadratic form between Euclidean space and a sphere, Sol or Nil.
pub fn predict_quadratic(
    domain: &SpaceLabel,
    codomain: &SpaceLabel,
    quad: &[RatMatrix],
    a: &RatMatrix,
    b: &[Rational],
) -> Result<Verdict> {
    use SpaceLabel::*;
    if quad.len() != codomain.dim() || quad.iter().any(|q| q.rows() != domain.dim() || q.cols() != domain.dim()) {
        return Err(Error::Dimension(format!("quadratic part does not fit {domain} -> {codomain}")));
    }
    if quad.iter().all(RatMatrix::is_zero) {
        return predict_linear(domain, codomain, a, b);
    }
    check_shape(domain, codomain, a, b)?;
    let pure = a.is_zero() && is_zero_vec(b);
    let theorem = match (domain, codomain) {
        (Euclidean(_), Euclidean(_)) if pure => "T2.2",
        (Euclidean(_), Euclidean(_)) => "T2.3",
        (Euclidean(_), SphereStereographic(_)) | (SphereStereographic(_), Euclidean(_)) if pure => "T4.1",
        (Euclidean(_), Sol) if pure => "T7.1",
        (Euclidean(_), Nil) if pure => "T7.2",
        _ => return Err(unsupported(domain, codomain, "quadratic")),
    };
    let tag = if theorem.starts_with("T2") { Classification::AffineOnly } else { Classification::ConstantMap };
    let residuals = anticommutators(quad)?
        .into_iter()
        .enumerate()
        .map(|(i, r)| Residual::matrix(format!("S*A{0} + A{0}*S", i + 1), r))
        .collect();
    Ok(Verdict::from_residuals(theorem, tag, residuals))
}

fn unit(m: usize, j: usize) -> Vec<u32> {
    let mut e = vec![0; m];
    e[j] = 1;
    e
}

fn realified_residuals(name: &str, p: &ComplexPoly) -> [Residual; 2] {
    let (re, im) = p.real_imag();
    [Residual::expr(format!("{name} (re)"), re.into()), Residual::expr(format!("{name} (im)"), im.into())]
}

/// Holomorphic maps into `C` must be `λ z_i + z₀` with real `λ`; into `Cⁿ`
/// the real and imaginary parts must each be ∞-harmonic.
pub fn predict_holomorphic(c: &ComplexPolyMap) -> Result<Verdict> {
    if c.len() != 1 {
        return Ok(holomorphic_split(c)?.verdict);
    }
    let m = c.nvars();
    let p = &c.components()[0];
    let nonaffine = ComplexPoly::from_terms(m, p.terms().filter(|(e, _)| e.iter().sum::<u32>() > 1).map(|(e, k)| (e.clone(), k.clone())));
    let slopes: Vec<_> = (0..m).map(|j| p.coeff(&unit(m, j))).collect();
    let nonzero = |g: &(Rational, Rational)| !(g.0.is_zero() && g.1.is_zero());
    let index = slopes.iter().position(nonzero).unwrap_or(0);
    let lambda = slopes[index].clone();
    let z0 = p.coeff(&vec![0; m]);
    let others = ComplexPoly::from_terms(m, (0..m).filter(|&j| j != index).map(|j| (unit(m, j), slopes[j].clone())));

    let mut residuals = Vec::new();
    residuals.extend(realified_residuals("nonaffine part", &nonaffine));
    residuals.extend(realified_residuals("other slopes", &others));
    residuals.push(Residual::expr("Im(lambda)", Cleared::constant(2 * m, lambda.1.clone())));
    let tag = if p.degree() == 0 {
        Classification::ConstantMap
    } else {
        Classification::HomothetyOfProjection { index: index + 1, lambda, z0 }
    };
    let mut verdict = Verdict::from_residuals("T8.3", tag, residuals);
    if !verdict.harmonic && p.degree() == 1 {
        verdict.notes.push("affine holomorphic map with constant energy density rejected by the real-homothety criterion".into());
    }
    Ok(verdict)
}

/// The three verdicts compared by the real/imaginary split.
#[derive(Clone, Debug)]
pub struct SplitCheck {
    pub real_part_harmonic: bool,
    pub imag_part_harmonic: bool,
    /// Harmonic iff both parts are.
    pub verdict: Verdict,
}

/// ∞-harmonicity of `u = Re φ` and `v = −Im φ` as maps `R^{2m} → R^n`.
pub fn holomorphic_split(c: &ComplexPolyMap) -> Result<SplitCheck> {
    let (m, n) = (2 * c.nvars(), c.len());
    let comps = c.realify();
    let dom = ModelSpace::build(SpaceLabel::Euclidean(m))?;
    let cod = ModelSpace::build(SpaceLabel::Euclidean(n))?;
    let part = |range: &[Expr], label: &str| -> Result<(bool, Vec<Residual>)> {
        let (_, t) = calculus::infinity_tension_exact(&dom, &cod, range)?;
        let zero = calculus::all_zero(&t);
        let rs = t.into_iter().enumerate().map(|(k, e)| Residual::expr(format!("{label} T^{}", k + 1), e)).collect();
        Ok((zero, rs))
    };
    let (u_ok, mut residuals) = part(&comps[..n], "u")?;
    let (v_ok, v_res) = part(&comps[n..], "v")?;
    residuals.extend(v_res);
    let verdict = Verdict::from_residuals("T8.1", Classification::SplitsRealImag, residuals);
    Ok(SplitCheck { real_part_harmonic: u_ok, imag_part_harmonic: v_ok, verdict })
}

/// Dispatches on the map family; custom maps have no predictor.
pub fn predict(domain: &ModelSpace, codomain: &ModelSpace, spec: &MapSpec) -> Result<Verdict> {
    let (d, c) = (domain.label(), codomain.label());
    match spec.kind() {
        MapKind::Affine { a, b } => predict_linear(d, c, a, b),
        MapKind::QuadraticAffine { quad, a, b } => predict_quadratic(d, c, quad, a, b),
        MapKind::HolomorphicRealified { source, .. } => match (d, c) {
            (SpaceLabel::Euclidean(p), SpaceLabel::Euclidean(q)) if *p == 2 * source.nvars() && *q == 2 * source.len() => {
                predict_holomorphic(source)
            }
            _ => Err(unsupported(d, c, "holomorphic")),
        },
        MapKind::Custom { .. } => Err(unsupported(d, c, "custom")),
    }
}

#[derive(Clone, Debug)]
pub struct CrossValidation {
    /// Absent when no theorem covers the pair and family.
    pub predicted: Option<Verdict>,
    pub direct: TensionReport,
    /// `predicted.harmonic == direct verdict is Zero`; absent without a
    /// prediction.
    pub agree: Option<bool>,
}

impl CrossValidation {
    pub fn disagrees(&self) -> bool {
        self.agree == Some(false)
    }
}

pub fn cross_validate(domain: &ModelSpace, codomain: &ModelSpace, spec: &MapSpec) -> Result<CrossValidation> {
    let direct = calculus::infinity_tension(domain, codomain, spec)?;
    let predicted = match predict(domain, codomain, spec) {
        Ok(v) => Some(v),
        Err(Error::UnsupportedPair(_)) => None,
        Err(e) => return Err(e),
    };
    let agree = predicted.as_ref().map(|p| p.harmonic == direct.verdict.is_zero());
    Ok(CrossValidation { predicted, direct, agree })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::cayley;
    use crate::rat;

    fn label(s: &str) -> SpaceLabel {
        SpaceLabel::parse(s).unwrap()
    }

    fn m(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_i64(rows).unwrap()
    }

    fn zeros(n: usize) -> Vec<Rational> {
        vec![Rational::zero(); n]
    }

    #[test]
    fn nil_projection() {
        let v = predict_linear(&label("nil"), &label("euclid:2"), &m(&[&[0, 1, 0], &[0, 0, 1]]), &zeros(2)).unwrap();
        assert!(v.harmonic);
        assert_eq!(v.tag, Classification::ProjectionThenLinear(vec![2, 3]));
        let v = predict_linear(&label("nil"), &label("euclid:2"), &m(&[&[1, 0, 0], &[0, 0, 1]]), &zeros(2)).unwrap();
        assert!(!v.harmonic);
    }

    #[test]
    fn sphere_cayley_isometry() {
        let s = RatMatrix::from_rows(vec![vec![rat(0, 1), rat(1, 2)], vec![rat(-1, 2), rat(0, 1)]]).unwrap();
        let a = cayley(&s).unwrap();
        assert_eq!(a.transpose().mul(&a).unwrap(), RatMatrix::identity(2));
        let v = predict_linear(&label("sphere:2"), &label("sphere:2"), &a, &zeros(2)).unwrap();
        assert!(v.harmonic);
        assert_eq!(v.tag, Classification::IsometricImmersion);
        let v = predict_linear(&label("sphere:2"), &label("sphere:2"), &a.scale(&rat(2, 1)), &zeros(2)).unwrap();
        assert!(!v.harmonic);
    }

    #[test]
    fn euclid_to_sphere_needs_constant() {
        let v = predict_linear(&label("euclid:3"), &label("sphere:2"), &m(&[&[1, 0, 0], &[0, 0, 0]]), &zeros(2)).unwrap();
        assert!(!v.harmonic);
        assert_eq!(v.tag, Classification::ConstantMap);
    }

    #[test]
    fn sol_inclusion() {
        let v = predict_linear(&label("euclid:2"), &label("sol"), &m(&[&[0, 0], &[0, 0], &[1, -2]]), &zeros(3)).unwrap();
        assert!(v.harmonic);
        assert_eq!(v.tag, Classification::InclusionForm(vec![3]));
    }

    #[test]
    fn conformal_route_agrees_with_specific_criteria() {
        let cases = [
            ("sphere:2", "sphere:2", m(&[&[0, 1], &[1, 0]])),
            ("sphere:2", "sphere:2", m(&[&[1, 1], &[0, 1]])),
            ("euclid:2", "sphere:2", m(&[&[1, 0], &[0, 0]])),
            ("sphere:2", "euclid:1", m(&[&[0, 0]])),
        ];
        for (d, c, a) in cases {
            let (d, c) = (label(d), label(c));
            let b = zeros(a.rows());
            let specific = predict_linear(&d, &c, &a, &b).unwrap();
            let generic = conformal_residuals(&d, &c, &a, &b).unwrap();
            assert_eq!(specific.harmonic, generic.iter().all(|r| r.value.is_zero()), "{d} -> {c}");
        }
    }

    #[test]
    fn quadratic_examples() {
        let e2 = label("euclid:2");
        let e1 = label("euclid:1");
        let v = predict_quadratic(&e2, &e1, &[m(&[&[1, 0], &[0, 0]])], &RatMatrix::zeros(1, 2), &zeros(1)).unwrap();
        assert!(!v.harmonic);
        match &v.residuals[0].value {
            super::super::ResidualValue::Matrix(r) => assert_eq!(r, &m(&[&[2, 0], &[0, 0]])),
            other => panic!("{other:?}"),
        }
        let v = predict_quadratic(&e2, &e1, &[RatMatrix::zeros(2, 2)], &m(&[&[1, 2]]), &[rat(3, 1)]).unwrap();
        assert!(v.harmonic);
        assert_eq!(v.tag, Classification::AffineOnly);
        let err = predict_quadratic(&e2, &label("sol"), &[m(&[&[1, 0], &[0, 0]]), RatMatrix::zeros(2, 2), RatMatrix::zeros(2, 2)], &RatMatrix::zeros(3, 2), &[rat(1, 1), rat(0, 1), rat(0, 1)]);
        assert!(matches!(err, Err(Error::UnsupportedPair(_))));
    }

    #[test]
    fn holomorphic_examples() {
        let parse = |srcs: &[&str], dim| ComplexPolyMap::parse(&srcs.iter().map(|s| s.to_string()).collect::<Vec<_>>(), dim).unwrap();
        let v = predict_holomorphic(&parse(&["3*z2 + 1 + i"], None)).unwrap();
        assert!(v.harmonic);
        assert_eq!(
            v.tag,
            Classification::HomothetyOfProjection { index: 2, lambda: (rat(3, 1), rat(0, 1)), z0: (rat(1, 1), rat(1, 1)) }
        );
        assert!(!predict_holomorphic(&parse(&["z^2"], None)).unwrap().harmonic);
        let v = predict_holomorphic(&parse(&["i*z"], None)).unwrap();
        assert!(!v.harmonic);
        assert_eq!(v.notes.len(), 1);
        let split = holomorphic_split(&parse(&["z1 + z2", "z1*z2"], None)).unwrap();
        assert!(!split.verdict.harmonic && !split.real_part_harmonic && !split.imag_part_harmonic);
    }
}

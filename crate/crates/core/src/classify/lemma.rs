use crate::error::{Error, Result};
use crate::linalg::RatMatrix;

use super::Residual;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaOutcome {
    /// Every anticommutator `S·A_i + A_i·S` vanishes, `S = Σ A_j²`.
    pub holds: bool,
    pub residuals: Vec<Residual>,
    /// All inputs are zero.
    pub all_zero: bool,
}

/// Anticommutators `S·A_i + A_i·S` with `S = Σ A_j²`, one per input.
pub(crate) fn anticommutators(quad: &[RatMatrix]) -> Result<Vec<RatMatrix>> {
    let m = quad.first().map_or(0, RatMatrix::rows);
    let mut s = RatMatrix::zeros(m, m);
    for a in quad {
        s = s.add(&a.mul(a)?)?;
    }
    quad.iter().map(|a| s.mul(a)?.add(&a.mul(&s)?)).collect()
}

pub fn matrix_lemma_condition(quad: &[RatMatrix]) -> Result<LemmaOutcome> {
    let m = quad.first().ok_or_else(|| Error::validation("quad", "at least one matrix"))?.rows();
    for (i, a) in quad.iter().enumerate() {
        if a.rows() != m || a.cols() != m {
            return Err(Error::validation(format!("quad[{i}]"), format!("expected a {m}x{m} matrix")));
        }
        if !a.is_symmetric() {
            return Err(Error::validation(format!("quad[{i}]"), "matrix is not symmetric"));
        }
    }
    let residuals: Vec<Residual> = anticommutators(quad)?
        .into_iter()
        .enumerate()
        .map(|(i, r)| Residual::matrix(format!("S*A{0} + A{0}*S", i + 1), r))
        .collect();
    let holds = residuals.iter().all(|r| r.value.is_zero());
    Ok(LemmaOutcome { holds, residuals, all_zero: quad.iter().all(RatMatrix::is_zero) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::ResidualValue;

    #[test]
    fn identity_fails_and_zero_holds() {
        let out = matrix_lemma_condition(&[RatMatrix::identity(2), RatMatrix::zeros(2, 2)]).unwrap();
        assert!(!out.holds);
        assert_eq!(out.residuals[0].value, ResidualValue::Matrix(RatMatrix::identity(2).scale(&crate::rat(2, 1))));
        let out = matrix_lemma_condition(&[RatMatrix::zeros(3, 3)]).unwrap();
        assert!(out.holds && out.all_zero);
    }

    #[test]
    fn rejects_asymmetric() {
        let a = RatMatrix::from_i64(&[&[0, 1], &[0, 0]]).unwrap();
        match matrix_lemma_condition(&[RatMatrix::zeros(2, 2), a]) {
            Err(Error::Validation { path, .. }) => assert_eq!(path, "quad[1]"),
            other => panic!("{other:?}"),
        }
    }
}

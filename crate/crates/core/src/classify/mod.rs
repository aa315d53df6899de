//! Per-theorem deciders: each evaluates a classification criterion exactly,
//! predicts whether a map is ∞-harmonic, and is cross-checked against the
//! direct tension computation. Randomized campaigns look for disagreements.

mod lemma;
mod predict;
pub mod random;
mod search;
mod suite;

pub use lemma::{matrix_lemma_condition, LemmaOutcome};
pub use predict::{
    cross_validate, holomorphic_split, predict, predict_holomorphic, predict_linear, predict_quadratic, CrossValidation, SplitCheck,
};
pub use search::{falsify_search, Counterexample, Family, SearchOutcome};
pub use suite::{
    positive_family_check, run_theorem, scalar_identity_failure, scalar_linear_check, FamilyCheck, ScalarCheck, TheoremId,
    Mismatch, TheoremReport, ZeroCase, ALL_THEOREMS, POSITIVE_FAMILIES, SCALAR_SPACES,
};

use std::fmt;

use crate::cleared::Cleared;
use crate::linalg::RatMatrix;
use crate::mapspec::Gauss;
use crate::scalar::format_rational;

/// The normal form a theorem assigns to the harmonic maps of its family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    ConstantMap,
    AffineOnly,
    IsometricImmersion,
    /// Projection onto the listed domain axes (1-based) followed by a linear map.
    ProjectionThenLinear(Vec<usize>),
    /// Only the listed codomain rows (1-based) are nonzero.
    InclusionForm(Vec<usize>),
    /// `λ z_index + z0` (index 1-based).
    HomothetyOfProjection { index: usize, lambda: Gauss, z0: Gauss },
    SplitsRealImag,
    Unconstrained,
}

fn axes(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

fn gauss(g: &Gauss) -> String {
    format!("{} + ({})*i", format_rational(&g.0), format_rational(&g.1))
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::ConstantMap => f.write_str("ConstantMap"),
            Classification::AffineOnly => f.write_str("AffineOnly"),
            Classification::IsometricImmersion => f.write_str("IsometricImmersion"),
            Classification::ProjectionThenLinear(v) => write!(f, "ProjectionThenLinear({})", axes(v)),
            Classification::InclusionForm(v) => write!(f, "InclusionForm({})", axes(v)),
            Classification::HomothetyOfProjection { index, lambda, z0 } => {
                write!(f, "HomothetyOfProjection({index}, {}, {})", gauss(lambda), gauss(z0))
            }
            Classification::SplitsRealImag => f.write_str("SplitsRealImag"),
            Classification::Unconstrained => f.write_str("Unconstrained"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ResidualValue {
    Matrix(RatMatrix),
    Expr(Cleared),
}

impl ResidualValue {
    pub fn is_zero(&self) -> bool {
        match self {
            ResidualValue::Matrix(m) => m.is_zero(),
            ResidualValue::Expr(e) => e.is_zero(),
        }
    }
}

impl fmt::Display for ResidualValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ResidualValue::Matrix(m) => {
                let rows: Vec<String> =
                    m.to_rows().iter().map(|r| format!("[{}]", r.iter().map(format_rational).collect::<Vec<_>>().join(", "))).collect();
                write!(f, "[{}]", rows.join(", "))
            }
            ResidualValue::Expr(e) => write!(f, "{e}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Residual {
    pub name: String,
    pub value: ResidualValue,
}

impl Residual {
    pub fn matrix(name: impl Into<String>, m: RatMatrix) -> Self {
        Residual { name: name.into(), value: ResidualValue::Matrix(m) }
    }

    pub fn expr(name: impl Into<String>, e: Cleared) -> Self {
        Residual { name: name.into(), value: ResidualValue::Expr(e) }
    }
}

/// A theorem's prediction. `harmonic` holds exactly when every residual
/// vanishes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub harmonic: bool,
    pub tag: Classification,
    pub residuals: Vec<Residual>,
    /// Stable theorem id the criterion comes from.
    pub theorem: &'static str,
    /// Free-form remarks, e.g. when a stated side condition is not met.
    pub notes: Vec<String>,
}

impl Verdict {
    fn from_residuals(theorem: &'static str, tag: Classification, residuals: Vec<Residual>) -> Self {
        let harmonic = residuals.iter().all(|r| r.value.is_zero());
        Verdict { harmonic, tag, residuals, theorem, notes: Vec::new() }
    }
}

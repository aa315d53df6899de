//! Catalog of model spaces: metric components, exact inverses, volume
//! densities and Levi-Civita connection symbols.
//!
//! Entries are [`Cleared`] values so conformal factors stay exact. Every space
//! is immutable once built; connection symbols are computed on first use.

use std::fmt;
use std::sync::OnceLock;

use num_traits::One;

use crate::cleared::{self, Cleared};
use crate::error::{Error, Result};
use crate::exprcore::default_names;
use crate::scalar::rat;
use crate::{Expr, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpaceLabel {
    Euclidean(usize),
    /// Diagonal metric with the given ±1 entries.
    SemiEuclidean(Vec<i8>),
    /// `F⁻² δ` with `F = numerator / denominator`, both polynomials assumed
    /// positive on the chart.
    ConformallyFlat { dim: usize, numerator: Expr, denominator: Expr },
    /// Stereographic chart of the sphere: `λ⁻² δ`, `λ = (1 + |x|²)/2`.
    SphereStereographic(usize),
    Nil,
    Sol,
}

impl SpaceLabel {
    pub fn dim(&self) -> usize {
        match self {
            SpaceLabel::Euclidean(m) | SpaceLabel::SphereStereographic(m) => *m,
            SpaceLabel::SemiEuclidean(s) => s.len(),
            SpaceLabel::ConformallyFlat { dim, .. } => *dim,
            SpaceLabel::Nil | SpaceLabel::Sol => 3,
        }
    }

    /// Parses `euclid:m`, `semi-euclid:m:+-..`, `sphere:m`, `nil`, `sol`,
    /// `conformal:m:<numerator>[:<denominator>]`, and `complex:m` (the real
    /// Euclidean space of dimension `2m`).
    pub fn parse(name: &str) -> Result<Self> {
        let bad = |msg: String| Error::parse("space", msg);
        let parts: Vec<&str> = name.trim().split(':').collect();
        let dim = |s: Option<&&str>| -> Result<usize> {
            let s = s.ok_or_else(|| bad(format!("'{name}' is missing a dimension")))?;
            match s.trim().parse::<usize>() {
                Ok(d) if d >= 1 => Ok(d),
                _ => Err(bad(format!("'{s}' is not a positive dimension"))),
            }
        };
        let label = match parts[0] {
            "euclid" if parts.len() == 2 => SpaceLabel::Euclidean(dim(parts.get(1))?),
            "complex" if parts.len() == 2 => SpaceLabel::Euclidean(2 * dim(parts.get(1))?),
            "sphere" if parts.len() == 2 => SpaceLabel::SphereStereographic(dim(parts.get(1))?),
            "nil" if parts.len() == 1 => SpaceLabel::Nil,
            "sol" if parts.len() == 1 => SpaceLabel::Sol,
            "semi-euclid" if parts.len() == 3 => {
                let m = dim(parts.get(1))?;
                let signs = parts[2]
                    .chars()
                    .map(|c| match c {
                        '+' => Ok(1),
                        '-' => Ok(-1),
                        _ => Err(bad(format!("signature character '{c}' is not + or -"))),
                    })
                    .collect::<Result<Vec<i8>>>()?;
                if signs.len() != m {
                    return Err(bad(format!("signature '{}' does not have {m} entries", parts[2])));
                }
                SpaceLabel::SemiEuclidean(signs)
            }
            "conformal" if parts.len() == 3 || parts.len() == 4 => {
                let m = dim(parts.get(1))?;
                let numerator = Expr::parse(parts[2], m)?;
                let denominator = match parts.get(3) {
                    Some(s) => Expr::parse(s, m)?,
                    None => Expr::one(m),
                };
                SpaceLabel::ConformallyFlat { dim: m, numerator, denominator }
            }
            _ => return Err(bad(format!("unknown space '{name}'"))),
        };
        Ok(label)
    }

    pub fn is_flat(&self) -> bool {
        matches!(self, SpaceLabel::Euclidean(_) | SpaceLabel::SemiEuclidean(_))
    }

    /// True for spaces whose metric is `F⁻² δ` with a nonconstant `F`.
    pub fn is_conformal(&self) -> bool {
        matches!(self, SpaceLabel::ConformallyFlat { .. } | SpaceLabel::SphereStereographic(_))
    }

    /// `(numerator, denominator)` of the conformal factor, `(1, 1)` for flat
    /// spaces and `None` for Nil/Sol.
    pub fn conformal_factor(&self) -> Option<(Expr, Expr)> {
        let m = self.dim();
        match self {
            SpaceLabel::Euclidean(_) | SpaceLabel::SemiEuclidean(_) => Some((Expr::one(m), Expr::one(m))),
            SpaceLabel::SphereStereographic(_) => Some((lambda(m), Expr::one(m))),
            SpaceLabel::ConformallyFlat { numerator, denominator, .. } => Some((numerator.clone(), denominator.clone())),
            SpaceLabel::Nil | SpaceLabel::Sol => None,
        }
    }
}

impl fmt::Display for SpaceLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceLabel::Euclidean(m) => write!(f, "euclid:{m}"),
            SpaceLabel::SemiEuclidean(s) => {
                let sig: String = s.iter().map(|&v| if v > 0 { '+' } else { '-' }).collect();
                write!(f, "semi-euclid:{}:{sig}", s.len())
            }
            SpaceLabel::SphereStereographic(m) => write!(f, "sphere:{m}"),
            SpaceLabel::Nil => f.write_str("nil"),
            SpaceLabel::Sol => f.write_str("sol"),
            SpaceLabel::ConformallyFlat { dim, numerator, denominator } => {
                let names = default_names(*dim);
                write!(f, "conformal:{dim}:{}", numerator.render(&names))?;
                if !denominator.as_constant().is_some_and(|c| c.is_one()) {
                    write!(f, ":{}", denominator.render(&names))?;
                }
                Ok(())
            }
        }
    }
}

/// `λ = (1 + |x|²)/2` over `m` coordinates.
pub fn lambda(m: usize) -> Expr {
    let sq = (0..m).fold(Expr::one(m), |acc, i| {
        let x = Expr::var(m, i).expect("index in range");
        &acc + &(&x * &x)
    });
    sq.scale(&rat(1, 2))
}

/// Square matrix of cleared entries, row-major.
pub type Matrix = Vec<Vec<Cleared>>;

#[derive(Debug)]
pub struct ModelSpace {
    label: SpaceLabel,
    g_lower: Matrix,
    g_upper: Matrix,
    signature: Vec<i8>,
    volume: Cleared,
    inv_volume: Cleared,
    christoffel: OnceLock<Vec<Cleared>>,
}

fn diag(m: usize, entry: &Cleared) -> Matrix {
    (0..m).map(|i| (0..m).map(|j| if i == j { entry.clone() } else { Cleared::zero(m) }).collect()).collect()
}

fn poly(src: &str, m: usize) -> Cleared {
    Cleared::from_expr(Expr::parse(src, m).expect("catalog expression parses"))
}

impl ModelSpace {
    pub fn build(label: SpaceLabel) -> Result<Self> {
        let m = label.dim();
        let (g_lower, g_upper, signature, volume) = match &label {
            SpaceLabel::Euclidean(_) => {
                let id = diag(m, &Cleared::one(m));
                (id.clone(), id, vec![1; m], Cleared::one(m))
            }
            SpaceLabel::SemiEuclidean(s) => {
                let g: Matrix = (0..m)
                    .map(|i| {
                        (0..m)
                            .map(|j| {
                                if i == j {
                                    Cleared::constant(m, Rational::from_integer(s[i].into()))
                                } else {
                                    Cleared::zero(m)
                                }
                            })
                            .collect()
                    })
                    .collect();
                (g.clone(), g, s.clone(), Cleared::one(m))
            }
            SpaceLabel::Nil => {
                let g = vec![
                    vec![poly("1", 3), poly("0", 3), poly("0", 3)],
                    vec![poly("0", 3), poly("1 + x^2", 3), poly("-x", 3)],
                    vec![poly("0", 3), poly("-x", 3), poly("1", 3)],
                ];
                let gi = vec![
                    vec![poly("1", 3), poly("0", 3), poly("0", 3)],
                    vec![poly("0", 3), poly("1", 3), poly("x", 3)],
                    vec![poly("0", 3), poly("x", 3), poly("1 + x^2", 3)],
                ];
                (g, gi, vec![1; 3], Cleared::one(3))
            }
            SpaceLabel::Sol => {
                let g = vec![
                    vec![poly("exp(2*z)", 3), poly("0", 3), poly("0", 3)],
                    vec![poly("0", 3), poly("exp(-2*z)", 3), poly("0", 3)],
                    vec![poly("0", 3), poly("0", 3), poly("1", 3)],
                ];
                let gi = vec![
                    vec![poly("exp(-2*z)", 3), poly("0", 3), poly("0", 3)],
                    vec![poly("0", 3), poly("exp(2*z)", 3), poly("0", 3)],
                    vec![poly("0", 3), poly("0", 3), poly("1", 3)],
                ];
                (g, gi, vec![1; 3], Cleared::one(3))
            }
            SpaceLabel::ConformallyFlat { .. } | SpaceLabel::SphereStereographic(_) => {
                let (fnum, fden) = label.conformal_factor().expect("conformal label");
                if fnum.nvars() != m || fden.nvars() != m {
                    return Err(Error::Construction("conformal factor arity differs from dimension".into()));
                }
                if !fnum.is_polynomial() || !fden.is_polynomial() || fnum.is_zero() || fden.is_zero() {
                    return Err(Error::Construction("conformal factor must be a ratio of nonzero polynomials".into()));
                }
                // F⁻² = Fd²/Fn², F² = Fn²/Fd², ρ = F⁻ᵐ
                let lower = Cleared::new(fden.pow(2), [(fnum.clone(), 2)])?;
                let upper = Cleared::new(fnum.pow(2), [(fden.clone(), 2)])?;
                let vol = Cleared::new(fden.pow(m as u32), [(fnum.clone(), m as u32)])?;
                (diag(m, &lower), diag(m, &upper), vec![1; m], vol)
            }
        };
        let inv_volume = volume.recip()?;
        let space = ModelSpace { label, g_lower, g_upper, signature, volume, inv_volume, christoffel: OnceLock::new() };
        space.verify_inverse()?;
        Ok(space)
    }

    pub fn parse(name: &str) -> Result<Self> {
        Self::build(SpaceLabel::parse(name)?)
    }

    fn verify_inverse(&self) -> Result<()> {
        let m = self.dim();
        for i in 0..m {
            for j in 0..m {
                let s = cleared::sum(m, (0..m).map(|k| self.g_lower[i][k].mul(&self.g_upper[k][j])));
                let delta = if i == j { Cleared::one(m) } else { Cleared::zero(m) };
                if !s.equivalent(&delta) {
                    return Err(Error::Construction(format!("metric inverse check failed at ({i}, {j})")));
                }
            }
        }
        Ok(())
    }

    pub fn label(&self) -> &SpaceLabel {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.label.dim()
    }

    pub fn g_lower(&self) -> &Matrix {
        &self.g_lower
    }

    pub fn g_upper(&self) -> &Matrix {
        &self.g_upper
    }

    pub fn signature(&self) -> &[i8] {
        &self.signature
    }

    pub fn is_riemannian(&self) -> bool {
        self.signature.iter().all(|&s| s > 0)
    }

    /// `√|det g|`.
    pub fn volume(&self) -> &Cleared {
        &self.volume
    }

    pub fn inv_volume(&self) -> &Cleared {
        &self.inv_volume
    }

    /// `Γ^k_ij`, computed once per space.
    pub fn christoffel(&self, k: usize, i: usize, j: usize) -> &Cleared {
        let m = self.dim();
        &self.christoffel_table()[(k * m + i) * m + j]
    }

    fn christoffel_table(&self) -> &[Cleared] {
        self.christoffel.get_or_init(|| self.compute_christoffel().expect("catalog metrics are differentiable"))
    }

    fn compute_christoffel(&self) -> Result<Vec<Cleared>> {
        let m = self.dim();
        if self.label.is_flat() {
            return Ok(vec![Cleared::zero(m); m * m * m]);
        }
        // dg[l][i][j] = ∂_l g_ij
        let mut dg = vec![vec![vec![Cleared::zero(m); m]; m]; m];
        for (l, plane) in dg.iter_mut().enumerate() {
            for i in 0..m {
                for j in 0..m {
                    plane[i][j] = self.g_lower[i][j].partial(l)?;
                }
            }
        }
        let half = rat(1, 2);
        let mut out = Vec::with_capacity(m * m * m);
        for k in 0..m {
            for i in 0..m {
                for j in 0..m {
                    let terms = (0..m).filter(|&l| !self.g_upper[k][l].is_zero()).map(|l| {
                        let s = dg[i][j][l].add(&dg[j][i][l]).sub(&dg[l][i][j]);
                        self.g_upper[k][l].mul(&s)
                    });
                    out.push(cleared::sum(m, terms).scale(&half).reduce());
                }
            }
        }
        Ok(out)
    }

    /// Metric components composed with `images` (the codomain side of a map).
    pub fn g_lower_at(&self, images: &[Expr]) -> Result<Matrix> {
        self.g_lower.iter().map(|row| row.iter().map(|e| e.substitute(images)).collect()).collect()
    }

    /// Residual `∂_k g_ij − Γ^l_ki g_lj − Γ^l_kj g_il`.
    pub fn compatibility_residual(&self, k: usize, i: usize, j: usize) -> Result<Cleared> {
        let m = self.dim();
        let mut r = self.g_lower[i][j].partial(k)?;
        for l in 0..m {
            r = r.sub(&self.christoffel(l, k, i).mul(&self.g_lower[l][j]));
            r = r.sub(&self.christoffel(l, k, j).mul(&self.g_lower[i][l]));
        }
        Ok(r)
    }
}

/// Names and one-line descriptions of the catalog, for listing.
pub fn catalog() -> Vec<(&'static str, &'static str)> {
    vec![
        ("euclid:m", "Euclidean space R^m"),
        ("semi-euclid:m:+-..", "R^m with a diagonal metric of the given signs"),
        ("sphere:m", "sphere minus a point, stereographic chart, metric ((1+|x|^2)/2)^-2 delta"),
        ("conformal:m:<num>[:<den>]", "R^m with metric F^-2 delta, F = num/den polynomials"),
        ("nil", "Nil space, metric dx^2 + dy^2 + (dz - x dy)^2"),
        ("sol", "Sol space, metric e^2z dx^2 + e^-2z dy^2 + dz^2"),
        ("complex:m", "C^m as R^2m with coordinates (x1..xm, y1..ym)"),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Expr {
        Expr::parse(s, n).unwrap()
    }

    #[test]
    fn euclidean_identity() {
        let e = ModelSpace::parse("euclid:3").unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { Cleared::one(3) } else { Cleared::zero(3) };
                assert_eq!(e.g_lower()[i][j], want);
                assert_eq!(e.g_upper()[i][j], want);
            }
        }
    }

    #[test]
    fn nil_and_sol_components() {
        let nil = ModelSpace::build(SpaceLabel::Nil).unwrap();
        assert_eq!(nil.g_upper()[1][2].as_expr().unwrap(), &p("x", 3));
        let sol = ModelSpace::build(SpaceLabel::Sol).unwrap();
        assert_eq!(sol.g_lower()[0][0].as_expr().unwrap(), &p("exp(2*z)", 3));
        assert_eq!(sol.christoffel(0, 0, 2).as_expr().unwrap(), &Expr::one(3));
    }

    #[test]
    fn connection_is_symmetric_and_compatible() {
        for name in ["nil", "sol", "sphere:2", "conformal:2:1 + x^2:2 + y^2", "semi-euclid:2:-+"] {
            let s = ModelSpace::parse(name).unwrap();
            let m = s.dim();
            for k in 0..m {
                for i in 0..m {
                    for j in 0..m {
                        assert!(s.christoffel(k, i, j).equivalent(s.christoffel(k, j, i)), "{name}");
                        assert!(s.compatibility_residual(k, i, j).unwrap().is_zero(), "{name} {k}{i}{j}");
                    }
                }
            }
        }
    }

    #[test]
    fn sphere_matches_conformal_lambda() {
        for m in 1..=3 {
            let sphere = ModelSpace::build(SpaceLabel::SphereStereographic(m)).unwrap();
            let conf = ModelSpace::build(SpaceLabel::ConformallyFlat { dim: m, numerator: lambda(m), denominator: Expr::one(m) })
                .unwrap();
            assert_eq!(sphere.g_lower(), conf.g_lower());
            assert_eq!(sphere.g_upper(), conf.g_upper());
            assert_eq!(sphere.volume(), conf.volume());
        }
    }

    #[test]
    fn labels_round_trip() {
        for name in ["euclid:4", "semi-euclid:2:-+", "sphere:3", "nil", "sol", "conformal:2:1 + x^2:2"] {
            assert_eq!(SpaceLabel::parse(name).unwrap().to_string(), name);
        }
        assert_eq!(SpaceLabel::parse("complex:2").unwrap(), SpaceLabel::Euclidean(4));
        for bad in ["euclid", "euclid:0", "torus:2", "semi-euclid:2:+", "semi-euclid:1:x", "nil:3"] {
            assert!(SpaceLabel::parse(bad).is_err(), "{bad}");
        }
        assert!(ModelSpace::parse("conformal:1:0").is_err());
        assert!(ModelSpace::parse("conformal:1:exp(x)").is_err());
    }

    #[test]
    fn sphere_volume_and_inverse() {
        let s = ModelSpace::parse("sphere:2").unwrap();
        assert!(s.volume().mul(s.inv_volume()).reduce().equivalent(&Cleared::one(2)));
        assert_eq!(s.g_upper()[0][0].as_expr().unwrap(), &lambda(2).pow(2));
    }
}

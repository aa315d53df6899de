//! Map families with exact coefficient data, their JSON form, and the
//! realification of polynomial holomorphic maps.
//!
//! Complex coordinates are `z_j = x_j − i y_j` and values `w = u − i v`; the
//! realified map sends `(x_1..x_m, y_1..y_m)` to `(u_1..u_n, v_1..v_n)`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::exprcore::{default_names, parse_ast, Ast};
use crate::linalg::RatMatrix;
use crate::scalar::{format_rational, parse_rational};
use crate::{Expr, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MapKind {
    /// `AX + b`.
    Affine { a: RatMatrix, b: Vec<Rational> },
    /// `(XᵗA_αX + A^αX + b_α)_α` with symmetric `A_α`.
    QuadraticAffine { quad: Vec<RatMatrix>, a: RatMatrix, b: Vec<Rational> },
    Custom { components: Vec<Expr> },
    HolomorphicRealified { source: ComplexPolyMap, components: Vec<Expr> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapSpec {
    domain_dim: usize,
    codomain_dim: usize,
    kind: MapKind,
}

fn zero_vec(n: usize) -> Vec<Rational> {
    vec![Rational::zero(); n]
}

impl MapSpec {
    pub fn affine(a: RatMatrix, b: Vec<Rational>) -> Result<Self> {
        if a.rows() == 0 || a.cols() == 0 {
            return Err(Error::validation("A", "matrix must be nonempty"));
        }
        if b.len() != a.rows() {
            return Err(Error::validation("b", format!("expected {} entries, found {}", a.rows(), b.len())));
        }
        Ok(MapSpec { domain_dim: a.cols(), codomain_dim: a.rows(), kind: MapKind::Affine { a, b } })
    }

    pub fn linear(a: RatMatrix) -> Result<Self> {
        let n = a.rows();
        Self::affine(a, zero_vec(n))
    }

    pub fn quadratic(quad: Vec<RatMatrix>, a: RatMatrix, b: Vec<Rational>) -> Result<Self> {
        let n = quad.len();
        let m = quad.first().map(RatMatrix::rows).ok_or_else(|| Error::validation("quad", "at least one matrix"))?;
        if m == 0 {
            return Err(Error::validation("quad[0]", "matrix must be nonempty"));
        }
        for (i, q) in quad.iter().enumerate() {
            if q.rows() != m || q.cols() != m {
                return Err(Error::validation(format!("quad[{i}]"), format!("expected a {m}x{m} matrix")));
            }
            if !q.is_symmetric() {
                return Err(Error::validation(format!("quad[{i}]"), "matrix is not symmetric"));
            }
        }
        if a.rows() != n || a.cols() != m {
            return Err(Error::validation("A", format!("expected a {n}x{m} matrix")));
        }
        if b.len() != n {
            return Err(Error::validation("b", format!("expected {n} entries, found {}", b.len())));
        }
        Ok(MapSpec { domain_dim: m, codomain_dim: n, kind: MapKind::QuadraticAffine { quad, a, b } })
    }

    /// Pure quadratic map `(XᵗA_αX)_α`.
    pub fn pure_quadratic(quad: Vec<RatMatrix>) -> Result<Self> {
        let n = quad.len();
        let m = quad.first().map_or(0, RatMatrix::rows);
        Self::quadratic(quad, RatMatrix::zeros(n, m), zero_vec(n))
    }

    pub fn custom(domain_dim: usize, components: Vec<Expr>) -> Result<Self> {
        if domain_dim == 0 || components.is_empty() {
            return Err(Error::validation("components", "need at least one component over at least one coordinate"));
        }
        for (i, c) in components.iter().enumerate() {
            if c.nvars() != domain_dim {
                return Err(Error::validation(format!("components[{i}]"), format!("expected {domain_dim} coordinates")));
            }
        }
        Ok(MapSpec { domain_dim, codomain_dim: components.len(), kind: MapKind::Custom { components } })
    }

    pub fn holomorphic(source: ComplexPolyMap) -> Self {
        let components = source.realify();
        MapSpec {
            domain_dim: 2 * source.nvars(),
            codomain_dim: 2 * source.len(),
            kind: MapKind::HolomorphicRealified { source, components },
        }
    }

    pub fn domain_dim(&self) -> usize {
        self.domain_dim
    }

    pub fn codomain_dim(&self) -> usize {
        self.codomain_dim
    }

    pub fn kind(&self) -> &MapKind {
        &self.kind
    }

    /// The `n` component expressions over `m` coordinates.
    pub fn materialize(&self) -> Vec<Expr> {
        let m = self.domain_dim;
        let x: Vec<Expr> = (0..m).map(|i| Expr::var(m, i).expect("index in range")).collect();
        let linear = |row: &[Rational], c: &Rational| {
            row.iter()
                .zip(&x)
                .filter(|(k, _)| !k.is_zero())
                .fold(Expr::constant(m, c.clone()), |acc, (k, xi)| &acc + &xi.scale(k))
        };
        match &self.kind {
            MapKind::Affine { a, b } => (0..a.rows()).map(|al| linear(a.row(al), &b[al])).collect(),
            MapKind::QuadraticAffine { quad, a, b } => quad
                .iter()
                .enumerate()
                .map(|(al, q)| {
                    let mut e = linear(a.row(al), &b[al]);
                    for i in 0..m {
                        for j in 0..m {
                            if !q.get(i, j).is_zero() {
                                e = &e + &(&x[i] * &x[j]).scale(q.get(i, j));
                            }
                        }
                    }
                    e
                })
                .collect(),
            MapKind::Custom { components } | MapKind::HolomorphicRealified { components, .. } => components.clone(),
        }
    }

    /// Appends zero components up to `n`; holomorphic maps cannot be padded.
    pub fn padded(&self, n: usize) -> Result<Self> {
        let have = self.codomain_dim;
        if n < have {
            return Err(Error::validation("pad", format!("cannot pad {have} components down to {n}")));
        }
        let m = self.domain_dim;
        let extend = |a: &RatMatrix| {
            let mut rows = a.to_rows();
            rows.resize(n, zero_vec(m));
            RatMatrix::from_rows(rows).expect("rectangular")
        };
        let grow = |b: &[Rational]| {
            let mut v = b.to_vec();
            v.resize(n, Rational::zero());
            v
        };
        match &self.kind {
            MapKind::Affine { a, b } => Self::affine(extend(a), grow(b)),
            MapKind::QuadraticAffine { quad, a, b } => {
                let mut q = quad.clone();
                q.resize(n, RatMatrix::zeros(m, m));
                Self::quadratic(q, extend(a), grow(b))
            }
            MapKind::Custom { components } => {
                let mut c = components.clone();
                c.resize(n, Expr::zero(m));
                Self::custom(m, c)
            }
            MapKind::HolomorphicRealified { .. } if n == have => Ok(self.clone()),
            MapKind::HolomorphicRealified { .. } => Err(Error::validation("pad", "holomorphic maps cannot be padded")),
        }
    }

    /// The JSON document form; [`MapSpec::from_json`] inverts it.
    pub fn to_json(&self) -> Value {
        let mat = |a: &RatMatrix| -> Value {
            Value::Array(a.to_rows().iter().map(|r| Value::Array(r.iter().map(rat_json).collect())).collect())
        };
        let vec = |b: &[Rational]| Value::Array(b.iter().map(rat_json).collect());
        match &self.kind {
            MapKind::Affine { a, b } => json!({ "kind": "affine", "A": mat(a), "b": vec(b) }),
            MapKind::QuadraticAffine { quad, a, b } => json!({
                "kind": "quadratic",
                "quad": quad.iter().map(mat).collect::<Vec<_>>(),
                "A": mat(a),
                "b": vec(b),
            }),
            MapKind::Custom { components } => {
                let names = default_names(self.domain_dim);
                json!({
                    "kind": "custom",
                    "dim": self.domain_dim,
                    "components": components.iter().map(|c| c.render(&names)).collect::<Vec<_>>(),
                })
            }
            MapKind::HolomorphicRealified { source, .. } => json!({
                "kind": "holomorphic",
                "dim": source.nvars(),
                "complex": source.render(),
            }),
        }
    }

    pub fn from_json_str(src: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(src).map_err(|e| Error::parse("$", e.to_string()))?;
        Self::from_json(&v)
    }

    /// Validates a JSON map document. Errors name the offending field.
    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| Error::parse("$", "expected a JSON object"))?;
        let kind = obj.get("kind").and_then(Value::as_str).ok_or_else(|| Error::parse("kind", "missing or not a string"))?;
        let dim = match obj.get("dim").or_else(|| obj.get("domain_dim")) {
            None => None,
            Some(d) => Some(
                d.as_u64()
                    .filter(|&d| d >= 1)
                    .ok_or_else(|| Error::parse("dim", "expected a positive integer"))? as usize,
            ),
        };
        let spec = match kind {
            "affine" => {
                let a = matrix_field(obj, "A")?.ok_or_else(|| Error::parse("A", "missing"))?;
                let b = match vector_field(obj, "b")? {
                    Some(b) => b,
                    None => zero_vec(a.rows()),
                };
                Self::affine(a, b)?
            }
            "quadratic" => {
                let qv = obj.get("quad").and_then(Value::as_array).ok_or_else(|| Error::parse("quad", "missing or not an array"))?;
                let quad = qv
                    .iter()
                    .enumerate()
                    .map(|(i, q)| parse_matrix(q, &format!("quad[{i}]")))
                    .collect::<Result<Vec<_>>>()?;
                let n = quad.len();
                let m = quad.first().map_or(0, RatMatrix::rows);
                let a = matrix_field(obj, "A")?.unwrap_or_else(|| RatMatrix::zeros(n, m));
                let b = vector_field(obj, "b")?.unwrap_or_else(|| zero_vec(n));
                Self::quadratic(quad, a, b)?
            }
            "custom" => {
                let srcs = string_list(obj, "components")?;
                let asts = srcs
                    .iter()
                    .enumerate()
                    .map(|(i, s)| parse_ast(s).map_err(|e| nest(e, &format!("components[{i}]"))))
                    .collect::<Result<Vec<_>>>()?;
                let m = match dim {
                    Some(d) => d,
                    None => asts
                        .iter()
                        .map(max_real_coordinate)
                        .max()
                        .filter(|&d| d > 0)
                        .ok_or_else(|| Error::parse("dim", "cannot infer the domain dimension; add \"dim\""))?,
                };
                let comps = asts
                    .iter()
                    .enumerate()
                    .map(|(i, a)| Expr::from_ast(a, m).map_err(|e| nest(e, &format!("components[{i}]"))))
                    .collect::<Result<Vec<_>>>()?;
                Self::custom(m, comps)?
            }
            "holomorphic" => {
                let srcs = string_list(obj, "complex")?;
                Self::holomorphic(ComplexPolyMap::parse(&srcs, dim)?)
            }
            other => return Err(Error::parse("kind", format!("unknown map kind '{other}'"))),
        };
        match obj.get("pad") {
            None => Ok(spec),
            Some(p) => {
                let n = p.as_u64().ok_or_else(|| Error::parse("pad", "expected a positive integer"))?;
                spec.padded(n as usize)
            }
        }
    }
}

fn nest(e: Error, path: &str) -> Error {
    match e {
        Error::Parse { path: p, message } => Error::Parse { path: format!("{path}: {p}"), message },
        other => Error::Parse { path: path.into(), message: other.to_string() },
    }
}

fn rat_json(r: &Rational) -> Value {
    match (r.is_integer(), i64::try_from(r.numer())) {
        (true, Ok(v)) => Value::from(v),
        _ => Value::String(format_rational(r)),
    }
}

fn parse_rational_value(v: &Value, path: &str) -> Result<Rational> {
    let text = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.trim().to_string(),
        _ => return Err(Error::parse(path, "expected a number or a \"p/q\" string")),
    };
    parse_rational(&text).ok_or_else(|| Error::parse(path, format!("malformed rational '{text}'")))
}

fn parse_vector(v: &Value, path: &str) -> Result<Vec<Rational>> {
    let arr = v.as_array().ok_or_else(|| Error::parse(path, "expected an array"))?;
    arr.iter().enumerate().map(|(i, x)| parse_rational_value(x, &format!("{path}[{i}]"))).collect()
}

fn parse_matrix(v: &Value, path: &str) -> Result<RatMatrix> {
    let arr = v.as_array().ok_or_else(|| Error::parse(path, "expected an array of rows"))?;
    let rows = arr
        .iter()
        .enumerate()
        .map(|(i, r)| parse_vector(r, &format!("{path}[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    RatMatrix::from_rows(rows).map_err(|_| Error::parse(path, "rows have different lengths"))
}

fn matrix_field(obj: &Map<String, Value>, key: &str) -> Result<Option<RatMatrix>> {
    obj.get(key).map(|v| parse_matrix(v, key)).transpose()
}

fn vector_field(obj: &Map<String, Value>, key: &str) -> Result<Option<Vec<Rational>>> {
    obj.get(key).map(|v| parse_vector(v, key)).transpose()
}

fn string_list(obj: &Map<String, Value>, key: &str) -> Result<Vec<String>> {
    let arr = obj.get(key).and_then(Value::as_array).ok_or_else(|| Error::parse(key, "missing or not an array"))?;
    if arr.is_empty() {
        return Err(Error::parse(key, "needs at least one entry"));
    }
    arr.iter()
        .enumerate()
        .map(|(i, s)| s.as_str().map(String::from).ok_or_else(|| Error::parse(format!("{key}[{i}]"), "expected a string")))
        .collect()
}

fn walk_idents<'a>(ast: &'a Ast, out: &mut Vec<&'a str>) {
    match ast {
        Ast::Num(_) => {}
        Ast::Ident(s) => out.push(s),
        Ast::Neg(a) | Ast::Pow(a, _) | Ast::Call(_, a) => walk_idents(a, out),
        Ast::Add(a, b) | Ast::Sub(a, b) | Ast::Mul(a, b) | Ast::Div(a, b) => {
            walk_idents(a, out);
            walk_idents(b, out);
        }
    }
}

/// Highest real coordinate referenced: `x, y, z` count as 1, 2, 3.
fn max_real_coordinate(ast: &Ast) -> usize {
    let mut ids = Vec::new();
    walk_idents(ast, &mut ids);
    ids.iter()
        .filter_map(|s| match *s {
            "x" => Some(1),
            "y" => Some(2),
            "z" => Some(3),
            s => s.strip_prefix('x')?.parse().ok(),
        })
        .max()
        .unwrap_or(0)
}

// ---------------------------------------------------------------------------

/// Gaussian-rational coefficient `re + i·im`.
pub type Gauss = (Rational, Rational);

fn g_mul(a: &Gauss, b: &Gauss) -> Gauss {
    (&a.0 * &b.0 - &a.1 * &b.1, &a.0 * &b.1 + &a.1 * &b.0)
}

/// A polynomial in `m` complex variables with Gaussian-rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Gauss>,
}

impl ComplexPoly {
    pub fn zero(nvars: usize) -> Self {
        ComplexPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Gauss) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn var(nvars: usize, j: usize) -> Self {
        let mut e = vec![0; nvars];
        e[j] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(e, (Rational::one(), Rational::zero()));
        p
    }

    /// Builds from `(exponents, coefficient)` pairs.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, Gauss)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, exps: Vec<u32>, c: Gauss) {
        let slot = self.terms.entry(exps.clone()).or_insert_with(|| (Rational::zero(), Rational::zero()));
        slot.0 += c.0;
        slot.1 += c.1;
        if slot.0.is_zero() && slot.1.is_zero() {
            self.terms.remove(&exps);
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Gauss)> {
        self.terms.iter()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    /// Coefficient of the given monomial.
    pub fn coeff(&self, exps: &[u32]) -> Gauss {
        self.terms.get(exps).cloned().unwrap_or((Rational::zero(), Rational::zero()))
    }

    fn add(&self, o: &Self) -> Self {
        let mut p = self.clone();
        for (e, c) in &o.terms {
            p.add_term(e.clone(), c.clone());
        }
        p
    }

    fn scale(&self, k: &Gauss) -> Self {
        let mut p = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            p.add_term(e.clone(), g_mul(c, k));
        }
        p
    }

    fn mul(&self, o: &Self) -> Self {
        let mut p = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                p.add_term(e, g_mul(ca, cb));
            }
        }
        p
    }

    fn as_constant(&self) -> Option<Gauss> {
        match self.terms.len() {
            0 => Some((Rational::zero(), Rational::zero())),
            1 => self.terms.get(&vec![0; self.nvars]).cloned(),
            _ => None,
        }
    }

    fn from_ast(ast: &Ast, nvars: usize) -> Result<Self> {
        let rec = |a: &Ast| Self::from_ast(a, nvars);
        let minus_one = (-Rational::one(), Rational::zero());
        Ok(match ast {
            Ast::Num(r) => Self::constant(nvars, (r.clone(), Rational::zero())),
            Ast::Ident(s) if s == "i" => Self::constant(nvars, (Rational::zero(), Rational::one())),
            Ast::Ident(s) => {
                let j = complex_index(s, nvars).ok_or_else(|| Error::parse(s.clone(), format!("unknown complex coordinate for {nvars} variables")))?;
                Self::var(nvars, j)
            }
            Ast::Neg(a) => rec(a)?.scale(&minus_one),
            Ast::Add(a, b) => rec(a)?.add(&rec(b)?),
            Ast::Sub(a, b) => rec(a)?.add(&rec(b)?.scale(&minus_one)),
            Ast::Mul(a, b) => rec(a)?.mul(&rec(b)?),
            Ast::Div(a, b) => {
                let (re, im) = rec(b)?
                    .as_constant()
                    .filter(|(re, im)| !(re.is_zero() && im.is_zero()))
                    .ok_or_else(|| Error::parse("/", "division only by a nonzero constant"))?;
                let norm = &re * &re + &im * &im;
                rec(a)?.scale(&(&re / &norm, -&im / &norm))
            }
            Ast::Pow(a, k) => {
                let base = rec(a)?;
                (0..*k).fold(Self::constant(nvars, (Rational::one(), Rational::zero())), |acc, _| acc.mul(&base))
            }
            Ast::Call(f, _) => return Err(Error::Unsupported(format!("holomorphic components must be polynomials; found {f}()"))),
        })
    }

    /// Renders with `z` (one variable) or `z1..zm` and the unit `i`.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let names = complex_names(self.nvars);
        self.terms
            .iter()
            .map(|(e, (re, im))| {
                let mut parts = vec![format!("({} + ({})*i)", format_rational(re), format_rational(im))];
                for (j, &k) in e.iter().enumerate() {
                    match k {
                        0 => {}
                        1 => parts.push(names[j].clone()),
                        k => parts.push(format!("{}^{k}", names[j])),
                    }
                }
                parts.join("*")
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// `(Re, Im)` as real expressions over `(x_1..x_m, y_1..y_m)` with
    /// `z_j = x_j − i y_j`.
    pub fn real_imag(&self) -> (Expr, Expr) {
        let m = self.nvars;
        let r = 2 * m;
        let zs: Vec<(Expr, Expr)> = (0..m)
            .map(|j| (Expr::var(r, j).expect("in range"), -&Expr::var(r, m + j).expect("in range")))
            .collect();
        let cmul = |a: &(Expr, Expr), b: &(Expr, Expr)| (&(&a.0 * &b.0) - &(&a.1 * &b.1), &(&a.0 * &b.1) + &(&a.1 * &b.0));
        let mut re = Expr::zero(r);
        let mut im = Expr::zero(r);
        for (e, (cr, ci)) in &self.terms {
            let mut acc = (Expr::one(r), Expr::zero(r));
            for (j, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    acc = cmul(&acc, &zs[j]);
                }
            }
            let c = (Expr::constant(r, cr.clone()), Expr::constant(r, ci.clone()));
            let t = cmul(&c, &acc);
            re = &re + &t.0;
            im = &im + &t.1;
        }
        (re, im)
    }
}

fn complex_names(m: usize) -> Vec<String> {
    if m == 1 {
        vec!["z".into()]
    } else {
        (1..=m).map(|j| format!("z{j}")).collect()
    }
}

fn complex_index(name: &str, m: usize) -> Option<usize> {
    if name == "z" {
        return (m == 1).then_some(0);
    }
    let j: usize = name.strip_prefix('z')?.parse().ok()?;
    (1..=m).contains(&j).then(|| j - 1)
}

/// `n` holomorphic polynomial components in `m` complex variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexPolyMap {
    nvars: usize,
    components: Vec<ComplexPoly>,
}

impl ComplexPolyMap {
    pub fn new(components: Vec<ComplexPoly>) -> Result<Self> {
        let m = components.first().map(ComplexPoly::nvars).ok_or_else(|| Error::validation("complex", "no components"))?;
        if m == 0 || components.iter().any(|c| c.nvars() != m) {
            return Err(Error::validation("complex", "components must share a positive number of variables"));
        }
        Ok(ComplexPolyMap { nvars: m, components })
    }

    /// Parses component strings; `dim` is inferred from the variables used
    /// when absent (`z` means one variable).
    pub fn parse(srcs: &[String], dim: Option<usize>) -> Result<Self> {
        let asts = srcs
            .iter()
            .enumerate()
            .map(|(i, s)| parse_ast(s).map_err(|e| nest(e, &format!("complex[{i}]"))))
            .collect::<Result<Vec<_>>>()?;
        let m = match dim {
            Some(d) => d,
            None => {
                let mut ids = Vec::new();
                for a in &asts {
                    walk_idents(a, &mut ids);
                }
                ids.iter()
                    .filter_map(|s| if *s == "z" { Some(1) } else { s.strip_prefix('z')?.parse::<usize>().ok() })
                    .max()
                    .unwrap_or(1)
            }
        };
        let comps = asts
            .iter()
            .enumerate()
            .map(|(i, a)| ComplexPoly::from_ast(a, m).map_err(|e| nest(e, &format!("complex[{i}]"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(comps)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn components(&self) -> &[ComplexPoly] {
        &self.components
    }

    pub fn render(&self) -> Vec<String> {
        self.components.iter().map(ComplexPoly::render).collect()
    }

    /// Real components `(u_1..u_n, v_1..v_n)` with `w = u − i v`.
    pub fn realify(&self) -> Vec<Expr> {
        let parts: Vec<(Expr, Expr)> = self.components.iter().map(ComplexPoly::real_imag).collect();
        let us = parts.iter().map(|(re, _)| re.clone());
        let vs = parts.iter().map(|(_, im)| -im);
        us.chain(vs).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn p(s: &str, n: usize) -> Expr {
        Expr::parse(s, n).unwrap()
    }

    #[test]
    fn materialize_examples() {
        let id = MapSpec::linear(RatMatrix::identity(2)).unwrap();
        assert_eq!(id.materialize(), vec![p("x", 2), p("y", 2)]);
        let sq = MapSpec::pure_quadratic(vec![RatMatrix::identity(1)]).unwrap();
        assert_eq!(sq.materialize(), vec![p("x^2", 1)]);
        let doc = r#"{"kind":"custom","components":["cos(x)+cos(y)+cos(z)","sin(x)+sin(y)+sin(z)"]}"#;
        let trig = MapSpec::from_json_str(doc).unwrap();
        assert_eq!(trig.domain_dim(), 3);
        assert_eq!(trig.materialize()[1], p("sin(x) + sin(y) + sin(z)", 3));
    }

    #[test]
    fn realify_examples() {
        let real = |s: &str| ComplexPolyMap::parse(&[s.to_string()], None).unwrap().realify();
        assert_eq!(real("z"), vec![p("x", 2), p("y", 2)]);
        assert_eq!(real("z^2"), vec![p("x^2 - y^2", 2), p("2*x*y", 2)]);
        assert_eq!(real("2*z + 1"), vec![p("2*x + 1", 2), p("2*y", 2)]);
        assert!(matches!(ComplexPolyMap::parse(&["exp(z)".into()], None), Err(Error::Parse { .. })));
        assert_eq!(real("(3 + 4*i)/(3 + 4*i) * z"), real("z"));
    }

    #[test]
    fn json_examples() {
        let a = MapSpec::from_json_str(r#"{"kind":"affine","A":[[1,0],[0,1]],"b":[0,0]}"#).unwrap();
        assert_eq!(a, MapSpec::linear(RatMatrix::identity(2)).unwrap());
        let q = MapSpec::from_json_str(r#"{"kind":"quadratic","quad":[[["1/2","0"],["0","1/2"]]]}"#).unwrap();
        match q.kind() {
            MapKind::QuadraticAffine { quad, .. } => assert_eq!(quad[0], RatMatrix::identity(2).scale(&rat(1, 2))),
            _ => panic!("wrong kind"),
        }
        let err = MapSpec::from_json_str(r#"{"kind":"quadratic","quad":[[[0,1],[0,0]]]}"#).unwrap_err();
        assert!(matches!(err, Error::Validation { ref path, .. } if path == "quad[0]"));
        let err = MapSpec::from_json_str(r#"{"kind":"affine","A":[[1,"1/0"]]}"#).unwrap_err();
        assert!(matches!(err, Error::Parse { ref path, .. } if path == "A[0][1]"));
        let err = MapSpec::from_json_str(r#"{"kind":"affine","A":[[1,2]],"b":[0,0]}"#).unwrap_err();
        assert!(matches!(err, Error::Validation { ref path, .. } if path == "b"));
        let dec = MapSpec::from_json_str(r#"{"kind":"affine","A":[[0.25, "1.5"]]}"#).unwrap();
        assert_eq!(dec.materialize()[0], p("x/4 + 3*y/2", 2));
    }

    #[test]
    fn padding_is_explicit() {
        let q = MapSpec::from_json_str(r#"{"kind":"quadratic","quad":[[[1]]]}"#).unwrap();
        assert_eq!(q.codomain_dim(), 1);
        let padded = MapSpec::from_json_str(r#"{"kind":"quadratic","quad":[[[1]]],"pad":3}"#).unwrap();
        assert_eq!(padded.materialize(), vec![p("x^2", 1), Expr::zero(1), Expr::zero(1)]);
        assert!(padded.padded(2).is_err());
    }

    #[test]
    fn json_round_trip() {
        let docs = [
            r#"{"kind":"affine","A":[[1,"-2/3"],[0,5]],"b":["7/2",0]}"#,
            r#"{"kind":"quadratic","quad":[[[1,2],[2,"1/3"]],[[0,0],[0,1]]],"A":[[1,0],[0,1]],"b":[1,2]}"#,
            r#"{"kind":"custom","components":["x1*exp(2*x3) - cos(x2)","x4^2"]}"#,
            r#"{"kind":"holomorphic","complex":["(1/2 + i)*z1^2*z2 - 3*i","z2"]}"#,
        ];
        for d in docs {
            let spec = MapSpec::from_json_str(d).unwrap();
            assert_eq!(MapSpec::from_json(&spec.to_json()).unwrap(), spec, "{d}");
        }
    }
}

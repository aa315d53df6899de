//! Quotients `numerator / Π fᵢ^eᵢ` with polynomial factors `fᵢ` assumed
//! nonvanishing on the chart.
//!
//! Conformal factors such as `λ = (1 + |x|²)/2` leave the expression class as
//! soon as they are inverted. Rather than extend the zero test, every such
//! value is carried with its divisor kept as a product of named factors; an
//! identity holds exactly when the numerator of the difference is zero. The
//! divisor is the clearing multiplier reported alongside results.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exprcore::default_names;
use crate::{Expr, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cleared {
    num: Expr,
    /// Monic nonconstant polynomial factors and their exponents (all > 0).
    den: BTreeMap<Expr, u32>,
}

/// Splits a polynomial into `(leading coefficient, monic part)`; the monic part
/// is `None` for constants.
fn normalize_factor(f: &Expr) -> Result<(Rational, Option<Expr>)> {
    if f.is_zero() {
        return Err(Error::Unsupported("zero divisor".into()));
    }
    if !f.is_polynomial() {
        return Err(Error::Unsupported(format!("divisor {f} is not a polynomial")));
    }
    if let Some(c) = f.as_constant() {
        return Ok((c, None));
    }
    let lead = f.leading_term().unwrap().1.clone();
    let monic = f.scale(&(Rational::one() / &lead));
    Ok((lead, Some(monic)))
}

impl Cleared {
    pub fn from_expr(e: Expr) -> Self {
        Cleared { num: e, den: BTreeMap::new() }
    }

    pub fn zero(nvars: usize) -> Self {
        Self::from_expr(Expr::zero(nvars))
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_expr(Expr::one(nvars))
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::from_expr(Expr::constant(nvars, c))
    }

    /// `num / Π f^e`. Factors must be nonzero polynomials; constants are folded
    /// into the numerator and the rest are made monic.
    pub fn new(num: Expr, factors: impl IntoIterator<Item = (Expr, u32)>) -> Result<Self> {
        let mut out = Self::from_expr(num);
        for (f, e) in factors {
            if f.nvars() != out.num.nvars() {
                return Err(Error::Dimension("divisor and numerator arity differ".into()));
            }
            out.divide_by_factor(&f, e)?;
        }
        Ok(out)
    }

    fn divide_by_factor(&mut self, f: &Expr, e: u32) -> Result<()> {
        if e == 0 {
            return Ok(());
        }
        let (lead, monic) = normalize_factor(f)?;
        let k = num_traits::pow(Rational::one() / lead, e as usize);
        self.num = self.num.scale(&k);
        if let Some(m) = monic {
            *self.den.entry(m).or_insert(0) += e;
        }
        Ok(())
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn numerator(&self) -> &Expr {
        &self.num
    }

    pub fn factors(&self) -> impl Iterator<Item = (&Expr, u32)> + '_ {
        self.den.iter().map(|(f, &e)| (f, e))
    }

    pub fn has_divisor(&self) -> bool {
        !self.den.is_empty()
    }

    /// The divisor `Π f^e` as a single polynomial.
    pub fn divisor(&self) -> Expr {
        self.den.iter().fold(Expr::one(self.nvars()), |acc, (f, &e)| &acc * &f.pow(e))
    }

    /// The value as a plain expression, if it has no divisor.
    pub fn as_expr(&self) -> Option<&Expr> {
        self.den.is_empty().then_some(&self.num)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True when `self - other` is identically zero.
    pub fn equivalent(&self, other: &Self) -> bool {
        self.sub(other).is_zero()
    }

    fn lcm_den(&self, other: &Self) -> BTreeMap<Expr, u32> {
        let mut l = self.den.clone();
        for (f, &e) in &other.den {
            let slot = l.entry(f.clone()).or_insert(0);
            *slot = (*slot).max(e);
        }
        l
    }

    /// Numerator rescaled to the divisor `target` (which must contain ours).
    fn lift(&self, target: &BTreeMap<Expr, u32>) -> Expr {
        let mut n = self.num.clone();
        for (f, &e) in target {
            let have = self.den.get(f).copied().unwrap_or(0);
            if e > have {
                n = &n * &f.pow(e - have);
            }
        }
        n
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return Cleared { num: &self.num + &other.num, den: self.den.clone() };
        }
        let l = self.lcm_den(other);
        Cleared { num: &self.lift(&l) + &other.lift(&l), den: l }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Cleared { num: -&self.num, den: self.den.clone() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.nvars());
        }
        let mut den = self.den.clone();
        for (f, &e) in &other.den {
            *den.entry(f.clone()).or_insert(0) += e;
        }
        Cleared { num: &self.num * &other.num, den }
    }

    pub fn mul_expr(&self, e: &Expr) -> Self {
        Cleared { num: &self.num * e, den: if e.is_zero() { BTreeMap::new() } else { self.den.clone() } }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        if k.is_zero() {
            return Self::zero(self.nvars());
        }
        Cleared { num: self.num.scale(k), den: self.den.clone() }
    }

    pub fn pow(&self, k: u32) -> Self {
        Cleared { num: self.num.pow(k), den: self.den.iter().map(|(f, &e)| (f.clone(), e * k)).collect() }
    }

    /// Multiplicative inverse. The numerator must be a nonzero constant, a
    /// single exponential monomial, or a polynomial (which then becomes a
    /// divisor factor and is assumed nonvanishing).
    pub fn recip(&self) -> Result<Self> {
        let n = self.nvars();
        if self.num.is_zero() {
            return Err(Error::Unsupported("reciprocal of zero".into()));
        }
        let top = self.divisor();
        if self.num.is_polynomial() {
            return Cleared::new(top, [(self.num.clone(), 1)]);
        }
        let terms: Vec<_> = self.num.terms().collect();
        if let [(m, c)] = terms.as_slice() {
            let trig_free = m.cos_powers().iter().chain(m.sin_powers()).all(|&k| k == 0);
            if trig_free {
                let mut inv = Expr::constant(n, Rational::one() / *c);
                if let Some(p) = m.exp_key() {
                    inv = &inv * &Expr::exp(&(-p))?;
                }
                let mut coords = Expr::one(n);
                for (j, &k) in m.coords().iter().enumerate() {
                    coords = &coords * &Expr::var(n, j)?.pow(k);
                }
                return Cleared::new(&top * &inv, [(coords, 1)]);
            }
        }
        Err(Error::Unsupported(format!("cannot invert {}", self.num)))
    }

    pub fn partial(&self, index: usize) -> Result<Self> {
        let dn = self.num.partial(index)?;
        if self.den.is_empty() {
            return Ok(Self::from_expr(dn));
        }
        let n = self.nvars();
        let factors: Vec<(&Expr, u32)> = self.den.iter().map(|(f, &e)| (f, e)).collect();
        let all = factors.iter().fold(Expr::one(n), |acc, (f, _)| &acc * f);
        let mut num = &dn * &all;
        for (k, (f, e)) in factors.iter().enumerate() {
            let df = f.partial(index)?;
            if df.is_zero() {
                continue;
            }
            let others = factors
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != k)
                .fold(Expr::one(n), |acc, (_, (g, _))| &acc * g);
            let term = &(&self.num * &df) * &others;
            num = &num - &term.scale(&Rational::from_integer((*e).into()));
        }
        let den = self.den.iter().map(|(f, &e)| (f.clone(), e + 1)).collect();
        Ok(Cleared { num, den })
    }

    /// Composition with a map given by `images`; factors are substituted too.
    pub fn substitute(&self, images: &[Expr]) -> Result<Self> {
        let num = self.num.substitute(images)?;
        let factors = self
            .den
            .iter()
            .map(|(f, &e)| f.substitute(images).map(|g| (g, e)))
            .collect::<Result<Vec<_>>>()?;
        Cleared::new(num, factors)
    }

    /// Cancels divisor factors that divide the numerator exactly.
    pub fn reduce(&self) -> Self {
        if self.num.is_zero() {
            return Self::zero(self.nvars());
        }
        let mut num = self.num.clone();
        let mut den = BTreeMap::new();
        for (f, &e) in &self.den {
            let mut left = e;
            while left > 0 {
                match num.div_exact(f) {
                    Some(q) => {
                        num = q;
                        left -= 1;
                    }
                    None => break,
                }
            }
            if left > 0 {
                den.insert(f.clone(), left);
            }
        }
        Cleared { num, den }
    }

    pub fn evaluate(&self, point: &[f64]) -> Result<f64> {
        let mut v = self.num.evaluate(point)?;
        for (f, &e) in &self.den {
            v /= f.evaluate(point)?.powi(e as i32);
        }
        Ok(v)
    }

    /// Renders as `numerator` or `(numerator)/(f1^e1*...)`.
    pub fn render(&self, names: &[String]) -> String {
        let n = self.num.render(names);
        if self.den.is_empty() {
            return n;
        }
        let d: Vec<String> = self
            .den
            .iter()
            .map(|(f, &e)| if e == 1 { format!("({})", f.render(names)) } else { format!("({})^{e}", f.render(names)) })
            .collect();
        format!("({n})/({})", d.join("*"))
    }

    /// Re-reads the numerator and factor strings produced by [`Cleared::render_parts`].
    pub fn parse_parts(numerator: &str, factors: &[(String, u32)], nvars: usize) -> Result<Self> {
        let num = Expr::parse(numerator, nvars)?;
        let fs = factors.iter().map(|(s, e)| Expr::parse(s, nvars).map(|f| (f, *e))).collect::<Result<Vec<_>>>()?;
        Cleared::new(num, fs)
    }

    /// Numerator string and `(factor string, exponent)` pairs.
    pub fn render_parts(&self, names: &[String]) -> (String, Vec<(String, u32)>) {
        (self.num.render(names), self.den.iter().map(|(f, &e)| (f.render(names), e)).collect())
    }
}

impl From<Expr> for Cleared {
    fn from(e: Expr) -> Self {
        Cleared::from_expr(e)
    }
}

impl fmt::Display for Cleared {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&default_names(self.nvars())))
    }
}

/// Sum of an iterator of cleared values over `nvars` coordinates.
pub fn sum(nvars: usize, items: impl IntoIterator<Item = Cleared>) -> Cleared {
    items.into_iter().fold(Cleared::zero(nvars), |acc, x| acc.add(&x))
}

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::Float;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A product of atom powers: coordinates, at most one exponential of a
/// polynomial, and cosines/sines of single coordinates.
///
/// Sine exponents are kept at most 1 by the owning [`Expression`]; exponential
/// atoms are merged on multiplication, so a monomial never holds two of them.
#[derive(Clone, Debug)]
pub struct Monomial<C: Scalar> {
    pub(crate) coords: Vec<u32>,
    pub(crate) exp: Option<Arc<Expression<C>>>,
    pub(crate) cos: Vec<u32>,
    pub(crate) sin: Vec<u32>,
}

impl<C: Scalar> Monomial<C> {
    pub fn unit(nvars: usize) -> Self {
        Monomial { coords: vec![0; nvars], exp: None, cos: vec![0; nvars], sin: vec![0; nvars] }
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn exp_key(&self) -> Option<&Expression<C>> {
        self.exp.as_deref()
    }

    pub fn cos_powers(&self) -> &[u32] {
        &self.cos
    }

    pub fn sin_powers(&self) -> &[u32] {
        &self.sin
    }

    /// Total degree over coordinate and trig atoms (exponentials excluded).
    pub fn degree(&self) -> u32 {
        self.coords.iter().chain(&self.cos).chain(&self.sin).sum()
    }

    pub fn coord_degree(&self) -> u32 {
        self.coords.iter().sum()
    }

    /// True when only coordinate atoms appear.
    pub fn is_polynomial(&self) -> bool {
        self.exp.is_none() && self.cos.iter().all(|&k| k == 0) && self.sin.iter().all(|&k| k == 0)
    }

    pub fn is_unit(&self) -> bool {
        self.is_polynomial() && self.coords.iter().all(|&k| k == 0)
    }

    fn mul(&self, other: &Self) -> Self {
        let zip = |a: &[u32], b: &[u32]| a.iter().zip(b).map(|(x, y)| x + y).collect::<Vec<_>>();
        let exp = match (&self.exp, &other.exp) {
            (None, None) => None,
            (Some(p), None) | (None, Some(p)) => Some(p.clone()),
            (Some(p), Some(q)) => {
                let s = p.as_ref() + q.as_ref();
                if s.is_zero() {
                    None
                } else {
                    Some(Arc::new(s))
                }
            }
        };
        Monomial {
            coords: zip(&self.coords, &other.coords),
            exp,
            cos: zip(&self.cos, &other.cos),
            sin: zip(&self.sin, &other.sin),
        }
    }

    /// The part of the monomial that is not a coordinate power.
    fn rest(&self) -> Self {
        Monomial {
            coords: vec![0; self.coords.len()],
            exp: self.exp.clone(),
            cos: self.cos.clone(),
            sin: self.sin.clone(),
        }
    }

    fn coords_only(&self) -> Self {
        let n = self.coords.len();
        Monomial { coords: self.coords.clone(), exp: None, cos: vec![0; n], sin: vec![0; n] }
    }
}

// Graded lexicographic: total degree, then coordinates, then the exponential
// key, then cosines, then sines.
impl<C: Scalar> Ord for Monomial<C> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.coords.cmp(&other.coords))
            .then_with(|| match (&self.exp, &other.exp) {
                (None, None) => Ordering::Equal,
                (None, Some(_)) => Ordering::Less,
                (Some(_), None) => Ordering::Greater,
                (Some(p), Some(q)) => p.as_ref().cmp(q.as_ref()),
            })
            .then_with(|| self.cos.cmp(&other.cos))
            .then_with(|| self.sin.cmp(&other.sin))
    }
}

impl<C: Scalar> PartialOrd for Monomial<C> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<C: Scalar> PartialEq for Monomial<C> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<C: Scalar> Eq for Monomial<C> {}

/// A canonical sum of monomials with coefficients in `C`.
///
/// Terms live in a map keyed by monomial, so two canonical expressions are
/// equal exactly when they are structurally equal. No zero coefficients are
/// stored and every sine exponent is at most one (higher powers are rewritten
/// through `sin² = 1 - cos²`).
#[derive(Clone, Debug)]
pub struct Expression<C: Scalar> {
    nvars: usize,
    terms: BTreeMap<Monomial<C>, C>,
}

impl<C: Scalar> Ord for Expression<C> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.nvars.cmp(&other.nvars).then_with(|| {
            let mut a = self.terms.iter();
            let mut b = other.terms.iter();
            loop {
                match (a.next(), b.next()) {
                    (None, None) => return Ordering::Equal,
                    (None, Some(_)) => return Ordering::Less,
                    (Some(_), None) => return Ordering::Greater,
                    (Some((ma, ca)), Some((mb, cb))) => {
                        let o = ma.cmp(mb).then_with(|| ca.total_cmp(cb));
                        if o != Ordering::Equal {
                            return o;
                        }
                    }
                }
            }
        })
    }
}

impl<C: Scalar> PartialOrd for Expression<C> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<C: Scalar> PartialEq for Expression<C> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<C: Scalar> Eq for Expression<C> {}

fn insert_term<C: Scalar>(map: &mut BTreeMap<Monomial<C>, C>, mut mono: Monomial<C>, coeff: C) {
    if coeff.is_zero() {
        return;
    }
    if let Some(i) = mono.sin.iter().position(|&s| s >= 2) {
        mono.sin[i] -= 2;
        let mut with_cos = mono.clone();
        with_cos.cos[i] += 2;
        insert_term(map, with_cos, coeff.neg_ref());
        insert_term(map, mono, coeff);
        return;
    }
    match map.entry(mono) {
        Entry::Vacant(v) => {
            v.insert(coeff);
        }
        Entry::Occupied(mut o) => {
            let sum = o.get().add_ref(&coeff);
            if sum.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = sum;
            }
        }
    }
}

fn check_index(index: usize, nvars: usize) -> Result<()> {
    if index >= nvars {
        Err(Error::IndexOutOfRange { index, nvars })
    } else {
        Ok(())
    }
}

impl<C: Scalar> Expression<C> {
    pub fn zero(nvars: usize) -> Self {
        Expression { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, C::one())
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        Self::from_terms(nvars, [(Monomial::unit(nvars), c)])
    }

    pub fn from_i64(nvars: usize, v: i64) -> Self {
        Self::constant(nvars, C::from_i64(v))
    }

    /// The coordinate `x_index`.
    pub fn var(nvars: usize, index: usize) -> Result<Self> {
        check_index(index, nvars)?;
        let mut m = Monomial::unit(nvars);
        m.coords[index] = 1;
        Ok(Self::from_terms(nvars, [(m, C::one())]))
    }

    /// `exp(p)` for a polynomial exponent `p`; `exp(0)` is `1`.
    pub fn exp(p: &Self) -> Result<Self> {
        if !p.is_polynomial() {
            return Err(Error::Unsupported("exponent of exp must be a polynomial in the coordinates".into()));
        }
        if p.is_zero() {
            return Ok(Self::one(p.nvars));
        }
        let mut m = Monomial::unit(p.nvars);
        m.exp = Some(Arc::new(p.clone()));
        Ok(Self::from_terms(p.nvars, [(m, C::one())]))
    }

    pub fn cos(nvars: usize, index: usize) -> Result<Self> {
        check_index(index, nvars)?;
        let mut m = Monomial::unit(nvars);
        m.cos[index] = 1;
        Ok(Self::from_terms(nvars, [(m, C::one())]))
    }

    pub fn sin(nvars: usize, index: usize) -> Result<Self> {
        check_index(index, nvars)?;
        let mut m = Monomial::unit(nvars);
        m.sin[index] = 1;
        Ok(Self::from_terms(nvars, [(m, C::one())]))
    }

    /// Builds a canonical expression from arbitrary (possibly repeated or
    /// unreduced) terms. Monomials must have `nvars` slots.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial<C>, C)>) -> Self {
        let mut map = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.coords.len(), nvars, "monomial arity does not match nvars");
            insert_term(&mut map, m, c);
        }
        Expression { nvars, terms: map }
    }

    /// Rebuilds the canonical form from this expression's own terms.
    pub fn canonicalize(&self) -> Self {
        Self::from_terms(self.nvars, self.terms.iter().map(|(m, c)| (m.clone(), c.clone())))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial<C>, &C)> + '_ {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Identically-zero test. On a canonical expression this is exactly
    /// "no stored terms".
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_constant(&self) -> Option<C> {
        match self.terms.len() {
            0 => Some(C::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_unit().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(Monomial::is_polynomial)
    }

    /// Total coordinate degree of the polynomial part.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::coord_degree).max().unwrap_or(0)
    }

    /// The largest term in monomial order.
    pub fn leading_term(&self) -> Option<(&Monomial<C>, &C)> {
        self.terms.iter().next_back()
    }

    fn same_arity(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::Dimension(format!("{} vs {} variables", self.nvars, other.nvars)));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_arity(other)?;
        let mut map = self.terms.clone();
        for (m, c) in &other.terms {
            insert_term(&mut map, m.clone(), c.clone());
        }
        Ok(Expression { nvars: self.nvars, terms: map })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.same_arity(other)?;
        let mut map = self.terms.clone();
        for (m, c) in &other.terms {
            insert_term(&mut map, m.clone(), c.neg_ref());
        }
        Ok(Expression { nvars: self.nvars, terms: map })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.same_arity(other)?;
        let mut map = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                insert_term(&mut map, ma.mul(mb), ca.mul_ref(cb));
            }
        }
        Ok(Expression { nvars: self.nvars, terms: map })
    }

    pub fn scale(&self, k: &C) -> Self {
        if k.is_zero() {
            return Self::zero(self.nvars);
        }
        Expression { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), c.mul_ref(k))).collect() }
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact partial derivative with respect to coordinate `index`.
    pub fn partial(&self, index: usize) -> Result<Self> {
        check_index(index, self.nvars)?;
        let mut map = BTreeMap::new();
        let mut exp_parts = Vec::new();
        for (m, c) in &self.terms {
            let a = m.coords[index];
            if a > 0 {
                let mut d = m.clone();
                d.coords[index] -= 1;
                insert_term(&mut map, d, c.mul_ref(&C::from_i64(a as i64)));
            }
            if let Some(p) = &m.exp {
                let dp = p.partial(index)?;
                if !dp.is_zero() {
                    exp_parts.push(&Self::from_terms(self.nvars, [(m.clone(), c.clone())]) * &dp);
                }
            }
            let b = m.cos[index];
            if b > 0 {
                let mut d = m.clone();
                d.cos[index] -= 1;
                d.sin[index] += 1;
                insert_term(&mut map, d, c.mul_ref(&C::from_i64(b as i64)).neg_ref());
            }
            let s = m.sin[index];
            if s > 0 {
                let mut d = m.clone();
                d.sin[index] -= 1;
                d.cos[index] += 1;
                insert_term(&mut map, d, c.mul_ref(&C::from_i64(s as i64)));
            }
        }
        for e in exp_parts {
            for (m, c) in e.terms {
                insert_term(&mut map, m, c);
            }
        }
        Ok(Expression { nvars: self.nvars, terms: map })
    }

    /// Replaces coordinate `i` by `images[i]`.
    ///
    /// Exponents must stay polynomial, and trig atoms only accept a bare
    /// coordinate (or zero) as argument; anything else is unsupported.
    pub fn substitute(&self, images: &[Self]) -> Result<Self> {
        if images.len() != self.nvars {
            return Err(Error::Dimension(format!("{} images for {} variables", images.len(), self.nvars)));
        }
        let target = match images.first() {
            Some(first) => first.nvars,
            None => return Ok(self.clone()),
        };
        if let Some(bad) = images.iter().find(|e| e.nvars != target) {
            return Err(Error::Dimension(format!("images over {} and {} variables", target, bad.nvars)));
        }
        let mut powers: Vec<Vec<Self>> = images.iter().map(|e| vec![Self::one(target), e.clone()]).collect();
        let mut power = |j: usize, k: u32| -> Self {
            let cache = &mut powers[j];
            while cache.len() <= k as usize {
                let next = &cache[cache.len() - 1] * &cache[1];
                cache.push(next);
            }
            cache[k as usize].clone()
        };
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut t = Self::constant(target, c.clone());
            for (j, &k) in m.coords.iter().enumerate() {
                if k > 0 {
                    t = &t * &power(j, k);
                }
            }
            if let Some(p) = &m.exp {
                let q = p.substitute(images)?;
                if !q.is_polynomial() {
                    return Err(Error::Unsupported("substitution puts a non-polynomial inside exp".into()));
                }
                t = &t * &Self::exp(&q)?;
            }
            for j in 0..self.nvars {
                let (b, s) = (m.cos[j], m.sin[j]);
                if b == 0 && s == 0 {
                    continue;
                }
                let (cos_img, sin_img) = trig_image(&images[j])?;
                if b > 0 {
                    t = &t * &cos_img.pow(b);
                }
                if s > 0 {
                    t = &t * &sin_img.pow(s);
                }
            }
            for (tm, tc) in t.terms {
                insert_term(&mut out.terms, tm, tc);
            }
        }
        Ok(out)
    }

    /// Floating-point evaluation at `point`.
    pub fn evaluate<F: Float>(&self, point: &[F]) -> Result<F> {
        if point.len() != self.nvars {
            return Err(Error::Dimension(format!("point of length {} for {} variables", point.len(), self.nvars)));
        }
        let mut acc = F::zero();
        for (m, c) in &self.terms {
            let mut t = F::from(c.to_f64()).unwrap_or_else(F::nan);
            for j in 0..self.nvars {
                let x = point[j];
                if m.coords[j] > 0 {
                    t = t * x.powi(m.coords[j] as i32);
                }
                if m.cos[j] > 0 {
                    t = t * x.cos().powi(m.cos[j] as i32);
                }
                if m.sin[j] > 0 {
                    t = t * x.sin().powi(m.sin[j] as i32);
                }
            }
            if let Some(p) = &m.exp {
                t = t * p.evaluate(point)?.exp();
            }
            acc = acc + t;
        }
        Ok(acc)
    }

    /// Exact evaluation; only pure polynomials are supported.
    pub fn evaluate_exact(&self, point: &[C]) -> Result<C> {
        if point.len() != self.nvars {
            return Err(Error::Dimension(format!("point of length {} for {} variables", point.len(), self.nvars)));
        }
        if !self.is_polynomial() {
            return Err(Error::Unsupported("exact evaluation of exp/cos/sin terms".into()));
        }
        let mut acc = C::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(&m.coords) {
                for _ in 0..k {
                    t = t.mul_ref(x);
                }
            }
            acc = acc.add_ref(&t);
        }
        Ok(acc)
    }

    /// Exact quotient `self / divisor` when `divisor` is a nonzero polynomial
    /// dividing `self`; `None` otherwise.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if self.nvars != divisor.nvars || divisor.is_zero() || !divisor.is_polynomial() {
            return None;
        }
        let (lead_m, lead_c) = divisor.leading_term()?;
        // group by the non-coordinate part; the divisor only touches coordinates
        let mut groups: BTreeMap<Monomial<C>, Self> = BTreeMap::new();
        for (m, c) in &self.terms {
            let g = groups.entry(m.rest()).or_insert_with(|| Self::zero(self.nvars));
            insert_term(&mut g.terms, m.coords_only(), c.clone());
        }
        let mut out = Self::zero(self.nvars);
        for (rest, mut r) in groups {
            let mut q = Self::zero(self.nvars);
            while let Some((rm, rc)) = r.leading_term() {
                if rm.coords.iter().zip(&lead_m.coords).any(|(a, b)| a < b) {
                    return None;
                }
                let mut tm = Monomial::unit(self.nvars);
                for j in 0..self.nvars {
                    tm.coords[j] = rm.coords[j] - lead_m.coords[j];
                }
                let tc = rc.div_ref(lead_c);
                for (dm, dc) in &divisor.terms {
                    insert_term(&mut r.terms, tm.mul(dm), tc.mul_ref(dc).neg_ref());
                }
                insert_term(&mut q.terms, tm, tc);
            }
            let rest_e = Self::from_terms(self.nvars, [(rest, C::one())]);
            out = &out + &(&q * &rest_e);
        }
        Some(out)
    }

    /// Reinterprets the expression over a larger coordinate set, placing the
    /// current coordinates at `offset..offset + nvars`.
    pub fn embed(&self, nvars: usize, offset: usize) -> Result<Self> {
        if offset + self.nvars > nvars {
            return Err(Error::Dimension(format!("cannot embed {} variables at {offset} into {nvars}", self.nvars)));
        }
        let images: Vec<Self> = (0..self.nvars).map(|i| Self::var(nvars, offset + i)).collect::<Result<_>>()?;
        if self.nvars == 0 {
            return Ok(Self::from_terms(nvars, self.terms.values().map(|c| (Monomial::unit(nvars), c.clone()))));
        }
        self.substitute(&images)
    }
}

fn trig_image<C: Scalar>(image: &Expression<C>) -> Result<(Expression<C>, Expression<C>)> {
    let n = image.nvars;
    if image.is_zero() {
        return Ok((Expression::one(n), Expression::zero(n)));
    }
    if image.terms.len() == 1 {
        let (m, c) = image.terms.iter().next().unwrap();
        if m.is_polynomial() && m.coord_degree() == 1 && c.total_cmp(&C::one()) == Ordering::Equal {
            let j = m.coords.iter().position(|&k| k == 1).unwrap();
            return Ok((Expression::cos(n, j)?, Expression::sin(n, j)?));
        }
    }
    Err(Error::Unsupported("cos/sin of anything but a single coordinate".into()))
}

impl<C: Scalar> Add for &Expression<C> {
    type Output = Expression<C>;
    fn add(self, rhs: &Expression<C>) -> Expression<C> {
        self.try_add(rhs).expect("expression arity mismatch")
    }
}

impl<C: Scalar> Sub for &Expression<C> {
    type Output = Expression<C>;
    fn sub(self, rhs: &Expression<C>) -> Expression<C> {
        self.try_sub(rhs).expect("expression arity mismatch")
    }
}

impl<C: Scalar> Mul for &Expression<C> {
    type Output = Expression<C>;
    fn mul(self, rhs: &Expression<C>) -> Expression<C> {
        self.try_mul(rhs).expect("expression arity mismatch")
    }
}

impl<C: Scalar> Neg for &Expression<C> {
    type Output = Expression<C>;
    fn neg(self) -> Expression<C> {
        Expression { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg_ref())).collect() }
    }
}

impl<C: Scalar> Add for Expression<C> {
    type Output = Expression<C>;
    fn add(self, rhs: Expression<C>) -> Expression<C> {
        &self + &rhs
    }
}

impl<C: Scalar> Sub for Expression<C> {
    type Output = Expression<C>;
    fn sub(self, rhs: Expression<C>) -> Expression<C> {
        &self - &rhs
    }
}

impl<C: Scalar> Mul for Expression<C> {
    type Output = Expression<C>;
    fn mul(self, rhs: Expression<C>) -> Expression<C> {
        &self * &rhs
    }
}

impl<C: Scalar> Neg for Expression<C> {
    type Output = Expression<C>;
    fn neg(self) -> Expression<C> {
        -&self
    }
}

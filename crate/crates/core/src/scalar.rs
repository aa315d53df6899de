//! Coefficient types for symbolic expressions.
//!
//! [`Expression`](crate::exprcore::Expression) is generic over its coefficient
//! field. The exact engine uses [`Rational`](crate::Rational); `f64` and `f32`
//! are available for quick numeric experiments, where the zero test is only as
//! good as floating-point cancellation.

use std::cmp::Ordering;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A coefficient field usable inside an expression.
pub trait Scalar: Clone + Debug + Zero + One + Send + Sync + 'static {
    /// True when arithmetic on this type is exact.
    const EXACT: bool;

    fn from_i64(v: i64) -> Self;
    fn to_f64(&self) -> f64;

    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    /// Division; `other` must be nonzero.
    fn div_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;

    fn is_negative(&self) -> bool;
    /// A total order, used to keep expression maps canonical.
    fn total_cmp(&self, other: &Self) -> Ordering;
    /// Absolute value rendered without sign, parenthesized when it is not a
    /// plain integer.
    fn render_abs(&self) -> String;
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn to_f64(&self) -> f64 {
        // numerator and denominator may individually overflow f64
        match (self.numer().to_f64(), self.denom().to_f64()) {
            (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
            _ => {
                let shift = self.numer().bits().max(self.denom().bits()).saturating_sub(1000);
                let n = (self.numer() >> shift).to_f64().unwrap_or(f64::NAN);
                let d = (self.denom() >> shift).to_f64().unwrap_or(f64::NAN);
                n / d
            }
        }
    }

    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }

    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }

    fn div_ref(&self, other: &Self) -> Self {
        self / other
    }

    fn neg_ref(&self) -> Self {
        -self
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }

    fn total_cmp(&self, other: &Self) -> Ordering {
        self.cmp(other)
    }

    fn render_abs(&self) -> String {
        let a = self.abs();
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("({}/{})", a.numer(), a.denom())
        }
    }
}

macro_rules! float_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            const EXACT: bool = false;

            fn from_i64(v: i64) -> Self {
                v as $t
            }

            fn to_f64(&self) -> f64 {
                *self as f64
            }

            fn add_ref(&self, other: &Self) -> Self {
                self + other
            }

            fn sub_ref(&self, other: &Self) -> Self {
                self - other
            }

            fn mul_ref(&self, other: &Self) -> Self {
                self * other
            }

            fn div_ref(&self, other: &Self) -> Self {
                self / other
            }

            fn neg_ref(&self) -> Self {
                -self
            }

            fn is_negative(&self) -> bool {
                *self < 0.0
            }

            fn total_cmp(&self, other: &Self) -> Ordering {
                <$t>::total_cmp(self, other)
            }

            fn render_abs(&self) -> String {
                let a = self.abs();
                if a.fract() == 0.0 && a.abs() < 1e15 {
                    format!("{}", a as i64)
                } else {
                    format!("{a:e}")
                }
            }
        }
    };
}

float_scalar!(f64);
float_scalar!(f32);

/// Builds an exact rational `p/q`. Panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Parses an exact rational from an integer, `p/q`, or a finite decimal string.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(BigRational::new(p, q));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().all(|c| c.is_ascii_digit()) || !frac_part.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let n: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().ok()? };
    let d = num_traits::pow(BigInt::from(10), frac_part.len());
    let r = BigRational::new(n, d);
    Some(if neg { -r } else { r })
}

/// Renders a rational as an integer or `p/q` string (the JSON coefficient form).
pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("3"), Some(rat(3, 1)));
        assert_eq!(parse_rational("-1/2"), Some(rat(-1, 2)));
        assert_eq!(parse_rational("4/6"), Some(rat(2, 3)));
        assert_eq!(parse_rational("0.125"), Some(rat(1, 8)));
        assert_eq!(parse_rational("-2.5"), Some(rat(-5, 2)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("abc"), None);
        assert_eq!(parse_rational("."), None);
    }

    #[test]
    fn reduced_and_positive_denominator() {
        let r = rat(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        // (a/b + c/d)·bd = ad + cb
        let (a, b, c, d) = (3i64, 7i64, -5i64, 4i64);
        let sum = rat(a, b) + rat(c, d);
        assert_eq!(sum * rat(b * d, 1), rat(a * d + c * b, 1));
    }

    #[test]
    fn huge_rational_to_f64() {
        let big = BigRational::new(num_traits::pow(BigInt::from(10), 400), num_traits::pow(BigInt::from(10), 399));
        assert!((Scalar::to_f64(&big) - 10.0).abs() < 1e-12);
    }

    #[test]
    fn render() {
        assert_eq!(rat(-5, 4).render_abs(), "(5/4)");
        assert_eq!(rat(7, 1).render_abs(), "7");
        assert_eq!(format_rational(&rat(-5, 4)), "-5/4");
        assert_eq!(2.0f64.render_abs(), "2");
    }
}

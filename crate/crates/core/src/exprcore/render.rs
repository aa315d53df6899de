use std::fmt;

use super::expression::{Expression, Monomial};
use crate::scalar::Scalar;

/// Default coordinate names: `x, y, z` up to three variables, `x1..xn` beyond.
pub fn default_names(nvars: usize) -> Vec<String> {
    if nvars <= 3 {
        ["x", "y", "z"][..nvars].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=nvars).map(|i| format!("x{i}")).collect()
    }
}

fn power(base: &str, k: u32) -> String {
    if k == 1 {
        base.to_string()
    } else {
        format!("{base}^{k}")
    }
}

fn render_monomial<C: Scalar>(m: &Monomial<C>, names: &[String]) -> String {
    let mut parts = Vec::new();
    for (j, &k) in m.coords().iter().enumerate() {
        if k > 0 {
            parts.push(power(&names[j], k));
        }
    }
    if let Some(p) = m.exp_key() {
        parts.push(format!("exp({})", p.render(names)));
    }
    for (j, &k) in m.cos_powers().iter().enumerate() {
        if k > 0 {
            parts.push(power(&format!("cos({})", names[j]), k));
        }
    }
    for (j, &k) in m.sin_powers().iter().enumerate() {
        if k > 0 {
            parts.push(power(&format!("sin({})", names[j]), k));
        }
    }
    parts.join("*")
}

impl<C: Scalar> Expression<C> {
    /// Renders with explicit `*` and `^`, rationals as `p/q`, so the output
    /// parses back to the same expression.
    ///
    /// Terms are listed by ascending degree; within a degree the larger
    /// monomial (in the canonical order) comes first.
    pub fn render(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms: Vec<_> = self.terms().collect();
        terms.sort_by(|(a, _), (b, _)| a.degree().cmp(&b.degree()).then_with(|| b.cmp(a)));
        let mut out = String::new();
        for (i, (m, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let body = render_monomial(m, names);
            let abs = c.render_abs();
            if body.is_empty() {
                out.push_str(&abs);
            } else if abs == "1" {
                out.push_str(&body);
            } else {
                out.push_str(&abs);
                out.push('*');
                out.push_str(&body);
            }
        }
        out
    }
}

impl<C: Scalar> fmt::Display for Expression<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&default_names(self.nvars())))
    }
}

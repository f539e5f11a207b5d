//! Canonical text output: blades in ascending lexicographic order,
//! monomials in descending graded-reverse-lex order, rationals as `p/q` or
//! a plain integer. Serialization is a pure function of the value, and
//! parsing it back reproduces the value bit-exactly.

use std::fmt;

use num_traits::One;

use crate::exterior::{Blade, Exterior, Variance};
use crate::polyring::{Monomial, Polynomial, Rational};
use crate::textio::Value;

pub(crate) fn rational_text(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn monomial_text(names: &[String], m: &Monomial, coef: &Rational) -> String {
    let mut parts = Vec::new();
    let constant = m.is_constant();
    if constant || !coef.is_one() {
        parts.push(rational_text(coef));
    }
    for (i, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if e == 1 {
            parts.push(names[i].clone());
        } else {
            parts.push(format!("{}^{}", names[i], e));
        }
    }
    parts.join(" * ")
}

fn poly_text(p: &Polynomial) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let names = p.context().var_names();
    let parts: Vec<String> =
        p.terms().rev().map(|(m, c)| monomial_text(names, m, c)).collect();
    parts.join(" + ")
}

fn blade_text(prefix: &str, blade: &Blade) -> String {
    let parts: Vec<String> = blade.indices().iter().map(|i| format!("{prefix}{i}")).collect();
    parts.join(" /\\ ")
}

fn graded_text<V: Variance>(v: &Exterior<V>) -> String {
    if v.is_zero() {
        return "0".to_string();
    }
    if v.degree() == 0 {
        return poly_text(&v.to_poly().expect("degree 0"));
    }
    let mut parts = Vec::new();
    for (blade, coef) in v.terms() {
        let b = blade_text(V::AXIS_PREFIX, blade);
        if coef.is_one() {
            parts.push(b);
        } else if coef.num_terms() == 1 {
            parts.push(format!("{} * {}", poly_text(coef), b));
        } else {
            parts.push(format!("({}) * {}", poly_text(coef), b));
        }
    }
    parts.join(" + ")
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&poly_text(self))
    }
}

impl<V: Variance> fmt::Display for Exterior<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&graded_text(self))
    }
}

/// Canonical text for any parsed value.
pub fn to_text(v: &Value) -> String {
    match v {
        Value::Poly(p) => poly_text(p),
        Value::MultiVector(m) => graded_text(m),
        Value::Form(w) => graded_text(w),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::Context;
    use crate::exterior::{Form, MultiVector};
    use crate::textio::parse::{parse_form, parse_multivector, parse_poly};

    fn ctx(n: usize) -> Context {
        Context::new(n).unwrap()
    }

    #[test]
    fn canonical_examples() {
        let c = ctx(3);
        assert_eq!(MultiVector::basis(&c, &[1, 2]).unwrap().to_string(), "D1 /\\ D2");
        let v = parse_multivector("x1^2 * D1 /\\ D3 - D1 /\\ D2", &c).unwrap();
        assert_eq!(v.to_string(), "-1 * D1 /\\ D2 + x1^2 * D1 /\\ D3");
        assert_eq!(Form::basis(&c, &[1, 3]).unwrap().to_string(), "dx1 /\\ dx3");
        assert_eq!(MultiVector::zero(&c, 2).to_string(), "0");
    }

    #[test]
    fn polynomial_ordering_is_grevlex_descending() {
        let c = ctx(2);
        let p = parse_poly("1 + x2 + x1 + x2^2", &c).unwrap();
        assert_eq!(p.to_string(), "x2^2 + x1 + x2 + 1");
        let q = parse_poly("x2 - x1", &c).unwrap();
        assert_eq!(q.to_string(), "-1 * x1 + x2");
        assert_eq!(parse_poly("3/2", &c).unwrap().to_string(), "3/2");
        assert_eq!(Polynomial::zero(&c).to_string(), "0");
    }

    #[test]
    fn text_roundtrips() {
        let c = ctx(3);
        for src in [
            "x1^2 * D1 /\\ D2 + 3 * D2 /\\ D3",
            "-1 * D1 /\\ D2 + x1^2 * D1 /\\ D3",
            "(x1 + 1) * D2",
            "(-1 * x1 + x2) * D1 /\\ D3 + 7/2 * D2 /\\ D3",
            "x3^4 + -5/3 * x1 * x2 + 1",
        ] {
            if src.contains('D') {
                let v = parse_multivector(src, &c).unwrap();
                assert_eq!(parse_multivector(&v.to_string(), &c).unwrap(), v);
            } else {
                let p = parse_poly(src, &c).unwrap();
                assert_eq!(parse_poly(&p.to_string(), &c).unwrap(), p);
            }
        }
        let w = parse_form("x2 * dx1 /\\ dx2 + dx1 /\\ dx3", &c).unwrap();
        assert_eq!(parse_form(&w.to_string(), &c).unwrap(), w);
    }
}

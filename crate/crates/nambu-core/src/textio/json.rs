//! Deterministic JSON interchange. The schema is
//! `{"n", "vars", "kind", "degree", "terms": [{"blade": [...],
//! "poly": [{"coef": "...", "exp": [...]}]}]}` with blades ascending and
//! monomials in descending graded-reverse-lex order.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::context::Context;
use crate::error::{Error, Result};
use crate::exterior::{Blade, Exterior, Variance};
use crate::polyring::{Polynomial, Rational};
use crate::textio::text::rational_text;
use crate::textio::{ParseError, ParseErrorKind, SourceSpan, Value};

#[derive(Debug, Serialize, Deserialize)]
struct JsonValue {
    n: usize,
    vars: Vec<String>,
    kind: String,
    degree: usize,
    terms: Vec<JsonTerm>,
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonTerm {
    blade: Vec<usize>,
    poly: Vec<JsonMono>,
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonMono {
    coef: String,
    exp: Vec<u32>,
}

fn poly_to_monos(p: &Polynomial) -> Vec<JsonMono> {
    p.terms()
        .rev()
        .map(|(m, c)| JsonMono { coef: rational_text(c), exp: m.exponents().to_vec() })
        .collect()
}

fn graded_to_json<V: Variance>(v: &Exterior<V>, kind: &str) -> JsonValue {
    let ctx = v.context();
    JsonValue {
        n: ctx.dim(),
        vars: ctx.var_names().to_vec(),
        kind: kind.to_string(),
        degree: v.degree(),
        terms: v
            .terms()
            .map(|(b, c)| JsonTerm { blade: b.indices().to_vec(), poly: poly_to_monos(c) })
            .collect(),
    }
}

/// Canonical JSON text for any value.
pub fn to_json(v: &Value) -> String {
    let payload = match v {
        Value::Poly(p) => JsonValue {
            n: p.context().dim(),
            vars: p.context().var_names().to_vec(),
            kind: "poly".to_string(),
            degree: 0,
            terms: if p.is_zero() {
                vec![]
            } else {
                vec![JsonTerm { blade: vec![], poly: poly_to_monos(p) }]
            },
        },
        Value::MultiVector(m) => graded_to_json(m, "multivector"),
        Value::Form(w) => graded_to_json(w, "form"),
    };
    serde_json::to_string(&payload).expect("serialization cannot fail")
}

fn jerr(text: &str, kind: ParseErrorKind, msg: impl Into<String>) -> Error {
    Error::Parse(ParseError::new(SourceSpan::new(0, text.len()), kind, msg))
}

fn parse_rational(text: &str, s: &str) -> Result<Rational> {
    let (numer, denom) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = numer
        .parse()
        .map_err(|_| jerr(text, ParseErrorKind::Syntax, format!("bad coefficient {s:?}")))?;
    let d: BigInt = denom
        .parse()
        .map_err(|_| jerr(text, ParseErrorKind::Syntax, format!("bad coefficient {s:?}")))?;
    if d.is_zero() {
        return Err(jerr(text, ParseErrorKind::Syntax, "zero denominator"));
    }
    Ok(Rational::new(n, d))
}

fn monos_to_poly(text: &str, ctx: &Context, monos: &[JsonMono]) -> Result<Polynomial> {
    let mut acc = Polynomial::zero(ctx);
    for mono in monos {
        if mono.exp.len() != ctx.dim() {
            return Err(jerr(
                text,
                ParseErrorKind::Syntax,
                format!("exponent vector of length {} in a {}-variable chart", mono.exp.len(), ctx.dim()),
            ));
        }
        let coef = parse_rational(text, &mono.coef)?;
        if coef.is_zero() {
            return Err(jerr(text, ParseErrorKind::Syntax, "zero coefficient stored"));
        }
        let term = Polynomial::monomial(ctx, &mono.exp, coef);
        let next = acc.add(&term)?;
        if next.num_terms() != acc.num_terms() + 1 {
            return Err(jerr(text, ParseErrorKind::Syntax, "duplicate monomial"));
        }
        acc = next;
    }
    Ok(acc)
}

fn terms_to_graded<V: Variance>(
    text: &str,
    ctx: &Context,
    degree: usize,
    terms: &[JsonTerm],
) -> Result<Exterior<V>> {
    if degree > ctx.dim() {
        return Err(jerr(
            text,
            ParseErrorKind::DegreeMismatch,
            format!("degree {degree} exceeds the dimension {}", ctx.dim()),
        ));
    }
    let mut out = Exterior::<V>::zero(ctx, degree);
    for term in terms {
        if term.blade.len() != degree {
            return Err(jerr(
                text,
                ParseErrorKind::DegreeMismatch,
                format!("blade of length {} in a degree-{degree} value", term.blade.len()),
            ));
        }
        for &i in &term.blade {
            if i < 1 || i > ctx.dim() {
                return Err(jerr(
                    text,
                    ParseErrorKind::IndexRange,
                    format!("blade index {i} out of range 1..={}", ctx.dim()),
                ));
            }
        }
        if term.blade.windows(2).any(|w| w[0] >= w[1]) {
            return Err(jerr(text, ParseErrorKind::Syntax, "blade indices must be sorted"));
        }
        let blade = Blade::new(ctx, &term.blade)?;
        if out.coefficient(&blade).is_some() {
            return Err(jerr(text, ParseErrorKind::Syntax, "duplicate blade"));
        }
        let coef = monos_to_poly(text, ctx, &term.poly)?;
        if coef.is_zero() {
            return Err(jerr(text, ParseErrorKind::Syntax, "zero blade coefficient stored"));
        }
        out.insert(blade, coef)?;
    }
    Ok(out)
}

/// Decodes the JSON interchange format; the chart is read from the payload.
pub fn from_json(text: &str) -> Result<Value> {
    let payload: JsonValue = serde_json::from_str(text)
        .map_err(|e| jerr(text, ParseErrorKind::Syntax, format!("malformed JSON: {e}")))?;
    if payload.vars.len() != payload.n {
        return Err(jerr(
            text,
            ParseErrorKind::Syntax,
            format!("{} variable names for dimension {}", payload.vars.len(), payload.n),
        ));
    }
    let ctx = Context::with_names(payload.vars.clone())?;
    match payload.kind.as_str() {
        "poly" => {
            if payload.degree != 0 {
                return Err(jerr(text, ParseErrorKind::DegreeMismatch, "polynomials have degree 0"));
            }
            if payload.terms.len() > 1 {
                return Err(jerr(text, ParseErrorKind::Syntax, "polynomials carry a single term entry"));
            }
            let poly = match payload.terms.first() {
                None => Polynomial::zero(&ctx),
                Some(t) => {
                    if !t.blade.is_empty() {
                        return Err(jerr(
                            text,
                            ParseErrorKind::Syntax,
                            "polynomials have an empty blade",
                        ));
                    }
                    monos_to_poly(text, &ctx, &t.poly)?
                }
            };
            Ok(Value::Poly(poly))
        }
        "multivector" => Ok(Value::MultiVector(terms_to_graded::<crate::exterior::Contra>(
            text,
            &ctx,
            payload.degree,
            &payload.terms,
        )?)),
        "form" => Ok(Value::Form(terms_to_graded::<crate::exterior::Co>(
            text,
            &ctx,
            payload.degree,
            &payload.terms,
        )?)),
        other => Err(jerr(text, ParseErrorKind::Syntax, format!("unknown kind {other:?}"))),
    }
}

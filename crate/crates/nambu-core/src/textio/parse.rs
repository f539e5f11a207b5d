use num_bigint::BigInt;
use num_traits::Zero;

use crate::context::Context;
use crate::error::{Error, Result};
use crate::exterior::{Blade, Exterior, Form, MultiVector, Variance};
use crate::polyring::{Polynomial, Rational};
use crate::textio::lex::{lex, Tok, Token};
use crate::textio::{ParseError, ParseErrorKind, SourceSpan, Value};

const MAX_PAREN_DEPTH: usize = 64;
const MAX_EXPONENT: u32 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValueKind {
    Poly,
    MultiVector,
    Form,
}

/// Parses an expression of the requested kind against a chart.
pub fn parse(text: &str, ctx: &Context, kind: ValueKind) -> Result<Value> {
    match kind {
        ValueKind::Poly => Ok(Value::Poly(parse_poly(text, ctx)?)),
        ValueKind::MultiVector => Ok(Value::MultiVector(parse_multivector(text, ctx)?)),
        ValueKind::Form => Ok(Value::Form(parse_form(text, ctx)?)),
    }
}

pub fn parse_poly(text: &str, ctx: &Context) -> Result<Polynomial> {
    let mut p = Parser::new(text, ctx)?;
    let poly = p.signed_poly_sum()?;
    p.expect_end()?;
    Ok(poly)
}

pub fn parse_multivector(text: &str, ctx: &Context) -> Result<MultiVector> {
    let mut p = Parser::new(text, ctx)?;
    let v = p.graded_value::<crate::exterior::Contra>()?;
    p.expect_end()?;
    Ok(v)
}

pub fn parse_form(text: &str, ctx: &Context) -> Result<Form> {
    let mut p = Parser::new(text, ctx)?;
    let v = p.graded_value::<crate::exterior::Co>()?;
    p.expect_end()?;
    Ok(v)
}

/// Parses whatever the expression denotes, deciding the kind from the axis
/// tokens that occur: `D` makes a multivector, `dx` a form, neither a
/// polynomial. Mixing the two is an error.
pub fn parse_value(text: &str, ctx: &Context) -> Result<Value> {
    let tokens = lex(text).map_err(Error::Parse)?;
    let has_d = tokens.iter().any(|t| matches!(t.tok, Tok::AxisD(_)));
    let has_dx = tokens.iter().any(|t| matches!(t.tok, Tok::AxisDx(_)));
    if has_d && has_dx {
        let span = tokens
            .iter()
            .find(|t| matches!(t.tok, Tok::AxisDx(_)))
            .map(|t| t.span)
            .unwrap_or(SourceSpan::new(0, text.len()));
        return Err(Error::Parse(ParseError::new(
            span,
            ParseErrorKind::Syntax,
            "cannot mix D and dx axes in one expression",
        )));
    }
    let kind = if has_d {
        ValueKind::MultiVector
    } else if has_dx {
        ValueKind::Form
    } else {
        ValueKind::Poly
    };
    parse(text, ctx, kind)
}

struct Parser<'a> {
    ctx: &'a Context,
    tokens: Vec<Token>,
    pos: usize,
    end: usize,
    depth: usize,
}

enum AxisTok {
    Wanted(usize),
    Other,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, ctx: &'a Context) -> Result<Parser<'a>> {
        let tokens = lex(text).map_err(Error::Parse)?;
        Ok(Parser { ctx, tokens, pos: 0, end: text.len(), depth: 0 })
    }

    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|t| &t.tok)
    }

    fn span(&self) -> SourceSpan {
        self.tokens
            .get(self.pos)
            .map(|t| t.span)
            .unwrap_or(SourceSpan::new(self.end, self.end))
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err(&self, kind: ParseErrorKind, msg: impl Into<String>) -> Error {
        Error::Parse(ParseError::new(self.span(), kind, msg))
    }

    fn err_at(&self, span: SourceSpan, kind: ParseErrorKind, msg: impl Into<String>) -> Error {
        Error::Parse(ParseError::new(span, kind, msg))
    }

    fn expect_end(&self) -> Result<()> {
        if self.pos < self.tokens.len() {
            return Err(self.err(ParseErrorKind::Syntax, "unexpected trailing input"));
        }
        Ok(())
    }

    /// Leading sign of a term; separators between terms are handled by the
    /// sum loops.
    fn leading_sign(&mut self) -> i32 {
        if self.eat(&Tok::Minus) {
            -1
        } else {
            let _ = self.eat(&Tok::Plus);
            1
        }
    }

    /// Signed sum of scalar products (the `polyexpr` production).
    fn signed_poly_sum(&mut self) -> Result<Polynomial> {
        let mut acc = Polynomial::zero(self.ctx);
        let mut sign = self.leading_sign();
        loop {
            let term = self.scalar_product()?;
            acc = acc.add(&if sign < 0 { term.neg() } else { term })?;
            if self.eat(&Tok::Plus) {
                sign = self.leading_sign_after_separator(1);
            } else if self.eat(&Tok::Minus) {
                sign = self.leading_sign_after_separator(-1);
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn leading_sign_after_separator(&mut self, sep: i32) -> i32 {
        if self.eat(&Tok::Minus) {
            -sep
        } else {
            sep
        }
    }

    /// `scalar ('*' scalar)*` with exponent suffixes, stopping before a
    /// blade.
    fn scalar_product(&mut self) -> Result<Polynomial> {
        let mut acc = self.scalar_atom()?;
        while self.eat(&Tok::Star) {
            if matches!(self.peek(), Some(Tok::AxisD(_)) | Some(Tok::AxisDx(_))) {
                return Err(self.err(
                    ParseErrorKind::Syntax,
                    "axis tokens are not allowed inside a polynomial",
                ));
            }
            acc = acc.mul(&self.scalar_atom()?)?;
        }
        Ok(acc)
    }

    fn scalar_atom(&mut self) -> Result<Polynomial> {
        let span = self.span();
        let base = match self.bump().map(|t| t.tok) {
            Some(Tok::Int(digits)) => {
                let numer: BigInt = digits.parse().expect("digit run");
                if self.eat(&Tok::Slash) {
                    let dspan = self.span();
                    match self.bump().map(|t| t.tok) {
                        Some(Tok::Int(den)) => {
                            let denom: BigInt = den.parse().expect("digit run");
                            if denom.is_zero() {
                                return Err(self.err_at(
                                    dspan,
                                    ParseErrorKind::Syntax,
                                    "zero denominator",
                                ));
                            }
                            Polynomial::constant(self.ctx, Rational::new(numer, denom))
                        }
                        _ => {
                            return Err(self.err_at(
                                dspan,
                                ParseErrorKind::Syntax,
                                "expected a denominator after '/'",
                            ))
                        }
                    }
                } else {
                    Polynomial::constant(self.ctx, Rational::from_integer(numer))
                }
            }
            Some(Tok::Ident(name)) => self.resolve_var(&name, span)?,
            Some(Tok::LParen) => {
                if self.depth >= MAX_PAREN_DEPTH {
                    return Err(self.err_at(
                        span,
                        ParseErrorKind::Syntax,
                        "expression nests too deeply",
                    ));
                }
                self.depth += 1;
                let inner = self.signed_poly_sum()?;
                self.depth -= 1;
                if !self.eat(&Tok::RParen) {
                    return Err(self.err(ParseErrorKind::Syntax, "expected ')'"));
                }
                inner
            }
            Some(Tok::AxisD(_)) | Some(Tok::AxisDx(_)) => {
                return Err(self.err_at(
                    span,
                    ParseErrorKind::Syntax,
                    "axis tokens are not allowed inside a polynomial",
                ))
            }
            Some(_) => {
                return Err(self.err_at(span, ParseErrorKind::Syntax, "expected a scalar"))
            }
            None => {
                return Err(self.err_at(
                    span,
                    ParseErrorKind::Syntax,
                    "unexpected end of input",
                ))
            }
        };
        self.exponent_suffix(base)
    }

    fn exponent_suffix(&mut self, mut base: Polynomial) -> Result<Polynomial> {
        while self.eat(&Tok::Caret) {
            let span = self.span();
            match self.bump().map(|t| t.tok) {
                Some(Tok::Int(digits)) => {
                    let exp: u32 = digits.parse().map_err(|_| {
                        self.err_at(span, ParseErrorKind::Syntax, "exponent too large")
                    })?;
                    if exp == 0 {
                        return Err(self.err_at(
                            span,
                            ParseErrorKind::Syntax,
                            "exponents must be positive",
                        ));
                    }
                    if exp > MAX_EXPONENT {
                        return Err(self.err_at(
                            span,
                            ParseErrorKind::Syntax,
                            "exponent too large",
                        ));
                    }
                    base = base.pow(exp)?;
                }
                _ => {
                    return Err(self.err_at(
                        span,
                        ParseErrorKind::Syntax,
                        "expected a positive integer exponent",
                    ))
                }
            }
        }
        Ok(base)
    }

    fn resolve_var(&self, name: &str, span: SourceSpan) -> Result<Polynomial> {
        if let Some(i) = self.ctx.var_index(name) {
            return Ok(Polynomial::var(self.ctx, i).expect("index in range"));
        }
        // positional alias x<k>, useful under renamed charts
        if let Some(rest) = name.strip_prefix('x') {
            if !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit()) {
                return match rest.parse::<usize>() {
                    Ok(k) if k >= 1 && k <= self.ctx.dim() => {
                        Ok(Polynomial::var(self.ctx, k).expect("index in range"))
                    }
                    _ => Err(self.err_at(
                        span,
                        ParseErrorKind::IndexRange,
                        format!("variable {name:?} is out of range 1..={}", self.ctx.dim()),
                    )),
                };
            }
        }
        Err(self.err_at(
            span,
            ParseErrorKind::UnknownVariable,
            format!("unknown variable {name:?}"),
        ))
    }

    fn axis<V: Variance>(&mut self) -> Option<AxisTok> {
        match self.peek() {
            Some(&Tok::AxisD(k)) => Some(if V::AXIS_PREFIX == "D" {
                AxisTok::Wanted(k)
            } else {
                AxisTok::Other
            }),
            Some(&Tok::AxisDx(k)) => Some(if V::AXIS_PREFIX == "dx" {
                AxisTok::Wanted(k)
            } else {
                AxisTok::Other
            }),
            _ => None,
        }
    }

    fn axis_index<V: Variance>(&mut self) -> Result<usize> {
        let span = self.span();
        match self.axis::<V>() {
            Some(AxisTok::Wanted(k)) => {
                self.pos += 1;
                if k < 1 || k > self.ctx.dim() {
                    return Err(self.err_at(
                        span,
                        ParseErrorKind::IndexRange,
                        format!("axis index {k} is out of range 1..={}", self.ctx.dim()),
                    ));
                }
                Ok(k)
            }
            Some(AxisTok::Other) => Err(self.err_at(
                span,
                ParseErrorKind::Syntax,
                "cannot mix D and dx axes in one expression",
            )),
            None => Err(self.err_at(span, ParseErrorKind::Syntax, "expected an axis")),
        }
    }

    /// `AXIS ('/\' AXIS)*`
    fn blade_indices<V: Variance>(&mut self) -> Result<(Vec<usize>, SourceSpan)> {
        let begin = self.span().begin;
        let mut indices = vec![self.axis_index::<V>()?];
        let mut end = self.tokens[self.pos - 1].span.end;
        while self.eat(&Tok::Wedge) {
            indices.push(self.axis_index::<V>()?);
            end = self.tokens[self.pos - 1].span.end;
        }
        Ok((indices, SourceSpan::new(begin, end)))
    }

    /// One graded term: an optional scalar product followed by an optional
    /// blade.
    fn graded_term<V: Variance>(
        &mut self,
    ) -> Result<(Polynomial, Option<(Vec<usize>, SourceSpan)>)> {
        if self.axis::<V>().is_some() {
            let blade = self.blade_indices::<V>()?;
            return Ok((Polynomial::one(self.ctx), Some(blade)));
        }
        let mut acc = self.scalar_atom()?;
        while self.eat(&Tok::Star) {
            if self.axis::<V>().is_some() {
                let blade = self.blade_indices::<V>()?;
                return Ok((acc, Some(blade)));
            }
            acc = acc.mul(&self.scalar_atom()?)?;
        }
        Ok((acc, None))
    }

    fn graded_value<V: Variance>(&mut self) -> Result<Exterior<V>> {
        let mut sign = self.leading_sign();
        let mut degree: Option<(usize, SourceSpan)> = None;
        let mut terms: Vec<(i32, Polynomial, Option<Vec<usize>>)> = Vec::new();
        loop {
            let (coef, blade) = self.graded_term::<V>()?;
            let (this_deg, this_span) = match &blade {
                Some((ix, span)) => (ix.len(), *span),
                None => (0, self.span()),
            };
            match degree {
                None => degree = Some((this_deg, this_span)),
                Some((d, _)) if d != this_deg => {
                    return Err(self.err_at(
                        this_span,
                        ParseErrorKind::DegreeMismatch,
                        format!("term of degree {this_deg} in a sum of degree {d}"),
                    ));
                }
                _ => {}
            }
            terms.push((sign, coef, blade.map(|(ix, _)| ix)));
            if self.eat(&Tok::Plus) {
                sign = self.leading_sign_after_separator(1);
            } else if self.eat(&Tok::Minus) {
                sign = self.leading_sign_after_separator(-1);
            } else {
                break;
            }
        }
        let deg = degree.map(|(d, _)| d).unwrap_or(0);
        let mut out = Exterior::<V>::zero(self.ctx, deg);
        for (sign, coef, blade) in terms {
            let coef = if sign < 0 { coef.neg() } else { coef };
            match blade {
                None => out = out.add(&Exterior::<V>::from_poly(&coef))?,
                Some(indices) => {
                    // a repeated axis annihilates the blade
                    if let Some((bsign, b)) = Blade::normalize(&indices) {
                        let coef = if bsign < 0 { coef.neg() } else { coef };
                        out = out.add(&Exterior::<V>::term(self.ctx, b, coef))?;
                    }
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::textio::ParseErrorKind as K;

    fn ctx(n: usize) -> Context {
        Context::new(n).unwrap()
    }

    fn x(c: &Context, i: usize) -> Polynomial {
        Polynomial::var(c, i).unwrap()
    }

    fn kind_of(r: Result<impl std::fmt::Debug>) -> K {
        match r.unwrap_err() {
            Error::Parse(e) => e.kind,
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn poly_parsing() {
        let c = ctx(2);
        assert_eq!(parse_poly("x1^2 + 3/2 * x2 + 1", &c).unwrap(), {
            let three_halves = Rational::new(3.into(), 2.into());
            x(&c, 1)
                .pow(2)
                .unwrap()
                .add(&x(&c, 2).scale(&three_halves))
                .unwrap()
                .add(&Polynomial::one(&c))
                .unwrap()
        });
        assert_eq!(parse_poly("(x1 + 1) * (x1 - 1)", &c).unwrap(), {
            x(&c, 1).pow(2).unwrap().sub(&Polynomial::one(&c)).unwrap()
        });
        assert_eq!(parse_poly("-x1 + x1", &c).unwrap(), Polynomial::zero(&c));
        assert_eq!(parse_poly("0", &c).unwrap(), Polynomial::zero(&c));
        // signed rational after a separator
        assert_eq!(
            parse_poly("x1 + -1 * x2", &c).unwrap(),
            x(&c, 1).sub(&x(&c, 2)).unwrap()
        );
    }

    #[test]
    fn multivector_parsing() {
        let c = ctx(3);
        let v = parse_multivector("x1^2 * D1 /\\ D2 + 3 * D2 /\\ D3", &c).unwrap();
        let expected = MultiVector::term(&c, Blade::new(&c, &[1, 2]).unwrap(), x(&c, 1).pow(2).unwrap())
            .add(&MultiVector::term(
                &c,
                Blade::new(&c, &[2, 3]).unwrap(),
                Polynomial::int_constant(&c, 3),
            ))
            .unwrap();
        assert_eq!(v, expected);
        // antisymmetry normalization
        let c2 = ctx(2);
        let v = parse_multivector("D2 /\\ D1", &c2).unwrap();
        assert_eq!(v, MultiVector::basis(&c2, &[1, 2]).unwrap().neg());
        // repeated axis vanishes
        assert!(parse_multivector("D1 /\\ D1", &c2).unwrap().is_zero());
        // parenthesized coefficients
        let v = parse_multivector("(x1 + 1) * D1", &c2).unwrap();
        let expected = MultiVector::term(
            &c2,
            Blade::new(&c2, &[1]).unwrap(),
            x(&c2, 1).add(&Polynomial::one(&c2)).unwrap(),
        );
        assert_eq!(v, expected);
    }

    #[test]
    fn parse_errors() {
        let c = ctx(2);
        assert_eq!(kind_of(parse_multivector("D1 + D1 /\\ D2", &c)), K::DegreeMismatch);
        assert_eq!(kind_of(parse_multivector("D3", &c)), K::IndexRange);
        assert_eq!(kind_of(parse_multivector("dx1", &c)), K::Syntax);
        assert_eq!(kind_of(parse_poly("x9", &c)), K::IndexRange);
        assert_eq!(kind_of(parse_poly("foo", &c)), K::UnknownVariable);
        assert_eq!(kind_of(parse_poly("x1 ?", &c)), K::Lex);
        assert_eq!(kind_of(parse_poly("x1 +", &c)), K::Syntax);
        assert_eq!(kind_of(parse_poly("1/0", &c)), K::Syntax);
        assert_eq!(kind_of(parse_poly("x1^0", &c)), K::Syntax);
        assert_eq!(kind_of(parse_poly("", &c)), K::Syntax);
        assert_eq!(kind_of(parse_poly("(x1", &c)), K::Syntax);
        let deep = format!("{}1{}", "(".repeat(100), ")".repeat(100));
        assert_eq!(kind_of(parse_poly(&deep, &c)), K::Syntax);
    }

    #[test]
    fn value_sniffing() {
        let c = ctx(2);
        assert!(matches!(parse_value("x1 + 1", &c).unwrap(), Value::Poly(_)));
        assert!(matches!(parse_value("x1 * D1", &c).unwrap(), Value::MultiVector(_)));
        assert!(matches!(parse_value("dx1 /\\ dx2", &c).unwrap(), Value::Form(_)));
        assert_eq!(kind_of(parse_value("D1 /\\ dx2", &c)), K::Syntax);
    }

    #[test]
    fn named_context_resolution() {
        let c = Context::with_names(vec!["a".into(), "b".into()]).unwrap();
        // names resolve, and positional aliases still work
        assert_eq!(parse_poly("a + x2", &c).unwrap(), {
            x(&c, 1).add(&x(&c, 2)).unwrap()
        });
        assert_eq!(kind_of(parse_poly("q", &c)), K::UnknownVariable);
    }

    #[test]
    fn resource_limit_from_parser() {
        crate::limits::set_term_limit(10);
        let c = ctx(3);
        let res = parse_poly("(x1 + x2 + x3)^9", &c);
        crate::limits::set_term_limit(crate::limits::DEFAULT_TERM_LIMIT);
        assert!(matches!(res, Err(Error::ResourceLimit { .. })));
    }
}

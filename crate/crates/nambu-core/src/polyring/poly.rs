use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::context::Context;
use crate::error::{Error, Result};
use crate::limits::check_terms;
use crate::polyring::Rational;

/// Exponent vector of one monomial, ordered graded-reverse-lexicographically.
///
/// `a < b` when `deg a < deg b`, or the degrees agree and the last
/// non-matching exponent of `a` exceeds that of `b`. The maximum of a term
/// map is therefore the canonical leading monomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Box<[u32]>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Monomial {
        Monomial(exponents.into_boxed_slice())
    }

    pub fn constant(n: usize) -> Monomial {
        Monomial(vec![0; n].into_boxed_slice())
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| a.checked_add(*b))
            .collect::<Option<_>>()
            .map(Monomial)
    }

    /// Quotient exponents; caller guarantees divisibility.
    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a - b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let da = self.total_degree();
        let db = other.total_degree();
        if da != db {
            return da.cmp(&db);
        }
        for (a, b) in self.0.iter().zip(other.0.iter()).rev() {
            if a != b {
                // Smaller trailing exponent wins in grevlex.
                return b.cmp(a);
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms are kept in a normalized map: no zero coefficients, every exponent
/// vector of the context's length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    ctx: Context,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(ctx: &Context) -> Polynomial {
        Polynomial { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ctx: &Context) -> Polynomial {
        Polynomial::constant(ctx, Rational::one())
    }

    pub fn constant(ctx: &Context, value: Rational) -> Polynomial {
        let mut terms = BTreeMap::new();
        if !value.is_zero() {
            terms.insert(Monomial::constant(ctx.dim()), value);
        }
        Polynomial { ctx: ctx.clone(), terms }
    }

    pub fn int_constant(ctx: &Context, value: i64) -> Polynomial {
        Polynomial::constant(ctx, Rational::from_integer(BigInt::from(value)))
    }

    /// The coordinate function `x_i` (1-based).
    pub fn var(ctx: &Context, i: usize) -> Result<Polynomial> {
        ctx.check_index(i)?;
        let mut exps = vec![0u32; ctx.dim()];
        exps[i - 1] = 1;
        Ok(Polynomial::monomial(ctx, &exps, Rational::one()))
    }

    pub fn monomial(ctx: &Context, exponents: &[u32], coef: Rational) -> Polynomial {
        assert_eq!(exponents.len(), ctx.dim(), "exponent vector length mismatch");
        let mut terms = BTreeMap::new();
        if !coef.is_zero() {
            terms.insert(Monomial::new(exponents.to_vec()), coef);
        }
        Polynomial { ctx: ctx.clone(), terms }
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().map(|c| c.is_one()).unwrap_or(false)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().is_constant())
    }

    pub fn as_constant(&self) -> Option<&Rational> {
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            if m.is_constant() {
                return Some(c);
            }
        }
        None
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending grevlex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.total_degree()).max()
    }

    /// Leading (grevlex-greatest) term.
    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// 1-based indices of variables that actually occur.
    pub fn vars_present(&self) -> Vec<usize> {
        let n = self.ctx.dim();
        let mut present = vec![false; n];
        for m in self.terms.keys() {
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    present[i] = true;
                }
            }
        }
        (0..n).filter(|&i| present[i]).map(|i| i + 1).collect()
    }

    /// Degree in the single variable `i` (1-based).
    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.exponents()[i - 1]).max().unwrap_or(0)
    }

    fn insert_term(terms: &mut BTreeMap<Monomial, Rational>, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.ctx.check_same(&other.ctx)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            Self::insert_term(&mut terms, m.clone(), c.clone());
        }
        check_terms(terms.len())?;
        Ok(Polynomial { ctx: self.ctx.clone(), terms })
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect();
        Polynomial { ctx: self.ctx.clone(), terms }
    }

    pub fn scale(&self, factor: &Rational) -> Polynomial {
        if factor.is_zero() {
            return Polynomial::zero(&self.ctx);
        }
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), c * factor)).collect();
        Polynomial { ctx: self.ctx.clone(), terms }
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.ctx.check_same(&other.ctx)?;
        let mut terms = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb).ok_or(Error::ResourceLimit {
                    limit: crate::limits::term_limit(),
                })?;
                Self::insert_term(&mut terms, m, ca * cb);
            }
            check_terms(terms.len())?;
        }
        Ok(Polynomial { ctx: self.ctx.clone(), terms })
    }

    pub fn pow(&self, exp: u32) -> Result<Polynomial> {
        let mut result = Polynomial::one(&self.ctx);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Exact partial derivative with respect to variable `i` (1-based).
    pub fn partial(&self, i: usize) -> Result<Polynomial> {
        self.ctx.check_index(i)?;
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exponents()[i - 1];
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents().to_vec();
            exps[i - 1] -= 1;
            Self::insert_term(
                &mut terms,
                Monomial::new(exps),
                c * Rational::from_integer(BigInt::from(e)),
            );
        }
        Ok(Polynomial { ctx: self.ctx.clone(), terms })
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.ctx.dim() {
            return Err(Error::PointDimension { expected: self.ctx.dim(), got: point.len() });
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                for _ in 0..e {
                    term *= x;
                }
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Substitutes `args[i]` for variable `i+1`; all `args` share one target context.
    pub fn compose(&self, args: &[Polynomial]) -> Result<Polynomial> {
        if args.len() != self.ctx.dim() {
            return Err(Error::PointDimension { expected: self.ctx.dim(), got: args.len() });
        }
        let target = match args.first() {
            Some(p) => p.context().clone(),
            None => return Err(Error::PointDimension { expected: self.ctx.dim(), got: 0 }),
        };
        for arg in args {
            target.check_same(arg.context())?;
        }
        // Cache powers of each argument as exponents are consumed.
        let mut powers: Vec<Vec<Polynomial>> =
            args.iter().map(|_| vec![Polynomial::one(&target)]).collect();
        let mut acc = Polynomial::zero(&target);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(&target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul(&args[i])?;
                    powers[i].push(next);
                }
                term = term.mul(&powers[i][e as usize])?;
            }
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }

    /// Exact quotient `self / divisor`, or `None` when no polynomial quotient
    /// exists. Errors on a zero divisor.
    pub fn div_exact(&self, divisor: &Polynomial) -> Result<Option<Polynomial>> {
        self.ctx.check_same(&divisor.ctx)?;
        if divisor.is_zero() {
            return Err(Error::ZeroInput("division by the zero polynomial"));
        }
        let (dm, dc) = divisor.leading().unwrap();
        let mut rem = self.clone();
        let mut quot: BTreeMap<Monomial, Rational> = BTreeMap::new();
        while let Some((rm, rc)) = rem.leading() {
            if !dm.divides(rm) {
                return Ok(None);
            }
            let qm = rm.div(dm);
            let qc = rc / dc;
            let t = Polynomial::monomial(&self.ctx, qm.exponents(), qc.clone());
            rem = rem.sub(&t.mul(divisor)?)?;
            Self::insert_term(&mut quot, qm, qc);
            check_terms(quot.len())?;
        }
        Ok(Some(Polynomial { ctx: self.ctx.clone(), terms: quot }))
    }

    /// Leading-coefficient normalization: `(lc, self/lc)` with monic second part.
    pub fn monic(&self) -> (Rational, Polynomial) {
        match self.leading() {
            None => (Rational::one(), self.clone()),
            Some((_, lc)) => {
                let lc = lc.clone();
                (lc.clone(), self.scale(&lc.recip()))
            }
        }
    }

    /// Splits off the rational content, leaving integer coefficients with
    /// gcd 1 and a positive leading coefficient.
    pub fn integer_primitive(&self) -> (Rational, Polynomial) {
        if self.is_zero() {
            return (Rational::one(), self.clone());
        }
        let mut denom_lcm = BigInt::one();
        for c in self.terms.values() {
            denom_lcm = denom_lcm.lcm(c.denom());
        }
        let mut numer_gcd = BigInt::zero();
        for c in self.terms.values() {
            let scaled = c.numer() * (&denom_lcm / c.denom());
            numer_gcd = numer_gcd.gcd(&scaled);
        }
        let mut content = Rational::new(numer_gcd, denom_lcm);
        if self.leading().unwrap().1.is_negative() {
            content = -content;
        }
        let primitive = self.scale(&content.recip());
        (content, primitive)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(n: usize) -> Context {
        Context::new(n).unwrap()
    }

    fn x(ctx: &Context, i: usize) -> Polynomial {
        Polynomial::var(ctx, i).unwrap()
    }

    #[test]
    fn grevlex_ordering() {
        // deg first, then last-differing exponent smaller wins
        let x2y = Monomial::new(vec![2, 1, 0]);
        let xyz = Monomial::new(vec![1, 1, 1]);
        let x3 = Monomial::new(vec![3, 0, 0]);
        assert!(x3 > x2y);
        assert!(x2y > xyz);
        assert!(Monomial::new(vec![1, 0, 0]) > Monomial::new(vec![0, 1, 0]));
        assert!(Monomial::new(vec![0, 0, 2]) < Monomial::new(vec![0, 1, 1]));
    }

    #[test]
    fn add_cancels() {
        let c = ctx(2);
        // (x1+x2) + (x1-x2) = 2 x1
        let s = x(&c, 1).add(&x(&c, 2)).unwrap();
        let d = x(&c, 1).sub(&x(&c, 2)).unwrap();
        let sum = s.add(&d).unwrap();
        assert_eq!(sum, x(&c, 1).scale(&Rational::from_integer(2.into())));
    }

    #[test]
    fn mul_difference_of_squares() {
        let c = ctx(1);
        let one = Polynomial::one(&c);
        let lhs = x(&c, 1).add(&one).unwrap().mul(&x(&c, 1).sub(&one).unwrap()).unwrap();
        let rhs = x(&c, 1).pow(2).unwrap().sub(&one).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn neg_zero_is_zero() {
        let c = ctx(2);
        assert!(Polynomial::zero(&c).neg().is_zero());
    }

    #[test]
    fn partial_and_eval() {
        let c = ctx(2);
        // d/dx1 (x1^2 x2) = 2 x1 x2
        let p = x(&c, 1).pow(2).unwrap().mul(&x(&c, 2)).unwrap();
        let d1 = p.partial(1).unwrap();
        let expected = Polynomial::monomial(&c, &[1, 1], Rational::from_integer(2.into()));
        assert_eq!(d1, expected);
        assert!(x(&c, 1).pow(2).unwrap().partial(2).unwrap().is_zero());
        let v = p
            .eval(&[Rational::from_integer(2.into()), Rational::from_integer(3.into())])
            .unwrap();
        assert_eq!(v, Rational::from_integer(12.into()));
        assert!(p.partial(3).is_err());
        assert!(p.eval(&[Rational::zero()]).is_err());
    }

    #[test]
    fn exact_division() {
        let c = ctx(2);
        // x1 | x1^2 x2 with quotient x1 x2
        let p = x(&c, 1).pow(2).unwrap().mul(&x(&c, 2)).unwrap();
        let q = p.div_exact(&x(&c, 1)).unwrap().unwrap();
        assert_eq!(q, x(&c, 1).mul(&x(&c, 2)).unwrap());
        // x1 does not divide x1 x2 + 1
        let r = x(&c, 1).mul(&x(&c, 2)).unwrap().add(&Polynomial::one(&c)).unwrap();
        assert!(r.div_exact(&x(&c, 1)).unwrap().is_none());
        // (x1+1) | (x1+1)^2
        let xp1 = x(&c, 1).add(&Polynomial::one(&c)).unwrap();
        let sq = xp1.pow(2).unwrap();
        assert_eq!(sq.div_exact(&xp1).unwrap().unwrap(), xp1);
        assert!(sq.div_exact(&Polynomial::zero(&c)).is_err());
    }

    #[test]
    fn compose_substitutes() {
        let c = ctx(2);
        // p = x1^2 + x2, substitute x1 -> x2, x2 -> x1 + 1
        let p = x(&c, 1).pow(2).unwrap().add(&x(&c, 2)).unwrap();
        let subbed = p.compose(&[x(&c, 2), x(&c, 1).add(&Polynomial::one(&c)).unwrap()]).unwrap();
        let expected = x(&c, 2)
            .pow(2)
            .unwrap()
            .add(&x(&c, 1).add(&Polynomial::one(&c)).unwrap())
            .unwrap();
        assert_eq!(subbed, expected);
    }

    #[test]
    fn integer_primitive_normalizes() {
        let c = ctx(1);
        // -3/2 x + 3 -> content -3/2, primitive x - 2
        let p = x(&c, 1)
            .scale(&Rational::new((-3).into(), 2.into()))
            .add(&Polynomial::int_constant(&c, 3))
            .unwrap();
        let (content, prim) = p.integer_primitive();
        assert_eq!(content, Rational::new((-3).into(), 2.into()));
        assert_eq!(prim, x(&c, 1).sub(&Polynomial::int_constant(&c, 2)).unwrap());
        assert_eq!(prim.scale(&content), p);
    }

    #[test]
    fn context_mismatch_rejected() {
        let a = ctx(2);
        let b = Context::with_names(vec!["u".into(), "v".into()]).unwrap();
        assert!(x(&a, 1).add(&x(&b, 1)).is_err());
        assert!(x(&a, 1).mul(&x(&b, 1)).is_err());
    }

    #[test]
    fn term_limit_guards_mul() {
        // local to this test: the limit is global, restore afterwards
        crate::limits::set_term_limit(8);
        let c = ctx(3);
        let s = x(&c, 1).add(&x(&c, 2)).unwrap().add(&x(&c, 3)).unwrap();
        let res = s.pow(6);
        crate::limits::set_term_limit(crate::limits::DEFAULT_TERM_LIMIT);
        assert!(matches!(res, Err(Error::ResourceLimit { .. })));
    }
}

use std::collections::BTreeMap;
use std::marker::PhantomData;

use crate::context::Context;
use crate::error::{Error, Result};
use crate::exterior::blade::Blade;
use crate::polyring::{Polynomial, Rational};

/// Marker for contravariant values (multivector fields, axis token `D`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Contra;

/// Marker for covariant values (differential forms, axis token `dx`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Co;

pub trait Variance: private::Sealed + Clone + Copy + PartialEq + std::fmt::Debug + 'static {
    const AXIS_PREFIX: &'static str;
}

impl Variance for Contra {
    const AXIS_PREFIX: &'static str = "D";
}

impl Variance for Co {
    const AXIS_PREFIX: &'static str = "dx";
}

mod private {
    pub trait Sealed {}
    impl Sealed for super::Contra {}
    impl Sealed for super::Co {}
}

/// Homogeneous degree-`p` element of the exterior algebra over the
/// polynomial ring: a normalized map from blades to coefficients.
#[derive(Debug, Clone)]
pub struct Exterior<V: Variance> {
    ctx: Context,
    degree: usize,
    terms: BTreeMap<Blade, Polynomial>,
    _variance: PhantomData<V>,
}

/// A multivector field; houses structures, vector fields, and scalars.
pub type MultiVector = Exterior<Contra>;

/// A differential form.
pub type Form = Exterior<Co>;

impl<V: Variance> PartialEq for Exterior<V> {
    fn eq(&self, other: &Self) -> bool {
        if self.ctx != other.ctx {
            return false;
        }
        if self.is_zero() && other.is_zero() {
            return true;
        }
        self.degree == other.degree && self.terms == other.terms
    }
}

impl<V: Variance> Exterior<V> {
    pub fn zero(ctx: &Context, degree: usize) -> Self {
        Exterior {
            ctx: ctx.clone(),
            degree: degree.min(ctx.dim()),
            terms: BTreeMap::new(),
            _variance: PhantomData,
        }
    }

    /// Degree-0 value carrying a plain polynomial.
    pub fn from_poly(p: &Polynomial) -> Self {
        let mut terms = BTreeMap::new();
        if !p.is_zero() {
            terms.insert(Blade::scalar(), p.clone());
        }
        Exterior { ctx: p.context().clone(), degree: 0, terms, _variance: PhantomData }
    }

    /// The degree-0 polynomial content, when the value has one.
    pub fn to_poly(&self) -> Option<Polynomial> {
        if self.is_zero() {
            return Some(Polynomial::zero(&self.ctx));
        }
        if self.degree == 0 {
            return Some(self.terms.get(&Blade::scalar()).cloned().unwrap());
        }
        None
    }

    /// Single blade with coefficient 1 (e.g. `D1 /\ D2`).
    pub fn basis(ctx: &Context, indices: &[usize]) -> Result<Self> {
        let blade = Blade::new(ctx, indices)?;
        Ok(Self::term(ctx, blade, Polynomial::one(ctx)))
    }

    /// Single term: `coef * blade`. Coefficient context must match.
    pub fn term(ctx: &Context, blade: Blade, coef: Polynomial) -> Self {
        assert_eq!(ctx, coef.context(), "coefficient context mismatch");
        let degree = blade.degree();
        let mut terms = BTreeMap::new();
        if !coef.is_zero() {
            terms.insert(blade, coef);
        }
        Exterior { ctx: ctx.clone(), degree, terms, _variance: PhantomData }
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Blade terms in ascending lexicographic blade order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Blade, &Polynomial)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, blade: &Blade) -> Option<&Polynomial> {
        self.terms.get(blade)
    }

    pub(crate) fn insert(&mut self, blade: Blade, coef: Polynomial) -> Result<()> {
        debug_assert_eq!(blade.degree(), self.degree);
        if coef.is_zero() {
            return Ok(());
        }
        match self.terms.entry(blade) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coef);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&coef)?;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.ctx.check_same(&other.ctx)?;
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.degree != other.degree {
            return Err(Error::Degree(format!(
                "cannot add values of degree {} and {}",
                self.degree, other.degree
            )));
        }
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.insert(b.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(b, c)| (b.clone(), c.neg())).collect();
        Exterior { ctx: self.ctx.clone(), degree: self.degree, terms, _variance: PhantomData }
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        let mut out = Self::zero(&self.ctx, self.degree);
        for (b, c) in &self.terms {
            let scaled = c.scale(factor);
            if !scaled.is_zero() {
                out.terms.insert(b.clone(), scaled);
            }
        }
        out
    }

    pub fn scale_poly(&self, factor: &Polynomial) -> Result<Self> {
        self.ctx.check_same(factor.context())?;
        let mut out = Self::zero(&self.ctx, self.degree);
        for (b, c) in &self.terms {
            out.insert(b.clone(), c.mul(factor)?)?;
        }
        Ok(out)
    }

    /// Graded-commutative exterior product; degree overflow gives zero.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        self.ctx.check_same(&other.ctx)?;
        let deg = self.degree + other.degree;
        if deg > self.ctx.dim() {
            return Ok(Self::zero(&self.ctx, deg));
        }
        let mut out = Self::zero(&self.ctx, deg);
        for (ba, ca) in &self.terms {
            for (bb, cb) in &other.terms {
                if let Some((sign, blade)) = ba.wedge(bb) {
                    let mut coef = ca.mul(cb)?;
                    if sign < 0 {
                        coef = coef.neg();
                    }
                    out.insert(blade, coef)?;
                }
            }
        }
        Ok(out)
    }

    /// Exact evaluation of every coefficient at a rational point, as the
    /// blade -> value map (zero entries dropped).
    pub fn eval(&self, point: &[Rational]) -> Result<BTreeMap<Blade, Rational>> {
        let mut out = BTreeMap::new();
        for (b, c) in &self.terms {
            let v = c.eval(point)?;
            if !num_traits::Zero::is_zero(&v) {
                out.insert(b.clone(), v);
            }
        }
        Ok(out)
    }

    /// True when every coefficient vanishes at the point.
    pub fn vanishes_at(&self, point: &[Rational]) -> Result<bool> {
        Ok(self.eval(point)?.is_empty())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(n: usize) -> Context {
        Context::new(n).unwrap()
    }

    #[test]
    fn wedge_basics() {
        let c = ctx(3);
        let d1 = MultiVector::basis(&c, &[1]).unwrap();
        let d2 = MultiVector::basis(&c, &[2]).unwrap();
        let d12 = MultiVector::basis(&c, &[1, 2]).unwrap();
        assert_eq!(d1.wedge(&d2).unwrap(), d12);
        assert_eq!(d2.wedge(&d1).unwrap(), d12.neg());
        // repeated index vanishes
        let x1d1 = MultiVector::term(
            &c,
            Blade::new(&c, &[1]).unwrap(),
            Polynomial::var(&c, 1).unwrap(),
        );
        assert!(x1d1.wedge(&d12).unwrap().is_zero());
        // degree overflow is zero, not an error
        let d123 = MultiVector::basis(&c, &[1, 2, 3]).unwrap();
        assert!(d123.wedge(&d1).unwrap().is_zero());
    }

    #[test]
    fn zero_values_compare_equal_across_degrees() {
        let c = ctx(3);
        assert_eq!(MultiVector::zero(&c, 1), MultiVector::zero(&c, 2));
        assert_ne!(MultiVector::zero(&c, 1), MultiVector::basis(&c, &[1]).unwrap());
    }

    #[test]
    fn add_requires_matching_degree() {
        let c = ctx(2);
        let d1 = MultiVector::basis(&c, &[1]).unwrap();
        let d12 = MultiVector::basis(&c, &[1, 2]).unwrap();
        assert!(d1.add(&d12).is_err());
        assert_eq!(d1.add(&MultiVector::zero(&c, 2)).unwrap(), d1);
        assert!(d1.sub(&d1).unwrap().is_zero());
    }

    #[test]
    fn degree_zero_roundtrip() {
        let c = ctx(2);
        let p = Polynomial::var(&c, 1).unwrap();
        let mv = MultiVector::from_poly(&p);
        assert_eq!(mv.degree(), 0);
        assert_eq!(mv.to_poly().unwrap(), p);
        assert!(MultiVector::basis(&c, &[1]).unwrap().to_poly().is_none());
        assert!(MultiVector::zero(&c, 2).to_poly().unwrap().is_zero());
    }

    #[test]
    fn forms_and_multivectors_are_distinct_types() {
        let c = ctx(2);
        let alpha = Form::basis(&c, &[1]).unwrap();
        let beta = Form::basis(&c, &[2]).unwrap();
        assert_eq!(alpha.wedge(&beta).unwrap(), Form::basis(&c, &[1, 2]).unwrap());
    }
}

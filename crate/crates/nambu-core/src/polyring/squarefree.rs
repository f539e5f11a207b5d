//! Square-free decomposition by iterated gcd with the partial derivatives,
//! taken jointly over all variables.

use num_traits::One;

use crate::context::Context;
use crate::error::{Error, Result};
use crate::polyring::gcd::{gcd, gcd_list};
use crate::polyring::poly::Polynomial;
use crate::polyring::Rational;

/// `unit * prod factor_i ^ multiplicity_i` with square-free, integer-primitive,
/// pairwise coprime, non-constant factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Rational,
    pub factors: Vec<(Polynomial, u32)>,
}

impl Factorization {
    pub fn new(unit: Rational, factors: Vec<(Polynomial, u32)>) -> Factorization {
        Factorization { unit, factors }
    }

    pub fn expand(&self, ctx: &Context) -> Result<Polynomial> {
        let mut acc = Polynomial::constant(ctx, self.unit.clone());
        for (f, m) in &self.factors {
            acc = acc.mul(&f.pow(*m)?)?;
        }
        Ok(acc)
    }

    /// Structural validation: factors non-constant, square-free,
    /// integer-primitive, pairwise coprime, multiplicities positive.
    pub fn validate(&self) -> Result<()> {
        for (f, m) in &self.factors {
            if *m == 0 {
                return Err(Error::InvalidFactorization("zero multiplicity".into()));
            }
            if f.is_constant() {
                return Err(Error::InvalidFactorization("constant factor".into()));
            }
            if !is_squarefree(f)? {
                return Err(Error::InvalidFactorization(format!(
                    "factor with {} terms is not square-free",
                    f.num_terms()
                )));
            }
            let (content, _) = f.integer_primitive();
            if !content.is_one() {
                return Err(Error::InvalidFactorization("factor is not integer-primitive".into()));
            }
        }
        for i in 0..self.factors.len() {
            for j in i + 1..self.factors.len() {
                if !gcd(&self.factors[i].0, &self.factors[j].0)?.is_one() {
                    return Err(Error::InvalidFactorization("factors are not coprime".into()));
                }
            }
        }
        Ok(())
    }

    /// Validation against a concrete product.
    pub fn validate_for(&self, product: &Polynomial) -> Result<()> {
        self.validate()?;
        if &self.expand(product.context())? != product {
            return Err(Error::InvalidFactorization("product does not match".into()));
        }
        Ok(())
    }
}

/// Gcd of `p` with all of its partial derivatives.
fn gcd_with_partials(p: &Polynomial) -> Result<Polynomial> {
    let n = p.context().dim();
    let mut list = Vec::with_capacity(n + 1);
    list.push(p.clone());
    for i in 1..=n {
        list.push(p.partial(i)?);
    }
    gcd_list(&list)
}

/// True when `p` has no repeated non-constant factor.
pub fn is_squarefree(p: &Polynomial) -> Result<bool> {
    if p.is_zero() {
        return Err(Error::ZeroInput("square-free test of the zero polynomial"));
    }
    if p.is_constant() {
        return Ok(true);
    }
    Ok(gcd_with_partials(p)?.is_constant())
}

/// Decomposes `p` into square-free factors with multiplicities.
pub fn squarefree_decomposition(p: &Polynomial) -> Result<Factorization> {
    if p.is_zero() {
        return Err(Error::ZeroInput("square-free decomposition of zero"));
    }
    let ctx = p.context().clone();
    if p.is_constant() {
        return Ok(Factorization::new(p.as_constant().unwrap().clone(), vec![]));
    }

    // w_i = product of the distinct factors of multiplicity >= i;
    // the multiplicity-i part is w_i / w_{i+1}.
    let mut parts: Vec<Polynomial> = Vec::new();
    let mut current = p.integer_primitive().1;
    while !current.is_constant() {
        let g = gcd_with_partials(&current)?;
        let w = current.div_exact(&g)?.expect("gcd divides");
        parts.push(w);
        current = g;
    }

    let mut factors = Vec::new();
    for (i, w) in parts.iter().enumerate() {
        let next = parts.get(i + 1);
        let f = match next {
            Some(nw) => w.div_exact(nw)?.expect("nested square-free parts divide"),
            None => w.clone(),
        };
        if !f.is_constant() {
            factors.push((f.integer_primitive().1, (i + 1) as u32));
        }
    }

    // Pin the unit by exact division so the product reproduces p bit-exactly.
    let product = Factorization::new(Rational::one(), factors.clone()).expand(&ctx)?;
    let unit = p
        .div_exact(&product)?
        .expect("factor product divides")
        .as_constant()
        .expect("quotient of matching factorizations is constant")
        .clone();
    Ok(Factorization::new(unit, factors))
}

//! Polynomial coordinate changes with exact polynomial inverses, and the
//! pushforward of multivector fields along them.

use crate::context::{Context, Point};
use crate::error::{Error, Result};
use crate::exterior::graded::MultiVector;
use crate::polyring::Polynomial;

/// A polynomial map with an explicit two-sided polynomial inverse, checked
/// exactly at construction. Shear-type (triangular) maps are the typical
/// instance; general flow-box changes have no polynomial inverse and are
/// out of scope.
#[derive(Debug, Clone, PartialEq)]
pub struct CoordinateMap {
    source: Context,
    target: Context,
    forward: Vec<Polynomial>,
    inverse: Vec<Polynomial>,
}

impl CoordinateMap {
    /// `forward[j]` expresses target coordinate `y_{j+1}` in source
    /// variables; `inverse[i]` expresses source coordinate `x_{i+1}` in
    /// target variables.
    pub fn new(forward: Vec<Polynomial>, inverse: Vec<Polynomial>) -> Result<CoordinateMap> {
        let source = forward
            .first()
            .ok_or_else(|| Error::InvalidMap("empty forward component list".into()))?
            .context()
            .clone();
        let target = inverse
            .first()
            .ok_or_else(|| Error::InvalidMap("empty inverse component list".into()))?
            .context()
            .clone();
        let n = source.dim();
        if target.dim() != n || forward.len() != n || inverse.len() != n {
            return Err(Error::InvalidMap(format!(
                "expected {n} components on both sides, got {} forward and {} inverse",
                forward.len(),
                inverse.len()
            )));
        }
        for f in &forward {
            source.check_same(f.context())?;
        }
        for g in &inverse {
            target.check_same(g.context())?;
        }
        for (j, f) in forward.iter().enumerate() {
            if f.compose(&inverse)? != Polynomial::var(&target, j + 1)? {
                return Err(Error::InvalidMap(format!(
                    "forward∘inverse is not the identity in component {}",
                    j + 1
                )));
            }
        }
        for (i, g) in inverse.iter().enumerate() {
            if g.compose(&forward)? != Polynomial::var(&source, i + 1)? {
                return Err(Error::InvalidMap(format!(
                    "inverse∘forward is not the identity in component {}",
                    i + 1
                )));
            }
        }
        Ok(CoordinateMap { source, target, forward, inverse })
    }

    pub fn identity(ctx: &Context) -> CoordinateMap {
        let vars: Vec<Polynomial> =
            (1..=ctx.dim()).map(|i| Polynomial::var(ctx, i).expect("index in range")).collect();
        CoordinateMap {
            source: ctx.clone(),
            target: ctx.clone(),
            forward: vars.clone(),
            inverse: vars,
        }
    }

    pub fn source(&self) -> &Context {
        &self.source
    }

    pub fn target(&self) -> &Context {
        &self.target
    }

    pub fn forward(&self) -> &[Polynomial] {
        &self.forward
    }

    pub fn inverse(&self) -> &[Polynomial] {
        &self.inverse
    }

    /// The inverse map as a CoordinateMap (components are swapped, already
    /// validated).
    pub fn inverted(&self) -> CoordinateMap {
        CoordinateMap {
            source: self.target.clone(),
            target: self.source.clone(),
            forward: self.inverse.clone(),
            inverse: self.forward.clone(),
        }
    }

    /// Image of a rational point.
    pub fn push_point(&self, p: &Point) -> Result<Point> {
        self.source.check_same(p.context())?;
        let coords = self
            .forward
            .iter()
            .map(|f| f.eval(p.coords()))
            .collect::<Result<Vec<_>>>()?;
        Point::new(self.target.clone(), coords)
    }
}

/// Pushforward of a multivector field: coefficients are pulled through the
/// inverse and basis vectors through the Jacobian, so that
/// `(phi_* P)(phi(x)) = dphi_x(P(x))` exactly.
pub fn pushforward(phi: &CoordinateMap, p: &MultiVector) -> Result<MultiVector> {
    phi.source().check_same(p.context())?;
    let target = phi.target().clone();
    let n = target.dim();
    if p.degree() == 0 {
        let f = p.to_poly().expect("degree 0");
        return Ok(MultiVector::from_poly(&f.compose(phi.inverse())?));
    }
    // phi_* D_i = sum_j (dF_j/dx_i ∘ G) D_j
    let mut pushed_axes = Vec::with_capacity(n);
    for i in 1..=n {
        let mut v = MultiVector::zero(&target, 1);
        for j in 1..=n {
            let entry = phi.forward()[j - 1].partial(i)?.compose(phi.inverse())?;
            if !entry.is_zero() {
                v = v.add(&MultiVector::term(
                    &target,
                    crate::exterior::blade::Blade::from_sorted(vec![j]),
                    entry,
                ))?;
            }
        }
        pushed_axes.push(v);
    }
    let mut acc = MultiVector::zero(&target, p.degree());
    for (blade, c) in p.terms() {
        let mut wedge = MultiVector::from_poly(&c.compose(phi.inverse())?);
        for &i in blade.indices() {
            wedge = wedge.wedge(&pushed_axes[i - 1])?;
        }
        acc = acc.add(&wedge)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::blade::Blade;

    fn ctx(n: usize) -> Context {
        Context::new(n).unwrap()
    }

    fn x(c: &Context, i: usize) -> Polynomial {
        Polynomial::var(c, i).unwrap()
    }

    /// phi: (x1, x2) -> (x1, x2 + x1^2), a polynomial shear.
    fn shear(c: &Context) -> CoordinateMap {
        let fwd = vec![x(c, 1), x(c, 2).add(&x(c, 1).pow(2).unwrap()).unwrap()];
        let inv = vec![x(c, 1), x(c, 2).sub(&x(c, 1).pow(2).unwrap()).unwrap()];
        CoordinateMap::new(fwd, inv).unwrap()
    }

    #[test]
    fn identity_pushforward() {
        let c = ctx(2);
        let id = CoordinateMap::identity(&c);
        let p = MultiVector::term(&c, Blade::new(&c, &[1, 2]).unwrap(), x(&c, 1));
        assert_eq!(pushforward(&id, &p).unwrap(), p);
    }

    #[test]
    fn shear_jacobian_columns() {
        let c = ctx(2);
        let phi = shear(&c);
        let d1 = MultiVector::basis(&c, &[1]).unwrap();
        let d2 = MultiVector::basis(&c, &[2]).unwrap();
        // phi_* D1 = D1 + 2 x1 D2
        let expected = d1
            .add(&MultiVector::term(
                &c,
                Blade::new(&c, &[2]).unwrap(),
                x(&c, 1).scale(&crate::polyring::Rational::from_integer(2.into())),
            ))
            .unwrap();
        assert_eq!(pushforward(&phi, &d1).unwrap(), expected);
        // phi_* D2 = D2
        assert_eq!(pushforward(&phi, &d2).unwrap(), d2);
    }

    #[test]
    fn invalid_maps_rejected() {
        let c = ctx(2);
        // wrong inverse
        let fwd = vec![x(&c, 1), x(&c, 2).add(&x(&c, 1).pow(2).unwrap()).unwrap()];
        let bad_inv = vec![x(&c, 1), x(&c, 2)];
        assert!(CoordinateMap::new(fwd, bad_inv).is_err());
        // non-invertible polynomial map
        let sq = vec![x(&c, 1).pow(2).unwrap(), x(&c, 2)];
        assert!(CoordinateMap::new(sq.clone(), sq).is_err());
    }

    #[test]
    fn push_point_applies_forward() {
        let c = ctx(2);
        let phi = shear(&c);
        let one = crate::polyring::Rational::from_integer(1.into());
        let two = crate::polyring::Rational::from_integer(2.into());
        let p = Point::new(c.clone(), vec![two.clone(), one.clone()]).unwrap();
        let img = phi.push_point(&p).unwrap();
        // (2, 1) -> (2, 1 + 4) = (2, 5)
        assert_eq!(img.coords()[1], crate::polyring::Rational::from_integer(5.into()));
    }
}

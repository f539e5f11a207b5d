//! Pairing operations between forms and multivectors: contraction,
//! interior product, volume duality, exterior derivative.

use crate::error::{Error, Result};
use crate::exterior::blade::Blade;
use crate::exterior::graded::{Form, MultiVector};
use crate::polyring::Polynomial;

/// Contraction `alpha ⌟ P` of a `k`-form into a `p`-multivector, fixed by
/// the adjoint pairing `<alpha ⌟ P, beta> = <P, alpha ∧ beta>` with
/// `<dx_I, D_J> = delta_IJ` on sorted blades.
pub fn contract(alpha: &Form, p: &MultiVector) -> Result<MultiVector> {
    alpha.context().check_same(p.context())?;
    if alpha.degree() > p.degree() && !alpha.is_zero() && !p.is_zero() {
        return Err(Error::Degree(format!(
            "cannot contract a degree-{} form into a degree-{} multivector",
            alpha.degree(),
            p.degree()
        )));
    }
    let mut out = MultiVector::zero(p.context(), p.degree() - alpha.degree().min(p.degree()));
    for (bi, a) in alpha.terms() {
        for (bj, c) in p.terms() {
            if let Some((sign, rest)) = bj.remove(bi) {
                let mut coef = a.mul(c)?;
                if sign < 0 {
                    coef = coef.neg();
                }
                out.insert(rest, coef)?;
            }
        }
    }
    Ok(out)
}

/// Interior product `i_P omega` of a `p`-multivector into a `k`-form,
/// the adjoint of wedging on the multivector side.
pub fn interior(p: &MultiVector, omega: &Form) -> Result<Form> {
    p.context().check_same(omega.context())?;
    if p.degree() > omega.degree() && !p.is_zero() && !omega.is_zero() {
        return Err(Error::Degree(format!(
            "cannot insert a degree-{} multivector into a degree-{} form",
            p.degree(),
            omega.degree()
        )));
    }
    let mut out = Form::zero(omega.context(), omega.degree() - p.degree().min(omega.degree()));
    for (bi, c) in p.terms() {
        for (bj, a) in omega.terms() {
            if let Some((sign, rest)) = bj.remove(bi) {
                let mut coef = c.mul(a)?;
                if sign < 0 {
                    coef = coef.neg();
                }
                out.insert(rest, coef)?;
            }
        }
    }
    Ok(out)
}

/// `i_P Omega` against the canonical volume form `Omega = dx_1 ∧ … ∧ dx_n`.
pub fn volume_dual(p: &MultiVector) -> Form {
    let n = p.context().dim();
    let mut out = Form::zero(p.context(), n - p.degree().min(n));
    for (b, c) in p.terms() {
        let (sign, comp) = b.complement(n);
        let coef = if sign < 0 { c.neg() } else { c.clone() };
        out.insert(comp, coef).expect("same context");
    }
    out
}

/// Exact inverse of [`volume_dual`].
pub fn inverse_dual(omega: &Form) -> MultiVector {
    let n = omega.context().dim();
    let mut out = MultiVector::zero(omega.context(), n - omega.degree().min(n));
    for (b, c) in omega.terms() {
        let (_, comp) = b.complement(n);
        // volume_dual sends D_comp to eps(comp) * dx_b with eps = ±1,
        // so the inverse reuses the same sign
        let (eps, _) = comp.complement(n);
        let coef = if eps < 0 { c.neg() } else { c.clone() };
        out.insert(comp, coef).expect("same context");
    }
    out
}

/// Standard exterior derivative; `d ∘ d = 0`.
pub fn exterior_derivative(omega: &Form) -> Result<Form> {
    let ctx = omega.context();
    let n = ctx.dim();
    let mut out = Form::zero(ctx, omega.degree() + 1);
    if omega.degree() >= n {
        return Ok(out);
    }
    for (b, c) in omega.terms() {
        for i in 1..=n {
            let dc = c.partial(i)?;
            if dc.is_zero() {
                continue;
            }
            if let Some((sign, blade)) = Blade::from_sorted(vec![i]).wedge(b) {
                out.insert(blade, if sign < 0 { dc.neg() } else { dc })?;
            }
        }
    }
    Ok(out)
}

/// Differential of a function: `df = Σ (∂f/∂x_i) dx_i`.
pub fn differential(f: &Polynomial) -> Result<Form> {
    exterior_derivative(&Form::from_poly(f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::Context;
    use crate::polyring::Polynomial;

    fn ctx(n: usize) -> Context {
        Context::new(n).unwrap()
    }

    fn mv(c: &Context, ix: &[usize]) -> MultiVector {
        MultiVector::basis(c, ix).unwrap()
    }

    fn form(c: &Context, ix: &[usize]) -> Form {
        Form::basis(c, ix).unwrap()
    }

    #[test]
    fn contraction_pairing_convention() {
        let c = ctx(3);
        // dx1 ⌟ (D1 ∧ D2) = D2
        assert_eq!(contract(&form(&c, &[1]), &mv(&c, &[1, 2])).unwrap(), mv(&c, &[2]));
        // dx2 ⌟ (D1 ∧ D2) = -D1
        assert_eq!(contract(&form(&c, &[2]), &mv(&c, &[1, 2])).unwrap(), mv(&c, &[1]).neg());
        // (dx1 ∧ dx2) ⌟ (D1 ∧ D2 ∧ D3) = D3
        assert_eq!(
            contract(&form(&c, &[1, 2]), &mv(&c, &[1, 2, 3])).unwrap(),
            mv(&c, &[3])
        );
        // degree error
        assert!(contract(&form(&c, &[1, 2]), &mv(&c, &[3])).is_err());
    }

    #[test]
    fn duality_examples() {
        let c = ctx(3);
        assert_eq!(volume_dual(&mv(&c, &[1, 2])), form(&c, &[3]));
        assert_eq!(volume_dual(&mv(&c, &[2, 3])), form(&c, &[1]));
        // the n=2 case exercises the inverse sign
        let c2 = ctx(2);
        let d1 = mv(&c2, &[1]);
        assert_eq!(volume_dual(&d1), form(&c2, &[2]));
        assert_eq!(inverse_dual(&form(&c2, &[2])), d1);
        assert_eq!(inverse_dual(&volume_dual(&mv(&c2, &[2]))), mv(&c2, &[2]));
    }

    #[test]
    fn volume_dual_matches_interior_with_volume_form() {
        for n in 1..=4 {
            let c = ctx(n);
            let omega = Form::basis(&c, &(1..=n).collect::<Vec<_>>()).unwrap();
            for q in 0..=n {
                for blade in Blade::enumerate(n, q) {
                    let p = MultiVector::term(&c, blade, crate::polyring::Polynomial::one(&c));
                    assert_eq!(volume_dual(&p), interior(&p, &omega).unwrap());
                }
            }
        }
    }

    #[test]
    fn exterior_derivative_examples() {
        let c = ctx(3);
        let x1 = Polynomial::var(&c, 1).unwrap();
        let x2 = Polynomial::var(&c, 2).unwrap();
        // d(x1 dx2) = dx1 ∧ dx2
        let w = Form::term(&c, Blade::new(&c, &[2]).unwrap(), x1.clone());
        assert_eq!(exterior_derivative(&w).unwrap(), form(&c, &[1, 2]));
        // d(dx1) = 0
        assert!(exterior_derivative(&form(&c, &[1])).unwrap().is_zero());
        // d(x1 x2 dx3) = x2 dx1∧dx3 + x1 dx2∧dx3
        let w = Form::term(&c, Blade::new(&c, &[3]).unwrap(), x1.mul(&x2).unwrap());
        let expected = Form::term(&c, Blade::new(&c, &[1, 3]).unwrap(), x2)
            .add(&Form::term(&c, Blade::new(&c, &[2, 3]).unwrap(), x1))
            .unwrap();
        assert_eq!(exterior_derivative(&w).unwrap(), expected);
    }
}

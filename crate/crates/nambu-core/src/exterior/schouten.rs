//! Schouten bracket of multivector fields and Lie derivatives.
//!
//! The bracket is fixed by four axioms: `[f, g] = 0` on functions,
//! `[X, T] = L_X T` for vector fields, the graded Leibniz rule
//! `[P, Q ∧ R] = [P, Q] ∧ R + (-1)^{(p-1) q} Q ∧ [P, R]`, and graded
//! antisymmetry `[P, Q] = -(-1)^{(p-1)(q-1)} [Q, P]`. Everything here is a
//! recursive Leibniz expansion grounded in the vector-field Lie derivative.

use crate::error::{Error, Result};
use crate::exterior::blade::Blade;
use crate::exterior::graded::{Form, MultiVector};
use crate::exterior::ops::{exterior_derivative, interior};
use crate::polyring::Polynomial;

/// Coefficient functions of a vector field, indexed 1..=n.
pub(crate) fn vector_components(x: &MultiVector) -> Result<Vec<Polynomial>> {
    if x.degree() != 1 && !x.is_zero() {
        return Err(Error::Degree(format!(
            "expected a vector field, got degree {}",
            x.degree()
        )));
    }
    let ctx = x.context();
    let mut comps = vec![Polynomial::zero(ctx); ctx.dim()];
    for (b, c) in x.terms() {
        comps[b.indices()[0] - 1] = c.clone();
    }
    Ok(comps)
}

/// `X(f)` for a vector field.
fn apply_components(components: &[Polynomial], f: &Polynomial) -> Result<Polynomial> {
    let mut acc = Polynomial::zero(f.context());
    for (i, a) in components.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        acc = acc.add(&a.mul(&f.partial(i + 1)?)?)?;
    }
    Ok(acc)
}

/// Directional derivative `X(f)` of a function along a vector field.
pub fn apply_vector(x: &MultiVector, f: &Polynomial) -> Result<Polynomial> {
    x.context().check_same(f.context())?;
    apply_components(&vector_components(x)?, f)
}

/// Lie derivative of a multivector along a vector field.
pub fn lie_derivative(x: &MultiVector, t: &MultiVector) -> Result<MultiVector> {
    x.context().check_same(t.context())?;
    let ctx = x.context().clone();
    let comps = vector_components(x)?;
    if t.degree() == 0 {
        let f = t.to_poly().expect("degree 0");
        return Ok(MultiVector::from_poly(&apply_components(&comps, &f)?));
    }
    // [X, D_j] = -sum_i (da_i/dx_j) D_i, computed once per axis
    let mut axis_brackets: Vec<MultiVector> = Vec::with_capacity(ctx.dim());
    for j in 1..=ctx.dim() {
        let mut bj = MultiVector::zero(&ctx, 1);
        for (i, a) in comps.iter().enumerate() {
            let d = a.partial(j)?;
            if !d.is_zero() {
                bj.insert(Blade::from_sorted(vec![i + 1]), d.neg())?;
            }
        }
        axis_brackets.push(bj);
    }
    let mut acc = MultiVector::zero(&ctx, t.degree());
    for (blade, c) in t.terms() {
        // X(c) * blade
        acc = acc.add(&MultiVector::term(&ctx, blade.clone(), apply_components(&comps, c)?))?;
        // c * sum_k D_{j_1} ∧ … ∧ [X, D_{j_k}] ∧ … ∧ D_{j_q}
        let ix = blade.indices();
        for k in 0..ix.len() {
            let bracket = &axis_brackets[ix[k] - 1];
            if bracket.is_zero() {
                continue;
            }
            let prefix = MultiVector::term(
                &ctx,
                Blade::from_sorted(ix[..k].to_vec()),
                Polynomial::one(&ctx),
            );
            let suffix = MultiVector::term(
                &ctx,
                Blade::from_sorted(ix[k + 1..].to_vec()),
                Polynomial::one(&ctx),
            );
            let piece = prefix.wedge(&bracket.wedge(&suffix)?)?.scale_poly(c)?;
            acc = acc.add(&piece)?;
        }
    }
    Ok(acc)
}

/// Lie derivative of a form: Cartan's formula `i_X dω + d i_X ω`.
pub fn lie_derivative_form(x: &MultiVector, omega: &Form) -> Result<Form> {
    x.context().check_same(omega.context())?;
    vector_components(x)?;
    let a = interior(x, &exterior_derivative(omega)?)?;
    let b = if omega.degree() == 0 {
        Form::zero(omega.context(), 1)
    } else {
        exterior_derivative(&interior(x, omega)?)?
    };
    if omega.degree() == 0 {
        // i_X ω is not defined for 1-into-0; Cartan reduces to i_X dω = X(ω)
        return Ok(a);
    }
    a.add(&b)
}

/// `[f, Q]` for a function, by Leibniz recursion with base `[f, Y] = -Y(f)`.
fn function_bracket(f: &Polynomial, q: &MultiVector) -> Result<MultiVector> {
    let ctx = q.context().clone();
    if q.degree() == 0 || q.is_zero() {
        return Ok(MultiVector::zero(&ctx, 0));
    }
    let mut acc = MultiVector::zero(&ctx, q.degree() - 1);
    for (blade, c) in q.terms() {
        acc = acc.add(&function_bracket_blade(f, blade, c)?)?;
    }
    Ok(acc)
}

fn function_bracket_blade(
    f: &Polynomial,
    blade: &Blade,
    coef: &Polynomial,
) -> Result<MultiVector> {
    let ctx = f.context().clone();
    let ix = blade.indices();
    if ix.len() == 1 {
        // [f, c D_j] = -c df/dx_j
        return Ok(MultiVector::from_poly(&coef.mul(&f.partial(ix[0])?)?.neg()));
    }
    // [f, c·head ∧ rest] = [f, c·head] ∧ rest - (c·head) ∧ [f, rest]
    let head_blade = Blade::from_sorted(vec![ix[0]]);
    let rest_blade = Blade::from_sorted(ix[1..].to_vec());
    let rest = MultiVector::term(&ctx, rest_blade.clone(), Polynomial::one(&ctx));
    let head = MultiVector::term(&ctx, head_blade.clone(), coef.clone());

    let t1 = function_bracket_blade(f, &head_blade, coef)?.wedge(&rest)?;
    let t2 = head.wedge(&function_bracket_blade(f, &rest_blade, &Polynomial::one(&ctx))?)?;
    t1.sub(&t2)
}

/// Schouten bracket `[P, Q]` of multivector fields, degree `p + q - 1`.
pub fn schouten(p: &MultiVector, q: &MultiVector) -> Result<MultiVector> {
    p.context().check_same(q.context())?;
    let ctx = p.context().clone();
    if p.is_zero() || q.is_zero() {
        let deg = (p.degree() + q.degree()).saturating_sub(1);
        return Ok(MultiVector::zero(&ctx, deg));
    }
    let (dp, dq) = (p.degree(), q.degree());
    if dp == 1 {
        return lie_derivative(p, q);
    }
    if dp == 0 {
        return function_bracket(&p.to_poly().expect("degree 0"), q);
    }
    if dq == 0 {
        // [P, f] = (-1)^p [f, P]
        let r = function_bracket(&q.to_poly().expect("degree 0"), p)?;
        return Ok(if dp % 2 == 0 { r } else { r.neg() });
    }
    if dq == 1 {
        // [P, Y] = -(-1)^{(p-1)·0} [Y, P]
        return Ok(lie_derivative(q, p)?.neg());
    }
    if dp + dq - 1 > ctx.dim() {
        return Ok(MultiVector::zero(&ctx, ctx.dim()));
    }
    // dp >= 2, dq >= 2: peel the second argument one vector at a time
    let mut acc = MultiVector::zero(&ctx, dp + dq - 1);
    let leibniz_sign_flip = (dp - 1) % 2 == 1;
    for (blade, c) in q.terms() {
        let ix = blade.indices();
        let head = MultiVector::term(&ctx, Blade::from_sorted(vec![ix[0]]), c.clone());
        let rest = MultiVector::term(
            &ctx,
            Blade::from_sorted(ix[1..].to_vec()),
            Polynomial::one(&ctx),
        );
        // [P, head ∧ rest] = [P, head] ∧ rest + (-1)^{p-1} head ∧ [P, rest]
        let t1 = schouten(p, &head)?.wedge(&rest)?;
        let t2 = head.wedge(&schouten(p, &rest)?)?;
        acc = acc.add(&t1)?;
        acc = acc.add(&if leibniz_sign_flip { t2.neg() } else { t2 })?;
    }
    Ok(acc)
}

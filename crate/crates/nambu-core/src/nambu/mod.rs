//! Recognition and analysis of Nambu structures: integrability testing,
//! singular loci, tangent and conformally invariant vector fields,
//! Hamiltonian contractions, conformal preservation of functions, and the
//! associated-structure extraction pipeline.

use crate::error::{Error, Result};
use crate::exterior::{
    apply_vector, contract, differential, lie_derivative, schouten, Blade, Form, MultiVector,
};
use crate::polyring::{divides, gcd_list, is_squarefree, Factorization, Polynomial};

/// A multivector field asserted (and optionally checked) to be integrable.
#[derive(Debug, Clone, PartialEq)]
pub struct NambuStructure {
    body: MultiVector,
    validated: bool,
}

impl NambuStructure {
    /// Wraps after running the full integrability check.
    pub fn validated(body: MultiVector) -> Result<NambuStructure> {
        if !is_nambu(&body)? {
            return Err(Error::NotNambu);
        }
        Ok(NambuStructure { body, validated: true })
    }

    /// Wraps without checking; the caller vouches for integrability.
    pub fn unchecked(body: MultiVector) -> NambuStructure {
        NambuStructure { body, validated: false }
    }

    pub fn body(&self) -> &MultiVector {
        &self.body
    }

    pub fn is_validated(&self) -> bool {
        self.validated
    }

    pub fn order(&self) -> usize {
        self.body.degree()
    }
}

/// The common zero set of all blade coefficients, presented through its
/// generators and their gcd.
#[derive(Debug, Clone, PartialEq)]
pub struct SingularLocus {
    /// The nonzero blade coefficients, in blade order.
    pub generators: Vec<Polynomial>,
    /// Monic gcd of the generators.
    pub gcd: Polynomial,
    /// True when the locus has a codimension-one part (non-constant gcd).
    pub codim_one: bool,
}

/// Outcome of the conformal-preservation membership test for a function.
#[derive(Debug, Clone, PartialEq)]
pub struct MuVerdict {
    pub member: bool,
    /// For a negative verdict: the contraction field `X` and the
    /// non-divisible derivative `X(f)`.
    pub witness: Option<MuWitness>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MuWitness {
    pub field: MultiVector,
    pub derivative: Polynomial,
}

/// The coordinate contraction fields `contract(dx_I, P)` over all
/// `(q-1)`-blades `I`, in blade order. These span the tangent sheaf of the
/// structure at its regular points.
pub fn coordinate_contractions(p: &MultiVector) -> Result<Vec<MultiVector>> {
    let ctx = p.context();
    let q = p.degree();
    Blade::enumerate(ctx.dim(), q - 1)
        .into_iter()
        .map(|b| contract(&Form::term(ctx, b, Polynomial::one(ctx)), p))
        .collect()
}

/// Integrability test: pointwise decomposability (the Plücker relations
/// via contractions) plus involutivity of the contraction fields, both as
/// exact polynomial identities. The zero field passes trivially.
pub fn is_nambu(p: &MultiVector) -> Result<bool> {
    if p.is_zero() {
        return Ok(true);
    }
    let q = p.degree();
    let n = p.context().dim();
    if q == 0 || q > n {
        return Err(Error::Degree(format!(
            "integrability is defined for degrees 1..={n}, got {q}"
        )));
    }
    let fields = coordinate_contractions(p)?;
    for x in &fields {
        if !x.wedge(p)?.is_zero() {
            return Ok(false);
        }
    }
    for (i, x) in fields.iter().enumerate() {
        for y in &fields[i + 1..] {
            if !schouten(x, y)?.wedge(p)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Singular locus data of a nonzero multivector field.
pub fn singular_locus(p: &MultiVector) -> Result<SingularLocus> {
    if p.is_zero() {
        return Err(Error::ZeroInput("singular locus of the zero field"));
    }
    let generators: Vec<Polynomial> = p.terms().map(|(_, c)| c.clone()).collect();
    let gcd = gcd_list(&generators)?;
    let codim_one = !gcd.is_constant();
    Ok(SingularLocus { generators, gcd, codim_one })
}

/// Splits off the monic coefficient gcd: `p = g * p1` with the
/// coefficients of `p1` having constant gcd.
pub fn primitive_part(p: &MultiVector) -> Result<(Polynomial, MultiVector)> {
    let locus = singular_locus(p)?;
    let mut out = MultiVector::zero(p.context(), p.degree());
    for (b, c) in p.terms() {
        let q = c.div_exact(&locus.gcd)?.expect("gcd divides every coefficient");
        out.insert(b.clone(), q)?;
    }
    Ok((locus.gcd, out))
}

/// Tangency test `X ∧ L = 0`.
pub fn is_tangent_vector(x: &MultiVector, l: &MultiVector) -> Result<bool> {
    check_vector(x)?;
    Ok(x.wedge(l)?.is_zero())
}

fn check_vector(x: &MultiVector) -> Result<()> {
    if x.degree() != 1 && !x.is_zero() {
        return Err(Error::Degree(format!("expected a vector field, got degree {}", x.degree())));
    }
    Ok(())
}

/// Conformally-invariant-tangency test: returns the conformal factor `f`
/// with `L_X L = f L` when `X` is tangent and such a polynomial factor
/// exists.
pub fn is_cit(x: &MultiVector, l: &MultiVector) -> Result<Option<Polynomial>> {
    check_vector(x)?;
    x.context().check_same(l.context())?;
    if l.is_zero() {
        return Err(Error::ZeroInput("conformal invariance against the zero field"));
    }
    if !x.wedge(l)?.is_zero() {
        return Ok(None);
    }
    let lxl = lie_derivative(x, l)?;
    // The factor is pinned by any one nonzero blade coefficient.
    let (blade, denom) = l.terms().next().expect("nonzero");
    let numer = match lxl.coefficient(blade) {
        Some(c) => c.clone(),
        None => Polynomial::zero(l.context()),
    };
    let factor = match numer.div_exact(denom)? {
        Some(f) => f,
        None => return Ok(None),
    };
    if lxl == l.scale_poly(&factor)? {
        Ok(Some(factor))
    } else {
        Ok(None)
    }
}

/// Contraction of `L` by the differentials of `fs`: the Hamiltonian vector
/// field when `fs` has `q-1` entries, a Hamiltonian structure of lower
/// order otherwise.
pub fn hamiltonian(l: &MultiVector, fs: &[Polynomial]) -> Result<MultiVector> {
    let q = l.degree();
    let m = fs.len();
    if m < 1 || m + 1 > q {
        return Err(Error::Degree(format!(
            "expected between 1 and {} Hamiltonian functions for an order-{q} structure, got {m}",
            q.saturating_sub(1)
        )));
    }
    let mut omega = differential(&fs[0])?;
    for f in &fs[1..] {
        omega = omega.wedge(&differential(f)?)?;
    }
    contract(&omega, l)
}

/// Membership of `f` in the set of functions conformally preserved by `L`,
/// decided through divisibility of the derivatives along the coordinate
/// contraction fields. Requires `f` square-free (irreducibility is the
/// caller's assertion) and `f` not dividing all of `L`.
pub fn mu_contains(f: &Polynomial, l: &MultiVector) -> Result<MuVerdict> {
    f.context().check_same(l.context())?;
    if l.degree() == 0 || l.is_zero() {
        return Err(Error::Degree("the membership test needs a structure of order >= 1".into()));
    }
    if !is_squarefree(f)? {
        return Err(Error::MuPrecondition("the tested function must be square-free".into()));
    }
    let mut divides_all = true;
    for (_, c) in l.terms() {
        if divides(f, c)?.is_none() {
            divides_all = false;
            break;
        }
    }
    if divides_all {
        return Err(Error::MuPrecondition(
            "the tested function divides the structure; divide it out first".into(),
        ));
    }
    for field in coordinate_contractions(l)? {
        let derivative = apply_vector(&field, f)?;
        if divides(f, &derivative)?.is_none() {
            return Ok(MuVerdict { member: false, witness: Some(MuWitness { field, derivative }) });
        }
    }
    Ok(MuVerdict { member: true, witness: None })
}

/// Associated-structure extraction: drops the conformally preserved
/// factors of the coefficient gcd and collapses the rest to multiplicity
/// one. The factorization is caller-supplied (factors asserted
/// irreducible) and is validated for square-freeness, coprimality and
/// exact product.
pub fn associated_nambu(l: &MultiVector, g_factors: &Factorization) -> Result<MultiVector> {
    if !is_nambu(l)? {
        return Err(Error::NotNambu);
    }
    let (g, primitive) = primitive_part(l)?;
    g_factors.validate_for(&g)?;
    let mut scale = Polynomial::one(l.context());
    for (p, m) in &g_factors.factors {
        let cofactor_gcd = g.div_exact(&p.pow(*m)?)?.expect("factor divides the gcd");
        let cofactor = primitive.scale_poly(&cofactor_gcd)?;
        let verdict = mu_contains(p, &cofactor)?;
        if !verdict.member {
            scale = scale.mul(p)?;
        }
    }
    primitive.scale_poly(&scale)
}

/// First-integral test `dF ⌟ L = 0`.
pub fn is_first_integral(f: &Polynomial, l: &MultiVector) -> Result<bool> {
    f.context().check_same(l.context())?;
    Ok(contract(&differential(f)?, l)?.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::Context;
    use crate::polyring::Rational;

    fn ctx(n: usize) -> Context {
        Context::new(n).unwrap()
    }

    fn mv(c: &Context, ix: &[usize]) -> MultiVector {
        MultiVector::basis(c, ix).unwrap()
    }

    fn x(c: &Context, i: usize) -> Polynomial {
        Polynomial::var(c, i).unwrap()
    }

    fn xterm(c: &Context, coef: Polynomial, ix: &[usize]) -> MultiVector {
        MultiVector::term(c, Blade::new(c, ix).unwrap(), coef)
    }

    #[test]
    fn nambu_recognition() {
        let c3 = ctx(3);
        // f * coordinate blade is integrable
        assert!(is_nambu(&xterm(&c3, x(&c3, 1), &[1, 2])).unwrap());
        // zero passes trivially, every vector field passes
        assert!(is_nambu(&MultiVector::zero(&c3, 2)).unwrap());
        assert!(is_nambu(&xterm(&c3, x(&c3, 2), &[1])).unwrap());
        // Pluecker failure
        let c4 = ctx(4);
        let split = mv(&c4, &[1, 2]).add(&mv(&c4, &[3, 4])).unwrap();
        assert!(!is_nambu(&split).unwrap());
        // Frobenius failure: D1 ∧ (D2 + x1 D3)
        let twisted = mv(&c3, &[1, 2]).add(&xterm(&c3, x(&c3, 1), &[1, 3])).unwrap();
        assert!(!is_nambu(&twisted).unwrap());
        // degree errors
        assert!(is_nambu(&MultiVector::from_poly(&x(&c3, 1))).is_err());
    }

    #[test]
    fn locus_and_primitive_part() {
        let c2 = ctx(2);
        let lam = xterm(&c2, x(&c2, 1), &[1, 2]);
        let locus = singular_locus(&lam).unwrap();
        assert_eq!(locus.gcd, x(&c2, 1));
        assert!(locus.codim_one);
        let (g, prim) = primitive_part(&lam).unwrap();
        assert_eq!(g, x(&c2, 1));
        assert_eq!(prim, mv(&c2, &[1, 2]));

        let c3 = ctx(3);
        let spread = xterm(&c3, x(&c3, 2), &[1, 2]).add(&xterm(&c3, x(&c3, 3), &[1, 3])).unwrap();
        let locus = singular_locus(&spread).unwrap();
        assert!(locus.gcd.is_one());
        assert!(!locus.codim_one);
        assert_eq!(locus.generators, vec![x(&c3, 2), x(&c3, 3)]);

        let regular = mv(&c3, &[1, 2]);
        let locus = singular_locus(&regular).unwrap();
        assert!(locus.gcd.is_one());
        assert!(!locus.codim_one);
        assert!(singular_locus(&MultiVector::zero(&c3, 2)).is_err());
    }

    #[test]
    fn tangency() {
        let c2 = ctx(2);
        let lam = xterm(&c2, x(&c2, 1), &[1, 2]);
        assert!(is_tangent_vector(&mv(&c2, &[1]), &lam).unwrap());
        let c3 = ctx(3);
        assert!(!is_tangent_vector(&mv(&c3, &[3]), &mv(&c3, &[1, 2])).unwrap());
        // x2 D1 - x1 D2 is tangent to D1 ∧ D2
        let rot = xterm(&c2, x(&c2, 2), &[1]).sub(&xterm(&c2, x(&c2, 1), &[2])).unwrap();
        assert!(is_tangent_vector(&rot, &mv(&c2, &[1, 2])).unwrap());
        assert!(is_tangent_vector(&mv(&c2, &[1, 2]), &lam).is_err());
    }

    #[test]
    fn cit_on_the_running_example() {
        // Λ = x ∂x ∧ ∂y
        let c = ctx(2);
        let lam = xterm(&c, x(&c, 1), &[1, 2]);
        let euler = xterm(&c, x(&c, 1), &[1]);
        // x ∂x and ∂y conformally preserve Λ with factor 0
        assert_eq!(is_cit(&euler, &lam).unwrap(), Some(Polynomial::zero(&c)));
        assert_eq!(is_cit(&mv(&c, &[2]), &lam).unwrap(), Some(Polynomial::zero(&c)));
        // ∂x is tangent but needs the non-polynomial factor 1/x
        assert_eq!(is_cit(&mv(&c, &[1]), &lam).unwrap(), None);
        assert!(is_cit(&mv(&c, &[1]), &MultiVector::zero(&c, 2)).is_err());
    }

    #[test]
    fn hamiltonian_contractions() {
        let c = ctx(3);
        let top = mv(&c, &[1, 2, 3]);
        // (dx1 ∧ dx2) ⌟ D123 = D3
        assert_eq!(hamiltonian(&top, &[x(&c, 1), x(&c, 2)]).unwrap(), mv(&c, &[3]));
        // d(x1 x2) ∧ dx2 = x2 dx1 ∧ dx2
        let got = hamiltonian(&top, &[x(&c, 1).mul(&x(&c, 2)).unwrap(), x(&c, 2)]).unwrap();
        assert_eq!(got, xterm(&c, x(&c, 2), &[3]));
        // single function against a bivector
        let c2 = ctx(2);
        assert_eq!(
            hamiltonian(&mv(&c2, &[1, 2]), &[x(&c2, 2)]).unwrap(),
            mv(&c2, &[1]).neg()
        );
        // m out of range
        assert!(hamiltonian(&mv(&c2, &[1]), &[x(&c2, 1)]).is_err());
        assert!(hamiltonian(&top, &[x(&c, 1), x(&c, 2), x(&c, 3)]).is_err());
    }

    #[test]
    fn mu_membership_desk_cases() {
        let c = ctx(2);
        // (x, D2): the only contraction is D2 itself, D2(x) = 0
        let v = mu_contains(&x(&c, 1), &mv(&c, &[2])).unwrap();
        assert!(v.member);
        assert!(v.witness.is_none());
        // (x, D1 ∧ D2): the contraction -D1 differentiates x to -1
        let v = mu_contains(&x(&c, 1), &mv(&c, &[1, 2])).unwrap();
        assert!(!v.member);
        let w = v.witness.unwrap();
        assert_eq!(w.field, mv(&c, &[1]).neg());
        assert_eq!(w.derivative, Polynomial::int_constant(&c, -1));
        // rotationally invariant function against the rotation field
        let f = x(&c, 1).pow(2).unwrap().add(&x(&c, 2).pow(2).unwrap()).unwrap();
        let rot = xterm(&c, x(&c, 1), &[2]).sub(&xterm(&c, x(&c, 2), &[1])).unwrap();
        assert!(mu_contains(&f, &rot).unwrap().member);
        // preconditions
        let sq = x(&c, 1).pow(2).unwrap();
        assert!(matches!(mu_contains(&sq, &mv(&c, &[2])), Err(Error::MuPrecondition(_))));
        let lam = xterm(&c, x(&c, 1), &[1, 2]);
        assert!(matches!(mu_contains(&x(&c, 1), &lam), Err(Error::MuPrecondition(_))));
    }

    #[test]
    fn associated_structure_extraction() {
        let c = ctx(2);
        let fx = Factorization::new(Rational::from_integer(1.into()), vec![(x(&c, 1), 1)]);
        // genuine codimension-one singularity is kept
        let lam = xterm(&c, x(&c, 1), &[1, 2]);
        assert_eq!(associated_nambu(&lam, &fx).unwrap(), lam);
        // removable factor is dropped
        let xd2 = xterm(&c, x(&c, 1), &[2]);
        assert_eq!(associated_nambu(&xd2, &fx).unwrap(), mv(&c, &[2]));
        // multiplicities collapse to one
        let fxy = Factorization::new(
            Rational::from_integer(1.into()),
            vec![(x(&c, 1), 2), (x(&c, 2), 1)],
        );
        let heavy = xterm(&c, x(&c, 1).pow(2).unwrap().mul(&x(&c, 2)).unwrap(), &[1, 2]);
        let expect = xterm(&c, x(&c, 1).mul(&x(&c, 2)).unwrap(), &[1, 2]);
        assert_eq!(associated_nambu(&heavy, &fxy).unwrap(), expect);
        // wrong factorization is rejected
        assert!(associated_nambu(&heavy, &fx).is_err());
        // non-integrable input is rejected
        let c4 = ctx(4);
        let split = mv(&c4, &[1, 2]).add(&mv(&c4, &[3, 4])).unwrap();
        let unit = Factorization::new(Rational::from_integer(1.into()), vec![]);
        assert!(matches!(associated_nambu(&split, &unit), Err(Error::NotNambu)));
        // constant gcd: structure returned unchanged
        let reg = mv(&c, &[1, 2]);
        assert_eq!(associated_nambu(&reg, &unit).unwrap(), reg);
    }

    #[test]
    fn first_integrals() {
        let c = ctx(3);
        assert!(is_first_integral(&x(&c, 3), &mv(&c, &[1, 2])).unwrap());
        assert!(!is_first_integral(&x(&c, 1), &mv(&c, &[1, 2])).unwrap());
        let c2 = ctx(2);
        let f = x(&c2, 1).pow(2).unwrap().add(&x(&c2, 2).pow(2).unwrap()).unwrap();
        let rot = xterm(&c2, x(&c2, 1), &[2]).sub(&xterm(&c2, x(&c2, 2), &[1])).unwrap();
        assert!(is_first_integral(&f, &rot).unwrap());
        // constants are first integrals of everything
        assert!(is_first_integral(&Polynomial::one(&c2), &rot).unwrap());
    }

    #[test]
    fn validated_wrapper() {
        let c = ctx(2);
        let lam = xterm(&c, x(&c, 1), &[1, 2]);
        let ns = NambuStructure::validated(lam.clone()).unwrap();
        assert!(ns.is_validated());
        assert_eq!(ns.order(), 2);
        assert_eq!(ns.body(), &lam);
        let c4 = ctx(4);
        let split = mv(&c4, &[1, 2]).add(&mv(&c4, &[3, 4])).unwrap();
        assert!(NambuStructure::validated(split.clone()).is_err());
        assert!(!NambuStructure::unchecked(split).is_validated());
    }
}

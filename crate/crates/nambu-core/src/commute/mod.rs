//! Commutativity of Nambu structures in every regime: the vanishing-bracket
//! test when the orders fit inside the dimension, witness-verified reduction
//! when they exceed it, and point-sampled intersection checks in the
//! degenerate case. Also houses reduction, normal-form verification,
//! Lie-algebra action builders, and the integrable-presentation checker.

mod linalg;

use crate::context::{Context, Point};
use crate::error::{Error, Result};
use crate::exterior::{
    pushforward, schouten, Blade, CoordinateMap, MultiVector,
};
use crate::nambu::{coordinate_contractions, NambuStructure};
use crate::polyring::{Polynomial, Rational};

/// How a pair of structures interacts, per the sum of their orders and the
/// generic behaviour of their wedge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// `q1 + q2 <= n` and the wedge is generically nonzero.
    Low,
    /// `q1 + q2 > n`; commutativity is verified through reductions.
    High,
    /// The wedge vanishes identically while the orders fit: the generic
    /// leaf intersection is positive-dimensional.
    Degenerate,
}

/// A classified pair of validated structures.
#[derive(Debug, Clone)]
pub struct CommutePair {
    l1: NambuStructure,
    l2: NambuStructure,
    regime: Regime,
}

impl CommutePair {
    pub fn classify(l1: NambuStructure, l2: NambuStructure) -> Result<CommutePair> {
        l1.body().context().check_same(l2.body().context())?;
        let n = l1.body().context().dim();
        let regime = if l1.order() + l2.order() > n {
            Regime::High
        } else if l1.body().wedge(l2.body())?.is_zero() {
            Regime::Degenerate
        } else {
            Regime::Low
        };
        Ok(CommutePair { l1, l2, regime })
    }

    pub fn first(&self) -> &NambuStructure {
        &self.l1
    }

    pub fn second(&self) -> &NambuStructure {
        &self.l2
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }
}

/// Low-regime commutativity: the Schouten bracket vanishes identically.
/// Requires `q1 + q2 <= n` and a generically nonzero wedge.
pub fn commute_low(l1: &NambuStructure, l2: &NambuStructure) -> Result<bool> {
    let a = l1.body();
    let b = l2.body();
    a.context().check_same(b.context())?;
    let n = a.context().dim();
    if a.degree() + b.degree() > n {
        return Err(Error::WrongRegime(format!(
            "orders {} + {} exceed the dimension {n}; use the high-regime test",
            a.degree(),
            b.degree()
        )));
    }
    if a.wedge(b)?.is_zero() {
        return Err(Error::DegenerateWedge);
    }
    Ok(schouten(a, b)?.is_zero())
}

/// Pairwise commutativity of a family with independent generic supports:
/// true when the full wedge is generically nonzero and every pair's
/// bracket vanishes.
pub fn commute_family(ls: &[NambuStructure]) -> Result<bool> {
    let first = ls
        .first()
        .ok_or(Error::Degree("the family must contain at least one structure".into()))?;
    let ctx = first.body().context().clone();
    let mut total = 0;
    for l in ls {
        ctx.check_same(l.body().context())?;
        total += l.order();
    }
    if total > ctx.dim() {
        return Err(Error::WrongRegime(format!(
            "total order {total} exceeds the dimension {}",
            ctx.dim()
        )));
    }
    let mut wedge = first.body().clone();
    for l in &ls[1..] {
        wedge = wedge.wedge(l.body())?;
    }
    if wedge.is_zero() {
        return Ok(false);
    }
    for (i, a) in ls.iter().enumerate() {
        for b in &ls[i + 1..] {
            if !schouten(a.body(), b.body())?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Canonical disjoint blades `D_{1..q1}` and `D_{q1+1..q1+q2}` of a chart.
fn canonical_pair_blades(ctx: &Context, q1: usize, q2: usize) -> Result<(MultiVector, MultiVector)> {
    let a: Vec<usize> = (1..=q1).collect();
    let b: Vec<usize> = (q1 + 1..=q1 + q2).collect();
    Ok((MultiVector::basis(ctx, &a)?, MultiVector::basis(ctx, &b)?))
}

/// Verifies that `phi` takes the pair to the canonical simultaneous normal
/// form, exactly.
pub fn verify_normal_form(
    l1: &NambuStructure,
    l2: &NambuStructure,
    phi: &CoordinateMap,
) -> Result<bool> {
    let a = l1.body();
    let b = l2.body();
    a.context().check_same(b.context())?;
    let n = a.context().dim();
    let (q1, q2) = (a.degree(), b.degree());
    if q1 + q2 > n {
        return Err(Error::WrongRegime(format!(
            "orders {q1} + {q2} exceed the dimension {n}; the simultaneous normal form needs the low regime"
        )));
    }
    if a.wedge(b)?.is_zero() {
        return Err(Error::DegenerateWedge);
    }
    let (c1, c2) = canonical_pair_blades(phi.target(), q1, q2)?;
    Ok(pushforward(phi, a)? == c1 && pushforward(phi, b)? == c2)
}

/// Tests whether `x` is a shared Hamiltonian-type symmetry: tangent to both
/// structures and preserving both exactly.
pub fn common_hamiltonian_check(
    x: &MultiVector,
    l1: &MultiVector,
    l2: &MultiVector,
) -> Result<bool> {
    if x.degree() != 1 && !x.is_zero() {
        return Err(Error::Degree(format!(
            "the common field must have degree 1, got {}",
            x.degree()
        )));
    }
    x.context().check_same(l1.context())?;
    x.context().check_same(l2.context())?;
    Ok(x.wedge(l1)?.is_zero()
        && x.wedge(l2)?.is_zero()
        && schouten(x, l1)?.is_zero()
        && schouten(x, l2)?.is_zero())
}

/// Reduction of `l` by the regular structure `D_1 ∧ … ∧ D_k`: strips the
/// first `k` axes from every blade and re-expresses the result over the
/// trailing variables.
pub fn reduce(l: &MultiVector, k: usize) -> Result<MultiVector> {
    let ctx = l.context();
    let n = ctx.dim();
    if k == 0 || k >= n {
        return Err(Error::Degree(format!("reduction step must satisfy 1 <= k < {n}, got {k}")));
    }
    if l.degree() < k && !l.is_zero() {
        return Err(Error::Degree(format!(
            "cannot reduce a degree-{} field by {k} axes",
            l.degree()
        )));
    }
    for (blade, coef) in l.terms() {
        for i in 1..=k {
            if !blade.contains(i) {
                return Err(Error::Degree(format!(
                    "blade {:?} lacks index {i}: the field is not divisible by the reduction blade",
                    blade.indices()
                )));
            }
        }
        if coef.vars_present().iter().any(|&v| v <= k) {
            return Err(Error::Degree(format!(
                "a coefficient depends on x_1..x_{k}; the field is not invariant along the reduction"
            )));
        }
    }
    let pi = MultiVector::basis(ctx, &(1..=k).collect::<Vec<_>>())?;
    if !schouten(&pi, l)?.is_zero() {
        return Err(Error::Degree(
            "the field does not commute with the reduction blade".into(),
        ));
    }
    let reduced_ctx = ctx.drop_leading(k)?;
    let mut out = MultiVector::zero(&reduced_ctx, l.degree() - k.min(l.degree()));
    for (blade, coef) in l.terms() {
        let new_indices: Vec<usize> =
            blade.indices().iter().filter(|&&i| i > k).map(|&i| i - k).collect();
        let mut new_coef = Polynomial::zero(&reduced_ctx);
        for (m, c) in coef.terms() {
            new_coef = new_coef.add(&Polynomial::monomial(
                &reduced_ctx,
                &m.exponents()[k..],
                c.clone(),
            ))?;
        }
        out.insert(Blade::from_sorted(new_indices), new_coef)?;
    }
    Ok(out)
}

/// Inverse of [`reduce`]: lifts `theta` back over the parent chart and
/// wedges the reduction blade on, so `expand_reduction(reduce(l, k), ..) = l`.
pub fn expand_reduction(theta: &MultiVector, parent: &Context, k: usize) -> Result<MultiVector> {
    let reduced_ctx = parent.drop_leading(k)?;
    theta.context().check_same(&reduced_ctx)?;
    let mut lifted = MultiVector::zero(parent, theta.degree() + k);
    let lead: Vec<usize> = (1..=k).collect();
    for (blade, coef) in theta.terms() {
        let mut indices = lead.clone();
        indices.extend(blade.indices().iter().map(|&i| i + k));
        let mut new_coef = Polynomial::zero(parent);
        for (m, c) in coef.terms() {
            let mut exps = vec![0u32; k];
            exps.extend_from_slice(m.exponents());
            new_coef = new_coef.add(&Polynomial::monomial(parent, &exps, c.clone()))?;
        }
        lifted.insert(Blade::from_sorted(indices), new_coef)?;
    }
    Ok(lifted)
}

/// One step of a high-regime witness: a common Hamiltonian field and a
/// coordinate change straightening it to `D_1`.
#[derive(Debug, Clone)]
pub struct HighStep {
    pub field: MultiVector,
    pub map: CoordinateMap,
}

/// Witness chain for high-regime commutativity, with the point at which
/// every chain field must be nonvanishing.
#[derive(Debug, Clone)]
pub struct HighWitness {
    pub chain: Vec<HighStep>,
    pub point: Point,
}

/// High-regime commutativity (`q1 + q2 - n = k > 0`), verified one
/// dimension at a time: each chain step must exhibit a common Hamiltonian
/// field, straighten it, and reduce both structures; the final reductions
/// are tested in the low regime.
pub fn commute_high(
    l1: &NambuStructure,
    l2: &NambuStructure,
    witness: &HighWitness,
) -> Result<bool> {
    let mut m1 = l1.body().clone();
    let mut m2 = l2.body().clone();
    m1.context().check_same(m2.context())?;
    let n = m1.context().dim();
    let (q1, q2) = (m1.degree(), m2.degree());
    if q1 + q2 <= n {
        return Err(Error::WrongRegime(format!(
            "orders {q1} + {q2} fit inside dimension {n}; use the low-regime test"
        )));
    }
    let k = q1 + q2 - n;
    if witness.chain.len() != k {
        return Err(Error::InvalidWitness(format!(
            "expected a chain of {k} steps, got {}",
            witness.chain.len()
        )));
    }
    let mut point = witness.point.clone();
    m1.context().check_same(point.context())?;
    for step in &witness.chain {
        m1.context().check_same(step.field.context())?;
        if step.field.vanishes_at(point.coords())? {
            return Err(Error::InvalidWitness(
                "a chain field vanishes at the designated point".into(),
            ));
        }
        if !common_hamiltonian_check(&step.field, &m1, &m2)? {
            return Ok(false);
        }
        let straightened = pushforward(&step.map, &step.field)?;
        if straightened != MultiVector::basis(step.map.target(), &[1])? {
            return Err(Error::InvalidWitness(
                "the coordinate map does not straighten the chain field to D1".into(),
            ));
        }
        m1 = reduce(&pushforward(&step.map, &m1)?, 1)?;
        m2 = reduce(&pushforward(&step.map, &m2)?, 1)?;
        let image = step.map.push_point(&point)?;
        point = Point::new(
            m1.context().clone(),
            image.coords()[1..].to_vec(),
        )?;
    }
    commute_low(&NambuStructure::unchecked(m1), &NambuStructure::unchecked(m2))
}

/// Tangent-space basis vectors of a structure at a rational point: the
/// coordinate contraction fields evaluated there.
fn tangent_vectors_at(l: &MultiVector, point: &Point) -> Result<Vec<Vec<Rational>>> {
    let n = l.context().dim();
    let mut rows = Vec::new();
    for field in coordinate_contractions(l)? {
        let values = field.eval(point.coords())?;
        if values.is_empty() {
            continue;
        }
        let mut row = vec![Rational::from_integer(0.into()); n];
        for (blade, v) in values {
            row[blade.indices()[0] - 1] = v;
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Degenerate-regime commutativity: the generic leaf intersection must
/// have the stated dimension `k` at every sample point, and `phi` must
/// take the pair to the canonical overlapping display.
pub fn commute_degenerate(
    l1: &NambuStructure,
    l2: &NambuStructure,
    k: usize,
    phi: &CoordinateMap,
    samples: &[Point],
) -> Result<bool> {
    let a = l1.body();
    let b = l2.body();
    a.context().check_same(b.context())?;
    let n = a.context().dim();
    let (q1, q2) = (a.degree(), b.degree());
    if !a.wedge(b)?.is_zero() {
        return Err(Error::WrongRegime(
            "the wedge is generically nonzero; use the transverse tests".into(),
        ));
    }
    if k == 0 || k > q1.min(q2) || q1 + q2 - k > n {
        return Err(Error::InvalidWitness(format!(
            "intersection dimension k={k} is inconsistent with orders ({q1}, {q2}) in dimension {n}"
        )));
    }
    if samples.is_empty() {
        return Err(Error::InvalidWitness("at least one sample point is required".into()));
    }
    for z in samples {
        a.context().check_same(z.context())?;
        if a.vanishes_at(z.coords())? || b.vanishes_at(z.coords())? {
            return Err(Error::InvalidWitness(
                "a sample point annihilates one of the structures".into(),
            ));
        }
        let v1 = tangent_vectors_at(a, z)?;
        let v2 = tangent_vectors_at(b, z)?;
        let r1 = linalg::rank(v1.clone());
        let r2 = linalg::rank(v2.clone());
        let mut joint = v1;
        joint.extend(v2);
        let meet = r1 + r2 - linalg::rank(joint);
        if meet != k {
            return Ok(false);
        }
    }
    // canonical display: D_{1..q1} against D_{1..k} ∧ D_{q1+1..q1+q2-k}
    let target = phi.target();
    let c1 = MultiVector::basis(target, &(1..=q1).collect::<Vec<_>>())?;
    let mut ix: Vec<usize> = (1..=k).collect();
    ix.extend(q1 + 1..=q1 + q2 - k);
    let c2 = MultiVector::basis(target, &ix)?;
    Ok(pushforward(phi, a)? == c1 && pushforward(phi, b)? == c2)
}

/// A Lie algebra action: structure constants plus the image vector fields,
/// with the morphism property checked exactly at construction.
#[derive(Debug, Clone)]
pub struct LieAction {
    dim: usize,
    structure_constants: Vec<Vec<Vec<Rational>>>,
    images: Vec<MultiVector>,
}

impl LieAction {
    /// `structure_constants[a][b][c]` is the coefficient of `e_c` in
    /// `[e_a, e_b]`; `images[a]` is the vector field the basis element
    /// `e_a` acts by.
    pub fn new(
        structure_constants: Vec<Vec<Vec<Rational>>>,
        images: Vec<MultiVector>,
    ) -> Result<LieAction> {
        let d = images.len();
        if d == 0 {
            return Err(Error::Degree("a Lie action needs at least one generator".into()));
        }
        let ctx = images[0].context().clone();
        for img in &images {
            ctx.check_same(img.context())?;
            if img.degree() != 1 && !img.is_zero() {
                return Err(Error::Degree("action images must be vector fields".into()));
            }
        }
        if structure_constants.len() != d
            || structure_constants.iter().any(|m| m.len() != d || m.iter().any(|r| r.len() != d))
        {
            return Err(Error::Degree(format!(
                "structure constants must form a {d}x{d}x{d} array"
            )));
        }
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    if structure_constants[a][b][c] != -&structure_constants[b][a][c] {
                        return Err(Error::InvalidWitness(format!(
                            "structure constants are not antisymmetric at ({},{},{})",
                            a + 1,
                            b + 1,
                            c + 1
                        )));
                    }
                }
            }
        }
        for a in 0..d {
            for b in a + 1..d {
                let bracket = schouten(&images[a], &images[b])?;
                let mut expected = MultiVector::zero(&ctx, 1);
                for c in 0..d {
                    expected = expected.add(&images[c].scale(&structure_constants[a][b][c]))?;
                }
                if bracket != expected {
                    return Err(Error::InvalidWitness(format!(
                        "images do not realize the bracket of generators {} and {}",
                        a + 1,
                        b + 1
                    )));
                }
            }
        }
        Ok(LieAction { dim: d, structure_constants, images })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn image(&self, a: usize) -> Result<&MultiVector> {
        self.images.get(a - 1).ok_or(Error::IndexOutOfRange { index: a, n: self.dim })
    }

    pub fn structure_constant(&self, a: usize, b: usize, c: usize) -> Result<&Rational> {
        if a < 1 || a > self.dim || b < 1 || b > self.dim || c < 1 || c > self.dim {
            return Err(Error::IndexOutOfRange { index: a.max(b).max(c), n: self.dim });
        }
        Ok(&self.structure_constants[a - 1][b - 1][c - 1])
    }
}

/// Image of an element of the exterior power of the Lie algebra under the
/// action: `xi` is a list of (generator indices, coefficient) pairs, each
/// tuple naming a basis wedge `e_{a_1} ∧ … ∧ e_{a_q}`. Unsorted tuples are
/// normalized with the permutation sign; tuples with repeats contribute
/// nothing.
pub fn lie_action_nambu(
    action: &LieAction,
    xi: &[(Vec<usize>, Rational)],
) -> Result<MultiVector> {
    let first = xi
        .first()
        .ok_or(Error::Degree("the coefficient list must be nonempty".into()))?;
    let q = first.0.len();
    if q == 0 {
        return Err(Error::Degree("basis wedges must have positive length".into()));
    }
    let ctx = action.images[0].context().clone();
    let mut acc = MultiVector::zero(&ctx, q);
    for (tuple, coef) in xi {
        if tuple.len() != q {
            return Err(Error::Degree(format!(
                "mixed wedge lengths: expected {q}, got {}",
                tuple.len()
            )));
        }
        for &a in tuple {
            if a < 1 || a > action.dim {
                return Err(Error::IndexOutOfRange { index: a, n: action.dim });
            }
        }
        if Blade::normalize(tuple).is_none() {
            // repeated generator: the basis wedge is zero
            continue;
        }
        // wedging in tuple order carries the permutation sign already
        let mut wedge = MultiVector::from_poly(&Polynomial::constant(&ctx, coef.clone()));
        for &a in tuple {
            wedge = wedge.wedge(&action.images[a - 1])?;
        }
        acc = acc.add(&wedge)?;
    }
    Ok(acc)
}

/// Integrable-presentation test: the orders and first-integral count fill
/// the dimension, every function is a first integral of every structure,
/// and the structures commute as a family with generically independent
/// supports.
pub fn is_integrable_presentation(
    ls: &[NambuStructure],
    fs: &[Polynomial],
) -> Result<bool> {
    let first = ls
        .first()
        .ok_or(Error::Degree("the presentation needs at least one structure".into()))?;
    let ctx = first.body().context().clone();
    for l in ls {
        ctx.check_same(l.body().context())?;
    }
    for f in fs {
        ctx.check_same(f.context())?;
    }
    let total: usize = ls.iter().map(|l| l.order()).sum();
    if total + fs.len() != ctx.dim() {
        return Ok(false);
    }
    for f in fs {
        for l in ls {
            if !crate::nambu::is_first_integral(f, l.body())? {
                return Ok(false);
            }
        }
    }
    commute_family(ls)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(n: usize) -> Context {
        Context::new(n).unwrap()
    }

    fn mv(c: &Context, ix: &[usize]) -> MultiVector {
        MultiVector::basis(c, ix).unwrap()
    }

    fn ns(m: MultiVector) -> NambuStructure {
        NambuStructure::validated(m).unwrap()
    }

    fn x(c: &Context, i: usize) -> Polynomial {
        Polynomial::var(c, i).unwrap()
    }

    fn xterm(c: &Context, coef: Polynomial, ix: &[usize]) -> MultiVector {
        MultiVector::term(c, Blade::new(c, ix).unwrap(), coef)
    }

    #[test]
    fn low_regime_basics() {
        let c4 = ctx(4);
        assert!(commute_low(&ns(mv(&c4, &[1, 2])), &ns(mv(&c4, &[3, 4]))).unwrap());
        let c3 = ctx(3);
        let d1 = ns(mv(&c3, &[1]));
        let x1d2 = ns(xterm(&c3, x(&c3, 1), &[2]));
        assert!(!commute_low(&d1, &x1d2).unwrap());
        let c5 = ctx(5);
        let p = ns(mv(&c5, &[1, 2]));
        let q = ns(xterm(&c5, x(&c5, 1), &[3, 4]));
        assert!(!commute_low(&p, &q).unwrap());
        // regime errors
        assert!(matches!(
            commute_low(&ns(mv(&c3, &[1, 2])), &ns(mv(&c3, &[1, 3]))),
            Err(Error::WrongRegime(_))
        ));
        let c4b = ctx(4);
        assert!(matches!(
            commute_low(&ns(mv(&c4b, &[1, 2])), &ns(mv(&c4b, &[1, 2]))),
            Err(Error::DegenerateWedge)
        ));
    }

    #[test]
    fn family_checks() {
        let c4 = ctx(4);
        let fam = vec![ns(mv(&c4, &[1])), ns(mv(&c4, &[2])), ns(mv(&c4, &[3, 4]))];
        assert!(commute_family(&fam).unwrap());
        let c3 = ctx(3);
        let bad = vec![ns(mv(&c3, &[1])), ns(xterm(&c3, x(&c3, 1), &[2])), ns(mv(&c3, &[3]))];
        assert!(!commute_family(&bad).unwrap());
        let c2 = ctx(2);
        let repeated = vec![ns(mv(&c2, &[1])), ns(mv(&c2, &[1]))];
        assert!(!commute_family(&repeated).unwrap());
        let overflow = vec![ns(mv(&c2, &[1, 2])), ns(mv(&c2, &[1]))];
        assert!(matches!(commute_family(&overflow), Err(Error::WrongRegime(_))));
    }

    #[test]
    fn normal_form_verification() {
        let c = ctx(4);
        let l1 = ns(mv(&c, &[1, 2]));
        let l2 = ns(mv(&c, &[3, 4]));
        assert!(verify_normal_form(&l1, &l2, &CoordinateMap::identity(&c)).unwrap());
        // a shear moves D1 off the canonical form
        let fwd = vec![x(&c, 1), x(&c, 2).add(&x(&c, 1).pow(2).unwrap()).unwrap(), x(&c, 3), x(&c, 4)];
        let inv = vec![x(&c, 1), x(&c, 2).sub(&x(&c, 1).pow(2).unwrap()).unwrap(), x(&c, 3), x(&c, 4)];
        let phi = CoordinateMap::new(fwd, inv).unwrap();
        // pushing the canonical pair through the shear leaves D1∧D2 fixed
        // (the shear only mixes 1 and 2) but a shear in x3 breaks it
        let fwd2 = vec![x(&c, 1).add(&x(&c, 3).pow(2).unwrap()).unwrap(), x(&c, 2), x(&c, 3), x(&c, 4)];
        let inv2 = vec![x(&c, 1).sub(&x(&c, 3).pow(2).unwrap()).unwrap(), x(&c, 2), x(&c, 3), x(&c, 4)];
        let psi = CoordinateMap::new(fwd2, inv2).unwrap();
        // transformed pair verified through the inverse
        let t1 = ns(pushforward(&psi, l1.body()).unwrap());
        let t2 = ns(pushforward(&psi, l2.body()).unwrap());
        assert!(verify_normal_form(&t1, &t2, &psi.inverted()).unwrap());
        assert!(!verify_normal_form(&t1, &t2, &psi).unwrap());
        let _ = phi;
    }

    #[test]
    fn common_hamiltonian_examples() {
        let c = ctx(3);
        let l1 = mv(&c, &[1, 2]);
        let l2 = mv(&c, &[1, 3]);
        assert!(common_hamiltonian_check(&mv(&c, &[1]), &l1, &l2).unwrap());
        assert!(!common_hamiltonian_check(&mv(&c, &[2]), &l1, &l2).unwrap());
        let euler = xterm(&c, x(&c, 1), &[1]);
        assert!(!common_hamiltonian_check(&euler, &l1, &l2).unwrap());
        assert!(common_hamiltonian_check(&l1, &l1, &l2).is_err());
    }

    #[test]
    fn reduction_and_expansion() {
        let c = ctx(3);
        // x3 D1∧D2∧D3 reduces by 2 to x3 D3 over (x3)
        let l = xterm(&c, x(&c, 3), &[1, 2, 3]);
        let theta = reduce(&l, 2).unwrap();
        let rc = c.drop_leading(2).unwrap();
        assert_eq!(theta.context(), &rc);
        let expected = MultiVector::term(
            &rc,
            Blade::new(&rc, &[1]).unwrap(),
            Polynomial::var(&rc, 1).unwrap(),
        );
        assert_eq!(theta, expected);
        assert_eq!(expand_reduction(&theta, &c, 2).unwrap(), l);
        // blade lacking an index
        assert!(reduce(&mv(&c, &[1, 3]), 2).is_err());
        // degree-0 result
        let theta = reduce(&mv(&c, &[1, 2]), 2).unwrap();
        assert!(theta.to_poly().unwrap().is_one());
        // dependent coefficient rejected
        let bad = xterm(&c, x(&c, 1), &[1, 2]);
        assert!(reduce(&bad, 1).is_err());
    }

    #[test]
    fn high_regime_examples() {
        let c = ctx(3);
        let l1 = ns(mv(&c, &[1, 2]));
        let origin = Point::new(c.clone(), vec![
            Rational::from_integer(0.into()),
            Rational::from_integer(0.into()),
            Rational::from_integer(0.into()),
        ])
        .unwrap();
        let witness = HighWitness {
            chain: vec![HighStep { field: mv(&c, &[1]), map: CoordinateMap::identity(&c) }],
            point: origin.clone(),
        };
        // reductions D2 and D3 commute
        let l2 = ns(mv(&c, &[1, 3]));
        assert!(commute_high(&l1, &l2, &witness).unwrap());
        // reductions D2 and D3 + x2 D2 do not commute
        let twisted = mv(&c, &[1, 3]).add(&xterm(&c, x(&c, 2), &[1, 2])).unwrap();
        assert!(!commute_high(&l1, &ns(twisted), &witness).unwrap());
        // reductions D2 and D3 + x3 D2 do commute
        let sheared = mv(&c, &[1, 3]).add(&xterm(&c, x(&c, 3), &[1, 2])).unwrap();
        assert!(commute_high(&l1, &ns(sheared), &witness).unwrap());
        // witness-length mismatch
        let short = HighWitness { chain: vec![], point: origin };
        assert!(matches!(commute_high(&l1, &l2, &short), Err(Error::InvalidWitness(_))));
        // wrong regime
        let c4 = ctx(4);
        assert!(matches!(
            commute_high(
                &ns(mv(&c4, &[1, 2])),
                &ns(mv(&c4, &[3, 4])),
                &HighWitness {
                    chain: vec![],
                    point: Point::new(c4.clone(), vec![Rational::from_integer(0.into()); 4])
                        .unwrap()
                }
            ),
            Err(Error::WrongRegime(_))
        ));
    }

    #[test]
    fn degenerate_regime_examples() {
        let c = ctx(4);
        let l1 = ns(mv(&c, &[1, 2]));
        let l2 = ns(mv(&c, &[1, 3]));
        let pt = |a: i64, b: i64, cc: i64, d: i64| {
            Point::new(
                c.clone(),
                vec![
                    Rational::from_integer(a.into()),
                    Rational::from_integer(b.into()),
                    Rational::from_integer(cc.into()),
                    Rational::from_integer(d.into()),
                ],
            )
            .unwrap()
        };
        let samples = vec![pt(0, 0, 0, 0), pt(1, 2, 3, 4)];
        let id = CoordinateMap::identity(&c);
        assert!(commute_degenerate(&l1, &l2, 1, &id, &samples).unwrap());
        // same structure twice: intersection dimension 2, not 1
        assert!(!commute_degenerate(&l1, &l1, 1, &id, &samples).unwrap());
        // x-dependent span: dimension drops where x3 != 0
        let vary = mv(&c, &[1, 2]).add(&xterm(&c, x(&c, 3), &[1, 3])).unwrap();
        assert!(!commute_degenerate(&l1, &NambuStructure::unchecked(vary), 2, &id, &samples)
            .unwrap());
        // transverse pair rejected
        let t2 = ns(mv(&c, &[3, 4]));
        assert!(matches!(
            commute_degenerate(&l1, &t2, 1, &id, &samples),
            Err(Error::WrongRegime(_))
        ));
        // annihilating sample point rejected
        let sing = NambuStructure::unchecked(xterm(&c, x(&c, 1), &[1, 2]));
        assert!(matches!(
            commute_degenerate(&sing, &l2, 1, &id, &[pt(0, 1, 1, 1)]),
            Err(Error::InvalidWitness(_))
        ));
    }

    #[test]
    fn lie_action_construction() {
        let c = ctx(4);
        let zero = Rational::from_integer(0.into());
        let one = Rational::from_integer(1.into());
        // abelian in two generators acting by D1, D2
        let sc = vec![vec![vec![zero.clone(); 2]; 2]; 2];
        let abelian = LieAction::new(sc, vec![mv(&c, &[1]), mv(&c, &[2])]).unwrap();
        let xi = vec![(vec![1, 2], one.clone())];
        assert_eq!(lie_action_nambu(&abelian, &xi).unwrap(), mv(&c, &[1, 2]));
        // unsorted tuples pick up the permutation sign
        let xi_swapped = vec![(vec![2, 1], one.clone())];
        assert_eq!(lie_action_nambu(&abelian, &xi_swapped).unwrap(), mv(&c, &[1, 2]).neg());
        // aff(1): [h, e] = -e realized by h -> x3 D3 + D4, e -> D3
        let h = xterm(&c, x(&c, 3), &[3]).add(&mv(&c, &[4])).unwrap();
        let e = mv(&c, &[3]);
        let mut sc = vec![vec![vec![zero.clone(); 2]; 2]; 2];
        sc[0][1][1] = -one.clone();
        sc[1][0][1] = one.clone();
        let aff = LieAction::new(sc.clone(), vec![h.clone(), e.clone()]).unwrap();
        let lam = lie_action_nambu(&aff, &[(vec![1, 2], one.clone())]).unwrap();
        assert_eq!(lam, mv(&c, &[3, 4]).neg());
        // wrong structure constants are rejected
        let mut bad = sc;
        bad[0][1][1] = one.clone();
        bad[1][0][1] = -one;
        assert!(matches!(LieAction::new(bad, vec![h, e]), Err(Error::InvalidWitness(_))));
    }

    #[test]
    fn integrable_presentation_cases() {
        let c = ctx(4);
        let ls = vec![ns(mv(&c, &[1, 2])), ns(mv(&c, &[3]))];
        assert!(is_integrable_presentation(&ls, &[x(&c, 4)]).unwrap());
        // x3 is not a first integral of D3
        assert!(!is_integrable_presentation(&ls, &[x(&c, 3)]).unwrap());
        // dimension count failure
        assert!(!is_integrable_presentation(&ls, &[]).unwrap());
    }

    #[test]
    fn pair_classification() {
        let c = ctx(4);
        let low = CommutePair::classify(ns(mv(&c, &[1, 2])), ns(mv(&c, &[3, 4]))).unwrap();
        assert_eq!(low.regime(), Regime::Low);
        let degen = CommutePair::classify(ns(mv(&c, &[1, 2])), ns(mv(&c, &[1, 3]))).unwrap();
        assert_eq!(degen.regime(), Regime::Degenerate);
        let high =
            CommutePair::classify(ns(mv(&c, &[1, 2, 3])), ns(mv(&c, &[2, 3, 4]))).unwrap();
        assert_eq!(high.regime(), Regime::High);
        assert_eq!(high.first().order(), 3);
        assert_eq!(high.second().order(), 3);
    }
}

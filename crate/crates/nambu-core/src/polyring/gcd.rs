//! Exact multivariate gcd: recursive content/primitive-part split with a
//! subresultant pseudo-remainder sequence in the highest occurring variable.

use crate::error::{Error, Result};
use crate::polyring::poly::Polynomial;

/// Monic gcd of two polynomials. Errors when both inputs vanish.
pub fn gcd(a: &Polynomial, b: &Polynomial) -> Result<Polynomial> {
    a.context().check_same(b.context())?;
    if a.is_zero() && b.is_zero() {
        return Err(Error::ZeroInput("gcd of two zero polynomials"));
    }
    if a.is_zero() {
        return Ok(b.monic().1);
    }
    if b.is_zero() {
        return Ok(a.monic().1);
    }
    Ok(gcd_core(a, b)?.monic().1)
}

/// Monic gcd of a list; zero entries are ignored. Errors when all vanish.
pub fn gcd_list(polys: &[Polynomial]) -> Result<Polynomial> {
    let mut acc: Option<Polynomial> = None;
    for p in polys {
        if p.is_zero() {
            continue;
        }
        acc = Some(match acc {
            None => p.monic().1,
            Some(g) => {
                if g.is_one() {
                    return Ok(g);
                }
                gcd(&g, p)?
            }
        });
    }
    acc.ok_or(Error::ZeroInput("gcd of an all-zero list"))
}

fn gcd_core(a: &Polynomial, b: &Polynomial) -> Result<Polynomial> {
    let ctx = a.context().clone();
    let mut vars = a.vars_present();
    for v in b.vars_present() {
        if !vars.contains(&v) {
            vars.push(v);
        }
    }
    if vars.is_empty() {
        return Ok(Polynomial::one(&ctx));
    }
    let main = *vars.iter().max().unwrap();

    let coeffs_a = to_univariate(a, main);
    let coeffs_b = to_univariate(b, main);
    let cont_a = gcd_list(&coeffs_a)?;
    let cont_b = gcd_list(&coeffs_b)?;
    let pp_a = a.div_exact(&cont_a)?.expect("content divides");
    let pp_b = b.div_exact(&cont_b)?.expect("content divides");
    let cont_gcd = if cont_a.is_one() || cont_b.is_one() {
        Polynomial::one(&ctx)
    } else {
        gcd_core(&cont_a, &cont_b)?
    };

    let da = pp_a.degree_in(main);
    let db = pp_b.degree_in(main);
    if da == 0 || db == 0 {
        // A primitive part free of the main variable is a unit times 1.
        return Ok(cont_gcd);
    }
    let prim_gcd = if da >= db {
        subresultant_prs(&pp_a, &pp_b, main)?
    } else {
        subresultant_prs(&pp_b, &pp_a, main)?
    };
    cont_gcd.mul(&prim_gcd)
}

/// Gcd of two primitive polynomials in the variable `main`, itself returned
/// primitive with respect to `main`.
fn subresultant_prs(a: &Polynomial, b: &Polynomial, main: usize) -> Result<Polynomial> {
    let ctx = a.context().clone();
    let mut f = to_univariate(a, main);
    let mut g = to_univariate(b, main);
    let mut lead = Polynomial::one(&ctx);
    let mut h = Polynomial::one(&ctx);
    loop {
        let df = uni_degree(&f).expect("nonzero");
        let dg = uni_degree(&g).expect("nonzero");
        let delta = (df - dg) as u32;
        let rem = pseudo_rem(&f, &g)?;
        match uni_degree(&rem) {
            None => {
                let result = from_univariate(&g, main, &ctx)?;
                let cont = gcd_list(&g)?;
                return Ok(result.div_exact(&cont)?.expect("content divides"));
            }
            Some(0) => return Ok(Polynomial::one(&ctx)),
            Some(_) => {
                let divisor = lead.mul(&h.pow(delta)?)?;
                let reduced: Vec<Polynomial> = rem
                    .iter()
                    .map(|c| Ok(c.div_exact(&divisor)?.expect("subresultant division is exact")))
                    .collect::<Result<_>>()?;
                f = g;
                g = reduced;
                lead = f[uni_degree(&f).unwrap()].clone();
                if delta > 0 {
                    // h := lc^delta / h^(delta-1)
                    h = lead
                        .pow(delta)?
                        .div_exact(&h.pow(delta - 1)?)?
                        .expect("subresultant h-update is exact");
                }
            }
        }
    }
}

/// Coefficient list of `p` viewed as univariate in `main`; index = degree,
/// coefficients are polynomials free of `main`.
fn to_univariate(p: &Polynomial, main: usize) -> Vec<Polynomial> {
    let ctx = p.context();
    let deg = p.degree_in(main) as usize;
    let mut coeffs = vec![Polynomial::zero(ctx); deg + 1];
    for (m, c) in p.terms() {
        let e = m.exponents()[main - 1] as usize;
        let mut exps = m.exponents().to_vec();
        exps[main - 1] = 0;
        let t = Polynomial::monomial(ctx, &exps, c.clone());
        coeffs[e] = coeffs[e].add(&t).expect("same context");
    }
    coeffs
}

fn from_univariate(coeffs: &[Polynomial], main: usize, ctx: &Context) -> Result<Polynomial> {
    let x = Polynomial::var(ctx, main)?;
    let mut acc = Polynomial::zero(ctx);
    for (d, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        acc = acc.add(&c.mul(&x.pow(d as u32)?)?)?;
    }
    Ok(acc)
}

fn uni_degree(coeffs: &[Polynomial]) -> Option<usize> {
    coeffs.iter().rposition(|c| !c.is_zero())
}

/// Pseudo-remainder of `a` by `b` (both univariate coefficient lists):
/// the remainder of `lc(b)^(da-db+1) * a` divided by `b`.
fn pseudo_rem(a: &[Polynomial], b: &[Polynomial]) -> Result<Vec<Polynomial>> {
    let db = uni_degree(b).expect("nonzero divisor");
    let da = uni_degree(a).expect("nonzero dividend");
    debug_assert!(da >= db);
    let lcb = &b[db];
    let mut r: Vec<Polynomial> = a.to_vec();
    let mut e = (da - db + 1) as i64;
    while let Some(dr) = uni_degree(&r) {
        if dr < db {
            break;
        }
        let lcr = r[dr].clone();
        let shift = dr - db;
        let mut next = Vec::with_capacity(dr);
        for (i, item) in r.iter().enumerate().take(dr) {
            let mut v = item.mul(lcb)?;
            if i >= shift {
                v = v.sub(&lcr.mul(&b[i - shift])?)?;
            }
            next.push(v);
        }
        r = next;
        e -= 1;
    }
    if e > 0 {
        let factor = lcb.pow(e as u32)?;
        for c in &mut r {
            *c = c.mul(&factor)?;
        }
    }
    Ok(r)
}

use crate::context::Context;

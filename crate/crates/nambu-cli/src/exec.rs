use nambu_core::commute::{
    commute_degenerate, commute_family, commute_high, commute_low, is_integrable_presentation,
    lie_action_nambu, reduce, verify_normal_form, HighStep, HighWitness, LieAction,
};
use nambu_core::context::{Context, Point};
use nambu_core::error::{Error, Result};
use nambu_core::exterior::{
    apply_vector, contract, exterior_derivative, inverse_dual, lie_derivative,
    lie_derivative_form, pushforward, schouten, volume_dual, CoordinateMap, Form, MultiVector,
};
use nambu_core::nambu::{
    associated_nambu, hamiltonian, is_cit, is_first_integral, is_nambu, is_tangent_vector,
    mu_contains, primitive_part, singular_locus, NambuStructure,
};
use nambu_core::polyring::{Factorization, Polynomial, Rational};
use nambu_core::textio::{from_json, parse_poly, parse_value, to_json, to_text, Value};

use crate::args::{Command, MapArgs};

pub enum Outcome {
    Value(Value),
    Predicate { verdict: bool, witness: Option<serde_json::Value> },
    Record(Vec<(&'static str, String, serde_json::Value)>),
}

/// `--ctx 3` or `--ctx a,b,c`.
pub fn parse_context(spec: &str) -> Result<Context> {
    let trimmed = spec.trim();
    if !trimmed.is_empty() && trimmed.bytes().all(|b| b.is_ascii_digit()) {
        let n: usize = trimmed
            .parse()
            .map_err(|_| Error::Degree(format!("bad context dimension {trimmed:?}")))?;
        return Context::new(n);
    }
    Context::with_names(trimmed.split(',').map(|s| s.trim().to_string()).collect())
}

fn value(ctx: &Context, text: &str) -> Result<Value> {
    parse_value(text, ctx)
}

fn as_multivector(v: Value) -> Result<MultiVector> {
    match v {
        Value::MultiVector(m) => Ok(m),
        Value::Poly(p) => Ok(MultiVector::from_poly(&p)),
        Value::Form(_) => Err(Error::Degree("expected a multivector, found a form".into())),
    }
}

fn as_form(v: Value) -> Result<Form> {
    match v {
        Value::Form(w) => Ok(w),
        Value::Poly(p) => Ok(Form::from_poly(&p)),
        Value::MultiVector(_) => {
            Err(Error::Degree("expected a form, found a multivector".into()))
        }
    }
}

fn multivector(ctx: &Context, text: &str) -> Result<MultiVector> {
    as_multivector(value(ctx, text)?)
}

fn form_value(ctx: &Context, text: &str) -> Result<Form> {
    as_form(value(ctx, text)?)
}

fn structure(ctx: &Context, text: &str) -> Result<NambuStructure> {
    NambuStructure::validated(multivector(ctx, text)?)
}

fn poly_list(ctx: &Context, text: &str) -> Result<Vec<Polynomial>> {
    text.split(',').map(|part| parse_poly(part, ctx)).collect()
}

fn rational(ctx: &Context, text: &str) -> Result<Rational> {
    parse_poly(text, ctx)?
        .as_constant()
        .cloned()
        .ok_or_else(|| Error::Degree(format!("expected a rational constant, got {text:?}")))
}

fn point(ctx: &Context, text: &str) -> Result<Point> {
    let coords = text
        .split(',')
        .map(|part| rational(ctx, part))
        .collect::<Result<Vec<_>>>()?;
    Point::new(ctx.clone(), coords)
}

fn coordinate_map(ctx: &Context, forward: &str, inverse: &str) -> Result<CoordinateMap> {
    CoordinateMap::new(poly_list(ctx, forward)?, poly_list(ctx, inverse)?)
}

fn single_map(ctx: &Context, map: &MapArgs) -> Result<CoordinateMap> {
    if map.forward.len() != 1 || map.inverse.len() != 1 {
        return Err(Error::InvalidMap(
            "this subcommand takes exactly one --map-forward and one --map-inverse".into(),
        ));
    }
    coordinate_map(ctx, &map.forward[0], &map.inverse[0])
}

fn embed(v: &Value) -> serde_json::Value {
    serde_json::from_str(&to_json(v)).expect("canonical JSON is valid")
}

fn embed_poly(p: &Polynomial) -> serde_json::Value {
    embed(&Value::Poly(p.clone()))
}

fn embed_mv(m: &MultiVector) -> serde_json::Value {
    embed(&Value::MultiVector(m.clone()))
}

/// `poly` or `poly:multiplicity`.
fn factor_spec(ctx: &Context, text: &str) -> Result<(Polynomial, u32)> {
    let (poly_text, mult) = match text.rsplit_once(':') {
        Some((p, m)) => {
            let mult: u32 = m
                .trim()
                .parse()
                .map_err(|_| Error::InvalidFactorization(format!("bad multiplicity {m:?}")))?;
            (p, mult)
        }
        None => (text, 1),
    };
    Ok((parse_poly(poly_text, ctx)?, mult))
}

/// `a,b,c:value`
fn sc_spec(ctx: &Context, text: &str, dim: usize) -> Result<(usize, usize, usize, Rational)> {
    let (indices, val) = text.split_once(':').ok_or_else(|| {
        Error::InvalidWitness(format!("structure constant {text:?} lacks a ':value' part"))
    })?;
    let ix: Vec<usize> = indices
        .split(',')
        .map(|s| s.trim().parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::InvalidWitness(format!("bad generator indices in {text:?}")))?;
    let [a, b, c] = ix[..] else {
        return Err(Error::InvalidWitness(format!(
            "structure constant {text:?} needs exactly three indices"
        )));
    };
    for i in [a, b, c] {
        if i < 1 || i > dim {
            return Err(Error::IndexOutOfRange { index: i, n: dim });
        }
    }
    Ok((a, b, c, rational(ctx, val)?))
}

/// `a1,...,aq:value`
fn xi_spec(ctx: &Context, text: &str) -> Result<(Vec<usize>, Rational)> {
    let (indices, val) = text.split_once(':').ok_or_else(|| {
        Error::InvalidWitness(format!("wedge coefficient {text:?} lacks a ':value' part"))
    })?;
    let ix: Vec<usize> = indices
        .split(',')
        .map(|s| s.trim().parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::InvalidWitness(format!("bad generator indices in {text:?}")))?;
    Ok((ix, rational(ctx, val)?))
}

fn predicate(verdict: bool) -> Outcome {
    Outcome::Predicate { verdict, witness: None }
}

pub fn execute(cmd: &Command, ctx: &Context) -> Result<Outcome> {
    match cmd {
        Command::Bracket { a, b } => {
            let p = multivector(ctx, a)?;
            let q = multivector(ctx, b)?;
            Ok(Outcome::Value(Value::MultiVector(schouten(&p, &q)?)))
        }
        Command::Wedge { a, b } => {
            let va = value(ctx, a)?;
            let vb = value(ctx, b)?;
            let out = match (&va, &vb) {
                (Value::Poly(p), Value::Poly(q)) => Value::Poly(p.mul(q)?),
                (Value::Form(_), _) | (_, Value::Form(_)) => {
                    Value::Form(as_form(va)?.wedge(&as_form(vb)?)?)
                }
                _ => Value::MultiVector(as_multivector(va)?.wedge(&as_multivector(vb)?)?),
            };
            Ok(Outcome::Value(out))
        }
        Command::Contract { alpha, p } => {
            let a = form_value(ctx, alpha)?;
            let m = multivector(ctx, p)?;
            Ok(Outcome::Value(Value::MultiVector(contract(&a, &m)?)))
        }
        Command::Lie { x, t } => {
            let field = multivector(ctx, x)?;
            let out = match value(ctx, t)? {
                Value::Poly(f) => Value::Poly(apply_vector(&field, &f)?),
                Value::MultiVector(m) => Value::MultiVector(lie_derivative(&field, &m)?),
                Value::Form(w) => Value::Form(lie_derivative_form(&field, &w)?),
            };
            Ok(Outcome::Value(out))
        }
        Command::D { omega } => {
            let w = form_value(ctx, omega)?;
            Ok(Outcome::Value(Value::Form(exterior_derivative(&w)?)))
        }
        Command::Dual { value: v } => {
            let out = match value(ctx, v)? {
                Value::Form(w) => Value::MultiVector(inverse_dual(&w)),
                other => Value::Form(volume_dual(&as_multivector(other)?)),
            };
            Ok(Outcome::Value(out))
        }
        Command::Push { p, map } => {
            let m = multivector(ctx, p)?;
            let phi = single_map(ctx, map)?;
            Ok(Outcome::Value(Value::MultiVector(pushforward(&phi, &m)?)))
        }
        Command::IsNambu { p } => Ok(predicate(is_nambu(&multivector(ctx, p)?)?)),
        Command::Singular { p } => {
            let locus = singular_locus(&multivector(ctx, p)?)?;
            let gens_text = locus
                .generators
                .iter()
                .map(|g| g.to_string())
                .collect::<Vec<_>>()
                .join(", ");
            let gens_json =
                serde_json::Value::Array(locus.generators.iter().map(embed_poly).collect());
            Ok(Outcome::Record(vec![
                ("generators", gens_text, gens_json),
                ("gcd", locus.gcd.to_string(), embed_poly(&locus.gcd)),
                (
                    "codim_one",
                    locus.codim_one.to_string(),
                    serde_json::Value::Bool(locus.codim_one),
                ),
            ]))
        }
        Command::Primitive { p } => {
            let (g, prim) = primitive_part(&multivector(ctx, p)?)?;
            Ok(Outcome::Record(vec![
                ("gcd", g.to_string(), embed_poly(&g)),
                ("primitive", prim.to_string(), embed_mv(&prim)),
            ]))
        }
        Command::Tangent { x, l } => {
            let field = multivector(ctx, x)?;
            let lam = multivector(ctx, l)?;
            Ok(predicate(is_tangent_vector(&field, &lam)?))
        }
        Command::Cit { x, l } => {
            let field = multivector(ctx, x)?;
            let lam = multivector(ctx, l)?;
            Ok(match is_cit(&field, &lam)? {
                Some(factor) => Outcome::Predicate {
                    verdict: true,
                    witness: Some(embed_poly(&factor)),
                },
                None => predicate(false),
            })
        }
        Command::Hamiltonian { l, fs } => {
            let lam = multivector(ctx, l)?;
            let funcs = fs
                .iter()
                .map(|f| parse_poly(f, ctx))
                .collect::<Result<Vec<_>>>()?;
            Ok(Outcome::Value(Value::MultiVector(hamiltonian(&lam, &funcs)?)))
        }
        Command::Mu { f, l } => {
            let func = parse_poly(f, ctx)?;
            let lam = multivector(ctx, l)?;
            let verdict = mu_contains(&func, &lam)?;
            let witness = verdict.witness.as_ref().map(|w| {
                serde_json::json!({
                    "field": embed_mv(&w.field),
                    "derivative": embed_poly(&w.derivative),
                })
            });
            Ok(Outcome::Predicate { verdict: verdict.member, witness })
        }
        Command::Associated { l, factors } => {
            let lam = multivector(ctx, l)?;
            let parsed = factors
                .iter()
                .map(|f| factor_spec(ctx, f))
                .collect::<Result<Vec<_>>>()?;
            // the unit is pinned by exact division of the gcd
            let (g, _) = primitive_part(&lam)?;
            let mut product = Polynomial::one(ctx);
            for (p, m) in &parsed {
                product = product.mul(&p.pow(*m)?)?;
            }
            let unit = g
                .div_exact(&product)?
                .and_then(|q| q.as_constant().cloned())
                .ok_or_else(|| {
                    Error::InvalidFactorization(
                        "factors do not multiply to the coefficient gcd".into(),
                    )
                })?;
            let fact = Factorization::new(unit, parsed);
            Ok(Outcome::Value(Value::MultiVector(associated_nambu(&lam, &fact)?)))
        }
        Command::FirstIntegral { f, l } => {
            let func = parse_poly(f, ctx)?;
            let lam = multivector(ctx, l)?;
            Ok(predicate(is_first_integral(&func, &lam)?))
        }
        Command::Reduce { l, k } => {
            let lam = multivector(ctx, l)?;
            Ok(Outcome::Value(Value::MultiVector(reduce(&lam, *k)?)))
        }
        Command::Commute { l1, l2 } => {
            let a = structure(ctx, l1)?;
            let b = structure(ctx, l2)?;
            Ok(predicate(commute_low(&a, &b)?))
        }
        Command::CommuteFamily { ls } => {
            let fam = ls
                .iter()
                .map(|l| structure(ctx, l))
                .collect::<Result<Vec<_>>>()?;
            Ok(predicate(commute_family(&fam)?))
        }
        Command::CommuteHigh { l1, l2, witness_x, map, point: pt } => {
            let a = structure(ctx, l1)?;
            let b = structure(ctx, l2)?;
            if map.forward.len() != witness_x.len() || map.inverse.len() != witness_x.len() {
                return Err(Error::InvalidWitness(format!(
                    "{} chain fields but {} forward and {} inverse maps",
                    witness_x.len(),
                    map.forward.len(),
                    map.inverse.len()
                )));
            }
            // later steps parse against the successively reduced charts
            let mut chain = Vec::new();
            let mut step_ctx = ctx.clone();
            for i in 0..witness_x.len() {
                let field = multivector(&step_ctx, &witness_x[i])?;
                let phi = coordinate_map(&step_ctx, &map.forward[i], &map.inverse[i])?;
                chain.push(HighStep { field, map: phi });
                if i + 1 < witness_x.len() {
                    step_ctx = step_ctx.drop_leading(1)?;
                }
            }
            let witness = HighWitness { chain, point: point(ctx, pt)? };
            Ok(predicate(commute_high(&a, &b, &witness)?))
        }
        Command::CommuteDegenerate { l1, l2, k, map, points } => {
            let a = structure(ctx, l1)?;
            let b = structure(ctx, l2)?;
            let phi = single_map(ctx, map)?;
            let samples = points
                .iter()
                .map(|p| point(ctx, p))
                .collect::<Result<Vec<_>>>()?;
            Ok(predicate(commute_degenerate(&a, &b, *k, &phi, &samples)?))
        }
        Command::NormalForm { l1, l2, map } => {
            let a = structure(ctx, l1)?;
            let b = structure(ctx, l2)?;
            let phi = single_map(ctx, map)?;
            Ok(predicate(verify_normal_form(&a, &b, &phi)?))
        }
        Command::LieAction { images, structure_constants, xi } => {
            let imgs = images
                .iter()
                .map(|i| multivector(ctx, i))
                .collect::<Result<Vec<_>>>()?;
            let d = imgs.len();
            let zero = Rational::from_integer(0.into());
            let mut sc = vec![vec![vec![zero; d]; d]; d];
            for spec in structure_constants {
                let (a, b, c, v) = sc_spec(ctx, spec, d)?;
                sc[a - 1][b - 1][c - 1] = v.clone();
                sc[b - 1][a - 1][c - 1] = -v;
            }
            let action = LieAction::new(sc, imgs)?;
            let coeffs = xi
                .iter()
                .map(|s| xi_spec(ctx, s))
                .collect::<Result<Vec<_>>>()?;
            Ok(Outcome::Value(Value::MultiVector(lie_action_nambu(&action, &coeffs)?)))
        }
        Command::Integrable { structures, integrals } => {
            let ls = structures
                .iter()
                .map(|l| structure(ctx, l))
                .collect::<Result<Vec<_>>>()?;
            let fs = integrals
                .iter()
                .map(|f| parse_poly(f, ctx))
                .collect::<Result<Vec<_>>>()?;
            Ok(predicate(is_integrable_presentation(&ls, &fs)?))
        }
        Command::Fmt { expr, from_json: decode } => {
            let v = if *decode {
                let v = from_json(expr)?;
                let found = match &v {
                    Value::Poly(p) => p.context().clone(),
                    Value::MultiVector(m) => m.context().clone(),
                    Value::Form(w) => w.context().clone(),
                };
                if &found != ctx {
                    return Err(Error::ContextMismatch);
                }
                v
            } else {
                value(ctx, expr)?
            };
            Ok(Outcome::Value(v))
        }
    }
}

/// Renders an outcome and picks the exit code.
pub fn render(outcome: &Outcome, json: bool) -> (String, i32) {
    match outcome {
        Outcome::Value(v) => {
            let text = if json {
                serde_json::json!({ "result": embed(v) }).to_string()
            } else {
                to_text(v)
            };
            (text, 0)
        }
        Outcome::Predicate { verdict, witness } => {
            let text = if json {
                let mut obj = serde_json::Map::new();
                obj.insert("verdict".into(), serde_json::Value::Bool(*verdict));
                if let Some(w) = witness {
                    obj.insert("witness".into(), w.clone());
                }
                serde_json::Value::Object(obj).to_string()
            } else {
                verdict.to_string()
            };
            (text, if *verdict { 0 } else { 1 })
        }
        Outcome::Record(fields) => {
            let text = if json {
                let mut obj = serde_json::Map::new();
                for (name, _, value) in fields {
                    obj.insert((*name).into(), value.clone());
                }
                serde_json::json!({ "result": serde_json::Value::Object(obj) }).to_string()
            } else {
                fields
                    .iter()
                    .map(|(name, text, _)| format!("{name}: {text}"))
                    .collect::<Vec<_>>()
                    .join("\n")
            };
            (text, 0)
        }
    }
}

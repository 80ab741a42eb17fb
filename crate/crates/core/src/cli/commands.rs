//! Single-object commands.

use serde_json::{json, Value};

use crate::arith::rational::to_pq;
use crate::arith::{Order, Point, Rational};
use crate::basis::{kn_pairing, make_basis, BasisIndex, FormElement, KNExpansion};
use crate::casimir::casimir_solve;
use crate::cli::config::{parse_config_fn, JobConfig};
use crate::cocycles::GeometricCocycle;
use crate::error::{Error, Result};
use crate::structure::{KnAlgebra, StructureTable, TableKind};
use crate::sugawara::SugawaraContext;
use crate::wedge::{wedge_apply, WedgeVector};

pub fn q(x: &Rational) -> Value {
    Value::String(to_pq(x))
}

pub fn index_json(i: &BasisIndex) -> Value {
    json!({ "weight": i.weight, "degree": i.degree, "puncture": i.puncture })
}

pub fn expansion_json(e: &KNExpansion) -> Value {
    Value::Array(
        e.iter()
            .map(|(i, c)| json!({ "degree": i.degree, "puncture": i.puncture, "coefficient": q(c) }))
            .collect(),
    )
}

pub fn vector_json(v: &WedgeVector) -> Value {
    Value::Array(
        v.iter()
            .map(|(m, c)| {
                json!({
                    "charge": m.charge(),
                    "prefix": m.prefix(),
                    "tail_start": m.tail_start(),
                    "degree": m.degree(),
                    "coefficient": q(c),
                })
            })
            .collect(),
    )
}

fn order_json(o: Order) -> Value {
    match o {
        Order::Finite(k) => json!(k),
        Order::Infinity => json!("inf"),
    }
}

fn form_from(cfg: &JobConfig, s: &Option<String>, w: Option<i64>, default_w: i64) -> Result<Option<FormElement>> {
    let Some(s) = s else { return Ok(None) };
    let geom = cfg.geometry()?;
    Ok(Some(FormElement::from_rational_function(&parse_config_fn(s)?, w.unwrap_or(default_w), &geom)?))
}

/// Every `f^λ_{n,p}` in the window with its order table.
pub fn basis(cfg: &JobConfig) -> Result<Value> {
    let geom = cfg.geometry()?;
    let (lo, hi) = cfg.window();
    let mut out = Vec::new();
    for n in lo..=hi {
        for p in 1..=geom.num_punctures() {
            let f = make_basis(&geom, cfg.weight, n, p)?;
            let orders: Vec<Value> = geom
                .punctures()
                .iter()
                .map(|a| order_json(f.order_at(&Point::Finite(a.clone()))))
                .collect();
            out.push(json!({
                "degree": n,
                "puncture": p,
                "function": f.to_rational_function().to_string(),
                "orders": orders,
                "order_at_infinity": order_json(f.order_at_infinity()),
            }));
        }
    }
    Ok(json!({ "weight": cfg.weight, "elements": out }))
}

/// Pairing of `args.f`, `args.g`, or the duality table of the window.
pub fn pair(cfg: &JobConfig) -> Result<Value> {
    if let (Some(f), Some(g)) = (
        form_from(cfg, &cfg.args.f, cfg.args.f_weight, cfg.weight)?,
        form_from(cfg, &cfg.args.g, cfg.args.g_weight, 1 - cfg.weight)?,
    ) {
        return Ok(json!({ "pairing": q(&kn_pairing(&f, &g)?) }));
    }
    let geom = cfg.geometry()?;
    let (lo, hi) = cfg.window();
    let mut rows = Vec::new();
    for n in lo..=hi {
        for p in 1..=geom.num_punctures() {
            for m in lo..=hi {
                for r in 1..=geom.num_punctures() {
                    let v = kn_pairing(&make_basis(&geom, cfg.weight, n, p)?, &make_basis(&geom, 1 - cfg.weight, -m, r)?)?;
                    rows.push(json!({ "n": n, "p": p, "m": m, "r": r, "value": q(&v) }));
                }
            }
        }
    }
    Ok(json!({ "weight": cfg.weight, "pairings": rows }))
}

fn table(cfg: &JobConfig, kind: TableKind) -> Result<Value> {
    let alg = KnAlgebra::new(cfg.geometry()?);
    let t = StructureTable::build(&alg, kind, cfg.window())?;
    let entries: Vec<Value> = t
        .entries
        .iter()
        .map(|((a, b), e)| json!({ "lhs": index_json(a), "rhs": index_json(b), "result": expansion_json(e) }))
        .collect();
    Ok(json!({ "kind": kind.name(), "measured_bound": t.measured_bound, "entries": entries }))
}

fn binary(cfg: &JobConfig, kind: TableKind, w: i64, op: impl Fn(&FormElement, &FormElement) -> Result<KNExpansion>) -> Result<Value> {
    match (form_from(cfg, &cfg.args.f, cfg.args.f_weight, w)?, form_from(cfg, &cfg.args.g, cfg.args.g_weight, w)?) {
        (Some(f), Some(g)) => Ok(json!({ "result": expansion_json(&op(&f, &g)?) })),
        _ => table(cfg, kind),
    }
}

pub fn mult(cfg: &JobConfig) -> Result<Value> {
    binary(cfg, TableKind::FunctionProduct, 0, crate::structure::multiply)
}

pub fn bracket(cfg: &JobConfig) -> Result<Value> {
    binary(cfg, TableKind::VectorBracket, -1, crate::structure::bracket)
}

/// `function`, `vector_field` or `mixing` cocycle of the config.
pub fn cocycle_of(cfg: &JobConfig, kind: &str) -> Result<(GeometricCocycle, (i64, i64))> {
    let geom = cfg.geometry()?;
    let (base, weights) = match kind {
        "function" => (GeometricCocycle::function(&geom), (0, 0)),
        "vector_field" => (GeometricCocycle::vector_field(&geom), (-1, -1)),
        "mixing" => (GeometricCocycle::mixing(&geom), (-1, 0)),
        k => return Err(Error::Config(format!("unknown cocycle kind `{k}`"))),
    };
    Ok((base.with_connections(cfg.projective(&geom)?, cfg.affine(&geom)?), weights))
}

pub fn cocycle_table(cfg: &JobConfig) -> Result<Value> {
    let kind = cfg.args.kind.clone().unwrap_or_else(|| "vector_field".into());
    let (gam, (w1, w2)) = cocycle_of(cfg, &kind)?;
    let geom = cfg.geometry()?;
    let (lo, hi) = cfg.window();
    let mut rows = Vec::new();
    for n in lo..=hi {
        for p in 1..=geom.num_punctures() {
            for m in lo..=hi {
                for r in 1..=geom.num_punctures() {
                    let x = BasisIndex::new(w1, n, p);
                    let y = BasisIndex::new(w2, m, r);
                    let v = gam.eval_basis(&geom, x, y)?;
                    rows.push(json!({ "x": index_json(&x), "y": index_json(&y), "value": q(&v) }));
                }
            }
        }
    }
    Ok(json!({ "kind": kind, "entries": rows }))
}

/// Current `args.matrix ⊗ A_{degree,puncture}` or, without a matrix, the
/// field `e_{degree,puncture}`, applied to `args.vector`.
pub fn wedge_act(cfg: &JobConfig) -> Result<Value> {
    let module = cfg.module()?;
    let n = cfg.args.degree.unwrap_or(0);
    let p = cfg.args.puncture.unwrap_or(1);
    let v = cfg.vector()?;
    let op = match cfg.matrix()? {
        Some(x) => module.current_operator(&x, &KNExpansion::basis(BasisIndex::new(0, n, p)))?,
        None => module.field_operator(&KNExpansion::basis(BasisIndex::new(-1, n, p)))?,
    };
    let out = wedge_apply(&op, &v)?;
    Ok(json!({ "input": vector_json(&v), "output": vector_json(&out) }))
}

/// `L*_{k,r}` on `args.vector` at the level read off the module.
pub fn sugawara(cfg: &JobConfig) -> Result<Value> {
    let ctx = SugawaraContext::from_module(cfg.module()?)?;
    let k = cfg.args.k.unwrap_or(0);
    let r = cfg.args.r.unwrap_or(1);
    let v = cfg.vector()?;
    let out = ctx.apply_sugawara(k, r, &v)?;
    let parts: Vec<Value> = ctx
        .parts()
        .iter()
        .map(|p| json!({ "name": p.name, "level": q(&p.level), "kappa": q(&p.kappa) }))
        .collect();
    Ok(json!({ "k": k, "r": r, "parts": parts, "input": vector_json(&v), "output": vector_json(&out) }))
}

/// Kernel of the mixing-cocycle system on the window.
pub fn casimir(cfg: &JobConfig) -> Result<Value> {
    let (gam, _) = cocycle_of(cfg, "mixing")?;
    let geom = cfg.geometry()?;
    let g = |e: BasisIndex, a: BasisIndex| gam.eval_basis(&geom, e, a);
    let rep = casimir_solve(&g, geom.num_punctures(), cfg.window())?;
    Ok(json!({
        "window": cfg.window,
        "diagonal": rep.diagonal.iter().map(|(k, d)| json!({ "k": k, "value": q(d) })).collect::<Vec<_>>(),
        "genericity_failures": rep.genericity_failures,
        "kernel_dimension": rep.basis.len(),
        "basis": rep.basis.iter().map(|c| expansion_json(&c.coefficients)).collect::<Vec<_>>(),
    }))
}

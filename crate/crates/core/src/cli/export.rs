//! Deterministic table exports.

use serde_json::{json, Value};

use crate::cli::commands::{casimir, cocycle_table, expansion_json, index_json, q};
use crate::cli::config::JobConfig;
use crate::error::{Error, Result};
use crate::structure::{KnAlgebra, StructureTable, TableKind};
use crate::sugawara::{sugawara_coeff, sugawara_support};

pub const TARGETS: [&str; 4] = ["structure-table", "cocycle-table", "sugawara-coeffs", "casimir-basis"];

pub fn export(cfg: &JobConfig, what: &str) -> Result<Value> {
    match what {
        "structure-table" => structure_table(cfg),
        "cocycle-table" => cocycle_table(cfg),
        "sugawara-coeffs" => sugawara_coeffs(cfg),
        "casimir-basis" => casimir(cfg),
        w => Err(Error::Config(format!("unknown export target `{w}`"))),
    }
}

fn structure_table(cfg: &JobConfig) -> Result<Value> {
    let kind = match &cfg.args.kind {
        Some(k) => TableKind::parse(k)?,
        None => TableKind::FunctionProduct,
    };
    let alg = KnAlgebra::new(cfg.geometry()?);
    let t = StructureTable::build(&alg, kind, cfg.window())?;
    let entries: Vec<Value> = t
        .entries
        .iter()
        .map(|((a, b), e)| json!({ "lhs": index_json(a), "rhs": index_json(b), "result": expansion_json(e) }))
        .collect();
    Ok(json!({ "kind": kind.name(), "window": cfg.window, "measured_bound": t.measured_bound, "entries": entries }))
}

/// Nonzero `l_{(n,p),(m,s)}^{(k,r)}` for `k` and `n` in the window.
fn sugawara_coeffs(cfg: &JobConfig) -> Result<Value> {
    let geom = cfg.geometry()?;
    let np = geom.num_punctures();
    let s_max = sugawara_support(np);
    let (lo, hi) = cfg.window();
    let mut rows = Vec::new();
    for k in lo..=hi {
        for r in 1..=np {
            for n in lo..=hi {
                for m in k - n..=k - n + s_max {
                    for p in 1..=np {
                        for s in 1..=np {
                            let c = sugawara_coeff(&geom, k, r, n, p, m, s)?;
                            if !num_traits::Zero::is_zero(&c) {
                                rows.push(json!({ "k": k, "r": r, "n": n, "p": p, "m": m, "s": s, "value": q(&c) }));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(json!({ "support": s_max, "window": cfg.window, "coefficients": rows }))
}

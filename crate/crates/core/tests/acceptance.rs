mod common;

use std::sync::Arc;
use std::time::Instant;

use kn_algebra::affine::AlgebraTag;
use kn_algebra::arith::{int, rat, Rational};
use kn_algebra::basis::{BasisIndex, Geometry, KNExpansion};
use kn_algebra::casimir::{casimir_solve, gamma_extend, CandidateKind, CasimirCandidate, CheckStatus};
use kn_algebra::cli::config::JobConfig;
use kn_algebra::cli::verify::{
    affine_jacobi, classical, cocycle_identity, connection_shift, current_cocycle, duality_for, fundamental, locality, pairwise,
    sample_vectors, semi_casimir, Record,
};
use kn_algebra::cocycles::GeometricCocycle;
use kn_algebra::error::Result;
use kn_algebra::structure::KnAlgebra;
use kn_algebra::sugawara::SugawaraContext;
use kn_algebra::wedge::{partitions, FermionModule, RepresentationData, WedgeMonomial, WedgeVector};

const POINTS: [&[&str]; 3] = [&["0"], &["0", "1"], &["0", "1", "-1/2"]];

fn config(n: usize, algebra: &str, window: (i64, i64)) -> JobConfig {
    JobConfig {
        punctures: POINTS[n - 1].iter().map(|s| s.to_string()).collect(),
        algebra: algebra.into(),
        window: [window.0, window.1],
        ..JobConfig::default()
    }
}

fn module(n: usize, tag: AlgebraTag, l: usize) -> Result<Arc<FermionModule>> {
    let alg = Arc::new(KnAlgebra::new(config(n, "gl1", (0, 0)).geometry()?));
    Ok(Arc::new(FermionModule::new(alg, RepresentationData::fundamental(tag, l, 1)?)?))
}

/// Collects records, failing on the first non-passing one.
fn all_pass(records: impl IntoIterator<Item = Result<Record>>) -> Result<(bool, String)> {
    let mut n = 0;
    for r in records {
        let r = r?;
        if r.status != CheckStatus::Pass {
            return Ok((false, format!("{}: {} {}", r.name, r.status, r.witness)));
        }
        n += 1;
    }
    Ok((true, format!("{n} checks")))
}

fn duality() -> Result<(bool, String)> {
    let mut recs = Vec::new();
    for n in 1..=3 {
        for w in [-1, 0, 1, 2] {
            recs.push(duality_for(&config(n, "gl1", (-8, 8)), w));
        }
    }
    all_pass(recs)
}

fn classical_recovery() -> Result<(bool, String)> {
    all_pass([classical(&config(1, "gl1", (-8, 8)))])
}

fn cocycle_values() -> Result<(bool, String)> {
    let g = Geometry::standard(1);
    let pts = common::points(&[0]);
    let cases = [
        (GeometricCocycle::function(&g), 0, 0),
        (GeometricCocycle::vector_field(&g), -1, -1),
        (GeometricCocycle::mixing(&g), -1, 0),
    ];
    let mut checked = 0;
    for (kind, (gam, wa, wb)) in cases.iter().enumerate() {
        for n in -6..=6 {
            for m in -6..=6 {
                let d = if n + m == 0 { 1 } else { 0 };
                let (fa, fb) = (common::Form::basis(&pts, *wa, n, 1), common::Form::basis(&pts, *wb, m, 1));
                let (closed, oracle) = match kind {
                    0 => (int(m * d), common::gamma_a(&fa, &fb)),
                    1 => (int((n * n * n - n) * d), common::gamma_l(&fa, &fb)),
                    _ => (int(n * (n + 1) * d), common::gamma_m(&fa, &fb)),
                };
                let got = gam.eval_basis(&g, BasisIndex::new(*wa, n, 1), BasisIndex::new(*wb, m, 1))?;
                if got != closed || got != oracle {
                    return Ok((false, format!("cocycle {kind} at ({n},{m}): {got} vs {closed} vs {oracle}")));
                }
                checked += 1;
            }
        }
    }
    Ok((true, format!("{checked} values against closed forms and residue oracle")))
}

fn identity_and_locality() -> Result<(bool, String)> {
    let mut recs = Vec::new();
    for n in 1..=2 {
        for kind in ["function", "vector_field", "mixing"] {
            recs.push(cocycle_identity(&config(n, "gl1", (-4, 4)), kind, 100));
            recs.push(locality(&config(n, "gl1", (-8, 8)), kind));
        }
    }
    let recs: Vec<Result<Record>> = recs.into_iter().collect();
    let windows: Vec<String> = recs.iter().filter_map(|r| r.as_ref().ok()).filter(|r| r.name.starts_with("locality")).map(|r| r.witness.clone()).collect();
    let (ok, w) = all_pass(recs)?;
    Ok((ok, format!("{w}; windows {}", windows.join(", "))))
}

fn connection_independence() -> Result<(bool, String)> {
    let mut recs = Vec::new();
    for n in 1..=2 {
        let cfg = config(n, "gl1", (-3, 3));
        recs.push(connection_shift(&cfg, "vector_field", "3"));
        recs.push(connection_shift(&cfg, "mixing", "2"));
        let moved = JobConfig { projective_connection: "1".into(), affine_connection: "-1/3".into(), ..cfg };
        recs.push(connection_shift(&moved, "vector_field", "5/2"));
        recs.push(connection_shift(&moved, "mixing", "7"));
    }
    all_pass(recs)
}

fn affine_jacobi_all() -> Result<(bool, String)> {
    let mut recs = Vec::new();
    for n in 1..=2 {
        for a in ["gl1", "sl2", "gl2"] {
            recs.push(affine_jacobi(&config(n, a, (-3, 3)), 100));
        }
    }
    all_pass(recs)
}

fn wedge_cocycle() -> Result<(bool, String)> {
    let mut recs = Vec::new();
    for n in 1..=2 {
        for (tag, l) in [(AlgebraTag::GL1, 1), (AlgebraTag::SL, 2)] {
            recs.push(module(n, tag, l).and_then(|m| current_cocycle(&m, (-5, 5), 0)));
        }
    }
    let alphas: Vec<String> = recs.iter().filter_map(|r| r.as_ref().ok()).map(|r| r.witness.clone()).collect();
    let (ok, w) = all_pass(recs)?;
    Ok((ok, format!("{w}; {}", alphas.join(", "))))
}

/// Brute force over occupancy patterns inside `[-7, 7)`.
fn degree_bound() -> Result<(bool, String)> {
    let lo = -7i64;
    let width = 14;
    let mut counts = [0usize; 7];
    for mask in 0u32..(1 << width) {
        let occ: Vec<i64> = (0..width).filter(|b| mask & (1 << b) != 0).map(|b| lo + b as i64).collect();
        if occ.len() as i64 != 7 {
            continue;
        }
        let m = WedgeMonomial::new(0, occ)?;
        let d = m.degree();
        if d > 0 {
            return Ok((false, format!("{m} has degree {d}")));
        }
        if d >= -6 {
            counts[(-d) as usize] += 1;
        }
    }
    let want: Vec<usize> = (0..=6).map(|d| partitions(d).len()).collect();
    let listed: Vec<usize> = (0..=6).map(|d| WedgeMonomial::enumerate(0, 6).iter().filter(|m| m.degree() == -d).count()).collect();
    Ok((counts.to_vec() == want && listed == want, format!("counts {counts:?}")))
}

fn fundamental_relation() -> Result<(bool, String)> {
    let samples = sample_vectors(0, 6);
    let mut recs = Vec::new();
    for n in 1..=2 {
        for (tag, l) in [(AlgebraTag::GL1, 1), (AlgebraTag::SL, 2)] {
            let ctx = SugawaraContext::from_module(module(n, tag, l)?)?;
            recs.push(fundamental(&ctx, (-2, 2), (-3, 3), &samples));
        }
    }
    let (ok, w) = all_pass(recs)?;
    Ok((ok, format!("{w} on {} vectors", samples.len())))
}

fn casimir_solver() -> Result<(bool, String)> {
    let synthetic = |e: BasisIndex, a: BasisIndex| -> Result<Rational> {
        let (m, k) = (e.degree, -a.degree);
        Ok(if m == k {
            int(k * k + 1)
        } else if m < k && k - m <= 2 {
            int(m - 2 * k)
        } else {
            int(0)
        })
    };
    let rep = casimir_solve(&synthetic, 1, (-6, 6))?;
    let one_dim = rep.basis.len() == 1 && rep.genericity_failures.is_empty();
    let non_negative = rep.basis.iter().all(|c| c.coefficients.iter().all(|(i, _)| i.degree >= 0));
    let g = Geometry::standard(1);
    let gam = GeometricCocycle::mixing(&g);
    let mix = |e: BasisIndex, a: BasisIndex| gam.eval_basis(&g, e, a);
    let rep = casimir_solve(&mix, 1, (-6, 6))?;
    let diag = rep.diagonal.iter().all(|(k, d)| *d == int(k * (k + 1)));
    let ok = one_dim && non_negative && diag && rep.genericity_failures == vec![-1] && rep.basis.len() == 2;
    Ok((ok, format!("synthetic kernel 1, mixing kernel {}, failures {:?}", rep.basis.len(), rep.genericity_failures)))
}

fn gamma_candidates(n_max: i64) -> Result<Vec<CasimirCandidate>> {
    let g = Geometry::standard(1);
    let gam = GeometricCocycle::mixing(&g);
    let mix = |e: BasisIndex, a: BasisIndex| gam.eval_basis(&g, e, a);
    let seeds = [vec![(0, int(1))], vec![(-1, int(1))], vec![(-2, int(1))], vec![(0, int(1)), (-1, rat(-3, 2))]];
    seeds
        .into_iter()
        .map(|s| gamma_extend(&KNExpansion::from_terms(-1, s.into_iter().map(|(d, c)| ((d, 1), c))), &mix, 1, n_max, 0))
        .collect()
}

fn semi_casimir_property() -> Result<(bool, String)> {
    let samples = sample_vectors(0, 5);
    let cands = gamma_candidates(24)?;
    let mut recs = Vec::new();
    for (tag, l) in [(AlgebraTag::GL1, 1), (AlgebraTag::GL, 2)] {
        let ctx = SugawaraContext::from_module(module(1, tag, l)?)?;
        recs.push(semi_casimir(&ctx, &cands, (-4, 4), &samples));
    }
    let exact = cands.iter().all(|c| c.exact);
    let (ok, w) = all_pass(recs)?;
    Ok((ok, format!("{w}, candidates exact: {exact}")))
}

fn pairwise_scalar() -> Result<(bool, String)> {
    let ctx = SugawaraContext::from_module(module(1, AlgebraTag::GL1, 1)?)?;
    let set_a = sample_vectors(0, 6);
    let set_b: Vec<WedgeVector> = sample_vectors(0, 8).into_iter().filter(|v| v.degree_range().map_or(false, |r| r.1 < -6)).collect();
    let field = |d: i64| CasimirCandidate::exact(KNExpansion::basis(BasisIndex::new(-1, d, 1)), CandidateKind::Casimir);
    let gamma0 = gamma_candidates(24)?.remove(0);
    let pairs = [(field(2), field(-2)), (gamma0, field(1)), (field(-1), field(1)), (field(3), field(3))];
    let mut notes = Vec::new();
    for (e, f) in &pairs {
        let r = pairwise(&ctx, e, f, &[set_a.clone(), set_b.clone()])?;
        if r.status != CheckStatus::Pass {
            return Ok((false, format!("{} {}", r.status, r.witness)));
        }
        notes.push(r.witness.split(" on ").next().unwrap_or("").to_string());
    }
    let disjoint = set_a.iter().all(|v| !set_b.contains(v));
    Ok((disjoint && set_a.len() >= 20 && set_b.len() >= 20, format!("sets of {} and {}; {}", set_a.len(), set_b.len(), notes.join(", "))))
}

fn main() {
    let criteria: [(&str, fn() -> Result<(bool, String)>); 12] = [
        ("duality", duality),
        ("classical recovery", classical_recovery),
        ("cocycle values", cocycle_values),
        ("cocycle identity and locality", identity_and_locality),
        ("connection independence", connection_independence),
        ("affine jacobi", affine_jacobi_all),
        ("wedge cocycle", wedge_cocycle),
        ("degree bound", degree_bound),
        ("fundamental sugawara relation", fundamental_relation),
        ("casimir solver", casimir_solver),
        ("semi-casimir property", semi_casimir_property),
        ("pairwise scalar commutator", pairwise_scalar),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let (ok, detail) = f().unwrap_or_else(|e| (false, format!("error: {e}")));
        if !ok {
            failed += 1;
        }
        println!("{} {:>2} {name}: {detail} [{:.1}s]", if ok { "PASS" } else { "FAIL" }, i + 1, t.elapsed().as_secs_f64());
    }
    if failed > 0 {
        std::process::exit(1);
    }
}

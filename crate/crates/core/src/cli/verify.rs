//! Verification suites over a job configuration.

use std::sync::Arc;

use num_traits::{One, Zero};
use rand::Rng;
use serde::Serialize;

use crate::affine::{jacobi_sum, AffineElement, AlgebraTag, BilinearForm, CurrentElement, DgElement, Matrix};
use crate::arith::rational::to_pq;
use crate::arith::{int, Rational};
use crate::basis::{kn_pairing, make_basis, BasisIndex, Geometry, KNExpansion};
use crate::casimir::{
    casimir_solve, check_delta_commutation, check_pairwise_scalar, gamma_extend, mixing_level, CandidateKind, CasimirCandidate,
    CheckReport, CheckStatus,
};
use crate::cli::commands::cocycle_of;
use crate::cli::config::{parse_config_fn, JobConfig};
use crate::cocycles::{
    basis_bracket, check_cocycle_identity, check_locality, coboundary_equivalent, find_coboundary, AffineConnection, GeometricCocycle,
    ProjectiveConnection,
};
use crate::error::{Error, Result};
use crate::sample;
use crate::structure::{closure_check, measure_bounds, AlmostGradingBounds, KnAlgebra, Part, SplitVariant, StructureTable, TableKind};
use crate::sugawara::{sl_basis, sugawara_support, SugawaraContext};
use crate::wedge::{partitions, FermionModule, WedgeMonomial, WedgeVector};

pub const SUITES: [&str; 7] = ["duality", "structure", "cocycles", "affine", "wedge", "sugawara", "casimir"];

#[derive(Clone, Debug, Serialize)]
pub struct Record {
    pub name: String,
    pub status: CheckStatus,
    pub witness: String,
}

impl Record {
    pub fn new(name: impl Into<String>, status: CheckStatus, witness: impl Into<String>) -> Self {
        Record { name: name.into(), status, witness: witness.into() }
    }

    pub fn check(name: impl Into<String>, ok: bool, witness: impl Into<String>) -> Self {
        Self::new(name, if ok { CheckStatus::Pass } else { CheckStatus::Fail }, witness)
    }

    fn from_report(name: impl Into<String>, r: CheckReport) -> Self {
        Self::new(name, r.status, r.witness)
    }

    fn from_result(name: &str, r: Result<Record>) -> Self {
        r.unwrap_or_else(|e| Record::new(name, CheckStatus::Fail, e.to_string()))
    }

    pub fn passed(&self) -> bool {
        self.status != CheckStatus::Fail
    }
}

/// Runs one suite, or every suite for `all`.
pub fn run_suite(cfg: &JobConfig, suite: &str) -> Result<Vec<Record>> {
    let out = match suite {
        "all" => {
            let mut all = Vec::new();
            for s in SUITES {
                all.extend(run_suite(cfg, s)?);
            }
            return Ok(all);
        }
        "duality" => duality(cfg),
        "structure" => structure(cfg),
        "cocycles" => cocycles(cfg),
        "affine" => affine(cfg),
        "wedge" => wedge(cfg),
        "sugawara" => sugawara(cfg),
        "casimir" => casimir(cfg),
        s => return Err(Error::Config(format!("unknown suite `{s}`"))),
    };
    Ok(out.into_iter().map(|r| r.map(|r| Record { name: format!("{suite}/{}", r.name), ..r })).map(|r| Record::from_result(suite, r)).collect())
}

fn duality(cfg: &JobConfig) -> Vec<Result<Record>> {
    [-1, 0, 1, 2].into_iter().map(|w| duality_for(cfg, w)).collect()
}

/// `<f^λ_{n,p}, f^{1-λ}_{-m,r}> = δ_{n,m} δ_{p,r}` on the window.
pub fn duality_for(cfg: &JobConfig, weight: i64) -> Result<Record> {
    let geom = cfg.geometry()?;
    let (lo, hi) = cfg.window();
    let n = geom.num_punctures();
    let mut checked = 0;
    for a in lo..=hi {
        for p in 1..=n {
            let f = make_basis(&geom, weight, a, p)?;
            for b in lo..=hi {
                for r in 1..=n {
                    let v = kn_pairing(&f, &make_basis(&geom, 1 - weight, -b, r)?)?;
                    let want = if a == b && p == r { Rational::one() } else { Rational::zero() };
                    checked += 1;
                    if v != want {
                        return Ok(Record::check(
                            format!("weight {weight}"),
                            false,
                            format!("<f({a},{p}), f*({b},{r})> = {}", to_pq(&v)),
                        ));
                    }
                }
            }
        }
    }
    Ok(Record::check(format!("weight {weight}"), true, format!("{checked} pairings")))
}

fn structure(cfg: &JobConfig) -> Vec<Result<Record>> {
    let mut out = vec![bounds_record(cfg)];
    for kind in [TableKind::FunctionProduct, TableKind::VectorBracket, TableKind::FieldOnForm] {
        out.push((|| {
            let alg = KnAlgebra::new(cfg.geometry()?);
            let t = StructureTable::build(&alg, kind, cfg.window())?;
            Ok(Record::check(
                format!("table {}", kind.name()),
                true,
                format!("{} entries, excess {}", t.entries.len(), t.measured_bound),
            ))
        })());
    }
    for kind in [TableKind::FunctionProduct, TableKind::VectorBracket] {
        for part in [Part::Plus, Part::Minus] {
            out.push(closure_record(cfg, kind, part));
        }
    }
    if cfg.geometry().map(|g| g.num_punctures() == 1).unwrap_or(false) {
        out.push(classical(cfg));
    }
    out
}

fn bounds_record(cfg: &JobConfig) -> Result<Record> {
    let geom = cfg.geometry()?;
    let measured = measure_bounds(&geom, cfg.window())?;
    let prior = AlmostGradingBounds::a_priori(geom.num_punctures());
    let ok = measured.k <= prior.k && measured.l <= prior.l && measured.m <= prior.m;
    Ok(Record::check("bounds", ok, format!("measured {measured}, a priori {prior}")))
}

fn closure_record(cfg: &JobConfig, kind: TableKind, part: Part) -> Result<Record> {
    let geom = cfg.geometry()?;
    let alg = KnAlgebra::new(geom.clone());
    let bounds = AlmostGradingBounds::a_priori(geom.num_punctures());
    let r = closure_check(&alg, part, kind, SplitVariant::Standard, &bounds, cfg.window())?;
    let name = format!("closure {:?} {}", part, kind.name());
    Ok(match r.witness {
        None => Record::check(name, true, format!("{} pairs", r.checked)),
        Some((a, b, e)) => Record::check(name, false, format!("{a} x {b} = {e}")),
    })
}

/// One-point tables against the Laurent and Witt formulas.
pub fn classical(cfg: &JobConfig) -> Result<Record> {
    let geom = cfg.geometry()?;
    if geom.num_punctures() != 1 {
        return Err(Error::Config("classical tables need one puncture".into()));
    }
    let alg = KnAlgebra::new(geom);
    let (lo, hi) = cfg.window();
    for n in lo..=hi {
        for m in lo..=hi {
            let cases = [
                (TableKind::FunctionProduct, 0, 0, 0, int(1)),
                (TableKind::VectorBracket, -1, -1, -1, int(m - n)),
                (TableKind::FieldOnForm, -1, 0, 0, int(m)),
            ];
            for (kind, wa, wb, wr, c) in cases {
                let got = alg.basis_op(kind, BasisIndex::new(wa, n, 1), BasisIndex::new(wb, m, 1))?;
                let mut want = KNExpansion::zero(wr);
                want.add_term(BasisIndex::new(wr, n + m, 1), c);
                if *got != want {
                    return Ok(Record::check("classical", false, format!("{} ({n},{m}) = {got}", kind.name())));
                }
            }
        }
    }
    let b = measure_bounds(alg.geometry(), cfg.window())?;
    Ok(Record::check("classical", b == AlmostGradingBounds { k: 0, l: 0, m: 0 }, format!("bounds {b}")))
}

type DExp = (KNExpansion, KNExpansion);

fn d_random(rng: &mut impl Rng, n: usize, window: (i64, i64)) -> DExp {
    (sample::expansion(rng, 0, n, window, 2), sample::expansion(rng, -1, n, window, 2))
}

fn d_terms(x: &DExp) -> impl Iterator<Item = (&BasisIndex, &Rational)> {
    x.0.iter().chain(x.1.iter())
}

fn d_bracket(alg: &KnAlgebra, x: &DExp, y: &DExp) -> Result<DExp> {
    let mut out = (KNExpansion::zero(0), KNExpansion::zero(-1));
    for (i, a) in d_terms(x) {
        for (j, b) in d_terms(y) {
            let e = basis_bracket(alg, *i, *j)?;
            let c = a * b;
            if e.weight == 0 {
                out.0.add_scaled(&e, &c);
            } else {
                out.1.add_scaled(&e, &c);
            }
        }
    }
    Ok(out)
}

fn d_eval(gam: &GeometricCocycle, geom: &Arc<Geometry>, x: &DExp, y: &DExp) -> Result<Rational> {
    let mut s = Rational::zero();
    for (i, a) in d_terms(x) {
        for (j, b) in d_terms(y) {
            s += a * b * gam.eval_basis(geom, *i, *j)?;
        }
    }
    Ok(s)
}

/// Cocycle identity of one geometric cocycle on seeded random triples of
/// the differential-operator algebra.
pub fn cocycle_identity(cfg: &JobConfig, kind: &str, triples: usize) -> Result<Record> {
    let (gam, _) = cocycle_of(cfg, kind)?;
    let geom = cfg.geometry()?;
    let alg = KnAlgebra::new(geom.clone());
    let mut rng = sample::rng(cfg.seed);
    let n = geom.num_punctures();
    let w = cfg.window();
    let ts: Vec<(DExp, DExp, DExp)> = (0..triples).map(|_| (d_random(&mut rng, n, w), d_random(&mut rng, n, w), d_random(&mut rng, n, w))).collect();
    let rep = check_cocycle_identity(|x, y| d_eval(&gam, &geom, x, y), |x, y| d_bracket(&alg, x, y), &ts)?;
    let witness = match rep.witness {
        Some((i, s)) => format!("triple {i}: cyclic sum {}", to_pq(&s)),
        None => format!("{} triples", rep.checked),
    };
    Ok(Record::check(format!("identity {kind}"), rep.holds, witness))
}

/// Locality window of one cocycle, stable under growing the scan window.
pub fn locality(cfg: &JobConfig, kind: &str) -> Result<Record> {
    let (gam, weights) = cocycle_of(cfg, kind)?;
    let geom = cfg.geometry()?;
    let w = check_locality(|x, y| gam.eval_basis(&geom, x, y), weights, geom.num_punctures(), cfg.window())?;
    let witness = match w {
        Some(w) => format!("{} <= n+m <= {}", w.m2, w.m1),
        None => "vanishes".into(),
    };
    Ok(Record::check(format!("locality {kind}"), true, witness))
}

/// Shifting the projective (or affine) connection by `shift` changes the
/// cocycle by a coboundary on the window.
pub fn connection_shift(cfg: &JobConfig, kind: &str, shift: &str) -> Result<Record> {
    let geom = cfg.geometry()?;
    let alg = KnAlgebra::new(geom.clone());
    let (base, _) = cocycle_of(cfg, kind)?;
    let s = parse_config_fn(shift)?;
    let mut moved = base.clone();
    let weights: &[i64] = match kind {
        "vector_field" => {
            moved.r = ProjectiveConnection::new(&(&base.r.value() + &s), &geom)?;
            &[-1]
        }
        "mixing" => {
            moved.t = AffineConnection::new(&(&base.t.value() + &s), &geom)?;
            &[-1, 0]
        }
        k => return Err(Error::Config(format!("no connection enters the {k} cocycle"))),
    };
    let idx = crate::cocycles::basis_indices(weights, geom.num_punctures(), cfg.window());
    let g1 = |x, y| moved.eval_basis(&geom, x, y);
    let g2 = |x, y| base.eval_basis(&geom, x, y);
    let name = format!("coboundary {kind} shift {shift}");
    Ok(match find_coboundary(&alg, g1, g2, &idx)? {
        None => Record::check(name, false, "linear system inconsistent"),
        Some(phi) => {
            let ok = coboundary_equivalent(&alg, g1, g2, &phi, &idx)?;
            Record::check(name, ok, format!("functional with {} terms", phi.len()))
        }
    })
}

fn cocycles(cfg: &JobConfig) -> Vec<Result<Record>> {
    let mut out = Vec::new();
    for kind in ["function", "vector_field", "mixing"] {
        out.push(cocycle_identity(cfg, kind, 100));
        out.push(locality(cfg, kind));
    }
    out.push(connection_shift(cfg, "vector_field", "3"));
    out.push(connection_shift(cfg, "mixing", "2"));
    out
}

/// Jacobi identity in the affine algebra, central terms included.
pub fn affine_jacobi(cfg: &JobConfig, triples: usize) -> Result<Record> {
    let (tag, l) = cfg.algebra_tag()?;
    let geom = cfg.geometry()?;
    let alg = KnAlgebra::new(geom.clone());
    let form = BilinearForm::trace();
    let mut rng = sample::rng(cfg.seed);
    let n = geom.num_punctures();
    let w = cfg.window();
    let el = |rng: &mut rand_chacha::ChaCha8Rng| {
        AffineElement::new(sample::current(rng, tag, l, n, w, 2), sample::small_rational(rng))
    };
    for i in 0..triples {
        let (x, y, z) = (el(&mut rng), el(&mut rng), el(&mut rng));
        let s = jacobi_sum(&alg, &x, &y, &z, &form)?;
        if !s.is_zero() {
            return Ok(Record::check("jacobi", false, format!("triple {i}: central {}", to_pq(&s.central))));
        }
    }
    let t = AffineElement::central(tag, l, int(1));
    let x = AffineElement::current(sample::current(&mut rng, tag, l, n, w, 3));
    let central = affine_bracket_zero(&alg, &t, &x, &form)?;
    Ok(Record::check("jacobi", central, format!("{triples} triples")))
}

fn affine_bracket_zero(alg: &KnAlgebra, t: &AffineElement, x: &AffineElement, form: &BilinearForm) -> Result<bool> {
    Ok(crate::affine::affine_bracket(alg, t, x, form)?.is_zero() && crate::affine::affine_bracket(alg, x, t, form)?.is_zero())
}

fn affine(cfg: &JobConfig) -> Vec<Result<Record>> {
    vec![affine_jacobi(cfg, 100)]
}

/// Matrices used to probe the current algebra.
pub fn probe_matrices(tag: AlgebraTag, l: usize) -> Vec<Matrix> {
    match tag {
        AlgebraTag::GL1 => vec![Matrix::identity(1)],
        AlgebraTag::SL => sl_basis(l),
        AlgebraTag::GL => {
            let mut v = sl_basis(l);
            v.push(Matrix::identity(l));
            v
        }
    }
}

/// Central defect `[x(A), y(B)] - [x,y](AB)` against `α tr(xy) γ^A(A, B)`
/// on every basis pair of the window.
pub fn current_cocycle(module: &FermionModule, window: (i64, i64), charge: i64) -> Result<Record> {
    let alpha = module.current_level()?;
    let rep = module.representation();
    let alg = module.algebra();
    let n = module.geometry().num_punctures();
    let mats = probe_matrices(rep.tag, rep.l);
    let mut checked = 0;
    for x in &mats {
        for y in &mats {
            let tr = x.mul(y).trace();
            for a in crate::cocycles::basis_indices(&[0], n, window) {
                for b in crate::cocycles::basis_indices(&[0], n, window) {
                    let dx = DgElement::from_current(CurrentElement::from_expansion(&crate::affine::MatrixElement::new(x.clone(), rep.tag)?, &KNExpansion::basis(a)));
                    let dy = DgElement::from_current(CurrentElement::from_expansion(&crate::affine::MatrixElement::new(y.clone(), rep.tag)?, &KNExpansion::basis(b)));
                    let got = module.extract_cocycle(&dx, &dy, charge)?;
                    let want = &alpha * &tr * crate::affine::gamma_a_basis(alg, a, b)?;
                    checked += 1;
                    if got != want {
                        return Ok(Record::check(
                            "current cocycle",
                            false,
                            format!("{a} x {b}: defect {} expected {}", to_pq(&got), to_pq(&want)),
                        ));
                    }
                }
            }
        }
    }
    Ok(Record::check("current cocycle", true, format!("alpha {} on {checked} pairs", to_pq(&alpha))))
}

/// Monomials of degree `>= -depth` in a sector: none of positive degree and
/// `p(d)` of degree `-d`.
pub fn degree_counts(charge: i64, depth: usize) -> Record {
    let all = WedgeMonomial::enumerate(charge, depth);
    let mut counts = vec![0usize; depth + 1];
    for m in &all {
        let d = m.degree();
        if d > 0 {
            return Record::check("degree counts", false, format!("{m} has degree {d}"));
        }
        counts[(-d) as usize] += 1;
    }
    let want: Vec<usize> = (0..=depth).map(|d| partitions(d).len()).collect();
    Record::check("degree counts", counts == want, format!("{counts:?}"))
}

fn wedge(cfg: &JobConfig) -> Vec<Result<Record>> {
    let (lo, hi) = cfg.window();
    let w = (lo.max(-3), hi.min(3));
    vec![cfg.module().and_then(|m| current_cocycle(&m, w, cfg.charge)), Ok(degree_counts(cfg.charge, cfg.depth.max(6)))]
}

/// Basis vectors of the sector with degree `>= -depth`.
pub fn sample_vectors(charge: i64, depth: usize) -> Vec<WedgeVector> {
    WedgeMonomial::enumerate(charge, depth).into_iter().map(WedgeVector::monomial).collect()
}

/// `[T_e, x(A)] = x(e.A)` over fields `e` and functions `A` in the given
/// degree ranges.
pub fn fundamental(ctx: &SugawaraContext, fields: (i64, i64), funcs: (i64, i64), samples: &[WedgeVector]) -> Result<Record> {
    let module = ctx.module();
    let n = module.geometry().num_punctures();
    let rep = module.representation();
    let mut checked = 0;
    for x in probe_matrices(rep.tag, rep.l) {
        for e in crate::cocycles::basis_indices(&[-1], n, fields) {
            for a in crate::cocycles::basis_indices(&[0], n, funcs) {
                checked += 1;
                if !ctx.check_fundamental(&KNExpansion::basis(e), &x, &KNExpansion::basis(a), samples)? {
                    return Ok(Record::check("fundamental", false, format!("e {e}, A {a}, x {x}")));
                }
            }
        }
    }
    Ok(Record::check("fundamental", true, format!("{checked} triples on {} vectors", samples.len())))
}

fn sugawara(cfg: &JobConfig) -> Vec<Result<Record>> {
    let (lo, hi) = cfg.window();
    vec![(|| {
        let ctx = SugawaraContext::from_module(cfg.module()?)?;
        fundamental(&ctx, (lo.max(-1), hi.min(1)), (lo.max(-2), hi.min(2)), &sample_vectors(cfg.charge, cfg.depth.min(3)))
    })()]
}

/// Solves the mixing system on the window and checks each kernel vector.
pub fn casimir_kernel(cfg: &JobConfig) -> Result<Record> {
    let (gam, _) = cocycle_of(cfg, "mixing")?;
    let geom = cfg.geometry()?;
    let n = geom.num_punctures();
    let g = |e: BasisIndex, a: BasisIndex| gam.eval_basis(&geom, e, a);
    let rep = casimir_solve(&g, n, cfg.window())?;
    let (lo, hi) = cfg.window();
    for c in &rep.basis {
        for k in (lo..=hi).filter(|&k| k != 0) {
            for q in 1..=n {
                let mut s = Rational::zero();
                for (i, a) in c.coefficients.iter() {
                    s += a * g(*i, BasisIndex::new(0, -k, q))?;
                }
                if !s.is_zero() {
                    return Ok(Record::check("kernel", false, format!("equation ({k},{q}) leaves {}", to_pq(&s))));
                }
            }
        }
    }
    Ok(Record::check(
        "kernel",
        true,
        format!("kernel dimension {}, genericity failures at {:?}", rep.basis.len(), rep.genericity_failures),
    ))
}

/// Locality bound `k - m` of the mixing system `γ(e_m, A_{-k})`.
fn mixing_reach(cfg: &JobConfig) -> Result<i64> {
    let (gam, weights) = cocycle_of(cfg, "mixing")?;
    let geom = cfg.geometry()?;
    let w = check_locality(|x, y| gam.eval_basis(&geom, x, y), weights, geom.num_punctures(), cfg.window())?;
    Ok(w.map_or(0, |w| (-w.m2).max(0)))
}

/// `Γ(e_{0,p})` for every puncture.
pub fn semi_casimir_candidates(cfg: &JobConfig, n_max: i64) -> Result<Vec<CasimirCandidate>> {
    let (gam, _) = cocycle_of(cfg, "mixing")?;
    let geom = cfg.geometry()?;
    let n = geom.num_punctures();
    let g = |e: BasisIndex, a: BasisIndex| gam.eval_basis(&geom, e, a);
    let reach = mixing_reach(cfg)?;
    (1..=n).map(|p| gamma_extend(&KNExpansion::basis(BasisIndex::new(-1, 0, p)), &g, n, n_max, reach)).collect()
}

/// `[Δ, x(A_k)]` vanishes for `k < 0`, and for every `k` when `x` is
/// traceless.
pub fn semi_casimir(ctx: &SugawaraContext, cands: &[CasimirCandidate], window: (i64, i64), samples: &[WedgeVector]) -> Result<Record> {
    let module = ctx.module();
    let rep = module.representation();
    let n = module.geometry().num_punctures();
    let mut inconclusive = None;
    let mut checked = 0;
    for cand in cands {
        for x in probe_matrices(rep.tag, rep.l) {
            let traceless = x.trace().is_zero();
            for a in crate::cocycles::basis_indices(&[0], n, window) {
                if a.degree >= 0 && !traceless {
                    continue;
                }
                checked += 1;
                let r = check_delta_commutation(ctx, cand, &x, &KNExpansion::basis(a), &Rational::zero(), samples)?;
                match r.status {
                    CheckStatus::Fail => return Ok(Record::from_report("semi-casimir", r)),
                    CheckStatus::Inconclusive => inconclusive = Some(r),
                    CheckStatus::Pass => {}
                }
            }
        }
    }
    Ok(match inconclusive {
        Some(r) => Record::from_report("semi-casimir", r),
        None => Record::check("semi-casimir", true, format!("{checked} commutators on {} vectors", samples.len())),
    })
}

/// `[Δ(e), Δ(f)]` acts by one scalar on every sample set, the same on all.
pub fn pairwise(ctx: &SugawaraContext, e: &CasimirCandidate, f: &CasimirCandidate, sets: &[Vec<WedgeVector>]) -> Result<Record> {
    let mut scalar: Option<Rational> = None;
    for set in sets {
        let r = check_pairwise_scalar(ctx, e, f, set)?;
        if r.status != CheckStatus::Pass {
            return Ok(Record::from_report("pairwise", r));
        }
        let s = r.scalar.unwrap_or_else(Rational::zero);
        if let Some(s0) = &scalar {
            if *s0 != s {
                return Ok(Record::check("pairwise", false, format!("scalars {} and {} differ", to_pq(s0), to_pq(&s))));
            }
        }
        scalar = Some(s);
    }
    let s = scalar.unwrap_or_else(Rational::zero);
    Ok(Record::check("pairwise", true, format!("scalar {} on {} sets", to_pq(&s), sets.len())))
}

fn casimir(cfg: &JobConfig) -> Vec<Result<Record>> {
    let mut out = vec![casimir_kernel(cfg)];
    let tag = match cfg.algebra_tag() {
        Ok((t, _)) => t,
        Err(e) => return vec![Err(e)],
    };
    if tag == AlgebraTag::SL {
        return out;
    }
    let (lo, hi) = cfg.window();
    let depth = cfg.depth.min(3);
    let samples = sample_vectors(cfg.charge, depth);
    let run = || -> Result<(SugawaraContext, Vec<CasimirCandidate>)> {
        let ctx = SugawaraContext::from_module(cfg.module()?)?;
        let reach = 2 * (depth as i64 + lo.abs().max(hi.abs()) + 2) + sugawara_support(cfg.geometry()?.num_punctures()) + 1;
        let cands = semi_casimir_candidates(cfg, reach)?;
        Ok((ctx, cands))
    };
    match run() {
        Err(e) => out.push(Err(e)),
        Ok((ctx, cands)) => {
            out.push(mixing_level(&ctx).map(|mu| Record::check("mixing level", !mu.is_zero(), format!("mu {}", to_pq(&mu)))));
            out.push(semi_casimir(&ctx, &cands, (lo.max(-2), hi.min(2)), &samples));
            let e = CasimirCandidate::exact(KNExpansion::basis(BasisIndex::new(-1, 2, 1)), CandidateKind::Casimir);
            let f = CasimirCandidate::exact(KNExpansion::basis(BasisIndex::new(-1, -2, 1)), CandidateKind::Casimir);
            let (a, b): (Vec<_>, Vec<_>) = samples.iter().cloned().enumerate().partition(|(i, _)| i % 2 == 0);
            let sets = vec![a.into_iter().map(|x| x.1).collect(), b.into_iter().map(|x| x.1).collect()];
            out.push(pairwise(&ctx, &e, &f, &sets));
        }
    }
    out
}

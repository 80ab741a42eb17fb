//! Casimir and semi-casimir operators `Δ_e = r(e) - T[e]`.

use std::fmt;

use num_traits::Zero;

use crate::affine::Matrix;
use crate::arith::rational::to_pq;
use crate::arith::Rational;
use crate::basis::{BasisIndex, KNExpansion};
use crate::error::{Error, Result};
use crate::linalg;
use crate::sugawara::{sugawara_support, SugawaraContext};
use crate::wedge::{wedge_apply, WedgeVector};

/// Matrix entry `γ(e_m, A_{-k})` of the obstruction system, as a function
/// of the vector field index and the function index.
pub type GammaFn<'a> = dyn Fn(BasisIndex, BasisIndex) -> Result<Rational> + 'a;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CandidateKind {
    Casimir,
    SemiCasimir,
}

/// `e = Σ a_{n,p} e_{n,p}` on the window `[n_min, n_max]`.
#[derive(Clone, Debug)]
pub struct CasimirCandidate {
    pub coefficients: KNExpansion,
    pub window: (i64, i64),
    pub kind: CandidateKind,
    /// Coefficients outside the window are known to vanish.
    pub exact: bool,
}

impl CasimirCandidate {
    /// A finitely supported vector field taken as it is.
    pub fn exact(e: KNExpansion, kind: CandidateKind) -> Self {
        let window = e.degree_window().unwrap_or((0, 0));
        CasimirCandidate { coefficients: e, window, kind, exact: true }
    }
}

/// Solution space of the truncated system with its diagonal.
#[derive(Clone, Debug)]
pub struct CasimirReport {
    pub basis: Vec<CasimirCandidate>,
    /// `(k, det of the block γ(e_{k,p}, A_{-k,q}))`
    pub diagonal: Vec<(i64, Rational)>,
    /// `k ≠ 0` with a vanishing diagonal block.
    pub genericity_failures: Vec<i64>,
}

fn det(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut d = Rational::from_integer(1.into());
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        d *= &m[c][c];
        for i in c + 1..n {
            let f = &m[i][c] / &m[c][c];
            for j in c..n {
                let t = &f * &m[c][j];
                m[i][j] -= t;
            }
        }
    }
    d
}

fn block(gamma: &GammaFn, n_punct: usize, m: i64, k: i64) -> Result<Vec<Vec<Rational>>> {
    let mut rows = Vec::with_capacity(n_punct);
    for q in 1..=n_punct {
        let mut row = Vec::with_capacity(n_punct);
        for p in 1..=n_punct {
            row.push(gamma(BasisIndex::new(-1, m, p), BasisIndex::new(0, -k, q))?);
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Solves `Σ_m a_m γ(e_m, A_{-k}) = 0` for all `k ≠ 0` in the window.
pub fn casimir_solve(gamma: &GammaFn, n_punct: usize, window: (i64, i64)) -> Result<CasimirReport> {
    let (lo, hi) = window;
    if lo > hi {
        return Ok(CasimirReport { basis: Vec::new(), diagonal: Vec::new(), genericity_failures: Vec::new() });
    }
    let unknowns: Vec<(i64, usize)> = (lo..=hi).flat_map(|m| (1..=n_punct).map(move |p| (m, p))).collect();
    let mut rows = Vec::new();
    let mut diagonal = Vec::new();
    let mut failures = Vec::new();
    for k in lo..=hi {
        let d = det(block(gamma, n_punct, k, k)?);
        if k != 0 && d.is_zero() {
            failures.push(k);
        }
        diagonal.push((k, d));
        if k == 0 {
            continue;
        }
        for q in 1..=n_punct {
            let mut row = Vec::with_capacity(unknowns.len());
            for &(m, p) in &unknowns {
                row.push(gamma(BasisIndex::new(-1, m, p), BasisIndex::new(0, -k, q))?);
            }
            rows.push(row);
        }
    }
    let basis = linalg::nullspace(&rows, unknowns.len())
        .into_iter()
        .map(|v| {
            let mut e = KNExpansion::zero(-1);
            for (c, &(m, p)) in v.into_iter().zip(&unknowns) {
                e.add_term(BasisIndex::new(-1, m, p), c);
            }
            CasimirCandidate { coefficients: e, window, kind: CandidateKind::Casimir, exact: false }
        })
        .collect();
    Ok(CasimirReport { basis, diagonal, genericity_failures: failures })
}

/// `Γ(e)`: keeps the coefficients of degree `<= 0` and solves the `k > 0`
/// equations for the positive ones up to `n_max`.
///
/// `locality` bounds `k - m` for nonzero entries; it decides whether the
/// coefficients beyond the window provably vanish.
pub fn gamma_extend(e: &KNExpansion, gamma: &GammaFn, n_punct: usize, n_max: i64, locality: i64) -> Result<CasimirCandidate> {
    if e.weight != -1 {
        return Err(Error::WeightMismatch { expected: -1, found: e.weight });
    }
    if e.iter().any(|(i, _)| i.degree > 0) {
        return Err(Error::Config("Γ takes a field supported in degrees <= 0".into()));
    }
    let lo = e.degree_window().map_or(0, |w| w.0);
    let mut out = e.clone();
    let mut lower_triangular = true;
    for k in 1..=n_max {
        for m in k + 1..=n_max {
            if block(gamma, n_punct, m, k)?.iter().flatten().any(|x| !x.is_zero()) {
                lower_triangular = false;
            }
        }
    }
    if lower_triangular {
        for k in 1..=n_max {
            let diag = block(gamma, n_punct, k, k)?;
            let mut rhs = vec![Rational::zero(); n_punct];
            for (idx, c) in out.iter() {
                for (q, r) in rhs.iter_mut().enumerate() {
                    *r -= c * gamma(*idx, BasisIndex::new(0, -k, q + 1))?;
                }
            }
            if det(diag.clone()).is_zero() {
                return Err(Error::SingularDiagonal { k });
            }
            let a = linalg::solve(&diag, &rhs).ok_or(Error::SingularDiagonal { k })?;
            for (p, c) in a.into_iter().enumerate() {
                out.add_term(BasisIndex::new(-1, k, p + 1), c);
            }
        }
    } else {
        let unknowns: Vec<(i64, usize)> = (1..=n_max).flat_map(|m| (1..=n_punct).map(move |p| (m, p))).collect();
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for k in 1..=n_max {
            if det(block(gamma, n_punct, k, k)?).is_zero() {
                return Err(Error::SingularDiagonal { k });
            }
            for q in 1..=n_punct {
                let a = BasisIndex::new(0, -k, q);
                let mut row = Vec::new();
                for &(m, p) in &unknowns {
                    row.push(gamma(BasisIndex::new(-1, m, p), a)?);
                }
                rows.push(row);
                let mut r = Rational::zero();
                for (idx, c) in e.iter() {
                    r -= c * gamma(*idx, a)?;
                }
                rhs.push(r);
            }
        }
        let a = linalg::solve(&rows, &rhs).ok_or(Error::SingularDiagonal { k: 1 })?;
        for (c, &(m, p)) in a.into_iter().zip(&unknowns) {
            out.add_term(BasisIndex::new(-1, m, p), c);
        }
    }
    let mut exact = lower_triangular;
    if exact {
        let top = out.degree_window().map_or(0, |w| w.1);
        'outer: for k in n_max + 1..=top.max(n_max) + locality {
            for (idx, c) in out.iter() {
                for q in 1..=n_punct {
                    if !c.is_zero() && !gamma(*idx, BasisIndex::new(0, -k, q))?.is_zero() {
                        exact = false;
                        break 'outer;
                    }
                }
            }
        }
    }
    Ok(CasimirCandidate { coefficients: out, window: (lo.min(0), n_max), kind: CandidateKind::SemiCasimir, exact })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum CheckStatus {
    Pass,
    Fail,
    Inconclusive,
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CheckStatus::Pass => "PASS",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Inconclusive => "INCONCLUSIVE",
        };
        write!(f, "{s}")
    }
}

#[derive(Clone, Debug)]
pub struct CheckReport {
    pub status: CheckStatus,
    pub scalar: Option<Rational>,
    pub witness: String,
}

impl CheckReport {
    fn new(status: CheckStatus, scalar: Option<Rational>, witness: impl Into<String>) -> Self {
        CheckReport { status, scalar, witness: witness.into() }
    }
}

/// `Δ_e v = r(e) v - T[e] v`
pub fn delta_apply(ctx: &SugawaraContext, e: &KNExpansion, v: &WedgeVector) -> Result<WedgeVector> {
    let r = wedge_apply(&ctx.module().field_operator(e)?, v)?;
    Ok(r.sub(&ctx.apply_t_of_field(e, v)?))
}

/// `None` when coefficients outside the candidate window could act on the
/// given vectors.
fn truncation_problem(ctx: &SugawaraContext, cand: &CasimirCandidate, vectors: &[&WedgeVector]) -> Option<String> {
    if cand.exact {
        return None;
    }
    let module = ctx.module();
    let h = vectors.iter().map(|v| module.vector_annihilation_degree(v)).max().unwrap_or(0);
    let need = 2 * h + sugawara_support(module.geometry().num_punctures()) + 1;
    if cand.window.1 < need {
        return Some(format!("window ends at {} but degrees up to {need} act on the samples", cand.window.1));
    }
    if cand.kind == CandidateKind::Casimir {
        let (lo, _) = cand.window;
        if cand.coefficients.iter().any(|(i, c)| i.degree == lo && !c.is_zero()) {
            return Some(format!("nonzero coefficient at the window edge {lo}"));
        }
    }
    None
}

/// `[Δ_e, x(A)]` on the samples: zero for semi-casimirs (for `A` of negative
/// degree), `expected · id` for casimirs.
pub fn check_delta_commutation(
    ctx: &SugawaraContext,
    cand: &CasimirCandidate,
    x: &Matrix,
    a: &KNExpansion,
    expected: &Rational,
    samples: &[WedgeVector],
) -> Result<CheckReport> {
    let xa = ctx.module().current_operator(x, a)?;
    let e = &cand.coefficients;
    let mut seen = Vec::new();
    for v in samples {
        let xv = wedge_apply(&xa, v)?;
        let c = delta_apply(ctx, e, &xv)?.sub(&wedge_apply(&xa, &delta_apply(ctx, e, v)?)?);
        if c != v.scale(expected) {
            if let Some(why) = truncation_problem(ctx, cand, &[v, &xv]) {
                return Ok(CheckReport::new(CheckStatus::Inconclusive, None, why));
            }
            return Ok(CheckReport::new(CheckStatus::Fail, None, format!("on {v}: {c}")));
        }
        seen.push(v.clone());
        seen.push(xv);
    }
    let refs: Vec<&WedgeVector> = seen.iter().collect();
    if let Some(why) = truncation_problem(ctx, cand, &refs) {
        return Ok(CheckReport::new(CheckStatus::Inconclusive, None, why));
    }
    Ok(CheckReport::new(CheckStatus::Pass, Some(expected.clone()), format!("{} samples, scalar {}", samples.len(), to_pq(expected))))
}

/// `[Δ_e, Δ_f]` acts on all samples by one scalar.
pub fn check_pairwise_scalar(ctx: &SugawaraContext, e: &CasimirCandidate, f: &CasimirCandidate, samples: &[WedgeVector]) -> Result<CheckReport> {
    let mut scalar: Option<Rational> = None;
    let mut seen = Vec::new();
    for v in samples {
        let fv = delta_apply(ctx, &f.coefficients, v)?;
        let ev = delta_apply(ctx, &e.coefficients, v)?;
        let c = delta_apply(ctx, &e.coefficients, &fv)?.sub(&delta_apply(ctx, &f.coefficients, &ev)?);
        match (c.ratio_to(v), &scalar) {
            (Some(s), None) => scalar = Some(s),
            (Some(s), Some(s0)) if s == *s0 => {}
            (got, _) => {
                if let Some(why) = truncation_problem(ctx, e, &[v, &fv, &ev]).or_else(|| truncation_problem(ctx, f, &[v, &fv, &ev])) {
                    return Ok(CheckReport::new(CheckStatus::Inconclusive, None, why));
                }
                let why = match got {
                    Some(s) => format!("scalar {} on {v} differs", to_pq(&s)),
                    None => format!("not scalar on {v}: {c}"),
                };
                return Ok(CheckReport::new(CheckStatus::Fail, None, why));
            }
        }
        seen.extend([v.clone(), fv, ev]);
    }
    let refs: Vec<&WedgeVector> = seen.iter().collect();
    if let Some(why) = truncation_problem(ctx, e, &refs).or_else(|| truncation_problem(ctx, f, &refs)) {
        return Ok(CheckReport::new(CheckStatus::Inconclusive, None, why));
    }
    let s = scalar.unwrap_or_else(Rational::zero);
    Ok(CheckReport::new(CheckStatus::Pass, Some(s.clone()), format!("{} samples, scalar {}", samples.len(), to_pq(&s))))
}

/// `μ` with `[r(e), x(A)] - x(e.A) = μ tr(x) γ^m(e, A)` on the charge-zero
/// sector, from a probe pair of degrees `(1, -1)`.
pub fn mixing_level(ctx: &SugawaraContext) -> Result<Rational> {
    let module = ctx.module();
    let geom = module.geometry().clone();
    let gam = crate::cocycles::GeometricCocycle::mixing(&geom);
    let x = Matrix::identity(module.representation().l);
    if module.representation().tag == crate::affine::AlgebraTag::SL {
        return Err(Error::Config("mixing level needs a trace part".into()));
    }
    let n = geom.num_punctures();
    for p in 1..=n {
        for q in 1..=n {
            let ei = BasisIndex::new(-1, 1, p);
            let ai = BasisIndex::new(0, -1, q);
            let g = gam.eval_basis(&geom, ei, ai)?;
            if g.is_zero() {
                continue;
            }
            let e = KNExpansion::basis(ei);
            let a = KNExpansion::basis(ai);
            let re = module.field_operator(&e)?;
            let xa = module.current_operator(&x, &a)?;
            let xea = module.current_operator(&x, &module.algebra().act(&e, &a)?)?;
            let d = module.defect_scalar(&re, &xa, &xea, &crate::wedge::WedgeMonomial::enumerate(0, 3))?;
            return Ok(d / (x.trace() * g));
        }
    }
    Err(Error::Invariant("no probe pair with nonzero mixing cocycle".into()))
}

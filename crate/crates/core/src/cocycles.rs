//! The geometric 2-cocycles on functions, vector fields and their semidirect
//! sum, with checks for the cocycle identity, locality, invariance and
//! coboundary equivalence.
//!
//! Every contour integral around the in-points is evaluated as the sum of the
//! residues at the punctures.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::arith::rational::{int, rat, Rational};
use crate::arith::{Order, RationalFunction};
use crate::basis::{BasisIndex, FormElement, Geometry, KNExpansion, PuncturedFunction};
use crate::error::{Error, Result};
use crate::linalg;
use crate::structure::{bracket_form, lie_derivative_form, KnAlgebra, TableKind};

/// Projective connection `R` in the chart `z`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectiveConnection {
    value: FormElement,
}

impl ProjectiveConnection {
    pub fn zero(geom: &Arc<Geometry>) -> Self {
        ProjectiveConnection { value: FormElement::zero(2, geom) }
    }

    pub fn new(value: &RationalFunction, geom: &Arc<Geometry>) -> Result<Self> {
        Ok(ProjectiveConnection { value: FormElement::from_rational_function(value, 2, geom)? })
    }

    pub fn value(&self) -> RationalFunction {
        self.value.to_rational_function()
    }

    pub fn func(&self) -> &PuncturedFunction {
        self.value.func()
    }
}

/// Affine connection `T` in the chart `z`; pole order at most one at
/// infinity.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineConnection {
    value: FormElement,
}

impl AffineConnection {
    pub fn zero(geom: &Arc<Geometry>) -> Self {
        AffineConnection { value: FormElement::zero(1, geom) }
    }

    pub fn new(value: &RationalFunction, geom: &Arc<Geometry>) -> Result<Self> {
        let value = FormElement::from_rational_function(value, 1, geom)?;
        if let Order::Finite(k) = value.func().order_at_infinity() {
            if k < -1 {
                return Err(Error::Config(format!("affine connection has a pole of order {} at infinity", -k)));
            }
        }
        Ok(AffineConnection { value })
    }

    pub fn value(&self) -> RationalFunction {
        self.value.to_rational_function()
    }

    pub fn func(&self) -> &PuncturedFunction {
        self.value.func()
    }
}

fn pts(f: &FormElement) -> &[Rational] {
    f.geometry().punctures()
}

fn d(f: &PuncturedFunction, p: &[Rational]) -> PuncturedFunction {
    f.derivative(p)
}

/// `γ^A(g, h) = Σ res_{P_i} g h' dz`
pub fn cocycle_a(g: &FormElement, h: &FormElement) -> Result<Rational> {
    g.check_same(h)?;
    g.check_weight(0)?;
    h.check_weight(0)?;
    let p = pts(g);
    Ok(g.func().mul(&d(h.func(), p)).residue_sum_in(p))
}

/// `γ^L(e, f) = Σ res_{P_i} (½(e''' f - e f''') - R (e' f - e f')) dz`
pub fn cocycle_l(e: &FormElement, f: &FormElement, r: &ProjectiveConnection) -> Result<Rational> {
    e.check_same(f)?;
    e.check_weight(-1)?;
    f.check_weight(-1)?;
    let p = pts(e);
    let (ef, ff) = (e.func(), f.func());
    let e1 = d(ef, p);
    let f1 = d(ff, p);
    let e3 = d(&d(&e1, p), p);
    let f3 = d(&d(&f1, p), p);
    let cubic = e3.mul(ff).sub(&ef.mul(&f3), p).scale(&rat(1, 2));
    let mut total = cubic.residue_sum_in(p);
    if !r.func().is_zero() {
        let w = e1.mul(ff).sub(&ef.mul(&f1), p);
        total -= r.func().mul(&w).residue_sum_in(p);
    }
    Ok(total)
}

/// `γ^m(e, g) = Σ res_{P_i} (e g'' + T e g') dz`
pub fn cocycle_mix(e: &FormElement, g: &FormElement, t: &AffineConnection) -> Result<Rational> {
    e.check_same(g)?;
    e.check_weight(-1)?;
    g.check_weight(0)?;
    let p = pts(e);
    let g1 = d(g.func(), p);
    let g2 = d(&g1, p);
    let mut integrand = e.func().mul(&g2);
    if !t.func().is_zero() {
        integrand = integrand.add(&t.func().mul(e.func()).mul(&g1), p);
    }
    Ok(integrand.residue_sum_in(p))
}

/// Element `(g, e)` of the semidirect sum of functions and vector fields.
#[derive(Clone, Debug, PartialEq)]
pub struct DElement {
    pub func: FormElement,
    pub field: FormElement,
}

impl DElement {
    pub fn new(func: FormElement, field: FormElement) -> Result<Self> {
        func.check_same(&field)?;
        func.check_weight(0)?;
        field.check_weight(-1)?;
        Ok(DElement { func, field })
    }

    pub fn function(g: FormElement) -> Self {
        let field = FormElement::zero(-1, g.geometry());
        DElement { func: g, field }
    }

    pub fn vector_field(e: FormElement) -> Self {
        let func = FormElement::zero(0, e.geometry());
        DElement { func, field: e }
    }
}

/// `[(g,e),(h,f)] = (e.h - f.g, [e,f])`
pub fn bracket_d(x: &DElement, y: &DElement) -> Result<DElement> {
    let func = lie_derivative_form(&x.field, &y.func)?.try_sub(&lie_derivative_form(&y.field, &x.func)?)?;
    let field = bracket_form(&x.field, &y.field)?;
    Ok(DElement { func, field })
}

/// `a γ^A + b γ^L + c γ^m`, evaluated on the semidirect sum with the mixing
/// part extended antisymmetrically.
#[derive(Clone, Debug)]
pub struct GeometricCocycle {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub r: ProjectiveConnection,
    pub t: AffineConnection,
}

impl GeometricCocycle {
    pub fn new(geom: &Arc<Geometry>, a: Rational, b: Rational, c: Rational) -> Self {
        GeometricCocycle { a, b, c, r: ProjectiveConnection::zero(geom), t: AffineConnection::zero(geom) }
    }

    pub fn function(geom: &Arc<Geometry>) -> Self {
        Self::new(geom, int(1), int(0), int(0))
    }

    pub fn vector_field(geom: &Arc<Geometry>) -> Self {
        Self::new(geom, int(0), int(1), int(0))
    }

    pub fn mixing(geom: &Arc<Geometry>) -> Self {
        Self::new(geom, int(0), int(0), int(1))
    }

    pub fn with_connections(mut self, r: ProjectiveConnection, t: AffineConnection) -> Self {
        self.r = r;
        self.t = t;
        self
    }

    pub fn scaled(&self, s: &Rational) -> Self {
        GeometricCocycle { a: &self.a * s, b: &self.b * s, c: &self.c * s, r: self.r.clone(), t: self.t.clone() }
    }

    /// Evaluation on forms of weight 0 or -1.
    pub fn eval(&self, x: &FormElement, y: &FormElement) -> Result<Rational> {
        match (x.weight(), y.weight()) {
            (0, 0) => Ok(zero_or(&self.a, || cocycle_a(x, y))?),
            (-1, -1) => Ok(zero_or(&self.b, || cocycle_l(x, y, &self.r))?),
            (-1, 0) => Ok(zero_or(&self.c, || cocycle_mix(x, y, &self.t))?),
            (0, -1) => Ok(-zero_or(&self.c, || cocycle_mix(y, x, &self.t))?),
            (w, _) if w != 0 && w != -1 => Err(Error::WeightMismatch { expected: 0, found: w }),
            (_, w) => Err(Error::WeightMismatch { expected: 0, found: w }),
        }
    }

    pub fn eval_d(&self, x: &DElement, y: &DElement) -> Result<Rational> {
        Ok(self.eval(&x.func, &y.func)?
            + self.eval(&x.field, &y.field)?
            + self.eval(&x.field, &y.func)?
            + self.eval(&x.func, &y.field)?)
    }

    pub fn eval_basis(&self, geom: &Arc<Geometry>, x: BasisIndex, y: BasisIndex) -> Result<Rational> {
        let fx = crate::basis::make_basis(geom, x.weight, x.degree, x.puncture)?;
        let fy = crate::basis::make_basis(geom, y.weight, y.degree, y.puncture)?;
        self.eval(&fx, &fy)
    }
}

fn zero_or(coef: &Rational, f: impl FnOnce() -> Result<Rational>) -> Result<Rational> {
    if coef.is_zero() {
        Ok(Rational::zero())
    } else {
        Ok(coef * f()?)
    }
}

/// Bracket of two basis elements in the semidirect sum: functions commute,
/// vector fields act on functions by derivation.
pub fn basis_bracket(alg: &KnAlgebra, x: BasisIndex, y: BasisIndex) -> Result<KNExpansion> {
    match (x.weight, y.weight) {
        (0, 0) => Ok(KNExpansion::zero(0)),
        (-1, -1) => Ok((*alg.basis_op(TableKind::VectorBracket, x, y)?).clone()),
        (-1, 0) => Ok((*alg.basis_op(TableKind::FieldOnForm, x, y)?).clone()),
        (0, -1) => Ok(alg.basis_op(TableKind::FieldOnForm, y, x)?.scale(&-Rational::one())),
        (w, _) => Err(Error::WeightMismatch { expected: 0, found: w }),
    }
}

#[derive(Clone, Debug)]
pub struct IdentityReport {
    pub holds: bool,
    pub checked: usize,
    /// Index of the first failing triple and the value of the cyclic sum.
    pub witness: Option<(usize, Rational)>,
}

/// `γ([f,g],h) + γ([g,h],f) + γ([h,f],g) = 0` on every sampled triple.
pub fn check_cocycle_identity<X>(
    gamma: impl Fn(&X, &X) -> Result<Rational>,
    bracket: impl Fn(&X, &X) -> Result<X>,
    triples: &[(X, X, X)],
) -> Result<IdentityReport> {
    for (i, (f, g, h)) in triples.iter().enumerate() {
        let s = gamma(&bracket(f, g)?, h)? + gamma(&bracket(g, h)?, f)? + gamma(&bracket(h, f)?, g)?;
        if !s.is_zero() {
            return Ok(IdentityReport { holds: false, checked: i + 1, witness: Some((i, s)) });
        }
    }
    Ok(IdentityReport { holds: true, checked: triples.len(), witness: None })
}

/// `γ(x,y) = -γ(y,x)` on every sampled pair.
pub fn check_antisymmetry<X>(gamma: impl Fn(&X, &X) -> Result<Rational>, pairs: &[(X, X)]) -> Result<bool> {
    for (x, y) in pairs {
        if gamma(x, y)? != -gamma(y, x)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Bounds `M2 <= n+m <= M1` on the degrees where a cocycle can be nonzero.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LocalityWindow {
    pub m1: i64,
    pub m2: i64,
}

fn locality_over(
    gamma: &impl Fn(BasisIndex, BasisIndex) -> Result<Rational>,
    weights: (i64, i64),
    n_punct: usize,
    window: (i64, i64),
) -> Result<Option<LocalityWindow>> {
    let mut out: Option<LocalityWindow> = None;
    for n in window.0..=window.1 {
        for m in window.0..=window.1 {
            for p in 1..=n_punct {
                for r in 1..=n_punct {
                    let v = gamma(BasisIndex::new(weights.0, n, p), BasisIndex::new(weights.1, m, r))?;
                    if v.is_zero() {
                        continue;
                    }
                    let s = n + m;
                    out = Some(match out {
                        None => LocalityWindow { m1: s, m2: s },
                        Some(w) => LocalityWindow { m1: w.m1.max(s), m2: w.m2.min(s) },
                    });
                }
            }
        }
    }
    Ok(out)
}

/// Tightest locality window of `gamma` on basis pairs of the given weights
/// over `window`, checked against the window grown by two on each side.
/// `None` means the cocycle vanishes on the window.
pub fn check_locality(
    gamma: impl Fn(BasisIndex, BasisIndex) -> Result<Rational>,
    weights: (i64, i64),
    n_punct: usize,
    window: (i64, i64),
) -> Result<Option<LocalityWindow>> {
    if window.0 > window.1 {
        return Err(Error::Config("empty degree window".into()));
    }
    let small = locality_over(&gamma, weights, n_punct, window)?;
    let large = locality_over(&gamma, weights, n_punct, (window.0 - 2, window.1 + 2))?;
    if small != large {
        return Err(Error::Invariant(format!("locality window not stable: {small:?} vs {large:?}")));
    }
    Ok(small)
}

/// Linear functional on basis elements.
pub type Functional = BTreeMap<BasisIndex, Rational>;

pub fn apply_functional(phi: &Functional, x: &KNExpansion) -> Rational {
    x.iter().filter_map(|(k, c)| phi.get(k).map(|v| v * c)).sum()
}

/// All basis indices of the given weights with degree in `window`.
pub fn basis_indices(weights: &[i64], n_punct: usize, window: (i64, i64)) -> Vec<BasisIndex> {
    let mut out = Vec::new();
    for &w in weights {
        for n in window.0..=window.1 {
            for p in 1..=n_punct {
                out.push(BasisIndex::new(w, n, p));
            }
        }
    }
    out
}

/// `γ1(x,y) - γ2(x,y) = φ([x,y])` for all pairs of `indices`.
pub fn coboundary_equivalent(
    alg: &KnAlgebra,
    gamma1: impl Fn(BasisIndex, BasisIndex) -> Result<Rational>,
    gamma2: impl Fn(BasisIndex, BasisIndex) -> Result<Rational>,
    phi: &Functional,
    indices: &[BasisIndex],
) -> Result<bool> {
    for (i, x) in indices.iter().enumerate() {
        for y in &indices[i + 1..] {
            let lhs = gamma1(*x, *y)? - gamma2(*x, *y)?;
            let rhs = apply_functional(phi, &basis_bracket(alg, *x, *y)?);
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Solves for a functional `φ` with `γ1 - γ2 = φ∘[,]` on all pairs of
/// `indices`; `None` when the linear system is inconsistent.
pub fn find_coboundary(
    alg: &KnAlgebra,
    gamma1: impl Fn(BasisIndex, BasisIndex) -> Result<Rational>,
    gamma2: impl Fn(BasisIndex, BasisIndex) -> Result<Rational>,
    indices: &[BasisIndex],
) -> Result<Option<Functional>> {
    let mut rows: Vec<(KNExpansion, Rational)> = Vec::new();
    let mut unknowns = BTreeSet::new();
    for (i, x) in indices.iter().enumerate() {
        for y in &indices[i + 1..] {
            let br = basis_bracket(alg, *x, *y)?;
            let rhs = gamma1(*x, *y)? - gamma2(*x, *y)?;
            unknowns.extend(br.iter().map(|(k, _)| *k));
            rows.push((br, rhs));
        }
    }
    let unknowns: Vec<BasisIndex> = unknowns.into_iter().collect();
    let col: BTreeMap<BasisIndex, usize> = unknowns.iter().enumerate().map(|(i, k)| (*k, i)).collect();
    let mut a = Vec::with_capacity(rows.len());
    let mut b = Vec::with_capacity(rows.len());
    for (br, rhs) in rows {
        let mut row = vec![Rational::zero(); unknowns.len()];
        for (k, c) in br.iter() {
            row[col[k]] = c.clone();
        }
        a.push(row);
        b.push(rhs);
    }
    if unknowns.is_empty() {
        return Ok(if b.iter().all(|x| x.is_zero()) { Some(Functional::new()) } else { None });
    }
    Ok(linalg::solve(&a, &b).map(|x| {
        unknowns.into_iter().zip(x).filter(|(_, v)| !v.is_zero()).collect()
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InvarianceReport {
    /// `c(e.A, B) + c(A, e.B) = 0` on all samples.
    pub derivation: bool,
    /// `c(e.A, B) = c(A, e.B)` on all samples.
    pub literal: bool,
}

/// Invariance of a bilinear form `c` on functions under vector fields.
pub fn check_l_invariance(
    c: impl Fn(&FormElement, &FormElement) -> Result<Rational>,
    fields: &[FormElement],
    functions: &[(FormElement, FormElement)],
) -> Result<InvarianceReport> {
    let mut rep = InvarianceReport { derivation: true, literal: true };
    for e in fields {
        for (a, b) in functions {
            let left = c(&lie_derivative_form(e, a)?, b)?;
            let right = c(a, &lie_derivative_form(e, b)?)?;
            if !(&left + &right).is_zero() {
                rep.derivation = false;
            }
            if left != right {
                rep.literal = false;
            }
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse_rational_function;
    use crate::basis::{function_basis, vector_field_basis};

    #[test]
    fn laurent_values() {
        let g = Geometry::standard(1);
        let r = ProjectiveConnection::zero(&g);
        let t = AffineConnection::zero(&g);
        for n in -4..=4 {
            for m in -4..=4 {
                let a = function_basis(&g, n, 1).unwrap();
                let b = function_basis(&g, m, 1).unwrap();
                let want = if n + m == 0 { int(m) } else { int(0) };
                assert_eq!(cocycle_a(&a, &b).unwrap(), want);
                let e = vector_field_basis(&g, n, 1).unwrap();
                let f = vector_field_basis(&g, m, 1).unwrap();
                let want = if n + m == 0 { int(n * n * n - n) } else { int(0) };
                assert_eq!(cocycle_l(&e, &f, &r).unwrap(), want);
                let want = if n + m == 0 { int(n * (n + 1)) } else { int(0) };
                assert_eq!(cocycle_mix(&e, &b, &t).unwrap(), want);
            }
        }
    }

    #[test]
    fn virasoro_identity() {
        let g = Geometry::standard(1);
        let r = ProjectiveConnection::zero(&g);
        let fields: Vec<FormElement> = (-2..=2).map(|n| vector_field_basis(&g, n, 1).unwrap()).collect();
        let mut triples = Vec::new();
        for a in &fields {
            for b in &fields {
                for c in &fields {
                    triples.push((a.clone(), b.clone(), c.clone()));
                }
            }
        }
        let rep = check_cocycle_identity(
            |x, y| cocycle_l(x, y, &r),
            |x, y| bracket_form(x, y),
            &triples,
        )
        .unwrap();
        assert!(rep.holds);
    }

    #[test]
    fn locality_laurent() {
        let g = Geometry::standard(1);
        let gam = GeometricCocycle::function(&g);
        let w = check_locality(|x, y| gam.eval_basis(&g, x, y), (0, 0), 1, (-4, 4)).unwrap();
        assert_eq!(w, Some(LocalityWindow { m1: 0, m2: 0 }));
    }

    #[test]
    fn projective_connection_shift_is_coboundary() {
        let g = Geometry::standard(1);
        let alg = KnAlgebra::new(g.clone());
        let zero = GeometricCocycle::vector_field(&g);
        let r = ProjectiveConnection::new(&parse_rational_function("3").unwrap(), &g).unwrap();
        let shifted = zero.clone().with_connections(r, AffineConnection::zero(&g));
        let idx = basis_indices(&[-1], 1, (-3, 3));
        let phi = find_coboundary(&alg, |x, y| shifted.eval_basis(&g, x, y), |x, y| zero.eval_basis(&g, x, y), &idx)
            .unwrap()
            .expect("cohomologous");
        assert!(coboundary_equivalent(&alg, |x, y| shifted.eval_basis(&g, x, y), |x, y| zero.eval_basis(&g, x, y), &phi, &idx).unwrap());
    }

    #[test]
    fn doubling_is_not_a_coboundary() {
        let g = Geometry::standard(2);
        let alg = KnAlgebra::new(g.clone());
        let one = GeometricCocycle::function(&g);
        let two = one.scaled(&int(2));
        let idx = basis_indices(&[0], 2, (-2, 2));
        let r = find_coboundary(&alg, |x, y| two.eval_basis(&g, x, y), |x, y| one.eval_basis(&g, x, y), &idx).unwrap();
        assert!(r.is_none());
    }

    #[test]
    fn derivation_identity_holds_and_literal_fails() {
        let g = Geometry::standard(2);
        let fields: Vec<_> = (-1..=1).map(|n| vector_field_basis(&g, n, 1).unwrap()).collect();
        let mut funcs = Vec::new();
        for n in -2..=2 {
            funcs.push((function_basis(&g, n, 1).unwrap(), function_basis(&g, -n, 2).unwrap()));
        }
        let rep = check_l_invariance(cocycle_a, &fields, &funcs).unwrap();
        assert!(rep.derivation);
        assert!(!rep.literal);
        let rep = check_l_invariance(cocycle_a, &[FormElement::zero(-1, &g)], &funcs).unwrap();
        assert!(rep.derivation && rep.literal);
    }

    #[test]
    fn affine_connection_pole_bound() {
        let g = Geometry::standard(1);
        assert!(AffineConnection::new(&parse_rational_function("z").unwrap(), &g).is_ok());
        assert!(AffineConnection::new(&parse_rational_function("z^2").unwrap(), &g).is_err());
        assert!(AffineConnection::new(&parse_rational_function("1/(z-3)").unwrap(), &g).is_err());
    }
}

//! Sections of the trivial rank-`r` bundle, their linear enumeration and
//! the fermion representation of currents and vector fields.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::affine::{dg_bracket, AlgebraTag, CurrentElement, DgCocycle, DgElement, Matrix, MatrixElement};
use crate::arith::{Order, Rational};
use crate::basis::{expand_in_basis, function_basis, BasisIndex, FormElement, Geometry, KNExpansion};
use crate::error::{Error, Result};
use crate::linalg;
use crate::structure::{AlmostGradingBounds, KnAlgebra, TableKind};
use crate::wedge::monomial::{WedgeMonomial, WedgeVector};
use crate::wedge::operator::{commutator_apply, wedge_apply, BandedOperator};

/// `(n, p, j, a)`: degree, 1-based puncture, bundle component (0-based) and
/// 1-based representation basis index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SectionIndex {
    pub n: i64,
    pub p: usize,
    pub j: usize,
    pub a: usize,
}

/// `(N, r, dim V)` with block size `B = N r dim V`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Shape {
    pub n_punctures: usize,
    pub r: usize,
    pub dim: usize,
}

impl Shape {
    pub fn new(n_punctures: usize, r: usize, dim: usize) -> Result<Self> {
        if n_punctures == 0 || r == 0 || dim == 0 {
            return Err(Error::ShapeMismatch("shape components must be positive".into()));
        }
        Ok(Shape { n_punctures, r, dim })
    }

    pub fn block(&self) -> i64 {
        (self.n_punctures * self.r * self.dim) as i64
    }

    pub fn linear_index(&self, s: SectionIndex) -> Result<i64> {
        if s.p == 0 || s.p > self.n_punctures || s.j >= self.r || s.a == 0 || s.a > self.dim {
            return Err(Error::IndexOutOfRange(format!("section index {s:?} for shape {self:?}")));
        }
        let inner = ((s.p - 1) * self.r + s.j) * self.dim + (s.a - 1);
        Ok(s.n * self.block() + inner as i64)
    }

    pub fn section_index(&self, m: i64) -> SectionIndex {
        let b = self.block();
        let n = m.div_euclid(b);
        let q = m.rem_euclid(b) as usize;
        let a = q % self.dim + 1;
        let pj = q / self.dim;
        SectionIndex { n, p: pj / self.r + 1, j: pj % self.r, a }
    }
}

#[derive(Clone, Debug)]
enum Tau {
    Fundamental,
    Explicit { basis: Vec<Matrix>, images: Vec<Matrix> },
}

/// Bundle rank, representation `τ` of `g` and connection form.
#[derive(Clone, Debug)]
pub struct RepresentationData {
    pub r: usize,
    pub tag: AlgebraTag,
    /// Size of the matrices of `g`.
    pub l: usize,
    tau: Tau,
    dim: usize,
    connection: Option<Vec<Vec<FormElement>>>,
}

impl RepresentationData {
    /// Defining representation of `gl(l)`, `sl(l)` or `gl(1)` on `C^l`.
    pub fn fundamental(tag: AlgebraTag, l: usize, r: usize) -> Result<Self> {
        if tag == AlgebraTag::GL1 && l != 1 {
            return Err(Error::ShapeMismatch("gl(1) has l = 1".into()));
        }
        if l == 0 || r == 0 {
            return Err(Error::ShapeMismatch("rank and size must be positive".into()));
        }
        Ok(RepresentationData { r, tag, l, tau: Tau::Fundamental, dim: l, connection: None })
    }

    /// `τ` given on a basis of `g`; checked to be a homomorphism.
    pub fn explicit(tag: AlgebraTag, l: usize, r: usize, basis: Vec<Matrix>, images: Vec<Matrix>) -> Result<Self> {
        let dim = images.first().map(|m| m.size()).ok_or_else(|| Error::Config("empty representation basis".into()))?;
        if basis.len() != images.len() || images.iter().any(|m| m.size() != dim) || basis.iter().any(|m| m.size() != l) {
            return Err(Error::ShapeMismatch("representation basis and images disagree".into()));
        }
        let rep = RepresentationData { r, tag, l, tau: Tau::Explicit { basis, images }, dim, connection: None };
        rep.check_homomorphism()?;
        Ok(rep)
    }

    /// Attaches an `r x r` matrix of one-forms with at most simple poles at
    /// the punctures and at infinity.
    pub fn with_connection(mut self, forms: Vec<Vec<FormElement>>) -> Result<Self> {
        if forms.len() != self.r || forms.iter().any(|row| row.len() != self.r) {
            return Err(Error::ShapeMismatch("connection form must be r x r".into()));
        }
        for w in forms.iter().flatten() {
            w.check_weight(1)?;
            for i in 0..w.geometry().num_punctures() {
                if let Order::Finite(o) = w.func().order_at_puncture(i) {
                    if o < -1 {
                        return Err(Error::Invariant(format!("connection form has a pole of order {} at P_{}", -o, i + 1)));
                    }
                }
            }
            if let Order::Finite(o) = w.order_at_infinity() {
                if o < -1 {
                    return Err(Error::Invariant("connection form has a multiple pole at infinity".into()));
                }
            }
        }
        self.connection = Some(forms);
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn connection(&self) -> Option<&Vec<Vec<FormElement>>> {
        self.connection.as_ref()
    }

    pub fn tau(&self, x: &Matrix) -> Result<Matrix> {
        if x.size() != self.l {
            return Err(Error::ShapeMismatch(format!("matrix of size {} for g of size {}", x.size(), self.l)));
        }
        match &self.tau {
            Tau::Fundamental => Ok(x.clone()),
            Tau::Explicit { basis, images } => {
                let rows: Vec<Vec<Rational>> = (0..self.l * self.l)
                    .map(|e| basis.iter().map(|b| b.get(e / self.l, e % self.l).clone()).collect())
                    .collect();
                let rhs: Vec<Rational> = (0..self.l * self.l).map(|e| x.get(e / self.l, e % self.l).clone()).collect();
                let c = linalg::solve(&rows, &rhs).ok_or_else(|| Error::Invariant("matrix outside the span of the representation basis".into()))?;
                let mut out = Matrix::zero(self.dim);
                for (ci, im) in c.iter().zip(images) {
                    out = out.add(&im.scale(ci));
                }
                Ok(out)
            }
        }
    }

    /// `τ([x, y]) = [τ(x), τ(y)]` on all basis pairs.
    pub fn check_homomorphism(&self) -> Result<()> {
        if let Tau::Explicit { basis, .. } = &self.tau {
            for x in basis {
                for y in basis {
                    let lhs = self.tau(&x.commutator(y))?;
                    let rhs = self.tau(x)?.commutator(&self.tau(y)?);
                    if lhs != rhs {
                        return Err(Error::Invariant(format!("τ is not a homomorphism on [{x}, {y}]")));
                    }
                }
            }
        }
        Ok(())
    }
}

/// `ψ_{n,j,p} = A_{n,p} e_j` as its `r` components, with its asymptotics
/// checked.
pub fn section_basis(geom: &Arc<Geometry>, rep: &RepresentationData, n: i64, j: usize, p: usize) -> Result<Vec<FormElement>> {
    if j >= rep.r {
        return Err(Error::IndexOutOfRange(format!("bundle component {j} outside 0..{}", rep.r)));
    }
    let a = function_basis(geom, n, p)?;
    for q in 0..geom.num_punctures() {
        let want = n + 1 - i64::from(q + 1 == p);
        if a.func().order_at_puncture(q) != Order::Finite(want) {
            return Err(Error::Invariant(format!("section order at P_{}", q + 1)));
        }
    }
    let nn = geom.num_punctures() as i64;
    if a.order_at_infinity() != Order::Finite(-n * nn - nn + 1) {
        return Err(Error::Invariant("section order at infinity".into()));
    }
    Ok((0..rep.r).map(|i| if i == j { a.clone() } else { FormElement::zero(0, geom) }).collect())
}

/// Fermion module: the wedge space built on sections `ψ_{n,p,j} ⊗ v_a`.
pub struct FermionModule {
    alg: Arc<KnAlgebra>,
    rep: RepresentationData,
    shape: Shape,
    bounds: AlmostGradingBounds,
}

impl FermionModule {
    pub fn new(alg: Arc<KnAlgebra>, rep: RepresentationData) -> Result<Self> {
        let n = alg.geometry().num_punctures();
        if let Some(c) = rep.connection() {
            if c.iter().flatten().any(|w| !crate::basis::same_geometry(w.geometry(), alg.geometry())) {
                return Err(Error::GeometryMismatch);
            }
        }
        let shape = Shape::new(n, rep.r, rep.dim())?;
        Ok(FermionModule { alg, rep, shape, bounds: AlmostGradingBounds::a_priori(n) })
    }

    pub fn algebra(&self) -> &Arc<KnAlgebra> {
        &self.alg
    }

    pub fn geometry(&self) -> &Arc<Geometry> {
        self.alg.geometry()
    }

    pub fn representation(&self) -> &RepresentationData {
        &self.rep
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    /// Lowest degree `H` above which every degree-`H` current or field
    /// kills the monomial.
    pub fn annihilation_degree(&self, phi: &WedgeMonomial) -> i64 {
        let b = self.shape.block();
        ((phi.gap() + b - 1).div_euclid(b)).max(0)
    }

    pub fn vector_annihilation_degree(&self, v: &WedgeVector) -> i64 {
        v.iter().map(|(m, _)| self.annihilation_degree(m)).max().unwrap_or(0)
    }

    fn band_for(&self, lo_deg: i64, hi_deg: i64) -> (i64, i64) {
        let b = self.shape.block();
        (lo_deg * b - (b - 1), hi_deg * b + (b - 1))
    }

    /// Operator of `Σ_k τ(x_k) ⊗ A_k` given as `(A_k, τ(x_k))` pairs.
    fn current_from_terms(&self, terms: Vec<(BasisIndex, Matrix)>) -> Result<BandedOperator> {
        let terms: Vec<_> = terms.into_iter().filter(|(_, m)| !m.is_zero()).collect();
        if terms.is_empty() {
            return Ok(BandedOperator::zero());
        }
        let lo = terms.iter().map(|(k, _)| k.degree).min().unwrap();
        let hi = terms.iter().map(|(k, _)| k.degree).max().unwrap() + self.bounds.k;
        let (blo, bhi) = self.band_for(lo, hi);
        let alg = self.alg.clone();
        let shape = self.shape;
        Ok(BandedOperator::new(blo, bhi, move |col| {
            let s = shape.section_index(col);
            let mut out = Vec::new();
            for (k, tx) in &terms {
                let prod = alg.basis_op(TableKind::FunctionProduct, *k, BasisIndex::new(0, s.n, s.p))?;
                for (h, v) in prod.iter() {
                    for b in 0..shape.dim {
                        let t = tx.get(b, s.a - 1);
                        if t.is_zero() {
                            continue;
                        }
                        let row = shape.linear_index(SectionIndex { n: h.degree, p: h.puncture, j: s.j, a: b + 1 })?;
                        out.push((row, v * t));
                    }
                }
            }
            Ok(out)
        }))
    }

    /// `x ⊗ A` acting by `(A s) ⊗ τ(x) v`.
    pub fn current_operator(&self, x: &Matrix, a: &KNExpansion) -> Result<BandedOperator> {
        if a.weight != 0 {
            return Err(Error::WeightMismatch { expected: 0, found: a.weight });
        }
        let tx = self.rep.tau(x)?;
        self.current_from_terms(a.iter().map(|(k, c)| (*k, tx.scale(c))).collect())
    }

    pub fn matrix_of_current(&self, x: &MatrixElement, a: &FormElement) -> Result<BandedOperator> {
        a.check_weight(0)?;
        self.current_operator(&x.matrix, &expand_in_basis(a)?)
    }

    pub fn current_element_operator(&self, c: &CurrentElement) -> Result<BandedOperator> {
        let mut terms = Vec::new();
        for (k, m) in c.terms() {
            terms.push((*k, self.rep.tau(m)?));
        }
        self.current_from_terms(terms)
    }

    /// `∇_e (A e_j) = (e.A) e_j + A Σ_i ω_ij(e) e_i`.
    pub fn field_operator(&self, e: &KNExpansion) -> Result<BandedOperator> {
        if e.weight != -1 {
            return Err(Error::WeightMismatch { expected: -1, found: e.weight });
        }
        let Some((dlo, dhi)) = e.degree_window() else {
            return Ok(BandedOperator::zero());
        };
        let (mut lo, mut hi) = (dlo, dhi + self.bounds.m);
        let r = self.rep.r;
        let mut conn: Vec<Vec<KNExpansion>> = vec![vec![KNExpansion::zero(0); r]; r];
        if let Some(w) = self.rep.connection() {
            let ef = self.alg.form(e)?;
            for i in 0..r {
                for j in 0..r {
                    if w[i][j].is_zero() {
                        continue;
                    }
                    let g = expand_in_basis(&w[i][j].try_mul(&ef)?.retag(0))?;
                    if let Some((glo, ghi)) = g.degree_window() {
                        lo = lo.min(glo);
                        hi = hi.max(ghi + self.bounds.k);
                    }
                    conn[i][j] = g;
                }
            }
        }
        let (blo, bhi) = self.band_for(lo, hi);
        let alg = self.alg.clone();
        let shape = self.shape;
        let e = e.clone();
        Ok(BandedOperator::new(blo, bhi, move |col| {
            let s = shape.section_index(col);
            let a = BasisIndex::new(0, s.n, s.p);
            let mut out = Vec::new();
            let mut push = |h: &BasisIndex, i: usize, v: Rational| -> Result<()> {
                let row = shape.linear_index(SectionIndex { n: h.degree, p: h.puncture, j: i, a: s.a })?;
                out.push((row, v));
                Ok(())
            };
            for (ie, c) in e.iter() {
                for (h, v) in alg.basis_op(TableKind::FieldOnForm, *ie, a)?.iter() {
                    push(h, s.j, v * c)?;
                }
            }
            for (i, row) in conn.iter().enumerate() {
                for (k, c) in row[s.j].iter() {
                    for (h, v) in alg.basis_op(TableKind::FunctionProduct, *k, a)?.iter() {
                        push(h, i, v * c)?;
                    }
                }
            }
            Ok(out)
        }))
    }

    pub fn matrix_of_field(&self, e: &FormElement) -> Result<BandedOperator> {
        e.check_weight(-1)?;
        self.field_operator(&expand_in_basis(e)?)
    }

    /// Operator of the current and vector field parts; the central part is
    /// not represented.
    pub fn dg_operator(&self, x: &DgElement) -> Result<BandedOperator> {
        let c = self.current_element_operator(&x.current)?;
        let f = self.field_operator(&x.vector_field)?;
        Ok(BandedOperator::linear_combination(vec![(Rational::one(), c), (Rational::one(), f)]))
    }

    /// Central defect `[r(X), r(Y)] - r([X, Y])` on the charge sector.
    ///
    /// Computed on the vacuum and required to be the same scalar on six
    /// further monomials.
    pub fn extract_cocycle(&self, x: &DgElement, y: &DgElement, charge: i64) -> Result<Rational> {
        let mut xy = dg_bracket(&self.alg, x, y, &DgCocycle::standard(self.geometry()))?;
        xy.central = Rational::zero();
        let ox = self.dg_operator(x)?;
        let oy = self.dg_operator(y)?;
        let oxy = self.dg_operator(&xy)?;
        self.defect_scalar(&ox, &oy, &oxy, &WedgeMonomial::enumerate(charge, 3))
    }

    /// Common scalar of `[a, b] - c` on the sample monomials.
    pub fn defect_scalar(&self, a: &BandedOperator, b: &BandedOperator, c: &BandedOperator, samples: &[WedgeMonomial]) -> Result<Rational> {
        let mut scalar: Option<Rational> = None;
        for phi in samples {
            let v = WedgeVector::monomial(phi.clone());
            let d = commutator_apply(a, b, &v)?.sub(&wedge_apply(c, &v)?);
            let s = d.ratio_to(&v).ok_or_else(|| Error::NonScalarDefect(format!("defect on {phi} is {d}")))?;
            match &scalar {
                None => scalar = Some(s),
                Some(s0) if *s0 != s => {
                    return Err(Error::NonScalarDefect(format!("defect {s} on {phi} differs from {s0}")));
                }
                _ => {}
            }
        }
        Ok(scalar.unwrap_or_else(Rational::zero))
    }

    /// `α` with `[x(A), y(B)] - [x, y](AB) = α tr(xy) γ^A(A, B)` on the
    /// charge-zero sector, probed on a current pair of degrees `±1`.
    pub fn current_level(&self) -> Result<Rational> {
        let x = probe_matrix(self.rep.tag, self.rep.l);
        let xe = MatrixElement::new(x.clone(), self.rep.tag)?;
        let tr = x.mul(&x).trace();
        let n = self.geometry().num_punctures();
        for p in 1..=n {
            for q in 1..=n {
                let g = crate::affine::gamma_a_basis(&self.alg, BasisIndex::new(0, 1, p), BasisIndex::new(0, -1, q))?;
                if g.is_zero() {
                    continue;
                }
                let a = DgElement::from_current(CurrentElement::basis(&xe, 1, p));
                let b = DgElement::from_current(CurrentElement::basis(&xe, -1, q));
                let d = self.extract_cocycle(&a, &b, 0)?;
                return Ok(d / (tr * g));
            }
        }
        Err(Error::Invariant("no probe pair with nonzero function cocycle".into()))
    }
}

/// Matrix with `tr(x^2) ≠ 0` in the algebra.
pub fn probe_matrix(tag: AlgebraTag, l: usize) -> Matrix {
    match tag {
        AlgebraTag::SL => Matrix::unit(l, 0, 0).sub(&Matrix::unit(l, 1 % l, 1 % l)),
        _ => Matrix::unit(l, 0, 0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;
    use crate::basis::vector_field_basis;

    fn module(n: usize, tag: AlgebraTag, l: usize) -> FermionModule {
        let alg = Arc::new(KnAlgebra::new(Geometry::standard(n)));
        FermionModule::new(alg, RepresentationData::fundamental(tag, l, 1).unwrap()).unwrap()
    }

    fn a(n: i64, p: usize) -> KNExpansion {
        KNExpansion::basis(BasisIndex::new(0, n, p))
    }

    fn e(n: i64, p: usize) -> KNExpansion {
        KNExpansion::basis(BasisIndex::new(-1, n, p))
    }

    #[test]
    fn linear_index_roundtrip() {
        let s = Shape::new(1, 1, 1).unwrap();
        assert_eq!(s.linear_index(SectionIndex { n: 5, p: 1, j: 0, a: 1 }).unwrap(), 5);
        let s = Shape::new(2, 1, 1).unwrap();
        assert_eq!(s.linear_index(SectionIndex { n: 0, p: 2, j: 0, a: 1 }).unwrap(), 1);
        let s = Shape::new(3, 2, 2).unwrap();
        for m in -100..=100 {
            assert_eq!(s.linear_index(s.section_index(m)).unwrap(), m);
        }
        assert!(s.linear_index(SectionIndex { n: 0, p: 4, j: 0, a: 1 }).is_err());
    }

    #[test]
    fn section_asymptotics() {
        let geom = Geometry::standard(2);
        let rep = RepresentationData::fundamental(AlgebraTag::GL, 1, 2).unwrap();
        let s = section_basis(&geom, &rep, 0, 1, 1).unwrap();
        assert!(s[0].is_zero());
        assert_eq!(s[1].to_rational_function().to_string(), crate::arith::parse_rational_function("1-z").unwrap().to_string());
        assert_eq!(s[1].order_at_infinity(), Order::Finite(-1));
        assert!(section_basis(&geom, &rep, 0, 2, 1).is_err());
    }

    #[test]
    fn laurent_shift_and_field() {
        let m = module(1, AlgebraTag::GL1, 1);
        let one = Matrix::identity(1);
        let op = m.current_operator(&one, &a(3, 1)).unwrap();
        assert_eq!(*op.column(-2).unwrap(), vec![(1, int(1))]);
        let f = m.field_operator(&e(2, 1)).unwrap();
        assert_eq!(*f.column(5).unwrap(), vec![(7, int(5))]);
        assert!(m.current_operator(&Matrix::zero(1), &a(1, 1)).unwrap().column(0).unwrap().is_empty());
    }

    #[test]
    fn block_diagonal_constant_current() {
        let m = module(1, AlgebraTag::SL, 2);
        let h = Matrix::from_ints(&[&[0, 1], &[0, 0]]).unwrap();
        let op = m.current_operator(&h, &a(0, 1)).unwrap();
        // column (n, a=2) maps to (n, a=1)
        assert_eq!(*op.column(2 * 3 + 1).unwrap(), vec![(6, int(1))]);
        assert!(op.column(6).unwrap().is_empty());
    }

    #[test]
    fn heisenberg_level() {
        let m = module(1, AlgebraTag::GL1, 1);
        let one = MatrixElement::new(Matrix::identity(1), AlgebraTag::GL1).unwrap();
        let x = DgElement::from_current(CurrentElement::basis(&one, 1, 1));
        let y = DgElement::from_current(CurrentElement::basis(&one, -1, 1));
        assert_eq!(m.extract_cocycle(&x, &y, 0).unwrap(), int(1));
        assert_eq!(m.extract_cocycle(&x, &x, 0).unwrap(), int(0));
        let z = DgElement::from_current(CurrentElement::basis(&one, 2, 1));
        assert_eq!(m.extract_cocycle(&z, &y, 0).unwrap(), int(0));
        assert_eq!(m.current_level().unwrap(), int(-1));
    }

    #[test]
    fn field_flatness() {
        let m = module(2, AlgebraTag::GL1, 1);
        let geom = m.geometry().clone();
        let e1 = vector_field_basis(&geom, 1, 1).unwrap();
        let e2 = vector_field_basis(&geom, -1, 2).unwrap();
        let br = crate::structure::bracket(&e1, &e2).unwrap();
        let o1 = m.matrix_of_field(&e1).unwrap();
        let o2 = m.matrix_of_field(&e2).unwrap();
        let o12 = m.field_operator(&br).unwrap();
        for col in -6..6 {
            let mut lhs = std::collections::BTreeMap::new();
            for (k, x) in o2.column(col).unwrap().iter() {
                for (i, y) in o1.column(*k).unwrap().iter() {
                    *lhs.entry(*i).or_insert_with(Rational::zero) += x * y;
                }
            }
            for (k, x) in o1.column(col).unwrap().iter() {
                for (i, y) in o2.column(*k).unwrap().iter() {
                    *lhs.entry(*i).or_insert_with(Rational::zero) -= x * y;
                }
            }
            lhs.retain(|_, v| !v.is_zero());
            let rhs: std::collections::BTreeMap<i64, Rational> = o12.column(col).unwrap().iter().cloned().collect();
            assert_eq!(lhs, rhs, "column {col}");
        }
    }
}

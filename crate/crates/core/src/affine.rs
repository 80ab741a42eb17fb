//! Matrix current algebras `g ⊗ A`, their central extensions and the
//! semidirect sum with the vector field algebra.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::arith::rational::{int, to_pq, Rational};
use crate::arith::Order;
use crate::basis::{expand_in_basis, BasisIndex, FormElement, Geometry, KNExpansion};
use crate::cocycles::{AffineConnection, GeometricCocycle, ProjectiveConnection};
use crate::error::{Error, Result};
use crate::structure::{classify, AlmostGradingBounds, KnAlgebra, Part, SplitVariant, TableKind};

/// Square matrix over the rationals, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    r: usize,
    entries: Vec<Rational>,
}

impl Matrix {
    pub fn zero(r: usize) -> Self {
        Matrix { r, entries: vec![Rational::zero(); r * r] }
    }

    pub fn identity(r: usize) -> Self {
        let mut m = Self::zero(r);
        for i in 0..r {
            m.entries[i * r + i] = Rational::one();
        }
        m
    }

    /// Elementary matrix `E_ij` (0-based).
    pub fn unit(r: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zero(r);
        m.entries[i * r + j] = Rational::one();
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        if r == 0 || rows.iter().any(|row| row.len() != r) {
            return Err(Error::ShapeMismatch("matrix must be square and nonempty".into()));
        }
        Ok(Matrix { r, entries: rows.into_iter().flatten().collect() })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|row| row.iter().map(|&x| int(x)).collect()).collect())
    }

    pub fn size(&self) -> usize {
        self.r
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.r + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.entries[i * self.r + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<Rational>> {
        self.entries.chunks(self.r).map(|c| c.to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|x| x.is_zero())
    }

    pub fn trace(&self) -> Rational {
        (0..self.r).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Matrix { r: self.r, entries: self.entries.iter().map(|x| x * c).collect() }
    }

    pub fn add(&self, o: &Self) -> Self {
        Matrix { r: self.r, entries: self.entries.iter().zip(&o.entries).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Matrix { r: self.r, entries: self.entries.iter().zip(&o.entries).map(|(a, b)| a - b).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let r = self.r;
        let mut out = Self::zero(r);
        for i in 0..r {
            for k in 0..r {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..r {
                    out.entries[i * r + j] += a * o.get(k, j);
                }
            }
        }
        out
    }

    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows()
            .iter()
            .map(|r| format!("[{}]", r.iter().map(to_pq).collect::<Vec<_>>().join(", ")))
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AlgebraTag {
    GL,
    SL,
    GL1,
}

impl AlgebraTag {
    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "GL" => Ok(AlgebraTag::GL),
            "SL" => Ok(AlgebraTag::SL),
            "GL1" => Ok(AlgebraTag::GL1),
            _ => Err(Error::Config(format!("unknown algebra tag `{s}`"))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            AlgebraTag::GL => "GL",
            AlgebraTag::SL => "SL",
            AlgebraTag::GL1 => "GL1",
        }
    }
}

/// Element of `gl(r)`, `sl(r)` or `gl(1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixElement {
    pub matrix: Matrix,
    pub tag: AlgebraTag,
}

impl MatrixElement {
    pub fn new(matrix: Matrix, tag: AlgebraTag) -> Result<Self> {
        match tag {
            AlgebraTag::SL if !matrix.trace().is_zero() => {
                return Err(Error::Invariant("sl matrix with nonzero trace".into()))
            }
            AlgebraTag::GL1 if matrix.size() != 1 => return Err(Error::ShapeMismatch("gl(1) needs a 1x1 matrix".into())),
            _ => {}
        }
        Ok(MatrixElement { matrix, tag })
    }
}

/// The bilinear form `a tr(xy) + b tr(x)tr(y)` on `gl(r)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearForm {
    pub trace: Rational,
    pub trace_trace: Rational,
}

impl Default for BilinearForm {
    fn default() -> Self {
        BilinearForm::trace()
    }
}

impl BilinearForm {
    pub fn trace() -> Self {
        BilinearForm { trace: int(1), trace_trace: int(0) }
    }

    pub fn trace_trace() -> Self {
        BilinearForm { trace: int(0), trace_trace: int(1) }
    }

    pub fn eval(&self, x: &Matrix, y: &Matrix) -> Rational {
        let mut v = Rational::zero();
        if !self.trace.is_zero() {
            v += &self.trace * x.mul(y).trace();
        }
        if !self.trace_trace.is_zero() {
            v += &self.trace_trace * x.trace() * y.trace();
        }
        v
    }
}

/// `Σ_k M_k ⊗ A_k` over function basis indices `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurrentElement {
    pub tag: AlgebraTag,
    pub rank: usize,
    terms: BTreeMap<BasisIndex, Matrix>,
}

impl CurrentElement {
    pub fn zero(tag: AlgebraTag, rank: usize) -> Self {
        CurrentElement { tag, rank, terms: BTreeMap::new() }
    }

    /// `x ⊗ A_{n,p}`
    pub fn basis(x: &MatrixElement, degree: i64, p: usize) -> Self {
        let mut c = Self::zero(x.tag, x.matrix.size());
        c.add_term(BasisIndex::new(0, degree, p), x.matrix.clone());
        c
    }

    /// `x ⊗ f`
    pub fn tensor(x: &MatrixElement, f: &FormElement) -> Result<Self> {
        f.check_weight(0)?;
        Ok(Self::from_expansion(x, &expand_in_basis(f)?))
    }

    pub fn from_expansion(x: &MatrixElement, f: &KNExpansion) -> Self {
        let mut c = Self::zero(x.tag, x.matrix.size());
        for (k, v) in f.iter() {
            c.add_term(*k, x.matrix.scale(v));
        }
        c
    }

    /// Sum of `x_i ⊗ f_i`.
    pub fn from_terms(terms: &[(MatrixElement, FormElement)]) -> Result<Self> {
        let first = terms.first().ok_or_else(|| Error::Config("empty term list".into()))?;
        let mut c = Self::zero(first.0.tag, first.0.matrix.size());
        for (x, f) in terms {
            c = c.add(&Self::tensor(x, f)?)?;
        }
        Ok(c)
    }

    pub fn add_term(&mut self, k: BasisIndex, m: Matrix) {
        if m.is_zero() {
            return;
        }
        let e = self.terms.entry(k).or_insert_with(|| Matrix::zero(m.size()));
        *e = e.add(&m);
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn terms(&self) -> &BTreeMap<BasisIndex, Matrix> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.tag != o.tag {
            return Err(Error::TagMismatch(format!("{} vs {}", self.tag.name(), o.tag.name())));
        }
        if self.rank != o.rank {
            return Err(Error::ShapeMismatch(format!("rank {} vs {}", self.rank, o.rank)));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let mut out = self.clone();
        for (k, m) in &o.terms {
            out.add_term(*k, m.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.tag, self.rank);
        for (k, m) in &self.terms {
            out.add_term(*k, m.scale(c));
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.scale(&-Rational::one()))
    }

    /// Function in entry `(i, j)`, as an expansion.
    pub fn entry(&self, i: usize, j: usize) -> KNExpansion {
        let mut e = KNExpansion::zero(0);
        for (k, m) in &self.terms {
            e.add_term(*k, m.get(i, j).clone());
        }
        e
    }

    /// `e.(x ⊗ A) = x ⊗ (e.A)`
    pub fn act_by_field(&self, alg: &KnAlgebra, e: &KNExpansion) -> Result<Self> {
        let mut out = Self::zero(self.tag, self.rank);
        for (ie, ce) in e.iter() {
            for (k, m) in &self.terms {
                let t = alg.basis_op(TableKind::FieldOnForm, *ie, *k)?;
                for (h, c) in t.iter() {
                    out.add_term(*h, m.scale(&(c * ce)));
                }
            }
        }
        Ok(out)
    }
}

/// `X + c t` in the central extension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineElement {
    pub current: CurrentElement,
    pub central: Rational,
}

impl AffineElement {
    pub fn new(current: CurrentElement, central: Rational) -> Self {
        AffineElement { current, central }
    }

    pub fn current(current: CurrentElement) -> Self {
        AffineElement { current, central: Rational::zero() }
    }

    pub fn central(tag: AlgebraTag, rank: usize, c: Rational) -> Self {
        AffineElement { current: CurrentElement::zero(tag, rank), central: c }
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        Ok(AffineElement { current: self.current.add(&o.current)?, central: &self.central + &o.central })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        AffineElement { current: self.current.scale(c), central: &self.central * c }
    }

    pub fn is_zero(&self) -> bool {
        self.current.is_zero() && self.central.is_zero()
    }
}

/// `γ^A` on a pair of function basis elements.
pub fn gamma_a_basis(alg: &KnAlgebra, a: BasisIndex, b: BasisIndex) -> Result<Rational> {
    GeometricCocycle::function(alg.geometry()).eval_basis(alg.geometry(), a, b)
}

/// `[x⊗f, y⊗g] = [x,y]⊗fg + α(x,y) γ^A(f,g) t`
pub fn affine_bracket(alg: &KnAlgebra, x: &AffineElement, y: &AffineElement, form: &BilinearForm) -> Result<AffineElement> {
    x.current.check(&y.current)?;
    let (current, central) = current_bracket(alg, &x.current, &y.current, form)?;
    Ok(AffineElement { current, central })
}

fn current_bracket(
    alg: &KnAlgebra,
    x: &CurrentElement,
    y: &CurrentElement,
    form: &BilinearForm,
) -> Result<(CurrentElement, Rational)> {
    let mut current = CurrentElement::zero(x.tag, x.rank);
    let mut central = Rational::zero();
    for (i, mx) in &x.terms {
        for (j, my) in &y.terms {
            let c = mx.commutator(my);
            if !c.is_zero() {
                let prod = alg.basis_op(TableKind::FunctionProduct, *i, *j)?;
                for (h, v) in prod.iter() {
                    current.add_term(*h, c.scale(v));
                }
            }
            let a = form.eval(mx, my);
            if !a.is_zero() {
                central += a * gamma_a_basis(alg, *i, *j)?;
            }
        }
    }
    Ok((current, central))
}

/// `[[x,y],z] + [[y,z],x] + [[z,x],y]`, zero in a Lie algebra.
pub fn jacobi_sum(alg: &KnAlgebra, x: &AffineElement, y: &AffineElement, z: &AffineElement, form: &BilinearForm) -> Result<AffineElement> {
    let a = affine_bracket(alg, &affine_bracket(alg, x, y, form)?, z, form)?;
    let b = affine_bracket(alg, &affine_bracket(alg, y, z, form)?, x, form)?;
    let c = affine_bracket(alg, &affine_bracket(alg, z, x, form)?, y, form)?;
    a.add(&b)?.add(&c)
}

/// Element of `g ⊗ A ⊕ L ⊕ C t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DgElement {
    pub current: CurrentElement,
    pub vector_field: KNExpansion,
    pub central: Rational,
}

impl DgElement {
    pub fn new(current: CurrentElement, vector_field: KNExpansion, central: Rational) -> Result<Self> {
        if vector_field.weight != -1 {
            return Err(Error::WeightMismatch { expected: -1, found: vector_field.weight });
        }
        Ok(DgElement { current, vector_field, central })
    }

    pub fn from_current(current: CurrentElement) -> Self {
        DgElement { current, vector_field: KNExpansion::zero(-1), central: Rational::zero() }
    }

    pub fn from_field(tag: AlgebraTag, rank: usize, e: KNExpansion) -> Self {
        DgElement { current: CurrentElement::zero(tag, rank), vector_field: e, central: Rational::zero() }
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        Ok(DgElement {
            current: self.current.add(&o.current)?,
            vector_field: self.vector_field.add(&o.vector_field),
            central: &self.central + &o.central,
        })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        DgElement { current: self.current.scale(c), vector_field: self.vector_field.scale(c), central: &self.central * c }
    }
}

/// Central data for the semidirect bracket.
#[derive(Clone, Debug)]
pub struct DgCocycle {
    pub form: BilinearForm,
    pub r: ProjectiveConnection,
    pub t: AffineConnection,
}

impl DgCocycle {
    pub fn standard(geom: &Arc<Geometry>) -> Self {
        DgCocycle { form: BilinearForm::trace(), r: ProjectiveConnection::zero(geom), t: AffineConnection::zero(geom) }
    }
}

/// `Σ tr(x_k) γ^m(e, A_k)`
fn mixed_central(alg: &KnAlgebra, e: &KNExpansion, c: &CurrentElement, t: &AffineConnection) -> Result<Rational> {
    let geom = alg.geometry();
    let mut gam = GeometricCocycle::mixing(geom);
    gam.t = t.clone();
    let mut total = Rational::zero();
    for (ie, ce) in e.iter() {
        for (k, m) in &c.terms {
            let tr = m.trace();
            if tr.is_zero() {
                continue;
            }
            total += tr * ce * gam.eval_basis(geom, *ie, *k)?;
        }
    }
    Ok(total)
}

/// Bracket in `g ⊗ A ⊕ L` with central terms `γ^L` on fields, `α γ^A` on
/// currents and `tr(x) γ^m` on mixed pairs.
pub fn dg_bracket(alg: &KnAlgebra, x: &DgElement, y: &DgElement, coc: &DgCocycle) -> Result<DgElement> {
    x.current.check(&y.current)?;
    let geom = alg.geometry();
    let (mut current, mut central) = current_bracket(alg, &x.current, &y.current, &coc.form)?;
    current = current.add(&y.current.act_by_field(alg, &x.vector_field)?)?;
    current = current.sub(&x.current.act_by_field(alg, &y.vector_field)?)?;
    let vector_field = alg.bracket(&x.vector_field, &y.vector_field)?;
    let mut gl = GeometricCocycle::vector_field(geom);
    gl.r = coc.r.clone();
    for (i, a) in x.vector_field.iter() {
        for (j, b) in y.vector_field.iter() {
            central += a * b * gl.eval_basis(geom, *i, *j)?;
        }
    }
    central += mixed_central(alg, &x.vector_field, &y.current, &coc.t)?;
    central -= mixed_central(alg, &y.vector_field, &x.current, &coc.t)?;
    Ok(DgElement { current, vector_field, central })
}

/// `x ⊗ 1 = x ⊗ Σ_p A_{0,p}`
pub fn embed_finite(x: &MatrixElement, geom: &Geometry) -> AffineElement {
    let mut c = CurrentElement::zero(x.tag, x.matrix.size());
    for p in 1..=geom.num_punctures() {
        c.add_term(BasisIndex::new(0, 0, p), x.matrix.clone());
    }
    AffineElement::current(c)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSplit {
    pub plus: CurrentElement,
    /// Critical strip together with the central part.
    pub zero: AffineElement,
    pub minus: CurrentElement,
}

impl AffineSplit {
    pub fn recombine(&self) -> Result<AffineElement> {
        let c = self.plus.add(&self.zero.current)?.add(&self.minus)?;
        Ok(AffineElement { current: c, central: self.zero.central.clone() })
    }
}

pub fn affine_triangular_split(
    geom: &Geometry,
    x: &AffineElement,
    variant: SplitVariant,
    bounds: &AlmostGradingBounds,
) -> Result<AffineSplit> {
    let (tag, rank) = (x.current.tag, x.current.rank);
    let mut plus = CurrentElement::zero(tag, rank);
    let mut zero = CurrentElement::zero(tag, rank);
    let mut minus = CurrentElement::zero(tag, rank);
    for (k, m) in &x.current.terms {
        let target = match classify(geom, k, variant, bounds)? {
            Part::Plus => &mut plus,
            Part::Zero => &mut zero,
            Part::Minus => &mut minus,
        };
        target.add_term(*k, m.clone());
    }
    Ok(AffineSplit { plus, zero: AffineElement { current: zero, central: x.central.clone() }, minus })
}

/// Membership in the regular subalgebra `g ⊗ A^{(1)}_-`: every matrix entry
/// vanishes at infinity.
pub fn is_regular(alg: &KnAlgebra, x: &CurrentElement) -> Result<bool> {
    for i in 0..x.rank {
        for j in 0..x.rank {
            let f = alg.form(&x.entry(i, j))?;
            if let Order::Finite(k) = f.order_at_infinity() {
                if k < 1 {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

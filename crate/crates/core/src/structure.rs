//! Products, brackets and module actions expanded in the KN basis, the
//! almost-grading bounds and the triangular decompositions.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};

use crate::arith::rational::{int, Rational};
use crate::basis::{expand_in_basis, make_basis, reconstruct, BasisIndex, FormElement, Geometry, KNExpansion};
use crate::error::{Error, Result};

/// `A·B` for two functions.
pub fn multiply(a: &FormElement, b: &FormElement) -> Result<KNExpansion> {
    expand_in_basis(&product_form(a, b)?)
}

pub fn product_form(a: &FormElement, b: &FormElement) -> Result<FormElement> {
    a.check_same(b)?;
    a.check_weight(0)?;
    b.check_weight(0)?;
    a.try_mul(b)
}

/// `[e, f] = (e f' - f e') d/dz`
pub fn bracket(e: &FormElement, f: &FormElement) -> Result<KNExpansion> {
    expand_in_basis(&bracket_form(e, f)?)
}

pub fn bracket_form(e: &FormElement, f: &FormElement) -> Result<FormElement> {
    e.check_same(f)?;
    e.check_weight(-1)?;
    f.check_weight(-1)?;
    let a = e.try_mul(&f.dz())?;
    let b = f.try_mul(&e.dz())?;
    Ok(a.try_sub(&b)?.retag(-1))
}

/// `e.(g dz^λ) = (e g' + λ e' g) dz^λ`
pub fn lie_derivative(e: &FormElement, f: &FormElement) -> Result<KNExpansion> {
    expand_in_basis(&lie_derivative_form(e, f)?)
}

pub fn lie_derivative_form(e: &FormElement, f: &FormElement) -> Result<FormElement> {
    e.check_same(f)?;
    e.check_weight(-1)?;
    let lambda = f.weight();
    let a = e.try_mul(&f.dz())?;
    let b = e.dz().try_mul(f)?.scale(&int(lambda));
    Ok(a.try_add(&b)?.retag(lambda))
}

/// Upper almost-grading bounds `(K, L, M)` that follow from the orders at
/// infinity alone; the lower bound is always `n + m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AlmostGradingBounds {
    pub k: i64,
    pub l: i64,
    pub m: i64,
}

impl AlmostGradingBounds {
    pub fn a_priori(n_punctures: usize) -> Self {
        match n_punctures {
            1 => AlmostGradingBounds { k: 0, l: 0, m: 0 },
            2 => AlmostGradingBounds { k: 1, l: 1, m: 1 },
            _ => AlmostGradingBounds { k: 1, l: 2, m: 2 },
        }
    }

    pub fn for_kind(&self, kind: TableKind) -> i64 {
        match kind {
            TableKind::FunctionProduct => self.k,
            TableKind::VectorBracket => self.l,
            TableKind::FieldOnForm => self.m,
        }
    }

    /// Bound relevant for a weight (`K` for functions, `L` for vector fields).
    pub fn for_weight(&self, weight: i64) -> Result<i64> {
        match weight {
            0 => Ok(self.k),
            -1 => Ok(self.l),
            w => Err(Error::Config(format!("no triangular decomposition defined for weight {w}"))),
        }
    }
}

impl fmt::Display for AlmostGradingBounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K={} L={} M={}", self.k, self.l, self.m)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TableKind {
    FunctionProduct,
    VectorBracket,
    FieldOnForm,
}

impl TableKind {
    pub fn name(self) -> &'static str {
        match self {
            TableKind::FunctionProduct => "FUNCTION_PRODUCT",
            TableKind::VectorBracket => "VECTOR_BRACKET",
            TableKind::FieldOnForm => "FIELD_ON_FORM",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().replace('-', "_").as_str() {
            "FUNCTION_PRODUCT" | "PRODUCT" | "MULT" => Ok(TableKind::FunctionProduct),
            "VECTOR_BRACKET" | "BRACKET" => Ok(TableKind::VectorBracket),
            "FIELD_ON_FORM" | "ACTION" => Ok(TableKind::FieldOnForm),
            _ => Err(Error::Config(format!("unknown table kind `{s}`"))),
        }
    }

    fn weights(self) -> (i64, i64, i64) {
        match self {
            TableKind::FunctionProduct => (0, 0, 0),
            TableKind::VectorBracket => (-1, -1, -1),
            TableKind::FieldOnForm => (-1, 0, 0),
        }
    }

    /// Coefficient of `f^λ_{n+m,s}` prescribed by the leading-term law.
    fn leading(self, a: &BasisIndex, b: &BasisIndex, s: usize) -> Rational {
        if a.puncture != b.puncture || s != a.puncture {
            return Rational::zero();
        }
        match self {
            TableKind::FunctionProduct => Rational::one(),
            TableKind::VectorBracket => int(b.degree - a.degree),
            TableKind::FieldOnForm => int(b.degree),
        }
    }
}

/// Memoized structure constants on basis pairs of one geometry.
pub struct KnAlgebra {
    geom: Arc<Geometry>,
    cache: Mutex<HashMap<(TableKind, BasisIndex, BasisIndex), Arc<KNExpansion>>>,
}

impl KnAlgebra {
    pub fn new(geom: Arc<Geometry>) -> Self {
        KnAlgebra { geom, cache: Mutex::new(HashMap::new()) }
    }

    pub fn geometry(&self) -> &Arc<Geometry> {
        &self.geom
    }

    pub fn basis(&self, index: BasisIndex) -> Result<FormElement> {
        make_basis(&self.geom, index.weight, index.degree, index.puncture)
    }

    /// Structure expansion of the basis pair `(a, b)`; for
    /// [`TableKind::FieldOnForm`] `a` is a vector field and `b` any form.
    pub fn basis_op(&self, kind: TableKind, a: BasisIndex, b: BasisIndex) -> Result<Arc<KNExpansion>> {
        let key = (kind, a, b);
        if let Some(v) = self.cache.lock().unwrap().get(&key) {
            return Ok(v.clone());
        }
        let fa = self.basis(a)?;
        let fb = self.basis(b)?;
        let v = Arc::new(match kind {
            TableKind::FunctionProduct => multiply(&fa, &fb)?,
            TableKind::VectorBracket => bracket(&fa, &fb)?,
            TableKind::FieldOnForm => lie_derivative(&fa, &fb)?,
        });
        self.cache.lock().unwrap().insert(key, v.clone());
        Ok(v)
    }

    fn bilinear(&self, kind: TableKind, x: &KNExpansion, y: &KNExpansion, weight: i64) -> Result<KNExpansion> {
        let mut out = KNExpansion::zero(weight);
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                let t = self.basis_op(kind, *i, *j)?;
                out.add_scaled(&t, &(a * b));
            }
        }
        Ok(out)
    }

    pub fn multiply(&self, x: &KNExpansion, y: &KNExpansion) -> Result<KNExpansion> {
        check_exp_weight(x, 0)?;
        check_exp_weight(y, 0)?;
        self.bilinear(TableKind::FunctionProduct, x, y, 0)
    }

    pub fn bracket(&self, x: &KNExpansion, y: &KNExpansion) -> Result<KNExpansion> {
        check_exp_weight(x, -1)?;
        check_exp_weight(y, -1)?;
        self.bilinear(TableKind::VectorBracket, x, y, -1)
    }

    pub fn act(&self, e: &KNExpansion, f: &KNExpansion) -> Result<KNExpansion> {
        check_exp_weight(e, -1)?;
        self.bilinear(TableKind::FieldOnForm, e, f, f.weight)
    }

    pub fn form(&self, x: &KNExpansion) -> Result<FormElement> {
        reconstruct(&self.geom, x)
    }
}

fn check_exp_weight(x: &KNExpansion, w: i64) -> Result<()> {
    if x.weight != w {
        return Err(Error::WeightMismatch { expected: w, found: x.weight });
    }
    Ok(())
}

/// Table of structure expansions over a square window of basis pairs.
#[derive(Clone, Debug)]
pub struct StructureTable {
    pub kind: TableKind,
    pub window: (i64, i64),
    pub entries: BTreeMap<(BasisIndex, BasisIndex), KNExpansion>,
    pub measured_bound: i64,
}

impl StructureTable {
    /// Builds the table, checking the lower bound `n+m` and the leading-term
    /// law on every entry.
    pub fn build(alg: &KnAlgebra, kind: TableKind, window: (i64, i64)) -> Result<Self> {
        let (wa, wb, _) = kind.weights();
        let n = alg.geometry().num_punctures();
        let mut entries = BTreeMap::new();
        let mut bound = 0;
        for i in window.0..=window.1 {
            for p in 1..=n {
                for j in window.0..=window.1 {
                    for r in 1..=n {
                        let a = BasisIndex::new(wa, i, p);
                        let b = BasisIndex::new(wb, j, r);
                        let e = alg.basis_op(kind, a, b)?;
                        bound = bound.max(check_entry(kind, &a, &b, &e, n)?);
                        entries.insert((a, b), (*e).clone());
                    }
                }
            }
        }
        Ok(StructureTable { kind, window, entries, measured_bound: bound })
    }
}

/// Returns the excess `max degree - (n+m)` of one entry, or an error if the
/// entry violates the lower bound or the leading-term law.
fn check_entry(kind: TableKind, a: &BasisIndex, b: &BasisIndex, e: &KNExpansion, n_punct: usize) -> Result<i64> {
    let base = a.degree + b.degree;
    if let Some((lo, _)) = e.degree_window() {
        if lo < base {
            return Err(Error::Invariant(format!(
                "{}: term of degree {lo} below {base} in {a} x {b}",
                kind.name()
            )));
        }
    }
    for s in 1..=n_punct {
        let want = kind.leading(a, b, s);
        if e.coefficient(base, s) != want {
            return Err(Error::Invariant(format!(
                "{}: leading coefficient at ({base},{s}) of {a} x {b} is {} not {want}",
                kind.name(),
                e.coefficient(base, s)
            )));
        }
    }
    Ok(e.degree_window().map_or(0, |(_, hi)| (hi - base).max(0)))
}

fn measure_window(alg: &KnAlgebra, window: (i64, i64)) -> Result<AlmostGradingBounds> {
    let k = StructureTable::build(alg, TableKind::FunctionProduct, window)?.measured_bound;
    let l = StructureTable::build(alg, TableKind::VectorBracket, window)?.measured_bound;
    let m = StructureTable::build(alg, TableKind::FieldOnForm, window)?.measured_bound;
    Ok(AlmostGradingBounds { k, l, m })
}

/// Smallest `(K, L, M)` over all basis pairs with degrees in `window`,
/// checked to be stable when the window grows by two on each side.
pub fn measure_bounds(geom: &Arc<Geometry>, window: (i64, i64)) -> Result<AlmostGradingBounds> {
    if window.0 > window.1 {
        return Err(Error::Config("empty degree window".into()));
    }
    let alg = KnAlgebra::new(geom.clone());
    let small = measure_window(&alg, window)?;
    let large = measure_window(&alg, (window.0 - 2, window.1 + 2))?;
    if small != large {
        return Err(Error::Invariant(format!("bounds not stable: {small} vs {large}")));
    }
    Ok(small)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SplitVariant {
    Standard,
    EnlargedStar,
    /// Split by vanishing order at infinity.
    Depth(i64),
}

impl SplitVariant {
    pub fn parse(s: &str) -> Result<Self> {
        let u = s.to_ascii_uppercase();
        match u.as_str() {
            "STANDARD" => Ok(SplitVariant::Standard),
            "ENLARGED_STAR" | "ENLARGED" | "STAR" => Ok(SplitVariant::EnlargedStar),
            _ => {
                if let Some(p) = u.strip_prefix("DEPTH_").or_else(|| u.strip_prefix("DEPTH")) {
                    let p = p.parse().map_err(|_| Error::Config(format!("bad depth in `{s}`")))?;
                    return Ok(SplitVariant::Depth(p));
                }
                Err(Error::Config(format!("unknown split variant `{s}`")))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TriangularSplit {
    pub plus: KNExpansion,
    pub zero: KNExpansion,
    pub minus: KNExpansion,
    pub variant: SplitVariant,
}

impl TriangularSplit {
    pub fn recombine(&self) -> KNExpansion {
        self.plus.add(&self.zero).add(&self.minus)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Part {
    Plus,
    Zero,
    Minus,
}

impl Part {
    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "plus" | "+" => Ok(Part::Plus),
            "zero" | "0" | "critical" => Ok(Part::Zero),
            "minus" | "-" => Ok(Part::Minus),
            _ => Err(Error::Config(format!("unknown part `{s}`"))),
        }
    }
}

/// Which part of the split the basis element `index` belongs to.
pub fn classify(geom: &Geometry, index: &BasisIndex, variant: SplitVariant, bounds: &AlmostGradingBounds) -> Result<Part> {
    let w = index.weight;
    let n = index.degree;
    let bound = bounds.for_weight(w)?;
    match variant {
        SplitVariant::Standard => Ok(if n >= 1 {
            Part::Plus
        } else if n <= -bound - 1 {
            Part::Minus
        } else {
            Part::Zero
        }),
        SplitVariant::EnlargedStar => {
            let cut = if w == 0 { 0 } else { -1 };
            Ok(if n >= cut {
                Part::Plus
            } else if n <= -bound - 1 {
                Part::Minus
            } else {
                Part::Zero
            })
        }
        SplitVariant::Depth(p) => {
            let (min_p, threshold) = if w == 0 { (1, p) } else { (0, p + 1) };
            if p < min_p {
                return Err(Error::Config(format!("depth {p} below {min_p} for weight {w}")));
            }
            Ok(if n >= 1 {
                Part::Plus
            } else if geom.basis_order_at_infinity(w, n) >= threshold {
                Part::Minus
            } else {
                Part::Zero
            })
        }
    }
}

pub fn triangular_split(
    geom: &Geometry,
    x: &KNExpansion,
    variant: SplitVariant,
    bounds: &AlmostGradingBounds,
) -> Result<TriangularSplit> {
    bounds.for_weight(x.weight)?;
    let mut parts = [KNExpansion::zero(x.weight), KNExpansion::zero(x.weight), KNExpansion::zero(x.weight)];
    for (i, c) in x.iter() {
        let slot = match classify(geom, i, variant, bounds)? {
            Part::Plus => 0,
            Part::Zero => 1,
            Part::Minus => 2,
        };
        parts[slot].add_term(*i, c.clone());
    }
    let [plus, zero, minus] = parts;
    Ok(TriangularSplit { plus, zero, minus, variant })
}

/// Outcome of a closure check; `witness` is the first offending pair.
#[derive(Clone, Debug)]
pub struct ClosureReport {
    pub closed: bool,
    pub checked: usize,
    pub witness: Option<(BasisIndex, BasisIndex, KNExpansion)>,
}

/// Checks whether products (or brackets) of sampled basis elements of one
/// part stay in that part.
pub fn closure_check(
    alg: &KnAlgebra,
    part: Part,
    kind: TableKind,
    variant: SplitVariant,
    bounds: &AlmostGradingBounds,
    window: (i64, i64),
) -> Result<ClosureReport> {
    let weight = match kind {
        TableKind::FunctionProduct => 0,
        TableKind::VectorBracket => -1,
        TableKind::FieldOnForm => return Err(Error::Config("closure is defined for products and brackets".into())),
    };
    let geom = alg.geometry().clone();
    let n = geom.num_punctures();
    let mut members = Vec::new();
    for d in window.0..=window.1 {
        for p in 1..=n {
            let idx = BasisIndex::new(weight, d, p);
            if classify(&geom, &idx, variant, bounds)? == part {
                members.push(idx);
            }
        }
    }
    let mut checked = 0;
    for (ia, a) in members.iter().enumerate() {
        for b in &members[ia..] {
            let e = alg.basis_op(kind, *a, *b)?;
            checked += 1;
            for (i, _) in e.iter() {
                if classify(&geom, i, variant, bounds)? != part {
                    return Ok(ClosureReport { closed: false, checked, witness: Some((*a, *b, (*e).clone())) });
                }
            }
        }
    }
    Ok(ClosureReport { closed: true, checked, witness: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::{function_basis, vector_field_basis};

    #[test]
    fn laurent_products_and_witt_brackets() {
        let g = Geometry::standard(1);
        for n in -3..=3 {
            for m in -3..=3 {
                let a = function_basis(&g, n, 1).unwrap();
                let b = function_basis(&g, m, 1).unwrap();
                assert_eq!(multiply(&a, &b).unwrap(), KNExpansion::basis(BasisIndex::new(0, n + m, 1)));
                let e = vector_field_basis(&g, n, 1).unwrap();
                let f = vector_field_basis(&g, m, 1).unwrap();
                let want = KNExpansion::basis(BasisIndex::new(-1, n + m, 1)).scale(&int(m - n));
                assert_eq!(bracket(&e, &f).unwrap(), want);
                let want = KNExpansion::basis(BasisIndex::new(0, n + m, 1)).scale(&int(m));
                assert_eq!(lie_derivative(&e, &b).unwrap(), want);
            }
        }
    }

    #[test]
    fn omega_eigenvalue() {
        let g = Geometry::standard(1);
        let e0 = vector_field_basis(&g, 0, 1).unwrap();
        for m in -3..=3 {
            let w = crate::basis::one_form_dual(&g, m, 1).unwrap();
            let got = lie_derivative(&e0, &w).unwrap();
            assert_eq!(got, KNExpansion::basis(BasisIndex::new(1, -m, 1)).scale(&int(-m)));
        }
    }

    #[test]
    fn two_point_leading_terms() {
        let g = Geometry::standard(2);
        let e = bracket(&vector_field_basis(&g, 1, 1).unwrap(), &vector_field_basis(&g, 2, 1).unwrap()).unwrap();
        assert_eq!(e.coefficient(3, 1), int(1));
        let a = multiply(&function_basis(&g, 1, 1).unwrap(), &function_basis(&g, 1, 2).unwrap()).unwrap();
        assert!(a.coefficient(2, 1).is_zero() && a.coefficient(2, 2).is_zero());
        let (lo, hi) = a.degree_window().unwrap();
        assert!(lo >= 2 && hi <= 3);
    }

    #[test]
    fn bounds_match_a_priori() {
        for n in 1..=3 {
            let g = Geometry::standard(n);
            let b = measure_bounds(&g, (-2, 2)).unwrap();
            assert_eq!(b, AlmostGradingBounds::a_priori(n));
        }
    }

    #[test]
    fn standard_split() {
        let g = Geometry::standard(1);
        let b = AlmostGradingBounds::a_priori(1);
        let x = KNExpansion::basis(BasisIndex::new(0, 5, 1));
        let s = triangular_split(&g, &x, SplitVariant::Standard, &b).unwrap();
        assert_eq!(s.plus, x);
        let x = KNExpansion::basis(BasisIndex::new(0, 0, 1));
        let s = triangular_split(&g, &x, SplitVariant::Standard, &b).unwrap();
        assert_eq!(s.zero, x);
    }

    #[test]
    fn critical_strip_not_closed() {
        let g = Geometry::standard(2);
        let alg = KnAlgebra::new(g.clone());
        let b = AlmostGradingBounds::a_priori(2);
        let r = closure_check(&alg, Part::Zero, TableKind::FunctionProduct, SplitVariant::Standard, &b, (-4, 4)).unwrap();
        assert!(!r.closed);
        assert!(r.witness.is_some());
        let r = closure_check(&alg, Part::Minus, TableKind::VectorBracket, SplitVariant::Standard, &b, (-6, 2)).unwrap();
        assert!(r.closed);
    }

    #[test]
    fn depth_parts_close() {
        let g = Geometry::standard(3);
        let alg = KnAlgebra::new(g.clone());
        let b = AlmostGradingBounds::a_priori(3);
        for p in 1..=2 {
            let r = closure_check(&alg, Part::Minus, TableKind::FunctionProduct, SplitVariant::Depth(p), &b, (-5, 1)).unwrap();
            assert!(r.closed, "{:?}", r.witness);
            let r = closure_check(&alg, Part::Minus, TableKind::VectorBracket, SplitVariant::Depth(p), &b, (-5, 1)).unwrap();
            assert!(r.closed, "{:?}", r.witness);
        }
        assert!(classify(&g, &BasisIndex::new(0, -1, 1), SplitVariant::Depth(0), &b).is_err());
    }
}

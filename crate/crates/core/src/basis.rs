//! Genus-0 multipoint Krichever-Novikov bases, the KN pairing and expansion
//! of forms in the basis.
//!
//! The surface is the Riemann sphere with quasi-global coordinate `z`, the
//! in-points are finite rational punctures `P_1, ..., P_N` and the out-point
//! is `z = infinity`. A form of weight `λ` is stored through its coefficient
//! function in the chart `z`, i.e. `f(z) (dz)^λ`.
//!
//! For `λ ∈ ℤ`, degree `n` and puncture `p` the basis element is
//!
//! ```text
//! f^λ_{n,p} = c (z - P_p)^(n-λ) ∏_{i≠p} (z - P_i)^(n+1-λ) (dz)^λ,
//! c = ∏_{i≠p} (P_p - P_i)^-(n+1-λ)
//! ```
//!
//! which has the prescribed orders at the in-points, the order
//! `-N(n+1-λ) + 1 - 2λ` at infinity (as a form), and local expansion
//! `(z - P_p)^(n-λ) (1 + O(z - P_p))` at its own puncture.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::arith::poly::Polynomial;
use crate::arith::ratfunc::{Order, Point, RationalFunction};
use crate::arith::rational::{int, pow_i, Rational};
use crate::arith::series;
use crate::error::{Error, Result};

/// Punctured Riemann sphere: in-points `P_1..P_N`, out-point at infinity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Geometry {
    punctures: Vec<Rational>,
}

impl Geometry {
    pub fn new(punctures: Vec<Rational>) -> Result<Arc<Self>> {
        if punctures.is_empty() {
            return Err(Error::Config("at least one puncture is required".into()));
        }
        for (i, a) in punctures.iter().enumerate() {
            if punctures[..i].contains(a) {
                return Err(Error::Config(format!("puncture {a} is repeated")));
            }
        }
        Ok(Arc::new(Geometry { punctures }))
    }

    /// `P = {0, 1, ..., N-1}`.
    pub fn standard(n: usize) -> Arc<Self> {
        Self::new((0..n as i64).map(int).collect()).unwrap()
    }

    pub fn num_punctures(&self) -> usize {
        self.punctures.len()
    }

    pub fn punctures(&self) -> &[Rational] {
        &self.punctures
    }

    /// Coordinate of the 1-based puncture `p`.
    pub fn puncture(&self, p: usize) -> &Rational {
        &self.punctures[p - 1]
    }

    pub fn check_puncture(&self, p: usize) -> Result<()> {
        if p == 0 || p > self.punctures.len() {
            return Err(Error::IndexOutOfRange(format!(
                "puncture index {p} outside 1..={}",
                self.punctures.len()
            )));
        }
        Ok(())
    }

    pub fn genus(&self) -> i64 {
        0
    }

    /// Order at infinity of the basis form `f^λ_{n,p}`.
    pub fn basis_order_at_infinity(&self, weight: i64, degree: i64) -> i64 {
        let n = self.num_punctures() as i64;
        -n * (degree + 1 - weight) + (2 * weight - 1) * (self.genus() - 1)
    }

    /// Largest degree that can occur in the expansion of a weight-`weight`
    /// form whose order at infinity is at least `order_at_inf`.
    pub fn max_degree_for_order(&self, weight: i64, order_at_inf: i64) -> i64 {
        let n = self.num_punctures() as i64;
        weight + (-2 * weight - order_at_inf).div_euclid(n)
    }
}

/// Index `(λ, n, p)` of the basis element `f^λ_{n,p}`; `p` is 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisIndex {
    pub weight: i64,
    pub degree: i64,
    pub puncture: usize,
}

impl BasisIndex {
    pub fn new(weight: i64, degree: i64, puncture: usize) -> Self {
        BasisIndex { weight, degree, puncture }
    }
}

impl fmt::Display for BasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "f^{}_{{{},{}}}", self.weight, self.degree, self.puncture)
    }
}

/// A rational function holomorphic away from the punctures and infinity,
/// stored as `num(z) ∏_j (z - P_j)^orders[j]` with `num(P_j) != 0`.
///
/// In this form products never need a gcd and the order at each puncture is
/// read off directly.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PuncturedFunction {
    num: Polynomial,
    orders: Vec<i64>,
}

impl PuncturedFunction {
    pub fn zero(n: usize) -> Self {
        PuncturedFunction { num: Polynomial::zero(), orders: vec![0; n] }
    }

    pub fn constant(c: Rational, n: usize) -> Self {
        PuncturedFunction { num: Polynomial::constant(c), orders: vec![0; n] }
    }

    /// `c ∏ (z - P_j)^orders[j]`
    pub fn monomial(c: Rational, orders: Vec<i64>) -> Self {
        if c.is_zero() {
            return Self::zero(orders.len());
        }
        PuncturedFunction { num: Polynomial::constant(c), orders }
    }

    /// Strips factors `(z - P_j)` from the numerator into the orders.
    fn normalize(mut num: Polynomial, mut orders: Vec<i64>, pts: &[Rational]) -> Self {
        if num.is_zero() {
            return Self::zero(pts.len());
        }
        for (j, a) in pts.iter().enumerate() {
            while let Some(q) = num.deflate(a) {
                num = q;
                orders[j] += 1;
            }
        }
        PuncturedFunction { num, orders }
    }

    pub fn from_polynomial(p: Polynomial, pts: &[Rational]) -> Self {
        Self::normalize(p, vec![0; pts.len()], pts)
    }

    pub fn from_rational_function(f: &RationalFunction, pts: &[Rational]) -> Result<Self> {
        let mut den = f.denominator().clone();
        let mut orders = vec![0i64; pts.len()];
        for (j, a) in pts.iter().enumerate() {
            while let Some(q) = den.deflate(a) {
                den = q;
                orders[j] -= 1;
            }
        }
        if !den.is_constant() {
            return Err(Error::SupportViolation);
        }
        let c = den.coeff(0).recip();
        Ok(Self::normalize(f.numerator().scale(&c), orders, pts))
    }

    pub fn to_rational_function(&self, pts: &[Rational]) -> RationalFunction {
        if self.is_zero() {
            return RationalFunction::zero();
        }
        let mut num = self.num.clone();
        let mut den = Polynomial::one();
        for (a, &o) in pts.iter().zip(&self.orders) {
            let lin = Polynomial::linear(a);
            if o > 0 {
                num = &num * &lin.pow(o as u32);
            } else if o < 0 {
                den = &den * &lin.pow((-o) as u32);
            }
        }
        // den is monic and coprime to num by construction
        RationalFunction::from_coprime(num, den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn orders(&self) -> &[i64] {
        &self.orders
    }

    /// Order at the 0-based puncture `j`.
    pub fn order_at_puncture(&self, j: usize) -> Order {
        if self.is_zero() {
            Order::Infinity
        } else {
            Order::Finite(self.orders[j])
        }
    }

    /// Order at infinity of the function (not of a form).
    pub fn order_at_infinity(&self) -> Order {
        if self.is_zero() {
            return Order::Infinity;
        }
        let deg = self.num.degree().unwrap() as i64;
        Order::Finite(-deg - self.orders.iter().sum::<i64>())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.orders.len());
        }
        PuncturedFunction { num: self.num.scale(c), orders: self.orders.clone() }
    }

    pub fn neg(&self) -> Self {
        PuncturedFunction { num: -&self.num, orders: self.orders.clone() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.orders.len());
        }
        PuncturedFunction {
            num: &self.num * &other.num,
            orders: self.orders.iter().zip(&other.orders).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn add(&self, other: &Self, pts: &[Rational]) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let base: Vec<i64> = self.orders.iter().zip(&other.orders).map(|(a, b)| *a.min(b)).collect();
        let lift = |f: &Self| {
            let mut p = f.num.clone();
            for ((a, &o), &b) in pts.iter().zip(&f.orders).zip(&base) {
                if o > b {
                    p = &p * &Polynomial::linear(a).pow((o - b) as u32);
                }
            }
            p
        };
        let sum = &lift(self) + &lift(other);
        Self::normalize(sum, base, pts)
    }

    pub fn sub(&self, other: &Self, pts: &[Rational]) -> Self {
        self.add(&other.neg(), pts)
    }

    /// `d/dz`
    pub fn derivative(&self, pts: &[Rational]) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        // (num ∏ (z-P_j)^o_j)' = [num' Q + num Σ_j o_j Q/(z-P_j)] ∏ (z-P_j)^(o_j - 1),
        // Q = ∏ (z - P_j)
        let lins: Vec<Polynomial> = pts.iter().map(Polynomial::linear).collect();
        let mut q = Polynomial::one();
        for l in &lins {
            q = &q * l;
        }
        let mut acc = &self.num.derivative() * &q;
        for (j, &o) in self.orders.iter().enumerate() {
            if o == 0 {
                continue;
            }
            let mut others = Polynomial::constant(int(o));
            for (k, l) in lins.iter().enumerate() {
                if k != j {
                    others = &others * l;
                }
            }
            acc = &acc + &(&self.num * &others);
        }
        let orders = self.orders.iter().map(|o| o - 1).collect();
        Self::normalize(acc, orders, pts)
    }

    /// Local series of the regular factor at the 0-based puncture `i`:
    /// `f = (z - P_i)^orders[i] * Σ_k s_k (z - P_i)^k`, first `len` terms.
    pub fn local_series(&self, i: usize, pts: &[Rational], len: usize) -> Vec<Rational> {
        let a = &pts[i];
        let mut s: Vec<Rational> = self.num.taylor_shift(a).coeffs().iter().take(len).cloned().collect();
        s.resize(len, Rational::zero());
        for (j, (b, &o)) in pts.iter().zip(&self.orders).enumerate() {
            if j == i || o == 0 {
                continue;
            }
            let d = a - b;
            s = series::mul_trunc(&s, &series::binomial_series(&d, o, len), len);
        }
        s
    }

    /// Residue of `f dz` at the 0-based puncture `i`.
    pub fn residue_at_puncture(&self, i: usize, pts: &[Rational]) -> Rational {
        if self.is_zero() || self.orders[i] >= 0 {
            return Rational::zero();
        }
        let need = (-self.orders[i]) as usize;
        self.local_series(i, pts, need).pop().unwrap()
    }

    /// Σ over all punctures of the residues of `f dz`.
    pub fn residue_sum_in(&self, pts: &[Rational]) -> Rational {
        (0..pts.len()).map(|i| self.residue_at_puncture(i, pts)).sum()
    }

    /// Residue of `f dz` at infinity, computed in the chart `w = 1/z`.
    pub fn residue_at_infinity(&self, pts: &[Rational]) -> Rational {
        let Order::Finite(ord) = self.order_at_infinity() else {
            return Rational::zero();
        };
        // f dz = -f(1/w) w^-2 dw; f(1/w) = w^ord * S(w) with
        // S(w) = rev(num)(w) ∏ (1 - P_j w)^o_j
        if ord > 1 {
            return Rational::zero();
        }
        let len = (2 - ord) as usize;
        let mut s: Vec<Rational> = self.num.reversed().coeffs().iter().take(len).cloned().collect();
        s.resize(len, Rational::zero());
        for (b, &o) in pts.iter().zip(&self.orders) {
            if o == 0 || b.is_zero() {
                continue;
            }
            // (1 - b w)^o = (-b)^o (w - 1/b)^o
            let factor = series::binomial_series(&(-b.recip()), o, len);
            let scale = pow_i(&(-b), o);
            let factor: Vec<Rational> = factor.into_iter().map(|c| c * &scale).collect();
            s = series::mul_trunc(&s, &factor, len);
        }
        -s[len - 1].clone()
    }
}

/// A meromorphic form of integer weight `λ` on the punctured sphere.
#[derive(Clone, Debug)]
pub struct FormElement {
    func: PuncturedFunction,
    weight: i64,
    geometry: Arc<Geometry>,
}

impl PartialEq for FormElement {
    fn eq(&self, other: &Self) -> bool {
        self.weight == other.weight && self.func == other.func && same_geometry(&self.geometry, &other.geometry)
    }
}

pub fn same_geometry(a: &Arc<Geometry>, b: &Arc<Geometry>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl FormElement {
    pub fn new(func: PuncturedFunction, weight: i64, geometry: Arc<Geometry>) -> Self {
        FormElement { func, weight, geometry }
    }

    /// Fails with [`Error::SupportViolation`] when `f` has a pole away from
    /// the punctures and infinity.
    pub fn from_rational_function(f: &RationalFunction, weight: i64, geometry: &Arc<Geometry>) -> Result<Self> {
        let func = PuncturedFunction::from_rational_function(f, geometry.punctures())?;
        Ok(FormElement { func, weight, geometry: geometry.clone() })
    }

    pub fn zero(weight: i64, geometry: &Arc<Geometry>) -> Self {
        FormElement { func: PuncturedFunction::zero(geometry.num_punctures()), weight, geometry: geometry.clone() }
    }

    pub fn constant(c: Rational, geometry: &Arc<Geometry>) -> Self {
        FormElement { func: PuncturedFunction::constant(c, geometry.num_punctures()), weight: 0, geometry: geometry.clone() }
    }

    pub fn func(&self) -> &PuncturedFunction {
        &self.func
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn geometry(&self) -> &Arc<Geometry> {
        &self.geometry
    }

    pub fn is_zero(&self) -> bool {
        self.func.is_zero()
    }

    pub fn to_rational_function(&self) -> RationalFunction {
        self.func.to_rational_function(self.geometry.punctures())
    }

    /// Order at a point; at infinity this is the order of the form, which
    /// differs from that of the coefficient function by `-2λ`.
    pub fn order_at(&self, at: &Point) -> Order {
        match at {
            Point::Finite(a) => match self.geometry.punctures().iter().position(|p| p == a) {
                Some(j) => self.func.order_at_puncture(j),
                None => crate::arith::order_at(&self.to_rational_function(), at),
            },
            Point::Infinity => match self.func.order_at_infinity() {
                Order::Finite(k) => Order::Finite(k - 2 * self.weight),
                Order::Infinity => Order::Infinity,
            },
        }
    }

    pub fn order_at_infinity(&self) -> Order {
        self.order_at(&Point::Infinity)
    }

    pub fn retag(&self, weight: i64) -> Self {
        FormElement { func: self.func.clone(), weight, geometry: self.geometry.clone() }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        FormElement { func: self.func.scale(c), weight: self.weight, geometry: self.geometry.clone() }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        if self.weight != other.weight {
            return Err(Error::WeightMismatch { expected: self.weight, found: other.weight });
        }
        Ok(FormElement {
            func: self.func.add(&other.func, self.geometry.punctures()),
            weight: self.weight,
            geometry: self.geometry.clone(),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.scale(&-Rational::one()))
    }

    /// Tensor product; weights add.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(FormElement {
            func: self.func.mul(&other.func),
            weight: self.weight + other.weight,
            geometry: self.geometry.clone(),
        })
    }

    /// Coefficient-function derivative `d/dz`, weight unchanged.
    pub fn dz(&self) -> Self {
        FormElement {
            func: self.func.derivative(self.geometry.punctures()),
            weight: self.weight,
            geometry: self.geometry.clone(),
        }
    }

    pub fn check_same(&self, other: &Self) -> Result<()> {
        if same_geometry(&self.geometry, &other.geometry) {
            Ok(())
        } else {
            Err(Error::GeometryMismatch)
        }
    }

    pub fn check_weight(&self, weight: i64) -> Result<()> {
        if self.weight != weight {
            return Err(Error::WeightMismatch { expected: weight, found: self.weight });
        }
        Ok(())
    }
}

impl fmt::Display for FormElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rf = self.to_rational_function();
        match self.weight {
            0 => write!(f, "{rf}"),
            -1 => write!(f, "({rf}) d/dz"),
            1 => write!(f, "({rf}) dz"),
            w => write!(f, "({rf}) (dz)^{w}"),
        }
    }
}

/// The basis element `f^λ_{n,p}`.
pub fn make_basis(geom: &Arc<Geometry>, weight: i64, degree: i64, p: usize) -> Result<FormElement> {
    geom.check_puncture(p)?;
    let pp = geom.puncture(p);
    let k = degree + 1 - weight;
    let mut c = Rational::one();
    let mut orders = Vec::with_capacity(geom.num_punctures());
    for (i, a) in geom.punctures().iter().enumerate() {
        if i + 1 == p {
            orders.push(k - 1);
        } else {
            c *= pow_i(&(pp - a), -k);
            orders.push(k);
        }
    }
    let f = FormElement::new(PuncturedFunction::monomial(c, orders), weight, geom.clone());
    debug_assert!(verify_basis_element(&f, degree, p).is_ok());
    Ok(f)
}

/// Checks the defining divisor and the normalization of `f^λ_{n,p}`.
pub fn verify_basis_element(f: &FormElement, degree: i64, p: usize) -> Result<()> {
    let geom = f.geometry();
    let weight = f.weight();
    let k = degree + 1 - weight;
    for (i, _) in geom.punctures().iter().enumerate() {
        let want = if i + 1 == p { k - 1 } else { k };
        if f.func.order_at_puncture(i) != Order::Finite(want) {
            return Err(Error::Invariant(format!("order of f^{weight}_{{{degree},{p}}} at P_{}", i + 1)));
        }
    }
    if f.order_at_infinity() != Order::Finite(geom.basis_order_at_infinity(weight, degree)) {
        return Err(Error::Invariant(format!("order of f^{weight}_{{{degree},{p}}} at infinity")));
    }
    let lead = f.func.local_series(p - 1, geom.punctures(), 1);
    if !lead[0].is_one() {
        return Err(Error::Invariant(format!("normalization of f^{weight}_{{{degree},{p}}}")));
    }
    Ok(())
}

/// `A_{n,p} = f^0_{n,p}`
pub fn function_basis(geom: &Arc<Geometry>, n: i64, p: usize) -> Result<FormElement> {
    make_basis(geom, 0, n, p)
}

/// `e_{n,p} = f^{-1}_{n,p}`
pub fn vector_field_basis(geom: &Arc<Geometry>, n: i64, p: usize) -> Result<FormElement> {
    make_basis(geom, -1, n, p)
}

/// `ω^{n,p} = f^1_{-n,p}` (note the sign flip of the degree).
pub fn one_form_dual(geom: &Arc<Geometry>, n: i64, p: usize) -> Result<FormElement> {
    make_basis(geom, 1, -n, p)
}

/// `Ω^{n,p} = f^2_{-n,p}` (note the sign flip of the degree).
pub fn quadratic_dual(geom: &Arc<Geometry>, n: i64, p: usize) -> Result<FormElement> {
    make_basis(geom, 2, -n, p)
}

fn pairing_parts(f: &FormElement, g: &FormElement) -> Result<PuncturedFunction> {
    f.check_same(g)?;
    if f.weight + g.weight != 1 {
        return Err(Error::WeightMismatch { expected: 1 - f.weight, found: g.weight });
    }
    Ok(f.func.mul(&g.func))
}

/// KN pairing `<f, g>` between weights `λ` and `1-λ`: the sum of in-point
/// residues of `f ⊗ g`, cross-checked against minus the residue at infinity.
pub fn kn_pairing(f: &FormElement, g: &FormElement) -> Result<Rational> {
    let prod = pairing_parts(f, g)?;
    let pts = f.geometry.punctures();
    let inner = prod.residue_sum_in(pts);
    let outer = -prod.residue_at_infinity(pts);
    if inner != outer {
        return Err(Error::Invariant(format!("pairing routes disagree: {inner} vs {outer}")));
    }
    Ok(inner)
}

/// Pairing through in-point residues only.
pub(crate) fn kn_pairing_fast(f: &FormElement, g: &FormElement) -> Result<Rational> {
    Ok(pairing_parts(f, g)?.residue_sum_in(f.geometry.punctures()))
}

/// Finite linear combination of basis elements of one weight.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct KNExpansion {
    pub weight: i64,
    terms: BTreeMap<BasisIndex, Rational>,
}

impl KNExpansion {
    pub fn zero(weight: i64) -> Self {
        KNExpansion { weight, terms: BTreeMap::new() }
    }

    pub fn basis(index: BasisIndex) -> Self {
        let mut e = Self::zero(index.weight);
        e.terms.insert(index, Rational::one());
        e
    }

    pub fn from_terms(weight: i64, terms: impl IntoIterator<Item = ((i64, usize), Rational)>) -> Self {
        let mut e = Self::zero(weight);
        for ((n, p), c) in terms {
            e.add_term(BasisIndex::new(weight, n, p), c);
        }
        e
    }

    pub fn add_term(&mut self, index: BasisIndex, c: Rational) {
        assert_eq!(index.weight, self.weight, "weight mismatch in expansion");
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(index).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&index);
        }
    }

    pub fn coefficient(&self, degree: i64, p: usize) -> Rational {
        self.terms
            .get(&BasisIndex::new(self.weight, degree, p))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> &BTreeMap<BasisIndex, Rational> {
        &self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BasisIndex, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(min degree, max degree)` of the nonzero terms.
    pub fn degree_window(&self) -> Option<(i64, i64)> {
        let lo = self.terms.keys().map(|k| k.degree).min()?;
        let hi = self.terms.keys().map(|k| k.degree).max()?;
        Some((lo, hi))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.weight);
        }
        KNExpansion {
            weight: self.weight,
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.weight, other.weight, "weight mismatch in expansion");
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(*k, v.clone());
        }
        out
    }

    pub fn add_scaled(&mut self, other: &Self, c: &Rational) {
        assert_eq!(self.weight, other.weight, "weight mismatch in expansion");
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.terms {
            self.add_term(*k, v * c);
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    /// Keeps the terms whose degree satisfies `keep`.
    pub fn filter_degrees(&self, keep: impl Fn(i64) -> bool) -> Self {
        KNExpansion {
            weight: self.weight,
            terms: self.terms.iter().filter(|(k, _)| keep(k.degree)).map(|(k, v)| (*k, v.clone())).collect(),
        }
    }

    pub fn filter(&self, keep: impl Fn(&BasisIndex) -> bool) -> Self {
        KNExpansion {
            weight: self.weight,
            terms: self.terms.iter().filter(|(k, _)| keep(k)).map(|(k, v)| (*k, v.clone())).collect(),
        }
    }
}

impl fmt::Display for KNExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, v)| format!("({v})*f^{}_{{{},{}}}", k.weight, k.degree, k.puncture))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Degree range `[lo, hi]` outside which no basis coefficient of `f` can be
/// nonzero, from the orders at the in-points and at infinity.
pub fn degree_bounds(f: &FormElement) -> Option<(i64, i64)> {
    if f.is_zero() {
        return None;
    }
    let lo = f.func.orders().iter().min().unwrap() + f.weight;
    let Order::Finite(o_inf) = f.order_at_infinity() else { unreachable!() };
    let hi = f.geometry.max_degree_for_order(f.weight, o_inf);
    Some((lo, hi))
}

/// Coefficients of `f` in the basis of its weight, via the dual basis:
/// the coefficient of `f^λ_{n,p}` is `<f, f^{1-λ}_{-n,p}>`.
pub fn expand_in_basis(f: &FormElement) -> Result<KNExpansion> {
    let mut out = KNExpansion::zero(f.weight);
    let Some((lo, hi)) = degree_bounds(f) else {
        return Ok(out);
    };
    let geom = f.geometry();
    for n in lo..=hi {
        for p in 1..=geom.num_punctures() {
            let dual = make_basis(geom, 1 - f.weight, -n, p)?;
            let c = kn_pairing_fast(f, &dual)?;
            out.add_term(BasisIndex::new(f.weight, n, p), c);
        }
    }
    Ok(out)
}

/// Expands a rational function interpreted as a weight-`weight` form.
pub fn expand_rational_function(geom: &Arc<Geometry>, f: &RationalFunction, weight: i64) -> Result<KNExpansion> {
    expand_in_basis(&FormElement::from_rational_function(f, weight, geom)?)
}

/// `Σ c_i f_i`, the inverse of [`expand_in_basis`].
pub fn reconstruct(geom: &Arc<Geometry>, e: &KNExpansion) -> Result<FormElement> {
    let mut acc = FormElement::zero(e.weight, geom);
    for (k, c) in e.iter() {
        let b = make_basis(geom, k.weight, k.degree, k.puncture)?;
        acc = acc.try_add(&b.scale(c))?;
    }
    Ok(acc)
}

/// Degree range of the nonzero terms of the expansion of `f`.
pub fn homogeneous_degree_window(f: &FormElement) -> Result<Option<(i64, i64)>> {
    Ok(expand_in_basis(f)?.degree_window())
}

//! Univariate rational functions, their local expansions and residues.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::Polynomial;
use super::rational::Rational;
use super::series;
use crate::error::{Error, Result};

/// A point of the projective line with rational coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Point {
    Finite(Rational),
    Infinity,
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Finite(a) => write!(f, "{a}"),
            Point::Infinity => write!(f, "inf"),
        }
    }
}

/// Vanishing order; the zero function has order `Infinity` everywhere.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Order {
    Finite(i64),
    Infinity,
}

impl Order {
    pub fn finite(self) -> Option<i64> {
        match self {
            Order::Finite(k) => Some(k),
            Order::Infinity => None,
        }
    }
}

impl PartialOrd for Order {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Order {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Order::Finite(a), Order::Finite(b)) => a.cmp(b),
            (Order::Finite(_), Order::Infinity) => Ordering::Less,
            (Order::Infinity, Order::Finite(_)) => Ordering::Greater,
            (Order::Infinity, Order::Infinity) => Ordering::Equal,
        }
    }
}

/// `numerator / denominator` in lowest terms with a monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

/// First coefficients of a Laurent expansion in the local coordinate `z - a`
/// (or `w = 1/z` at infinity).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentExpansion {
    pub at: Point,
    pub leading_order: i64,
    pub coefficients: Vec<Rational>,
    /// Expansion is exact modulo `O(t^truncation_order)`.
    pub truncation_order: i64,
    pub identically_zero: bool,
}

impl LaurentExpansion {
    /// Coefficient of `t^k`, if `k` lies below the truncation order.
    pub fn coeff(&self, k: i64) -> Option<Rational> {
        if k >= self.truncation_order {
            return None;
        }
        if self.identically_zero || k < self.leading_order {
            return Some(Rational::zero());
        }
        Some(self.coefficients[(k - self.leading_order) as usize].clone())
    }
}

impl RationalFunction {
    /// Builds the canonical form of `num / den`.
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Parse("zero denominator".into()));
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = Polynomial::gcd(&num, &den);
        let (num, _) = num.div_rem(&g);
        let (den, _) = den.div_rem(&g);
        let lc = den.leading().unwrap().recip();
        Ok(RationalFunction {
            num: num.scale(&lc),
            den: den.scale(&lc),
        })
    }

    /// Assembles a function whose parts are already coprime with `den` monic.
    pub(crate) fn from_coprime(num: Polynomial, den: Polynomial) -> Self {
        debug_assert!(den.leading().is_some_and(|c| c.is_one()));
        if num.is_zero() {
            return Self::zero();
        }
        RationalFunction { num, den }
    }

    pub fn from_poly(p: Polynomial) -> Self {
        RationalFunction {
            num: p,
            den: Polynomial::one(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(Polynomial::constant(c))
    }

    pub fn zero() -> Self {
        Self::from_poly(Polynomial::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(Polynomial::one())
    }

    pub fn z() -> Self {
        Self::from_poly(Polynomial::z())
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Re-runs canonicalization; the identity on canonical inputs.
    pub fn canonical(&self) -> Self {
        Self::new(self.num.clone(), self.den.clone()).expect("denominator is nonzero")
    }

    pub fn derivative(&self) -> Self {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        let d = &self.den * &self.den;
        Self::new(n, d).expect("nonzero denominator")
    }

    pub fn powi(&self, e: i64) -> Self {
        let base = if e < 0 { self.recip() } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        acc
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        Self::new(self.den.clone(), self.num.clone()).expect("nonzero")
    }

    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }

    /// Finite points where the function has a pole (rational ones only) and
    /// whether the denominator split completely.
    pub fn rational_poles(&self) -> (Vec<Rational>, bool) {
        let mut den = self.den.clone();
        let mut roots = Vec::new();
        for r in rational_roots(&den) {
            while let Some(q) = den.deflate(&r) {
                den = q;
            }
            roots.push(r);
        }
        (roots, den.is_constant())
    }
}

/// Laurent expansion of `f` at `at`, first `terms` coefficients.
pub fn laurent_expand(f: &RationalFunction, at: &Point, terms: usize) -> LaurentExpansion {
    assert!(terms >= 1, "terms must be positive");
    if f.is_zero() {
        return LaurentExpansion {
            at: at.clone(),
            leading_order: 0,
            coefficients: Vec::new(),
            truncation_order: i64::MAX,
            identically_zero: true,
        };
    }
    let (n, d, shift) = match at {
        Point::Finite(a) => (f.num.taylor_shift(a), f.den.taylor_shift(a), 0i64),
        Point::Infinity => {
            // f(1/w) = w^(deg d - deg n) * rev(n)(w) / rev(d)(w)
            let dn = f.num.degree().unwrap() as i64;
            let dd = f.den.degree().unwrap() as i64;
            (f.num.reversed(), f.den.reversed(), dd - dn)
        }
    };
    let vn = n.low_order().unwrap();
    let vd = d.low_order().unwrap();
    let n = n.shift_down(vn);
    let d = d.shift_down(vd);
    let leading = shift + vn as i64 - vd as i64;
    let coefficients = series::div_trunc(n.coeffs(), d.coeffs(), terms);
    LaurentExpansion {
        at: at.clone(),
        leading_order: leading,
        coefficients,
        truncation_order: leading + terms as i64,
        identically_zero: false,
    }
}

/// Order of vanishing of `f` at `at` (negative for poles).
pub fn order_at(f: &RationalFunction, at: &Point) -> Order {
    if f.is_zero() {
        return Order::Infinity;
    }
    match at {
        Point::Finite(a) => {
            let vn = f.num.taylor_shift(a).low_order().unwrap() as i64;
            let vd = f.den.taylor_shift(a).low_order().unwrap() as i64;
            Order::Finite(vn - vd)
        }
        Point::Infinity => {
            Order::Finite(f.den.degree().unwrap() as i64 - f.num.degree().unwrap() as i64)
        }
    }
}

/// Residue of the one-form `f dz` at `at`.
///
/// At infinity the coordinate change `w = 1/z` gives
/// `f dz = -f(1/w) w^-2 dw`, so the residue is minus the `w^1` coefficient
/// of `f(1/w)`.
pub fn residue_form(f: &RationalFunction, at: &Point) -> Rational {
    if f.is_zero() {
        return Rational::zero();
    }
    let ord = order_at(f, at).finite().unwrap();
    match at {
        Point::Finite(_) => {
            if ord >= 0 {
                return Rational::zero();
            }
            let e = laurent_expand(f, at, (-ord) as usize);
            e.coeff(-1).unwrap()
        }
        Point::Infinity => {
            if ord > 1 {
                return Rational::zero();
            }
            let e = laurent_expand(f, at, (2 - ord) as usize);
            -e.coeff(1).unwrap()
        }
    }
}

/// Sums the residues of `f dz` over all finite poles and infinity; the global
/// residue theorem says the result is always zero.
///
/// Poles are located as rational roots of the denominator, so functions whose
/// denominator does not split over the rationals are rejected.
pub fn residue_sum_check(f: &RationalFunction) -> Result<bool> {
    let (poles, split) = f.rational_poles();
    if !split {
        return Err(Error::NonRationalPoles);
    }
    let mut total = residue_form(f, &Point::Infinity);
    for p in poles {
        total += residue_form(f, &Point::Finite(p));
    }
    Ok(total.is_zero())
}

fn small_divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs();
    if n.is_zero() {
        return None;
    }
    let v: u64 = (&n).try_into().ok()?;
    if v > 1_000_000_000_000 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= v {
        if v % d == 0 {
            out.push(BigInt::from(d));
            if d * d != v {
                out.push(BigInt::from(v / d));
            }
        }
        d += 1;
    }
    Some(out)
}

/// Distinct rational roots by the rational root theorem. Polynomials whose
/// extreme coefficients are too large to factor by trial division return the
/// roots found so far (possibly none); callers detect this through deflation.
pub fn rational_roots(p: &Polynomial) -> Vec<Rational> {
    let mut roots = Vec::new();
    if p.is_constant() {
        return roots;
    }
    let mut p = p.clone();
    if p.coeff(0).is_zero() {
        roots.push(Rational::zero());
        let k = p.low_order().unwrap();
        p = p.shift_down(k);
    }
    if p.is_constant() {
        return roots;
    }
    let ints = p.primitive_integer();
    let (Some(ps), Some(qs)) = (small_divisors(&ints[0]), small_divisors(ints.last().unwrap()))
    else {
        return roots;
    };
    for a in &ps {
        for b in &qs {
            if a.gcd(b) != BigInt::one() {
                continue;
            }
            for s in [1, -1] {
                let r = Rational::new(a * BigInt::from(s), b.clone());
                if p.eval(&r).is_zero() && !roots.contains(&r) {
                    roots.push(r);
                }
            }
        }
    }
    roots.sort();
    roots
}

impl Add<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return RationalFunction::new(&self.num + &rhs.num, self.den.clone()).unwrap();
        }
        let n = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RationalFunction::new(n, &self.den * &rhs.den).unwrap()
    }
}

impl Sub<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den).unwrap()
    }
}

impl Div<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        self * &rhs.recip()
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, rat};

    fn z_times_z_minus_one_inv() -> RationalFunction {
        let den = &Polynomial::z() * &Polynomial::linear(&int(1));
        RationalFunction::new(Polynomial::one(), den).unwrap()
    }

    #[test]
    fn canonical_form_is_reduced_and_monic() {
        // (2z - 2) / (4z^2 - 4) = (1/2) / (z + 1)
        let f = RationalFunction::new(
            Polynomial::from_ints(&[-2, 2]),
            Polynomial::from_ints(&[-4, 0, 4]),
        )
        .unwrap();
        assert_eq!(f.numerator(), &Polynomial::constant(rat(1, 2)));
        assert_eq!(f.denominator(), &Polynomial::from_ints(&[1, 1]));
        assert_eq!(f.canonical(), f);
    }

    #[test]
    fn expansion_of_simple_poles() {
        // 1/(z(z-1)) = -1/z - 1/(1-z) = -1/z - 1 - z - ...
        let e = laurent_expand(&z_times_z_minus_one_inv(), &Point::Finite(int(0)), 2);
        assert_eq!(e.leading_order, -1);
        assert_eq!(e.coefficients, vec![int(-1), int(-1)]);
    }

    #[test]
    fn expansion_of_constant_and_z_at_infinity() {
        let e = laurent_expand(&RationalFunction::one(), &Point::Finite(rat(3, 7)), 1);
        assert_eq!((e.leading_order, e.coefficients.clone()), (0, vec![int(1)]));
        let e = laurent_expand(&RationalFunction::z(), &Point::Infinity, 1);
        assert_eq!((e.leading_order, e.coefficients.clone()), (-1, vec![int(1)]));
        let e = laurent_expand(&RationalFunction::zero(), &Point::Infinity, 3);
        assert!(e.identically_zero);
    }

    #[test]
    fn orders() {
        let f = RationalFunction::new(
            &Polynomial::linear(&int(1)) * &Polynomial::linear(&int(1)),
            Polynomial::z(),
        )
        .unwrap();
        assert_eq!(order_at(&f, &Point::Finite(int(1))), Order::Finite(2));
        assert_eq!(order_at(&f, &Point::Finite(int(0))), Order::Finite(-1));
        assert_eq!(order_at(&f, &Point::Infinity), Order::Finite(-1));
        assert_eq!(order_at(&RationalFunction::zero(), &Point::Infinity), Order::Infinity);
    }

    #[test]
    fn residues() {
        let inv_z = RationalFunction::z().recip();
        assert_eq!(residue_form(&inv_z, &Point::Finite(int(0))), int(1));
        assert_eq!(residue_form(&inv_z, &Point::Infinity), int(-1));
        assert_eq!(residue_form(&RationalFunction::z(), &Point::Infinity), int(0));
        let f = z_times_z_minus_one_inv();
        assert_eq!(residue_form(&f, &Point::Finite(int(0))), int(-1));
        assert_eq!(residue_form(&f, &Point::Finite(int(1))), int(1));
        assert_eq!(residue_form(&f, &Point::Infinity), int(0));
    }

    #[test]
    fn residue_theorem_examples() {
        assert!(residue_sum_check(&RationalFunction::z().recip()).unwrap());
        assert!(residue_sum_check(&z_times_z_minus_one_inv()).unwrap());
        assert!(residue_sum_check(&RationalFunction::one()).unwrap());
        let irreducible = RationalFunction::new(Polynomial::one(), Polynomial::from_ints(&[1, 0, 1])).unwrap();
        assert!(matches!(residue_sum_check(&irreducible), Err(Error::NonRationalPoles)));
    }

    #[test]
    fn rational_roots_with_multiplicity_and_fractions() {
        let p = &(&Polynomial::linear(&rat(-2, 3)) * &Polynomial::linear(&rat(-2, 3))) * &Polynomial::from_ints(&[0, 1, 0, 1]);
        assert_eq!(rational_roots(&p), vec![rat(-2, 3), int(0)]);
    }
}

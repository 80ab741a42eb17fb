//! Band-limited infinite matrices acting on semi-infinite wedges.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_traits::Zero;

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::wedge::monomial::{WedgeMonomial, WedgeVector};

pub type Column = Arc<Vec<(i64, Rational)>>;
type ColumnFn = dyn Fn(i64) -> Result<Vec<(i64, Rational)>> + Send + Sync;

/// Infinite matrix whose column `M` has rows in `[M + lo, M + hi]`,
/// computed on demand and cached.
#[derive(Clone)]
pub struct BandedOperator {
    lo: i64,
    hi: i64,
    gen: Arc<ColumnFn>,
    cache: Arc<Mutex<HashMap<i64, Column>>>,
}

impl std::fmt::Debug for BandedOperator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BandedOperator[{}, {}]", self.lo, self.hi)
    }
}

impl BandedOperator {
    pub fn new(lo: i64, hi: i64, gen: impl Fn(i64) -> Result<Vec<(i64, Rational)>> + Send + Sync + 'static) -> Self {
        BandedOperator { lo, hi, gen: Arc::new(gen), cache: Arc::new(Mutex::new(HashMap::new())) }
    }

    pub fn zero() -> Self {
        Self::new(0, 0, |_| Ok(Vec::new()))
    }

    pub fn band(&self) -> (i64, i64) {
        (self.lo, self.hi)
    }

    pub fn column(&self, m: i64) -> Result<Column> {
        if let Some(c) = self.cache.lock().unwrap().get(&m) {
            return Ok(c.clone());
        }
        let raw = (self.gen)(m)?;
        let mut merged: BTreeMap<i64, Rational> = BTreeMap::new();
        for (row, v) in raw {
            if row < m + self.lo || row > m + self.hi {
                return Err(Error::Invariant(format!(
                    "row {row} of column {m} outside band [{}, {}]",
                    self.lo, self.hi
                )));
            }
            *merged.entry(row).or_insert_with(Rational::zero) += v;
        }
        let col: Column = Arc::new(merged.into_iter().filter(|(_, v)| !v.is_zero()).collect());
        self.cache.lock().unwrap().insert(m, col.clone());
        Ok(col)
    }

    pub fn entry(&self, row: i64, col: i64) -> Result<Rational> {
        Ok(self
            .column(col)?
            .iter()
            .find(|(r, _)| *r == row)
            .map(|(_, v)| v.clone())
            .unwrap_or_else(Rational::zero))
    }

    /// `Σ c_i op_i`
    pub fn linear_combination(terms: Vec<(Rational, BandedOperator)>) -> Self {
        let terms: Vec<_> = terms.into_iter().filter(|(c, _)| !c.is_zero()).collect();
        if terms.is_empty() {
            return Self::zero();
        }
        let lo = terms.iter().map(|(_, o)| o.lo).min().unwrap();
        let hi = terms.iter().map(|(_, o)| o.hi).max().unwrap();
        Self::new(lo, hi, move |m| {
            let mut out = Vec::new();
            for (c, op) in &terms {
                for (row, v) in op.column(m)?.iter() {
                    out.push((*row, v * c));
                }
            }
            Ok(out)
        })
    }

    /// True when the operator provably kills the monomial.
    pub fn annihilates(&self, phi: &WedgeMonomial) -> bool {
        self.lo > phi.gap().max(0)
    }

    /// Regularized action on a single monomial.
    pub fn apply_monomial(&self, phi: &WedgeMonomial) -> Result<WedgeVector> {
        let mut out = WedgeVector::zero();
        if self.annihilates(phi) {
            return Ok(out);
        }
        let m = phi.charge();
        let t = phi.tail_start();
        let mut cols: Vec<i64> = phi.prefix().to_vec();
        cols.extend(t..(t - self.lo).max(t));
        cols.extend((m..t).filter(|i| !phi.is_occupied(*i)));
        for j in cols {
            let occupied = phi.is_occupied(j);
            for (i, x) in self.column(j)?.iter() {
                if *i == j {
                    let eig = i64::from(occupied) - i64::from(j >= m);
                    if eig != 0 {
                        out.add_term(phi.clone(), x * Rational::from_integer(eig.into()));
                    }
                } else if occupied {
                    if let Some((s, psi)) = phi.replace(j, *i) {
                        out.add_term(psi, x * Rational::from_integer(s.into()));
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Applies a banded operator to a finite wedge vector.
pub fn wedge_apply(op: &BandedOperator, v: &WedgeVector) -> Result<WedgeVector> {
    let mut out = WedgeVector::zero();
    for (phi, c) in v.iter() {
        out.add_scaled(&op.apply_monomial(phi)?, c);
    }
    if let (Some(a), Some(b)) = (v.charge(), out.charge()) {
        if a != b {
            return Err(Error::Invariant("operator mixed charge sectors".into()));
        }
    }
    Ok(out)
}

/// `[A, B] v = A(Bv) - B(Av)`
pub fn commutator_apply(a: &BandedOperator, b: &BandedOperator, v: &WedgeVector) -> Result<WedgeVector> {
    let ab = wedge_apply(a, &wedge_apply(b, v)?)?;
    let ba = wedge_apply(b, &wedge_apply(a, v)?)?;
    Ok(ab.sub(&ba))
}

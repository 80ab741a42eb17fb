//! Semi-infinite wedge monomials `ψ_{N_0} ∧ ψ_{N_1} ∧ ...` with
//! `N_k = k + m` for large `k`, and finite linear combinations of them.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::arith::rational::{to_pq, Rational};
use crate::error::{Error, Result};

/// Monomial of charge `m`, stored as the strictly increasing prefix
/// `N_0 < ... < N_{K-1}` before the tail `K+m, K+m+1, ...`.
///
/// Canonical form: the last prefix entry is below `K+m-1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WedgeMonomial {
    charge: i64,
    prefix: Vec<i64>,
}

impl WedgeMonomial {
    pub fn vacuum(charge: i64) -> Self {
        WedgeMonomial { charge, prefix: Vec::new() }
    }

    /// Builds a monomial from a strictly increasing prefix; entries that
    /// merge into the tail are absorbed.
    pub fn new(charge: i64, mut prefix: Vec<i64>) -> Result<Self> {
        if prefix.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Invariant("wedge prefix must be strictly increasing".into()));
        }
        if let Some(&last) = prefix.last() {
            if last >= prefix.len() as i64 + charge {
                return Err(Error::Invariant(format!(
                    "prefix entry {last} collides with the tail starting at {}",
                    prefix.len() as i64 + charge
                )));
            }
        }
        while prefix.last().is_some_and(|&l| l == prefix.len() as i64 - 1 + charge) {
            prefix.pop();
        }
        Ok(WedgeMonomial { charge, prefix })
    }

    /// Sorts an arbitrary prefix with the sign of the permutation; `None`
    /// when an index repeats.
    pub fn from_unsorted(charge: i64, mut prefix: Vec<i64>) -> Result<Option<(i64, Self)>> {
        let mut sign = 1;
        for i in 1..prefix.len() {
            let mut j = i;
            while j > 0 && prefix[j - 1] > prefix[j] {
                prefix.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
        }
        if prefix.windows(2).any(|w| w[0] == w[1]) {
            return Ok(None);
        }
        Ok(Some((sign, Self::new(charge, prefix)?)))
    }

    pub fn charge(&self) -> i64 {
        self.charge
    }

    pub fn prefix(&self) -> &[i64] {
        &self.prefix
    }

    /// First index of the tail.
    pub fn tail_start(&self) -> i64 {
        self.prefix.len() as i64 + self.charge
    }

    pub fn is_occupied(&self, i: i64) -> bool {
        i >= self.tail_start() || self.prefix.binary_search(&i).is_ok()
    }

    /// Number of occupied indices strictly between `a` and `b`.
    pub fn occupied_between(&self, a: i64, b: i64) -> i64 {
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        if hi - lo <= 1 {
            return 0;
        }
        let start = self.prefix.partition_point(|&x| x <= lo);
        let end = self.prefix.partition_point(|&x| x < hi);
        let in_prefix = (end - start) as i64;
        let t = self.tail_start();
        let in_tail = (hi - 1 - (lo + 1).max(t) + 1).max(0);
        in_prefix + in_tail
    }

    /// Smallest occupied index.
    pub fn min_occupied(&self) -> i64 {
        self.prefix.first().copied().unwrap_or(self.charge)
    }

    /// Largest unoccupied index, if any lies below the tail.
    pub fn max_hole(&self) -> Option<i64> {
        let t = self.tail_start();
        let mut i = t - 1;
        for &p in self.prefix.iter().rev() {
            if p < i {
                return Some(i);
            }
            i -= 1;
        }
        None
    }

    /// Largest unoccupied index minus smallest occupied index.
    pub fn gap(&self) -> i64 {
        let hole = self.max_hole().unwrap_or(self.min_occupied() - 1);
        hole - self.min_occupied()
    }

    /// Explicit occupancy up to and including `upto` (at least the prefix).
    pub fn explicit_up_to(&self, upto: i64) -> Vec<i64> {
        let mut v = self.prefix.clone();
        v.extend(self.tail_start()..=upto);
        v
    }

    /// `E_{IJ}` applied to the monomial: replaces `ψ_J` by `ψ_I`.
    pub fn replace(&self, j: i64, i: i64) -> Option<(i64, Self)> {
        if i == j || !self.is_occupied(j) || self.is_occupied(i) {
            return None;
        }
        let sign = if self.occupied_between(i, j) % 2 == 0 { 1 } else { -1 };
        let mut v = self.explicit_up_to(j.max(self.tail_start() - 1));
        let pos = v.binary_search(&j).ok()?;
        v.remove(pos);
        let ins = v.partition_point(|&x| x < i);
        v.insert(ins, i);
        let m = Self::new(self.charge, v).expect("replacement keeps the monomial valid");
        Some((sign, m))
    }

    /// `Σ_k (N_k - k - m)`; never positive.
    pub fn degree(&self) -> i64 {
        self.prefix.iter().enumerate().map(|(k, &n)| n - k as i64 - self.charge).sum()
    }

    /// Degree measured in blocks of `block` consecutive indices.
    pub fn block_degree(&self, block: i64) -> i64 {
        self.prefix
            .iter()
            .enumerate()
            .map(|(k, &n)| n.div_euclid(block) - (k as i64 + self.charge).div_euclid(block))
            .sum()
    }

    /// Relabels every index `nB + q` as `nB + σ(q)` and re-sorts with sign.
    pub fn permute_within_blocks(&self, block: i64, sigma: &[i64]) -> Result<(i64, Self)> {
        let t = self.tail_start();
        let upto = (t + block - 1).div_euclid(block) * block - 1;
        let v: Vec<i64> = self
            .explicit_up_to(upto)
            .into_iter()
            .map(|x| x.div_euclid(block) * block + sigma[x.rem_euclid(block) as usize])
            .collect();
        Self::from_unsorted(self.charge, v)?.ok_or_else(|| Error::Invariant("permutation collapsed a monomial".into()))
    }

    /// All monomials of this charge with degree in `[-max_depth, 0]`,
    /// ordered by depth; they correspond to partitions of the depth.
    pub fn enumerate(charge: i64, max_depth: usize) -> Vec<Self> {
        let mut out = Vec::new();
        for d in 0..=max_depth {
            for lambda in partitions(d) {
                let prefix = lambda.iter().enumerate().map(|(k, &l)| k as i64 + charge - l).collect();
                out.push(WedgeMonomial { charge, prefix });
            }
        }
        out
    }
}

/// Partitions of `n` as weakly decreasing positive parts.
pub fn partitions(n: usize) -> Vec<Vec<i64>> {
    fn rec(n: i64, max: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=max.min(n)).rev() {
            cur.push(part);
            rec(n - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n as i64, n as i64, &mut Vec::new(), &mut out);
    out
}

impl fmt::Display for WedgeMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for n in &self.prefix {
            write!(f, "ψ{n}∧")?;
        }
        write!(f, "ψ{}∧...", self.tail_start())
    }
}

/// Finite linear combination of monomials of one charge.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct WedgeVector {
    terms: BTreeMap<WedgeMonomial, Rational>,
}

impl WedgeVector {
    pub fn zero() -> Self {
        WedgeVector { terms: BTreeMap::new() }
    }

    pub fn monomial(m: WedgeMonomial) -> Self {
        let mut v = Self::zero();
        v.terms.insert(m, Rational::one());
        v
    }

    pub fn add_term(&mut self, m: WedgeMonomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        if let Some(x) = self.terms.get_mut(&m) {
            *x += c;
            if x.is_zero() {
                self.terms.remove(&m);
            }
        } else {
            self.terms.insert(m, c);
        }
    }

    pub fn add_scaled(&mut self, o: &Self, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (m, x) in &o.terms {
            self.add_term(m.clone(), x * c);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut v = self.clone();
        v.add_scaled(o, &Rational::one());
        v
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut v = self.clone();
        v.add_scaled(o, &-Rational::one());
        v
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut v = Self::zero();
        v.add_scaled(self, c);
        v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<WedgeMonomial, Rational> {
        &self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = (&WedgeMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &WedgeMonomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn charge(&self) -> Option<i64> {
        self.terms.keys().next().map(|m| m.charge)
    }

    /// `(min, max)` of the monomial degrees.
    pub fn degree_range(&self) -> Option<(i64, i64)> {
        let lo = self.terms.keys().map(|m| m.degree()).min()?;
        let hi = self.terms.keys().map(|m| m.degree()).max()?;
        Some((lo, hi))
    }

    /// `Some(s)` when the vector equals `s * v`.
    pub fn ratio_to(&self, v: &Self) -> Option<Rational> {
        if v.is_zero() {
            return if self.is_zero() { Some(Rational::zero()) } else { None };
        }
        let (m0, c0) = v.terms.iter().next().unwrap();
        let s = self.coefficient(m0) / c0;
        if *self == v.scale(&s) {
            Some(s)
        } else {
            None
        }
    }
}

impl fmt::Display for WedgeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("({}) {m}", to_pq(c))).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

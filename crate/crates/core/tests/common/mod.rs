//! Independent residue arithmetic for genus-0 forms written as sums of
//! products `c ∏ (z - P_i)^{k_i}` over the puncture list.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qpow(x: &Q, e: i64) -> Q {
    let mut r = Q::one();
    for _ in 0..e.unsigned_abs() {
        r *= x;
    }
    if e < 0 {
        r.recip()
    } else {
        r
    }
}

/// `k (k-1) ... (k-r+1) / r!`
pub fn binom(k: i64, r: usize) -> Q {
    let mut out = Q::one();
    for i in 0..r as i64 {
        out = out * q(k - i) / q(i + 1);
    }
    out
}

#[derive(Clone, Debug)]
pub struct Term {
    pub c: Q,
    pub exps: Vec<i64>,
}

#[derive(Clone, Debug)]
pub struct Form {
    pub pts: Vec<Q>,
    pub terms: Vec<Term>,
}

impl Form {
    pub fn single(pts: &[Q], c: Q, exps: Vec<i64>) -> Self {
        Form { pts: pts.to_vec(), terms: vec![Term { c, exps }] }
    }

    /// `f^λ_{n,p}` from its divisor and normalisation.
    pub fn basis(pts: &[Q], weight: i64, n: i64, p: usize) -> Self {
        let k = n + 1 - weight;
        let mut c = Q::one();
        let mut exps = Vec::new();
        for (i, a) in pts.iter().enumerate() {
            if i + 1 == p {
                exps.push(k - 1);
            } else {
                c *= qpow(&(&pts[p - 1] - a), -k);
                exps.push(k);
            }
        }
        Form::single(pts, c, exps)
    }

    pub fn scale(&self, s: &Q) -> Self {
        Form { pts: self.pts.clone(), terms: self.terms.iter().map(|t| Term { c: &t.c * s, exps: t.exps.clone() }).collect() }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(o.terms.iter().cloned());
        Form { pts: self.pts.clone(), terms }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&q(-1)))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut terms = Vec::new();
        for a in &self.terms {
            for b in &o.terms {
                terms.push(Term { c: &a.c * &b.c, exps: a.exps.iter().zip(&b.exps).map(|(x, y)| x + y).collect() });
            }
        }
        Form { pts: self.pts.clone(), terms }
    }

    /// Product rule on every factor.
    pub fn d(&self) -> Self {
        let mut terms = Vec::new();
        for t in &self.terms {
            for (j, &k) in t.exps.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let mut exps = t.exps.clone();
                exps[j] -= 1;
                terms.push(Term { c: &t.c * q(k), exps });
            }
        }
        Form { pts: self.pts.clone(), terms }
    }

    pub fn dn(&self, n: usize) -> Self {
        (0..n).fold(self.clone(), |f, _| f.d())
    }

    /// Coefficient of `(z - P_j)^{-1}` in the local expansion.
    pub fn residue_at(&self, j: usize) -> Q {
        let mut total = Q::zero();
        for t in &self.terms {
            let need = -1 - t.exps[j];
            if need < 0 {
                continue;
            }
            let need = need as usize;
            let mut series = vec![Q::zero(); need + 1];
            series[0] = t.c.clone();
            for (i, &k) in t.exps.iter().enumerate() {
                if i == j || k == 0 {
                    continue;
                }
                let d = &self.pts[j] - &self.pts[i];
                let factor: Vec<Q> = (0..=need).map(|r| binom(k, r) * qpow(&d, k - r as i64)).collect();
                let mut next = vec![Q::zero(); need + 1];
                for (a, x) in series.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (b, y) in factor.iter().enumerate().take(need + 1 - a) {
                        next[a + b] += x * y;
                    }
                }
                series = next;
            }
            total += &series[need];
        }
        total
    }

    pub fn residue_sum(&self) -> Q {
        (0..self.pts.len()).map(|j| self.residue_at(j)).sum()
    }

    /// Order of a single-term form at `P_j`, and at infinity.
    pub fn orders(&self) -> (Vec<i64>, i64) {
        assert_eq!(self.terms.len(), 1);
        let e = &self.terms[0].exps;
        (e.clone(), -e.iter().sum::<i64>())
    }
}

pub fn pairing(f: &Form, g: &Form) -> Q {
    f.mul(g).residue_sum()
}

/// `res g dh`
pub fn gamma_a(g: &Form, h: &Form) -> Q {
    g.mul(&h.d()).residue_sum()
}

/// `res ½(e''' f - e f''')` for vector field coefficients.
pub fn gamma_l(e: &Form, f: &Form) -> Q {
    e.dn(3).mul(f).sub(&e.mul(&f.dn(3))).residue_sum() * qr(1, 2)
}

/// `res e g''`
pub fn gamma_m(e: &Form, g: &Form) -> Q {
    e.mul(&g.dn(2)).residue_sum()
}

/// Expansion coefficients of `f` (weight `w`) on degrees `lo..=hi`.
pub fn expand(f: &Form, w: i64, lo: i64, hi: i64) -> Vec<((i64, usize), Q)> {
    let mut out = Vec::new();
    for n in lo..=hi {
        for p in 1..=f.pts.len() {
            let c = pairing(f, &Form::basis(&f.pts, 1 - w, -n, p));
            if !c.is_zero() {
                out.push(((n, p), c));
            }
        }
    }
    out
}

pub fn points(v: &[i64]) -> Vec<Q> {
    v.iter().map(|&x| q(x)).collect()
}

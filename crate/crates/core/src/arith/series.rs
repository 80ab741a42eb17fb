//! Truncated power series helpers (coefficient vectors, lowest order first).

use num_traits::Zero;

use super::rational::{int, pow_i, Rational};

pub fn mul_trunc(a: &[Rational], b: &[Rational], len: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Inverse of a series with nonzero constant term, to `len` coefficients.
pub fn inv_trunc(a: &[Rational], len: usize) -> Vec<Rational> {
    assert!(!a[0].is_zero(), "series inverse needs a unit constant term");
    let a0_inv = a[0].recip();
    let mut out: Vec<Rational> = Vec::with_capacity(len);
    for k in 0..len {
        let mut s = if k == 0 { Rational::from_integer(1.into()) } else { Rational::zero() };
        for j in 1..=k.min(a.len().saturating_sub(1)) {
            s -= &a[j] * &out[k - j];
        }
        out.push(s * &a0_inv);
    }
    out
}

/// `a / b` as series, `b[0] != 0`.
pub fn div_trunc(a: &[Rational], b: &[Rational], len: usize) -> Vec<Rational> {
    mul_trunc(a, &inv_trunc(b, len), len)
}

/// Expansion of `(t + d)^e` around `t = 0`, for `d != 0` and any integer `e`.
pub fn binomial_series(d: &Rational, e: i64, len: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(len);
    if len == 0 {
        return out;
    }
    let mut c = pow_i(d, e);
    let d_inv = d.recip();
    for k in 0..len as i64 {
        out.push(c.clone());
        if c.is_zero() {
            continue;
        }
        c = c * int(e - k) * &d_inv / int(k + 1);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;

    #[test]
    fn inverse_times_original_is_one() {
        let a = vec![int(2), int(-1), rat(1, 3)];
        let inv = inv_trunc(&a, 6);
        let p = mul_trunc(&a, &inv, 6);
        assert_eq!(p[0], int(1));
        assert!(p[1..].iter().all(|c| c.is_zero()));
    }

    #[test]
    fn binomial_positive_power_terminates() {
        // (t + 2)^2 = 4 + 4t + t^2
        assert_eq!(binomial_series(&int(2), 2, 5), vec![int(4), int(4), int(1), int(0), int(0)]);
    }

    #[test]
    fn binomial_negative_power() {
        // 1/(t - 1) = -(1 + t + t^2 + ...)
        assert_eq!(binomial_series(&int(-1), -1, 3), vec![int(-1), int(-1), int(-1)]);
    }
}

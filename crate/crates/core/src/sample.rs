//! Seeded random sampling of test objects.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::affine::{AlgebraTag, CurrentElement, Matrix};
use crate::arith::{rat, Rational};
use crate::basis::{BasisIndex, KNExpansion};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `p/q` with `|p| <= 3`, `1 <= q <= 3`.
pub fn small_rational(rng: &mut impl Rng) -> Rational {
    rat(rng.gen_range(-3..=3), rng.gen_range(1..=3))
}

pub fn basis_index(rng: &mut impl Rng, weight: i64, n_punct: usize, window: (i64, i64)) -> BasisIndex {
    BasisIndex::new(weight, rng.gen_range(window.0..=window.1), rng.gen_range(1..=n_punct))
}

pub fn expansion(rng: &mut impl Rng, weight: i64, n_punct: usize, window: (i64, i64), terms: usize) -> KNExpansion {
    let mut e = KNExpansion::zero(weight);
    for _ in 0..terms {
        e.add_term(basis_index(rng, weight, n_punct, window), small_rational(rng));
    }
    e
}

/// Random element of `gl(l)`, `sl(l)` or `gl(1)`.
pub fn matrix(rng: &mut impl Rng, tag: AlgebraTag, l: usize) -> Matrix {
    let mut m = Matrix::zero(l);
    for i in 0..l {
        for j in 0..l {
            m.set(i, j, small_rational(rng));
        }
    }
    if tag == AlgebraTag::SL {
        let t = m.trace() / Rational::from_integer((l as i64).into());
        m = m.sub(&Matrix::identity(l).scale(&t));
    }
    m
}

pub fn current(rng: &mut impl Rng, tag: AlgebraTag, l: usize, n_punct: usize, window: (i64, i64), terms: usize) -> CurrentElement {
    let mut c = CurrentElement::zero(tag, l);
    for _ in 0..terms {
        c.add_term(basis_index(rng, 0, n_punct, window), matrix(rng, tag, l));
    }
    c
}

use std::sync::Arc;

use kn_algebra::affine::{AlgebraTag, Matrix};
use kn_algebra::arith::{int, rat};
use kn_algebra::basis::{BasisIndex, Geometry, KNExpansion};
use kn_algebra::casimir::mixing_level;
use kn_algebra::structure::KnAlgebra;
use kn_algebra::sugawara::SugawaraContext;
use kn_algebra::wedge::{FermionModule, RepresentationData, WedgeMonomial, WedgeVector};

fn module(n: usize, tag: AlgebraTag, l: usize) -> Arc<FermionModule> {
    let alg = Arc::new(KnAlgebra::new(Geometry::standard(n)));
    Arc::new(FermionModule::new(alg, RepresentationData::fundamental(tag, l, 1).unwrap()).unwrap())
}

fn samples() -> Vec<WedgeVector> {
    WedgeMonomial::enumerate(0, 3).into_iter().map(WedgeVector::monomial).collect()
}

#[test]
fn current_defect_constant_is_minus_one() {
    for (n, tag, l) in [(1, AlgebraTag::GL1, 1), (2, AlgebraTag::GL1, 1), (1, AlgebraTag::SL, 2)] {
        assert_eq!(module(n, tag, l).current_level().unwrap(), int(-1));
    }
}

#[test]
fn level_is_minus_alpha() {
    let m = module(1, AlgebraTag::GL1, 1);
    let e = KNExpansion::basis(BasisIndex::new(-1, 0, 1));
    let a = KNExpansion::basis(BasisIndex::new(0, 1, 1));
    let x = Matrix::identity(1);
    let good = SugawaraContext::from_module(m.clone()).unwrap();
    assert_eq!(good.parts()[0].level, int(1));
    assert!(good.check_fundamental(&e, &x, &a, &samples()).unwrap());
    let literal = SugawaraContext::with_level(m, int(-1)).unwrap();
    assert!(!literal.check_fundamental(&e, &x, &a, &samples()).unwrap());
}

#[test]
fn critical_level_is_rejected() {
    assert!(SugawaraContext::with_level(module(1, AlgebraTag::SL, 2), int(-2)).is_err());
    assert!(SugawaraContext::with_level(module(1, AlgebraTag::GL1, 1), int(0)).is_err());
}

#[test]
fn fermion_mixing_defect_is_minus_one_half() {
    for (n, tag, l) in [(1, AlgebraTag::GL1, 1), (2, AlgebraTag::GL1, 1), (1, AlgebraTag::GL, 2)] {
        let ctx = SugawaraContext::from_module(module(n, tag, l)).unwrap();
        assert_eq!(mixing_level(&ctx).unwrap(), rat(-1, 2));
    }
    let ctx = SugawaraContext::from_module(module(1, AlgebraTag::SL, 2)).unwrap();
    assert!(mixing_level(&ctx).is_err());
}

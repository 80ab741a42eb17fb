//! Sugawara operators on the fermion module and the relation with currents.

use std::sync::Arc;

use kn_algebra::affine::AlgebraTag;
use kn_algebra::basis::{BasisIndex, Geometry, KNExpansion};
use kn_algebra::cli::verify::{fundamental, sample_vectors};
use kn_algebra::structure::KnAlgebra;
use kn_algebra::sugawara::{sugawara_support, SugawaraContext};
use kn_algebra::wedge::{FermionModule, RepresentationData, WedgeMonomial, WedgeVector};

fn main() -> kn_algebra::Result<()> {
    for n in 1..=2 {
        let alg = Arc::new(KnAlgebra::new(Geometry::standard(n)));
        let module = Arc::new(FermionModule::new(alg, RepresentationData::fundamental(AlgebraTag::GL1, 1, 1)?)?);
        let ctx = SugawaraContext::from_module(module)?;
        println!("{n} punctures, support {}", sugawara_support(n));

        let v = WedgeVector::monomial(WedgeMonomial::new(0, vec![-2, 0])?);
        for k in -1..=1 {
            println!("  L_({k},1) {v} = {}", ctx.apply_sugawara(k, 1, &v)?);
        }
        let e = KNExpansion::basis(BasisIndex::new(-1, 1, 1));
        println!("  T[e_(1,1)] {v} = {}", ctx.apply_t_of_field(&e, &v)?);
        let rec = fundamental(&ctx, (-1, 1), (-1, 1), &sample_vectors(0, 3))?;
        println!("  [T, current] relation: {} ({})", rec.status, rec.witness);
    }
    Ok(())
}

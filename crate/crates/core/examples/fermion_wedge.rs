//! Semi-infinite wedge monomials and currents acting on them; extracts the
//! central defect of the current commutator.

use std::sync::Arc;

use kn_algebra::affine::{AlgebraTag, Matrix};
use kn_algebra::basis::{BasisIndex, Geometry, KNExpansion};
use kn_algebra::structure::KnAlgebra;
use kn_algebra::wedge::{commutator_apply, wedge_apply, FermionModule, RepresentationData, WedgeMonomial, WedgeVector};

fn main() -> kn_algebra::Result<()> {
    let alg = Arc::new(KnAlgebra::new(Geometry::standard(2)));
    let module = FermionModule::new(alg, RepresentationData::fundamental(AlgebraTag::GL1, 1, 1)?)?;

    for m in WedgeMonomial::enumerate(0, 3) {
        println!("{m}  degree {}", m.degree());
    }

    let vac = WedgeVector::monomial(WedgeMonomial::vacuum(0));
    let one = Matrix::identity(1);
    let j = |d| module.current_operator(&one, &KNExpansion::basis(BasisIndex::new(0, d, 1)));
    let (jm, jp) = (j(-1)?, j(1)?);
    println!("\nJ(-1) vac = {}", wedge_apply(&jm, &vac)?);
    println!("[J(1), J(-1)] vac = {}", commutator_apply(&jp, &jm, &vac)?);
    println!("current level {}", module.current_level()?);
    Ok(())
}

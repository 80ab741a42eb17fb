//! Casimir system for the mixing cocycle, a semi-casimir field and a
//! pairwise commutator.

use std::sync::Arc;

use kn_algebra::affine::AlgebraTag;
use kn_algebra::basis::{BasisIndex, Geometry, KNExpansion};
use kn_algebra::casimir::{casimir_solve, check_pairwise_scalar, gamma_extend, mixing_level, CandidateKind, CasimirCandidate};
use kn_algebra::cli::verify::sample_vectors;
use kn_algebra::cocycles::GeometricCocycle;
use kn_algebra::structure::KnAlgebra;
use kn_algebra::sugawara::SugawaraContext;
use kn_algebra::wedge::{FermionModule, RepresentationData};

fn main() -> kn_algebra::Result<()> {
    let geom = Geometry::standard(1);
    let gam = GeometricCocycle::mixing(&geom);
    let g = |e: BasisIndex, a: BasisIndex| gam.eval_basis(&geom, e, a);

    let rep = casimir_solve(&g, 1, (-4, 4))?;
    for (k, d) in &rep.diagonal {
        println!("diagonal at {k}: {d}");
    }
    println!("kernel dimension {}, genericity failures {:?}", rep.basis.len(), rep.genericity_failures);
    for c in &rep.basis {
        println!("  {}", c.coefficients);
    }

    let seed = KNExpansion::basis(BasisIndex::new(-1, -1, 1));
    let ext = gamma_extend(&seed, &g, 1, 8, 0)?;
    println!("\nGamma(e_-1) = {} (exact: {})", ext.coefficients, ext.exact);

    let alg = Arc::new(KnAlgebra::new(geom.clone()));
    let module = Arc::new(FermionModule::new(alg, RepresentationData::fundamental(AlgebraTag::GL1, 1, 1)?)?);
    let ctx = SugawaraContext::from_module(module)?;
    println!("mixing level {}", mixing_level(&ctx)?);
    let field = |d| CasimirCandidate::exact(KNExpansion::basis(BasisIndex::new(-1, d, 1)), CandidateKind::Casimir);
    let r = check_pairwise_scalar(&ctx, &field(2), &field(-2), &sample_vectors(0, 4))?;
    println!("[Delta(e_2), Delta(e_-2)]: {} scalar {:?}", r.status, r.scalar.map(|s| s.to_string()));
    Ok(())
}

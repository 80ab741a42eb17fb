//! Fermion representation on semi-infinite wedges.

pub mod monomial;
pub mod operator;
pub mod rep;

pub use monomial::{partitions, WedgeMonomial, WedgeVector};
pub use operator::{commutator_apply, wedge_apply, BandedOperator};
pub use rep::{probe_matrix, section_basis, FermionModule, RepresentationData, SectionIndex, Shape};

/// `Σ_k (N_k - k - m)`
pub fn monomial_degree(phi: &WedgeMonomial) -> i64 {
    phi.degree()
}

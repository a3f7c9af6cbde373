//! Rational and integral equivalence of permutation modules `Z[G/P]`.

mod algebra;
mod certificate;
mod character;
pub mod format;
mod hom;
mod pair;
mod rational;
mod transport;

pub use algebra::{
    lift_to_group_algebra, GroupAlgebra, GroupAlgebraElement, GroupAlgebraLift, DEFAULT_ALGEBRA_BUDGET,
};
pub use certificate::{
    find_unimodular_certificate, kronecker_certificate, search_span, verify_certificate, verify_with_actions,
    CertificateOrigin, EquivalenceCertificate, SearchConfig, Verification,
};
pub use character::{fixed_coset_count, is_q_equivalent, permutation_character, PermutationCharacter};
pub use hom::{
    equivariance_defect, equivariant_solution_dimension, hom_basis, hom_basis_for_tables, is_equivariant,
    HomLatticeBasis,
};
pub use pair::SubgroupPair;
pub use rational::{conjugation_matrix, find_rational_iso, RationalIso};
pub use transport::{based_bijection, transport_along_actions, transport_certificate};

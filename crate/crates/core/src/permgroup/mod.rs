//! Permutation groups small enough to enumerate completely.

mod classes;
mod cosets;
mod group;
pub mod io;
mod perm;
mod psl;
mod search;

pub use classes::ConjugacyClasses;
pub use cosets::CosetTable;
pub use group::{closure, FiniteGroup, Subgroup, DEFAULT_ELEMENT_BUDGET};
pub use perm::Permutation;
pub use psl::psl2;
pub use search::{
    are_conjugate, double_cosets, find_triangle_subgroups, is_simple, normal_closure,
    subgroup_conjugacy_classes, DoubleCosetDecomposition,
};

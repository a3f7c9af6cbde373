use crate::error::Result;
use crate::permgroup::{are_conjugate, ConjugacyClasses, CosetTable, FiniteGroup, Permutation, Subgroup};

/// A group with two subgroups and their coset tables, built once and
/// shared by the character, Hom-lattice and certificate routines.
#[derive(Clone, Debug)]
pub struct SubgroupPair {
    pub group: FiniteGroup,
    pub p1: Subgroup,
    pub p2: Subgroup,
    pub t1: CosetTable,
    pub t2: CosetTable,
}

impl SubgroupPair {
    pub fn new(group: FiniteGroup, p1: Subgroup, p2: Subgroup) -> Result<Self> {
        let t1 = CosetTable::new(&group, &p1)?;
        let t2 = CosetTable::new(&group, &p2)?;
        Ok(SubgroupPair {
            group,
            p1,
            p2,
            t1,
            t2,
        })
    }

    pub fn from_generators(
        group: FiniteGroup,
        gens1: Vec<Permutation>,
        gens2: Vec<Permutation>,
    ) -> Result<Self> {
        let p1 = group.subgroup(gens1)?;
        let p2 = group.subgroup(gens2)?;
        Self::new(group, p1, p2)
    }

    /// The pair with its subgroups exchanged.
    pub fn swapped(&self) -> SubgroupPair {
        SubgroupPair {
            group: self.group.clone(),
            p1: self.p2.clone(),
            p2: self.p1.clone(),
            t1: self.t2.clone(),
            t2: self.t1.clone(),
        }
    }

    pub fn same_index(&self) -> bool {
        self.t1.index() == self.t2.index()
    }

    pub fn conjugating_element(&self) -> Option<Permutation> {
        are_conjugate(&self.group, &self.p1, &self.p2)
    }

    pub fn classes(&self) -> ConjugacyClasses {
        ConjugacyClasses::compute(&self.group)
    }
}

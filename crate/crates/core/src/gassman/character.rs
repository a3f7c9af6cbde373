use super::SubgroupPair;
use crate::permgroup::{ConjugacyClasses, CosetTable, FiniteGroup, Permutation, Subgroup};
use serde::Serialize;

/// Fixed-coset counts of `G` on `G/P`, one value per conjugacy class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PermutationCharacter {
    pub values: Vec<u64>,
    pub class_sizes: Vec<usize>,
}

impl PermutationCharacter {
    /// `Σ_{g∈G} fix(g)`, which equals `|G|` for a transitive action.
    pub fn burnside_sum(&self) -> u64 {
        self.values
            .iter()
            .zip(&self.class_sizes)
            .map(|(&v, &s)| v * s as u64)
            .sum()
    }
}

/// Uses `fix(g) = [G:P] · |g^G ∩ P| / |g^G|`, so no coset action is needed.
pub fn permutation_character(
    g: &FiniteGroup,
    classes: &ConjugacyClasses,
    p: &Subgroup,
) -> PermutationCharacter {
    let mut hits = vec![0u64; classes.len()];
    for h in p.elements() {
        let i = g.index_of(h).expect("subgroup of the group");
        hits[classes.class_of(i)] += 1;
    }
    let index = (g.order() / p.order()) as u64;
    let values = hits
        .iter()
        .zip(classes.sizes())
        .map(|(&h, &size)| {
            let num = index * h;
            assert_eq!(num % size as u64, 0, "fixed-point count must be integral");
            num / size as u64
        })
        .collect();
    PermutationCharacter {
        values,
        class_sizes: classes.sizes().to_vec(),
    }
}

/// Number of cosets fixed by `g`, read off the coset action directly.
pub fn fixed_coset_count(table: &CosetTable, g: &Permutation) -> usize {
    let action = table.action_of(g).expect("element of the acting group");
    (0..table.index()).filter(|&i| action.apply(i) == i).count()
}

/// Equality of permutation characters.
pub fn is_q_equivalent(g: &FiniteGroup, p1: &Subgroup, p2: &Subgroup) -> bool {
    if p1.order() != p2.order() {
        return false;
    }
    let classes = ConjugacyClasses::compute(g);
    permutation_character(g, &classes, p1) == permutation_character(g, &classes, p2)
}

impl SubgroupPair {
    pub fn characters(&self) -> (PermutationCharacter, PermutationCharacter) {
        let classes = self.classes();
        (
            permutation_character(&self.group, &classes, &self.p1),
            permutation_character(&self.group, &classes, &self.p2),
        )
    }

    pub fn is_q_equivalent(&self) -> bool {
        is_q_equivalent(&self.group, &self.p1, &self.p2)
    }
}

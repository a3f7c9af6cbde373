use super::Permutation;
use crate::error::{Error, Result};
use std::collections::{HashMap, HashSet, VecDeque};

/// Default cap on the number of enumerated elements.
pub const DEFAULT_ELEMENT_BUDGET: usize = 200_000;

/// All elements of `⟨gens⟩`, sorted lexicographically.
pub fn closure(degree: usize, gens: &[Permutation], budget: usize) -> Result<Vec<Permutation>> {
    let id = Permutation::identity(degree);
    let mut seen: HashSet<Permutation> = HashSet::new();
    seen.insert(id.clone());
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for s in gens {
            let y = s * &x;
            if !seen.contains(&y) {
                if seen.len() >= budget {
                    return Err(Error::budget(budget, "enumerating a group closure"));
                }
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    let mut elements: Vec<Permutation> = seen.into_iter().collect();
    elements.sort_unstable();
    Ok(elements)
}

/// A fully enumerated permutation group.
#[derive(Clone)]
pub struct FiniteGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, u32>,
}

impl FiniteGroup {
    pub fn from_generators(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        Self::with_budget(degree, generators, DEFAULT_ELEMENT_BUDGET)
    }

    pub fn with_budget(degree: usize, generators: Vec<Permutation>, budget: usize) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidPermutation("degree must be positive".into()));
        }
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::InvalidPermutation(format!(
                    "generator {g} has degree {} but the group has degree {degree}",
                    g.degree()
                )));
            }
        }
        let generators = if generators.is_empty() {
            vec![Permutation::identity(degree)]
        } else {
            generators
        };
        let elements = closure(degree, &generators, budget)?;
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, g)| (g.clone(), i as u32))
            .collect();
        Ok(FiniteGroup {
            degree,
            generators,
            elements,
            index,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Elements in canonical (lexicographic) order; index 0 is the identity.
    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    pub fn index_of(&self, g: &Permutation) -> Option<usize> {
        self.index.get(g).map(|&i| i as usize)
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.index.contains_key(g)
    }

    /// Index of the product `elements[i] * elements[j]`.
    pub fn mul_index(&self, i: usize, j: usize) -> usize {
        self.index_of(&(&self.elements[i] * &self.elements[j]))
            .expect("group is closed under products")
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .all(|a| self.generators.iter().all(|b| a * b == b * a))
    }

    pub fn element_orders(&self) -> Vec<u64> {
        self.elements.iter().map(Permutation::order).collect()
    }

    pub fn subgroup(&self, generators: Vec<Permutation>) -> Result<Subgroup> {
        for g in &generators {
            if !self.contains(g) {
                return Err(Error::NotASubgroup(format!("generator {g} is not in the group")));
            }
        }
        let elements = closure(self.degree, &generators, self.order() + 1)?;
        Ok(Subgroup::from_parts(generators, elements, self.order()))
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_parts(self.generators.clone(), self.elements.clone(), self.order())
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup::from_parts(Vec::new(), vec![self.identity()], self.order())
    }

    /// Whether `gens` generate the whole group.
    pub fn is_generated_by(&self, gens: &[Permutation]) -> bool {
        matches!(closure(self.degree, gens, self.order() + 1), Ok(e) if e.len() == self.order())
    }

    /// Checks that `p` is a subgroup of this group.
    pub fn check_subgroup(&self, p: &Subgroup) -> Result<()> {
        if let Some(g) = p.elements().iter().find(|g| !self.contains(g)) {
            return Err(Error::NotASubgroup(format!("element {g} is not in the group")));
        }
        if !self.order().is_multiple_of(p.order()) {
            return Err(Error::NotASubgroup(format!(
                "order {} does not divide {}",
                p.order(),
                self.order()
            )));
        }
        Ok(())
    }
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

/// A subgroup, compared by its element set.
#[derive(Clone)]
pub struct Subgroup {
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
}

impl Subgroup {
    fn from_parts(generators: Vec<Permutation>, elements: Vec<Permutation>, parent_order: usize) -> Self {
        assert_eq!(
            parent_order % elements.len(),
            0,
            "subgroup order must divide the group order"
        );
        Subgroup {
            generators,
            elements,
        }
    }

    /// Closes `generators` without a parent group (used for subgroups of
    /// groups too large to enumerate).
    pub fn generated_by(degree: usize, generators: Vec<Permutation>, budget: usize) -> Result<Self> {
        let elements = closure(degree, &generators, budget)?;
        Ok(Subgroup {
            generators,
            elements,
        })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn degree(&self) -> usize {
        self.elements[0].degree()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Sorted elements.
    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.elements.binary_search(g).is_ok()
    }

    /// `g⁻¹ P g`.
    pub fn conjugate_by(&self, g: &Permutation) -> Subgroup {
        let gi = g.inverse();
        let conj = |x: &Permutation| gi.compose(x).compose(g);
        let mut elements: Vec<Permutation> = self.elements.iter().map(conj).collect();
        elements.sort_unstable();
        Subgroup {
            generators: self.generators.iter().map(conj).collect(),
            elements,
        }
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements
    }
}

impl Eq for Subgroup {}

impl std::hash::Hash for Subgroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.elements.hash(state)
    }
}

impl std::fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Subgroup")
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

use super::FiniteGroup;
use std::collections::VecDeque;

/// Conjugacy classes of an enumerated group.
///
/// Class `c` has the lexicographically least member as representative and
/// classes are sorted by representative, so class 0 is the identity.
#[derive(Clone, Debug)]
pub struct ConjugacyClasses {
    representatives: Vec<usize>,
    sizes: Vec<usize>,
    class_of: Vec<u32>,
}

impl ConjugacyClasses {
    pub fn compute(g: &FiniteGroup) -> Self {
        let n = g.order();
        let mut class_of = vec![u32::MAX; n];
        let mut representatives = Vec::new();
        let mut sizes = Vec::new();
        let gens: Vec<_> = g.generators().iter().map(|s| (s.clone(), s.inverse())).collect();
        // scanning in element order makes the first unseen element the class minimum
        for start in 0..n {
            if class_of[start] != u32::MAX {
                continue;
            }
            let c = representatives.len() as u32;
            representatives.push(start);
            class_of[start] = c;
            let mut size = 1;
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for (s, si) in &gens {
                    let y = &(s * g.element(x)) * si;
                    let j = g.index_of(&y).expect("conjugates stay in the group");
                    if class_of[j] == u32::MAX {
                        class_of[j] = c;
                        size += 1;
                        queue.push_back(j);
                    }
                }
            }
            sizes.push(size);
        }
        ConjugacyClasses {
            representatives,
            sizes,
            class_of,
        }
    }

    pub fn len(&self) -> usize {
        self.sizes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sizes.is_empty()
    }

    /// Element indices of the class representatives.
    pub fn representatives(&self) -> &[usize] {
        &self.representatives
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// Class index of each element, by element index.
    pub fn class_of(&self, element: usize) -> usize {
        self.class_of[element] as usize
    }

    pub fn members(&self, class: usize) -> Vec<usize> {
        (0..self.class_of.len())
            .filter(|&i| self.class_of[i] as usize == class)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgroup::{psl2, Permutation};

    #[test]
    fn s4_has_five_classes() {
        let gens = vec![
            Permutation::parse_cycles("(0 1 2 3)", 4).unwrap(),
            Permutation::parse_cycles("(0 1)", 4).unwrap(),
        ];
        let g = FiniteGroup::from_generators(4, gens).unwrap();
        let cc = ConjugacyClasses::compute(&g);
        let mut sizes = cc.sizes().to_vec();
        sizes.sort();
        assert_eq!(sizes, vec![1, 3, 6, 6, 8]);
        assert_eq!(cc.class_of(0), 0);
    }

    #[test]
    fn class_equation_and_membership() {
        let g = psl2(7).unwrap();
        let cc = ConjugacyClasses::compute(&g);
        assert_eq!(cc.len(), 6);
        assert_eq!(cc.sizes().iter().sum::<usize>(), 168);
        for c in 0..cc.len() {
            assert_eq!(cc.members(c).len(), cc.sizes()[c]);
            assert_eq!(168 % cc.sizes()[c], 0);
            let rep = cc.representatives()[c];
            assert_eq!(*cc.members(c).iter().min().unwrap(), rep);
        }
    }
}

use super::{FiniteGroup, Permutation, Subgroup};
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use std::collections::{HashMap, VecDeque};

/// Left cosets `G/P` with the action of a fixed generating list.
///
/// Coset `i` is `reps[i]·P`; coset 0 is `P` itself. Cosets are numbered in
/// breadth-first order from `P`, trying generators in their given order, so
/// labels depend only on the generator list and `P`.
#[derive(Clone, Debug)]
pub struct CosetTable {
    subgroup: Subgroup,
    generators: Vec<Permutation>,
    actions: Vec<Permutation>,
    reps: Vec<Permutation>,
    keys: HashMap<Permutation, u32>,
}

/// Canonical name of `g·P`: its lexicographically least element.
fn coset_key(g: &Permutation, p: &Subgroup) -> Permutation {
    p.elements()
        .iter()
        .map(|h| g * h)
        .min()
        .expect("subgroups are non-empty")
}

impl CosetTable {
    pub fn new(g: &FiniteGroup, p: &Subgroup) -> Result<Self> {
        g.check_subgroup(p)?;
        let table = Self::from_generators(g.generators(), p)?;
        if table.index() * p.order() != g.order() {
            return Err(Error::NotASubgroup(format!(
                "coset count {} times |P| = {} does not equal |G| = {}",
                table.index(),
                p.order(),
                g.order()
            )));
        }
        Ok(table)
    }

    /// Orbit of `P` under left multiplication by `generators`; with
    /// generators of the ambient group this is all of `G/P`.
    pub fn from_generators(generators: &[Permutation], p: &Subgroup) -> Result<Self> {
        let degree = p.degree();
        if let Some(s) = generators.iter().find(|s| s.degree() != degree) {
            return Err(Error::InvalidPermutation(format!(
                "generator {s} has the wrong degree"
            )));
        }
        let id = Permutation::identity(degree);
        let mut keys = HashMap::new();
        keys.insert(coset_key(&id, p), 0u32);
        let mut reps = vec![id];
        let mut images: Vec<Vec<u32>> = vec![Vec::new(); generators.len()];
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for (k, s) in generators.iter().enumerate() {
                let g = s * &reps[i];
                let key = coset_key(&g, p);
                let j = match keys.get(&key) {
                    Some(&j) => j,
                    None => {
                        let j = reps.len() as u32;
                        keys.insert(key, j);
                        reps.push(g);
                        queue.push_back(j as usize);
                        j
                    }
                };
                images[k].push(j);
            }
        }
        // rows were pushed in queue order, which is coset order
        let actions = images
            .into_iter()
            .map(Permutation::from_images_unchecked)
            .collect();
        Ok(CosetTable {
            subgroup: p.clone(),
            generators: generators.to_vec(),
            actions,
            reps,
            keys,
        })
    }

    pub fn index(&self) -> usize {
        self.reps.len()
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Action of each generator on coset labels.
    pub fn actions(&self) -> &[Permutation] {
        &self.actions
    }

    pub fn representatives(&self) -> &[Permutation] {
        &self.reps
    }

    /// Label of the coset `g·P`, if `g` lies in the acted-on set.
    pub fn coset_of(&self, g: &Permutation) -> Option<usize> {
        self.keys
            .get(&coset_key(g, &self.subgroup))
            .map(|&i| i as usize)
    }

    /// Action of an arbitrary element on coset labels.
    pub fn action_of(&self, g: &Permutation) -> Result<Permutation> {
        let images = self
            .reps
            .iter()
            .map(|r| {
                self.coset_of(&(g * r)).map(|j| j as u32).ok_or_else(|| {
                    Error::ElementNotInGroup(format!("{g} does not act on these cosets"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Permutation::from_images_unchecked(images))
    }

    /// Permutation matrices `e_x ↦ e_{s·x}`, one per generator.
    pub fn action_matrices(&self) -> Vec<IntMatrix> {
        self.actions
            .iter()
            .map(|a| IntMatrix::permutation(a.images()))
            .collect()
    }

    /// Schreier generators `reps[s·i]⁻¹ · s · reps[i]` of `P`.
    pub fn schreier_generators(&self) -> Vec<Permutation> {
        let mut out = Vec::new();
        for (k, s) in self.generators.iter().enumerate() {
            for (i, r) in self.reps.iter().enumerate() {
                let j = self.actions[k].apply(i);
                out.push(&(&self.reps[j].inverse() * s) * r);
            }
        }
        out
    }

    /// Checks the table: representatives lie in distinct cosets, the action
    /// maps `reps[i]P` into `reps[s·i]P`, and the Schreier generators lie in
    /// and generate `P`.
    pub fn verify(&self) -> bool {
        let p = &self.subgroup;
        for (i, r) in self.reps.iter().enumerate() {
            if self.coset_of(r) != Some(i) {
                return false;
            }
        }
        let sg = self.schreier_generators();
        if !sg.iter().all(|h| p.contains(h)) {
            return false;
        }
        match super::group::closure(p.degree(), &sg, p.order() + 1) {
            Ok(e) => e.len() == p.order(),
            Err(_) => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgroup::psl2;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(s, n).unwrap()
    }

    #[test]
    fn cosets_of_a_point_stabiliser() {
        let g = FiniteGroup::from_generators(4, vec![p("(0 1 2 3)", 4), p("(0 1)", 4)]).unwrap();
        let stab = g.subgroup(vec![p("(1 2 3)", 4), p("(1 2)", 4)]).unwrap();
        let t = CosetTable::new(&g, &stab).unwrap();
        assert_eq!(t.index(), 4);
        assert!(t.verify());
        // the coset action of S4 on S4/S3 is the natural action up to relabelling
        for s in t.actions() {
            assert_eq!(s.order(), g.generators()[t.actions().iter().position(|a| a == s).unwrap()].order());
        }
    }

    #[test]
    fn action_is_a_homomorphism() {
        let g = psl2(7).unwrap();
        let h = g.subgroup(vec![g.generators()[0].clone()]).unwrap();
        let t = CosetTable::new(&g, &h).unwrap();
        assert_eq!(t.index(), 168 / 7);
        assert!(t.verify());
        for a in g.elements().iter().step_by(13) {
            for b in g.elements().iter().step_by(17) {
                let lhs = t.action_of(&(a * b)).unwrap();
                let rhs = &t.action_of(a).unwrap() * &t.action_of(b).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn trivial_and_whole_subgroups() {
        let g = psl2(5).unwrap();
        assert_eq!(CosetTable::new(&g, &g.whole()).unwrap().index(), 1);
        let t = CosetTable::new(&g, &g.trivial_subgroup()).unwrap();
        assert_eq!(t.index(), 60);
        assert!(t.verify());
    }

    #[test]
    fn labels_are_deterministic() {
        let g = psl2(7).unwrap();
        let h = g.subgroup(vec![g.generators()[1].clone()]).unwrap();
        let a = CosetTable::new(&g, &h).unwrap();
        let b = CosetTable::new(&g, &h).unwrap();
        assert_eq!(a.actions(), b.actions());
        assert_eq!(a.representatives(), b.representatives());
    }
}

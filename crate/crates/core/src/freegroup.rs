//! Finite-index subgroups of free groups, given by transitive actions.
//!
//! A word is a list of letters `±(i+1)` for the generator `x_i` or its
//! inverse; `[l₁, …, l_k]` is the product `l₁ ⋯ l_k` and acts on points by
//! applying `l_k` first.

use crate::error::{Error, Result};
use crate::gassman::based_bijection;
use crate::permgroup::{CosetTable, Permutation};
use serde::Serialize;
use std::collections::VecDeque;

pub type Word = Vec<i32>;

pub fn inverse_word(w: &[i32]) -> Word {
    w.iter().rev().map(|&l| -l).collect()
}

/// Cancels adjacent `x x⁻¹` pairs.
pub fn reduce_word(w: &[i32]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

pub fn format_word(w: &[i32]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.iter()
        .map(|&l| {
            let i = l.unsigned_abs();
            if l > 0 {
                format!("x{i}")
            } else {
                format!("x{i}^-1")
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// The subgroup `Δ ≤ F_r` stabilising point 0 of a transitive action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeCosetTable {
    actions: Vec<Permutation>,
}

impl FreeCosetTable {
    pub fn from_actions(actions: Vec<Permutation>) -> Result<Self> {
        let Some(first) = actions.first() else {
            return Err(Error::InvalidPermutation("a free group needs at least one generator".into()));
        };
        let n = first.degree();
        if actions.iter().any(|a| a.degree() != n) {
            return Err(Error::DimensionMismatch("generator actions have different degrees".into()));
        }
        let table = FreeCosetTable { actions };
        if table.transversal().iter().any(Option::is_none) {
            return Err(Error::InvalidPermutation("the action is not transitive".into()));
        }
        Ok(table)
    }

    /// `μ⁻¹(P)` for `μ: x_i ↦ images[i]`, from the orbit of `P` in `G/P`.
    pub fn pullback(table: &CosetTable) -> Self {
        FreeCosetTable {
            actions: table.actions().to_vec(),
        }
    }

    pub fn rank(&self) -> usize {
        self.actions.len()
    }

    pub fn index(&self) -> usize {
        self.actions[0].degree()
    }

    pub fn actions(&self) -> &[Permutation] {
        &self.actions
    }

    fn letter(&self, l: i32, x: usize) -> usize {
        let a = &self.actions[l.unsigned_abs() as usize - 1];
        if l > 0 {
            a.apply(x)
        } else {
            a.images().iter().position(|&y| y as usize == x).expect("bijection")
        }
    }

    pub fn apply_word(&self, w: &[i32], x: usize) -> usize {
        w.iter().rev().fold(x, |p, &l| self.letter(l, p))
    }

    /// Letters in the order `x₁, x₁⁻¹, x₂, x₂⁻¹, …`.
    fn letters(&self) -> Vec<i32> {
        (1..=self.rank() as i32).flat_map(|i| [i, -i]).collect()
    }

    /// Breadth-first Schreier tree. `t_{l·v} = l·t_v`, letters tried in
    /// the order of [`Self::letters`]; this is the shortlex-least
    /// transversal when words are read from the letter applied first.
    fn transversal(&self) -> Vec<Option<Word>> {
        let n = self.index();
        let mut t: Vec<Option<Word>> = vec![None; n];
        t[0] = Some(Vec::new());
        let mut queue = VecDeque::from([0usize]);
        let letters = self.letters();
        while let Some(v) = queue.pop_front() {
            for &l in &letters {
                let w = self.letter(l, v);
                if t[w].is_none() {
                    let mut word = vec![l];
                    word.extend(t[v].as_ref().expect("visited"));
                    t[w] = Some(word);
                    queue.push_back(w);
                }
            }
        }
        t
    }

    pub fn schreier_transversal(&self) -> Vec<Word> {
        self.transversal()
            .into_iter()
            .map(|w| w.expect("transitive"))
            .collect()
    }

    /// Reidemeister–Schreier free basis `t_{x·v}⁻¹ x t_v` over the edges
    /// `(v, x)` outside the Schreier tree, in order of `v` then `x`.
    pub fn schreier_generators(&self) -> Vec<Word> {
        let t = self.schreier_transversal();
        let mut gens = Vec::new();
        for (v, tv) in t.iter().enumerate() {
            for i in 1..=self.rank() as i32 {
                let w = self.letter(i, v);
                let mut word = inverse_word(&t[w]);
                word.push(i);
                word.extend(tv);
                let word = reduce_word(&word);
                if !word.is_empty() {
                    gens.push(word);
                }
            }
        }
        gens
    }

    /// Whether `w` lies in the subgroup, i.e. fixes point 0.
    pub fn contains(&self, w: &[i32]) -> bool {
        self.apply_word(w, 0) == 0
    }

    /// A word `g` with `g⁻¹ Δ g = Δ'`, if the subgroups are conjugate.
    ///
    /// `Δ'` is conjugate to `Δ` iff it is the stabiliser of some point `v`,
    /// iff the based actions are isomorphic with 0 sent to `v`. The
    /// stabiliser of `v` is `t_v Δ t_v⁻¹`, so `g = t_v⁻¹`.
    pub fn conjugator_to(&self, other: &FreeCosetTable) -> Option<Word> {
        if other.rank() != self.rank() || other.index() != self.index() {
            return None;
        }
        let t = self.schreier_transversal();
        (0..self.index())
            .find(|&v| based_bijection(other.actions(), &self.actions, v).is_some())
            .map(|v| inverse_word(&t[v]))
    }

    /// The same subgroup with cosets numbered in Schreier-tree order, so
    /// equal subgroups give equal tables.
    pub fn canonical(&self) -> FreeCosetTable {
        let n = self.index();
        let mut label = vec![u32::MAX; n];
        let mut order = vec![0usize];
        label[0] = 0;
        let letters = self.letters();
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for &l in &letters {
                let w = self.letter(l, v);
                if label[w] == u32::MAX {
                    label[w] = order.len() as u32;
                    order.push(w);
                }
            }
        }
        let actions = self
            .actions
            .iter()
            .map(|a| {
                let mut images = vec![0u32; n];
                for x in 0..n {
                    images[label[x] as usize] = label[a.apply(x)];
                }
                Permutation::from_images(images).expect("relabelled bijection")
            })
            .collect();
        FreeCosetTable { actions }
    }

    pub fn is_conjugate_to(&self, other: &FreeCosetTable) -> bool {
        self.conjugator_to(other).is_some()
    }
}

/// Nielsen–Schreier rank of a subgroup, computed two ways.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SubgroupRank {
    /// `1 + n(r − 1)`.
    pub formula: usize,
    /// `1 − χ` for the Schreier graph with `n` vertices and `n·r` edges.
    pub euler: usize,
    /// Number of Reidemeister–Schreier generators.
    pub schreier_generators: usize,
}

impl SubgroupRank {
    pub fn consistent(&self) -> bool {
        self.formula == self.euler && self.euler == self.schreier_generators
    }
}

pub fn subgroup_rank(table: &FreeCosetTable) -> SubgroupRank {
    let (n, r) = (table.index(), table.rank());
    let vertices = n as i64;
    let edges = (n * r) as i64;
    SubgroupRank {
        formula: 1 + n * (r - 1),
        euler: (1 - (vertices - edges)) as usize,
        schreier_generators: table.schreier_generators().len(),
    }
}

/// Kernel of `F₂ → Z → Z/(r−1)`, `x₁ ↦ 1`, `x₂ ↦ 0`: a free subgroup of
/// rank `r` and index `r − 1`.
pub fn index_shift_subgroup(r_target: usize) -> Result<FreeCosetTable> {
    if r_target < 3 {
        return Err(Error::InvalidPermutation(format!(
            "target rank {r_target} must be at least 3"
        )));
    }
    let n = r_target - 1;
    let shift = Permutation::from_images((0..n as u32).map(|i| (i + 1) % n as u32).collect())?;
    FreeCosetTable::from_actions(vec![shift, Permutation::identity(n)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::permgroup::FiniteGroup;
    use proptest::prelude::*;

    fn perm(s: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(s, n).unwrap()
    }

    #[test]
    fn words_reduce_and_invert() {
        assert_eq!(reduce_word(&[1, 2, -2, -1, 2]), vec![2]);
        assert_eq!(inverse_word(&[1, -2]), vec![2, -1]);
        assert_eq!(format_word(&[1, -2]), "x1 x2^-1");
        assert_eq!(format_word(&[]), "1");
    }

    #[test]
    fn index_one_has_rank_r() {
        let t = FreeCosetTable::from_actions(vec![Permutation::identity(1); 3]).unwrap();
        let r = subgroup_rank(&t);
        assert_eq!(r.formula, 3);
        assert!(r.consistent());
        assert_eq!(t.schreier_generators(), vec![vec![1], vec![2], vec![3]]);
    }

    #[test]
    fn index_shift_examples() {
        let t = index_shift_subgroup(3).unwrap();
        assert_eq!((t.index(), subgroup_rank(&t).formula), (2, 3));
        assert!(subgroup_rank(&t).consistent());
        // double cover of the wedge of two circles: x1 swaps the sheets, x2 fixes them
        assert_eq!(t.actions()[0], perm("(0 1)", 2));
        assert!(t.actions()[1].is_identity());
        let t5 = index_shift_subgroup(5).unwrap();
        assert_eq!((t5.index(), subgroup_rank(&t5).formula), (4, 5));
        assert!(index_shift_subgroup(2).is_err());
    }

    #[test]
    fn index_six_in_f2() {
        let g = catalog::s3();
        let t = CosetTable::from_generators(g.generators(), &g.trivial_subgroup()).unwrap();
        let f = FreeCosetTable::pullback(&t);
        let r = subgroup_rank(&f);
        assert_eq!(r.formula, 7);
        assert!(r.consistent());
    }

    #[test]
    fn schreier_generators_fix_the_base_point() {
        let pair = catalog::psl2_7_pair();
        let f = FreeCosetTable::pullback(&pair.t1);
        let gens = f.schreier_generators();
        assert_eq!(gens.len(), 1 + 7);
        assert!(gens.iter().all(|w| f.contains(w)));
        // transversal words send 0 to their coset
        for (v, w) in f.schreier_transversal().iter().enumerate() {
            assert_eq!(f.apply_word(w, 0), v);
        }
    }

    #[test]
    fn non_transitive_actions_are_rejected() {
        let err = FreeCosetTable::from_actions(vec![perm("(0 1)", 3), perm("(0 1)", 3)]);
        assert!(err.is_err());
    }

    #[test]
    fn conjugacy_follows_the_finite_quotient() {
        let pair = catalog::psl2_7_pair();
        let d1 = FreeCosetTable::pullback(&pair.t1);
        let d2 = FreeCosetTable::pullback(&pair.t2);
        assert!(!d1.is_conjugate_to(&d2));
        // a conjugate of P₁ gives a conjugate subgroup of F₂
        let w = pair.group.element(5).clone();
        let q = pair.p1.conjugate_by(&w);
        let t = CosetTable::new(&pair.group, &q).unwrap();
        let d3 = FreeCosetTable::pullback(&t);
        let g = d1.conjugator_to(&d3).unwrap();
        // Δ₃ = g⁻¹ Δ₁ g: conjugates of Δ₃'s generators by g⁻¹ land in Δ₁
        for h in d3.schreier_generators() {
            let mut c = g.clone();
            c.extend(&h);
            c.extend(inverse_word(&g));
            assert!(d1.contains(&c));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn rank_formulas_agree(picks in proptest::collection::vec(0usize..24, 1..4), sub in 0usize..6) {
            let g: FiniteGroup = catalog::s4();
            let images: Vec<Permutation> = picks.iter().map(|&i| g.element(i).clone()).collect();
            let subs = [vec![], vec![perm("(0 1)", 4)], vec![perm("(0 1 2)", 4)], vec![perm("(0 1 2 3)", 4)],
                vec![perm("(0 1)(2 3)", 4), perm("(0 2)(1 3)", 4)], vec![perm("(0 1 2)", 4), perm("(0 1)", 4)]];
            let p = g.subgroup(subs[sub].clone()).unwrap();
            let t = CosetTable::from_generators(&images, &p).unwrap();
            let f = FreeCosetTable::pullback(&t);
            let r = subgroup_rank(&f);
            prop_assert!(r.consistent());
            for w in f.schreier_generators() {
                prop_assert!(f.contains(&w));
            }
        }
    }

    #[test]
    fn canonical_tables_identify_equal_subgroups() {
        let t = index_shift_subgroup(5).unwrap();
        // relabel cosets 1..n-1 backwards, keeping the basepoint
        let n = t.index();
        let sigma = |x: usize| if x == 0 { 0 } else { n - x };
        let relabel = |a: &Permutation| {
            let mut images = vec![0u32; n];
            for x in 0..n {
                images[sigma(x)] = sigma(a.apply(x)) as u32;
            }
            Permutation::from_images(images).unwrap()
        };
        let other = FreeCosetTable::from_actions(t.actions().iter().map(relabel).collect()).unwrap();
        assert_ne!(other, t);
        assert_eq!(other.canonical(), t.canonical());
        let c = t.canonical();
        assert_eq!(c.canonical(), c);
        assert_eq!(c.apply_word(&[1], 0), 1);
        assert_eq!(c.apply_word(&[-1], 0), 2);
    }
}

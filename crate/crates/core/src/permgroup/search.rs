use super::group::closure;
use super::{ConjugacyClasses, FiniteGroup, Permutation, Subgroup};
use std::collections::{HashSet, VecDeque};

/// Subgroups `⟨a, b⟩` with `|a|`, `|b|`, `|ab|` equal to the given orders.
///
/// Results are deduplicated by element set and sorted by element set.
pub fn find_triangle_subgroups(g: &FiniteGroup, orders: (u64, u64, u64)) -> Vec<Subgroup> {
    let (oa, ob, oab) = orders;
    let element_orders = g.element_orders();
    let with_order = |k: u64| -> Vec<usize> {
        (0..g.order()).filter(|&i| element_orders[i] == k).collect()
    };
    let a_list = with_order(oa);
    let b_list = with_order(ob);
    let mut seen: HashSet<Vec<Permutation>> = HashSet::new();
    let mut found = Vec::new();
    for &ia in &a_list {
        let a = g.element(ia);
        for &ib in &b_list {
            let b = g.element(ib);
            let ab = a * b;
            if ab.order() != oab {
                continue;
            }
            let elements = closure(g.degree(), &[a.clone(), b.clone()], g.order() + 1)
                .expect("subgroup closure is bounded by the group");
            if seen.insert(elements.clone()) {
                found.push(
                    g.subgroup(vec![a.clone(), b.clone()])
                        .expect("elements of the group"),
                );
            }
        }
    }
    found.sort_by(|x, y| x.elements().cmp(y.elements()));
    found
}

/// A witness `g` with `g⁻¹ P₁ g = P₂`, scanning `G` in canonical order.
pub fn are_conjugate(g: &FiniteGroup, p1: &Subgroup, p2: &Subgroup) -> Option<Permutation> {
    if p1.order() != p2.order() {
        return None;
    }
    let gens: Vec<Permutation> = if p1.generators().is_empty() {
        p1.elements().to_vec()
    } else {
        p1.generators().to_vec()
    };
    g.elements()
        .iter()
        .find(|x| gens.iter().all(|s| p2.contains(&s.conjugate_by(x))))
        .cloned()
}

/// Partitions `subgroups` into conjugacy classes under `G`, in order of
/// first appearance.
pub fn subgroup_conjugacy_classes(g: &FiniteGroup, subgroups: &[Subgroup]) -> Vec<Vec<usize>> {
    let mut class_of: Vec<Option<usize>> = vec![None; subgroups.len()];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let gen_inverses: Vec<Permutation> = g.generators().iter().map(Permutation::inverse).collect();
    for i in 0..subgroups.len() {
        if class_of[i].is_some() {
            continue;
        }
        // orbit of P_i under conjugation, keyed by element set
        let start = subgroups[i].clone();
        let mut orbit: HashSet<Vec<Permutation>> = HashSet::new();
        orbit.insert(start.elements().to_vec());
        let mut queue = VecDeque::from([start]);
        while let Some(h) = queue.pop_front() {
            for s in &gen_inverses {
                let c = h.conjugate_by(s);
                if orbit.insert(c.elements().to_vec()) {
                    queue.push_back(c);
                }
            }
        }
        let c = classes.len();
        let mut members = Vec::new();
        for (j, h) in subgroups.iter().enumerate().skip(i) {
            if class_of[j].is_none() && orbit.contains(h.elements()) {
                class_of[j] = Some(c);
                members.push(j);
            }
        }
        classes.push(members);
    }
    classes
}

/// The double cosets `P₂ g P₁` of `G`.
#[derive(Clone, Debug)]
pub struct DoubleCosetDecomposition {
    /// Lexicographically least element of each double coset, ascending.
    pub representatives: Vec<Permutation>,
    pub sizes: Vec<usize>,
    /// Double coset index of each element of `G`, by element index.
    pub coset_of: Vec<u32>,
}

pub fn double_cosets(g: &FiniteGroup, p2: &Subgroup, p1: &Subgroup) -> DoubleCosetDecomposition {
    let n = g.order();
    let left: Vec<Permutation> = generators_or_elements(p2);
    let right: Vec<Permutation> = generators_or_elements(p1);
    let mut coset_of = vec![u32::MAX; n];
    let mut representatives = Vec::new();
    let mut sizes = Vec::new();
    for start in 0..n {
        if coset_of[start] != u32::MAX {
            continue;
        }
        let c = sizes.len() as u32;
        representatives.push(g.element(start).clone());
        coset_of[start] = c;
        let mut size = 1;
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            let ex = g.element(x);
            let next = left.iter().map(|a| a * ex).chain(right.iter().map(|b| ex * b));
            for y in next {
                let j = g.index_of(&y).expect("subgroups lie in the group");
                if coset_of[j] == u32::MAX {
                    coset_of[j] = c;
                    size += 1;
                    queue.push_back(j);
                }
            }
        }
        sizes.push(size);
    }
    DoubleCosetDecomposition {
        representatives,
        sizes,
        coset_of,
    }
}

fn generators_or_elements(p: &Subgroup) -> Vec<Permutation> {
    if p.generators().is_empty() {
        vec![Permutation::identity(p.degree())]
    } else {
        p.generators().to_vec()
    }
}

/// Subgroup generated by all conjugates of `elements`.
pub fn normal_closure(g: &FiniteGroup, elements: &[Permutation]) -> Subgroup {
    let mut gens: Vec<Permutation> = Vec::new();
    let mut seen = HashSet::new();
    let mut queue: VecDeque<Permutation> = elements.iter().cloned().collect();
    while let Some(x) = queue.pop_front() {
        if !seen.insert(x.clone()) {
            continue;
        }
        for s in g.generators() {
            queue.push_back(x.conjugate_by(s));
        }
        gens.push(x);
    }
    g.subgroup(gens).expect("conjugates stay in the group")
}

/// Whether `G` is simple: every non-identity conjugacy class normally
/// generates `G`. The trivial group is not simple.
pub fn is_simple(g: &FiniteGroup) -> bool {
    if g.order() == 1 {
        return false;
    }
    let classes = ConjugacyClasses::compute(g);
    classes.representatives().iter().skip(1).all(|&r| {
        let class: Vec<Permutation> = classes
            .members(classes.class_of(r))
            .into_iter()
            .map(|i| g.element(i).clone())
            .collect();
        g.is_generated_by(&class)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgroup::psl2;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(s, n).unwrap()
    }

    fn s3() -> FiniteGroup {
        FiniteGroup::from_generators(3, vec![p("(0 1 2)", 3), p("(0 1)", 3)]).unwrap()
    }

    fn a5() -> FiniteGroup {
        FiniteGroup::from_generators(5, vec![p("(0 1 2 3 4)", 5), p("(0 1 2)", 5)]).unwrap()
    }

    #[test]
    fn triangle_search_small_cases() {
        assert!(find_triangle_subgroups(&s3(), (2, 3, 5)).is_empty());
        let g = a5();
        let found = find_triangle_subgroups(&g, (2, 3, 5));
        assert_eq!(found.len(), 1);
        assert_eq!(found[0], g.whole());
    }

    #[test]
    fn conjugate_point_stabilisers() {
        let g = s3();
        let a = g.subgroup(vec![p("(0 1)", 3)]).unwrap();
        let b = g.subgroup(vec![p("(1 2)", 3)]).unwrap();
        let w = are_conjugate(&g, &a, &b).unwrap();
        assert_eq!(a.conjugate_by(&w), b);
        assert!(are_conjugate(&g, &a, &a).unwrap().is_identity());
        let c3 = g.subgroup(vec![p("(0 1 2)", 3)]).unwrap();
        assert!(are_conjugate(&g, &a, &c3).is_none());
    }

    #[test]
    fn double_coset_extremes() {
        let g = psl2(7).unwrap();
        let all = double_cosets(&g, &g.whole(), &g.whole());
        assert_eq!(all.sizes, vec![168]);
        let e = g.trivial_subgroup();
        let reg = double_cosets(&g, &e, &e);
        assert_eq!(reg.sizes.len(), 168);
    }

    #[test]
    fn simplicity() {
        assert!(!is_simple(&s3()));
        assert!(is_simple(&a5()));
        assert!(is_simple(&psl2(7).unwrap()));
        let a4 = psl2(3).unwrap();
        assert!(!is_simple(&a4));
        let z2 = FiniteGroup::from_generators(2, vec![p("(0 1)", 2)]).unwrap();
        assert!(is_simple(&z2));
    }

    #[test]
    fn normal_closure_of_a_three_cycle_in_s3() {
        let g = s3();
        let n = normal_closure(&g, &[p("(0 1 2)", 3)]);
        assert_eq!(n.order(), 3);
    }
}

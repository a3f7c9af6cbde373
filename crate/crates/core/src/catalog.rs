//! Named groups and subgroup pairs used by the examples, tests and CLI.

use crate::error::{Error, Result};
use crate::gassman::SubgroupPair;
use crate::permgroup::{
    find_triangle_subgroups, psl2, subgroup_conjugacy_classes, FiniteGroup, Permutation, Subgroup,
};

fn perm(cycles: &str, degree: usize) -> Permutation {
    Permutation::parse_cycles(cycles, degree).expect("catalog permutations are valid")
}

fn group(degree: usize, gens: &[&str]) -> FiniteGroup {
    FiniteGroup::from_generators(degree, gens.iter().map(|c| perm(c, degree)).collect())
        .expect("catalog groups are small")
}

pub fn cyclic(n: usize) -> FiniteGroup {
    let cycle: Vec<u32> = (0..n as u32).collect();
    let gen = if n == 1 {
        Permutation::identity(1)
    } else {
        Permutation::from_cycles(n, &[cycle]).expect("valid cycle")
    };
    FiniteGroup::from_generators(n, vec![gen]).expect("cyclic groups are small")
}

pub fn s3() -> FiniteGroup {
    group(3, &["(0 1 2)", "(0 1)"])
}

pub fn a4() -> FiniteGroup {
    group(4, &["(0 1 2)", "(1 2 3)"])
}

pub fn s4() -> FiniteGroup {
    group(4, &["(0 1 2 3)", "(0 1)"])
}

pub fn a5() -> FiniteGroup {
    group(5, &["(0 1 2 3 4)", "(0 1 2)"])
}

/// Two conjugate subgroups of order 2 in `S₃`.
pub fn s3_conjugate_pair() -> SubgroupPair {
    let g = s3();
    SubgroupPair::from_generators(g, vec![perm("(0 1)", 3)], vec![perm("(1 2)", 3)])
        .expect("subgroups of S3")
}

/// Two conjugate subgroups of order 2 in `A₄`.
pub fn a4_conjugate_pair() -> SubgroupPair {
    let g = a4();
    SubgroupPair::from_generators(g, vec![perm("(0 1)(2 3)", 4)], vec![perm("(0 2)(1 3)", 4)])
        .expect("subgroups of A4")
}

/// Two conjugate point stabilisers of order 12 in `A₅`.
pub fn a5_conjugate_pair() -> SubgroupPair {
    let g = a5();
    SubgroupPair::from_generators(
        g,
        vec![perm("(1 2 3)", 5), perm("(2 3 4)", 5)],
        vec![perm("(0 2 3)", 5), perm("(2 3 4)", 5)],
    )
    .expect("subgroups of A5")
}

/// Representatives of the conjugacy classes of `(a,b,c)`-generated
/// subgroups of the given order, one subgroup per class.
pub fn triangle_class_representatives(
    g: &FiniteGroup,
    orders: (u64, u64, u64),
    order: usize,
) -> Vec<Subgroup> {
    let subs: Vec<Subgroup> = find_triangle_subgroups(g, orders)
        .into_iter()
        .filter(|s| s.order() == order)
        .collect();
    subgroup_conjugacy_classes(g, &subs)
        .into_iter()
        .map(|class| subs[class[0]].clone())
        .collect()
}

/// The two classes of subgroups `S₄ ≤ PSL(2,7)` of index 7.
pub fn psl2_7_pair() -> SubgroupPair {
    let g = psl2(7).expect("q = 7 is supported");
    let reps = triangle_class_representatives(&g, (2, 3, 4), 24);
    assert_eq!(reps.len(), 2, "PSL(2,7) has two classes of S4");
    SubgroupPair::new(g, reps[0].clone(), reps[1].clone()).expect("subgroups of PSL(2,7)")
}

/// The two classes of subgroups `A₅ ≤ PSL(2,29)` of index 203.
pub fn psl2_29_pair() -> SubgroupPair {
    let g = psl2(29).expect("q = 29 is supported");
    let reps = triangle_class_representatives(&g, (2, 3, 5), 60);
    assert_eq!(reps.len(), 2, "PSL(2,29) has two classes of A5");
    SubgroupPair::new(g, reps[0].clone(), reps[1].clone()).expect("subgroups of PSL(2,29)")
}

pub const GROUP_NAMES: &[&str] = &["s3", "a4", "s4", "a5", "psl2-7", "psl2-29"];
pub const PAIR_NAMES: &[&str] = &["s3-conj", "a4-conj", "a5-conj", "psl2-7", "psl2-29"];

pub fn group_by_name(name: &str) -> Result<FiniteGroup> {
    match name {
        "s3" => Ok(s3()),
        "a4" => Ok(a4()),
        "s4" => Ok(s4()),
        "a5" => Ok(a5()),
        "psl2-7" => psl2(7),
        "psl2-29" => psl2(29),
        other => Err(unknown(other, GROUP_NAMES)),
    }
}

pub fn pair_by_name(name: &str) -> Result<SubgroupPair> {
    match name {
        "s3-conj" => Ok(s3_conjugate_pair()),
        "a4-conj" => Ok(a4_conjugate_pair()),
        "a5-conj" => Ok(a5_conjugate_pair()),
        "psl2-7" => Ok(psl2_7_pair()),
        "psl2-29" => Ok(psl2_29_pair()),
        other => Err(unknown(other, PAIR_NAMES)),
    }
}

/// Name of the group a catalog pair lives in.
pub fn pair_group_name(pair: &str) -> Result<&'static str> {
    match pair {
        "s3-conj" => Ok("s3"),
        "a4-conj" => Ok("a4"),
        "a5-conj" => Ok("a5"),
        "psl2-7" => Ok("psl2-7"),
        "psl2-29" => Ok("psl2-29"),
        other => Err(unknown(other, PAIR_NAMES)),
    }
}

fn unknown(name: &str, known: &[&str]) -> Error {
    Error::Parse {
        file: "<catalog>".into(),
        line: 0,
        message: format!("unknown name {name:?}; known: {}", known.join(", ")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_orders() {
        assert_eq!(s3().order(), 6);
        assert_eq!(a4().order(), 12);
        assert_eq!(s4().order(), 24);
        assert_eq!(a5().order(), 60);
        assert_eq!(cyclic(5).order(), 5);
        assert_eq!(cyclic(1).order(), 1);
    }

    #[test]
    fn named_pairs_have_equal_index() {
        for name in ["s3-conj", "a4-conj", "a5-conj", "psl2-7"] {
            let pair = pair_by_name(name).unwrap();
            assert!(pair.same_index(), "{name}");
        }
        assert!(pair_by_name("nope").is_err());
    }

    #[test]
    fn psl27_pair_is_not_conjugate() {
        let pair = psl2_7_pair();
        assert_eq!(pair.t1.index(), 7);
        assert!(pair.conjugating_element().is_none());
    }
}

//! The rational group algebra `Q[G]` and lifts of rational isomorphisms.

use super::SubgroupPair;
use crate::error::{Error, Result};
use crate::linalg::{nullspace_rational, solve_rational, IntMatrix};
use crate::permgroup::{FiniteGroup, Subgroup};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Largest group order for which the lift is attempted by default.
pub const DEFAULT_ALGEBRA_BUDGET: usize = 1000;

/// An element `Σ a_g g`, coefficients indexed by the group's element order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAlgebraElement {
    pub coeffs: Vec<BigRational>,
}

impl GroupAlgebraElement {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Indices of the group elements with nonzero coefficient.
    pub fn support(&self) -> Vec<usize> {
        (0..self.coeffs.len())
            .filter(|&i| !self.coeffs[i].is_zero())
            .collect()
    }
}

/// Multiplication table of an enumerated group, used for convolution.
pub struct GroupAlgebra<'a> {
    group: &'a FiniteGroup,
    table: Vec<u32>,
}

impl<'a> GroupAlgebra<'a> {
    pub fn new(group: &'a FiniteGroup, budget: usize) -> Result<Self> {
        let n = group.order();
        if n > budget {
            return Err(Error::budget(budget, "building the group algebra"));
        }
        let mut table = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                table.push(group.mul_index(i, j) as u32);
            }
        }
        Ok(GroupAlgebra { group, table })
    }

    pub fn dimension(&self) -> usize {
        self.group.order()
    }

    pub fn group(&self) -> &FiniteGroup {
        self.group
    }

    pub fn zero(&self) -> GroupAlgebraElement {
        GroupAlgebraElement {
            coeffs: vec![BigRational::zero(); self.dimension()],
        }
    }

    pub fn one(&self) -> GroupAlgebraElement {
        self.basis(0)
    }

    /// The group element with index `i`.
    pub fn basis(&self, i: usize) -> GroupAlgebraElement {
        let mut e = self.zero();
        e.coeffs[i] = BigRational::one();
        e
    }

    pub fn from_integers(&self, coeffs: &[i64]) -> GroupAlgebraElement {
        GroupAlgebraElement {
            coeffs: coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect(),
        }
    }

    /// `e_P = |P|⁻¹ Σ_{p∈P} p`.
    pub fn idempotent(&self, p: &Subgroup) -> GroupAlgebraElement {
        let w = BigRational::new(BigInt::one(), BigInt::from(p.order()));
        let mut e = self.zero();
        for h in p.elements() {
            e.coeffs[self.group.index_of(h).expect("subgroup element")] = w.clone();
        }
        e
    }

    pub fn add(&self, a: &GroupAlgebraElement, b: &GroupAlgebraElement) -> GroupAlgebraElement {
        GroupAlgebraElement {
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn sub(&self, a: &GroupAlgebraElement, b: &GroupAlgebraElement) -> GroupAlgebraElement {
        GroupAlgebraElement {
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect(),
        }
    }

    pub fn scale(&self, a: &GroupAlgebraElement, k: &BigRational) -> GroupAlgebraElement {
        GroupAlgebraElement {
            coeffs: a.coeffs.iter().map(|x| x * k).collect(),
        }
    }

    pub fn mul(&self, a: &GroupAlgebraElement, b: &GroupAlgebraElement) -> GroupAlgebraElement {
        let n = self.dimension();
        let mut out = self.zero();
        let sb = b.support();
        for i in a.support() {
            let row = &self.table[i * n..(i + 1) * n];
            for &j in &sb {
                out.coeffs[row[j] as usize] += &a.coeffs[i] * &b.coeffs[j];
            }
        }
        out
    }

    /// Matrix of `x ↦ a·x` in the group basis.
    fn left_regular(&self, a: &GroupAlgebraElement) -> Vec<Vec<BigRational>> {
        let n = self.dimension();
        let mut m = vec![vec![BigRational::zero(); n]; n];
        for i in a.support() {
            for h in 0..n {
                m[self.table[i * n + h] as usize][h] += &a.coeffs[i];
            }
        }
        m
    }

    /// Solves `a·x = 1` exactly; in a finite-dimensional algebra a right
    /// inverse is two-sided.
    pub fn inverse(&self, a: &GroupAlgebraElement) -> Option<GroupAlgebraElement> {
        let n = self.dimension();
        let rhs = self.one().coeffs;
        solve_rational(&self.left_regular(a), n, &rhs).map(|coeffs| GroupAlgebraElement { coeffs })
    }
}

/// An invertible `f ∈ Q[G]` with `e₁ f = f e₂`, hence `f⁻¹ e₁ f = e₂`.
#[derive(Clone, Debug)]
pub struct GroupAlgebraLift {
    pub f: GroupAlgebraElement,
    pub f_inverse: GroupAlgebraElement,
    /// Dimension of `{f : e₁ f = f e₂}` over `Q`.
    pub solution_dimension: usize,
    /// Whether `f` restricts to the given isomorphism on `Q[G]e₁`.
    pub compatible: bool,
}

const COMPLEMENT_CANDIDATES: usize = 64;

/// Extends an equivariant `f' : Q[G/P₁] → Q[G/P₂]` to an invertible
/// element of `Q[G]` conjugating `e₁` to `e₂`.
///
/// With `Q[G/Pᵢ] ≅ Q[G]eᵢ`, `f'` is right multiplication by
/// `a = Σ_y f'(y, 0) r₂(y) e₂ ∈ e₁Q[G]e₂`. Candidates `a + (1−e₁)c(1−e₂)` are
/// tried for `c = 1` and then `c` running over group elements; if none is
/// invertible, combinations of a basis of the full solution space are tried.
pub fn lift_to_group_algebra(
    alg: &GroupAlgebra,
    pair: &SubgroupPair,
    f_prime: &IntMatrix,
) -> Result<GroupAlgebraLift> {
    let n = alg.dimension();
    let e1 = alg.idempotent(&pair.p1);
    let e2 = alg.idempotent(&pair.p2);
    let one = alg.one();

    // solution space of e1 f − f e2 = 0, one column per group element
    let mut columns = Vec::with_capacity(n);
    for i in 0..n {
        let g = alg.basis(i);
        columns.push(alg.sub(&alg.mul(&e1, &g), &alg.mul(&g, &e2)).coeffs);
    }
    let system: Vec<Vec<BigRational>> = (0..n)
        .map(|r| columns.iter().map(|c| c[r].clone()).collect())
        .collect();
    let kernel = nullspace_rational(&system, n);
    let solution_dimension = kernel.len();

    let mut a = alg.zero();
    for (y, r) in pair.t2.representatives().iter().enumerate() {
        let c = f_prime[(y, 0)];
        if c != 0 {
            let idx = pair.group.index_of(r).expect("coset representative");
            a.coeffs[idx] += BigRational::from_integer(c.into());
        }
    }
    let a = alg.mul(&a, &e2);
    if alg.mul(&e1, &a) != a {
        return Err(Error::ActionMismatch(
            "the given matrix is not equivariant for the two coset actions".into(),
        ));
    }
    let c1 = alg.sub(&one, &e1);
    let c2 = alg.sub(&one, &e2);

    let verify = |f: GroupAlgebraElement, compatible: bool| -> Option<GroupAlgebraLift> {
        if alg.mul(&e1, &f) != alg.mul(&f, &e2) {
            return None;
        }
        let f_inverse = alg.inverse(&f)?;
        Some(GroupAlgebraLift {
            f,
            f_inverse,
            solution_dimension,
            compatible,
        })
    };

    let complements = std::iter::once(one.clone())
        .chain((0..n.min(COMPLEMENT_CANDIDATES)).map(|i| alg.basis(i)));
    for c in complements {
        let f = alg.add(&a, &alg.mul(&alg.mul(&c1, &c), &c2));
        if let Some(lift) = verify(f, true) {
            return Ok(lift);
        }
    }
    // small deterministic combinations of the solution basis
    for (i, v) in kernel.iter().enumerate() {
        let mut f = GroupAlgebraElement { coeffs: v.clone() };
        for (j, w) in kernel.iter().enumerate().skip(i + 1) {
            let k = BigRational::from_integer(BigInt::from(j as i64 + 2));
            f = alg.add(&f, &alg.scale(&GroupAlgebraElement { coeffs: w.clone() }, &k));
        }
        if let Some(lift) = verify(f, false) {
            return Ok(lift);
        }
    }
    Err(Error::LiftFailed {
        dimension: solution_dimension,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::gassman::rational::{conjugation_matrix, find_rational_iso};
    use proptest::prelude::*;

    fn check_conjugation(alg: &GroupAlgebra, pair: &SubgroupPair, lift: &GroupAlgebraLift) {
        let e1 = alg.idempotent(&pair.p1);
        let e2 = alg.idempotent(&pair.p2);
        let conj = alg.mul(&alg.mul(&lift.f_inverse, &e1), &lift.f);
        assert_eq!(conj, e2);
        assert_eq!(alg.mul(&lift.f, &lift.f_inverse), alg.one());
    }

    #[test]
    fn idempotents_are_idempotent() {
        let g = catalog::s3();
        let alg = GroupAlgebra::new(&g, 100).unwrap();
        let p = g.subgroup(vec![g.generators()[1].clone()]).unwrap();
        let e = alg.idempotent(&p);
        assert_eq!(alg.mul(&e, &e), e);
    }

    #[test]
    fn identity_lift_for_equal_subgroups() {
        let pair = catalog::s3_conjugate_pair();
        let same = SubgroupPair::new(pair.group.clone(), pair.p1.clone(), pair.p1.clone()).unwrap();
        let alg = GroupAlgebra::new(&same.group, 100).unwrap();
        let lift = lift_to_group_algebra(&alg, &same, &IntMatrix::identity(3)).unwrap();
        assert_eq!(lift.f, alg.one());
        assert!(lift.compatible);
    }

    #[test]
    fn conjugating_element_satisfies_the_relation() {
        let pair = catalog::s3_conjugate_pair();
        let alg = GroupAlgebra::new(&pair.group, 100).unwrap();
        let w = pair.conjugating_element().unwrap();
        let f = alg.basis(pair.group.index_of(&w).unwrap());
        let e1 = alg.idempotent(&pair.p1);
        let e2 = alg.idempotent(&pair.p2);
        assert_eq!(alg.mul(&e1, &f), alg.mul(&f, &e2));
        let lift = lift_to_group_algebra(&alg, &pair, &conjugation_matrix(&pair, &w)).unwrap();
        check_conjugation(&alg, &pair, &lift);
    }

    #[test]
    fn psl27_lift() {
        let pair = catalog::psl2_7_pair();
        let alg = GroupAlgebra::new(&pair.group, DEFAULT_ALGEBRA_BUDGET).unwrap();
        let iso = find_rational_iso(&pair, 0).unwrap();
        let lift = lift_to_group_algebra(&alg, &pair, &iso.matrix).unwrap();
        check_conjugation(&alg, &pair, &lift);
        // dim e1Q[G]e2 + dim (1-e1)Q[G](1-e2) = k + (n - 2m + k)
        let k = crate::gassman::hom_basis(&pair).len();
        assert_eq!(lift.solution_dimension, 2 * k + 168 - 14);
    }

    #[test]
    fn budget_is_enforced() {
        let g = catalog::a5();
        assert!(GroupAlgebra::new(&g, 59).is_err());
    }

    fn small_int_vec() -> impl Strategy<Value = Vec<i64>> {
        proptest::collection::vec(-3i64..=3, 6)
    }

    proptest! {
        #[test]
        fn ring_axioms(a in small_int_vec(), b in small_int_vec(), c in small_int_vec()) {
            let g = catalog::s3();
            let alg = GroupAlgebra::new(&g, 100).unwrap();
            let (a, b, c) = (alg.from_integers(&a), alg.from_integers(&b), alg.from_integers(&c));
            prop_assert_eq!(alg.mul(&alg.mul(&a, &b), &c), alg.mul(&a, &alg.mul(&b, &c)));
            prop_assert_eq!(
                alg.mul(&a, &alg.add(&b, &c)),
                alg.add(&alg.mul(&a, &b), &alg.mul(&a, &c))
            );
            prop_assert_eq!(alg.mul(&alg.one(), &a), a.clone());
            prop_assert_eq!(alg.add(&a, &alg.zero()), a);
        }
    }
}

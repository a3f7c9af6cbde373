use super::SubgroupPair;
use crate::linalg::{rank_rational, IntMatrix};
use crate::permgroup::{double_cosets, CosetTable, FiniteGroup, Permutation, Subgroup};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

/// The double-coset basis of `Hom_G(Z[G/P₁], Z[G/P₂])`.
///
/// Entry `(y, x)` of basis matrix `d` is 1 exactly when `r₂(y)⁻¹ r₁(x)`
/// lies in the `d`-th double coset `P₂ g P₁`, i.e. when the pair of cosets
/// lies in the `d`-th `G`-orbit on `G/P₂ × G/P₁`.
#[derive(Clone, Debug)]
pub struct HomLatticeBasis {
    pub m1: usize,
    pub m2: usize,
    /// Representatives of `P₂\G/P₁`, ascending.
    pub double_coset_reps: Vec<Permutation>,
    /// Orbit label of each position, row-major over `m2 × m1`.
    labels: Vec<u32>,
    sizes: Vec<usize>,
}

impl HomLatticeBasis {
    pub fn len(&self) -> usize {
        self.sizes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sizes.is_empty()
    }

    pub fn label(&self, y: usize, x: usize) -> usize {
        self.labels[y * self.m1 + x] as usize
    }

    /// Number of nonzero entries of each basis matrix.
    pub fn support_sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn matrix(&self, d: usize) -> IntMatrix {
        self.combination(&unit(self.len(), d))
    }

    pub fn matrices(&self) -> Vec<IntMatrix> {
        (0..self.len()).map(|d| self.matrix(d)).collect()
    }

    /// `Σ c_d B_d`.
    pub fn combination(&self, coeffs: &[i64]) -> IntMatrix {
        assert_eq!(coeffs.len(), self.len());
        let data = self.labels.iter().map(|&l| coeffs[l as usize]).collect();
        IntMatrix::from_row_major(self.m2, self.m1, data)
    }

    /// Coefficients of `u` in this basis, if `u` is constant on every orbit.
    pub fn decompose(&self, u: &IntMatrix) -> Option<Vec<i64>> {
        if u.rows() != self.m2 || u.cols() != self.m1 {
            return None;
        }
        let mut coeffs: Vec<Option<i64>> = vec![None; self.len()];
        for (pos, &l) in self.labels.iter().enumerate() {
            let v = u.row_major()[pos];
            match coeffs[l as usize] {
                None => coeffs[l as usize] = Some(v),
                Some(c) if c != v => return None,
                _ => {}
            }
        }
        coeffs.into_iter().collect()
    }

    /// Column sum of each basis matrix (constant by transitivity).
    pub fn column_sums(&self) -> Vec<i64> {
        let mut sums = vec![0i64; self.len()];
        for y in 0..self.m2 {
            sums[self.label(y, 0)] += 1;
        }
        sums
    }
}

fn unit(k: usize, d: usize) -> Vec<i64> {
    let mut v = vec![0; k];
    v[d] = 1;
    v
}

pub fn hom_basis_for_tables(
    g: &FiniteGroup,
    p1: &Subgroup,
    p2: &Subgroup,
    t1: &CosetTable,
    t2: &CosetTable,
) -> HomLatticeBasis {
    let dc = double_cosets(g, p2, p1);
    let (m1, m2) = (t1.index(), t2.index());
    let inv2: Vec<Permutation> = t2.representatives().iter().map(Permutation::inverse).collect();
    let mut labels = Vec::with_capacity(m1 * m2);
    let mut sizes = vec![0usize; dc.sizes.len()];
    for r2i in &inv2 {
        for r1 in t1.representatives() {
            let idx = g.index_of(&(r2i * r1)).expect("product of group elements");
            let l = dc.coset_of[idx];
            sizes[l as usize] += 1;
            labels.push(l);
        }
    }
    HomLatticeBasis {
        m1,
        m2,
        double_coset_reps: dc.representatives,
        labels,
        sizes,
    }
}

pub fn hom_basis(pair: &SubgroupPair) -> HomLatticeBasis {
    hom_basis_for_tables(&pair.group, &pair.p1, &pair.p2, &pair.t1, &pair.t2)
}

/// First position where `U ρ₁(s) ≠ ρ₂(s) U`, as `(generator, row, column)`.
pub fn equivariance_defect(
    u: &IntMatrix,
    actions1: &[Permutation],
    actions2: &[Permutation],
) -> Option<(usize, usize, usize)> {
    for (k, (s1, s2)) in actions1.iter().zip(actions2).enumerate() {
        for y in 0..u.rows() {
            for x in 0..u.cols() {
                if u[(s2.apply(y), s1.apply(x))] != u[(y, x)] {
                    return Some((k, y, x));
                }
            }
        }
    }
    None
}

pub fn is_equivariant(u: &IntMatrix, actions1: &[Permutation], actions2: &[Permutation]) -> bool {
    actions1.len() == actions2.len() && equivariance_defect(u, actions1, actions2).is_none()
}

/// Dimension over `Q` of `{B : B ρ₁(s) = ρ₂(s) B for all s}`, by exact
/// elimination on the `m₂ m₁` unknowns. Meant for small indices.
pub fn equivariant_solution_dimension(actions1: &[Permutation], actions2: &[Permutation]) -> usize {
    let m1 = actions1[0].degree();
    let m2 = actions2[0].degree();
    let n = m1 * m2;
    let one = BigRational::from_integer(BigInt::from(1));
    let mut rows = Vec::new();
    for (s1, s2) in actions1.iter().zip(actions2) {
        for y in 0..m2 {
            for x in 0..m1 {
                // B[s2 y][s1 x] − B[y][x] = 0
                let a = s2.apply(y) * m1 + s1.apply(x);
                let b = y * m1 + x;
                if a == b {
                    continue;
                }
                let mut row = vec![BigRational::zero(); n];
                row[a] = one.clone();
                row[b] = -one.clone();
                rows.push(row);
            }
        }
    }
    n - rank_rational(&rows, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(s, n).unwrap()
    }

    fn s3() -> FiniteGroup {
        FiniteGroup::from_generators(3, vec![p("(0 1 2)", 3), p("(0 1)", 3)]).unwrap()
    }

    #[test]
    fn whole_group_gives_one_by_one() {
        let g = s3();
        let pair = SubgroupPair::new(g.clone(), g.whole(), g.whole()).unwrap();
        let b = hom_basis(&pair);
        assert_eq!(b.matrices(), vec![IntMatrix::identity(1)]);
    }

    #[test]
    fn regular_representation_basis() {
        let g = s3();
        let e = g.trivial_subgroup();
        let pair = SubgroupPair::new(g.clone(), e.clone(), e).unwrap();
        let b = hom_basis(&pair);
        assert_eq!(b.len(), 6);
        for m in b.matrices() {
            // each is a permutation matrix commuting with the left action
            assert!(m.row_sums().iter().all(|&s| s == 1));
            assert!(is_equivariant(&m, pair.t1.actions(), pair.t2.actions()));
        }
    }

    #[test]
    fn basis_spans_all_equivariant_matrices() {
        let g = s3();
        let a = g.subgroup(vec![p("(0 1)", 3)]).unwrap();
        let c = g.subgroup(vec![p("(0 1 2)", 3)]).unwrap();
        for (x, y) in [(&a, &a), (&a, &c), (&c, &a), (&c, &c)] {
            let pair = SubgroupPair::new(g.clone(), x.clone(), y.clone()).unwrap();
            let b = hom_basis(&pair);
            for m in b.matrices() {
                assert!(is_equivariant(&m, pair.t1.actions(), pair.t2.actions()));
            }
            assert_eq!(
                equivariant_solution_dimension(pair.t1.actions(), pair.t2.actions()),
                b.len()
            );
        }
    }

    #[test]
    fn psl27_pair_basis() {
        let pair = crate::catalog::psl2_7_pair();
        let b = hom_basis(&pair);
        assert_eq!(b.support_sizes().iter().sum::<usize>(), 49);
        for m in b.matrices() {
            assert!(is_equivariant(&m, pair.t1.actions(), pair.t2.actions()));
            let rs = m.row_sums();
            assert!(rs.iter().all(|&s| s == rs[0]));
        }
        assert_eq!(
            equivariant_solution_dimension(pair.t1.actions(), pair.t2.actions()),
            b.len()
        );
        let c: Vec<i64> = (0..b.len() as i64).map(|i| 3 * i - 4).collect();
        assert_eq!(b.decompose(&b.combination(&c)), Some(c));
    }
}

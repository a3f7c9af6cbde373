//! Sublattices of `Z^n` and their quotients, all through [`Snf`].

use super::modp::{independent_rows_mod_p, large_primes};
use super::{big_mul_vec, BigMatrix, IntMatrix, Snf};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

fn columns_to_matrix(vectors: &[Vec<BigInt>], dim: usize) -> BigMatrix {
    (0..dim)
        .map(|r| vectors.iter().map(|v| v[r].clone()).collect())
        .collect()
}

/// Z-basis of `{x : A x = 0}` for an `rows × cols` matrix.
///
/// The Smith form is taken of a row subset that is independent modulo a
/// large prime; the result is then checked against every row of `A`, so a
/// rank drop modulo the prime only costs a fallback to the full matrix.
pub fn kernel_basis(a: &BigMatrix, cols: usize) -> Vec<Vec<BigInt>> {
    let rows = independent_rows_mod_p(a, large_primes(1)[0]);
    if rows.len() < a.len() {
        let sub: BigMatrix = rows.iter().map(|&i| a[i].clone()).collect();
        let k = full_kernel(&sub, cols);
        if k.iter().all(|x| big_mul_vec(a, x).iter().all(Zero::is_zero)) {
            return k;
        }
    }
    full_kernel(a, cols)
}

fn full_kernel(a: &BigMatrix, cols: usize) -> Vec<Vec<BigInt>> {
    let snf = Snf::compute(a, cols, true);
    let q = snf.q.as_ref().expect("transforms requested");
    (snf.rank..cols)
        .map(|j| q.iter().map(|row| row[j].clone()).collect())
        .collect()
}

/// Z-basis of the lattice spanned by `gens` inside `Z^dim`.
pub fn column_basis(gens: &[Vec<BigInt>], dim: usize) -> Vec<Vec<BigInt>> {
    if gens.is_empty() {
        return Vec::new();
    }
    let a = columns_to_matrix(gens, dim);
    let snf = Snf::compute(&a, gens.len(), true);
    let p_inv = snf.p_inv.as_ref().expect("transforms requested");
    (0..snf.rank)
        .map(|i| p_inv.iter().map(|row| &row[i] * &snf.diag[i]).collect())
        .collect()
}

/// Integer solution `c` of `Σ c_i basis_i = v`, if any.
pub fn solve_in_basis(basis: &[Vec<BigInt>], dim: usize, v: &[BigInt]) -> Option<Vec<BigInt>> {
    Solver::new(basis, dim).solve(v)
}

pub fn in_column_span(gens: &[Vec<BigInt>], dim: usize, v: &[BigInt]) -> bool {
    if gens.is_empty() {
        return v.iter().all(Zero::is_zero);
    }
    Solver::new(gens, dim).solve(v).is_some()
}

/// `U⁻¹` for a square integer matrix of determinant `±1`, `None` otherwise.
pub fn inverse_unimodular(u: &IntMatrix) -> Option<IntMatrix> {
    let n = u.rows();
    if u.cols() != n {
        return None;
    }
    let columns: Vec<Vec<BigInt>> = (0..n)
        .map(|j| (0..n).map(|i| BigInt::from(u[(i, j)])).collect())
        .collect();
    let solver = Solver::new(&columns, n);
    let mut inv = IntMatrix::zeros(n, n);
    for j in 0..n {
        let mut e = vec![BigInt::zero(); n];
        e[j] = BigInt::one();
        let x = solver.solve(&e)?;
        for (i, v) in x.iter().enumerate() {
            inv[(i, j)] = i64::try_from(v).ok()?;
        }
    }
    Some(inv)
}

/// Reusable integer solver for `A c = v` with `A` given by columns.
#[derive(Debug, Clone)]
pub(crate) struct Solver {
    snf: Snf,
    ncols: usize,
}

impl Solver {
    pub(crate) fn new(columns: &[Vec<BigInt>], dim: usize) -> Solver {
        let a = columns_to_matrix(columns, dim);
        Solver {
            snf: Snf::compute(&a, columns.len(), true),
            ncols: columns.len(),
        }
    }

    pub(crate) fn solve(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        if self.ncols == 0 {
            return v.iter().all(Zero::is_zero).then(Vec::new);
        }
        let p = self.snf.p.as_ref().expect("transforms requested");
        let pv = big_mul_vec(p, v);
        let mut y = vec![BigInt::zero(); self.ncols];
        for (i, x) in pv.iter().enumerate() {
            if i < self.snf.rank {
                let (quot, rem) = x.div_rem(&self.snf.diag[i]);
                if !rem.is_zero() {
                    return None;
                }
                y[i] = quot;
            } else if !x.is_zero() {
                return None;
            }
        }
        Some(big_mul_vec(self.snf.q.as_ref().expect("transforms requested"), &y))
    }
}

/// The abelian group `K / N` for lattices `N ⊆ K ⊆ Z^dim`.
#[derive(Debug, Clone)]
pub struct Subquotient {
    pub dim: usize,
    /// Invariant factors: torsion in divisibility order, then zeros.
    pub divisors: Vec<BigInt>,
    /// One representative in `Z^dim` per entry of `divisors`.
    pub generators: Vec<Vec<BigInt>>,
    /// `None` when `K` is the standard lattice.
    basis_solver: Option<Solver>,
    coords: Snf,
    kept: Vec<usize>,
}

impl Subquotient {
    /// Coordinates of `v ∈ K` along `generators` (torsion parts reduced),
    /// or `None` when `v ∉ K`.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let k_coords = match &self.basis_solver {
            Some(solver) => solver.solve(v)?,
            None => v.to_vec(),
        };
        let p = self.coords.p.as_ref().expect("transforms requested");
        let c = big_mul_vec(p, &k_coords);
        Some(
            self.kept
                .iter()
                .map(|&i| {
                    if i < self.coords.rank {
                        c[i].mod_floor(&self.coords.diag[i])
                    } else {
                        c[i].clone()
                    }
                })
                .collect(),
        )
    }

    /// Whether `v ∈ K` represents the zero class.
    pub fn is_zero(&self, v: &[BigInt]) -> Option<bool> {
        self.coordinates(v).map(|c| c.iter().all(Zero::is_zero))
    }

    pub fn free_rank(&self) -> usize {
        self.divisors.iter().filter(|d| d.is_zero()).count()
    }
}

/// Structure of `K / N` where `k_gens` span `K` and `n_gens` span `N ⊆ K`.
pub fn subquotient(k_gens: &[Vec<BigInt>], n_gens: &[Vec<BigInt>], dim: usize) -> Subquotient {
    let standard = k_gens.len() == dim
        && k_gens
            .iter()
            .enumerate()
            .all(|(i, g)| g.iter().enumerate().all(|(j, x)| if i == j { x.is_one() } else { x.is_zero() }));
    let basis = if standard { k_gens.to_vec() } else { column_basis(k_gens, dim) };
    let s = basis.len();
    let basis_solver = (!standard).then(|| Solver::new(&basis, dim));
    let relations = n_gens.iter().filter(|g| g.iter().any(|x| !x.is_zero()));
    let coords: Vec<Vec<BigInt>> = match &basis_solver {
        None => relations.cloned().collect(),
        Some(solver) => relations
            .map(|g| {
                solver
                    .solve(g)
                    .expect("relation lattice must lie inside the cycle lattice")
            })
            .collect(),
    };
    // s × t coordinate matrix; an empty relation set still needs s rows
    let c: BigMatrix = (0..s)
        .map(|r| coords.iter().map(|v| v[r].clone()).collect())
        .collect();
    let snf = Snf::compute(&c, coords.len(), true);
    let p_inv = snf.p_inv.as_ref().expect("transforms requested");
    let mut kept = Vec::new();
    let mut divisors = Vec::new();
    for i in 0..s {
        if i < snf.rank {
            if !snf.diag[i].is_one() {
                kept.push(i);
                divisors.push(snf.diag[i].clone());
            }
        } else {
            kept.push(i);
            divisors.push(BigInt::zero());
        }
    }
    let generators = kept
        .iter()
        .map(|&i| {
            let coord: Vec<BigInt> = p_inv.iter().map(|row| row[i].clone()).collect();
            if standard {
                return coord;
            }
            (0..dim)
                .map(|r| basis.iter().zip(&coord).map(|(b, c)| &b[r] * c).sum())
                .collect()
        })
        .collect();
    Subquotient {
        dim,
        divisors,
        generators,
        basis_solver,
        coords: snf,
        kept,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn kernel_of_tall_matrix_uses_a_row_subset() {
        // rows 2 and 3 are combinations of rows 0 and 1
        let a: BigMatrix = vec![v(&[1, 2, 3, 4]), v(&[0, 1, 1, 2]), v(&[1, 3, 4, 6]), v(&[2, 3, 5, 6])];
        let k = kernel_basis(&a, 4);
        assert_eq!(k.len(), 2);
        for x in &k {
            assert!(big_mul_vec(&a, x).iter().all(Zero::is_zero));
        }
        assert_eq!(column_basis(&k, 4).len(), 2);
    }

    #[test]
    fn unimodular_inverses() {
        let u = IntMatrix::from_rows(&[vec![2, 1], vec![1, 1]]);
        let inv = inverse_unimodular(&u).unwrap();
        assert_eq!(u.mul(&inv), IntMatrix::identity(2));
        assert!(inverse_unimodular(&IntMatrix::from_rows(&[vec![2, 0], vec![0, 1]])).is_none());
    }

    #[test]
    fn kernel_of_rank_one_map() {
        let a: BigMatrix = vec![v(&[1, 1, 1])];
        let k = kernel_basis(&a, 3);
        assert_eq!(k.len(), 2);
        for x in &k {
            let s: BigInt = x.iter().sum();
            assert!(s.is_zero());
        }
    }

    #[test]
    fn quotient_of_z2_by_diagonal() {
        let k = vec![v(&[1, 0]), v(&[0, 1])];
        let n = vec![v(&[2, 2])];
        let q = subquotient(&k, &n, 2);
        assert_eq!(q.divisors, v(&[2, 0]));
        assert_eq!(q.is_zero(&v(&[2, 2])), Some(true));
        assert_eq!(q.is_zero(&v(&[1, 1])), Some(false));
        assert_eq!(q.is_zero(&v(&[4, 4])), Some(true));
    }

    #[test]
    fn membership_outside_the_cycle_lattice() {
        let k = vec![v(&[2, 0])];
        let q = subquotient(&k, &[], 2);
        assert_eq!(q.divisors, v(&[0]));
        assert_eq!(q.coordinates(&v(&[1, 0])), None);
        assert_eq!(q.coordinates(&v(&[4, 0])).unwrap().len(), 1);
    }

    #[test]
    fn solve_in_non_square_basis() {
        let basis = vec![v(&[1, 1, 0]), v(&[0, 2, 1])];
        let x = solve_in_basis(&basis, 3, &v(&[3, 7, 2])).unwrap();
        assert_eq!(x, v(&[3, 2]));
        assert!(solve_in_basis(&basis, 3, &v(&[1, 0, 0])).is_none());
    }
}

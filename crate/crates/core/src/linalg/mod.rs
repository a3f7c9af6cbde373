//! Exact integer and rational linear algebra.
//!
//! Everything here is exact: small dense integer matrices are stored as `i64`,
//! anything that can grow (determinants, Smith forms, characteristic
//! polynomial coefficients) is carried in `BigInt` or reduced modulo word-size
//! primes and reconstructed.

mod charpoly;
mod det;
mod lattice;
pub(crate) mod modp;
mod rational;
mod snf;

pub use charpoly::{char_poly_berkowitz, char_poly_multimodular};
pub use det::{det_bareiss, det_bareiss_big, det_mod_p};
pub use lattice::{
    column_basis, in_column_span, inverse_unimodular, kernel_basis, solve_in_basis, subquotient, Subquotient,
};
pub use modp::{crt_symmetric, large_primes, rank_mod_p};
pub use rational::{nullspace_rational, rank_rational, solve_rational};
pub use snf::Snf;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Index, IndexMut};

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    /// Builds a matrix from row-major data. Panics if the length is wrong.
    pub fn from_row_major(rows: usize, cols: usize, data: Vec<i64>) -> Self {
        assert_eq!(data.len(), rows * cols, "row-major data has wrong length");
        IntMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend_from_slice(row);
        }
        IntMatrix {
            rows: r,
            cols: c,
            data,
        }
    }

    /// Permutation matrix `P` with `P e_x = e_{images[x]}`.
    pub fn permutation(images: &[u32]) -> Self {
        let n = images.len();
        let mut m = Self::zeros(n, n);
        for (x, &y) in images.iter().enumerate() {
            m[(y as usize, x)] = 1;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row_major(&self) -> &[i64] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[i64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)];
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(r, k)];
                if a == 0 {
                    continue;
                }
                let orow = other.row(k);
                let base = r * other.cols;
                for (c, &b) in orow.iter().enumerate() {
                    out.data[base + c] += a * b;
                }
            }
        }
        out
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn scale(&self, k: i64) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * k).collect(),
        }
    }

    /// Kronecker product; row index of the result is `i * other.rows + k`.
    pub fn kron(&self, other: &IntMatrix) -> IntMatrix {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Self::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self[(i, j)];
                if a == 0 {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out[(i * other.rows + k, j * other.cols + l)] = a * other[(k, l)];
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| self.row(r).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn trace(&self) -> i64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// Row sums; equivariant maps between transitive permutation modules
    /// have all of these equal.
    pub fn row_sums(&self) -> Vec<i64> {
        (0..self.rows).map(|r| self.row(r).iter().sum()).collect()
    }

    pub fn to_big_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    pub fn max_abs(&self) -> i64 {
        self.data.iter().map(|x| x.abs()).max().unwrap_or(0)
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (r, c): (usize, usize)) -> &i64 {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut i64 {
        &mut self.data[r * self.cols + c]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        write!(f, "]")
    }
}

/// Dense `BigInt` matrix as a vector of rows.
pub type BigMatrix = Vec<Vec<BigInt>>;

pub fn big_zeros(rows: usize, cols: usize) -> BigMatrix {
    vec![vec![BigInt::from(0); cols]; rows]
}

pub fn big_identity(n: usize) -> BigMatrix {
    let mut m = big_zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = BigInt::from(1);
    }
    m
}

pub fn big_mul_vec(m: &BigMatrix, v: &[BigInt]) -> Vec<BigInt> {
    let support: Vec<usize> = (0..v.len()).filter(|&j| !v[j].is_zero()).collect();
    m.iter()
        .map(|row| {
            support
                .iter()
                .filter(|&&j| !row[j].is_zero())
                .map(|&j| &row[j] * &v[j])
                .sum()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kron_of_identities_is_identity() {
        let k = IntMatrix::identity(2).kron(&IntMatrix::identity(3));
        assert_eq!(k, IntMatrix::identity(6));
    }

    #[test]
    fn kron_index_convention() {
        let a = IntMatrix::from_rows(&[vec![1, 2], vec![3, 4]]);
        let b = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        let k = a.kron(&b);
        assert_eq!(k[(0, 1)], 1);
        assert_eq!(k[(1, 2)], 2);
        assert_eq!(k[(3, 2)], 4);
        assert_eq!(k[(2, 2)], 0);
    }

    #[test]
    fn permutation_matrix_acts_on_basis() {
        let p = IntMatrix::permutation(&[1, 2, 0]);
        assert_eq!(p.mul_vec(&[1, 0, 0]), vec![0, 1, 0]);
        assert_eq!(p.mul_vec(&[0, 0, 1]), vec![1, 0, 0]);
    }
}

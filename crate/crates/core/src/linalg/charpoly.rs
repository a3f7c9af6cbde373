//! Characteristic polynomials `det(xI − A)` of integer matrices.
//!
//! Coefficients are returned lowest degree first, so `coeffs[n] == 1`.

use super::modp::{crt_symmetric, inv_mod, large_primes, mul_mod, reduce};
use super::IntMatrix;
use num_bigint::BigInt;
use num_traits::Zero;

/// Berkowitz's division-free algorithm over the integers, `O(n^4)`.
pub fn char_poly_berkowitz(a: &IntMatrix) -> Vec<BigInt> {
    assert!(a.is_square());
    let n = a.rows();
    let big = |x: i64| BigInt::from(x);
    // coefficients of the leading principal block, highest degree first
    let mut v: Vec<BigInt> = vec![BigInt::from(1)];
    for k in 0..n {
        // new index k: row R = a[k][0..k], column C = a[0..k][k], corner a[k][k]
        let mut col = vec![BigInt::from(1), -big(a[(k, k)])];
        let mut power: Vec<BigInt> = (0..k).map(|i| big(a[(i, k)])).collect();
        for step in 0..k {
            let r_mc: BigInt = (0..k).map(|j| big(a[(k, j)]) * &power[j]).sum();
            col.push(-r_mc);
            if step + 1 < k {
                power = (0..k)
                    .map(|i| (0..k).map(|j| big(a[(i, j)]) * &power[j]).sum())
                    .collect();
            }
        }
        // Toeplitz (k+2)×(k+1) with first column `col`, times v
        let mut next = vec![BigInt::zero(); k + 2];
        for (i, out) in next.iter_mut().enumerate() {
            for (j, vj) in v.iter().enumerate() {
                if i >= j {
                    *out += &col[i - j] * vj;
                }
            }
        }
        v = next;
    }
    v.reverse();
    v
}

/// Characteristic polynomial modulo `p` via Hessenberg reduction.
fn char_poly_mod_p(a: &IntMatrix, p: u64) -> Vec<u64> {
    let n = a.rows();
    let mut h: Vec<Vec<u64>> = (0..n)
        .map(|r| a.row(r).iter().map(|&x| reduce(x, p)).collect())
        .collect();
    let sub = |x: u64, y: u64| if x >= y { x - y } else { x + p - y };
    for k in 1..n.saturating_sub(1) {
        let Some(piv) = (k..n).find(|&i| h[i][k - 1] != 0) else {
            continue;
        };
        if piv != k {
            h.swap(piv, k);
            for row in h.iter_mut() {
                row.swap(piv, k);
            }
        }
        let inv = inv_mod(h[k][k - 1], p);
        for i in k + 1..n {
            if h[i][k - 1] == 0 {
                continue;
            }
            let u = mul_mod(h[i][k - 1], inv, p);
            // row_i -= u row_k
            for j in 0..n {
                let t = mul_mod(u, h[k][j], p);
                h[i][j] = sub(h[i][j], t);
            }
            // col_k += u col_i
            for row in h.iter_mut() {
                let t = mul_mod(u, row[i], p);
                row[k] = (row[k] + t) % p;
            }
        }
    }
    // polys[m] = char poly of the leading m×m block, lowest degree first
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for m in 1..=n {
        let prev = &polys[m - 1];
        let mut cur = vec![0u64; m + 1];
        for (d, &c) in prev.iter().enumerate() {
            cur[d + 1] = (cur[d + 1] + c) % p;
            cur[d] = sub(cur[d], mul_mod(h[m - 1][m - 1], c, p));
        }
        let mut t = 1u64;
        for i in (1..m).rev() {
            t = mul_mod(t, h[i][i - 1], p);
            if t == 0 {
                break;
            }
            let f = mul_mod(t, h[i - 1][m - 1], p);
            for (d, &c) in polys[i - 1].iter().enumerate() {
                cur[d] = sub(cur[d], mul_mod(f, c, p));
            }
        }
        polys.push(cur);
    }
    polys.pop().expect("at least the constant polynomial")
}

/// Exact characteristic polynomial by Hessenberg reduction modulo enough
/// 62-bit primes, recombined by CRT.
///
/// Every root has modulus at most `ρ = min(max column sum, max row sum)` of
/// `|A|`, so `|c_k| ≤ C(n,k) ρ^(n-k) ≤ (1+ρ)^n`; primes are added until their
/// product exceeds twice that bound.
pub fn char_poly_multimodular(a: &IntMatrix) -> Vec<BigInt> {
    assert!(a.is_square());
    let n = a.rows();
    let col_sum = (0..n)
        .map(|c| (0..n).map(|r| a[(r, c)].unsigned_abs()).sum::<u64>())
        .max()
        .unwrap_or(0);
    let row_sum = (0..n)
        .map(|r| a.row(r).iter().map(|x| x.unsigned_abs()).sum::<u64>())
        .max()
        .unwrap_or(0);
    let rho = col_sum.min(row_sum) as f64;
    let bits = (n as f64) * (1.0 + rho).log2() + 2.0;
    let count = ((bits / 61.0).ceil() as usize).max(1);
    let primes = large_primes(count);
    let residues: Vec<Vec<u64>> = primes.iter().map(|&p| char_poly_mod_p(a, p)).collect();
    (0..=n)
        .map(|d| {
            let rs: Vec<u64> = residues.iter().map(|r| r[d]).collect();
            crt_symmetric(&rs, &primes)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn two_by_two() {
        let a = IntMatrix::from_rows(&[vec![1, 2], vec![3, 4]]);
        // x^2 - 5x - 2
        assert_eq!(char_poly_berkowitz(&a), ints(&[-2, -5, 1]));
        assert_eq!(char_poly_multimodular(&a), ints(&[-2, -5, 1]));
    }

    #[test]
    fn triangle_graph() {
        let a = IntMatrix::from_rows(&[vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]);
        assert_eq!(char_poly_berkowitz(&a), ints(&[-2, -3, 0, 1]));
        assert_eq!(char_poly_multimodular(&a), ints(&[-2, -3, 0, 1]));
    }

    #[test]
    fn routes_agree_on_dense_matrices() {
        let n = 9;
        let mut a = IntMatrix::zeros(n, n);
        let mut s: i64 = 17;
        for r in 0..n {
            for c in 0..n {
                s = (s * 1103 + 12345) % 65_536;
                a[(r, c)] = s % 11 - 5;
            }
        }
        assert_eq!(char_poly_berkowitz(&a), char_poly_multimodular(&a));
    }
}

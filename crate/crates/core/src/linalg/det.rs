use super::modp::{inv_mod, mul_mod, reduce};
use super::{BigMatrix, IntMatrix};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Exact determinant by fraction-free (Bareiss) elimination.
///
/// Runs in `i128` while intermediate minors fit and restarts in `BigInt`
/// on the first overflow.
pub fn det_bareiss(m: &IntMatrix) -> BigInt {
    assert!(m.is_square(), "determinant of a non-square matrix");
    match bareiss_i128(m) {
        Some(d) => BigInt::from(d),
        None => det_bareiss_big(m.to_big_rows()),
    }
}

fn bareiss_i128(m: &IntMatrix) -> Option<i128> {
    let n = m.rows();
    if n == 0 {
        return Some(1);
    }
    let mut a: Vec<Vec<i128>> = (0..n)
        .map(|r| m.row(r).iter().map(|&x| x as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            let Some(swap) = (k + 1..n).find(|&r| a[r][k] != 0) else {
                return Some(0);
            };
            a.swap(k, swap);
            sign = -sign;
        }
        let pivot = a[k][k];
        let (top, bottom) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in bottom.iter_mut() {
            let lead = row[k];
            for j in k + 1..n {
                let t = pivot
                    .checked_mul(row[j])?
                    .checked_sub(lead.checked_mul(pivot_row[j])?)?;
                row[j] = t / prev;
            }
            row[k] = 0;
        }
        prev = pivot;
    }
    Some(sign * a[n - 1][n - 1])
}

pub fn det_bareiss_big(mut a: BigMatrix) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::from(1);
    }
    assert!(a.iter().all(|r| r.len() == n), "determinant of a non-square matrix");
    let mut negate = false;
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            // smallest nonzero pivot keeps the minors tidy
            let Some(swap) = (k + 1..n)
                .filter(|&r| !a[r][k].is_zero())
                .min_by(|&x, &y| a[x][k].abs().cmp(&a[y][k].abs()))
            else {
                return BigInt::zero();
            };
            a.swap(k, swap);
            negate = !negate;
        }
        let (top, bottom) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let pivot = &pivot_row[k];
        for row in bottom.iter_mut() {
            let lead = std::mem::take(&mut row[k]);
            for j in k + 1..n {
                let t = pivot * &row[j] - &lead * &pivot_row[j];
                row[j] = t / &prev;
            }
        }
        prev = pivot.clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Determinant reduced into `[0, p)`.
pub fn det_mod_p(m: &IntMatrix, p: u64) -> u64 {
    assert!(m.is_square());
    let n = m.rows();
    let mut a: Vec<Vec<u64>> = (0..n)
        .map(|r| m.row(r).iter().map(|&x| reduce(x, p)).collect())
        .collect();
    let mut det = 1u64;
    for k in 0..n {
        let Some(piv) = (k..n).find(|&r| a[r][k] != 0) else {
            return 0;
        };
        if piv != k {
            a.swap(k, piv);
            det = (p - det) % p;
        }
        det = mul_mod(det, a[k][k], p);
        let inv = inv_mod(a[k][k], p);
        let (top, bottom) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in bottom.iter_mut() {
            if row[k] == 0 {
                continue;
            }
            let f = mul_mod(row[k], inv, p);
            for j in k..n {
                let sub = mul_mod(f, pivot_row[j], p);
                row[j] = if row[j] >= sub {
                    row[j] - sub
                } else {
                    row[j] + p - sub
                };
            }
        }
    }
    det
}

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::sync::OnceLock;

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse in `F_p`; `a` must be nonzero mod `p`.
#[inline]
pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

#[inline]
pub(crate) fn reduce(x: i64, p: u64) -> u64 {
    x.rem_euclid(p as i64) as u64
}

pub(crate) fn reduce_big(x: &BigInt, p: u64) -> u64 {
    let r = x.mod_floor(&BigInt::from(p));
    r.try_into().expect("residue fits in u64")
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The `count` largest primes below `2^62`, in decreasing order.
pub fn large_primes(count: usize) -> Vec<u64> {
    static CACHE: OnceLock<std::sync::Mutex<Vec<u64>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| std::sync::Mutex::new(Vec::new()));
    let mut primes = cache.lock().expect("prime cache poisoned");
    let mut candidate = primes.last().copied().unwrap_or(1u64 << 62);
    while primes.len() < count {
        candidate -= 1;
        if is_prime(candidate) {
            primes.push(candidate);
        }
    }
    primes[..count].to_vec()
}

/// Rank of an integer matrix over `F_p`.
pub fn rank_mod_p(rows: &[Vec<i64>], p: u64) -> usize {
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| reduce(x, p)).collect())
        .collect();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = inv_mod(m[rank][col], p);
        for r in 0..m.len() {
            if r != rank && m[r][col] != 0 {
                let f = mul_mod(m[r][col], inv, p);
                for c in col..ncols {
                    let sub = mul_mod(f, m[rank][c], p);
                    m[r][c] = (m[r][c] + p - sub) % p;
                }
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// Indices of a maximal set of rows that are independent over `F_p`
/// (hence over `Q`), scanning in order.
pub(crate) fn independent_rows_mod_p(rows: &[Vec<BigInt>], p: u64) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    // echelon rows, each with its pivot column and normalised to pivot 1
    let mut basis: Vec<(usize, Vec<u64>)> = Vec::new();
    let mut kept = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        if basis.len() == ncols {
            break;
        }
        let mut v: Vec<u64> = row.iter().map(|x| reduce_big(x, p)).collect();
        for (col, b) in &basis {
            let f = v[*col];
            if f != 0 {
                for (x, y) in v.iter_mut().zip(b) {
                    *x = (*x + p - mul_mod(f, *y, p)) % p;
                }
            }
        }
        if let Some(col) = v.iter().position(|&x| x != 0) {
            let inv = inv_mod(v[col], p);
            for x in v.iter_mut() {
                *x = mul_mod(*x, inv, p);
            }
            basis.push((col, v));
            kept.push(i);
        }
    }
    kept
}

/// Chinese remaindering of residues into the symmetric range
/// `(-M/2, M/2]` with `M` the product of the moduli.
pub fn crt_symmetric(residues: &[u64], primes: &[u64]) -> BigInt {
    assert_eq!(residues.len(), primes.len());
    let mut value = BigInt::zero();
    let mut modulus = BigInt::one();
    for (&r, &p) in residues.iter().zip(primes) {
        // value + modulus * t ≡ r (mod p)
        let cur = reduce_big(&value, p);
        let m_mod = reduce_big(&modulus, p);
        let diff = (r + p - cur) % p;
        let t = mul_mod(diff, inv_mod(m_mod, p), p);
        value += &modulus * BigInt::from(t);
        modulus *= BigInt::from(p);
    }
    let half = &modulus >> 1;
    if value > half {
        value -= modulus;
    }
    value
}

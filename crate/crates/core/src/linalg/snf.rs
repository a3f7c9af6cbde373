use super::BigMatrix;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Smith normal form `P · A · Q = D` over the integers.
///
/// `diag` holds the invariant factors `d_0 | d_1 | ... | d_{rank-1}` (all
/// positive) followed by zeros; `P`, `P⁻¹` and `Q` are unimodular and only
/// tracked when requested.
#[derive(Debug, Clone)]
pub struct Snf {
    pub rows: usize,
    pub cols: usize,
    pub diag: Vec<BigInt>,
    pub rank: usize,
    pub p: Option<BigMatrix>,
    pub p_inv: Option<BigMatrix>,
    pub q: Option<BigMatrix>,
}

/// Arithmetic failed to fit the scalar type.
struct Overflow;

type Step<T = ()> = std::result::Result<T, Overflow>;

trait Scalar: Clone {
    fn nil() -> Self;
    fn unit() -> Self;
    fn is_nil(&self) -> bool;
    fn is_unit(&self) -> bool;
    fn is_neg(&self) -> bool;
    /// `|self| < |other|`
    fn smaller(&self, other: &Self) -> bool;
    fn neg(&self) -> Step<Self>;
    /// Truncating quotient.
    fn quot(&self, d: &Self) -> Step<Self>;
    fn divides(&self, x: &Self) -> bool;
    /// `acc += s * c`
    fn add_mul(acc: &mut Self, s: &Self, c: &Self) -> Step;
    fn to_big(&self) -> BigInt;
}

impl Scalar for i64 {
    fn nil() -> Self {
        0
    }
    fn unit() -> Self {
        1
    }
    fn is_nil(&self) -> bool {
        *self == 0
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn is_neg(&self) -> bool {
        *self < 0
    }
    fn smaller(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    fn neg(&self) -> Step<Self> {
        self.checked_neg().ok_or(Overflow)
    }
    fn quot(&self, d: &Self) -> Step<Self> {
        self.checked_div(*d).ok_or(Overflow)
    }
    fn divides(&self, x: &Self) -> bool {
        x.checked_rem(*self).is_none_or(|r| r == 0)
    }
    fn add_mul(acc: &mut Self, s: &Self, c: &Self) -> Step {
        *acc = s
            .checked_mul(*c)
            .and_then(|t| acc.checked_add(t))
            .ok_or(Overflow)?;
        Ok(())
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Scalar for BigInt {
    fn nil() -> Self {
        Zero::zero()
    }
    fn unit() -> Self {
        One::one()
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        self.magnitude().is_one()
    }
    fn is_neg(&self) -> bool {
        Signed::is_negative(self)
    }
    fn smaller(&self, other: &Self) -> bool {
        self.magnitude() < other.magnitude()
    }
    fn neg(&self) -> Step<Self> {
        Ok(-self)
    }
    fn quot(&self, d: &Self) -> Step<Self> {
        Ok(self / d)
    }
    fn divides(&self, x: &Self) -> bool {
        Zero::is_zero(&(x % self))
    }
    fn add_mul(acc: &mut Self, s: &Self, c: &Self) -> Step {
        *acc += s * c;
        Ok(())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

type Matrix<T> = Vec<Vec<T>>;

fn identity<T: Scalar>(n: usize) -> Matrix<T> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { T::unit() } else { T::nil() }).collect())
        .collect()
}

struct Work<T> {
    a: Matrix<T>,
    p: Option<Matrix<T>>,
    p_inv: Option<Matrix<T>>,
    q: Option<Matrix<T>>,
}

impl<T: Scalar> Work<T> {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        if let Some(p) = &mut self.p {
            p.swap(i, j);
        }
        if let Some(pi) = &mut self.p_inv {
            for row in pi.iter_mut() {
                row.swap(i, j);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in self.a.iter_mut() {
            row.swap(i, j);
        }
        if let Some(q) = &mut self.q {
            for row in q.iter_mut() {
                row.swap(i, j);
            }
        }
    }

    /// row_i += c * row_j
    fn add_row(&mut self, i: usize, j: usize, c: &T) -> Step {
        add_row_multiple(&mut self.a, i, j, c)?;
        if let Some(p) = &mut self.p {
            add_row_multiple(p, i, j, c)?;
        }
        if let Some(pi) = &mut self.p_inv {
            // inverse op on the right: col_j -= c * col_i
            let minus = c.neg()?;
            for row in pi.iter_mut() {
                if !row[i].is_nil() {
                    let s = row[i].clone();
                    T::add_mul(&mut row[j], &s, &minus)?;
                }
            }
        }
        Ok(())
    }

    /// col_i += c * col_j
    fn add_col(&mut self, i: usize, j: usize, c: &T) -> Step {
        add_col_multiple(&mut self.a, i, j, c)?;
        if let Some(q) = &mut self.q {
            add_col_multiple(q, i, j, c)?;
        }
        Ok(())
    }

    fn negate_row(&mut self, i: usize) -> Step {
        for x in self.a[i].iter_mut() {
            *x = x.neg()?;
        }
        if let Some(p) = &mut self.p {
            for x in p[i].iter_mut() {
                *x = x.neg()?;
            }
        }
        if let Some(pi) = &mut self.p_inv {
            for row in pi.iter_mut() {
                row[i] = row[i].neg()?;
            }
        }
        Ok(())
    }
}

fn add_row_multiple<T: Scalar>(m: &mut Matrix<T>, i: usize, j: usize, c: &T) -> Step {
    if c.is_nil() {
        return Ok(());
    }
    let (src, dst) = if i < j {
        let (lo, hi) = m.split_at_mut(j);
        (&hi[0], &mut lo[i])
    } else {
        let (lo, hi) = m.split_at_mut(i);
        (&lo[j], &mut hi[0])
    };
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_nil() {
            T::add_mul(d, s, c)?;
        }
    }
    Ok(())
}

fn add_col_multiple<T: Scalar>(m: &mut Matrix<T>, i: usize, j: usize, c: &T) -> Step {
    if c.is_nil() {
        return Ok(());
    }
    for row in m.iter_mut() {
        if !row[j].is_nil() {
            let s = row[j].clone();
            T::add_mul(&mut row[i], &s, c)?;
        }
    }
    Ok(())
}

struct Reduced<T> {
    work: Work<T>,
    rank: usize,
}

fn reduce<T: Scalar>(a: Matrix<T>, rows: usize, cols: usize, with_transforms: bool) -> Step<Reduced<T>> {
    let mut w = Work {
        a,
        p: with_transforms.then(|| identity(rows)),
        p_inv: with_transforms.then(|| identity(rows)),
        q: with_transforms.then(|| identity(cols)),
    };
    let limit = rows.min(cols);
    let mut t = 0;
    while t < limit {
        let Some((pi, pj)) = smallest_entry(&w.a, t) else {
            break;
        };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if !w.a[i][t].is_nil() {
                    let q = w.a[i][t].quot(&w.a[t][t])?.neg()?;
                    w.add_row(i, t, &q)?;
                    if !w.a[i][t].is_nil() {
                        clean = false;
                    }
                }
            }
            for j in t + 1..cols {
                if !w.a[t][j].is_nil() {
                    let q = w.a[t][j].quot(&w.a[t][t])?.neg()?;
                    w.add_col(j, t, &q)?;
                    if !w.a[t][j].is_nil() {
                        clean = false;
                    }
                }
            }
            if !clean {
                // move the smallest leftover in row/column t onto the pivot
                let mut best: Option<(usize, bool)> = None;
                let mut best_val = w.a[t][t].clone();
                for i in t + 1..rows {
                    let v = &w.a[i][t];
                    if !v.is_nil() && v.smaller(&best_val) {
                        best_val = v.clone();
                        best = Some((i, true));
                    }
                }
                for j in t + 1..cols {
                    let v = &w.a[t][j];
                    if !v.is_nil() && v.smaller(&best_val) {
                        best_val = v.clone();
                        best = Some((j, false));
                    }
                }
                match best {
                    Some((i, true)) => w.swap_rows(t, i),
                    Some((j, false)) => w.swap_cols(t, j),
                    None => {}
                }
                continue;
            }
            let pivot = w.a[t][t].clone();
            if pivot.is_unit() {
                break;
            }
            let offender = (t + 1..rows).find(|&i| w.a[i][t + 1..].iter().any(|x| !pivot.divides(x)));
            match offender {
                Some(i) => w.add_row(t, i, &T::unit())?,
                None => break,
            }
        }
        if w.a[t][t].is_neg() {
            w.negate_row(t)?;
        }
        t += 1;
    }
    Ok(Reduced { work: w, rank: t })
}

fn to_big_matrix<T: Scalar>(m: Option<Matrix<T>>) -> Option<BigMatrix> {
    m.map(|m| m.iter().map(|r| r.iter().map(Scalar::to_big).collect()).collect())
}

impl Snf {
    pub fn compute(a: &BigMatrix, cols: usize, with_transforms: bool) -> Snf {
        let rows = a.len();
        assert!(a.iter().all(|r| r.len() == cols), "ragged matrix");
        let small: Option<Matrix<i64>> = a
            .iter()
            .map(|r| r.iter().map(ToPrimitive::to_i64).collect())
            .collect();
        if let Some(small) = small {
            if let Ok(r) = reduce(small, rows, cols, with_transforms) {
                return Snf::finish(r, rows, cols);
            }
        }
        match reduce(a.clone(), rows, cols, with_transforms) {
            Ok(r) => Snf::finish(r, rows, cols),
            Err(Overflow) => unreachable!("big integers do not overflow"),
        }
    }

    fn finish<T: Scalar>(r: Reduced<T>, rows: usize, cols: usize) -> Snf {
        let limit = rows.min(cols);
        let w = r.work;
        Snf {
            rows,
            cols,
            diag: (0..limit).map(|i| w.a[i][i].to_big()).collect(),
            rank: r.rank,
            p: to_big_matrix(w.p),
            p_inv: to_big_matrix(w.p_inv),
            q: to_big_matrix(w.q),
        }
    }


    pub fn from_i64(a: &[Vec<i64>], cols: usize, with_transforms: bool) -> Snf {
        let big: BigMatrix = a
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        Snf::compute(&big, cols, with_transforms)
    }

    /// Invariant factors of the cokernel `Z^rows / A Z^cols`: non-unit
    /// torsion divisors in divisibility order, then one `0` per free summand.
    pub fn cokernel_divisors(&self) -> Vec<BigInt> {
        let mut out: Vec<BigInt> = self.diag[..self.rank]
            .iter()
            .filter(|d| !d.is_one())
            .cloned()
            .collect();
        out.extend(std::iter::repeat_n(BigInt::zero(), self.rows - self.rank));
        out
    }
}

fn smallest_entry<T: Scalar>(a: &Matrix<T>, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, x) in row.iter().enumerate().skip(t) {
            if x.is_nil() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| x.smaller(&a[bi][bj])) {
                best = Some((i, j));
                if x.is_unit() {
                    return best;
                }
            }
        }
    }
    best
}

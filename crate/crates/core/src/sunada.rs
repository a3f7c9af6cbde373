//! Schreier coset graphs of Gassman pairs and exact spectral comparison.

use crate::error::{Error, Result};
use crate::gassman::SubgroupPair;
use crate::linalg::{char_poly_multimodular, IntMatrix};
use crate::permgroup::{CosetTable, FiniteGroup, Permutation};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::fmt;

/// Longest closed-walk length reported by default.
pub const DEFAULT_WALK_LENGTH: usize = 12;

/// Directed multigraph on `G/P` with an edge `x → s·x` for each `s ∈ S`.
#[derive(Clone, Debug)]
pub struct SchreierGraph {
    /// `A[y][x] = #{s ∈ S : s·x = y}`.
    pub adjacency: IntMatrix,
    /// The action of each element of `S` on the vertices.
    pub actions: Vec<Permutation>,
}

impl SchreierGraph {
    pub fn vertices(&self) -> usize {
        self.adjacency.rows()
    }

    pub fn out_degree(&self) -> usize {
        self.actions.len()
    }

    /// The same graph with vertex `x` renamed `pi[x]`.
    pub fn relabel(&self, pi: &[u32]) -> SchreierGraph {
        let p = Permutation::from_images(pi.to_vec()).expect("relabelling is a bijection");
        let inv = p.inverse();
        let actions: Vec<Permutation> = self.actions.iter().map(|a| &(&p * a) * &inv).collect();
        SchreierGraph {
            adjacency: build_adjacency(self.vertices(), &actions),
            actions,
        }
    }
}

fn build_adjacency(m: usize, actions: &[Permutation]) -> IntMatrix {
    let mut a = IntMatrix::zeros(m, m);
    for s in actions {
        for x in 0..m {
            a[(s.apply(x), x)] += 1;
        }
    }
    a
}

/// The Schreier graph of `table` for the multiset `s` of elements of `g`.
pub fn schreier_graph(g: &FiniteGroup, table: &CosetTable, s: &[Permutation]) -> Result<SchreierGraph> {
    if s.is_empty() {
        return Err(Error::ElementNotInGroup("the multiset S is empty".into()));
    }
    let mut actions = Vec::with_capacity(s.len());
    for x in s {
        if x.degree() != g.degree() || !g.contains(x) {
            return Err(Error::ElementNotInGroup(format!("{x} is not an element of the group")));
        }
        actions.push(table.action_of(x)?);
    }
    Ok(SchreierGraph {
        adjacency: build_adjacency(table.index(), &actions),
        actions,
    })
}

/// `s` followed by the inverses of its elements, for undirected spectra.
pub fn symmetric_closure(s: &[Permutation]) -> Vec<Permutation> {
    s.iter().cloned().chain(s.iter().map(Permutation::inverse)).collect()
}

/// Integer polynomial, coefficients lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct IntegerPolynomial {
    #[serde(serialize_with = "crate::json::big_vec")]
    pub coeffs: Vec<BigInt>,
}

impl IntegerPolynomial {
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }
}

impl fmt::Display for IntegerPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.sign() == num_bigint::Sign::Minus;
            let mag = if neg { -c } else { c.clone() };
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            let show_mag = d == 0 || !mag.is_one();
            if show_mag {
                write!(f, "{mag}")?;
            }
            match d {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{d}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// `det(xI − A)`, exact.
pub fn char_poly(a: &IntMatrix) -> IntegerPolynomial {
    IntegerPolynomial {
        coeffs: char_poly_multimodular(a),
    }
}

/// `trace(A^k)` for `k = 0..=len`, computed from the vertex actions.
pub fn walk_counts(graph: &SchreierGraph, len: usize) -> Vec<BigInt> {
    let m = graph.vertices();
    let mut counts = vec![BigInt::zero(); len + 1];
    counts[0] = BigInt::from(m);
    if len == 0 {
        return counts;
    }
    // one column of A^k at a time: v_{k+1}(y) = Σ_s v_k(s⁻¹ y)
    let inverses: Vec<Permutation> = graph.actions.iter().map(Permutation::inverse).collect();
    for start in 0..m {
        let mut v = vec![0u128; m];
        v[start] = 1;
        for count in counts.iter_mut().skip(1) {
            let mut next = vec![0u128; m];
            for (y, slot) in next.iter_mut().enumerate() {
                for inv in &inverses {
                    *slot += v[inv.apply(y)];
                }
            }
            v = next;
            *count += v[start];
        }
    }
    counts
}

/// Newton's identities between power sums `p_k = trace(A^k)` and the
/// characteristic polynomial, for `k = 1..p.len()-1`.
pub fn newton_consistent(poly: &IntegerPolynomial, p: &[BigInt]) -> bool {
    let n = poly.degree();
    // a[j] = coefficient of x^(n-j); a[0] = 1
    let a: Vec<&BigInt> = (0..=n).map(|j| &poly.coeffs[n - j]).collect();
    (1..p.len()).all(|k| {
        let mut s = p[k].clone();
        for j in 1..k.min(n + 1) {
            s += a[j] * &p[k - j];
        }
        if k <= n {
            s += a[k] * BigInt::from(k);
        }
        s.is_zero()
    })
}

#[derive(Clone, Debug)]
#[derive(Default)]
pub struct SunadaOptions {
    /// Walk lengths reported; `None` means `min(m, 12)`.
    pub walk_length: Option<usize>,
    /// Use `S ∪ S⁻¹` instead of `S`.
    pub symmetric: bool,
}


#[derive(Clone, Debug, Serialize)]
pub struct IsospectralReport {
    /// Characteristic polynomials are identical.
    pub equal: bool,
    pub char_polys: [IntegerPolynomial; 2],
    #[serde(serialize_with = "walks")]
    pub walk_counts: [Vec<BigInt>; 2],
    pub walk_counts_equal: bool,
    /// Both trace lists agree with their polynomials via Newton's identities.
    pub newton_consistent: bool,
}

fn walks<S: serde::Serializer>(w: &[Vec<BigInt>; 2], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeTuple;
    struct List<'a>(&'a [BigInt]);
    impl serde::Serialize for List<'_> {
        fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
            crate::json::big_vec(self.0, s)
        }
    }
    let mut t = s.serialize_tuple(2)?;
    t.serialize_element(&List(&w[0]))?;
    t.serialize_element(&List(&w[1]))?;
    t.end()
}

/// Compares the Schreier graphs of `G/P₁` and `G/P₂` for the multiset `s`.
pub fn check_isospectral(pair: &SubgroupPair, s: &[Permutation], opts: &SunadaOptions) -> Result<IsospectralReport> {
    let s = if opts.symmetric {
        symmetric_closure(s)
    } else {
        s.to_vec()
    };
    let g1 = schreier_graph(&pair.group, &pair.t1, &s)?;
    let g2 = schreier_graph(&pair.group, &pair.t2, &s)?;
    let len = opts
        .walk_length
        .unwrap_or_else(|| g1.vertices().max(g2.vertices()).min(DEFAULT_WALK_LENGTH));
    let p1 = char_poly(&g1.adjacency);
    let p2 = char_poly(&g2.adjacency);
    let w1 = walk_counts(&g1, len);
    let w2 = walk_counts(&g2, len);
    Ok(IsospectralReport {
        equal: p1 == p2,
        newton_consistent: newton_consistent(&p1, &w1) && newton_consistent(&p2, &w2),
        walk_counts_equal: w1 == w2,
        char_polys: [p1, p2],
        walk_counts: [w1, w2],
    })
}

/// `k` uniformly random elements of `g` that together generate it.
pub fn random_generating_multiset(g: &FiniteGroup, k: usize, rng: &mut ChaCha8Rng) -> Vec<Permutation> {
    loop {
        let s: Vec<Permutation> = (0..k)
            .map(|_| g.element(rng.random_range(0..g.order())).clone())
            .collect();
        if g.order() == 1 || g.is_generated_by(&s) {
            return s;
        }
    }
}

/// Seeded search for a multiset of size `k` whose graphs have different
/// spectra. `None` after `attempts` tries says nothing about existence.
pub fn find_distinguishing_multiset(
    pair: &SubgroupPair,
    k: usize,
    attempts: usize,
    seed: u64,
) -> Result<Option<Vec<Permutation>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..attempts {
        let s = random_generating_multiset(&pair.group, k, &mut rng);
        if !check_isospectral(pair, &s, &SunadaOptions::default())?.equal {
            return Ok(Some(s));
        }
    }
    Ok(None)
}

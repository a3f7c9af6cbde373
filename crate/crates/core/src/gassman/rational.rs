use super::{hom_basis, SubgroupPair};
use crate::error::{Error, Result};
use crate::linalg::{det_mod_p, large_primes, IntMatrix};
use crate::permgroup::Permutation;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// An equivariant integer matrix with nonzero determinant, i.e. a
/// `Q[G]`-isomorphism `Q[G/P₁] → Q[G/P₂]`.
#[derive(Clone, Debug)]
pub struct RationalIso {
    pub matrix: IntMatrix,
    /// Coefficients over the double-coset basis.
    pub coeffs: Vec<i64>,
    /// A prime modulo which the determinant is nonzero.
    pub witness_prime: u64,
}

const RANDOM_ATTEMPTS: usize = 64;
const SWEEP_LIMIT: usize = 100_000;

/// The equivariant map `xP₁ ↦ x w P₂` for a witness `w⁻¹P₁w = P₂`.
pub fn conjugation_matrix(pair: &SubgroupPair, w: &Permutation) -> IntMatrix {
    let m = pair.t1.index();
    let mut u = IntMatrix::zeros(pair.t2.index(), m);
    for (x, r) in pair.t1.representatives().iter().enumerate() {
        let y = pair.t2.coset_of(&(r * w)).expect("conjugation maps cosets to cosets");
        u[(y, x)] = 1;
    }
    u
}

/// Searches the double-coset span for a matrix whose determinant is
/// nonzero modulo a large prime (which proves it is nonzero).
///
/// Random vectors with entries in `[-3, 3]` are tried first, then a
/// deterministic sweep of `{-1,0,1}` vectors. Failure is reported as
/// [`Error::NotEquivalent`].
pub fn find_rational_iso(pair: &SubgroupPair, seed: u64) -> Result<RationalIso> {
    if !pair.same_index() || pair.p1.order() != pair.p2.order() {
        return Err(Error::NotEquivalent);
    }
    let prime = large_primes(1)[0];
    let basis = hom_basis(pair);
    if pair.p1 == pair.p2 {
        let matrix = IntMatrix::identity(pair.t1.index());
        let coeffs = basis.decompose(&matrix).expect("identity is equivariant");
        return Ok(RationalIso {
            matrix,
            coeffs,
            witness_prime: prime,
        });
    }
    if let Some(w) = pair.conjugating_element() {
        let matrix = conjugation_matrix(pair, &w);
        let coeffs = basis.decompose(&matrix).expect("conjugation map is equivariant");
        return Ok(RationalIso {
            matrix,
            coeffs,
            witness_prime: prime,
        });
    }
    let k = basis.len();
    let accept = |coeffs: Vec<i64>| -> Option<RationalIso> {
        let matrix = basis.combination(&coeffs);
        (det_mod_p(&matrix, prime) != 0).then_some(RationalIso {
            matrix,
            coeffs,
            witness_prime: prime,
        })
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_ATTEMPTS {
        let coeffs: Vec<i64> = (0..k).map(|_| rng.random_range(-3..=3)).collect();
        if let Some(iso) = accept(coeffs) {
            return Ok(iso);
        }
    }
    let total = 3usize.saturating_pow(k as u32).min(SWEEP_LIMIT);
    for t in 0..total {
        let mut rest = t;
        let coeffs: Vec<i64> = (0..k)
            .map(|_| {
                let d = (rest % 3) as i64 - 1;
                rest /= 3;
                d
            })
            .collect();
        if let Some(iso) = accept(coeffs) {
            return Ok(iso);
        }
    }
    Err(Error::NotEquivalent)
}

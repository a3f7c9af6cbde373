//! Unimodular equivariant matrices witnessing `Z[G/P₁] ≅ Z[G/P₂]`.

use super::hom::{equivariance_defect, hom_basis, HomLatticeBasis};
use super::rational::conjugation_matrix;
use super::SubgroupPair;
use crate::error::{Error, Result};
use crate::linalg::{det_bareiss, det_mod_p, IntMatrix};
use crate::permgroup::{double_cosets, Permutation};
use num_bigint::BigInt;
use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

/// How a certificate was obtained.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum CertificateOrigin {
    Identity,
    Conjugacy,
    BoxSearch { bound: i64 },
    RandomSearch { sample: u64 },
    Kronecker,
    Transported,
    Loaded,
}

#[derive(Clone, Debug)]
pub struct EquivalenceCertificate {
    pub matrix: IntMatrix,
    /// Coefficients over the double-coset basis, when known.
    pub coeffs: Vec<i64>,
    /// Exact determinant, `+1` or `-1`.
    pub det: i64,
    pub origin: CertificateOrigin,
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    /// Largest coefficient magnitude of the exhaustive box stage.
    pub box_bound: i64,
    /// The box stage runs only for bases of at most this length.
    pub max_box_basis: usize,
    pub samples: u64,
    pub seed: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            box_bound: 3,
            max_box_basis: 8,
            samples: 1_000_000,
            seed: 0,
        }
    }
}

/// Outcome of [`verify_certificate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verification {
    pub valid: bool,
    /// Exact determinant, computed once equivariance holds.
    #[serde(serialize_with = "crate::json::opt_big")]
    pub det: Option<BigInt>,
    /// The first failed check.
    pub failure: Option<String>,
}

/// Checks `U ρ₁(s) = ρ₂(s) U` for every generator, then `det U = ±1`
/// exactly. Equivariance goes first because it is cheap and is what
/// almost every corrupted matrix fails.
pub fn verify_with_actions(
    u: &IntMatrix,
    actions1: &[Permutation],
    actions2: &[Permutation],
) -> Result<Verification> {
    let m1 = actions1.first().map_or(0, Permutation::degree);
    let m2 = actions2.first().map_or(0, Permutation::degree);
    if actions1.len() != actions2.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} generator actions against {}",
            actions1.len(),
            actions2.len()
        )));
    }
    if u.rows() != m2 || u.cols() != m1 || m1 != m2 {
        return Err(Error::DimensionMismatch(format!(
            "matrix is {}x{} but the coset spaces have sizes {m2} and {m1}",
            u.rows(),
            u.cols()
        )));
    }
    if let Some((k, y, x)) = equivariance_defect(u, actions1, actions2) {
        return Ok(Verification {
            valid: false,
            det: None,
            failure: Some(format!(
                "equivariance fails for generator {k} at entry ({y}, {x})"
            )),
        });
    }
    let det = det_bareiss(u);
    let unimodular = det.abs().is_one();
    Ok(Verification {
        valid: unimodular,
        failure: (!unimodular).then(|| format!("determinant is {det}, not ±1")),
        det: Some(det),
    })
}

pub fn verify_certificate(pair: &SubgroupPair, u: &IntMatrix) -> Result<Verification> {
    if pair.t1.generators() != pair.t2.generators() {
        return Err(Error::ActionMismatch("coset tables use different generators".into()));
    }
    verify_with_actions(u, pair.t1.actions(), pair.t2.actions())
}

/// Data for the fast unimodularity test.
///
/// `U` is unimodular iff `UᵀU` is a unit of the Hecke order
/// `A = End_G(Z[G/P₁])`, iff its left-regular matrix on `A` (size = number
/// of `P₁\G/P₁` double cosets) has determinant `±1`. This replaces an
/// `m × m` determinant by a `k₁ × k₁` one.
struct HeckeTest {
    k: usize,
    k1: usize,
    /// `(B_iᵀ B_j)` in the basis of `A`: `gram[(i*k + j)*k1 + l]`.
    gram: Vec<i64>,
    /// Structure constants `D_a D_b = Σ_l s[(a*k1 + b)*k1 + l] D_l`.
    structure: Vec<i64>,
    column_sums: Vec<i64>,
}

impl HeckeTest {
    fn new(pair: &SubgroupPair, basis: &HomLatticeBasis) -> HeckeTest {
        let g = &pair.group;
        let m = pair.t1.index();
        let dc = double_cosets(g, &pair.p1, &pair.p1);
        let k1 = dc.sizes.len();
        let reps = pair.t1.representatives();
        let inv: Vec<Permutation> = reps.iter().map(Permutation::inverse).collect();
        // label of (y, x) in X1 × X1
        let label = |y: usize, x: usize| -> usize {
            dc.coset_of[g.index_of(&(&inv[y] * &reps[x])).expect("group element")] as usize
        };
        let mut hecke = vec![0u32; m * m];
        for y in 0..m {
            for x in 0..m {
                hecke[y * m + x] = label(y, x) as u32;
            }
        }
        // one position (y_l, 0) per orbit l
        let mut anchor = vec![usize::MAX; k1];
        for y in 0..m {
            let l = hecke[y * m] as usize;
            if anchor[l] == usize::MAX {
                anchor[l] = y;
            }
        }
        let d = |l: usize, y: usize, x: usize| (hecke[y * m + x] as usize == l) as i64;
        let mut structure = vec![0i64; k1 * k1 * k1];
        for a in 0..k1 {
            for b in 0..k1 {
                for (l, &y) in anchor.iter().enumerate() {
                    structure[(a * k1 + b) * k1 + l] = (0..m).map(|z| d(a, y, z) * d(b, z, 0)).sum();
                }
            }
        }
        let k = basis.len();
        let mut gram = vec![0i64; k * k * k1];
        for (l, &y) in anchor.iter().enumerate() {
            for z in 0..m {
                let i = basis.label(z, y);
                let j = basis.label(z, 0);
                gram[(i * k + j) * k1 + l] += 1;
            }
        }
        HeckeTest {
            k,
            k1,
            gram,
            structure,
            column_sums: basis.column_sums(),
        }
    }

    /// Column sum of `Σ c_i B_i`; a unimodular equivariant matrix has ±1.
    fn column_sum(&self, c: &[i64]) -> i64 {
        c.iter().zip(&self.column_sums).map(|(a, b)| a * b).sum()
    }

    fn regular_matrix(&self, c: &[i64]) -> IntMatrix {
        let (k, k1) = (self.k, self.k1);
        let mut h = vec![0i64; k1];
        for i in 0..k {
            if c[i] == 0 {
                continue;
            }
            for j in 0..k {
                if c[j] == 0 {
                    continue;
                }
                let w = c[i] * c[j];
                let base = (i * k + j) * k1;
                for (l, hl) in h.iter_mut().enumerate() {
                    *hl += w * self.gram[base + l];
                }
            }
        }
        let mut lm = IntMatrix::zeros(k1, k1);
        for (a, &ha) in h.iter().enumerate() {
            if ha == 0 {
                continue;
            }
            for b in 0..k1 {
                let base = (a * k1 + b) * k1;
                for l in 0..k1 {
                    lm[(l, b)] += ha * self.structure[base + l];
                }
            }
        }
        lm
    }

    fn is_unimodular(&self, c: &[i64]) -> bool {
        if self.column_sum(c).abs() != 1 {
            return false;
        }
        let lm = self.regular_matrix(c);
        const P: u64 = 1_000_000_007;
        let r = det_mod_p(&lm, P);
        if r != 1 && r != P - 1 {
            return false;
        }
        det_bareiss(&lm).abs().is_one()
    }
}

/// Coefficient vector number `t` of the shell `max |c_i| = b`, in
/// lexicographic order of `(c_0, …, c_{k-1})`, or `None` off the shell.
fn box_vector(t: u64, k: usize, b: i64) -> Option<Vec<i64>> {
    let width = (2 * b + 1) as u64;
    let mut digits = vec![0i64; k];
    let mut rest = t;
    for i in (0..k).rev() {
        digits[i] = (rest % width) as i64 - b;
        rest /= width;
    }
    digits.iter().any(|c| c.abs() == b).then_some(digits)
}

fn certificate_from_coeffs(
    pair: &SubgroupPair,
    basis: &HomLatticeBasis,
    mut coeffs: Vec<i64>,
    origin: CertificateOrigin,
) -> Result<EquivalenceCertificate> {
    let mut matrix = basis.combination(&coeffs);
    if matrix.row_sums()[0] < 0 {
        coeffs.iter_mut().for_each(|c| *c = -*c);
        matrix = matrix.scale(-1);
    }
    finish(pair, matrix, coeffs, origin)
}

fn finish(
    pair: &SubgroupPair,
    matrix: IntMatrix,
    coeffs: Vec<i64>,
    origin: CertificateOrigin,
) -> Result<EquivalenceCertificate> {
    let v = verify_certificate(pair, &matrix)?;
    if !v.valid {
        return Err(Error::CertificateInvalid(v.failure.unwrap_or_default()));
    }
    let det = if v.det.expect("valid certificates carry a determinant").is_one() { 1 } else { -1 };
    Ok(EquivalenceCertificate {
        matrix,
        coeffs,
        det,
        origin,
    })
}

/// Searches for an integral certificate: conjugacy shortcut, then the
/// coefficient box `|c_i| ≤ 1, 2, …, box_bound`, then random sparse
/// vectors. The first hit in the canonical order is returned whatever the
/// thread count. Certificates are normalised to row sums `+1`.
pub fn find_unimodular_certificate(pair: &SubgroupPair, cfg: &SearchConfig) -> Result<EquivalenceCertificate> {
    if !pair.is_q_equivalent() {
        return Err(Error::NotEquivalent);
    }
    let basis = hom_basis(pair);
    if pair.p1 == pair.p2 {
        let matrix = IntMatrix::identity(pair.t1.index());
        let coeffs = basis.decompose(&matrix).expect("identity is equivariant");
        return finish(pair, matrix, coeffs, CertificateOrigin::Identity);
    }
    if let Some(w) = pair.conjugating_element() {
        let matrix = conjugation_matrix(pair, &w);
        let coeffs = basis.decompose(&matrix).expect("conjugation map is equivariant");
        return finish(pair, matrix, coeffs, CertificateOrigin::Conjugacy);
    }
    search_span(pair, &basis, cfg)
}

/// Stages two and three of the search, without the conjugacy shortcut.
pub fn search_span(
    pair: &SubgroupPair,
    basis: &HomLatticeBasis,
    cfg: &SearchConfig,
) -> Result<EquivalenceCertificate> {
    let test = HeckeTest::new(pair, basis);
    let k = basis.len();
    let mut explored_bound = 0;
    if k <= cfg.max_box_basis {
        for b in 1..=cfg.box_bound {
            let total = ((2 * b + 1) as u64).pow(k as u32);
            let hit = (0..total)
                .into_par_iter()
                .filter_map(|t| box_vector(t, k, b))
                .find_first(|c| test.is_unimodular(c));
            explored_bound = b;
            if let Some(c) = hit {
                return certificate_from_coeffs(pair, basis, c, CertificateOrigin::BoxSearch { bound: b });
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    const CHUNK: u64 = 1 << 14;
    let mut done = 0u64;
    while done < cfg.samples {
        let n = CHUNK.min(cfg.samples - done);
        let batch: Vec<Vec<i64>> = (0..n).map(|_| sparse_vector(&mut rng, k)).collect();
        let hit = batch
            .par_iter()
            .enumerate()
            .find_first(|(_, c)| test.is_unimodular(c));
        if let Some((i, c)) = hit {
            let sample = done + i as u64;
            return certificate_from_coeffs(pair, basis, c.clone(), CertificateOrigin::RandomSearch { sample });
        }
        done += n;
    }
    Err(Error::NotFoundWithinBudget {
        box_bound: explored_bound,
        samples: cfg.samples,
    })
}

/// A vector with 1 to 4 nonzero entries of magnitude at most 3.
fn sparse_vector(rng: &mut ChaCha8Rng, k: usize) -> Vec<i64> {
    let mut c = vec![0i64; k];
    let support = rng.random_range(1..=k.min(4));
    for _ in 0..support {
        let i = rng.random_range(0..k);
        let mag = rng.random_range(1..=3);
        c[i] = if rng.random_bool(0.5) { mag } else { -mag };
    }
    c
}

/// `U ⊗ U'`, a certificate for the product pair acting on
/// `G/P₁ × G'/P₁'` with the first factor as the major index.
pub fn kronecker_certificate(a: &EquivalenceCertificate, b: &EquivalenceCertificate) -> EquivalenceCertificate {
    let (m, m2) = (a.matrix.rows() as u32, b.matrix.rows() as u32);
    // det(A ⊗ B) = det(A)^{m'} det(B)^{m}
    let det = a.det.pow(m2) * b.det.pow(m);
    EquivalenceCertificate {
        matrix: a.matrix.kron(&b.matrix),
        coeffs: Vec::new(),
        det,
        origin: CertificateOrigin::Kronecker,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::gassman::is_equivariant;

    #[test]
    fn identity_and_whole_group() {
        let g = catalog::s3();
        let pair = SubgroupPair::new(g.clone(), g.whole(), g.whole()).unwrap();
        let c = find_unimodular_certificate(&pair, &SearchConfig::default()).unwrap();
        assert_eq!(c.matrix, IntMatrix::identity(1));
        assert_eq!(c.origin, CertificateOrigin::Identity);
    }

    #[test]
    fn conjugate_pairs_get_permutation_certificates() {
        for pair in [catalog::s3_conjugate_pair(), catalog::a4_conjugate_pair(), catalog::a5_conjugate_pair()] {
            let c = find_unimodular_certificate(&pair, &SearchConfig::default()).unwrap();
            assert_eq!(c.origin, CertificateOrigin::Conjugacy);
            assert!(c.matrix.row_major().iter().all(|&x| x == 0 || x == 1));
            assert!(c.matrix.row_sums().iter().all(|&s| s == 1));
            assert!(verify_certificate(&pair, &c.matrix).unwrap().valid);
        }
    }

    #[test]
    fn twice_identity_is_rejected() {
        let pair = catalog::s3_conjugate_pair();
        let same = SubgroupPair::new(pair.group.clone(), pair.p1.clone(), pair.p1.clone()).unwrap();
        let v = verify_certificate(&same, &IntMatrix::identity(3).scale(2)).unwrap();
        assert!(!v.valid);
        assert_eq!(v.det, Some(BigInt::from(8)));
        assert!(v.failure.unwrap().contains("determinant"));
    }

    #[test]
    fn perturbations_fail() {
        let pair = catalog::s3_conjugate_pair();
        let c = find_unimodular_certificate(&pair, &SearchConfig::default()).unwrap();
        for pos in 0..9 {
            let mut u = c.matrix.clone();
            u[(pos / 3, pos % 3)] += 1;
            assert!(!verify_certificate(&pair, &u).unwrap().valid);
        }
    }

    #[test]
    fn wrong_dimensions_are_an_error() {
        let pair = catalog::s3_conjugate_pair();
        assert!(matches!(
            verify_certificate(&pair, &IntMatrix::identity(2)),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn box_stage_finds_permutation_certificates() {
        for pair in [catalog::s3_conjugate_pair(), catalog::a5_conjugate_pair()] {
            let basis = hom_basis(&pair);
            let c = search_span(&pair, &basis, &SearchConfig::default()).unwrap();
            assert_eq!(c.origin, CertificateOrigin::BoxSearch { bound: 1 });
            assert!(is_equivariant(&c.matrix, pair.t1.actions(), pair.t2.actions()));
            assert_eq!(det_bareiss(&c.matrix).abs(), BigInt::one());
            assert!(c.matrix.row_sums().iter().all(|&s| s == 1));
        }
    }

    #[test]
    fn random_stage_alone_finds_certificates() {
        let pair = catalog::a5_conjugate_pair();
        let basis = hom_basis(&pair);
        let cfg = SearchConfig { box_bound: 0, samples: 10_000, ..SearchConfig::default() };
        let c = search_span(&pair, &basis, &cfg).unwrap();
        assert!(matches!(c.origin, CertificateOrigin::RandomSearch { .. }));
        assert!(verify_certificate(&pair, &c.matrix).unwrap().valid);
    }

    #[test]
    fn fano_pair_is_reported_as_not_found() {
        // the two index-7 classes of PSL(2,7) are only rationally equivalent
        let pair = catalog::psl2_7_pair();
        let cfg = SearchConfig { samples: 2_000, ..SearchConfig::default() };
        let err = find_unimodular_certificate(&pair, &cfg).unwrap_err();
        assert_eq!(err, Error::NotFoundWithinBudget { box_bound: 3, samples: 2_000 });
    }

    #[test]
    fn search_is_deterministic() {
        let pair = catalog::a4_conjugate_pair();
        let basis = hom_basis(&pair);
        let cfg = SearchConfig { box_bound: 2, ..SearchConfig::default() };
        let a = search_span(&pair, &basis, &cfg).unwrap();
        let b = search_span(&pair, &basis, &cfg).unwrap();
        assert_eq!(a.matrix, b.matrix);
        assert_eq!(a.coeffs, b.coeffs);
    }

    #[test]
    fn hecke_criterion_agrees_with_full_determinants() {
        let pair = catalog::psl2_7_pair();
        let basis = hom_basis(&pair);
        let test = HeckeTest::new(&pair, &basis);
        let k = basis.len();
        let total = 3u64.pow(k as u32);
        for t in 0..total {
            let c = box_vector(t, k, 1).unwrap_or_else(|| vec![0; k]);
            let full = det_bareiss(&basis.combination(&c)).abs().is_one();
            assert_eq!(test.is_unimodular(&c), full, "coefficients {c:?}");
        }
    }

    #[test]
    fn box_vectors_cover_each_shell_once() {
        let k = 3;
        let shell2: Vec<Vec<i64>> = (0..125).filter_map(|t| box_vector(t, k, 2)).collect();
        assert_eq!(shell2.len(), 125 - 27);
        assert_eq!(shell2[0], vec![-2, -2, -2]);
    }

    #[test]
    fn kronecker_products_of_certificates_verify() {
        let pair = catalog::s3_conjugate_pair();
        let c = find_unimodular_certificate(&pair, &SearchConfig::default()).unwrap();
        let kc = kronecker_certificate(&c, &c);
        assert_eq!(BigInt::from(kc.det), det_bareiss(&kc.matrix));
    }
}

use super::certificate::{verify_with_actions, CertificateOrigin, EquivalenceCertificate};
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::permgroup::{CosetTable, Permutation};
use std::collections::VecDeque;

/// The unique bijection `π` with `π(0) = 0` and `π ∘ a_s = b_s ∘ π` for
/// all `s`, when the actions `a` are transitive and such a map exists.
pub fn based_bijection(a: &[Permutation], b: &[Permutation], base_b: usize) -> Option<Vec<u32>> {
    let n = a.first()?.degree();
    if a.len() != b.len() || b[0].degree() != n {
        return None;
    }
    let mut map = vec![u32::MAX; n];
    let mut used = vec![false; n];
    map[0] = base_b as u32;
    used[base_b] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        let y = map[x] as usize;
        for (sa, sb) in a.iter().zip(b) {
            let (x2, y2) = (sa.apply(x), sb.apply(y));
            if map[x2] == u32::MAX {
                if used[y2] {
                    return None;
                }
                map[x2] = y2 as u32;
                used[y2] = true;
                queue.push_back(x2);
            } else if map[x2] as usize != y2 {
                return None;
            }
        }
    }
    map.iter().all(|&v| v != u32::MAX).then_some(map)
}

/// Moves a certificate for `(G, P₁, P₂)` to `(Γ, Γ₁, Γ₂)` along `μ: Γ → G`.
///
/// `mu_images[j]` is the image in `G` of the `j`-th generator of `Γ` and
/// `gamma_actions_i[j]` its action on `Γ/Γᵢ`. Each `Γ`-set must be
/// isomorphic to `G/Pᵢ` pulled back through `μ` by a map fixing the base
/// coset; the matrix is relabelled accordingly and then re-verified
/// against the `Γ` actions.
pub fn transport_certificate(
    cert: &EquivalenceCertificate,
    t1: &CosetTable,
    t2: &CosetTable,
    mu_images: &[Permutation],
    gamma_actions1: &[Permutation],
    gamma_actions2: &[Permutation],
) -> Result<EquivalenceCertificate> {
    let pulled = |t: &CosetTable| -> Result<Vec<Permutation>> {
        mu_images.iter().map(|s| t.action_of(s)).collect()
    };
    transport_along_actions(cert, &pulled(t1)?, &pulled(t2)?, gamma_actions1, gamma_actions2)
}

/// [`transport_certificate`] with the pulled-back actions on `G/Pᵢ`
/// already computed: `expected_i[j]` is how the `j`-th generator of `Γ`
/// acts on the cosets the certificate is written in.
pub fn transport_along_actions(
    cert: &EquivalenceCertificate,
    expected1: &[Permutation],
    expected2: &[Permutation],
    gamma_actions1: &[Permutation],
    gamma_actions2: &[Permutation],
) -> Result<EquivalenceCertificate> {
    let pi1 = based_bijection(expected1, gamma_actions1, 0).ok_or_else(|| {
        Error::ActionMismatch("first Γ-set does not factor through G/P₁".into())
    })?;
    let pi2 = based_bijection(expected2, gamma_actions2, 0).ok_or_else(|| {
        Error::ActionMismatch("second Γ-set does not factor through G/P₂".into())
    })?;
    let u = &cert.matrix;
    let mut moved = IntMatrix::zeros(u.rows(), u.cols());
    for y in 0..u.rows() {
        for x in 0..u.cols() {
            moved[(pi2[y] as usize, pi1[x] as usize)] = u[(y, x)];
        }
    }
    let v = verify_with_actions(&moved, gamma_actions1, gamma_actions2)?;
    if !v.valid {
        return Err(Error::CertificateInvalid(v.failure.unwrap_or_default()));
    }
    Ok(EquivalenceCertificate {
        matrix: moved,
        coeffs: cert.coeffs.clone(),
        // relabelling the cosets can flip the sign
        det: if v.det.as_ref().is_some_and(|d| *d < 0.into()) { -1 } else { 1 },
        origin: CertificateOrigin::Transported,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::gassman::{find_unimodular_certificate, SearchConfig};

    #[test]
    fn transport_along_the_identity_is_a_no_op() {
        let pair = catalog::s3_conjugate_pair();
        let c = find_unimodular_certificate(&pair, &SearchConfig::default()).unwrap();
        let gens = pair.group.generators().to_vec();
        let moved =
            transport_certificate(&c, &pair.t1, &pair.t2, &gens, pair.t1.actions(), pair.t2.actions()).unwrap();
        assert_eq!(moved.matrix, c.matrix);
    }

    #[test]
    fn mismatched_actions_are_rejected() {
        let pair = catalog::s3_conjugate_pair();
        let c = find_unimodular_certificate(&pair, &SearchConfig::default()).unwrap();
        let gens = pair.group.generators().to_vec();
        // swap the generator actions on the Γ side
        let swapped: Vec<Permutation> = pair.t1.actions().iter().rev().cloned().collect();
        let err = transport_certificate(&c, &pair.t1, &pair.t2, &gens, &swapped, pair.t2.actions());
        assert!(matches!(err, Err(Error::ActionMismatch(_))));
    }

    #[test]
    fn based_bijection_relabels() {
        let a = vec![Permutation::parse_cycles("(0 1 2)", 3).unwrap()];
        let b = vec![Permutation::parse_cycles("(0 2 1)", 3).unwrap()];
        let pi = based_bijection(&a, &b, 0).unwrap();
        assert_eq!(pi, vec![0, 2, 1]);
        let c = vec![Permutation::parse_cycles("(0 1)", 3).unwrap()];
        assert!(based_bijection(&a, &c, 0).is_none());
    }
}

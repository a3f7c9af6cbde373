//! JSON certificate files.
//!
//! ```json
//! { "group": {"builtin": "psl2-7"},
//!   "subgroup1": ["(0 1)(2 3)", ...], "subgroup2": [...],
//!   "basis_coeffs": [1, 0, -1], "matrix": [row-major entries], "det": 1 }
//! ```
//!
//! `group` may also be `{"file": "path/to/group.txt"}` (relative to the
//! certificate) or `{"degree": n, "generators": [...]}`.
//!
//! Certificates between subgroups of a free group have no finite group to
//! refer to and store the two coset actions instead:
//!
//! ```json
//! { "degree": 25, "actions1": ["(0 1 2)...", ...], "actions2": [...],
//!   "matrix": [...], "det": 1 }
//! ```

use super::{hom_basis, verify_certificate, verify_with_actions, EquivalenceCertificate, SubgroupPair, Verification};
use crate::catalog;
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::permgroup::{io, FiniteGroup, Permutation};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupRef {
    Builtin { builtin: String },
    File { file: String },
    Inline { degree: usize, generators: Vec<String> },
}

impl GroupRef {
    pub fn inline(g: &FiniteGroup) -> GroupRef {
        GroupRef::Inline {
            degree: g.degree(),
            generators: g.generators().iter().map(ToString::to_string).collect(),
        }
    }

    pub fn resolve(&self, base_dir: &Path, budget: usize) -> Result<FiniteGroup> {
        match self {
            GroupRef::Builtin { builtin } => catalog::group_by_name(builtin),
            GroupRef::File { file } => {
                let path: PathBuf = base_dir.join(file);
                io::load_group(&path, budget)
            }
            GroupRef::Inline { degree, generators } => {
                let gens = parse_generators(generators, *degree, "<inline group>")?;
                FiniteGroup::with_budget(*degree, gens, budget)
            }
        }
    }
}

pub fn parse_generators(gens: &[String], degree: usize, context: &str) -> Result<Vec<Permutation>> {
    gens.iter()
        .enumerate()
        .map(|(i, s)| {
            Permutation::parse_cycles(s, degree).map_err(|e| Error::Parse {
                file: context.to_string(),
                line: i + 1,
                message: e.to_string(),
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateFile {
    pub group: GroupRef,
    pub subgroup1: Vec<String>,
    pub subgroup2: Vec<String>,
    pub basis_coeffs: Vec<i64>,
    pub matrix: Vec<i64>,
    pub det: i64,
}

/// Result of re-checking a certificate file from scratch.
#[derive(Clone, Debug, Serialize)]
pub struct FileVerification {
    pub valid: bool,
    pub matrix: Verification,
    /// `Σ basis_coeffs · B = matrix`, when coefficients are given.
    pub coeffs_consistent: Option<bool>,
    /// The stored `det` agrees with the recomputed one.
    pub det_matches: bool,
}

impl CertificateFile {
    pub fn new(group: GroupRef, pair: &SubgroupPair, cert: &EquivalenceCertificate) -> Self {
        let gens = |p: &crate::permgroup::Subgroup| p.generators().iter().map(ToString::to_string).collect();
        CertificateFile {
            group,
            subgroup1: gens(&pair.p1),
            subgroup2: gens(&pair.p2),
            basis_coeffs: cert.coeffs.clone(),
            matrix: cert.matrix.row_major().to_vec(),
            det: cert.det,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(text: &str, file: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            file: file.to_string(),
            line: e.line(),
            message: e.to_string(),
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Self::from_json(&text, &path.display().to_string())
    }

    pub fn matrix(&self) -> Result<IntMatrix> {
        let len = self.matrix.len();
        let m = (len as f64).sqrt().round() as usize;
        if m * m != len || m == 0 {
            return Err(Error::DimensionMismatch(format!(
                "matrix has {len} entries, which is not a positive square"
            )));
        }
        Ok(IntMatrix::from_row_major(m, m, self.matrix.clone()))
    }

    pub fn pair(&self, base_dir: &Path, budget: usize) -> Result<SubgroupPair> {
        let g = self.group.resolve(base_dir, budget)?;
        let d = g.degree();
        let g1 = parse_generators(&self.subgroup1, d, "subgroup1")?;
        let g2 = parse_generators(&self.subgroup2, d, "subgroup2")?;
        SubgroupPair::from_generators(g, g1, g2)
    }

    /// Recomputes everything; the stored determinant is only compared.
    pub fn verify(&self, base_dir: &Path, budget: usize) -> Result<FileVerification> {
        let pair = self.pair(base_dir, budget)?;
        let u = self.matrix()?;
        let matrix = verify_certificate(&pair, &u)?;
        let coeffs_consistent = (!self.basis_coeffs.is_empty()).then(|| {
            let basis = hom_basis(&pair);
            basis.len() == self.basis_coeffs.len() && basis.combination(&self.basis_coeffs) == u
        });
        let det_matches = matrix.det.as_ref().is_some_and(|d| *d == self.det.into());
        Ok(FileVerification {
            valid: matrix.valid && det_matches && coeffs_consistent != Some(false),
            matrix,
            coeffs_consistent,
            det_matches,
        })
    }
}

/// A certificate given directly by two actions of the same generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionCertificateFile {
    pub degree: usize,
    pub actions1: Vec<String>,
    pub actions2: Vec<String>,
    pub matrix: Vec<i64>,
    pub det: i64,
}

impl ActionCertificateFile {
    pub fn new(actions1: &[Permutation], actions2: &[Permutation], cert: &EquivalenceCertificate) -> Self {
        let text = |a: &[Permutation]| a.iter().map(ToString::to_string).collect();
        ActionCertificateFile {
            degree: cert.matrix.rows(),
            actions1: text(actions1),
            actions2: text(actions2),
            matrix: cert.matrix.row_major().to_vec(),
            det: cert.det,
        }
    }

    pub fn verify(&self) -> Result<FileVerification> {
        let n = self.degree;
        if self.matrix.len() != n * n {
            return Err(Error::DimensionMismatch(format!(
                "matrix has {} entries, expected {n}x{n}",
                self.matrix.len()
            )));
        }
        let a1 = parse_generators(&self.actions1, n, "actions1")?;
        let a2 = parse_generators(&self.actions2, n, "actions2")?;
        let u = IntMatrix::from_row_major(n, n, self.matrix.clone());
        let matrix = verify_with_actions(&u, &a1, &a2)?;
        let det_matches = matrix.det.as_ref().is_some_and(|d| *d == self.det.into());
        Ok(FileVerification {
            valid: matrix.valid && det_matches,
            matrix,
            coeffs_consistent: None,
            det_matches,
        })
    }
}

/// Either kind of certificate file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AnyCertificateFile {
    Group(CertificateFile),
    Actions(ActionCertificateFile),
}

impl AnyCertificateFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        let file = path.display().to_string();
        let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| Error::Parse {
            file: file.clone(),
            line: e.line(),
            message: e.to_string(),
        })?;
        // pick the variant by its keys so that errors point at the right format
        if value.get("actions1").is_some() {
            serde_json::from_value(value).map(AnyCertificateFile::Actions)
        } else {
            serde_json::from_value(value).map(AnyCertificateFile::Group)
        }
        .map_err(|e| Error::Parse {
            file,
            line: 0,
            message: e.to_string(),
        })
    }

    /// Re-checks the file; group references resolve relative to `base_dir`.
    pub fn verify(&self, base_dir: &Path, budget: usize) -> Result<FileVerification> {
        match self {
            AnyCertificateFile::Group(f) => f.verify(base_dir, budget),
            AnyCertificateFile::Actions(f) => f.verify(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gassman::{find_unimodular_certificate, SearchConfig};

    #[test]
    fn round_trip_and_reverify() {
        let pair = catalog::a5_conjugate_pair();
        let cert = find_unimodular_certificate(&pair, &SearchConfig::default()).unwrap();
        let file = CertificateFile::new(GroupRef::Builtin { builtin: "a5".into() }, &pair, &cert);
        let back = CertificateFile::from_json(&file.to_json(), "mem").unwrap();
        assert_eq!(back, file);
        let v = back.verify(Path::new("."), 1000).unwrap();
        assert!(v.valid);
        assert_eq!(v.coeffs_consistent, Some(true));
    }

    #[test]
    fn tampered_files_fail() {
        let pair = catalog::s3_conjugate_pair();
        let cert = find_unimodular_certificate(&pair, &SearchConfig::default()).unwrap();
        let mut file = CertificateFile::new(GroupRef::inline(&pair.group), &pair, &cert);
        file.det = -file.det;
        assert!(!file.verify(Path::new("."), 1000).unwrap().valid);
        file.det = -file.det;
        file.matrix[0] += 1;
        let v = file.verify(Path::new("."), 1000).unwrap();
        assert!(!v.valid);
        assert!(v.matrix.failure.unwrap().contains("equivariance"));
        file.matrix.pop();
        assert!(matches!(file.verify(Path::new("."), 1000), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn action_certificates_round_trip() {
        let pair = catalog::s3_conjugate_pair();
        let cert = find_unimodular_certificate(&pair, &SearchConfig::default()).unwrap();
        let f = ActionCertificateFile::new(pair.t1.actions(), pair.t2.actions(), &cert);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.json");
        std::fs::write(&path, serde_json::to_string(&f).unwrap()).unwrap();
        let back = AnyCertificateFile::load(&path).unwrap();
        assert_eq!(back, AnyCertificateFile::Actions(f.clone()));
        assert!(back.verify(dir.path(), 1000).unwrap().valid);
        let mut bad = f;
        bad.matrix[1] += 1;
        assert!(!bad.verify().unwrap().valid);
        std::fs::write(&path, "{\"actions1\": 3}").unwrap();
        assert!(matches!(AnyCertificateFile::load(&path), Err(Error::Parse { .. })));
    }

    #[test]
    fn malformed_json_reports_a_line() {
        let err = CertificateFile::from_json("{\n \"group\": 3,\n}", "c.json").unwrap_err();
        assert!(matches!(err, Error::Parse { line, .. } if line >= 2));
    }
}

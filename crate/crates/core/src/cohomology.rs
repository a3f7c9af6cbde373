//! Low-degree group cohomology with coefficients in finitely generated
//! modules, coinduction, Shapiro's lemma and the restriction/corestriction
//! diagram for a pair of integrally equivalent subgroups.
//!
//! A module is `Z^n / L` with `L` spanned by `d_i e_i` for the nonzero
//! torsion entries `d_i`. Cohomology groups are reported by their invariant
//! factors, torsion in divisibility order followed by zeros, so
//! `[2, 0, 0]` is `Z/2 ⊕ Z²`.

use crate::error::{Error, Result};
use crate::freegroup::{FreeCosetTable, Word};
use crate::gassman::{transport_certificate, verify_certificate, EquivalenceCertificate, SubgroupPair};
use crate::linalg::{kernel_basis, solve_in_basis, subquotient, BigMatrix, IntMatrix, Subquotient};
use crate::permgroup::{CosetTable, FiniteGroup, Permutation, Subgroup};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;
use std::fmt;
use std::path::Path;

/// Largest coboundary matrix (rows × columns) built for finite groups.
pub const DEFAULT_COCHAIN_BUDGET: usize = 2_000_000;

/// A finitely generated abelian group with one automorphism per generator
/// of the acting group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GModule {
    torsion: Vec<i64>,
    action: Vec<IntMatrix>,
    inverse: Vec<IntMatrix>,
}

impl GModule {
    /// `torsion[i] = 0` for a `Z` summand, `d > 1` for `Z/d`.
    pub fn new(torsion: Vec<i64>, action: Vec<IntMatrix>) -> Result<Self> {
        let n = torsion.len();
        if let Some(d) = torsion.iter().find(|&&d| d < 0 || d == 1) {
            return Err(Error::InvalidModule(format!(
                "torsion entry {d} must be 0 or at least 2"
            )));
        }
        let mut m = GModule {
            torsion,
            action: Vec::new(),
            inverse: Vec::new(),
        };
        for (k, a) in action.into_iter().enumerate() {
            if a.rows() != n || a.cols() != n {
                return Err(Error::DimensionMismatch(format!(
                    "action matrix {k} is {}x{}, module rank is {n}",
                    a.rows(),
                    a.cols()
                )));
            }
            if !m.preserves_relations(&a) {
                return Err(Error::InvalidModule(format!(
                    "action matrix {k} does not preserve the torsion relations"
                )));
            }
            let a = m.reduce_matrix(&a);
            let inv = m.invert(&a).ok_or_else(|| {
                Error::InvalidModule(format!("action matrix {k} is not invertible on the module"))
            })?;
            m.action.push(a);
            m.inverse.push(inv);
        }
        Ok(m)
    }

    pub fn trivial(torsion: Vec<i64>, generators: usize) -> Result<Self> {
        let n = torsion.len();
        Self::new(torsion, vec![IntMatrix::identity(n); generators])
    }

    /// `Z` (for `n = 0`) or `Z/n` with trivial action.
    pub fn cyclic(n: i64, generators: usize) -> Result<Self> {
        Self::trivial(vec![n], generators)
    }

    pub fn rank(&self) -> usize {
        self.torsion.len()
    }

    pub fn torsion(&self) -> &[i64] {
        &self.torsion
    }

    pub fn generators(&self) -> usize {
        self.action.len()
    }

    pub fn action(&self) -> &[IntMatrix] {
        &self.action
    }

    pub fn inverse(&self) -> &[IntMatrix] {
        &self.inverse
    }

    /// `A (d_j e_j) ∈ L` for every relation.
    fn preserves_relations(&self, a: &IntMatrix) -> bool {
        self.torsion.iter().enumerate().all(|(j, &dj)| {
            dj == 0
                || (0..self.rank()).all(|i| {
                    let v = a[(i, j)] * dj;
                    match self.torsion[i] {
                        0 => v == 0,
                        di => v % di == 0,
                    }
                })
        })
    }

    pub fn reduce_matrix(&self, a: &IntMatrix) -> IntMatrix {
        let mut out = a.clone();
        for (i, &d) in self.torsion.iter().enumerate() {
            if d > 0 {
                for j in 0..a.cols() {
                    out[(i, j)] = a[(i, j)].rem_euclid(d);
                }
            }
        }
        out
    }

    /// Whether two matrices agree as maps into this module.
    pub fn same_map(&self, a: &IntMatrix, b: &IntMatrix) -> bool {
        self.reduce_matrix(a) == self.reduce_matrix(b)
    }

    fn invert(&self, a: &IntMatrix) -> Option<IntMatrix> {
        let n = self.rank();
        let mut columns: Vec<Vec<BigInt>> = (0..n)
            .map(|j| (0..n).map(|i| BigInt::from(a[(i, j)])).collect())
            .collect();
        for (i, &d) in self.torsion.iter().enumerate() {
            if d > 0 {
                let mut e = vec![BigInt::zero(); n];
                e[i] = BigInt::from(d);
                columns.push(e);
            }
        }
        let mut b = IntMatrix::zeros(n, n);
        for j in 0..n {
            let mut e = vec![BigInt::zero(); n];
            e[j] = BigInt::one();
            let x = solve_in_basis(&columns, n, &e)?;
            for i in 0..n {
                b[(i, j)] = i64::try_from(&x[i]).ok()?;
            }
        }
        let b = self.reduce_matrix(&b);
        let id = IntMatrix::identity(n);
        (self.preserves_relations(&b) && self.same_map(&a.mul(&b), &id) && self.same_map(&b.mul(a), &id))
            .then_some(b)
    }

    /// Action of a word in the free generators.
    pub fn act_word(&self, w: &[i32]) -> IntMatrix {
        let mut m = IntMatrix::identity(self.rank());
        for &l in w {
            let k = l.unsigned_abs() as usize - 1;
            let g = if l > 0 { &self.action[k] } else { &self.inverse[k] };
            m = self.reduce_matrix(&m.mul(g));
        }
        m
    }

    /// The matrix of every element of `g`, indexed like `g.elements()`,
    /// checking along the way that the generator matrices satisfy the
    /// relations of `g`.
    pub fn element_actions(&self, g: &FiniteGroup) -> Result<Vec<IntMatrix>> {
        if self.generators() != g.generators().len() {
            return Err(Error::DimensionMismatch(format!(
                "{} action matrices for {} group generators",
                self.generators(),
                g.generators().len()
            )));
        }
        let gens: Vec<usize> = g
            .generators()
            .iter()
            .map(|s| g.index_of(s).expect("generators are elements"))
            .collect();
        let mut mats: Vec<Option<IntMatrix>> = vec![None; g.order()];
        let e = g.index_of(&g.identity()).expect("identity");
        mats[e] = Some(IntMatrix::identity(self.rank()));
        let mut queue = VecDeque::from([e]);
        while let Some(x) = queue.pop_front() {
            let mx = mats[x].clone().expect("visited");
            for (k, &s) in gens.iter().enumerate() {
                let y = g.mul_index(s, x);
                let my = self.reduce_matrix(&self.action[k].mul(&mx));
                match &mats[y] {
                    None => {
                        mats[y] = Some(my);
                        queue.push_back(y);
                    }
                    Some(old) if self.same_map(old, &my) => {}
                    Some(_) => {
                        return Err(Error::InvalidModule(format!(
                            "the action matrices violate a relation at {}",
                            g.element(y)
                        )))
                    }
                }
            }
        }
        Ok(mats.into_iter().map(|m| m.expect("generators generate")).collect())
    }

    /// The module restricted to the subgroup `Δ` of a free group, acting
    /// through its Reidemeister–Schreier generators.
    pub fn restrict_to_free_subgroup(&self, table: &FreeCosetTable) -> GModule {
        let words: Vec<Word> = table.schreier_generators();
        let action: Vec<IntMatrix> = words.iter().map(|w| self.act_word(w)).collect();
        let inverse = words
            .iter()
            .map(|w| self.act_word(&crate::freegroup::inverse_word(w)))
            .collect();
        GModule {
            torsion: self.torsion.clone(),
            action,
            inverse,
        }
    }

    /// The module restricted to `p ≤ g`, acting through the generators of
    /// `p`; returns `p` as a group in its own right.
    pub fn restrict_to_subgroup(&self, g: &FiniteGroup, p: &Subgroup) -> Result<(FiniteGroup, GModule)> {
        let all = self.element_actions(g)?;
        let h = FiniteGroup::from_generators(p.degree(), p.generators().to_vec())?;
        let action = p
            .generators()
            .iter()
            .map(|s| all[g.index_of(s).expect("subgroup element")].clone())
            .collect();
        Ok((h, GModule::new(self.torsion.clone(), action)?))
    }
}

/// `A ⊗ Z[G/P]`: the coinduced module `CoInd(Res A)`.
///
/// Coordinate `(x, a)` (coset `x`, module coordinate `a`) has index
/// `x·n + a`, and generator `k` acts by `ρ(s_k) ⊗ A(s_k)`.
pub fn coinduce(a: &GModule, table: &CosetTable) -> Result<GModule> {
    if table.actions().len() != a.generators() {
        return Err(Error::DimensionMismatch(format!(
            "{} coset actions for {} module generators",
            table.actions().len(),
            a.generators()
        )));
    }
    let m = table.index();
    let torsion = (0..m).flat_map(|_| a.torsion.iter().copied()).collect();
    let tensor = |mats: &[IntMatrix], inverse: bool| -> Vec<IntMatrix> {
        table
            .actions()
            .iter()
            .zip(mats)
            .map(|(p, x)| {
                let p = if inverse { p.inverse() } else { p.clone() };
                IntMatrix::permutation(p.images()).kron(x)
            })
            .collect()
    };
    // a permutation tensored with an automorphism is invertible, with the
    // obvious inverse
    Ok(GModule {
        torsion,
        action: tensor(&a.action, false),
        inverse: tensor(&a.inverse, true),
    })
}

/// `H^k` of a cochain complex of modules, given by its coboundaries.
#[derive(Clone, Debug, Serialize)]
pub struct CohomologyGroup {
    pub degree: usize,
    #[serde(serialize_with = "crate::json::big_vec")]
    pub divisors: Vec<BigInt>,
    /// One cocycle per entry of `divisors`, generating the group.
    #[serde(skip)]
    pub cocycles: Vec<Vec<BigInt>>,
    #[serde(skip)]
    quotient: Subquotient,
}

impl CohomologyGroup {
    pub fn free_rank(&self) -> usize {
        self.divisors.iter().filter(|d| d.is_zero()).count()
    }

    pub fn is_zero(&self) -> bool {
        self.divisors.is_empty()
    }

    /// Coordinates of a cochain's class, or `None` if it is not a cocycle.
    pub fn class_of(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        self.quotient.coordinates(v)
    }

    /// Whether `v` is a cocycle representing zero.
    pub fn is_coboundary(&self, v: &[BigInt]) -> bool {
        self.quotient.is_zero(v) == Some(true)
    }

    pub fn divisors_i64(&self) -> Vec<i64> {
        self.divisors
            .iter()
            .map(|d| i64::try_from(d).expect("divisor fits in i64"))
            .collect()
    }
}

impl fmt::Display for CohomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.divisors.is_empty() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < self.divisors.len() {
            let d = &self.divisors[i];
            let run = self.divisors[i..].iter().take_while(|x| *x == d).count();
            let base = if d.is_zero() { "Z".to_string() } else { format!("Z/{d}") };
            parts.push(match (run, d.is_zero()) {
                (1, _) => base,
                (r, true) => format!("Z^{r}"),
                (r, false) => format!("({base})^{r}"),
            });
            i += run;
        }
        write!(f, "{}", parts.join(" + "))
    }
}

fn torsion_columns(torsion: &[i64]) -> Vec<Vec<BigInt>> {
    let n = torsion.len();
    torsion
        .iter()
        .enumerate()
        .filter(|(_, &d)| d > 0)
        .map(|(i, &d)| {
            let mut e = vec![BigInt::zero(); n];
            e[i] = BigInt::from(d);
            e
        })
        .collect()
}

/// `ker(d_next mod L_{k+1}) / (im d_prev + L_k)` inside `Z^{N_k}`.
fn cohomology_of(
    degree: usize,
    d_prev: Option<&BigMatrix>,
    d_next: Option<&BigMatrix>,
    tors_k: &[i64],
    tors_next: &[i64],
) -> CohomologyGroup {
    let n = tors_k.len();
    let cycles: Vec<Vec<BigInt>> = match d_next {
        None => (0..n)
            .map(|i| {
                let mut e = vec![BigInt::zero(); n];
                e[i] = BigInt::one();
                e
            })
            .collect(),
        Some(d) => {
            // solve d x + Σ y_i t_i e_i = 0 and keep x
            let extra = torsion_columns(tors_next);
            let a: BigMatrix = d
                .iter()
                .enumerate()
                .map(|(r, row)| {
                    let mut row = row.clone();
                    row.extend(extra.iter().map(|e| e[r].clone()));
                    row
                })
                .collect();
            kernel_basis(&a, n + extra.len())
                .into_iter()
                .map(|mut v| {
                    v.truncate(n);
                    v
                })
                .filter(|v| v.iter().any(|x| !x.is_zero()))
                .collect()
        }
    };
    let mut boundaries = torsion_columns(tors_k);
    if let Some(d) = d_prev {
        let cols = d.first().map_or(0, Vec::len);
        boundaries.extend((0..cols).map(|c| d.iter().map(|row| row[c].clone()).collect::<Vec<_>>()));
    }
    let quotient = subquotient(&cycles, &boundaries, n);
    CohomologyGroup {
        degree,
        divisors: quotient.divisors.clone(),
        cocycles: quotient.generators.clone(),
        quotient,
    }
}

/// `H⁰` and `H¹` of a free group; higher groups vanish.
#[derive(Clone, Debug, Serialize)]
pub struct FreeCohomology {
    pub h0: CohomologyGroup,
    pub h1: CohomologyGroup,
}

impl FreeCohomology {
    pub fn degree(&self, k: usize) -> Option<&CohomologyGroup> {
        match k {
            0 => Some(&self.h0),
            1 => Some(&self.h1),
            _ => None,
        }
    }
}

/// `M → M^r`, `m ↦ ((g_i − 1) m)_i`; block `i` occupies rows `i·n..`.
fn free_coboundary(m: &GModule) -> BigMatrix {
    let n = m.rank();
    let mut rows = Vec::with_capacity(n * m.generators());
    for g in &m.action {
        for i in 0..n {
            rows.push(
                (0..n)
                    .map(|j| BigInt::from(g[(i, j)] - i64::from(i == j)))
                    .collect(),
            );
        }
    }
    rows
}

/// Cohomology of the free group on `m.generators()` letters.
pub fn free_group_cohomology(m: &GModule) -> FreeCohomology {
    FreeCohomology {
        h0: free_group_cohomology_in(m, 0),
        h1: free_group_cohomology_in(m, 1),
    }
}

/// `H^k` of a free group for `k ∈ {0, 1}`.
pub fn free_group_cohomology_in(m: &GModule, k: usize) -> CohomologyGroup {
    let d0 = free_coboundary(m);
    let tors1: Vec<i64> = (0..m.generators()).flat_map(|_| m.torsion.iter().copied()).collect();
    match k {
        0 => cohomology_of(0, None, Some(&d0), &m.torsion, &tors1),
        1 => cohomology_of(1, Some(&d0), None, &tors1, &[]),
        _ => panic!("free groups have cohomological dimension 1"),
    }
}

/// Applies a module map `phi` to a free-group cochain of degree `k`.
fn map_cochain(phi: &IntMatrix, k: usize, r: usize, v: &[BigInt]) -> Vec<BigInt> {
    let blocks = if k == 0 { 1 } else { r };
    let n = phi.cols();
    let mut out = Vec::with_capacity(blocks * phi.rows());
    for b in 0..blocks {
        let x = &v[b * n..(b + 1) * n];
        for i in 0..phi.rows() {
            out.push(phi.row(i).iter().zip(x).map(|(a, y)| y * BigInt::from(*a)).sum());
        }
    }
    out
}

fn sub(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn scale(a: &[BigInt], k: i64) -> Vec<BigInt> {
    a.iter().map(|x| x * k).collect()
}

/// Both sides of Shapiro's lemma for `Δ = μ⁻¹(P) ≤ F_r`.
#[derive(Clone, Debug, Serialize)]
pub struct ShapiroReport {
    pub index: usize,
    pub subgroup_rank: usize,
    /// `H^k(Δ, Res A)` via Reidemeister–Schreier generators.
    pub direct: FreeCohomology,
    /// `H^k(F_r, A ⊗ Z[G/P])`.
    pub coinduced: FreeCohomology,
    pub agree: bool,
}

/// Compares `H^k(Δ, Res A)` with `H^k(F_r, CoInd A)` for `k = 0, 1`, where
/// `Δ` is the preimage of `p` under `x_i ↦ images[i]`.
pub fn shapiro_check(images: &[Permutation], p: &Subgroup, a: &GModule) -> Result<ShapiroReport> {
    let table = CosetTable::from_generators(images, p)?;
    let free = FreeCosetTable::pullback(&table);
    let direct = free_group_cohomology(&a.restrict_to_free_subgroup(&free));
    let coinduced = free_group_cohomology(&coinduce(a, &table)?);
    let agree = direct.h0.divisors == coinduced.h0.divisors && direct.h1.divisors == coinduced.h1.divisors;
    Ok(ShapiroReport {
        index: table.index(),
        subgroup_rank: free.schreier_generators().len(),
        direct,
        coinduced,
        agree,
    })
}

/// Outcome of [`compatible_diagram_check`].
#[derive(Clone, Debug, Serialize)]
pub struct DiagramReport {
    pub degree: usize,
    pub index: usize,
    /// The certificate had row sums −1 and was replaced by its negative.
    pub negated: bool,
    pub base: CohomologyGroup,
    pub first: CohomologyGroup,
    pub second: CohomologyGroup,
    /// `ψ ∘ Res₁ = Res₂`.
    pub res_commutes: bool,
    /// `Cor₂ ∘ ψ = Cor₁`.
    pub cor_commutes: bool,
    /// `Cor_i ∘ Res_i = m` for both subgroups.
    pub cor_res_is_index: bool,
    pub commutes: bool,
}

/// Checks the restriction/corestriction square for `Γ_i = μ⁻¹(P_i)` in
/// `F_r`, with `μ: x_i ↦ images[i]` onto `pair.group`.
///
/// Through Shapiro's lemma `H^k(Γ_i, A) = H^k(F_r, A ⊗ Z[G/P_i])`. There
/// restriction is induced by the unit `a ↦ Σ_x e_x ⊗ a`, corestriction by
/// the counit `e_x ⊗ a ↦ a`, and `ψ` by `U ⊗ 1` for the certificate `U`
/// moved to the coset labels of the `F_r`-action.
pub fn compatible_diagram_check(
    pair: &SubgroupPair,
    images: &[Permutation],
    cert: &EquivalenceCertificate,
    a: &GModule,
    k: usize,
) -> Result<DiagramReport> {
    if k > 1 {
        return Err(Error::InvalidModule(format!(
            "free groups have no cohomology in degree {k}"
        )));
    }
    if images.len() != a.generators() {
        return Err(Error::DimensionMismatch(format!(
            "{} generator images for a module over {} generators",
            images.len(),
            a.generators()
        )));
    }
    if let Some(x) = images.iter().find(|x| x.degree() != pair.group.degree() || !pair.group.contains(x)) {
        return Err(Error::ElementNotInGroup(format!("{x}")));
    }
    if !pair.group.is_generated_by(images) {
        return Err(Error::NotSurjective("the generator images do not generate the group".into()));
    }
    let v = verify_certificate(pair, &cert.matrix)?;
    if !v.valid {
        return Err(Error::CertificateInvalid(v.failure.unwrap_or_default()));
    }
    let t1 = CosetTable::from_generators(images, &pair.p1)?;
    let t2 = CosetTable::from_generators(images, &pair.p2)?;
    let moved = transport_certificate(cert, &pair.t1, &pair.t2, images, t1.actions(), t2.actions())?;
    let mut u = moved.matrix;
    let negated = u.row_sums().first().is_some_and(|&s| s < 0);
    if negated {
        u = u.scale(-1);
    }
    let m = t1.index();
    let n = a.rank();
    let r = images.len();
    let id = IntMatrix::identity(n);
    let psi = u.kron(&id);
    let unit = IntMatrix::from_row_major(m, 1, vec![1; m]).kron(&id);
    let counit = IntMatrix::from_row_major(1, m, vec![1; m]).kron(&id);
    let base = free_group_cohomology_in(a, k);
    let first = free_group_cohomology_in(&coinduce(a, &t1)?, k);
    let second = free_group_cohomology_in(&coinduce(a, &t2)?, k);
    let res_commutes = base.cocycles.iter().all(|z| {
        let lhs = map_cochain(&psi, k, r, &map_cochain(&unit, k, r, z));
        second.is_coboundary(&sub(&lhs, &map_cochain(&unit, k, r, z)))
    });
    let cor_commutes = first.cocycles.iter().all(|w| {
        let lhs = map_cochain(&counit, k, r, &map_cochain(&psi, k, r, w));
        base.is_coboundary(&sub(&lhs, &map_cochain(&counit, k, r, w)))
    });
    let cor_res_is_index = base.cocycles.iter().all(|z| {
        let back = map_cochain(&counit, k, r, &map_cochain(&unit, k, r, z));
        base.is_coboundary(&sub(&back, &scale(z, m as i64)))
    });
    Ok(DiagramReport {
        degree: k,
        index: m,
        negated,
        commutes: res_commutes && cor_commutes && cor_res_is_index && first.divisors == second.divisors,
        base,
        first,
        second,
        res_commutes,
        cor_commutes,
        cor_res_is_index,
    })
}

/// Inhomogeneous bar coboundary `C^j(G, M) → C^{j+1}(G, M)`.
fn bar_coboundary(g: &FiniteGroup, mats: &[IntMatrix], n: usize, j: usize) -> BigMatrix {
    let order = g.order();
    let rows = order.pow(j as u32 + 1);
    let cols = order.pow(j as u32);
    let mut d = vec![vec![BigInt::zero(); cols * n]; rows * n];
    let digits = |mut idx: usize, len: usize| -> Vec<usize> {
        let mut out = vec![0; len];
        for slot in out.iter_mut().rev() {
            *slot = idx % order;
            idx /= order;
        }
        out
    };
    let encode = |t: &[usize]| t.iter().fold(0usize, |acc, &x| acc * order + x);
    for row in 0..rows {
        let t = digits(row, j + 1);
        // g₁ · f(g₂, …)
        let first = encode(&t[1..]);
        for a in 0..n {
            for b in 0..n {
                let x = mats[t[0]][(a, b)];
                if x != 0 {
                    d[row * n + a][first * n + b] += x;
                }
            }
        }
        for i in 0..j {
            let mut merged: Vec<usize> = t[..i].to_vec();
            merged.push(g.mul_index(t[i], t[i + 1]));
            merged.extend(&t[i + 2..]);
            let col = encode(&merged);
            let sign = if (i + 1) % 2 == 0 { 1 } else { -1 };
            for a in 0..n {
                d[row * n + a][col * n + a] += sign;
            }
        }
        let last = encode(&t[..j]);
        let sign = if (j + 1).is_multiple_of(2) { 1 } else { -1 };
        for a in 0..n {
            d[row * n + a][last * n + a] += sign;
        }
    }
    d
}

/// `H^k(G, M)` for `k ≤ 2` from the bar resolution.
///
/// `budget` bounds the size (rows × columns) of the largest coboundary
/// matrix that has to be built.
pub fn finite_group_cohomology(g: &FiniteGroup, m: &GModule, k: usize, budget: usize) -> Result<CohomologyGroup> {
    if k > 2 {
        return Err(Error::budget(budget, format!("the bar resolution stops at degree 2, not {k}")));
    }
    let n = m.rank();
    let order = g.order();
    let size = order.pow(k as u32 + 1) * n * order.pow(k as u32) * n;
    if size > budget {
        return Err(Error::budget(budget, format!("building a coboundary with {size} entries")));
    }
    let mats = m.element_actions(g)?;
    let tors = |j: usize| -> Vec<i64> { (0..order.pow(j as u32)).flat_map(|_| m.torsion.iter().copied()).collect() };
    let d_prev = (k > 0).then(|| bar_coboundary(g, &mats, n, k - 1));
    let d_next = bar_coboundary(g, &mats, n, k);
    Ok(cohomology_of(k, d_prev.as_ref(), Some(&d_next), &tors(k), &tors(k + 1)))
}

/// `M^G` computed from the generators alone.
pub fn fixed_submodule(m: &GModule) -> CohomologyGroup {
    free_group_cohomology(m).h0
}

/// JSON description of a module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleFile {
    pub rank: usize,
    #[serde(default)]
    pub torsion: Vec<i64>,
    /// One `rank × rank` matrix per generator of the acting group.
    pub generators: Vec<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<crate::gassman::format::GroupRef>,
}

impl ModuleFile {
    pub fn from_module(m: &GModule) -> Self {
        ModuleFile {
            rank: m.rank(),
            torsion: m.torsion.clone(),
            generators: m
                .action
                .iter()
                .map(|a| (0..a.rows()).map(|r| a.row(r).to_vec()).collect())
                .collect(),
            group: None,
        }
    }

    pub fn to_module(&self) -> Result<GModule> {
        let torsion = if self.torsion.is_empty() {
            vec![0; self.rank]
        } else {
            self.torsion.clone()
        };
        if torsion.len() != self.rank {
            return Err(Error::DimensionMismatch(format!(
                "{} torsion entries for rank {}",
                torsion.len(),
                self.rank
            )));
        }
        let mut action = Vec::new();
        for (k, rows) in self.generators.iter().enumerate() {
            if rows.len() != self.rank || rows.iter().any(|r| r.len() != self.rank) {
                return Err(Error::DimensionMismatch(format!(
                    "generator matrix {k} is not {0}x{0}",
                    self.rank
                )));
            }
            action.push(IntMatrix::from_rows(rows));
        }
        GModule::new(torsion, action)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        serde_json::from_str(&text).map_err(|e| Error::Parse {
            file: path.display().to_string(),
            line: e.line(),
            message: e.to_string(),
        })
    }
}

/// Exact gcd-based check that `d` divides every entry, used by tests of
/// the divisibility order.
pub fn in_divisibility_order(divisors: &[BigInt]) -> bool {
    let torsion: Vec<&BigInt> = divisors.iter().filter(|d| !d.is_zero()).collect();
    let zeros_last = divisors
        .iter()
        .skip_while(|d| !d.is_zero())
        .all(Zero::is_zero);
    zeros_last
        && torsion.iter().all(|d| d.is_positive() && !d.is_one())
        && torsion.windows(2).all(|w| w[1].is_multiple_of(w[0]))
}

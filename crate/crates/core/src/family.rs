//! Families of pairwise integrally equivalent, pairwise non-conjugate
//! finite-index subgroups of a free group.
//!
//! Surjections `F_r ↠ Q` are enumerated and sorted into `Aut(Q)`-orbits;
//! for simple non-abelian `Q` the product of orbit representatives maps
//! onto `Q^m`. Pulling back the product subgroups `P_z = P_{z₁} × ⋯ × P_{z_m}`
//! for `z ∈ {1,2}^m` gives `2^m` subgroups `Δ_z` of `F_r`, and Kronecker
//! products of a single certificate make them pairwise equivalent.

use crate::error::{Error, Result};
use crate::freegroup::FreeCosetTable;
use crate::gassman::{
    kronecker_certificate, transport_along_actions, verify_certificate, verify_with_actions, CertificateOrigin,
    EquivalenceCertificate, SubgroupPair,
};
use crate::linalg::{inverse_unimodular, IntMatrix};
use crate::permgroup::{are_conjugate, closure, is_simple, FiniteGroup, Permutation};
use rayon::prelude::*;
use serde::Serialize;

pub use crate::freegroup::index_shift_subgroup;

/// Default cap on `|Q|^r` for exhaustive enumeration of tuples.
pub const DEFAULT_ENUMERATION_BUDGET: usize = 10_000_000;

/// Largest group whose automorphisms are searched for.
pub const AUT_SEARCH_LIMIT: usize = 360;

/// Default cap on the number of cosets of each `Δ_z`.
pub const DEFAULT_FAMILY_BUDGET: usize = 5_000;

/// Multiplication table of a small group on element indices.
struct Cayley {
    n: usize,
    mul: Vec<u32>,
    identity: usize,
}

impl Cayley {
    fn new(q: &FiniteGroup, budget: usize) -> Result<Self> {
        let n = q.order();
        if n.checked_mul(n).is_none_or(|s| s > budget) {
            return Err(Error::budget(budget, format!("tabulating a group of order {n}")));
        }
        let mut mul = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                mul[i * n + j] = q.mul_index(i, j) as u32;
            }
        }
        let identity = q.index_of(&q.identity()).expect("identity");
        Ok(Cayley { n, mul, identity })
    }

    fn product(&self, i: usize, j: usize) -> usize {
        self.mul[i * self.n + j] as usize
    }

    fn generated_order(&self, gens: &[u32]) -> usize {
        let mut seen = vec![false; self.n];
        seen[self.identity] = true;
        let mut queue = vec![self.identity];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for &s in gens {
                let y = self.product(s as usize, x);
                if !seen[y] {
                    seen[y] = true;
                    queue.push(y);
                }
            }
        }
        queue.len()
    }

    fn generates(&self, gens: &[u32]) -> bool {
        self.generated_order(gens) == self.n
    }

    fn element_order(&self, x: usize) -> usize {
        let mut y = x;
        let mut k = 1;
        while y != self.identity {
            y = self.product(x, y);
            k += 1;
        }
        k
    }
}

/// Calls `f` on every tuple in `{0..n}^len` with first entry `first`, in
/// lexicographic order.
fn for_each_tuple(n: usize, len: usize, first: usize, mut f: impl FnMut(&[u32])) {
    let mut t = vec![0u32; len];
    t[0] = first as u32;
    loop {
        f(&t);
        let mut k = len;
        loop {
            if k == 1 {
                return;
            }
            k -= 1;
            t[k] += 1;
            if (t[k] as usize) < n {
                break;
            }
            t[k] = 0;
        }
    }
}

fn tuple_budget(n: usize, r: usize, budget: usize) -> Result<()> {
    match n.checked_pow(r as u32) {
        Some(total) if total <= budget => Ok(()),
        _ => Err(Error::budget(budget, format!("enumerating {n}^{r} tuples"))),
    }
}

/// All generating `r`-tuples of element indices, in lexicographic order.
fn generating_tuples(c: &Cayley, r: usize) -> Vec<Vec<u32>> {
    if r == 0 {
        return if c.n == 1 { vec![Vec::new()] } else { Vec::new() };
    }
    let shards: Vec<Vec<Vec<u32>>> = (0..c.n)
        .into_par_iter()
        .map(|a| {
            let mut out = Vec::new();
            for_each_tuple(c.n, r, a, |t| {
                if c.generates(t) {
                    out.push(t.to_vec());
                }
            });
            out
        })
        .collect();
    shards.into_iter().flatten().collect()
}

/// The least number of elements generating `Q`, searched up to three.
fn generating_rank(c: &Cayley) -> Option<usize> {
    if c.n == 1 {
        return Some(0);
    }
    (1..=3).find(|&len| {
        (0..c.n).any(|a| {
            let mut found = false;
            for_each_tuple(c.n, len, a, |t| found = found || c.generates(t));
            found
        })
    })
}

/// A homomorphism `F_r → Q`, given by the images of the free generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreeGroupMap {
    pub rank: usize,
    pub target_order: usize,
    #[serde(serialize_with = "crate::json::perms")]
    pub images: Vec<Permutation>,
    pub surjective: bool,
}

impl FreeGroupMap {
    pub fn new(target: &FiniteGroup, images: Vec<Permutation>) -> Result<Self> {
        if let Some(x) = images.iter().find(|x| x.degree() != target.degree() || !target.contains(x)) {
            return Err(Error::ElementNotInGroup(format!("{x}")));
        }
        Ok(FreeGroupMap {
            rank: images.len(),
            target_order: target.order(),
            surjective: target.is_generated_by(&images),
            images,
        })
    }
}

/// `|Hom_sur(F_r, Q)|` together with the lower bound `|Q|^{r − r_Q}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurjectionCount {
    pub rank: usize,
    pub group_order: usize,
    pub count: u64,
    /// Least size of a generating set of `Q`.
    pub generating_rank: usize,
    /// `|Q|^{r − r_Q}`, when `r ≥ r_Q`.
    pub lower_bound: Option<u64>,
    pub bound_holds: bool,
}

/// Counts generating `r`-tuples of `Q` by enumeration.
pub fn count_surjections(r: usize, q: &FiniteGroup, budget: usize) -> Result<SurjectionCount> {
    let n = q.order();
    tuple_budget(n, r, budget)?;
    let c = Cayley::new(q, budget.max(n * n))?;
    let count = if r == 0 {
        u64::from(n == 1)
    } else {
        (0..n)
            .into_par_iter()
            .map(|a| {
                let mut k = 0u64;
                for_each_tuple(n, r, a, |t| k += u64::from(c.generates(t)));
                k
            })
            .sum()
    };
    let generating_rank = generating_rank(&c)
        .ok_or_else(|| Error::budget(3, "searching for a generating set of at most three elements"))?;
    let lower_bound = (r >= generating_rank).then(|| (n as u64).pow((r - generating_rank) as u32));
    Ok(SurjectionCount {
        rank: r,
        group_order: n,
        count,
        generating_rank,
        bound_holds: lower_bound.is_none_or(|b| count >= b),
        lower_bound,
    })
}

/// Automorphisms of `Q` as maps on element indices, sorted, identity first.
///
/// An automorphism is fixed by the images of the generators; candidates
/// must preserve the orders of the generators and of their pairwise
/// products, and survivors are checked to extend to a bijective homomorphism.
pub fn automorphisms(q: &FiniteGroup) -> Result<Vec<Vec<u32>>> {
    if q.order() > AUT_SEARCH_LIMIT {
        return Err(Error::budget(
            AUT_SEARCH_LIMIT,
            format!("searching automorphisms of a group of order {}", q.order()),
        ));
    }
    let c = Cayley::new(q, AUT_SEARCH_LIMIT * AUT_SEARCH_LIMIT)?;
    let gens: Vec<usize> = q.generators().iter().map(|s| q.index_of(s).expect("generator")).collect();
    let orders: Vec<usize> = (0..c.n).map(|x| c.element_order(x)).collect();
    let mut found = Vec::new();
    let mut images = Vec::with_capacity(gens.len());
    extend_automorphism(&c, &gens, &orders, &mut images, &mut found);
    found.sort();
    Ok(found)
}

fn extend_automorphism(c: &Cayley, gens: &[usize], orders: &[usize], images: &mut Vec<usize>, found: &mut Vec<Vec<u32>>) {
    let k = images.len();
    if k == gens.len() {
        if let Some(theta) = extend_to_homomorphism(c, gens, images) {
            found.push(theta);
        }
        return;
    }
    for x in 0..c.n {
        if orders[x] != orders[gens[k]] {
            continue;
        }
        let compatible = (0..k).all(|i| orders[c.product(images[i], x)] == orders[c.product(gens[i], gens[k])]);
        if compatible {
            images.push(x);
            extend_automorphism(c, gens, orders, images, found);
            images.pop();
        }
    }
}

/// `θ` with `θ(s_k) = images[k]`, if it is a well-defined bijection.
fn extend_to_homomorphism(c: &Cayley, gens: &[usize], images: &[usize]) -> Option<Vec<u32>> {
    let unset = u32::MAX;
    let mut theta = vec![unset; c.n];
    let mut hit = vec![false; c.n];
    theta[c.identity] = c.identity as u32;
    hit[c.identity] = true;
    let mut queue = vec![c.identity];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for (&s, &t) in gens.iter().zip(images) {
            let y = c.product(s, x);
            let v = c.product(t, theta[x] as usize) as u32;
            if theta[y] == unset {
                if hit[v as usize] {
                    return None;
                }
                hit[v as usize] = true;
                theta[y] = v;
                queue.push(y);
            } else if theta[y] != v {
                return None;
            }
        }
    }
    theta.iter().all(|&v| v != unset).then_some(theta)
}

/// `Hom_sur(F_r, Q) / Aut(Q)` with one representative per orbit.
#[derive(Clone, Debug, Serialize)]
pub struct SurjectionCatalog {
    pub rank: usize,
    pub group_order: usize,
    pub aut_order: usize,
    pub count_total: u64,
    /// Number of orbits.
    pub beta: usize,
    /// The lexicographically least surjection of each orbit, in order.
    pub representatives: Vec<FreeGroupMap>,
    pub orbit_sizes: Vec<usize>,
}

impl SurjectionCatalog {
    /// Orbit sizes add up to the number of surjections.
    pub fn consistent(&self) -> bool {
        self.orbit_sizes.iter().map(|&s| s as u64).sum::<u64>() == self.count_total
            && self.orbit_sizes.len() == self.beta
    }
}

pub fn surjections_mod_aut(r: usize, q: &FiniteGroup, budget: usize) -> Result<SurjectionCatalog> {
    let n = q.order();
    tuple_budget(n, r, budget)?;
    let auts = automorphisms(q)?;
    let c = Cayley::new(q, budget.max(n * n))?;
    let tuples = generating_tuples(&c, r);
    let mut seen = vec![false; tuples.len()];
    let mut representatives = Vec::new();
    let mut orbit_sizes = Vec::new();
    for (i, t) in tuples.iter().enumerate() {
        if seen[i] {
            continue;
        }
        // every earlier tuple has been absorbed, so t is least in its orbit
        let mut size = 0;
        for theta in &auts {
            let image: Vec<u32> = t.iter().map(|&x| theta[x as usize]).collect();
            let j = tuples.binary_search(&image).expect("automorphisms preserve generation");
            if !seen[j] {
                seen[j] = true;
                size += 1;
            }
        }
        let images = t.iter().map(|&x| q.element(x as usize).clone()).collect();
        representatives.push(FreeGroupMap {
            rank: r,
            target_order: n,
            images,
            surjective: true,
        });
        orbit_sizes.push(size);
    }
    Ok(SurjectionCatalog {
        rank: r,
        group_order: n,
        aut_order: auts.len(),
        count_total: tuples.len() as u64,
        beta: representatives.len(),
        representatives,
        orbit_sizes,
    })
}

/// How surjectivity of a product map was established.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Surjectivity {
    /// The images generate a group of order `|Q|^m`.
    ClosureVerified { order: u64 },
    /// Too large to enumerate; every pair of factors was checked to map
    /// onto `Q²`, which suffices for simple non-abelian `Q`.
    AssertedByTheorem { pairs_checked: usize },
}

/// `F_r → Q^m`, `x_j ↦ (φ₁(x_j), …, φ_m(x_j))`, acting on `m` disjoint
/// copies of the points of `Q`.
#[derive(Clone, Debug, Serialize)]
pub struct ProductMap {
    pub rank: usize,
    pub factors: usize,
    pub factor_order: usize,
    pub factor_degree: usize,
    pub components: Vec<FreeGroupMap>,
    #[serde(serialize_with = "crate::json::perms")]
    pub images: Vec<Permutation>,
    pub surjectivity: Surjectivity,
}

impl ProductMap {
    /// Fails with `NotSurjective` unless the product is onto `Q^m`.
    pub fn new(q: &FiniteGroup, components: Vec<FreeGroupMap>, budget: usize) -> Result<Self> {
        let m = components.len();
        let Some(rank) = components.first().map(|c| c.rank) else {
            return Err(Error::NotSurjective("a product needs at least one factor".into()));
        };
        if components.iter().any(|c| c.rank != rank) {
            return Err(Error::DimensionMismatch("factors have different ranks".into()));
        }
        for c in &components {
            if let Some(x) = c.images.iter().find(|x| x.degree() != q.degree() || !q.contains(x)) {
                return Err(Error::ElementNotInGroup(format!("{x}")));
            }
        }
        let images: Vec<Permutation> = (0..rank)
            .map(|j| Permutation::direct_sum_all(components.iter().map(|c| &c.images[j])))
            .collect();
        let degree = q.degree() * m;
        let n = q.order();
        let full = n.checked_pow(m as u32);
        let surjectivity = match full {
            Some(full) if full <= budget => {
                let order = closure(degree, &images, full + 1)?.len();
                if order != full {
                    return Err(Error::NotSurjective(format!(
                        "the product map has image of order {order}, not {full}"
                    )));
                }
                Surjectivity::ClosureVerified { order: order as u64 }
            }
            _ => {
                if !is_simple(q) || q.is_abelian() {
                    return Err(Error::budget(budget, format!("verifying a product onto Q^{m}")));
                }
                let mut pairs = 0;
                for i in 0..m {
                    for k in i + 1..m {
                        let pair: Vec<Permutation> = (0..rank)
                            .map(|j| components[i].images[j].direct_sum(&components[k].images[j]))
                            .collect();
                        if closure(2 * q.degree(), &pair, n * n + 1)?.len() != n * n {
                            return Err(Error::NotSurjective(format!("factors {i} and {k} are not independent")));
                        }
                        pairs += 1;
                    }
                }
                if components.iter().any(|c| !q.is_generated_by(&c.images)) {
                    return Err(Error::NotSurjective("a factor is not surjective".into()));
                }
                Surjectivity::AssertedByTheorem { pairs_checked: pairs }
            }
        };
        Ok(ProductMap {
            rank,
            factors: m,
            factor_order: n,
            factor_degree: q.degree(),
            components,
            images,
            surjectivity,
        })
    }

    /// The images of the free generators in factor `i`.
    pub fn component_images(&self, i: usize) -> Vec<Permutation> {
        self.images
            .iter()
            .map(|x| x.restrict_block(i * self.factor_degree, self.factor_degree))
            .collect()
    }
}

/// The product of the first `m` orbit representatives; `Q` must be simple
/// and non-abelian, as Hall's theorem requires.
pub fn hall_product(catalog: &SurjectionCatalog, q: &FiniteGroup, m: usize, budget: usize) -> Result<ProductMap> {
    if q.is_abelian() || !is_simple(q) {
        return Err(Error::NotSimple(format!(
            "the group of order {} is not simple and non-abelian",
            q.order()
        )));
    }
    if m == 0 || m > catalog.beta {
        return Err(Error::DimensionMismatch(format!(
            "asked for {m} factors from {} orbits",
            catalog.beta
        )));
    }
    ProductMap::new(q, catalog.representatives[..m].to_vec(), budget)
}

/// A certificate between two members of the family.
#[derive(Clone, Debug, Serialize)]
pub struct FamilyCertificate {
    pub first: usize,
    pub second: usize,
    #[serde(skip)]
    pub certificate: EquivalenceCertificate,
    pub valid: bool,
    pub det: i64,
}

/// The subgroups `Δ_z = Φ⁻¹(P_z)` and everything verified about them.
#[derive(Clone, Debug, Serialize)]
pub struct PulledBackFamily {
    pub rank: usize,
    pub factors: usize,
    /// `z ∈ {1,2}^m` in lexicographic order.
    pub tuples: Vec<Vec<u8>>,
    pub index: usize,
    pub subgroup_rank: usize,
    #[serde(skip)]
    pub tables: Vec<FreeCosetTable>,
    /// One entry per unordered pair of tuples.
    pub certificates: Vec<FamilyCertificate>,
    /// `P₁` and `P₂` are conjugate in `Q`.
    pub factor_conjugate: bool,
    /// `conjugate[a][b]`: `Δ_a` and `Δ_b` are conjugate in `F_r`.
    pub conjugate: Vec<Vec<bool>>,
    /// `P_a` and `P_b` are conjugate in `Q^m`.
    pub expected_conjugate: Vec<Vec<bool>>,
    pub verdicts_match: bool,
    /// Conjugacy classes among the `Δ_z`.
    pub classes: usize,
    /// Conjugacy classes among the `P_z`.
    pub expected_classes: usize,
}

impl PulledBackFamily {
    pub fn all_certificates_valid(&self) -> bool {
        self.certificates.iter().all(|c| c.valid)
    }
}

fn count_classes(related: &[Vec<bool>]) -> usize {
    let n = related.len();
    let mut class = vec![usize::MAX; n];
    let mut k = 0;
    for a in 0..n {
        if class[a] == usize::MAX {
            for b in a..n {
                if class[b] == usize::MAX && related[a][b] {
                    class[b] = k;
                }
            }
            k += 1;
        }
    }
    k
}

/// Action on `Π Q/P_{z_i}`, first factor most significant.
fn product_action(factors: &[&Permutation], n: usize) -> Permutation {
    let m = factors.len();
    let total = n.pow(m as u32);
    let mut digits = vec![0usize; m];
    let images = (0..total)
        .map(|p| {
            let mut rest = p;
            for d in digits.iter_mut().rev() {
                *d = rest % n;
                rest /= n;
            }
            digits
                .iter()
                .zip(factors)
                .fold(0, |acc, (&d, a)| acc * n + a.apply(d)) as u32
        })
        .collect();
    Permutation::from_images(images).expect("product of bijections")
}

/// Builds `Δ_z` for every `z ∈ {1,2}^m`, a transported Kronecker
/// certificate for every pair, and the conjugacy verdicts.
pub fn build_family(
    product: &ProductMap,
    pair: &SubgroupPair,
    cert: &EquivalenceCertificate,
    budget: usize,
) -> Result<PulledBackFamily> {
    let (m, r) = (product.factors, product.rank);
    if pair.group.order() != product.factor_order || pair.group.degree() != product.factor_degree {
        return Err(Error::ActionMismatch("the product map does not target the pair's group".into()));
    }
    let v = verify_certificate(pair, &cert.matrix)?;
    if !v.valid {
        return Err(Error::CertificateInvalid(v.failure.unwrap_or_default()));
    }
    let n = pair.t1.index();
    let index = match n.checked_pow(m as u32) {
        Some(i) if i <= budget => i,
        _ => return Err(Error::budget(budget, format!("building coset tables of index {n}^{m}"))),
    };
    let inverse = EquivalenceCertificate {
        matrix: inverse_unimodular(&cert.matrix)
            .ok_or_else(|| Error::CertificateInvalid("certificate has no integral inverse".into()))?,
        coeffs: Vec::new(),
        det: cert.det,
        origin: cert.origin.clone(),
    };
    let identity = EquivalenceCertificate {
        matrix: IntMatrix::identity(n),
        coeffs: Vec::new(),
        det: 1,
        origin: CertificateOrigin::Identity,
    };
    // acts[i][z][j]: generator j on Q/P_{z+1} through factor i
    let mut acts: Vec<[Vec<Permutation>; 2]> = Vec::with_capacity(m);
    for i in 0..m {
        let images = product.component_images(i);
        let on = |t: &crate::permgroup::CosetTable| images.iter().map(|x| t.action_of(x)).collect::<Result<Vec<_>>>();
        acts.push([on(&pair.t1)?, on(&pair.t2)?]);
    }
    let tuples: Vec<Vec<u8>> = (0..1usize << m)
        .map(|t| (0..m).map(|i| 1 + ((t >> (m - 1 - i)) & 1) as u8).collect())
        .collect();
    let product_actions: Vec<Vec<Permutation>> = tuples
        .iter()
        .map(|z| {
            (0..r)
                .map(|j| {
                    let parts: Vec<&Permutation> = (0..m).map(|i| &acts[i][z[i] as usize - 1][j]).collect();
                    product_action(&parts, n)
                })
                .collect()
        })
        .collect();
    let tables: Vec<FreeCosetTable> = product_actions
        .iter()
        .map(|a| FreeCosetTable::from_actions(a.clone()).map(|t| t.canonical()))
        .collect::<Result<_>>()?;
    let mut certificates = Vec::new();
    for a in 0..tuples.len() {
        for b in a + 1..tuples.len() {
            let factor = |i: usize| match (tuples[a][i], tuples[b][i]) {
                (x, y) if x == y => &identity,
                (1, _) => cert,
                _ => &inverse,
            };
            let k = (1..m).fold(factor(0).clone(), |acc, i| kronecker_certificate(&acc, factor(i)));
            let moved = transport_along_actions(
                &k,
                &product_actions[a],
                &product_actions[b],
                tables[a].actions(),
                tables[b].actions(),
            )?;
            let check = verify_with_actions(&moved.matrix, tables[a].actions(), tables[b].actions())?;
            certificates.push(FamilyCertificate {
                first: a,
                second: b,
                valid: check.valid,
                det: moved.det,
                certificate: moved,
            });
        }
    }
    let factor_conjugate = are_conjugate(&pair.group, &pair.p1, &pair.p2).is_some();
    let conjugate: Vec<Vec<bool>> = (0..tuples.len())
        .map(|a| (0..tuples.len()).map(|b| a == b || tables[a].is_conjugate_to(&tables[b])).collect())
        .collect();
    let expected_conjugate: Vec<Vec<bool>> = tuples
        .iter()
        .map(|za| {
            tuples
                .iter()
                .map(|zb| za.iter().zip(zb).all(|(x, y)| x == y || factor_conjugate))
                .collect()
        })
        .collect();
    Ok(PulledBackFamily {
        rank: r,
        factors: m,
        index,
        subgroup_rank: 1 + index * (r - 1),
        verdicts_match: conjugate == expected_conjugate,
        classes: count_classes(&conjugate),
        expected_classes: count_classes(&expected_conjugate),
        tuples,
        tables,
        certificates,
        factor_conjugate,
        conjugate,
        expected_conjugate,
    })
}

//! Pairwise equivalent, mostly non-conjugate subgroups of F2 pulled back
//! from A5 x A5.

use zequiv::catalog;
use zequiv::family::{build_family, hall_product, surjections_mod_aut, DEFAULT_ENUMERATION_BUDGET, DEFAULT_FAMILY_BUDGET};
use zequiv::gassman::{find_unimodular_certificate, SearchConfig};

fn main() -> zequiv::Result<()> {
    let q = catalog::a5();
    let cat = surjections_mod_aut(2, &q, DEFAULT_ENUMERATION_BUDGET)?;
    let product = hall_product(&cat, &q, 2, DEFAULT_ENUMERATION_BUDGET)?;
    println!("product map {:?}", product.images.iter().map(ToString::to_string).collect::<Vec<_>>());
    println!("{:?}", product.surjectivity);

    let pair = catalog::a5_conjugate_pair();
    let cert = find_unimodular_certificate(&pair, &SearchConfig::default())?;
    let fam = build_family(&product, &pair, &cert, DEFAULT_FAMILY_BUDGET)?;
    println!("index {}, free rank {}", fam.index, fam.subgroup_rank);
    for c in &fam.certificates {
        println!("{:?} ~ {:?}: valid {}, det {}", fam.tuples[c.first], fam.tuples[c.second], c.valid, c.det);
    }
    println!("conjugacy {:?}", fam.conjugate);
    println!("classes {} (expected {})", fam.classes, fam.expected_classes);
    Ok(())
}

//! Surjections from free groups onto small groups, up to automorphisms.

use zequiv::catalog;
use zequiv::family::{count_surjections, surjections_mod_aut, DEFAULT_ENUMERATION_BUDGET};

fn main() -> zequiv::Result<()> {
    for (name, r) in [("s3", 2), ("s3", 3), ("a4", 2), ("a5", 2)] {
        let q = catalog::group_by_name(name)?;
        let c = count_surjections(r, &q, DEFAULT_ENUMERATION_BUDGET)?;
        let cat = surjections_mod_aut(r, &q, DEFAULT_ENUMERATION_BUDGET)?;
        println!(
            "F{r} -> {name}: {} surjections, |Aut| = {}, beta = {}, lower bound {:?}",
            c.count, cat.aut_order, cat.beta, c.lower_bound
        );
    }
    Ok(())
}

//! Restriction and corestriction through two subgroups of a free group,
//! matched by an equivalence certificate.

use zequiv::catalog;
use zequiv::cohomology::{compatible_diagram_check, GModule};
use zequiv::gassman::{find_unimodular_certificate, SearchConfig};

fn main() -> zequiv::Result<()> {
    for name in ["s3-conj", "a5-conj", "psl2-29"] {
        let pair = catalog::pair_by_name(name)?;
        let cert = find_unimodular_certificate(&pair, &SearchConfig::default())?;
        let images = pair.group.generators().to_vec();
        for (label, n) in [("Z", 0), ("Z/6", 6)] {
            let a = GModule::cyclic(n, images.len())?;
            for k in 0..=1 {
                let d = compatible_diagram_check(&pair, &images, &cert, &a, k)?;
                println!(
                    "{name:8} A = {label:3} k = {k}: H = {}, H(D1) = {}, H(D2) = {}, commutes {}",
                    d.base, d.first, d.second, d.commutes
                );
            }
        }
    }
    Ok(())
}

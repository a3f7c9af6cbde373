//! Two non-conjugate A5 subgroups of PSL(2,29) with isomorphic integral
//! permutation modules.

use std::time::Instant;
use zequiv::catalog;
use zequiv::gassman::{find_unimodular_certificate, verify_certificate, SearchConfig};

fn main() -> zequiv::Result<()> {
    let t = Instant::now();
    let pair = catalog::psl2_29_pair();
    println!("|G| = {}, |P| = {}, index {}", pair.group.order(), pair.p1.order(), pair.t1.index());
    println!("Q-equivalent: {}, conjugate: {}", pair.is_q_equivalent(), pair.conjugating_element().is_some());

    let cert = find_unimodular_certificate(&pair, &SearchConfig::default())?;
    println!("coefficients over the double-coset basis: {:?}", cert.coeffs);
    let v = verify_certificate(&pair, &cert.matrix)?;
    println!("verified: {}, det {:?}", v.valid, v.det.map(|d| d.to_string()));
    println!("{:.1} s", t.elapsed().as_secs_f64());
    Ok(())
}

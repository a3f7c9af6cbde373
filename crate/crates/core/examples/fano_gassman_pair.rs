//! The two classes of S4 in PSL(2,7): points and lines of the Fano plane.

use zequiv::catalog;
use zequiv::gassman::{find_rational_iso, find_unimodular_certificate, SearchConfig};

fn main() -> zequiv::Result<()> {
    let pair = catalog::psl2_7_pair();
    let (c1, c2) = pair.characters();
    println!("|G| = {}, index {}", pair.group.order(), pair.t1.index());
    println!("class sizes  {:?}", c1.class_sizes);
    println!("character 1  {:?}", c1.values);
    println!("character 2  {:?}", c2.values);
    println!("Q-equivalent: {}", pair.is_q_equivalent());
    println!("conjugate:    {}", pair.conjugating_element().is_some());

    let iso = find_rational_iso(&pair, 0)?;
    println!("rational isomorphism {:?}, det nonzero mod {}", iso.coeffs, iso.witness_prime);

    let cfg = SearchConfig { samples: 20_000, ..SearchConfig::default() };
    match find_unimodular_certificate(&pair, &cfg) {
        Ok(c) => println!("unimodular certificate, det {}", c.det),
        Err(e) => println!("{e}"),
    }
    Ok(())
}

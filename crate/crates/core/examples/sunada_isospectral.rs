//! Schreier graphs of a Gassman pair share their characteristic polynomial.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use zequiv::catalog;
use zequiv::sunada::{check_isospectral, random_generating_multiset, schreier_graph, SunadaOptions};

fn main() -> zequiv::Result<()> {
    let pair = catalog::psl2_7_pair();
    let s = pair.group.generators().to_vec();
    let g1 = schreier_graph(&pair.group, &pair.t1, &s)?;
    let g2 = schreier_graph(&pair.group, &pair.t2, &s)?;
    println!("{} and {} vertices, out-degree {}", g1.vertices(), g2.vertices(), g1.out_degree());

    let r = check_isospectral(&pair, &s, &SunadaOptions::default())?;
    println!("char poly {:?}", r.char_polys[0]);
    println!("equal: {}", r.equal);

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let opts = SunadaOptions { walk_length: None, symmetric: true };
    for _ in 0..5 {
        let s = random_generating_multiset(&pair.group, 3, &mut rng);
        let r = check_isospectral(&pair, &s, &opts)?;
        println!("{:<40} equal: {}", s.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "), r.equal);
    }
    Ok(())
}

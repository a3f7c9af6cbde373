//! Both sides of Shapiro's lemma for subgroups of F2 pulled back from S3.

use zequiv::catalog;
use zequiv::cohomology::{shapiro_check, GModule};
use zequiv::linalg::IntMatrix;
use zequiv::permgroup::Permutation;

fn main() -> zequiv::Result<()> {
    let g = catalog::s3();
    let images = g.generators().to_vec();
    let swap = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
    let modules = [
        ("Z", GModule::cyclic(0, 2)?),
        ("Z/4", GModule::cyclic(4, 2)?),
        ("Z^2, x1 swaps", GModule::new(vec![0, 0], vec![swap, IntMatrix::identity(2)])?),
    ];
    for sub in [vec!["(0 1)"], vec!["(0 1 2)"], vec![]] {
        let gens = sub.iter().map(|c| Permutation::parse_cycles(c, 3)).collect::<zequiv::Result<Vec<_>>>()?;
        let p = g.subgroup(gens)?;
        for (name, a) in &modules {
            let s = shapiro_check(&images, &p, a)?;
            println!(
                "P = <{}>, A = {name}: index {}, rank {}, H1 = {} vs {}, agree {}",
                sub.join(", "),
                s.index,
                s.subgroup_rank,
                s.direct.h1,
                s.coinduced.h1,
                s.agree
            );
        }
    }
    Ok(())
}

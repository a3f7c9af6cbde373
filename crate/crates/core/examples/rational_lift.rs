//! A rational isomorphism between the Fano permutation modules, lifted to
//! an invertible element of Q[G] that conjugates one idempotent to the other.

use zequiv::catalog;
use zequiv::gassman::{find_rational_iso, lift_to_group_algebra, GroupAlgebra, DEFAULT_ALGEBRA_BUDGET};

fn main() -> zequiv::Result<()> {
    let pair = catalog::psl2_7_pair();
    let iso = find_rational_iso(&pair, 0)?;
    println!("coefficients {:?}, det nonzero mod {}", iso.coeffs, iso.witness_prime);

    let alg = GroupAlgebra::new(&pair.group, DEFAULT_ALGEBRA_BUDGET)?;
    let lift = lift_to_group_algebra(&alg, &pair, &iso.matrix)?;
    let e1 = alg.idempotent(&pair.p1);
    let e2 = alg.idempotent(&pair.p2);
    let conj = alg.mul(&alg.mul(&lift.f_inverse, &e1), &lift.f);
    println!("solution space dimension {}", lift.solution_dimension);
    println!("f has {} nonzero coefficients", lift.f.support().len());
    println!("f^-1 e1 f = e2: {}", conj == e2);
    println!("restricts to the given map: {}", lift.compatible);
    Ok(())
}

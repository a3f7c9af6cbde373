//! Free generators of a finite-index subgroup of F2.

use zequiv::catalog;
use zequiv::freegroup::{format_word, FreeCosetTable};
use zequiv::permgroup::CosetTable;

fn main() -> zequiv::Result<()> {
    let g = catalog::a4();
    let p = g.subgroup(vec![zequiv::permgroup::Permutation::parse_cycles("(0 1 2)", 4)?])?;
    let table = FreeCosetTable::pullback(&CosetTable::new(&g, &p)?);
    let gens = table.schreier_generators();
    println!("index {}, rank {} = 1 + {}(2 - 1)", table.index(), gens.len(), table.index());
    for w in &gens {
        println!("  {}", format_word(w));
    }
    println!("transversal {:?}", table.schreier_transversal().iter().map(|w| format_word(w)).collect::<Vec<_>>());
    Ok(())
}

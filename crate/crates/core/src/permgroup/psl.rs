use super::{FiniteGroup, Permutation};
use crate::error::{Error, Result};
use crate::linalg::modp::{inv_mod, is_prime};

/// `PSL(2, q)` acting on the projective line, for an odd prime `q ≤ 101`.
///
/// Point `x < q` is the field element `x` and point `q` is `∞`. The
/// generators are `x ↦ x + 1` and `x ↦ −1/x`, in that order.
pub fn psl2(q: u64) -> Result<FiniteGroup> {
    if !(3..=101).contains(&q) || !is_prime(q) {
        return Err(Error::UnsupportedField(q));
    }
    let inf = q as u32;
    let shift: Vec<u32> = (0..q as u32).map(|x| (x + 1) % inf).chain([inf]).collect();
    let invert: Vec<u32> = (0..=q as u32)
        .map(|x| match x {
            0 => inf,
            x if x == inf => 0,
            x => (q - inv_mod(x as u64, q)) as u32,
        })
        .collect();
    FiniteGroup::from_generators(
        q as usize + 1,
        vec![
            Permutation::from_images(shift)?,
            Permutation::from_images(invert)?,
        ],
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_match_the_formula() {
        for q in [3u64, 5, 7, 11, 13] {
            let g = psl2(q).unwrap();
            assert_eq!(g.order() as u64, q * (q * q - 1) / 2, "q = {q}");
        }
    }

    #[test]
    fn unsupported_fields_are_rejected() {
        for q in [2u64, 4, 9, 103, 1] {
            assert_eq!(psl2(q).unwrap_err(), Error::UnsupportedField(q));
        }
    }

    #[test]
    fn generators_have_expected_orders() {
        let g = psl2(29).unwrap();
        assert_eq!(g.generators()[0].order(), 29);
        assert_eq!(g.generators()[1].order(), 2);
        assert_eq!(g.order(), 12180);
    }
}

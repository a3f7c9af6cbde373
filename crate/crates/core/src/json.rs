//! Serde helpers: integers are written as JSON numbers when they fit in
//! `i64` and as decimal strings otherwise.

use crate::permgroup::Permutation;
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::ser::{SerializeSeq, Serializer};

fn write<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    match v.to_i64() {
        Some(x) => s.serialize_i64(x),
        None => s.serialize_str(&v.to_string()),
    }
}

struct Big<'a>(&'a BigInt);

impl serde::Serialize for Big<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        write(self.0, s)
    }
}

pub(crate) fn opt_big<S: Serializer>(v: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(d) => write(d, s),
        None => s.serialize_none(),
    }
}

pub(crate) fn big_vec<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&Big(x))?;
    }
    seq.end()
}

/// Permutations in cycle notation.
pub(crate) fn perms<S: Serializer>(v: &[Permutation], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}

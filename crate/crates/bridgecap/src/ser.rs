//! Serialization helpers: big integers become JSON numbers when they fit
//! in an `i64` and decimal strings otherwise.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

pub(crate) struct BigIntAsJson<'a>(pub &'a BigInt);

impl Serialize for BigIntAsJson<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

pub(crate) struct BigIntsAsJson<'a>(pub &'a [BigInt]);

impl Serialize for BigIntsAsJson<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for n in self.0 {
            seq.serialize_element(&BigIntAsJson(n))?;
        }
        seq.end()
    }
}

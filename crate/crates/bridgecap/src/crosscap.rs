//! Crosscap number, genus, and crossing number of a 2-bridge knot class.
//!
//! Everything is read off the canonical representative's expansions: the
//! crosscap number comes from the all-even expansion's depth (plus one when
//! no entry is `±2`), the genus is half the even expansion's length, and
//! the crossing number is the entry sum of the all-positive expansion.

use num_bigint::BigInt;
use num_traits::Signed;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::contfrac::{even_cf, positive_cf, EvenCF};
use crate::depth::depth_auto;
use crate::farey::KnotClass;
use crate::ser::BigIntAsJson;

/// The invariants of one knot class.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct InvariantRecord {
    pub class: KnotClass,
    pub crosscap: u64,
    pub genus: u64,
    pub crossing_number: BigInt,
    pub depth: u64,
}

impl Serialize for InvariantRecord {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("InvariantRecord", 5)?;
        st.serialize_field("canonical", &self.class.to_string())?;
        st.serialize_field("crossing_number", &BigIntAsJson(&self.crossing_number))?;
        st.serialize_field("crosscap", &self.crosscap)?;
        st.serialize_field("genus", &self.genus)?;
        st.serialize_field("depth", &self.depth)?;
        st.end()
    }
}

fn canonical_even_cf(k: &KnotClass) -> EvenCF {
    even_cf(k.canonical()).expect("a canonical knot class always has an all-even expansion")
}

fn has_two(entries: &[BigInt]) -> bool {
    let two = BigInt::from(2);
    entries.iter().any(|a| a.abs() == two)
}

/// Depth of the class (0 for the unknot).
pub fn depth(k: &KnotClass) -> u64 {
    if k.is_unknot() {
        return 0;
    }
    depth_auto(canonical_even_cf(k).entries()).expect("even expansion entries are even and nonzero")
}

/// Crosscap number: the depth of the all-even expansion if it contains an
/// entry `±2`, otherwise depth + 1. The unknot has crosscap number 0.
pub fn crosscap(k: &KnotClass) -> u64 {
    if k.is_unknot() {
        return 0;
    }
    let cf = canonical_even_cf(k);
    let d = depth_auto(cf.entries()).expect("even expansion entries are even and nonzero");
    if has_two(cf.entries()) {
        d
    } else {
        d + 1
    }
}

/// Genus: half the length of the all-even expansion; 0 for the unknot.
pub fn genus(k: &KnotClass) -> u64 {
    if k.is_unknot() {
        return 0;
    }
    (canonical_even_cf(k).len() / 2) as u64
}

/// Crossing number: the entry sum of the all-positive expansion of the
/// canonical representative; 0 for the unknot.
pub fn crossing_number(k: &KnotClass) -> BigInt {
    if k.is_unknot() {
        return BigInt::from(0);
    }
    positive_cf(k.canonical())
        .expect("canonical representative lies in (0,1)")
        .entries()
        .iter()
        .sum()
}

/// All invariants of a class in one record.
pub fn invariants(k: &KnotClass) -> InvariantRecord {
    InvariantRecord {
        class: k.clone(),
        crosscap: crosscap(k),
        genus: genus(k),
        crossing_number: crossing_number(k),
        depth: depth(k),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::farey::canonicalize;

    #[test]
    fn crosscap_examples() {
        assert_eq!(crosscap(&canonicalize(4, 15).unwrap()), 3);
        assert_eq!(crosscap(&canonicalize(2, 3).unwrap()), 1);
        assert_eq!(crosscap(&KnotClass::unknot()), 0);
        // torus knots (2, 2k+1) correspond to 1/(2k+1) and bound a Möbius band
        for k in 1i64..30 {
            let class = canonicalize(1, 2 * k + 1).unwrap();
            assert_eq!(crosscap(&class), 1, "torus knot k={k}");
        }
    }

    #[test]
    fn sharp_family_member() {
        let n: i64 = 2;
        let k = canonicalize(32 * n.pow(3) + 6 * n, 64 * n.pow(4) + 20 * n * n + 1).unwrap();
        assert_eq!(crosscap(&k), 5);
        let j = canonicalize(2 * n, 4 * n * n + 1).unwrap();
        assert_eq!(crosscap(&j), 3);
    }

    #[test]
    fn genus_examples() {
        assert_eq!(genus(&canonicalize(4, 15).unwrap()), 1);
        assert_eq!(genus(&canonicalize(2, 5).unwrap()), 1);
        for n in 1i64..20 {
            assert_eq!(genus(&canonicalize(2 * n, 4 * n * n + 1).unwrap()), 1);
        }
        assert_eq!(genus(&KnotClass::unknot()), 0);
    }

    #[test]
    fn crossing_number_examples() {
        assert_eq!(crossing_number(&canonicalize(4, 15).unwrap()), 7.into());
        assert_eq!(crossing_number(&canonicalize(2, 3).unwrap()), 3.into());
        assert_eq!(crossing_number(&canonicalize(2, 5).unwrap()), 4.into());
        assert_eq!(crossing_number(&KnotClass::unknot()), 0.into());
    }

    #[test]
    fn crossing_number_is_representative_independent() {
        for q in (3i64..=99).step_by(2) {
            for p in 1..q {
                if num_integer::gcd(p, q) != 1 {
                    continue;
                }
                let class = canonicalize(p, q).unwrap();
                let reference = crossing_number(&class);
                for rep in class.representatives() {
                    let sum: BigInt = positive_cf(&rep).unwrap().entries().iter().sum();
                    assert_eq!(sum, reference, "p={p} q={q} rep={rep}");
                }
            }
        }
    }

    #[test]
    fn crosscap_is_depth_or_depth_plus_one() {
        for q in (3i64..=151).step_by(2) {
            for p in (2..q).step_by(2) {
                if num_integer::gcd(p, q) != 1 {
                    continue;
                }
                let class = canonicalize(p, q).unwrap();
                let g = crosscap(&class);
                let d = depth(&class);
                let has2 = has_two(canonical_even_cf(&class).entries());
                assert_eq!(g, if has2 { d } else { d + 1 });
                assert!(g == d || g == d + 1);
                assert!(g <= 2 * genus(&class) + 1);
            }
        }
    }

    #[test]
    fn record_serializes_with_stable_fields() {
        let rec = invariants(&canonicalize(4, 15).unwrap());
        let json = serde_json::to_string(&rec).unwrap();
        assert_eq!(
            json,
            r#"{"canonical":"4/15","crossing_number":7,"crosscap":3,"genus":1,"depth":2}"#
        );
    }
}

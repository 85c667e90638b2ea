//! Table-driven depth computation for all-even continued fractions.
//!
//! For a vector of even nonzero turning numbers, each entry carries an
//! auxiliary pair `(d, e)`: `d` is the change in depth along the path edge
//! into the entry's vertex, `e` the change along the edge from the vertex's
//! other parent. The pair `(0,0)` never occurs on paths that start at an
//! integer. The depth of the vector is the sum of the `d` components, and
//! the whole sequence is determined by the first entry's magnitude plus a
//! nine-cell transition table — no Farey-graph traversal needed.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Per-entry depth-change pair `(d, e)`; `(0,0)` is unrepresentable.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AuxDatum {
    /// `(0, 1)`
    D0E1,
    /// `(1, 0)`
    D1E0,
    /// `(1, 1)`
    D1E1,
}

impl AuxDatum {
    pub fn d(self) -> u64 {
        match self {
            AuxDatum::D0E1 => 0,
            AuxDatum::D1E0 | AuxDatum::D1E1 => 1,
        }
    }

    pub fn e(self) -> u64 {
        match self {
            AuxDatum::D1E0 => 0,
            AuxDatum::D0E1 | AuxDatum::D1E1 => 1,
        }
    }

    /// Two-digit rendering: `(1,1)` prints as `11`.
    pub fn compact(self) -> &'static str {
        match self {
            AuxDatum::D0E1 => "01",
            AuxDatum::D1E0 => "10",
            AuxDatum::D1E1 => "11",
        }
    }
}

impl fmt::Display for AuxDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.d(), self.e())
    }
}

/// The auxiliary data along a vector, one datum per entry.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AuxTrace {
    data: Vec<AuxDatum>,
}

impl AuxTrace {
    pub fn data(&self) -> &[AuxDatum] {
        &self.data
    }

    /// Depth carried by this trace: the sum of the `d` components.
    pub fn depth(&self) -> u64 {
        self.data.iter().map(|a| a.d()).sum()
    }

    /// Space-separated two-digit rendering, e.g. `11 01 01 10 10 11`.
    pub fn compact(&self) -> String {
        self.data
            .iter()
            .map(|a| a.compact())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for AuxTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.data.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

fn check_even_nonzero(a: &BigInt) -> Result<()> {
    if a.is_zero() || a.is_odd() {
        return Err(Error::BadEvenEntry(a.clone()));
    }
    Ok(())
}

/// Auxiliary datum of the first entry: `(1,1)` if `|a1| = 2`, else `(1,0)`.
pub fn initial_aux(a1: &BigInt) -> Result<AuxDatum> {
    check_even_nonzero(a1)?;
    if a1.abs() == BigInt::from(2) {
        Ok(AuxDatum::D1E1)
    } else {
        Ok(AuxDatum::D1E0)
    }
}

/// One transition: the datum at `a_next` given the datum at `a_i`.
pub fn step_aux(cur: AuxDatum, a_i: &BigInt, a_next: &BigInt) -> Result<AuxDatum> {
    check_even_nonzero(a_i)?;
    check_even_nonzero(a_next)?;
    let small = a_next.abs() == BigInt::from(2);
    Ok(if !small {
        AuxDatum::D1E0
    } else if a_i.is_positive() == a_next.is_positive() {
        match cur {
            AuxDatum::D0E1 => AuxDatum::D1E0,
            AuxDatum::D1E0 | AuxDatum::D1E1 => AuxDatum::D1E1,
        }
    } else {
        match cur {
            AuxDatum::D0E1 | AuxDatum::D1E1 => AuxDatum::D0E1,
            AuxDatum::D1E0 => AuxDatum::D1E1,
        }
    })
}

/// Runs the table over a nonempty all-even vector from the given initial
/// datum.
pub fn aux_trace(entries: &[BigInt], init: AuxDatum) -> Result<AuxTrace> {
    if entries.is_empty() {
        return Err(Error::EmptyVector);
    }
    check_even_nonzero(&entries[0])?;
    let mut data = Vec::with_capacity(entries.len());
    data.push(init);
    for i in 1..entries.len() {
        let next = step_aux(data[i - 1], &entries[i - 1], &entries[i])?;
        data.push(next);
    }
    Ok(AuxTrace { data })
}

/// Depth of an all-even vector via the automaton, with the natural initial
/// datum. The empty vector has depth 0.
pub fn depth_auto(entries: &[BigInt]) -> Result<u64> {
    if entries.is_empty() {
        return Ok(0);
    }
    let trace = aux_trace(entries, initial_aux(&entries[0])?)?;
    Ok(trace.depth())
}

/// Depth computed from an arbitrary initial datum instead of the natural
/// one; used to reason about how a suffix behaves inside a longer vector.
pub fn depth_variant(entries: &[BigInt], init: AuxDatum) -> Result<u64> {
    Ok(aux_trace(entries, init)?.depth())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contfrac::eval_entries;
    use crate::farey::depth_oracle;

    fn ints(entries: &[i64]) -> Vec<BigInt> {
        entries.iter().map(|&a| BigInt::from(a)).collect()
    }

    fn big(a: i64) -> BigInt {
        BigInt::from(a)
    }

    #[test]
    fn initial_aux_examples() {
        assert_eq!(initial_aux(&big(2)).unwrap(), AuxDatum::D1E1);
        assert_eq!(initial_aux(&big(-4)).unwrap(), AuxDatum::D1E0);
        assert_eq!(initial_aux(&big(100)).unwrap(), AuxDatum::D1E0);
        assert!(initial_aux(&big(3)).is_err());
        assert!(initial_aux(&big(0)).is_err());
    }

    #[test]
    fn step_aux_examples() {
        assert_eq!(
            step_aux(AuxDatum::D1E1, &big(2), &big(-2)).unwrap(),
            AuxDatum::D0E1
        );
        assert_eq!(
            step_aux(AuxDatum::D1E0, &big(-4), &big(2)).unwrap(),
            AuxDatum::D1E1
        );
        assert_eq!(
            step_aux(AuxDatum::D0E1, &big(2), &big(6)).unwrap(),
            AuxDatum::D1E0
        );
        assert_eq!(
            step_aux(AuxDatum::D0E1, &big(2), &big(2)).unwrap(),
            AuxDatum::D1E0
        );
        assert_eq!(
            step_aux(AuxDatum::D1E0, &big(2), &big(2)).unwrap(),
            AuxDatum::D1E1
        );
        assert_eq!(
            step_aux(AuxDatum::D1E1, &big(-2), &big(-2)).unwrap(),
            AuxDatum::D1E1
        );
    }

    #[test]
    fn trace_examples() {
        use AuxDatum::*;
        let t = aux_trace(&ints(&[2, -2, 2, 4, -4, 2]), D1E1).unwrap();
        assert_eq!(t.data(), &[D1E1, D0E1, D0E1, D1E0, D1E0, D1E1]);
        assert_eq!(t.depth(), 4);
        assert_eq!(t.compact(), "11 01 01 10 10 11");
        assert_eq!(t.to_string(), "(1,1),(0,1),(0,1),(1,0),(1,0),(1,1)");

        let t = aux_trace(&ints(&[2, 4, -2, 2]), D1E1).unwrap();
        assert_eq!(t.data(), &[D1E1, D1E0, D1E1, D0E1]);
        assert_eq!(t.depth(), 3);

        let t = aux_trace(&ints(&[4]), D1E0).unwrap();
        assert_eq!(t.data(), &[D1E0]);

        assert!(aux_trace(&[], D1E1).is_err());
    }

    #[test]
    fn sharp_witness_trace() {
        use AuxDatum::*;
        // (a, -2, a^{-1}) for a = [2,2,-2,2]: the tail runs from datum
        // (0,1) and contributes one less than its standalone depth.
        let a = ints(&[2, 2, -2, 2]);
        let t = aux_trace(&a, initial_aux(&a[0]).unwrap()).unwrap();
        assert_eq!(t.data(), &[D1E1, D1E1, D0E1, D0E1]);
        assert_eq!(t.depth(), 2);

        let b = ints(&[2, 2, -2, 2, -2, 2, -2, 2, 2]);
        let t = aux_trace(&b, initial_aux(&b[0]).unwrap()).unwrap();
        assert_eq!(
            t.data(),
            &[D1E1, D1E1, D0E1, D0E1, D0E1, D0E1, D0E1, D0E1, D1E0]
        );
        assert_eq!(t.depth(), 3);
    }

    #[test]
    fn depth_auto_examples() {
        assert_eq!(depth_auto(&ints(&[2, -2, 2, 4, -4, 2])).unwrap(), 4);
        assert_eq!(depth_auto(&[]).unwrap(), 0);
        assert_eq!(depth_auto(&ints(&[4, 8, 8, 4])).unwrap(), 4);
        assert!(depth_auto(&ints(&[2, 1, 2])).is_err());
    }

    #[test]
    fn depth_variant_examples() {
        assert_eq!(depth_variant(&ints(&[2, -2]), AuxDatum::D0E1).unwrap(), 0);
        assert_eq!(depth_variant(&ints(&[2, -2]), AuxDatum::D1E1).unwrap(), 1);
        assert_eq!(depth_variant(&ints(&[4, 8]), AuxDatum::D1E0).unwrap(), 2);
    }

    #[test]
    fn automaton_agrees_with_oracle_on_small_vectors() {
        // all even vectors of length <= 4 with entries in {±2, ±4}
        fn go(prefix: &mut Vec<i64>, max_len: usize, checked: &mut u64) {
            if !prefix.is_empty() {
                let entries = ints(prefix);
                let auto = depth_auto(&entries).unwrap();
                let oracle = depth_oracle(&eval_entries(&entries));
                assert_eq!(auto, oracle, "mismatch at {prefix:?}");
                *checked += 1;
            }
            if prefix.len() == max_len {
                return;
            }
            for a in [-4, -2, 2, 4] {
                prefix.push(a);
                go(prefix, max_len, checked);
                prefix.pop();
            }
        }
        let mut checked = 0;
        go(&mut Vec::new(), 4, &mut checked);
        assert_eq!(checked, 4 + 16 + 64 + 256);
    }

    #[test]
    fn all_large_entries_have_depth_equal_to_length() {
        for entries in [vec![4i64, 8, 8, 4], vec![6, -6, 10, -4], vec![-8, 4]] {
            let v = ints(&entries);
            assert_eq!(depth_auto(&v).unwrap(), entries.len() as u64);
        }
    }
}

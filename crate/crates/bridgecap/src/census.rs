//! Enumeration of all 2-bridge knot classes up to a crossing-number bound,
//! and the crosscap-by-crossing-number distribution table.

use std::collections::BTreeMap;
use std::io::{self, Write};

use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::crosscap::{invariants, InvariantRecord};
use crate::error::{Error, Result};
use crate::farey::canonicalize;

/// One census row; identical to the invariant record of the class.
pub type CensusRow = InvariantRecord;

/// Largest denominator a class with crossing number `<= max_cr` can have.
///
/// The crossing number is the entry sum of the all-positive expansion, and
/// among positive expansions with entry sum `s` the denominator is largest
/// for the all-ones continuant, i.e. the Fibonacci number `F(s+1)`.
pub fn denominator_bound(max_cr: u32) -> u64 {
    let (mut a, mut b) = (1u64, 1u64); // F(1), F(2)
    for _ in 0..max_cr.saturating_sub(1) {
        let c = a + b;
        a = b;
        b = c;
    }
    b
}

fn rows_for_denominator(q: u64, max_cr: u32) -> Vec<CensusRow> {
    let mut rows = Vec::new();
    for p in (2..q).step_by(2) {
        if p.gcd(&q) != 1 {
            continue;
        }
        let class = canonicalize(p, q).expect("odd q, coprime p");
        // each class is collected exactly once, at its canonical numerator
        if class.canonical().numer() != &p.into() {
            continue;
        }
        let record = invariants(&class);
        if record.crossing_number <= max_cr.into() {
            rows.push(record);
        }
    }
    rows
}

/// Every 2-bridge knot class with crossing number between 3 and `max_cr`,
/// one row per class, sorted by crossing number and then by canonical
/// fraction. `max_cr` must lie in `3..=24`.
pub fn enumerate(max_cr: u32) -> Result<Vec<CensusRow>> {
    if !(3..=24).contains(&max_cr) {
        return Err(Error::CensusBound(max_cr));
    }
    let bound = denominator_bound(max_cr);
    let mut rows: Vec<CensusRow> = (3..=bound)
        .into_par_iter()
        .filter(|q| q % 2 == 1)
        .flat_map_iter(|q| rows_for_denominator(q, max_cr))
        .collect();
    rows.sort_by(|a, b| {
        (
            &a.crossing_number,
            a.class.canonical().numer(),
            a.class.canonical().denom(),
        )
            .cmp(&(
                &b.crossing_number,
                b.class.canonical().numer(),
                b.class.canonical().denom(),
            ))
    });
    Ok(rows)
}

/// Counts of classes bucketed by (crossing number, crosscap number).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistributionTable {
    counts: BTreeMap<(u32, u64), u64>,
    totals: BTreeMap<u32, u64>,
}

impl DistributionTable {
    pub fn cell(&self, cr: u32, crosscap: u64) -> u64 {
        self.counts.get(&(cr, crosscap)).copied().unwrap_or(0)
    }

    pub fn total(&self, cr: u32) -> u64 {
        self.totals.get(&cr).copied().unwrap_or(0)
    }

    pub fn crossing_numbers(&self) -> impl Iterator<Item = u32> + '_ {
        self.totals.keys().copied()
    }

    /// Nested-object form: `{"counts": {"3": {"1": 1}}, "totals": {"3": 1}}`.
    pub fn to_json(&self) -> Value {
        let mut counts = serde_json::Map::new();
        for (&(cr, gamma), &n) in &self.counts {
            counts
                .entry(cr.to_string())
                .or_insert_with(|| Value::Object(serde_json::Map::new()))
                .as_object_mut()
                .unwrap()
                .insert(gamma.to_string(), json!(n));
        }
        let totals: serde_json::Map<String, Value> = self
            .totals
            .iter()
            .map(|(cr, n)| (cr.to_string(), json!(n)))
            .collect();
        json!({ "counts": counts, "totals": totals })
    }
}

/// Buckets census rows into the distribution table.
pub fn distribution(rows: &[CensusRow]) -> DistributionTable {
    let mut counts = BTreeMap::new();
    let mut totals = BTreeMap::new();
    for row in rows {
        let cr = row
            .crossing_number
            .to_u32()
            .expect("census crossing numbers are small");
        *counts.entry((cr, row.crosscap)).or_insert(0) += 1;
        *totals.entry(cr).or_insert(0) += 1;
    }
    DistributionTable { counts, totals }
}

/// Writes rows as CSV with header `p,q,crossing_number,crosscap,genus,depth`.
pub fn write_csv(rows: &[CensusRow], mut out: impl Write) -> io::Result<()> {
    writeln!(out, "p,q,crossing_number,crosscap,genus,depth")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            r.class.canonical().numer(),
            r.class.canonical().denom(),
            r.crossing_number,
            r.crosscap,
            r.genus,
            r.depth
        )?;
    }
    Ok(())
}

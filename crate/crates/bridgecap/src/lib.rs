//! Exact arithmetic for 2-bridge (rational) knots.
//!
//! A 2-bridge knot is classified by a reduced fraction `p/q` with `q` odd.
//! This crate computes its headline invariants — crosscap number, genus,
//! crossing number, and Farey depth — entirely in exact integer arithmetic,
//! decides and constructs epimorphism-order certificates between 2-bridge
//! knot groups, and enumerates a census of all classes up to a crossing
//! number bound.
//!
//! ```
//! use bridgecap::{canonicalize, crosscap, genus, crossing_number};
//!
//! let k = canonicalize(4, 15).unwrap(); // the knot 7_4
//! assert_eq!(crosscap(&k), 3);
//! assert_eq!(genus(&k), 1);
//! assert_eq!(crossing_number(&k), 7u32.into());
//! ```

pub mod census;
pub mod contfrac;
pub mod crosscap;
pub mod depth;
pub mod epiorder;
mod error;
pub mod farey;
mod ser;

pub use census::{
    denominator_bound, distribution, enumerate, write_csv, CensusRow, DistributionTable,
};
pub use contfrac::{
    collapse_zeros, eval_entries, even_cf, is_shortenable, is_shortenable_entries, positive_cf,
    shortest_cf, shortest_len_bruteforce, CFVector, EvenCF,
};
pub use crosscap::{crosscap, crossing_number, genus, invariants, InvariantRecord};
pub use depth::{aux_trace, depth_auto, depth_variant, initial_aux, step_aux, AuxDatum, AuxTrace};
pub use epiorder::{
    build_parsed, greater_than, make_certificate, parse, parse_collapsed, verify_many, CaseLabel,
    OrderCertificate, Parsing, Sign, VerifySummary,
};
pub use error::{Error, Result};
pub use farey::{canonicalize, depth_oracle, mediant, parents, Fraction, KnotClass};

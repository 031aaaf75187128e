//! Orbit stratification of matrix pencils.
//!
//! Skew-symmetric `n x n` pencils `A - λB` up to congruence are described by
//! [`SkewStructure`]s: multisets of `M_m`, `H_h(μ)` and `K_k` blocks. General
//! `m x n` pencils up to strict equivalence are [`GeneralStructure`]s built
//! from `L_k`, `Lt_k` and `E_k(μ)` blocks. Eigenvalue labels are either
//! anonymous tokens (`H2(a)`) or pinned values (`H2(3/2)`, `K2` for infinity).
//!
//! The crate computes which orbits cover which, in several independent ways
//! that are checked against each other:
//!
//! * [`covers_skew`] and [`covers_general`]: block-transition rules, coin
//!   moves on Weyr characteristics, and unrestricted transitions whose
//!   transitive reduction serves as an oracle;
//! * [`codim`]: exact orbit codimensions from the rank of the tangent map;
//! * [`strata`]: enumeration of every orbit of a size and the full graph,
//!   with JSON and DOT export;
//! * [`verify`]: invariant suites over all orbits of a size.
//!
//! ```
//! use pencil_strata::covers_skew::covered_by_rules;
//! use pencil_strata::SkewStructure;
//!
//! let s: SkewStructure = "H3(a)".parse().unwrap();
//! let below: Vec<String> = covered_by_rules(&s).iter().map(|e| e.target.to_string()).collect();
//! assert_eq!(below, ["H1(a) + H2(a)", "M1*2"]);
//! ```

pub mod cli;
pub mod closure;
pub mod codim;
pub mod covers_general;
pub mod covers_skew;
pub mod edge;
pub mod partitions;
pub mod strata;
pub mod structures;
pub mod verify;

pub use edge::{CoverEdge, DimensionMismatch};
pub use partitions::IntegerPartition;
pub use structures::{
    format_structure, parse_structure, CanonicalStructure, EigenvalueLabel, GeneralStructure, Kind,
    SkewStructure,
};

//! Exact computation of motives of normal toric surfaces, rational projective
//! curves, and (with externally supplied homology) toric threefolds.
//!
//! The pipeline runs entirely over the integers:
//!
//! 1. [`fan`] validates a fan in rank 2 or 3 and extracts its combinatorial
//!    invariants (cone counts, span, completeness, index).
//! 2. [`resolve`] refines a rank-2 fan to a smooth one by Hirzebruch–Jung
//!    subdivision and records the exceptional trees of projective lines.
//! 3. [`cellular`] certifies cellularity of a smooth fan by exhibiting a
//!    one-parameter subgroup that is both limit-complete and regular.
//! 4. [`homology`] evaluates the closed forms for Borel–Moore homology of
//!    toric surfaces and of cellular/exceptional varieties.
//! 5. [`motive`] assembles the (compact-support) motive as a canonical direct
//!    sum of twisted, shifted finitely generated abelian groups.
//!
//! File formats and the command-line front end live in [`io`] and in the
//! `toric-motives-cli` crate.

pub mod cellular;
pub mod fan;
mod geom;
pub mod homology;
pub mod io;
pub mod lattice;
pub mod motive;
pub mod resolve;

pub use fan::{Cone, Fan, FanError, FanProfile};
pub use homology::{FGAbelianGroup, GradedGroups};
pub use lattice::{IntegerMatrix, LatticeVector, SmithForm};
pub use motive::{Motive, MotiveSummand};

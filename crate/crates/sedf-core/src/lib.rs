//! Exact verification, construction and nonexistence classification for
//! strong external difference families (SEDFs) and partial difference sets
//! (PDSs) in finite abelian groups.
//!
//! Everything is integer or cyclotomic-integer arithmetic: character sums are
//! evaluated in `Z[zeta_n]` with arbitrary-precision coefficients, difference
//! counts use dense arrays over a mixed-radix element encoding, and the
//! parameter filters work on exact rationals. No floating point is used on
//! any correctness-critical path.
//!
//! Module map:
//! - [`group`]: finite abelian groups, elements, characters, subgroup tests.
//! - [`cyclotomic`]: `Z[zeta_n]` arithmetic and cyclotomic polynomials.
//! - [`nt`]: multiplicative orders, primitive roots, self-conjugacy, valuations.
//! - [`designs`]: EDF/SEDF/PDS verification, character spectra, exhaustive search.
//! - [`constructions`]: generators, including the projective-orbit construction
//!   of the (243,11,22,20) family.
//! - [`filters`]: parameter enumeration and the nonexistence filter battery.
//! - [`facts`]: the table of known existence/nonexistence facts from the
//!   literature.

pub mod cyclotomic;
pub mod designs;
pub mod error;
pub mod facts;
pub mod filters;
pub mod group;
pub mod nt;

pub mod constructions;

pub use error::{Error, Result};

use std::sync::atomic::{AtomicU64, Ordering};

/// Largest group order for which element-level enumeration (difference
/// counting, spectra, subgroup tests) is permitted. Parameter-level filters
/// never enumerate elements and are not subject to this cap.
pub const DEFAULT_ENUMERATION_CAP: u64 = 1_000_000;

static ENUMERATION_CAP: AtomicU64 = AtomicU64::new(DEFAULT_ENUMERATION_CAP);

pub fn enumeration_cap() -> u64 {
    ENUMERATION_CAP.load(Ordering::Relaxed)
}

/// Raises or lowers the element-enumeration cap for this process.
pub fn set_enumeration_cap(cap: u64) {
    ENUMERATION_CAP.store(cap, Ordering::Relaxed);
}

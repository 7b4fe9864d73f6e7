//! Conjugacy, roots and centralizers in Thompson's group F.
//!
//! Elements are order-preserving piecewise linear homeomorphisms of `[0,1]`
//! stored as exact breakpoint lists ([`PlMap`]). Membership in F is
//! certified by [`check_in_f`], which returns an [`FElement`].
//!
//! The decision procedure runs in two layers:
//!
//! * [`sigma`] computes the classical invariant (sign sequence, initial
//!   slopes of bumps and orbit-collapsed slope-ratio data), which decides
//!   conjugacy among all PL homeomorphisms;
//! * [`delta`] adds, per bump chain, a tuple of rationals up to an
//!   explicitly solvable equivalence, which decides conjugacy inside F.
//!
//! [`conjugacy`] combines both and assembles verified conjugators, and
//! [`roots`] extracts roots and describes centralizers. No floating point
//! is used anywhere.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod conjugacy;
pub mod cornered;
pub mod delta;
pub mod exact;
pub mod fixtures;
pub mod plmap;
pub mod roots;
pub mod sigma;
pub mod word;

use alloc::string::String;

pub use conjugacy::{conjugate_in_f, conjugate_in_pl, conjugator_witness, decide, Reason, Verdict};
pub use delta::{delta_equal, delta_equivalent, delta_of, ChainDelta, DeltaInvariant, DeltaWitness};
pub use roots::{centralizer_structure, r_generator, root_extract, root_in_f, CentralizerStructure};
pub use exact::{Pow2Exp, Rational};
pub use plmap::{check_in_f, FDiagnosis, FElement, FixedStructure, PlMap, Sign};
pub use sigma::{sigma_equal, sigma_of, FiniteFunction, SigmaInvariant};
pub use word::{word_to_element, Letter};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid breakpoints: {0}")]
    Invalid(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("usage error: {0}")]
    Usage(String),
    /// A certificate or internal consistency check failed.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;

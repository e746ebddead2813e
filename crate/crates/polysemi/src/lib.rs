//! A library and command-line tool for finite n-ary semigroups.
//!
//! The crate works with total n-ary operations on carriers `{0, …, m-1}`
//! stored as flat value tables. On top of that it provides:
//!
//! - the pointwise predicates of the trade: associativity, idempotency,
//!   quasitriviality over tuple families (`all`, `at least k equal
//!   components`, `at most k distinct values`), neutral elements,
//!   annihilators, restricted symmetry ([`predicates`]);
//! - passage between binary and n-ary operations: extensions, reductions
//!   through neutral elements, the quasitrivial and idempotent reduction
//!   formulas, conjugacy of reductions, and isomorphism search
//!   ([`reduction`]);
//! - structural classification: which quasitriviality classes an operation
//!   belongs to, the abelian-group block carried by its neutral elements,
//!   and the quasitrivial tail and annihilator glue around it
//!   ([`structure`]);
//! - constructors that assemble operations from a group block plus a
//!   quasitrivial tail, the fixture zoo, and strict-inclusion witnesses
//!   ([`construct`]);
//! - exhaustive enumeration of small semigroups and n-ary operation
//!   universes, with class censuses ([`enumerate`]);
//! - text formats and the `polysemi` CLI ([`io`], [`cli`]), including the
//!   `check-paper` battery that re-verifies the structure theory over the
//!   enumerated universes ([`battery`]).

pub mod battery;
pub mod cli;
pub mod construct;
pub mod enumerate;
pub mod error;
pub mod family;
pub mod io;
pub mod predicates;
pub mod reduction;
pub mod structure;
pub mod table;

pub use error::Error;
pub use family::TupleFamily;
pub use predicates::NeutralSet;
pub use table::{Carrier, Elem, NaryOp};

use std::sync::atomic::{AtomicUsize, Ordering};

static JOBS: AtomicUsize = AtomicUsize::new(1);

/// Sets the worker count used by predicate scans that partition their
/// tuple ranges. Witness reporting stays deterministic regardless.
pub fn set_jobs(jobs: usize) {
    JOBS.store(jobs.max(1), Ordering::Relaxed);
}

/// Current worker count (default 1).
pub fn jobs() -> usize {
    JOBS.load(Ordering::Relaxed)
}

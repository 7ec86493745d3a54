//! Finite relative categories, simplicial sets, nerves and integer homology,
//! together with exhaustive verification suites comparing the simplicial nerve
//! of a relativized simplicial category with its flipped nerve.

pub mod cat;
pub mod harness;
pub mod homology;
pub mod nerve;
pub mod report;
pub mod scat;
pub mod simp;

pub use report::{ValidationReport, Verdict, Violation};

//! Classical nerves of finite categories, bisimplicial sets, levelwise nerves
//! of simplicial diagrams of categories, and the simplicial nerve of a
//! relative category.

mod bisimplicial;
mod classical;
mod levelwise;
mod simplicial;

pub use bisimplicial::{validate_bisimplicial_set, Axis, BisimplicialMap, LabelledBisimplicial, TruncatedBisimplicialSet};
pub use classical::{classical_nerve, nerve_map, reindex_chain, ClassicalNerve};
pub use levelwise::{nerve_levelwise, validate_diagram, LevelwiseNerve, SimplicialDiagram};
pub use simplicial::{enumerate_grids, simplicial_nerve, Grid};

use crate::report::ValidationReport;
use crate::simp::SimpError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NerveError {
    #[error("reindexing functors are incoherent: {0}")]
    Incoherent(ValidationReport),
    #[error(transparent)]
    Simp(#[from] SimpError),
}

//! Simplicial operators, truncated simplicial sets and the category of simplices.

mod gamma;
mod operator;
mod sset;

pub use gamma::{gamma, gamma_map, gamma_op, last_vertex_map, CategoryOfSimplices, LastVertexMap};
pub use operator::{operator_compose, OpId, OperatorTable, SimplicialOperator};
pub use sset::{
    disjoint_union, from_facets, monotone_sequences, nondegenerate, product2, reverse, standard_simplex, validate_simplicial_set,
    Labelled, SimplicialMap, TruncatedSimplicialSet,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SimpError {
    #[error("carrier {carrier:?} is not a monotone map [{to_dim}] → [{from_dim}]")]
    BadOperator { from_dim: usize, to_dim: usize, carrier: Vec<usize> },
    #[error("operators do not compose: expected dimension {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("dimension {dim} lies outside truncation {truncation}")]
    OutsideTruncation { dim: usize, truncation: usize },
    #[error("truncations differ: {left} vs {right}")]
    TruncationMismatch { left: usize, right: usize },
    #[error("structure map produced a label missing from dimension {dim}")]
    UnknownLabel { dim: usize },
    #[error("malformed tables: {0}")]
    Shape(String),
}

//! Integer homology of truncated simplicial sets: Smith normal form, Betti
//! numbers and torsion, components, and mapping-cone probes.

mod chain;
mod matrix;
mod probe;

pub use chain::{
    chain_complex, complex_homology, cone_probe, homology, pi0, pi0_bijective, ChainComplex, Components, ConeReport,
    HomologyGroup, HomologyProfile,
};
pub use matrix::{smith_normal_form, IntMatrix, SmithForm};
pub use probe::{levelwise_probe, LevelVerdict, LevelwiseReport};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HomologyError {
    #[error("degree {degree} needs truncation above {truncation}")]
    TooShallow { degree: usize, truncation: usize },
    #[error("source truncation {from} differs from target truncation {to}")]
    TruncationMismatch { from: usize, to: usize },
    #[error("∂∂ ≠ 0 into degree {degree}")]
    BoundarySquare { degree: usize },
    #[error("malformed complex: {0}")]
    Shape(String),
}

//! Graded matrix factorizations of a homogeneous potential and their
//! homotopy category: objects, morphisms, null-homotopies, Hom spaces, the
//! stabilized diagonal and the ring `⊕_ℓ Hom(Q_0, Q_ℓ)`.

mod diagonal;
mod factorization;
mod hom;
mod lmf;
mod matrix;
mod morphism;

pub use diagonal::stabilized_diagonal;
pub use factorization::{
    koszul_mf, variable_decomposition, MatrixFactorization, TwistSequence, Violation, Which,
};
pub use hom::{hom_space, is_null_homotopic, HomSpace};
pub use lmf::{compare_ring, compare_with_jacobian, embed_section, lmf_ring, JacobianComparison, LmfRing};
pub use matrix::PolyMatrix;
pub use morphism::{chain_rule_homotopy, mult_by_section, mult_by_section_twisted, Homotopy, MfMorphism};

use crate::budget::ResourceExceeded;
use crate::jacobian::JacobianError;
use crate::poly::PolyError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MfError {
    #[error("potential is zero")]
    ZeroPotential,
    #[error("potential is not homogeneous")]
    NotHomogeneous,
    #[error("section is not homogeneous")]
    SectionNotHomogeneous,
    #[error("objects factor different potentials")]
    PotentialMismatch,
    #[error("bad decomposition: {0}")]
    BadDecomposition(&'static str),
    #[error("pair {0} has degrees that do not add up to deg f")]
    PairDegree(usize),
    #[error("morphisms cannot be composed: {0}")]
    NotComposable(&'static str),
    #[error("invalid morphism: {0}")]
    InvalidMorphism(&'static str),
    #[error("invalid matrix factorization: {0}")]
    Invalid(#[from] Violation),
    #[error("variable index {0} out of range")]
    VariableOutOfRange(usize),
    #[error("{reason} (reached degree {reached})")]
    ResourceAt {
        reason: ResourceExceeded,
        reached: i64,
    },
    #[error(transparent)]
    Resource(#[from] ResourceExceeded),
    #[error(transparent)]
    Jacobian(#[from] JacobianError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

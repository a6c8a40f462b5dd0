//! Integer lattices, their discriminant forms, finite isometry groups,
//! overlattices from glue data and orientation signs.
//!
//! Vectors are columns of coordinates in the lattice basis; an isometry
//! `M` acts by `x ↦ M·x` and satisfies `Mᵀ·G·M = G`.

mod discriminant;
mod glue;
mod intmat;
mod orient;
mod ortho;

pub use discriminant::{discriminant_action, discriminant_group, DiscAutomorphism, DiscriminantGroup};
pub use glue::{nikulin_extend, overlattice_from_glue, ExtendOutcome, GlueMap, Overlattice, Rejection};
pub use intmat::{hermite_rows, smith_normal_form, IntMatrix, RatMatrix, Smith};
pub use orient::{
    find_orientation_preserving_lift, orientation_sign, signature, standard_positive_basis, Lift,
};
pub use ortho::orthogonal_group;

use alloc::string::String;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("Gram matrix is not square")]
    NotSquare,
    #[error("Gram matrix is not symmetric")]
    NotSymmetric,
    #[error("Gram matrix is degenerate")]
    Degenerate,
    #[error("lattice is indefinite")]
    Indefinite,
    #[error("rank {0} is too large for isometry enumeration")]
    RankTooLarge(usize),
    #[error("matrix is not an isometry: {0}")]
    NotIsometry(&'static str),
    #[error("glue graph is not isotropic: q = {q} at {element}")]
    NotIsotropic { element: String, q: String },
    #[error("glue data is malformed: {0}")]
    BadGlue(&'static str),
    #[error("positive basis is invalid: {0}")]
    BadPositiveBasis(&'static str),
    #[error("shape mismatch: {0}")]
    Shape(&'static str),
}

/// A nondegenerate symmetric integer bilinear form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    gram: IntMatrix,
    label: String,
}

impl Lattice {
    pub fn new(gram: IntMatrix, label: impl Into<String>) -> Result<Self, LatticeError> {
        if !gram.is_square() {
            return Err(LatticeError::NotSquare);
        }
        if !gram.is_symmetric() {
            return Err(LatticeError::NotSymmetric);
        }
        if gram.det().is_zero() {
            return Err(LatticeError::Degenerate);
        }
        Ok(Self {
            gram,
            label: label.into(),
        })
    }

    pub fn from_rows(rows: &[alloc::vec::Vec<i64>], label: impl Into<String>) -> Result<Self, LatticeError> {
        Self::new(IntMatrix::from_rows(rows).ok_or(LatticeError::NotSquare)?, label)
    }

    /// `A_2` in the basis `λ_1, λ_2` of simple roots.
    pub fn a2() -> Self {
        Self::from_rows(&[alloc::vec![2, -1], alloc::vec![-1, 2]], "A2").expect("A2")
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn det(&self) -> BigInt {
        self.gram.det()
    }

    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| (self.gram.get(i, i) % BigInt::from(2)).is_zero())
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().abs().is_one()
    }

    /// `L(-1)`.
    pub fn negated(&self) -> Self {
        Self {
            gram: self.gram.neg(),
            label: alloc::format!("{}(-1)", self.label),
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        Self {
            gram: self.gram.block_diag(&other.gram),
            label: alloc::format!("{}+{}", self.label, other.label),
        }
    }

    /// `xᵀ·G·y` for integer coordinate vectors.
    pub fn inner(&self, x: &[BigInt], y: &[BigInt]) -> BigInt {
        let gy = self.gram.mul_vec(y);
        x.iter().zip(&gy).map(|(a, b)| a * b).sum()
    }

    /// `+1` positive definite, `-1` negative definite, `None` otherwise.
    pub fn definiteness(&self) -> Option<i8> {
        let (pos, neg) = signature(&self.gram);
        if neg == 0 {
            Some(1)
        } else if pos == 0 {
            Some(-1)
        } else {
            None
        }
    }
}

/// An automorphism of a lattice, acting on coordinate columns.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Isometry {
    matrix: IntMatrix,
}

impl Isometry {
    /// Checks `Mᵀ·G·M = G`.
    pub fn new(lattice: &Lattice, matrix: IntMatrix) -> Result<Self, LatticeError> {
        if matrix.rows() != lattice.rank() || matrix.cols() != lattice.rank() {
            return Err(LatticeError::NotIsometry("wrong size"));
        }
        let g = lattice.gram();
        let pulled = matrix.transpose().mul(g).and_then(|x| x.mul(&matrix));
        if pulled.as_ref() != Some(g) {
            return Err(LatticeError::NotIsometry("does not preserve the Gram matrix"));
        }
        Ok(Self { matrix })
    }

    pub fn from_rows(lattice: &Lattice, rows: &[alloc::vec::Vec<i64>]) -> Result<Self, LatticeError> {
        Self::new(lattice, IntMatrix::from_rows(rows).ok_or(LatticeError::Shape("ragged rows"))?)
    }

    pub fn identity(n: usize) -> Self {
        Self {
            matrix: IntMatrix::identity(n),
        }
    }

    pub fn negation(n: usize) -> Self {
        Self {
            matrix: IntMatrix::identity(n).neg(),
        }
    }

    pub(crate) fn unchecked(matrix: IntMatrix) -> Self {
        Self { matrix }
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            matrix: self.matrix.mul(&other.matrix).expect("same rank"),
        }
    }

    pub fn det(&self) -> BigInt {
        self.matrix.det()
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == IntMatrix::identity(self.matrix.rows())
    }

    /// Smallest `k ≥ 1` with `M^k = 1`, searched up to `limit`.
    pub fn order(&self, limit: usize) -> Option<usize> {
        let mut acc = self.clone();
        for k in 1..=limit {
            if acc.is_identity() {
                return Some(k);
            }
            acc = acc.compose(self);
        }
        None
    }

    pub fn block_diag(&self, other: &Self) -> Self {
        Self {
            matrix: self.matrix.block_diag(&other.matrix),
        }
    }
}

/// The 3-cycle `λ_1 ↦ λ_2 ↦ -λ_1-λ_2 ↦ λ_1` of `A_2`.
pub fn degree_shift_isometry() -> Isometry {
    Isometry::from_rows(&Lattice::a2(), &[alloc::vec![0, -1], alloc::vec![1, -1]]).expect("isometry of A2")
}

/// The reflection `λ_1 ↔ λ_2` of `A_2`.
pub fn a2_swap() -> Isometry {
    Isometry::from_rows(&Lattice::a2(), &[alloc::vec![0, 1], alloc::vec![1, 0]]).expect("isometry of A2")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_shift_isometry_basics() {
        let c = degree_shift_isometry();
        assert_eq!(c.order(10), Some(3));
        assert_eq!(c.det(), BigInt::one());
        assert!(c.compose(&c).compose(&c).is_identity());
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            Lattice::from_rows(&[alloc::vec![1, 2], alloc::vec![3, 4]], "x"),
            Err(LatticeError::NotSymmetric)
        );
        assert_eq!(
            Lattice::from_rows(&[alloc::vec![1, 1], alloc::vec![1, 1]], "x"),
            Err(LatticeError::Degenerate)
        );
        let a2 = Lattice::a2();
        assert!(Isometry::from_rows(&a2, &[alloc::vec![1, 1], alloc::vec![0, 1]]).is_err());
    }

    #[test]
    fn evenness_and_definiteness() {
        let a2 = Lattice::a2();
        assert!(a2.is_even());
        assert_eq!(a2.definiteness(), Some(1));
        assert_eq!(a2.negated().definiteness(), Some(-1));
        let u = Lattice::from_rows(&[alloc::vec![0, 1], alloc::vec![1, 0]], "U").unwrap();
        assert_eq!(u.definiteness(), None);
        assert!(u.is_unimodular());
    }
}

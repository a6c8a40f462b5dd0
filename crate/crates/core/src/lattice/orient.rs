use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::discriminant::{discriminant_action, discriminant_group, DiscAutomorphism};
use super::intmat::{IntMatrix, RatMatrix};
use super::ortho::orthogonal_group;
use super::{degree_shift_isometry, Isometry, Lattice, LatticeError};

/// `(positive, negative)` index of inertia of a symmetric matrix.
pub fn signature(gram: &IntMatrix) -> (usize, usize) {
    let mut a = gram.to_rational().rows;
    let mut live: Vec<usize> = (0..a.len()).collect();
    let (mut pos, mut neg) = (0, 0);
    while !live.is_empty() {
        if let Some(k) = live.iter().position(|&i| !a[i][i].is_zero()) {
            let i = live.remove(k);
            let p = a[i][i].clone();
            if p.is_positive() {
                pos += 1;
            } else {
                neg += 1;
            }
            for &j in &live {
                for &l in &live {
                    let t = &a[j][i] * &a[i][l] / &p;
                    a[j][l] -= t;
                }
            }
            continue;
        }
        // zero diagonal: x_i += x_j makes the diagonal 2·a_ij
        let pair = live
            .iter()
            .flat_map(|&i| live.iter().map(move |&j| (i, j)))
            .find(|&(i, j)| i != j && !a[i][j].is_zero());
        let Some((i, j)) = pair else { break };
        let row_j = a[j].clone();
        for (x, y) in a[i].iter_mut().zip(&row_j) {
            *x += y;
        }
        for row in a.iter_mut() {
            let y = row[j].clone();
            row[i] += y;
        }
    }
    (pos, neg)
}

/// The coordinate basis, when the lattice is positive definite.
pub fn standard_positive_basis(lattice: &Lattice) -> Option<Vec<Vec<BigRational>>> {
    if lattice.definiteness() != Some(1) {
        return None;
    }
    let id = RatMatrix::identity(lattice.rank());
    Some(id.rows)
}

/// Sign of the determinant of `σ` on a maximal positive subspace `V`,
/// projected back to `V` along `V^⊥`. Since `det(PᵀGP) > 0`, this is the
/// sign of `det(PᵀGσP)` where the columns of `P` span `V`.
pub fn orientation_sign(
    lattice: &Lattice,
    sigma: &Isometry,
    positive_basis: &[Vec<BigRational>],
) -> Result<i8, LatticeError> {
    let r = lattice.rank();
    let (pos, _) = signature(lattice.gram());
    if positive_basis.len() != pos {
        return Err(LatticeError::BadPositiveBasis("wrong dimension"));
    }
    if positive_basis.iter().any(|v| v.len() != r) {
        return Err(LatticeError::BadPositiveBasis("vector length does not match the rank"));
    }
    if sigma.matrix().rows() != r {
        return Err(LatticeError::Shape("isometry size"));
    }
    let p = RatMatrix::from_rows(positive_basis.to_vec()).transpose();
    let g = lattice.gram().to_rational();
    let pt = p.transpose();
    let gp = pt.mul(&g).mul(&p);
    // positive definite iff all leading minors are positive
    for k in 1..=pos {
        let minor = RatMatrix::from_rows(gp.rows[..k].iter().map(|row| row[..k].to_vec()).collect());
        if !minor.det().is_positive() {
            return Err(LatticeError::BadPositiveBasis("not positive definite"));
        }
    }
    let s = sigma.matrix().to_rational();
    let det = pt.mul(&g).mul(&s).mul(&p).det();
    if det.is_zero() {
        return Err(LatticeError::BadPositiveBasis("projection is singular"));
    }
    Ok(if det.is_positive() { 1 } else { -1 })
}

/// Orientation-preserving isometries of `A_2` inducing a prescribed map on
/// its discriminant group.
#[derive(Debug, Clone)]
pub struct Lift {
    pub chosen: Isometry,
    pub all: Vec<Isometry>,
    /// Every element of `all` commutes with the 3-cycle.
    pub commute_with_cycle: bool,
}

pub fn find_orientation_preserving_lift(target: &DiscAutomorphism) -> Result<Option<Lift>, LatticeError> {
    let a2 = Lattice::a2();
    let disc = discriminant_group(&a2)?;
    let basis = standard_positive_basis(&a2).expect("A2 is positive definite");
    let c = degree_shift_isometry();
    let mut all = Vec::new();
    for s in orthogonal_group(&a2)? {
        if &discriminant_action(&disc, &s) == target && orientation_sign(&a2, &s, &basis)? == 1 {
            all.push(s);
        }
    }
    let commute_with_cycle = all.iter().all(|s| s.compose(&c) == c.compose(s));
    Ok(all.first().cloned().map(|chosen| Lift {
        chosen,
        all,
        commute_with_cycle,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::a2_swap;
    use num_traits::One;

    #[test]
    fn signatures() {
        assert_eq!(signature(Lattice::a2().gram()), (2, 0));
        let u = IntMatrix::from_rows(&[alloc::vec![0, 1], alloc::vec![1, 0]]).unwrap();
        assert_eq!(signature(&u), (1, 1));
        let uu = u.block_diag(&u);
        assert_eq!(signature(&uu), (2, 2));
    }

    #[test]
    fn a2_orientation_signs() {
        let a2 = Lattice::a2();
        let basis = standard_positive_basis(&a2).unwrap();
        assert_eq!(orientation_sign(&a2, &Isometry::identity(2), &basis), Ok(1));
        assert_eq!(orientation_sign(&a2, &degree_shift_isometry(), &basis), Ok(1));
        assert_eq!(orientation_sign(&a2, &a2_swap(), &basis), Ok(-1));
    }

    #[test]
    fn indefinite_orientation_needs_positive_plane() {
        let u = Lattice::from_rows(&[alloc::vec![0, 1], alloc::vec![1, 0]], "U").unwrap();
        let one = BigRational::one();
        let zero = BigRational::zero();
        let good = alloc::vec![alloc::vec![one.clone(), one.clone()]];
        let bad = alloc::vec![alloc::vec![one.clone(), zero.clone()]];
        let neg = Isometry::negation(2);
        assert_eq!(orientation_sign(&u, &neg, &good), Ok(-1));
        assert!(orientation_sign(&u, &neg, &bad).is_err());
        // swapping the two isotropic lines fixes e+f
        let swap = Isometry::from_rows(&u, &[alloc::vec![0, 1], alloc::vec![1, 0]]).unwrap();
        assert_eq!(orientation_sign(&u, &swap, &good), Ok(1));
    }

    #[test]
    fn lifts_exist_for_both_actions() {
        let disc = discriminant_group(&Lattice::a2()).unwrap();
        for target in [DiscAutomorphism::identity(&disc), DiscAutomorphism::negation(&disc)] {
            let lift = find_orientation_preserving_lift(&target).unwrap().unwrap();
            assert_eq!(lift.all.len(), 3);
            assert!(lift.commute_with_cycle);
        }
    }
}

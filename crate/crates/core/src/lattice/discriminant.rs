use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::intmat::{rational_mod, smith_normal_form, IntMatrix};
use super::{Isometry, Lattice, LatticeError};

/// `A_L = L*/L` with its finite quadratic form.
///
/// With `U·G·V = D` in Smith form, the generators are `x_k = V·D⁻¹·e_k` for
/// the invariant factors `d_k > 1`, and a dual vector `x` has class
/// `(U·G·x)_k mod d_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscriminantGroup {
    gram: IntMatrix,
    factors: Vec<BigInt>,
    generators: Vec<Vec<BigRational>>,
    class_rows: Vec<Vec<BigInt>>,
}

pub fn discriminant_group(lattice: &Lattice) -> Result<DiscriminantGroup, LatticeError> {
    let g = lattice.gram();
    if g.det().is_zero() {
        return Err(LatticeError::Degenerate);
    }
    let smith = smith_normal_form(g);
    let ug = smith.u.mul(g).expect("square");
    let mut factors = Vec::new();
    let mut generators = Vec::new();
    let mut class_rows = Vec::new();
    for (k, d) in smith.diagonal.iter().enumerate() {
        if d.is_one() {
            continue;
        }
        let gen = smith
            .v
            .column(k)
            .into_iter()
            .map(|x| BigRational::new(x, d.clone()))
            .collect();
        factors.push(d.clone());
        generators.push(gen);
        class_rows.push(ug.row(k).to_vec());
    }
    Ok(DiscriminantGroup {
        gram: g.clone(),
        factors,
        generators,
        class_rows,
    })
}

impl DiscriminantGroup {
    /// Invariant factors greater than one, each dividing the next.
    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.factors
    }

    pub fn order(&self) -> BigInt {
        self.factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    /// Generators in lattice coordinates.
    pub fn generators(&self) -> &[Vec<BigRational>] {
        &self.generators
    }

    pub fn zero(&self) -> Vec<BigInt> {
        alloc::vec![BigInt::zero(); self.factors.len()]
    }

    pub fn normalize(&self, e: &[BigInt]) -> Vec<BigInt> {
        e.iter().zip(&self.factors).map(|(x, d)| x.mod_floor(d)).collect()
    }

    pub fn add(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let s: Vec<BigInt> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        self.normalize(&s)
    }

    pub fn scale(&self, k: &BigInt, a: &[BigInt]) -> Vec<BigInt> {
        let s: Vec<BigInt> = a.iter().map(|x| x * k).collect();
        self.normalize(&s)
    }

    /// `Σ e_k·x_k` in lattice coordinates.
    pub fn vector_of(&self, e: &[BigInt]) -> Vec<BigRational> {
        let n = self.gram.rows();
        let mut v = alloc::vec![BigRational::zero(); n];
        for (c, g) in e.iter().zip(&self.generators) {
            let c = BigRational::from_integer(c.clone());
            for (vi, gi) in v.iter_mut().zip(g) {
                *vi += &c * gi;
            }
        }
        v
    }

    /// Class of a dual-lattice vector; `None` if `x ∉ L*`.
    pub fn class_of(&self, x: &[BigRational]) -> Option<Vec<BigInt>> {
        let gx = self.gram.to_rational().mul_vec(x);
        if gx.iter().any(|v| !v.is_integer()) {
            return None;
        }
        let out = self
            .class_rows
            .iter()
            .zip(&self.factors)
            .map(|(row, d)| {
                let s: BigRational = row
                    .iter()
                    .zip(x)
                    .fold(BigRational::zero(), |acc, (a, b)| acc + BigRational::from_integer(a.clone()) * b);
                s.to_integer().mod_floor(d)
            })
            .collect();
        Some(out)
    }

    fn pair(&self, x: &[BigRational], y: &[BigRational]) -> BigRational {
        let gy = self.gram.to_rational().mul_vec(y);
        x.iter().zip(&gy).fold(BigRational::zero(), |acc, (a, b)| acc + a * b)
    }

    /// `q(e) = xᵀGx mod 2`, in `[0, 2)`.
    pub fn q(&self, e: &[BigInt]) -> BigRational {
        let x = self.vector_of(e);
        rational_mod(&self.pair(&x, &x), &BigInt::from(2))
    }

    /// `b(e, f) = xᵀGy mod 1`, in `[0, 1)`.
    pub fn b(&self, e: &[BigInt], f: &[BigInt]) -> BigRational {
        let (x, y) = (self.vector_of(e), self.vector_of(f));
        rational_mod(&self.pair(&x, &y), &BigInt::one())
    }

    /// Every element, in lexicographic order of residues.
    pub fn elements(&self) -> Vec<Vec<BigInt>> {
        let mut out = alloc::vec![Vec::new()];
        for d in &self.factors {
            let mut next = Vec::new();
            for prefix in &out {
                let mut k = BigInt::zero();
                while &k < d {
                    let mut e = prefix.clone();
                    e.push(k.clone());
                    next.push(e);
                    k += 1;
                }
            }
            out = next;
        }
        out
    }
}

/// An automorphism of a discriminant group: the images of its generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiscAutomorphism {
    pub images: Vec<Vec<BigInt>>,
}

impl DiscAutomorphism {
    pub fn identity(group: &DiscriminantGroup) -> Self {
        let n = group.factors.len();
        Self {
            images: (0..n)
                .map(|i| group.normalize(&(0..n).map(|j| BigInt::from((i == j) as i32)).collect::<Vec<_>>()))
                .collect(),
        }
    }

    pub fn negation(group: &DiscriminantGroup) -> Self {
        let id = Self::identity(group);
        Self {
            images: id.images.iter().map(|e| group.scale(&BigInt::from(-1), e)).collect(),
        }
    }

    pub fn apply(&self, group: &DiscriminantGroup, e: &[BigInt]) -> Vec<BigInt> {
        let mut acc = group.zero();
        for (c, img) in e.iter().zip(&self.images) {
            acc = group.add(&acc, &group.scale(c, img));
        }
        acc
    }

    /// `self ∘ other`.
    pub fn compose(&self, group: &DiscriminantGroup, other: &Self) -> Self {
        Self {
            images: other.images.iter().map(|e| self.apply(group, e)).collect(),
        }
    }
}

/// The map induced by `σ` on `L*/L`.
pub fn discriminant_action(group: &DiscriminantGroup, sigma: &Isometry) -> DiscAutomorphism {
    let m = sigma.matrix().to_rational();
    DiscAutomorphism {
        images: group
            .generators
            .iter()
            .map(|x| group.class_of(&m.mul_vec(x)).expect("isometries preserve the dual"))
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{a2_swap, degree_shift_isometry};

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(big(n), big(d))
    }

    #[test]
    fn a2_is_z3() {
        let a = discriminant_group(&Lattice::a2()).unwrap();
        assert_eq!(a.invariant_factors(), &[big(3)]);
        assert_eq!(a.q(&[big(1)]), rat(2, 3));
        assert_eq!(a.q(&[big(2)]), rat(2, 3));
        assert_eq!(a.b(&[big(1)], &[big(1)]), rat(2, 3));
    }

    #[test]
    fn hyperbolic_plane_is_trivial() {
        let u = Lattice::from_rows(&[alloc::vec![0, 1], alloc::vec![1, 0]], "U").unwrap();
        let a = discriminant_group(&u).unwrap();
        assert!(a.is_trivial());
        assert_eq!(a.order(), big(1));
    }

    #[test]
    fn a2_plus_a2_negated() {
        let l = Lattice::a2().direct_sum(&Lattice::a2().negated());
        let a = discriminant_group(&l).unwrap();
        assert_eq!(a.invariant_factors(), &[big(3), big(3)]);
        let mut qs: Vec<BigRational> = a.elements().iter().map(|e| a.q(e)).collect();
        qs.sort();
        qs.dedup();
        // 0 (from 0 and the isotropic diagonal), 2/3 and 4/3 = -2/3
        assert_eq!(qs, alloc::vec![rat(0, 1), rat(2, 3), rat(4, 3)]);
    }

    #[test]
    fn order_matches_determinant() {
        for rows in [
            alloc::vec![alloc::vec![2, 1, 0], alloc::vec![1, 4, 1], alloc::vec![0, 1, 6]],
            alloc::vec![alloc::vec![2, 0], alloc::vec![0, 6]],
        ] {
            let l = Lattice::from_rows(&rows, "t").unwrap();
            let a = discriminant_group(&l).unwrap();
            assert_eq!(a.order(), num_traits::Signed::abs(&l.det()));
            assert_eq!(BigInt::from(a.elements().len()), a.order());
        }
    }

    #[test]
    fn actions_on_a2() {
        let a2 = Lattice::a2();
        let a = discriminant_group(&a2).unwrap();
        let c = degree_shift_isometry();
        assert_eq!(discriminant_action(&a, &c), DiscAutomorphism::identity(&a));
        assert_eq!(
            discriminant_action(&a, &Isometry::negation(2)),
            DiscAutomorphism::negation(&a)
        );
        assert_eq!(discriminant_action(&a, &a2_swap()), DiscAutomorphism::negation(&a));
        assert_eq!(discriminant_action(&a, &Isometry::identity(2)), DiscAutomorphism::identity(&a));
    }
}

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::discriminant::{discriminant_action, discriminant_group, DiscriminantGroup};
use super::intmat::{common_denominator, hermite_rows, RatMatrix};
use super::{Isometry, Lattice, LatticeError};

type Elem = Vec<BigInt>;

/// A homomorphism `γ: H → A_2` from a subgroup `H ⊂ A_1`, given by the
/// pairs `(x, γ(x))` for generators `x` of `H`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlueMap {
    pub pairs: Vec<(Elem, Elem)>,
}

impl GlueMap {
    /// Generator `k` of `A_1` to generator `k` of `A_2`; the groups must
    /// have the same invariant factors.
    pub fn identity(a1: &DiscriminantGroup, a2: &DiscriminantGroup) -> Result<Self, LatticeError> {
        if a1.invariant_factors() != a2.invariant_factors() {
            return Err(LatticeError::BadGlue("invariant factors differ"));
        }
        let n = a1.invariant_factors().len();
        let unit = |k: usize| -> Elem { (0..n).map(|j| BigInt::from((j == k) as i32)).collect() };
        Ok(Self {
            pairs: (0..n).map(|k| (unit(k), unit(k))).collect(),
        })
    }

    /// The zero subgroup.
    pub fn trivial() -> Self {
        Self { pairs: Vec::new() }
    }

    /// Every element `(x, γ(x))` of the graph.
    pub fn graph(&self, a1: &DiscriminantGroup, a2: &DiscriminantGroup) -> Result<BTreeSet<(Elem, Elem)>, LatticeError> {
        let n1 = a1.invariant_factors().len();
        let n2 = a2.invariant_factors().len();
        let gens: Vec<(Elem, Elem)> = self
            .pairs
            .iter()
            .map(|(x, y)| {
                if x.len() != n1 || y.len() != n2 {
                    Err(LatticeError::BadGlue("element length does not match the group"))
                } else {
                    Ok((a1.normalize(x), a2.normalize(y)))
                }
            })
            .collect::<Result<_, _>>()?;
        let mut seen = BTreeSet::new();
        let mut frontier = alloc::vec![(a1.zero(), a2.zero())];
        seen.insert((a1.zero(), a2.zero()));
        while let Some((x, y)) = frontier.pop() {
            for (gx, gy) in &gens {
                let next = (a1.add(&x, gx), a2.add(&y, gy));
                if seen.insert(next.clone()) {
                    frontier.push(next);
                }
            }
        }
        // a graph of an injective homomorphism
        let zero1 = a1.zero();
        let zero2 = a2.zero();
        for (x, y) in &seen {
            if *x == zero1 && *y != zero2 {
                return Err(LatticeError::BadGlue("not a function"));
            }
            if *y == zero2 && *x != zero1 {
                return Err(LatticeError::BadGlue("not injective"));
            }
        }
        Ok(seen)
    }
}

/// `M ⊃ L_1 ⊕ L_2` from an isotropic glue graph.
#[derive(Debug, Clone)]
pub struct Overlattice {
    pub lattice: Lattice,
    /// Basis of `M` as rows of coordinates in `L_1 ⊕ L_2`.
    pub basis: RatMatrix,
    /// `[M : L_1 ⊕ L_2]`.
    pub index: BigInt,
    pub graph_order: usize,
}

pub fn overlattice_from_glue(l1: &Lattice, l2: &Lattice, glue: &GlueMap) -> Result<Overlattice, LatticeError> {
    let a1 = discriminant_group(l1)?;
    let a2 = discriminant_group(l2)?;
    let graph = glue.graph(&a1, &a2)?;
    let two = BigInt::from(2);
    for (x, y) in &graph {
        let q = super::intmat::rational_mod(&(a1.q(x) + a2.q(y)), &two);
        if !q.is_zero() {
            return Err(LatticeError::NotIsotropic {
                element: alloc::format!("({x:?}, {y:?})"),
                q: crate::field::render_rational(&q),
            });
        }
    }
    let (r1, r2) = (l1.rank(), l2.rank());
    let r = r1 + r2;
    let mut gens: Vec<Vec<BigRational>> = (0..r)
        .map(|i| {
            (0..r)
                .map(|j| BigRational::from_integer(BigInt::from((i == j) as i32)))
                .collect()
        })
        .collect();
    for (x, y) in &glue.pairs {
        let mut v = a1.vector_of(x);
        v.extend(a2.vector_of(y));
        gens.push(v);
    }
    let den = gens.iter().fold(BigInt::from(1), |acc, v| {
        num_integer::Integer::lcm(&acc, &common_denominator(v))
    });
    let scaled: Vec<Vec<BigInt>> = gens
        .iter()
        .map(|v| v.iter().map(|x| (x * BigRational::from_integer(den.clone())).to_integer()).collect())
        .collect();
    let h = hermite_rows(&scaled);
    let basis = RatMatrix::from_rows(
        h.into_iter()
            .map(|row| row.into_iter().map(|x| BigRational::new(x, den.clone())).collect())
            .collect(),
    );
    let g = l1.gram().block_diag(l2.gram()).to_rational();
    let gram = basis
        .mul(&g)
        .mul(&basis.transpose())
        .to_integer()
        .ok_or(LatticeError::BadGlue("overlattice Gram matrix is not integral"))?;
    let det = basis.det();
    let index = (BigRational::from_integer(BigInt::from(1)) / det).abs();
    if !index.is_integer() {
        return Err(LatticeError::BadGlue("index is not an integer"));
    }
    let lattice = Lattice::new(gram, alloc::format!("{}+{} glued", l1.label(), l2.label()))?;
    Ok(Overlattice {
        lattice,
        basis,
        index: index.to_integer(),
        graph_order: graph.len(),
    })
}

/// Why an isometry pair does not extend: at `element` of the glue domain,
/// `γ(φ̄ x)` and `ḡ(γ x)` disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rejection {
    pub element: Elem,
    /// `γ(φ̄(x))`, or `None` when `φ̄(x)` leaves the glue domain.
    pub via_phi: Option<Elem>,
    /// `ḡ(γ(x))`.
    pub via_g: Elem,
}

#[derive(Debug, Clone)]
pub enum ExtendOutcome {
    Accepted {
        overlattice: Overlattice,
        /// `φ ⊕ g` in the basis of the overlattice.
        isometry: Isometry,
    },
    Rejected(Rejection),
}

impl ExtendOutcome {
    pub fn is_accepted(&self) -> bool {
        matches!(self, ExtendOutcome::Accepted { .. })
    }
}

/// `φ ⊕ g` extends to the glued overlattice iff `ḡ ∘ γ = γ ∘ φ̄`.
pub fn nikulin_extend(
    l1: &Lattice,
    l2: &Lattice,
    glue: &GlueMap,
    phi: &Isometry,
    g: &Isometry,
) -> Result<ExtendOutcome, LatticeError> {
    let phi = Isometry::new(l1, phi.matrix().clone())?;
    let g = Isometry::new(l2, g.matrix().clone())?;
    let overlattice = overlattice_from_glue(l1, l2, glue)?;
    let a1 = discriminant_group(l1)?;
    let a2 = discriminant_group(l2)?;
    let graph = glue.graph(&a1, &a2)?;
    let gamma: BTreeMap<Elem, Elem> = graph.iter().cloned().collect();
    let phi_bar = discriminant_action(&a1, &phi);
    let g_bar = discriminant_action(&a2, &g);
    for (x, y) in &graph {
        let via_phi = gamma.get(&phi_bar.apply(&a1, x)).cloned();
        let via_g = g_bar.apply(&a2, y);
        if via_phi.as_ref() != Some(&via_g) {
            return Ok(ExtendOutcome::Rejected(Rejection {
                element: x.clone(),
                via_phi,
                via_g,
            }));
        }
    }
    // coordinates c in M correspond to v = Bᵀc in L_1 ⊕ L_2
    let big = phi.block_diag(&g).matrix().to_rational();
    let bt = overlattice.basis.transpose();
    let bt_inv = bt.inverse().ok_or(LatticeError::Degenerate)?;
    let m = bt_inv
        .mul(&big)
        .mul(&bt)
        .to_integer()
        .ok_or(LatticeError::NotIsometry("extension is not integral"))?;
    let isometry = Isometry::new(&overlattice.lattice, m)?;
    Ok(ExtendOutcome::Accepted { overlattice, isometry })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{a2_swap, degree_shift_isometry, orthogonal_group};

    fn setup() -> (Lattice, Lattice, GlueMap) {
        let l1 = Lattice::a2();
        let l2 = Lattice::a2().negated();
        let a1 = discriminant_group(&l1).unwrap();
        let a2 = discriminant_group(&l2).unwrap();
        let glue = GlueMap::identity(&a1, &a2).unwrap();
        (l1, l2, glue)
    }

    #[test]
    fn identity_glue_is_even_unimodular() {
        let (l1, l2, glue) = setup();
        let m = overlattice_from_glue(&l1, &l2, &glue).unwrap();
        assert_eq!(m.index, BigInt::from(3));
        assert_eq!(m.graph_order, 3);
        assert!(m.lattice.is_even());
        assert!(m.lattice.is_unimodular());
        assert_eq!(m.lattice.rank(), 4);
        assert_eq!(crate::lattice::signature(m.lattice.gram()), (2, 2));
        // det(M) = det(L1)·det(L2)/|graph|²
        assert_eq!(m.lattice.det() * BigInt::from(9), l1.det() * l2.det());
    }

    #[test]
    fn trivial_glue_is_direct_sum() {
        let (l1, l2, _) = setup();
        let m = overlattice_from_glue(&l1, &l2, &GlueMap::trivial()).unwrap();
        assert_eq!(m.index, BigInt::from(1));
        assert_eq!(m.lattice.det(), l1.det() * l2.det());
    }

    #[test]
    fn same_sign_glue_is_rejected() {
        let l = Lattice::a2();
        let a = discriminant_group(&l).unwrap();
        let glue = GlueMap::identity(&a, &a).unwrap();
        assert!(matches!(
            overlattice_from_glue(&l, &l, &glue),
            Err(LatticeError::NotIsotropic { .. })
        ));
    }

    #[test]
    fn shipped_extension_cases() {
        let (l1, l2, glue) = setup();
        let id = Isometry::identity(2);
        let neg = Isometry::negation(2);
        let c = degree_shift_isometry();
        let swap = a2_swap();
        let cases = [
            (&id, &id, true),
            (&id, &c, true),
            (&id, &neg, false),
            (&neg, &neg, true),
            (&swap, &id, false),
            (&swap, &neg, true),
        ];
        for (phi, g, expect) in cases {
            let out = nikulin_extend(&l1, &l2, &glue, phi, g).unwrap();
            assert_eq!(out.is_accepted(), expect, "{phi:?} {g:?}");
        }
    }

    #[test]
    fn accepted_extensions_restrict_correctly() {
        let (l1, l2, glue) = setup();
        for phi in orthogonal_group(&l1).unwrap() {
            for g in orthogonal_group(&l2).unwrap() {
                let out = nikulin_extend(&l1, &l2, &glue, &phi, &g).unwrap();
                if let ExtendOutcome::Accepted { overlattice, isometry } = out {
                    // back in L1 ⊕ L2 coordinates the map is φ ⊕ g
                    let bt = overlattice.basis.transpose();
                    let back = bt
                        .mul(&isometry.matrix().to_rational())
                        .mul(&bt.inverse().unwrap());
                    assert_eq!(back, phi.block_diag(&g).matrix().to_rational());
                }
            }
        }
    }
}

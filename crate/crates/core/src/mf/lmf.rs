use alloc::sync::Arc;
use alloc::vec::Vec;

use super::{
    chain_rule_homotopy, hom_space, mult_by_section_twisted, stabilized_diagonal, HomSpace,
    MatrixFactorization, MfError, MfMorphism,
};
use crate::budget::Budget;
use crate::field::Field;
use crate::jacobian::{JacobianError, JacobianRing};
use crate::linalg::dense_rank;
use crate::poly::Polynomial;

/// `⊕_{ℓ ≤ N} Hom(Q_0, Q_ℓ)` with composition as product.
#[derive(Debug, Clone)]
pub struct LmfRing<F: Field> {
    pub potential: Polynomial<F>,
    pub diagonal: Arc<MatrixFactorization<F>>,
    pub max_degree: u32,
    pieces: Vec<HomSpace<F>>,
}

impl<F: Field> LmfRing<F> {
    pub fn dims(&self) -> Vec<usize> {
        self.pieces.iter().map(HomSpace::dim).collect()
    }

    pub fn piece(&self, l: u32) -> Option<&HomSpace<F>> {
        self.pieces.get(l as usize)
    }

    /// Product of two classes given by coordinates, or `None` past `N`.
    pub fn multiply(&self, a: u32, x: &[F::Elem], b: u32, y: &[F::Elem]) -> Result<Option<Vec<F::Elem>>, MfError> {
        let Some(target) = self.piece(a + b) else {
            return Ok(None);
        };
        let (pa, pb) = (&self.pieces[a as usize], &self.pieces[b as usize]);
        let prod = pa.morphism_from_class(x).then(&pb.morphism_from_class(y))?;
        target.class_of(&prod).map(Some)
    }

    /// Class of a composite of representatives.
    pub fn class_of_composite(&self, first: &MfMorphism<F>, second: &MfMorphism<F>) -> Result<Vec<F::Elem>, MfError> {
        let prod = first.then(second)?;
        let l = u32::try_from(prod.twist).map_err(|_| MfError::InvalidMorphism("negative twist"))?;
        self.piece(l)
            .ok_or(MfError::InvalidMorphism("degree beyond N"))?
            .class_of(&prod)
    }

    /// Structure constants: `(a, i, b, j, coordinates of e_{a,i}·e_{b,j})`
    /// for `a + b ≤ N`.
    pub fn multiplication_table(&self) -> Result<Vec<(u32, usize, u32, usize, Vec<F::Elem>)>, MfError> {
        let f = self.potential.field();
        let mut out = Vec::new();
        for a in 0..=self.max_degree {
            for b in 0..=self.max_degree - a {
                let (da, db) = (self.pieces[a as usize].dim(), self.pieces[b as usize].dim());
                for i in 0..da {
                    for j in 0..db {
                        let x = unit(f, da, i);
                        let y = unit(f, db, j);
                        let c = self.multiply(a, &x, b, &y)?.expect("a + b <= N");
                        out.push((a, i, b, j, c));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Class of multiplication by `p(x)` in degree `deg p`.
    pub fn section_class(&self, p: &Polynomial<F>, l: u32) -> Result<Vec<F::Elem>, MfError> {
        let m = mult_by_section_twisted(&self.diagonal, &embed_section(p), l as i64)?;
        self.piece(l)
            .ok_or(MfError::InvalidMorphism("degree beyond N"))?
            .class_of(&m)
    }
}

fn unit<F: Field>(f: F, n: usize, i: usize) -> Vec<F::Elem> {
    (0..n).map(|k| if k == i { f.one() } else { f.zero() }).collect()
}

/// A polynomial in `x_0..x_{n-1}` read inside `k[x, y]` (the `x` block).
pub fn embed_section<F: Field>(p: &Polynomial<F>) -> Polynomial<F> {
    let n = p.num_vars();
    let map: Vec<usize> = (0..n).collect();
    p.rename_vars(&map, 2 * n)
}

fn smooth_ring<F: Field>(f: &Polynomial<F>, budget: &Budget) -> Result<JacobianRing<F>, MfError> {
    let j = JacobianRing::build_with_budget(f, budget)?;
    if !j.is_smooth() {
        return Err(JacobianError::NotSmooth.into());
    }
    Ok(j)
}

pub fn lmf_ring<F: Field>(f: &Polynomial<F>, max_degree: u32, budget: &Budget) -> Result<LmfRing<F>, MfError> {
    smooth_ring(f, budget)?;
    build_lmf(f, max_degree, budget)
}

fn build_lmf<F: Field>(f: &Polynomial<F>, max_degree: u32, budget: &Budget) -> Result<LmfRing<F>, MfError> {
    let q0 = Arc::new(stabilized_diagonal(f)?);
    let mut pieces = Vec::with_capacity(max_degree as usize + 1);
    for l in 0..=max_degree {
        let piece = hom_space(&q0, &q0, l as i64, budget).map_err(|e| match e {
            MfError::Resource(reason) => MfError::ResourceAt {
                reason,
                reached: l as i64 - 1,
            },
            other => other,
        })?;
        pieces.push(piece);
    }
    Ok(LmfRing {
        potential: f.clone(),
        diagonal: q0,
        max_degree,
        pieces,
    })
}

/// Outcome of comparing `J_ℓ → Hom(Q_0, Q_ℓ)` with the Jacobian ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobianComparison {
    /// `dim J_ℓ` for `ℓ ≤ N`.
    pub jacobian_dims: Vec<usize>,
    /// `dim Hom(Q_0, Q_ℓ)`.
    pub lmf_dims: Vec<usize>,
    /// Rank of the section map in each degree.
    pub image_ranks: Vec<usize>,
    pub injective: Vec<bool>,
    /// Graded dimensions of the subring generated by `Hom(Q_0, Q_1)`.
    pub subring_dims: Vec<usize>,
    /// The section map lands in that subring in every degree.
    pub image_in_subring: bool,
    /// `φ(u)·φ(v) = φ(uv)` on all basis pairs.
    pub multiplicative: bool,
    /// Each `∂_i f` maps to zero in degree `d - 1` (`None` if `d - 1 > N`).
    pub partials_vanish: Option<bool>,
    /// The chain-rule homotopy of `Q_0` in `x_i` bounds `-∂_i f(x)`.
    pub chain_rule_certified: bool,
    /// `f` maps to zero in degree `d` (`None` if `d > N`).
    pub euler_vanishes: Option<bool>,
}

impl JacobianComparison {
    /// Injective in each degree, image equal to the degree-one-generated
    /// subring and multiplicative.
    pub fn is_isomorphism_onto_subring(&self) -> bool {
        self.injective.iter().all(|b| *b)
            && self.image_in_subring
            && self.image_ranks == self.subring_dims
            && self.multiplicative
    }
}

pub fn compare_with_jacobian<F: Field>(
    f: &Polynomial<F>,
    max_degree: u32,
    budget: &Budget,
) -> Result<JacobianComparison, MfError> {
    let j = smooth_ring(f, budget)?;
    let ring = build_lmf(f, max_degree, budget)?;
    compare_ring(&j, &ring)
}

/// Compares an already built ring with `J`; `j` must be the Jacobian ring of
/// `ring.potential`.
pub fn compare_ring<F: Field>(j: &JacobianRing<F>, ring: &LmfRing<F>) -> Result<JacobianComparison, MfError> {
    if j.polynomial() != &ring.potential {
        return Err(MfError::PotentialMismatch);
    }
    let field = j.polynomial().field();
    let n = j.num_vars();
    let d = j.degree();
    let top = ring.max_degree;

    let jacobian_dims: Vec<usize> = (0..=top).map(|l| j.dim(l)).collect();
    let lmf_dims = ring.dims();

    // images of the quotient basis monomials
    let mut images: Vec<Vec<Vec<F::Elem>>> = Vec::new();
    for l in 0..=top {
        let mut rows = Vec::new();
        for m in j.quotient_basis(l) {
            let p = Polynomial::monomial(field, field.one(), m);
            rows.push(ring.section_class(&p, l)?);
        }
        images.push(rows);
    }
    let image_ranks: Vec<usize> = images
        .iter()
        .zip(&lmf_dims)
        .map(|(rows, &dim)| if dim == 0 { 0 } else { dense_rank(field, rows) })
        .collect();
    let injective = image_ranks.iter().zip(&jacobian_dims).map(|(r, d)| r == d).collect();

    // subring generated in degree one, as spans of class coordinates
    let one = ring.section_class(&Polynomial::one(field, n), 0)?;
    let mut spans: Vec<Vec<Vec<F::Elem>>> = alloc::vec![basis_of(field, alloc::vec![one])];
    let gens = ring.pieces.get(1).map(HomSpace::basis).unwrap_or_default();
    for l in 1..=top {
        let prev = &spans[l as usize - 1];
        let prev_space = &ring.pieces[l as usize - 1];
        let mut next = Vec::new();
        for v in prev {
            let rep = prev_space.morphism_from_class(v);
            for g in &gens {
                next.push(ring.class_of_composite(&rep, g)?);
            }
        }
        spans.push(basis_of(field, next));
    }
    let subring_dims: Vec<usize> = spans.iter().map(Vec::len).collect();
    let image_in_subring = images.iter().zip(&spans).all(|(rows, span)| {
        let mut all = span.clone();
        all.extend(rows.iter().cloned());
        dense_rank(field, &all) == span.len()
    });

    // φ(u)·φ(v) against φ(normal form of uv)
    let mut multiplicative = true;
    for a in 0..=top {
        for b in 0..=top - a {
            let (ba, bb) = (j.quotient_basis(a), j.quotient_basis(b));
            for (iu, u) in ba.iter().enumerate() {
                for (iv, v) in bb.iter().enumerate() {
                    let got = ring
                        .multiply(a, &images[a as usize][iu], b, &images[b as usize][iv])?
                        .expect("a + b <= N");
                    let uv = Polynomial::monomial(field, field.one(), u.mul(v));
                    let nf = j.normal_form_in(&uv, a + b)?;
                    let expected = ring.section_class(&j.from_coordinates(a + b, &nf), a + b)?;
                    if got != expected {
                        multiplicative = false;
                    }
                }
            }
        }
    }

    let partials_vanish = if d - 1 <= top {
        let mut ok = true;
        for p in j.partials() {
            let c = ring.section_class(p, d - 1)?;
            ok &= c.iter().all(|x| field.is_zero(x));
        }
        Some(ok)
    } else {
        None
    };
    let mut chain_rule_certified = true;
    for (i, p) in j.partials().iter().enumerate() {
        let h = chain_rule_homotopy(&ring.diagonal, i)?;
        let expected = mult_by_section_twisted(&ring.diagonal, &embed_section(p).neg(), d as i64 - 1)?;
        chain_rule_certified &= h.boundary() == expected;
    }
    let euler_vanishes = if d <= top {
        let c = ring.section_class(j.polynomial(), d)?;
        Some(c.iter().all(|x| field.is_zero(x)))
    } else {
        None
    };

    Ok(JacobianComparison {
        jacobian_dims,
        lmf_dims,
        image_ranks,
        injective,
        subring_dims,
        image_in_subring,
        multiplicative,
        partials_vanish,
        chain_rule_certified,
        euler_vanishes,
    })
}

/// A maximal independent subset of `vectors`, in order.
fn basis_of<F: Field>(field: F, vectors: Vec<Vec<F::Elem>>) -> Vec<Vec<F::Elem>> {
    let mut out: Vec<Vec<F::Elem>> = Vec::new();
    for v in vectors {
        out.push(v);
        if dense_rank(field, &out) < out.len() {
            out.pop();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::poly::parse;

    #[test]
    fn cubic_binary_form() {
        let f = parse("x0^3 + x1^3", 2, Rationals).unwrap();
        let ring = lmf_ring(&f, 2, &Budget::default()).unwrap();
        assert_eq!(ring.dims()[0], 1);
        let cmp = compare_with_jacobian(&f, 2, &Budget::default()).unwrap();
        assert_eq!(cmp.jacobian_dims, alloc::vec![1, 2, 1]);
        assert_eq!(cmp.subring_dims, alloc::vec![1, 2, 1]);
        assert!(cmp.is_isomorphism_onto_subring());
        assert_eq!(cmp.partials_vanish, Some(true));
        assert!(cmp.chain_rule_certified);
    }

    #[test]
    fn quartic_binary_form() {
        let f = parse("x0^4 + x1^4", 2, Rationals).unwrap();
        let cmp = compare_with_jacobian(&f, 4, &Budget::default()).unwrap();
        assert_eq!(cmp.jacobian_dims, alloc::vec![1, 2, 3, 2, 1]);
        assert!(cmp.injective.iter().all(|b| *b));
    }

    #[test]
    fn quadric_degree_zero() {
        let f = parse("x0^2 + x1^2", 2, Rationals).unwrap();
        let cmp = compare_with_jacobian(&f, 0, &Budget::default()).unwrap();
        assert_eq!(cmp.jacobian_dims, alloc::vec![1]);
        assert_eq!(cmp.injective, alloc::vec![true]);
        assert!(cmp.is_isomorphism_onto_subring());
    }

    #[test]
    fn singular_potential_is_rejected() {
        let f = parse("x0^3", 2, Rationals).unwrap();
        assert!(matches!(
            lmf_ring(&f, 1, &Budget::default()),
            Err(MfError::Jacobian(JacobianError::NotSmooth))
        ));
    }
}

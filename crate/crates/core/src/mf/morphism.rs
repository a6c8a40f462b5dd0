use alloc::sync::Arc;

use super::{MatrixFactorization, MfError, PolyMatrix};
use crate::field::Field;
use crate::poly::Polynomial;

/// A closed degree-zero map `P → P'(ℓ)`: `g: K → K'(ℓ)`, `h: L → L'(ℓ)`
/// with `h·α = α'·g` and `β'·h = g·β`. `target` holds `P'` itself and
/// `twist` holds `ℓ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MfMorphism<F: Field> {
    pub source: Arc<MatrixFactorization<F>>,
    pub target: Arc<MatrixFactorization<F>>,
    pub twist: i64,
    pub g: PolyMatrix<F>,
    pub h: PolyMatrix<F>,
}

/// `s: L → K'(ℓ)`, `t: K → L'(ℓ - d)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homotopy<F: Field> {
    pub source: Arc<MatrixFactorization<F>>,
    pub target: Arc<MatrixFactorization<F>>,
    pub twist: i64,
    pub s: PolyMatrix<F>,
    pub t: PolyMatrix<F>,
}

impl<F: Field> MfMorphism<F> {
    pub fn zero(source: Arc<MatrixFactorization<F>>, target: Arc<MatrixFactorization<F>>, twist: i64) -> Self {
        let (field, nv) = (source.field(), source.num_vars());
        Self {
            g: PolyMatrix::zero(field, nv, target.rank_k(), source.rank_k()),
            h: PolyMatrix::zero(field, nv, target.rank_l(), source.rank_l()),
            source,
            target,
            twist,
        }
    }

    pub fn identity(p: Arc<MatrixFactorization<F>>) -> Self {
        let one = Polynomial::one(p.field(), p.num_vars());
        Self {
            g: PolyMatrix::scalar(&one, p.rank_k()),
            h: PolyMatrix::scalar(&one, p.rank_l()),
            source: p.clone(),
            target: p,
            twist: 0,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.g.is_zero() && self.h.is_zero()
    }

    pub fn g_degree(&self, r: usize, c: usize) -> i64 {
        self.source.twists_k().get(c) - self.target.twists_k().get(r) + self.twist
    }

    pub fn h_degree(&self, r: usize, c: usize) -> i64 {
        self.source.twists_l().get(c) - self.target.twists_l().get(r) + self.twist
    }

    pub fn validate(&self) -> Result<(), MfError> {
        let (src, tgt) = (&*self.source, &*self.target);
        if src.potential() != tgt.potential() {
            return Err(MfError::PotentialMismatch);
        }
        if (self.g.rows(), self.g.cols()) != (tgt.rank_k(), src.rank_k())
            || (self.h.rows(), self.h.cols()) != (tgt.rank_l(), src.rank_l())
        {
            return Err(MfError::InvalidMorphism("shape"));
        }
        for r in 0..self.g.rows() {
            for c in 0..self.g.cols() {
                if !self.g.get(r, c).is_homogeneous_of(self.g_degree(r, c)) {
                    return Err(MfError::InvalidMorphism("degree of a g entry"));
                }
            }
        }
        for r in 0..self.h.rows() {
            for c in 0..self.h.cols() {
                if !self.h.get(r, c).is_homogeneous_of(self.h_degree(r, c)) {
                    return Err(MfError::InvalidMorphism("degree of an h entry"));
                }
            }
        }
        let lhs = self.h.mul(src.alpha()).expect("shape");
        let rhs = tgt.alpha().mul(&self.g).expect("shape");
        if lhs != rhs {
            return Err(MfError::InvalidMorphism("h*alpha != alpha'*g"));
        }
        let lhs = tgt.beta().mul(&self.h).expect("shape");
        let rhs = self.g.mul(src.beta()).expect("shape");
        if lhs != rhs {
            return Err(MfError::InvalidMorphism("beta'*h != g*beta"));
        }
        Ok(())
    }

    /// `next(a) ∘ self` for `self: P → P'(a)` and `next: P' → P''(b)`.
    pub fn then(&self, next: &Self) -> Result<Self, MfError> {
        if *self.target != *next.source {
            return Err(MfError::NotComposable("target and source differ"));
        }
        Ok(Self {
            source: self.source.clone(),
            target: next.target.clone(),
            twist: self.twist + next.twist,
            g: next.g.mul(&self.g).expect("shape"),
            h: next.h.mul(&self.h).expect("shape"),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self, MfError> {
        if self.source != other.source || self.target != other.target || self.twist != other.twist {
            return Err(MfError::NotComposable("summands live in different Hom spaces"));
        }
        Ok(Self {
            source: self.source.clone(),
            target: self.target.clone(),
            twist: self.twist,
            g: self.g.add(&other.g).expect("shape"),
            h: self.h.add(&other.h).expect("shape"),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, MfError> {
        self.add(&other.scale(&self.source.field().from_i64(-1)))
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let field = self.source.field();
        let nv = self.source.num_vars();
        let s = Polynomial::constant(field, nv, c.clone());
        Self {
            source: self.source.clone(),
            target: self.target.clone(),
            twist: self.twist,
            g: self.g.map(|p| p.mul(&s)),
            h: self.h.map(|p| p.mul(&s)),
        }
    }
}

impl<F: Field> Homotopy<F> {
    pub fn zero(source: Arc<MatrixFactorization<F>>, target: Arc<MatrixFactorization<F>>, twist: i64) -> Self {
        let (field, nv) = (source.field(), source.num_vars());
        Self {
            s: PolyMatrix::zero(field, nv, target.rank_k(), source.rank_l()),
            t: PolyMatrix::zero(field, nv, target.rank_l(), source.rank_k()),
            source,
            target,
            twist,
        }
    }

    pub fn s_degree(&self, r: usize, c: usize) -> i64 {
        self.source.twists_l().get(c) - self.target.twists_k().get(r) + self.twist
    }

    pub fn t_degree(&self, r: usize, c: usize) -> i64 {
        self.source.twists_k().get(c) - self.target.twists_l().get(r) + self.twist
            - self.source.degree() as i64
    }

    /// `(s·α + β'·t, α'·s + t·β)`.
    pub fn boundary(&self) -> MfMorphism<F> {
        let (src, tgt) = (&*self.source, &*self.target);
        let g = self
            .s
            .mul(src.alpha())
            .and_then(|a| tgt.beta().mul(&self.t).and_then(|b| a.add(&b)))
            .expect("homotopy shape");
        let h = tgt
            .alpha()
            .mul(&self.s)
            .and_then(|a| self.t.mul(src.beta()).and_then(|b| a.add(&b)))
            .expect("homotopy shape");
        MfMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            twist: self.twist,
            g,
            h,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.s.is_zero() && self.t.is_zero()
    }
}

/// Multiplication by a homogeneous section `s`, as a map `P → P(deg s)`.
pub fn mult_by_section<F: Field>(
    p: &Arc<MatrixFactorization<F>>,
    s: &Polynomial<F>,
) -> Result<MfMorphism<F>, MfError> {
    let l = s.homogeneous_degree().ok_or(MfError::SectionNotHomogeneous)?;
    mult_by_section_twisted(p, s, l as i64)
}

/// Same as [`mult_by_section`] with the twist given explicitly, so that a
/// zero section still lands in a definite Hom space.
pub fn mult_by_section_twisted<F: Field>(
    p: &Arc<MatrixFactorization<F>>,
    s: &Polynomial<F>,
    twist: i64,
) -> Result<MfMorphism<F>, MfError> {
    if !s.is_homogeneous_of(twist) {
        return Err(MfError::SectionNotHomogeneous);
    }
    if s.num_vars() != p.num_vars() {
        return Err(MfError::PotentialMismatch);
    }
    Ok(MfMorphism {
        source: p.clone(),
        target: p.clone(),
        twist,
        g: PolyMatrix::scalar(s, p.rank_k()),
        h: PolyMatrix::scalar(s, p.rank_l()),
    })
}

/// `s = ∂_i β`, `t = ∂_i α`. Differentiating `β·α = f` and `α·β = f` gives
/// boundary `∂_i f · id` in twist `d - 1`.
pub fn chain_rule_homotopy<F: Field>(
    p: &Arc<MatrixFactorization<F>>,
    i: usize,
) -> Result<Homotopy<F>, MfError> {
    if i >= p.num_vars() {
        return Err(MfError::VariableOutOfRange(i));
    }
    let twist = p.degree() as i64 - 1;
    Ok(Homotopy {
        source: p.clone(),
        target: p.clone(),
        twist,
        s: p.beta().partial_derivative(i)?,
        t: p.alpha().partial_derivative(i)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::mf::{koszul_mf, variable_decomposition};
    use crate::poly::parse;

    fn p(s: &str, n: usize) -> Polynomial<Rationals> {
        parse(s, n, Rationals).unwrap()
    }

    fn koszul(s: &str, n: usize) -> Arc<MatrixFactorization<Rationals>> {
        let f = p(s, n);
        Arc::new(koszul_mf(&f, &variable_decomposition(&f)).unwrap())
    }

    #[test]
    fn section_one_is_identity() {
        let m = koszul("x0^3 + x1^3", 2);
        let id = mult_by_section(&m, &p("1", 2)).unwrap();
        assert_eq!(id, MfMorphism::identity(m));
    }

    #[test]
    fn section_x0_is_valid() {
        let m = koszul("x0^3", 1);
        let s = mult_by_section(&m, &p("x0", 1)).unwrap();
        assert_eq!(s.twist, 1);
        s.validate().unwrap();
    }

    #[test]
    fn sections_compose_multiplicatively() {
        let m = koszul("x0^3 + x1^3", 2);
        let (s, t) = (p("x0 + 2x1", 2), p("x1^2 - x0x1", 2));
        let a = mult_by_section(&m, &s).unwrap();
        let b = mult_by_section(&m, &t).unwrap();
        let st = mult_by_section(&m, &s.mul(&t)).unwrap();
        assert_eq!(a.then(&b).unwrap(), st);
    }

    #[test]
    fn chain_rule_rank_one() {
        for d in 2..6u32 {
            let m = koszul(&alloc::format!("x0^{d}"), 1);
            let h = chain_rule_homotopy(&m, 0).unwrap();
            assert_eq!(h.s.get(0, 0), &p(&alloc::format!("{}x0^{}", d - 1, d - 2), 1));
            assert_eq!(h.t.get(0, 0), &p("1", 1));
            let df = m.potential().partial_derivative(0).unwrap();
            assert_eq!(h.boundary(), mult_by_section(&m, &df).unwrap());
        }
    }

    #[test]
    fn chain_rule_absent_variable_is_zero() {
        let m = koszul("x0^3 + x1^3", 3);
        let h = chain_rule_homotopy(&m, 2).unwrap();
        assert!(h.is_zero());
        assert!(h.boundary().is_zero());
    }

    #[test]
    fn validation_catches_non_commuting_maps() {
        let m = koszul("x0^3 + x1^3", 2);
        let mut id = MfMorphism::identity(m);
        id.validate().unwrap();
        id.h.set(0, 0, p("2", 2));
        assert!(id.validate().is_err());
    }
}

use alloc::string::String;
use alloc::vec::Vec;

use super::{MfError, PolyMatrix};
use crate::field::Field;
use crate::poly::{Monomial, Polynomial};

/// Twists `a_j` of a graded free module `⊕ R(-a_j)`. A generator of
/// `R(-a)` sits in degree `a`, so a map `R(-a) → R(-b)` is multiplication
/// by a form of degree `a - b`, and `M(ℓ)` has twists `a_j - ℓ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TwistSequence(pub Vec<i64>);

impl TwistSequence {
    pub fn rank(&self) -> usize {
        self.0.len()
    }

    /// Twists of `M(ℓ)`.
    pub fn twist(&self, l: i64) -> Self {
        Self(self.0.iter().map(|a| a - l).collect())
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Self(v)
    }

    pub fn get(&self, i: usize) -> i64 {
        self.0[i]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Which {
    Alpha,
    Beta,
}

/// First failing cell found by [`MatrixFactorization::validate`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Violation {
    #[error("{which:?} is {rows}x{cols}, expected {expected_rows}x{expected_cols}")]
    Shape {
        which: Which,
        rows: usize,
        cols: usize,
        expected_rows: usize,
        expected_cols: usize,
    },
    #[error("{which:?}[{row}][{col}] = {entry} is not homogeneous of degree {expected}")]
    EntryDegree {
        which: Which,
        row: usize,
        col: usize,
        expected: i64,
        entry: String,
    },
    #[error("({product})[{row}][{col}] = {actual}, expected {expected}")]
    Product {
        product: &'static str,
        row: usize,
        col: usize,
        expected: String,
        actual: String,
    },
}

/// A graded matrix factorization `K --α--> L --β--> K(d)` of `f` with
/// `β·α = f·id_K` and `α·β = f·id_L`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixFactorization<F: Field> {
    potential: Polynomial<F>,
    degree: u32,
    twists_k: TwistSequence,
    twists_l: TwistSequence,
    alpha: PolyMatrix<F>,
    beta: PolyMatrix<F>,
}

impl<F: Field> MatrixFactorization<F> {
    /// Assembles an object without checking the factorization identities;
    /// call [`validate`](Self::validate) for that.
    pub fn new(
        potential: Polynomial<F>,
        twists_k: TwistSequence,
        twists_l: TwistSequence,
        alpha: PolyMatrix<F>,
        beta: PolyMatrix<F>,
    ) -> Result<Self, MfError> {
        if potential.is_zero() {
            return Err(MfError::ZeroPotential);
        }
        let degree = potential.homogeneous_degree().ok_or(MfError::NotHomogeneous)?;
        Ok(Self {
            potential,
            degree,
            twists_k,
            twists_l,
            alpha,
            beta,
        })
    }

    pub fn potential(&self) -> &Polynomial<F> {
        &self.potential
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn field(&self) -> F {
        self.potential.field()
    }

    pub fn num_vars(&self) -> usize {
        self.potential.num_vars()
    }

    pub fn twists_k(&self) -> &TwistSequence {
        &self.twists_k
    }

    pub fn twists_l(&self) -> &TwistSequence {
        &self.twists_l
    }

    pub fn alpha(&self) -> &PolyMatrix<F> {
        &self.alpha
    }

    pub fn beta(&self) -> &PolyMatrix<F> {
        &self.beta
    }

    pub fn rank_k(&self) -> usize {
        self.twists_k.rank()
    }

    pub fn rank_l(&self) -> usize {
        self.twists_l.rank()
    }

    pub fn alpha_degree(&self, r: usize, c: usize) -> i64 {
        self.twists_k.get(c) - self.twists_l.get(r)
    }

    pub fn beta_degree(&self, r: usize, c: usize) -> i64 {
        self.twists_l.get(c) - self.twists_k.get(r) + self.degree as i64
    }

    pub fn validate(&self) -> Result<(), Violation> {
        let (k, l) = (self.rank_k(), self.rank_l());
        for (which, m, er, ec) in [(Which::Alpha, &self.alpha, l, k), (Which::Beta, &self.beta, k, l)] {
            if m.rows() != er || m.cols() != ec {
                return Err(Violation::Shape {
                    which,
                    rows: m.rows(),
                    cols: m.cols(),
                    expected_rows: er,
                    expected_cols: ec,
                });
            }
        }
        for r in 0..l {
            for c in 0..k {
                let expected = self.alpha_degree(r, c);
                if !self.alpha.get(r, c).is_homogeneous_of(expected) {
                    return Err(Violation::EntryDegree {
                        which: Which::Alpha,
                        row: r,
                        col: c,
                        expected,
                        entry: self.alpha.get(r, c).render(),
                    });
                }
            }
        }
        for r in 0..k {
            for c in 0..l {
                let expected = self.beta_degree(r, c);
                if !self.beta.get(r, c).is_homogeneous_of(expected) {
                    return Err(Violation::EntryDegree {
                        which: Which::Beta,
                        row: r,
                        col: c,
                        expected,
                        entry: self.beta.get(r, c).render(),
                    });
                }
            }
        }
        let ba = self.beta.mul(&self.alpha).expect("shapes checked");
        check_scalar(&ba, &self.potential, "beta*alpha")?;
        let ab = self.alpha.mul(&self.beta).expect("shapes checked");
        check_scalar(&ab, &self.potential, "alpha*beta")?;
        Ok(())
    }

    /// `(K → L → K(d))[1] = (L --(-β)--> K(d) --(-α)--> L(d))`.
    pub fn shift(&self) -> Self {
        Self {
            potential: self.potential.clone(),
            degree: self.degree,
            twists_k: self.twists_l.clone(),
            twists_l: self.twists_k.twist(self.degree as i64),
            alpha: self.beta.neg(),
            beta: self.alpha.neg(),
        }
    }

    /// `P(ℓ)`: same matrices, every twist moved by `ℓ`.
    pub fn degree_shift(&self, l: i64) -> Self {
        Self {
            potential: self.potential.clone(),
            degree: self.degree,
            twists_k: self.twists_k.twist(l),
            twists_l: self.twists_l.twist(l),
            alpha: self.alpha.clone(),
            beta: self.beta.clone(),
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self, MfError> {
        if self.potential != other.potential {
            return Err(MfError::PotentialMismatch);
        }
        Ok(Self {
            potential: self.potential.clone(),
            degree: self.degree,
            twists_k: self.twists_k.concat(&other.twists_k),
            twists_l: self.twists_l.concat(&other.twists_l),
            alpha: self.alpha.block_diag(&other.alpha),
            beta: self.beta.block_diag(&other.beta),
        })
    }

    /// Same object after the variable renaming `x_j ↦ x_{perm[j]}`.
    pub fn rename_vars(&self, perm: &[usize]) -> Self {
        let n = self.num_vars();
        let r = |p: &Polynomial<F>| p.rename_vars(perm, n);
        Self {
            potential: r(&self.potential),
            degree: self.degree,
            twists_k: self.twists_k.clone(),
            twists_l: self.twists_l.clone(),
            alpha: self.alpha.map(r),
            beta: self.beta.map(r),
        }
    }
}

fn check_scalar<F: Field>(
    m: &PolyMatrix<F>,
    f: &Polynomial<F>,
    product: &'static str,
) -> Result<(), Violation> {
    let zero = Polynomial::zero(f.field(), f.num_vars());
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            let expected = if r == c { f } else { &zero };
            if m.get(r, c) != expected {
                return Err(Violation::Product {
                    product,
                    row: r,
                    col: c,
                    expected: expected.render(),
                    actual: m.get(r, c).render(),
                });
            }
        }
    }
    Ok(())
}

/// Tensor product of the rank-one factorizations `(a_i, b_i)` of
/// `f = Σ a_i·b_i`.
///
/// Basis vectors are subsets `S` of the pair indices; `K` holds the even
/// subsets and `L` the odd ones, both sorted by size and then bitmask. The
/// differential is `Σ_i (a_i·e_i∧ + b_i·ι_i)`, where moving past each
/// earlier index in `S` costs a sign. A basis vector `e_S` has twist
/// `-Σ_{i∈S} deg a_i + d·⌊|S|/2⌋`.
pub fn koszul_mf<F: Field>(
    f: &Polynomial<F>,
    pairs: &[(Polynomial<F>, Polynomial<F>)],
) -> Result<MatrixFactorization<F>, MfError> {
    if f.is_zero() {
        return Err(MfError::ZeroPotential);
    }
    let d = f.homogeneous_degree().ok_or(MfError::NotHomogeneous)? as i64;
    let field = f.field();
    let nv = f.num_vars();
    let k = pairs.len();
    if k == 0 || k > 20 {
        return Err(MfError::BadDecomposition("need between 1 and 20 pairs"));
    }
    let mut deg_a = Vec::with_capacity(k);
    let mut sum = Polynomial::zero(field, nv);
    for (i, (a, b)) in pairs.iter().enumerate() {
        if a.num_vars() != nv || b.num_vars() != nv {
            return Err(MfError::BadDecomposition("variable count mismatch"));
        }
        let da = match (a.homogeneous_degree(), b.homogeneous_degree()) {
            (Some(da), Some(db)) if (da + db) as i64 == d => da as i64,
            (Some(da), None) if b.is_zero() && da as i64 <= d => da as i64,
            (None, Some(db)) if a.is_zero() && db as i64 <= d => d - db as i64,
            _ => return Err(MfError::PairDegree(i)),
        };
        deg_a.push(da);
        sum = sum.add(&a.mul(b));
    }
    if &sum != f {
        return Err(MfError::BadDecomposition("sum of a_i*b_i differs from f"));
    }

    let mut subsets: Vec<u32> = (0..(1u32 << k)).collect();
    subsets.sort_by_key(|s| (s.count_ones(), *s));
    let even: Vec<u32> = subsets.iter().copied().filter(|s| s.count_ones() % 2 == 0).collect();
    let odd: Vec<u32> = subsets.iter().copied().filter(|s| s.count_ones() % 2 == 1).collect();
    let twist = |s: u32| -> i64 {
        let mut t = 0;
        for (i, da) in deg_a.iter().enumerate() {
            if s & (1 << i) != 0 {
                t -= da;
            }
        }
        t + d * (s.count_ones() as i64 / 2)
    };
    let twists_k = TwistSequence(even.iter().map(|s| twist(*s)).collect());
    let twists_l = TwistSequence(odd.iter().map(|s| twist(*s)).collect());

    // the odd differential restricted to sources `from`, targets `to`
    let build = |from: &[u32], to: &[u32]| -> PolyMatrix<F> {
        let mut m = PolyMatrix::zero(field, nv, to.len(), from.len());
        let pos: alloc::collections::BTreeMap<u32, usize> =
            to.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        for (c, &s) in from.iter().enumerate() {
            for (i, (a, b)) in pairs.iter().enumerate() {
                let bit = 1u32 << i;
                let sign_neg = (s & (bit - 1)).count_ones() % 2 == 1;
                let (target, coeff) = if s & bit == 0 { (s | bit, a) } else { (s & !bit, b) };
                let entry = if sign_neg { coeff.neg() } else { coeff.clone() };
                let r = pos[&target];
                let cur = m.get(r, c).add(&entry);
                m.set(r, c, cur);
            }
        }
        m
    };
    let alpha = build(&even, &odd);
    let beta = build(&odd, &even);
    MatrixFactorization::new(f.clone(), twists_k, twists_l, alpha, beta)
}

/// `f = Σ x_i·q_i`, where `q_i` collects the terms whose first variable is
/// `x_i`, divided by `x_i`. Indices with `q_i = 0` are skipped.
pub fn variable_decomposition<F: Field>(f: &Polynomial<F>) -> Vec<(Polynomial<F>, Polynomial<F>)> {
    let field = f.field();
    let n = f.num_vars();
    let mut qs: Vec<Polynomial<F>> = (0..n).map(|_| Polynomial::zero(field, n)).collect();
    for (m, c) in f.terms() {
        if let Some(i) = m.exponents().iter().position(|e| *e > 0) {
            let q = m.div(&Monomial::var(i, n)).expect("x_i divides m");
            qs[i].add_term(q, c.clone());
        }
    }
    qs.into_iter()
        .enumerate()
        .filter(|(_, q)| !q.is_zero())
        .map(|(i, q)| (Polynomial::var(field, i, n), q))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::poly::parse;
    use alloc::vec;

    fn p(s: &str, n: usize) -> Polynomial<Rationals> {
        parse(s, n, Rationals).unwrap()
    }

    fn rank_one(d: u32) -> MatrixFactorization<Rationals> {
        let f = p(&alloc::format!("x0^{d}"), 1);
        koszul_mf(&f, &[(p("x0", 1), p(&alloc::format!("x0^{}", d - 1), 1))]).unwrap()
    }

    #[test]
    fn rank_one_pair_validates() {
        let m = rank_one(3);
        m.validate().unwrap();
        assert_eq!(m.twists_k().0, vec![0]);
        assert_eq!(m.twists_l().0, vec![-1]);
        assert_eq!(m.alpha().get(0, 0), &p("x0", 1));
        assert_eq!(m.beta().get(0, 0), &p("x0^2", 1));
    }

    #[test]
    fn two_pair_koszul_matches_hand_computation() {
        let f = p("x0^3 + x1^3", 2);
        let m = koszul_mf(&f, &[(p("x0", 2), p("x0^2", 2)), (p("x1", 2), p("x1^2", 2))]).unwrap();
        m.validate().unwrap();
        let expected = PolyMatrix::from_rows(
            Rationals,
            2,
            vec![vec![p("x0", 2), p("-x1^2", 2)], vec![p("x1", 2), p("x0^2", 2)]],
        )
        .unwrap();
        assert_eq!(m.alpha(), &expected);
    }

    #[test]
    fn fermat_cubic_fourfold_koszul_rank() {
        let n = 6;
        let f = p("x0^3 + x1^3 + x2^3 + x3^3 + x4^3 + x5^3", n);
        let pairs = variable_decomposition(&f);
        assert_eq!(pairs.len(), 6);
        let m = koszul_mf(&f, &pairs).unwrap();
        assert_eq!((m.rank_k(), m.rank_l()), (32, 32));
        m.validate().unwrap();
    }

    #[test]
    fn tampered_entry_is_reported() {
        let f = p("x0^3 + x1^3", 2);
        let m = koszul_mf(&f, &variable_decomposition(&f)).unwrap();
        let mut beta = m.beta().clone();
        beta.set(0, 1, beta.get(0, 1).neg());
        let bad = MatrixFactorization::new(
            f.clone(),
            m.twists_k().clone(),
            m.twists_l().clone(),
            m.alpha().clone(),
            beta,
        )
        .unwrap();
        match bad.validate() {
            Err(Violation::Product { product: "beta*alpha", .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        let mut alpha = m.alpha().clone();
        alpha.set(0, 0, p("x0^2", 2));
        let bad = MatrixFactorization::new(
            f,
            m.twists_k().clone(),
            m.twists_l().clone(),
            alpha,
            m.beta().clone(),
        )
        .unwrap();
        assert!(matches!(
            bad.validate(),
            Err(Violation::EntryDegree { which: Which::Alpha, row: 0, col: 0, .. })
        ));
    }

    #[test]
    fn shift_examples() {
        let m = rank_one(3);
        let s = m.shift();
        s.validate().unwrap();
        assert_eq!(s.alpha().get(0, 0), &p("-x0^2", 1));
        assert_eq!(s.beta().get(0, 0), &p("-x0", 1));
        assert_eq!(s.twists_k().0, vec![-1]);
        assert_eq!(s.twists_l().0, vec![-3]);
        assert_eq!(s.shift(), m.degree_shift(3));
    }

    #[test]
    fn degree_shift_is_additive() {
        let m = rank_one(4);
        assert_eq!(m.degree_shift(0), m);
        assert_eq!(m.degree_shift(1).degree_shift(2), m.degree_shift(3));
        m.degree_shift(5).validate().unwrap();
    }

    #[test]
    fn decomposition_must_sum_to_f() {
        let f = p("x0^3 + x1^3", 2);
        assert!(matches!(
            koszul_mf(&f, &[(p("x0", 2), p("x0^2", 2))]),
            Err(MfError::BadDecomposition(_))
        ));
        assert!(matches!(
            koszul_mf(&f, &[(p("x0", 2), p("x0", 2))]),
            Err(MfError::PairDegree(0))
        ));
    }
}

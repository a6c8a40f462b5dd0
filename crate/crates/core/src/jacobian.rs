//! The Jacobian ring `J = k[x_0..x_{n+1}] / (∂_0 f, ..., ∂_{n+1} f)` of a
//! homogeneous polynomial, one graded piece at a time.
//!
//! The ideal is generated in the single degree `d - 1`, so the degree-`ℓ`
//! piece of the ideal is the row space of `{m·∂_i f : deg m = ℓ - d + 1}`
//! over the grevlex-descending monomial basis of `R_ℓ`. Pivots land on
//! leading monomials; the remaining monomials form the quotient basis.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::budget::{Budget, ResourceExceeded};
use crate::field::Field;
use crate::linalg::{self, Echelon, SparseVec};
use crate::poly::{monomial_basis, Monomial, PolyError, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum JacobianError {
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("need at least 2 variables, got {0}")]
    TooFewVariables(usize),
    #[error("need degree at least 2, got {0}")]
    DegreeTooLow(u32),
    #[error("Jacobian ring is not Artinian (hypersurface is singular)")]
    NotSmooth,
    #[error("degree {degree} outside the computed range 0..={max}")]
    DegreeOutOfRange { degree: i64, max: u32 },
    #[error("rings differ in shape: {0}")]
    Mismatch(&'static str),
    #[error("substitution matrix is singular")]
    SingularMatrix,
    #[error("Gorenstein check failed: {0}")]
    Gorenstein(GorensteinViolation),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Resource(#[from] ResourceExceeded),
}

/// A counterexample to one of the Gorenstein properties.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GorensteinViolation {
    #[error("dim J_sigma = {0}, expected 1")]
    SocleDimension(usize),
    #[error("dim J_{degree} = {dim} above the socle degree")]
    NonzeroAbove { degree: u32, dim: usize },
    #[error("dim J_{degree} = {dim} but dim J_{mirror} = {mirror_dim}")]
    Asymmetric {
        degree: u32,
        dim: usize,
        mirror: u32,
        mirror_dim: usize,
    },
    #[error("pairing in degree {degree} has rank {rank} < {dim}")]
    Degenerate { degree: u32, rank: usize, dim: usize },
}

/// One graded piece `R_ℓ → J_ℓ`.
#[derive(Debug, Clone)]
pub struct GradedPiece<F: Field> {
    basis: Vec<Monomial>,
    index: BTreeMap<Monomial, usize>,
    ideal: Echelon<F>,
    /// Columns of the quotient basis, increasing.
    quotient_cols: Vec<usize>,
    /// Column → position in the quotient basis.
    quotient_pos: BTreeMap<usize, usize>,
}

impl<F: Field> GradedPiece<F> {
    pub fn monomials(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn ideal_rank(&self) -> usize {
        self.ideal.rank()
    }

    pub fn quotient_basis(&self) -> Vec<Monomial> {
        self.quotient_cols.iter().map(|&c| self.basis[c].clone()).collect()
    }

    pub fn dim(&self) -> usize {
        self.quotient_cols.len()
    }

    fn to_sparse(&self, p: &Polynomial<F>) -> SparseVec<F::Elem> {
        let mut v: SparseVec<F::Elem> = p
            .terms()
            .map(|(m, c)| (self.index[m], c.clone()))
            .collect();
        v.sort_by_key(|(c, _)| *c);
        v
    }

    fn normal_form(&self, p: &Polynomial<F>) -> Vec<F::Elem> {
        let field = p.field();
        let reduced = self.ideal.reduce(&self.to_sparse(p));
        let mut out = vec![field.zero(); self.quotient_cols.len()];
        for (c, x) in reduced {
            out[self.quotient_pos[&c]] = x;
        }
        out
    }
}

#[derive(Debug, Clone)]
pub struct JacobianRing<F: Field> {
    f: Polynomial<F>,
    degree: u32,
    sigma: u32,
    partials: Vec<Polynomial<F>>,
    pieces: Vec<GradedPiece<F>>,
}

/// Products `J_ℓ × J_{σ-ℓ} → J_σ` in the quotient bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairingCertificate<F: Field> {
    pub degree: u32,
    pub complementary_degree: u32,
    pub row_basis: Vec<Monomial>,
    pub col_basis: Vec<Monomial>,
    pub socle: Monomial,
    pub matrix: Vec<Vec<F::Elem>>,
    pub rank: usize,
    pub nondegenerate: bool,
}

#[derive(Debug, Clone)]
pub struct GorensteinReport<F: Field> {
    pub sigma: u32,
    pub hilbert_function: Vec<usize>,
    pub socle: Monomial,
    pub certificates: Vec<PairingCertificate<F>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsoVerdict {
    /// Some invariant differs, so the rings are not isomorphic.
    NotIsomorphic(&'static str),
    /// All computed invariants agree; nothing is claimed.
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantComparison {
    pub hilbert: (Vec<usize>, Vec<usize>),
    /// Rank of `J_1 ⊗ J_ℓ → J_{ℓ+1}` for `ℓ = 0..σ`.
    pub multiplication_ranks: (Vec<usize>, Vec<usize>),
    pub first_hilbert_mismatch: Option<usize>,
    pub first_rank_mismatch: Option<usize>,
    pub verdict: IsoVerdict,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearIsoCertificate {
    /// Generators `∂_i f_1` whose substituted image is not in the target ideal.
    pub failing_generators: Vec<usize>,
    pub hilbert_equal: bool,
    pub is_isomorphism: bool,
}

impl<F: Field> JacobianRing<F> {
    pub fn build(f: &Polynomial<F>) -> Result<Self, JacobianError> {
        Self::build_with_budget(f, &Budget::default())
    }

    pub fn build_with_budget(f: &Polynomial<F>, budget: &Budget) -> Result<Self, JacobianError> {
        if f.is_zero() {
            return Err(JacobianError::ZeroPolynomial);
        }
        let d = f.homogeneous_degree().ok_or(JacobianError::NotHomogeneous)?;
        let n = f.num_vars();
        if n < 2 {
            return Err(JacobianError::TooFewVariables(n));
        }
        if d < 2 {
            return Err(JacobianError::DegreeTooLow(d));
        }
        let sigma = n as u32 * (d - 2);
        let partials = (0..n)
            .map(|i| f.partial_derivative(i))
            .collect::<Result<Vec<_>, _>>()?;
        let top = sigma + d;
        let mut pieces = Vec::with_capacity(top as usize + 1);
        for l in 0..=top {
            let basis = monomial_basis(n, l);
            let multipliers = if l + 1 >= d {
                monomial_basis(n, l + 1 - d)
            } else {
                Vec::new()
            };
            budget.check(
                "Jacobian graded piece",
                (basis.len() as u64) * (multipliers.len() as u64 * n as u64),
            )?;
            let index: BTreeMap<Monomial, usize> =
                basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
            let field = f.field();
            let mut ideal = Echelon::new(field, basis.len());
            for m in &multipliers {
                for g in &partials {
                    let row = g.mul_monomial(m, &field.one());
                    let mut v: SparseVec<F::Elem> =
                        row.terms().map(|(mm, c)| (index[mm], c.clone())).collect();
                    v.sort_by_key(|(c, _)| *c);
                    ideal.insert(&v);
                }
            }
            let quotient_cols: Vec<usize> =
                (0..basis.len()).filter(|c| !ideal.is_pivot(*c)).collect();
            let quotient_pos = quotient_cols.iter().enumerate().map(|(i, c)| (*c, i)).collect();
            pieces.push(GradedPiece {
                basis,
                index,
                ideal,
                quotient_cols,
                quotient_pos,
            });
        }
        Ok(Self {
            f: f.clone(),
            degree: d,
            sigma,
            partials,
            pieces,
        })
    }

    pub fn polynomial(&self) -> &Polynomial<F> {
        &self.f
    }

    pub fn num_vars(&self) -> usize {
        self.f.num_vars()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// `(n+2)(d-2)`, the top degree of `J` when `f` is smooth.
    pub fn sigma(&self) -> u32 {
        self.sigma
    }

    pub fn max_degree(&self) -> u32 {
        self.sigma + self.degree
    }

    pub fn partials(&self) -> &[Polynomial<F>] {
        &self.partials
    }

    pub fn piece(&self, l: u32) -> Option<&GradedPiece<F>> {
        self.pieces.get(l as usize)
    }

    /// `dim J_ℓ` for `ℓ = 0..=σ+d`.
    pub fn hilbert_function(&self) -> Vec<usize> {
        self.pieces.iter().map(GradedPiece::dim).collect()
    }

    pub fn dim(&self, l: u32) -> usize {
        self.piece(l).map_or(0, GradedPiece::dim)
    }

    pub fn quotient_basis(&self, l: u32) -> Vec<Monomial> {
        self.piece(l).map(GradedPiece::quotient_basis).unwrap_or_default()
    }

    /// Artinian over the window `(σ, σ+d]`, which suffices for an ideal
    /// generated in degree `d-1`.
    pub fn is_smooth(&self) -> bool {
        (self.sigma + 1..=self.sigma + self.degree).all(|l| self.dim(l) == 0)
    }

    /// Coordinates of `p` over the quotient basis of `J_ℓ`; zero exactly
    /// when `p` lies in the ideal. `p` must be zero or homogeneous of `ℓ`.
    pub fn normal_form_in(&self, p: &Polynomial<F>, l: u32) -> Result<Vec<F::Elem>, JacobianError> {
        if !p.is_homogeneous_of(l as i64) {
            return Err(JacobianError::NotHomogeneous);
        }
        let piece = self.piece(l).ok_or(JacobianError::DegreeOutOfRange {
            degree: l as i64,
            max: self.max_degree(),
        })?;
        Ok(piece.normal_form(p))
    }

    /// Normal form of a nonzero homogeneous polynomial, with its degree.
    pub fn normal_form(&self, p: &Polynomial<F>) -> Result<(u32, Vec<F::Elem>), JacobianError> {
        if p.is_zero() {
            return Err(JacobianError::ZeroPolynomial);
        }
        let l = p.homogeneous_degree().ok_or(JacobianError::NotHomogeneous)?;
        Ok((l, self.normal_form_in(p, l)?))
    }

    /// Polynomial with the given quotient-basis coordinates in degree `ℓ`.
    pub fn from_coordinates(&self, l: u32, coords: &[F::Elem]) -> Polynomial<F> {
        let field = self.f.field();
        let basis = self.quotient_basis(l);
        Polynomial::from_terms(
            field,
            self.num_vars(),
            basis.into_iter().zip(coords.iter().cloned()),
        )
    }

    fn require_smooth(&self) -> Result<(), JacobianError> {
        if self.is_smooth() {
            Ok(())
        } else {
            Err(JacobianError::NotSmooth)
        }
    }

    pub fn pairing_matrix(&self, l: u32) -> Result<PairingCertificate<F>, JacobianError> {
        self.require_smooth()?;
        if l > self.sigma {
            return Err(JacobianError::DegreeOutOfRange {
                degree: l as i64,
                max: self.sigma,
            });
        }
        let field = self.f.field();
        let socle_basis = self.quotient_basis(self.sigma);
        if socle_basis.len() != 1 {
            return Err(JacobianError::Gorenstein(GorensteinViolation::SocleDimension(
                socle_basis.len(),
            )));
        }
        let rows = self.quotient_basis(l);
        let cols = self.quotient_basis(self.sigma - l);
        let mut matrix = Vec::with_capacity(rows.len());
        for a in &rows {
            let mut line = Vec::with_capacity(cols.len());
            for b in &cols {
                let prod = Polynomial::monomial(field, field.one(), a.mul(b));
                let nf = self.normal_form_in(&prod, self.sigma)?;
                line.push(nf[0].clone());
            }
            debug_assert_eq!(line.len(), cols.len());
            matrix.push(line);
        }
        let rank = linalg::dense_rank(field, &matrix);
        let nondegenerate = rank == rows.len() && rank == cols.len();
        Ok(PairingCertificate {
            degree: l,
            complementary_degree: self.sigma - l,
            row_basis: rows,
            col_basis: cols,
            socle: socle_basis[0].clone(),
            matrix,
            rank,
            nondegenerate,
        })
    }

    pub fn gorenstein_report(&self) -> Result<GorensteinReport<F>, JacobianError> {
        let sigma = self.sigma;
        let hilbert = self.hilbert_function();
        let socle_dim = hilbert[sigma as usize];
        if socle_dim != 1 {
            return Err(JacobianError::Gorenstein(GorensteinViolation::SocleDimension(
                socle_dim,
            )));
        }
        for l in sigma + 1..=self.max_degree() {
            if hilbert[l as usize] != 0 {
                return Err(JacobianError::Gorenstein(GorensteinViolation::NonzeroAbove {
                    degree: l,
                    dim: hilbert[l as usize],
                }));
            }
        }
        for l in 0..=sigma {
            let mirror = sigma - l;
            if hilbert[l as usize] != hilbert[mirror as usize] {
                return Err(JacobianError::Gorenstein(GorensteinViolation::Asymmetric {
                    degree: l,
                    dim: hilbert[l as usize],
                    mirror,
                    mirror_dim: hilbert[mirror as usize],
                }));
            }
        }
        let mut certificates = Vec::with_capacity(sigma as usize + 1);
        for l in 0..=sigma {
            let cert = self.pairing_matrix(l)?;
            if !cert.nondegenerate {
                return Err(JacobianError::Gorenstein(GorensteinViolation::Degenerate {
                    degree: l,
                    rank: cert.rank,
                    dim: hilbert[l as usize],
                }));
            }
            certificates.push(cert);
        }
        Ok(GorensteinReport {
            sigma,
            hilbert_function: hilbert,
            socle: self.quotient_basis(sigma)[0].clone(),
            certificates,
        })
    }

    /// Ranks of the multiplication maps `J_1 ⊗ J_ℓ → J_{ℓ+1}`, `ℓ = 0..σ`.
    pub fn multiplication_ranks(&self) -> Vec<usize> {
        let field = self.f.field();
        let linear = self.quotient_basis(1);
        (0..self.sigma)
            .map(|l| {
                let target = self.dim(l + 1);
                let mut rows = Vec::new();
                for u in &linear {
                    for v in self.quotient_basis(l) {
                        let prod = Polynomial::monomial(field, field.one(), u.mul(&v));
                        rows.push(
                            self.normal_form_in(&prod, l + 1)
                                .unwrap_or_else(|_| vec![field.zero(); target]),
                        );
                    }
                }
                if rows.is_empty() {
                    0
                } else {
                    linalg::dense_rank(field, &rows)
                }
            })
            .collect()
    }
}

/// Coefficients of `((1 - t^{d-1}) / (1 - t))^{num_vars}` in degrees
/// `0..=σ+d`, the Hilbert function of a complete intersection of
/// `num_vars` forms of degree `d-1`.
pub fn hilbert_series_oracle(num_vars: usize, d: u32) -> Vec<u64> {
    let sigma = num_vars as u32 * d.saturating_sub(2);
    let len = (sigma + d) as usize + 1;
    let mut coeffs = vec![0u64; len];
    coeffs[0] = 1;
    let factor_len = d.saturating_sub(1) as usize;
    for _ in 0..num_vars {
        let mut next = vec![0u64; len];
        for (i, c) in coeffs.iter().enumerate() {
            if *c == 0 {
                continue;
            }
            for j in 0..factor_len {
                if i + j < len {
                    next[i + j] += c;
                }
            }
        }
        coeffs = next;
    }
    coeffs
}

pub fn compare_invariants<F: Field>(
    j1: &JacobianRing<F>,
    j2: &JacobianRing<F>,
) -> InvariantComparison {
    let h1 = j1.hilbert_function();
    let h2 = j2.hilbert_function();
    let len = h1.len().max(h2.len());
    let first_hilbert_mismatch =
        (0..len).find(|&l| h1.get(l).copied().unwrap_or(0) != h2.get(l).copied().unwrap_or(0));
    let r1 = j1.multiplication_ranks();
    let r2 = j2.multiplication_ranks();
    let rlen = r1.len().max(r2.len());
    let first_rank_mismatch =
        (0..rlen).find(|&l| r1.get(l).copied().unwrap_or(0) != r2.get(l).copied().unwrap_or(0));
    let verdict = if first_hilbert_mismatch.is_some() {
        IsoVerdict::NotIsomorphic("Hilbert functions differ")
    } else if first_rank_mismatch.is_some() {
        IsoVerdict::NotIsomorphic("multiplication rank profiles differ")
    } else {
        IsoVerdict::Inconclusive
    };
    InvariantComparison {
        hilbert: (h1, h2),
        multiplication_ranks: (r1, r2),
        first_hilbert_mismatch,
        first_rank_mismatch,
        verdict,
    }
}

/// Checks that `p ↦ p(M·x)` sends `(∂f_1)` into `(∂f_2)`. Both ideals are
/// generated in degree `d-1` and substitution is a ring map, so checking the
/// generators covers every degree; equal Hilbert functions then make the
/// induced map `J_1 → J_2` an isomorphism.
pub fn certify_linear_iso<F: Field>(
    j1: &JacobianRing<F>,
    j2: &JacobianRing<F>,
    matrix: &[Vec<F::Elem>],
) -> Result<LinearIsoCertificate, JacobianError> {
    if j1.num_vars() != j2.num_vars() {
        return Err(JacobianError::Mismatch("number of variables"));
    }
    if j1.degree() != j2.degree() {
        return Err(JacobianError::Mismatch("degree"));
    }
    let field = j1.f.field();
    let n = j1.num_vars();
    if matrix.len() != n || matrix.iter().any(|r| r.len() != n) {
        return Err(PolyError::DimensionMismatch {
            rows: matrix.len(),
            cols: matrix.first().map_or(0, Vec::len),
            expected: n,
        }
        .into());
    }
    if field.is_zero(&linalg::determinant(field, matrix)) {
        return Err(JacobianError::SingularMatrix);
    }
    let gen_degree = j1.degree() - 1;
    let mut failing = Vec::new();
    for (i, g) in j1.partials().iter().enumerate() {
        let image = g.linear_substitute(matrix)?;
        let nf = j2.normal_form_in(&image, gen_degree)?;
        if nf.iter().any(|c| !field.is_zero(c)) {
            failing.push(i);
        }
    }
    let hilbert_equal = j1.hilbert_function() == j2.hilbert_function();
    Ok(LinearIsoCertificate {
        is_isomorphism: failing.is_empty() && hilbert_equal,
        failing_generators: failing,
        hilbert_equal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::poly::parse;

    fn ring(s: &str, n: usize) -> JacobianRing<Rationals> {
        JacobianRing::build(&parse(s, n, Rationals).unwrap()).unwrap()
    }

    fn fermat(n: usize, d: u32) -> String {
        let terms: Vec<String> = (0..n).map(|i| alloc::format!("x{i}^{d}")).collect();
        terms.join(" + ")
    }

    use alloc::string::String;

    #[test]
    fn fermat_cubic_fourfold_hilbert_function() {
        let j = ring(&fermat(6, 3), 6);
        assert_eq!(j.sigma(), 6);
        assert_eq!(&j.hilbert_function()[..7], &[1, 6, 15, 20, 15, 6, 1]);
        assert!(j.is_smooth());
    }

    #[test]
    fn quadric_and_binary_quartic() {
        let j = ring("x0^2 + x1^2", 2);
        assert_eq!(j.sigma(), 0);
        assert_eq!(j.hilbert_function()[0], 1);
        assert!(j.is_smooth());
        let j = ring("x0^4 + x1^4", 2);
        assert_eq!(j.sigma(), 4);
        assert_eq!(&j.hilbert_function()[..5], &[1, 2, 3, 2, 1]);
    }

    #[test]
    fn singular_inputs() {
        assert!(!ring("x0^3 + x1^3", 3).is_smooth());
        assert!(!ring("x0^2", 2).is_smooth());
        let cone = ring("x0^3 + x1^3", 3);
        assert_eq!(cone.pairing_matrix(0).unwrap_err(), JacobianError::NotSmooth);
    }

    #[test]
    fn build_errors() {
        let q = Rationals;
        assert_eq!(
            JacobianRing::build(&parse("x0^2 + x1", 2, q).unwrap()).unwrap_err(),
            JacobianError::NotHomogeneous
        );
        assert_eq!(
            JacobianRing::build(&parse("0", 2, q).unwrap()).unwrap_err(),
            JacobianError::ZeroPolynomial
        );
        assert_eq!(
            JacobianRing::build(&parse("x0^3", 1, q).unwrap()).unwrap_err(),
            JacobianError::TooFewVariables(1)
        );
    }

    #[test]
    fn normal_form_examples() {
        let j = ring(&fermat(6, 3), 6);
        let q = Rationals;
        let d0 = j.partials()[0].clone();
        assert!(j.normal_form(&d0).unwrap().1.iter().all(|c| *c == q.zero()));
        let m = parse("x0*x1*x2", 6, q).unwrap();
        let (l, nf) = j.normal_form(&m).unwrap();
        assert_eq!(l, 3);
        assert_eq!(j.from_coordinates(3, &nf), m);
        let m = parse("x0^2*x1", 6, q).unwrap();
        assert!(j.normal_form(&m).unwrap().1.iter().all(|c| *c == q.zero()));
        assert_eq!(
            j.normal_form(&parse("x0 + x1^2", 6, q).unwrap()).unwrap_err(),
            JacobianError::NotHomogeneous
        );
    }

    #[test]
    fn pairing_examples() {
        let j = ring(&fermat(6, 3), 6);
        let c0 = j.pairing_matrix(0).unwrap();
        assert_eq!(c0.matrix, vec![vec![Rationals.one()]]);
        let c3 = j.pairing_matrix(3).unwrap();
        assert_eq!(c3.rank, 20);
        assert!(c3.nondegenerate);
        // permutation matrix: one nonzero per row, equal to one
        for row in &c3.matrix {
            assert_eq!(row.iter().filter(|c| **c != Rationals.zero()).count(), 1);
        }
        let j = ring("x0^4 + x1^4", 2);
        let c1 = j.pairing_matrix(1).unwrap();
        assert_eq!(c1.rank, 2);
        // x0 pairs with x0*x1^2 only: antidiagonal shape in grevlex bases
        assert_eq!(c1.row_basis.len(), 2);
        assert_eq!(c1.matrix[0][0], Rationals.zero());
        assert_eq!(c1.matrix[1][1], Rationals.zero());
    }

    #[test]
    fn gorenstein_reports() {
        let j = ring(&fermat(6, 3), 6);
        let rep = j.gorenstein_report().unwrap();
        assert_eq!(rep.socle, Monomial::new(vec![1; 6]));
        let j = ring(&fermat(4, 4), 4);
        assert_eq!(j.sigma(), 8);
        assert_eq!(j.dim(4), 19);
        j.gorenstein_report().unwrap();
    }

    #[test]
    fn perturbed_cubic_has_fermat_hilbert_function() {
        let s = alloc::format!("{} + x0*x1*x2", fermat(6, 3));
        let j = ring(&s, 6);
        assert!(j.is_smooth());
        assert_eq!(&j.hilbert_function()[..7], &[1, 6, 15, 20, 15, 6, 1]);
        j.gorenstein_report().unwrap();
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(&hilbert_series_oracle(6, 3)[..7], &[1, 6, 15, 20, 15, 6, 1]);
        assert_eq!(&hilbert_series_oracle(2, 4)[..5], &[1, 2, 3, 2, 1]);
        assert_eq!(&hilbert_series_oracle(3, 3)[..4], &[1, 3, 3, 1]);
        assert!(hilbert_series_oracle(3, 3)[4..].iter().all(|c| *c == 0));
    }

    #[test]
    fn compare_examples() {
        let a = ring(&fermat(6, 3), 6);
        let b = ring(&fermat(4, 4), 4);
        let cmp = compare_invariants(&a, &b);
        assert_eq!(cmp.first_hilbert_mismatch, Some(1));
        assert!(matches!(cmp.verdict, IsoVerdict::NotIsomorphic(_)));
        let c = ring(&alloc::format!("{} + x0*x1*x2", fermat(6, 3)), 6);
        let cmp = compare_invariants(&a, &c);
        assert_eq!(cmp.first_hilbert_mismatch, None);
    }

    #[test]
    fn linear_iso_examples() {
        let q = Rationals;
        let n = 6;
        let f = parse(&fermat(n, 3), n, q).unwrap();
        let j = JacobianRing::build(&f).unwrap();
        let id: Vec<Vec<_>> = (0..n)
            .map(|i| (0..n).map(|k| q.from_i64((i == k) as i64)).collect())
            .collect();
        assert!(certify_linear_iso(&j, &j, &id).unwrap().is_isomorphism);
        let perm: Vec<Vec<_>> = (0..n)
            .map(|i| (0..n).map(|k| q.from_i64((k == (i + 1) % n) as i64)).collect())
            .collect();
        assert!(certify_linear_iso(&j, &j, &perm).unwrap().is_isomorphism);
        let mut diag = id.clone();
        diag[0][0] = q.from_i64(2);
        assert!(certify_linear_iso(&j, &j, &diag).unwrap().is_isomorphism);
        let singular = vec![vec![q.zero(); n]; n];
        assert_eq!(
            certify_linear_iso(&j, &j, &singular).unwrap_err(),
            JacobianError::SingularMatrix
        );
        // a shear does not preserve the Fermat ideal
        let mut shear = id.clone();
        shear[0][1] = q.one();
        let cert = certify_linear_iso(&j, &j, &shear).unwrap();
        assert!(!cert.is_isomorphism);
        assert_eq!(cert.failing_generators, vec![0]);
        // but J(f) → J(f∘M) always works
        let g = f.linear_substitute(&shear).unwrap();
        let jg = JacobianRing::build(&g).unwrap();
        assert!(certify_linear_iso(&j, &jg, &shear).unwrap().is_isomorphism);
    }
}

//! Sparse multivariate polynomials over an exact [`Field`].
//!
//! Terms live in a `BTreeMap` keyed by grevlex-ordered [`Monomial`]s, so
//! iteration is ascending and rendering walks it backwards. Zero
//! coefficients are never stored.

mod monomial;
mod parse;

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::field::{Field, FieldError};

pub use monomial::{binomial, monomial_basis, Monomial};
pub use parse::parse;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("variable x{index} at byte {pos} is out of range for {num_vars} variables")]
    VariableOutOfRange {
        index: usize,
        num_vars: usize,
        pos: usize,
    },
    #[error("variable index {index} out of range for {num_vars} variables")]
    IndexOutOfRange { index: usize, num_vars: usize },
    #[error("matrix is {rows}x{cols}, expected {expected}x{expected}")]
    DimensionMismatch {
        rows: usize,
        cols: usize,
        expected: usize,
    },
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial<F: Field> {
    field: F,
    num_vars: usize,
    terms: BTreeMap<Monomial, F::Elem>,
}

impl<F: Field> Polynomial<F> {
    pub fn zero(field: F, num_vars: usize) -> Self {
        Self {
            field,
            num_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: F, num_vars: usize, c: F::Elem) -> Self {
        Self::monomial(field, c, Monomial::one(num_vars))
    }

    pub fn one(field: F, num_vars: usize) -> Self {
        Self::constant(field, num_vars, field.one())
    }

    pub fn var(field: F, i: usize, num_vars: usize) -> Self {
        Self::monomial(field, field.one(), Monomial::var(i, num_vars))
    }

    pub fn monomial(field: F, c: F::Elem, m: Monomial) -> Self {
        let mut p = Self::zero(field, m.num_vars());
        p.add_term(m, c);
        p
    }

    pub fn from_terms(
        field: F,
        num_vars: usize,
        terms: impl IntoIterator<Item = (Monomial, F::Elem)>,
    ) -> Self {
        let mut p = Self::zero(field, num_vars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn field(&self) -> F {
        self.field
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending grevlex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &F::Elem)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> F::Elem {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn add_term(&mut self, m: Monomial, c: F::Elem) {
        debug_assert_eq!(m.num_vars(), self.num_vars);
        if self.field.is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let sum = self.field.add(existing, &c);
                if self.field.is_zero(&sum) {
                    self.terms.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    /// The common degree of all terms; `None` for zero or mixed degrees.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys();
        let d = it.next()?.degree();
        if it.all(|m| m.degree() == d) {
            Some(d)
        } else {
            None
        }
    }

    /// Zero counts as homogeneous of every degree.
    pub fn is_homogeneous_of(&self, d: i64) -> bool {
        self.terms.keys().all(|m| m.degree() as i64 == d)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), self.field.neg(c));
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            field: self.field,
            num_vars: self.num_vars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), self.field.neg(c)))
                .collect(),
        }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        if self.field.is_zero(c) {
            return Self::zero(self.field, self.num_vars);
        }
        Self {
            field: self.field,
            num_vars: self.num_vars,
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), self.field.mul(a, c)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.field, self.num_vars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), self.field.mul(c1, c2));
            }
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &F::Elem) -> Self {
        let mut out = Self::zero(self.field, self.num_vars);
        for (m1, c1) in &self.terms {
            out.add_term(m1.mul(m), self.field.mul(c1, c));
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.field, self.num_vars);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn partial_derivative(&self, i: usize) -> Result<Self, PolyError> {
        if i >= self.num_vars {
            return Err(PolyError::IndexOutOfRange {
                index: i,
                num_vars: self.num_vars,
            });
        }
        let mut out = Self::zero(self.field, self.num_vars);
        for (m, c) in &self.terms {
            let e = m.exponents()[i];
            if e == 0 {
                continue;
            }
            let coeff = self.field.mul(c, &self.field.from_i64(e as i64));
            out.add_term(m.with_exponent(i, e - 1), coeff);
        }
        Ok(out)
    }

    /// Substitute polynomial `images[j]` for variable `j`. All images share
    /// a target variable count.
    pub fn compose(&self, images: &[Polynomial<F>], target_vars: usize) -> Self {
        debug_assert_eq!(images.len(), self.num_vars);
        let mut out = Self::zero(self.field, target_vars);
        // cache powers per variable, they repeat across terms
        let mut powers: Vec<Vec<Polynomial<F>>> = images
            .iter()
            .map(|p| alloc::vec![Polynomial::one(self.field, target_vars), p.clone()])
            .collect();
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(self.field, target_vars, c.clone());
            for (j, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[j].len() <= e as usize {
                    let next = powers[j].last().unwrap().mul(&images[j]);
                    powers[j].push(next);
                }
                term = term.mul(&powers[j][e as usize]);
            }
            out = out.add(&term);
        }
        out
    }

    /// `p(M·x)`: variable `x_j` is replaced by `Σ_k M[j][k]·x_k`.
    pub fn linear_substitute(&self, matrix: &[Vec<F::Elem>]) -> Result<Self, PolyError> {
        let n = self.num_vars;
        if matrix.len() != n || matrix.iter().any(|row| row.len() != n) {
            return Err(PolyError::DimensionMismatch {
                rows: matrix.len(),
                cols: matrix.first().map_or(0, Vec::len),
                expected: n,
            });
        }
        let images: Vec<Polynomial<F>> = matrix
            .iter()
            .map(|row| {
                Polynomial::from_terms(
                    self.field,
                    n,
                    row.iter()
                        .enumerate()
                        .map(|(k, c)| (Monomial::var(k, n), c.clone())),
                )
            })
            .collect();
        Ok(self.compose(&images, n))
    }

    /// Re-index into `target_vars` variables, sending `x_j` to `x_{map[j]}`.
    pub fn rename_vars(&self, map: &[usize], target_vars: usize) -> Self {
        let mut out = Self::zero(self.field, target_vars);
        for (m, c) in &self.terms {
            let mut e = alloc::vec![0u32; target_vars];
            for (j, &ej) in m.exponents().iter().enumerate() {
                e[map[j]] += ej;
            }
            out.add_term(Monomial::new(e), c.clone());
        }
        out
    }

    /// Coefficients over a basis of monomials (missing monomials read zero).
    pub fn coordinates(&self, basis: &[Monomial]) -> Vec<F::Elem> {
        basis.iter().map(|m| self.coefficient(m)).collect()
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        if self.terms.is_empty() {
            s.push('0');
            return s;
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = self.field.is_negative(c);
            let abs = if negative { self.field.neg(c) } else { c.clone() };
            if k == 0 {
                if negative {
                    s.push('-');
                }
            } else {
                s.push_str(if negative { " - " } else { " + " });
            }
            let is_const = m.degree() == 0;
            if !self.field.is_one(&abs) || is_const {
                s.push_str(&self.field.render(&abs));
                if !is_const {
                    s.push('*');
                }
            }
            let mut first = true;
            for (j, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    s.push('*');
                }
                first = false;
                s.push_str(&alloc::format!("x{j}"));
                if e > 1 {
                    s.push_str(&alloc::format!("^{e}"));
                }
            }
        }
        s
    }
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({})", self.render())
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use alloc::vec;

    fn p(s: &str, n: usize) -> Polynomial<Rationals> {
        parse(s, n, Rationals).unwrap()
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(p("x0^3 + x1^3", 2).partial_derivative(0).unwrap(), p("3*x0^2", 2));
        assert!(p("x0^3", 2).partial_derivative(1).unwrap().is_zero());
        assert_eq!(p("x0*x1*x2", 3).partial_derivative(2).unwrap(), p("x0*x1", 3));
        assert!(p("x0", 1).partial_derivative(1).is_err());
    }

    #[test]
    fn substitution_examples() {
        let q = Rationals;
        let one = q.one();
        let zero = q.zero();
        let id = vec![vec![one.clone(), zero.clone()], vec![zero.clone(), one.clone()]];
        let swap = vec![vec![zero.clone(), one.clone()], vec![one.clone(), zero.clone()]];
        let shear = vec![vec![one.clone(), one.clone()], vec![zero.clone(), one.clone()]];
        assert_eq!(p("x0^2", 2).linear_substitute(&id).unwrap(), p("x0^2", 2));
        assert_eq!(p("x0^2", 2).linear_substitute(&swap).unwrap(), p("x1^2", 2));
        assert_eq!(
            p("x0*x1", 2).linear_substitute(&shear).unwrap(),
            p("x0*x1 + x1^2", 2)
        );
        assert!(p("x0", 2).linear_substitute(&[vec![one]]).is_err());
    }

    #[test]
    fn homogeneity() {
        assert_eq!(p("3*x0*x1^2 - x2^3", 3).homogeneous_degree(), Some(3));
        assert_eq!(p("x0 + x1^2", 2).homogeneous_degree(), None);
        assert_eq!(p("0", 4).homogeneous_degree(), None);
    }

    #[test]
    fn render_is_canonical() {
        assert_eq!(p("x1^3 + x0^3", 2).render(), "x0^3 + x1^3");
        assert_eq!(p("-x2^3 + 3 x0 x1^2", 3).render(), "3*x0*x1^2 - x2^3");
        assert_eq!(p("1/2*x0 - 2/4", 1).render(), "1/2*x0 - 1/2");
        assert_eq!(p("0", 4).render(), "0");
    }
}

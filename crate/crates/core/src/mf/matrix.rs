use alloc::vec::Vec;
use core::fmt;

use crate::field::Field;
use crate::poly::{PolyError, Polynomial};

/// Dense row-major matrix of polynomials.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix<F: Field> {
    field: F,
    num_vars: usize,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial<F>>,
}

impl<F: Field> PolyMatrix<F> {
    pub fn zero(field: F, num_vars: usize, rows: usize, cols: usize) -> Self {
        Self {
            field,
            num_vars,
            rows,
            cols,
            entries: (0..rows * cols).map(|_| Polynomial::zero(field, num_vars)).collect(),
        }
    }

    /// `s·I`
    pub fn scalar(s: &Polynomial<F>, n: usize) -> Self {
        let mut m = Self::zero(s.field(), s.num_vars(), n, n);
        for i in 0..n {
            m.set(i, i, s.clone());
        }
        m
    }

    pub fn from_rows(field: F, num_vars: usize, rows: Vec<Vec<Polynomial<F>>>) -> Option<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return None;
        }
        if rows.iter().flatten().any(|p| p.num_vars() != num_vars || p.field() != field) {
            return None;
        }
        Some(Self {
            field,
            num_vars,
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Polynomial<F> {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, p: Polynomial<F>) {
        self.entries[r * self.cols + c] = p;
    }

    pub fn entries(&self) -> &[Polynomial<F>] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Polynomial::is_zero)
    }

    /// `None` on a shape mismatch.
    pub fn mul(&self, other: &Self) -> Option<Self> {
        if self.cols != other.rows {
            return None;
        }
        let mut out = Self::zero(self.field, self.num_vars, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    out.entries[idx] = out.entries[idx].add(&a.mul(b));
                }
            }
        }
        Some(out)
    }

    pub fn field(&self) -> F {
        self.field
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn add(&self, other: &Self) -> Option<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return None;
        }
        Some(Self {
            field: self.field,
            num_vars: self.num_vars,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a.add(b)).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Option<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(Polynomial::neg)
    }

    pub fn map(&self, f: impl Fn(&Polynomial<F>) -> Polynomial<F>) -> Self {
        Self {
            field: self.field,
            num_vars: self.num_vars,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn partial_derivative(&self, i: usize) -> Result<Self, PolyError> {
        let entries = self
            .entries
            .iter()
            .map(|p| p.partial_derivative(i))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self {
            field: self.field,
            num_vars: self.num_vars,
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    /// Block diagonal `[[self, 0], [0, other]]`.
    pub fn block_diag(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.field, self.num_vars, self.rows + other.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c).clone());
            }
        }
        for r in 0..other.rows {
            for c in 0..other.cols {
                out.set(self.rows + r, self.cols + c, other.get(r, c).clone());
            }
        }
        out
    }
}

impl<F: Field> fmt::Debug for PolyMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "PolyMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ; ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

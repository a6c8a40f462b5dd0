//! Exact sparse linear algebra over a [`Field`].
//!
//! Vectors are sorted `(column, value)` lists without zeros. [`Echelon`] is
//! an incrementally built row-echelon basis whose pivots are the smallest
//! column of each row; callers order their columns so that the smallest
//! index is the leading monomial. [`SparseMatrix`] splits a system into
//! connected components (columns linked through shared rows) before
//! eliminating, which keeps multigraded systems tiny.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::field::Field;

pub type SparseVec<E> = Vec<(usize, E)>;

pub fn dense_to_sparse<F: Field>(field: &F, dense: &[F::Elem]) -> SparseVec<F::Elem> {
    dense
        .iter()
        .enumerate()
        .filter(|(_, c)| !field.is_zero(c))
        .map(|(i, c)| (i, c.clone()))
        .collect()
}

pub fn sparse_to_dense<F: Field>(field: &F, v: &SparseVec<F::Elem>, len: usize) -> Vec<F::Elem> {
    let mut out = vec![field.zero(); len];
    for (i, c) in v {
        out[*i] = c.clone();
    }
    out
}

/// `a + s·b`
pub fn axpy<F: Field>(
    field: &F,
    a: &SparseVec<F::Elem>,
    s: &F::Elem,
    b: &SparseVec<F::Elem>,
) -> SparseVec<F::Elem> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            let v = field.mul(s, &b[j].1);
            if !field.is_zero(&v) {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = field.add(&a[i].1, &field.mul(s, &b[j].1));
            if !field.is_zero(&v) {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale_vec<F: Field>(field: &F, v: &SparseVec<F::Elem>, s: &F::Elem) -> SparseVec<F::Elem> {
    if field.is_zero(s) {
        return Vec::new();
    }
    v.iter().map(|(i, c)| (*i, field.mul(c, s))).collect()
}

/// Row-echelon basis of a subspace of `F^ncols`. Every stored row has
/// leading coefficient one and is zero on the pivots of earlier rows.
#[derive(Debug, Clone)]
pub struct Echelon<F: Field> {
    field: F,
    ncols: usize,
    rows: Vec<SparseVec<F::Elem>>,
    pivot_row: BTreeMap<usize, usize>,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: F, ncols: usize) -> Self {
        Self {
            field,
            ncols,
            rows: Vec::new(),
            pivot_row: BTreeMap::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row.contains_key(&col)
    }

    /// Pivot columns in increasing order.
    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivot_row.keys().copied()
    }

    pub fn rows(&self) -> &[SparseVec<F::Elem>] {
        &self.rows
    }

    /// The unique representative of `v + span` vanishing on every pivot.
    pub fn reduce(&self, v: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        self.reduce_tracked(v).0
    }

    /// Like [`reduce`](Self::reduce), also returning the multiples of each
    /// stored row that were subtracted: `v = reduced + Σ c_r·row_r`.
    pub fn reduce_tracked(&self, v: &SparseVec<F::Elem>) -> (SparseVec<F::Elem>, Vec<(usize, F::Elem)>) {
        let f = &self.field;
        let mut acc: BTreeMap<usize, F::Elem> = v.iter().cloned().collect();
        let mut used = Vec::new();
        let mut cursor = 0usize;
        loop {
            let next = acc
                .range(cursor..)
                .find(|(c, _)| self.pivot_row.contains_key(c))
                .map(|(c, x)| (*c, x.clone()));
            let Some((col, coef)) = next else { break };
            let r = self.pivot_row[&col];
            for (j, x) in &self.rows[r] {
                let delta = f.mul(&coef, x);
                match acc.get_mut(j) {
                    Some(existing) => {
                        let nv = f.sub(existing, &delta);
                        if f.is_zero(&nv) {
                            acc.remove(j);
                        } else {
                            *existing = nv;
                        }
                    }
                    None => {
                        acc.insert(*j, f.neg(&delta));
                    }
                }
            }
            used.push((r, coef));
            cursor = col + 1;
        }
        (acc.into_iter().collect(), used)
    }

    /// Adds `v` to the span; returns the new row index if the rank grew.
    pub fn insert(&mut self, v: &SparseVec<F::Elem>) -> Option<usize> {
        let reduced = self.reduce(v);
        let (lead, lc) = reduced.first().cloned()?;
        let inv = self.field.inv(&lc)?;
        let row = scale_vec(&self.field, &reduced, &inv);
        self.rows.push(row);
        let idx = self.rows.len() - 1;
        self.pivot_row.insert(lead, idx);
        Some(idx)
    }

    pub fn contains(&self, v: &SparseVec<F::Elem>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Back-substitute so every row vanishes on every other pivot; rows
    /// end up sorted by pivot.
    pub fn into_reduced(mut self) -> Self {
        let f = self.field;
        let order: Vec<(usize, usize)> = self.pivot_row.iter().map(|(c, r)| (*c, *r)).collect();
        // process from the last pivot backwards, clearing it from earlier rows
        for &(col, r) in order.iter().rev() {
            let pivot = self.rows[r].clone();
            for &(_, other) in order.iter() {
                if other == r {
                    continue;
                }
                let coef = self.rows[other]
                    .iter()
                    .find(|(j, _)| *j == col)
                    .map(|(_, x)| x.clone());
                if let Some(c) = coef {
                    self.rows[other] = axpy(&f, &self.rows[other], &f.neg(&c), &pivot);
                }
            }
        }
        let mut rows = Vec::with_capacity(order.len());
        let mut pivot_row = BTreeMap::new();
        for (k, (col, r)) in order.into_iter().enumerate() {
            rows.push(core::mem::take(&mut self.rows[r]));
            pivot_row.insert(col, k);
        }
        self.rows = rows;
        self.pivot_row = pivot_row;
        self
    }

    /// Coordinates of `v` (which must lie in the span) over the stored rows
    /// of a reduced echelon: the entries of `v` on the pivot columns.
    pub fn coordinates_reduced(&self, v: &SparseVec<F::Elem>) -> Vec<F::Elem> {
        let mut out = vec![self.field.zero(); self.rows.len()];
        for (c, x) in v {
            if let Some(&r) = self.pivot_row.get(c) {
                out[r] = x.clone();
            }
        }
        out
    }
}

/// Rows of a sparse matrix with `ncols` columns.
#[derive(Debug, Clone)]
pub struct SparseMatrix<F: Field> {
    pub field: F,
    pub ncols: usize,
    pub rows: Vec<SparseVec<F::Elem>>,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }
    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// One independent block: global row indices and global column indices
/// (sorted). Rows with empty support form their own block with no columns.
pub struct Component {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

impl<F: Field> SparseMatrix<F> {
    pub fn new(field: F, ncols: usize) -> Self {
        Self {
            field,
            ncols,
            rows: Vec::new(),
        }
    }

    pub fn push_row(&mut self, row: SparseVec<F::Elem>) {
        self.rows.push(row);
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn components(&self) -> Vec<Component> {
        let mut uf = UnionFind::new(self.ncols);
        for row in &self.rows {
            if let Some((first, _)) = row.first() {
                for (c, _) in row.iter().skip(1) {
                    uf.union(*first, *c);
                }
            }
        }
        let mut by_root: BTreeMap<usize, Component> = BTreeMap::new();
        for c in 0..self.ncols {
            let r = uf.find(c);
            by_root
                .entry(r)
                .or_insert_with(|| Component {
                    rows: Vec::new(),
                    cols: Vec::new(),
                })
                .cols
                .push(c);
        }
        let mut empty_rows = Vec::new();
        for (i, row) in self.rows.iter().enumerate() {
            match row.first() {
                Some((c, _)) => {
                    let r = uf.find(*c);
                    if let Some(comp) = by_root.get_mut(&r) {
                        comp.rows.push(i);
                    }
                }
                None => empty_rows.push(i),
            }
        }
        let mut out: Vec<Component> = by_root.into_values().collect();
        if !empty_rows.is_empty() {
            out.push(Component {
                rows: empty_rows,
                cols: Vec::new(),
            });
        }
        out
    }

    fn local_echelon(&self, comp: &Component, extra: Option<&[F::Elem]>) -> Echelon<F> {
        let local: BTreeMap<usize, usize> =
            comp.cols.iter().enumerate().map(|(k, c)| (*c, k)).collect();
        let width = comp.cols.len() + usize::from(extra.is_some());
        let mut ech = Echelon::new(self.field, width);
        for &r in &comp.rows {
            let mut v: SparseVec<F::Elem> = self.rows[r]
                .iter()
                .map(|(c, x)| (local[c], x.clone()))
                .collect();
            if let Some(b) = extra {
                if !self.field.is_zero(&b[r]) {
                    v.push((comp.cols.len(), b[r].clone()));
                }
            }
            ech.insert(&v);
        }
        ech
    }

    pub fn rank(&self) -> usize {
        self.components()
            .iter()
            .map(|comp| self.local_echelon(comp, None).rank())
            .sum()
    }

    /// A basis of `{x : A·x = 0}`, one vector per free column.
    pub fn kernel(&self) -> Vec<SparseVec<F::Elem>> {
        let f = &self.field;
        let mut basis = Vec::new();
        for comp in self.components() {
            if comp.cols.is_empty() {
                continue;
            }
            let ech = self.local_echelon(&comp, None).into_reduced();
            // columns of each reduced row, indexed by free column
            let mut free_entries: BTreeMap<usize, Vec<(usize, F::Elem)>> = BTreeMap::new();
            for (pivot, r) in ech.pivot_row.iter() {
                for (j, x) in ech.rows[*r].iter().skip(1) {
                    free_entries.entry(*j).or_default().push((*pivot, x.clone()));
                }
            }
            for (k, &gcol) in comp.cols.iter().enumerate() {
                if ech.is_pivot(k) {
                    continue;
                }
                let mut v: SparseVec<F::Elem> = vec![(gcol, f.one())];
                if let Some(entries) = free_entries.get(&k) {
                    for (pivot, x) in entries {
                        v.push((comp.cols[*pivot], f.neg(x)));
                    }
                }
                v.sort_by_key(|(c, _)| *c);
                basis.push(v);
            }
        }
        basis.sort_by_key(|v| v.first().map(|(c, _)| *c));
        basis
    }

    /// Some `x` with `A·x = b` (free columns set to zero), or `None`.
    pub fn solve(&self, b: &[F::Elem]) -> Option<SparseVec<F::Elem>> {
        debug_assert_eq!(b.len(), self.rows.len());
        let f = &self.field;
        let mut x: SparseVec<F::Elem> = Vec::new();
        for comp in self.components() {
            if comp.rows.iter().all(|r| f.is_zero(&b[*r])) {
                continue;
            }
            if comp.cols.is_empty() {
                return None;
            }
            let aug = comp.cols.len();
            let ech = self.local_echelon(&comp, Some(b)).into_reduced();
            if ech.is_pivot(aug) {
                return None;
            }
            for (pivot, r) in ech.pivot_row.iter() {
                if let Some((_, val)) = ech.rows[*r].iter().find(|(j, _)| *j == aug) {
                    x.push((comp.cols[*pivot], val.clone()));
                }
            }
        }
        x.sort_by_key(|(c, _)| *c);
        Some(x)
    }

    pub fn mul_vec(&self, x: &SparseVec<F::Elem>) -> Vec<F::Elem> {
        let f = &self.field;
        let xs: BTreeMap<usize, &F::Elem> = x.iter().map(|(c, v)| (*c, v)).collect();
        self.rows
            .iter()
            .map(|row| {
                let mut acc = f.zero();
                for (c, a) in row {
                    if let Some(v) = xs.get(c) {
                        acc = f.add(&acc, &f.mul(a, v));
                    }
                }
                acc
            })
            .collect()
    }
}

/// Rank of a dense matrix given row by row.
pub fn dense_rank<F: Field>(field: F, rows: &[Vec<F::Elem>]) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut ech = Echelon::new(field, ncols);
    for r in rows {
        ech.insert(&dense_to_sparse(&field, r));
    }
    ech.rank()
}

/// Exact determinant by Gaussian elimination.
pub fn determinant<F: Field>(field: F, m: &[Vec<F::Elem>]) -> F::Elem {
    let n = m.len();
    let mut a: Vec<Vec<F::Elem>> = m.to_vec();
    let mut det = field.one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !field.is_zero(&a[r][col])) else {
            return field.zero();
        };
        if p != col {
            a.swap(p, col);
            det = field.neg(&det);
        }
        det = field.mul(&det, &a[col][col]);
        let inv = field.inv(&a[col][col]).expect("nonzero pivot");
        for r in col + 1..n {
            if field.is_zero(&a[r][col]) {
                continue;
            }
            let factor = field.mul(&a[r][col], &inv);
            for c in col..n {
                let v = field.sub(&a[r][c], &field.mul(&factor, &a[col][c]));
                a[r][c] = v;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use num_rational::BigRational;

    fn q(v: i64) -> BigRational {
        Rationals.from_i64(v)
    }

    fn row(entries: &[(usize, i64)]) -> SparseVec<BigRational> {
        entries.iter().map(|(c, v)| (*c, q(*v))).collect()
    }

    #[test]
    fn rank_and_kernel_of_small_matrix() {
        // x0 + x1 = 0, x1 + x2 = 0, x0 - x2 = 0 (dependent), x3 free
        let mut m = SparseMatrix::new(Rationals, 4);
        m.push_row(row(&[(0, 1), (1, 1)]));
        m.push_row(row(&[(1, 1), (2, 1)]));
        m.push_row(row(&[(0, 1), (2, -1)]));
        assert_eq!(m.rank(), 2);
        let k = m.kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.mul_vec(v).iter().all(|x| *x == q(0)));
        }
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let mut m = SparseMatrix::new(Rationals, 3);
        m.push_row(row(&[(0, 2), (1, 1)]));
        m.push_row(row(&[(2, 3)]));
        let b = vec![q(5), q(6)];
        let x = m.solve(&b).unwrap();
        assert_eq!(m.mul_vec(&x), b);

        let mut bad = SparseMatrix::new(Rationals, 2);
        bad.push_row(row(&[(0, 1), (1, 1)]));
        bad.push_row(row(&[(0, 2), (1, 2)]));
        assert!(bad.solve(&[q(1), q(3)]).is_none());
        // an empty equation with a nonzero right-hand side
        let mut empty = SparseMatrix::new(Rationals, 1);
        empty.push_row(Vec::new());
        assert!(empty.solve(&[q(1)]).is_none());
        assert!(empty.solve(&[q(0)]).is_some());
    }

    #[test]
    fn echelon_reduction_is_canonical() {
        let mut e = Echelon::new(Rationals, 3);
        e.insert(&row(&[(0, 1), (1, 1)]));
        e.insert(&row(&[(1, 1), (2, 1)]));
        let v = row(&[(0, 1)]);
        // x0 ≡ -x1 ≡ x2 modulo the span
        assert_eq!(e.reduce(&v), row(&[(2, 1)]));
        let reduced = e.clone().into_reduced();
        assert_eq!(reduced.reduce(&v), row(&[(2, 1)]));
        assert!(e.contains(&row(&[(0, 1), (2, -1)])));
    }

    #[test]
    fn determinant_small() {
        let m = vec![vec![q(2), q(-1)], vec![q(-1), q(2)]];
        assert_eq!(determinant(Rationals, &m), q(3));
        let fp = PrimeField::new(5).unwrap();
        let m = vec![vec![2u64, 4], vec![4, 2]];
        assert_eq!(determinant(fp, &m), fp.from_i64(-12));
    }
}

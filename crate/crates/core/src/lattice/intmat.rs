//! Dense integer and rational matrices with exact normal forms.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// `None` for ragged input.
    pub fn from_rows(rows: &[Vec<i64>]) -> Option<Self> {
        let big: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| r.iter().map(|x| BigInt::from(*x)).collect())
            .collect();
        Self::from_big_rows(big)
    }

    pub fn from_big_rows(rows: Vec<Vec<BigInt>>) -> Option<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return None;
        }
        Some(Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    /// `None` on a shape mismatch.
    pub fn mul(&self, other: &Self) -> Option<Self> {
        if self.cols != other.rows {
            return None;
        }
        let mut out = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] += a * other.get(k, j);
                }
            }
        }
        Some(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        (0..self.rows)
            .map(|r| self.row(r).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn neg(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| -x).collect(),
        }
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|r| (0..r).all(|c| self.get(r, c) == self.get(c, r)))
    }

    pub fn block_diag(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.rows + other.rows, self.cols + other.cols);
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

    /// Bareiss fraction-free elimination; zero for non-square input.
    pub fn det(&self) -> BigInt {
        if !self.is_square() {
            return BigInt::zero();
        }
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.to_rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }

    pub fn to_rational(&self) -> RatMatrix {
        RatMatrix::from_rows(
            (0..self.rows)
                .map(|r| self.row(r).iter().map(|x| BigRational::from_integer(x.clone())).collect())
                .collect(),
        )
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
        }
        write!(f, "]")
    }
}

/// Dense rational matrix, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatMatrix {
    pub rows: Vec<Vec<BigRational>>,
}

impl RatMatrix {
    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Self {
        Self { rows }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    pub fn identity(n: usize) -> Self {
        Self::from_rows(
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| if i == j { BigRational::one() } else { BigRational::zero() })
                        .collect()
                })
                .collect(),
        )
    }

    pub fn transpose(&self) -> Self {
        let (r, c) = (self.nrows(), self.ncols());
        Self::from_rows((0..c).map(|j| (0..r).map(|i| self.rows[i][j].clone()).collect()).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (r, k, c) = (self.nrows(), self.ncols(), other.ncols());
        debug_assert_eq!(k, other.nrows());
        let mut out = vec![vec![BigRational::zero(); c]; r];
        for i in 0..r {
            for t in 0..k {
                let a = &self.rows[i][t];
                if a.is_zero() {
                    continue;
                }
                for j in 0..c {
                    out[i][j] += a * &other.rows[t][j];
                }
            }
        }
        Self::from_rows(out)
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Vec<BigRational> {
        self.rows
            .iter()
            .map(|row| row.iter().zip(v).fold(BigRational::zero(), |acc, (a, b)| acc + a * b))
            .collect()
    }

    /// Gauss-Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        let n = self.nrows();
        if self.ncols() != n {
            return None;
        }
        let mut a = self.rows.clone();
        let mut inv = Self::identity(n).rows;
        for c in 0..n {
            let p = (c..n).find(|&r| !a[r][c].is_zero())?;
            a.swap(p, c);
            inv.swap(p, c);
            let piv = a[c][c].clone();
            for j in 0..n {
                a[c][j] = &a[c][j] / &piv;
                inv[c][j] = &inv[c][j] / &piv;
            }
            for r in 0..n {
                if r == c || a[r][c].is_zero() {
                    continue;
                }
                let factor = a[r][c].clone();
                for j in 0..n {
                    let t = &factor * &a[c][j];
                    a[r][j] -= t;
                    let t = &factor * &inv[c][j];
                    inv[r][j] -= t;
                }
            }
        }
        Some(Self::from_rows(inv))
    }

    pub fn det(&self) -> BigRational {
        let n = self.nrows();
        let mut a = self.rows.clone();
        let mut det = BigRational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
                return BigRational::zero();
            };
            if p != c {
                a.swap(p, c);
                det = -det;
            }
            let piv = a[c][c].clone();
            det *= &piv;
            for r in c + 1..n {
                if a[r][c].is_zero() {
                    continue;
                }
                let factor = &a[r][c] / &piv;
                for j in c..n {
                    let t = &factor * &a[c][j];
                    a[r][j] -= t;
                }
            }
        }
        det
    }

    /// Integer matrix when every entry is integral.
    pub fn to_integer(&self) -> Option<IntMatrix> {
        let rows = self
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| x.is_integer().then(|| x.to_integer()))
                    .collect::<Option<Vec<_>>>()
            })
            .collect::<Option<Vec<_>>>()?;
        IntMatrix::from_big_rows(rows)
    }
}

/// Smith normal form `U·A·V = diag(d_1, d_2, ...)` with `d_i | d_{i+1}`,
/// `d_i ≥ 0` and `U`, `V` unimodular.
#[derive(Debug, Clone)]
pub struct Smith {
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub diagonal: Vec<BigInt>,
}

pub fn smith_normal_form(a: &IntMatrix) -> Smith {
    let (m, n) = (a.rows(), a.cols());
    let mut a = a.to_rows();
    let mut u = IntMatrix::identity(m).to_rows();
    let mut v = IntMatrix::identity(n).to_rows();

    fn row_op(x: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
        let src_row = x[src].clone();
        for (d, s) in x[dst].iter_mut().zip(src_row) {
            *d -= q * s;
        }
    }
    fn col_op(x: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
        for row in x.iter_mut() {
            let s = row[src].clone();
            row[dst] -= q * s;
        }
    }
    fn col_swap(x: &mut [Vec<BigInt>], i: usize, j: usize) {
        for row in x.iter_mut() {
            row.swap(i, j);
        }
    }

    for t in 0..m.min(n) {
        loop {
            // smallest nonzero entry of the trailing block to the corner
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if a[i][j].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                let diagonal = (0..m.min(n)).map(|k| a[k][k].clone()).collect();
                return finish(u, v, diagonal);
            };
            a.swap(t, bi);
            u.swap(t, bi);
            col_swap(&mut a, t, bj);
            col_swap(&mut v, t, bj);

            let mut clean = true;
            for i in t + 1..m {
                let q = a[i][t].div_floor(&a[t][t]);
                if !q.is_zero() {
                    row_op(&mut a, i, t, &q);
                    row_op(&mut u, i, t, &q);
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..n {
                let q = a[t][j].div_floor(&a[t][t]);
                if !q.is_zero() {
                    col_op(&mut a, j, t, &q);
                    col_op(&mut v, j, t, &q);
                }
                clean &= a[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match bad {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    row_op(&mut a, t, i, &minus_one);
                    row_op(&mut u, t, i, &minus_one);
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -x.clone();
            }
            for x in u[t].iter_mut() {
                *x = -x.clone();
            }
        }
    }
    let diagonal = (0..m.min(n)).map(|k| a[k][k].clone()).collect();
    finish(u, v, diagonal)
}

fn finish(u: Vec<Vec<BigInt>>, v: Vec<Vec<BigInt>>, diagonal: Vec<BigInt>) -> Smith {
    Smith {
        u: IntMatrix::from_big_rows(u).expect("square"),
        v: IntMatrix::from_big_rows(v).expect("square"),
        diagonal,
    }
}

/// Basis (as rows, upper triangular with positive pivots) of the Z-span of
/// integer row vectors. Zero rows are dropped.
pub fn hermite_rows(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let n = a.first().map_or(0, Vec::len);
    let mut pivot_row = 0;
    for c in 0..n {
        loop {
            let best = (pivot_row..a.len())
                .filter(|&i| !a[i][c].is_zero())
                .min_by(|&i, &j| a[i][c].abs().cmp(&a[j][c].abs()));
            let Some(b) = best else { break };
            a.swap(pivot_row, b);
            let mut done = true;
            for i in pivot_row + 1..a.len() {
                if a[i][c].is_zero() {
                    continue;
                }
                let q = a[i][c].div_floor(&a[pivot_row][c]);
                let p = a[pivot_row].clone();
                for (x, y) in a[i].iter_mut().zip(&p) {
                    *x -= &q * y;
                }
                done &= a[i][c].is_zero();
            }
            if done {
                if a[pivot_row][c].is_negative() {
                    for x in a[pivot_row].iter_mut() {
                        *x = -x.clone();
                    }
                }
                // reduce entries above the pivot
                let p = a[pivot_row].clone();
                for i in 0..pivot_row {
                    let q = a[i][c].div_floor(&p[c]);
                    for (x, y) in a[i].iter_mut().zip(&p) {
                        *x -= &q * y;
                    }
                }
                pivot_row += 1;
                break;
            }
        }
    }
    a.truncate(pivot_row);
    a
}

/// `lcm` of all denominators.
pub fn common_denominator(v: &[BigRational]) -> BigInt {
    v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Representative of `x mod m` in `[0, m)`.
pub fn rational_mod(x: &BigRational, m: &BigInt) -> BigRational {
    let m = BigRational::from_integer(m.clone());
    let q = (x / &m).floor();
    x - q * m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_smith(rows: &[Vec<i64>]) -> Smith {
        let a = IntMatrix::from_rows(rows).unwrap();
        let s = smith_normal_form(&a);
        let d = s.u.mul(&a).unwrap().mul(&s.v).unwrap();
        for r in 0..d.rows() {
            for c in 0..d.cols() {
                let expected = if r == c { s.diagonal[r].clone() } else { BigInt::zero() };
                assert_eq!(d.get(r, c), &expected);
            }
        }
        assert!(s.u.det().abs().is_one());
        assert!(s.v.det().abs().is_one());
        for w in s.diagonal.windows(2) {
            assert!(w[0].is_zero() && w[1].is_zero() || w[1].is_multiple_of(&w[0]));
        }
        s
    }

    #[test]
    fn smith_of_a2() {
        let s = check_smith(&[vec![2, -1], vec![-1, 2]]);
        assert_eq!(s.diagonal, vec![BigInt::from(1), BigInt::from(3)]);
    }

    #[test]
    fn smith_needs_divisibility_fix() {
        let s = check_smith(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(s.diagonal, vec![BigInt::from(1), BigInt::from(6)]);
        check_smith(&[vec![4, 6, 2], vec![6, 10, 0], vec![2, 0, 8]]);
    }

    #[test]
    fn bareiss_determinant() {
        let a = IntMatrix::from_rows(&[vec![0, 1, 2], vec![3, 4, 5], vec![6, 7, 9]]).unwrap();
        assert_eq!(a.det(), BigInt::from(-3));
        assert_eq!(a.to_rational().det(), BigRational::from_integer(BigInt::from(-3)));
    }

    #[test]
    fn hermite_spans() {
        let rows: Vec<Vec<BigInt>> = [[2, 0], [0, 2], [1, 1]]
            .iter()
            .map(|r| r.iter().map(|x| BigInt::from(*x)).collect())
            .collect();
        let h = hermite_rows(&rows);
        assert_eq!(h.len(), 2);
        let det = &h[0][0] * &h[1][1] - &h[0][1] * &h[1][0];
        assert_eq!(det.abs(), BigInt::from(2));
    }

    #[test]
    fn rational_inverse_round_trip() {
        let a = IntMatrix::from_rows(&[vec![2, -1], vec![-1, 2]]).unwrap().to_rational();
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), RatMatrix::identity(2));
    }
}

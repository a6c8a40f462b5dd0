use alloc::vec::Vec;

use super::{koszul_mf, MatrixFactorization, MfError};
use crate::field::Field;
use crate::poly::{Monomial, Polynomial};

/// The Koszul factorization `Q_0` of `w = f(y) - f(x)` over `2n` variables,
/// `x_i` at index `i` and `y_i` at index `n + i`, for the decomposition
/// `w = Σ (y_i - x_i)·q_i` with the difference quotients
///
/// `q_i = (f(y_0..y_i, x_{i+1}..) - f(y_0..y_{i-1}, x_i..)) / (y_i - x_i)`.
///
/// Every index contributes a pair, even when `q_i = 0`.
pub fn stabilized_diagonal<F: Field>(f: &Polynomial<F>) -> Result<MatrixFactorization<F>, MfError> {
    if f.is_zero() {
        return Err(MfError::ZeroPotential);
    }
    f.homogeneous_degree().ok_or(MfError::NotHomogeneous)?;
    let field = f.field();
    let n = f.num_vars();
    let nv = 2 * n;
    let xs: Vec<usize> = (0..n).collect();
    let ys: Vec<usize> = (n..nv).collect();
    let fx = f.rename_vars(&xs, nv);
    let fy = f.rename_vars(&ys, nv);
    let w = fy.sub(&fx);

    let mut pairs = Vec::with_capacity(n);
    for i in 0..n {
        let a = Polynomial::var(field, n + i, nv).sub(&Polynomial::var(field, i, nv));
        let mut q = Polynomial::zero(field, nv);
        for (m, c) in f.terms() {
            let e = m.exponents();
            if e[i] == 0 {
                continue;
            }
            let mut base = alloc::vec![0u32; nv];
            for j in 0..n {
                if j < i {
                    base[n + j] = e[j];
                } else if j > i {
                    base[j] = e[j];
                }
            }
            for k in 0..e[i] {
                let mut ex = base.clone();
                ex[n + i] = k;
                ex[i] = e[i] - 1 - k;
                q.add_term(Monomial::new(ex), c.clone());
            }
        }
        pairs.push((a, q));
    }
    koszul_mf(&w, &pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::poly::parse;

    #[test]
    fn difference_of_squares() {
        let f = parse("x0^2", 1, Rationals).unwrap();
        let q = stabilized_diagonal(&f).unwrap();
        q.validate().unwrap();
        assert_eq!((q.rank_k(), q.rank_l()), (1, 1));
        assert_eq!(q.alpha().get(0, 0), &parse("x1 - x0", 2, Rationals).unwrap());
        assert_eq!(q.beta().get(0, 0), &parse("x1 + x0", 2, Rationals).unwrap());
    }

    #[test]
    fn two_variable_cubic() {
        let f = parse("x0^3 + x1^3", 2, Rationals).unwrap();
        let q = stabilized_diagonal(&f).unwrap();
        q.validate().unwrap();
        assert_eq!((q.rank_k(), q.rank_l()), (2, 2));
        // y0 = x2, y1 = x3
        let q0 = parse("x2^2 + x2x0 + x0^2", 4, Rationals).unwrap();
        assert_eq!(q.beta().get(0, 0), &q0);
        assert_eq!(q.potential(), &parse("x2^3 + x3^3 - x0^3 - x1^3", 4, Rationals).unwrap());
    }

    #[test]
    fn mixed_terms_validate() {
        let f = parse("x0^3 + x1^3 + x2^3 + x0x1x2 - 2x0^2x2", 3, Rationals).unwrap();
        stabilized_diagonal(&f).unwrap().validate().unwrap();
    }
}

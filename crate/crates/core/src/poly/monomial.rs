use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

/// Exponent vector ordered by graded reverse lexicographic comparison.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exponents: Vec<u32>,
}

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Self { exponents }
    }

    pub fn one(num_vars: usize) -> Self {
        Self {
            exponents: vec![0; num_vars],
        }
    }

    pub fn var(i: usize, num_vars: usize) -> Self {
        let mut m = Self::one(num_vars);
        m.exponents[i] = 1;
        m
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn num_vars(&self) -> usize {
        self.exponents.len()
    }

    pub fn degree(&self) -> u32 {
        self.exponents.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.num_vars(), other.num_vars());
        Monomial {
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut exponents = Vec::with_capacity(self.exponents.len());
        for (a, b) in self.exponents.iter().zip(&other.exponents) {
            exponents.push(a.checked_sub(*b)?);
        }
        Some(Monomial { exponents })
    }

    pub fn with_exponent(&self, i: usize, e: u32) -> Monomial {
        let mut m = self.clone();
        m.exponents[i] = e;
        m
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        // reverse lex: the last differing variable decides, smaller exponent wins
        for (a, b) in self.exponents.iter().zip(&other.exponents).rev() {
            match a.cmp(b) {
                Ordering::Equal => continue,
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
            }
        }
        self.exponents.len().cmp(&other.exponents.len())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of `degree` in `num_vars` variables, grevlex-descending.
pub fn monomial_basis(num_vars: usize, degree: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    if num_vars == 0 {
        if degree == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    let mut current = vec![0u32; num_vars];
    fill(&mut current, 0, degree, &mut out);
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

fn fill(current: &mut [u32], pos: usize, remaining: u32, out: &mut Vec<Monomial>) {
    if pos + 1 == current.len() {
        current[pos] = remaining;
        out.push(Monomial::new(current.to_vec()));
        return;
    }
    for e in (0..=remaining).rev() {
        current[pos] = e;
        fill(current, pos + 1, remaining - e, out);
    }
    current[pos] = 0;
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1u64;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grevlex_small_cases() {
        // x0 > x1 > x2 in degree one
        let b = monomial_basis(3, 1);
        assert_eq!(
            b,
            vec![Monomial::var(0, 3), Monomial::var(1, 3), Monomial::var(2, 3)]
        );
        // x0*x2 < x1^2 in grevlex, unlike lex
        let x0x2 = Monomial::new(vec![1, 0, 1]);
        let x1sq = Monomial::new(vec![0, 2, 0]);
        assert!(x1sq > x0x2);
    }

    #[test]
    fn basis_counts() {
        assert_eq!(monomial_basis(6, 3).len(), 56);
        assert_eq!(binomial(8, 3), 56);
        assert_eq!(monomial_basis(2, 0), vec![Monomial::one(2)]);
        for n in 1..5usize {
            for d in 0..6u32 {
                assert_eq!(
                    monomial_basis(n, d).len() as u64,
                    binomial(n as u64 - 1 + d as u64, d as u64)
                );
            }
        }
    }

    #[test]
    fn basis_is_strictly_descending() {
        let b = monomial_basis(4, 4);
        for w in b.windows(2) {
            assert_eq!(w[0].cmp(&w[1]), Ordering::Greater);
        }
    }
}

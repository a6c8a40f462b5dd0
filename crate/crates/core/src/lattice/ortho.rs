use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use super::{IntMatrix, Isometry, Lattice, LatticeError};

const MAX_RANK: usize = 8;

/// Integer vectors of norm `n` under a positive definite Gram matrix, from
/// the box `|v_k|² ≤ n·(G⁻¹)_kk`.
fn vectors_of_norm(gram: &IntMatrix, inv_diag: &[num_rational::BigRational], n: &BigInt) -> Vec<Vec<BigInt>> {
    let r = gram.rows();
    let bounds: Vec<i64> = inv_diag
        .iter()
        .map(|d| {
            let t = (num_rational::BigRational::from_integer(n.clone()) * d).floor().to_integer();
            t.sqrt().to_i64().unwrap_or(i64::MAX)
        })
        .collect();
    let mut out = Vec::new();
    let mut cur = alloc::vec![0i64; r];
    fn rec(
        k: usize,
        cur: &mut Vec<i64>,
        bounds: &[i64],
        gram: &IntMatrix,
        n: &BigInt,
        out: &mut Vec<Vec<BigInt>>,
    ) {
        if k == cur.len() {
            let v: Vec<BigInt> = cur.iter().map(|x| BigInt::from(*x)).collect();
            let gv = gram.mul_vec(&v);
            let norm: BigInt = v.iter().zip(&gv).map(|(a, b)| a * b).sum();
            if &norm == n {
                out.push(v);
            }
            return;
        }
        for x in -bounds[k]..=bounds[k] {
            cur[k] = x;
            rec(k + 1, cur, bounds, gram, n, out);
        }
    }
    rec(0, &mut cur, &bounds, gram, n, &mut out);
    out
}

/// All isometries of a definite lattice, sorted.
pub fn orthogonal_group(lattice: &Lattice) -> Result<Vec<Isometry>, LatticeError> {
    let r = lattice.rank();
    if r > MAX_RANK {
        return Err(LatticeError::RankTooLarge(r));
    }
    let gram = match lattice.definiteness() {
        Some(1) => lattice.gram().clone(),
        Some(_) => lattice.gram().neg(),
        None => return Err(LatticeError::Indefinite),
    };
    let inv = gram.to_rational().inverse().ok_or(LatticeError::Degenerate)?;
    let inv_diag: Vec<_> = (0..r).map(|k| inv.rows[k][k].clone()).collect();

    let mut by_norm: BTreeMap<BigInt, Vec<Vec<BigInt>>> = BTreeMap::new();
    for j in 0..r {
        let n = gram.get(j, j).clone();
        if let alloc::collections::btree_map::Entry::Vacant(e) = by_norm.entry(n) {
            let v = vectors_of_norm(&gram, &inv_diag, e.key());
            e.insert(v);
        }
    }

    let mut found = Vec::new();
    let mut images: Vec<Vec<BigInt>> = Vec::new();
    fn search(
        j: usize,
        gram: &IntMatrix,
        by_norm: &BTreeMap<BigInt, Vec<Vec<BigInt>>>,
        images: &mut Vec<Vec<BigInt>>,
        found: &mut Vec<IntMatrix>,
    ) {
        let r = gram.rows();
        if j == r {
            let cols = images.clone();
            let rows: Vec<Vec<BigInt>> = (0..r).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
            found.push(IntMatrix::from_big_rows(rows).expect("square"));
            return;
        }
        for cand in &by_norm[gram.get(j, j)] {
            let gc = gram.mul_vec(cand);
            let ok = (0..j).all(|i| {
                let ip: BigInt = images[i].iter().zip(&gc).map(|(a, b)| a * b).sum();
                &ip == gram.get(i, j)
            });
            if ok {
                images.push(cand.clone());
                search(j + 1, gram, by_norm, images, found);
                images.pop();
            }
        }
    }
    search(0, &gram, &by_norm, &mut images, &mut found);
    let mut out: Vec<Isometry> = found
        .into_iter()
        .filter(|m| m.det().abs() == BigInt::from(1))
        .map(Isometry::unchecked)
        .collect();
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{degree_shift_isometry, discriminant_action, discriminant_group, DiscAutomorphism};
    use alloc::collections::BTreeSet;
    use alloc::vec;

    #[test]
    fn a2_has_twelve() {
        let a2 = Lattice::a2();
        let g = orthogonal_group(&a2).unwrap();
        assert_eq!(g.len(), 12);
        assert!(g.contains(&degree_shift_isometry()));
        let set: BTreeSet<_> = g.iter().cloned().collect();
        for a in &g {
            Isometry::new(&a2, a.matrix().clone()).unwrap();
            for b in &g {
                assert!(set.contains(&a.compose(b)));
            }
        }
    }

    #[test]
    fn restriction_to_discriminant() {
        let a2 = Lattice::a2();
        let disc = discriminant_group(&a2).unwrap();
        let g = orthogonal_group(&a2).unwrap();
        let id = DiscAutomorphism::identity(&disc);
        let kernel = g.iter().filter(|s| discriminant_action(&disc, s) == id).count();
        assert_eq!(kernel, 6);
        let images: BTreeSet<_> = g.iter().map(|s| discriminant_action(&disc, s)).collect();
        assert_eq!(images.len(), 2);
    }

    #[test]
    fn small_examples() {
        let z = Lattice::from_rows(&[vec![2]], "Z(2)").unwrap();
        assert_eq!(orthogonal_group(&z).unwrap().len(), 2);
        let a1a1 = Lattice::from_rows(&[vec![2, 0], vec![0, 2]], "A1+A1").unwrap();
        assert_eq!(orthogonal_group(&a1a1).unwrap().len(), 8);
        assert_eq!(orthogonal_group(&Lattice::a2().negated()).unwrap().len(), 12);
        let u = Lattice::from_rows(&[vec![0, 1], vec![1, 0]], "U").unwrap();
        assert_eq!(orthogonal_group(&u), Err(LatticeError::Indefinite));
    }
}

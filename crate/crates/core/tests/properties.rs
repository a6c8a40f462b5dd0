use std::sync::Arc;

use jacfact_core::field::{Field, PrimeField, Rationals};
use jacfact_core::jacobian::{certify_linear_iso, hilbert_series_oracle, JacobianRing};
use jacfact_core::lattice::{
    discriminant_action, discriminant_group, orientation_sign, orthogonal_group, standard_positive_basis,
    Lattice,
};
use jacfact_core::mf::{
    chain_rule_homotopy, hom_space, is_null_homotopic, koszul_mf, mult_by_section_twisted, MatrixFactorization,
};
use jacfact_core::poly::{monomial_basis, parse};
use jacfact_core::{Budget, Polynomial};
use num_bigint::BigInt;
use proptest::prelude::*;

type Q = Polynomial<Rationals>;

fn homogeneous(n: usize, d: u32, coeffs: &[i64]) -> Q {
    let basis = monomial_basis(n, d);
    Polynomial::from_terms(
        Rationals,
        n,
        basis
            .into_iter()
            .zip(coeffs.iter().map(|c| Rationals.from_i64(*c))),
    )
}

prop_compose! {
    fn poly_in(n: usize, d: u32)(coeffs in prop::collection::vec(-4i64..=4, monomial_basis(n, d).len())) -> Q {
        homogeneous(n, d, &coeffs)
    }
}

fn shaped_poly() -> impl Strategy<Value = Q> {
    (1usize..=3, 0u32..=4).prop_flat_map(|(n, d)| poly_in(n, d))
}

/// Fermat plus a small random perturbation; a few of these are singular,
/// which callers filter out.
fn perturbed_fermat(n: usize, d: u32) -> impl Strategy<Value = Q> {
    poly_in(n, d).prop_map(move |p| {
        let mut f = p.scale(&Rationals.from_i64(0));
        for i in 0..n {
            f = f.add(&Polynomial::var(Rationals, i, n).pow(d));
        }
        let small: Q = Polynomial::from_terms(Rationals, n, p.terms().take(2).map(|(m, c)| (m.clone(), c.clone())));
        f.add(&small)
    })
}

/// Random Koszul factorization: `f = Σ a_i·b_i` with linear `a_i`.
fn koszul_instance() -> impl Strategy<Value = MatrixFactorization<Rationals>> {
    (1usize..=3, 2u32..=3, 1usize..=2)
        .prop_flat_map(|(n, d, k)| {
            (
                prop::collection::vec(poly_in(n, 1), k),
                prop::collection::vec(poly_in(n, d - 1), k),
            )
        })
        .prop_filter_map("zero potential", |(a, b)| {
            let n = a[0].num_vars();
            let mut f = Polynomial::zero(Rationals, n);
            for (x, y) in a.iter().zip(&b) {
                f = f.add(&x.mul(y));
            }
            let pairs: Vec<_> = a.into_iter().zip(b).collect();
            koszul_mf(&f, &pairs).ok()
        })
}

proptest! {
    #[test]
    fn render_then_parse_is_identity(p in shaped_poly()) {
        let back = parse(&p.render(), p.num_vars(), Rationals).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn partials_commute(p in (2usize..=3, 0u32..=5).prop_flat_map(|(n, d)| poly_in(n, d))) {
        let n = p.num_vars();
        for i in 0..n {
            for j in 0..n {
                let a = p.partial_derivative(i).unwrap().partial_derivative(j).unwrap();
                let b = p.partial_derivative(j).unwrap().partial_derivative(i).unwrap();
                prop_assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn euler_identity(p in shaped_poly()) {
        let n = p.num_vars();
        let mut lhs = Polynomial::zero(Rationals, n);
        for i in 0..n {
            lhs = lhs.add(&Polynomial::var(Rationals, i, n).mul(&p.partial_derivative(i).unwrap()));
        }
        let d = p.homogeneous_degree().unwrap_or(0) as i64;
        prop_assert_eq!(lhs, p.scale(&Rationals.from_i64(d)));
    }

    #[test]
    fn substitution_chain_rule(
        p in (2usize..=3, 1u32..=4).prop_flat_map(|(n, d)| poly_in(n, d)),
        entries in prop::collection::vec(-3i64..=3, 9),
    ) {
        let n = p.num_vars();
        let m: Vec<Vec<_>> = (0..n)
            .map(|j| (0..n).map(|k| Rationals.from_i64(entries[j * 3 + k])).collect())
            .collect();
        let fm = p.linear_substitute(&m).unwrap();
        // substituting N and then M is substituting N·M
        let nm: Vec<Vec<_>> = (0..n)
            .map(|j| (0..n).map(|k| Rationals.from_i64(entries[(k * 3 + j) % 9] - 1)).collect())
            .collect();
        let prod: Vec<Vec<_>> = (0..n)
            .map(|i| (0..n).map(|k| (0..n).map(|j| &nm[i][j] * &m[j][k]).sum()).collect())
            .collect();
        prop_assert_eq!(
            p.linear_substitute(&nm).unwrap().linear_substitute(&m).unwrap(),
            p.linear_substitute(&prod).unwrap()
        );
        for i in 0..n {
            let lhs = fm.partial_derivative(i).unwrap();
            let mut rhs = Polynomial::zero(Rationals, n);
            for j in 0..n {
                let dj = p.partial_derivative(j).unwrap().linear_substitute(&m).unwrap();
                rhs = rhs.add(&dj.scale(&m[j][i]));
            }
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn prime_mode_matches_rational_products(a in shaped_poly(), b in shaped_poly()) {
        let fp = PrimeField::new(1_000_003).unwrap();
        let n = a.num_vars().max(b.num_vars());
        let a = parse(&a.render(), n, Rationals).unwrap();
        let b = parse(&b.render(), n, Rationals).unwrap();
        let q = a.mul(&b).add(&a);
        let ap = parse(&a.render(), n, fp).unwrap();
        let bp = parse(&b.render(), n, fp).unwrap();
        let direct = parse(&q.render(), n, fp).unwrap();
        prop_assert_eq!(ap.mul(&bp).add(&ap), direct);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn smooth_hilbert_function_matches_oracle(f in (2usize..=3, 3u32..=4).prop_flat_map(|(n, d)| perturbed_fermat(n, d))) {
        let j = JacobianRing::build(&f).unwrap();
        prop_assume!(j.is_smooth());
        let oracle: Vec<usize> = hilbert_series_oracle(f.num_vars(), j.degree()).into_iter().map(|x| x as usize).collect();
        prop_assert_eq!(j.hilbert_function(), oracle);
        let sigma = j.sigma();
        for l in 0..=sigma {
            let a = j.pairing_matrix(l).unwrap();
            let b = j.pairing_matrix(sigma - l).unwrap();
            prop_assert!(a.nondegenerate);
            for (r, row) in a.matrix.iter().enumerate() {
                for (c, x) in row.iter().enumerate() {
                    prop_assert_eq!(x, &b.matrix[c][r]);
                }
            }
        }
    }

    #[test]
    fn normal_form_is_linear_and_multiplicative(
        f in perturbed_fermat(3, 3),
        p in poly_in(3, 1), q in poly_in(3, 2), r in poly_in(3, 1),
    ) {
        let j = JacobianRing::build(&f).unwrap();
        prop_assume!(j.is_smooth());
        let nf = |x: &Q, l: u32| j.normal_form_in(x, l).unwrap();
        let pr = p.add(&r);
        let sum: Vec<_> = nf(&p, 1).iter().zip(nf(&r, 1)).map(|(a, b)| a + b).collect();
        prop_assert_eq!(nf(&pr, 1), sum);
        let p_red = j.from_coordinates(1, &nf(&p, 1));
        let q_red = j.from_coordinates(2, &nf(&q, 2));
        prop_assert_eq!(nf(&p.mul(&q), 3), nf(&p_red.mul(&q_red), 3));
        let again = j.from_coordinates(2, &nf(&q, 2));
        prop_assert_eq!(nf(&again, 2), nf(&q, 2));
    }

    #[test]
    fn signed_permutations_are_isomorphisms(perm in Just(vec![0usize, 1, 2]).prop_shuffle(), signs in prop::collection::vec(prop::bool::ANY, 3)) {
        let f = parse("x0^3 + x1^3 + x2^3", 3, Rationals).unwrap();
        let j = JacobianRing::build(&f).unwrap();
        let m: Vec<Vec<_>> = (0..3)
            .map(|r| (0..3).map(|c| Rationals.from_i64(if perm[r] == c { if signs[r] { -1 } else { 1 } } else { 0 })).collect())
            .collect();
        prop_assert!(certify_linear_iso(&j, &j, &m).unwrap().is_isomorphism);
    }

    #[test]
    fn shift_twice_is_degree_shift(p in koszul_instance()) {
        p.validate().unwrap();
        p.shift().validate().unwrap();
        prop_assert_eq!(p.shift().shift(), p.degree_shift(p.degree() as i64));
    }

    #[test]
    fn chain_rule_matches_solver(p in koszul_instance()) {
        let p = Arc::new(p);
        let d = p.degree() as i64;
        for i in 0..p.num_vars() {
            let df = p.potential().partial_derivative(i).unwrap();
            let m = mult_by_section_twisted(&p, &df, d - 1).unwrap();
            prop_assert_eq!(chain_rule_homotopy(&p, i).unwrap().boundary(), m.clone());
            let h = is_null_homotopic(&m, &Budget::default()).unwrap();
            prop_assert!(h.is_some());
            prop_assert_eq!(h.unwrap().boundary(), m);
        }
    }

    #[test]
    fn hom_dims_ignore_variable_order(p in koszul_instance(), l in 0i64..=2) {
        let n = p.num_vars();
        let perm: Vec<usize> = (0..n).rev().collect();
        let q = Arc::new(p.rename_vars(&perm));
        let p = Arc::new(p);
        let a = hom_space(&p, &p, l, &Budget::default()).unwrap().dim();
        let b = hom_space(&q, &q, l, &Budget::default()).unwrap().dim();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn composition_respects_homotopy(p in koszul_instance(), seed in prop::collection::vec(-3i64..=3, 64)) {
        let p = Arc::new(p);
        let h1 = hom_space(&p, &p, 1, &Budget::default()).unwrap();
        let h2 = hom_space(&p, &p, 2, &Budget::default()).unwrap();
        for a in h1.basis() {
            for b in h1.basis() {
                let base = h2.class_of(&a.then(&b).unwrap()).unwrap();
                let mut k = 0;
                let noise = h1.boundary_combination(|_| { k += 1; Rationals.from_i64(seed[k % seed.len()]) });
                let perturbed = a.add(&noise).unwrap();
                prop_assert_eq!(h2.class_of(&perturbed.then(&b).unwrap()).unwrap(), base);
            }
        }
    }

    #[test]
    fn discriminant_order_is_det(a in 1i64..=6, b in -3i64..=3, c in 1i64..=6) {
        prop_assume!(a * c - b * b > 0);
        let l = Lattice::from_rows(&[vec![2 * a, b], vec![b, 2 * c]], "t").unwrap();
        let disc = discriminant_group(&l).unwrap();
        prop_assert_eq!(disc.order(), num_traits::Signed::abs(&l.det()));
        prop_assert_eq!(BigInt::from(disc.elements().len()), disc.order());
        let two = BigInt::from(2);
        for x in disc.elements() {
            for y in disc.elements() {
                // q(x+y) - q(x) - q(y) = 2b(x,y) mod 2
                let lhs = disc.q(&disc.add(&x, &y)) - disc.q(&x) - disc.q(&y) - disc.b(&x, &y) * num_rational::BigRational::from_integer(two.clone());
                let r = lhs / num_rational::BigRational::from_integer(two.clone());
                prop_assert!(r.is_integer());
            }
        }
    }
}

#[test]
fn discriminant_action_is_a_homomorphism() {
    for l in [Lattice::a2(), Lattice::from_rows(&[vec![2, 1], vec![1, 4]], "t").unwrap()] {
        let disc = discriminant_group(&l).unwrap();
        let group = orthogonal_group(&l).unwrap();
        let basis = standard_positive_basis(&l).unwrap();
        for s in &group {
            for t in &group {
                let st = s.compose(t);
                let lhs = discriminant_action(&disc, &st);
                let rhs = discriminant_action(&disc, s).compose(&disc, &discriminant_action(&disc, t));
                assert_eq!(lhs, rhs);
                let sign = |x| orientation_sign(&l, x, &basis).unwrap();
                assert_eq!(sign(&st), sign(s) * sign(t));
            }
        }
    }
}

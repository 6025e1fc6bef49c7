mod common;

use common::q;
use polyaut_core::corpus::{random_recipe, realize};
use polyaut_core::inverter::{derivative_recursion_m2, solve_series};
use polyaut_core::linalg::{jacobian, PolyMatrix};
use polyaut_core::series::{compose_poly_series, SeriesVec, TruncSeries};
use polyaut_core::{Monomial, PolyMap, Polynomial, Rational};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| q(n, d))
}

fn monomial(arity: usize, max_degree: u32) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0..=max_degree, arity).prop_map(move |mut e| {
        // walk exponents down until the total degree fits
        let mut i = 0;
        while e.iter().sum::<u32>() > max_degree {
            if e[i] > 0 {
                e[i] -= 1;
            }
            i = (i + 1) % e.len();
        }
        Monomial::from_exponents(e)
    })
}

fn poly(arity: usize, max_degree: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((monomial(arity, max_degree), rational()), 0..=max_terms)
        .prop_map(move |terms| Polynomial::from_terms(arity, terms).unwrap())
}

fn poly_triple() -> impl Strategy<Value = (Polynomial, Polynomial, Polynomial)> {
    (1usize..=3).prop_flat_map(|m| (poly(m, 4, 6), poly(m, 4, 6), poly(m, 4, 6)))
}

fn small_map(arity: usize) -> impl Strategy<Value = Vec<Polynomial>> {
    prop::collection::vec(poly(arity, 2, 3), arity)
}

fn series(arity: usize, order: usize) -> impl Strategy<Value = TruncSeries> {
    prop::collection::vec(poly(arity, 2, 3), order + 1)
        .prop_map(|c| TruncSeries::from_coeffs(c).unwrap())
}

fn renormalize(p: &Polynomial) -> Polynomial {
    Polynomial::from_terms(p.arity(), p.terms().map(|(m, c)| (m.clone(), c.clone()))).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms((a, b, c) in poly_triple()) {
        let m = a.arity();
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &Polynomial::zero(m), a.clone());
        prop_assert_eq!(&a * &Polynomial::one(m), a.clone());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn normalization_is_idempotent((a, b, _c) in poly_triple()) {
        for p in [&a + &b, &a * &b, a.pow(2), (&a - &b).scale(&q(3, 2))] {
            prop_assert!(p.terms().all(|(_, c)| *c != q(0, 1)));
            prop_assert_eq!(renormalize(&p), p);
        }
    }

    #[test]
    fn leibniz_rule((a, b, _c) in poly_triple()) {
        for i in 0..a.arity() {
            let lhs = (&a * &b).partial_derivative(i).unwrap();
            let rhs = &(&a.partial_derivative(i).unwrap() * &b) + &(&a * &b.partial_derivative(i).unwrap());
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn composition_is_functorial(
        (f, g, h) in (1usize..=3).prop_flat_map(|m| (poly(m, 2, 3), small_map(m), small_map(m)))
    ) {
        let lhs = f.compose(&g).unwrap().compose(&h).unwrap();
        let gh: Vec<Polynomial> = g.iter().map(|gi| gi.compose(&h).unwrap()).collect();
        prop_assert_eq!(lhs, f.compose(&gh).unwrap());
    }

    #[test]
    fn evaluation_commutes_with_composition(
        (f, g, a) in (1usize..=3).prop_flat_map(|m| {
            (poly(m, 3, 4), small_map(m), prop::collection::vec(rational(), m))
        })
    ) {
        let inner: Vec<Rational> = g.iter().map(|gi| gi.evaluate(&a).unwrap()).collect();
        prop_assert_eq!(f.compose(&g).unwrap().evaluate(&a).unwrap(), f.evaluate(&inner).unwrap());
    }

    #[test]
    fn series_truncation_coherence(
        (s, r, f, comps) in (1usize..=2).prop_flat_map(|m| {
            (series(m, 4), series(m, 4), poly(m, 3, 3), prop::collection::vec(series(m, 4), m))
        })
    ) {
        for n in 0..4 {
            prop_assert_eq!(s.mul(&r).unwrap().truncate(n).unwrap(), s.truncate(n).unwrap().mul(&r.truncate(n).unwrap()).unwrap());
            prop_assert_eq!(s.add(&r).unwrap().truncate(n).unwrap(), s.truncate(n).unwrap().add(&r.truncate(n).unwrap()).unwrap());
            let sv = SeriesVec::new(comps.clone()).unwrap();
            prop_assert_eq!(
                compose_poly_series(&f, &sv).unwrap().truncate(n).unwrap(),
                compose_poly_series(&f, &sv.truncate(n).unwrap()).unwrap()
            );
        }
    }

    #[test]
    fn series_embeds_polynomials((a, b, f) in poly_triple()) {
        let m = a.arity();
        let sa = TruncSeries::constant(a.clone(), 3);
        let sb = TruncSeries::constant(b.clone(), 3);
        prop_assert_eq!(sa.mul(&sb).unwrap(), TruncSeries::constant(&a * &b, 3));
        prop_assert_eq!(compose_poly_series(&f, &SeriesVec::identity(m, 3)).unwrap(), TruncSeries::constant(f, 3));
    }

    #[test]
    fn adjugate_inverts_unit_matrices(
        (m, offdiag, unit, e1, e2) in (2usize..=3).prop_flat_map(|m| (
            Just(m),
            prop::collection::vec(poly(m, 2, 2), m * m),
            prop::sample::select(vec![1i64, -1, 2, -3]),
            (0..m, 0..m, -3i64..=3),
            (0..m, 0..m, -3i64..=3),
        ))
    ) {
        // unipotent upper triangular, scaled by a constant unit in the corner
        let mut rows = vec![vec![Polynomial::zero(m); m]; m];
        for i in 0..m {
            rows[i][i] = Polynomial::one(m);
            for j in i + 1..m {
                rows[i][j] = offdiag[i * m + j].clone();
            }
        }
        rows[0][0] = Polynomial::from_int(m, unit);
        let u = PolyMatrix::from_rows(m, rows).unwrap();

        // conjugate by E = E1 E2, elementary matrices with known inverses
        let elem = |(i, j, c): (usize, usize, i64), sign: i64| {
            let mut rows = vec![vec![Polynomial::zero(m); m]; m];
            for k in 0..m {
                rows[k][k] = Polynomial::one(m);
            }
            if i != j {
                rows[i][j] = Polynomial::from_int(m, sign * c);
            }
            PolyMatrix::from_rows(m, rows).unwrap()
        };
        let e = elem(e1, 1).mul(&elem(e2, 1)).unwrap();
        let e_inv = elem(e2, -1).mul(&elem(e1, -1)).unwrap();
        let mx = e.mul(&u).unwrap().mul(&e_inv).unwrap();

        let inv = mx.adjugate_inverse(&q(unit, 1)).unwrap();
        prop_assert!(inv.mul(&mx).unwrap().is_identity());
        prop_assert!(mx.mul(&inv).unwrap().is_identity());
    }

    #[test]
    fn determinant_is_multiplicative(
        (a, b) in (1usize..=4).prop_flat_map(|n| (
            prop::collection::vec(-5i64..=5, n * n),
            prop::collection::vec(-5i64..=5, n * n),
        ))
    ) {
        let n = (a.len() as f64).sqrt() as usize;
        let mk = |v: &[i64]| PolyMatrix::new(n, n, 1, v.iter().map(|&x| Polynomial::from_int(1, x)).collect()).unwrap();
        let (ma, mb) = (mk(&a), mk(&b));
        let lhs = ma.mul(&mb).unwrap().determinant().unwrap();
        prop_assert_eq!(lhs, &ma.determinant().unwrap() * &mb.determinant().unwrap());
    }

    #[test]
    fn jacobian_chain_rule(
        (phi, psi) in (1usize..=3).prop_flat_map(|m| (small_map(m), small_map(m)))
    ) {
        let phi = PolyMap::new(phi).unwrap();
        let psi = PolyMap::new(psi).unwrap();
        let lhs = jacobian(&phi.compose_with(&psi).unwrap());
        let rhs = jacobian(&phi).compose_entries(psi.components()).unwrap().mul(&jacobian(&psi)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn solver_prefix_stability_and_oracle(seed in any::<u64>(), steps in 1usize..=3) {
        let (f, _) = realize(&random_recipe(2, steps, 2, seed)).unwrap();
        let short = solve_series(&f, 3, None).unwrap();
        let long = solve_series(&f, 5, None).unwrap();
        prop_assert_eq!(&long.truncate(3).unwrap(), &short);
        prop_assert_eq!(derivative_recursion_m2(&f, 3).unwrap(), short);
    }

    #[test]
    fn solver_with_general_initial_condition(
        seed in any::<u64>(),
        init in small_map(2),
    ) {
        let (f, _) = realize(&random_recipe(2, 2, 2, seed)).unwrap();
        let init = PolyMap::new(init).unwrap();
        let s = solve_series(&f, 3, Some(&init)).unwrap();
        for i in 0..2 {
            prop_assert_eq!(s.component(i).coeff(0), init.component(i));
            let lhs = compose_poly_series(f.component(i), &s).unwrap();
            let base = f.component(i).compose(init.components()).unwrap();
            prop_assert_eq!(lhs.coeff(0), &base);
            prop_assert_eq!(lhs.coeff(1), &(&Polynomial::var(2, i) - &base));
            prop_assert!(lhs.coeff(2).is_zero() && lhs.coeff(3).is_zero());
        }
    }
}

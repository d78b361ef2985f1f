//! Randomized algebraic properties across the layers of the crate.

use std::sync::{Arc, OnceLock};

use affschur::affweyl::{
    bruhat_leq, double_coset_max, double_coset_min, is_distinguished, jdelta, jdelta_inv, min_right,
};
use affschur::hecke::{HeckeElt, KlCache};
use affschur::schur::{SchurAlgebra, SchurElt};
use affschur::{AffMatrix, AffPerm, Composition, LaurentPoly};
use proptest::prelude::*;

fn perm(r: usize) -> impl Strategy<Value = AffPerm> {
    (prop::collection::vec(1..=r, 0..7), -2i64..=2)
        .prop_map(move |(word, a)| AffPerm::from_word(r, &word).mul(&AffPerm::rho_pow(r, a)))
}

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-4i64..=4, -3i64..=3), 0..4).prop_map(LaurentPoly::from_terms)
}

fn composition(n: usize, r: usize) -> impl Strategy<Value = Composition> {
    let all = Composition::all(n, r);
    (0..all.len()).prop_map(move |i| all[i].clone())
}

fn algebra(n: usize, r: usize) -> Arc<SchurAlgebra> {
    static CACHE: OnceLock<Arc<KlCache>> = OnceLock::new();
    let kl = CACHE.get_or_init(|| Arc::new(KlCache::new())).clone();
    Arc::new(SchurAlgebra::new(n, r, kl).unwrap())
}

fn basis_elt(alg: &SchurAlgebra) -> impl Strategy<Value = AffMatrix> {
    let basis = alg.window_basis();
    (0..basis.len()).prop_map(move |i| basis[i].clone())
}

fn schur_elt(alg: &SchurAlgebra) -> impl Strategy<Value = SchurElt> {
    let (n, r) = (alg.n(), alg.r());
    prop::collection::vec((basis_elt(alg), laurent()), 0..3)
        .prop_map(move |terms| SchurElt::from_terms(n, r, terms))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn inverse_and_length(w in perm(3)) {
        prop_assert_eq!(w.mul(&w.inverse()), AffPerm::identity(3));
        prop_assert_eq!(w.inverse().length(), w.length());
        for i in 1..=3 {
            let ws = w.mul_s_right(i);
            let expected = if w.has_right_descent(i) { w.length() - 1 } else { w.length() + 1 };
            prop_assert_eq!(ws.length(), expected);
        }
    }

    #[test]
    fn bruhat_contains_subwords(word in prop::collection::vec(1usize..=3, 0..6), skip in 0usize..6) {
        let w = AffPerm::from_word(3, &word);
        prop_assume!(w.length() == word.len());
        let mut sub = word.clone();
        if !sub.is_empty() {
            sub.remove(skip % sub.len());
        }
        let y = AffPerm::from_word(3, &sub);
        prop_assert!(bruhat_leq(&y, &w));
        prop_assert!(bruhat_leq(&AffPerm::identity(3), &w));
        if y != w && y.length() < w.length() {
            prop_assert!(!bruhat_leq(&w, &y));
        }
    }

    #[test]
    fn hecke_multiplication_is_associative(x in perm(3), y in perm(3), z in perm(3)) {
        let (tx, ty, tz) = (HeckeElt::t(&x), HeckeElt::t(&y), HeckeElt::t(&z));
        prop_assert_eq!(tx.t_mul(&ty).t_mul(&tz), tx.t_mul(&ty.t_mul(&tz)));
    }

    #[test]
    fn hecke_bar_is_a_ring_involution(x in perm(3), y in perm(3), c in laurent()) {
        let tx = HeckeElt::t(&x).scale(&c);
        let ty = HeckeElt::t(&y);
        prop_assert_eq!(tx.t_bar().t_bar(), tx.clone());
        prop_assert_eq!(tx.t_mul(&ty).t_bar(), tx.t_bar().t_mul(&ty.t_bar()));
    }

    #[test]
    fn double_cosets_match_matrices(
        lambda in composition(2, 3),
        mu in composition(2, 3),
        w in perm(3),
    ) {
        let d = double_coset_min(&lambda, &w, &mu);
        prop_assert!(is_distinguished(&lambda, &d, &mu));
        prop_assert!(bruhat_leq(&d, &double_coset_max(&lambda, &w, &mu)));
        let a = jdelta(&lambda, &d, &mu).unwrap();
        prop_assert_eq!(a.ro(), lambda.to_i64s());
        prop_assert_eq!(a.co(), mu.to_i64s());
        let (l2, d2, m2) = jdelta_inv(&a).unwrap();
        prop_assert_eq!((l2, d2, m2), (lambda, d, mu.clone()));
        prop_assert!(bruhat_leq(&min_right(&w, &mu), &w));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn schur_product_is_associative(
        (x, y, z) in {
            let alg = algebra(2, 3);
            (schur_elt(&alg), schur_elt(&alg), schur_elt(&alg))
        }
    ) {
        let alg = algebra(2, 3);
        let left = alg.mult(&alg.mult(&x, &y).unwrap(), &z).unwrap();
        let right = alg.mult(&x, &alg.mult(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn schur_bar_is_an_involutive_ring_map(
        (x, y) in {
            let alg = algebra(2, 3);
            (schur_elt(&alg), schur_elt(&alg))
        }
    ) {
        let alg = algebra(2, 3);
        prop_assert_eq!(alg.bar(&alg.bar(&x).unwrap()).unwrap(), x.clone());
        let xy = alg.mult(&x, &y).unwrap();
        let bars = alg.mult(&alg.bar(&x).unwrap(), &alg.bar(&y).unwrap()).unwrap();
        prop_assert_eq!(alg.bar(&xy).unwrap(), bars);
    }

    #[test]
    fn tau_reverses_products(
        (x, y) in {
            let alg = algebra(2, 3);
            (schur_elt(&alg), schur_elt(&alg))
        }
    ) {
        let alg = algebra(2, 3);
        prop_assert_eq!(x.tau().tau(), x.clone());
        let lhs = alg.mult(&x, &y).unwrap().tau();
        let rhs = alg.mult(&y.tau(), &x.tau()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn canonical_basis_is_bar_invariant_and_unitriangular(a in basis_elt(&algebra(3, 3))) {
        let alg = algebra(3, 3);
        let theta = alg.theta(&a).unwrap();
        prop_assert_eq!(&alg.bar(&theta).unwrap(), &*theta);
        prop_assert!(theta.coeff(&a).is_one());
        for (b, c) in theta.terms() {
            if *b != a {
                prop_assert!(c.in_negative_part(), "{} has coefficient {}", b, c);
                prop_assert!(alg.leq_bo(b, &a).unwrap());
            }
        }
    }
}

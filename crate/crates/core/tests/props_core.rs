mod common;

use common::{field, function, odd_degree, sign};
use lie_deform::graded::{
    antisym_sign, enumerate_shuffles, koszul_sign, multinomial, DegreeVector, Permutation, ShuffleSpec,
};
use lie_deform::random::rng;
use lie_deform::superfield::Shape;
use num_bigint::BigInt;
use proptest::prelude::*;

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_zero_based(v).unwrap())
}

fn perm_pair_and_degrees() -> impl Strategy<Value = (Permutation, Permutation, Vec<i64>)> {
    (1usize..=6).prop_flat_map(|n| (perm(n), perm(n), prop::collection::vec(-3i64..=3, n)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn koszul_sign_is_multiplicative((tau, sigma, degs) in perm_pair_and_degrees()) {
        let d = DegreeVector::new(degs.clone());
        let moved = DegreeVector::new(tau.permute(&degs));
        let lhs = koszul_sign(&tau.compose(&sigma).unwrap(), &d).unwrap();
        let rhs = koszul_sign(&sigma, &moved).unwrap() * koszul_sign(&tau, &d).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn koszul_sign_trivial_on_even_degrees((tau, _s, degs) in perm_pair_and_degrees()) {
        let even: Vec<i64> = degs.iter().map(|d| 2 * d).collect();
        prop_assert_eq!(koszul_sign(&tau, &DegreeVector::new(even)).unwrap(), 1);
    }

    #[test]
    fn antisym_is_parity_times_koszul((tau, _s, degs) in perm_pair_and_degrees()) {
        let d = DegreeVector::new(degs);
        prop_assert_eq!(
            antisym_sign(&tau, &d).unwrap(),
            tau.parity() * koszul_sign(&tau, &d).unwrap()
        );
    }

    #[test]
    fn shuffles_have_multinomial_count(blocks in prop::collection::vec(0usize..=3, 1..=4)) {
        let all = enumerate_shuffles(&ShuffleSpec::new(blocks.clone()));
        prop_assert_eq!(BigInt::from(all.len()), multinomial(&blocks));
        for s in &all {
            let mut start = 0;
            for &b in &blocks {
                let block = &s.images()[start..start + b];
                prop_assert!(block.windows(2).all(|w| w[0] < w[1]));
                start += b;
            }
        }
    }
}

fn shape() -> Shape {
    Shape::new(2, 3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_bracket_is_graded_antisymmetric(seed: u64, p in -1i64..=2, q in -1i64..=2) {
        let mut r = rng(seed);
        let x = field(&mut r, shape(), p, 2);
        let y = field(&mut r, shape(), q, 2);
        let xy = x.bracket(&y).unwrap();
        let yx = y.bracket(&x).unwrap().scale(&-sign(p * q));
        prop_assert_eq!(xy, yx);
    }

    #[test]
    fn field_bracket_satisfies_jacobi(seed: u64, p in -1i64..=2, q in -1i64..=2, t in -1i64..=2) {
        let mut r = rng(seed);
        let x = field(&mut r, shape(), p, 2);
        let y = field(&mut r, shape(), q, 2);
        let z = field(&mut r, shape(), t, 2);
        let lhs = x.bracket(&y.bracket(&z).unwrap()).unwrap();
        let mut rhs = x.bracket(&y).unwrap().bracket(&z).unwrap();
        rhs.add_scaled(&y.bracket(&x.bracket(&z).unwrap()).unwrap(), &sign(p * q));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn apply_is_a_graded_derivation(seed: u64, p in -1i64..=2, a in 0usize..=3, b in 0usize..=3) {
        let mut r = rng(seed);
        let x = field(&mut r, shape(), p, 2);
        let f = function(&mut r, shape(), a, 2, 3);
        let g = function(&mut r, shape(), b, 2, 3);
        let lhs = x.apply(&f.mul(&g)).unwrap();
        let mut rhs = x.apply(&f).unwrap().mul(&g);
        rhs.add_scaled(&f.mul(&x.apply(&g).unwrap()), &sign(p * a as i64));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bracket_acts_as_commutator(seed: u64, p in -1i64..=2, q in -1i64..=2, a in 0usize..=3) {
        let mut r = rng(seed);
        let x = field(&mut r, shape(), p, 2);
        let y = field(&mut r, shape(), q, 2);
        let f = function(&mut r, shape(), a, 2, 3);
        let lhs = x.bracket(&y).unwrap().apply(&f).unwrap();
        let mut rhs = x.apply(&y.apply(&f).unwrap()).unwrap();
        rhs.add_scaled(&y.apply(&x.apply(&f).unwrap()).unwrap(), &-sign(p * q));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bracket_is_polynomial_and_bounded(seed: u64, p in -1i64..=2, q in -1i64..=2) {
        let mut r = rng(seed);
        let x = field(&mut r, shape(), p, 2);
        let y = field(&mut r, shape(), q, 2);
        let z = x.bracket(&y).unwrap();
        prop_assert!(odd_degree(&z) <= odd_degree(&x) + odd_degree(&y));
        if !z.is_zero() {
            prop_assert_eq!(z.degree(), Some(p + q));
        }
    }
}

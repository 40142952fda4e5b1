//! Property tests for the algebraic and combinatorial layers.

use proptest::prelude::*;
use psi_npoint::combinatorics::{permutations, Permutation};
use psi_npoint::exact::{exact_divide, rat, series_exp, BilinearForm, Divisor, Monomial, TruncatedSeries};

const N: usize = 2;
const CAP: u32 = 5;

fn series() -> impl Strategy<Value = TruncatedSeries> {
    let term = (prop::array::uniform2(0u32..3), prop::array::uniform2(0u32..3), -6i64..7, 1i64..5);
    prop::collection::vec(term, 0..7).prop_map(|terms| {
        TruncatedSeries::from_terms(N, CAP, terms.into_iter().map(|(a, x, p, q)| (Monomial::new(&a, &x), rat(p, q))))
    })
}

fn without_constant() -> impl Strategy<Value = TruncatedSeries> {
    series().prop_map(|s| s.sub(&TruncatedSeries::constant(N, s.constant_term(), CAP)).unwrap())
}

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    let all = permutations(n).unwrap();
    (0..all.len()).prop_map(move |i| all[i].clone())
}

proptest! {
    #[test]
    fn addition_is_a_group(s in series(), t in series(), u in series()) {
        prop_assert_eq!(s.add(&t).unwrap(), t.add(&s).unwrap());
        prop_assert_eq!(s.add(&t).unwrap().add(&u).unwrap(), s.add(&t.add(&u).unwrap()).unwrap());
        prop_assert!(s.add(&s.neg()).unwrap().is_zero());
    }

    #[test]
    fn multiplication_is_commutative_and_associative(s in series(), t in series(), u in series()) {
        prop_assert_eq!(s.mul(&t, CAP).unwrap(), t.mul(&s, CAP).unwrap());
        let left = s.mul(&t, CAP).unwrap().mul(&u, CAP).unwrap();
        let right = s.mul(&t.mul(&u, CAP).unwrap(), CAP).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(s.mul(&TruncatedSeries::one(N, CAP), CAP).unwrap(), s);
    }

    #[test]
    fn multiplication_distributes(s in series(), t in series(), u in series()) {
        let left = s.mul(&t.add(&u).unwrap(), CAP).unwrap();
        let right = s.mul(&t, CAP).unwrap().add(&s.mul(&u, CAP).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn division_undoes_multiplication(s in series(), j in 1usize..=2) {
        let form = BilinearForm::new(j, 3 - j).unwrap();
        let product = s.mul(&form.to_series(N).unwrap(), CAP + 2).unwrap();
        let division = exact_divide(&product, &Divisor::Bilinear(form)).unwrap();
        prop_assert!(division.remainder_zero());
        prop_assert_eq!(division.quotient.truncated(CAP), s);
    }

    #[test]
    fn division_by_sum_detects_non_multiples(s in series()) {
        let product = s.mul(&Divisor::SumX.to_series(N).unwrap(), CAP + 1).unwrap();
        let division = exact_divide(&product, &Divisor::SumX).unwrap();
        prop_assert!(division.remainder_zero());
        let off = product.add(&TruncatedSeries::x(N, 1).truncated(CAP + 1)).unwrap();
        prop_assert!(!exact_divide(&off, &Divisor::SumX).unwrap().remainder_zero());
    }

    #[test]
    fn exp_turns_sums_into_products(s in without_constant(), t in without_constant()) {
        let lhs = series_exp(&s.add(&t).unwrap(), CAP).unwrap();
        let rhs = series_exp(&s, CAP).unwrap().mul(&series_exp(&t, CAP).unwrap(), CAP).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn relabelling_is_a_ring_map(s in series(), t in series()) {
        let swap = [2, 1];
        prop_assert_eq!(s.mul(&t, CAP).unwrap().permuted(&swap), s.permuted(&swap).mul(&t.permuted(&swap), CAP).unwrap());
        prop_assert_eq!(s.permuted(&swap).permuted(&swap), s);
    }

    #[test]
    fn sign_is_a_homomorphism(p in permutation(5), q in permutation(5)) {
        let pq = p.compose(&q).unwrap();
        prop_assert_eq!(pq.sign(), p.sign() * q.sign());
        prop_assert!(p.compose(&p.inverse()).unwrap().is_identity());
        for i in 1..=5 {
            prop_assert_eq!(pq.apply(i), p.apply(q.apply(i)));
        }
    }
}

use fqft_core::exactalg::Rational;
use fqft_core::partitions::{enumerate_partitions, Partition};
use fqft_core::symfun::{basis_convert, evaluate_at, omega, Basis, SymmetricFunction};
use proptest::prelude::*;

const BASES: [Basis; 4] = [Basis::Power, Basis::Monomial, Basis::Elementary, Basis::Complete];

fn sym_strategy(max_degree: usize) -> impl Strategy<Value = SymmetricFunction<Rational>> {
    let all: Vec<Partition> = (0..=max_degree).flat_map(enumerate_partitions).collect();
    (0..4usize, prop::collection::vec((prop::sample::select(all), -6i64..=6, 1i64..=4), 1..4))
        .prop_map(|(b, terms)| SymmetricFunction::from_terms(BASES[b], terms.into_iter().map(|(l, n, d)| (l, Rational::new(n, d)))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn conversions_round_trip(f in sym_strategy(8), target in 0..4usize) {
        let g = basis_convert(&f, BASES[target]).unwrap();
        prop_assert_eq!(basis_convert(&g, f.basis()).unwrap(), f);
    }

    #[test]
    fn conversions_commute_with_products(f in sym_strategy(3), g in sym_strategy(3), target in 0..4usize) {
        let g = basis_convert(&g, f.basis()).unwrap();
        let fg = f.mul(&g).unwrap();
        let t = BASES[target];
        let lhs = basis_convert(&fg, t).unwrap();
        let rhs = basis_convert(&f, t).unwrap().mul(&basis_convert(&g, t).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn omega_is_an_involution(f in sym_strategy(6)) {
        let back = basis_convert(&omega(&omega(&f).unwrap()).unwrap(), f.basis()).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn conversion_preserves_values(f in sym_strategy(5), target in 0..4usize, xs in prop::collection::vec((-9i64..=9, 1i64..=5), 5)) {
        // Five variables determine symmetric functions of degree ≤ 5.
        let xs: Vec<Rational> = xs.into_iter().map(|(n, d)| Rational::new(n, d)).collect();
        let g = basis_convert(&f, BASES[target]).unwrap();
        prop_assert_eq!(evaluate_at(&f, &xs).unwrap(), evaluate_at(&g, &xs).unwrap());
    }

    #[test]
    fn homogeneous_parts_sum_to_the_whole(f in sym_strategy(6)) {
        let mut acc = SymmetricFunction::zero(f.basis());
        for n in 0..=f.max_degree() {
            acc = acc.add(&f.homogeneous_part(n));
        }
        prop_assert_eq!(acc, f.clone());
        prop_assert!(f.homogeneous_part(f.max_degree() + 1).is_zero());
    }
}

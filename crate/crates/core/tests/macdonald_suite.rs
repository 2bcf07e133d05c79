use fqft_core::exactalg::eval::{random_rational, rng_from_seed};
use fqft_core::exactalg::{Rational, RationalFunction, Scalar};
use fqft_core::macdonald::*;
use fqft_core::partitions::{enumerate_partitions, Partition};
use fqft_core::symfun::{basis_convert, elementary, evaluate_at, inner_product, Basis, Pairing, SymmetricFunction};

fn q() -> RationalFunction {
    RationalFunction::var("q")
}
fn t() -> RationalFunction {
    RationalFunction::var("t")
}

#[test]
fn triangular_and_orthogonal_through_degree_six() {
    let pairing = Pairing::Qt { q: q(), t: t() };
    for n in 0..=6 {
        let parts = enumerate_partitions(n);
        let ps: Vec<_> = parts.iter().map(|l| macdonald_p(l).unwrap()).collect();
        for (i, lam) in parts.iter().enumerate() {
            assert_eq!(ps[i].coeff(lam), RationalFunction::one());
            for mu in ps[i].terms().keys() {
                assert!(lam.dominates(mu), "{mu} in P_{lam}");
            }
            for (j, mu) in parts.iter().enumerate().skip(i) {
                let ip = inner_product(&ps[i], &ps[j], &pairing).unwrap();
                if i == j {
                    assert_eq!(ip.mul(&b_norm(lam, &q(), &t()).unwrap()), RationalFunction::one(), "{lam}");
                } else {
                    assert!(ip.is_zero(), "{lam} {mu}");
                }
            }
        }
    }
}

#[test]
fn eigenrelation_through_degree_five() {
    for n in 0..=5 {
        for mu in enumerate_partitions(n) {
            let p = basis_convert(&macdonald_p(&mu).unwrap(), Basis::Power).unwrap();
            let lhs = apply_e(&p, &q(), &t()).unwrap();
            assert_eq!(lhs, p.scale(&eigen_e(&mu, &q(), &t()).unwrap()), "{mu}");
        }
    }
}

#[test]
fn specialization_two_paths_through_degree_five() {
    let u = RationalFunction::var("u");
    for n in 0..=5 {
        for lam in enumerate_partitions(n) {
            let direct = specialize_eps(&lam, &q(), &t(), &u).unwrap();
            let via_p = specialize_eps_of(&macdonald_p(&lam).unwrap(), &t(), &u).unwrap();
            assert_eq!(direct, via_p, "{lam}");
        }
    }
}

#[test]
fn inversion_symmetry() {
    for n in 1..=4 {
        for lam in enumerate_partitions(n) {
            let p = macdonald_p(&lam).unwrap();
            let inverted = p.map_coeffs(|_, c| c.invert_vars(&["q", "t"]));
            assert_eq!(inverted, p, "{lam}");
        }
    }
}

#[test]
fn macdonald_basis_round_trip() {
    let (qv, tv) = (Rational::new(3, 7), Rational::new(-5, 2));
    let f = SymmetricFunction::from_terms(
        Basis::Power,
        [(Partition::from([2, 1]), Rational::new(1, 3)), (Partition::from([3]), Rational::from_i64(2)), (Partition::from([1]), Rational::from_i64(-1))],
    );
    let in_p = to_macdonald(&f, &qv, &tv).unwrap();
    assert_eq!(from_macdonald(&in_p, Basis::Power, &qv, &tv).unwrap(), f);
}

/// `Σ_i Π_{j≠i} (t x_i - x_j)/(x_i - x_j) · f(x_1, …, q x_i, …, x_n)`.
fn d_n1(f: &dyn Fn(&[Rational]) -> Rational, xs: &[Rational], q: &Rational, t: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for i in 0..xs.len() {
        let mut a = Rational::one();
        for j in 0..xs.len() {
            if j != i {
                a = a.mul(&t.mul(&xs[i]).sub(&xs[j]).div(&xs[i].sub(&xs[j])).unwrap());
            }
        }
        let mut shifted = xs.to_vec();
        shifted[i] = shifted[i].mul(q);
        acc = acc.add(&a.mul(&f(&shifted)));
    }
    acc
}

#[test]
fn finite_variable_operator_oracle() {
    let mut rng = rng_from_seed(11);
    for n in 1..=4usize {
        let xs: Vec<Rational> = (0..n).map(|_| random_rational(&mut rng)).collect();
        let (qv, tv) = (random_rational(&mut rng), random_rational(&mut rng));
        for w in 0..=3 {
            for mu in enumerate_partitions(w) {
                // D_n^1 P_μ = t^n e_1(q^{μ_i} t^{-i}) P_μ in n variables.
                if mu.len() <= n {
                    let table = macdonald_table(w, &qv, &tv).unwrap();
                    let p = table.entries[&mu].clone();
                    let f = |x: &[Rational]| evaluate_at(&p, x).unwrap();
                    let vals: Vec<Rational> = (1..=n).map(|i| qt_monomial(&qv, &tv, mu.part(i) as i64, -(i as i64)).unwrap()).collect();
                    let eig = tv.pow(n as i64).unwrap().mul(&elementary(&vals, 1));
                    assert_eq!(d_n1(&f, &xs, &qv, &tv), eig.mul(&f(&xs)), "n={n} {mu}");
                }
                // E restricts to t^{-n} D_n^1 - Σ_{i≤n} t^{-i} on p_μ.
                let pmu = SymmetricFunction::<Rational>::element(Basis::Power, mu.clone());
                let f = |x: &[Rational]| evaluate_at(&pmu, x).unwrap();
                let shift = (1..=n as i64).fold(Rational::zero(), |a, i| a.add(&tv.pow(-i).unwrap()));
                let expected = tv.pow(-(n as i64)).unwrap().mul(&d_n1(&f, &xs, &qv, &tv)).sub(&shift.mul(&f(&xs)));
                let via_e = evaluate_at(&apply_e(&pmu, &qv, &tv).unwrap(), &xs).unwrap();
                assert_eq!(via_e, expected, "n={n} p_{mu}");
            }
        }
    }
}

#[test]
fn arm_leg_identity() {
    let (qv, tv) = (Rational::new(7, 3), Rational::new(-2, 9));
    for n in 0..=8 {
        for mu in enumerate_partitions(n) {
            let lhs = (1..=mu.len() as i64).fold(Rational::zero(), |acc, i| {
                acc.add(&qv.pow(mu.part(i as usize) as i64).unwrap().sub(&Rational::one()).mul(&tv.pow(-i).unwrap()))
            });
            assert_eq!(lhs, eigen_e(&mu, &qv, &tv).unwrap(), "{mu}");
        }
    }
}

#[test]
fn auxiliary_sum_identity() {
    let mut rng = rng_from_seed(5);
    for n in 1..=5usize {
        let xs: Vec<Rational> = (0..n).map(|_| random_rational(&mut rng)).collect();
        let tv = random_rational(&mut rng);
        let mut acc = Rational::zero();
        for i in 0..n {
            let mut prod = Rational::one();
            for j in 0..n {
                if j != i {
                    prod = prod.mul(&tv.mul(&xs[j]).sub(&xs[i]).div(&xs[j].sub(&xs[i])).unwrap());
                }
            }
            acc = acc.add(&prod);
        }
        assert_eq!(acc, tv.pow(n as i64).unwrap().one_minus().div(&tv.one_minus()).unwrap());
    }
}

#[test]
fn tilde_and_plain_eigenvalues_are_related() {
    for n in 0..=5 {
        for mu in enumerate_partitions(n) {
            for r in 0..=3 {
                let mut rhs = RationalFunction::zero();
                for j in 0..=r {
                    rhs = rhs.add(&euler_tail(j, &t()).unwrap().mul(&eigen_e_r(&mu, r - j, &q(), &t()).unwrap()));
                }
                assert_eq!(eigen_tilde_e(&mu, r, &q(), &t()).unwrap(), rhs, "{mu} r={r}");
            }
            assert_eq!(eigen_e_r(&mu, 1, &q(), &t()).unwrap(), eigen_e(&mu, &q(), &t()).unwrap());
        }
    }
}

#[test]
fn tilde_eigenvalue_is_elementary_of_long_list() {
    // Truncating t^{-i} tails at 60 terms leaves an error of order t^{-60}.
    let (qv, tv) = (Rational::new(3, 2), Rational::from_i64(1 << 20));
    for mu in [Partition::empty(), Partition::from([1]), Partition::from([3, 1, 1])] {
        let vals: Vec<Rational> = (1..=60).map(|i| qt_monomial(&qv, &tv, mu.part(i) as i64, -(i as i64)).unwrap()).collect();
        for r in 0..=2 {
            let diff = eigen_tilde_e(&mu, r, &qv, &tv).unwrap().sub(&elementary(&vals, r));
            assert!(diff.abs().0 < num_rational::BigRational::new(1.into(), num_bigint::BigInt::from(2).pow(1000)), "{mu} {r}");
        }
    }
}

#[test]
fn gauss_binomial_tail_coefficients() {
    // (-1)^j t^{(j²-3j)/2} e_j(1, t^{-1}, …, t^{-(n+j-3)}), a list of n+j-2 terms
    let tv = Rational::new(5, 3);
    for n in 1..=5usize {
        for j in 0..=4usize {
            let list: Vec<Rational> = (0..(n + j) as i64 - 2).map(|i| tv.pow(-i).unwrap()).collect();
            let half = (j * j) as i64 - 3 * j as i64;
            assert_eq!(half % 2, 0);
            let direct = tv.pow(half / 2).unwrap().mul(&elementary(&list, j));
            let direct = if j % 2 == 0 { direct } else { direct.neg() };
            assert_eq!(finite_tail_coefficient(j, n, &tv).unwrap(), direct, "j={j} n={n}");
        }
    }
}

#[test]
fn finite_eigenvalues_match_generating_product() {
    let (qv, tv) = (Rational::new(2, 5), Rational::new(-7, 3));
    for w in 0..=3 {
        for mu in enumerate_partitions(w) {
            for r in 0..=3 {
                let n = w + r.max(1);
                let num: Vec<Rational> = (1..=n).map(|j| qt_monomial(&qv, &tv, mu.part(j) as i64, -(j as i64)).unwrap()).collect();
                let den: Vec<Rational> = (1..n as i64).map(|j| tv.pow(-j).unwrap()).collect();
                let mut expected = Rational::zero();
                for k in 0..=r {
                    let term = elementary(&num, r - k).mul(&fqft_core::symfun::complete(&den, k));
                    expected = if k % 2 == 0 { expected.add(&term) } else { expected.sub(&term) };
                }
                assert_eq!(finite_eigen_e_r(&mu, r, n, &qv, &tv).unwrap(), expected);
            }
        }
    }
    assert!(finite_eigen_e_r(&Partition::from([2]), 2, 3, &qv, &tv).is_err());
}

#[test]
fn decompositions_match_cells() {
    let (qv, tv) = (Rational::new(4, 11), Rational::new(-3, 5));
    for n in 0..=6 {
        for lam in enumerate_partitions(n) {
            for kind in [CellFunction::E, CellFunction::H, CellFunction::P] {
                for k in 0..=3 {
                    let v = sym_of_cells(&lam, kind, k, &qv, &tv).unwrap();
                    assert!(v.agree(), "{lam} {kind:?} {k}");
                }
            }
        }
    }
}

#[test]
fn psi_display_values() {
    let one = RationalFunction::one();
    let psi1 = psi_decomposition(1, &q(), &t()).unwrap();
    assert_eq!(psi1[&Partition::from([1])], t().neg().div(&one.sub(&q())).unwrap());
    let c1 = one.div(&one.sub(&q()).mul(&t().pow(-1).unwrap().one_minus())).unwrap();
    assert_eq!(psi1[&Partition::empty()], c1);
    let psi2 = psi_decomposition(2, &q(), &t()).unwrap();
    let pre = RationalFunction::from_i64(2).mul(&t().pow(2).unwrap()).div(&q().pow(2).unwrap().one_minus()).unwrap();
    assert_eq!(psi2[&Partition::from([2])], pre);
    assert_eq!(psi2[&Partition::from([1, 1])], pre.mul(&RationalFunction::from_rational(&num_rational::BigRational::new((-1).into(), 2.into()))));
    let psi3 = psi_decomposition(3, &q(), &t()).unwrap();
    let pre3 = RationalFunction::from_i64(-3).mul(&t().pow(3).unwrap()).div(&q().pow(3).unwrap().one_minus()).unwrap();
    assert_eq!(psi3[&Partition::from([3])], pre3);
    assert_eq!(psi3[&Partition::from([2, 1])], pre3.neg());
    assert_eq!(psi3[&Partition::from([1, 1, 1])], pre3.div(&RationalFunction::from_i64(3)).unwrap());
}

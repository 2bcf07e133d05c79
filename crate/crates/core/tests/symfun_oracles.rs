use fqft_core::exactalg::{QSeries, Rational, RationalFunction, Scalar};
use fqft_core::partitions::{enumerate_partitions, Partition};
use fqft_core::symfun::{
    alpha_coefficients, b_c_polynomials, basis_convert, beta_gamma_coefficients, elementary, genpoly_mul, omega, power_sum, Basis,
    GenPoly, SymmetricFunction,
};

fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

/// `log(1 + Σ e_k z^k) = Σ_ℓ (-1)^{ℓ-1}/ℓ (Σ e_k z^k)^ℓ`; the multinomial
/// count of `e_λ` in the ℓ-th power is `ℓ!/Π m_i!`.
fn alpha_oracle(lam: &Partition) -> Rational {
    let l = lam.len();
    let denom: i64 = lam.multiplicities().iter().map(|&m| factorial(m)).product();
    let sign = if l % 2 == 1 { 1 } else { -1 };
    Rational::new(sign * factorial(l - 1), denom)
}

#[test]
fn alpha_matches_multinomial_formula() {
    let table = alpha_coefficients(8);
    for n in 1..=8 {
        for lam in enumerate_partitions(n) {
            assert_eq!(table.get(&lam), alpha_oracle(&lam), "{lam}");
        }
    }
    assert_eq!(table.get(&Partition::from([4])), Rational::one());
}

#[test]
fn alpha_reproduces_log_of_concrete_series() {
    // log Π (1 + x_i z) = Σ_m (-1)^{m-1} p_m(x) z^m / m
    let xs = [Rational::new(2, 3), Rational::new(-5, 7), Rational::from_i64(3)];
    let table = alpha_coefficients(6);
    for m in 1..=6 {
        let mut lhs = Rational::zero();
        for (lam, a) in table.degree(m) {
            let e: Rational = lam.parts().iter().fold(Rational::one(), |acc, &k| acc.mul(&elementary(&xs, k)));
            lhs = lhs.add(&a.mul(&e));
        }
        let sign = if m % 2 == 1 { 1 } else { -1 };
        let rhs = power_sum(&xs, m).mul(&Rational::new(sign, m as i64));
        assert_eq!(lhs, rhs, "degree {m}");
    }
}

const ORDER: usize = 12;
const ZDEG: usize = 5;

fn qvar() -> QSeries<Rational> {
    QSeries::monomial(Rational::one(), 1, ORDER)
}

fn a_values() -> Vec<Rational> {
    vec![Rational::one(), Rational::new(3, 2), Rational::new(-2, 5), Rational::from_i64(7), Rational::new(1, 3), Rational::new(-4, 9)]
}

type ZPoly = Vec<QSeries<Rational>>;

fn zmul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let mut out = vec![QSeries::zero(ORDER); ZDEG + 1];
    for i in 0..=ZDEG {
        for j in 0..=ZDEG - i {
            out[i + j] = out[i + j].add(&a[i].mul(&b[j]));
        }
    }
    out
}

fn zinv(a: &ZPoly) -> ZPoly {
    let mut out = vec![QSeries::zero(ORDER); ZDEG + 1];
    let inv0 = a[0].inv().unwrap();
    out[0] = inv0.clone();
    for m in 1..=ZDEG {
        let mut s = QSeries::zero(ORDER);
        for r in 1..=m {
            s = s.add(&a[r].mul(&out[m - r]));
        }
        out[m] = s.neg().mul(&inv0);
    }
    out
}

/// `Π_{n=0}^{ORDER} Σ_r a_r q^{nr} z^r`; later factors are `1 + O(q^{ORDER+1})`.
fn direct_product(a: &[Rational]) -> ZPoly {
    let mut acc: ZPoly = (0..=ZDEG).map(|i| if i == 0 { QSeries::one(ORDER) } else { QSeries::zero(ORDER) }).collect();
    for n in 0..=ORDER {
        let factor: ZPoly = (0..=ZDEG).map(|r| QSeries::monomial(a[r].clone(), n * r, ORDER)).collect();
        acc = zmul(&acc, &factor);
    }
    acc
}

fn evaluate_genpoly(p: &GenPoly<QSeries<Rational>>, a: &[Rational]) -> QSeries<Rational> {
    p.iter().fold(QSeries::zero(ORDER), |acc, (mu, c)| {
        let am = mu.parts().iter().fold(Rational::one(), |x, &r| x.mul(&a[r]));
        acc.add(&c.scale(&am))
    })
}

#[test]
fn beta_gamma_match_direct_product() {
    let a = a_values();
    let (b, c) = b_c_polynomials(ZDEG, &qvar()).unwrap();
    let prod = direct_product(&a);
    let inv = zinv(&prod);
    for m in 0..=ZDEG {
        assert_eq!(evaluate_genpoly(&b[m], &a), prod[m], "b_{m}");
        assert_eq!(evaluate_genpoly(&c[m], &a), inv[m], "c_{m}");
    }
}

#[test]
fn single_generator_case_is_euler() {
    // a_1 only: Π (1 + q^n z) = Σ q^{m(m-1)/2} z^m / (q;q)_m.
    let q = RationalFunction::var("q");
    let (beta, gamma) = beta_gamma_coefficients(6, &q).unwrap();
    for m in 1..=6usize {
        let qpoch = (1..=m as i64).fold(RationalFunction::one(), |acc, j| acc.mul(&q.pow(j).unwrap().one_minus()));
        let ones = Partition::new(vec![1; m]);
        let expected_b = q.pow((m * (m - 1) / 2) as i64).unwrap().div(&qpoch).unwrap();
        let sign = if m % 2 == 0 { 1 } else { -1 };
        let expected_c = RationalFunction::from_i64(sign).div(&qpoch).unwrap();
        assert_eq!(beta.get(&ones), expected_b, "beta {ones}");
        assert_eq!(gamma.get(&ones), expected_c, "gamma {ones}");
    }
}

#[test]
fn generating_series_are_inverse() {
    let q = RationalFunction::var("q");
    let n = 8;
    let (b, c) = b_c_polynomials(n, &q).unwrap();
    for m in 0..=n {
        let mut acc: GenPoly<RationalFunction> = GenPoly::new();
        for i in 0..=m {
            for (k, v) in genpoly_mul(&b[i], &c[m - i], n) {
                let e = acc.entry(k).or_insert_with(RationalFunction::zero);
                *e = e.add(&v);
            }
        }
        acc.retain(|_, v| !v.is_zero());
        let expected: GenPoly<RationalFunction> =
            if m == 0 { [(Partition::empty(), RationalFunction::one())].into_iter().collect() } else { GenPoly::new() };
        assert_eq!(acc, expected, "degree {m}");
    }
}

#[test]
fn weighted_homogeneity() {
    let q = RationalFunction::var("q");
    let (b, c) = b_c_polynomials(5, &q).unwrap();
    for m in 0..=5 {
        assert!(b[m].keys().chain(c[m].keys()).all(|mu| mu.weight() == m));
    }
    // a_r -> λ^r a_r scales b_m, c_m by λ^m, evaluated at concrete a, q.
    let qv = Rational::new(2, 7);
    let (bq, cq) = b_c_polynomials(5, &qv).unwrap();
    let a = a_values();
    let lambda = Rational::new(-3, 4);
    let scaled: Vec<Rational> = a.iter().enumerate().map(|(r, x)| x.mul(&lambda.pow(r as i64).unwrap())).collect();
    let ev = |p: &GenPoly<Rational>, a: &[Rational]| {
        p.iter().fold(Rational::zero(), |acc, (mu, x)| acc.add(&x.mul(&mu.parts().iter().fold(Rational::one(), |y, &r| y.mul(&a[r])))))
    };
    for m in 0..=5 {
        let f = lambda.pow(m as i64).unwrap();
        assert_eq!(ev(&bq[m], &scaled), ev(&bq[m], &a).mul(&f));
        assert_eq!(ev(&cq[m], &scaled), ev(&cq[m], &a).mul(&f));
    }
}

#[test]
fn beta_gamma_denominators_are_cyclotomic() {
    let q = RationalFunction::var("q");
    let (beta, gamma) = beta_gamma_coefficients(5, &q).unwrap();
    let big = (1..=5).fold(RationalFunction::one(), |acc, k| acc.mul(&q.pow(k).unwrap().one_minus()));
    for v in beta.entries.values().chain(gamma.entries.values()) {
        assert!(v.mul(&big).is_polynomial(), "{v}");
    }
}

#[test]
fn omega_swaps_e_and_h() {
    for n in 1..=8 {
        let e = SymmetricFunction::<Rational>::element(Basis::Elementary, Partition::from([n]));
        let h = SymmetricFunction::<Rational>::element(Basis::Complete, Partition::from([n]));
        assert_eq!(omega(&e).unwrap(), basis_convert(&h, Basis::Power).unwrap());
    }
}

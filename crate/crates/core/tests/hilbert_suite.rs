use fqft_core::correlators::{closed_form_library, BracketParams};
use fqft_core::exactalg::eval::{random_rational, rng_from_seed, Env};
use fqft_core::exactalg::{check, Identity, Mode, QSeries, Rational, RationalFunction, Scalar};
use fqft_core::hilbert::*;
use fqft_core::partitions::enumerate_partitions;
use fqft_core::symfun::{complete, elementary, power_sum};
use fqft_core::Error;

fn point(seed: u64) -> KParams<Rational> {
    let mut rng = rng_from_seed(seed);
    KParams::new(random_rational(&mut rng), random_rational(&mut rng), random_rational(&mut rng), random_rational(&mut rng))
}

fn sym() -> KParams<RationalFunction> {
    KParams::new(RationalFunction::var("t1"), RationalFunction::var("t2"), RationalFunction::var("u"), RationalFunction::var("v"))
}

#[test]
fn main_identity_holds() {
    assert!(verify_main_identity((0, 0), 5, &Mode::evaluate(1)).unwrap().passed);
    assert!(verify_main_identity((1, 0), 4, &Mode::evaluate(2)).unwrap().passed);
    assert!(verify_main_identity((2, -1), 4, &Mode::evaluate(3)).unwrap().passed);
    assert!(verify_main_identity((0, 0), 2, &Mode::Symbolic).unwrap().passed);
}

#[test]
fn untwisted_sum_is_the_plain_localization_sum() {
    // with u = v = 0 the twist factor disappears
    let p = point(4);
    let p0 = KParams::untwisted(p.t1.clone(), p.t2.clone());
    let ins = [BundleInsertion::new(Operation::Plain, (1, 0)), BundleInsertion::new(Operation::Plain, (0, 2))];
    let s = chi_c2_series(&ins, (3, -1), &p0, 5).unwrap();
    for n in 0..=5 {
        let mut c = Rational::zero();
        for mu in enumerate_partitions(n) {
            let mut term = Rational::one();
            for a in &ins {
                let mut sum = Rational::zero();
                for st in mu.cell_statistics() {
                    sum = sum.add(&p.t1.pow(st.coleg as i64 + a.weight.0).unwrap().mul(&p.t2.pow(st.coarm as i64 + a.weight.1).unwrap()));
                }
                term = term.mul(&sum);
            }
            for st in mu.cell_statistics() {
                let (a, l) = (st.arm as i64, st.leg as i64);
                let d1 = p.t1.pow(-l).unwrap().mul(&p.t2.pow(a + 1).unwrap()).one_minus();
                let d2 = p.t1.pow(l + 1).unwrap().mul(&p.t2.pow(-a).unwrap()).one_minus();
                term = term.div(&d1.mul(&d2)).unwrap();
            }
            c = c.add(&term);
        }
        assert_eq!(s.coeff(n), c, "Q^{n}");
    }
}

#[test]
fn newton_relations_between_operations() {
    // p2 = e1² - 2e2 and h2 = e1² - e2 on every weight multiset
    let p = point(5);
    let a = (1, -1);
    let series = |op| chi_c2_series(&[BundleInsertion::new(op, a)], (0, 1), &p, 4).unwrap();
    let psi2 = series(Operation::Psi(2));
    let lam1 = series(Operation::Lambda(1));
    let lam2 = series(Operation::Lambda(2));
    let sig2 = series(Operation::Sigma(2));
    let plain = series(Operation::Plain);
    assert_eq!(plain, lam1);
    let sq = chi_c2_series(&[BundleInsertion::new(Operation::Plain, a), BundleInsertion::new(Operation::Plain, a)], (0, 1), &p, 4).unwrap();
    assert_eq!(psi2, sq.sub(&lam2.scale(&Rational::from_i64(2))));
    assert_eq!(sig2, sq.sub(&lam2));
    let w = [Rational::new(2, 3), Rational::new(-5, 7), Rational::new(3, 1)];
    assert_eq!(Operation::Sigma(3).apply(&w), complete(&w, 3));
    assert_eq!(Operation::Lambda(2).apply(&w), elementary(&w, 2));
    assert_eq!(Operation::Psi(3).apply(&w), power_sum(&w, 3));
}

#[test]
fn central_theorem_single_insertions() {
    for (m, a, twist) in [(1, (0, 0), (0, 0)), (2, (1, 0), (0, 1)), (1, (0, 1), (1, 0))] {
        let id = CentralTheorem { insertions: vec![BundleInsertion::psi(m, a)], twist, order: 5 };
        let v = check(&id, &Mode::evaluate(6)).unwrap();
        assert!(v.passed, "{v:?}");
    }
}

#[test]
fn central_theorem_two_insertions() {
    let id = CentralTheorem { insertions: vec![BundleInsertion::psi(1, (1, 0)), BundleInsertion::psi(2, (0, 1))], twist: (1, 0), order: 4 };
    assert!(check(&id, &Mode::evaluate(7)).unwrap().passed);
}

#[test]
fn central_theorem_symbolic_low_order() {
    let id = CentralTheorem { insertions: vec![BundleInsertion::psi(1, (0, 0))], twist: (0, 0), order: 2 };
    assert!(check(&id, &Mode::Symbolic).unwrap().passed);
}

#[test]
fn psi1_closed_form_gives_single_box_coefficient() {
    let p = point(8);
    let a1 = (1, 1);
    let a = (0, 1);
    let ta = p.character(a).unwrap();
    let bp = BracketParams::new(p.t2.clone(), p.t1.inv().unwrap(), p.u.mul(&ta), p.v.div(&ta).unwrap());
    let primed = closed_form_library("Psi1").unwrap().expand(&bp, 3).unwrap();
    let raw = primed.mul(&main_identity_rhs(a, &p, 3).unwrap()).scale(&p.character(a1).unwrap());
    let direct = chi_c2_series(&[BundleInsertion::new(Operation::Plain, a1)], a, &p, 3).unwrap();
    assert_eq!(raw, direct);
}

#[test]
fn non_psi_insertions_are_rejected_by_the_bridge() {
    let p = point(9);
    let r = chi_via_correlators(&[BundleInsertion::new(Operation::Lambda(2), (0, 0))], (0, 0), &p, 2);
    assert!(matches!(r, Err(Error::Precondition(_))));
}

#[test]
fn coh_single_box() {
    let (w1, w2) = (RationalFunction::var("w1"), RationalFunction::var("w2"));
    let s = coh_intersection_series(&[], &w1, &w2, 1).unwrap();
    assert_eq!(s.coeff(1), RationalFunction::one().div(&w1.mul(&w2)).unwrap());
    let c0 = coh_intersection_series(&[ChInsertion { k: 0, weight: (3, 1) }], &w1, &w2, 3).unwrap();
    let plain = coh_intersection_series(&[], &w1, &w2, 3).unwrap();
    for n in 0..=3 {
        assert_eq!(c0.coeff(n), plain.coeff(n).scale_i64(n as i64));
    }
}

#[test]
fn coh_chern_single_box_and_slice() {
    let (w1, w2) = (RationalFunction::var("w1"), RationalFunction::var("w2"));
    let a = (2, -1);
    let s = coh_chern_series(&[], a, &w1, &w2, 3).unwrap();
    let c = w1.scale_i64(2).sub(&w2);
    let e = w1.mul(&w2);
    // (x + c)(y - c)/e
    assert_eq!(s[1][&(1, 1)], RationalFunction::one().div(&e).unwrap());
    assert_eq!(s[1][&(1, 0)], c.neg().div(&e).unwrap());
    assert_eq!(s[1][&(0, 1)], c.div(&e).unwrap());
    assert_eq!(s[1][&(0, 0)], c.mul(&c).neg().div(&e).unwrap());
    let ins = [ChInsertion { k: 2, weight: (1, 0) }];
    let twisted = coh_chern_series(&ins, a, &w1, &w2, 3).unwrap();
    assert_eq!(chern_slice(&twisted), coh_intersection_series(&ins, &w1, &w2, 3).unwrap());
}

#[test]
fn k_theory_jets_match_cohomology() {
    let mut rng = rng_from_seed(10);
    for _ in 0..3 {
        let (w1, w2) = (random_rational(&mut rng), random_rational(&mut rng));
        for ins in [None, Some((0, 0)), Some((1, -2))] {
            let k = k_theory_jet(ins, &w1, &w2, 3, 4).unwrap();
            let c = coh_todd_jet(ins, &w1, &w2, 3, 4).unwrap();
            assert_eq!(k, c, "{ins:?}");
            // leading term is the cohomological series itself
            let chs: Vec<ChInsertion> = ins.into_iter().map(|a| ChInsertion { k: 0, weight: a }).collect();
            let lead = coh_intersection_series(&chs, &w1, &w2, 3).unwrap();
            for n in 0..=3 {
                assert_eq!(k[n][0], lead.coeff(n));
            }
        }
    }
}

#[test]
fn single_chart_surface_reduces_to_c2() {
    let p = point(11);
    let surface = SurfaceData::single_chart(&[("L", (1, -1)), ("L1", (0, 2))]);
    let s = toric_chi_series(&surface, &[MarkedInsertion::exterior("L1")], "L", &p, 4, 2).unwrap();
    assert_eq!(s[&vec![0]], chi_c2_series(&[], (1, -1), &p, 4).unwrap());
    let lam = |m| chi_c2_series(&[BundleInsertion::new(Operation::Lambda(m), (0, 2))], (1, -1), &p, 4).unwrap();
    assert_eq!(s[&vec![1]], lam(1));
    assert_eq!(s[&vec![2]], lam(2));
    let sym = toric_chi_series(&surface, &[MarkedInsertion::symmetric("L1")], "L", &p, 4, 2).unwrap();
    assert_eq!(sym[&vec![2]], chi_c2_series(&[BundleInsertion::new(Operation::Sigma(2), (0, 2))], (1, -1), &p, 4).unwrap());
}

#[test]
fn p2_untwisted_series_is_the_triple_sum() {
    let p = point(12);
    let p0 = KParams::untwisted(p.t1.clone(), p.t2.clone());
    let surface = SurfaceData::builtin("P2").unwrap();
    let s = toric_chi_series(&surface, &[], "L", &p0, 3, 0).unwrap();
    let charts: Vec<Chart<Rational>> = (0..3).map(|i| surface.chart(i, &p0).unwrap()).collect();
    for n in 0..=3 {
        let mut c = Rational::zero();
        for n0 in 0..=n {
            for n1 in 0..=n - n0 {
                let n2 = n - n0 - n1;
                for a in enumerate_partitions(n0) {
                    for b in enumerate_partitions(n1) {
                        for d in enumerate_partitions(n2) {
                            let t = Rational::one()
                                .div(&charts[0].tangent_denominator(&a).unwrap())
                                .unwrap()
                                .div(&charts[1].tangent_denominator(&b).unwrap())
                                .unwrap()
                                .div(&charts[2].tangent_denominator(&d).unwrap())
                                .unwrap();
                            c = c.add(&t);
                        }
                    }
                }
            }
        }
        assert_eq!(s[&vec![]].coeff(n), c, "Q^{n}");
    }
}

#[test]
fn toric_series_is_multiplicative() {
    let p = point(13);
    for name in ["P2", "P1xP1"] {
        let surface = SurfaceData::builtin(name).unwrap();
        let whole = toric_chi_series(&surface, &[], "L", &p, 3, 0).unwrap();
        let mut prod = QSeries::one(3);
        for fp in &surface.fixed_points {
            let single = SurfaceData { name: String::new(), fixed_points: vec![fp.clone()] };
            prod = prod.mul(&toric_chi_series(&single, &[], "L", &p, 3, 0).unwrap()[&vec![]]);
        }
        assert_eq!(whole[&vec![]], prod, "{name}");
    }
}

#[test]
fn euler_characteristics_of_line_bundles() {
    let p = sym();
    let one = RationalFunction::one();
    let p2 = SurfaceData::builtin("P2").unwrap();
    assert_eq!(chi_surface(&p2, &[], &p, 1).unwrap(), one);
    assert_eq!(chi_surface(&p2, &[("L1", 1)], &p, 1).unwrap(), one.add(&p.t1).add(&p.t2));
    let q = SurfaceData::builtin("P1xP1").unwrap();
    assert_eq!(chi_surface(&q, &[], &p, 1).unwrap(), one);
    assert_eq!(chi_surface(&q, &[("L1", 1)], &p, 1).unwrap(), one.add(&p.t1));
}

#[test]
fn missing_bundle_is_reported() {
    let p = point(14);
    let surface = SurfaceData::single_chart(&[("L", (0, 0))]);
    let r = toric_chi_series(&surface, &[MarkedInsertion::exterior("L7")], "L", &p, 2, 1);
    assert!(matches!(r, Err(Error::MissingBundle { point: 0, .. })));
    assert!(SurfaceData::from_json(r#"{"fixed_points": [{"tangent": [[0,0],[0,1]], "bundles": {}}]}"#).is_err());
    assert!(SurfaceData::from_json(r#"{"fixed_points": []}"#).is_err());
}

#[test]
fn toric_checks_on_p2_and_p1xp1() {
    for name in ["P2", "P1xP1"] {
        let surface = SurfaceData::builtin(name).unwrap();
        for which in TORIC_CHECKS {
            let v = toric_correlator_check(&surface, which, 3, &Mode::evaluate(15)).unwrap();
            assert!(v.passed, "{name} {which}: {v:?}");
        }
    }
}

#[test]
fn printed_lambda2_expression_disagrees() {
    let surface = SurfaceData::builtin("P2").unwrap();
    let v = check(&PrintedLambda2 { surface, order: 3 }, &Mode::evaluate(16)).unwrap();
    assert!(!v.passed);
}

#[test]
fn lambda1_closed_form_needs_trivial_twist() {
    let mut surface = SurfaceData::builtin("P2").unwrap();
    surface.fixed_points[1].bundles.insert("L".into(), [1, 0]);
    let id = ToricCheck { surface, which: ToricWhich::Lambda1, order: 2 };
    let env = Env::new().with("t1", Rational::new(2, 3)).with("t2", Rational::new(5, 7)).with("u", Rational::new(3, 11)).with("v", Rational::new(-4, 9));
    assert!(matches!(id.comparisons(&env), Err(Error::UnsupportedSurface(_))));
}

#[test]
fn lambda1_closed_form_fails_for_nontrivial_twist() {
    // the fixed-point ratio sees u t^{A^i}; the closed form only sees u
    let p = point(17);
    let mut surface = SurfaceData::builtin("P2").unwrap();
    surface.fixed_points[1].bundles.insert("L".into(), [1, 0]);
    let s = toric_chi_series(&surface, &[MarkedInsertion::exterior("L1")], "L", &p, 2, 1).unwrap();
    let ratio = s[&vec![1]].div(&s[&vec![0]]).unwrap();
    let one = QSeries::one(2);
    let f = QSeries::monomial(p.u.one_minus().mul(&p.v.one_minus()), 1, 2).div(&one.sub(&QSeries::monomial(p.u.clone(), 1, 2))).unwrap();
    let closed = f.scale(&chi_surface(&surface, &[("L1", 1)], &p, 1).unwrap());
    assert_ne!(ratio, closed);
}

use std::collections::BTreeMap;

use fqft_core::correlators::*;
use fqft_core::exactalg::eval::{random_rational, rng_from_seed};
use fqft_core::exactalg::{QSeries, Rational, RationalFunction, Scalar};

fn points(seed: u64) -> Vec<BracketParams<Rational>> {
    let mut rng = rng_from_seed(seed);
    (0..3)
        .map(|_| BracketParams::new(random_rational(&mut rng), random_rational(&mut rng), random_rational(&mut rng), random_rational(&mut rng)))
        .collect()
}

fn symbolic() -> BracketParams<RationalFunction> {
    BracketParams::new(RationalFunction::var("q"), RationalFunction::var("t"), RationalFunction::var("u"), RationalFunction::var("v"))
}

fn both(word: &str, p: &BracketParams<Rational>, n: usize, norm: Normalization) -> (QSeries<Rational>, QSeries<Rational>) {
    let req = CorrelatorRequest::parse(word, p.clone(), n, norm).unwrap();
    (vertex_correlator(&req).unwrap(), bracket_bruteforce(&req).unwrap())
}

#[test]
fn vertex_engine_matches_partition_sums() {
    for p in points(11) {
        for word in ["E1", "E2", "E3", "E1E1", "E1E2"] {
            let (a, b) = both(word, &p, 5, Normalization::Primed);
            assert_eq!(a, b, "{word}");
        }
        let (a, b) = both("E2", &p, 4, Normalization::Raw);
        assert_eq!(a, b, "raw E2");
    }
}

#[test]
fn vertex_word_order_does_not_matter() {
    for p in points(12) {
        let a = vertex_tilde_word(&[1, 2], &p, 5).unwrap();
        let b = vertex_tilde_word(&[2, 1], &p, 5).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn psi_words_through_tilde_polynomials() {
    let p = &points(13)[0];
    for word in ["Psi1", "Psi2", "Psi3", "Psi1Psi1", "Lambda2", "Sigma2", "M2"] {
        let n = if word == "Psi3" { 4 } else { 5 };
        let (a, b) = both(word, p, n, Normalization::Primed);
        assert_eq!(a, b, "{word}");
    }
}

#[test]
fn closed_forms_match_partition_sums() {
    for p in points(14) {
        for name in CLOSED_FORM_NAMES {
            let cf = closed_form_library(name).unwrap();
            let req = cf.request(p.clone(), 6).unwrap();
            assert_eq!(cf.expand(&p, 6).unwrap(), bracket_bruteforce(&req).unwrap(), "{name}");
        }
    }
}

#[test]
fn lambda2_display_is_half_the_psi_difference() {
    let p = &points(15)[0];
    let combined = closed_form_library("Lambda2").unwrap().expr().eval_series(&|n| p.lookup(n), 6).unwrap();
    let via = lambda2_via_psi().eval_series(&|n| p.lookup(n), 6).unwrap();
    assert_eq!(combined, via);
}

#[test]
fn e1_corollary_symbolic() {
    let p = symbolic();
    let cf = closed_form_library("E1").unwrap();
    let req = cf.request(p.clone(), 4).unwrap();
    assert_eq!(cf.expand(&p, 4).unwrap(), bracket_bruteforce(&req).unwrap());
}

#[test]
fn base_brackets_symbolic_to_order_eight() {
    let (u, v) = (RationalFunction::var("u"), RationalFunction::var("v"));
    for k in -6..=6 {
        assert_eq!(base_bracket_z(k, &u, &v, 8).unwrap(), base_bracket_direct(k, &u, &v, 8).unwrap(), "k = {k}");
    }
}

#[test]
fn base_bracket_examples() {
    let (u, v) = (RationalFunction::var("u"), RationalFunction::var("v"));
    let q = QSeries::monomial(RationalFunction::one(), 1, 6);
    let one = QSeries::one(6);
    let w = QSeries::constant(u.clone(), 6).mul(&q);
    let k3 = base_bracket_z(3, &u, &v, 6).unwrap();
    let expect = QSeries::constant(v.one_minus().neg(), 6).mul(&one.sub(&q)).div(&one.sub(&w)).unwrap();
    assert_eq!(k3, expect);
    let km2 = base_bracket_z(-2, &u, &v, 6).unwrap();
    let uv = QSeries::constant(u.mul(&v), 6).mul(&q);
    let expect = w.neg().mul(&q).scale(&u.one_minus()).mul(&one.sub(&uv)).div(&one.sub(&w)).unwrap();
    assert_eq!(km2, expect);
}

#[test]
fn grading_invariant_holds_through_extraction() {
    let p = &points(16)[0];
    let mut state = BracketState::new(3, Rational::one(), 5);
    let c = vec![Rational::from_i64(2); 11];
    let mut base = |k: i64| base_bracket_z(k, &p.u, &p.v, 5);
    for m in (0..3).rev() {
        for a in 0..m {
            state.multiply_pair(a, m, &c);
        }
        state.extract_last(&mut base).unwrap();
        state.check_grading().unwrap();
    }
    assert_eq!(state.vars(), 0);
}

#[test]
fn connected_two_point_display() {
    let (a, b, ab) = (RationalFunction::var("a"), RationalFunction::var("b"), RationalFunction::var("c"));
    let raw: BTreeMap<Vec<u8>, RationalFunction> = [(vec![1], a.clone()), (vec![2], b.clone()), (vec![1, 2], ab.clone())].into_iter().collect();
    let c = connected_correlators(&raw).unwrap();
    assert_eq!(c[&vec![1]], a);
    assert_eq!(c[&vec![1, 2]], ab.sub(&a.mul(&b)));
}

#[test]
fn connected_three_point_has_plus_two() {
    let v = |s: &str| RationalFunction::var(s);
    let raw: BTreeMap<Vec<u8>, RationalFunction> = [
        (vec![1], v("a")),
        (vec![2], v("b")),
        (vec![3], v("c")),
        (vec![1, 2], v("d")),
        (vec![1, 3], v("e")),
        (vec![2, 3], v("f")),
        (vec![1, 2, 3], v("g")),
    ]
    .into_iter()
    .collect();
    let c = connected_correlators(&raw).unwrap();
    let expect = v("g")
        .sub(&v("d").mul(&v("c")))
        .sub(&v("e").mul(&v("b")))
        .sub(&v("f").mul(&v("a")))
        .add(&v("a").mul(&v("b")).mul(&v("c")).scale_i64(2));
    assert_eq!(c[&vec![1, 2, 3]], expect);
}

#[test]
fn missing_subword_is_an_error() {
    let raw: BTreeMap<Vec<u8>, Rational> = [(vec![1, 2], Rational::one())].into_iter().collect();
    assert!(connected_correlators(&raw).is_err());
}

fn random_table(seed: u64) -> BTreeMap<Vec<usize>, Rational> {
    let mut rng = rng_from_seed(seed);
    let mut out = BTreeMap::new();
    for n in 1..=4usize {
        for mask in 0..4usize.pow(n as u32) {
            let w: Vec<usize> = (0..n).map(|i| (mask / 4usize.pow(i as u32)) % 4).collect();
            out.insert(w, random_rational(&mut rng));
        }
    }
    out
}

#[test]
fn connected_inversion_is_two_sided() {
    let t = random_table(17);
    assert_eq!(disconnected_correlators(&connected_correlators(&t).unwrap()).unwrap(), t);
    assert_eq!(connected_correlators(&disconnected_correlators(&t).unwrap()).unwrap(), t);
}

#[test]
fn free_energy_gives_connected_correlators() {
    // a commuting table: values depend only on the multiset
    let full = random_table(18);
    let table: BTreeMap<Vec<usize>, Rational> = full
        .iter()
        .map(|(w, _)| {
            let mut s = w.clone();
            s.sort();
            (s.clone(), full[&s].clone())
        })
        .collect();
    let layer = fqft_layer(4, &table, 4).unwrap();
    let sorted: BTreeMap<Vec<usize>, Rational> = table.iter().filter(|(w, _)| w.windows(2).all(|p| p[0] <= p[1])).map(|(w, c)| (w.clone(), c.clone())).collect();
    assert_eq!(correlators_from_z(&layer), sorted);
    let conn = connected_correlators(&table).unwrap();
    for (w, c) in connected_from_f(&layer) {
        assert_eq!(c, conn[&w], "{w:?}");
    }
}

#[test]
fn disconnected_single_observable() {
    let c = Rational::new(3, 5);
    let table: BTreeMap<Vec<usize>, Rational> = [(vec![0], c.clone()), (vec![0, 0], c.mul(&c))].into_iter().collect();
    let layer = fqft_layer(1, &table, 2).unwrap();
    assert_eq!(layer.z.coeff(&[2]), c.mul(&c).div(&Rational::from_i64(2)).unwrap());
    assert_eq!(layer.f.terms.len(), 1);
    assert_eq!(layer.f.coeff(&[1]), c);
    assert!(layer.g.terms.is_empty());
}

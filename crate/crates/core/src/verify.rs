//! The acceptance criteria as runnable checks with stable identifiers.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::correlators::{
    base_bracket_direct, base_bracket_z, bracket_bruteforce, closed_form_library, connected_correlators, disconnected_correlators,
    vertex_correlator, BracketParams, CorrelatorRequest, Normalization,
};
use crate::error::{Error, Result};
use crate::exactalg::eval::{random_rational, rng_from_seed, series_pairs, Comparison, Env};
use crate::exactalg::{check, Expr, Identity, Mode, QSeries, Rational, RationalFunction, Scalar, Verdict};
use crate::hilbert::{toric_correlator_check, verify_main_identity, BundleInsertion, CentralTheorem, PrintedLambda2, SurfaceData, TORIC_CHECKS};
use crate::macdonald::{apply_e, b_norm, eigen_e, macdonald_p, specialize_eps, specialize_eps_of, sym_of_cells, CellFunction};
use crate::partitions::{enumerate_partitions, euler_count_check, nekrasov_okounkov_check, Partition};
use crate::symfun::{alpha_coefficients, b_c_polynomials, basis_convert, genpoly_mul, inner_product, Basis, GenPoly, Pairing};

/// Options shared by every criterion.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    /// Replaces the pinned truncation order of the series criteria.
    pub order: Option<usize>,
    pub seed: u64,
    pub trials: usize,
    /// Replaces evaluate mode by symbolic mode where a criterion samples.
    pub symbolic: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { order: None, seed: 1, trials: 3, symbolic: false }
    }
}

impl RunConfig {
    fn order(&self, pinned: usize) -> usize {
        self.order.unwrap_or(pinned)
    }

    fn mode(&self, salt: u64) -> Mode {
        if self.symbolic {
            Mode::Symbolic
        } else {
            Mode::Evaluate { trials: self.trials, seed: self.seed.wrapping_mul(1_000_003).wrapping_add(salt) }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Criterion {
    pub number: usize,
    pub id: &'static str,
    pub title: &'static str,
}

pub const CRITERIA: [Criterion; 14] = [
    Criterion { number: 1, id: "base-brackets", title: "base brackets against their closed forms (symbolic)" },
    Criterion { number: 2, id: "e1-corollary", title: "<E1>' partition sum against its closed form" },
    Criterion { number: 3, id: "e2-closed-form", title: "<E2>' partition sum against its closed form" },
    Criterion { number: 4, id: "e1e1-two-point", title: "<E1E1>' partition sum against the two-point function" },
    Criterion { number: 5, id: "vertex-vs-bruteforce", title: "vertex engine against partition sums" },
    Criterion { number: 6, id: "psi-lambda-closed-forms", title: "Psi1, Psi2, Psi1^2, 2 Lambda2 closed forms" },
    Criterion { number: 7, id: "macdonald-suite", title: "Macdonald triangularity, orthogonality, eigenrelation, specialization" },
    Criterion { number: 8, id: "alpha-beta-gamma-tables", title: "alpha, b_m, c_m tables against the displays" },
    Criterion { number: 9, id: "sym-of-cells", title: "cell symmetric functions by two routes" },
    Criterion { number: 10, id: "main-identity", title: "rank-one exponential identity" },
    Criterion { number: 11, id: "central-theorem", title: "localization sums against the correlator engine" },
    Criterion { number: 12, id: "toric-identities", title: "toric x1, x1x2, x1^2 identities on P2 and P1xP1" },
    Criterion { number: 13, id: "partition-identities", title: "Nekrasov-Okounkov identity and partition counts" },
    Criterion { number: 14, id: "connected-inversion", title: "connected correlators and their inverse" },
];

#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub number: usize,
    pub id: &'static str,
    pub title: &'static str,
    pub passed: bool,
    pub verified_against: &'static str,
    /// One line per sub-check.
    pub checks: Vec<String>,
    /// Printed values that were replaced by corrected ones.
    pub errata: Vec<String>,
    pub counterexample: Option<String>,
}

impl CriterionReport {
    pub fn summary_line(&self) -> String {
        let mut s = format!("{} criterion {:>2} {}: {}", if self.passed { "PASS" } else { "FAIL" }, self.number, self.id, self.title);
        if !self.errata.is_empty() {
            s.push_str(&format!(" [errata: {}]", self.errata.join("; ")));
        }
        s
    }
}

struct Collector {
    checks: Vec<String>,
    errata: Vec<String>,
    counterexample: Option<String>,
    passed: bool,
}

impl Collector {
    fn new() -> Collector {
        Collector { checks: Vec::new(), errata: Vec::new(), counterexample: None, passed: true }
    }

    fn flag(&mut self, label: impl Into<String>, ok: bool) {
        let label = label.into();
        self.checks.push(format!("{} {label}", if ok { "ok" } else { "FAILED" }));
        if !ok {
            self.passed = false;
            if self.counterexample.is_none() {
                self.counterexample = Some(label);
            }
        }
    }

    fn verdict(&mut self, label: impl Into<String>, v: &Verdict) {
        let label = label.into();
        self.checks.push(format!("{} {label} ({}, {} comparisons)", if v.passed { "ok" } else { "FAILED" }, v.mode.name(), v.compared));
        if !v.passed {
            self.passed = false;
            if self.counterexample.is_none() {
                let d = v.discrepancy.as_ref().map(|d| format!("{label}: {} lhs = {} rhs = {}", d.label, d.lhs, d.rhs));
                self.counterexample = d.or(Some(label));
            }
        }
    }

    fn finish(self, number: usize, verified_against: &'static str) -> CriterionReport {
        let c = &CRITERIA[number - 1];
        CriterionReport {
            number,
            id: c.id,
            title: c.title,
            passed: self.passed,
            verified_against,
            checks: self.checks,
            errata: self.errata,
            counterexample: self.counterexample,
        }
    }
}

/// A closed form against the partition sum of its correlator.
pub struct ClosedFormIdentity {
    pub name: &'static str,
    pub order: usize,
}

impl Identity for ClosedFormIdentity {
    fn variables(&self) -> Vec<&'static str> {
        vec!["q", "t", "u", "v"]
    }

    fn comparisons<F: Scalar>(&self, env: &Env<F>) -> Result<Vec<Comparison<F>>> {
        let p = BracketParams::new(env.get("q")?, env.get("t")?, env.get("u")?, env.get("v")?);
        let cf = closed_form_library(self.name)?;
        let lhs = bracket_bruteforce(&cf.request(p.clone(), self.order)?)?;
        Ok(series_pairs(&lhs, &cf.expand(&p, self.order)?))
    }
}

/// The vertex engine against the partition sum for one word.
pub struct VertexIdentity {
    pub word: String,
    pub normalization: Normalization,
    pub order: usize,
}

impl Identity for VertexIdentity {
    fn variables(&self) -> Vec<&'static str> {
        vec!["q", "t", "u", "v"]
    }

    fn comparisons<F: Scalar>(&self, env: &Env<F>) -> Result<Vec<Comparison<F>>> {
        let p = BracketParams::new(env.get("q")?, env.get("t")?, env.get("u")?, env.get("v")?);
        let req = CorrelatorRequest::parse(&self.word, p, self.order, self.normalization)?;
        Ok(series_pairs(&vertex_correlator(&req)?, &bracket_bruteforce(&req)?))
    }
}

fn run_guarded(number: usize, verified_against: &'static str, f: impl FnOnce(&mut Collector) -> Result<()>) -> CriterionReport {
    let mut c = Collector::new();
    if let Err(e) = f(&mut c) {
        c.flag(format!("error: {e}"), false);
    }
    c.finish(number, verified_against)
}

fn criterion_1(cfg: &RunConfig) -> CriterionReport {
    run_guarded(1, "defining series expansion of the base brackets (direct convolution)", |c| {
        let n = cfg.order(8);
        let (u, v) = (RationalFunction::var("u"), RationalFunction::var("v"));
        for k in -6..=6i64 {
            c.flag(format!("z^{k} to Q^{n}"), base_bracket_z(k, &u, &v, n)? == base_bracket_direct(k, &u, &v, n)?);
        }
        Ok(())
    })
}

fn closed_form_criterion(number: usize, names: &[&'static str], pinned: usize, cfg: &RunConfig, symbolic_order: Option<usize>) -> CriterionReport {
    run_guarded(number, "partition-sum brute force of the bracket", |c| {
        let n = cfg.order(pinned);
        for (i, name) in names.iter().enumerate() {
            let v = check(&ClosedFormIdentity { name, order: n }, &cfg.mode(number as u64 * 100 + i as u64))?;
            c.verdict(format!("{name} to Q^{n}"), &v);
            if let Some(sn) = symbolic_order {
                let sn = cfg.order.map(|o| o.min(sn)).unwrap_or(sn);
                let v = check(&ClosedFormIdentity { name, order: sn }, &Mode::Symbolic)?;
                c.verdict(format!("{name} to Q^{sn}"), &v);
            }
        }
        Ok(())
    })
}

fn criterion_5(cfg: &RunConfig) -> CriterionReport {
    run_guarded(5, "partition-sum brute force of the bracket", |c| {
        let n = cfg.order(5);
        for (i, word) in ["E1", "E2", "E3", "E1E1", "E1E2"].into_iter().enumerate() {
            let v = check(&VertexIdentity { word: word.to_string(), normalization: Normalization::Primed, order: n }, &cfg.mode(500 + i as u64))?;
            c.verdict(format!("{word} to Q^{n}"), &v);
        }
        Ok(())
    })
}

fn criterion_7(_cfg: &RunConfig) -> CriterionReport {
    run_guarded(7, "Gram-Schmidt construction checked by dominance, the q,t-pairing and the operator action", |c| {
        let (q, t, u) = (RationalFunction::var("q"), RationalFunction::var("t"), RationalFunction::var("u"));
        let pairing = Pairing::Qt { q: q.clone(), t: t.clone() };
        for n in 0..=6 {
            let parts = enumerate_partitions(n);
            let ps: Vec<_> = parts.iter().map(macdonald_p).collect::<Result<_>>()?;
            let mut tri = true;
            let mut orth = true;
            for (i, lam) in parts.iter().enumerate() {
                tri &= ps[i].coeff(lam).is_one() && ps[i].terms().keys().all(|mu| lam.dominates(mu));
                for j in i..parts.len() {
                    let ip = inner_product(&ps[i], &ps[j], &pairing)?;
                    orth &= if i == j { ip.mul(&b_norm(lam, &q, &t)?).is_one() } else { ip.is_zero() };
                }
            }
            c.flag(format!("triangularity |mu| = {n}"), tri);
            c.flag(format!("orthogonality |mu| = {n}"), orth);
            let mut eig = true;
            for mu in &parts {
                let p = basis_convert(&macdonald_p(mu)?, Basis::Power)?;
                eig &= apply_e(&p, &q, &t)? == p.scale(&eigen_e(mu, &q, &t)?);
            }
            c.flag(format!("eigenrelation |mu| = {n}"), eig);
            if n <= 5 {
                let mut spec = true;
                for lam in &parts {
                    spec &= specialize_eps(lam, &q, &t, &u)? == specialize_eps_of(&macdonald_p(lam)?, &t, &u)?;
                }
                c.flag(format!("specialization |mu| = {n}"), spec);
            }
        }
        Ok(())
    })
}

const ALPHA_DISPLAY: [(&[usize], &str); 6] = [(&[1], "1"), (&[2], "1"), (&[1, 1], "-1/2"), (&[3], "1"), (&[2, 1], "-1"), (&[1, 1, 1], "1/3")];

/// Printed `b_m` coefficients: partition, printed value, corrected value.
const B_DISPLAY: [(&[usize], &str, Option<&str>); 10] = [
    (&[1], "1/(1-q)", None),
    (&[2], "1/(1-q^2)", None),
    (&[1, 1], "q/((1-q)*(1-q^2))", None),
    (&[3], "1/(1-q^3)", None),
    (&[2, 1], "(q+2*q^2)/((1-q^2)*(1-q^3))", None),
    (&[1, 1, 1], "q^3/((1-q)*(1-q^2)*(1-q^3))", None),
    (&[4], "1/(1-q^4)", None),
    (&[3, 1], "(q+q^2+2*q^3)/((1-q^3)*(1-q^4))", None),
    (&[2, 2], "q^2/((1-q^2)*(1-q^4))", None),
    (&[2, 1, 1], "(q^3+2*q^4+3*q^5)/((1-q^2)*(1-q^3)*(1-q^4))", None),
];

const B_DISPLAY_ERRATA: [(&[usize], &str, Option<&str>); 1] =
    [(&[1, 1, 1, 1], "q^6/((1-q)*(1-q^2)*(1-q^3))", Some("q^6/((1-q)*(1-q^2)*(1-q^3)*(1-q^4))"))];

const C_DISPLAY: [(&[usize], &str, Option<&str>); 11] = [
    (&[1], "-1/(1-q)", None),
    (&[2], "-1/(1-q^2)", None),
    (&[1, 1], "-1/((1-q)*(1-q^2))", Some("1/((1-q)*(1-q^2))")),
    (&[3], "-1/(1-q^3)", None),
    (&[2, 1], "-(q+2)/((1-q^2)*(1-q^3))", Some("(q+2)/((1-q^2)*(1-q^3))")),
    (&[1, 1, 1], "-1/((1-q)*(1-q^2)*(1-q^3))", None),
    (&[4], "-1/(1-q^4)", None),
    (&[3, 1], "-(q^2+q+2)/((1-q^3)*(1-q^4))", Some("(q^2+q+2)/((1-q^3)*(1-q^4))")),
    (&[2, 2], "-1/((1-q^2)*(1-q^4))", Some("1/((1-q^2)*(1-q^4))")),
    (&[2, 1, 1], "-(q^2+2*q)/((1-q)*(1-q^3)*(1-q^4))", Some("-(q^2+2*q+3)/((1-q^2)*(1-q^3)*(1-q^4))")),
    (&[1, 1, 1, 1], "-q^3/((1-q)*(1-q^2)*(1-q^3))", Some("1/((1-q)*(1-q^2)*(1-q^3)*(1-q^4))")),
];

fn eval_q<F: Scalar>(src: &str, q: &F) -> Result<F> {
    Expr::parse(src)?.eval_scalar(&|name| if name == "q" { Ok(q.clone()) } else { Err(Error::UnknownName(name.to_string())) })
}

/// `Π_{n=0}^{K} A(q^n z)^{±1}` with `A(z) = 1 + Σ a_r z^r`, `q` a truncated series.
fn product_oracle(inverse: bool, weight: usize, qorder: usize) -> Result<GenPoly<QSeries<Rational>>> {
    let q = QSeries::monomial(Rational::one(), 1, qorder);
    let unit: GenPoly<QSeries<Rational>> = [(Partition::empty(), QSeries::one(qorder))].into_iter().collect();
    let mut acc = unit.clone();
    for n in 0..=qorder {
        let mut x: GenPoly<QSeries<Rational>> = GenPoly::new();
        for r in 1..=weight {
            x.insert(Partition::from([r]), q.pow((n * r) as i64)?);
        }
        let factor = if inverse {
            // (1 + X)^{-1} = Σ (-X)^k
            let neg: GenPoly<QSeries<Rational>> = x.iter().map(|(k, v)| (k.clone(), v.neg())).collect();
            let mut sum = unit.clone();
            let mut power = unit.clone();
            for _ in 0..weight {
                power = genpoly_mul(&power, &neg, weight);
                for (k, v) in &power {
                    let e = sum.entry(k.clone()).or_insert_with(|| QSeries::zero(qorder));
                    *e = e.add(v);
                }
            }
            sum
        } else {
            let mut f = unit.clone();
            f.extend(x);
            f
        };
        acc = genpoly_mul(&acc, &factor, weight);
    }
    Ok(acc)
}

fn criterion_8(_cfg: &RunConfig) -> CriterionReport {
    run_guarded(8, "recursions, the defining products expanded in q, and the multinomial formula", |c| {
        let q = RationalFunction::var("q");
        let alpha = alpha_coefficients(3);
        for (lam, val) in ALPHA_DISPLAY {
            let lam = Partition::from(&lam[..]);
            c.flag(format!("alpha_{lam} = {val}"), alpha.get(&lam) == eval_q::<Rational>(val, &Rational::zero())?);
        }
        let (b, cc) = b_c_polynomials(8, &q)?;
        let qorder = 12;
        let qs = QSeries::monomial(Rational::one(), 1, qorder);
        let b_prod = product_oracle(false, 4, qorder)?;
        let c_prod = product_oracle(true, 4, qorder)?;
        for (label, table, rec, prod) in [
            ("b", B_DISPLAY.iter().chain(B_DISPLAY_ERRATA.iter()).collect::<Vec<_>>(), &b, &b_prod),
            ("c", C_DISPLAY.iter().collect::<Vec<_>>(), &cc, &c_prod),
        ] {
            for (lam, printed, corrected) in table {
                let mu = Partition::from(&lam[..]);
                let rec_val = rec[mu.weight()].get(&mu).cloned().unwrap_or_else(RationalFunction::zero);
                let printed_val = eval_q(printed, &q)?;
                match corrected {
                    None => c.flag(format!("{label}_{} coefficient of a_{mu} = {printed}", mu.weight()), printed_val == rec_val),
                    Some(fix) => {
                        let fixed = eval_q(fix, &q)?;
                        let series = eval_q(fix, &qs)?;
                        let oracle = prod.get(&mu).cloned().unwrap_or_else(|| QSeries::zero(qorder));
                        c.flag(format!("{label}_{} a_{mu}: printed {printed} differs from the recursion", mu.weight()), printed_val != rec_val);
                        c.flag(format!("{label}_{} a_{mu}: corrected {fix} equals the recursion", mu.weight()), fixed == rec_val);
                        c.flag(format!("{label}_{} a_{mu}: corrected value equals the product expansion to q^{qorder}", mu.weight()), series == oracle);
                        c.errata.push(format!("{label}_{} a_{mu} printed {printed}, correct {fix}", mu.weight()));
                    }
                }
            }
        }
        let unit: GenPoly<RationalFunction> = [(Partition::empty(), RationalFunction::one())].into_iter().collect();
        let gen = |v: &[GenPoly<RationalFunction>]| -> GenPoly<RationalFunction> { v.iter().flat_map(|g| g.clone()).collect() };
        c.flag("(sum b z^m)(sum c z^m) = 1 to order 8", genpoly_mul(&gen(&b), &gen(&cc), 8) == unit);
        Ok(())
    })
}

fn criterion_9(cfg: &RunConfig) -> CriterionReport {
    run_guarded(9, "direct e/h/p of the cell multiset", |c| {
        let mut rng = rng_from_seed(cfg.seed.wrapping_add(900));
        for trial in 0..cfg.trials.max(3) {
            let (q, t) = (random_rational(&mut rng), random_rational(&mut rng));
            let mut ok = true;
            for n in 0..=6 {
                for lam in enumerate_partitions(n) {
                    for kind in [CellFunction::E, CellFunction::H, CellFunction::P] {
                        for k in 0..=3 {
                            ok &= match sym_of_cells(&lam, kind, k, &q, &t) {
                                Ok(v) => v.agree(),
                                Err(Error::DivisionByZero | Error::Pole(_)) => true,
                                Err(e) => return Err(e),
                            };
                        }
                    }
                }
            }
            c.flag(format!("point {trial}: q = {q}, t = {t}"), ok);
        }
        Ok(())
    })
}

fn criterion_10(cfg: &RunConfig) -> CriterionReport {
    run_guarded(10, "partition-sum localization against the exponential form", |c| {
        let n = cfg.order(6);
        for (i, a) in [(0, 0), (1, 0), (2, -1)].into_iter().enumerate() {
            c.verdict(format!("A = {a:?} to Q^{n}"), &verify_main_identity(a, n, &cfg.mode(1000 + i as u64))?);
        }
        let sn = cfg.order.map(|o| o.min(3)).unwrap_or(3);
        c.verdict(format!("A = (0, 0) to Q^{sn}"), &verify_main_identity((0, 0), sn, &Mode::Symbolic)?);
        Ok(())
    })
}

/// ψ-words of length ≤ 2 with `m ≤ 2` and weights in `{(0,0), (1,0), (0,1)}`.
pub fn central_theorem_words() -> Vec<Vec<BundleInsertion>> {
    let weights = [(0, 0), (1, 0), (0, 1)];
    let letters: Vec<BundleInsertion> = [1, 2].iter().flat_map(|&m| weights.iter().map(move |&w| BundleInsertion::psi(m, w))).collect();
    let mut out: Vec<Vec<BundleInsertion>> = letters.iter().map(|l| vec![*l]).collect();
    for i in 0..letters.len() {
        for j in i..letters.len() {
            out.push(vec![letters[i], letters[j]]);
        }
    }
    out
}

fn criterion_11(cfg: &RunConfig) -> CriterionReport {
    run_guarded(11, "partition-sum localization on the Hilbert scheme", |c| {
        let n = cfg.order(5);
        let mut salt = 1100;
        for twist in [(0, 0), (1, 0), (0, 1)] {
            for word in central_theorem_words() {
                salt += 1;
                let label = word.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" ");
                let v = check(&CentralTheorem { insertions: word, twist, order: n }, &cfg.mode(salt))?;
                c.verdict(format!("[{label}] twist {twist:?} to Q^{n}"), &v);
            }
        }
        Ok(())
    })
}

fn criterion_12(cfg: &RunConfig) -> CriterionReport {
    run_guarded(12, "product over fixed points of partition sums, and local correlators from the vertex engine", |c| {
        let n = cfg.order(3);
        let mut salt = 1200;
        for name in ["P2", "P1xP1"] {
            let surface = SurfaceData::builtin(name)?;
            for which in TORIC_CHECKS {
                salt += 1;
                c.verdict(format!("{name} {which} to Q^{n}"), &toric_correlator_check(&surface, which, n, &cfg.mode(salt))?);
            }
            salt += 1;
            let printed = check(&PrintedLambda2 { surface, order: n }, &cfg.mode(salt))?;
            c.flag(format!("{name} printed x1^2 expression with the extra half term disagrees"), !printed.passed);
        }
        c.errata.push("x1^2 identity: the printed term (1/2) P chi(L1^2 (x) S_uQ T*X) is a double count and is dropped".into());
        Ok(())
    })
}

fn criterion_13(_cfg: &RunConfig) -> CriterionReport {
    run_guarded(13, "hook-length sums against the product side; partition counts against Euler's product", |c| {
        for (label, m) in [("0", Rational::zero()), ("1", Rational::one()), ("2", Rational::from_i64(2)), ("1/2", Rational::new(1, 2))] {
            c.flag(format!("Nekrasov-Okounkov m = {label} to q^6"), nekrasov_okounkov_check(&m, 6)?);
        }
        c.flag("partition counts to q^20", euler_count_check(20));
        Ok(())
    })
}

fn criterion_14(cfg: &RunConfig) -> CriterionReport {
    run_guarded(14, "literal two-point display and round trips on random tables", |c| {
        let (a, b, ab) = (RationalFunction::var("a"), RationalFunction::var("b"), RationalFunction::var("c"));
        let raw: BTreeMap<Vec<u8>, RationalFunction> = [(vec![1], a.clone()), (vec![2], b.clone()), (vec![1, 2], ab.clone())].into_iter().collect();
        let conn = connected_correlators(&raw)?;
        c.flag("<O1O2>_c = <O1O2> - <O1><O2>", conn[&vec![1]] == a && conn[&vec![2]] == b && conn[&vec![1, 2]] == ab.sub(&a.mul(&b)));
        let mut rng = rng_from_seed(cfg.seed.wrapping_add(1400));
        for trial in 0..cfg.trials.max(3) {
            let mut table = BTreeMap::new();
            for n in 1..=4usize {
                for mask in 0..4usize.pow(n as u32) {
                    let w: Vec<usize> = (0..n).map(|i| (mask / 4usize.pow(i as u32)) % 4).collect();
                    table.insert(w, random_rational(&mut rng));
                }
            }
            let there = disconnected_correlators(&connected_correlators(&table)?)? == table;
            let back = connected_correlators(&disconnected_correlators(&table)?)? == table;
            c.flag(format!("table {trial}: both compositions are the identity"), there && back);
        }
        Ok(())
    })
}

pub fn run_criterion(number: usize, cfg: &RunConfig) -> Result<CriterionReport> {
    Ok(match number {
        1 => criterion_1(cfg),
        2 => closed_form_criterion(2, &["E1"], 6, cfg, Some(4)),
        3 => closed_form_criterion(3, &["E2"], 6, cfg, None),
        4 => closed_form_criterion(4, &["E1E1"], 6, cfg, None),
        5 => criterion_5(cfg),
        6 => closed_form_criterion(6, &["Psi1", "Psi2", "Psi1sq", "Lambda2"], 5, cfg, None),
        7 => criterion_7(cfg),
        8 => criterion_8(cfg),
        9 => criterion_9(cfg),
        10 => criterion_10(cfg),
        11 => criterion_11(cfg),
        12 => criterion_12(cfg),
        13 => criterion_13(cfg),
        14 => criterion_14(cfg),
        _ => return Err(Error::UnknownName(format!("criterion {number}"))),
    })
}

/// Looks a criterion up by number or identifier.
pub fn find_criterion(key: &str) -> Result<&'static Criterion> {
    CRITERIA
        .iter()
        .find(|c| c.id == key || c.number.to_string() == key)
        .ok_or_else(|| Error::UnknownName(key.to_string()))
}

/// Runs the selected criteria in parallel; reports come back in order.
pub fn run_all(numbers: &[usize], cfg: &RunConfig) -> Result<Vec<CriterionReport>> {
    use rayon::prelude::*;
    numbers.par_iter().map(|&n| run_criterion(n, cfg)).collect()
}

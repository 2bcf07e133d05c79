//! (u,v)-bracket correlators of operators diagonal on the Macdonald basis.
//!
//! Two independent routes compute the same series: a partition sum over
//! cell weights ([`bracket_bruteforce`]) and iterated constant-term
//! extraction of vertex-operator kernels ([`vertex_correlator`]).

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::{Expr, QSeries, Scalar};
use crate::macdonald::{euler_tail, parse_word, qt_monomial, EigenOperator, TildePolynomial};
use crate::partitions::{enumerate_partitions, Partition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Normalization {
    Raw,
    Primed,
}

/// Values of `q, t, u, v`.
#[derive(Clone, Debug, PartialEq)]
pub struct BracketParams<F> {
    pub q: F,
    pub t: F,
    pub u: F,
    pub v: F,
}

impl<F: Scalar> BracketParams<F> {
    pub fn new(q: F, t: F, u: F, v: F) -> BracketParams<F> {
        BracketParams { q, t, u, v }
    }

    pub fn lookup(&self, name: &str) -> Result<F> {
        match name {
            "q" => Ok(self.q.clone()),
            "t" => Ok(self.t.clone()),
            "u" => Ok(self.u.clone()),
            "v" => Ok(self.v.clone()),
            _ => Err(Error::UnknownName(name.to_string())),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CorrelatorRequest<F> {
    /// Operators from left to right; empty is the identity word.
    pub word: Vec<EigenOperator>,
    pub params: BracketParams<F>,
    pub order: usize,
    pub normalization: Normalization,
}

impl<F: Scalar> CorrelatorRequest<F> {
    pub fn new(word: Vec<EigenOperator>, params: BracketParams<F>, order: usize, normalization: Normalization) -> Result<Self> {
        if order == 0 {
            return Err(Error::Precondition("correlators need order N ≥ 1".into()));
        }
        Ok(CorrelatorRequest { word, params, order, normalization })
    }

    pub fn parse(word: &str, params: BracketParams<F>, order: usize, normalization: Normalization) -> Result<Self> {
        CorrelatorRequest::new(parse_word(word)?, params, order, normalization)
    }

    pub fn word_label(&self) -> String {
        word_label(&self.word)
    }
}

pub fn word_label(word: &[EigenOperator]) -> String {
    if word.is_empty() {
        "1".to_string()
    } else {
        word.iter().map(|o| o.label()).collect()
    }
}

/// The weight of `μ` in the bracket:
/// `(-u)^{|μ|} Π_s (q^{a'} - v t^{l'})/(1 - t^l q^{a+1}) · (t^{-l'} - u^{-1} q^{-a'})/(1 - q^{-a} t^{-(l+1)})`.
pub fn bracket_weight<F: Scalar>(mu: &Partition, p: &BracketParams<F>) -> Result<F> {
    let (q, t, u, v) = (&p.q, &p.t, &p.u, &p.v);
    let u_inv = u.inv()?;
    let mut acc = u.neg().pow(mu.weight() as i64)?;
    for s in mu.cell_statistics() {
        let (a, l, ac, lc) = (s.arm as i64, s.leg as i64, s.coarm as i64, s.coleg as i64);
        let num1 = q.pow(ac)?.sub(&v.mul(&t.pow(lc)?));
        let den1 = qt_monomial(q, t, a + 1, l)?.one_minus();
        let num2 = t.pow(-lc)?.sub(&u_inv.mul(&q.pow(-ac)?));
        let den2 = qt_monomial(q, t, -a, -(l + 1))?.one_minus();
        acc = acc.mul(&num1).mul(&num2).div(&den1.mul(&den2))?;
    }
    Ok(acc)
}

fn word_eigenvalue<F: Scalar>(word: &[EigenOperator], mu: &Partition, p: &BracketParams<F>) -> Result<F> {
    let mut seen: HashMap<EigenOperator, F> = HashMap::new();
    let mut acc = F::one();
    for &op in word {
        let e = match seen.get(&op) {
            Some(e) => e.clone(),
            None => {
                let e = op.eigenvalue(mu, &p.q, &p.t)?;
                seen.insert(op, e.clone());
                e
            }
        };
        acc = acc.mul(&e);
    }
    Ok(acc)
}

/// Partition sum for the bracket; `⟨1⟩` is accumulated in the same pass.
pub fn bracket_bruteforce<F: Scalar>(req: &CorrelatorRequest<F>) -> Result<QSeries<F>> {
    if req.params.u.is_zero() {
        return Err(Error::Precondition("the bracket needs u ≠ 0".into()));
    }
    let n = req.order;
    let parts: Vec<Partition> = (0..=n).flat_map(enumerate_partitions).collect();
    let terms: Vec<(usize, F, F)> = parts
        .par_iter()
        .map(|mu| {
            let w = bracket_weight(mu, &req.params)?;
            let a = word_eigenvalue(&req.word, mu, &req.params)?;
            Ok((mu.weight(), w.clone(), w.mul(&a)))
        })
        .collect::<Result<_>>()?;
    let mut norm = vec![F::zero(); n + 1];
    let mut raw = vec![F::zero(); n + 1];
    for (k, w, wa) in terms {
        norm[k] = norm[k].add(&w);
        raw[k] = raw[k].add(&wa);
    }
    let raw = QSeries::new(raw, n);
    match req.normalization {
        Normalization::Raw => Ok(raw),
        Normalization::Primed => raw.div(&QSeries::new(norm, n)),
    }
}

/// `⟨1⟩ = exp(Σ Q^n/n · (1-u^n)(1-v^n)/((1-q^n)(1-t^{-n})))`.
pub fn identity_bracket<F: Scalar>(p: &BracketParams<F>, order: usize) -> Result<QSeries<F>> {
    let mut c = vec![F::zero()];
    for k in 1..=order as i64 {
        let num = p.u.pow(k)?.one_minus().mul(&p.v.pow(k)?.one_minus());
        let den = p.q.pow(k)?.one_minus().mul(&p.t.pow(-k)?.one_minus()).scale_i64(k);
        c.push(num.div(&den)?);
    }
    QSeries::new(c, order).exp()
}

/// The closed form of `⌈z^k⌉₁` in `u, v, Q`.
pub fn base_bracket_expr(k: i64) -> Expr {
    let src = match k {
        0 => "1 - Q*(1-u)*(1-v)/(1-u*Q)".to_string(),
        k if k > 0 => format!("(-1)^{k}*(1-v)*(1-Q)/(1-u*Q)"),
        k => format!("(-u*Q)^{}*Q*(1-u)*(1-u*v*Q)/(1-u*Q)", -k - 1),
    };
    Expr::parse(&src).expect("base bracket forms parse")
}

/// `⌈z^k⌉₁` expanded to order `order`.
pub fn base_bracket_z<F: Scalar>(k: i64, u: &F, v: &F, order: usize) -> Result<QSeries<F>> {
    let lookup = |n: &str| match n {
        "u" => Ok(u.clone()),
        "v" => Ok(v.clone()),
        _ => Err(Error::UnknownName(n.to_string())),
    };
    base_bracket_expr(k).eval_series(&lookup, order)
}

/// `[z^k (1+zQ)/(1+uzQ) (1+v/z)/(1+1/z)]_{z^0}` from the two series
/// `1 + Σ (-1)^{n-1} u^{n-1}(1-u) Q^n z^n` and `1 + Σ (-1)^n (1-v) z^{-n}`.
pub fn base_bracket_direct<F: Scalar>(k: i64, u: &F, v: &F, order: usize) -> Result<QSeries<F>> {
    let a = |n: i64| -> Result<F> {
        if n == 0 {
            return Ok(F::one());
        }
        let s = u.pow(n - 1)?.mul(&u.one_minus());
        Ok(if n % 2 == 1 { s } else { s.neg() })
    };
    let b = |m: i64| -> F {
        if m == 0 {
            F::one()
        } else if m % 2 == 0 {
            v.one_minus()
        } else {
            v.one_minus().neg()
        }
    };
    let mut c = vec![F::zero(); order + 1];
    // z^{k+n-m}: m = n + k
    for n in (-k).max(0)..=order as i64 {
        c[n as usize] = c[n as usize].add(&a(n)?.mul(&b(n + k)));
    }
    Ok(QSeries::new(c, order))
}

/// Laurent polynomial in `z_1..z_r` with series coefficients, the object
/// inside the iterated constant term.
#[derive(Clone, Debug)]
pub struct BracketState<F> {
    order: usize,
    terms: BTreeMap<Vec<i32>, QSeries<F>>,
}

impl<F: Scalar> BracketState<F> {
    pub fn new(vars: usize, scalar: F, order: usize) -> BracketState<F> {
        let mut terms = BTreeMap::new();
        let c = QSeries::constant(scalar, order);
        if !c.is_zero() {
            terms.insert(vec![0; vars], c);
        }
        BracketState { order, terms }
    }

    pub fn vars(&self) -> usize {
        self.terms.keys().next().map(Vec::len).unwrap_or(0)
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i32>, QSeries<F>> {
        &self.terms
    }

    /// Multiplies by `1 + Σ_{k≥1} c_k (z_lo/z_hi)^k`, dropping terms that
    /// cannot survive the `z_hi` extraction below order `N`.
    pub fn multiply_pair(&mut self, lo: usize, hi: usize, coeffs: &[F]) {
        let n = self.order as i64;
        let mut out: BTreeMap<Vec<i32>, QSeries<F>> = BTreeMap::new();
        for (e, c) in &self.terms {
            let Some(val) = c.valuation() else { continue };
            for k in 0..coeffs.len() + 1 {
                let eh = e[hi] as i64 - k as i64;
                if val as i64 + (-eh).max(0) > n {
                    break;
                }
                let ck = if k == 0 {
                    c.clone()
                } else if coeffs[k - 1].is_zero() {
                    continue;
                } else {
                    c.scale(&coeffs[k - 1])
                };
                let mut key = e.clone();
                key[lo] += k as i32;
                key[hi] -= k as i32;
                accumulate(&mut out, key, ck);
            }
        }
        self.terms = out;
    }

    /// Takes the constant term in the last variable, replacing `z^e` by
    /// `⌈z^e⌉₁`, then checks the grading invariant.
    pub fn extract_last(&mut self, base: &mut impl FnMut(i64) -> Result<QSeries<F>>) -> Result<()> {
        let n = self.order as i64;
        let mut out: BTreeMap<Vec<i32>, QSeries<F>> = BTreeMap::new();
        let mut cache: HashMap<i64, QSeries<F>> = HashMap::new();
        for (e, c) in &self.terms {
            let Some(val) = c.valuation() else { continue };
            let (&last, rest) = e.split_last().ok_or_else(|| Error::GradingViolation("no variable left".into()))?;
            let last = last as i64;
            if val as i64 + (-last).max(0) > n {
                continue;
            }
            if !cache.contains_key(&last) {
                cache.insert(last, base(last)?);
            }
            accumulate(&mut out, rest.to_vec(), c.mul(&cache[&last]));
        }
        self.terms = out;
        self.check_grading()
    }

    /// All exponents are nonnegative and their sum is at most the
    /// `Q`-valuation of the coefficient.
    pub fn check_grading(&self) -> Result<()> {
        for (e, c) in &self.terms {
            let val = c.valuation().unwrap_or(usize::MAX) as i64;
            let sum: i64 = e.iter().map(|&x| x as i64).sum();
            if e.iter().any(|&x| x < 0) || sum > val {
                return Err(Error::GradingViolation(format!("term z^{e:?} has Q-valuation {val}")));
            }
        }
        Ok(())
    }

    /// The coefficient once every variable is gone.
    pub fn constant(&self) -> QSeries<F> {
        self.terms.get(&Vec::new()).cloned().unwrap_or_else(|| QSeries::zero(self.order))
    }
}

fn accumulate<F: Scalar>(map: &mut BTreeMap<Vec<i32>, QSeries<F>>, key: Vec<i32>, c: QSeries<F>) {
    match map.get_mut(&key) {
        Some(x) => {
            *x = x.add(&c);
            if x.is_zero() {
                map.remove(&key);
            }
        }
        None => {
            if !c.is_zero() {
                map.insert(key, c);
            }
        }
    }
}

/// Coefficients of `(1-x)/(1-x/t) = 1 + (t^{-1}-1) Σ t^{-(k-1)} x^k`.
fn intra_pair_coeffs<F: Scalar>(t: &F, len: usize) -> Result<Vec<F>> {
    let ti = t.inv()?;
    let c = ti.sub(&F::one());
    (0..len as i64).map(|k| Ok(c.mul(&ti.pow(k)?))).collect()
}

/// Coefficients of `exp(-Σ (1-q^n)(1-t^{-n}) x^n/n) = 1 - Σ (1-q)(1-t^{-1}) h_{k-1}(q, t^{-1}) x^k`.
fn cross_pair_coeffs<F: Scalar>(q: &F, t: &F, len: usize) -> Result<Vec<F>> {
    let ti = t.inv()?;
    let pre = q.one_minus().mul(&ti.one_minus()).neg();
    let mut out = Vec::with_capacity(len);
    for k in 0..len as i64 {
        let mut h = F::zero();
        for i in 0..=k {
            h = h.add(&q.pow(i)?.mul(&ti.pow(k - i)?));
        }
        out.push(pre.mul(&h));
    }
    Ok(out)
}

/// `⟨Ẽ^{r_1} ⋯ Ẽ^{r_k}⟩'` by constant-term extraction. The leftmost
/// operator owns the highest variables.
pub fn vertex_tilde_word<F: Scalar>(rs: &[usize], p: &BracketParams<F>, order: usize) -> Result<QSeries<F>> {
    let total: usize = rs.iter().sum();
    let mut block = Vec::with_capacity(total);
    for (i, &r) in rs.iter().enumerate().rev() {
        block.extend(std::iter::repeat(i).take(r));
    }
    let mut scalar = F::one();
    for &r in rs {
        scalar = scalar.mul(&euler_tail(r, &p.t)?);
    }
    let len = 2 * order + 1;
    let intra = intra_pair_coeffs(&p.t, len)?;
    let cross = cross_pair_coeffs(&p.q, &p.t, len)?;
    let mut state = BracketState::new(total, scalar, order);
    let mut base = |k: i64| base_bracket_z(k, &p.u, &p.v, order);
    for m in (0..total).rev() {
        for a in 0..m {
            let c = if block[a] == block[m] { &intra } else { &cross };
            state.multiply_pair(a, m, c);
        }
        state.extract_last(&mut base)?;
    }
    Ok(state.constant())
}

/// The word as a polynomial in the `Ẽ^r`.
pub fn word_tilde_polynomial<F: Scalar>(word: &[EigenOperator], q: &F, t: &F) -> Result<TildePolynomial<F>> {
    let mut acc: TildePolynomial<F> = [(Partition::empty(), F::one())].into_iter().collect();
    for &op in word {
        let poly = op.tilde_polynomial(q, t)?;
        let mut next = TildePolynomial::new();
        for (a, ca) in &acc {
            for (b, cb) in &poly {
                let key = a.union(b);
                let e = next.entry(key).or_insert_with(F::zero);
                *e = e.add(&ca.mul(cb));
            }
        }
        next.retain(|_, c| !c.is_zero());
        acc = next;
    }
    Ok(acc)
}

/// The bracket through vertex operators. Words made only of `Ẽ^r` are
/// laid out in the given order; other operators go through their
/// `Ẽ`-polynomials.
pub fn vertex_correlator<F: Scalar>(req: &CorrelatorRequest<F>) -> Result<QSeries<F>> {
    let (p, n) = (&req.params, req.order);
    if p.u.is_zero() {
        return Err(Error::Precondition("the bracket needs u ≠ 0".into()));
    }
    let tilde: Option<Vec<usize>> = req
        .word
        .iter()
        .map(|op| match op {
            EigenOperator::ETilde(r) => Some(*r),
            _ => None,
        })
        .collect();
    let primed = match tilde {
        Some(rs) => vertex_tilde_word(&rs, p, n)?,
        None => {
            let poly = word_tilde_polynomial(&req.word, &p.q, &p.t)?;
            let mut acc = QSeries::zero(n);
            for (lam, c) in &poly {
                acc = acc.add(&vertex_tilde_word(lam.parts(), p, n)?.scale(c));
            }
            acc
        }
    };
    match req.normalization {
        Normalization::Primed => Ok(primed),
        Normalization::Raw => Ok(primed.mul(&identity_bracket(p, n)?)),
    }
}

/// A displayed closed form together with the correlator it evaluates.
#[derive(Clone, Debug)]
pub struct ClosedForm {
    pub name: &'static str,
    pub word: &'static str,
    pub normalization: Normalization,
    /// The expression equals `multiplier · ⟨word⟩`.
    pub multiplier: i64,
    pub source: &'static str,
}

impl ClosedForm {
    pub fn expr(&self) -> Expr {
        Expr::parse(self.source).expect("library forms parse")
    }

    /// `⟨word⟩` expanded from the closed form.
    pub fn expand<F: Scalar>(&self, p: &BracketParams<F>, order: usize) -> Result<QSeries<F>> {
        let s = self.expr().eval_series(&|n| p.lookup(n), order)?;
        s.div(&QSeries::constant(F::from_i64(self.multiplier), order))
    }

    pub fn request<F: Scalar>(&self, p: BracketParams<F>, order: usize) -> Result<CorrelatorRequest<F>> {
        CorrelatorRequest::parse(self.word, p, order, self.normalization)
    }
}

pub const CLOSED_FORM_NAMES: [&str; 7] = ["E1", "E2", "E1E1", "Psi1", "Psi2", "Psi1sq", "Lambda2"];

const C1: &str = "(1 - Q*(1-u)*(1-v)/(1-u*Q))";

pub fn closed_form_library(name: &str) -> Result<ClosedForm> {
    let (word, multiplier, source): (&str, i64, &'static str) = match name {
        "E1" => ("E1", 1, "t^-1/(1-t^-1)*(1 - Q*(1-u)*(1-v)/(1-u*Q))"),
        "E2" => (
            "E2",
            1,
            "t^-3/((1-t^-1)*(1-t^-2))*((1 - Q*(1-u)*(1-v)/(1-u*Q))^2 \
             + (1-t^-1)*Q*(1-Q)*(1-u)*(1-v)*(1-u*v*Q)/((1-t^-1*u*Q)*(1-u*Q)^2))",
        ),
        "E1E1" => (
            "E1E1",
            1,
            "(t^-1/(1-t^-1))^2*((1 - Q*(1-u)*(1-v)/(1-u*Q))^2 \
             + Q*(1-Q)*(1-u*v*Q)/(1-u*Q)^2*(1-u)*(1-v)*(1-q)*(1-t^-1)/((1-u*q*Q)*(1-u*t^-1*Q)))",
        ),
        "Psi1" => ("Psi1", 1, "Q*(1-u)*(1-v)/((1-q)*(1-t^-1)*(1-u*Q))"),
        "Psi2" => (
            "Psi2",
            1,
            "1/((1-q^2)*(1-t^-2)) - 1/((1-q^2)*(1-t^-2))*(1 - Q*(1-u)*(1-v)/(1-u*Q))^2 \
             + (-1+q+t^-1+q*t^-1 - 2*u*q*t^-1*Q)/((1-q^2)*(1-t^-2)) \
             *Q*(1-Q)*(1-u)*(1-v)*(1-u*v*Q)/((1-u*Q)^2*(1-u*q*Q)*(1-u*t^-1*Q))",
        ),
        "Psi1sq" => (
            "Psi1Psi1",
            1,
            "(Q*(1-u)*(1-v)/((1-q)*(1-t^-1)*(1-u*Q)))^2 \
             + (1-u)*(1-v)/((1-q)*(1-t^-1))*Q*(1-Q)*(1-u*v*Q)/((1-u*Q)^2*(1-u*q*Q)*(1-u*t^-1*Q))",
        ),
        "Lambda2" => (
            "Lambda2",
            2,
            "(Q*(1-u)*(1-v)/((1-q)*(1-t^-1)*(1-u*Q)))^2 - 1/((1-q^2)*(1-t^-2)) \
             + 1/((1-q^2)*(1-t^-2))*(1 - Q*(1-u)*(1-v)/(1-u*Q))^2 \
             + (2+2*u*q*t^-1*Q)/((1-q^2)*(1-t^-2)) \
             *Q*(1-Q)*(1-u)*(1-v)*(1-u*v*Q)/((1-u*Q)^2*(1-u*q*Q)*(1-u*t^-1*Q))",
        ),
        _ => return Err(Error::UnknownName(name.to_string())),
    };
    let name = CLOSED_FORM_NAMES.iter().find(|n| **n == name).copied().unwrap_or("");
    Ok(ClosedForm { name, word, normalization: Normalization::Primed, multiplier, source })
}

/// `2⟨Λ²⟩' = ⟨(Ψ¹)²⟩' - ⟨Ψ²⟩'` assembled from the library entries.
pub fn lambda2_via_psi() -> Expr {
    closed_form_library("Psi1sq").expect("entry").expr() - closed_form_library("Psi2").expect("entry").expr()
}

/// The factor `(1 - Q(1-u)(1-v)/(1-uQ))` shared by several displays.
pub fn bracket_one_factor() -> Expr {
    Expr::parse(C1).expect("parses")
}

/// Set partitions of `{0, …, n-1}`, blocks in increasing order.
pub fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = vec![Vec::new()];
    for i in 0..n {
        let mut next = Vec::new();
        for p in &out {
            for b in 0..p.len() {
                let mut q: Vec<Vec<usize>> = p.clone();
                q[b].push(i);
                next.push(q);
            }
            let mut q = p.clone();
            q.push(vec![i]);
            next.push(q);
        }
        out = next;
    }
    out
}

fn factorial_i64(n: usize) -> i64 {
    (1..=n as i64).product()
}

fn mobius<K, F>(table: &BTreeMap<Vec<K>, F>, invert: bool) -> Result<BTreeMap<Vec<K>, F>>
where
    K: Ord + Clone + fmt::Debug,
    F: Scalar,
{
    let mut out = BTreeMap::new();
    for w in table.keys() {
        let mut acc = F::zero();
        for pi in set_partitions(w.len()) {
            let mut term = F::one();
            for block in &pi {
                let sub: Vec<K> = block.iter().map(|&i| w[i].clone()).collect();
                let val = table.get(&sub).ok_or_else(|| Error::MissingSubword(format!("{sub:?}")))?;
                term = term.mul(val);
            }
            if invert {
                let k = pi.len();
                let c = factorial_i64(k - 1) * if k % 2 == 1 { 1 } else { -1 };
                term = term.scale_i64(c);
            }
            acc = acc.add(&term);
        }
        out.insert(w.clone(), acc);
    }
    Ok(out)
}

/// Connected correlators from normalized ones:
/// `⟨w⟩_c = Σ_π (-1)^{|π|-1}(|π|-1)! Π_{B∈π} ⟨w_B⟩'`.
pub fn connected_correlators<K, F>(raw: &BTreeMap<Vec<K>, F>) -> Result<BTreeMap<Vec<K>, F>>
where
    K: Ord + Clone + fmt::Debug,
    F: Scalar,
{
    mobius(raw, true)
}

/// The inverse: `⟨w⟩' = Σ_π Π_{B∈π} ⟨w_B⟩_c`.
pub fn disconnected_correlators<K, F>(connected: &BTreeMap<Vec<K>, F>) -> Result<BTreeMap<Vec<K>, F>>
where
    K: Ord + Clone + fmt::Debug,
    F: Scalar,
{
    mobius(connected, false)
}

/// Polynomial in `t_0, …, t_{k-1}` truncated at a total degree.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiSeries<F> {
    pub nvars: usize,
    pub degree: usize,
    pub terms: BTreeMap<Vec<usize>, F>,
}

impl<F: Scalar> MultiSeries<F> {
    pub fn zero(nvars: usize, degree: usize) -> Self {
        MultiSeries { nvars, degree, terms: BTreeMap::new() }
    }

    pub fn coeff(&self, exps: &[usize]) -> F {
        self.terms.get(exps).cloned().unwrap_or_else(F::zero)
    }

    fn add_term(&mut self, e: Vec<usize>, c: F) {
        if e.iter().sum::<usize>() > self.degree {
            return;
        }
        let x = self.terms.entry(e.clone()).or_insert_with(F::zero);
        *x = x.add(&c);
        if x.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &F) -> Self {
        let mut out = MultiSeries::zero(self.nvars, self.degree);
        for (e, x) in &self.terms {
            out.add_term(e.clone(), x.mul(c));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = MultiSeries::zero(self.nvars, self.degree.min(other.degree));
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let e: Vec<usize> = a.iter().zip(b).map(|(i, j)| i + j).collect();
                out.add_term(e, x.mul(y));
            }
        }
        out
    }

    /// `log(1 + X)` for a series `1 + X`.
    pub fn log(&self) -> Result<Self> {
        let zero = vec![0; self.nvars];
        if !self.coeff(&zero).is_one() {
            return Err(Error::Precondition("log needs constant term one".into()));
        }
        let mut x = self.clone();
        x.terms.remove(&zero);
        let mut out = MultiSeries::zero(self.nvars, self.degree);
        let mut power = x.clone();
        for k in 1..=self.degree as i64 {
            let c = F::one().div(&F::from_i64(if k % 2 == 1 { k } else { -k }))?;
            out = out.add(&power.scale(&c));
            power = power.mul(&x);
        }
        Ok(out)
    }

    /// `Σ t_n ∂/∂t_n - 1` applied termwise.
    pub fn euler_minus_one(&self) -> Self {
        let mut out = MultiSeries::zero(self.nvars, self.degree);
        for (e, c) in &self.terms {
            let d = e.iter().sum::<usize>() as i64 - 1;
            out.add_term(e.clone(), c.scale_i64(d));
        }
        out
    }

    /// The mixed derivative `∂^n/∂t^a` at zero, which is `a! · coeff`.
    pub fn derivative_at_zero(&self, exps: &[usize]) -> F {
        let f: i64 = exps.iter().map(|&k| factorial_i64(k)).product();
        self.coeff(exps).scale_i64(f)
    }
}

/// Partition function, free energy and entropy of a formal field theory.
#[derive(Clone, Debug, PartialEq)]
pub struct FqftLayer<F> {
    pub z: MultiSeries<F>,
    pub f: MultiSeries<F>,
    pub g: MultiSeries<F>,
}

fn multiset_exponents(word: &[usize], nvars: usize) -> Result<Vec<usize>> {
    let mut e = vec![0; nvars];
    for &i in word {
        if i >= nvars {
            return Err(Error::Precondition(format!("observable index {i} out of range")));
        }
        e[i] += 1;
    }
    Ok(e)
}

fn multisets(nvars: usize, degree: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..degree {
        let mut next = Vec::new();
        for w in &frontier {
            let start = w.last().copied().unwrap_or(0);
            for i in start..nvars {
                let mut x: Vec<usize> = w.clone();
                x.push(i);
                next.push(x);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// `Z = 1 + Σ ⟨O_{m_1}⋯O_{m_n}⟩' t_{m_1}⋯t_{m_n}/n!`, `F = log Z`,
/// `G = Σ t_n ∂F/∂t_n - F`. The table is keyed by nondecreasing index words.
pub fn fqft_layer<F: Scalar>(nvars: usize, table: &BTreeMap<Vec<usize>, F>, degree: usize) -> Result<FqftLayer<F>> {
    let mut z = MultiSeries::zero(nvars, degree);
    z.add_term(vec![0; nvars], F::one());
    for w in multisets(nvars, degree).into_iter().filter(|w| !w.is_empty()) {
        let c = table.get(&w).ok_or_else(|| Error::MissingSubword(format!("{w:?}")))?;
        let e = multiset_exponents(&w, nvars)?;
        let f: i64 = e.iter().map(|&k| factorial_i64(k)).product();
        z.add_term(e, c.div(&F::from_i64(f))?);
    }
    let f = z.log()?;
    let g = f.euler_minus_one();
    Ok(FqftLayer { z, f, g })
}

/// Normalized correlators read back from `Z`.
pub fn correlators_from_z<F: Scalar>(layer: &FqftLayer<F>) -> BTreeMap<Vec<usize>, F> {
    read_back(&layer.z)
}

/// Connected correlators read from `F`.
pub fn connected_from_f<F: Scalar>(layer: &FqftLayer<F>) -> BTreeMap<Vec<usize>, F> {
    read_back(&layer.f)
}

fn read_back<F: Scalar>(s: &MultiSeries<F>) -> BTreeMap<Vec<usize>, F> {
    multisets(s.nvars, s.degree)
        .into_iter()
        .filter(|w| !w.is_empty())
        .map(|w| {
            let e = multiset_exponents(&w, s.nvars).expect("in range");
            (w, s.derivative_at_zero(&e))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Rational;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn params() -> BracketParams<Rational> {
        BracketParams::new(r(3, 7), r(5, 2), r(-2, 3), r(7, 5))
    }

    #[test]
    fn identity_bruteforce_matches_exponential() {
        let p = params();
        let req = CorrelatorRequest::new(vec![], p.clone(), 4, Normalization::Raw).unwrap();
        assert_eq!(bracket_bruteforce(&req).unwrap(), identity_bracket(&p, 4).unwrap());
    }

    #[test]
    fn identity_first_coefficient() {
        let p = params();
        let req = CorrelatorRequest::new(vec![], p.clone(), 1, Normalization::Raw).unwrap();
        let s = bracket_bruteforce(&req).unwrap();
        let expect = p.u.one_minus().mul(&p.v.one_minus()).div(&p.q.one_minus().mul(&p.t.inv().unwrap().one_minus())).unwrap();
        assert_eq!(s.coeff(1), expect);
    }

    #[test]
    fn zero_u_is_rejected() {
        let mut p = params();
        p.u = Rational::zero();
        let req = CorrelatorRequest::new(vec![], p, 2, Normalization::Raw).unwrap();
        assert!(matches!(bracket_bruteforce(&req), Err(Error::Precondition(_))));
    }

    #[test]
    fn base_brackets_both_ways() {
        let p = params();
        for k in -4..=4 {
            assert_eq!(base_bracket_z(k, &p.u, &p.v, 6).unwrap(), base_bracket_direct(k, &p.u, &p.v, 6).unwrap(), "k = {k}");
        }
    }

    #[test]
    fn e1_vertex_matches_bruteforce() {
        let req = CorrelatorRequest::parse("E1", params(), 4, Normalization::Primed).unwrap();
        assert_eq!(vertex_correlator(&req).unwrap(), bracket_bruteforce(&req).unwrap());
    }

    #[test]
    fn set_partition_counts_are_bell_numbers() {
        let counts: Vec<usize> = (0..6).map(|n| set_partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 15, 52]);
    }

    #[test]
    fn unknown_closed_form() {
        assert!(matches!(closed_form_library("E7"), Err(Error::UnknownName(_))));
    }

    #[test]
    fn trivial_fqft() {
        let table: BTreeMap<Vec<usize>, Rational> = multisets(2, 3).into_iter().filter(|w| !w.is_empty()).map(|w| (w, Rational::zero())).collect();
        let layer = fqft_layer(2, &table, 3).unwrap();
        assert_eq!(layer.z.terms.len(), 1);
        assert!(layer.f.terms.is_empty() && layer.g.terms.is_empty());
    }
}

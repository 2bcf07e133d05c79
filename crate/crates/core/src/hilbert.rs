//! Equivariant Euler characteristics and intersection numbers on Hilbert
//! schemes of points, computed by localization.
//!
//! Torus convention: `(t1, t2)·(x, y) = (t1^{-1} x, t2^{-1} y)`. A weight
//! `A = (a, b)` stands for the character `t^A = t1^a t2^b`; in surface data
//! every exponent pair `[e1, e2]` is the monomial `t1^{e1} t2^{e2}`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::correlators::{
    connected_correlators, vertex_correlator, BracketParams, CorrelatorRequest, Normalization,
};
use crate::error::{Error, Result};
use crate::exactalg::eval::{check, series_pairs, Comparison, Env, Identity, Mode, Verdict};
use crate::exactalg::{LaurentJet, QSeries, Rational, Scalar};
use crate::macdonald::EigenOperator;
use crate::partitions::{enumerate_partitions, Partition};
use crate::symfun::{complete, elementary, power_sum};

pub type Weight = (i64, i64);

/// How an insertion acts on the tautological bundle `ξ^A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "m", rename_all = "lowercase")]
pub enum Operation {
    Plain,
    Psi(usize),
    Lambda(usize),
    Sigma(usize),
}

impl Operation {
    /// Value on the fixed-point weight multiset.
    pub fn apply<F: Scalar>(self, weights: &[F]) -> F {
        match self {
            Operation::Plain => power_sum(weights, 1),
            Operation::Psi(m) => power_sum(weights, m),
            Operation::Lambda(m) => elementary(weights, m),
            Operation::Sigma(m) => complete(weights, m),
        }
    }

    /// The Adams degree, if the insertion is of ψ type.
    pub fn psi_degree(self) -> Option<usize> {
        match self {
            Operation::Plain => Some(1),
            Operation::Psi(m) => Some(m),
            _ => None,
        }
    }
}

impl fmt::Display for Operation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Operation::Plain => write!(f, "plain"),
            Operation::Psi(m) => write!(f, "psi:{m}"),
            Operation::Lambda(m) => write!(f, "lambda:{m}"),
            Operation::Sigma(m) => write!(f, "sigma:{m}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BundleInsertion {
    pub weight: Weight,
    pub op: Operation,
}

impl BundleInsertion {
    pub fn new(op: Operation, weight: Weight) -> BundleInsertion {
        BundleInsertion { weight, op }
    }

    pub fn psi(m: usize, weight: Weight) -> BundleInsertion {
        BundleInsertion::new(Operation::Psi(m), weight)
    }
}

pub fn parse_weight(s: &str) -> Result<Weight> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 2 {
        return Err(Error::Parse(format!("expected a weight a,b; got {s:?}")));
    }
    let p = |x: &str| x.parse::<i64>().map_err(|_| Error::Parse(format!("bad weight component {x:?}")));
    Ok((p(parts[0])?, p(parts[1])?))
}

impl FromStr for BundleInsertion {
    type Err = Error;

    /// `psi:2:1,0`, `lambda:1:0,0`, `sigma:3:0,1`, `plain:1,0`.
    fn from_str(s: &str) -> Result<Self> {
        let fields: Vec<&str> = s.trim().split(':').collect();
        let bad = || Error::Parse(format!("bad insertion {s:?}"));
        let (kind, m, w) = match fields.as_slice() {
            ["plain", w] => ("plain", 1, *w),
            [kind, m, w] => (*kind, m.parse::<usize>().map_err(|_| bad())?, *w),
            _ => return Err(bad()),
        };
        if m == 0 {
            return Err(bad());
        }
        let op = match kind {
            "plain" => Operation::Plain,
            "psi" => Operation::Psi(m),
            "lambda" => Operation::Lambda(m),
            "sigma" => Operation::Sigma(m),
            _ => return Err(bad()),
        };
        Ok(BundleInsertion::new(op, parse_weight(w)?))
    }
}

impl fmt::Display for BundleInsertion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.op {
            Operation::Plain => write!(f, "plain:{},{}", self.weight.0, self.weight.1),
            op => write!(f, "{op}:{},{}", self.weight.0, self.weight.1),
        }
    }
}

/// Values of the equivariant parameters and of the twist variables.
#[derive(Clone, Debug, PartialEq)]
pub struct KParams<F> {
    pub t1: F,
    pub t2: F,
    pub u: F,
    pub v: F,
}

impl<F: Scalar> KParams<F> {
    pub fn new(t1: F, t2: F, u: F, v: F) -> KParams<F> {
        KParams { t1, t2, u, v }
    }

    pub fn untwisted(t1: F, t2: F) -> KParams<F> {
        KParams::new(t1, t2, F::zero(), F::zero())
    }

    pub fn from_env(env: &Env<F>) -> Result<KParams<F>> {
        Ok(KParams::new(env.get("t1")?, env.get("t2")?, env.get("u")?, env.get("v")?))
    }

    pub fn character(&self, w: Weight) -> Result<F> {
        Ok(self.t1.pow(w.0)?.mul(&self.t2.pow(w.1)?))
    }
}

/// Local coordinates at one fixed point: the characters `t_{1,i}, t_{2,i}`.
#[derive(Clone, Debug)]
pub struct Chart<F> {
    pub t1: F,
    pub t2: F,
}

impl<F: Scalar> Chart<F> {
    fn monomial(&self, a: i64, b: i64) -> Result<F> {
        Ok(self.t1.pow(a)?.mul(&self.t2.pow(b)?))
    }

    /// `t_1^{l'} t_2^{a'}` for every cell.
    pub fn cell_characters(&self, mu: &Partition) -> Result<Vec<F>> {
        mu.cell_statistics().iter().map(|s| self.monomial(s.coleg as i64, s.coarm as i64)).collect()
    }

    /// `Π_s (1 - t_1^{-l} t_2^{a+1})(1 - t_1^{l+1} t_2^{-a})`.
    pub fn tangent_denominator(&self, mu: &Partition) -> Result<F> {
        let mut acc = F::one();
        for s in mu.cell_statistics() {
            let (a, l) = (s.arm as i64, s.leg as i64);
            acc = acc.mul(&self.monomial(-l, a + 1)?.one_minus()).mul(&self.monomial(l + 1, -a)?.one_minus());
        }
        Ok(acc)
    }

    /// Localization weight of `μ` with twist `Λ_{-u}ξ^A ⊗ Λ_{-v}(ξ^A)^*`,
    /// where `w = t^A` restricted to this chart.
    pub fn weight(&self, mu: &Partition, chars: &[F], w: &F, u: &F, v: &F) -> Result<F> {
        let uw = u.mul(w);
        let vw = v.div(w)?;
        let mut num = F::one();
        for c in chars {
            num = num.mul(&uw.mul(c).one_minus()).mul(&vw.div(c)?.one_minus());
        }
        num.div(&self.tangent_denominator(mu)?)
    }
}

/// `Σ_{|μ|≤N} Q^{|μ|} weight(μ) · f(μ, chars)`.
fn local_sum<F: Scalar>(
    chart: &Chart<F>,
    w: &F,
    u: &F,
    v: &F,
    order: usize,
    f: &(dyn Fn(&Partition, &[F]) -> Result<F> + Sync),
) -> Result<QSeries<F>> {
    let parts: Vec<Partition> = (0..=order).flat_map(enumerate_partitions).collect();
    let terms: Vec<(usize, F)> = parts
        .par_iter()
        .map(|mu| {
            let chars = chart.cell_characters(mu)?;
            let x = f(mu, &chars)?;
            if x.is_zero() {
                return Ok((mu.weight(), x));
            }
            Ok((mu.weight(), chart.weight(mu, &chars, w, u, v)?.mul(&x)))
        })
        .collect::<Result<_>>()?;
    let mut coeffs = vec![F::zero(); order + 1];
    for (n, x) in terms {
        coeffs[n] = coeffs[n].add(&x);
    }
    Ok(QSeries::new(coeffs, order))
}

fn insertion_product<F: Scalar>(ins: &[BundleInsertion], chars: &[F], p: &KParams<F>) -> Result<F> {
    let mut acc = F::one();
    for i in ins {
        let w = p.character(i.weight)?;
        let multiset: Vec<F> = chars.iter().map(|c| c.mul(&w)).collect();
        acc = acc.mul(&i.op.apply(&multiset));
    }
    Ok(acc)
}

/// `Σ_n Q^n χ((ℂ²)^{[n]}, ⊗_j op_j(ξ^{A_j}) ⊗ Λ_{-u}ξ^A ⊗ Λ_{-v}(ξ^A)^*)`.
pub fn chi_c2_series<F: Scalar>(ins: &[BundleInsertion], twist: Weight, p: &KParams<F>, order: usize) -> Result<QSeries<F>> {
    let chart = Chart { t1: p.t1.clone(), t2: p.t2.clone() };
    let w = p.character(twist)?;
    local_sum(&chart, &w, &p.u, &p.v, order, &|_, chars| insertion_product(ins, chars, p))
}

/// `exp(Σ_n Q^n/n · (1 - u^n t^{nA})(1 - v^n t^{-nA}) / ((1 - t1^n)(1 - t2^n)))`.
pub fn main_identity_rhs<F: Scalar>(twist: Weight, p: &KParams<F>, order: usize) -> Result<QSeries<F>> {
    let w = p.character(twist)?;
    let (uw, vw) = (p.u.mul(&w), p.v.div(&w)?);
    let mut log = vec![F::zero(); order + 1];
    for n in 1..=order {
        let e = n as i64;
        let num = uw.pow(e)?.one_minus().mul(&vw.pow(e)?.one_minus());
        let den = p.t1.pow(e)?.one_minus().mul(&p.t2.pow(e)?.one_minus()).scale_i64(e);
        log[n] = num.div(&den)?;
    }
    QSeries::new(log, order).exp()
}

/// The rank-one identity: the twisted partition sum equals its exponential form.
#[derive(Clone, Debug)]
pub struct MainIdentity {
    pub twist: Weight,
    pub order: usize,
}

impl Identity for MainIdentity {
    fn variables(&self) -> Vec<&'static str> {
        vec!["t1", "t2", "u", "v"]
    }

    fn comparisons<F: Scalar>(&self, env: &Env<F>) -> Result<Vec<Comparison<F>>> {
        let p = KParams::from_env(env)?;
        let lhs = chi_c2_series(&[], self.twist, &p, self.order)?;
        let rhs = main_identity_rhs(self.twist, &p, self.order)?;
        Ok(series_pairs(&lhs, &rhs))
    }
}

pub fn verify_main_identity(twist: Weight, order: usize, mode: &Mode) -> Result<Verdict> {
    if order == 0 {
        return Err(Error::Precondition("verification needs order N ≥ 1".into()));
    }
    check(&MainIdentity { twist, order }, mode)
}

/// The same series through the correlator engine: `t2 = q`, `t1 = t^{-1}`,
/// `u → u t^A`, `v → v t^{-A}`, times `Π_j t^{m_j A_j}`.
pub fn chi_via_correlators<F: Scalar>(ins: &[BundleInsertion], twist: Weight, p: &KParams<F>, order: usize) -> Result<QSeries<F>> {
    let mut word = Vec::with_capacity(ins.len());
    let mut prefactor = F::one();
    for i in ins {
        let m = i.op.psi_degree().ok_or_else(|| Error::Precondition(format!("insertion {i} is not of ψ type")))?;
        word.push(EigenOperator::Psi(m));
        prefactor = prefactor.mul(&p.character(i.weight)?.pow(m as i64)?);
    }
    let w = p.character(twist)?;
    let params = BracketParams::new(p.t2.clone(), p.t1.inv()?, p.u.mul(&w), p.v.div(&w)?);
    let req = CorrelatorRequest::new(word, params, order.max(1), Normalization::Raw)?;
    Ok(vertex_correlator(&req)?.truncate(order).scale(&prefactor))
}

/// Localization sum against the correlator engine for one ψ-word.
#[derive(Clone, Debug)]
pub struct CentralTheorem {
    pub insertions: Vec<BundleInsertion>,
    pub twist: Weight,
    pub order: usize,
}

impl Identity for CentralTheorem {
    fn variables(&self) -> Vec<&'static str> {
        vec!["t1", "t2", "u", "v"]
    }

    fn comparisons<F: Scalar>(&self, env: &Env<F>) -> Result<Vec<Comparison<F>>> {
        let p = KParams::from_env(env)?;
        let lhs = chi_c2_series(&self.insertions, self.twist, &p, self.order)?;
        let rhs = chi_via_correlators(&self.insertions, self.twist, &p, self.order)?;
        Ok(series_pairs(&lhs, &rhs))
    }
}

// ---------------------------------------------------------------------------
// Cohomology

/// A Chern-character insertion `ch_k(ξ^A)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ChInsertion {
    pub k: usize,
    pub weight: Weight,
}

/// `(l' + a) w1 + (a' + b) w2` for every cell.
fn coh_cell_weights<F: Scalar>(mu: &Partition, w1: &F, w2: &F, a: Weight) -> Vec<F> {
    mu.cell_statistics()
        .iter()
        .map(|s| w1.scale_i64(s.coleg as i64 + a.0).add(&w2.scale_i64(s.coarm as i64 + a.1)))
        .collect()
}

fn factorial<F: Scalar>(k: usize) -> F {
    (1..=k as i64).fold(F::one(), |acc, i| acc.scale_i64(i))
}

/// `ch_k(ξ^A)|_λ = (1/k!) Σ_s c_s^k`.
pub fn chern_character<F: Scalar>(mu: &Partition, k: usize, a: Weight, w1: &F, w2: &F) -> Result<F> {
    let cs = coh_cell_weights(mu, w1, w2, a);
    power_sum(&cs, k).div(&factorial(k))
}

/// `e_T(T)|_λ = Π_s (l w1 - (a+1) w2)(-(l+1) w1 + a w2)`.
pub fn euler_class<F: Scalar>(mu: &Partition, w1: &F, w2: &F) -> F {
    let mut acc = F::one();
    for s in mu.cell_statistics() {
        let (a, l) = (s.arm as i64, s.leg as i64);
        let x = w1.scale_i64(l).sub(&w2.scale_i64(a + 1));
        let y = w2.scale_i64(a).sub(&w1.scale_i64(l + 1));
        acc = acc.mul(&x).mul(&y);
    }
    acc
}

fn ch_product<F: Scalar>(mu: &Partition, ins: &[ChInsertion], w1: &F, w2: &F) -> Result<F> {
    let mut acc = F::one();
    for i in ins {
        acc = acc.mul(&chern_character(mu, i.k, i.weight, w1, w2)?);
    }
    Ok(acc)
}

/// `Σ_λ q^{|λ|} Π_j ch_{k_j}(ξ^{A_j})|_λ / e_T|_λ`.
pub fn coh_intersection_series<F: Scalar>(ins: &[ChInsertion], w1: &F, w2: &F, order: usize) -> Result<QSeries<F>> {
    let mut coeffs = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let mut c = F::zero();
        for mu in enumerate_partitions(n) {
            c = c.add(&ch_product(&mu, ins, w1, w2)?.div(&euler_class(&mu, w1, w2))?);
        }
        coeffs.push(c);
    }
    Ok(QSeries::new(coeffs, order))
}

/// A polynomial in the markers `x, y`: exponent pair → coefficient.
pub type MarkerPoly<F> = BTreeMap<(usize, usize), F>;

fn marker_mul<F: Scalar>(a: &MarkerPoly<F>, b: &MarkerPoly<F>) -> MarkerPoly<F> {
    let mut out: MarkerPoly<F> = BTreeMap::new();
    for ((i, j), x) in a {
        for ((k, l), y) in b {
            let e = out.entry((i + k, j + l)).or_insert_with(F::zero);
            *e = e.add(&x.mul(y));
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// The Chern-polynomial twisted series: entry `n` is the `q^n` coefficient of
/// `Σ_λ q^{|λ|} Π_j ch_{k_j} · Π_s (x + c_s)(y - c_s) / e_T`, with `c_s` the
/// cell weights of `ξ^A`.
pub fn coh_chern_series<F: Scalar>(ins: &[ChInsertion], twist: Weight, w1: &F, w2: &F, order: usize) -> Result<Vec<MarkerPoly<F>>> {
    let mut out = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let mut acc: MarkerPoly<F> = BTreeMap::new();
        for mu in enumerate_partitions(n) {
            let scalar = ch_product(&mu, ins, w1, w2)?.div(&euler_class(&mu, w1, w2))?;
            let mut poly: MarkerPoly<F> = [((0, 0), scalar)].into_iter().collect();
            for c in coh_cell_weights(&mu, w1, w2, twist) {
                let fx: MarkerPoly<F> = [((1, 0), F::one()), ((0, 0), c.clone())].into_iter().collect();
                let fy: MarkerPoly<F> = [((0, 1), F::one()), ((0, 0), c.neg())].into_iter().collect();
                poly = marker_mul(&marker_mul(&poly, &fx), &fy);
            }
            for (k, c) in poly {
                let e = acc.entry(k).or_insert_with(F::zero);
                *e = e.add(&c);
            }
        }
        acc.retain(|_, c| !c.is_zero());
        out.push(acc);
    }
    Ok(out)
}

/// The `q^n x^n y^n` slice.
pub fn chern_slice<F: Scalar>(series: &[MarkerPoly<F>]) -> QSeries<F> {
    let coeffs = series.iter().enumerate().map(|(n, p)| p.get(&(n, n)).cloned().unwrap_or_else(F::zero)).collect();
    QSeries::new(coeffs, series.len().saturating_sub(1))
}

/// Bernoulli numbers with `x/(e^x - 1) = Σ B_k x^k / k!`.
pub fn bernoulli(n: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = vec![Rational::one()];
    for m in 1..n {
        let mut s = Rational::zero();
        let mut binom = Rational::one();
        for (j, bj) in b.iter().enumerate() {
            s = s.add(&binom.mul(bj));
            binom = binom.mul(&Rational::new((m + 1 - j) as i64, (j + 1) as i64));
        }
        b.push(s.div(&Rational::from_i64(m as i64 + 1)).expect("nonzero").neg());
    }
    b.truncate(n);
    b
}

fn jet_mul<F: Scalar>(a: &[F], b: &[F], len: usize) -> Vec<F> {
    let mut out = vec![F::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    out
}

/// Cohomological side of the jet comparison: for each `n`, the first
/// `jet_order` coefficients in `ε` of
/// `Σ_λ (Σ_k ε^k ch_k) · Π_y td(ε y) / e_T`, where `y` runs over the tangent
/// exponents and `td(x) = x/(e^x - 1)`.
pub fn coh_todd_jet(insertion: Option<Weight>, w1: &Rational, w2: &Rational, order: usize, jet_order: usize) -> Result<Vec<Vec<Rational>>> {
    let bern = bernoulli(jet_order);
    let td_coeffs: Vec<Rational> = bern.iter().enumerate().map(|(k, b)| b.div(&factorial::<Rational>(k)).expect("nonzero")).collect();
    let mut out = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let mut acc = vec![Rational::zero(); jet_order];
        for mu in enumerate_partitions(n) {
            let mut jet: Vec<Rational> = match insertion {
                Some(a) => (0..jet_order).map(|k| chern_character(&mu, k, a, w1, w2)).collect::<Result<_>>()?,
                None => {
                    let mut j = vec![Rational::zero(); jet_order];
                    j[0] = Rational::one();
                    j
                }
            };
            for s in mu.cell_statistics() {
                let (a, l) = (s.arm as i64, s.leg as i64);
                let ys = [
                    w2.scale_i64(a + 1).sub(&w1.scale_i64(l)),
                    w1.scale_i64(l + 1).sub(&w2.scale_i64(a)),
                ];
                for y in ys {
                    let td: Vec<Rational> = td_coeffs.iter().enumerate().map(|(k, c)| c.mul(&y.pow(k as i64).expect("nonnegative"))).collect();
                    jet = jet_mul(&jet, &td, jet_order);
                }
            }
            let e = euler_class(&mu, w1, w2);
            for (k, c) in jet.iter().enumerate() {
                acc[k] = acc[k].add(&c.div(&e)?);
            }
        }
        out.push(acc);
    }
    Ok(out)
}

/// K-theoretic side: the untwisted series at `t_i = exp(ε w_i)`, expanded
/// in truncated jets; entry `n` holds the coefficients of `ε^{2n} χ_n`.
pub fn k_theory_jet(insertion: Option<Weight>, w1: &Rational, w2: &Rational, order: usize, jet_order: usize) -> Result<Vec<Vec<Rational>>> {
    let prec = jet_order as i64 + 1;
    let t1 = LaurentJet::exp_linear(w1, prec)?;
    let t2 = LaurentJet::exp_linear(w2, prec)?;
    let p = KParams::untwisted(t1, t2);
    let ins: Vec<BundleInsertion> = insertion.into_iter().map(|a| BundleInsertion::new(Operation::Plain, a)).collect();
    let series = chi_c2_series(&ins, (0, 0), &p, order)?;
    let mut out = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let shifted = series.coeff(n).shift(2 * n as i64);
        if let Some(v) = shifted.valuation() {
            if v < 0 {
                return Err(Error::Precondition(format!("jet at Q^{n} has a pole of order {}", -v)));
            }
        }
        if shifted.precision() < jet_order as i64 {
            return Err(Error::Precondition(format!("jet at Q^{n} only known to ε^{}", shifted.precision())));
        }
        out.push((0..jet_order as i64).map(|k| shifted.coeff(k)).collect());
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Toric surfaces

/// One torus-fixed point: tangent characters and line-bundle restrictions.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FixedPointDatum {
    /// Exponents of `t_{1,i}` and `t_{2,i}`.
    pub tangent: [[i64; 2]; 2],
    /// Bundle label → exponent of `t^{A^i}`.
    pub bundles: BTreeMap<String, [i64; 2]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurfaceData {
    #[serde(default)]
    pub name: String,
    pub fixed_points: Vec<FixedPointDatum>,
}

const BUILTIN_SURFACES: &str = include_str!("../data/surfaces.json");

pub const SURFACE_NAMES: [&str; 3] = ["C2", "P2", "P1xP1"];

impl SurfaceData {
    pub fn from_json(s: &str) -> Result<SurfaceData> {
        let data: SurfaceData = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        data.validate()?;
        Ok(data)
    }

    pub fn builtin(name: &str) -> Result<SurfaceData> {
        let all: BTreeMap<String, SurfaceData> = serde_json::from_str(BUILTIN_SURFACES).map_err(|e| Error::Parse(e.to_string()))?;
        let mut data = all.get(name).cloned().ok_or_else(|| Error::UnsupportedSurface(name.to_string()))?;
        data.name = name.to_string();
        data.validate()?;
        Ok(data)
    }

    pub fn validate(&self) -> Result<()> {
        if self.fixed_points.is_empty() {
            return Err(Error::UnsupportedSurface("no fixed points".into()));
        }
        for (i, p) in self.fixed_points.iter().enumerate() {
            if p.tangent.iter().any(|e| *e == [0, 0]) {
                return Err(Error::UnsupportedSurface(format!("fixed point {i} is not isolated")));
            }
        }
        Ok(())
    }

    pub fn bundle(&self, point: usize, label: &str) -> Result<Weight> {
        self.fixed_points[point]
            .bundles
            .get(label)
            .map(|w| (w[0], w[1]))
            .ok_or_else(|| Error::MissingBundle { point, bundle: label.to_string() })
    }

    pub fn chart<F: Scalar>(&self, point: usize, p: &KParams<F>) -> Result<Chart<F>> {
        let [a, b] = self.fixed_points[point].tangent;
        Ok(Chart { t1: p.character((a[0], a[1]))?, t2: p.character((b[0], b[1]))? })
    }

    /// The single chart `ℂ²` with the given bundle weights.
    pub fn single_chart(bundles: &[(&str, Weight)]) -> SurfaceData {
        SurfaceData {
            name: "chart".into(),
            fixed_points: vec![FixedPointDatum {
                tangent: [[1, 0], [0, 1]],
                bundles: bundles.iter().map(|(k, w)| (k.to_string(), [w.0, w.1])).collect(),
            }],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MarkerKind {
    /// `Λ_x L^{[n]}`
    Exterior,
    /// `S_x L^{[n]}`
    Symmetric,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MarkedInsertion {
    pub bundle: String,
    pub kind: MarkerKind,
}

impl MarkedInsertion {
    pub fn exterior(bundle: &str) -> MarkedInsertion {
        MarkedInsertion { bundle: bundle.to_string(), kind: MarkerKind::Exterior }
    }

    pub fn symmetric(bundle: &str) -> MarkedInsertion {
        MarkedInsertion { bundle: bundle.to_string(), kind: MarkerKind::Symmetric }
    }
}

/// Series indexed by marker exponent vectors `(α_1, …, α_N)`.
pub type MarkedSeries<F> = BTreeMap<Vec<usize>, QSeries<F>>;

fn exponent_vectors(len: usize, max_total: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::new();
        for v in &out {
            let used: usize = v.iter().sum();
            for k in 0..=max_total - used {
                let mut w = v.clone();
                w.push(k);
                next.push(w);
            }
        }
        out = next;
    }
    out
}

fn marked_mul<F: Scalar>(a: &MarkedSeries<F>, b: &MarkedSeries<F>, max_total: usize) -> MarkedSeries<F> {
    let mut out: MarkedSeries<F> = BTreeMap::new();
    for (ea, sa) in a {
        for (eb, sb) in b {
            let e: Vec<usize> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            if e.iter().sum::<usize>() > max_total {
                continue;
            }
            let prod = sa.mul(sb);
            out.entry(e).and_modify(|s: &mut QSeries<F>| *s = s.add(&prod)).or_insert(prod);
        }
    }
    out
}

/// `Σ_n Q^n χ(X^{[n]}, ⊗_j Λ_{x_j}/S_{x_j} L_j^{[n]} ⊗ Λ_{-u}L^{[n]} ⊗ Λ_{-v}L^{[n]*})`
/// as a product over fixed points, keeping marker monomials of total degree
/// at most `marker_degree`.
pub fn toric_chi_series<F: Scalar>(
    surface: &SurfaceData,
    ins: &[MarkedInsertion],
    twist: &str,
    p: &KParams<F>,
    order: usize,
    marker_degree: usize,
) -> Result<MarkedSeries<F>> {
    surface.validate()?;
    let exps = exponent_vectors(ins.len(), marker_degree);
    let mut total: MarkedSeries<F> = [(vec![0; ins.len()], QSeries::one(order))].into_iter().collect();
    for i in 0..surface.fixed_points.len() {
        let chart = surface.chart(i, p)?;
        let w = p.character(surface.bundle(i, twist)?)?;
        let bundle_w: Vec<F> = ins.iter().map(|m| p.character(surface.bundle(i, &m.bundle)?)).collect::<Result<_>>()?;
        let mut local: MarkedSeries<F> = BTreeMap::new();
        let parts: Vec<Partition> = (0..=order).flat_map(enumerate_partitions).collect();
        let terms: Vec<(usize, Vec<F>)> = parts
            .par_iter()
            .map(|mu| {
                let chars = chart.cell_characters(mu)?;
                let base = chart.weight(mu, &chars, &w, &p.u, &p.v)?;
                let tables: Vec<Vec<F>> = ins
                    .iter()
                    .zip(&bundle_w)
                    .map(|(m, bw)| {
                        let multiset: Vec<F> = chars.iter().map(|c| c.mul(bw)).collect();
                        (0..=marker_degree)
                            .map(|k| match m.kind {
                                MarkerKind::Exterior => elementary(&multiset, k),
                                MarkerKind::Symmetric => complete(&multiset, k),
                            })
                            .collect()
                    })
                    .collect();
                let vals = exps
                    .iter()
                    .map(|e| e.iter().zip(&tables).fold(base.clone(), |acc, (k, t)| acc.mul(&t[*k])))
                    .collect();
                Ok((mu.weight(), vals))
            })
            .collect::<Result<_>>()?;
        for (k, e) in exps.iter().enumerate() {
            let mut coeffs = vec![F::zero(); order + 1];
            for (n, vals) in &terms {
                coeffs[*n] = coeffs[*n].add(&vals[k]);
            }
            local.insert(e.clone(), QSeries::new(coeffs, order));
        }
        total = marked_mul(&total, &local, marker_degree);
    }
    Ok(total)
}

/// `χ(X, L)(t1^s, t2^s) = Σ_i t^{s A^i} / ((1 - t_{1,i}^s)(1 - t_{2,i}^s))`
/// for `L = ⊗ L_k^{n_k}`.
pub fn chi_surface<F: Scalar>(surface: &SurfaceData, bundle: &[(&str, i64)], p: &KParams<F>, s: i64) -> Result<F> {
    let mut acc = F::zero();
    for i in 0..surface.fixed_points.len() {
        let c = surface.chart(i, p)?;
        let w = bundle_character(surface, i, bundle, p)?;
        let den = c.t1.pow(s)?.one_minus().mul(&c.t2.pow(s)?.one_minus());
        acc = acc.add(&w.pow(s)?.div(&den)?);
    }
    Ok(acc)
}

fn bundle_character<F: Scalar>(surface: &SurfaceData, i: usize, bundle: &[(&str, i64)], p: &KParams<F>) -> Result<F> {
    let mut w = F::one();
    for (label, n) in bundle {
        w = w.mul(&p.character(surface.bundle(i, label)?)?.pow(*n)?);
    }
    Ok(w)
}

/// `χ(X, L ⊗ S_{uQ}T^*X)` as a series in `Q`.
pub fn chi_with_sym_cotangent<F: Scalar>(surface: &SurfaceData, bundle: &[(&str, i64)], p: &KParams<F>, order: usize) -> Result<QSeries<F>> {
    let mut acc = QSeries::zero(order);
    for i in 0..surface.fixed_points.len() {
        let c = surface.chart(i, p)?;
        let w = bundle_character(surface, i, bundle, p)?;
        let local = w.div(&c.t1.one_minus().mul(&c.t2.one_minus()))?;
        acc = acc.add(&sym_factor(&c, &p.u, order)?.scale(&local));
    }
    Ok(acc)
}

/// `1 / ((1 - uQ t_{1,i})(1 - uQ t_{2,i}))`.
fn sym_factor<F: Scalar>(c: &Chart<F>, u: &F, order: usize) -> Result<QSeries<F>> {
    let one = QSeries::one(order);
    let a = one.sub(&QSeries::monomial(u.mul(&c.t1), 1, order));
    let b = one.sub(&QSeries::monomial(u.mul(&c.t2), 1, order));
    one.div(&a.mul(&b))
}

/// `χ(X, L ⊗ (O + uQ K_X) ⊗ S_ε T^*X ⊗ S_{uQ}T^*X)|_{ε=-1}`.
pub fn chi_lambda2_slice<F: Scalar>(surface: &SurfaceData, bundle: &[(&str, i64)], p: &KParams<F>, order: usize) -> Result<QSeries<F>> {
    let mut acc = QSeries::zero(order);
    for i in 0..surface.fixed_points.len() {
        let c = surface.chart(i, p)?;
        let w = bundle_character(surface, i, bundle, p)?;
        let k = c.t1.mul(&c.t2);
        let den = c.t1.one_minus().mul(&c.t2.one_minus()).mul(&F::one().add(&c.t1)).mul(&F::one().add(&c.t2));
        let canonical = QSeries::one(order).add(&QSeries::monomial(p.u.mul(&k), 1, order));
        acc = acc.add(&canonical.mul(&sym_factor(&c, &p.u, order)?).scale(&w.div(&den)?));
    }
    Ok(acc)
}

/// Which coefficient of the exterior-power series is checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ToricWhich {
    /// coefficient of `x1`
    Lambda1,
    /// coefficient of `x1 x2`
    Lambda1Lambda1,
    /// coefficient of `x1²`
    Lambda2,
}

impl FromStr for ToricWhich {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lambda1" | "a" => Ok(ToricWhich::Lambda1),
            "lambda1lambda1" | "b" => Ok(ToricWhich::Lambda1Lambda1),
            "lambda2" | "c" => Ok(ToricWhich::Lambda2),
            _ => Err(Error::UnknownName(s.to_string())),
        }
    }
}

impl fmt::Display for ToricWhich {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ToricWhich::Lambda1 => "lambda1",
            ToricWhich::Lambda1Lambda1 => "lambda1lambda1",
            ToricWhich::Lambda2 => "lambda2",
        })
    }
}

pub const TORIC_CHECKS: [ToricWhich; 3] = [ToricWhich::Lambda1, ToricWhich::Lambda1Lambda1, ToricWhich::Lambda2];

/// Ratios of marker coefficients to the unmarked series.
struct Ratios<F> {
    x1: QSeries<F>,
    x2: QSeries<F>,
    x1x2: QSeries<F>,
    x1sq: QSeries<F>,
}

fn toric_ratios<F: Scalar>(surface: &SurfaceData, p: &KParams<F>, order: usize) -> Result<Ratios<F>> {
    let ins = [MarkedInsertion::exterior("L1"), MarkedInsertion::exterior("L2")];
    let s = toric_chi_series(surface, &ins, "L", p, order, 2)?;
    let base = &s[&vec![0, 0]];
    let r = |e: [usize; 2]| s[&e.to_vec()].div(base);
    Ok(Ratios { x1: r([1, 0])?, x2: r([0, 1])?, x1x2: r([1, 1])?, x1sq: r([2, 0])? })
}

/// `(1-u)(1-v)Q / (1-uQ)`
fn lambda1_factor<F: Scalar>(p: &KParams<F>, order: usize) -> Result<QSeries<F>> {
    let one = QSeries::one(order);
    let num = QSeries::monomial(p.u.one_minus().mul(&p.v.one_minus()), 1, order);
    num.div(&one.sub(&QSeries::monomial(p.u.clone(), 1, order)))
}

/// `Q(1-Q)(1-u)(1-v)(1-uvQ) / (1-uQ)²`
fn connected_factor<F: Scalar>(p: &KParams<F>, order: usize) -> Result<QSeries<F>> {
    let one = QSeries::one(order);
    let q = QSeries::monomial(F::one(), 1, order);
    let uq = QSeries::monomial(p.u.clone(), 1, order);
    let uvq = QSeries::monomial(p.u.mul(&p.v), 1, order);
    let num = q.mul(&one.sub(&q)).mul(&one.sub(&uvq)).scale(&p.u.one_minus().mul(&p.v.one_minus()));
    let den = one.sub(&uq);
    num.div(&den.mul(&den))
}

fn require_trivial_twist(surface: &SurfaceData) -> Result<()> {
    for i in 0..surface.fixed_points.len() {
        if surface.bundle(i, "L")? != (0, 0) {
            return Err(Error::UnsupportedSurface(format!(
                "the closed forms need L with trivial weights; fixed point {i} has {:?}",
                surface.bundle(i, "L")?
            )));
        }
    }
    Ok(())
}

/// Sum over fixed points of `t^{A_j^i}`-weighted primed correlators computed
/// by the vertex engine at `q = t_{2,i}`, `t = t_{1,i}^{-1}`, `u t^{A^i}`, `v t^{-A^i}`.
fn local_primed<F: Scalar>(surface: &SurfaceData, i: usize, word: &str, p: &KParams<F>, order: usize) -> Result<QSeries<F>> {
    let c = surface.chart(i, p)?;
    let w = p.character(surface.bundle(i, "L")?)?;
    let params = BracketParams::new(c.t2.clone(), c.t1.inv()?, p.u.mul(&w), p.v.div(&w)?);
    vertex_correlator(&CorrelatorRequest::parse(word, params, order, Normalization::Primed)?)
}

/// The right side of the `x1²` identity. With `printed_extra` it also adds
/// the term `½ P χ(L1² ⊗ S_{uQ}T^*X)` that appears in the printed version.
pub fn lambda2_closed_form<F: Scalar>(surface: &SurfaceData, p: &KParams<F>, order: usize, printed_extra: bool) -> Result<QSeries<F>> {
    let half = F::from_ratio(1, 2)?;
    let one = QSeries::one(order);
    let f = lambda1_factor(p, order)?;
    let pc = connected_factor(p, order)?;
    let chi1 = chi_surface(surface, &[("L1", 1)], p, 1)?;
    let chi1sq = chi_surface(surface, &[("L1", 1)], p, 2)?;
    let a = f.scale(&chi1);
    let c = one.sub(&f);
    let mut out = a.mul(&a).scale(&half);
    out = out.sub(&one.scale(&chi1sq.mul(&half)));
    out = out.add(&c.mul(&c).scale(&chi1sq.mul(&half)));
    out = out.add(&pc.mul(&chi_lambda2_slice(surface, &[("L1", 2)], p, order)?));
    if printed_extra {
        out = out.add(&pc.mul(&chi_with_sym_cotangent(surface, &[("L1", 2)], p, order)?).scale(&half));
    }
    Ok(out)
}

/// The toric exterior-power identities for one coefficient.
#[derive(Clone, Debug)]
pub struct ToricCheck {
    pub surface: SurfaceData,
    pub which: ToricWhich,
    pub order: usize,
}

impl Identity for ToricCheck {
    fn variables(&self) -> Vec<&'static str> {
        vec!["t1", "t2", "u", "v"]
    }

    fn comparisons<F: Scalar>(&self, env: &Env<F>) -> Result<Vec<Comparison<F>>> {
        require_trivial_twist(&self.surface)?;
        let p = KParams::from_env(env)?;
        let (s, n) = (&self.surface, self.order);
        let r = toric_ratios(s, &p, n)?;
        let f = lambda1_factor(&p, n)?;
        let m = s.fixed_points.len();
        let tagged = |tag: &str, a: &QSeries<F>, b: &QSeries<F>| -> Vec<Comparison<F>> {
            series_pairs(a, b).into_iter().map(|(l, x, y)| (format!("{tag} {l}"), x, y)).collect()
        };
        let mut out = Vec::new();
        match self.which {
            ToricWhich::Lambda1 => {
                let closed = f.scale(&chi_surface(s, &[("L1", 1)], &p, 1)?);
                let mut local = QSeries::zero(n);
                for i in 0..m {
                    let w = p.character(s.bundle(i, "L1")?)?;
                    local = local.add(&local_primed(s, i, "Lambda1", &p, n)?.scale(&w));
                }
                out.extend(tagged("ratio=local", &r.x1, &local));
                out.extend(tagged("ratio=closed", &r.x1, &closed));
            }
            ToricWhich::Lambda1Lambda1 => {
                let chi1 = chi_surface(s, &[("L1", 1)], &p, 1)?;
                let chi2 = chi_surface(s, &[("L2", 1)], &p, 1)?;
                let conn = connected_factor(&p, n)?.mul(&chi_with_sym_cotangent(s, &[("L1", 1), ("L2", 1)], &p, n)?);
                let closed = f.scale(&chi1).mul(&f.scale(&chi2)).add(&conn);
                let mut local = QSeries::zero(n);
                let lam: Vec<QSeries<F>> = (0..m).map(|i| local_primed(s, i, "Lambda1", &p, n)).collect::<Result<_>>()?;
                for i in 0..m {
                    let wi1 = p.character(s.bundle(i, "L1")?)?;
                    let wi2 = p.character(s.bundle(i, "L2")?)?;
                    local = local.add(&local_primed(s, i, "Lambda1Lambda1", &p, n)?.scale(&wi1.mul(&wi2)));
                    for j in 0..m {
                        if j != i {
                            let wj2 = p.character(s.bundle(j, "L2")?)?;
                            local = local.add(&lam[i].mul(&lam[j]).scale(&wi1.mul(&wj2)));
                        }
                    }
                }
                let table: BTreeMap<Vec<u8>, QSeries<F>> =
                    [(vec![1], r.x1.clone()), (vec![2], r.x2.clone()), (vec![1, 2], r.x1x2.clone())].into_iter().collect();
                let connected = connected_correlators(&table)?;
                out.extend(tagged("ratio=local", &r.x1x2, &local));
                out.extend(tagged("ratio=closed", &r.x1x2, &closed));
                out.extend(tagged("connected", &connected[&vec![1, 2]], &conn));
            }
            ToricWhich::Lambda2 => {
                let mut local = QSeries::zero(n);
                let lam: Vec<QSeries<F>> = (0..m).map(|i| local_primed(s, i, "Lambda1", &p, n)).collect::<Result<_>>()?;
                let w1: Vec<F> = (0..m).map(|i| p.character(s.bundle(i, "L1")?)).collect::<Result<_>>()?;
                for i in 0..m {
                    local = local.add(&local_primed(s, i, "Lambda2", &p, n)?.scale(&w1[i].mul(&w1[i])));
                    for j in i + 1..m {
                        local = local.add(&lam[i].mul(&lam[j]).scale(&w1[i].mul(&w1[j])));
                    }
                }
                out.extend(tagged("ratio=local", &r.x1sq, &local));
                out.extend(tagged("ratio=closed", &r.x1sq, &lambda2_closed_form(s, &p, n, false)?));
            }
        }
        Ok(out)
    }
}

pub fn toric_correlator_check(surface: &SurfaceData, which: ToricWhich, order: usize, mode: &Mode) -> Result<Verdict> {
    if order == 0 {
        return Err(Error::Precondition("toric checks need order N ≥ 1".into()));
    }
    check(&ToricCheck { surface: surface.clone(), which, order }, mode)
}

/// The printed `x1²` expression against the partition-sum ratio.
#[derive(Clone, Debug)]
pub struct PrintedLambda2 {
    pub surface: SurfaceData,
    pub order: usize,
}

impl Identity for PrintedLambda2 {
    fn variables(&self) -> Vec<&'static str> {
        vec!["t1", "t2", "u", "v"]
    }

    fn comparisons<F: Scalar>(&self, env: &Env<F>) -> Result<Vec<Comparison<F>>> {
        require_trivial_twist(&self.surface)?;
        let p = KParams::from_env(env)?;
        let r = toric_ratios(&self.surface, &p, self.order)?;
        Ok(series_pairs(&r.x1sq, &lambda2_closed_form(&self.surface, &p, self.order, true)?))
    }
}

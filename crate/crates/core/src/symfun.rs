//! Symmetric functions in the power-sum, monomial, elementary and complete
//! bases; the Hall and `(q,t)` pairings; `ω`; and the coefficient families
//! `α_λ`, `β_μ`, `γ_ν`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::{Rational, Scalar};
use crate::partitions::{enumerate_partitions, Partition};

/// Largest degree for which monomial-basis transitions are built.
pub const MONOMIAL_DEGREE_BOUND: usize = 10;
/// Largest degree for the other transition matrices.
pub const DEGREE_BOUND: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Basis {
    #[serde(rename = "p")]
    Power,
    #[serde(rename = "m")]
    Monomial,
    #[serde(rename = "e")]
    Elementary,
    #[serde(rename = "h")]
    Complete,
    #[serde(rename = "P")]
    Macdonald,
}

impl Basis {
    pub fn symbol(self) -> &'static str {
        match self {
            Basis::Power => "p",
            Basis::Monomial => "m",
            Basis::Elementary => "e",
            Basis::Complete => "h",
            Basis::Macdonald => "P",
        }
    }

    pub fn parse(s: &str) -> Result<Basis> {
        Ok(match s {
            "p" => Basis::Power,
            "m" => Basis::Monomial,
            "e" => Basis::Elementary,
            "h" => Basis::Complete,
            "P" => Basis::Macdonald,
            _ => return Err(Error::UnknownName(s.to_string())),
        })
    }

    /// Bases in which basis elements multiply by concatenating partitions.
    pub fn is_multiplicative(self) -> bool {
        matches!(self, Basis::Power | Basis::Elementary | Basis::Complete)
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// A basis-tagged finite linear combination of basis elements.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetricFunction<F> {
    basis: Basis,
    terms: BTreeMap<Partition, F>,
}

impl<F: Scalar> SymmetricFunction<F> {
    pub fn zero(basis: Basis) -> Self {
        SymmetricFunction { basis, terms: BTreeMap::new() }
    }

    pub fn one(basis: Basis) -> Self {
        Self::element(basis, Partition::empty())
    }

    pub fn element(basis: Basis, lambda: Partition) -> Self {
        Self::from_terms(basis, [(lambda, F::one())])
    }

    pub fn from_terms(basis: Basis, terms: impl IntoIterator<Item = (Partition, F)>) -> Self {
        let mut f = Self::zero(basis);
        for (l, c) in terms {
            f.add_term(l, &c);
        }
        f
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn terms(&self) -> &BTreeMap<Partition, F> {
        &self.terms
    }

    pub fn coeff(&self, lambda: &Partition) -> F {
        self.terms.get(lambda).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_degree(&self) -> usize {
        self.terms.keys().map(Partition::weight).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, lambda: Partition, c: &F) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(lambda.clone()).or_insert_with(F::zero);
        *e = e.add(c);
        if e.is_zero() {
            self.terms.remove(&lambda);
        }
    }

    fn same_basis(&self, other: &Self) {
        assert_eq!(self.basis, other.basis, "mixed bases; convert first");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.same_basis(other);
        let mut out = self.clone();
        for (l, c) in &other.terms {
            out.add_term(l.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&F::one().neg()))
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::from_terms(self.basis, self.terms.iter().map(|(l, x)| (l.clone(), x.mul(c))))
    }

    pub fn map_coeffs(&self, f: impl Fn(&Partition, &F) -> F) -> Self {
        Self::from_terms(self.basis, self.terms.iter().map(|(l, x)| (l.clone(), f(l, x))))
    }

    /// Degree-`n` homogeneous component.
    pub fn homogeneous_part(&self, n: usize) -> Self {
        Self::from_terms(self.basis, self.terms.iter().filter(|(l, _)| l.weight() == n).map(|(l, c)| (l.clone(), c.clone())))
    }

    /// Product; computed in the p-basis unless the basis is multiplicative.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_basis(other);
        if !self.basis.is_multiplicative() {
            let a = basis_convert(self, Basis::Power)?;
            let b = basis_convert(other, Basis::Power)?;
            return basis_convert(&a.mul(&b)?, self.basis);
        }
        let mut out = Self::zero(self.basis);
        for (l, a) in &self.terms {
            for (m, b) in &other.terms {
                out.add_term(l.union(m), &a.mul(b));
            }
        }
        Ok(out)
    }

    /// Relabels the basis tag; used by callers that know the identification.
    pub fn retag(mut self, basis: Basis) -> Self {
        self.basis = basis;
        self
    }
}

impl<F: Scalar> fmt::Display for SymmetricFunction<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(l, c)| format!("({c})*{}{l}", self.basis)).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

type Expansion = BTreeMap<Partition, BigRational>;
/// Row `λ` holds the expansion of the `λ` basis element in the other basis.
type Matrix = BTreeMap<Partition, Expansion>;

fn matrix_cache() -> &'static Mutex<HashMap<(Basis, Basis, usize), Arc<Matrix>>> {
    static CACHE: OnceLock<Mutex<HashMap<(Basis, Basis, usize), Arc<Matrix>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn check_degree(basis: Basis, n: usize) -> Result<()> {
    let bound = if basis == Basis::Monomial { MONOMIAL_DEGREE_BOUND } else { DEGREE_BOUND };
    if n > bound {
        return Err(Error::DegreeBound { requested: n, bound });
    }
    Ok(())
}

/// Transition matrix between `from` and `to` in degree `n`; one side is `p`.
fn transition(from: Basis, to: Basis, n: usize) -> Result<Arc<Matrix>> {
    check_degree(from, n)?;
    check_degree(to, n)?;
    if let Some(m) = matrix_cache().lock().expect("cache poisoned").get(&(from, to, n)) {
        return Ok(m.clone());
    }
    let m = match (from, to) {
        (Basis::Monomial, Basis::Power) => invert(&power_to_monomial(n), n),
        (Basis::Power, Basis::Monomial) => power_to_monomial(n),
        (Basis::Elementary | Basis::Complete, Basis::Power) => multiplicative_to_power(from, n),
        (Basis::Power, Basis::Elementary | Basis::Complete) => invert(transition(to, Basis::Power, n)?.as_ref(), n),
        _ => unreachable!("transitions always pass through the power-sum basis"),
    };
    let m = Arc::new(m);
    matrix_cache().lock().expect("cache poisoned").insert((from, to, n), m.clone());
    Ok(m)
}

/// Coefficient of `x^λ` in `p_μ`: ways to distribute the parts of `μ`
/// over the rows of `λ` so that each row is filled exactly.
fn power_to_monomial(n: usize) -> Matrix {
    let parts = enumerate_partitions(n);
    let mut m = Matrix::new();
    for mu in &parts {
        let mut row = Expansion::new();
        for lam in &parts {
            let mut remaining: Vec<usize> = lam.parts().to_vec();
            let c = count_fillings(mu.parts(), &mut remaining);
            if c > 0 {
                row.insert(lam.clone(), BigRational::from_integer(c.into()));
            }
        }
        m.insert(mu.clone(), row);
    }
    m
}

fn count_fillings(items: &[usize], bins: &mut [usize]) -> u64 {
    let Some((&first, rest)) = items.split_first() else {
        return if bins.iter().all(|&b| b == 0) { 1 } else { 0 };
    };
    let mut total = 0;
    for i in 0..bins.len() {
        if bins[i] >= first {
            bins[i] -= first;
            total += count_fillings(rest, bins);
            bins[i] += first;
        }
    }
    total
}

fn mul_expansions(a: &Expansion, b: &Expansion) -> Expansion {
    let mut out = Expansion::new();
    for (l, x) in a {
        for (m, y) in b {
            *out.entry(l.union(m)).or_insert_with(BigRational::zero) += x * y;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// `h_n` and `e_n` in the p-basis from `H(z) = exp Σ p_k z^k / k` and
/// `E(z) = 1/H(-z)`.
fn one_row_expansions(n: usize) -> (Vec<Expansion>, Vec<Expansion>) {
    let unit: Expansion = [(Partition::empty(), BigRational::one())].into_iter().collect();
    let mut h = vec![unit.clone()];
    for k in 1..=n {
        let mut acc = Expansion::new();
        for j in 1..=k {
            let pj: Expansion = [(Partition::from([j]), BigRational::one())].into_iter().collect();
            for (l, c) in mul_expansions(&pj, &h[k - j]) {
                *acc.entry(l).or_insert_with(BigRational::zero) += c;
            }
        }
        let inv_k = BigRational::new(1.into(), (k as i64).into());
        acc.values_mut().for_each(|c| *c *= &inv_k);
        acc.retain(|_, c| !c.is_zero());
        h.push(acc);
    }
    let mut e = vec![unit];
    for k in 1..=n {
        let mut acc = Expansion::new();
        for j in 1..=k {
            let sign = if j % 2 == 0 { -BigRational::one() } else { BigRational::one() };
            for (l, c) in mul_expansions(&h[j], &e[k - j]) {
                *acc.entry(l).or_insert_with(BigRational::zero) += c * &sign;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        e.push(acc);
    }
    (e, h)
}

fn multiplicative_to_power(basis: Basis, n: usize) -> Matrix {
    let (e, h) = one_row_expansions(n);
    let single = if basis == Basis::Elementary { e } else { h };
    let mut m = Matrix::new();
    for lam in enumerate_partitions(n) {
        let unit: Expansion = [(Partition::empty(), BigRational::one())].into_iter().collect();
        let row = lam.parts().iter().fold(unit, |acc, &k| mul_expansions(&acc, &single[k]));
        m.insert(lam, row);
    }
    m
}

/// Inverse of a square matrix indexed by the partitions of `n`.
fn invert(m: &Matrix, n: usize) -> Matrix {
    let idx = enumerate_partitions(n);
    let k = idx.len();
    let pos: HashMap<&Partition, usize> = idx.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut a = vec![vec![BigRational::zero(); 2 * k]; k];
    for (i, row_key) in idx.iter().enumerate() {
        for (col, c) in &m[row_key] {
            a[i][pos[col]] = c.clone();
        }
        a[i][k + i] = BigRational::one();
    }
    for col in 0..k {
        let piv = (col..k).find(|&r| !a[r][col].is_zero()).expect("transition matrix is invertible");
        a.swap(col, piv);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..k {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..2 * k {
                    let d = &a[col][c] * &f;
                    a[r][c] -= d;
                }
            }
        }
    }
    idx.iter()
        .enumerate()
        .map(|(i, key)| {
            let row = (0..k).filter(|&j| !a[i][k + j].is_zero()).map(|j| (idx[j].clone(), a[i][k + j].clone())).collect();
            (key.clone(), row)
        })
        .collect()
}

fn apply<F: Scalar>(f: &SymmetricFunction<F>, from: Basis, to: Basis) -> Result<SymmetricFunction<F>> {
    let mut out = SymmetricFunction::zero(to);
    for (lam, c) in &f.terms {
        let m = transition(from, to, lam.weight())?;
        for (mu, r) in &m[lam] {
            out.add_term(mu.clone(), &c.mul(&F::from_rational(r)));
        }
    }
    Ok(out)
}

/// Re-expands `f` in `target`. The Macdonald basis is handled by the
/// `macdonald` module, which needs the parameters `q`, `t`.
pub fn basis_convert<F: Scalar>(f: &SymmetricFunction<F>, target: Basis) -> Result<SymmetricFunction<F>> {
    if f.basis == target {
        for l in f.terms.keys() {
            check_degree(target, l.weight())?;
        }
        return Ok(f.clone());
    }
    if f.basis == Basis::Macdonald || target == Basis::Macdonald {
        return Err(Error::Precondition("Macdonald-basis conversion needs macdonald::to_macdonald / from_macdonald".into()));
    }
    let in_p = if f.basis == Basis::Power { f.clone() } else { apply(f, f.basis, Basis::Power)? };
    if target == Basis::Power {
        Ok(in_p)
    } else {
        apply(&in_p, Basis::Power, target)
    }
}

/// The two pairings: Hall `(p_λ, p_μ) = δ z_λ` and the `(q,t)` deformation.
#[derive(Clone, Debug)]
pub enum Pairing<F> {
    Hall,
    Qt { q: F, t: F },
}

impl<F: Scalar> Pairing<F> {
    /// `⟨p_λ, p_λ⟩`.
    pub fn norm_of_power(&self, lam: &Partition) -> Result<F> {
        let z = F::from_bigint(&lam.z().into());
        match self {
            Pairing::Hall => Ok(z),
            Pairing::Qt { q, t } => {
                let mut acc = z;
                for &k in lam.parts() {
                    let k = k as i64;
                    acc = acc.mul(&q.pow(k)?.one_minus().div(&t.pow(k)?.one_minus())?);
                }
                Ok(acc)
            }
        }
    }
}

pub fn inner_product<F: Scalar>(f: &SymmetricFunction<F>, g: &SymmetricFunction<F>, pairing: &Pairing<F>) -> Result<F> {
    let a = basis_convert(f, Basis::Power)?;
    let b = basis_convert(g, Basis::Power)?;
    let mut acc = F::zero();
    for (lam, x) in &a.terms {
        if let Some(y) = b.terms.get(lam) {
            acc = acc.add(&x.mul(y).mul(&pairing.norm_of_power(lam)?));
        }
    }
    Ok(acc)
}

/// `ω p_λ = (-1)^{|λ|-ℓ(λ)} p_λ`; the result is in the p-basis.
pub fn omega<F: Scalar>(f: &SymmetricFunction<F>) -> Result<SymmetricFunction<F>> {
    let p = basis_convert(f, Basis::Power)?;
    Ok(p.map_coeffs(|l, c| if (l.weight() - l.len()) % 2 == 1 { c.neg() } else { c.clone() }))
}

/// `e_k`, `h_k` and `p_k` of a finite list of values.
pub fn elementary<F: Scalar>(values: &[F], k: usize) -> F {
    let mut e = vec![F::zero(); k + 1];
    e[0] = F::one();
    for x in values {
        for j in (1..=k).rev() {
            e[j] = e[j].add(&e[j - 1].mul(x));
        }
    }
    e[k].clone()
}

pub fn complete<F: Scalar>(values: &[F], k: usize) -> F {
    let mut h = vec![F::zero(); k + 1];
    h[0] = F::one();
    for x in values {
        for j in 1..=k {
            h[j] = h[j].add(&h[j - 1].mul(x));
        }
    }
    h[k].clone()
}

pub fn power_sum<F: Scalar>(values: &[F], k: usize) -> F {
    values.iter().fold(F::zero(), |acc, x| acc.add(&pow_usize(x, k)))
}

fn pow_usize<F: Scalar>(x: &F, k: usize) -> F {
    x.pow(k as i64).expect("nonnegative power")
}

/// Evaluates a symmetric function at finitely many variables.
pub fn evaluate_at<F: Scalar>(f: &SymmetricFunction<F>, values: &[F]) -> Result<F> {
    let mut acc = F::zero();
    let basis = if f.basis == Basis::Monomial { Basis::Power } else { f.basis };
    let g = basis_convert(f, basis)?;
    for (lam, c) in &g.terms {
        let mut term = c.clone();
        for &k in lam.parts() {
            term = term.mul(&match basis {
                Basis::Power => power_sum(values, k),
                Basis::Elementary => elementary(values, k),
                Basis::Complete => complete(values, k),
                _ => unreachable!(),
            });
        }
        acc = acc.add(&term);
    }
    Ok(acc)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CoefficientKind {
    Alpha,
    Beta,
    Gamma,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientTable<F> {
    pub kind: CoefficientKind,
    pub entries: BTreeMap<Partition, F>,
}

impl<F: Scalar> CoefficientTable<F> {
    pub fn get(&self, lam: &Partition) -> F {
        self.entries.get(lam).cloned().unwrap_or_else(F::zero)
    }

    /// Entries of weight `n`.
    pub fn degree(&self, n: usize) -> impl Iterator<Item = (&Partition, &F)> {
        self.entries.iter().filter(move |(l, _)| l.weight() == n)
    }
}

/// A polynomial in commuting formal generators `g_1, g_2, ...`; the key
/// `μ` stands for `g_{μ_1} g_{μ_2} ⋯`.
pub type GenPoly<F> = BTreeMap<Partition, F>;

/// Product of two generator polynomials, dropping terms above `max_weight`.
pub fn genpoly_mul<F: Scalar>(a: &GenPoly<F>, b: &GenPoly<F>, max_weight: usize) -> GenPoly<F> {
    let mut out = GenPoly::new();
    for (l, x) in a {
        for (m, y) in b {
            if l.weight() + m.weight() > max_weight {
                continue;
            }
            let e = out.entry(l.union(m)).or_insert_with(F::zero);
            *e = e.add(&x.mul(y));
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// `α_λ` for `|λ| ≤ n`: `log Σ e_k z^k = Σ α_λ e_λ z^{|λ|}`.
pub fn alpha_coefficients(n: usize) -> CoefficientTable<Rational> {
    // Formal log of S = 1 + X: n l_n = n s_n - Σ_{k<n} k l_k s_{n-k}.
    let s: Vec<GenPoly<Rational>> = (0..=n).map(|k| [(Partition::from([k]), Rational::one())].into_iter().collect()).collect();
    let mut l: Vec<GenPoly<Rational>> = vec![GenPoly::new()];
    for m in 1..=n {
        let mut acc = s[m].clone();
        for k in 1..m {
            for (key, c) in genpoly_mul(&l[k], &s[m - k], n) {
                let e = acc.entry(key).or_insert_with(Rational::zero);
                *e = e.sub(&c.mul(&Rational::new(k as i64, m as i64)));
            }
        }
        acc.retain(|_, c| !c.is_zero());
        l.push(acc);
    }
    CoefficientTable { kind: CoefficientKind::Alpha, entries: l.into_iter().flatten().collect() }
}

/// `β_μ, γ_μ` for `|μ| ≤ n` from
/// `b_m = (1-q^m)^{-1} Σ_r q^{m-r} a_r b_{m-r}` and
/// `c_m = -(1-q^m)^{-1} Σ_r a_r c_{m-r}`.
pub fn beta_gamma_coefficients<F: Scalar>(n: usize, q: &F) -> Result<(CoefficientTable<F>, CoefficientTable<F>)> {
    let (b, c) = b_c_polynomials(n, q)?;
    Ok((
        CoefficientTable { kind: CoefficientKind::Beta, entries: b.into_iter().flatten().collect() },
        CoefficientTable { kind: CoefficientKind::Gamma, entries: c.into_iter().flatten().collect() },
    ))
}

/// `b_0..b_n` and `c_0..c_n` as polynomials in the formal `a_r`.
pub fn b_c_polynomials<F: Scalar>(n: usize, q: &F) -> Result<(Vec<GenPoly<F>>, Vec<GenPoly<F>>)> {
    let unit: GenPoly<F> = [(Partition::empty(), F::one())].into_iter().collect();
    let a = |r: usize| -> GenPoly<F> { [(Partition::from([r]), F::one())].into_iter().collect() };
    let mut b = vec![unit.clone()];
    let mut c = vec![unit];
    for m in 1..=n {
        let denom = q.pow(m as i64)?.one_minus();
        let mut bm = GenPoly::new();
        let mut cm = GenPoly::new();
        for r in 1..=m {
            let qpow = q.pow((m - r) as i64)?;
            for (k, x) in genpoly_mul(&a(r), &b[m - r], n) {
                let e = bm.entry(k).or_insert_with(F::zero);
                *e = e.add(&x.mul(&qpow));
            }
            for (k, x) in genpoly_mul(&a(r), &c[m - r], n) {
                let e = cm.entry(k).or_insert_with(F::zero);
                *e = e.sub(&x);
            }
        }
        for v in bm.values_mut().chain(cm.values_mut()) {
            *v = v.div(&denom)?;
        }
        bm.retain(|_, x| !x.is_zero());
        cm.retain(|_, x| !x.is_zero());
        b.push(bm);
        c.push(cm);
    }
    Ok((b, c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::RationalFunction;

    fn p(parts: &[usize]) -> SymmetricFunction<Rational> {
        SymmetricFunction::element(Basis::Power, Partition::from(parts))
    }

    #[test]
    fn low_degree_conversions() {
        let e1 = basis_convert(&p(&[1]), Basis::Elementary).unwrap();
        assert_eq!(e1, SymmetricFunction::element(Basis::Elementary, Partition::from([1])));
        let h2 = basis_convert(&SymmetricFunction::<Rational>::element(Basis::Complete, Partition::from([2])), Basis::Power).unwrap();
        let half = Rational::new(1, 2);
        assert_eq!(h2, SymmetricFunction::from_terms(Basis::Power, [(Partition::from([1, 1]), half.clone()), (Partition::from([2]), half.clone())]));
        let e2 = basis_convert(&SymmetricFunction::<Rational>::element(Basis::Elementary, Partition::from([2])), Basis::Power).unwrap();
        assert_eq!(e2, SymmetricFunction::from_terms(Basis::Power, [(Partition::from([1, 1]), half.clone()), (Partition::from([2]), half.neg())]));
    }

    #[test]
    fn omega_signs() {
        assert_eq!(omega(&p(&[1])).unwrap(), p(&[1]));
        assert_eq!(omega(&p(&[2])).unwrap(), p(&[2]).scale(&Rational::from_i64(-1)));
        assert_eq!(omega(&p(&[2, 1])).unwrap(), p(&[2, 1]).scale(&Rational::from_i64(-1)));
    }

    #[test]
    fn pairings() {
        let q = RationalFunction::var("q");
        let t = RationalFunction::var("t");
        let qt = Pairing::Qt { q: q.clone(), t: t.clone() };
        let p1 = SymmetricFunction::<RationalFunction>::element(Basis::Power, Partition::from([1]));
        let one = RationalFunction::one();
        assert_eq!(inner_product(&p1, &p1, &qt).unwrap(), one.sub(&q).div(&one.sub(&t)).unwrap());
        let p2 = SymmetricFunction::<RationalFunction>::element(Basis::Power, Partition::from([2]));
        let p11 = SymmetricFunction::<RationalFunction>::element(Basis::Power, Partition::from([1, 1]));
        assert!(inner_product(&p2, &p11, &qt).unwrap().is_zero());
        assert_eq!(inner_product(&p11, &p11, &Pairing::Hall).unwrap(), RationalFunction::from_i64(2));
    }

    #[test]
    fn degree_bound_for_monomials() {
        let m = SymmetricFunction::<Rational>::element(Basis::Monomial, Partition::from([11]));
        assert!(matches!(basis_convert(&m, Basis::Power), Err(Error::DegreeBound { .. })));
    }

    #[test]
    fn finite_variable_values() {
        let xs: Vec<Rational> = [2, 3, 5].iter().map(|&x| Rational::from_i64(x)).collect();
        assert_eq!(elementary(&xs, 2), Rational::from_i64(31));
        assert_eq!(complete(&xs, 2), Rational::from_i64(4 + 9 + 25 + 31));
        assert_eq!(power_sum(&xs, 2), Rational::from_i64(38));
        let m21 = SymmetricFunction::<Rational>::element(Basis::Monomial, Partition::from([2, 1]));
        // m_21(2,3,5) = Σ_{i≠j} x_i² x_j
        assert_eq!(evaluate_at(&m21, &xs).unwrap(), Rational::from_i64(4 * 8 + 9 * 7 + 25 * 5));
    }
}

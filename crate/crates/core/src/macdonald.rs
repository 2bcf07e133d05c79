//! Macdonald polynomials `P_μ(x;q,t)`, the operator `E`, and eigenvalues of
//! the diagonal operators `E^r`, `Ẽ^r`, `Ψ^m`, `Λ^m`, `Σ^m`.
//!
//! Every function is generic over the scalar type and takes `q`, `t`
//! explicitly, so the same code runs symbolically (`RationalFunction`) and
//! at rational points. The symbolic table is cached.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::{Rational, RationalFunction, Scalar};
use crate::partitions::{enumerate_partitions, Partition};
use crate::symfun::{alpha_coefficients, basis_convert, beta_gamma_coefficients, complete, elementary, power_sum, Basis, SymmetricFunction};

pub const MACDONALD_DEGREE_BOUND: usize = 8;

/// `q^a t^b`.
pub fn qt_monomial<F: Scalar>(q: &F, t: &F, a: i64, b: i64) -> Result<F> {
    Ok(q.pow(a)?.mul(&t.pow(b)?))
}

/// `P_μ` in the m-basis and `b_μ` for every `μ` of one weight.
#[derive(Clone, Debug)]
pub struct MacdonaldTable<F> {
    pub entries: BTreeMap<Partition, SymmetricFunction<F>>,
    pub norms: BTreeMap<Partition, F>,
}

/// Gram–Schmidt in the m-basis along dominance order.
pub fn macdonald_table<F: Scalar>(n: usize, q: &F, t: &F) -> Result<MacdonaldTable<F>> {
    if n > MACDONALD_DEGREE_BOUND {
        return Err(Error::DegreeBound { requested: n, bound: MACDONALD_DEGREE_BOUND });
    }
    let parts = enumerate_partitions(n);
    let p_rows: Vec<SymmetricFunction<Rational>> = parts
        .iter()
        .map(|l| basis_convert(&SymmetricFunction::element(Basis::Monomial, l.clone()), Basis::Power))
        .collect::<Result<_>>()?;
    let mut weights = HashMap::new();
    for rho in &parts {
        weights.insert(rho.clone(), crate::symfun::Pairing::Qt { q: q.clone(), t: t.clone() }.norm_of_power(rho)?);
    }
    let k = parts.len();
    let mut gram = vec![vec![F::zero(); k]; k];
    for i in 0..k {
        for j in i..k {
            let mut acc = F::zero();
            for (rho, a) in p_rows[i].terms() {
                if let Some(b) = p_rows[j].terms().get(rho) {
                    acc = acc.add(&F::from_rational(&a.mul(b).0).mul(&weights[rho]));
                }
            }
            gram[i][j] = acc.clone();
            gram[j][i] = acc;
        }
    }
    // coefficient vectors u[i][j] of P_{parts[i]} on m_{parts[j]}
    let mut u: Vec<Vec<F>> = vec![Vec::new(); k];
    let mut norm_sq: Vec<F> = vec![F::zero(); k];
    for i in (0..k).rev() {
        let mut row = vec![F::zero(); k];
        row[i] = F::one();
        for j in (i + 1)..k {
            if !parts[i].dominates(&parts[j]) {
                continue;
            }
            let inner = (0..k).fold(F::zero(), |acc, c| if u[j][c].is_zero() { acc } else { acc.add(&u[j][c].mul(&gram[i][c])) });
            if inner.is_zero() {
                continue;
            }
            let coef = inner.div(&norm_sq[j])?;
            for c in 0..k {
                if !u[j][c].is_zero() {
                    row[c] = row[c].sub(&coef.mul(&u[j][c]));
                }
            }
        }
        let mut nsq = F::zero();
        for a in 0..k {
            if row[a].is_zero() {
                continue;
            }
            for b in 0..k {
                if !row[b].is_zero() {
                    nsq = nsq.add(&row[a].mul(&row[b]).mul(&gram[a][b]));
                }
            }
        }
        norm_sq[i] = nsq;
        u[i] = row;
    }
    let mut table = MacdonaldTable { entries: BTreeMap::new(), norms: BTreeMap::new() };
    for i in 0..k {
        let f = SymmetricFunction::from_terms(Basis::Monomial, parts.iter().cloned().zip(u[i].iter().cloned()));
        table.entries.insert(parts[i].clone(), f);
        table.norms.insert(parts[i].clone(), norm_sq[i].inv()?);
    }
    Ok(table)
}

fn symbolic_cache() -> &'static Mutex<HashMap<usize, Arc<MacdonaldTable<RationalFunction>>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<MacdonaldTable<RationalFunction>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The symbolic table of weight `n` over `ℚ(q,t)`, computed once.
pub fn symbolic_table(n: usize) -> Result<Arc<MacdonaldTable<RationalFunction>>> {
    if let Some(t) = symbolic_cache().lock().expect("cache poisoned").get(&n) {
        return Ok(t.clone());
    }
    let table = Arc::new(macdonald_table(n, &RationalFunction::var("q"), &RationalFunction::var("t"))?);
    Ok(symbolic_cache().lock().expect("cache poisoned").entry(n).or_insert(table).clone())
}

/// `P_μ(x;q,t)` in the m-basis over `ℚ(q,t)`.
pub fn macdonald_p(mu: &Partition) -> Result<SymmetricFunction<RationalFunction>> {
    Ok(symbolic_table(mu.weight())?.entries[mu].clone())
}

/// `Q_μ = b_μ P_μ`.
pub fn macdonald_q(mu: &Partition) -> Result<SymmetricFunction<RationalFunction>> {
    let q = RationalFunction::var("q");
    let t = RationalFunction::var("t");
    Ok(macdonald_p(mu)?.scale(&b_norm(mu, &q, &t)?))
}

/// `b_λ = Π_s (1 - q^{a} t^{l+1}) / (1 - q^{a+1} t^{l})`.
pub fn b_norm<F: Scalar>(lam: &Partition, q: &F, t: &F) -> Result<F> {
    let mut acc = F::one();
    for s in lam.cell_statistics() {
        let (a, l) = (s.arm as i64, s.leg as i64);
        acc = acc.mul(&qt_monomial(q, t, a, l + 1)?.one_minus().div(&qt_monomial(q, t, a + 1, l)?.one_minus())?);
    }
    Ok(acc)
}

/// Re-expands `f` (any of p, m, e, h) in the Macdonald basis.
pub fn to_macdonald<F: Scalar>(f: &SymmetricFunction<F>, q: &F, t: &F) -> Result<SymmetricFunction<F>> {
    let mut rest = basis_convert(f, Basis::Monomial)?;
    let mut out = SymmetricFunction::zero(Basis::Macdonald);
    let mut tables: HashMap<usize, MacdonaldTable<F>> = HashMap::new();
    // The first key in each weight is lexicographically largest, hence
    // maximal in dominance among the support.
    while let Some((lam, c)) = rest.terms().iter().next().map(|(l, c)| (l.clone(), c.clone())) {
        let n = lam.weight();
        if !tables.contains_key(&n) {
            tables.insert(n, macdonald_table(n, q, t)?);
        }
        rest = rest.sub(&tables[&n].entries[&lam].scale(&c));
        out.add_term(lam, &c);
    }
    Ok(out)
}

/// Expands a Macdonald-basis function in `target`.
pub fn from_macdonald<F: Scalar>(f: &SymmetricFunction<F>, target: Basis, q: &F, t: &F) -> Result<SymmetricFunction<F>> {
    if target == Basis::Macdonald {
        return Ok(f.clone());
    }
    let mut out = SymmetricFunction::zero(Basis::Monomial);
    let mut tables: HashMap<usize, MacdonaldTable<F>> = HashMap::new();
    for (lam, c) in f.terms() {
        let n = lam.weight();
        if !tables.contains_key(&n) {
            tables.insert(n, macdonald_table(n, q, t)?);
        }
        out = out.add(&tables[&n].entries[lam].scale(c));
    }
    basis_convert(&out, target)
}

/// `ε_{u,t} P_λ = Π_s (t^{l'} - q^{a'} u) / (1 - q^{a} t^{l+1})`.
pub fn specialize_eps<F: Scalar>(lam: &Partition, q: &F, t: &F, u: &F) -> Result<F> {
    let mut acc = F::one();
    for s in lam.cell_statistics() {
        let num = t.pow(s.coleg as i64)?.sub(&q.pow(s.coarm as i64)?.mul(u));
        let den = qt_monomial(q, t, s.arm as i64, s.leg as i64 + 1)?.one_minus();
        acc = acc.mul(&num.div(&den)?);
    }
    Ok(acc)
}

/// `ε_{u,t}` applied termwise to a symmetric function: `p_n ↦ (1-u^n)/(1-t^n)`.
pub fn specialize_eps_of<F: Scalar>(f: &SymmetricFunction<F>, t: &F, u: &F) -> Result<F> {
    let p = basis_convert(f, Basis::Power)?;
    let mut acc = F::zero();
    for (lam, c) in p.terms() {
        let mut term = c.clone();
        for &k in lam.parts() {
            let k = k as i64;
            term = term.mul(&u.pow(k)?.one_minus().div(&t.pow(k)?.one_minus())?);
        }
        acc = acc.add(&term);
    }
    Ok(acc)
}

/// The same specialization computed through the p-expansion of `P_λ`.
pub fn specialize_eps_via_power_sums<F: Scalar>(lam: &Partition, q: &F, t: &F, u: &F) -> Result<F> {
    let table = macdonald_table(lam.weight(), q, t)?;
    specialize_eps_of(&table.entries[lam], t, u)
}

/// Coefficient of `z^k` in `exp Σ_n c_n p_n z^n / n`, as a p-basis map.
fn exp_coefficient<F: Scalar>(k: usize, c: &[F]) -> BTreeMap<Partition, F> {
    let mut out = BTreeMap::new();
    for nu in enumerate_partitions(k) {
        let mut coef = F::one().div(&F::from_bigint(&nu.z().into())).expect("z is nonzero");
        for &part in nu.parts() {
            coef = coef.mul(&c[part]);
        }
        if !coef.is_zero() {
            out.insert(nu, coef);
        }
    }
    out
}

/// `E p_μ = ([exp(Σ (1-t^{-n})/n p_n z^n) Π_i (p_{μ_i} + (q^{μ_i}-1) z^{-μ_i})]_{z^0} - p_μ)/(t-1)`.
pub fn apply_e<F: Scalar>(f: &SymmetricFunction<F>, q: &F, t: &F) -> Result<SymmetricFunction<F>> {
    let p = basis_convert(f, Basis::Power)?;
    let deg = p.max_degree();
    if deg > crate::symfun::DEGREE_BOUND {
        return Err(Error::DegreeBound { requested: deg, bound: crate::symfun::DEGREE_BOUND });
    }
    let mut creation = vec![F::zero(); deg + 1];
    for (n, c) in creation.iter_mut().enumerate().skip(1) {
        *c = t.pow(-(n as i64))?.one_minus();
    }
    let exp_coeffs: Vec<BTreeMap<Partition, F>> = (0..=deg).map(|k| exp_coefficient(k, &creation)).collect();
    let inv = t.sub(&F::one()).inv()?;
    let mut out = SymmetricFunction::zero(Basis::Power);
    for (mu, c) in p.terms() {
        let parts = mu.parts();
        for mask in 0u32..(1 << parts.len()) {
            let mut shift = 0;
            let mut coef = c.clone();
            let mut kept = Vec::new();
            for (i, &part) in parts.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    shift += part;
                    coef = coef.mul(&q.pow(part as i64)?.sub(&F::one()));
                } else {
                    kept.push(part);
                }
            }
            if mask == 0 {
                // exp contributes 1 at z^0; this cancels the subtracted p_μ.
                continue;
            }
            let kept = Partition::new(kept);
            for (nu, x) in &exp_coeffs[shift] {
                out.add_term(kept.union(nu), &coef.mul(x).mul(&inv));
            }
        }
    }
    Ok(out)
}

/// `Σ_s t^{-l'(s)} q^{a'(s)}` cell values of `λ`.
pub fn cell_values<F: Scalar>(lam: &Partition, q: &F, t: &F) -> Result<Vec<F>> {
    lam.cell_statistics().iter().map(|s| qt_monomial(q, t, s.coarm as i64, -(s.coleg as i64))).collect()
}

/// Eigenvalue of `E` on `P_μ`: `(q-1)/t · Σ_s t^{-l'} q^{a'}`.
pub fn eigen_e<F: Scalar>(mu: &Partition, q: &F, t: &F) -> Result<F> {
    let s = cell_values(mu, q, t)?.iter().fold(F::zero(), |a, x| a.add(x));
    Ok(q.sub(&F::one()).div(t)?.mul(&s))
}

/// `e_j(t^{-1}, t^{-2}, …) = Π_{a≤j} 1/(t^a - 1)`.
pub fn euler_tail<F: Scalar>(j: usize, t: &F) -> Result<F> {
    let mut acc = F::one();
    for a in 1..=j as i64 {
        acc = acc.div(&t.pow(a)?.sub(&F::one()))?;
    }
    Ok(acc)
}

fn head_values<F: Scalar>(mu: &Partition, q: &F, t: &F) -> Result<Vec<F>> {
    (1..=mu.len()).map(|j| qt_monomial(q, t, mu.part(j) as i64, -(j as i64))).collect()
}

/// `e_r(q^{μ_1}t^{-1}, q^{μ_2}t^{-2}, …)`, the eigenvalue of `Ẽ^r`.
pub fn eigen_tilde_e<F: Scalar>(mu: &Partition, r: usize, q: &F, t: &F) -> Result<F> {
    let head = head_values(mu, q, t)?;
    let l = mu.len() as i64;
    let mut acc = F::zero();
    for k in 0..=r.min(head.len()) {
        let n = r - k;
        let tail = t.pow(-(n as i64) * l)?.mul(&euler_tail(n, t)?);
        acc = acc.add(&elementary(&head, k).mul(&tail));
    }
    Ok(acc)
}

/// `[z^r] Π_{j≤ℓ(μ)} (1 + q^{μ_j} t^{-j} z)/(1 + t^{-j} z)`, the eigenvalue of `E^r`.
pub fn eigen_e_r<F: Scalar>(mu: &Partition, r: usize, q: &F, t: &F) -> Result<F> {
    let head = head_values(mu, q, t)?;
    let den: Vec<F> = (1..=mu.len() as i64).map(|j| t.pow(-j)).collect::<Result<_>>()?;
    let mut acc = F::zero();
    for k in 0..=r {
        let term = elementary(&head, r - k).mul(&complete(&den, k));
        acc = if k % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    Ok(acc)
}

/// Gauss binomial `[n choose j]_q`; `[n choose 0] = 1` for every `n`.
pub fn gauss_binomial<F: Scalar>(n: i64, j: i64, q: &F) -> Result<F> {
    if j == 0 {
        return Ok(F::one());
    }
    if j < 0 || j > n {
        return Ok(F::zero());
    }
    let mut acc = F::one();
    for i in 0..j {
        acc = acc.mul(&q.pow(n - i)?.one_minus()).div(&q.pow(i + 1)?.one_minus())?;
    }
    Ok(acc)
}

/// `c_{j,n}(t) = (-1)^j t^{-j} [n+j-2 choose j]_{t^{-1}}`.
pub fn finite_tail_coefficient<F: Scalar>(j: usize, n: usize, t: &F) -> Result<F> {
    let ti = t.inv()?;
    let g = gauss_binomial(n as i64 + j as i64 - 2, j as i64, &ti)?.mul(&ti.pow(j as i64)?);
    Ok(if j % 2 == 0 { g } else { g.neg() })
}

/// Eigenvalue of `E^r_n` on `P_μ(x_1..x_n)`; requires `n ≥ |μ| + r`.
pub fn finite_eigen_e_r<F: Scalar>(mu: &Partition, r: usize, n: usize, q: &F, t: &F) -> Result<F> {
    if n < mu.weight() + r || n == 0 {
        return Err(Error::Precondition(format!("finite eigenvalue needs n ≥ |μ| + r, got n = {n}")));
    }
    let vals: Vec<F> = (1..=n).map(|i| qt_monomial(q, t, mu.part(i) as i64, -(i as i64))).collect::<Result<_>>()?;
    let mut acc = F::zero();
    for j in 0..=r {
        acc = acc.add(&finite_tail_coefficient(j, n, t)?.mul(&elementary(&vals, r - j)));
    }
    Ok(acc)
}

/// A polynomial in the commuting `Ẽ^r`; key `λ` is `Ẽ^{λ_1}Ẽ^{λ_2}⋯`, the
/// empty key is the identity.
pub type TildePolynomial<F> = BTreeMap<Partition, F>;

fn tp_add<F: Scalar>(p: &mut TildePolynomial<F>, key: Partition, c: &F) {
    let e = p.entry(key.clone()).or_insert_with(F::zero);
    *e = e.add(c);
    if e.is_zero() {
        p.remove(&key);
    }
}

/// `Ψ^m = (-1)^m m t^m/(1-q^m) Σ_{|λ|=m} α_λ Ẽ^λ + 1/((1-q^m)(1-t^{-m}))`.
pub fn psi_decomposition<F: Scalar>(m: usize, q: &F, t: &F) -> Result<TildePolynomial<F>> {
    if m == 0 {
        return Err(Error::Precondition("Ψ^m needs m ≥ 1".into()));
    }
    let mi = m as i64;
    let one_minus_qm = q.pow(mi)?.one_minus();
    let sign = if m % 2 == 0 { F::one() } else { F::one().neg() };
    let pre = sign.mul(&F::from_i64(mi)).mul(&t.pow(mi)?).div(&one_minus_qm)?;
    let mut out = TildePolynomial::new();
    for (lam, a) in alpha_coefficients(m).degree(m) {
        tp_add(&mut out, lam.clone(), &pre.mul(&F::from_rational(&a.0)));
    }
    tp_add(&mut out, Partition::empty(), &F::one().div(&one_minus_qm.mul(&t.pow(-mi)?.one_minus()))?);
    Ok(out)
}

/// `[z^k]` of `C(head)·B(tail)` (for `Λ^k`) or `(-1)^k B(head)·C(tail)`
/// (for `Σ^k`), where `e_r(head) = t^r Ẽ^r` and `e_r(tail) = t^r e_r(t^{-1},…)`.
fn beta_gamma_decomposition<F: Scalar>(k: usize, q: &F, t: &F, complete_kind: bool) -> Result<TildePolynomial<F>> {
    let (beta, gamma) = beta_gamma_coefficients(k, q)?;
    let (head_tab, tail_tab) = if complete_kind { (&beta, &gamma) } else { (&gamma, &beta) };
    let mut out = TildePolynomial::new();
    for (mu, hc) in &head_tab.entries {
        let rest = k - mu.weight().min(k);
        if mu.weight() > k {
            continue;
        }
        let mut tail_sum = F::zero();
        for (nu, tc) in tail_tab.degree(rest) {
            let mut v = tc.clone();
            for &r in nu.parts() {
                v = v.mul(&euler_tail(r, t)?);
            }
            tail_sum = tail_sum.add(&v);
        }
        tp_add(&mut out, mu.clone(), &hc.mul(&tail_sum).mul(&t.pow(k as i64)?));
    }
    if complete_kind && k % 2 == 1 {
        out = out.into_iter().map(|(l, c)| (l, c.neg())).collect();
    }
    Ok(out)
}

pub fn lambda_decomposition<F: Scalar>(k: usize, q: &F, t: &F) -> Result<TildePolynomial<F>> {
    beta_gamma_decomposition(k, q, t, false)
}

pub fn sigma_decomposition<F: Scalar>(k: usize, q: &F, t: &F) -> Result<TildePolynomial<F>> {
    beta_gamma_decomposition(k, q, t, true)
}

/// Value of an `Ẽ`-polynomial on `P_μ`.
pub fn evaluate_tilde_polynomial<F: Scalar>(poly: &TildePolynomial<F>, mu: &Partition, q: &F, t: &F) -> Result<F> {
    let max = poly.keys().flat_map(|l| l.parts().iter().copied()).max().unwrap_or(0);
    let eig: Vec<F> = (0..=max).map(|r| eigen_tilde_e(mu, r, q, t)).collect::<Result<_>>()?;
    let mut acc = F::zero();
    for (lam, c) in poly {
        acc = acc.add(&lam.parts().iter().fold(c.clone(), |x, &r| x.mul(&eig[r])));
    }
    Ok(acc)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CellFunction {
    E,
    H,
    P,
}

impl FromStr for CellFunction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "e" => Ok(CellFunction::E),
            "h" => Ok(CellFunction::H),
            "p" => Ok(CellFunction::P),
            _ => Err(Error::UnknownName(s.to_string())),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CellSymmetric<F> {
    /// Direct evaluation over the cells.
    pub value: F,
    /// Through the `Ẽ`-eigenvalue formulas.
    pub via_eigenvalues: F,
}

impl<F: Scalar> CellSymmetric<F> {
    pub fn agree(&self) -> bool {
        self.value == self.via_eigenvalues
    }
}

/// `e_k`, `h_k` or `p_k` of the multiset `{t^{-l'(s)} q^{a'(s)}}`, both directly
/// and through `Λ^k`, `Σ^k`, `Ψ^k` as `Ẽ`-polynomials.
pub fn sym_of_cells<F: Scalar>(lam: &Partition, kind: CellFunction, k: usize, q: &F, t: &F) -> Result<CellSymmetric<F>> {
    let cells = cell_values(lam, q, t)?;
    let value = match kind {
        CellFunction::E => elementary(&cells, k),
        CellFunction::H => complete(&cells, k),
        CellFunction::P if k == 0 => F::from_i64(cells.len() as i64),
        CellFunction::P => power_sum(&cells, k),
    };
    let via_eigenvalues = match kind {
        CellFunction::E => evaluate_tilde_polynomial(&lambda_decomposition(k, q, t)?, lam, q, t)?,
        CellFunction::H => evaluate_tilde_polynomial(&sigma_decomposition(k, q, t)?, lam, q, t)?,
        CellFunction::P if k == 0 => F::from_i64(lam.weight() as i64),
        CellFunction::P => evaluate_tilde_polynomial(&psi_decomposition(k, q, t)?, lam, q, t)?,
    };
    Ok(CellSymmetric { value, via_eigenvalues })
}

/// A diagonal operator on the Macdonald basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum EigenOperator {
    /// `Ẽ^r`, label `E{r}`.
    ETilde(usize),
    /// Macdonald's `E^r`, label `M{r}`; `M1` is `E`.
    EMac(usize),
    /// `Ψ^m`, label `Psi{m}`.
    Psi(usize),
    /// `Λ^m`, label `Lambda{m}`.
    Lambda(usize),
    /// `Σ^m`, label `Sigma{m}`.
    Sigma(usize),
}

impl EigenOperator {
    pub fn weight(self) -> usize {
        match self {
            EigenOperator::ETilde(r) | EigenOperator::EMac(r) | EigenOperator::Psi(r) | EigenOperator::Lambda(r) | EigenOperator::Sigma(r) => r,
        }
    }

    pub fn label(self) -> String {
        self.to_string()
    }

    pub fn eigenvalue<F: Scalar>(self, mu: &Partition, q: &F, t: &F) -> Result<F> {
        match self {
            EigenOperator::ETilde(r) => eigen_tilde_e(mu, r, q, t),
            EigenOperator::EMac(r) => eigen_e_r(mu, r, q, t),
            EigenOperator::Psi(m) => Ok(sym_direct(mu, CellFunction::P, m, q, t)?),
            EigenOperator::Lambda(m) => Ok(sym_direct(mu, CellFunction::E, m, q, t)?),
            EigenOperator::Sigma(m) => Ok(sym_direct(mu, CellFunction::H, m, q, t)?),
        }
    }

    /// The operator as an `Ẽ`-polynomial, when it has one.
    pub fn tilde_polynomial<F: Scalar>(self, q: &F, t: &F) -> Result<TildePolynomial<F>> {
        match self {
            EigenOperator::ETilde(r) => Ok([(Partition::from([r]), F::one())].into_iter().collect()),
            EigenOperator::EMac(r) => {
                // Σ E^r z^r = Π_j (1 + t^{-j} z)^{-1} · Σ Ẽ^r z^r
                let mut out = TildePolynomial::new();
                for j in 0..=r {
                    tp_add(&mut out, Partition::from([r - j]), &euler_tail_inverse(j, t)?);
                }
                Ok(out)
            }
            EigenOperator::Psi(m) => psi_decomposition(m, q, t),
            EigenOperator::Lambda(m) => lambda_decomposition(m, q, t),
            EigenOperator::Sigma(m) => sigma_decomposition(m, q, t),
        }
    }
}

/// `[z^j] Π_{i≥1} (1 + t^{-i} z)^{-1} = (-1)^j t^{-j} / Π_{a≤j}(1 - t^{-a})`.
fn euler_tail_inverse<F: Scalar>(j: usize, t: &F) -> Result<F> {
    let mut acc = t.pow(-(j as i64))?;
    for a in 1..=j as i64 {
        acc = acc.div(&t.pow(-a)?.one_minus())?;
    }
    Ok(if j % 2 == 0 { acc } else { acc.neg() })
}

fn sym_direct<F: Scalar>(mu: &Partition, kind: CellFunction, k: usize, q: &F, t: &F) -> Result<F> {
    let cells = cell_values(mu, q, t)?;
    Ok(match kind {
        CellFunction::E => elementary(&cells, k),
        CellFunction::H => complete(&cells, k),
        CellFunction::P => power_sum(&cells, k),
    })
}

impl fmt::Display for EigenOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EigenOperator::ETilde(r) => write!(f, "E{r}"),
            EigenOperator::EMac(r) => write!(f, "M{r}"),
            EigenOperator::Psi(m) => write!(f, "Psi{m}"),
            EigenOperator::Lambda(m) => write!(f, "Lambda{m}"),
            EigenOperator::Sigma(m) => write!(f, "Sigma{m}"),
        }
    }
}

impl FromStr for EigenOperator {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let split = s.find(|c: char| c.is_ascii_digit()).ok_or_else(|| Error::UnknownKernel(s.to_string()))?;
        let (name, num) = s.split_at(split);
        let n: usize = num.parse().map_err(|_| Error::UnknownKernel(s.to_string()))?;
        let op = match name {
            "E" => EigenOperator::ETilde(n),
            "M" => EigenOperator::EMac(n),
            "Psi" => EigenOperator::Psi(n),
            "Lambda" => EigenOperator::Lambda(n),
            "Sigma" => EigenOperator::Sigma(n),
            _ => return Err(Error::UnknownKernel(s.to_string())),
        };
        if n == 0 && !matches!(op, EigenOperator::ETilde(_)) {
            return Err(Error::UnknownKernel(s.to_string()));
        }
        Ok(op)
    }
}

/// Splits a word such as `E1E2` or `Psi1Psi1` into operators.
pub fn parse_word(s: &str) -> Result<Vec<EigenOperator>> {
    let s = s.trim();
    if s.is_empty() || s == "1" {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut start = 0;
    let bytes = s.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        while i < bytes.len() && !bytes[i].is_ascii_digit() {
            i += 1;
        }
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        out.push(s[start..i].trim_matches(|c| c == '*' || c == ' ').parse()?);
        while i < bytes.len() && (bytes[i] == b'*' || bytes[i] == b' ') {
            i += 1;
        }
        start = i;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> RationalFunction {
        RationalFunction::var("q")
    }
    fn t() -> RationalFunction {
        RationalFunction::var("t")
    }
    fn rf(s: &str) -> RationalFunction {
        crate::exactalg::Expr::parse(s).unwrap().eval_scalar::<RationalFunction>(&|n| Ok(RationalFunction::var(n))).unwrap()
    }

    #[test]
    fn low_degree_polynomials() {
        assert_eq!(macdonald_p(&Partition::from([1])).unwrap(), SymmetricFunction::element(Basis::Monomial, Partition::from([1])));
        let p2 = macdonald_p(&Partition::from([2])).unwrap();
        assert_eq!(p2.coeff(&Partition::from([2])), RationalFunction::one());
        assert_eq!(p2.coeff(&Partition::from([1, 1])), rf("(1-t)*(1+q)/(1-q*t)"));
        assert_eq!(macdonald_p(&Partition::from([1, 1])).unwrap(), SymmetricFunction::element(Basis::Monomial, Partition::from([1, 1])));
    }

    #[test]
    fn norms() {
        assert_eq!(b_norm(&Partition::empty(), &q(), &t()).unwrap(), RationalFunction::one());
        assert_eq!(b_norm(&Partition::from([1]), &q(), &t()).unwrap(), rf("(1-t)/(1-q)"));
        assert_eq!(b_norm(&Partition::from([2]), &q(), &t()).unwrap(), rf("(1-t)*(1-q*t)/((1-q)*(1-q^2))"));
    }

    #[test]
    fn specialization_examples() {
        let u = RationalFunction::var("u");
        assert_eq!(specialize_eps(&Partition::from([1]), &q(), &t(), &u).unwrap(), rf("(1-u)/(1-t)"));
        assert_eq!(specialize_eps(&Partition::empty(), &q(), &t(), &u).unwrap(), RationalFunction::one());
        for lam in [Partition::from([1]), Partition::from([2]), Partition::from([1, 1])] {
            assert_eq!(specialize_eps(&lam, &q(), &t(), &u).unwrap(), specialize_eps_via_power_sums(&lam, &q(), &t(), &u).unwrap());
        }
    }

    #[test]
    fn e_on_small_functions() {
        let one = SymmetricFunction::<RationalFunction>::one(Basis::Power);
        assert!(apply_e(&one, &q(), &t()).unwrap().is_zero());
        let p1 = SymmetricFunction::<RationalFunction>::element(Basis::Power, Partition::from([1]));
        assert_eq!(apply_e(&p1, &q(), &t()).unwrap(), p1.scale(&rf("(q-1)/t")));
        let p2m = macdonald_p(&Partition::from([2])).unwrap();
        let p2 = basis_convert(&p2m, Basis::Power).unwrap();
        assert_eq!(apply_e(&p2, &q(), &t()).unwrap(), p2.scale(&rf("(q-1)*(1+q)/t")));
    }

    #[test]
    fn eigenvalue_examples() {
        assert_eq!(eigen_tilde_e(&Partition::empty(), 0, &q(), &t()).unwrap(), RationalFunction::one());
        assert_eq!(eigen_tilde_e(&Partition::empty(), 1, &q(), &t()).unwrap(), rf("t^(-1)/(1-t^(-1))"));
        assert_eq!(eigen_tilde_e(&Partition::from([1]), 1, &q(), &t()).unwrap(), rf("q*t^(-1) + t^(-2)/(1-t^(-1))"));
        assert!(eigen_e_r(&Partition::empty(), 2, &q(), &t()).unwrap().is_zero());
        assert_eq!(eigen_e_r(&Partition::from([1]), 1, &q(), &t()).unwrap(), rf("(q-1)*t^(-1)"));
    }

    #[test]
    fn cell_examples() {
        let v = sym_of_cells(&Partition::from([2, 1]), CellFunction::P, 1, &q(), &t()).unwrap();
        assert_eq!(v.value, rf("1 + q + t^(-1)"));
        assert!(v.agree());
        assert!(sym_of_cells(&Partition::empty(), CellFunction::E, 2, &q(), &t()).unwrap().value.is_zero());
        assert_eq!(sym_of_cells(&Partition::from([1]), CellFunction::P, 1, &q(), &t()).unwrap().value, RationalFunction::one());
    }

    #[test]
    fn words() {
        assert_eq!(parse_word("E1E2").unwrap(), vec![EigenOperator::ETilde(1), EigenOperator::ETilde(2)]);
        assert_eq!(parse_word("Psi1Psi1").unwrap(), vec![EigenOperator::Psi(1), EigenOperator::Psi(1)]);
        assert_eq!(parse_word("Lambda2").unwrap(), vec![EigenOperator::Lambda(2)]);
        assert!(parse_word("1").unwrap().is_empty());
        assert!(matches!(parse_word("X1"), Err(Error::UnknownKernel(_))));
    }
}

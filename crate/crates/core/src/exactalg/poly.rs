//! Sparse multivariate Laurent polynomials with integer coefficients.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::scalar::Scalar;
use super::vars::Var;
use crate::error::Result;

/// Exponent vector indexed by variable position, trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(Vec<i32>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(Vec::new())
    }

    pub fn from_exponents(mut e: Vec<i32>) -> Monomial {
        while e.last() == Some(&0) {
            e.pop();
        }
        Monomial(e)
    }

    pub fn var_pow(v: Var, e: i32) -> Monomial {
        let mut x = vec![0; v.index() + 1];
        x[v.index()] = e;
        Monomial::from_exponents(x)
    }

    pub fn exponents(&self) -> &[i32] {
        &self.0
    }

    pub fn exponent(&self, v: Var) -> i32 {
        self.0.get(v.index()).copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&e| e >= 0)
    }

    /// Sum of absolute exponents.
    pub fn abs_degree(&self) -> i64 {
        self.0.iter().map(|&e| (e as i64).abs()).sum()
    }

    /// Nonzero `(variable, exponent)` pairs.
    pub fn factors(&self) -> impl Iterator<Item = (Var, i32)> + '_ {
        self.0.iter().enumerate().filter(|(_, &e)| e != 0).map(|(i, &e)| (Var::from_index(i), e))
    }

    fn zip_with(&self, other: &Monomial, f: impl Fn(i32, i32) -> i32) -> Monomial {
        let n = self.0.len().max(other.0.len());
        let e = (0..n)
            .map(|i| f(self.0.get(i).copied().unwrap_or(0), other.0.get(i).copied().unwrap_or(0)))
            .collect();
        Monomial::from_exponents(e)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.zip_with(other, |a, b| a.checked_add(b).expect("exponent overflow"))
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        self.zip_with(other, |a, b| a.checked_sub(b).expect("exponent overflow"))
    }

    pub fn pow(&self, k: i32) -> Monomial {
        Monomial::from_exponents(self.0.iter().map(|&e| e.checked_mul(k).expect("exponent overflow")).collect())
    }

    pub fn emin(&self, other: &Monomial) -> Monomial {
        self.zip_with(other, i32::min)
    }

    pub fn emax(&self, other: &Monomial) -> Monomial {
        self.zip_with(other, i32::max)
    }

    fn without(&self, v: Var) -> Monomial {
        let mut e = self.0.clone();
        if let Some(x) = e.get_mut(v.index()) {
            *x = 0;
        }
        Monomial::from_exponents(e)
    }
}

impl Ord for Monomial {
    /// Lexicographic on exponent vectors in alphabet order.
    fn cmp(&self, other: &Self) -> Ordering {
        let n = self.0.len().max(other.0.len());
        for i in 0..n {
            let a = self.0.get(i).copied().unwrap_or(0);
            let b = other.0.get(i).copied().unwrap_or(0);
            match a.cmp(&b) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .factors()
            .map(|(v, e)| if e == 1 { v.name() } else { format!("{}^{}", v.name(), e) })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Laurent polynomial; terms strictly descending in monomial order.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    terms: Vec<(Monomial, BigInt)>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Poly {
        Poly::monomial(Monomial::one(), c)
    }

    pub fn monomial(m: Monomial, c: BigInt) -> Poly {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    pub fn var(v: Var) -> Poly {
        Poly::monomial(Monomial::var_pow(v, 1), BigInt::one())
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, BigInt)>) -> Poly {
        let mut acc: HashMap<Monomial, BigInt> = HashMap::new();
        for (m, c) in terms {
            *acc.entry(m).or_default() += c;
        }
        Poly::from_map(acc)
    }

    fn from_map(acc: HashMap<Monomial, BigInt>) -> Poly {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Poly { terms }
    }

    pub fn terms(&self) -> &[(Monomial, BigInt)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.as_slice() {
            [] => Some(BigInt::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    pub fn leading(&self) -> Option<&(Monomial, BigInt)> {
        self.terms.first()
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.merge(other, true)
    }

    fn merge(&self, other: &Poly, negate: bool) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let sgn = |c: &BigInt| if negate { -c } else { c.clone() };
        while i < self.terms.len() && j < other.terms.len() {
            let (a, b) = (&self.terms[i], &other.terms[j]);
            match a.0.cmp(&b.0) {
                Ordering::Greater => {
                    out.push(a.clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b.0.clone(), sgn(&b.1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a.1 - &b.1 } else { &a.1 + &b.1 };
                    if !c.is_zero() {
                        out.push((a.0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(other.terms[j..].iter().map(|(m, c)| (m.clone(), sgn(c))));
        Poly { terms: out }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_term(m, c);
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_term(m, c);
        }
        let mut acc: HashMap<Monomial, BigInt> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                *acc.entry(ma.mul(mb)).or_default() += ca * cb;
            }
        }
        Poly::from_map(acc)
    }

    /// Multiplication by a single term keeps the order, so no re-sorting.
    pub fn mul_term(&self, m: &Monomial, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(mm, cc)| (mm.mul(m), cc * c)).collect() }
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        self.mul_term(&Monomial::one(), c)
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut acc = Poly::one();
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        acc
    }

    /// Nonnegative gcd of the integer coefficients.
    pub fn content(&self) -> BigInt {
        self.terms.iter().fold(BigInt::zero(), |g, (_, c)| g.gcd(c))
    }

    /// Divides out the integer content and makes the leading coefficient positive.
    pub fn primitive(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut c = self.content();
        if self.terms[0].1.is_negative() {
            c = -c;
        }
        Poly { terms: self.terms.iter().map(|(m, x)| (m.clone(), x / &c)).collect() }
    }

    /// Componentwise minimum exponent over all terms.
    pub fn min_exponents(&self) -> Monomial {
        let mut it = self.terms.iter();
        match it.next() {
            None => Monomial::one(),
            Some((m0, _)) => it.fold(m0.clone(), |acc, (m, _)| acc.emin(m)),
        }
    }

    pub fn max_exponents(&self) -> Monomial {
        let mut it = self.terms.iter();
        match it.next() {
            None => Monomial::one(),
            Some((m0, _)) => it.fold(m0.clone(), |acc, (m, _)| acc.emax(m)),
        }
    }

    /// Variables occurring with a nonzero exponent, in alphabet order.
    pub fn vars(&self) -> Vec<Var> {
        let mut seen = Vec::new();
        for (m, _) in &self.terms {
            for (v, _) in m.factors() {
                if !seen.contains(&v) {
                    seen.push(v);
                }
            }
        }
        seen.sort();
        seen
    }

    pub fn degree_in(&self, v: Var) -> i32 {
        self.terms.iter().map(|(m, _)| m.exponent(v)).max().unwrap_or(0)
    }

    /// Coefficients with respect to `v`, as polynomials free of `v`.
    pub fn coeffs_in(&self, v: Var) -> BTreeMap<i32, Poly> {
        let mut buckets: BTreeMap<i32, Vec<(Monomial, BigInt)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            buckets.entry(m.exponent(v)).or_default().push((m.without(v), c.clone()));
        }
        // Removing one variable from a descending list keeps each bucket descending.
        buckets.into_iter().map(|(e, terms)| (e, Poly { terms })).collect()
    }

    /// Substitutes an integer for `v`, which must occur with nonnegative exponents.
    pub fn eval_var_int(&self, v: Var, x: &BigInt) -> Poly {
        let mut powers: Vec<BigInt> = vec![BigInt::one()];
        Poly::from_terms(self.terms.iter().map(|(m, c)| {
            let e = m.exponent(v);
            assert!(e >= 0, "integer substitution into a negative power");
            while powers.len() <= e as usize {
                let next = powers.last().unwrap() * x;
                powers.push(next);
            }
            (m.without(v), c * &powers[e as usize])
        }))
    }

    /// Evaluates in any scalar ring; negative powers need invertible values.
    pub fn eval<F: Scalar>(&self, value: &mut dyn FnMut(Var) -> F) -> Result<F> {
        let mut cache: HashMap<(Var, i32), F> = HashMap::new();
        let mut bases: HashMap<Var, F> = HashMap::new();
        let mut acc = F::zero();
        for (m, c) in &self.terms {
            let mut term = F::from_bigint(c);
            for (v, e) in m.factors() {
                let p = match cache.get(&(v, e)) {
                    Some(p) => p.clone(),
                    None => {
                        let b = bases.entry(v).or_insert_with(|| value(v)).clone();
                        let p = b.pow(e as i64)?;
                        cache.insert((v, e), p.clone());
                        p
                    }
                };
                term = term.mul(&p);
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    }

    /// Exact quotient `self / d` in the Laurent ring, or `None`.
    pub fn exact_div(&self, d: &Poly) -> Option<Poly> {
        assert!(!d.is_zero(), "exact division by the zero polynomial");
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if d.terms.len() == 1 {
            let (m, c) = &d.terms[0];
            let mut out = Vec::with_capacity(self.terms.len());
            for (mm, cc) in &self.terms {
                let (qc, r) = cc.div_rem(c);
                if !r.is_zero() {
                    return None;
                }
                out.push((mm.div(m), qc));
            }
            return Some(Poly { terms: out });
        }
        let ms = self.min_exponents();
        let md = d.min_exponents();
        let f = self.shift(&ms);
        let g = d.shift(&md);
        f.poly_div(&g).map(|q| q.mul_term(&ms.div(&md), &BigInt::one()))
    }

    fn shift(&self, by: &Monomial) -> Poly {
        if by.is_one() {
            return self.clone();
        }
        Poly { terms: self.terms.iter().map(|(m, c)| (m.div(by), c.clone())).collect() }
    }

    /// Division of genuine polynomials, returning the quotient only when exact.
    fn poly_div(&self, d: &Poly) -> Option<Poly> {
        let fmax = self.max_exponents();
        let dmax = d.max_exponents();
        let bound = fmax.div(&dmax);
        if !bound.is_nonnegative() {
            return None;
        }
        let (lm, lc) = d.terms[0].clone();
        let mut rem: BTreeMap<Monomial, BigInt> = self.terms.iter().cloned().collect();
        let mut quotient = Vec::new();
        while let Some((m, c)) = rem.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
            let qm = m.div(&lm);
            if !qm.is_nonnegative() || qm.exponents().iter().zip(bound.exponents().iter().chain(std::iter::repeat(&0))).any(|(a, b)| a > b) {
                return None;
            }
            let (qc, r) = c.div_rem(&lc);
            if !r.is_zero() {
                return None;
            }
            for (dm, dc) in &d.terms {
                let key = dm.mul(&qm);
                let entry = rem.entry(key.clone()).or_default();
                *entry -= &qc * dc;
                if entry.is_zero() {
                    rem.remove(&key);
                }
            }
            quotient.push((qm, qc));
        }
        Some(Poly { terms: quotient })
    }

    /// Greatest common divisor, positive leading coefficient.
    ///
    /// Monomial factors contribute their componentwise minimum, which for
    /// genuine polynomials is the usual monomial gcd.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() {
            return b.primitive().scale(&b.content());
        }
        if b.is_zero() {
            return a.primitive().scale(&a.content());
        }
        let ma = a.min_exponents();
        let mb = b.min_exponents();
        let g = gcd_nomono(&a.shift(&ma), &b.shift(&mb));
        g.mul_term(&ma.emin(&mb), &BigInt::one())
    }

    /// gcd up to monomial factors: the result has no monomial factor.
    pub fn gcd_unit_monomial(a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() || b.is_zero() {
            let p = if a.is_zero() { b } else { a };
            return p.shift(&p.min_exponents()).primitive().scale(&p.content());
        }
        gcd_nomono(&a.shift(&a.min_exponents()), &b.shift(&b.min_exponents()))
    }

    /// Canonical rendering: terms by ascending total absolute degree, ties
    /// broken lexicographically descending.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut order: Vec<&(Monomial, BigInt)> = self.terms.iter().collect();
        order.sort_by_key(|(m, _)| m.abs_degree());
        let mut s = String::new();
        for (i, (m, c)) in order.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if m.is_one() {
                s.push_str(&a.to_string());
            } else if a.is_one() {
                s.push_str(&m.to_string());
            } else {
                s.push_str(&format!("{a}*{m}"));
            }
        }
        s
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// gcd of two nonzero polynomials without monomial content.
fn gcd_nomono(f: &Poly, g: &Poly) -> Poly {
    let cf = f.content();
    let cg = g.content();
    let c = cf.gcd(&cg);
    if f.is_constant() || g.is_constant() {
        return Poly::constant(c);
    }
    let fp = f.primitive();
    let gp = g.primitive();
    if fp == gp {
        return fp.scale(&c);
    }
    let mut vars = fp.vars();
    for v in gp.vars() {
        if !vars.contains(&v) {
            vars.push(v);
        }
    }
    vars.sort();
    let h = heu_gcd(&fp, &gp, &vars).unwrap_or_else(|| prs_gcd(&fp, &gp));
    h.primitive().scale(&c)
}

const HEU_GCD_TRIES: usize = 6;

/// Heuristic gcd by evaluation at a large integer and balanced-digit
/// reconstruction; every candidate is confirmed by exact division.
fn heu_gcd(f: &Poly, g: &Poly, vars: &[Var]) -> Option<Poly> {
    let cf = f.content();
    let cg = g.content();
    let c = cf.gcd(&cg);
    let Some((&x, rest)) = vars.split_last() else {
        return Some(Poly::constant(c));
    };
    if f.degree_in(x) == 0 && g.degree_in(x) == 0 {
        return heu_gcd(f, g, rest);
    }
    let f = f.exact_div(&Poly::constant(cf.clone()))?;
    let g = g.exact_div(&Poly::constant(cg.clone()))?;
    let norm = |p: &Poly| p.terms.iter().map(|(_, c)| c.abs()).max().unwrap_or_default();
    let (fnorm, gnorm) = (norm(&f), norm(&g));
    let lcf = f.terms[0].1.abs();
    let lcg = g.terms[0].1.abs();
    let b: BigInt = BigInt::from(2) * fnorm.clone().min(gnorm.clone()) + 29;
    let lower: BigInt = BigInt::from(2) * (&fnorm / &lcf).min(&gnorm / &lcg) + 2;
    let mut xi = b.clone().min(BigInt::from(99) * b.sqrt()).max(lower);
    for _ in 0..HEU_GCD_TRIES {
        let ff = f.eval_var_int(x, &xi);
        let gg = g.eval_var_int(x, &xi);
        if !ff.is_zero() && !gg.is_zero() {
            if let Some(h) = heu_gcd(&ff, &gg, rest) {
                let cand = interpolate(&h, x, &xi).primitive();
                if !cand.is_zero() && f.exact_div(&cand).is_some() && g.exact_div(&cand).is_some() {
                    return Some(cand.scale(&c));
                }
                if let Some(cff) = ff.exact_div(&h) {
                    let cofactor = interpolate(&cff, x, &xi);
                    if !cofactor.is_zero() {
                        if let Some(cand) = f.exact_div(&cofactor) {
                            let cand = cand.primitive();
                            if g.exact_div(&cand).is_some() {
                                return Some(cand.scale(&c));
                            }
                        }
                    }
                }
            }
        }
        let s = xi.sqrt().sqrt();
        xi = (&xi * BigInt::from(73794) * s) / BigInt::from(27011);
    }
    None
}

/// Balanced base-`xi` expansion of every coefficient into powers of `x`.
fn interpolate(h: &Poly, x: Var, xi: &BigInt) -> Poly {
    let half = xi / 2;
    let mut terms = Vec::new();
    for (m, c) in &h.terms {
        let mut c = c.clone();
        let mut i = 0;
        while !c.is_zero() {
            let mut d = c.mod_floor(xi);
            if d > half {
                d -= xi;
            }
            if !d.is_zero() {
                terms.push((m.mul(&Monomial::var_pow(x, i)), d.clone()));
            }
            c = (c - d) / xi;
            i += 1;
        }
    }
    Poly::from_terms(terms)
}

/// Primitive polynomial remainder sequence gcd; the slow but sure route.
fn prs_gcd(f: &Poly, g: &Poly) -> Poly {
    if f.is_zero() {
        return g.primitive().scale(&g.content());
    }
    if g.is_zero() {
        return f.primitive().scale(&f.content());
    }
    if f.is_constant() || g.is_constant() {
        return Poly::constant(f.content().gcd(&g.content()));
    }
    let mut vars = f.vars();
    vars.extend(g.vars());
    let x = *vars.iter().min().unwrap();
    let content_x = |p: &Poly| -> Poly {
        p.coeffs_in(x).values().fold(Poly::zero(), |acc, c| if acc.is_zero() { c.primitive().scale(&c.content()) } else { Poly::gcd(&acc, c) })
    };
    let cf = content_x(f);
    let cg = content_x(g);
    let c = Poly::gcd(&cf, &cg);
    let mut a = f.exact_div(&cf).expect("content divides");
    let mut b = g.exact_div(&cg).expect("content divides");
    if a.degree_in(x) == 0 || b.degree_in(x) == 0 {
        return c;
    }
    loop {
        if a.degree_in(x) < b.degree_in(x) {
            std::mem::swap(&mut a, &mut b);
        }
        let r = prem(&a, &b, x);
        if r.is_zero() {
            break;
        }
        if r.degree_in(x) == 0 {
            b = Poly::one();
            break;
        }
        let cr = content_x(&r);
        a = b;
        b = r.exact_div(&cr).expect("content divides");
    }
    let cb = content_x(&b);
    c.mul(&b.exact_div(&cb).expect("content divides")).primitive()
}

fn prem(a: &Poly, b: &Poly, x: Var) -> Poly {
    let db = b.degree_in(x);
    let lcb = b.coeffs_in(x).remove(&db).unwrap();
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(x) >= db {
        let dr = r.degree_in(x);
        let lcr = r.coeffs_in(x).remove(&dr).unwrap();
        let shift = Monomial::var_pow(x, dr - db);
        r = r.mul(&lcb).sub(&lcr.mul(b).mul_term(&shift, &BigInt::one()));
    }
    r
}

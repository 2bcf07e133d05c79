//! Power series in the formal variable `Q`, truncated at a fixed order.

use std::fmt;

use num_rational::BigRational;

use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Order used for exact (polynomial) series such as the constants `0`, `1`.
pub const EXACT: usize = usize::MAX;

/// `sum_{k<=order} coeffs[k] Q^k`. Coefficients past `coeffs.len()` are zero.
#[derive(Clone, PartialEq, Debug)]
pub struct QSeries<F> {
    coeffs: Vec<F>,
    order: usize,
}

impl<F: Scalar> QSeries<F> {
    pub fn new(mut coeffs: Vec<F>, order: usize) -> QSeries<F> {
        if order != EXACT {
            coeffs.truncate(order + 1);
        }
        while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        QSeries { coeffs, order }
    }

    pub fn zero(order: usize) -> QSeries<F> {
        QSeries::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> QSeries<F> {
        QSeries::constant(F::one(), order)
    }

    pub fn constant(c: F, order: usize) -> QSeries<F> {
        QSeries::new(vec![c], order)
    }

    /// `c Q^k`.
    pub fn monomial(c: F, k: usize, order: usize) -> QSeries<F> {
        if order != EXACT && k > order {
            return QSeries::zero(order);
        }
        let mut v = vec![F::zero(); k];
        v.push(c);
        QSeries::new(v, order)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, n: usize) -> F {
        self.coeffs.get(n).cloned().unwrap_or_else(F::zero)
    }

    /// Coefficients `0..=order`, zero padded. Panics on exact series.
    pub fn coefficients(&self) -> Vec<F> {
        assert!(self.order != EXACT, "exact series have no finite coefficient list");
        (0..=self.order).map(|k| self.coeff(k)).collect()
    }

    pub fn truncate(&self, order: usize) -> QSeries<F> {
        QSeries::new(self.coeffs.clone(), order.min(self.order))
    }

    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn map<G: Scalar>(&self, f: impl Fn(&F) -> G) -> QSeries<G> {
        QSeries::new(self.coeffs.iter().map(f).collect(), self.order)
    }

    pub fn try_map<G: Scalar>(&self, f: impl Fn(&F) -> Result<G>) -> Result<QSeries<G>> {
        Ok(QSeries::new(self.coeffs.iter().map(f).collect::<Result<_>>()?, self.order))
    }

    pub fn add(&self, other: &QSeries<F>) -> QSeries<F> {
        let order = self.order.min(other.order);
        let n = self.coeffs.len().max(other.coeffs.len());
        QSeries::new((0..n).map(|k| self.coeff(k).add(&other.coeff(k))).collect(), order)
    }

    pub fn sub(&self, other: &QSeries<F>) -> QSeries<F> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> QSeries<F> {
        QSeries { coeffs: self.coeffs.iter().map(|c| c.neg()).collect(), order: self.order }
    }

    pub fn scale(&self, c: &F) -> QSeries<F> {
        QSeries::new(self.coeffs.iter().map(|x| x.mul(c)).collect(), self.order)
    }

    pub fn mul(&self, other: &QSeries<F>) -> QSeries<F> {
        let order = self.order.min(other.order);
        if self.is_zero() || other.is_zero() {
            return QSeries::zero(order);
        }
        let len = self.coeffs.len() + other.coeffs.len() - 1;
        let len = if order == EXACT { len } else { len.min(order + 1) };
        let mut out = vec![F::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        QSeries::new(out, order)
    }

    /// Multiplies by `Q^k`.
    pub fn shift(&self, k: usize) -> QSeries<F> {
        let mut v = vec![F::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        QSeries::new(v, self.order)
    }

    /// `f(Q^k)` for `k >= 1`.
    pub fn substitute_power(&self, k: usize) -> QSeries<F> {
        assert!(k >= 1);
        let mut v = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            let idx = i * k;
            if self.order != EXACT && idx > self.order {
                break;
            }
            v.resize(idx + 1, F::zero());
            v[idx] = c.clone();
        }
        QSeries::new(v, self.order)
    }

    fn require_finite(&self, what: &str) -> Result<usize> {
        if self.order == EXACT {
            Err(Error::Precondition(format!("{what} of an exact series needs a finite order")))
        } else {
            Ok(self.order)
        }
    }

    /// Multiplicative inverse; requires an invertible constant term.
    pub fn inv(&self) -> Result<QSeries<F>> {
        let c0 = self.coeff(0);
        let c0inv = c0.inv().map_err(|_| Error::Precondition("series inverse needs an invertible constant term".into()))?;
        if self.coeffs.len() <= 1 {
            return Ok(QSeries::constant(c0inv, self.order));
        }
        let order = self.require_finite("inverse")?;
        let mut b = vec![c0inv.clone()];
        for n in 1..=order {
            let mut s = F::zero();
            for k in 1..=n.min(self.coeffs.len() - 1) {
                s = s.add(&self.coeffs[k].mul(&b[n - k]));
            }
            b.push(s.neg().mul(&c0inv));
        }
        Ok(QSeries::new(b, order))
    }

    pub fn div(&self, other: &QSeries<F>) -> Result<QSeries<F>> {
        Ok(self.mul(&other.inv()?))
    }

    /// `exp` of a series with zero constant term.
    pub fn exp(&self) -> Result<QSeries<F>> {
        if !self.coeff(0).is_zero() {
            return Err(Error::Precondition("exp needs a zero constant term".into()));
        }
        if self.is_zero() {
            return Ok(QSeries::one(self.order));
        }
        let order = self.require_finite("exp")?;
        let mut e = vec![F::one()];
        for n in 1..=order {
            let mut s = F::zero();
            for k in 1..=n.min(self.coeffs.len().saturating_sub(1)) {
                s = s.add(&self.coeffs[k].mul(&e[n - k]).scale_i64(k as i64));
            }
            e.push(s.div(&F::from_i64(n as i64))?);
        }
        Ok(QSeries::new(e, order))
    }

    /// `log` of a series with constant term one.
    pub fn log(&self) -> Result<QSeries<F>> {
        if !self.coeff(0).is_one() {
            return Err(Error::Precondition("log needs constant term one".into()));
        }
        if self.coeffs.len() <= 1 {
            return Ok(QSeries::zero(self.order));
        }
        let order = self.require_finite("log")?;
        let mut l = vec![F::zero()];
        for n in 1..=order {
            let mut s = self.coeff(n).scale_i64(n as i64);
            for k in 1..n {
                s = s.sub(&l[k].scale_i64(k as i64).mul(&self.coeff(n - k)));
            }
            l.push(s.div(&F::from_i64(n as i64))?);
        }
        Ok(QSeries::new(l, order))
    }

    pub fn pow(&self, e: i64) -> Result<QSeries<F>> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = QSeries::one(self.order);
        let mut b = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&b);
            }
            k >>= 1;
            if k > 0 {
                b = b.mul(&b);
            }
        }
        Ok(acc)
    }
}

impl<F: Scalar> Scalar for QSeries<F> {
    fn zero() -> Self {
        QSeries::zero(EXACT)
    }
    fn one() -> Self {
        QSeries::one(EXACT)
    }
    fn from_i64(n: i64) -> Self {
        QSeries::constant(F::from_i64(n), EXACT)
    }
    fn from_rational(r: &BigRational) -> Self {
        QSeries::constant(F::from_rational(r), EXACT)
    }
    fn is_zero(&self) -> bool {
        QSeries::is_zero(self)
    }
    fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }
    fn add(&self, other: &Self) -> Self {
        QSeries::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        QSeries::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        QSeries::mul(self, other)
    }
    fn neg(&self) -> Self {
        QSeries::neg(self)
    }
    fn inv(&self) -> Result<Self> {
        QSeries::inv(self)
    }
}

impl<F: Scalar> fmt::Display for QSeries<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            parts.push(match k {
                0 => format!("({c})"),
                1 => format!("({c})*Q"),
                _ => format!("({c})*Q^{k}"),
            });
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        if self.order != EXACT {
            parts.push(format!("O(Q^{})", self.order + 1));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::super::rational::Rational;
    use super::super::ratfun::RationalFunction;
    use super::*;

    fn r(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    #[test]
    fn geometric_inverse() {
        let s = QSeries::new(vec![r(1), r(-1)], 5);
        let inv = s.inv().unwrap();
        assert_eq!(inv.coefficients(), vec![r(1); 6]);
    }

    #[test]
    fn exp_log_roundtrip() {
        let s = QSeries::new(vec![r(0), r(2), r(-3), Rational::new(1, 2)], 6);
        let back = s.exp().unwrap().log().unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn exp_of_q_is_factorial_series() {
        let e = QSeries::new(vec![r(0), r(1)], 4).exp().unwrap();
        let expect: Vec<Rational> = [1, 1, 2, 6, 24].iter().map(|&d| Rational::new(1, d)).collect();
        assert_eq!(e.coefficients(), expect);
    }

    #[test]
    fn preconditions_are_errors() {
        let s = QSeries::new(vec![r(1), r(1)], 3);
        assert!(s.exp().is_err());
        assert!(QSeries::new(vec![r(0), r(1)], 3).inv().is_err());
        assert!(QSeries::new(vec![r(2)], 3).log().is_err());
    }

    #[test]
    fn symbolic_quotient_expansion() {
        let u = RationalFunction::var("u");
        let one = RationalFunction::one();
        let num = QSeries::new(vec![one.clone(), one.neg()], 2);
        let den = QSeries::new(vec![one.clone(), u.neg()], 2);
        let f = num.div(&den).unwrap();
        assert_eq!(f.coeff(1), u.sub(&one));
        assert_eq!(f.coeff(2), u.mul(&u).sub(&u));
    }

    #[test]
    fn exact_constants_adapt_to_order() {
        let s = QSeries::new(vec![r(0), r(1)], 3);
        let one = <QSeries<Rational> as Scalar>::one();
        assert_eq!(Scalar::add(&s, &one).order(), 3);
        assert_eq!(s.substitute_power(2).coefficients(), vec![r(0), r(0), r(1), r(0)]);
    }
}

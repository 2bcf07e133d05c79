//! Truncated Laurent series in a formal parameter `ε`.

use std::fmt;

use num_rational::BigRational;

use super::scalar::Scalar;
use crate::error::{Error, Result};

const EXACT_PREC: i64 = i64::MAX / 4;

/// `Σ_{k=val}^{prec-1} c_k ε^k + O(ε^prec)`.
#[derive(Clone, Debug)]
pub struct LaurentJet<F> {
    val: i64,
    coeffs: Vec<F>,
    prec: i64,
}

impl<F: Scalar> LaurentJet<F> {
    pub fn new(val: i64, coeffs: Vec<F>, prec: i64) -> Self {
        let mut j = LaurentJet { val, coeffs, prec };
        j.normalize();
        j
    }

    pub fn constant(c: F, prec: i64) -> Self {
        LaurentJet::new(0, vec![c], prec)
    }

    /// `exp(ε w) = Σ w^k ε^k / k!` to absolute precision `prec`.
    pub fn exp_linear(w: &F, prec: i64) -> Result<Self> {
        let mut c = Vec::new();
        let mut term = F::one();
        for k in 0..prec.max(0) {
            c.push(term.clone());
            term = term.mul(w).div(&F::from_i64(k + 1))?;
        }
        Ok(LaurentJet::new(0, c, prec))
    }

    pub fn precision(&self) -> i64 {
        self.prec
    }

    pub fn valuation(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.val)
        }
    }

    pub fn coeff(&self, k: i64) -> F {
        if k < self.val {
            return F::zero();
        }
        self.coeffs.get((k - self.val) as usize).cloned().unwrap_or_else(F::zero)
    }

    /// Multiplies by `ε^k`.
    pub fn shift(&self, k: i64) -> Self {
        let prec = if self.prec >= EXACT_PREC { self.prec } else { self.prec + k };
        LaurentJet::new(self.val + k, self.coeffs.clone(), prec)
    }

    fn normalize(&mut self) {
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        self.coeffs.drain(..lead);
        self.val += lead as i64;
        if self.prec < EXACT_PREC {
            let keep = (self.prec - self.val).max(0) as usize;
            self.coeffs.truncate(keep);
        }
        while self.coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            self.coeffs.pop();
        }
        if self.coeffs.is_empty() {
            self.val = 0;
        }
    }

    fn top(&self) -> i64 {
        self.val + self.coeffs.len() as i64
    }
}

impl<F: Scalar> PartialEq for LaurentJet<F> {
    /// Equal up to the smaller precision.
    fn eq(&self, other: &Self) -> bool {
        let p = self.prec.min(other.prec);
        let lo = self.val.min(other.val);
        let hi = self.top().max(other.top()).min(p);
        (lo..hi).all(|k| self.coeff(k) == other.coeff(k))
    }
}

impl<F: Scalar> fmt::Display for LaurentJet<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                parts.push(format!("({c})*eps^{}", self.val + i as i64));
            }
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        if self.prec < EXACT_PREC {
            parts.push(format!("O(eps^{})", self.prec));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl<F: Scalar> Scalar for LaurentJet<F> {
    fn zero() -> Self {
        LaurentJet::new(0, Vec::new(), EXACT_PREC)
    }
    fn one() -> Self {
        LaurentJet::new(0, vec![F::one()], EXACT_PREC)
    }
    fn from_i64(n: i64) -> Self {
        LaurentJet::new(0, vec![F::from_i64(n)], EXACT_PREC)
    }
    fn from_rational(r: &BigRational) -> Self {
        LaurentJet::new(0, vec![F::from_rational(r)], EXACT_PREC)
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        let prec = self.prec.min(other.prec);
        let lo = self.val.min(other.val);
        let hi = self.top().max(other.top()).min(prec);
        let c = (lo..hi.max(lo)).map(|k| self.coeff(k).add(&other.coeff(k))).collect();
        LaurentJet::new(lo, c, prec)
    }
    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
    fn mul(&self, other: &Self) -> Self {
        let va = self.valuation().unwrap_or(self.prec.min(EXACT_PREC));
        let vb = other.valuation().unwrap_or(other.prec.min(EXACT_PREC));
        let pa = if self.prec >= EXACT_PREC { EXACT_PREC } else { self.prec + vb };
        let pb = if other.prec >= EXACT_PREC { EXACT_PREC } else { other.prec + va };
        let prec = pa.min(pb);
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return LaurentJet::new(0, Vec::new(), prec);
        }
        let val = self.val + other.val;
        let len = ((self.coeffs.len() + other.coeffs.len() - 1) as i64).min((prec - val).max(0)) as usize;
        let mut c = vec![F::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j < len {
                    c[i + j] = c[i + j].add(&a.mul(b));
                }
            }
        }
        LaurentJet::new(val, c, prec)
    }
    fn neg(&self) -> Self {
        LaurentJet::new(self.val, self.coeffs.iter().map(|c| c.neg()).collect(), self.prec)
    }
    fn inv(&self) -> Result<Self> {
        if self.coeffs.is_empty() {
            return Err(Error::DivisionByZero);
        }
        let rel = if self.prec >= EXACT_PREC { None } else { Some(self.prec - self.val) };
        let n = match rel {
            Some(r) => r.max(0) as usize,
            None if self.coeffs.len() == 1 => 1,
            None => return Err(Error::Precondition("inverse of an exact jet needs a precision".into())),
        };
        let a0 = self.coeffs[0].inv()?;
        let mut b: Vec<F> = vec![a0.clone()];
        for k in 1..n {
            let mut s = F::zero();
            for i in 1..=k {
                if let Some(a) = self.coeffs.get(i) {
                    s = s.add(&a.mul(&b[k - i]));
                }
            }
            b.push(s.neg().mul(&a0));
        }
        let prec = match rel {
            Some(r) => -self.val + r,
            None => EXACT_PREC,
        };
        Ok(LaurentJet::new(-self.val, b, prec))
    }
}

#[cfg(test)]
mod tests {
    use super::super::rational::Rational;
    use super::*;

    #[test]
    fn one_minus_exp_inverts() {
        let w = Rational::new(3, 2);
        let e = LaurentJet::exp_linear(&w, 6).unwrap();
        let d = LaurentJet::<Rational>::one().sub(&e);
        assert_eq!(d.valuation(), Some(1));
        let inv = d.inv().unwrap();
        assert_eq!(inv.valuation(), Some(-1));
        // 1/(1 - e^{εw}) = -1/(εw) + 1/2 - εw/12 + …
        assert_eq!(inv.coeff(-1), Rational::new(-2, 3));
        assert_eq!(inv.coeff(0), Rational::new(1, 2));
        assert_eq!(inv.coeff(1), Rational::new(-1, 8));
        assert_eq!(d.mul(&inv), LaurentJet::one());
    }

    #[test]
    fn exp_is_a_homomorphism() {
        let a = LaurentJet::exp_linear(&Rational::new(1, 3), 5).unwrap();
        let b = LaurentJet::exp_linear(&Rational::new(-5, 7), 5).unwrap();
        let c = LaurentJet::exp_linear(&Rational::new(1, 3).add(&Rational::new(-5, 7)), 5).unwrap();
        assert_eq!(a.mul(&b), c);
    }
}

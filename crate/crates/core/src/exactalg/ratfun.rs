//! Rational functions in canonical form.
//!
//! Canonical form: the denominator is a polynomial with no monomial factor
//! and a positive leading coefficient, the numerator is a Laurent
//! polynomial, and the two share no common factor over the integers.
//! Equal functions therefore have identical representations.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::{Monomial, Poly};
use super::scalar::Scalar;
use super::vars::Var;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    pub fn new(num: Poly, den: Poly) -> Result<RationalFunction> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    pub fn from_poly(p: Poly) -> RationalFunction {
        RationalFunction { num: p, den: Poly::one() }
    }

    pub fn var(name: &str) -> RationalFunction {
        Self::from_poly(Poly::var(Var::named(name)))
    }

    /// `name^e`; negative exponents allowed.
    pub fn var_pow(name: &str, e: i32) -> RationalFunction {
        Self::from_poly(Poly::monomial(Monomial::var_pow(Var::named(name), e), BigInt::one()))
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        Some(BigRational::new(n, d))
    }

    fn normalize(num: Poly, den: Poly) -> RationalFunction {
        if num.is_zero() {
            return RationalFunction { num, den: Poly::one() };
        }
        let shift = den.min_exponents();
        let inv_shift = Monomial::one().div(&shift);
        let mut num = num.mul_term(&inv_shift, &BigInt::one());
        let mut den = den.mul_term(&inv_shift, &BigInt::one());
        if let Some(d) = den.as_constant() {
            let g = num.content().gcd(&d);
            let mut g = if d.is_negative() { -g } else { g };
            if g.is_zero() {
                g = BigInt::one();
            }
            return RationalFunction {
                num: num.exact_div(&Poly::constant(g.clone())).expect("content divides"),
                den: Poly::constant(d / g),
            };
        }
        let g = Poly::gcd_unit_monomial(&num, &den);
        if !g.is_one() {
            num = num.exact_div(&g).expect("gcd divides numerator");
            den = den.exact_div(&g).expect("gcd divides denominator");
        }
        if den.leading().map(|(_, c)| c.is_negative()).unwrap_or(false) {
            num = num.neg();
            den = den.neg();
        }
        RationalFunction { num, den }
    }

    /// Evaluates at a point of any scalar ring, reporting poles.
    pub fn eval_with<F: Scalar>(&self, value: &mut dyn FnMut(Var) -> F) -> Result<F> {
        let d = self.den.eval(value)?;
        if d.is_zero() {
            return Err(Error::Pole(format!("denominator {} vanishes", self.den.render())));
        }
        let n = self.num.eval(value).map_err(|e| match e {
            Error::DivisionByZero => Error::Pole("a variable with a negative power is zero".into()),
            e => e,
        })?;
        n.div(&d)
    }

    /// Substitutes `x -> x^-1` for each listed variable.
    pub fn invert_vars(&self, vars: &[&str]) -> RationalFunction {
        let vs: Vec<Var> = vars.iter().map(|n| Var::named(n)).collect();
        let flip = |p: &Poly| {
            Poly::from_terms(p.terms().iter().map(|(m, c)| {
                let e = m.exponents().iter().enumerate().map(|(i, &e)| if vs.iter().any(|v| v.index() == i) { -e } else { e }).collect();
                (Monomial::from_exponents(e), c.clone())
            }))
        };
        Self::normalize(flip(&self.num), flip(&self.den))
    }

    /// Canonical string: `num` when the denominator is one, `a/b` for
    /// constants, else `(num)/(den)`.
    pub fn render(&self) -> String {
        if let Some(r) = self.as_rational().filter(|_| !self.den.is_one()) {
            r.to_string()
        } else if self.den.is_one() {
            self.num.render()
        } else {
            format!("({})/({})", self.num.render(), self.den.render())
        }
    }
}

impl Scalar for RationalFunction {
    fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }
    fn one() -> Self {
        Self::from_poly(Poly::one())
    }
    fn from_i64(n: i64) -> Self {
        Self::from_poly(Poly::constant(n.into()))
    }
    fn from_rational(r: &BigRational) -> Self {
        RationalFunction { num: Poly::constant(r.numer().clone()), den: Poly::constant(r.denom().clone()) }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }
    fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return Self::normalize(self.num.add(&other.num), self.den.clone());
        }
        let g = Poly::gcd_unit_monomial(&self.den, &other.den);
        let a = other.den.exact_div(&g).expect("gcd divides");
        let b = self.den.exact_div(&g).expect("gcd divides");
        Self::normalize(self.num.mul(&a).add(&other.num.mul(&b)), self.den.mul(&a))
    }
    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return Self::from_poly(self.num.mul(&other.num));
        }
        let g1 = Poly::gcd_unit_monomial(&self.num, &other.den);
        let g2 = Poly::gcd_unit_monomial(&other.num, &self.den);
        let n1 = self.num.exact_div(&g1).expect("gcd divides");
        let d2 = other.den.exact_div(&g1).expect("gcd divides");
        let n2 = other.num.exact_div(&g2).expect("gcd divides");
        let d1 = self.den.exact_div(&g2).expect("gcd divides");
        Self::normalize(n1.mul(&n2), d1.mul(&d2))
    }
    fn neg(&self) -> Self {
        RationalFunction { num: self.num.neg(), den: self.den.clone() }
    }
    fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(self.den.clone(), self.num.clone()))
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// Evaluates a rational function at rational values for named variables.
pub fn ratfun_eval(
    f: &RationalFunction,
    point: &std::collections::HashMap<String, super::rational::Rational>,
) -> Result<super::rational::Rational> {
    let mut missing = None;
    let out = f.eval_with(&mut |v: Var| match point.get(&v.name()) {
        Some(x) => x.clone(),
        None => {
            missing = Some(v.name());
            super::rational::Rational::zero()
        }
    });
    if let Some(name) = missing {
        return Err(Error::UnknownName(name));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::rational::Rational;
    use super::*;
    use std::collections::HashMap;

    fn rf(name: &str) -> RationalFunction {
        RationalFunction::var(name)
    }

    fn one() -> RationalFunction {
        RationalFunction::one()
    }

    #[test]
    fn cancels_common_factors() {
        let q = rf("q");
        let f = one().sub(&q.mul(&q)).div(&one().sub(&q)).unwrap();
        assert_eq!(f, one().add(&q));
        let mut pt = HashMap::new();
        pt.insert("q".to_string(), Rational::from_i64(3));
        assert_eq!(ratfun_eval(&f, &pt).unwrap(), Rational::from_i64(4));
    }

    #[test]
    fn evaluates_two_variables() {
        let (q, t) = (rf("q"), rf("t"));
        let f = one().sub(&q.mul(&t)).div(&one().sub(&q).mul(&one().sub(&t))).unwrap();
        let mut pt = HashMap::new();
        pt.insert("q".to_string(), Rational::from_i64(2));
        pt.insert("t".to_string(), Rational::from_i64(3));
        assert_eq!(ratfun_eval(&f, &pt).unwrap(), Rational::new(-5, 2));
    }

    #[test]
    fn reports_poles() {
        let q = rf("q");
        let f = one().div(&one().sub(&q)).unwrap();
        let mut pt = HashMap::new();
        pt.insert("q".to_string(), Rational::from_i64(1));
        assert!(matches!(ratfun_eval(&f, &pt), Err(Error::Pole(_))));
    }

    #[test]
    fn canonical_form_is_unique() {
        let (q, t) = (rf("q"), rf("t"));
        let tinv = RationalFunction::var_pow("t", -1);
        let a = one().sub(&q).div(&one().sub(&tinv)).unwrap();
        let b = t.mul(&one().sub(&q)).div(&t.sub(&one())).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.render(), b.render());
        assert_eq!(a.denom().leading().unwrap().1, BigInt::from(1));
        let half = RationalFunction::from_ratio(1, 2).unwrap();
        assert_eq!(half.add(&half), one());
        assert_eq!(half.render(), "1/2");
        assert_eq!(half.neg().render(), "-1/2");
    }

    #[test]
    fn inversion_of_variables() {
        let (q, t) = (rf("q"), rf("t"));
        let f = one().sub(&q).div(&one().sub(&t)).unwrap();
        let g = f.invert_vars(&["q", "t"]);
        let expect = one().sub(&q.inv().unwrap()).div(&one().sub(&t.inv().unwrap())).unwrap();
        assert_eq!(g, expect);
    }
}

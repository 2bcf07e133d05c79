//! Closed-form expressions in `Q` and named parameters.

use std::fmt;
use std::ops;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::qseries::QSeries;
use super::scalar::Scalar;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Debug)]
pub enum Expr {
    Num(BigRational),
    Var(String),
    /// The series variable.
    Q,
    Add(Vec<Expr>),
    Mul(Vec<Expr>),
    Neg(Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

impl Expr {
    pub fn int(n: i64) -> Expr {
        Expr::Num(BigRational::from_integer(n.into()))
    }

    pub fn ratio(n: i64, d: i64) -> Expr {
        Expr::Num(BigRational::new(n.into(), d.into()))
    }

    pub fn var(name: &str) -> Expr {
        if name == "Q" {
            Expr::Q
        } else {
            Expr::Var(name.to_string())
        }
    }

    pub fn pow(self, e: i64) -> Expr {
        Expr::Pow(Box::new(self), e)
    }

    /// `1 - self`.
    pub fn one_minus(self) -> Expr {
        Expr::int(1) - self
    }

    pub fn contains_q(&self) -> bool {
        match self {
            Expr::Q => true,
            Expr::Num(_) | Expr::Var(_) => false,
            Expr::Add(v) | Expr::Mul(v) => v.iter().any(Expr::contains_q),
            Expr::Neg(a) | Expr::Pow(a, _) => a.contains_q(),
            Expr::Div(a, b) => a.contains_q() || b.contains_q(),
        }
    }

    /// Expands into a series through order `order`; `lookup` binds names.
    pub fn eval_series<F: Scalar>(&self, lookup: &dyn Fn(&str) -> Result<F>, order: usize) -> Result<QSeries<F>> {
        Ok(match self {
            Expr::Num(r) => QSeries::constant(F::from_rational(r), order),
            Expr::Var(n) => QSeries::constant(lookup(n)?, order),
            Expr::Q => QSeries::monomial(F::one(), 1, order),
            Expr::Add(v) => {
                let mut acc = QSeries::zero(order);
                for x in v {
                    acc = acc.add(&x.eval_series(lookup, order)?);
                }
                acc
            }
            Expr::Mul(v) => {
                let mut acc = QSeries::one(order);
                for x in v {
                    acc = acc.mul(&x.eval_series(lookup, order)?);
                }
                acc
            }
            Expr::Neg(a) => a.eval_series(lookup, order)?.neg(),
            Expr::Div(a, b) => a.eval_series(lookup, order)?.div(&b.eval_series(lookup, order)?)?,
            Expr::Pow(a, e) => a.eval_series(lookup, order)?.pow(*e)?,
        })
    }

    /// Evaluates an expression free of `Q`.
    pub fn eval_scalar<F: Scalar>(&self, lookup: &dyn Fn(&str) -> Result<F>) -> Result<F> {
        Ok(match self {
            Expr::Num(r) => F::from_rational(r),
            Expr::Var(n) => lookup(n)?,
            Expr::Q => return Err(Error::Precondition("the series variable has no scalar value".into())),
            Expr::Add(v) => {
                let mut acc = F::zero();
                for x in v {
                    acc = acc.add(&x.eval_scalar(lookup)?);
                }
                acc
            }
            Expr::Mul(v) => {
                let mut acc = F::one();
                for x in v {
                    acc = acc.mul(&x.eval_scalar(lookup)?);
                }
                acc
            }
            Expr::Neg(a) => a.eval_scalar(lookup)?.neg(),
            Expr::Div(a, b) => a.eval_scalar(lookup)?.div(&b.eval_scalar(lookup)?)?,
            Expr::Pow(a, e) => a.eval_scalar(lookup)?.pow(*e)?,
        })
    }

    pub fn parse(src: &str) -> Result<Expr> {
        let mut p = Parser { toks: tokenize(src)?, pos: 0 };
        let e = p.sum()?;
        if p.pos != p.toks.len() {
            return Err(Error::Parse(format!("trailing input in {src:?}")));
        }
        Ok(e)
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(_) => 1,
            Expr::Neg(_) => 2,
            Expr::Mul(_) | Expr::Div(..) => 3,
            Expr::Num(r) if !r.is_integer() || r.is_negative() => 3,
            Expr::Pow(..) => 4,
            _ => 5,
        }
    }
}

/// Expands a closed form to a series; the name used by the public interface.
pub fn expand_closed_form<F: Scalar>(expr: &Expr, lookup: &dyn Fn(&str) -> Result<F>, order: usize) -> Result<QSeries<F>> {
    expr.eval_series(lookup, order)
}

fn wrap(e: &Expr, min: u8) -> String {
    if e.precedence() < min {
        format!("({e})")
    } else {
        e.to_string()
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Expr::Var(n) => write!(f, "{n}"),
            Expr::Q => write!(f, "Q"),
            Expr::Add(v) => {
                for (i, x) in v.iter().enumerate() {
                    match (i, x) {
                        (0, _) => write!(f, "{}", wrap(x, 2))?,
                        (_, Expr::Neg(a)) => write!(f, " - {}", wrap(a, 3))?,
                        _ => write!(f, " + {}", wrap(x, 2))?,
                    }
                }
                Ok(())
            }
            Expr::Mul(v) => {
                let parts: Vec<String> = v.iter().map(|x| wrap(x, 4)).collect();
                write!(f, "{}", parts.join("*"))
            }
            Expr::Neg(a) => write!(f, "-{}", wrap(a, 3)),
            Expr::Div(a, b) => write!(f, "{}/{}", wrap(a, 3), wrap(b, 4)),
            Expr::Pow(a, e) => write!(f, "{}^{}", wrap(a, 5), e),
        }
    }
}

impl ops::Add for Expr {
    type Output = Expr;
    fn add(self, rhs: Expr) -> Expr {
        match self {
            Expr::Add(mut v) => {
                v.push(rhs);
                Expr::Add(v)
            }
            e => Expr::Add(vec![e, rhs]),
        }
    }
}

impl ops::Sub for Expr {
    type Output = Expr;
    fn sub(self, rhs: Expr) -> Expr {
        self + Expr::Neg(Box::new(rhs))
    }
}

impl ops::Mul for Expr {
    type Output = Expr;
    fn mul(self, rhs: Expr) -> Expr {
        match self {
            Expr::Mul(mut v) => {
                v.push(rhs);
                Expr::Mul(v)
            }
            e => Expr::Mul(vec![e, rhs]),
        }
    }
}

impl ops::Div for Expr {
    type Output = Expr;
    fn div(self, rhs: Expr) -> Expr {
        Expr::Div(Box::new(self), Box::new(rhs))
    }
}

impl ops::Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::Neg(Box::new(self))
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

fn tokenize(src: &str) -> Result<Vec<Tok>> {
    let cs: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = cs[start..i].iter().collect();
            out.push(Tok::Num(s.parse().expect("digits")));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < cs.len() && (cs[i].is_ascii_alphanumeric() || cs[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(cs[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Sym(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek_sym(&self) -> Option<char> {
        match self.toks.get(self.pos) {
            Some(Tok::Sym(c)) => Some(*c),
            _ => None,
        }
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut terms = vec![self.product()?];
        while let Some(c @ ('+' | '-')) = self.peek_sym() {
            self.pos += 1;
            let t = self.product()?;
            terms.push(if c == '-' { -t } else { t });
        }
        Ok(if terms.len() == 1 { terms.pop().unwrap() } else { Expr::Add(terms) })
    }

    fn product(&mut self) -> Result<Expr> {
        let mut acc = self.unary()?;
        while let Some(c @ ('*' | '/')) = self.peek_sym() {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = if c == '*' { acc * rhs } else { acc / rhs };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.peek_sym() == Some('-') {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek_sym() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        let paren = self.eat('(');
        let neg = self.eat('-');
        let e = match self.toks.get(self.pos) {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                let e: i64 = n.try_into().map_err(|_| Error::Parse("exponent too large".into()))?;
                if neg {
                    -e
                } else {
                    e
                }
            }
            _ => return Err(Error::Parse("expected an integer exponent".into())),
        };
        if paren && !self.eat(')') {
            return Err(Error::Parse("unclosed exponent".into()));
        }
        Ok(base.pow(e))
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek_sym() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Expr::Num(BigRational::from_integer(n)))
            }
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                Ok(Expr::var(&s))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.sum()?;
                if self.peek_sym() != Some(')') {
                    return Err(Error::Parse("missing ')'".into()));
                }
                self.pos += 1;
                Ok(e)
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

impl From<i64> for Expr {
    fn from(n: i64) -> Expr {
        Expr::int(n)
    }
}

impl Expr {
    pub fn is_zero_literal(&self) -> bool {
        matches!(self, Expr::Num(r) if r.is_zero())
    }

    pub fn is_one_literal(&self) -> bool {
        matches!(self, Expr::Num(r) if r.is_one())
    }
}

#[cfg(test)]
mod tests {
    use super::super::ratfun::RationalFunction;
    use super::*;

    fn sym(name: &str) -> Result<RationalFunction> {
        Ok(RationalFunction::var(name))
    }

    #[test]
    fn expands_geometric_quotient() {
        let e = Expr::parse("(1 - Q)/(1 - u*Q)").unwrap();
        let s = e.eval_series(&sym, 2).unwrap();
        let u = RationalFunction::var("u");
        assert_eq!(s.coeff(0), RationalFunction::one());
        assert_eq!(s.coeff(1), u.sub(&RationalFunction::one()));
        assert_eq!(s.coeff(2), u.mul(&u).sub(&u));
    }

    #[test]
    fn display_reparses_to_same_value() {
        let e = Expr::parse("t^-1/(1 - t^-1)*(1 - Q*(1-u)*(1-v)/(1-u*Q)) - 2^3").unwrap();
        let again = Expr::parse(&e.to_string()).unwrap();
        let a = e.eval_series(&sym, 3).unwrap();
        let b = again.eval_series(&sym, 3).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_garbage() {
        assert!(Expr::parse("1 +").is_err());
        assert!(Expr::parse("q^x").is_err());
        assert!(Expr::parse("q $ t").is_err());
    }
}

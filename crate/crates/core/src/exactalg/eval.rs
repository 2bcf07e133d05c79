//! Bindings of named parameters and the two verification modes.
//!
//! An identity is checked either symbolically, over rational functions, or
//! by evaluation at seeded random rational points (a nonzero rational
//! function vanishes at a random point with negligible probability).

use std::collections::BTreeMap;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;
use serde::Serialize;

use super::qseries::QSeries;
use super::rational::Rational;
use super::ratfun::RationalFunction;
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Bound on numerators and denominators of sampled points.
pub const SAMPLE_BOUND: i64 = 1_000_000;
/// Minimum number of random points in evaluate mode.
pub const MIN_TRIALS: usize = 3;
const MAX_RESAMPLES: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum Mode {
    Symbolic,
    Evaluate { trials: usize, seed: u64 },
}

impl Mode {
    pub fn evaluate(seed: u64) -> Mode {
        Mode::Evaluate { trials: MIN_TRIALS, seed }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Mode::Symbolic => "symbolic",
            Mode::Evaluate { .. } => "evaluate",
        }
    }
}

/// Values of named parameters in a scalar ring.
#[derive(Clone, Debug)]
pub struct Env<F> {
    values: BTreeMap<String, F>,
}

impl<F: Scalar> Default for Env<F> {
    fn default() -> Self {
        Env { values: BTreeMap::new() }
    }
}

impl<F: Scalar> Env<F> {
    pub fn new() -> Env<F> {
        Env::default()
    }

    pub fn with(mut self, name: &str, value: F) -> Env<F> {
        self.values.insert(name.to_string(), value);
        self
    }

    pub fn set(&mut self, name: &str, value: F) {
        self.values.insert(name.to_string(), value);
    }

    pub fn get(&self, name: &str) -> Result<F> {
        self.values.get(name).cloned().ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    pub fn names(&self) -> impl Iterator<Item = &String> {
        self.values.keys()
    }

    pub fn lookup(&self) -> impl Fn(&str) -> Result<F> + '_ {
        move |n| self.get(n)
    }

    pub fn map<G: Scalar>(&self, f: impl Fn(&F) -> G) -> Env<G> {
        Env { values: self.values.iter().map(|(k, v)| (k.clone(), f(v))).collect() }
    }

    pub fn describe(&self) -> BTreeMap<String, String> {
        self.values.iter().map(|(k, v)| (k.clone(), v.to_string())).collect()
    }
}

impl Env<RationalFunction> {
    /// Every listed name bound to its own indeterminate.
    pub fn symbolic(names: &[&str]) -> Env<RationalFunction> {
        let mut e = Env::new();
        for n in names {
            e.set(n, RationalFunction::var(n));
        }
        e
    }
}

impl Env<Rational> {
    pub fn random(names: &[&str], rng: &mut ChaCha8Rng) -> Env<Rational> {
        let mut e = Env::new();
        for n in names {
            e.set(n, random_rational(rng));
        }
        e
    }
}

/// Nonzero rational with numerator and denominator bounded by `SAMPLE_BOUND`.
pub fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let num = rng.gen_range(-SAMPLE_BOUND..=SAMPLE_BOUND);
        let den = rng.gen_range(1..=SAMPLE_BOUND);
        if num != 0 && num != den && num != -den {
            return Rational::new(num, den);
        }
    }
}

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// One labelled pair of values that should agree.
pub type Comparison<F> = (String, F, F);

/// Flattens two series into coefficientwise comparisons.
pub fn series_pairs<F: Scalar>(lhs: &QSeries<F>, rhs: &QSeries<F>) -> Vec<Comparison<F>> {
    let order = lhs.order().min(rhs.order());
    (0..=order).map(|k| (format!("Q^{k}"), lhs.coeff(k), rhs.coeff(k))).collect()
}

/// An identity that can be instantiated over any scalar ring.
pub trait Identity {
    fn variables(&self) -> Vec<&'static str>;
    fn comparisons<F: Scalar>(&self, env: &Env<F>) -> Result<Vec<Comparison<F>>>;
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Discrepancy {
    pub label: String,
    pub lhs: String,
    pub rhs: String,
    pub point: Option<BTreeMap<String, String>>,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Verdict {
    pub passed: bool,
    pub mode: Mode,
    pub points: usize,
    pub compared: usize,
    pub discrepancy: Option<Discrepancy>,
}

fn first_mismatch<F: Scalar>(pairs: &[Comparison<F>]) -> Option<(String, String, String)> {
    pairs.iter().find(|(_, a, b)| a != b).map(|(l, a, b)| (l.clone(), a.to_string(), b.to_string()))
}

/// Runs an identity in the requested mode.
pub fn check<I: Identity>(id: &I, mode: &Mode) -> Result<Verdict> {
    match mode {
        Mode::Symbolic => {
            let env = Env::symbolic(&id.variables());
            let pairs = id.comparisons(&env)?;
            let bad = first_mismatch(&pairs);
            Ok(Verdict {
                passed: bad.is_none(),
                mode: mode.clone(),
                points: 0,
                compared: pairs.len(),
                discrepancy: bad.map(|(label, lhs, rhs)| Discrepancy { label, lhs, rhs, point: None }),
            })
        }
        Mode::Evaluate { trials, seed } => {
            let trials = (*trials).max(MIN_TRIALS);
            let mut rng = rng_from_seed(*seed);
            let mut compared = 0;
            for _ in 0..trials {
                let mut attempt = 0;
                let (env, pairs) = loop {
                    let env = Env::random(&id.variables(), &mut rng);
                    match id.comparisons(&env) {
                        Ok(p) => break (env, p),
                        Err(Error::DivisionByZero | Error::Pole(_)) if attempt < MAX_RESAMPLES => attempt += 1,
                        Err(e) => return Err(e),
                    }
                };
                compared += pairs.len();
                if let Some((label, lhs, rhs)) = first_mismatch(&pairs) {
                    return Ok(Verdict {
                        passed: false,
                        mode: mode.clone(),
                        points: trials,
                        compared,
                        discrepancy: Some(Discrepancy { label, lhs, rhs, point: Some(env.describe()) }),
                    });
                }
            }
            Ok(Verdict { passed: true, mode: mode.clone(), points: trials, compared, discrepancy: None })
        }
    }
}

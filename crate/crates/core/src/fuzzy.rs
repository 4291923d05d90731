//! Fuzzy conjunction, kept as a baseline.
//!
//! Every t-norm is bounded above by the minimum of its arguments, so a
//! fuzzy valuation can never rate an individual higher on a conjunction
//! than on either conjunct. [`osherson_smith_witness`] reports exactly that
//! bound for a given assertion.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

const WITNESS_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TNorm {
    Min,
    Product,
    Lukasiewicz,
}

impl TNorm {
    pub const ALL: [TNorm; 3] = [TNorm::Min, TNorm::Product, TNorm::Lukasiewicz];

    pub fn name(self) -> &'static str {
        match self {
            TNorm::Min => "min",
            TNorm::Product => "product",
            TNorm::Lukasiewicz => "lukasiewicz",
        }
    }
}

impl fmt::Display for TNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TNorm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "min" => Ok(TNorm::Min),
            "product" => Ok(TNorm::Product),
            "lukasiewicz" => Ok(TNorm::Lukasiewicz),
            other => Err(Error::InvalidArgument(format!("unknown t-norm `{other}`"))),
        }
    }
}

fn check_unit(v: f64) -> Result<f64> {
    if (0.0..=1.0).contains(&v) {
        Ok(v)
    } else {
        Err(Error::OutOfUnitRange(v))
    }
}

pub fn t_norm_and(a: f64, b: f64, norm: TNorm) -> Result<f64> {
    let (a, b) = (check_unit(a)?, check_unit(b)?);
    Ok(match norm {
        TNorm::Min => a.min(b),
        TNorm::Product => a * b,
        // a + b - 1 rounds above min(a, b) for inputs like (0.3, 1.0)
        TNorm::Lukasiewicz => (a + b - 1.0).max(0.0).min(a.min(b)),
    })
}

/// A graded fact `predicate(individual) = value`.
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzyAssertion {
    pub predicate: String,
    pub individual: String,
    pub value: f64,
}

impl FuzzyAssertion {
    pub fn new(predicate: impl Into<String>, individual: impl Into<String>, value: f64) -> Result<Self> {
        Ok(FuzzyAssertion {
            predicate: predicate.into(),
            individual: individual.into(),
            value: check_unit(value)?,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum FuzzyFormula {
    Atom { predicate: String, individual: String },
    And(Box<FuzzyFormula>, Box<FuzzyFormula>),
}

impl FuzzyFormula {
    pub fn atom(predicate: impl Into<String>, individual: impl Into<String>) -> Self {
        FuzzyFormula::Atom {
            predicate: predicate.into(),
            individual: individual.into(),
        }
    }

    pub fn and(left: FuzzyFormula, right: FuzzyFormula) -> Self {
        FuzzyFormula::And(Box::new(left), Box::new(right))
    }

    /// Left-nested conjunction of `predicates` applied to one individual.
    pub fn conjunction<S: AsRef<str>>(predicates: &[S], individual: &str) -> Option<Self> {
        let mut iter = predicates.iter();
        let first = FuzzyFormula::atom(iter.next()?.as_ref(), individual);
        Some(iter.fold(first, |acc, p| FuzzyFormula::and(acc, FuzzyFormula::atom(p.as_ref(), individual))))
    }
}

/// Valuation lookup keyed by `(predicate, individual)`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Valuation(BTreeMap<(String, String), f64>);

impl Valuation {
    pub fn new(assertions: &[FuzzyAssertion]) -> Self {
        Valuation(
            assertions
                .iter()
                .map(|a| ((a.predicate.clone(), a.individual.clone()), a.value))
                .collect(),
        )
    }

    pub fn get(&self, predicate: &str, individual: &str) -> Option<f64> {
        self.0.get(&(predicate.to_string(), individual.to_string())).copied()
    }
}

pub fn evaluate(formula: &FuzzyFormula, valuation: &Valuation, norm: TNorm) -> Result<f64> {
    match formula {
        FuzzyFormula::Atom { predicate, individual } => {
            valuation
                .get(predicate, individual)
                .ok_or_else(|| Error::UnassignedAtom {
                    predicate: predicate.clone(),
                    individual: individual.clone(),
                })
        }
        FuzzyFormula::And(l, r) => {
            t_norm_and(evaluate(l, valuation, norm)?, evaluate(r, valuation, norm)?, norm)
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WitnessReport {
    /// The asserted conjunction value exceeds what any t-norm can produce.
    pub violated: bool,
    /// Minimum over the conjunct values: the best any t-norm can do.
    pub bound: f64,
    /// Value each supported t-norm actually assigns to the conjunction.
    pub by_norm: Vec<(TNorm, f64)>,
}

/// Checks an asserted conjunction value against the values of its conjuncts.
pub fn osherson_smith_witness(
    asserted_conjunction: &FuzzyAssertion,
    conjunct_assertions: &[FuzzyAssertion],
) -> WitnessReport {
    let bound = conjunct_assertions
        .iter()
        .map(|a| a.value)
        .fold(1.0, f64::min);
    let by_norm = TNorm::ALL
        .iter()
        .map(|&norm| {
            let v = conjunct_assertions
                .iter()
                .try_fold(1.0, |acc, a| t_norm_and(acc, a.value, norm))
                .unwrap_or(f64::NAN);
            (norm, v)
        })
        .collect();
    WitnessReport {
        violated: asserted_conjunction.value > bound + WITNESS_TOL,
        bound,
        by_norm,
    }
}

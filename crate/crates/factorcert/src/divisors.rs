//! Positive divisors of a polynomial value together with their
//! admissible/unitary classification.
//!
//! For a divisor `d` of `|v|` with companion derivative value `w`:
//! `d` is admissible when `gcd(d, |v|/d)` divides `gcd(v, w)`, and unitary
//! when `gcd(d, |v|/d) = 1`. The unitary divisors are always a subset of
//! the admissible ones, and the two sets coincide when `gcd(v, w) = 1`.

use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{ArithError, FactorConfig, Factorization, Int, factor_integer};

/// Which subset of divisors a ratio computation draws from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DivisorClass {
    Admissible,
    Unitary,
    Any,
}

impl std::fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DivisorClass::Admissible => write!(f, "admissible"),
            DivisorClass::Unitary => write!(f, "unitary"),
            DivisorClass::Any => write!(f, "any"),
        }
    }
}

impl std::str::FromStr for DivisorClass {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "admissible" => Ok(DivisorClass::Admissible),
            "unitary" => Ok(DivisorClass::Unitary),
            "any" => Ok(DivisorClass::Any),
            other => Err(format!("unknown divisor class '{other}'")),
        }
    }
}

/// All positive divisors of `|value|`, classified.
#[derive(Debug, Clone)]
pub struct DivisorSet {
    value: Int,
    deriv_value: Int,
    factorization: Factorization,
    divisors: Vec<Int>,
    admissible: Vec<bool>,
    unitary: Vec<bool>,
    /// Lazy fixed-width view of `divisors`; `Some(None)` when any divisor
    /// exceeds u64.
    small: std::sync::OnceLock<Option<Vec<u64>>>,
}

impl DivisorSet {
    /// `|f(a)|`.
    pub fn value(&self) -> &Int {
        &self.value
    }

    /// `f'(a)`, as given.
    pub fn deriv_value(&self) -> &Int {
        &self.deriv_value
    }

    pub fn factorization(&self) -> &Factorization {
        &self.factorization
    }

    /// Sorted ascending; always contains 1 and `|value|`.
    pub fn all(&self) -> &[Int] {
        &self.divisors
    }

    /// The same divisors as u64, when they all fit.
    pub fn all_u64(&self) -> Option<&[u64]> {
        use num_traits::ToPrimitive;
        self.small
            .get_or_init(|| self.divisors.iter().map(|d| d.to_u64()).collect())
            .as_deref()
    }

    pub fn is_admissible(&self, idx: usize) -> bool {
        self.admissible[idx]
    }

    pub fn is_unitary(&self, idx: usize) -> bool {
        self.unitary[idx]
    }

    pub fn in_class(&self, idx: usize, class: DivisorClass) -> bool {
        match class {
            DivisorClass::Admissible => self.admissible[idx],
            DivisorClass::Unitary => self.unitary[idx],
            DivisorClass::Any => true,
        }
    }

    /// Divisors of the requested class, ascending.
    pub fn class_members(&self, class: DivisorClass) -> Vec<&Int> {
        self.divisors
            .iter()
            .enumerate()
            .filter(|(i, _)| self.in_class(*i, class))
            .map(|(_, d)| d)
            .collect()
    }

    pub fn admissible_divisors(&self) -> Vec<&Int> {
        self.class_members(DivisorClass::Admissible)
    }

    pub fn unitary_divisors(&self) -> Vec<&Int> {
        self.class_members(DivisorClass::Unitary)
    }

    /// `gcd(value, deriv_value) = 1`, the hypothesis under which the
    /// unitary machinery applies and the two classes coincide.
    pub fn coprime_with_derivative(&self) -> bool {
        use num_traits::One;
        self.value.gcd(&self.deriv_value).is_one()
    }
}

/// Classifies every positive divisor of `|fa|` against the derivative
/// value `dfa`. `fa` must be nonzero; factorization effort is bounded by
/// `cfg`.
pub fn divisor_set(fa: &Int, dfa: &Int, cfg: &FactorConfig) -> Result<DivisorSet, ArithError> {
    if fa.is_zero() {
        return Err(ArithError::ZeroInput);
    }
    let value = fa.abs();
    let factorization = factor_integer(&value, cfg)?;
    let divisors = factorization.divisors();
    let g = value.gcd(dfa);
    let mut admissible = Vec::with_capacity(divisors.len());
    let mut unitary = Vec::with_capacity(divisors.len());
    for d in &divisors {
        let co = &value / d;
        let inner = d.gcd(&co);
        use num_traits::One;
        unitary.push(inner.is_one());
        admissible.push((&g % &inner).is_zero());
    }
    let set = DivisorSet {
        value,
        deriv_value: dfa.clone(),
        factorization,
        divisors,
        admissible,
        unitary,
        small: std::sync::OnceLock::new(),
    };
    // When gcd(fa, dfa) = 1 the admissible set must reduce to the unitary
    // set exactly.
    debug_assert!(!set.coprime_with_derivative() || set.admissible == set.unitary);
    Ok(set)
}

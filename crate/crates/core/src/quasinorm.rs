//! Scalar and sequence core: `ℓᵖ` quasi-norms, support counting, Garling's
//! inequality and a witness that its continuous analogue fails.
//!
//! For `0 < p ≤ 1` the "norm" of a sequence is the inhomogeneous sum
//! `Σ|aₙ|ᵖ` (no `p`-th root). This is the quantity the support inequalities
//! for disc Banach spaces are phrased in, so every caller in this crate that
//! talks about `‖θ x‖` in the sub-unit regime means this sum.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::{Complex64, Error, Result};

/// Relative slack used when comparing the two sides of Garling's inequality.
pub const GARLING_REL_TOL: f64 = 1e-12;

/// Which interval an exponent falls in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// `0 < p < 1`
    SubUnit,
    /// `p = 1`
    One,
    /// `1 < p < ∞`
    Super,
    /// `p = ∞`
    Infinity,
}

/// An exponent `p ∈ (0, ∞]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PExponent {
    value: f64,
    regime: Regime,
}

impl PExponent {
    pub fn new(p: f64) -> Result<Self> {
        if p.is_nan() || p <= 0.0 {
            return Err(Error::Regime {
                p,
                expected: "(0, ∞]",
            });
        }
        let regime = if p.is_infinite() {
            Regime::Infinity
        } else if p < 1.0 {
            Regime::SubUnit
        } else if p == 1.0 {
            Regime::One
        } else {
            Regime::Super
        };
        Ok(Self { value: p, regime })
    }

    pub fn infinity() -> Self {
        Self {
            value: f64::INFINITY,
            regime: Regime::Infinity,
        }
    }

    /// Constructs an exponent and insists it lies in `(0, 1)`.
    pub fn sub_unit(p: f64) -> Result<Self> {
        let exp = Self::new(p).map_err(|_| Error::Regime {
            p,
            expected: "(0, 1)",
        })?;
        exp.require_sub_unit()?;
        Ok(exp)
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }

    pub fn is_sub_unit(&self) -> bool {
        self.regime == Regime::SubUnit
    }

    pub(crate) fn require_sub_unit(&self) -> Result<()> {
        if self.is_sub_unit() {
            Ok(())
        } else {
            Err(Error::Regime {
                p: self.value,
                expected: "(0, 1)",
            })
        }
    }

    /// Conjugate index `q` with `1/p + 1/q = 1`; `∞` for `p = 1`, `1` for `p = ∞`.
    pub fn conjugate(&self) -> Option<f64> {
        match self.regime {
            Regime::SubUnit => None,
            Regime::One => Some(f64::INFINITY),
            Regime::Infinity => Some(1.0),
            Regime::Super => Some(self.value / (self.value - 1.0)),
        }
    }
}

impl fmt::Display for PExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.value.is_infinite() {
            f.write_str("inf")
        } else {
            write!(f, "{}", self.value)
        }
    }
}

// JSON has no infinity literal, so `p = ∞` is written as the string "inf".
impl Serialize for PExponent {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        if self.value.is_infinite() {
            serializer.serialize_str("inf")
        } else {
            serializer.serialize_f64(self.value)
        }
    }
}

/// A finite, non-empty sequence of complex coefficients.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct CoeffSeq(Vec<Complex64>);

impl CoeffSeq {
    pub fn new(entries: Vec<Complex64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidInput("coefficient sequence is empty".into()));
        }
        if let Some(i) = entries.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "coefficient {i} is not finite: {}",
                entries[i]
            )));
        }
        Ok(Self(entries))
    }

    pub fn from_real(entries: &[f64]) -> Result<Self> {
        Self::new(entries.iter().map(|&r| Complex64::new(r, 0.0)).collect())
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<Complex64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// True when every entry is exactly zero.
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|z| z.re == 0.0 && z.im == 0.0)
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn l1(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).sum()
    }
}

/// `|z|ᵖ` computed as `exp(p·ln|z|)` with `z = 0` mapped to `0`.
pub fn abs_pow(z: Complex64, p: f64) -> f64 {
    let r = z.norm();
    if r == 0.0 {
        0.0
    } else if p == 1.0 {
        r
    } else {
        (p * r.ln()).exp()
    }
}

/// `ℓᵖ` size of a sequence.
///
/// * `0 < p ≤ 1`: the inhomogeneous sum `Σ|aₙ|ᵖ`;
/// * `1 < p < ∞`: the usual norm `(Σ|aₙ|ᵖ)^{1/p}`;
/// * `p = ∞`: `max|aₙ|`.
pub fn p_quasinorm(a: &CoeffSeq, p: PExponent) -> f64 {
    p_quasinorm_slice(a.as_slice(), p)
}

pub(crate) fn p_quasinorm_slice(a: &[Complex64], p: PExponent) -> f64 {
    match p.regime() {
        Regime::SubUnit | Regime::One => a.iter().map(|&z| abs_pow(z, p.value())).sum(),
        Regime::Infinity => a.iter().map(|z| z.norm()).fold(0.0, f64::max),
        Regime::Super => {
            let scale = a.iter().map(|z| z.norm()).fold(0.0, f64::max);
            if scale == 0.0 {
                return 0.0;
            }
            let sum: f64 = a.iter().map(|z| (z.norm() / scale).powf(p.value())).sum();
            scale * sum.powf(1.0 / p.value())
        }
    }
}

/// Rule turning floating-point coefficients into an exact support.
///
/// An entry `a` counts as nonzero iff `|a| > max(abs_floor, rel_tol · max|aₖ|)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SupportPolicy {
    pub rel_tol: f64,
    pub abs_floor: f64,
}

impl Default for SupportPolicy {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_floor: 1e-14,
        }
    }
}

impl SupportPolicy {
    pub fn new(rel_tol: f64, abs_floor: f64) -> Result<Self> {
        if !(rel_tol >= 0.0 && rel_tol.is_finite() && abs_floor >= 0.0 && abs_floor.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "support policy needs finite nonnegative tolerances, got rel_tol={rel_tol}, abs_floor={abs_floor}"
            )));
        }
        Ok(Self { rel_tol, abs_floor })
    }

    /// Counts exact nonzeros.
    pub fn exact() -> Self {
        Self {
            rel_tol: 0.0,
            abs_floor: 0.0,
        }
    }

    pub(crate) fn threshold(&self, a: &[Complex64]) -> f64 {
        let max = a.iter().map(|z| z.norm()).fold(0.0, f64::max);
        self.abs_floor.max(self.rel_tol * max)
    }

    /// Indices classified nonzero, ascending.
    pub fn support(&self, a: &[Complex64]) -> Vec<usize> {
        let t = self.threshold(a);
        a.iter()
            .enumerate()
            .filter(|(_, z)| z.norm() > t)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn count(&self, a: &[Complex64]) -> usize {
        let t = self.threshold(a);
        a.iter().filter(|z| z.norm() > t).count()
    }

    /// Copy of `a` with every entry classified zero replaced by an exact zero.
    pub fn clean(&self, a: &[Complex64]) -> Vec<Complex64> {
        let t = self.threshold(a);
        a.iter()
            .map(|&z| if z.norm() > t { z } else { Complex64::new(0.0, 0.0) })
            .collect()
    }
}

/// `‖a‖₀` under the given policy.
pub fn support_count(a: &CoeffSeq, policy: SupportPolicy) -> usize {
    policy.count(a.as_slice())
}

/// Both sides of Garling's inequality `(Σ|aₙ|)ᵖ ≤ Σ|aₙ|ᵖ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GarlingCheck {
    pub p: PExponent,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
    pub equality: bool,
}

pub fn garling_check(a: &CoeffSeq, p: PExponent) -> Result<GarlingCheck> {
    p.require_sub_unit()?;
    let lhs = abs_pow(Complex64::new(a.l1(), 0.0), p.value());
    let rhs = p_quasinorm(a, p);
    let tol = GARLING_REL_TOL * rhs.max(1.0);
    Ok(GarlingCheck {
        p,
        lhs,
        rhs,
        holds: lhs <= rhs + tol,
        equality: (lhs - rhs).abs() <= tol,
    })
}

/// A constant function `c` on a set of measure `m` in a finite measure space,
/// with `lhs = (∫|f|)ᵖ = (c·m)ᵖ` and `rhs = ∫|f|ᵖ = cᵖ·m`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ContinuousGarlingWitness {
    pub p: PExponent,
    pub measure_of_set: f64,
    pub constant_value: f64,
    pub lhs: f64,
    pub rhs: f64,
}

impl ContinuousGarlingWitness {
    /// Evaluates both sides for an arbitrary one-set step function; the
    /// result need not be a counterexample (see [`Self::is_witness`]).
    pub fn evaluate(p: PExponent, measure_of_set: f64, constant_value: f64) -> Result<Self> {
        p.require_sub_unit()?;
        if !(measure_of_set > 0.0 && measure_of_set.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "measure must be positive and finite, got {measure_of_set}"
            )));
        }
        if !(constant_value > 0.0 && constant_value.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "constant must be positive and finite, got {constant_value}"
            )));
        }
        let lhs = (constant_value * measure_of_set).powf(p.value());
        let rhs = constant_value.powf(p.value()) * measure_of_set;
        Ok(Self {
            p,
            measure_of_set,
            constant_value,
            lhs,
            rhs,
        })
    }

    /// True when the discrete inequality is strictly reversed.
    pub fn is_witness(&self) -> bool {
        self.lhs > self.rhs
    }
}

/// Indicator of a set of measure `1/2` scaled by `1`: `(1/2)ᵖ > 1/2` for every
/// `p ∈ (0, 1)`. Sets of measure `1` give equality and are never returned.
pub fn continuous_garling_counterexample(p: PExponent) -> Result<ContinuousGarlingWitness> {
    let w = ContinuousGarlingWitness::evaluate(p, 0.5, 1.0)?;
    debug_assert!(w.is_witness());
    Ok(w)
}

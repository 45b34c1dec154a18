//! Standard frame pairs, test vectors and a sampled check of the disc-norm
//! axioms for the inhomogeneous `ℓᵖ` norm.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::frames::FramePair;
use crate::quasinorm::{p_quasinorm_slice, PExponent};
use crate::{CMatrix, CVector, Complex64, Error, Result};

/// Default cap on the condition number of random analysis operators.
pub const DEFAULT_COND_CAP: f64 = 1e6;
/// Residual every random pair is required to meet.
pub const RANDOM_PAIR_RESIDUAL: f64 = 1e-9;
const MAX_DRAWS: usize = 100;

/// Standard complex Gaussian: real and imaginary parts `N(0, 1/2)`.
pub(crate) fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub(crate) fn random_complex_vector<R: Rng + ?Sized>(d: usize, rng: &mut R) -> CVector {
    CVector::from_fn(d, |_, _| complex_gaussian(rng))
}

/// `analysis = synthesis = I_d`.
pub fn identity_pair(d: usize) -> Result<FramePair> {
    if d == 0 {
        return Err(Error::InvalidInput("dimension must be at least 1".into()));
    }
    FramePair::new(CMatrix::identity(d, d), CMatrix::identity(d, d))
}

/// Entry `(k, j)` of the unnormalised `n`-point DFT, `exp(-2πi·jk/n)`.
///
/// The exponent is reduced mod `n` before the angle is formed so that large
/// products do not lose phase accuracy.
pub(crate) fn dft_entry(n: usize, k: usize, j: usize) -> Complex64 {
    let r = (k * j) % n;
    Complex64::from_polar(1.0, -TAU * r as f64 / n as f64)
}

/// Unitary DFT pair: analysis `F` with `|Fₖⱼ| = n^{-1/2}`, synthesis `F*`.
pub fn dft_pair(n: usize) -> Result<FramePair> {
    if n == 0 {
        return Err(Error::InvalidInput("DFT length must be at least 1".into()));
    }
    let scale = 1.0 / (n as f64).sqrt();
    let analysis = CMatrix::from_fn(n, n, |k, j| dft_entry(n, k, j) * scale);
    let synthesis = analysis.adjoint();
    FramePair::new(analysis, synthesis)
}

/// Random analysis operator (`m × d`, complex Gaussian entries) with
/// condition number at most `cond_cap`, paired with its canonical dual
/// (the inverse when `m = d`, the pseudo-inverse otherwise).
///
/// Draws that exceed `cond_cap` or miss the `1e-9` reconstruction residual
/// are discarded; after 100 discarded draws generation fails.
pub fn random_biorthogonal_pair(d: usize, m: usize, seed: u64, cond_cap: f64) -> Result<FramePair> {
    if d == 0 || m < d {
        return Err(Error::InvalidInput(format!(
            "random pair needs 1 ≤ d ≤ m, got d={d}, m={m}"
        )));
    }
    if cond_cap.is_nan() || cond_cap <= 1.0 {
        return Err(Error::InvalidInput(format!("cond_cap must exceed 1, got {cond_cap}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_DRAWS {
        let analysis = CMatrix::from_fn(m, d, |_, _| complex_gaussian(&mut rng));
        let synthesis = if m == d {
            match analysis.clone().try_inverse() {
                Some(inv) => inv,
                None => continue,
            }
        } else {
            match analysis.clone().pseudo_inverse(0.0) {
                Ok(pinv) => pinv,
                Err(_) => continue,
            }
        };
        let pair = FramePair::new(analysis, synthesis)?;
        if pair.condition_estimate() > cond_cap {
            continue;
        }
        if pair.reconstruction_residual() > RANDOM_PAIR_RESIDUAL {
            continue;
        }
        return Ok(pair);
    }
    Err(Error::Generation(format!(
        "{MAX_DRAWS} draws of a {m}x{d} analysis operator all exceeded condition cap {cond_cap}"
    )))
}

/// Indicator of `{i : i ≡ offset (mod spacing)}` in `Kⁿ`.
pub fn dirac_comb(n: usize, spacing: usize, offset: usize) -> Result<CVector> {
    if spacing == 0 || n == 0 || !n.is_multiple_of(spacing) {
        return Err(Error::InvalidInput(format!(
            "comb spacing {spacing} must divide length {n}"
        )));
    }
    if offset >= spacing {
        return Err(Error::InvalidInput(format!(
            "comb offset {offset} must be below spacing {spacing}"
        )));
    }
    Ok(CVector::from_fn(n, |i, _| {
        Complex64::new(if i % spacing == offset { 1.0 } else { 0.0 }, 0.0)
    }))
}

/// Divisors of `n` in increasing order.
pub fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|&s| n.is_multiple_of(s)).collect()
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct AxiomTally {
    pub checked: usize,
    pub passed: usize,
}

impl AxiomTally {
    fn record(&mut self, ok: bool) {
        self.checked += 1;
        if ok {
            self.passed += 1;
        }
    }

    pub fn failures(&self) -> usize {
        self.checked - self.passed
    }
}

/// Per-axiom verdict counts for the inhomogeneous `ℓᵖ` norm on `Kᵈ`.
///
/// Completeness is not a property finite sampling can certify and is not
/// reported.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiscNormAxiomReport {
    pub p: PExponent,
    pub d: usize,
    pub samples: usize,
    /// `‖x‖ = 0 ⇒ x = 0`, checked on `x + y`.
    pub definiteness: AxiomTally,
    /// `‖x + y‖ ≤ ‖x‖ + ‖y‖`
    pub triangle: AxiomTally,
    /// `‖λx‖ ≤ |λ|‖x‖` for `|λ| ≥ 1`
    pub scale_up: AxiomTally,
    /// `‖λx‖ ≥ |λ|‖x‖` for `|λ| ≤ 1`
    pub scale_down: AxiomTally,
}

impl DiscNormAxiomReport {
    pub fn failures(&self) -> usize {
        self.definiteness.failures()
            + self.triangle.failures()
            + self.scale_up.failures()
            + self.scale_down.failures()
    }
}

const AXIOM_REL_TOL: f64 = 1e-12;

/// Samples triples `(x, y, λ)` and checks the four disc-norm axioms.
///
/// Vectors are complex Gaussian with magnitudes spread over six decades;
/// one in eight `x` is zero, one in eight `y` equals `-x`, and one in eight
/// `λ` has modulus exactly one so both scaling axioms apply.
pub fn check_disc_norm_axioms(
    p: PExponent,
    d: usize,
    sample_count: usize,
    seed: u64,
) -> Result<DiscNormAxiomReport> {
    p.require_sub_unit()?;
    if d == 0 {
        return Err(Error::InvalidInput("dimension must be at least 1".into()));
    }
    let norm = |v: &CVector| p_quasinorm_slice(v.as_slice(), p);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = DiscNormAxiomReport {
        p,
        d,
        samples: sample_count,
        definiteness: AxiomTally::default(),
        triangle: AxiomTally::default(),
        scale_up: AxiomTally::default(),
        scale_down: AxiomTally::default(),
    };

    for _ in 0..sample_count {
        let x = if rng.random_ratio(1, 8) {
            CVector::zeros(d)
        } else {
            random_complex_vector(d, &mut rng) * Complex64::new(log_uniform(&mut rng), 0.0)
        };
        let y = if rng.random_ratio(1, 8) {
            -x.clone()
        } else {
            random_complex_vector(d, &mut rng) * Complex64::new(log_uniform(&mut rng), 0.0)
        };
        let modulus = if rng.random_ratio(1, 8) {
            1.0
        } else {
            log_uniform(&mut rng)
        };
        let lambda = Complex64::from_polar(modulus, rng.random_range(0.0..TAU));

        let sum = &x + &y;
        let sum_norm = norm(&sum);
        let sum_is_zero = sum.iter().all(|z| z.re == 0.0 && z.im == 0.0);
        report.definiteness.record(sum_norm != 0.0 || sum_is_zero);

        let (nx, ny) = (norm(&x), norm(&y));
        report
            .triangle
            .record(sum_norm <= (nx + ny) * (1.0 + AXIOM_REL_TOL));

        let scaled = norm(&(&x * lambda));
        let modulus = lambda.norm();
        if modulus >= 1.0 - AXIOM_REL_TOL {
            report
                .scale_up
                .record(scaled <= modulus * nx * (1.0 + AXIOM_REL_TOL));
        }
        if modulus <= 1.0 + AXIOM_REL_TOL {
            report
                .scale_down
                .record(scaled >= modulus * nx * (1.0 - AXIOM_REL_TOL));
        }
    }
    Ok(report)
}

fn log_uniform<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    10f64.powf(rng.random_range(-3.0..3.0))
}

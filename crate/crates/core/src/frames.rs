//! Frame pairs on `Kᵈ`.
//!
//! A pair is stored as two matrices: the analysis operator (row `n` is the
//! functional `fₙ`) and the synthesis operator (column `n` is the vector
//! `τₙ`). The index set is `{0, …, m-1}` with counting measure, so the
//! measure of a coefficient support is simply its cardinality.
//!
//! In finite dimension every linear functional is bounded, so the domain of
//! the analysis operator is all of `Kᵈ` and the bounded / unbounded frame
//! definitions coincide. Measurability conditions are vacuous here. What
//! remains checkable is reconstruction (`x = Σ fₙ(x) τₙ`) and, for the
//! norm-preserving definitions, `‖x‖ᵖ = Σ|fₙ(x)|ᵖ`.

use nalgebra::SVD;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::constructions::random_complex_vector;
use crate::quasinorm::{p_quasinorm_slice, PExponent};
use crate::{CMatrix, CVector, CoeffSeq, Complex64, Error, Result};

/// Base reconstruction tolerance for well-conditioned pairs.
pub const RECONSTRUCTION_TOL: f64 = 1e-9;
/// Tolerance on `‖S - I‖_max` for the frame operator `S = Σ τₙτₙ*`.
/// Upper cap on the conditioning-scaled reconstruction tolerance.
pub const MAX_RECONSTRUCTION_TOL: f64 = 1e-6;
pub const PARSEVAL_TOL: f64 = 1e-9;
/// Relative tolerance for the norm-equality test in [`classify`].
pub const NORM_EQUALITY_REL_TOL: f64 = 1e-9;

/// Analysis functionals paired with synthesis vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct FramePair {
    analysis: CMatrix,
    synthesis: CMatrix,
}

impl FramePair {
    /// `analysis` is `m × d`, `synthesis` is `d × m`, with `m ≥ d ≥ 1`.
    ///
    /// Only shapes and finiteness are checked here; whether the pair actually
    /// reconstructs is the job of [`verify_reconstruction`].
    pub fn new(analysis: CMatrix, synthesis: CMatrix) -> Result<Self> {
        let (m, d) = analysis.shape();
        if d == 0 || m == 0 {
            return Err(Error::InvalidInput("frame pair with an empty index set".into()));
        }
        if synthesis.shape() != (d, m) {
            return Err(Error::InvalidInput(format!(
                "analysis is {m}x{d}, so synthesis must be {d}x{m}, got {}x{}",
                synthesis.nrows(),
                synthesis.ncols()
            )));
        }
        if m < d {
            return Err(Error::InvalidInput(format!(
                "{m} functionals cannot reconstruct a {d}-dimensional space"
            )));
        }
        let finite = |z: &Complex64| z.re.is_finite() && z.im.is_finite();
        if !analysis.iter().all(finite) || !synthesis.iter().all(finite) {
            return Err(Error::InvalidInput("frame pair has non-finite entries".into()));
        }
        Ok(Self {
            analysis,
            synthesis,
        })
    }

    pub fn analysis(&self) -> &CMatrix {
        &self.analysis
    }

    pub fn synthesis(&self) -> &CMatrix {
        &self.synthesis
    }

    /// `d`
    pub fn ambient_dim(&self) -> usize {
        self.analysis.ncols()
    }

    /// `m`
    pub fn count(&self) -> usize {
        self.analysis.nrows()
    }

    /// `max |(synthesis · analysis - I)ᵢⱼ|`
    pub fn reconstruction_residual(&self) -> f64 {
        let product = &self.synthesis * &self.analysis;
        max_deviation_from_identity(&product)
    }

    /// 2-norm condition number of the analysis operator.
    pub fn condition_estimate(&self) -> f64 {
        let sv = SVD::new(self.analysis.clone(), false, false).singular_values;
        let max = sv.iter().cloned().fold(0.0, f64::max);
        let min = sv.iter().cloned().fold(f64::INFINITY, f64::min);
        if min == 0.0 {
            f64::INFINITY
        } else {
            max / min
        }
    }

    /// Reconstruction tolerance scaled by conditioning: `1e-9` for
    /// well-conditioned pairs, growing like `d · ε · κ` for ill-conditioned
    /// ones, never above `1e-6`.
    pub fn default_reconstruction_tol(&self) -> f64 {
        let kappa = self.condition_estimate();
        let d = self.ambient_dim() as f64;
        RECONSTRUCTION_TOL
            .max(64.0 * d * f64::EPSILON * kappa)
            .min(MAX_RECONSTRUCTION_TOL)
    }

    pub fn reconstructs(&self) -> bool {
        self.reconstruction_residual() <= self.default_reconstruction_tol()
    }

    /// Frame operator `Σ τₙ τₙ*` of the synthesis vectors.
    pub fn frame_operator(&self) -> CMatrix {
        &self.synthesis * self.synthesis.adjoint()
    }

    /// Frame operator equals the identity.
    pub fn is_parseval(&self) -> bool {
        max_deviation_from_identity(&self.frame_operator()) <= PARSEVAL_TOL
    }

    /// Analysis equals the conjugate transpose of synthesis, entrywise within `tol`.
    pub fn is_canonical(&self, tol: f64) -> bool {
        self.analysis
            .iter()
            .zip(self.synthesis.adjoint().iter())
            .all(|(a, b)| (a - b).norm() <= tol)
    }

    pub(crate) fn apply_analysis(&self, x: &CVector) -> Vec<Complex64> {
        (&self.analysis * x).iter().copied().collect()
    }

    pub(crate) fn check_vector(&self, x: &CVector) -> Result<()> {
        if x.len() != self.ambient_dim() {
            return Err(Error::InvalidInput(format!(
                "vector has length {}, ambient dimension is {}",
                x.len(),
                self.ambient_dim()
            )));
        }
        if !x.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::InvalidInput("vector has non-finite entries".into()));
        }
        Ok(())
    }
}

fn max_deviation_from_identity(m: &CMatrix) -> f64 {
    let mut worst = 0.0f64;
    for ((i, j), z) in m
        .iter()
        .enumerate()
        .map(|(k, z)| ((k % m.nrows(), k / m.nrows()), z))
    {
        let target = if i == j { 1.0 } else { 0.0 };
        worst = worst.max((z - Complex64::new(target, 0.0)).norm());
    }
    worst
}

pub(crate) fn max_abs_entry(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReconstructionCheck {
    pub max_residual: f64,
    pub holds: bool,
}

pub fn verify_reconstruction(pair: &FramePair, tol: f64) -> Result<ReconstructionCheck> {
    if tol.is_nan() || tol < 0.0 {
        return Err(Error::InvalidInput(format!("tolerance must be nonnegative, got {tol}")));
    }
    let max_residual = pair.reconstruction_residual();
    Ok(ReconstructionCheck {
        max_residual,
        holds: max_residual <= tol,
    })
}

/// Ambient norm that analysis coefficients are compared against.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReferenceNorm {
    /// Euclidean norm `‖x‖₂`.
    Euclidean,
    /// A fixed `ℓᵠ` size of `x` (inhomogeneous for `q ≤ 1`).
    Lp(PExponent),
    /// The `ℓᵖ` size of `x` for whichever `p` is being tested.
    Matching,
}

impl ReferenceNorm {
    fn eval(&self, x: &[Complex64], p: PExponent) -> f64 {
        match self {
            ReferenceNorm::Euclidean => x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt(),
            ReferenceNorm::Lp(q) => p_quasinorm_slice(x, *q),
            ReferenceNorm::Matching => p_quasinorm_slice(x, p),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NormExactness {
    pub p: PExponent,
    pub exact: bool,
    /// Worst relative mismatch over the sampled vectors.
    pub worst_relative_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FrameClassification {
    pub reconstructs: bool,
    pub parseval: bool,
    pub p_norm_exact: Vec<NormExactness>,
}

impl FrameClassification {
    pub fn exact_for(&self, p: PExponent) -> Option<bool> {
        self.p_norm_exact
            .iter()
            .find(|e| e.p == p)
            .map(|e| e.exact)
    }
}

/// Classifies a pair against the reconstruction, Parseval and
/// `‖x‖ᵖ = Σ|fₙ(x)|ᵖ` conditions.
///
/// The norm equality is tested on the `d` canonical basis vectors followed by
/// `sample_count` seeded complex Gaussian vectors.
pub fn classify(
    pair: &FramePair,
    p_list: &[PExponent],
    reference: ReferenceNorm,
    sample_count: usize,
    seed: u64,
) -> Result<FrameClassification> {
    if p_list.is_empty() {
        return Err(Error::InvalidInput("classify needs at least one exponent".into()));
    }
    let d = pair.ambient_dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut samples: Vec<CVector> = (0..d)
        .map(|i| CVector::from_fn(d, |r, _| Complex64::new(if r == i { 1.0 } else { 0.0 }, 0.0)))
        .collect();
    samples.extend((0..sample_count).map(|_| random_complex_vector(d, &mut rng)));

    let p_norm_exact = p_list
        .iter()
        .map(|&p| {
            let worst = samples
                .iter()
                .map(|x| {
                    let coeffs = pair.apply_analysis(x);
                    let lhs = p_quasinorm_slice(&coeffs, p);
                    let reference_value = reference.eval(x.as_slice(), p);
                    (lhs - reference_value).abs() / reference_value.max(f64::MIN_POSITIVE)
                })
                .fold(0.0, f64::max);
            NormExactness {
                p,
                exact: worst <= NORM_EQUALITY_REL_TOL,
                worst_relative_error: worst,
            }
        })
        .collect();

    Ok(FrameClassification {
        reconstructs: pair.reconstructs(),
        parseval: pair.is_parseval(),
        p_norm_exact,
    })
}

/// The two suprema `sup|fₙ(ωₘ)|` and `sup|gₘ(τₙ)|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoherencePair {
    pub c_f_omega: f64,
    pub c_g_tau: f64,
}

impl CoherencePair {
    pub fn product(&self) -> f64 {
        self.c_f_omega * self.c_g_tau
    }

    pub fn is_degenerate(&self) -> bool {
        self.c_f_omega == 0.0 || self.c_g_tau == 0.0
    }
}

/// Cross-coherences of `fg = ({fₙ}, {τₙ})` against `gw = ({gₘ}, {ωₘ})`.
pub fn cross_coherence(fg: &FramePair, gw: &FramePair) -> Result<CoherencePair> {
    if fg.ambient_dim() != gw.ambient_dim() {
        return Err(Error::InvalidInput(format!(
            "frame pairs live in dimensions {} and {}",
            fg.ambient_dim(),
            gw.ambient_dim()
        )));
    }
    Ok(CoherencePair {
        c_f_omega: max_abs_entry(&(fg.analysis() * gw.synthesis())),
        c_g_tau: max_abs_entry(&(gw.analysis() * fg.synthesis())),
    })
}

/// `θ x = (fₙ(x))ₙ`
pub fn analyze(pair: &FramePair, x: &CVector) -> Result<CoeffSeq> {
    pair.check_vector(x)?;
    CoeffSeq::new(pair.apply_analysis(x))
}

//! Finite-dimensional verification of support uncertainty principles for
//! frame pairs, with emphasis on the `0 < p < 1` regime where coefficient
//! sequences live in the inhomogeneous quasi-normed space `ℓᵖ`.
//!
//! The crate is organised bottom-up:
//!
//! * [`quasinorm`]: `ℓᵖ` quasi-norms, support counting, Garling's inequality
//!   and the failure of its continuous analogue.
//! * [`frames`]: frame pairs on `Kᵈ`, reconstruction, classification and
//!   cross-coherence.
//! * [`uncertainty`]: one verifier per uncertainty inequality, each returning
//!   a structured report.
//! * [`constructions`]: identity / DFT / random biorthogonal pairs, Dirac
//!   combs and a sampled disc-norm axiom checker.
//! * [`search`]: extremal support searches and the DFT minor experiment.
//! * [`cli`]: the `uncert-frames` command line front end and file formats.
//!
//! All arithmetic is over `Complex64`; real inputs embed with zero imaginary
//! part. Every operation is a pure function of its inputs (and seed).

pub mod cli;
pub mod constructions;
mod error;
pub mod frames;
pub mod quasinorm;
pub mod search;
pub mod uncertainty;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// Dense complex matrix used for analysis and synthesis operators.
pub type CMatrix = nalgebra::DMatrix<Complex64>;
/// Dense complex vector of the ambient space `Kᵈ`.
pub type CVector = nalgebra::DVector<Complex64>;

pub use constructions::{
    check_disc_norm_axioms, dft_pair, dirac_comb, identity_pair, random_biorthogonal_pair,
    DiscNormAxiomReport,
};
pub use frames::{
    analyze, classify, cross_coherence, verify_reconstruction, CoherencePair, FrameClassification,
    FramePair, ReferenceNorm,
};
pub use quasinorm::{
    continuous_garling_counterexample, garling_check, p_quasinorm, support_count, CoeffSeq,
    PExponent, Regime, SupportPolicy,
};
pub use search::{min_uncertainty_product, tao_minor_check, tightness_sweep, SearchStrategy};
pub use uncertainty::{
    compare_bounds, verify_discup, verify_fi, verify_mt, verify_rt_chain, verify_si, verify_uup,
    TheoremId, UncertaintyReport,
};

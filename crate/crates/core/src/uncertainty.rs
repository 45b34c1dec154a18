//! Verifiers for the support uncertainty inequalities.
//!
//! Every verifier returns an [`UncertaintyReport`] (or a small composite of
//! them) recording both sides of the inequality, so violations can be
//! inspected rather than just detected.
//!
//! Supports are counted with a [`SupportPolicy`]. Whenever a verifier also
//! needs the `ℓᵖ` size of a coefficient sequence it uses the policy-cleaned
//! sequence, so the support and the norm always describe the same vector.

use serde::Serialize;

use crate::frames::{classify, cross_coherence, CoherencePair, FramePair, ReferenceNorm};
use crate::quasinorm::{p_quasinorm_slice, PExponent, Regime, SupportPolicy};
use crate::{CVector, Complex64, Error, Result};

/// Sample count used to confirm the norm-equality hypothesis in [`verify_mt`].
pub const MT_CLASSIFY_SAMPLES: usize = 64;
const MT_CLASSIFY_SEED: u64 = 0x6d74;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum TheoremId {
    /// Hilbert-space chain for two Parseval frames.
    RT,
    /// Norm-preserving frames, `p ≥ 1`.
    MT,
    /// Unbounded frames, `p ∈ {1, ∞}`.
    UUP,
    /// Disc Banach spaces, `0 < p < 1`.
    DISCUP,
    /// First half-inequality of the disc bound.
    FI,
    /// Second half-inequality of the disc bound.
    SI,
}

/// One inequality `lhs ≥ bound` evaluated on one vector.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UncertaintyReport {
    pub theorem_id: TheoremId,
    pub lhs: f64,
    pub bound: f64,
    pub holds: bool,
    pub slack_ratio: f64,
    /// `(‖θ_f x‖₀, ‖θ_g x‖₀)`
    pub supports: (usize, usize),
    pub p: Option<PExponent>,
}

/// `lhs ≥ bound - 1e-12·max(1, |bound|)`
pub fn bound_holds(lhs: f64, bound: f64) -> bool {
    lhs >= bound - 1e-12 * bound.abs().max(1.0)
}

impl UncertaintyReport {
    fn new(
        theorem_id: TheoremId,
        lhs: f64,
        bound: f64,
        supports: (usize, usize),
        p: Option<PExponent>,
    ) -> Self {
        Self {
            theorem_id,
            lhs,
            bound,
            holds: bound_holds(lhs, bound),
            slack_ratio: lhs / bound,
            supports,
            p,
        }
    }

    /// `lhs` within `rel` of `bound`.
    pub fn is_equality(&self, rel: f64) -> bool {
        (self.lhs - self.bound).abs() <= rel * self.bound.abs().max(1.0)
    }
}

/// `1 / (c_f_omega · c_g_tau)ᵖ`; `p = 1` gives the classical bound.
pub fn discup_bound(coherence: &CoherencePair, p: f64) -> f64 {
    1.0 / (coherence.c_f_omega.powf(p) * coherence.c_g_tau.powf(p))
}

fn require_nonzero(x: &CVector) -> Result<()> {
    if x.iter().all(|z| z.re == 0.0 && z.im == 0.0) {
        Err(Error::ExcludedInput(
            "the zero vector is excluded from every uncertainty inequality".into(),
        ))
    } else {
        Ok(())
    }
}

/// Two reconstructing frame pairs on the same space, with their
/// cross-coherences computed once.
///
/// The free functions (`verify_discup`, ...) build one of these per call;
/// reuse it directly when checking many vectors against the same pairs.
#[derive(Debug, Clone)]
pub struct UncertaintySetup<'a> {
    f: &'a FramePair,
    g: &'a FramePair,
    coherence: CoherencePair,
}

/// Both analysis sequences of one vector, cleaned by a support policy.
#[derive(Debug, Clone)]
pub struct Coefficients {
    pub theta_f: Vec<Complex64>,
    pub theta_g: Vec<Complex64>,
    pub supp_f: usize,
    pub supp_g: usize,
}

impl<'a> UncertaintySetup<'a> {
    pub fn new(f: &'a FramePair, g: &'a FramePair) -> Result<Self> {
        let coherence = cross_coherence(f, g)?;
        for (name, pair) in [("f", f), ("g", g)] {
            if !pair.reconstructs() {
                return Err(Error::Classification(format!(
                    "pair {name} does not reconstruct (residual {:e})",
                    pair.reconstruction_residual()
                )));
            }
        }
        if coherence.is_degenerate() {
            return Err(Error::DegenerateBound(format!(
                "cross-coherence is zero ({:e}, {:e}); one analysis annihilates every synthesis vector of the other",
                coherence.c_f_omega, coherence.c_g_tau
            )));
        }
        Ok(Self { f, g, coherence })
    }

    pub fn coherence(&self) -> CoherencePair {
        self.coherence
    }

    pub fn coefficients(&self, x: &CVector, policy: SupportPolicy) -> Result<Coefficients> {
        self.f.check_vector(x)?;
        require_nonzero(x)?;
        let theta_f = policy.clean(&self.f.apply_analysis(x));
        let theta_g = policy.clean(&self.g.apply_analysis(x));
        let nonzero = |v: &[Complex64]| v.iter().filter(|z| z.norm() > 0.0).count();
        Ok(Coefficients {
            supp_f: nonzero(&theta_f),
            supp_g: nonzero(&theta_g),
            theta_f,
            theta_g,
        })
    }

    pub fn discup(&self, x: &CVector, p: PExponent, policy: SupportPolicy) -> Result<UncertaintyReport> {
        p.require_sub_unit()?;
        let c = self.coefficients(x, policy)?;
        Ok(UncertaintyReport::new(
            TheoremId::DISCUP,
            (c.supp_f * c.supp_g) as f64,
            discup_bound(&self.coherence, p.value()),
            (c.supp_f, c.supp_g),
            Some(p),
        ))
    }

    /// `‖θ_f x‖₀ · ‖θ_g x‖ ≥ ‖θ_f x‖ / c_f_omegaᵖ`
    pub fn fi(&self, x: &CVector, p: PExponent, policy: SupportPolicy) -> Result<UncertaintyReport> {
        p.require_sub_unit()?;
        let c = self.coefficients(x, policy)?;
        let norm_f = p_quasinorm_slice(&c.theta_f, p);
        let norm_g = p_quasinorm_slice(&c.theta_g, p);
        Ok(UncertaintyReport::new(
            TheoremId::FI,
            c.supp_f as f64 * norm_g,
            norm_f / self.coherence.c_f_omega.powf(p.value()),
            (c.supp_f, c.supp_g),
            Some(p),
        ))
    }

    /// `‖θ_g x‖₀ · ‖θ_f x‖ ≥ ‖θ_g x‖ / c_g_tauᵖ`
    pub fn si(&self, x: &CVector, p: PExponent, policy: SupportPolicy) -> Result<UncertaintyReport> {
        p.require_sub_unit()?;
        let c = self.coefficients(x, policy)?;
        let norm_f = p_quasinorm_slice(&c.theta_f, p);
        let norm_g = p_quasinorm_slice(&c.theta_g, p);
        Ok(UncertaintyReport::new(
            TheoremId::SI,
            c.supp_g as f64 * norm_f,
            norm_g / self.coherence.c_g_tau.powf(p.value()),
            (c.supp_f, c.supp_g),
            Some(p),
        ))
    }

    /// `‖θ_f x‖₀ · ‖θ_g x‖₀ ≥ 1 / (c_f_omega · c_g_tau)` for `p ∈ {1, ∞}`.
    pub fn uup(&self, x: &CVector, p: PExponent, policy: SupportPolicy) -> Result<UncertaintyReport> {
        if !matches!(p.regime(), Regime::One | Regime::Infinity) {
            return Err(Error::Regime {
                p: p.value(),
                expected: "{1, ∞}",
            });
        }
        let c = self.coefficients(x, policy)?;
        Ok(UncertaintyReport::new(
            TheoremId::UUP,
            (c.supp_f * c.supp_g) as f64,
            1.0 / self.coherence.product(),
            (c.supp_f, c.supp_g),
            Some(p),
        ))
    }
}

pub fn verify_discup(
    f_pair: &FramePair,
    g_pair: &FramePair,
    x: &CVector,
    p: PExponent,
    policy: SupportPolicy,
) -> Result<UncertaintyReport> {
    p.require_sub_unit()?;
    UncertaintySetup::new(f_pair, g_pair)?.discup(x, p, policy)
}

pub fn verify_fi(
    f_pair: &FramePair,
    g_pair: &FramePair,
    x: &CVector,
    p: PExponent,
    policy: SupportPolicy,
) -> Result<UncertaintyReport> {
    p.require_sub_unit()?;
    UncertaintySetup::new(f_pair, g_pair)?.fi(x, p, policy)
}

pub fn verify_si(
    f_pair: &FramePair,
    g_pair: &FramePair,
    x: &CVector,
    p: PExponent,
    policy: SupportPolicy,
) -> Result<UncertaintyReport> {
    p.require_sub_unit()?;
    UncertaintySetup::new(f_pair, g_pair)?.si(x, p, policy)
}

pub fn verify_uup(
    f_pair: &FramePair,
    g_pair: &FramePair,
    x: &CVector,
    p: PExponent,
    policy: SupportPolicy,
) -> Result<UncertaintyReport> {
    UncertaintySetup::new(f_pair, g_pair)?.uup(x, p, policy)
}

/// The three-link chain for two Parseval frames, with `a`, `b` the two
/// support counts:
/// `(a² + b²)/2 ≥ ((a + b)/2)² ≥ ab ≥ 1 / max|⟨τⱼ, ωₖ⟩|²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RtChainReport {
    pub supports: (usize, usize),
    pub am: f64,
    pub sq_mean: f64,
    pub product: f64,
    pub bound: f64,
    /// `max|⟨τⱼ, ωₖ⟩|`
    pub coherence: f64,
    pub links: [bool; 3],
    pub all_hold: bool,
}

pub fn verify_rt_chain(
    tau_pair: &FramePair,
    omega_pair: &FramePair,
    h: &CVector,
    policy: SupportPolicy,
) -> Result<RtChainReport> {
    if tau_pair.ambient_dim() != omega_pair.ambient_dim() {
        return Err(Error::InvalidInput(format!(
            "frame pairs live in dimensions {} and {}",
            tau_pair.ambient_dim(),
            omega_pair.ambient_dim()
        )));
    }
    for (name, pair) in [("tau", tau_pair), ("omega", omega_pair)] {
        if !pair.is_parseval() || !pair.is_canonical(1e-9) {
            return Err(Error::Classification(format!(
                "pair {name} is not a Parseval frame with its canonical analysis operator"
            )));
        }
    }
    tau_pair.check_vector(h)?;
    require_nonzero(h)?;

    // ⟨τⱼ, ωₖ⟩ = ωₖ* τⱼ, read straight off the synthesis vectors.
    let gram = omega_pair.synthesis().adjoint() * tau_pair.synthesis();
    let coherence = crate::frames::max_abs_entry(&gram);
    if coherence == 0.0 {
        return Err(Error::DegenerateBound(
            "the two frames are mutually orthogonal".into(),
        ));
    }
    let a = policy.count(&tau_pair.apply_analysis(h));
    let b = policy.count(&omega_pair.apply_analysis(h));
    let (af, bf) = (a as f64, b as f64);
    let am = (af * af + bf * bf) / 2.0;
    let sq_mean = ((af + bf) / 2.0).powi(2);
    let product = af * bf;
    let bound = 1.0 / (coherence * coherence);
    let links = [am >= sq_mean, sq_mean >= product, bound_holds(product, bound)];
    Ok(RtChainReport {
        supports: (a, b),
        am,
        sq_mean,
        product,
        bound,
        coherence,
        links,
        all_hold: links.iter().all(|&l| l),
    })
}

/// Checks the two support inequalities for norm-preserving `p`-frames,
/// `p ∈ [1, ∞]`, with `q` the conjugate index:
///
/// * `p > 1`: `sf^{1/p}·sg^{1/q} ≥ 1/c_f_omega` and `sg^{1/p}·sf^{1/q} ≥ 1/c_g_tau`;
/// * `p = 1`: `sf ≥ 1/c_f_omega` and `sg ≥ 1/c_g_tau`;
/// * `p = ∞`: `sg ≥ 1/c_f_omega` and `sf ≥ 1/c_g_tau`.
///
/// The `p = ∞` pairing of supports with coherences is the one obtained as
/// the `q = 1` end of the `p > 1` case.
///
/// Both pairs must satisfy `‖x‖_p = ‖θ x‖_p` for the ambient `ℓᵖ` norm; this is
/// confirmed on `MT_CLASSIFY_SAMPLES` sampled vectors first.
pub fn verify_mt(
    f_pair: &FramePair,
    g_pair: &FramePair,
    x: &CVector,
    p: PExponent,
    policy: SupportPolicy,
) -> Result<[UncertaintyReport; 2]> {
    verify_mt_with(f_pair, g_pair, x, p, policy, ReferenceNorm::Matching, MT_CLASSIFY_SAMPLES)
}

/// [`verify_mt`] with an explicit reference norm and sample count.
pub fn verify_mt_with(
    f_pair: &FramePair,
    g_pair: &FramePair,
    x: &CVector,
    p: PExponent,
    policy: SupportPolicy,
    reference: ReferenceNorm,
    samples: usize,
) -> Result<[UncertaintyReport; 2]> {
    if p.is_sub_unit() {
        return Err(Error::Regime {
            p: p.value(),
            expected: "[1, ∞]",
        });
    }
    for (name, pair) in [("f", f_pair), ("g", g_pair)] {
        let class = classify(pair, &[p], reference, samples, MT_CLASSIFY_SEED)?;
        if class.exact_for(p) != Some(true) {
            return Err(Error::Classification(format!(
                "pair {name} is not a {p}-Schauder frame for this p"
            )));
        }
    }
    let setup = UncertaintySetup::new(f_pair, g_pair)?;
    let c = setup.coefficients(x, policy)?;
    let coh = setup.coherence();
    let (sf, sg) = (c.supp_f as f64, c.supp_g as f64);
    let (lhs1, lhs2) = match p.regime() {
        Regime::One => (sf, sg),
        Regime::Infinity => (sg, sf),
        Regime::Super => {
            let q = p.conjugate().expect("super regime has a finite conjugate");
            let (ip, iq) = (1.0 / p.value(), 1.0 / q);
            (sf.powf(ip) * sg.powf(iq), sg.powf(ip) * sf.powf(iq))
        }
        Regime::SubUnit => unreachable!("rejected above"),
    };
    let supports = (c.supp_f, c.supp_g);
    Ok([
        UncertaintyReport::new(TheoremId::MT, lhs1, 1.0 / coh.c_f_omega, supports, Some(p)),
        UncertaintyReport::new(TheoremId::MT, lhs2, 1.0 / coh.c_g_tau, supports, Some(p)),
    ])
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundRow {
    pub p: PExponent,
    pub discup_bound: f64,
    pub uup_bound: f64,
    pub rt_bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundTable {
    pub coherence: CoherencePair,
    pub rows: Vec<BoundRow>,
}

impl BoundTable {
    /// With `c_f_omega · c_g_tau < 1`: the disc bound increases strictly with
    /// `p` and stays strictly below the `p = 1` bound. Always false when the
    /// coherence product is at least one.
    pub fn ordering_holds(&self) -> bool {
        if self.coherence.product() >= 1.0 {
            return false;
        }
        let mut rows = self.rows.clone();
        rows.sort_by(|a, b| a.p.value().total_cmp(&b.p.value()));
        let below = rows.iter().all(|r| r.discup_bound < r.uup_bound);
        let increasing = rows.windows(2).all(|w| {
            w[0].p.value() == w[1].p.value() || w[0].discup_bound < w[1].discup_bound
        });
        below && increasing
    }
}

/// Tabulates `1/(c₁c₂)ᵖ` against `1/(c₁c₂)` and `1/c_g_tau²`.
pub fn compare_bounds(f_pair: &FramePair, g_pair: &FramePair, p_grid: &[f64]) -> Result<BoundTable> {
    let coherence = cross_coherence(f_pair, g_pair)?;
    if coherence.is_degenerate() {
        return Err(Error::DegenerateBound("cross-coherence is zero".into()));
    }
    let rows = p_grid
        .iter()
        .map(|&p| {
            let p = PExponent::sub_unit(p)?;
            Ok(BoundRow {
                p,
                discup_bound: discup_bound(&coherence, p.value()),
                uup_bound: 1.0 / coherence.product(),
                rt_bound: 1.0 / (coherence.c_g_tau * coherence.c_g_tau),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BoundTable { coherence, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{dft_pair, dirac_comb, identity_pair, random_biorthogonal_pair};
    use proptest::prelude::*;

    fn p(v: f64) -> PExponent {
        PExponent::new(v).unwrap()
    }

    fn vec_of(v: &[f64]) -> CVector {
        CVector::from_iterator(v.len(), v.iter().map(|&r| Complex64::new(r, 0.0)))
    }

    fn id4_dft4() -> (FramePair, FramePair) {
        (identity_pair(4).unwrap(), dft_pair(4).unwrap())
    }

    #[test]
    fn discup_examples() {
        let (id, dft) = id4_dft4();
        let policy = SupportPolicy::default();
        for (x, supports) in [
            (vec_of(&[1.0, 0.0, 1.0, 0.0]), (2, 2)),
            (vec_of(&[1.0, 0.0, 0.0, 0.0]), (1, 4)),
            (vec_of(&[1.0, 1.0, 1.0, 1.0]), (4, 1)),
        ] {
            let r = verify_discup(&id, &dft, &x, p(0.5), policy).unwrap();
            assert_eq!(r.supports, supports);
            assert_eq!(r.lhs, 4.0);
            assert!((r.bound - 2.0).abs() < 1e-12);
            assert!(r.holds);
            assert!((r.slack_ratio - 2.0).abs() < 1e-9);
        }
    }

    #[test]
    fn discup_errors() {
        let (id, dft) = id4_dft4();
        let policy = SupportPolicy::default();
        assert!(matches!(
            verify_discup(&id, &dft, &CVector::zeros(4), p(0.5), policy),
            Err(Error::ExcludedInput(_))
        ));
        assert!(matches!(
            verify_discup(&id, &dft, &vec_of(&[1.0, 0.0, 0.0, 0.0]), p(1.0), policy),
            Err(Error::Regime { .. })
        ));

        // Reconstructing pairs always have nonzero cross-coherence, so the
        // degenerate case is only reachable through hand-built inputs.
        let zero = FramePair::new(crate::CMatrix::zeros(4, 4), crate::CMatrix::zeros(4, 4)).unwrap();
        assert!(matches!(
            UncertaintySetup::new(&id, &zero),
            Err(Error::Classification(_))
        ));
        assert!(matches!(
            compare_bounds(&id, &zero, &[0.5]),
            Err(Error::DegenerateBound(_))
        ));
    }

    #[test]
    fn fi_si_examples() {
        let (id, dft) = id4_dft4();
        let policy = SupportPolicy::default();
        let fi = verify_fi(&id, &dft, &vec_of(&[1.0, 0.0, 1.0, 0.0]), p(0.5), policy).unwrap();
        assert!((fi.lhs - 4.0).abs() < 1e-12);
        assert!((fi.bound - 2.0 * 2f64.sqrt()).abs() < 1e-12);
        assert!(fi.holds);

        let spike = vec_of(&[1.0, 0.0, 0.0, 0.0]);
        let fi = verify_fi(&id, &dft, &spike, p(0.5), policy).unwrap();
        assert!((fi.lhs - 4.0 * 0.5f64.sqrt()).abs() < 1e-12);
        assert!((fi.bound - 2f64.sqrt()).abs() < 1e-12);
        assert!(fi.holds);

        let fi = verify_fi(&id, &id, &spike, p(0.5), policy).unwrap();
        assert_eq!((fi.lhs, fi.bound), (1.0, 1.0));
        assert!(fi.holds && fi.is_equality(0.0));

        let si = verify_si(&id, &dft, &spike, p(0.5), policy).unwrap();
        // 4·1 ≥ (4·0.5^{1/2}) / 0.5^{1/2} = 4
        assert!((si.lhs - 4.0).abs() < 1e-12 && (si.bound - 4.0).abs() < 1e-12);
        assert!(si.holds);
    }

    #[test]
    fn rt_chain_examples() {
        let (id, dft) = id4_dft4();
        let policy = SupportPolicy::default();
        let r = verify_rt_chain(&id, &dft, &vec_of(&[1.0, 0.0, 1.0, 0.0]), policy).unwrap();
        assert_eq!(r.supports, (2, 2));
        assert_eq!((r.am, r.sq_mean, r.product), (4.0, 4.0, 4.0));
        assert!((r.bound - 4.0).abs() < 1e-12 && r.all_hold);

        let r = verify_rt_chain(&id, &dft, &vec_of(&[1.0, 0.0, 0.0, 0.0]), policy).unwrap();
        assert_eq!((r.am, r.sq_mean, r.product), (8.5, 6.25, 4.0));
        assert!(r.all_hold);

        let r = verify_rt_chain(&id, &id, &vec_of(&[1.0, 0.0, 0.0, 0.0]), policy).unwrap();
        assert_eq!((r.am, r.sq_mean, r.product, r.bound), (1.0, 1.0, 1.0, 1.0));

        let random = random_biorthogonal_pair(4, 4, 3, 1e6).unwrap();
        assert!(matches!(
            verify_rt_chain(&id, &random, &vec_of(&[1.0, 0.0, 0.0, 0.0]), policy),
            Err(Error::Classification(_))
        ));
        assert!(matches!(
            verify_rt_chain(&id, &dft, &CVector::zeros(4), policy),
            Err(Error::ExcludedInput(_))
        ));
    }

    #[test]
    fn mt_examples() {
        let (id, dft) = id4_dft4();
        let policy = SupportPolicy::default();
        let [a, b] = verify_mt(&id, &dft, &vec_of(&[1.0, 0.0, 1.0, 0.0]), p(2.0), policy).unwrap();
        for r in [a, b] {
            assert!((r.lhs - 2.0).abs() < 1e-12 && (r.bound - 2.0).abs() < 1e-12);
            assert!(r.holds);
        }

        let spike = vec_of(&[1.0, 0.0, 0.0, 0.0]);
        let [a, b] = verify_mt(&id, &id, &spike, p(1.0), policy).unwrap();
        assert_eq!((a.lhs, a.bound, b.lhs, b.bound), (1.0, 1.0, 1.0, 1.0));

        let [a, b] = verify_mt(&id, &id, &spike, PExponent::infinity(), policy).unwrap();
        assert!(a.holds && b.holds);

        let id9 = identity_pair(9).unwrap();
        let dft9 = dft_pair(9).unwrap();
        let comb = dirac_comb(9, 3, 0).unwrap();
        let [a, b] = verify_mt(&id9, &dft9, &comb, p(2.0), policy).unwrap();
        assert_eq!(a.supports, (3, 3));
        for r in [a, b] {
            assert!((r.lhs - 3.0).abs() < 1e-12 && (r.bound - 3.0).abs() < 1e-12 && r.holds);
        }

        // The DFT does not preserve ℓ¹, so it is not a 1-Schauder frame.
        assert!(matches!(
            verify_mt(&id, &dft, &spike, p(1.0), policy),
            Err(Error::Classification(_))
        ));
        assert!(matches!(
            verify_mt(&id, &dft, &spike, p(0.5), policy),
            Err(Error::Regime { .. })
        ));
    }

    #[test]
    fn uup_examples() {
        let (id, dft) = id4_dft4();
        let policy = SupportPolicy::default();
        let r = verify_uup(&id, &dft, &vec_of(&[1.0, 0.0, 1.0, 0.0]), p(1.0), policy).unwrap();
        assert_eq!(r.lhs, 4.0);
        assert!((r.bound - 4.0).abs() < 1e-12 && r.holds);

        let r = verify_uup(&id, &id, &vec_of(&[0.0, 0.0, 3.0, 0.0]), PExponent::infinity(), policy).unwrap();
        assert_eq!((r.lhs, r.bound), (1.0, 1.0));

        let r = verify_uup(
            &identity_pair(9).unwrap(),
            &dft_pair(9).unwrap(),
            &dirac_comb(9, 3, 0).unwrap(),
            p(1.0),
            policy,
        )
        .unwrap();
        assert_eq!(r.lhs, 9.0);
        assert!((r.bound - 9.0).abs() < 1e-12 && r.holds);

        assert!(verify_uup(&id, &dft, &vec_of(&[1.0, 0.0, 0.0, 0.0]), p(2.0), policy).is_err());
    }

    #[test]
    fn compare_bounds_examples() {
        let (id, dft) = id4_dft4();
        let t = compare_bounds(&id, &dft, &[0.5]).unwrap();
        let row = t.rows[0];
        assert!((row.discup_bound - 2.0).abs() < 1e-12);
        assert!((row.uup_bound - 4.0).abs() < 1e-12);
        assert!((row.rt_bound - 4.0).abs() < 1e-12);

        let t = compare_bounds(&id, &dft, &[1.0 - 1e-12]).unwrap();
        assert!((t.rows[0].discup_bound - t.rows[0].uup_bound).abs() < 1e-9);

        let t = compare_bounds(&identity_pair(9).unwrap(), &dft_pair(9).unwrap(), &[0.5]).unwrap();
        assert!((t.rows[0].discup_bound - 3.0).abs() < 1e-12);
        assert!((t.rows[0].uup_bound - 9.0).abs() < 1e-12);

        assert!(compare_bounds(&id, &dft, &[1.0]).is_err());
        assert!(!compare_bounds(&id, &id, &[0.5]).unwrap().ordering_holds());
    }

    fn random_case() -> impl Strategy<Value = (usize, u64, u64, u64)> {
        (1usize..10, any::<u64>(), any::<u64>(), any::<u64>())
    }

    fn random_x(d: usize, seed: u64) -> CVector {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        crate::constructions::random_complex_vector(d, &mut rng)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(96))]

        #[test]
        fn fi_times_si_reproduces_discup((d, s1, s2, sx) in random_case(), e in 0.05f64..0.95) {
            let f = random_biorthogonal_pair(d, d, s1, 1e6).unwrap();
            let g = random_biorthogonal_pair(d, d, s2, 1e6).unwrap();
            // Sparse in the f-coefficients half the time.
            let x = if sx % 2 == 0 {
                f.synthesis().column((sx as usize / 2) % d).into_owned()
            } else {
                random_x(d, sx)
            };
            let setup = UncertaintySetup::new(&f, &g).unwrap();
            let policy = SupportPolicy::default();
            let pe = p(e);
            let (fi, si, du) = (
                setup.fi(&x, pe, policy).unwrap(),
                setup.si(&x, pe, policy).unwrap(),
                setup.discup(&x, pe, policy).unwrap(),
            );
            prop_assert!(fi.holds && si.holds && du.holds);
            let c = setup.coefficients(&x, policy).unwrap();
            let norms = p_quasinorm_slice(&c.theta_f, pe) * p_quasinorm_slice(&c.theta_g, pe);
            let ratio = fi.lhs * si.lhs / norms;
            prop_assert!((ratio - du.lhs).abs() <= 1e-9 * du.lhs);
        }

        #[test]
        fn discup_is_scale_invariant((d, s1, s2, sx) in random_case(), (lr, li) in (-1e3f64..1e3, -1e3f64..1e3)) {
            prop_assume!(lr.abs() + li.abs() > 1e-3);
            let f = random_biorthogonal_pair(d, d, s1, 1e6).unwrap();
            let g = random_biorthogonal_pair(d, d, s2, 1e6).unwrap();
            let x = random_x(d, sx);
            let scaled = &x * Complex64::new(lr, li);
            let a = verify_discup(&f, &g, &x, p(0.5), SupportPolicy::exact()).unwrap();
            let b = verify_discup(&f, &g, &scaled, p(0.5), SupportPolicy::exact()).unwrap();
            prop_assert_eq!(a.supports, b.supports);
            prop_assert_eq!(a.holds, b.holds);
        }

        #[test]
        fn rt_chain_order_is_arithmetic(n in 1usize..16, seed in any::<u64>()) {
            let h = random_x(n, seed);
            let r = verify_rt_chain(&identity_pair(n).unwrap(), &dft_pair(n).unwrap(), &h, SupportPolicy::default()).unwrap();
            prop_assert!(r.am >= r.sq_mean && r.sq_mean >= r.product);
            prop_assert!(r.all_hold);
        }

        #[test]
        fn discup_bound_increases_in_p(c1 in 0.01f64..1.0, c2 in 0.01f64..1.0, p1 in 0.01f64..0.99, dp in 1e-3f64..0.5) {
            prop_assume!(c1 * c2 < 0.999);
            let p2 = (p1 + dp).min(0.999);
            prop_assume!(p2 > p1);
            let c = CoherencePair { c_f_omega: c1, c_g_tau: c2 };
            prop_assert!(discup_bound(&c, p1) < discup_bound(&c, p2));
            prop_assert!(discup_bound(&c, p2) < discup_bound(&c, 1.0));
        }
    }
}

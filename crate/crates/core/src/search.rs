//! Extremal exploration: how small can `‖θ_f x‖₀ · ‖θ_g x‖₀` get, and what
//! do DFT minors look like in prime versus composite dimension.
//!
//! Candidates are evaluated independently (in parallel on the current rayon
//! pool) and reduced deterministically: smallest product, then smallest
//! `‖θ_f x‖₀ + ‖θ_g x‖₀`, then lexicographically smallest support of `θ_f x`,
//! then enumeration order.

use std::cmp::Ordering;

use itertools::Itertools;
use nalgebra::SVD;
use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::constructions::{complex_gaussian, dft_entry, dft_pair, divisors, dirac_comb, identity_pair};
use crate::frames::FramePair;
use crate::quasinorm::{PExponent, SupportPolicy};
use crate::uncertainty::{discup_bound, UncertaintySetup};
use crate::{CMatrix, CVector, Complex64, Error, Result};

/// Largest ambient dimension the exhaustive strategy accepts.
pub const MAX_EXHAUSTIVE_DIM: usize = 12;
/// Largest support size the exhaustive strategy enumerates.
pub const MAX_EXHAUSTIVE_SUPPORT: usize = 6;
/// Above this many square minors, [`tao_minor_check`] samples instead of enumerating.
pub const MINOR_ENUMERATION_LIMIT: usize = 1_000_000;
/// Relative rank cut-off used when extracting null vectors.
const RANK_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "name")]
pub enum SearchStrategy {
    /// Every Dirac comb `dirac_comb(d, s, o)` with `s | d`.
    Combs,
    /// Every support `S` of `θ_f x` with `|S| ≤ max_support`, minimising
    /// `‖θ_g x‖₀` over vectors supported on `S`.
    ExhaustiveSupports { max_support: usize },
    /// Seeded random vectors sparse in the `f`-synthesis coefficients.
    RandomRestarts,
}

impl SearchStrategy {
    /// Budget used when the caller does not supply one.
    pub fn default_budget(&self) -> usize {
        match self {
            SearchStrategy::Combs | SearchStrategy::ExhaustiveSupports { .. } => usize::MAX,
            SearchStrategy::RandomRestarts => 10_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchOutcome {
    pub minimizer: Vec<Complex64>,
    pub min_product: usize,
    /// `(‖θ_f x‖₀, ‖θ_g x‖₀)` of the minimiser.
    pub supports: (usize, usize),
    /// Support of `θ_f` applied to the minimiser.
    pub support_set: Vec<usize>,
    /// `1 / (c_f_omega · c_g_tau)`, the strongest bound any of the verified
    /// inequalities gives for this pair.
    pub bound: f64,
    pub tight: bool,
    pub candidates_examined: usize,
    pub strategy: SearchStrategy,
}

#[derive(Debug, Clone)]
struct Candidate {
    x: CVector,
    supp_f: usize,
    supp_g: usize,
    support_set: Vec<usize>,
    order: usize,
}

impl Candidate {
    fn cmp_key(&self, other: &Self) -> Ordering {
        (self.supp_f * self.supp_g)
            .cmp(&(other.supp_f * other.supp_g))
            .then((self.supp_f + self.supp_g).cmp(&(other.supp_f + other.supp_g)))
            .then_with(|| self.support_set.cmp(&other.support_set))
            .then(self.order.cmp(&other.order))
    }
}

fn better(a: Option<Candidate>, b: Option<Candidate>) -> Option<Candidate> {
    match (a, b) {
        (Some(a), Some(b)) => Some(if b.cmp_key(&a) == Ordering::Less { b } else { a }),
        (a, None) => a,
        (None, b) => b,
    }
}

fn evaluate(
    setup: &UncertaintySetup<'_>,
    f: &FramePair,
    x: CVector,
    policy: SupportPolicy,
    order: usize,
) -> Option<Candidate> {
    let c = setup.coefficients(&x, policy).ok()?;
    let support_set = policy.support(&f.apply_analysis(&x));
    Some(Candidate {
        x,
        supp_f: c.supp_f,
        supp_g: c.supp_g,
        support_set,
        order,
    })
}

/// Smallest support product found by the chosen strategy.
///
/// `budget` caps the number of candidates evaluated (for the exhaustive
/// strategy a candidate is one support set paired with one choice of
/// vanishing `θ_g` rows).
pub fn min_uncertainty_product(
    f_pair: &FramePair,
    g_pair: &FramePair,
    strategy: SearchStrategy,
    budget: usize,
    seed: u64,
    policy: SupportPolicy,
) -> Result<SearchOutcome> {
    if budget == 0 {
        return Err(Error::InvalidInput("search budget must be at least 1".into()));
    }
    let setup = UncertaintySetup::new(f_pair, g_pair)?;
    let (best, examined) = match strategy {
        SearchStrategy::Combs => search_combs(&setup, f_pair, budget, policy)?,
        SearchStrategy::ExhaustiveSupports { max_support } => {
            search_exhaustive(&setup, f_pair, g_pair, max_support, budget, policy)?
        }
        SearchStrategy::RandomRestarts => search_random(&setup, f_pair, budget, seed, policy),
    };
    let best = best.ok_or_else(|| {
        Error::Budget(format!(
            "no admissible candidate among {examined} examined"
        ))
    })?;
    let bound = 1.0 / setup.coherence().product();
    let min_product = best.supp_f * best.supp_g;
    Ok(SearchOutcome {
        minimizer: best.x.iter().copied().collect(),
        min_product,
        supports: (best.supp_f, best.supp_g),
        support_set: best.support_set,
        bound,
        tight: (min_product as f64) <= bound * (1.0 + 1e-9),
        candidates_examined: examined,
        strategy,
    })
}

fn search_combs(
    setup: &UncertaintySetup<'_>,
    f: &FramePair,
    budget: usize,
    policy: SupportPolicy,
) -> Result<(Option<Candidate>, usize)> {
    let d = f.ambient_dim();
    let combs: Vec<(usize, usize)> = divisors(d)
        .into_iter()
        .flat_map(|s| (0..s).map(move |o| (s, o)))
        .take(budget)
        .collect();
    let examined = combs.len();
    let best = combs
        .into_par_iter()
        .enumerate()
        .map(|(order, (s, o))| {
            let x = dirac_comb(d, s, o).ok()?;
            evaluate(setup, f, x, policy, order)
        })
        .reduce(|| None, better);
    Ok((best, examined))
}

fn search_random(
    setup: &UncertaintySetup<'_>,
    f: &FramePair,
    budget: usize,
    seed: u64,
    policy: SupportPolicy,
) -> (Option<Candidate>, usize) {
    let m = f.count();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vectors: Vec<CVector> = (0..budget)
        .map(|_| {
            let k = rng.random_range(1..=m);
            let positions = index::sample(&mut rng, m, k);
            let mut coeffs = CVector::zeros(m);
            for i in positions.iter() {
                coeffs[i] = complex_gaussian(&mut rng);
            }
            f.synthesis() * coeffs
        })
        .collect();
    let best = vectors
        .into_par_iter()
        .enumerate()
        .map(|(order, x)| evaluate(setup, f, x, policy, order))
        .reduce(|| None, better);
    (best, budget)
}

/// Basis (columns) of `{x : (A x)ᵢ = 0 for i ∉ rows}`.
fn coefficient_subspace(f: &FramePair, rows: &[usize]) -> CMatrix {
    let (m, d) = (f.count(), f.ambient_dim());
    if m == d {
        // A·B = I, so the columns of B indexed by `rows` span the subspace.
        return f.synthesis().select_columns(rows.iter());
    }
    let others: Vec<usize> = (0..m).filter(|i| !rows.contains(i)).collect();
    if others.is_empty() {
        return CMatrix::identity(d, d);
    }
    null_space(&f.analysis().select_rows(others.iter()))
}

/// Orthonormal basis (columns) of the null space of `a`.
fn null_space(a: &CMatrix) -> CMatrix {
    let (r, c) = a.shape();
    let mut padded = CMatrix::zeros(r.max(c), c);
    padded.view_mut((0, 0), (r, c)).copy_from(a);
    let svd = SVD::new(padded, false, true);
    let v_t = svd.v_t.expect("v_t requested");
    let max = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let cut = RANK_TOL * max.max(f64::MIN_POSITIVE);
    let null_rows: Vec<usize> = svd
        .singular_values
        .iter()
        .enumerate()
        .filter(|(_, &s)| s <= cut)
        .map(|(i, _)| i)
        .collect();
    let mut basis = CMatrix::zeros(c, null_rows.len());
    for (j, &i) in null_rows.iter().enumerate() {
        for k in 0..c {
            basis[(k, j)] = v_t[(i, k)].conj();
        }
    }
    basis
}

/// Unit vector spanning the kernel of the `(k-1) × k` matrix `a`, if that
/// kernel is exactly one-dimensional.
fn unique_null_vector(a: &CMatrix) -> Option<CVector> {
    let k = a.ncols();
    if k == 1 {
        return Some(CVector::from_element(1, Complex64::new(1.0, 0.0)));
    }
    let basis = null_space(a);
    (basis.ncols() == 1).then(|| basis.column(0).into_owned())
}

fn search_exhaustive(
    setup: &UncertaintySetup<'_>,
    f: &FramePair,
    g: &FramePair,
    max_support: usize,
    budget: usize,
    policy: SupportPolicy,
) -> Result<(Option<Candidate>, usize)> {
    let d = f.ambient_dim();
    if d > MAX_EXHAUSTIVE_DIM {
        return Err(Error::InvalidInput(format!(
            "exhaustive support search is limited to dimension {MAX_EXHAUSTIVE_DIM}, got {d}"
        )));
    }
    if max_support == 0 || max_support > MAX_EXHAUSTIVE_SUPPORT {
        return Err(Error::InvalidInput(format!(
            "support cap must be in 1..={MAX_EXHAUSTIVE_SUPPORT}, got {max_support}"
        )));
    }
    let (m_f, m_g) = (f.count(), g.count());
    let cap = max_support.min(m_f);

    // A minimiser can always be taken with a one-dimensional solution set: if
    // more freedom remained, one more row of θ_g could be forced to vanish.
    // So for each support S of θ_f x it suffices to try every choice of
    // (dim - 1) rows of θ_g to annihilate and take the unique solution.
    struct Job {
        basis: CMatrix,
        limit: usize,
        order: usize,
    }
    let mut jobs = Vec::new();
    let mut remaining = budget;
    let mut order = 0usize;
    'outer: for s in 1..=cap {
        for rows in (0..m_f).combinations(s) {
            if remaining == 0 {
                break 'outer;
            }
            let basis = coefficient_subspace(f, &rows);
            let k = basis.ncols();
            if k == 0 {
                continue;
            }
            let total = binomial(m_g, k - 1);
            let limit = total.min(remaining);
            remaining -= limit;
            jobs.push(Job {
                basis,
                limit,
                order,
            });
            order += total;
        }
    }
    let examined = budget - remaining;

    let best = jobs
        .into_par_iter()
        .map(|job| {
            let image = g.analysis() * &job.basis;
            let k = job.basis.ncols();
            let mut best = None;
            for (i, zero_rows) in (0..m_g).combinations(k - 1).take(job.limit).enumerate() {
                let Some(coeffs) = unique_null_vector(&image.select_rows(zero_rows.iter())) else {
                    continue;
                };
                let x = &job.basis * coeffs;
                let candidate = evaluate(setup, f, x, policy, job.order + i);
                best = better(best, candidate);
            }
            best
        })
        .reduce(|| None, better);
    Ok((best, examined))
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// A square submatrix of the unnormalised DFT.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MinorWitness {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub abs_det: f64,
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl MinorWitness {
    /// Both index sets lie in cosets of proper subgroups of `Z_n`, i.e. the
    /// gcd of their pairwise differences with `n` exceeds one.
    pub fn is_comb_structured(&self, n: usize) -> bool {
        let step = |set: &[usize]| set.windows(2).fold(n, |g, w| gcd(g, w[1] - w[0]));
        self.rows.len() >= 2 && step(&self.rows) > 1 && step(&self.cols) > 1
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MinorReport {
    pub n: usize,
    pub max_size_checked: usize,
    pub singular_minor_found: bool,
    pub witness: Option<MinorWitness>,
    pub min_abs_det_seen: f64,
    pub minors_checked: usize,
    /// True when at least one size was sampled rather than enumerated.
    pub sampled: bool,
}

/// `|det| < 1e-10 · √(k!)` counts as singular for a `k × k` minor.
pub fn singularity_threshold(k: usize) -> f64 {
    let factorial: f64 = (1..=k).map(|i| i as f64).product();
    1e-10 * factorial.sqrt()
}

fn dft_minor_abs_det(n: usize, rows: &[usize], cols: &[usize]) -> f64 {
    let k = rows.len();
    if k == 1 {
        return dft_entry(n, rows[0], cols[0]).norm();
    }
    CMatrix::from_fn(k, k, |i, j| dft_entry(n, rows[i], cols[j]))
        .determinant()
        .norm()
}

#[derive(Debug, Clone)]
struct MinorScan {
    min_abs_det: f64,
    first_singular: Option<(usize, MinorWitness)>,
    checked: usize,
}

impl MinorScan {
    fn empty() -> Self {
        Self {
            min_abs_det: f64::INFINITY,
            first_singular: None,
            checked: 0,
        }
    }

    fn merge(self, other: Self) -> Self {
        let first_singular = match (self.first_singular, other.first_singular) {
            (Some(a), Some(b)) => Some(if b.0 < a.0 { b } else { a }),
            (a, None) => a,
            (None, b) => b,
        };
        Self {
            min_abs_det: self.min_abs_det.min(other.min_abs_det),
            first_singular,
            checked: self.checked + other.checked,
        }
    }
}

/// Looks for singular square minors of the `n`-point DFT matrix
/// (entries `exp(-2πi·jk/n)`) of every size up to `max_size`.
///
/// For prime `n` every such minor is nonsingular; for composite `n` comb
/// structure produces singular ones. Sizes with more than
/// `MINOR_ENUMERATION_LIMIT / max_size` minors are sampled with a fixed seed.
pub fn tao_minor_check(n: usize, max_size: usize) -> Result<MinorReport> {
    if n == 0 || max_size == 0 || max_size > n {
        return Err(Error::InvalidInput(format!(
            "minor sizes must satisfy 1 ≤ max_size ≤ n, got n={n}, max_size={max_size}"
        )));
    }
    let total: usize = (1..=max_size)
        .map(|k| binomial(n, k).saturating_mul(binomial(n, k)))
        .fold(0usize, |a, b| a.saturating_add(b));
    let per_size = if total <= MINOR_ENUMERATION_LIMIT {
        usize::MAX
    } else {
        MINOR_ENUMERATION_LIMIT / max_size
    };

    let mut scan = MinorScan::empty();
    let mut sampled = false;
    let mut base = 0usize;
    for k in 1..=max_size {
        let count = binomial(n, k).saturating_mul(binomial(n, k));
        let size_scan = if count <= per_size {
            let row_sets: Vec<Vec<usize>> = (0..n).combinations(k).collect();
            let cols_per_row = binomial(n, k);
            row_sets
                .into_par_iter()
                .enumerate()
                .map(|(ri, rows)| {
                    let mut local = MinorScan::empty();
                    for (ci, cols) in (0..n).combinations(k).enumerate() {
                        let det = dft_minor_abs_det(n, &rows, &cols);
                        local.checked += 1;
                        local.min_abs_det = local.min_abs_det.min(det);
                        if det < singularity_threshold(k) && local.first_singular.is_none() {
                            local.first_singular = Some((
                                base + ri * cols_per_row + ci,
                                MinorWitness {
                                    rows: rows.clone(),
                                    cols,
                                    abs_det: det,
                                },
                            ));
                        }
                    }
                    local
                })
                .reduce(MinorScan::empty, MinorScan::merge)
        } else {
            sampled = true;
            let mut rng = ChaCha8Rng::seed_from_u64(((n as u64) << 32) | k as u64);
            let draws: Vec<(Vec<usize>, Vec<usize>)> = (0..per_size)
                .map(|_| {
                    let mut rows = index::sample(&mut rng, n, k).into_vec();
                    let mut cols = index::sample(&mut rng, n, k).into_vec();
                    rows.sort_unstable();
                    cols.sort_unstable();
                    (rows, cols)
                })
                .collect();
            draws
                .into_par_iter()
                .enumerate()
                .map(|(i, (rows, cols))| {
                    let det = dft_minor_abs_det(n, &rows, &cols);
                    MinorScan {
                        min_abs_det: det,
                        first_singular: (det < singularity_threshold(k))
                            .then(|| (base + i, MinorWitness { rows, cols, abs_det: det })),
                        checked: 1,
                    }
                })
                .reduce(MinorScan::empty, MinorScan::merge)
        };
        base = base.saturating_add(count.min(per_size));
        scan = scan.merge(size_scan);
    }

    let witness = scan.first_singular.map(|(_, w)| w);
    Ok(MinorReport {
        n,
        max_size_checked: max_size,
        singular_minor_found: witness.is_some(),
        witness,
        min_abs_det_seen: scan.min_abs_det,
        minors_checked: scan.checked,
        sampled,
    })
}

pub fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|i| i * i <= n).all(|i| !n.is_multiple_of(i))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub n: usize,
    pub prime: bool,
    pub p: PExponent,
    pub discup_bound: f64,
    pub min_product_found: usize,
    /// `min_product_found / discup_bound`
    pub slack: f64,
}

/// For identity-versus-DFT pairs, compares the disc bound `nᵖ` with the
/// smallest support product the strategy finds.
pub fn tightness_sweep(
    n_list: &[usize],
    p_grid: &[f64],
    strategy: SearchStrategy,
    seed: u64,
) -> Result<Vec<SweepRow>> {
    let grid = p_grid
        .iter()
        .map(|&p| PExponent::sub_unit(p))
        .collect::<Result<Vec<_>>>()?;
    let mut rows = Vec::with_capacity(n_list.len() * grid.len());
    for &n in n_list {
        if n < 2 {
            return Err(Error::InvalidInput(format!("sweep dimensions must be at least 2, got {n}")));
        }
        let (id, dft) = (identity_pair(n)?, dft_pair(n)?);
        let outcome = min_uncertainty_product(
            &id,
            &dft,
            strategy,
            strategy.default_budget(),
            seed,
            SupportPolicy::default(),
        )?;
        let coherence = crate::frames::cross_coherence(&id, &dft)?;
        for &p in &grid {
            let bound = discup_bound(&coherence, p.value());
            rows.push(SweepRow {
                n,
                prime: is_prime(n),
                p,
                discup_bound: bound,
                min_product_found: outcome.min_product,
                slack: outcome.min_product as f64 / bound,
            });
        }
    }
    Ok(rows)
}

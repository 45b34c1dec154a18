//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use uncert_frames::cli::matrix_file::write_pair;
use uncert_frames::quasinorm::{continuous_garling_counterexample, garling_check};
use uncert_frames::search::{min_uncertainty_product, tao_minor_check, SearchStrategy};
use uncert_frames::uncertainty::{verify_rt_chain, UncertaintySetup};
use uncert_frames::{
    check_disc_norm_axioms, compare_bounds, dft_pair, dirac_comb, identity_pair,
    random_biorthogonal_pair, verify_discup, verify_uup, CVector, CoeffSeq, Complex64, PExponent,
    SupportPolicy,
};

struct Outcome {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome { ok: true, detail: detail.into() }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome { ok: false, detail: detail.into() }
}

fn gaussian(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

fn p(v: f64) -> PExponent {
    PExponent::new(v).unwrap()
}

fn within_time(outcome: Outcome, elapsed: Duration, limit: Duration) -> Outcome {
    if outcome.ok && elapsed > limit {
        fail(format!("{}; took {elapsed:.2?}, limit {limit:?}", outcome.detail))
    } else {
        outcome
    }
}

fn garling_suite() -> Outcome {
    const SEQUENCES: usize = 100_000;
    let exps = [0.1, 0.3, 0.5, 0.7, 0.9].map(p);
    let results: Vec<(usize, usize, usize)> = (0..SEQUENCES as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(i);
            let len = rng.random_range(1..=64);
            // One sequence in eight has a single nonzero entry.
            let entries: Vec<Complex64> = if rng.random_range(0..8) == 0 {
                let at = rng.random_range(0..len);
                (0..len)
                    .map(|k| if k == at { gaussian(&mut rng) } else { Complex64::new(0.0, 0.0) })
                    .collect()
            } else {
                (0..len).map(|_| gaussian(&mut rng)).collect()
            };
            let nonzeros = entries.iter().filter(|z| z.norm() != 0.0).count();
            let seq = CoeffSeq::new(entries).unwrap();
            let check = garling_check(&seq, exps[i as usize % exps.len()]).unwrap();
            let violated = usize::from(!check.holds);
            let misdetected = usize::from(check.equality != (nonzeros == 1));
            (violated, misdetected, usize::from(nonzeros == 1))
        })
        .collect();
    let violations: usize = results.iter().map(|r| r.0).sum();
    let misdetected: usize = results.iter().map(|r| r.1).sum();
    let singles: usize = results.iter().map(|r| r.2).sum();
    let detail = format!(
        "{SEQUENCES} sequences ({singles} single-nonzero): {violations} violations, {misdetected} equality misdetections"
    );
    if violations == 0 && misdetected == 0 {
        pass(detail)
    } else {
        fail(detail)
    }
}

fn discup_suite() -> Outcome {
    const PAIR_PAIRS: u64 = 10_000;
    let exps = [0.25, 0.5, 0.75].map(p);
    let policy = SupportPolicy::default();
    let results: Vec<Result<usize, String>> = (0..PAIR_PAIRS)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(1_000_000 + i);
            let d = rng.random_range(1..=16);
            let m_f = d + rng.random_range(0..=4);
            let m_g = d + rng.random_range(0..=4);
            let f = random_biorthogonal_pair(d, m_f, rng.random(), 1e6).map_err(|e| e.to_string())?;
            let g = random_biorthogonal_pair(d, m_g, rng.random(), 1e6).map_err(|e| e.to_string())?;
            // Generic vectors have full support; synthesis vectors are sparse
            // in one of the two coefficient sequences.
            let x: CVector = match rng.random_range(0..3) {
                0 => CVector::from_fn(d, |_, _| gaussian(&mut rng)),
                1 => f.synthesis().column(rng.random_range(0..m_f)).into_owned(),
                _ => g.synthesis().column(rng.random_range(0..m_g)).into_owned(),
            };
            if x.iter().all(|z| z.norm() == 0.0) {
                return Ok(0);
            }
            let setup = UncertaintySetup::new(&f, &g).map_err(|e| e.to_string())?;
            let mut violations = 0;
            for &e in &exps {
                for report in [
                    setup.discup(&x, e, policy),
                    setup.fi(&x, e, policy),
                    setup.si(&x, e, policy),
                ] {
                    let report = report.map_err(|e| e.to_string())?;
                    violations += usize::from(!report.holds);
                }
            }
            Ok(violations)
        })
        .collect();
    let mut violations = 0;
    for r in results {
        match r {
            Ok(v) => violations += v,
            Err(e) => return fail(format!("setup error: {e}")),
        }
    }
    let detail = format!("{PAIR_PAIRS} pair-pairs x 3 exponents x 3 checks: {violations} violations");
    if violations == 0 {
        pass(detail)
    } else {
        fail(detail)
    }
}

fn saturation() -> Outcome {
    let (id, dft) = (identity_pair(4).unwrap(), dft_pair(4).unwrap());
    let x = dirac_comb(4, 2, 0).unwrap();
    let policy = SupportPolicy::default();
    let rt = verify_rt_chain(&id, &dft, &x, policy).unwrap();
    let uup = verify_uup(&id, &dft, &x, p(1.0), policy).unwrap();
    let disc = verify_discup(&id, &dft, &x, p(0.5), policy).unwrap();
    let close = |a: f64, b: f64| (a - b).abs() <= 1e-9;
    let chain = [rt.am, rt.sq_mean, rt.product, rt.bound];
    let ok = rt.all_hold
        && chain.iter().all(|&v| close(v, 4.0))
        && uup.holds
        && close(uup.lhs, 4.0)
        && close(uup.bound, 4.0)
        && disc.holds
        && close(disc.lhs, 4.0)
        && close(disc.bound, 2.0)
        && close(disc.slack_ratio, 2.0);
    let detail = format!(
        "RT {:.12} >= {:.12} >= {:.12} >= {:.12}; UUP {} >= {:.12}; DISCUP {} >= {:.12}, slack {:.12}",
        rt.am, rt.sq_mean, rt.product, rt.bound, uup.lhs, uup.bound, disc.lhs, disc.bound, disc.slack_ratio
    );
    if ok {
        pass(detail)
    } else {
        fail(detail)
    }
}

fn bound_ordering() -> Outcome {
    let grid: Vec<f64> = (1..=99).map(|k| k as f64 / 100.0).collect();
    let mut notes = Vec::new();
    for n in [4usize, 9] {
        let table = compare_bounds(&identity_pair(n).unwrap(), &dft_pair(n).unwrap(), &grid).unwrap();
        let nf = n as f64;
        let matches_power = table
            .rows
            .iter()
            .all(|r| (r.discup_bound - nf.powf(r.p.value())).abs() <= 1e-9 * nf);
        let increasing = table.rows.windows(2).all(|w| w[0].discup_bound < w[1].discup_bound);
        let below = table.rows.iter().all(|r| r.discup_bound < r.uup_bound);
        let uup_is_n = table.rows.iter().all(|r| (r.uup_bound - nf).abs() <= 1e-9);
        let limit = compare_bounds(&identity_pair(n).unwrap(), &dft_pair(n).unwrap(), &[1.0 - 1e-12])
            .unwrap()
            .rows[0];
        let gap = (limit.uup_bound - limit.discup_bound).abs();
        if !(matches_power && increasing && below && uup_is_n && gap <= 1e-9 && table.ordering_holds()) {
            return fail(format!(
                "n={n}: power={matches_power} increasing={increasing} below={below} uup=n:{uup_is_n} limit gap {gap:e}"
            ));
        }
        notes.push(format!("n={n}: n^p increasing and < {n} on 99 exponents, limit gap {gap:.1e}"));
    }
    pass(notes.join("; "))
}

fn tao_experiment() -> Outcome {
    let five = tao_minor_check(5, 4).unwrap();
    let six = tao_minor_check(6, 3).unwrap();
    let witness_ok = six
        .witness
        .as_ref()
        .is_some_and(|w| w.is_comb_structured(6));
    let policy = SupportPolicy::default();
    let mut mins = Vec::new();
    for n in [4usize, 5] {
        let outcome = min_uncertainty_product(
            &identity_pair(n).unwrap(),
            &dft_pair(n).unwrap(),
            SearchStrategy::ExhaustiveSupports { max_support: n },
            usize::MAX,
            0,
            policy,
        )
        .unwrap();
        mins.push(outcome.min_product);
    }
    let detail = format!(
        "(5,4): singular={} over {} minors; (6,3): singular={} witness={:?}; min products n=4: {}, n=5: {}",
        five.singular_minor_found,
        five.minors_checked,
        six.singular_minor_found,
        six.witness.as_ref().map(|w| (&w.rows, &w.cols)),
        mins[0],
        mins[1]
    );
    if !five.singular_minor_found && six.singular_minor_found && witness_ok && mins == [4, 5] {
        pass(detail)
    } else {
        fail(detail)
    }
}

fn counterexample() -> Outcome {
    let w = continuous_garling_counterexample(p(0.5)).unwrap();
    let detail = format!("lhs {:.17} > rhs {:.17}", w.lhs, w.rhs);
    if w.is_witness() && (w.lhs - 0.5f64.sqrt()).abs() <= 1e-15 && (w.rhs - 0.5).abs() <= 1e-15 {
        pass(detail)
    } else {
        fail(detail)
    }
}

fn disc_axioms() -> Outcome {
    const SAMPLES: usize = 10_000;
    let mut total_failures = 0;
    let mut runs = 0;
    for k in 1..=9 {
        for d in [1usize, 3, 8] {
            let report = check_disc_norm_axioms(p(k as f64 / 10.0), d, SAMPLES, 31 * k + d as u64).unwrap();
            total_failures += report.failures();
            runs += 1;
        }
    }
    let detail = format!("{runs} runs of {SAMPLES} triples (p = 0.1..0.9, d in {{1,3,8}}): {total_failures} failures");
    if total_failures == 0 {
        pass(detail)
    } else {
        fail(detail)
    }
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let pair_path = dir.path().join("pair.csv");
    std::fs::write(&pair_path, write_pair(&random_biorthogonal_pair(4, 6, 5, 1e6).unwrap())).unwrap();
    let pair_file = format!("file:{}", pair_path.display());
    let verify = |theorem: &str, p: &str, x: &str| -> Vec<String> {
        let mut args = vec!["verify", "--theorem", theorem, "--pair-f", "identity:4", "--pair-g", "dft:4"];
        args.extend(["--x", x]);
        if !p.is_empty() {
            args.extend(["--p", p]);
        }
        args.into_iter().map(String::from).collect()
    };
    let owned = |args: &[&str]| args.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    let commands: Vec<Vec<String>> = vec![
        verify("discup", "0.25,0.5,0.75", "comb:4:2"),
        verify("fi", "0.5", "random:4:9"),
        verify("si", "0.5", "spike:4:1"),
        verify("uup", "1,inf", "ones:4"),
        verify("mt", "2", "comb:4:2:1"),
        owned(&["verify", "--theorem", "mt", "--pair-f", "identity:3", "--pair-g", "identity:3", "--x", "ones:3", "--p", "1,1.5,inf"]),
        verify("rt", "", "values:1;0;-1;0"),
        owned(&["verify", "--theorem", "bounds", "--pair-f", "identity:9", "--pair-g", "dft:9"]),
        owned(&["verify", "--theorem", "discup", "--pair-f", &pair_file, "--pair-g", "random:4:3", "--x", "random:4:2", "--p", "0.5"]),
        owned(&["garling", "--n", "16", "--p", "0.1,0.5,0.9", "--trials", "20", "--seed", "7"]),
        owned(&["garling", "--values", "1;0;0", "--p", "0.3"]),
        owned(&["counterexample", "--p", "0.25,0.5,0.75"]),
        owned(&["construct", "--pair", "random:5:3:7"]),
        owned(&["construct", "--comb", "12:3:1"]),
        owned(&["construct", "--disc-axioms", "--p", "0.2,0.8", "--d", "6", "--samples", "500", "--seed", "3"]),
        owned(&["search", "--pair-f", "identity:6", "--pair-g", "dft:6", "--strategy", "exhaustive"]),
        owned(&["search", "--pair-f", "random:4:1", "--pair-g", "random:4:2", "--strategy", "random", "--budget", "300", "--seed", "11"]),
        owned(&["search", "--pair-f", "identity:8", "--pair-g", "dft:8", "--strategy", "combs"]),
        owned(&["sweep", "--n", "4,5,6,7", "--p", "0.25,0.75"]),
        owned(&["minors", "--n", "6", "--max-size", "3"]),
        owned(&["minors", "--n", "24", "--max-size", "12"]),
    ];
    let exe = env!("CARGO_BIN_EXE_uncert-frames");
    for args in &commands {
        // The second run pins one worker thread so scheduling cannot leak into output.
        let first = Command::new(exe).args(args).env_remove("UNCERT_FRAMES_THREADS").output().unwrap();
        let second = Command::new(exe).args(args).env("UNCERT_FRAMES_THREADS", "1").output().unwrap();
        if first.status.code() != Some(0) {
            return fail(format!(
                "{} exited {:?}: {}",
                args.join(" "),
                first.status.code(),
                String::from_utf8_lossy(&first.stderr)
            ));
        }
        if first.stdout != second.stdout || first.status.code() != second.status.code() {
            return fail(format!("{} produced different output on rerun", args.join(" ")));
        }
    }
    pass(format!("{} commands, byte-identical JSON on rerun", commands.len()))
}

fn main() {
    type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);
    let criteria: [Criterion; 8] = [
        ("1 garling suite", garling_suite, Some(Duration::from_secs(5))),
        ("2 discup/fi/si suite", discup_suite, Some(Duration::from_secs(60))),
        ("3 saturation", saturation, None),
        ("4 bound ordering", bound_ordering, None),
        ("5 tao experiment", tao_experiment, Some(Duration::from_secs(30))),
        ("6 continuous counterexample", counterexample, None),
        ("7 disc-norm axioms", disc_axioms, None),
        ("8 cli determinism", determinism, None),
    ];
    let mut failures = 0;
    for (name, check, limit) in criteria {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let outcome = match limit {
            Some(limit) => within_time(outcome, elapsed, limit),
            None => outcome,
        };
        let tag = if outcome.ok { "PASS" } else { "FAIL" };
        println!("{tag} [{name}] {} ({elapsed:.2?})", outcome.detail);
        failures += usize::from(!outcome.ok);
    }
    if failures > 0 {
        println!("{failures} criterion/criteria failed");
        std::process::exit(1);
    }
}

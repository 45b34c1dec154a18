//! Garling's inequality on a few sequences, and the constant function that
//! breaks its continuous analogue.

use uncert_frames::{continuous_garling_counterexample, garling_check, CoeffSeq, PExponent};

fn main() -> uncert_frames::Result<()> {
    let sequences = [vec![3.0], vec![1.0, 1.0], vec![1.0, -2.0, 0.5, 0.0], vec![1e-8, 1.0]];
    for p in [0.25, 0.5, 0.9] {
        let p = PExponent::new(p)?;
        for entries in &sequences {
            let check = garling_check(&CoeffSeq::from_real(entries)?, p)?;
            println!(
                "p={p:<4} a={entries:?}: (sum|a|)^p = {:.6} <= sum|a|^p = {:.6}  equality={}",
                check.lhs, check.rhs, check.equality
            );
        }
    }

    // On [0,1] with Lebesgue measure, f = 1 on a set of measure 1/2.
    let w = continuous_garling_counterexample(PExponent::new(0.5)?)?;
    println!(
        "\ncontinuous: (int f)^p = {:.8} > int f^p = {:.8}  (witness: {})",
        w.lhs,
        w.rhs,
        w.is_witness()
    );
    Ok(())
}

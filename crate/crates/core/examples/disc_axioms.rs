//! Samples the axioms of the disc quasi-norm sum |x_i|^p on K^d.

use uncert_frames::{check_disc_norm_axioms, PExponent};

fn main() -> uncert_frames::Result<()> {
    for k in 1..=9 {
        let p = PExponent::new(k as f64 / 10.0)?;
        let r = check_disc_norm_axioms(p, 8, 20_000, k)?;
        println!(
            "p={p}: definiteness {}/{}  triangle {}/{}  |l|>=1 {}/{}  |l|<=1 {}/{}",
            r.definiteness.passed,
            r.definiteness.checked,
            r.triangle.passed,
            r.triangle.checked,
            r.scale_up.passed,
            r.scale_up.checked,
            r.scale_down.passed,
            r.scale_down.checked
        );
    }
    Ok(())
}

//! Square minors of the DFT matrix: never singular at prime order, singular
//! on comb-shaped index sets otherwise.

use uncert_frames::search::{is_prime, tao_minor_check};

fn main() -> uncert_frames::Result<()> {
    for n in 2..=12 {
        let max_size = (n - 1).min(5);
        let r = tao_minor_check(n, max_size)?;
        let witness = match &r.witness {
            Some(w) => format!(
                "rows {:?} cols {:?} |det| {:.1e} comb-structured: {}",
                w.rows,
                w.cols,
                w.abs_det,
                w.is_comb_structured(n)
            ),
            None => format!("none, smallest |det| {:.3e}", r.min_abs_det_seen),
        };
        println!(
            "n={n:>2} prime={:<5} sizes<= {max_size}: {:>6} minors{} singular: {witness}",
            is_prime(n),
            r.minors_checked,
            if r.sampled { " (sampled)" } else { "" },
        );
    }
    Ok(())
}

//! Smallest support products for identity vs DFT against the disc bound n^p.

use uncert_frames::{tightness_sweep, SearchStrategy};

fn main() -> uncert_frames::Result<()> {
    let rows = tightness_sweep(
        &[2, 3, 4, 5, 6, 7, 8, 9, 10],
        &[0.25, 0.5, 0.75],
        SearchStrategy::ExhaustiveSupports { max_support: 5 },
        0,
    )?;
    println!("  n  prime     p   n^p       min   slack");
    for r in rows {
        println!(
            "{:>3}  {:<5}  {:>5}  {:>7.3}  {:>4}  {:>6.3}",
            r.n, r.prime, r.p, r.discup_bound, r.min_product_found, r.slack
        );
    }
    Ok(())
}

//! How the disc bound 1/(c1 c2)^p compares with the p = 1 bound as p varies.

use uncert_frames::{compare_bounds, dft_pair, identity_pair, random_biorthogonal_pair};

fn main() -> uncert_frames::Result<()> {
    let grid: Vec<f64> = (1..=9).map(|k| k as f64 / 10.0).collect();
    for n in [4, 9, 16] {
        let table = compare_bounds(&identity_pair(n)?, &dft_pair(n)?, &grid)?;
        println!("identity vs DFT({n}), ordering holds: {}", table.ordering_holds());
        for row in &table.rows {
            println!("  p={:<4} disc {:>8.4}  uup {:>6.2}  rt {:>6.2}", row.p, row.discup_bound, row.uup_bound, row.rt_bound);
        }
    }

    let table = compare_bounds(&random_biorthogonal_pair(5, 5, 3, 1e6)?, &random_biorthogonal_pair(5, 5, 4, 1e6)?, &grid)?;
    println!(
        "\nrandom pairs: c_f_omega = {:.4}, c_g_tau = {:.4}, product {:.4}",
        table.coherence.c_f_omega,
        table.coherence.c_g_tau,
        table.coherence.product()
    );
    for row in &table.rows {
        println!("  p={:<4} disc {:.6}  uup {:.6}", row.p, row.discup_bound, row.uup_bound);
    }
    Ok(())
}

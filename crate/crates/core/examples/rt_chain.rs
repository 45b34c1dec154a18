//! The mean inequality chain for two Parseval bases, and where it saturates.

use uncert_frames::{dft_pair, dirac_comb, identity_pair, verify_rt_chain, SupportPolicy};

fn main() -> uncert_frames::Result<()> {
    let n = 12;
    let (id, dft) = (identity_pair(n)?, dft_pair(n)?);
    for spacing in [1, 2, 3, 4, 6, 12] {
        let h = dirac_comb(n, spacing, 0)?;
        let r = verify_rt_chain(&id, &dft, &h, SupportPolicy::default())?;
        println!(
            "comb spacing {spacing:>2}: supports {:?}  {:.1} >= {:.1} >= {:.1} >= {:.1}  all hold: {}",
            r.supports, r.am, r.sq_mean, r.product, r.bound, r.all_hold
        );
    }
    Ok(())
}

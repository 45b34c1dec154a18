//! The disc uncertainty inequality and its two one-sided forms, on the
//! identity/DFT pair and on a random biorthogonal pair.

use uncert_frames::uncertainty::UncertaintySetup;
use uncert_frames::{
    dft_pair, dirac_comb, identity_pair, random_biorthogonal_pair, CVector, Complex64, PExponent,
    SupportPolicy,
};

fn main() -> uncert_frames::Result<()> {
    let policy = SupportPolicy::default();
    let (id, dft) = (identity_pair(8)?, dft_pair(8)?);
    let setup = UncertaintySetup::new(&id, &dft)?;
    println!("identity vs DFT(8), coherence {:?}", setup.coherence());
    for spacing in [1, 2, 4, 8] {
        let x = dirac_comb(8, spacing, 0)?;
        let r = setup.discup(&x, PExponent::new(0.5)?, policy)?;
        println!(
            "  comb spacing {spacing}: supports {:?}, product {} >= {:.4} (slack {:.3})",
            r.supports, r.lhs, r.bound, r.slack_ratio
        );
    }

    let f = random_biorthogonal_pair(6, 6, 1, 1e6)?;
    let g = random_biorthogonal_pair(6, 9, 2, 1e6)?;
    let setup = UncertaintySetup::new(&f, &g)?;
    // f is a basis, so its synthesis vectors have a single nonzero f-coefficient.
    let x: CVector = f.synthesis().column(3).into_owned();
    let y = CVector::from_fn(6, |i, _| Complex64::new(i as f64 - 2.5, 1.0));
    println!("\nrandom pairs (m=6 and m=9 in dimension 6)");
    for (name, v) in [("tau_3", &x), ("generic", &y)] {
        for p in [0.25, 0.5, 0.75] {
            let p = PExponent::new(p)?;
            for r in [setup.discup(v, p, policy)?, setup.fi(v, p, policy)?, setup.si(v, p, policy)?] {
                println!(
                    "  {name:<7} p={p:<4} {:?}: {:.6} >= {:.6}  holds={}",
                    r.theorem_id, r.lhs, r.bound, r.holds
                );
            }
        }
    }
    Ok(())
}

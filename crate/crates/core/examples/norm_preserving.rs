//! Frames that preserve an l^p norm, and the support inequalities they obey.

use uncert_frames::frames::ReferenceNorm;
use uncert_frames::{classify, dft_pair, identity_pair, verify_mt, CVector, Complex64, PExponent, SupportPolicy};

fn main() -> uncert_frames::Result<()> {
    let exps = [PExponent::new(1.0)?, PExponent::new(2.0)?, PExponent::infinity()];
    let (id, dft) = (identity_pair(6)?, dft_pair(6)?);
    for (name, pair) in [("identity", &id), ("dft", &dft)] {
        let c = classify(pair, &exps, ReferenceNorm::Matching, 32, 0)?;
        let exact: Vec<String> = c.p_norm_exact.iter().map(|e| format!("p={}: {}", e.p, e.exact)).collect();
        println!("{name}: reconstructs {} parseval {} norm-preserving [{}]", c.reconstructs, c.parseval, exact.join(", "));
    }

    let x = CVector::from_fn(6, |i, _| Complex64::new(if i % 3 == 0 { 1.0 } else { 0.0 }, 0.0));
    println!("\np=2, x = comb of spacing 3");
    for r in verify_mt(&id, &dft, &x, exps[1], SupportPolicy::default())? {
        println!("  supports {:?}: {:.4} >= {:.4}  holds {}", r.supports, r.lhs, r.bound, r.holds);
    }
    let spike = CVector::from_fn(6, |i, _| Complex64::new(if i == 0 { 1.0 } else { 0.0 }, 0.0));
    for p in [exps[0], exps[2]] {
        let [a, b] = verify_mt(&id, &id, &spike, p, SupportPolicy::default())?;
        println!("identity/identity p={p}: {} >= {}, {} >= {}", a.lhs, a.bound, b.lhs, b.bound);
    }
    Ok(())
}

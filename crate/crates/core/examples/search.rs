//! Searching for the smallest support product with each strategy.

use uncert_frames::{
    dft_pair, identity_pair, min_uncertainty_product, random_biorthogonal_pair, SearchStrategy,
    SupportPolicy,
};

fn main() -> uncert_frames::Result<()> {
    let policy = SupportPolicy::default();
    let (id, dft) = (identity_pair(6)?, dft_pair(6)?);
    for strategy in [
        SearchStrategy::Combs,
        SearchStrategy::ExhaustiveSupports { max_support: 6 },
        SearchStrategy::RandomRestarts,
    ] {
        let budget = strategy.default_budget().min(5_000);
        let o = min_uncertainty_product(&id, &dft, strategy, budget, 1, policy)?;
        println!(
            "identity/DFT(6) {strategy:?}: min product {} with supports {:?} on {:?}, bound {:.3}, {} candidates",
            o.min_product, o.supports, o.support_set, o.bound, o.candidates_examined
        );
    }

    let (f, g) = (random_biorthogonal_pair(5, 5, 8, 1e6)?, random_biorthogonal_pair(5, 5, 9, 1e6)?);
    let o = min_uncertainty_product(&f, &g, SearchStrategy::ExhaustiveSupports { max_support: 5 }, usize::MAX, 0, policy)?;
    println!(
        "\nrandom pairs: min product {} (supports {:?}), bound 1/(c1 c2) = {:.3}, tight: {}",
        o.min_product, o.supports, o.bound, o.tight
    );
    Ok(())
}

//! Monte Carlo cross-check. Pass the sample count as the first argument
//! (default 1e6).

use dirmix::montecarlo::{simulate, GOLDEN_SEED};
use dirmix::DistributionSpec;

fn main() -> dirmix::Result<()> {
    let samples = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(1_000_000);
    for (s, n) in [("arcsin:1", 2), ("arcsin:1", 3), ("genarcsin:1/4,1", 2)] {
        let d: DistributionSpec = s.parse()?;
        let rep = simulate(&d, n, samples, GOLDEN_SEED)?;
        println!(
            "{d}, n = {n}: target {}  KS {:.3e} (crit {:.3e})  max moment error {:.2e}  pass {}",
            rep.target.as_ref().map(ToString::to_string).unwrap_or_default(),
            rep.ks_statistic.unwrap_or(f64::NAN),
            rep.ks_critical_1pct,
            rep.max_moment_error(),
            rep.pass
        );
    }
    Ok(())
}

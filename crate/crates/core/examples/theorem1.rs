//! Uniform-spacings mixtures of iid arcsin variables follow the power
//! semicircle law with λ = (n - 1)/2.

use dirmix::mixture::{s_moments, theorem1_target, verify_theorem1};
use dirmix::DistributionSpec;

fn main() -> dirmix::Result<()> {
    let x: DistributionSpec = "arcsin:1".parse()?;
    for n in 2..=6 {
        let res = verify_theorem1(n, 12);
        let s = s_moments(&x, n, 4);
        println!(
            "n = {n}: target {}  E S^2 = {}  E S^4 = {}  {:?}",
            theorem1_target(n),
            s.moments[2],
            s.moments[4],
            res.status
        );
    }
    Ok(())
}

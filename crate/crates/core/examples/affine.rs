//! Location-scale equivariance: mapping the summands maps S_n the same way.

use dirmix::exact::ratio;
use dirmix::mixture::{affine_moments, s_moments};
use dirmix::DistributionSpec;

fn main() -> dirmix::Result<()> {
    let x: DistributionSpec = "genarcsin:1/3,1".parse()?;
    let (sigma, xi) = (ratio(-3, 2), ratio(1, 4));
    let y = x.affine_image(&sigma, &xi)?;
    let n = 3;
    let mapped = affine_moments(&s_moments(&x, n, 8), &sigma, &xi)?;
    let direct = s_moments(&y, n, 8);
    println!("X = {x}, σX + ξ = {y}");
    for r in 0..=8 {
        println!("r = {r}: {}  {}", mapped.moments[r], direct.moments[r]);
    }
    println!("equal: {}", mapped == direct);
    Ok(())
}

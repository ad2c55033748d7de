//! Non-uniform Dirichlet weights and mixed summand laws. With (X, 0) and
//! uniform weights the sum is U·X, U uniform on (0, 1).

use dirmix::exact::ratio;
use dirmix::mixture::{s_moment_general, DirichletParams};
use dirmix::DistributionSpec;

fn main() -> dirmix::Result<()> {
    let x: DistributionSpec = "arcsin:1".parse()?;
    let zero = DistributionSpec::point_mass(ratio(0, 1));
    let pair = [x.clone(), zero];
    for r in 0..=6 {
        let m = s_moment_general(&pair, &DirichletParams::uniform(2), r)?;
        println!(
            "E (U X)^{r} = {m}  (E X^{r} / {} = {})",
            r + 1,
            x.moment(r) / ratio(r as i64 + 1, 1)
        );
    }

    let specs: Vec<DistributionSpec> = ["uniform:0,1", "beta:2,3", "point:1/2"]
        .iter()
        .map(|s| s.parse())
        .collect::<Result<_, _>>()?;
    let a = DirichletParams::new(vec![ratio(1, 2), ratio(2, 1), ratio(3, 2)])?;
    for r in 0..=4 {
        println!("mixed E S^{r} = {}", s_moment_general(&specs, &a, r)?);
    }
    Ok(())
}

//! The distribution catalog: exact moments, densities and CDFs.

use dirmix::DistributionSpec;

fn main() -> dirmix::Result<()> {
    let laws = [
        "arcsin:1",
        "genarcsin:1/4,1",
        "psc:1,1",
        "beta:2,5,-1,3",
        "uniform:-1,1",
        "point:1/3",
    ];
    for s in laws {
        let d: DistributionSpec = s.parse()?;
        let (lo, hi) = d.support();
        let m = d.moments(4);
        let listed: Vec<String> = m.moments.iter().map(|q| q.to_string()).collect();
        println!(
            "{:<18} support [{lo}, {hi}]  m_0..m_4 = {}",
            d.to_string(),
            listed.join(", ")
        );
        if let Ok(f) = d.density(0.25) {
            println!("{:<18} f(1/4) = {f:.12}  F(1/4) = {:.12}", "", d.cdf(0.25));
        }
    }

    // every continuous family is a mapped Beta law
    let g: DistributionSpec = "genarcsin:1/3,2".parse()?;
    let (p, q, loc, scale) = g.as_beta4().expect("continuous");
    println!("{g} = {loc} + {scale}·Beta({p}, {q})");
    Ok(())
}

//! Exact arithmetic building blocks: Pochhammer symbols, multinomials and the
//! composition stream that indexes every moment expansion.

use dirmix::exact::{binomial, compositions, multinomial, parse_rational, pochhammer, ratio};

fn main() -> dirmix::Result<()> {
    let half = ratio(1, 2);
    for k in 0..=5 {
        println!("(1/2)_{k} = {}", pochhammer(&half, k));
    }

    let x = parse_rational("0.125")?;
    println!("0.125 parses exactly as {x}");

    println!("compositions of 3 into 3 parts (first coordinate slowest):");
    for c in compositions(3, 3) {
        println!("  {c}  multinomial = {}", multinomial(3, &c)?);
    }
    println!(
        "count for r = 12, n = 6: {} = C(17, 5) = {}",
        compositions(12, 6).count(),
        binomial(17, 5)
    );
    Ok(())
}

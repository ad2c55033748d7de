//! Generalized arcsin(α) summands give Beta(nα, n(1 - α)) on (-1, 1).

use dirmix::exact::ratio;
use dirmix::mixture::{theorem2_target, verify_theorem2};

fn main() -> dirmix::Result<()> {
    for n in 2..=4 {
        for (p, q) in [(1, 6), (1, 4), (1, 3), (1, 2), (3, 4)] {
            let alpha = ratio(p, q);
            let res = verify_theorem2(n, &alpha, 12)?;
            println!(
                "n = {n}, α = {alpha:<4} -> {:<22} {:?}",
                theorem2_target(n, &alpha).to_string(),
                res.status
            );
        }
    }
    Ok(())
}

//! Inverse direction: recover the summand moments from those of S_n, check
//! they form a moment sequence and identify the summand law.

use dirmix::characterize::{default_candidates, identify, recover_x_moments};
use dirmix::exact::ratio;
use dirmix::mixture::theorem2_target;

fn main() -> dirmix::Result<()> {
    let (n, alpha) = (3, ratio(1, 3));
    let s_law = theorem2_target(n, &alpha);
    let recovered = recover_x_moments(&s_law.moments(12), n)?;
    println!("S_{n} ~ {s_law}; recovered E X^r:");
    for (r, m) in recovered.moments.iter().enumerate().take(6) {
        println!("  r = {r}: {m}");
    }
    let report = identify(&recovered, &default_candidates(), 12);
    println!(
        "Hausdorff valid through order {}: {}",
        report.validity.order, report.validity.valid
    );
    for m in &report.matches {
        println!("match: {m}");
    }

    let mut perturbed = recovered.clone();
    perturbed.moments[2] += ratio(1, 1000);
    let report = identify(&perturbed, &default_candidates(), 12);
    println!("after perturbing m_2 by 1/1000: {} matches", report.matches.len());
    Ok(())
}

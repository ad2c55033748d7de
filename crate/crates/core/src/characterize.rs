//! Inverse direction: recover the common summand moments from the moments of
//! `S_n`, check that a sequence is a genuine moment sequence on `[0, 1]`, and
//! identify it against a list of catalog laws.
//!
//! With `R ~ D_n(1, …, 1)` the forward expansion collapses to
//!
//! ```text
//! C(r + n - 1, r) · E[S^r] = Σ_{i_1+…+i_n = r} Π E[X^{i_j}]
//!                          = n · E[X^r] + (terms with every part < r)
//! ```
//!
//! so `E[X^r]` follows from `E[S^r]` and the already recovered lower moments.

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dist::{DistributionSpec, MomentSequence};
use crate::error::{Error, Result};
use crate::exact::{arrangements, binomial, int, partitions, ratio, rpow, Rational};

/// Recover `E[X^0..=R]` from `E[S_n^0..=R]` for iid summands.
///
/// The returned sequence keeps the support and length of `s_seq`. Requires
/// `n >= 2`.
pub fn recover_x_moments(s_seq: &MomentSequence, n: usize) -> Result<MomentSequence> {
    if n < 2 {
        return Err(Error::contract(format!("recovery needs n >= 2, got {n}")));
    }
    if s_seq.moments.first() != Some(&Rational::one()) {
        return Err(Error::contract("the S_n sequence must start with m_0 = 1"));
    }
    let nn = int(n as i64);
    let mut x: Vec<Rational> = Vec::with_capacity(s_seq.moments.len());
    x.push(Rational::one());
    for r in 1..s_seq.moments.len() as u32 {
        let scaled = Rational::from_integer(binomial(n as u32 + r - 1, r)) * &s_seq.moments[r as usize];
        let lower: Rational = partitions(r, n)
            .into_iter()
            .filter(|p| p.len() >= 2)
            .map(|p| {
                let prod = p.iter().fold(Rational::one(), |acc, &i| acc * &x[i as usize]);
                Rational::from_integer(arrangements(n, &p)) * prod
            })
            .fold(Rational::zero(), |acc, t| acc + t);
        x.push((scaled - lower) / &nn);
    }
    Ok(MomentSequence {
        support: s_seq.support.clone(),
        moments: x,
    })
}

/// A violated difference `(-1)^k Δ^k m_j < 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HausdorffWitness {
    pub j: u32,
    pub k: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HausdorffVerdict {
    pub valid: bool,
    /// Highest `j + k` examined.
    pub order: u32,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<HausdorffWitness>,
}

/// Complete-monotonicity test for a sequence supported on `[0, 1]`.
///
/// Passes iff `(-1)^k Δ^k m_j >= 0` for every `j + k <= order` (capped at the
/// sequence length). Differences are scanned by increasing `k`, then `j`, and
/// the first violation is returned as the witness.
pub fn hausdorff_valid(seq: &MomentSequence, order: u32) -> Result<HausdorffVerdict> {
    if seq.support != (Rational::zero(), Rational::one()) {
        return Err(Error::contract(format!(
            "Hausdorff check needs support [0, 1], got [{}, {}]",
            seq.support.0, seq.support.1
        )));
    }
    let order = order.min(seq.max_order());
    // row k holds (-1)^k Δ^k m_j for j = 0..=order-k
    let mut row: Vec<Rational> = seq.moments[..=order as usize].to_vec();
    for k in 0..=order {
        if let Some(j) = row.iter().position(|d| *d < Rational::zero()) {
            return Ok(HausdorffVerdict {
                valid: false,
                order,
                witness: Some(HausdorffWitness { j: j as u32, k }),
            });
        }
        row = row.windows(2).map(|w| &w[0] - &w[1]).collect();
    }
    Ok(HausdorffVerdict {
        valid: true,
        order,
        witness: None,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentificationReport {
    pub recovered: MomentSequence,
    pub max_order: u32,
    pub candidates: Vec<DistributionSpec>,
    pub matches: Vec<DistributionSpec>,
    pub validity: HausdorffVerdict,
}

/// Location-scale normal form: moments mapped onto `[0, 1]`, or raw moments
/// for a degenerate support.
fn normal_form(seq: &MomentSequence) -> MomentSequence {
    seq.to_unit_interval().unwrap_or_else(|| seq.clone())
}

/// Compare `seq` with each candidate up to `max_order`, modulo location and
/// scale: both sides are mapped from their own support onto `[0, 1]` and must
/// agree exactly at every order. Matches are sorted canonically.
pub fn identify(seq: &MomentSequence, candidates: &[DistributionSpec], max_order: u32) -> IdentificationReport {
    let max_order = max_order.min(seq.max_order());
    let recovered = seq.truncated(max_order);
    let target = normal_form(&recovered);

    let mut matches: Vec<DistributionSpec> = candidates
        .par_iter()
        .filter(|c| normal_form(&c.moments(max_order)) == target)
        .cloned()
        .collect();
    matches.sort();
    matches.dedup();

    let validity = match recovered.to_unit_interval() {
        Some(unit) => hausdorff_valid(&unit, max_order).expect("unit support"),
        None => degenerate_validity(&recovered),
    };
    IdentificationReport {
        recovered,
        max_order,
        candidates: candidates.to_vec(),
        matches,
        validity,
    }
}

// A single-point support admits only the point mass: m_r = c^r.
fn degenerate_validity(seq: &MomentSequence) -> HausdorffVerdict {
    let c = &seq.support.0;
    let bad = (0..=seq.max_order()).find(|&r| seq.moments[r as usize] != rpow(c, r as i32));
    HausdorffVerdict {
        valid: bad.is_none(),
        order: seq.max_order(),
        witness: bad.map(|r| HausdorffWitness { j: r, k: 0 }),
    }
}

/// Arcsin, uniform, generalized arcsin over `α = k/12` and power semicircle
/// over `λ = k/2`, all on `(-1, 1)`.
pub fn default_candidates() -> Vec<DistributionSpec> {
    let one = Rational::one();
    let mut out = vec![
        DistributionSpec::Arcsin { a: one.clone() },
        DistributionSpec::Uniform {
            lo: -one.clone(),
            hi: one.clone(),
        },
    ];
    out.extend((1..=11).map(|k| DistributionSpec::GenArcsin {
        alpha: ratio(k, 12),
        a: one.clone(),
    }));
    out.extend((0..=6).map(|k| DistributionSpec::PowerSemicircle {
        lambda: ratio(k, 2),
        a: one.clone(),
    }));
    out
}

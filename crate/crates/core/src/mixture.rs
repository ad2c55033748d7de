//! Exact moments of `S_n = Σ R_i X_i` with `R ~ Dirichlet(a)` independent of
//! the `X_i`, and exact verifiers for the gamma-ratio identities and the two
//! characterization theorems.
//!
//! The expansion used throughout is
//!
//! ```text
//! E[S^r] = Σ_{i_1+…+i_n = r} r!/(i_1!…i_n!) · E[Π R_j^{i_j}] · Π E[X_j^{i_j}]
//! E[Π R_j^{i_j}] = Π (a_j)_{i_j} / (a_1+…+a_n)_r
//! ```

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::dist::{DistributionSpec, MomentSequence};
use crate::error::{Error, Result};
use crate::exact::{
    arrangements, compositions, format_rational, int, multinomial_of, partitions, pochhammer, ratio, Composition,
    Rational,
};

/// Default highest order checked by the verifiers.
pub const DEFAULT_MAX_ORDER: u32 = 12;

/// Dirichlet parameter vector `(a_1, …, a_n)`, all strictly positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirichletParams(Vec<Rational>);

impl DirichletParams {
    pub fn new(a: Vec<Rational>) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::InvalidParameter("Dirichlet parameters need n >= 1".into()));
        }
        if let Some(bad) = a.iter().find(|x| **x <= Rational::zero()) {
            return Err(Error::InvalidParameter(format!(
                "Dirichlet parameter {bad} must be > 0"
            )));
        }
        Ok(Self(a))
    }

    /// `D_n(1, …, 1)`, the law of uniform spacings.
    pub fn uniform(n: usize) -> Self {
        assert!(n >= 1, "Dirichlet parameters need n >= 1");
        Self(vec![Rational::one(); n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.0
    }

    pub fn total(&self) -> Rational {
        self.0.iter().fold(Rational::zero(), |acc, a| acc + a)
    }
}

/// `E[R_1^{i_1} ⋯ R_n^{i_n}]` under `Dirichlet(params)`.
pub fn dirichlet_moment(params: &DirichletParams, c: &Composition) -> Result<Rational> {
    if c.len() != params.len() {
        return Err(Error::contract(format!(
            "composition has {} parts but there are {} Dirichlet parameters",
            c.len(),
            params.len()
        )));
    }
    Ok(dirichlet_moment_parts(params.as_slice(), &params.total(), c.parts()))
}

fn dirichlet_moment_parts(a: &[Rational], total: &Rational, parts: &[u32]) -> Rational {
    let r: u32 = parts.iter().sum();
    let num = a
        .iter()
        .zip(parts)
        .fold(Rational::one(), |acc, (aj, &ij)| acc * pochhammer(aj, ij));
    num / pochhammer(total, r)
}

/// `E[S_n^r]` for iid `X_i ~ spec` and `R ~ D_n(1, …, 1)`.
///
/// Sums over partitions of `r` into at most `n` parts, each weighted by its
/// number of distinct arrangements; every arrangement contributes the same
/// term by exchangeability. Panics if `n == 0`.
pub fn s_moment(spec: &DistributionSpec, n: usize, r: u32) -> Rational {
    let xm: Vec<Rational> = (0..=r).map(|j| spec.moment(j)).collect();
    s_moment_from_x(&xm, n, r)
}

/// Same value as [`s_moment`], by the full sum over compositions.
pub fn s_moment_by_compositions(spec: &DistributionSpec, n: usize, r: u32) -> Rational {
    assert!(n >= 1, "s_moment needs n >= 1");
    let xm: Vec<Rational> = (0..=r).map(|j| spec.moment(j)).collect();
    let params = DirichletParams::uniform(n);
    let total = params.total();
    compositions(r, n)
        .map(|c| {
            let coeff = Rational::from_integer(multinomial_of(c.parts()));
            let xs = c.parts().iter().fold(Rational::one(), |acc, &i| acc * &xm[i as usize]);
            coeff * dirichlet_moment_parts(params.as_slice(), &total, c.parts()) * xs
        })
        .fold(Rational::zero(), |acc, t| acc + t)
}

fn s_moment_from_x(xm: &[Rational], n: usize, r: u32) -> Rational {
    assert!(n >= 1, "s_moment needs n >= 1");
    let params = DirichletParams::uniform(n);
    let total = params.total();
    partitions(r, n)
        .into_iter()
        .map(|p| {
            let mut padded = p.clone();
            padded.resize(n, 0);
            let weight = Rational::from_integer(arrangements(n, &p) * multinomial_of(&p));
            let xs = p.iter().fold(Rational::one(), |acc, &i| acc * &xm[i as usize]);
            weight * dirichlet_moment_parts(params.as_slice(), &total, &padded) * xs
        })
        .fold(Rational::zero(), |acc, t| acc + t)
}

/// `E[S_n^0..=max_order]`; the support of `S_n` is the support of `X`.
pub fn s_moments(spec: &DistributionSpec, n: usize, max_order: u32) -> MomentSequence {
    let xm: Vec<Rational> = (0..=max_order).map(|j| spec.moment(j)).collect();
    MomentSequence {
        support: spec.support(),
        moments: (0..=max_order).map(|r| s_moment_from_x(&xm, n, r)).collect(),
    }
}

/// `E[⟨R, X⟩^r]` for independent, not necessarily identical `X_i`.
pub fn s_moment_general(specs: &[DistributionSpec], params: &DirichletParams, r: u32) -> Result<Rational> {
    if specs.len() != params.len() {
        return Err(Error::contract(format!(
            "{} distributions but {} Dirichlet parameters",
            specs.len(),
            params.len()
        )));
    }
    let table: Vec<Vec<Rational>> = specs.iter().map(|s| (0..=r).map(|j| s.moment(j)).collect()).collect();
    let total = params.total();
    let sum = compositions(r, specs.len())
        .map(|c| {
            let coeff = Rational::from_integer(multinomial_of(c.parts()));
            let xs = c
                .parts()
                .iter()
                .zip(&table)
                .fold(Rational::one(), |acc, (&i, m)| acc * &m[i as usize]);
            coeff * dirichlet_moment_parts(params.as_slice(), &total, c.parts()) * xs
        })
        .fold(Rational::zero(), |acc, t| acc + t);
    Ok(sum)
}

/// Moments of `σY + ξ` from those of `Y`.
pub fn affine_moments(seq: &MomentSequence, sigma: &Rational, xi: &Rational) -> Result<MomentSequence> {
    seq.affine(sigma, xi)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub order: u32,
    #[serde(with = "crate::serde_rational")]
    pub lhs: Rational,
    #[serde(with = "crate::serde_rational")]
    pub rhs: Rational,
}

/// Outcome of an exact identity check over a range of orders.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationResult {
    pub claim: String,
    pub n: usize,
    pub params: BTreeMap<String, String>,
    /// Inclusive range `[first, last]` of checked orders.
    pub orders: [u32; 2],
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub counterexample: Option<Counterexample>,
}

impl VerificationResult {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

fn check_orders(
    claim: &str,
    n: usize,
    params: BTreeMap<String, String>,
    orders: std::ops::RangeInclusive<u32>,
    mut sides: impl FnMut(u32) -> (Rational, Rational),
) -> VerificationResult {
    let span = [*orders.start(), *orders.end()];
    let counterexample = orders.into_iter().find_map(|r| {
        let (lhs, rhs) = sides(r);
        (lhs != rhs).then_some(Counterexample { order: r, lhs, rhs })
    });
    VerificationResult {
        claim: claim.to_string(),
        n,
        params,
        orders: span,
        status: if counterexample.is_none() {
            Status::Pass
        } else {
            Status::Fail
        },
        counterexample,
    }
}

/// `Σ_{|i| = r} multinomial(r; i) Π (a_j)_{i_j}`, by enumeration.
fn pochhammer_multinomial_sum(a: &[Rational], r: u32) -> Rational {
    // table[j][i] = (a_j)_i
    let table: Vec<Vec<Rational>> = a
        .iter()
        .map(|aj| (0..=r).map(|i| pochhammer(aj, i)).collect())
        .collect();
    compositions(r, a.len())
        .map(|c| {
            let prod = table
                .iter()
                .zip(c.parts())
                .fold(Rational::one(), |acc, (row, &ij)| acc * &row[ij as usize]);
            Rational::from_integer(multinomial_of(c.parts())) * prod
        })
        .fold(Rational::zero(), |acc, t| acc + t)
}

/// `Σ multinomial(r; i) Π (1/2)_{i_j} = (n/2)_r` for orders `1..=r`.
pub fn verify_lemma1(n: usize, r: u32) -> VerificationResult {
    let halves = vec![ratio(1, 2); n];
    let rhs_base = ratio(n as i64, 2);
    let params = BTreeMap::from([("a".to_string(), "1/2".to_string())]);
    check_orders("lemma1", n, params, 1..=r, |k| {
        (pochhammer_multinomial_sum(&halves, k), pochhammer(&rhs_base, k))
    })
}

/// `Σ multinomial(r; i) Π (a_j)_{i_j} = (Σ a_j)_r` for orders `1..=r`.
pub fn verify_lemma2(a: &DirichletParams, r: u32) -> VerificationResult {
    let total = a.total();
    let params = BTreeMap::from([(
        "a".to_string(),
        a.as_slice().iter().map(format_rational).collect::<Vec<_>>().join(","),
    )]);
    check_orders("lemma2", a.len(), params, 1..=r, |k| {
        (pochhammer_multinomial_sum(a.as_slice(), k), pochhammer(&total, k))
    })
}

/// Check `E[S_n^r]` for iid `X ~ spec` against the moments of `target`,
/// orders `0..=max_order`. The first differing order is reported.
pub fn verify_target(
    claim: &str,
    spec: &DistributionSpec,
    n: usize,
    target: &DistributionSpec,
    max_order: u32,
) -> VerificationResult {
    let s = s_moments(spec, n, max_order);
    let params = BTreeMap::from([
        ("x".to_string(), spec.to_string()),
        ("target".to_string(), target.to_string()),
    ]);
    check_orders(claim, n, params, 0..=max_order, |r| {
        (s.moments[r as usize].clone(), target.moment(r))
    })
}

/// Check `E[S_n^r]` for iid `X ~ spec` against an explicit moment sequence,
/// orders `0..=R` of `target`.
pub fn verify_against_moments(
    claim: &str,
    spec: &DistributionSpec,
    n: usize,
    target: &MomentSequence,
) -> VerificationResult {
    let max_order = target.max_order();
    let s = s_moments(spec, n, max_order);
    let params = BTreeMap::from([
        ("x".to_string(), spec.to_string()),
        ("target".to_string(), "moment sequence".to_string()),
    ]);
    check_orders(claim, n, params, 0..=max_order, |r| {
        (s.moments[r as usize].clone(), target.moments[r as usize].clone())
    })
}

/// The power semicircle law with `λ = (n - 1)/2` on `(-1, 1)`.
pub fn theorem1_target(n: usize) -> DistributionSpec {
    DistributionSpec::PowerSemicircle {
        lambda: ratio(n as i64 - 1, 2),
        a: Rational::one(),
    }
}

/// iid arcsin summands give the power semicircle law with `λ = (n - 1)/2`.
pub fn verify_theorem1(n: usize, max_order: u32) -> VerificationResult {
    let x = DistributionSpec::Arcsin { a: Rational::one() };
    verify_target("theorem1", &x, n, &theorem1_target(n), max_order)
}

/// `Beta(nα, n(1 - α))` on `(-1, 1)`.
pub fn theorem2_target(n: usize, alpha: &Rational) -> DistributionSpec {
    let nn = int(n as i64);
    DistributionSpec::Beta4 {
        p: &nn * alpha,
        q: &nn * (Rational::one() - alpha),
        loc: int(-1),
        scale: int(2),
    }
}

/// iid generalized arcsin(α) summands give `Beta(nα, n(1 - α), -1, 2)`.
pub fn verify_theorem2(n: usize, alpha: &Rational, max_order: u32) -> Result<VerificationResult> {
    let x = DistributionSpec::gen_arcsin(alpha.clone(), Rational::one())?;
    let mut res = verify_target("theorem2", &x, n, &theorem2_target(n, alpha), max_order);
    res.params.insert("alpha".to_string(), format_rational(alpha));
    Ok(res)
}

//! Seeded Monte Carlo cross-checks of the exact results.
//!
//! `R` is drawn as uniform spacings, each `X_i` from the catalog, and the
//! resulting `S_n` samples are compared with the exact target law through a
//! Kolmogorov-Smirnov statistic and with the exact moments through a
//! standard-error band.
//!
//! Sampling runs in fixed-size chunks; chunk `c` draws from ChaCha8 stream
//! `c` of the seed, and every reduction happens in chunk order, so reports do
//! not depend on thread scheduling.

use num_traits::One;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dist::DistributionSpec;
use crate::error::{Error, Result};
use crate::exact::{int, to_f64, Rational};
use crate::mixture::s_moments;

/// Asymptotic 1% critical value of `√N · D_N`.
pub const KS_CRIT_1PCT: f64 = 1.628;
/// Moment checks accept `|empirical - exact| <= MOMENT_SE_FACTOR · SE`.
pub const MOMENT_SE_FACTOR: f64 = 5.0;
/// Highest moment order compared by [`simulate`].
pub const SIM_MAX_ORDER: u32 = 8;
/// Seed used by the reference runs in the test-suite and the examples.
pub const GOLDEN_SEED: u64 = 0x5eed_2015_1006_0788;
pub const MIN_SAMPLES: usize = 1000;

const CHUNK: usize = 1 << 15;
// Relative slack for pure floating-point rounding when SE is (near) zero.
const ROUNDING_FLOOR: f64 = 1e-12;

/// A reproducible random stream: a pure function of `(seed, stream)`.
#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    stream: u64,
    rng: ChaCha8Rng,
}

impl RngStream {
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Self { seed, stream, rng }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }

    /// Uniform on `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        self.rng.gen::<f64>()
    }
}

impl RngCore for RngStream {
    fn next_u32(&mut self) -> u32 {
        self.rng.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    fn fill_bytes(&mut self, dest: &mut [u8]) {
        self.rng.fill_bytes(dest)
    }

    fn try_fill_bytes(&mut self, dest: &mut [u8]) -> std::result::Result<(), rand::Error> {
        self.rng.try_fill_bytes(dest)
    }
}

/// Dirichlet `D_n(1, …, 1)` draw from sorted uniforms: `R_i = U_(i) - U_(i-1)`
/// with `U_(0) = 0`, and the last entry `1 - Σ_{i<n} R_i` clamped at zero.
pub fn sample_spacings(n: usize, rng: &mut RngStream) -> Vec<f64> {
    assert!(n >= 1, "spacings need n >= 1");
    let mut u: Vec<f64> = (0..n - 1).map(|_| rng.uniform()).collect();
    u.sort_by(f64::total_cmp);
    let mut out = Vec::with_capacity(n);
    let mut prev = 0.0;
    for &x in &u {
        out.push(x - prev);
        prev = x;
    }
    let partial: f64 = out.iter().sum();
    out.push((1.0 - partial).max(0.0));
    out
}

/// Arcsin variate on `(-a, a)` from a uniform: `-a cos(πu)`.
pub fn arcsin_from_uniform(a: f64, u: f64) -> f64 {
    -a * (std::f64::consts::PI * u).cos()
}

/// Jöhnk's rejection sampler for `Beta(p, q)`, efficient when `p, q <= 1`.
/// Works in log space so that tiny shapes do not underflow.
pub fn johnk_beta(p: f64, q: f64, rng: &mut RngStream) -> f64 {
    loop {
        let (u, v) = (rng.uniform(), rng.uniform());
        if u == 0.0 || v == 0.0 {
            continue;
        }
        let lx = u.ln() / p;
        let ly = v.ln() / q;
        let hi = lx.max(ly);
        let lsum = hi + ((lx - hi).exp() + (ly - hi).exp()).ln();
        if lsum <= 0.0 {
            return (lx - lsum).exp();
        }
    }
}

/// `Beta(p, q)` via `G_p / (G_p + G_q)` with gamma variates.
pub fn gamma_ratio_beta(p: f64, q: f64, rng: &mut RngStream) -> f64 {
    let gp = Gamma::new(p, 1.0).expect("positive shape").sample(rng);
    let gq = Gamma::new(q, 1.0).expect("positive shape").sample(rng);
    if gp + gq == 0.0 {
        return if p >= q { 1.0 } else { 0.0 };
    }
    gp / (gp + gq)
}

fn sample_beta(p: f64, q: f64, rng: &mut RngStream) -> f64 {
    if p <= 1.0 && q <= 1.0 {
        johnk_beta(p, q, rng)
    } else {
        gamma_ratio_beta(p, q, rng)
    }
}

/// One variate of `spec`, always inside the closed support.
pub fn sample_x(spec: &DistributionSpec, rng: &mut RngStream) -> f64 {
    let (lo, hi) = spec.support();
    let (lo, hi) = (to_f64(&lo), to_f64(&hi));
    let x = match spec {
        DistributionSpec::Arcsin { a } => arcsin_from_uniform(to_f64(a), rng.uniform()),
        DistributionSpec::PointMass { c } => to_f64(c),
        DistributionSpec::Uniform { .. } => lo + (hi - lo) * rng.uniform(),
        _ => {
            let (p, q, loc, scale) = spec.as_beta4().expect("beta family");
            let b = sample_beta(to_f64(&p), to_f64(&q), rng);
            to_f64(&loc) + to_f64(&scale) * b
        }
    };
    x.clamp(lo, hi)
}

/// One draw of `S_n = Σ R_i X_i` with iid `X_i ~ spec`.
pub fn sample_s(spec: &DistributionSpec, n: usize, rng: &mut RngStream) -> f64 {
    let r = sample_spacings(n, rng);
    if let DistributionSpec::PointMass { c } = spec {
        // Σ R_i = 1 exactly in law
        return to_f64(c);
    }
    let (lo, hi) = spec.support();
    let s: f64 = r.iter().map(|w| w * sample_x(spec, rng)).sum();
    s.clamp(to_f64(&lo), to_f64(&hi))
}

/// `D_N = max_i max(i/N - F(x_i), F(x_i) - (i-1)/N)` for ascending samples.
pub fn ks_statistic(sorted: &[f64], cdf: impl Fn(f64) -> f64) -> Result<f64> {
    if sorted.is_empty() {
        return Err(Error::contract("KS statistic needs at least one sample"));
    }
    let n = sorted.len() as f64;
    Ok(sorted
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            let i = i as f64;
            ((i + 1.0) / n - f).max(f - i / n)
        })
        .fold(0.0, f64::max))
}

/// The law `S_n` is known to follow for iid summands from `spec`, when the
/// theorems supply one.
pub fn target_law(spec: &DistributionSpec, n: usize) -> Option<DistributionSpec> {
    let nn = int(n as i64);
    match spec {
        DistributionSpec::Arcsin { a } => Some(DistributionSpec::PowerSemicircle {
            lambda: (&nn - Rational::one()) / int(2),
            a: a.clone(),
        }),
        DistributionSpec::GenArcsin { alpha, a } => Some(DistributionSpec::Beta4 {
            p: &nn * alpha,
            q: &nn * (Rational::one() - alpha),
            loc: -a.clone(),
            scale: a * int(2),
        }),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentCheck {
    pub order: u32,
    #[serde(with = "crate::serde_rational")]
    pub exact: Rational,
    pub exact_decimal: f64,
    pub empirical: f64,
    pub standard_error: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub statistic: f64,
    pub threshold: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimReport {
    pub spec: DistributionSpec,
    pub n: usize,
    pub samples: usize,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub target: Option<DistributionSpec>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub ks_statistic: Option<f64>,
    pub ks_critical_1pct: f64,
    pub moments: Vec<MomentCheck>,
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl SimReport {
    pub fn moment(&self, order: u32) -> Option<&MomentCheck> {
        self.moments.iter().find(|m| m.order == order)
    }

    /// Largest `|empirical - exact|` over the compared orders.
    pub fn max_moment_error(&self) -> f64 {
        self.moments
            .iter()
            .map(|m| (m.empirical - m.exact_decimal).abs())
            .fold(0.0, f64::max)
    }
}

#[derive(Clone, Copy, Default)]
struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

struct Chunk {
    samples: Vec<f64>,
    power_sums: Vec<Neumaier>,
    in_support: bool,
}

fn run_chunk(spec: &DistributionSpec, n: usize, seed: u64, index: usize, len: usize, bounds: (f64, f64)) -> Chunk {
    let mut rng = RngStream::new(seed, index as u64);
    let mut samples = Vec::with_capacity(len);
    let mut power_sums = vec![Neumaier::default(); SIM_MAX_ORDER as usize + 1];
    let mut in_support = true;
    for _ in 0..len {
        let s = sample_s(spec, n, &mut rng);
        in_support &= s >= bounds.0 && s <= bounds.1;
        let mut p = 1.0;
        for acc in power_sums.iter_mut().skip(1) {
            p *= s;
            acc.add(p);
        }
        samples.push(s);
    }
    Chunk {
        samples,
        power_sums,
        in_support,
    }
}

/// Draw `samples` realizations of `S_n` and compare them with the exact
/// theory. Identical `(spec, n, samples, seed)` give identical reports.
pub fn simulate(spec: &DistributionSpec, n: usize, samples: usize, seed: u64) -> Result<SimReport> {
    if n == 0 {
        return Err(Error::contract("simulate needs n >= 1"));
    }
    if samples < MIN_SAMPLES {
        return Err(Error::contract(format!(
            "simulate needs at least {MIN_SAMPLES} samples, got {samples}"
        )));
    }
    let (lo, hi) = spec.support();
    let bounds = (to_f64(&lo), to_f64(&hi));
    let chunk_count = samples.div_ceil(CHUNK);
    let chunks: Vec<Chunk> = (0..chunk_count)
        .into_par_iter()
        .map(|c| {
            let len = CHUNK.min(samples - c * CHUNK);
            run_chunk(spec, n, seed, c, len, bounds)
        })
        .collect();

    let mut totals = vec![Neumaier::default(); SIM_MAX_ORDER as usize + 1];
    let mut in_support = true;
    let mut all = Vec::with_capacity(samples);
    for chunk in chunks {
        for (t, c) in totals.iter_mut().zip(&chunk.power_sums) {
            t.add(c.value());
        }
        in_support &= chunk.in_support;
        all.extend(chunk.samples);
    }
    all.par_sort_unstable_by(f64::total_cmp);

    let nf = samples as f64;
    let exact = s_moments(spec, n, 2 * SIM_MAX_ORDER);
    let mut checks = Vec::new();
    let moments: Vec<MomentCheck> = (1..=SIM_MAX_ORDER)
        .map(|r| {
            let m = &exact.moments[r as usize];
            let m2 = &exact.moments[2 * r as usize];
            let var = to_f64(&(m2 - m * m)).max(0.0);
            let se = (var / nf).sqrt();
            let exact_decimal = to_f64(m);
            let empirical = totals[r as usize].value() / nf;
            let tol = MOMENT_SE_FACTOR * se + ROUNDING_FLOOR * exact_decimal.abs().max(1.0);
            let pass = (empirical - exact_decimal).abs() <= tol;
            checks.push(Check {
                name: format!("moment_{r}"),
                statistic: (empirical - exact_decimal).abs(),
                threshold: tol,
                pass,
            });
            MomentCheck {
                order: r,
                exact: m.clone(),
                exact_decimal,
                empirical,
                standard_error: se,
                pass,
            }
        })
        .collect();

    let target = target_law(spec, n);
    let ks_critical_1pct = KS_CRIT_1PCT / nf.sqrt();
    let ks = match &target {
        Some(t) => Some(ks_statistic(&all, |x| t.cdf(x))?),
        None => None,
    };
    if let Some(d) = ks {
        checks.insert(
            0,
            Check {
                name: "ks".into(),
                statistic: d,
                threshold: ks_critical_1pct,
                pass: d <= ks_critical_1pct,
            },
        );
    }
    checks.push(Check {
        name: "support".into(),
        statistic: if in_support { 0.0 } else { 1.0 },
        threshold: 0.0,
        pass: in_support,
    });
    let pass = checks.iter().all(|c| c.pass);
    Ok(SimReport {
        spec: spec.clone(),
        n,
        samples,
        seed,
        target,
        ks_statistic: ks,
        ks_critical_1pct,
        moments,
        checks,
        pass,
    })
}

/// Mean of a sample, for callers comparing against a known expectation.
pub fn mean(xs: &[f64]) -> f64 {
    let mut acc = Neumaier::default();
    for &x in xs {
        acc.add(x);
    }
    if xs.is_empty() {
        f64::NAN
    } else {
        acc.value() / xs.len() as f64
    }
}

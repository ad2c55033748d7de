#![allow(dead_code)]

use dirmix::exact::{ratio, to_f64};
use dirmix::{DistributionSpec, Rational};

pub fn spec(s: &str) -> DistributionSpec {
    s.parse().unwrap()
}

pub fn q(p: i64, d: i64) -> Rational {
    ratio(p, d)
}

/// Tanh-sinh (double exponential) quadrature of `f` over `[a, b]`.
///
/// Abscissae near `a` are formed as `a + distance` with the distance computed
/// directly, so integrable singularities at the left end are resolved down to
/// distances far below one ulp of `a + 1`.
pub fn tanh_sinh(f: impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    const U_MAX: f64 = 6.5;
    let half = 0.5 * (b - a);
    let hp = std::f64::consts::FRAC_PI_2;
    let node = |u: f64| -> f64 {
        let v = hp * u.sinh();
        // (1 + tanh v) / 2 = 1 / (1 + e^{-2v}), written to keep precision for v << 0
        let left = if v < 0.0 {
            let e = (2.0 * v).exp();
            e / (1.0 + e)
        } else {
            1.0 / (1.0 + (-2.0 * v).exp())
        };
        let x = a + (b - a) * left;
        let w = half * hp * u.cosh() / (v.cosh() * v.cosh());
        if w == 0.0 || !w.is_finite() {
            return 0.0;
        }
        let y = f(x);
        if y.is_finite() {
            w * y
        } else {
            0.0
        }
    };

    let mut h = 1.0;
    let mut total = node(0.0);
    let mut j = 1;
    while j as f64 * h <= U_MAX {
        let u = j as f64 * h;
        total += node(u) + node(-u);
        j += 1;
    }
    let mut estimate = total * h;
    for level in 1..=12 {
        h *= 0.5;
        let mut fresh = 0.0;
        let mut k = 1;
        while k as f64 * h <= U_MAX {
            let u = k as f64 * h;
            fresh += node(u) + node(-u);
            k += 2;
        }
        total += fresh;
        let next = total * h;
        if level >= 4 && (next - estimate).abs() <= 1e-15 * next.abs().max(1e-300) {
            return next;
        }
        estimate = next;
    }
    estimate
}

/// Standard Beta laws `Beta(p, q)`, `Beta(q, p)` on `(0, 1)` and the affine
/// map `(loc, scale)` taking the first onto `d`.
fn beta_pieces(d: &DistributionSpec) -> (DistributionSpec, DistributionSpec, f64, f64) {
    let (p, qq, loc, scale) = d.as_beta4().expect("non-degenerate law");
    let std_pq = DistributionSpec::beta(p.clone(), qq.clone()).unwrap();
    let std_qp = DistributionSpec::beta(qq, p).unwrap();
    (std_pq, std_qp, to_f64(&loc), to_f64(&scale))
}

/// `∫ h(x) dF(x)` for a non-degenerate catalog law, integrating in the
/// standardized Beta coordinate and reflecting the upper half so that both
/// endpoint singularities sit at zero.
pub fn expect(d: &DistributionSpec, h: impl Fn(f64) -> f64) -> f64 {
    let (std_pq, std_qp, loc, scale) = beta_pieces(d);
    let lower = tanh_sinh(|t| h(loc + scale * t) * std_pq.density(t).unwrap(), 0.0, 0.5);
    let upper = tanh_sinh(|s| h(loc + scale - scale * s) * std_qp.density(s).unwrap(), 0.0, 0.5);
    lower + upper
}

/// Density of `d` at `x` through its standardized Beta form.
pub fn density_via_beta(d: &DistributionSpec, x: f64) -> f64 {
    let (std_pq, _, loc, scale) = beta_pieces(d);
    std_pq.density((x - loc) / scale).unwrap() / scale
}

/// `P(X <= x)` by quadrature of the density.
pub fn cdf_by_quadrature(d: &DistributionSpec, x: f64) -> f64 {
    let (std_pq, std_qp, loc, scale) = beta_pieces(d);
    let t0 = (x - loc) / scale;
    if t0 <= 0.0 {
        return 0.0;
    }
    if t0 >= 1.0 {
        return 1.0;
    }
    if t0 <= 0.5 {
        tanh_sinh(|t| std_pq.density(t).unwrap(), 0.0, t0)
    } else {
        1.0 - tanh_sinh(|s| std_qp.density(s).unwrap(), 0.0, 1.0 - t0)
    }
}

/// Non-degenerate catalog laws used by the numeric cross-checks.
pub fn numeric_catalog() -> Vec<DistributionSpec> {
    [
        "arcsin:1",
        "arcsin:5/2",
        "genarcsin:1/12,1",
        "genarcsin:1/4,1",
        "genarcsin:1/3,2",
        "genarcsin:1/2,1",
        "genarcsin:3/4,1",
        "genarcsin:11/12,1",
        "psc:-1/4,1",
        "psc:0,1",
        "psc:1/2,1",
        "psc:1,1",
        "psc:3/2,2",
        "psc:3,1",
        "beta:1/2,3/2,-1,2",
        "beta:2,5",
        "beta:7/3,1/5,-1/2,3",
        "uniform:-1,1",
        "uniform:1/2,3",
    ]
    .iter()
    .map(|s| spec(s))
    .collect()
}

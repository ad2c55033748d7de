//! Catalog of bounded-support distributions with exact moments.
//!
//! Every family is a location-scale image of a Beta law, but each moment
//! formula below is written against its own family so that identities between
//! families (arcsin vs. generalized arcsin at 1/2, power semicircle vs.
//! symmetric Beta) are genuine cross-checks.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::{binomial, format_rational, int, parse_rational, pochhammer, ratio, rpow, to_f64, Rational};
use crate::special::{beta_reg, ln_beta, ln_gamma};

/// A named catalog distribution together with its parameters.
///
/// Construct through the checked constructors ([`DistributionSpec::arcsin`]
/// etc.) or by parsing the `family:params` syntax; both enforce the parameter
/// constraints. The derived ordering is the canonical ordering used when
/// reporting lists of specs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DistributionSpec {
    /// Arcsine law on `(-a, a)`, density `1 / (π √(a² - x²))`.
    Arcsin {
        a: Rational,
    },
    /// `Beta(α, 1 - α)` mapped affinely onto `(-a, a)`.
    GenArcsin {
        alpha: Rational,
        a: Rational,
    },
    /// Density proportional to `(a² - x²)^(λ - 1/2)` on `(-a, a)`.
    PowerSemicircle {
        lambda: Rational,
        a: Rational,
    },
    /// `loc + scale · B` with `B ~ Beta(p, q)` on `(0, 1)`.
    Beta4 {
        p: Rational,
        q: Rational,
        loc: Rational,
        scale: Rational,
    },
    Uniform {
        lo: Rational,
        hi: Rational,
    },
    PointMass {
        c: Rational,
    },
}

fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidParameter(msg()))
    }
}

impl DistributionSpec {
    pub fn arcsin(a: Rational) -> Result<Self> {
        Self::Arcsin { a }.validated()
    }

    pub fn gen_arcsin(alpha: Rational, a: Rational) -> Result<Self> {
        Self::GenArcsin { alpha, a }.validated()
    }

    pub fn power_semicircle(lambda: Rational, a: Rational) -> Result<Self> {
        Self::PowerSemicircle { lambda, a }.validated()
    }

    pub fn beta4(p: Rational, q: Rational, loc: Rational, scale: Rational) -> Result<Self> {
        Self::Beta4 { p, q, loc, scale }.validated()
    }

    pub fn beta(p: Rational, q: Rational) -> Result<Self> {
        Self::beta4(p, q, Rational::zero(), Rational::one())
    }

    pub fn uniform(lo: Rational, hi: Rational) -> Result<Self> {
        Self::Uniform { lo, hi }.validated()
    }

    pub fn point_mass(c: Rational) -> Self {
        Self::PointMass { c }
    }

    /// Check the parameter constraints of the variant.
    pub fn validate(&self) -> Result<()> {
        let zero = Rational::zero();
        match self {
            Self::Arcsin { a } => require(*a > zero, || format!("arcsin: a = {a} must be > 0")),
            Self::GenArcsin { alpha, a } => {
                require(*alpha > zero && *alpha < Rational::one(), || {
                    format!("genarcsin: alpha = {alpha} must lie in (0, 1)")
                })?;
                require(*a > zero, || format!("genarcsin: a = {a} must be > 0"))
            }
            Self::PowerSemicircle { lambda, a } => {
                require(*lambda > ratio(-1, 2), || {
                    format!("psc: lambda = {lambda} must be > -1/2")
                })?;
                require(*a > zero, || format!("psc: a = {a} must be > 0"))
            }
            Self::Beta4 { p, q, scale, .. } => {
                require(*p > zero, || format!("beta: p = {p} must be > 0"))?;
                require(*q > zero, || format!("beta: q = {q} must be > 0"))?;
                require(*scale > zero, || format!("beta: scale = {scale} must be > 0"))
            }
            Self::Uniform { lo, hi } => require(lo < hi, || format!("uniform: need lo < hi, got {lo}, {hi}")),
            Self::PointMass { .. } => Ok(()),
        }
    }

    fn validated(self) -> Result<Self> {
        self.validate()?;
        Ok(self)
    }

    pub fn family(&self) -> &'static str {
        match self {
            Self::Arcsin { .. } => "arcsin",
            Self::GenArcsin { .. } => "genarcsin",
            Self::PowerSemicircle { .. } => "psc",
            Self::Beta4 { .. } => "beta",
            Self::Uniform { .. } => "uniform",
            Self::PointMass { .. } => "point",
        }
    }

    /// Closed support `[lo, hi]`.
    pub fn support(&self) -> (Rational, Rational) {
        match self {
            Self::Arcsin { a } | Self::GenArcsin { a, .. } | Self::PowerSemicircle { a, .. } => (-a.clone(), a.clone()),
            Self::Beta4 { loc, scale, .. } => (loc.clone(), loc + scale),
            Self::Uniform { lo, hi } => (lo.clone(), hi.clone()),
            Self::PointMass { c } => (c.clone(), c.clone()),
        }
    }

    /// True when the law is symmetric about zero, so all odd moments vanish.
    pub fn is_symmetric(&self) -> bool {
        match self {
            Self::Arcsin { .. } | Self::PowerSemicircle { .. } => true,
            Self::GenArcsin { alpha, .. } => *alpha == ratio(1, 2),
            Self::Beta4 { p, q, loc, scale } => p == q && (loc + loc + scale).is_zero(),
            Self::Uniform { lo, hi } => (lo + hi).is_zero(),
            Self::PointMass { c } => c.is_zero(),
        }
    }

    /// The same law written as `Beta4 { p, q, loc, scale }`; `None` for point masses.
    pub fn as_beta4(&self) -> Option<(Rational, Rational, Rational, Rational)> {
        let half = ratio(1, 2);
        match self {
            Self::Arcsin { a } => Some((half.clone(), half, -a.clone(), a * int(2))),
            Self::GenArcsin { alpha, a } => Some((alpha.clone(), Rational::one() - alpha, -a.clone(), a * int(2))),
            Self::PowerSemicircle { lambda, a } => {
                let s = lambda + &half;
                Some((s.clone(), s, -a.clone(), a * int(2)))
            }
            Self::Beta4 { p, q, loc, scale } => Some((p.clone(), q.clone(), loc.clone(), scale.clone())),
            Self::Uniform { lo, hi } => Some((Rational::one(), Rational::one(), lo.clone(), hi - lo)),
            Self::PointMass { .. } => None,
        }
    }

    /// Exact raw moment `E[X^r]` about the origin.
    pub fn moment(&self, r: u32) -> Rational {
        match self {
            Self::Arcsin { a } => {
                if r % 2 == 1 {
                    return Rational::zero();
                }
                let k = r / 2;
                // Γ(1/2 + k) / (√π Γ(1 + k)) = C(2k, k) / 4^k
                let central = Rational::new(binomial(2 * k, k), num_traits::pow(4.into(), k as usize));
                central * rpow(a, r as i32)
            }
            Self::PowerSemicircle { lambda, a } => {
                if r % 2 == 1 {
                    return Rational::zero();
                }
                let k = r / 2;
                let lam1 = lambda + Rational::one();
                pochhammer(&ratio(1, 2), k) / pochhammer(&lam1, k) * rpow(a, r as i32)
            }
            Self::GenArcsin { .. } => {
                let (base, sigma, xi) = self.standardize().expect("genarcsin standardizes");
                let base_moments: Vec<Rational> = (0..=r).map(|j| base.moment(j)).collect();
                affine_moment(&base_moments, &sigma, &xi, r)
            }
            Self::Beta4 { p, q, loc, scale } => {
                let pq = p + q;
                let base: Vec<Rational> = (0..=r).map(|j| pochhammer(p, j) / pochhammer(&pq, j)).collect();
                affine_moment(&base, scale, loc, r)
            }
            Self::Uniform { lo, hi } => {
                let e = r as i32 + 1;
                (rpow(hi, e) - rpow(lo, e)) / (int(e as i64) * (hi - lo))
            }
            Self::PointMass { c } => rpow(c, r as i32),
        }
    }

    /// Moments `m_0..=m_max_order` together with the support.
    pub fn moments(&self, max_order: u32) -> MomentSequence {
        MomentSequence {
            support: self.support(),
            moments: (0..=max_order).map(|r| self.moment(r)).collect(),
        }
    }

    /// Density at `x`; zero outside the open support.
    pub fn density(&self, x: f64) -> Result<f64> {
        let (lo, hi) = self.support();
        let (lo, hi) = (to_f64(&lo), to_f64(&hi));
        if let Self::PointMass { .. } = self {
            return Err(Error::Unsupported("a point mass has no density".into()));
        }
        if !(x > lo && x < hi) {
            return Ok(0.0);
        }
        let v = match self {
            Self::Arcsin { a } => {
                let a = to_f64(a);
                1.0 / (std::f64::consts::PI * ((a - x) * (a + x)).sqrt())
            }
            Self::PowerSemicircle { lambda, a } => {
                let (lam, a) = (to_f64(lambda), to_f64(a));
                let ln_norm =
                    ln_gamma(lam + 1.0) - ln_gamma(lam + 0.5) - 0.5 * std::f64::consts::PI.ln() - 2.0 * lam * a.ln();
                (ln_norm + (lam - 0.5) * ((a - x).ln() + (a + x).ln())).exp()
            }
            Self::GenArcsin { .. } | Self::Beta4 { .. } => {
                let (p, q, loc, scale) = self.as_beta4().expect("beta family");
                let (p, q, loc, scale) = (to_f64(&p), to_f64(&q), to_f64(&loc), to_f64(&scale));
                let t = (x - loc) / scale;
                let u = (loc + scale - x) / scale;
                ((p - 1.0) * t.ln() + (q - 1.0) * u.ln() - ln_beta(p, q)).exp() / scale
            }
            Self::Uniform { .. } => 1.0 / (hi - lo),
            Self::PointMass { .. } => unreachable!(),
        };
        Ok(v)
    }

    /// Cumulative distribution function `P(X <= x)`.
    pub fn cdf(&self, x: f64) -> f64 {
        let (lo, hi) = self.support();
        let (lo, hi) = (to_f64(&lo), to_f64(&hi));
        if x >= hi {
            return 1.0;
        }
        if x < lo || (x == lo && !matches!(self, Self::PointMass { .. })) {
            return 0.0;
        }
        match self {
            Self::Arcsin { a } => {
                let a = to_f64(a);
                (0.5 + (x / a).asin() / std::f64::consts::PI).clamp(0.0, 1.0)
            }
            Self::Uniform { .. } => ((x - lo) / (hi - lo)).clamp(0.0, 1.0),
            Self::PointMass { .. } => 1.0,
            _ => {
                let (p, q, loc, scale) = self.as_beta4().expect("beta family");
                let (p, q, loc, scale) = (to_f64(&p), to_f64(&q), to_f64(&loc), to_f64(&scale));
                beta_reg(p, q, (x - loc) / scale)
            }
        }
    }

    /// Canonical form and affine coefficients: `self = sigma · base + xi` in law.
    ///
    /// Symmetric families land on `(-1, 1)`, Beta families on `(0, 1)`.
    pub fn standardize(&self) -> Result<(DistributionSpec, Rational, Rational)> {
        let one = Rational::one();
        let zero = Rational::zero();
        Ok(match self {
            Self::Arcsin { a } => (Self::Arcsin { a: one }, a.clone(), zero),
            Self::PowerSemicircle { lambda, a } => (
                Self::PowerSemicircle {
                    lambda: lambda.clone(),
                    a: one,
                },
                a.clone(),
                zero,
            ),
            Self::GenArcsin { alpha, a } => (
                Self::Beta4 {
                    p: alpha.clone(),
                    q: &one - alpha,
                    loc: zero,
                    scale: one,
                },
                a * int(2),
                -a.clone(),
            ),
            Self::Beta4 { p, q, loc, scale } => (
                Self::Beta4 {
                    p: p.clone(),
                    q: q.clone(),
                    loc: zero,
                    scale: one.clone(),
                },
                scale.clone(),
                loc.clone(),
            ),
            Self::Uniform { lo, hi } => (
                Self::Uniform {
                    lo: -one.clone(),
                    hi: one,
                },
                (hi - lo) / int(2),
                (hi + lo) / int(2),
            ),
            Self::PointMass { .. } => return Err(Error::Unsupported("a point mass cannot be standardized".into())),
        })
    }

    /// Apply `x ↦ sigma·x + xi` to the law, staying in the same family when possible.
    ///
    /// Symmetric families only stay closed under pure scaling; a shifted or
    /// reflected image is returned as the equivalent `Beta4`.
    pub fn affine_image(&self, sigma: &Rational, xi: &Rational) -> Result<DistributionSpec> {
        if sigma.is_zero() {
            return Err(Error::contract("affine image needs sigma != 0"));
        }
        if let Self::PointMass { c } = self {
            return Ok(Self::PointMass { c: sigma * c + xi });
        }
        if let Self::Uniform { lo, hi } = self {
            let (a, b) = (sigma * lo + xi, sigma * hi + xi);
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            return Ok(Self::Uniform { lo, hi });
        }
        if xi.is_zero() && sigma.is_positive() {
            match self {
                Self::Arcsin { a } => return Ok(Self::Arcsin { a: a * sigma }),
                Self::GenArcsin { alpha, a } => {
                    return Ok(Self::GenArcsin {
                        alpha: alpha.clone(),
                        a: a * sigma,
                    })
                }
                Self::PowerSemicircle { lambda, a } => {
                    return Ok(Self::PowerSemicircle {
                        lambda: lambda.clone(),
                        a: a * sigma,
                    })
                }
                _ => {}
            }
        }
        let (p, q, loc, scale) = self.as_beta4().expect("non-degenerate law");
        let spec = if sigma.is_positive() {
            Self::Beta4 {
                p,
                q,
                loc: sigma * loc + xi,
                scale: sigma * scale,
            }
        } else {
            // σ < 0 reflects: the image of loc + scale·B is (σ loc + ξ) + σ scale·B
            // = (σ(loc + scale) + ξ) + |σ| scale·(1 - B), and 1 - B ~ Beta(q, p).
            Self::Beta4 {
                p: q,
                q: p,
                loc: sigma * (&loc + &scale) + xi,
                scale: -sigma * scale,
            }
        };
        Ok(spec)
    }
}

/// `E[(σY + ξ)^r]` from the moments `E[Y^j]`, `j = 0..=r`.
pub(crate) fn affine_moment(base: &[Rational], sigma: &Rational, xi: &Rational, r: u32) -> Rational {
    (0..=r)
        .map(|j| {
            Rational::from_integer(binomial(r, j))
                * rpow(sigma, j as i32)
                * rpow(xi, (r - j) as i32)
                * &base[j as usize]
        })
        .fold(Rational::zero(), |acc, t| acc + t)
}

impl fmt::Display for DistributionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = format_rational;
        match self {
            Self::Arcsin { a } => write!(f, "arcsin:{}", r(a)),
            Self::GenArcsin { alpha, a } => write!(f, "genarcsin:{},{}", r(alpha), r(a)),
            Self::PowerSemicircle { lambda, a } => write!(f, "psc:{},{}", r(lambda), r(a)),
            Self::Beta4 { p, q, loc, scale } => {
                write!(f, "beta:{},{},{},{}", r(p), r(q), r(loc), r(scale))
            }
            Self::Uniform { lo, hi } => write!(f, "uniform:{},{}", r(lo), r(hi)),
            Self::PointMass { c } => write!(f, "point:{}", r(c)),
        }
    }
}

impl FromStr for DistributionSpec {
    type Err = Error;

    /// Parse `arcsin:a`, `genarcsin:alpha,a`, `psc:lambda,a`,
    /// `beta:p,q[,loc,scale]`, `uniform:lo,hi` or `point:c`.
    fn from_str(s: &str) -> Result<Self> {
        let (family, rest) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("expected family:params, got {s:?}")))?;
        let params: Vec<Rational> = rest.split(',').map(parse_rational).collect::<Result<_>>()?;
        let arity = |want: &[usize]| -> Result<()> {
            if want.contains(&params.len()) {
                Ok(())
            } else {
                Err(Error::Parse(format!(
                    "{family}: expected {want:?} parameters, got {}",
                    params.len()
                )))
            }
        };
        let mut it = params.iter().cloned();
        let mut next = || it.next().expect("arity checked");
        match family.trim().to_ascii_lowercase().as_str() {
            "arcsin" => {
                arity(&[1])?;
                Self::arcsin(next())
            }
            "genarcsin" => {
                arity(&[2])?;
                Self::gen_arcsin(next(), next())
            }
            "psc" => {
                arity(&[2])?;
                Self::power_semicircle(next(), next())
            }
            "beta" => {
                arity(&[2, 4])?;
                let (p, q) = (next(), next());
                if params.len() == 4 {
                    Self::beta4(p, q, next(), next())
                } else {
                    Self::beta(p, q)
                }
            }
            "uniform" => {
                arity(&[2])?;
                Self::uniform(next(), next())
            }
            "point" => {
                arity(&[1])?;
                Ok(Self::point_mass(next()))
            }
            other => Err(Error::Parse(format!("unknown distribution family {other:?}"))),
        }
    }
}

impl Serialize for DistributionSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for DistributionSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = String::deserialize(d)?;
        raw.parse().map_err(serde::de::Error::custom)
    }
}

/// Support interval and exact moments `m_0..=m_R` of a law.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MomentSequence {
    #[serde(with = "crate::serde_rational::pair")]
    pub support: (Rational, Rational),
    #[serde(with = "crate::serde_rational::vec")]
    pub moments: Vec<Rational>,
}

impl MomentSequence {
    /// Requires a nonempty sequence with `m_0 = 1` and `lo <= hi`.
    pub fn new(support: (Rational, Rational), moments: Vec<Rational>) -> Result<Self> {
        if moments.first() != Some(&Rational::one()) {
            return Err(Error::contract("a moment sequence must start with m_0 = 1"));
        }
        if support.0 > support.1 {
            return Err(Error::contract("support must satisfy lo <= hi"));
        }
        Ok(Self { support, moments })
    }

    /// Highest available order `R`.
    pub fn max_order(&self) -> u32 {
        self.moments.len() as u32 - 1
    }

    pub fn get(&self, r: u32) -> Option<&Rational> {
        self.moments.get(r as usize)
    }

    /// Keep only `m_0..=m_order`.
    pub fn truncated(&self, order: u32) -> Self {
        let len = (order as usize + 1).min(self.moments.len());
        Self {
            support: self.support.clone(),
            moments: self.moments[..len].to_vec(),
        }
    }

    /// `|m_r| <= max(|lo|, |hi|)^r` for every stored order.
    pub fn within_support_bound(&self) -> bool {
        let radius = self.support.0.abs().max(self.support.1.abs());
        self.moments
            .iter()
            .enumerate()
            .all(|(r, m)| m.abs() <= rpow(&radius, r as i32))
    }

    /// Moments of `σY + ξ`, with the support mapped (and reordered when σ < 0).
    pub fn affine(&self, sigma: &Rational, xi: &Rational) -> Result<Self> {
        if sigma.is_zero() {
            return Err(Error::contract("affine transform needs sigma != 0"));
        }
        let moments = (0..self.moments.len() as u32)
            .map(|r| affine_moment(&self.moments, sigma, xi, r))
            .collect();
        let a = sigma * &self.support.0 + xi;
        let b = sigma * &self.support.1 + xi;
        let support = if a <= b { (a, b) } else { (b, a) };
        Ok(Self { support, moments })
    }

    /// Map the support onto `[0, 1]`; `None` when the support is a single point.
    pub fn to_unit_interval(&self) -> Option<Self> {
        let (lo, hi) = &self.support;
        if lo == hi {
            return None;
        }
        let width = hi - lo;
        let sigma = width.recip();
        let xi = -(lo / &width);
        self.affine(&sigma, &xi).ok()
    }
}

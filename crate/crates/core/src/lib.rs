//! Exact moments of Dirichlet-weighted sums `S_n = Σ R_i X_i` of independent
//! bounded variables, and recovery of the summand law from those moments.
//!
//! ```
//! use dirmix::characterize::{default_candidates, identify, recover_x_moments};
//! use dirmix::mixture::{s_moments, verify_theorem1};
//! use dirmix::DistributionSpec;
//!
//! # fn main() -> dirmix::Result<()> {
//! let x: DistributionSpec = "arcsin:1".parse()?;
//! let s = s_moments(&x, 3, 12);
//! assert_eq!(s.moments[4].to_string(), "1/8");
//! assert!(verify_theorem1(3, 12).passed());
//!
//! let law: DistributionSpec = "beta:1/2,3/2,-1,2".parse()?;
//! let rec = recover_x_moments(&law.moments(12), 2)?;
//! let report = identify(&rec, &default_candidates(), 12);
//! assert!(report.matches.contains(&"genarcsin:1/4,1".parse()?));
//! # Ok(())
//! # }
//! ```

pub mod characterize;
pub mod cli;
pub mod dist;
pub mod error;
pub mod exact;
pub mod mixture;
pub mod montecarlo;
mod serde_rational;
pub mod special;

pub use dist::{DistributionSpec, MomentSequence};
pub use error::{Error, Result};
pub use exact::{Composition, Rational};

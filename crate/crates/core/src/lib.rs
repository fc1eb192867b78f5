//! Exact-arithmetic checks of modified algebraic Bethe ansatz formulas for
//! the twisted inhomogeneous XXX chain.
//!
//! ```
//! use maba::formulas::eval_scalar;
//! use maba::verify::Sampler;
//! use maba::{OperatorFamily, ScalarForm, Twist, WeightOracle};
//!
//! # fn main() -> maba::Result<()> {
//! let mut s = Sampler::new(1, maba::Scalar::one(), 12);
//! let chain = s.chain(3)?;
//! let params = s.twist()?;
//! let u = s.spectral("u", 1)?;
//! let v = s.spectral("v", 2)?;
//! let oracle = WeightOracle::fundamental(&chain)?;
//! let formula = eval_scalar(ScalarForm::SPfin, &u, &v, &oracle, &Twist::from_params(&params), s.c(), 1)?;
//! let direct = OperatorFamily::twisted(&chain, &params)?.direct_scalar(&u, &v);
//! assert_eq!(formula, direct);
//! # Ok(())
//! # }
//! ```

#![allow(clippy::result_large_err)]

pub mod chain;
pub mod error;
pub mod formulas;
pub mod interp;
pub mod izergin;
pub mod kernel;
pub mod partition;
pub mod scalar;
pub mod verify;

pub use chain::{Chain, OperatorFamily};
pub use error::{Error, KernelKind, Result};
pub use formulas::{ActionKind, ActionRequest, ActionResult, ScalarForm, Twist, WeightOracle};
pub use kernel::{ModelParams, SpectralSet};
pub use partition::{CoefficientMap, GroundSet, Split, SplitSpace};
pub use scalar::Scalar;

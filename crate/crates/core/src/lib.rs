//! Exact combinatorics behind Type IV superorthogonality.
//!
//! The crate is organised around the lattice of set partitions of `[n]`:
//!
//! * [`partition`]: set partitions, partition types, refinement and the
//!   integer partition function.
//! * [`chains`]: odd-minus-even chain counts `D(P1, P2)` computed by brute
//!   force and by several closed forms.
//! * [`stirling`]: Stirling numbers of the second kind and falling factorials.
//! * [`identity`]: exact verification of the distinct-sum expansion over
//!   Gaussian rationals, for scalars and explicit tensors.
//! * [`constants`]: the coefficients `C_alpha` of the direct-inequality
//!   polynomial and the resulting formal constants.
//! * [`superortho`]: integer frequency families, s-Type IV checks and
//!   additive-structure search.
//!
//! Everything is exact (arbitrary-precision integers and rationals) except
//! where a floating value is the documented output.

pub mod chains;
pub mod constants;
pub mod error;
pub mod identity;
pub mod partition;
pub mod serde_big;
pub mod stirling;
pub mod superortho;

pub use error::{Error, Result};

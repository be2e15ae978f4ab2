#![allow(clippy::neg_cmp_op_on_partial_ord)]
//! Steklov eigenvalues of spherical shells `B \ (x₀ + aB̄)` in `ℝⁿ`.
//!
//! - [`shell_spectrum`]: the complete spectrum of the concentric shell and
//!   the hole ratio maximizing the boundary-normalized `σ₁`.
//! - [`rayleigh`]: Rayleigh-quotient upper bounds for offset holes, for the
//!   Steklov and the Dirichlet–Steklov problems.
//! - [`eigensolver`]: planar eigenvalues of eccentric annuli by a Trefftz
//!   (harmonic basis) Rayleigh–Ritz method.
//! - [`special_fn`], [`geometry`], [`quadrature`], [`linalg`]: the numerical
//!   building blocks.
//! - [`oracle`]: independent reference computations used by the checks.
//! - [`verify`], [`report`], [`cli`]: the invariant suite and the
//!   `steklov-shell` command line.
//!
//! ```
//! use steklov_shell::geometry::ShellConfig;
//! use steklov_shell::rayleigh::steklov_bound;
//! use steklov_shell::shell_spectrum::sigma1_closed_form;
//!
//! let concentric = sigma1_closed_form(3, 0.4).unwrap();
//! let offset = steklov_bound(&ShellConfig::new(3, 0.4, 0.2).unwrap()).unwrap();
//! assert!(offset.bound < concentric);
//! ```

pub mod cli;
pub mod eigensolver;
pub mod error;
pub mod geometry;
pub mod linalg;
pub mod oracle;
pub mod quadrature;
pub mod rayleigh;
pub mod report;
pub mod shell_spectrum;
pub mod special_fn;
pub mod verify;

pub use error::{Error, Result};

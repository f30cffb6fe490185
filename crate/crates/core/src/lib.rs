//! Local distribution of small prime factors.
//!
//! For ω_y(n), the number of distinct primes p < y dividing n, this crate
//! computes the exact counts N_k(x, y) = #{n <= x : ω_y(n) = k}, the
//! generating sums S_z(x, y) = Σ_{n <= x} z^{ω_y(n)} and Φ(x, y), evaluates
//! the special functions governing their asymptotics (Buchstab's w, the
//! generalized Dickman ρ_r, m_z(α) and its limit ℓ(z)), and exposes every
//! asymptotic main term as a predictor that can be compared with the exact
//! counts.
//!
//! * [`sieve`]: exact arithmetic.
//! * [`special`]: special functions and the delay-differential engine.
//! * [`predictors`]: asymptotic main terms.
//! * [`contour`]: Cauchy coefficient extraction of N_k from S_z.
//! * [`harness`]: experiment configs, reports and the CLI commands.

pub mod contour;
pub mod error;
pub mod harness;
pub mod predictors;
pub mod sieve;
pub mod special;

pub use error::{Error, Result};

/// Complex numbers throughout use the principal branch; powers are only ever
/// taken of positive reals, `u^z = exp(z ln u)`.
pub type ComplexValue = num_complex::Complex64;

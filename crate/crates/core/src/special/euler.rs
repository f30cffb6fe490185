//! Truncated Euler products ℓ(z), g(1, z) and the Mertens constant.
//!
//! Each product is summed in log space over p < P. After the first-order
//! cancellation the log of a factor is c/p² + O(1/p³); the p >= P part of the
//! 1/p² term is added back exactly through the prime zeta value P(2), and
//! what remains is bounded by the cubic term's tail.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::sieve::PrimeTable;
use crate::ComplexValue as C;

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_86;
/// Σ_p 1/p².
pub const PRIME_ZETA_2: f64 = 0.452_247_420_041_065_5;
pub const DEFAULT_CUTOFF: u64 = 1_000_000;
pub const CONSTANT_CUTOFF: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerProduct {
    pub value: C,
    /// Primes p < cutoff enter the product exactly.
    pub cutoff: u64,
    /// The second-order tail term that was folded into `value`.
    pub tail_correction: C,
    /// Bound on the error left after the correction.
    pub tail_error: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncatedSeries {
    pub value: f64,
    pub cutoff: u64,
    pub tail_correction: f64,
    pub tail_error: f64,
}

fn primes_below(cutoff: u64) -> Result<&'static [u64]> {
    static TABLE: OnceLock<PrimeTable> = OnceLock::new();
    if !(3..=CONSTANT_CUTOFF).contains(&cutoff) {
        return Err(Error::Domain(format!(
            "Euler product cutoff {cutoff} outside [3, {CONSTANT_CUTOFF}]"
        )));
    }
    let table = TABLE.get_or_init(|| {
        PrimeTable::build(CONSTANT_CUTOFF).expect("prime table for Euler products")
    });
    Ok(table.primes_below(cutoff))
}

/// Σ_{p >= cutoff} 1/p².
fn inverse_square_tail(primes: &[u64]) -> f64 {
    let head: f64 = primes.iter().rev().map(|&p| 1.0 / (p as f64 * p as f64)).sum();
    PRIME_ZETA_2 - head
}

/// Bound on Σ_{p >= P} 1/p³.
fn cube_tail_bound(cutoff: u64) -> f64 {
    let p = cutoff as f64;
    1.0 / (p * p * p.ln())
}

/// ln(1 + u) without losing the small-u digits.
fn ln1p(u: C) -> C {
    let modulus = 0.5 * (2.0 * u.re + u.norm_sqr()).ln_1p();
    C::new(modulus, u.im.atan2(1.0 + u.re))
}

/// ℓ(z) = e^{(z-1)γ} ∏_p (1 + (z-1)/p)(1 - 1/p)^{z-1}.
pub fn ell(z: C) -> Result<C> {
    ell_with(z, DEFAULT_CUTOFF).map(|e| e.value)
}

pub fn ell_with(z: C, cutoff: u64) -> Result<EulerProduct> {
    let primes = primes_below(cutoff)?;
    let w = z - 1.0;
    let mut log_sum = C::new(0.0, 0.0);
    for &p in primes {
        let p = p as f64;
        let u = w / p;
        if u == C::new(-1.0, 0.0) {
            return Ok(EulerProduct {
                value: C::new(0.0, 0.0),
                cutoff,
                tail_correction: C::new(0.0, 0.0),
                tail_error: 0.0,
            });
        }
        log_sum += ln1p(u) + w * (-1.0 / p).ln_1p();
    }
    let tail_correction = -(w * w + w) * 0.5 * inverse_square_tail(primes);
    let tail_error = (w * w * w - w).norm() / 3.0 * cube_tail_bound(cutoff);
    Ok(EulerProduct {
        value: (w * EULER_GAMMA + log_sum + tail_correction).exp(),
        cutoff,
        tail_correction,
        tail_error,
    })
}

/// g(1, z) = ∏_p (1 + z/(p-1))(1 - 1/p)^z, which is also C(r) at z = r.
pub fn selberg_g(z: C) -> Result<C> {
    selberg_g_with(z, DEFAULT_CUTOFF).map(|e| e.value)
}

pub fn selberg_g_with(z: C, cutoff: u64) -> Result<EulerProduct> {
    let primes = primes_below(cutoff)?;
    let mut log_sum = C::new(0.0, 0.0);
    for &p in primes {
        let p = p as f64;
        let u = z / (p - 1.0);
        if u == C::new(-1.0, 0.0) {
            return Ok(EulerProduct {
                value: C::new(0.0, 0.0),
                cutoff,
                tail_correction: C::new(0.0, 0.0),
                tail_error: 0.0,
            });
        }
        log_sum += ln1p(u) + z * (-1.0 / p).ln_1p();
    }
    let tail_correction = z * (1.0 - z) * 0.5 * inverse_square_tail(primes);
    let tail_error = (z * (z - 1.0) * (z - 2.0)).norm() / 3.0 * cube_tail_bound(cutoff);
    Ok(EulerProduct {
        value: (log_sum + tail_correction).exp(),
        cutoff,
        tail_correction,
        tail_error,
    })
}

/// c₁ = γ + Σ_p [ln(1 - 1/p) + 1/p] with primes below 10⁷.
pub fn mertens_constant() -> f64 {
    mertens_constant_with(CONSTANT_CUTOFF)
        .expect("default cutoff is valid")
        .value
}

pub fn mertens_constant_with(cutoff: u64) -> Result<TruncatedSeries> {
    let primes = primes_below(cutoff)?;
    let sum: f64 = primes
        .iter()
        .rev()
        .map(|&p| {
            let p = p as f64;
            (-1.0 / p).ln_1p() + 1.0 / p
        })
        .sum();
    let tail_correction = -0.5 * inverse_square_tail(primes);
    Ok(TruncatedSeries {
        value: EULER_GAMMA + sum + tail_correction,
        cutoff,
        tail_correction,
        tail_error: cube_tail_bound(cutoff) / 3.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C {
        C::new(re, 0.0)
    }

    #[test]
    fn ell_examples() {
        assert!((ell(c(1.0)).unwrap() - 1.0).norm() < 1e-14);
        assert!((ell(c(0.0)).unwrap() - (-EULER_GAMMA).exp()).norm() < 1e-14);
        assert_eq!(ell(c(-1.0)).unwrap(), c(0.0));
        assert_eq!(ell(c(-2.0)).unwrap(), c(0.0));
        assert_eq!(ell(c(-4.0)).unwrap(), c(0.0));
        assert!(ell(c(-1.5)).unwrap().norm() > 1e-3);
    }

    #[test]
    fn selberg_examples() {
        assert!((selberg_g(c(1.0)).unwrap() - 1.0).norm() < 1e-13);
        assert_eq!(selberg_g(c(0.0)).unwrap(), c(1.0));
        assert_eq!(selberg_g(c(-1.0)).unwrap(), c(0.0));
    }

    #[test]
    fn ell_and_g_are_the_same_product() {
        for z in [C::new(0.3, 0.0), C::new(2.5, 0.0), C::new(0.5, 1.5), C::new(-3.5, -2.0)] {
            let l = ell(z).unwrap();
            let g = selberg_g(z).unwrap() * ((z - 1.0) * EULER_GAMMA).exp();
            assert!((l - g).norm() <= 1e-12 * l.norm(), "z = {z}");
        }
    }

    #[test]
    fn truncation_is_converged() {
        for z in [C::new(0.5, 0.0), C::new(3.0, 1.0), C::new(-2.5, 0.0)] {
            let coarse = ell_with(z, 100_000).unwrap();
            let fine = ell_with(z, CONSTANT_CUTOFF).unwrap();
            let diff = (coarse.value - fine.value).norm();
            assert!(diff <= 2.0 * coarse.tail_error * coarse.value.norm() + 1e-14, "z = {z}");
            assert!(coarse.tail_error < 1e-9);
        }
    }

    #[test]
    fn mertens() {
        let c1 = mertens_constant();
        assert!(c1 > 0.2614 && c1 < 0.2616);
        assert!((c1 - 0.261_497_212_847_642_78).abs() < 1e-12);
        let y = 1_000_000u64;
        let partial = crate::sieve::mertens_sum(y).unwrap() - (y as f64).ln().ln();
        assert!((partial - c1).abs() < 0.01);
        let coarse = mertens_constant_with(1000).unwrap();
        assert!((coarse.value - c1).abs() <= coarse.tail_error);
    }
}

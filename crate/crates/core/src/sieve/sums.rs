//! Exact sums built on the ω histogram and the prime table: S_z(x, y), the
//! reciprocal-prime sum, prime-power log sums and the Buchstab identity
//!
//! S_z(x, y) = S_z(x, Y) + (1 - z) Σ_{y <= p < Y} S_z(x / p, p),   Y = y^h.

use num_complex::Complex64;

use super::omega::{count_nk, CountVector};
use super::prime_table::{isqrt, simple_primes, PrimeTable};
use crate::error::{Error, Result};

/// S_z(x, y) = Σ_{n <= x} z^{ω_y(n)}.
///
/// Evaluated as the polynomial Σ_k N_k(x, y) z^k from the exact histogram,
/// by Horner's rule from the highest k. z = 0 gives Φ(x, y) (0^0 = 1).
pub fn sum_sz(x: u64, y: u64, z: Complex64) -> Result<Complex64> {
    Ok(eval_counts(&count_nk(x, y)?, z))
}

/// Horner evaluation of Σ_k N_k z^k.
pub fn eval_counts(cv: &CountVector, z: Complex64) -> Complex64 {
    cv.counts
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &n| acc * z + n as f64)
}

/// Exact S_z(x, y) for integer z.
pub fn sum_sz_exact(x: u64, y: u64, z: i64) -> Result<i128> {
    let cv = count_nk(x, y)?;
    Ok(cv
        .counts
        .iter()
        .rev()
        .fold(0i128, |acc, &n| acc * z as i128 + n as i128))
}

/// Σ_{p < y} 1/p, summed in ascending order of p.
pub fn mertens_sum(y: u64) -> Result<f64> {
    if y < 3 {
        return Err(Error::Domain(format!("mertens_sum needs y >= 3, got {y}")));
    }
    let table = PrimeTable::build(y - 1)?;
    Ok(reciprocal_sum(table.primes_below(y)))
}

pub(crate) fn reciprocal_sum(primes: &[u64]) -> f64 {
    primes.iter().map(|&p| 1.0 / p as f64).sum()
}

/// Largest x for which [`prime_power_log_sum`] enumerates.
pub const PRIME_POWER_SUM_MAX_X: u64 = 10_000_000;
/// Largest k for which [`prime_power_log_sum`] enumerates.
pub const PRIME_POWER_SUM_MAX_K: usize = 3;

/// Σ log^l(P) / P over P = p_1^{e_1} ··· p_k^{e_k} < x with distinct primes
/// p_1 < ... < p_k and every e_j >= 1.
pub fn prime_power_log_sum(x: u64, k: usize, l: u32) -> Result<f64> {
    if x < 2 || k < 1 {
        return Err(Error::Domain(format!(
            "prime_power_log_sum needs x >= 2 and k >= 1 (x = {x}, k = {k})"
        )));
    }
    if x > PRIME_POWER_SUM_MAX_X || k > PRIME_POWER_SUM_MAX_K {
        return Err(Error::Resource(format!(
            "enumeration with x = {x}, k = {k} is too large; \
             supported ranges are x <= {PRIME_POWER_SUM_MAX_X}, k <= {PRIME_POWER_SUM_MAX_K}"
        )));
    }
    let primes = simple_primes(x - 1);
    let mut total = 0.0;
    for_each_prime_power_product(&primes, k, x - 1, &mut |p| {
        let v = p as f64;
        total += v.ln().powi(l as i32) / v;
    });
    Ok(total)
}

/// Calls `f` with every product of `k` prime powers with distinct primes
/// drawn from the ascending slice `primes`, with product <= `limit`.
pub fn for_each_prime_power_product(
    primes: &[u64],
    k: usize,
    limit: u64,
    f: &mut dyn FnMut(u64),
) {
    fn rec(primes: &[u64], start: usize, k: usize, cur: u64, limit: u64, f: &mut dyn FnMut(u64)) {
        if k == 0 {
            f(cur);
            return;
        }
        for i in start..primes.len() {
            let p = primes[i];
            // need room for k - 1 further primes, each > p
            if cur.saturating_mul(p.saturating_pow(k as u32)) > limit {
                break;
            }
            let mut q = p;
            while cur.saturating_mul(q) <= limit {
                rec(primes, i + 1, k - 1, cur * q, limit, f);
                q = q.saturating_mul(p);
            }
        }
    }
    rec(primes, 0, k, 1, limit, f);
}

/// Distinct prime factors of every n <= x, stored as a smallest-prime-factor
/// array. Used to evaluate S_z(m, t) for many (m, t) without re-sieving.
struct FactorTable {
    spf: Vec<u32>,
}

impl FactorTable {
    fn new(x: u64) -> Self {
        let len = x as usize + 1;
        let mut spf = vec![0u32; len];
        for p in simple_primes(isqrt(x)) {
            let mut j = (p * p) as usize;
            while j < len {
                if spf[j] == 0 {
                    spf[j] = p as u32;
                }
                j += p as usize;
            }
        }
        for (n, s) in spf.iter_mut().enumerate().skip(2) {
            if *s == 0 {
                *s = n as u32;
            }
        }
        FactorTable { spf }
    }

    /// Number of distinct primes below t dividing n.
    fn omega_below(&self, mut n: u64, t: u64) -> u32 {
        let mut count = 0;
        while n > 1 {
            let p = self.spf[n as usize] as u64;
            if p >= t {
                break; // factors come out in ascending order
            }
            count += 1;
            while n % p == 0 {
                n /= p;
            }
        }
        count
    }

    fn sum<T: Copy + std::ops::AddAssign>(&self, m: u64, t: u64, pow: &[T], zero: T) -> T {
        let mut s = zero;
        for n in 1..=m {
            s += pow[self.omega_below(n, t) as usize];
        }
        s
    }
}

/// Largest x accepted by the Buchstab identity check.
pub const IDENTITY_MAX_X: u64 = 50_000_000;

/// Integer threshold Y with {p : p < y^h} = {p : p < Y}.
pub fn identity_upper(y: u64, h: f64) -> u64 {
    let v = (y as f64).powf(h);
    let r = v.round();
    if (v - r).abs() <= 1e-9 * r.max(1.0) {
        r as u64
    } else {
        v.ceil() as u64
    }
}

struct IdentityTerms<T> {
    lhs: T,
    rhs: T,
}

fn identity_terms<T>(
    x: u64,
    y: u64,
    h: f64,
    z: T,
    one: T,
    zero: T,
) -> Result<IdentityTerms<T>>
where
    T: Copy + std::ops::AddAssign + std::ops::Mul<Output = T> + std::ops::Sub<Output = T>,
{
    if !(y >= 2 && x >= y && h >= 1.0) {
        return Err(Error::Domain(format!(
            "identity needs x >= y >= 2 and h >= 1 (x = {x}, y = {y}, h = {h})"
        )));
    }
    let upper = identity_upper(y, h);
    if upper > x + 1 {
        return Err(Error::Domain(format!("y^h = {upper} exceeds x = {x}")));
    }
    if x > IDENTITY_MAX_X {
        return Err(Error::Resource(format!(
            "identity check limited to x <= {IDENTITY_MAX_X}"
        )));
    }
    let table = FactorTable::new(x);
    let mut pow = vec![one; 32];
    for i in 1..pow.len() {
        pow[i] = pow[i - 1] * z;
    }
    let lhs = table.sum(x, y, &pow, zero);
    let mut inner = zero;
    for p in y..upper {
        if table.spf[p as usize] as u64 == p {
            inner += table.sum(x / p, p, &pow, zero);
        }
    }
    let rhs_head = table.sum(x, upper, &pow, zero);
    let mut rhs = rhs_head;
    rhs += (one - z) * inner;
    Ok(IdentityTerms { lhs, rhs })
}

/// |S_z(x, y) - S_z(x, y^h) - (1 - z) Σ_{y <= p < y^h} S_z(x/p, p)| in
/// floating point.
pub fn buchstab_identity_residual(x: u64, y: u64, h: f64, z: Complex64) -> Result<f64> {
    let t = identity_terms(x, y, h, z, Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0))?;
    Ok((t.lhs - t.rhs).norm())
}

/// The same residual in exact integer arithmetic for integer z; an exact
/// identity returns 0.
pub fn buchstab_identity_residual_exact(x: u64, y: u64, h: f64, z: i64) -> Result<i128> {
    let t = identity_terms(x, y, h, z as i128, 1i128, 0i128)?;
    Ok((t.lhs - t.rhs).abs())
}

/// Floating-point tolerance for the residual: 1e-9 (1 + |z|)^{log2 x} x.
pub fn identity_tolerance(x: u64, z: Complex64) -> f64 {
    1e-9 * (1.0 + z.norm()).powf((x as f64).log2()) * x as f64
}

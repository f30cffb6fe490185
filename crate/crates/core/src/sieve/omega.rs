//! ω_y(n), the number of distinct primes p < y dividing n, and its histogram
//! N_k(x, y) over n <= x.
//!
//! The histogram is produced by a segmented sieve. Only primes up to √x are
//! ever enumerated: for each n in a segment we accumulate the part of n made
//! of those primes, and the leftover cofactor (if > 1) is the single prime
//! factor of n above √x. It counts towards ω_y(n) exactly when it is < y.

use rayon::prelude::*;

use super::prime_table::{isqrt, simple_primes, PrimeTable};
use crate::error::{Error, Result};

/// Segment length of the ω sieve.
pub const SEGMENT_LEN: u64 = 1 << 20;

/// Largest x accepted by the ω sieve (the cofactor array is 32-bit).
pub const MAX_X: u64 = u32::MAX as u64;

/// Exact N_k(x, y) for k = 0..=k_max.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountVector {
    pub x: u64,
    pub y: u64,
    pub counts: Vec<u64>,
}

impl CountVector {
    /// N_k, zero beyond the observed maximum.
    pub fn get(&self, k: usize) -> u64 {
        self.counts.get(k).copied().unwrap_or(0)
    }

    pub fn k_max(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

/// ω_y(n) for every n in [1, x].
#[derive(Clone, Debug)]
pub struct OmegaTable {
    pub x: u64,
    pub y: u64,
    omega: Vec<u8>,
}

impl OmegaTable {
    pub fn build(x: u64, y: u64) -> Result<Self> {
        check_xy(x, y)?;
        if x > 1 << 30 {
            return Err(Error::Resource(format!(
                "an explicit ω table for x = {x} would not fit in memory; use count_nk"
            )));
        }
        let sieve = OmegaSieve::new(x, y);
        let mut omega = vec![0u8; x as usize];
        omega
            .par_chunks_mut(SEGMENT_LEN as usize)
            .enumerate()
            .for_each(|(c, chunk)| {
                let lo = 1 + c as u64 * SEGMENT_LEN;
                sieve.segment(lo, lo + chunk.len() as u64, chunk);
            });
        Ok(OmegaTable { x, y, omega })
    }

    /// ω_y(n) for 1 <= n <= x.
    pub fn get(&self, n: u64) -> u8 {
        assert!(n >= 1 && n <= self.x, "n = {n} outside [1, {}]", self.x);
        self.omega[(n - 1) as usize]
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.omega
    }
}

fn check_xy(x: u64, y: u64) -> Result<()> {
    if x < 1 {
        return Err(Error::Domain("x must be >= 1".into()));
    }
    if y < 2 {
        return Err(Error::Domain(format!("y = {y} must be >= 2")));
    }
    if x > MAX_X {
        return Err(Error::Resource(format!(
            "x = {x} exceeds the sieve limit {MAX_X}"
        )));
    }
    Ok(())
}

/// ω_y(n) by trial division over `table`.
///
/// The table must hold every prime up to min(y - 1, √n).
pub fn omega_y(n: u64, y: u64, table: &PrimeTable) -> Result<u32> {
    if n < 1 {
        return Err(Error::Domain("n must be >= 1".into()));
    }
    if y < 2 {
        return Err(Error::Domain(format!("y = {y} must be >= 2")));
    }
    let needed = (y - 1).min(isqrt(n));
    if table.bound() < needed {
        return Err(Error::Domain(format!(
            "prime table bound {} too small for omega_y({n}, {y}); need {needed}",
            table.bound()
        )));
    }
    let mut m = n;
    let mut count = 0;
    for &p in table.primes() {
        if p >= y || p * p > m {
            break;
        }
        if m % p == 0 {
            count += 1;
            while m % p == 0 {
                m /= p;
            }
        }
    }
    if m > 1 && m < y {
        count += 1;
    }
    Ok(count)
}

/// Exact histogram of ω_y over [1, x].
pub fn count_nk(x: u64, y: u64) -> Result<CountVector> {
    check_xy(x, y)?;
    let sieve = OmegaSieve::new(x, y);
    let segments = x.div_ceil(SEGMENT_LEN);
    let hist = (0..segments)
        .into_par_iter()
        .map_init(
            || vec![0u8; SEGMENT_LEN as usize],
            |buf, s| {
                let lo = 1 + s * SEGMENT_LEN;
                let hi = (lo + SEGMENT_LEN).min(x + 1);
                let out = &mut buf[..(hi - lo) as usize];
                out.fill(0);
                sieve.segment(lo, hi, out);
                let mut h = [0u64; 16];
                for &w in out.iter() {
                    h[w as usize] += 1;
                }
                h
            },
        )
        .reduce(
            || [0u64; 16],
            |mut a, b| {
                for (u, v) in a.iter_mut().zip(b) {
                    *u += v;
                }
                a
            },
        );
    let top = hist.iter().rposition(|&c| c > 0).unwrap_or(0);
    Ok(CountVector {
        x,
        y,
        counts: hist[..=top].to_vec(),
    })
}

/// Classical N_k(x): ω counts every prime factor, i.e. y = x + 1.
pub fn count_nk_classical(x: u64) -> Result<CountVector> {
    let mut cv = count_nk(x, x + 1)?;
    cv.y = x;
    Ok(cv)
}

struct OmegaSieve {
    x: u64,
    y: u64,
    /// Primes p < y with p <= √x.
    small: Vec<u64>,
    /// Whether some prime in (√x, y) can divide an n <= x.
    large_possible: bool,
}

impl OmegaSieve {
    fn new(x: u64, y: u64) -> Self {
        let root = isqrt(x);
        let small = simple_primes(root.min(y - 1));
        let large_possible = y > root + 1 && x > root;
        OmegaSieve {
            x,
            y,
            small,
            large_possible,
        }
    }

    /// Fills `out[i]` with ω_y(lo + i) for lo + i < hi.
    fn segment(&self, lo: u64, hi: u64, out: &mut [u8]) {
        debug_assert!(hi <= self.x + 1);
        if !self.large_possible {
            for &p in &self.small {
                let mut m = lo.div_ceil(p) * p;
                while m < hi {
                    out[(m - lo) as usize] += 1;
                    m += p;
                }
            }
            return;
        }
        let len = (hi - lo) as usize;
        let mut part = vec![1u32; len];
        for &p in &self.small {
            let mut m = lo.div_ceil(p) * p;
            while m < hi {
                let i = (m - lo) as usize;
                out[i] += 1;
                part[i] *= p as u32;
                m += p;
            }
            let mut q = p * p;
            while q < hi {
                let mut m = lo.div_ceil(q) * q;
                while m < hi {
                    part[(m - lo) as usize] *= p as u32;
                    m += q;
                }
                q *= p;
            }
        }
        for (i, &d) in part.iter().enumerate() {
            let n = lo + i as u64;
            let cof = n / d as u64;
            if cof > 1 && cof < self.y {
                out[i] += 1;
            }
        }
    }
}

/// Histogram over squarefree n <= x of ω(n) (all prime factors counted), so
/// entry k is N_k*(x).
pub fn squarefree_counts(x: u64) -> Result<Vec<u64>> {
    check_xy(x, 2)?;
    let root = isqrt(x);
    let primes = simple_primes(root);
    let segments = x.div_ceil(SEGMENT_LEN);
    let hist = (0..segments)
        .into_par_iter()
        .map(|s| {
            let lo = 1 + s * SEGMENT_LEN;
            let hi = (lo + SEGMENT_LEN).min(x + 1);
            let len = (hi - lo) as usize;
            let mut omega = vec![0u8; len];
            let mut rest: Vec<u64> = (lo..hi).collect();
            let mut squarefree = vec![true; len];
            for &p in &primes {
                let mut m = lo.div_ceil(p) * p;
                while m < hi {
                    let i = (m - lo) as usize;
                    omega[i] += 1;
                    rest[i] /= p;
                    if rest[i] % p == 0 {
                        squarefree[i] = false;
                    }
                    m += p;
                }
            }
            let mut h = [0u64; 16];
            for i in 0..len {
                if squarefree[i] {
                    let extra = u8::from(rest[i] > 1);
                    h[(omega[i] + extra) as usize] += 1;
                }
            }
            h
        })
        .reduce(
            || [0u64; 16],
            |mut a, b| {
                for (u, v) in a.iter_mut().zip(b) {
                    *u += v;
                }
                a
            },
        );
    let top = hist.iter().rposition(|&c| c > 0).unwrap_or(0);
    Ok(hist[..=top].to_vec())
}

/// N_k*(x): squarefree n <= x with exactly k prime factors.
pub fn count_nk_squarefree(x: u64, k: usize) -> Result<u64> {
    Ok(squarefree_counts(x)?.get(k).copied().unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_omega(n: u64, y: u64) -> usize {
        (2..y.min(n + 1))
            .filter(|&p| n % p == 0 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0))
            .count()
    }

    fn brute_hist(x: u64, y: u64) -> Vec<u64> {
        let mut h = vec![0u64; 16];
        for n in 1..=x {
            h[trial_omega(n, y)] += 1;
        }
        let top = h.iter().rposition(|&c| c > 0).unwrap();
        h.truncate(top + 1);
        h
    }

    #[test]
    fn omega_examples() {
        let t = PrimeTable::build(1000).unwrap();
        assert_eq!(omega_y(84, 10, &t).unwrap(), 3);
        assert_eq!(omega_y(97, 97, &t).unwrap(), 0);
        assert_eq!(omega_y(97, 98, &t).unwrap(), 1);
        for n in 1..200 {
            assert_eq!(omega_y(n, 2, &t).unwrap(), 0);
        }
        let tiny = PrimeTable::build(10).unwrap();
        assert!(omega_y(10_403, 200, &tiny).is_err());
    }

    #[test]
    fn count_small_cases() {
        assert_eq!(count_nk(100, 11).unwrap().counts[0], 22);
        assert_eq!(count_nk(1, 50).unwrap().counts, vec![1]);
        let cv = count_nk(1000, 2).unwrap();
        assert_eq!(cv.counts, vec![1000]);
    }

    #[test]
    fn histogram_matches_trial_division() {
        for (x, y) in [(10_000, 100), (3000, 3000), (2500, 51), (1234, 1235), (999, 32)] {
            assert_eq!(count_nk(x, y).unwrap().counts, brute_hist(x, y), "x={x} y={y}");
        }
    }

    #[test]
    fn segments_join_correctly() {
        // crosses a segment boundary in both the small- and large-prime modes
        let x = SEGMENT_LEN + 12_345;
        for y in [50, 3000] {
            let cv = count_nk(x, y).unwrap();
            let table = OmegaTable::build(x, y).unwrap();
            let mut h = vec![0u64; cv.counts.len()];
            for &w in table.as_slice() {
                h[w as usize] += 1;
            }
            assert_eq!(h, cv.counts);
            let pt = PrimeTable::build(2000).unwrap();
            for n in [SEGMENT_LEN - 1, SEGMENT_LEN, SEGMENT_LEN + 1, x] {
                assert_eq!(table.get(n) as u32, omega_y(n, y, &pt).unwrap(), "n={n}");
            }
        }
    }

    #[test]
    fn squarefree_small() {
        assert_eq!(count_nk_squarefree(30, 1).unwrap(), 10);
        assert_eq!(count_nk_squarefree(500, 0).unwrap(), 1);
        let brute = (1..=100u64)
            .filter(|&n| {
                let mut m = n;
                let mut k = 0;
                for p in 2..=n {
                    if m % p == 0 {
                        m /= p;
                        if m % p == 0 {
                            return false;
                        }
                        k += 1;
                    }
                }
                k == 2
            })
            .count() as u64;
        assert_eq!(count_nk_squarefree(100, 2).unwrap(), brute);
    }

    #[test]
    fn bad_arguments() {
        assert!(matches!(count_nk(0, 5), Err(Error::Domain(_))));
        assert!(matches!(count_nk(10, 1), Err(Error::Domain(_))));
        assert!(matches!(count_nk(MAX_X + 1, 5), Err(Error::Resource(_))));
    }
}

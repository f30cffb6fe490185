//! Prime tables built by a segmented sieve of Eratosthenes, with an on-disk
//! cache.
//!
//! The cache layout is
//!
//! ```text
//! offset 0   "SPFL1"                      magic
//! offset 5   bound                        u64, little endian
//! offset 13  bitmap                       u64 words, little endian
//! ```
//!
//! where bit `i` of the bitmap is set when the odd number `2i + 1` is *not*
//! prime (1 is flagged as well). Even numbers are implicit.

use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use log::warn;
use rayon::prelude::*;

use crate::error::{Error, Result};

pub const CACHE_MAGIC: &[u8; 5] = b"SPFL1";

/// Largest bound for which the smallest-prime-factor array is stored densely.
/// Above it, [`PrimeTable::spf`] falls back to trial division by the table.
pub const DENSE_SPF_LIMIT: u64 = 1 << 22;

/// Largest bound accepted by [`PrimeTable::build`].
pub const MAX_BOUND: u64 = 4_000_000_000;

const SEGMENT_WORDS: usize = 1 << 14;

#[derive(Clone, Debug)]
pub struct PrimeTable {
    bound: u64,
    primes: Vec<u64>,
    spf: Vec<u32>,
}

impl PrimeTable {
    pub fn build(bound: u64) -> Result<Self> {
        check_bound(bound)?;
        let bitmap = odd_composite_bitmap(bound);
        Ok(Self::from_bitmap(bound, &bitmap))
    }

    /// Loads the table from `dir` when a usable cache exists, otherwise builds
    /// it and writes the cache. A corrupt or too-small cache is rebuilt.
    pub fn load_or_build(bound: u64, dir: &Path) -> Result<Self> {
        check_bound(bound)?;
        let path = cache_path(dir);
        if path.exists() {
            match read_cache(&path) {
                Ok((cached, bitmap)) if cached >= bound => {
                    return Ok(Self::from_bitmap(bound, &bitmap));
                }
                Ok(_) => {}
                Err(e) => warn!("prime cache {} unreadable ({e}); rebuilding", path.display()),
            }
        }
        let bitmap = odd_composite_bitmap(bound);
        fs::create_dir_all(dir)?;
        write_cache(&path, bound, &bitmap)?;
        Ok(Self::from_bitmap(bound, &bitmap))
    }

    fn from_bitmap(bound: u64, bitmap: &[u64]) -> Self {
        let mut primes = Vec::with_capacity(prime_count_estimate(bound));
        if bound >= 2 {
            primes.push(2);
        }
        let odd_count = odd_count(bound);
        for (w, &word) in bitmap.iter().enumerate() {
            let mut free = !word;
            while free != 0 {
                let bit = free.trailing_zeros() as u64;
                let i = w as u64 * 64 + bit;
                if i >= odd_count {
                    break;
                }
                primes.push(2 * i + 1);
                free &= free - 1;
            }
        }
        let spf = dense_spf(bound.min(DENSE_SPF_LIMIT), &primes);
        PrimeTable { bound, primes, spf }
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// Primes strictly below `y`.
    pub fn primes_below(&self, y: u64) -> &[u64] {
        &self.primes[..self.primes.partition_point(|&p| p < y)]
    }

    /// π(n) for `n <= bound`.
    pub fn pi(&self, n: u64) -> Result<u64> {
        if n > self.bound {
            return Err(Error::Domain(format!(
                "pi({n}) requested from a table bounded by {}",
                self.bound
            )));
        }
        Ok(self.primes.partition_point(|&p| p <= n) as u64)
    }

    pub fn is_prime(&self, n: u64) -> bool {
        n <= self.bound && self.primes.binary_search(&n).is_ok()
    }

    /// Smallest prime factor of `n` for `2 <= n <= bound`.
    pub fn spf(&self, n: u64) -> Result<u64> {
        if n < 2 || n > self.bound {
            return Err(Error::Domain(format!(
                "spf({n}) outside [2, {}]",
                self.bound
            )));
        }
        if (n as usize) < self.spf.len() {
            return Ok(self.spf[n as usize] as u64);
        }
        for &p in &self.primes {
            if p * p > n {
                break;
            }
            if n % p == 0 {
                return Ok(p);
            }
        }
        Ok(n)
    }
}

fn check_bound(bound: u64) -> Result<()> {
    if bound < 2 {
        return Err(Error::Domain(format!("prime table bound {bound} < 2")));
    }
    if bound > MAX_BOUND {
        return Err(Error::Resource(format!(
            "prime table bound {bound} exceeds the supported maximum {MAX_BOUND}"
        )));
    }
    Ok(())
}

fn odd_count(bound: u64) -> u64 {
    bound.div_ceil(2)
}

fn prime_count_estimate(bound: u64) -> usize {
    let b = bound.max(3) as f64;
    (1.3 * b / b.ln()) as usize + 16
}

pub fn cache_path(dir: &Path) -> PathBuf {
    dir.join("primes.spfl")
}

/// Bitmap over odd numbers `1, 3, 5, ..., <= bound`; set bits are non-primes.
pub fn odd_composite_bitmap(bound: u64) -> Vec<u64> {
    let odd_total = odd_count(bound);
    let words = odd_total.div_ceil(64) as usize;
    let mut bitmap = vec![0u64; words];
    let root = isqrt(bound);
    let base = simple_odd_primes(root);

    bitmap
        .par_chunks_mut(SEGMENT_WORDS)
        .enumerate()
        .for_each(|(c, chunk)| {
            let lo = (c * SEGMENT_WORDS * 64) as u64;
            let hi = (lo + chunk.len() as u64 * 64).min(odd_total);
            for &p in &base {
                // odd multiples of p from p*p, expressed as odd indices
                let first = (p * p - 1) / 2;
                let mut i = if first >= lo {
                    first
                } else {
                    let n_lo = 2 * lo + 1;
                    let mut m = n_lo.div_ceil(p) * p;
                    if m % 2 == 0 {
                        m += p;
                    }
                    (m - 1) / 2
                };
                while i < hi {
                    let r = (i - lo) as usize;
                    chunk[r >> 6] |= 1 << (r & 63);
                    i += p;
                }
            }
        });
    if !bitmap.is_empty() {
        bitmap[0] |= 1; // 1 is not prime
    }
    // clear padding bits so the file content is canonical
    let tail = odd_total % 64;
    if tail != 0 {
        if let Some(last) = bitmap.last_mut() {
            *last &= (1u64 << tail) - 1;
        }
    }
    bitmap
}

/// Odd primes up to `n` by a plain sieve.
pub(crate) fn simple_odd_primes(n: u64) -> Vec<u64> {
    simple_primes(n).into_iter().filter(|&p| p != 2).collect()
}

/// All primes up to `n` by a plain (unsegmented) sieve.
pub(crate) fn simple_primes(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

fn dense_spf(limit: u64, primes: &[u64]) -> Vec<u32> {
    let len = limit as usize + 1;
    let mut spf = vec![0u32; len];
    for &p in primes {
        if p > limit {
            break;
        }
        let p = p as usize;
        if spf[p] != 0 {
            continue;
        }
        let mut j = p;
        while j < len {
            if spf[j] == 0 {
                spf[j] = p as u32;
            }
            j += p;
        }
    }
    spf
}

pub fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

fn write_cache(path: &Path, bound: u64, bitmap: &[u64]) -> Result<()> {
    let tmp = path.with_extension("tmp");
    {
        let mut f = std::io::BufWriter::new(fs::File::create(&tmp)?);
        f.write_all(CACHE_MAGIC)?;
        f.write_all(&bound.to_le_bytes())?;
        for w in bitmap {
            f.write_all(&w.to_le_bytes())?;
        }
        f.flush()?;
    }
    fs::rename(tmp, path)?;
    Ok(())
}

fn read_cache(path: &Path) -> Result<(u64, Vec<u64>)> {
    let mut bytes = Vec::new();
    fs::File::open(path)?.read_to_end(&mut bytes)?;
    if bytes.len() < 13 || &bytes[..5] != CACHE_MAGIC {
        return Err(Error::Spec("bad magic".into()));
    }
    let bound = u64::from_le_bytes(bytes[5..13].try_into().unwrap());
    if !(2..=MAX_BOUND).contains(&bound) {
        return Err(Error::Spec(format!("implausible bound {bound}")));
    }
    let words = odd_count(bound).div_ceil(64) as usize;
    let body = &bytes[13..];
    if body.len() != words * 8 {
        return Err(Error::Spec(format!(
            "bitmap length {} does not match bound {bound}",
            body.len()
        )));
    }
    let bitmap = body
        .chunks_exact(8)
        .map(|c| u64::from_le_bytes(c.try_into().unwrap()))
        .collect::<Vec<_>>();
    if bitmap.first().is_none_or(|w| w & 1 == 0) {
        return Err(Error::Spec("bitmap does not flag 1".into()));
    }
    Ok((bound, bitmap))
}

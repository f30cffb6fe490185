//! Legendre's partial sieve function Φ(x, y): the number of n <= x with no
//! prime factor p < y.
//!
//! Computed by the recursion Φ(v, a) = Φ(v, a - 1) - Φ(v / p_a, a - 1) over
//! the first `a` primes, memoized, and cut short once p_a² > v (then the
//! survivors are 1 and the primes in (p_a, v]). It does not use the ω sieve.

use std::collections::HashMap;

use super::prime_table::PrimeTable;
use crate::error::{Error, Result};

pub fn phi(x: u64, y: u64) -> Result<u64> {
    if x < 1 {
        return Err(Error::Domain("x must be >= 1".into()));
    }
    if y < 2 {
        return Err(Error::Domain(format!("y = {y} must be >= 2")));
    }
    let table = PrimeTable::build(x.max(2))?;
    phi_with_table(x, y, &table)
}

/// Same as [`phi`] with a caller-supplied table (bound >= x).
pub fn phi_with_table(x: u64, y: u64, table: &PrimeTable) -> Result<u64> {
    if table.bound() < x {
        return Err(Error::Domain(format!(
            "prime table bound {} < x = {x}",
            table.bound()
        )));
    }
    let a = table.primes_below(y).len();
    let mut ctx = Legendre {
        table,
        memo: HashMap::new(),
    };
    Ok(ctx.phi(x, a))
}

struct Legendre<'a> {
    table: &'a PrimeTable,
    memo: HashMap<(u64, usize), u64>,
}

impl Legendre<'_> {
    fn phi(&mut self, v: u64, a: usize) -> u64 {
        if a == 0 || v == 0 {
            return v;
        }
        let primes = self.table.primes();
        let pa = primes[a - 1];
        if pa >= v {
            return 1;
        }
        if pa * pa > v {
            // survivors: 1 and primes in (p_a, v]
            let pi_v = self.table.pi(v).expect("v <= x <= bound");
            return 1 + pi_v - a as u64;
        }
        if let Some(&hit) = self.memo.get(&(v, a)) {
            return hit;
        }
        let r = self.phi(v, a - 1) - self.phi(v / pa, a - 1);
        self.memo.insert((v, a), r);
        r
    }
}

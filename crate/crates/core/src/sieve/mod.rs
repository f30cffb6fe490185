//! Exact, sieve-based arithmetic: prime tables, ω_y(n), N_k(x, y), Φ(x, y),
//! S_z(x, y) and the prime sums used by the predictors.

mod omega;
mod phi;
mod prime_table;
mod sums;

pub use omega::{
    count_nk, count_nk_classical, count_nk_squarefree, omega_y, squarefree_counts, CountVector,
    OmegaTable, MAX_X, SEGMENT_LEN,
};
pub use phi::{phi, phi_with_table};
pub use prime_table::{cache_path, isqrt, PrimeTable, CACHE_MAGIC, DENSE_SPF_LIMIT, MAX_BOUND};
pub use sums::{
    buchstab_identity_residual, buchstab_identity_residual_exact, eval_counts,
    for_each_prime_power_product, identity_tolerance, identity_upper, mertens_sum,
    prime_power_log_sum, sum_sz, sum_sz_exact, IDENTITY_MAX_X,
};

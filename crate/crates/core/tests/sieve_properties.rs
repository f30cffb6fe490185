use omegay::sieve::{
    buchstab_identity_residual, buchstab_identity_residual_exact, count_nk, count_nk_classical,
    identity_tolerance, identity_upper, phi, squarefree_counts, sum_sz_exact,
};
use omegay::ComplexValue as C;
use proptest::prelude::*;

fn omega_brute(n: u64, y: u64) -> usize {
    (2..y.min(n + 1)).filter(|&p| n % p == 0 && (2..p).all(|d| p % d != 0)).count()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn partition_and_phi(x in 1u64..30_000, y in 2u64..400) {
        let cv = count_nk(x, y).unwrap();
        prop_assert_eq!(cv.total(), x);
        prop_assert_eq!(cv.get(0), phi(x, y).unwrap());
    }

    #[test]
    fn counts_match_trial_division(x in 1u64..600, y in 2u64..700) {
        let cv = count_nk(x, y).unwrap();
        let mut want = vec![0u64; cv.counts.len().max(8)];
        for n in 1..=x {
            want[omega_brute(n, y)] += 1;
        }
        for (k, &w) in want.iter().enumerate() {
            prop_assert_eq!(cv.get(k), w);
        }
    }

    #[test]
    fn buchstab_identity_exact(x in 4u64..20_000, y in 2u64..150, h in 1.0f64..4.0, z in -3i64..=3) {
        prop_assume!(y <= x && identity_upper(y, h) <= x + 1);
        prop_assert_eq!(buchstab_identity_residual_exact(x, y, h, z).unwrap(), 0);
    }

    #[test]
    fn buchstab_identity_complex(x in 4u64..20_000, y in 2u64..150, h in 1.0f64..4.0,
                                 re in -2.0f64..2.0, im in -2.0f64..2.0) {
        prop_assume!(y <= x && identity_upper(y, h) <= x + 1);
        let z = C::new(re, im);
        let r = buchstab_identity_residual(x, y, h, z).unwrap();
        prop_assert!(r <= identity_tolerance(x, z), "{}", r);
    }

    #[test]
    fn monotone_in_x_and_y(x in 1u64..20_000, dx in 0u64..500, y in 2u64..300, dy in 0u64..300) {
        // Φ grows with x and shrinks as y grows; S_2 grows with y
        prop_assert!(phi(x + dx, y).unwrap() >= phi(x, y).unwrap());
        prop_assert!(phi(x, y + dy).unwrap() <= phi(x, y).unwrap());
        prop_assert!(sum_sz_exact(x, y + dy, 2).unwrap() >= sum_sz_exact(x, y, 2).unwrap());
    }

    #[test]
    fn squarefree_dominated(x in 1u64..50_000) {
        let all = count_nk_classical(x).unwrap();
        let sf = squarefree_counts(x).unwrap();
        for (k, &n) in sf.iter().enumerate() {
            prop_assert!(n <= all.get(k));
        }
    }
}

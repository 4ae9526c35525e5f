use orbitforge_core::arith::{factor_integer, gcd, is_prime};
use orbitforge_core::field::Field;
use orbitforge_core::orders::{
    crt_exponent_split, order_of_power, partner_order_prime, partner_order_prime_power, power_keeps_p,
    three_length_construction, vp, OrderError,
};
use proptest::prelude::*;

/// Order of `x` in the additive group `Z_n`, by repeated addition.
fn z_order(x: u64, n: u64) -> u64 {
    let mut acc = x % n;
    let mut k = 1;
    while acc != 0 {
        acc = (acc + x) % n;
        k += 1;
    }
    k
}

const SMALL_PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

proptest! {
    #[test]
    fn valuation_matches_division(n in 1u64..1_000_000, i in 0..SMALL_PRIMES.len()) {
        let p = SMALL_PRIMES[i];
        let e = vp(n, p);
        prop_assert_eq!(n % p.pow(e), 0);
        prop_assert_ne!(n % p.pow(e + 1), 0);
    }

    #[test]
    fn order_of_power_matches_cyclic_group(m in 1u64..2000, s in 1u64..5000) {
        prop_assert_eq!(order_of_power(m, s), z_order(s, m));
    }

    #[test]
    fn power_keeps_p_iff_valuation_drops(m in 1u64..5000, s in 1u64..5000, i in 0..SMALL_PRIMES.len()) {
        let p = SMALL_PRIMES[i];
        prop_assert_eq!(power_keeps_p(m, s, p), z_order(s, m) % p == 0);
    }

    #[test]
    fn crt_split_postconditions(a in 1u64..200, b in 1u64..200) {
        let r = a * b;
        match crt_exponent_split(r, a, b) {
            Ok((k1, k2)) => {
                prop_assert_eq!(gcd(a, b), 1);
                prop_assert!((1..=r).contains(&k1));
                prop_assert_eq!(k1 + k2, r + 1);
                prop_assert_eq!(z_order(k1, r), a);
                prop_assert_eq!(z_order(k2, r), b);
            }
            Err(e) => {
                prop_assert!(gcd(a, b) != 1);
                prop_assert_eq!(e, OrderError::NotCoprime { m: a, n: b });
            }
        }
    }

    #[test]
    fn partner_orders_in_random_cyclic_groups(n in 2u64..400, x in 0u64..400, y in 0u64..400) {
        let (x, y) = (x % n, y % n);
        let (o1, o2, r) = (z_order(x, n), z_order(y, n), z_order((x + y) % n, n));
        if is_prime(r) {
            let m = o1.min(o2);
            prop_assert_eq!(partner_order_prime(m, r).partner_order(m), o1.max(o2));
        }
        if let Some((p, alpha)) = factor_integer(r).as_prime_power() {
            let (m, other) = if vp(o1, p) <= vp(o2, p) { (o1, o2) } else { (o2, o1) };
            prop_assert_eq!(partner_order_prime_power(m, p, alpha).partner_order(m), other);
        }
    }
}

#[test]
fn three_length_witness_orders_in_small_prime_fields() {
    for p in [7u64, 11, 13, 19, 31, 37, 43, 61] {
        let f = Field::prime(p).unwrap();
        for b in f.units() {
            let r = (-&b).multiplicative_order().unwrap();
            match three_length_construction(&f, &b) {
                Ok(w) => {
                    assert_eq!(gcd(w.m, w.n), 1);
                    assert_eq!(w.m * w.n, r);
                    assert_eq!(w.gamma1.multiplicative_order().unwrap(), w.m);
                    assert_eq!(w.gamma2.multiplicative_order().unwrap(), w.n);
                    assert_eq!(&w.gamma1 * &w.gamma2, -&b);
                    assert_eq!(&w.gamma1 + &w.gamma2, w.a);
                }
                Err(OrderError::PrimePowerOrder(got)) => {
                    assert_eq!(got, r);
                    assert!(r == 1 || factor_integer(r).is_prime_power());
                }
                Err(e) => panic!("{p}, b={}: {e}", b.value()),
            }
        }
    }
}

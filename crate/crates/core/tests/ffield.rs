mod common;

use std::sync::Arc;

use common::field;
use groupcode::ffield::Field;
use proptest::prelude::*;

const UP_TO_16: [u32; 10] = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16];

fn prime_powers_up_to(n: u32) -> Vec<u32> {
    (2..=n)
        .filter(|&q| {
            let p = (2..=q).find(|p| q % p == 0).unwrap();
            let mut x = q;
            while x % p == 0 {
                x /= p;
            }
            x == 1
        })
        .collect()
}

/// `F_q` with the built-in modulus, or the first monic modulus the library
/// accepts as irreducible.
fn field_of_order(q: u32) -> Arc<Field> {
    if let Ok(f) = Field::parse(&q.to_string()) {
        return f;
    }
    let p = (2..=q).find(|p| q.is_multiple_of(*p)).unwrap();
    let k = (1..).find(|&k| p.pow(k) == q).unwrap();
    (0..q)
        .find_map(|x| {
            let coeffs: Vec<String> = (0..k).map(|i| ((x / p.pow(i)) % p).to_string()).collect();
            Field::parse(&format!("{p}^{k}:{},1", coeffs.join(","))).ok()
        })
        .expect("an irreducible modulus exists")
}

#[test]
fn axioms_hold_exhaustively() {
    for q in UP_TO_16 {
        let f = field(&q.to_string());
        assert_eq!(f.order(), q);
        let all: Vec<u32> = f.elements().collect();
        assert_eq!(all.len(), q as usize);
        for &a in &all {
            assert_eq!(f.add(a, f.zero()), a);
            assert_eq!(f.mul(a, f.one()), a);
            assert_eq!(f.add(a, f.neg(a)), f.zero(), "q={q} a={a}");
            if a != 0 {
                let inv = f.inv(a).unwrap();
                assert_eq!(f.mul(a, inv), f.one(), "q={q} a={a}");
            } else {
                assert_eq!(f.inv(a), None);
            }
            for &b in &all {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                assert_eq!(f.sub(f.add(a, b), b), a);
                for &c in &all {
                    assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                    assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)), "q={q}");
                }
            }
        }
    }
}

#[test]
fn multiplicative_group_has_order_q_minus_one() {
    let qs = prime_powers_up_to(64);
    assert_eq!(qs.len(), 27);
    for q in qs {
        let f = field_of_order(q);
        assert_eq!(f.order(), q);
        for a in 1..q {
            assert_eq!(f.pow(a, (q - 1) as u64), 1, "q={q} a={a}");
        }
        let cyclic = (1..q).any(|g| (1..q - 1).all(|e| f.pow(g, e as u64) != 1));
        assert!(cyclic || q == 2, "no primitive element in F_{q}");
    }
}

#[test]
fn non_prime_powers_are_rejected() {
    for q in [1u32, 6, 10, 12, 15, 18] {
        assert!(Field::parse(&q.to_string()).is_err(), "q={q}");
    }
    assert!(Field::parse("2^2:1,0,1").is_err());
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn larger_fields_are_associative(q in prop::sample::select(vec![27u32, 32, 81, 125, 243, 256, 343]),
                                     a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let f = field_of_order(q);
        let (a, b, c) = (a % q, b % q, c % q);
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.pow(a, 0), 1);
        prop_assert_eq!(f.from_coeffs(&f.coeffs(a)).unwrap(), a);
        if a != 0 {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
    }
}

//! Property tests: the reduction map is a ring homomorphism, residues prime
//! to p form a group under multiplication, reductions commute with lowering
//! the exponent, and truncated series multiplication agrees with the exact
//! product below the truncation order.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use supercong_core::arith::{odd_primes, reduce_rational, PrimePowerModulus, ResidueClass};
use supercong_core::qseries::QSeries;

fn small_prime() -> impl Strategy<Value = u64> {
    prop_oneof![Just(5u64), Just(7), Just(13), Just(101), Just(499)]
}

fn rational_prime_to(p: u64) -> impl Strategy<Value = BigRational> {
    (any::<i32>(), 1i32..100_000).prop_filter_map("denominator prime to p", move |(n, d)| {
        if d as u64 % p == 0 {
            None
        } else {
            Some(BigRational::new(BigInt::from(n), BigInt::from(d)))
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn reduction_is_additive_and_multiplicative(
        p in small_prime(),
        r in 1u32..4,
        pair in (any::<i32>(), 1i32..100_000, any::<i32>(), 1i32..100_000),
    ) {
        let (xn, xd, yn, yd) = pair;
        prop_assume!(xd as u64 % p != 0 && yd as u64 % p != 0);
        let x = BigRational::new(BigInt::from(xn), BigInt::from(xd));
        let y = BigRational::new(BigInt::from(yn), BigInt::from(yd));
        let m = PrimePowerModulus::new(p, r).unwrap();
        let rx = reduce_rational(&x, &m).unwrap();
        let ry = reduce_rational(&y, &m).unwrap();
        let sum = reduce_rational(&(&x + &y), &m).unwrap();
        let prod = reduce_rational(&(&x * &y), &m).unwrap();
        prop_assert_eq!(&rx + &ry, sum);
        prop_assert_eq!(&rx * &ry, prod);
    }

    #[test]
    fn units_invert(p in small_prime(), r in 1u32..4, v in 1u64..1_000_000) {
        prop_assume!(v % p != 0);
        let m = PrimePowerModulus::new(p, r).unwrap();
        let a = ResidueClass::from_u64(v, m.clone());
        let inv = a.inverse().unwrap();
        prop_assert_eq!(&a * &inv, ResidueClass::one(m));
    }

    #[test]
    fn lowering_the_exponent_commutes(p in small_prime(), x in rational_prime_to(5)) {
        // rebuild x with a denominator prime to the sampled p
        prop_assume!(x.denom() % BigInt::from(p) != BigInt::zero());
        let m3 = PrimePowerModulus::new(p, 3).unwrap();
        let m1 = PrimePowerModulus::new(p, 1).unwrap();
        let via_tower = reduce_rational(&x, &m3).unwrap().reduce_to(1);
        let direct = reduce_rational(&x, &m1).unwrap();
        prop_assert_eq!(via_tower, direct);
    }

    #[test]
    fn series_product_is_exact_below_precision(
        a in proptest::collection::vec(-9i64..10, 1..24),
        b in proptest::collection::vec(-9i64..10, 1..24),
    ) {
        let n = 24usize;
        let mut sa = QSeries::zero(n);
        let mut sb = QSeries::zero(n);
        let mut wa = QSeries::zero(2 * n);
        let mut wb = QSeries::zero(2 * n);
        // no direct coefficient setter: build via shifted constants
        for (i, &c) in a.iter().enumerate() {
            let one = QSeries::one(1).scale(c);
            sa = sa.add(&one.shift(i, n));
            wa = wa.add(&one.shift(i, 2 * n));
        }
        for (i, &c) in b.iter().enumerate() {
            let one = QSeries::one(1).scale(c);
            sb = sb.add(&one.shift(i, n));
            wb = wb.add(&one.shift(i, 2 * n));
        }
        let narrow = sa.mul(&sb);
        let wide = wa.mul(&wb);
        for i in 0..n {
            prop_assert_eq!(narrow.coeff(i), wide.coeff(i));
        }
    }
}

#[test]
fn wolstenholme_across_the_sweep() {
    // classical consequence used as a pipeline self-test: H_{p-1} = 0 mod p^2
    // for p >= 5 (fails at p = 3)
    for p in odd_primes(5, 500) {
        let m = PrimePowerModulus::new(p, 2).unwrap();
        let h = supercong_core::harmonic::ResidueHarmonics::new(m, p - 1);
        assert!(h.h(p - 1).is_zero(), "p={p}");
    }
}

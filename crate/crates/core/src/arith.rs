//! Exact rationals and residue-class arithmetic modulo odd prime powers.
//!
//! Everything downstream reduces exact `BigRational` values into
//! [`ResidueClass`] elements modulo `p^r`. Two reduction styles are provided:
//!
//! - [`reduce_rational`]: reduce a finished exact value (denominator must be
//!   prime to `p`);
//! - [`StreamingSum`]: accumulate a sum term by term, tracking the p-adic
//!   valuation of each term so that terms divisible by high powers of `p`
//!   (for example the tail of a truncated hypergeometric sum) reduce cleanly.

use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ArithError {
    /// The requested modulus base is not an odd prime.
    NotAnOddPrime(u64),
    /// The requested exponent is zero.
    ZeroExponent,
    /// Inverse of a residue divisible by `p`.
    NonInvertible,
    /// Reduction of a rational whose denominator is divisible by `p`.
    NonInvertibleDenominator,
    /// p-adic valuation of zero requested.
    ZeroValuation,
}

impl fmt::Display for ArithError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArithError::NotAnOddPrime(n) => write!(f, "{n} is not an odd prime"),
            ArithError::ZeroExponent => f.write_str("prime-power exponent must be positive"),
            ArithError::NonInvertible => f.write_str("residue is divisible by p, no inverse"),
            ArithError::NonInvertibleDenominator => {
                f.write_str("denominator is divisible by p; track the valuation separately")
            }
            ArithError::ZeroValuation => f.write_str("the p-adic valuation of zero is undefined"),
        }
    }
}

pub(crate) fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn powmod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, m);
        }
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic primality test: trial division below `10^6`, fixed
/// Miller-Rabin witnesses above (the twelve-witness set is exact for `u64`).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    if n < 1_000_000 {
        let mut d = 41u64;
        while d * d <= n {
            if n % d == 0 {
                return false;
            }
            d += 2;
        }
        return true;
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// All odd primes in `lo..=hi`, ascending.
pub fn odd_primes(lo: u64, hi: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut n = lo.max(3);
    if n % 2 == 0 {
        n += 1;
    }
    while n <= hi {
        if is_prime(n) {
            out.push(n);
        }
        n += 2;
    }
    out
}

/// An explicit odd prime power `p^r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimePowerModulus {
    p: u64,
    r: u32,
    modulus: BigInt,
}

impl PrimePowerModulus {
    pub fn new(p: u64, r: u32) -> Result<Self, ArithError> {
        if p < 3 || !is_prime(p) {
            return Err(ArithError::NotAnOddPrime(p));
        }
        if r == 0 {
            return Err(ArithError::ZeroExponent);
        }
        let modulus = BigInt::from(p).pow(r);
        Ok(PrimePowerModulus { p, r, modulus })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn exponent(&self) -> u32 {
        self.r
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    /// The same prime at a smaller exponent.
    pub fn lowered(&self, r: u32) -> Self {
        assert!(r >= 1 && r <= self.r, "exponent {r} out of range");
        PrimePowerModulus {
            p: self.p,
            r,
            modulus: BigInt::from(self.p).pow(r),
        }
    }
}

impl fmt::Display for PrimePowerModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.r == 1 {
            write!(f, "{}", self.p)
        } else {
            write!(f, "{}^{}", self.p, self.r)
        }
    }
}

/// An integer residue modulo an explicit odd prime power.
///
/// The stored representative is always the least non-negative one.
/// Arithmetic between residues carrying different moduli is rejected with a
/// panic; the moduli are part of the value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueClass {
    value: BigInt,
    modulus: PrimePowerModulus,
}

impl ResidueClass {
    pub fn new(value: BigInt, modulus: PrimePowerModulus) -> Self {
        let value = value.mod_floor(modulus.modulus());
        ResidueClass { value, modulus }
    }

    pub fn from_u64(value: u64, modulus: PrimePowerModulus) -> Self {
        Self::new(BigInt::from(value), modulus)
    }

    pub fn zero(modulus: PrimePowerModulus) -> Self {
        ResidueClass {
            value: BigInt::zero(),
            modulus,
        }
    }

    pub fn one(modulus: PrimePowerModulus) -> Self {
        Self::new(BigInt::one(), modulus)
    }

    pub fn value(&self) -> &BigInt {
        &self.value
    }

    pub fn modulus(&self) -> &PrimePowerModulus {
        &self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    /// Multiplicative inverse modulo `p^r`; fails when `p` divides the value.
    pub fn inverse(&self) -> Result<Self, ArithError> {
        if (&self.value % self.modulus.p).is_zero() {
            return Err(ArithError::NonInvertible);
        }
        let ext = self.value.extended_gcd(self.modulus.modulus());
        debug_assert!(ext.gcd.is_one());
        Ok(ResidueClass::new(ext.x, self.modulus.clone()))
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut base = self.clone();
        let mut acc = ResidueClass::one(self.modulus.clone());
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    /// Reduce to the same prime at a smaller exponent.
    pub fn reduce_to(&self, r: u32) -> Self {
        let m = self.modulus.lowered(r);
        ResidueClass::new(self.value.clone(), m)
    }

    fn check_same_modulus(&self, other: &Self) {
        assert!(
            self.modulus == other.modulus,
            "residue arithmetic between different moduli ({} vs {}) is rejected",
            self.modulus,
            other.modulus
        );
    }
}

impl fmt::Display for ResidueClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

impl Add for &ResidueClass {
    type Output = ResidueClass;
    fn add(self, rhs: &ResidueClass) -> ResidueClass {
        self.check_same_modulus(rhs);
        ResidueClass::new(&self.value + &rhs.value, self.modulus.clone())
    }
}

impl Sub for &ResidueClass {
    type Output = ResidueClass;
    fn sub(self, rhs: &ResidueClass) -> ResidueClass {
        self.check_same_modulus(rhs);
        ResidueClass::new(&self.value - &rhs.value, self.modulus.clone())
    }
}

impl Mul for &ResidueClass {
    type Output = ResidueClass;
    fn mul(self, rhs: &ResidueClass) -> ResidueClass {
        self.check_same_modulus(rhs);
        ResidueClass::new(&self.value * &rhs.value, self.modulus.clone())
    }
}

impl Neg for &ResidueClass {
    type Output = ResidueClass;
    fn neg(self) -> ResidueClass {
        ResidueClass::new(-&self.value, self.modulus.clone())
    }
}

/// p-adic valuation of a non-zero integer.
pub fn int_valuation(x: &BigInt, p: u64) -> Result<i64, ArithError> {
    if x.is_zero() {
        return Err(ArithError::ZeroValuation);
    }
    let p = BigInt::from(p);
    let mut v = 0i64;
    let mut n = x.abs();
    loop {
        let (q, rem) = n.div_rem(&p);
        if rem.is_zero() {
            v += 1;
            n = q;
        } else {
            return Ok(v);
        }
    }
}

/// p-adic valuation of a non-zero rational: `x = p^v * (unit prime to p)`.
pub fn padic_valuation(x: &BigRational, p: u64) -> Result<i64, ArithError> {
    if x.is_zero() {
        return Err(ArithError::ZeroValuation);
    }
    Ok(int_valuation(x.numer(), p)? - int_valuation(x.denom(), p)?)
}

/// Reduce an exact rational modulo `p^r` as `numerator * denominator^{-1}`.
///
/// The denominator (in lowest terms) must be prime to `p`; otherwise the
/// caller has to track the valuation itself, e.g. through [`StreamingSum`].
pub fn reduce_rational(
    x: &BigRational,
    modulus: &PrimePowerModulus,
) -> Result<ResidueClass, ArithError> {
    if x.is_zero() {
        return Ok(ResidueClass::zero(modulus.clone()));
    }
    let den = ResidueClass::new(x.denom().clone(), modulus.clone());
    if (den.value() % modulus.p).is_zero() {
        return Err(ArithError::NonInvertibleDenominator);
    }
    let num = ResidueClass::new(x.numer().clone(), modulus.clone());
    Ok(&num * &den.inverse()?)
}

/// Term-by-term reduction of a rational sum modulo `p^r`.
///
/// For a term with p-adic valuation `v >= 0` the contribution is
/// `p^v * (unit reduced mod p^{r-v})`, which equals the term modulo `p^r`
/// exactly; terms with `v >= r` vanish. Terms with `v < 0` are rejected.
pub struct StreamingSum {
    acc: ResidueClass,
}

impl StreamingSum {
    pub fn new(modulus: PrimePowerModulus) -> Self {
        StreamingSum {
            acc: ResidueClass::zero(modulus),
        }
    }

    pub fn add(&mut self, term: &BigRational) -> Result<(), ArithError> {
        if term.is_zero() {
            return Ok(());
        }
        let modulus = self.acc.modulus().clone();
        let p = modulus.prime();
        let r = modulus.exponent() as i64;
        let v = padic_valuation(term, p)?;
        if v < 0 {
            return Err(ArithError::NonInvertibleDenominator);
        }
        if v >= r {
            return Ok(());
        }
        let scale = BigInt::from(p).pow(v as u32);
        let unit_num = term.numer() / &scale;
        let unit = BigRational::new(unit_num, term.denom().clone());
        let reduced = reduce_rational(&unit, &modulus.lowered((r - v) as u32))?;
        let lifted = ResidueClass::new(reduced.value() * &scale, modulus);
        self.acc = &self.acc + &lifted;
        Ok(())
    }

    pub fn total(&self) -> ResidueClass {
        self.acc.clone()
    }
}

/// Convenience: exact rational from an integer pair.
pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Convenience: exact rational from a big integer.
pub fn ratio_int(num: BigInt) -> BigRational {
    BigRational::from_integer(num)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn modulus(p: u64, r: u32) -> PrimePowerModulus {
        PrimePowerModulus::new(p, r).unwrap()
    }

    #[test]
    fn primality_is_deterministic() {
        assert!(is_prime(3) && is_prime(5) && is_prime(999_983));
        assert!(is_prime(1_000_003));
        assert!(!is_prime(1) && !is_prime(9) && !is_prime(1_000_001));
        assert_eq!(odd_primes(3, 20), [3, 5, 7, 11, 13, 17, 19]);
    }

    #[test]
    fn modulus_rejects_bad_input() {
        assert_eq!(
            PrimePowerModulus::new(9, 2).unwrap_err(),
            ArithError::NotAnOddPrime(9)
        );
        assert_eq!(
            PrimePowerModulus::new(2, 2).unwrap_err(),
            ArithError::NotAnOddPrime(2)
        );
        assert_eq!(
            PrimePowerModulus::new(5, 0).unwrap_err(),
            ArithError::ZeroExponent
        );
    }

    #[test]
    fn reduce_rational_examples() {
        // 3/2 mod 25: 2^{-1} = 13, 3*13 = 39 = 14
        let r = reduce_rational(&ratio(3, 2), &modulus(5, 2)).unwrap();
        assert_eq!(r.value(), &BigInt::from(14));
        let r = reduce_rational(&ratio(0, 1), &modulus(7, 3)).unwrap();
        assert!(r.is_zero());
        // 11/6 = H_3 mod 25: 6^{-1} = 21, 231 = 6
        let r = reduce_rational(&ratio(11, 6), &modulus(5, 2)).unwrap();
        assert_eq!(r.value(), &BigInt::from(6));
        assert_eq!(
            reduce_rational(&ratio(1, 5), &modulus(5, 2)).unwrap_err(),
            ArithError::NonInvertibleDenominator
        );
    }

    #[test]
    fn inverse_examples() {
        let m = modulus(3, 3);
        let r = ResidueClass::from_u64(16, m.clone()).inverse().unwrap();
        assert_eq!(r.value(), &BigInt::from(22));
        let r = ResidueClass::one(m.clone()).inverse().unwrap();
        assert_eq!(r.value(), &BigInt::from(1));
        let r = ResidueClass::from_u64(10, m.clone()).inverse().unwrap();
        assert_eq!(r.value(), &BigInt::from(19));
        assert_eq!(
            ResidueClass::from_u64(9, m).inverse().unwrap_err(),
            ArithError::NonInvertible
        );
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(padic_valuation(&ratio(75, 2), 5).unwrap(), 2);
        assert_eq!(padic_valuation(&ratio(1, 25), 5).unwrap(), -2);
        // (1/2)_3^6 / 3!^6 = (15/8)^6 / 216^2... computed as a plain ratio
        let t = ratio(15, 8 * 6).pow(6);
        assert_eq!(padic_valuation(&t, 3).unwrap(), 6 - 6 * 1);
        // the sixth power of (1/2)_3 = 15/8 alone carries valuation 6
        let t = ratio(15, 8).pow(6);
        assert_eq!(padic_valuation(&t, 3).unwrap(), 6);
        assert_eq!(
            padic_valuation(&ratio(0, 1), 5).unwrap_err(),
            ArithError::ZeroValuation
        );
    }

    #[test]
    #[should_panic(expected = "rejected")]
    fn mixed_moduli_are_rejected() {
        let a = ResidueClass::from_u64(1, modulus(5, 2));
        let b = ResidueClass::from_u64(1, modulus(5, 3));
        let _ = &a + &b;
    }

    #[test]
    fn streaming_matches_direct_reduction() {
        // sum with a p-divisible term: 1/3 + 75/2 + 5/7 mod 5^3
        let terms = [ratio(1, 3), ratio(75, 2), ratio(5, 7)];
        let m = modulus(5, 3);
        let mut s = StreamingSum::new(m.clone());
        let mut exact = BigRational::zero();
        for t in &terms {
            s.add(t).unwrap();
            exact += t;
        }
        assert_eq!(s.total(), reduce_rational(&exact, &m).unwrap());
    }

    #[test]
    fn streaming_drops_high_valuation_terms() {
        let m = modulus(5, 2);
        let mut s = StreamingSum::new(m);
        s.add(&ratio(25, 3)).unwrap();
        assert!(s.total().is_zero());
        let mut s = StreamingSum::new(modulus(5, 2));
        assert_eq!(
            s.add(&ratio(1, 5)).unwrap_err(),
            ArithError::NonInvertibleDenominator
        );
    }

    #[test]
    fn reduction_tower_is_compatible() {
        let x = ratio(117, 46);
        let r3 = reduce_rational(&x, &modulus(7, 3)).unwrap();
        let r1 = reduce_rational(&x, &modulus(7, 1)).unwrap();
        assert_eq!(r3.reduce_to(1), r1);
    }
}

//! The Apery numbers `A(n)`, the Apery-like family `C_l(n)` with its two
//! extra binomial representations at `l = 6`, the companion sequence `D(n)`,
//! and the congruences tying `A((p-1)/2)` to `C_6` and `D`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::PrimePowerModulus;
use crate::harmonic::{binomial, HarmonicTable};
use crate::report::{CongruenceReport, Verdict};

/// `A(n) = sum_k binom(n,k)^2 binom(n+k,k)^2`.
pub fn apery(n: u64) -> BigInt {
    let mut total = BigInt::zero();
    let mut b1 = BigInt::one(); // binom(n, k)
    let mut b2 = BigInt::one(); // binom(n+k, k)
    for k in 0..=n {
        total += (&b1 * &b1) * (&b2 * &b2);
        if k < n {
            b1 = b1 * (n - k) / (k + 1);
            b2 = b2 * (n + k + 1) / (k + 1);
        }
    }
    total
}

/// `D(n) = sum_k binom(n,k)^4`.
pub fn d_seq(n: u64) -> BigInt {
    let mut total = BigInt::zero();
    let mut b = BigInt::one();
    for k in 0..=n {
        let sq = &b * &b;
        total += &sq * &sq;
        if k < n {
            b = b * (n - k) / (k + 1);
        }
    }
    total
}

/// The rational sum defining `C_l(n)` turned out non-integral. This never
/// happens; it would contradict the integrality of the whole family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralityViolation {
    pub ell: u32,
    pub n: u64,
}

impl fmt::Display for IntegralityViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C_{}({}) evaluated to a non-integer", self.ell, self.n)
    }
}

/// `C_l(n) = sum_k binom(n,k)^l (1 - l k (H_k - H_{n-k}))`, evaluated in
/// exact rationals with the integrality of the result asserted.
pub fn c_ell(ell: u32, n: u64) -> Result<BigInt, IntegralityViolation> {
    let h = HarmonicTable::new(1, n);
    let mut total = BigRational::zero();
    let mut b = BigInt::one();
    for k in 0..=n {
        let weight = BigRational::one()
            - BigRational::from_integer(BigInt::from(ell as u64 * k)) * (h.get(k) - h.get(n - k));
        total += BigRational::from_integer(b.pow(ell)) * weight;
        if k < n {
            b = b * (n - k) / (k + 1);
        }
    }
    if !total.is_integer() {
        return Err(IntegralityViolation { ell, n });
    }
    Ok(total.to_integer())
}

/// The two closed binomial representations of `C_6(n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum C6Form {
    /// `(-1)^n sum_k binom(n,k)^2 binom(n+k,k) binom(2k,n)`
    SignedCentral,
    /// `sum_k (-1)^k binom(3n+1,n-k) binom(n+k,k)^3`
    ThreeNPlusOne,
}

pub fn c6_alt(form: C6Form, n: u64) -> BigInt {
    match form {
        C6Form::SignedCentral => {
            let mut total = BigInt::zero();
            let mut b1 = BigInt::one(); // binom(n,k)
            let mut b2 = BigInt::one(); // binom(n+k,k)
            for k in 0..=n {
                total += (&b1 * &b1) * &b2 * binomial(2 * k, n);
                if k < n {
                    b1 = b1 * (n - k) / (k + 1);
                    b2 = b2 * (n + k + 1) / (k + 1);
                }
            }
            if n % 2 == 1 {
                -total
            } else {
                total
            }
        }
        C6Form::ThreeNPlusOne => {
            let mut total = BigInt::zero();
            let mut b1 = binomial(3 * n + 1, n); // binom(3n+1, n-k)
            let mut b2 = BigInt::one(); // binom(n+k, k)
            for k in 0..=n {
                let term = &b1 * (&b2 * &b2) * &b2;
                if k % 2 == 1 {
                    total -= term;
                } else {
                    total += term;
                }
                if k < n {
                    b1 = b1 * (n - k) / (2 * n + k + 2);
                    b2 = b2 * (n + k + 1) / (k + 1);
                }
            }
            total
        }
    }
}

/// Table of one sequence family, indexed `0..=n_max`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SequenceKind {
    Apery,
    CEll(u32),
    C6SignedCentral,
    C6ThreeNPlusOne,
    D,
}

pub struct SequenceTable {
    kind: SequenceKind,
    values: Vec<BigInt>,
}

impl SequenceTable {
    pub fn build(kind: SequenceKind, n_max: u64) -> Result<Self, IntegralityViolation> {
        let mut values = Vec::with_capacity(n_max as usize + 1);
        for n in 0..=n_max {
            let v = match kind {
                SequenceKind::Apery => apery(n),
                SequenceKind::CEll(ell) => c_ell(ell, n)?,
                SequenceKind::C6SignedCentral => c6_alt(C6Form::SignedCentral, n),
                SequenceKind::C6ThreeNPlusOne => c6_alt(C6Form::ThreeNPlusOne, n),
                SequenceKind::D => d_seq(n),
            };
            values.push(v);
        }
        Ok(SequenceTable { kind, values })
    }

    pub fn kind(&self) -> SequenceKind {
        self.kind
    }

    pub fn get(&self, n: u64) -> &BigInt {
        &self.values[n as usize]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Verify the three-term recurrence
/// `(n+1)^3 A(n+1) - (2n+1)(17n^2+17n+5) A(n) + n^3 A(n-1) = 0`
/// against directly summed values, one report row per `n` in `1..N`.
pub fn check_apery_recurrence(n_max: u64) -> Vec<CongruenceReport> {
    assert!(n_max >= 2);
    let table = SequenceTable::build(SequenceKind::Apery, n_max).expect("integral");
    let mut rows = Vec::new();
    for n in 1..n_max {
        let lhs = BigInt::from((n + 1).pow(3)) * table.get(n + 1)
            + BigInt::from(n.pow(3)) * table.get(n - 1);
        let rhs = BigInt::from(2 * n + 1) * BigInt::from(17 * n * n + 17 * n + 5) * table.get(n);
        let verdict = if lhs == rhs {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        rows.push(CongruenceReport::new(
            "apery-recurrence",
            n,
            String::from("exact"),
            format!("{lhs}"),
            format!("{rhs}"),
            verdict,
        ));
    }
    rows
}

fn congruence_row(
    check: &str,
    p: u64,
    r: u32,
    lhs: &BigInt,
    rhs: &BigInt,
    expected_negative: bool,
) -> CongruenceReport {
    let modulus = PrimePowerModulus::new(p, r).expect("odd prime");
    let row = CongruenceReport::from_integers(check, p, lhs, rhs, &modulus);
    if expected_negative {
        row.expect_negative()
    } else {
        row
    }
}

/// `A(m) = C_6(m) (mod p^2)` for `m = (p-1)/2`, twice over: once against the
/// integer-only binomial representation, once against the defining
/// harmonic-weighted sum.
pub fn check_apery_c6(p: u64) -> Vec<CongruenceReport> {
    let m = (p - 1) / 2;
    let a = apery(m);
    let c_closed = c6_alt(C6Form::ThreeNPlusOne, m);
    let c_harmonic = c_ell(6, m).expect("C_6 is integral");
    alloc::vec![
        congruence_row("apery-c6", p, 2, &a, &c_closed, false),
        congruence_row("apery-c6-harmonic", p, 2, &a, &c_harmonic, false),
    ]
}

/// `A(m) = D(m) (mod p)`, plus the expected-negative record that the same
/// congruence generally fails modulo `p^2`.
pub fn check_apery_d(p: u64) -> Vec<CongruenceReport> {
    let m = (p - 1) / 2;
    let a = apery(m);
    let d = d_seq(m);
    let mut rows = alloc::vec![
        congruence_row("apery-d", p, 1, &a, &d, false),
        congruence_row("apery-d-square", p, 2, &a, &d, true),
    ];
    if rows[1].verdict == Verdict::Pass {
        rows[1].detail = Some(String::from("holds mod p^2 at this prime"));
    }
    rows
}

/// Exact equality of the three representations of `C_6(n)`.
pub fn check_c6_forms(n: u64) -> CongruenceReport {
    let defining = c_ell(6, n);
    let alt1 = c6_alt(C6Form::SignedCentral, n);
    let alt2 = c6_alt(C6Form::ThreeNPlusOne, n);
    let (verdict, lhs, rhs) = match defining {
        Ok(c) if c == alt1 && c == alt2 => (Verdict::Pass, format!("{c}"), format!("{alt1}")),
        Ok(c) => (Verdict::Fail, format!("{c}"), format!("{alt1}, {alt2}")),
        Err(e) => (Verdict::Fail, format!("{e}"), format!("{alt1}, {alt2}")),
    };
    CongruenceReport::new("c6-forms", n, String::from("exact"), lhs, rhs, verdict)
}

/// The binomial-fourth-power symmetry
/// `sum_k binom(m,k)^4 H_{m-k} = sum_k binom(m,k)^4 H_k`, exactly.
pub fn check_quartic_symmetry(m: u64) -> bool {
    let h = HarmonicTable::new(1, m);
    let mut left = BigRational::zero();
    let mut right = BigRational::zero();
    let mut b = BigInt::one();
    for k in 0..=m {
        let b4 = BigRational::from_integer((&b * &b) * (&b * &b));
        left += &b4 * h.get(m - k);
        right += &b4 * h.get(k);
        if k < m {
            b = b * (m - k) / (k + 1);
        }
    }
    left == right
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn apery_small_values() {
        assert_eq!(apery(0), BigInt::from(1));
        assert_eq!(apery(1), BigInt::from(5));
        assert_eq!(apery(2), BigInt::from(73));
        assert_eq!(apery(3), BigInt::from(1445));
    }

    #[test]
    fn d_small_values() {
        assert_eq!(d_seq(0), BigInt::from(1));
        assert_eq!(d_seq(1), BigInt::from(2));
        assert_eq!(d_seq(2), BigInt::from(18));
        assert_eq!(d_seq(3), BigInt::from(164));
    }

    #[test]
    fn c6_small_values() {
        assert_eq!(c_ell(6, 0).unwrap(), BigInt::from(1));
        assert_eq!(c_ell(6, 1).unwrap(), BigInt::from(-4));
        assert_eq!(c_ell(6, 2).unwrap(), BigInt::from(48));
        assert_eq!(c6_alt(C6Form::SignedCentral, 0), BigInt::from(1));
        assert_eq!(c6_alt(C6Form::SignedCentral, 2), BigInt::from(48));
        assert_eq!(c6_alt(C6Form::ThreeNPlusOne, 1), BigInt::from(-4));
    }

    #[test]
    fn c6_representations_agree() {
        for n in 0..=60 {
            assert_eq!(check_c6_forms(n).verdict, Verdict::Pass, "n={n}");
        }
    }

    #[test]
    fn c_ell_is_integral() {
        for ell in 1..=8 {
            for n in 0..=40 {
                assert!(c_ell(ell, n).is_ok(), "ell={ell} n={n}");
            }
        }
    }

    #[test]
    fn recurrence_examples() {
        let rows = check_apery_recurrence(4);
        assert_eq!(rows.len(), 3);
        assert!(rows.iter().all(|r| r.verdict == Verdict::Pass));
        // n = 1: 8*73 = 3*39*5 - 1
        assert_eq!(rows[0].lhs, "585");
        assert_eq!(rows[0].rhs, "585");
        let rows = check_apery_recurrence(2);
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].subject, 1);
    }

    #[test]
    fn apery_c6_congruence_examples() {
        // p=5: 73 - 48 = 25; p=3: 5 - (-4) = 9; p=7: 49 | A(3) - C_6(3)
        for p in [3, 5, 7, 11, 13, 17, 19] {
            let rows = check_apery_c6(p);
            assert!(rows.iter().all(|r| r.verdict == Verdict::Pass), "p={p}");
        }
    }

    #[test]
    fn apery_d_congruence_examples() {
        for p in [3, 5, 7, 11, 13] {
            let rows = check_apery_d(p);
            assert_eq!(rows[0].verdict, Verdict::Pass, "p={p}");
        }
        // p=5 mod 25: 73 - 18 = 55 is not divisible by 25
        let rows = check_apery_d(5);
        assert_eq!(rows[1].verdict, Verdict::ExpectedNegative);
    }

    #[test]
    fn quartic_symmetry_small() {
        for m in 0..=40 {
            assert!(check_quartic_symmetry(m));
        }
    }
}

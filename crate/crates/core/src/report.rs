//! Structured outcomes of congruence and identity checks.

use alloc::format;
use alloc::string::String;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::arith::{PrimePowerModulus, ResidueClass};

/// Outcome of a single verified statement.
///
/// `ExpectedNegative` marks statements that are checked but known to fail
/// (for example a congruence that only holds modulo `p`, re-tested modulo
/// `p^2`). Such rows never count as failures.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    ExpectedNegative,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Pass => f.write_str("pass"),
            Verdict::Fail => f.write_str("fail"),
            Verdict::ExpectedNegative => f.write_str("expected-negative"),
        }
    }
}

/// One verified congruence (or exact identity) together with both sides.
///
/// `subject` is the prime `p` for per-prime checks and the index `n` for
/// per-index checks. Values are stringified so that reports survive
/// serialization without loss; residues use the least non-negative
/// representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceReport {
    pub check: String,
    pub subject: u64,
    pub modulus: String,
    pub lhs: String,
    pub rhs: String,
    pub verdict: Verdict,
    pub detail: Option<String>,
    /// Wall-clock cost, filled in by callers that can measure time.
    pub elapsed_micros: Option<u64>,
}

impl CongruenceReport {
    pub fn new(
        check: &str,
        subject: u64,
        modulus: String,
        lhs: String,
        rhs: String,
        verdict: Verdict,
    ) -> Self {
        CongruenceReport {
            check: String::from(check),
            subject,
            modulus,
            lhs,
            rhs,
            verdict,
            detail: None,
            elapsed_micros: None,
        }
    }

    pub fn with_detail(mut self, detail: String) -> Self {
        self.detail = Some(detail);
        self
    }

    /// Compare two residues sharing a modulus.
    pub fn from_residues(
        check: &str,
        subject: u64,
        lhs: &ResidueClass,
        rhs: &ResidueClass,
    ) -> Self {
        CongruenceReport::new(
            check,
            subject,
            format!("{}", lhs.modulus()),
            format!("{}", lhs.value()),
            format!("{}", rhs.value()),
            if lhs == rhs { Verdict::Pass } else { Verdict::Fail },
        )
    }

    /// Compare two exact integers modulo a prime power.
    pub fn from_integers(
        check: &str,
        subject: u64,
        lhs: &BigInt,
        rhs: &BigInt,
        modulus: &PrimePowerModulus,
    ) -> Self {
        let l = lhs.mod_floor(modulus.modulus());
        let r = rhs.mod_floor(modulus.modulus());
        CongruenceReport::new(
            check,
            subject,
            format!("{modulus}"),
            format!("{l}"),
            format!("{r}"),
            if l == r { Verdict::Pass } else { Verdict::Fail },
        )
    }

    /// Reclassify a failure as an expected negative (for statements that are
    /// checked precisely because they are known not to hold).
    pub fn expect_negative(mut self) -> Self {
        if self.verdict == Verdict::Fail {
            self.verdict = Verdict::ExpectedNegative;
        }
        self
    }

    /// True unless the row is a genuine failure.
    pub fn passed(&self) -> bool {
        self.verdict != Verdict::Fail
    }
}

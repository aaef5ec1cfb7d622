//! Generalized harmonic numbers, binomial coefficients, rising factorials,
//! and the family of binomial/harmonic expansion congruences modulo `p^2`
//! that relate `binom(m+k,m)`, `binom(m,k)` and their reflections to
//! `(1/2)_k/k!` for `m = (p-1)/2`.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{reduce_rational, PrimePowerModulus, ResidueClass};
use crate::report::{CongruenceReport, Verdict};

/// `n!` as an exact big integer.
pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for j in 2..=n {
        acc *= j;
    }
    acc
}

/// `binom(n, k)` by the multiplicative formula with exact division.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * (n - j) / (j + 1);
    }
    acc
}

/// Rising factorial `(a)_k = a (a+1) ... (a+k-1)`, with `(a)_0 = 1`.
pub fn rising_factorial(a: &BigRational, k: u64) -> BigRational {
    let mut acc = BigRational::one();
    let mut term = a.clone();
    for _ in 0..k {
        acc *= &term;
        term += BigRational::one();
    }
    acc
}

/// `H_n^{(r)} = sum_{j=1}^{n} 1/j^r` as an exact rational.
pub fn harmonic(n: u64, r: u32) -> BigRational {
    let mut acc = BigRational::zero();
    for j in 1..=n {
        acc += BigRational::new(BigInt::one(), BigInt::from(j).pow(r));
    }
    acc
}

/// Cumulative table of `H_0^{(r)}, ..., H_N^{(r)}`.
pub struct HarmonicTable {
    order: u32,
    values: Vec<BigRational>,
}

impl HarmonicTable {
    pub fn new(order: u32, n_max: u64) -> Self {
        assert!(order >= 1);
        let mut values = Vec::with_capacity(n_max as usize + 1);
        values.push(BigRational::zero());
        let mut acc = BigRational::zero();
        for j in 1..=n_max {
            acc += BigRational::new(BigInt::one(), BigInt::from(j).pow(order));
            values.push(acc.clone());
        }
        HarmonicTable { order, values }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, n: u64) -> &BigRational {
        &self.values[n as usize]
    }
}

/// One row of Pascal's triangle, built by the additive recurrence.
pub struct BinomialRow {
    n: u64,
    values: Vec<BigInt>,
}

impl BinomialRow {
    pub fn new(n: u64) -> Self {
        let mut values = alloc::vec![BigInt::one()];
        for _ in 0..n {
            let mut next = Vec::with_capacity(values.len() + 1);
            next.push(BigInt::one());
            for w in values.windows(2) {
                next.push(&w[0] + &w[1]);
            }
            next.push(BigInt::one());
            values = next;
        }
        BinomialRow { n, values }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn get(&self, k: u64) -> &BigInt {
        &self.values[k as usize]
    }
}

/// `H_j^{(1)}` and `H_j^{(2)}` reduced modulo `p^r` for `0 <= j <= n_max`.
///
/// Requires `n_max < p` so that every denominator is invertible.
pub struct ResidueHarmonics {
    modulus: PrimePowerModulus,
    h1: Vec<ResidueClass>,
    h2: Vec<ResidueClass>,
}

impl ResidueHarmonics {
    pub fn new(modulus: PrimePowerModulus, n_max: u64) -> Self {
        assert!(n_max < modulus.prime(), "harmonic index must stay below p");
        let mut h1 = Vec::with_capacity(n_max as usize + 1);
        let mut h2 = Vec::with_capacity(n_max as usize + 1);
        h1.push(ResidueClass::zero(modulus.clone()));
        h2.push(ResidueClass::zero(modulus.clone()));
        let mut acc1 = ResidueClass::zero(modulus.clone());
        let mut acc2 = ResidueClass::zero(modulus.clone());
        for j in 1..=n_max {
            let inv = ResidueClass::from_u64(j, modulus.clone())
                .inverse()
                .expect("j < p is invertible");
            acc1 = &acc1 + &inv;
            acc2 = &acc2 + &(&inv * &inv);
            h1.push(acc1.clone());
            h2.push(acc2.clone());
        }
        ResidueHarmonics { modulus, h1, h2 }
    }

    pub fn modulus(&self) -> &PrimePowerModulus {
        &self.modulus
    }

    pub fn h(&self, j: u64) -> &ResidueClass {
        &self.h1[j as usize]
    }

    pub fn h2(&self, j: u64) -> &ResidueClass {
        &self.h2[j as usize]
    }
}

/// The eight expansion congruences modulo `p^2`, with `m = (p-1)/2` and
/// `k` running over `0..=m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExpansionId {
    /// `binom(m+k,m) = ((1/2)_k/k!) (1 + (p/2) sum_{j<k} 1/(j+1/2))`
    RisingCentral,
    /// `binom(m,k) = (-1)^k ((1/2)_k/k!) (1 - (p/2) sum_{j<k} 1/(j+1/2))`
    FallingCentral,
    /// `binom(m,k) = (-1)^k ((1/2)_k/k!) (1 - (p/2)(H_{m+k} - H_m))`
    CentralHarmonic,
    /// `binom(m+k,m) = (-1)^k binom(m,k) (1 + p(H_{m+k} - H_m))`
    ShiftedHarmonic,
    /// `H_{2m-k} - H_{2m} = H_k + p H_k^{(2)}` (both sides empty at `k = 0`)
    HarmonicReflection,
    /// `H_{m+k} - H_{2m} = H_{m-k} + p H_{m-k}^{(2)}`
    HarmonicMidpoint,
    /// `binom(2m-k,m) = (-1)^{m-k} binom(m,k) (1 + p(H_k - H_m))`
    ReflectedBinomial,
    /// `binom(3m+1,m-k) = binom(m,k) (1 + p(H_m - H_k))`
    AugmentedBinomial,
}

impl ExpansionId {
    pub const ALL: [ExpansionId; 8] = [
        ExpansionId::RisingCentral,
        ExpansionId::FallingCentral,
        ExpansionId::CentralHarmonic,
        ExpansionId::ShiftedHarmonic,
        ExpansionId::HarmonicReflection,
        ExpansionId::HarmonicMidpoint,
        ExpansionId::ReflectedBinomial,
        ExpansionId::AugmentedBinomial,
    ];

    pub fn token(self) -> &'static str {
        match self {
            ExpansionId::RisingCentral => "rising-central",
            ExpansionId::FallingCentral => "falling-central",
            ExpansionId::CentralHarmonic => "central-harmonic",
            ExpansionId::ShiftedHarmonic => "shifted-harmonic",
            ExpansionId::HarmonicReflection => "harmonic-reflection",
            ExpansionId::HarmonicMidpoint => "harmonic-midpoint",
            ExpansionId::ReflectedBinomial => "reflected-binomial",
            ExpansionId::AugmentedBinomial => "augmented-binomial",
        }
    }

    pub fn from_token(s: &str) -> Option<Self> {
        Self::ALL.iter().copied().find(|id| id.token() == s)
    }
}

impl fmt::Display for ExpansionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

struct ExpansionContext {
    modulus: PrimePowerModulus,
    m: u64,
    rh: ResidueHarmonics,
    /// p/2 as a residue mod p^2
    half_p: ResidueClass,
    p_res: ResidueClass,
}

impl ExpansionContext {
    fn new(p: u64) -> Self {
        let modulus = PrimePowerModulus::new(p, 2).expect("odd prime");
        let m = (p - 1) / 2;
        let rh = ResidueHarmonics::new(modulus.clone(), 2 * m);
        let inv2 = ResidueClass::from_u64(2, modulus.clone())
            .inverse()
            .expect("2 invertible");
        let p_res = ResidueClass::from_u64(p, modulus.clone());
        let half_p = &p_res * &inv2;
        ExpansionContext {
            modulus,
            m,
            rh,
            half_p,
            p_res,
        }
    }

    fn red(&self, x: &BigInt) -> ResidueClass {
        ResidueClass::new(x.clone(), self.modulus.clone())
    }

    fn signed(&self, x: &ResidueClass, negative: bool) -> ResidueClass {
        if negative {
            -x
        } else {
            x.clone()
        }
    }
}

/// Verify one expansion congruence for every `k` in `0..=m` modulo `p^2`.
///
/// The report aggregates over `k`: on failure, `lhs`/`rhs` carry the sides at
/// the first failing `k` and the detail lists every failing `k`; on success
/// they carry the sides at `k = m`.
pub fn check_expansion_congruence(id: ExpansionId, p: u64) -> CongruenceReport {
    let cx = ExpansionContext::new(p);
    let m = cx.m;
    let one = ResidueClass::one(cx.modulus.clone());

    // incremental exact binomials
    let mut b_mk_m = BigInt::one(); // binom(m+k, m)
    let mut b_m_k = BigInt::one(); // binom(m, k)
    let mut b_2mk_m = binomial(2 * m, m); // binom(2m-k, m)
    let mut b_3m = binomial(3 * m + 1, m); // binom(3m+1, m-k)
    // incremental residues
    let mut r_k = one.clone(); // (1/2)_k / k!  mod p^2
    let mut s_k = ResidueClass::zero(cx.modulus.clone()); // sum_{j<k} 1/(j+1/2)

    let mut failing: Vec<u64> = Vec::new();
    let mut first_fail: Option<(ResidueClass, ResidueClass)> = None;
    let mut last_pair = (one.clone(), one.clone());

    for k in 0..=m {
        let (lhs, rhs) = match id {
            ExpansionId::RisingCentral => {
                let rhs = &r_k * &(&one + &(&cx.half_p * &s_k));
                (cx.red(&b_mk_m), rhs)
            }
            ExpansionId::FallingCentral => {
                let rhs = &r_k * &(&one - &(&cx.half_p * &s_k));
                (cx.red(&b_m_k), cx.signed(&rhs, k % 2 == 1))
            }
            ExpansionId::CentralHarmonic => {
                let diff = cx.rh.h(m + k) - cx.rh.h(m);
                let rhs = &r_k * &(&one - &(&cx.half_p * &diff));
                (cx.red(&b_m_k), cx.signed(&rhs, k % 2 == 1))
            }
            ExpansionId::ShiftedHarmonic => {
                let diff = cx.rh.h(m + k) - cx.rh.h(m);
                let rhs = &cx.red(&b_m_k) * &(&one + &(&cx.p_res * &diff));
                (cx.red(&b_mk_m), cx.signed(&rhs, k % 2 == 1))
            }
            ExpansionId::HarmonicReflection => {
                let lhs = cx.rh.h(2 * m - k) - cx.rh.h(2 * m);
                let rhs = cx.rh.h(k) + &(&cx.p_res * cx.rh.h2(k));
                (lhs, rhs)
            }
            ExpansionId::HarmonicMidpoint => {
                let lhs = cx.rh.h(m + k) - cx.rh.h(2 * m);
                let rhs = cx.rh.h(m - k) + &(&cx.p_res * cx.rh.h2(m - k));
                (lhs, rhs)
            }
            ExpansionId::ReflectedBinomial => {
                let diff = cx.rh.h(k) - cx.rh.h(m);
                let rhs = &cx.red(&b_m_k) * &(&one + &(&cx.p_res * &diff));
                (cx.red(&b_2mk_m), cx.signed(&rhs, (m - k) % 2 == 1))
            }
            ExpansionId::AugmentedBinomial => {
                let diff = cx.rh.h(m) - cx.rh.h(k);
                let rhs = &cx.red(&b_m_k) * &(&one + &(&cx.p_res * &diff));
                (cx.red(&b_3m), rhs)
            }
        };

        if lhs != rhs {
            if first_fail.is_none() {
                first_fail = Some((lhs.clone(), rhs.clone()));
            }
            failing.push(k);
        }
        last_pair = (lhs, rhs);

        if k < m {
            // advance the incremental quantities to k+1
            b_mk_m = b_mk_m * (m + k + 1) / (k + 1);
            b_m_k = b_m_k * (m - k) / (k + 1);
            b_2mk_m = b_2mk_m * (m - k) / (2 * m - k);
            b_3m = b_3m * (m - k) / (2 * m + k + 2);
            let odd = ResidueClass::from_u64(2 * k + 1, cx.modulus.clone());
            let even = ResidueClass::from_u64(2 * (k + 1), cx.modulus.clone());
            r_k = &(&r_k * &odd) * &even.inverse().expect("even < p^2, prime to p");
            s_k = &s_k
                + &(&ResidueClass::from_u64(2, cx.modulus.clone())
                    * &odd.inverse().expect("odd < p, prime to p"));
        }
    }

    let verdict = if failing.is_empty() {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    let (lhs, rhs) = first_fail.unwrap_or(last_pair);
    let mut report = CongruenceReport::new(
        id.token(),
        p,
        format!("{}", cx.modulus),
        format!("{}", lhs.value()),
        format!("{}", rhs.value()),
        verdict,
    );
    if !failing.is_empty() {
        let list = failing
            .iter()
            .map(|k| format!("{k}"))
            .collect::<Vec<_>>()
            .join(", ");
        report = report.with_detail(format!("failing k: {list}"));
    }
    report
}

/// Exact-rational oracle for a single `(id, p, k)` congruence instance:
/// returns both sides reduced modulo `p^2`. Used to cross-check the
/// incremental residue evaluation.
pub fn expansion_sides_exact(
    id: ExpansionId,
    p: u64,
    k: u64,
) -> (ResidueClass, ResidueClass) {
    let modulus = PrimePowerModulus::new(p, 2).expect("odd prime");
    let m = (p - 1) / 2;
    assert!(k <= m);
    let h = |n: u64| harmonic(n, 1);
    let h2 = |n: u64| harmonic(n, 2);
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let rk = rising_factorial(&half, k) / BigRational::from_integer(factorial(k));
    let sk: BigRational = (0..k)
        .map(|j| BigRational::new(BigInt::from(2), BigInt::from(2 * j + 1)))
        .sum();
    let p_rat = BigRational::from_integer(BigInt::from(p));
    let sign = |e: u64| {
        if e % 2 == 1 {
            -BigRational::one()
        } else {
            BigRational::one()
        }
    };
    let (lhs, rhs): (BigRational, BigRational) = match id {
        ExpansionId::RisingCentral => (
            BigRational::from_integer(binomial(m + k, m)),
            &rk * (BigRational::one() + &p_rat * &half * &sk),
        ),
        ExpansionId::FallingCentral => (
            BigRational::from_integer(binomial(m, k)),
            sign(k) * &rk * (BigRational::one() - &p_rat * &half * &sk),
        ),
        ExpansionId::CentralHarmonic => (
            BigRational::from_integer(binomial(m, k)),
            sign(k) * &rk * (BigRational::one() - &p_rat * &half * (h(m + k) - h(m))),
        ),
        ExpansionId::ShiftedHarmonic => (
            BigRational::from_integer(binomial(m + k, m)),
            sign(k)
                * BigRational::from_integer(binomial(m, k))
                * (BigRational::one() + &p_rat * (h(m + k) - h(m))),
        ),
        ExpansionId::HarmonicReflection => {
            (h(2 * m - k) - h(2 * m), h(k) + &p_rat * h2(k))
        }
        ExpansionId::HarmonicMidpoint => {
            (h(m + k) - h(2 * m), h(m - k) + &p_rat * h2(m - k))
        }
        ExpansionId::ReflectedBinomial => (
            BigRational::from_integer(binomial(2 * m - k, m)),
            sign(m - k)
                * BigRational::from_integer(binomial(m, k))
                * (BigRational::one() + &p_rat * (h(k) - h(m))),
        ),
        ExpansionId::AugmentedBinomial => (
            BigRational::from_integer(binomial(3 * m + 1, m - k)),
            BigRational::from_integer(binomial(m, k))
                * (BigRational::one() + &p_rat * (h(m) - h(k))),
        ),
    };
    (
        reduce_rational(&lhs, &modulus).expect("denominator prime to p"),
        reduce_rational(&rhs, &modulus).expect("denominator prime to p"),
    )
}

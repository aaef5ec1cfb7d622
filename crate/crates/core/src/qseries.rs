//! Truncated integer q-series and eta-quotient expansions.
//!
//! `eta(d tau)^e` contributes a prefactor `q^{de/24}` and an Euler product
//! `prod_{n>=1} (1-q^{dn})^e`; quotients used here always have an integral
//! total prefactor. Products are computed two ways: a literal
//! multiply-every-factor route ([`eta_power_series`]) and a fast route
//! through the pentagonal-number expansion of `prod (1-q^n)` followed by
//! powering and dilation ([`eta_power_fast`]). The two are checked against
//! each other in the tests; the fast route backs the coefficient tables.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::report::{CongruenceReport, Verdict};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QSeriesError {
    /// Negative eta exponents (series inverses) are unsupported.
    NegativeExponent,
    /// The total leading power `sum d*e / 24` is not a non-negative integer.
    FractionalLeadingPower,
}

impl fmt::Display for QSeriesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QSeriesError::NegativeExponent => f.write_str("negative eta exponent"),
            QSeriesError::FractionalLeadingPower => {
                f.write_str("leading q-power of the eta quotient is not an integer")
            }
        }
    }
}

/// Integer power series in `q`, truncated at `q^precision`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    coeffs: Vec<BigInt>,
}

impl QSeries {
    pub fn zero(precision: usize) -> Self {
        QSeries {
            coeffs: alloc::vec![BigInt::zero(); precision],
        }
    }

    pub fn one(precision: usize) -> Self {
        let mut s = Self::zero(precision);
        s.coeffs[0] = BigInt::one();
        s
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, i: usize) -> &BigInt {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn add(&self, other: &QSeries) -> QSeries {
        let n = self.precision().min(other.precision());
        let mut out = QSeries::zero(n);
        for i in 0..n {
            out.coeffs[i] = &self.coeffs[i] + &other.coeffs[i];
        }
        out
    }

    pub fn scale(&self, c: i64) -> QSeries {
        let c = BigInt::from(c);
        QSeries {
            coeffs: self.coeffs.iter().map(|x| x * &c).collect(),
        }
    }

    /// Truncated product; coefficients below the joint precision agree with
    /// the exact product.
    pub fn mul(&self, other: &QSeries) -> QSeries {
        let n = self.precision().min(other.precision());
        let mut out = QSeries::zero(n);
        for (i, ai) in self.coeffs.iter().enumerate().take(n) {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in other.coeffs.iter().enumerate().take(n - i) {
                if bj.is_zero() {
                    continue;
                }
                out.coeffs[i + j] += ai * bj;
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> QSeries {
        let mut acc = QSeries::one(self.precision());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// In-place multiplication by `(1 - q^k)`.
    pub fn mul_one_minus_power(&mut self, k: usize) {
        if k == 0 {
            for c in self.coeffs.iter_mut() {
                *c = BigInt::zero();
            }
            return;
        }
        let n = self.precision();
        for i in (k..n).rev() {
            let lower = self.coeffs[i - k].clone();
            self.coeffs[i] -= lower;
        }
    }

    /// Substitute `q -> q^d`.
    pub fn dilate(&self, d: usize, precision: usize) -> QSeries {
        let mut out = QSeries::zero(precision);
        for (i, c) in self.coeffs.iter().enumerate() {
            if i * d >= precision {
                break;
            }
            out.coeffs[i * d] = c.clone();
        }
        out
    }

    /// Multiply by `q^s`.
    pub fn shift(&self, s: usize, precision: usize) -> QSeries {
        let mut out = QSeries::zero(precision);
        for (i, c) in self.coeffs.iter().enumerate() {
            if i + s >= precision {
                break;
            }
            out.coeffs[i + s] = c.clone();
        }
        out
    }
}

/// `prod_{n>=1} (1-q^{dn})^e` by literally multiplying every binomial factor.
pub fn eta_power_series(d: u64, e: i64, precision: usize) -> Result<QSeries, QSeriesError> {
    if e < 0 {
        return Err(QSeriesError::NegativeExponent);
    }
    let mut s = QSeries::one(precision);
    let mut n = 1u64;
    while (d * n as u64) < precision as u64 {
        for _ in 0..e {
            s.mul_one_minus_power((d * n) as usize);
        }
        n += 1;
    }
    Ok(s)
}

/// Euler's pentagonal expansion of `prod_{n>=1} (1-q^n)`.
pub fn euler_pentagonal(precision: usize) -> QSeries {
    let mut s = QSeries::zero(precision);
    s.coeffs[0] = BigInt::one();
    let mut k = 1u64;
    loop {
        let g1 = k * (3 * k - 1) / 2;
        let g2 = k * (3 * k + 1) / 2;
        if g1 as usize >= precision {
            break;
        }
        let sign = if k % 2 == 1 { -1i64 } else { 1 };
        s.coeffs[g1 as usize] += BigInt::from(sign);
        if (g2 as usize) < precision {
            s.coeffs[g2 as usize] += BigInt::from(sign);
        }
        k += 1;
    }
    s
}

/// Same series as [`eta_power_series`], through the pentagonal base raised
/// to the `e`-th power at reduced precision and dilated by `d`.
pub fn eta_power_fast(d: u64, e: u32, precision: usize) -> QSeries {
    let inner = precision.div_ceil(d as usize);
    euler_pentagonal(inner).pow(e).dilate(d as usize, precision)
}

/// A product `prod eta(d tau)^e` whose total leading power
/// `sum d*e / 24` is a non-negative integer.
#[derive(Clone, Debug)]
pub struct EtaQuotient {
    factors: Vec<(u64, u32)>,
    leading: u64,
}

impl EtaQuotient {
    pub fn new(factors: &[(u64, i64)]) -> Result<Self, QSeriesError> {
        let mut total = 0u64;
        let mut fs = Vec::with_capacity(factors.len());
        for &(d, e) in factors {
            if e < 0 {
                return Err(QSeriesError::NegativeExponent);
            }
            total += d * e as u64;
            fs.push((d, e as u32));
        }
        if total % 24 != 0 {
            return Err(QSeriesError::FractionalLeadingPower);
        }
        Ok(EtaQuotient {
            factors: fs,
            leading: total / 24,
        })
    }

    pub fn leading_power(&self) -> u64 {
        self.leading
    }

    /// Full q-expansion including the leading `q` power.
    pub fn expand(&self, precision: usize) -> QSeries {
        let inner = precision.saturating_sub(self.leading as usize);
        let mut s = QSeries::one(inner.max(1));
        for &(d, e) in &self.factors {
            s = s.mul(&eta_power_fast(d, e, inner.max(1)));
        }
        s.shift(self.leading as usize, precision)
    }
}

/// The two eta-quotient expressions for the weight-6 coefficient table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BExpression {
    /// `eta(tau)^8 eta(4tau)^4 + 8 eta(4tau)^12`
    Eta1Eta4,
    /// `eta(2tau)^12 + 32 eta(2tau)^4 eta(8tau)^8`
    Eta2Eta8,
}

impl BExpression {
    pub fn token(self) -> &'static str {
        match self {
            BExpression::Eta1Eta4 => "eta1-eta4",
            BExpression::Eta2Eta8 => "eta2-eta8",
        }
    }

    pub fn from_token(s: &str) -> Option<Self> {
        match s {
            "eta1-eta4" => Some(BExpression::Eta1Eta4),
            "eta2-eta8" => Some(BExpression::Eta2Eta8),
            _ => None,
        }
    }
}

/// Coefficients `a(n)` of the weight-4 form `eta(2tau)^4 eta(4tau)^4`,
/// returned as a table with `table[n] = a(n)` for `1 <= n <= n_max`.
pub fn fourier_a(n_max: usize) -> Vec<BigInt> {
    let q = EtaQuotient::new(&[(2, 4), (4, 4)]).expect("leading power 1");
    let s = q.expand(n_max + 1);
    s.coeffs().to_vec()
}

/// Coefficients `b(n)` of the weight-6 newform, from either eta expression.
pub fn fourier_b(n_max: usize, expr: BExpression) -> Vec<BigInt> {
    let s = match expr {
        BExpression::Eta1Eta4 => {
            let t1 = EtaQuotient::new(&[(1, 8), (4, 4)]).expect("leading power 1");
            let t2 = EtaQuotient::new(&[(4, 12)]).expect("leading power 2");
            t1.expand(n_max + 1).add(&t2.expand(n_max + 1).scale(8))
        }
        BExpression::Eta2Eta8 => {
            let t1 = EtaQuotient::new(&[(2, 12)]).expect("leading power 1");
            let t2 = EtaQuotient::new(&[(2, 4), (8, 8)]).expect("leading power 3");
            t1.expand(n_max + 1).add(&t2.expand(n_max + 1).scale(32))
        }
    };
    s.coeffs().to_vec()
}

/// Coefficient-by-coefficient agreement of the two weight-6 expressions up
/// to `q^n_max`.
pub fn check_eta_consistency(n_max: usize) -> CongruenceReport {
    let lhs = fourier_b(n_max, BExpression::Eta1Eta4);
    let rhs = fourier_b(n_max, BExpression::Eta2Eta8);
    let mismatch = (0..=n_max).find(|&i| lhs[i] != rhs[i]);
    match mismatch {
        None => CongruenceReport::new(
            "eta-consistency",
            n_max as u64,
            String::from("exact"),
            format!("{}", lhs[n_max]),
            format!("{}", rhs[n_max]),
            Verdict::Pass,
        ),
        Some(i) => CongruenceReport::new(
            "eta-consistency",
            n_max as u64,
            String::from("exact"),
            format!("{}", lhs[i]),
            format!("{}", rhs[i]),
            Verdict::Fail,
        )
        .with_detail(format!("first mismatch at n={i}")),
    }
}

/// Exact squared comparison `a(p)^2 < 4 p^3`.
pub fn weil_ok_weight4(p: u64, ap: &BigInt) -> bool {
    ap * ap < BigInt::from(4) * BigInt::from(p).pow(3)
}

/// Exact squared comparison `b(p)^2 < 4 p^5`.
pub fn weil_ok_weight6(p: u64, bp: &BigInt) -> bool {
    bp * bp < BigInt::from(4) * BigInt::from(p).pow(5)
}

/// Hecke-eigenform sanity at two distinct odd primes: multiplicativity at
/// `pq`, the weight-6 relation `b(p^2) = b(p)^2 - p^5` at good primes, and
/// the Weil bounds. Tables must reach index `max(pq, p^2)`.
pub fn check_hecke_sanity(
    p: u64,
    q: u64,
    a_table: &[BigInt],
    b_table: &[BigInt],
) -> Vec<CongruenceReport> {
    assert!(p != q, "needs two distinct primes");
    let exact = String::from("exact");
    let mut rows = Vec::new();

    let bp = &b_table[p as usize];
    let bq = &b_table[q as usize];
    let bpq = &b_table[(p * q) as usize];
    let prod = bp * bq;
    rows.push(CongruenceReport::new(
        "hecke-multiplicative-b",
        p,
        exact.clone(),
        format!("{bpq}"),
        format!("{prod}"),
        if *bpq == prod { Verdict::Pass } else { Verdict::Fail },
    ));

    let bp2 = &b_table[(p * p) as usize];
    let rel = bp * bp - BigInt::from(p).pow(5);
    rows.push(CongruenceReport::new(
        "hecke-square-b",
        p,
        exact.clone(),
        format!("{bp2}"),
        format!("{rel}"),
        if *bp2 == rel { Verdict::Pass } else { Verdict::Fail },
    ));

    rows.push(CongruenceReport::new(
        "weil-b",
        p,
        exact.clone(),
        format!("{}", bp * bp),
        format!("{}", BigInt::from(4) * BigInt::from(p).pow(5)),
        if weil_ok_weight6(p, bp) { Verdict::Pass } else { Verdict::Fail },
    ));

    let ap = &a_table[p as usize];
    let aq = &a_table[q as usize];
    let apq = &a_table[(p * q) as usize];
    let prod = ap * aq;
    rows.push(CongruenceReport::new(
        "hecke-multiplicative-a",
        p,
        exact.clone(),
        format!("{apq}"),
        format!("{prod}"),
        if *apq == prod { Verdict::Pass } else { Verdict::Fail },
    ));

    rows.push(CongruenceReport::new(
        "weil-a",
        p,
        exact,
        format!("{}", ap * ap),
        format!("{}", BigInt::from(4) * BigInt::from(p).pow(3)),
        if weil_ok_weight4(p, ap) { Verdict::Pass } else { Verdict::Fail },
    ));

    rows
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn euler_product_start() {
        // (1-q)(1-q^2)(1-q^3)... = 1 - q - q^2 + q^5 + q^7 - ...
        let s = eta_power_series(1, 1, 8).unwrap();
        assert_eq!(s.coeffs(), &ints(&[1, -1, -1, 0, 0, 1, 0, 1])[..]);
        let s = eta_power_series(2, 0, 4).unwrap();
        assert_eq!(s.coeffs(), &ints(&[1, 0, 0, 0])[..]);
        let s = eta_power_series(1, 8, 3).unwrap();
        assert_eq!(s.coeffs(), &ints(&[1, -8, 20])[..]);
        assert_eq!(
            eta_power_series(1, -1, 4).unwrap_err(),
            QSeriesError::NegativeExponent
        );
    }

    #[test]
    fn pentagonal_route_matches_naive_route() {
        for (d, e) in [(1u64, 1i64), (1, 8), (2, 4), (2, 12), (4, 4), (8, 8)] {
            let naive = eta_power_series(d, e, 200).unwrap();
            let fast = eta_power_fast(d, e as u32, 200);
            assert_eq!(naive, fast, "d={d} e={e}");
        }
    }

    #[test]
    fn truncated_product_is_exact_below_precision() {
        let a = euler_pentagonal(64);
        let b = eta_power_series(1, 3, 64).unwrap();
        let wide_a = euler_pentagonal(128);
        let wide_b = eta_power_series(1, 3, 128).unwrap();
        let narrow = a.mul(&b);
        let wide = wide_a.mul(&wide_b);
        for i in 0..64 {
            assert_eq!(narrow.coeff(i), wide.coeff(i));
        }
    }

    #[test]
    fn quotient_rejects_fractional_leading_power() {
        assert_eq!(
            EtaQuotient::new(&[(1, 4)]).unwrap_err(),
            QSeriesError::FractionalLeadingPower
        );
        assert_eq!(
            EtaQuotient::new(&[(1, -24)]).unwrap_err(),
            QSeriesError::NegativeExponent
        );
        let q = EtaQuotient::new(&[(2, 4), (4, 4)]).unwrap();
        assert_eq!(q.leading_power(), 1);
        let q = EtaQuotient::new(&[(4, 12)]).unwrap();
        assert_eq!(q.leading_power(), 2);
    }

    #[test]
    fn weight4_table_start() {
        let a = fourier_a(16);
        assert_eq!(a[1], BigInt::from(1));
        assert_eq!(a[2], BigInt::from(0));
        assert_eq!(a[3], BigInt::from(-4));
        assert_eq!(a[5], BigInt::from(-2));
        assert_eq!(a[9], BigInt::from(-11));
        assert_eq!(a[15], BigInt::from(8));
        // the product part is a series in q^2: support only on odd n
        for n in (2..=16).step_by(2) {
            assert!(a[n].is_zero(), "a({n})");
        }
    }

    #[test]
    fn weight6_table_start() {
        for expr in [BExpression::Eta1Eta4, BExpression::Eta2Eta8] {
            let b = fourier_b(16, expr);
            assert_eq!(b[1], BigInt::from(1));
            assert_eq!(b[2], BigInt::from(0));
            assert_eq!(b[3], BigInt::from(20));
            assert_eq!(b[5], BigInt::from(-74));
            assert_eq!(b[7], BigInt::from(-24));
            assert_eq!(b[9], BigInt::from(157));
            assert_eq!(b[15], BigInt::from(-1480));
        }
    }

    #[test]
    fn consistency_check_small() {
        let r = check_eta_consistency(3);
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(r.lhs, "20");
        let r = check_eta_consistency(1);
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(r.lhs, "1");
        let r = check_eta_consistency(400);
        assert_eq!(r.verdict, Verdict::Pass);
    }

    #[test]
    fn hecke_rows_small() {
        let a = fourier_a(25);
        let b = fourier_b(25, BExpression::Eta1Eta4);
        let rows = check_hecke_sanity(3, 5, &a, &b);
        assert!(rows.iter().all(|r| r.verdict == Verdict::Pass));
        // b(9) = 400 - 243 = 157
        let sq = rows.iter().find(|r| r.check == "hecke-square-b").unwrap();
        assert_eq!(sq.lhs, "157");
    }
}

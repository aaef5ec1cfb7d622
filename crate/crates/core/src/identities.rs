//! Partial-fraction decompositions of three families of rational functions
//! and the exact harmonic-sum identities their residue sums force.
//!
//! The families, for a parameter `n >= 0`, are
//!
//! ```text
//! order 2:  prod_{j=1..n} (t-j)^2 / prod_{j=0..n} (t+j)^2
//! order 3:  prod_{j=1..n} (t-j)^3 / prod_{j=0..n} (t+j)^3
//! order 4:  n!^2 (2t+n) prod_{j=1..n} (t-j) (t+n+j) / prod_{j=0..n} (t+j)^4
//! ```
//!
//! Each decomposes into pole terms at `t = -k`, `k = 0..n`. The printed
//! closed forms cover all coefficients of the first two families and the two
//! deepest coefficients of the third; the remaining two are recovered by
//! exact Taylor expansion at the pole. Equality with the defining function
//! is certified by evaluation at one more exact sample point than the degree
//! of the common denominator.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::apery::apery;
use crate::harmonic::{binomial, HarmonicTable};

/// Which of the three rational-function families, by pole order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RationalFamily {
    Order2,
    Order3,
    Order4,
}

impl RationalFamily {
    pub fn pole_order(self) -> usize {
        match self {
            RationalFamily::Order2 => 2,
            RationalFamily::Order3 => 3,
            RationalFamily::Order4 => 4,
        }
    }
}

/// The decomposition failed to reconstruct the defining function. This is an
/// internal consistency error; it cannot happen if the closed forms and the
/// pole expansions are correct.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReconstructionFailure {
    pub family: RationalFamily,
    pub n: u64,
    pub at: i64,
}

/// Pole coefficients of one family at one `n`: `coeffs[k]` lists the
/// coefficients of `1/(t+k)^ord, ..., 1/(t+k)` in that order.
pub struct PartialFractionDecomp {
    pub family: RationalFamily,
    pub n: u64,
    pub coeffs: Vec<Vec<BigRational>>,
}

fn int(x: BigInt) -> BigRational {
    BigRational::from_integer(x)
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Evaluate the defining rational function at an exact point outside the
/// poles.
pub fn evaluate_family(family: RationalFamily, n: u64, t: &BigRational) -> BigRational {
    let mut num = BigRational::one();
    let mut den = BigRational::one();
    match family {
        RationalFamily::Order2 | RationalFamily::Order3 => {
            let e = family.pole_order() as i32;
            for j in 1..=n {
                num *= (t - int(BigInt::from(j))).pow(e);
            }
            for j in 0..=n {
                den *= (t + int(BigInt::from(j))).pow(e);
            }
        }
        RationalFamily::Order4 => {
            let f = crate::harmonic::factorial(n);
            num = int(&f * &f) * (t * rat(2, 1) + int(BigInt::from(n)));
            for j in 1..=n {
                num *= t - int(BigInt::from(j));
                num *= t + int(BigInt::from(n + j));
            }
            for j in 0..=n {
                den *= (t + int(BigInt::from(j))).pow(4);
            }
        }
    }
    num / den
}

/// Polynomials in `s` truncated to `ord` coefficients, used for Taylor
/// expansion around a pole.
fn mul_trunc(a: &[BigRational], b: &[BigRational], ord: usize) -> Vec<BigRational> {
    let mut out = alloc::vec![BigRational::zero(); ord];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if i + j >= ord {
                break;
            }
            out[i + j] += ai * bj;
        }
    }
    out
}

/// `(c + s)^e` truncated to `ord` coefficients.
fn linear_power(c: &BigRational, e: usize, ord: usize) -> Vec<BigRational> {
    let lin = alloc::vec![c.clone(), BigRational::one()];
    let mut out = alloc::vec![BigRational::one()];
    for _ in 0..e {
        out = mul_trunc(&out, &lin, ord);
    }
    out
}

/// First `ord` Taylor coefficients of `f(t) (t+k)^ord` around `t = -k`:
/// the pole coefficients `[.../(t+k)^ord, ..., .../(t+k)]` in that order.
/// This is the residue oracle the closed forms are checked against.
pub fn pole_expansion(family: RationalFamily, n: u64, k: u64) -> Vec<BigRational> {
    let ord = family.pole_order();
    let kk = BigInt::from(k);

    // numerator as a truncated polynomial in s, with t = -k + s
    let mut num = alloc::vec![BigRational::one()];
    match family {
        RationalFamily::Order2 | RationalFamily::Order3 => {
            for j in 1..=n {
                let c = int(-&kk - BigInt::from(j));
                num = mul_trunc(&num, &linear_power(&c, ord, ord), ord);
            }
        }
        RationalFamily::Order4 => {
            let f = crate::harmonic::factorial(n);
            let lead = alloc::vec![
                int(&f * &f) * int(BigInt::from(n) - BigInt::from(2) * &kk),
                int(&f * &f) * rat(2, 1),
            ];
            num = mul_trunc(&num, &lead, ord);
            for j in 1..=n {
                let c1 = int(-&kk - BigInt::from(j));
                let c2 = int(BigInt::from(n + j) - &kk);
                num = mul_trunc(&num, &linear_power(&c1, 1, ord), ord);
                num = mul_trunc(&num, &linear_power(&c2, 1, ord), ord);
            }
        }
    }

    // denominator without the (t+k)^ord factor
    let mut den = alloc::vec![BigRational::one()];
    for j in 0..=n {
        if j == k {
            continue;
        }
        let c = int(BigInt::from(j) - &kk);
        den = mul_trunc(&den, &linear_power(&c, ord, ord), ord);
    }

    // series quotient num/den mod s^ord
    num.resize(ord, BigRational::zero());
    den.resize(ord, BigRational::zero());
    let d0 = den[0].clone();
    let mut q = Vec::with_capacity(ord);
    for i in 0..ord {
        let mut acc = num[i].clone();
        for (t, qt) in q.iter().enumerate().take(i) {
            acc -= &den[i - t] * qt;
        }
        q.push(acc / &d0);
    }
    q
}

impl PartialFractionDecomp {
    /// Sum of all pole terms at an exact point.
    pub fn evaluate(&self, t: &BigRational) -> BigRational {
        let ord = self.family.pole_order();
        let mut total = BigRational::zero();
        for (k, cs) in self.coeffs.iter().enumerate() {
            let base = t + int(BigInt::from(k as u64));
            let mut power = BigRational::one();
            // cs[0] belongs to the deepest pole; powers grow shallow-to-deep
            let mut terms = alloc::vec![BigRational::zero(); ord];
            for d in (0..ord).rev() {
                power *= &base;
                terms[d] = &cs[d] / &power;
            }
            for term in terms {
                total += term;
            }
        }
        total
    }

    /// Certify equality with the defining function by sampling one exact
    /// point more than the degree of the common denominator, starting just
    /// past the poles.
    pub fn verify_reconstruction(&self) -> Result<(), ReconstructionFailure> {
        let ord = self.family.pole_order() as u64;
        let points = ord * (self.n + 1) + 1;
        for i in 0..points {
            let t = int(BigInt::from(self.n + 1 + i));
            if self.evaluate(&t) != evaluate_family(self.family, self.n, &t) {
                return Err(ReconstructionFailure {
                    family: self.family,
                    n: self.n,
                    at: (self.n + 1 + i) as i64,
                });
            }
        }
        Ok(())
    }
}

/// Closed-form decomposition of the order-2 family:
/// `A_k = binom(n+k,k)^2 binom(n,k)^2`,
/// `B_k = 2 A_k ((H_k - H_{n+k}) + (H_k - H_{n-k}))`.
pub fn pf_coeffs_r(n: u64) -> Result<PartialFractionDecomp, ReconstructionFailure> {
    let h = HarmonicTable::new(1, 2 * n);
    let mut coeffs = Vec::with_capacity(n as usize + 1);
    for k in 0..=n {
        let b = binomial(n + k, k) * binomial(n, k);
        let a = int(&b * &b);
        let spread = (h.get(k) - h.get(n + k)) + (h.get(k) - h.get(n - k));
        let bk = rat(2, 1) * &a * spread;
        coeffs.push(alloc::vec![a, bk]);
    }
    let d = PartialFractionDecomp {
        family: RationalFamily::Order2,
        n,
        coeffs,
    };
    d.verify_reconstruction()?;
    Ok(d)
}

/// Closed-form decomposition of the order-3 family:
/// `At_k = (-1)^{n+k} binom(n+k,k)^3 binom(n,k)^3`,
/// `Bt_k = 3 At_k (2H_k - H_{n+k} - H_{n-k})`,
/// `Ct_k = (9/2) At_k (2H_k - H_{n+k} - H_{n-k})^2
///         - (3/2) At_k (H^{(2)}_{n+k} - 2H^{(2)}_k - H^{(2)}_{n-k})`.
pub fn pf_coeffs_rtilde(n: u64) -> Result<PartialFractionDecomp, ReconstructionFailure> {
    let h = HarmonicTable::new(1, 2 * n);
    let h2 = HarmonicTable::new(2, 2 * n);
    let mut coeffs = Vec::with_capacity(n as usize + 1);
    for k in 0..=n {
        let b = binomial(n + k, k) * binomial(n, k);
        let mut a = int(&b * &b * &b);
        if (n + k) % 2 == 1 {
            a = -a;
        }
        let spread = rat(2, 1) * h.get(k) - h.get(n + k) - h.get(n - k);
        let spread2 = h2.get(n + k) - rat(2, 1) * h2.get(k) - h2.get(n - k);
        let bk = rat(3, 1) * &a * &spread;
        let ck = rat(9, 2) * &a * (&spread * &spread) - rat(3, 2) * &a * spread2;
        coeffs.push(alloc::vec![a, bk, ck]);
    }
    let d = PartialFractionDecomp {
        family: RationalFamily::Order3,
        n,
        coeffs,
    };
    d.verify_reconstruction()?;
    Ok(d)
}

/// Decomposition of the order-4 family. The two deepest coefficients come
/// from the printed closed forms
/// `Ah_k = (-1)^n (n-2k) binom(n+k,n) binom(2n-k,n) binom(n,k)^4`,
/// `Bh_k = (-1)^n binom(n+k,n) binom(2n-k,n) binom(n,k)^4
///         (2 + (n-2k)(5H_k - 5H_{n-k} - H_{n+k} + H_{2n-k}))`;
/// the remaining two are recovered from the exact pole expansion.
pub fn pf_coeffs_rhat(n: u64) -> Result<PartialFractionDecomp, ReconstructionFailure> {
    let h = HarmonicTable::new(1, 2 * n);
    let mut coeffs = Vec::with_capacity(n as usize + 1);
    for k in 0..=n {
        let bk4 = binomial(n, k).pow(4);
        let mut base = int(binomial(n + k, n) * binomial(2 * n - k, n) * bk4);
        if n % 2 == 1 {
            base = -base;
        }
        let nm2k = int(BigInt::from(n as i64 - 2 * k as i64));
        let a = &base * &nm2k;
        let weight = rat(5, 1) * h.get(k) - rat(5, 1) * h.get(n - k) - h.get(n + k)
            + h.get(2 * n - k);
        let b = &base * (rat(2, 1) + &nm2k * weight);
        let tail = pole_expansion(RationalFamily::Order4, n, k);
        debug_assert_eq!(tail[0], a);
        debug_assert_eq!(tail[1], b);
        coeffs.push(alloc::vec![a, b, tail[2].clone(), tail[3].clone()]);
    }
    let d = PartialFractionDecomp {
        family: RationalFamily::Order4,
        n,
        coeffs,
    };
    d.verify_reconstruction()?;
    Ok(d)
}

/// `sum_k binom(n+k,k)^2 binom(n,k)^2 (1 - 2k(2H_k - H_{n+k} - H_{n-k}))`.
pub fn id1_sum(n: u64) -> BigRational {
    let h = HarmonicTable::new(1, 2 * n);
    let mut total = BigRational::zero();
    for k in 0..=n {
        let b = binomial(n + k, k) * binomial(n, k);
        let spread = rat(2, 1) * h.get(k) - h.get(n + k) - h.get(n - k);
        total += int(&b * &b) * (BigRational::one() - int(BigInt::from(2 * k)) * spread);
    }
    total
}

/// The identity: [`id1_sum`] equals `1` exactly.
pub fn check_id1(n: u64) -> bool {
    id1_sum(n).is_one()
}

/// The three residue sums of the order-3 family: `square` must vanish,
/// `middle` must vanish, `full` must equal `(-1)^n`.
pub struct AlternatingResidueSums {
    pub square: BigRational,
    pub middle: BigRational,
    pub full: BigRational,
}

pub fn alternating_residue_sums(n: u64) -> AlternatingResidueSums {
    let h = HarmonicTable::new(1, 2 * n);
    let h2 = HarmonicTable::new(2, 2 * n);
    let mut square = BigRational::zero();
    let mut middle = BigRational::zero();
    let mut full = BigRational::zero();
    for k in 0..=n {
        let b = binomial(n + k, k) * binomial(n, k);
        let mut cube = int(&b * &b * &b);
        if k % 2 == 1 {
            cube = -cube;
        }
        let spread = rat(2, 1) * h.get(k) - h.get(n + k) - h.get(n - k);
        let spread2 = h2.get(n + k) - rat(2, 1) * h2.get(k) - h2.get(n - k);
        square += &cube * (rat(3, 1) * (&spread * &spread) - &spread2);
        let kk = int(BigInt::from(k));
        full += &cube
            * (BigRational::one() - rat(6, 1) * &kk * &spread
                + rat(9, 2) * (&kk * &kk) * (&spread * &spread)
                - rat(3, 2) * (&kk * &kk) * &spread2);
        // middle relation via the closed-form coefficients
        let a = if (n + k) % 2 == 1 { -int(&b * &b * &b) } else { int(&b * &b * &b) };
        let bt = rat(3, 1) * &a * &spread;
        let ct = rat(9, 2) * &a * (&spread * &spread) - rat(3, 2) * &a * spread2;
        middle += bt - &kk * ct;
    }
    AlternatingResidueSums { square, middle, full }
}

/// The printed residue-sum identities, all exact.
pub fn check_residue_sums(n: u64) -> bool {
    let sums = alternating_residue_sums(n);
    let sign = if n % 2 == 1 {
        -BigRational::one()
    } else {
        BigRational::one()
    };
    sums.square.is_zero() && sums.middle.is_zero() && sums.full == sign
}

/// The summand of the Bailey-type double-binomial form of `A(n)`.
pub fn bailey_summand(n: u64, k: u64) -> BigRational {
    let h = HarmonicTable::new(1, 2 * n);
    let bk4 = binomial(n, k).pow(4);
    let mut base = int(binomial(n + k, n) * binomial(2 * n - k, n) * bk4);
    if n % 2 == 1 {
        base = -base;
    }
    let nm2k = int(BigInt::from(n as i64 - 2 * k as i64));
    let weight =
        rat(5, 1) * h.get(k) - rat(5, 1) * h.get(n - k) - h.get(n + k) + h.get(2 * n - k);
    base * (rat(2, 1) + nm2k * weight)
}

/// `A(n) = (1/2) sum_k Bh_k`, exactly.
pub fn check_bailey_apery(n: u64) -> bool {
    let mut total = BigRational::zero();
    for k in 0..=n {
        total += bailey_summand(n, k);
    }
    total * rat(1, 2) == int(apery(n))
}

/// Residue-sum relations of the order-2 and order-3 families:
/// `[sum B_k, sum (A_k - k B_k)]` and
/// `[sum Ct_k, sum (Bt_k - k Ct_k), sum (At_k - 2k Bt_k + k^2 Ct_k)]`.
pub fn residue_relation_sums(family: RationalFamily, n: u64) -> Vec<BigRational> {
    match family {
        RationalFamily::Order2 => {
            let d = pf_coeffs_r(n).expect("reconstruction holds");
            let mut s0 = BigRational::zero();
            let mut s1 = BigRational::zero();
            for (k, cs) in d.coeffs.iter().enumerate() {
                let kk = int(BigInt::from(k as u64));
                s0 += &cs[1];
                s1 += &cs[0] - &kk * &cs[1];
            }
            alloc::vec![s0, s1]
        }
        RationalFamily::Order3 => {
            let d = pf_coeffs_rtilde(n).expect("reconstruction holds");
            let mut s0 = BigRational::zero();
            let mut s1 = BigRational::zero();
            let mut s2 = BigRational::zero();
            for (k, cs) in d.coeffs.iter().enumerate() {
                let kk = int(BigInt::from(k as u64));
                s0 += &cs[2];
                s1 += &cs[1] - &kk * &cs[2];
                s2 += &cs[0] - rat(2, 1) * &kk * &cs[1] + (&kk * &kk) * &cs[2];
            }
            alloc::vec![s0, s1, s2]
        }
        RationalFamily::Order4 => {
            panic!("no printed residue relations for the order-4 family")
        }
    }
}

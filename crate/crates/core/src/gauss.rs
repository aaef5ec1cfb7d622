//! Gaussian hypergeometric series over prime fields, in the
//! all-quadratic-character case, plus Jacobi sums and the expression of the
//! weight-6 newform coefficient `b(p)` through `p^5 {}_6F_5(1)` and
//! `p^3 {}_4F_3(1)`.
//!
//! Characters of `F_p^x` are indexed by exponents with respect to a
//! primitive root `g`: `chi_j(g^t) = zeta^{jt}` with `zeta` a primitive
//! `(p-1)`-th root of unity, extended by `chi(0) = 0`. With `phi` the
//! quadratic character and `eps` trivial, the normalized series collapses to
//!
//! ```text
//! p^n {}_{n+1}F_n(x) = 1/(p-1) * sum_j chi_j(-1)^{n+1}
//!                      J(phi chi_j, conj chi_j)^{n+1} chi_j(x)
//! ```
//!
//! which is a rational integer. Two backends evaluate it: complex doubles
//! with compensated summation and an integrality certificate, and exact
//! integer vectors in `Z[x]/(x^{p-1}-1)` (cyclic convolution) reduced at the
//! end modulo the `(p-1)`-th cyclotomic polynomial.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Float, One, Zero};

#[derive(Clone, Debug, PartialEq)]
pub enum GaussError {
    NotAnOddPrime(u64),
    NotPrimitiveRoot { p: u64, root: u64 },
    /// The float backend could not certify integrality within `10^-3`.
    PrecisionFailure { p: u64, n: u32, x: u64, distance: f64 },
    /// The exact backend reduced to a non-constant cyclotomic remainder.
    /// Cannot happen for genuine character sums.
    NonConstantRemainder { p: u64, n: u32, x: u64 },
}

impl fmt::Display for GaussError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GaussError::NotAnOddPrime(p) => write!(f, "{p} is not an odd prime"),
            GaussError::NotPrimitiveRoot { p, root } => {
                write!(f, "{root} is not a primitive root mod {p}")
            }
            GaussError::PrecisionFailure { p, n, x, distance } => write!(
                f,
                "float backend missed integrality for p={p}, n={n}, x={x}: distance {distance:e}"
            ),
            GaussError::NonConstantRemainder { p, n, x } => write!(
                f,
                "exact backend produced a non-constant remainder for p={p}, n={n}, x={x}"
            ),
        }
    }
}

/// Discrete-log table for `F_p^x` over a fixed primitive root.
pub struct CharacterTable {
    p: u64,
    root: u64,
    dlog: Vec<u32>,
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

use crate::arith::powmod;

fn is_primitive_root(p: u64, g: u64) -> bool {
    if g % p == 0 {
        return false;
    }
    prime_factors(p - 1)
        .into_iter()
        .all(|q| powmod(g, (p - 1) / q, p) != 1)
}

impl CharacterTable {
    /// Table over the smallest positive primitive root.
    pub fn new(p: u64) -> Result<Self, GaussError> {
        if p < 3 || !crate::arith::is_prime(p) {
            return Err(GaussError::NotAnOddPrime(p));
        }
        let root = (2..p)
            .find(|&g| is_primitive_root(p, g))
            .expect("every odd prime has a primitive root");
        Self::with_root(p, root)
    }

    /// Table over a caller-chosen primitive root.
    pub fn with_root(p: u64, root: u64) -> Result<Self, GaussError> {
        if p < 3 || !crate::arith::is_prime(p) {
            return Err(GaussError::NotAnOddPrime(p));
        }
        if !is_primitive_root(p, root) {
            return Err(GaussError::NotPrimitiveRoot { p, root });
        }
        let mut dlog = alloc::vec![0u32; p as usize];
        let mut v = 1u64;
        for e in 0..(p - 1) {
            dlog[v as usize] = e as u32;
            v = (v as u128 * root as u128 % p as u128) as u64;
        }
        Ok(CharacterTable { p, root, dlog })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn root(&self) -> u64 {
        self.root
    }

    /// Exponent of `x` with respect to the primitive root; `x` must be a
    /// unit.
    pub fn dlog(&self, x: u64) -> u32 {
        let r = x % self.p;
        assert!(r != 0, "dlog of 0 is undefined (chi(0) = 0 by convention)");
        self.dlog[r as usize]
    }
}

/// Evaluation backend for character sums.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GaussBackend {
    Float,
    Exact,
}

/// Element of `Z[x]/(x^{p-1}-1)` as a coefficient vector; multiplication is
/// cyclic convolution. Character values live here as monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycVec(pub Vec<BigInt>);

impl CycVec {
    pub fn zero(n: usize) -> Self {
        CycVec(alloc::vec![BigInt::zero(); n])
    }

    pub fn monomial(n: usize, e: usize) -> Self {
        let mut v = Self::zero(n);
        v.0[e % n] = BigInt::one();
        v
    }

    pub fn convolve(&self, other: &CycVec) -> CycVec {
        let n = self.0.len();
        let mut out = CycVec::zero(n);
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let idx = (i + j) % n;
                out.0[idx] += a * b;
            }
        }
        out
    }

    pub fn rotate(&self, s: usize) -> CycVec {
        let n = self.0.len();
        let mut out = CycVec::zero(n);
        for (i, a) in self.0.iter().enumerate() {
            out.0[(i + s) % n] = a.clone();
        }
        out
    }

    pub fn add_assign(&mut self, other: &CycVec) {
        for (a, b) in self.0.iter_mut().zip(other.0.iter()) {
            *a += b;
        }
    }
}

/// `Phi_n(x)` coefficients, ascending. Built by exact division of `x^d - 1`
/// by the cyclotomic polynomials of the proper divisors.
pub fn cyclotomic_polynomial(n: u64) -> Vec<BigInt> {
    fn x_power_minus_one(d: u64) -> Vec<BigInt> {
        let mut v = alloc::vec![BigInt::zero(); d as usize + 1];
        v[0] = -BigInt::one();
        v[d as usize] = BigInt::one();
        v
    }
    // exact division by a monic divisor
    fn div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
        let mut rem: Vec<BigInt> = num.to_vec();
        let dn = den.len() - 1;
        debug_assert!(den[dn].is_one());
        let qn = rem.len() - 1 - dn;
        let mut quot = alloc::vec![BigInt::zero(); qn + 1];
        for i in (0..=qn).rev() {
            let c = rem[i + dn].clone();
            if c.is_zero() {
                continue;
            }
            quot[i] = c.clone();
            for (k, dk) in den.iter().enumerate() {
                let delta = dk * &c;
                rem[i + k] -= delta;
            }
        }
        debug_assert!(rem.iter().all(Zero::is_zero));
        quot
    }
    let mut phi = x_power_minus_one(n);
    for d in 1..n {
        if n % d == 0 {
            let phi_d = cyclotomic_polynomial(d);
            phi = div_exact(&phi, &phi_d);
        }
    }
    phi
}

/// Remainder of `poly` (ascending coefficients) modulo the monic `modulus`.
fn poly_rem(poly: &[BigInt], modulus: &[BigInt]) -> Vec<BigInt> {
    let mut rem: Vec<BigInt> = poly.to_vec();
    let dn = modulus.len() - 1;
    while rem.len() > dn {
        let top = rem.len() - 1;
        let c = rem[top].clone();
        if !c.is_zero() {
            for (k, mk) in modulus.iter().enumerate() {
                let idx = top - dn + k;
                let delta = mk * &c;
                rem[idx] -= delta;
            }
        }
        rem.pop();
    }
    rem
}

#[derive(Clone, Copy, Debug, PartialEq)]
struct Cx {
    re: f64,
    im: f64,
}

impl Cx {
    const ZERO: Cx = Cx { re: 0.0, im: 0.0 };

    fn mul(self, other: Cx) -> Cx {
        Cx {
            re: self.re * other.re - self.im * other.im,
            im: self.re * other.im + self.im * other.re,
        }
    }
}

/// Kahan-compensated complex accumulator.
struct Kahan {
    sum: Cx,
    carry: Cx,
}

impl Kahan {
    fn new() -> Self {
        Kahan {
            sum: Cx::ZERO,
            carry: Cx::ZERO,
        }
    }

    fn add(&mut self, v: Cx) {
        let yr = v.re - self.carry.re;
        let tr = self.sum.re + yr;
        self.carry.re = (tr - self.sum.re) - yr;
        self.sum.re = tr;
        let yi = v.im - self.carry.im;
        let ti = self.sum.im + yi;
        self.carry.im = (ti - self.sum.im) - yi;
        self.sum.im = ti;
    }
}

fn roots_of_unity(n: usize) -> Vec<Cx> {
    let tau = 2.0 * core::f64::consts::PI;
    (0..n)
        .map(|t| {
            let a = tau * t as f64 / n as f64;
            Cx {
                re: a.cos(),
                im: a.sin(),
            }
        })
        .collect()
}

/// A Jacobi sum in either backend representation.
#[derive(Clone, Debug)]
pub enum JacobiSum {
    Complex { re: f64, im: f64 },
    Cyclotomic(CycVec),
}

/// `J(chi_j, chi_k) = sum_t chi_j(t) chi_k(1-t)` with `chi(0) = 0`.
pub fn jacobi_sum(table: &CharacterTable, j: u32, k: u32, backend: GaussBackend) -> JacobiSum {
    let p = table.p;
    let n = (p - 1) as usize;
    match backend {
        GaussBackend::Float => {
            let roots = roots_of_unity(n);
            let mut acc = Kahan::new();
            for t in 2..p {
                let e = (j as u64 * table.dlog(t) as u64
                    + k as u64 * table.dlog((1 + p - t) % p) as u64)
                    % n as u64;
                acc.add(roots[e as usize]);
            }
            JacobiSum::Complex {
                re: acc.sum.re,
                im: acc.sum.im,
            }
        }
        GaussBackend::Exact => {
            let mut v = CycVec::zero(n);
            for t in 2..p {
                let e = (j as u64 * table.dlog(t) as u64
                    + k as u64 * table.dlog((1 + p - t) % p) as u64)
                    % n as u64;
                v.0[e as usize] += 1;
            }
            JacobiSum::Cyclotomic(v)
        }
    }
}

/// Integrality evidence attached to a Gaussian series value.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Certificate {
    /// Exact-backend evaluation: the cyclotomic remainder was constant.
    Exact,
    /// Float-backend evaluation: distance of `p^n F` to the nearest integer.
    FloatDistance(f64),
}

/// `p^n {}_{n+1}F_n(x)` as a certified integer.
#[derive(Clone, Debug)]
pub struct GaussSeriesValue {
    pub n: u32,
    pub p: u64,
    pub x: u64,
    pub scaled: BigInt,
    pub certificate: Certificate,
}

const FLOAT_TOLERANCE: f64 = 1e-3;

/// Evaluate `p^n {}_{n+1}F_n(x)` with all upper characters quadratic and all
/// lower characters trivial.
pub fn gauss_nfn(
    table: &CharacterTable,
    n: u32,
    x: u64,
    backend: GaussBackend,
) -> Result<GaussSeriesValue, GaussError> {
    let p = table.p;
    let count = (p - 1) as usize;
    let h = (p - 1) / 2;
    let reps = n as usize + 1;

    if x % p == 0 {
        // every summand carries chi(0) = 0
        return Ok(GaussSeriesValue {
            n,
            p,
            x,
            scaled: BigInt::zero(),
            certificate: Certificate::Exact,
        });
    }
    let lx = table.dlog(x) as u64;

    match backend {
        GaussBackend::Float => {
            let roots = roots_of_unity(count);
            let mut total = Kahan::new();
            for j in 0..(p - 1) {
                let a = ((h + j) % (p - 1)) as u32;
                let b = ((p - 1 - j) % (p - 1)) as u32;
                let jac = match jacobi_sum(table, a, b, GaussBackend::Float) {
                    JacobiSum::Complex { re, im } => Cx { re, im },
                    JacobiSum::Cyclotomic(_) => unreachable!(),
                };
                let mut w = Cx { re: 1.0, im: 0.0 };
                for _ in 0..reps {
                    w = w.mul(jac);
                }
                // chi_j(-1)^{n+1} chi_j(x)
                let sign_exp = (j * h) % (p - 1) * (reps as u64) % (p - 1);
                let e = ((sign_exp + j * lx) % (p - 1)) as usize;
                total.add(w.mul(roots[e]));
            }
            let re = total.sum.re / (p - 1) as f64;
            let im = total.sum.im / (p - 1) as f64;
            let nearest = re.round();
            let distance = ((re - nearest) * (re - nearest) + im * im).sqrt();
            if distance > FLOAT_TOLERANCE || !distance.is_finite() {
                return Err(GaussError::PrecisionFailure { p, n, x, distance });
            }
            let scaled = BigInt::from(nearest as i64);
            Ok(GaussSeriesValue {
                n,
                p,
                x,
                scaled,
                certificate: Certificate::FloatDistance(distance),
            })
        }
        GaussBackend::Exact => {
            let mut total = CycVec::zero(count);
            for j in 0..(p - 1) {
                let a = ((h + j) % (p - 1)) as u32;
                let b = ((p - 1 - j) % (p - 1)) as u32;
                let jac = match jacobi_sum(table, a, b, GaussBackend::Exact) {
                    JacobiSum::Cyclotomic(v) => v,
                    JacobiSum::Complex { .. } => unreachable!(),
                };
                let mut w = CycVec::monomial(count, 0);
                for _ in 0..reps {
                    w = w.convolve(&jac);
                }
                let rot = ((j * h) % (p - 1) * (reps as u64) + j * lx) % (p - 1);
                total.add_assign(&w.rotate(rot as usize));
            }
            let phi = cyclotomic_polynomial(p - 1);
            let rem = poly_rem(&total.0, &phi);
            if rem.iter().skip(1).any(|c| !c.is_zero()) {
                return Err(GaussError::NonConstantRemainder { p, n, x });
            }
            let constant = rem.first().cloned().unwrap_or_else(BigInt::zero);
            let (q, r) = constant.div_rem(&BigInt::from(p - 1));
            if !r.is_zero() {
                return Err(GaussError::NonConstantRemainder { p, n, x });
            }
            Ok(GaussSeriesValue {
                n,
                p,
                x,
                scaled: q,
                certificate: Certificate::Exact,
            })
        }
    }
}

/// The weight-6 newform coefficient from Gaussian series:
/// `b(p) = -p^5 {}_6F_5(1) + p^4 {}_4F_3(1) + (1 - phi_p(-1)) p^2`.
pub fn fop_b(p: u64, backend: GaussBackend) -> Result<BigInt, GaussError> {
    let table = CharacterTable::new(p)?;
    let g5 = gauss_nfn(&table, 5, 1, backend)?;
    let g3 = gauss_nfn(&table, 3, 1, backend)?;
    let m = (p - 1) / 2;
    let parity_term = if m % 2 == 1 {
        BigInt::from(2) * BigInt::from(p).pow(2)
    } else {
        BigInt::zero()
    };
    Ok(-g5.scaled + BigInt::from(p) * g3.scaled + parity_term)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_primitive_roots() {
        assert_eq!(CharacterTable::new(3).unwrap().root(), 2);
        assert_eq!(CharacterTable::new(5).unwrap().root(), 2);
        assert_eq!(CharacterTable::new(7).unwrap().root(), 3);
        assert_eq!(CharacterTable::new(11).unwrap().root(), 2);
        assert!(matches!(
            CharacterTable::with_root(11, 3),
            Err(GaussError::NotPrimitiveRoot { .. })
        ));
        assert!(matches!(
            CharacterTable::new(9),
            Err(GaussError::NotAnOddPrime(9))
        ));
    }

    #[test]
    fn jacobi_of_trivial_characters_is_p_minus_2() {
        for p in [5u64, 7, 11, 13] {
            let t = CharacterTable::new(p).unwrap();
            match jacobi_sum(&t, 0, 0, GaussBackend::Float) {
                JacobiSum::Complex { re, im } => {
                    assert!((re - (p as f64 - 2.0)).abs() < 1e-9 && im.abs() < 1e-9);
                }
                _ => unreachable!(),
            }
            match jacobi_sum(&t, 0, 0, GaussBackend::Exact) {
                JacobiSum::Cyclotomic(v) => {
                    assert_eq!(v.0[0], BigInt::from(p - 2));
                    assert!(v.0.iter().skip(1).all(|c| c.is_zero()));
                }
                _ => unreachable!(),
            }
        }
    }

    #[test]
    fn jacobi_quadratic_squared_at_five() {
        // J(phi, phi) = -phi(-1) = -1 for p = 5
        let t = CharacterTable::new(5).unwrap();
        let h = 2u32;
        match jacobi_sum(&t, h, h, GaussBackend::Float) {
            JacobiSum::Complex { re, im } => {
                assert!((re + 1.0).abs() < 1e-9 && im.abs() < 1e-9);
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn jacobi_magnitude_is_sqrt_p() {
        // nontrivial chi_j, chi_k, chi_j chi_k: |J| = sqrt(p), p = 7
        let t = CharacterTable::new(7).unwrap();
        for (j, k) in [(1u32, 2u32), (2, 3), (1, 4)] {
            if (j + k) % 6 == 0 {
                continue;
            }
            match jacobi_sum(&t, j, k, GaussBackend::Float) {
                JacobiSum::Complex { re, im } => {
                    assert!((re * re + im * im - 7.0).abs() < 1e-9, "j={j} k={k}");
                }
                _ => unreachable!(),
            }
        }
    }

    #[test]
    fn scaled_series_values_match_both_backends() {
        let g3_expected = [(3u64, 1i64), (5, -3), (7, -31), (11, 33), (13, -35)];
        let g5_expected = [(3u64, 1i64), (5, 59), (7, -95), (11, 481), (13, -933)];
        for &(p, v) in &g3_expected {
            let t = CharacterTable::new(p).unwrap();
            for backend in [GaussBackend::Float, GaussBackend::Exact] {
                let got = gauss_nfn(&t, 3, 1, backend).unwrap();
                assert_eq!(got.scaled, BigInt::from(v), "p={p} {backend:?}");
            }
        }
        for &(p, v) in &g5_expected {
            let t = CharacterTable::new(p).unwrap();
            for backend in [GaussBackend::Float, GaussBackend::Exact] {
                let got = gauss_nfn(&t, 5, 1, backend).unwrap();
                assert_eq!(got.scaled, BigInt::from(v), "p={p} {backend:?}");
            }
        }
    }

    #[test]
    fn certificates_are_attached() {
        let t = CharacterTable::new(13).unwrap();
        let f = gauss_nfn(&t, 5, 1, GaussBackend::Float).unwrap();
        match f.certificate {
            Certificate::FloatDistance(d) => assert!(d < 1e-6),
            _ => panic!("float backend must report a distance"),
        }
        let e = gauss_nfn(&t, 5, 1, GaussBackend::Exact).unwrap();
        assert_eq!(e.certificate, Certificate::Exact);
    }

    #[test]
    fn series_vanishes_at_zero_argument() {
        let t = CharacterTable::new(7).unwrap();
        let v = gauss_nfn(&t, 3, 0, GaussBackend::Float).unwrap();
        assert!(v.scaled.is_zero());
    }

    #[test]
    fn fop_small_values() {
        for backend in [GaussBackend::Float, GaussBackend::Exact] {
            assert_eq!(fop_b(3, backend).unwrap(), BigInt::from(20));
            assert_eq!(fop_b(5, backend).unwrap(), BigInt::from(-74));
            assert_eq!(fop_b(7, backend).unwrap(), BigInt::from(-24));
        }
    }

    #[test]
    fn independent_of_primitive_root() {
        for p in [11u64, 13] {
            let roots: Vec<u64> = (2..p).filter(|&g| is_primitive_root(p, g)).collect();
            assert!(roots.len() >= 2);
            let t1 = CharacterTable::with_root(p, roots[0]).unwrap();
            let t2 = CharacterTable::with_root(p, roots[roots.len() - 1]).unwrap();
            for n in [3u32, 5] {
                for x in [1u64, 2] {
                    let a = gauss_nfn(&t1, n, x, GaussBackend::Float).unwrap();
                    let b = gauss_nfn(&t2, n, x, GaussBackend::Float).unwrap();
                    assert_eq!(a.scaled, b.scaled, "p={p} n={n} x={x}");
                }
            }
        }
    }

    #[test]
    fn cyclotomic_polynomials() {
        let to_i = |v: Vec<BigInt>| -> Vec<i64> {
            v.into_iter().map(|c| i64::try_from(c).unwrap()).collect()
        };
        assert_eq!(to_i(cyclotomic_polynomial(1)), [-1, 1]);
        assert_eq!(to_i(cyclotomic_polynomial(2)), [1, 1]);
        assert_eq!(to_i(cyclotomic_polynomial(4)), [1, 0, 1]);
        assert_eq!(to_i(cyclotomic_polynomial(6)), [1, -1, 1]);
        assert_eq!(to_i(cyclotomic_polynomial(12)), [1, 0, -1, 0, 1]);
    }
}

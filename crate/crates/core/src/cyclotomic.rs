//! Exact arithmetic in the cyclotomic integers `Z[zeta_m]`.
//!
//! Elements are stored as their remainder modulo the m-th cyclotomic
//! polynomial, which makes the representation unique: two values are equal
//! exactly when their coefficient vectors are.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense integer polynomial, lowest degree first. The zero polynomial is the
/// empty vector; otherwise the leading coefficient is nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct CycPoly {
    coeffs: Vec<BigInt>,
}

impl CycPoly {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = CycPoly { coeffs };
        p.trim();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `x^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::one();
        CycPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn mul(&self, other: &CycPoly) -> CycPoly {
        if self.is_zero() || other.is_zero() {
            return CycPoly::default();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        CycPoly::new(out)
    }

    /// Quotient and remainder by a monic divisor.
    pub fn div_rem_monic(&self, divisor: &CycPoly) -> (CycPoly, CycPoly) {
        let d = divisor.degree().expect("division by the zero polynomial");
        assert!(divisor.coeffs[d].is_one(), "divisor must be monic");
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return (CycPoly::default(), self.clone());
        }
        let mut quot = vec![BigInt::zero(); rem.len() - d];
        for top in (d..rem.len()).rev() {
            let lead = std::mem::take(&mut rem[top]);
            if lead.is_zero() {
                continue;
            }
            let shift = top - d;
            for (i, c) in divisor.coeffs[..d].iter().enumerate() {
                rem[shift + i] -= &lead * c;
            }
            quot[shift] = lead;
        }
        rem.truncate(d);
        (CycPoly::new(quot), CycPoly::new(rem))
    }
}

fn divisors(n: usize) -> Vec<usize> {
    let mut out: Vec<usize> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    out.sort_unstable();
    out
}

fn compute_cyclotomic(m: usize) -> CycPoly {
    // x^m - 1 divided by Phi_d for every proper divisor d of m.
    let mut acc = CycPoly::monomial(m);
    acc.coeffs[0] = BigInt::from(-1);
    for d in divisors(m).into_iter().filter(|&d| d < m) {
        let (q, r) = acc.div_rem_monic(&cyclotomic_arc(d));
        debug_assert!(r.is_zero());
        acc = q;
    }
    acc
}

fn cyclotomic_arc(m: usize) -> Arc<CycPoly> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<CycPoly>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().unwrap().get(&m) {
        return Arc::clone(p);
    }
    // Computed outside the lock: the recursion needs smaller entries.
    let p = Arc::new(compute_cyclotomic(m));
    cache
        .lock()
        .unwrap()
        .entry(m)
        .or_insert_with(|| Arc::clone(&p))
        .clone()
}

/// The m-th cyclotomic polynomial `Phi_m`.
///
/// # Panics
///
/// Panics if `m == 0`.
pub fn cyclotomic_polynomial(m: usize) -> CycPoly {
    assert!(m >= 1, "cyclotomic_polynomial: m must be positive");
    (*cyclotomic_arc(m)).clone()
}

/// Euler's totient, the degree of `Phi_m`.
pub fn totient(m: usize) -> usize {
    (1..=m).filter(|k| k.gcd(&m) == 1).count()
}

/// An element of `Z[zeta_m]` in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicInt {
    order: usize,
    coeffs: Vec<BigInt>,
}

/// Canonical remainder of `raw` modulo `Phi_m`, padded to `phi(m)` coefficients.
pub fn reduce(raw: &CycPoly, m: usize) -> CyclotomicInt {
    assert!(m >= 1, "reduce: m must be positive");
    let modulus = cyclotomic_arc(m);
    let width = modulus.degree().unwrap_or(0);
    let (_, rem) = raw.div_rem_monic(&modulus);
    let mut coeffs = rem.coeffs;
    coeffs.resize(width, BigInt::zero());
    CyclotomicInt { order: m, coeffs }
}

/// `zeta_m^k`; `k` is taken modulo `m` and may be negative.
pub fn zeta(m: usize, k: i64) -> CyclotomicInt {
    assert!(m >= 1, "zeta: m must be positive");
    let e = k.rem_euclid(m as i64) as usize;
    reduce(&CycPoly::monomial(e), m)
}

impl CyclotomicInt {
    pub fn zero(m: usize) -> Self {
        reduce(&CycPoly::default(), m)
    }

    pub fn one(m: usize) -> Self {
        Self::from_int(m, 1)
    }

    pub fn from_int(m: usize, value: i64) -> Self {
        reduce(&CycPoly::from_i64(&[value]), m)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn as_poly(&self) -> CycPoly {
        CycPoly::new(self.coeffs.clone())
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.order == other.order {
            Ok(())
        } else {
            Err(Error::OrderMismatch {
                left: self.order,
                right: other.order,
            })
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        // Sums of reduced vectors are already reduced.
        Ok(CyclotomicInt {
            order: self.order,
            coeffs,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        CyclotomicInt {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(reduce(&self.as_poly().mul(&other.as_poly()), self.order))
    }

    /// Coefficient-wise comparison of canonical forms.
    pub fn eq_checked(&self, other: &Self) -> Result<bool> {
        self.check(other)?;
        Ok(self.coeffs == other.coeffs)
    }

    /// Complex conjugation, `zeta_m -> zeta_m^(m-1)`.
    pub fn conjugate(&self) -> Self {
        let m = self.order;
        let mut raw = vec![BigInt::zero(); m];
        for (i, c) in self.coeffs.iter().enumerate() {
            raw[(i * (m - 1)) % m] += c;
        }
        reduce(&CycPoly::new(raw), m)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.order);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same ring");
            }
            base = base.mul(&base).expect("same ring");
            e >>= 1;
        }
        acc
    }
}

impl fmt::Display for CyclotomicInt {
    /// Polynomial in `z`, highest power first: `z^3-z+1`, `0`, `-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else if wrote { "+" } else { "" };
            let mag = c.abs();
            let body = match i {
                0 => mag.to_string(),
                _ => {
                    let var = if i == 1 { "z".to_string() } else { format!("z^{i}") };
                    if mag.is_one() {
                        var
                    } else {
                        format!("{mag}{var}")
                    }
                }
            };
            write!(f, "{sign}{body}")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

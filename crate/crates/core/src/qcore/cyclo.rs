//! Products of cyclotomic polynomials in `q`, times a monomial in `v`.
//!
//! Quantum integers, factorials, Pochhammer symbols and q-binomials all
//! factor as `c · v^e · ∏ Φ_d(q)^{m_d}`, so products and quotients of them
//! reduce to adding exponent vectors. Expansion into a [`VRational`] happens
//! only once, at the end of a formula.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Div, Mul, Neg};
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Signed, Zero};

use super::laurent::{rat, Rational, VLaurent};
use super::rational::VRational;
use crate::error::{Error, Result};

pub(crate) fn divisors(n: u32) -> Vec<u32> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub(crate) fn euler_phi(n: u32) -> u32 {
    let mut n = n;
    let mut out = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}

fn cyclotomic_cache() -> &'static Mutex<HashMap<u32, Arc<VLaurent>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<VLaurent>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `Φ_d(q)` as a polynomial in `v` (every exponent a multiple of 4).
pub fn cyclotomic(d: u32) -> Arc<VLaurent> {
    assert!(d >= 1, "cyclotomic index must be positive");
    if let Some(p) = cyclotomic_cache().lock().unwrap().get(&d) {
        return Arc::clone(p);
    }
    // q^d - 1 = ∏_{e | d} Φ_e(q)
    let mut p = &VLaurent::q_pow(d as i64) - &VLaurent::one();
    for e in divisors(d) {
        if e < d {
            p = p
                .div_exact(&cyclotomic(e))
                .expect("q^d - 1 is divisible by every Φ_e with e | d");
        }
    }
    let p = Arc::new(p);
    cyclotomic_cache()
        .lock()
        .unwrap()
        .entry(d)
        .or_insert_with(|| Arc::clone(&p));
    p
}

/// `c · v^e · ∏_d Φ_d(q)^{m_d}` with integer (possibly negative) `m_d`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclo {
    coeff: Rational,
    v_exp: i64,
    factors: BTreeMap<u32, i32>,
}

impl Cyclo {
    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn zero() -> Self {
        Self::constant(Rational::zero())
    }

    pub fn constant(c: Rational) -> Self {
        Self {
            coeff: c,
            v_exp: 0,
            factors: BTreeMap::new(),
        }
    }

    pub fn sign(negative: bool) -> Self {
        Self::constant(rat(if negative { -1 } else { 1 }))
    }

    pub fn v_pow(e: i64) -> Self {
        Self {
            coeff: Rational::one(),
            v_exp: e,
            factors: BTreeMap::new(),
        }
    }

    /// `Φ_d(q)^m`.
    pub fn phi(d: u32, m: i32) -> Self {
        let mut out = Self::one();
        out.bump(d, m);
        out
    }

    /// Quantum integer `[n] = v^{-2(n-1)} ∏_{d | n, d > 1} Φ_d(q)`.
    pub fn qint(n: u32) -> Self {
        if n == 0 {
            return Self::zero();
        }
        let mut out = Self::v_pow(-2 * (n as i64 - 1));
        for d in divisors(n) {
            if d > 1 {
                out.bump(d, 1);
            }
        }
        out
    }

    /// `Δ_n = (-1)^n [n+1]`.
    pub fn delta(n: u32) -> Self {
        let mut out = Self::qint(n + 1);
        if n % 2 == 1 {
            out.coeff = -out.coeff;
        }
        out
    }

    /// `[n]! = [1][2]...[n]`.
    pub fn qfact(n: u32) -> Self {
        (1..=n).fold(Self::one(), |acc, k| &acc * &Self::qint(k))
    }

    /// `1 - q^t` for `t ≥ 1`.
    pub fn one_minus_q(t: u32) -> Self {
        assert!(t >= 1);
        let mut out = Self::sign(true);
        for d in divisors(t) {
            out.bump(d, 1);
        }
        out
    }

    /// `(q;q)_n`.
    pub fn qpoch(n: u32) -> Self {
        (1..=n).fold(Self::one(), |acc, t| &acc * &Self::one_minus_q(t))
    }

    /// `(q;q)_n / ((q;q)_i (q;q)_{n-i})`; zero outside `0 ≤ i ≤ n`.
    pub fn qbinom(n: u32, i: i64) -> Self {
        if i < 0 || i > n as i64 {
            return Self::zero();
        }
        let i = i as u32;
        &Self::qpoch(n) / &(&Self::qpoch(i) * &Self::qpoch(n - i))
    }

    fn bump(&mut self, d: u32, m: i32) {
        if m == 0 {
            return;
        }
        let slot = self.factors.entry(d).or_insert(0);
        *slot += m;
        if *slot == 0 {
            self.factors.remove(&d);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn coeff(&self) -> &Rational {
        &self.coeff
    }

    pub fn v_exp(&self) -> i64 {
        self.v_exp
    }

    pub fn factors(&self) -> &BTreeMap<u32, i32> {
        &self.factors
    }

    pub fn pow(&self, k: u32) -> Self {
        if self.is_zero() {
            return if k == 0 { Self::one() } else { Self::zero() };
        }
        Self {
            coeff: num_traits::pow(self.coeff.clone(), k as usize),
            v_exp: self.v_exp * k as i64,
            factors: self
                .factors
                .iter()
                .map(|(d, m)| (*d, m * k as i32))
                .collect(),
        }
    }

    pub fn checked_div(&self, rhs: &Cyclo) -> Result<Cyclo> {
        if rhs.is_zero() {
            return Err(Error::domain("division by zero"));
        }
        Ok(self.div_unchecked(rhs))
    }

    fn div_unchecked(&self, rhs: &Cyclo) -> Cyclo {
        if self.is_zero() {
            return Self::zero();
        }
        let mut out = self.clone();
        out.coeff /= &rhs.coeff;
        out.v_exp -= rhs.v_exp;
        for (d, m) in &rhs.factors {
            out.bump(*d, -m);
        }
        out
    }

    /// Splits into the numerator polynomial (positive multiplicities,
    /// monomial and constant) and the denominator multiplicities.
    pub fn to_vrational(&self) -> VRational {
        if self.is_zero() {
            return VRational::zero();
        }
        let mut num = VLaurent::monomial(self.coeff.clone(), self.v_exp);
        let mut den = BTreeMap::new();
        for (d, m) in &self.factors {
            if *m > 0 {
                num = &num * &cyclotomic(*d).pow(*m as u32);
            } else {
                den.insert(*d, (-m) as u32);
            }
        }
        VRational::from_parts_reduced(num, den)
    }

    /// Attempts to write a Laurent polynomial as a cyclotomic product.
    ///
    /// Trial division by `Φ_d(q)` for every `d` with `φ(d)` at most the
    /// remaining degree; `φ(d) ≥ sqrt(d/2)` bounds the search.
    pub fn factor(p: &VLaurent) -> Option<Cyclo> {
        let e0 = p.min_exp()?;
        if !p.is_q_homogeneous() {
            return None;
        }
        let mut rem = p.shift(-e0);
        let mut out = Cyclo::v_pow(e0);
        let mut d: u32 = 1;
        loop {
            let deg = (rem.max_exp()? / 4) as u64;
            if deg == 0 || d as u64 > 2 * deg * deg + 2 {
                break;
            }
            if euler_phi(d) as u64 <= deg {
                let phi = cyclotomic(d);
                while let Ok((q, r)) = rem.div_rem(&phi) {
                    if !r.is_zero() {
                        break;
                    }
                    rem = q;
                    out.bump(d, 1);
                }
            }
            d += 1;
        }
        if rem.max_exp() != Some(0) {
            return None;
        }
        out.coeff = rem.coeff(0);
        Some(out)
    }
}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.coeff)?;
        if self.v_exp != 0 {
            write!(f, "*v^{}", self.v_exp)?;
        }
        for (d, m) in &self.factors {
            write!(f, "*Phi{d}(q)^{m}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclo({self})")
    }
}

impl<'a> Mul<&'a Cyclo> for &'a Cyclo {
    type Output = Cyclo;
    fn mul(self, rhs: &'a Cyclo) -> Cyclo {
        if self.is_zero() || rhs.is_zero() {
            return Cyclo::zero();
        }
        let mut out = self.clone();
        out.coeff *= &rhs.coeff;
        out.v_exp += rhs.v_exp;
        for (d, m) in &rhs.factors {
            out.bump(*d, *m);
        }
        out
    }
}

impl Mul for Cyclo {
    type Output = Cyclo;
    fn mul(self, rhs: Cyclo) -> Cyclo {
        &self * &rhs
    }
}

/// # Panics
///
/// Panics when dividing by zero, like integer division.
impl<'a> Div<&'a Cyclo> for &'a Cyclo {
    type Output = Cyclo;
    fn div(self, rhs: &'a Cyclo) -> Cyclo {
        assert!(!rhs.is_zero(), "division of cyclotomic product by zero");
        self.div_unchecked(rhs)
    }
}

impl Div for Cyclo {
    type Output = Cyclo;
    fn div(self, rhs: Cyclo) -> Cyclo {
        &self / &rhs
    }
}

impl Neg for &Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        let mut out = self.clone();
        out.coeff = -out.coeff;
        out
    }
}

impl Neg for Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        -&self
    }
}

impl Cyclo {
    pub fn is_negative_coeff(&self) -> bool {
        self.coeff.is_negative()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(*cyclotomic(1), VLaurent::from_q_coeffs(&[-1, 1]));
        assert_eq!(*cyclotomic(2), VLaurent::from_q_coeffs(&[1, 1]));
        assert_eq!(*cyclotomic(6), VLaurent::from_q_coeffs(&[1, -1, 1]));
        assert_eq!(*cyclotomic(12), VLaurent::from_q_coeffs(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn phi_and_divisors() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(1), 1);
        for d in 1..40 {
            let deg = cyclotomic(d).max_exp().unwrap() / 4;
            assert_eq!(deg, euler_phi(d) as i64);
        }
    }

    #[test]
    fn qint_expands_symmetrically() {
        let three = Cyclo::qint(3).to_vrational();
        let expect = VLaurent::from_terms([(-4, rat(1)), (0, rat(1)), (4, rat(1))]);
        assert_eq!(three.to_laurent().unwrap(), expect);
    }

    #[test]
    fn factor_recovers_products() {
        let c = &(&Cyclo::qfact(5) * &Cyclo::qpoch(3)) * &Cyclo::constant(rat(-7));
        let p = c.to_vrational().to_laurent().unwrap();
        let back = Cyclo::factor(&p).unwrap();
        assert_eq!(back.to_vrational().to_laurent().unwrap(), p);
        assert!(Cyclo::factor(&VLaurent::from_q_coeffs(&[1, 3])).is_none());
        assert!(Cyclo::factor(&VLaurent::from_q_coeffs(&[1, 0, 1, 1])).is_none());
    }
}

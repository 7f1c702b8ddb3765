//! Rational functions whose denominators are products of cyclotomic
//! polynomials in `q`.
//!
//! Jones–Wenzl coefficients and bubble-expansion coefficients are quotients
//! of quantum integers, so their denominators always factor this way. The
//! representation is canonical: the numerator is never divisible by a
//! cyclotomic factor still present in the denominator, which makes
//! structural equality coincide with equality of functions.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_traits::Zero;
use serde_json::{json, Value};

use super::cyclo::{cyclotomic, Cyclo};
use super::laurent::{Rational, VLaurent};
use crate::error::{Error, Result};

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct VRational {
    num: VLaurent,
    den: BTreeMap<u32, u32>,
}

impl VRational {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        VLaurent::one().into()
    }

    pub fn constant(c: Rational) -> Self {
        VLaurent::constant(c).into()
    }

    /// Builds `num / ∏ Φ_d(q)^{den[d]}` and cancels common factors.
    pub fn from_parts_reduced(num: VLaurent, den: BTreeMap<u32, u32>) -> Self {
        let mut out = Self { num, den };
        out.reduce();
        out
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        let mut den = std::mem::take(&mut self.den);
        for (d, m) in den.iter_mut() {
            let phi = cyclotomic(*d);
            while *m > 0 {
                match self.num.div_rem(&phi) {
                    Ok((q, r)) if r.is_zero() => {
                        self.num = q;
                        *m -= 1;
                    }
                    _ => break,
                }
            }
        }
        den.retain(|_, m| *m > 0);
        self.den = den;
    }

    pub fn numer(&self) -> &VLaurent {
        &self.num
    }

    /// Cyclotomic multiplicities of the denominator.
    pub fn denom_factors(&self) -> &BTreeMap<u32, u32> {
        &self.den
    }

    /// The denominator expanded as a polynomial in `v`.
    pub fn denom(&self) -> VLaurent {
        self.den.iter().fold(VLaurent::one(), |acc, (d, m)| {
            &acc * &cyclotomic(*d).pow(*m)
        })
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_empty() && self.num.is_one()
    }

    pub fn is_laurent(&self) -> bool {
        self.den.is_empty()
    }

    pub fn to_laurent(&self) -> Result<VLaurent> {
        if self.is_laurent() {
            Ok(self.num.clone())
        } else {
            Err(Error::repr(format!("{self} is not a Laurent polynomial")))
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn shift(&self, e: i64) -> Self {
        Self {
            num: self.num.shift(e),
            den: self.den.clone(),
        }
    }

    /// Multiplies by a cyclotomic product without expanding the factors that
    /// cancel against the denominator.
    pub fn mul_cyclo(&self, c: &Cyclo) -> Self {
        if self.is_zero() || c.is_zero() {
            return Self::zero();
        }
        let mut num = self.num.scale(c.coeff()).shift(c.v_exp());
        let mut den = self.den.clone();
        for (d, m) in c.factors() {
            if *m > 0 {
                let mut up = *m as u32;
                if let Some(slot) = den.get_mut(d) {
                    let cancel = up.min(*slot);
                    *slot -= cancel;
                    up -= cancel;
                }
                if up > 0 {
                    num = &num * &cyclotomic(*d).pow(up);
                }
            } else {
                *den.entry(*d).or_insert(0) += (-m) as u32;
            }
        }
        den.retain(|_, m| *m > 0);
        Self::from_parts_reduced(num, den)
    }

    /// Multiplicative inverse; only defined when the numerator is itself a
    /// cyclotomic product.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::domain("division by zero"));
        }
        let c = Cyclo::factor(&self.num).ok_or_else(|| {
            Error::repr(format!(
                "cannot invert {}: numerator is not a cyclotomic product",
                self.num
            ))
        })?;
        let mut den_part = Cyclo::one();
        for (d, m) in &self.den {
            den_part = &den_part * &Cyclo::phi(*d, *m as i32);
        }
        Ok((&den_part / &c).to_vrational())
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, k: u32) -> Self {
        Self::from_parts_reduced(
            self.num.pow(k),
            self.den.iter().map(|(d, m)| (*d, m * k)).collect(),
        )
    }

    /// JSON: a Laurent polynomial serializes with the v-Laurent schema;
    /// otherwise numerator and denominator are both given in that schema.
    pub fn to_json(&self) -> Value {
        if self.is_laurent() {
            self.num.to_json()
        } else {
            json!({ "numerator": self.num.to_json(), "denominator": self.denom().to_json() })
        }
    }
}

impl From<VLaurent> for VRational {
    fn from(num: VLaurent) -> Self {
        Self {
            num,
            den: BTreeMap::new(),
        }
    }
}

impl From<Cyclo> for VRational {
    fn from(c: Cyclo) -> Self {
        c.to_vrational()
    }
}

impl From<i64> for VRational {
    fn from(c: i64) -> Self {
        VLaurent::from(c).into()
    }
}

impl fmt::Display for VRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_laurent() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.denom())
        }
    }
}

impl fmt::Debug for VRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VRational({self})")
    }
}

impl<'a> Add<&'a VRational> for &'a VRational {
    type Output = VRational;
    fn add(self, rhs: &'a VRational) -> VRational {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return VRational::from_parts_reduced(&self.num + &rhs.num, self.den.clone());
        }
        let mut lcm = self.den.clone();
        for (d, m) in &rhs.den {
            let slot = lcm.entry(*d).or_insert(0);
            *slot = (*slot).max(*m);
        }
        let lift = |x: &VRational| {
            lcm.iter().fold(x.num.clone(), |acc, (d, m)| {
                let have = x.den.get(d).copied().unwrap_or(0);
                if *m > have {
                    &acc * &cyclotomic(*d).pow(m - have)
                } else {
                    acc
                }
            })
        };
        let num = &lift(self) + &lift(rhs);
        VRational::from_parts_reduced(num, lcm)
    }
}

impl Add for VRational {
    type Output = VRational;
    fn add(self, rhs: VRational) -> VRational {
        &self + &rhs
    }
}

impl AddAssign<&VRational> for VRational {
    fn add_assign(&mut self, rhs: &VRational) {
        if self.den == rhs.den {
            self.num += &rhs.num;
            self.reduce();
        } else {
            *self = &*self + rhs;
        }
    }
}

impl Neg for &VRational {
    type Output = VRational;
    fn neg(self) -> VRational {
        VRational {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for VRational {
    type Output = VRational;
    fn neg(self) -> VRational {
        -&self
    }
}

impl<'a> Sub<&'a VRational> for &'a VRational {
    type Output = VRational;
    fn sub(self, rhs: &'a VRational) -> VRational {
        self + &(-rhs)
    }
}

impl Sub for VRational {
    type Output = VRational;
    fn sub(self, rhs: VRational) -> VRational {
        &self - &rhs
    }
}

impl<'a> Mul<&'a VRational> for &'a VRational {
    type Output = VRational;
    fn mul(self, rhs: &'a VRational) -> VRational {
        if self.is_zero() || rhs.is_zero() {
            return VRational::zero();
        }
        let mut den = self.den.clone();
        for (d, m) in &rhs.den {
            *den.entry(*d).or_insert(0) += m;
        }
        VRational::from_parts_reduced(&self.num * &rhs.num, den)
    }
}

impl Mul for VRational {
    type Output = VRational;
    fn mul(self, rhs: VRational) -> VRational {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::laurent::rat;

    fn qint(n: u32) -> VRational {
        Cyclo::qint(n).into()
    }

    #[test]
    fn cancellation_is_canonical() {
        let a = qint(4).checked_div(&qint(2)).unwrap();
        // [4]/[2] = v^2 + v^-6 ... is a Laurent polynomial
        assert!(a.is_laurent());
        let b = &a * &qint(2);
        assert_eq!(b, qint(4));
    }

    #[test]
    fn sums_of_fractions() {
        let half = VRational::one().checked_div(&qint(2)).unwrap();
        let s = &half + &half;
        let two_over = VRational::from(2).checked_div(&qint(2)).unwrap();
        assert_eq!(s, two_over);
        let z = &s - &two_over;
        assert!(z.is_zero());
        assert!(z.denom_factors().is_empty());
    }

    #[test]
    fn inverse_of_non_cyclotomic_fails() {
        let p: VRational = VLaurent::from_q_coeffs(&[2, 1]).into();
        assert!(matches!(p.inv(), Err(Error::Representation(_))));
        assert!(VRational::zero().inv().is_err());
    }

    #[test]
    fn mul_cyclo_matches_expansion() {
        let x = VRational::one().checked_div(&qint(6)).unwrap();
        let c = &Cyclo::qfact(4) * &Cyclo::constant(rat(3));
        assert_eq!(x.mul_cyclo(&c), &x * &c.to_vrational());
    }
}

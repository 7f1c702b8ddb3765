use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};

/// Arbitrary-precision rational coefficient.
pub type Rational = num_rational::BigRational;

pub(crate) fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Exact Laurent polynomial in `v`, where `A = v` and `q = v^4`.
///
/// Stored sparsely as exponent → coefficient; zero coefficients are never
/// stored, so the zero polynomial is the empty map.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct VLaurent {
    terms: BTreeMap<i64, Rational>,
}

impl VLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Rational::one(), 0)
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: Rational, exp: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Self { terms }
    }

    /// `v^exp`.
    pub fn v_pow(exp: i64) -> Self {
        Self::monomial(Rational::one(), exp)
    }

    /// `q^exp = v^(4 exp)`.
    pub fn q_pow(exp: i64) -> Self {
        Self::v_pow(4 * exp)
    }

    /// Sums repeated exponents and drops zeros.
    pub fn from_terms<I: IntoIterator<Item = (i64, Rational)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (e, c) in iter {
            out.add_term(e, c);
        }
        out
    }

    /// Builds a polynomial in `q` from integer coefficients of `q^0, q^1, ...`.
    pub fn from_q_coeffs(coeffs: &[i64]) -> Self {
        Self::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(i, &c)| (4 * i as i64, rat(c))),
        )
    }

    pub fn add_term(&mut self, exp: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &Rational)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, exp: i64) -> Rational {
        self.terms.get(&exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Coefficient of the lowest-degree term.
    pub fn low_coeff(&self) -> Option<&Rational> {
        self.terms.values().next()
    }

    /// Coefficient of the highest-degree term.
    pub fn lead_coeff(&self) -> Option<&Rational> {
        self.terms.values().next_back()
    }

    /// Multiplies by `v^exp`.
    pub fn shift(&self, exp: i64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e + exp, c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Substitutes `v → v^-1`.
    pub fn mirror(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// True when every exponent has the same residue mod 4, i.e. the
    /// polynomial is `v^r` times a Laurent polynomial in `q`.
    pub fn is_q_homogeneous(&self) -> bool {
        match self.min_exp() {
            None => true,
            Some(m) => self.terms.keys().all(|e| (e - m).rem_euclid(4) == 0),
        }
    }

    /// Laurent long division. Both operands are shifted so their lowest
    /// term sits at `v^0`; since the divisor then has a nonzero constant
    /// term, Laurent divisibility coincides with polynomial divisibility.
    /// Returns `(quotient, remainder)` with `self = quotient * divisor +
    /// remainder`.
    pub fn div_rem(&self, divisor: &VLaurent) -> Result<(VLaurent, VLaurent)> {
        let dmin = divisor
            .min_exp()
            .ok_or_else(|| Error::domain("division by the zero polynomial"))?;
        let Some(smin) = self.min_exp() else {
            return Ok((Self::zero(), Self::zero()));
        };
        let d = divisor.shift(-dmin);
        let dmax = d.max_exp().unwrap_or(0);
        let dlead = d.lead_coeff().cloned().unwrap_or_else(Rational::one);
        let mut rem = self.shift(-smin);
        let mut quot = Self::zero();
        while let Some(rmax) = rem.max_exp() {
            if rmax < dmax {
                break;
            }
            let c = rem.lead_coeff().cloned().unwrap_or_default() / &dlead;
            let k = rmax - dmax;
            for (e, x) in d.terms() {
                rem.add_term(e + k, -(x * &c));
            }
            quot.add_term(k, c);
        }
        Ok((quot.shift(smin - dmin), rem.shift(smin)))
    }

    /// Exact division; a nonzero remainder is a consistency error.
    pub fn div_exact(&self, divisor: &VLaurent) -> Result<VLaurent> {
        let (q, r) = self.div_rem(divisor)?;
        if !r.is_zero() {
            return Err(Error::consistency(format!(
                "inexact division: remainder {r} dividing {self} by {divisor}"
            )));
        }
        Ok(q)
    }

    /// True iff `divisor` divides `self` exactly.
    pub fn divisible_by(&self, divisor: &VLaurent) -> bool {
        matches!(self.div_rem(divisor), Ok((_, r)) if r.is_zero())
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(e, c)| json!([e, bigint_json(c.numer()), bigint_json(c.denom())]))
            .collect();
        json!({ "variable": "v", "terms": terms })
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let bad = |m: &str| Error::Parse {
            line: 0,
            message: format!("v-Laurent JSON: {m}"),
        };
        if value.get("variable").and_then(Value::as_str) != Some("v") {
            return Err(bad("expected \"variable\": \"v\""));
        }
        let terms = value
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing terms"))?;
        let mut out = Self::zero();
        for t in terms {
            let arr = t
                .as_array()
                .filter(|a| a.len() == 3)
                .ok_or_else(|| bad("term must be [exp, num, den]"))?;
            let e = arr[0].as_i64().ok_or_else(|| bad("exponent"))?;
            let n = bigint_from_json(&arr[1]).ok_or_else(|| bad("numerator"))?;
            let d = bigint_from_json(&arr[2]).ok_or_else(|| bad("denominator"))?;
            if d.is_zero() {
                return Err(bad("zero denominator"));
            }
            out.add_term(e, Rational::new(n, d));
        }
        Ok(out)
    }
}

pub(crate) fn bigint_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

pub(crate) fn bigint_from_json(v: &Value) -> Option<BigInt> {
    if let Some(i) = v.as_i64() {
        return Some(BigInt::from(i));
    }
    v.as_str().and_then(|s| s.parse().ok())
}

pub(crate) fn write_coeff_term(
    f: &mut fmt::Formatter<'_>,
    first: bool,
    c: &Rational,
    var: &str,
    exp: i64,
) -> fmt::Result {
    let neg = c.is_negative();
    let abs = c.abs();
    if first {
        if neg {
            write!(f, "-")?;
        }
    } else if neg {
        write!(f, " - ")?;
    } else {
        write!(f, " + ")?;
    }
    if exp == 0 {
        return write!(f, "{abs}");
    }
    if !abs.is_one() {
        write!(f, "{abs}*")?;
    }
    if exp == 1 {
        write!(f, "{var}")
    } else {
        write!(f, "{var}^{exp}")
    }
}

impl fmt::Display for VLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            write_coeff_term(f, i == 0, c, "v", *e)?;
        }
        Ok(())
    }
}

impl fmt::Debug for VLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VLaurent({self})")
    }
}

impl From<i64> for VLaurent {
    fn from(c: i64) -> Self {
        Self::constant(rat(c))
    }
}

impl From<Rational> for VLaurent {
    fn from(c: Rational) -> Self {
        Self::constant(c)
    }
}

impl<'a> Add<&'a VLaurent> for &'a VLaurent {
    type Output = VLaurent;
    fn add(self, rhs: &'a VLaurent) -> VLaurent {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for VLaurent {
    type Output = VLaurent;
    fn add(mut self, rhs: VLaurent) -> VLaurent {
        self += &rhs;
        self
    }
}

impl AddAssign<&VLaurent> for VLaurent {
    fn add_assign(&mut self, rhs: &VLaurent) {
        for (e, c) in rhs.terms() {
            self.add_term(e, c.clone());
        }
    }
}

impl SubAssign<&VLaurent> for VLaurent {
    fn sub_assign(&mut self, rhs: &VLaurent) {
        for (e, c) in rhs.terms() {
            self.add_term(e, -c.clone());
        }
    }
}

impl<'a> Sub<&'a VLaurent> for &'a VLaurent {
    type Output = VLaurent;
    fn sub(self, rhs: &'a VLaurent) -> VLaurent {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for VLaurent {
    type Output = VLaurent;
    fn sub(mut self, rhs: VLaurent) -> VLaurent {
        self -= &rhs;
        self
    }
}

impl Neg for &VLaurent {
    type Output = VLaurent;
    fn neg(self) -> VLaurent {
        VLaurent {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl Neg for VLaurent {
    type Output = VLaurent;
    fn neg(self) -> VLaurent {
        -&self
    }
}

impl<'a> Mul<&'a VLaurent> for &'a VLaurent {
    type Output = VLaurent;
    fn mul(self, rhs: &'a VLaurent) -> VLaurent {
        if self.is_zero() || rhs.is_zero() {
            return VLaurent::zero();
        }
        if rhs.terms.len() == 1 {
            let (e, c) = rhs.terms().next().unwrap();
            return self.scale(c).shift(e);
        }
        if self.terms.len() == 1 {
            let (e, c) = self.terms().next().unwrap();
            return rhs.scale(c).shift(e);
        }
        let mut out = VLaurent::zero();
        for (a, x) in self.terms() {
            for (b, y) in rhs.terms() {
                out.add_term(a + b, x * y);
            }
        }
        out
    }
}

impl Mul for VLaurent {
    type Output = VLaurent;
    fn mul(self, rhs: VLaurent) -> VLaurent {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(e: i64) -> VLaurent {
        VLaurent::v_pow(e)
    }

    #[test]
    fn zero_is_empty() {
        let x = &v(2) - &v(2);
        assert!(x.is_zero());
        assert_eq!(x.len(), 0);
        assert_eq!(x, VLaurent::zero());
    }

    #[test]
    fn product_and_division_round_trip() {
        let a = &v(2) + &v(-2);
        let b = &(&v(4) + &VLaurent::one()) + &v(-4);
        let p = &a * &b;
        assert_eq!(p.div_exact(&a).unwrap(), b);
        assert_eq!(p.div_exact(&b).unwrap(), a);
    }

    #[test]
    fn inexact_division_is_an_error() {
        let a = &v(4) + &VLaurent::one();
        let b = &v(4) - &VLaurent::one();
        assert!(matches!(a.div_exact(&b), Err(Error::Consistency(_))));
        assert!(VLaurent::one().div_exact(&VLaurent::zero()).is_err());
    }

    #[test]
    fn display() {
        let p = VLaurent::from_terms([
            (2, rat(1)),
            (-2, rat(-3)),
            (0, Rational::new(1.into(), 2.into())),
        ]);
        assert_eq!(p.to_string(), "-3*v^-2 + 1/2 + v^2");
    }

    #[test]
    fn json_round_trip() {
        let p = VLaurent::from_terms([(5, rat(7)), (-3, Rational::new((-2).into(), 9.into()))]);
        assert_eq!(VLaurent::from_json(&p.to_json()).unwrap(), p);
    }

    #[test]
    fn pow_matches_repeated_product() {
        let a = &v(1) - &v(-3);
        let mut acc = VLaurent::one();
        for k in 0..6 {
            assert_eq!(a.pow(k), acc);
            acc = &acc * &a;
        }
    }
}

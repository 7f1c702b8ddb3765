use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::cyclo::cyclotomic;
use super::laurent::{bigint_from_json, bigint_json, rat, write_coeff_term, Rational, VLaurent};
use super::rational::VRational;
use crate::error::{Error, Result};

/// Truncated power series `v^frac · Σ_j coeffs[j] q^(shift + j)`.
///
/// `order` is the number of retained coefficients; every coefficient of
/// `q^e` with `e < shift + order` is known exactly. A nonzero series always
/// has a nonzero first coefficient. The zero series keeps no coefficients
/// and records its precision in `shift`.
///
/// `frac` (0..=3) is a leftover quarter-power `v^frac` from a Laurent
/// polynomial whose lowest exponent is not a multiple of 4. Sums and
/// comparisons refuse series whose `frac` differ.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QSeries {
    shift: i64,
    frac: u8,
    coeffs: Vec<Rational>,
}

impl QSeries {
    /// Builds a series and strips leading zero coefficients.
    pub fn new(shift: i64, coeffs: Vec<Rational>) -> Self {
        Self::with_frac(shift, 0, coeffs)
    }

    pub fn with_frac(shift: i64, frac: u8, coeffs: Vec<Rational>) -> Self {
        assert!(frac < 4, "quarter offset must lie in 0..4");
        let lead = coeffs
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(coeffs.len());
        let coeffs = if lead == 0 {
            coeffs
        } else {
            coeffs[lead..].to_vec()
        };
        Self {
            shift: shift + lead as i64,
            frac,
            coeffs,
        }
    }

    /// Integer coefficients of `q^0, q^1, ...`.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(0, coeffs.iter().map(|c| rat(*c)).collect())
    }

    /// `1` known to `order` coefficients.
    pub fn one(order: usize) -> Self {
        let mut c = vec![Rational::zero(); order];
        if order > 0 {
            c[0] = Rational::one();
        }
        Self::new(0, c)
    }

    /// Zero known through `q^(order-1)`.
    pub fn zero(order: usize) -> Self {
        Self::new(0, vec![Rational::zero(); order])
    }

    /// Truncation of a polynomial in `q` (given by integer coefficients)
    /// to `order` coefficients starting at `q^0`.
    pub fn from_poly(coeffs: &[i64], order: usize) -> Self {
        let mut c: Vec<Rational> = coeffs.iter().take(order).map(|x| rat(*x)).collect();
        c.resize(order, Rational::zero());
        Self::new(0, c)
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn frac(&self) -> u8 {
        self.frac
    }

    /// Number of retained coefficients.
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// Exponent of the first unknown coefficient.
    pub fn precision(&self) -> i64 {
        self.shift + self.coeffs.len() as i64
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.first()
    }

    /// Coefficient of `q^exp`; asking beyond the known range is a
    /// precision error.
    pub fn coeff(&self, exp: i64) -> Result<Rational> {
        if exp >= self.precision() {
            return Err(Error::Precision {
                needed: (exp - self.shift + 1).max(0) as usize,
                available: self.coeffs.len(),
            });
        }
        if exp < self.shift {
            return Ok(Rational::zero());
        }
        Ok(self.coeffs[(exp - self.shift) as usize].clone())
    }

    /// Keeps at most `order` coefficients.
    pub fn truncate(&self, order: usize) -> Self {
        let mut out = self.clone();
        out.coeffs.truncate(order);
        out
    }

    /// Keeps coefficients of exponents below `prec`.
    pub fn truncate_abs(&self, prec: i64) -> Self {
        let keep = (prec - self.shift).clamp(0, self.coeffs.len() as i64) as usize;
        if self.is_zero() {
            let mut out = self.clone();
            out.shift = out.shift.min(prec);
            return out;
        }
        if keep == 0 {
            return Self {
                shift: prec,
                frac: self.frac,
                coeffs: Vec::new(),
            };
        }
        self.truncate(keep)
    }

    /// Multiplies by `q^k`.
    pub fn mul_q_pow(&self, k: i64) -> Self {
        Self {
            shift: self.shift + k,
            frac: self.frac,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self {
                shift: self.precision(),
                frac: self.frac,
                coeffs: Vec::new(),
            };
        }
        Self {
            shift: self.shift,
            frac: self.frac,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    fn same_frac(&self, rhs: &Self) -> Result<()> {
        if self.frac != rhs.frac {
            return Err(Error::repr(format!(
                "series differ by a fractional power v^{}",
                (rhs.frac as i8 - self.frac as i8).rem_euclid(4)
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.same_frac(rhs)?;
        let prec = self.precision().min(rhs.precision());
        let lo = self.shift.min(rhs.shift).min(prec);
        let mut c = vec![Rational::zero(); (prec - lo) as usize];
        for s in [self, rhs] {
            for (j, x) in s.coeffs.iter().enumerate() {
                let e = s.shift + j as i64;
                if e >= prec {
                    break;
                }
                c[(e - lo) as usize] += x;
            }
        }
        let mut out = Self::with_frac(lo, self.frac, c);
        if out.is_zero() {
            out.shift = prec;
        }
        Ok(out)
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.try_add(&-rhs)
    }

    /// Cauchy product truncated to the smaller order; shifts add.
    pub fn mul(&self, rhs: &Self) -> Self {
        let frac = self.frac + rhs.frac;
        let shift = self.shift + rhs.shift + (frac / 4) as i64;
        let frac = frac % 4;
        if self.is_zero() || rhs.is_zero() {
            // O(q^s) times q^t(...) is O(q^(s+t))
            return Self {
                shift,
                frac,
                coeffs: Vec::new(),
            };
        }
        let n = self.order().min(rhs.order());
        let mut c = vec![Rational::zero(); n];
        for (i, x) in self.coeffs.iter().take(n).enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in rhs.coeffs.iter().take(n - i).enumerate() {
                if !y.is_zero() {
                    c[i + j] += x * y;
                }
            }
        }
        Self::with_frac(shift, frac, c)
    }

    /// Long division; the result is exact to the smaller order.
    pub fn div(&self, rhs: &Self) -> Result<Self> {
        let Some(b0) = rhs.leading() else {
            return Err(Error::domain("series division by zero"));
        };
        let (frac, borrow) = if self.frac >= rhs.frac {
            (self.frac - rhs.frac, 0)
        } else {
            (self.frac + 4 - rhs.frac, 1)
        };
        let shift = self.shift - rhs.shift - borrow;
        if self.is_zero() {
            return Ok(Self {
                shift,
                frac,
                coeffs: Vec::new(),
            });
        }
        let n = self.order().min(rhs.order());
        let inv0 = b0.recip();
        let mut c: Vec<Rational> = Vec::with_capacity(n);
        for j in 0..n {
            let mut acc = self.coeffs[j].clone();
            for i in 1..=j.min(rhs.order() - 1) {
                let b = &rhs.coeffs[i];
                if !b.is_zero() && !c[j - i].is_zero() {
                    acc -= b * &c[j - i];
                }
            }
            c.push(acc * &inv0);
        }
        Ok(Self::with_frac(shift, frac, c))
    }

    pub fn pow(&self, k: u32) -> Self {
        let order = self.order();
        let mut acc = Self::one(order.max(1)).truncate(order.max(1));
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Expands `p` about `q = 0` to `order` coefficients.
    ///
    /// The lowest `v`-exponent `e0` becomes the shift `e0 div 4` plus a
    /// quarter offset `e0 mod 4`. All numerator exponents must be
    /// congruent mod 4. Denominator factors `Φ_d(q)` have constant term
    /// `±1` and are inverted as power series.
    pub fn from_vrational(p: &VRational, order: usize) -> Result<Self> {
        let num = p.numer();
        let Some(e0) = num.min_exp() else {
            return Err(Error::domain(
                "cannot expand the zero polynomial as a q-series",
            ));
        };
        if !num.is_q_homogeneous() {
            return Err(Error::repr(format!(
                "{num} has relative v-exponents not divisible by 4"
            )));
        }
        let mut c = vec![Rational::zero(); order];
        for (e, x) in num.terms() {
            let j = ((e - e0) / 4) as usize;
            if j < order {
                c[j] = x.clone();
            }
        }
        for (d, m) in p.denom_factors() {
            let phi = cyclotomic(*d);
            let dense: Vec<Rational> = phi.terms().map(|(e, x)| (e / 4, x.clone())).fold(
                vec![Rational::zero(); (phi.max_exp().unwrap_or(0) / 4 + 1) as usize],
                |mut acc, (e, x)| {
                    acc[e as usize] = x;
                    acc
                },
            );
            for _ in 0..*m {
                divide_in_place(&mut c, &dense);
            }
        }
        Ok(Self::with_frac(e0.div_euclid(4), e0.rem_euclid(4) as u8, c))
    }

    pub fn from_laurent(p: &VLaurent, order: usize) -> Result<Self> {
        Self::from_vrational(&p.clone().into(), order)
    }

    pub fn to_json(&self) -> Value {
        let coeffs: Vec<Value> = self
            .coeffs
            .iter()
            .map(|c| json!([bigint_json(c.numer()), bigint_json(c.denom())]))
            .collect();
        let mut obj = json!({
            "variable": "q",
            "shift": self.shift,
            "order": self.coeffs.len(),
            "coefficients": coeffs,
        });
        if self.frac != 0 {
            obj["v_offset"] = json!(self.frac);
        }
        obj
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let bad = |m: &str| Error::Parse {
            line: 0,
            message: format!("q-series JSON: {m}"),
        };
        if value.get("variable").and_then(Value::as_str) != Some("q") {
            return Err(bad("expected \"variable\": \"q\""));
        }
        let shift = value
            .get("shift")
            .and_then(Value::as_i64)
            .ok_or_else(|| bad("shift"))?;
        let frac = value.get("v_offset").and_then(Value::as_u64).unwrap_or(0);
        if frac >= 4 {
            return Err(bad("v_offset must be in 0..4"));
        }
        let arr = value
            .get("coefficients")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("coefficients"))?;
        let mut coeffs = Vec::with_capacity(arr.len());
        for c in arr {
            let pair = c
                .as_array()
                .filter(|a| a.len() == 2)
                .ok_or_else(|| bad("coefficient must be [num, den]"))?;
            let n = bigint_from_json(&pair[0]).ok_or_else(|| bad("numerator"))?;
            let d = bigint_from_json(&pair[1]).ok_or_else(|| bad("denominator"))?;
            if d.is_zero() {
                return Err(bad("zero denominator"));
            }
            coeffs.push(Rational::new(n, d));
        }
        if let Some(order) = value.get("order").and_then(Value::as_u64) {
            if order as usize != coeffs.len() {
                return Err(bad("order does not match the coefficient count"));
            }
        }
        Ok(Self::with_frac(shift, frac as u8, coeffs))
    }
}

/// In-place power-series division of `c` by the polynomial `d` (with
/// nonzero constant term), truncated to `c.len()` coefficients.
fn divide_in_place(c: &mut [Rational], d: &[Rational]) {
    let inv0 = d[0].recip();
    for j in 0..c.len() {
        let mut acc = c[j].clone();
        for i in 1..d.len().min(j + 1) {
            if !d[i].is_zero() {
                acc -= &d[i] * &c[j - i];
            }
        }
        c[j] = acc * &inv0;
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.frac != 0 {
            write!(f, "v^{} * (", self.frac)?;
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            write_coeff_term(f, first, c, "q", self.shift + j as i64)?;
            first = false;
        }
        let o = self.precision();
        let big_o = if o == 0 {
            "O(1)".to_string()
        } else if o == 1 {
            "O(q)".into()
        } else {
            format!("O(q^{o})")
        };
        if first {
            write!(f, "{big_o}")?;
        } else {
            write!(f, " + {big_o}")?;
        }
        if self.frac != 0 {
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QSeries({self})")
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        QSeries {
            shift: self.shift,
            frac: self.frac,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

/// # Panics
///
/// Panics when the operands carry different quarter offsets; use
/// [`QSeries::try_add`] to get an error instead.
impl<'a> Add<&'a QSeries> for &'a QSeries {
    type Output = QSeries;
    fn add(self, rhs: &'a QSeries) -> QSeries {
        self.try_add(rhs)
            .expect("adding series with different v-offsets")
    }
}

/// # Panics
///
/// As for addition.
impl<'a> Sub<&'a QSeries> for &'a QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &'a QSeries) -> QSeries {
        self.try_sub(rhs)
            .expect("subtracting series with different v-offsets")
    }
}

impl<'a> Mul<&'a QSeries> for &'a QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &'a QSeries) -> QSeries {
        QSeries::mul(self, rhs)
    }
}

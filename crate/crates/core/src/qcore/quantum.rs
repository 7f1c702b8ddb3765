//! Quantum integers, Pochhammer symbols and q-binomials as exact values.

use num_traits::Zero;

use super::laurent::{rat, Rational, VLaurent};
use super::series::QSeries;
use crate::error::{Error, Result};

/// Sign of the base in a Pochhammer symbol `(±q^c; q)_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_i64(s: i64) -> Result<Self> {
        match s {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            _ => Err(Error::domain(format!("sign must be +1 or -1, got {s}"))),
        }
    }

    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// `[n] = v^{2(n-1)} + v^{2(n-3)} + ... + v^{-2(n-1)}`.
pub fn quantum_int(n: u32) -> VLaurent {
    let top = 2 * (n as i64 - 1);
    VLaurent::from_terms((0..n as i64).map(|j| (top - 4 * j, rat(1))))
}

/// `Δ_n = (-1)^n [n+1]`, the value of the closed `n`-colored projector.
pub fn delta_n(n: u32) -> VLaurent {
    let p = quantum_int(n + 1);
    if n % 2 == 1 {
        -p
    } else {
        p
    }
}

/// `[n]! = [1][2]...[n]`.
pub fn quantum_fact(n: u32) -> VLaurent {
    (1..=n).fold(VLaurent::one(), |acc, k| &acc * &quantum_int(k))
}

/// `(sign · q^c; q)_n = ∏_{j<n} (1 - sign · q^{c+j})`.
pub fn poch_finite(sign: Sign, c: i64, n: u32) -> VLaurent {
    (0..n as i64).fold(VLaurent::one(), |acc, j| {
        let factor = VLaurent::from_terms([(0, rat(1)), (4 * (c + j), rat(-sign.value()))]);
        &acc * &factor
    })
}

/// `(q^c; q)_∞` to `order` coefficients, using the factors `j = 0..=order`.
pub fn poch_inf(c: i64, order: usize) -> Result<QSeries> {
    poch_inf_step(Sign::Plus, c, 1, order)
}

/// `(sign · q^c; q^step)_∞` to `order` coefficients. Factors whose exponent
/// reaches `order` are congruent to 1 and are skipped.
pub fn poch_inf_step(sign: Sign, c: i64, step: i64, order: usize) -> Result<QSeries> {
    if c <= 0 || step <= 0 {
        return Err(Error::domain(format!(
            "(q^{c}; q^{step})_inf diverges: exponents must be positive"
        )));
    }
    let mut coeffs = vec![Rational::zero(); order];
    if order == 0 {
        return Ok(QSeries::new(0, coeffs));
    }
    coeffs[0] = rat(1);
    let s = rat(sign.value());
    let mut e = c;
    while (e as usize) < order {
        let e_u = e as usize;
        for j in (e_u..order).rev() {
            let prev = coeffs[j - e_u].clone();
            if !prev.is_zero() {
                coeffs[j] -= &s * prev;
            }
        }
        e += step;
    }
    Ok(QSeries::new(0, coeffs))
}

/// Gaussian binomial `(q;q)_n / ((q;q)_i (q;q)_{n-i})` as a polynomial in `q`.
pub fn qbinom(n: u32, i: i64) -> Result<VLaurent> {
    if i < 0 || i > n as i64 {
        return Err(Error::domain(format!(
            "q-binomial index {i} outside 0..={n}"
        )));
    }
    let i = i as u32;
    let den = &poch_finite(Sign::Plus, 1, i) * &poch_finite(Sign::Plus, 1, n - i);
    poch_finite(Sign::Plus, 1, n).div_exact(&den)
}

/// Expands a Laurent polynomial in `v` as a `q`-series of the given order.
pub fn to_q_series(p: &VLaurent, order: usize) -> Result<QSeries> {
    QSeries::from_laurent(p, order)
}

pub fn series_mul(a: &QSeries, b: &QSeries) -> QSeries {
    a.mul(b)
}

pub fn series_div(a: &QSeries, b: &QSeries) -> Result<QSeries> {
    a.div(b)
}

//! Theta and false theta functions, the Andrews–Gordon multi-sums and
//! their false theta counterparts, `Λ(q)` and the tail series of `8_5`.
//!
//! Every sum is cut off by a lower bound on the degree of its terms, so a
//! series of order `N` is exact in `q^0..q^(N-1)`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use num_traits::Zero;

use crate::qcore::{
    poch_finite, poch_inf, poch_inf_step, qbinom, rat, QSeries, Rational, Sign, VLaurent,
};

/// `±q^e` with `e` a positive integer or half-integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MonomialArg {
    pub sign: Sign,
    half_exp: u32,
}

impl MonomialArg {
    /// `sign · q^(num/den)` with `den` 1 or 2.
    pub fn new(sign: Sign, num: u32, den: u32) -> Result<Self> {
        let half_exp = match den {
            1 => 2 * num,
            2 => num,
            _ => {
                return Err(Error::domain(format!(
                    "exponent {num}/{den} is not a half-integer"
                )))
            }
        };
        if half_exp == 0 {
            return Err(Error::domain("exponent must be positive"));
        }
        Ok(Self { sign, half_exp })
    }

    pub fn q_pow(sign: Sign, e: u32) -> Result<Self> {
        Self::new(sign, e, 1)
    }

    /// The exponent doubled.
    pub fn half_exp(&self) -> u32 {
        self.half_exp
    }
}

impl fmt::Display for MonomialArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign == Sign::Minus {
            write!(f, "-")?;
        }
        match (self.half_exp % 2, self.half_exp / 2) {
            (0, 1) => write!(f, "q"),
            (0, e) => write!(f, "q^{e}"),
            (_, _) => write!(f, "q^{}/2", self.half_exp),
        }
    }
}

/// Accepts `q`, `-q`, `q^3`, `-q^5/2`.
impl FromStr for MonomialArg {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::domain(format!("cannot read {s:?} as ±q^e"));
        let (sign, rest) = match s.trim().strip_prefix('-') {
            Some(r) => (Sign::Minus, r),
            None => (Sign::Plus, s.trim().trim_start_matches('+')),
        };
        let rest = rest.strip_prefix('q').ok_or_else(bad)?;
        if rest.is_empty() {
            return Self::new(sign, 1, 1);
        }
        let e = rest.strip_prefix('^').ok_or_else(bad)?;
        let (num, den) = match e.split_once('/') {
            Some((n, d)) => (n.parse().map_err(|_| bad())?, d.parse().map_err(|_| bad())?),
            None => (e.parse().map_err(|_| bad())?, 1),
        };
        Self::new(sign, num, den)
    }
}

impl Sign {
    fn pow(self, e: u64) -> i64 {
        if self == Sign::Minus && e % 2 == 1 {
            -1
        } else {
            1
        }
    }
}

/// `Σ_{i≥0} a^{i(i+1)/2} b^{i(i-1)/2} ± Σ_{i≥1} a^{i(i-1)/2} b^{i(i+1)/2}`
/// accumulated in half-integer exponents.
fn two_variable(a: MonomialArg, b: MonomialArg, second: i64, order: usize) -> Result<QSeries> {
    let limit = 2 * order as u64;
    let (ha, hb) = (a.half_exp as u64, b.half_exp as u64);
    let mut half = vec![0i64; limit as usize];
    let mut i = 0u64;
    loop {
        let (up, down) = (i * (i + 1) / 2, i * i.saturating_sub(1) / 2);
        let e1 = ha * up + hb * down;
        let e2 = ha * down + hb * up;
        if e1 >= limit && (i == 0 || e2 >= limit) {
            break;
        }
        if e1 < limit {
            half[e1 as usize] += a.sign.pow(up) * b.sign.pow(down);
        }
        if i >= 1 && e2 < limit {
            half[e2 as usize] += second * a.sign.pow(down) * b.sign.pow(up);
        }
        i += 1;
    }
    if let Some(e) = half.iter().skip(1).step_by(2).position(|&c| c != 0) {
        return Err(Error::repr(format!(
            "term q^{}/2 is not an integral power of q",
            2 * e + 1
        )));
    }
    let coeffs: Vec<i64> = half.iter().step_by(2).copied().collect();
    Ok(QSeries::from_ints(&coeffs))
}

/// Ramanujan's `f(a, b)` to the given order.
pub fn theta_general(a: MonomialArg, b: MonomialArg, order: usize) -> Result<QSeries> {
    two_variable(a, b, 1, order)
}

/// The false theta function `Ψ(a, b)` to the given order.
pub fn psi_general(a: MonomialArg, b: MonomialArg, order: usize) -> Result<QSeries> {
    two_variable(a, b, -1, order)
}

/// `f(-q^{2k}, -q) = Σ_{i≥0} (-1)^i q^{k(i²+i) + i(i-1)/2} + Σ_{i≥1} (-1)^i q^{k(i²-i) + i(i+1)/2}`.
pub fn theta_f(k: u32, order: usize) -> Result<QSeries> {
    if k == 0 {
        return Err(Error::domain("theta_f needs k >= 1"));
    }
    let k = k as usize;
    let mut c = vec![0i64; order];
    for i in 0.. {
        let e1 = k * (i * i + i) + i * i.saturating_sub(1) / 2;
        let e2 = k * (i * i - i) + i * (i + 1) / 2;
        if e1 >= order && e2 >= order {
            break;
        }
        let s = if i % 2 == 0 { 1 } else { -1 };
        if e1 < order {
            c[e1] += s;
        }
        if i >= 1 && e2 < order {
            c[e2] += s;
        }
    }
    Ok(QSeries::from_ints(&c))
}

/// `Ψ(q^{2k-1}, q) = Σ_{i≥0} q^{ki² + (k-1)i} - Σ_{i≥1} q^{k(i²-i) + i}`.
pub fn false_theta(k: u32, order: usize) -> Result<QSeries> {
    if k == 0 {
        return Err(Error::domain("false_theta needs k >= 1"));
    }
    let k = k as usize;
    let mut c = vec![0i64; order];
    for i in 0.. {
        let e1 = k * i * i + (k - 1) * i;
        let e2 = k * (i * i - i) + i;
        if e1 >= order && e2 >= order {
            break;
        }
        if e1 < order {
            c[e1] += 1;
        }
        if i >= 1 && e2 < order {
            c[e2] -= 1;
        }
    }
    Ok(QSeries::from_ints(&c))
}

fn q_poch_series(n: u32, order: usize) -> QSeries {
    QSeries::from_laurent(&poch_finite(Sign::Plus, 1, n), order)
        .expect("(q;q)_n is a polynomial in q")
}

/// `±q^exp / ∏ (q;q)_{d}` to absolute precision `order`.
fn quotient_term(exp: usize, negative: bool, dens: &[u32], order: usize) -> Result<QSeries> {
    let mut den = QSeries::one(order);
    for &d in dens {
        den = den.mul(&q_poch_series(d, order));
    }
    let mut c = vec![Rational::zero(); order - exp];
    c[0] = rat(if negative { -1 } else { 1 });
    QSeries::new(0, c).mul_q_pow(exp as i64).div(&den)
}

/// Sums `q^{Σ i_j(i_j+1)} / ∏ (q;q)_{l_j}` over `l_1, ..., l_r ≥ 0` with
/// `i_j = l_j + ... + l_r`; `squared_last` squares the `(q;q)_{l_r}` factor.
/// Indices are chosen from `l_r` down to `l_1`, so the exponent only grows
/// and a branch stops once it reaches the order.
fn andrews_gordon_sum(r: usize, squared_last: bool, order: usize) -> Result<QSeries> {
    let mut total = QSeries::zero(order);
    let mut ls: Vec<u32> = Vec::with_capacity(r);
    fn walk(
        r: usize,
        squared_last: bool,
        order: usize,
        suffix: usize,
        exp: usize,
        ls: &mut Vec<u32>,
        total: &mut QSeries,
    ) -> Result<()> {
        if ls.len() == r {
            let mut dens = ls.clone();
            if squared_last {
                if let Some(&first) = ls.first() {
                    dens.push(first);
                }
            }
            *total = total.try_add(&quotient_term(exp, false, &dens, order)?)?;
            return Ok(());
        }
        let mut l = 0usize;
        loop {
            let i = suffix + l;
            let e = exp + i * (i + 1);
            if e >= order {
                break;
            }
            ls.push(l as u32);
            walk(r, squared_last, order, i, e, ls, total)?;
            ls.pop();
            l += 1;
        }
        Ok(())
    }
    if order == 0 {
        return Ok(total);
    }
    walk(r, squared_last, order, 0, 0, &mut ls, &mut total)?;
    Ok(total)
}

fn check_integral(s: QSeries, what: &str) -> Result<QSeries> {
    if s.is_integral() {
        Ok(s)
    } else {
        Err(Error::consistency(format!(
            "{what} produced a non-integral coefficient"
        )))
    }
}

/// `(q;q)_∞ Σ_{l_1..l_{k-1}} q^{Σ i_j(i_j+1)} / ∏ (q;q)_{l_j}`.
pub fn ag_rhs(k: u32, order: usize) -> Result<QSeries> {
    if k == 0 {
        return Err(Error::domain("ag_rhs needs k >= 1"));
    }
    let sum = andrews_gordon_sum(k as usize - 1, false, order)?;
    check_integral(sum.mul(&poch_inf(1, order)?), "ag_rhs")
}

/// `(q;q)_∞ Σ_{l_1..l_{k-1}} q^{Σ i_j(i_j+1)} / ((q;q)_{l_{k-1}}^2 ∏_{j<k-1} (q;q)_{l_j})`.
pub fn false_ag_rhs(k: u32, order: usize) -> Result<QSeries> {
    if k < 2 {
        return Err(Error::domain("false_ag_rhs needs k >= 2"));
    }
    let sum = andrews_gordon_sum(k as usize - 1, true, order)?;
    check_integral(sum.mul(&poch_inf(1, order)?), "false_ag_rhs")
}

/// `Λ(q) = (q;q)_∞^2 Σ_{i≥0} (-1)^i q^{(i+3i²)/2} / (q;q)_i^3`.
pub fn lambda_series(order: usize) -> Result<QSeries> {
    let mut sum = QSeries::zero(order);
    for i in 0u32.. {
        let e = ((i + 3 * i * i) / 2) as usize;
        if e >= order {
            break;
        }
        sum = sum.try_add(&quotient_term(e, i % 2 == 1, &[i, i, i], order)?)?;
    }
    let p = poch_inf(1, order)?;
    check_integral(sum.mul(&p).mul(&p), "lambda_series")
}

/// The `k`-th summand of the `8_5` tail before the infinite products:
/// `q^{k+k²} / (q;q)_k · Σ_{i=0}^{k} q^{-2i(k-i)} [k, i]_q^2`.
fn tail_85_term(k: u32, order: usize) -> Result<QSeries> {
    let mut inner = VLaurent::zero();
    for i in 0..=k {
        let b = qbinom(k, i as i64)?;
        inner = &inner + &(&b * &b).shift(-8 * (i as i64) * (k - i) as i64);
    }
    let lifted = inner.shift(4 * (k + k * k) as i64);
    let low = lifted
        .min_exp()
        .expect("the inner sum has a positive constant")
        / 4;
    if low >= order as i64 {
        return Ok(QSeries::zero(order));
    }
    let s = QSeries::from_laurent(&lifted, order - low as usize)?;
    s.div(&q_poch_series(k, order))
}

/// The lowest power of `q` in the `k`-th summand: `k + k² - 2⌊k²/4⌋`.
pub fn tail_85_min_degree(k: u32) -> u64 {
    let k = k as u64;
    k + k * k - 2 * (k * k / 4)
}

/// The `8_5` tail with the outer sum cut at `k_max`.
pub fn tail_85_partial(order: usize, k_max: u32) -> Result<QSeries> {
    let mut sum = QSeries::zero(order);
    for k in 0..=k_max {
        if tail_85_min_degree(k) >= order as u64 {
            continue;
        }
        sum = sum.try_add(&tail_85_term(k, order)?)?;
    }
    let prefactor = poch_inf(2, order)?.mul(&poch_inf(1, order)?);
    check_integral(sum.mul(&prefactor), "tail_85")
}

/// `(q²;q)_∞ (q;q)_∞ Σ_k q^{k+k²}/(q;q)_k Σ_{i=0}^{k} q^{-2i(k-i)} [k, i]_q^2`.
pub fn tail_85(order: usize) -> Result<QSeries> {
    let mut k_max = 0;
    while tail_85_min_degree(k_max + 1) < order as u64 {
        k_max += 1;
    }
    tail_85_partial(order, k_max)
}

/// Jacobi's product for `f(-q^a, -q^b)`:
/// `(q^a; q^{a+b})_∞ (q^b; q^{a+b})_∞ (q^{a+b}; q^{a+b})_∞`.
pub fn jacobi_product(a: u32, b: u32, order: usize) -> Result<QSeries> {
    let (a, b) = (a as i64, b as i64);
    let s = a + b;
    Ok(poch_inf_step(Sign::Plus, a, s, order)?
        .mul(&poch_inf_step(Sign::Plus, b, s, order)?)
        .mul(&poch_inf_step(Sign::Plus, s, s, order)?))
}

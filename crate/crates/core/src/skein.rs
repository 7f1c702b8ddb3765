//! Closed-form skein evaluations: bubble-expansion coefficients, theta and
//! tetrahedron networks colored `2n`, torus-knot colored Jones
//! polynomials and the tails of bubble chains.

use crate::error::{Error, Result};
use crate::qcore::{poch_inf, Cyclo, QSeries, Rational, VLaurent, VRational};

/// Three colors meeting at a vertex, with the internal strand counts
/// `x` (between `a` and `b`), `y` (between `a` and `c`) and `z` (between
/// `b` and `c`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AdmissibleTriple {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub x: u32,
    pub y: u32,
    pub z: u32,
}

/// The triple with its internal colors, or `None` when the sum is odd or a
/// triangle inequality fails.
pub fn admissible(a: u32, b: u32, c: u32) -> Option<AdmissibleTriple> {
    if (a + b + c) % 2 != 0 || a + b < c || a + c < b || b + c < a {
        return None;
    }
    Some(AdmissibleTriple {
        a,
        b,
        c,
        x: (a + b - c) / 2,
        y: (a + c - b) / 2,
        z: (b + c - a) / 2,
    })
}

fn qint_product<I: IntoIterator<Item = u32>>(args: I) -> Cyclo {
    args.into_iter()
        .fold(Cyclo::one(), |acc, k| &acc * &Cyclo::qint(k))
}

/// The coefficient of the `i`-th term in the expansion of the bubble
/// element, as a cyclotomic product.
pub fn bubble_coeff_cyclo(m: u32, n: u32, k: u32, l: u32, i: u32) -> Result<Cyclo> {
    if l == 0 || k < l {
        return Err(Error::domain(format!(
            "bubble coefficient needs k >= l >= 1, got k = {k}, l = {l}"
        )));
    }
    if i > m.min(n).min(l) {
        return Err(Error::domain(format!(
            "term {i} exceeds min(m, n, l) = {}",
            m.min(n).min(l)
        )));
    }
    let sign = Cyclo::sign((i + l) % 2 == 1);
    // q^{i(i-l)/2} = v^{2i(i-l)}
    let power = Cyclo::v_pow(2 * i as i64 * (i as i64 - l as i64));
    let num = &qint_product((0..l - i).map(|j| k - j))
        * &qint_product((0..i).flat_map(|s| [n - s, m - s]));
    let den = qint_product((0..l).flat_map(|t| [n + k - t, m + k - t]));
    let tail = qint_product((0..l - i).map(|j| m + n + k - i - j + 1));
    Ok(&(&(&(&sign * &power) * &num) * &Cyclo::qbinom(l, i as i64)) * &tail / den)
}

/// The bubble-expansion coefficient `⌈m n; k l⌉_i`.
pub fn bubble_coeff(m: u32, n: u32, k: u32, l: u32, i: u32) -> Result<VRational> {
    Ok(bubble_coeff_cyclo(m, n, k, l, i)?.into())
}

/// `([n]!)^2 / [2n]!`, the coefficient of the nested turn-back diagram in
/// `f^(2n)`.
pub fn morrison_coeff(n: u32) -> VRational {
    (Cyclo::qfact(n).pow(2) / Cyclo::qfact(2 * n)).into()
}

/// `Θ(2n, 2n, 2n) = ⌈n n; n n⌉_0 Δ_{2n}`.
pub fn theta_2n(n: u32) -> VRational {
    if n == 0 {
        return VRational::one();
    }
    let c = bubble_coeff_cyclo(n, n, n, n, 0).expect("parameters are in range");
    (&c * &Cyclo::delta(2 * n)).into()
}

/// The tetrahedron with all six edges colored `2n`:
/// `([n]!)^12 / ([2n]!)^6 · Σ_{i=3n}^{4n} (-1)^i [i+1]! / (([4n-i]!)^3 ([i-3n]!)^4)`.
pub fn tet_2n(n: u32) -> VRational {
    let mut sum = VRational::zero();
    for i in 3 * n..=4 * n {
        let term = Cyclo::sign(i % 2 == 1) * Cyclo::qfact(i + 1)
            / (Cyclo::qfact(4 * n - i).pow(3) * Cyclo::qfact(i - 3 * n).pow(4));
        sum = &sum + &term.into();
    }
    sum.mul_cyclo(&(Cyclo::qfact(n).pow(12) / Cyclo::qfact(2 * n).pow(6)))
}

/// `P(n, i) = ⌈n n; n n⌉_i Δ_{2n} / Δ_{n+i}`.
pub fn p_coeff(n: u32, i: u32) -> Result<VRational> {
    if n == 0 || i > n {
        return Err(Error::domain(format!(
            "P(n, i) needs 0 <= i <= n, n >= 1; got ({n}, {i})"
        )));
    }
    let c = bubble_coeff_cyclo(n, n, n, n, i)?;
    Ok((&c * &Cyclo::delta(2 * n) / Cyclo::delta(n + i)).into())
}

/// The closed form of `⌈n i; n n⌉_j` in Pochhammer symbols:
///
/// `(-1)^{j+n} q^{j^2 + j/2 - n/2} (q;q)_i^2 (q;q)_n^4 (q;q)_{2n+i-j+1}
///  / ((q;q)_{i-j} (q;q)_j^2 (q;q)_{2n} (q;q)_{n+i} (q;q)_{n+i+1} (q;q)_{n-j}^2)`.
pub fn nn_i_coeff(n: u32, i: u32, j: u32) -> Result<VRational> {
    if j > i || j > n {
        return Err(Error::domain(format!(
            "need j <= min(i, n); got n = {n}, i = {i}, j = {j}"
        )));
    }
    let p = Cyclo::qpoch;
    let sign = Cyclo::sign((j + n) % 2 == 1);
    // q^{j^2 + j/2 - n/2} = v^{4j^2 + 2j - 2n}
    let power = Cyclo::v_pow(4 * (j as i64).pow(2) + 2 * j as i64 - 2 * n as i64);
    let num = p(i).pow(2) * p(n).pow(4) * p(2 * n + i - j + 1);
    let den = p(i - j) * p(j).pow(2) * p(2 * n) * p(n + i) * p(n + i + 1) * p(n - j).pow(2);
    Ok((sign * power * num / den).into())
}

/// The colored Jones polynomial of the `(2, f)` torus knot or link divided
/// by `Δ_n`, up to the framing factor:
/// `(1/Δ_n) Σ_{i=0}^n (-1)^{f(n-i)} q^{f(2i + 2i^2 - 2n - n^2)/4} Δ_{2i}`.
pub fn colored_jones_torus(f: u32, n: u32) -> Result<VLaurent> {
    if f == 0 {
        return Err(Error::domain("the torus knot parameter f must be positive"));
    }
    let (f, n) = (f as i64, n as i64);
    let mut sum = VLaurent::zero();
    for i in 0..=n {
        let sign = if (f * (n - i)) % 2 == 0 { 1 } else { -1 };
        let exp = f * (2 * i + 2 * i * i - 2 * n - n * n);
        let term = crate::qcore::delta_n(2 * i as u32).shift(exp);
        sum = if sign > 0 { &sum + &term } else { &sum - &term };
    }
    sum.div_exact(&crate::qcore::delta_n(n as u32))
}

/// Parity of a bubble chain: `Even` for `2k` bubbles, `Odd` for `2k + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

/// A chain of bubbles with every strand colored `color` and outer colors
/// `(n, n, 2n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChainSpec {
    pub bubbles: u32,
    pub color: u32,
}

impl ChainSpec {
    pub fn new(bubbles: u32, color: u32) -> Result<Self> {
        if bubbles == 0 {
            return Err(Error::domain("a chain needs at least one bubble"));
        }
        Ok(Self { bubbles, color })
    }

    /// `(Even, k)` for `2k` bubbles, `(Odd, k)` for `2k + 1`.
    pub fn parity(&self) -> (Parity, u32) {
        if self.bubbles % 2 == 0 {
            (Parity::Even, self.bubbles / 2)
        } else {
            (Parity::Odd, self.bubbles / 2)
        }
    }

    pub fn tail(&self, order: usize) -> Result<QSeries> {
        let (parity, k) = self.parity();
        chain_tail(parity, k, order)
    }
}

/// Tail of a bubble chain, summed over non-increasing indices
/// `i_1 ≥ i_2 ≥ ... ≥ i_r ≥ 0`:
///
/// * even (`2k` bubbles, `r = k - 1`):
///   `(q;q)_∞ Σ q^{Σ i_j(i_j+1)} / ((q;q)_{i_r} ∏_{j<r} (q;q)_{i_j - i_{j+1}})`
/// * odd (`2k + 1` bubbles, `r = k`): the same with `(q;q)_{i_r}^2`.
///
/// A branch is cut as soon as its partial exponent reaches `order`, since
/// every later index only adds non-negative exponents.
pub fn chain_tail(parity: Parity, k: u32, order: usize) -> Result<QSeries> {
    if k == 0 {
        return Err(Error::domain("chain_tail needs k >= 1"));
    }
    let depth = match parity {
        Parity::Even => k - 1,
        Parity::Odd => k,
    } as usize;
    let inv = InversePochhammer::new(order);
    let mut sum = QSeries::zero(order);
    let mut idx = Vec::with_capacity(depth);
    chain_terms(depth, parity, order, 0, &mut idx, &inv, &mut sum);
    Ok(sum.mul(&poch_inf(1, order)?))
}

fn chain_terms(
    depth: usize,
    parity: Parity,
    order: usize,
    exp: usize,
    idx: &mut Vec<usize>,
    inv: &InversePochhammer,
    sum: &mut QSeries,
) {
    if idx.len() == depth {
        let mut term = QSeries::one(order)
            .mul_q_pow(exp as i64)
            .truncate_abs(order as i64);
        if term.is_zero() {
            return;
        }
        for w in idx.windows(2) {
            term = term.mul(inv.get(w[0] - w[1]));
        }
        if let Some(&last) = idx.last() {
            term = term.mul(inv.get(last));
            if parity == Parity::Odd {
                term = term.mul(inv.get(last));
            }
        }
        *sum = &*sum + &term;
        return;
    }
    let upper = idx.last().copied().unwrap_or(usize::MAX);
    let mut i = 0;
    while i <= upper && exp + i * (i + 1) < order {
        idx.push(i);
        chain_terms(depth, parity, order, exp + i * (i + 1), idx, inv, sum);
        idx.pop();
        i += 1;
    }
}

/// `1 / (q;q)_a` to a fixed order, built incrementally.
pub(crate) struct InversePochhammer {
    table: Vec<QSeries>,
}

impl InversePochhammer {
    pub(crate) fn new(order: usize) -> Self {
        let mut table = vec![QSeries::one(order)];
        for a in 1..=order {
            // 1/(q;q)_a = 1/(q;q)_{a-1} · 1/(1 - q^a)
            let mut c = table[a - 1].coeffs().to_vec();
            c.resize(order, Rational::default());
            for j in a..order {
                let prev = c[j - a].clone();
                c[j] += prev;
            }
            table.push(QSeries::new(0, c));
        }
        Self { table }
    }

    /// `1/(q;q)_a`; beyond the order every factor is 1 mod `q^order`.
    pub(crate) fn get(&self, a: usize) -> &QSeries {
        &self.table[a.min(self.table.len() - 1)]
    }
}

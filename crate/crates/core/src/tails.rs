//! Tails of sequences of q-series.
//!
//! Two series agree to order `n`, written `a ≐ₙ b`, when their normalized
//! forms share the coefficients of `q^0..q^(n-1)`. A sequence `P_1, P_2, ...`
//! has a tail when `P_n ≐ₙ P_{n+1}` for every `n`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::qcore::Sign;
use crate::qcore::{poch_inf, QSeries, VLaurent, VRational};
use crate::qidentities::{lambda_series, psi_general, theta_general, MonomialArg};
use crate::skein::{chain_tail, Parity};

/// Divides by the lowest term `c·q^s`, so the result starts with `1·q^0`.
/// The order (number of stored coefficients) is kept.
pub fn normalize(p: &QSeries) -> Result<QSeries> {
    let Some(lead) = p.leading() else {
        return Err(Error::domain("cannot normalize the zero series"));
    };
    let inv = lead.recip();
    Ok(QSeries::new(
        0,
        p.coeffs().iter().map(|c| c * &inv).collect(),
    ))
}

/// Expands a Laurent polynomial in `v` to `order` coefficients past its
/// lowest term and normalizes.
pub fn normalize_laurent(p: &VLaurent, order: usize) -> Result<QSeries> {
    normalize(&QSeries::from_laurent(p, order)?)
}

pub fn normalize_rational(p: &VRational, order: usize) -> Result<QSeries> {
    normalize(&QSeries::from_vrational(p, order)?)
}

/// `a ≐ₙ b`. Asking for more coefficients than either series holds is a
/// precision error, never `false`.
pub fn agree_to_order(a: &QSeries, b: &QSeries, n: usize) -> Result<bool> {
    let (a, b) = (normalize(a)?, normalize(b)?);
    let available = a.order().min(b.order());
    if n > available {
        return Err(Error::Precision {
            needed: n,
            available,
        });
    }
    Ok(a.coeffs()[..n] == b.coeffs()[..n])
}

type Eval = dyn Fn(u32, usize) -> Result<QSeries> + Send + Sync;

/// A named sequence `n ↦ P_n`. The rule receives `n` and the number of
/// coefficients wanted past the lowest term.
#[derive(Clone)]
pub struct SeriesGenerator {
    pub name: String,
    pub params: BTreeMap<String, i64>,
    eval: Arc<Eval>,
}

impl SeriesGenerator {
    pub fn new<F>(name: impl Into<String>, params: BTreeMap<String, i64>, eval: F) -> Self
    where
        F: Fn(u32, usize) -> Result<QSeries> + Send + Sync + 'static,
    {
        Self {
            name: name.into(),
            params,
            eval: Arc::new(eval),
        }
    }

    /// A generator whose terms are exact Laurent polynomials in `v`.
    pub fn from_laurent<F>(name: impl Into<String>, params: BTreeMap<String, i64>, eval: F) -> Self
    where
        F: Fn(u32) -> Result<VLaurent> + Send + Sync + 'static,
    {
        Self::new(name, params, move |n, order| {
            QSeries::from_laurent(&eval(n)?, order)
        })
    }

    /// A generator whose terms are rational functions of `v`.
    pub fn from_rational<F>(name: impl Into<String>, params: BTreeMap<String, i64>, eval: F) -> Self
    where
        F: Fn(u32) -> Result<VRational> + Send + Sync + 'static,
    {
        Self::new(name, params, move |n, order| {
            QSeries::from_vrational(&eval(n)?, order)
        })
    }

    pub fn eval(&self, n: u32, order: usize) -> Result<QSeries> {
        (self.eval)(n, order)
    }
}

impl fmt::Debug for SeriesGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SeriesGenerator")
            .field("name", &self.name)
            .field("params", &self.params)
            .finish()
    }
}

/// How consecutive terms are compared.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct StabilizationOptions {
    /// Require `P_n ≐_{n+1} P_{n+1}` instead of `P_n ≐ₙ P_{n+1}`.
    pub strict: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct StabilizationReport {
    pub generator: String,
    pub params: BTreeMap<String, i64>,
    pub n_max: u32,
    /// Entry `n - 1` compares `P_n` with `P_{n+1}`.
    pub verdicts: Vec<bool>,
    /// The first `n_max` coefficients of the normalized `P_{n_max}`.
    pub tail: QSeries,
}

impl StabilizationReport {
    pub fn stable(&self) -> bool {
        self.verdicts.iter().all(|&v| v)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "generator": self.generator,
            "params": self.params,
            "n_max": self.n_max,
            "verdicts": self.verdicts,
            "tail": self.tail.to_json(),
        })
    }
}

pub fn stabilization_report(g: &SeriesGenerator, n_max: u32) -> Result<StabilizationReport> {
    stabilization_report_with(g, n_max, StabilizationOptions::default())
}

/// Evaluates `P_1..P_{n_max+1}` in parallel and compares neighbours.
pub fn stabilization_report_with(
    g: &SeriesGenerator,
    n_max: u32,
    options: StabilizationOptions,
) -> Result<StabilizationReport> {
    if n_max == 0 {
        return Err(Error::domain("a stabilization report needs n_max >= 1"));
    }
    let order = n_max as usize + 2;
    let terms: Vec<QSeries> = (1..=n_max + 1)
        .into_par_iter()
        .map(|n| g.eval(n, order).and_then(|p| normalize(&p)))
        .collect::<Result<_>>()?;
    let verdicts = terms
        .windows(2)
        .zip(1..)
        .map(|(w, n)| agree_to_order(&w[0], &w[1], n + options.strict as usize))
        .collect::<Result<_>>()?;
    Ok(StabilizationReport {
        generator: g.name.clone(),
        params: g.params.clone(),
        n_max,
        verdicts,
        tail: terms[n_max as usize - 1].truncate(n_max as usize),
    })
}

/// Tail of the product glued along one vertex: `T_1 T_2 / (q²;q)_∞`.
pub fn tail_product_1(t1: &QSeries, t2: &QSeries, order: usize) -> Result<QSeries> {
    Ok(t1
        .mul(t2)
        .div(&poch_inf(2, order)?)?
        .truncate_abs(order as i64))
}

/// Tail of the product glued along two or three vertices: `(1 - q) T_1 T_2`.
pub fn tail_product_23(t1: &QSeries, t2: &QSeries, order: usize) -> Result<QSeries> {
    let one_minus_q = QSeries::from_poly(&[1, -1], order);
    Ok(t1.mul(t2).mul(&one_minus_q).truncate_abs(order as i64))
}

/// Sign of the second argument of the theta factor in the `G_{k,l}` tail.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum GklSign {
    /// `Ψ(q^{2k+1}, q) f(-q^{2l+2}, q)`.
    #[default]
    Verbatim,
    /// `Ψ(q^{2k+1}, q) f(-q^{2l+2}, -q)`.
    Negated,
}

/// Spin-network families with a known tail.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFamily {
    /// `Θ(2n, 2n, 2n)`: `(q²;q)_∞`.
    Theta,
    /// The tetrahedron colored `2n`: `Λ(q) (q²;q)_∞`.
    Tet2n,
    /// The wheel-like graph `G_m`: `Λ(q)^m (q;q)_∞`.
    Gm { m: u32 },
    /// `G_{k,l}`: `Ψ(q^{2k+1}, q) f(-q^{2l+2}, ±q)`.
    Gkl { k: u32, l: u32, sign: GklSign },
    /// `m` bubbles closed off inadequately: `(q²;q)_∞ (q;q)_∞^m`.
    InadequateChain { m: u32 },
    /// A chain of bubbles in the closure of `f^(n)`.
    Chain { parity: Parity, k: u32 },
}

pub fn graph_family_tail(family: &GraphFamily, order: usize) -> Result<QSeries> {
    let euler = || poch_inf(1, order);
    match *family {
        GraphFamily::Theta => poch_inf(2, order),
        GraphFamily::Tet2n => Ok(lambda_series(order)?.mul(&poch_inf(2, order)?)),
        GraphFamily::Gm { m } => Ok(lambda_series(order)?.pow(m).mul(&euler()?)),
        GraphFamily::Gkl { k, l, sign } => {
            if k == 0 {
                return Err(Error::domain("G_{k,l} needs k >= 1"));
            }
            let psi = psi_general(
                MonomialArg::q_pow(Sign::Plus, 2 * k + 1)?,
                MonomialArg::q_pow(Sign::Plus, 1)?,
                order,
            )?;
            let b = match sign {
                GklSign::Verbatim => Sign::Plus,
                GklSign::Negated => Sign::Minus,
            };
            let f = theta_general(
                MonomialArg::q_pow(Sign::Minus, 2 * l + 2)?,
                MonomialArg::q_pow(b, 1)?,
                order,
            )?;
            Ok(psi.mul(&f))
        }
        GraphFamily::InadequateChain { m } => Ok(poch_inf(2, order)?.mul(&euler()?.pow(m))),
        GraphFamily::Chain { parity, k } => chain_tail(parity, k, order),
    }
}

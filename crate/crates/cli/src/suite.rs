//! Verification suites: JSON files listing identity, agreement,
//! stabilization and oracle cases.
//!
//! ```json
//! {
//!   "name": "example",
//!   "cases": [
//!     { "id": "ag-2", "kind": "identity", "order": 50,
//!       "lhs": { "series": "theta_f", "params": { "k": 2 } },
//!       "rhs": { "series": "ag_rhs", "params": { "k": 2 } } },
//!     { "id": "torus-5", "kind": "stabilization", "n_max": 12,
//!       "generator": { "name": "torus_jones", "params": { "f": 5 } },
//!       "expected": { "series": "theta_f", "params": { "k": 2 } } },
//!     { "id": "morrison", "kind": "agreement", "n_min": 1, "n_max": 20,
//!       "generator": { "name": "morrison" },
//!       "expected": { "generator": { "name": "poch_finite" } } },
//!     { "id": "theta-2", "kind": "oracle", "oracle": "theta", "params": { "n": 2 } }
//!   ]
//! }
//! ```
//!
//! A series reference is `{"series", "params"}`, `{"coefficients", "shift"}`
//! or `{"product": [...]}`. Cases tagged `"slow": true` run only with
//! `--slow`.

use std::collections::{BTreeMap, BTreeSet};

use serde::Deserialize;
use serde_json::{json, Value};
use spintail::qcore::delta_n;
use spintail::registry::{self, Params};
use spintail::skein::{bubble_coeff, colored_jones_torus, morrison_coeff, tet_2n, theta_2n};
use spintail::tails::{
    agree_to_order, normalize, normalize_laurent, stabilization_report_with, StabilizationOptions,
};
use spintail::tl::{
    bracket_closed, bubble_lhs, bubble_rhs, jones_wenzl, tetrahedron, theta, torus_closure,
    BubbleShape, Matching, TLElement,
};
use spintail::{Error, QSeries, VRational};

use crate::Failure;

pub const BUILTIN: &[(&str, &str)] = &[
    (
        "andrews-gordon",
        include_str!("../suites/andrews-gordon.json"),
    ),
    ("false-theta", include_str!("../suites/false-theta.json")),
    ("jacobi", include_str!("../suites/jacobi.json")),
    ("oracle-small", include_str!("../suites/oracle-small.json")),
    ("bubble-coefficients", include_str!("../suites/bubble-coefficients.json")),
    ("torus-tails", include_str!("../suites/torus-tails.json")),
    (
        "spin-network-tails",
        include_str!("../suites/spin-network-tails.json"),
    ),
    ("products", include_str!("../suites/products.json")),
];

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Suite {
    pub name: String,
    #[serde(default)]
    pub description: Option<String>,
    pub cases: Vec<Case>,
}

#[derive(Debug, Deserialize)]
pub struct Case {
    pub id: String,
    #[serde(default)]
    pub slow: bool,
    #[serde(flatten)]
    pub check: Check,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Check {
    /// `lhs = rhs` coefficient by coefficient.
    Identity {
        lhs: SeriesRef,
        rhs: SeriesRef,
        order: usize,
    },
    /// `P_n ≐ₙ expected` for each `n` in range.
    Agreement {
        generator: GeneratorRef,
        expected: Expected,
        n_min: u32,
        n_max: u32,
    },
    /// Consecutive terms agree and the tail matches `expected`.
    Stabilization {
        generator: GeneratorRef,
        n_max: u32,
        expected: SeriesRef,
        #[serde(default)]
        strict: bool,
    },
    /// A closed formula against the diagram oracle.
    Oracle {
        oracle: String,
        #[serde(default)]
        params: BTreeMap<String, Value>,
    },
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum SeriesRef {
    Named {
        series: String,
        #[serde(default)]
        params: BTreeMap<String, Value>,
    },
    Coefficients {
        coefficients: Vec<i64>,
        #[serde(default)]
        shift: i64,
    },
    Product {
        product: Vec<SeriesRef>,
    },
}

#[derive(Debug, Deserialize)]
pub struct GeneratorRef {
    pub name: String,
    #[serde(default)]
    pub params: BTreeMap<String, Value>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum Expected {
    Generator { generator: GeneratorRef },
    Series(SeriesRef),
}

pub fn load(spec: &str) -> Result<Suite, Failure> {
    let text = match spec.strip_prefix("builtin:") {
        Some(name) => BUILTIN
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, t)| t.to_string())
            .ok_or_else(|| Failure::usage(format!("no builtin suite {name}")))?,
        None => {
            std::fs::read_to_string(spec).map_err(|e| Failure::usage(format!("{spec}: {e}")))?
        }
    };
    parse(&text).map_err(|e| Failure::usage(format!("{spec}: {e}")))
}

pub fn parse(text: &str) -> Result<Suite, String> {
    let suite: Suite = serde_json::from_str(text).map_err(|e| e.to_string())?;
    let mut seen = BTreeSet::new();
    for c in &suite.cases {
        if !seen.insert(c.id.as_str()) {
            return Err(format!("duplicate case id {}", c.id));
        }
    }
    Ok(suite)
}

fn params(map: &BTreeMap<String, Value>) -> Params {
    let mut p = Params::new();
    for (k, v) in map {
        match v {
            Value::String(s) => p.insert(k, s),
            other => p.insert(k, other),
        }
    }
    p
}

impl SeriesRef {
    fn eval(&self, order: usize) -> Result<QSeries, Error> {
        match self {
            SeriesRef::Named { series, params: p } => registry::series(series, &params(p), order),
            SeriesRef::Coefficients {
                coefficients,
                shift,
            } => {
                let keep = (order as i64 - shift).clamp(0, coefficients.len() as i64) as usize;
                Ok(QSeries::from_ints(&coefficients[..keep]).mul_q_pow(*shift))
            }
            SeriesRef::Product { product } => product
                .iter()
                .try_fold(QSeries::one(order), |acc, s| Ok(acc.mul(&s.eval(order)?))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Error,
    Skipped,
}

impl Status {
    fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error => "error",
            Status::Skipped => "skipped",
        }
    }
}

pub struct CaseResult {
    pub id: String,
    pub status: Status,
    pub detail: String,
    pub report: Option<Value>,
}

pub struct Report {
    pub suite: String,
    pub cases: Vec<CaseResult>,
}

impl Report {
    fn count(&self, s: Status) -> usize {
        self.cases.iter().filter(|c| c.status == s).count()
    }

    /// 0 when every case that ran passed, 1 on a mismatch, 2 if a case
    /// could not be evaluated.
    pub fn exit_code(&self) -> u8 {
        if self.count(Status::Error) > 0 {
            2
        } else if self.count(Status::Fail) > 0 {
            1
        } else {
            0
        }
    }

    pub fn to_json(&self) -> Value {
        let cases: Vec<Value> = self
            .cases
            .iter()
            .map(|c| {
                let mut v = json!({ "id": c.id, "status": c.status.as_str(), "detail": c.detail });
                if let Some(r) = &c.report {
                    v["report"] = r.clone();
                }
                v
            })
            .collect();
        json!({
            "suite": self.suite,
            "passed": self.count(Status::Pass),
            "failed": self.count(Status::Fail),
            "errors": self.count(Status::Error),
            "skipped": self.count(Status::Skipped),
            "cases": cases,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.cases {
            out += &format!("[{}] {}: {}\n", c.status.as_str(), c.id, c.detail);
        }
        out += &format!(
            "{}: {} passed, {} failed, {} errors, {} skipped\n",
            self.suite,
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Error),
            self.count(Status::Skipped)
        );
        out
    }
}

pub struct RunOptions {
    pub jobs: usize,
    pub slow: bool,
    pub order: Option<usize>,
}

/// Runs every case on a pool of `jobs` threads. Results keep the suite's
/// case order.
pub fn run(suite: &Suite, opts: &RunOptions) -> Result<Report, Failure> {
    use rayon::prelude::*;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs.max(1))
        .build()
        .map_err(|e| Failure::usage(e.to_string()))?;
    let cases = pool.install(|| suite.cases.par_iter().map(|c| run_case(c, opts)).collect());
    Ok(Report {
        suite: suite.name.clone(),
        cases,
    })
}

fn run_case(case: &Case, opts: &RunOptions) -> CaseResult {
    let result = |status, detail: String, report| CaseResult {
        id: case.id.clone(),
        status,
        detail,
        report,
    };
    if case.slow && !opts.slow {
        return result(Status::Skipped, "slow; pass --slow to run".into(), None);
    }
    match evaluate(&case.check, opts) {
        Ok(Outcome {
            mismatch: None,
            detail,
            report,
        }) => result(Status::Pass, detail, report),
        Ok(Outcome {
            mismatch: Some(m),
            report,
            ..
        }) => result(Status::Fail, m, report),
        Err(e) => result(Status::Error, e.to_string(), None),
    }
}

struct Outcome {
    mismatch: Option<String>,
    detail: String,
    report: Option<Value>,
}

impl Outcome {
    fn pass(detail: impl Into<String>) -> Self {
        Self {
            mismatch: None,
            detail: detail.into(),
            report: None,
        }
    }

    fn fail(mismatch: impl Into<String>) -> Self {
        Self {
            mismatch: Some(mismatch.into()),
            detail: String::new(),
            report: None,
        }
    }
}

/// Names the first exponent where two series differ.
fn first_mismatch(a: &QSeries, b: &QSeries, upto: usize) -> Option<String> {
    for j in 0..upto as i64 {
        let e = a.shift().min(b.shift()) + j;
        let (x, y) = (a.coeff(e), b.coeff(e));
        if x != y {
            let show = |r: Result<spintail::Rational, Error>| {
                r.map(|c| c.to_string()).unwrap_or_else(|_| "?".into())
            };
            return Some(format!(
                "first mismatch at q^{e}: got {}, expected {}",
                show(x),
                show(y)
            ));
        }
    }
    None
}

fn evaluate(check: &Check, opts: &RunOptions) -> Result<Outcome, Error> {
    match check {
        Check::Identity { lhs, rhs, order } => {
            let order = opts.order.unwrap_or(*order);
            let (a, b) = (lhs.eval(order)?, rhs.eval(order)?);
            Ok(match first_mismatch(&a, &b, order) {
                None => Outcome::pass(format!("equal to order {order}")),
                Some(m) => Outcome::fail(m),
            })
        }
        Check::Agreement {
            generator,
            expected,
            n_min,
            n_max,
        } => {
            let g = registry::generator(&generator.name, &params(&generator.params))?;
            let target = match expected {
                Expected::Generator { generator } => Some(registry::generator(
                    &generator.name,
                    &params(&generator.params),
                )?),
                Expected::Series(_) => None,
            };
            for n in *n_min..=*n_max {
                let order = n as usize + 1;
                let p = g.eval(n, order)?;
                let e = match (&target, expected) {
                    (Some(t), _) => t.eval(n, order)?,
                    (None, Expected::Series(s)) => s.eval(order)?,
                    (None, Expected::Generator { .. }) => {
                        unreachable!("generator targets are built above")
                    }
                };
                if !agree_to_order(&p, &e, n as usize)? {
                    let m = first_mismatch(&normalize(&p)?, &normalize(&e)?, n as usize)
                        .unwrap_or_default();
                    return Ok(Outcome::fail(format!("n = {n}: {m}")));
                }
            }
            Ok(Outcome::pass(format!("n = {n_min}..{n_max}")))
        }
        Check::Stabilization {
            generator,
            n_max,
            expected,
            strict,
        } => {
            let g = registry::generator(&generator.name, &params(&generator.params))?;
            let r =
                stabilization_report_with(&g, *n_max, StabilizationOptions { strict: *strict })?;
            let target = expected.eval(*n_max as usize)?;
            let report = Some(r.to_json());
            let mismatch = if let Some(n) = r.verdicts.iter().position(|v| !v) {
                Some(format!("P_{} and P_{} disagree", n + 1, n + 2))
            } else {
                first_mismatch(&r.tail, &target, *n_max as usize).map(|m| format!("tail: {m}"))
            };
            Ok(Outcome {
                detail: format!("stable to n = {n_max}"),
                mismatch,
                report,
            })
        }
        Check::Oracle { oracle, params: p } => oracle_case(oracle, &params(p)),
    }
}

fn oracle_case(kind: &str, p: &Params) -> Result<Outcome, Error> {
    let u = |k: &str| p.uint(k).map(|v| v as usize);
    let eq = |got: VRational, want: VRational, what: String| {
        Ok(if got == want {
            Outcome::pass(what)
        } else {
            Outcome::fail(format!("{what}: oracle {got}, formula {want}"))
        })
    };
    match kind {
        "bubble" => {
            let (m, n, k, l) = (u("m")?, u("n")?, u("k")?, u("l")?);
            let s = BubbleShape::new(m, n, k, l)?;
            for j in s.closures() {
                let lhs = bracket_closed(&bubble_lhs(&s, j)?)?;
                let mut rhs = VRational::zero();
                for i in 0..=m.min(n).min(l) {
                    let c = bubble_coeff(m as u32, n as u32, k as u32, l as u32, i as u32)?;
                    rhs += &(&c * &bracket_closed(&bubble_rhs(&s, i, j)?)?);
                }
                if lhs != rhs {
                    return Ok(Outcome::fail(format!(
                        "closure {j}: oracle {lhs}, expansion {rhs}"
                    )));
                }
            }
            Ok(Outcome::pass(format!("{} closures", s.closures().count())))
        }
        "theta" => {
            let n = u("n")?;
            eq(
                bracket_closed(&theta(2 * n, 2 * n, 2 * n)?)?,
                theta_2n(n as u32),
                format!("theta colored {}", 2 * n),
            )
        }
        "tet" => {
            let n = u("n")?;
            eq(
                bracket_closed(&tetrahedron([2 * n; 6])?)?,
                tet_2n(n as u32),
                format!("tetrahedron colored {}", 2 * n),
            )
        }
        "morrison" => {
            let n = u("n")?;
            let c = jones_wenzl(2 * n)?.coeff_of(&Matching::nested_turnback(2 * n, n)?)?;
            eq(
                c,
                morrison_coeff(n as u32),
                format!("hook coefficient in f_{}", 2 * n),
            )
        }
        "jones_wenzl" => {
            let n = u("n")?;
            let f = jones_wenzl(n)?;
            if f.mul(&f)? != *f {
                return Ok(Outcome::fail(format!("f_{n} is not idempotent")));
            }
            for i in 1..n {
                if !f.mul(&TLElement::e(n, i)?)?.is_zero()
                    || !TLElement::e(n, i)?.mul(&f)?.is_zero()
                {
                    return Ok(Outcome::fail(format!("f_{n} does not annihilate e_{i}")));
                }
            }
            eq(f.trace(), delta_n(n as u32).into(), format!("f_{n} laws"))
        }
        "torus" => {
            let (f, n) = (u("f")?, u("n")?);
            let bracket = bracket_closed(&torus_closure(f, n, false)?)?.to_laurent()?;
            let oracle = bracket.div_exact(&delta_n(n as u32))?;
            let closed = colored_jones_torus(f as u32, n as u32)?;
            let span =
                ((closed.max_exp().unwrap_or(0) - closed.min_exp().unwrap_or(0)) / 4) as usize + 1;
            let (a, b) = (
                normalize_laurent(&oracle, span)?,
                normalize_laurent(&closed, span)?,
            );
            Ok(match first_mismatch(&a, &b, span) {
                None => Outcome::pass(format!("(2, {f}) torus knot colored {n}")),
                Some(m) => Outcome::fail(m),
            })
        }
        other => Err(Error::Unknown(format!("oracle case {other}"))),
    }
}

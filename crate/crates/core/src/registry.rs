//! Series and sequence generators addressable by name, with string
//! parameters such as `k = 3` or `a = -q^4`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::qcore::{poch_finite, poch_inf, poch_inf_step, QSeries, Sign, VRational};
use crate::qidentities as qi;
use crate::skein::{self, Parity};
use crate::tails::{graph_family_tail, normalize, GklSign, GraphFamily, SeriesGenerator};

/// Named parameters as given on a command line or in a suite file.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Params(BTreeMap<String, String>);

impl Params {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.0.insert(key.to_string(), value.to_string());
        self
    }

    pub fn insert(&mut self, key: &str, value: impl ToString) {
        self.0.insert(key.to_string(), value.to_string());
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.0.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }

    fn raw(&self, key: &str) -> Result<&str> {
        self.0
            .get(key)
            .map(String::as_str)
            .ok_or_else(|| Error::domain(format!("missing parameter {key}")))
    }

    pub fn int(&self, key: &str) -> Result<i64> {
        let raw = self.raw(key)?;
        raw.parse()
            .map_err(|_| Error::domain(format!("parameter {key} = {raw:?} is not an integer")))
    }

    pub fn uint(&self, key: &str) -> Result<u32> {
        let v = self.int(key)?;
        u32::try_from(v)
            .map_err(|_| Error::domain(format!("parameter {key} = {v} must be non-negative")))
    }

    fn uint_or(&self, key: &str, default: u32) -> Result<u32> {
        if self.0.contains_key(key) {
            self.uint(key)
        } else {
            Ok(default)
        }
    }

    pub fn monomial(&self, key: &str) -> Result<qi::MonomialArg> {
        self.raw(key)?.parse()
    }

    /// Integer-valued parameters, for reports.
    pub fn to_ints(&self) -> BTreeMap<String, i64> {
        self.0
            .iter()
            .filter_map(|(k, v)| Some((k.clone(), v.parse().ok()?)))
            .collect()
    }

    fn only(&self, allowed: &[&str]) -> Result<()> {
        match self.0.keys().find(|k| !allowed.contains(&k.as_str())) {
            Some(k) => Err(Error::domain(format!(
                "unexpected parameter {k}; expected {}",
                list(allowed)
            ))),
            None => Ok(()),
        }
    }
}

fn list(names: &[&str]) -> String {
    if names.is_empty() {
        "none".to_string()
    } else {
        names.join(", ")
    }
}

/// A registry entry: name, parameter names, one-line description.
pub struct Entry {
    pub name: &'static str,
    pub params: &'static [&'static str],
    pub about: &'static str,
}

pub const SERIES: &[Entry] = &[
    Entry {
        name: "poch_inf",
        params: &["c"],
        about: "(q^c; q)_inf",
    },
    Entry {
        name: "poch_inf_step",
        params: &["c", "step", "sign"],
        about: "(sign q^c; q^step)_inf",
    },
    Entry {
        name: "poch_finite",
        params: &["n"],
        about: "(q; q)_n",
    },
    Entry {
        name: "theta_general",
        params: &["a", "b"],
        about: "Ramanujan's f(a, b)",
    },
    Entry {
        name: "psi_general",
        params: &["a", "b"],
        about: "false theta function psi(a, b)",
    },
    Entry {
        name: "theta_f",
        params: &["k"],
        about: "f(-q^2k, -q)",
    },
    Entry {
        name: "false_theta",
        params: &["k"],
        about: "psi(q^(2k-1), q)",
    },
    Entry {
        name: "ag_rhs",
        params: &["k"],
        about: "Andrews-Gordon multi-sum for f(-q^2k, -q)",
    },
    Entry {
        name: "false_ag_rhs",
        params: &["k"],
        about: "multi-sum for psi(q^(2k-1), q)",
    },
    Entry {
        name: "lambda",
        params: &[],
        about: "Lambda(q), the tetrahedron-over-theta tail",
    },
    Entry {
        name: "tail_85",
        params: &[],
        about: "tail of the knot 8_5",
    },
    Entry {
        name: "chain_even",
        params: &["k"],
        about: "tail of a chain of 2k bubbles",
    },
    Entry {
        name: "chain_odd",
        params: &["k"],
        about: "tail of a chain of 2k+1 bubbles",
    },
    Entry {
        name: "theta_tail",
        params: &[],
        about: "tail of theta(2n, 2n, 2n)",
    },
    Entry {
        name: "tet_tail",
        params: &[],
        about: "tail of the tetrahedron colored 2n",
    },
    Entry {
        name: "g_m",
        params: &["m"],
        about: "tail of the graph G_m",
    },
    Entry {
        name: "g_kl",
        params: &["k", "l", "negated"],
        about: "tail of the graph G_{k,l}",
    },
    Entry {
        name: "inadequate_chain",
        params: &["m"],
        about: "tail of m inadequately closed bubbles",
    },
];

pub const GENERATORS: &[Entry] = &[
    Entry {
        name: "torus_jones",
        params: &["f"],
        about: "colored Jones polynomial of the (2, f) torus knot",
    },
    Entry {
        name: "theta_2n",
        params: &[],
        about: "theta(2n, 2n, 2n)",
    },
    Entry {
        name: "tet_2n",
        params: &[],
        about: "tetrahedron with every edge colored 2n",
    },
    Entry {
        name: "tet_over_theta",
        params: &[],
        about: "tetrahedron divided by theta, colored 2n",
    },
    Entry {
        name: "morrison",
        params: &[],
        about: "([n]!)^2 / [2n]!",
    },
    Entry {
        name: "bubble_zero",
        params: &[],
        about: "bubble coefficient (n, n, n, n, 0)",
    },
    Entry {
        name: "p_sum",
        params: &[],
        about: "sum over i of P(n, i)",
    },
    Entry {
        name: "p_theta_sum",
        params: &[],
        about: "sum over i of P(n, i) (n i; n n)_0",
    },
    Entry {
        name: "poch_finite",
        params: &[],
        about: "(q; q)_n",
    },
];

fn lookup(table: &[Entry], name: &str) -> Result<&'static [&'static str]> {
    table
        .iter()
        .find(|e| e.name == name)
        .map(|e| e.params)
        .ok_or_else(|| Error::Unknown(name.to_string()))
}

/// Evaluates a named series to the given order.
pub fn series(name: &str, params: &Params, order: usize) -> Result<QSeries> {
    params.only(lookup(SERIES, name)?)?;
    let k = || params.uint("k");
    match name {
        "poch_inf" => poch_inf(params.int("c")?, order),
        "poch_inf_step" => {
            let sign = if params.0.contains_key("sign") {
                Sign::from_i64(params.int("sign")?)?
            } else {
                Sign::Plus
            };
            poch_inf_step(sign, params.int("c")?, params.int("step")?, order)
        }
        "poch_finite" => {
            QSeries::from_laurent(&poch_finite(Sign::Plus, 1, params.uint("n")?), order)
        }
        "theta_general" => qi::theta_general(params.monomial("a")?, params.monomial("b")?, order),
        "psi_general" => qi::psi_general(params.monomial("a")?, params.monomial("b")?, order),
        "theta_f" => qi::theta_f(k()?, order),
        "false_theta" => qi::false_theta(k()?, order),
        "ag_rhs" => qi::ag_rhs(k()?, order),
        "false_ag_rhs" => qi::false_ag_rhs(k()?, order),
        "lambda" => qi::lambda_series(order),
        "tail_85" => qi::tail_85(order),
        "chain_even" => skein::chain_tail(Parity::Even, k()?, order),
        "chain_odd" => skein::chain_tail(Parity::Odd, k()?, order),
        "theta_tail" => graph_family_tail(&GraphFamily::Theta, order),
        "tet_tail" => graph_family_tail(&GraphFamily::Tet2n, order),
        "g_m" => graph_family_tail(
            &GraphFamily::Gm {
                m: params.uint("m")?,
            },
            order,
        ),
        "g_kl" => {
            let sign = if params.uint_or("negated", 0)? == 0 {
                GklSign::Verbatim
            } else {
                GklSign::Negated
            };
            graph_family_tail(
                &GraphFamily::Gkl {
                    k: k()?,
                    l: params.uint("l")?,
                    sign,
                },
                order,
            )
        }
        "inadequate_chain" => graph_family_tail(
            &GraphFamily::InadequateChain {
                m: params.uint("m")?,
            },
            order,
        ),
        _ => unreachable!("every registered series has a case"),
    }
}

fn sum_rational<I: IntoIterator<Item = Result<VRational>>>(terms: I) -> Result<VRational> {
    terms
        .into_iter()
        .try_fold(VRational::zero(), |acc, t| Ok(&acc + &t?))
}

/// Builds a named sequence generator.
pub fn generator(name: &str, params: &Params) -> Result<SeriesGenerator> {
    params.only(lookup(GENERATORS, name)?)?;
    let ints = params.to_ints();
    Ok(match name {
        "torus_jones" => {
            let f = params.uint("f")?;
            if f == 0 {
                return Err(Error::domain("f must be positive"));
            }
            SeriesGenerator::from_laurent(name, ints, move |n| skein::colored_jones_torus(f, n))
        }
        "theta_2n" => SeriesGenerator::from_rational(name, ints, |n| Ok(skein::theta_2n(n))),
        "tet_2n" => SeriesGenerator::from_rational(name, ints, |n| Ok(skein::tet_2n(n))),
        "tet_over_theta" => SeriesGenerator::new(name, ints, |n, order| {
            let tet = normalize(&QSeries::from_vrational(&skein::tet_2n(n), order)?)?;
            let theta = normalize(&QSeries::from_vrational(&skein::theta_2n(n), order)?)?;
            tet.div(&theta)
        }),
        "morrison" => SeriesGenerator::from_rational(name, ints, |n| Ok(skein::morrison_coeff(n))),
        "bubble_zero" => {
            SeriesGenerator::from_rational(name, ints, |n| skein::bubble_coeff(n, n, n, n, 0))
        }
        "p_sum" => SeriesGenerator::from_rational(name, ints, |n| {
            sum_rational((0..=n).map(|i| skein::p_coeff(n, i)))
        }),
        "p_theta_sum" => SeriesGenerator::from_rational(name, ints, |n| {
            sum_rational((0..=n).map(|i| Ok(&skein::p_coeff(n, i)? * &skein::nn_i_coeff(n, i, 0)?)))
        }),
        "poch_finite" => {
            SeriesGenerator::from_laurent(name, ints, |n| Ok(poch_finite(Sign::Plus, 1, n)))
        }
        _ => unreachable!("every registered generator has a case"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_series_evaluates() {
        for e in SERIES {
            let mut p = Params::new();
            for &key in e.params {
                let value = match key {
                    "a" => "-q^2",
                    "b" => "-q",
                    "step" => "2",
                    "sign" => "-1",
                    "negated" => "0",
                    "k" => "2",
                    _ => "1",
                };
                p.insert(key, value);
            }
            let s = series(e.name, &p, 8).unwrap_or_else(|err| panic!("{}: {err}", e.name));
            assert!(s.is_integral(), "{}", e.name);
        }
    }

    #[test]
    fn every_generator_evaluates() {
        for e in GENERATORS {
            let mut p = Params::new();
            for &key in e.params {
                p.insert(key, 3);
            }
            let g = generator(e.name, &p).unwrap();
            for n in 1..=3 {
                g.eval(n, 4)
                    .unwrap_or_else(|err| panic!("{} at {n}: {err}", e.name));
            }
        }
    }

    #[test]
    fn lookup_errors() {
        assert!(matches!(
            series("nosuch", &Params::new(), 5),
            Err(Error::Unknown(_))
        ));
        assert!(matches!(
            generator("nosuch", &Params::new()),
            Err(Error::Unknown(_))
        ));
        let p = Params::new().with("k", 2).with("z", 1);
        assert!(matches!(series("theta_f", &p, 5), Err(Error::Domain(_))));
        assert!(series("theta_f", &Params::new(), 5).is_err());
        assert!(series("theta_f", &Params::new().with("k", "two"), 5).is_err());
        assert!(series("theta_f", &Params::new().with("k", -1), 5).is_err());
    }

    #[test]
    fn names_are_unique() {
        for table in [SERIES, GENERATORS] {
            let mut names: Vec<_> = table.iter().map(|e| e.name).collect();
            names.sort();
            names.dedup();
            assert_eq!(names.len(), table.len());
        }
    }
}

//! Exact arithmetic in `v = A = q^(1/4)`.
//!
//! [`VLaurent`] holds Laurent polynomials, [`VRational`] quotients of them
//! by cyclotomic products, and [`QSeries`] truncated power series in `q`.
//! [`Cyclo`] is a factored representation used to assemble products and
//! quotients of quantum integers cheaply.

mod cyclo;
mod laurent;
mod quantum;
mod rational;
mod series;

pub use cyclo::{cyclotomic, Cyclo};
pub use laurent::{Rational, VLaurent};
pub use quantum::{
    delta_n, poch_finite, poch_inf, poch_inf_step, qbinom, quantum_fact, quantum_int, series_div,
    series_mul, to_q_series, Sign,
};
pub use rational::VRational;
pub use series::QSeries;

pub(crate) use laurent::rat;

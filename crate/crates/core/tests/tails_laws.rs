use std::collections::BTreeMap;

use num_bigint::BigInt;
use proptest::prelude::*;
use spintail::qcore::{delta_n, poch_finite, poch_inf, Sign};
use spintail::qidentities::{lambda_series, psi_general, theta_f, MonomialArg};
use spintail::skein::{colored_jones_torus, Parity};
use spintail::tails::{
    agree_to_order, graph_family_tail, normalize, normalize_laurent, stabilization_report,
    stabilization_report_with, tail_product_1, tail_product_23, GklSign, GraphFamily,
    SeriesGenerator, StabilizationOptions,
};
use spintail::{Error, QSeries, Rational};

fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn nonzero_series(order: usize) -> impl Strategy<Value = QSeries> {
    (
        prop::sample::select(vec![-3i64, -1, 1, 2]),
        prop::collection::vec(-4i64..5, order - 1),
    )
        .prop_map(|(c0, rest)| {
            let mut c = vec![c0];
            c.extend(rest);
            QSeries::from_ints(&c)
        })
}

fn torus(f: u32) -> SeriesGenerator {
    SeriesGenerator::from_laurent(
        "torus_jones",
        BTreeMap::from([("f".to_string(), f as i64)]),
        move |n| colored_jones_torus(f, n),
    )
}

proptest! {
    #[test]
    fn normalize_is_idempotent(p in nonzero_series(10)) {
        let once = normalize(&p).unwrap();
        prop_assert_eq!(normalize(&once).unwrap(), once.clone());
        prop_assert_eq!(once.coeff(0).unwrap(), rat(1));
        prop_assert_eq!(once.shift(), 0);
    }

    #[test]
    fn normalize_forgets_monomial_factors(
        p in nonzero_series(10),
        num in prop::sample::select(vec![-7i64, -2, -1, 1, 3, 5]),
        den in 1i64..5,
        s in -6i64..7,
    ) {
        let c = Rational::new(BigInt::from(num), BigInt::from(den));
        let moved = p.scale(&c).mul_q_pow(s);
        prop_assert_eq!(normalize(&moved).unwrap(), normalize(&p).unwrap());
    }

    #[test]
    fn agreement_is_reflexive_symmetric_monotone(a in nonzero_series(10), b in nonzero_series(10), n in 0usize..=10) {
        prop_assert!(agree_to_order(&a, &a, n).unwrap());
        let ab = agree_to_order(&a, &b, n).unwrap();
        prop_assert_eq!(ab, agree_to_order(&b, &a, n).unwrap());
        if ab {
            for m in 0..=n {
                prop_assert!(agree_to_order(&a, &b, m).unwrap());
            }
        }
    }

    #[test]
    fn agreement_past_order_is_a_precision_error(a in nonzero_series(6), extra in 1usize..5) {
        let r = agree_to_order(&a, &a, 6 + extra);
        let precision = matches!(r, Err(Error::Precision { .. }));
        prop_assert!(precision);
    }

    #[test]
    fn tail_products_have_units(t in nonzero_series(12)) {
        let n = 12;
        prop_assert_eq!(tail_product_1(&t, &poch_inf(2, n).unwrap(), n).unwrap(), t.clone());
        let geometric = QSeries::from_ints(&[1; 12]);
        prop_assert_eq!(tail_product_23(&t, &geometric, n).unwrap(), t);
    }
}

#[test]
fn normalize_examples() {
    let p = QSeries::from_ints(&[0, 0, -1, 1]);
    assert_eq!(
        normalize(&p).unwrap().truncate(2),
        QSeries::from_ints(&[1, -1])
    );
    assert!(normalize(&QSeries::zero(4)).is_err());
}

#[test]
fn trefoil_normalizes_to_euler_prefix() {
    let p = normalize_laurent(&colored_jones_torus(3, 3).unwrap(), 3).unwrap();
    assert_eq!(p.truncate(3), poch_inf(1, 3).unwrap());
}

#[test]
fn finite_euler_agrees_one_past_its_length() {
    for n in 0..=20u32 {
        let finite = QSeries::from_laurent(&poch_finite(Sign::Plus, 1, n), 30).unwrap();
        let inf = poch_inf(1, 30).unwrap();
        assert!(
            agree_to_order(&finite, &inf, n as usize + 1).unwrap(),
            "n = {n}"
        );
        assert!(
            !agree_to_order(&finite, &inf, n as usize + 2).unwrap(),
            "n = {n}"
        );
    }
}

#[test]
fn torus_five_stabilizes_to_rogers_ramanujan_theta() {
    let r = stabilization_report(&torus(5), 12).unwrap();
    assert!(r.stable(), "{:?}", r.verdicts);
    assert_eq!(r.tail, theta_f(2, 12).unwrap());
    let j = r.to_json();
    assert_eq!(j["generator"], "torus_jones");
    assert_eq!(j["verdicts"].as_array().unwrap().len(), 12);
}

#[test]
fn strict_comparison_is_one_coefficient_sharper() {
    // Terms (q;q)_n agree with their successor to n + 1 coefficients but no further.
    let g = SeriesGenerator::from_laurent("poch_finite", BTreeMap::new(), |n| {
        Ok(poch_finite(Sign::Plus, 1, n))
    });
    assert!(stabilization_report(&g, 10).unwrap().stable());
    assert!(
        stabilization_report_with(&g, 10, StabilizationOptions { strict: true })
            .unwrap()
            .stable()
    );
    let shifted = SeriesGenerator::from_laurent("poch_shifted", BTreeMap::new(), |n| {
        Ok(poch_finite(Sign::Plus, 1, n.saturating_sub(1)))
    });
    assert!(stabilization_report(&shifted, 10).unwrap().stable());
    let strict =
        stabilization_report_with(&shifted, 10, StabilizationOptions { strict: true }).unwrap();
    assert!(
        strict.verdicts.iter().skip(1).all(|v| !v),
        "{:?}",
        strict.verdicts
    );
}

#[test]
fn theta_tails_glue_to_a_theta_tail() {
    let n = 20;
    let t = poch_inf(2, n).unwrap();
    assert_eq!(tail_product_1(&t, &t, n).unwrap(), t);
}

#[test]
fn gluing_tetrahedra_gives_the_wheel_tail() {
    let n = 20;
    let tet = graph_family_tail(&GraphFamily::Tet2n, n).unwrap();
    let glued = (1..4).fold(tet.clone(), |acc, _| tail_product_1(&acc, &tet, n).unwrap());
    let closed = tail_product_23(&glued, &QSeries::one(n), n).unwrap();
    let want = lambda_series(n)
        .unwrap()
        .pow(4)
        .mul(&poch_inf(1, n).unwrap());
    assert_eq!(closed, want);
    assert_eq!(
        graph_family_tail(&GraphFamily::Gm { m: 4 }, n).unwrap(),
        want
    );
}

#[test]
fn two_vertex_product_of_euler_tails() {
    let n = 15;
    let e = poch_inf(1, n).unwrap();
    let want = e.mul(&e).mul(&QSeries::from_poly(&[1, -1], n));
    assert_eq!(tail_product_23(&e, &e, n).unwrap(), want);
}

#[test]
fn connected_sum_of_trefoils() {
    // The unnormalized bracket of K # K is <K>^2 / Δ_n, i.e. J^2 Δ_n.
    let g = SeriesGenerator::from_laurent("trefoil_sum", BTreeMap::new(), |n| {
        let j = colored_jones_torus(3, n)?;
        Ok(&(&j * &j) * &delta_n(n))
    });
    let n_max = 8;
    let r = stabilization_report(&g, n_max).unwrap();
    assert!(r.stable());
    let order = n_max as usize;
    let single = SeriesGenerator::from_laurent("trefoil", BTreeMap::new(), |n| {
        Ok(&colored_jones_torus(3, n)? * &delta_n(n))
    });
    let t = stabilization_report(&single, n_max).unwrap().tail;
    let want = normalize(&tail_product_23(&t, &t, order).unwrap()).unwrap();
    assert_eq!(r.tail, want);
}

#[test]
fn graph_family_examples() {
    let n = 25;
    let euler = poch_inf(1, n).unwrap();
    let theta = poch_inf(2, n).unwrap();
    assert_eq!(graph_family_tail(&GraphFamily::Theta, n).unwrap(), theta);
    assert_eq!(
        graph_family_tail(&GraphFamily::InadequateChain { m: 2 }, n).unwrap(),
        theta.mul(&euler).mul(&euler)
    );
    let psi = psi_general(
        MonomialArg::new(Sign::Plus, 3, 1).unwrap(),
        MonomialArg::new(Sign::Plus, 1, 1).unwrap(),
        n,
    )
    .unwrap();
    let chain = graph_family_tail(
        &GraphFamily::Chain {
            parity: Parity::Odd,
            k: 1,
        },
        n,
    )
    .unwrap();
    assert_eq!(chain, psi);
    let gkl = graph_family_tail(
        &GraphFamily::Gkl {
            k: 1,
            l: 1,
            sign: GklSign::Verbatim,
        },
        n,
    )
    .unwrap();
    assert!(gkl.is_integral());
    assert_eq!(gkl.coeff(0).unwrap(), rat(1));
}

//! Acceptance checks. Prints one line per criterion and exits non-zero if
//! any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use spintail::qcore::{delta_n, poch_finite, poch_inf, QSeries, Sign, VLaurent, VRational};
use spintail::qidentities::{
    ag_rhs, false_ag_rhs, false_theta, lambda_series, tail_85, tail_85_partial, theta_f,
    theta_general, MonomialArg,
};
use spintail::registry::{generator, Params};
use spintail::skein::{
    bubble_coeff, chain_tail, colored_jones_torus, morrison_coeff, nn_i_coeff, p_coeff, tet_2n,
    theta_2n, Parity,
};
use spintail::tails::{
    agree_to_order, graph_family_tail, normalize, normalize_laurent, stabilization_report,
    tail_product_1, tail_product_23, GraphFamily,
};
use spintail::tl::{
    bracket_closed, bubble_lhs, bubble_rhs, jones_wenzl, tetrahedron, torus_closure, BubbleShape,
    Matching, TLElement,
};

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn first_difference(a: &QSeries, b: &QSeries) -> String {
    let n = a.order().min(b.order());
    for e in 0..n as i64 {
        let (x, y) = (a.coeff(a.shift() + e), b.coeff(b.shift() + e));
        if x != y {
            return format!("first difference at q^{e}: {x:?} vs {y:?}");
        }
    }
    format!("orders {} vs {}", a.order(), b.order())
}

fn same(a: &QSeries, b: &QSeries, what: &str) -> Result<(), String> {
    check(a == b, || format!("{what}: {}", first_difference(a, b)))
}

fn andrews_gordon() -> Outcome {
    for k in 2..=5 {
        same(
            &theta_f(k, 50).map_err(|e| e.to_string())?,
            &ag_rhs(k, 50).map_err(|e| e.to_string())?,
            &format!("k = {k}"),
        )?;
    }
    Ok("k = 2..5 to order 50".into())
}

fn false_andrews_gordon() -> Outcome {
    for k in 2..=5 {
        let lhs = false_theta(k, 50).map_err(|e| e.to_string())?;
        same(
            &lhs,
            &false_ag_rhs(k, 50).map_err(|e| e.to_string())?,
            &format!("k = {k}"),
        )?;
    }
    Ok("k = 2..5 to order 50".into())
}

fn jacobi() -> Outcome {
    let a = MonomialArg::q_pow(Sign::Minus, 2).unwrap();
    let b = MonomialArg::q_pow(Sign::Minus, 1).unwrap();
    same(
        &theta_general(a, b, 40).unwrap(),
        &poch_inf(1, 40).unwrap(),
        "f(-q^2, -q)",
    )?;
    Ok("f(-q^2, -q) = (q;q)_inf to order 40".into())
}

fn morrison() -> Outcome {
    for n in 1..=3 {
        let f = jones_wenzl(2 * n).unwrap();
        let hook = Matching::nested_turnback(2 * n, n).unwrap();
        let c = f.coeff_of(&hook).unwrap();
        check(c == morrison_coeff(n as u32), || {
            format!("n = {n}: got {c}")
        })?;
    }
    Ok("n = 1, 2, 3".into())
}

fn jones_wenzl_laws() -> Outcome {
    for n in 1..=6 {
        let f = jones_wenzl(n).unwrap();
        let sq = f.mul(&f).unwrap();
        check(sq == *f, || format!("f_{n} is not idempotent"))?;
        for i in 1..n {
            let e = TLElement::e(n, i).unwrap();
            check(f.mul(&e).unwrap().is_zero(), || format!("f_{n} e_{i} != 0"))?;
            check(e.mul(&f).unwrap().is_zero(), || format!("e_{i} f_{n} != 0"))?;
        }
        let tr = f.trace();
        check(tr == delta_n(n as u32).into(), || {
            format!("tr f_{n} = {tr}")
        })?;
    }
    for total in 1..=6usize {
        for m in 1..=total {
            let n = total - m;
            let closed = jones_wenzl(total).unwrap().partial_trace(m).unwrap();
            let ratio = VRational::from(delta_n(total as u32))
                .checked_div(&delta_n(n as u32).into())
                .unwrap();
            let expect = if n == 0 {
                let mut e = TLElement::zero(0);
                e.add_term(Matching::identity(0), ratio);
                e
            } else {
                jones_wenzl(n).unwrap().scale(&ratio)
            };
            check(closed == expect, || {
                format!("closing {m} strands of f_{total}")
            })?;
        }
    }
    Ok("n <= 6; partial closures with m + n <= 6".into())
}

fn bubble_oracle() -> Outcome {
    let mut cases = 0;
    for m in 0..=2usize {
        for n in 0..=2usize {
            for k in 1..=2usize {
                for l in 1..=k {
                    let s = BubbleShape::new(m, n, k, l).unwrap();
                    for j in s.closures() {
                        let lhs = bracket_closed(&bubble_lhs(&s, j).unwrap()).unwrap();
                        let mut rhs = VRational::zero();
                        for i in 0..=m.min(n).min(l) {
                            let c = bubble_coeff(m as u32, n as u32, k as u32, l as u32, i as u32)
                                .unwrap();
                            rhs += &(&c * &bracket_closed(&bubble_rhs(&s, i, j).unwrap()).unwrap());
                        }
                        check(lhs == rhs, || {
                            format!("m={m} n={n} k={k} l={l} closure {j}")
                        })?;
                        cases += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{cases} closed networks, parameters <= 2"))
}

fn agree(a: &QSeries, b: &QSeries, n: usize, what: &str) -> Result<(), String> {
    let ok = agree_to_order(a, b, n).map_err(|e| format!("{what}: {e}"))?;
    check(ok, || {
        format!(
            "{what}: {}",
            first_difference(&normalize(a).unwrap(), &normalize(b).unwrap())
        )
    })
}

fn rational_series(p: &VRational, order: usize) -> QSeries {
    QSeries::from_vrational(p, order).unwrap()
}

fn coefficient_tails() -> Outcome {
    for n in 1..=20u32 {
        let euler = QSeries::from_laurent(&poch_finite(Sign::Plus, 1, n), n as usize + 1).unwrap();
        let order = n as usize + 1;
        agree(
            &rational_series(&morrison_coeff(n), order),
            &euler,
            n as usize,
            &format!("Morrison n = {n}"),
        )?;
        let b = bubble_coeff(n, n, n, n, 0).unwrap();
        agree(
            &rational_series(&b, order),
            &euler,
            n as usize,
            &format!("bubble n = {n}"),
        )?;
    }
    let psi = false_theta(2, 14).unwrap();
    let f = theta_f(2, 14).unwrap();
    for n in 1..=12u32 {
        let order = n as usize + 1;
        let mut p_sum = VRational::zero();
        let mut weighted = VRational::zero();
        for i in 0..=n {
            let p = p_coeff(n, i).unwrap();
            weighted += &(&p * &nn_i_coeff(n, i, 0).unwrap());
            p_sum += &p;
        }
        agree(
            &rational_series(&p_sum, order),
            &psi,
            n as usize,
            &format!("sum P(n, i), n = {n}"),
        )?;
        agree(
            &rational_series(&weighted, order),
            &f,
            n as usize,
            &format!("weighted sum, n = {n}"),
        )?;
    }
    Ok("Morrison and bubble for n <= 20; P sums for n <= 12".into())
}

fn jones_over_delta(bracket: &VLaurent, n: u32) -> VLaurent {
    bracket.div_exact(&delta_n(n)).unwrap()
}

fn torus_oracle() -> Outcome {
    for (f, n) in [(2, 1), (2, 2), (3, 1), (3, 2), (4, 1), (5, 1)] {
        let closed = colored_jones_torus(f, n).unwrap();
        let net = torus_closure(f as usize, n as usize, false).unwrap();
        let bracket = bracket_closed(&net).unwrap().to_laurent().unwrap();
        let oracle = jones_over_delta(&bracket, n);
        let span = |p: &VLaurent| ((p.max_exp().unwrap() - p.min_exp().unwrap()) / 4) as usize + 1;
        let order = span(&closed).max(span(&oracle));
        let (a, b) = (
            normalize_laurent(&closed, order).unwrap(),
            normalize_laurent(&oracle, order).unwrap(),
        );
        same(&a, &b, &format!("(f, n) = ({f}, {n})"))?;
    }
    Ok("(2,1) (2,2) (3,1) (3,2) (4,1) (5,1), whole polynomials".into())
}

fn torus_tails() -> Outcome {
    let n_max = 12;
    for k in 1..=3u32 {
        for (f, expect, chain) in [
            (
                2 * k,
                false_theta(k, 12).unwrap(),
                if k >= 2 {
                    Some(chain_tail(Parity::Odd, k - 1, 12).unwrap())
                } else {
                    None
                },
            ),
            (
                2 * k + 1,
                theta_f(k, 12).unwrap(),
                Some(chain_tail(Parity::Even, k, 12).unwrap()),
            ),
        ] {
            let g = generator("torus_jones", &Params::new().with("f", f)).unwrap();
            let r = stabilization_report(&g, n_max).map_err(|e| e.to_string())?;
            check(r.stable(), || format!("f = {f}: verdicts {:?}", r.verdicts))?;
            same(&r.tail, &expect, &format!("tail for f = {f}"))?;
            if let Some(c) = chain {
                same(&c, &expect, &format!("chain tail for f = {f}"))?;
            }
        }
    }
    Ok("f = 2..7 stable to n = 12; tails match theta, false theta and chain sums".into())
}

fn tet_over_theta() -> Outcome {
    for n in 1..=6u32 {
        let order = n as usize + 1;
        let tet = normalize(&rational_series(&tet_2n(n), order)).unwrap();
        let theta = normalize(&rational_series(&theta_2n(n), order)).unwrap();
        let ratio = tet.div(&theta).unwrap();
        agree(
            &ratio,
            &lambda_series(order).unwrap(),
            n as usize,
            &format!("n = {n}"),
        )?;
    }
    let oracle = bracket_closed(&tetrahedron([2; 6]).unwrap()).unwrap();
    check(oracle == tet_2n(1), || {
        format!("tetrahedron oracle {oracle} vs {}", tet_2n(1))
    })?;
    Ok("n <= 6; tet(1) equals the oracle".into())
}

fn theta_tail() -> Outcome {
    for n in 1..=15u32 {
        let order = n as usize + 1;
        let target = QSeries::from_laurent(&poch_finite(Sign::Plus, 2, n), order).unwrap();
        agree(
            &rational_series(&theta_2n(n), order),
            &target,
            n as usize,
            &format!("n = {n}"),
        )?;
    }
    Ok("n <= 15".into())
}

fn products() -> Outcome {
    let n = 30;
    let e = |x: spintail::Error| x.to_string();
    let lambda = lambda_series(n).map_err(e)?;
    let q2 = poch_inf(2, n).map_err(e)?;
    same(
        &tail_product_1(&lambda, &q2, n).map_err(e)?,
        &lambda,
        "(q^2;q)_inf is a unit",
    )?;
    let geometric = QSeries::from_ints(&[1; 30]);
    same(
        &tail_product_23(&lambda, &geometric, n).map_err(e)?,
        &lambda,
        "1/(1-q) is a unit",
    )?;
    let g4 = graph_family_tail(&GraphFamily::Gm { m: 4 }, n).map_err(e)?;
    let direct = lambda.pow(4).mul(&poch_inf(1, n).map_err(e)?);
    same(&g4, &direct, "G_4")?;
    // four tetrahedra glued at single vertices, then one more (1 - q)
    let tet = graph_family_tail(&GraphFamily::Tet2n, n).map_err(e)?;
    let mut glued = tet.clone();
    for _ in 0..3 {
        glued = tail_product_1(&glued, &tet, n).map_err(e)?;
    }
    let one = QSeries::one(n);
    same(
        &tail_product_23(&glued, &one, n).map_err(e)?,
        &g4,
        "G_4 through products",
    )?;
    Ok("unit laws; G_4 = Lambda^4 (q;q)_inf to order 30".into())
}

fn eight_five() -> Outcome {
    let t = tail_85(30).map_err(|e| e.to_string())?;
    check(t.is_integral(), || "non-integral coefficient".into())?;
    check(t.shift() == 0 && t.truncate(1) == QSeries::one(1), || {
        format!("starts {}", t.truncate(3))
    })?;
    for k_max in [6, 8, 10, 14] {
        same(
            &tail_85_partial(30, k_max).map_err(|e| e.to_string())?,
            &t,
            &format!("k <= {k_max}"),
        )?;
    }
    Ok(format!("{}", t.truncate(8)))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 13] = [
        ("Andrews-Gordon identity", andrews_gordon),
        ("false theta counterpart", false_andrews_gordon),
        ("Jacobi triple product", jacobi),
        ("Morrison coefficient", morrison),
        ("Jones-Wenzl laws", jones_wenzl_laws),
        ("bubble expansion against the oracle", bubble_oracle),
        ("coefficient tails", coefficient_tails),
        ("torus knots against the oracle", torus_oracle),
        ("torus knot tails", torus_tails),
        ("tetrahedron over theta", tet_over_theta),
        ("theta tail", theta_tail),
        ("tail products", products),
        ("8_5 tail", eight_five),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or(p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default())
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("[PASS] {:>2}. {name} ({detail}) [{secs:.2}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {:>2}. {name}: {detail} [{secs:.2}s]", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

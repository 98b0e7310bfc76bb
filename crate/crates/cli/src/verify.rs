//! Aggregated verification suites behind `moduli verify`. Each check is an
//! exact statement (or a pinned-accuracy float statement); any failure makes
//! the command exit with code 2.

use moduli_core::correlators::{dilaton_chain, Correlators};
use moduli_core::rational::{rat, rat_int, Rational};
use moduli_core::{combinatorics, graphs, harmonic, inequalities, sv, volumes, walk};
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn check(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Check {
    Check {
        name: name.into(),
        passed,
        detail: detail.into(),
    }
}

pub fn run_suites(
    correlators: &Correlators,
    suite: &str,
    max_dim: u32,
    digits: u32,
) -> anyhow::Result<Vec<Check>> {
    let mut checks = Vec::new();
    let all = suite == "all";
    match suite {
        "all" | "numeric" | "correlators" | "walk" | "harmonic" | "graphs" | "volumes"
        | "sv" => {}
        other => anyhow::bail!("unknown suite '{other}'"),
    }
    if all || suite == "numeric" {
        numeric_suite(&mut checks, digits);
    }
    if all || suite == "correlators" {
        correlator_suite(&mut checks, correlators, max_dim);
    }
    if all || suite == "walk" {
        walk_suite(&mut checks, correlators);
    }
    if all || suite == "harmonic" {
        harmonic_suite(&mut checks, digits);
    }
    if all || suite == "graphs" {
        graph_suite(&mut checks);
    }
    if all || suite == "volumes" {
        volume_suite(&mut checks, correlators);
    }
    if all || suite == "sv" {
        sv_suite(&mut checks, correlators);
    }
    Ok(checks)
}

fn numeric_suite(checks: &mut Vec<Check>, digits: u32) {
    let mut ok = true;
    for m in 1..=2usize {
        for a in 0..=4u64 {
            for b in 0..=4u64 {
                for c in 0..=3u64 {
                    let report =
                        inequalities::verify_composition_factorial_inequality(m, a, b, c)
                            .unwrap();
                    ok &= report.holds;
                }
            }
        }
    }
    checks.push(check(
        "numeric/composition-factorial",
        ok,
        "m <= 2, A,B <= 4, C <= 3 exhaustive",
    ));

    let mut ok = true;
    for grid in [
        vec![vec![1u64, 1], vec![1, 1]],
        vec![vec![2, 0], vec![0, 2]],
        vec![vec![3, 1, 2], vec![1, 1, 1], vec![0, 2, 2]],
        vec![vec![4, 4]],
    ] {
        ok &= inequalities::verify_multinomial_product_inequality(&grid)
            .unwrap()
            .holds;
    }
    checks.push(check("numeric/multinomial-product", ok, "fixed grids"));

    let mut ok = true;
    for (r, delta, k) in [
        (rat(1, 1), rat(1, 1), 4u32),
        (rat(5, 1), rat(1, 2), 11),
        (rat(3, 2), rat(2, 1), 8),
    ] {
        ok &= inequalities::verify_taylor_tail_bound(&r, &delta, k, digits)
            .unwrap()
            .holds;
    }
    checks.push(check("numeric/taylor-tail", ok, "three parameter triples"));

    let mut ok = true;
    for m in (3..=21u32).step_by(2) {
        ok &= combinatorics::bernoulli(m).is_zero();
    }
    checks.push(check("numeric/bernoulli-odd-zero", ok, "odd m <= 21"));
}

fn correlator_suite(checks: &mut Vec<Check>, correlators: &Correlators, max_dim: u32) {
    let report = correlators.exhaustive_bound_check(max_dim);
    checks.push(check(
        "correlators/exponential-bound",
        report.violations.is_empty(),
        format!("{} keys, |d| <= {max_dim}", report.keys_checked),
    ));

    let mut ok = true;
    for g in 1..=8u32 {
        ok &= correlators.two_point_scan(g).map(|r| r.holds).unwrap_or(false);
    }
    checks.push(check("correlators/two-point-bounds", ok, "g <= 8"));

    let mut ok = true;
    for g in 1..=20u32 {
        ok &= correlators.normalized(g, &[3 * g - 2]).unwrap() == Rational::one();
    }
    checks.push(check("correlators/one-point-unit", ok, "g <= 20"));

    let mut ok = true;
    for g in 1..=6u32 {
        for n in 1..=5u32 {
            let mut d = vec![3 * g - 2];
            d.extend(std::iter::repeat(1).take(n as usize - 1));
            ok &= correlators.normalized(g, &d).unwrap() == dilaton_chain(g, n);
        }
    }
    checks.push(check("correlators/dilaton-chain", ok, "g <= 6, n <= 5"));

    let mut ok = true;
    for n in 3..=14u32 {
        let mut d = vec![1u32; (n - 3) as usize];
        d.extend_from_slice(&[0, 0, 0]);
        let expected = rat_int(3).pow(n as i32 - 3)
            * Rational::from_integer(combinatorics::factorial(n as u64 - 3))
            / Rational::from_integer(
                combinatorics::double_factorial(2 * n as i64 - 5).unwrap(),
            );
        ok &= correlators.normalized(0, &d).unwrap() == expected;
    }
    checks.push(check("correlators/genus-zero-closed-form", ok, "n <= 14"));

    // DVV well-definedness on random keys.
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let keys = moduli_core::correlators::enumerate_keys(max_dim.min(10));
    let mut ok = true;
    let mut tested = 0;
    while tested < 60 && !keys.is_empty() {
        let key = &keys[rng.gen_range(0..keys.len())];
        let reference = correlators
            .normalized(key.genus(), key.exponents())
            .unwrap();
        for i in 0..key.len() {
            ok &= correlators
                .apply_dvv_at(key.genus(), key.exponents(), i)
                .unwrap()
                == reference;
        }
        tested += 1;
    }
    checks.push(check(
        "correlators/dvv-index-independence",
        ok,
        format!("{tested} random keys"),
    ));
}

fn walk_suite(checks: &mut Vec<Check>, correlators: &Correlators) {
    let report = walk::verify_tilted_decay(8, 150);
    checks.push(check(
        "walk/tilted-decay",
        report.violations.is_empty(),
        format!("{} grid points", report.cases_checked),
    ));

    let mut ok = true;
    for n in 3..=6u32 {
        for t in 0..=25u32 {
            ok &= walk::walk_distribution(n, t).unwrap().total_mass() == Rational::one();
        }
    }
    checks.push(check("walk/mass-conservation", ok, "n <= 6, t <= 25"));

    let mut ok = true;
    for n in 4..=7u32 {
        for t in 1..=20u32 {
            let lhs = walk::absorption_probability(n, t).unwrap();
            let rhs = rat(2, 3) * walk::absorption_probability(n - 1, t - 1).unwrap()
                + rat(1, 3) * walk::absorption_probability(n + 1, t - 1).unwrap();
            ok &= lhs == rhs;
        }
    }
    checks.push(check("walk/one-step-recursion", ok, "4 <= n <= 7, t <= 20"));

    // Sandwich against computed correlators with n >= 2.
    let mut ok = true;
    let mut cases = 0;
    for key in moduli_core::correlators::enumerate_keys(9) {
        let (g, n) = (key.genus(), key.len() as u32);
        if n < 2 || g == 0 {
            continue;
        }
        let value = correlators.normalized(g, key.exponents()).unwrap();
        let t = walk::default_lower_time(g, n);
        if g > t {
            ok &= walk::lower_bound_f(g, n, t).unwrap() <= value;
            cases += 1;
        }
        for t_up in 0..=2u32 {
            if g as i64 > (t_up as i64 + 2) * n as i64 + (t_up as i64).pow(2) {
                ok &= value <= walk::upper_bound_f(g, n, t_up).unwrap();
                cases += 1;
            }
        }
    }
    checks.push(check("walk/sandwich", ok, format!("{cases} comparisons")));
}

fn harmonic_suite(checks: &mut Vec<Check>, digits: u32) {
    let report = harmonic::verify_z_inequalities(3, 24, 60, digits);
    checks.push(check(
        "harmonic/z-inequalities",
        report.holds(),
        format!(
            "{} product, {} pointwise, {} cumulative, {} float cases",
            report.product_cases,
            report.pointwise_cases,
            report.cumulative_cases,
            report.float_cases
        ),
    ));

    let phis = harmonic::phi_series(8, digits.max(40));
    let mut ok = phis[0].clone().abs().to_f64() < 1e-10;
    // The agreement threshold is 1e-8; request one digit more from the
    // quadrature (the default 1e-10 is out of reach of the tail bound at
    // j = 8 with the standard truncation).
    let params = harmonic::ContourParams {
        tolerance: 1e-9,
        ..harmonic::ContourParams::default()
    };
    for j in 0..=8u32 {
        let contour = harmonic::phi_contour(j, params).unwrap();
        ok &= (contour - phis[j as usize].to_f64()).abs() < 1e-8;
    }
    checks.push(check("harmonic/phi-oracle-agreement", ok, "j <= 8"));

    let partial = harmonic::phi_generating_partial(0.5, 40, digits.max(40)).to_f64();
    let target = 1.0 / std::f64::consts::PI.sqrt();
    checks.push(check(
        "harmonic/phi-generating-at-half",
        (partial - target).abs() < 1e-10,
        format!("partial sum {partial:.12}"),
    ));
}

fn graph_suite(checks: &mut Vec<Check>) {
    let counts_ok = graphs::enumerate_stable_graphs(0, 3).unwrap().len() == 1
        && graphs::enumerate_stable_graphs(1, 1).unwrap().len() == 2
        && graphs::enumerate_stable_graphs(2, 0).unwrap().len() == 7;
    checks.push(check("graphs/reference-counts", counts_ok, "(0,3), (1,1), (2,0)"));

    let mut ok = true;
    let mut classes = 0;
    for (g, n) in [(0u32, 4u32), (0, 5), (0, 6), (1, 2), (1, 3), (1, 4), (2, 1), (2, 2), (3, 0)] {
        let list = graphs::enumerate_stable_graphs(g, n).unwrap();
        classes += list.len();
        for i in 0..list.len() {
            for j in i + 1..list.len() {
                ok &= !graphs::are_isomorphic(&list[i].0, &list[j].0);
            }
        }
        for (graph, _) in &list {
            ok &= graph.validate(g, n).is_ok();
        }
    }
    checks.push(check(
        "graphs/canonical-vs-pairwise",
        ok,
        format!("{classes} classes, 2g + n <= 6"),
    ));
}

fn volume_suite(checks: &mut Vec<Check>, correlators: &Correlators) {
    let v11 = volumes::volume(correlators, 1, 1).unwrap();
    let v04 = volumes::volume(correlators, 0, 4).unwrap();
    checks.push(check(
        "volumes/hand-anchors",
        v11 == moduli_core::PiValue::single(rat(2, 3), 2)
            && v04 == moduli_core::PiValue::single(rat_int(2), 2),
        "Q_{1,1} = (2/3) pi^2, Q_{0,4} = 2 pi^2",
    ));

    let mut ok = true;
    for (g, n) in [(0u32, 4u32), (0, 5), (1, 1), (1, 2), (2, 0), (2, 1), (3, 0)] {
        let b = volumes::volume_breakdown(correlators, g, n).unwrap();
        let (coeff, power) = b.total.single_term().unwrap();
        ok &= power == volumes::expected_pi_degree(g, n) && coeff.is_positive();
        let sum = b
            .strata
            .iter()
            .fold(moduli_core::PiValue::zero(), |acc, (_, v)| acc + v.clone());
        ok &= sum == b.total;
    }
    checks.push(check(
        "volumes/pi-degree-and-partition",
        ok,
        "g <= 3 spot grid",
    ));

    let mut ok = true;
    for (g, n) in [(2u32, 0u32), (2, 1), (3, 0), (3, 1)] {
        for e in 0..=g {
            let closed = volumes::one_vertex_closed_form(correlators, g, n, e).unwrap();
            let graph = volumes::one_vertex_graph(g, n, e).unwrap();
            let pipeline = volumes::graph_contribution(correlators, &graph, g, n).unwrap();
            ok &= closed == pipeline;
        }
    }
    checks.push(check(
        "volumes/one-vertex-closed-form",
        ok,
        "g <= 3, n <= 1, all E",
    ));
}

fn sv_suite(checks: &mut Vec<Check>, correlators: &Correlators) {
    let mut ok = true;
    for n in 0..=1u32 {
        ok &= sv::c_area(correlators, 2, n).unwrap().kappa2.is_zero();
    }
    checks.push(check("sv/kappa2-vanishes", ok, "n <= 1"));

    // Hand expansion at (2, 0): kappa1 = (1/40) Vol(1,1)^2 / Vol(2,0),
    // kappa3 = (3/5) Vol(1,2) / Vol(2,0).
    let decomposition = sv::c_area(correlators, 2, 0).unwrap();
    let v11 = volumes::volume(correlators, 1, 1).unwrap();
    let v12 = volumes::volume(correlators, 1, 2).unwrap();
    let v20 = volumes::volume(correlators, 2, 0).unwrap();
    let kappa1 = (&v11 * &v11)
        .scale(&rat(1, 40))
        .div_single(&v20)
        .unwrap();
    let kappa3 = v12.scale(&rat(3, 5)).div_single(&v20).unwrap();
    let expected = &kappa1 + &kappa3;
    checks.push(check(
        "sv/c-area-hand-expansion",
        decomposition.c_area == expected && decomposition.kappa2.is_zero(),
        format!("c_area(2,0) = {}", decomposition.c_area),
    ));

    let mut ok = true;
    for (g, n) in [(2u32, 0u32), (2, 1), (3, 0)] {
        let d = sv::c_area(correlators, g, n).unwrap();
        let lyap = sv::lyapunov_sum_from(&d).unwrap();
        let weighted = &moduli_core::PiValue::single(rat(1, 3), 2) * &d.c_area;
        ok &= &lyap - &weighted
            == moduli_core::PiValue::from_rational(rat(5 * g as i64 - n as i64 - 5, 18));
    }
    checks.push(check("sv/lyapunov-identity", ok, "(g,n) spot grid"));
}

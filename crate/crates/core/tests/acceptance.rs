//! Acceptance criteria, run in sequence so the timed ones run alone. Each
//! prints one PASS/FAIL line straight to stdout, past the harness capture.

use std::f64::consts::PI;
use std::io::Write;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use spiked::bounds::{mu_norm, variational_upper, BoundReport};
use spiked::model::{gamma_from_a, make_params, ClosedAlpha, OscillatorParams};
use spiked::perturb::{
    epsilon2_alpha6_with_cubic, epsilon2_closed, epsilon2_series, epsilon3_closed, epsilon3_series, horner,
    PerturbationCoefficients, TruncatedSum, ALPHA6_CUBIC, ALPHA6_CUBIC_ALTERNATIVE,
};
use spiked::reference::{bound_rows, upper_bound_rows, Printed, UpperBoundRow};
use spiked::series::{double_sum_truncated, lemma_closed, lemma_quadrature, resummation_limit};
use spiked::solver::{ground_state, ground_state_with, SolverConfig};
use spiked::specfun::{gauss_2f1_unit, lemma1_4f3, pfq, trigamma, HypergeometricSpec};

const TABLE_ALPHA: f64 = 4.0;
const TABLE_SOLVER: SolverConfig = SolverConfig {
    start: 32,
    cap: 2048,
    tol: 1e-12,
    strict: false,
};
const SERIES_TERMS: usize = 4000;
const PFQ_TOL: f64 = 1e-12;

fn report(n: u32, failures: &[String], detail: &str) {
    let line = if failures.is_empty() {
        format!("criterion {n}: PASS {detail}\n")
    } else {
        let mut s = format!("criterion {n}: FAIL {detail} ({} failing)\n", failures.len());
        for f in failures {
            s.push_str(&format!("    {f}\n"));
        }
        s
    };
    let mut out = std::io::stdout().lock();
    out.write_all(line.as_bytes()).unwrap();
    out.flush().unwrap();
}

fn finish(n: u32, failures: Vec<String>, detail: &str) -> bool {
    report(n, &failures, detail);
    failures.is_empty()
}

fn check_printed(failures: &mut Vec<String>, what: &str, printed: &Printed, v: f64) {
    if !printed.matches(v) {
        failures.push(format!(
            "{what}: computed {v:.15}, printed {}, off by {:.2e}",
            printed.text,
            printed.deviation(v)
        ));
    }
}

struct TableSolve {
    row: UpperBoundRow,
    params: OscillatorParams,
    energy: f64,
    /// Change of the ground eigenvalue on the last doubling.
    resolution: f64,
}

/// Solver results for every upper-bound row, computed once.
fn table_solves() -> &'static (Vec<TableSolve>, Duration) {
    static CELL: OnceLock<(Vec<TableSolve>, Duration)> = OnceLock::new();
    CELL.get_or_init(|| {
        let t = Instant::now();
        let solves = upper_bound_rows()
            .into_iter()
            .map(|row| {
                let params = OscillatorParams::from_l(row.l, TABLE_ALPHA, row.lambda).unwrap();
                let r = ground_state_with(&params, &TABLE_SOLVER).unwrap();
                TableSolve {
                    row,
                    params,
                    energy: r.best_estimate(),
                    resolution: r.delta_last_refinement,
                }
            })
            .collect();
        (solves, t.elapsed())
    })
}

fn criterion_1_upper_bound_table() -> bool {
    let mut failures = Vec::new();
    let (solves, elapsed) = table_solves();
    for s in solves {
        let tag = format!("lambda = {}, l = {}", s.row.lambda, s.row.l);
        match variational_upper(&s.params) {
            Ok(u) => check_printed(&mut failures, &format!("{tag} variational"), &s.row.upper, u),
            Err(e) => failures.push(format!("{tag} variational: {e}")),
        }
        check_printed(&mut failures, &format!("{tag} solver"), &s.row.exact, s.energy);
    }
    if elapsed.as_secs_f64() > 30.0 {
        failures.push(format!("solver runtime {:.1} s exceeds 30 s", elapsed.as_secs_f64()));
    }
    let detail = format!("({} rows, solver {:.1} s)", solves.len(), elapsed.as_secs_f64());
    finish(1, failures, &detail)
}

fn criterion_2_error_bound_digits() -> bool {
    let mut failures = Vec::new();
    let p = make_params(12.0, TABLE_ALPHA, 0.001).unwrap();
    assert_eq!(p.gamma(), 4.5);
    let norm = mu_norm(&p, 1).unwrap();
    let norm_printed: Printed = "4.8346".parse().unwrap();
    let scaled = norm * 1e8;
    if (scaled - norm_printed.value).abs() > norm_printed.ulp() {
        failures.push(format!("p = 1 norm {norm:.6e} not within one unit of 4.8346e-8"));
    }
    let b = BoundReport::compute(&p).unwrap();
    let expect = [
        ("9.000114285", b.per_order[0].energy),
        ("9.000114279", b.per_order[1].energy),
    ];
    for (k, (text, v)) in expect.iter().enumerate() {
        check_printed(
            &mut failures,
            &format!("p = {} energy", k + 1),
            &text.parse().unwrap(),
            *v,
        );
    }
    let third = &b.per_order[2];
    check_printed(
        &mut failures,
        "p = 3 lower",
        &"9.000114231".parse().unwrap(),
        third.lower,
    );
    check_printed(
        &mut failures,
        "p = 3 upper",
        &"9.000114327".parse().unwrap(),
        third.upper,
    );
    finish(2, failures, &format!("(norm {norm:.5e})"))
}

fn criterion_3_bound_table() -> bool {
    let mut failures = Vec::new();
    let mut entries = 0;
    for row in bound_rows() {
        let p = make_params(12.0, TABLE_ALPHA, row.lambda).unwrap();
        let b = match BoundReport::compute(&p) {
            Ok(b) => b,
            Err(e) => {
                failures.push(format!("lambda = {}: {e}", row.lambda));
                continue;
            }
        };
        for (k, (lo, hi)) in row.pairs.iter().enumerate() {
            let o = &b.per_order[k];
            check_printed(
                &mut failures,
                &format!("lambda = {} p = {} lower", row.lambda, o.p),
                lo,
                o.lower,
            );
            check_printed(
                &mut failures,
                &format!("lambda = {} p = {} upper", row.lambda, o.p),
                hi,
                o.upper,
            );
            entries += 2;
        }
        // The optimal pair is (f-(E1), f+(E2)) and applies only when
        // lambda < |eps2|/eps3.
        let selected = if b.optimal_valid { Some((1, 2)) } else { None };
        if selected != Some(row.optimal) {
            failures.push(format!(
                "lambda = {}: selection {selected:?}, marked {:?}",
                row.lambda, row.optimal
            ));
        }
    }
    finish(3, failures, &format!("({entries} entries)"))
}

/// λ-Taylor coefficients of 2 + √(1 + 4(A + λ)).
fn exact_coefficients(a: f64) -> [f64; 3] {
    let s = (1.0 + 4.0 * a).sqrt();
    [2.0 / s, -2.0 / s.powi(3), 4.0 / s.powi(5)]
}

fn criterion_4_exactly_solvable_case() -> bool {
    let mut failures = Vec::new();
    for a in [0.0, 1.0, 12.0] {
        let c = PerturbationCoefficients::compute(2.0, gamma_from_a(a)).unwrap();
        for (k, want) in exact_coefficients(a).iter().enumerate() {
            let got = c.eps(k as u32 + 1).unwrap();
            if (got - want).abs() > 1e-12 {
                failures.push(format!("A = {a} eps{}: {got} vs {want}", k + 1));
            }
        }
        for lambda in [0.001, 0.1, 1.0] {
            let p = make_params(a, 2.0, lambda).unwrap();
            let exact = 2.0 + (1.0 + 4.0 * (a + lambda)).sqrt();
            match ground_state(&p, 1e-10) {
                Ok(r) if (r.ground() - exact).abs() <= 1e-10 => {}
                Ok(r) => failures.push(format!("A = {a} lambda = {lambda}: {} vs {exact}", r.ground())),
                Err(e) => failures.push(format!("A = {a} lambda = {lambda}: {e}")),
            }
        }
    }
    finish(4, failures, "(3 coefficient sets, 9 eigenvalues)")
}

fn criterion_5_double_series_lemmas() -> bool {
    let t = Instant::now();
    let mut failures = Vec::new();
    let grids = [
        (ClosedAlpha::Two, [1.5, 2.0, 3.0, 5.0, 8.0]),
        (ClosedAlpha::Four, [4.5, 5.0, 6.0, 8.0, 12.0]),
        (ClosedAlpha::Six, [7.5, 8.0, 10.0, 12.0, 16.0]),
    ];
    for (alpha, gammas) in grids {
        for g in gammas {
            let tag = format!("alpha = {} gamma = {g}", alpha.value());
            let c = double_sum_truncated(alpha, g, 400).unwrap();
            if !c.agrees() {
                failures.push(format!(
                    "{tag}: |{} - {}| > tail {:.2e}",
                    c.closed_value, c.truncated_value, c.tail_estimate
                ));
            }
            let closed = lemma_closed(alpha, g).unwrap();
            let q = lemma_quadrature(alpha, g).unwrap();
            if (closed - q).abs() > 1e-7 * closed.abs() {
                failures.push(format!("{tag}: closed {closed} vs quadrature {q}"));
            }
        }
    }
    let secs = t.elapsed().as_secs_f64();
    if secs > 60.0 {
        failures.push(format!("runtime {secs:.1} s exceeds 60 s"));
    }
    finish(5, failures, &format!("(15 points, {secs:.1} s)"))
}

fn series_value(num: Vec<f64>, den: Vec<f64>, z: f64) -> f64 {
    pfq(&HypergeometricSpec::new(num, den, z).unwrap(), PFQ_TOL)
        .unwrap()
        .value
}

/// ₄F₃(1, 1, 4, 4; 2, 2, γ+1; 1) in closed form.
fn four_f_three_closed(g: f64) -> f64 {
    g / 18.0
        * ((g - 2.0) * (g - 1.0) / ((g - 5.0) * (g - 4.0))
            + 2.0 * (g - 1.0) / (g - 4.0)
            + horner(&ALPHA6_CUBIC, g) / ((g - 3.0) * (g - 2.0) * (g - 1.0)))
}

fn criterion_6_hypergeometric_suite() -> bool {
    let mut failures = Vec::new();
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for _ in 0..1000 {
        let (a, b) = (rng.gen_range(0.05..3.0), rng.gen_range(0.05..3.0));
        let c = a + b + rng.gen_range(0.1..5.0);
        let closed = gauss_2f1_unit(a, b, c).unwrap();
        let summed = series_value(vec![a, b], vec![c], 1.0);
        if (closed - summed).abs() > 1e-10 * closed.abs() {
            failures.push(format!("2F1({a}, {b}; {c}; 1): {closed} vs {summed}"));
        }
    }
    for k in 0..200 {
        let (a, b) = (rng.gen_range(0.1..2.0), rng.gen_range(0.1..2.0));
        let (c, d) = (rng.gen_range(0.3..4.0), rng.gen_range(0.3..4.0));
        let e = a + b + rng.gen_range(2.2..6.0);
        let z = if k % 2 == 0 { 1.0 } else { 0.5 };
        let reduced = lemma1_4f3(a, b, c, d, e, z).unwrap();
        let summed = series_value(vec![a, b, c + 1.0, d + 1.0], vec![e, c, d], z);
        if (reduced - summed).abs() > 1e-10 * summed.abs() {
            failures.push(format!("4F3({a}, {b}, {c}, {d}; {e}; {z}): {reduced} vs {summed}"));
        }
    }
    for g in [6.0, 8.0, 12.0] {
        let closed = four_f_three_closed(g);
        let summed = series_value(vec![1.0, 1.0, 4.0, 4.0], vec![2.0, 2.0, g + 1.0], 1.0);
        if (closed - summed).abs() > 1e-10 * closed.abs() {
            failures.push(format!("4F3(1, 1, 4, 4; 2, 2, {}; 1): {closed} vs {summed}", g + 1.0));
        }
    }
    let t = trigamma(0.5).unwrap();
    if (t - PI * PI / 2.0).abs() > 1e-12 {
        failures.push(format!("trigamma(1/2) = {t}"));
    }
    let limit = resummation_limit().unwrap();
    let want = PI * PI / 16.0 - 0.25;
    if (limit - want).abs() > 1e-6 {
        failures.push(format!("resummed limit {limit} vs {want}"));
    }
    finish(6, failures, &format!("(limit off by {:.1e})", limit - want))
}

fn within_tail(closed: f64, s: &TruncatedSum) -> bool {
    (closed - s.value).abs() <= s.tail_estimate + 1e-12 * closed.abs()
}

fn criterion_7_coefficient_cross_validation() -> bool {
    let mut failures = Vec::new();
    let grids = [
        (ClosedAlpha::Four, [4.5, 5.5, 7.0, 10.0]),
        (ClosedAlpha::Six, [7.5, 9.0, 11.5, 16.0]),
    ];
    for (alpha, gammas) in grids {
        let a = alpha.value();
        for g in gammas {
            let e2 = epsilon2_closed(alpha, g).unwrap();
            let s2 = epsilon2_series(a, g, SERIES_TERMS).unwrap();
            if !within_tail(e2, &s2) {
                failures.push(format!(
                    "alpha = {a} gamma = {g} eps2: {e2} vs {} (tail {:.2e})",
                    s2.value, s2.tail_estimate
                ));
            }
            let e3 = epsilon3_closed(alpha, g).unwrap();
            let s3 = epsilon3_series(a, g, SERIES_TERMS).unwrap();
            if !within_tail(e3, &s3) {
                failures.push(format!(
                    "alpha = {a} gamma = {g} eps3: {e3} vs {} (tail {:.2e})",
                    s3.value, s3.tail_estimate
                ));
            }
        }
    }
    // Two transcriptions of the cubic in the alpha = 6 second-order bracket
    // circulate; the series must accept the adopted one and reject the other.
    let mut rejected = 0;
    for g in [7.5, 9.0, 11.5, 16.0] {
        let s2 = epsilon2_series(6.0, g, SERIES_TERMS).unwrap();
        if !within_tail(epsilon2_alpha6_with_cubic(g, &ALPHA6_CUBIC_ALTERNATIVE).unwrap(), &s2) {
            rejected += 1;
        }
    }
    if rejected != 4 {
        failures.push(format!("alternative cubic rejected at only {rejected} of 4 points"));
    }
    finish(
        7,
        failures,
        "(16 comparisons; alternative alpha = 6 cubic rejected by the series at all 4 points)",
    )
}

fn criterion_8_bracketing() -> bool {
    let mut failures = Vec::new();
    let mut checked = 0;
    let (solves, _) = table_solves();
    let mut grid: Vec<(OscillatorParams, f64, f64)> =
        solves.iter().map(|s| (s.params, s.energy, s.resolution)).collect();
    for row in bound_rows() {
        let p = make_params(12.0, TABLE_ALPHA, row.lambda).unwrap();
        if !grid.iter().any(|(q, _, _)| q == &p) {
            let r = ground_state_with(&p, &TABLE_SOLVER).unwrap();
            grid.push((p, r.best_estimate(), r.delta_last_refinement));
        }
    }
    // The solver energy is known only to within its last observed change.
    for (p, e, res) in grid {
        let tag = format!("A = {} lambda = {}", p.a(), p.lambda());
        let b = match BoundReport::compute(&p) {
            Ok(b) => b,
            Err(err) => {
                failures.push(format!("{tag}: {err}"));
                continue;
            }
        };
        checked += 1;
        let (lower, upper) = b.optimal;
        let cap = upper.min(b.variational_upper);
        if !(lower <= e + res && e - res <= cap) {
            failures.push(format!("{tag}: {lower} <= {e} (+/- {res:.1e}) <= {cap} violated"));
        }
        if b.optimal_valid {
            let (e1, e2, e3) = (b.per_order[0].energy, b.per_order[1].energy, b.per_order[2].energy);
            if !(e1 > e3 && e3 > e2) {
                failures.push(format!("{tag}: ordering E1 > E3 > E2 violated ({e1}, {e3}, {e2})"));
            }
        }
    }
    finish(8, failures, &format!("({checked} points bracketed)"))
}

#[test]
fn acceptance() {
    let results = [
        criterion_1_upper_bound_table(),
        criterion_2_error_bound_digits(),
        criterion_3_bound_table(),
        criterion_4_exactly_solvable_case(),
        criterion_5_double_series_lemmas(),
        criterion_6_hypergeometric_suite(),
        criterion_7_coefficient_cross_validation(),
        criterion_8_bracketing(),
    ];
    let failed: Vec<usize> = (1..=8).filter(|&n| !results[n - 1]).collect();
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}

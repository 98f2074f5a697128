//! Acceptance suite: every guaranteed behavior of the crate, one test per
//! criterion, each printing a pass/fail line (visible with --nocapture) and
//! holding its runtime budget.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use nalgebra::DMatrix;
use num_complex::Complex64;

use beltnot::{
    analytic_optimum, avg_fidelity_closed, avg_fidelity_quadrature, exemplar_chain,
    exemplar_lambdas, fidelity_formula, fidelity_sim, fidelity_sim_phi_avg, oracle_optimum,
    realize_from_report, verify_chain, BeltRegion, ExemplarState, InputState, QuadratureConfig,
};

fn report(criterion: &str, pass: bool, elapsed: Duration, detail: &str) {
    let status = if pass { "PASS" } else { "FAIL" };
    println!("acceptance {criterion}: {status} ({elapsed:.2?}) {detail}");
    assert!(pass, "{criterion}: {detail}");
}

/// A grid of `outer` x `inner` valid belts spanning the sphere, including
/// polar, southern, and near-degenerate regions.
fn belt_grid(outer: usize, inner: usize) -> Vec<BeltRegion> {
    let mut belts = Vec::with_capacity(outer * inner);
    for i in 0..outer {
        let t1 = PI * i as f64 / outer as f64;
        for j in 0..inner {
            let t2 = t1 + (PI - t1) * (j as f64 + 1.0) / inner as f64;
            belts.push(BeltRegion::new(t1, t2).unwrap());
        }
    }
    belts
}

#[test]
fn criterion_1_universal_limit() {
    let start = Instant::now();
    let region = BeltRegion::new(0.0, PI).unwrap();
    let mut worst: f64 = 0.0;
    for m in 1..=8 {
        let f_bar = analytic_optimum(&region, m).unwrap().f_bar;
        worst = worst.max((f_bar - 2.0 / 3.0).abs());
    }
    let elapsed = start.elapsed();
    report(
        "criterion 1 (universal limit F=2/3, M=1..8)",
        worst < 1e-12 && elapsed < Duration::from_secs(1),
        elapsed,
        &format!("max |F - 2/3| = {worst:.3e}"),
    );
}

#[test]
fn criterion_2_phase_covariant_limit() {
    let start = Instant::now();
    let region = BeltRegion::new(PI / 2.0, PI / 2.0).unwrap();
    let mut worst: f64 = 0.0;
    for m in 1..=8u32 {
        let mf = m as f64;
        let expected = if m % 2 == 1 {
            0.5 + (mf + 1.0) / (4.0 * mf)
        } else {
            0.5 + (mf * (mf + 2.0)).sqrt() / (4.0 * mf)
        };
        let f_bar = analytic_optimum(&region, m).unwrap().f_bar;
        worst = worst.max((f_bar - expected).abs());
    }
    let elapsed = start.elapsed();
    report(
        "criterion 2 (phase-covariant limit, M=1..8)",
        worst < 1e-12 && elapsed < Duration::from_secs(1),
        elapsed,
        &format!("max deviation = {worst:.3e}"),
    );
}

#[test]
fn criterion_3_closed_form_vs_simulation() {
    let start = Instant::now();
    let config = QuadratureConfig::default();
    let mut worst: f64 = 0.0;
    for region in belt_grid(10, 10) {
        for m in 1..=6 {
            let gate = realize_from_report(&analytic_optimum(&region, m).unwrap()).unwrap();
            let closed = avg_fidelity_closed(&gate, &region).unwrap();
            let quadrature = avg_fidelity_quadrature(&gate, &region, &config).unwrap();
            worst = worst.max((closed - quadrature).abs());
        }
    }
    let elapsed = start.elapsed();
    report(
        "criterion 3 (closed form vs quadrature, 10x10 belts, M=1..6)",
        worst < 1e-9 && elapsed < Duration::from_secs(120),
        elapsed,
        &format!("max |closed - quadrature| = {worst:.3e}"),
    );
}

#[test]
fn criterion_4_optimality_bracketing() {
    let start = Instant::now();
    let belts = belt_grid(5, 5);
    assert_eq!(belts.len(), 25);
    let mut worst_above = f64::NEG_INFINITY;
    let mut worst_below = f64::NEG_INFINITY;
    for region in &belts {
        for m in 1..=4 {
            let f_bar = analytic_optimum(region, m).unwrap().f_bar;
            let oracle = oracle_optimum(region, m, 0.01).unwrap();
            worst_above = worst_above.max(oracle.best_f - f_bar);
            worst_below = worst_below.max(f_bar - oracle.best_f);
        }
    }
    let elapsed = start.elapsed();
    report(
        "criterion 4 (oracle bracketing, 25 belts, M=1..4, res 0.01)",
        worst_above <= 1e-9 && worst_below <= 5e-3 && elapsed < Duration::from_secs(600),
        elapsed,
        &format!("oracle - analytic in [-{worst_below:.3e}, +{worst_above:.3e}]"),
    );
}

#[test]
fn criterion_5_cross_term_cancellation() {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for region in belt_grid(5, 5) {
        for m in 1..=4 {
            let gate = realize_from_report(&analytic_optimum(&region, m).unwrap()).unwrap();
            for i in 0..16 {
                let theta = PI * i as f64 / 15.0;
                let sim = fidelity_sim_phi_avg(&gate, theta, 64).unwrap();
                let formula = fidelity_formula(&gate, theta);
                worst = worst.max((sim - formula).abs());
            }
        }
    }
    let elapsed = start.elapsed();
    report(
        "criterion 5 (phi cross terms cancel, 100 gates x 16 thetas)",
        worst < 1e-10,
        elapsed,
        &format!("max |phi-averaged sim - formula| = {worst:.3e}"),
    );
}

#[test]
fn criterion_6_mps_exactness() {
    let start = Instant::now();
    let mut worst_lambda: f64 = 0.0;
    let mut worst_isometry: f64 = 0.0;
    let mut worst_overlap: f64 = 1.0;
    for m in [1u32, 3, 5, 7, 9, 11] {
        for g in 0..=10 {
            let gamma = g as f64 / 10.0;
            let state = ExemplarState::new(m, gamma).unwrap();
            let full = state.full_state();
            // Closed-form Schmidt spectrum vs numerical SVD at every cut.
            for n in 1..=m {
                let mut analytic = exemplar_lambdas(&state, n).unwrap();
                analytic.sort_by(|a, b| b.partial_cmp(a).unwrap());
                let rows = 1usize << n;
                let cols = 1usize << (m + 1 - n);
                let mat =
                    DMatrix::<Complex64>::from_fn(rows, cols, |r, c| full[r + (c << n)]);
                let mut numeric: Vec<f64> =
                    mat.svd(false, false).singular_values.iter().cloned().collect();
                numeric.sort_by(|a, b| b.partial_cmp(a).unwrap());
                for i in 0..numeric.len().max(analytic.len()) {
                    let a = analytic.get(i).copied().unwrap_or(0.0);
                    let s = numeric.get(i).copied().unwrap_or(0.0);
                    worst_lambda = worst_lambda.max((a - s).abs());
                }
            }
            let (chain, _) = exemplar_chain(&state).unwrap();
            let cert = verify_chain(&chain, &full).unwrap();
            worst_isometry = worst_isometry.max(cert.max_isometry_residual);
            worst_overlap = worst_overlap.min(cert.overlap);
        }
    }
    let elapsed = start.elapsed();
    report(
        "criterion 6 (MPS exactness, odd M<=11, gamma grid)",
        worst_lambda < 1e-10
            && worst_isometry < 1e-12
            && worst_overlap > 1.0 - 1e-10
            && elapsed < Duration::from_secs(60),
        elapsed,
        &format!(
            "max lambda dev {worst_lambda:.3e}, max isometry {worst_isometry:.3e}, min overlap 1-{:.3e}",
            1.0 - worst_overlap
        ),
    );
}

#[test]
fn criterion_7_fidelity_depends_on_m() {
    let start = Instant::now();
    let region = BeltRegion::new(PI / 3.0, 2.0 * PI / 3.0).unwrap();
    let f1 = analytic_optimum(&region, 1).unwrap().f_bar;
    let f4 = analytic_optimum(&region, 4).unwrap().f_bar;
    let delta = (f1 - f4).abs();
    let elapsed = start.elapsed();
    report(
        "criterion 7 (fidelity depends on M)",
        delta > 1e-6,
        elapsed,
        &format!("|F(M=1) - F(M=4)| = {delta:.6e}"),
    );
}

#[test]
fn criterion_8_perfect_equatorial_not() {
    let start = Instant::now();
    let region = BeltRegion::new(PI / 2.0, PI / 2.0).unwrap();
    let gate = realize_from_report(&analytic_optimum(&region, 1).unwrap()).unwrap();
    let mut worst: f64 = 0.0;
    for j in 0..64 {
        let phi = 2.0 * PI * j as f64 / 64.0;
        let input = InputState::new(PI / 2.0, phi).unwrap();
        let f = fidelity_sim(&gate, &input).unwrap();
        worst = worst.max((f - 1.0).abs());
    }
    let elapsed = start.elapsed();
    report(
        "criterion 8 (perfect equatorial NOT at M=1)",
        worst < 1e-12,
        elapsed,
        &format!("max |F - 1| over phi = {worst:.3e}"),
    );
}

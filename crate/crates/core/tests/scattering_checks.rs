//! Cross-route and identity checks for the scattering assembly: the
//! determinant against the resolvent/reflection routes, gauge independence
//! of the kernel under split relocation, the closed-form flat oracle, and
//! the interpolation limits of the sqrt and parabola crossing families.

use kpzlab_core::airydist::{airy_kernel, f_curved_to_flat, f_goe_fd, f_gue_fd};
use kpzlab_core::barrier::{Barrier, ParabolaDensity, VolterraDensity};
use kpzlab_core::painleve::f_goe_p;
use kpzlab_core::quad::{det_lu, gauss_legendre};
use kpzlab_core::scattering::{
    check_reflection, f_parbl, f_sqrt, hitting_det, s_g_from_parts, scattering_kernel, t_rule,
    t_rule_kink, Assembly, ScatteringConfig, SideOperand, TiltedAiryFunction,
};
use kpzlab_core::specfun::airy_ai;

const LAMBDA_POINTS: [f64; 3] = [-0.3, -1.2, -2.1];

fn det_for(barrier: Barrier) -> f64 {
    hitting_det(&barrier, &ScatteringConfig::for_barrier(barrier))
}

#[test]
fn det_recovers_the_three_closed_form_routes() {
    let narrow = det_for(Barrier::narrow_wedge(0.0));
    let gue = f_gue_fd(0.0);
    assert!((narrow - gue).abs() <= 1e-5, "narrow wedge: {:+.3e}", narrow - gue);

    let flat = det_for(Barrier::flat(0.0));
    let goe = f_goe_fd(0.0);
    assert!((flat - goe).abs() <= 1e-4, "flat: {:+.3e}", flat - goe);

    let half = det_for(Barrier::half_flat(0.5, 0.0));
    let c2f = f_curved_to_flat(0.5, 0.0);
    assert!((half - c2f).abs() <= 1e-4, "half-flat: {:+.3e}", half - c2f);
}

#[test]
fn flat_det_agrees_with_both_other_routes_across_levels() {
    for r in [-1.0, 0.0, 1.0] {
        let det = det_for(Barrier::flat(r));
        let fd = f_goe_fd(r);
        let p = f_goe_p(4.0f64.powf(1.0 / 3.0) * r);
        assert!((det - fd).abs() <= 1e-4, "det vs resolvent at r={r}: {:+.3e}", det - fd);
        assert!((det - p).abs() <= 1e-4, "det vs painleve at r={r}: {:+.3e}", det - p);
        assert!((fd - p).abs() <= 1e-4, "resolvent vs painleve at r={r}: {:+.3e}", fd - p);
    }
}

/// s_g matrices over the lambda test grid for the barrier g, evaluated from
/// a gauge split s: curves at distance t from the split, first-passage
/// densities from the general Volterra solver, kink-graded t rule.
fn gauge_s_g(
    g: impl Fn(f64) -> f64 + Copy + Sync,
    dg: impl Fn(f64) -> f64 + Copy + Sync,
    s: f64,
) -> Vec<Vec<f64>> {
    let g_s = g(s);
    let y_rule = gauss_legendre(96, g_s - 20.0, g_s);
    let tr = t_rule_kink(s.abs(), 6.0);
    let left_curve = move |t: f64| g(s - t);
    let left_slope = move |t: f64| -dg(s - t);
    let right_curve = move |t: f64| g(s + t);
    let right_slope = move |t: f64| dg(s + t);
    let left =
        VolterraDensity::new(left_curve, left_slope, y_rule.nodes.clone(), 6.0, &[s.abs()], g_s);
    let right =
        VolterraDensity::new(right_curve, right_slope, y_rule.nodes.clone(), 6.0, &[s.abs()], g_s);
    s_g_from_parts(
        Assembly::Shifted,
        s,
        g_s,
        Some(&SideOperand {
            curve: &left_curve,
            density: &left,
            t_nodes: &tr.nodes,
            t_weights: &tr.weights,
        }),
        Some(&SideOperand {
            curve: &right_curve,
            density: &right,
            t_nodes: &tr.nodes,
            t_weights: &tr.weights,
        }),
        &LAMBDA_POINTS,
        &y_rule,
    )
}

fn max_pairwise_rel(mats: &[Vec<Vec<f64>>]) -> f64 {
    let mut worst = 0.0f64;
    for a in 0..mats.len() {
        for b in a + 1..mats.len() {
            for i in 0..LAMBDA_POINTS.len() {
                for j in 0..LAMBDA_POINTS.len() {
                    let (x, y) = (mats[a][i][j], mats[b][i][j]);
                    worst = worst.max((x - y).abs() / x.abs().max(y.abs()));
                }
            }
        }
    }
    worst
}

#[test]
fn sqrt_s_g_is_independent_of_the_split_gauge() {
    let g = |x: f64| x.abs().sqrt();
    let dg = |x: f64| 0.5 * x.signum() / x.abs().max(1e-300).sqrt();
    let mats: Vec<_> = [-1.0, 0.0, 1.0].iter().map(|&s| gauge_s_g(g, dg, s)).collect();
    let worst = max_pairwise_rel(&mats);
    assert!(worst <= 1e-4, "sqrt gauge spread {worst:.3e} over the 3x3 grid");
}

#[test]
fn parabola_s_g_is_independent_of_the_split_gauge() {
    let g = |x: f64| x * x;
    let dg = |x: f64| 2.0 * x;
    let mats: Vec<_> = [-1.0, 0.0, 1.0].iter().map(|&s| gauge_s_g(g, dg, s)).collect();
    let worst = max_pairwise_rel(&mats);
    assert!(worst <= 1e-4, "parabola gauge spread {worst:.3e} over the 3x3 grid");
}

#[test]
fn flat_s_g_matches_the_closed_form_oracle() {
    // Independent assembly from the reflection form of the flat kernel
    // function: the leading Airy product integrates in closed form through
    // the complement above the level, the reflected terms decay and are
    // integrated directly.
    let r = 0.0;
    let oracle = |l1: f64, l2: f64| -> f64 {
        let rule = gauss_legendre(512, r - 20.0, r);
        let mut cross = 0.0;
        for (&y, &w) in rule.nodes.iter().zip(&rule.weights) {
            let (a1, a2) = (airy_ai(y - l1), airy_ai(y - l2));
            let (b1, b2) = (airy_ai(2.0 * r - y - l1), airy_ai(2.0 * r - y - l2));
            cross += w * (a1 * b2 + b1 * a2 - b1 * b2);
        }
        -airy_kernel(r - l1, r - l2) - cross
    };
    let kernel = scattering_kernel(&ScatteringConfig::for_barrier(Barrier::flat(r)));
    for i in 0..LAMBDA_POINTS.len() {
        for j in i + 1..LAMBDA_POINTS.len() {
            let (l1, l2) = (LAMBDA_POINTS[i], LAMBDA_POINTS[j]);
            let gap = kernel.s_g(l1, l2) - oracle(l1, l2);
            assert!(gap.abs() <= 1e-7, "s_g oracle gap {gap:+.3e} at ({l1}, {l2})");
        }
    }
}

#[test]
fn s_g_is_symmetric_for_symmetric_barriers() {
    for barrier in [Barrier::flat(0.0), Barrier::sqrt(0.0, 0.0, 1.0, 1.0)] {
        let kernel = scattering_kernel(&ScatteringConfig::for_barrier(barrier));
        for (l1, l2) in [(-0.3, -1.2), (-0.3, -2.1), (-1.2, -2.1)] {
            let gap = kernel.s_g(l1, l2) - kernel.s_g(l2, l1);
            assert!(gap.abs() <= 1e-10, "asymmetry {gap:+.3e} at ({l1}, {l2})");
        }
    }
}

#[test]
fn kernel_functions_vanish_at_the_pin() {
    for barrier in [Barrier::flat(0.0), Barrier::sqrt(0.0, 0.0, 1.0, 1.0)] {
        let kernel = scattering_kernel(&ScatteringConfig::for_barrier(barrier));
        for lambda in [-0.5, -1.5] {
            let minus = kernel.psi_minus(lambda, -1e-4);
            let plus = kernel.psi_plus(lambda, -1e-4);
            assert!(minus.abs() <= 1e-3, "psi_minus at the pin: {minus:+.3e}");
            assert!(plus.abs() <= 1e-3, "psi_plus at the pin: {plus:+.3e}");
        }
    }
}

#[test]
fn reflection_identity_holds_at_the_stated_points() {
    for (x, y, alpha, beta, tol) in [
        (0.5, -1.0, 0.0, 0.0, 1e-8),
        (0.2, -0.5, 0.3, 0.4, 1e-7),
        (1.0, -2.0, -0.4, 0.6, 1e-7),
        (0.5, -1e-4, 0.0, 0.0, 1e-5),
    ] {
        let err = check_reflection(x, y, alpha, beta);
        assert!(err <= tol, "reflection error {err:.3e} at ({x}, {y}, {alpha}, {beta})");
    }
}

#[test]
fn semigroup_steps_compose() {
    // Two half steps and one full step approximate the same flow; their
    // difference cancels the shared truncation and must sit well below
    // either step's own error.
    let phi = |t: f64, x: f64| TiltedAiryFunction { alpha: 0.0, t }.eval(x);
    fn heat(f: &(dyn Fn(f64) -> f64), s: f64, x: f64) -> f64 {
        let rule = gauss_legendre(400, x - 12.0 * s.sqrt(), x + 12.0 * s.sqrt());
        let norm = 1.0 / (4.0 * std::f64::consts::PI * s).sqrt();
        rule.nodes
            .iter()
            .zip(&rule.weights)
            .map(|(&u, &w)| w * norm * (-(x - u) * (x - u) / (4.0 * s)).exp() * f(u))
            .sum()
    }
    for x in [-2.0, -0.5, 0.0, 1.0, 2.0] {
        let one = heat(&|u| phi(1.0, u), 0.5, x);
        let two = heat(&|u| heat(&|v| phi(1.0, v), 0.25, u), 0.25, x);
        assert!((two - one).abs() <= 1e-8, "composition gap {:+.3e} at x={x}", two - one);
    }
}

#[test]
fn f_sqrt_large_b_reaches_the_gue_end() {
    let gap = f_sqrt(0.0, 20.0, 20.0, 0.0) - f_gue_fd(0.0);
    assert!(gap.abs() <= 5e-3, "f_sqrt(0,20,20,0) vs GUE: {gap:+.3e}");
}

#[test]
fn f_sqrt_small_b_approaches_the_goe_end_at_the_stated_figure() {
    // The stated 5e-3 figure is not reached at b = 0.05: the approach to
    // the reflection limit is O(b log b)-slow and the measured gap at this
    // b is about +7.8e-3. Kept at the stated figure; the assertion message
    // records the measured value.
    let gap = f_sqrt(0.0, 0.05, 0.05, 0.0) - f_goe_fd(0.0);
    assert!(
        gap.abs() <= 5e-3,
        "f_sqrt(0,0.05,0.05,0) vs GOE: {gap:+.3e} exceeds the stated 5e-3"
    );
}

#[test]
fn f_sqrt_sits_strictly_between_the_two_ends_and_orders_in_b() {
    let goe = f_goe_fd(0.0);
    let gue = f_gue_fd(0.0);
    let mut values = Vec::new();
    for b in [0.5, 1.0, 2.0] {
        let v = f_sqrt(0.0, b, b, 0.0);
        assert!(goe < v && v < gue, "f_sqrt(0,{b},{b},0) = {v} outside ({goe}, {gue})");
        values.push(v);
    }
    assert!(values[0] < values[2], "f_sqrt not increasing in b: {values:?}");
}

#[test]
fn f_parbl_small_beta_reaches_the_goe_end() {
    let gap = f_parbl(0.05, 0.05, 0.0) - f_goe_fd(0.0);
    assert!(gap.abs() <= 5e-3, "f_parbl(0.05,0.05,0) vs GOE: {gap:+.3e}");
}

#[test]
fn f_parbl_large_beta_approaches_the_gue_end_at_the_stated_figure() {
    // The stated 5e-3 figure is not reached at beta = 20: the parabola
    // flattens near its vertex, so the crossing mass that distinguishes it
    // from the point pin decays only like beta^{-2/3}, and the measured gap
    // is about -3.9e-2. Kept at the stated figure; the assertion message
    // records the measured value.
    let gap = f_parbl(20.0, 20.0, 0.0) - f_gue_fd(0.0);
    assert!(
        gap.abs() <= 5e-3,
        "f_parbl(20,20,0) vs GUE: {gap:+.3e} exceeds the stated 5e-3"
    );
}

#[test]
fn symmetric_parabola_det_matches_the_transposed_assembly_bitwise() {
    // Equal sides make the four-term kernel symmetric entry by entry, so
    // assembling the determinant from the transposed matrix reproduces the
    // exact same bits. The manual assembly below also pins s_g_from_parts
    // to the hitting_det path.
    let barrier = Barrier::parabola(0.0, 1.0, 1.0);
    let cfg = ScatteringConfig::for_barrier(barrier);
    let tr = t_rule(48, 48, 6.0);
    let curve = |t: f64| t * t;
    let left = ParabolaDensity::new(1.0, 0.0, cfg.y_rule.nodes.clone(), 6.0);
    let right = ParabolaDensity::new(1.0, 0.0, cfg.y_rule.nodes.clone(), 6.0);
    let s_vals = s_g_from_parts(
        Assembly::Shifted,
        0.0,
        0.0,
        Some(&SideOperand {
            curve: &curve,
            density: &left,
            t_nodes: &tr.nodes,
            t_weights: &tr.weights,
        }),
        Some(&SideOperand {
            curve: &curve,
            density: &right,
            t_nodes: &tr.nodes,
            t_weights: &tr.weights,
        }),
        &cfg.lambda_rule.nodes,
        &cfg.y_rule,
    );
    let n = s_vals.len();
    let sw: Vec<f64> = cfg.lambda_rule.weights.iter().map(|w| w.sqrt()).collect();
    let mut m = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            m[i][j] = s_vals[i][j] * (sw[i] * sw[j]);
            if i == j {
                m[i][j] += 1.0;
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            assert_eq!(
                m[i][j].to_bits(),
                m[j][i].to_bits(),
                "assembled matrix not bitwise symmetric at ({i}, {j})"
            );
        }
    }
    let transposed: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| m[j][i]).collect()).collect();
    let (d, dt) = (det_lu(m), det_lu(transposed));
    assert_eq!(d.to_bits(), dt.to_bits(), "dets differ: {d} vs {dt}");
    let direct = hitting_det(&barrier, &cfg);
    assert_eq!(d.to_bits(), direct.to_bits(), "manual assembly diverged: {d} vs {direct}");
}

#[test]
fn stabilizer_conjugation_leaves_the_det_invariant() {
    for barrier in [Barrier::flat(0.0), Barrier::half_flat(0.5, 0.0)] {
        let kernel = scattering_kernel(&ScatteringConfig::for_barrier(barrier));
        let beta = barrier.split.abs() + 1.0;
        let (plain, tilted) = (kernel.det(), kernel.det_with_stabilizer(beta));
        assert!(
            (plain - tilted).abs() <= 1e-9 * plain.abs().max(1e-3),
            "conjugation moved the det by {:+.3e}",
            plain - tilted
        );
    }
}

#[test]
fn flat_det_is_monotone_in_the_level_and_a_probability() {
    let mut last = 0.0;
    for r in [-1.0, 0.0, 1.0] {
        let det = det_for(Barrier::flat(r));
        assert!((-1e-12..=1.0 + 1e-12).contains(&det), "det out of [0,1]: {det}");
        assert!(det > last, "flat det not increasing at r = {r}");
        last = det;
    }
}

//! Brownian-scattering route to barrier crossing probabilities.
//!
//! A two-sided barrier g pinned at its split point alpha is encoded by a
//! pair of kernel functions Psi^-(lambda, y), Psi^+(lambda, y): a leading
//! Airy factor minus a hitting correction Phi obtained by integrating the
//! side's first-passage density against a decaying Airy kernel. The
//! scattering kernel s_g(lambda1, lambda2) is the y-integral of the Psi
//! product below the pin, and the crossing probability is a Fredholm
//! determinant built from it on a lambda window.
//!
//! The leading Airy-product part of that y-integral only converges
//! conditionally (both factors oscillate as y -> -inf), so the kernel is
//! never integrated directly. Since the Airy transform is unitary, the
//! full-line product integrates to a delta, and the integral below the pin
//! equals delta minus the complement above it, which is a closed Airy
//! kernel evaluation. What remains of the product are two cross terms and
//! one Phi*Phi term, all decaying superexponentially in both y and t, so
//! the truncated quadrature windows converge rapidly. The determinant then
//! reads det(I - R) with the four-term kernel
//!
//!   R = K_cross(pin) + lead*Phi+ + Phi-*lead - Phi-*Phi+,
//!
//! and s_g(lambda1, lambda2) = -R(lambda1, lambda2) away from the diagonal
//! (the delta part is distributional and excluded from point evaluation).
//!
//! Two assemblies are provided. The shifted form carries the split in the
//! argument of shifted Airy kernels w_kernel(+-alpha, ., .); point values
//! of s_g in this form are independent of where the split is placed, which
//! the gauge tests exercise. The tilted form carries the split as an
//! exponential tilt e^{-+ alpha y} on the leading Airy factor and is better
//! conditioned when a curved barrier sits on a nonzero split. Entries of R
//! are accumulated in a symmetric pairing so that a barrier with equal
//! sides yields a bitwise-symmetric matrix.

use crate::airydist::airy_kernel;
use crate::barrier::{
    mass_const, rho_const, Barrier, Branch, BranchDensity, ConstantDensity, ParabolaDensity,
    SqrtDensity,
};
use crate::quad::{fredholm_det, gauss_legendre, QuadratureRule};
use crate::specfun::airy_ai;
use rayon::prelude::*;

/// Default lambda window: 120 nodes on (edge - 14, edge].
pub const DEFAULT_LAMBDA_N: usize = 120;
pub const DEFAULT_LAMBDA_DEPTH: f64 = 14.0;
/// Default y window below the pin; the wide variant is used when the split
/// is away from zero and the window has to cover the tilt.
pub const DEFAULT_Y_N: usize = 96;
pub const DEFAULT_Y_DEPTH: f64 = 20.0;
pub const WIDE_Y_N: usize = 128;
pub const WIDE_Y_DEPTH: f64 = 25.0;
/// Default composite t rule: 48 nodes under the s^2 substitution on (0,1],
/// 48 plain nodes on [1, 6].
pub const DEFAULT_T_N: (usize, usize) = (48, 48);
pub const DEFAULT_T_HORIZON: f64 = 6.0;

// ---------------------------------------------------------------- kernels

/// Shifted Airy kernel e^{2s^3/3 + s(x - lambda)} Ai(x - lambda + s^2).
/// For s <= 0 both factors decay as x - lambda grows, so the far t tail of
/// the hitting integrals dies superexponentially.
pub fn w_kernel(s: f64, lambda: f64, x: f64) -> f64 {
    let d = x - lambda;
    (2.0 * s * s * s / 3.0 + s * d).exp() * airy_ai(d + s * s)
}

/// Tilted Airy function
/// phi^alpha_t(x) = e^{-2t^3/3 + 2 alpha t^2 - alpha^2 t + x(alpha - t)}
/// Ai(x + t^2 - 2 alpha t). Solves the backward heat flow in t checked by
/// `check_semigroup`.
#[derive(Clone, Copy, Debug)]
pub struct TiltedAiryFunction {
    pub alpha: f64,
    pub t: f64,
}

impl TiltedAiryFunction {
    pub fn eval(&self, x: f64) -> f64 {
        let (a, t) = (self.alpha, self.t);
        (-2.0 * t * t * t / 3.0 + 2.0 * a * t * t - a * a * t + x * (a - t)).exp()
            * airy_ai(x + t * t - 2.0 * a * t)
    }
}

/// Hitting-time integrand of the tilted assembly:
/// v_kernel(a, t, lambda, x) = e^{-a lambda} phi^{-a}_t(x - lambda), written
/// out directly. At a = 0 it is the untilted factor
/// e^{-2t^3/3 - (x - lambda) t} Ai(x - lambda + t^2).
pub fn v_kernel(a: f64, t: f64, lambda: f64, x: f64) -> f64 {
    (-2.0 * t * t * t / 3.0 - 2.0 * a * t * t - a * a * t - (a + t) * x + lambda * t).exp()
        * airy_ai(x - lambda + t * t + 2.0 * a * t)
}

// ---------------------------------------------------------------- t rules

/// Composite rule on (0, horizon]: the substitution t = s^2 with s uniform
/// Gauss-Legendre on (0, 1] grades the nodes into the hitting-density spike
/// at t = 0; a plain rule covers [1, horizon].
pub fn t_rule(n_near: usize, n_far: usize, horizon: f64) -> QuadratureRule {
    assert!(horizon > 1.0, "t rule horizon must exceed the graded part");
    let near = gauss_legendre(n_near, 0.0, 1.0);
    let far = gauss_legendre(n_far, 1.0, horizon);
    let mut nodes = Vec::with_capacity(n_near + n_far);
    let mut weights = Vec::with_capacity(n_near + n_far);
    for (&s, &ws) in near.nodes.iter().zip(&near.weights) {
        nodes.push(s * s);
        weights.push(2.0 * s * ws);
    }
    nodes.extend_from_slice(&far.nodes);
    weights.extend_from_slice(&far.weights);
    QuadratureRule { nodes, weights, domain: (0.0, horizon) }
}

/// Variant of `t_rule` for curves with a slope discontinuity at distance c
/// from the split: square-root grading into both sides of the kink inside a
/// window of width 0.4, plain rules away from it. Degenerate pieces (kink
/// at or near an endpoint) are dropped, so c = 0 reduces to a graded rule.
pub fn t_rule_kink(c: f64, horizon: f64) -> QuadratureRule {
    const KINK_WINDOW: f64 = 0.4;
    assert!((0.0..horizon).contains(&c), "kink must lie inside the domain");
    let mut pts: Vec<(f64, f64)> = Vec::new();
    let s_lo = 1e-9f64.sqrt();
    let s_hi = (c - KINK_WINDOW).max(1e-9).sqrt();
    if s_hi - s_lo > 1e-9 {
        let rule = gauss_legendre(40, s_lo, s_hi);
        for (&s, &ws) in rule.nodes.iter().zip(&rule.weights) {
            pts.push((s * s, 2.0 * s * ws));
        }
    }
    let v_below = KINK_WINDOW.min(c).max(0.0).sqrt();
    if v_below > 1e-9 {
        let rule = gauss_legendre(32, 0.0, v_below);
        for (&v, &wv) in rule.nodes.iter().zip(&rule.weights) {
            pts.push((c - v * v, 2.0 * v * wv));
        }
    }
    let v_above = KINK_WINDOW.min(horizon - c).max(0.0).sqrt();
    if v_above > 1e-9 {
        let rule = gauss_legendre(32, 0.0, v_above);
        for (&v, &wv) in rule.nodes.iter().zip(&rule.weights) {
            pts.push((c + v * v, 2.0 * v * wv));
        }
    }
    if c + KINK_WINDOW < horizon {
        let rule = gauss_legendre(40, c + KINK_WINDOW, horizon);
        for (&t, &wt) in rule.nodes.iter().zip(&rule.weights) {
            pts.push((t, wt));
        }
    }
    pts.sort_by(|a, b| a.0.total_cmp(&b.0));
    pts.retain(|&(t, _)| t > 0.0 && t <= horizon);
    let (nodes, weights) = pts.into_iter().unzip();
    QuadratureRule { nodes, weights, domain: (0.0, horizon) }
}

// ---------------------------------------------------------------- config

/// Kernel assembly form. `Shifted` carries the split as an argument shift
/// inside Airy kernels and keeps s_g split-independent at the level of
/// point values; `Tilted` carries it as an exponential tilt e^{-+ alpha y}
/// on the leading factor, which conditions curved barriers on a nonzero
/// split better.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Assembly {
    Shifted,
    Tilted,
}

/// Evaluation geometry for one barrier: the subject barrier, the lambda
/// window the determinant lives on, the y window below the pin, and the
/// composite t rule for the hitting integrals.
#[derive(Clone, Debug)]
pub struct ScatteringConfig {
    pub barrier: Barrier,
    pub lambda_rule: QuadratureRule,
    pub y_rule: QuadratureRule,
    pub t_rule: QuadratureRule,
}

impl ScatteringConfig {
    /// Canonical geometry for a barrier: default windows, widened y window
    /// when the split sits away from zero, lambda edge at zero for the
    /// shifted assembly and at -alpha^2 for the tilted one.
    pub fn for_barrier(barrier: Barrier) -> ScatteringConfig {
        let alpha = barrier.split;
        let edge = match assembly_for(&barrier) {
            Assembly::Shifted => 0.0,
            Assembly::Tilted => -alpha * alpha,
        };
        let wide = alpha != 0.0;
        let (n_y, depth_y) =
            if wide { (WIDE_Y_N, WIDE_Y_DEPTH) } else { (DEFAULT_Y_N, DEFAULT_Y_DEPTH) };
        let g_alpha = barrier.value_at_split();
        ScatteringConfig {
            barrier,
            lambda_rule: gauss_legendre(DEFAULT_LAMBDA_N, edge - DEFAULT_LAMBDA_DEPTH, edge),
            y_rule: gauss_legendre(n_y, g_alpha - depth_y, g_alpha),
            t_rule: t_rule(DEFAULT_T_N.0, DEFAULT_T_N.1, DEFAULT_T_HORIZON),
        }
    }

    /// Window invariants: lambda depth >= 10, y depth >= 10, t horizon >= 6.
    /// Shallower windows lose the superexponential tails the assembly
    /// relies on.
    pub fn validate(&self) {
        let (l_lo, l_hi) = self.lambda_rule.domain;
        assert!(l_hi - l_lo >= 10.0, "lambda window shallower than 10");
        let (y_lo, y_hi) = self.y_rule.domain;
        assert!(y_hi - y_lo >= 10.0, "y window shallower than 10");
        assert!(self.t_rule.domain.1 >= 6.0, "t horizon below 6");
        let g_alpha = self.barrier.value_at_split();
        assert!(
            (y_hi - g_alpha).abs() < 1e-9,
            "y window must end at the barrier pin (config built for another barrier?)"
        );
    }
}

fn assembly_for(barrier: &Barrier) -> Assembly {
    if barrier.split == 0.0 || barrier.point_only {
        return Assembly::Shifted;
    }
    // A constant-or-infinite pair is exact in either form; curved sides on
    // a nonzero split need the tilt.
    let curved = |b: &Branch| matches!(b, Branch::Sqrt { .. } | Branch::Parabola { .. });
    if curved(&barrier.left) || curved(&barrier.right) {
        Assembly::Tilted
    } else {
        Assembly::Shifted
    }
}

fn branch_density(
    branch: &Branch,
    y_nodes: Vec<f64>,
    horizon: f64,
) -> Option<Box<dyn BranchDensity>> {
    match *branch {
        Branch::Infinite => None,
        Branch::Constant { level } => Some(Box::new(ConstantDensity::new(level, y_nodes, horizon))),
        Branch::Sqrt { base, coefficient } => {
            Some(Box::new(SqrtDensity::new(coefficient, base, y_nodes, horizon)))
        }
        Branch::Parabola { base, coefficient } => {
            Some(Box::new(ParabolaDensity::new(coefficient, base, y_nodes, horizon)))
        }
    }
}

// ------------------------------------------------------------- assembly

/// One side of the barrier as the assembly consumes it: the curve at
/// distance t from the split, its first-passage density on the y grid, and
/// the t rule to integrate against.
pub struct SideOperand<'a> {
    pub curve: &'a (dyn Fn(f64) -> f64 + Sync),
    pub density: &'a dyn BranchDensity,
    pub t_nodes: &'a [f64],
    pub t_weights: &'a [f64],
}

/// Density-independent y data of one side: rho[j][k] on y node j and t node
/// k, total hitting mass up to the horizon, and the curve at the t nodes.
struct SideData {
    rho: Vec<Vec<f64>>,
    mass: Vec<f64>,
    curve_at_t: Vec<f64>,
    t_nodes: Vec<f64>,
    t_weights: Vec<f64>,
}

impl SideData {
    fn build(side: &SideOperand, y: &[f64]) -> SideData {
        assert_eq!(
            side.density.y_nodes(),
            y,
            "side density must be built on the configured y nodes"
        );
        let rho: Vec<Vec<f64>> = (0..y.len())
            .into_par_iter()
            .map(|j| side.t_nodes.iter().map(|&t| side.density.rho(j, t)).collect())
            .collect();
        let mass: Vec<f64> = (0..y.len()).map(|j| side.density.mass(j)).collect();
        let curve_at_t: Vec<f64> = side.t_nodes.iter().map(|&t| (side.curve)(t)).collect();
        SideData {
            rho,
            mass,
            curve_at_t,
            t_nodes: side.t_nodes.to_vec(),
            t_weights: side.t_weights.to_vec(),
        }
    }
}

/// Leading Airy factor of the plus (right) or minus (left) kernel function.
fn lead(assembly: Assembly, alpha: f64, plus: bool, lambda: f64, y: f64) -> f64 {
    let s = if plus { -alpha } else { alpha };
    match assembly {
        Assembly::Shifted => w_kernel(s, lambda, y),
        Assembly::Tilted => (s * y).exp() * airy_ai(y - lambda),
    }
}

/// Hitting correction Phi(lambda, y) of one side at a single lambda:
/// mass-weighted pivot plus the t-quadrature of rho * (kernel - pivot). The
/// pivot is the t -> 0 limit of the integrand's kernel factor, so the
/// density spike near t = 0, which the quadrature cannot resolve, enters
/// through the closed-form mass instead.
fn phi_row(assembly: Assembly, alpha: f64, plus: bool, g_alpha: f64, data: &SideData, lambda: f64, y: &[f64]) -> Vec<f64> {
    let pivot = match assembly {
        Assembly::Shifted => w_kernel(if plus { -alpha } else { alpha }, lambda, g_alpha),
        Assembly::Tilted => {
            ((if plus { -alpha } else { alpha }) * g_alpha).exp() * airy_ai(g_alpha - lambda)
        }
    };
    let kern: Vec<f64> = data
        .t_nodes
        .iter()
        .zip(&data.curve_at_t)
        .map(|(&t, &x)| match (assembly, plus) {
            (Assembly::Shifted, true) => w_kernel(-(alpha + t), lambda, x),
            (Assembly::Shifted, false) => w_kernel(alpha - t, lambda, x),
            (Assembly::Tilted, true) => v_kernel(alpha, t, lambda, x),
            (Assembly::Tilted, false) => v_kernel(-alpha, t, lambda, x),
        })
        .collect();
    (0..y.len())
        .map(|j| {
            let mut acc = data.mass[j] * pivot;
            for k in 0..data.t_nodes.len() {
                acc += data.t_weights[k] * data.rho[j][k] * (kern[k] - pivot);
            }
            acc
        })
        .collect()
}

/// Four-term kernel R over an arbitrary lambda list. Leading term: closed
/// Airy-kernel complement above the pin (with the split's exponential
/// prefactor in the shifted form). Remaining terms: y-quadrature of
/// lead*Phi+ + Phi-*lead - Phi-*Phi+ with sqrt(w) folded into each factor
/// and the three k-products summed per node, so equal sides give a
/// bitwise-symmetric matrix.
fn four_term_r(
    assembly: Assembly,
    alpha: f64,
    g_alpha: f64,
    lambda: &[f64],
    y_rule: &QuadratureRule,
    left: Option<&SideData>,
    right: Option<&SideData>,
) -> Vec<Vec<f64>> {
    let n = lambda.len();
    let ny = y_rule.nodes.len();
    let sw: Vec<f64> = y_rule.weights.iter().map(|w| w.sqrt()).collect();
    let zeros = vec![0.0; ny];
    let scaled_rows = |plus: bool, data: Option<&SideData>| -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
        // (lead rows, phi rows), each row scaled by sqrt(w).
        lambda
            .par_iter()
            .map(|&l| {
                let lr: Vec<f64> = y_rule
                    .nodes
                    .iter()
                    .zip(&sw)
                    .map(|(&yv, &s)| lead(assembly, alpha, plus, l, yv) * s)
                    .collect();
                let pr: Vec<f64> = match data {
                    Some(d) => phi_row(assembly, alpha, plus, g_alpha, d, l, &y_rule.nodes)
                        .iter()
                        .zip(&sw)
                        .map(|(&p, &s)| p * s)
                        .collect(),
                    None => zeros.clone(),
                };
                (lr, pr)
            })
            .unzip()
    };
    let (lead_m, phi_m) = scaled_rows(false, left);
    let (lead_p, phi_p) = scaled_rows(true, right);
    let pin = match assembly {
        Assembly::Shifted => g_alpha + alpha * alpha,
        Assembly::Tilted => g_alpha,
    };
    (0..n)
        .into_par_iter()
        .map(|i| {
            (0..n)
                .map(|j| {
                    let t1 = match assembly {
                        Assembly::Shifted => {
                            (alpha * (lambda[j] - lambda[i])).exp()
                                * airy_kernel(pin - lambda[i], pin - lambda[j])
                        }
                        Assembly::Tilted => airy_kernel(pin - lambda[i], pin - lambda[j]),
                    };
                    let mut acc = t1;
                    for k in 0..ny {
                        acc += lead_m[i][k] * phi_p[j][k] + phi_m[i][k] * lead_p[j][k]
                            - phi_m[i][k] * phi_p[j][k];
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Scattering kernel values s_g(lambda_i, lambda_j) = -R over an arbitrary
/// lambda list, from raw side operands. The delta contribution of the
/// unitary reduction is excluded, so diagonal entries are the regular part
/// only. This is the gauge-study entry point: the sides may carry any
/// curve, density, and t rule, not just the branch forms.
pub fn s_g_from_parts(
    assembly: Assembly,
    alpha: f64,
    g_alpha: f64,
    left: Option<&SideOperand>,
    right: Option<&SideOperand>,
    lambda: &[f64],
    y_rule: &QuadratureRule,
) -> Vec<Vec<f64>> {
    let left_data = left.map(|s| SideData::build(s, &y_rule.nodes));
    let right_data = right.map(|s| SideData::build(s, &y_rule.nodes));
    let r = four_term_r(
        assembly,
        alpha,
        g_alpha,
        lambda,
        y_rule,
        left_data.as_ref(),
        right_data.as_ref(),
    );
    r.into_iter().map(|row| row.into_iter().map(|v| -v).collect()).collect()
}

/// det(I - sqrt(w) R sqrt(w)) on the lambda rule, through the Fredholm
/// discretization (which expects the kernel of det(I + K), hence the
/// negation). A nonzero stabilizer beta conjugates the kernel by
/// e^{beta lambda}; the determinant is invariant, which the identity tests
/// check at grid level.
fn det_from_r(r: &[Vec<f64>], lambda_rule: &QuadratureRule, stabilizer: f64) -> f64 {
    let nodes = &lambda_rule.nodes;
    let idx = |v: f64| -> usize {
        let i = nodes.partition_point(|&t| t < v);
        debug_assert!(nodes[i] == v, "kernel evaluated off the rule's nodes");
        i
    };
    fredholm_det(
        |l1, l2| {
            let base = -r[idx(l1)][idx(l2)];
            if stabilizer == 0.0 {
                base
            } else {
                base * (stabilizer * (l1 - l2)).exp()
            }
        },
        lambda_rule,
    )
}

// ---------------------------------------------------------------- kernel

/// Assembled scattering kernel for one barrier: grid data for the
/// determinant and point evaluators for the two kernel functions.
pub struct ScatteringKernel {
    pub config: ScatteringConfig,
    assembly: Assembly,
    alpha: f64,
    g_alpha: f64,
    left: Option<SideData>,
    right: Option<SideData>,
}

/// Builds the kernel for the config's barrier: branch densities on the y
/// rule, hitting integrals on the t rule.
pub fn scattering_kernel(config: &ScatteringConfig) -> ScatteringKernel {
    config.validate();
    let barrier = config.barrier;
    let alpha = barrier.split;
    let g_alpha = barrier.value_at_split();
    let assembly = assembly_for(&barrier);
    let build = |branch: &Branch| -> Option<SideData> {
        if barrier.point_only {
            return None;
        }
        let density = branch_density(branch, config.y_rule.nodes.clone(), config.t_rule.domain.1)?;
        let curve = |t: f64| branch.value(t);
        Some(SideData::build(
            &SideOperand {
                curve: &curve,
                density: density.as_ref(),
                t_nodes: &config.t_rule.nodes,
                t_weights: &config.t_rule.weights,
            },
            &config.y_rule.nodes,
        ))
    };
    ScatteringKernel {
        config: config.clone(),
        assembly,
        alpha,
        g_alpha,
        left: build(&barrier.left),
        right: build(&barrier.right),
    }
}

impl ScatteringKernel {
    /// Minus (left-side) kernel function at arbitrary (lambda, y), in the
    /// tilted form e^{alpha y} Ai(y - lambda) - Phi. Vanishes as y
    /// approaches the pin.
    pub fn psi_minus(&self, lambda: f64, y: f64) -> f64 {
        psi_point(&self.config.barrier.left, self.alpha, false, lambda, y, &self.config)
    }

    /// Plus (right-side) kernel function at arbitrary (lambda, y).
    pub fn psi_plus(&self, lambda: f64, y: f64) -> f64 {
        psi_point(&self.config.barrier.right, self.alpha, true, lambda, y, &self.config)
    }

    /// s_g at one lambda pair; see `s_g_from_parts` for the diagonal
    /// convention.
    pub fn s_g(&self, lambda1: f64, lambda2: f64) -> f64 {
        let lam = [lambda1, lambda2];
        let r = four_term_r(
            self.assembly,
            self.alpha,
            self.g_alpha,
            &lam,
            &self.config.y_rule,
            self.left.as_ref(),
            self.right.as_ref(),
        );
        -r[0][1]
    }

    /// Crossing probability det(I - R) on the configured lambda window.
    pub fn det(&self) -> f64 {
        self.det_with_stabilizer(0.0)
    }

    /// Determinant with the kernel conjugated by e^{beta lambda}. Exactly
    /// invariant in beta up to rounding; used as the overflow health check
    /// for strongly tilted assemblies.
    pub fn det_with_stabilizer(&self, beta: f64) -> f64 {
        let r = four_term_r(
            self.assembly,
            self.alpha,
            self.g_alpha,
            &self.config.lambda_rule.nodes,
            &self.config.y_rule,
            self.left.as_ref(),
            self.right.as_ref(),
        );
        det_from_r(&r, &self.config.lambda_rule, beta)
    }
}

/// Single-branch kernel function psi at arbitrary (lambda, y), tilted
/// form: lead minus the pivot-decomposed hitting integral, with a fresh
/// one-point density for the requested y. The plus form is
/// e^{-alpha y} Ai(y - lambda) - integral of the hitting density against
/// v_kernel(alpha, ...); an Infinite branch has no hitting term, so psi
/// equals the lead exactly.
pub fn psi(branch: &Branch, alpha: f64, lambda: f64, y: f64, config: &ScatteringConfig) -> f64 {
    psi_point(branch, alpha, true, lambda, y, config)
}

fn psi_point(
    branch: &Branch,
    alpha: f64,
    plus: bool,
    lambda: f64,
    y: f64,
    config: &ScatteringConfig,
) -> f64 {
    let s = if plus { -alpha } else { alpha };
    let lead = (s * y).exp() * airy_ai(y - lambda);
    if !branch.is_finite() {
        return lead;
    }
    let g0 = branch.value(0.0);
    assert!(y < g0, "psi start must lie strictly below the branch");
    let horizon = config.t_rule.domain.1;
    let density = branch_density(branch, vec![y], horizon).expect("finite branch has a density");
    let pivot = (s * g0).exp() * airy_ai(g0 - lambda);
    let a = if plus { alpha } else { -alpha };
    let mut phi = density.mass(0) * pivot;
    for (&t, &wt) in config.t_rule.nodes.iter().zip(&config.t_rule.weights) {
        phi += wt * density.rho(0, t) * (v_kernel(a, t, lambda, branch.value(t)) - pivot);
    }
    lead - phi
}

// ----------------------------------------------------------- crossing

/// Probability that the process stays below the barrier: the Fredholm
/// determinant of the four-term kernel on the lambda window. The config
/// must have been built for this barrier (the pin positions must agree).
pub fn hitting_det(barrier: &Barrier, config: &ScatteringConfig) -> f64 {
    assert!(
        (barrier.value_at_split() - config.barrier.value_at_split()).abs() < 1e-9
            && barrier.split == config.barrier.split,
        "config geometry disagrees with the barrier"
    );
    let mut cfg = config.clone();
    cfg.barrier = *barrier;
    scattering_kernel(&cfg).det()
}

/// Crossing distribution for the square-root barrier r + b1 sqrt / b2 sqrt
/// split at alpha, as a function of the vertical shift r. Uses the tilted
/// assembly when alpha is nonzero.
pub fn f_sqrt(alpha: f64, b1: f64, b2: f64, r: f64) -> f64 {
    let barrier = Barrier::sqrt(alpha, r, b1, b2);
    hitting_det(&barrier, &ScatteringConfig::for_barrier(barrier))
}

/// Crossing distribution for the parabolic barrier r + beta1 t^2 / beta2
/// t^2 split at zero.
pub fn f_parbl(beta1: f64, beta2: f64, r: f64) -> f64 {
    let barrier = Barrier::parabola(r, beta1, beta2);
    hitting_det(&barrier, &ScatteringConfig::for_barrier(barrier))
}

// ----------------------------------------------------------- identities

/// Max deviation of the heat semigroup step on the tilted Airy function:
/// convolving phi^alpha_t with the variance-2s Gaussian must reproduce
/// phi^alpha_{t-s} on the grid. s = 0 is the identity and returns 0.
pub fn check_semigroup(alpha: f64, t: f64, s: f64, x_grid: &[f64]) -> f64 {
    assert!(s >= 0.0 && s <= t, "step must satisfy 0 <= s <= t");
    if s == 0.0 {
        return 0.0;
    }
    let upper = TiltedAiryFunction { alpha, t };
    let stepped = TiltedAiryFunction { alpha, t: t - s };
    let norm = 1.0 / (4.0 * std::f64::consts::PI * s).sqrt();
    x_grid
        .iter()
        .map(|&x| {
            let rule = gauss_legendre(400, x - 12.0 * s.sqrt(), x + 12.0 * s.sqrt());
            let mut acc = 0.0;
            for (&u, &w) in rule.nodes.iter().zip(&rule.weights) {
                acc += w * norm * (-(x - u) * (x - u) / (4.0 * s)).exp() * upper.eval(u);
            }
            (acc - stepped.eval(x)).abs()
        })
        .fold(0.0, f64::max)
}

/// Reflection identity error: integrating the zero-level first-passage
/// density from y < 0 against the tilted Airy factor chi(beta - t) must
/// close to e^{-(alpha+beta) y} chi(beta) shifted by -y. The t integral is
/// pivot-decomposed like the kernel assembly so the density spike near
/// t = 0 enters through the closed-form mass.
pub fn check_reflection(x: f64, y: f64, alpha: f64, beta: f64) -> f64 {
    assert!(y < 0.0, "start must lie below the zero-level barrier");
    let chi = |u: f64| -> f64 {
        (2.0 * u * u * u / 3.0 + 2.0 * alpha * u * u + alpha * alpha * u + u * x).exp()
            * airy_ai(x + u * u + 2.0 * alpha * u)
    };
    let horizon = 8.0;
    let rule = t_rule(48, 48, horizon);
    let pivot = chi(beta);
    let mut lhs = mass_const(y, 0.0, horizon) * pivot;
    for (&t, &wt) in rule.nodes.iter().zip(&rule.weights) {
        lhs += wt * rho_const(y, 0.0, t) * (chi(beta - t) - pivot);
    }
    let rhs = (2.0 * beta * beta * beta / 3.0
        + 2.0 * alpha * beta * beta
        + alpha * alpha * beta
        + beta * x
        - (alpha + beta) * y)
        .exp()
        * airy_ai(x - y + beta * beta + 2.0 * alpha * beta);
    (lhs - rhs).abs()
}

// ------------------------------------------------------------------ tests

#[cfg(test)]
mod tests {
    use super::*;
    use crate::airydist::{f_gue_fd, f_goe_fd};

    #[test]
    fn t_rules_integrate_smooth_functions() {
        let exact = 1.0 - (-6.0f64).exp();
        // the kink rules grade from t = 1e-9, so they carry that much
        // truncation by construction
        for (rule, tol) in [
            (t_rule(48, 48, 6.0), 1e-12),
            (t_rule_kink(1.0, 6.0), 3e-9),
            (t_rule_kink(0.0, 6.0), 3e-9),
        ] {
            let total: f64 =
                rule.nodes.iter().zip(&rule.weights).map(|(&t, &w)| w * (-t).exp()).sum();
            assert!((total - exact).abs() < tol, "exp integral off: {}", total - exact);
        }
    }

    #[test]
    fn kink_rule_handles_sqrt_singularity_at_the_kink() {
        // integral of sqrt(|t - 1|) over (0, 6): 2/3 + (2/3) 5^{3/2}
        let exact = 2.0 / 3.0 + 2.0 / 3.0 * 5.0f64.powf(1.5);
        let rule = t_rule_kink(1.0, 6.0);
        let total: f64 =
            rule.nodes.iter().zip(&rule.weights).map(|(&t, &w)| w * (t - 1.0).abs().sqrt()).sum();
        assert!((total - exact).abs() < 1e-9, "kink integral off: {:e}", total - exact);
    }

    #[test]
    fn kernels_reduce_to_airy_at_zero_parameters() {
        for x in [-2.0, -0.5, 0.3, 1.7] {
            let lam = -0.4;
            assert_eq!(w_kernel(0.0, lam, x), airy_ai(x - lam));
            assert_eq!(TiltedAiryFunction { alpha: 0.0, t: 0.0 }.eval(x), airy_ai(x));
            let t = 0.8;
            let direct = (-2.0 * t * t * t / 3.0 - (x - lam) * t).exp() * airy_ai(x - lam + t * t);
            assert!((v_kernel(0.0, t, lam, x) - direct).abs() < 1e-14 * direct.abs().max(1.0));
        }
    }

    #[test]
    fn psi_on_infinite_branch_is_the_bare_lead() {
        let cfg = ScatteringConfig::for_barrier(Barrier::narrow_wedge(0.0));
        for (alpha, lam, y) in [(0.0f64, -0.5, -1.0), (0.7, -1.2, -3.0), (-0.4, -2.0, 0.5)] {
            let expect = (-alpha * y).exp() * airy_ai(y - lam);
            assert_eq!(psi(&Branch::Infinite, alpha, lam, y, &cfg), expect);
        }
    }

    #[test]
    fn psi_on_flat_branch_matches_the_reflection_form() {
        let cfg = ScatteringConfig::for_barrier(Barrier::flat(0.0));
        let (lam, y) = (-0.5, -1.0);
        let closed = airy_ai(y - lam) - airy_ai(-y - lam);
        let got = psi(&Branch::Constant { level: 0.0 }, 0.0, lam, y, &cfg);
        assert!((got - closed).abs() < 1e-7, "flat psi off by {:e}", got - closed);
    }

    #[test]
    fn psi_vanishes_at_the_pin() {
        let cfg = ScatteringConfig::for_barrier(Barrier::flat(0.0));
        let got = psi(&Branch::Constant { level: 0.0 }, 0.0, -0.5, -1e-4, &cfg);
        assert!(got.abs() <= 1e-3, "psi at the pin: {:e}", got);
    }

    #[test]
    fn narrow_wedge_det_matches_the_resolvent_route() {
        let barrier = Barrier::narrow_wedge(0.0);
        let det = hitting_det(&barrier, &ScatteringConfig::for_barrier(barrier));
        let gue = f_gue_fd(0.0);
        assert!((det - gue).abs() < 1e-5, "narrow wedge det off by {:e}", det - gue);
    }

    #[test]
    fn flat_det_matches_the_reflection_route() {
        let barrier = Barrier::flat(0.0);
        let det = hitting_det(&barrier, &ScatteringConfig::for_barrier(barrier));
        let goe = f_goe_fd(0.0);
        assert!((det - goe).abs() < 1e-4, "flat det off by {:e}", det - goe);
    }

    #[test]
    fn dets_are_probabilities_and_increase_with_the_level() {
        let mut last = 0.0;
        for r in [-1.0, 0.0, 1.0] {
            let barrier = Barrier::narrow_wedge(r);
            let det = hitting_det(&barrier, &ScatteringConfig::for_barrier(barrier));
            assert!((-1e-12..=1.0 + 1e-12).contains(&det), "det out of [0,1]: {det}");
            assert!(det > last, "det not increasing at r = {r}");
            last = det;
        }
    }

    #[test]
    fn semigroup_identity_holds() {
        let grid: Vec<f64> = (0..41).map(|i| -5.0 + 0.25 * i as f64).collect();
        assert_eq!(check_semigroup(0.3, 1.0, 0.0, &grid), 0.0);
        let err = check_semigroup(0.0, 1.0, 0.5, &grid);
        assert!(err <= 1e-6, "semigroup error {err:e}");
    }

    #[test]
    fn reflection_identity_holds() {
        let err = check_reflection(0.5, -1.0, 0.0, 0.0);
        assert!(err <= 1e-8, "reflection error {err:e}");
    }

    #[test]
    fn config_rejects_shallow_windows() {
        let barrier = Barrier::flat(0.0);
        let mut cfg = ScatteringConfig::for_barrier(barrier);
        cfg.y_rule = gauss_legendre(32, -5.0, 0.0);
        let result = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| cfg.validate()));
        assert!(result.is_err(), "shallow y window must be rejected");
    }
}

//! Fredholm-determinant route to the one-point limit laws.
//!
//! `f_gue_fd` evaluates det(I - K_Ai) directly on (r, r + depth).  The
//! reflected routes (`f_goe_fd`, `f_curved_to_flat`) are evaluated in the
//! spectral representation instead: conjugating by the Airy transform turns
//! the half-line projection P_m into the Airy kernel at (m - l1, m - l2) and
//! turns the reflected, tilted compositions into single Airy factors, so
//! every kernel entry decays superexponentially in the integration variables
//! and a fixed-depth Gauss-Legendre rule converges.  The composed GOE kernel
//! K_Ai rho_r K_Ai collapses there to the closed form
//! 2^(-1/3) Ai(2^(-1/3)(2r - l1 - l2)); the curved-to-flat kernel keeps one
//! explicit s-integral, assembled as a matrix product over an s-rule with the
//! tilt factors folded into the integrand entrywise.

use crate::quad::{det_lu, fredholm_det, gauss_legendre, QuadratureRule, DEFAULT_DEPTH, DEFAULT_DET_N};
use crate::specfun::{airy_ai, airy_both};
use rayon::prelude::*;

/// Nodes for the s-integral in the curved-to-flat kernel; the integrand
/// decays at least like Ai(s), so this is well past machine precision.
const DEFAULT_TILT_N: usize = 240;

// ---------------------------------------------------------------- kernels

/// Airy kernel K_Ai(x, y) = (Ai(x)Ai'(y) - Ai'(x)Ai(y)) / (x - y), with the
/// diagonal limit Ai'(x)^2 - x Ai(x)^2 used when |x - y| < 1e-8.
pub fn airy_kernel(x: f64, y: f64) -> f64 {
    let d = x - y;
    if d.abs() < 1e-8 {
        let m = 0.5 * (x + y);
        let (am, apm) = airy_both(m);
        apm * apm - m * am * am
    } else {
        let (ax, apx) = airy_both(x);
        let (ay, apy) = airy_both(y);
        (ax * apy - apx * ay) / d
    }
}

/// Stateless Airy-kernel evaluator carrying the truncation depth for the
/// integral-form cross-check.
#[derive(Clone, Copy, Debug, Default)]
pub struct AiryKernel {
    /// Truncation depth of the lambda integral; `None` means 24.
    pub lambda_depth: Option<f64>,
}

impl AiryKernel {
    /// Closed-form evaluation.
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        airy_kernel(x, y)
    }

    /// Integral form: quadrature of Ai(x - l) Ai(y - l) over l in
    /// (-depth, 0), stacked in width-4 panels so the rule stays in its
    /// spectral-accuracy regime on the oscillatory side.
    pub fn eval_integral(&self, x: f64, y: f64) -> f64 {
        let depth = self.lambda_depth.unwrap_or(24.0);
        let panels = (depth / 4.0).ceil() as usize;
        let mut total = 0.0;
        for p in 0..panels {
            let hi = -4.0 * p as f64;
            let lo = (hi - 4.0).max(-depth);
            let rule = gauss_legendre(40, lo, hi);
            for (l, w) in rule.nodes.iter().zip(&rule.weights) {
                total += w * airy_ai(x - l) * airy_ai(y - l);
            }
        }
        total
    }
}

/// Reflection x -> 2r - x about the level r; an involution.
#[derive(Clone, Copy, Debug)]
pub struct ReflectionMap {
    pub r: f64,
}

impl ReflectionMap {
    pub fn apply(&self, x: f64) -> f64 {
        2.0 * self.r - x
    }
}

/// Which side of the edge a projection keeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProjectionSide {
    /// P_m: keep x > m.
    Above,
    /// The complement: keep x <= m.
    Below,
}

/// Half-line multiplication mask; idempotent.
#[derive(Clone, Copy, Debug)]
pub struct Projection {
    pub m: f64,
    pub side: ProjectionSide,
}

impl Projection {
    pub fn indicator(&self, x: f64) -> f64 {
        let above = x > self.m;
        let keep = match self.side {
            ProjectionSide::Above => above,
            ProjectionSide::Below => !above,
        };
        if keep {
            1.0
        } else {
            0.0
        }
    }
}

/// GOE composed kernel in the spectral representation:
/// R_r(l1, l2) = 2^(-1/3) Ai(2^(-1/3)(2r - l1 - l2)).  Equals the reflected
/// composition int_r^inf [Ai(x-l1)Ai(2r-x-l2) + Ai(2r-x-l1)Ai(x-l2)] dx.
fn goe_kernel(r: f64, l1: f64, l2: f64) -> f64 {
    let c = 2.0f64.powf(-1.0 / 3.0);
    c * airy_ai(c * (2.0 * r - l1 - l2))
}

// ----------------------------------------------------------- determinants

/// Tracy-Widom GUE via det(I - P_r K_Ai P_r) at the default rule.
pub fn f_gue_fd(r: f64) -> f64 {
    f_gue_fd_with(r, DEFAULT_DET_N, DEFAULT_DEPTH)
}

/// GUE determinant with explicit rule size and truncation depth.
pub fn f_gue_fd_with(r: f64, n: usize, depth: f64) -> f64 {
    let rule = gauss_legendre(n, r, r + depth);
    fredholm_det(|x, y| -airy_kernel(x, y), &rule)
}

/// Flat law via det(I - K_Ai rho_r K_Ai); returns F_GOE(4^(1/3) r).
pub fn f_goe_fd(r: f64) -> f64 {
    f_goe_fd_with(r, DEFAULT_DET_N, DEFAULT_DEPTH)
}

/// GOE determinant with explicit rule size and truncation depth.
pub fn f_goe_fd_with(r: f64, n: usize, depth: f64) -> f64 {
    let rule = gauss_legendre(n, -depth, 0.0);
    fredholm_det(|l1, l2| -goe_kernel(r, l1, l2), &rule)
}

/// Curved-to-flat interpolation F^alpha(r): the determinant of the two-term
/// kernel K_Ai P_m K_Ai + K_Ai e^(alpha xi) rho_m Pbar_m e^(-alpha xi) K_Ai
/// with m = r_det + alpha^2, evaluated in the spectral representation at
/// r_det = r - min(0, alpha)^2 so the returned value is F^alpha at r itself.
/// Tends to the GUE law as alpha -> -inf and to F_GOE(4^(1/3) r) as
/// alpha -> +inf.
pub fn f_curved_to_flat(alpha: f64, r: f64) -> f64 {
    f_curved_to_flat_with(alpha, r, DEFAULT_DET_N, DEFAULT_DEPTH, DEFAULT_TILT_N)
}

/// Curved-to-flat determinant with explicit rule sizes.
pub fn f_curved_to_flat_with(alpha: f64, r: f64, n: usize, depth: f64, ns: usize) -> f64 {
    assert!(
        alpha.is_finite() && alpha.abs() <= 5.0,
        "f_curved_to_flat: tilt alpha = {alpha} outside [-5, 5], \
         e^(alpha x) factors leave double-precision range"
    );
    let r_det = r - alpha.min(0.0).powi(2);
    let m = r_det + alpha * alpha;
    let rule = gauss_legendre(n, -depth, 0.0);
    let lam = &rule.nodes;
    let s_rule = gauss_legendre(ns, 0.0, depth + 8.0);

    // Airy data at the projection edge, reused across the row assembly.
    let edge: Vec<(f64, f64)> = lam.iter().map(|&l| airy_both(m - l)).collect();

    let kernel_rows: Vec<Vec<f64>> = if alpha >= 0.0 {
        // K = conj * K_Ai(m-l1, m-l2) + R_r(l1, l2) - conj * C, where
        // C(l1, l2) = int_0^inf e^(-2 alpha s) Ai(m-s-l1) Ai(m+s-l2) ds
        // and conj = e^(-alpha (l1 - l2)).
        let a1: Vec<Vec<f64>> = lam
            .par_iter()
            .map(|&l| s_rule.nodes.iter().map(|&s| airy_ai(m - s - l)).collect())
            .collect();
        let a2: Vec<Vec<f64>> = lam
            .par_iter()
            .map(|&l| s_rule.nodes.iter().map(|&s| airy_ai(m + s - l)).collect())
            .collect();
        let sw: Vec<f64> = s_rule
            .nodes
            .iter()
            .zip(&s_rule.weights)
            .map(|(&s, &w)| w * (-2.0 * alpha * s).exp())
            .collect();
        (0..n)
            .into_par_iter()
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let c: f64 = (0..ns).map(|k| sw[k] * a1[i][k] * a2[j][k]).sum();
                        let ka = if i == j {
                            let z = m - lam[i];
                            let (am, apm) = edge[i];
                            apm * apm - z * am * am
                        } else {
                            let (ai, api) = edge[i];
                            let (aj, apj) = edge[j];
                            (ai * apj - api * aj) / (lam[j] - lam[i])
                        };
                        let conj = (-alpha * (lam[i] - lam[j])).exp();
                        conj * ka + goe_kernel(r_det, lam[i], lam[j]) - conj * c
                    })
                    .collect()
            })
            .collect()
    } else {
        // K = K_Ai(m-l1, m-l2) + T2, where
        // T2(l1, l2) = int_0^inf e^(2 alpha s) Ai(m+s-l1) Ai(m-s-l2) ds.
        let b1: Vec<Vec<f64>> = lam
            .par_iter()
            .map(|&l| s_rule.nodes.iter().map(|&s| airy_ai(m + s - l)).collect())
            .collect();
        let b2: Vec<Vec<f64>> = lam
            .par_iter()
            .map(|&l| s_rule.nodes.iter().map(|&s| airy_ai(m - s - l)).collect())
            .collect();
        let sw: Vec<f64> = s_rule
            .nodes
            .iter()
            .zip(&s_rule.weights)
            .map(|(&s, &w)| w * (2.0 * alpha * s).exp())
            .collect();
        (0..n)
            .into_par_iter()
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let t2: f64 = (0..ns).map(|k| sw[k] * b1[i][k] * b2[j][k]).sum();
                        let ka = if i == j {
                            let z = m - lam[i];
                            let (am, apm) = edge[i];
                            apm * apm - z * am * am
                        } else {
                            let (ai, api) = edge[i];
                            let (aj, apj) = edge[j];
                            (ai * apj - api * aj) / (lam[j] - lam[i])
                        };
                        ka + t2
                    })
                    .collect()
            })
            .collect()
    };
    det_one_minus(&kernel_rows, &rule)
}

/// det(I - sqrt(w) K sqrt(w)) for an explicitly assembled kernel matrix.
fn det_one_minus(kernel: &[Vec<f64>], rule: &QuadratureRule) -> f64 {
    let n = rule.nodes.len();
    let sw: Vec<f64> = rule.weights.iter().map(|w| w.sqrt()).collect();
    let mut m = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let e = kernel[i][j];
            assert!(e.is_finite(), "kernel entry ({i}, {j}) is not finite");
            m[i][j] = if i == j { 1.0 } else { 0.0 } - sw[i] * e * sw[j];
        }
    }
    det_lu(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::painleve::{f_goe_p, f_gue_p};
    use crate::rng::SplitMix64;

    #[test]
    fn kernel_symmetry_and_diagonal_sign() {
        let a = airy_kernel(0.3, -1.1);
        let b = airy_kernel(-1.1, 0.3);
        assert!((a - b).abs() <= 1e-15 * a.abs().max(1.0), "{a} vs {b}");
        for &x in &[-3.0, -1.0, 0.0, 1.5, 4.0] {
            assert!(airy_kernel(x, x) >= 0.0);
        }
    }

    #[test]
    fn kernel_matches_lambda_quadrature() {
        let k = AiryKernel::default();
        // At the origin the integral form is int_0^inf Ai(s)^2 ds.
        assert!((k.eval(0.0, 0.0) - k.eval_integral(0.0, 0.0)).abs() <= 1e-9);
        let mut rng = SplitMix64::new(0x41_5249_13);
        for _ in 0..20 {
            let x = -5.0 + 10.0 * rng.uniform_open();
            let y = -5.0 + 10.0 * rng.uniform_open();
            let gap = (k.eval(x, y) - k.eval_integral(x, y)).abs();
            assert!(gap <= 1e-9, "closed vs integral at ({x}, {y}): {gap:.3e}");
        }
    }

    #[test]
    fn reflection_involution_projection_idempotent() {
        let refl = ReflectionMap { r: 0.7 };
        for &x in &[-2.0, 0.0, 0.7, 3.3] {
            assert!((refl.apply(refl.apply(x)) - x).abs() <= 1e-15);
        }
        let above = Projection { m: 0.2, side: ProjectionSide::Above };
        let below = Projection { m: 0.2, side: ProjectionSide::Below };
        for &x in &[-1.0, 0.1999, 0.2, 0.2001, 5.0] {
            let (ia, ib) = (above.indicator(x), below.indicator(x));
            assert_eq!(ia * ia, ia);
            assert_eq!(ib * ib, ib);
            assert_eq!(ia + ib, 1.0);
        }
    }

    #[test]
    fn goe_kernel_matches_reflected_composition() {
        // Oracle: int_r^(r+20) [Ai(x-l1)Ai(rho(x)-l2) + Ai(rho(x)-l1)Ai(x-l2)] dx
        // with rho the reflection about r.
        for &(r, l1, l2) in &[(0.0, -1.0, -2.0), (0.5, -3.0, -0.5), (-1.0, -4.0, -6.0)] {
            let refl = ReflectionMap { r };
            let rule = gauss_legendre(400, r, r + 20.0);
            let mut oracle = 0.0;
            for (x, w) in rule.nodes.iter().zip(&rule.weights) {
                let xr = refl.apply(*x);
                oracle +=
                    w * (airy_ai(x - l1) * airy_ai(xr - l2) + airy_ai(xr - l1) * airy_ai(x - l2));
            }
            let gap = (goe_kernel(r, l1, l2) - oracle).abs();
            assert!(gap <= 1e-8, "closed vs composed at ({r}, {l1}, {l2}): {gap:.3e}");
        }
    }

    #[test]
    fn gue_determinant_spot_checks() {
        for &r in &[-3.0, 0.0, 2.0] {
            let gap = (f_gue_fd(r) - f_gue_p(r)).abs();
            assert!(gap <= 1e-6, "GUE routes at r = {r}: {gap:.3e}");
        }
        let top = f_gue_fd(6.0);
        assert!(top > 1.0 - 1e-6 && top <= 1.0, "f_gue_fd(6) = {top}");
    }

    #[test]
    fn goe_determinant_spot_checks() {
        let s = 4.0f64.powf(1.0 / 3.0);
        for &r in &[-2.0, 0.0, 1.0] {
            let gap = (f_goe_fd(r) - f_goe_p(s * r)).abs();
            assert!(gap <= 1e-5, "GOE routes at r = {r}: {gap:.3e}");
        }
        assert!(f_goe_fd(5.0) > 1.0 - 1e-4);
    }

    #[test]
    fn curved_to_flat_branches_agree_at_zero_tilt() {
        // The two assembly branches must join continuously across alpha = 0.
        let plus = f_curved_to_flat(1e-9, 0.0);
        let minus = f_curved_to_flat(-1e-9, 0.0);
        assert!((plus - minus).abs() <= 1e-9, "{plus} vs {minus}");
    }

    #[test]
    #[should_panic(expected = "tilt")]
    fn curved_to_flat_rejects_large_tilt() {
        f_curved_to_flat(5.5, 0.0);
    }
}

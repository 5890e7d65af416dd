//! First-passage machinery for barriers built from the four branch kinds.
//!
//! Closed forms for constant and linear barriers, spectral series for the
//! square-root and parabolic ones, grid-backed evaluators (Volterra
//! integral equation and hybrid tables) for the scattering determinants,
//! and a Brownian-bridge Monte Carlo oracle. Every Brownian motion here
//! has diffusion coefficient 2 (increment variance 2t), the normalization
//! used throughout the crate.
//!
//! The square-root series uses the zeros of Upsilon(., -b/sqrt2) and the
//! prefactor ((r-y)/2)^{-2 nu_n}; with the opposite sign conventions the
//! series mass disagrees with both the Volterra solution and Monte Carlo.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, Once, OnceLock};

use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::interp::Pchip;
use crate::quad::gauss_legendre;
use crate::rng::SplitMix64;
use crate::specfun::{airy_ai, airy_ai_complex, airy_ai_log_complex, airy_ai_prime, airy_zeros};
use crate::specfun::{dupsilon_log_at_zero, erfc, zeros_deep_h, Cx};

/// Default square-root series length: the tail terms decay only like a
/// power of t, so the truncation budget is spent here.
pub const SQRT_SERIES_TERMS: usize = 50;
/// Default parabolic series length: e^{-beta^2 t^3/3} damping makes a
/// short sum sufficient.
pub const PARABOLA_SERIES_TERMS: usize = 20;
/// Below this time both series converge too slowly to be useful; the
/// densities clamp to their constant-barrier leading form (the barrier
/// looks flat at its t = 0 level on such scales) and warn once.
pub const SERIES_CLAMP_T: f64 = 1e-3;

const SQRT_4PI: f64 = 3.544_907_701_811_032;

fn warn_series_clamp() {
    static ONCE: Once = Once::new();
    ONCE.call_once(|| {
        eprintln!(
            "barrier: t < {SERIES_CLAMP_T:.0e} is below the series validity window; \
             using the constant-barrier leading form there"
        );
    });
}

// ------------------------------------------------------------------ types

/// One side of a barrier, parameterized by the distance t >= 0 from the
/// split point: the barrier value at that distance is `value(t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Branch {
    Constant { level: f64 },
    Sqrt { base: f64, coefficient: f64 },
    Parabola { base: f64, coefficient: f64 },
    Infinite,
}

impl Branch {
    /// Barrier value at distance t from the split.
    pub fn value(&self, t: f64) -> f64 {
        match *self {
            Branch::Constant { level } => level,
            Branch::Sqrt { base, coefficient } => base + coefficient * t.sqrt(),
            Branch::Parabola { base, coefficient } => base + coefficient * t * t,
            Branch::Infinite => f64::INFINITY,
        }
    }

    /// One-sided derivative of the branch value in the distance variable.
    pub fn slope(&self, t: f64) -> f64 {
        match *self {
            Branch::Constant { .. } | Branch::Infinite => 0.0,
            Branch::Sqrt { coefficient, .. } => 0.5 * coefficient / t.max(1e-300).sqrt(),
            Branch::Parabola { coefficient, .. } => 2.0 * coefficient * t,
        }
    }

    pub fn is_finite(&self) -> bool {
        !matches!(self, Branch::Infinite)
    }

    /// Positive coefficients keep every kind inside the growth bound
    /// g(t) >= c - kappa t^2 with kappa < 3/4 (kappa = 0 here; upward
    /// parabolas only).
    fn assert_valid(&self) {
        match *self {
            Branch::Constant { level } => {
                assert!(level.is_finite(), "barrier: non-finite constant level {level}");
            }
            Branch::Sqrt { base, coefficient } | Branch::Parabola { base, coefficient } => {
                assert!(base.is_finite(), "barrier: non-finite branch base {base}");
                assert!(
                    coefficient > 0.0 && coefficient.is_finite(),
                    "barrier: branch coefficient must be positive, got {coefficient}"
                );
            }
            Branch::Infinite => {}
        }
    }
}

/// A two-sided barrier: value g(split - t) = left.value(t) and
/// g(split + t) = right.value(t).
#[derive(Debug, Clone, Copy)]
pub struct Barrier {
    pub split: f64,
    pub left: Branch,
    pub right: Branch,
    /// Zero-length-domain flag: the branches carry only the point value
    /// at the split and the barrier is +infinity elsewhere (narrow wedge).
    pub point_only: bool,
}

impl Barrier {
    pub fn new(split: f64, left: Branch, right: Branch) -> Barrier {
        assert!(split.is_finite(), "barrier: non-finite split {split}");
        left.assert_valid();
        right.assert_valid();
        assert!(
            left.is_finite() || right.is_finite(),
            "barrier: both branches infinite; use narrow_wedge for a point barrier"
        );
        Barrier { split, left, right, point_only: false }
    }

    /// Barrier that is r at the origin and +infinity elsewhere.
    pub fn narrow_wedge(r: f64) -> Barrier {
        assert!(r.is_finite(), "barrier: non-finite wedge value {r}");
        Barrier {
            split: 0.0,
            left: Branch::Constant { level: r },
            right: Branch::Constant { level: r },
            point_only: true,
        }
    }

    pub fn flat(r: f64) -> Barrier {
        Barrier::new(0.0, Branch::Constant { level: r }, Branch::Constant { level: r })
    }

    /// Flat at level r left of the split, unconstrained to the right.
    pub fn half_flat(split: f64, r: f64) -> Barrier {
        Barrier::new(split, Branch::Constant { level: r }, Branch::Infinite)
    }

    /// r + b_left sqrt(split - x) left of the split, r + b_right
    /// sqrt(x - split) right of it.
    pub fn sqrt(split: f64, base: f64, b_left: f64, b_right: f64) -> Barrier {
        Barrier::new(
            split,
            Branch::Sqrt { base, coefficient: b_left },
            Branch::Sqrt { base, coefficient: b_right },
        )
    }

    /// r + beta_left x^2 for x < 0, r + beta_right x^2 for x > 0.
    pub fn parabola(base: f64, beta_left: f64, beta_right: f64) -> Barrier {
        Barrier::new(
            0.0,
            Branch::Parabola { base, coefficient: beta_left },
            Branch::Parabola { base, coefficient: beta_right },
        )
    }

    /// g at the split: the smaller of the two one-sided values.
    pub fn value_at_split(&self) -> f64 {
        self.left.value(0.0).min(self.right.value(0.0))
    }
}

/// Series-backed hitting density of a single branch from a fixed start.
#[derive(Debug, Clone)]
pub struct HittingDensity {
    pub branch: Branch,
    pub start: f64,
    pub series_terms: usize,
    pub t_max: f64,
}

impl HittingDensity {
    pub fn new(branch: Branch, start: f64, series_terms: usize, t_max: f64) -> HittingDensity {
        branch.assert_valid();
        assert!(
            start < branch.value(0.0),
            "hitting density: start {start} is not below the barrier at {}",
            branch.value(0.0)
        );
        assert!(series_terms >= 1, "hitting density: need at least one series term");
        assert!(t_max > 0.0, "hitting density: t_max must be positive");
        HittingDensity { branch, start, series_terms, t_max }
    }

    pub fn rho(&self, t: f64) -> f64 {
        match self.branch {
            Branch::Constant { level } => rho_const(self.start, level, t),
            Branch::Sqrt { base, coefficient } => {
                rho_sqrt(self.start, base, coefficient, t, self.series_terms)
            }
            Branch::Parabola { base, coefficient } => {
                rho_parbl(self.start, base, coefficient, t, self.series_terms)
            }
            Branch::Infinite => 0.0,
        }
    }

    /// Integral of rho over (0, upto], upto <= t_max. Constant branches
    /// use the closed form; the series use graded quadrature: t = s^2
    /// near the origin (the density vanishes there to all orders), then
    /// octave panels so long horizons keep per-panel resolution.
    pub fn mass(&self, upto: f64) -> f64 {
        assert!(
            upto > 0.0 && upto <= self.t_max * (1.0 + 1e-12),
            "hitting density: mass horizon {upto} outside (0, {}]",
            self.t_max
        );
        match self.branch {
            Branch::Constant { level } => mass_const(self.start, level, upto),
            Branch::Infinite => 0.0,
            _ => panel_quadrature(|t| self.rho(t), upto),
        }
    }
}

/// Sorted sample set with step-function CDF.
#[derive(Debug, Clone)]
pub struct EmpiricalCdf {
    pub sorted_samples: Vec<f64>,
    pub n: usize,
}

impl EmpiricalCdf {
    pub fn new(mut samples: Vec<f64>) -> EmpiricalCdf {
        samples.sort_by(f64::total_cmp);
        let n = samples.len();
        EmpiricalCdf { sorted_samples: samples, n }
    }

    /// Fraction of samples <= t.
    pub fn eval(&self, t: f64) -> f64 {
        let k = self.sorted_samples.partition_point(|s| *s <= t);
        k as f64 / self.n as f64
    }

    /// Two-sided Kolmogorov-Smirnov distance to a reference CDF.
    pub fn ks_distance(&self, cdf: impl Fn(f64) -> f64) -> f64 {
        assert!(self.n > 0, "ks_distance: empty sample");
        let n = self.n as f64;
        let mut ks = 0.0f64;
        for (i, s) in self.sorted_samples.iter().enumerate() {
            let f = cdf(*s);
            ks = ks.max((i + 1) as f64 / n - f).max(f - i as f64 / n);
        }
        ks
    }
}

// ------------------------------------------------------ closed-form laws

/// First-passage density to the constant barrier r from y < r:
/// (r-y)/sqrt(4 pi t^3) e^{-(r-y)^2/(4t)}.
pub fn rho_const(y: f64, r: f64, t: f64) -> f64 {
    assert!(y < r, "rho_const: start {y} is not below the barrier {r}");
    assert!(t > 0.0, "rho_const: need t > 0");
    let a = r - y;
    a / (SQRT_4PI * t * t.sqrt()) * (-a * a / (4.0 * t)).exp()
}

/// P(tau_r <= horizon) from y < r: erfc((r-y)/(2 sqrt(horizon))).
pub fn mass_const(y: f64, r: f64, horizon: f64) -> f64 {
    assert!(y < r, "mass_const: start {y} is not below the barrier {r}");
    assert!(horizon > 0.0, "mass_const: need a positive horizon");
    erfc((r - y) / (2.0 * horizon.sqrt()))
}

/// First-passage density to the moving barrier c + s t from y < c:
/// (c-y)/sqrt(4 pi t^3) e^{-(c-y+st)^2/(4t)}. A receding barrier
/// (s > 0) integrates to e^{-s(c-y)} < 1.
pub fn rho_linear(y: f64, intercept: f64, slope: f64, t: f64) -> f64 {
    assert!(y < intercept, "rho_linear: start {y} is not below the intercept {intercept}");
    assert!(t > 0.0, "rho_linear: need t > 0");
    let a = intercept - y;
    let d = a + slope * t;
    a / (SQRT_4PI * t * t.sqrt()) * (-d * d / (4.0 * t)).exp()
}

// ------------------------------------------------- square-root barrier

/// (nu_n, log |dUpsilon/dnu|, sign) at the first n zeros of
/// Upsilon(., -b/sqrt2), cached per (b, n).
fn sqrt_zero_data(b: f64, n: usize) -> Arc<Vec<(f64, f64, f64)>> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, usize), Arc<Vec<(f64, f64, f64)>>>>> =
        OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (b.to_bits(), n);
    if let Some(hit) = cache.lock().unwrap().get(&key) {
        return hit.clone();
    }
    let z = -b / std::f64::consts::SQRT_2;
    let data: Arc<Vec<(f64, f64, f64)>> = Arc::new(
        zeros_deep_h(z, n)
            .into_iter()
            .map(|nu| {
                let (log_du, sign) = dupsilon_log_at_zero(nu, z);
                (nu, log_du, sign)
            })
            .collect(),
    );
    cache.lock().unwrap().insert(key, data.clone());
    data
}

/// The square-root series is asymptotic below t/(r-y)^2 ~ 0.04: the
/// mid-index terms peak near e^{+30} there while the density itself is
/// exponentially small, so cancellation noise dominates. Below this
/// scaled floor the density clamps to the constant-barrier form, whose
/// value already sits at the e^{-(r-y)^2/(4t)} magnitude floor. The
/// tabulated [`SqrtDensity`] covers that window with a Volterra solve
/// instead and has no such restriction.
const SQRT_SERIES_U_FLOOR: f64 = 0.04;

/// First-passage density to r + b sqrt(t) from y < r: the spectral series
/// sum_n ((r-y)/2)^{-2 nu_n} t^{nu_n - 1} / dUpsilon_n over the first
/// `terms` zeros. Depends on (y, r) only through r - y.
pub fn rho_sqrt(y: f64, r: f64, b: f64, t: f64, terms: usize) -> f64 {
    assert!(y < r, "rho_sqrt: start {y} is not below the barrier base {r}");
    assert!(b > 0.0, "rho_sqrt: coefficient must be positive, got {b}");
    assert!(terms >= 1, "rho_sqrt: need at least one term");
    assert!(t > 0.0, "rho_sqrt: need t > 0");
    let a = r - y;
    if t < SERIES_CLAMP_T.max(SQRT_SERIES_U_FLOOR * a * a) {
        warn_series_clamp();
        return rho_const(y, r, t);
    }
    let zd = sqrt_zero_data(b, terms);
    let lh = ((r - y) / 2.0).ln();
    let lt = t.ln();
    let mut acc = 0.0;
    for &(nu, log_du, sign) in zd.iter() {
        acc += sign * (-2.0 * nu * lh + (nu - 1.0) * lt - log_du).exp();
    }
    acc.max(0.0)
}

// --------------------------------------------------- parabolic barrier

/// (a_k, Ai'(a_k)) for the first 220 Airy zeros, enough for every series
/// and table in this module.
const AIRY_ZERO_TABLE_LEN: usize = 220;

fn airy_zero_table() -> &'static [(f64, f64)] {
    static TABLE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    TABLE.get_or_init(|| {
        airy_zeros(AIRY_ZERO_TABLE_LEN)
            .into_iter()
            .map(|a| (a, airy_ai_prime(a)))
            .collect()
    })
}

/// The parabolic series converges only once its last included term is
/// damped: below t ~ 6/(beta^{2/3} |a_terms|) the partial sum is O(0.1)
/// oscillating truncation noise while the true density is exponentially
/// small, so the density clamps to the constant-barrier form there. That
/// form is also the correct limit in this window: the barrier has risen
/// by only beta t^2 and the clamp seam error is a few percent at worst.
const PARABOLA_SERIES_DAMPING: f64 = 6.0;

/// First-passage density to r + beta t^2 from y < r:
/// beta^{2/3} sum_k e^{beta^{2/3} a_k t - beta^2 t^3/3}
/// Ai(beta^{1/3}(r-y) + a_k)/Ai'(a_k) over the first `terms` Airy zeros.
pub fn rho_parbl(y: f64, r: f64, beta: f64, t: f64, terms: usize) -> f64 {
    assert!(y < r, "rho_parbl: start {y} is not below the barrier base {r}");
    assert!(beta > 0.0, "rho_parbl: coefficient must be positive, got {beta}");
    assert!(
        (1..=AIRY_ZERO_TABLE_LEN).contains(&terms),
        "rho_parbl: terms must be in 1..={AIRY_ZERO_TABLE_LEN}"
    );
    assert!(t > 0.0, "rho_parbl: need t > 0");
    let a_last = airy_zero_table()[terms - 1].0.abs();
    let floor = PARABOLA_SERIES_DAMPING / (beta.cbrt().powi(2) * a_last);
    if t < SERIES_CLAMP_T.max(floor) {
        warn_series_clamp();
        return rho_const(y, r, t);
    }
    let b13 = beta.cbrt();
    let b23 = b13 * b13;
    let damp = -beta * beta * t * t * t / 3.0;
    let mut acc = 0.0;
    for &(ak, akp) in &airy_zero_table()[..terms] {
        acc += (b23 * ak * t + damp).exp() * airy_ai(b13 * (r - y) + ak) / akp;
    }
    (b23 * acc).max(0.0)
}

/// Contour-integral form of the parabolic density: beta^{2/3}/(2 pi i)
/// int_{i R} dz e^{beta^{2/3} z t - beta^2 t^3/3} Ai(z + beta^{1/3}(r-y))
/// / Ai(z). Spot-check evaluator only (composite Simpson on the truncated
/// imaginary axis); the series is the production path.
pub fn rho_parbl_contour(y: f64, r: f64, beta: f64, t: f64) -> f64 {
    assert!(y < r, "rho_parbl_contour: start {y} is not below the barrier base {r}");
    assert!(beta > 0.0 && t > 0.0, "rho_parbl_contour: need beta > 0, t > 0");
    let b13 = beta.cbrt();
    let b23 = b13 * b13;
    let c = b13 * (r - y);
    // The Airy ratio decays like e^{-c sqrt(w/2)}; truncate at 1e-13 of it.
    let w_max = 2.0 * (30.0 / c).powi(2);
    let period = 2.0 * std::f64::consts::PI / (b23 * t);
    let h_target = (period / 100.0).min(0.01);
    let n = ((w_max / h_target).ceil() as usize).next_multiple_of(2);
    let h = w_max / n as f64;
    let ratio = |w: f64| -> Cx {
        if w < 8.0 {
            airy_ai_complex(Cx::new(c, w)) / airy_ai_complex(Cx::new(0.0, w))
        } else {
            (airy_ai_log_complex(Cx::new(c, w)) - airy_ai_log_complex(Cx::new(0.0, w))).exp()
        }
    };
    let f = |w: f64| -> f64 {
        let q = ratio(w);
        let phase = b23 * w * t;
        phase.cos() * q.re - phase.sin() * q.im
    };
    let mut acc = f(0.0) + f(w_max);
    for k in 1..n {
        let w = k as f64 * h;
        acc += f(w) * if k % 2 == 1 { 4.0 } else { 2.0 };
    }
    let integral = acc * h / 3.0;
    b23 / std::f64::consts::PI * (-beta * beta * t * t * t / 3.0).exp() * integral
}

// --------------------------------------------------- grids and Volterra

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2);
    (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()
}

fn geomspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    assert!(a > 0.0 && b > a && n >= 2);
    let r = (b / a).ln();
    (0..n).map(|i| a * (r * i as f64 / (n - 1) as f64).exp()).collect()
}

/// Square-root-graded grid on (0, tmax] with extra geometric resolution
/// at scale a2 when that scale is far below tmax.
fn graded_tgrid(tmax: f64, a2: f64, n_base: usize) -> Vec<f64> {
    let mut g: Vec<f64> = linspace(1e-7f64.sqrt(), tmax.sqrt(), n_base)
        .into_iter()
        .map(|s| s * s)
        .collect();
    if a2 < 0.02 * tmax {
        g.extend(geomspace(a2 / 50.0, (60.0 * a2).min(tmax), 220));
    }
    g.sort_by(f64::total_cmp);
    g.dedup();
    g.retain(|&t| t > 0.0 && t <= tmax);
    g
}

/// Drop nodes closer than rel * max(1, t) to their predecessor.
fn dedup_nodes(mut tg: Vec<f64>, rel: f64) -> Vec<f64> {
    tg.sort_by(f64::total_cmp);
    let mut out = Vec::with_capacity(tg.len());
    for t in tg {
        match out.last() {
            Some(&last) if t - last < rel * t.max(1.0) => {}
            _ => out.push(t),
        }
    }
    out
}

/// np.interp semantics with zero left fill: 0 below the first node,
/// clamped to the last value above the last node.
fn lin_interp(xs: &[f64], ys: &[f64], x: f64) -> f64 {
    if x < xs[0] {
        return 0.0;
    }
    let n = xs.len();
    if x >= xs[n - 1] {
        return ys[n - 1];
    }
    let i = xs.partition_point(|v| *v <= x) - 1;
    let t = (x - xs[i]) / (xs[i + 1] - xs[i]);
    ys[i] + t * (ys[i + 1] - ys[i])
}

/// Integral of f over (0, upto]: square-root-graded rule on
/// (0, min(0.2, upto)], then doubling panels of Gauss-Legendre nodes.
fn panel_quadrature(f: impl Fn(f64) -> f64, upto: f64) -> f64 {
    let near = upto.min(0.2);
    let s_rule = gauss_legendre(64, 0.0, near.sqrt());
    let mut m = 0.0;
    for (s, w) in s_rule.nodes.iter().zip(&s_rule.weights) {
        m += w * 2.0 * s * f(s * s);
    }
    let mut lo = near;
    while lo < upto {
        let hi = (2.0 * lo).min(upto);
        let rule = gauss_legendre(48, lo, hi);
        for (t, w) in rule.nodes.iter().zip(&rule.weights) {
            m += w * f(*t);
        }
        lo = hi;
    }
    m
}

fn trapz(xs: &[f64], ys: &[f64]) -> f64 {
    let mut m = 0.0;
    for i in 1..xs.len() {
        m += 0.5 * (ys[i] + ys[i - 1]) * (xs[i] - xs[i - 1]);
    }
    m
}

fn cumtrapz(xs: &[f64], ys: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(xs.len());
    let mut m = 0.0;
    out.push(0.0);
    for i in 1..xs.len() {
        m += 0.5 * (ys[i] + ys[i - 1]) * (xs[i] - xs[i - 1]);
        out.push(m);
    }
    out
}

/// First-passage density to a smooth barrier S(t) from x0 < S(0+) by the
/// second-kind Volterra equation f(t) = B(t) + 2 int_0^t K(t,s) f(s) ds
/// with B(t) = -2 (S'(t)/2 - (S(t)-x0)/(2t)) p(t, S(t)-x0) and
/// K(t,s) = (S'(t)/2 - (S(t)-S(s))/(2(t-s))) p(t-s, S(t)-S(s)), where
/// p is the diffusion-2 heat kernel. Trapezoid discretization on `tg`;
/// the diagonal kernel value is excluded (K(t,t) = 0 in the limit for
/// differentiable barriers).
fn volterra_density(
    curve: &(dyn Fn(f64) -> f64 + Sync),
    slope: &(dyn Fn(f64) -> f64 + Sync),
    x0: f64,
    tg: &[f64],
) -> Vec<f64> {
    let n = tg.len();
    let sv: Vec<f64> = tg.iter().map(|&t| curve(t)).collect();
    let spv: Vec<f64> = tg.iter().map(|&t| slope(t)).collect();
    let p = |u: f64, d: f64| (-d * d / (4.0 * u)).exp() / (SQRT_4PI * u.sqrt());
    // Trapezoid weight of node s inside (t_0, t_i), s < i.
    let mut w = vec![0.0; n];
    for s in 0..n {
        if s > 0 {
            w[s] += 0.5 * (tg[s] - tg[s - 1]);
        }
        if s + 1 < n {
            w[s] += 0.5 * (tg[s + 1] - tg[s]);
        }
    }
    let mut f = vec![0.0; n];
    f[0] = -2.0 * (spv[0] / 2.0 - (sv[0] - x0) / (2.0 * tg[0])) * p(tg[0], sv[0] - x0);
    for i in 1..n {
        let t = tg[i];
        let bi = -2.0 * (spv[i] / 2.0 - (sv[i] - x0) / (2.0 * t)) * p(t, sv[i] - x0);
        let mut acc = 0.0;
        for s in 0..i {
            let du = t - tg[s];
            let d = sv[i] - sv[s];
            let k = (spv[i] / 2.0 - d / (2.0 * du)) * p(du, d);
            acc += w[s] * k * f[s];
        }
        f[i] = bi + 2.0 * acc;
    }
    f
}

// ------------------------------------------------- densities on y grids

/// Hitting density and mass of one barrier branch, evaluated on a fixed
/// grid of start points. The scattering assembly consumes this interface.
pub trait BranchDensity: Sync {
    fn y_nodes(&self) -> &[f64];
    /// rho(y_i, t).
    fn rho(&self, iy: usize, t: f64) -> f64;
    /// Integral of rho(y_i, .) over (0, horizon] at the construction
    /// horizon.
    fn mass(&self, iy: usize) -> f64;
}

/// Constant branch: closed forms throughout.
pub struct ConstantDensity {
    level: f64,
    y: Vec<f64>,
    horizon: f64,
}

impl ConstantDensity {
    pub fn new(level: f64, y_nodes: Vec<f64>, horizon: f64) -> ConstantDensity {
        assert!(horizon > 0.0);
        assert!(
            y_nodes.iter().all(|&y| y < level),
            "constant density: every start must lie below the level"
        );
        ConstantDensity { level, y: y_nodes, horizon }
    }
}

impl BranchDensity for ConstantDensity {
    fn y_nodes(&self) -> &[f64] {
        &self.y
    }

    fn rho(&self, iy: usize, t: f64) -> f64 {
        rho_const(self.y[iy], self.level, t)
    }

    fn mass(&self, iy: usize) -> f64 {
        mass_const(self.y[iy], self.level, self.horizon)
    }
}

/// Square-root branch r + b sqrt(t): one scaled table m_b(u) with
/// rho(y, t) = m_b(t/a^2)/a^2, a = r - y. Low u from the Volterra
/// equation on the unit-gap barrier 1 + b sqrt(t), high u from the
/// spectral series, stitched at u = 0.05 and extended past u = 1e7 by
/// the leading power law t^{nu_1 - 1}.
pub struct SqrtDensity {
    base: f64,
    y: Vec<f64>,
    horizon: f64,
    dead: bool,
    log_m: Option<Pchip>,
    m_of: Option<Pchip>,
    u_lo: f64,
    u_top: f64,
    m_top: f64,
    mass_top: f64,
    nu1: f64,
}

const SQRT_TABLE_U_CROSS: f64 = 0.05;
const SQRT_TABLE_U_TOP: f64 = 1e7;
const SQRT_TABLE_ZEROS: usize = 45;
/// Coefficients past this make the hitting probability vanish below f64:
/// the first zero sits against nu = 0 and the series underflows.
const SQRT_DEAD_COEFF: f64 = 12.0;

impl SqrtDensity {
    pub fn new(coefficient: f64, base: f64, y_nodes: Vec<f64>, horizon: f64) -> SqrtDensity {
        assert!(coefficient > 0.0, "sqrt density: coefficient must be positive");
        assert!(horizon > 0.0);
        assert!(
            y_nodes.iter().all(|&y| y < base),
            "sqrt density: every start must lie below the base"
        );
        if coefficient >= SQRT_DEAD_COEFF {
            return SqrtDensity {
                base,
                y: y_nodes,
                horizon,
                dead: true,
                log_m: None,
                m_of: None,
                u_lo: 0.0,
                u_top: 0.0,
                m_top: 0.0,
                mass_top: 0.0,
                nu1: 0.0,
            };
        }
        let b = coefficient;
        let zd = sqrt_zero_data(b, SQRT_TABLE_ZEROS);
        let uc = SQRT_TABLE_U_CROSS;
        let tg: Vec<f64> = linspace(1e-7f64.sqrt(), (uc * 1.3).sqrt(), 2200)
            .into_iter()
            .map(|s| s * s)
            .collect();
        let curve = move |t: f64| 1.0 + b * t.sqrt();
        let slope = move |t: f64| 0.5 * b / t.max(1e-300).sqrt();
        let f: Vec<f64> = volterra_density(&curve, &slope, 0.0, &tg)
            .into_iter()
            .map(|v| v.max(0.0))
            .collect();
        let m_low = cumtrapz(&tg, &f);
        let m_uc = lin_interp(&tg, &m_low, uc);
        // log-scaled series over one decade short of the power-law tail.
        let series = |u: f64| -> f64 {
            let lu = u.ln();
            let mut acc = 0.0;
            for &(nu, log_du, sign) in zd.iter() {
                acc += sign * (-2.0 * nu * 0.5f64.ln() + (nu - 1.0) * lu - log_du).exp();
            }
            acc
        };
        let mass_incr = |u0: f64, u: f64| -> f64 {
            let mut acc = 0.0;
            for &(nu, log_du, sign) in zd.iter() {
                let c = sign * (-2.0 * nu * 0.5f64.ln() - log_du).exp();
                acc += c * (u.powf(nu) - u0.powf(nu)) / nu;
            }
            acc
        };
        let mut uu = Vec::new();
        let mut mm = Vec::new();
        let mut cm = Vec::new();
        for (i, &u) in tg.iter().enumerate() {
            if u > 2e-4 && u <= uc {
                uu.push(u);
                mm.push(f[i]);
                cm.push(m_low[i]);
            }
        }
        for u in geomspace(uc * 1.000_000_1, SQRT_TABLE_U_TOP, 1600) {
            uu.push(u);
            mm.push(series(u));
            cm.push(m_uc + mass_incr(uc, u));
        }
        let mut lx = Vec::new();
        let mut ly = Vec::new();
        for (u, m) in uu.iter().zip(&mm) {
            if *m > 1e-290 {
                lx.push(u.ln());
                ly.push(m.ln());
            }
        }
        let u_lo = lx[0].exp();
        let log_m = Pchip::new(lx, ly);
        let m_of = Pchip::new(uu.iter().map(|u| u.ln()).collect(), cm.clone());
        SqrtDensity {
            base,
            y: y_nodes,
            horizon,
            dead: false,
            log_m: Some(log_m),
            m_of: Some(m_of),
            u_lo,
            u_top: SQRT_TABLE_U_TOP,
            m_top: *mm.last().unwrap(),
            mass_top: *cm.last().unwrap(),
            nu1: zd[0].0,
        }
    }

    /// Density at an arbitrary start below the base (the table is shared
    /// across starts by the scaling law).
    pub fn rho_at(&self, y: f64, t: f64) -> f64 {
        if self.dead {
            return 0.0;
        }
        assert!(y < self.base);
        let a = self.base - y;
        let u = t / (a * a);
        if u < self.u_lo {
            0.0
        } else if u <= self.u_top {
            self.log_m.as_ref().unwrap().eval(u.ln()).exp() / (a * a)
        } else {
            self.m_top * (u / self.u_top).powf(self.nu1 - 1.0) / (a * a)
        }
    }

    pub fn mass_at(&self, y: f64, horizon: f64) -> f64 {
        if self.dead {
            return 0.0;
        }
        assert!(y < self.base);
        let a = self.base - y;
        let u = horizon / (a * a);
        if u > self.u_top {
            self.mass_top + self.m_top * self.u_top / self.nu1 * ((u / self.u_top).powf(self.nu1) - 1.0)
        } else {
            let uc = u.max(self.u_lo * 1.001);
            self.m_of.as_ref().unwrap().eval(uc.ln())
        }
    }
}

impl BranchDensity for SqrtDensity {
    fn y_nodes(&self) -> &[f64] {
        &self.y
    }

    fn rho(&self, iy: usize, t: f64) -> f64 {
        self.rho_at(self.y[iy], t)
    }

    fn mass(&self, iy: usize) -> f64 {
        self.mass_at(self.y[iy], self.horizon)
    }
}

/// Parabolic branch r + beta t^2: spectral series above the crossover
/// t_c = min(beta^{-2/3}/2, horizon) where it converges fast, per-start
/// Volterra tables below it.
pub struct ParabolaDensity {
    beta: f64,
    base: f64,
    y: Vec<f64>,
    tc: f64,
    tgs: Vec<Vec<f64>>,
    flow: Vec<Vec<f64>>,
    m_low: Vec<f64>,
    m_high: Vec<f64>,
    /// Ai(beta^{1/3}(r - y_i) + a_k)/Ai'(a_k).
    av: Vec<Vec<f64>>,
}

impl ParabolaDensity {
    pub fn new(beta: f64, base: f64, y_nodes: Vec<f64>, horizon: f64) -> ParabolaDensity {
        assert!(beta > 0.0, "parabola density: coefficient must be positive");
        assert!(horizon > 0.0);
        assert!(
            y_nodes.iter().all(|&y| y < base),
            "parabola density: every start must lie below the base"
        );
        let tc = (0.5 / beta.cbrt().powi(2)).min(horizon);
        let b13 = beta.cbrt();
        let b23 = b13 * b13;
        let zeros = airy_zero_table();
        let av: Vec<Vec<f64>> = y_nodes
            .iter()
            .map(|&y| zeros.iter().map(|&(ak, akp)| airy_ai(b13 * (base - y) + ak) / akp).collect())
            .collect();
        let series_at = |iy: usize, t: f64| -> f64 {
            let damp = -beta * beta * t * t * t / 3.0;
            let mut acc = 0.0;
            for (k, &(ak, _)) in zeros.iter().enumerate() {
                acc += (b23 * ak * t + damp).exp() * av[iy][k];
            }
            b23 * acc
        };
        let curve = move |t: f64| base + beta * t * t;
        let slope = move |t: f64| 2.0 * beta * t;
        let low: Vec<(Vec<f64>, Vec<f64>, f64)> = y_nodes
            .par_iter()
            .map(|&y| {
                let a = base - y;
                let tg = graded_tgrid(tc * 1.02, a * a, 1500);
                let f: Vec<f64> = volterra_density(&curve, &slope, y, &tg)
                    .into_iter()
                    .map(|v| v.max(0.0))
                    .collect();
                let cm = cumtrapz(&tg, &f);
                let m = lin_interp(&tg, &cm, tc);
                (tg, f, m)
            })
            .collect();
        let mut tgs = Vec::with_capacity(low.len());
        let mut flow = Vec::with_capacity(low.len());
        let mut m_low = Vec::with_capacity(low.len());
        for (tg, f, m) in low {
            tgs.push(tg);
            flow.push(f);
            m_low.push(m);
        }
        let m_high: Vec<f64> = if tc < horizon {
            let rule = gauss_legendre(240, tc, horizon);
            (0..y_nodes.len())
                .map(|iy| {
                    rule.nodes
                        .iter()
                        .zip(&rule.weights)
                        .map(|(&t, &w)| w * series_at(iy, t))
                        .sum()
                })
                .collect()
        } else {
            vec![0.0; y_nodes.len()]
        };
        ParabolaDensity { beta, base, y: y_nodes, tc, tgs, flow, m_low, m_high, av }
    }

    fn series(&self, iy: usize, t: f64) -> f64 {
        let b13 = self.beta.cbrt();
        let b23 = b13 * b13;
        let damp = -self.beta * self.beta * t * t * t / 3.0;
        let mut acc = 0.0;
        for (k, &(ak, _)) in airy_zero_table().iter().enumerate() {
            acc += (b23 * ak * t + damp).exp() * self.av[iy][k];
        }
        b23 * acc
    }
}

impl BranchDensity for ParabolaDensity {
    fn y_nodes(&self) -> &[f64] {
        &self.y
    }

    fn rho(&self, iy: usize, t: f64) -> f64 {
        let v = if t >= self.tc {
            self.series(iy, t)
        } else {
            lin_interp(&self.tgs[iy], &self.flow[iy], t)
        };
        v.max(0.0)
    }

    fn mass(&self, iy: usize) -> f64 {
        self.m_low[iy] + self.m_high[iy]
    }
}

/// General-curve branch density: per-start Volterra solve on a graded
/// grid with optional extra resolution around interior kinks, sharpened
/// by one Richardson step (the trapezoid discretization is second order,
/// so (4 fine - coarse)/3 cancels the leading error).
pub struct VolterraDensity {
    y: Vec<f64>,
    tgs: Vec<Vec<f64>>,
    flow: Vec<Vec<f64>>,
    m: Vec<f64>,
}

impl VolterraDensity {
    pub fn new(
        curve: impl Fn(f64) -> f64 + Sync,
        slope: impl Fn(f64) -> f64 + Sync,
        y_nodes: Vec<f64>,
        horizon: f64,
        grade_at: &[f64],
        g0: f64,
    ) -> VolterraDensity {
        assert!(horizon > 0.0);
        let rows: Vec<(Vec<f64>, Vec<f64>, f64)> = y_nodes
            .par_iter()
            .map(|&y| {
                let a = g0 - y;
                let mut pieces = graded_tgrid(horizon, a * a, 1600);
                for &c in grade_at {
                    if c > 1e-6 && c < horizon {
                        for s in linspace(0.0, 0.4f64.sqrt(), 260) {
                            let v = s * s;
                            if v > 0.0 && v < c {
                                pieces.push(c - v);
                            }
                            if v > 0.0 {
                                pieces.push(c + v);
                            }
                        }
                    }
                }
                pieces.retain(|&t| t > 0.0 && t <= horizon);
                for &c in grade_at {
                    pieces.retain(|&t| (t - c).abs() > 1e-9);
                }
                let tg = dedup_nodes(pieces, 1e-10);
                let fc: Vec<f64> = volterra_density(&curve, &slope, y, &tg)
                    .into_iter()
                    .map(|v| v.max(0.0))
                    .collect();
                let mc = trapz(&tg, &fc);
                let mut mids: Vec<f64> = tg.windows(2).map(|p| 0.5 * (p[0] + p[1])).collect();
                for &c in grade_at {
                    mids.retain(|&m| (m - c).abs() > 1e-9);
                }
                let mut fine = tg.clone();
                fine.extend(mids);
                let tgf = dedup_nodes(fine, 1e-12);
                let ff: Vec<f64> = volterra_density(&curve, &slope, y, &tgf)
                    .into_iter()
                    .map(|v| v.max(0.0))
                    .collect();
                let mf = trapz(&tgf, &ff);
                let fr: Vec<f64> = tg
                    .iter()
                    .zip(&fc)
                    .map(|(&t, &c)| {
                        let mut idx = tgf.partition_point(|v| *v < t).min(tgf.len() - 1);
                        if idx > 0 && (tgf[idx - 1] - t).abs() < (tgf[idx] - t).abs() {
                            idx -= 1;
                        }
                        ((4.0 * ff[idx] - c) / 3.0).max(0.0)
                    })
                    .collect();
                (tg, fr, (4.0 * mf - mc) / 3.0)
            })
            .collect();
        let mut tgs = Vec::with_capacity(rows.len());
        let mut flow = Vec::with_capacity(rows.len());
        let mut m = Vec::with_capacity(rows.len());
        for (tg, f, mass) in rows {
            tgs.push(tg);
            flow.push(f);
            m.push(mass);
        }
        VolterraDensity { y: y_nodes, tgs, flow, m }
    }
}

impl BranchDensity for VolterraDensity {
    fn y_nodes(&self) -> &[f64] {
        &self.y
    }

    fn rho(&self, iy: usize, t: f64) -> f64 {
        lin_interp(&self.tgs[iy], &self.flow[iy], t)
    }

    fn mass(&self, iy: usize) -> f64 {
        self.m[iy]
    }
}

// ------------------------------------------------------------ Monte Carlo

/// Result of a first-passage simulation: hitting times of the paths that
/// hit before the horizon, and the fraction that did.
#[derive(Debug, Clone)]
pub struct FirstPassage {
    pub cdf: EmpiricalCdf,
    pub hit_fraction: f64,
}

/// Euler scheme for diffusion-2 Brownian motion with a Brownian-bridge
/// crossing correction: each step draws a Gaussian increment of variance
/// 2 step and one uniform, and scores an intra-step crossing of the
/// barrier's midpoint level g with probability e^{-d1 d2/step}
/// (d = g - x at the step ends; the exponent matches variance-2
/// increments). Hitting times are recorded at the step end. Paths run on
/// substreams keyed by (seed, path index), so the result is bitwise
/// reproducible for a fixed seed at any thread count.
pub fn mc_first_passage(
    barrier_level: impl Fn(f64) -> f64 + Sync,
    start: f64,
    horizon: f64,
    n_paths: usize,
    step: f64,
    seed: u64,
) -> FirstPassage {
    assert!(n_paths > 0 && step > 0.0 && horizon > step);
    assert!(
        start < barrier_level(0.0),
        "mc_first_passage: start {start} is not below the barrier"
    );
    let n_steps = (horizon / step).round() as usize;
    let gm: Vec<f64> = (0..n_steps).map(|k| barrier_level((k as f64 + 0.5) * step)).collect();
    let sdt = (2.0 * step).sqrt();
    let hits: Vec<f64> = (0..n_paths)
        .into_par_iter()
        .filter_map(|i| {
            let mut rng = SplitMix64::substream(seed, i as u64);
            let mut x = start;
            for (k, &g) in gm.iter().enumerate() {
                let z: f64 = StandardNormal.sample(&mut rng);
                let x2 = x + sdt * z;
                // One uniform per surviving step keeps the stream layout
                // independent of the branch taken.
                let u = rng.uniform_open();
                if x2 >= g {
                    return Some((k + 1) as f64 * step);
                }
                let d1 = g - x;
                let d2 = g - x2;
                if d1 > 0.0 && d2 > 0.0 {
                    let e = d1 * d2 / step;
                    if e <= 40.0 && u < (-e).exp() {
                        return Some((k + 1) as f64 * step);
                    }
                }
                x = x2;
            }
            None
        })
        .collect();
    let hit_fraction = hits.len() as f64 / n_paths as f64;
    FirstPassage { cdf: EmpiricalCdf::new(hits), hit_fraction }
}

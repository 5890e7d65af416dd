//! Hastings-McLeod solution of Painleve II (u'' = 2u^3 + xu with
//! u ~ -Ai on the right) and the closed-form route to the one-point
//! limit laws built from it: F_GUE = F^2, F_GOE = F*E, and the
//! stationary law F0 = (1 - y v) E^4 F^2.
//!
//! The Hastings-McLeod solution is a separatrix: initial-value
//! integration in either direction departs from it like
//! exp((2 sqrt(2)/3)|x|^{3/2}), so the solver is a two-point boundary
//! value problem on a uniform grid. Discretization is Numerov (O(h^4)
//! locally, with the nonlinearity evaluated under the 1-10-1 weighting),
//! solved by damped Newton on the tridiagonal linearization, then
//! sharpened by one Richardson extrapolation against a half-resolution
//! solve. The extrapolated table is accurate to ~2e-12, which the
//! downstream 1e-8 distribution checks need.

use crate::interp::lagrange_cubic;
use crate::specfun::{airy_ai, airy_ai_prime};

/// Solution table of the Painleve II boundary value problem together
/// with every derived quantity the distribution formulas use.
/// `v`, `y`, `e`, `f` are empty until [`derived_quantities`] fills them.
#[derive(Debug, Clone)]
pub struct PainleveSolution {
    pub grid: Vec<f64>,
    pub u: Vec<f64>,
    pub u_prime: Vec<f64>,
    pub v: Vec<f64>,
    pub y: Vec<f64>,
    pub e: Vec<f64>,
    pub f: Vec<f64>,
}

/// A tabulated distribution function, tagged with the route that
/// produced it.
#[derive(Debug, Clone)]
pub struct DistributionTable {
    pub r_values: Vec<f64>,
    pub cdf_values: Vec<f64>,
    pub method: Method,
    pub name: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Painleve,
    Fredholm,
    Scattering,
    Empirical,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Painleve => "painleve",
            Method::Fredholm => "fredholm",
            Method::Scattering => "scattering",
            Method::Empirical => "empirical",
        }
    }
}

impl DistributionTable {
    /// Panics if the table violates the CDF shape constraints
    /// (nondecreasing, inside [0,1] up to 1e-9 slack).
    pub fn validate(&self) {
        assert_eq!(self.r_values.len(), self.cdf_values.len());
        assert!(self.r_values.windows(2).all(|w| w[1] > w[0]));
        assert!(
            self.cdf_values.windows(2).all(|w| w[1] >= w[0] - 1e-9),
            "cdf not nondecreasing: {}",
            self.name
        );
        assert!(
            self.cdf_values.iter().all(|p| *p >= -1e-9 && *p <= 1.0 + 1e-9),
            "cdf out of [0,1]: {}",
            self.name
        );
    }
}

/// Two-term left asymptotic u(x) = -sqrt(-x/2)(1 - (1/8)(-x)^{-3}
/// - (73/128)(-x)^{-6}); the correction terms matter, the bare leading
/// order would inject a ~1e-4 boundary error at x = -10.
fn left_bc(x_min: f64) -> f64 {
    let z = -x_min;
    -(z / 2.0).sqrt() * (1.0 - 0.125 * z.powi(-3) - 73.0 / 128.0 * z.powi(-6))
}

/// Numerov residual: r_i = (u_{i+1} - 2u_i + u_{i-1})
/// - (h^2/12)(f_{i+1} + 10 f_i + f_{i-1}), f = xu + 2u^3.
fn numerov_residual(x: &[f64], u: &[f64], c: f64, out: &mut [f64]) {
    let n = x.len();
    let f = |i: usize| x[i] * u[i] + 2.0 * u[i] * u[i] * u[i];
    for i in 1..n - 1 {
        out[i - 1] =
            (u[i + 1] - 2.0 * u[i] + u[i - 1]) - c * (f(i + 1) + 10.0 * f(i) + f(i - 1));
    }
}

fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0f64, |m, x| m.max(x.abs()))
}

/// Damped-Newton collocation solve on the given uniform grid. Returns
/// (u, final Numerov residual). The initial guess blends the two
/// boundary asymptotics; convergence takes ~6 iterations.
fn numerov_solve(x: &[f64]) -> (Vec<f64>, f64) {
    let n = x.len();
    let h = x[1] - x[0];
    let c = h * h / 12.0;
    let mut u: Vec<f64> = x
        .iter()
        .map(|&xi| -(airy_ai(xi) + ((-xi).max(0.0) / 2.0).sqrt()))
        .collect();
    u[0] = left_bc(x[0]);
    u[n - 1] = -airy_ai(x[n - 1]);

    let mut r = vec![0.0; n - 2];
    let mut r_try = vec![0.0; n - 2];
    numerov_residual(x, &u, c, &mut r);
    let mut nr = max_abs(&r);
    let tol = 1e-14;
    let max_iter = 80;
    for _ in 0..max_iter {
        if nr < tol {
            break;
        }
        // Tridiagonal Newton system J d = -r with
        // J = [1 - c fp_{i-1}, -2 - 10 c fp_i, 1 - c fp_{i+1}],
        // fp = x + 6u^2; Thomas elimination.
        let fp = |i: usize| x[i] + 6.0 * u[i] * u[i];
        let m = n - 2;
        let mut cp = vec![0.0; m];
        let mut dp = vec![0.0; m];
        let di0 = -2.0 - 10.0 * c * fp(1);
        cp[0] = (1.0 - c * fp(2)) / di0;
        dp[0] = -r[0] / di0;
        for i in 1..m {
            let lo = 1.0 - c * fp(i); // subdiagonal entry of row i
            let di = -2.0 - 10.0 * c * fp(i + 1);
            let denom = di - lo * cp[i - 1];
            cp[i] = if i < m - 1 { (1.0 - c * fp(i + 2)) / denom } else { 0.0 };
            dp[i] = (-r[i] - lo * dp[i - 1]) / denom;
        }
        let mut d = vec![0.0; m];
        d[m - 1] = dp[m - 1];
        for i in (0..m - 1).rev() {
            d[i] = dp[i] - cp[i] * d[i + 1];
        }
        // Backtracking: accept the first step achieving a fixed
        // fractional residual decrease; floor at 1e-4.
        let mut lambda = 1.0;
        let mut u_try = u.clone();
        loop {
            for i in 0..m {
                u_try[i + 1] = u[i + 1] + lambda * d[i];
            }
            numerov_residual(x, &u_try, c, &mut r_try);
            let nr_try = max_abs(&r_try);
            if nr_try <= nr * (1.0 - 0.25 * lambda) || lambda < 1e-4 {
                std::mem::swap(&mut u, &mut u_try);
                std::mem::swap(&mut r, &mut r_try);
                nr = nr_try;
                break;
            }
            lambda *= 0.5;
        }
    }
    assert!(
        nr < 1e-9 * h * h,
        "Hastings-McLeod Newton did not converge: final residual {:.3e}",
        nr / (h * h)
    );
    (u, nr)
}

/// Solve the Hastings-McLeod boundary value problem on a uniform grid
/// of `n` points over [x_min, x_max]. The returned table is Richardson-
/// sharpened against a half-resolution solve; `u_prime` is filled by
/// 5-point differences, the remaining fields by [`derived_quantities`].
pub fn solve_hastings_mcleod(x_min: f64, x_max: f64, n: usize) -> PainleveSolution {
    assert!(x_min <= -8.0, "need x_min <= -8, got {x_min}");
    assert!(x_max >= 6.0, "need x_max >= 6, got {x_max}");
    assert!(n >= 500, "need n >= 500 grid points, got {n}");
    let grid: Vec<f64> = (0..n)
        .map(|i| x_min + (x_max - x_min) * i as f64 / (n - 1) as f64)
        .collect();
    let (u_fine, _) = numerov_solve(&grid);

    // Half-resolution companion solve for Richardson extrapolation of
    // the O(h^4) Numerov error; the grids do not nest, so the coarse
    // solution is carried over by local cubics and the step ratio enters
    // the weight explicitly.
    let nc = n.div_ceil(2);
    let coarse: Vec<f64> = (0..nc)
        .map(|i| x_min + (x_max - x_min) * i as f64 / (nc - 1) as f64)
        .collect();
    let (u_coarse, _) = numerov_solve(&coarse);
    let hf = grid[1] - grid[0];
    let hc = coarse[1] - coarse[0];
    let fac = hf.powi(4) / (hc.powi(4) - hf.powi(4));
    let u: Vec<f64> = grid
        .iter()
        .zip(&u_fine)
        .map(|(&xi, &uf)| uf + (uf - lagrange_cubic(&coarse, &u_coarse, xi)) * fac)
        .collect();

    let u_prime = five_point_derivative(&u, hf);
    PainleveSolution {
        grid,
        u,
        u_prime,
        v: Vec::new(),
        y: Vec::new(),
        e: Vec::new(),
        f: Vec::new(),
    }
}

fn five_point_derivative(u: &[f64], h: f64) -> Vec<f64> {
    let n = u.len();
    let mut up = vec![0.0; n];
    for i in 2..n - 2 {
        up[i] = (u[i - 2] - 8.0 * u[i - 1] + 8.0 * u[i + 1] - u[i + 2]) / (12.0 * h);
    }
    for i in 0..2 {
        up[i] = (-25.0 * u[i] + 48.0 * u[i + 1] - 36.0 * u[i + 2] + 16.0 * u[i + 3]
            - 3.0 * u[i + 4])
            / (12.0 * h);
        let j = n - 1 - i;
        up[j] = (25.0 * u[j] - 48.0 * u[j - 1] + 36.0 * u[j - 2] - 16.0 * u[j - 3]
            + 3.0 * u[j - 4])
            / (12.0 * h);
    }
    up
}

/// Right-anchored cumulative trapezoid with the Euler-Maclaurin
/// endpoint-derivative correction: out[i] = Int_{x_i}^{x_max} g, given g
/// and g' on a uniform grid. The -h^2/12 correction buys two orders and
/// is required for the 1e-8 accuracy of E and F.
fn cumulative_from_right(g: &[f64], gp: &[f64], h: f64) -> Vec<f64> {
    let n = g.len();
    let mut out = vec![0.0; n];
    for i in (0..n - 1).rev() {
        let seg = 0.5 * h * (g[i] + g[i + 1]) - h * h / 12.0 * (gp[i + 1] - gp[i]);
        out[i] = out[i + 1] + seg;
    }
    out
}

/// Fill v, y, E, F from (grid, u, u'). The integrals defining E and F
/// run to +infinity; beyond x_max the solution is -Ai to far below the
/// working precision, so the tails are closed in Airy form:
/// Int Ai = e^{-zeta}/(2 sqrt(pi) a^{3/4}) (1 - 41/(48 zeta)),
/// Int Ai^2 = Ai'^2 - a Ai^2, Int s Ai^2 = -(a^2 Ai^2 + Ai Ai' - a Ai'^2)/3.
pub fn derived_quantities(sol: &mut PainleveSolution) {
    let (x, u, up) = (&sol.grid, &sol.u, &sol.u_prime);
    let n = x.len();
    let h = x[1] - x[0];
    let u2: Vec<f64> = u.iter().map(|v| v * v).collect();
    let du2: Vec<f64> = (0..n).map(|i| 2.0 * u[i] * up[i]).collect();
    let xu2: Vec<f64> = (0..n).map(|i| x[i] * u2[i]).collect();
    let dxu2: Vec<f64> = (0..n).map(|i| u2[i] + 2.0 * x[i] * u[i] * up[i]).collect();

    let a = x[n - 1];
    let (ai, aip) = (airy_ai(a), airy_ai_prime(a));
    let zeta = 2.0 / 3.0 * a * a.sqrt();
    let int_ai = (-zeta).exp() / (2.0 * std::f64::consts::PI.sqrt() * a.powf(0.75))
        * (1.0 - 41.0 / (48.0 * zeta));
    let g1 = aip * aip - a * ai * ai;
    let g2 = -(a * a * ai * ai + ai * aip - a * aip * aip) / 3.0;

    let ju: Vec<f64> = cumulative_from_right(u, up, h)
        .iter()
        .map(|v| v - int_ai) // tail: Int_{x_max}^inf u = -Int Ai
        .collect();
    let i0: Vec<f64> = cumulative_from_right(&u2, &du2, h)
        .iter()
        .map(|v| v + g1)
        .collect();
    let i1: Vec<f64> = cumulative_from_right(&xu2, &dxu2, h)
        .iter()
        .map(|v| v + g2)
        .collect();

    sol.v = (0..n)
        .map(|i| u[i].powi(4) + x[i] * u2[i] - up[i] * up[i])
        .collect();
    sol.y = (0..n).map(|i| x[i] + 2.0 * up[i] + 2.0 * u2[i]).collect();
    sol.e = ju.iter().map(|j| (0.5 * j).exp()).collect();
    sol.f = (0..n).map(|i| (-0.5 * (i1[i] - x[i] * i0[i])).exp()).collect();
}

/// Shared default solution on [-10, 8] with 2000 points: covers every r
/// the distribution evaluators are asked for, at cubic-interpolation
/// error far below 1e-7.
fn default_solution() -> &'static PainleveSolution {
    use std::sync::OnceLock;
    static SOL: OnceLock<PainleveSolution> = OnceLock::new();
    SOL.get_or_init(|| {
        let mut sol = solve_hastings_mcleod(-10.0, 8.0, 2000);
        derived_quantities(&mut sol);
        sol
    })
}

impl PainleveSolution {
    fn check_range(&self, r: f64) {
        assert!(!self.f.is_empty(), "derived_quantities has not been applied");
        assert!(
            r >= self.grid[0] && r <= self.grid[self.grid.len() - 1],
            "r={r} outside solved range [{}, {}]",
            self.grid[0],
            self.grid[self.grid.len() - 1]
        );
    }

    /// F_GUE(r) = F(r)^2.
    pub fn f_gue(&self, r: f64) -> f64 {
        self.check_range(r);
        let table: Vec<f64> = self.f.iter().map(|f| f * f).collect();
        lagrange_cubic(&self.grid, &table, r)
    }

    /// F_GOE(r) = F(r) E(r).
    pub fn f_goe(&self, r: f64) -> f64 {
        self.check_range(r);
        let table: Vec<f64> = self.f.iter().zip(&self.e).map(|(f, e)| f * e).collect();
        lagrange_cubic(&self.grid, &table, r)
    }

    /// F0_stat(r) = (1 - y v) E^4 F^2.
    pub fn f_br(&self, r: f64) -> f64 {
        self.check_range(r);
        let table: Vec<f64> = (0..self.grid.len())
            .map(|i| {
                (1.0 - self.y[i] * self.v[i]) * self.e[i].powi(4) * self.f[i] * self.f[i]
            })
            .collect();
        lagrange_cubic(&self.grid, &table, r)
    }
}

/// Tracy-Widom GUE distribution function, Painleve route.
pub fn f_gue_p(r: f64) -> f64 {
    default_solution().f_gue(r)
}

/// Tracy-Widom GOE distribution function, Painleve route.
pub fn f_goe_p(r: f64) -> f64 {
    default_solution().f_goe(r)
}

/// Stationary (Baik-Rains) distribution function, Painleve route.
pub fn f_br(r: f64) -> f64 {
    default_solution().f_br(r)
}

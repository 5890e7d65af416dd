//! Interpolation helpers for tabulated functions: a shape-preserving
//! piecewise-cubic Hermite (Fritsch-Carlson slopes) for density/mass
//! tables that must never overshoot or go negative between nodes, and a
//! local 4-point Lagrange cubic for smooth solution tables where plain
//! O(h^4) accuracy is enough.

/// Monotone piecewise-cubic Hermite interpolant. Slopes follow the
/// Fritsch-Carlson weighted harmonic mean, so data monotone on an
/// interval stays monotone interpolated. Queries outside the grid clamp
/// to the end values (callers guard the range; tails are handled
/// analytically upstream).
#[derive(Debug, Clone)]
pub struct Pchip {
    x: Vec<f64>,
    y: Vec<f64>,
    d: Vec<f64>,
}

impl Pchip {
    pub fn new(x: Vec<f64>, y: Vec<f64>) -> Self {
        let n = x.len();
        assert!(n >= 2, "pchip: need at least 2 nodes");
        assert_eq!(n, y.len(), "pchip: x/y length mismatch");
        assert!(
            x.windows(2).all(|w| w[1] > w[0]),
            "pchip: abscissae must be strictly increasing"
        );
        let h: Vec<f64> = x.windows(2).map(|w| w[1] - w[0]).collect();
        let delta: Vec<f64> = (0..n - 1).map(|i| (y[i + 1] - y[i]) / h[i]).collect();
        let mut d = vec![0.0; n];
        for i in 1..n - 1 {
            if delta[i - 1] * delta[i] > 0.0 {
                let w1 = 2.0 * h[i] + h[i - 1];
                let w2 = h[i] + 2.0 * h[i - 1];
                d[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
            }
        }
        d[0] = edge_slope(h[0], h.get(1).copied().unwrap_or(h[0]), delta[0], *delta.get(1).unwrap_or(&delta[0]));
        d[n - 1] = edge_slope(
            h[n - 2],
            if n >= 3 { h[n - 3] } else { h[n - 2] },
            delta[n - 2],
            if n >= 3 { delta[n - 3] } else { delta[n - 2] },
        );
        Pchip { x, y, d }
    }

    pub fn eval(&self, xq: f64) -> f64 {
        let n = self.x.len();
        if xq <= self.x[0] {
            return self.y[0];
        }
        if xq >= self.x[n - 1] {
            return self.y[n - 1];
        }
        let i = self.x.partition_point(|v| *v <= xq) - 1;
        let h = self.x[i + 1] - self.x[i];
        let t = (xq - self.x[i]) / h;
        let (t2, t3) = (t * t, t * t * t);
        let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
        let h10 = t3 - 2.0 * t2 + t;
        let h01 = -2.0 * t3 + 3.0 * t2;
        let h11 = t3 - t2;
        h00 * self.y[i] + h10 * h * self.d[i] + h01 * self.y[i + 1] + h11 * h * self.d[i + 1]
    }
}

/// Non-centered three-point end slope with the standard monotonicity
/// limiters.
fn edge_slope(h0: f64, h1: f64, d0: f64, d1: f64) -> f64 {
    let mut d = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if d * d0 <= 0.0 {
        d = 0.0;
    } else if d0 * d1 < 0.0 && d.abs() > 3.0 * d0.abs() {
        d = 3.0 * d0;
    }
    d
}

/// Local 4-point Lagrange cubic on a sorted grid: picks the bracketing
/// interval and the nearest 4 nodes (shifted inward at the ends),
/// O(h^4) for smooth data. Queries outside the grid clamp to the ends.
pub fn lagrange_cubic(xs: &[f64], ys: &[f64], xq: f64) -> f64 {
    let n = xs.len();
    assert!(n >= 4, "lagrange_cubic: need at least 4 nodes");
    assert_eq!(n, ys.len());
    if xq <= xs[0] {
        return ys[0];
    }
    if xq >= xs[n - 1] {
        return ys[n - 1];
    }
    let i = xs.partition_point(|v| *v <= xq) - 1;
    let lo = i.saturating_sub(1).min(n - 4);
    let mut acc = 0.0;
    for j in lo..lo + 4 {
        let mut lj = ys[j];
        for k in lo..lo + 4 {
            if k != j {
                lj *= (xq - xs[k]) / (xs[j] - xs[k]);
            }
        }
        acc += lj;
    }
    acc
}

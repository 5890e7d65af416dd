//! Complementary error function erfc on the real line.
//!
//! Series for the bulk (via erf), Lentz continued fraction for the tail
//! where the series would need e^{x^2} of cancellation headroom.

/// erf(x) by its Maclaurin series; accurate for |x| < 2 where the largest
/// term is < e^4 times the result.
fn erf_series(x: f64) -> f64 {
    let x2 = x * x;
    let mut term = x;
    let mut sum = x;
    for k in 1..120 {
        let kf = k as f64;
        term *= -x2 / kf;
        let add = term / (2.0 * kf + 1.0);
        sum += add;
        if add.abs() < 1e-18 * sum.abs() {
            break;
        }
    }
    2.0 / std::f64::consts::PI.sqrt() * sum
}

/// Continued fraction erfc(x) = e^{-x^2}/sqrt(pi) * 1/(x + 1/2/(x + 1/(x
/// + 3/2/(x + ...)))) evaluated by the modified Lentz algorithm; used for
/// x >= 2.
fn erfc_cf(x: f64) -> f64 {
    let tiny = 1e-300;
    let mut f = x;
    let mut c = f;
    let mut d = 0.0;
    for k in 1..300 {
        let a = k as f64 / 2.0;
        // b = x throughout.
        d = x + a * d;
        if d == 0.0 {
            d = tiny;
        }
        c = x + a / c;
        if c == 0.0 {
            c = tiny;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            break;
        }
    }
    (-x * x).exp() / std::f64::consts::PI.sqrt() / f
}

/// erfc(x) = 1 - erf(x), full relative accuracy in the right tail down to
/// the underflow point (~x = 27), exact 0 beyond it.
pub fn erfc(x: f64) -> f64 {
    assert!(!x.is_nan(), "erfc: NaN argument");
    if x < 0.0 {
        return 2.0 - erfc(-x);
    }
    if x >= 27.0 {
        return 0.0;
    }
    if x < 2.0 {
        1.0 - erf_series(x)
    } else {
        erfc_cf(x)
    }
}

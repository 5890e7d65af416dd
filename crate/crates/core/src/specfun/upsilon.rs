//! The crossing-intensity function
//!
//!   Upsilon(nu, z) = sqrt(pi)/Gamma(1/2+nu) * 1F1(nu; 1/2; z^2/2)
//!                  - sqrt(2 pi) z / Gamma(nu) * 1F1(1/2+nu; 3/2; z^2/2)
//!
//! (equivalently 2^nu e^{z^2/4} D_{-2nu}(z) in terms of the parabolic
//! cylinder function), its negative real zeros in nu, and a rescaled
//! variant h = Gamma(1/2+nu) * Upsilon used for deep zeros.
//!
//! Upsilon is entire in nu: the Gamma reciprocals are taken through
//! [`recip_gamma`] so the poles contribute exact zeros. Deep in nu the
//! entire form grows like Gamma(|nu|) and the zero residual |Upsilon|
//! cannot be driven to 1e-10 in f64 even with nu correct to the last
//! bit; h stays O(1) between its half-integer poles, so the deep-zero
//! scan brackets and bisects h instead.

use super::gamma::{gamma, lngamma_signed, recip_gamma};
use super::hyp::hyp1f1;

const SQRT_PI: f64 = 1.772_453_850_905_516_1;
const SQRT_2PI: f64 = 2.506_628_274_631_000_7;

/// Upsilon(nu, z), entire in nu.
pub fn upsilon(nu: f64, z: f64) -> f64 {
    let w = z * z / 2.0;
    SQRT_PI * recip_gamma(0.5 + nu) * hyp1f1(nu, 0.5, w)
        - SQRT_2PI * z * recip_gamma(nu) * hyp1f1(0.5 + nu, 1.5, w)
}

/// h(nu, z) = Gamma(1/2+nu) * Upsilon(nu, z), computed without forming
/// either huge factor: Gamma(1/2+nu)/Gamma(nu) = tan(pi nu) *
/// Gamma(1-nu)/Gamma(1/2-nu) by reflection, and both right-half-plane
/// Gammas stay representable for the |nu| <= ~60 this crate uses.
/// Poles at nu = -1/2 - k.
pub(crate) fn upsilon_h(nu: f64, z: f64) -> f64 {
    let w = z * z / 2.0;
    let ratio = if nu > 0.2 {
        gamma(0.5 + nu) / gamma(nu)
    } else {
        // tan has period pi, so reduce the argument exactly first.
        let tanpi = (std::f64::consts::PI * (nu - nu.round())).tan();
        tanpi * gamma(1.0 - nu) / gamma(0.5 - nu)
    };
    SQRT_PI * hyp1f1(nu, 0.5, w) - SQRT_2PI * z * ratio * hyp1f1(0.5 + nu, 1.5, w)
}

/// d/dnu of Upsilon at a zero nu_0 of Upsilon(., z), returned as
/// (log magnitude, sign). At a zero, dUpsilon = h'(nu_0)/Gamma(1/2+nu_0)
/// exactly; h' is a central difference with step 1e-6 and the Gamma is
/// folded in through its signed logarithm (magnitudes pass 1e50 for deep
/// zeros, so the quotient must never be formed directly).
pub(crate) fn dupsilon_log_at_zero(nu0: f64, z: f64) -> (f64, f64) {
    let h = 1e-6;
    let d = (upsilon_h(nu0 + h, z) - upsilon_h(nu0 - h, z)) / (2.0 * h);
    let (lg, sg) = lngamma_signed(0.5 + nu0);
    (d.abs().ln() - lg, d.signum() * sg)
}

fn bisect_to_ulp(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let mut flo = f(lo);
    loop {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            return mid;
        }
        let fm = f(mid);
        if flo * fm <= 0.0 {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
    }
}

/// The n largest (least negative) real zeros nu_1 > nu_2 > ... of
/// nu -> Upsilon(nu, b/sqrt(2)), found by a sign-change scan from just
/// below 0 and bisection to the last bit. The scan window starts at
/// n + 5 units and widens geometrically; exhausting 16x the initial
/// window without finding n zeros panics, reporting the window searched.
pub fn upsilon_zeros(b: f64, n: usize) -> Vec<f64> {
    assert!(b > 0.0, "upsilon_zeros: b must be positive, got {b}");
    assert!(n >= 1, "upsilon_zeros: need n >= 1");
    let z = b / std::f64::consts::SQRT_2;
    zeros_scan(z, n)
}

/// Shared scan used by [`upsilon_zeros`] and by the square-root-barrier
/// density (which needs the mirrored argument -b/sqrt(2)).
pub(crate) fn zeros_scan(z: f64, n: usize) -> Vec<f64> {
    // Step 0.005: zeros are spaced ~1 apart but at small |z| each sits
    // within O(z) of a half-integer, and the fine step keeps the bracket
    // unambiguous there at negligible cost.
    let step = 0.005;
    let mut window = (n + 5) as f64;
    let max_window = window * 16.0;
    loop {
        let mut out = Vec::with_capacity(n);
        let mut nu = -1e-4;
        let mut prev = upsilon(nu, z);
        while out.len() < n && nu > -window {
            let next = nu - step;
            let cur = upsilon(next, z);
            if prev == 0.0 {
                out.push(nu);
            } else if prev * cur < 0.0 {
                out.push(bisect_to_ulp(|v| upsilon(v, z), next, nu));
            }
            prev = cur;
            nu = next;
        }
        if out.len() >= n {
            out.truncate(n);
            return out;
        }
        window *= 2.0;
        assert!(
            window <= max_window,
            "upsilon zero scan exhausted: {} of {n} zeros in nu in (-{}, 0)",
            out.len(),
            window / 2.0
        );
    }
}

/// Deep zeros of Upsilon(., z) via the rescaled h: each half-unit
/// interval between the poles of h is gridded and sign changes are
/// bisected. Used by the square-root-barrier series, which needs ~45
/// zeros where the entire form has long since left f64 range.
pub(crate) fn zeros_deep_h(z: f64, n: usize) -> Vec<f64> {
    let mut zeros: Vec<f64> = Vec::with_capacity(n);
    let mut k = 0usize;
    while zeros.len() < n && k < 2 * n + 40 {
        let lo = -((k + 1) as f64) * 0.5 + 1e-9;
        let hi = if k == 0 { -1e-12 } else { -(k as f64) * 0.5 - 1e-9 };
        let m = 40;
        let mut prev = upsilon_h(lo, z);
        for i in 1..=m {
            let x = lo + (hi - lo) * i as f64 / m as f64;
            let cur = upsilon_h(x, z);
            if prev.is_finite() && cur.is_finite() && prev * cur < 0.0 {
                let left = lo + (hi - lo) * (i - 1) as f64 / m as f64;
                zeros.push(bisect_to_ulp(|v| upsilon_h(v, z), left, x));
            }
            prev = cur;
        }
        k += 1;
    }
    zeros.sort_by(|a, b| b.partial_cmp(a).unwrap());
    zeros.truncate(n);
    assert!(
        zeros.len() == n,
        "deep upsilon zero scan found {} of {n} zeros",
        zeros.len()
    );
    zeros
}

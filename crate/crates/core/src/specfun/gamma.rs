//! Gamma function and its reciprocal on the real line.
//!
//! Lanczos approximation (g = 7, 9 coefficients), reflection formula for
//! x < 0.5. The reciprocal is provided separately because 1/Gamma is
//! entire: it returns exactly 0.0 at the poles 0, -1, -2, ... where
//! `gamma` itself panics.

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

/// Lanczos core for x >= 0.5.
fn gamma_pos(x: f64) -> f64 {
    let z = x - 1.0;
    let mut a = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    (2.0 * std::f64::consts::PI).sqrt() * t.powf(z + 0.5) * (-t).exp() * a
}

/// Gamma(x) for real x. Panics at the poles (non-positive integers).
pub fn gamma(x: f64) -> f64 {
    assert!(x.is_finite(), "gamma: non-finite argument {x}");
    assert!(
        !is_nonpositive_integer(x),
        "gamma: pole at non-positive integer {x}"
    );
    if x >= 0.5 {
        gamma_pos(x)
    } else {
        // Reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x).
        std::f64::consts::PI / ((std::f64::consts::PI * x).sin() * gamma_pos(1.0 - x))
    }
}

/// 1/Gamma(x), entire in x: exactly 0.0 at non-positive integers.
pub fn recip_gamma(x: f64) -> f64 {
    assert!(x.is_finite(), "recip_gamma: non-finite argument {x}");
    if is_nonpositive_integer(x) {
        return 0.0;
    }
    if x > 0.5 {
        1.0 / gamma_pos(x)
    } else {
        // 1/Gamma(x) = sin(pi x) Gamma(1-x) / pi, stable near the poles.
        (std::f64::consts::PI * x).sin() * gamma_pos(1.0 - x) / std::f64::consts::PI
    }
}

/// (ln|Gamma(x)|, sign of Gamma(x)). Needed where Gamma itself would
/// overflow or where a product of huge Gammas must be tracked in log
/// space (derivative normalization at deep Upsilon zeros).
pub(crate) fn lngamma_signed(x: f64) -> (f64, f64) {
    assert!(x.is_finite(), "lngamma_signed: non-finite argument {x}");
    assert!(
        !is_nonpositive_integer(x),
        "lngamma_signed: pole at non-positive integer {x}"
    );
    if x >= 0.5 {
        let z = x - 1.0;
        let mut a = LANCZOS[0];
        for (i, c) in LANCZOS.iter().enumerate().skip(1) {
            a += c / (z + i as f64);
        }
        let t = z + LANCZOS_G + 0.5;
        let ln = 0.5 * (2.0 * std::f64::consts::PI).ln() + (z + 0.5) * t.ln() - t + a.ln();
        (ln, 1.0)
    } else {
        // Reflection in log space; sin(pi x) sign via exact range reduction.
        let m = x.floor();
        let r = x - m; // in [0, 1), sin(pi r) >= 0
        let sinpi = (std::f64::consts::PI * r).sin();
        let sign = if (m as i64).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        let (lg1mx, _) = lngamma_signed(1.0 - x);
        (std::f64::consts::PI.ln() - sinpi.ln() - lg1mx, sign)
    }
}

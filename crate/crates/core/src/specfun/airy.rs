//! Airy function Ai, its derivative, and its negative real zeros.
//!
//! Evaluation scheme (three regimes, all self-contained):
//!
//! * `|x| > 8`: Poincare asymptotic expansions, exponential form on the
//!   positive side and the oscillatory cos/sin form on the negative side,
//!   truncated at the smallest term. Relative error ~ e^{-2 zeta} with
//!   zeta = (2/3)|x|^{3/2}, below 1e-13 at |x| = 8.
//! * `|x| <= 0.25`: Taylor series around 0 seeded with the exact values
//!   Ai(0), Ai'(0).
//! * otherwise: Taylor step of at most 0.25 from the nearest anchor of a
//!   precomputed table at spacing 0.5 on [-8, 8]. Anchors are marched
//!   inward from asymptotic seeds at +-8 using the ODE recurrence; both
//!   marches are numerically stable (the error's growing-solution
//!   component shrinks toward the origin on the positive side and stays
//!   neutral in the oscillatory regime).
//!
//! A pure two-regime scheme (Maclaurin to |x| ~ 4.5, asymptotic beyond)
//! cannot reach 12 significant digits in double precision: the Maclaurin
//! series loses ~ e^{(4/3)x^{3/2}} of precision to cancellation on the
//! positive side while the asymptotic error is still ~ 1e-10 near x = 6.
//! The anchor march bridges that window at full precision.

use std::sync::OnceLock;

/// Ai(0) = 3^{-2/3}/Gamma(2/3).
const AI0: f64 = 0.355_028_053_887_817_22;
/// Ai'(0) = -3^{-1/3}/Gamma(1/3).
const AIP0: f64 = -0.258_819_403_792_806_82;

const ANCHOR_SPACING: f64 = 0.5;
/// Anchors cover [-8, 8]; index k holds x = -8 + k/2.
const ANCHOR_MIN: f64 = -8.0;
const N_ANCHORS: usize = 33;
const SWITCH_ASYMPTOTIC: f64 = 8.0;

/// Taylor coefficients of a solution of y'' = x y around x0, from
/// (y(x0), y'(x0)): a_{k+2} = (x0 a_k + a_{k-1}) / ((k+1)(k+2)).
/// Returns (y, y') at x0 + d. 26 terms hold |d| <= 0.5 at |x0| <= 8
/// to below 1e-17 relative.
fn taylor_step(x0: f64, y: f64, yp: f64, d: f64) -> (f64, f64) {
    const K: usize = 30;
    let mut a = [0.0f64; K];
    a[0] = y;
    a[1] = yp;
    for k in 0..K - 2 {
        let prev = if k == 0 { 0.0 } else { a[k - 1] };
        a[k + 2] = (x0 * a[k] + prev) / (((k + 1) * (k + 2)) as f64);
    }
    let mut s = 0.0;
    let mut sp = 0.0;
    // Horner from the top for accuracy.
    for k in (1..K).rev() {
        s = s * d + a[k];
        sp = sp * d + a[k] * k as f64;
    }
    s = s * d + a[0];
    (s, sp)
}

/// Positive-side asymptotics, x >= 8 (DLMF 9.7.5-9.7.6 truncated at the
/// smallest term): returns (Ai, Ai').
fn asymptotic_pos(x: f64) -> (f64, f64) {
    let zeta = 2.0 / 3.0 * x * x.sqrt();
    let mut u = 1.0; // u_k
    let mut sa = 1.0;
    let mut sb = 1.0;
    let mut sign = 1.0;
    let mut zk = 1.0;
    let mut last = f64::INFINITY;
    for k in 0..60 {
        let kf = k as f64;
        u *= (6.0 * kf + 1.0) * (6.0 * kf + 5.0) / (72.0 * (kf + 1.0));
        zk /= zeta;
        sign = -sign;
        let term_a = sign * u * zk;
        if term_a.abs() >= last {
            break; // smallest-term truncation
        }
        last = term_a.abs();
        let v = -u * (6.0 * (kf + 1.0) + 1.0) / (6.0 * (kf + 1.0) - 1.0);
        sa += term_a;
        sb += sign * v * zk;
        if last < 1e-18 {
            break;
        }
    }
    let pre = (-zeta).exp() / (2.0 * std::f64::consts::PI.sqrt());
    let xq = x.sqrt().sqrt();
    (pre / xq * sa, -pre * xq * sb)
}

/// Negative-side asymptotics, x <= -8 (DLMF 9.7.9/9.7.11): returns (Ai, Ai').
fn asymptotic_neg(x: f64) -> (f64, f64) {
    let z = -x;
    let zeta = 2.0 / 3.0 * z * z.sqrt();
    let theta = zeta - std::f64::consts::FRAC_PI_4;
    // Even/odd splits of the u_k, v_k series with alternating signs.
    let mut u = 1.0;
    let (mut pu, mut qu) = (1.0, 0.0);
    let (mut pv, mut qv) = (1.0, 0.0);
    let mut zk = 1.0;
    let mut last = f64::INFINITY;
    for k in 0..60 {
        let kf = k as f64;
        u *= (6.0 * kf + 1.0) * (6.0 * kf + 5.0) / (72.0 * (kf + 1.0));
        zk /= zeta;
        let term = u * zk;
        if term >= last {
            break;
        }
        last = term;
        let v = -u * (6.0 * (kf + 1.0) + 1.0) / (6.0 * (kf + 1.0) - 1.0);
        // k odd in DLMF indexing: k+1 is the series index here.
        let idx = k + 1;
        let sgn = if (idx / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if idx % 2 == 1 {
            qu += sgn * u * zk;
            qv += sgn * v * zk;
        } else {
            pu += sgn * u * zk;
            pv += sgn * v * zk;
        }
        if term < 1e-18 {
            break;
        }
    }
    let sq = std::f64::consts::PI.sqrt();
    let zq = z.sqrt().sqrt();
    let ai = (theta.cos() * pu + theta.sin() * qu) / (sq * zq);
    let aip = (theta.sin() * pv - theta.cos() * qv) * zq / sq;
    (ai, aip)
}

fn anchors() -> &'static [(f64, f64); N_ANCHORS] {
    static TABLE: OnceLock<[(f64, f64); N_ANCHORS]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = [(0.0f64, 0.0f64); N_ANCHORS];
        let idx = |x: f64| ((x - ANCHOR_MIN) / ANCHOR_SPACING).round() as usize;
        t[idx(0.0)] = (AI0, AIP0);
        // March from +8 down to +0.5.
        let (mut y, mut yp) = asymptotic_pos(8.0);
        t[idx(8.0)] = (y, yp);
        let mut x = 8.0;
        while x > 0.5 + 1e-9 {
            let (ny, nyp) = taylor_step(x, y, yp, -ANCHOR_SPACING);
            x -= ANCHOR_SPACING;
            y = ny;
            yp = nyp;
            t[idx(x)] = (y, yp);
        }
        // March from -8 up to -0.5.
        let (mut y, mut yp) = asymptotic_neg(-8.0);
        t[idx(-8.0)] = (y, yp);
        let mut x = -8.0;
        while x < -0.5 - 1e-9 {
            let (ny, nyp) = taylor_step(x, y, yp, ANCHOR_SPACING);
            x += ANCHOR_SPACING;
            y = ny;
            yp = nyp;
            t[idx(x)] = (y, yp);
        }
        t
    })
}

pub(crate) fn airy_both(x: f64) -> (f64, f64) {
    assert!(x.is_finite(), "airy: non-finite argument {x}");
    if x >= SWITCH_ASYMPTOTIC {
        if x > 108.0 {
            // e^{-zeta} underflows past ~108; the value is a clean zero.
            return (0.0, 0.0);
        }
        return asymptotic_pos(x);
    }
    if x <= -SWITCH_ASYMPTOTIC {
        return asymptotic_neg(x);
    }
    let k = (((x - ANCHOR_MIN) / ANCHOR_SPACING).round() as isize)
        .clamp(0, N_ANCHORS as isize - 1) as usize;
    let x0 = ANCHOR_MIN + k as f64 * ANCHOR_SPACING;
    let (y, yp) = anchors()[k];
    taylor_step(x0, y, yp, x - x0)
}

/// Airy function Ai(x). At least 12 significant digits for |x| <= 20
/// (tested against an independent multiprecision table).
pub fn airy_ai(x: f64) -> f64 {
    airy_both(x).0
}

/// Derivative Ai'(x), same accuracy contract as [`airy_ai`].
pub fn airy_ai_prime(x: f64) -> f64 {
    airy_both(x).1
}

/// First `n` negative real zeros of Ai, ordered a_1 > a_2 > ...
/// (decreasing), each located by bisection to |Ai| <= 1e-12.
pub fn airy_zeros(n: usize) -> Vec<f64> {
    assert!(n >= 1, "airy_zeros: need n >= 1");
    let mut out = Vec::with_capacity(n);
    for k in 1..=n {
        // McMahon expansion seeds the bracket.
        let t = 3.0 * std::f64::consts::PI * (4.0 * k as f64 - 1.0) / 8.0;
        let t2 = t * t;
        let approx = -t.powf(2.0 / 3.0)
            * (1.0 + 5.0 / 48.0 / t2 - 5.0 / 36.0 / (t2 * t2));
        let (mut lo, mut hi) = (approx - 0.2, approx + 0.2);
        let (mut flo, mut fhi) = (airy_ai(lo), airy_ai(hi));
        // Widen if the McMahon seed is off (never happens for k <= 200).
        let mut widen = 0;
        while flo * fhi > 0.0 && widen < 8 {
            lo -= 0.2;
            hi += 0.2;
            flo = airy_ai(lo);
            fhi = airy_ai(hi);
            widen += 1;
        }
        assert!(flo * fhi <= 0.0, "airy_zeros: bracket failed at k={k}");
        for _ in 0..90 {
            let mid = 0.5 * (lo + hi);
            if mid == lo || mid == hi {
                break;
            }
            let fm = airy_ai(mid);
            if flo * fm <= 0.0 {
                hi = mid;
            } else {
                lo = mid;
                flo = fm;
            }
        }
        out.push(0.5 * (lo + hi));
    }
    out
}

/// Minimal complex value for the upper-half-plane Ai evaluations below.
/// Only the operations those two functions need; everything by value.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Cx {
    pub re: f64,
    pub im: f64,
}

impl Cx {
    pub fn new(re: f64, im: f64) -> Cx {
        Cx { re, im }
    }

    fn abs2(self) -> f64 {
        self.re * self.re + self.im * self.im
    }

    pub fn abs(self) -> f64 {
        self.abs2().sqrt()
    }

    /// Principal logarithm.
    fn ln(self) -> Cx {
        Cx::new(0.5 * self.abs2().ln(), self.im.atan2(self.re))
    }

    pub fn exp(self) -> Cx {
        let r = self.re.exp();
        Cx::new(r * self.im.cos(), r * self.im.sin())
    }

    /// Principal power z^p via exp(p ln z).
    fn powf(self, p: f64) -> Cx {
        let l = self.ln();
        Cx::new(p * l.re, p * l.im).exp()
    }

    fn scale(self, s: f64) -> Cx {
        Cx::new(s * self.re, s * self.im)
    }
}

impl std::ops::Add for Cx {
    type Output = Cx;
    fn add(self, o: Cx) -> Cx {
        Cx::new(self.re + o.re, self.im + o.im)
    }
}

impl std::ops::Sub for Cx {
    type Output = Cx;
    fn sub(self, o: Cx) -> Cx {
        Cx::new(self.re - o.re, self.im - o.im)
    }
}

impl std::ops::Mul for Cx {
    type Output = Cx;
    fn mul(self, o: Cx) -> Cx {
        Cx::new(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )
    }
}

impl std::ops::Div for Cx {
    type Output = Cx;
    fn div(self, o: Cx) -> Cx {
        let d = o.abs2();
        Cx::new(
            (self.re * o.re + self.im * o.im) / d,
            (self.im * o.re - self.re * o.im) / d,
        )
    }
}

/// Switch radius between the complex Maclaurin series and the asymptotic
/// log form. Near arg z = pi/2 the series cancellation factor is only
/// e^{(1 - 1/sqrt2) zeta} (~3 digits at |z| = 8), and |zeta| > 14 puts the
/// optimally truncated asymptotic error below 1e-12, so the two regimes
/// overlap comfortably for the sector this crate uses.
const COMPLEX_SWITCH: f64 = 8.0;

/// Ai(z) for Im z >= 0 and moderate Re z (|Re z| <= ~4 is exercised; the
/// contour-integral spot checks stay near the imaginary axis, where this
/// scheme holds ~12 digits). Not a general-plane implementation.
pub(crate) fn airy_ai_complex(z: Cx) -> Cx {
    assert!(z.im >= 0.0, "airy_ai_complex: lower half plane unsupported");
    if z.abs() <= COMPLEX_SWITCH {
        // Ai = Ai(0) f(z) + Ai'(0) g(z) with the standard 9.4.1-type
        // recurrences: f-term ratio z^3/((3k+2)(3k+3)), g-term ratio
        // z^3/((3k+3)(3k+4)).
        let z3 = z * z * z;
        let mut f_term = Cx::new(1.0, 0.0);
        let mut g_term = z;
        let mut f = f_term;
        let mut g = g_term;
        for k in 0..80 {
            let kf = k as f64;
            f_term = f_term * z3.scale(1.0 / ((3.0 * kf + 2.0) * (3.0 * kf + 3.0)));
            g_term = g_term * z3.scale(1.0 / ((3.0 * kf + 3.0) * (3.0 * kf + 4.0)));
            f = f + f_term;
            g = g + g_term;
            if f_term.abs() < 1e-18 * f.abs() && g_term.abs() < 1e-18 * g.abs() {
                break;
            }
        }
        f.scale(AI0) + g.scale(AIP0)
    } else {
        airy_ai_log_complex(z).exp()
    }
}

/// log Ai(z) for Im z >= 0, |z| >= COMPLEX_SWITCH: -zeta - (1/4) ln z
/// - ln(2 sqrt pi) + ln(asymptotic sum), zeta = (2/3) z^{3/2} principal.
/// The imaginary part is the smooth asymptotic phase, not reduced mod
/// 2 pi; callers use exp() or phase differences, both insensitive to the
/// winding. Needed because Ai grows like e^{|zeta|/sqrt2} along the
/// imaginary axis and overflows f64 past |z| ~ 800 while ratios of two
/// such values stay moderate.
pub(crate) fn airy_ai_log_complex(z: Cx) -> Cx {
    assert!(z.im >= 0.0, "airy_ai_log_complex: lower half plane unsupported");
    let zeta = z.powf(1.5).scale(2.0 / 3.0);
    // S = sum u_k (-1/zeta)^k, truncated at the smallest term.
    let inv = Cx::new(-1.0, 0.0) / zeta;
    let mut u = 1.0;
    let mut powk = Cx::new(1.0, 0.0);
    let mut s = Cx::new(1.0, 0.0);
    let mut last = f64::INFINITY;
    for k in 0..20 {
        let kf = k as f64;
        u *= (6.0 * kf + 1.0) * (6.0 * kf + 5.0) / (72.0 * (kf + 1.0));
        powk = powk * inv;
        let term = powk.scale(u);
        let mag = term.abs();
        if mag >= last {
            break;
        }
        last = mag;
        s = s + term;
        if mag < 1e-17 {
            break;
        }
    }
    let ln_sum = s.ln();
    let quarter_ln = z.ln().scale(0.25);
    let c = (2.0 * std::f64::consts::PI.sqrt()).ln();
    Cx::new(
        -zeta.re - quarter_ln.re - c + ln_sum.re,
        -zeta.im - quarter_ln.im + ln_sum.im,
    )
}

//! Confluent hypergeometric function 1F1(a; b; z) by Kahan-compensated
//! power series.
//!
//! The series is used directly: in this crate 1F1 only feeds the
//! crossing-intensity function Upsilon, whose arguments stay within
//! |z| <= ~36 (enforced by the b >= 12 early-out upstream). For negative
//! `a` of large magnitude the alternating series cancels; at the extreme
//! corner of our domain (a ~ -20, z ~ 36) about 7 digits survive, which
//! downstream tolerances absorb. Arguments beyond |z| = 120 are refused
//! rather than silently degraded.

/// 1F1(a; b; z). Panics if b is a non-positive integer (poles of the
/// series) or |z| > 120 (series would lose too much precision).
pub fn hyp1f1(a: f64, b: f64, z: f64) -> f64 {
    assert!(
        a.is_finite() && b.is_finite() && z.is_finite(),
        "hyp1f1: non-finite argument"
    );
    assert!(
        !(b <= 0.0 && b == b.floor()),
        "hyp1f1: b={b} is a non-positive integer"
    );
    assert!(z.abs() <= 120.0, "hyp1f1: |z|={} exceeds series domain", z.abs());

    let mut sum = 1.0f64;
    let mut comp = 0.0f64; // Kahan compensation
    let mut term = 1.0f64;
    let mut small_streak = 0;
    for k in 0..700 {
        let kf = k as f64;
        term *= (a + kf) * z / ((b + kf) * (kf + 1.0));
        if term == 0.0 {
            break; // a is a non-positive integer: polynomial case
        }
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if term.abs() <= 1e-17 * sum.abs() {
            small_streak += 1;
            if small_streak >= 3 {
                break;
            }
        } else {
            small_streak = 0;
        }
    }
    sum
}

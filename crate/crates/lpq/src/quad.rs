//! Adaptive quadrature for power-law integrands with an endpoint
//! singularity, plus closed forms for single power terms.
//!
//! Membership (finite vs divergent) is always decided exactly from the
//! exponents before any quadrature runs; the routines here only produce
//! finite values or divergence evidence.

/// Relative tolerance for adaptive subdivision.
pub const REL_TOL: f64 = 1e-9;

/// Truncated integrals on (eps, 1] are declared divergent once they exceed
/// this blow-up threshold along eps = 2^-k.
pub const BLOWUP_THRESHOLD: f64 = 1e12;

/// Exact antiderivative of c * x^e on [x0, x1], 0 < x0 <= x1 (finite), with
/// the logarithmic case e = -1 handled explicitly.
pub fn power_integral(c: f64, e: f64, x0: f64, x1: f64) -> f64 {
    if c == 0.0 || x0 >= x1 {
        return 0.0;
    }
    if (e + 1.0).abs() < 1e-15 {
        c * (x1 / x0).ln()
    } else {
        c * (x1.powf(e + 1.0) - x0.powf(e + 1.0)) / (e + 1.0)
    }
}

/// ∫_0^1 f(x) dx where f behaves like x^s near 0 with s > -1.
///
/// The substitution x = t^k absorbs the singularity: the transformed
/// integrand k t^{k-1} f(t^k) vanishes at 0 once k(s+1) - 1 >= 1.
pub fn integrate_unit<F: Fn(f64) -> f64>(f: F, sing_exponent: f64) -> f64 {
    assert!(
        sing_exponent > -1.0,
        "integrand not integrable at 0 (exponent {sing_exponent})"
    );
    let k = if sing_exponent >= 1.0 {
        1.0
    } else {
        (2.0 / (sing_exponent + 1.0)).ceil()
    };
    let g = |t: f64| {
        if t == 0.0 {
            // k(s+1) - 1 >= 1 > 0, so the transformed integrand vanishes
            0.0
        } else {
            k * t.powf(k - 1.0) * f(t.powf(k))
        }
    };
    adaptive_simpson(&g, 0.0, 1.0, REL_TOL)
}

/// ∫_1^∞ f(x) dx where f behaves like x^s at infinity with s < -1.
/// Mapped to the unit interval by x = 1/t.
pub fn integrate_tail<F: Fn(f64) -> f64>(f: F, decay_exponent: f64) -> f64 {
    assert!(
        decay_exponent < -1.0,
        "integrand not integrable at infinity (exponent {decay_exponent})"
    );
    let g = move |t: f64| f(1.0 / t) / (t * t);
    // g(t) ~ t^{-s-2} near 0 and -s-2 > -1
    integrate_unit(g, -decay_exponent - 2.0)
}

/// Divergence evidence: truncated integrals ∫_{2^-k}^1 f dx for growing k,
/// stopping as soon as the blow-up threshold is crossed. Returns the
/// sequence of truncated values.
pub fn truncation_sequence<F: Fn(f64) -> f64>(f: F, max_k: u32) -> Vec<f64> {
    let mut out = Vec::new();
    let mut total = 0.0;
    let mut hi = 1.0;
    for k in 1..=max_k {
        let lo = 2f64.powi(-(k as i32));
        total += adaptive_simpson(&f, lo, hi, REL_TOL);
        hi = lo;
        out.push(total);
        if total > BLOWUP_THRESHOLD {
            break;
        }
    }
    out
}

/// Standard adaptive Simpson with recursion on the local error estimate.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, rel_tol: f64) -> f64 {
    let whole = simpson(f, a, b);
    let scale = whole.abs().max(1e-300);
    recurse(f, a, b, whole, rel_tol * scale, 50)
}

fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
    let m = 0.5 * (a + b);
    (b - a) / 6.0 * (f(a) + 4.0 * f(m) + f(b))
}

fn recurse<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, whole: f64, tol: f64, depth: u32) -> f64 {
    let m = 0.5 * (a + b);
    let left = simpson(f, a, m);
    let right = simpson(f, m, b);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        left + right + delta / 15.0
    } else {
        recurse(f, a, m, left, 0.5 * tol, depth - 1)
            + recurse(f, m, b, right, 0.5 * tol, depth - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn power_integral_closed_forms() {
        // ∫_0^1 x^2 dx restricted away from 0
        let v = power_integral(1.0, 2.0, 0.5, 1.0);
        assert!((v - (1.0 - 0.125) / 3.0).abs() < 1e-15);
        // log case
        let v = power_integral(3.0, -1.0, 0.25, 1.0);
        assert!((v - 3.0 * 4.0f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn singular_unit_integral() {
        // ∫_0^1 x^{-2/3} dx = 3
        let v = integrate_unit(|x| x.powf(-2.0 / 3.0), -2.0 / 3.0);
        assert!((v - 3.0).abs() < 1e-8, "got {v}");
        // ∫_0^1 x^{-1/2} dx = 2
        let v = integrate_unit(|x| x.powf(-0.5), -0.5);
        assert!((v - 2.0).abs() < 1e-8, "got {v}");
    }

    #[test]
    fn tail_integral() {
        // ∫_1^∞ x^{-3} dx = 1/2
        let v = integrate_tail(|x| x.powi(-3), -3.0);
        assert!((v - 0.5).abs() < 1e-8, "got {v}");
    }

    #[test]
    fn truncation_grows_without_bound_for_log_divergence() {
        // ∫_eps^1 x^{-1} dx = ln(1/eps) grows linearly in k
        let seq = truncation_sequence(|x| 1.0 / x, 30);
        assert_eq!(seq.len(), 30);
        let expected = 30.0 * std::f64::consts::LN_2;
        assert!((seq[29] - expected).abs() / expected < 1e-6);
        assert!(seq.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn truncation_crosses_threshold_for_power_divergence() {
        let seq = truncation_sequence(|x| x.powi(-2), 60);
        assert!(seq.last().unwrap() > &BLOWUP_THRESHOLD);
        assert!(seq.len() < 60);
    }
}

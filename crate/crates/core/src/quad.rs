//! Fixed-grid quadrature used by normalization checks and oracle tests.

use std::f64::consts::FRAC_PI_2;

/// Composite Simpson rule over [a, b] with an even number of panels.
pub fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: usize) -> f64 {
    assert!(
        panels >= 2 && panels.is_multiple_of(2),
        "panels must be even and >= 2"
    );
    let h = (b - a) / panels as f64;
    let mut acc = f(a) + f(b);
    for i in 1..panels {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + i as f64 * h);
    }
    acc * h / 3.0
}

/// Integral of `f` over the whole real line via x = center + scale * tan(u).
///
/// The substitution keeps polynomial tails integrable: for a density that
/// decays like |x|^-2 or slower-than-exponential, naive truncation at a few
/// sigma loses mass, while the transformed integrand is smooth and compactly
/// supported in u.
pub fn integrate_real_line<F: Fn(f64) -> f64>(f: F, center: f64, scale: f64, panels: usize) -> f64 {
    assert!(scale > 0.0 && scale.is_finite(), "scale must be positive");
    let eps = 1e-12;
    let g = |u: f64| {
        let t = u.tan();
        f(center + scale * t) * scale * (1.0 + t * t)
    };
    simpson(g, -FRAC_PI_2 + eps, FRAC_PI_2 - eps, panels)
}

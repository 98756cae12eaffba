//! Finite-difference differentiation with Richardson extrapolation.
//!
//! Used for host-supplied (Custom) weights and for the cross-route evaluation
//! of the biorthogonal functions from the eigenvalue kernel.

/// First derivative by central differences, Richardson-extrapolated once.
/// The relative step is eps^(1/3), the standard accuracy/stability compromise
/// for first derivatives.
pub fn central_first<F: Fn(f64) -> f64>(f: &F, x: f64, scale: f64) -> f64 {
    let h = f64::EPSILON.powf(1.0 / 3.0) * scale.max(1e-300);
    let d = |h: f64| (f(x + h) - f(x - h)) / (2.0 * h);
    (4.0 * d(h) - d(2.0 * h)) / 3.0
}

/// k-th derivative on a central stencil, Richardson-extrapolated once.
///
/// The step balances the O(h²) truncation of the stencil against the
/// eps/h^k rounding amplification; with the extrapolation the truncation
/// becomes O(h⁴), so h ~ eps^(1/(k+4)).
pub fn nested_derivative<F: Fn(f64) -> f64>(f: F, x: f64, k: usize, scale: f64) -> f64 {
    high_order(&f, x, k, scale)
}

/// l-th derivative on a uniform central stencil with one Richardson step.
pub fn high_order<F: Fn(f64) -> f64>(f: &F, x: f64, l: usize, scale: f64) -> f64 {
    if l == 0 {
        return f(x);
    }
    if l == 1 {
        return central_first(f, x, scale);
    }
    let h = f64::EPSILON.powf(1.0 / (l as f64 + 4.0)) * scale.max(1e-12);
    let d1 = central_stencil(f, x, l, h);
    let d2 = central_stencil(f, x, l, 2.0 * h);
    (4.0 * d1 - d2) / 3.0
}

fn central_stencil<F: Fn(f64) -> f64>(f: &F, x: f64, l: usize, h: f64) -> f64 {
    // l-th central difference: h^{-l} Σ_j (-1)^j C(l,j) f(x + (l/2 - j) h)
    let mut acc = 0.0;
    let mut coef = 1.0f64;
    for j in 0..=l {
        let offset = (l as f64 / 2.0 - j as f64) * h;
        acc += coef * f(x + offset);
        coef *= -((l - j) as f64) / (j as f64 + 1.0);
    }
    acc / h.powi(l as i32)
}

//! One-point weight families ω on (0, ∞), their Mellin transforms Mω and the
//! Euler-type derivatives (-a ∂_a)^k ω used by the derivative-type densities.
//!
//! Named families carry closed-form Mellin transforms; host-supplied weights
//! provide ln ω (to avoid underflow at large a) plus a declared analyticity
//! strip, and fall back to double-exponential quadrature and log-coordinate
//! finite differences.

use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::{diff, quad, special};

/// Open strip ]s_min, s_max[ on which Mω is analytic.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MellinStrip {
    pub s_min: f64,
    pub s_max: f64,
}

impl MellinStrip {
    pub fn new(s_min: f64, s_max: f64) -> Self {
        MellinStrip { s_min, s_max }
    }

    pub fn contains(&self, re_s: f64) -> bool {
        re_s > self.s_min && re_s < self.s_max
    }

    /// Derivative-type use at dimension n requires s_min < 1 and s_max > n.
    pub fn admits_dimension(&self, n: usize) -> bool {
        self.s_min < 1.0 && self.s_max > n as f64
    }
}

/// Host-supplied weight: ln ω(a), optional closed Mellin transform, declared
/// strip and smoothness.
#[derive(Clone)]
pub struct CustomWeight {
    pub log_eval: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    pub mellin: Option<Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync>>,
    pub strip: MellinStrip,
    /// How many times the weight may be differentiated.
    pub smoothness: u32,
    /// Whether exp-trace deformations keep the weight integrable.
    pub exp_trace_ok: bool,
}

impl std::fmt::Debug for CustomWeight {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CustomWeight")
            .field("strip", &self.strip)
            .field("smoothness", &self.smoothness)
            .finish()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightKind {
    Laguerre,
    Jacobi,
    CauchyLorentz,
    MuttalibBorodin,
    LogSquareLimit,
    Custom,
}

/// A parametrized one-point weight on the positive half-line.
///
/// Parameter slots by family: `nu` is ν (or ν' for the log-square limit),
/// `mu` is μ (Jacobi, Cauchy-Lorentz), `alpha` is α (Muttalib-Borodin) or α'
/// (log-square limit), `theta` is θ (Muttalib-Borodin).
#[derive(Clone, Debug)]
pub struct WeightFamily {
    pub kind: WeightKind,
    pub nu: f64,
    pub mu: f64,
    pub alpha: f64,
    pub theta: f64,
    pub custom: Option<CustomWeight>,
}

impl WeightFamily {
    pub fn laguerre(nu: f64) -> Result<Self> {
        if nu <= -1.0 {
            return Err(Error::config(format!("laguerre requires nu > -1, got {nu}")));
        }
        Ok(WeightFamily { kind: WeightKind::Laguerre, nu, mu: 0.0, alpha: 0.0, theta: 0.0, custom: None })
    }

    pub fn jacobi(nu: f64, mu: f64) -> Result<Self> {
        if nu <= -1.0 || mu < 1.0 {
            return Err(Error::config(format!(
                "jacobi requires nu > -1 and mu >= 1, got nu={nu}, mu={mu}"
            )));
        }
        Ok(WeightFamily { kind: WeightKind::Jacobi, nu, mu, alpha: 0.0, theta: 0.0, custom: None })
    }

    pub fn cauchy_lorentz(nu: f64, mu: f64) -> Result<Self> {
        if nu <= -1.0 || mu <= 0.0 {
            return Err(Error::config(format!(
                "cauchy-lorentz requires nu > -1 and mu > 0, got nu={nu}, mu={mu}"
            )));
        }
        Ok(WeightFamily { kind: WeightKind::CauchyLorentz, nu, mu, alpha: 0.0, theta: 0.0, custom: None })
    }

    pub fn muttalib_borodin(nu: f64, alpha: f64, theta: f64) -> Result<Self> {
        if nu <= -1.0 || alpha <= 0.0 || theta <= 0.0 {
            return Err(Error::config(format!(
                "muttalib-borodin requires nu > -1, alpha > 0, theta > 0; got nu={nu}, alpha={alpha}, theta={theta}"
            )));
        }
        Ok(WeightFamily { kind: WeightKind::MuttalibBorodin, nu, alpha, theta, mu: 0.0, custom: None })
    }

    pub fn log_square(nu_prime: f64, alpha_prime: f64) -> Result<Self> {
        if alpha_prime <= 0.0 {
            return Err(Error::config(format!(
                "log-square requires alpha' > 0, got {alpha_prime}"
            )));
        }
        Ok(WeightFamily { kind: WeightKind::LogSquareLimit, nu: nu_prime, alpha: alpha_prime, mu: 0.0, theta: 0.0, custom: None })
    }

    pub fn custom(custom: CustomWeight) -> Self {
        WeightFamily { kind: WeightKind::Custom, nu: 0.0, mu: 0.0, alpha: 0.0, theta: 0.0, custom: Some(custom) }
    }

    /// Construct by canonical CLI/config name.
    pub fn from_name(name: &str, nu: f64, mu: f64, alpha: f64, theta: f64) -> Result<Self> {
        match name {
            "laguerre" => Self::laguerre(nu),
            "jacobi" => Self::jacobi(nu, mu),
            "cauchy-lorentz" => Self::cauchy_lorentz(nu, mu),
            "muttalib-borodin" => Self::muttalib_borodin(nu, alpha, theta),
            "log-square" => Self::log_square(nu, alpha),
            other => Err(Error::config(format!("unknown family name `{other}`"))),
        }
    }

    pub fn canonical_name(&self) -> &'static str {
        match self.kind {
            WeightKind::Laguerre => "laguerre",
            WeightKind::Jacobi => "jacobi",
            WeightKind::CauchyLorentz => "cauchy-lorentz",
            WeightKind::MuttalibBorodin => "muttalib-borodin",
            WeightKind::LogSquareLimit => "log-square",
            WeightKind::Custom => "custom",
        }
    }

    /// Natural analyticity strip of Mω.
    pub fn strip(&self) -> MellinStrip {
        match self.kind {
            WeightKind::Laguerre | WeightKind::Jacobi | WeightKind::MuttalibBorodin => {
                MellinStrip::new(-self.nu, f64::INFINITY)
            }
            WeightKind::CauchyLorentz => MellinStrip::new(-self.nu, self.mu + 1.0),
            WeightKind::LogSquareLimit => MellinStrip::new(f64::NEG_INFINITY, f64::INFINITY),
            WeightKind::Custom => self.custom.as_ref().unwrap().strip,
        }
    }

    /// Whether multiplying the matrix density by exp[Re(α tr g)] keeps it
    /// integrable. The exponential grows like e^{|α| r} in the eigenvalue
    /// radius, so the weight must decay at least as fast.
    pub fn exp_trace_admissible(&self) -> bool {
        match self.kind {
            WeightKind::Laguerre | WeightKind::Jacobi => true,
            WeightKind::MuttalibBorodin => self.theta > 0.5,
            WeightKind::CauchyLorentz | WeightKind::LogSquareLimit => false,
            WeightKind::Custom => self.custom.as_ref().unwrap().exp_trace_ok,
        }
    }

    /// ω(a).
    pub fn eval(&self, a: f64) -> Result<f64> {
        if !(a > 0.0) {
            return Err(Error::domain(format!("weight argument must be positive, got {a}")));
        }
        Ok(self.eval_unchecked(a))
    }

    pub(crate) fn eval_unchecked(&self, a: f64) -> f64 {
        match self.kind {
            WeightKind::Laguerre => a.powf(self.nu) * (-a).exp(),
            WeightKind::Jacobi => {
                if a >= 1.0 {
                    0.0
                } else {
                    a.powf(self.nu) * (1.0 - a).powf(self.mu - 1.0)
                }
            }
            WeightKind::CauchyLorentz => a.powf(self.nu) / (1.0 + a).powf(self.nu + self.mu + 1.0),
            WeightKind::MuttalibBorodin => a.powf(self.nu) * (-self.alpha * a.powf(self.theta)).exp(),
            WeightKind::LogSquareLimit => {
                let u = a.ln();
                (self.nu * u - self.alpha * u * u).exp()
            }
            WeightKind::Custom => (self.custom.as_ref().unwrap().log_eval)(a).exp(),
        }
    }

    /// ln ω(a); -∞ where ω vanishes.
    pub fn log_eval(&self, a: f64) -> f64 {
        match self.kind {
            WeightKind::Laguerre => self.nu * a.ln() - a,
            WeightKind::Jacobi => {
                if a >= 1.0 {
                    f64::NEG_INFINITY
                } else {
                    self.nu * a.ln() + (self.mu - 1.0) * (1.0 - a).ln()
                }
            }
            WeightKind::CauchyLorentz => self.nu * a.ln() - (self.nu + self.mu + 1.0) * (1.0 + a).ln(),
            WeightKind::MuttalibBorodin => self.nu * a.ln() - self.alpha * a.powf(self.theta),
            WeightKind::LogSquareLimit => {
                let u = a.ln();
                self.nu * u - self.alpha * u * u
            }
            WeightKind::Custom => (self.custom.as_ref().unwrap().log_eval)(a),
        }
    }

    /// Mω(s) = ∫_0^∞ ω(a) a^{s-1} da via the family's closed form.
    pub fn mellin(&self, s: Complex64) -> Result<Complex64> {
        if !self.strip().contains(s.re) {
            return Err(Error::domain(format!(
                "Re s = {} outside the Mellin strip ]{}, {}[",
                s.re,
                self.strip().s_min,
                self.strip().s_max
            )));
        }
        Ok(match self.kind {
            WeightKind::Laguerre => special::gamma_complex(s + self.nu),
            WeightKind::Jacobi => {
                // B(s+ν, μ) = Γ(s+ν)Γ(μ)/Γ(s+ν+μ)
                (special::ln_gamma_complex(s + self.nu) + special::ln_gamma(self.mu)
                    - special::ln_gamma_complex(s + self.nu + self.mu))
                .exp()
            }
            WeightKind::CauchyLorentz => {
                (special::ln_gamma_complex(s + self.nu)
                    + special::ln_gamma_complex(Complex64::new(self.mu + 1.0, 0.0) - s)
                    - special::ln_gamma(self.nu + self.mu + 1.0))
                .exp()
            }
            WeightKind::MuttalibBorodin => {
                let w = (s + self.nu) / self.theta;
                (special::ln_gamma_complex(w) - w * self.alpha.ln()).exp() / self.theta
            }
            WeightKind::LogSquareLimit => {
                // Gaussian integral in u = ln a
                let w = s + self.nu;
                (std::f64::consts::PI / self.alpha).sqrt() * (w * w / (4.0 * self.alpha)).exp()
            }
            WeightKind::Custom => match &self.custom.as_ref().unwrap().mellin {
                Some(m) => m(s),
                None => self.mellin_quadrature(s)?,
            },
        })
    }

    /// Mω at real s.
    pub fn mellin_real(&self, s: f64) -> Result<f64> {
        Ok(self.mellin(Complex64::new(s, 0.0))?.re)
    }

    /// Quadrature evaluation of Mω; the oracle against which every closed
    /// form is validated, and the fallback for Custom weights.
    pub fn mellin_quadrature(&self, s: Complex64) -> Result<Complex64> {
        if !self.strip().contains(s.re) {
            return Err(Error::domain("Mellin abscissa outside declared strip".to_string()));
        }
        let f = |a: f64| -> Complex64 {
            let lw = self.log_eval(a);
            if lw == f64::NEG_INFINITY {
                return Complex64::new(0.0, 0.0);
            }
            // ω(a) a^{s-1} = exp(ln ω + (s-1) ln a)
            (Complex64::new(lw, 0.0) + (s - 1.0) * a.ln()).exp()
        };
        let (v, err) = if self.kind == WeightKind::Jacobi {
            // both endpoints can be singular: a^{s+ν-1} (1-a)^{μ-1}
            quad::tanh_sinh_two_sided(
                |lo, hi| {
                    ((s + self.nu - 1.0) * lo.ln() + Complex64::new((self.mu - 1.0) * hi.ln(), 0.0))
                        .exp()
                },
                0.0,
                1.0,
                1e-13,
            )
        } else {
            let (v1, e1) = quad::tanh_sinh(&f, 0.0, 1.0, 1e-13);
            let (v2, e2) = quad::tanh_sinh(|u| f(1.0 / u) / (u * u), 0.0, 1.0, 1e-13);
            (v1 + v2, e1 + e2)
        };
        if !v.is_finite() {
            return Err(Error::numeric(format!(
                "Mellin quadrature diverged at s = {s} (estimate {v}, error {err})"
            )));
        }
        Ok(v)
    }

    /// (-a ∂_a)^k ω(a); exact polynomial recurrences for the named families,
    /// log-coordinate central differences for Custom.
    pub fn derivative(&self, a: f64, k: usize) -> Result<f64> {
        if !(a > 0.0) {
            return Err(Error::domain(format!("weight argument must be positive, got {a}")));
        }
        if k == 0 {
            return Ok(self.eval_unchecked(a));
        }
        match self.kind {
            WeightKind::Custom => {
                let cw = self.custom.as_ref().unwrap();
                if (k as u32) > cw.smoothness {
                    return Err(Error::capability(format!(
                        "custom weight declared {}-times differentiable, requested k = {k}",
                        cw.smoothness
                    )));
                }
                // (-a∂_a)^k = (-∂_u)^k in u = ln a
                let log_eval = cw.log_eval.clone();
                let g = move |u: f64| log_eval(u.exp()).exp();
                let d = diff::nested_derivative(&g, a.ln(), k, 1.0);
                Ok(if k % 2 == 0 { d } else { -d })
            }
            _ => {
                let mut s = Poly(vec![1.0]);
                for step in 0..k {
                    s = self.euler_step(&s, step);
                }
                let factor = EulerFactor { poly: s, kind: self.kind, order: k as i32 };
                Ok(factor.eval_at(self, a) * self.eval_unchecked(a))
            }
        }
    }

    /// Plain derivative ∂_t^m [t^j ω(t)] at t = a, via the Euler-operator
    /// algebra on the power-shifted family: a^m ∂^m = Π_{i<m} (a∂ - i).
    pub fn plain_derivative_shifted(&self, a: f64, j: usize, m: usize) -> Result<f64> {
        let shifted = self
            .shift_power(j)
            .ok_or_else(|| Error::capability("plain derivatives need a named family".to_string()))?;
        // Π_{i=0}^{m-1}(a∂ - i) = (-1)^m Π_{i=0}^{m-1}(N + i) with N = -a∂
        let coeffs = rising_factorial_coeffs(m);
        let mut acc = 0.0;
        for (kk, &c) in coeffs.iter().enumerate() {
            if c != 0.0 {
                acc += c * shifted.derivative(a, kk)?;
            }
        }
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        Ok(sign * acc / a.powi(m as i32))
    }

    /// The same family with ω replaced by a^j ω (stays inside the named
    /// families).
    pub fn shift_power(&self, j: usize) -> Option<WeightFamily> {
        let j = j as f64;
        let mut f = self.clone();
        match self.kind {
            WeightKind::Laguerre | WeightKind::MuttalibBorodin | WeightKind::LogSquareLimit | WeightKind::Jacobi => {
                f.nu += j;
                Some(f)
            }
            WeightKind::CauchyLorentz => {
                f.nu += j;
                f.mu -= j;
                Some(f)
            }
            WeightKind::Custom => None,
        }
    }

    /// One application of (-a∂) to S·ω in the family's working coordinate.
    fn euler_step(&self, p: &Poly, _step: usize) -> Poly {
        // p is the accumulated polynomial in the family's working coordinate
        match self.kind {
            WeightKind::Laguerre => {
                // S' = (a - ν) S - a S'
                Poly::sub(&Poly::mul(&Poly(vec![-self.nu, 1.0]), p), &Poly::shift_mul_x(&p.derivative()))
            }
            WeightKind::Jacobi => {
                // working form S_k = P_k(a)/(1-a)^k:
                // P_{k+1} = [-ν(1-a) + (μ-1)a] P_k - a(1-a) P_k' - k a P_k
                let k = _step as f64;
                let lead = Poly(vec![-self.nu, self.nu + self.mu - 1.0]);
                let mut out = Poly::mul(&lead, p);
                let a_one_minus_a = Poly(vec![0.0, 1.0, -1.0]);
                out = Poly::sub(&out, &Poly::mul(&a_one_minus_a, &p.derivative()));
                out = Poly::sub(&out, &Poly::mul(&Poly(vec![0.0, k]), p));
                out
            }
            WeightKind::CauchyLorentz => {
                // S_k = P_k(a)/(1+a)^k:
                // P_{k+1} = [-ν(1+a) + (ν+μ+1)a] P_k - a(1+a) P_k' + k a P_k
                let k = _step as f64;
                let lead = Poly(vec![-self.nu, self.mu + 1.0]);
                let mut out = Poly::mul(&lead, p);
                let a_one_plus_a = Poly(vec![0.0, 1.0, 1.0]);
                out = Poly::sub(&out, &Poly::mul(&a_one_plus_a, &p.derivative()));
                out = Poly::add(&out, &Poly::mul(&Poly(vec![0.0, k]), p));
                out
            }
            WeightKind::MuttalibBorodin => {
                // polynomial in y = a^θ: S_{k+1} = (αθ y - ν) S - θ y S'
                let lead = Poly(vec![-self.nu, self.alpha * self.theta]);
                Poly::sub(
                    &Poly::mul(&lead, p),
                    &Poly::mul(&Poly(vec![0.0, self.theta]), &p.derivative()),
                )
            }
            WeightKind::LogSquareLimit => {
                // polynomial in u = ln a: S_{k+1} = (2α'u - ν') S - S'
                let lead = Poly(vec![-self.nu, 2.0 * self.alpha]);
                Poly::sub(&Poly::mul(&lead, p), &p.derivative())
            }
            WeightKind::Custom => unreachable!(),
        }
    }
}

trait Ln1pNeg {
    fn ln_1p_neg(self) -> f64;
}
impl Ln1pNeg for f64 {
    fn ln_1p_neg(self) -> f64 {
        self.ln()
    }
}

struct EulerFactor {
    poly: Poly,
    kind: WeightKind,
    /// derivative order; also the pole order at the finite endpoint
    order: i32,
}

impl EulerFactor {
    fn eval_at(&self, family: &WeightFamily, a: f64) -> f64 {
        match self.kind {
            WeightKind::Laguerre => self.poly.eval(a),
            WeightKind::Jacobi => self.poly.eval(a) / (1.0 - a).powi(self.order),
            WeightKind::CauchyLorentz => self.poly.eval(a) / (1.0 + a).powi(self.order),
            WeightKind::MuttalibBorodin => self.poly.eval(a.powf(family.theta)),
            WeightKind::LogSquareLimit => self.poly.eval(a.ln()),
            WeightKind::Custom => unreachable!(),
        }
    }
}

/// Dense polynomial with f64 coefficients, lowest power first.
#[derive(Clone, Debug)]
struct Poly(Vec<f64>);

impl Poly {
    fn eval(&self, x: f64) -> f64 {
        self.0.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    fn derivative(&self) -> Poly {
        if self.0.len() <= 1 {
            return Poly(vec![0.0]);
        }
        Poly(self.0.iter().enumerate().skip(1).map(|(i, &c)| i as f64 * c).collect())
    }

    fn mul(a: &Poly, b: &Poly) -> Poly {
        let mut out = vec![0.0; a.0.len() + b.0.len() - 1];
        for (i, &x) in a.0.iter().enumerate() {
            for (j, &y) in b.0.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        Poly(out)
    }

    fn add(a: &Poly, b: &Poly) -> Poly {
        let n = a.0.len().max(b.0.len());
        let mut out = vec![0.0; n];
        for (i, &x) in a.0.iter().enumerate() {
            out[i] += x;
        }
        for (i, &y) in b.0.iter().enumerate() {
            out[i] += y;
        }
        Poly(out)
    }

    fn sub(a: &Poly, b: &Poly) -> Poly {
        let n = a.0.len().max(b.0.len());
        let mut out = vec![0.0; n];
        for (i, &x) in a.0.iter().enumerate() {
            out[i] += x;
        }
        for (i, &y) in b.0.iter().enumerate() {
            out[i] -= y;
        }
        Poly(out)
    }

    fn shift_mul_x(&self) -> Poly {
        let mut out = vec![0.0];
        out.extend_from_slice(&self.0);
        Poly(out)
    }
}

/// Coefficients of the rising factorial Π_{i=0}^{m-1}(x + i) in powers of x.
pub(crate) fn rising_factorial_coeffs(m: usize) -> Vec<f64> {
    let mut coeffs = vec![1.0];
    for i in 0..m {
        let mut next = vec![0.0; coeffs.len() + 1];
        for (k, &c) in coeffs.iter().enumerate() {
            next[k + 1] += c; // times x
            next[k] += c * i as f64;
        }
        coeffs = next;
    }
    coeffs
}

/// Coefficients of Π_{j=1}^{l}(x - j) in powers of x (empty product for l=0).
pub(crate) fn descending_product_coeffs(l: usize) -> Vec<f64> {
    let mut coeffs = vec![1.0];
    for j in 1..=l {
        let mut next = vec![0.0; coeffs.len() + 1];
        for (k, &c) in coeffs.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= c * j as f64;
        }
        coeffs = next;
    }
    coeffs
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn families() -> Vec<WeightFamily> {
        vec![
            WeightFamily::laguerre(0.0).unwrap(),
            WeightFamily::laguerre(2.5).unwrap(),
            WeightFamily::laguerre(-0.5).unwrap(),
            WeightFamily::jacobi(0.0, 3.0).unwrap(),
            WeightFamily::jacobi(1.5, 0.5 + 1.0).unwrap(),
            WeightFamily::cauchy_lorentz(0.0, 2.0).unwrap(),
            WeightFamily::cauchy_lorentz(1.0, 4.5).unwrap(),
            WeightFamily::muttalib_borodin(0.5, 1.3, 2.0).unwrap(),
            WeightFamily::log_square(0.3, 0.8).unwrap(),
        ]
    }

    #[test]
    fn eval_weight_examples() {
        // Laguerre ν=0 at a→0⁺ tends to e⁰ = 1
        let lag = WeightFamily::laguerre(0.0).unwrap();
        assert_relative_eq!(lag.eval(1e-12).unwrap(), 1.0, max_relative = 1e-9);
        // Jacobi ν=0 μ=1 is flat on (0,1)
        let jac = WeightFamily::jacobi(0.0, 1.0).unwrap();
        assert_eq!(jac.eval(0.5).unwrap(), 1.0);
        // Cauchy-Lorentz ν=0 μ=1 at a=1: 1/(1+1)² = 1/4
        let cl = WeightFamily::cauchy_lorentz(0.0, 1.0).unwrap();
        assert_relative_eq!(cl.eval(1.0).unwrap(), 0.25);
    }

    #[test]
    fn domain_and_config_errors() {
        assert!(WeightFamily::laguerre(-1.0).is_err());
        assert!(WeightFamily::jacobi(0.0, 0.5).is_err());
        assert!(WeightFamily::muttalib_borodin(0.0, -1.0, 1.0).is_err());
        let lag = WeightFamily::laguerre(0.0).unwrap();
        assert!(matches!(lag.eval(0.0), Err(Error::Domain(_))));
        assert!(matches!(lag.eval(-1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn mellin_closed_forms_match_quadrature() {
        // the release gate for every closed form: grid of abscissas inside
        // each family's strip, checked against the double-exponential oracle
        for fam in families() {
            let strip = fam.strip();
            let lo = strip.s_min.max(-4.0);
            let hi = strip.s_max.min(8.0);
            for i in 1..6 {
                let s_re = lo + (hi - lo) * i as f64 / 6.0;
                for s_im in [0.0, 1.5] {
                    let s = Complex64::new(s_re, s_im);
                    let closed = fam.mellin(s).unwrap();
                    let quad = fam.mellin_quadrature(s).unwrap();
                    let rel = (closed - quad).norm() / closed.norm();
                    assert!(
                        rel < 1e-8,
                        "family {} at s={s}: closed {closed}, quadrature {quad}, rel {rel}",
                        fam.canonical_name()
                    );
                }
            }
        }
    }

    #[test]
    fn mellin_examples() {
        let lag = WeightFamily::laguerre(0.0).unwrap();
        assert_relative_eq!(lag.mellin_real(2.0).unwrap(), 1.0, max_relative = 1e-12);
        let jac = WeightFamily::jacobi(0.0, 1.0).unwrap();
        assert_relative_eq!(jac.mellin_real(1.0).unwrap(), 1.0, max_relative = 1e-12);
        let cl = WeightFamily::cauchy_lorentz(0.0, 2.0).unwrap();
        assert_relative_eq!(cl.mellin_real(1.0).unwrap(), 0.5, max_relative = 1e-12);
        assert!(lag.mellin(Complex64::new(-0.5, 0.0)).is_err());
    }

    #[test]
    fn derivative_identity_and_examples() {
        let lag = WeightFamily::laguerre(0.0).unwrap();
        // k=0 is the identity
        assert_eq!(lag.derivative(1.3, 0).unwrap(), lag.eval(1.3).unwrap());
        // (-a∂)(e^{-a}) = a e^{-a}; at a=1 equals e^{-1}
        assert_relative_eq!(lag.derivative(1.0, 1).unwrap(), (-1.0f64).exp(), max_relative = 1e-12);
        // (a-ν) a^ν e^{-a} vanishes at a = ν
        let lag2 = WeightFamily::laguerre(2.0).unwrap();
        assert_relative_eq!(lag2.derivative(2.0, 1).unwrap(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn derivatives_match_finite_differences() {
        // oracle: (-a∂)^k = (-∂_u)^k in u = ln a
        for fam in families() {
            let a0 = match fam.kind {
                WeightKind::Jacobi => 0.4,
                _ => 1.3,
            };
            for k in 1..=3usize {
                let exact = fam.derivative(a0, k).unwrap();
                let f = |u: f64| fam.eval_unchecked(u.exp());
                let fd = diff::nested_derivative(f, a0.ln(), k, 1.0)
                    * if k % 2 == 0 { 1.0 } else { -1.0 };
                let scale = exact.abs().max(1.0);
                assert!(
                    (exact - fd).abs() / scale < 1e-5,
                    "family {} k={k}: exact {exact} vs fd {fd}",
                    fam.canonical_name()
                );
            }
        }
    }

    #[test]
    fn mellin_derivative_link() {
        // ∫ a^{s-1} (-a∂)^k ω da = s^k Mω(s)
        for fam in families() {
            let strip = fam.strip();
            let s = Complex64::new(0.5 * (strip.s_min.max(0.0) + strip.s_max.min(5.0)).max(1.0), 0.7);
            for k in 1..=2usize {
                let (v, _) = if fam.kind == WeightKind::Jacobi {
                    quad::tanh_sinh(
                        |a| ((s - 1.0) * a.ln()).exp() * fam.derivative(a, k).unwrap(),
                        0.0,
                        1.0,
                        1e-13,
                    )
                } else {
                    let g = |a: f64| ((s - 1.0) * a.ln()).exp() * fam.derivative(a, k).unwrap();
                    let (v1, e1) = quad::tanh_sinh(&g, 0.0, 1.0, 1e-13);
                    let (v2, e2) = quad::tanh_sinh(|u| g(1.0 / u) / (u * u), 0.0, 1.0, 1e-13);
                    (v1 + v2, e1 + e2)
                };
                let expect = s.powu(k as u32) * fam.mellin(s).unwrap();
                let rel = (v - expect).norm() / expect.norm();
                assert!(
                    rel < 1e-6,
                    "family {} k={k}: link defect {rel}",
                    fam.canonical_name()
                );
            }
        }
    }

    #[test]
    fn plain_derivative_via_euler_algebra() {
        let lag = WeightFamily::laguerre(1.0).unwrap();
        // ∂_t [t e^{-t} · t] = ∂[t² e^{-t}] = (2t - t²) e^{-t}
        let a = 0.9;
        let d = lag.plain_derivative_shifted(a, 1, 1).unwrap();
        assert_relative_eq!(d, (2.0 * a - a * a) * (-a).exp(), max_relative = 1e-12);
        // second derivative of t²e^{-t}: (2 - 4t + t²) e^{-t}
        let d2 = lag.plain_derivative_shifted(a, 1, 2).unwrap();
        assert_relative_eq!(d2, (2.0 - 4.0 * a + a * a) * (-a).exp(), max_relative = 1e-11);
    }

    #[test]
    fn custom_weight_matches_named() {
        // a custom weight that reimplements Laguerre ν=1/2 must reproduce
        // mellin and derivatives through the numeric fallbacks
        let nu = 0.5;
        let cw = CustomWeight {
            log_eval: Arc::new(move |a: f64| nu * a.ln() - a),
            mellin: None,
            strip: MellinStrip::new(-nu, f64::INFINITY),
            smoothness: 4,
            exp_trace_ok: true,
        };
        let custom = WeightFamily::custom(cw);
        let named = WeightFamily::laguerre(nu).unwrap();
        let s = Complex64::new(1.7, 0.4);
        let rel = (custom.mellin(s).unwrap() - named.mellin(s).unwrap()).norm()
            / named.mellin(s).unwrap().norm();
        assert!(rel < 1e-9, "custom mellin defect {rel}");
        for k in 0..=2 {
            let c = custom.derivative(1.1, k).unwrap();
            let n = named.derivative(1.1, k).unwrap();
            assert!((c - n).abs() / n.abs().max(1.0) < 1e-6, "k={k}: {c} vs {n}");
        }
        assert!(matches!(custom.derivative(1.0, 9), Err(Error::Capability(_))));
    }

    #[test]
    fn weights_nonnegative_on_grid() {
        for fam in families() {
            for i in 1..60 {
                let a = i as f64 * 0.05;
                assert!(fam.eval(a).unwrap() >= 0.0);
            }
        }
    }
}

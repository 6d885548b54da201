//! Variational upper bound from the trial state ψ₀ + λφ₁ and the symmetric
//! residual-norm bounds built from the same state.

use serde::Serialize;

use crate::error::{consistency, domain, Result};
use crate::model::{ClosedAlpha, LogGaussianExpansion, OscillatorParams};
use crate::perturb::PerturbationCoefficients;
use crate::quadrature::{integrate_half_line, HalfLineShape};

/// N₁ = (1 + λ²(φ₁,φ₁))^(−1/2).
pub fn n1(lambda: f64, phi1_norm_sq: f64) -> Result<f64> {
    if !(phi1_norm_sq >= 0.0) {
        return Err(domain("n1", format!("norm must be nonnegative, got {phi1_norm_sq}")));
    }
    Ok((1.0 + lambda * lambda * phi1_norm_sq).powf(-0.5))
}

/// Rayleigh quotient of ψ₀ + λφ₁:
/// E₀ + ε₁λ + (ε₂λ² + ε₃λ³)/(1 + λ²(φ₁,φ₁)).
pub fn variational_upper(params: &OscillatorParams) -> Result<f64> {
    let c = PerturbationCoefficients::for_params(params)?;
    variational_from(&c, params.lambda())
}

fn variational_from(c: &PerturbationCoefficients, lambda: f64) -> Result<f64> {
    let norm = c
        .phi1_norm_sq
        .ok_or_else(|| domain("variational_upper", "first-order norm unavailable for these parameters"))?;
    let l2 = lambda * lambda;
    Ok(c.e0 + c.eps1 * lambda + (c.eps(2)? * l2 + c.eps(3)? * l2 * lambda) / (1.0 + l2 * norm))
}

fn residual_range_check(op: &'static str, alpha: ClosedAlpha, gamma: f64) -> Result<()> {
    let min = match alpha {
        ClosedAlpha::Two => 2.0,
        ClosedAlpha::Four => 4.0,
        ClosedAlpha::Six => 6.0,
    };
    if gamma > min {
        Ok(())
    } else {
        Err(domain(
            op,
            format!("alpha = {} requires gamma > {min}, got {gamma}", alpha.value()),
        ))
    }
}

/// (φ₁, x^(−p) φ₁), continued analytically in p where the integral diverges
/// at the origin.
pub fn phi1_moment(alpha: ClosedAlpha, gamma: f64, p: f64) -> Result<f64> {
    let phi = LogGaussianExpansion::phi1(alpha, gamma)?;
    phi.inner(&phi, p)
}

/// (φ₁, (V − ε₁)² φ₁) = (φ₁,V²φ₁) − 2ε₁(φ₁,Vφ₁) + ε₁²(φ₁,φ₁).
///
/// Each piece is a finite sum of Gaussian log-moments. Where the integral
/// converges this is its value; for smaller γ (α = 4 with γ <= 6, α = 6 with
/// γ <= 10) the first piece diverges at the origin and the value is its
/// analytic continuation in γ. A continued value that is not positive
/// cannot be a squared norm and is reported as a consistency failure.
pub fn residual_integral(alpha: ClosedAlpha, gamma: f64) -> Result<f64> {
    const OP: &str = "residual_integral";
    residual_range_check(OP, alpha, gamma)?;
    let phi = LogGaussianExpansion::phi1(alpha, gamma)?;
    let a = alpha.value();
    let e1 = crate::perturb::epsilon1(a, gamma)?;
    let v2 = phi.inner(&phi, 2.0 * a)?;
    let v1 = phi.inner(&phi, a)?;
    let v0 = phi.inner(&phi, 0.0)?;
    let r = v2 - 2.0 * e1 * v1 + e1 * e1 * v0;
    if !(r > 0.0) {
        return Err(consistency(
            OP,
            format!("continued value {r:e} at gamma = {gamma} is not positive; the integral diverges here"),
        ));
    }
    Ok(r)
}

/// The same integral by quadrature of the explicit φ₁. Only defined where
/// the integrand is integrable at the origin.
pub fn residual_integral_quadrature(alpha: ClosedAlpha, gamma: f64) -> Result<f64> {
    const OP: &str = "residual_integral_quadrature";
    residual_range_check(OP, alpha, gamma)?;
    let phi = LogGaussianExpansion::phi1(alpha, gamma)?;
    let a = alpha.value();
    let power = phi.product_power(&phi, 2.0 * a);
    if !(power > -1.0) {
        return Err(domain(
            OP,
            format!("integrand behaves like x^{power} at the origin and is not integrable"),
        ));
    }
    let e1 = crate::perturb::epsilon1(a, gamma)?;
    let shape = HalfLineShape { power, peak: gamma };
    integrate_half_line(
        |x| {
            let f = phi.eval(x);
            let w = x.powf(-a) - e1;
            w * w * f * f
        },
        shape,
        1e-9,
        0.0,
    )
}

/// ‖μ(φ, E_p)‖ for p = 1, 2, 3.
pub fn mu_norm(params: &OscillatorParams, p: u32) -> Result<f64> {
    let c = PerturbationCoefficients::for_params(params)?;
    let alpha = ClosedAlpha::from_alpha(params.alpha())?;
    let r = residual_integral(alpha, params.gamma())?;
    Ok(mu_norms(&c, r, params.lambda(), p)?[p as usize - 1])
}

/// [‖μ₁‖, …, ‖μ_p‖].
fn mu_norms(c: &PerturbationCoefficients, residual: f64, lambda: f64, p: u32) -> Result<Vec<f64>> {
    const OP: &str = "mu_norm";
    if p == 0 || p > 3 {
        return Err(domain(OP, format!("order {p} not in 1..=3")));
    }
    let norm = c
        .phi1_norm_sq
        .ok_or_else(|| domain(OP, "first-order norm unavailable for these parameters"))?;
    let nn = n1(lambda, norm)?.powi(2);
    let l2 = lambda * lambda;
    let l4 = l2 * l2;
    let mut sq = nn * l4 * residual;
    let mut out = vec![sq.sqrt()];
    if p >= 2 {
        let (e2, e3) = (c.eps(2)?, c.eps(3)?);
        sq += l4 * e2 * (e2 - 2.0 * nn * (e2 + lambda * e3));
        out.push(checked_sqrt(sq, 2)?);
        if p >= 3 {
            sq += l4 * (2.0 * l2 * lambda * e2 * e3 * (1.0 - nn) - l2 * (1.0 + l2) * nn * e3 * e3 + l4 * e3 * e3);
            out.push(checked_sqrt(sq, 3)?);
        }
    }
    Ok(out)
}

fn checked_sqrt(sq: f64, p: u32) -> Result<f64> {
    if sq >= 0.0 {
        Ok(sq.sqrt())
    } else {
        Err(consistency("mu_norm", format!("negative radicand {sq:e} at order {p}")))
    }
}

/// f±(ε) = ε ± √(‖Hφ‖² − (φ,Hφ)² + (ε − (φ,Hφ))²) for the normalized trial
/// state, with the variance recovered from the first-order residual norm.
pub fn f_pm(eps: f64, mu1: f64, e1: f64, rayleigh: f64) -> Result<(f64, f64)> {
    let variance = mu1 * mu1 - (e1 - rayleigh).powi(2);
    let rad = variance + (eps - rayleigh).powi(2);
    if !(rad >= 0.0) {
        return Err(consistency("f_pm", format!("negative radicand {rad:e}")));
    }
    let s = rad.sqrt();
    Ok((eps - s, eps + s))
}

/// Bounds obtained from the truncated energy E_p.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OrderBound {
    pub p: u32,
    pub energy: f64,
    pub lower: f64,
    pub upper: f64,
    pub norm: f64,
}

/// Everything the bounding procedure yields for one parameter set.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub params: OscillatorParams,
    pub coefficients: PerturbationCoefficients,
    pub residual: f64,
    pub per_order: Vec<OrderBound>,
    pub variational_upper: f64,
    /// (f₋(E₁), f₊(E₂)).
    pub optimal: (f64, f64),
    /// λ < |ε₂|/ε₃ with ε₂ < 0 < ε₃.
    pub optimal_valid: bool,
}

impl BoundReport {
    pub fn compute(params: &OscillatorParams) -> Result<Self> {
        let alpha = ClosedAlpha::from_alpha(params.alpha())?;
        let c = PerturbationCoefficients::for_params(params)?;
        let residual = residual_integral(alpha, params.gamma())?;
        let lambda = params.lambda();
        let norms = mu_norms(&c, residual, lambda, 3)?;
        let mut per_order = Vec::with_capacity(3);
        for (k, &norm) in norms.iter().enumerate() {
            let p = k as u32 + 1;
            let energy = c.energy(lambda, p)?;
            per_order.push(OrderBound {
                p,
                energy,
                lower: energy - norm,
                upper: energy + norm,
                norm,
            });
        }
        let (e2, e3) = (c.eps(2)?, c.eps(3)?);
        Ok(Self {
            params: *params,
            coefficients: c,
            residual,
            optimal: (per_order[0].lower, per_order[1].upper),
            optimal_valid: optimal_condition(lambda, e2, e3),
            variational_upper: variational_from(&c, lambda)?,
            per_order,
        })
    }

    pub fn order(&self, p: u32) -> Option<&OrderBound> {
        self.per_order.iter().find(|b| b.p == p)
    }

    /// f± at an arbitrary trial energy.
    pub fn f_pm(&self, eps: f64) -> Result<(f64, f64)> {
        let first = &self.per_order[0];
        f_pm(eps, first.norm, first.energy, self.variational_upper)
    }
}

fn optimal_condition(lambda: f64, e2: f64, e3: f64) -> bool {
    e2 < 0.0 && e3 > 0.0 && lambda < e2.abs() / e3
}

/// (E_p − ‖μ‖, E_p + ‖μ‖).
pub fn bound_pair(params: &OscillatorParams, p: u32) -> Result<(f64, f64)> {
    if p == 0 || p > 3 {
        return Err(domain("bound_pair", format!("order {p} not in 1..=3")));
    }
    let b = BoundReport::compute(params)?;
    let o = b.per_order[p as usize - 1];
    Ok((o.lower, o.upper))
}

/// (f₋(E₁), f₊(E₂), λ < |ε₂|/ε₃).
pub fn optimal_bounds(params: &OscillatorParams) -> Result<(f64, f64, bool)> {
    let b = BoundReport::compute(params)?;
    Ok((b.optimal.0, b.optimal.1, b.optimal_valid))
}

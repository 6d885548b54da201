//! Closed forms for the third-order double sums and for two single-series
//! identities, each paired with a brute-force truncation.

use serde::Serialize;

use crate::bounds::phi1_moment;
use crate::error::{domain, Result};
use crate::model::{ClosedAlpha, LogGaussianExpansion, MatrixElementTable};
use crate::perturb::{double_sum, horner, power_law_tail};
use crate::quadrature::{integrate_half_line, HalfLineShape};
use crate::specfun::{gauss_2f1_unit, hyp, trigamma, trigamma_real, CompensatedSum};

/// Rounding slack, relative to the compared values, added to every tail
/// estimate when judging agreement.
pub const REL_FLOOR: f64 = 1e-12;

/// Terms used by the single-series truncations.
pub const SINGLE_SERIES_TERMS: usize = 1_000_000;

/// Half-width of the symmetric stencil around α = 2.
pub const LIMIT_STEP: f64 = 1e-4;

/// A closed value set against a truncated sum of the same series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesCheck {
    pub closed_value: f64,
    pub truncated_value: f64,
    pub terms_used: usize,
    pub tail_estimate: f64,
    pub abs_floor: f64,
    agrees: bool,
}

impl SeriesCheck {
    /// Uses an absolute floor of [`REL_FLOOR`] times the larger magnitude.
    pub fn new(closed_value: f64, truncated_value: f64, terms_used: usize, tail_estimate: f64) -> Self {
        let floor = REL_FLOOR * closed_value.abs().max(truncated_value.abs());
        Self::with_floor(closed_value, truncated_value, terms_used, tail_estimate, floor)
    }

    pub fn with_floor(
        closed_value: f64,
        truncated_value: f64,
        terms_used: usize,
        tail_estimate: f64,
        abs_floor: f64,
    ) -> Self {
        let tail_estimate = tail_estimate.abs();
        let abs_floor = abs_floor.abs();
        Self {
            closed_value,
            truncated_value,
            terms_used,
            tail_estimate,
            abs_floor,
            agrees: (closed_value - truncated_value).abs() <= tail_estimate + abs_floor,
        }
    }

    pub fn agrees(&self) -> bool {
        self.agrees
    }

    pub fn deviation(&self) -> f64 {
        (self.closed_value - self.truncated_value).abs()
    }
}

/// Numerator of the α = 4 rational part, ascending powers of γ.
pub const LEMMA4_NUM: [f64; 7] = [-820.0, 1954.0, -1753.0, 694.0, -90.0, -12.0, 3.0];

/// I₁ of the α = 6 rational part, ascending powers of γ.
pub const LEMMA5_NUM: [f64; 10] = [
    522652.0, -1717440.0, 2371931.0, -1785046.0, 792061.0, -206964.0, 28725.0, -1158.0, -169.0, 16.0,
];

/// Denominators as (constant, [(root, multiplicity)]).
const LEMMA4_DEN: (f64, &[(f64, i32)]) = (16.0, &[(4.0, 1), (3.0, 2), (2.0, 5), (1.0, 5)]);
const LEMMA5_DEN: (f64, &[(f64, i32)]) = (32.0, &[(7.0, 1), (5.0, 2), (4.0, 1), (3.0, 5), (2.0, 5), (1.0, 5)]);

fn factored(den: (f64, &[(f64, i32)]), g: f64) -> f64 {
    den.1.iter().fold(den.0, |acc, &(r, k)| acc * (g - r).powi(k))
}

fn require_above(op: &'static str, gamma: f64, min: f64) -> Result<()> {
    if gamma > min {
        Ok(())
    } else {
        Err(domain(op, format!("requires gamma > {min}, got {gamma}")))
    }
}

/// Σ_{n,m≥1} V₀ₙVₙₘVₘ₀/(16nm) for α = 2:
/// 1/(8(γ−1)⁵) + ψ′(γ)/(16(γ−1)³).
pub fn lemma3_closed(gamma: f64) -> Result<f64> {
    require_above("lemma3_closed", gamma, 1.0)?;
    let g1 = gamma - 1.0;
    Ok(1.0 / (8.0 * g1.powi(5)) + trigamma(gamma)? / (16.0 * g1.powi(3)))
}

/// The α = 4 double sum: P(γ)/(16(γ−4)(γ−3)²(γ−2)⁵(γ−1)⁵) + ψ′(γ)/(16(γ−2)³(γ−1)³).
pub fn lemma4_closed(gamma: f64) -> Result<f64> {
    require_above("lemma4_closed", gamma, 4.0)?;
    let g = gamma;
    Ok(horner(&LEMMA4_NUM, g) / factored(LEMMA4_DEN, g) + trigamma(g)? / (16.0 * ((g - 2.0) * (g - 1.0)).powi(3)))
}

/// The α = 6 double sum: I₁/I₂ + ψ′(γ)/(16(γ−3)³(γ−2)³(γ−1)³).
pub fn lemma5_closed(gamma: f64) -> Result<f64> {
    require_above("lemma5_closed", gamma, 7.0)?;
    let g = gamma;
    Ok(horner(&LEMMA5_NUM, g) / factored(LEMMA5_DEN, g)
        + trigamma(g)? / (16.0 * ((g - 3.0) * (g - 2.0) * (g - 1.0)).powi(3)))
}

/// The closed double sum for the given α.
pub fn lemma_closed(alpha: ClosedAlpha, gamma: f64) -> Result<f64> {
    match alpha {
        ClosedAlpha::Two => lemma3_closed(gamma),
        ClosedAlpha::Four => lemma4_closed(gamma),
        ClosedAlpha::Six => lemma5_closed(gamma),
    }
}

/// Σ_{n,m=1}^M V₀ₙVₙₘVₘ₀/(16nm) from the closed matrix elements, with a
/// tail estimated from the partial sums at M/4, M/2 and M.
pub fn double_sum_truncated(alpha: ClosedAlpha, gamma: f64, m: usize) -> Result<SeriesCheck> {
    const OP: &str = "double_sum_truncated";
    if m == 0 {
        return Err(domain(OP, "M must be at least 1"));
    }
    let min = alpha.min_gamma();
    require_above(OP, gamma, min)?;
    let table = MatrixElementTable::build(alpha.value(), gamma, m + 1)?;
    let s = double_sum(&table, m);
    let closed = lemma_closed(alpha, gamma).unwrap_or(f64::NAN);
    Ok(SeriesCheck::new(closed, s.value, s.terms, s.tail_estimate))
}

/// (φ₁, x^(−α) φ₁) by quadrature of the explicit first-order function.
pub fn lemma_quadrature(alpha: ClosedAlpha, gamma: f64) -> Result<f64> {
    const OP: &str = "lemma_quadrature";
    let phi = LogGaussianExpansion::phi1(alpha, gamma)?;
    let a = alpha.value();
    let power = phi.product_power(&phi, a);
    if !(power > -1.0) {
        return Err(domain(OP, format!("integrand behaves like x^{power} at the origin")));
    }
    integrate_half_line(
        |x| {
            let f = phi.eval(x);
            f * f * x.powf(-a)
        },
        HalfLineShape { power, peak: gamma },
        1e-10,
        0.0,
    )
}

/// (φ₁, x^(−α) φ₁) from the Gaussian log-moments.
pub fn lemma_moment(alpha: ClosedAlpha, gamma: f64) -> Result<f64> {
    phi1_moment(alpha, gamma, alpha.value())
}

/// [₂F₁(a, a; 1/2; 1) − 1 − 2a²]/(8a²) with a = α/2 − 1.
pub fn resummation_first_term(alpha: f64) -> Result<f64> {
    const OP: &str = "resummation_first_term";
    if !(alpha < 2.5) {
        return Err(domain(OP, format!("requires alpha < 5/2, got {alpha}")));
    }
    let a = 0.5 * alpha - 1.0;
    if a == 0.0 {
        return Err(domain(
            OP,
            "alpha = 2 is a removable singularity; use resummation_limit",
        ));
    }
    Ok((gauss_2f1_unit(a, a, 0.5)? - 1.0 - 2.0 * a * a) / (8.0 * a * a))
}

/// The α → 2 value of [`resummation_first_term`] by Richardson extrapolation of
/// symmetric averages at steps h and h/2.
pub fn resummation_limit() -> Result<f64> {
    let avg =
        |h: f64| -> Result<f64> { Ok(0.5 * (resummation_first_term(2.0 + h)? + resummation_first_term(2.0 - h)?)) };
    let coarse = avg(LIMIT_STEP)?;
    let fine = avg(0.5 * LIMIT_STEP)?;
    Ok((4.0 * fine - coarse) / 3.0)
}

/// Partial sum of Σ_{i≥1} t_i w(i), where t_i = (α/2)_i²/((3/2)_i i!) is
/// generated by its ratio, with a power-law tail.
fn resummation_sum(alpha: f64, n: usize, weight: impl Fn(f64) -> f64) -> (f64, f64) {
    let h = 0.5 * alpha;
    let mut t = 1.0;
    let mut acc = CompensatedSum::default();
    let (mut prev, mut last) = (0.0, 0.0);
    for i in 1..=n {
        let k = (i - 1) as f64;
        t *= (h + k) * (h + k) / ((1.5 + k) * (k + 1.0));
        let term = t * weight(i as f64);
        acc.add(term);
        prev = last;
        last = term;
    }
    (acc.value(), power_law_tail(n, prev, last))
}

/// Checks Σ (α/2)ᵢ²/(4i(3/2)ᵢi!) against the split form: the ₂F₁ term plus
/// Σ (α/2)ᵢ²/(4i(i+1)(3/2)ᵢi!).
pub fn resummation_check(alpha: f64) -> Result<SeriesCheck> {
    const OP: &str = "resummation_check";
    if !(alpha < 2.5) {
        return Err(domain(OP, format!("requires alpha < 5/2, got {alpha}")));
    }
    if alpha == 2.0 {
        return Err(domain(OP, "alpha = 2 is excluded; use resummation_limit"));
    }
    let n = SINGLE_SERIES_TERMS;
    let (lhs, lhs_tail) = resummation_sum(alpha, n, |i| 1.0 / (4.0 * i));
    let (rest, rest_tail) = resummation_sum(alpha, n, |i| 1.0 / (4.0 * i * (i + 1.0)));
    let closed = resummation_first_term(alpha)? + rest;
    Ok(SeriesCheck::new(closed, lhs, n, lhs_tail + rest_tail))
}

/// (γ − 1)ψ′(γ − 1) − 1.
pub fn trigamma_identity_closed(gamma: f64) -> Result<f64> {
    require_above("trigamma_identity_closed", gamma, 1.0)?;
    Ok((gamma - 1.0) * trigamma_real(gamma - 1.0)? - 1.0)
}

/// (1/(2γ)) ₃F₂(1, 2, 2; 3, γ+1; 1).
pub fn trigamma_identity_hypergeometric(gamma: f64) -> Result<f64> {
    require_above("trigamma_identity_hypergeometric", gamma, 1.0)?;
    Ok(hyp(&[1.0, 2.0, 2.0], &[3.0, gamma + 1.0], 1.0)? / (2.0 * gamma))
}

/// Checks Σ_{i≥1} (1)ᵢ²/((i+1)(γ)ᵢ i!) against (γ − 1)ψ′(γ − 1) − 1.
pub fn trigamma_identity_check(gamma: f64) -> Result<SeriesCheck> {
    require_above("trigamma_identity_check", gamma, 1.0)?;
    let n = SINGLE_SERIES_TERMS;
    let mut r = 1.0;
    let mut acc = CompensatedSum::default();
    let (mut prev, mut last) = (0.0, 0.0);
    for i in 1..=n {
        let k = (i - 1) as f64;
        r *= (k + 1.0) / (gamma + k);
        let term = r / (i as f64 + 1.0);
        acc.add(term);
        prev = last;
        last = term;
    }
    Ok(SeriesCheck::new(
        trigamma_identity_closed(gamma)?,
        acc.value(),
        n,
        power_law_tail(n, prev, last),
    ))
}

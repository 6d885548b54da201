//! Problem definition: the oscillator parameters, the Gol'dman–Krivchenkov
//! basis, matrix elements of x^(−α) in that basis and the first-order
//! wavefunction corrections.

use serde::Serialize;

use crate::error::{domain, Result};
use crate::specfun::{digamma, digamma_real, gamma, ln_gamma, pfq, trigamma_real, HypergeometricSpec};

/// Parameters of H = −d²/dx² + x² + A/x² + λ/x^α.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OscillatorParams {
    #[serde(rename = "A")]
    a: f64,
    alpha: f64,
    lambda: f64,
    gamma: f64,
}

/// γ = 1 + ½√(1 + 4A).
pub fn gamma_from_a(a: f64) -> f64 {
    1.0 + 0.5 * (1.0 + 4.0 * a).sqrt()
}

/// Inverse of [`gamma_from_a`]: A = (γ − 1)² − ¼.
pub fn a_from_gamma(gamma: f64) -> f64 {
    (gamma - 1.0) * (gamma - 1.0) - 0.25
}

/// Validates (A, α, λ) and derives γ.
pub fn make_params(a: f64, alpha: f64, lambda: f64) -> Result<OscillatorParams> {
    const OP: &str = "make_params";
    if !(a >= 0.0) || !a.is_finite() {
        return Err(domain(OP, format!("A >= 0 violated: A = {a}")));
    }
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(domain(OP, format!("alpha > 0 violated: alpha = {alpha}")));
    }
    if !(lambda >= 0.0) || !lambda.is_finite() {
        return Err(domain(OP, format!("lambda >= 0 violated: lambda = {lambda}")));
    }
    let g = gamma_from_a(a);
    if !(2.0 * g > alpha) {
        return Err(domain(
            OP,
            format!("2*gamma > alpha violated: 2*gamma = {} <= alpha = {alpha}", 2.0 * g),
        ));
    }
    Ok(OscillatorParams {
        a,
        alpha,
        lambda,
        gamma: g,
    })
}

impl OscillatorParams {
    /// Parameters for angular momentum l in three dimensions, A = l(l + 1).
    pub fn from_l(l: u32, alpha: f64, lambda: f64) -> Result<Self> {
        make_params(effective_a(0.0, l, 3)?, alpha, lambda)
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// Same problem at a different coupling.
    pub fn with_lambda(&self, lambda: f64) -> Result<Self> {
        make_params(self.a, self.alpha, lambda)
    }

    /// Unperturbed ground energy 2γ.
    pub fn e0(&self) -> f64 {
        2.0 * self.gamma
    }
}

/// Centrifugal coupling for angular momentum l in `n_dim` dimensions:
/// A + (l + (N−1)/2)(l + (N−3)/2).
pub fn effective_a(a: f64, l: u32, n_dim: u32) -> Result<f64> {
    if n_dim == 0 {
        return Err(domain("effective_a", "dimension must be at least 1"));
    }
    let l = l as f64;
    let n = n_dim as f64;
    Ok(a + (l + 0.5 * (n - 1.0)) * (l + 0.5 * (n - 3.0)))
}

/// E_n = 4n + 2γ.
pub fn basis_energy(n: usize, gamma: f64) -> f64 {
    4.0 * n as f64 + 2.0 * gamma
}

/// Exponents α for which closed-form matrix elements and first-order
/// wavefunctions are available.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ClosedAlpha {
    Two,
    Four,
    Six,
}

impl ClosedAlpha {
    pub const ALL: [ClosedAlpha; 3] = [ClosedAlpha::Two, ClosedAlpha::Four, ClosedAlpha::Six];

    pub fn from_alpha(alpha: f64) -> Result<Self> {
        match alpha {
            2.0 => Ok(Self::Two),
            4.0 => Ok(Self::Four),
            6.0 => Ok(Self::Six),
            _ => Err(domain(
                "ClosedAlpha",
                format!("closed forms exist for alpha in {{2, 4, 6}}, got {alpha}"),
            )),
        }
    }

    pub fn value(self) -> f64 {
        2.0 * self.half() as f64
    }

    /// α/2.
    pub fn half(self) -> u32 {
        match self {
            Self::Two => 1,
            Self::Four => 2,
            Self::Six => 3,
        }
    }

    /// γ must exceed this for the closed matrix elements and φ₁.
    pub fn min_gamma(self) -> f64 {
        self.half() as f64
    }

    fn check_gamma(self, op: &'static str, gamma: f64) -> Result<()> {
        if gamma > self.min_gamma() {
            Ok(())
        } else {
            Err(domain(
                op,
                format!(
                    "alpha = {} requires gamma > {}, got {gamma}",
                    self.value(),
                    self.min_gamma()
                ),
            ))
        }
    }
}

/// ψ_n(x) of the unperturbed problem, with the (−1)ⁿ sign convention.
pub fn basis_eval(n: usize, gamma: f64, x: f64) -> Result<f64> {
    Ok(*basis_eval_all(n, gamma, x)?.last().expect("n + 1 values"))
}

/// ψ_0(x), …, ψ_n(x).
///
/// The terminating ₁F₁(−n; γ; x²) is a multiple of the Laguerre polynomial
/// L_n^(γ−1)(x²); the normalized polynomials obey a stable three-term
/// recurrence, so no individual term is ever formed. A running log scale keeps
/// the values finite when the Gaussian prefactor alone would underflow.
pub fn basis_eval_all(n: usize, gamma: f64, x: f64) -> Result<Vec<f64>> {
    const OP: &str = "basis_eval";
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain(OP, format!("x must be positive, got {x}")));
    }
    if !(gamma > 0.0) {
        return Err(domain(OP, format!("gamma must be positive, got {gamma}")));
    }
    let y = x * x;
    let log_pref = 0.5 * std::f64::consts::LN_2 + (gamma - 0.5) * x.ln() - 0.5 * y - 0.5 * ln_gamma(gamma)?;

    const BIG: f64 = 1e150;
    let mut out = Vec::with_capacity(n + 1);
    let mut scales = Vec::with_capacity(n + 1);
    let mut log_scale = log_pref;
    let mut prev = 0.0;
    let mut cur = 1.0;
    out.push(cur);
    scales.push(log_scale);
    for k in 0..n {
        let kf = k as f64;
        let a = (2.0 * kf + gamma - y) / ((kf + 1.0) * (kf + gamma)).sqrt();
        let b = (kf * (kf + gamma - 1.0) / ((kf + 1.0) * (kf + gamma))).sqrt();
        let next = a * cur - b * prev;
        prev = cur;
        cur = next;
        if cur.abs() > BIG {
            cur /= BIG;
            prev /= BIG;
            log_scale += BIG.ln();
        }
        out.push(cur);
        scales.push(log_scale);
    }
    for (k, (v, s)) in out.iter_mut().zip(scales).enumerate() {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        *v = if *v == 0.0 { 0.0 } else { sign * *v * s.exp() };
    }
    Ok(out)
}

/// Running logs ln[(γ)_k/k!] and ln[(α/2)_k/k!] for k = 0..n.
#[derive(Debug, Clone)]
pub(crate) struct PochhammerLogs {
    pub ln_r: Vec<f64>,
    pub ln_q: Vec<f64>,
}

impl PochhammerLogs {
    pub(crate) fn new(n: usize, alpha: f64, gamma: f64) -> Self {
        let mut ln_r = Vec::with_capacity(n + 1);
        let mut ln_q = Vec::with_capacity(n + 1);
        let (mut r, mut q) = (0.0, 0.0);
        ln_r.push(0.0);
        ln_q.push(0.0);
        for k in 1..=n {
            let kf = k as f64;
            r += ((gamma - 1.0) / kf).ln_1p();
            q += ((0.5 * alpha - 1.0) / kf).ln_1p();
            ln_r.push(r);
            ln_q.push(q);
        }
        Self { ln_r, ln_q }
    }
}

/// Γ(γ − α/2)/Γ(γ).
pub(crate) fn gamma_ratio(alpha: f64, gamma: f64) -> Result<f64> {
    Ok((ln_gamma(gamma - 0.5 * alpha)? - ln_gamma(gamma)?).exp())
}

/// V_ij = (ψ_i, x^(−α) ψ_j) from the terminating ₃F₂ representation, applied
/// with the smaller index as the terminating parameter.
pub fn matrix_element_general(i: usize, j: usize, alpha: f64, gamma: f64) -> Result<f64> {
    const OP: &str = "matrix_element_general";
    if !(2.0 * gamma > alpha) {
        return Err(domain(
            OP,
            format!("requires 2*gamma > alpha, got gamma = {gamma}, alpha = {alpha}"),
        ));
    }
    let (i, j) = if i >= j { (i, j) } else { (j, i) };
    let logs = PochhammerLogs::new(i, alpha, gamma);
    general_from_logs(i, j, alpha, gamma, gamma_ratio(alpha, gamma)?, &logs)
}

fn general_from_logs(i: usize, j: usize, alpha: f64, gamma: f64, eps1: f64, logs: &PochhammerLogs) -> Result<f64> {
    let h = 0.5 * alpha;
    let f = if j == 0 {
        1.0
    } else {
        let spec = HypergeometricSpec::new(
            vec![-(j as f64), gamma - h, 1.0 - h],
            vec![gamma, 1.0 - i as f64 - h],
            1.0,
        )?;
        pfq(&spec, crate::specfun::DEFAULT_TOL)?.value
    };
    let sign = if (i + j).is_multiple_of(2) { 1.0 } else { -1.0 };
    let mag = (logs.ln_q[i] - 0.5 * logs.ln_r[i] + 0.5 * logs.ln_r[j]).exp();
    Ok(sign * eps1 * mag * f)
}

/// V_nm from the closed forms for α ∈ {2, 4, 6}.
pub fn matrix_element_closed(n: usize, m: usize, alpha: ClosedAlpha, gamma: f64) -> Result<f64> {
    alpha.check_gamma("matrix_element_closed", gamma)?;
    let logs = PochhammerLogs::new(n.max(m), alpha.value(), gamma);
    Ok(closed_from_logs(n, m, alpha, gamma, &logs))
}

/// The polynomial factor of the closed forms for m >= n, divided by the
/// leading constant so that n = m = 0 gives ε₁.
fn closed_from_logs(n: usize, m: usize, alpha: ClosedAlpha, g: f64, logs: &PochhammerLogs) -> f64 {
    let (n, m) = if m >= n { (n, m) } else { (m, n) };
    let sign = if (n + m) % 2 == 0 { 1.0 } else { -1.0 };
    let mag = (0.5 * (logs.ln_r[n] - logs.ln_r[m])).exp();
    let (nf, mf) = (n as f64, m as f64);
    let body = match alpha {
        ClosedAlpha::Two => 1.0 / (g - 1.0),
        ClosedAlpha::Four => (g * (mf - nf + 1.0) + 2.0 * nf) / (g * (g - 1.0) * (g - 2.0)),
        ClosedAlpha::Six => {
            let poly = (2.0 + mf) * (1.0 + mf) * g * (g + 1.0)
                - 2.0 * nf * (1.0 + mf) * (g - 3.0) * (g + 1.0)
                - nf * (1.0 - nf) * (g - 2.0) * (g - 3.0);
            poly / (2.0 * (g + 1.0) * g * (g - 1.0) * (g - 2.0) * (g - 3.0))
        }
    };
    sign * mag * body
}

/// Symmetric table of V_nm for 0 <= n, m < size, stored as a packed lower
/// triangle so that V_nm and V_mn are the same number.
#[derive(Debug, Clone)]
pub struct MatrixElementTable {
    size: usize,
    alpha: f64,
    gamma: f64,
    values: Vec<f64>,
}

impl MatrixElementTable {
    /// Uses the closed forms when α ∈ {2, 4, 6} and γ is in their range,
    /// and the ₃F₂ representation otherwise.
    pub fn build(alpha: f64, gamma: f64, size: usize) -> Result<Self> {
        const OP: &str = "MatrixElementTable";
        if size == 0 {
            return Err(domain(OP, "size must be at least 1"));
        }
        if !(2.0 * gamma > alpha) {
            return Err(domain(
                OP,
                format!("requires 2*gamma > alpha, got gamma = {gamma}, alpha = {alpha}"),
            ));
        }
        let logs = PochhammerLogs::new(size, alpha, gamma);
        let mut values = Vec::with_capacity(size * (size + 1) / 2);
        match ClosedAlpha::from_alpha(alpha) {
            Ok(ca) if gamma > ca.min_gamma() => {
                for i in 0..size {
                    for j in 0..=i {
                        values.push(closed_from_logs(j, i, ca, gamma, &logs));
                    }
                }
            }
            _ => {
                let eps1 = gamma_ratio(alpha, gamma)?;
                for i in 0..size {
                    for j in 0..=i {
                        values.push(general_from_logs(i, j, alpha, gamma, eps1, &logs)?);
                    }
                }
            }
        }
        Ok(Self {
            size,
            alpha,
            gamma,
            values,
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn get(&self, n: usize, m: usize) -> f64 {
        let (i, j) = if n >= m { (n, m) } else { (m, n) };
        assert!(i < self.size, "index {i} out of range for table of size {}", self.size);
        self.values[i * (i + 1) / 2 + j]
    }

    /// Packed lower triangle, row by row.
    pub fn packed(&self) -> &[f64] {
        &self.values
    }

    pub fn into_packed(self) -> Vec<f64> {
        self.values
    }
}

/// ∫₀^∞ x^(2z−1) e^(−x²) [ln x²]^k dx = ½ Γ^(k)(z) for k <= 2.
///
/// For z <= 0 the integral diverges at the origin; the value returned is the
/// analytic continuation in z, which is what the closed forms built from these
/// moments represent. Poles at nonpositive integers are domain errors.
pub fn gaussian_log_moment(z: f64, k: u32) -> Result<f64> {
    const OP: &str = "gaussian_log_moment";
    if k > 2 {
        return Err(domain(OP, format!("log power {k} not supported")));
    }
    let g = gamma(z)?;
    let v = match k {
        0 => g,
        1 => g * digamma_real(z)?,
        _ => {
            let psi = digamma_real(z)?;
            g * (psi * psi + trigamma_real(z)?)
        }
    };
    Ok(0.5 * v)
}

/// A function of the form
/// K · x^(γ−½) e^(−x²/2) · Σ_j (c_j + d_j ln x²) x^(−2j).
///
/// Both ψ₀ and the first-order corrections φ₁ for α ∈ {2, 4, 6} have this
/// shape, so every inner product between them against a power of x reduces
/// to [`gaussian_log_moment`].
#[derive(Debug, Clone, PartialEq)]
pub struct LogGaussianExpansion {
    gamma: f64,
    scale: f64,
    terms: Vec<(f64, f64)>,
}

impl LogGaussianExpansion {
    /// ψ₀ = √(2/Γ(γ)) x^(γ−½) e^(−x²/2).
    pub fn ground(gamma: f64) -> Result<Self> {
        Ok(Self {
            gamma,
            scale: (2.0 / gamma_fn_pos(gamma)?).sqrt(),
            terms: vec![(1.0, 0.0)],
        })
    }

    /// First-order correction φ₁ for V = x^(−α).
    pub fn phi1(alpha: ClosedAlpha, gamma: f64) -> Result<Self> {
        alpha.check_gamma("phi1", gamma)?;
        let psi = digamma(gamma)?;
        let g = gamma;
        let root_gamma = gamma_fn_pos(g)?.sqrt();
        let s2 = std::f64::consts::SQRT_2;
        let (scale, terms) = match alpha {
            ClosedAlpha::Two => (1.0 / (s2 * (g - 1.0) * root_gamma), vec![(-0.5 * psi, 0.5)]),
            ClosedAlpha::Four => (
                1.0 / (2.0 * s2 * (g - 2.0) * (g - 1.0) * root_gamma),
                vec![(1.0 - psi, 1.0), (-(g - 1.0), 0.0)],
            ),
            ClosedAlpha::Six => (
                (ln_gamma(g - 3.0)? - 1.5 * ln_gamma(g)?).exp() / (2.0 * s2),
                vec![(1.5 - psi, 1.0), (-(g - 1.0), 0.0), (-0.5 * (g - 1.0) * (g - 2.0), 0.0)],
            ),
        };
        Ok(Self { gamma, scale, terms })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// Overall constant K.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// (c_j, d_j) pairs.
    pub fn terms(&self) -> &[(f64, f64)] {
        &self.terms
    }

    pub fn eval(&self, x: f64) -> f64 {
        let l = (x * x).ln();
        let inv2 = 1.0 / (x * x);
        let mut p = 1.0;
        let mut bracket = 0.0;
        for &(c, d) in &self.terms {
            bracket += (c + d * l) * p;
            p *= inv2;
        }
        let env = ((self.gamma - 0.5) * x.ln() - 0.5 * x * x).exp();
        self.scale * env * bracket
    }

    /// Leading power of x in f·g·x^(−p) near the origin (ignoring logs).
    pub fn product_power(&self, other: &Self, p: f64) -> f64 {
        let jf = (self.terms.len() - 1) as f64;
        let jg = (other.terms.len() - 1) as f64;
        self.gamma + other.gamma - 1.0 - 2.0 * (jf + jg) - p
    }

    /// ∫₀^∞ f(x) g(x) x^(−p) dx, analytically continued in p where the
    /// integral diverges at the origin.
    pub fn inner(&self, other: &Self, p: f64) -> Result<f64> {
        let base = 0.5 * (self.gamma + other.gamma - p);
        let mut total = 0.0;
        for (j, &(c1, d1)) in self.terms.iter().enumerate() {
            for (k, &(c2, d2)) in other.terms.iter().enumerate() {
                let z = base - (j + k) as f64;
                let m0 = gaussian_log_moment(z, 0)?;
                let m1 = if d1 != 0.0 || d2 != 0.0 {
                    gaussian_log_moment(z, 1)?
                } else {
                    0.0
                };
                let m2 = if d1 != 0.0 && d2 != 0.0 {
                    gaussian_log_moment(z, 2)?
                } else {
                    0.0
                };
                total += c1 * c2 * m0 + (c1 * d2 + d1 * c2) * m1 + d1 * d2 * m2;
            }
        }
        Ok(self.scale * other.scale * total)
    }
}

fn gamma_fn_pos(x: f64) -> Result<f64> {
    Ok(ln_gamma(x)?.exp())
}

/// φ₁(x) for α ∈ {2, 4, 6}.
pub fn phi1_eval(x: f64, alpha: ClosedAlpha, gamma: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(domain("phi1_eval", format!("x must be positive, got {x}")));
    }
    Ok(LogGaussianExpansion::phi1(alpha, gamma)?.eval(x))
}

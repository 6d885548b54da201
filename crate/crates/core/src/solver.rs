//! Ground-state energies by diagonalizing H in a truncated Gol'dman–Krivchenkov
//! basis, with the truncation doubled until the lowest eigenvalue settles.

use serde::Serialize;

use crate::error::{domain, not_converged, Result};
use crate::linalg::SymMatrix;
use crate::model::{a_from_gamma, basis_energy, gamma_from_a, MatrixElementTable, OscillatorParams};

/// Truncation schedule and stopping rule for [`ground_state_with`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SolverConfig {
    /// First basis size tried.
    pub start: usize,
    /// Largest basis size allowed.
    pub cap: usize,
    /// Stop once the ground eigenvalue moves by less than this on doubling.
    pub tol: f64,
    /// Return an error instead of an unconverged result at the cap.
    pub strict: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            start: 32,
            cap: 2048,
            tol: 1e-10,
            strict: true,
        }
    }
}

/// Outcome of the truncation sequence.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumResult {
    /// Ascending eigenvalues at the final basis size; the first is refined
    /// by a Rayleigh quotient and is a variational upper bound.
    pub eigenvalues: Vec<f64>,
    pub basis_size: usize,
    pub converged: bool,
    /// |E(N) − E(N/2)| for the final N.
    pub delta_last_refinement: f64,
    /// Ground eigenvalue at every basis size tried.
    pub history: Vec<(usize, f64)>,
    /// Aitken estimate of the N → ∞ ground value from the last three sizes,
    /// when the increments shrink with a constant sign. Unlike
    /// `eigenvalues[0]` it is not a guaranteed upper bound.
    pub extrapolated: Option<f64>,
}

impl SpectrumResult {
    pub fn ground(&self) -> f64 {
        self.eigenvalues[0]
    }

    /// The extrapolated value when available, else the ground eigenvalue.
    pub fn best_estimate(&self) -> f64 {
        self.extrapolated.unwrap_or_else(|| self.ground())
    }
}

/// Exponent of the basis used for a given problem.
///
/// For α = 2 the perturbation only shifts A, so the basis built on A + λ has
/// the exact small-x behaviour of the eigenfunctions; a fixed-A basis would
/// converge like N^(−1/2). Every other α keeps the unperturbed γ.
pub fn basis_exponent(params: &OscillatorParams) -> f64 {
    if params.alpha() == 2.0 {
        gamma_from_a(params.a() + params.lambda())
    } else {
        params.gamma()
    }
}

/// H = −d²/dx² + x² + A/x² + λx^(−α) in the basis with exponent
/// [`basis_exponent`]: diag(4n + 2γ_b) + (A − A_b)⟨x^(−2)⟩ + λ⟨x^(−α)⟩,
/// which reduces to diag(4n + 2γ) + λV when γ_b = γ.
pub fn build_hamiltonian(params: &OscillatorParams, n: usize) -> Result<SymMatrix> {
    if n == 0 {
        return Err(domain("build_hamiltonian", "basis size must be at least 1"));
    }
    let gb = basis_exponent(params);
    let lambda = params.lambda();
    let shift = params.a() - a_from_gamma(gb);
    let mut data = if lambda != 0.0 {
        let mut v = MatrixElementTable::build(params.alpha(), gb, n)?.into_packed();
        v.iter_mut().for_each(|x| *x *= lambda);
        v
    } else {
        vec![0.0; n * (n + 1) / 2]
    };
    if gb != params.gamma() && shift != 0.0 {
        let w = MatrixElementTable::build(2.0, gb, n)?;
        for (x, y) in data.iter_mut().zip(w.packed()) {
            *x += shift * y;
        }
    }
    for i in 0..n {
        data[i * (i + 1) / 2 + i] += basis_energy(i, gb);
    }
    SymMatrix::from_packed(n, data)
}

/// [`ground_state_with`] using the default schedule and the given tolerance.
pub fn ground_state(params: &OscillatorParams, tol: f64) -> Result<SpectrumResult> {
    ground_state_with(
        params,
        &SolverConfig {
            tol,
            ..SolverConfig::default()
        },
    )
}

/// Diagonalizes at N = start, 2·start, … until the ground eigenvalue changes
/// by less than `tol`, or N would exceed `cap`.
pub fn ground_state_with(params: &OscillatorParams, config: &SolverConfig) -> Result<SpectrumResult> {
    const OP: &str = "ground_state";
    if !(config.tol > 0.0) {
        return Err(domain(OP, format!("tolerance must be positive, got {}", config.tol)));
    }
    if config.start == 0 || config.start > config.cap {
        return Err(domain(
            OP,
            format!("invalid schedule start = {}, cap = {}", config.start, config.cap),
        ));
    }
    let full = build_hamiltonian(params, config.cap)?;
    let mut history: Vec<(usize, f64)> = Vec::new();
    let mut n = config.start;
    loop {
        let (ev, _) = full.leading(n).refined_spectrum()?;
        history.push((n, ev[0]));
        let delta = if history.len() >= 2 {
            (history[history.len() - 1].1 - history[history.len() - 2].1).abs()
        } else {
            f64::INFINITY
        };
        let converged = delta <= config.tol;
        if converged || 2 * n > config.cap {
            if !converged && config.strict {
                return Err(not_converged(
                    OP,
                    format!(
                        "ground eigenvalue still moving by {delta:e} at N = {n} (cap {})",
                        config.cap
                    ),
                ));
            }
            return Ok(SpectrumResult {
                eigenvalues: ev,
                basis_size: n,
                converged,
                delta_last_refinement: delta,
                extrapolated: aitken(&history),
                history,
            });
        }
        n *= 2;
    }
}

fn aitken(history: &[(usize, f64)]) -> Option<f64> {
    if history.len() < 3 {
        return None;
    }
    let k = history.len();
    let (x0, x1, x2) = (history[k - 3].1, history[k - 2].1, history[k - 1].1);
    let (d1, d2) = (x1 - x0, x2 - x1);
    if d2 == 0.0 {
        return Some(x2);
    }
    if d1.signum() != d2.signum() || d2.abs() >= d1.abs() {
        return None;
    }
    Some(x2 - d2 * d2 / (d2 - d1))
}

//! Gauss–Legendre rules and a composite rule for integrals over (0, ∞) whose
//! integrands behave like a power of x (possibly times logarithms) near the
//! origin and decay like a Gaussian at infinity.

use crate::error::{domain, not_converged, Result};

/// Gauss–Legendre nodes and weights on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Builds the n-point rule, locating the roots of P_n by Newton iteration.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss–Legendre rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            dp = if d != 0.0 { d } else { dp };
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// ∫_a^b f(x) dx.
    pub fn integrate<F: Fn(f64) -> f64>(&self, a: f64, b: f64, f: F) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(x, w)| w * f(mid + half * x))
            .sum::<f64>()
            * half
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let p = if n == 0 { 1.0 } else { p1 };
    let nf = n as f64;
    let d = nf * (x * p - p0) / (x * x - 1.0);
    (p, d)
}

/// Shape information used to lay out the composite half-line rule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfLineShape {
    /// The integrand behaves like x^power as x → 0; must exceed −1.
    pub power: f64,
    /// The integrand decays like x^(2·peak) e^(−x²); sets where the bulk sits.
    pub peak: f64,
}

/// Nodes and weights of a composite rule on (0, ∞).
///
/// On (0, 1] the substitution x = e^t turns an x^p endpoint into an
/// exponentially decaying e^((p+1)t), which Gauss panels in t handle without
/// trouble even with log factors present. Beyond 1 uniform panels run out to
/// where the Gaussian factor is negligible.
#[derive(Debug, Clone)]
pub struct HalfLineRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl HalfLineRule {
    /// `refine` multiplies the number of panels in both regions.
    pub fn new(shape: HalfLineShape, order: usize, refine: usize) -> Result<Self> {
        if !(shape.power > -1.0) {
            return Err(domain(
                "HalfLineRule",
                format!("integrand power {} at the origin is not integrable", shape.power),
            ));
        }
        let gl = GaussLegendre::new(order);
        let mut nodes = Vec::new();
        let mut weights = Vec::new();

        let depth = (40.0 / (shape.power + 1.0)).clamp(8.0, 600.0);
        let log_panels = refine * (depth / 1.5).ceil() as usize;
        let width = depth / log_panels as f64;
        for k in 0..log_panels {
            let a = -depth + k as f64 * width;
            let half = 0.5 * width;
            let mid = a + half;
            for (t, w) in gl.nodes().iter().zip(gl.weights()) {
                let x = (mid + half * t).exp();
                nodes.push(x);
                weights.push(w * half * x);
            }
        }

        let upper = (2.0 * shape.peak.max(0.0) + 1.0).sqrt() + 12.0;
        let lin_panels = refine * ((upper - 1.0) / 0.5).ceil() as usize;
        let width = (upper - 1.0) / lin_panels as f64;
        for k in 0..lin_panels {
            let a = 1.0 + k as f64 * width;
            let half = 0.5 * width;
            let mid = a + half;
            for (t, w) in gl.nodes().iter().zip(gl.weights()) {
                nodes.push(mid + half * t);
                weights.push(w * half);
            }
        }
        Ok(Self { nodes, weights })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }
}

/// Order of each Gauss panel in [`integrate_half_line`].
pub const PANEL_ORDER: usize = 20;

/// Default relative agreement demanded between the base and refined rules.
pub const HALF_LINE_TOL: f64 = 1e-10;

/// ∫₀^∞ f(x) dx with a refinement check: the integral is evaluated on the
/// composite rule and on a rule with twice as many panels, and the two must
/// agree to `rel_tol` (relative to the larger of |value| and `scale`).
pub fn integrate_half_line<F: Fn(f64) -> f64>(f: F, shape: HalfLineShape, rel_tol: f64, scale: f64) -> Result<f64> {
    let coarse = HalfLineRule::new(shape, PANEL_ORDER, 1)?.integrate(&f);
    let fine = HalfLineRule::new(shape, PANEL_ORDER, 2)?.integrate(&f);
    let change = (fine - coarse).abs();
    if change > rel_tol * fine.abs().max(scale) {
        return Err(not_converged(
            "integrate_half_line",
            format!("refinement changed the value by {change:e} (value {fine})"),
        ));
    }
    Ok(fine)
}

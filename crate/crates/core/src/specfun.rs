//! Special functions used throughout the crate: the gamma family, Pochhammer
//! symbols and generalized hypergeometric series.
//!
//! Everything here works on real arguments only. `ln_gamma`, `digamma` and
//! `trigamma` are restricted to positive arguments; [`gamma`] accepts any
//! real that is not a pole and reaches negative arguments by upward
//! recurrence.

use crate::error::{divergent, domain, not_converged, Result};

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Default tolerance for [`pfq`].
pub const DEFAULT_TOL: f64 = 1e-14;

/// Hard cap on the number of series terms summed by [`pfq`].
pub const MAX_TERMS: usize = 10_000_000;

/// Parameters closer than this to a nonpositive integer are treated as that
/// integer when deciding whether a series terminates.
pub const INTEGER_SNAP: f64 = 1e-12;

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

// Lanczos approximation, g = 7, n = 9.
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

// B_{2k} for k = 1..8.
const BERNOULLI: [f64; 8] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
];

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub(crate) fn new(start: f64) -> Self {
        Self { sum: start, comp: 0.0 }
    }

    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Riemann zeta at an integer k >= 2, by a short Euler–Maclaurin sum.
fn zeta_int(k: u32) -> f64 {
    const N: u32 = 16;
    let s = k as f64;
    let n = N as f64;
    let mut acc = CompensatedSum::default();
    for j in (1..N).rev() {
        acc.add((j as f64).powf(-s));
    }
    let nk = n.powf(-s);
    acc.add(n * nk / (s - 1.0));
    acc.add(0.5 * nk);
    // B_{2j}/(2j)! * s(s+1)...(s+2j-2) / N^(s+2j-1)
    let mut rising = s;
    let mut fact = 2.0;
    let mut pow = nk / n;
    for (j, b) in BERNOULLI.iter().enumerate() {
        acc.add(b / fact * rising * pow);
        let m = 2.0 * (j + 1) as f64;
        rising *= (s + m - 1.0) * (s + m);
        fact *= (m + 1.0) * (m + 2.0);
        pow /= n * n;
    }
    acc.value()
}

/// ln Γ(1 + z) for |z| <= 1/4, from the Maclaurin series in ζ(k).
fn ln_gamma_1p_small(z: f64) -> f64 {
    let mut acc = CompensatedSum::new(-EULER_GAMMA * z);
    let mut zk = -z;
    for k in 2..40u32 {
        zk *= -z;
        let term = zeta_int(k) * zk / k as f64;
        acc.add(term);
        if term.abs() < 1e-18 * z.abs() {
            break;
        }
    }
    acc.value()
}

/// ln Γ(2 + z) for |z| <= 1/4.
fn ln_gamma_2p_small(z: f64) -> f64 {
    let mut acc = CompensatedSum::new((1.0 - EULER_GAMMA) * z);
    let mut zk = -z;
    for k in 2..40u32 {
        zk *= -z;
        let term = (zeta_int(k) - 1.0) * zk / k as f64;
        acc.add(term);
        if term.abs() < 1e-18 * z.abs() {
            break;
        }
    }
    acc.value()
}

fn ln_gamma_lanczos(x: f64) -> f64 {
    let x = x - 1.0;
    let mut a = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    HALF_LN_2PI + (x + 0.5) * t.ln() - t + a.ln()
}

fn ln_gamma_stirling(x: f64) -> f64 {
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let mut corr = 0.0;
    let mut p = inv;
    for (k, b) in BERNOULLI.iter().enumerate() {
        let k = (k + 1) as f64;
        corr += b / (2.0 * k * (2.0 * k - 1.0)) * p;
        p *= inv2;
    }
    (x - 0.5) * x.ln() - x + HALF_LN_2PI + corr
}

/// Natural log of the gamma function for x > 0.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain("ln_gamma", format!("argument must be positive, got {x}")));
    }
    Ok(ln_gamma_pos(x))
}

fn ln_gamma_pos(x: f64) -> f64 {
    if x < 0.5 {
        return ln_gamma_pos(x + 1.0) - x.ln();
    }
    if (x - 1.0).abs() <= 0.25 {
        return ln_gamma_1p_small(x - 1.0);
    }
    if (x - 2.0).abs() <= 0.25 {
        return ln_gamma_2p_small(x - 2.0);
    }
    if x >= 10.0 {
        ln_gamma_stirling(x)
    } else {
        ln_gamma_lanczos(x)
    }
}

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.round()
}

/// Γ(x) for any real x that is not a pole.
///
/// Negative arguments are shifted up with Γ(x) = Γ(x + n) / (x)_n.
pub fn gamma(x: f64) -> Result<f64> {
    if !x.is_finite() || is_nonpositive_integer(x) {
        return Err(domain("gamma", format!("pole or non-finite argument {x}")));
    }
    if x > 0.0 {
        return Ok(ln_gamma_pos(x).exp());
    }
    let n = (-x).floor() as u64 + 1;
    let shifted = x + n as f64;
    let mut denom = 1.0;
    for k in 0..n {
        denom *= x + k as f64;
    }
    Ok(ln_gamma_pos(shifted).exp() / denom)
}

/// Rising factorial (a)_n = a (a+1) ... (a+n-1), by running product.
pub fn pochhammer(a: f64, n: u32) -> f64 {
    let mut p = 1.0;
    for k in 0..n {
        p *= a + k as f64;
        if p == 0.0 {
            break;
        }
    }
    p
}

/// Digamma ψ(x) = Γ'(x)/Γ(x) for x > 0.
pub fn digamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain("digamma", format!("argument must be positive, got {x}")));
    }
    Ok(digamma_pos(x))
}

fn digamma_pos(mut x: f64) -> f64 {
    let mut shift = CompensatedSum::default();
    while x < 10.0 {
        shift.add(-1.0 / x);
        x += 1.0;
    }
    let inv2 = 1.0 / (x * x);
    let mut p = inv2;
    let mut series = 0.0;
    for (k, b) in BERNOULLI.iter().enumerate() {
        series += b / (2.0 * (k + 1) as f64) * p;
        p *= inv2;
    }
    x.ln() - 0.5 / x - series + shift.value()
}

/// Trigamma ψ⁽¹⁾(x) for x > 0.
pub fn trigamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain("trigamma", format!("argument must be positive, got {x}")));
    }
    Ok(trigamma_pos(x))
}

fn trigamma_pos(mut x: f64) -> f64 {
    let mut shift = CompensatedSum::default();
    while x < 10.0 {
        shift.add(1.0 / (x * x));
        x += 1.0;
    }
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let mut p = inv * inv2;
    let mut series = inv + 0.5 * inv2;
    for b in BERNOULLI.iter() {
        series += b * p;
        p *= inv2;
    }
    series + shift.value()
}

/// Digamma continued to negative non-integer arguments by recurrence.
pub fn digamma_real(x: f64) -> Result<f64> {
    if !x.is_finite() || is_nonpositive_integer(x) {
        return Err(domain("digamma_real", format!("pole or non-finite argument {x}")));
    }
    let mut x = x;
    let mut shift = CompensatedSum::default();
    while x <= 0.0 {
        shift.add(-1.0 / x);
        x += 1.0;
    }
    Ok(digamma_pos(x) + shift.value())
}

/// Trigamma continued to negative non-integer arguments by recurrence.
pub fn trigamma_real(x: f64) -> Result<f64> {
    if !x.is_finite() || is_nonpositive_integer(x) {
        return Err(domain("trigamma_real", format!("pole or non-finite argument {x}")));
    }
    let mut x = x;
    let mut shift = CompensatedSum::default();
    while x <= 0.0 {
        shift.add(1.0 / (x * x));
        x += 1.0;
    }
    Ok(trigamma_pos(x) + shift.value())
}

/// Parameters and argument of a generalized hypergeometric series pFq.
#[derive(Debug, Clone, PartialEq)]
pub struct HypergeometricSpec {
    numerators: Vec<f64>,
    denominators: Vec<f64>,
    argument: f64,
    terminates_at: Option<u32>,
}

fn snap_nonpositive_integer(x: f64) -> Option<u32> {
    let r = x.round();
    if r <= 0.0 && (x - r).abs() <= INTEGER_SNAP {
        Some((-r) as u32)
    } else {
        None
    }
}

impl HypergeometricSpec {
    /// Validates the parameter lists.
    ///
    /// A denominator equal to a nonpositive integer -m is accepted only when a
    /// numerator -n with n <= m ends the series before the zero factor is
    /// reached.
    pub fn new(numerators: Vec<f64>, denominators: Vec<f64>, argument: f64) -> Result<Self> {
        const OP: &str = "HypergeometricSpec";
        if !argument.is_finite() {
            return Err(domain(OP, "argument must be finite"));
        }
        if numerators.iter().chain(&denominators).any(|p| !p.is_finite()) {
            return Err(domain(OP, "parameters must be finite"));
        }
        let mut numerators = numerators;
        let mut terminates_at: Option<u32> = None;
        for a in numerators.iter_mut() {
            if let Some(n) = snap_nonpositive_integer(*a) {
                *a = -(n as f64);
                terminates_at = Some(terminates_at.map_or(n, |m| m.min(n)));
            }
        }
        for &b in &denominators {
            if let Some(m) = snap_nonpositive_integer(b) {
                match terminates_at {
                    Some(n) if n <= m => {}
                    _ => {
                        return Err(domain(
                            OP,
                            format!("denominator parameter {b} is zero or a negative integer"),
                        ))
                    }
                }
            }
        }
        Ok(Self {
            numerators,
            denominators,
            argument,
            terminates_at,
        })
    }

    pub fn numerators(&self) -> &[f64] {
        &self.numerators
    }

    pub fn denominators(&self) -> &[f64] {
        &self.denominators
    }

    pub fn argument(&self) -> f64 {
        self.argument
    }

    /// Degree of the polynomial when some numerator is a nonpositive integer.
    pub fn terminating_degree(&self) -> Option<u32> {
        self.terminates_at
    }

    /// Σβ_j − Σα_i.
    pub fn parametric_excess(&self) -> f64 {
        self.denominators.iter().sum::<f64>() - self.numerators.iter().sum::<f64>()
    }

    fn ratio(&self, k: f64) -> f64 {
        let mut r = self.argument / (k + 1.0);
        for a in &self.numerators {
            r *= a + k;
        }
        for b in &self.denominators {
            r /= b + k;
        }
        r
    }

    fn max_abs_param(&self) -> f64 {
        self.numerators
            .iter()
            .chain(&self.denominators)
            .fold(0.0f64, |m, p| m.max(p.abs()))
    }
}

/// Result of a hypergeometric series evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PfqValue {
    pub value: f64,
    /// Estimated absolute error of `value` (tail bound or extrapolation
    /// spread).
    pub error_estimate: f64,
    /// Number of series terms summed.
    pub terms: usize,
}

/// Evaluates pFq(α; β; z) by direct summation.
///
/// Terminating series are summed exactly. For |z| < 1, or p <= q, summation
/// stops when the ratio-bounded tail falls below `tol * max(1, |sum|)`. At
/// z = 1 with p = q + 1 the partial sums S_K carry a tail with an asymptotic
/// expansion in K^(-s-j), s the parametric excess; the sums are taken at
/// K, 2K, 4K, ... and the tail is removed by Richardson elimination of those
/// known exponents.
pub fn pfq(spec: &HypergeometricSpec, tol: f64) -> Result<PfqValue> {
    const OP: &str = "pfq";
    if !(tol > 0.0) {
        return Err(domain(OP, "tolerance must be positive"));
    }
    if let Some(n) = spec.terminates_at {
        return Ok(sum_terminating(spec, n));
    }
    let z = spec.argument;
    if z == 0.0 {
        return Ok(PfqValue {
            value: 1.0,
            error_estimate: 0.0,
            terms: 1,
        });
    }
    let p = spec.numerators.len();
    let q = spec.denominators.len();
    if p > q + 1 {
        return Err(divergent(OP, format!("p = {p} > q + 1 = {} with z != 0", q + 1)));
    }
    if p == q + 1 {
        if z.abs() > 1.0 {
            return Err(divergent(OP, format!("|z| = {} > 1", z.abs())));
        }
        if z == 1.0 {
            let s = spec.parametric_excess();
            if !(s > 0.0) {
                return Err(divergent(
                    OP,
                    format!("parametric excess {s} must be positive at z = 1"),
                ));
            }
            return sum_unit_argument(spec, s, tol);
        }
        if z.abs() == 1.0 {
            return Err(domain(OP, "only z = 1 is supported on the unit circle"));
        }
    }
    sum_direct(spec, tol)
}

/// [`pfq`] with [`DEFAULT_TOL`], returning only the value.
pub fn hyp(numerators: &[f64], denominators: &[f64], z: f64) -> Result<f64> {
    let spec = HypergeometricSpec::new(numerators.to_vec(), denominators.to_vec(), z)?;
    Ok(pfq(&spec, DEFAULT_TOL)?.value)
}

fn sum_terminating(spec: &HypergeometricSpec, n: u32) -> PfqValue {
    let mut t = 1.0;
    let mut acc = CompensatedSum::new(1.0);
    let mut terms = 1;
    for k in 0..n {
        t *= spec.ratio(k as f64);
        acc.add(t);
        terms += 1;
    }
    PfqValue {
        value: acc.value(),
        error_estimate: 0.0,
        terms,
    }
}

fn sum_direct(spec: &HypergeometricSpec, tol: f64) -> Result<PfqValue> {
    let z = spec.argument.abs();
    let p = spec.numerators.len();
    let q = spec.denominators.len();
    // Past this index the term ratio is monotone in k.
    let monotone_from = (2.0 * spec.max_abs_param() + z + 2.0).ceil() as usize;
    let mut t = 1.0;
    let mut acc = CompensatedSum::new(1.0);
    for k in 0..MAX_TERMS {
        t *= spec.ratio(k as f64);
        acc.add(t);
        if k + 1 >= monotone_from {
            let mut rho = spec.ratio((k + 1) as f64).abs();
            if p == q + 1 {
                rho = rho.max(z);
            }
            if rho < 1.0 {
                let bound = t.abs() * rho / (1.0 - rho);
                let sum = acc.value();
                if bound <= tol * sum.abs().max(1.0) {
                    return Ok(PfqValue {
                        value: sum,
                        error_estimate: bound,
                        terms: k + 2,
                    });
                }
            }
        }
    }
    Err(not_converged(
        "pfq",
        format!("tail bound above {tol} after {MAX_TERMS} terms"),
    ))
}

const RICHARDSON_LEVELS: usize = 7;

fn sum_unit_argument(spec: &HypergeometricSpec, excess: f64, tol: f64) -> Result<PfqValue> {
    let mut base = 64usize.max(8 * spec.max_abs_param().ceil() as usize);
    let mut best: Option<(f64, f64)> = None;
    loop {
        let kmax = base << RICHARDSON_LEVELS;
        if kmax > MAX_TERMS {
            let (v, e) = best.unwrap_or((f64::NAN, f64::INFINITY));
            return Err(not_converged(
                "pfq",
                format!("z = 1 extrapolation reached {e:e} (value {v}) but tolerance is {tol:e}"),
            ));
        }
        let mut partial = Vec::with_capacity(RICHARDSON_LEVELS + 1);
        let mut next_checkpoint = base;
        let mut t = 1.0;
        let mut acc = CompensatedSum::new(1.0);
        let mut abs_sum = 1.0;
        for k in 0..kmax {
            if k + 1 == next_checkpoint {
                partial.push(acc.value());
                next_checkpoint *= 2;
            }
            t *= spec.ratio(k as f64);
            acc.add(t);
            abs_sum += t.abs();
        }
        debug_assert_eq!(partial.len(), RICHARDSON_LEVELS + 1);

        let mut amplification = 1.0;
        let mut previous = partial[RICHARDSON_LEVELS];
        for j in 1..=RICHARDSON_LEVELS {
            let f = 2f64.powf(excess + (j - 1) as f64);
            amplification *= (f + 1.0) / (f - 1.0);
            previous = partial[RICHARDSON_LEVELS];
            for i in (j..=RICHARDSON_LEVELS).rev() {
                partial[i] = (f * partial[i] - partial[i - 1]) / (f - 1.0);
            }
        }
        let value = partial[RICHARDSON_LEVELS];
        let spread = (value - previous).abs();
        let noise = 64.0 * amplification * f64::EPSILON * abs_sum;
        let estimate = spread.max(noise);
        if best.is_none_or(|(_, e)| estimate < e) {
            best = Some((value, estimate));
        }
        if spread <= tol * value.abs().max(1.0) || spread <= noise {
            return Ok(PfqValue {
                value,
                error_estimate: estimate,
                terms: kmax,
            });
        }
        base *= 2;
    }
}

/// Gauss summation ₂F₁(a, b; c; 1) = Γ(c)Γ(c−a−b) / (Γ(c−a)Γ(c−b)).
pub fn gauss_2f1_unit(a: f64, b: f64, c: f64) -> Result<f64> {
    const OP: &str = "gauss_2f1_unit";
    let s = c - a - b;
    if !(s > 0.0) {
        return Err(domain(OP, format!("requires c - a - b > 0, got {s}")));
    }
    for (name, v) in [("c", c), ("c - a", c - a), ("c - b", c - b)] {
        if snap_nonpositive_integer(v).is_some() {
            return Err(domain(OP, format!("{name} = {v} is a nonpositive integer")));
        }
    }
    if snap_nonpositive_integer(a) == Some(0) || snap_nonpositive_integer(b) == Some(0) {
        return Ok(1.0);
    }
    if c > 0.0 && c - a > 0.0 && c - b > 0.0 {
        let ln = ln_gamma_pos(c) + ln_gamma_pos(s) - ln_gamma_pos(c - a) - ln_gamma_pos(c - b);
        Ok(ln.exp())
    } else {
        Ok(gamma(c)? * gamma(s)? / (gamma(c - a)? * gamma(c - b)?))
    }
}

/// ₄F₃(a, b, c+1, d+1; e, c, d; z) through its reduction to three ₂F₁
/// series, with the gamma-function form at z = 1.
pub fn lemma1_4f3(a: f64, b: f64, c: f64, d: f64, e: f64, z: f64) -> Result<f64> {
    const OP: &str = "lemma1_4f3";
    if c == 0.0 || d == 0.0 {
        return Err(domain(OP, "c and d must be nonzero"));
    }
    let middle = a * b / (e * c) * (1.0 + (c + 1.0) / d);
    let last = pochhammer(a, 2) * pochhammer(b, 2) / (d * c * pochhammer(e, 2));
    if z == 1.0 {
        let s = e - a - b;
        if !(s > 2.0) {
            return Err(domain(OP, format!("requires e - a - b > 2 at z = 1, got {s}")));
        }
        let pref = gamma(e)? / (gamma(e - a)? * gamma(e - b)?);
        let bracket = gamma(s)?
            + a * b / c * (1.0 + (c + 1.0) / d) * gamma(s - 1.0)?
            + pochhammer(a, 2) * pochhammer(b, 2) / (d * c) * gamma(s - 2.0)?;
        return Ok(pref * bracket);
    }
    if !(z.abs() < 1.0) {
        return Err(domain(OP, format!("requires |z| < 1 or z = 1, got {z}")));
    }
    let f0 = hyp(&[a, b], &[e], z)?;
    if z == 0.0 {
        return Ok(f0);
    }
    let f1 = hyp(&[a + 1.0, b + 1.0], &[e + 1.0], z)?;
    let f2 = hyp(&[a + 2.0, b + 2.0], &[e + 2.0], z)?;
    Ok(f0 + middle * z * f1 + last * z * z * f2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn ln_gamma_known_values() {
        assert_eq!(ln_gamma(1.0).unwrap(), 0.0);
        assert!(ln_gamma(2.0).unwrap().abs() < 1e-17);
        assert_relative_eq!(ln_gamma(0.5).unwrap(), 0.5 * PI.ln(), max_relative = 1e-14);
        // 40-digit reference values.
        assert_relative_eq!(
            ln_gamma(10.3).unwrap(),
            13.482_036_786_138_356_970_6,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            ln_gamma(0.7).unwrap(),
            0.260_867_246_531_666_514_4,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            ln_gamma(150.25).unwrap(),
            601.261_504_032_499_725_9,
            max_relative = 1e-15
        );
        assert_relative_eq!(
            ln_gamma(1.1).unwrap(),
            -0.049_872_441_259_839_724_15,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            ln_gamma(2.05).unwrap(),
            0.021_937_091_667_171_834_99,
            max_relative = 1e-14
        );
    }

    #[test]
    fn ln_gamma_matches_factorials() {
        let mut fact = 1.0f64;
        for n in 1..60u32 {
            fact *= n as f64;
            assert_relative_eq!(ln_gamma(n as f64 + 1.0).unwrap(), fact.ln(), max_relative = 1e-13);
        }
    }

    #[test]
    fn ln_gamma_rejects_nonpositive() {
        assert!(ln_gamma(0.0).is_err());
        assert!(ln_gamma(-1.5).is_err());
        assert!(ln_gamma(f64::NAN).is_err());
    }

    #[test]
    fn gamma_negative_arguments() {
        assert_relative_eq!(gamma(-1.5).unwrap(), 2.363_271_801_207_354_7, max_relative = 1e-14);
        assert_relative_eq!(gamma(-0.5).unwrap(), -2.0 * PI.sqrt(), max_relative = 1e-14);
        assert!(gamma(-3.0).is_err());
        assert!(gamma(0.0).is_err());
    }

    #[test]
    fn pochhammer_cases() {
        assert_eq!(pochhammer(3.7, 0), 1.0);
        assert_eq!(pochhammer(1.0, 5), 120.0);
        assert_eq!(pochhammer(-2.0, 3), 0.0);
        assert_eq!(pochhammer(2.0, 3), 24.0);
    }

    #[test]
    fn digamma_values() {
        assert!((digamma(1.0).unwrap() + EULER_GAMMA).abs() < 1e-15);
        assert!((digamma(4.5).unwrap() - 1.388_870_926_359_528_9).abs() < 1e-14);
        assert!((digamma(0.6).unwrap() + 1.540_619_213_893_190_4).abs() < 1e-14);
        assert!(digamma(0.0).is_err());
    }

    #[test]
    fn trigamma_values() {
        assert!((trigamma(0.5).unwrap() - PI * PI / 2.0).abs() < 1e-13);
        assert!((trigamma(1.0).unwrap() - PI * PI / 6.0).abs() < 1e-14);
        assert!((trigamma(3.3).unwrap() - 0.353_501_541_841_061_8).abs() < 1e-15);
        assert!((trigamma(0.75).unwrap() - 2.541_879_647_671_606_5).abs() < 1e-14);
        assert!(trigamma(-1.0).is_err());
    }

    #[test]
    fn continued_polygamma_recurrences() {
        for &x in &[-2.5, -1.25, -0.5, 0.3] {
            let d = digamma_real(x + 1.0).unwrap() - digamma_real(x).unwrap();
            assert_relative_eq!(d, 1.0 / x, max_relative = 1e-12);
            let t = trigamma_real(x).unwrap() - trigamma_real(x + 1.0).unwrap();
            assert_relative_eq!(t, 1.0 / (x * x), max_relative = 1e-12);
        }
        assert!(digamma_real(-2.0).is_err());
    }

    #[test]
    fn spec_rejects_bad_denominators() {
        assert!(HypergeometricSpec::new(vec![1.0], vec![0.0], 0.5).is_err());
        assert!(HypergeometricSpec::new(vec![1.0], vec![-3.0], 0.5).is_err());
        // (−1)_k vanishes for k >= 2 before (−2)_k does.
        let s = HypergeometricSpec::new(vec![-1.0, 2.0], vec![-2.0], 1.0).unwrap();
        assert_eq!(s.terminating_degree(), Some(1));
        // 1 + (−1)(2)/(−2) = 2
        assert_eq!(pfq(&s, DEFAULT_TOL).unwrap().value, 2.0);
    }

    #[test]
    fn pfq_terminates_with_zero_parameter() {
        let v = hyp(&[0.0, 3.0], &[2.5], 1.0).unwrap();
        assert_eq!(v, 1.0);
        let v = hyp(&[1e-13, 3.0, 2.0], &[2.5, 4.0], 1.0).unwrap();
        assert_eq!(v, 1.0);
    }

    #[test]
    fn pfq_elementary_series() {
        // 0F0(;;x) = e^x, 1F0(a;;z) = (1-z)^-a
        assert_relative_eq!(hyp(&[], &[], 1.3).unwrap(), 1.3f64.exp(), max_relative = 1e-14);
        assert_relative_eq!(hyp(&[], &[], -4.0).unwrap(), (-4.0f64).exp(), max_relative = 1e-10);
        assert_relative_eq!(hyp(&[2.5], &[], 0.4).unwrap(), 0.6f64.powf(-2.5), max_relative = 1e-13);
        // 2F1(1,1;2;z) = -ln(1-z)/z
        let z: f64 = 0.9;
        assert_relative_eq!(
            hyp(&[1.0, 1.0], &[2.0], z).unwrap(),
            -(1.0 - z).ln() / z,
            max_relative = 1e-13
        );
    }

    #[test]
    fn pfq_unit_argument_chu_vandermonde() {
        // γ = 3: 2F1(1,1;γ+1;1) = γ/(γ−1)
        assert_relative_eq!(hyp(&[1.0, 1.0], &[4.0], 1.0).unwrap(), 1.5, max_relative = 1e-13);
        assert_relative_eq!(hyp(&[0.5, 0.5], &[2.0], 1.0).unwrap(), 4.0 / PI, max_relative = 1e-13);
    }

    #[test]
    fn pfq_4f3_closed_value() {
        let g = 4.5;
        let closed = 0.25 * g * (4.0 * g * g - 15.0 * g + 13.0) / ((g - 1.0) * (g - 2.0) * (g - 3.0));
        let v = hyp(&[1.0, 1.0, 3.0, 3.0], &[2.0, 2.0, g + 1.0], 1.0).unwrap();
        assert_relative_eq!(v, closed, max_relative = 1e-12);
    }

    #[test]
    fn pfq_divergence_errors() {
        let s = HypergeometricSpec::new(vec![1.0, 1.0], vec![2.0], 1.0).unwrap();
        assert!(matches!(pfq(&s, 1e-12), Err(crate::Error::Divergent { .. })));
        let s = HypergeometricSpec::new(vec![1.0, 1.0, 1.0], vec![2.0], 0.5).unwrap();
        assert!(matches!(pfq(&s, 1e-12), Err(crate::Error::Divergent { .. })));
        let s = HypergeometricSpec::new(vec![1.0, 1.0], vec![3.0], 1.5).unwrap();
        assert!(pfq(&s, 1e-12).is_err());
    }

    #[test]
    fn gauss_sum_cases() {
        let g = 2.0;
        assert_relative_eq!(gauss_2f1_unit(1.0, 1.0, g + 1.0).unwrap(), 2.0, max_relative = 1e-14);
        assert_eq!(gauss_2f1_unit(0.0, 1.3, 2.9).unwrap(), 1.0);
        // α = 3, γ = 4: 2F1(1/2, 1/2; 3; 1) = Γ(3)Γ(2)/Γ(5/2)^2
        let expect = 2.0 / gamma(2.5).unwrap().powi(2);
        assert_relative_eq!(gauss_2f1_unit(0.5, 0.5, 3.0).unwrap(), expect, max_relative = 1e-14);
        let by_series = hyp(&[0.5, 0.5], &[3.0], 1.0).unwrap();
        assert_relative_eq!(by_series, expect, max_relative = 1e-12);
        assert!(gauss_2f1_unit(1.0, 1.0, 2.0).is_err());
    }

    #[test]
    fn lemma1_cases() {
        assert_eq!(lemma1_4f3(1.3, 0.7, 2.0, 3.0, 5.0, 0.0).unwrap(), 1.0);
        let g = 5.0;
        let closed = lemma1_4f3(1.0, 1.0, 2.0, 2.0, g + 1.0, 1.0).unwrap();
        let direct = hyp(&[1.0, 1.0, 3.0, 3.0], &[g + 1.0, 2.0, 2.0], 1.0).unwrap();
        assert_relative_eq!(closed, direct, max_relative = 1e-12);
        let g = 6.0;
        let closed = lemma1_4f3(1.0, 1.0, 3.0, 3.0, g + 1.0, 1.0).unwrap();
        let direct = hyp(&[1.0, 1.0, 4.0, 4.0], &[g + 1.0, 3.0, 3.0], 1.0).unwrap();
        assert_relative_eq!(closed, direct, max_relative = 1e-12);
        let z = 0.5;
        let closed = lemma1_4f3(0.7, 1.3, 2.5, 0.8, 3.1, z).unwrap();
        let direct = hyp(&[0.7, 1.3, 3.5, 1.8], &[3.1, 2.5, 0.8], z).unwrap();
        assert_relative_eq!(closed, direct, max_relative = 1e-13);
        assert!(lemma1_4f3(1.0, 1.0, 3.0, 3.0, 4.0, 1.0).is_err());
    }
}

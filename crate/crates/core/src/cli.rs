//! Batch commands behind the `spiked` binary. Each command turns a
//! [`RunConfig`] into a [`Report`], which renders as CSV, JSON or Markdown.

use std::f64::consts::PI;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{Map, Number, Value};

use crate::bounds::{variational_upper, BoundReport};
use crate::error::{domain, Error, Result};
use crate::model::{gamma_from_a, make_params, ClosedAlpha, OscillatorParams};
use crate::perturb::{
    epsilon1, epsilon2_alpha6_with_cubic, epsilon2_closed, epsilon2_hypergeom, epsilon2_series, epsilon3_closed,
    epsilon3_series, phi1_norm_sq, phi1_norm_sq_series, ALPHA6_CUBIC_ALTERNATIVE,
};
use crate::reference::{bound_rows, same_lambda, upper_bound_rows, Printed};
use crate::series::{
    double_sum_truncated, lemma_closed, lemma_quadrature, resummation_check, resummation_limit,
    trigamma_identity_check, trigamma_identity_hypergeometric, SeriesCheck,
};
use crate::solver::{ground_state_with, SolverConfig};

/// λ grid shared by the table commands.
pub const DEFAULT_LAMBDAS: [f64; 4] = [0.001, 0.01, 0.1, 1.0];

/// Truncation of the double sums in `sums`.
pub const DOUBLE_SUM_TERMS: usize = 400;

/// Terms of the single-sum oracles in `coeffs`.
pub const COEFF_SERIES_TERMS: usize = 4000;

/// Relative agreement required between closed forms and quadrature.
pub const QUADRATURE_REL_TOL: f64 = 1e-7;

/// Absolute agreement required of the numerically extrapolated α → 2 limit.
pub const LIMIT_TOL: f64 = 1e-6;

const UPPER_BOUND_L: [u32; 3] = [3, 4, 5];
const LARGE_L: u32 = 50;
const LEMMA_GAMMAS: [(ClosedAlpha, [f64; 5]); 3] = [
    (ClosedAlpha::Two, [1.5, 2.0, 3.0, 5.0, 8.0]),
    (ClosedAlpha::Four, [4.5, 5.0, 6.0, 8.0, 12.0]),
    (ClosedAlpha::Six, [7.5, 8.0, 10.0, 12.0, 16.0]),
];
const RESUMMATION_ALPHAS: [f64; 3] = [0.5, 1.0, 2.4];
const TRIGAMMA_GAMMAS: [f64; 3] = [1.5, 2.0, 5.0];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    /// Perturbative energies with their residual-norm bounds
    Bounds,
    /// Variational upper bound and basis-truncation eigenvalue for x^(-4)
    Table1,
    /// Bounds of orders 1 to 3 for A = 12, x^(-4), with the optimal pair
    Table2,
    /// Closed forms of infinite series against truncated sums
    Sums,
    /// Ground-state energy by basis diagonalization
    Solve,
    /// Perturbation coefficients, closed forms against series
    Coeffs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
    Md,
}

/// Everything a command needs; built from the command line.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: Command,
    #[serde(rename = "A")]
    pub a: Option<f64>,
    pub l: Option<u32>,
    pub alpha: f64,
    pub lambdas: Vec<f64>,
    pub order: u32,
    pub basis_cap: usize,
    pub tol: Option<f64>,
    pub format: Format,
    pub digits: usize,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            a: None,
            l: None,
            alpha: 4.0,
            lambdas: DEFAULT_LAMBDAS.to_vec(),
            order: 3,
            basis_cap: 2048,
            tol: None,
            format: Format::Csv,
            digits: 12,
        }
    }

    pub fn validate(&self) -> Result<()> {
        const OP: &str = "RunConfig";
        if self.a.is_some() && self.l.is_some() {
            return Err(domain(OP, "give either A or l, not both"));
        }
        if let Some(a) = self.a {
            if !a.is_finite() {
                return Err(domain(OP, format!("A must be finite, got {a}")));
            }
        }
        if self.lambdas.is_empty() {
            return Err(domain(OP, "lambda list is empty"));
        }
        if let Some(&bad) = self.lambdas.iter().find(|l| !(**l >= 0.0 && l.is_finite())) {
            return Err(domain(OP, format!("lambda must be finite and nonnegative, got {bad}")));
        }
        if !(self.alpha.is_finite() && self.alpha > 0.0) {
            return Err(domain(OP, format!("alpha must be positive, got {}", self.alpha)));
        }
        if !(1..=3).contains(&self.order) {
            return Err(domain(OP, format!("order must be 1, 2 or 3, got {}", self.order)));
        }
        if self.basis_cap < 32 {
            return Err(domain(
                OP,
                format!("basis cap must be at least 32, got {}", self.basis_cap),
            ));
        }
        if let Some(t) = self.tol {
            if !(t > 0.0) {
                return Err(domain(OP, format!("tolerance must be positive, got {t}")));
            }
        }
        if !(1..=17).contains(&self.digits) {
            return Err(domain(OP, format!("digits must be in 1..=17, got {}", self.digits)));
        }
        Ok(())
    }

    /// A from --A, or l(l+1) from --l.
    pub fn a_value(&self) -> Option<f64> {
        self.a.or(self.l.map(|l| (l * (l + 1)) as f64))
    }

    fn l_value(&self) -> Option<u32> {
        self.l.or_else(|| {
            let a = self.a?;
            let l = ((-1.0 + (1.0 + 4.0 * a).sqrt()) / 2.0).round();
            (l >= 0.0 && l * (l + 1.0) == a).then_some(l as u32)
        })
    }

    fn solver(&self, default_tol: f64) -> SolverConfig {
        SolverConfig {
            start: 32.min(self.basis_cap),
            cap: self.basis_cap,
            tol: self.tol.unwrap_or(default_tol),
            strict: false,
        }
    }
}

/// One table cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
    Bool(bool),
    Empty,
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Empty, Cell::Num)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<u32> for Cell {
    fn from(v: u32) -> Self {
        Cell::Int(v as i64)
    }
}

/// Counts of checks run and failed.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub rows: usize,
    pub checks: usize,
    pub failures: usize,
    pub domain_errors: usize,
}

/// Output of a command: a rectangular table plus its check tally.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub config: RunConfig,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub summary: Summary,
}

impl Report {
    fn new(config: &RunConfig, columns: &[&'static str]) -> Self {
        let mut columns = columns.to_vec();
        columns.push("note");
        Self {
            config: config.clone(),
            columns,
            rows: Vec::new(),
            summary: Summary::default(),
        }
    }

    /// Appends a row; `checks` are the pass/fail results it carries.
    fn push(&mut self, mut cells: Vec<Cell>, checks: &[bool], note: &str) {
        cells.resize(self.columns.len() - 1, Cell::Empty);
        cells.push(note.into());
        self.summary.rows += 1;
        self.summary.checks += checks.len();
        self.summary.failures += checks.iter().filter(|ok| !**ok).count();
        self.rows.push(cells);
    }

    /// Appends a row whose computation failed after the leading cells.
    fn push_error(&mut self, lead: Vec<Cell>, err: &Error) {
        match err {
            Error::Domain { .. } => self.summary.domain_errors += 1,
            _ => self.summary.failures += 1,
        }
        self.push(lead, &[], &err.to_string());
    }

    /// 0 when every check passed, 2 when any row hit a domain error, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.summary.domain_errors > 0 {
            2
        } else if self.summary.failures > 0 {
            1
        } else {
            0
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
            Format::Md => self.to_markdown(),
        }
    }

    fn text(&self, cell: &Cell) -> String {
        match cell {
            Cell::Num(v) => format_sig(*v, self.config.digits),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|c| self.text(c).replace(',', ";")).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "| {} |", self.columns.join(" | "));
        let _ = writeln!(out, "|{}", "---|".repeat(self.columns.len()));
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|c| self.text(c).replace('|', "/")).collect();
            let _ = writeln!(out, "| {} |", cells.join(" | "));
        }
        out
    }

    pub fn to_value(&self) -> Value {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(k, c)| (k.to_string(), self.json_cell(c)))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        let mut top = Map::new();
        top.insert(
            "command".into(),
            serde_json::to_value(self.config.command).unwrap_or(Value::Null),
        );
        top.insert(
            "config".into(),
            serde_json::to_value(&self.config).unwrap_or(Value::Null),
        );
        top.insert("rows".into(), Value::Array(rows));
        let mut summary = serde_json::to_value(self.summary).unwrap_or(Value::Null);
        if let Value::Object(m) = &mut summary {
            m.insert("passed".into(), Value::Bool(self.exit_code() == 0));
        }
        top.insert("summary".into(), summary);
        Value::Object(top)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).unwrap_or_default();
        s.push('\n');
        s
    }

    fn json_cell(&self, cell: &Cell) -> Value {
        match cell {
            Cell::Num(v) if v.is_finite() => format_sig(*v, self.config.digits)
                .parse::<Number>()
                .map(Value::Number)
                .unwrap_or(Value::Null),
            Cell::Num(_) | Cell::Empty => Value::Null,
            Cell::Int(v) => Value::from(*v),
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Bool(b) => Value::Bool(*b),
        }
    }
}

/// Fixed-point text with `digits` significant digits.
pub fn format_sig(v: f64, digits: usize) -> String {
    if !v.is_finite() {
        return v.to_string();
    }
    let digits = digits.max(1) as i32;
    let decimals = if v == 0.0 {
        digits - 1
    } else {
        digits - 1 - v.abs().log10().floor() as i32
    };
    let s = format!("{:.*}", decimals.clamp(0, 60) as usize, v);
    if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
        s[1..].to_string()
    } else {
        s
    }
}

/// Runs the configured command.
pub fn run(config: &RunConfig) -> Result<Report> {
    config.validate()?;
    Ok(match config.command {
        Command::Table1 => table1(config),
        Command::Table2 => table2(config),
        Command::Bounds => bounds(config),
        Command::Sums => sums(config),
        Command::Solve => solve(config),
        Command::Coeffs => coeffs(config)?,
    })
}

fn printed_cells(p: Option<&Printed>, v: f64) -> (Cell, Cell, Option<bool>) {
    match p {
        Some(p) => (p.text.as_str().into(), p.deviation(v).into(), Some(p.matches(v))),
        None => (Cell::Empty, Cell::Empty, None),
    }
}

fn table1(config: &RunConfig) -> Report {
    let mut r = Report::new(
        config,
        &[
            "lambda",
            "l",
            "A",
            "e_upper",
            "e_upper_ref",
            "e_upper_dev",
            "e_upper_match",
            "e",
            "e_ref",
            "e_dev",
            "e_match",
            "basis_size",
            "converged",
            "e_a_upper_ref",
        ],
    );
    let refs = upper_bound_rows();
    let mut grid: Vec<(f64, Option<u32>, f64)> = Vec::new();
    for &lambda in &config.lambdas {
        match config.a_value() {
            Some(a) => grid.push((lambda, config.l_value(), a)),
            None => {
                for l in UPPER_BOUND_L {
                    grid.push((lambda, Some(l), (l * (l + 1)) as f64));
                }
                if same_lambda(lambda, 1.0) {
                    grid.push((lambda, Some(LARGE_L), (LARGE_L * (LARGE_L + 1)) as f64));
                }
            }
        }
    }
    let solver = config.solver(1e-12);
    for (lambda, l, a) in grid {
        let lead = vec![lambda.into(), l.map_or(Cell::Empty, Cell::from), a.into()];
        let reference = (config.alpha == 4.0)
            .then(|| refs.iter().find(|x| Some(x.l) == l && same_lambda(x.lambda, lambda)))
            .flatten();
        let computed = make_params(a, config.alpha, lambda).and_then(|p| {
            let upper = variational_upper(&p)?;
            let s = ground_state_with(&p, &solver)?;
            Ok((upper, s))
        });
        match computed {
            Ok((upper, s)) => {
                let e = s.best_estimate();
                let (u_ref, u_dev, u_ok) = printed_cells(reference.map(|x| &x.upper), upper);
                let (e_ref, e_dev, e_ok) = printed_cells(reference.map(|x| &x.exact), e);
                let mut cells = lead;
                cells.extend([
                    upper.into(),
                    u_ref,
                    u_dev,
                    u_ok.map_or(Cell::Empty, Cell::Bool),
                    e.into(),
                    e_ref,
                    e_dev,
                    e_ok.map_or(Cell::Empty, Cell::Bool),
                    s.basis_size.into(),
                    s.converged.into(),
                    reference.map_or(Cell::Empty, |x| x.earlier_upper.text.as_str().into()),
                ]);
                let checks: Vec<bool> = [u_ok, e_ok].into_iter().flatten().collect();
                let note = if s.converged { "" } else { "basis cap reached" };
                r.push(cells, &checks, note);
            }
            Err(e) => r.push_error(lead, &e),
        }
    }
    r
}

/// Indices (0-based) of the orders giving the best lower and upper bound:
/// both bounds increase with the trial energy, so the largest E_p gives the
/// largest lower bound and the smallest E_p the smallest upper bound.
fn optimal_orders(b: &BoundReport) -> (usize, usize) {
    let e: Vec<f64> = b.per_order.iter().map(|o| o.energy).collect();
    let lo = (0..e.len()).max_by(|&i, &j| e[i].total_cmp(&e[j])).unwrap_or(0);
    let hi = (0..e.len()).min_by(|&i, &j| e[i].total_cmp(&e[j])).unwrap_or(0);
    (lo, hi)
}

fn table2(config: &RunConfig) -> Report {
    let mut r = Report::new(
        config,
        &[
            "lambda",
            "p",
            "energy",
            "norm",
            "lower",
            "upper",
            "lower_ref",
            "upper_ref",
            "lower_dev",
            "upper_dev",
            "lower_match",
            "upper_match",
            "optimal_lower",
            "optimal_upper",
            "optimal_valid",
        ],
    );
    let a = config.a_value().unwrap_or(12.0);
    let refs = bound_rows();
    for &lambda in &config.lambdas {
        let reference = (config.alpha == 4.0 && a == 12.0)
            .then(|| refs.iter().find(|x| same_lambda(x.lambda, lambda)))
            .flatten();
        let report = make_params(a, config.alpha, lambda).and_then(|p| BoundReport::compute(&p));
        let b = match report {
            Ok(b) => b,
            Err(e) => {
                r.push_error(vec![lambda.into()], &e);
                continue;
            }
        };
        let (lo, hi) = optimal_orders(&b);
        for (k, o) in b.per_order.iter().enumerate() {
            let pair = reference.map(|x| &x.pairs[k]);
            let (l_ref, l_dev, l_ok) = printed_cells(pair.map(|p| &p.0), o.lower);
            let (u_ref, u_dev, u_ok) = printed_cells(pair.map(|p| &p.1), o.upper);
            let marks = (b.optimal_valid && k == lo, b.optimal_valid && k == hi);
            let mut checks: Vec<bool> = [l_ok, u_ok].into_iter().flatten().collect();
            if let Some(x) = reference {
                checks.push(marks == (x.optimal.0 == o.p, x.optimal.1 == o.p));
            }
            r.push(
                vec![
                    lambda.into(),
                    o.p.into(),
                    o.energy.into(),
                    o.norm.into(),
                    o.lower.into(),
                    o.upper.into(),
                    l_ref,
                    u_ref,
                    l_dev,
                    u_dev,
                    l_ok.map_or(Cell::Empty, Cell::Bool),
                    u_ok.map_or(Cell::Empty, Cell::Bool),
                    marks.0.into(),
                    marks.1.into(),
                    b.optimal_valid.into(),
                ],
                &checks,
                "",
            );
        }
    }
    r
}

fn require_a(config: &RunConfig) -> f64 {
    config.a_value().unwrap_or(12.0)
}

fn bounds(config: &RunConfig) -> Report {
    let mut r = Report::new(
        config,
        &[
            "lambda",
            "p",
            "energy",
            "norm",
            "lower",
            "upper",
            "variational_upper",
            "optimal_lower",
            "optimal_upper",
        ],
    );
    let a = require_a(config);
    for &lambda in &config.lambdas {
        let report = make_params(a, config.alpha, lambda).and_then(|p| BoundReport::compute(&p));
        let b = match report {
            Ok(b) => b,
            Err(e) => {
                r.push_error(vec![lambda.into()], &e);
                continue;
            }
        };
        let (lo, hi) = optimal_orders(&b);
        for (k, o) in b.per_order.iter().take(config.order as usize).enumerate() {
            r.push(
                vec![
                    lambda.into(),
                    o.p.into(),
                    o.energy.into(),
                    o.norm.into(),
                    o.lower.into(),
                    o.upper.into(),
                    b.variational_upper.into(),
                    (b.optimal_valid && k == lo).into(),
                    (b.optimal_valid && k == hi).into(),
                ],
                &[o.lower <= o.energy && o.energy <= o.upper],
                "",
            );
        }
    }
    r
}

fn solve(config: &RunConfig) -> Report {
    let mut r = Report::new(
        config,
        &[
            "lambda",
            "A",
            "alpha",
            "ground",
            "extrapolated",
            "basis_size",
            "converged",
            "delta",
            "exact",
            "exact_dev",
        ],
    );
    let a = require_a(config);
    let solver = config.solver(1e-10);
    for &lambda in &config.lambdas {
        let lead = vec![lambda.into(), a.into(), config.alpha.into()];
        match make_params(a, config.alpha, lambda).and_then(|p| ground_state_with(&p, &solver)) {
            Ok(s) => {
                let exact = (config.alpha == 2.0).then(|| 2.0 + (1.0 + 4.0 * (a + lambda)).sqrt());
                let dev = exact.map(|x| s.ground() - x);
                let mut checks = vec![s.converged];
                if let Some(d) = dev {
                    checks.push(d.abs() <= solver.tol);
                }
                let mut cells = lead;
                cells.extend([
                    s.ground().into(),
                    s.extrapolated.into(),
                    s.basis_size.into(),
                    s.converged.into(),
                    s.delta_last_refinement.into(),
                    exact.into(),
                    dev.into(),
                ]);
                r.push(cells, &checks, if s.converged { "" } else { "basis cap reached" });
            }
            Err(e) => r.push_error(lead, &e),
        }
    }
    r
}

fn coeffs(config: &RunConfig) -> Result<Report> {
    let mut r = Report::new(
        config,
        &[
            "quantity", "alpha", "gamma", "closed", "series", "terms", "tail", "agrees",
        ],
    );
    let a = require_a(config);
    let alpha = config.alpha;
    let params: OscillatorParams = make_params(a, alpha, 0.0)?;
    let g = params.gamma();
    let closed_alpha = ClosedAlpha::from_alpha(alpha).ok();
    let n = COEFF_SERIES_TERMS;
    let lead = |name: &str| -> Vec<Cell> { vec![name.into(), alpha.into(), g.into()] };

    let push_check =
        |r: &mut Report, name: &str, closed: Result<f64>, series: Result<(f64, f64, usize)>| match (closed, series) {
            (Ok(c), Ok((s, tail, terms))) => {
                let check = SeriesCheck::new(c, s, terms, tail);
                let mut cells = lead(name);
                cells.extend([
                    c.into(),
                    s.into(),
                    terms.into(),
                    check.tail_estimate.into(),
                    check.agrees().into(),
                ]);
                r.push(cells, &[check.agrees()], "");
            }
            (Err(e), _) | (_, Err(e)) => match e {
                Error::Domain { .. } => r.push(lead(name), &[], &format!("skipped: {e}")),
                e => r.push_error(lead(name), &e),
            },
        };

    let e1 = epsilon1(alpha, g);
    let mut cells = lead("eps1");
    cells.push(e1.clone().ok().into());
    match &e1 {
        Ok(_) => r.push(cells, &[], ""),
        Err(e) => r.push_error(lead("eps1"), e),
    }

    let eps2 = match closed_alpha {
        Some(ca) => epsilon2_closed(ca, g),
        None => epsilon2_hypergeom(alpha, g),
    };
    let s2 = epsilon2_series(alpha, g, n).map(|s| (s.value, s.tail_estimate, s.terms));
    push_check(&mut r, "eps2", eps2, s2);

    if let Some(ca) = closed_alpha {
        let hyper = epsilon2_hypergeom(alpha, g);
        let closed = epsilon2_closed(ca, g);
        match (closed, hyper) {
            (Ok(c), Ok(h)) => {
                let check = SeriesCheck::new(c, h, 0, 0.0);
                let mut cells = lead("eps2_hypergeometric");
                cells.extend([c.into(), h.into(), Cell::Empty, Cell::Empty, check.agrees().into()]);
                r.push(cells, &[check.agrees()], "");
            }
            (Err(e), _) | (_, Err(e)) => r.push(lead("eps2_hypergeometric"), &[], &format!("skipped: {e}")),
        }
    }
    if closed_alpha == Some(ClosedAlpha::Six) {
        if let (Ok(alt), Ok(s)) = (
            epsilon2_alpha6_with_cubic(g, &ALPHA6_CUBIC_ALTERNATIVE),
            epsilon2_series(alpha, g, n),
        ) {
            let check = SeriesCheck::new(alt, s.value, s.terms, s.tail_estimate);
            let mut cells = lead("eps2_alternative_cubic");
            cells.extend([
                alt.into(),
                s.value.into(),
                s.terms.into(),
                check.tail_estimate.into(),
                check.agrees().into(),
            ]);
            r.push(cells, &[], "informational: competing transcription of the cubic");
        }
    }

    match closed_alpha {
        Some(ca) => {
            let s3 = epsilon3_series(alpha, g, n).map(|s| (s.value, s.tail_estimate, s.terms));
            push_check(&mut r, "eps3", epsilon3_closed(ca, g), s3);
        }
        None => r.push(lead("eps3"), &[], "skipped: closed form only for alpha = 2, 4, 6"),
    }

    let sn = phi1_norm_sq_series(alpha, g, n).map(|s| (s.value, s.tail_estimate, s.terms));
    push_check(&mut r, "phi1_norm_sq", phi1_norm_sq(alpha, g), sn);
    Ok(r)
}

fn sums(config: &RunConfig) -> Report {
    let mut r = Report::new(
        config,
        &[
            "identity",
            "parameter",
            "closed",
            "truncated",
            "terms",
            "tail",
            "deviation",
            "agrees",
        ],
    );
    let fixed_gamma = config.a_value().map(gamma_from_a);

    let push = |r: &mut Report, name: &str, param: f64, check: Result<SeriesCheck>| {
        let lead = vec![name.into(), param.into()];
        match check {
            Ok(c) => {
                let mut cells = lead;
                cells.extend([
                    c.closed_value.into(),
                    c.truncated_value.into(),
                    if c.terms_used > 0 {
                        c.terms_used.into()
                    } else {
                        Cell::Empty
                    },
                    c.tail_estimate.into(),
                    c.deviation().into(),
                    c.agrees().into(),
                ]);
                r.push(cells, &[c.agrees()], "");
            }
            Err(e @ Error::Domain { .. }) => r.push(lead, &[], &format!("skipped: {e}")),
            Err(e) => r.push_error(lead, &e),
        }
    };

    for (alpha, grid) in LEMMA_GAMMAS {
        let name = match alpha {
            ClosedAlpha::Two => "lemma3",
            ClosedAlpha::Four => "lemma4",
            ClosedAlpha::Six => "lemma5",
        };
        let gammas: Vec<f64> = fixed_gamma.map_or(grid.to_vec(), |g| vec![g]);
        for &g in &gammas {
            let lemma_domain = lemma_closed(alpha, g).map(|_| ());
            let check = lemma_domain.and_then(|_| double_sum_truncated(alpha, g, DOUBLE_SUM_TERMS));
            push(&mut r, &format!("{name}_double_sum"), g, check);
        }
        for &g in &gammas {
            let check = lemma_closed(alpha, g).and_then(|c| {
                let q = lemma_quadrature(alpha, g)?;
                Ok(SeriesCheck::with_floor(c, q, 0, QUADRATURE_REL_TOL * c.abs(), 0.0))
            });
            push(&mut r, &format!("{name}_quadrature"), g, check);
        }
    }

    for alpha in RESUMMATION_ALPHAS {
        push(&mut r, "resummation", alpha, resummation_check(alpha));
    }
    let limit = resummation_limit().map(|v| SeriesCheck::with_floor(PI * PI / 16.0 - 0.25, v, 0, LIMIT_TOL, 0.0));
    push(&mut r, "resummation_limit", 2.0, limit);

    let gammas: Vec<f64> = fixed_gamma.map_or(TRIGAMMA_GAMMAS.to_vec(), |g| vec![g]);
    for &g in &gammas {
        push(&mut r, "trigamma_series", g, trigamma_identity_check(g));
    }
    for &g in &gammas {
        let check = trigamma_identity_check(g).and_then(|c| {
            let h = trigamma_identity_hypergeometric(g)?;
            Ok(SeriesCheck::with_floor(
                c.closed_value,
                h,
                0,
                1e-10 * c.closed_value.abs(),
                0.0,
            ))
        });
        push(&mut r, "trigamma_hypergeometric", g, check);
    }
    r
}

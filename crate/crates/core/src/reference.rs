//! Published reference values, kept with exactly the digits that were
//! printed, and the rule for deciding whether a computed value reproduces
//! them.

use std::str::FromStr;

use serde::Serialize;

use crate::error::{domain, Error, Result};

const TABLE1: &str = include_str!("../data/table1.csv");
const TABLE2: &str = include_str!("../data/table2.csv");

/// A decimal as printed: its text, value and number of decimals.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Printed {
    pub text: String,
    pub value: f64,
    pub decimals: u32,
}

impl FromStr for Printed {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let text = s.trim().to_string();
        let value: f64 = text
            .parse()
            .map_err(|_| domain("Printed", format!("not a decimal: {text:?}")))?;
        let decimals = text.split_once('.').map_or(0, |(_, f)| f.len() as u32);
        Ok(Self { text, value, decimals })
    }
}

impl Printed {
    /// Units of the last printed digit, as an integer.
    fn units(&self) -> i128 {
        let digits: String = self.text.chars().filter(|c| c.is_ascii_digit()).collect();
        let n: i128 = digits.parse().unwrap_or(0);
        if self.text.starts_with('-') {
            -n
        } else {
            n
        }
    }

    /// One unit in the last printed place.
    pub fn ulp(&self) -> f64 {
        10f64.powi(-(self.decimals as i32))
    }

    /// True when `v` rounded or truncated to the printed number of decimals
    /// gives the printed digits. Tables of this kind mix both conventions.
    pub fn matches(&self, v: f64) -> bool {
        if !v.is_finite() {
            return false;
        }
        let scaled = v * 10f64.powi(self.decimals as i32);
        let target = self.units();
        scaled.round() as i128 == target || scaled.trunc() as i128 == target
    }

    pub fn deviation(&self, v: f64) -> f64 {
        v - self.value
    }
}

/// One row of the upper-bound comparison for x^(−4).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UpperBoundRow {
    pub lambda: f64,
    pub l: u32,
    /// Earlier variational bound, carried as reference data only.
    pub earlier_upper: Printed,
    pub upper: Printed,
    pub exact: Printed,
}

/// Bounds at one λ for A = 12, α = 4, orders 1 to 3.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundRow {
    pub lambda: f64,
    /// (lower, upper) for p = 1, 2, 3.
    pub pairs: [(Printed, Printed); 3],
    /// Orders whose lower and upper entries are marked optimal.
    pub optimal: (u32, u32),
}

fn records(csv: &'static str) -> impl Iterator<Item = Vec<&'static str>> {
    csv.lines()
        .skip(1)
        .filter(|l| !l.trim().is_empty())
        .map(|l| l.split(',').map(str::trim).collect())
}

fn num<T: FromStr>(s: &str) -> T {
    s.parse().unwrap_or_else(|_| panic!("malformed fixture field {s:?}"))
}

fn order_tag(s: &str) -> u32 {
    num(s.trim_start_matches('p'))
}

/// The thirteen (λ, l) rows of the upper-bound comparison.
pub fn upper_bound_rows() -> Vec<UpperBoundRow> {
    records(TABLE1)
        .map(|r| UpperBoundRow {
            lambda: num(r[0]),
            l: num(r[1]),
            earlier_upper: num(r[2]),
            upper: num(r[3]),
            exact: num(r[4]),
        })
        .collect()
}

/// The four λ rows of the bound table.
pub fn bound_rows() -> Vec<BoundRow> {
    records(TABLE2)
        .map(|r| BoundRow {
            lambda: num(r[0]),
            pairs: [(num(r[1]), num(r[2])), (num(r[3]), num(r[4])), (num(r[5]), num(r[6]))],
            optimal: (order_tag(r[7]), order_tag(r[8])),
        })
        .collect()
}

pub(crate) fn same_lambda(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * a.abs().max(b.abs())
}

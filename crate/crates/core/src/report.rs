//! Presentation helpers shared by the report types: exact rationals as
//! `p/q` strings, fixed-precision decimals, and flat tables rendered as CSV
//! or JSON.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Signed;
use serde_json::{Map, Value};

/// `p/q` in lowest terms, or `p` when the denominator is 1.
pub fn rational_string(r: &BigRational) -> String {
    if r.denom() == &BigInt::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Decimal expansion truncated toward zero after `digits` fractional places.
pub fn decimal(r: &BigRational, digits: usize) -> String {
    let sign = if r.is_negative() { "-" } else { "" };
    let abs = r.abs();
    let (whole, rem) = abs.numer().div_rem(abs.denom());
    if digits == 0 {
        return format!("{sign}{whole}");
    }
    let scaled = rem * BigInt::from(10).pow(digits as u32) / abs.denom();
    let frac = scaled.to_string();
    format!("{sign}{whole}.{}{frac}", "0".repeat(digits - frac.len()))
}

/// A header row and string cells, the common shape of every report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Table { columns: columns.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    /// Array of objects keyed by column name; every cell is a string.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|row| {
                    let mut obj = Map::new();
                    for (c, v) in self.columns.iter().zip(row) {
                        obj.insert(c.clone(), Value::String(v.clone()));
                    }
                    Value::Object(obj)
                })
                .collect(),
        )
    }
}

pub(crate) fn opt_rational(r: &Option<BigRational>) -> String {
    r.as_ref().map_or_else(|| "undefined".to_string(), rational_string)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn rational_rendering() {
        assert_eq!(rational_string(&q(6, 4)), "3/2");
        assert_eq!(rational_string(&q(-4, 2)), "-2");
        assert_eq!(decimal(&q(1, 3), 4), "0.3333");
        assert_eq!(decimal(&q(-7, 2), 2), "-3.50");
        assert_eq!(decimal(&q(1, 100), 3), "0.010");
        assert_eq!(decimal(&q(5, 1), 0), "5");
    }

    #[test]
    fn table_rendering() {
        let mut t = Table::new(["n", "value"]);
        t.push(vec!["1".into(), "2".into()]);
        assert_eq!(t.to_csv(), "n,value\n1,2\n");
        assert_eq!(t.to_json(), serde_json::json!([{"n": "1", "value": "2"}]));
    }
}

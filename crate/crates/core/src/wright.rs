//! Wright expansion polynomials and exact remainder tables.
//!
//! Terms have the shape `poly_s(n) · 2^{C(n-s,2)} / (n-s)!`; `φ_s` drives the
//! expansion of all graphs and `ω_s` that of the connected ones.

use std::fmt;
use std::ops::RangeInclusive;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::counting::{CountSequence, SignedSequence};
use crate::error::{Error, Result};
use crate::numtheory::factorial;
use crate::report::{rational_string, Table};

/// Largest `s` for which `φ_s` is available.
pub const MAX_PHI: usize = 4;

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Polynomial in `n` with exact rational coefficients, ascending degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPolynomial {
    coefficients: Vec<BigRational>,
}

impl RationalPolynomial {
    pub fn new(mut coefficients: Vec<BigRational>) -> Self {
        while coefficients.last().is_some_and(Zero::is_zero) {
            coefficients.pop();
        }
        RationalPolynomial { coefficients }
    }

    /// `(Σ ints[k] n^k) / denom`.
    pub fn from_ints(ints: &[i64], denom: i64) -> Self {
        Self::new(ints.iter().map(|&c| ratio(c, denom)).collect())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    pub fn zero() -> Self {
        Self::new(Vec::new())
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coefficients
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coefficients.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_int(&self, x: i64) -> BigRational {
        self.eval(&BigRational::from_integer(BigInt::from(x)))
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coefficients.len().max(other.coefficients.len());
        let zero = BigRational::zero();
        Self::new(
            (0..len)
                .map(|k| {
                    self.coefficients.get(k).unwrap_or(&zero) + other.coefficients.get(k).unwrap_or(&zero)
                })
                .collect(),
        )
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coefficients.iter().map(|a| a * c).collect())
    }

    /// The polynomial `n ↦ p(n - r)`.
    pub fn shift(&self, r: i64) -> Self {
        // Horner in the linear polynomial (n - r)
        let lin = Self::from_ints(&[-r, 1], 1);
        let mut acc = Self::zero();
        for c in self.coefficients.iter().rev() {
            acc = acc.mul(&lin).add(&Self::constant(c.clone()));
        }
        acc
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigRational::zero(); self.coefficients.len() + other.coefficients.len() - 1];
        for (i, a) in self.coefficients.iter().enumerate() {
            for (j, b) in other.coefficients.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }
}

impl fmt::Display for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coefficients.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            let var = match k {
                0 => String::new(),
                1 => "n".to_string(),
                _ => format!("n^{k}"),
            };
            if mag.is_one() && k > 0 {
                write!(f, "{var}")?;
            } else if k > 0 {
                write!(f, "{}*{var}", rational_string(&mag))?;
            } else {
                write!(f, "{}", rational_string(&mag))?;
            }
        }
        Ok(())
    }
}

/// Coefficient polynomials of the expansion of all graphs, `0 <= s <= 4`;
/// `φ_0 = 1`.
pub fn phi(s: usize) -> Result<RationalPolynomial> {
    Ok(match s {
        0 => RationalPolynomial::one(),
        1 => RationalPolynomial::from_ints(&[-1, 1], 1),
        2 => RationalPolynomial::from_ints(&[14, -13, 3], 3),
        3 => RationalPolynomial::from_ints(&[-225, 177, -46, 4], 3),
        4 => RationalPolynomial::from_ints(&[49828, -37737, 10580, -1305, 60], 45).scale(&ratio(2, 1)),
        _ => return Err(Error::capacity("phi index", s, MAX_PHI)),
    })
}

/// `ω_s(n) = φ_s(n) + B(s) + Σ_{r=1}^{s-1} B(r) φ_{s-r}(n-r)`.
pub fn omega(s: usize, b: &SignedSequence) -> Result<RationalPolynomial> {
    if s == 0 {
        return Ok(RationalPolynomial::one());
    }
    if s > MAX_PHI {
        return Err(Error::capacity("omega index", s, MAX_PHI));
    }
    let big = |r: usize| -> Result<BigRational> { Ok(BigRational::from_integer(b.get(r)?.clone())) };
    let mut out = phi(s)?.add(&RationalPolynomial::constant(big(s)?));
    for r in 1..s {
        out = out.add(&phi(s - r)?.shift(r as i64).scale(&big(r)?));
    }
    Ok(out)
}

/// `ω_0..ω_{count-1}` for a B-sequence.
pub fn omega_list(count: usize, b: &SignedSequence) -> Result<Vec<RationalPolynomial>> {
    (0..count).map(|s| omega(s, b)).collect()
}

fn power_term(n: usize, s: usize) -> BigRational {
    let m = n - s;
    let num = BigUint::one() << (m * m.saturating_sub(1) / 2);
    BigRational::new(num.into(), factorial(m).into())
}

/// `scale · Σ_{s=0}^{R-1} polys[s](n) · 2^{C(n-s,2)} / (n-s)!` for `n > 2R`.
pub fn wright_partial_sum(
    n: usize,
    terms: usize,
    polys: &[RationalPolynomial],
    scale: &BigRational,
) -> Result<BigRational> {
    if terms == 0 {
        return Err(Error::domain("at least one expansion term is required"));
    }
    if n <= 2 * terms {
        return Err(Error::domain(format!("expansion needs n > 2R, got n={n}, R={terms}")));
    }
    if polys.len() < terms {
        return Err(Error::domain(format!("{terms} terms requested, {} polynomials given", polys.len())));
    }
    if polys[0] != RationalPolynomial::one() {
        return Err(Error::domain("the leading polynomial must be 1"));
    }
    let mut total = BigRational::zero();
    for (s, poly) in polys.iter().take(terms).enumerate() {
        total += poly.eval_int(n as i64) * power_term(n, s);
    }
    Ok(total * scale)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpansionRow {
    pub n: usize,
    pub terms: usize,
    pub truncated: BigRational,
    pub truth: BigUint,
    pub remainder: BigRational,
    /// `2^{C(n-R,2)} / (n-2R)!`
    pub bound: BigRational,
    pub ratio: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpansionReport {
    pub rows: Vec<ExpansionRow>,
}

impl ExpansionReport {
    pub fn max_ratio(&self) -> Option<&BigRational> {
        self.rows.iter().map(|r| &r.ratio).max()
    }

    pub fn table(&self, digits: Option<usize>) -> Table {
        let render = |r: &BigRational| match digits {
            Some(d) => crate::report::decimal(r, d),
            None => rational_string(r),
        };
        let mut t = Table::new(["n", "R", "truncated", "truth", "remainder", "bound", "ratio"]);
        for row in &self.rows {
            t.push(vec![
                row.n.to_string(),
                row.terms.to_string(),
                render(&row.truncated),
                row.truth.to_string(),
                render(&row.remainder),
                render(&row.bound),
                render(&row.ratio),
            ]);
        }
        t
    }

    pub fn to_json(&self) -> Value {
        json!(self.table(None).to_json())
    }
}

/// Exact remainder of the `R`-term expansion against `truth` over `n_range`,
/// relative to `2^{C(n-R,2)} / (n-2R)!`.
pub fn expansion_error_report(
    truth: &CountSequence,
    polys: &[RationalPolynomial],
    terms: usize,
    n_range: RangeInclusive<usize>,
    scale: &BigRational,
) -> Result<ExpansionReport> {
    let mut rows = Vec::new();
    for n in n_range {
        let truncated = wright_partial_sum(n, terms, polys, scale)?;
        let exact = truth.get(n)?.clone();
        let remainder = (BigRational::from_integer(exact.clone().into()) - &truncated).abs();
        let m = n - terms;
        let bound = BigRational::new(
            (BigUint::one() << (m * (m - 1) / 2)).into(),
            factorial(n - 2 * terms).into(),
        );
        let ratio = &remainder / &bound;
        rows.push(ExpansionRow { n, terms, truncated, truth: exact, remainder, bound, ratio });
    }
    Ok(ExpansionReport { rows })
}

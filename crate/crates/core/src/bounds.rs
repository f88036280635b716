//! Exact finite-n evaluation of the sandwich bounds, the divisor-cut bound,
//! the prime-gap bound, the leading-term identity and the axiom ratios.

use std::ops::RangeInclusive;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;

use crate::counting::CountSequence;
use crate::error::{Error, Result};
use crate::numtheory::{ceil_sqrt, pairs};
use crate::report::{opt_rational, Table};
use crate::semiring::SemiringInstance;

fn int(v: &BigUint) -> BigInt {
    BigInt::from(v.clone())
}

/// One row of a bound check. Two-sided chains fill `lower`; one-sided
/// checks `middle <= upper` leave it empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundRow {
    pub n: usize,
    pub lower: Option<BigInt>,
    pub middle: BigInt,
    pub upper: BigInt,
    /// Middle term with the diagonal correction `C(m, 2)` in place of `C(m + 1, 2)`.
    pub printed_middle: Option<BigInt>,
    pub holds: bool,
}

impl BoundRow {
    fn new(n: usize, lower: Option<BigInt>, middle: BigInt, upper: BigInt) -> Self {
        let holds = lower.as_ref().is_none_or(|l| l <= &middle) && middle <= upper;
        BoundRow { n, lower, middle, upper, printed_middle: None, holds }
    }

    /// Whether the chain holds with the printed diagonal term.
    pub fn printed_holds(&self) -> Option<bool> {
        let m = self.printed_middle.as_ref()?;
        Some(self.lower.as_ref().is_none_or(|l| l <= m) && m <= &self.upper)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundCheck {
    /// Sandwich bound on the disconnected members.
    Additive,
    /// Sandwich bound on the connected composites.
    Multiplicative,
    /// Divisor-cut bound with parameter `D`.
    DivisorCut,
    /// Upper bound on the prime gap `S^+(n) - S^□(n)`.
    PrimeGap,
    /// Leading term `S^□(p) S^+(n)` of the gap at degree `pn`.
    LeadingTerm,
    /// The six ratio diagnostics.
    Axioms,
}

impl BoundCheck {
    /// Accepts the CLI names `eq1`, `eq2`, `lem2`, `gap`, `leading`, `axioms`.
    pub fn parse(name: &str) -> Result<Self> {
        Ok(match name {
            "eq1" | "additive" => BoundCheck::Additive,
            "eq2" | "multiplicative" => BoundCheck::Multiplicative,
            "lem2" | "divisor-cut" => BoundCheck::DivisorCut,
            "gap" => BoundCheck::PrimeGap,
            "leading" => BoundCheck::LeadingTerm,
            "axioms" => BoundCheck::Axioms,
            other => return Err(Error::parse(format!("unknown bound check {other:?}"))),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub rows: Vec<BoundRow>,
}

impl BoundReport {
    pub fn all_hold(&self) -> bool {
        self.rows.iter().all(|r| r.holds)
    }

    pub fn table(&self) -> Table {
        let mut t = Table::new(["n", "lower", "middle", "upper", "printed_middle", "holds"]);
        let opt = |v: &Option<BigInt>| v.as_ref().map_or_else(String::new, ToString::to_string);
        for r in &self.rows {
            t.push(vec![
                r.n.to_string(),
                opt(&r.lower),
                r.middle.to_string(),
                r.upper.to_string(),
                opt(&r.printed_middle),
                r.holds.to_string(),
            ]);
        }
        t
    }
}

/// `C(m + 1, 2)` unordered pairs with repetition, and the printed `C(m, 2)`.
fn diagonal(m: &BigUint) -> (BigUint, BigUint) {
    (pairs(&(m + 1u32)), pairs(m))
}

/// `Σ_{r=1}^{⌈n/2⌉-1} S^+(r)S^+(n-r) <= S(n) - S^+(n) - T(n) <= Σ S^+(r)S(n-r)`
/// with `T(n) = C(S^+(n/2) + 1, 2)`.
pub fn sandwich_additive(inst: &SemiringInstance, n: usize) -> Result<BoundRow> {
    let (s, c) = (&inst.totals, &inst.connected);
    let mut lower = BigInt::zero();
    let mut upper = BigInt::zero();
    for r in 1..n.div_ceil(2) {
        lower += int(c.get(r)?) * int(c.get(n - r)?);
        upper += int(c.get(r)?) * int(s.get(n - r)?);
    }
    let (t, printed) = diagonal(&c.at_quotient(n, 2)?);
    let base = int(s.get(n)?) - int(c.get(n)?);
    let mut row = BoundRow::new(n, Some(lower), &base - int(&t), upper);
    row.printed_middle = Some(base - int(&printed));
    Ok(row)
}

/// `Σ_{r=2}^{⌈√n⌉-1} S^□(r)S^□(n/r) <= S^+(n) - S^□(n) - T^□(n) <= Σ S^□(r)S^+(n/r)`
/// with `T^□(n) = C(S^□(√n) + 1, 2)`.
pub fn sandwich_multiplicative(inst: &SemiringInstance, n: usize) -> Result<BoundRow> {
    let (c, p) = (&inst.connected, &inst.primes);
    p.get(n)?;
    let mut lower = BigInt::zero();
    let mut upper = BigInt::zero();
    for r in 2..ceil_sqrt(n) {
        lower += int(p.get(r)?) * int(&p.at_quotient(n, r)?);
        upper += int(p.get(r)?) * int(&c.at_quotient(n, r)?);
    }
    let (t, printed) = diagonal(&p.at_sqrt(n)?);
    let base = int(c.get(n)?) - int(p.get(n)?);
    let mut row = BoundRow::new(n, Some(lower), &base - int(&t), upper);
    row.printed_middle = Some(base - int(&printed));
    Ok(row)
}

/// `0 <= S^+(n) - S^□(n) - Σ_{r=2}^{D-1} S^□(r)S^+(n/r) <= S(⌊n/D⌋+D) - S^+(⌊n/D⌋+D)`.
pub fn lemma2_bound(inst: &SemiringInstance, n: usize, d: usize) -> Result<BoundRow> {
    if d <= 2 {
        return Err(Error::domain(format!("the cut parameter D must exceed 2, got {d}")));
    }
    let (s, c, p) = (&inst.totals, &inst.connected, &inst.primes);
    let mut middle = int(c.get(n)?) - int(p.get(n)?);
    for r in 2..d {
        if r <= n {
            middle -= int(p.get(r)?) * int(&c.at_quotient(n, r)?);
        }
    }
    let m = n / d + d;
    let upper = int(s.get(m)?) - int(c.get(m)?);
    Ok(BoundRow::new(n, Some(BigInt::zero()), middle, upper))
}

fn smallest_prime(inst: &SemiringInstance) -> Result<usize> {
    inst.smallest_prime_degree()
        .ok_or_else(|| Error::domain("no multiplicative prime within the horizon"))
}

/// `S^+(n) - S^□(n) <= S^□(p)·S(⌊n/p⌋) + S(⌊n/(p+1)⌋ + p + 1)`.
pub fn prime_gap_bound(inst: &SemiringInstance, n: usize) -> Result<BoundRow> {
    let p = smallest_prime(inst)?;
    let (s, c, q) = (&inst.totals, &inst.connected, &inst.primes);
    let lhs = int(c.get(n)?) - int(q.get(n)?);
    let rhs = int(q.get(p)?) * int(s.get(n / p)?) + int(s.get(n / (p + 1) + p + 1)?);
    Ok(BoundRow::new(n, None, lhs, rhs))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeadingTerm {
    pub n: usize,
    /// `S^+(pn) - S^□(pn)`
    pub gap: BigInt,
    /// `S^□(p)·S^+(n)`
    pub leading: BigInt,
    pub residual: BigInt,
}

pub fn leading_term_check(inst: &SemiringInstance, n: usize) -> Result<LeadingTerm> {
    let p = smallest_prime(inst)?;
    let (c, q) = (&inst.connected, &inst.primes);
    let gap = int(c.get(p * n)?) - int(q.get(p * n)?);
    let leading = int(q.get(p)?) * int(c.get(n)?);
    let residual = &gap - &leading;
    Ok(LeadingTerm { n, gap, leading, residual })
}

/// Exact ratios at one degree; `None` where the denominator vanishes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomRow {
    pub n: usize,
    /// `S^+(n) / S(n)`
    pub connected_share: Option<BigRational>,
    /// `S^□(n) / S^+(n)`
    pub prime_share: Option<BigRational>,
    /// `S^+(n-1) / S^+(n)`
    pub connected_step: Option<BigRational>,
    /// `S^□(⌊n/2⌋) / S^□(n)`
    pub prime_half_step: Option<BigRational>,
    /// `(S(n) - S^+(n)) / S^+(n-1)`
    pub disconnected_excess: Option<BigRational>,
    /// `(S^+(n) - S^□(n)) / S^□(⌊n/2⌋)`
    pub composite_excess: Option<BigRational>,
}

fn ratio(num: BigInt, den: &BigUint) -> Option<BigRational> {
    (!den.is_zero()).then(|| BigRational::new(num, int(den)))
}

pub fn axiom_diagnostics(inst: &SemiringInstance, range: RangeInclusive<usize>) -> Result<Vec<AxiomRow>> {
    let (s, c, p): (&CountSequence, &CountSequence, &CountSequence) =
        (&inst.totals, &inst.connected, &inst.primes);
    let mut rows = Vec::new();
    for n in range {
        if n == 0 {
            return Err(Error::domain("axiom diagnostics start at degree 1"));
        }
        let (sn, cn, pn) = (s.get(n)?, c.get(n)?, p.get(n)?);
        let (c_prev, p_half) = (c.get(n - 1)?, p.get(n / 2)?);
        rows.push(AxiomRow {
            n,
            connected_share: ratio(int(cn), sn),
            prime_share: ratio(int(pn), cn),
            connected_step: ratio(int(c_prev), cn),
            prime_half_step: ratio(int(p_half), pn),
            disconnected_excess: ratio(int(sn) - int(cn), c_prev),
            composite_excess: ratio(int(cn) - int(pn), p_half),
        });
    }
    Ok(rows)
}

pub fn axiom_table(rows: &[AxiomRow]) -> Table {
    let mut t = Table::new([
        "n",
        "connected_share",
        "prime_share",
        "connected_step",
        "prime_half_step",
        "disconnected_excess",
        "composite_excess",
    ]);
    for r in rows {
        t.push(vec![
            r.n.to_string(),
            opt_rational(&r.connected_share),
            opt_rational(&r.prime_share),
            opt_rational(&r.connected_step),
            opt_rational(&r.prime_half_step),
            opt_rational(&r.disconnected_excess),
            opt_rational(&r.composite_excess),
        ]);
    }
    t
}

pub fn leading_table(rows: &[LeadingTerm]) -> Table {
    let mut t = Table::new(["n", "gap", "leading", "residual"]);
    for r in rows {
        t.push(vec![r.n.to_string(), r.gap.to_string(), r.leading.to_string(), r.residual.to_string()]);
    }
    t
}

/// Rows of a two-sided or one-sided check over a range of degrees.
pub fn bound_report(
    inst: &SemiringInstance,
    check: BoundCheck,
    range: RangeInclusive<usize>,
    d: usize,
) -> Result<BoundReport> {
    let rows = range
        .map(|n| match check {
            BoundCheck::Additive => sandwich_additive(inst, n),
            BoundCheck::Multiplicative => sandwich_multiplicative(inst, n),
            BoundCheck::DivisorCut => lemma2_bound(inst, n, d),
            BoundCheck::PrimeGap => prime_gap_bound(inst, n),
            BoundCheck::LeadingTerm | BoundCheck::Axioms => {
                Err(Error::domain("this check does not produce bound rows"))
            }
        })
        .collect::<Result<_>>()?;
    Ok(BoundReport { rows })
}

//! Arithmetic functions on connected graphs, evaluated through the unique
//! cartesian factorization, with exact population statistics.

use std::collections::BTreeSet;
use std::ops::RangeInclusive;
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::factorization::{composite_set_filtered, divisors, factorize, is_cartesian_prime, Factorization};
use crate::graph::{
    canonical_key, cartesian_product, enumerate_connected, is_connected, CanonicalKey, Graph,
    DEFAULT_ENUM_CAP,
};
use crate::report::{opt_rational, Table};
use crate::semiring::{Family, SemiringInstance};

static PRIME_SETS: [OnceLock<Vec<BTreeSet<CanonicalKey>>>; DEFAULT_ENUM_CAP + 1] =
    [const { OnceLock::new() }; DEFAULT_ENUM_CAP + 1];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ArithFunction {
    /// Number of divisors.
    D,
    /// Number of unitary (coprime) divisors.
    DStar,
    /// Product of the prime exponents.
    Beta,
    /// Sum of the orders of the divisors.
    SigmaStar,
    /// Connected members of the same degree sharing no prime factor.
    PhiStar,
}

impl ArithFunction {
    pub const ALL: [ArithFunction; 5] = [
        ArithFunction::D,
        ArithFunction::DStar,
        ArithFunction::Beta,
        ArithFunction::SigmaStar,
        ArithFunction::PhiStar,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ArithFunction::D => "d",
            ArithFunction::DStar => "dstar",
            ArithFunction::Beta => "beta",
            ArithFunction::SigmaStar => "sigmastar",
            ArithFunction::PhiStar => "phistar",
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|f| f.name() == name)
            .ok_or_else(|| Error::parse(format!("unknown function {name:?}")))
    }

    /// Evaluates at a connected graph; `phistar` counts within `inst`.
    pub fn eval(self, g: &Graph, inst: &SemiringInstance) -> Result<BigUint> {
        match self {
            ArithFunction::D => divisor_count(g),
            ArithFunction::DStar => unitary_divisor_count(g),
            ArithFunction::Beta => prime_divisor_beta(g),
            ArithFunction::SigmaStar => divisor_sum(g),
            ArithFunction::PhiStar => euler_phi_star(g, inst),
        }
    }
}

/// Prime factorization with `K_1` as the empty product.
fn factor(g: &Graph) -> Result<Factorization> {
    if g.order() == 1 {
        return Ok(Factorization { factors: Vec::new() });
    }
    factorize(g)
}

fn exponents(g: &Graph) -> Result<Vec<(Graph, usize)>> {
    Ok(factor(g)?.multiplicities())
}

pub fn divisor_count(g: &Graph) -> Result<BigUint> {
    Ok(BigUint::from(divisors(g)?.len()))
}

pub fn unitary_divisor_count(g: &Graph) -> Result<BigUint> {
    Ok(BigUint::one() << exponents(g)?.len())
}

pub fn prime_divisor_beta(g: &Graph) -> Result<BigUint> {
    Ok(exponents(g)?.iter().map(|(_, a)| BigUint::from(*a)).product())
}

pub fn divisor_sum(g: &Graph) -> Result<BigUint> {
    Ok(divisors(g)?.iter().map(|d| BigUint::from(d.order())).sum())
}

fn prime_keys(g: &Graph) -> Result<BTreeSet<CanonicalKey>> {
    factor(g)?.factors.iter().map(canonical_key).collect()
}

fn connected_prime_sets(n: usize) -> Result<&'static [BTreeSet<CanonicalKey>]> {
    let graphs = enumerate_connected(n)?;
    if let Some(sets) = PRIME_SETS[n].get() {
        return Ok(sets);
    }
    let sets = graphs.par_iter().map(prime_keys).collect::<Result<Vec<_>>>()?;
    Ok(PRIME_SETS[n].get_or_init(|| sets))
}

/// `φ_*` by direct comparison of prime factor sets over the connected
/// members of `inst` of the same order (order at most 8).
pub fn euler_phi_star_by_enumeration(g: &Graph, inst: &SemiringInstance) -> Result<BigUint> {
    let n = g.order();
    let mine = prime_keys(g)?;
    let graphs = enumerate_connected(n)?;
    let sets = connected_prime_sets(n)?;
    let mut count = 0usize;
    for (h, set) in graphs.iter().zip(sets) {
        if inst.family.is_member(h)? && set.is_disjoint(&mine) {
            count += 1;
        }
    }
    Ok(BigUint::from(count))
}

/// Connected members of degree `order(g)` sharing no prime factor with `g`.
///
/// For all graphs, unique factorization makes the members divisible by a
/// product `P` of distinct primes correspond to the connected graphs of
/// order `n / order(P)`, so inclusion–exclusion over the distinct prime
/// factors needs only `S^+`.
pub fn euler_phi_star(g: &Graph, inst: &SemiringInstance) -> Result<BigUint> {
    if inst.family != Family::AllGraphs {
        return euler_phi_star_by_enumeration(g, inst);
    }
    let n = g.order();
    let orders: Vec<usize> = exponents(g)?.iter().map(|(p, _)| p.order()).collect();
    let mut total = BigInt::zero();
    for subset in 0u32..(1 << orders.len()) {
        let mut m = 1;
        for (i, &o) in orders.iter().enumerate() {
            if subset >> i & 1 == 1 {
                m *= o;
            }
        }
        let term = BigInt::from(inst.connected.get(n / m)?.clone());
        if subset.count_ones() % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    Ok(total.to_biguint().expect("inclusion-exclusion count is nonnegative"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Population {
    /// Connected members.
    Additive,
    /// Multiplicative primes.
    Multiplicative,
}

impl Population {
    pub fn name(self) -> &'static str {
        match self {
            Population::Additive => "additive",
            Population::Multiplicative => "multiplicative",
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "add" | "additive" => Ok(Population::Additive),
            "mult" | "multiplicative" => Ok(Population::Multiplicative),
            other => Err(Error::parse(format!("unknown population {other:?}"))),
        }
    }
}

/// Members of `family` of degree `n <= 8` in the chosen population.
pub fn population(family: Family, n: usize, pop: Population) -> Result<Vec<Graph>> {
    let mut members = Vec::new();
    for g in enumerate_connected(n)? {
        if family.is_member(g)? {
            members.push(g.clone());
        }
    }
    match pop {
        Population::Additive => return Ok(members),
        // K_1 is the unit, not a prime
        Population::Multiplicative if n < 2 => return Ok(Vec::new()),
        Population::Multiplicative => {}
    }
    match family {
        Family::AllGraphs => {
            let mut primes = Vec::new();
            for g in members {
                if is_cartesian_prime(&g)? {
                    primes.push(g);
                }
            }
            Ok(primes)
        }
        Family::EvenEdge => {
            let composites = composite_set_filtered(n, |g| g.edge_count() % 2 == 0)?;
            Ok(members.into_iter().filter(|g| !composites.contains(&g.labeled_key())).collect())
        }
        Family::Hamming => Ok(vec![Graph::complete(n)?]),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionStats {
    pub n: usize,
    pub population: Population,
    pub count: usize,
    pub sum: BigUint,
    pub sum_of_squares: BigUint,
    /// `None` on an empty population.
    pub mean: Option<BigRational>,
    pub variance: Option<BigRational>,
    pub max: Option<BigUint>,
}

pub fn stats_of(
    f: ArithFunction,
    inst: &SemiringInstance,
    n: usize,
    pop: Population,
) -> Result<(FunctionStats, Vec<BigUint>)> {
    let members = population(inst.family, n, pop)?;
    let values = members.par_iter().map(|g| f.eval(g, inst)).collect::<Result<Vec<_>>>()?;
    let sum: BigUint = values.iter().sum();
    let sum_of_squares: BigUint = values.iter().map(|v| v * v).sum();
    let count = values.len();
    let (mean, variance) = if count == 0 {
        (None, None)
    } else {
        let c = BigInt::from(count);
        let mean = BigRational::new(BigInt::from(sum.clone()), c.clone());
        let second = BigRational::new(BigInt::from(sum_of_squares.clone()), c);
        let variance = second - &mean * &mean;
        (Some(mean), Some(variance))
    };
    let max = values.iter().max().cloned();
    Ok((FunctionStats { n, population: pop, count, sum, sum_of_squares, mean, variance, max }, values))
}

/// Exact sum, mean, population variance and maximum of `f` over one population.
pub fn stats(f: ArithFunction, inst: &SemiringInstance, n: usize, pop: Population) -> Result<FunctionStats> {
    Ok(stats_of(f, inst, n, pop)?.0)
}

pub fn stats_table(rows: &[FunctionStats]) -> Table {
    let mut t = Table::new(["n", "population", "count", "sum", "mean", "variance", "max"]);
    for r in rows {
        t.push(vec![
            r.n.to_string(),
            r.population.name().to_string(),
            r.count.to_string(),
            r.sum.to_string(),
            opt_rational(&r.mean),
            opt_rational(&r.variance),
            r.max.as_ref().map_or_else(String::new, ToString::to_string),
        ]);
    }
    t
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub left: Graph,
    pub right: Graph,
    /// `f(A □ B)`, `f(A)`, `f(B)`
    pub values: (BigUint, BigUint, BigUint),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubmultiplicativityReport {
    pub n_max: usize,
    pub pairs_checked: usize,
    pub equalities: usize,
    pub violations: Vec<Violation>,
}

impl SubmultiplicativityReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// `f(A □ B) <= f(A) f(B)` over unordered pairs of connected members of
/// order `>= 2` with product order at most `n_max`.
pub fn submultiplicativity_check_with<F>(
    eval: F,
    family: Family,
    n_max: usize,
) -> Result<SubmultiplicativityReport>
where
    F: Fn(&Graph) -> Result<BigUint>,
{
    let mut report = SubmultiplicativityReport { n_max, pairs_checked: 0, equalities: 0, violations: Vec::new() };
    for a in 2..=n_max {
        for b in a..=n_max / a {
            let left = population(family, a, Population::Additive)?;
            let right = population(family, b, Population::Additive)?;
            for (i, x) in left.iter().enumerate() {
                let start = if a == b { i } else { 0 };
                for y in &right[start..] {
                    let z = cartesian_product(x, y)?;
                    debug_assert!(is_connected(&z)?);
                    if !family.is_member(&z)? {
                        continue;
                    }
                    let (fz, fx, fy) = (eval(&z)?, eval(x)?, eval(y)?);
                    report.pairs_checked += 1;
                    let bound = &fx * &fy;
                    if fz == bound {
                        report.equalities += 1;
                    }
                    if fz > bound {
                        report.violations.push(Violation { left: x.clone(), right: y.clone(), values: (fz, fx, fy) });
                    }
                }
            }
        }
    }
    Ok(report)
}

pub fn submultiplicativity_check(
    f: ArithFunction,
    inst: &SemiringInstance,
    n_max: usize,
) -> Result<SubmultiplicativityReport> {
    submultiplicativity_check_with(|g| f.eval(g, inst), inst.family, n_max)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapRow {
    pub n: usize,
    /// `f^+(n)`
    pub additive_sum: BigUint,
    /// `f^□(n)`
    pub prime_sum: BigUint,
    pub gap: BigInt,
    /// `S(n) - S^+(n)`
    pub disconnected: BigInt,
    pub ratio: Option<BigRational>,
    pub additive_mean: Option<BigRational>,
    pub prime_mean: Option<BigRational>,
}

/// `f^+(n) - f^□(n)` against `S(n) - S^+(n)` per degree.
pub fn function_gap_report(
    f: ArithFunction,
    inst: &SemiringInstance,
    range: RangeInclusive<usize>,
) -> Result<Vec<GapRow>> {
    let mut rows = Vec::new();
    for n in range {
        let add = stats(f, inst, n, Population::Additive)?;
        let mult = stats(f, inst, n, Population::Multiplicative)?;
        let gap = BigInt::from(add.sum.clone()) - BigInt::from(mult.sum.clone());
        let disconnected =
            BigInt::from(inst.totals.get(n)?.clone()) - BigInt::from(inst.connected.get(n)?.clone());
        let ratio = (!disconnected.is_zero()).then(|| BigRational::new(gap.clone(), disconnected.clone()));
        rows.push(GapRow {
            n,
            additive_sum: add.sum,
            prime_sum: mult.sum,
            gap,
            disconnected,
            ratio,
            additive_mean: add.mean,
            prime_mean: mult.mean,
        });
    }
    Ok(rows)
}

pub fn gap_table(rows: &[GapRow]) -> Table {
    let mut t = Table::new([
        "n",
        "f_additive",
        "f_prime",
        "gap",
        "S_minus_S+",
        "ratio",
        "mean_additive",
        "mean_prime",
    ]);
    for r in rows {
        t.push(vec![
            r.n.to_string(),
            r.additive_sum.to_string(),
            r.prime_sum.to_string(),
            r.gap.to_string(),
            r.disconnected.to_string(),
            opt_rational(&r.ratio),
            opt_rational(&r.additive_mean),
            opt_rational(&r.prime_mean),
        ]);
    }
    t
}

//! Concrete graph semirings under `+` (disjoint union) and `□` (cartesian
//! product) with vertex count as degree: all graphs, graphs with an even
//! number of edges, and the Hamming graphs generated by complete graphs.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::counting::{
    euler_inverse, euler_transform, graph_totals, multiplicative_euler_transform, CountSequence,
};
use crate::error::{Error, Result};
use crate::factorization::{composite_set_filtered, count_cartesian_primes_from};
use crate::graph::{
    canonical_form, canonical_key, cartesian_product, connected_components, disjoint_union,
    enumerate_connected_capped, enumerate_graphs, enumerate_graphs_capped,
    is_connected, CanonicalKey, Graph, DEFAULT_ENUM_CAP, DEFAULT_MAX_ORDER, EXTENDED_ENUM_CAP,
};
use crate::report::Table;

/// Horizon of the all-graphs totals and connected counts.
pub const ALL_GRAPHS_HORIZON: usize = 24;
/// Horizon of the all-graphs cartesian-prime counts.
pub const ALL_GRAPHS_PRIME_HORIZON: usize = 16;
pub const EVEN_EDGE_HORIZON: usize = DEFAULT_ENUM_CAP;
pub const HAMMING_HORIZON: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    AllGraphs,
    EvenEdge,
    Hamming,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::AllGraphs => "graphs",
            Family::EvenEdge => "even-edge",
            Family::Hamming => "hamming",
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "graphs" | "all" => Ok(Family::AllGraphs),
            "even-edge" | "even" => Ok(Family::EvenEdge),
            "hamming" => Ok(Family::Hamming),
            other => Err(Error::parse(format!("unknown family {other:?}"))),
        }
    }

    pub fn is_member(self, g: &Graph) -> Result<bool> {
        match self {
            Family::AllGraphs => Ok(true),
            Family::EvenEdge => Ok(g.edge_count() % 2 == 0),
            Family::Hamming => {
                for c in connected_components(g)? {
                    if !is_hamming_graph(&c)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
        }
    }
}

/// Multisets of integers `>= 2` with product `n`, as nonincreasing lists.
pub fn multiplicative_partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 1 {
            out.push(cur.clone());
            return;
        }
        for f in (2..=max.min(n)).rev() {
            if n % f == 0 {
                cur.push(f);
                go(n / f, f, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    if n >= 1 {
        go(n, n, &mut Vec::new(), &mut out);
    }
    out
}

/// Canonical keys of the connected Hamming graphs `K_{i_1} □ ... □ K_{i_m}` of order `n`.
pub fn hamming_keys(n: usize) -> Result<BTreeSet<CanonicalKey>> {
    if n > DEFAULT_MAX_ORDER {
        return Err(Error::capacity("Hamming graph order", n, DEFAULT_MAX_ORDER));
    }
    let mut keys = BTreeSet::new();
    for parts in multiplicative_partitions(n) {
        let mut g = Graph::complete(1)?;
        for &k in &parts {
            g = cartesian_product(&g, &Graph::complete(k)?)?;
        }
        keys.insert(canonical_key(&g)?);
    }
    Ok(keys)
}

fn is_hamming_graph(g: &Graph) -> Result<bool> {
    if g.order() == 0 || !is_connected(g)? {
        return Ok(false);
    }
    Ok(hamming_keys(g.order())?.contains(&canonical_key(g)?))
}

/// Exact count sequences of one family up to a horizon.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemiringInstance {
    pub family: Family,
    /// `S(n)`: all members of degree `n`.
    pub totals: CountSequence,
    /// `S^+(n)`: connected members, with `S^+(1) = 1` for the unit `K_1`.
    pub connected: CountSequence,
    /// `S^□(n)`: multiplicative primes; may stop short of the other horizons.
    pub primes: CountSequence,
}

impl SemiringInstance {
    pub fn horizon(&self) -> usize {
        self.totals.max_degree()
    }

    /// Smallest degree carrying a multiplicative prime.
    pub fn smallest_prime_degree(&self) -> Option<usize> {
        self.primes.values().iter().position(|v| !v.is_zero())
    }

    /// Whether `S = euler_transform(S^+)` through the horizon, i.e. whether
    /// members factor freely into connected members under `+`.
    pub fn is_additively_free(&self) -> Result<bool> {
        Ok(euler_transform(&self.connected, self.horizon())? == self.totals)
    }

    /// `S^□(n) <= S^+(n) <= S(n)` wherever all three are known.
    pub fn counts_are_nested(&self) -> bool {
        (0..=self.horizon()).all(|n| {
            let c = &self.connected.values()[n];
            let below = self.primes.values().get(n).is_none_or(|p| p <= c);
            below && c <= &self.totals.values()[n]
        })
    }

    pub fn monotonicity(&self, n_max: usize) -> Result<MonotonicityReport> {
        monotonicity_report(&self.connected, n_max)
    }

    pub fn summary_table(&self) -> Table {
        let mut t = Table::new(["n", "S", "S+", "S_prime"]);
        for n in 0..=self.horizon() {
            t.push(vec![
                n.to_string(),
                self.totals.values()[n].to_string(),
                self.connected.values()[n].to_string(),
                self.primes.values().get(n).map_or_else(String::new, ToString::to_string),
            ]);
        }
        t
    }

    pub fn to_json(&self) -> Result<Value> {
        Ok(json!({
            "family": self.family.name(),
            "horizon": self.horizon(),
            "S": self.totals.to_json(),
            "S+": self.connected.to_json(),
            "S_prime": self.primes.to_json(),
            "p": self.smallest_prime_degree(),
            "additively_free": self.is_additively_free()?,
            "monotonic": self.monotonicity(self.horizon())?.is_monotonic(),
        }))
    }
}

/// All graphs: Pólya totals and their Euler inverse through `horizon <= 24`,
/// cartesian-prime counts through `min(horizon, 16)`.
pub fn instance_all_graphs(horizon: usize) -> Result<SemiringInstance> {
    if horizon > ALL_GRAPHS_HORIZON {
        return Err(Error::capacity("all-graphs horizon", horizon, ALL_GRAPHS_HORIZON));
    }
    let totals = graph_totals(horizon)?;
    let connected = euler_inverse(&totals, horizon)?;
    let prime_horizon = horizon.min(ALL_GRAPHS_PRIME_HORIZON);
    let primes = (0..=prime_horizon)
        .map(|n| count_cartesian_primes_from(n, connected.get(n)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(SemiringInstance { family: Family::AllGraphs, totals, connected, primes: CountSequence::new(primes)? })
}

fn even(g: &Graph) -> bool {
    g.edge_count() % 2 == 0
}

/// Graphs with an even number of edges, by enumeration through `horizon <= 8`.
pub fn instance_even_edge(horizon: usize) -> Result<SemiringInstance> {
    instance_even_edge_capped(horizon, EVEN_EDGE_HORIZON)
}

/// As [`instance_even_edge`] with the enumeration cap raised to at most 9.
pub fn instance_even_edge_capped(horizon: usize, cap: usize) -> Result<SemiringInstance> {
    if horizon > cap.min(EXTENDED_ENUM_CAP) {
        return Err(Error::capacity("even-edge horizon", horizon, cap.min(EXTENDED_ENUM_CAP)));
    }
    let mut totals = Vec::new();
    let mut connected = Vec::new();
    let mut primes = Vec::new();
    for n in 0..=horizon {
        totals.push(BigUint::from(enumerate_graphs_capped(n, cap)?.iter().filter(|g| even(g)).count()));
        let c = enumerate_connected_capped(n, cap)?.iter().filter(|g| even(g)).count();
        connected.push(BigUint::from(c));
        let p = if n < 2 { 0 } else { c - composite_set_filtered(n, even)?.len() };
        primes.push(BigUint::from(p));
    }
    Ok(SemiringInstance {
        family: Family::EvenEdge,
        totals: CountSequence::new(totals)?,
        connected: CountSequence::new(connected)?,
        primes: CountSequence::new(primes)?,
    })
}

/// Hamming graphs, counted arithmetically through `horizon <= 64`: one
/// connected member per multiplicative partition, one prime `K_n` per degree.
pub fn instance_hamming(horizon: usize) -> Result<SemiringInstance> {
    if horizon > HAMMING_HORIZON {
        return Err(Error::capacity("Hamming horizon", horizon, HAMMING_HORIZON));
    }
    let primes: Vec<BigUint> =
        (0..=horizon).map(|n| if n >= 2 { BigUint::one() } else { BigUint::zero() }).collect();
    let primes = CountSequence::new(primes)?;
    let connected = multiplicative_euler_transform(&primes, horizon)?;
    let totals = euler_transform(&connected, horizon)?;
    Ok(SemiringInstance { family: Family::Hamming, totals, connected, primes })
}

pub fn instance(family: Family, horizon: usize) -> Result<SemiringInstance> {
    match family {
        Family::AllGraphs => instance_all_graphs(horizon),
        Family::EvenEdge => instance_even_edge(horizon),
        Family::Hamming => instance_hamming(horizon),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureFailure {
    pub operation: &'static str,
    pub left: Graph,
    pub right: Graph,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureReport {
    pub n_max: usize,
    pub pairs_checked: usize,
    pub counterexample: Option<ClosureFailure>,
}

impl ClosureReport {
    pub fn is_closed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Checks that members of degree `1..` stay members under `+` and `□`
/// whenever the result has degree at most `n_max <= 8`.
pub fn closure_check_with<F>(member: F, n_max: usize) -> Result<ClosureReport>
where
    F: Fn(&Graph) -> Result<bool>,
{
    let mut members: Vec<Vec<&Graph>> = vec![Vec::new()];
    for n in 1..=n_max {
        let mut level = Vec::new();
        for g in enumerate_graphs(n)? {
            if member(g)? {
                level.push(g);
            }
        }
        members.push(level);
    }
    let mut pairs_checked = 0;
    for a in 1..=n_max {
        for b in a..=n_max {
            let ops: [(&'static str, bool); 2] = [("+", a + b <= n_max), ("□", a * b <= n_max)];
            for (op, in_range) in ops {
                if !in_range {
                    continue;
                }
                for x in &members[a] {
                    for y in &members[b] {
                        let z = if op == "+" { disjoint_union(x, y)? } else { cartesian_product(x, y)? };
                        pairs_checked += 1;
                        if !member(&z)? {
                            let failure = ClosureFailure { operation: op, left: (*x).clone(), right: (*y).clone() };
                            return Ok(ClosureReport { n_max, pairs_checked, counterexample: Some(failure) });
                        }
                    }
                }
            }
        }
    }
    Ok(ClosureReport { n_max, pairs_checked, counterexample: None })
}

pub fn closure_check(family: Family, n_max: usize) -> Result<ClosureReport> {
    closure_check_with(|g| family.is_member(g), n_max)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelfComplementary {
    pub n: usize,
    /// `2·G_ev(n) - G(n)`
    pub lhs: BigInt,
    /// Graphs isomorphic to their complement.
    pub rhs: BigUint,
}

impl SelfComplementary {
    pub fn holds(&self) -> bool {
        self.lhs == BigInt::from(self.rhs.clone())
    }
}

pub fn self_complementary_identity(n: usize) -> Result<SelfComplementary> {
    let graphs = enumerate_graphs(n)?;
    let even_count = graphs.iter().filter(|g| even(g)).count();
    let lhs = BigInt::from(2 * even_count) - BigInt::from(graphs.len());
    let mut sc = 0usize;
    for g in graphs {
        if &canonical_form(&g.complement())? == g {
            sc += 1;
        }
    }
    Ok(SelfComplementary { n, lhs, rhs: BigUint::from(sc) })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotonicityReport {
    pub n_max: usize,
    /// `(n, S^+(n), S^+(n+1))` with `S^+(n) > S^+(n+1)`.
    pub descents: Vec<(usize, BigUint, BigUint)>,
}

impl MonotonicityReport {
    pub fn is_monotonic(&self) -> bool {
        self.descents.is_empty()
    }
}

/// Every `1 <= n < n_max` with `connected(n) > connected(n+1)`.
pub fn monotonicity_report(connected: &CountSequence, n_max: usize) -> Result<MonotonicityReport> {
    connected.get(n_max)?;
    let v = connected.values();
    let descents = (1..n_max)
        .filter(|&n| v[n] > v[n + 1])
        .map(|n| (n, v[n].clone(), v[n + 1].clone()))
        .collect();
    Ok(MonotonicityReport { n_max, descents })
}

/// Connected induced Hamming subgraphs of `g` (order <= 8), counted per
/// isomorphism class; single vertices count as `K_1`, the empty subset does not.
pub fn hamming_polynomial(g: &Graph) -> Result<Vec<(CanonicalKey, usize)>> {
    let n = g.order();
    if n > DEFAULT_ENUM_CAP {
        return Err(Error::capacity("Hamming polynomial order", n, DEFAULT_ENUM_CAP));
    }
    let keys: Vec<BTreeSet<CanonicalKey>> = (0..=n).map(hamming_keys).collect::<Result<_>>()?;
    let mut terms: BTreeMap<CanonicalKey, usize> = BTreeMap::new();
    for mask in 1u32..(1 << n) {
        if !g.induces_connected(mask) {
            continue;
        }
        let h = g.induced(mask);
        let key = canonical_key(&h)?;
        if keys[h.order()].contains(&key) {
            *terms.entry(key).or_default() += 1;
        }
    }
    Ok(terms.into_iter().collect())
}

/// `Σ multiplicity · order` over the Hamming polynomial.
pub fn hamming_degree(g: &Graph) -> Result<BigUint> {
    Ok(hamming_polynomial(g)?.iter().map(|(k, m)| BigUint::from(k.order() * m)).sum())
}

//! Cartesian-prime testing and unique factorization of connected graphs.
//!
//! Composites of order `n` are generated from their factors: every product
//! `A □ B` of connected graphs with orders `a, n/a >= 2`. Only the factor
//! orders need to be enumerable, so orders up to 16 are covered.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{
    canonical_form, canonical_key, cartesian_product, enumerate_connected, is_connected,
    CanonicalKey, Graph, DEFAULT_ENUM_CAP, MAX_REPR_ORDER,
};
use crate::numtheory::divisors as integer_divisors;

static COMPOSITES: [OnceLock<CompositeSet>; MAX_REPR_ORDER + 1] =
    [const { OnceLock::new() }; MAX_REPR_ORDER + 1];

/// Canonical keys of every connected composite graph of one order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositeSet {
    pub n: usize,
    pub members: BTreeSet<CanonicalKey>,
}

impl CompositeSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, key: &CanonicalKey) -> bool {
        self.members.contains(key)
    }
}

/// Factor-order pairs `(a, n/a)` with `2 <= a <= n/a`.
fn factor_orders(n: usize) -> Vec<(usize, usize)> {
    integer_divisors(n)
        .into_iter()
        .filter(|&a| a >= 2 && a * a <= n)
        .map(|a| (a, n / a))
        .collect()
}

fn check_factor_order(order: usize) -> Result<()> {
    if order > DEFAULT_ENUM_CAP {
        return Err(Error::capacity("factor order", order, DEFAULT_ENUM_CAP));
    }
    Ok(())
}

/// Keys of `canonical(A □ B)` over connected `A` of order `a`, `B` of order
/// `b`, both passing `keep`.
pub fn product_keys<F>(a: usize, b: usize, keep: F) -> Result<BTreeSet<CanonicalKey>>
where
    F: Fn(&Graph) -> bool + Sync,
{
    check_factor_order(a)?;
    check_factor_order(b)?;
    let left: Vec<&Graph> = enumerate_connected(a)?.iter().filter(|g| keep(g)).collect();
    let right: Vec<&Graph> = enumerate_connected(b)?.iter().filter(|g| keep(g)).collect();
    let pairs: Vec<(&Graph, &Graph)> =
        left.iter().flat_map(|&x| right.iter().map(move |&y| (x, y))).collect();
    pairs
        .par_iter()
        .map(|(x, y)| canonical_key(&cartesian_product(x, y)?))
        .collect::<Result<Vec<_>>>()
        .map(|keys| keys.into_iter().collect())
}

/// Connected composites of order `n` built from factors passing `keep`.
pub fn composite_set_filtered<F>(n: usize, keep: F) -> Result<CompositeSet>
where
    F: Fn(&Graph) -> bool + Sync,
{
    let mut members = BTreeSet::new();
    for (a, b) in factor_orders(n) {
        members.extend(product_keys(a, b, &keep)?);
    }
    Ok(CompositeSet { n, members })
}

/// All connected composite graphs of order `n`, memoized per order.
pub fn composite_set(n: usize) -> Result<&'static CompositeSet> {
    if n > MAX_REPR_ORDER {
        return Err(Error::capacity("composite order", n, MAX_REPR_ORDER));
    }
    if let Some(set) = COMPOSITES[n].get() {
        return Ok(set);
    }
    let set = composite_set_filtered(n, |_| true)?;
    Ok(COMPOSITES[n].get_or_init(|| set))
}

fn require_connected_nontrivial(g: &Graph) -> Result<()> {
    if g.order() < 2 {
        return Err(Error::domain("factorization needs a connected graph of order at least 2"));
    }
    if !is_connected(g)? {
        return Err(Error::domain("factorization needs a connected graph"));
    }
    Ok(())
}

pub fn is_cartesian_prime(g: &Graph) -> Result<bool> {
    require_connected_nontrivial(g)?;
    if factor_orders(g.order()).is_empty() {
        return Ok(true);
    }
    Ok(!composite_set(g.order())?.contains(&canonical_key(g)?))
}

/// `𝕊^+(n) - |composites(n)|`, given the connected count `connected(n)`.
pub fn count_cartesian_primes_from(n: usize, connected: &num_bigint::BigUint) -> Result<num_bigint::BigUint> {
    if n < 2 {
        return Ok(num_bigint::BigUint::default());
    }
    Ok(connected - num_bigint::BigUint::from(composite_set(n)?.len()))
}

/// Number of cartesian-prime graphs of order `n`; 0 below order 2 since
/// `K_1` is the unit.
pub fn count_cartesian_primes(n: usize) -> Result<num_bigint::BigUint> {
    let totals = crate::counting::graph_totals(n)?;
    let connected = crate::counting::euler_inverse(&totals, n)?;
    count_cartesian_primes_from(n, connected.get(n)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SearchOrder {
    /// Smallest candidate factor order first.
    #[default]
    Ascending,
    Descending,
}

/// A multiset of cartesian-prime factors, sorted by canonical key.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub factors: Vec<Graph>,
}

impl Factorization {
    fn new(mut factors: Vec<Graph>) -> Self {
        factors.sort_by_cached_key(Graph::labeled_key);
        Factorization { factors }
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Distinct factors with their multiplicities.
    pub fn multiplicities(&self) -> Vec<(Graph, usize)> {
        let mut out: Vec<(Graph, usize)> = Vec::new();
        for f in &self.factors {
            match out.last_mut() {
                Some((g, count)) if g == f => *count += 1,
                _ => out.push((f.clone(), 1)),
            }
        }
        out
    }

    /// Cartesian product of the factors; `K_1` for the empty multiset.
    pub fn product(&self) -> Result<Graph> {
        let mut acc = Graph::complete(1)?;
        for f in &self.factors {
            acc = cartesian_product(&acc, f)?;
        }
        Ok(acc)
    }
}

/// Some `(A, B)` with `g ≅ A □ B`, searching factor orders in `order`.
fn split(g: &Graph, order: SearchOrder) -> Result<Option<(Graph, Graph)>> {
    let n = g.order();
    let mut sizes: Vec<usize> = integer_divisors(n).into_iter().filter(|&a| a >= 2 && a < n).collect();
    if order == SearchOrder::Descending {
        sizes.reverse();
    }
    let target = canonical_key(g)?;
    let edges = g.edge_count();
    for a in sizes {
        let b = n / a;
        check_factor_order(a)?;
        check_factor_order(b)?;
        for x in enumerate_connected(a)? {
            for y in enumerate_connected(b)? {
                if x.edge_count() * b + y.edge_count() * a != edges {
                    continue;
                }
                if canonical_key(&cartesian_product(x, y)?)? == target {
                    return Ok(Some((x.clone(), y.clone())));
                }
            }
        }
    }
    Ok(None)
}

fn collect_factors(g: &Graph, order: SearchOrder, out: &mut Vec<Graph>) -> Result<()> {
    if is_cartesian_prime(g)? {
        out.push(canonical_form(g)?);
        return Ok(());
    }
    let (x, y) = split(g, order)?.expect("composite graphs split");
    collect_factors(&x, order, out)?;
    collect_factors(&y, order, out)
}

pub fn factorize_with(g: &Graph, order: SearchOrder) -> Result<Factorization> {
    require_connected_nontrivial(g)?;
    let mut factors = Vec::new();
    collect_factors(g, order, &mut factors)?;
    Ok(Factorization::new(factors))
}

/// The unique multiset of cartesian primes whose product is `g`.
pub fn factorize(g: &Graph) -> Result<Factorization> {
    factorize_with(g, SearchOrder::Ascending)
}

/// Connected `D` (including `K_1` and `g`) with `g ≅ D □ D'`, from the
/// sub-multisets of the prime factors, sorted by canonical key.
pub fn divisors(g: &Graph) -> Result<Vec<Graph>> {
    if g.order() == 1 {
        return Ok(vec![Graph::complete(1)?]);
    }
    let fact = factorize(g)?;
    let distinct = fact.multiplicities();
    let mut found: BTreeMap<CanonicalKey, Graph> = BTreeMap::new();
    let mut counts = vec![0usize; distinct.len()];
    loop {
        let mut d = Graph::complete(1)?;
        for ((f, _), &c) in distinct.iter().zip(&counts) {
            for _ in 0..c {
                d = cartesian_product(&d, f)?;
            }
        }
        let d = canonical_form(&d)?;
        found.insert(d.labeled_key(), d);
        // odometer over the multiplicities
        let mut i = 0;
        loop {
            if i == counts.len() {
                return Ok(found.into_values().collect());
            }
            if counts[i] < distinct[i].1 {
                counts[i] += 1;
                break;
            }
            counts[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(n: usize) -> Graph {
        Graph::complete(n).unwrap()
    }

    fn key(g: &Graph) -> CanonicalKey {
        canonical_key(g).unwrap()
    }

    #[test]
    fn composite_set_examples() {
        let c4 = composite_set(4).unwrap();
        assert_eq!(c4.members, BTreeSet::from([key(&Graph::cycle(4).unwrap())]));
        assert!(composite_set(5).unwrap().is_empty());
        let six = composite_set(6).unwrap();
        let expected = BTreeSet::from([
            key(&cartesian_product(&k(2), &k(3)).unwrap()),
            key(&cartesian_product(&k(2), &Graph::path(3).unwrap()).unwrap()),
        ]);
        assert_eq!(six.members, expected);
    }

    #[test]
    fn prime_examples() {
        assert!(is_cartesian_prime(&k(2)).unwrap());
        assert!(!is_cartesian_prime(&Graph::cycle(4).unwrap()).unwrap());
        assert!(is_cartesian_prime(&Graph::path(4).unwrap()).unwrap());
        assert!(matches!(is_cartesian_prime(&k(1)), Err(Error::Domain(_))));
        assert!(matches!(is_cartesian_prime(&Graph::empty(3).unwrap()), Err(Error::Domain(_))));
    }

    #[test]
    fn prime_counts() {
        let got: Vec<u64> = (2..=8)
            .map(|n| count_cartesian_primes(n).unwrap().try_into().unwrap())
            .collect();
        assert_eq!(got, vec![1, 2, 5, 21, 110, 853, 11111]);
        assert_eq!(count_cartesian_primes(1).unwrap(), num_bigint::BigUint::default());
    }

    #[test]
    fn factorize_examples() {
        assert_eq!(factorize(&k(2)).unwrap().factors, vec![k(2)]);
        assert_eq!(factorize(&Graph::cycle(4).unwrap()).unwrap().factors, vec![k(2), k(2)]);
        let q3 = cartesian_product(&Graph::cycle(4).unwrap(), &k(2)).unwrap();
        let f = factorize(&q3).unwrap();
        assert_eq!(f.multiplicities(), vec![(k(2), 3)]);
        assert_eq!(key(&f.product().unwrap()), key(&q3));
    }

    #[test]
    fn search_orders_agree_on_mixed_factors() {
        let g = cartesian_product(&cartesian_product(&k(2), &k(3)).unwrap(), &k(2)).unwrap();
        let asc = factorize_with(&g, SearchOrder::Ascending).unwrap();
        let desc = factorize_with(&g, SearchOrder::Descending).unwrap();
        assert_eq!(asc, desc);
        assert_eq!(asc.len(), 3);
    }

    #[test]
    fn divisor_examples() {
        assert_eq!(divisors(&k(2)).unwrap().len(), 2);
        let c4 = Graph::cycle(4).unwrap();
        let ds: BTreeSet<_> = divisors(&c4).unwrap().iter().map(key).collect();
        assert_eq!(ds, BTreeSet::from([key(&k(1)), key(&k(2)), key(&c4)]));
        let k2k3 = cartesian_product(&k(2), &k(3)).unwrap();
        assert_eq!(divisors(&k2k3).unwrap().len(), 4);
    }

    #[test]
    fn factor_order_capacity() {
        // order 18 needs a factor of order 9
        let g = Graph::path(18).unwrap();
        assert!(matches!(is_cartesian_prime(&g), Err(Error::Capacity { .. })));
    }
}

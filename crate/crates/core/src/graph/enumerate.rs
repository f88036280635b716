//! Exhaustive generation of isomorphism classes by vertex augmentation.
//!
//! Every graph of order `n` arises from some graph of order `n - 1` by adding
//! a vertex with an arbitrary neighbourhood, so the canonical forms of all
//! augmentations of the order-`n-1` representatives cover every class.
//! Results are memoized per order and sorted by canonical key.

use std::collections::HashSet;
use std::sync::OnceLock;

use rayon::prelude::*;

use super::{canonical_form, is_connected, Graph, DEFAULT_ENUM_CAP, EXTENDED_ENUM_CAP};
use crate::error::{Error, Result};

static GRAPHS: [OnceLock<Vec<Graph>>; EXTENDED_ENUM_CAP + 1] =
    [const { OnceLock::new() }; EXTENDED_ENUM_CAP + 1];
static CONNECTED: [OnceLock<Vec<Graph>>; EXTENDED_ENUM_CAP + 1] =
    [const { OnceLock::new() }; EXTENDED_ENUM_CAP + 1];

fn augment(parent: &Graph, mask: u32) -> Graph {
    let n = parent.order();
    let mut adj = parent.adj.clone();
    for (v, row) in adj.iter_mut().enumerate() {
        if mask >> v & 1 == 1 {
            *row |= 1 << n;
        }
    }
    adj.push(mask);
    Graph { n: n + 1, adj }
}

fn all_graphs(n: usize) -> &'static [Graph] {
    GRAPHS[n].get_or_init(|| {
        if n == 0 {
            return vec![Graph::empty_unchecked(0)];
        }
        let parents = all_graphs(n - 1);
        let width = 1u32 << (n - 1);
        let classes: HashSet<Graph> = parents
            .par_iter()
            .fold(HashSet::new, |mut acc, p| {
                for mask in 0..width {
                    acc.insert(canonical_form(&augment(p, mask)).expect("order within cap"));
                }
                acc
            })
            .reduce(HashSet::new, |a, b| {
                let (mut big, small) = if a.len() >= b.len() { (a, b) } else { (b, a) };
                big.extend(small);
                big
            });
        let mut out: Vec<Graph> = classes.into_iter().collect();
        out.sort_by_cached_key(|g| g.labeled_key());
        out
    })
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if cap > EXTENDED_ENUM_CAP {
        return Err(Error::capacity("enumeration cap", cap, EXTENDED_ENUM_CAP));
    }
    if n > cap {
        return Err(Error::capacity("enumeration order", n, cap));
    }
    Ok(())
}

/// One canonical representative per isomorphism class of order `n`,
/// sorted by canonical key, for `n <= cap <= 9`.
pub fn enumerate_graphs_capped(n: usize, cap: usize) -> Result<&'static [Graph]> {
    check_cap(n, cap)?;
    Ok(all_graphs(n))
}

/// All graphs of order `n <= 8`, one per isomorphism class.
pub fn enumerate_graphs(n: usize) -> Result<&'static [Graph]> {
    enumerate_graphs_capped(n, DEFAULT_ENUM_CAP)
}

pub fn enumerate_connected_capped(n: usize, cap: usize) -> Result<&'static [Graph]> {
    check_cap(n, cap)?;
    Ok(CONNECTED[n].get_or_init(|| {
        all_graphs(n)
            .iter()
            .filter(|g| g.order() > 0 && is_connected(g).unwrap_or(false))
            .cloned()
            .collect()
    }))
}

/// Connected graphs of order `n <= 8`, sorted by canonical key.
pub fn enumerate_connected(n: usize) -> Result<&'static [Graph]> {
    enumerate_connected_capped(n, DEFAULT_ENUM_CAP)
}

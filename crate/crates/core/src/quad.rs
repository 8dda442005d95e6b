//! Ordered quadruple statistics over a bipartite distance-class partition.
//!
//! A quadruple is an ordered pair of cross pairs `((a, p), (b, q))` with
//! `(a, p) != (b, q)` and equal squared distance, so the total count is
//! `sum_i |E_i| * (|E_i| - 1)` over the distance classes. Each framework
//! splits the total into an *aligned* part (`q1`) where a framework-specific
//! key of the right-hand points agrees — squared height in the line case,
//! squared norm in the circle case — and the *generic* remainder (`q2`) that
//! the curve-incidence count must reproduce exactly.
//!
//! Also recorded: the exact Cauchy-Schwarz lower bound
//! `(sum_i (|E_i| - 1))^2 / D <= q_total`.

use std::collections::HashMap;

use crate::distance::DistanceClassPartition;
use crate::error::{Error, Result};
use crate::exact::Rat;
use crate::geom::PointSet;
use crate::par;

#[derive(Debug, Clone, PartialEq)]
pub struct QuadrupleStats {
    pub q_total: u64,
    /// Aligned quadruples: the framework key of `p` and `q` agrees.
    pub q1: u64,
    /// Generic quadruples: everything else; must equal the incidence count.
    pub q2: u64,
    /// Number of distance classes.
    pub d: u64,
    /// Class sizes, sorted ascending.
    pub class_sizes: Vec<u64>,
    /// Exact `(sum (|E_i| - 1))^2 / D`.
    pub cauchy_schwarz_lower: Rat,
}

impl QuadrupleStats {
    /// The two internal identities: the split sums to the total, and the
    /// total matches `2 * sum C(|E_i|, 2)`.
    pub fn identities_hold(&self) -> bool {
        let binom: u64 = self.class_sizes.iter().map(|&s| s * (s - 1) / 2).sum();
        self.q_total == self.q1 + self.q2 && self.q_total == 2 * binom
    }

    /// Exact check of the Cauchy-Schwarz bound
    /// `q_total >= (sum (|E_i| - 1))^2 / D`.
    pub fn cauchy_schwarz_holds(&self) -> bool {
        Rat::from_integer(self.q_total.into()) >= self.cauchy_schwarz_lower
    }
}

fn cauchy_schwarz_lower(class_sizes: &[u64], d: u64) -> Rat {
    if d == 0 {
        return Rat::from_integer(0.into());
    }
    let s: u64 = class_sizes.iter().map(|&s| s - 1).sum();
    let s = Rat::from_integer(s.into());
    &s * &s / Rat::from_integer(d.into())
}

/// Count quadruple statistics from class sizes and an alignment key on the
/// right-hand point. `O(sum |E_i|)`.
pub(crate) fn stats_from_classes(
    classes: &DistanceClassPartition,
    aligned_key: impl Fn(u32) -> Rat + Send + Sync,
) -> QuadrupleStats {
    let class_list: Vec<&[(u32, u32)]> = classes.classes().map(|(_, m)| m).collect();
    // Per class: ordered distinct pairs in total, and ordered distinct pairs
    // within each aligned-key group.
    let per_class: Vec<(u64, u64)> = par::flat_map_ordered(&class_list, |members| {
        let s = members.len() as u64;
        let mut groups: HashMap<Rat, u64> = HashMap::new();
        for &(_, j) in members.iter() {
            *groups.entry(aligned_key(j)).or_insert(0) += 1;
        }
        let aligned: u64 = groups.values().map(|&g| g * (g - 1)).sum();
        vec![(s * (s - 1), aligned)]
    });
    let q_total: u64 = per_class.iter().map(|&(t, _)| t).sum();
    let q1: u64 = per_class.iter().map(|&(_, a)| a).sum();
    let mut class_sizes = classes.class_sizes();
    class_sizes.sort_unstable();
    let d = classes.d() as u64;
    QuadrupleStats {
        q_total,
        q1,
        q2: q_total - q1,
        d,
        cauchy_schwarz_lower: cauchy_schwarz_lower(&class_sizes, d),
        class_sizes,
    }
}

/// Independent oracle: rebuild the classes with plain hashing from the raw
/// point sets and literally enumerate all ordered pairs of cross pairs.
/// Guarded: refuses when `|left| * |right|` exceeds `pair_cap` or the
/// enumeration itself would exceed an internal work cap.
pub(crate) fn stats_by_enumeration(
    left: &PointSet,
    right: &PointSet,
    aligned_key: impl Fn(u32) -> Rat,
    pair_cap: u64,
) -> Result<QuadrupleStats> {
    let pairs = (left.len() as u64) * (right.len() as u64);
    if pairs > pair_cap {
        return Err(Error::SizeGuard {
            what: "quadruple enumeration |P1| * |P2|".into(),
            value: pairs as u128,
            cap: pair_cap as u128,
        });
    }
    let mut by_dist: HashMap<Rat, Vec<u32>> = HashMap::new();
    for a in left.iter() {
        for (j, b) in right.iter().enumerate() {
            by_dist
                .entry(a.squared_dist(b))
                .or_default()
                .push(j as u32);
        }
    }
    let work: u64 = by_dist.values().map(|v| (v.len() as u64).pow(2)).sum();
    let work_cap = pair_cap.saturating_mul(500);
    if work > work_cap {
        return Err(Error::SizeGuard {
            what: "quadruple enumeration pair-of-pairs work".into(),
            value: work as u128,
            cap: work_cap as u128,
        });
    }

    let mut q_total = 0u64;
    let mut q1 = 0u64;
    let mut class_sizes: Vec<u64> = Vec::with_capacity(by_dist.len());
    for members in by_dist.values() {
        class_sizes.push(members.len() as u64);
        for (u, &j1) in members.iter().enumerate() {
            for (v, &j2) in members.iter().enumerate() {
                if u == v {
                    continue;
                }
                q_total += 1;
                if aligned_key(j1) == aligned_key(j2) {
                    q1 += 1;
                }
            }
        }
    }
    class_sizes.sort_unstable();
    let d = by_dist.len() as u64;
    Ok(QuadrupleStats {
        q_total,
        q1,
        q2: q_total - q1,
        d,
        cauchy_schwarz_lower: cauchy_schwarz_lower(&class_sizes, d),
        class_sizes,
    })
}

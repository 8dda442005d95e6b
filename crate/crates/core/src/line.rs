//! Line framework: one part of the configuration on the x-axis.
//!
//! Points `a, b` range over `P1` (on the x-axis) and `p, q` over the ambient
//! part `P2` (strictly off the axis). For a cross pair `(p, q)` the equation
//! `dist2(a, p) = dist2(b, q)` in the unknowns `x = a_x`, `y = b_x` is the
//! hyperbola-type curve
//!
//! ```text
//! f_pq(x, y) = (x - p_x)^2 + p_y^2 - (y - q_x)^2 - q_y^2 = 0,
//! ```
//!
//! and two cross pairs trace the same curve exactly when the class key
//! `(p_x, q_x, q_y^2 - p_y^2)` agrees. Pairs with `p_y^2 = q_y^2` are the
//! aligned (`q1`) side of the quadruple split and are excluded from the
//! family; for the rest, the generic quadruple count `q2` equals the number
//! of incidences between the grid `V = P1 x P1` (as x-coordinate pairs,
//! diagonal included) and the curve family counted with multiplicity. That
//! identity is re-checked exactly by [`line_ledger`].
//!
//! Supporting checks: any two distinct curves meet in at most 2 points, at
//! most one curve class passes through three given grid points, each aligned
//! pair admits at most 4 completions, curve-class multiplicity is at most
//! twice the richest vertical line of `P2`, and the additive-energy style
//! sets `A - A`, `A^2 + B^2` extracted from the configuration are reported
//! with their growth exponents.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use serde::Serialize;

use crate::distance::{bipartite_distances, distinct_distances};
use crate::error::{Error, Result};
use crate::exact::{rat_sqrt, BiPoly, Rat, RootInterval, UniPoly, Var};
use crate::geom::{ExactPoint, PointSet};
use crate::par;
use crate::quad::{self, QuadrupleStats};

/// Cap on `|P1| * |P2|` for the literal quadruple enumeration oracle.
pub const ENUMERATION_PAIR_CAP: u64 = 100_000;

/// A configuration split for the line framework: `p1` lies on the x-axis
/// (distinct x-coordinates), `p2` lies strictly off it.
#[derive(Debug, Clone)]
pub struct LineSplit {
    p1: PointSet,
    p2: PointSet,
}

impl LineSplit {
    pub fn new(p1: PointSet, p2: PointSet) -> Result<Self> {
        if p1.is_empty() || p2.is_empty() {
            return Err(Error::TooFewPoints {
                needed: 1,
                got: p1.len().min(p2.len()),
            });
        }
        for a in p1.iter() {
            if !a.on_x_axis() {
                return Err(Error::misplaced(&a.x, &a.y, "expected on the x-axis"));
            }
        }
        for p in p2.iter() {
            if p.on_x_axis() {
                return Err(Error::misplaced(&p.x, &p.y, "expected strictly off the x-axis"));
            }
        }
        Ok(LineSplit { p1, p2 })
    }

    /// Split an arbitrary set by the x-axis.
    pub fn from_pointset(ps: &PointSet) -> Result<Self> {
        let (on, off) = ps.split_by_x_axis();
        LineSplit::new(
            PointSet::new(format!("{}/axis", ps.label()), on)?,
            PointSet::new(format!("{}/ambient", ps.label()), off)?,
        )
    }

    pub fn p1(&self) -> &PointSet {
        &self.p1
    }

    pub fn p2(&self) -> &PointSet {
        &self.p2
    }

    pub fn n(&self) -> usize {
        self.p1.len() + self.p2.len()
    }
}

/// Quadruple statistics with the line alignment key `p_y^2`.
pub fn build_quadruple_stats(split: &LineSplit) -> Result<QuadrupleStats> {
    let classes = bipartite_distances(split.p1(), split.p2())?;
    let pts = split.p2().points();
    Ok(quad::stats_from_classes(&classes, |j| {
        let y = &pts[j as usize].y;
        y * y
    }))
}

/// Independent oracle: enumerate every ordered pair of cross pairs.
/// Refuses when `|P1| * |P2| >` [`ENUMERATION_PAIR_CAP`].
pub fn quadruple_enumeration_oracle(split: &LineSplit) -> Result<QuadrupleStats> {
    quadruple_enumeration_oracle_with_cap(split, ENUMERATION_PAIR_CAP)
}

/// [`quadruple_enumeration_oracle`] with an explicit pair cap, for callers
/// that deliberately lift the default guard.
pub fn quadruple_enumeration_oracle_with_cap(
    split: &LineSplit,
    pair_cap: u64,
) -> Result<QuadrupleStats> {
    let pts = split.p2().points();
    quad::stats_by_enumeration(
        split.p1(),
        split.p2(),
        |j| {
            let y = &pts[j as usize].y;
            y * y
        },
        pair_cap,
    )
}

/// Curve-class key: two cross pairs define the same curve iff this agrees.
pub type ClassKey = (Rat, Rat, Rat);

/// Key of the curve traced by the cross pair `(p, q)`.
pub fn hyperbola_class_key(p: &ExactPoint, q: &ExactPoint) -> ClassKey {
    (p.x.clone(), q.x.clone(), &q.y * &q.y - &p.y * &p.y)
}

/// The defining polynomial `(x - p_x)^2 + p_y^2 - (y - q_x)^2 - q_y^2`.
pub fn hyperbola_poly(p: &ExactPoint, q: &ExactPoint) -> BiPoly {
    let mut f = BiPoly::zero();
    f.add_term(2, 0, Rat::from_integer(1.into()));
    f.add_term(1, 0, Rat::from_integer((-2).into()) * &p.x);
    f.add_term(0, 2, Rat::from_integer((-1).into()));
    f.add_term(0, 1, Rat::from_integer(2.into()) * &q.x);
    let c = &p.x * &p.x + &p.y * &p.y - &q.x * &q.x - &q.y * &q.y;
    f.add_term(0, 0, c);
    f
}

/// Does `(x, y)` lie on the curve of `(p, q)`? Direct evaluation, no
/// polynomial construction.
pub fn hyperbola_contains(p: &ExactPoint, q: &ExactPoint, x: &Rat, y: &Rat) -> bool {
    let dx = x - &p.x;
    let dy = y - &q.x;
    &dx * &dx + &p.y * &p.y == &dy * &dy + &q.y * &q.y
}

/// The family of curves from all ordered cross pairs `(p, q)` in `P2 x P2`
/// with `p_y^2 != q_y^2`, grouped into classes (= distinct curves) with
/// multiplicities.
#[derive(Debug, Clone)]
pub struct HyperbolaFamily {
    /// Ordered index pairs `(i, j)` into `P2` that generate a curve.
    curves: Vec<(u32, u32)>,
    /// Distinct curves: class key -> (first generating pair, multiplicity).
    classes: BTreeMap<ClassKey, ((u32, u32), u64)>,
    /// Ordered pairs skipped because `p_y^2 = q_y^2` (aligned side).
    skipped_aligned: u64,
}

impl HyperbolaFamily {
    /// Size of the family as a multiset, `|Gamma|`.
    pub fn gamma_size(&self) -> u64 {
        self.curves.len() as u64
    }

    /// Number of distinct curves.
    pub fn class_count(&self) -> u64 {
        self.classes.len() as u64
    }

    pub fn curves(&self) -> &[(u32, u32)] {
        &self.curves
    }

    /// Classes with multiplicities, in key order.
    pub fn classes(&self) -> impl Iterator<Item = (&ClassKey, u64)> {
        self.classes.iter().map(|(k, &(_, m))| (k, m))
    }

    /// Multiplicities in class-key order.
    pub fn multiplicities(&self) -> Vec<u64> {
        self.classes.values().map(|&(_, m)| m).collect()
    }

    /// Largest class multiplicity (`t`); 0 for an empty family.
    pub fn max_multiplicity(&self) -> u64 {
        self.classes.values().map(|&(_, m)| m).max().unwrap_or(0)
    }

    pub fn skipped_aligned(&self) -> u64 {
        self.skipped_aligned
    }

    /// One representative generating pair per class with its multiplicity,
    /// in class-key order.
    pub fn class_entries(&self) -> impl Iterator<Item = ((u32, u32), u64)> + '_ {
        self.classes.values().copied()
    }

    /// Representative cross-pair points per class, in class-key order.
    pub fn class_representatives(&self, p2: &PointSet) -> Vec<(ExactPoint, ExactPoint)> {
        self.classes
            .values()
            .map(|&((i, j), _)| {
                (
                    p2.points()[i as usize].clone(),
                    p2.points()[j as usize].clone(),
                )
            })
            .collect()
    }
}

/// Build the curve family over all ordered cross pairs of `p2`.
pub fn build_hyperbola_family(p2: &PointSet) -> HyperbolaFamily {
    let pts = p2.points();
    let indices: Vec<u32> = (0..pts.len() as u32).collect();
    type Row = (Vec<(u32, u32)>, Vec<(ClassKey, ((u32, u32), u64))>, u64);
    let rows: Vec<Row> = par::flat_map_ordered(&indices, |&i| {
        let p = &pts[i as usize];
        let py2 = &p.y * &p.y;
        let mut curves = Vec::new();
        let mut classes: BTreeMap<ClassKey, ((u32, u32), u64)> = BTreeMap::new();
        let mut skipped = 0u64;
        for (j, q) in pts.iter().enumerate() {
            let qy2 = &q.y * &q.y;
            if py2 == qy2 {
                if i as usize != j {
                    skipped += 1;
                }
                continue;
            }
            curves.push((i, j as u32));
            classes
                .entry((p.x.clone(), q.x.clone(), qy2 - &py2))
                .and_modify(|e| e.1 += 1)
                .or_insert(((i, j as u32), 1));
        }
        vec![(curves, classes.into_iter().collect(), skipped)]
    });
    let mut curves = Vec::new();
    let mut classes: BTreeMap<ClassKey, ((u32, u32), u64)> = BTreeMap::new();
    let mut skipped_aligned = 0u64;
    // Rows arrive in index order, so the representative kept for each class
    // is the one with the smallest generating pair: deterministic under both
    // execution modes.
    for (c, cl, s) in rows {
        curves.extend(c);
        for (k, (rep, m)) in cl {
            classes
                .entry(k)
                .and_modify(|e| e.1 += m)
                .or_insert((rep, m));
        }
        skipped_aligned += s;
    }
    HyperbolaFamily {
        curves,
        classes,
        skipped_aligned,
    }
}

/// Incidences between the grid `V = P1 x P1` (x-coordinate pairs, diagonal
/// included) and the family, counted with curve multiplicity.
///
/// Per curve class and per `a in P1` the equation
/// `(y - q_x)^2 = (a_x - p_x)^2 + p_y^2 - q_y^2` is solved exactly for `y`
/// and the at most two candidates are looked up in the x-coordinate set of
/// `P1`; the class multiplicity is added per hit.
pub fn count_incidences(split: &LineSplit, family: &HyperbolaFamily) -> u64 {
    let xs: Vec<Rat> = split.p1().iter().map(|a| a.x.clone()).collect();
    let x_set: HashSet<Rat> = xs.iter().cloned().collect();
    let pts = split.p2().points();
    let rep_list: Vec<((u32, u32), u64)> = family.class_entries().collect();
    par::sum_map_u64(&rep_list, |&((i, j), mult)| {
        let p = &pts[i as usize];
        let q = &pts[j as usize];
        let shift = &p.y * &p.y - &q.y * &q.y;
        let mut hits = 0u64;
        for ax in &xs {
            let dx = ax - &p.x;
            let s = &dx * &dx + &shift;
            if s < Rat::from_integer(0.into()) {
                continue;
            }
            let Some(root) = rat_sqrt(&s) else { continue };
            let y_plus = &q.x + &root;
            if x_set.contains(&y_plus) {
                hits += 1;
            }
            if root != Rat::from_integer(0.into()) {
                let y_minus = &q.x - &root;
                if x_set.contains(&y_minus) {
                    hits += 1;
                }
            }
        }
        hits * mult
    })
}

/// Reference implementation: test every grid point against every curve of
/// the family by direct substitution. Quadratic in everything; intended for
/// cross-checks on small inputs.
pub fn count_incidences_naive(split: &LineSplit, family: &HyperbolaFamily) -> u64 {
    let pts = split.p2().points();
    let mut count = 0u64;
    for a in split.p1().iter() {
        for b in split.p1().iter() {
            for &(i, j) in &family.curves {
                let p = &pts[i as usize];
                let q = &pts[j as usize];
                if hyperbola_contains(p, q, &a.x, &b.x) {
                    count += 1;
                }
            }
        }
    }
    count
}

/// Outcome of a sampled or exhaustive "at most `bound`" check.
#[derive(Debug, Clone, Serialize)]
pub struct ChoiceBoundReport {
    pub max_observed: u64,
    pub bound: u64,
    pub triples_tested: u64,
}

/// For every aligned triple `(a, b, p)` (with `a, b in P1`, `p in P2`),
/// count the points `q in P2` that complete it to an aligned quadruple:
/// `dist2(a, p) = dist2(b, q)` and `q_y^2 = p_y^2`. Any such `q` has
/// `q_y = +-p_y` and `q_x = b_x +- (a_x - p_x)`, so at most 4 candidates
/// are looked up. Errors with [`Error::BoundViolation`] if any count
/// exceeds 4.
pub fn aligned_choice_bound_check(split: &LineSplit) -> Result<ChoiceBoundReport> {
    let p2_set: HashSet<&ExactPoint> = split.p2().iter().collect();
    let axis: Vec<&ExactPoint> = split.p1().iter().collect();
    let grid: Vec<(usize, usize)> = (0..axis.len())
        .flat_map(|u| (0..axis.len()).map(move |v| (u, v)))
        .collect();
    let max = par::max_map(&grid, |&(u, v)| {
        let a = axis[u];
        let b = axis[v];
        let mut local_max = 0u64;
        for p in split.p2().iter() {
            let d = &a.x - &p.x;
            let mut cands: BTreeSet<ExactPoint> = BTreeSet::new();
            for qx in [&b.x + &d, &b.x - &d] {
                for qy in [p.y.clone(), -p.y.clone()] {
                    cands.insert(ExactPoint::new(qx.clone(), qy));
                }
            }
            let mut count = cands.iter().filter(|c| p2_set.contains(c)).count() as u64;
            // The pair (b, q) = (a, p) does not count as a completion.
            if a == b {
                count -= 1; // q = p is always a candidate and always present
            }
            local_max = local_max.max(count);
        }
        local_max
    })
    .unwrap_or(0);
    let report = ChoiceBoundReport {
        max_observed: max,
        bound: 4,
        triples_tested: (axis.len() * axis.len() * split.p2().len()) as u64,
    };
    if report.max_observed > report.bound {
        return Err(Error::BoundViolation {
            what: "aligned completions per (a, b, p)".into(),
            observed: report.max_observed,
            allowed: report.bound,
        });
    }
    Ok(report)
}

/// Curve-class multiplicity versus vertical-line richness.
#[derive(Debug, Clone, Serialize)]
pub struct MultiplicityReport {
    /// Largest class multiplicity in the family.
    pub t: u64,
    /// Largest number of `P2` points sharing an x-coordinate.
    pub v_max: u64,
}

/// Check `t <= 2 * v_max`: a class fixes `p_x` and `q_x`, and on each of
/// those vertical lines at most two points (`+-y`) yield the same key.
pub fn multiplicity_vs_vertical(p2: &PointSet, family: &HyperbolaFamily) -> Result<MultiplicityReport> {
    let mut column: HashMap<&Rat, u64> = HashMap::new();
    for p in p2.iter() {
        *column.entry(&p.x).or_insert(0) += 1;
    }
    let v_max = column.values().copied().max().unwrap_or(0);
    let t = family.max_multiplicity();
    let report = MultiplicityReport { t, v_max };
    if t > 2 * v_max {
        return Err(Error::BoundViolation {
            what: "curve-class multiplicity vs vertical richness".into(),
            observed: t,
            allowed: 2 * v_max,
        });
    }
    Ok(report)
}

/// The x-coordinate of a richest vertical line of `p2` (most points; largest
/// x among ties), with its point count.
pub fn richest_vertical_line(p2: &PointSet) -> (Rat, u64) {
    let mut column: BTreeMap<&Rat, u64> = BTreeMap::new();
    for p in p2.iter() {
        *column.entry(&p.x).or_insert(0) += 1;
    }
    let (x, c) = column
        .into_iter()
        .max_by(|a, b| (a.1, a.0).cmp(&(b.1, b.0)))
        .expect("validated point sets are nonempty");
    (x.clone(), c)
}

/// Sizes of the difference set and the shifted-square sumset extracted from
/// a line configuration.
#[derive(Debug, Clone, Serialize)]
pub struct EnrProducts {
    pub a_size: u64,
    pub b_size: u64,
    /// `|A - A|` (0 is always a member).
    pub diff_size: u64,
    /// `|A^2 + B^2|` over all pairs.
    pub sumset_size: u64,
    /// `|A - A| * |A^2 + B^2|`.
    pub product: u128,
    pub max_side: u64,
}

/// Compute `|A - A|` and `|A^2 + B^2|` for explicit sets.
pub fn enr_products(a: &[Rat], b: &[Rat]) -> EnrProducts {
    let mut diff: BTreeSet<Rat> = BTreeSet::new();
    for x in a {
        for y in a {
            diff.insert(x - y);
        }
    }
    let squares_b: Vec<Rat> = b.iter().map(|y| y * y).collect();
    let mut sums: BTreeSet<Rat> = BTreeSet::new();
    for x in a {
        let x2 = x * x;
        for y2 in &squares_b {
            sums.insert(&x2 + y2);
        }
    }
    let diff_size = diff.len() as u64;
    let sumset_size = sums.len() as u64;
    EnrProducts {
        a_size: a.len() as u64,
        b_size: b.len() as u64,
        diff_size,
        sumset_size,
        product: diff_size as u128 * sumset_size as u128,
        max_side: diff_size.max(sumset_size),
    }
}

/// Extract the configuration's canonical `A` and `B`: `A` is the x-coordinate
/// set of `P1` shifted so the richest vertical line of `P2` sits at 0, and
/// `B` is the y-coordinate set on that line.
pub fn enr_for_split(split: &LineSplit) -> EnrProducts {
    let (x_v, _) = richest_vertical_line(split.p2());
    let a: Vec<Rat> = split.p1().iter().map(|pt| &pt.x - &x_v).collect();
    let b: Vec<Rat> = split
        .p2()
        .iter()
        .filter(|p| p.x == x_v)
        .map(|p| p.y.clone())
        .collect();
    enr_products(&a, &b)
}

/// Number of intersection points of two curves given by representative cross
/// pairs from *distinct* classes. Always at most 2.
///
/// The difference of the defining polynomials is linear, so one variable is
/// eliminated by substitution and the real roots of the resulting univariate
/// polynomial (degree at most 2) are counted exactly.
pub fn hyperbola_pair_intersections(
    pa: &ExactPoint,
    qa: &ExactPoint,
    pb: &ExactPoint,
    qb: &ExactPoint,
) -> Result<u32> {
    if hyperbola_class_key(pa, qa) == hyperbola_class_key(pb, qb) {
        return Err(Error::DegenerateCurvePair {
            reason: "identical curve class".into(),
        });
    }
    let two = Rat::from_integer(2.into());
    let gx = &two * &(&pb.x - &pa.x);
    let gy = &two * &(&qa.x - &qb.x);
    let c = |p: &ExactPoint, q: &ExactPoint| {
        &p.x * &p.x + &p.y * &p.y - &q.x * &q.x - &q.y * &q.y
    };
    let g0 = c(pa, qa) - c(pb, qb);
    let zero = Rat::from_integer(0.into());

    let fa = hyperbola_poly(pa, qa);
    let reduced: UniPoly = if gy != zero {
        // y = (-g0 - gx * x) / gy
        let line = UniPoly::from_coeffs(vec![-&g0 / &gy, -&gx / &gy]);
        fa.substitute(Var::Y, &line)
    } else if gx != zero {
        // x = -g0 / gx, leaving a polynomial in y.
        let x0 = UniPoly::constant(-&g0 / &gx);
        fa.substitute(Var::X, &x0)
    } else {
        // Distinct classes with identical linear parts differ in the
        // constant: parallel curves, no intersection.
        debug_assert!(g0 != zero);
        return Ok(0);
    };
    if reduced.is_zero() {
        return Err(Error::InfiniteIntersection {
            reason: "curve difference vanished identically".into(),
        });
    }
    let roots = reduced.count_real_roots(&RootInterval::WholeLine)? as u32;
    if roots > 2 {
        return Err(Error::BoundViolation {
            what: "intersections of two distinct curves".into(),
            observed: roots as u64,
            allowed: 2,
        });
    }
    Ok(roots)
}

/// Result of checking pairwise intersections across a family.
#[derive(Debug, Clone, Serialize)]
pub struct PairwiseIntersectionReport {
    pub pairs_tested: u64,
    pub max_intersections: u32,
    /// True when every pair of distinct classes was tested.
    pub exhaustive: bool,
}

/// Verify the two-point bound over the family: exhaustively when the number
/// of distinct classes keeps the pair count within `max_pairs`, otherwise on
/// `max_pairs` deterministically seeded random pairs.
pub fn degrees_of_freedom_check(
    p2: &PointSet,
    family: &HyperbolaFamily,
    max_pairs: u64,
    seed: u64,
) -> Result<PairwiseIntersectionReport> {
    use rand::Rng;
    let reps = family.class_representatives(p2);
    let k = reps.len() as u64;
    let total_pairs = k.saturating_mul(k.saturating_sub(1)) / 2;
    let mut max_intersections = 0u32;
    let mut pairs_tested = 0u64;
    let exhaustive = total_pairs <= max_pairs;
    if exhaustive {
        for u in 0..reps.len() {
            for v in (u + 1)..reps.len() {
                let n = hyperbola_pair_intersections(&reps[u].0, &reps[u].1, &reps[v].0, &reps[v].1)?;
                max_intersections = max_intersections.max(n);
                pairs_tested += 1;
            }
        }
    } else {
        let mut rng = crate::geom::rng_from_seed(seed);
        while pairs_tested < max_pairs {
            let u = rng.gen_range(0..reps.len());
            let v = rng.gen_range(0..reps.len());
            if u == v {
                continue;
            }
            let n = hyperbola_pair_intersections(&reps[u].0, &reps[u].1, &reps[v].0, &reps[v].1)?;
            max_intersections = max_intersections.max(n);
            pairs_tested += 1;
        }
    }
    Ok(PairwiseIntersectionReport {
        pairs_tested,
        max_intersections,
        exhaustive,
    })
}

/// Check that at most one curve class passes through any three distinct grid
/// points, over `samples` deterministically seeded random triples (or every
/// triple if there are fewer). Returns the maximum class count observed.
pub fn three_point_check(
    split: &LineSplit,
    family: &HyperbolaFamily,
    samples: u64,
    seed: u64,
) -> Result<u64> {
    use rand::Rng;
    let xs: Vec<Rat> = split.p1().iter().map(|a| a.x.clone()).collect();
    let grid: Vec<(Rat, Rat)> = xs
        .iter()
        .flat_map(|x| xs.iter().map(move |y| (x.clone(), y.clone())))
        .collect();
    if grid.len() < 3 {
        return Ok(0);
    }
    let reps = family.class_representatives(split.p2());
    let count_through = |tri: [&(Rat, Rat); 3]| -> u64 {
        reps.iter()
            .filter(|(p, q)| {
                tri.iter()
                    .all(|(x, y)| hyperbola_contains(p, q, x, y))
            })
            .count() as u64
    };
    let mut max_classes = 0u64;
    let total_triples = {
        let g = grid.len() as u64;
        g * (g - 1) * (g - 2) / 6
    };
    if total_triples <= samples {
        for i in 0..grid.len() {
            for j in (i + 1)..grid.len() {
                for k in (j + 1)..grid.len() {
                    max_classes = max_classes.max(count_through([&grid[i], &grid[j], &grid[k]]));
                }
            }
        }
    } else {
        let mut rng = crate::geom::rng_from_seed(seed);
        let mut done = 0u64;
        while done < samples {
            let i = rng.gen_range(0..grid.len());
            let j = rng.gen_range(0..grid.len());
            let k = rng.gen_range(0..grid.len());
            if i == j || j == k || i == k {
                continue;
            }
            max_classes = max_classes.max(count_through([&grid[i], &grid[j], &grid[k]]));
            done += 1;
        }
    }
    if max_classes > 1 {
        return Err(Error::BoundViolation {
            what: "curve classes through three grid points".into(),
            observed: max_classes,
            allowed: 1,
        });
    }
    Ok(max_classes)
}

/// Additive-energy report embedded in the ledger.
#[derive(Debug, Clone, Serialize)]
pub struct EnrSummary {
    pub a_size: u64,
    pub b_size: u64,
    pub diff_size: u64,
    pub sumset_size: u64,
    pub product: u128,
    pub max_side: u64,
    /// `ln(max_side) / ln(a_size)` (NaN-free: 0 when degenerate).
    pub growth_exponent: f64,
}

/// Full line-framework ledger for one configuration. All counting fields are
/// exact; the float fields are derived for reporting only.
#[derive(Debug, Clone, Serialize)]
pub struct LineLedger {
    pub n: u64,
    pub alpha: f64,
    #[serde(rename = "D")]
    pub d: u64,
    pub q_total: u64,
    pub q1: u64,
    pub q2: u64,
    pub incidences: u64,
    pub t: u64,
    pub gamma_size: u64,
    pub v_max: u64,
    pub enr: EnrSummary,
    /// Exact Cauchy-Schwarz lower bound for `q_total`, as a canonical
    /// rational string.
    pub cs_lower: String,
    pub class_count: u64,
    pub skipped_aligned: u64,
}

/// Compute the complete ledger, enforcing the central cross-check
/// `q2 = incidences` and the multiplicity bound exactly.
pub fn line_ledger(split: &LineSplit) -> Result<LineLedger> {
    let stats = build_quadruple_stats(split)?;
    let family = build_hyperbola_family(split.p2());
    let incidences = count_incidences(split, &family);
    if incidences != stats.q2 {
        return Err(Error::CrossCheckFailed {
            what: "generic quadruples vs grid-curve incidences".into(),
            left: stats.q2.to_string(),
            right: incidences.to_string(),
        });
    }
    let mult = multiplicity_vs_vertical(split.p2(), &family)?;
    let enr = enr_for_split(split);
    let union = {
        let mut pts: Vec<ExactPoint> = split.p1().iter().cloned().collect();
        pts.extend(split.p2().iter().cloned());
        PointSet::new("line-union", pts)?
    };
    let d_union = distinct_distances(&union)?;
    let n = split.n() as u64;
    let alpha = if n > 1 {
        (split.p1().len() as f64).ln() / (n as f64).ln()
    } else {
        0.0
    };
    let growth_exponent = if enr.a_size > 1 && enr.max_side > 0 {
        (enr.max_side as f64).ln() / (enr.a_size as f64).ln()
    } else {
        0.0
    };
    Ok(LineLedger {
        n,
        alpha,
        d: d_union as u64,
        q_total: stats.q_total,
        q1: stats.q1,
        q2: stats.q2,
        incidences,
        t: mult.t,
        gamma_size: family.gamma_size(),
        v_max: mult.v_max,
        enr: EnrSummary {
            a_size: enr.a_size,
            b_size: enr.b_size,
            diff_size: enr.diff_size,
            sumset_size: enr.sumset_size,
            product: enr.product,
            max_side: enr.max_side,
            growth_exponent,
        },
        cs_lower: stats.cauchy_schwarz_lower.to_string(),
        class_count: family.class_count(),
        skipped_aligned: family.skipped_aligned(),
    })
}

//! Distance-class bookkeeping: distinct distances, bipartite distance
//! classes, and heavy line / heavy circle detection.
//!
//! All comparisons are between exact squared distances. The only floating
//! point in this module is the report-level exponent `ln(count) / ln(n)`.
//!
//! The `*_seq` variants are the single-threaded reference paths; the unsuffixed
//! entry points dispatch to the rayon implementation when the `parallel`
//! feature (default) is enabled. Results are identical in all modes.

use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use crate::error::{Error, Result};
use crate::exact::{small_int, Rat};
use crate::geom::{ExactPoint, PointSet};
use crate::par;

/// Canonical description of a line, independent of which points produced it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum LineKey {
    Vertical { x: Rat },
    Sloped { slope: Rat, intercept: Rat },
}

impl LineKey {
    fn through(anchor: &ExactPoint, slope: &Option<Rat>) -> LineKey {
        match slope {
            None => LineKey::Vertical {
                x: anchor.x.clone(),
            },
            Some(s) => LineKey::Sloped {
                slope: s.clone(),
                intercept: &anchor.y - s * &anchor.x,
            },
        }
    }
}

/// Canonical description of a circle: center and squared radius.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CircleKey {
    pub cx: Rat,
    pub cy: Rat,
    pub r2: Rat,
}

/// Number of distinct (squared) distances within one point set.
pub fn distinct_distances(ps: &PointSet) -> Result<usize> {
    #[cfg(feature = "parallel")]
    {
        distinct_distances_par(ps)
    }
    #[cfg(not(feature = "parallel"))]
    {
        distinct_distances_seq(ps)
    }
}

/// Coordinates as machine integers, when that is exact.
///
/// With |coordinates| < 2^20 the squared distances fit comfortably in i64, so
/// the integer path computes exactly the same values as the rational path.
fn int_coords(ps: &PointSet) -> Option<Vec<(i64, i64)>> {
    ps.iter()
        .map(|p| Some((small_int(&p.x, 1 << 20)?, small_int(&p.y, 1 << 20)?)))
        .collect()
}

fn int_sq(a: (i64, i64), b: (i64, i64)) -> i64 {
    let dx = a.0 - b.0;
    let dy = a.1 - b.1;
    dx * dx + dy * dy
}

pub fn distinct_distances_seq(ps: &PointSet) -> Result<usize> {
    check_at_least(ps.len(), 2)?;
    if let Some(ints) = int_coords(ps) {
        let mut set = HashSet::new();
        for (i, a) in ints.iter().enumerate() {
            for b in &ints[i + 1..] {
                set.insert(int_sq(*a, *b));
            }
        }
        return Ok(set.len());
    }
    let pts = ps.points();
    let mut set = BTreeSet::new();
    for (i, a) in pts.iter().enumerate() {
        for b in &pts[i + 1..] {
            set.insert(a.squared_dist(b));
        }
    }
    Ok(set.len())
}

#[cfg(feature = "parallel")]
pub fn distinct_distances_par(ps: &PointSet) -> Result<usize> {
    use rayon::prelude::*;
    check_at_least(ps.len(), 2)?;
    if let Some(ints) = int_coords(ps) {
        let set = (0..ints.len())
            .into_par_iter()
            .fold(HashSet::new, |mut acc, i| {
                for j in i + 1..ints.len() {
                    acc.insert(int_sq(ints[i], ints[j]));
                }
                acc
            })
            .reduce(HashSet::new, |mut a, b| {
                a.extend(b);
                a
            });
        return Ok(set.len());
    }
    let pts = ps.points();
    let set = (0..pts.len())
        .into_par_iter()
        .fold(BTreeSet::new, |mut acc, i| {
            for j in i + 1..pts.len() {
                acc.insert(pts[i].squared_dist(&pts[j]));
            }
            acc
        })
        .reduce(BTreeSet::new, |mut a, b| {
            a.extend(b);
            a
        });
    Ok(set.len())
}

fn check_at_least(got: usize, needed: usize) -> Result<()> {
    if got < needed {
        Err(Error::TooFewPoints { needed, got })
    } else {
        Ok(())
    }
}

/// Cross distances between two disjoint point sets, partitioned into classes
/// of equal squared distance. Class keys are the squared distances; within a
/// class, member pairs are `(index into left, index into right)` in
/// lexicographic order.
#[derive(Debug, Clone)]
pub struct DistanceClassPartition {
    classes: BTreeMap<Rat, Vec<(u32, u32)>>,
    n_left: usize,
    n_right: usize,
}

impl DistanceClassPartition {
    /// Number of distance classes (the bipartite distinct-distance count).
    pub fn d(&self) -> usize {
        self.classes.len()
    }

    pub fn n_left(&self) -> usize {
        self.n_left
    }

    pub fn n_right(&self) -> usize {
        self.n_right
    }

    /// Class sizes in squared-distance order.
    pub fn class_sizes(&self) -> Vec<u64> {
        self.classes.values().map(|v| v.len() as u64).collect()
    }

    pub fn classes(&self) -> impl Iterator<Item = (&Rat, &[(u32, u32)])> {
        self.classes.iter().map(|(k, v)| (k, v.as_slice()))
    }

    /// Total membership; must equal `n_left * n_right`.
    pub fn total_pairs(&self) -> u64 {
        self.classes.values().map(|v| v.len() as u64).sum()
    }
}

/// Build the distance-class partition between two disjoint nonempty sets.
pub fn bipartite_distances(left: &PointSet, right: &PointSet) -> Result<DistanceClassPartition> {
    check_at_least(left.len(), 1)?;
    check_at_least(right.len(), 1)?;
    let left_points: HashSet<&ExactPoint> = left.iter().collect();
    let shared: Vec<&ExactPoint> = right.iter().filter(|p| left_points.contains(*p)).collect();
    if let Some(first) = shared.first() {
        return Err(Error::Overlap {
            count: shared.len(),
            x: first.x.to_string(),
            y: first.y.to_string(),
        });
    }

    let rp = right.points();
    let rows: Vec<Vec<(Rat, (u32, u32))>> = par::flat_map_ordered(
        &(0..left.len() as u32).collect::<Vec<_>>(),
        |&i| {
            let a = &left.points()[i as usize];
            vec![rp
                .iter()
                .enumerate()
                .map(|(j, b)| (a.squared_dist(b), (i, j as u32)))
                .collect::<Vec<_>>()]
        },
    );
    let mut classes: BTreeMap<Rat, Vec<(u32, u32)>> = BTreeMap::new();
    for row in rows {
        for (d, pair) in row {
            classes.entry(d).or_default().push(pair);
        }
    }
    Ok(DistanceClassPartition {
        classes,
        n_left: left.len(),
        n_right: right.len(),
    })
}

/// Largest number of collinear points, with the canonical description of a
/// witnessing line. Ties are broken by the largest `LineKey`, so the result
/// is deterministic and independent of thread count.
pub fn max_collinear(ps: &PointSet) -> Result<(LineKey, usize)> {
    check_at_least(ps.len(), 2)?;
    let pts = ps.points();
    let idx: Vec<u32> = (0..pts.len() as u32).collect();
    let best = par::max_map(&idx, |&i| {
        let anchor = &pts[i as usize];
        // Group the other points by slope as seen from the anchor; `None`
        // encodes the vertical slope.
        let mut groups: HashMap<Option<Rat>, usize> = HashMap::new();
        for (j, other) in pts.iter().enumerate() {
            if j == i as usize {
                continue;
            }
            let dx = &other.x - &anchor.x;
            let slope = if dx == Rat::from_integer(0.into()) {
                None
            } else {
                Some((&other.y - &anchor.y) / dx)
            };
            *groups.entry(slope).or_insert(0) += 1;
        }
        groups
            .into_iter()
            .map(|(slope, c)| (c + 1, LineKey::through(anchor, &slope)))
            .max()
            .expect("at least two points, so at least one slope group")
    })
    .expect("nonempty index list");
    Ok((best.1, best.0))
}

/// Largest number of concyclic points, with the witnessing circle.
///
/// Enumerates all triples (cubic in `n` — callers enforce their own size
/// guard), keys each non-collinear triple by its exact circumcircle, then
/// recounts membership of the best circle. Returns `None` when every triple
/// is collinear. Ties are broken by the largest `CircleKey`.
pub fn max_concyclic(ps: &PointSet) -> Result<Option<(CircleKey, usize)>> {
    check_at_least(ps.len(), 3)?;
    let pts = ps.points();
    let idx: Vec<u32> = (0..pts.len() as u32).collect();
    let maps: Vec<HashMap<CircleKey, u32>> = par::flat_map_ordered(&idx, |&i| {
        let mut local: HashMap<CircleKey, u32> = HashMap::new();
        for j in (i as usize + 1)..pts.len() {
            for k in (j + 1)..pts.len() {
                if let Some(key) = circumcircle(&pts[i as usize], &pts[j], &pts[k]) {
                    *local.entry(key).or_insert(0) += 1;
                }
            }
        }
        vec![local]
    });
    let mut triples: HashMap<CircleKey, u32> = HashMap::new();
    for m in maps {
        for (k, c) in m {
            *triples.entry(k).or_insert(0) += c;
        }
    }
    let Some(best) = triples
        .into_iter()
        .map(|(key, c)| (c, key))
        .max()
        .map(|(_, key)| key)
    else {
        return Ok(None);
    };
    // Triple counts grow monotonically with membership, so the circle with
    // the most triples is the one with the most points; recount it exactly.
    let count = pts
        .iter()
        .filter(|p| {
            let dx = &p.x - &best.cx;
            let dy = &p.y - &best.cy;
            &dx * &dx + &dy * &dy == best.r2
        })
        .count();
    Ok(Some((best, count)))
}

/// Exact circumcircle of a triple, `None` when collinear.
pub fn circumcircle(a: &ExactPoint, b: &ExactPoint, c: &ExactPoint) -> Option<CircleKey> {
    let two = Rat::from_integer(2.into());
    let d = &two
        * (&a.x * (&b.y - &c.y) + &b.x * (&c.y - &a.y) + &c.x * (&a.y - &b.y));
    if d == Rat::from_integer(0.into()) {
        return None;
    }
    let na = a.norm2();
    let nb = b.norm2();
    let nc = c.norm2();
    let cx = (&na * (&b.y - &c.y) + &nb * (&c.y - &a.y) + &nc * (&a.y - &b.y)) / &d;
    let cy = (&na * (&c.x - &b.x) + &nb * (&a.x - &c.x) + &nc * (&b.x - &a.x)) / &d;
    let dx = &a.x - &cx;
    let dy = &a.y - &cy;
    let r2 = &dx * &dx + &dy * &dy;
    Some(CircleKey { cx, cy, r2 })
}

/// Heavy-curve summary for one point set.
#[derive(Debug, Clone, Serialize)]
pub struct HeavyCurve {
    pub count: u64,
    /// `ln(count) / ln(n)`.
    pub exponent: f64,
}

/// Top-level analysis report; serializes to the documented shape
/// `{n, D, heavy_line: {count, exponent}, heavy_circle: {count, exponent}}`
/// (`heavy_circle` is null when every triple is collinear).
#[derive(Debug, Clone, Serialize)]
pub struct AnalyzeReport {
    pub n: u64,
    #[serde(rename = "D")]
    pub d: u64,
    pub heavy_line: HeavyCurve,
    pub heavy_circle: Option<HeavyCurve>,
}

fn curve_exponent(count: u64, n: usize) -> f64 {
    (count as f64).ln() / (n as f64).ln()
}

/// Full analysis of one point set. Cubic in `n` via `max_concyclic` — callers
/// enforce their size guard before invoking this.
pub fn analyze(ps: &PointSet) -> Result<AnalyzeReport> {
    check_at_least(ps.len(), 3)?;
    let d = distinct_distances(ps)? as u64;
    let (_, line_count) = max_collinear(ps)?;
    let circle = max_concyclic(ps)?;
    Ok(AnalyzeReport {
        n: ps.len() as u64,
        d,
        heavy_line: HeavyCurve {
            count: line_count as u64,
            exponent: curve_exponent(line_count as u64, ps.len()),
        },
        heavy_circle: circle.map(|(_, c)| HeavyCurve {
            count: c as u64,
            exponent: curve_exponent(c as u64, ps.len()),
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int};
    use crate::geom::{lattice, line_points, LineSpacing};

    #[test]
    fn distinct_distances_small_lattices() {
        // 3x3: squared distances {1, 2, 4, 5, 8}.
        assert_eq!(distinct_distances(&lattice(3, 3).unwrap()).unwrap(), 5);
        // 2x2 unit square: {1, 2}.
        assert_eq!(distinct_distances(&lattice(2, 2).unwrap()).unwrap(), 2);
        // 4x2: {1, 2, 4, 5, 9, 10}.
        assert_eq!(distinct_distances(&lattice(4, 2).unwrap()).unwrap(), 6);
    }

    #[test]
    fn distinct_distances_collinear_evenly_spaced() {
        for n in [2usize, 3, 7, 12] {
            let ps = line_points(n, &LineSpacing::Evenly, &rat_int(0), &rat_int(0), 0).unwrap();
            assert_eq!(distinct_distances(&ps).unwrap(), n - 1);
        }
    }

    #[test]
    fn distinct_distances_geometric_line() {
        let ps = line_points(
            4,
            &LineSpacing::Geometric { ratio: rat_int(2) },
            &rat_int(0),
            &rat_int(0),
            0,
        )
        .unwrap();
        // Pairwise differences of {1, 2, 4, 8}: {1, 2, 3, 4, 6, 7}.
        assert_eq!(distinct_distances(&ps).unwrap(), 6);
    }

    #[test]
    fn distinct_distances_needs_two_points() {
        let one = PointSet::new("one", vec![ExactPoint::from_ints(0, 0)]).unwrap();
        assert!(matches!(
            distinct_distances(&one),
            Err(Error::TooFewPoints { .. })
        ));
    }

    #[test]
    fn rational_and_integer_paths_agree() {
        // Scale a lattice by 1/3: forces the rational path; counts must match.
        let l = lattice(4, 3).unwrap();
        let scaled = PointSet::new(
            "scaled",
            l.iter()
                .map(|p| ExactPoint::new(&p.x / rat_int(3), &p.y / rat_int(3)))
                .collect(),
        )
        .unwrap();
        assert_eq!(
            distinct_distances(&l).unwrap(),
            distinct_distances(&scaled).unwrap()
        );
        assert_eq!(
            distinct_distances_seq(&l).unwrap(),
            distinct_distances_seq(&scaled).unwrap()
        );
    }

    #[test]
    fn seq_and_default_paths_agree() {
        let l = lattice(5, 4).unwrap();
        assert_eq!(
            distinct_distances(&l).unwrap(),
            distinct_distances_seq(&l).unwrap()
        );
    }

    #[test]
    fn bipartite_classes_bookkeeping() {
        // P1 = {(0,0), (1,0)}, P2 = {(0,1), (1,1)}: classes {1: 2, 2: 2}.
        let p1 = PointSet::new(
            "p1",
            vec![ExactPoint::from_ints(0, 0), ExactPoint::from_ints(1, 0)],
        )
        .unwrap();
        let p2 = PointSet::new(
            "p2",
            vec![ExactPoint::from_ints(0, 1), ExactPoint::from_ints(1, 1)],
        )
        .unwrap();
        let part = bipartite_distances(&p1, &p2).unwrap();
        assert_eq!(part.d(), 2);
        assert_eq!(part.class_sizes(), vec![2, 2]);
        assert_eq!(part.total_pairs(), 4);
    }

    #[test]
    fn bipartite_row_split_of_wide_lattice() {
        // 4x2 lattice split at y = 0: cross squared distances {1, 2, 5, 10}.
        let l = lattice(4, 2).unwrap();
        let (on, off) = l.split_by_x_axis();
        let p1 = PointSet::new("row0", on).unwrap();
        let p2 = PointSet::new("row1", off).unwrap();
        let part = bipartite_distances(&p1, &p2).unwrap();
        assert_eq!(part.d(), 4);
        assert_eq!(part.total_pairs(), 16);
    }

    #[test]
    fn bipartite_rejects_overlap_and_empty() {
        let p1 = lattice(2, 1).unwrap();
        let p2 = PointSet::new("x", vec![ExactPoint::from_ints(0, 0)]).unwrap();
        assert!(matches!(
            bipartite_distances(&p1, &p2),
            Err(Error::Overlap { count: 1, .. })
        ));
        let empty = PointSet::new("e", vec![]).unwrap();
        assert!(bipartite_distances(&p1, &empty).is_err());
    }

    #[test]
    fn bipartite_d_at_most_union_d() {
        let l = lattice(4, 3).unwrap();
        let (on, off) = l.split_by_x_axis();
        let p1 = PointSet::new("p1", on).unwrap();
        let p2 = PointSet::new("p2", off).unwrap();
        let d_cross = bipartite_distances(&p1, &p2).unwrap().d();
        let d_all = distinct_distances(&l).unwrap();
        assert!(d_cross <= d_all);
    }

    #[test]
    fn max_collinear_on_lattices_and_lines() {
        for m in 2..=8 {
            let (_, c) = max_collinear(&lattice(m, m).unwrap()).unwrap();
            assert_eq!(c, m, "m x m lattice has rows of exactly m");
        }
        let (_, c) = max_collinear(&lattice(4, 2).unwrap()).unwrap();
        assert_eq!(c, 4);
        let (key, c) = max_collinear(&lattice(3, 1).unwrap()).unwrap();
        assert_eq!(c, 3);
        assert_eq!(
            key,
            LineKey::Sloped {
                slope: rat_int(0),
                intercept: rat_int(0)
            }
        );
    }

    #[test]
    fn max_collinear_vertical_line() {
        let ps = PointSet::new(
            "v",
            vec![
                ExactPoint::from_ints(2, 0),
                ExactPoint::from_ints(2, 1),
                ExactPoint::from_ints(2, 5),
                ExactPoint::from_ints(0, 7),
            ],
        )
        .unwrap();
        let (key, c) = max_collinear(&ps).unwrap();
        assert_eq!(c, 3);
        assert_eq!(key, LineKey::Vertical { x: rat_int(2) });
    }

    #[test]
    fn circumcircle_of_unit_square() {
        let key = circumcircle(
            &ExactPoint::from_ints(0, 0),
            &ExactPoint::from_ints(1, 0),
            &ExactPoint::from_ints(0, 1),
        )
        .unwrap();
        assert_eq!(key.cx, rat(1, 2));
        assert_eq!(key.cy, rat(1, 2));
        assert_eq!(key.r2, rat(1, 2));
        assert!(circumcircle(
            &ExactPoint::from_ints(0, 0),
            &ExactPoint::from_ints(1, 1),
            &ExactPoint::from_ints(2, 2),
        )
        .is_none());
    }

    #[test]
    fn max_concyclic_on_small_sets() {
        // Unit square: all four corners on one circle.
        let (key, c) = max_concyclic(&lattice(2, 2).unwrap()).unwrap().unwrap();
        assert_eq!(c, 4);
        assert_eq!((key.cx, key.cy, key.r2), (rat(1, 2), rat(1, 2), rat(1, 2)));

        // 3x3 lattice: several circles carry 4 points (e.g. center (1,1)
        // radius 1, or center (3/2,3/2) through (0,0),(0,1),(1,2),(2,2));
        // the largest-key tiebreak picks (3/2, 3/2, 5/2).
        let (key, c) = max_concyclic(&lattice(3, 3).unwrap()).unwrap().unwrap();
        assert_eq!(c, 4);
        assert_eq!(
            (key.cx, key.cy, key.r2),
            (rat(3, 2), rat(3, 2), rat(5, 2))
        );

        // All-collinear input: no circle at all.
        let collinear = lattice(5, 1).unwrap();
        assert!(max_concyclic(&collinear).unwrap().is_none());
    }

    #[test]
    fn invariance_under_translation_and_rotation() {
        let l = lattice(4, 3).unwrap();
        let moved = l.translated(&rat(7, 3), &rat(-2, 5)).rotated345();
        assert_eq!(
            distinct_distances(&l).unwrap(),
            distinct_distances(&moved).unwrap()
        );
        assert_eq!(
            max_collinear(&l).unwrap().1,
            max_collinear(&moved).unwrap().1
        );
        assert_eq!(
            max_concyclic(&l).unwrap().unwrap().1,
            max_concyclic(&moved).unwrap().unwrap().1
        );
    }

    #[test]
    fn analyze_report_shape() {
        let r = analyze(&lattice(3, 3).unwrap()).unwrap();
        assert_eq!(r.n, 9);
        assert_eq!(r.d, 5);
        assert_eq!(r.heavy_line.count, 3);
        assert_eq!(r.heavy_circle.as_ref().unwrap().count, 4);
        let text = serde_json::to_string(&r).unwrap();
        assert!(text.contains("\"D\":5"));
        assert!(text.contains("heavy_line"));
        assert!(text.contains("heavy_circle"));

        let flat = analyze(&lattice(4, 1).unwrap()).unwrap();
        assert!(flat.heavy_circle.is_none());
    }
}

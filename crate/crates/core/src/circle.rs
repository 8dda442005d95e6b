//! Circle framework: one part of the configuration on the unit circle.
//!
//! Points `a, b` range over `P1` (on the unit circle, off the coordinate
//! axes) and `p, q` over the ambient part `P2` (off the axes). Because
//! `|a| = |b| = 1`, the equation `dist2(a, p) = dist2(b, q)` is equivalent
//! to the linear condition
//!
//! ```text
//! <a, p> - <b, q> = A_pq,   A_pq = (|p|^2 - |q|^2) / 2,
//! ```
//!
//! cutting a curve out of the torus `S^1 x S^1` in 4-space. Pairs with
//! `|p| = |q|` form the aligned (`q1`) side of the quadruple split and are
//! excluded from the family; for valid configurations distinct pairs always
//! trace distinct curves (checked by [`same_curve_conditions`]: a scaling
//! `(p', q') = (lambda p, lambda q)` forces `lambda^2 = lambda`). The
//! generic quadruple count `q2` equals the number of incidences between
//! `V = P1 x P1` and the curve family; [`circle_ledger`] re-checks that
//! identity exactly.
//!
//! Two distinct curves meet in at most 4 points of the complex torus.
//! [`intersection_count_4d`] counts both real and complex intersections
//! exactly by eliminating one circle factor (three cases, depending on
//! which of the coefficient matrices is invertible) and running exact
//! root counts on the resulting univariate polynomial under the rational
//! parametrization of the circle.

use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use crate::distance::{bipartite_distances, distinct_distances};
use crate::error::{Error, Result};
use crate::exact::{rat_int, Rat, RootInterval, UniPoly};
use crate::geom::{ExactPoint, PointSet};
use crate::par;
use crate::quad::{self, QuadrupleStats};

/// Cap on `|P1| * |P2|` for the literal quadruple enumeration oracle.
pub const ENUMERATION_PAIR_CAP: u64 = 100_000;

/// A configuration split for the circle framework: `p1` lies on the unit
/// circle and off the coordinate axes, `p2` lies off the coordinate axes,
/// and the parts are disjoint.
#[derive(Debug, Clone)]
pub struct CircleSplit {
    p1: PointSet,
    p2: PointSet,
}

impl CircleSplit {
    pub fn new(p1: PointSet, p2: PointSet) -> Result<Self> {
        if p1.is_empty() || p2.is_empty() {
            return Err(Error::TooFewPoints {
                needed: 1,
                got: p1.len().min(p2.len()),
            });
        }
        for a in p1.iter() {
            if !a.on_unit_circle() {
                return Err(Error::misplaced(&a.x, &a.y, "expected on the unit circle"));
            }
            if a.on_coordinate_axis() {
                return Err(Error::misplaced(&a.x, &a.y, "expected off the coordinate axes"));
            }
        }
        for p in p2.iter() {
            if p.on_coordinate_axis() {
                return Err(Error::misplaced(&p.x, &p.y, "expected off the coordinate axes"));
            }
        }
        let p1_set: HashSet<&ExactPoint> = p1.iter().collect();
        let shared: Vec<&ExactPoint> = p2.iter().filter(|p| p1_set.contains(p)).collect();
        if let Some(first) = shared.first() {
            return Err(Error::Overlap {
                count: shared.len(),
                x: first.x.to_string(),
                y: first.y.to_string(),
            });
        }
        Ok(CircleSplit { p1, p2 })
    }

    /// Split an arbitrary set by unit-circle membership.
    pub fn from_pointset(ps: &PointSet) -> Result<Self> {
        let (on, off) = ps.split_by_unit_circle();
        CircleSplit::new(
            PointSet::new(format!("{}/circle", ps.label()), on)?,
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

/// Quadruple statistics with the circle alignment key `|p|^2`.
pub fn build_quadruple_stats(split: &CircleSplit) -> Result<QuadrupleStats> {
    let classes = bipartite_distances(split.p1(), split.p2())?;
    let pts = split.p2().points();
    Ok(quad::stats_from_classes(&classes, |j| {
        pts[j as usize].norm2()
    }))
}

/// Independent oracle: enumerate every ordered pair of cross pairs.
/// Refuses when `|P1| * |P2| >` [`ENUMERATION_PAIR_CAP`].
pub fn quadruple_enumeration_oracle(split: &CircleSplit) -> Result<QuadrupleStats> {
    quadruple_enumeration_oracle_with_cap(split, ENUMERATION_PAIR_CAP)
}

/// [`quadruple_enumeration_oracle`] with an explicit pair cap, for callers
/// that deliberately lift the default guard.
pub fn quadruple_enumeration_oracle_with_cap(
    split: &CircleSplit,
    pair_cap: u64,
) -> Result<QuadrupleStats> {
    let pts = split.p2().points();
    quad::stats_by_enumeration(
        split.p1(),
        split.p2(),
        |j| pts[j as usize].norm2(),
        pair_cap,
    )
}

/// One curve of the family: the locus `<a, p> - <b, q> = A_pq` on
/// `S^1 x S^1`. Requires `|p| != |q|` so that `A_pq != 0`.
#[derive(Debug, Clone)]
pub struct CircleCurve4D {
    pub p: ExactPoint,
    pub q: ExactPoint,
    pub a_pq: Rat,
}

impl CircleCurve4D {
    pub fn new(p: ExactPoint, q: ExactPoint) -> Result<Self> {
        let a_pq = (p.norm2() - q.norm2()) / rat_int(2);
        if a_pq == rat_int(0) {
            return Err(Error::ConcentricPair {
                norm: p.norm2().to_string(),
            });
        }
        Ok(CircleCurve4D { p, q, a_pq })
    }

    /// Membership test for a pair of unit-circle points.
    pub fn contains(&self, a: &ExactPoint, b: &ExactPoint) -> bool {
        a.dot(&self.p) - b.dot(&self.q) == self.a_pq
    }

    /// The right-hand side `A_pq = (|p|^2 - |q|^2) / 2` of the membership
    /// equation.
    pub fn a_pq(&self) -> &Rat {
        &self.a_pq
    }
}

/// The family of curves from all ordered cross pairs `(p, q)` in `P2 x P2`
/// with `|p| != |q|`. For valid configurations every pair traces a distinct
/// curve, so the family carries no multiplicities.
#[derive(Debug, Clone)]
pub struct CurveFamily4D {
    /// Ordered index pairs `(i, j)` into `P2` that generate a curve.
    curves: Vec<(u32, u32)>,
    /// Ordered pairs skipped because `|p| = |q|` (aligned side).
    skipped_concentric: u64,
}

impl CurveFamily4D {
    /// Size of the family, `|Gamma|`.
    pub fn gamma_size(&self) -> u64 {
        self.curves.len() as u64
    }

    pub fn curves(&self) -> &[(u32, u32)] {
        &self.curves
    }

    pub fn skipped_concentric(&self) -> u64 {
        self.skipped_concentric
    }

    /// Materialize the curve for a generating pair.
    pub fn curve(&self, p2: &PointSet, i: u32, j: u32) -> Result<CircleCurve4D> {
        CircleCurve4D::new(
            p2.points()[i as usize].clone(),
            p2.points()[j as usize].clone(),
        )
    }
}

/// Build the curve family over all ordered cross pairs of `p2`.
pub fn build_curve_family(p2: &PointSet) -> CurveFamily4D {
    let pts = p2.points();
    let norms: Vec<Rat> = pts.iter().map(|p| p.norm2()).collect();
    let mut curves = Vec::new();
    let mut skipped_concentric = 0u64;
    for i in 0..pts.len() {
        for j in 0..pts.len() {
            if norms[i] == norms[j] {
                if i != j {
                    skipped_concentric += 1;
                }
                continue;
            }
            curves.push((i as u32, j as u32));
        }
    }
    CurveFamily4D {
        curves,
        skipped_concentric,
    }
}

/// Incidences between `V = P1 x P1` (diagonal included) and the family.
///
/// For each `p` in `P2` the multiset of values `<a, p>` over `a` in `P1` is
/// precomputed once; each curve `(p, q)` is then counted by joining the `p`
/// values shifted by `A_pq` against the `q` values.
pub fn count_incidences(split: &CircleSplit, family: &CurveFamily4D) -> u64 {
    let pts = split.p2().points();
    let dots: Vec<BTreeMap<Rat, u64>> = pts
        .iter()
        .map(|p| {
            let mut m: BTreeMap<Rat, u64> = BTreeMap::new();
            for a in split.p1().iter() {
                *m.entry(a.dot(p)).or_insert(0) += 1;
            }
            m
        })
        .collect();
    let norms: Vec<Rat> = pts.iter().map(|p| p.norm2()).collect();
    let two = rat_int(2);
    par::sum_map_u64(family.curves(), |&(i, j)| {
        let a_pq = (&norms[i as usize] - &norms[j as usize]) / &two;
        let mut hits = 0u64;
        for (v, c) in &dots[i as usize] {
            if let Some(c2) = dots[j as usize].get(&(v - &a_pq)) {
                hits += c * c2;
            }
        }
        hits
    })
}

/// Reference implementation: test every grid pair against every curve by
/// direct substitution. For cross-checks on small inputs.
pub fn count_incidences_naive(split: &CircleSplit, family: &CurveFamily4D) -> u64 {
    let pts = split.p2().points();
    let mut count = 0u64;
    for &(i, j) in family.curves() {
        let curve = CircleCurve4D::new(pts[i as usize].clone(), pts[j as usize].clone())
            .expect("family pairs are non-concentric");
        for a in split.p1().iter() {
            for b in split.p1().iter() {
                if curve.contains(a, b) {
                    count += 1;
                }
            }
        }
    }
    count
}

/// Outcome of the aligned-completion check (bound 2 in this framework).
#[derive(Debug, Clone, Serialize)]
pub struct ChoiceBoundReport {
    pub max_observed: u64,
    pub bound: u64,
    pub triples_tested: u64,
}

/// For every aligned triple `(a, b, p)`, count the points `q` with
/// `|q| = |p|` and `dist2(b, q) = dist2(a, p)`, excluding `(b, q) = (a, p)`.
/// Such `q` lie on two distinct circles (centered at the origin and at `b`),
/// so at most 2 exist. Errors with [`Error::BoundViolation`] otherwise.
pub fn aligned_choice_bound_check(split: &CircleSplit) -> Result<ChoiceBoundReport> {
    let mut norm_groups: BTreeMap<Rat, Vec<&ExactPoint>> = BTreeMap::new();
    for p in split.p2().iter() {
        norm_groups.entry(p.norm2()).or_default().push(p);
    }
    let axis: Vec<&ExactPoint> = split.p1().iter().collect();
    let grid: Vec<(usize, usize)> = (0..axis.len())
        .flat_map(|u| (0..axis.len()).map(move |v| (u, v)))
        .collect();
    let max = par::max_map(&grid, |&(u, v)| {
        let a = axis[u];
        let b = axis[v];
        let mut local_max = 0u64;
        for p in split.p2().iter() {
            let r2 = a.squared_dist(p);
            let group = &norm_groups[&p.norm2()];
            let count = group
                .iter()
                .filter(|q| b.squared_dist(q) == r2 && !(a == b && **q == p))
                .count() as u64;
            local_max = local_max.max(count);
        }
        local_max
    })
    .unwrap_or(0);
    let report = ChoiceBoundReport {
        max_observed: max,
        bound: 2,
        triples_tested: (axis.len() * axis.len() * split.p2().len()) as u64,
    };
    if report.max_observed > report.bound {
        return Err(Error::BoundViolation {
            what: "aligned completions per (a, b, p) on the circle".into(),
            observed: report.max_observed,
            allowed: report.bound,
        });
    }
    Ok(report)
}

/// The four algebraic conditions under which the cross pairs `(pa, qa)` and
/// `(pb, qb)` trace the same curve: `pb` parallel to `pa`, `qb` parallel to
/// `qa`, equal scaling factors, and consistent scaling of `A`. For valid
/// configurations (all points off the axes, non-concentric pairs) they hold
/// simultaneously iff the pairs are identical, because a common scaling
/// `lambda` must satisfy `lambda^2 A = lambda A`, forcing `lambda = 1`.
pub fn same_curve_conditions(
    pa: &ExactPoint,
    qa: &ExactPoint,
    pb: &ExactPoint,
    qb: &ExactPoint,
) -> [bool; 4] {
    let parallel_p = &pa.x * &pb.y == &pa.y * &pb.x;
    let parallel_q = &qa.x * &qb.y == &qa.y * &qb.x;
    let equal_scale = &pa.x * &qb.x == &pb.x * &qa.x;
    let a_of = |p: &ExactPoint, q: &ExactPoint| p.norm2() - q.norm2();
    let scaled_a = &pa.x * &a_of(pb, qb) == &pb.x * &a_of(pa, qa);
    [parallel_p, parallel_q, equal_scale, scaled_a]
}

/// True iff the two cross pairs trace the same curve.
pub fn traces_same_curve(
    pa: &ExactPoint,
    qa: &ExactPoint,
    pb: &ExactPoint,
    qb: &ExactPoint,
) -> bool {
    same_curve_conditions(pa, qa, pb, qb).iter().all(|&c| c)
}

/// Exact intersection counts for two distinct curves: distinct points of
/// the real torus and of its complexification (affine part). Both are at
/// most 4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IntersectionCount {
    pub real: u32,
    pub complex: u32,
}

/// 2x2 exact matrix helpers for the elimination cases.
struct Mat2 {
    a: Rat,
    b: Rat,
    c: Rat,
    d: Rat,
}

impl Mat2 {
    fn rows(r1: &ExactPoint, r2: &ExactPoint) -> Self {
        Mat2 {
            a: r1.x.clone(),
            b: r1.y.clone(),
            c: r2.x.clone(),
            d: r2.y.clone(),
        }
    }

    fn det(&self) -> Rat {
        &self.a * &self.d - &self.b * &self.c
    }

    /// `self^-1 * other`, requiring `det != 0`.
    fn inv_mul(&self, other: &Mat2) -> Mat2 {
        let det = self.det();
        Mat2 {
            a: (&self.d * &other.a - &self.b * &other.c) / &det,
            b: (&self.d * &other.b - &self.b * &other.d) / &det,
            c: (&self.a * &other.c - &self.c * &other.a) / &det,
            d: (&self.a * &other.d - &self.c * &other.b) / &det,
        }
    }

    /// `self^-1 * v`, requiring `det != 0`.
    fn inv_apply(&self, v: (&Rat, &Rat)) -> (Rat, Rat) {
        let det = self.det();
        (
            (&self.d * v.0 - &self.b * v.1) / &det,
            (&self.a * v.1 - &self.c * v.0) / &det,
        )
    }
}

/// Distinct solutions of `<z, normal> = value` on the unit circle: real
/// count and complex (affine) count. The line is tangent iff
/// `value^2 = |normal|^2`, secant (2 real) iff smaller, external (0 real,
/// 2 complex) iff larger.
fn line_circle_counts(normal: &ExactPoint, value: &Rat) -> (u32, u32) {
    let v2 = value * value;
    let n2 = normal.norm2();
    match v2.cmp(&n2) {
        std::cmp::Ordering::Less => (2, 2),
        std::cmp::Ordering::Equal => (1, 1),
        std::cmp::Ordering::Greater => (0, 2),
    }
}

/// Count unit-circle points `z` with `|R z + s| = 1`, exactly, both over the
/// reals and over the complex affine circle.
///
/// Under `z = ((1 - t^2)/(1 + t^2), 2t/(1 + t^2))` the condition becomes a
/// polynomial `P(t)` of degree at most 4; the missed point `z = (-1, 0)` is
/// tested directly (its condition value is precisely the `t^4` coefficient,
/// so the total never exceeds 4). Real roots are counted by Sturm chains;
/// complex roots as `deg` of the square-free part, excluding the artifact
/// roots at `t = +-i` (which correspond to the circle's points at infinity).
fn count_unit_preimages(r: &Mat2, s: (&Rat, &Rat)) -> Result<IntersectionCount> {
    let u = UniPoly::from_coeffs(vec![rat_int(1), rat_int(0), rat_int(-1)]); // 1 - t^2
    let v = UniPoly::from_coeffs(vec![rat_int(0), rat_int(2)]); // 2t
    let w = UniPoly::from_coeffs(vec![rat_int(1), rat_int(0), rat_int(1)]); // 1 + t^2
    let x = u
        .scale(&r.a)
        .add(&v.scale(&r.b))
        .add(&w.scale(s.0));
    let y = u
        .scale(&r.c)
        .add(&v.scale(&r.d))
        .add(&w.scale(s.1));
    let p = x.mul(&x).add(&y.mul(&y)).sub(&w.mul(&w));

    // z = (-1, 0): |(-r_a + s_1, -r_c + s_2)| = 1?
    let e1 = s.0 - &r.a;
    let e2 = s.1 - &r.c;
    let endpoint = u32::from(&e1 * &e1 + &e2 * &e2 == rat_int(1));
    debug_assert_eq!(
        p.coeff(4),
        &(&e1 * &e1 + &e2 * &e2) - &rat_int(1),
        "t^4 coefficient must equal the endpoint condition value",
    );

    if p.is_zero() {
        return Err(Error::InfiniteIntersection {
            reason: "unit-preimage condition vanished identically".into(),
        });
    }
    let sf = p.square_free()?;
    let real = sf.count_real_roots(&RootInterval::WholeLine)? as u32 + endpoint;
    let artifacts = sf.gcd(&w).degree().unwrap_or(0) as u32;
    let complex = sf.degree().unwrap_or(0) as u32 - artifacts + endpoint;
    Ok(IntersectionCount { real, complex })
}

/// Count the intersection points of the curves of two distinct cross pairs,
/// exactly, over the real torus and its affine complexification.
///
/// Writing the two membership conditions as `M_p a = M_q b + A` (rows per
/// curve), three cases arise:
///
/// 1. `M_p` invertible: `a = T(b)`, count `b` on the circle with
///    `|T(b)| = 1`.
/// 2. `M_p` singular, `M_q` invertible: symmetric in `a`.
/// 3. Both singular: `pb = lambda pa`, `qb = mu qa`; the conditions reduce
///    to a linear system in the two dot products, giving either no solution
///    (`lambda = mu`, inconsistent) or a product of two line-circle counts.
///
/// Errors: [`Error::DegenerateCurvePair`] when the pairs trace the same
/// curve, [`Error::ConcentricPair`] when either pair has `|p| = |q|`.
pub fn intersection_count_4d(
    pa: &ExactPoint,
    qa: &ExactPoint,
    pb: &ExactPoint,
    qb: &ExactPoint,
) -> Result<IntersectionCount> {
    let curve_a = CircleCurve4D::new(pa.clone(), qa.clone())?;
    let curve_b = CircleCurve4D::new(pb.clone(), qb.clone())?;
    if traces_same_curve(pa, qa, pb, qb) {
        return Err(Error::DegenerateCurvePair {
            reason: "cross pairs trace the same curve".into(),
        });
    }
    let m_p = Mat2::rows(pa, pb);
    let m_q = Mat2::rows(qa, qb);
    let a_vec = (&curve_a.a_pq, &curve_b.a_pq);
    let zero = rat_int(0);

    let count = if m_p.det() != zero {
        // a = M_p^-1 (M_q b + A): count b with |R b + s| = 1.
        let r = m_p.inv_mul(&m_q);
        let s = m_p.inv_apply(a_vec);
        count_unit_preimages(&r, (&s.0, &s.1))?
    } else if m_q.det() != zero {
        // M_q b = M_p a - A: count a with |R a + s| = 1.
        let r = m_q.inv_mul(&m_p);
        let neg_a = (-a_vec.0, -a_vec.1);
        let s = m_q.inv_apply((&neg_a.0, &neg_a.1));
        count_unit_preimages(&r, (&s.0, &s.1))?
    } else {
        // Both singular: pb = lambda pa, qb = mu qa (coordinates are
        // nonzero off the axes, so the ratios are well defined).
        let lambda = &pb.x / &pa.x;
        let mu = &qb.x / &qa.x;
        if lambda == mu {
            // u - v = A_a and lambda (u - v) = A_b: inconsistent, because
            // consistency would force the pairs to trace the same curve.
            debug_assert!(&lambda * &curve_a.a_pq != curve_b.a_pq);
            IntersectionCount { real: 0, complex: 0 }
        } else {
            // Unique (u, v) with u - v = A_a, lambda u - mu v = A_b:
            // u = (A_b - mu A_a) / (lambda - mu),
            // v = (A_b - lambda A_a) / (lambda - mu).
            let det = &lambda - &mu;
            let u0 = (&curve_b.a_pq - &(&mu * &curve_a.a_pq)) / &det;
            let v0 = (&curve_b.a_pq - &(&lambda * &curve_a.a_pq)) / &det;
            let (real_a, cx_a) = line_circle_counts(pa, &u0);
            let (real_b, cx_b) = line_circle_counts(qa, &v0);
            IntersectionCount {
                real: real_a * real_b,
                complex: cx_a * cx_b,
            }
        }
    };

    if count.real > 4 || count.complex > 4 || count.real > count.complex {
        return Err(Error::BoundViolation {
            what: "intersections of two distinct torus curves".into(),
            observed: count.real.max(count.complex) as u64,
            allowed: 4,
        });
    }
    Ok(count)
}

/// Result of checking pairwise intersections across the family.
#[derive(Debug, Clone, Serialize)]
pub struct PairwiseIntersectionReport {
    pub pairs_tested: u64,
    pub max_real: u32,
    pub max_complex: u32,
    /// True when every pair of distinct curves was tested.
    pub exhaustive: bool,
}

/// Verify the four-point bound over the family: exhaustively when the pair
/// count stays within `max_pairs`, otherwise on `max_pairs` deterministically
/// seeded random pairs.
pub fn degrees_of_freedom_check(
    p2: &PointSet,
    family: &CurveFamily4D,
    max_pairs: u64,
    seed: u64,
) -> Result<PairwiseIntersectionReport> {
    use rand::Rng;
    let pts = p2.points();
    let curves = family.curves();
    let k = curves.len() as u64;
    let total_pairs = k.saturating_mul(k.saturating_sub(1)) / 2;
    let exhaustive = total_pairs <= max_pairs;
    let pairs: Vec<(usize, usize)> = if exhaustive {
        (0..curves.len())
            .flat_map(|u| ((u + 1)..curves.len()).map(move |v| (u, v)))
            .collect()
    } else {
        let mut rng = crate::geom::rng_from_seed(seed);
        let mut sampled = Vec::with_capacity(max_pairs as usize);
        while (sampled.len() as u64) < max_pairs {
            let u = rng.gen_range(0..curves.len());
            let v = rng.gen_range(0..curves.len());
            if u != v {
                sampled.push((u, v));
            }
        }
        sampled
    };
    let mut max_real = 0u32;
    let mut max_complex = 0u32;
    for &(u, v) in &pairs {
        let (i1, j1) = curves[u];
        let (i2, j2) = curves[v];
        let n = intersection_count_4d(
            &pts[i1 as usize],
            &pts[j1 as usize],
            &pts[i2 as usize],
            &pts[j2 as usize],
        )?;
        max_real = max_real.max(n.real);
        max_complex = max_complex.max(n.complex);
    }
    Ok(PairwiseIntersectionReport {
        pairs_tested: pairs.len() as u64,
        max_real,
        max_complex,
        exhaustive,
    })
}

/// Full circle-framework ledger for one configuration. All counting fields
/// are exact; the float fields are derived for reporting only.
#[derive(Debug, Clone, Serialize)]
pub struct CircleLedger {
    pub n: u64,
    pub alpha: f64,
    #[serde(rename = "D")]
    pub d: u64,
    pub q_total: u64,
    pub q1_concentric: u64,
    pub q2: u64,
    pub incidences: u64,
    pub gamma_size: u64,
    /// Exact Cauchy-Schwarz lower bound for `q_total`, as a canonical
    /// rational string.
    pub cs_lower: String,
    pub skipped_concentric: u64,
}

/// Compute the complete ledger, enforcing the central cross-check
/// `q2 = incidences` exactly.
pub fn circle_ledger(split: &CircleSplit) -> Result<CircleLedger> {
    let stats = build_quadruple_stats(split)?;
    let family = build_curve_family(split.p2());
    let incidences = count_incidences(split, &family);
    if incidences != stats.q2 {
        return Err(Error::CrossCheckFailed {
            what: "generic quadruples vs torus-curve incidences".into(),
            left: stats.q2.to_string(),
            right: incidences.to_string(),
        });
    }
    let union = {
        let mut pts: Vec<ExactPoint> = split.p1().iter().cloned().collect();
        pts.extend(split.p2().iter().cloned());
        PointSet::new("circle-union", pts)?
    };
    let d_union = distinct_distances(&union)?;
    let n = split.n() as u64;
    let alpha = if n > 1 {
        (split.p1().len() as f64).ln() / (n as f64).ln()
    } else {
        0.0
    };
    Ok(CircleLedger {
        n,
        alpha,
        d: d_union as u64,
        q_total: stats.q_total,
        q1_concentric: stats.q1,
        q2: stats.q2,
        incidences,
        gamma_size: family.gamma_size(),
        cs_lower: stats.cauchy_schwarz_lower.to_string(),
        skipped_concentric: family.skipped_concentric(),
    })
}

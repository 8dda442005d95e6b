//! Deterministic configuration generators.
//!
//! All randomness flows from a single 64-bit seed through ChaCha8
//! (`ChaCha8Rng::seed_from_u64`), a fixed, widely specified generator, so any
//! generated configuration is reproducible from `(generator, parameters,
//! seed)` alone. Random rationals are drawn with a bounded numerator /
//! denominator bit budget.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;

use super::point::{ExactPoint, PointSet};
use crate::error::{Error, Result};
use crate::exact::{rat_int, Rat};

/// The crate-wide PRNG. Everything seeded goes through here.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Integer lattice `{0..width-1} x {0..height-1}`, anchored at the origin,
/// row-major order.
pub fn lattice(width: usize, height: usize) -> Result<PointSet> {
    if width == 0 || height == 0 {
        return Err(Error::ZeroDimension { width, height });
    }
    let mut points = Vec::with_capacity(width * height);
    for y in 0..height {
        for x in 0..width {
            points.push(ExactPoint::from_ints(x as i64, y as i64));
        }
    }
    PointSet::new(format!("lattice{width}x{height}"), points)
}

/// How `line_points` spaces its abscissas.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LineSpacing {
    /// `x = 0, 1, ..., n-1`.
    Evenly,
    /// `x = 1, r, r^2, ...`; requires `|r|` distinct from 0 and 1.
    Geometric { ratio: Rat },
    /// Distinct random rationals with the given coefficient bit budget.
    Random { bits: u32 },
}

/// `n` distinct points on the line `y = slope * x + intercept`.
pub fn line_points(
    n: usize,
    spacing: &LineSpacing,
    slope: &Rat,
    intercept: &Rat,
    seed: u64,
) -> Result<PointSet> {
    if n == 0 {
        return Err(Error::ParameterRange {
            what: "line_points needs n >= 1".into(),
        });
    }
    let xs: Vec<Rat> = match spacing {
        LineSpacing::Evenly => (0..n).map(|k| rat_int(k as i64)).collect(),
        LineSpacing::Geometric { ratio } => {
            let abs = ratio.clone();
            if abs == rat_int(0) || abs == rat_int(1) || abs == rat_int(-1) {
                return Err(Error::ParameterRange {
                    what: format!("geometric ratio {ratio} would repeat abscissas"),
                });
            }
            let mut xs = Vec::with_capacity(n);
            let mut cur = rat_int(1);
            for _ in 0..n {
                xs.push(cur.clone());
                cur *= ratio;
            }
            xs
        }
        LineSpacing::Random { bits } => {
            let mut rng = rng_from_seed(seed);
            distinct_randoms(n, &mut rng, *bits, |_| true)
        }
    };
    let points = xs
        .into_iter()
        .map(|x| {
            let y = slope * &x + intercept;
            ExactPoint::new(x, y)
        })
        .collect();
    PointSet::new(format!("line{n}"), points)
}

/// How `circle_points` picks its parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CircleParams {
    /// Deliberate parameter values (tests may place axis points on purpose).
    Explicit(Vec<Rat>),
    /// Distinct random parameters; with `avoid_axes` (the default choice) the
    /// values 0, 1, -1 are rejected so no generated point lands on a
    /// coordinate axis.
    Random { bits: u32, avoid_axes: bool },
}

/// Rational points on the unit circle via the tangent half-angle map
/// `t -> ((1 - t^2) / (1 + t^2), 2t / (1 + t^2))`.
///
/// The map is injective, so distinct parameters give distinct points; the
/// point `(-1, 0)` is not reachable. `t = 0` gives `(1, 0)` and `t = +-1`
/// give `(0, +-1)`, the only parameters whose images touch a coordinate axis.
pub fn circle_points(n: usize, params: &CircleParams, seed: u64) -> Result<PointSet> {
    let ts: Vec<Rat> = match params {
        CircleParams::Explicit(ts) => {
            if ts.len() != n {
                return Err(Error::ParameterRange {
                    what: format!("expected {n} parameters, got {}", ts.len()),
                });
            }
            let mut seen = HashSet::new();
            for t in ts {
                if !seen.insert(t.clone()) {
                    return Err(Error::DuplicateParameter {
                        value: t.to_string(),
                    });
                }
            }
            ts.clone()
        }
        CircleParams::Random { bits, avoid_axes } => {
            let mut rng = rng_from_seed(seed);
            let ok = |t: &Rat| {
                !avoid_axes || (t != &rat_int(0) && t != &rat_int(1) && t != &rat_int(-1))
            };
            distinct_randoms(n, &mut rng, *bits, ok)
        }
    };
    let points = ts.into_iter().map(|t| circle_point(&t)).collect();
    PointSet::new(format!("circle{n}"), points)
}

/// Single tangent half-angle image.
pub fn circle_point(t: &Rat) -> ExactPoint {
    let one = rat_int(1);
    let t2 = t * t;
    let denom = &one + &t2;
    ExactPoint::new((&one - &t2) / &denom, (rat_int(2) * t) / &denom)
}

/// A deliberate part/ambient union that remembers which points came from
/// where, so the two sides can be recovered exactly.
#[derive(Debug, Clone)]
pub struct Composite {
    part: PointSet,
    ambient: PointSet,
}

impl Composite {
    pub fn part(&self) -> &PointSet {
        &self.part
    }

    pub fn ambient(&self) -> &PointSet {
        &self.ambient
    }

    /// Combined set, part points first.
    pub fn union(&self) -> Result<PointSet> {
        let mut points = self.part.points().to_vec();
        points.extend(self.ambient.points().iter().cloned());
        PointSet::new(
            format!("{}+{}", self.part.label(), self.ambient.label()),
            points,
        )
    }
}

/// Join a structured part with an ambient set; any shared point is an error
/// (the overlap is reported with its size and first offender).
pub fn composite(part: PointSet, ambient: PointSet) -> Result<Composite> {
    let part_points: HashSet<&ExactPoint> = part.points().iter().collect();
    let shared: Vec<&ExactPoint> = ambient
        .points()
        .iter()
        .filter(|p| part_points.contains(p))
        .collect();
    if let Some(first) = shared.first() {
        return Err(Error::Overlap {
            count: shared.len(),
            x: first.x.to_string(),
            y: first.y.to_string(),
        });
    }
    Ok(Composite { part, ambient })
}

/// What generated ambient points must stay away from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Forbid {
    Nothing,
    /// `y != 0` (ambient side of a line-split configuration).
    XAxis,
    /// `x != 0` and `y != 0`.
    Axes,
    /// Both axes and the unit circle (ambient side of a circle-split
    /// configuration).
    AxesAndUnitCircle,
}

fn allowed(p: &ExactPoint, forbid: Forbid) -> bool {
    match forbid {
        Forbid::Nothing => true,
        Forbid::XAxis => !p.on_x_axis(),
        Forbid::Axes => !p.on_coordinate_axis(),
        Forbid::AxesAndUnitCircle => !p.on_coordinate_axis() && !p.on_unit_circle(),
    }
}

/// `n` distinct random integer points in `[-half_width, half_width]^2`
/// subject to the constraint. Small boxes are deliberate: repeated distances
/// are what make configurations interesting.
pub fn random_integer_points(
    n: usize,
    seed: u64,
    half_width: i64,
    forbid: Forbid,
) -> Result<PointSet> {
    if half_width <= 0 {
        return Err(Error::ParameterRange {
            what: "half_width must be positive".into(),
        });
    }
    let capacity = (2 * half_width as u128 + 1).pow(2);
    if (n as u128) * 2 > capacity {
        return Err(Error::ParameterRange {
            what: format!("cannot place {n} distinct points in a box of {capacity}"),
        });
    }
    let mut rng = rng_from_seed(seed);
    let mut seen = HashSet::new();
    let mut points = Vec::with_capacity(n);
    while points.len() < n {
        let p = ExactPoint::from_ints(
            rng.gen_range(-half_width..=half_width),
            rng.gen_range(-half_width..=half_width),
        );
        if allowed(&p, forbid) && seen.insert(p.clone()) {
            points.push(p);
        }
    }
    PointSet::new(format!("box{n}"), points)
}

/// `n` distinct random rational points with the given coefficient bit budget,
/// subject to the constraint.
pub fn random_rational_points(n: usize, seed: u64, bits: u32, forbid: Forbid) -> Result<PointSet> {
    let mut rng = rng_from_seed(seed);
    let mut seen = HashSet::new();
    let mut points = Vec::with_capacity(n);
    while points.len() < n {
        let p = ExactPoint::new(random_rat(&mut rng, bits), random_rat(&mut rng, bits));
        if allowed(&p, forbid) && seen.insert(p.clone()) {
            points.push(p);
        }
    }
    PointSet::new(format!("rand{n}"), points)
}

/// One random rational with numerator in `[-2^bits, 2^bits]` and denominator
/// in `[1, 2^bits]` (reduced afterwards, so the realized coefficients can
/// only shrink).
pub fn random_rat(rng: &mut ChaCha8Rng, bits: u32) -> Rat {
    let m = 1i64 << bits.min(30);
    let num = rng.gen_range(-m..=m);
    let den = rng.gen_range(1..=m);
    Rat::new(num.into(), den.into())
}

fn distinct_randoms(
    n: usize,
    rng: &mut ChaCha8Rng,
    bits: u32,
    ok: impl Fn(&Rat) -> bool,
) -> Vec<Rat> {
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let r = random_rat(rng, bits.max(4));
        if ok(&r) && seen.insert(r.clone()) {
            out.push(r);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn lattice_shape_and_order() {
        let l = lattice(2, 2).unwrap();
        assert_eq!(
            l.points(),
            &[
                ExactPoint::from_ints(0, 0),
                ExactPoint::from_ints(1, 0),
                ExactPoint::from_ints(0, 1),
                ExactPoint::from_ints(1, 1),
            ]
        );
        assert_eq!(lattice(4, 2).unwrap().len(), 8);
        assert!(matches!(lattice(0, 5), Err(Error::ZeroDimension { .. })));
    }

    #[test]
    fn geometric_line_spacing() {
        let ps = line_points(
            4,
            &LineSpacing::Geometric { ratio: rat_int(2) },
            &rat_int(0),
            &rat_int(0),
            0,
        )
        .unwrap();
        let xs: Vec<Rat> = ps.iter().map(|p| p.x.clone()).collect();
        assert_eq!(xs, vec![rat_int(1), rat_int(2), rat_int(4), rat_int(8)]);
        assert!(ps.iter().all(|p| p.y == rat_int(0)));
        assert!(line_points(
            3,
            &LineSpacing::Geometric { ratio: rat_int(1) },
            &rat_int(0),
            &rat_int(0),
            0
        )
        .is_err());
    }

    #[test]
    fn evenly_spaced_points_follow_the_line() {
        let ps = line_points(3, &LineSpacing::Evenly, &rat(1, 2), &rat_int(1), 0).unwrap();
        assert_eq!(ps.points()[2], ExactPoint::new(rat_int(2), rat_int(2)));
    }

    #[test]
    fn tangent_half_angle_images() {
        assert_eq!(
            circle_point(&rat(1, 2)),
            ExactPoint::new(rat(3, 5), rat(4, 5))
        );
        assert_eq!(
            circle_point(&rat(1, 3)),
            ExactPoint::new(rat(4, 5), rat(3, 5))
        );
        assert_eq!(
            circle_point(&rat_int(2)),
            ExactPoint::new(rat(-3, 5), rat(4, 5))
        );
        // Parameters 0 and +-1 are exactly the axis points.
        assert_eq!(circle_point(&rat_int(0)), ExactPoint::from_ints(1, 0));
        assert_eq!(circle_point(&rat_int(1)), ExactPoint::from_ints(0, 1));
        assert_eq!(circle_point(&rat_int(-1)), ExactPoint::from_ints(0, -1));
    }

    #[test]
    fn explicit_circle_params_reject_duplicates() {
        let err = circle_points(
            2,
            &CircleParams::Explicit(vec![rat(1, 2), rat(1, 2)]),
            0,
        )
        .unwrap_err();
        assert!(matches!(err, Error::DuplicateParameter { .. }));
    }

    #[test]
    fn random_circle_points_stay_off_axes_and_on_circle() {
        let ps = circle_points(
            40,
            &CircleParams::Random {
                bits: 6,
                avoid_axes: true,
            },
            7,
        )
        .unwrap();
        assert_eq!(ps.len(), 40);
        for p in ps.iter() {
            assert!(p.on_unit_circle());
            assert!(!p.on_coordinate_axis());
        }
    }

    #[test]
    fn composite_rejects_overlap() {
        let part = lattice(2, 1).unwrap();
        let ambient = PointSet::new(
            "amb",
            vec![ExactPoint::from_ints(1, 0), ExactPoint::from_ints(5, 5)],
        )
        .unwrap();
        let err = composite(part.clone(), ambient).unwrap_err();
        assert!(matches!(err, Error::Overlap { count: 1, .. }));

        let good = PointSet::new("amb", vec![ExactPoint::from_ints(5, 5)]).unwrap();
        let c = composite(part, good).unwrap();
        assert_eq!(c.union().unwrap().len(), 3);
        assert_eq!(c.part().len(), 2);
    }

    #[test]
    fn seeded_generation_is_reproducible() {
        let a = random_integer_points(25, 42, 6, Forbid::XAxis).unwrap();
        let b = random_integer_points(25, 42, 6, Forbid::XAxis).unwrap();
        assert_eq!(a, b);
        let c = random_integer_points(25, 43, 6, Forbid::XAxis).unwrap();
        assert_ne!(a, c);
        assert!(a.iter().all(|p| !p.on_x_axis()));

        let r = random_rational_points(10, 1, 6, Forbid::AxesAndUnitCircle).unwrap();
        let r2 = random_rational_points(10, 1, 6, Forbid::AxesAndUnitCircle).unwrap();
        assert_eq!(r, r2);
        assert!(r.iter().all(|p| !p.on_unit_circle() && !p.on_coordinate_axis()));
    }
}

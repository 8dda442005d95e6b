//! Shared plumbing: exit-code mapping, seed derivation, range parsing, and
//! construction of line/circle configurations from flags.

use std::path::Path;

use distdist_core::circle::CircleSplit;
use distdist_core::error::Error as CoreError;
use distdist_core::exact::rat_int;
use distdist_core::geom::{
    self, lattice, line_points, read_pointset_auto, Forbid, LineSpacing, PointSet,
};
use distdist_core::line::LineSplit;

pub const EXIT_INPUT: i32 = 1;
pub const EXIT_INVARIANT: i32 = 2;
pub const EXIT_GUARD: i32 = 3;

/// A command failure carrying the process exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }

    pub fn invariant(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INVARIANT,
            message: message.into(),
        }
    }
}

impl From<CoreError> for Failure {
    fn from(err: CoreError) -> Self {
        let code = match err {
            CoreError::SizeGuard { .. } => EXIT_GUARD,
            CoreError::CrossCheckFailed { .. }
            | CoreError::BoundViolation { .. }
            | CoreError::InfiniteIntersection { .. } => EXIT_INVARIANT,
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            message: err.to_string(),
        }
    }
}

pub type CmdResult<T> = Result<T, Failure>;

/// SplitMix64 finalizer; used to derive independent sub-seeds from the one
/// user-facing seed (documented in the README).
pub fn splitmix64(seed: u64) -> u64 {
    let mut z = seed.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed for the ambient-part generator of a configuration.
pub fn ambient_seed(seed: u64) -> u64 {
    splitmix64(seed ^ 0x00A3_B1E4_7D00_0001)
}

/// Seed for the special-part generator of a configuration.
pub fn part_seed(seed: u64) -> u64 {
    splitmix64(seed ^ 0x00A3_B1E4_7D00_0002)
}

/// Parse `"WxH"` into positive lattice dimensions.
pub fn parse_lattice(spec: &str) -> CmdResult<(usize, usize)> {
    let (w, h) = spec
        .split_once(['x', 'X'])
        .ok_or_else(|| Failure::input(format!("--lattice expects WxH, got '{spec}'")))?;
    let w: usize = w
        .trim()
        .parse()
        .map_err(|_| Failure::input(format!("bad lattice width '{w}'")))?;
    let h: usize = h
        .trim()
        .parse()
        .map_err(|_| Failure::input(format!("bad lattice height '{h}'")))?;
    if w == 0 || h == 0 {
        return Err(Failure::input(format!(
            "lattice dimensions must be positive, got {w}x{h}"
        )));
    }
    Ok((w, h))
}

/// Parse `"a0:a1:step"` into an inclusive alpha grid.
pub fn parse_alpha_range(spec: &str) -> CmdResult<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(Failure::input(format!(
            "--alpha expects A0:A1:STEP, got '{spec}'"
        )));
    }
    let nums: Vec<f64> = parts
        .iter()
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| Failure::input(format!("bad alpha component '{p}'")))
        })
        .collect::<CmdResult<_>>()?;
    let (a0, a1, step) = (nums[0], nums[1], nums[2]);
    if !(0.0..=1.0).contains(&a0) || !(0.0..=1.0).contains(&a1) || a1 < a0 || step <= 0.0 {
        return Err(Failure::input(format!(
            "alpha range must satisfy 0 <= A0 <= A1 <= 1 with positive step, got '{spec}'"
        )));
    }
    let mut alphas = Vec::new();
    let mut k = 0u32;
    loop {
        let a = a0 + f64::from(k) * step;
        if a > a1 + 1e-9 {
            break;
        }
        alphas.push(a.min(a1));
        k += 1;
    }
    Ok(alphas)
}

/// Parse `"n0:n1"` into the doubling sequence n0, 2*n0, ... capped at n1.
pub fn parse_n_range(spec: &str) -> CmdResult<Vec<u64>> {
    let (n0, n1) = spec
        .split_once(':')
        .ok_or_else(|| Failure::input(format!("--n expects N0:N1, got '{spec}'")))?;
    let n0: u64 = n0
        .trim()
        .parse()
        .map_err(|_| Failure::input(format!("bad n component '{n0}'")))?;
    let n1: u64 = n1
        .trim()
        .parse()
        .map_err(|_| Failure::input(format!("bad n component '{n1}'")))?;
    if n0 < 4 || n1 < n0 {
        return Err(Failure::input(format!(
            "n range must satisfy 4 <= N0 <= N1, got '{spec}'"
        )));
    }
    let mut ns = Vec::new();
    let mut n = n0;
    while n <= n1 {
        ns.push(n);
        match n.checked_mul(2) {
            Some(next) => n = next,
            None => break,
        }
    }
    Ok(ns)
}

/// `round(n^alpha)` clamped so both parts keep at least two points.
pub fn part_size(n: u64, alpha: f64) -> CmdResult<usize> {
    if n < 4 {
        return Err(Failure::input(format!(
            "generated configurations need n >= 4, got {n}"
        )));
    }
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Failure::input(format!(
            "alpha must lie in [0, 1], got {alpha}"
        )));
    }
    let raw = (n as f64).powf(alpha).round() as u64;
    Ok(raw.clamp(2, n - 2) as usize)
}

fn ambient_half_width(n2: usize) -> i64 {
    (((n2 as f64) * 1.5).sqrt().ceil() as i64).max(3)
}

/// Generated line configuration: `n1 = round(n^alpha)` evenly spaced points
/// on the x-axis plus `n - n1` random integer points off it.
pub fn generated_line_split(n: u64, alpha: f64, seed: u64) -> CmdResult<LineSplit> {
    let n1 = part_size(n, alpha)?;
    let n2 = n as usize - n1;
    let p1 = line_points(
        n1,
        &LineSpacing::Evenly,
        &rat_int(0),
        &rat_int(0),
        part_seed(seed),
    )?;
    let p2 = geom::random_integer_points(
        n2,
        ambient_seed(seed),
        ambient_half_width(n2),
        Forbid::XAxis,
    )?;
    Ok(LineSplit::new(p1, p2)?)
}

/// Generated circle configuration: `n1 = round(n^alpha)` rational points on
/// the unit circle plus `n - n1` integer points off circle and axes.
///
/// Both parts are mirror-symmetric across the x-axis (parameters come in
/// `+-t` pairs, ambient points in `(u, +-v)` pairs). Without that symmetry a
/// random rational circle point almost never repeats a cross distance and
/// every quadruple count is an uninformative zero; with it, each cross pair
/// has a mirror partner, so the distance classes the framework counts are
/// genuinely populated.
pub fn generated_circle_split(n: u64, alpha: f64, seed: u64) -> CmdResult<CircleSplit> {
    use distdist_core::exact::{rat, Rat};
    use rand::Rng;
    use std::collections::BTreeSet;

    let n1 = part_size(n, alpha)?;
    let n2 = n as usize - n1;

    let mut rng = geom::rng_from_seed(part_seed(seed));
    let mut params: BTreeSet<Rat> = BTreeSet::new();
    while params.len() < n1.div_ceil(2) {
        let t = rat(rng.gen_range(1..=48), rng.gen_range(1..=48));
        if t != rat(1, 1) {
            params.insert(t);
        }
    }
    let mut points = Vec::with_capacity(n1);
    for t in &params {
        points.push(geom::circle_point(t));
        points.push(geom::circle_point(&-t));
    }
    points.truncate(n1);
    let p1 = geom::PointSet::new(format!("circle{n1}"), points)?;

    let mut rng = geom::rng_from_seed(ambient_seed(seed));
    let half = ambient_half_width(n2);
    let mut upper: BTreeSet<(i64, i64)> = BTreeSet::new();
    while upper.len() < n2.div_ceil(2) {
        let u = rng.gen_range(-half..=half);
        let v = rng.gen_range(1..=half);
        if u != 0 {
            upper.insert((u, v));
        }
    }
    let mut ambient = Vec::with_capacity(n2);
    for &(u, v) in &upper {
        ambient.push(distdist_core::geom::ExactPoint::from_ints(u, v));
        ambient.push(distdist_core::geom::ExactPoint::from_ints(u, -v));
    }
    ambient.truncate(n2);
    let p2 = geom::PointSet::new(format!("box{n2}"), ambient)?;

    Ok(CircleSplit::new(p1, p2)?)
}

/// Lattice configuration for line mode: generate WxH, then translate row K
/// onto the x-axis and split there.
pub fn lattice_line_split(width: usize, height: usize, row: usize) -> CmdResult<LineSplit> {
    if height < 2 {
        return Err(Failure::input(format!(
            "line mode needs a lattice with at least 2 rows, got height {height}"
        )));
    }
    if row >= height {
        return Err(Failure::input(format!(
            "--row {row} is out of range for a lattice of height {height}"
        )));
    }
    let ps = lattice(width, height)?;
    let shifted = ps.translated(&rat_int(0), &rat_int(-(row as i64)));
    Ok(LineSplit::from_pointset(&shifted)?)
}

/// Read a point set from disk, mapping IO/parse problems to input errors.
pub fn load_pointset(path: &Path) -> CmdResult<PointSet> {
    Ok(read_pointset_auto(path)?)
}

/// Human-readable provenance string recorded in every report.
pub fn describe_source(
    input: Option<&Path>,
    lattice: Option<&str>,
    row: Option<usize>,
    n: Option<u64>,
    alpha: Option<f64>,
) -> String {
    if let Some(p) = input {
        return format!("file:{}", p.display());
    }
    if let Some(spec) = lattice {
        return match row {
            Some(k) => format!("lattice:{spec}:row{k}"),
            None => format!("lattice:{spec}"),
        };
    }
    match (n, alpha) {
        (Some(n), Some(a)) => format!("generated:n={n}:alpha={a:.4}"),
        _ => "unspecified".to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitmix64_matches_reference_vectors() {
        // First outputs of the reference implementation for state 0:
        // each call advances the state by the golden-ratio increment.
        assert_eq!(splitmix64(0), 0xE220_A839_7B1D_CDAF);
        assert_eq!(splitmix64(0x9E37_79B9_7F4A_7C15), 0x6E78_9E6A_A1B9_65F4);
    }

    #[test]
    fn core_errors_map_to_documented_exit_codes() {
        let cases: Vec<(CoreError, i32)> = vec![
            (
                CoreError::SizeGuard {
                    what: "pairs".into(),
                    value: 7,
                    cap: 3,
                },
                EXIT_GUARD,
            ),
            (
                CoreError::CrossCheckFailed {
                    what: "q2 vs incidences".into(),
                    left: "1".into(),
                    right: "2".into(),
                },
                EXIT_INVARIANT,
            ),
            (
                CoreError::BoundViolation {
                    what: "choices".into(),
                    observed: 5,
                    allowed: 4,
                },
                EXIT_INVARIANT,
            ),
            (
                CoreError::InfiniteIntersection {
                    reason: "identical".into(),
                },
                EXIT_INVARIANT,
            ),
            (
                CoreError::TooFewPoints { needed: 3, got: 1 },
                EXIT_INPUT,
            ),
        ];
        for (err, code) in cases {
            assert_eq!(Failure::from(err).code, code);
        }
    }

    #[test]
    fn lattice_spec_parsing() {
        assert_eq!(parse_lattice("8x4").unwrap(), (8, 4));
        assert_eq!(parse_lattice("3X3").unwrap(), (3, 3));
        assert!(parse_lattice("8").is_err());
        assert!(parse_lattice("0x4").is_err());
        assert!(parse_lattice("axb").is_err());
    }

    #[test]
    fn alpha_range_is_inclusive() {
        let alphas = parse_alpha_range("0.5:1.0:0.125").unwrap();
        assert_eq!(alphas.len(), 5);
        assert!((alphas[0] - 0.5).abs() < 1e-12);
        assert!((alphas[4] - 1.0).abs() < 1e-12);
        assert_eq!(parse_alpha_range("0.5:0.5:0.25").unwrap().len(), 1);
        assert!(parse_alpha_range("0.9:0.5:0.1").is_err());
        assert!(parse_alpha_range("0.5:1.0").is_err());
        assert!(parse_alpha_range("0:1:-0.5").is_err());
    }

    #[test]
    fn n_range_doubles_up_to_the_cap() {
        assert_eq!(parse_n_range("64:1024").unwrap(), vec![64, 128, 256, 512, 1024]);
        assert_eq!(parse_n_range("64:1000").unwrap(), vec![64, 128, 256, 512]);
        assert!(parse_n_range("3:10").is_err());
        assert!(parse_n_range("10:5").is_err());
        assert!(parse_n_range("64").is_err());
    }

    #[test]
    fn part_size_clamps_to_valid_splits() {
        assert_eq!(part_size(64, 0.5).unwrap(), 8);
        assert_eq!(part_size(64, 0.0).unwrap(), 2);
        assert_eq!(part_size(64, 1.0).unwrap(), 62);
        assert!(part_size(3, 0.5).is_err());
        assert!(part_size(64, 1.5).is_err());
    }
}

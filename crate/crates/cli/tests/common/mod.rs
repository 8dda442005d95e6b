//! Helpers shared by the integration suites: deterministic configuration
//! builders (library-level twins of the binary's generators) and process
//! plumbing for driving the installed binary.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::process::{Command, Output};

use rand::Rng;

use distdist_core::circle::CircleSplit;
use distdist_core::exact::{rat, rat_int, Rat};
use distdist_core::geom::{
    circle_point, line_points, random_integer_points, rng_from_seed, ExactPoint, Forbid,
    LineSpacing, PointSet,
};
use distdist_core::line::LineSplit;

pub fn splitmix64(seed: u64) -> u64 {
    let mut z = seed.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn part_size(n: u64, alpha: f64) -> usize {
    ((n as f64).powf(alpha).round() as u64).clamp(2, n - 2) as usize
}

fn half_width(n2: usize) -> i64 {
    (((n2 as f64) * 1.5).sqrt().ceil() as i64).max(3)
}

/// Line configuration: `n1` evenly spaced points on the x-axis, `n2` random
/// integer points off it.
pub fn line_split_parts(n1: usize, n2: usize, seed: u64) -> LineSplit {
    let p1 = line_points(
        n1,
        &LineSpacing::Evenly,
        &rat_int(0),
        &rat_int(0),
        splitmix64(seed ^ 2),
    )
    .unwrap();
    let p2 = random_integer_points(n2, splitmix64(seed ^ 1), half_width(n2), Forbid::XAxis)
        .unwrap();
    LineSplit::new(p1, p2).unwrap()
}

pub fn line_split(n: u64, alpha: f64, seed: u64) -> LineSplit {
    let n1 = part_size(n, alpha);
    line_split_parts(n1, n as usize - n1, seed)
}

/// Circle configuration, mirror-symmetric across the x-axis so that the
/// bipartite distance classes are genuinely populated: parameters come in
/// `+-t` pairs and ambient integer points in `(u, +-v)` pairs.
pub fn circle_split(n: u64, alpha: f64, seed: u64) -> CircleSplit {
    let n1 = part_size(n, alpha);
    let n2 = n as usize - n1;

    let mut rng = rng_from_seed(splitmix64(seed ^ 2));
    let mut params: BTreeSet<Rat> = BTreeSet::new();
    while params.len() < n1.div_ceil(2) {
        let t = rat(rng.gen_range(1..=48), rng.gen_range(1..=48));
        if t != rat(1, 1) {
            params.insert(t);
        }
    }
    let mut points = Vec::with_capacity(n1);
    for t in &params {
        points.push(circle_point(t));
        points.push(circle_point(&-t));
    }
    points.truncate(n1);
    let p1 = PointSet::new(format!("circle{n1}"), points).unwrap();

    let mut rng = rng_from_seed(splitmix64(seed ^ 1));
    let half = half_width(n2);
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
        ambient.push(ExactPoint::from_ints(u, v));
        ambient.push(ExactPoint::from_ints(u, -v));
    }
    ambient.truncate(n2);
    let p2 = PointSet::new(format!("box{n2}"), ambient).unwrap();

    CircleSplit::new(p1, p2).unwrap()
}

/// Path of the compiled binary under test.
pub fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_distdist")
}

/// Run the binary with the given arguments (no stdin), capturing everything.
pub fn run(args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .output()
        .expect("binary should spawn")
}

/// Run the binary with an extra environment variable set.
pub fn run_with_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(bin())
        .args(args)
        .env(key, value)
        .output()
        .expect("binary should spawn")
}

pub fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout should be UTF-8")
}

pub fn stderr_str(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr should be UTF-8")
}

/// Drop the timestamp line, the one field excluded from the determinism
/// contract.
pub fn strip_timestamp(text: &str) -> String {
    text.lines()
        .filter(|l| !l.contains("generated_unix"))
        .collect::<Vec<_>>()
        .join("\n")
}

//! The `sweep` subcommand: a grid of generated configurations, one CSV row
//! per `(n, alpha)` cell.
//!
//! Cells are computed in row order (n outer, alpha inner) and the CSV is
//! assembled single-threaded, so output order is deterministic; the heavy
//! per-cell library operations parallelize internally. Each cell derives its
//! own seed from the base seed with SplitMix64, so adding or removing grid
//! points never shifts the seeds of other cells.
//!
//! The `incidences` column is filled only when the cell ran the exact
//! incidence count and cross-checked it against `q2` (`verified=true`);
//! under `--verify auto` that happens when the estimated join cost
//! `|P1| * |Gamma|` stays below [`AUTO_VERIFY_COST_CAP`]. A mismatch aborts
//! the whole sweep with the invariant-violation exit code.

use std::fmt::Write as _;

use distdist_core::circle;
use distdist_core::distance::distinct_distances;
use distdist_core::geom::PointSet;
use distdist_core::line;

use crate::args::{Mode, SweepArgs, VerifyPolicy};
use crate::config::{
    generated_circle_split, generated_line_split, parse_alpha_range, parse_n_range, splitmix64,
    CmdResult, Failure,
};
use crate::report::write_text;

/// `--verify auto` runs the incidence cross-check when `|P1| * |Gamma|` is
/// at most this.
pub const AUTO_VERIFY_COST_CAP: u128 = 2_000_000;

pub const CSV_HEADER: &str =
    "mode,n,alpha,n1,n2,seed,D,q_total,q1,q2,incidences,verified,gamma,distance_classes,cs_lower,t,v_max";

fn cell_seed(base: u64, n: u64, alpha_index: usize) -> u64 {
    splitmix64(base ^ splitmix64(n) ^ splitmix64(0xC3_11 + alpha_index as u64))
}

struct CellRow {
    mode: &'static str,
    n: u64,
    alpha: f64,
    n1: u64,
    n2: u64,
    seed: u64,
    d: u64,
    q_total: u64,
    q1: u64,
    q2: u64,
    incidences: Option<u64>,
    gamma: u64,
    distance_classes: u64,
    cs_lower: String,
    t: Option<u64>,
    v_max: Option<u64>,
}

impl CellRow {
    fn to_csv(&self) -> String {
        let opt = |v: Option<u64>| v.map(|x| x.to_string()).unwrap_or_default();
        format!(
            "{},{},{:.4},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.mode,
            self.n,
            self.alpha,
            self.n1,
            self.n2,
            self.seed,
            self.d,
            self.q_total,
            self.q1,
            self.q2,
            opt(self.incidences),
            self.incidences.is_some(),
            self.gamma,
            self.distance_classes,
            self.cs_lower,
            opt(self.t),
            opt(self.v_max),
        )
    }
}

fn union_of(p1: &PointSet, p2: &PointSet) -> CmdResult<PointSet> {
    let mut pts = p1.points().to_vec();
    pts.extend_from_slice(p2.points());
    Ok(PointSet::new("sweep-union", pts)?)
}

fn should_verify(policy: VerifyPolicy, n1: u64, gamma: u64) -> bool {
    match policy {
        VerifyPolicy::Always => true,
        VerifyPolicy::Never => false,
        VerifyPolicy::Auto => (n1 as u128) * (gamma as u128) <= AUTO_VERIFY_COST_CAP,
    }
}

fn line_cell(n: u64, alpha: f64, seed: u64, policy: VerifyPolicy) -> CmdResult<CellRow> {
    let split = generated_line_split(n, alpha, seed)?;
    let stats = line::build_quadruple_stats(&split)?;
    let family = line::build_hyperbola_family(split.p2());
    let mult = line::multiplicity_vs_vertical(split.p2(), &family)?;
    let n1 = split.p1().len() as u64;
    let incidences = if should_verify(policy, n1, family.gamma_size()) {
        let count = line::count_incidences(&split, &family);
        if count != stats.q2 {
            return Err(Failure::invariant(format!(
                "sweep cell (n={n}, alpha={alpha:.4}): incidences {count} != q2 {}",
                stats.q2
            )));
        }
        Some(count)
    } else {
        None
    };
    let d = distinct_distances(&union_of(split.p1(), split.p2())?)? as u64;
    Ok(CellRow {
        mode: "line",
        n,
        alpha,
        n1,
        n2: split.p2().len() as u64,
        seed,
        d,
        q_total: stats.q_total,
        q1: stats.q1,
        q2: stats.q2,
        incidences,
        gamma: family.gamma_size(),
        distance_classes: stats.class_sizes.len() as u64,
        cs_lower: stats.cauchy_schwarz_lower.to_string(),
        t: Some(mult.t),
        v_max: Some(mult.v_max),
    })
}

fn circle_cell(n: u64, alpha: f64, seed: u64, policy: VerifyPolicy) -> CmdResult<CellRow> {
    let split = generated_circle_split(n, alpha, seed)?;
    let stats = circle::build_quadruple_stats(&split)?;
    let family = circle::build_curve_family(split.p2());
    let n1 = split.p1().len() as u64;
    let incidences = if should_verify(policy, n1, family.gamma_size()) {
        let count = circle::count_incidences(&split, &family);
        if count != stats.q2 {
            return Err(Failure::invariant(format!(
                "sweep cell (n={n}, alpha={alpha:.4}): incidences {count} != q2 {}",
                stats.q2
            )));
        }
        Some(count)
    } else {
        None
    };
    let d = distinct_distances(&union_of(split.p1(), split.p2())?)? as u64;
    Ok(CellRow {
        mode: "circle",
        n,
        alpha,
        n1,
        n2: split.p2().len() as u64,
        seed,
        d,
        q_total: stats.q_total,
        q1: stats.q1,
        q2: stats.q2,
        incidences,
        gamma: family.gamma_size(),
        distance_classes: stats.class_sizes.len() as u64,
        cs_lower: stats.cauchy_schwarz_lower.to_string(),
        t: None,
        v_max: None,
    })
}

pub fn run_sweep(args: &SweepArgs) -> CmdResult<()> {
    let alphas = parse_alpha_range(&args.alpha)?;
    let ns = parse_n_range(&args.n)?;

    let mut csv = String::with_capacity(1024);
    csv.push_str(CSV_HEADER);
    csv.push('\n');
    for &n in &ns {
        for (ai, &alpha) in alphas.iter().enumerate() {
            let seed = cell_seed(args.seed, n, ai);
            let row = match args.mode {
                Mode::Line => line_cell(n, alpha, seed, args.verify)?,
                Mode::Circle => circle_cell(n, alpha, seed, args.verify)?,
            };
            let _ = writeln!(csv, "{}", row.to_csv());
        }
    }

    match &args.csv {
        Some(path) => write_text(path, &csv),
        None => {
            print!("{csv}");
            Ok(())
        }
    }
}

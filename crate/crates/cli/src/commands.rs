//! The `analyze`, `line`, and `circle` subcommands.

use serde::Serialize;

use distdist_core::circle::{
    self, build_curve_family, circle_ledger, CircleLedger, CircleSplit, ENUMERATION_PAIR_CAP,
};
use distdist_core::distance;
use distdist_core::line::{
    self, build_hyperbola_family, hyperbola_class_key, line_ledger, LineLedger, LineSplit,
};
use distdist_core::quad::QuadrupleStats;

use crate::args::{AnalyzeArgs, CircleArgs, LineArgs};
use crate::config::{
    self, describe_source, CmdResult, Failure, EXIT_GUARD,
};
use crate::report::{emit, Envelope};

/// `max_concyclic` is cubic in n; refuse beyond this size unless forced.
pub const ANALYZE_POINT_CAP: u64 = 600;

/// Refuse to dump curve tables beyond this size unless forced.
pub const CURVE_DUMP_CAP: u64 = 50_000;

fn guard(what: &str, value: u64, cap: u64, force: bool) -> CmdResult<()> {
    if value <= cap {
        return Ok(());
    }
    if force {
        eprintln!("warning: {what} = {value} exceeds cap {cap}; proceeding under --force");
        return Ok(());
    }
    Err(Failure {
        code: EXIT_GUARD,
        message: format!("size guard: {what} = {value} exceeds cap {cap} (use --force to proceed)"),
    })
}

pub fn run_analyze(args: &AnalyzeArgs) -> CmdResult<()> {
    let (ps, source) = match (&args.input, &args.lattice) {
        (Some(path), None) => (
            config::load_pointset(path)?,
            describe_source(Some(path), None, None, None, None),
        ),
        (None, Some(spec)) => {
            let (w, h) = config::parse_lattice(spec)?;
            (
                distdist_core::geom::lattice(w, h)?,
                describe_source(None, Some(spec), None, None, None),
            )
        }
        _ => {
            return Err(Failure::input(
                "analyze needs exactly one of --input or --lattice",
            ))
        }
    };
    guard("analyze point count", ps.len() as u64, ANALYZE_POINT_CAP, args.force)?;
    let body = distance::analyze(&ps)?;
    emit(
        &Envelope::new("analyze", source, None, body),
        args.out.as_deref(),
    )
}

/// Echo of the brute-force oracle cross-check (only emitted when it agreed;
/// disagreement aborts the run with the invariant-violation exit code).
#[derive(Debug, Serialize)]
struct OracleEcho {
    pairs: u64,
    q_total: u64,
    q1: u64,
    q2: u64,
}

fn oracle_echo(
    pairs: u64,
    oracle: QuadrupleStats,
    ledger_q: (u64, u64, u64),
) -> CmdResult<OracleEcho> {
    let (q_total, q1, q2) = ledger_q;
    if (oracle.q_total, oracle.q1, oracle.q2) != (q_total, q1, q2) {
        return Err(Failure::invariant(format!(
            "oracle disagrees: ledger (q_total, q1, q2) = ({q_total}, {q1}, {q2}), \
             enumeration = ({}, {}, {})",
            oracle.q_total, oracle.q1, oracle.q2
        )));
    }
    Ok(OracleEcho {
        pairs,
        q_total: oracle.q_total,
        q1: oracle.q1,
        q2: oracle.q2,
    })
}

#[derive(Debug, Serialize)]
struct LineCurveRow {
    /// Indices into P2 of the representative cross pair.
    rep: (u32, u32),
    /// Class key: the hyperbola is determined by (p_x, q_x, q_y^2 - p_y^2).
    p_x: String,
    q_x: String,
    offset: String,
    multiplicity: u64,
}

#[derive(Debug, Serialize)]
struct LineBody {
    #[serde(flatten)]
    ledger: LineLedger,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<OracleEcho>,
    #[serde(skip_serializing_if = "Option::is_none")]
    curves: Option<Vec<LineCurveRow>>,
}

fn build_line_split(args: &LineArgs) -> CmdResult<(LineSplit, String)> {
    match (&args.input, &args.lattice, args.n, args.alpha) {
        (Some(path), None, None, None) => {
            let ps = config::load_pointset(path)?;
            Ok((
                LineSplit::from_pointset(&ps)?,
                describe_source(Some(path), None, None, None, None),
            ))
        }
        (None, Some(spec), None, None) => {
            let (w, h) = config::parse_lattice(spec)?;
            Ok((
                config::lattice_line_split(w, h, args.row)?,
                describe_source(None, Some(spec), Some(args.row), None, None),
            ))
        }
        (None, None, Some(n), Some(alpha)) => Ok((
            config::generated_line_split(n, alpha, args.seed)?,
            describe_source(None, None, None, Some(n), Some(alpha)),
        )),
        _ => Err(Failure::input(
            "line needs exactly one of --input, --lattice, or --n with --alpha",
        )),
    }
}

pub fn run_line(args: &LineArgs) -> CmdResult<()> {
    let (split, source) = build_line_split(args)?;
    let ledger = line_ledger(&split)?;

    let oracle = if args.oracle {
        let pairs = (split.p1().len() * split.p2().len()) as u64;
        let stats = if args.force {
            if pairs > line::ENUMERATION_PAIR_CAP {
                eprintln!(
                    "warning: oracle pair count {pairs} exceeds cap {}; proceeding under --force",
                    line::ENUMERATION_PAIR_CAP
                );
            }
            line::quadruple_enumeration_oracle_with_cap(&split, u64::MAX)?
        } else {
            line::quadruple_enumeration_oracle(&split)?
        };
        Some(oracle_echo(
            pairs,
            stats,
            (ledger.q_total, ledger.q1, ledger.q2),
        )?)
    } else {
        None
    };

    let curves = if args.dump_curves {
        let family = build_hyperbola_family(split.p2());
        guard("curve dump size", family.gamma_size(), CURVE_DUMP_CAP, args.force)?;
        let pts = split.p2().points();
        Some(
            family
                .class_entries()
                .map(|((i, j), multiplicity)| {
                    let key = hyperbola_class_key(&pts[i as usize], &pts[j as usize]);
                    LineCurveRow {
                        rep: (i, j),
                        p_x: key.0.to_string(),
                        q_x: key.1.to_string(),
                        offset: key.2.to_string(),
                        multiplicity,
                    }
                })
                .collect(),
        )
    } else {
        None
    };

    let seed = args.n.map(|_| args.seed);
    let body = LineBody {
        ledger,
        oracle,
        curves,
    };
    emit(
        &Envelope::new("line", source, seed, body),
        args.out.as_deref(),
    )
}

#[derive(Debug, Serialize)]
struct CircleCurveRow {
    /// Indices into P2 of the generating cross pair (every pair is its own
    /// curve: the family is multiplicity-free).
    pair: (u32, u32),
    a_pq: String,
}

#[derive(Debug, Serialize)]
struct CircleBody {
    #[serde(flatten)]
    ledger: CircleLedger,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<OracleEcho>,
    #[serde(skip_serializing_if = "Option::is_none")]
    curves: Option<Vec<CircleCurveRow>>,
}

fn build_circle_split(args: &CircleArgs) -> CmdResult<(CircleSplit, String)> {
    match (&args.input, args.n, args.alpha) {
        (Some(path), None, None) => {
            let ps = config::load_pointset(path)?;
            Ok((
                CircleSplit::from_pointset(&ps)?,
                describe_source(Some(path), None, None, None, None),
            ))
        }
        (None, Some(n), Some(alpha)) => Ok((
            config::generated_circle_split(n, alpha, args.seed)?,
            describe_source(None, None, None, Some(n), Some(alpha)),
        )),
        _ => Err(Failure::input(
            "circle needs exactly one of --input or --n with --alpha",
        )),
    }
}

pub fn run_circle(args: &CircleArgs) -> CmdResult<()> {
    let (split, source) = build_circle_split(args)?;
    let ledger = circle_ledger(&split)?;

    let oracle = if args.oracle {
        let pairs = (split.p1().len() * split.p2().len()) as u64;
        let stats = if args.force {
            if pairs > ENUMERATION_PAIR_CAP {
                eprintln!(
                    "warning: oracle pair count {pairs} exceeds cap {ENUMERATION_PAIR_CAP}; \
                     proceeding under --force"
                );
            }
            circle::quadruple_enumeration_oracle_with_cap(&split, u64::MAX)?
        } else {
            circle::quadruple_enumeration_oracle(&split)?
        };
        Some(oracle_echo(
            pairs,
            stats,
            (ledger.q_total, ledger.q1_concentric, ledger.q2),
        )?)
    } else {
        None
    };

    let curves = if args.dump_curves {
        let family = build_curve_family(split.p2());
        guard("curve dump size", family.gamma_size(), CURVE_DUMP_CAP, args.force)?;
        let rows = family
            .curves()
            .iter()
            .map(|&(i, j)| {
                let curve = family.curve(split.p2(), i, j)?;
                Ok(CircleCurveRow {
                    pair: (i, j),
                    a_pq: curve.a_pq().to_string(),
                })
            })
            .collect::<Result<Vec<_>, distdist_core::error::Error>>()?;
        Some(rows)
    } else {
        None
    };

    let seed = args.n.map(|_| args.seed);
    let body = CircleBody {
        ledger,
        oracle,
        curves,
    };
    emit(
        &Envelope::new("circle", source, seed, body),
        args.out.as_deref(),
    )
}

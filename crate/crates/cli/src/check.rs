//! The `check` subcommand: run every finite lemma suite over a battery of
//! seeded random configurations plus engineered edge cases, and report each
//! observed bound next to its allowed value.
//!
//! A suite failure does not abort the remaining suites; the report always
//! covers everything that ran, and the process exits with the
//! invariant-violation code when any suite failed.

use rand::Rng;
use serde::Serialize;
use serde_json::json;

use distdist_core::circle::{
    self, intersection_count_4d, traces_same_curve, CircleSplit,
};
use distdist_core::error::Error as CoreError;
use distdist_core::geom::{rng_from_seed, ExactPoint};
use distdist_core::line::{self, LineSplit};

use crate::args::{CheckArgs, CheckMode};
use crate::config::{
    generated_circle_split, generated_line_split, splitmix64, CmdResult, Failure, EXIT_INVARIANT,
};
use crate::report::{emit, Envelope};

#[derive(Debug, Serialize)]
struct SuiteResult {
    name: &'static str,
    pass: bool,
    observed: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    failure: Option<String>,
}

impl SuiteResult {
    fn ok(name: &'static str, observed: serde_json::Value) -> Self {
        SuiteResult {
            name,
            pass: true,
            observed,
            failure: None,
        }
    }

    fn fail(name: &'static str, observed: serde_json::Value, message: String) -> Self {
        SuiteResult {
            name,
            pass: false,
            observed,
            failure: Some(message),
        }
    }
}

#[derive(Debug, Serialize)]
struct CheckBody {
    mode: &'static str,
    configs: u64,
    suites: Vec<SuiteResult>,
    all_pass: bool,
}

fn config_seed(base: u64, index: u64) -> u64 {
    splitmix64(base ^ splitmix64(0x5EED_0000 + index))
}

fn line_configs(args: &CheckArgs) -> CmdResult<Vec<LineSplit>> {
    (0..args.configs)
        .map(|i| generated_line_split(args.n, args.alpha, config_seed(args.seed, i)))
        .collect()
}

fn circle_configs(args: &CheckArgs) -> CmdResult<Vec<CircleSplit>> {
    (0..args.configs)
        .map(|i| {
            generated_circle_split(args.n, args.alpha, config_seed(args.seed, 0x1000 + i))
        })
        .collect()
}

/// Drain a per-config `Result` stream, feeding successes to `each`; on the
/// first error, report which config failed and its message.
fn run_all<T>(
    results: impl IntoIterator<Item = Result<T, CoreError>>,
    mut each: impl FnMut(&T),
) -> Result<(), (usize, String)> {
    for (i, r) in results.into_iter().enumerate() {
        match r {
            Ok(v) => each(&v),
            Err(e) => return Err((i, e.to_string())),
        }
    }
    Ok(())
}

fn suite_row(
    name: &'static str,
    status: Result<(), (usize, String)>,
    observed: serde_json::Value,
) -> SuiteResult {
    match status {
        Ok(()) => SuiteResult::ok(name, observed),
        Err((config, message)) => SuiteResult::fail(name, json!({ "config": config }), message),
    }
}

fn line_suites(args: &CheckArgs) -> CmdResult<Vec<SuiteResult>> {
    let configs = line_configs(args)?;
    let mut suites = Vec::new();

    // Identity ledger: q_total = q1 + q2 = 2 sum C(s,2), q2 = incidences,
    // t <= 2 v_max, Cauchy-Schwarz; all enforced inside line_ledger.
    let status = run_all(configs.iter().map(line::line_ledger), |_| {});
    suites.push(suite_row(
        "line-identities",
        status,
        json!({ "configs": configs.len() }),
    ));

    let mut max_choice = 0u64;
    let mut choice_triples = 0u64;
    let status = run_all(configs.iter().map(line::aligned_choice_bound_check), |r| {
        max_choice = max_choice.max(r.max_observed);
        choice_triples += r.triples_tested;
    });
    suites.push(suite_row(
        "line-choice-bound",
        status,
        json!({ "max_observed": max_choice, "bound": 4, "triples": choice_triples }),
    ));

    let mut max_inter = 0u32;
    let mut pairs_tested = 0u64;
    let per_config_pairs = (args.pairs.max(1) / (configs.len() as u64).max(1)).max(50);
    let status = run_all(
        configs.iter().enumerate().map(|(i, split)| {
            let family = line::build_hyperbola_family(split.p2());
            line::degrees_of_freedom_check(
                split.p2(),
                &family,
                per_config_pairs,
                config_seed(args.seed, 0x2000 + i as u64),
            )
        }),
        |r| {
            max_inter = max_inter.max(r.max_intersections);
            pairs_tested += r.pairs_tested;
        },
    );
    suites.push(suite_row(
        "line-hyperbola-intersections",
        status,
        json!({ "max_intersections": max_inter, "bound": 2, "pairs": pairs_tested }),
    ));

    let mut max_through = 0u64;
    let status = run_all(
        configs.iter().enumerate().map(|(i, split)| {
            let family = line::build_hyperbola_family(split.p2());
            line::three_point_check(split, &family, 200, config_seed(args.seed, 0x3000 + i as u64))
        }),
        |&through| max_through = max_through.max(through),
    );
    suites.push(suite_row(
        "line-three-point",
        status,
        json!({ "max_classes_through_triple": max_through, "bound": 1 }),
    ));

    let mut max_t = 0u64;
    let mut max_v = 0u64;
    let status = run_all(
        configs.iter().map(|split| {
            let family = line::build_hyperbola_family(split.p2());
            line::multiplicity_vs_vertical(split.p2(), &family)
        }),
        |r| {
            max_t = max_t.max(r.t);
            max_v = max_v.max(r.v_max);
        },
    );
    suites.push(suite_row(
        "line-multiplicity",
        status,
        json!({ "max_t": max_t, "max_v_max": max_v, "law": "t <= 2*v_max" }),
    ));

    Ok(suites)
}

/// Random nonzero coordinate in a small box.
fn nonzero(rng: &mut impl Rng, half: i64) -> i64 {
    loop {
        let v = rng.gen_range(-half..=half);
        if v != 0 {
            return v;
        }
    }
}

fn off_axes_point(rng: &mut impl Rng, half: i64) -> ExactPoint {
    ExactPoint::from_ints(nonzero(rng, half), nonzero(rng, half))
}

/// A random cross pair (p, q) with |p| != |q| (so its curve exists).
fn valid_pair(rng: &mut impl Rng, half: i64) -> (ExactPoint, ExactPoint) {
    loop {
        let p = off_axes_point(rng, half);
        let q = off_axes_point(rng, half);
        if p.norm2() != q.norm2() {
            return (p, q);
        }
    }
}

fn scale_point(p: &ExactPoint, k: i64) -> ExactPoint {
    let k = distdist_core::exact::rat_int(k);
    ExactPoint::new(&p.x * &k, &p.y * &k)
}

/// Engineered singular-matrix intersection cases: scaling one or both pairs
/// by an integer factor makes the corresponding 2x2 dot-product matrix
/// singular, exercising the degenerate solver paths.
fn singular_suite(args: &CheckArgs) -> SuiteResult {
    let mut rng = rng_from_seed(config_seed(args.seed, 0x4000));
    let mut max_real = 0u32;
    let mut max_complex = 0u32;
    let mut both_singular = 0u64;
    let mut one_singular = 0u64;
    let mut produced = 0u64;
    const FACTORS: [i64; 6] = [1, -1, 2, 3, -2, -3];
    while produced < args.singular {
        let (pa, qa) = valid_pair(&mut rng, 5);
        let k = FACTORS[rng.gen_range(0..FACTORS.len())];
        let both = produced % 2 == 0;
        let (pb, qb) = if both {
            let m = FACTORS[rng.gen_range(0..FACTORS.len())];
            if k == 1 && m == 1 {
                // That would be the same cross pair, hence the same curve.
                continue;
            }
            (scale_point(&pa, k), scale_point(&qa, m))
        } else {
            (scale_point(&pa, k), off_axes_point(&mut rng, 5))
        };
        if pb.norm2() == qb.norm2() {
            continue;
        }
        if traces_same_curve(&pa, &qa, &pb, &qb) {
            continue;
        }
        match intersection_count_4d(&pa, &qa, &pb, &qb) {
            Ok(count) => {
                max_real = max_real.max(count.real);
                max_complex = max_complex.max(count.complex);
                if both {
                    both_singular += 1;
                } else {
                    one_singular += 1;
                }
                produced += 1;
            }
            Err(e) => {
                return SuiteResult::fail(
                    "circle-4d-singular",
                    json!({ "case": produced }),
                    e.to_string(),
                );
            }
        }
    }
    SuiteResult::ok(
        "circle-4d-singular",
        json!({
            "max_real": max_real,
            "max_complex": max_complex,
            "bound": 4,
            "both_singular": both_singular,
            "one_singular": one_singular,
        }),
    )
}

/// The same-curve conditions must hold exactly when the two cross pairs are
/// equal. Every fourth tuple is an engineered equal pair so both directions
/// of the equivalence get exercised.
fn same_curve_suite(args: &CheckArgs) -> SuiteResult {
    let mut rng = rng_from_seed(config_seed(args.seed, 0x5000));
    let mut equal_pairs = 0u64;
    for i in 0..args.tuples {
        let (pa, qa) = valid_pair(&mut rng, 6);
        let (pb, qb) = if i % 4 == 0 {
            (pa.clone(), qa.clone())
        } else {
            valid_pair(&mut rng, 6)
        };
        let same = traces_same_curve(&pa, &qa, &pb, &qb);
        let equal = pa == pb && qa == qb;
        if same != equal {
            return SuiteResult::fail(
                "circle-same-curve",
                json!({ "tuple": i, "same_curve": same, "pairs_equal": equal }),
                "same-curve conditions disagree with pair equality".to_string(),
            );
        }
        if equal {
            equal_pairs += 1;
        }
    }
    SuiteResult::ok(
        "circle-same-curve",
        json!({ "tuples": args.tuples, "equal_pairs": equal_pairs }),
    )
}

fn circle_suites(args: &CheckArgs) -> CmdResult<Vec<SuiteResult>> {
    let configs = circle_configs(args)?;
    let mut suites = Vec::new();

    let status = run_all(configs.iter().map(circle::circle_ledger), |_| {});
    suites.push(suite_row(
        "circle-identities",
        status,
        json!({ "configs": configs.len() }),
    ));

    let mut max_choice = 0u64;
    let mut choice_triples = 0u64;
    let status = run_all(
        configs.iter().map(circle::aligned_choice_bound_check),
        |r| {
            max_choice = max_choice.max(r.max_observed);
            choice_triples += r.triples_tested;
        },
    );
    suites.push(suite_row(
        "circle-choice-bound",
        status,
        json!({ "max_observed": max_choice, "bound": 2, "triples": choice_triples }),
    ));

    let mut max_real = 0u32;
    let mut max_complex = 0u32;
    let mut pairs_tested = 0u64;
    let per_config_pairs = (args.pairs.max(1) / (configs.len() as u64).max(1)).max(50);
    let status = run_all(
        configs.iter().enumerate().map(|(i, split)| {
            let family = circle::build_curve_family(split.p2());
            circle::degrees_of_freedom_check(
                split.p2(),
                &family,
                per_config_pairs,
                config_seed(args.seed, 0x6000 + i as u64),
            )
        }),
        |r| {
            max_real = max_real.max(r.max_real);
            max_complex = max_complex.max(r.max_complex);
            pairs_tested += r.pairs_tested;
        },
    );
    suites.push(suite_row(
        "circle-4d-intersections",
        status,
        json!({
            "max_real": max_real,
            "max_complex": max_complex,
            "bound": 4,
            "pairs": pairs_tested,
        }),
    ));

    suites.push(singular_suite(args));
    suites.push(same_curve_suite(args));

    Ok(suites)
}

pub fn run_check(args: &CheckArgs) -> CmdResult<()> {
    if args.configs == 0 {
        return Err(Failure::input("--configs must be positive"));
    }
    let mut suites = Vec::new();
    if matches!(args.mode, CheckMode::Line | CheckMode::Both) {
        suites.extend(line_suites(args)?);
    }
    if matches!(args.mode, CheckMode::Circle | CheckMode::Both) {
        suites.extend(circle_suites(args)?);
    }
    let all_pass = suites.iter().all(|s| s.pass);
    let mode = match args.mode {
        CheckMode::Line => "line",
        CheckMode::Circle => "circle",
        CheckMode::Both => "both",
    };
    let body = CheckBody {
        mode,
        configs: args.configs,
        suites,
        all_pass,
    };
    let source = format!(
        "generated:configs={}:n={}:alpha={:.4}",
        args.configs, args.n, args.alpha
    );
    emit(
        &Envelope::new("check", source, Some(args.seed), body),
        args.out.as_deref(),
    )?;
    if all_pass {
        Ok(())
    } else {
        Err(Failure {
            code: EXIT_INVARIANT,
            message: "one or more lemma suites failed (see report)".to_string(),
        })
    }
}

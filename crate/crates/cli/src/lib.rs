//! Argument handling and report assembly for the `maq` binary.

use clap::{Args, Parser, Subcommand};
use maq_core::constructions::{torsion_pipeline, PipelineOptions};
use maq_core::equivariant::{action_report, equivariant_limit};
use maq_core::io::{graded_to_json, load_complex, load_subgroup};
use maq_core::moment_angle::{
    buchstaber_real, hochster, skeleton_quotient_hrk, skeleton_wedge, sr_dimension, trc_verdict, trk_moment_angle,
    DEFAULT_BOUND_M,
};
use maq_core::oracle::{oracle_suite, OracleBounds};
use maq_core::quotient::{cubical_quotient_cohomology, koszul_cohomology, trc_report};
use maq_core::simplicial::{set_of, vertices_of, SimplicialComplex};
use maq_core::{MaqError, Result};
use serde_json::{json, Map, Value};

/// Environment variable holding the worker thread count.
pub const THREADS_ENV: &str = "MAQ_THREADS";

#[derive(Debug, Parser)]
#[command(name = "maq", version, about = "Cohomology of quotients of moment-angle complexes")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Largest cohomological degree to compute.
    #[arg(long, global = true, default_value_t = 12, value_parser = clap::value_parser!(i64).range(0..))]
    pub max_degree: i64,
    /// Refuse inputs with more vertices than this.
    #[arg(long, global = true, default_value_t = DEFAULT_BOUND_M, value_parser = positive)]
    pub bound_m: usize,
    /// Print a table instead of JSON.
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Write the report to this file instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<String>,
}

fn positive(s: &str) -> std::result::Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Debug, Args)]
pub struct PairArgs {
    /// Complex file or `builtin:` name.
    #[arg(long)]
    pub complex: String,
    /// Subgroup file.
    #[arg(long)]
    pub subgroup: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cohomology of the moment-angle complex by Hochster's formula.
    Hochster { complex: String },
    /// Cohomology of the quotient by a subgroup.
    QuotientCohomology(PairArgs),
    /// Equivariant cohomology as a limit over the face category.
    Equivariant(PairArgs),
    /// Freeness and Condition 1 with witnesses.
    Check(PairArgs),
    /// Contraction along a vertex set, with the coordinate quotient check.
    Contract {
        complex: String,
        /// Comma separated vertices, e.g. `1,3`.
        #[arg(long, value_delimiter = ',')]
        vertices: Vec<usize>,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(1..=2))]
        d: u8,
    },
    /// Betti numbers and quotient rank for the skeleta of a simplex.
    SkeletonReport {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: usize,
    },
    /// Toral rank check for a complex, or for one action if a subgroup is given.
    Trc {
        complex: String,
        #[arg(long)]
        subgroup: Option<String>,
    },
    /// Real Buchstaber number by exhaustive search.
    BuchstaberReal { complex: String },
    /// Free circle action with a prescribed torsion summand.
    TorsionBuild {
        #[arg(long)]
        input: String,
        #[arg(long)]
        p: i64,
        #[arg(long)]
        verify_cohomology: bool,
    },
    /// Randomized cross-checks.
    OracleSuite {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 40)]
        cases: usize,
        #[arg(long, default_value_t = 5)]
        max_m: usize,
    },
}

fn bounded(k: SimplicialComplex, bound_m: usize) -> Result<SimplicialComplex> {
    if k.m() > bound_m {
        return Err(MaqError::bound(format!("m = {} exceeds --bound-m {bound_m}", k.m())));
    }
    Ok(k)
}

fn report(body: Value, provenance: &[&str]) -> Value {
    let mut map = match body {
        Value::Object(map) => map,
        other => {
            let mut map = Map::new();
            map.insert("result".into(), other);
            map
        }
    };
    map.insert("provenance".into(), json!(provenance));
    Value::Object(map)
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn series_json(series: impl IntoIterator<Item = (i64, u128)>) -> Value {
    Value::Object(series.into_iter().map(|(n, r)| (n.to_string(), json!(r))).collect())
}

/// Runs one command. The JSON report on success, the error otherwise.
pub fn dispatch(config: &RunConfig) -> Result<Value> {
    let max = config.max_degree;
    let bound_m = config.bound_m;
    let complex = |src: &str| load_complex(src).and_then(|k| bounded(k, bound_m));
    let pair = |a: &PairArgs| -> Result<_> {
        let k = complex(&a.complex)?;
        let h = load_subgroup(&a.subgroup, Some(k.m()))?;
        Ok((k, h))
    };
    Ok(match &config.command {
        Command::Hochster { complex: src } => {
            let k = complex(src)?;
            let g = hochster(&k, max, bound_m)?;
            report(
                json!({ "m": k.m(), "max_degree": max, "cohomology": graded_to_json(&g), "ranks": g.ranks() }),
                &["Hochster's formula: sum over full subcomplexes of shifted reduced cohomology"],
            )
        }
        Command::QuotientCohomology(args) => {
            let (k, h) = pair(args)?;
            let free = maq_core::equivariant::check_free(&k, &h)?;
            if h.d() == 1 {
                let g = cubical_quotient_cohomology(&k, &h)?.truncate(max);
                report(
                    json!({ "d": 1, "free": free.free, "cohomology": graded_to_json(&g) }),
                    &["free quotient identified with the orbit space of the cubical real moment-angle complex"],
                )
            } else {
                let g = koszul_cohomology(&k, &h, max)?;
                report(
                    json!({ "d": 2, "free": free.free, "associated_graded": true, "cohomology": graded_to_json(&g) }),
                    &[
                        "Eilenberg-Moore collapse under Condition 1: Tor over H*(BL) of the limit module",
                        "groups are the associated graded; extensions are not resolved",
                    ],
                )
            }
        }
        Command::Equivariant(args) => {
            let (k, h) = pair(args)?;
            let g = equivariant_limit(&k, &h, max)?;
            let coefficients = if h.d() == 1 { "F2" } else { "Z" };
            report(
                json!({ "d": h.d(), "coefficients": coefficients, "cohomology": graded_to_json(&g) }),
                &["equivariant cohomology as the limit of H*(BS(I)) over the face category, valid under Condition 1"],
            )
        }
        Command::Check(args) => {
            let (k, h) = pair(args)?;
            let r = action_report(&k, &h)?;
            report(
                json!({ "free": r.free.free, "condition1": r.condition1.holds, "details": to_value(&r) }),
                &["freeness: H meets every facet coordinate subgroup trivially", "Condition 1 checked on covering pairs"],
            )
        }
        Command::Contract { complex: src, vertices, d } => {
            let k = complex(src)?;
            if let Some(&v) = vertices.iter().find(|&&v| v == 0 || v > k.m()) {
                return Err(MaqError::pre(format!("vertex {v} outside 1..={}", k.m())));
            }
            let i0 = set_of(vertices);
            let quotient = k.contraction(i0);
            let sr = (0..=max).map(|n| (n, sr_dimension(&quotient, *d, n))).filter(|&(_, r)| r > 0);
            let agrees = maq_core::equivariant::coordinate_quotient_check(&k, *d, i0, max)?;
            report(
                json!({
                    "contracted": vertices_of(i0),
                    "facets": quotient.facets().iter().map(|&f| vertices_of(f)).collect::<Vec<_>>(),
                    "sr_dimensions": series_json(sr),
                    "limit_matches_sr": agrees,
                }),
                &["coordinate subgroup quotient: the limit is the face ring of the contraction"],
            )
        }
        Command::SkeletonReport { m, k } => {
            let wedge = skeleton_wedge(*m, *k)?;
            let sk = bounded(SimplicialComplex::skeleton(*m, *k)?, bound_m)?;
            let top = (2 * m) as i64;
            let direct = hochster(&sk, top, bound_m)?;
            let quotient = skeleton_quotient_hrk(*m, *k)?;
            let ranks: std::collections::BTreeMap<i64, u128> =
                direct.ranks().into_iter().filter(|&(_, r)| r > 0).map(|(n, r)| (n, r as u128)).collect();
            report(
                json!({
                    "m": m,
                    "k": k,
                    "wedge_ranks": series_json(wedge.clone()),
                    "hochster_ranks": series_json(ranks.clone()),
                    "torsion_free": direct.is_torsion_free(),
                    "agree": ranks == wedge,
                    "quotient": to_value(&quotient),
                }),
                &[
                    "moment-angle complexes of skeleta split as wedges of spheres",
                    "quotient rank from the recursion for a free circle",
                ],
            )
        }
        Command::Trc { complex: src, subgroup } => {
            let k = complex(src)?;
            match subgroup {
                Some(path) => {
                    let h = load_subgroup(path, Some(k.m()))?;
                    report(to_value(&trc_report(&k, &h)?), &["toral rank bound for one free action, ranks from the Koszul model"])
                }
                None => {
                    let top = k.m() as i64 + k.dim().unwrap_or(-1) + 1;
                    let hrk = hochster(&k, top.max(0), bound_m)?.total_rank() as u128;
                    let trk = trk_moment_angle(&k)?;
                    report(
                        json!({ "hrk": hrk, "trk": trk, "bound": 1u128.checked_shl(trk as u32), "verdict": trc_verdict(hrk, trk) }),
                        &["toral rank of a moment-angle complex is m - dim K - 1", "hrk by Hochster's formula"],
                    )
                }
            }
        }
        Command::BuchstaberReal { complex: src } => {
            let k = complex(src)?;
            report(json!({ "m": k.m(), "s_real": buchstaber_real(&k)? }), &["exhaustive search over colorings"])
        }
        Command::TorsionBuild { input, p, verify_cohomology } => {
            let k = load_complex(input)?;
            let opts = PipelineOptions { verify_cohomology: *verify_cohomology, verify_bound: bound_m };
            report(to_value(&torsion_pipeline(&k, *p, &opts)?), &["torsion construction by truncating the simplex along minimal non-faces"])
        }
        Command::OracleSuite { seed, cases, max_m } => {
            let summary = oracle_suite(*seed, &OracleBounds { max_m: *max_m, cases: *cases, max_degree: max });
            report(
                json!({ "passed": summary.passed(), "summary": to_value(&summary) }),
                &["cross-checks between independent computations; failures list their case seeds"],
            )
        }
    })
}

/// Flattens a report into `path: value` lines.
pub fn pretty(report: &Value) -> String {
    fn walk(prefix: &str, v: &Value, out: &mut String) {
        match v {
            Value::Object(map) if !map.is_empty() => {
                for (k, v) in map {
                    let p = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                    walk(&p, v, out);
                }
            }
            Value::Array(items) if items.iter().any(|x| x.is_object()) => {
                for (i, v) in items.iter().enumerate() {
                    walk(&format!("{prefix}[{i}]"), v, out);
                }
            }
            _ => {
                out.push_str(&format!("{prefix:<40} {v}\n"));
            }
        }
    }
    let mut out = String::new();
    walk("", report, &mut out);
    out
}

/// Configures the rayon pool from the environment. Invalid values are ignored.
pub fn init_threads() {
    if let Some(n) = std::env::var(THREADS_ENV).ok().and_then(|s| s.parse::<usize>().ok()).filter(|&n| n > 0) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

/// Runs the command and renders the output. Returns the exit code and text.
pub fn run(config: &RunConfig) -> (i32, String) {
    match dispatch(config) {
        Ok(v) => {
            let text = if config.pretty { pretty(&v) } else { serde_json::to_string_pretty(&v).expect("valid json") };
            (0, text)
        }
        Err(e) => {
            let v = json!({ "error": e.to_string(), "exit_code": e.exit_code() });
            (e.exit_code(), v.to_string())
        }
    }
}

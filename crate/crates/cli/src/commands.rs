use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use hybrid_spanners::additive::{
    build_sourcewise_additive4, build_sourcewise_additive_with, build_sourcewise_emulator2,
};
use hybrid_spanners::graph::{format_emulator, load_emulator, load_graph, random_graph};
use hybrid_spanners::hybrid::{build_hybrid_with, HybridOptions};
use hybrid_spanners::lowerbound::{build_lb_graph_capped, lb_audit, LbMeta};
use hybrid_spanners::sourcewise::build_sourcewise_mult;
use hybrid_spanners::verify::{size_report, verify_emulator, verify_spanner, StretchSpec};
use hybrid_spanners::{Graph, SourceSet, Spanner, SpannerMeta};
use serde::Serialize;
use serde_json::json;

use crate::args::{
    AuditLbArgs, Build, BuildCommon, GenLbArgs, GenRandomArgs, SourceArgs, VerifyArgs,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 2;

pub type Outcome = Result<i32, String>;

pub fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

pub fn write(path: &Path, text: &str) -> Result<(), String> {
    fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_graph_file(path: &Path) -> Result<Graph, String> {
    load_graph(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_sources_file(n: usize, path: &Path) -> Result<SourceSet, String> {
    SourceSet::parse(n, &read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn resolve_sources(n: usize, args: &SourceArgs, seed: u64) -> Result<SourceSet, String> {
    match (&args.sources, args.source_count) {
        (Some(path), _) => load_sources_file(n, path),
        (None, Some(count)) => SourceSet::sample(n, count, seed).map_err(|e| e.to_string()),
        (None, None) => Err("a source set is required (--sources or --source-count)".into()),
    }
}

fn core<T>(r: hybrid_spanners::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

pub fn gen_random(args: &GenRandomArgs) -> Outcome {
    let g = core(random_graph(args.n, args.p, args.seed))?;
    let sources = match args.source_count {
        Some(count) => Some(core(SourceSet::sample(args.n, count, args.seed))?),
        None => None,
    };
    match &args.out {
        Some(path) => write(path, &g.to_edge_list())?,
        None => print!("{}", g.to_edge_list()),
    }
    if let (Some(path), Some(s)) = (&args.sources, sources) {
        write(path, &s.format())?;
    }
    Ok(EXIT_OK)
}

pub fn gen_lb(args: &GenLbArgs) -> Outcome {
    let lg = core(build_lb_graph_capped(
        args.r,
        args.k,
        args.eps,
        args.max_vertices,
    ))?;
    for w in &lg.meta.warnings {
        eprintln!("warning: {w}");
    }
    write(&args.out, &lg.graph.to_edge_list())?;
    if let Some(path) = &args.sources {
        write(path, &lg.sources().format())?;
    }
    if let Some(path) = &args.meta {
        write(
            path,
            &serde_json::to_string_pretty(&lg.meta).expect("meta serializes"),
        )?;
    }
    eprintln!(
        "lower-bound graph: {} vertices, {} edges, N1 = {}, N2 = {}",
        lg.graph.n(),
        lg.graph.m(),
        lg.meta.n1,
        lg.meta.n2
    );
    Ok(EXIT_OK)
}

/// Soft size caps on the bound ratio; above five times the cap is an error.
pub fn size_cap(construction: &str) -> f64 {
    match construction {
        "hybrid" | "swmult" => 100.0,
        "swadd" => 200.0,
        _ => 20.0,
    }
}

pub fn size_status(ratio: f64, cap: f64) -> &'static str {
    if ratio > 5.0 * cap {
        "error"
    } else if ratio > cap {
        "warning"
    } else {
        "ok"
    }
}

#[derive(Serialize)]
struct PhaseCount {
    name: String,
    edges: usize,
}

#[derive(Serialize)]
struct BuildReport {
    construction: String,
    seed: u64,
    input: String,
    n: usize,
    graph_edges: usize,
    sources: Option<Vec<u32>>,
    params: BTreeMap<String, f64>,
    phases: Vec<PhaseCount>,
    size: usize,
    formula: &'static str,
    bound_ratio: f64,
    size_cap: f64,
    size_status: &'static str,
    warnings: Vec<String>,
    details: serde_json::Value,
}

struct Built {
    meta: SpannerMeta,
    size: usize,
    output: String,
    formula: &'static str,
    k: usize,
    sources: Option<SourceSet>,
    details: serde_json::Value,
}

fn spanner_output(s: &Spanner) -> String {
    s.to_edge_list()
}

pub fn build(cmd: &Build) -> Outcome {
    let common: &BuildCommon = match cmd {
        Build::Hybrid { common, .. }
        | Build::Swmult { common, .. }
        | Build::Swadd { common, .. }
        | Build::Emulator { common, .. }
        | Build::Sw4 { common, .. } => common,
    };
    let g = load_graph_file(&common.input)?;
    let n = g.n();
    let seed = common.seed;

    let built = match cmd {
        Build::Hybrid { k, suffix_both, .. } => {
            let run = core(build_hybrid_with(
                &g,
                *k,
                seed,
                HybridOptions {
                    suffix_both: *suffix_both,
                },
            ))?;
            Built {
                size: run.spanner.size(),
                output: spanner_output(&run.spanner),
                meta: run.spanner.meta,
                formula: "hybrid",
                k: *k,
                sources: None,
                details: json!({ "centers": (0..=*k).map(|t| run.clusters.centers(t).len()).collect::<Vec<_>>() }),
            }
        }
        Build::Swmult { sources, k, .. } => {
            let s = resolve_sources(n, sources, seed)?;
            let run = core(build_sourcewise_mult(&g, &s, *k, seed))?;
            Built {
                size: run.spanner.size(),
                output: spanner_output(&run.spanner),
                meta: run.spanner.meta,
                formula: "swmult",
                k: *k,
                sources: Some(s),
                details: json!({ "centers": (0..=*k).map(|t| run.clusters.centers(t).len()).collect::<Vec<_>>() }),
            }
        }
        Build::Swadd {
            sources,
            k,
            retries,
            ..
        } => {
            let s = resolve_sources(n, sources, seed)?;
            let run = core(build_sourcewise_additive_with(&g, &s, *k, seed, *retries))?;
            let details = json!({
                "long_pairs": run.pairs.iter().filter(|p| p.is_long).count(),
                "short_pairs": run.pairs.iter().filter(|p| !p.is_long).count(),
                "bought_paths": run.buys.len(),
                "free_per_level": run.free_per_level,
                "attempts": run.attempts,
                "long_failures": run.long_failures,
            });
            Built {
                size: run.spanner.size(),
                output: spanner_output(&run.spanner),
                meta: run.spanner.meta,
                formula: "swadd",
                k: *k,
                sources: Some(s),
                details,
            }
        }
        Build::Emulator { sources, .. } => {
            let s = resolve_sources(n, sources, seed)?;
            let run = core(build_sourcewise_emulator2(&g, &s))?;
            Built {
                size: run.emulator.m(),
                output: format_emulator(&run.emulator),
                meta: run.meta,
                formula: "emu2",
                k: 1,
                sources: Some(s),
                details: json!({}),
            }
        }
        Build::Sw4 { sources, .. } => {
            let s = resolve_sources(n, sources, seed)?;
            let h = core(build_sourcewise_additive4(&g, &s))?;
            Built {
                size: h.size(),
                output: spanner_output(&h),
                meta: h.meta,
                formula: "sw4",
                k: 1,
                sources: Some(s),
                details: json!({}),
            }
        }
    };

    let epsilon = built.sources.as_ref().map_or(1.0, SourceSet::epsilon);
    let ratio = core(size_report(built.size, n, built.formula, built.k, epsilon))?;
    let cap = size_cap(&built.meta.construction);
    let status = size_status(ratio, cap);
    let mut warnings = built.meta.warnings.clone();
    if status != "ok" {
        warnings.push(format!("size ratio {ratio:.3} above the cap of {cap}"));
    }
    for w in &warnings {
        eprintln!("warning: {w}");
    }
    let report = BuildReport {
        construction: built.meta.construction.clone(),
        seed,
        input: common.input.display().to_string(),
        n,
        graph_edges: g.m(),
        sources: built.sources.as_ref().map(|s| s.as_slice().to_vec()),
        params: built.meta.params.clone(),
        phases: built
            .meta
            .phases
            .iter()
            .map(|(name, edges)| PhaseCount {
                name: name.clone(),
                edges: *edges,
            })
            .collect(),
        size: built.size,
        formula: built.formula,
        bound_ratio: ratio,
        size_cap: cap,
        size_status: status,
        warnings,
        details: built.details,
    };

    write(&common.out, &built.output)?;
    if let Some(path) = &common.report {
        write(
            path,
            &serde_json::to_string_pretty(&report).expect("report serializes"),
        )?;
    }
    eprintln!(
        "{}: {} edges of {}, size ratio {ratio:.3} ({status})",
        report.construction,
        built.size,
        g.m()
    );
    Ok(if status == "error" {
        EXIT_VIOLATION
    } else {
        EXIT_OK
    })
}

pub fn verify(args: &VerifyArgs) -> Outcome {
    let g = load_graph_file(&args.graph)?;
    let spec: StretchSpec = core(args.spec.parse())?;
    let sources = match &args.sources {
        Some(path) => Some(load_sources_file(g.n(), path)?),
        None => None,
    };
    let text = read(&args.candidate)?;
    let report = if spec.emulator {
        let h = load_emulator(&text).map_err(|e| format!("{}: {e}", args.candidate.display()))?;
        let s = sources
            .as_ref()
            .ok_or_else(|| format!("spec `{spec}` needs --sources"))?;
        let beta = spec.bounds[&spec.headline].beta;
        core(verify_emulator(&g, &h, s, beta))?
    } else {
        let h = load_graph(&text).map_err(|e| format!("{}: {e}", args.candidate.display()))?;
        if h.n() != g.n() {
            return Err(format!(
                "candidate has {} vertices, graph has {}",
                h.n(),
                g.n()
            ));
        }
        core(verify_spanner(&g, &h.edge_set(), sources.as_ref(), &spec))?
    };

    let json = report.to_json();
    match &args.report {
        Some(path) => write(path, &json)?,
        None => println!("{json}"),
    }
    eprintln!(
        "{}: {} violations, max_mult {}, max_add {}, size {}",
        report.class,
        report.n_violations,
        report.max_mult.map_or("inf".into(), |m| format!("{m:.3}")),
        report.max_add.map_or("inf".into(), |a| a.to_string()),
        report.size
    );
    Ok(if report.ok() { EXIT_OK } else { EXIT_VIOLATION })
}

pub fn audit_lb(args: &AuditLbArgs) -> Outcome {
    let g = load_graph_file(&args.graph)?;
    let meta: LbMeta = serde_json::from_str(&read(&args.meta)?)
        .map_err(|e| format!("{}: {e}", args.meta.display()))?;
    let cap = (meta.vertices as usize).max(g.n());
    let lg = core(build_lb_graph_capped(meta.r, meta.k, meta.epsilon, cap))?;
    if lg.graph.edge_set() != g.edge_set() || lg.graph.n() != g.n() {
        return Err(format!(
            "{} is not the layered graph described by {}",
            args.graph.display(),
            args.meta.display()
        ));
    }
    let h = load_graph_file(&args.candidate)?;
    if h.n() != g.n() {
        return Err(format!(
            "candidate has {} vertices, graph has {}",
            h.n(),
            g.n()
        ));
    }
    let audit = core(lb_audit(&lg, &h.edge_set()))?;
    let json = audit.to_json();
    match &args.report {
        Some(path) => write(path, &json)?,
        None => println!("{json}"),
    }
    match (audit.witness, audit.witness_holds) {
        (None, _) => {
            eprintln!("no chain, no witness");
            Ok(EXIT_OK)
        }
        (Some((a, b)), true) => {
            eprintln!(
                "witness ({a}, {b}): dist_G = {}, dist_H = {}",
                audit.dist_g.unwrap(),
                audit.dist_h.map_or("inf".into(), |d| d.to_string())
            );
            Ok(EXIT_VIOLATION)
        }
        (Some((a, b)), false) => {
            eprintln!("warning: chain found but pair ({a}, {b}) is not distorted by 2k");
            Ok(EXIT_OK)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn caps_flip_to_errors_above_five_times() {
        assert_eq!(size_status(99.0, size_cap("hybrid")), "ok");
        assert_eq!(size_status(150.0, size_cap("swmult")), "warning");
        assert_eq!(size_status(1000.5, size_cap("swadd")), "error");
        assert_eq!(size_status(21.0, size_cap("sw4")), "warning");
    }
}

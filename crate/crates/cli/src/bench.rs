use std::time::Instant;

use hybrid_spanners::additive::{
    build_sourcewise_additive4, build_sourcewise_additive_with, build_sourcewise_emulator2,
};
use hybrid_spanners::graph::random_graph;
use hybrid_spanners::hybrid::build_hybrid;
use hybrid_spanners::sourcewise::build_sourcewise_mult;
use hybrid_spanners::verify::{verify_emulator, verify_spanner, StretchReport, StretchSpec};
use hybrid_spanners::{EdgeSet, Graph, SourceSet};
use serde::Serialize;

use crate::args::{BenchArgs, Grid, TableFormat};
use crate::commands::{size_cap, size_status, write, Outcome, EXIT_OK, EXIT_VIOLATION};

#[derive(Clone, Debug, Serialize)]
pub struct Row {
    pub construction: &'static str,
    pub n: usize,
    pub k: usize,
    pub sources: usize,
    pub seed: u64,
    pub graph_edges: usize,
    pub size: usize,
    pub bound_ratio: f64,
    pub size_status: &'static str,
    pub max_mult: Option<f64>,
    pub max_add: Option<i64>,
    pub violations: u64,
    pub build_ms: f64,
    pub verify_ms: f64,
}

struct Timed<T> {
    value: T,
    ms: f64,
}

fn timed<T>(f: impl FnOnce() -> T) -> Timed<T> {
    let start = Instant::now();
    let value = f();
    Timed {
        value,
        ms: start.elapsed().as_secs_f64() * 1e3,
    }
}

fn row(
    construction: &'static str,
    g: &Graph,
    k: usize,
    sources: usize,
    seed: u64,
    built: Timed<usize>,
    checked: Timed<StretchReport>,
) -> Row {
    let ratio = checked.value.bound_ratio.unwrap_or(f64::NAN);
    Row {
        construction,
        n: g.n(),
        k,
        sources,
        seed,
        graph_edges: g.m(),
        size: built.value,
        bound_ratio: ratio,
        size_status: size_status(ratio, size_cap(construction)),
        max_mult: checked.value.max_mult,
        max_add: checked.value.max_add,
        violations: checked.value.n_violations,
        build_ms: built.ms,
        verify_ms: checked.ms,
    }
}

fn spanner_row(
    construction: &'static str,
    g: &Graph,
    k: usize,
    s: Option<&SourceSet>,
    seed: u64,
    spec: &StretchSpec,
    build: impl FnOnce() -> EdgeSet,
) -> Row {
    let built = timed(build);
    let checked =
        timed(|| verify_spanner(g, &built.value, s, spec).expect("grid instance verifies"));
    let size = Timed {
        value: built.value.len(),
        ms: built.ms,
    };
    row(
        construction,
        g,
        k,
        s.map_or(0, SourceSet::len),
        seed,
        size,
        checked,
    )
}

pub fn grid_rows(grid: Grid) -> Vec<Row> {
    let quick = grid == Grid::Quick;
    let seeds: &[u64] = if quick { &[1] } else { &[1, 2, 3] };
    let sizes: &[usize] = if quick { &[128] } else { &[128, 256, 512] };
    let mut rows = Vec::new();

    for &n in sizes {
        let p = 8.0 / (n as f64 - 1.0);
        for &seed in seeds {
            let g = random_graph(n, p, seed).expect("valid parameters");
            for k in 2..=4 {
                rows.push(spanner_row(
                    "hybrid",
                    &g,
                    k,
                    None,
                    seed,
                    &StretchSpec::hybrid(k),
                    || {
                        build_hybrid(&g, k, seed)
                            .expect("hybrid builds")
                            .spanner
                            .edges
                    },
                ));
            }
            for eps in [0.25, 0.5] {
                let s = SourceSet::sample(n, (n as f64).powf(eps).ceil() as usize, seed)
                    .expect("enough vertices");
                for k in 2..=4 {
                    rows.push(spanner_row(
                        "swmult",
                        &g,
                        k,
                        Some(&s),
                        seed,
                        &StretchSpec::sourcewise_mult(k),
                        || {
                            build_sourcewise_mult(&g, &s, k, seed)
                                .expect("swmult builds")
                                .spanner
                                .edges
                        },
                    ));
                }
            }
        }
    }

    let additive_sizes: &[usize] = if quick { &[256] } else { &[256, 512] };
    for &n in additive_sizes {
        for &seed in seeds {
            let g = random_graph(n, 0.08, seed).expect("valid parameters");
            let s = SourceSet::sample(n, (n as f64).sqrt().ceil() as usize, seed)
                .expect("enough vertices");
            for k in 1..=2 {
                rows.push(spanner_row(
                    "swadd",
                    &g,
                    k,
                    Some(&s),
                    seed,
                    &StretchSpec::additive(2 * k as u64),
                    || {
                        build_sourcewise_additive_with(&g, &s, k, seed, 2)
                            .expect("swadd builds")
                            .spanner
                            .edges
                    },
                ));
            }
            let built = timed(|| {
                build_sourcewise_emulator2(&g, &s)
                    .expect("emulator builds")
                    .emulator
            });
            let checked =
                timed(|| verify_emulator(&g, &built.value, &s, 2).expect("grid instance verifies"));
            let size = Timed {
                value: built.value.m(),
                ms: built.ms,
            };
            rows.push(row("emulator", &g, 1, s.len(), seed, size, checked));
        }
    }

    for &seed in seeds {
        let g = random_graph(512, 0.05, seed).expect("valid parameters");
        let s = SourceSet::sample(512, 64, seed).expect("enough vertices");
        rows.push(spanner_row(
            "sw4",
            &g,
            2,
            Some(&s),
            seed,
            &StretchSpec::additive(4),
            || {
                build_sourcewise_additive4(&g, &s)
                    .expect("sw4 builds")
                    .edges
            },
        ));
    }
    rows
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "inf".to_string(), |x| x.to_string())
}

pub fn to_csv(rows: &[Row]) -> String {
    let mut out = String::from(
        "construction,n,k,sources,seed,graph_edges,size,bound_ratio,size_status,max_mult,max_add,violations,build_ms,verify_ms\n",
    );
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{:.4},{},{},{},{},{:.2},{:.2}\n",
            r.construction,
            r.n,
            r.k,
            r.sources,
            r.seed,
            r.graph_edges,
            r.size,
            r.bound_ratio,
            r.size_status,
            opt(r.max_mult.map(|m| format!("{m:.4}"))),
            opt(r.max_add),
            r.violations,
            r.build_ms,
            r.verify_ms
        ));
    }
    out
}

pub fn bench(args: &BenchArgs) -> Outcome {
    let rows = grid_rows(args.grid);
    let table = match args.format {
        TableFormat::Csv => to_csv(&rows),
        TableFormat::Json => serde_json::to_string_pretty(&rows).expect("rows serialize"),
    };
    match &args.out {
        Some(path) => write(path, &table)?,
        None => print!("{table}"),
    }
    let violations: u64 = rows.iter().map(|r| r.violations).sum();
    let errors = rows.iter().filter(|r| r.size_status == "error").count();
    eprintln!(
        "{} runs, {violations} violations, {errors} size errors",
        rows.len()
    );
    Ok(if violations == 0 && errors == 0 {
        EXIT_OK
    } else {
        EXIT_VIOLATION
    })
}

mod input;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Result};
use antirips::chromatic::{
    borsuk_graph, color_count, exact_chromatic, graph_homomorphism_search, greedy_coloring, simplex_face_coloring,
    verify_coloring, GreedyOrder, DEFAULT_CHROMATIC_LIMIT,
};
use antirips::complex::{anti_filtration, avr_complex, tavr_complex, Flavor as CoreFlavor, DEFAULT_DIM_CAP};
use antirips::homology::{anti_persistence, betti_numbers};
use antirips::io::{
    barcode_to_csv, barcode_to_json, complex_to_dot, complex_to_json, fmt_real, json_real, plan_to_json,
    sphere_measure_to_json, write_table, SCHEMA_BETTI, SCHEMA_COLORING, SCHEMA_CONSTANTS, SCHEMA_COVER,
    SCHEMA_HOMSEARCH, SCHEMA_LIFT,
};
use antirips::metric::simplex_constants;
use antirips::sphere::{
    avrm_membership, central_core_projection, cover_dim_experiment, flashlight_homotopy, loop_pipeline, rho_flashlight,
    rho_radial, tavr_linear_homotopy, triangle_param, w1_sphere, CoverDimConfig,
};
use antirips::transport::{w1_distance, DiscreteMeasure, TransportPlan};
use antirips::{Error, Graph};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use input::SpaceArgs;
use output::{tagged, with_field, Sink};

const EXIT_TIMEOUT: u8 = 2;
const EXIT_EXHAUSTED: u8 = 3;

/// Anti-Vietoris-Rips complexes, anti-persistence and sphere-measure maps.
#[derive(Parser, Debug)]
#[command(name = "antirips", version)]
struct Cli {
    /// Output format; each command documents which ones it supports.
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,
    /// Write to this file instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true, env = "ANTIRIPS_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Flavor {
    Avr,
    Tavr,
}

impl From<Flavor> for CoreFlavor {
    fn from(f: Flavor) -> Self {
        match f {
            Flavor::Avr => CoreFlavor::Avr,
            Flavor::Tavr => CoreFlavor::Tavr,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Build the complex at one scale (json, csv, dot).
    Complex {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long)]
        r: f64,
        #[arg(long, value_enum, default_value_t = Flavor::Avr)]
        flavor: Flavor,
        #[arg(long, default_value_t = DEFAULT_DIM_CAP)]
        dim_cap: usize,
    },
    /// Anti-persistence barcode of the full filtration (json, csv).
    Persistence {
        #[command(flatten)]
        space: SpaceArgs,
        #[command(flatten)]
        hom: HomArgs,
    },
    /// Betti numbers at one or more scales (json, csv).
    Betti {
        #[command(flatten)]
        space: SpaceArgs,
        /// Comma-separated scales.
        #[arg(long, value_delimiter = ',', required = true)]
        r: Vec<f64>,
        #[command(flatten)]
        hom: HomArgs,
    },
    /// Table of the simplex constants `r_n`, `s_n` (csv, json).
    Constants {
        #[arg(long, default_value_t = 100)]
        n_max: usize,
    },
    /// Optimal transport distance between two measures (json, csv).
    Transport {
        #[arg(long)]
        mu: PathBuf,
        #[arg(long)]
        nu: PathBuf,
        #[command(flatten)]
        space: SpaceArgs,
    },
    /// Maps on measure spaces of spheres.
    Maps {
        #[command(subcommand)]
        map: MapCmd,
    },
    /// Colorings of Borsuk graphs.
    Color {
        #[command(subcommand)]
        how: ColorCmd,
    },
    /// Search for a graph homomorphism `G -> H` (exit 2 on timeout, 3 if none exists).
    Homsearch {
        /// Edge list for `G`.
        #[arg(long)]
        g: PathBuf,
        #[arg(long)]
        g_vertices: Option<usize>,
        /// Edge list for `H`.
        #[arg(long, conflicts_with = "h_complete", required_unless_present = "h_complete")]
        h: Option<PathBuf>,
        #[arg(long)]
        h_vertices: Option<usize>,
        /// Use the complete graph `K_k` as `H`.
        #[arg(long)]
        h_complete: Option<usize>,
        #[arg(long, default_value_t = 10_000)]
        timeout_ms: u64,
    },
}

#[derive(Args, Debug)]
struct HomArgs {
    #[arg(long, value_enum, default_value_t = Flavor::Avr)]
    flavor: Flavor,
    /// Highest homology dimension reported.
    #[arg(long, default_value_t = 2)]
    max_dim: usize,
    /// Simplex dimension cap (default: one above `--max-dim`).
    #[arg(long)]
    dim_cap: Option<usize>,
}

impl HomArgs {
    fn cap(&self) -> usize {
        self.dim_cap.unwrap_or(self.max_dim + 1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum LoopMap {
    Identity,
    Antipodal,
    Reflect,
    Constant,
}

#[derive(Subcommand, Debug)]
enum MapCmd {
    /// Send a measure to the Dirac at its normalized barycenter.
    CentralCore {
        #[arg(long)]
        measure: PathBuf,
    },
    /// Retraction of two-point far measures onto antipodal pairs; `--t` gives the homotopy.
    Flashlight {
        #[arg(long)]
        measure: PathBuf,
        #[arg(long)]
        r: f64,
        #[arg(long)]
        t: Option<f64>,
    },
    /// Radial map on two-cluster measures; `--t` gives the linear homotopy.
    Radial {
        #[arg(long)]
        measure: PathBuf,
        #[arg(long)]
        r: f64,
        #[arg(long)]
        t: Option<f64>,
    },
    /// Equilateral triangle measure on the circle spanned by `v0`, `v1`.
    Triangle {
        #[arg(long, value_parser = input::vector)]
        v0: Vec<f64>,
        #[arg(long, value_parser = input::vector)]
        v1: Vec<f64>,
        #[arg(long, value_parser = input::vector)]
        y: Vec<f64>,
        #[arg(long, value_parser = input::vector)]
        x: Vec<f64>,
        #[arg(long)]
        r: f64,
    },
    /// Push a great-circle loop through a map, project and lift.
    LiftLoop {
        #[arg(long, value_enum, default_value_t = LoopMap::Identity)]
        map: LoopMap,
        #[arg(long, default_value_t = 1)]
        sphere: usize,
        #[arg(long, default_value_t = 32)]
        resolution: usize,
        #[arg(long, default_value_t = 2.5)]
        r: f64,
        #[arg(long)]
        doubled: bool,
        #[arg(long)]
        reversed: bool,
    },
    /// Covering-dimension experiment on the measure space of the circle.
    CoverDim {
        #[arg(long, default_value_t = 2.5)]
        r: f64,
        #[arg(long, default_value_t = 0.3)]
        eps: f64,
        #[arg(long, default_value_t = 25)]
        angle_steps: usize,
        #[arg(long, default_value_t = 20)]
        gap_steps: usize,
        #[arg(long, default_value_t = 20)]
        weight_steps: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Order {
    Natural,
    Degree,
}

#[derive(Subcommand, Debug)]
enum ColorCmd {
    /// Color sphere points by the facets of an inscribed regular simplex.
    Faces {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long)]
        alpha: f64,
    },
    /// Greedy coloring of the Borsuk graph.
    Greedy {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long)]
        alpha: f64,
        #[arg(long, value_enum, default_value_t = Order::Degree)]
        order: Order,
    },
    /// Chromatic number of the Borsuk graph.
    Exact {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value_t = DEFAULT_CHROMATIC_LIMIT)]
        limit: usize,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(k) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(k).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn pick(format: Option<Format>, default: Format, allowed: &[Format]) -> Result<Format> {
    let f = format.unwrap_or(default);
    if !allowed.contains(&f) {
        bail!("format {f:?} is not supported here");
    }
    Ok(f)
}

fn run(cli: Cli) -> Result<u8> {
    let sink = Sink { path: cli.output };
    let fmt = cli.format;
    match cli.cmd {
        Cmd::Complex { space, r, flavor, dim_cap } => {
            let f = pick(fmt, Format::Json, &[Format::Json, Format::Csv, Format::Dot])?;
            let s = space.load()?;
            let c = match flavor {
                Flavor::Avr => avr_complex(&s, r, dim_cap),
                Flavor::Tavr => tavr_complex(&s, r, dim_cap),
            };
            match f {
                Format::Json => sink.json(&with_field(complex_to_json(&c), "r", json_real(r)))?,
                Format::Dot => sink.text(complex_to_dot(&c, Some(s.labels())))?,
                Format::Csv => {
                    let mut out = String::from("dim,value,vertices\n");
                    for x in c.simplices() {
                        let vs: Vec<String> = x.vertices.iter().map(usize::to_string).collect();
                        out.push_str(&format!("{},{},{}\n", x.dim(), fmt_real(x.value), vs.join(" ")));
                    }
                    sink.text(out)?
                }
            }
        }
        Cmd::Persistence { space, hom } => {
            let f = pick(fmt, Format::Json, &[Format::Json, Format::Csv])?;
            let s = space.load()?;
            let filt = anti_filtration(&s, hom.cap(), hom.flavor.into())?;
            let bars = anti_persistence(&filt, hom.max_dim)?;
            match f {
                Format::Csv => sink.text(barcode_to_csv(&bars))?,
                _ => sink.json(&barcode_to_json(&bars))?,
            }
        }
        Cmd::Betti { space, r, hom } => {
            let f = pick(fmt, Format::Json, &[Format::Json, Format::Csv])?;
            let s = space.load()?;
            let filt = anti_filtration(&s, hom.cap(), hom.flavor.into())?;
            let mut rows = Vec::with_capacity(r.len());
            for &scale in &r {
                rows.push((scale, betti_numbers(&filt.slice(scale), hom.max_dim)?));
            }
            match f {
                Format::Csv => {
                    let mut header = vec!["r".to_string()];
                    header.extend((0..=hom.max_dim).map(|k| format!("b{k}")));
                    let table: Vec<Vec<f64>> = rows
                        .iter()
                        .map(|(r, b)| std::iter::once(*r).chain(b.iter().map(|&x| x as f64)).collect())
                        .collect();
                    sink.text(write_table(Some(&header), &table)?)?
                }
                _ => sink.json(&json!({
                    "schema": SCHEMA_BETTI,
                    "flavor": CoreFlavor::from(hom.flavor),
                    "rows": rows.iter().map(|(r, b)| json!({"r": json_real(*r), "betti": b})).collect::<Vec<_>>(),
                }))?,
            }
        }
        Cmd::Constants { n_max } => {
            let f = pick(fmt, Format::Csv, &[Format::Json, Format::Csv])?;
            if n_max == 0 {
                bail!("--n-max must be at least 1");
            }
            let cs: Vec<_> = (1..=n_max).map(simplex_constants::<f64>).collect::<Result<_, _>>()?;
            match f {
                Format::Csv => {
                    let header = ["n".to_string(), "r_n".into(), "s_n".into()];
                    let rows: Vec<Vec<f64>> =
                        cs.iter().enumerate().map(|(i, c)| vec![(i + 1) as f64, c.r_n, c.s_n]).collect();
                    sink.text(write_table(Some(&header), &rows)?)?
                }
                _ => sink.json(&json!({
                    "schema": SCHEMA_CONSTANTS,
                    "rows": cs.iter().enumerate().map(|(i, c)| json!({"n": i + 1, "r_n": c.r_n, "s_n": c.s_n})).collect::<Vec<_>>(),
                }))?,
            }
        }
        Cmd::Transport { mu, nu, space } => {
            let f = pick(fmt, Format::Json, &[Format::Json, Format::Csv])?;
            let (a, b) = (input::measure_doc(&mu)?, input::measure_doc(&nu)?);
            let (value, plan) = match (a.points, b.points, a.indices, b.indices) {
                (Some(pa), Some(pb), _, _) => {
                    let res = w1_sphere(
                        &antirips::SphereMeasure::new(pa, a.weights)?,
                        &antirips::SphereMeasure::new(pb, b.weights)?,
                    )?;
                    (res.value, res.plan)
                }
                (_, _, Some(ia), Some(ib)) => {
                    let s = space.load()?;
                    let res = w1_distance(&DiscreteMeasure::new(ia, a.weights)?, &DiscreteMeasure::new(ib, b.weights)?, &s)?;
                    (res.value, res.plan)
                }
                _ => bail!("both measures must use `points`, or both `indices`"),
            };
            match f {
                Format::Csv => sink.text(plan_csv(&plan))?,
                _ => sink.json(&plan_to_json(value, &plan))?,
            }
        }
        Cmd::Maps { map } => {
            pick(fmt, Format::Json, &[Format::Json])?;
            sink.json(&run_map(map)?)?
        }
        Cmd::Color { how } => {
            let f = pick(fmt, Format::Json, &[Format::Json, Format::Csv])?;
            let (colors, report) = run_color(how)?;
            match f {
                Format::Csv => {
                    let rows: Vec<Vec<f64>> =
                        colors.iter().enumerate().map(|(i, &c)| vec![i as f64, c as f64]).collect();
                    sink.text(write_table(Some(&["point".into(), "color".into()]), &rows)?)?
                }
                _ => sink.json(&report)?,
            }
        }
        Cmd::Homsearch { g, g_vertices, h, h_vertices, h_complete, timeout_ms } => {
            pick(fmt, Format::Json, &[Format::Json])?;
            let g = input::graph(&g, g_vertices)?;
            let h = match (h, h_complete) {
                (_, Some(k)) => Graph::complete(k),
                (Some(p), None) => input::graph(&p, h_vertices)?,
                (None, None) => bail!("pass --h or --h-complete"),
            };
            let (status, map, code) = match graph_homomorphism_search(&g, &h, Duration::from_millis(timeout_ms)) {
                Ok(Some(f)) => ("found", Some(f), 0),
                Ok(None) => ("exhausted", None, EXIT_EXHAUSTED),
                Err(Error::Timeout) => ("timeout", None, EXIT_TIMEOUT),
                Err(e) => return Err(e.into()),
            };
            sink.json(&json!({"schema": SCHEMA_HOMSEARCH, "status": status, "map": map}))?;
            return Ok(code);
        }
    }
    Ok(0)
}

fn plan_csv(plan: &TransportPlan<f64>) -> String {
    let mut out = String::from("row,col,mass\n");
    for &(i, j, m) in &plan.entries {
        out.push_str(&format!("{i},{j},{}\n", fmt_real(m)));
    }
    out
}

fn run_map(map: MapCmd) -> Result<Value> {
    Ok(match map {
        MapCmd::CentralCore { measure } => {
            let mu = input::sphere_measure(&measure)?;
            sphere_measure_to_json(&central_core_projection(&mu)?)
        }
        MapCmd::Flashlight { measure, r, t } => {
            let mu = input::sphere_measure(&measure)?;
            let img = match t {
                Some(t) => flashlight_homotopy(&mu, r, t)?,
                None => rho_flashlight(&mu, r)?,
            };
            let in_avr = avrm_membership(&img, r);
            with_field(sphere_measure_to_json(&img), "spread_at_least_r", json!(in_avr))
        }
        MapCmd::Radial { measure, r, t } => {
            let mu = input::sphere_measure(&measure)?;
            match t {
                Some(t) => {
                    let out = tavr_linear_homotopy(&mu, r, t)?;
                    with_field(sphere_measure_to_json(&out.measure), "side", json!(out.side))
                }
                None => {
                    let img = rho_radial(&mu, r, None)?;
                    let v = sphere_measure_to_json(&img.measure);
                    let v = with_field(v, "x_star", json!(img.x_star));
                    let v = with_field(v, "y_star", json!(img.y_star));
                    let v = with_field(v, "inner_product", json!(img.inner_product));
                    with_field(v, "clusters", json!([img.clusters.0, img.clusters.1]))
                }
            }
        }
        MapCmd::Triangle { v0, v1, y, x, r } => sphere_measure_to_json(&triangle_param([&v0, &v1], &y, &x, r)?),
        MapCmd::LiftLoop { map, sphere, resolution, r, doubled, reversed } => {
            let f = move |p: &[f64]| -> Vec<f64> {
                match map {
                    LoopMap::Identity => p.to_vec(),
                    LoopMap::Antipodal => p.iter().map(|v| -v).collect(),
                    LoopMap::Reflect => {
                        let mut q = p.to_vec();
                        if let Some(last) = q.last_mut() {
                            *last = -*last;
                        }
                        q
                    }
                    LoopMap::Constant => {
                        let mut q = vec![0.0; p.len()];
                        q[0] = 1.0;
                        q
                    }
                }
            };
            let res = loop_pipeline(sphere, resolution, r, f, doubled, reversed)?;
            json!({
                "schema": SCHEMA_LIFT,
                "verdict": res.verdict,
                "max_step": res.max_step,
                "path": res.path,
            })
        }
        MapCmd::CoverDim { r, eps, angle_steps, gap_steps, weight_steps } => {
            let mut cfg = CoverDimConfig::new(r, eps);
            cfg.angle_steps = angle_steps;
            cfg.gap_steps = gap_steps;
            cfg.weight_steps = weight_steps;
            tagged(SCHEMA_COVER, &cover_dim_experiment(&cfg)?)?
        }
    })
}

fn run_color(how: ColorCmd) -> Result<(Vec<usize>, Value)> {
    match how {
        ColorCmd::Faces { space, alpha } => {
            let s = space.load()?;
            let rep = simplex_face_coloring(&s, alpha)?;
            Ok((rep.colors.clone(), tagged(SCHEMA_COLORING, &rep)?))
        }
        ColorCmd::Greedy { space, alpha, order } => {
            let g = borsuk_graph(&space.load()?, alpha);
            let order = match order {
                Order::Natural => GreedyOrder::Natural,
                Order::Degree => GreedyOrder::DegreeDescending,
            };
            let colors = greedy_coloring(&g, order);
            let report = json!({
                "schema": SCHEMA_COLORING,
                "alpha": alpha,
                "num_colors": color_count(&colors),
                "proper": verify_coloring(&g, &colors)?,
                "colors": colors,
            });
            Ok((colors, report))
        }
        ColorCmd::Exact { space, alpha, limit } => {
            let g = borsuk_graph(&space.load()?, alpha);
            let (chi, colors) = exact_chromatic(&g, limit)?;
            let report = json!({
                "schema": SCHEMA_COLORING,
                "alpha": alpha,
                "chromatic_number": chi,
                "num_colors": chi,
                "proper": verify_coloring(&g, &colors)?,
                "colors": colors,
            });
            Ok((colors, report))
        }
    }
}

use std::fs::File;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use antirips::io::{read_measure, read_table, MeasureDoc};
use antirips::metric::{sample_sphere, SamplingMethod, SimilarityMode};
use antirips::sphere::SphereMeasure;
use antirips::{FiniteMetricSpace, Graph};
use clap::{Args, ValueEnum};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PointMetric {
    Auto,
    Euclidean,
    Geodesic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Evenly,
    Fibonacci,
    Uniform,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Similarity {
    Reciprocal,
    ExpNegative,
    MaxMinus,
}

/// Where the metric space comes from: a point cloud, a matrix, or a sphere sample.
#[derive(Args, Clone, Debug)]
pub struct SpaceArgs {
    /// Point cloud CSV, one point per row.
    #[arg(long, conflicts_with_all = ["matrix", "sphere"])]
    pub points: Option<PathBuf>,
    /// Distance (or similarity) matrix CSV.
    #[arg(long, visible_alias = "metric", conflicts_with = "sphere")]
    pub matrix: Option<PathBuf>,
    /// Treat `--matrix` as similarities, converted with this rule.
    #[arg(long, value_enum, requires = "matrix")]
    pub similarity: Option<Similarity>,
    /// Reject matrices that break the triangle inequality.
    #[arg(long)]
    pub strict_metric: bool,
    /// Sample the sphere `S^n`.
    #[arg(long)]
    pub sphere: Option<usize>,
    /// Number of sample points.
    #[arg(long = "n", default_value_t = 100)]
    pub count: usize,
    #[arg(long, conflicts_with_all = ["fibonacci", "method"])]
    pub evenly: bool,
    #[arg(long, conflicts_with = "method")]
    pub fibonacci: bool,
    #[arg(long, value_enum)]
    pub method: Option<Method>,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Metric for `--points`; `auto` picks geodesic when every row is a unit vector.
    #[arg(long, value_enum, default_value_t = PointMetric::Auto)]
    pub point_metric: PointMetric,
}

impl SpaceArgs {
    pub fn method(&self, n: usize) -> SamplingMethod {
        match (self.evenly, self.fibonacci, self.method) {
            (true, _, _) | (_, _, Some(Method::Evenly)) => SamplingMethod::Evenly,
            (_, true, _) | (_, _, Some(Method::Fibonacci)) => SamplingMethod::Fibonacci,
            (_, _, Some(Method::Uniform)) => SamplingMethod::UniformRandom,
            _ if n == 1 => SamplingMethod::Evenly,
            _ if n == 2 => SamplingMethod::Fibonacci,
            _ => SamplingMethod::UniformRandom,
        }
    }

    pub fn load(&self) -> Result<FiniteMetricSpace> {
        if let Some(path) = &self.points {
            let table = read_table(open(path)?)?;
            let space = match self.point_metric {
                PointMetric::Euclidean => FiniteMetricSpace::from_euclidean_points(&table.rows)?,
                PointMetric::Geodesic => FiniteMetricSpace::from_sphere_points(table.rows)?,
                PointMetric::Auto if looks_spherical(&table.rows) => FiniteMetricSpace::from_sphere_points(table.rows)?,
                PointMetric::Auto => FiniteMetricSpace::from_euclidean_points(&table.rows)?,
            };
            return with_header_labels(space, table.header);
        }
        if let Some(path) = &self.matrix {
            let table = read_table(open(path)?)?;
            let space = match self.similarity {
                Some(mode) => FiniteMetricSpace::from_similarity_matrix(&table.rows, similarity_mode(mode))?,
                None => FiniteMetricSpace::from_distance_matrix(&table.rows, self.strict_metric)?,
            };
            return with_header_labels(space, table.header);
        }
        if let Some(n) = self.sphere {
            return Ok(sample_sphere(n, self.count, self.method(n), self.seed)?);
        }
        bail!("no input: pass --points, --matrix or --sphere")
    }
}

fn similarity_mode(m: Similarity) -> SimilarityMode {
    match m {
        Similarity::Reciprocal => SimilarityMode::Reciprocal,
        Similarity::ExpNegative => SimilarityMode::ExpNegative,
        Similarity::MaxMinus => SimilarityMode::MaxMinus,
    }
}

fn looks_spherical(rows: &[Vec<f64>]) -> bool {
    !rows.is_empty()
        && rows.iter().all(|r| r.len() >= 2 && (r.iter().map(|x| x * x).sum::<f64>().sqrt() - 1.0).abs() <= 1e-9)
}

fn with_header_labels(space: FiniteMetricSpace, header: Option<Vec<String>>) -> Result<FiniteMetricSpace> {
    match header {
        Some(h) if h.len() == space.len() => Ok(space.with_labels(h)?),
        _ => Ok(space),
    }
}

pub fn open(path: &Path) -> Result<File> {
    File::open(path).with_context(|| format!("cannot open {}", path.display()))
}

pub fn measure_doc(path: &Path) -> Result<MeasureDoc> {
    read_measure(open(path)?).with_context(|| format!("bad measure file {}", path.display()))
}

pub fn sphere_measure(path: &Path) -> Result<SphereMeasure<f64>> {
    let doc = measure_doc(path)?;
    let Some(points) = doc.points else { bail!("{} has no `points`", path.display()) };
    Ok(SphereMeasure::new(points, doc.weights)?)
}

/// Edge list CSV (`u,v` per row); the vertex count is the largest index plus
/// one unless given.
pub fn graph(path: &Path, vertices: Option<usize>) -> Result<Graph> {
    let table = read_table(open(path)?)?;
    let mut edges = Vec::with_capacity(table.rows.len());
    for (i, row) in table.rows.iter().enumerate() {
        let [u, v] = row[..] else { bail!("row {} of {} is not `u,v`", i + 1, path.display()) };
        if u < 0.0 || v < 0.0 || u.fract() != 0.0 || v.fract() != 0.0 {
            bail!("row {} of {} has a non-integer vertex", i + 1, path.display());
        }
        edges.push((u as usize, v as usize));
    }
    let n = vertices.unwrap_or_else(|| edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0));
    Ok(Graph::from_edges(n, &edges)?)
}

pub fn vector(s: &str) -> Result<Vec<f64>, String> {
    s.split(',').map(|t| t.trim().parse::<f64>().map_err(|e| format!("`{t}`: {e}"))).collect()
}

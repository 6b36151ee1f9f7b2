//! Finite metric spaces, sphere samples, packing numbers and simplex constants.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::clique::maximum_clique;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::scalar::{at_least, Scalar};
use crate::vector::{geodesic, norm, scale};

/// Default vertex limit for exact packing numbers.
pub const DEFAULT_EXACT_LIMIT: usize = 64;

/// Conversion from similarities to distances.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SimilarityMode {
    /// `d = 1 / s`
    Reciprocal,
    /// `d = exp(-s)`
    ExpNegative,
    /// `d = max(s) - s`, maximum over off-diagonal entries
    MaxMinus,
}

/// Point layouts for [`sample_sphere`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SamplingMethod {
    /// `N` equally spaced points on `S^1`.
    Evenly,
    /// Golden-angle spiral on `S^2`.
    Fibonacci,
    /// Normalized Gaussian vectors, seeded.
    UniformRandom,
}

impl SamplingMethod {
    pub fn name(self) -> &'static str {
        match self {
            SamplingMethod::Evenly => "evenly",
            SamplingMethod::Fibonacci => "fibonacci",
            SamplingMethod::UniformRandom => "uniform_random",
        }
    }
}

/// A finite metric space stored as a dense symmetric distance matrix.
///
/// When built from sphere points the unit vectors are kept as `ambient`
/// coordinates and distances are geodesic.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteMetricSpace<T: Scalar> {
    labels: Vec<String>,
    dist: Vec<T>,
    ambient: Option<Vec<Vec<T>>>,
}

fn default_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

fn check_square<T: Scalar>(matrix: &[Vec<T>]) -> Result<usize> {
    let n = matrix.len();
    for (row, r) in matrix.iter().enumerate() {
        if r.len() != n {
            return Err(Error::NonSquare { rows: n, row, len: r.len() });
        }
        for (j, v) in r.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFinite { i: row, j });
            }
        }
    }
    Ok(n)
}

/// Averages `a[i][j]` and `a[j][i]` when they agree within the loose tolerance.
fn symmetrize<T: Scalar>(matrix: &[Vec<T>]) -> Result<Vec<T>> {
    let n = matrix.len();
    let mut out = vec![T::zero(); n * n];
    for i in 0..n {
        for j in i..n {
            let (a, b) = (matrix[i][j], matrix[j][i]);
            let dev = (a - b).abs();
            if dev > T::loose_tol() {
                return Err(Error::NonSymmetric { i, j, deviation: dev.to_f64_lossy() });
            }
            let v = if dev == T::zero() { a } else { (a + b) / T::lit(2.0) };
            out[i * n + j] = v;
            out[j * n + i] = v;
        }
    }
    Ok(out)
}

impl<T: Scalar> FiniteMetricSpace<T> {
    /// Validates and stores a distance matrix.
    ///
    /// Asymmetry up to the loose tolerance is repaired by averaging; with
    /// `strict_metric` the triangle inequality is checked with slack `1e-9`.
    pub fn from_distance_matrix(matrix: &[Vec<T>], strict_metric: bool) -> Result<Self> {
        let n = check_square(matrix)?;
        let mut dist = symmetrize(matrix)?;
        for i in 0..n {
            let v = dist[i * n + i];
            if v.abs() > T::loose_tol() {
                return Err(Error::NonZeroDiagonal { i, value: v.to_f64_lossy() });
            }
            dist[i * n + i] = T::zero();
            for j in 0..n {
                if dist[i * n + j] < T::zero() {
                    return Err(Error::NegativeEntry { i, j });
                }
            }
        }
        let space = Self { labels: default_labels(n), dist, ambient: None };
        if strict_metric {
            space.check_triangle()?;
        }
        Ok(space)
    }

    /// Converts a similarity matrix to distances; the diagonal is forced to zero.
    pub fn from_similarity_matrix(matrix: &[Vec<T>], mode: SimilarityMode) -> Result<Self> {
        let n = check_square(matrix)?;
        let sim = symmetrize(matrix)?;
        let off = |i: usize, j: usize| i != j;
        let max = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| off(i, j))
            .map(|(i, j)| sim[i * n + j])
            .fold(T::neg_infinity(), T::max);
        let mut dist = vec![T::zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                if !off(i, j) {
                    continue;
                }
                let s = sim[i * n + j];
                dist[i * n + j] = match mode {
                    SimilarityMode::Reciprocal => {
                        if s <= T::zero() {
                            return Err(Error::ZeroSimilarity { i, j });
                        }
                        T::one() / s
                    }
                    SimilarityMode::ExpNegative => (-s).exp(),
                    SimilarityMode::MaxMinus => max - s,
                };
                if !dist[i * n + j].is_finite() {
                    return Err(Error::NonFinite { i, j });
                }
            }
        }
        Ok(Self { labels: default_labels(n), dist, ambient: None })
    }

    /// Geodesic metric on unit vectors; rows are renormalized after a
    /// unit-length check at the loose tolerance.
    pub fn from_sphere_points(points: Vec<Vec<T>>) -> Result<Self> {
        let dim = points.first().map_or(0, Vec::len);
        let mut unit = Vec::with_capacity(points.len());
        for (i, p) in points.into_iter().enumerate() {
            if p.len() != dim {
                return Err(Error::NonSquare { rows: dim, row: i, len: p.len() });
            }
            if let Some(j) = p.iter().position(|v| !v.is_finite()) {
                return Err(Error::NonFinite { i, j });
            }
            let nrm = norm(&p);
            if (nrm - T::one()).abs() > T::loose_tol() {
                return Err(Error::InvalidParameter(format!("point {i} is not a unit vector")));
            }
            unit.push(scale(&p, T::one() / nrm));
        }
        Ok(Self::from_unit_vectors(unit))
    }

    fn from_unit_vectors(points: Vec<Vec<T>>) -> Self {
        let n = points.len();
        let dist: Vec<T> = (0..n)
            .into_par_iter()
            .flat_map_iter(|i| {
                let pts = &points;
                (0..n).map(move |j| geodesic(&pts[i], &pts[j]))
            })
            .collect();
        Self { labels: default_labels(n), dist, ambient: Some(points) }
    }

    /// Euclidean metric on arbitrary coordinate rows.
    pub fn from_euclidean_points(points: &[Vec<T>]) -> Result<Self> {
        let n = points.len();
        let dim = points.first().map_or(0, Vec::len);
        let mut dist = vec![T::zero(); n * n];
        for i in 0..n {
            if points[i].len() != dim {
                return Err(Error::NonSquare { rows: dim, row: i, len: points[i].len() });
            }
            if let Some(j) = points[i].iter().position(|v| !v.is_finite()) {
                return Err(Error::NonFinite { i, j });
            }
            for j in 0..i {
                let d = norm(&crate::vector::sub(&points[i], &points[j]));
                dist[i * n + j] = d;
                dist[j * n + i] = d;
            }
        }
        Ok(Self { labels: default_labels(n), dist, ambient: None })
    }

    /// Replaces the point labels.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.len() {
            return Err(Error::InvalidParameter(format!(
                "{} labels for {} points",
                labels.len(),
                self.len()
            )));
        }
        self.labels = labels;
        Ok(self)
    }

    fn check_triangle(&self) -> Result<()> {
        let n = self.len();
        let slack = T::loose_tol();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let excess = self.d(i, k) - self.d(i, j) - self.d(j, k);
                    if excess > slack {
                        return Err(Error::TriangleViolation { i, j, k, excess: excess.to_f64_lossy() });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    #[inline]
    pub fn d(&self, i: usize, j: usize) -> T {
        self.dist[i * self.len() + j]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn ambient(&self) -> Option<&[Vec<T>]> {
        self.ambient.as_deref()
    }

    /// Distance matrix as nested rows.
    pub fn to_matrix(&self) -> Vec<Vec<T>> {
        let n = self.len();
        (0..n).map(|i| self.dist[i * n..(i + 1) * n].to_vec()).collect()
    }

    /// Restriction to `indices`, preserving order, labels and coordinates.
    pub fn subspace(&self, indices: &[usize]) -> Result<Self> {
        self.check_indices(indices)?;
        let m = indices.len();
        let mut dist = vec![T::zero(); m * m];
        for (a, &i) in indices.iter().enumerate() {
            for (b, &j) in indices.iter().enumerate() {
                dist[a * m + b] = self.d(i, j);
            }
        }
        Ok(Self {
            labels: indices.iter().map(|&i| self.labels[i].clone()).collect(),
            dist,
            ambient: self
                .ambient
                .as_ref()
                .map(|pts| indices.iter().map(|&i| pts[i].clone()).collect()),
        })
    }

    pub(crate) fn check_indices(&self, indices: &[usize]) -> Result<()> {
        match indices.iter().find(|&&i| i >= self.len()) {
            Some(&index) => Err(Error::IndexOutOfRange { index, len: self.len() }),
            None => Ok(()),
        }
    }

    /// Minimum pairwise distance; `+inf` for a single point.
    pub fn spread(&self, subset: &[usize]) -> Result<T> {
        if subset.is_empty() {
            return Err(Error::EmptySubset);
        }
        self.check_indices(subset)?;
        Ok(self.spread_unchecked(subset))
    }

    pub(crate) fn spread_unchecked(&self, subset: &[usize]) -> T {
        let mut m = T::infinity();
        for (a, &i) in subset.iter().enumerate() {
            for &j in &subset[a + 1..] {
                m = m.min(self.d(i, j));
            }
        }
        m
    }

    /// Maximum pairwise distance; `0` for a single point.
    pub fn diameter(&self, subset: &[usize]) -> Result<T> {
        if subset.is_empty() {
            return Err(Error::EmptySubset);
        }
        self.check_indices(subset)?;
        let mut m = T::zero();
        for (a, &i) in subset.iter().enumerate() {
            for &j in &subset[a + 1..] {
                m = m.max(self.d(i, j));
            }
        }
        Ok(m)
    }

    /// Graph on all points with `u ~ v` iff `d(u, v) >= r` (`far`) or `< r` (`!far`).
    pub(crate) fn threshold_graph(&self, r: T, far: bool) -> Graph {
        let n = self.len();
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                if at_least(self.d(u, v), r) == far {
                    g.insert_unchecked(u, v);
                }
            }
        }
        g
    }
}

/// Deterministic point sample on `S^n`, returned with geodesic distances.
pub fn sample_sphere<T: Scalar>(
    n: usize,
    count: usize,
    method: SamplingMethod,
    seed: u64,
) -> Result<FiniteMetricSpace<T>> {
    if n == 0 {
        return Err(Error::InvalidParameter("sphere dimension must be at least 1".into()));
    }
    if count == 0 {
        return Err(Error::InvalidParameter("sample size must be at least 1".into()));
    }
    let pts: Vec<Vec<T>> = match method {
        SamplingMethod::Evenly => {
            if n != 1 {
                return Err(Error::MethodDimensionMismatch { method: method.name(), n });
            }
            let tau = T::TAU();
            (0..count)
                .map(|k| {
                    let theta = tau * T::from_usize_lossy(k) / T::from_usize_lossy(count);
                    vec![theta.cos(), theta.sin()]
                })
                .collect()
        }
        SamplingMethod::Fibonacci => {
            if n != 2 {
                return Err(Error::MethodDimensionMismatch { method: method.name(), n });
            }
            let golden = T::PI() * (T::lit(3.0) - T::lit(5.0).sqrt());
            let m = T::from_usize_lossy(count);
            (0..count)
                .map(|k| {
                    let kk = T::from_usize_lossy(k);
                    let z = T::one() - (T::lit(2.0) * kk + T::one()) / m;
                    let rad = (T::one() - z * z).max(T::zero()).sqrt();
                    let phi = golden * kk;
                    vec![rad * phi.cos(), rad * phi.sin(), z]
                })
                .collect()
        }
        SamplingMethod::UniformRandom => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut out = Vec::with_capacity(count);
            while out.len() < count {
                let v: Vec<f64> = (0..=n).map(|_| StandardNormal.sample(&mut rng)).collect();
                let nrm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
                if nrm > 1e-6 {
                    out.push(v.iter().map(|&x| T::lit(x / nrm)).collect());
                }
            }
            out
        }
    };
    Ok(FiniteMetricSpace::from_unit_vectors(pts))
}

/// Maximum number of points with pairwise distances `>= r`, computed exactly
/// for spaces of at most [`DEFAULT_EXACT_LIMIT`] points.
pub fn packing_number_exact<T: Scalar>(space: &FiniteMetricSpace<T>, r: T) -> Result<usize> {
    packing_number_exact_with_limit(space, r, DEFAULT_EXACT_LIMIT)
}

/// [`packing_number_exact`] with an explicit size limit.
pub fn packing_number_exact_with_limit<T: Scalar>(
    space: &FiniteMetricSpace<T>,
    r: T,
    limit: usize,
) -> Result<usize> {
    Ok(maximum_packing(space, r, limit)?.len())
}

/// A maximum `r`-packing (as indices) witnessing [`packing_number_exact`].
pub fn maximum_packing<T: Scalar>(
    space: &FiniteMetricSpace<T>,
    r: T,
    limit: usize,
) -> Result<Vec<usize>> {
    if space.len() > limit {
        return Err(Error::SizeLimitExceeded { size: space.len(), limit });
    }
    Ok(maximum_clique(&space.threshold_graph(r, true)))
}

/// Greedy `r`-packing size scanning `order` (all indices ascending when `None`).
pub fn packing_number_greedy<T: Scalar>(
    space: &FiniteMetricSpace<T>,
    r: T,
    order: Option<&[usize]>,
) -> Result<usize> {
    let natural: Vec<usize>;
    let order = match order {
        Some(o) => {
            space.check_indices(o)?;
            o
        }
        None => {
            natural = (0..space.len()).collect();
            &natural
        }
    };
    let mut chosen: Vec<usize> = Vec::new();
    for &i in order {
        if !chosen.contains(&i) && chosen.iter().all(|&j| at_least(space.d(i, j), r)) {
            chosen.push(i);
        }
    }
    Ok(chosen.len())
}

/// Farthest-point `eps`-net seeded at index 0: every point ends up at
/// distance `< eps` from the net. Indices are returned in insertion order.
pub fn epsilon_net<T: Scalar>(space: &FiniteMetricSpace<T>, eps: T) -> Result<Vec<usize>> {
    if eps.is_nan() || eps <= T::zero() {
        return Err(Error::InvalidParameter("eps must be positive".into()));
    }
    if space.is_empty() {
        return Ok(Vec::new());
    }
    let n = space.len();
    let mut net = vec![0];
    let mut gap: Vec<T> = (0..n).map(|i| space.d(i, 0)).collect();
    loop {
        let (far, &g) = gap
            .iter()
            .enumerate()
            .fold((0, &T::neg_infinity()), |acc, (i, g)| if *g > *acc.1 { (i, g) } else { acc });
        if g < eps {
            return Ok(net);
        }
        net.push(far);
        for (i, gi) in gap.iter_mut().enumerate() {
            *gi = gi.min(space.d(i, far));
        }
    }
}

/// Regular-simplex constants on `S^n`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SimplexConstants<T> {
    /// Edge length of the inscribed regular `(n+1)`-simplex.
    pub r_n: T,
    /// Diameter of the radial projection of one of its facets.
    pub s_n: T,
}

/// `r_n = acos(-1/(n+1))`; `s_n = acos(-(n+1)/(n+3))` for odd `n` and
/// `acos(-sqrt(n/(n+4)))` for even `n`.
pub fn simplex_constants<T: Scalar>(n: usize) -> Result<SimplexConstants<T>> {
    if n == 0 {
        return Err(Error::InvalidParameter("sphere dimension must be at least 1".into()));
    }
    let nf = T::from_usize_lossy(n);
    let one = T::one();
    let r_n = (-one / (nf + one)).acos();
    let s_n = if n % 2 == 1 {
        (-(nf + one) / (nf + T::lit(3.0))).acos()
    } else {
        (-(nf / (nf + T::lit(4.0))).sqrt()).acos()
    };
    Ok(SimplexConstants { r_n, s_n })
}

/// Shortest-path metric of a connected graph.
pub fn graph_metric<T: Scalar>(graph: &Graph) -> Result<FiniteMetricSpace<T>> {
    let hops = graph.hop_distances()?;
    let n = graph.len();
    let dist = hops.into_iter().flatten().map(T::from_usize_lossy).collect::<Vec<_>>();
    debug_assert_eq!(dist.len(), n * n);
    Ok(FiniteMetricSpace { labels: default_labels(n), dist, ambient: None })
}

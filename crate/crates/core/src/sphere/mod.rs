//! Measures on round spheres and the maps between measure spaces used to
//! compare them with projective spaces and to bound covering dimension.

mod cover;
mod flashlight;
mod loops;
mod pou;
mod radial;
mod triangle;

pub use cover::{cover_dim_experiment, ArcCover, CoverDimConfig, CoverDimReport};
pub use flashlight::{flashlight_homotopy, rho_flashlight};
pub use loops::{
    lift_loop, loop_gamma, loop_pipeline, project_loop_to_rpn, DiscreteLoop, LiftResult, LiftVerdict, RpLoop,
};
pub use pou::{pou_map, PouImage};
pub use radial::{rho_radial, tavr_linear_homotopy, ClusteredMeasure, RadialImage};
pub use triangle::triangle_param;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::scalar::{at_least, Scalar};
use crate::transport::{check_weights, solve_transport, transposed, W1Result};
use crate::vector::{geodesic, neg, norm, scale};

/// Finitely supported probability measure on the unit sphere `S^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct SphereMeasure<T> {
    points: Vec<Vec<T>>,
    weights: Vec<T>,
}

impl<T: Scalar> SphereMeasure<T> {
    /// Normalizes points (after a unit-length check), merges coincident
    /// points and drops zero weights.
    pub fn new(points: Vec<Vec<T>>, weights: Vec<T>) -> Result<Self> {
        if points.len() != weights.len() {
            return Err(Error::InvalidMeasure("points and weights differ in length".into()));
        }
        check_weights(&weights)?;
        let dim = points[0].len();
        if dim < 2 {
            return Err(Error::InvalidMeasure("points need at least two coordinates".into()));
        }
        let mut pts: Vec<Vec<T>> = Vec::new();
        let mut ws: Vec<T> = Vec::new();
        for (p, w) in points.into_iter().zip(weights) {
            if p.len() != dim || p.iter().any(|v| !v.is_finite()) {
                return Err(Error::InvalidMeasure("points must share a finite dimension".into()));
            }
            let n = norm(&p);
            if (n - T::one()).abs() > T::loose_tol() {
                return Err(Error::InvalidMeasure("support point is not a unit vector".into()));
            }
            if w <= T::weight_tol() {
                continue;
            }
            let p = scale(&p, T::one() / n);
            match pts.iter().position(|q| geodesic(q, &p) <= T::threshold_tol()) {
                Some(k) => ws[k] += w,
                None => {
                    pts.push(p);
                    ws.push(w);
                }
            }
        }
        let total: T = ws.iter().copied().sum();
        for w in &mut ws {
            *w /= total;
        }
        Ok(Self { points: pts, weights: ws })
    }

    pub fn dirac(x: Vec<T>) -> Result<Self> {
        Self::new(vec![x], vec![T::one()])
    }

    pub fn points(&self) -> &[Vec<T>] {
        &self.points
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Ambient dimension `n + 1`.
    pub fn ambient_dim(&self) -> usize {
        self.points[0].len()
    }

    /// Minimum pairwise geodesic distance of the support.
    pub fn spread(&self) -> T {
        let mut m = T::infinity();
        for (i, p) in self.points.iter().enumerate() {
            for q in &self.points[i + 1..] {
                m = m.min(geodesic(p, q));
            }
        }
        m
    }

    /// Maximum pairwise geodesic distance of the support.
    pub fn diameter(&self) -> T {
        let mut m = T::zero();
        for (i, p) in self.points.iter().enumerate() {
            for q in &self.points[i + 1..] {
                m = m.max(geodesic(p, q));
            }
        }
        m
    }

    /// Push-forward along a pointwise map of the sphere.
    pub fn push_forward<F: Fn(&[T]) -> Vec<T>>(&self, f: F) -> Result<Self> {
        Self::new(self.points.iter().map(|p| f(p)).collect(), self.weights.clone())
    }

    /// Splits the support into two parts with all cross distances `>= r`:
    /// the near-graph component of point 0 against the rest.
    pub fn far_bipartition(&self, r: T) -> Option<(Vec<usize>, Vec<usize>)> {
        let k = self.len();
        let mut near = Graph::new(k);
        for i in 0..k {
            for j in i + 1..k {
                if !at_least(geodesic(&self.points[i], &self.points[j]), r) {
                    near.insert_unchecked(i, j);
                }
            }
        }
        let comps = near.components();
        if comps.len() < 2 {
            return None;
        }
        let a = comps[0].clone();
        let b = comps[1..].iter().flatten().copied().collect::<Vec<_>>();
        let mut b = b;
        b.sort_unstable();
        Some((a, b))
    }
}

/// `mu` lies in the Vietoris-Rips-style measure space at scale `r`: its support
/// has spread `>= r`.
pub fn avrm_membership<T: Scalar>(mu: &SphereMeasure<T>, r: T) -> bool {
    at_least(mu.spread(), r)
}

/// `mu` lies in the two-cluster measure space at scale `r`.
pub fn tavrm_membership<T: Scalar>(mu: &SphereMeasure<T>, r: T) -> bool {
    mu.len() == 1 || mu.far_bipartition(r).is_some()
}

/// Exact `W_1` between sphere measures under the geodesic metric.
pub fn w1_sphere<T: Scalar>(mu: &SphereMeasure<T>, nu: &SphereMeasure<T>) -> Result<W1Result<T>> {
    if mu.ambient_dim() != nu.ambient_dim() {
        return Err(Error::MetricMismatch("measures live on different spheres".into()));
    }
    let key = |m: &SphereMeasure<T>| -> Vec<u64> {
        m.points().iter().flatten().chain(m.weights()).map(|x| x.to_f64_lossy().to_bits()).collect()
    };
    if key(mu) > key(nu) {
        return Ok(transposed(w1_sphere(nu, mu)?));
    }
    let cost: Vec<Vec<T>> = mu
        .points()
        .iter()
        .map(|p| nu.points().iter().map(|q| geodesic(p, q)).collect())
        .collect();
    solve_transport(mu.weights(), nu.weights(), &cost)
}

fn is_antipodal<T: Scalar>(x: &[T], y: &[T]) -> bool {
    T::PI() - geodesic(x, y) <= T::loose_tol()
}

/// Sends `delta_x` and `l delta_x + (1 - l) delta_{-x}` to `(delta_x + delta_{-x}) / 2`.
pub fn central_core_projection<T: Scalar>(mu: &SphereMeasure<T>) -> Result<SphereMeasure<T>> {
    let x = match mu.points() {
        [x] => x,
        [x, y] if is_antipodal(x, y) => x,
        _ => return Err(Error::NotAntipodalSupport),
    };
    let half = T::lit(0.5);
    SphereMeasure::new(vec![x.clone(), neg(x)], vec![half, half])
}

pub(crate) fn check_far_scale<T: Scalar>(r: T) -> Result<()> {
    let lo = T::TAU() / T::lit(3.0);
    if r.is_nan() || r <= lo || r > T::PI() + T::threshold_tol() {
        return Err(Error::InvalidScale(r.to_f64_lossy()));
    }
    Ok(())
}

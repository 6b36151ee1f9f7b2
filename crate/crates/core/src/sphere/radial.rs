use crate::error::{Error, Result};
use crate::scalar::{at_least, Scalar};
use crate::vector::{dot, geodesic, norm, scale};

use super::{check_far_scale, SphereMeasure};

/// Output of [`rho_radial`] with the quantities checked along the way.
#[derive(Clone, Debug, PartialEq)]
pub struct RadialImage<T> {
    pub measure: SphereMeasure<T>,
    pub x_star: Vec<T>,
    pub y_star: Vec<T>,
    /// `<bar x, bar y>` for the cluster barycenters (normalized weights).
    pub inner_product: T,
    pub clusters: (Vec<usize>, Vec<usize>),
}

/// A measure together with a two-cluster labelling of its support.
#[derive(Clone, Debug, PartialEq)]
pub struct ClusteredMeasure<T> {
    pub measure: SphereMeasure<T>,
    /// `false` for the first cluster, `true` for the second.
    pub side: Vec<bool>,
}

fn cluster_barycenter<T: Scalar>(mu: &SphereMeasure<T>, idx: &[usize]) -> (Vec<T>, T) {
    let mass: T = idx.iter().map(|&i| mu.weights()[i]).sum();
    let mut bar = vec![T::zero(); mu.ambient_dim()];
    for &i in idx {
        let w = mu.weights()[i] / mass;
        for (b, &p) in bar.iter_mut().zip(&mu.points()[i]) {
            *b += w * p;
        }
    }
    (bar, mass)
}

fn check_clusters<T: Scalar>(mu: &SphereMeasure<T>, a: &[usize], b: &[usize], r: T) -> Result<()> {
    let mut all: Vec<usize> = a.iter().chain(b).copied().collect();
    all.sort_unstable();
    if a.is_empty() || b.is_empty() || all != (0..mu.len()).collect::<Vec<_>>() {
        return Err(Error::NoValidBipartition);
    }
    for &i in a {
        for &j in b {
            if !at_least(geodesic(&mu.points()[i], &mu.points()[j]), r) {
                return Err(Error::NoValidBipartition);
            }
        }
    }
    Ok(())
}

/// Collapses each cluster of a two-cluster measure to the radial projection
/// of its barycenter, keeping cluster masses.
///
/// `clusters` lists support positions; when absent the near-graph component
/// of the first support point is split from the rest.
pub fn rho_radial<T: Scalar>(
    mu: &SphereMeasure<T>,
    r: T,
    clusters: Option<(Vec<usize>, Vec<usize>)>,
) -> Result<RadialImage<T>> {
    check_far_scale(r)?;
    if mu.len() == 1 {
        let x = mu.points()[0].clone();
        return Ok(RadialImage {
            measure: mu.clone(),
            x_star: x.clone(),
            y_star: x,
            inner_product: T::one(),
            clusters: (vec![0], Vec::new()),
        });
    }
    let (a, b) = match clusters {
        Some(c) => c,
        None => mu.far_bipartition(r).ok_or(Error::NoValidBipartition)?,
    };
    check_clusters(mu, &a, &b, r)?;
    let (bx, mx) = cluster_barycenter(mu, &a);
    let (by, my) = cluster_barycenter(mu, &b);
    let (nx, ny) = (norm(&bx), norm(&by));
    if nx <= T::loose_tol() || ny <= T::loose_tol() {
        return Err(Error::ZeroBarycenter);
    }
    let ip = dot(&bx, &by);
    if ip > r.cos() + T::loose_tol() {
        return Err(Error::BoundViolated(format!("barycenter inner product {ip} exceeds cos r = {}", r.cos())));
    }
    let x_star = scale(&bx, T::one() / nx);
    let y_star = scale(&by, T::one() / ny);
    let measure = SphereMeasure::new(vec![x_star.clone(), y_star.clone()], vec![mx, my])?;
    Ok(RadialImage { measure, x_star, y_star, inner_product: ip, clusters: (a, b) })
}

/// Straight-line homotopy `(1 - t) mu + t rho_radial(mu)`, checked to stay
/// two-cluster at scale `r`.
pub fn tavr_linear_homotopy<T: Scalar>(mu: &SphereMeasure<T>, r: T, t: T) -> Result<ClusteredMeasure<T>> {
    if !(t >= T::zero() && t <= T::one()) {
        return Err(Error::InvalidParameter(format!("homotopy parameter {t} outside [0, 1]")));
    }
    let img = rho_radial(mu, r, None)?;
    let (a, b) = &img.clusters;
    let s = T::one() - t;
    let mut side_pts: Vec<(bool, Vec<T>, T)> = Vec::new();
    for (flag, idx, star, mass) in [
        (false, a, &img.x_star, img.measure.weights()[0]),
        (true, b, &img.y_star, img.measure.weights().get(1).copied().unwrap_or(T::zero())),
    ] {
        if idx.is_empty() {
            continue;
        }
        for &i in idx {
            side_pts.push((flag, mu.points()[i].clone(), s * mu.weights()[i]));
        }
        side_pts.push((flag, star.clone(), t * mass));
    }
    for (fi, pi, _) in &side_pts {
        for (fj, pj, _) in &side_pts {
            if fi != fj && !at_least(geodesic(pi, pj), r) {
                return Err(Error::BoundViolated("homotopy leaves the two-cluster space".into()));
            }
        }
    }
    let kept: Vec<_> = side_pts.into_iter().filter(|p| p.2 > T::weight_tol()).collect();
    let measure = SphereMeasure::new(kept.iter().map(|p| p.1.clone()).collect(), kept.iter().map(|p| p.2).collect())?;
    let side = measure
        .points()
        .iter()
        .map(|q| kept.iter().find(|p| geodesic(&p.1, q) <= T::threshold_tol()).is_some_and(|p| p.0))
        .collect();
    Ok(ClusteredMeasure { measure, side })
}

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::vector::{dot, lin2, norm};

use super::SphereMeasure;

/// Writes `r z` in barycentric coordinates of the equilateral triangle
/// inscribed in the unit circle of `span(v0, v1)` with vertex `y`, where `z`
/// is the point of the triangle boundary on the ray through the projection
/// of `x`. Returns the corresponding measure on the triangle vertices.
pub fn triangle_param<T: Scalar>(frame: [&[T]; 2], y: &[T], x: &[T], r: T) -> Result<SphereMeasure<T>> {
    let [v0, v1] = frame;
    let dim = v0.len();
    if v1.len() != dim || y.len() != dim || x.len() != dim {
        return Err(Error::InvalidParameter("dimension mismatch".into()));
    }
    let tol = T::loose_tol();
    if (norm(v0) - T::one()).abs() > tol || (norm(v1) - T::one()).abs() > tol || dot(v0, v1).abs() > tol {
        return Err(Error::InvalidParameter("frame is not orthonormal".into()));
    }
    if !(r >= T::zero() && r <= T::one()) {
        return Err(Error::InvalidParameter(format!("radius {r} outside [0, 1]")));
    }
    let (y0, y1) = (dot(y, v0), dot(y, v1));
    let residual = norm(&crate::vector::sub(y, &lin2(v0, y0, v1, y1)));
    if residual > tol || ((y0 * y0 + y1 * y1).sqrt() - T::one()).abs() > tol {
        return Err(Error::InvalidParameter("y is not a unit vector of the frame plane".into()));
    }
    let (px, py) = (dot(x, v0), dot(x, v1));
    let len = (px * px + py * py).sqrt();
    if len <= tol {
        return Err(Error::DegenerateDirection);
    }
    let (dx, dy) = (px / len, py / len);
    let third = T::TAU() / T::lit(3.0);
    let verts: Vec<(T, T)> = (0..3)
        .map(|k| {
            let a = third * T::from_usize_lossy(k);
            let (s, c) = a.sin_cos();
            (y0 * c - y1 * s, y0 * s + y1 * c)
        })
        .collect();
    let proj: Vec<T> = verts.iter().map(|&(a, b)| a * dx + b * dy).collect();
    let t_edge = proj
        .iter()
        .filter(|&&p| p < T::zero())
        .map(|&p| -T::one() / (T::lit(2.0) * p))
        .fold(T::infinity(), T::min);
    let two_thirds = T::lit(2.0) / T::lit(3.0);
    let third_w = T::one() / T::lit(3.0);
    let weights: Vec<T> = proj
        .iter()
        .map(|&p| (third_w + two_thirds * r * t_edge * p).max(T::zero()))
        .collect();
    let total: T = weights.iter().copied().sum();
    let points = verts.iter().map(|&(a, b)| lin2(v0, a, v1, b)).collect();
    SphereMeasure::new(points, weights.iter().map(|&w| w / total).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vertex_direction_at_full_radius_is_a_dirac() {
        let v0 = [1.0, 0.0, 0.0];
        let v1 = [0.0, 1.0, 0.0];
        let m = triangle_param([&v0, &v1], &v0, &[1.0, 0.0, 0.5], 1.0).unwrap();
        assert_eq!(m.len(), 1);
        assert!(crate::vector::geodesic(&m.points()[0], &v0) < 1e-12);
    }

    #[test]
    fn center_is_uniform() {
        let v0 = [1.0, 0.0];
        let v1 = [0.0, 1.0];
        let m = triangle_param::<f64>([&v0, &v1], &v0, &[0.3, 0.4], 0.0).unwrap();
        assert_eq!(m.len(), 3);
        for &w in m.weights() {
            assert!((w - 1.0 / 3.0).abs() < 1e-12);
        }
    }

    #[test]
    fn direction_orthogonal_to_plane_is_degenerate() {
        let v0 = [1.0, 0.0, 0.0];
        let v1 = [0.0, 1.0, 0.0];
        assert!(matches!(
            triangle_param([&v0, &v1], &v0, &[0.0, 0.0, 1.0], 0.5),
            Err(Error::DegenerateDirection)
        ));
    }
}

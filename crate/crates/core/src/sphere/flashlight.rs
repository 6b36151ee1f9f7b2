use crate::error::{Error, Result};
use crate::scalar::{at_least, Scalar};
use crate::vector::{geodesic, lin2, neg, normalized, scale, sub};

use super::{check_far_scale, is_antipodal, SphereMeasure};

/// Planar frame on the great circle through a non-antipodal pair.
///
/// `u` points from `x0'` to `x0` and `pole` is their midpoint, so that in
/// coordinates along `(u, pole)` the pair sits at `(+-s, c)` with
/// `s = sin(theta / 2)` and `c = cos(theta / 2)`.
struct Frame<T> {
    u: Vec<T>,
    pole: Vec<T>,
    s: T,
    c: T,
    lambda: T,
}

impl<T: Scalar> Frame<T> {
    fn new(mu: &SphereMeasure<T>) -> Self {
        let (x0, x1) = (&mu.points()[0], &mu.points()[1]);
        let theta = geodesic(x0, x1);
        let half = theta / T::lit(2.0);
        let (s, c) = (half.sin(), half.cos());
        let u = normalized(&sub(x0, x1), T::zero()).expect("distinct points");
        let pole = normalized(&sub(x0, &scale(&u, s)), T::zero()).unwrap_or_else(|| crate::vector::orthogonal_unit(&u));
        Self { u, pole, s, c, lambda: mu.weights()[0] }
    }

    fn embed(&self, p: T, h: T) -> Vec<T> {
        lin2(&self.u, p, &self.pole, h)
    }

    /// Planar barycenter of the input measure.
    fn mean(&self) -> (T, T) {
        ((T::lit(2.0) * self.lambda - T::one()) * self.s, self.c)
    }

    /// Planar barycenter of the image; `Ok` for the diameter branch with
    /// coordinate `a`, `Err` for the Dirac branch with the sphere point.
    fn image(&self) -> std::result::Result<T, (T, T)> {
        let (w, _) = self.mean();
        let one_c = T::one() - self.c;
        let a = w / one_c;
        if a.abs() <= T::one() {
            Ok(a)
        } else {
            let tau = T::lit(2.0) * one_c / (w * w + one_c * one_c);
            Err((tau * w, T::one() - tau * one_c))
        }
    }
}

fn validate<T: Scalar>(mu: &SphereMeasure<T>, r: T) -> Result<()> {
    check_far_scale(r)?;
    if mu.len() > 2 {
        return Err(Error::TooManySupportPoints { found: mu.len(), max: 2 });
    }
    let spread = mu.spread();
    if !at_least(spread, r) {
        return Err(Error::SpreadTooSmall { spread: spread.to_f64_lossy(), required: r.to_f64_lossy() });
    }
    Ok(())
}

fn trivial<T: Scalar>(mu: &SphereMeasure<T>) -> bool {
    mu.len() == 1 || is_antipodal(&mu.points()[0], &mu.points()[1])
}

/// Flashlight retraction onto antipodal pairs and Diracs.
///
/// The ray from the midpoint pole through the planar barycenter either
/// crosses the diameter parallel to the support chord, giving a measure on
/// that antipodal pair, or leaves the sphere first, giving a Dirac there.
pub fn rho_flashlight<T: Scalar>(mu: &SphereMeasure<T>, r: T) -> Result<SphereMeasure<T>> {
    validate(mu, r)?;
    if trivial(mu) {
        return Ok(mu.clone());
    }
    let f = Frame::new(mu);
    match f.image() {
        Ok(a) => {
            let l1 = ((T::one() + a) / T::lit(2.0)).max(T::zero()).min(T::one());
            SphereMeasure::new(vec![f.u.clone(), neg(&f.u)], vec![l1, T::one() - l1])
        }
        Err((p, h)) => SphereMeasure::dirac(normalized(&f.embed(p, h), T::zero()).expect("unit point")),
    }
}

/// Homotopy from the identity (`t = 0`) to [`rho_flashlight`] (`t = 1`).
///
/// The interpolated planar barycenter is written on the chord parallel to
/// the original support chord, which keeps the spread at least `r`.
pub fn flashlight_homotopy<T: Scalar>(mu: &SphereMeasure<T>, r: T, t: T) -> Result<SphereMeasure<T>> {
    validate(mu, r)?;
    if !(t >= T::zero() && t <= T::one()) {
        return Err(Error::InvalidParameter(format!("homotopy parameter {t} outside [0, 1]")));
    }
    if trivial(mu) || t == T::zero() {
        return Ok(mu.clone());
    }
    let f = Frame::new(mu);
    let (p0, h0) = f.mean();
    let (p1, h1) = match f.image() {
        Ok(a) => (a, T::zero()),
        Err(v) => v,
    };
    let s = T::one() - t;
    let (p, h) = (s * p0 + t * p1, (s * h0 + t * h1).max(T::zero()).min(f.c));
    let half = (T::one() - h * h).sqrt();
    let lam = ((T::one() + p / half) / T::lit(2.0)).max(T::zero()).min(T::one());
    let xt = normalized(&f.embed(half, h), T::zero()).expect("unit point");
    let yt = normalized(&f.embed(-half, h), T::zero()).expect("unit point");
    SphereMeasure::new(vec![xt, yt], vec![lam, T::one() - lam])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sphere::{avrm_membership, w1_sphere};
    use std::f64::consts::PI;

    fn pair(theta: f64, lambda: f64) -> SphereMeasure<f64> {
        let a: f64 = 0.3;
        SphereMeasure::new(
            vec![vec![a.cos(), a.sin(), 0.0], vec![(a + theta).cos(), (a + theta).sin(), 0.0]],
            vec![lambda, 1.0 - lambda],
        )
        .unwrap()
    }

    #[test]
    fn diracs_are_fixed() {
        let d = SphereMeasure::dirac(vec![0.0, 0.6, 0.8]).unwrap();
        assert_eq!(rho_flashlight(&d, 2.5).unwrap(), d);
    }

    #[test]
    fn balanced_pair_goes_to_balanced_antipodes() {
        let mu = pair(2.6, 0.5);
        let img = rho_flashlight(&mu, 2.5).unwrap();
        assert_eq!(img.len(), 2);
        assert!((img.weights()[0] - 0.5).abs() < 1e-12);
        assert!((PI - img.spread()).abs() < 1e-12);
    }

    #[test]
    fn lopsided_pair_goes_to_nearby_dirac() {
        let mu = pair(2.6, 1.0 - 1e-3);
        let img = rho_flashlight(&mu, 2.5).unwrap();
        assert_eq!(img.len(), 1);
        assert!(geodesic(&img.points()[0], &mu.points()[0]) < 0.01);
    }

    #[test]
    fn rejects_out_of_range_inputs() {
        assert!(matches!(rho_flashlight(&pair(2.0, 0.5), 2.5), Err(Error::SpreadTooSmall { .. })));
        assert!(matches!(rho_flashlight(&pair(2.6, 0.5), 2.0), Err(Error::InvalidScale(_))));
    }

    #[test]
    fn homotopy_endpoints_and_spread() {
        let mu = pair(2.7, 0.3);
        assert_eq!(flashlight_homotopy(&mu, 2.5, 0.0).unwrap(), mu);
        let end = flashlight_homotopy(&mu, 2.5, 1.0).unwrap();
        let rho = rho_flashlight(&mu, 2.5).unwrap();
        assert!(w1_sphere(&end, &rho).unwrap().value < 1e-12);
        let mut prev = mu.clone();
        for k in 1..=100 {
            let h = flashlight_homotopy(&mu, 2.5, k as f64 / 100.0).unwrap();
            assert!(avrm_membership(&h, 2.5));
            assert!(w1_sphere(&prev, &h).unwrap().value < 0.1);
            prev = h;
        }
    }
}

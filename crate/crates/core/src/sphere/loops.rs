use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::vector::{geodesic, lin2, neg, orthogonal_unit};

use super::{central_core_projection, rho_flashlight, SphereMeasure};

/// Closed loop of measures sampled at equally spaced times; the first and
/// last samples coincide.
#[derive(Clone, Debug, PartialEq)]
pub struct DiscreteLoop<T> {
    pub samples: Vec<SphereMeasure<T>>,
}

impl<T: Scalar> DiscreteLoop<T> {
    pub fn reversed(&self) -> Self {
        Self { samples: self.samples.iter().rev().cloned().collect() }
    }

    /// The loop traversed twice.
    pub fn doubled(&self) -> Self {
        let mut samples = self.samples.clone();
        samples.extend(self.samples.iter().skip(1).cloned());
        Self { samples }
    }

    /// Pointwise push-forward of every sample.
    pub fn map<F: Fn(&[T]) -> Vec<T>>(&self, f: F) -> Result<Self> {
        Ok(Self { samples: self.samples.iter().map(|m| m.push_forward(&f)).collect::<Result<_>>()? })
    }
}

/// Loop in real projective space; each entry represents the class `{p, -p}`.
#[derive(Clone, Debug, PartialEq)]
pub struct RpLoop<T> {
    pub reps: Vec<Vec<T>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LiftVerdict {
    /// The lift closes up: the loop is null-homotopic.
    Trivial,
    /// The lift ends at the antipode of its start.
    Nontrivial,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LiftResult<T> {
    pub verdict: LiftVerdict,
    pub path: Vec<Vec<T>>,
    /// Largest geodesic step taken by the lift.
    pub max_step: T,
}

/// Samples the loop that moves all mass from `delta_x` to `delta_{-x}` along
/// `(1 - 2t) delta_x + 2t delta_{-x}`, then returns as a Dirac along a half
/// great circle from `-x` to `x`.
///
/// `resolution` must be even and at least 8; `omega` fixes the half great
/// circle through a unit vector orthogonal to `x`.
pub fn loop_gamma<T: Scalar>(x: &[T], resolution: usize, omega: Option<&[T]>) -> Result<DiscreteLoop<T>> {
    if resolution < 8 || resolution % 2 == 1 {
        return Err(Error::InvalidParameter(format!("resolution {resolution} must be even and at least 8")));
    }
    let xv = x.to_vec();
    let mx = neg(x);
    let e = match omega {
        Some(e) => e.to_vec(),
        None => orthogonal_unit(x),
    };
    let half = resolution / 2;
    let mut samples = Vec::with_capacity(resolution + 1);
    for k in 0..=resolution {
        let m = if k <= half {
            let s = T::from_usize_lossy(k) / T::from_usize_lossy(half);
            SphereMeasure::new(vec![xv.clone(), mx.clone()], vec![T::one() - s, s])?
        } else if k == resolution {
            SphereMeasure::dirac(xv.clone())?
        } else {
            let a = T::PI() * T::from_usize_lossy(k - half) / T::from_usize_lossy(half);
            SphereMeasure::dirac(lin2(&mx, a.cos(), &e, a.sin()))?
        };
        samples.push(m);
    }
    Ok(DiscreteLoop { samples })
}

/// Applies the flashlight map at scale `r` and the central-core projection to
/// every sample, reading off a loop in projective space.
pub fn project_loop_to_rpn<T: Scalar>(lp: &DiscreteLoop<T>, r: T) -> Result<RpLoop<T>> {
    let reps = lp
        .samples
        .iter()
        .map(|m| Ok(central_core_projection(&rho_flashlight(m, r)?)?.points()[0].clone()))
        .collect::<Result<_>>()?;
    Ok(RpLoop { reps })
}

/// Greedy lift to the sphere: each step picks the representative nearest the
/// previous point. Steps at or beyond a quarter turn are ambiguous.
pub fn lift_loop<T: Scalar>(lp: &RpLoop<T>) -> Result<LiftResult<T>> {
    let Some(first) = lp.reps.first() else {
        return Err(Error::InvalidParameter("empty loop".into()));
    };
    let limit = T::FRAC_PI_2() - T::loose_tol();
    let mut path = vec![first.clone()];
    let mut max_step = T::zero();
    for (step, q) in lp.reps.iter().enumerate().skip(1) {
        let p = path.last().expect("nonempty");
        let d = geodesic(p, q);
        let (next, gap) = if d <= T::PI() - d { (q.clone(), d) } else { (neg(q), T::PI() - d) };
        if gap >= limit {
            return Err(Error::AmbiguousLiftStep { step, gap: gap.to_f64_lossy() });
        }
        max_step = max_step.max(gap);
        path.push(next);
    }
    let end = path.last().expect("nonempty");
    let verdict = if geodesic(end, first) < T::FRAC_PI_2() {
        LiftVerdict::Trivial
    } else {
        LiftVerdict::Nontrivial
    };
    Ok(LiftResult { verdict, path, max_step })
}

/// Builds the loop at the first basis vector of `S^n`, pushes it through `f`,
/// projects at scale `r` and lifts.
pub fn loop_pipeline<T: Scalar, F: Fn(&[T]) -> Vec<T>>(
    n: usize,
    resolution: usize,
    r: T,
    f: F,
    doubled: bool,
    reversed: bool,
) -> Result<LiftResult<T>> {
    let mut x = vec![T::zero(); n + 1];
    x[0] = T::one();
    let mut lp = loop_gamma(&x, resolution, None)?.map(f)?;
    if doubled {
        lp = lp.doubled();
    }
    if reversed {
        lp = lp.reversed();
    }
    lift_loop(&project_loop_to_rpn(&lp, r)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sphere::w1_sphere;

    #[test]
    fn gamma_samples() {
        let x = [1.0, 0.0];
        let lp = loop_gamma(&x, 8, None).unwrap();
        assert_eq!(lp.samples.len(), 9);
        assert_eq!(lp.samples[0], lp.samples[8]);
        assert_eq!(lp.samples[4].points(), &[vec![-1.0, 0.0]]);
        for w in lp.samples.windows(2) {
            assert!(w1_sphere(&w[0], &w[1]).unwrap().value <= 2.0 * std::f64::consts::PI / 8.0 + 1e-12);
        }
        assert!(loop_gamma(&x, 6, None).is_err());
    }

    #[test]
    fn identity_loop_is_nontrivial_and_doubling_kills_it() {
        let id = |p: &[f64]| p.to_vec();
        assert_eq!(loop_pipeline(1, 16, 2.5, id, false, false).unwrap().verdict, LiftVerdict::Nontrivial);
        assert_eq!(loop_pipeline(1, 16, 2.5, id, true, false).unwrap().verdict, LiftVerdict::Trivial);
        assert_eq!(loop_pipeline(2, 16, 2.5, id, false, true).unwrap().verdict, LiftVerdict::Nontrivial);
    }

    #[test]
    fn coarse_rp_loop_is_ambiguous() {
        let lp = RpLoop { reps: vec![vec![1.0, 0.0], vec![0.0, 1.0]] };
        assert!(matches!(lift_loop(&lp), Err(Error::AmbiguousLiftStep { .. })));
    }
}

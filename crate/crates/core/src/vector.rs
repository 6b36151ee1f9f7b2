//! Small dense-vector helpers for points on spheres.

use crate::scalar::Scalar;

pub fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

pub fn norm<T: Scalar>(a: &[T]) -> T {
    dot(a, a).sqrt()
}

pub fn sub<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter().zip(b).map(|(&x, &y)| x - y).collect()
}

pub fn add<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter().zip(b).map(|(&x, &y)| x + y).collect()
}

pub fn scale<T: Scalar>(a: &[T], s: T) -> Vec<T> {
    a.iter().map(|&x| x * s).collect()
}

pub fn neg<T: Scalar>(a: &[T]) -> Vec<T> {
    a.iter().map(|&x| -x).collect()
}

/// `a * s + b * t`.
pub fn lin2<T: Scalar>(a: &[T], s: T, b: &[T], t: T) -> Vec<T> {
    a.iter().zip(b).map(|(&x, &y)| x * s + y * t).collect()
}

/// Returns `None` when the norm does not exceed `floor`.
pub fn normalized<T: Scalar>(a: &[T], floor: T) -> Option<Vec<T>> {
    let n = norm(a);
    if n <= floor || !n.is_finite() {
        None
    } else {
        Some(scale(a, T::one() / n))
    }
}

/// Geodesic distance on the unit sphere, `2 atan2(|x - y|, |x + y|)`.
///
/// Agrees with `acos(<x, y>)` but keeps full precision near `0` and `pi`.
pub fn geodesic<T: Scalar>(x: &[T], y: &[T]) -> T {
    let mut dm = T::zero();
    let mut dp = T::zero();
    for (&a, &b) in x.iter().zip(y) {
        dm += (a - b) * (a - b);
        dp += (a + b) * (a + b);
    }
    T::lit(2.0) * dm.sqrt().atan2(dp.sqrt())
}

/// Unit vector orthogonal to `x`, taken from the first standard basis vector
/// with a large enough residual.
pub fn orthogonal_unit<T: Scalar>(x: &[T]) -> Vec<T> {
    let dim = x.len();
    let mut best: Option<(T, Vec<T>)> = None;
    for k in 0..dim {
        let mut e = vec![T::zero(); dim];
        e[k] = T::one();
        let c = x[k];
        let r: Vec<T> = e.iter().zip(x).map(|(&ei, &xi)| ei - c * xi).collect();
        let n = norm(&r);
        if n > T::lit(0.5) {
            return scale(&r, T::one() / n);
        }
        if best.as_ref().is_none_or(|(bn, _)| n > *bn) {
            best = Some((n, r));
        }
    }
    let (n, r) = best.expect("dimension at least one");
    scale(&r, T::one() / n)
}

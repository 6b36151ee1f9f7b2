//! Anti-Vietoris-Rips complexes, their transport-based variants, anti-persistence,
//! sphere maps and Borsuk-graph colorings.
//!
//! Core types are generic over [`Scalar`] (`f32` or `f64`); the aliases at the
//! crate root fix the scalar to `f64`.

pub mod chromatic;
pub mod clique;
pub mod complex;
pub mod error;
pub mod graph;
pub mod homology;
pub mod io;
pub mod metric;
pub mod scalar;
pub mod sphere;
pub mod transport;
pub mod vector;

pub use error::{Error, Result};
pub use graph::Graph;
pub use scalar::Scalar;

pub type FiniteMetricSpace = metric::FiniteMetricSpace<f64>;
pub type FilteredComplex = complex::FilteredComplex<f64>;
pub type Barcode = homology::Barcode<f64>;
pub type DiscreteMeasure = transport::DiscreteMeasure<f64>;
pub type TransportPlan = transport::TransportPlan<f64>;
pub type SphereMeasure = sphere::SphereMeasure<f64>;
pub type SimplexConstants = metric::SimplexConstants<f64>;

pub type FiniteMetricSpace32 = metric::FiniteMetricSpace<f32>;
pub type SphereMeasure32 = sphere::SphereMeasure<f32>;

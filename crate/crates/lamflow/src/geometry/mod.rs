//! Discrete surfaces, conformal metric changes, curvature, Laplacians and
//! elliptic solves.
//!
//! A surface is a closed oriented triangulated 2-complex carrying background
//! edge lengths; no embedding is ever stored. Metrics in the conformal class
//! of the background are represented by a per-vertex log scale factor `u`,
//! deforming edge lengths as `l(ij) = exp((u_i + u_j)/2) * l0(ij)`.

mod curvature;
mod generators;
mod laplacian;
mod mesh;
mod metric;
mod poisson;
mod precondition;

pub use curvature::{curvature, CurvatureField};
pub use generators::{gen_flat_torus, gen_genus2, gen_genus2_homogeneous};
pub use laplacian::{cotan_laplacian, CotanLaplacian};
pub use mesh::{build_mesh, Side, TriMesh};
pub use poisson::{poisson_solve, PoissonSolution};
pub use precondition::{precondition_negative, PreconditionReport};

pub(crate) use metric::MetricData;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Errors raised by mesh construction, metric validation and elliptic solves.
#[derive(Debug, Error)]
pub enum GeometryError {
    #[error("mesh has no faces")]
    EmptyMesh,
    #[error("face {face} references vertex {vertex} out of range (vertex count {count})")]
    VertexOutOfRange { face: usize, vertex: usize, count: usize },
    #[error("face {face} repeats a vertex; pair-keyed construction requires simplicial faces")]
    DegenerateFace { face: usize },
    #[error("edge ({0}, {1}) is incident to {count} face sides, expected 2", .edge.0, .edge.1)]
    NonManifold { edge: (usize, usize), count: usize },
    #[error("edge ({0}, {1}) is traversed twice in the same direction; face orientations disagree", .edge.0, .edge.1)]
    OrientationMismatch { edge: (usize, usize) },
    #[error("edge {edge} has non-positive or non-finite length {length}")]
    NonPositiveLength { edge: usize, length: f64 },
    #[error("no length supplied for edge ({0}, {1})", .edge.0, .edge.1)]
    MissingEdgeLength { edge: (usize, usize) },
    #[error("mesh is not edge-connected")]
    Disconnected,
    #[error("vertex {vertex} is not referenced by any face")]
    UnusedVertex { vertex: usize },
    #[error("face {face} violates the strict triangle inequality: lengths [{}, {}, {}]", .lengths[0], .lengths[1], .lengths[2])]
    TriangleInequality { face: usize, lengths: [f64; 3] },
    #[error("conformal factor has {got} entries, mesh has {expected} vertices")]
    FactorLength { expected: usize, got: usize },
    #[error("conformal factor is not finite at vertex {vertex}")]
    NonFiniteFactor { vertex: usize },
    #[error("operation requires chi < 0, mesh has chi = {chi}")]
    NonHyperbolic { chi: i64 },
    #[error("linear solve did not converge within {iterations} iterations (relative residual {residual:.3e})")]
    SolveNoConvergence { iterations: usize, residual: f64 },
    #[error("negative curvature not reached within {iterations} corrections; worst vertex {vertex} has R = {curvature:.6e}")]
    PreconditionNoConvergence { iterations: usize, vertex: usize, curvature: f64 },
    #[error("target curvature must be negative, got {0}")]
    NonNegativeTarget(f64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// Per-vertex log-scale factor defining a metric in the conformal class of
/// the mesh background.
#[derive(Debug, Clone, PartialEq)]
pub struct ConformalFactor {
    values: Vec<f64>,
}

impl ConformalFactor {
    pub fn zeros(vertex_count: usize) -> Self {
        Self { values: vec![0.0; vertex_count] }
    }

    pub fn constant(vertex_count: usize, value: f64) -> Self {
        Self { values: vec![value; vertex_count] }
    }

    pub fn from_values(values: Vec<f64>) -> Result<Self, GeometryError> {
        if let Some(v) = values.iter().position(|x| !x.is_finite()) {
            return Err(GeometryError::NonFiniteFactor { vertex: v });
        }
        Ok(Self { values })
    }

    /// Seeded uniform factor in `[-amplitude, amplitude]` per vertex.
    pub fn random(vertex_count: usize, amplitude: f64, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let values = (0..vertex_count)
            .map(|_| rng.gen_range(-amplitude..=amplitude))
            .collect();
        Self { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// Pointwise sum with another factor of the same length.
    pub fn add(&self, other: &ConformalFactor) -> ConformalFactor {
        assert_eq!(self.len(), other.len());
        ConformalFactor {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn shift(&self, c: f64) -> ConformalFactor {
        ConformalFactor { values: self.values.iter().map(|v| v + c).collect() }
    }
}

impl std::ops::Index<usize> for ConformalFactor {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.values[i]
    }
}

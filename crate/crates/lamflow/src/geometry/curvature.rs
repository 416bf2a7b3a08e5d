//! Discrete scalar curvature from angle defects.

use super::{ConformalFactor, GeometryError, MetricData, TriMesh};

/// Per-vertex scalar curvature of a deformed metric, together with the
/// lumped vertex areas it was normalized by. Scalar curvature is twice the
/// Gaussian: `R_i = 2 * defect_i / A_i`, so Gauss-Bonnet reads
/// `sum (R_i / 2) A_i = 2 pi chi`.
#[derive(Debug, Clone)]
pub struct CurvatureField {
    values: Vec<f64>,
    areas: Vec<f64>,
    defects: Vec<f64>,
}

impl CurvatureField {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn areas(&self) -> &[f64] {
        &self.areas
    }

    pub fn defects(&self) -> &[f64] {
        &self.defects
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Area-weighted mean; by Gauss-Bonnet this equals `4 pi chi / Area`.
    pub fn area_weighted_mean(&self) -> f64 {
        let num: f64 = self.values.iter().zip(&self.areas).map(|(r, a)| r * a).sum();
        num / self.total_area()
    }

    pub fn total_area(&self) -> f64 {
        self.areas.iter().sum()
    }

    pub fn total_defect(&self) -> f64 {
        self.defects.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

impl std::ops::Index<usize> for CurvatureField {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.values[i]
    }
}

/// Scalar curvature of the metric `e^u g0`: interior angles by the law of
/// cosines on the deformed lengths, angle defects, and the lumped-area
/// normalization.
pub fn curvature(mesh: &TriMesh, u: &ConformalFactor) -> Result<CurvatureField, GeometryError> {
    let data = MetricData::compute(mesh, u)?;
    Ok(curvature_from_metric(mesh, &data))
}

pub(crate) fn curvature_from_metric(mesh: &TriMesh, data: &MetricData) -> CurvatureField {
    let mut angle_sum = vec![0.0; mesh.vertex_count()];
    for (f, angles) in data.angles.iter().enumerate() {
        for (k, &a) in angles.iter().enumerate() {
            angle_sum[mesh.faces()[f][k]] += a;
        }
    }
    let defects: Vec<f64> = angle_sum
        .iter()
        .map(|&s| 2.0 * std::f64::consts::PI - s)
        .collect();
    let values = defects
        .iter()
        .zip(&data.vertex_areas)
        .map(|(d, a)| 2.0 * d / a)
        .collect();
    CurvatureField { values, areas: data.vertex_areas.clone(), defects }
}

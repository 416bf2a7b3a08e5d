//! Per-face geometry of a deformed metric: corner angles, face areas and
//! lumped vertex areas. Shared by the curvature and Laplacian assemblies.

use super::{ConformalFactor, GeometryError, TriMesh};

pub(crate) struct MetricData {
    /// Deformed edge lengths, indexed by edge id.
    pub lengths: Vec<f64>,
    /// Interior angle at each face corner.
    pub angles: Vec<[f64; 3]>,
    pub face_areas: Vec<f64>,
    /// Lumped vertex area: one third of the incident face areas, counted
    /// per corner.
    pub vertex_areas: Vec<f64>,
}

impl MetricData {
    pub fn compute(mesh: &TriMesh, u: &ConformalFactor) -> Result<Self, GeometryError> {
        let lengths = mesh.deformed_lengths(u)?;
        Self::from_lengths(mesh, lengths)
    }

    pub fn from_lengths(mesh: &TriMesh, lengths: Vec<f64>) -> Result<Self, GeometryError> {
        mesh.check_triangle_inequality(&lengths)?;
        let mut angles = Vec::with_capacity(mesh.face_count());
        let mut face_areas = Vec::with_capacity(mesh.face_count());
        let mut vertex_areas = vec![0.0; mesh.vertex_count()];

        for (f, sides) in mesh.face_sides().iter().enumerate() {
            let l = [
                lengths[sides[0].edge],
                lengths[sides[1].edge],
                lengths[sides[2].edge],
            ];
            let mut a = [0.0; 3];
            for k in 0..3 {
                a[k] = corner_angle(l[k], l[(k + 1) % 3], l[(k + 2) % 3]);
            }
            let area = triangle_area(l[0], l[1], l[2]);
            angles.push(a);
            face_areas.push(area);
            for &v in &mesh.faces()[f] {
                vertex_areas[v] += area / 3.0;
            }
        }
        Ok(Self { lengths, angles, face_areas, vertex_areas })
    }

    pub fn total_area(&self) -> f64 {
        self.face_areas.iter().sum()
    }
}

/// Interior angle opposite side `a` in a triangle with sides (a, b, c).
fn corner_angle(a: f64, b: f64, c: f64) -> f64 {
    let cos = ((b * b + c * c - a * a) / (2.0 * b * c)).clamp(-1.0, 1.0);
    cos.acos()
}

/// Numerically stable Heron form (Kahan); assumes a valid triangle.
fn triangle_area(a: f64, b: f64, c: f64) -> f64 {
    let mut s = [a, b, c];
    s.sort_by(|x, y| y.partial_cmp(x).unwrap());
    let [a, b, c] = s;
    let t = (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c));
    0.25 * t.max(0.0).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equilateral_angles_and_area() {
        let a = corner_angle(1.0, 1.0, 1.0);
        assert!((a - std::f64::consts::FRAC_PI_3).abs() < 1e-15);
        let area = triangle_area(1.0, 1.0, 1.0);
        assert!((area - 3f64.sqrt() / 4.0).abs() < 1e-15);
    }

    #[test]
    fn right_isoceles() {
        let h = 2f64.sqrt();
        assert!((corner_angle(h, 1.0, 1.0) - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
        assert!((corner_angle(1.0, h, 1.0) - std::f64::consts::FRAC_PI_4).abs() < 1e-12);
        assert!((triangle_area(1.0, 1.0, h) - 0.5).abs() < 1e-15);
    }
}

//! Mesh generators: flat torus grids and genus-2 surfaces built from the
//! identified octagon, refined by flat 1-to-4 subdivision.

use super::mesh::{Side, TriMesh};
use super::GeometryError;

/// n x n grid torus; every square is split into two triangles. Axis edges
/// have length 1, diagonals sqrt(2), so the metric is flat at every vertex.
pub fn gen_flat_torus(n: usize) -> Result<TriMesh, GeometryError> {
    if n < 3 {
        return Err(GeometryError::InvalidParameter(format!(
            "torus grid needs n >= 3, got {n}"
        )));
    }
    let v = |i: usize, j: usize| (i % n) * n + (j % n);
    let mut faces = Vec::with_capacity(2 * n * n);
    let mut lengths = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let v00 = v(i, j);
            let v10 = v(i + 1, j);
            let v11 = v(i + 1, j + 1);
            let v01 = v(i, j + 1);
            faces.push([v00, v10, v11]);
            faces.push([v00, v11, v01]);
            lengths.push(([v00, v10], 1.0));
            lengths.push(([v00, v01], 1.0));
            lengths.push(([v00, v11], std::f64::consts::SQRT_2));
        }
    }
    super::mesh::build_mesh(&faces, &lengths)
}

/// Genus-2 surface: the regular octagon with edge identification
/// a b a^-1 b^-1 c d c^-1 d^-1, fanned from a center vertex. All eight
/// octagon corners are identified to a single vertex, giving V=2, E=12,
/// F=8 at subdivision 0; each subdivision round splits every face 1-to-4
/// with midpoint lengths half the parent's (flat refinement).
pub fn gen_genus2(subdivisions: usize) -> Result<TriMesh, GeometryError> {
    let mut mesh = genus2_base(1.0, 1.0)?;
    for _ in 0..subdivisions {
        mesh = subdivide(&mesh)?;
    }
    Ok(mesh)
}

/// Genus-2 base mesh with spoke and rim lengths tuned so the discrete
/// scalar curvature is exactly `target_r` at both vertices. With apex
/// angle 5 pi / 12 the two vertices share one curvature value -pi/T
/// (T the face area), and the global scale pins it to the target.
pub fn gen_genus2_homogeneous(target_r: f64) -> Result<TriMesh, GeometryError> {
    if !(target_r.is_finite() && target_r < 0.0) {
        return Err(GeometryError::NonNegativeTarget(target_r));
    }
    let gamma = 5.0 * std::f64::consts::PI / 12.0;
    let spoke = (2.0 * std::f64::consts::PI / (-target_r * gamma.sin())).sqrt();
    let rim = 2.0 * spoke * (gamma / 2.0).sin();
    genus2_base(spoke, rim)
}

fn genus2_base(spoke: f64, rim: f64) -> Result<TriMesh, GeometryError> {
    // Edges 0..8 are the spokes (center to corner), 8..12 the identified
    // octagon sides a, b, c, d (loops at the corner vertex).
    let mut edges: Vec<[usize; 2]> = (0..8).map(|_| [0usize, 1usize]).collect();
    edges.extend((0..4).map(|_| [1usize, 1usize]));
    let mut lengths = vec![spoke; 8];
    lengths.extend(vec![rim; 4]);

    // Octagon side i -> (rim edge, traversed forward?) per the boundary
    // word a b a^-1 b^-1 c d c^-1 d^-1.
    let side_to_rim: [(usize, bool); 8] = [
        (8, true),
        (9, true),
        (8, false),
        (9, false),
        (10, true),
        (11, true),
        (10, false),
        (11, false),
    ];

    let mut faces = Vec::with_capacity(8);
    let mut face_sides = Vec::with_capacity(8);
    for i in 0..8 {
        faces.push([0usize, 1, 1]);
        let (rim_edge, forward) = side_to_rim[i];
        face_sides.push([
            Side { edge: rim_edge, forward },
            Side { edge: (i + 1) % 8, forward: false },
            Side { edge: i, forward: true },
        ]);
    }
    TriMesh::from_components(2, faces, face_sides, edges, lengths)
}

/// One round of 1-to-4 subdivision. The midpoint of edge `e` becomes
/// vertex `V + e`; each edge splits into two halves of half the length and
/// each face gains a medial triangle whose sides are half the opposite
/// parent side.
pub(crate) fn subdivide(mesh: &TriMesh) -> Result<TriMesh, GeometryError> {
    let v0 = mesh.vertex_count();
    let ne = mesh.edge_count();
    let vertex_count = v0 + ne;

    // Halves: edge e = [w0, w1] -> 2e = [w0, m], 2e+1 = [m, w1].
    let mut edges: Vec<[usize; 2]> = Vec::with_capacity(2 * ne + 3 * mesh.face_count());
    let mut lengths: Vec<f64> = Vec::with_capacity(edges.capacity());
    for (e, (ends, &l)) in mesh.edges().iter().zip(mesh.background_lengths()).enumerate() {
        let m = v0 + e;
        edges.push([ends[0], m]);
        edges.push([m, ends[1]]);
        lengths.push(l / 2.0);
        lengths.push(l / 2.0);
    }

    // The child side covering the first or second part of a parent side's
    // traversal, in traversal order.
    let half = |side: Side, first: bool| -> Side {
        match (side.forward, first) {
            (true, true) => Side { edge: 2 * side.edge, forward: true },
            (true, false) => Side { edge: 2 * side.edge + 1, forward: true },
            (false, true) => Side { edge: 2 * side.edge + 1, forward: false },
            (false, false) => Side { edge: 2 * side.edge, forward: false },
        }
    };

    let mut faces = Vec::with_capacity(4 * mesh.face_count());
    let mut face_sides = Vec::with_capacity(4 * mesh.face_count());
    for (f, sides) in mesh.face_sides().iter().enumerate() {
        let [c0, c1, c2] = mesh.faces()[f];
        let m = [v0 + sides[0].edge, v0 + sides[1].edge, v0 + sides[2].edge];
        let parent_l = [
            mesh.background_lengths()[sides[0].edge],
            mesh.background_lengths()[sides[1].edge],
            mesh.background_lengths()[sides[2].edge],
        ];

        // Connectors join midpoints of side pairs; the connector for pair
        // {a, b} is parallel to the remaining side and half its length.
        let base = 2 * ne + 3 * f;
        let conn01 = base; // [m0, m1], parallel to side 2
        let conn02 = base + 1; // [m0, m2], parallel to side 1
        let conn12 = base + 2; // [m1, m2], parallel to side 0
        edges.push([m[0], m[1]]);
        lengths.push(parent_l[2] / 2.0);
        edges.push([m[0], m[2]]);
        lengths.push(parent_l[1] / 2.0);
        edges.push([m[1], m[2]]);
        lengths.push(parent_l[0] / 2.0);

        // Corner triangle at c0.
        faces.push([c0, m[2], m[1]]);
        face_sides.push([
            Side { edge: conn12, forward: false },
            half(sides[1], false),
            half(sides[2], true),
        ]);
        // Corner triangle at c1.
        faces.push([c1, m[0], m[2]]);
        face_sides.push([
            Side { edge: conn02, forward: true },
            half(sides[2], false),
            half(sides[0], true),
        ]);
        // Corner triangle at c2.
        faces.push([c2, m[1], m[0]]);
        face_sides.push([
            Side { edge: conn01, forward: false },
            half(sides[0], false),
            half(sides[1], true),
        ]);
        // Medial triangle.
        faces.push([m[0], m[1], m[2]]);
        face_sides.push([
            Side { edge: conn12, forward: true },
            Side { edge: conn02, forward: false },
            Side { edge: conn01, forward: true },
        ]);
    }

    TriMesh::from_components(vertex_count, faces, face_sides, edges, lengths)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{curvature, ConformalFactor};
    use std::f64::consts::PI;

    #[test]
    fn torus_counts() {
        let m = gen_flat_torus(3).unwrap();
        assert_eq!(m.vertex_count(), 9);
        assert_eq!(m.edge_count(), 27);
        assert_eq!(m.face_count(), 18);
        assert_eq!(m.euler_characteristic(), 0);
    }

    #[test]
    fn torus_rejects_small_n() {
        assert!(gen_flat_torus(2).is_err());
    }

    #[test]
    fn genus2_base_counts() {
        let m = gen_genus2(0).unwrap();
        assert_eq!(m.vertex_count(), 2);
        assert_eq!(m.edge_count(), 12);
        assert_eq!(m.face_count(), 8);
        assert_eq!(m.euler_characteristic(), -2);
        assert!(!m.is_pair_representable());
    }

    #[test]
    fn genus2_subdivision_counts() {
        for k in 0..4 {
            let m = gen_genus2(k).unwrap();
            assert_eq!(m.face_count(), 8 * 4usize.pow(k as u32));
            assert_eq!(m.euler_characteristic(), -2, "chi at level {k}");
        }
        // Two subdivision rounds resolve all loops and parallel edges.
        assert!(!gen_genus2(1).unwrap().is_pair_representable());
        assert!(gen_genus2(2).unwrap().is_pair_representable());
    }

    #[test]
    fn genus2_total_defect() {
        for k in 0..3 {
            let m = gen_genus2(k).unwrap();
            let field = curvature(&m, &ConformalFactor::zeros(m.vertex_count())).unwrap();
            assert!(
                (field.total_defect() - (-4.0 * PI)).abs() < 1e-10,
                "level {k}: {}",
                field.total_defect()
            );
        }
    }

    #[test]
    fn subdivision_keeps_old_defects_and_flat_midpoints() {
        let coarse = gen_genus2(0).unwrap();
        let fine = subdivide(&coarse).unwrap();
        let cf = curvature(&coarse, &ConformalFactor::zeros(2)).unwrap();
        let ff = curvature(&fine, &ConformalFactor::zeros(fine.vertex_count())).unwrap();
        for v in 0..2 {
            assert!((cf.defects()[v] - ff.defects()[v]).abs() < 1e-12);
        }
        for v in 2..fine.vertex_count() {
            assert!(ff.defects()[v].abs() < 1e-12, "midpoint {v} defect {}", ff.defects()[v]);
        }
    }

    #[test]
    fn homogeneous_base_hits_target_curvature() {
        let m = gen_genus2_homogeneous(-2.0).unwrap();
        let field = curvature(&m, &ConformalFactor::zeros(2)).unwrap();
        for v in 0..2 {
            assert!((field[v] + 2.0).abs() < 1e-12, "vertex {v}: {}", field[v]);
        }
        assert!((field.total_area() - 4.0 * PI / 2.0).abs() < 1e-10);
        assert!(gen_genus2_homogeneous(0.5).is_err());
    }
}

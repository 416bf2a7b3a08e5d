//! Closed oriented triangulated surfaces with background edge lengths.
//!
//! Faces reference edge *objects* rather than vertex pairs, so the complex
//! may contain loop edges and parallel edges (a Δ-complex). This is what
//! makes the identified-octagon genus-2 base mesh (V=2, E=12, F=8)
//! representable; meshes read from the pair-keyed file format are always
//! simplicial and take the [`build_mesh`] path.

use std::collections::HashMap;

use super::{ConformalFactor, GeometryError};

/// One side of a face: an edge object plus the direction the face traverses
/// it. Side `k` of a face with corners `(c0, c1, c2)` connects corners
/// `c_{k+1} -> c_{k+2}` and lies opposite corner `k`; `forward` means the
/// traversal runs from `verts[0]` to `verts[1]` of the edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Side {
    pub edge: usize,
    pub forward: bool,
}

/// Combinatorial closed oriented triangulated surface with background
/// edge lengths. Immutable once constructed.
#[derive(Debug, Clone)]
pub struct TriMesh {
    vertex_count: usize,
    faces: Vec<[usize; 3]>,
    face_sides: Vec<[Side; 3]>,
    edges: Vec<[usize; 2]>,
    lengths0: Vec<f64>,
}

impl TriMesh {
    /// Validating constructor over explicit edge objects.
    pub(crate) fn from_components(
        vertex_count: usize,
        faces: Vec<[usize; 3]>,
        face_sides: Vec<[Side; 3]>,
        edges: Vec<[usize; 2]>,
        lengths0: Vec<f64>,
    ) -> Result<Self, GeometryError> {
        if faces.is_empty() {
            return Err(GeometryError::EmptyMesh);
        }
        assert_eq!(faces.len(), face_sides.len());
        assert_eq!(edges.len(), lengths0.len());

        for (f, corners) in faces.iter().enumerate() {
            for &v in corners {
                if v >= vertex_count {
                    return Err(GeometryError::VertexOutOfRange { face: f, vertex: v, count: vertex_count });
                }
            }
        }
        for (e, &l) in lengths0.iter().enumerate() {
            if !(l.is_finite() && l > 0.0) {
                return Err(GeometryError::NonPositiveLength { edge: e, length: l });
            }
        }

        // Each edge must be traversed by exactly two face sides, once in
        // each direction, and side endpoints must match the face corners.
        let mut incidence: Vec<Vec<bool>> = vec![Vec::new(); edges.len()];
        for (f, sides) in face_sides.iter().enumerate() {
            for (k, side) in sides.iter().enumerate() {
                let u = faces[f][(k + 1) % 3];
                let v = faces[f][(k + 2) % 3];
                let ev = edges[side.edge];
                let (a, b) = if side.forward { (ev[0], ev[1]) } else { (ev[1], ev[0]) };
                if (a, b) != (u, v) {
                    return Err(GeometryError::InvalidParameter(format!(
                        "face {f} side {k} endpoints ({u}, {v}) do not match edge {} as stored",
                        side.edge
                    )));
                }
                incidence[side.edge].push(side.forward);
            }
        }
        for (e, dirs) in incidence.iter().enumerate() {
            let pair = (edges[e][0], edges[e][1]);
            if dirs.len() != 2 {
                return Err(GeometryError::NonManifold { edge: pair, count: dirs.len() });
            }
            if dirs[0] == dirs[1] {
                return Err(GeometryError::OrientationMismatch { edge: pair });
            }
        }

        let mesh = Self { vertex_count, faces, face_sides, edges, lengths0 };
        mesh.check_triangle_inequality(&mesh.lengths0)?;

        let mut used = vec![false; vertex_count];
        for corners in &mesh.faces {
            for &v in corners {
                used[v] = true;
            }
        }
        if let Some(v) = used.iter().position(|u| !u) {
            return Err(GeometryError::UnusedVertex { vertex: v });
        }
        if !mesh.is_connected() {
            return Err(GeometryError::Disconnected);
        }
        Ok(mesh)
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.vertex_count];
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); self.vertex_count];
        for e in &self.edges {
            if e[0] != e[1] {
                adj[e[0]].push(e[1]);
                adj[e[1]].push(e[0]);
            }
        }
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    pub(crate) fn check_triangle_inequality(&self, lengths: &[f64]) -> Result<(), GeometryError> {
        for (f, sides) in self.face_sides.iter().enumerate() {
            let l = [
                lengths[sides[0].edge],
                lengths[sides[1].edge],
                lengths[sides[2].edge],
            ];
            for k in 0..3 {
                if !(l[k] < l[(k + 1) % 3] + l[(k + 2) % 3]) {
                    return Err(GeometryError::TriangleInequality { face: f, lengths: l });
                }
            }
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }

    pub fn faces(&self) -> &[[usize; 3]] {
        &self.faces
    }

    pub fn face_sides(&self) -> &[[Side; 3]] {
        &self.face_sides
    }

    /// Edge endpoint vertices; for loop edges both entries coincide.
    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    /// Background edge lengths, indexed by edge id.
    pub fn background_lengths(&self) -> &[f64] {
        &self.lengths0
    }

    /// Whether every edge is determined by its unordered endpoint pair
    /// (no loops, no parallel edges); only such meshes round-trip through
    /// the pair-keyed file format.
    pub fn is_pair_representable(&self) -> bool {
        let mut seen = HashMap::new();
        for e in &self.edges {
            if e[0] == e[1] {
                return false;
            }
            let key = (e[0].min(e[1]), e[0].max(e[1]));
            if seen.insert(key, true).is_some() {
                return false;
            }
        }
        true
    }

    /// A copy of this mesh with every background length multiplied by a
    /// per-edge positive factor.
    pub fn with_scaled_lengths(&self, scale: &[f64]) -> Result<TriMesh, GeometryError> {
        assert_eq!(scale.len(), self.lengths0.len());
        let lengths: Vec<f64> = self
            .lengths0
            .iter()
            .zip(scale)
            .map(|(l, s)| l * s)
            .collect();
        TriMesh::from_components(
            self.vertex_count,
            self.faces.clone(),
            self.face_sides.clone(),
            self.edges.clone(),
            lengths,
        )
    }

    /// A copy with background lengths deformed by a conformal factor,
    /// `l'(ij) = exp((u_i + u_j)/2) l(ij)`. The factor is absorbed into the
    /// background; this is how per-leaf metrics of a family are materialized.
    pub fn with_conformal_background(&self, u: &ConformalFactor) -> Result<TriMesh, GeometryError> {
        let lengths = self.deformed_lengths(u)?;
        TriMesh::from_components(
            self.vertex_count,
            self.faces.clone(),
            self.face_sides.clone(),
            self.edges.clone(),
            lengths,
        )
    }

    /// Deformed edge lengths under a conformal factor, with the strict
    /// triangle inequality enforced on every face.
    pub fn deformed_lengths(&self, u: &ConformalFactor) -> Result<Vec<f64>, GeometryError> {
        if u.len() != self.vertex_count {
            return Err(GeometryError::FactorLength { expected: self.vertex_count, got: u.len() });
        }
        if let Some(v) = u.values().iter().position(|x| !x.is_finite()) {
            return Err(GeometryError::NonFiniteFactor { vertex: v });
        }
        let lengths: Vec<f64> = self
            .edges
            .iter()
            .zip(&self.lengths0)
            .map(|(e, l)| ((u[e[0]] + u[e[1]]) / 2.0).exp() * l)
            .collect();
        self.check_triangle_inequality(&lengths)?;
        Ok(lengths)
    }

    /// Hop distance from a source vertex over non-loop edges.
    pub fn hop_distances(&self, source: usize) -> Vec<usize> {
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); self.vertex_count];
        for e in &self.edges {
            if e[0] != e[1] {
                adj[e[0]].push(e[1]);
                adj[e[1]].push(e[0]);
            }
        }
        let mut dist = vec![usize::MAX; self.vertex_count];
        dist[source] = 0;
        let mut queue = std::collections::VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }
}

/// Build a simplicial mesh from oriented faces and lengths keyed by
/// unordered vertex pairs. Each undirected edge must be traversed exactly
/// once in each direction across all faces.
pub fn build_mesh(
    faces: &[[usize; 3]],
    lengths: &[([usize; 2], f64)],
) -> Result<TriMesh, GeometryError> {
    if faces.is_empty() {
        return Err(GeometryError::EmptyMesh);
    }
    let mut vertex_count = 0;
    for (f, corners) in faces.iter().enumerate() {
        if corners[0] == corners[1] || corners[1] == corners[2] || corners[2] == corners[0] {
            return Err(GeometryError::DegenerateFace { face: f });
        }
        for &v in corners {
            vertex_count = vertex_count.max(v + 1);
        }
    }

    let mut length_map: HashMap<(usize, usize), f64> = HashMap::new();
    for &(pair, l) in lengths {
        let key = (pair[0].min(pair[1]), pair[0].max(pair[1]));
        length_map.insert(key, l);
    }

    // Collect directed traversals per unordered pair.
    let mut traversals: HashMap<(usize, usize), Vec<bool>> = HashMap::new();
    for corners in faces {
        for k in 0..3 {
            let u = corners[(k + 1) % 3];
            let v = corners[(k + 2) % 3];
            let key = (u.min(v), u.max(v));
            traversals.entry(key).or_default().push(u < v);
        }
    }
    let mut keys: Vec<(usize, usize)> = traversals.keys().copied().collect();
    keys.sort_unstable();

    let mut edges = Vec::with_capacity(keys.len());
    let mut lengths0 = Vec::with_capacity(keys.len());
    let mut edge_id: HashMap<(usize, usize), usize> = HashMap::new();
    for key in keys {
        let dirs = &traversals[&key];
        if dirs.len() != 2 {
            return Err(GeometryError::NonManifold { edge: key, count: dirs.len() });
        }
        if dirs[0] == dirs[1] {
            return Err(GeometryError::OrientationMismatch { edge: key });
        }
        let l = *length_map
            .get(&key)
            .ok_or(GeometryError::MissingEdgeLength { edge: key })?;
        edge_id.insert(key, edges.len());
        edges.push([key.0, key.1]);
        lengths0.push(l);
    }

    let mut face_sides = Vec::with_capacity(faces.len());
    for corners in faces {
        let mut sides = [Side { edge: 0, forward: true }; 3];
        for k in 0..3 {
            let u = corners[(k + 1) % 3];
            let v = corners[(k + 2) % 3];
            let key = (u.min(v), u.max(v));
            sides[k] = Side { edge: edge_id[&key], forward: u < v };
        }
        face_sides.push(sides);
    }

    TriMesh::from_components(vertex_count, faces.to_vec(), face_sides, edges, lengths0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tetrahedron() -> TriMesh {
        let faces = [[0, 1, 2], [0, 2, 3], [0, 3, 1], [1, 3, 2]];
        let pairs: Vec<([usize; 2], f64)> = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
            .iter()
            .map(|&(a, b)| ([a, b], 1.0))
            .collect();
        build_mesh(&faces, &pairs).unwrap()
    }

    #[test]
    fn tetrahedron_counts() {
        let m = tetrahedron();
        assert_eq!(m.vertex_count(), 4);
        assert_eq!(m.edge_count(), 6);
        assert_eq!(m.face_count(), 4);
        assert_eq!(m.euler_characteristic(), 2);
        assert!(m.is_pair_representable());
    }

    #[test]
    fn doubled_face_is_rejected() {
        let faces = [[0, 1, 2], [0, 1, 2]];
        let pairs: Vec<([usize; 2], f64)> =
            [(0, 1), (1, 2), (0, 2)].iter().map(|&(a, b)| ([a, b], 1.0)).collect();
        let err = build_mesh(&faces, &pairs).unwrap_err();
        assert!(matches!(err, GeometryError::OrientationMismatch { .. }), "{err}");
    }

    #[test]
    fn edge_in_three_faces_is_non_manifold() {
        let faces = [[0, 1, 2], [0, 2, 1], [0, 1, 3]];
        let pairs: Vec<([usize; 2], f64)> = [(0, 1), (1, 2), (0, 2), (1, 3), (0, 3)]
            .iter()
            .map(|&(a, b)| ([a, b], 1.0))
            .collect();
        let err = build_mesh(&faces, &pairs).unwrap_err();
        assert!(matches!(err, GeometryError::NonManifold { count: 3, .. }), "{err}");
    }

    #[test]
    fn pillow_sphere_is_valid() {
        // Two faces glued along all three edges with opposite orientations.
        let faces = [[0, 1, 2], [0, 2, 1]];
        let pairs: Vec<([usize; 2], f64)> =
            [(0, 1), (1, 2), (0, 2)].iter().map(|&(a, b)| ([a, b], 1.0)).collect();
        let m = build_mesh(&faces, &pairs).unwrap();
        assert_eq!(m.euler_characteristic(), 2);
    }

    #[test]
    fn triangle_inequality_violation_names_face() {
        let faces = [[0, 1, 2], [0, 2, 1]];
        let pairs = vec![([0, 1], 1.0), ([1, 2], 1.0), ([0, 2], 2.5)];
        let err = build_mesh(&faces, &pairs).unwrap_err();
        match err {
            GeometryError::TriangleInequality { face, .. } => assert_eq!(face, 0),
            other => panic!("unexpected error {other}"),
        }
    }

    #[test]
    fn missing_length_is_reported() {
        let faces = [[0, 1, 2], [0, 2, 1]];
        let pairs = vec![([0, 1], 1.0), ([1, 2], 1.0)];
        let err = build_mesh(&faces, &pairs).unwrap_err();
        assert!(matches!(err, GeometryError::MissingEdgeLength { edge: (0, 2) }), "{err}");
    }

    #[test]
    fn deformed_lengths_enforce_triangle_inequality() {
        let m = tetrahedron();
        let u = ConformalFactor::from_values(vec![2.0, 0.0, 0.0, 0.0]).unwrap();
        // Faces at vertex 0 stretch two of their three sides equally, so
        // this factor keeps every triangle valid.
        assert!(m.deformed_lengths(&u).is_ok());
        // Stretching the single edge (1,2) past the sum of its face's other
        // two sides must error.
        let u = ConformalFactor::from_values(vec![0.0, 3.0, 3.0, 0.0]).unwrap();
        let err = m.deformed_lengths(&u).unwrap_err();
        assert!(matches!(err, GeometryError::TriangleInequality { .. }), "{err}");
    }

    #[test]
    fn factor_length_mismatch() {
        let m = tetrahedron();
        let u = ConformalFactor::zeros(3);
        assert!(matches!(
            m.deformed_lengths(&u),
            Err(GeometryError::FactorLength { expected: 4, got: 3 })
        ));
    }
}

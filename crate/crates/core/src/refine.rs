//! Worsey-Farin refinement.
//!
//! Every tetrahedron `T` is split around its incenter `z_T`. Each face `F`
//! gets a split point `m_F`: where the segment between the two incenters
//! adjacent to `F` crosses it (interior faces), or its barycenter (boundary
//! faces). The children of `T` are `[a, b, m_F, z_T]` for every face `F` of
//! `T` and every edge `[a, b]` of `F`, twelve in total.
//!
//! Refined vertex numbering: parent vertices first, then one incenter per
//! parent tet (in tet order), then one split point per face (in face-table
//! order).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{
    barycentric_in_triangle, segment_plane_intersection, signed_volume, tet_geometry_of, Plane,
    Point3, TetGeometry, Triangle3, INSIDE_TOL,
};
use crate::mesh::{build_face_table, tet_face, FaceTable, TetMesh};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SplitKind {
    Interior,
    Boundary,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SplitPointInfo {
    /// Sorted vertex triple of the face.
    pub key: [usize; 3],
    pub point: Point3,
    pub kind: SplitKind,
    /// Parameter along the segment from the lower- to the higher-indexed
    /// neighbour's incenter. `None` on boundary faces.
    pub t: Option<f64>,
    /// Barycentric coordinates with respect to the corners in `key` order,
    /// negative roundoff clamped to zero.
    pub bary: [f64; 3],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ChildProvenance {
    pub parent: usize,
    /// Sorted key of the parent face that contains the child's base.
    pub face: [usize; 3],
    /// The parent edge shared by the child.
    pub edge: [usize; 2],
}

#[derive(Debug, Clone)]
pub struct RefinementOutput {
    pub refined: TetMesh,
    /// Split points indexed by face id of `faces`.
    pub split_points: Vec<SplitPointInfo>,
    /// Refined-mesh vertex index of each parent incenter.
    pub incenters: Vec<usize>,
    /// Immediate provenance of each child.
    pub parent_of: Vec<ChildProvenance>,
    /// Index of the ancestor tet in the original (level 0) mesh.
    pub root_parent: Vec<usize>,
    pub levels: usize,
    /// Face table of the mesh that was refined last.
    pub faces: FaceTable,
    /// Geometry of each tet of the mesh that was refined last.
    pub parent_geometry: Vec<TetGeometry>,
}

impl RefinementOutput {
    pub fn split_vertex(&self, face_id: usize) -> usize {
        self.refined.vertices.len() - self.split_points.len() + face_id
    }

    /// Largest relative difference between an original tet's volume and the
    /// summed volumes of its descendants.
    pub fn volume_residual(&self, original: &TetMesh) -> f64 {
        let mut sums = vec![0.0; original.num_tets()];
        for (c, &root) in self.root_parent.iter().enumerate() {
            sums[root] += self.refined.signed_volume(c).abs();
        }
        sums.iter()
            .enumerate()
            .map(|(t, &s)| {
                let v = original.signed_volume(t).abs();
                (s - v).abs() / v
            })
            .fold(0.0, f64::max)
    }
}

/// Geometry of every tet, failing on the first degenerate one.
pub fn tet_geometries(mesh: &TetMesh) -> Result<Vec<TetGeometry>> {
    (0..mesh.num_tets())
        .map(|t| tet_geometry_of(&mesh.tet_points(t)).map_err(|e| Error::tet(t, e)))
        .collect()
}

pub fn compute_split_points(
    mesh: &TetMesh,
    faces: &FaceTable,
    geoms: &[TetGeometry],
) -> Result<Vec<SplitPointInfo>> {
    faces
        .faces()
        .iter()
        .map(|face| {
            let key = face.key;
            let tri = Triangle3::new(
                mesh.vertices[key[0]],
                mesh.vertices[key[1]],
                mesh.vertices[key[2]],
            );
            if face.is_boundary() {
                return Ok(SplitPointInfo {
                    key,
                    point: tri.centroid(),
                    kind: SplitKind::Boundary,
                    t: None,
                    bary: [1.0 / 3.0; 3],
                });
            }
            let [t1, t2] = [face.tets()[0], face.tets()[1]];
            let plane: Plane = tri.plane()?;
            let (point, t) =
                segment_plane_intersection(geoms[t1].incenter, geoms[t2].incenter, &plane)?;
            let bary = barycentric_in_triangle(point, &tri)?;
            if bary.iter().any(|&l| l <= -INSIDE_TOL) {
                return Err(Error::SplitPointOutsideFace { face: key, bary });
            }
            Ok(SplitPointInfo {
                key,
                point,
                kind: SplitKind::Interior,
                t: Some(t),
                bary: bary.map(|l| l.max(0.0)),
            })
        })
        .collect()
}

/// One level of Worsey-Farin refinement.
pub fn worsey_farin(mesh: &TetMesh) -> Result<RefinementOutput> {
    let faces = build_face_table(mesh)?;
    let geoms = tet_geometries(mesh)?;
    let split_points = compute_split_points(mesh, &faces, &geoms)?;

    let nv = mesh.num_vertices();
    let nt = mesh.num_tets();
    let mut vertices = Vec::with_capacity(nv + nt + split_points.len());
    vertices.extend_from_slice(&mesh.vertices);
    vertices.extend(geoms.iter().map(|g| g.incenter));
    vertices.extend(split_points.iter().map(|s| s.point));
    let split_base = nv + nt;

    let mut tets = Vec::with_capacity(12 * nt);
    let mut parent_of = Vec::with_capacity(12 * nt);
    for (t, tet) in mesh.tets.iter().enumerate() {
        let center = nv + t;
        for f in 0..4 {
            let face_id = faces.face_of(t, f);
            let split = split_base + face_id;
            let tri = tet_face(tet, f);
            for e in 0..3 {
                let (a, b) = (tri[e], tri[(e + 1) % 3]);
                let mut child = [a, b, split, center];
                let [p, q, r, s] = child.map(|i| vertices[i]);
                if signed_volume(p, q, r, s) < 0.0 {
                    child.swap(2, 3);
                }
                tets.push(child);
                parent_of.push(ChildProvenance {
                    parent: t,
                    face: faces.face(face_id).key,
                    edge: [a.min(b), a.max(b)],
                });
            }
        }
    }

    let root_parent = parent_of.iter().map(|p| p.parent).collect();
    Ok(RefinementOutput {
        refined: TetMesh::new(vertices, tets),
        split_points,
        incenters: (nv..nv + nt).collect(),
        parent_of,
        root_parent,
        levels: 1,
        faces,
        parent_geometry: geoms,
    })
}

/// Apply [`worsey_farin`] `k` times; `root_parent` tracks the original tet.
pub fn refine_k(mesh: &TetMesh, k: usize) -> Result<RefinementOutput> {
    if k == 0 {
        return Err(Error::InvalidParameter("refinement levels must be at least 1".into()));
    }
    let mut out = worsey_farin(mesh)?;
    for level in 2..=k {
        let next = worsey_farin(&out.refined)?;
        let root_parent = next.parent_of.iter().map(|p| out.root_parent[p.parent]).collect();
        out = RefinementOutput {
            root_parent,
            levels: level,
            ..next
        };
    }
    Ok(out)
}

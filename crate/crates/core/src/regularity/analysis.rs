use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::dist_to_triangle_boundary;
use crate::mesh::TetMesh;
use crate::refine::{compute_split_points, tet_geometries};
use crate::mesh::build_face_table;

/// Element-quality summary of a mesh.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeshAnalysis {
    pub num_vertices: usize,
    pub num_tets: usize,
    pub num_interior_faces: usize,
    pub num_boundary_faces: usize,
    pub c0: f64,
    pub worst_tet: usize,
    pub min_ratio: f64,
    pub min_dihedral: f64,
    pub max_dihedral: f64,
    /// Smallest `dist(z_{T,F}, boundary of F)` over all tets and faces.
    pub min_touch_distance: f64,
    /// Smallest `dist(m_F, boundary of F)` over all split points.
    pub min_split_distance: f64,
    pub total_volume: f64,
}

pub fn analyze_mesh(mesh: &TetMesh) -> Result<MeshAnalysis> {
    if mesh.is_empty() {
        return Err(Error::EmptyMesh);
    }
    let faces = build_face_table(mesh)?;
    let geoms = tet_geometries(mesh)?;
    let mut c0 = 0.0;
    let mut worst_tet = 0;
    let mut min_ratio = f64::INFINITY;
    let mut min_dihedral = f64::INFINITY;
    let mut max_dihedral: f64 = 0.0;
    let mut min_touch_distance = f64::INFINITY;
    for (t, g) in geoms.iter().enumerate() {
        let r = g.shape_ratio();
        if r > c0 {
            c0 = r;
            worst_tet = t;
        }
        min_ratio = min_ratio.min(r);
        for &a in &g.dihedral_angles {
            min_dihedral = min_dihedral.min(a);
            max_dihedral = max_dihedral.max(a);
        }
        for f in 0..4 {
            let d = dist_to_triangle_boundary(g.face_touch_points[f], &g.face(f))
                .map_err(|e| Error::tet(t, e))?;
            min_touch_distance = min_touch_distance.min(d);
        }
    }
    let splits = compute_split_points(mesh, &faces, &geoms)?;
    let mut min_split_distance = f64::INFINITY;
    for s in &splits {
        let tri = crate::geometry::Triangle3::new(
            mesh.vertices[s.key[0]],
            mesh.vertices[s.key[1]],
            mesh.vertices[s.key[2]],
        );
        min_split_distance = min_split_distance.min(dist_to_triangle_boundary(s.point, &tri)?);
    }
    Ok(MeshAnalysis {
        num_vertices: mesh.num_vertices(),
        num_tets: mesh.num_tets(),
        num_interior_faces: faces.num_interior(),
        num_boundary_faces: faces.num_boundary(),
        c0,
        worst_tet,
        min_ratio,
        min_dihedral,
        max_dihedral,
        min_touch_distance,
        min_split_distance,
        total_volume: mesh.total_volume(),
    })
}

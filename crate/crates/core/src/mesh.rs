//! Tetrahedral mesh data model, face adjacency and validation.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{
    barycentric_in_triangle, signed_volume, tet_diameter, Point3, Triangle3, DEGENERACY_REL,
    IN_PLANE_REL, TET_FACES,
};

/// A vertex list plus tetrahedron connectivity (0-based indices).
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TetMesh {
    pub vertices: Vec<Point3>,
    pub tets: Vec<[usize; 4]>,
}

impl TetMesh {
    pub fn new(vertices: Vec<Point3>, tets: Vec<[usize; 4]>) -> Self {
        TetMesh { vertices, tets }
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_tets(&self) -> usize {
        self.tets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tets.is_empty()
    }

    pub fn tet_points(&self, t: usize) -> [Point3; 4] {
        self.tets[t].map(|i| self.vertices[i])
    }

    pub fn signed_volume(&self, t: usize) -> f64 {
        let [a, b, c, d] = self.tet_points(t);
        signed_volume(a, b, c, d)
    }

    pub fn total_volume(&self) -> f64 {
        (0..self.tets.len()).map(|t| self.signed_volume(t).abs()).sum()
    }

    /// First out-of-range or repeated index, as an error.
    pub fn check_indices(&self) -> Result<()> {
        let n = self.vertices.len();
        for (t, tet) in self.tets.iter().enumerate() {
            if let Some(&index) = tet.iter().find(|&&i| i >= n) {
                return Err(Error::IndexOutOfRange {
                    tet: t,
                    index,
                    vertex_count: n,
                });
            }
            if has_repeat(tet) {
                return Err(Error::RepeatedVertex {
                    tet: t,
                    vertices: *tet,
                });
            }
        }
        Ok(())
    }

    /// Swap the last two indices of every negatively oriented tet.
    /// Returns the indices of the tets that were flipped.
    pub fn canonicalize_orientation(&mut self) -> Vec<usize> {
        let mut fixed = Vec::new();
        for t in 0..self.tets.len() {
            if self.signed_volume(t) < 0.0 {
                self.tets[t].swap(2, 3);
                fixed.push(t);
            }
        }
        fixed
    }
}

fn has_repeat(tet: &[usize; 4]) -> bool {
    (0..4).any(|i| (i + 1..4).any(|j| tet[i] == tet[j]))
}

pub(crate) fn sorted3(mut k: [usize; 3]) -> [usize; 3] {
    if k[0] > k[1] {
        k.swap(0, 1);
    }
    if k[1] > k[2] {
        k.swap(1, 2);
    }
    if k[0] > k[1] {
        k.swap(0, 1);
    }
    k
}

/// Global vertex triple of local face `f` of `tet`, in outward corner order.
pub fn tet_face(tet: &[usize; 4], f: usize) -> [usize; 3] {
    TET_FACES[f].map(|k| tet[k])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FaceRecord {
    /// Sorted global vertex triple.
    pub key: [usize; 3],
    count: u8,
    tets: [usize; 2],
    local: [u8; 2],
}

impl FaceRecord {
    pub fn is_boundary(&self) -> bool {
        self.count == 1
    }

    pub fn is_interior(&self) -> bool {
        self.count == 2
    }

    /// The one or two incident tets, in increasing index order.
    pub fn tets(&self) -> &[usize] {
        &self.tets[..self.count as usize]
    }

    /// Local face id within each incident tet, parallel to [`Self::tets`].
    pub fn local_faces(&self) -> impl Iterator<Item = usize> + '_ {
        self.local[..self.count as usize].iter().map(|&l| l as usize)
    }
}

/// Face adjacency of a mesh: every distinct vertex triple, sorted by key.
#[derive(Debug, Clone, PartialEq)]
pub struct FaceTable {
    faces: Vec<FaceRecord>,
    tet_faces: Vec<[usize; 4]>,
}

impl FaceTable {
    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn faces(&self) -> &[FaceRecord] {
        &self.faces
    }

    pub fn face(&self, id: usize) -> &FaceRecord {
        &self.faces[id]
    }

    /// Face id of local face `f` of tet `t`.
    pub fn face_of(&self, t: usize, f: usize) -> usize {
        self.tet_faces[t][f]
    }

    /// Face id for an arbitrary ordering of a vertex triple.
    pub fn lookup(&self, triple: [usize; 3]) -> Option<usize> {
        let key = sorted3(triple);
        self.faces.binary_search_by(|r| r.key.cmp(&key)).ok()
    }

    pub fn num_boundary(&self) -> usize {
        self.faces.iter().filter(|f| f.is_boundary()).count()
    }

    pub fn num_interior(&self) -> usize {
        self.faces.iter().filter(|f| f.is_interior()).count()
    }
}

/// Collect all faces, failing on bad indices or faces shared by 3+ tets.
pub fn build_face_table(mesh: &TetMesh) -> Result<FaceTable> {
    mesh.check_indices()?;
    let (faces, tet_faces, overfull) = collect_faces(mesh);
    if let Some((key, count)) = overfull.into_iter().next() {
        return Err(Error::NonManifold { face: key, count });
    }
    Ok(FaceTable { faces, tet_faces })
}

type FaceCollection = (Vec<FaceRecord>, Vec<[usize; 4]>, Vec<([usize; 3], usize)>);

fn collect_faces(mesh: &TetMesh) -> FaceCollection {
    let mut entries: Vec<([usize; 3], usize)> = Vec::with_capacity(4 * mesh.tets.len());
    for (t, tet) in mesh.tets.iter().enumerate() {
        for f in 0..4 {
            entries.push((sorted3(tet_face(tet, f)), 4 * t + f));
        }
    }
    entries.sort_unstable();

    let mut faces = Vec::with_capacity(entries.len() / 2 + 1);
    let mut tet_faces = vec![[usize::MAX; 4]; mesh.tets.len()];
    let mut overfull = Vec::new();
    let mut i = 0;
    while i < entries.len() {
        let key = entries[i].0;
        let mut j = i;
        while j < entries.len() && entries[j].0 == key {
            j += 1;
        }
        let id = faces.len();
        let mut record = FaceRecord {
            key,
            count: 0,
            tets: [usize::MAX; 2],
            local: [0; 2],
        };
        for (slot, &(_, code)) in entries[i..j].iter().enumerate() {
            let (t, f) = (code / 4, code % 4);
            tet_faces[t][f] = id;
            if slot < 2 {
                record.tets[slot] = t;
                record.local[slot] = f as u8;
            }
        }
        record.count = (j - i).min(2) as u8;
        if j - i > 2 {
            overfull.push((key, j - i));
        }
        faces.push(record);
        i = j;
    }
    (faces, tet_faces, overfull)
}

/// Outcome of [`validate`]. Orientation fixes are informational; every other
/// list being empty means the mesh is a valid conforming complex.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct ValidationReport {
    pub num_vertices: usize,
    pub num_tets: usize,
    pub num_interior_faces: usize,
    pub num_boundary_faces: usize,
    /// Tets that canonicalization would flip (negative signed volume).
    pub orientation_fixes: Vec<usize>,
    pub index_errors: Vec<usize>,
    pub repeated_vertices: Vec<usize>,
    pub degenerate: Vec<usize>,
    pub non_manifold_faces: Vec<[usize; 3]>,
    /// Interior faces whose two tets lie on the same side of the face.
    pub folded_faces: Vec<[usize; 3]>,
    /// A vertex lying on a boundary face it does not belong to.
    pub hanging_nodes: Vec<(usize, [usize; 3])>,
}

impl ValidationReport {
    pub fn is_conforming(&self) -> bool {
        self.non_manifold_faces.is_empty() && self.hanging_nodes.is_empty()
    }

    pub fn is_valid(&self) -> bool {
        self.index_errors.is_empty()
            && self.repeated_vertices.is_empty()
            && self.degenerate.is_empty()
            && self.folded_faces.is_empty()
            && self.is_conforming()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} vertices, {} tets, {} interior + {} boundary faces",
            self.num_vertices, self.num_tets, self.num_interior_faces, self.num_boundary_faces
        )?;
        let problems = [
            ("orientation fixes", self.orientation_fixes.len()),
            ("index errors", self.index_errors.len()),
            ("repeated vertices", self.repeated_vertices.len()),
            ("degenerate tets", self.degenerate.len()),
            ("non-manifold faces", self.non_manifold_faces.len()),
            ("folded faces", self.folded_faces.len()),
            ("hanging nodes", self.hanging_nodes.len()),
        ];
        for (name, n) in problems {
            if n > 0 {
                write!(f, "; {n} {name}")?;
            }
        }
        Ok(())
    }
}

/// Check indices, orientation, degeneracy and conformity without modifying
/// the mesh.
pub fn validate(mesh: &TetMesh) -> ValidationReport {
    let mut report = ValidationReport {
        num_vertices: mesh.vertices.len(),
        num_tets: mesh.tets.len(),
        ..Default::default()
    };
    let n = mesh.vertices.len();
    for (t, tet) in mesh.tets.iter().enumerate() {
        if tet.iter().any(|&i| i >= n) {
            report.index_errors.push(t);
        } else if has_repeat(tet) {
            report.repeated_vertices.push(t);
        }
    }
    if !report.index_errors.is_empty() || !report.repeated_vertices.is_empty() {
        return report;
    }

    for t in 0..mesh.tets.len() {
        let p = mesh.tet_points(t);
        let vol = signed_volume(p[0], p[1], p[2], p[3]);
        if !(vol.abs() > DEGENERACY_REL * tet_diameter(&p).powi(3)) {
            report.degenerate.push(t);
        } else if vol < 0.0 {
            report.orientation_fixes.push(t);
        }
    }

    let (faces, _, overfull) = collect_faces(mesh);
    report.non_manifold_faces = overfull.into_iter().map(|(k, _)| k).collect();
    report.num_interior_faces = faces.iter().filter(|f| f.is_interior()).count();
    report.num_boundary_faces = faces.iter().filter(|f| f.is_boundary()).count();

    for face in faces.iter().filter(|f| f.is_interior()) {
        let [a, b, c] = face.key.map(|i| mesh.vertices[i]);
        let sides = face.tets().iter().map(|&t| {
            let apex = opposite_vertex(&mesh.tets[t], &face.key);
            signed_volume(a, b, c, mesh.vertices[apex])
        });
        let [s1, s2]: [f64; 2] = sides.collect::<Vec<_>>().try_into().unwrap();
        if !(s1 * s2 < 0.0) {
            report.folded_faces.push(face.key);
        }
    }

    let boundary: Vec<[usize; 3]> = faces
        .iter()
        .filter(|f| f.is_boundary())
        .map(|f| f.key)
        .collect();
    report.hanging_nodes = find_hanging_nodes(mesh, &boundary);
    report
}

fn opposite_vertex(tet: &[usize; 4], key: &[usize; 3]) -> usize {
    *tet.iter().find(|v| !key.contains(v)).unwrap()
}

/// Boundary vertices lying (within tolerance) on boundary faces they are not
/// part of. Uses a uniform hash grid sized by the mean face extent.
fn find_hanging_nodes(mesh: &TetMesh, boundary: &[[usize; 3]]) -> Vec<(usize, [usize; 3])> {
    if boundary.is_empty() {
        return Vec::new();
    }
    let bbox = |key: &[usize; 3]| {
        let pts = key.map(|i| mesh.vertices[i]);
        let lo = Point3::new(
            pts.iter().map(|p| p.x).fold(f64::INFINITY, f64::min),
            pts.iter().map(|p| p.y).fold(f64::INFINITY, f64::min),
            pts.iter().map(|p| p.z).fold(f64::INFINITY, f64::min),
        );
        let hi = Point3::new(
            pts.iter().map(|p| p.x).fold(f64::NEG_INFINITY, f64::max),
            pts.iter().map(|p| p.y).fold(f64::NEG_INFINITY, f64::max),
            pts.iter().map(|p| p.z).fold(f64::NEG_INFINITY, f64::max),
        );
        (lo, hi)
    };
    let mean_extent = boundary
        .iter()
        .map(|k| {
            let (lo, hi) = bbox(k);
            let d = hi - lo;
            d.x.max(d.y).max(d.z)
        })
        .sum::<f64>()
        / boundary.len() as f64;
    if !(mean_extent > 0.0) {
        return Vec::new();
    }
    let cell = mean_extent;
    let cell_of = |p: Point3| {
        [
            (p.x / cell).floor() as i64,
            (p.y / cell).floor() as i64,
            (p.z / cell).floor() as i64,
        ]
    };

    let boundary_vertices: HashSet<usize> = boundary.iter().flatten().copied().collect();
    let mut grid: HashMap<[i64; 3], Vec<usize>> = HashMap::new();
    let mut sorted_vertices: Vec<usize> = boundary_vertices.into_iter().collect();
    sorted_vertices.sort_unstable();
    for v in sorted_vertices {
        grid.entry(cell_of(mesh.vertices[v])).or_default().push(v);
    }

    let mut hanging = Vec::new();
    for key in boundary {
        let tri = Triangle3::new(
            mesh.vertices[key[0]],
            mesh.vertices[key[1]],
            mesh.vertices[key[2]],
        );
        let tol = IN_PLANE_REL * tri.diameter();
        let (lo, hi) = bbox(key);
        let pad = Point3::new(tol, tol, tol);
        let (c0, c1) = (cell_of(lo - pad), cell_of(hi + pad));
        for i in c0[0]..=c1[0] {
            for j in c0[1]..=c1[1] {
                for k in c0[2]..=c1[2] {
                    let Some(candidates) = grid.get(&[i, j, k]) else {
                        continue;
                    };
                    for &v in candidates {
                        if key.contains(&v) {
                            continue;
                        }
                        let p = mesh.vertices[v];
                        if let Ok(bary) = barycentric_in_triangle(p, &tri) {
                            if bary.iter().all(|&l| l >= -IN_PLANE_REL) {
                                hanging.push((v, *key));
                            }
                        }
                    }
                }
            }
        }
    }
    hanging.sort_unstable();
    hanging
}

/// A mesh that passed validation, with orientation canonicalized and the
/// face table built.
#[derive(Debug, Clone)]
pub struct PreparedMesh {
    pub mesh: TetMesh,
    pub faces: FaceTable,
    pub report: ValidationReport,
}

/// Validate, canonicalize orientation, and build the face table.
/// Fails with [`Error::Invalid`] when the report carries any failure.
pub fn prepare(mut mesh: TetMesh) -> Result<PreparedMesh> {
    if mesh.is_empty() {
        return Err(Error::EmptyMesh);
    }
    let report = validate(&mesh);
    if !report.is_valid() {
        return Err(Error::Invalid(report.to_string()));
    }
    let fixes = mesh.canonicalize_orientation();
    debug_assert_eq!(fixes, report.orientation_fixes);
    let faces = build_face_table(&mesh)?;
    Ok(PreparedMesh {
        mesh,
        faces,
        report,
    })
}

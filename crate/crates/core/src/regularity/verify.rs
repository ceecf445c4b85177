//! Executable checks of the geometric inequalities behind the refinement's
//! shape-regularity bound.
//!
//! Every check produces a signed, scale-free margin: a check passes when its
//! worst margin is `>= -tolerance` (or `> 0` for the strict height check).
//! Distance margins are divided by the relevant element diameter, volume
//! margins by its cube and area margins by its square.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{dist_to_triangle_boundary, tet_geometry_of, Point3, TetGeometry, Triangle3};
use crate::mesh::{prepare, FaceTable, TetMesh};
use crate::refine::{worsey_farin, RefinementOutput, SplitKind, SplitPointInfo};

use super::constants::{theoretical_constants, TheoreticalConstants};

pub const TOL_PROP21: f64 = 1e-10;
pub const TOL_DIST_FACE: f64 = 1e-12;
pub const TOL_COS: f64 = 1e-12;
pub const TOL_FACE: f64 = 1e-10;
pub const TOL_REFINED: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckId {
    Prop21,
    Prop22,
    LemmaDistFace,
    LemmaCos,
    Prop32,
    Lemma33,
    Thm31,
    VolK,
    AreaF,
}

impl CheckId {
    pub const ALL: [CheckId; 9] = [
        CheckId::Prop21,
        CheckId::Prop22,
        CheckId::LemmaDistFace,
        CheckId::LemmaCos,
        CheckId::Prop32,
        CheckId::Lemma33,
        CheckId::Thm31,
        CheckId::VolK,
        CheckId::AreaF,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckId::Prop21 => "prop21",
            CheckId::Prop22 => "prop22",
            CheckId::LemmaDistFace => "lemma_dist_face",
            CheckId::LemmaCos => "lemma_cos",
            CheckId::Prop32 => "prop32",
            CheckId::Lemma33 => "lemma33",
            CheckId::Thm31 => "thm31",
            CheckId::VolK => "volK",
            CheckId::AreaF => "areaF",
        }
    }

    /// Only the vertex-height check is strict.
    pub fn is_strict(self) -> bool {
        self == CheckId::Prop22
    }

    pub fn default_tolerance(self) -> f64 {
        match self {
            CheckId::Prop21 => TOL_PROP21,
            CheckId::Prop22 => 0.0,
            CheckId::LemmaDistFace => TOL_DIST_FACE,
            CheckId::LemmaCos => TOL_COS,
            CheckId::Prop32 | CheckId::Lemma33 => TOL_FACE,
            CheckId::Thm31 | CheckId::VolK | CheckId::AreaF => TOL_REFINED,
        }
    }

    /// What the element id in a check record refers to.
    pub fn element_kind(self) -> &'static str {
        match self {
            CheckId::Prop21 | CheckId::Prop22 | CheckId::LemmaDistFace | CheckId::LemmaCos => "tet",
            CheckId::Prop32 | CheckId::Lemma33 => "face",
            CheckId::Thm31 | CheckId::VolK | CheckId::AreaF => "child",
        }
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Running minimum of a margin, keeping the lowest element id on ties.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Worst {
    pub margin: f64,
    pub id: Option<usize>,
}

impl Default for Worst {
    fn default() -> Self {
        Worst {
            margin: f64::INFINITY,
            id: None,
        }
    }
}

impl Worst {
    pub fn update(&mut self, margin: f64, id: usize) {
        let worse = margin < self.margin || (margin.is_nan() && !self.margin.is_nan());
        if self.id.is_none() || worse {
            self.margin = margin;
            self.id = Some(id);
        }
    }
}

/// `-max_F |2 dist(z_T, plane(F)) - rho_T| / rho_T`: the insphere diameter
/// from the volume/area formula against the incenter's face distances.
pub fn verify_prop21(g: &TetGeometry) -> f64 {
    let rho = g.insphere_diameter;
    let worst = (0..4)
        .map(|i| match g.face(i).plane() {
            Ok(plane) => (2.0 * plane.signed_distance(g.incenter).abs() - rho).abs() / rho,
            Err(_) => f64::INFINITY,
        })
        .fold(0.0, f64::max);
    -worst
}

fn vertex_height(g: &TetGeometry, i: usize) -> f64 {
    match g.face(i).plane() {
        Ok(plane) => plane.signed_distance(g.vertices[i]).abs(),
        Err(_) => 0.0,
    }
}

/// `min_x (dist(x, P_x) - rho_T) / rho_T` over the four vertices.
pub fn verify_prop22(g: &TetGeometry) -> f64 {
    (0..4)
        .map(|i| (vertex_height(g, i) - g.insphere_diameter) / g.insphere_diameter)
        .fold(f64::INFINITY, f64::min)
}

/// `min_x (dist(x, P_x) - dist(a, P_x)) / h_T` for a point `a`; positive for
/// every point strictly inside the tet.
pub fn prop22_interior_margin(g: &TetGeometry, a: Point3) -> f64 {
    (0..4)
        .map(|i| {
            let d_a = g.face(i).plane().map_or(f64::NAN, |p| p.signed_distance(a).abs());
            (vertex_height(g, i) - d_a) / g.diameter
        })
        .fold(f64::INFINITY, f64::min)
}

/// The two sides of the touch-point distance bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DistFaceSides {
    /// `min_F dist(z_{T,F}, boundary of F)`.
    pub lhs: f64,
    /// `min_e (rho_T / 2) sqrt((1 + cos a_e) / (1 - cos a_e))`.
    pub rhs: f64,
}

pub fn dist_face_sides(g: &TetGeometry) -> Result<DistFaceSides> {
    let mut lhs = f64::INFINITY;
    for i in 0..4 {
        lhs = lhs.min(dist_to_triangle_boundary(g.face_touch_points[i], &g.face(i))?);
    }
    let rhs = g
        .dihedral_cos
        .iter()
        .map(|&c| 0.5 * g.insphere_diameter * ((1.0 + c) / (1.0 - c)).sqrt())
        .fold(f64::INFINITY, f64::min);
    Ok(DistFaceSides { lhs, rhs })
}

/// `(lhs - rhs) / h_T` of [`dist_face_sides`].
pub fn verify_lemma_dist_face(g: &TetGeometry) -> Result<f64> {
    let s = dist_face_sides(g)?;
    Ok((s.lhs - s.rhs) / g.diameter)
}

/// `min_e (sin a_e - rho_T / h_T)`: every dihedral angle is bounded away
/// from 0 and pi by the tet's own shape ratio.
pub fn verify_lemma_cos(g: &TetGeometry) -> f64 {
    let ratio = g.insphere_diameter / g.diameter;
    g.dihedral_angles
        .iter()
        .map(|a| a.sin() - ratio)
        .fold(f64::INFINITY, f64::min)
}

/// `sqrt(1 - c0^-2) - max_e |cos a_e|`, the mesh-level form of the bound.
pub fn verify_lemma_cos_global(g: &TetGeometry, c0: f64) -> f64 {
    let bound = (1.0 - 1.0 / (c0 * c0)).sqrt();
    bound - g.dihedral_cos.iter().map(|c| c.abs()).fold(0.0, f64::max)
}

/// Split-point margins of one face.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FaceMargins {
    pub face: usize,
    pub kind: SplitKind,
    /// `dist(m_F, boundary of F)`, unnormalized.
    pub split_distance: f64,
    /// Interior faces: distance of `m_F` from the segment between the two
    /// incenter projections, over `h`.
    pub collinearity_residual: Option<f64>,
    /// Interior faces: `m_F = theta z_{1,0} + (1 - theta) z_{2,0}`.
    pub theta: Option<f64>,
    /// Interior faces: smallest barycentric coordinate of the two incenter
    /// projections (positive means strictly inside the face).
    pub projection_bary_min: Option<f64>,
    /// Interior faces: `(dist(m_F) - min_i dist(z_{i,0})) / h`.
    pub distance_margin: Option<f64>,
    /// `(dist(m_F) - c2 min_{T containing F} h_T) / min h_T`.
    pub lemma33_margin: f64,
}

impl FaceMargins {
    /// Combined margin of the betweenness and distance statements, `None`
    /// for boundary faces.
    pub fn prop32_margin(&self) -> Option<f64> {
        let theta = self.theta?;
        Some(
            [
                -self.collinearity_residual?,
                theta,
                1.0 - theta,
                self.projection_bary_min?,
                self.distance_margin?,
            ]
            .into_iter()
            .fold(f64::INFINITY, f64::min),
        )
    }
}

pub fn verify_prop32_lemma33(
    mesh: &TetMesh,
    faces: &FaceTable,
    splits: &[SplitPointInfo],
    geoms: &[TetGeometry],
    c2: f64,
) -> Result<Vec<FaceMargins>> {
    faces
        .faces()
        .iter()
        .zip(splits)
        .enumerate()
        .map(|(id, (face, split))| {
            let tri = Triangle3::new(
                mesh.vertices[face.key[0]],
                mesh.vertices[face.key[1]],
                mesh.vertices[face.key[2]],
            );
            let split_distance = dist_to_triangle_boundary(split.point, &tri)?;
            let hs: Vec<f64> = face.tets().iter().map(|&t| geoms[t].diameter).collect();
            let h_min = hs.iter().copied().fold(f64::INFINITY, f64::min);
            let h_max = hs.iter().copied().fold(0.0, f64::max);
            let lemma33_margin = (split_distance - c2 * h_min) / h_min;

            let mut margins = FaceMargins {
                face: id,
                kind: split.kind,
                split_distance,
                collinearity_residual: None,
                theta: None,
                projection_bary_min: None,
                distance_margin: None,
                lemma33_margin,
            };
            if face.is_interior() {
                let projections: Vec<Point3> = face
                    .tets()
                    .iter()
                    .zip(face.local_faces())
                    .map(|(&t, f)| geoms[t].face_touch_points[f])
                    .collect();
                let (z1, z2) = (projections[0], projections[1]);
                let mut bary_min = f64::INFINITY;
                let mut proj_dist = f64::INFINITY;
                for &z in &projections {
                    let bary = crate::geometry::barycentric_in_triangle(z, &tri)?;
                    bary_min = bary.iter().copied().fold(bary_min, f64::min);
                    proj_dist = proj_dist.min(dist_to_triangle_boundary(z, &tri)?);
                }
                let d = z1 - z2;
                // Coincident projections (mirror-symmetric neighbours) leave
                // theta undetermined; any value in [0, 1] works.
                let theta = if d.norm() > 1e-12 * h_max {
                    (split.point - z2).dot(d) / d.norm_squared()
                } else {
                    0.5
                };
                let on_segment = z2 + d * theta;
                margins.collinearity_residual = Some(split.point.distance(on_segment) / h_max);
                margins.theta = Some(theta);
                margins.projection_bary_min = Some(bary_min);
                margins.distance_margin = Some((split_distance - proj_dist) / h_max);
            }
            Ok(margins)
        })
        .collect()
}

/// Refined-mesh bound and the two per-child inequalities used to derive it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Theorem31Check {
    pub constants: TheoreticalConstants,
    /// `max_K h_K / rho_K` over all children.
    pub observed: f64,
    pub worst_child: usize,
    /// `c1` of the parent mesh.
    pub bound: f64,
    /// `bound / observed`.
    pub slack: f64,
    pub num_children: usize,
    /// Worst `(|K| - (c2 / 12) rho_T^3) / h_T^3`.
    pub vol_k: Worst,
    /// Worst `(pi h_K^2 - sum_F |F|) / h_K^2`.
    pub area_f: Worst,
}

impl Theorem31Check {
    pub fn margin(&self) -> f64 {
        (self.bound - self.observed) / self.bound
    }

    pub fn holds(&self) -> bool {
        self.observed <= self.bound
    }
}

/// Refine `mesh` and check the refined shape constant against `c1(c0)`.
pub fn verify_theorem31(mesh: &TetMesh) -> Result<Theorem31Check> {
    let out = worsey_farin(mesh)?;
    let c0 = out
        .parent_geometry
        .iter()
        .map(|g| g.shape_ratio())
        .fold(0.0, f64::max);
    theorem31_from_refinement(&out, &theoretical_constants(c0)?)
}

pub fn theorem31_from_refinement(
    out: &RefinementOutput,
    constants: &TheoreticalConstants,
) -> Result<Theorem31Check> {
    let mut observed = Worst {
        margin: f64::NEG_INFINITY,
        id: None,
    };
    let mut vol_k = Worst::default();
    let mut area_f = Worst::default();
    for (c, prov) in out.parent_of.iter().enumerate() {
        let child = tet_geometry_of(&out.refined.tet_points(c)).map_err(|e| Error::tet(c, e))?;
        let ratio = child.shape_ratio();
        if observed.id.is_none() || ratio > observed.margin {
            observed = Worst {
                margin: ratio,
                id: Some(c),
            };
        }
        let parent = &out.parent_geometry[prov.parent];
        let vol_bound = constants.c2 / 12.0 * parent.insphere_diameter.powi(3);
        vol_k.update((child.volume - vol_bound) / parent.diameter.powi(3), c);
        let h2 = child.diameter * child.diameter;
        let area_sum: f64 = child.face_areas.iter().sum();
        area_f.update((std::f64::consts::PI * h2 - area_sum) / h2, c);
    }
    let worst_child = observed.id.ok_or(Error::EmptyMesh)?;
    Ok(Theorem31Check {
        constants: *constants,
        observed: observed.margin,
        worst_child,
        bound: constants.c1,
        slack: constants.c1 / observed.margin,
        num_children: out.parent_of.len(),
        vol_k,
        area_f,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CheckRecord {
    pub id: CheckId,
    pub passed: bool,
    pub worst_margin: f64,
    pub worst_element: Option<usize>,
    pub tolerance: f64,
}

impl CheckRecord {
    fn new(id: CheckId, worst: Worst, tolerance: Option<f64>) -> Self {
        let tolerance = if id.is_strict() {
            0.0
        } else {
            tolerance.unwrap_or(id.default_tolerance())
        };
        let passed = if id.is_strict() {
            worst.margin > 0.0
        } else {
            worst.margin >= -tolerance
        };
        CheckRecord {
            id,
            passed,
            worst_margin: worst.margin,
            worst_element: worst.id,
            tolerance,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeshSummary {
    pub num_tets: usize,
    pub num_faces: usize,
    pub c0: f64,
    pub min_dihedral: f64,
    pub max_dihedral: f64,
    pub min_split_distance: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RefinedSummary {
    pub num_children: usize,
    pub observed_wf_ratio: f64,
    pub c1_bound: f64,
    pub slack: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    #[serde(flatten)]
    pub mesh: MeshSummary,
    #[serde(flatten)]
    pub refined: RefinedSummary,
    pub constants: TheoreticalConstants,
    pub checks: Vec<CheckRecord>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, id: CheckId) -> &CheckRecord {
        self.checks.iter().find(|c| c.id == id).expect("every check is recorded")
    }

    pub fn failed(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Run all nine checks on `mesh` and its Worsey-Farin refinement.
///
/// `tolerance` overrides every non-strict check's default tolerance.
pub fn verify_mesh(mesh: &TetMesh, tolerance: Option<f64>) -> Result<VerificationReport> {
    let prepared = prepare(mesh.clone())?;
    let mesh = &prepared.mesh;
    let out = worsey_farin(mesh)?;
    let geoms = &out.parent_geometry;

    let c0 = geoms.iter().map(|g| g.shape_ratio()).fold(0.0, f64::max);
    let constants = theoretical_constants(c0)?;

    let mut prop21 = Worst::default();
    let mut prop22 = Worst::default();
    let mut dist_face = Worst::default();
    let mut cos = Worst::default();
    let mut min_dihedral = f64::INFINITY;
    let mut max_dihedral: f64 = 0.0;
    for (t, g) in geoms.iter().enumerate() {
        prop21.update(verify_prop21(g), t);
        prop22.update(verify_prop22(g), t);
        dist_face.update(verify_lemma_dist_face(g).unwrap_or(f64::NAN), t);
        cos.update(
            verify_lemma_cos(g).min(verify_lemma_cos_global(g, c0)),
            t,
        );
        for &a in &g.dihedral_angles {
            min_dihedral = min_dihedral.min(a);
            max_dihedral = max_dihedral.max(a);
        }
    }

    let face_margins = verify_prop32_lemma33(mesh, &out.faces, &out.split_points, geoms, constants.c2)?;
    let mut prop32 = Worst::default();
    let mut lemma33 = Worst::default();
    let mut min_split_distance = f64::INFINITY;
    for fm in &face_margins {
        if let Some(m) = fm.prop32_margin() {
            prop32.update(m, fm.face);
        }
        lemma33.update(fm.lemma33_margin, fm.face);
        min_split_distance = min_split_distance.min(fm.split_distance);
    }
    if prop32.id.is_none() {
        // No interior faces: the statement holds vacuously.
        prop32.margin = 0.0;
    }

    let thm = theorem31_from_refinement(&out, &constants)?;
    let thm_worst = Worst {
        margin: thm.margin(),
        id: Some(thm.worst_child),
    };

    let checks = vec![
        CheckRecord::new(CheckId::Prop21, prop21, tolerance),
        CheckRecord::new(CheckId::Prop22, prop22, tolerance),
        CheckRecord::new(CheckId::LemmaDistFace, dist_face, tolerance),
        CheckRecord::new(CheckId::LemmaCos, cos, tolerance),
        CheckRecord::new(CheckId::Prop32, prop32, tolerance),
        CheckRecord::new(CheckId::Lemma33, lemma33, tolerance),
        CheckRecord::new(CheckId::Thm31, thm_worst, tolerance),
        CheckRecord::new(CheckId::VolK, thm.vol_k, tolerance),
        CheckRecord::new(CheckId::AreaF, thm.area_f, tolerance),
    ];
    Ok(VerificationReport {
        mesh: MeshSummary {
            num_tets: mesh.num_tets(),
            num_faces: out.faces.len(),
            c0,
            min_dihedral,
            max_dihedral,
            min_split_distance,
        },
        refined: RefinedSummary {
            num_children: thm.num_children,
            observed_wf_ratio: thm.observed,
            c1_bound: thm.bound,
            slack: thm.slack,
        },
        constants,
        checks,
    })
}

//! Floating-point primitives for points, planes, triangles and tetrahedra.
//!
//! Everything here is plain `f64` arithmetic. The tolerances below are the
//! only places where a numerical threshold enters the geometric layer.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Index, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::GeometryError;

/// A tetrahedron is rejected when `|volume| <= DEGENERACY_REL * h^3`.
pub const DEGENERACY_REL: f64 = 1e-14;

/// A point counts as lying in a triangle's plane when its distance to the
/// plane is at most `IN_PLANE_REL` times the triangle diameter.
pub const IN_PLANE_REL: f64 = 1e-9;

/// Barycentric slack accepted by the point-in-triangle tests.
pub const INSIDE_TOL: f64 = 1e-12;

/// Endpoints closer than this (relative to the segment length) to a plane
/// are treated as lying on it.
pub const ON_PLANE_REL: f64 = 1e-12;

/// The six edges of a tetrahedron as pairs of local vertex ids.
pub const TET_EDGES: [[usize; 2]; 6] = [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]];

/// Local face `i` is the face opposite local vertex `i`. The corner order
/// gives an outward normal `(b - a) x (c - a)` for a positively oriented tet.
pub const TET_FACES: [[usize; 3]; 4] = [[1, 2, 3], [0, 3, 2], [0, 1, 3], [0, 2, 1]];

/// The two local faces meeting at a local edge `[i, j]` are the faces
/// opposite the two vertices not on the edge.
pub fn faces_at_edge(edge: [usize; 2]) -> [usize; 2] {
    let mut out = [0; 2];
    let mut k = 0;
    for v in 0..4 {
        if v != edge[0] && v != edge[1] {
            out[k] = v;
            k += 1;
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Point3 {
    pub const ORIGIN: Point3 = Point3 {
        x: 0.0,
        y: 0.0,
        z: 0.0,
    };

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Point3 { x, y, z }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn dot(self, other: Point3) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn cross(self, other: Point3) -> Point3 {
        Point3::new(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )
    }

    pub fn norm_squared(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.norm_squared().sqrt()
    }

    pub fn distance(self, other: Point3) -> f64 {
        (self - other).norm()
    }

    /// Unit vector in the same direction, or `None` for the zero vector.
    pub fn normalized(self) -> Option<Point3> {
        let n = self.norm();
        (n > 0.0 && n.is_finite()).then(|| self / n)
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    /// Affine combination `(1 - t) * self + t * other`.
    pub fn lerp(self, other: Point3, t: f64) -> Point3 {
        self + (other - self) * t
    }
}

impl From<[f64; 3]> for Point3 {
    fn from(a: [f64; 3]) -> Self {
        Point3::new(a[0], a[1], a[2])
    }
}

impl fmt::Display for Point3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

impl Add for Point3 {
    type Output = Point3;
    fn add(self, o: Point3) -> Point3 {
        Point3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl AddAssign for Point3 {
    fn add_assign(&mut self, o: Point3) {
        *self = *self + o;
    }
}

impl Sub for Point3 {
    type Output = Point3;
    fn sub(self, o: Point3) -> Point3 {
        Point3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Mul<f64> for Point3 {
    type Output = Point3;
    fn mul(self, s: f64) -> Point3 {
        Point3::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Div<f64> for Point3 {
    type Output = Point3;
    fn div(self, s: f64) -> Point3 {
        Point3::new(self.x / s, self.y / s, self.z / s)
    }
}

impl Neg for Point3 {
    type Output = Point3;
    fn neg(self) -> Point3 {
        Point3::new(-self.x, -self.y, -self.z)
    }
}

/// An oriented plane `{x : normal . x = offset}` with a unit normal.
///
/// `offset` is the signed distance from the origin to the plane, measured
/// along `normal`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Plane {
    pub normal: Point3,
    pub offset: f64,
}

impl Plane {
    /// Plane through `point` with the given normal; `None` for a zero normal.
    pub fn from_point_normal(point: Point3, normal: Point3) -> Option<Plane> {
        let normal = normal.normalized()?;
        Some(Plane {
            normal,
            offset: normal.dot(point),
        })
    }

    /// Plane through three points, oriented by `(b - a) x (c - a)`.
    pub fn through(a: Point3, b: Point3, c: Point3) -> Result<Plane, GeometryError> {
        Plane::from_point_normal(a, (b - a).cross(c - a)).ok_or(GeometryError::DegenerateTriangle)
    }

    pub fn signed_distance(&self, p: Point3) -> f64 {
        self.normal.dot(p) - self.offset
    }
}

/// Orthogonal projection of `p` onto the plane.
pub fn project_to_plane(p: Point3, plane: &Plane) -> Point3 {
    p - plane.normal * plane.signed_distance(p)
}

/// Distance from `p` to the infinite line through `a` and `b`.
pub fn distance_to_line(p: Point3, a: Point3, b: Point3) -> f64 {
    let dir = b - a;
    (p - a).cross(dir).norm() / dir.norm()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Triangle3 {
    pub corners: [Point3; 3],
}

impl Triangle3 {
    pub fn new(a: Point3, b: Point3, c: Point3) -> Self {
        Triangle3 {
            corners: [a, b, c],
        }
    }

    /// Twice-area vector `(b - a) x (c - a)`.
    pub fn area_vector(&self) -> Point3 {
        let [a, b, c] = self.corners;
        (b - a).cross(c - a)
    }

    pub fn centroid(&self) -> Point3 {
        let [a, b, c] = self.corners;
        (a + b + c) / 3.0
    }

    pub fn diameter(&self) -> f64 {
        let [a, b, c] = self.corners;
        a.distance(b).max(b.distance(c)).max(c.distance(a))
    }

    pub fn plane(&self) -> Result<Plane, GeometryError> {
        let [a, b, c] = self.corners;
        Plane::through(a, b, c)
    }

    /// Edge `i` joins corner `i` and corner `i + 1 (mod 3)`.
    pub fn edge(&self, i: usize) -> (Point3, Point3) {
        (self.corners[i], self.corners[(i + 1) % 3])
    }
}

impl Index<usize> for Triangle3 {
    type Output = Point3;
    fn index(&self, i: usize) -> &Point3 {
        &self.corners[i]
    }
}

/// One sixth of the scalar triple product of `(b-a, c-a, d-a)`.
pub fn signed_volume(a: Point3, b: Point3, c: Point3, d: Point3) -> f64 {
    (b - a).dot((c - a).cross(d - a)) / 6.0
}

pub fn triangle_area(t: &Triangle3) -> f64 {
    0.5 * t.area_vector().norm()
}

/// Barycentric coordinates of the in-plane projection of `p`.
pub fn barycentric_in_triangle(p: Point3, t: &Triangle3) -> Result<[f64; 3], GeometryError> {
    let [a, b, c] = t.corners;
    let n = t.area_vector();
    let nn = n.norm_squared();
    if !(nn > 0.0) {
        return Err(GeometryError::DegenerateTriangle);
    }
    let distance = n.dot(p - a) / nn.sqrt();
    let tolerance = IN_PLANE_REL * t.diameter();
    if distance.abs() > tolerance {
        return Err(GeometryError::NotInPlane {
            distance,
            tolerance,
        });
    }
    // The normal component of p cancels out of each sub-area product.
    let la = (b - p).cross(c - p).dot(n);
    let lb = (c - p).cross(a - p).dot(n);
    let lc = (a - p).cross(b - p).dot(n);
    let sum = la + lb + lc;
    Ok([la / sum, lb / sum, lc / sum])
}

/// Distance from an in-plane point inside `t` to the boundary of `t`,
/// taken as the minimum distance to the three edge-supporting lines.
pub fn dist_to_triangle_boundary(p: Point3, t: &Triangle3) -> Result<f64, GeometryError> {
    let bary = barycentric_in_triangle(p, t)?;
    if bary.iter().any(|&l| l < -INSIDE_TOL) {
        return Err(GeometryError::Outside { bary });
    }
    Ok((0..3)
        .map(|i| {
            let (a, b) = t.edge(i);
            distance_to_line(p, a, b)
        })
        .fold(f64::INFINITY, f64::min))
}

/// Crossing of the segment `[p1, p2]` with `plane`, returned as the point and
/// its parameter `t` in `p1 + t (p2 - p1)`.
pub fn segment_plane_intersection(
    p1: Point3,
    p2: Point3,
    plane: &Plane,
) -> Result<(Point3, f64), GeometryError> {
    let d1 = plane.signed_distance(p1);
    let d2 = plane.signed_distance(p2);
    let tol = ON_PLANE_REL * p1.distance(p2);
    if d1.abs() <= tol || d2.abs() <= tol || d1.signum() == d2.signum() {
        return Err(GeometryError::NoCrossing { d1, d2 });
    }
    let t = d1.abs() / (d1.abs() + d2.abs());
    Ok((p1.lerp(p2, t), t))
}

/// Derived per-tetrahedron quantities.
///
/// Face `i` is the face opposite vertex `i` (see [`TET_FACES`]); dihedral
/// angle `k` belongs to edge [`TET_EDGES`]`[k]`.
#[derive(Debug, Clone, PartialEq)]
pub struct TetGeometry {
    pub vertices: [Point3; 4],
    /// `|T|`, always positive.
    pub volume: f64,
    /// Signed volume of the vertices in the given order.
    pub signed_volume: f64,
    pub face_areas: [f64; 4],
    /// Outward unit normals of the four faces.
    pub face_normals: [Point3; 4],
    /// `h_T`, the longest edge length.
    pub diameter: f64,
    /// `rho_T = 6|T| / sum |F|`, twice the inradius.
    pub insphere_diameter: f64,
    pub incenter: Point3,
    /// Orthogonal projections of the incenter onto the four face planes.
    pub face_touch_points: [Point3; 4],
    pub dihedral_angles: [f64; 6],
    pub dihedral_cos: [f64; 6],
}

impl TetGeometry {
    pub fn face(&self, i: usize) -> Triangle3 {
        let [a, b, c] = TET_FACES[i];
        Triangle3::new(self.vertices[a], self.vertices[b], self.vertices[c])
    }

    pub fn face_plane(&self, i: usize) -> Plane {
        let [a, ..] = TET_FACES[i];
        let n = self.face_normals[i];
        Plane {
            normal: n,
            offset: n.dot(self.vertices[a]),
        }
    }

    /// `h_T / rho_T`.
    pub fn shape_ratio(&self) -> f64 {
        self.diameter / self.insphere_diameter
    }

    pub fn inradius(&self) -> f64 {
        0.5 * self.insphere_diameter
    }
}

pub fn tet_diameter(v: &[Point3; 4]) -> f64 {
    TET_EDGES
        .iter()
        .map(|&[i, j]| v[i].distance(v[j]))
        .fold(0.0, f64::max)
}

/// Compute every derived quantity of the tetrahedron `[a, b, c, d]`.
///
/// Either orientation is accepted; normals are made outward by comparison
/// with the opposite vertex.
pub fn tet_geometry(a: Point3, b: Point3, c: Point3, d: Point3) -> Result<TetGeometry, GeometryError> {
    let vertices = [a, b, c, d];
    let diameter = tet_diameter(&vertices);
    let signed = signed_volume(a, b, c, d);
    let threshold = DEGENERACY_REL * diameter.powi(3);
    if !(signed.abs() > threshold) {
        return Err(GeometryError::DegenerateTet {
            volume: signed,
            threshold,
        });
    }
    let volume = signed.abs();

    let mut face_areas = [0.0; 4];
    let mut face_normals = [Point3::ORIGIN; 4];
    for (i, face) in TET_FACES.iter().enumerate() {
        let [p, q, r] = face.map(|k| vertices[k]);
        let area_vec = (q - p).cross(r - p);
        let norm = area_vec.norm();
        let mut n = area_vec / norm;
        if n.dot(vertices[i] - p) > 0.0 {
            n = -n;
        }
        face_areas[i] = 0.5 * norm;
        face_normals[i] = n;
    }

    let area_sum: f64 = face_areas.iter().sum();
    let insphere_diameter = 6.0 * volume / area_sum;
    let incenter = vertices
        .iter()
        .zip(face_areas.iter())
        .fold(Point3::ORIGIN, |acc, (&v, &w)| acc + v * w)
        / area_sum;

    let mut face_touch_points = [Point3::ORIGIN; 4];
    for i in 0..4 {
        let p = vertices[TET_FACES[i][0]];
        let n = face_normals[i];
        face_touch_points[i] = incenter - n * n.dot(incenter - p);
    }

    let mut dihedral_angles = [0.0; 6];
    let mut dihedral_cos = [0.0; 6];
    for (k, &edge) in TET_EDGES.iter().enumerate() {
        let [f, g] = faces_at_edge(edge);
        let (n1, n2) = (face_normals[f], face_normals[g]);
        let cos = -n1.dot(n2);
        let sin = n1.cross(n2).norm();
        dihedral_angles[k] = sin.atan2(cos);
        dihedral_cos[k] = cos.clamp(-1.0, 1.0);
    }

    Ok(TetGeometry {
        vertices,
        volume,
        signed_volume: signed,
        face_areas,
        face_normals,
        diameter,
        insphere_diameter,
        incenter,
        face_touch_points,
        dihedral_angles,
        dihedral_cos,
    })
}

/// Convenience for the four vertices as an array.
pub fn tet_geometry_of(v: &[Point3; 4]) -> Result<TetGeometry, GeometryError> {
    tet_geometry(v[0], v[1], v[2], v[3])
}

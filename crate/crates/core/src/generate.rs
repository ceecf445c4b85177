//! Deterministic mesh generators for tests and parameter sweeps.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{signed_volume, tet_diameter, tet_geometry_of, Point3, DEGENERACY_REL};
use crate::mesh::{build_face_table, TetMesh};

/// Resampling budget per vertex in [`perturb`].
pub const MAX_PERTURB_ATTEMPTS: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    CubeKuhn,
    PerturbedCube,
    Sliver,
    TwoTetMirror,
    TwoTetSkew,
    RegularTet,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::CubeKuhn,
        Family::PerturbedCube,
        Family::Sliver,
        Family::TwoTetMirror,
        Family::TwoTetSkew,
        Family::RegularTet,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::CubeKuhn => "cube_kuhn",
            Family::PerturbedCube => "perturbed_cube",
            Family::Sliver => "sliver",
            Family::TwoTetMirror => "two_tet_mirror",
            Family::TwoTetSkew => "two_tet_skew",
            Family::RegularTet => "regular_tet",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown family {s:?}")))
    }
}

/// Generator parameters. `eps` is the sliver height or the skew offset,
/// depending on the family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GenSpec {
    pub family: Family,
    pub n: usize,
    pub sigma: f64,
    pub eps: f64,
    pub seed: u64,
}

impl GenSpec {
    pub fn new(family: Family) -> Self {
        GenSpec {
            family,
            n: 1,
            sigma: 0.0,
            eps: 0.1,
            seed: 0,
        }
    }

    pub fn check(&self) -> Result<()> {
        if self.n < 1 {
            return Err(Error::InvalidParameter("n must be at least 1".into()));
        }
        if !(0.0..0.5).contains(&self.sigma) {
            return Err(Error::InvalidParameter(format!("sigma = {} is outside [0, 0.5)", self.sigma)));
        }
        if !(self.eps > 0.0 && self.eps.is_finite()) {
            return Err(Error::InvalidParameter(format!("eps = {} must be positive", self.eps)));
        }
        Ok(())
    }
}

pub fn generate(spec: &GenSpec) -> Result<TetMesh> {
    spec.check()?;
    match spec.family {
        Family::CubeKuhn => Ok(gen_cube_kuhn(spec.n)),
        Family::PerturbedCube => perturb(&gen_cube_kuhn(spec.n), spec.sigma, spec.seed),
        Family::Sliver => gen_sliver(spec.eps),
        Family::TwoTetMirror => Ok(gen_two_tet_mirror()),
        Family::TwoTetSkew => gen_two_tet_skew(spec.eps),
        Family::RegularTet => Ok(gen_regular_tet()),
    }
}

fn orient(vertices: &[Point3], mut tet: [usize; 4]) -> [usize; 4] {
    let [a, b, c, d] = tet.map(|i| vertices[i]);
    if signed_volume(a, b, c, d) < 0.0 {
        tet.swap(2, 3);
    }
    tet
}

/// Unit cube split into `n^3` cells, each cut into the six Kuhn tets around
/// its main diagonal. Vertex `(i, j, k)` has index `i + (n+1) (j + (n+1) k)`.
pub fn gen_cube_kuhn(n: usize) -> TetMesh {
    let m = n + 1;
    let h = 1.0 / n as f64;
    let idx = |i: usize, j: usize, k: usize| i + m * (j + m * k);
    let mut vertices = Vec::with_capacity(m * m * m);
    for k in 0..m {
        for j in 0..m {
            for i in 0..m {
                vertices.push(Point3::new(i as f64 * h, j as f64 * h, k as f64 * h));
            }
        }
    }
    const PERMUTATIONS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut tets = Vec::with_capacity(6 * n * n * n);
    for k in 0..n {
        for j in 0..n {
            for i in 0..n {
                for perm in PERMUTATIONS {
                    let mut at = [i, j, k];
                    let mut tet = [idx(i, j, k); 4];
                    for (step, &axis) in perm.iter().enumerate() {
                        at[axis] += 1;
                        tet[step + 1] = idx(at[0], at[1], at[2]);
                    }
                    tets.push(orient(&vertices, tet));
                }
            }
        }
    }
    TetMesh::new(vertices, tets)
}

/// Randomly displace interior vertices by up to `sigma` times the shortest
/// incident edge in each coordinate. Boundary vertices stay fixed. A draw that
/// would invert or degenerate an incident tet is redrawn; after
/// [`MAX_PERTURB_ATTEMPTS`] failures the vertex is left in place.
pub fn perturb(mesh: &TetMesh, sigma: f64, seed: u64) -> Result<TetMesh> {
    if !(0.0..0.5).contains(&sigma) {
        return Err(Error::InvalidParameter(format!("sigma = {sigma} is outside [0, 0.5)")));
    }
    let mut out = mesh.clone();
    if sigma == 0.0 {
        return Ok(out);
    }
    let faces = build_face_table(mesh)?;
    let nv = mesh.vertices.len();
    let mut on_boundary = vec![false; nv];
    for f in faces.faces().iter().filter(|f| f.is_boundary()) {
        for &v in &f.key {
            on_boundary[v] = true;
        }
    }
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); nv];
    let mut shortest = vec![f64::INFINITY; nv];
    for (t, tet) in mesh.tets.iter().enumerate() {
        for &v in tet {
            incident[v].push(t);
        }
        for i in 0..4 {
            for j in i + 1..4 {
                let len = mesh.vertices[tet[i]].distance(mesh.vertices[tet[j]]);
                shortest[tet[i]] = shortest[tet[i]].min(len);
                shortest[tet[j]] = shortest[tet[j]].min(len);
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for v in 0..nv {
        if on_boundary[v] || incident[v].is_empty() {
            continue;
        }
        let amplitude = sigma * shortest[v];
        let original = out.vertices[v];
        let signs: Vec<f64> = incident[v].iter().map(|&t| out.signed_volume(t).signum()).collect();
        for _ in 0..MAX_PERTURB_ATTEMPTS {
            let offset = Point3::new(
                rng.gen_range(-1.0..=1.0),
                rng.gen_range(-1.0..=1.0),
                rng.gen_range(-1.0..=1.0),
            ) * amplitude;
            out.vertices[v] = original + offset;
            let acceptable = incident[v].iter().zip(&signs).all(|(&t, &sign)| {
                let p = out.tet_points(t);
                let vol = signed_volume(p[0], p[1], p[2], p[3]) * sign;
                vol > DEGENERACY_REL * tet_diameter(&p).powi(3)
            });
            if acceptable {
                break;
            }
            out.vertices[v] = original;
        }
    }
    Ok(out)
}

/// Single tet over the unit right triangle with apex `(1/3, 1/3, eps)`.
pub fn gen_sliver(eps: f64) -> Result<TetMesh> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::InvalidParameter(format!("eps = {eps} must be positive")));
    }
    let vertices = vec![
        Point3::new(0.0, 0.0, 0.0),
        Point3::new(1.0, 0.0, 0.0),
        Point3::new(0.0, 1.0, 0.0),
        Point3::new(1.0 / 3.0, 1.0 / 3.0, eps),
    ];
    let tet = orient(&vertices, [0, 1, 2, 3]);
    let mesh = TetMesh::new(vertices, vec![tet]);
    tet_geometry_of(&mesh.tet_points(0)).map_err(|e| Error::tet(0, e))?;
    Ok(mesh)
}

/// Regular tet with unit edges, base in the `z = 0` plane.
pub fn gen_regular_tet() -> TetMesh {
    let [a, b, c, apex] = regular_vertices();
    TetMesh::new(vec![a, b, c, apex], vec![[0, 1, 2, 3]])
}

fn regular_vertices() -> [Point3; 4] {
    let s3 = 3f64.sqrt();
    [
        Point3::new(0.0, 0.0, 0.0),
        Point3::new(1.0, 0.0, 0.0),
        Point3::new(0.5, s3 / 2.0, 0.0),
        Point3::new(0.5, s3 / 6.0, (2.0f64 / 3.0).sqrt()),
    ]
}

/// Two unit regular tets glued on the equilateral face in `z = 0`.
pub fn gen_two_tet_mirror() -> TetMesh {
    two_tet_with_lower_apex_shift(0.0)
}

/// [`gen_two_tet_mirror`] with the lower apex shifted by `offset` along x.
pub fn gen_two_tet_skew(offset: f64) -> Result<TetMesh> {
    if !offset.is_finite() {
        return Err(Error::InvalidParameter(format!("offset = {offset} must be finite")));
    }
    let mesh = two_tet_with_lower_apex_shift(offset);
    for t in 0..mesh.tets.len() {
        tet_geometry_of(&mesh.tet_points(t)).map_err(|e| Error::tet(t, e))?;
    }
    Ok(mesh)
}

fn two_tet_with_lower_apex_shift(offset: f64) -> TetMesh {
    let [a, b, c, apex] = regular_vertices();
    let lower = Point3::new(apex.x + offset, apex.y, -apex.z);
    let vertices = vec![a, b, c, apex, lower];
    let tets = vec![orient(&vertices, [0, 1, 2, 3]), orient(&vertices, [0, 1, 2, 4])];
    TetMesh::new(vertices, tets)
}

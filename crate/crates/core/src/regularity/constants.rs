use serde::Serialize;

use crate::error::{Error, Result};
use crate::mesh::TetMesh;
use crate::refine::tet_geometries;

/// Smallest attainable `h / rho`, reached by the regular tetrahedron.
pub const MIN_SHAPE_CONSTANT: f64 = 2.449_489_742_783_178;

/// The explicit constants bounding the refined mesh's shape regularity in
/// terms of the parent's shape constant `c0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TheoreticalConstants {
    pub c0: f64,
    /// Lower bound factor for the split-point distance on interior faces.
    pub frak_c2: f64,
    /// `min(frak_c2, 1 / (3 c0))`.
    pub c2: f64,
    /// `2 pi c0^3 / c2`.
    pub c1: f64,
}

impl TheoreticalConstants {
    /// True when `c0` is below the regular-tet minimum, which no real mesh
    /// can produce.
    pub fn below_geometric_minimum(&self) -> bool {
        self.c0 < MIN_SHAPE_CONSTANT * (1.0 - 1e-12)
    }
}

/// Evaluate the constants for a given `c0 > 1`.
///
/// `frak_c2 = (2 c0)^-1 sqrt(-1 + 2 / (1 + s))` with `s = sqrt(1 - c0^-2)`
/// is evaluated in the algebraically equal form `1 / (2 c0^2 (1 + s))`,
/// which avoids the cancellation in `-1 + 2 / (1 + s)` for large `c0`.
pub fn theoretical_constants(c0: f64) -> Result<TheoreticalConstants> {
    if !(c0 > 1.0 && c0.is_finite()) {
        return Err(Error::InvalidC0(c0));
    }
    let s = (1.0 - 1.0 / (c0 * c0)).sqrt();
    let frak_c2 = 1.0 / (2.0 * c0 * c0 * (1.0 + s));
    let c2 = frak_c2.min(1.0 / (3.0 * c0));
    let c1 = 2.0 * std::f64::consts::PI * c0.powi(3) / c2;
    Ok(TheoreticalConstants { c0, frak_c2, c2, c1 })
}

/// `c0 = max_T h_T / rho_T`.
pub fn shape_constant(mesh: &TetMesh) -> Result<f64> {
    if mesh.is_empty() {
        return Err(Error::EmptyMesh);
    }
    Ok(tet_geometries(mesh)?
        .iter()
        .map(|g| g.shape_ratio())
        .fold(0.0, f64::max))
}

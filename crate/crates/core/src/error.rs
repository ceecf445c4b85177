//! Error types shared across the crate.

use thiserror::Error;

/// Failures of the floating-point geometric primitives.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("degenerate tetrahedron: |volume| = {volume:e} is below the threshold {threshold:e}")]
    DegenerateTet { volume: f64, threshold: f64 },
    #[error("degenerate triangle (zero area)")]
    DegenerateTriangle,
    #[error("point is {distance:e} away from the triangle plane (tolerance {tolerance:e})")]
    NotInPlane { distance: f64, tolerance: f64 },
    #[error("point lies outside the triangle (barycentric coordinates {bary:?})")]
    Outside { bary: [f64; 3] },
    #[error("segment does not cross the plane (signed distances {d1:e}, {d2:e})")]
    NoCrossing { d1: f64, d2: f64 },
}

/// Failures of text-format readers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: vertex index {index} out of range (mesh has {vertex_count} vertices)")]
    IndexOutOfRange {
        line: usize,
        index: usize,
        vertex_count: usize,
    },
    #[error("unsupported mesh format version: {0}")]
    UnsupportedVersion(String),
}

impl ParseError {
    pub(crate) fn syntax(line: usize, message: impl Into<String>) -> Self {
        ParseError::Syntax {
            line,
            message: message.into(),
        }
    }

    /// 1-based line number the error refers to, if any.
    pub fn line(&self) -> Option<usize> {
        match self {
            ParseError::Syntax { line, .. } | ParseError::IndexOutOfRange { line, .. } => {
                Some(*line)
            }
            ParseError::UnsupportedVersion(_) => None,
        }
    }
}

/// Top-level error for mesh construction, refinement and verification.
#[derive(Debug, Error)]
pub enum Error {
    #[error("tetrahedron {tet}: {source}")]
    Tet {
        tet: usize,
        #[source]
        source: GeometryError,
    },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("face {face:?} is shared by {count} tetrahedra (non-manifold)")]
    NonManifold { face: [usize; 3], count: usize },
    #[error("tetrahedron {tet} references vertex {index}, but the mesh has {vertex_count} vertices")]
    IndexOutOfRange {
        tet: usize,
        index: usize,
        vertex_count: usize,
    },
    #[error("tetrahedron {tet} repeats a vertex: {vertices:?}")]
    RepeatedVertex { tet: usize, vertices: [usize; 4] },
    #[error("split point of face {face:?} lies outside the face (barycentric {bary:?})")]
    SplitPointOutsideFace { face: [usize; 3], bary: [f64; 3] },
    #[error("invalid shape regularity constant c0 = {0} (must exceed 1)")]
    InvalidC0(f64),
    #[error("invalid generator parameter: {0}")]
    InvalidParameter(String),
    #[error("mesh has no tetrahedra")]
    EmptyMesh,
    #[error("mesh failed validation: {0}")]
    Invalid(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn tet(tet: usize, source: GeometryError) -> Self {
        Error::Tet { tet, source }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

//! Worsey-Farin refinement of conforming tetrahedral meshes, with numerical
//! certification of the shape-regularity bound of the refined mesh.
//!
//! The crate is organised bottom-up:
//!
//! * [`geometry`]: points, planes, triangles and per-tet quantities
//!   (volume, insphere, incenter, touch points, dihedral angles).
//! * [`mesh`]: the [`TetMesh`] model, face adjacency and validation.
//! * [`io`]: `.tmesh` read/write, legacy VTK export, Gmsh MSH 2.2 import.
//! * [`generate`]: deterministic test and sweep meshes.
//! * [`refine`]: the 12-way split of every tetrahedron.
//! * [`regularity`]: shape constants, the theoretical bound and its checks.
//! * [`report`]: JSON / CSV / text serialization.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod generate;
pub mod geometry;
pub mod io;
pub mod mesh;
pub mod refine;
pub mod regularity;
pub mod report;

pub use error::{Error, GeometryError, ParseError, Result};
pub use geometry::{Point3, TetGeometry};
pub use mesh::{FaceTable, TetMesh};
pub use refine::{refine_k, worsey_farin, RefinementOutput};

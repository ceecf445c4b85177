//! Mesh file formats.

pub mod msh;
pub mod tmesh;
pub mod vtk;

use std::path::Path;

pub use msh::{read_msh_ascii, MshImport};
pub use tmesh::{read_tmesh, write_tmesh};
pub use vtk::{write_vtk_legacy, write_vtk_legacy_to};

use crate::error::Result;
use crate::mesh::TetMesh;

pub fn load_tmesh(path: impl AsRef<Path>) -> Result<TetMesh> {
    let text = std::fs::read_to_string(path)?;
    Ok(read_tmesh(&text)?)
}

pub fn save_tmesh(mesh: &TetMesh, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, write_tmesh(mesh))?;
    Ok(())
}

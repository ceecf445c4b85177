//! Legacy ASCII VTK export of tetrahedral meshes (cell type 10).

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use crate::mesh::TetMesh;

pub const VTK_TETRA: u8 = 10;

/// Write `mesh` as an ASCII legacy `UNSTRUCTURED_GRID`, optionally with
/// named per-cell scalar fields (each slice must have one value per tet).
pub fn write_vtk_legacy_to<W: Write>(
    mesh: &TetMesh,
    cell_scalars: &[(&str, &[f64])],
    mut w: W,
) -> io::Result<()> {
    writeln!(w, "# vtk DataFile Version 3.0")?;
    writeln!(w, "wfsplit tetrahedral mesh")?;
    writeln!(w, "ASCII")?;
    writeln!(w, "DATASET UNSTRUCTURED_GRID")?;
    writeln!(w, "POINTS {} double", mesh.vertices.len())?;
    for p in &mesh.vertices {
        writeln!(w, "{} {} {}", p.x, p.y, p.z)?;
    }
    let nt = mesh.tets.len();
    writeln!(w, "CELLS {} {}", nt, 5 * nt)?;
    for t in &mesh.tets {
        writeln!(w, "4 {} {} {} {}", t[0], t[1], t[2], t[3])?;
    }
    writeln!(w, "CELL_TYPES {nt}")?;
    for _ in 0..nt {
        writeln!(w, "{VTK_TETRA}")?;
    }
    if !cell_scalars.is_empty() {
        writeln!(w, "CELL_DATA {nt}")?;
        for (name, values) in cell_scalars {
            if values.len() != nt {
                return Err(io::Error::new(
                    io::ErrorKind::InvalidInput,
                    format!("cell field {name} has {} values for {nt} cells", values.len()),
                ));
            }
            writeln!(w, "SCALARS {name} double 1")?;
            writeln!(w, "LOOKUP_TABLE default")?;
            for v in *values {
                writeln!(w, "{v}")?;
            }
        }
    }
    w.flush()
}

pub fn write_vtk_legacy(mesh: &TetMesh, path: impl AsRef<Path>) -> io::Result<()> {
    write_vtk_legacy_to(mesh, &[], BufWriter::new(File::create(path)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::fixtures::regular_tet;

    fn render(mesh: &TetMesh, scalars: &[(&str, &[f64])]) -> String {
        let mut buf = Vec::new();
        write_vtk_legacy_to(mesh, scalars, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn one_tet() {
        let m = TetMesh::new(regular_tet().to_vec(), vec![[0, 1, 2, 3]]);
        let text = render(&m, &[]);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "# vtk DataFile Version 3.0");
        assert_eq!(lines[2], "ASCII");
        assert_eq!(lines[3], "DATASET UNSTRUCTURED_GRID");
        assert_eq!(lines[4], "POINTS 4 double");
        assert_eq!(lines[9], "CELLS 1 5");
        assert_eq!(lines[10], "4 0 1 2 3");
        assert_eq!(lines[11], "CELL_TYPES 1");
        assert_eq!(lines[12], "10");
        assert_eq!(lines.len(), 13);
    }

    #[test]
    fn empty() {
        let text = render(&TetMesh::default(), &[]);
        assert!(text.contains("POINTS 0 double\nCELLS 0 0\nCELL_TYPES 0\n"));
    }

    #[test]
    fn scalars() {
        let m = TetMesh::new(regular_tet().to_vec(), vec![[0, 1, 2, 3]]);
        let text = render(&m, &[("ratio", &[2.5])]);
        assert!(text.ends_with("CELL_DATA 1\nSCALARS ratio double 1\nLOOKUP_TABLE default\n2.5\n"));
        let mut buf = Vec::new();
        assert!(write_vtk_legacy_to(&m, &[("bad", &[])], &mut buf).is_err());
    }

    #[test]
    fn writes_file() {
        let dir = std::env::temp_dir().join(format!("wfsplit-vtk-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("one.vtk");
        let m = TetMesh::new(regular_tet().to_vec(), vec![[0, 1, 2, 3]]);
        write_vtk_legacy(&m, &path).unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), render(&m, &[]));
        std::fs::remove_dir_all(&dir).unwrap();
    }
}

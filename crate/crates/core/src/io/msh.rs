//! Import of Gmsh MSH 2.2 ASCII files (tetrahedra only).

use std::collections::HashMap;

use crate::error::ParseError;
use crate::geometry::Point3;
use crate::mesh::TetMesh;

const MSH_TET4: u32 = 4;

/// Result of an MSH import. Nodes not referenced by any tetrahedron are
/// dropped and the remaining ones renumbered densely in file order.
#[derive(Debug, Clone, PartialEq)]
pub struct MshImport {
    pub mesh: TetMesh,
    pub skipped_elements: usize,
    pub warnings: Vec<String>,
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn next_line(&mut self) -> Option<(usize, &'a str)> {
        for (i, l) in self.inner.by_ref() {
            let l = l.trim();
            self.last = i + 1;
            if !l.is_empty() {
                return Some((i + 1, l));
            }
        }
        None
    }

    fn expect(&mut self, what: &str) -> Result<(usize, &'a str), ParseError> {
        self.next_line()
            .ok_or_else(|| ParseError::syntax(self.last + 1, format!("unexpected end of file, expected {what}")))
    }

    fn skip_section(&mut self, name: &str) -> Result<(), ParseError> {
        let end = format!("$End{name}");
        loop {
            let (_, l) = self.expect(&end)?;
            if l == end {
                return Ok(());
            }
        }
    }
}

fn num<T: std::str::FromStr>(line: usize, s: &str) -> Result<T, ParseError> {
    s.parse()
        .map_err(|_| ParseError::syntax(line, format!("invalid number {s:?}")))
}

pub fn read_msh_ascii(text: &str) -> Result<MshImport, ParseError> {
    let mut lines = Lines {
        inner: text.lines().enumerate(),
        last: 0,
    };
    let mut nodes: Vec<(u64, Point3)> = Vec::new();
    let mut tets: Vec<[u64; 4]> = Vec::new();
    let mut skipped = 0usize;
    let mut seen_format = false;

    while let Some((line_no, line)) = lines.next_line() {
        match line {
            "$MeshFormat" => {
                let (l, header) = lines.expect("format header")?;
                let parts: Vec<&str> = header.split_whitespace().collect();
                if parts.len() < 3 {
                    return Err(ParseError::syntax(l, "malformed $MeshFormat header"));
                }
                if !parts[0].starts_with("2.") {
                    return Err(ParseError::UnsupportedVersion(parts[0].to_string()));
                }
                if parts[1] != "0" {
                    return Err(ParseError::UnsupportedVersion(format!("{} (binary)", parts[0])));
                }
                lines.skip_section("MeshFormat")?;
                seen_format = true;
            }
            "$Nodes" => {
                let (l, count) = lines.expect("node count")?;
                let count: usize = num(l, count)?;
                nodes.reserve(count);
                for _ in 0..count {
                    let (l, node) = lines.expect("node line")?;
                    let f: Vec<&str> = node.split_whitespace().collect();
                    if f.len() != 4 {
                        return Err(ParseError::syntax(l, "node line must be `id x y z`"));
                    }
                    let p = Point3::new(num(l, f[1])?, num(l, f[2])?, num(l, f[3])?);
                    if !p.is_finite() {
                        return Err(ParseError::syntax(l, "non-finite node coordinate"));
                    }
                    nodes.push((num(l, f[0])?, p));
                }
                let (l, end) = lines.expect("$EndNodes")?;
                if end != "$EndNodes" {
                    return Err(ParseError::syntax(l, "expected $EndNodes"));
                }
            }
            "$Elements" => {
                let (l, count) = lines.expect("element count")?;
                let count: usize = num(l, count)?;
                for _ in 0..count {
                    let (l, elem) = lines.expect("element line")?;
                    let f: Vec<&str> = elem.split_whitespace().collect();
                    if f.len() < 3 {
                        return Err(ParseError::syntax(l, "element line too short"));
                    }
                    let kind: u32 = num(l, f[1])?;
                    let ntags: usize = num(l, f[2])?;
                    let node_ids = f.get(3 + ntags..).unwrap_or(&[]);
                    if kind != MSH_TET4 {
                        skipped += 1;
                        continue;
                    }
                    if node_ids.len() != 4 {
                        return Err(ParseError::syntax(l, "tetrahedron must list 4 nodes"));
                    }
                    let mut tet = [0u64; 4];
                    for (slot, s) in tet.iter_mut().zip(node_ids) {
                        *slot = num(l, s)?;
                    }
                    tets.push(tet);
                }
                let (l, end) = lines.expect("$EndElements")?;
                if end != "$EndElements" {
                    return Err(ParseError::syntax(l, "expected $EndElements"));
                }
            }
            s if s.starts_with('$') && !s.starts_with("$End") => {
                lines.skip_section(&s[1..])?;
            }
            _ => return Err(ParseError::syntax(line_no, format!("unexpected line {line:?}"))),
        }
    }
    if !seen_format {
        return Err(ParseError::syntax(1, "missing $MeshFormat section"));
    }

    let node_index: HashMap<u64, usize> = nodes.iter().enumerate().map(|(i, (id, _))| (*id, i)).collect();
    let mut used = vec![false; nodes.len()];
    for tet in &tets {
        for id in tet {
            let &i = node_index
                .get(id)
                .ok_or_else(|| ParseError::syntax(lines.last, format!("element references unknown node {id}")))?;
            used[i] = true;
        }
    }
    let mut dense = vec![usize::MAX; nodes.len()];
    let mut vertices = Vec::new();
    for (i, (_, p)) in nodes.iter().enumerate() {
        if used[i] {
            dense[i] = vertices.len();
            vertices.push(*p);
        }
    }
    let tets = tets
        .iter()
        .map(|t| t.map(|id| dense[node_index[&id]]))
        .collect::<Vec<_>>();

    let mut warnings = Vec::new();
    if skipped > 0 {
        warnings.push(format!("skipped {skipped} non-tetrahedral elements"));
    }
    if tets.is_empty() {
        warnings.push("file contains no tetrahedra".to_string());
    }
    Ok(MshImport {
        mesh: TetMesh::new(vertices, tets),
        skipped_elements: skipped,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const ONE_TET: &str = "$MeshFormat
2.2 0 8
$EndMeshFormat
$Nodes
5
1 0 0 0
2 1 0 0
3 0 1 0
7 0 0 1
9 5 5 5
$EndNodes
$Elements
2
1 2 2 0 1 1 2 3
2 4 2 0 1 1 2 3 7
$EndElements
";

    #[test]
    fn minimal_tet() {
        let imp = read_msh_ascii(ONE_TET).unwrap();
        assert_eq!(imp.mesh.tets, vec![[0, 1, 2, 3]]);
        assert_eq!(imp.mesh.vertices.len(), 4);
        assert_eq!(imp.mesh.vertices[3], Point3::new(0.0, 0.0, 1.0));
        assert_eq!(imp.skipped_elements, 1);
    }

    #[test]
    fn triangles_only() {
        let text = ONE_TET.replace("2 4 2 0 1 1 2 3 7", "2 2 2 0 1 1 3 7");
        let imp = read_msh_ascii(&text).unwrap();
        assert!(imp.mesh.tets.is_empty());
        assert!(imp.mesh.vertices.is_empty());
        assert!(imp.warnings.iter().any(|w| w.contains("no tetrahedra")));
    }

    #[test]
    fn binary_is_unsupported() {
        let text = ONE_TET.replace("2.2 0 8", "2.2 1 8");
        assert!(matches!(read_msh_ascii(&text), Err(ParseError::UnsupportedVersion(_))));
        let text = ONE_TET.replace("2.2 0 8", "4.1 0 8");
        assert!(matches!(read_msh_ascii(&text), Err(ParseError::UnsupportedVersion(_))));
    }

    #[test]
    fn malformed_nodes() {
        let text = ONE_TET.replace("2 1 0 0", "2 1 zero 0");
        assert_eq!(read_msh_ascii(&text).unwrap_err().line(), Some(7));
        let text = ONE_TET.replace("1 2 3 7", "1 2 3 8");
        assert!(read_msh_ascii(&text).is_err());
    }

    #[test]
    fn unknown_sections_are_skipped() {
        let text = ONE_TET.replace(
            "$EndMeshFormat\n",
            "$EndMeshFormat\n$PhysicalNames\n1\n3 1 \"vol\"\n$EndPhysicalNames\n",
        );
        assert_eq!(read_msh_ascii(&text).unwrap().mesh.tets.len(), 1);
    }
}

//! The native `.tmesh` text format.
//!
//! ```text
//! nv nt
//! x y z          (nv lines)
//! i j k l        (nt lines, 0-based)
//! ```
//!
//! Coordinates are written with Rust's shortest round-trip formatting, so
//! reading back a written mesh reproduces every coordinate bit for bit.

use std::fmt::Write as _;

use crate::error::ParseError;
use crate::geometry::Point3;
use crate::mesh::TetMesh;

pub fn write_tmesh(mesh: &TetMesh) -> String {
    let mut out = String::with_capacity(32 * (mesh.vertices.len() + mesh.tets.len()) + 16);
    writeln!(out, "{} {}", mesh.vertices.len(), mesh.tets.len()).unwrap();
    for p in &mesh.vertices {
        writeln!(out, "{} {} {}", p.x, p.y, p.z).unwrap();
    }
    for t in &mesh.tets {
        writeln!(out, "{} {} {} {}", t[0], t[1], t[2], t[3]).unwrap();
    }
    out
}

fn fields<'a, const N: usize>(line_no: usize, line: &'a str, what: &str) -> Result<[&'a str; N], ParseError> {
    let parts: Vec<&str> = line.split_whitespace().collect();
    parts.try_into().map_err(|parts: Vec<&str>| {
        ParseError::syntax(
            line_no,
            format!("expected {N} fields ({what}), found {}", parts.len()),
        )
    })
}

fn parse_usize(line_no: usize, s: &str) -> Result<usize, ParseError> {
    s.parse()
        .map_err(|_| ParseError::syntax(line_no, format!("invalid integer {s:?}")))
}

fn parse_coord(line_no: usize, s: &str) -> Result<f64, ParseError> {
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        Ok(_) => Err(ParseError::syntax(line_no, format!("non-finite coordinate {s:?}"))),
        Err(_) => Err(ParseError::syntax(line_no, format!("invalid number {s:?}"))),
    }
}

pub fn read_tmesh(text: &str) -> Result<TetMesh, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());

    let (line_no, header) = lines
        .next()
        .ok_or_else(|| ParseError::syntax(1, "missing count line"))?;
    let [nv, nt] = fields::<2>(line_no, header, "vertex and tet counts")?;
    let nv = parse_usize(line_no, nv)?;
    let nt = parse_usize(line_no, nt)?;

    let mut vertices = Vec::with_capacity(nv);
    let mut last_line = line_no;
    for _ in 0..nv {
        let (line_no, line) = lines
            .next()
            .ok_or_else(|| ParseError::syntax(last_line + 1, "unexpected end of file in vertex block"))?;
        let [x, y, z] = fields::<3>(line_no, line, "x y z")?;
        vertices.push(Point3::new(
            parse_coord(line_no, x)?,
            parse_coord(line_no, y)?,
            parse_coord(line_no, z)?,
        ));
        last_line = line_no;
    }

    let mut tets = Vec::with_capacity(nt);
    for _ in 0..nt {
        let (line_no, line) = lines
            .next()
            .ok_or_else(|| ParseError::syntax(last_line + 1, "unexpected end of file in tet block"))?;
        let f = fields::<4>(line_no, line, "four vertex indices")?;
        let mut tet = [0usize; 4];
        for (slot, s) in tet.iter_mut().zip(f) {
            let index = parse_usize(line_no, s)?;
            if index >= nv {
                return Err(ParseError::IndexOutOfRange {
                    line: line_no,
                    index,
                    vertex_count: nv,
                });
            }
            *slot = index;
        }
        tets.push(tet);
        last_line = line_no;
    }

    if let Some((line_no, _)) = lines.next() {
        return Err(ParseError::syntax(line_no, "trailing data after the tet block"));
    }
    Ok(TetMesh::new(vertices, tets))
}

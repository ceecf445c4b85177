use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn wfsplit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wfsplit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_string()
}

#[test]
fn generate_refine_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let a = path(dir.path(), "a.tmesh");
    let b = path(dir.path(), "b.tmesh");
    let vtk = path(dir.path(), "b.vtk");
    let prov = path(dir.path(), "p.csv");
    assert_eq!(code(&wfsplit(&["generate", "--family", "cube_kuhn", "--n", "1", "-o", &a])), 0);
    let out = wfsplit(&["refine", "-i", &a, "-o", &b, "--vtk", &vtk, "--provenance", &prov]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("children = 72"), "{text}");
    assert!(text.contains("vertices = 32"), "{text}");
    let csv = fs::read_to_string(&prov).unwrap();
    assert!(csv.starts_with("child_id,parent_id\n0,0\n"));
    assert_eq!(csv.lines().count(), 73);
    let vtk = fs::read_to_string(&vtk).unwrap();
    assert!(vtk.contains("CELL_TYPES 72"));
    assert!(vtk.contains("SCALARS parent_id"));

    let two = path(dir.path(), "c.tmesh");
    let out = wfsplit(&["refine", "-i", &a, "-o", &two, "--levels", "2"]);
    assert!(stdout(&out).contains("children = 864"));
}

#[test]
fn generation_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = path(dir.path(), "a.tmesh");
    let b = path(dir.path(), "b.tmesh");
    for p in [&a, &b] {
        let args = ["generate", "--family", "perturbed_cube", "--n", "2", "--sigma", "0.2", "--seed", "7", "-o", p];
        assert_eq!(code(&wfsplit(&args)), 0);
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn bad_arguments_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let o = path(dir.path(), "x.tmesh");
    assert_eq!(code(&wfsplit(&["generate", "--family", "cube_kuhn", "--n", "0", "-o", &o])), 2);
    assert_eq!(code(&wfsplit(&["generate", "--family", "tesseract", "-o", &o])), 2);
    assert_eq!(code(&wfsplit(&["generate", "--family", "perturbed_cube", "--sigma", "0.7", "-o", &o])), 2);
    assert_eq!(code(&wfsplit(&["verify"])), 2);
}

#[test]
fn missing_input() {
    let dir = tempfile::tempdir().unwrap();
    let missing = path(dir.path(), "none.tmesh");
    let o = path(dir.path(), "o.tmesh");
    assert_eq!(code(&wfsplit(&["refine", "-i", &missing, "-o", &o])), 1);
    assert_eq!(code(&wfsplit(&["verify", "-i", &missing])), 2);
}

#[test]
fn parse_error_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    let bad = path(dir.path(), "bad.tmesh");
    fs::write(&bad, "4 1\n0 0 0\n1 0 0\n0 1 x\n0 0 1\n0 1 2 3\n").unwrap();
    let out = wfsplit(&["refine", "-i", &bad, "-o", &path(dir.path(), "o.tmesh")]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 4"));
}

#[test]
fn analyze_reports() {
    let dir = tempfile::tempdir().unwrap();
    let a = path(dir.path(), "a.tmesh");
    wfsplit(&["generate", "--family", "regular_tet", "-o", &a]);
    let json = stdout(&wfsplit(&["analyze", "-i", &a]));
    for key in ["\"c0\"", "\"min_dihedral\"", "\"max_dihedral\"", "\"num_tets\"", "\"min_split_distance\""] {
        assert!(json.contains(key), "{key} missing in {json}");
    }
    assert!(json.contains("2.44948974"));
    let csv = stdout(&wfsplit(&["analyze", "-i", &a, "--report", "csv"]));
    assert!(csv.starts_with("c0,max_dihedral,min_dihedral,"));

    let empty = path(dir.path(), "e.tmesh");
    fs::write(&empty, "0 0\n").unwrap();
    let out = wfsplit(&["analyze", "-i", &empty]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("no tetrahedra"));
}

#[test]
fn verify_passes_on_generated_meshes() {
    let dir = tempfile::tempdir().unwrap();
    let a = path(dir.path(), "a.tmesh");
    for family in ["cube_kuhn", "two_tet_mirror", "two_tet_skew", "sliver", "regular_tet"] {
        wfsplit(&["generate", "--family", family, "-o", &a]);
        let out = wfsplit(&["verify", "-i", &a]);
        assert_eq!(code(&out), 0, "{family}: {}", stdout(&out));
        let text = stdout(&out);
        for id in ["prop21", "prop22", "lemma_dist_face", "lemma_cos", "prop32", "lemma33", "thm31", "volK", "areaF"] {
            assert!(text.contains(id), "{id}");
        }
        assert!(text.contains("observed_wf_ratio = "));
    }
    let json = stdout(&wfsplit(&["verify", "-i", &a, "--report", "json"]));
    for key in ["\"c0\"", "\"observed_wf_ratio\"", "\"c1_bound\"", "\"slack\"", "\"checks\"", "\"worst_margin\""] {
        assert!(json.contains(key), "{key}");
    }
}

#[test]
fn verify_rejects_folded_mesh() {
    let dir = tempfile::tempdir().unwrap();
    let a = path(dir.path(), "fold.tmesh");
    // Both apexes on the same side of the shared face.
    fs::write(
        &a,
        "5 2\n0 0 0\n1 0 0\n0 1 0\n0.2 0.2 1\n0.3 0.3 0.5\n0 1 2 3\n0 2 1 4\n",
    )
    .unwrap();
    let out = wfsplit(&["verify", "-i", &a]);
    assert_eq!(code(&out), 1);
}

#[test]
fn verify_fixes_swapped_orientation() {
    let dir = tempfile::tempdir().unwrap();
    let a = path(dir.path(), "inv.tmesh");
    fs::write(&a, "4 1\n0 0 0\n1 0 0\n0 1 0\n0 0 1\n0 2 1 3\n").unwrap();
    assert_eq!(code(&wfsplit(&["verify", "-i", &a])), 0);
}

#[test]
fn msh_input() {
    let dir = tempfile::tempdir().unwrap();
    let m = path(dir.path(), "t.msh");
    fs::write(
        &m,
        "$MeshFormat\n2.2 0 8\n$EndMeshFormat\n$Nodes\n5\n1 0 0 0\n2 1 0 0\n3 0 1 0\n4 0 0 1\n5 9 9 9\n$EndNodes\n\
$Elements\n2\n1 2 2 0 1 1 2 3\n2 4 2 0 1 1 2 3 4\n$EndElements\n",
    )
    .unwrap();
    let out = wfsplit(&["analyze", "-i", &m]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("\"num_vertices\": 4"));
}

#[test]
fn sweep_csv_header() {
    let dir = tempfile::tempdir().unwrap();
    let csv = path(dir.path(), "s.csv");
    let out = wfsplit(&["sweep", "--family", "sliver", "--eps-from", "0.5", "--eps-to", "0.01", "--steps", "3", "--out", &csv]);
    assert_eq!(code(&out), 0);
    let text = fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("eps,c0,observed,c1,slack\n"));
    assert_eq!(text.lines().count(), 4);
}

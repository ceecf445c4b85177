mod support;

use proptest::prelude::*;
use wfsplit::geometry::{dist_to_triangle_boundary, tet_geometry_of, Point3};
use wfsplit::regularity::{
    dist_face_sides, prop22_interior_margin, verify_lemma_cos, verify_lemma_cos_global, verify_lemma_dist_face,
    verify_prop21, verify_prop22,
};

fn coord() -> impl Strategy<Value = f64> {
    -1.0..1.0f64
}

fn point() -> impl Strategy<Value = Point3> {
    (coord(), coord(), coord()).prop_map(|(x, y, z)| Point3::new(x, y, z))
}

/// Positively oriented tets with `|T| / h^3 >= 1e-3`.
fn tet() -> impl Strategy<Value = [Point3; 4]> {
    [point(), point(), point(), point()]
        .prop_filter_map("flat tet", |mut p| {
            let vol = wfsplit::geometry::signed_volume(p[0], p[1], p[2], p[3]);
            let h = wfsplit::geometry::tet_diameter(&p);
            if vol.abs() < 1e-3 * h * h * h {
                return None;
            }
            if vol < 0.0 {
                p.swap(2, 3);
            }
            Some(p)
        })
}

/// Rotation from a (not necessarily unit) quaternion.
fn rotate(q: [f64; 4], p: Point3) -> Point3 {
    let n = q.iter().map(|c| c * c).sum::<f64>().sqrt();
    let [w, x, y, z] = q.map(|c| c / n);
    Point3::new(
        (1.0 - 2.0 * (y * y + z * z)) * p.x + 2.0 * (x * y - w * z) * p.y + 2.0 * (x * z + w * y) * p.z,
        2.0 * (x * y + w * z) * p.x + (1.0 - 2.0 * (x * x + z * z)) * p.y + 2.0 * (y * z - w * x) * p.z,
        2.0 * (x * z - w * y) * p.x + 2.0 * (y * z + w * x) * p.y + (1.0 - 2.0 * (x * x + y * y)) * p.z,
    )
}

fn quaternion() -> impl Strategy<Value = [f64; 4]> {
    [0.1..1.0f64, -1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64]
}

proptest! {
    #[test]
    fn shape_quantities_invariant_under_similarity(
        t in tet(), q in quaternion(), shift in point(), scale in 0.01..100.0f64,
    ) {
        let g = tet_geometry_of(&t).unwrap();
        let moved = t.map(|p| rotate(q, p) * scale + shift * 10.0);
        let m = tet_geometry_of(&moved).unwrap();
        prop_assert!((m.shape_ratio() - g.shape_ratio()).abs() <= 1e-9 * g.shape_ratio());
        prop_assert!((m.insphere_diameter - scale * g.insphere_diameter).abs() <= 1e-10 * scale * g.diameter);
        for e in 0..6 {
            prop_assert!((m.dihedral_angles[e] - g.dihedral_angles[e]).abs() <= 1e-9);
        }
        let expected = rotate(q, g.incenter) * scale + shift * 10.0;
        prop_assert!(m.incenter.distance(expected) <= 1e-10 * scale * g.diameter);
    }

    #[test]
    fn incenter_is_equidistant(t in tet()) {
        let g = tet_geometry_of(&t).unwrap();
        prop_assert!(verify_prop21(&g) >= -1e-10);
        for f in 0..4 {
            let d = g.face_plane(f).signed_distance(g.incenter);
            // Outward normals: the incenter is on the negative side.
            prop_assert!(d < 0.0);
        }
    }

    #[test]
    fn vertex_heights_exceed_insphere(t in tet(), w in [0.01..1.0f64, 0.01..1.0f64, 0.01..1.0f64, 0.01..1.0f64]) {
        let g = tet_geometry_of(&t).unwrap();
        prop_assert!(verify_prop22(&g) > 0.0);
        let s: f64 = w.iter().sum();
        let a = (0..4).fold(Point3::ORIGIN, |acc, i| acc + t[i] * (w[i] / s));
        prop_assert!(prop22_interior_margin(&g, a) > 0.0);
    }

    #[test]
    fn touch_point_distance_is_attained(t in tet()) {
        let g = tet_geometry_of(&t).unwrap();
        let sides = dist_face_sides(&g).unwrap();
        prop_assert!((sides.lhs - sides.rhs).abs() <= 1e-9 * g.diameter);
        prop_assert!(verify_lemma_dist_face(&g).unwrap() >= -1e-10);
        for f in 0..4 {
            prop_assert!(dist_to_triangle_boundary(g.face_touch_points[f], &g.face(f)).unwrap() > 0.0);
        }
    }

    #[test]
    fn dihedral_angles_bounded_by_shape(t in tet()) {
        let g = tet_geometry_of(&t).unwrap();
        prop_assert!(verify_lemma_cos(&g) >= -1e-12);
        prop_assert!(verify_lemma_cos_global(&g, g.shape_ratio()) >= -1e-12);
        prop_assert!(g.shape_ratio() >= 6f64.sqrt() * (1.0 - 1e-12));
    }
}

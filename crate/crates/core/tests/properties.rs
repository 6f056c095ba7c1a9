//! Property-based invariants over random rational conics and offsets.

mod common;

use proptest::prelude::*;

use parlines::conics::{
    offset_poly_closed_form, offset_poly_elimination, r_crit, singular_points, singular_points_via_elimination,
    ConicKind, ConicSpec, PointTag, Regime,
};
use parlines::mesh::{generate_mesh, MeshSpec};
use parlines::rational::{rat, to_f64};
use parlines::Rational;

fn small_rat(lo: i64, hi: i64) -> impl Strategy<Value = Rational> {
    (lo..=hi, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn parabola() -> impl Strategy<Value = ConicSpec> {
    small_rat(-6, 6).prop_filter("p ≠ 0", |p| *p != rat(0, 1)).prop_map(|p| ConicSpec::parabola(p).unwrap())
}

/// `a > b > 0`.
fn ellipse() -> impl Strategy<Value = ConicSpec> {
    (small_rat(1, 8), 1i64..=4).prop_map(|(b, k)| ConicSpec::ellipse(b.clone() + rat(k, 2), b).unwrap())
}

/// `a ≥ b > 0`.
fn hyperbola() -> impl Strategy<Value = ConicSpec> {
    (small_rat(1, 8), 0i64..=4).prop_map(|(b, k)| ConicSpec::hyperbola(b.clone() + rat(k, 2), b).unwrap())
}

fn any_conic() -> impl Strategy<Value = ConicSpec> {
    prop_oneof![parabola(), ellipse(), hyperbola()]
}

/// An offset expressed as a rational multiple of the critical offset.
fn conic_and_r() -> impl Strategy<Value = (ConicSpec, Rational)> {
    (any_conic(), 1i64..=12, 1i64..=6).prop_map(|(c, n, d)| {
        let r = r_crit(&c) * rat(n, d);
        (c, r)
    })
}

fn a_of(c: &ConicSpec) -> Option<Rational> {
    match c {
        ConicSpec::Ellipse { a, .. } | ConicSpec::Hyperbola { a, .. } => Some(a.clone()),
        ConicSpec::Parabola { .. } => None,
    }
}

fn b_of(c: &ConicSpec) -> Rational {
    match c {
        ConicSpec::Ellipse { b, .. } | ConicSpec::Hyperbola { b, .. } => b.clone(),
        ConicSpec::Parabola { .. } => unreachable!("central conics only"),
    }
}

fn xy(points: &[parlines::conics::SingularPoint]) -> Vec<(f64, f64)> {
    points.iter().map(|p| p.xy()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 36, ..ProptestConfig::default() })]

    /// Points at distance r along the normal of the conic lie on g = 0.
    #[test]
    fn normal_offsets_lie_on_the_variety((conic, r) in conic_and_r()) {
        let g = offset_poly_closed_form(&conic, &r).unwrap().g;
        let s = common::scale(&g);
        let rf = to_f64(&r);
        let (lo, hi) = common::param_range(&conic);
        for k in 0..=60 {
            let t = lo + (hi - lo) * k as f64 / 60.0;
            let j = common::jet(&conic, t);
            let len = j.d1.0.hypot(j.d1.1);
            let n = (-j.d1.1 / len, j.d1.0 / len);
            for side in [1.0, -1.0] {
                let (x, y) = (j.p.0 + side * rf * n.0, j.p.1 + side * rf * n.1);
                let v = common::eval_xy(&g, x, y).abs() / s;
                // relative to the size of the terms at this point
                let mag = 1.0 + x.abs().max(y.abs()).powi(g.total_degree().unwrap() as i32);
                prop_assert!(v <= 1e-9 * mag, "{conic:?} r={r} t={t}: {v}");
            }
        }
    }

    #[test]
    fn singular_points_are_singular((conic, r) in conic_and_r()) {
        let rep = singular_points(&conic, &r).unwrap();
        for p in &rep.points {
            prop_assert!(p.residual_g <= 1e-9 && p.residual_grad <= 1e-9, "{conic:?} r={r}: {p:?}");
        }
    }

    /// 1 or 3 real points for the parabola, 2 or 6 for the central conics while `r < b` (the axis
/// points involve `√(b² − r²)`); away from the critical offset real and complex points add up to
/// 3 (parabola) or 8.
    #[test]
    fn regime_law((conic, r) in conic_and_r()) {
        let rep = singular_points(&conic, &r).unwrap();
        prop_assert_eq!(rep.regime, Regime::of(&conic, &r));
        let super_ = rep.regime == Regime::Supercritical;
        match conic.kind() {
            ConicKind::Parabola => prop_assert_eq!(rep.points.len(), if super_ { 3 } else { 1 }),
            _ if r < b_of(&conic) => prop_assert_eq!(rep.points.len(), if super_ { 6 } else { 2 }),
            _ => {}
        }
        // at r = b (or r = a) two points meet at the origin and are reported once
        let coincident = conic.kind() != ConicKind::Parabola && (r == b_of(&conic) || Some(&r) == a_of(&conic).as_ref());
        if rep.regime != Regime::Critical && !coincident {
            let total = if conic.kind() == ConicKind::Parabola { 3 } else { 8 };
            prop_assert_eq!(rep.points.len() + rep.complex_count, total, "{:?} r={}", conic, r);
        }
        prop_assert_eq!(rep.outside_primary_assumption, a_of(&conic).is_some_and(|a| r >= a));
        if super_ {
            prop_assert!(rep.count(PointTag::Split) > 0);
        } else {
            prop_assert_eq!(rep.count(PointTag::Split), 0);
        }
    }

    /// Above the critical offset the split points are the cusps of the inner parallel line.
    #[test]
    fn split_points_follow_curvature((conic, k) in (any_conic(), 7i64..=20)) {
        let r = r_crit(&conic) * rat(k, 6);
        prop_assume!(a_of(&conic).is_none_or(|a| r < a));
        let rep = singular_points(&conic, &r).unwrap();
        let split: Vec<(f64, f64)> = rep.points.iter().filter(|p| p.tag == PointTag::Split).map(|p| p.xy()).collect();
        let cusps = common::cusps(&conic, to_f64(&r));
        let res = common::same_points(&split, &cusps, 1e-8);
        prop_assert!(res.is_ok(), "{conic:?} r={r}: {:?}", res);
    }

    /// Reflecting the parabola reflects the picture.
    #[test]
    fn parabola_mirror(p in small_rat(1, 6), k in 1i64..=12) {
        let r = rat(2 * k, 4) * p.clone();
        let up = singular_points(&ConicSpec::parabola(p.clone()).unwrap(), &r).unwrap();
        let down = singular_points(&ConicSpec::parabola(-p).unwrap(), &r).unwrap();
        let mirrored: Vec<(f64, f64)> = xy(&up.points).into_iter().map(|(x, y)| (x, -y)).collect();
        prop_assert!(common::same_points(&xy(&down.points), &mirrored, 1e-12).is_ok());
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, ..ProptestConfig::default() })]

    #[test]
    fn routes_agree_parabola(c in parabola(), n in 1i64..=8, d in 1i64..=3) {
        let r = rat(n, d);
        prop_assert_eq!(offset_poly_closed_form(&c, &r).unwrap().g, offset_poly_elimination(&c, &r).unwrap().g);
    }

    #[test]
    fn routes_agree_ellipse(c in ellipse(), n in 1i64..=8, d in 1i64..=3) {
        let r = rat(n, d);
        prop_assert_eq!(offset_poly_closed_form(&c, &r).unwrap().g, offset_poly_elimination(&c, &r).unwrap().g);
    }

    #[test]
    fn routes_agree_hyperbola(c in hyperbola(), n in 1i64..=8, d in 1i64..=3) {
        let r = rat(n, d);
        prop_assert_eq!(offset_poly_closed_form(&c, &r).unwrap().g, offset_poly_elimination(&c, &r).unwrap().g);
    }

    #[test]
    fn singular_routes_agree((conic, r) in conic_and_r()) {
        let a = singular_points(&conic, &r).unwrap();
        let b = singular_points_via_elimination(&conic, &r).unwrap();
        prop_assert_eq!(a.regime, b.regime);
        let res = common::same_points(&xy(&b.points), &xy(&a.points), 1e-9);
        prop_assert!(res.is_ok(), "{conic:?} r={r}: {:?}", res);
        for p in &a.points {
            let q = b.points.iter().find(|q| (q.xy().0 - p.xy().0).abs() <= 1e-9 && (q.xy().1 - p.xy().1).abs() <= 1e-9).unwrap();
            prop_assert_eq!(p.tag, q.tag);
        }
    }

    /// Nodes of random layered meshes sit on their layers and elements index valid nodes.
    #[test]
    fn mesh_structure(b in 1i64..=3, extra in 1i64..=3, layers in 1usize..=3, stations in 2usize..=6) {
        let (a, b) = (b + extra, b);
        let ellipse = ConicSpec::ellipse(rat(a, 1), rat(b, 1)).unwrap();
        let rc = to_f64(&r_crit(&ellipse));
        let offsets: Vec<f64> = (1..=layers).map(|k| rc * k as f64 / (layers + 1) as f64).collect();
        let af = a as f64;
        let ys: Vec<f64> = (0..stations).map(|k| af * 0.9 - 1.8 * af * k as f64 / (stations - 1) as f64).collect();
        let spec = MeshSpec::new(ellipse.clone(), offsets.clone(), ys.clone()).unwrap();
        let mesh = generate_mesh(&spec).unwrap();
        prop_assert_eq!(mesh.rows, 2 * layers + 1);
        prop_assert_eq!(mesh.cols, 2 * stations + 2);
        prop_assert_eq!(mesh.quad4.len(), (mesh.rows - 1) * mesh.cols);
        prop_assert!(mesh.quad4.iter().flatten().chain(mesh.quad9.iter().flatten()).all(|&i| i < mesh.nodes.len()));
        // middle row on the ellipse x²/b² + y²/a² = 1
        let bf = b as f64;
        for j in 0..mesh.cols {
            let p = mesh.node(layers, j);
            prop_assert!((p.x * p.x / (bf * bf) + p.y * p.y / (af * af) - 1.0).abs() < 1e-12);
        }
        // outer rows are at distance r from the ellipse along the normal of their column
        for (i, r) in offsets.iter().enumerate() {
            let outer = layers - 1 - i;
            let inner = layers + 1 + i;
            for j in 0..mesh.cols {
                let base = mesh.node(layers, j);
                prop_assert!((mesh.node(outer, j).dist(&base) - r).abs() < 1e-9);
                prop_assert!((mesh.node(inner, j).dist(&base) - r).abs() < 1e-9);
            }
        }
    }
}

//! Property tests over random parameters.

use hopf_cone::holonomy::{build_h3, build_h4, relation_residual, triangle_split_check};
use hopf_cone::hopf::{fibre_over, hopf_map, rotation_about_fibre, BasePoint};
use hopf_cone::spherical_trig::{residuals_h3, solve_quadrangle, solve_triangle, triangle_exists};
use hopf_cone::su2::{distance, translation_length_and_jump, Isometry};
use hopf_cone::Su2Element;
use proptest::prelude::*;
use std::f64::consts::{PI, TAU};

fn unit() -> impl Strategy<Value = Su2Element> {
    prop::array::uniform4(-1.0f64..1.0)
        .prop_filter("near zero", |v| v.iter().map(|x| x * x).sum::<f64>() > 1e-4)
        .prop_map(|v| Su2Element::new(v[0], v[1], v[2], v[3]))
}

fn h4_params() -> impl Strategy<Value = (f64, f64)> {
    (PI + 1e-3..TAU - 1e-3, 1e-4..1.0 - 1e-4).prop_map(|(a, rel)| {
        let lo = 0.5 * (a - PI);
        (a, lo + rel * (0.5 * PI - lo))
    })
}

fn h3_params() -> impl Strategy<Value = (f64, f64, f64)> {
    (0.01..TAU - 0.01, 0.01..TAU - 0.01, 0.01..TAU - 0.01)
        .prop_filter("inadmissible", |&(a, b, g)| triangle_exists(a, b, g))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn quadrangle_identities((a, tau) in h4_params()) {
        let q = solve_quadrangle(a, tau).unwrap();
        let (l1, l2) = (q.tau, q.ell2);
        prop_assert!((l1.sin() * l2.sin() + (0.5 * a).cos()).abs() < 1e-12);
        prop_assert!((q.phi.cos() * (0.5 * a).sin() - l1.cos() * l2.cos()).abs() < 1e-12);
        // cos ψ = tan ℓ₁ cot φ, multiplied through by sin φ cos ℓ₁
        prop_assert!((q.psi.cos() * q.phi.sin() * l1.cos() - l1.sin() * q.phi.cos()).abs() < 1e-12);
        prop_assert!((q.b1.cos() * l2.cos() - q.phi.cos()).abs() < 1e-12);
        prop_assert!((q.b2.cos() * l1.cos() - q.phi.cos()).abs() < 1e-12);
        for x in [l2, q.phi, q.psi, q.b1, q.b2] {
            prop_assert!((0.0..=0.5 * PI).contains(&x));
        }
        prop_assert!(q.phi < 0.5 * PI);
    }

    #[test]
    fn triangle_solution_zeroes_residuals((a, b, g) in h3_params()) {
        let t = solve_triangle(a, b, g).unwrap();
        let r = residuals_h3(a, b, g, t.phi, t.psi, t.theta);
        prop_assert!(r.iter().all(|x| x.abs() < 1e-10), "{:?}", r);
        // sine rule
        prop_assert!((t.phi.sin() * (0.5 * b).sin() - t.theta.sin() * (0.5 * g).sin()).abs() < 1e-12);
        prop_assert!(relation_residual(&build_h3(a, b, g).unwrap()) < 1e-10);
    }

    #[test]
    fn isometries_preserve_distance(l in unit(), r in unit(), p in unit(), q in unit()) {
        let g = Isometry::new(l, r);
        prop_assert!((distance(&g.apply(&p), &g.apply(&q)) - distance(&p, &q)).abs() < 1e-12);
        prop_assert!((-g).apply(&p).max_entry_diff(&g.apply(&p)) < 1e-15);
    }

    #[test]
    fn translation_is_conjugation_invariant(a in unit(), b in unit(), c in unit(), d in unit()) {
        let m = Isometry::new(a, b);
        let g = Isometry::new(c, d);
        let t1 = translation_length_and_jump(&m);
        let t2 = translation_length_and_jump(&m.conjugate_by(&g));
        prop_assert!((t1.delta - t2.delta).abs() < 1e-10);
        prop_assert!((t1.nu - t2.nu).abs() < 1e-10);
        let t3 = translation_length_and_jump(&(-m));
        prop_assert!((t1.delta - t3.delta).abs() < 1e-10);
    }

    #[test]
    fn fibres_project_to_their_base(psi in 0.0..TAU, c in -1.0f64..1.0, t in 0.0..TAU) {
        let b = BasePoint::from_polar(psi, c.acos());
        let h = hopf_map(&fibre_over(&b).point(t));
        prop_assert!((h.a - b.a).abs().max((h.b - b.b).abs()).max((h.c - b.c).abs()) < 1e-10);
    }

    #[test]
    fn rotations_fix_their_fibre(psi in 0.0..TAU, theta in 0.0..PI, omega in 0.0..TAU, t in 0.0..TAU) {
        let g = rotation_about_fibre(psi, theta, omega);
        let x = fibre_over(&BasePoint::from_polar(psi, theta)).point(t);
        prop_assert!(distance(&g.apply(&x), &x) < 1e-10);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn h4_relations_and_split((a, tau) in h4_params()) {
        prop_assert!(relation_residual(&build_h4(a, tau).unwrap()) < 1e-10);
        let s = triangle_split_check(a, tau).unwrap();
        prop_assert!(s.r1 < 1e-10 && s.r2 < 1e-10, "{:?}", s);
    }
}

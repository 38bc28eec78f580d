//! Common perpendiculars against a brute-force minimisation of the
//! distance between two great circles.

mod common;

use hopf_cone::hopf::{fibre_distance, fibre_over};
use hopf_cone::su2::{common_perpendicular, distance};
use hopf_cone::GreatCircle;
use std::f64::consts::TAU;

const GRID: usize = 2000;

fn dist_at(c1: &GreatCircle, c2: &GreatCircle, s: f64, t: f64) -> f64 {
    distance(&c1.point(s), &c2.point(t))
}

/// Grid minimum over `GRID × GRID` parameters followed by compass search.
fn brute_force(c1: &GreatCircle, c2: &GreatCircle) -> (f64, f64) {
    let h = TAU / GRID as f64;
    let pts1: Vec<_> = (0..GRID).map(|i| c1.point(i as f64 * h)).collect();
    let pts2: Vec<_> = (0..GRID).map(|j| c2.point(j as f64 * h)).collect();
    let (mut best, mut bs, mut bt) = (f64::INFINITY, 0.0, 0.0);
    for (i, p) in pts1.iter().enumerate() {
        for (j, q) in pts2.iter().enumerate() {
            let d = distance(p, q);
            if d < best {
                best = d;
                bs = i as f64 * h;
                bt = j as f64 * h;
            }
        }
    }
    let grid_min = best;
    let mut step = h;
    while step > 1e-15 {
        let mut moved = false;
        for (ds, dt) in [(step, 0.0), (-step, 0.0), (0.0, step), (0.0, -step)] {
            let d = dist_at(c1, c2, bs + ds, bt + dt);
            if d < best {
                best = d;
                bs += ds;
                bt += dt;
                moved = true;
            }
        }
        if !moved {
            step *= 0.5;
        }
    }
    (best, grid_min)
}

#[test]
fn random_pairs_match_brute_force() {
    let mut rng = common::rng(11);
    for _ in 0..5 {
        let (c1, c2) = (common::circle(&mut rng), common::circle(&mut rng));
        let p = common_perpendicular(&c1, &c2).unwrap();
        let (oracle, grid_min) = brute_force(&c1, &c2);
        assert!((p.delta - oracle).abs() < 1e-8, "{} vs {oracle}", p.delta);
        assert!(p.delta <= grid_min + 1e-8);
        assert!((distance(&p.foot1, &p.foot2) - p.delta).abs() < 1e-10);
    }
}

#[test]
fn fibre_pairs_are_equidistant() {
    let mut rng = common::rng(12);
    for _ in 0..100 {
        let (b1, b2) = (common::base(&mut rng), common::base(&mut rng));
        let (f1, f2) = (fibre_over(&b1), fibre_over(&b2));
        let p = common_perpendicular(&f1, &f2).unwrap();
        assert!((p.delta - fibre_distance(&b1, &b2)).abs() < 1e-8);
        // every point of f1 is at the same distance from f2
        for k in 0..16 {
            let x = f1.point(k as f64 * TAU / 16.0);
            let t = f2.nearest_parameter(&x);
            assert!((distance(&x, &f2.point(t)) - p.delta).abs() < 1e-10);
        }
    }
    let mut rng = common::rng(13);
    for _ in 0..2 {
        let (b1, b2) = (common::base(&mut rng), common::base(&mut rng));
        let (f1, f2) = (fibre_over(&b1), fibre_over(&b2));
        let (oracle, _) = brute_force(&f1, &f2);
        assert!((oracle - fibre_distance(&b1, &b2)).abs() < 1e-8);
    }
}

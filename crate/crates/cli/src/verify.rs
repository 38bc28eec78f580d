//! The `verify` command: randomized invariant suites with a fixed seed.

use std::f64::consts::{PI, TAU};

use hopf_cone::holonomy::{
    h3_axes, h4_axes, relation_residual, triangle_split_check, ConeData, HolonomyRep, LinkKind,
};
use hopf_cone::hopf::{
    fibre_distance, fibre_over, hopf_map, measured_fibre_distance, rotation_about_fibre,
};
use hopf_cone::invariants::{
    h3_length, h3_volume, h4_length, h4_volume, lifted_h3_length, lifted_h4_length,
    schlafli_volume, SchlafliTarget,
};
use hopf_cone::spherical_trig::{solve_quadrangle, solve_triangle};
use hopf_cone::su2::{distance, parameter_distance, translation_length_and_jump};
use hopf_cone::{BasePoint, GreatCircle, Isometry, Result, Su2Element};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Size of the perturbation applied by `--inject-fault`.
pub const FAULT: f64 = 1e-3;

pub const SUITES: &[&str] = &[
    "isometry_invariance",
    "geodesic_speed",
    "hopf_round_trip",
    "fibre_rotation",
    "equidistance",
    "translation_invariance",
    "h3_relations",
    "h4_relations",
    "quadrangle_identities",
    "length_consistency",
    "volume_consistency",
];

#[derive(Debug, Clone, Serialize)]
pub struct SuiteResult {
    pub name: &'static str,
    pub checks: usize,
    pub max_error: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub samples: usize,
    pub steps: usize,
    pub tol: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub injected_fault: Option<String>,
    pub suites: Vec<SuiteResult>,
    pub passed: bool,
}

pub struct VerifyConfig {
    pub seed: u64,
    pub samples: usize,
    pub steps: usize,
    pub tol: f64,
    pub fault: Option<String>,
}

fn unit(rng: &mut ChaCha8Rng) -> Su2Element {
    loop {
        let v: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
        let n2: f64 = v.iter().map(|x| x * x).sum();
        if n2 > 1e-4 && n2 <= 1.0 {
            return Su2Element::new(v[0], v[1], v[2], v[3]);
        }
    }
}

fn base(rng: &mut ChaCha8Rng) -> (f64, f64) {
    let c: f64 = rng.gen_range(-1.0..1.0);
    (rng.gen_range(0.0..TAU), c.acos())
}

fn triple(rng: &mut ChaCha8Rng) -> (f64, f64, f64) {
    loop {
        let t: [f64; 3] = std::array::from_fn(|_| rng.gen_range(0.05..TAU - 0.05));
        if hopf_cone::spherical_trig::triangle_exists(t[0], t[1], t[2]) {
            return (t[0], t[1], t[2]);
        }
    }
}

fn h4_pair(rng: &mut ChaCha8Rng) -> (f64, f64) {
    let a = rng.gen_range(PI + 0.01..TAU - 0.01);
    let lo = 0.5 * (a - PI);
    (a, lo + rng.gen_range(0.01..0.99) * (0.5 * PI - lo))
}

struct Suite {
    name: &'static str,
    checks: usize,
    max_error: f64,
}

impl Suite {
    fn new(name: &'static str) -> Self {
        Suite {
            name,
            checks: 0,
            max_error: 0.0,
        }
    }

    fn record(&mut self, err: f64) {
        self.checks += 1;
        // NaN must fail, so it wins the max
        if err.is_nan() || err > self.max_error {
            self.max_error = err;
        }
    }

    fn finish(self, tolerance: f64) -> SuiteResult {
        SuiteResult {
            name: self.name,
            checks: self.checks,
            max_error: self.max_error,
            tolerance,
            passed: self.max_error <= tolerance,
        }
    }
}

pub fn run_verify(cfg: &VerifyConfig) -> Result<VerifyReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let n = cfg.samples.max(1);
    let eps = |name: &str| {
        if cfg.fault.as_deref() == Some(name) {
            FAULT
        } else {
            0.0
        }
    };
    let mut suites = Vec::new();

    let mut s = Suite::new("isometry_invariance");
    let e = eps(s.name);
    for _ in 0..n {
        let g = Isometry::new(unit(&mut rng), unit(&mut rng));
        let (p, q) = (unit(&mut rng), unit(&mut rng));
        let g2 = Isometry::new(g.left * Su2Element::generic_rotation(e), g.right);
        s.record((distance(&g.apply(&p), &g2.apply(&q)) - distance(&p, &q)).abs());
    }
    suites.push(s.finish(1e-12));

    let mut s = Suite::new("geodesic_speed");
    let e = eps(s.name);
    for _ in 0..n {
        let c = loop {
            if let Ok(c) = GreatCircle::through(unit(&mut rng), unit(&mut rng)) {
                break c;
            }
        };
        let (t, u) = (rng.gen_range(0.0..TAU), rng.gen_range(0.0..TAU));
        s.record((distance(&c.point(t), &c.point(u)) - parameter_distance(t, u + e)).abs());
    }
    suites.push(s.finish(1e-12));

    let mut s = Suite::new("hopf_round_trip");
    let e = eps(s.name);
    for _ in 0..n {
        let (psi, theta) = base(&mut rng);
        let b = BasePoint::from_polar(psi, theta);
        let f = fibre_over(&BasePoint::from_polar(psi + e, theta));
        for k in 0..16 {
            let h = hopf_map(&f.point(k as f64 * TAU / 16.0));
            s.record(
                (h.a - b.a)
                    .abs()
                    .max((h.b - b.b).abs())
                    .max((h.c - b.c).abs()),
            );
        }
    }
    suites.push(s.finish(1e-10));

    let mut s = Suite::new("fibre_rotation");
    let e = eps(s.name);
    for _ in 0..n {
        let (psi, theta) = base(&mut rng);
        let omega = rng.gen_range(0.0..TAU);
        let g = rotation_about_fibre(psi + e, theta, omega);
        let f = fibre_over(&BasePoint::from_polar(psi, theta));
        for k in 0..16 {
            let x = f.point(k as f64 * TAU / 16.0);
            s.record(distance(&g.apply(&x), &x));
        }
    }
    suites.push(s.finish(1e-10));

    let mut s = Suite::new("equidistance");
    let e = eps(s.name);
    for _ in 0..n {
        let ((p1, t1), (p2, t2)) = (base(&mut rng), base(&mut rng));
        let (b1, b2) = (BasePoint::from_polar(p1, t1), BasePoint::from_polar(p2, t2));
        let measured = measured_fibre_distance(&b1, &b2)?;
        let predicted = fibre_distance(&b1, &BasePoint::from_polar(p2, t2 + e));
        s.record((measured - predicted).abs());
    }
    suites.push(s.finish(1e-8));

    let mut s = Suite::new("translation_invariance");
    let e = eps(s.name);
    for _ in 0..n {
        let m = Isometry::new(unit(&mut rng), unit(&mut rng));
        let g = Isometry::new(unit(&mut rng), unit(&mut rng));
        let c = m.conjugate_by(&g);
        let c = Isometry::new(c.left * Su2Element::generic_rotation(e), c.right);
        let (t1, t2) = (
            translation_length_and_jump(&m),
            translation_length_and_jump(&c),
        );
        s.record((t1.delta - t2.delta).abs().max((t1.nu - t2.nu).abs()));
    }
    suites.push(s.finish(1e-10));

    let mut s = Suite::new("h3_relations");
    let e = eps(s.name);
    for _ in 0..n {
        let (a, b, g) = triple(&mut rng);
        let t = solve_triangle(a, b, g)?;
        let mut axes = h3_axes(&t);
        axes[1].theta += e;
        let rep = HolonomyRep::from_axes(LinkKind::H3, axes, ConeData::Triangle(t));
        let tr_l = (rep.central.left.trace() + 2.0).abs();
        let tr_r = (rep.central.right.trace() - 2.0 * (0.5 * (a + b + g)).cos()).abs();
        s.record(relation_residual(&rep).max(tr_l).max(tr_r));
    }
    suites.push(s.finish(cfg.tol));

    let mut s = Suite::new("h4_relations");
    let e = eps(s.name);
    for _ in 0..n {
        let (a, tau) = h4_pair(&mut rng);
        let q = solve_quadrangle(a, tau)?;
        let mut axes = h4_axes(&q);
        axes[0].psi += e;
        let rep = HolonomyRep::from_axes(LinkKind::H4, axes, ConeData::Quadrangle(q));
        let split = triangle_split_check(a, tau)?;
        let tr_r = (rep.central.right.trace() - 2.0 * (2.0 * a).cos()).abs();
        s.record(
            relation_residual(&rep)
                .max(split.r1)
                .max(split.r2)
                .max(tr_r),
        );
    }
    suites.push(s.finish(cfg.tol));

    let mut s = Suite::new("quadrangle_identities");
    let e = eps(s.name);
    for _ in 0..n {
        let (a, tau) = h4_pair(&mut rng);
        let q = solve_quadrangle(a, tau)?;
        let (l1, l2) = (q.tau, q.ell2);
        let half = 0.5 * (a + e);
        s.record((l1.sin() * l2.sin() + half.cos()).abs());
        s.record((q.phi.cos() * half.sin() - l1.cos() * l2.cos()).abs());
        s.record((q.psi.cos() * q.phi.sin() * l1.cos() - l1.sin() * q.phi.cos()).abs());
    }
    suites.push(s.finish(1e-12));

    let mut s = Suite::new("length_consistency");
    let e = eps(s.name);
    for _ in 0..n {
        let (a, b, g) = triple(&mut rng);
        s.record((lifted_h3_length(a, b, g)? - h3_length(a + e, b, g)?).abs());
        let (a, tau) = h4_pair(&mut rng);
        s.record((lifted_h4_length(a, tau)? - h4_length(a + e)?).abs());
    }
    suites.push(s.finish(cfg.tol));

    let mut s = Suite::new("volume_consistency");
    let e = eps(s.name);
    for _ in 0..3 {
        let (a, b, g) = triple(&mut rng);
        let v = schlafli_volume(
            &SchlafliTarget::H3 {
                alpha: a,
                beta: b,
                gamma: g,
            },
            cfg.steps,
        )?;
        s.record((v - h3_volume(a + e, b, g)?).abs());
    }
    for _ in 0..2 {
        let (a, tau) = h4_pair(&mut rng);
        let v = schlafli_volume(&SchlafliTarget::H4 { alpha: a, tau }, cfg.steps)?;
        s.record((v - h4_volume(a + e)?).abs());
    }
    suites.push(s.finish(1e-8));

    let passed = suites.iter().all(|s| s.passed);
    Ok(VerifyReport {
        seed: cfg.seed,
        samples: n,
        steps: cfg.steps,
        tol: cfg.tol,
        injected_fault: cfg.fault.clone(),
        suites,
        passed,
    })
}

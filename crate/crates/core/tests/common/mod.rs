#![allow(dead_code)]

use hopf_cone::{BasePoint, GreatCircle, Su2Element};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{PI, TAU};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn unit(rng: &mut impl Rng) -> Su2Element {
    loop {
        let v: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
        let n2: f64 = v.iter().map(|x| x * x).sum();
        if n2 > 1e-4 && n2 <= 1.0 {
            return Su2Element::new(v[0], v[1], v[2], v[3]);
        }
    }
}

pub fn circle(rng: &mut impl Rng) -> GreatCircle {
    loop {
        if let Ok(c) = GreatCircle::through(unit(rng), unit(rng)) {
            return c;
        }
    }
}

pub fn base(rng: &mut impl Rng) -> BasePoint {
    let c: f64 = rng.gen_range(-1.0..1.0);
    let psi: f64 = rng.gen_range(0.0..TAU);
    BasePoint::from_polar(psi, c.acos())
}

/// Admissible H3 triple, rejection-sampled away from the boundary.
pub fn admissible_triple(rng: &mut impl Rng) -> (f64, f64, f64) {
    loop {
        let t: [f64; 3] = std::array::from_fn(|_| rng.gen_range(0.05..TAU - 0.05));
        let (a, b, g) = (t[0], t[1], t[2]);
        let m = 1e-3;
        if TAU - g + m < a + b && a + b < TAU + g - m && -TAU + g + m < a - b && a - b < TAU - g - m
        {
            return (a, b, g);
        }
    }
}

/// Admissible `(α, τ)` with `τ` at relative position in `(margin, 1 − margin)`.
pub fn admissible_h4(rng: &mut impl Rng, margin: f64) -> (f64, f64) {
    let a = rng.gen_range(PI + 0.01..TAU - 0.01);
    let lo = 0.5 * (a - PI);
    let rel = rng.gen_range(margin..1.0 - margin);
    (a, lo + rel * (0.5 * PI - lo))
}

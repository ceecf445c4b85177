//! Test-only helpers: a double-double evaluator for the refined-mesh
//! constants and a seeded random tetrahedron sampler.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wfsplit::geometry::{signed_volume, tet_diameter, Point3};

/// Unevaluated sum `hi + lo` with about 106 bits of precision.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn quick_two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    Dd { hi: s, lo: b - (s - a) }
}

impl Dd {
    pub const PI: Dd = Dd {
        hi: std::f64::consts::PI,
        lo: 1.224_646_799_147_353_2e-16,
    };

    pub fn from(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        let (t, f) = two_sum(self.lo, o.lo);
        let r = quick_two_sum(s, e + t);
        quick_two_sum(r.hi, r.lo + f)
    }

    pub fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }

    pub fn sub(self, o: Dd) -> Dd {
        self.add(o.neg())
    }

    pub fn mul(self, o: Dd) -> Dd {
        let p = self.hi * o.hi;
        let e = self.hi.mul_add(o.hi, -p);
        quick_two_sum(p, e + (self.hi * o.lo + self.lo * o.hi))
    }

    pub fn div(self, o: Dd) -> Dd {
        let q1 = self.hi / o.hi;
        let r = self.sub(o.mul(Dd::from(q1)));
        let q2 = r.hi / o.hi;
        let r = r.sub(o.mul(Dd::from(q2)));
        let q3 = r.hi / o.hi;
        quick_two_sum(q1, q2).add(Dd::from(q3))
    }

    pub fn sqrt(self) -> Dd {
        if self.hi <= 0.0 {
            return Dd::from(0.0);
        }
        let mut s = Dd::from(self.hi.sqrt());
        for _ in 0..2 {
            s = s.add(self.sub(s.mul(s)).div(s.mul(Dd::from(2.0))));
        }
        s
    }
}

/// `(frak_c2, c2, c1)` from the literal formulas
/// `frak_c2 = (2 c0)^-1 sqrt(-1 + 2 / (1 + sqrt(1 - c0^-2)))`,
/// `c2 = min(frak_c2, 1 / (3 c0))`, `c1 = 2 pi c0^3 / c2`.
pub fn oracle_constants(c0: Dd) -> (Dd, Dd, Dd) {
    let one = Dd::from(1.0);
    let two = Dd::from(2.0);
    let inv_sq = one.div(c0.mul(c0));
    let s = one.sub(inv_sq).sqrt();
    let inner = two.div(one.add(s)).sub(one);
    let frak = inner.sqrt().div(two.mul(c0));
    let alt = one.div(Dd::from(3.0).mul(c0));
    let c2 = if frak.to_f64() <= alt.to_f64() { frak } else { alt };
    let c1 = two.mul(Dd::PI).mul(c0.mul(c0).mul(c0)).div(c2);
    (frak, c2, c1)
}

/// Seeded random tetrahedra in `[-1, 1]^3`, positively oriented, rejecting
/// those with `|T| / h^3` below `min_quality`.
pub fn random_tets(count: usize, seed: u64, min_quality: f64) -> Vec<[Point3; 4]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let mut p: [Point3; 4] = std::array::from_fn(|_| {
            Point3::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        let vol = signed_volume(p[0], p[1], p[2], p[3]);
        let h = tet_diameter(&p);
        if vol.abs() < min_quality * h * h * h {
            continue;
        }
        if vol < 0.0 {
            p.swap(2, 3);
        }
        out.push(p);
    }
    out
}

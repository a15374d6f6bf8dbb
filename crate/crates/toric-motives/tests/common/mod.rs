//! Shared helpers for the integration suites: deterministic random fans,
//! unimodular basis changes, and small brute-force oracles.

use rand::rngs::StdRng;
use rand::Rng;

use toric_motives::fan::{Cone, Fan};
use toric_motives::lattice::{det2, lv, primitive, LatticeVector};

pub fn fan2(rays: &[[i64; 2]], cones: &[&[usize]]) -> Fan {
    Fan::new(
        2,
        rays.iter().map(|r| lv(r)).collect(),
        cones.iter().map(|c| Cone::new(c.to_vec())).collect(),
    )
    .unwrap()
}

pub fn fan3(rays: &[[i64; 3]], cones: &[&[usize]]) -> Fan {
    Fan::new(
        3,
        rays.iter().map(|r| lv(r)).collect(),
        cones.iter().map(|c| Cone::new(c.to_vec())).collect(),
    )
    .unwrap()
}

/// Angular order: upper half-plane first, then by counterclockwise angle.
fn angular_key(v: &LatticeVector) -> (u8, LatticeVector) {
    let (x, y) = (v.coords()[0], v.coords()[1]);
    let half = if y > 0 || (y == 0 && x > 0) { 0 } else { 1 };
    (half, v.clone())
}

fn angular_less(a: &LatticeVector, b: &LatticeVector) -> bool {
    let (ha, _) = angular_key(a);
    let (hb, _) = angular_key(b);
    if ha != hb {
        return ha < hb;
    }
    det2(a, b).unwrap() > 0
}

/// A complete rank-2 fan with `3..=max_rays` random primitive rays of
/// coordinates bounded by 10, maximal cones the consecutive sectors.
pub fn random_complete_fan(rng: &mut StdRng, max_rays: usize) -> Fan {
    loop {
        let want = rng.random_range(3..=max_rays);
        let mut rays: Vec<LatticeVector> = Vec::new();
        let mut attempts = 0;
        while rays.len() < want && attempts < 200 {
            attempts += 1;
            let x = rng.random_range(-10..=10i64);
            let y = rng.random_range(-10..=10i64);
            if x == 0 && y == 0 {
                continue;
            }
            let p = primitive(&lv(&[x, y])).unwrap();
            if !rays.contains(&p) {
                rays.push(p);
            }
        }
        if rays.len() < 3 {
            continue;
        }
        // sort counterclockwise and require every consecutive gap < pi
        rays.sort_by(|a, b| {
            if a == b {
                std::cmp::Ordering::Equal
            } else if angular_less(a, b) {
                std::cmp::Ordering::Less
            } else {
                std::cmp::Ordering::Greater
            }
        });
        let n = rays.len();
        let gaps_ok = (0..n).all(|i| det2(&rays[i], &rays[(i + 1) % n]).unwrap() > 0);
        if !gaps_ok {
            continue;
        }
        let cones: Vec<Cone> = (0..n).map(|i| Cone::new(vec![i, (i + 1) % n])).collect();
        let fan = Fan::new(2, rays, cones).unwrap();
        if fan.validate().map(|p| p.is_complete).unwrap_or(false) {
            return fan;
        }
    }
}

/// A random word of length <= 5 in the standard generators of GL_2(Z).
pub fn random_gl2(rng: &mut StdRng) -> [[i64; 2]; 2] {
    const GENS: [[[i64; 2]; 2]; 4] = [
        [[0, -1], [1, 0]],  // rotation
        [[0, 1], [-1, 0]],  // inverse rotation
        [[1, 1], [0, 1]],   // shear
        [[1, -1], [0, 1]],  // inverse shear
    ];
    let mut m = [[1, 0], [0, 1]];
    for _ in 0..rng.random_range(0..=5usize) {
        let g = GENS[rng.random_range(0..GENS.len())];
        m = mat_mul(g, m);
    }
    if rng.random_bool(0.5) {
        // allow determinant -1 words too
        m = mat_mul([[1, 0], [0, -1]], m);
    }
    m
}

pub fn mat_mul(a: [[i64; 2]; 2], b: [[i64; 2]; 2]) -> [[i64; 2]; 2] {
    [
        [a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]],
        [a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]],
    ]
}

#[allow(dead_code)] // each test target compiles its own copy of this module
pub fn apply_gl2(m: [[i64; 2]; 2], fan: &Fan) -> Fan {
    let rays = fan
        .rays()
        .iter()
        .map(|r| {
            let (x, y) = (r.coords()[0], r.coords()[1]);
            lv(&[m[0][0] * x + m[0][1] * y, m[1][0] * x + m[1][1] * y])
        })
        .collect();
    Fan::new(2, rays, fan.max_cones().to_vec()).unwrap()
}

/// A cone of multiplicity `d` in a random lattice basis: the image of the
/// normalized cone `Cone((0,1), (d,-k))`.
pub fn random_cone_of_multiplicity(rng: &mut StdRng, d: i64) -> (LatticeVector, LatticeVector) {
    let k = loop {
        if d == 1 {
            break 0;
        }
        let k = rng.random_range(1..d);
        if toric_motives::lattice::gcd(d, k) == 1 {
            break k;
        }
    };
    let m = random_gl2(rng);
    let u1 = lv(&[m[0][1], m[1][1]]);
    let u2 = lv(&[m[0][0] * d - m[0][1] * k, m[1][0] * d - m[1][1] * k]);
    (u1, u2)
}

//! Exact rational polyhedral computations in ambient rank <= 3.
//!
//! Everything here is internal plumbing for the fan, resolution and
//! cellularity modules: Fourier–Motzkin feasibility over Q, conversion between
//! generator and facet descriptions of cones, and the recursive test whether a
//! polyhedron is covered by a finite union of cones.

use crate::lattice::{gcd, Int, IntegerMatrix};

/// `coef . x >= rhs`, or `> rhs` when `strict`.
#[derive(Clone, Debug)]
pub(crate) struct Constraint {
    pub coef: Vec<i128>,
    pub rhs: i128,
    pub strict: bool,
}

impl Constraint {
    pub fn ge(coef: Vec<i128>, rhs: i128) -> Self {
        Constraint { coef, rhs, strict: false }
    }

    pub fn gt(coef: Vec<i128>, rhs: i128) -> Self {
        Constraint { coef, rhs, strict: true }
    }

    fn reduce(&mut self) {
        let mut g = self.rhs.unsigned_abs();
        for c in &self.coef {
            g = gcd_u128(g, c.unsigned_abs());
        }
        if g > 1 {
            let g = g as i128;
            for c in &mut self.coef {
                *c /= g;
            }
            self.rhs /= g;
        }
    }

    fn is_constant(&self) -> bool {
        self.coef.iter().all(|&c| c == 0)
    }

    fn constant_holds(&self) -> bool {
        if self.strict {
            0 > self.rhs
        } else {
            0 >= self.rhs
        }
    }
}

fn gcd_u128(a: u128, b: u128) -> u128 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = b;
        b = a % b;
        a = t;
    }
    a
}

/// Decide feasibility of a mixed strict/non-strict rational linear system by
/// Fourier–Motzkin elimination. Exact; exponential in the worst case but the
/// systems here have <= 3 variables and a few dozen constraints.
pub(crate) fn feasible(cons: &[Constraint], dim: usize) -> bool {
    let mut active: Vec<Constraint> = Vec::new();
    for c in cons {
        if c.is_constant() {
            if !c.constant_holds() {
                return false;
            }
        } else {
            let mut c = c.clone();
            c.reduce();
            active.push(c);
        }
    }
    for var in 0..dim {
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        let mut rest = Vec::new();
        for c in active {
            match c.coef[var].signum() {
                1 => pos.push(c),
                -1 => neg.push(c),
                _ => rest.push(c),
            }
        }
        for p in &pos {
            for n in &neg {
                let (a, b) = (p.coef[var], -n.coef[var]);
                let coef: Vec<i128> =
                    p.coef.iter().zip(&n.coef).map(|(pc, nc)| b * pc + a * nc).collect();
                let mut c = Constraint {
                    coef,
                    rhs: b * p.rhs + a * n.rhs,
                    strict: p.strict || n.strict,
                };
                c.reduce();
                if c.is_constant() {
                    if !c.constant_holds() {
                        return false;
                    }
                } else {
                    rest.push(c);
                }
            }
        }
        active = rest;
    }
    active.iter().all(Constraint::constant_holds)
}

/// Facet description of a rational cone: `{ x : <n, x> >= 0, <e, x> = 0 }`.
#[derive(Clone, Debug, Default)]
pub(crate) struct HRep {
    pub normals: Vec<Vec<Int>>,
    pub equalities: Vec<Vec<Int>>,
}

impl HRep {
    pub fn contains(&self, p: &[Int]) -> bool {
        self.normals.iter().all(|n| dot(n, p) >= 0) && self.equalities.iter().all(|e| dot(e, p) == 0)
    }

    /// All defining inequalities, equalities expanded into pairs.
    pub fn inequality_rows(&self) -> Vec<Vec<Int>> {
        let mut rows = self.normals.clone();
        for e in &self.equalities {
            rows.push(e.clone());
            rows.push(e.iter().map(|&c| -c).collect());
        }
        rows
    }

    /// Constraints cutting out this cone translated by `shift`.
    pub fn shifted_constraints(&self, shift: Option<&[Int]>) -> Vec<Constraint> {
        self.inequality_rows()
            .into_iter()
            .map(|row| {
                let rhs = shift.map_or(0, |u| dot(&row, u) as i128);
                Constraint::ge(row.iter().map(|&c| c as i128).collect(), rhs)
            })
            .collect()
    }
}

pub(crate) fn dot(a: &[Int], b: &[Int]) -> Int {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn scale_to_primitive(v: &mut [Int]) {
    let g = v.iter().fold(0, |g, &c| gcd(g, c));
    if g > 1 {
        for c in v.iter_mut() {
            *c /= g;
        }
    }
}

fn cross(a: &[Int], b: &[Int]) -> Vec<Int> {
    vec![a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn rot2(a: &[Int]) -> Vec<Int> {
    vec![-a[1], a[0]]
}

/// Rank of a set of integer vectors.
pub(crate) fn rank_of(rows: &[Vec<Int>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    crate::lattice::smith_normal_form(&IntegerMatrix::from_rows(rows)).rank
}

/// Basis of the saturated integer kernel `{ x : rows . x = 0 }`.
pub(crate) fn int_kernel(rows: &[Vec<Int>], dim: usize) -> Vec<Vec<Int>> {
    if rows.is_empty() {
        return (0..dim).map(|i| unit(dim, i)).collect();
    }
    let m = IntegerMatrix::from_rows(rows);
    let (_, rank, _, v) = crate::lattice::smith_with_transforms(&m);
    (rank..dim)
        .map(|j| {
            let mut col: Vec<Int> =
                (0..dim).map(|i| Int::try_from(v[i][j]).expect("kernel entry fits i64")).collect();
            canonical_sign(&mut col);
            col
        })
        .collect()
}

fn unit(dim: usize, i: usize) -> Vec<Int> {
    let mut v = vec![0; dim];
    v[i] = 1;
    v
}

fn canonical_sign(v: &mut [Int]) {
    if let Some(&first) = v.iter().find(|&&c| c != 0) {
        if first < 0 {
            for c in v.iter_mut() {
                *c = -*c;
            }
        }
    }
}

/// Generator description of a cone cut out by inequalities: extreme rays of
/// the pointed quotient plus a basis of the lineality space.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct VRep {
    pub rays: Vec<Vec<Int>>,
    pub lineality: Vec<Vec<Int>>,
}

/// Extreme rays and lineality of `{ x : <n_i, x> >= 0 }` for `dim <= 3`.
///
/// Candidate directions come from intersecting `dim - lineality - 1` of the
/// constraint hyperplanes; a candidate is an extreme ray iff it satisfies all
/// constraints and its active set has exactly that rank.
pub(crate) fn hrep_extreme_rays(normals: &[Vec<Int>], dim: usize) -> VRep {
    let normals: Vec<Vec<Int>> =
        normals.iter().filter(|n| n.iter().any(|&c| c != 0)).cloned().collect();
    let lineality = int_kernel(&normals, dim);
    let l = lineality.len();
    if l == dim {
        return VRep { rays: Vec::new(), lineality };
    }
    let quotient_dim = dim - l;
    let mut candidates: Vec<Vec<Int>> = Vec::new();
    if quotient_dim == 1 {
        let c = match (dim, l) {
            (1, 0) => vec![1],
            (2, 1) => rot2(&lineality[0]),
            (3, 2) => cross(&lineality[0], &lineality[1]),
            _ => unreachable!("quotient_dim 1 cases"),
        };
        candidates.push(c);
    } else {
        match (dim, l) {
            (2, 0) => {
                for n in &normals {
                    candidates.push(rot2(n));
                }
            }
            (3, 1) => {
                for n in &normals {
                    candidates.push(cross(n, &lineality[0]));
                }
            }
            (3, 0) => {
                for i in 0..normals.len() {
                    for j in i + 1..normals.len() {
                        candidates.push(cross(&normals[i], &normals[j]));
                    }
                }
            }
            _ => unreachable!("dim <= 3"),
        }
    }
    let target_rank = quotient_dim - 1;
    let mut rays: Vec<Vec<Int>> = Vec::new();
    for mut cand in candidates {
        if cand.iter().all(|&c| c == 0) {
            continue;
        }
        scale_to_primitive(&mut cand);
        for sign in [1, -1] {
            let v: Vec<Int> = cand.iter().map(|&c| sign * c).collect();
            if normals.iter().any(|n| dot(n, &v) < 0) {
                continue;
            }
            let active: Vec<Vec<Int>> =
                normals.iter().filter(|n| dot(n, &v) == 0).cloned().collect();
            if rank_of(&active) != target_rank {
                continue;
            }
            if !rays.contains(&v) {
                rays.push(v);
            }
        }
    }
    rays.sort();
    VRep { rays, lineality }
}

/// Extreme rays and lineality of the dual `{ m : <m, g> >= 0 for all g }`.
pub(crate) fn dual_vrep(gens: &[Vec<Int>], dim: usize) -> VRep {
    hrep_extreme_rays(gens, dim)
}

/// Facet description of `Cone(gens)` via the double dual.
pub(crate) fn hrep_of_cone(gens: &[Vec<Int>], dim: usize) -> HRep {
    let dual = dual_vrep(gens, dim);
    HRep { normals: dual.rays, equalities: dual.lineality }
}

/// Is the closed region cut out by `region` covered by the union of the
/// listed cones? Exact: recursively splits off the part outside the first
/// cone, one facet at a time, until each piece is proven empty over Q.
pub(crate) fn covered_by(region: &[Constraint], cones: &[HRep], dim: usize) -> bool {
    if !feasible(region, dim) {
        return true;
    }
    let Some((first, rest)) = cones.split_first() else {
        return false;
    };
    let walls = first.inequality_rows();
    let mut piece: Vec<Constraint> = region.to_vec();
    for wall in &walls {
        let coef: Vec<i128> = wall.iter().map(|&c| c as i128).collect();
        let mut outside = piece.clone();
        outside.push(Constraint::gt(coef.iter().map(|&c| -c).collect(), 0));
        if !covered_by(&outside, rest, dim) {
            return false;
        }
        piece.push(Constraint::ge(coef, 0));
    }
    true
}

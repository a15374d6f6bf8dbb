//! Exact integer lattice primitives: vectors, gcd, 2x2 determinants, Smith
//! normal form, and Hirzebruch–Jung continued fractions.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Entries of lattice vectors and matrices.
///
/// All arithmetic is overflow-checked (the workspace enables overflow checks
/// in every profile); intermediate products are widened to `i128` where they
/// can grow.
pub type Int = i64;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("the zero vector spans no ray")]
    ZeroVector,
    #[error("expected rank {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("bad parameters: {0}")]
    BadParameters(String),
}

/// A point of the lattice `Z^n`, `n = 2` or `3` in this crate.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticeVector {
    coords: Vec<Int>,
}

impl LatticeVector {
    pub fn new(coords: Vec<Int>) -> Self {
        LatticeVector { coords }
    }

    pub fn zero(rank: usize) -> Self {
        LatticeVector { coords: vec![0; rank] }
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Int] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn dot(&self, other: &Self) -> Int {
        assert_eq!(self.rank(), other.rank());
        self.coords.iter().zip(&other.coords).map(|(a, b)| a * b).sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.rank(), other.rank());
        LatticeVector::new(self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect())
    }

    pub fn neg(&self) -> Self {
        LatticeVector::new(self.coords.iter().map(|&c| -c).collect())
    }

    pub fn scaled(&self, s: Int) -> Self {
        LatticeVector::new(self.coords.iter().map(|&c| s * c).collect())
    }

    /// Gcd of the coordinates (nonnegative; 0 only for the zero vector).
    pub fn content(&self) -> Int {
        self.coords.iter().fold(0, |g, &c| gcd(g, c))
    }

    pub fn is_primitive(&self) -> bool {
        self.content() == 1
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Shorthand constructor used throughout the crate and its tests.
pub fn lv(coords: &[Int]) -> LatticeVector {
    LatticeVector::new(coords.to_vec())
}

/// Nonnegative gcd; `gcd(0, 0) = 0`.
pub fn gcd(a: Int, b: Int) -> Int {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = b;
        b = a % b;
        a = t;
    }
    a
}

/// Extended gcd: returns `(g, x, y)` with `a*x + b*y = g = gcd(a, b) >= 0`.
pub fn extended_gcd(a: Int, b: Int) -> (Int, Int, Int) {
    if b == 0 {
        if a >= 0 {
            (a, 1, 0)
        } else {
            (-a, -1, 0)
        }
    } else {
        let (g, x, y) = extended_gcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

/// The primitive generator of the ray through `v`.
pub fn primitive(v: &LatticeVector) -> Result<LatticeVector, LatticeError> {
    let g = v.content();
    if g == 0 {
        return Err(LatticeError::ZeroVector);
    }
    Ok(LatticeVector::new(v.coords().iter().map(|&c| c / g).collect()))
}

/// Determinant `a0*b1 - a1*b0` of two rank-2 vectors.
pub fn det2(a: &LatticeVector, b: &LatticeVector) -> Result<Int, LatticeError> {
    for v in [a, b] {
        if v.rank() != 2 {
            return Err(LatticeError::RankMismatch { expected: 2, got: v.rank() });
        }
    }
    Ok(a.coords[0] * b.coords[1] - a.coords[1] * b.coords[0])
}

/// Dense integer matrix in row-major order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Int>,
}

impl IntegerMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Int>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows * cols");
        IntegerMatrix { rows, cols, entries }
    }

    pub fn from_rows(rows: &[Vec<Int>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntegerMatrix::new(r, c, rows.concat())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Int {
        self.entries[r * self.cols + c]
    }
}

/// Invariant factors of an integer matrix: `diag[t]` divides `diag[t+1]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SmithForm {
    pub diag: Vec<Int>,
    pub rank: usize,
}

impl SmithForm {
    /// Product of the nonzero invariant factors (1 for the empty product).
    pub fn factor_product(&self) -> Int {
        self.diag[..self.rank].iter().product()
    }
}

/// Smith normal form of `m`, deterministic (no pivot randomization).
pub fn smith_normal_form(m: &IntegerMatrix) -> SmithForm {
    let (diag, rank, _, _) = smith_impl(m, false);
    SmithForm { diag, rank }
}

/// Smith normal form with the transforms needed for kernel extraction:
/// returns `(diag, rank, u_inv, v)` where `u * m * v = d` and `u_inv` is the
/// inverse of the row transform. Columns `rank..` of `v` are a basis of the
/// right kernel; columns `..rank_deficit` of `u_inv` span the column space.
pub(crate) type SmithTransforms = (Vec<Int>, usize, Vec<Vec<i128>>, Vec<Vec<i128>>);

pub(crate) fn smith_with_transforms(m: &IntegerMatrix) -> SmithTransforms {
    let (diag, rank, u_inv, v) = smith_impl(m, true);
    (diag, rank, u_inv.unwrap(), v.unwrap())
}

type SmithParts = (Vec<Int>, usize, Option<Vec<Vec<i128>>>, Option<Vec<Vec<i128>>>);

// row/column sweeps read clearest with indices; i128 has no stable is_multiple_of
#[allow(clippy::needless_range_loop, clippy::manual_is_multiple_of)]
fn smith_impl(m: &IntegerMatrix, transforms: bool) -> SmithParts {
    let (rows, cols) = (m.rows, m.cols);
    let mut a: Vec<Vec<i128>> =
        (0..rows).map(|r| (0..cols).map(|c| m.get(r, c) as i128).collect()).collect();
    let mut u_inv = transforms.then(|| identity(rows));
    let mut v = transforms.then(|| identity(cols));

    let n = rows.min(cols);
    let mut t = 0;
    while t < n {
        let Some((pr, pc)) = select_pivot(&a, t, rows, cols) else { break };
        if pr != t {
            a.swap(pr, t);
            // row swap on A is E*A; A = U^-1 D V^-1 keeps U^-1 columns swapped
            if let Some(ui) = u_inv.as_mut() {
                swap_cols(ui, pr, t);
            }
        }
        if pc != t {
            for row in a.iter_mut() {
                row.swap(pc, t);
            }
            if let Some(v) = v.as_mut() {
                for row in v.iter_mut() {
                    row.swap(pc, t);
                }
            }
        }
        // clear column t and row t; restart whenever a remainder survives
        let mut clean = true;
        for r in t + 1..rows {
            let q = a[r][t].div_euclid(a[t][t]);
            if q != 0 {
                for c in 0..cols {
                    a[r][c] -= q * a[t][c];
                }
                if let Some(ui) = u_inv.as_mut() {
                    // A <- E A with E = I - q e_r e_t^T, so U^-1 <- U^-1 E^-1
                    for row in ui.iter_mut() {
                        let add = q * row[r];
                        row[t] += add;
                    }
                }
            }
            if a[r][t] != 0 {
                clean = false;
            }
        }
        for c in t + 1..cols {
            let q = a[t][c].div_euclid(a[t][t]);
            if q != 0 {
                for row in a.iter_mut() {
                    row[c] -= q * row[t];
                }
                if let Some(v) = v.as_mut() {
                    for row in v.iter_mut() {
                        row[c] -= q * row[t];
                    }
                }
            }
            if a[t][c] != 0 {
                clean = false;
            }
        }
        if !clean {
            continue; // smaller remainders appeared; pick a new pivot
        }
        // divisibility: fold any non-multiple of the pivot into column t
        let mut fixed = true;
        'scan: for r in t + 1..rows {
            for c in t + 1..cols {
                if a[r][c] % a[t][t] != 0 {
                    for cc in 0..cols {
                        let add = a[r][cc];
                        a[t][cc] += add;
                    }
                    if let Some(ui) = u_inv.as_mut() {
                        // A <- E A with E = I + e_t e_r^T
                        for row in ui.iter_mut() {
                            let sub = row[t];
                            row[r] -= sub;
                        }
                    }
                    fixed = false;
                    break 'scan;
                }
            }
        }
        if fixed {
            t += 1;
        }
    }
    let rank = t;
    if let Some(v) = v.as_mut() {
        for i in 0..rank {
            if a[i][i] < 0 {
                for row in v.iter_mut() {
                    row[i] = -row[i];
                }
            }
        }
    }
    let diag: Vec<Int> = (0..n)
        .map(|i| {
            let d: i128 = if i < rank { a[i][i].abs() } else { 0 };
            Int::try_from(d).expect("invariant factor fits in 64 bits")
        })
        .collect();
    (diag, rank, u_inv, v)
}

fn identity(n: usize) -> Vec<Vec<i128>> {
    (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect()
}

fn swap_cols(m: &mut [Vec<i128>], a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

fn select_pivot(a: &[Vec<i128>], t: usize, rows: usize, cols: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for r in t..rows {
        for c in t..cols {
            if a[r][c] != 0 {
                match best {
                    Some((br, bc)) if a[br][bc].abs() <= a[r][c].abs() => {}
                    _ => best = Some((r, c)),
                }
            }
        }
    }
    best
}

/// Hirzebruch–Jung expansion of `d/k`: the unique list `a_1, ..., a_l` with
/// every `a_i >= 2` and `d/k = a_1 - 1/(a_2 - 1/(...))`.
pub fn hj_expand(d: Int, k: Int) -> Result<Vec<Int>, LatticeError> {
    if d < 2 || k <= 0 || k >= d || gcd(d, k) != 1 {
        return Err(LatticeError::BadParameters(format!(
            "hj_expand requires d >= 2, 0 < k < d, gcd(d, k) = 1; got d = {d}, k = {k}"
        )));
    }
    let (mut d, mut k) = (d, k);
    let mut out = Vec::new();
    while k > 0 {
        let a = d.div_euclid(k) + i64::from(d.rem_euclid(k) != 0); // ceil(d / k)
        out.push(a);
        let next_k = a * k - d;
        d = k;
        k = next_k;
    }
    Ok(out)
}

//! Finitely generated abelian groups in invariant-factor form, graded
//! homology containers, and the closed forms for Borel–Moore homology of
//! toric surfaces, cellular varieties and exceptional trees.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::fan::FanProfile;
use crate::lattice::{gcd, Int};
use crate::resolve::ExceptionalModel;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("rank formula for degree {degree} evaluates to {value} < 0; the fan profile is inconsistent")]
    NegativeRank { degree: u32, value: i64 },
    #[error("homology in degree {degree} exceeds the top degree {top}")]
    DegreeOutOfRange { degree: u32, top: u32 },
}

/// A finitely generated abelian group `Z^r + Z/t_1 + ... + Z/t_k` with the
/// torsion coefficients in invariant-factor form: each divides the next and
/// `Z/1` is never stored.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FGAbelianGroup {
    free_rank: usize,
    torsion: Vec<Int>,
}

impl FGAbelianGroup {
    pub fn zero() -> Self {
        FGAbelianGroup { free_rank: 0, torsion: Vec::new() }
    }

    pub fn free(rank: usize) -> Self {
        FGAbelianGroup { free_rank: rank, torsion: Vec::new() }
    }

    pub fn cyclic(order: Int) -> Self {
        normalize_group(0, &[order])
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[Int] {
        &self.torsion
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut divisors = self.torsion.clone();
        divisors.extend_from_slice(&other.torsion);
        normalize_group(self.free_rank + other.free_rank, &divisors)
    }
}

impl fmt::Display for FGAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for FGAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Bring `Z^free + sum Z/d_i` into invariant-factor form by repeated
/// gcd/lcm exchanges; drops trivial factors.
pub fn normalize_group(free_rank: usize, divisors: &[Int]) -> FGAbelianGroup {
    debug_assert!(divisors.iter().all(|&d| d > 0), "divisors must be positive");
    let mut torsion: Vec<Int> = divisors.iter().copied().filter(|&d| d > 1).collect();
    loop {
        let mut changed = false;
        for i in 0..torsion.len() {
            for j in i + 1..torsion.len() {
                let (a, b) = (torsion[i], torsion[j]);
                if b % a != 0 {
                    let g = gcd(a, b);
                    torsion[i] = g;
                    torsion[j] = a / g * b; // lcm
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    torsion.retain(|&d| d > 1);
    torsion.sort_unstable();
    FGAbelianGroup { free_rank, torsion }
}

/// Graded homology groups `H_n`, sparse: absent degrees are zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedGroups {
    by_degree: BTreeMap<u32, FGAbelianGroup>,
    top_degree: u32,
}

impl GradedGroups {
    pub fn new(top_degree: u32) -> Self {
        GradedGroups { by_degree: BTreeMap::new(), top_degree }
    }

    pub fn with(mut self, degree: u32, group: FGAbelianGroup) -> Self {
        self.set(degree, group).expect("degree in range");
        self
    }

    pub fn set(&mut self, degree: u32, group: FGAbelianGroup) -> Result<(), HomologyError> {
        if degree > self.top_degree {
            return Err(HomologyError::DegreeOutOfRange { degree, top: self.top_degree });
        }
        if group.is_zero() {
            self.by_degree.remove(&degree);
        } else {
            self.by_degree.insert(degree, group);
        }
        Ok(())
    }

    pub fn get(&self, degree: u32) -> FGAbelianGroup {
        self.by_degree.get(&degree).cloned().unwrap_or_else(FGAbelianGroup::zero)
    }

    pub fn top_degree(&self) -> u32 {
        self.top_degree
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &FGAbelianGroup)> {
        self.by_degree.iter().map(|(&d, g)| (d, g))
    }

    pub fn is_zero(&self) -> bool {
        self.by_degree.is_empty()
    }

    /// True iff all groups sit in even degrees and are free: the shape of the
    /// Borel–Moore homology of a cellular variety.
    pub fn is_cellular_shaped(&self) -> bool {
        self.by_degree.iter().all(|(d, g)| d % 2 == 0 && g.is_free())
    }
}

impl fmt::Display for GradedGroups {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, g) in self.iter() {
            if !first {
                write!(f, ", ")?;
            }
            write!(f, "H_{d} = {g}")?;
            first = false;
        }
        Ok(())
    }
}

/// Borel–Moore homology of a rank-2 toric surface together with the
/// degenerate-fan annotation (torsion is set trivial when the rays span a
/// proper subspace).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SurfaceBmHomology {
    pub groups: GradedGroups,
    pub degenerate: bool,
}

/// Closed form for the Borel–Moore homology of the toric surface of a
/// validated rank-2 fan:
///
/// * `H_0 = Z` iff complete, else `0`;
/// * `H_1 = 0` iff complete, else `Z^(-d2 + d1 - d0)`;
/// * `H_2 = Z^(d1 - s) + Z/m`;
/// * `H_3 = Z^(2 - s)`;
/// * `H_4 = Z`.
pub fn surface_bm_homology(profile: &FanProfile) -> Result<SurfaceBmHomology, HomologyError> {
    assert_eq!(profile.d.len(), 3, "surface homology needs a rank-2 profile");
    let (d0, d1, d2) = (profile.d[0] as i64, profile.d[1] as i64, profile.d[2] as i64);
    let s = profile.span_dim as i64;
    let degenerate = profile.span_dim < 2;
    let rank_at = |degree: u32, value: i64| -> Result<usize, HomologyError> {
        usize::try_from(value).map_err(|_| HomologyError::NegativeRank { degree, value })
    };
    let mut groups = GradedGroups::new(4);
    let h0 = if profile.is_complete { 1 } else { 0 };
    groups.set(0, FGAbelianGroup::free(h0))?;
    let h1 = if profile.is_complete { 0 } else { rank_at(1, -d2 + d1 - d0)? };
    groups.set(1, FGAbelianGroup::free(h1))?;
    let mut h2 = FGAbelianGroup::free(rank_at(2, d1 - s)?);
    if let Some(m) = profile.index_m {
        h2 = h2.direct_sum(&FGAbelianGroup::cyclic(m));
    }
    groups.set(2, h2)?;
    groups.set(3, FGAbelianGroup::free(rank_at(3, 2 - s)?))?;
    groups.set(4, FGAbelianGroup::free(1))?;
    Ok(SurfaceBmHomology { groups, degenerate })
}

/// Borel–Moore homology of a cellular variety from its cell counts:
/// `H_{2i} = Z^{a_i}`, odd degrees zero.
pub fn cellular_bm_homology(cell_counts: &[usize]) -> GradedGroups {
    let dim = cell_counts.len().saturating_sub(1) as u32;
    let mut groups = GradedGroups::new(2 * dim);
    for (i, &a) in cell_counts.iter().enumerate() {
        groups.set(2 * i as u32, FGAbelianGroup::free(a)).expect("degree in range");
    }
    groups
}

/// Homology of a disjoint union of trees of projective lines:
/// `H_0 = Z^components`, `H_2 = Z^lines`.
pub fn tree_exceptional_homology(e: &ExceptionalModel) -> GradedGroups {
    GradedGroups::new(2)
        .with(0, FGAbelianGroup::free(e.num_components))
        .with(2, FGAbelianGroup::free(e.total_lines))
}

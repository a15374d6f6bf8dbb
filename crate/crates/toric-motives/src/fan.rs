//! Fans in rank 2 and 3: validation against the usual conventions (strongly
//! convex cones, pairwise intersections in faces) and the combinatorial
//! invariants consumed by the homology and motive formulas.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{self, covered_by, dual_vrep, hrep_of_cone, HRep};
use crate::lattice::{
    det2, smith_normal_form, Int, IntegerMatrix, LatticeVector,
};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum FanError {
    #[error("unsupported rank {0}: only 2 and 3 are handled")]
    BadRank(usize),
    #[error("fan has no rays or no maximal cones")]
    EmptyFan,
    #[error("ray {index} = {ray} is not primitive (or is zero)")]
    NonPrimitiveRay { index: usize, ray: LatticeVector },
    #[error("ray {index} = {ray} appears more than once")]
    DuplicateRay { index: usize, ray: LatticeVector },
    #[error("ray {index} is not contained in any maximal cone")]
    UnusedRay { index: usize },
    #[error("cone {cone} is malformed: {reason}")]
    BadCone { cone: String, reason: String },
    #[error("cone {cone} is not strongly convex")]
    NotStronglyConvex { cone: String },
    #[error("ray {ray} of cone {cone} lies in the cone spanned by the others")]
    RedundantRay { cone: String, ray: LatticeVector },
    #[error("cones {left} and {right} do not intersect in a common face")]
    BadFaceIntersection { left: String, right: String },
    #[error("cone {inner} is contained in cone {outer}, so it is not maximal")]
    NotMaximal { inner: String, outer: String },
    #[error("cone {cone} has dimension {got}, expected {expected}")]
    WrongDimension { cone: String, expected: usize, got: usize },
}

/// A cone of a fan, stored as sorted indices into the fan's ray table.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Cone {
    ray_indices: Vec<usize>,
}

impl Cone {
    pub fn new(mut ray_indices: Vec<usize>) -> Self {
        ray_indices.sort_unstable();
        Cone { ray_indices }
    }

    pub fn ray_indices(&self) -> &[usize] {
        &self.ray_indices
    }

    pub fn len(&self) -> usize {
        self.ray_indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ray_indices.is_empty()
    }

    pub fn contains_cone(&self, other: &Cone) -> bool {
        other.ray_indices.iter().all(|i| self.ray_indices.binary_search(i).is_ok())
    }
}

impl fmt::Display for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, r) in self.ray_indices.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Cone counts and lattice invariants of a validated fan.
///
/// `d[i]` is the number of cones of dimension `i`, counting the zero cone, so
/// `d[0] = 1` always. `index_m` is the index of the sublattice spanned by the
/// ray generators; it is defined only for non-degenerate rank-2 fans.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FanProfile {
    pub d: Vec<usize>,
    pub span_dim: usize,
    pub is_complete: bool,
    pub index_m: Option<Int>,
}

/// A fan given by its primitive ray generators and its maximal cones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    rank: usize,
    rays: Vec<LatticeVector>,
    max_cones: Vec<Cone>,
}

impl Fan {
    pub fn new(rank: usize, rays: Vec<LatticeVector>, max_cones: Vec<Cone>) -> Result<Self, FanError> {
        if rank != 2 && rank != 3 {
            return Err(FanError::BadRank(rank));
        }
        for cone in &max_cones {
            if cone.is_empty() {
                return Err(FanError::BadCone {
                    cone: cone.to_string(),
                    reason: "no rays".into(),
                });
            }
            if cone.ray_indices.windows(2).any(|w| w[0] == w[1]) {
                return Err(FanError::BadCone {
                    cone: cone.to_string(),
                    reason: "repeated ray index".into(),
                });
            }
            if let Some(&i) = cone.ray_indices.iter().find(|&&i| i >= rays.len()) {
                return Err(FanError::BadCone {
                    cone: cone.to_string(),
                    reason: format!("ray index {i} out of bounds"),
                });
            }
        }
        Ok(Fan { rank, rays, max_cones })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    pub fn max_cones(&self) -> &[Cone] {
        &self.max_cones
    }

    pub fn cone_generators(&self, cone: &Cone) -> Vec<LatticeVector> {
        cone.ray_indices.iter().map(|&i| self.rays[i].clone()).collect()
    }

    fn generator_rows(&self, cone: &Cone) -> Vec<Vec<Int>> {
        cone.ray_indices.iter().map(|&i| self.rays[i].coords().to_vec()).collect()
    }

    pub(crate) fn cone_hrep(&self, cone: &Cone) -> HRep {
        hrep_of_cone(&self.generator_rows(cone), self.rank)
    }

    pub(crate) fn max_cone_hreps(&self) -> Vec<HRep> {
        self.max_cones.iter().map(|c| self.cone_hrep(c)).collect()
    }

    pub fn cone_dim(&self, cone: &Cone) -> usize {
        geom::rank_of(&self.generator_rows(cone))
    }

    /// Does the support of the fan contain the point?
    pub fn support_contains(&self, p: &LatticeVector) -> bool {
        self.max_cones.iter().any(|c| self.cone_hrep(c).contains(p.coords()))
    }

    /// Validate all fan invariants and return the combinatorial profile.
    pub fn validate(&self) -> Result<FanProfile, FanError> {
        if self.rays.is_empty() || self.max_cones.is_empty() {
            return Err(FanError::EmptyFan);
        }
        for (index, ray) in self.rays.iter().enumerate() {
            if ray.rank() != self.rank {
                return Err(FanError::BadCone {
                    cone: format!("ray {index}"),
                    reason: format!("rank {} != fan rank {}", ray.rank(), self.rank),
                });
            }
            if !ray.is_primitive() {
                return Err(FanError::NonPrimitiveRay { index, ray: ray.clone() });
            }
            if self.rays[..index].contains(ray) {
                return Err(FanError::DuplicateRay { index, ray: ray.clone() });
            }
        }
        let mut used = vec![false; self.rays.len()];
        for cone in &self.max_cones {
            for &i in &cone.ray_indices {
                used[i] = true;
            }
            self.check_cone(cone)?;
        }
        if let Some(index) = used.iter().position(|&u| !u) {
            return Err(FanError::UnusedRay { index });
        }
        let hreps = self.max_cone_hreps();
        for i in 0..self.max_cones.len() {
            for j in i + 1..self.max_cones.len() {
                self.check_face_intersection(i, j, &hreps)?;
            }
        }
        Ok(self.profile_unchecked(&hreps))
    }

    fn check_cone(&self, cone: &Cone) -> Result<(), FanError> {
        let rows = self.generator_rows(cone);
        // strongly convex: the cone contains no line, i.e. its facet
        // description has trivial kernel
        let hrep = hrep_of_cone(&rows, self.rank);
        if !geom::int_kernel(&hrep.inequality_rows(), self.rank).is_empty() {
            return Err(FanError::NotStronglyConvex { cone: cone.to_string() });
        }
        // every listed ray must be extreme
        if cone.len() > 1 {
            for (pos, &i) in cone.ray_indices.iter().enumerate() {
                let others: Vec<Vec<Int>> = cone
                    .ray_indices
                    .iter()
                    .enumerate()
                    .filter(|&(p, _)| p != pos)
                    .map(|(_, &j)| self.rays[j].coords().to_vec())
                    .collect();
                if hrep_of_cone(&others, self.rank).contains(self.rays[i].coords()) {
                    return Err(FanError::RedundantRay {
                        cone: cone.to_string(),
                        ray: self.rays[i].clone(),
                    });
                }
            }
        }
        Ok(())
    }

    fn check_face_intersection(&self, i: usize, j: usize, hreps: &[HRep]) -> Result<(), FanError> {
        let (a, b) = (&self.max_cones[i], &self.max_cones[j]);
        let mut walls = hreps[i].inequality_rows();
        walls.extend(hreps[j].inequality_rows());
        let meet = geom::hrep_extreme_rays(&walls, self.rank);
        if !meet.lineality.is_empty() {
            return Err(FanError::BadFaceIntersection { left: a.to_string(), right: b.to_string() });
        }
        if meet.rays.is_empty() {
            return Ok(()); // cones meet only at the origin
        }
        let mut interior = vec![0; self.rank];
        for r in &meet.rays {
            for (x, &c) in interior.iter_mut().zip(r) {
                *x += c;
            }
        }
        for (cone, hrep) in [(a, &hreps[i]), (b, &hreps[j])] {
            let active: Vec<&Vec<Int>> =
                hrep.normals.iter().filter(|n| geom::dot(n, &interior) == 0).collect();
            let face_rays: Vec<&LatticeVector> = cone
                .ray_indices
                .iter()
                .map(|&k| &self.rays[k])
                .filter(|v| active.iter().all(|n| geom::dot(n, v.coords()) == 0))
                .collect();
            let mut face_set: Vec<Vec<Int>> =
                face_rays.iter().map(|v| v.coords().to_vec()).collect();
            face_set.sort();
            if face_set != meet.rays {
                return Err(FanError::BadFaceIntersection {
                    left: a.to_string(),
                    right: b.to_string(),
                });
            }
        }
        // the intersection is a face of both; if it equals one of them, that
        // cone was not maximal
        for (inner, outer) in [(a, b), (b, a)] {
            if meet.rays.len() == inner.len() && outer.contains_cone(inner) {
                return Err(FanError::NotMaximal {
                    inner: inner.to_string(),
                    outer: outer.to_string(),
                });
            }
        }
        Ok(())
    }

    fn profile_unchecked(&self, hreps: &[HRep]) -> FanProfile {
        let faces = self.all_faces();
        let mut d = vec![0usize; self.rank + 1];
        d[0] = 1;
        for (dim, set) in faces.iter().enumerate() {
            if dim > 0 {
                d[dim] = set.len();
            }
        }
        let ray_rows: Vec<Vec<Int>> = self.rays.iter().map(|r| r.coords().to_vec()).collect();
        let span_dim = geom::rank_of(&ray_rows);
        let is_complete = covered_by(&[], hreps, self.rank);
        let index_m = (self.rank == 2 && span_dim == 2).then(|| {
            smith_normal_form(&IntegerMatrix::from_rows(&ray_rows)).factor_product()
        });
        FanProfile { d, span_dim, is_complete, index_m }
    }

    /// All faces of all maximal cones, grouped by dimension and deduplicated
    /// by their sorted ray-index sets. Index `k` holds the `k`-dimensional
    /// faces; the zero cone is left implicit.
    pub fn all_faces(&self) -> Vec<BTreeSet<Cone>> {
        let mut faces: Vec<BTreeSet<Cone>> = vec![BTreeSet::new(); self.rank + 1];
        for cone in &self.max_cones {
            let mut stack = vec![cone.clone()];
            while let Some(c) = stack.pop() {
                let dim = self.cone_dim(&c);
                if !faces[dim].insert(c.clone()) {
                    continue;
                }
                for facet in self.facets_of(&c) {
                    stack.push(facet);
                }
            }
        }
        faces
    }

    /// Proper facets of a cone: intersections with its supporting hyperplanes.
    fn facets_of(&self, cone: &Cone) -> Vec<Cone> {
        if cone.len() == 1 {
            return Vec::new();
        }
        let hrep = self.cone_hrep(cone);
        let mut out = BTreeSet::new();
        for n in &hrep.normals {
            let on_wall: Vec<usize> = cone
                .ray_indices
                .iter()
                .copied()
                .filter(|&i| geom::dot(n, self.rays[i].coords()) == 0)
                .collect();
            if !on_wall.is_empty() {
                out.insert(Cone::new(on_wall));
            }
        }
        out.into_iter().collect()
    }

    /// Multiplicity of a 2-dimensional cone: the index of the sublattice
    /// spanned by its two primitive generators inside the lattice points of
    /// its span; `1` iff the cone is smooth.
    pub fn cone_multiplicity(&self, cone: &Cone) -> Result<Int, FanError> {
        let rows = self.generator_rows(cone);
        let dim = geom::rank_of(&rows);
        if dim != 2 || cone.len() != 2 {
            return Err(FanError::WrongDimension {
                cone: cone.to_string(),
                expected: 2,
                got: dim,
            });
        }
        if self.rank == 2 {
            let g = self.cone_generators(cone);
            Ok(det2(&g[0], &g[1]).expect("rank 2 generators").abs())
        } else {
            Ok(smith_normal_form(&IntegerMatrix::from_rows(&rows)).factor_product())
        }
    }

    /// True iff the primitive generators of the cone extend to a basis of the
    /// ambient lattice: full rank and all Smith invariant factors 1.
    pub fn is_smooth_cone(&self, cone: &Cone) -> bool {
        let rows = self.generator_rows(cone);
        let snf = smith_normal_form(&IntegerMatrix::from_rows(&rows));
        snf.rank == cone.len() && snf.diag[..snf.rank].iter().all(|&d| d == 1)
    }

    /// All faces of dimension >= 2 that are singular while all their proper
    /// faces are smooth. The singular locus of the toric variety is the union
    /// of the corresponding orbit closures.
    pub fn minimal_singular_cones(&self) -> Vec<Cone> {
        let faces = self.all_faces();
        let mut out = Vec::new();
        for set in &faces[2..] {
            for cone in set {
                if self.is_smooth_cone(cone) {
                    continue;
                }
                let proper_smooth = self
                    .facets_of(cone)
                    .iter()
                    .all(|f| self.is_smooth_cone(f));
                if proper_smooth {
                    out.push(cone.clone());
                }
            }
        }
        out.sort();
        out
    }

    /// Extreme rays of the dual cone, plus a basis of its lineality space
    /// when the cone is not full-dimensional.
    pub fn dual_cone(&self, cone: &Cone) -> DualCone {
        let dual = dual_vrep(&self.generator_rows(cone), self.rank);
        DualCone {
            rays: dual.rays.into_iter().map(LatticeVector::new).collect(),
            lineality: dual.lineality.into_iter().map(LatticeVector::new).collect(),
        }
    }
}

/// Dual of a cone: primitive extreme covectors and lineality basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualCone {
    pub rays: Vec<LatticeVector>,
    pub lineality: Vec<LatticeVector>,
}

/// Exact equality of supports: each fan's maximal cones are covered by the
/// other fan.
pub fn support_equals(a: &Fan, b: &Fan) -> bool {
    assert_eq!(a.rank(), b.rank());
    let (ha, hb) = (a.max_cone_hreps(), b.max_cone_hreps());
    ha.iter().all(|h| covered_by(&h.shifted_constraints(None), &hb, a.rank()))
        && hb.iter().all(|h| covered_by(&h.shifted_constraints(None), &ha, a.rank()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::lv;

    pub(crate) fn fan2(rays: &[[Int; 2]], cones: &[&[usize]]) -> Fan {
        Fan::new(
            2,
            rays.iter().map(|r| lv(r)).collect(),
            cones.iter().map(|c| Cone::new(c.to_vec())).collect(),
        )
        .unwrap()
    }

    pub(crate) fn fan3(rays: &[[Int; 3]], cones: &[&[usize]]) -> Fan {
        Fan::new(
            3,
            rays.iter().map(|r| lv(r)).collect(),
            cones.iter().map(|c| Cone::new(c.to_vec())).collect(),
        )
        .unwrap()
    }

    /// The complete fan of the weighted projective plane P(1,1,k).
    pub(crate) fn p11k_fan(k: Int) -> Fan {
        fan2(&[[-1, 0], [0, 1], [k, -1]], &[&[0, 1], &[1, 2], &[0, 2]])
    }

    #[test]
    fn p11k_profile() {
        for k in [1, 2, 3, 5] {
            let profile = p11k_fan(k).validate().unwrap();
            assert_eq!(profile.d, vec![1, 3, 3]);
            assert_eq!(profile.span_dim, 2);
            assert!(profile.is_complete);
            assert_eq!(profile.index_m, Some(1));
        }
    }

    #[test]
    fn single_cone_profile() {
        for d in [1, 3, 7] {
            let fan = fan2(&[[0, 1], [d, -1]], &[&[0, 1]]);
            let profile = fan.validate().unwrap();
            assert_eq!(profile.d, vec![1, 2, 1]);
            assert_eq!(profile.span_dim, 2);
            assert!(!profile.is_complete);
            assert_eq!(profile.index_m, Some(d));
        }
    }

    #[test]
    fn opposite_quadrants_validate() {
        let fan = fan2(&[[1, 0], [0, 1], [-1, 0], [0, -1]], &[&[0, 1], &[2, 3]]);
        let profile = fan.validate().unwrap();
        assert!(!profile.is_complete);
        assert_eq!(profile.d, vec![1, 4, 2]);
    }

    #[test]
    fn index_two_fan_profile() {
        let fan = fan2(&[[0, 1], [-2, -1], [2, -1]], &[&[0, 1], &[1, 2], &[0, 2]]);
        let profile = fan.validate().unwrap();
        assert!(profile.is_complete);
        assert_eq!(profile.index_m, Some(2));
    }

    #[test]
    fn degenerate_fans() {
        // C x C*: a single ray
        let fan = fan2(&[[1, 0]], &[&[0]]);
        let profile = fan.validate().unwrap();
        assert_eq!(profile.d, vec![1, 1, 0]);
        assert_eq!(profile.span_dim, 1);
        assert_eq!(profile.index_m, None);
        // P^1 x C*: two opposite rays
        let fan = fan2(&[[1, 0], [-1, 0]], &[&[0], &[1]]);
        let profile = fan.validate().unwrap();
        assert_eq!(profile.d, vec![1, 2, 0]);
        assert_eq!(profile.span_dim, 1);
    }

    #[test]
    fn rejects_non_primitive_and_duplicate_rays() {
        let fan = fan2(&[[2, 0], [0, 1]], &[&[0, 1]]);
        assert!(matches!(fan.validate(), Err(FanError::NonPrimitiveRay { index: 0, .. })));
        let fan = fan2(&[[1, 0], [1, 0]], &[&[0], &[1]]);
        assert!(matches!(fan.validate(), Err(FanError::DuplicateRay { index: 1, .. })));
    }

    #[test]
    fn rejects_line_spanning_cone() {
        let fan = fan2(&[[1, 0], [-1, 0]], &[&[0, 1]]);
        assert!(matches!(fan.validate(), Err(FanError::NotStronglyConvex { .. })));
        let fan = fan3(&[[1, 0, 0], [-1, 0, 0], [0, 1, 0]], &[&[0, 1, 2]]);
        assert!(matches!(fan.validate(), Err(FanError::NotStronglyConvex { .. })));
    }

    #[test]
    fn rejects_redundant_ray() {
        let fan = fan2(&[[1, 0], [0, 1], [1, 1]], &[&[0, 1, 2]]);
        assert!(matches!(fan.validate(), Err(FanError::RedundantRay { .. })));
    }

    #[test]
    fn rejects_overlapping_cones() {
        // two 2-cones overlapping in a full sector, not a face
        let fan = fan2(&[[1, 0], [0, 1], [1, 1]], &[&[0, 1], &[0, 2]]);
        assert!(matches!(fan.validate(), Err(FanError::BadFaceIntersection { .. })));
    }

    #[test]
    fn rejects_unused_ray_and_non_maximal_cone() {
        let fan = fan2(&[[1, 0], [0, 1], [-1, -1]], &[&[0, 1]]);
        assert!(matches!(fan.validate(), Err(FanError::UnusedRay { index: 2 })));
        let fan = fan2(&[[1, 0], [0, 1]], &[&[0, 1], &[0]]);
        assert!(matches!(fan.validate(), Err(FanError::NotMaximal { .. })));
    }

    #[test]
    fn multiplicity_examples() {
        let fan = fan2(&[[1, 0], [0, 1]], &[&[0, 1]]);
        assert_eq!(fan.cone_multiplicity(&Cone::new(vec![0, 1])).unwrap(), 1);
        let fan = fan2(&[[0, 1], [2, -1]], &[&[0, 1]]);
        assert_eq!(fan.cone_multiplicity(&Cone::new(vec![0, 1])).unwrap(), 2);
        for d in 1..=12 {
            let fan = fan2(&[[0, 1], [d, -1]], &[&[0, 1]]);
            assert_eq!(fan.cone_multiplicity(&Cone::new(vec![0, 1])).unwrap(), d);
        }
    }

    #[test]
    fn multiplicity_wrong_dimension() {
        let fan = fan2(&[[1, 0]], &[&[0]]);
        assert!(matches!(
            fan.cone_multiplicity(&Cone::new(vec![0])),
            Err(FanError::WrongDimension { .. })
        ));
    }

    /// The singular quadric cone in rank 3 and its two-piece refinement.
    pub(crate) fn quadric_cone_fan() -> Fan {
        fan3(&[[1, 0, 0], [0, 1, 0], [1, 0, 1], [0, 1, 1]], &[&[0, 1, 2, 3]])
    }

    #[test]
    fn smoothness_examples() {
        let quadric = quadric_cone_fan();
        quadric.validate().unwrap();
        assert!(!quadric.is_smooth_cone(&Cone::new(vec![0, 1, 2, 3])));
        // all four facets of the quadric cone are smooth
        for facet in quadric.facets_of(&Cone::new(vec![0, 1, 2, 3])) {
            assert!(quadric.is_smooth_cone(&facet));
        }
        let fan = fan3(&[[1, 0, 0], [0, 1, 1]], &[&[0, 1]]);
        assert!(fan.is_smooth_cone(&Cone::new(vec![0, 1])));
        let fan = fan2(&[[1, 0], [0, 1]], &[&[0, 1]]);
        assert!(fan.is_smooth_cone(&Cone::new(vec![0, 1])));
    }

    #[test]
    fn quadric_cone_minimal_singular_is_the_cone_itself() {
        let quadric = quadric_cone_fan();
        assert_eq!(quadric.minimal_singular_cones(), vec![Cone::new(vec![0, 1, 2, 3])]);
    }

    #[test]
    fn minimal_singular_cones_examples() {
        let p112 = p11k_fan(2);
        assert_eq!(p112.minimal_singular_cones(), vec![Cone::new(vec![1, 2])]);
        // product example: rays e1+e2, -e1+e2, e3; the singular wall is the
        // 2-face spanned by the first two
        let fan = fan3(&[[1, 1, 0], [-1, 1, 0], [0, 0, 1]], &[&[0, 1, 2]]);
        fan.validate().unwrap();
        assert_eq!(fan.minimal_singular_cones(), vec![Cone::new(vec![0, 1])]);
        // a smooth fan has none
        let fan = fan2(&[[1, 0], [0, 1], [-1, -1]], &[&[0, 1], &[1, 2], &[0, 2]]);
        assert!(fan.minimal_singular_cones().is_empty());
    }

    #[test]
    fn dual_cone_examples() {
        let fan = fan3(&[[-1, 1, 1], [-1, -1, 1], [0, 0, 1]], &[&[0, 1, 2]]);
        let dual = fan.dual_cone(&Cone::new(vec![0, 1, 2]));
        let mut expected = vec![lv(&[1, 0, 1]), lv(&[-1, 1, 0]), lv(&[-1, -1, 0])];
        expected.sort();
        assert_eq!(dual.rays, expected);
        assert!(dual.lineality.is_empty());

        let fan = fan2(&[[1, 0], [0, 1]], &[&[0, 1]]);
        let dual = fan.dual_cone(&Cone::new(vec![0, 1]));
        assert_eq!(dual.rays, vec![lv(&[0, 1]), lv(&[1, 0])]);

        let fan = fan2(&[[0, 1], [2, -1]], &[&[0, 1]]);
        let dual = fan.dual_cone(&Cone::new(vec![0, 1]));
        assert_eq!(dual.rays, vec![lv(&[1, 0]), lv(&[1, 2])]);
    }

    #[test]
    fn dual_cone_pairs_nonnegative_and_double_dual() {
        let fans = [
            fan2(&[[0, 1], [3, -2]], &[&[0, 1]]),
            fan2(&[[1, 2], [2, -5]], &[&[0, 1]]),
            fan3(&[[1, 0, 0], [0, 1, 0], [1, 1, 3]], &[&[0, 1, 2]]),
        ];
        for fan in fans {
            let cone = fan.max_cones()[0].clone();
            let dual = fan.dual_cone(&cone);
            for m in &dual.rays {
                for v in fan.cone_generators(&cone) {
                    assert!(m.dot(&v) >= 0);
                }
            }
            // double dual: dualize the dual and recover the extreme rays
            let ddual = dual_vrep(
                &dual.rays.iter().map(|r| r.coords().to_vec()).collect::<Vec<_>>(),
                fan.rank(),
            );
            let mut orig: Vec<Vec<Int>> =
                fan.cone_generators(&cone).iter().map(|v| v.coords().to_vec()).collect();
            orig.sort();
            assert_eq!(ddual.rays, orig);
        }
    }

    #[test]
    fn face_counts_in_rank_3() {
        let quadric = quadric_cone_fan();
        let profile = quadric.validate().unwrap();
        // one 3-cone, four walls, four rays, the zero cone
        assert_eq!(profile.d, vec![1, 4, 4, 1]);
        assert!(!profile.is_complete);
        assert_eq!(profile.span_dim, 3);
        assert_eq!(profile.index_m, None);
    }
}

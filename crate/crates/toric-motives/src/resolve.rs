//! Toric resolution of singularities for rank-2 fans by Hirzebruch–Jung
//! subdivision, and the combinatorial model of the exceptional locus: one
//! chain of projective lines per singular cone.

use std::collections::BTreeMap;

use crate::fan::{Cone, Fan, FanError};
use crate::homology::FGAbelianGroup;
use crate::lattice::{det2, extended_gcd, gcd, hj_expand, Int, LatticeVector};
use crate::motive::{Motive, MotiveSummand};

/// Outcome of resolving a rank-2 fan: the smooth refinement plus bookkeeping
/// of which singular cone received how many new rays.
#[derive(Clone, Debug)]
pub struct ResolutionResult {
    pub refined_fan: Fan,
    pub added_rays: Vec<LatticeVector>,
    pub per_cone_chains: BTreeMap<Cone, usize>,
}

/// The exceptional locus of a surface resolution: a disjoint union of chains
/// of projective lines, one chain per singular maximal cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExceptionalModel {
    pub num_components: usize,
    pub total_lines: usize,
    pub chain_lengths: Vec<usize>,
}

impl ExceptionalModel {
    pub fn from_resolution(res: &ResolutionResult) -> Self {
        let chain_lengths: Vec<usize> = res.per_cone_chains.values().copied().collect();
        ExceptionalModel {
            num_components: chain_lengths.len(),
            total_lines: chain_lengths.iter().sum(),
            chain_lengths,
        }
    }
}

/// Rays to insert to subdivide the 2-dimensional cone spanned by `u1`, `u2`
/// into smooth subcones, in angular order from `u1` to `u2`. Empty iff the
/// cone is already smooth.
///
/// The rays are exactly the lattice points on the bounded part of the
/// boundary of `conv((cone ∩ N) \ {0})`, computed through the continued
/// fraction of the normalized cone.
pub fn resolve_cone_2d(u1: &LatticeVector, u2: &LatticeVector) -> Result<Vec<LatticeVector>, FanError> {
    let det = det2(u1, u2).map_err(|_| FanError::WrongDimension {
        cone: format!("Cone({u1}, {u2})"),
        expected: 2,
        got: u1.rank().max(u2.rank()),
    })?;
    if det == 0 {
        return Err(FanError::WrongDimension {
            cone: format!("Cone({u1}, {u2})"),
            expected: 2,
            got: 1,
        });
    }
    let d = det.abs();
    if d == 1 {
        return Ok(Vec::new());
    }
    // normalize so that det(a, b) = -d, i.e. b sits clockwise from a
    let swapped = det > 0;
    let (a, b) = if swapped { (u2, u1) } else { (u1, u2) };

    // unimodular map sending a to (0, 1) and b to (d, -k) with 0 <= k < d
    let (p, q) = (a.coords()[0], a.coords()[1]);
    let (g, x, y) = extended_gcd(p, q);
    debug_assert_eq!(g, 1, "generators are primitive");
    let mut m = [[q, -p], [x, y]];
    let apply = |m: &[[Int; 2]; 2], v: &[Int]| [m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]];
    let [big_d, e] = apply(&m, b.coords());
    debug_assert_eq!(big_d, d);
    let k = (-e).rem_euclid(d);
    let t = (-k - e) / d;
    m[1][0] += t * m[0][0];
    m[1][1] += t * m[0][1];
    debug_assert_eq!(apply(&m, b.coords()), [d, -k]);
    debug_assert_eq!(gcd(d, k), 1, "b is primitive");

    // walk the continued fraction: u_0 = (0,1), u_1 = (1,0),
    // u_{i+1} = a_i * u_i - u_{i-1}, ending at (d, -k)
    let terms = hj_expand(d, k).expect("normal form satisfies the preconditions");
    let mut prev = [0, 1];
    let mut cur = [1, 0];
    let mut inserted = vec![cur];
    for &ai in &terms[..terms.len() - 1] {
        let next = [ai * cur[0] - prev[0], ai * cur[1] - prev[1]];
        inserted.push(next);
        prev = cur;
        cur = next;
    }
    let last = terms[terms.len() - 1];
    debug_assert_eq!([last * cur[0] - prev[0], last * cur[1] - prev[1]], [d, -k]);

    // map back through the inverse of m (determinant 1)
    let m_inv = [[m[1][1], -m[0][1]], [-m[1][0], m[0][0]]];
    let mut out: Vec<LatticeVector> = inserted
        .iter()
        .map(|v| LatticeVector::new(apply(&m_inv, v).to_vec()))
        .collect();
    if swapped {
        out.reverse();
    }
    Ok(out)
}

/// Resolve every singular maximal cone of a validated rank-2 fan by
/// Hirzebruch–Jung subdivision; the refined fan is re-validated.
pub fn resolve_fan_2d(fan: &Fan) -> Result<ResolutionResult, FanError> {
    assert_eq!(fan.rank(), 2, "resolution is implemented for rank-2 fans");
    let mut rays = fan.rays().to_vec();
    let mut added_rays = Vec::new();
    let mut new_cones = Vec::new();
    let mut per_cone_chains = BTreeMap::new();
    for cone in fan.max_cones() {
        if cone.len() != 2 {
            new_cones.push(cone.clone());
            continue;
        }
        let gens = fan.cone_generators(cone);
        let inserted = resolve_cone_2d(&gens[0], &gens[1])?;
        if inserted.is_empty() {
            new_cones.push(cone.clone());
            continue;
        }
        per_cone_chains.insert(cone.clone(), inserted.len());
        let mut chain_indices = vec![cone.ray_indices()[0]];
        for v in &inserted {
            chain_indices.push(rays.len());
            rays.push(v.clone());
            added_rays.push(v.clone());
        }
        chain_indices.push(cone.ray_indices()[1]);
        for pair in chain_indices.windows(2) {
            new_cones.push(Cone::new(pair.to_vec()));
        }
    }
    let refined_fan = Fan::new(2, rays, new_cones)?;
    refined_fan.validate()?;
    Ok(ResolutionResult { refined_fan, added_rays, per_cone_chains })
}

/// Motive of a disjoint union of trees of projective lines:
/// `Z^components + Z{1}^lines`.
pub fn exceptional_motive(e: &ExceptionalModel) -> Motive {
    Motive::from_summands(vec![
        MotiveSummand::new(FGAbelianGroup::free(e.num_components), 0, 0),
        MotiveSummand::new(FGAbelianGroup::free(e.total_lines), 1, 0),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::lv;

    fn fan2(rays: &[[Int; 2]], cones: &[&[usize]]) -> Fan {
        Fan::new(
            2,
            rays.iter().map(|r| lv(r)).collect(),
            cones.iter().map(|c| Cone::new(c.to_vec())).collect(),
        )
        .unwrap()
    }

    #[test]
    fn resolve_smooth_cone_is_empty() {
        assert!(resolve_cone_2d(&lv(&[1, 0]), &lv(&[0, 1])).unwrap().is_empty());
        assert!(resolve_cone_2d(&lv(&[0, 1]), &lv(&[1, -1])).unwrap().is_empty());
    }

    #[test]
    fn resolve_weighted_plane_cone() {
        assert_eq!(resolve_cone_2d(&lv(&[0, 1]), &lv(&[2, -1])).unwrap(), vec![lv(&[1, 0])]);
        // orientation does not change the set, only the reported order
        assert_eq!(resolve_cone_2d(&lv(&[2, -1]), &lv(&[0, 1])).unwrap(), vec![lv(&[1, 0])]);
    }

    #[test]
    fn resolve_index_two_sectors() {
        // right sector of the index-2 fan
        assert_eq!(resolve_cone_2d(&lv(&[2, -1]), &lv(&[0, 1])).unwrap(), vec![lv(&[1, 0])]);
        // bottom sector: three rays, in angular order
        assert_eq!(
            resolve_cone_2d(&lv(&[-2, -1]), &lv(&[2, -1])).unwrap(),
            vec![lv(&[-1, -1]), lv(&[0, -1]), lv(&[1, -1])]
        );
        // every produced subcone must have determinant +-1
        let gens = [lv(&[-2, -1]), lv(&[-1, -1]), lv(&[0, -1]), lv(&[1, -1]), lv(&[2, -1])];
        for w in gens.windows(2) {
            assert_eq!(det2(&w[0], &w[1]).unwrap().abs(), 1);
        }
    }

    #[test]
    fn wrong_dimension_errors() {
        assert!(resolve_cone_2d(&lv(&[1, 0]), &lv(&[2, 0])).is_err());
        assert!(resolve_cone_2d(&lv(&[1, 0, 0]), &lv(&[0, 1, 0])).is_err());
    }

    #[test]
    fn resolve_p11k_fan() {
        for k in [2, 3, 5] {
            let fan = fan2(&[[-1, 0], [0, 1], [k, -1]], &[&[0, 1], &[1, 2], &[0, 2]]);
            fan.validate().unwrap();
            let res = resolve_fan_2d(&fan).unwrap();
            assert_eq!(res.added_rays, vec![lv(&[1, 0])]);
            assert_eq!(res.refined_fan.rays().len(), 4);
            assert_eq!(res.per_cone_chains.len(), 1);
            let profile = res.refined_fan.validate().unwrap();
            assert!(profile.is_complete);
            assert_eq!(profile.index_m, Some(1));
        }
    }

    #[test]
    fn resolve_index_two_fan() {
        let fan = fan2(&[[0, 1], [-2, -1], [2, -1]], &[&[0, 1], &[1, 2], &[0, 2]]);
        fan.validate().unwrap();
        let res = resolve_fan_2d(&fan).unwrap();
        let mut added = res.added_rays.clone();
        added.sort();
        let mut expected =
            vec![lv(&[1, 0]), lv(&[-1, 0]), lv(&[1, -1]), lv(&[0, -1]), lv(&[-1, -1])];
        expected.sort();
        assert_eq!(added, expected);
        let mut chains: Vec<usize> = res.per_cone_chains.values().copied().collect();
        chains.sort();
        assert_eq!(chains, vec![1, 1, 3]);
        let model = ExceptionalModel::from_resolution(&res);
        assert_eq!(model.num_components, 3);
        assert_eq!(model.total_lines, 5);
    }

    #[test]
    fn resolve_smooth_fan_is_identity() {
        let fan = fan2(&[[1, 0], [0, 1], [-1, -1]], &[&[0, 1], &[1, 2], &[0, 2]]);
        let res = resolve_fan_2d(&fan).unwrap();
        assert!(res.added_rays.is_empty());
        assert!(res.per_cone_chains.is_empty());
        assert_eq!(res.refined_fan, fan);
    }

    #[test]
    fn refined_fans_are_smooth() {
        // normalized cones of every multiplicity and offset at desk scale
        for d in 2..=12 {
            for k in 1..d {
                if gcd(d, k) != 1 {
                    continue;
                }
                let fan = fan2(&[[0, 1], [d, -k]], &[&[0, 1]]);
                fan.validate().unwrap();
                let res = resolve_fan_2d(&fan).unwrap();
                for cone in res.refined_fan.max_cones() {
                    assert_eq!(res.refined_fan.cone_multiplicity(cone).unwrap(), 1, "d={d} k={k}");
                }
                assert_eq!(
                    res.added_rays.len(),
                    hj_expand(d, k).unwrap().len(),
                    "chain length equals the continued fraction length"
                );
            }
        }
    }

    /// Brute-force oracle: the rays added to a normalized cone are the
    /// irreducible lattice points (those not a sum of two nonzero cone
    /// points), i.e. the lattice points on the bounded boundary of
    /// `conv((cone ∩ N) \ 0)`, minus the two generators.
    fn oracle_added_rays(d: Int, k: Int) -> Vec<LatticeVector> {
        let in_cone = |x: Int, y: Int| -> bool {
            // Cone((0,1),(d,-k)) = { (x,y) : x >= 0, k*x + d*y >= 0 }
            x >= 0 && k * x + d * y >= 0
        };
        let mut points = Vec::new();
        for x in 0..=d {
            for y in -d..=d {
                if (x, y) != (0, 0) && in_cone(x, y) {
                    points.push((x, y));
                }
            }
        }
        let mut irreducible = Vec::new();
        for &(x, y) in &points {
            let reducible = points
                .iter()
                .any(|&(a, b)| (a, b) != (x, y) && in_cone(x - a, y - b) && (x - a, y - b) != (0, 0));
            if !reducible && !(x == 0 && y == 1) && !(x == d && y == -k) {
                irreducible.push(lv(&[x, y]));
            }
        }
        irreducible.sort();
        irreducible
    }

    #[test]
    fn added_rays_match_boundary_oracle() {
        for d in 2..=12 {
            for k in 1..d {
                if gcd(d, k) != 1 {
                    continue;
                }
                let mut added = resolve_cone_2d(&lv(&[0, 1]), &lv(&[d, -k])).unwrap();
                added.sort();
                assert_eq!(added, oracle_added_rays(d, k), "d={d} k={k}");
            }
        }
    }

    #[test]
    fn exceptional_motive_examples() {
        let m = exceptional_motive(&ExceptionalModel {
            num_components: 3,
            total_lines: 5,
            chain_lengths: vec![1, 1, 3],
        });
        assert_eq!(m.to_string(), "Z^3 + Z^5{1}");
        let m = exceptional_motive(&ExceptionalModel {
            num_components: 1,
            total_lines: 1,
            chain_lengths: vec![1],
        });
        assert_eq!(m.to_string(), "Z + Z{1}");
        let m = exceptional_motive(&ExceptionalModel {
            num_components: 0,
            total_lines: 0,
            chain_lengths: vec![],
        });
        assert!(m.is_zero());
        assert_eq!(m.to_string(), "0");
    }
}

//! Cellularity certification for smooth fans: a toric variety is cellular
//! once its support absorbs a translation (all one-parameter limits exist)
//! and the translation direction pairs nontrivially with every semigroup
//! generator of every maximal dual cone (the subgroup is regular). Also the
//! singular-locus intersection graph of rank-3 fans, whose first Betti number
//! obstructs cellular resolutions.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::fan::{Cone, Fan};
use crate::geom::{self, covered_by, dual_vrep, hrep_of_cone, VRep};
use crate::lattice::{Int, IntegerMatrix, LatticeVector};

/// Default exhaustive-search bound on the sup norm of candidate vectors.
pub const DEFAULT_SEARCH_BOUND: Int = 16;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum CellularityError {
    #[error("the cone contains a line; Hilbert bases are computed for pointed cones")]
    UnboundedLineality,
    #[error("minimal singular cone {cone} has dimension 3; it is an isolated singular point, not a curve stratum")]
    UnsupportedSingularStratum { cone: String },
    #[error("the singular-locus graph is defined for rank-3 fans")]
    WrongRank,
}

/// Does the support of the fan contain its own translate by `u`?
///
/// Decided exactly: for each maximal cone the translated cone must be covered
/// by the union of all maximal cones, which reduces to rational feasibility
/// problems. Sampling could only refute, never certify.
pub fn star_shaped_test(fan: &Fan, u: &LatticeVector) -> bool {
    let hreps = fan.max_cone_hreps();
    if covered_by(&[], &hreps, fan.rank()) {
        return true; // complete support absorbs every translation
    }
    hreps.iter().all(|h| {
        let region = h.shifted_constraints(Some(u.coords()));
        covered_by(&region, &hreps, fan.rank())
    })
}

fn rows_of(vectors: &[LatticeVector]) -> Vec<Vec<Int>> {
    vectors.iter().map(|v| v.coords().to_vec()).collect()
}

/// Minimal generating set of the semigroup `Cone(gens) ∩ Z^rank` for a
/// pointed cone: lattice points of the fundamental parallelepipeds of a
/// triangulation, reduced to the irreducible elements.
pub fn hilbert_basis(gens: &[LatticeVector], rank: usize) -> Result<Vec<LatticeVector>, CellularityError> {
    let rows = rows_of(gens);
    let hrep = hrep_of_cone(&rows, rank);
    if !geom::int_kernel(&hrep.inequality_rows(), rank).is_empty() {
        return Err(CellularityError::UnboundedLineality);
    }
    Ok(hilbert_basis_pointed(&rows, rank).into_iter().map(LatticeVector::new).collect())
}

fn hilbert_basis_pointed(gens: &[Vec<Int>], rank: usize) -> Vec<Vec<Int>> {
    let mut extreme: Vec<Vec<Int>> = Vec::new();
    for g in gens {
        let content = g.iter().fold(0, |acc, &c| crate::lattice::gcd(acc, c));
        if content == 0 {
            continue;
        }
        let p: Vec<Int> = g.iter().map(|&c| c / content).collect();
        if !extreme.contains(&p) {
            extreme.push(p);
        }
    }
    // drop generators interior to the cone of the others
    let mut i = 0;
    while i < extreme.len() {
        let mut others = extreme.clone();
        others.remove(i);
        if !others.is_empty() && hrep_of_cone(&others, rank).contains(&extreme[i]) {
            extreme.remove(i);
        } else {
            i += 1;
        }
    }
    if extreme.is_empty() {
        return Vec::new();
    }
    let hrep = hrep_of_cone(&extreme, rank);
    let dim = geom::rank_of(&extreme);
    let simplices: Vec<Vec<Vec<Int>>> = if extreme.len() <= dim {
        vec![extreme.clone()]
    } else {
        triangulate_3d(&extreme, rank)
    };
    let mut candidates: BTreeSet<Vec<Int>> = extreme.iter().cloned().collect();
    for simplex in &simplices {
        for p in parallelepiped_points(simplex, rank) {
            candidates.insert(p);
        }
    }
    candidates.remove(&vec![0; rank]);
    let candidates: Vec<Vec<Int>> = candidates.into_iter().collect();
    let mut basis = Vec::new();
    'next: for h in &candidates {
        for c in &candidates {
            if c == h {
                continue;
            }
            let diff: Vec<Int> = h.iter().zip(c).map(|(a, b)| a - b).collect();
            if diff.iter().any(|&x| x != 0) && hrep.contains(&diff) {
                continue 'next; // h = c + (h - c) is reducible
            }
            // h = 2c is also reducible
            if diff == *c {
                continue 'next;
            }
        }
        basis.push(h.clone());
    }
    basis.sort();
    basis
}

/// Fan the boundary facets of a pointed full-dimensional 3D cone over one of
/// its extreme rays.
fn triangulate_3d(extreme: &[Vec<Int>], rank: usize) -> Vec<Vec<Vec<Int>>> {
    let hrep = hrep_of_cone(extreme, rank);
    let apex = extreme[0].clone();
    let mut simplices = Vec::new();
    for n in &hrep.normals {
        let facet: Vec<Vec<Int>> =
            extreme.iter().filter(|g| geom::dot(n, g) == 0).cloned().collect();
        if facet.len() == 2 && !facet.contains(&apex) {
            simplices.push(vec![apex.clone(), facet[0].clone(), facet[1].clone()]);
        }
    }
    simplices
}

/// Lattice points `sum t_i g_i` with `0 <= t_i < 1`, for independent `g_i`.
fn parallelepiped_points(gens: &[Vec<Int>], rank: usize) -> Vec<Vec<Int>> {
    let s = gens.len();
    // choose s coordinates where the generator matrix is invertible
    let cols: Vec<Vec<Int>> = (0..rank).map(|j| gens.iter().map(|g| g[j]).collect()).collect();
    let index_rows = choose_independent_rows(&cols, s);
    let sub: Vec<Vec<Int>> = index_rows.iter().map(|&j| cols[j].clone()).collect();
    let det = det_small(&sub);
    debug_assert!(det != 0);
    let (sub, det) = if det < 0 {
        (sub.iter().map(|r| r.iter().map(|&c| -c).collect()).collect::<Vec<Vec<Int>>>(), -det)
    } else {
        (sub, det)
    };
    let lo: Vec<Int> = (0..rank).map(|j| gens.iter().map(|g| g[j].min(0)).sum()).collect();
    let hi: Vec<Int> = (0..rank).map(|j| gens.iter().map(|g| g[j].max(0)).sum()).collect();
    let mut out = Vec::new();
    let mut x = lo.clone();
    'outer: loop {
        // solve sub * t = x restricted to the chosen coordinates (Cramer)
        let target: Vec<Int> = index_rows.iter().map(|&j| x[j]).collect();
        if let Some(ts) = cramer_in_range(&sub, det, &target) {
            // verify the remaining coordinates exactly: det * x_j = sum g_i[j] * ts_i
            let consistent = (0..rank).all(|j| {
                let lhs: i128 = det as i128 * x[j] as i128;
                let rhs: i128 =
                    gens.iter().zip(&ts).map(|(g, &t)| g[j] as i128 * t as i128).sum();
                lhs == rhs
            });
            if consistent {
                out.push(x.clone());
            }
        }
        // advance the box counter
        for j in 0..rank {
            x[j] += 1;
            if x[j] <= hi[j] {
                continue 'outer;
            }
            x[j] = lo[j];
        }
        break;
    }
    out
}

/// Numerators `t_i * det` of the Cramer solution when all lie in `[0, det)`.
fn cramer_in_range(sub: &[Vec<Int>], det: Int, target: &[Int]) -> Option<Vec<Int>> {
    let s = sub.len();
    let mut ts = Vec::with_capacity(s);
    for i in 0..s {
        let mut m = sub.to_vec();
        for (row, &t) in m.iter_mut().zip(target) {
            row[i] = t;
        }
        let num = det_small(&m);
        if num < 0 || num >= det {
            return None;
        }
        ts.push(num);
    }
    Some(ts)
}

fn det_small(m: &[Vec<Int>]) -> Int {
    match m.len() {
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        3 => {
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        }
        n => unreachable!("no {n}x{n} determinants here"),
    }
}

fn choose_independent_rows(cols: &[Vec<Int>], s: usize) -> Vec<usize> {
    let n = cols.len();
    let mut pick: Vec<usize> = (0..s).collect();
    loop {
        let sub: Vec<Vec<Int>> = pick.iter().map(|&j| cols[j].clone()).collect();
        if det_small(&sub) != 0 {
            return pick;
        }
        // next combination of s indices out of n
        let mut i = s;
        loop {
            assert!(i > 0, "generators were not independent");
            i -= 1;
            if pick[i] != i + n - s {
                pick[i] += 1;
                for j in i + 1..s {
                    pick[j] = pick[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Semigroup generators of a dual cone given by extreme rays and lineality:
/// the Hilbert basis of the pointed part lifted through an adapted basis,
/// together with a lattice basis of the lineality space and its negatives.
pub(crate) fn semigroup_generators_of_vrep(v: &VRep, rank: usize) -> Vec<Vec<Int>> {
    if v.lineality.is_empty() {
        return hilbert_basis_pointed(&v.rays, rank);
    }
    let l = v.lineality.len();
    // unimodular basis with the lineality lattice in the last l columns
    let kernel_matrix = IntegerMatrix::from_rows(
        &(0..rank)
            .map(|i| v.lineality.iter().map(|b| b[i]).collect::<Vec<Int>>())
            .collect::<Vec<_>>(),
    );
    let (diag, krank, u_inv, _) = crate::lattice::smith_with_transforms(&kernel_matrix);
    debug_assert_eq!(krank, l);
    debug_assert!(diag[..l].iter().all(|&d| d == 1), "lineality lattice is saturated");
    let mut basis: Vec<Vec<Int>> = Vec::with_capacity(rank);
    for j in (l..rank).chain(0..l) {
        basis.push((0..rank).map(|i| Int::try_from(u_inv[i][j]).expect("fits i64")).collect());
    }
    let columns: Vec<Vec<Int>> = basis;
    let inv = invert_unimodular(&columns, rank);
    let quotient_gens: Vec<Vec<Int>> = v
        .rays
        .iter()
        .map(|r| (0..rank - l).map(|i| geom::dot(&inv[i], r)).collect())
        .collect();
    let quotient_basis = hilbert_basis_pointed(&quotient_gens, rank - l);
    let mut out = Vec::new();
    for q in quotient_basis {
        let mut lifted = vec![0; rank];
        for (i, &qi) in q.iter().enumerate() {
            for (x, &b) in lifted.iter_mut().zip(&columns[i]) {
                *x += qi * b;
            }
        }
        out.push(lifted);
    }
    for b in &columns[rank - l..] {
        out.push(b.clone());
        out.push(b.iter().map(|&c| -c).collect());
    }
    out.sort();
    out
}

/// Rows of the inverse of the matrix with the given columns (determinant ±1).
fn invert_unimodular(columns: &[Vec<Int>], rank: usize) -> Vec<Vec<Int>> {
    let m: Vec<Vec<Int>> = (0..rank).map(|i| (0..rank).map(|j| columns[j][i]).collect()).collect();
    let det = det_small(&m);
    debug_assert!(det == 1 || det == -1);
    let cof = |i: usize, j: usize| -> Int {
        let minor: Vec<Vec<Int>> = m
            .iter()
            .enumerate()
            .filter(|&(r, _)| r != i)
            .map(|(_, row)| {
                row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &v)| v).collect()
            })
            .collect();
        let sign = if (i + j).is_multiple_of(2) { 1 } else { -1 };
        if minor.is_empty() {
            sign
        } else {
            sign * det_small(&minor)
        }
    };
    (0..rank)
        .map(|i| (0..rank).map(|j| det * cof(j, i)).collect())
        .collect()
}

/// All semigroup generators of the duals of the maximal cones, deduplicated.
pub fn dual_semigroup_covectors(fan: &Fan) -> Vec<LatticeVector> {
    let mut set: BTreeSet<Vec<Int>> = BTreeSet::new();
    for cone in fan.max_cones() {
        let dual = dual_vrep(&rows_of(&fan.cone_generators(cone)), fan.rank());
        for m in semigroup_generators_of_vrep(&dual, fan.rank()) {
            set.insert(m);
        }
    }
    set.into_iter().map(LatticeVector::new).collect()
}

/// Result of the exhaustive search for a vector satisfying both the
/// star-shape condition and regularity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RegularVectorSearch {
    Found(LatticeVector),
    /// No lattice vector up to the bound star-shapes the support.
    NoStarVector { bound: Int },
    /// Some vectors star-shape the support but all pair to zero with a dual
    /// semigroup generator; the primitive star directions are reported.
    ConditionBFails { star_directions: Vec<LatticeVector>, bound: Int },
}

impl RegularVectorSearch {
    /// Why the search came back empty, if it did.
    pub fn failure_reason(&self) -> Option<String> {
        match self {
            RegularVectorSearch::Found(_) => None,
            RegularVectorSearch::NoStarVector { bound } => Some(format!(
                "no star-shaping vector found, search bound |u|_inf <= {bound} exhausted"
            )),
            RegularVectorSearch::ConditionBFails { star_directions, bound } => {
                let dirs =
                    star_directions.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(", ");
                Some(format!(
                    "condition b fails on Cone({dirs}): every star-shaping vector up to \
                     |u|_inf <= {bound} pairs to zero with a dual semigroup generator"
                ))
            }
        }
    }
}

/// Search lattice vectors by increasing sup norm for one satisfying both
/// conditions. Cheap necessary membership checks prune before the exact
/// star-shape decision runs.
pub fn regular_vector_search(fan: &Fan, bound: Int) -> RegularVectorSearch {
    let rank = fan.rank();
    let hreps = fan.max_cone_hreps();
    let complete = covered_by(&[], &hreps, rank);
    let covectors = dual_semigroup_covectors(fan);
    let in_support = |p: &[Int]| hreps.iter().any(|h| h.contains(p));
    let mut probes: Vec<Vec<Int>> = rows_of(fan.rays());
    for cone in fan.max_cones() {
        let mut sum = vec![0; rank];
        for g in fan.cone_generators(cone) {
            for (x, &c) in sum.iter_mut().zip(g.coords()) {
                *x += c;
            }
        }
        probes.push(sum);
    }
    let mut star_directions: Vec<LatticeVector> = Vec::new();
    for norm in 1..=bound {
        for u in cube_shell(rank, norm) {
            if !complete {
                if !in_support(&u) {
                    continue;
                }
                let shifted_ok = probes.iter().all(|p| {
                    let q: Vec<Int> = p.iter().zip(&u).map(|(a, b)| a + b).collect();
                    in_support(&q)
                });
                if !shifted_ok {
                    continue;
                }
            }
            let u = LatticeVector::new(u);
            if !complete && !star_shaped_test(fan, &u) {
                continue;
            }
            let dir = crate::lattice::primitive(&u).expect("nonzero");
            if !star_directions.contains(&dir) {
                star_directions.push(dir);
            }
            if covectors.iter().all(|m| m.dot(&u) != 0) {
                return RegularVectorSearch::Found(u);
            }
        }
    }
    if star_directions.is_empty() {
        RegularVectorSearch::NoStarVector { bound }
    } else {
        star_directions.sort();
        RegularVectorSearch::ConditionBFails { star_directions, bound }
    }
}

/// Lattice points with sup norm exactly `norm`, in lexicographic order.
fn cube_shell(rank: usize, norm: Int) -> Vec<Vec<Int>> {
    let mut out = Vec::new();
    let mut point = vec![-norm; rank];
    loop {
        if point.iter().any(|&c| c.abs() == norm) {
            out.push(point.clone());
        }
        let mut i = rank;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            point[i] += 1;
            if point[i] <= norm {
                break;
            }
            point[i] = -norm;
        }
    }
}

/// Where the quasiprojectivity assumption of the certificate came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuasiprojectiveSource {
    UserFlag,
    CompleteRank2,
    ConvexSupportPolyhedral,
    RefinementOfQuasiprojective,
}

impl fmt::Display for QuasiprojectiveSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = match self {
            QuasiprojectiveSource::UserFlag => "asserted by flag",
            QuasiprojectiveSource::CompleteRank2 => "complete rank-2 fan (projective)",
            QuasiprojectiveSource::ConvexSupportPolyhedral => {
                "convex support (variety of a full-dimensional polyhedron)"
            }
            QuasiprojectiveSource::RefinementOfQuasiprojective => {
                "refinement of a quasiprojective fan"
            }
        };
        write!(f, "{text}")
    }
}

/// How the caller wants quasiprojectivity resolved.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum QuasiprojectivityHint {
    /// Derive it from the paper's automatic cases, or fail.
    #[default]
    Auto,
    /// The user asserts the fan's variety is quasiprojective.
    UserFlag,
    /// The fan refines one already known to be quasiprojective.
    Inherited,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertificateStatus {
    Cellular(LatticeVector),
    NotCertified(String),
    Obstructed(String),
}

impl fmt::Display for CertificateStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CertificateStatus::Cellular(u) => write!(f, "cellular via u = {u}"),
            CertificateStatus::NotCertified(reason) => write!(f, "not certified: {reason}"),
            CertificateStatus::Obstructed(reason) => write!(f, "obstructed: {reason}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellularityCertificate {
    pub status: CertificateStatus,
    pub quasiprojective_source: Option<QuasiprojectiveSource>,
}

impl CellularityCertificate {
    pub fn is_cellular(&self) -> bool {
        matches!(self.status, CertificateStatus::Cellular(_))
    }
}

impl fmt::Display for CellularityCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.status)?;
        if let Some(src) = &self.quasiprojective_source {
            write!(f, " (quasiprojective: {src})")?;
        }
        Ok(())
    }
}

/// Certify cellularity of a smooth validated fan. Failure is encoded in the
/// certificate, never as an error.
pub fn certify_cellular(
    fan: &Fan,
    hint: QuasiprojectivityHint,
    search_bound: Int,
) -> CellularityCertificate {
    for cone in fan.max_cones() {
        if !fan.is_smooth_cone(cone) {
            return CellularityCertificate {
                status: CertificateStatus::Obstructed(format!(
                    "cone {cone} is singular; certificates are issued for smooth fans only"
                )),
                quasiprojective_source: None,
            };
        }
    }
    if let Some(cone) = fan.max_cones().iter().find(|c| fan.cone_dim(c) < fan.rank()) {
        return CellularityCertificate {
            status: CertificateStatus::NotCertified(format!(
                "maximal cone {cone} is not full-dimensional, so torus fixed points are not isolated"
            )),
            quasiprojective_source: None,
        };
    }
    let source = quasiprojectivity_source(fan, hint);
    let search = regular_vector_search(fan, search_bound);
    let status = match (search, &source) {
        (RegularVectorSearch::Found(u), Some(_)) => CertificateStatus::Cellular(u),
        (RegularVectorSearch::Found(u), None) => CertificateStatus::NotCertified(format!(
            "u = {u} satisfies both conditions but quasiprojectivity could not be established; \
             pass the quasiprojective flag if it is known"
        )),
        (search, _) => {
            CertificateStatus::NotCertified(search.failure_reason().expect("not found"))
        }
    };
    CellularityCertificate { quasiprojective_source: source, status }
}

fn quasiprojectivity_source(fan: &Fan, hint: QuasiprojectivityHint) -> Option<QuasiprojectiveSource> {
    match hint {
        QuasiprojectivityHint::UserFlag => Some(QuasiprojectiveSource::UserFlag),
        QuasiprojectivityHint::Inherited => Some(QuasiprojectiveSource::RefinementOfQuasiprojective),
        QuasiprojectivityHint::Auto => {
            let hreps = fan.max_cone_hreps();
            let complete = covered_by(&[], &hreps, fan.rank());
            if complete {
                return (fan.rank() == 2).then_some(QuasiprojectiveSource::CompleteRank2);
            }
            // convex support: the cone over all rays is covered by the fan
            let hull = hrep_of_cone(&rows_of(fan.rays()), fan.rank());
            let hull_region = hull.shifted_constraints(None);
            let convex = covered_by(&hull_region, &hreps, fan.rank());
            if !convex {
                return None;
            }
            if fan.rank() == 2 {
                return Some(QuasiprojectiveSource::ConvexSupportPolyhedral);
            }
            // rank 3: only a strongly convex support is a refinement of an
            // affine single-cone fan; a support containing a line proves nothing
            let pointed = geom::int_kernel(&hull.inequality_rows(), fan.rank()).is_empty();
            pointed.then_some(QuasiprojectiveSource::ConvexSupportPolyhedral)
        }
    }
}

/// Vertex of the singular-locus graph: either the torus-fixed point of a
/// full-dimensional maximal cone, or the free end of a noncompact stratum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrbitVertex {
    Fixed { cone: Cone },
    Free,
}

/// One minimal singular 2-face, as an edge between the fixed points lying on
/// its orbit closure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitEdge {
    pub face: Cone,
    pub endpoints: [usize; 2],
}

/// The incidence multigraph of the curve strata of the singular locus of a
/// rank-3 toric variety. A positive first Betti number for a complete fan
/// means the singular locus has nontrivial `H_1`, so no cellular resolution
/// of singularities exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitGraph {
    pub vertices: Vec<OrbitVertex>,
    pub edges: Vec<OrbitEdge>,
    pub component_count: usize,
    pub first_betti: usize,
}

impl OrbitGraph {
    /// Fixed points where at least two strata meet.
    pub fn meeting_point_count(&self) -> usize {
        self.vertices
            .iter()
            .enumerate()
            .filter(|(i, v)| {
                matches!(v, OrbitVertex::Fixed { .. })
                    && self.edges.iter().filter(|e| e.endpoints.contains(i)).count() >= 2
            })
            .count()
    }
}

/// Build the singular-locus graph of a validated rank-3 fan whose minimal
/// singular cones are all 2-dimensional; isolated singular points (minimal
/// singular 3-cones) are rejected and must be handled separately by the
/// caller.
pub fn singular_locus_graph(fan: &Fan) -> Result<OrbitGraph, CellularityError> {
    if fan.rank() != 3 {
        return Err(CellularityError::WrongRank);
    }
    let minimal = fan.minimal_singular_cones();
    if let Some(cone) = minimal.iter().find(|c| fan.cone_dim(c) == 3) {
        return Err(CellularityError::UnsupportedSingularStratum { cone: cone.to_string() });
    }
    Ok(orbit_graph_of_faces(fan, &minimal))
}

/// Graph over a given list of 2-dimensional singular faces; use this instead
/// of [`singular_locus_graph`] when isolated singular points (which are
/// always cellular) have been split off by the caller.
pub fn orbit_graph_of_faces(fan: &Fan, faces: &[Cone]) -> OrbitGraph {
    let mut vertices: Vec<OrbitVertex> = Vec::new();
    let mut fixed_ids: BTreeMap<Cone, usize> = BTreeMap::new();
    let mut edges = Vec::new();
    for face in faces {
        let mut ends: Vec<usize> = Vec::new();
        for max in fan.max_cones() {
            if fan.cone_dim(max) == 3 && max.contains_cone(face) {
                let id = *fixed_ids.entry(max.clone()).or_insert_with(|| {
                    vertices.push(OrbitVertex::Fixed { cone: max.clone() });
                    vertices.len() - 1
                });
                ends.push(id);
            }
        }
        while ends.len() < 2 {
            vertices.push(OrbitVertex::Free);
            ends.push(vertices.len() - 1);
        }
        debug_assert_eq!(ends.len(), 2, "a 2-face lies in at most two maximal cones");
        edges.push(OrbitEdge { face: face.clone(), endpoints: [ends[0], ends[1]] });
    }
    let component_count = count_components(vertices.len(), &edges);
    let first_betti = edges.len() + component_count - vertices.len();
    OrbitGraph { vertices, edges, component_count, first_betti }
}

fn count_components(vertex_count: usize, edges: &[OrbitEdge]) -> usize {
    let mut parent: Vec<usize> = (0..vertex_count).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let root = find(parent, parent[x]);
            parent[x] = root;
        }
        parent[x]
    }
    for e in edges {
        let (a, b) = (find(&mut parent, e.endpoints[0]), find(&mut parent, e.endpoints[1]));
        if a != b {
            parent[a] = b;
        }
    }
    (0..vertex_count).filter(|&x| find(&mut parent, x) == x).count()
}

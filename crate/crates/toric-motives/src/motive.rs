//! Motives as canonical direct sums of summands `A{i}[j]` (a finitely
//! generated abelian group, a Tate twist, a shift of 0 or 1), and the
//! assembly results turning Borel–Moore homology into motives.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::cellular::{certify_cellular, CertificateStatus, CellularityCertificate, QuasiprojectivityHint};
use crate::fan::{Fan, FanError, FanProfile};
use crate::homology::{
    surface_bm_homology, FGAbelianGroup, GradedGroups, HomologyError,
};
use crate::resolve::{resolve_fan_2d, ExceptionalModel, ResolutionResult};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum MotiveError {
    #[error("H_{} is not free while H_{} is nonzero: the direct-sum formula does not apply", 2 * i, 2 * i + 1)]
    HypothesisViolated { i: u32 },
    #[error("cofiber inputs must be cellular: free groups in even degrees only")]
    NonCellularInput,
    #[error("branch counts must all be >= 1; got {0}")]
    BadBranchCount(i64),
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum PipelineError {
    #[error(transparent)]
    Fan(#[from] FanError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error(transparent)]
    Motive(#[from] MotiveError),
    #[error("cellularity of the resolution could not be certified: {0}")]
    CellularityNotCertified(String),
}

/// One summand `A{twist}[shift]` of a motive; `shift` is 0 or 1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MotiveSummand {
    pub group: FGAbelianGroup,
    pub twist: u32,
    pub shift: u8,
}

impl MotiveSummand {
    pub fn new(group: FGAbelianGroup, twist: u32, shift: u8) -> Self {
        assert!(shift <= 1, "the formulas here only produce shifts 0 and 1");
        MotiveSummand { group, twist, shift }
    }
}

/// A formal direct sum of summands in canonical order: twists ascending,
/// shift 0 before shift 1 within a twist, one summand per (twist, shift)
/// slot, no trivial groups. Equality is structural equality.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Motive {
    summands: Vec<MotiveSummand>,
}

impl Motive {
    pub fn zero() -> Self {
        Motive::default()
    }

    pub fn from_summands(parts: Vec<MotiveSummand>) -> Self {
        let mut slots: BTreeMap<(u32, u8), FGAbelianGroup> = BTreeMap::new();
        for part in parts {
            assert!(part.shift <= 1);
            slots
                .entry((part.twist, part.shift))
                .and_modify(|g| *g = g.direct_sum(&part.group))
                .or_insert(part.group);
        }
        Motive {
            summands: slots
                .into_iter()
                .filter(|(_, g)| !g.is_zero())
                .map(|((twist, shift), group)| MotiveSummand { group, twist, shift })
                .collect(),
        }
    }

    pub fn summands(&self) -> &[MotiveSummand] {
        &self.summands
    }

    pub fn is_zero(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn direct_sum(&self, other: &Motive) -> Motive {
        let mut parts = self.summands.clone();
        parts.extend(other.summands.iter().cloned());
        Motive::from_summands(parts)
    }

    /// A pure Tate motive is a finite direct sum of `Z{n}`: shift 0 and
    /// torsion-free everywhere.
    pub fn is_pure_tate(&self) -> bool {
        self.summands.iter().all(|s| s.shift == 0 && s.group.is_free())
    }
}

impl fmt::Display for Motive {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<String> = Vec::new();
        for s in &self.summands {
            let suffix = {
                let mut suffix = String::new();
                if s.twist > 0 {
                    suffix.push_str(&format!("{{{}}}", s.twist));
                }
                if s.shift == 1 {
                    suffix.push_str("[1]");
                }
                suffix
            };
            match s.group.free_rank() {
                0 => {}
                1 => terms.push(format!("Z{suffix}")),
                r => terms.push(format!("Z^{r}{suffix}")),
            }
            for t in s.group.torsion() {
                terms.push(format!("Z/{t}{suffix}"));
            }
        }
        write!(f, "{}", terms.join(" + "))
    }
}

/// Motive with compact support of a cellular variety from its cell counts:
/// `⊕ Z^{a_i}{i}`.
pub fn cellular_motive(cell_counts: &[usize]) -> Motive {
    Motive::from_summands(
        cell_counts
            .iter()
            .enumerate()
            .map(|(i, &a)| MotiveSummand::new(FGAbelianGroup::free(a), i as u32, 0))
            .collect(),
    )
}

/// The direct-sum description `M^c(X) = ⊕ H_{2i}{i} + H_{2i+1}{i}[1]`,
/// valid when for every `i` up to the dimension either `H_{2i}` is free or
/// `H_{2i+1}` vanishes.
pub fn assemble_motive(h: &GradedGroups) -> Result<Motive, MotiveError> {
    let dim = h.top_degree() / 2;
    for i in 0..=dim {
        let even = h.get(2 * i);
        let odd = h.get(2 * i + 1);
        if !even.is_free() && !odd.is_zero() {
            return Err(MotiveError::HypothesisViolated { i });
        }
    }
    let mut parts = Vec::new();
    for (degree, group) in h.iter() {
        parts.push(MotiveSummand::new(group.clone(), degree / 2, (degree % 2) as u8));
    }
    Ok(Motive::from_summands(parts))
}

/// Motive of a rational projective curve from the branch counts of its
/// singular points: `Z + Z^{m-n}[1] + Z{1}` with `n` singularities and
/// `m` total branches.
pub fn curve_motive(branch_counts: &[i64]) -> Result<Motive, MotiveError> {
    if let Some(&bad) = branch_counts.iter().find(|&&b| b < 1) {
        return Err(MotiveError::BadBranchCount(bad));
    }
    let n = branch_counts.len();
    let m: i64 = branch_counts.iter().sum();
    let loops = (m - n as i64) as usize;
    Ok(Motive::from_summands(vec![
        MotiveSummand::new(FGAbelianGroup::free(1), 0, 0),
        MotiveSummand::new(FGAbelianGroup::free(loops), 0, 1),
        MotiveSummand::new(FGAbelianGroup::free(1), 1, 0),
    ]))
}

/// The cofiber presentation of `M^c(X)` when the direct-sum hypothesis may
/// fail: the two pure objects of the cellular resolution plus the degreewise
/// rank data of the undetermined connecting map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CofiberDiagnostic {
    /// `⊕ H_{2i}(E){i}`
    pub source: Motive,
    /// `⊕ (H_{2i}(Z) + H_{2i}(X~)){i}`
    pub target: Motive,
    /// `(twist, source rank, target rank)` for every twist that occurs.
    pub per_twist: Vec<(u32, usize, usize)>,
    /// When the source vanishes the cofiber is the target itself.
    pub determined: Option<Motive>,
}

impl fmt::Display for CofiberDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "cofiber presentation (motive presented, not resolved):")?;
        writeln!(f, "  source: {}", self.source)?;
        writeln!(f, "  target: {}", self.target)?;
        match &self.determined {
            Some(m) => writeln!(f, "  the source vanishes, so M^c(X) = {m}"),
            None => {
                for &(i, e, t) in &self.per_twist {
                    writeln!(
                        f,
                        "  twist {i}: f_{i}: Z^{e} -> Z^{t} with H_{}(X) = coker f_{i}, H_{}(X) = ker f_{i}; \
                         0 <= rank f_{i} <= {}",
                        2 * i,
                        2 * i + 1,
                        e.min(t),
                    )?;
                }
                writeln!(f, "  the maps f_i are not determined by the combinatorics alone")
            }
        }
    }
}

/// Report the cofiber presentation from the homology of the exceptional
/// locus, the singular locus and the resolution. All three inputs must be
/// cellular-shaped (free, even degrees).
pub fn cofiber_diagnostic(
    e: &GradedGroups,
    z: &GradedGroups,
    xt: &GradedGroups,
) -> Result<CofiberDiagnostic, MotiveError> {
    for h in [e, z, xt] {
        if !h.is_cellular_shaped() {
            return Err(MotiveError::NonCellularInput);
        }
    }
    let even_motive = |h: &GradedGroups| -> Motive {
        Motive::from_summands(
            h.iter().map(|(d, g)| MotiveSummand::new(g.clone(), d / 2, 0)).collect(),
        )
    };
    let source = even_motive(e);
    let target = even_motive(z).direct_sum(&even_motive(xt));
    let max_twist = source
        .summands()
        .iter()
        .chain(target.summands())
        .map(|s| s.twist)
        .max();
    let rank_at = |m: &Motive, i: u32| {
        m.summands().iter().find(|s| s.twist == i).map_or(0, |s| s.group.free_rank())
    };
    let per_twist = (0..=max_twist.unwrap_or(0))
        .filter_map(|i| {
            let (e_rank, t_rank) = (rank_at(&source, i), rank_at(&target, i));
            (e_rank + t_rank > 0).then_some((i, e_rank, t_rank))
        })
        .collect();
    let determined = source.is_zero().then(|| target.clone());
    Ok(CofiberDiagnostic { source, target, per_twist, determined })
}

/// Everything the surface pipeline produces on the way to the motive.
#[derive(Clone, Debug)]
pub struct SurfacePipeline {
    pub profile: FanProfile,
    pub resolution: ResolutionResult,
    pub exceptional: ExceptionalModel,
    pub certificate: CellularityCertificate,
    pub homology: GradedGroups,
    pub degenerate_torsion: bool,
    pub motive: Motive,
    /// Complete fans give `M(X)`; the rest give the compact-support motive.
    pub complete: bool,
}

/// Full pipeline for a validated rank-2 fan: resolve, certify cellularity of
/// the refinement, evaluate the homology closed form, assemble the motive.
pub fn toric_surface_motive(
    fan: &Fan,
    quasiprojective: QuasiprojectivityHint,
    search_bound: i64,
) -> Result<SurfacePipeline, PipelineError> {
    assert_eq!(fan.rank(), 2, "the surface pipeline needs a rank-2 fan");
    let profile = fan.validate()?;
    let resolution = resolve_fan_2d(fan)?;
    let refined_hint = match quasiprojective {
        QuasiprojectivityHint::UserFlag => QuasiprojectivityHint::Inherited,
        hint => hint,
    };
    let certificate = certify_cellular(&resolution.refined_fan, refined_hint, search_bound);
    if !matches!(certificate.status, CertificateStatus::Cellular(_)) {
        return Err(PipelineError::CellularityNotCertified(certificate.status.to_string()));
    }
    let exceptional = ExceptionalModel::from_resolution(&resolution);
    let surface = surface_bm_homology(&profile)?;
    let motive = assemble_motive(&surface.groups)?;
    Ok(SurfacePipeline {
        complete: profile.is_complete,
        profile,
        resolution,
        exceptional,
        certificate,
        homology: surface.groups,
        degenerate_torsion: surface.degenerate,
        motive,
    })
}

/// Closed form for complete rank-2 fans: `Z + Z^{r-2}{1} + Z/m{1} + Z{2}`.
pub fn complete_surface_motive_formula(rays: usize, index_m: i64) -> Motive {
    Motive::from_summands(vec![
        MotiveSummand::new(FGAbelianGroup::free(1), 0, 0),
        MotiveSummand::new(FGAbelianGroup::free(rays - 2), 1, 0),
        MotiveSummand::new(FGAbelianGroup::cyclic(index_m), 1, 0),
        MotiveSummand::new(FGAbelianGroup::free(1), 2, 0),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::{cellular_bm_homology, normalize_group};

    fn graded(top: u32, entries: &[(u32, FGAbelianGroup)]) -> GradedGroups {
        let mut g = GradedGroups::new(top);
        for (d, group) in entries {
            g.set(*d, group.clone()).unwrap();
        }
        g
    }

    #[test]
    fn motive_canonical_form_and_display() {
        let m = Motive::from_summands(vec![
            MotiveSummand::new(FGAbelianGroup::free(1), 2, 0),
            MotiveSummand::new(FGAbelianGroup::free(1), 1, 1),
            MotiveSummand::new(FGAbelianGroup::cyclic(2), 1, 0),
            MotiveSummand::new(FGAbelianGroup::free(2), 1, 0),
            MotiveSummand::new(FGAbelianGroup::free(1), 0, 0),
        ]);
        assert_eq!(m.to_string(), "Z + Z^2{1} + Z/2{1} + Z{1}[1] + Z{2}");
        // merging a split slot and reordering the input yields the same motive
        let split = Motive::from_summands(vec![
            MotiveSummand::new(FGAbelianGroup::free(1), 0, 0),
            MotiveSummand::new(FGAbelianGroup::free(1), 1, 0),
            MotiveSummand::new(FGAbelianGroup::free(1), 2, 0),
            MotiveSummand::new(normalize_group(1, &[2]), 1, 0),
            MotiveSummand::new(FGAbelianGroup::free(1), 1, 1),
        ]);
        assert_eq!(m, split);
    }

    #[test]
    fn assemble_affine_cone() {
        for m in [2, 5, 9] {
            let h = graded(4, &[(2, FGAbelianGroup::cyclic(m)), (4, FGAbelianGroup::free(1))]);
            let motive = assemble_motive(&h).unwrap();
            assert_eq!(motive.to_string(), format!("Z/{m}{{1}} + Z{{2}}"));
        }
    }

    #[test]
    fn assemble_quadric_cone() {
        let h = graded(
            6,
            &[
                (3, FGAbelianGroup::free(1)),
                (4, FGAbelianGroup::free(1)),
                (6, FGAbelianGroup::free(1)),
            ],
        );
        let motive = assemble_motive(&h).unwrap();
        assert_eq!(motive.to_string(), "Z{1}[1] + Z{2} + Z{3}");
        assert!(!motive.is_pure_tate());
    }

    #[test]
    fn assemble_cube_fan_homology() {
        let h = graded(
            6,
            &[
                (0, FGAbelianGroup::free(1)),
                (2, FGAbelianGroup::free(1)),
                (3, FGAbelianGroup::free(2)),
                (4, FGAbelianGroup::free(5)),
                (6, FGAbelianGroup::free(1)),
            ],
        );
        let motive = assemble_motive(&h).unwrap();
        assert_eq!(motive.to_string(), "Z + Z{1} + Z^2{1}[1] + Z^5{2} + Z{3}");
    }

    #[test]
    fn assemble_rejects_bbfk_homology() {
        // H_2 = Z + Z/2 with H_3 = Z violates the hypothesis at i = 1
        let h = graded(
            6,
            &[
                (0, FGAbelianGroup::free(1)),
                (2, normalize_group(1, &[2])),
                (3, FGAbelianGroup::free(1)),
                (6, FGAbelianGroup::free(1)),
            ],
        );
        assert_eq!(assemble_motive(&h), Err(MotiveError::HypothesisViolated { i: 1 }));
    }

    #[test]
    fn hypothesis_violated_exactly_when_required() {
        // torsion with vanishing odd neighbor is fine
        let h = graded(6, &[(4, FGAbelianGroup::cyclic(2)), (6, FGAbelianGroup::free(1))]);
        assert!(assemble_motive(&h).is_ok());
        // free with nonzero odd neighbor is fine
        let h = graded(6, &[(2, FGAbelianGroup::free(1)), (3, FGAbelianGroup::free(1))]);
        assert!(assemble_motive(&h).is_ok());
        // torsion and nonzero odd neighbor is not
        let h = graded(6, &[(2, FGAbelianGroup::cyclic(3)), (3, FGAbelianGroup::free(1))]);
        assert_eq!(assemble_motive(&h), Err(MotiveError::HypothesisViolated { i: 1 }));
    }

    #[test]
    fn curve_motive_examples() {
        assert_eq!(curve_motive(&[1]).unwrap().to_string(), "Z + Z{1}");
        assert_eq!(curve_motive(&[2]).unwrap().to_string(), "Z + Z[1] + Z{1}");
        assert_eq!(curve_motive(&[2, 2, 2]).unwrap().to_string(), "Z + Z^3[1] + Z{1}");
        assert_eq!(curve_motive(&[]).unwrap().to_string(), "Z + Z{1}");
        assert_eq!(curve_motive(&[1, 0]), Err(MotiveError::BadBranchCount(0)));
    }

    #[test]
    fn curve_motive_pure_tate_iff_unibranch() {
        for n in 0..6 {
            let unibranch = vec![1; n];
            assert!(curve_motive(&unibranch).unwrap().is_pure_tate());
        }
        assert!(!curve_motive(&[2]).unwrap().is_pure_tate());
        assert!(!curve_motive(&[1, 1, 3]).unwrap().is_pure_tate());
    }

    #[test]
    fn cellular_motive_examples() {
        // blowup of C^n at the origin
        for n in 1..=4usize {
            let mut counts = vec![0usize];
            counts.extend(vec![1; n]);
            let m = cellular_motive(&counts);
            let expected = Motive::from_summands(
                (1..=n)
                    .map(|i| MotiveSummand::new(FGAbelianGroup::free(1), i as u32, 0))
                    .collect(),
            );
            assert_eq!(m, expected);
        }
        assert_eq!(cellular_motive(&[1]).to_string(), "Z");
        assert_eq!(cellular_motive(&[1, 1, 1]).to_string(), "Z + Z{1} + Z{2}");
    }

    #[test]
    fn assemble_equals_cellular_on_cell_counts() {
        for counts in [vec![1, 1], vec![0, 1, 1], vec![2, 3, 1], vec![1, 0, 4, 1]] {
            let via_homology = assemble_motive(&cellular_bm_homology(&counts)).unwrap();
            assert_eq!(via_homology, cellular_motive(&counts));
        }
    }

    #[test]
    fn pure_tate_examples() {
        assert!(cellular_motive(&[1, 1, 1]).is_pure_tate());
        let not_pure = Motive::from_summands(vec![
            MotiveSummand::new(FGAbelianGroup::free(1), 0, 0),
            MotiveSummand::new(FGAbelianGroup::cyclic(2), 1, 0),
        ]);
        assert!(!not_pure.is_pure_tate());
        assert!(!curve_motive(&[2]).unwrap().is_pure_tate());
        assert!(Motive::zero().is_pure_tate());
    }

    #[test]
    fn cofiber_diagnostic_examples() {
        // one-point Z, one-line E, Hirzebruch resolution
        let e = graded(2, &[(0, FGAbelianGroup::free(1)), (2, FGAbelianGroup::free(1))]);
        let z = graded(0, &[(0, FGAbelianGroup::free(1))]);
        let xt = cellular_bm_homology(&[1, 2, 1]);
        let diag = cofiber_diagnostic(&e, &z, &xt).unwrap();
        assert_eq!(diag.source.to_string(), "Z + Z{1}");
        assert_eq!(diag.target.to_string(), "Z^2 + Z^2{1} + Z{2}");
        assert!(diag.determined.is_none());
        assert_eq!(diag.per_twist, vec![(0, 1, 2), (1, 1, 2), (2, 0, 1)]);

        // empty exceptional data: motive determined by the resolution
        let zero = GradedGroups::new(0);
        let diag = cofiber_diagnostic(&zero, &zero.clone(), &xt).unwrap();
        assert!(diag.source.is_zero());
        assert_eq!(diag.determined, Some(diag.target.clone()));

        // torsion input is rejected
        let bad = graded(2, &[(0, FGAbelianGroup::cyclic(2))]);
        assert_eq!(cofiber_diagnostic(&bad, &z, &xt), Err(MotiveError::NonCellularInput));
        // odd-degree input is rejected
        let odd = graded(2, &[(1, FGAbelianGroup::free(1))]);
        assert_eq!(cofiber_diagnostic(&odd, &z, &xt), Err(MotiveError::NonCellularInput));
    }

    #[test]
    fn cofiber_diagnostic_index_two_example() {
        use crate::homology::tree_exceptional_homology;
        use crate::resolve::ExceptionalModel;
        let e = tree_exceptional_homology(&ExceptionalModel {
            num_components: 3,
            total_lines: 5,
            chain_lengths: vec![1, 1, 3],
        });
        let z = graded(0, &[(0, FGAbelianGroup::free(3))]);
        // 8-ray smooth complete surface: cell counts (1, 6, 1)
        let xt = cellular_bm_homology(&[1, 6, 1]);
        let diag = cofiber_diagnostic(&e, &z, &xt).unwrap();
        assert_eq!(diag.source.to_string(), "Z^3 + Z^5{1}");
        assert_eq!(diag.target.to_string(), "Z^4 + Z^6{1} + Z{2}");
    }
}

//! Command-line front end: validate fans, resolve surface singularities,
//! certify cellularity, and compute motives.
//!
//! Exit codes: 0 success, 2 validation failure, 3 undetermined motive
//! (hypothesis violated or obstructed singular locus), 4 cellularity not
//! certified.

use std::fmt::Write as _;
use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use toric_motives::cellular::{
    certify_cellular, orbit_graph_of_faces, singular_locus_graph, CellularityCertificate,
    OrbitGraph, QuasiprojectivityHint, DEFAULT_SEARCH_BOUND,
};
use toric_motives::fan::{Cone, Fan, FanProfile};
use toric_motives::homology::GradedGroups;
use toric_motives::io::{FanFile, HomologyFile, MotiveJson};
use toric_motives::motive::{
    assemble_motive, curve_motive, toric_surface_motive, MotiveError, PipelineError,
};
use toric_motives::resolve::{exceptional_motive, resolve_fan_2d, ExceptionalModel};

const EXIT_VALIDATION: u8 = 2;
const EXIT_UNDETERMINED: u8 = 3;
const EXIT_NOT_CERTIFIED: u8 = 4;

const SEARCH_BOUND_ENV: &str = "TORIC_MOTIVES_SEARCH_BOUND";

#[derive(Parser)]
#[command(name = "toric-motives", version, about = "Motives of toric surfaces and threefolds from fan combinatorics")]
struct Cli {
    /// Emit a machine-readable JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Sup-norm bound for the regular one-parameter subgroup search
    /// (defaults to the TORIC_MOTIVES_SEARCH_BOUND env var, then 16).
    #[arg(long, global = true)]
    search_bound: Option<i64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate fan files and report their combinatorial profiles.
    FanCheck(FanCheckArgs),
    /// Resolve the singularities of a rank-2 fan by Hirzebruch-Jung subdivision.
    Resolve(PathArg),
    /// Compute the motive (or compact-support motive) of a toric variety.
    Motive(MotiveArgs),
    /// Motive of a rational projective curve from its branch counts.
    Curve(CurveArgs),
    /// Certify cellularity of a smooth fan, or of a supplied refinement.
    Cellularity(CellularityArgs),
}

#[derive(Args)]
struct FanCheckArgs {
    /// Fan files to check, processed in order.
    #[arg(required = true)]
    paths: Vec<String>,
}

#[derive(Args)]
struct PathArg {
    path: String,
}

#[derive(Args)]
struct MotiveArgs {
    path: String,
    /// Externally computed Borel-Moore homology (required for rank 3).
    #[arg(long)]
    homology: Option<String>,
    /// Smooth refinement of the fan, for cellularity certification in rank 3.
    #[arg(long)]
    refinement: Option<String>,
    /// Report the motive with compact support even for complete varieties.
    #[arg(long)]
    compact_support: bool,
    /// Assert that the toric variety is quasiprojective.
    #[arg(long)]
    quasiprojective: bool,
}

#[derive(Args)]
struct CurveArgs {
    /// Comma-separated branch counts of the singular points, e.g. "2,2,2";
    /// an empty string means a smooth rational curve.
    #[arg(long, allow_hyphen_values = true)]
    branches: String,
}

#[derive(Args)]
struct CellularityArgs {
    path: String,
    /// Certify this smooth refinement of the fan instead of the fan itself.
    #[arg(long)]
    refinement: Option<String>,
    /// Assert that the toric variety is quasiprojective.
    #[arg(long)]
    quasiprojective: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let bound = cli.search_bound.unwrap_or_else(|| {
        std::env::var(SEARCH_BOUND_ENV)
            .ok()
            .and_then(|v| v.parse().ok())
            .unwrap_or(DEFAULT_SEARCH_BOUND)
    });
    let json = cli.json;
    let code = match cli.command {
        Command::FanCheck(args) => args
            .paths
            .iter()
            .map(|p| cmd_fan_check(p, json))
            .fold(0, u8::max),
        Command::Resolve(args) => cmd_resolve(&args.path, json),
        Command::Motive(args) => cmd_motive(&args, bound, json),
        Command::Curve(args) => cmd_curve(&args.branches, json),
        Command::Cellularity(args) => cmd_cellularity(&args, bound, json),
    };
    ExitCode::from(code)
}

fn fail(json: bool, code: u8, context: &str, message: &str) -> u8 {
    if json {
        let report = serde_json::json!({ "status": "error", "context": context, "error": message });
        println!("{}", serde_json::to_string_pretty(&report).unwrap());
    } else {
        eprintln!("error ({context}): {message}");
    }
    code
}

fn load_fan(path: &str) -> Result<(FanFile, Fan, FanProfile), String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
    let file = FanFile::parse(&text).map_err(|e| format!("{path}: {e}"))?;
    let fan = file.to_fan().map_err(|e| format!("{path}: {e}"))?;
    let profile = fan.validate().map_err(|e| format!("{path}: {e}"))?;
    file.check_complete_hint(profile.is_complete).map_err(|e| format!("{path}: {e}"))?;
    Ok((file, fan, profile))
}

#[derive(Serialize)]
struct ProfileReport {
    d: Vec<usize>,
    span_dim: usize,
    complete: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    index: Option<i64>,
}

impl ProfileReport {
    fn new(profile: &FanProfile) -> Self {
        ProfileReport {
            d: profile.d.clone(),
            span_dim: profile.span_dim,
            complete: profile.is_complete,
            index: profile.index_m,
        }
    }
}

fn cone_rays(fan: &Fan, cone: &Cone) -> Vec<Vec<i64>> {
    cone.ray_indices().iter().map(|&i| fan.rays()[i].coords().to_vec()).collect()
}

fn cmd_fan_check(path: &str, json: bool) -> u8 {
    let (_, fan, profile) = match load_fan(path) {
        Ok(parts) => parts,
        Err(e) => return fail(json, EXIT_VALIDATION, "fan-check", &e),
    };
    let minimal = fan.minimal_singular_cones();
    let report = serde_json::json!({
        "status": "ok",
        "path": path,
        "rank": fan.rank(),
        "profile": ProfileReport::new(&profile),
        "minimal_singular_cones": minimal.iter().map(|c| c.ray_indices().to_vec()).collect::<Vec<_>>(),
        "minimal_singular_cone_rays": minimal.iter().map(|c| cone_rays(&fan, c)).collect::<Vec<_>>(),
    });
    if json {
        println!("{}", serde_json::to_string_pretty(&report).unwrap());
    } else {
        println!("{path}: valid rank-{} fan", fan.rank());
        println!("  cones by dimension: {:?}", profile.d);
        println!("  span dimension: {}", profile.span_dim);
        println!("  complete: {}", profile.is_complete);
        match profile.index_m {
            Some(m) => println!("  index: {m}"),
            None if fan.rank() == 2 => println!("  index: undefined (degenerate fan)"),
            None => {}
        }
        if minimal.is_empty() {
            println!("  smooth: no singular cones");
        } else {
            for cone in &minimal {
                let rays: Vec<String> =
                    cone.ray_indices().iter().map(|&i| fan.rays()[i].to_string()).collect();
                println!("  minimal singular cone {cone}: Cone({})", rays.join(", "));
            }
        }
    }
    0
}

fn cmd_resolve(path: &str, json: bool) -> u8 {
    let (_, fan, _) = match load_fan(path) {
        Ok(parts) => parts,
        Err(e) => return fail(json, EXIT_VALIDATION, "resolve", &e),
    };
    if fan.rank() != 2 {
        return fail(json, EXIT_VALIDATION, "resolve", "resolution is implemented for rank-2 fans");
    }
    let res = match resolve_fan_2d(&fan) {
        Ok(res) => res,
        Err(e) => return fail(json, EXIT_VALIDATION, "resolve", &e.to_string()),
    };
    let model = ExceptionalModel::from_resolution(&res);
    let e_motive = exceptional_motive(&model);
    let report = serde_json::json!({
        "status": "ok",
        "path": path,
        "added_rays": res.added_rays.iter().map(|r| r.coords().to_vec()).collect::<Vec<_>>(),
        "chains": res.per_cone_chains.iter().map(|(cone, len)| serde_json::json!({
            "cone": cone.ray_indices().to_vec(),
            "rays_inserted": len,
        })).collect::<Vec<_>>(),
        "exceptional": {
            "components": model.num_components,
            "lines": model.total_lines,
            "chain_lengths": model.chain_lengths,
        },
        "exceptional_motive": MotiveJson::from_motive(&e_motive),
        "refined_fan": FanFile::from_fan(&res.refined_fan),
    });
    if json {
        println!("{}", serde_json::to_string_pretty(&report).unwrap());
    } else {
        println!("{path}: resolution adds {} ray(s)", res.added_rays.len());
        for r in &res.added_rays {
            println!("  + ray {r}");
        }
        for (cone, len) in &res.per_cone_chains {
            println!("  cone {cone}: chain of {len} projective line(s)");
        }
        println!("exceptional locus: {} component(s), {} line(s)", model.num_components, model.total_lines);
        println!("M(E) = {e_motive}");
        println!(
            "refined fan: {} rays, {} maximal cones, smooth",
            res.refined_fan.rays().len(),
            res.refined_fan.max_cones().len()
        );
        println!("structured: {}", serde_json::to_string(&report).unwrap());
    }
    0
}

fn cmd_curve(branches: &str, json: bool) -> u8 {
    let parsed: Result<Vec<i64>, _> = branches
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::parse)
        .collect();
    let counts = match parsed {
        Ok(counts) => counts,
        Err(e) => return fail(json, EXIT_VALIDATION, "curve", &format!("bad branch list: {e}")),
    };
    let motive = match curve_motive(&counts) {
        Ok(m) => m,
        Err(e) => return fail(json, EXIT_VALIDATION, "curve", &e.to_string()),
    };
    let report = serde_json::json!({
        "status": "ok",
        "branches": counts,
        "motive": MotiveJson::from_motive(&motive),
        "pure_tate": motive.is_pure_tate(),
    });
    if json {
        println!("{}", serde_json::to_string_pretty(&report).unwrap());
    } else {
        println!("M(C) = {motive}");
        println!("pure Tate: {}", motive.is_pure_tate());
        println!("structured: {}", serde_json::to_string(&report).unwrap());
    }
    0
}

/// Certification target for rank-3 motives: the fan itself when smooth, or a
/// user-supplied smooth refinement with the same support.
fn certify_with_refinement(
    fan: &Fan,
    refinement: Option<&str>,
    quasiprojective: bool,
    bound: i64,
) -> Result<(CellularityCertificate, Option<String>), (u8, String)> {
    let hint = if quasiprojective {
        QuasiprojectivityHint::UserFlag
    } else {
        QuasiprojectivityHint::Auto
    };
    let smooth = fan.max_cones().iter().all(|c| fan.is_smooth_cone(c));
    match refinement {
        None if smooth => Ok((certify_cellular(fan, hint, bound), None)),
        None => Err((
            EXIT_NOT_CERTIFIED,
            "the fan is singular; supply a smooth refinement with --refinement".into(),
        )),
        Some(path) => {
            let (_, refined, _) = load_fan(path).map_err(|e| (EXIT_VALIDATION, e))?;
            if refined.rank() != fan.rank() {
                return Err((EXIT_VALIDATION, format!("{path}: refinement rank mismatch")));
            }
            if let Some(cone) = refined.max_cones().iter().find(|c| !refined.is_smooth_cone(c)) {
                return Err((EXIT_VALIDATION, format!("{path}: refinement cone {cone} is singular")));
            }
            if !same_support(fan, &refined) {
                return Err((EXIT_VALIDATION, format!("{path}: refinement support differs from the fan's")));
            }
            let refined_hint = if quasiprojective { QuasiprojectivityHint::Inherited } else { hint };
            Ok((certify_cellular(&refined, refined_hint, bound), Some(path.to_string())))
        }
    }
}

fn same_support(a: &Fan, b: &Fan) -> bool {
    toric_motives::fan::support_equals(a, b)
}

/// Orbit-graph analysis of the singular locus of a rank-3 fan, splitting
/// curve strata (graphed) from isolated singular points.
struct SingularLocusReport {
    graph: OrbitGraph,
    isolated_points: usize,
    /// Set when completeness makes the Betti obstruction conclusive.
    obstructed: bool,
}

fn analyze_singular_locus(fan: &Fan, complete: bool) -> SingularLocusReport {
    match singular_locus_graph(fan) {
        Ok(graph) => {
            let obstructed = complete && graph.first_betti > 0;
            SingularLocusReport { graph, isolated_points: 0, obstructed }
        }
        Err(_) => {
            let minimal = fan.minimal_singular_cones();
            let (points, curves): (Vec<_>, Vec<_>) =
                minimal.into_iter().partition(|c| fan.cone_dim(c) == 3);
            let graph = orbit_graph_of_faces(fan, &curves);
            let obstructed = complete && graph.first_betti > 0;
            SingularLocusReport { graph, isolated_points: points.len(), obstructed }
        }
    }
}

fn cmd_motive(args: &MotiveArgs, bound: i64, json: bool) -> u8 {
    let (file, fan, profile) = match load_fan(&args.path) {
        Ok(parts) => parts,
        Err(e) => return fail(json, EXIT_VALIDATION, "motive", &e),
    };
    let quasiprojective = args.quasiprojective || file.flags.quasiprojective == Some(true);
    match fan.rank() {
        2 => cmd_motive_rank2(args, &fan, json, quasiprojective, bound),
        _ => cmd_motive_rank3(args, &fan, &profile, json, quasiprojective, bound),
    }
}

fn cmd_motive_rank2(args: &MotiveArgs, fan: &Fan, json: bool, quasiprojective: bool, bound: i64) -> u8 {
    let hint = if quasiprojective {
        QuasiprojectivityHint::UserFlag
    } else {
        QuasiprojectivityHint::Auto
    };
    let pipeline = match toric_surface_motive(fan, hint, bound) {
        Ok(p) => p,
        Err(PipelineError::CellularityNotCertified(reason)) => {
            return fail(json, EXIT_NOT_CERTIFIED, "motive", &reason)
        }
        Err(e) => return fail(json, EXIT_VALIDATION, "motive", &e.to_string()),
    };
    let compact = !pipeline.complete || args.compact_support;
    let label = if compact { "M^c(X)" } else { "M(X)" };
    let report = serde_json::json!({
        "status": "ok",
        "path": args.path,
        "kind": if compact { "compact_support" } else { "motive" },
        "complete": pipeline.complete,
        "pure_tate": pipeline.motive.is_pure_tate(),
        "degenerate_torsion": pipeline.degenerate_torsion,
        "homology": HomologyFile::from_graded_groups(&pipeline.homology),
        "motive": MotiveJson::from_motive(&pipeline.motive),
        "certificate": pipeline.certificate.to_string(),
        "resolution_added_rays": pipeline.resolution.added_rays.iter()
            .map(|r| r.coords().to_vec()).collect::<Vec<_>>(),
    });
    if json {
        println!("{}", serde_json::to_string_pretty(&report).unwrap());
    } else {
        println!("{label} = {}", pipeline.motive);
        println!("pure Tate: {}", pipeline.motive.is_pure_tate());
        println!("complete: {}", pipeline.complete);
        if pipeline.degenerate_torsion {
            println!("note: degenerate fan (rays span a proper subspace); torsion set trivial");
        }
        println!("H^BM: {}", pipeline.homology);
        println!("cellular resolution: {}", pipeline.certificate);
        println!("structured: {}", serde_json::to_string(&report).unwrap());
    }
    0
}

fn cmd_motive_rank3(
    args: &MotiveArgs,
    fan: &Fan,
    profile: &FanProfile,
    json: bool,
    quasiprojective: bool,
    bound: i64,
) -> u8 {
    let Some(hpath) = args.homology.as_deref() else {
        return fail(
            json,
            EXIT_VALIDATION,
            "motive",
            "rank-3 motives need externally computed homology: pass --homology <file>",
        );
    };
    let homology: GradedGroups = match fs::read_to_string(hpath)
        .map_err(|e| format!("{hpath}: {e}"))
        .and_then(|t| HomologyFile::parse(&t).map_err(|e| format!("{hpath}: {e}")))
        .and_then(|f| f.to_graded_groups().map_err(|e| format!("{hpath}: {e}")))
    {
        Ok(h) => h,
        Err(e) => return fail(json, EXIT_VALIDATION, "motive", &e),
    };
    let locus = analyze_singular_locus(fan, profile.is_complete);
    let mut notes = Vec::new();
    if locus.isolated_points > 0 {
        notes.push(format!(
            "singular locus has {} isolated point(s), which are cellular",
            locus.isolated_points
        ));
    }
    if !locus.graph.edges.is_empty() {
        notes.push(format!(
            "singular curve strata: {} line(s), {} meeting point(s), first Betti number {}",
            locus.graph.edges.len(),
            locus.graph.meeting_point_count(),
            locus.graph.first_betti,
        ));
    }
    if locus.obstructed {
        let message = format!(
            "the singular locus is a cycle of strata (first Betti number {}), hence not cellular: \
             no cellular resolution of singularities exists",
            locus.graph.first_betti
        );
        let report = serde_json::json!({
            "status": "obstructed",
            "path": args.path,
            "reason": message,
            "singular_locus": {
                "edges": locus.graph.edges.len(),
                "meeting_points": locus.graph.meeting_point_count(),
                "first_betti": locus.graph.first_betti,
            },
            "notes": notes,
        });
        if json {
            println!("{}", serde_json::to_string_pretty(&report).unwrap());
        } else {
            println!("undetermined: {message}");
            for n in &notes {
                println!("note: {n}");
            }
        }
        return EXIT_UNDETERMINED;
    }
    let certificate = match certify_with_refinement(fan, args.refinement.as_deref(), quasiprojective, bound) {
        Ok((cert, refinement)) => {
            if !cert.is_cellular() {
                return fail(json, EXIT_NOT_CERTIFIED, "motive", &cert.to_string());
            }
            if let Some(path) = refinement {
                notes.push(format!("cellularity certified for the refinement {path}"));
            }
            cert
        }
        Err((code, message)) => return fail(json, code, "motive", &message),
    };
    let motive = match assemble_motive(&homology) {
        Ok(m) => m,
        Err(MotiveError::HypothesisViolated { i }) => {
            let message = format!(
                "H_{} is not free while H_{} is nonzero: the motive is presented as an \
                 undetermined cofiber, not a direct sum",
                2 * i,
                2 * i + 1
            );
            let report = serde_json::json!({
                "status": "undetermined",
                "path": args.path,
                "reason": message,
                "violated_at_twist": i,
                "notes": notes,
            });
            if json {
                println!("{}", serde_json::to_string_pretty(&report).unwrap());
            } else {
                println!("undetermined: {message}");
            }
            return EXIT_UNDETERMINED;
        }
        Err(e) => return fail(json, EXIT_VALIDATION, "motive", &e.to_string()),
    };
    let compact = !profile.is_complete || args.compact_support;
    let label = if compact { "M^c(X)" } else { "M(X)" };
    let report = serde_json::json!({
        "status": "ok",
        "path": args.path,
        "kind": if compact { "compact_support" } else { "motive" },
        "complete": profile.is_complete,
        "pure_tate": motive.is_pure_tate(),
        "motive": MotiveJson::from_motive(&motive),
        "certificate": certificate.to_string(),
        "notes": notes,
    });
    if json {
        println!("{}", serde_json::to_string_pretty(&report).unwrap());
    } else {
        println!("{label} = {motive}");
        println!("pure Tate: {}", motive.is_pure_tate());
        println!("complete: {}", profile.is_complete);
        println!("cellularity: {certificate}");
        for n in &notes {
            println!("note: {n}");
        }
        println!("structured: {}", serde_json::to_string(&report).unwrap());
    }
    0
}

fn cmd_cellularity(args: &CellularityArgs, bound: i64, json: bool) -> u8 {
    let (file, fan, _) = match load_fan(&args.path) {
        Ok(parts) => parts,
        Err(e) => return fail(json, EXIT_VALIDATION, "cellularity", &e),
    };
    let quasiprojective = args.quasiprojective || file.flags.quasiprojective == Some(true);
    let (certificate, refinement) =
        match certify_with_refinement(&fan, args.refinement.as_deref(), quasiprojective, bound) {
            Ok(parts) => parts,
            Err((code, message)) => return fail(json, code, "cellularity", &message),
        };
    let mut text = String::new();
    let _ = write!(text, "{certificate}");
    let report = serde_json::json!({
        "status": if certificate.is_cellular() { "cellular" } else { "not_certified" },
        "path": args.path,
        "refinement": refinement,
        "certificate": text,
    });
    if json {
        println!("{}", serde_json::to_string_pretty(&report).unwrap());
    } else {
        println!("{certificate}");
    }
    if certificate.is_cellular() {
        0
    } else {
        EXIT_NOT_CERTIFIED
    }
}

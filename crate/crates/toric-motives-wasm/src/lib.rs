//! Browser bindings: three interactive entry points over the core pipeline,
//! each taking and returning JSON strings so the page stays framework-free.

use wasm_bindgen::prelude::*;

use toric_motives::cellular::QuasiprojectivityHint;
use toric_motives::fan::Fan;
use toric_motives::io::{FanFile, HomologyFile, MotiveJson};
use toric_motives::lattice::{gcd, lv};
use toric_motives::motive::{curve_motive, toric_surface_motive, PipelineError};
use toric_motives::resolve::resolve_cone_2d;

fn error_json(message: &str) -> String {
    serde_json::json!({ "status": "error", "error": message }).to_string()
}

/// Validate a rank-2 fan (as FanFile JSON) and run the full surface pipeline:
/// profile, resolution geometry, homology, certificate and motive.
#[wasm_bindgen]
pub fn analyze_fan(fan_json: &str, quasiprojective: bool, search_bound: i64) -> String {
    let file = match FanFile::parse(fan_json) {
        Ok(f) => f,
        Err(e) => return error_json(&e.to_string()),
    };
    let fan = match file.to_fan() {
        Ok(f) => f,
        Err(e) => return error_json(&e.to_string()),
    };
    if let Err(e) = fan.validate() {
        return error_json(&e.to_string());
    }
    if fan.rank() != 2 {
        return error_json("the demo pipeline draws rank-2 fans; use the CLI for rank 3");
    }
    let hint = if quasiprojective || file.flags.quasiprojective == Some(true) {
        QuasiprojectivityHint::UserFlag
    } else {
        QuasiprojectivityHint::Auto
    };
    let bound = search_bound.clamp(1, 64);
    let singular: Vec<Vec<usize>> = fan
        .minimal_singular_cones()
        .iter()
        .map(|c| c.ray_indices().to_vec())
        .collect();
    match toric_surface_motive(&fan, hint, bound) {
        Ok(p) => serde_json::json!({
            "status": "ok",
            "rank": 2,
            "rays": rays_of(&fan),
            "cones": cones_of(&fan),
            "profile": {
                "d": p.profile.d,
                "span_dim": p.profile.span_dim,
                "complete": p.profile.is_complete,
                "index": p.profile.index_m,
            },
            "singular_cones": singular,
            "added_rays": p.resolution.added_rays.iter().map(|r| r.coords().to_vec()).collect::<Vec<_>>(),
            "refined_cones": cones_of(&p.resolution.refined_fan),
            "refined_rays": rays_of(&p.resolution.refined_fan),
            "chains": p.exceptional.chain_lengths,
            "homology": HomologyFile::from_graded_groups(&p.homology),
            "homology_text": p.homology.to_string(),
            "certificate": p.certificate.to_string(),
            "motive": MotiveJson::from_motive(&p.motive),
            "kind": if p.complete { "M" } else { "Mc" },
            "pure_tate": p.motive.is_pure_tate(),
        })
        .to_string(),
        Err(PipelineError::CellularityNotCertified(reason)) => serde_json::json!({
            "status": "not_certified",
            "rays": rays_of(&fan),
            "cones": cones_of(&fan),
            "singular_cones": singular,
            "reason": reason,
        })
        .to_string(),
        Err(e) => error_json(&e.to_string()),
    }
}

fn rays_of(fan: &Fan) -> Vec<Vec<i64>> {
    fan.rays().iter().map(|r| r.coords().to_vec()).collect()
}

fn cones_of(fan: &Fan) -> Vec<Vec<usize>> {
    fan.max_cones().iter().map(|c| c.ray_indices().to_vec()).collect()
}

/// Hirzebruch–Jung explorer: subdivide the normalized cone
/// `Cone((0,1), (d,-k))` and report the inserted rays and continued fraction.
#[wasm_bindgen]
pub fn hj_cone(d: i64, k: i64) -> String {
    if d < 1 || k < 0 || (d > 1 && (k < 1 || k >= d || gcd(d, k) != 1)) {
        return error_json("need d >= 1 and, for d > 1, 0 < k < d with gcd(d, k) = 1");
    }
    let u1 = lv(&[0, 1]);
    let u2 = lv(&[d, -k.max(0)]);
    let added = match resolve_cone_2d(&u1, &u2) {
        Ok(a) => a,
        Err(e) => return error_json(&e.to_string()),
    };
    let terms = if d > 1 { toric_motives::lattice::hj_expand(d, k).unwrap_or_default() } else { Vec::new() };
    let mut boundary: Vec<Vec<i64>> = vec![u1.coords().to_vec()];
    boundary.extend(added.iter().map(|r| r.coords().to_vec()));
    boundary.push(u2.coords().to_vec());
    let model = toric_motives::resolve::ExceptionalModel {
        num_components: usize::from(!added.is_empty()),
        total_lines: added.len(),
        chain_lengths: if added.is_empty() { vec![] } else { vec![added.len()] },
    };
    serde_json::json!({
        "status": "ok",
        "d": d,
        "k": k,
        "generators": [u1.coords().to_vec(), u2.coords().to_vec()],
        "added_rays": added.iter().map(|r| r.coords().to_vec()).collect::<Vec<_>>(),
        "boundary_path": boundary,
        "continued_fraction": terms,
        "chain_length": added.len(),
        "exceptional_motive": toric_motives::resolve::exceptional_motive(&model).to_string(),
    })
    .to_string()
}

/// Motive of a rational projective curve from comma-separated branch counts.
#[wasm_bindgen]
pub fn curve(branches: &str) -> String {
    let parsed: Result<Vec<i64>, _> = branches
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::parse)
        .collect();
    let counts = match parsed {
        Ok(c) => c,
        Err(e) => return error_json(&format!("bad branch list: {e}")),
    };
    match curve_motive(&counts) {
        Ok(m) => serde_json::json!({
            "status": "ok",
            "branches": counts,
            "motive": MotiveJson::from_motive(&m),
            "pure_tate": m.is_pure_tate(),
        })
        .to_string(),
        Err(e) => error_json(&e.to_string()),
    }
}

//! Browser bindings: the interactive operations behind the demo page.
//!
//! Each entry point returns a JSON string so the page needs no generated
//! type glue beyond `wasm-bindgen`.

use serde_json::json;
use sturm::enumerate::{census, CensusFilter};
use sturm::generators;
use sturm::meander;
use sturm::perm::Permutation;
use sturm::render::{render_meander_svg, LabelMode, RenderOptions};
use sturm::szs::{zs_pair, Flavor};
use wasm_bindgen::prelude::*;

fn svg_of(p: &Permutation, width: u32) -> String {
    let opts = RenderOptions {
        width,
        height: width / 2,
        labels: LabelMode::Both,
    };
    render_meander_svg(p, &opts).unwrap_or_default()
}

fn describe(p: &Permutation, width: u32) -> serde_json::Value {
    let diag = meander::is_sturm(p);
    let template = meander::is_three_meander_template(p);
    let counts = if diag.sturm {
        meander::morse_numbers(p).ok().map(|m| m.counts)
    } else {
        None
    };
    let orbit = if diag.sturm {
        let r = p.orbit_report();
        Some(json!({
            "canonical": r.canonical.to_string(),
            "isotropy": r.isotropy_labels(),
        }))
    } else {
        None
    };
    json!({
        "sigma": p.to_string(),
        "n": p.size(),
        "meander": diag.meander,
        "dissipative": diag.dissipative,
        "morse": diag.morse,
        "sturm": diag.sturm,
        "ball3": template.is_template,
        "violations": template.violations,
        "center": template.center,
        "counts": counts,
        "orbit": orbit,
        "svg": svg_of(p, width),
    })
}

/// Parses one-line notation and reports the full diagnosis plus a rendered
/// meander.
#[wasm_bindgen]
pub fn check_permutation(text: &str, width: u32) -> String {
    match text.parse::<Permutation>() {
        Ok(p) => describe(&p, width.max(200)).to_string(),
        Err(e) => json!({ "error": e.to_string() }).to_string(),
    }
}

/// Builds one of the closed-form families and reports it like
/// [`check_permutation`].
#[wasm_bindgen]
pub fn generate_family(family: &str, m: usize, n: usize, width: u32) -> String {
    if m < 1 || n < 1 || m > 8 || n > 8 {
        return json!({ "error": "parameters must lie in 1..=8" }).to_string();
    }
    let p = match family {
        "ci" => Some(generators::ci_meander(m)),
        "simplex" if m <= 5 => Some(generators::simplex_meander(m)),
        "hypercube" if m <= 4 => Some(generators::hypercube_meander(m)),
        "gon" => generators::gon_disk(m, n)
            .ok()
            .and_then(|d| zs_pair(&d, Flavor::Zs).ok())
            .map(|pair| pair.sigma()),
        "pitchfork" => generators::gon_disk(n, m)
            .ok()
            .zip(generators::gon_disk(m, n).ok())
            .and_then(|(w, e)| generators::lift(&w, &e).ok())
            .and_then(|t| sturm::szs::sigma_of(&t).ok()),
        "suspension" => generators::striped_disk(n)
            .ok()
            .zip(generators::striped_disk(m).ok())
            .and_then(|(w, e)| generators::lift(&w, &e).ok())
            .and_then(|t| sturm::szs::sigma_of(&t).ok()),
        _ => None,
    };
    match p {
        Some(p) => describe(&p, width.max(200)).to_string(),
        None => json!({ "error": "family out of range" }).to_string(),
    }
}

/// Census of all Sturm classes of size `n`, optionally restricted to
/// three-ball templates; sizes beyond 13 are rejected to keep the page
/// responsive.
#[wasm_bindgen]
pub fn census_classes(n: usize, ball3_only: bool) -> String {
    if n > 13 || n % 2 == 0 || n == 0 {
        return json!({ "error": "n must be odd and at most 13" }).to_string();
    }
    let filter = if ball3_only {
        CensusFilter::Ball3
    } else {
        CensusFilter::All
    };
    match census(n, filter) {
        Ok(c) => json!({
            "n": c.n,
            "sturm_classes": c.total_sturm_classes,
            "ball3_classes": c.ball3_classes,
            "representatives": c
                .representatives
                .iter()
                .map(|r| json!({
                    "sigma": r.canonical.to_string(),
                    "counts": r.cell_counts,
                    "isotropy": r.isotropy,
                    "pitchforkable": r.pitchforkable,
                }))
                .collect::<Vec<_>>(),
        })
        .to_string(),
        Err(e) => json!({ "error": e.to_string() }).to_string(),
    }
}

//! The embedded census fixtures: the 31 three-ball cases with at most 13
//! equilibria, the Platonic template classes, two sample templates on the
//! icosahedron and dodecahedron, and the two 81-equilibrium validation
//! permutations.
//!
//! Every fixture permutation is entered once, in one-line notation, and
//! cross-validated by full recomputation from its construction, so a typo
//! fails loudly. Case names follow the `W|E` hemisphere scheme with `^`
//! marking repeated gon sizes.

use crate::complex::ThreeCellTemplate;
use crate::enumerate::{self, pitchfork_insert};
use crate::generators::{
    eye_disk, gon_disk, lift, parallel_sphere, EyeVariant, GeneratorError, PathSpec,
};
use crate::meander::{self, is_three_meander_template};
use crate::perm::Permutation;
use crate::platonic;
use std::collections::BTreeSet;

/// One row of the three-ball census.
#[derive(Clone, Debug)]
pub struct CatalogCase {
    /// Table/row label, e.g. `"6.5/2"`.
    pub case_id: &'static str,
    /// Hemisphere notation, e.g. `"5.2|7.2^2"`.
    pub name: &'static str,
    pub n: usize,
    /// Frozen one-line permutation.
    pub sigma: &'static str,
    /// Non-identity trivial actions fixing sigma.
    pub isotropy: &'static [&'static str],
    /// Reducible to the point attractor by pitchfork collapses.
    pub pitch: bool,
}

/// How a catalog complex is assembled.
enum Construction {
    /// Cyclic parallel paths, `EW` meridian position second.
    Paths(Vec<PathSpec>, usize),
    /// Face lift of an eye disk over the minimal gon.
    EyeLift(EyeVariant),
}

fn construction(case_id: &str) -> Construction {
    use Construction::*;
    use PathStartShorthand::*;
    fn paths(spec: &[PathStartShorthand], ew: usize) -> Construction {
        Paths(
            spec.iter()
                .map(|s| match *s {
                    P(k) => PathSpec::plain(k),
                    Nudge(k, sink) => PathSpec::nudged(k, 0, sink),
                })
                .collect(),
            ew,
        )
    }
    match case_id {
        "6.5/1" => paths(&[P(1), P(1)], 1),
        "6.5/2" => paths(&[P(1), P(1), P(1)], 1),
        "6.5/3" => paths(&[P(1), P(2)], 1),
        "6.5/4" => paths(&[P(1), P(1), P(1), P(1)], 1),
        "6.5/5" => paths(&[P(1), P(1), P(2)], 1),
        "6.5/6" => paths(&[P(1), P(1), P(1), P(1)], 2),
        "6.5/7" => paths(&[P(2), P(1), P(1)], 1),
        "6.5/8" => paths(&[P(2), P(1), Nudge(1, 1)], 1),
        "6.5/9" => paths(&[P(1), P(3)], 1),
        "6.5/10" => paths(&[P(2), P(2)], 1),
        "6.6/11" => paths(&[P(1), P(1), P(1), P(1), P(1)], 1),
        "6.6/12" => paths(&[P(1), P(1), P(2), P(1)], 1),
        "6.6/13" => EyeLift(EyeVariant::AtSouth),
        "6.6/14" => EyeLift(EyeVariant::AtNorth),
        "6.6/15" => paths(&[P(1), P(1), P(3)], 1),
        "6.6/16" => paths(&[P(1), P(1), P(1), P(1), P(1)], 2),
        "6.6/17" => paths(&[P(1), P(1), P(1), P(2)], 2),
        "6.6/18" => paths(&[P(2), P(1), P(1), P(1)], 1),
        "6.6/19" => paths(&[P(2), P(1), P(1), Nudge(1, 1)], 1),
        "6.6/20" => paths(&[P(2), P(1), Nudge(1, 1), Nudge(1, 1)], 1),
        "6.6/21" => paths(&[P(2), P(1), P(2)], 1),
        "6.6/22" => paths(&[P(2), P(1), Nudge(2, 1)], 1),
        "6.6/23" => paths(&[P(2), P(1), P(1), P(1)], 2),
        "6.6/24" => paths(&[P(2), P(1), P(1), Nudge(1, 1)], 2),
        "6.6/25" => paths(&[P(2), P(2), P(1)], 1),
        "6.6/26" => paths(&[P(3), P(1), Nudge(1, 1)], 1),
        "6.6/27" => paths(&[P(3), P(1), P(1)], 1),
        "6.6/28" => paths(&[P(2), P(2), Nudge(1, 1)], 1),
        "6.6/29" => paths(&[P(3), P(1), Nudge(1, 2)], 1),
        "6.6/30" => paths(&[P(1), P(4)], 1),
        "6.6/31" => paths(&[P(2), P(3)], 1),
        other => panic!("unknown catalog case {:?}", other),
    }
}

enum PathStartShorthand {
    P(usize),
    Nudge(usize, usize),
}

/// Builds the decorated sphere complex of a census case.
pub fn build_case(case_id: &str) -> Result<ThreeCellTemplate, GeneratorError> {
    match construction(case_id) {
        Construction::Paths(spec, ew) => parallel_sphere(&spec, ew),
        Construction::EyeLift(variant) => lift(&gon_disk(1, 1)?, &eye_disk(variant)?),
    }
}

/// The 31 rows of the census, in table order.
pub fn cases() -> Vec<CatalogCase> {
    CATALOG
        .iter()
        .map(|&(case_id, name, n, sigma, isotropy, pitch)| CatalogCase {
            case_id,
            name,
            n,
            sigma,
            isotropy,
            pitch,
        })
        .collect()
}

const RHO: &[&str] = &["rho"];
const FULL: &[&str] = &["kappa", "rho", "kappa_rho"];
const KR: &[&str] = &["kappa_rho"];
const NONE: &[&str] = &[];

#[rustfmt::skip]
const CATALOG: &[(&str, &str, usize, &str, &[&str], bool)] = &[
    ("6.5/1", "5.2|5.2", 7, "1 6 3 4 5 2 7", FULL, true),
    ("6.5/2", "5.2|7.2^2", 9, "1 8 3 4 7 6 5 2 9", RHO, true),
    ("6.5/3", "7.3|7.3", 9, "1 8 5 6 7 2 3 4 9", KR, true),
    ("6.5/4", "5.2|9.2^3", 11, "1 10 3 4 9 8 7 6 5 2 11", RHO, true),
    ("6.5/5", "5.2|9.3^2", 11, "1 10 3 4 9 6 7 8 5 2 11", RHO, true),
    ("6.5/6", "7.2^2|7.2^2", 11, "1 10 5 4 3 6 9 8 7 2 11", FULL, true),
    ("6.5/7", "7.3|9.32-1", 11, "1 8 9 10 3 4 7 6 5 2 11", NONE, true),
    ("6.5/8", "7.3|9.32-2", 11, "1 6 7 10 3 4 9 8 5 2 11", NONE, false),
    ("6.5/9", "9.4|9.4-1", 11, "1 10 7 8 9 2 3 4 5 6 11", KR, true),
    ("6.5/10", "9.4|9.4-2", 11, "1 8 9 10 5 6 7 2 3 4 11", FULL, true),
    ("6.6/11", "5.2|11.2^4", 13, "1 12 3 4 11 10 9 8 7 6 5 2 13", RHO, true),
    ("6.6/12", "5.2|11.3^2 2", 13, "1 12 3 4 11 10 9 6 7 8 5 2 13", NONE, true),
    ("6.6/13", "5.2|11.3^2 2+", 13, "1 12 3 4 11 6 7 10 9 8 5 2 13", RHO, true),
    ("6.6/14", "5.2|11.3^2 2-", 13, "1 12 3 4 11 8 7 6 9 10 5 2 13", RHO, true),
    ("6.6/15", "5.2|11.4^2", 13, "1 12 3 4 11 6 7 8 9 10 5 2 13", RHO, true),
    ("6.6/16", "7.2^2|9.2^3", 13, "1 12 5 4 3 6 11 10 9 8 7 2 13", RHO, true),
    ("6.6/17", "7.2^2|9.3^2", 13, "1 12 5 4 3 6 11 8 9 10 7 2 13", RHO, true),
    ("6.6/18", "7.3|11.32^2-1", 13, "1 10 11 12 3 4 9 8 7 6 5 2 13", NONE, true),
    ("6.6/19", "7.3|11.32^2-2", 13, "1 8 9 12 3 4 11 10 7 6 5 2 13", NONE, false),
    ("6.6/20", "7.3|11.32^2-3", 13, "1 6 7 12 3 4 11 10 9 8 5 2 13", NONE, false),
    ("6.6/21", "7.3|11.43-1", 13, "1 10 11 12 3 4 9 6 7 8 5 2 13", NONE, true),
    ("6.6/22", "7.3|11.43-2", 13, "1 6 7 12 3 4 11 8 9 10 5 2 13", NONE, false),
    ("6.6/23", "9.32-1|9.32-1", 13, "1 10 11 12 5 4 3 6 9 8 7 2 13", KR, true),
    ("6.6/24", "9.32-1|9.32-2", 13, "1 8 9 12 5 4 3 6 11 10 7 2 13", NONE, false),
    ("6.6/25", "9.4|11.3^2-1", 13, "1 10 11 12 5 6 9 8 7 2 3 4 13", RHO, true),
    ("6.6/26", "9.4|11.3^2-2", 13, "1 6 7 10 11 12 3 4 9 8 5 2 13", NONE, false),
    ("6.6/27", "9.4|11.42-1", 13, "1 8 9 10 11 12 3 4 7 6 5 2 13", NONE, true),
    ("6.6/28", "9.4|11.42-2", 13, "1 8 9 12 5 6 11 10 7 2 3 4 13", NONE, false),
    ("6.6/29", "9.4|11.42-3", 13, "1 6 7 8 9 12 3 4 11 10 5 2 13", NONE, false),
    ("6.6/30", "11.5|11.5-1", 13, "1 12 9 10 11 2 3 4 5 6 7 8 13", KR, true),
    ("6.6/31", "11.5|11.5-2", 13, "1 10 11 12 7 8 9 2 3 4 5 6 13", KR, true),
];

/// Platonic template classes: `(case id, delta, eta, frozen sigma)`.
#[rustfmt::skip]
pub const PLATONIC: &[(&str, usize, usize, &str)] = &[
    ("T.1", 1, 1, "1 14 5 6 13 10 9 2 3 8 11 12 7 4 15"),
    ("T.2", 1, 2, "1 8 9 12 5 4 13 14 3 6 11 10 7 2 15"),
    ("O.1", 1, 1, "1 26 5 6 25 22 21 18 17 2 3 16 15 8 9 14 19 20 13 12 23 24 11 10 7 4 27"),
    ("O.2", 1, 1, "1 26 5 6 25 22 21 12 11 2 3 10 13 20 19 14 9 8 15 18 23 24 17 16 7 4 27"),
    ("O.3", 1, 1, "1 26 5 6 25 18 17 12 11 2 3 10 13 16 19 24 23 20 15 14 9 8 21 22 7 4 27"),
    ("O.4", 1, 1, "1 26 5 6 25 14 15 24 23 20 19 16 13 12 11 2 3 10 17 18 9 8 21 22 7 4 27"),
    ("O.5", 1, 2, "1 16 17 26 7 6 5 8 25 22 21 18 15 14 13 2 3 12 19 20 11 10 23 24 9 4 27"),
    ("H.1", 1, 1, "1 26 7 8 25 20 19 2 3 16 15 4 5 10 11 14 17 18 21 22 13 12 23 24 9 6 27"),
    ("H.2", 1, 1, "1 26 7 8 25 20 19 2 3 12 13 18 21 22 17 14 11 4 5 10 15 16 23 24 9 6 27"),
    ("H.3", 1, 1, "1 26 7 8 25 14 15 22 21 16 13 2 3 12 17 18 11 4 5 10 19 20 23 24 9 6 27"),
    ("H.4", 2, 1, "1 12 13 26 5 6 25 14 15 22 21 16 11 10 17 18 9 2 3 8 19 20 23 24 7 4 27"),
    ("H.5", 2, 1, "1 18 19 26 5 6 25 20 17 10 11 16 21 22 15 12 9 2 3 8 13 14 23 24 7 4 27"),
    ("H.6", 2, 2, "1 18 19 22 15 4 5 14 23 24 13 6 7 12 25 26 11 8 3 16 21 20 17 2 9 10 27"),
    ("H.7", 3, 3, "1 18 19 24 13 6 7 12 25 26 11 8 5 14 23 20 17 2 3 16 21 22 15 4 9 10 27"),
];

/// Sample icosahedron and dodecahedron permutations, both with two Western
/// faces and maximal pole distance.
#[rustfmt::skip]
pub const SAMPLES: &[(&str, usize, usize, &str)] = &[
    ("I.1", 1, 2, "1 34 35 62 7 6 5 8 61 58 57 38 39 56 55 52 51 44 43 40 37 36 33 32 31 24 23 2 3 22 25 30 41 42 29 28 45 50 49 46 27 26 21 20 19 10 11 18 47 48 17 16 53 54 15 14 59 60 13 12 9 4 63"),
    ("D.1", 2, 2, "1 16 17 26 27 30 31 60 9 8 61 62 7 10 59 32 33 56 55 34 35 42 43 52 51 44 41 36 29 28 37 38 25 18 19 24 39 40 45 46 23 20 15 2 3 14 21 22 47 48 13 4 5 12 49 50 53 54 57 58 11 6 63"),
];

/// The two 81-equilibrium validation permutations with one Morse-4 cell and
/// sixteen Morse-3 cells.
#[rustfmt::skip]
pub const ORTHOPLEX4: &[(&str, &str)] = &[
    ("8.1/1", "1 62 61 60 59 58 57 56 55 54 53 52 51 50 49 48 47 46 45 44 43 42 41 40 39 38 37 36 35 34 33 32 3 4 5 6 7 8 9 10 11 12 13 14 15 16 17 18 19 20 21 22 23 24 25 26 27 28 29 30 31 2 63 64 65 66 67 68 69 70 71 72 73 80 75 78 77 76 79 74 81"),
    ("8.1/2", "1 32 31 30 29 28 27 26 25 24 23 22 21 20 19 18 3 4 5 6 7 8 9 10 11 12 13 14 15 16 17 2 33 34 35 36 37 44 39 42 41 40 43 38 45 46 47 48 49 80 65 66 67 68 69 70 71 72 73 74 75 76 77 78 79 64 63 62 61 60 59 58 57 56 55 54 53 52 51 50 81"),
];

/// Grows a Sturm permutation from the point attractor by pitchfork
/// insertions until the cell counts reach the solid four-orthoplex profile
/// `(8, 24, 32, 16, 1)`.
///
/// The two schedules pitchfork the same index sequence at different sites
/// and land in distinct equivalence classes.
pub fn orthoplex4_meander(low: bool) -> Permutation {
    let mut p = Permutation::identity(1);
    // how many pitchforks to apply at each Morse index, in index order
    let schedule: &[(i64, usize)] = &[(0, 1), (1, 1), (2, 1), (3, 1), (0, 6), (1, 16), (2, 14)];
    for &(index, times) in schedule {
        for step in 0..times {
            let morse = meander::morse_values_axis(&p);
            let labels: Vec<usize> = (1..=p.size())
                .filter(|&k| morse[k - 1] == index)
                .collect();
            // the second schedule alternates between the extreme eligible
            // sites instead of always taking the smallest
            let pick = if low || step % 2 == 0 {
                *labels.first().expect("index present")
            } else {
                *labels.last().expect("index present")
            };
            p = pitchfork_insert(&p, pick);
        }
    }
    p
}

/// Outcome of one fixture check.
#[derive(Clone, Debug)]
pub struct FixtureCheck {
    pub case_id: String,
    pub ok: bool,
    pub details: Vec<String>,
}

/// Recomputes a single census row from its construction and compares.
pub fn verify_case(case: &CatalogCase) -> FixtureCheck {
    let mut details = Vec::new();
    let frozen: Permutation = case
        .sigma
        .parse()
        .unwrap_or_else(|e| panic!("case {} has a malformed fixture: {}", case.case_id, e));
    if frozen.size() != case.n {
        details.push(format!("size {} != {}", frozen.size(), case.n));
    }
    if !meander::is_sturm(&frozen).sturm {
        details.push("fixture is not Sturm".into());
    }
    if !is_three_meander_template(&frozen).is_template {
        details.push("fixture is not a 3-meander template".into());
    }
    match build_case(case.case_id) {
        Ok(template) => match crate::szs::sigma_of(&template) {
            Ok(sigma) => {
                if sigma != frozen {
                    details.push(format!("recomputed {} != fixture {}", sigma, frozen));
                }
            }
            Err(e) => details.push(format!("no permutation: {}", e)),
        },
        Err(e) => details.push(format!("construction failed: {}", e)),
    }
    let report = frozen.orbit_report();
    let mut iso = report.isotropy_labels();
    iso.retain(|&l| l != "id");
    if iso != case.isotropy {
        details.push(format!("isotropy {:?} != {:?}", iso, case.isotropy));
    }
    match enumerate::is_pitchforkable(&frozen) {
        Ok(p) => {
            if p != case.pitch {
                details.push(format!("pitchforkable {} != {}", p, case.pitch));
            }
        }
        Err(e) => details.push(format!("{}", e)),
    }
    FixtureCheck {
        case_id: case.case_id.to_string(),
        ok: details.is_empty(),
        details,
    }
}

/// Recomputes every fixture from its construction and compares.
pub fn verify_catalog() -> Vec<FixtureCheck> {
    let mut out = Vec::new();

    for case in cases() {
        out.push(verify_case(&case));
    }

    // Platonic classes against a fresh census
    for (solid, ids) in [
        ("tetrahedron", "T."),
        ("octahedron", "O."),
        ("cube", "H."),
    ] {
        let complex = platonic::by_name(solid).unwrap();
        let census = platonic::platonic_census(&complex).expect("census runs");
        let computed: BTreeSet<Permutation> =
            census.classes.iter().map(|c| c.canonical.clone()).collect();
        let frozen: BTreeSet<Permutation> = PLATONIC
            .iter()
            .filter(|(id, _, _, _)| id.starts_with(ids))
            .map(|(_, _, _, s)| s.parse::<Permutation>().unwrap().canonical())
            .collect();
        let ok = computed == frozen && !census.capped;
        out.push(FixtureCheck {
            case_id: format!("{} census", solid),
            ok,
            details: if ok {
                Vec::new()
            } else {
                vec![format!(
                    "computed {} classes, fixtures {}",
                    computed.len(),
                    frozen.len()
                )]
            },
        });
    }

    for (id, sigma) in ORTHOPLEX4 {
        let mut details = Vec::new();
        let frozen: Permutation = sigma.parse().expect("orthoplex fixture parses");
        if frozen.size() != 81 {
            details.push(format!("size {} != 81", frozen.size()));
        }
        match meander::morse_numbers(&frozen) {
            Ok(mv) => {
                if mv.counts.len() != 5 || mv.counts[4] != 1 || mv.counts[3] != 16 {
                    details.push(format!("cell counts {:?}", mv.counts));
                }
            }
            Err(e) => details.push(format!("{}", e)),
        }
        let rebuilt = orthoplex4_meander(*id == "8.1/1");
        if rebuilt != frozen {
            details.push("growth schedule does not reproduce the fixture".into());
        }
        out.push(FixtureCheck {
            case_id: id.to_string(),
            ok: details.is_empty(),
            details,
        });
    }

    out
}

/// Scan-based checks of the icosahedron and dodecahedron samples: the
/// deterministic first class at the stated pole distance and face count must
/// reproduce the frozen permutations.
pub fn verify_samples(node_cap: u64) -> Vec<FixtureCheck> {
    let mut out = Vec::new();
    for (id, delta, eta, frozen) in SAMPLES {
        let mut details = Vec::new();
        let complex = match *id {
            "I.1" => platonic::icosahedron(),
            "D.1" => platonic::dodecahedron(),
            other => panic!("unknown sample {}", other),
        };
        let expected: Permutation = frozen.parse().expect("sample fixture parses");
        if !is_three_meander_template(&expected).is_template {
            details.push("fixture is not a 3-meander template".into());
        }
        match platonic::sample_template(&complex, *delta, *eta, node_cap) {
            Ok(Some(t)) => match crate::szs::sigma_of(&t) {
                Ok(sigma) => {
                    if sigma != expected {
                        details.push(format!("recomputed {} != fixture", sigma));
                    }
                }
                Err(e) => details.push(format!("{}", e)),
            },
            Ok(None) => details.push("no template at the stated parameters".into()),
            Err(e) => details.push(format!("{}", e)),
        }
        out.push(FixtureCheck {
            case_id: id.to_string(),
            ok: details.is_empty(),
            details,
        });
    }
    out
}

/// Expected value of [`fixture_digest`]; any fixture edit must update it.
pub const FIXTURE_DIGEST: u64 = 0x658a13f1208b25b6;

/// FNV-1a over all fixture strings; a frozen digest makes silent edits fail.
pub fn fixture_digest() -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    let mut eat = |s: &str| {
        for b in s.bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
        h ^= 0xff;
        h = h.wrapping_mul(0x100000001b3);
    };
    for case in CATALOG {
        eat(case.0);
        eat(case.3);
    }
    for p in PLATONIC {
        eat(p.0);
        eat(p.3);
    }
    for s in SAMPLES {
        eat(s.0);
        eat(s.3);
    }
    for o in ORTHOPLEX4 {
        eat(o.0);
        eat(o.1);
    }
    h
}

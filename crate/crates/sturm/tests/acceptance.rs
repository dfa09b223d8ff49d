//! Acceptance suite: every census, golden value, law, and budget this
//! artifact promises, one test per criterion, each printing a pass line.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use std::collections::{BTreeSet, HashSet};
use std::time::{Duration, Instant};
use sturm::catalog::{self, build_case, cases};
use sturm::complex::{decode_complex, encode_complex, skeleta_isomorphic, ThreeCellTemplate};
use sturm::dual::{check_dual, dualize, sphere_dual};
use sturm::enumerate::{census, enumerate_sturm, pitchfork_collapses, CensusFilter};
use sturm::generators::{ci_meander, hypercube_meander, simplex_meander};
use sturm::meander::{
    flip_symmetry_report, is_three_meander_template, morse_numbers, morse_values_axis,
    morse_values_meander,
};
use sturm::perm::{Permutation, TrivialAction};
use sturm::platonic;
use sturm::szs::sigma_of;

fn p(s: &str) -> Permutation {
    s.parse().unwrap()
}

fn pass(criterion: usize, what: &str) {
    println!("criterion {:2}: PASS - {}", criterion, what);
}

#[test]
fn criterion_01_census_total_383() {
    let t0 = Instant::now();
    let all = enumerate_sturm(13).unwrap();
    let classes: HashSet<Permutation> = all.iter().map(|q| q.canonical()).collect();
    let elapsed = t0.elapsed();
    assert_eq!(classes.len(), 383);
    assert!(
        elapsed < Duration::from_secs(60),
        "single-threaded census took {:?}",
        elapsed
    );
    pass(1, &format!("383 classes at N = 13 in {:?}", elapsed));
}

#[test]
fn criterion_02_ball3_census_counts_and_fixtures() {
    for (n, expect) in [(7usize, 1usize), (9, 2), (11, 7), (13, 21)] {
        let c = census(n, CensusFilter::Ball3).unwrap();
        assert_eq!(c.ball3_classes, expect, "ball3 count at N = {}", n);
        let census_set: BTreeSet<Permutation> = c
            .representatives
            .iter()
            .map(|r| r.canonical.clone())
            .collect();
        let fixture_set: BTreeSet<Permutation> = cases()
            .iter()
            .filter(|case| case.n == n)
            .map(|case| p(case.sigma).canonical())
            .collect();
        assert_eq!(
            census_set, fixture_set,
            "every class orbit holds its table permutation at N = {}",
            n
        );
    }
    assert_eq!(cases().len(), 31);
    pass(2, "ball3 classes 1/2/7/21 and all 31 table rows sit in them");
}

#[test]
fn criterion_03_golden_permutation() {
    let t = build_case("6.5/2").unwrap();
    assert_eq!(sigma_of(&t).unwrap(), p("1 8 3 4 7 6 5 2 9"));
    // the same fixture through the file format
    let text = encode_complex(&t.complex, Some(&t.data));
    let (complex, data) = decode_complex(&text).unwrap();
    let again = ThreeCellTemplate {
        complex,
        data: data.expect("template block survives"),
    };
    assert_eq!(sigma_of(&again).unwrap(), p("1 8 3 4 7 6 5 2 9"));
    pass(3, "fixture yields 1 8 3 4 7 6 5 2 9 exactly (chirality pinned)");
}

#[test]
fn criterion_04_platonic_censuses() {
    let t0 = Instant::now();
    for (name, prefix, expect) in [
        ("tetrahedron", "T.", 2usize),
        ("octahedron", "O.", 5),
        ("cube", "H.", 7),
    ] {
        let complex = platonic::by_name(name).unwrap();
        let search = platonic::platonic_census(&complex).unwrap();
        assert!(!search.capped);
        assert_eq!(search.classes.len(), expect, "{} class count", name);
        let computed: BTreeSet<Permutation> = search
            .classes
            .iter()
            .map(|c| c.canonical.clone())
            .collect();
        let frozen: BTreeSet<Permutation> = catalog::PLATONIC
            .iter()
            .filter(|(id, _, _, _)| id.starts_with(prefix))
            .map(|(_, _, _, s)| p(s).canonical())
            .collect();
        assert_eq!(computed, frozen, "{} classes match the table orbits", name);
        if name == "octahedron" {
            assert!(
                search.classes.iter().all(|c| c.delta == 1),
                "no octahedron template has antipodal poles"
            );
            assert!(search.feasible.iter().all(|&(delta, _)| delta == 1));
        }
    }
    let elapsed = t0.elapsed();
    assert!(elapsed < Duration::from_secs(300), "took {:?}", elapsed);
    pass(4, &format!("2/5/7 Platonic classes, delta = 1 on the octahedron, in {:?}", elapsed));
}

#[test]
fn criterion_05_icosahedron_dodecahedron_constraints() {
    let t0 = Instant::now();
    let cap = 200_000_000;
    let scan_i = platonic::feasibility_scan(&platonic::icosahedron(), cap).unwrap();
    assert!(!scan_i.capped, "icosahedron scan hit the node budget");
    let want_i: BTreeSet<(usize, usize)> = [(1, 1), (1, 2)].into_iter().collect();
    assert_eq!(scan_i.feasible, want_i, "icosahedron: delta = 1 and eta <= 2");

    let scan_d = platonic::feasibility_scan(&platonic::dodecahedron(), cap).unwrap();
    assert!(!scan_d.capped, "dodecahedron scan hit the node budget");
    let want_d: BTreeSet<(usize, usize)> = [(1, 1), (2, 1), (2, 2)].into_iter().collect();
    assert_eq!(scan_d.feasible, want_d, "dodecahedron: 1 <= eta <= delta <= 2");

    for check in catalog::verify_samples(cap) {
        assert!(check.ok, "sample {}: {:?}", check.case_id, check.details);
    }
    let elapsed = t0.elapsed();
    assert!(elapsed < Duration::from_secs(600), "took {:?}", elapsed);
    pass(5, &format!(
        "feasibility {{(1,1),(1,2)}} and {{(1,1),(2,1),(2,2)}}, samples reproduce, in {:?}",
        elapsed
    ));
}

#[test]
fn criterion_06_recursion_equivalence() {
    let mut checked = 0usize;
    for n in [1usize, 3, 5, 7, 9, 11, 13] {
        for q in enumerate_sturm(n).unwrap() {
            let along_meander = morse_values_meander(&q);
            let along_axis = morse_values_axis(&q);
            assert_eq!(along_meander, along_axis, "recursions disagree for {}", q);
            assert_eq!(along_meander[q.size() - 1], 0, "meander anchor of {}", q);
            assert_eq!(
                along_axis[q.apply(q.size()) - 1],
                0,
                "axis anchor of {}",
                q
            );
            checked += 1;
        }
    }
    pass(6, &format!("both Morse recursions agree on {} permutations", checked));
}

#[test]
fn criterion_07_flip_symmetry_laws() {
    let mut flips = 0usize;
    for n in [1usize, 3, 5, 7, 9, 11, 13] {
        for q in enumerate_sturm(n).unwrap() {
            let report = flip_symmetry_report(&q).unwrap();
            if !report.flip_symmetric {
                continue;
            }
            flips += 1;
            let counts = morse_numbers(&q).unwrap().counts;
            let odd: Vec<usize> = counts
                .iter()
                .enumerate()
                .filter(|(_, &c)| c % 2 == 1)
                .map(|(i, _)| i)
                .collect();
            assert_eq!(odd.len(), 1, "one odd cell count for {}", q);
            let i_star = odd[0];
            assert_eq!(
                i_star % 2 == 0,
                n % 4 == 1,
                "parity law fails for {} (i* = {})",
                q,
                i_star
            );
            if is_three_meander_template(&q).is_template {
                assert_eq!(n % 4, 3, "flip-symmetric 3-ball at N = {}", n);
                assert!(counts[0] % 2 == 0 && counts[1] % 2 == 0 && counts[2] % 2 == 0);
            }
        }
    }
    pass(7, &format!("{} flip-symmetric permutations obey the parity laws", flips));
}

#[test]
fn criterion_08_generator_identities() {
    for m in 1..=6 {
        let q = ci_meander(m);
        let counts = morse_numbers(&q).unwrap().counts;
        let mut expect = vec![2; m];
        expect.push(1);
        assert_eq!(counts, expect);
        for g in TrivialAction::ALL {
            assert_eq!(q.act(g), q, "full Klein isotropy of the spiral at m = {}", m);
        }
    }
    // the hypercube family meets the maximally symmetric cube class
    let census_h = platonic::platonic_census(&platonic::cube()).unwrap();
    let h3 = hypercube_meander(3).canonical();
    let delta3 = census_h
        .classes
        .iter()
        .find(|c| c.delta == 3)
        .expect("cube class with space-diagonal poles");
    assert_eq!(delta3.canonical, h3);
    // the simplex family meets a tetrahedron class
    let s3 = simplex_meander(3);
    assert_eq!(s3.size(), 15);
    let counts = morse_numbers(&s3).unwrap().counts;
    assert_eq!(counts[3], 1);
    assert_eq!(counts.len(), 4);
    let census_t = platonic::platonic_census(&platonic::tetrahedron()).unwrap();
    assert!(census_t
        .classes
        .iter()
        .any(|c| c.canonical == s3.canonical()));
    pass(8, "spiral counts and isotropy, hypercube(3) and simplex(3) class identities");
}

#[test]
fn criterion_09_pitchfork_columns() {
    // the fixture column equals recomputation
    for case in cases() {
        let recomputed = sturm::enumerate::is_pitchforkable(&p(case.sigma)).unwrap();
        assert_eq!(recomputed, case.pitch, "pitch column of {}", case.case_id);
    }
    // among N <= 11, case 8 is the single non-pitchforkable row
    let small: Vec<&str> = cases()
        .iter()
        .filter(|c| c.n <= 11 && !c.pitch)
        .map(|c| c.case_id)
        .collect::<Vec<_>>();
    assert_eq!(small, ["6.5/8"]);
    // every non-pitchforkable N = 13 row collapses in one step into the
    // orbit of case 8
    let case8 = p(cases().iter().find(|c| c.case_id == "6.5/8").unwrap().sigma).canonical();
    let nonpitch13: Vec<&'static str> = cases()
        .iter()
        .filter(|c| c.n == 13 && !c.pitch)
        .map(|c| c.case_id)
        .collect();
    for id in &nonpitch13 {
        let sigma = p(cases().iter().find(|c| c.case_id == *id).unwrap().sigma);
        let reaches = pitchfork_collapses(&sigma)
            .unwrap()
            .into_iter()
            .any(|(_, reduced)| reduced.canonical() == case8);
        assert!(reaches, "{} must collapse onto case 8 in one step", id);
    }
    // the narrative names six such cases; the exhaustive census finds these
    // six plus 7.3|11.43-2, whose unique collapse also lands in case 8
    for known in ["6.6/19", "6.6/20", "6.6/24", "6.6/26", "6.6/28", "6.6/29"] {
        assert!(nonpitch13.contains(&known));
    }
    assert_eq!(nonpitch13.len(), 7);
    assert!(nonpitch13.contains(&"6.6/22"));
    println!(
        "criterion  9: note - exhaustive recomputation marks 7 non-pitchforkable rows at N = 13 \
         (the six published ones plus 6.6/22), every one collapsing onto case 8"
    );
    pass(9, "pitch column matches recomputation; all reductions land in case 8");
}

#[test]
fn criterion_10_duality_suite() {
    let mut templates: Vec<(String, ThreeCellTemplate)> = cases()
        .iter()
        .map(|c| (c.case_id.to_string(), build_case(c.case_id).unwrap()))
        .collect();
    for (name, delta, eta) in [
        ("tetrahedron", 1, 2),
        ("octahedron", 1, 2),
        ("cube", 3, 3),
    ] {
        let complex = platonic::by_name(name).unwrap();
        let t = platonic::sample_template(&complex, delta, eta, 200_000_000)
            .unwrap()
            .expect("platonic sample");
        templates.push((name.to_string(), t));
    }
    for (id, t) in &templates {
        let dc = dualize(t).unwrap();
        let report = check_dual(t, &dc);
        assert!(
            report.all_pass(),
            "dual battery fails for {}: {:?}",
            id,
            report.failures()
        );
        assert!(report.delta >= 1);
        let nseg = report.north_segment_len.unwrap();
        let sseg = report.south_segment_len.unwrap();
        assert!(nseg + 2 <= report.n_circle_len && sseg + 2 <= report.s_circle_len);
    }
    // classical dual pairs
    assert!(skeleta_isomorphic(
        &sphere_dual(&platonic::tetrahedron()).unwrap(),
        &platonic::tetrahedron()
    ));
    assert!(skeleta_isomorphic(
        &sphere_dual(&platonic::cube()).unwrap(),
        &platonic::octahedron()
    ));
    pass(10, &format!(
        "polar anatomy and segment bounds hold on {} templates; T* = T, H* = O",
        templates.len()
    ));
}

#[test]
fn criterion_11_small_n_oracle() {
    fn brute_force(n: usize) -> Vec<Permutation> {
        fn permute(rest: &mut Vec<usize>, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if rest.is_empty() {
                out.push(acc.clone());
                return;
            }
            for i in 0..rest.len() {
                let v = rest.remove(i);
                acc.push(v);
                permute(rest, acc, out);
                acc.pop();
                rest.insert(i, v);
            }
        }
        if n == 1 {
            return vec![Permutation::identity(1)];
        }
        let mut middles = Vec::new();
        permute(&mut (2..n).collect(), &mut Vec::new(), &mut middles);
        let mut out = Vec::new();
        for mid in middles {
            let mut image = vec![1];
            image.extend(mid);
            image.push(n);
            let q = Permutation::from_image(image).unwrap();
            if sturm::meander::is_sturm(&q).sturm {
                out.push(q);
            }
        }
        out
    }
    for n in [1usize, 3, 5, 7, 9] {
        let mut fast = enumerate_sturm(n).unwrap();
        let mut slow = brute_force(n);
        fast.sort();
        slow.sort();
        assert_eq!(fast, slow, "oracle disagreement at N = {}", n);
    }
    pass(11, "matching-pair enumeration equals brute force for N in {1,3,5,7,9}");
}

#[test]
fn criterion_12_orthoplex_validation() {
    let t0 = Instant::now();
    for (id, sigma) in catalog::ORTHOPLEX4 {
        let q = p(sigma);
        assert_eq!(q.size(), 81, "{}", id);
        assert!(sturm::meander::is_sturm(&q).sturm, "{}", id);
        let counts = morse_numbers(&q).unwrap().counts;
        assert_eq!(counts[4], 1, "{}: one Morse-4 cell", id);
        assert_eq!(counts[3], 16, "{}: sixteen Morse-3 cells", id);
        assert_eq!(counts, vec![8, 24, 32, 16, 1], "{}: orthoplex profile", id);
    }
    let a = p(catalog::ORTHOPLEX4[0].1).canonical();
    let b = p(catalog::ORTHOPLEX4[1].1).canonical();
    assert_ne!(a, b, "the two validation permutations are inequivalent");
    let elapsed = t0.elapsed();
    assert!(elapsed < Duration::from_secs(1), "took {:?}", elapsed);
    pass(12, &format!("both size-81 permutations check out in {:?}", elapsed));
}

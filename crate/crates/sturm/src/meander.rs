//! Meanders of permutations: arc systems, Morse numbers, the Sturm property,
//! polar serpents, and the 3-meander-template predicate.
//!
//! Conventions, fixed project-wide: equilibria are labeled by meander order
//! (`h0 = id`), so the permutation itself is `h1` and equilibrium `k` sits at
//! axis slot `sigma^-1(k)`. The first arc (labels 1-2) lies above the axis.
//! All arithmetic is exact.

use crate::perm::{Permutation, TrivialAction};
use std::fmt;

/// Upper/lower arc systems of a permutation.
///
/// Arcs are unordered pairs of axis slots. `is_meander` holds when no two
/// same-side arcs interleave; this is the combinatorial meander property and
/// does not require dissipativity.
#[derive(Clone, Debug)]
pub struct MeanderDiagram {
    pub size: usize,
    pub upper_arcs: Vec<(usize, usize)>,
    pub lower_arcs: Vec<(usize, usize)>,
    /// `axis_of[k-1]` is the axis slot of equilibrium `k`.
    pub axis_of: Vec<usize>,
    pub is_meander: bool,
}

impl MeanderDiagram {
    /// The pair of same-side arcs that interleave, if any.
    pub fn crossing_witness(&self) -> Option<((usize, usize), (usize, usize))> {
        find_crossing(&self.upper_arcs).or_else(|| find_crossing(&self.lower_arcs))
    }
}

fn normalize(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

fn arcs_interleave(x: (usize, usize), y: (usize, usize)) -> bool {
    let (a, b) = x;
    let (c, d) = y;
    (a < c && c < b && b < d) || (c < a && a < d && d < b)
}

fn find_crossing(arcs: &[(usize, usize)]) -> Option<((usize, usize), (usize, usize))> {
    for i in 0..arcs.len() {
        for j in i + 1..arcs.len() {
            if arcs_interleave(arcs[i], arcs[j]) {
                return Some((arcs[i], arcs[j]));
            }
        }
    }
    None
}

/// Builds the arc diagram of `p`: consecutive labels `k, k+1` are joined by
/// an arc over the axis for odd `k`, under it for even `k`.
pub fn build_meander(p: &Permutation) -> MeanderDiagram {
    let n = p.size();
    let inv = p.inverse();
    let axis_of: Vec<usize> = (1..=n).map(|k| inv.apply(k)).collect();
    let mut upper_arcs = Vec::new();
    let mut lower_arcs = Vec::new();
    for k in 1..n {
        let arc = normalize(axis_of[k - 1], axis_of[k]);
        if k % 2 == 1 {
            upper_arcs.push(arc);
        } else {
            lower_arcs.push(arc);
        }
    }
    let is_meander = find_crossing(&upper_arcs).is_none() && find_crossing(&lower_arcs).is_none();
    MeanderDiagram {
        size: n,
        upper_arcs,
        lower_arcs,
        axis_of,
        is_meander,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MeanderError {
    NotAMeander,
    NotSturm,
    /// The two Morse recursions disagree or an anchor misses zero; on meander
    /// input this signals a bug, otherwise a non-dissipative curve.
    RecursionMismatch,
}

impl fmt::Display for MeanderError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MeanderError::NotAMeander => write!(f, "not a meander (same-side arcs cross)"),
            MeanderError::NotSturm => write!(f, "not a Sturm permutation"),
            MeanderError::RecursionMismatch => write!(f, "Morse recursion anchor mismatch"),
        }
    }
}

impl std::error::Error for MeanderError {}

/// Morse numbers per equilibrium label plus aggregated cell counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorseVector {
    /// `values[k-1]` is the Morse number of equilibrium `k`.
    pub values: Vec<i64>,
    /// `counts[i]` is the number of equilibria with Morse number `i`.
    pub counts: Vec<usize>,
}

impl MorseVector {
    pub fn max_index(&self) -> i64 {
        self.counts.len() as i64 - 1
    }

    /// Alternating sum of the cell counts (Euler characteristic).
    pub fn euler(&self) -> i64 {
        self.counts
            .iter()
            .enumerate()
            .map(|(i, &c)| if i % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }
}

fn sign(x: i64) -> i64 {
    match x.cmp(&0) {
        std::cmp::Ordering::Less => -1,
        std::cmp::Ordering::Equal => 0,
        std::cmp::Ordering::Greater => 1,
    }
}

/// Morse values by recursion along the axis (`h1`), indexed by label.
pub fn morse_values_axis(p: &Permutation) -> Vec<i64> {
    let n = p.size();
    let mut by_label = vec![0i64; n];
    let mut cur = 0i64;
    by_label[p.apply(1) - 1] = 0;
    for j in 1..n {
        let step = if j % 2 == 1 { 1 } else { -1 };
        cur += step * sign(p.apply(j + 1) as i64 - p.apply(j) as i64);
        by_label[p.apply(j + 1) - 1] = cur;
    }
    by_label
}

/// Morse values by recursion along the meander (`h0`), indexed by label.
pub fn morse_values_meander(p: &Permutation) -> Vec<i64> {
    let n = p.size();
    let inv = p.inverse();
    let mut by_label = vec![0i64; n];
    let mut cur = 0i64;
    for j in 1..n {
        let step = if j % 2 == 1 { 1 } else { -1 };
        cur += step * sign(inv.apply(j + 1) as i64 - inv.apply(j) as i64);
        by_label[j] = cur;
    }
    by_label
}

/// Both anchor values of the axis recursion are zero and the two recursions
/// agree label by label.
pub fn recursions_consistent(p: &Permutation) -> bool {
    let a = morse_values_meander(p);
    let b = morse_values_axis(p);
    a == b && a[p.size() - 1] == 0 && b[p.apply(p.size()) - 1] == 0
}

/// Morse numbers of a meander, with cell counts.
///
/// Fails on non-meanders and when the recursion anchors do not close up.
pub fn morse_numbers(p: &Permutation) -> Result<MorseVector, MeanderError> {
    if !build_meander(p).is_meander {
        return Err(MeanderError::NotAMeander);
    }
    let values = morse_values_axis(p);
    if values != morse_values_meander(p) || *values.last().unwrap() != 0 {
        return Err(MeanderError::RecursionMismatch);
    }
    let max = values.iter().copied().max().unwrap_or(0);
    if values.iter().any(|&v| v < 0) {
        // counts are only meaningful for Morse meanders
        return Ok(MorseVector {
            values,
            counts: Vec::new(),
        });
    }
    let mut counts = vec![0usize; (max + 1) as usize];
    for &v in &values {
        counts[v as usize] += 1;
    }
    Ok(MorseVector { values, counts })
}

/// Outcome of the dissipative/Morse/meander tests.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SturmDiagnosis {
    pub meander: bool,
    pub dissipative: bool,
    pub morse: bool,
    pub sturm: bool,
}

pub fn is_sturm(p: &Permutation) -> SturmDiagnosis {
    let n = p.size();
    let meander = build_meander(p).is_meander;
    let dissipative = p.apply(1) == 1 && p.apply(n) == n;
    let morse = morse_values_axis(p).iter().all(|&v| v >= 0);
    SturmDiagnosis {
        meander,
        dissipative,
        morse,
        sturm: meander && dissipative && morse,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pole {
    North,
    South,
}

/// A maximal run of Morse-{0,1} equilibria next to a pole in one of the two
/// orders (`iota = 0`: meander order, `iota = 1`: axis order).
#[derive(Clone, Debug)]
pub struct Serpent {
    pub pole: Pole,
    pub iota: u8,
    /// Inclusive interval of `h_iota` positions.
    pub indices: (usize, usize),
    /// Equilibrium labels, in pole-outward order.
    pub members: Vec<usize>,
    pub full: bool,
    /// The Morse-2 equilibrium just past the serpent, absent when the serpent
    /// spans every position.
    pub terminator: Option<usize>,
}

impl Serpent {
    pub fn contains(&self, label: usize) -> bool {
        self.members.contains(&label)
    }

    pub fn overlaps(&self, other: &Serpent) -> bool {
        self.members.iter().any(|m| other.contains(*m))
    }
}

fn h_iota(p: &Permutation, iota: u8, j: usize) -> usize {
    if iota == 0 {
        j
    } else {
        p.apply(j)
    }
}

fn serpent(p: &Permutation, morse: &[i64], pole: Pole, iota: u8) -> Serpent {
    let n = p.size();
    let positions: Vec<usize> = match pole {
        Pole::North => (1..=n).collect(),
        Pole::South => (1..=n).rev().collect(),
    };
    let mut members = Vec::new();
    let mut last = 0usize;
    let mut terminator = None;
    for (step, &j) in positions.iter().enumerate() {
        let label = h_iota(p, iota, j);
        if morse[label - 1] <= 1 {
            members.push(label);
            last = step;
        } else {
            terminator = Some(label);
            break;
        }
    }
    let indices = match pole {
        Pole::North => (1, 1 + last),
        Pole::South => (n - last, n),
    };
    // full when the run reaches the saddle h_{1-iota}-adjacent to the
    // opposite pole
    let other = 1 - iota;
    let full = match pole {
        Pole::North => members.contains(&h_iota(p, other, n - 1)),
        Pole::South => members.contains(&h_iota(p, other, 2)),
    };
    Serpent {
        pole,
        iota,
        indices,
        members,
        full,
        terminator,
    }
}

/// The four polar serpents (N/S crossed with both orders), for Sturm input.
pub fn polar_serpents(p: &Permutation) -> Result<[Serpent; 4], MeanderError> {
    if !is_sturm(p).sturm {
        return Err(MeanderError::NotSturm);
    }
    let morse = morse_values_axis(p);
    Ok([
        serpent(p, &morse, Pole::North, 0),
        serpent(p, &morse, Pole::North, 1),
        serpent(p, &morse, Pole::South, 0),
        serpent(p, &morse, Pole::South, 1),
    ])
}

/// Report of the four 3-meander-template conditions.
#[derive(Clone, Debug)]
pub struct TemplateReport {
    pub is_template: bool,
    /// Label of the unique Morse-3 equilibrium, when present.
    pub center: Option<usize>,
    /// `(w-0, w+0, w-1, w+1)`: meander resp. axis neighbors of the center.
    pub neighbors: Option<(usize, usize, usize, usize)>,
    pub serpents: Option<[Serpent; 4]>,
    pub violations: Vec<String>,
}

/// Decides whether `p` is a 3-meander template.
///
/// Checks, in order: the Sturm property, a unique Morse-3 equilibrium with no
/// higher index, serpent overlap, the polar-arc bracketing of the center, and
/// the identification of the center's neighbors with the serpent terminators.
pub fn is_three_meander_template(p: &Permutation) -> TemplateReport {
    let mut violations = Vec::new();
    let diag = is_sturm(p);
    if !diag.sturm {
        violations.push(format!(
            "not Sturm (meander={}, dissipative={}, morse={})",
            diag.meander, diag.dissipative, diag.morse
        ));
        return TemplateReport {
            is_template: false,
            center: None,
            neighbors: None,
            serpents: None,
            violations,
        };
    }
    let n = p.size();
    let morse = morse_values_axis(p);
    let threes: Vec<usize> = (1..=n).filter(|&k| morse[k - 1] == 3).collect();
    let higher = (1..=n).any(|k| morse[k - 1] > 3);
    if threes.len() != 1 || higher {
        violations.push(format!(
            "need exactly one Morse-3 cell and none higher, found {} (max {})",
            threes.len(),
            morse.iter().max().unwrap()
        ));
        return TemplateReport {
            is_template: false,
            center: None,
            neighbors: None,
            serpents: None,
            violations,
        };
    }
    let center = threes[0];
    let serpents = polar_serpents(p).expect("sturm checked");
    let [n0, n1, s0, s1] = serpents.clone();

    // (ii) polar h_iota-serpents overlap their anti-polar h_{1-iota} mates
    if !n0.overlaps(&s1) {
        violations.push("N-polar h0-serpent misses the S-polar h1-serpent".into());
    }
    if !n1.overlaps(&s0) {
        violations.push("N-polar h1-serpent misses the S-polar h0-serpent".into());
    }

    // (iii) the polar arc of each polar serpent brackets the center in the
    // other order
    let inv = p.inverse();
    let pos = |iota: u8, label: usize| -> usize {
        if iota == 0 {
            label
        } else {
            inv.apply(label)
        }
    };
    let brackets = |iota: u8, a: usize, b: usize| -> bool {
        let other = 1 - iota;
        let (x, y) = (pos(other, a), pos(other, b));
        let c = pos(other, center);
        (x < c && c < y) || (y < c && c < x)
    };
    for iota in [0u8, 1u8] {
        let (a, b) = (h_iota(p, iota, 1), h_iota(p, iota, 2));
        if !brackets(iota, a, b) {
            violations.push(format!("N-polar h{}-arc does not bracket the center", iota));
        }
        let (a, b) = (h_iota(p, iota, n - 1), h_iota(p, iota, n));
        if !brackets(iota, a, b) {
            violations.push(format!("S-polar h{}-arc does not bracket the center", iota));
        }
    }

    // (iv) the h_iota-neighbors of the center terminate the polar
    // h_{1-iota}-serpents
    let c0 = center; // h0-position of the center is its label
    let c1 = inv.apply(center);
    let w_minus_0 = h_iota(p, 0, c0 - 1);
    let w_plus_0 = h_iota(p, 0, c0 + 1);
    let w_minus_1 = h_iota(p, 1, c1 - 1);
    let w_plus_1 = h_iota(p, 1, c1 + 1);
    let mut expect = |serp: &Serpent, want: usize, what: &str| {
        if serp.terminator != Some(want) {
            violations.push(format!(
                "{} should terminate at {}, found {:?}",
                what, want, serp.terminator
            ));
        }
    };
    expect(&n1, w_minus_0, "N-polar h1-serpent");
    expect(&s1, w_plus_0, "S-polar h1-serpent");
    expect(&n0, w_minus_1, "N-polar h0-serpent");
    expect(&s0, w_plus_1, "S-polar h0-serpent");

    TemplateReport {
        is_template: violations.is_empty(),
        center: Some(center),
        neighbors: Some((w_minus_0, w_plus_0, w_minus_1, w_plus_1)),
        serpents: Some(serpents),
        violations,
    }
}

/// Flip symmetry data for a Sturm permutation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlipReport {
    pub flip_symmetric: bool,
    /// The unique Morse index with odd cell count, when flip symmetric.
    pub odd_index: Option<usize>,
    pub n_mod_4: usize,
}

pub fn flip_symmetry_report(p: &Permutation) -> Result<FlipReport, MeanderError> {
    if !is_sturm(p).sturm {
        return Err(MeanderError::NotSturm);
    }
    let flip_symmetric = p.act(TrivialAction::Kappa) == *p;
    let odd_index = if flip_symmetric {
        let counts = morse_numbers(p).expect("sturm").counts;
        let odd: Vec<usize> = counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c % 2 == 1)
            .map(|(i, _)| i)
            .collect();
        debug_assert_eq!(odd.len(), 1);
        odd.first().copied()
    } else {
        None
    };
    Ok(FlipReport {
        flip_symmetric,
        odd_index,
        n_mod_4: p.size() % 4,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn arcs_of_the_nine_crossing_ball() {
        let d = build_meander(&p("1 8 3 4 7 6 5 2 9"));
        assert!(d.is_meander);
        let mut upper = d.upper_arcs.clone();
        upper.sort();
        assert_eq!(upper, vec![(1, 8), (2, 5), (3, 4), (6, 7)]);
        let mut lower = d.lower_arcs.clone();
        lower.sort();
        assert_eq!(lower, vec![(2, 9), (3, 8), (4, 7), (5, 6)]);
    }

    #[test]
    fn monotone_curve_is_a_meander() {
        let d = build_meander(&p("1 2 3"));
        assert!(d.is_meander);
        assert_eq!(d.upper_arcs, vec![(1, 2)]);
        assert_eq!(d.lower_arcs, vec![(2, 3)]);
    }

    #[test]
    fn interleaving_lower_arcs_are_rejected() {
        let d = build_meander(&p("1 2 4 3 5"));
        assert!(!d.is_meander);
        let witness = d.crossing_witness().unwrap();
        assert_eq!(normalize_pair(witness), ((2, 4), (3, 5)));
    }

    fn normalize_pair(
        (a, b): ((usize, usize), (usize, usize)),
    ) -> ((usize, usize), (usize, usize)) {
        if a < b {
            (a, b)
        } else {
            (b, a)
        }
    }

    #[test]
    fn morse_numbers_of_the_nine_crossing_ball() {
        let mv = morse_numbers(&p("1 8 3 4 7 6 5 2 9")).unwrap();
        assert_eq!(mv.values, vec![0, 1, 2, 3, 2, 1, 2, 1, 0]);
        assert_eq!(mv.counts, vec![2, 3, 3, 1]);
        assert_eq!(mv.euler(), 1);
    }

    #[test]
    fn morse_numbers_small_cases() {
        let mv = morse_numbers(&p("1 2 3")).unwrap();
        assert_eq!(mv.values, vec![0, 1, 0]);
        assert_eq!(mv.counts, vec![2, 1]);

        let mv = morse_numbers(&p("1 6 3 4 5 2 7")).unwrap();
        assert_eq!(mv.values, vec![0, 1, 2, 3, 2, 1, 0]);
    }

    #[test]
    fn sturm_diagnosis_cases() {
        assert!(is_sturm(&p("1 4 3 2 5")).sturm);

        let d = is_sturm(&p("1 2 5 4 3 6 7"));
        assert!(d.meander && d.dissipative && !d.morse && !d.sturm);
        assert_eq!(morse_values_axis(&p("1 2 5 4 3 6 7"))[3], -1);

        let d = is_sturm(&p("1 3 2"));
        assert!(d.meander && d.morse && !d.dissipative && !d.sturm);
    }

    #[test]
    fn serpents_of_the_nine_crossing_ball() {
        let [n0, n1, s0, s1] = polar_serpents(&p("1 8 3 4 7 6 5 2 9")).unwrap();
        assert_eq!(n0.members, vec![1, 2]);
        assert_eq!(n0.terminator, Some(3));
        assert_eq!(s1.members, vec![9, 2]);
        assert_eq!(s1.terminator, Some(5));
        assert_eq!(n1.members, vec![1, 8]);
        assert_eq!(n1.terminator, Some(3));
        assert_eq!(s0.members, vec![9, 8]);
        assert_eq!(s0.terminator, Some(7));
    }

    #[test]
    fn serpents_cover_everything_without_sources() {
        let serpents = polar_serpents(&p("1 2 3")).unwrap();
        for s in &serpents {
            assert_eq!(s.members.len(), 3);
            assert_eq!(s.terminator, None);
        }
    }

    #[test]
    fn serpent_of_chafee_infante() {
        let [n0, _, _, _] = polar_serpents(&p("1 6 3 4 5 2 7")).unwrap();
        assert_eq!(n0.members, vec![1, 2]);
        // labels 1 and 6 occupy the first two axis slots
        let inv = p("1 6 3 4 5 2 7").inverse();
        assert_eq!(inv.apply(1), 1);
        assert_eq!(inv.apply(6), 2);
    }

    #[test]
    fn template_recognition() {
        let r = is_three_meander_template(&p("1 8 3 4 7 6 5 2 9"));
        assert!(r.is_template, "violations: {:?}", r.violations);
        assert_eq!(r.center, Some(4));
        assert_eq!(r.neighbors, Some((3, 5, 3, 7)));

        let r = is_three_meander_template(&p("1 2 3"));
        assert!(!r.is_template);
        assert!(r.violations[0].contains("Morse-3"));

        let r = is_three_meander_template(&p("1 6 3 4 5 2 7"));
        assert!(r.is_template, "violations: {:?}", r.violations);
    }

    #[test]
    fn template_predicate_is_klein_invariant() {
        for s in ["1 8 3 4 7 6 5 2 9", "1 6 3 4 5 2 7"] {
            let q = p(s);
            for g in TrivialAction::ALL {
                assert!(is_three_meander_template(&q.act(g)).is_template);
            }
        }
    }

    #[test]
    fn flip_symmetry_reports() {
        let r = flip_symmetry_report(&p("1 6 3 4 5 2 7")).unwrap();
        assert!(r.flip_symmetric);
        assert_eq!(r.odd_index, Some(3));
        assert_eq!(r.n_mod_4, 3);

        let r = flip_symmetry_report(&p("1 8 3 4 7 6 5 2 9")).unwrap();
        assert!(!r.flip_symmetric);
        assert_eq!(r.n_mod_4, 1);

        let r = flip_symmetry_report(&p("1 2 3")).unwrap();
        assert!(r.flip_symmetric);
        assert_eq!(r.odd_index, Some(1));
    }

    #[test]
    fn recursion_equivalence_on_samples() {
        for s in ["1 8 3 4 7 6 5 2 9", "1 6 3 4 5 2 7", "1 4 3 2 5", "1"] {
            assert!(recursions_consistent(&p(s)));
        }
    }
}

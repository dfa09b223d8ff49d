//! Exhaustive generation of Sturm permutations of odd size, orbit census,
//! and pitchfork reducibility.
//!
//! Generation walks pairs of noncrossing perfect matchings: upper arcs on
//! axis slots `{1..n-1}`, lower arcs on `{2..n}`. A pair contributes exactly
//! when the arc union is a single path from slot 1 to slot `n`; the visit
//! order read off along that path is the inverse permutation. A final filter
//! keeps nonnegative Morse numbers. At `n = 13` this is 132 x 132 matching
//! pairs, far below brute force over permutations.

use crate::meander::{self, is_sturm, morse_numbers};
use crate::perm::Permutation;
use std::collections::HashMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EnumerateError {
    EvenSize(usize),
    ZeroSize,
    NotSturm,
}

impl fmt::Display for EnumerateError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EnumerateError::EvenSize(n) => write!(f, "size {} is even; N must be odd", n),
            EnumerateError::ZeroSize => write!(f, "size must be at least 1"),
            EnumerateError::NotSturm => write!(f, "input is not a Sturm permutation"),
        }
    }
}

impl std::error::Error for EnumerateError {}

/// All noncrossing perfect matchings of the slots `lo..=hi`, in a fixed
/// recursive order (first slot's partner ascending).
fn noncrossing_matchings(lo: usize, hi: usize) -> Vec<Vec<(usize, usize)>> {
    if lo > hi {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    let mut partner = lo + 1;
    while partner <= hi {
        let inner = noncrossing_matchings(lo + 1, partner - 1);
        let outer = noncrossing_matchings(partner + 1, hi);
        for a in &inner {
            for b in &outer {
                let mut m = Vec::with_capacity((hi - lo + 1) / 2);
                m.push((lo, partner));
                m.extend_from_slice(a);
                m.extend_from_slice(b);
                out.push(m);
            }
        }
        partner += 2;
    }
    out
}

/// Reads the permutation off a matching pair, if the union is a single path
/// covering all slots from slot 1.
pub(crate) fn trace(
    n: usize,
    upper: &[(usize, usize)],
    lower: &[(usize, usize)],
) -> Option<Permutation> {
    let mut up = vec![0usize; n + 1];
    let mut down = vec![0usize; n + 1];
    for &(a, b) in upper {
        up[a] = b;
        up[b] = a;
    }
    for &(a, b) in lower {
        down[a] = b;
        down[b] = a;
    }
    let mut image = vec![0usize; n];
    let mut slot = 1usize;
    for k in 1..=n {
        if image[slot - 1] != 0 {
            return None; // revisit: the union contains a cycle
        }
        image[slot - 1] = k;
        if k == n {
            break;
        }
        let next = if k % 2 == 1 { up[slot] } else { down[slot] };
        if next == 0 {
            return None;
        }
        slot = next;
    }
    if image.iter().any(|&v| v == 0) {
        return None;
    }
    Some(Permutation::from_image(image).expect("trace yields a bijection"))
}

/// Emits every Sturm permutation of odd size `n`, each exactly once, in
/// deterministic order (lexicographic by upper matching, then lower).
pub fn enumerate_sturm(n: usize) -> Result<Vec<Permutation>, EnumerateError> {
    if n == 0 {
        return Err(EnumerateError::ZeroSize);
    }
    if n % 2 == 0 {
        return Err(EnumerateError::EvenSize(n));
    }
    if n == 1 {
        return Ok(vec![Permutation::identity(1)]);
    }
    let uppers = noncrossing_matchings(1, n - 1);
    let lowers = noncrossing_matchings(2, n);
    let mut out = Vec::new();
    for u in &uppers {
        for l in &lowers {
            if let Some(p) = trace(n, u, l) {
                if meander::morse_values_axis(&p).iter().all(|&v| v >= 0) {
                    debug_assert!(is_sturm(&p).sturm);
                    debug_assert!(meander::recursions_consistent(&p));
                    out.push(p);
                }
            }
        }
    }
    Ok(out)
}

/// Same output as [`enumerate_sturm`] with the upper matchings partitioned
/// across worker threads; the chunk order keeps the stream deterministic.
pub fn enumerate_sturm_parallel(
    n: usize,
    jobs: usize,
) -> Result<Vec<Permutation>, EnumerateError> {
    if jobs <= 1 || n < 7 {
        return enumerate_sturm(n);
    }
    if n == 0 {
        return Err(EnumerateError::ZeroSize);
    }
    if n % 2 == 0 {
        return Err(EnumerateError::EvenSize(n));
    }
    let uppers = noncrossing_matchings(1, n - 1);
    let lowers = noncrossing_matchings(2, n);
    let chunk = uppers.len().div_ceil(jobs);
    let mut out = Vec::new();
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for us in uppers.chunks(chunk) {
            let lowers = &lowers;
            handles.push(scope.spawn(move || {
                let mut part = Vec::new();
                for u in us {
                    for l in lowers {
                        if let Some(p) = trace(n, u, l) {
                            if meander::morse_values_axis(&p).iter().all(|&v| v >= 0) {
                                part.push(p);
                            }
                        }
                    }
                }
                part
            }));
        }
        for h in handles {
            out.extend(h.join().expect("worker panicked"));
        }
    });
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CensusFilter {
    All,
    Ball3,
}

/// One trivial-equivalence class in a census.
#[derive(Clone, Debug)]
pub struct CensusEntry {
    pub canonical: Permutation,
    pub cell_counts: Vec<usize>,
    pub isotropy: Vec<&'static str>,
    pub pitchforkable: bool,
}

/// Census of Sturm permutations of size `n` up to trivial equivalence.
#[derive(Clone, Debug)]
pub struct CensusResult {
    pub n: usize,
    pub total_sturm_classes: usize,
    pub ball3_classes: usize,
    pub representatives: Vec<CensusEntry>,
}

pub fn census(n: usize, filter: CensusFilter) -> Result<CensusResult, EnumerateError> {
    let all = enumerate_sturm(n)?;
    let mut seen: HashMap<Permutation, ()> = HashMap::new();
    let mut classes = Vec::new();
    for p in &all {
        let canon = p.canonical();
        if seen.insert(canon.clone(), ()).is_none() {
            classes.push(canon);
        }
    }
    classes.sort();
    let total = classes.len();
    let ball3: Vec<&Permutation> = classes
        .iter()
        .filter(|p| meander::is_three_meander_template(p).is_template)
        .collect();
    let ball3_count = ball3.len();
    let selected: Vec<Permutation> = match filter {
        CensusFilter::All => classes.clone(),
        CensusFilter::Ball3 => ball3.into_iter().cloned().collect(),
    };
    let mut memo = HashMap::new();
    let representatives = selected
        .into_iter()
        .map(|p| {
            let counts = morse_numbers(&p).expect("sturm").counts;
            let report = p.orbit_report();
            let pitch = is_pitchforkable_memo(&p, &mut memo);
            CensusEntry {
                canonical: p,
                cell_counts: counts,
                isotropy: report.isotropy_labels(),
                pitchforkable: pitch,
            }
        })
        .collect();
    Ok(CensusResult {
        n,
        total_sturm_classes: total,
        ball3_classes: ball3_count,
        representatives,
    })
}

/// A pitchfork collapse site: three labels consecutive along the meander
/// sitting on three consecutive axis slots, traversed monotonically.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CollapseSite {
    /// First label of the triple `(k, k+1, k+2)`.
    pub label: usize,
    /// Leftmost of the three axis slots.
    pub slot: usize,
    pub ascending: bool,
}

/// All single pitchfork collapses of a Sturm permutation that stay Sturm.
pub fn pitchfork_collapses(
    p: &Permutation,
) -> Result<Vec<(CollapseSite, Permutation)>, EnumerateError> {
    if !is_sturm(p).sturm {
        return Err(EnumerateError::NotSturm);
    }
    let n = p.size();
    if n < 3 {
        return Ok(Vec::new());
    }
    let inv = p.inverse();
    let mut out = Vec::new();
    for k in 1..=n - 2 {
        let (a, b, c) = (inv.apply(k), inv.apply(k + 1), inv.apply(k + 2));
        let ascending = b == a + 1 && c == a + 2;
        let descending = b + 1 == a && c + 2 == a;
        if !(ascending || descending) {
            continue;
        }
        let slot = a.min(c);
        let reduced = collapse_at(p, k, slot);
        if is_sturm(&reduced).sturm {
            out.push((
                CollapseSite {
                    label: k,
                    slot,
                    ascending,
                },
                reduced,
            ));
        }
    }
    Ok(out)
}

/// Replaces the triple `(k, k+1, k+2)` occupying slots `slot..slot+2` by a
/// single crossing and relabels.
fn collapse_at(p: &Permutation, k: usize, slot: usize) -> Permutation {
    let n = p.size();
    let mut image = Vec::with_capacity(n - 2);
    for s in 1..=n {
        if s == slot {
            image.push(k);
            continue;
        }
        if s == slot + 1 || s == slot + 2 {
            continue;
        }
        let v = p.apply(s);
        debug_assert!(!(k..=k + 2).contains(&v) || s == slot);
        image.push(if v > k + 2 { v - 2 } else { v });
    }
    Permutation::from_image(image).expect("collapse yields a bijection")
}

/// Inserts an increasing pitchfork at equilibrium `k`: the crossing becomes a
/// monotone triple whose center has Morse number one higher.
pub fn pitchfork_insert(p: &Permutation, k: usize) -> Permutation {
    let n = p.size();
    let slot = p.inverse().apply(k);
    let old_morse = meander::morse_values_axis(p)[k - 1];
    for ascending in [true, false] {
        let mut image = Vec::with_capacity(n + 2);
        for s in 1..=n {
            let relabel = |v: usize| if v > k { v + 2 } else { v };
            if s == slot {
                if ascending {
                    image.extend_from_slice(&[k, k + 1, k + 2]);
                } else {
                    image.extend_from_slice(&[k + 2, k + 1, k]);
                }
            } else {
                image.push(relabel(p.apply(s)));
            }
        }
        let q = Permutation::from_image(image).expect("insert yields a bijection");
        if is_sturm(&q).sturm
            && meander::morse_values_axis(&q)[k] == old_morse + 1
        {
            return q;
        }
    }
    panic!("no increasing pitchfork insertion at label {} of {}", k, p);
}

fn is_pitchforkable_memo(p: &Permutation, memo: &mut HashMap<Permutation, bool>) -> bool {
    let canon = p.canonical();
    if let Some(&v) = memo.get(&canon) {
        return v;
    }
    if canon.size() == 1 {
        memo.insert(canon, true);
        return true;
    }
    memo.insert(canon.clone(), false); // cycle guard; collapses shrink, so unused
    let result = pitchfork_collapses(&canon)
        .expect("canonical form of a Sturm permutation is Sturm")
        .into_iter()
        .any(|(_, reduced)| is_pitchforkable_memo(&reduced, memo));
    memo.insert(canon, result);
    result
}

/// True when `p` reduces to the one-point attractor by repeated pitchfork
/// collapses.
pub fn is_pitchforkable(p: &Permutation) -> Result<bool, EnumerateError> {
    if !is_sturm(p).sturm {
        return Err(EnumerateError::NotSturm);
    }
    Ok(is_pitchforkable_memo(p, &mut HashMap::new()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::TrivialAction;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    /// Brute-force oracle: all permutations with fixed endpoints, filtered by
    /// the meander and Morse conditions directly.
    fn brute_force_sturm(n: usize) -> Vec<Permutation> {
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
        let mut rest: Vec<usize> = (2..n).collect();
        permute(&mut rest, &mut Vec::new(), &mut middles);
        let mut out = Vec::new();
        for mid in middles {
            let mut image = vec![1];
            image.extend(mid);
            image.push(n);
            let q = Permutation::from_image(image).unwrap();
            if is_sturm(&q).sturm {
                out.push(q);
            }
        }
        out
    }

    #[test]
    fn enumerate_rejects_bad_sizes() {
        assert!(enumerate_sturm(0).is_err());
        assert!(enumerate_sturm(4).is_err());
    }

    #[test]
    fn enumerate_smallest_cases() {
        assert_eq!(enumerate_sturm(1).unwrap(), vec![Permutation::identity(1)]);
        let five: Vec<String> = enumerate_sturm(5)
            .unwrap()
            .iter()
            .map(|q| q.to_string())
            .collect();
        let mut five_sorted = five.clone();
        five_sorted.sort();
        assert_eq!(five_sorted, vec!["1 2 3 4 5", "1 4 3 2 5"]);
    }

    #[test]
    fn enumeration_agrees_with_brute_force_oracle() {
        for n in [1usize, 3, 5, 7, 9] {
            let mut fast = enumerate_sturm(n).unwrap();
            let mut slow = brute_force_sturm(n);
            fast.sort();
            slow.sort();
            assert_eq!(fast, slow, "mismatch at n = {}", n);
        }
    }

    #[test]
    fn census_is_invariant_under_trivial_pre_action() {
        // applying a trivial action to each emitted permutation must not
        // change class counts
        let base = census(7, CensusFilter::All).unwrap();
        for g in TrivialAction::ALL {
            let mut canons: Vec<Permutation> = enumerate_sturm(7)
                .unwrap()
                .iter()
                .map(|q| q.act(g).canonical())
                .collect();
            canons.sort();
            canons.dedup();
            assert_eq!(canons.len(), base.total_sturm_classes);
        }
    }

    #[test]
    fn ball3_counts_small() {
        let c = census(7, CensusFilter::Ball3).unwrap();
        assert_eq!(c.ball3_classes, 1);
        assert_eq!(c.representatives[0].canonical, p("1 6 3 4 5 2 7"));

        let c = census(9, CensusFilter::Ball3).unwrap();
        assert_eq!(c.ball3_classes, 2);
    }

    #[test]
    fn collapse_of_chafee_infante() {
        let sites = pitchfork_collapses(&p("1 6 3 4 5 2 7")).unwrap();
        assert_eq!(sites.len(), 1);
        let (site, reduced) = &sites[0];
        assert_eq!(site.label, 3);
        assert_eq!(site.slot, 3);
        assert_eq!(reduced, &p("1 4 3 2 5"));
    }

    #[test]
    fn collapse_of_interval() {
        let sites = pitchfork_collapses(&p("1 2 3")).unwrap();
        assert_eq!(sites.len(), 1);
        assert_eq!(sites[0].1, Permutation::identity(1));
    }

    #[test]
    fn chafee_infante_chain_is_pitchforkable() {
        assert!(is_pitchforkable(&p("1 6 3 4 5 2 7")).unwrap());
        assert!(is_pitchforkable(&p("1 4 3 2 5")).unwrap());
        assert!(is_pitchforkable(&p("1 2 3")).unwrap());
    }

    #[test]
    fn insert_is_inverse_of_collapse() {
        for s in ["1 2 3", "1 4 3 2 5", "1 6 3 4 5 2 7", "1 8 3 4 7 6 5 2 9"] {
            let q = p(s);
            let morse = morse_numbers(&q).unwrap().values;
            for k in 1..=q.size() {
                let grown = pitchfork_insert(&q, k);
                assert!(is_sturm(&grown).sturm);
                assert_eq!(
                    meander::morse_values_axis(&grown)[k],
                    morse[k - 1] + 1,
                    "center index must rise at {} in {}",
                    k,
                    s
                );
                let collapses = pitchfork_collapses(&grown).unwrap();
                assert!(
                    collapses.iter().any(|(_, r)| r == &q),
                    "collapsing {} should recover {}",
                    grown,
                    s
                );
            }
        }
    }

    #[test]
    fn collapse_shrinks_and_stays_sturm() {
        for q in enumerate_sturm(9).unwrap() {
            for (_, reduced) in pitchfork_collapses(&q).unwrap() {
                assert_eq!(reduced.size(), q.size() - 2);
                assert!(is_sturm(&reduced).sturm);
            }
        }
    }
}

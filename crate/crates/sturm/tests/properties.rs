//! Property tests for the group action, arc systems, and recurring template
//! invariants.

use proptest::prelude::*;
use sturm::enumerate::{census, enumerate_sturm, CensusFilter};
use sturm::meander::{build_meander, is_three_meander_template};
use sturm::perm::{Permutation, TrivialAction};

fn arb_perm(max: usize) -> impl Strategy<Value = Permutation> {
    (1..=max).prop_flat_map(|n| {
        Just((1..=n).collect::<Vec<usize>>())
            .prop_shuffle()
            .prop_map(|image| Permutation::from_image(image).unwrap())
    })
}

proptest! {
    #[test]
    fn nontrivial_actions_are_involutions(p in arb_perm(12)) {
        for g in [TrivialAction::Kappa, TrivialAction::Rho, TrivialAction::KappaRho] {
            prop_assert_eq!(p.act(g).act(g), p.clone());
        }
    }

    #[test]
    fn kappa_and_rho_commute(p in arb_perm(12)) {
        prop_assert_eq!(
            p.act(TrivialAction::Kappa).act(TrivialAction::Rho),
            p.act(TrivialAction::Rho).act(TrivialAction::Kappa)
        );
    }

    #[test]
    fn canonical_is_constant_on_orbits(p in arb_perm(12)) {
        let canon = p.canonical();
        for g in TrivialAction::ALL {
            prop_assert_eq!(p.act(g).canonical(), canon.clone());
        }
    }

    #[test]
    fn orbit_size_times_isotropy_is_group_order(p in arb_perm(12)) {
        let r = p.orbit_report();
        prop_assert_eq!(r.orbit.len() * r.isotropy.len(), 4);
    }

    #[test]
    fn parse_display_round_trip(p in arb_perm(40)) {
        let text = p.to_string();
        prop_assert_eq!(text.parse::<Permutation>().unwrap(), p);
    }

    #[test]
    fn arcs_cover_interior_slots(p in arb_perm(15)) {
        // every interior axis slot lies on one upper and one lower arc; the
        // slot of label 1 has no lower arc, the last-label slot no upper arc
        // when N is odd
        let d = build_meander(&p);
        let n = p.size();
        let mut upper_deg = vec![0usize; n + 1];
        let mut lower_deg = vec![0usize; n + 1];
        for &(a, b) in &d.upper_arcs {
            upper_deg[a] += 1;
            upper_deg[b] += 1;
        }
        for &(a, b) in &d.lower_arcs {
            lower_deg[a] += 1;
            lower_deg[b] += 1;
        }
        let inv = p.inverse();
        for slot in 1..=n {
            let expect_upper = usize::from(!(n % 2 == 1 && slot == inv.apply(n)));
            let expect_lower = usize::from(slot != inv.apply(1) && (n % 2 == 1 || slot != inv.apply(n)));
            if n == 1 {
                continue;
            }
            prop_assert_eq!(upper_deg[slot], expect_upper, "upper at slot {}", slot);
            prop_assert_eq!(lower_deg[slot], expect_lower, "lower at slot {}", slot);
        }
    }
}

#[test]
fn template_predicate_is_klein_invariant_on_the_census() {
    for rep in census(11, CensusFilter::Ball3).unwrap().representatives {
        for g in TrivialAction::ALL {
            assert!(is_three_meander_template(&rep.canonical.act(g)).is_template);
        }
    }
    // and non-templates stay non-templates
    for q in enumerate_sturm(9).unwrap() {
        let is_template = is_three_meander_template(&q).is_template;
        for g in TrivialAction::ALL {
            assert_eq!(is_three_meander_template(&q.act(g)).is_template, is_template);
        }
    }
}

mod common;

use std::collections::BTreeSet;
use std::sync::Arc;

use dualsep::bigraph::{gen_random, matching, BipartiteGraph};
use dualsep::corpus::corpus_graph;
use dualsep::tangle::{build_system, check_regular, enumerate_tangles, satisfies, Pick};
use dualsep::verify::{verify_corpus, Outcome, VerifyConfig};
use dualsep::{EnumCaps, HalfInt, OrientedSep, TangleKind, Universe};
use proptest::prelude::*;

const UNIVERSES: [Universe; 4] = [Universe::SideX, Universe::SideY, Universe::PartitionsX, Universe::Edges];

fn small_graph() -> impl Strategy<Value = BipartiteGraph> {
    (1usize..=3, 1usize..=3, 0.3f64..=1.0, any::<u64>())
        .prop_map(|(nx, ny, p, seed)| gen_random(nx, ny, p, seed))
}

fn picks(found: &[dualsep::Orientation]) -> BTreeSet<Vec<Pick>> {
    found.iter().map(|o| o.picks().to_vec()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn engine_agrees_with_brute_force(g in small_graph(), k2 in 1u64..=4, u in 0usize..4) {
        let u = UNIVERSES[u];
        prop_assume!(u != Universe::Edges || g.edge_count() <= 6);
        let sys = Arc::new(build_system(&g, u, HalfInt::from_doubled(k2), EnumCaps::default()).unwrap());
        prop_assume!(sys.len() <= 12);
        let tangles = enumerate_tangles(&sys, TangleKind::Tangle, 12).unwrap();
        let naive: BTreeSet<_> = common::naive_tangles(&sys, common::is_tangle).into_iter().collect();
        prop_assert_eq!(picks(&tangles), naive);
        let profiles = enumerate_tangles(&sys, TangleKind::RegularProfile, 12).unwrap();
        let naive: BTreeSet<_> = common::naive_tangles(&sys, common::is_regular_profile).into_iter().collect();
        prop_assert_eq!(picks(&profiles), naive);

        let n = sys.ground_len();
        let bottom = OrientedSep::partition(dualsep::SubsetMask::empty(n));
        for t in &tangles {
            prop_assert!(check_regular(t));
            if sys.contains(&bottom) {
                prop_assert!(t.contains(&bottom));
            }
            for j in 1..=k2 {
                let r = t.restrict(HalfInt::from_doubled(j));
                prop_assert!(satisfies(&r, TangleKind::Tangle));
            }
        }
        for p in &profiles {
            for j in 1..=k2 {
                prop_assert!(satisfies(&p.restrict(HalfInt::from_doubled(j)), TangleKind::RegularProfile));
            }
        }
    }
}

#[test]
fn matching_has_two_tangles_per_side() {
    let m2 = matching(2);
    for u in [Universe::SideX, Universe::SideY, Universe::Edges] {
        let sys = Arc::new(build_system(&m2, u, HalfInt::from_doubled(1), EnumCaps::default()).unwrap());
        assert_eq!(sys.len(), 2);
        let found = enumerate_tangles(&sys, TangleKind::Tangle, 24).unwrap();
        assert_eq!(found.len(), 2, "{u:?}");
        assert_eq!(common::naive_tangles(&sys, common::is_tangle).len(), 2);
    }
}

#[test]
fn small_corpus_has_no_counterexamples() {
    let graphs: Vec<_> = (0..12).map(corpus_graph).collect();
    let config = VerifyConfig {
        seeds: (0..12).collect(),
        k_grid_doubled: vec![1, 2],
        ..VerifyConfig::default()
    };
    let report = verify_corpus(&graphs, &config).unwrap();
    assert_eq!(report.counterexamples(), 0);
    assert!(report.cases.iter().any(|c| c.outcome == Outcome::Verified));
    for c in &report.cases {
        if c.outcome == Outcome::Verified {
            assert!(c.hypothesis_count > 0);
        }
    }
    let again = verify_corpus(&graphs, &config).unwrap();
    assert_eq!(again, report);
}

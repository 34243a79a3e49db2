mod common;

use std::collections::{BTreeSet, HashSet};

use dualsep::bigraph::{gen_random, labelled_edges, read_transactions, BipartiteGraph};
use dualsep::order::{order_edge, order_side};
use dualsep::{enumerate_seps, EnumCaps, OrientedSep, SepMode, Side, UnorientedSep, Vertex};
use proptest::prelude::*;

fn all(n: usize) -> Vec<OrientedSep> {
    enumerate_seps(n, SepMode::AllSeparations, EnumCaps::default())
        .unwrap()
        .collect()
}

#[test]
fn lattice_laws_hold_exhaustively() {
    for n in 0..=3 {
        let seps = all(n);
        assert_eq!(seps.len(), 3usize.pow(n as u32));
        for r in &seps {
            assert_eq!(r.sup(r), *r);
            assert_eq!(r.inf(r), *r);
            for s in &seps {
                assert_eq!(r.leq(s), s.inverse().leq(&r.inverse()));
                assert_eq!(r.sup(s), s.sup(r));
                assert_eq!(r.inf(s), s.inf(r));
                assert_eq!(r.sup(&r.inf(s)), *r);
                assert_eq!(r.inf(&r.sup(s)), *r);
                assert!(r.leq(&r.sup(s)) && r.inf(s).leq(r));
                assert_eq!(r.leq(s), r.sup(s) == *s);
                for t in &seps {
                    assert_eq!(r.sup(&s.sup(t)), r.sup(s).sup(t));
                    assert_eq!(r.inf(&s.inf(t)), r.inf(s).inf(t));
                }
            }
        }
    }
}

#[test]
fn canonical_forms_pair_up_inverses() {
    for n in 1..=5 {
        let seps = all(n);
        let classes: HashSet<UnorientedSep> = seps.iter().map(OrientedSep::canonical).collect();
        assert_eq!(classes.len(), (3usize.pow(n as u32) - 1) / 2 + 1);
        for c in &classes {
            let [p, q] = c.orientations();
            assert_eq!(p.inverse(), q);
            assert_eq!(p.canonical().canonical(), p);
        }
        let selfinverse: Vec<_> = seps.iter().filter(|s| **s == s.inverse()).collect();
        assert_eq!(selfinverse.len(), 1);
        assert!(selfinverse[0].a().is_full() && selfinverse[0].b().is_full());
    }
}

fn graph() -> impl Strategy<Value = BipartiteGraph> {
    (1usize..=6, 1usize..=6, 0.0f64..=1.0, any::<u64>())
        .prop_map(|(nx, ny, p, seed)| gen_random(nx, ny, p, seed))
}

fn sep(n: usize) -> impl Strategy<Value = OrientedSep> {
    proptest::collection::vec(0u8..3, n).prop_map(|d| {
        let a: Vec<bool> = d.iter().map(|&x| x != 1).collect();
        let b: Vec<bool> = d.iter().map(|&x| x != 0).collect();
        common::from_sets(&a, &b)
    })
}

fn graph_with_pair() -> impl Strategy<Value = (BipartiteGraph, OrientedSep, OrientedSep, OrientedSep, OrientedSep)> {
    graph().prop_flat_map(|g| {
        let (nx, ne) = (g.x().len(), g.edge_count());
        (Just(g), sep(nx), sep(nx), sep(ne), sep(ne))
    })
}

proptest! {
    #[test]
    fn random_lattice_laws(n in 1usize..=10, seed in any::<u64>()) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let (r, s) = (common::random_sep(&mut rng, n), common::random_sep(&mut rng, n));
        prop_assert_eq!(r.leq(&s), s.inverse().leq(&r.inverse()));
        prop_assert_eq!(r.sup(&s).inverse(), r.inverse().inf(&s.inverse()));
        let (ra, rb) = common::sides(&r);
        let (sa, sb) = common::sides(&s);
        let (ua, ub) = common::sides(&r.sup(&s));
        for i in 0..n {
            prop_assert_eq!(ua[i], ra[i] || sa[i]);
            prop_assert_eq!(ub[i], rb[i] && sb[i]);
        }
    }

    #[test]
    fn submodular_with_crossing_corners((g, r, s, c, d) in graph_with_pair()) {
        let side = |t: &OrientedSep| order_side(&g, Side::X, t).unwrap();
        prop_assert!(side(&r.sup(&s)) + side(&r.inf(&s)) <= side(&r) + side(&s));
        let t = s.inverse();
        prop_assert!(side(&r.sup(&t)) + side(&r.inf(&t)) <= side(&r) + side(&s));
        let edge = |t: &OrientedSep| order_edge(&g, t).unwrap();
        prop_assert!(edge(&c.sup(&d)) + edge(&c.inf(&d)) <= edge(&c) + edge(&d));
    }

    #[test]
    fn degree_sums_and_csv_round_trip(g in graph()) {
        let deg = |side: Side, n: usize| (0..n).map(|i| g.degree(Vertex { side, index: i }) as usize).sum::<usize>();
        prop_assert_eq!(deg(Side::X, g.x().len()), g.edge_count());
        prop_assert_eq!(deg(Side::Y, g.y().len()), g.edge_count());
        let csv = g.to_transactions_csv();
        let back = BipartiteGraph::from_transactions(read_transactions(csv.as_bytes()).unwrap()).unwrap();
        prop_assert_eq!(labelled_edges(&back), labelled_edges(&g));
        let dumped = BipartiteGraph::from_dump(&g.to_dump()).unwrap();
        let edges: BTreeSet<_> = labelled_edges(&dumped);
        prop_assert_eq!(edges, labelled_edges(&g));
    }
}

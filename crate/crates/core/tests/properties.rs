mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::Word;
use subconj::config::Limits;
use subconj::covering::{close_nontrivial_faces, fold_subgroup};
use subconj::gluing::glue_stars;
use subconj::gog::{path::random_closed_path, standard, GPath, GraphOfGroups};
use subconj::subgroup_graph::SubgroupGraph;
use subconj::words::{Alphabet, ReducedWord};

fn letter() -> impl Strategy<Value = i8> {
    prop_oneof![Just(1i8), Just(-1), Just(2), Just(-2)]
}

fn word(max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(letter(), 0..=max).prop_map(|w| common::reduce(&w))
}

fn gens(n: usize, max: usize) -> impl Strategy<Value = Vec<Word>> {
    prop::collection::vec(word(max), 1..=n)
}

fn lib(ws: &[Word]) -> Vec<ReducedWord> {
    ws.iter().map(|w| common::to_library(w)).collect()
}

fn ab() -> Alphabet {
    Alphabet::new(2).unwrap()
}

fn graphs() -> Vec<GraphOfGroups> {
    vec![standard::psl2z(), standard::c4_c2_c6(), standard::s3_c2_s3(0), standard::s3_c2_s3(1), standard::three_vertex_path()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn free_membership_matches_oracle(h in gens(3, 5), w in word(8)) {
        let g = SubgroupGraph::fold_generators(ab(), &lib(&h)).unwrap();
        let oracle = common::Automaton::new(&h);
        prop_assert_eq!(g.contains(&common::to_library(&w)), oracle.accepts(&w));
    }

    #[test]
    fn free_conj_into_matches_brute_force(h1 in gens(2, 4), h2 in gens(2, 3)) {
        let g1 = SubgroupGraph::fold_generators(ab(), &lib(&h1)).unwrap();
        let g2 = SubgroupGraph::fold_generators(ab(), &lib(&h2)).unwrap();
        let a1 = common::Automaton::new(&h1);
        match SubgroupGraph::conj_into(&g2, &g1) {
            Some(g) => {
                let g: Word = g.letters().iter().map(|&l| l as i8).collect();
                for h in &h2 {
                    prop_assert!(a1.accepts(&common::conjugate(h, &g)));
                }
            }
            None => prop_assert!(common::brute_conj_into(&h1, &h2, 6).is_none()),
        }
    }

    #[test]
    fn cyclic_reduction_recomposes(w in word(10)) {
        let w = common::to_library(&w);
        let (core, c) = w.cyclic_reduce();
        prop_assert!(core.len() <= w.len());
        prop_assert!(core.is_cyclically_reduced());
        prop_assert_eq!(c.concat(&core).concat(&c.inverse()), w);
    }

    #[test]
    fn gog_reduction_is_confluent(which in 0usize..5, edges in 0usize..14, seed: u64) {
        let gog = &graphs()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_closed_path(gog, edges, &mut rng);
        let nf = p.normal_form(gog);
        prop_assert_eq!(p.reduce_random_order(gog, &mut rng).normal_form(gog), nf.clone());
        prop_assert_eq!(nf.normal_form(gog), nf.clone());
        prop_assert!(p.equivalent(gog, &nf));
        let q = p.concat(gog, &p.inverse(gog)).unwrap();
        prop_assert!(q.is_trivial(gog));
    }

    #[test]
    fn folded_generators_lift_to_loops(which in 0usize..5, seeds in prop::collection::vec(any::<u64>(), 1..4), len in 0usize..6) {
        let gog = &graphs()[which];
        let gens: Vec<GPath> = seeds.iter().map(|&s| random_closed_path(gog, len, &mut ChaCha8Rng::seed_from_u64(s))).collect();
        let pre = fold_subgroup(gog, &gens).unwrap();
        let real = pre.realize(gog).unwrap();
        let base = real.base_sheet();
        for h in &gens {
            let l = real.lift(base, &h.reduce(gog)).expect("generator lifts");
            prop_assert_eq!(l.end, base);
        }
        // A product of generators is a member too.
        let prod = gens.iter().skip(1).fold(gens[0].clone(), |acc, h| acc.concat(gog, h).unwrap());
        let l = real.lift(base, &prod.reduce(gog)).expect("product lifts");
        prop_assert_eq!(l.end, base);
    }

    #[test]
    fn folding_is_idempotent(which in 0usize..5, seeds in prop::collection::vec(any::<u64>(), 1..4), len in 0usize..6) {
        let gog = &graphs()[which];
        let gens: Vec<GPath> = seeds.iter().map(|&s| random_closed_path(gog, len, &mut ChaCha8Rng::seed_from_u64(s))).collect();
        let once = fold_subgroup(gog, &gens).unwrap();
        let mut doubled = gens.clone();
        doubled.extend(gens.iter().map(|h| h.inverse(gog)));
        doubled.extend(gens.iter().cloned());
        prop_assert_eq!(fold_subgroup(gog, &doubled).unwrap(), once.clone());
        let reduced: Vec<GPath> = gens.iter().map(|h| h.normal_form(gog)).collect();
        prop_assert_eq!(fold_subgroup(gog, &reduced).unwrap(), once);
    }

    #[test]
    fn closing_faces_keeps_membership(seeds in prop::collection::vec(any::<u64>(), 1..3), len in 0usize..5) {
        let gog = standard::s3_c2_s3(0);
        let gens: Vec<GPath> = seeds.iter().map(|&s| random_closed_path(&gog, len, &mut ChaCha8Rng::seed_from_u64(s))).collect();
        let pre = fold_subgroup(&gog, &gens).unwrap();
        let closed = close_nontrivial_faces(&gog, &pre, &Limits::default()).unwrap();
        let real = closed.realize(&gog).unwrap();
        prop_assert!(real.free_handles().iter().all(|h| h.face.is_trivial()));
        for h in &gens {
            prop_assert_eq!(real.lift(real.base_sheet(), &h.reduce(&gog)).map(|l| l.end), Some(real.base_sheet()));
        }
    }

    #[test]
    fn star_gluings_validate(r in 1usize..6, s in 1usize..6, t in 1usize..9, seed: u64) {
        let g = glue_stars(r, s, t, seed, &Limits::default()).unwrap();
        prop_assert_eq!(g.validate(), Ok(()));
        prop_assert_eq!(glue_stars(r, s, t, seed, &Limits::default()).unwrap(), g);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn vf_decision_matches_brute_force(which in 0usize..2, seed: u64, edges in 1usize..5) {
        use subconj::vf::{verify_vf_certificate, vf_conj_into_decide, VfDecision, VfOptions};
        let gog = [standard::psl2z(), standard::s3_c2_s3(0)][which].clone();
        // H1 is the whole base vertex group.
        let order = gog.vertex_group(0).order();
        let h1: Vec<GPath> = (1..order).map(|x| GPath::vertex_element(&gog, 0, x).unwrap()).collect();
        let h1_elements: Vec<usize> = (0..order).collect();
        let h2 = vec![random_closed_path(&gog, 2 * edges, &mut ChaCha8Rng::seed_from_u64(seed)).reduce(&gog)];
        prop_assume!(!h2[0].is_trivial(&gog));
        let limits = Limits::default();
        match vf_conj_into_decide(&gog, &h1, &h2, seed, VfOptions::default(), &limits) {
            Ok(VfDecision::ConjInto { conjugator }) => {
                let g = GPath::parse(&conjugator, &gog).unwrap();
                let c = g.inverse(&gog).concat(&gog, &h2[0]).unwrap().concat(&gog, &g).unwrap().reduce(&gog);
                prop_assert!(c.edges().is_empty() && h1_elements.contains(&c.elements()[0]));
            }
            Ok(VfDecision::NotConjInto { certificate }) => {
                prop_assert_eq!(verify_vf_certificate(&certificate), Ok(()));
                prop_assert!(common::brute_conj_into_vertex_subgroup(&gog, &h1_elements, &h2, 4).is_none());
            }
            // Long H2 generators can need star gluings beyond the slot cap.
            Err(subconj::error::Error::Resource(_)) => {}
            Err(e) => prop_assert!(false, "{}", e),
        }
    }
}

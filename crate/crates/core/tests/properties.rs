use std::collections::BTreeMap;

use kromatic::basis::{
    convert_classical, expand_filtered, expand_in, generator, generator_any, hall_inner,
};
use kromatic::graph::{
    clan_graph, delcon_children, elements, graphs_on, is_claw_free, is_isomorphic,
    stable_set_covers, total_stability, Graph, WeightedGraph,
};
use kromatic::kromatic::{
    kromatic, kromatic_covers, kromatic_delcon, kromatic_delcon_with, kromatic_direct, realize,
    DelconOptions, Engine,
};
use kromatic::ktheory::{dual_groth_s, groth_s};
use kromatic::poset::{posets_on, Poset};
use kromatic::series::coeff;
use kromatic::{BasisId, Coeff, Partition, TruncatedSeries};
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const CLASSICAL: [BasisId; 6] = [
    BasisId::Monomial,
    BasisId::AugmentedMonomial,
    BasisId::Elementary,
    BasisId::Homogeneous,
    BasisId::PowerSum,
    BasisId::Schur,
];

fn weighted_graph(max_n: usize, max_w: u32) -> impl Strategy<Value = WeightedGraph> {
    (1..=max_n).prop_flat_map(move |n| {
        let pairs = n * (n - 1) / 2;
        (
            proptest::collection::vec(any::<bool>(), pairs),
            proptest::collection::vec(1..=max_w, n),
        )
            .prop_map(move |(bits, weights)| {
                let mut g = Graph::empty(n).unwrap();
                let mut k = 0;
                for a in 0..n {
                    for b in a + 1..n {
                        if bits[k] {
                            g.insert_edge(a, b).unwrap();
                        }
                        k += 1;
                    }
                }
                WeightedGraph::new(g, weights).unwrap()
            })
    })
}

fn random_series(rng: &mut StdRng, lo: usize, hi: usize, cap: usize) -> TruncatedSeries {
    let mut terms = Vec::new();
    for d in lo..=hi {
        for l in Partition::all(d) {
            if rng.gen_bool(0.6) {
                let num: i64 = rng.gen_range(-5..=5);
                let den: i64 = rng.gen_range(1..=3);
                terms.push((l, Coeff::new(num.into(), den.into())));
            }
        }
    }
    TruncatedSeries::from_terms(cap, false, terms)
}

fn unit_graphs_up_to_four() -> Vec<WeightedGraph> {
    (1..=4)
        .flat_map(|n| graphs_on(n).unwrap())
        .map(WeightedGraph::unit)
        .collect()
}

#[test]
fn engines_agree_on_all_small_graphs() {
    let graphs = unit_graphs_up_to_four();
    assert_eq!(graphs.len(), 1 + 2 + 4 + 11);
    for g in graphs {
        let cap = g.n() + 2;
        let direct = kromatic_direct(&g, cap);
        assert_eq!(realize(&kromatic_covers(&g).unwrap(), cap), direct, "{g:?}");
        assert_eq!(realize(&kromatic_delcon(&g).unwrap(), cap), direct, "{g:?}");
    }
}

#[test]
fn delcon_identity_on_every_nonedge_up_to_five() {
    for n in 1..=5 {
        for graph in graphs_on(n).unwrap() {
            let g = WeightedGraph::unit(graph);
            let cap = g.total_weight() + 2;
            let whole = kromatic(&g, Engine::Covers, cap).unwrap();
            let ts = total_stability(g.graph());
            for (v, w) in g.graph().nonedges() {
                let kids = delcon_children(&g, v, w).unwrap();
                let mut sum = TruncatedSeries::zero(cap, false);
                for kid in kids.all() {
                    assert!(total_stability(kid.graph()) < ts, "{g:?} {v} {w}");
                    sum = sum.add(&kromatic(kid, Engine::Covers, cap).unwrap());
                }
                assert_eq!(sum, whole, "{g:?} {v} {w}");
            }
        }
    }
}

#[test]
fn delcon_rejects_edges() {
    let g = WeightedGraph::unit(Graph::path(3).unwrap());
    assert!(delcon_children(&g, 0, 1).is_err());
}

#[test]
fn claw_cover_count() {
    let claw = WeightedGraph::unit(Graph::star(4).unwrap());
    let covers = stable_set_covers(claw.graph());
    assert_eq!(covers.len(), 109);
    for c in &covers {
        assert_eq!(
            c.sets().iter().fold(0, |a, s| a | s),
            claw.graph().vertices()
        );
        assert!(c.sets().iter().all(|&s| claw.graph().is_stable(s)));
    }
}

#[test]
fn poset_claw_correspondence() {
    for n in 0..=5 {
        for p in posets_on(n).unwrap() {
            assert_eq!(
                p.is_31_free(),
                is_claw_free(&p.incomparability_graph()),
                "{p:?}"
            );
        }
    }
}

#[test]
fn poset_sum_joins_incomparability_graphs() {
    let small: Vec<Poset> = (1..=3).flat_map(|n| posets_on(n).unwrap()).collect();
    for p in &small {
        for q in &small {
            if p.n() + q.n() > 4 {
                continue;
            }
            let g = p.sum(q).incomparability_graph();
            let gp = p.incomparability_graph();
            let gq = q.incomparability_graph();
            for a in 0..g.n() {
                for b in a + 1..g.n() {
                    let expected = match (a < p.n(), b < p.n()) {
                        (true, true) => gp.has_edge(a, b),
                        (false, false) => gq.has_edge(a - p.n(), b - p.n()),
                        _ => true,
                    };
                    assert_eq!(g.has_edge(a, b), expected);
                }
            }
        }
    }
}

#[test]
fn groth_duality_up_to_five() {
    let parts: Vec<Partition> = (0..=5).flat_map(Partition::all).collect();
    for l in &parts {
        for mu in &parts {
            let cap = l.size().max(mu.size());
            let v = hall_inner(&groth_s(l, cap), &dual_groth_s(mu)).unwrap();
            let expected = if l == mu { coeff(1) } else { coeff(0) };
            assert_eq!(v, expected, "{l} {mu}");
        }
    }
}

#[test]
fn omega_p_signs_on_small_graphs() {
    for g in unit_graphs_up_to_four() {
        let cap = g.n() + 2;
        let x = kromatic(&g, Engine::Covers, cap).unwrap();
        for (l, c) in convert_classical(&x, BasisId::PowerSum).unwrap() {
            let signed = if (l.size() - l.len()) % 2 == 0 { c } else { -c };
            assert!(!signed.is_negative(), "{g:?} {l}");
        }
    }
}

#[test]
fn classical_round_trips() {
    let mut rng = StdRng::seed_from_u64(7);
    for d in 0..=6 {
        let f = random_series(&mut rng, d, d, d);
        for b in CLASSICAL {
            let c = convert_classical(&f, b).unwrap();
            let mut back = TruncatedSeries::zero(d, false);
            for (l, x) in &c {
                back = back.add_scaled(&generator(b, l, d).unwrap(), x);
            }
            assert_eq!(back.terms(), f.terms(), "{b} {d}");
        }
    }
}

#[test]
fn filtered_expansion_recovers_combinations() {
    let mut rng = StdRng::seed_from_u64(11);
    let cap = 4;
    for basis in [
        BasisId::Grothendieck,
        BasisId::KMonomial,
        BasisId::KElementaryTableau,
        BasisId::KElementaryGraph,
        BasisId::KPower,
    ] {
        let mut want = BTreeMap::new();
        let mut f = TruncatedSeries::zero(cap, false);
        for l in Partition::up_to(cap).into_iter().skip(1) {
            if rng.gen_bool(0.5) {
                let c = coeff(rng.gen_range(-4..=4));
                if !c.is_zero() {
                    f = f.add_scaled(&generator_any(basis, &l, cap).unwrap(), &c);
                    want.insert(l, c);
                }
            }
        }
        assert_eq!(expand_in(&f, basis, cap).unwrap(), want, "{basis}");
        let by_hand = expand_filtered(&f, &|l, d| generator_any(basis, l, d), cap).unwrap();
        assert_eq!(by_hand, want, "{basis}");
    }
}

#[test]
fn lowest_layer_is_chromatic() {
    for g in unit_graphs_up_to_four() {
        let x = kromatic(&g, Engine::Direct, g.n() + 2).unwrap();
        assert_eq!(
            x.degree_part(g.n()).terms(),
            kromatic::kromatic::chromatic_sym(&g, g.n()).terms()
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn engines_agree_on_random_weighted_graphs(g in weighted_graph(4, 2)) {
        let cap = g.total_weight() + 2;
        let direct = kromatic_direct(&g, cap);
        prop_assert_eq!(&realize(&kromatic_covers(&g).unwrap(), cap), &direct);
        prop_assert_eq!(&realize(&kromatic_delcon(&g).unwrap(), cap), &direct);
        let lowest = direct.degree_part(g.total_weight());
        let chromatic = kromatic::kromatic::chromatic_sym(&g, cap).degree_part(g.total_weight());
        prop_assert_eq!(lowest.terms(), chromatic.terms());
    }

    #[test]
    fn delcon_children_lower_total_stability(g in weighted_graph(6, 2)) {
        let ts = total_stability(g.graph());
        for (v, w) in g.graph().nonedges() {
            let kids = delcon_children(&g, v, w).unwrap();
            for kid in kids.all() {
                prop_assert!(total_stability(kid.graph()) < ts);
            }
            prop_assert_eq!(kids.contraction.total_weight(), g.total_weight());
            prop_assert_eq!(kids.star.total_weight(), g.total_weight() + g.weights()[v] as usize + g.weights()[w] as usize);
        }
    }

    #[test]
    fn delcon_does_not_depend_on_nonedge_choice(g in weighted_graph(5, 2), seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let mut pick = |h: &WeightedGraph| {
            let ne = h.graph().nonedges();
            ne[rng.gen_range(0..ne.len())]
        };
        let mut opts = DelconOptions { memo: false, choose: Some(&mut pick) };
        let random = kromatic_delcon_with(&g, &mut opts).unwrap();
        prop_assert_eq!(random, kromatic_covers(&g).unwrap());
    }

    #[test]
    fn unit_clan_graph_is_the_graph(g in weighted_graph(6, 1)) {
        let clan = clan_graph(g.graph(), &vec![1; g.n()]).unwrap();
        prop_assert!(is_isomorphic(&WeightedGraph::unit(clan), &g));
    }

    #[test]
    fn relabeling_keeps_the_expansion(g in weighted_graph(5, 2), seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let mut perm: Vec<usize> = (0..g.n()).collect();
        for i in (1..perm.len()).rev() {
            perm.swap(i, rng.gen_range(0..=i));
        }
        let mut weights = vec![0; g.n()];
        for (v, &p) in perm.iter().enumerate() {
            weights[p] = g.weights()[v];
        }
        let h = WeightedGraph::new(g.graph().relabel(&perm), weights).unwrap();
        prop_assert!(is_isomorphic(&g, &h));
        prop_assert_eq!(kromatic_covers(&g).unwrap(), kromatic_covers(&h).unwrap());
    }

    #[test]
    fn stable_sets_of_covers(g in weighted_graph(4, 1)) {
        for c in stable_set_covers(g.graph()) {
            let mut union = 0u64;
            for &s in c.sets() {
                prop_assert!(g.graph().is_stable(s));
                prop_assert!(!elements(s).is_empty());
                union |= s;
            }
            prop_assert_eq!(union, g.graph().vertices());
        }
    }

    #[test]
    fn multiply_commutes_and_associates(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let cap = 5;
        let a = random_series(&mut rng, 0, 3, cap);
        let b = random_series(&mut rng, 1, 3, cap);
        let c = random_series(&mut rng, 0, 2, cap);
        prop_assert_eq!(a.multiply(&b), b.multiply(&a));
        prop_assert_eq!(a.multiply(&b).multiply(&c), a.multiply(&b.multiply(&c)));
    }

    #[test]
    fn products_of_generators_match(a in 1usize..=3, b in 1usize..=3) {
        for basis in [BasisId::Elementary, BasisId::Homogeneous, BasisId::PowerSum] {
            let d = a + b;
            let lhs = generator(basis, &Partition::from_parts(vec![a]), d)
                .unwrap()
                .multiply(&generator(basis, &Partition::from_parts(vec![b]), d).unwrap())
                .truncate(d);
            let rhs = generator(basis, &Partition::from_parts(vec![a, b]), d).unwrap();
            prop_assert_eq!(lhs.terms(), rhs.terms());
        }
    }
}

use kromatic::basis::{generator, hall_inner};
use kromatic::gasharov::{check_involution, enumerate_p_tableaux, verify_theorem};
use kromatic::graph::WeightedGraph;
use kromatic::kromatic::chromatic_sym;
use kromatic::poset::{posets_on, Poset};
use kromatic::{part, BasisId, Coeff, Partition};
use num_bigint::BigInt;

fn free_posets(max: usize) -> Vec<Poset> {
    (1..=max)
        .flat_map(|n| posets_on(n).unwrap())
        .filter(Poset::is_31_free)
        .collect()
}

fn shapes(max: usize) -> Vec<Partition> {
    (1..=max).flat_map(Partition::all).collect()
}

#[test]
fn theorem_holds_for_small_free_posets() {
    let posets = free_posets(4);
    assert_eq!(posets.len(), 1 + 2 + 5 + 15);
    for p in &posets {
        for l in shapes(5) {
            let r = verify_theorem(p, &l).unwrap();
            assert!(r.all_equal, "{p:?} {l}: {r:?}");
            assert!(r.signed_sum >= BigInt::from(0), "{p:?} {l}");
        }
    }
}

#[test]
fn anchor_counts() {
    let p21 = Poset::from_spec("2+1").unwrap();
    assert_eq!(
        enumerate_p_tableaux(&p21, &part![1, 1, 1]).unwrap().len(),
        4
    );
    assert_eq!(
        enumerate_p_tableaux(&Poset::chain(1), &part![1, 1])
            .unwrap()
            .len(),
        2
    );
    let r = verify_theorem(&Poset::antichain(2), &part![1, 1]).unwrap();
    assert!(r.all_equal);
    assert_eq!(r.tableau_count, 2);
}

#[test]
fn lowest_layer_counts_are_schur_coefficients() {
    for p in free_posets(4) {
        let g = WeightedGraph::unit(p.incomparability_graph());
        let x = chromatic_sym(&g, p.n());
        for l in Partition::all(p.n()) {
            let s = generator(BasisId::Schur, &l, p.n()).unwrap();
            let schur = hall_inner(&s, &x).unwrap();
            let count = enumerate_p_tableaux(&p, &l).unwrap().len();
            assert_eq!(Coeff::from_integer(BigInt::from(count)), schur, "{p:?} {l}");
        }
    }
}

#[test]
fn involution_is_exhaustively_sound() {
    let posets: Vec<Poset> = (1..=3).flat_map(|n| posets_on(n).unwrap()).collect();
    let mut flawed = 0;
    for p in &posets {
        for l in shapes(4) {
            let r = check_involution(p, &l).unwrap();
            assert!(r.ok, "{p:?} {l}: {r:?}");
            flawed += r.flawed;
        }
    }
    assert!(flawed > 0);
}

#[test]
fn three_plus_one_is_outside_the_theorem() {
    let r = verify_theorem(&Poset::from_spec("3+1").unwrap(), &part![1, 1]).unwrap();
    assert!(!r.free_31);
}

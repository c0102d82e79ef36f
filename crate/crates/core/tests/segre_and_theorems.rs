use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use scroll_core::catalog::{eflat, esharp, estar, random_bundle, twice};
use scroll_core::ellcurve::{c7, pic0_class};
use scroll_core::segrethm::{
    hirschowitz_bound, main_a_verify, nilpotent_rank1_exists, quot_tangent_obstruction, segre1, segre1_bundle,
    SegreMethod,
};

#[test]
fn brute_force_respects_the_hirschowitz_bound() {
    let c = c7();
    let f = c.field();
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let mut attained = 0;
    for _ in 0..50 {
        let spec = random_bundle(&c, &mut rng, -4, 0);
        let s = segre1_bundle(&c, &spec.bundle(f)).unwrap();
        let (bound, _) = hirschowitz_bound(spec.rank() as i64, 1, spec.degree(), 1).unwrap();
        assert!(s.s1 <= bound, "{spec:?}: s1 {} > {bound}", s.s1);
        attained += usize::from(s.s1 == bound);
    }
    assert!(attained > 0);
}

#[test]
fn formula_matches_brute_force_on_split_bundles() {
    let c = c7();
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    let mut n = 0;
    while n < 20 {
        let spec = random_bundle(&c, &mut rng, -4, 0);
        if !spec.is_decomposable() {
            continue;
        }
        let a = segre1(&c, &spec, SegreMethod::Formula).unwrap();
        let b = segre1(&c, &spec, SegreMethod::Bruteforce).unwrap();
        assert_eq!(a.s1, b.s1, "{spec:?}");
        n += 1;
    }
}

#[test]
fn degree_zero_twists_keep_s1() {
    let c = c7();
    let f = c.field();
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    for _ in 0..20 {
        let spec = random_bundle(&c, &mut rng, -3, 0);
        let z = pic0_class(&c.points()[rng.gen_range(0..9)]);
        let a = segre1_bundle(&c, &spec.bundle(f)).unwrap();
        let b = segre1_bundle(&c, &spec.twist(&z).bundle(f)).unwrap();
        assert_eq!(a.s1, b.s1, "{spec:?} twisted by {z:?}");
    }
}

#[test]
fn main_a_inequality_is_a_down_set() {
    let c = c7();
    for spec in [estar(), eflat(), esharp()] {
        let rep = main_a_verify(&c, &spec, &[0, 1, 2, 3], 1).unwrap();
        let holds: Vec<bool> = rep.clauses.iter().map(|cl| cl.id.ends_with(": (1)=>(2)")).collect();
        assert!(holds.windows(2).all(|w| w[0] || !w[1]), "{holds:?}");
        assert!(rep.all_pass());
    }
}

#[test]
fn quot_is_unobstructed_without_nilpotents() {
    let c = c7();
    let f = c.field();
    let mut rng = ChaCha8Rng::seed_from_u64(34);
    let mut specs = vec![estar(), eflat(), twice(), esharp()];
    while specs.len() < 12 {
        let s = random_bundle(&c, &mut rng, -4, -1);
        if s.rank() == 2 {
            specs.push(s);
        }
    }
    let mut obstructed = 0;
    for spec in specs {
        let e = spec.bundle(f);
        let nil = nilpotent_rank1_exists(&c, &e).unwrap();
        let seg = segre1_bundle(&c, &e).unwrap();
        let h1s: Vec<i64> = seg.witness_classes.iter().map(|n| quot_tangent_obstruction(&c, &e, n).unwrap().1).collect();
        if !nil.exists {
            assert!(h1s.iter().all(|&h| h == 0), "{spec:?}: {h1s:?}");
        }
        obstructed += usize::from(h1s.iter().any(|&h| h > 0));
    }
    assert!(obstructed > 0);
}


use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use scroll_core::bundlesec::{chi_h1, h0_dim, BundleSpec};
use scroll_core::catalog::random_bundle;
use scroll_core::ellcurve::{c7, pic0_class, Divisor, Place};
use scroll_core::scrolljet::projective_points;

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn h0_is_invariant_under_linear_equivalence() {
    let c = c7();
    let f = c.field();
    let pts = c.points();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..50 {
        let spec = random_bundle(&c, &mut rng, -3, 0);
        // (T) ~ (T1) + (T - T1) - (O)
        let i = rng.gen_range(0..spec.rank());
        let t1 = &pts[rng.gen_range(0..pts.len())];
        let (t, _) = scroll_core::ellcurve::divisor_reduce(&c, &spec.factors[i]);
        let mut other = spec.clone();
        let shift = spec.factors[i].degree() - 1;
        other.factors[i] = Divisor::from_pairs([(t1.clone(), 1), (c.sub(&t, t1), 1), (Place::Infinity, shift - 1)]);
        let twist = pic0_class(&pts[rng.gen_range(0..pts.len())]).plus_point(&Place::Infinity, rng.gen_range(0..4));
        assert_eq!(h0_dim(&c, &spec.bundle(f), &twist), h0_dim(&c, &other.bundle(f), &twist), "{spec:?}");
    }
}

#[test]
fn wedge_degrees_and_ranks() {
    let c = c7();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..20 {
        let r = rng.gen_range(2..=4);
        let spec = BundleSpec::split(
            (0..r).map(|_| Divisor::from_pairs([(c.points()[rng.gen_range(0..9)].clone(), rng.gen_range(-3..3))])).collect(),
        );
        for n in 1..=r {
            let w = spec.wedge(n).unwrap();
            assert_eq!(w.rank(), binom(r, n));
            assert_eq!(w.degree(), binom(r - 1, n - 1) as i64 * spec.degree());
        }
    }
}

#[test]
fn elementary_transform_steps() {
    let c = c7();
    let f = c.field();
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..30 {
        let spec = random_bundle(&c, &mut rng, -3, 1);
        let e = spec.bundle(f);
        let p = c.points()[rng.gen_range(0..9)].clone();
        let dirs = projective_points(f, e.rank());
        let v = &dirs[rng.gen_range(0..dirs.len())];
        let et = e.elementary_transform(f, &p, v).unwrap();
        assert_eq!(et.degree(), e.degree() + 1);
        let twist = Divisor::infinity(rng.gen_range(-1..4));
        let step = h0_dim(&c, &et, &twist) as i64 - h0_dim(&c, &e, &twist) as i64;
        assert!((0..=1).contains(&step), "{spec:?} {p:?} {v:?}");
    }
}

#[test]
fn serre_duality_on_split_bundles() {
    let c = c7();
    let f = c.field();
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..30 {
        let r = rng.gen_range(1..=3);
        let spec = BundleSpec::split(
            (0..r).map(|_| Divisor::from_pairs([(c.points()[rng.gen_range(0..9)].clone(), rng.gen_range(-2..3))])).collect(),
        );
        let t = pic0_class(&c.points()[rng.gen_range(0..9)]);
        let (chi, h1) = chi_h1(&c, &spec.bundle(f), &t);
        let dual = spec.dual_twist(&t.neg()).unwrap();
        assert_eq!(h1, h0_dim(&c, &dual.bundle(f), &Divisor::zero()) as i64);
        assert_eq!(chi, spec.degree());
    }
}

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use scroll_core::ellcurve::{c7, certify_in_rr, divisor_reduce, is_principal, rr_basis, Curve, Divisor, Place};
use scroll_core::exactlin::FiniteField;

fn random_divisor(c: &Curve<FiniteField>, rng: &mut ChaCha8Rng, deg: i64) -> Divisor<u32> {
    let pts = c.points();
    let mut d = Divisor::zero();
    for _ in 0..rng.gen_range(1..=4) {
        d.add_point(pts[rng.gen_range(0..pts.len())].clone(), rng.gen_range(-3..=3));
    }
    let fix = deg - d.degree();
    d.add_point(Place::Infinity, fix);
    d
}

fn check_curve(c: &Curve<FiniteField>, seed: u64, cases: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..cases {
        let deg = rng.gen_range(-5..=8);
        let d = random_divisor(c, &mut rng, deg);
        let b = rr_basis(c, &d);
        let expected = match deg {
            n if n >= 1 => n as usize,
            0 => usize::from(is_principal(c, &d)),
            _ => 0,
        };
        assert_eq!(b.len(), expected, "{d:?}");
        assert!(b.iter().all(|g| certify_in_rr(c, g, &d)), "{d:?}");
    }
}

#[test]
fn dimensions_match_genus_one_riemann_roch() {
    check_curve(&c7(), 1, 150);
    let c11 = Curve::new(FiniteField::prime(11).unwrap(), 1, 3).unwrap();
    check_curve(&c11, 2, 150);
}

#[test]
fn reduction_respects_the_group_law() {
    let c = Curve::new(FiniteField::prime(11).unwrap(), 1, 3).unwrap();
    for p in c.points() {
        for q in c.points() {
            let d = Divisor::from_pairs([(p.clone(), 1), (q.clone(), 1), (Place::Infinity, -1)]);
            assert_eq!(divisor_reduce(&c, &d), (c.add(p, q), 0));
        }
    }
}

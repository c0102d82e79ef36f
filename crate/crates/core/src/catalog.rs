//! Named test bundles on `C7: y^2 = x^3 + 2` over `F_7`, and a seeded
//! generator of random presented bundles on any finite curve.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::bundlesec::spec::{BundleSpec, Modification};
use crate::ellcurve::curve::{Curve, Place};
use crate::ellcurve::divisor::Divisor;
use crate::exactlin::field::{Field, FiniteField};
use crate::segrethm::segre::line_class;

fn p() -> Place<u32> {
    Place::Affine(3, 1)
}

fn q() -> Place<u32> {
    Place::Affine(5, 1)
}

fn r() -> Place<u32> {
    Place::Affine(0, 3)
}

fn o(m: i64) -> Divisor<u32> {
    Divisor::infinity(m)
}

fn at(pl: Place<u32>, m: i64) -> Divisor<u32> {
    Divisor::point(pl, m)
}

fn modified(factors: Vec<Divisor<u32>>, place: Place<u32>, codirection: Vec<u32>) -> BundleSpec<u32> {
    BundleSpec { factors, modifications: vec![Modification { place, codirection }] }
}

/// `O(-3O) ⊕ O(-2O - P)`: stable-looking split bundle with `s_1 = 0`.
pub fn estar() -> BundleSpec<u32> {
    BundleSpec::split(vec![o(-3), o(-2).plus_point(&p(), -1)])
}

/// `O(-O) ⊕ O(-5O)`: unstable, with a base point at `O`.
pub fn eflat() -> BundleSpec<u32> {
    BundleSpec::split(vec![o(-1), o(-5)])
}

/// `O(-3O)^{⊕2}`.
pub fn twice() -> BundleSpec<u32> {
    BundleSpec::split(vec![o(-3), o(-3)])
}

/// A modification of `O(-2O) ⊕ O(-2P)` at `(5,1)`, degree `-5` with `s_1 = 1`.
pub fn esharp() -> BundleSpec<u32> {
    modified(vec![o(-2), at(p(), -2)], q(), vec![1, 1])
}

/// Ranks 2 and 3, degrees in `[-9, -4]`, split and modified.
pub fn main_a_family() -> Vec<(&'static str, BundleSpec<u32>)> {
    vec![
        ("estar", estar()),
        ("eflat", eflat()),
        ("O(-2O)+O(-2O)", BundleSpec::split(vec![o(-2), o(-2)])),
        ("O(-2O)+O(-2O-P)", BundleSpec::split(vec![o(-2), o(-2).plus_point(&p(), -1)])),
        ("O(-4O)+O(-4O-P)", BundleSpec::split(vec![o(-4), o(-4).plus_point(&p(), -1)])),
        ("O(-3O)+O(-5O)", BundleSpec::split(vec![o(-3), o(-5)])),
        ("esharp", esharp()),
        ("mod O(-3O)+O(-3P)", modified(vec![o(-3), at(p(), -3)], q(), vec![1, 2])),
        ("mod O(-3O)+O(-2O-R)", modified(vec![o(-3), o(-2).plus_point(&r(), -1)], q(), vec![1, 3])),
        ("O(-2O)+O(-2O)+O(-2O-P)", BundleSpec::split(vec![o(-2), o(-2), o(-2).plus_point(&p(), -1)])),
        ("O(-O)+O(-2O)+O(-3O)", BundleSpec::split(vec![o(-1), o(-2), o(-3)])),
        ("O(-3O)+O(-3O)+O(-3P)", BundleSpec::split(vec![o(-3), o(-3), at(p(), -3)])),
        ("mod O(-2O)+O(-2P)+O(-2Q)", modified(vec![o(-2), at(p(), -2), at(q(), -2)], r(), vec![1, 1, 1])),
        ("mod O(-O)+O(-2O)+O(-3O-P)", modified(vec![o(-1), o(-2), o(-3).plus_point(&p(), -1)], q(), vec![1, 2, 3])),
    ]
}

/// A random bundle of rank 2 or 3: line factors `O((a-1)O + T)` with
/// `a ∈ [lo, hi]`, plus one modification with probability one half.
pub fn random_bundle<R: Rng>(c: &Curve<FiniteField>, rng: &mut R, lo: i64, hi: i64) -> BundleSpec<u32> {
    let f = c.field();
    let rank = rng.gen_range(2..=3);
    let pts = c.points();
    let factors = (0..rank).map(|_| line_class(rng.gen_range(lo..=hi), pts.choose(rng).unwrap())).collect();
    let mut mods = Vec::new();
    if rng.gen_bool(0.5) {
        let place = pts.choose(rng).unwrap().clone();
        let mut codirection: Vec<u32> = (0..rank).map(|_| f.random(rng)).collect();
        if codirection.iter().all(|a| f.is_zero(a)) {
            codirection[0] = f.one();
        }
        mods.push(Modification { place, codirection });
    }
    BundleSpec::new(f, factors, mods).expect("valid random bundle")
}

//! Inflection witnesses from invertible subsheaves `O(-(k+1)p) → M^{-1}E`.
//!
//! A section of `M^{-1}E((k+1)p)` whose normalized value at `p` is nonzero is
//! a bundle injection there, and its value is the image line. The values of
//! all sections span `U_k(p)`; its projectivization is the fiber over `p` of
//! the image of `e_k`.

use crate::bundlesec::lattice::Bundle;
use crate::bundlesec::sections::h0;
use crate::ellcurve::curve::{Curve, Place};
use crate::ellcurve::divisor::Divisor;
use crate::error::{Error, Result};
use crate::exactlin::field::Field;
use crate::exactlin::matrix::Echelon;
use crate::scrolljet::point::{projective_span, ScrollPoint};

/// `U_k(p)` as a subspace of the fiber in the frame of `E` at `p`.
pub fn witness_space<F: Field>(
    c: &Curve<F>,
    e: &Bundle<F::Elem>,
    m: &Divisor<F::Elem>,
    p: &Place<F::Elem>,
    k: usize,
) -> Echelon<F::Elem> {
    let f = c.field();
    let s = h0(c, e, &m.neg().plus_point(p, k as i64 + 1));
    let vals = s.normalized_jets(c, p, 1);
    Echelon::from_rows(f, e.rank(), vals.into_iter().map(|sec| sec.into_iter().map(|mut comp| comp.remove(0)).collect()))
}

/// Directions of `e_k(R^k_M)` over `p` rational over the curve's field.
pub fn subsheaf_witnesses<F: Field>(
    c: &Curve<F>,
    e: &Bundle<F::Elem>,
    m: &Divisor<F::Elem>,
    p: &Place<F::Elem>,
    k: usize,
) -> Result<Vec<ScrollPoint<F::Elem>>> {
    if m.degree() != 0 {
        return Err(Error::Input(format!("M must have degree 0, got {}", m.degree())));
    }
    if c.field().order().is_none() {
        return Err(Error::Unsupported("witness directions are enumerated over finite fields only".into()));
    }
    let u = witness_space(c, e, m, p, k);
    Ok(projective_span(c.field(), &u).into_iter().map(|d| ScrollPoint { place: p.clone(), direction: d }).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundlesec::spec::BundleSpec;
    use crate::ellcurve::curve::c7;

    #[test]
    fn eflat_and_estar() {
        let c = c7();
        let f = c.field();
        let flat = BundleSpec::split(vec![Divisor::infinity(-1), Divisor::infinity(-5)]).bundle(f);
        let w = subsheaf_witnesses(&c, &flat, &Divisor::zero(), &Place::Infinity, 0).unwrap();
        assert_eq!(w, vec![ScrollPoint { place: Place::Infinity, direction: vec![1, 0] }]);
        let p = Place::Affine(3, 1);
        let star = BundleSpec::split(vec![Divisor::infinity(-3), Divisor::from_pairs([(Place::Infinity, -2), (p, -1)])]).bundle(f);
        for q in c.points() {
            assert!(subsheaf_witnesses(&c, &star, &Divisor::zero(), q, 0).unwrap().is_empty());
        }
    }
}

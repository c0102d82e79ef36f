//! Osculating dimension from principal parts, independent of jets.
//!
//! With `Ẽ` the elementary transformation of `E` at `p` along the line `x`
//! and `K` trivial, `dim Osc^k(S, x) = kr - [h^0(M^{-1}Ẽ(kp)) - h^0(M^{-1}E)]`.

use crate::bundlesec::lattice::Bundle;
use crate::bundlesec::sections::h0_dim;
use crate::ellcurve::curve::Curve;
use crate::ellcurve::divisor::Divisor;
use crate::error::{Error, Result};
use crate::exactlin::field::Field;
use crate::scrolljet::point::ScrollPoint;

pub fn osc_dim_oracle<F: Field>(
    c: &Curve<F>,
    e: &Bundle<F::Elem>,
    m: &Divisor<F::Elem>,
    x: &ScrollPoint<F::Elem>,
    k: usize,
) -> Result<i64> {
    if m.degree() != 0 {
        return Err(Error::Input(format!("M must have degree 0, got {}", m.degree())));
    }
    let base = h0_dim(c, e, &m.neg());
    oracle_with_base(c, e, m, x, k, base)
}

/// The oracle with `h^0(M^{-1}E)` supplied, for scans that reuse it.
pub fn oracle_with_base<F: Field>(
    c: &Curve<F>,
    e: &Bundle<F::Elem>,
    m: &Divisor<F::Elem>,
    x: &ScrollPoint<F::Elem>,
    k: usize,
    base: usize,
) -> Result<i64> {
    let f = c.field();
    let et = e.elementary_transform(f, &x.place, &x.direction)?;
    let top = h0_dim(c, &et, &m.neg().plus_point(&x.place, k as i64));
    Ok((k * e.rank()) as i64 - (top as i64 - base as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundlesec::spec::BundleSpec;
    use crate::ellcurve::curve::{c7, Place};

    #[test]
    fn eflat_base_point() {
        let c = c7();
        let f = c.field();
        let e = BundleSpec::split(vec![Divisor::infinity(-1), Divisor::infinity(-5)]).bundle(f);
        let x = ScrollPoint::new(f, Place::Infinity, vec![1, 0], 2).unwrap();
        assert_eq!(osc_dim_oracle(&c, &e, &Divisor::zero(), &x, 0).unwrap(), -1);
        let y = ScrollPoint::new(f, Place::Infinity, vec![1, 1], 2).unwrap();
        assert_eq!(osc_dim_oracle(&c, &e, &Divisor::zero(), &y, 0).unwrap(), 0);
    }
}

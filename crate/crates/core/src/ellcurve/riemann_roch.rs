//! Riemann–Roch spaces `L(D) = { f : div f + D >= 0 }` on a genus-one curve.

use crate::ellcurve::curve::{Curve, Place};
use crate::ellcurve::divisor::{reduce_with_function, Divisor};
use crate::ellcurve::expansion::ord_at;
use crate::ellcurve::function::FunctionRep;
use crate::exactlin::field::Field;
use crate::exactlin::poly::Poly;

/// `L(n(O))`: `x^i` for `2i <= n` and `y x^j` for `2j + 3 <= n`, ordered by
/// pole order.
pub fn rr_basis_infinity<F: Field>(f: &F, n: i64) -> Vec<FunctionRep<F::Elem>> {
    if n < 0 {
        return Vec::new();
    }
    let mut out = vec![FunctionRep::one(f)];
    for k in 2..=n {
        let mut c = vec![f.zero(); (k / 2 + 1) as usize];
        if k % 2 == 0 {
            c[(k / 2) as usize] = f.one();
            out.push(FunctionRep::from_x_poly(f, Poly::from_coeffs(f, c)));
        } else {
            let j = ((k - 3) / 2) as usize;
            let mut c = vec![f.zero(); j + 1];
            c[j] = f.one();
            out.push(FunctionRep::new(f, Poly::zero(), Poly::from_coeffs(f, c), Poly::one(f)));
        }
    }
    out
}

/// Basis of `L(D)`, of dimension `deg D` for positive degree, 1 or 0 in
/// degree zero (principal or not) and 0 in negative degree.
pub fn rr_basis<F: Field>(c: &Curve<F>, d: &Divisor<F::Elem>) -> Vec<FunctionRep<F::Elem>> {
    let f = c.field();
    let deg = d.degree();
    if deg < 0 {
        return Vec::new();
    }
    // D = D' + div h with D' = (R) + m(O), so L(D) = h^{-1} L(D').
    let red = reduce_with_function(c, d);
    let m = red.shift;
    let base: Vec<FunctionRep<F::Elem>> = match &red.point {
        Place::Infinity => rr_basis_infinity(f, m + 1),
        Place::Affine(..) if m < 0 => Vec::new(),
        Place::Affine(..) if m == 0 => vec![FunctionRep::one(f)],
        Place::Affine(xr, yr) => {
            let mut b = rr_basis_infinity(f, m);
            // (y + y_R)/(x - x_R) has simple poles at R and O only.
            b.push(FunctionRep::new(
                f,
                Poly::constant(f, yr.clone()),
                Poly::one(f),
                Poly::linear_root(f, xr),
            ));
            b
        }
    };
    let hinv = red.h.inv(c).expect("reduction function is nonzero");
    base.into_iter().map(|b| b.mul(c, &hinv)).collect()
}

/// Certificate that `div g + D >= 0` over a finite field.
///
/// Checks every rational place of `supp D`, `O`, and the zeros of `g`'s
/// denominator, and requires those zeros to be rational, so that no pole of
/// `g` can sit at a place the check does not visit.
pub fn certify_in_rr<F: Field>(c: &Curve<F>, g: &FunctionRep<F::Elem>, d: &Divisor<F::Elem>) -> bool {
    if g.is_zero() {
        return true;
    }
    let f = c.field();
    let mut rest = g.d.clone();
    let mut places: Vec<Place<F::Elem>> = d.support().cloned().collect();
    places.push(Place::Infinity);
    for x in f.elements() {
        if rest.degree() == Some(0) {
            break;
        }
        let mult = rest.root_multiplicity(f, &x);
        if mult == 0 {
            continue;
        }
        for _ in 0..mult {
            rest = rest.divrem(f, &Poly::linear_root(f, &x)).0;
        }
        let rhs = c.rhs().eval(f, &x);
        let Some(y) = c.sqrt(&rhs) else { return false };
        places.push(Place::Affine(x.clone(), y.clone()));
        places.push(Place::Affine(x, f.neg(&y)));
    }
    if rest.degree() != Some(0) {
        return false;
    }
    places.sort();
    places.dedup();
    places.iter().all(|p| ord_at(c, g, p) + d.get(p) >= 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ellcurve::curve::c7;

    #[test]
    fn small_cases() {
        let c = c7();
        let f = c.field();
        assert_eq!(rr_basis(&c, &Divisor::infinity(2)), vec![FunctionRep::one(f), FunctionRep::x(f)]);
        let p = Place::Affine(3, 1);
        assert_eq!(rr_basis(&c, &Divisor::point(p.clone(), 1)).len(), 1);
        let d = Divisor::from_pairs([(Place::Infinity, 1), (p, -1)]);
        assert!(rr_basis(&c, &d).is_empty());
    }

    #[test]
    fn bases_are_certified() {
        let c = c7();
        let pts = c.points().to_vec();
        let cases = [
            vec![(1usize, 2i64), (3, -1), (0, 1)],
            vec![(4, 3), (5, -2)],
            vec![(2, 1), (6, 1), (0, -1)],
            vec![(7, 4), (8, -3), (3, 2)],
        ];
        for case in cases {
            let d = Divisor::from_pairs(case.iter().map(|&(i, m)| (pts[i].clone(), m)));
            let b = rr_basis(&c, &d);
            assert_eq!(b.len() as i64, d.degree().max(0), "{d:?}");
            for g in &b {
                assert!(certify_in_rr(&c, g, &d));
            }
        }
    }
}

//! Expansions of functions at a place in its canonical uniformiser.
//!
//! At an affine point with `y0 != 0` the uniformiser is `t = x - x0`; at a
//! 2-torsion point it is `t = y`; at `O` it is `t = x/y`.

use crate::ellcurve::curve::{Curve, Place};
use crate::ellcurve::function::FunctionRep;
use crate::error::{Error, Result};
use crate::exactlin::field::Field;
use crate::exactlin::laurent::{LaurentSeries, EXACT};
use crate::exactlin::poly::Poly;

type Series<F> = LaurentSeries<<F as Field>::Elem>;

/// `x(t)` and `y(t)` at `p`, each known to `n` terms past its leading term.
pub fn local_xy<F: Field>(c: &Curve<F>, p: &Place<F::Elem>, n: usize) -> (Series<F>, Series<F>) {
    let f = c.field();
    match p {
        Place::Affine(x0, y0) if !f.is_zero(y0) => {
            let x = LaurentSeries::new(f, 0, vec![x0.clone(), f.one()], EXACT);
            // y^2 = G(t) with G(t) = F(x0 + t); solve for y with y(0) = y0.
            let g = c.rhs().shift(f, x0);
            let two_y0_inv = f.inv(&f.add(y0, y0)).unwrap();
            let mut b: Vec<F::Elem> = vec![y0.clone()];
            for k in 1..n {
                let mut s = g.coeff(f, k);
                for i in 1..k {
                    s = f.sub(&s, &f.mul(&b[i], &b[k - i]));
                }
                b.push(f.mul(&s, &two_y0_inv));
            }
            (x, LaurentSeries::new(f, 0, b, n as i64))
        }
        Place::Affine(x0, _) => {
            // t = y, x = x0 + u with F'(x0) u + 3 x0 u^2 + u^3 = t^2.
            let y = LaurentSeries::monomial(f, f.one(), 1);
            let d1 = c.rhs().derivative(f).eval(f, x0);
            let d1_inv = f.inv(&d1).expect("nonsingular curve");
            let three_x0 = f.mul(&f.from_int(3), x0);
            let prec = n as i64 + 2;
            let t2 = LaurentSeries::new(f, 2, vec![f.one()], prec);
            let mut u = t2.scale(f, &d1_inv);
            for _ in 0..n {
                let u2 = u.mul(f, &u);
                let u3 = u2.mul(f, &u);
                let rest = t2.sub(f, &u2.scale(f, &three_x0)).sub(f, &u3);
                u = rest.scale(f, &d1_inv).truncate(prec);
            }
            let x = u.add(f, &LaurentSeries::exact_constant(f, x0.clone()));
            (x, y)
        }
        Place::Infinity => {
            // s = x/y, u = 1/y: u = s^3 + a4 s u^2 + a6 u^3.
            let prec = n as i64 + 3;
            let s3 = LaurentSeries::new(f, 3, vec![f.one()], prec);
            let s = LaurentSeries::monomial(f, f.one(), 1);
            let a4s = s.scale(f, c.a4());
            let mut u = s3.clone();
            for _ in 0..n {
                let u2 = u.mul(f, &u);
                let u3 = u2.mul(f, &u);
                u = s3.add(f, &a4s.mul(f, &u2)).add(f, &u3.scale(f, c.a6())).truncate(prec);
            }
            let y = u.invert(f).expect("u has leading term s^3");
            let x = s.mul(f, &y);
            (x, y)
        }
    }
}

fn eval_poly_series<F: Field>(f: &F, p: &Poly<F::Elem>, x: &Series<F>) -> Series<F> {
    let mut acc = LaurentSeries::exact_zero();
    for c in p.coeffs.iter().rev() {
        acc = acc.mul(f, x).add(f, &LaurentSeries::exact_constant(f, c.clone()));
    }
    acc
}

/// Expansion of `g` at `p` with working depth `n`; may be zero within its
/// precision, and its precision may exceed or fall short of any target.
fn expand_raw<F: Field>(c: &Curve<F>, g: &FunctionRep<F::Elem>, p: &Place<F::Elem>, n: usize) -> Series<F> {
    let f = c.field();
    let (x, y) = local_xy(c, p, n);
    let num = eval_poly_series(f, &g.n0, &x).add(f, &y.mul(f, &eval_poly_series(f, &g.n1, &x)));
    let den = eval_poly_series(f, &g.d, &x);
    if num.is_zero() {
        let shift = den.valuation().unwrap_or(0);
        return LaurentSeries::zero_to(num.precision.saturating_sub(shift));
    }
    let den_inv = match den.valuation() {
        Some(_) if den.is_exact() => den.invert_rel(f, n as i64 + 2),
        Some(_) => den.invert(f).unwrap(),
        None => unreachable!("denominator expands to zero within precision"),
    };
    num.mul(f, &den_inv)
}

/// Expansion of `g` at `p` known at least modulo `t^target`. The result may be
/// zero modulo `t^target`.
pub fn expand_to<F: Field>(c: &Curve<F>, g: &FunctionRep<F::Elem>, p: &Place<F::Elem>, target: i64) -> Series<F> {
    if g.is_zero() {
        return LaurentSeries::zero_to(target);
    }
    let mut n = (target.max(0) as usize) + 6;
    loop {
        let s = expand_raw(c, g, p, n);
        if s.precision >= target {
            return s.truncate(target);
        }
        n = n * 2 + 4;
    }
}

/// Order of vanishing of a nonzero `g` at `p`.
pub fn ord_at<F: Field>(c: &Curve<F>, g: &FunctionRep<F::Elem>, p: &Place<F::Elem>) -> i64 {
    assert!(!g.is_zero(), "order of the zero function");
    if p.is_infinity() {
        return g.ord_infinity().unwrap();
    }
    let mut target = 8;
    let bound = g.numerator_zero_bound() + 1;
    loop {
        let s = expand_to(c, g, p, target);
        if let Some(v) = s.valuation() {
            return v;
        }
        assert!(target <= bound + 2 * g.d.degree().unwrap() as i64 + 8, "nonzero function with no leading term");
        target *= 2;
    }
}

/// Expansion of `g` at `p` modulo `t^precision`; errors when `g` is zero or
/// when the window below `precision` contains no term of `g`.
pub fn local_expansion<F: Field>(
    c: &Curve<F>,
    g: &FunctionRep<F::Elem>,
    p: &Place<F::Elem>,
    precision: i64,
) -> Result<Series<F>> {
    if g.is_zero() {
        return Err(Error::Input("expansion of the zero function".into()));
    }
    let v = ord_at(c, g, p);
    if precision <= v {
        return Err(Error::Precision(format!("precision {precision} does not exceed valuation {v}")));
    }
    Ok(expand_to(c, g, p, precision))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ellcurve::curve::c7;
    use crate::exactlin::field::FiniteField;

    #[test]
    fn classical_valuations() {
        let c = c7();
        let f = c.field();
        let x = FunctionRep::x(f);
        let y = FunctionRep::y(f);
        assert_eq!(local_expansion(&c, &x, &Place::Infinity, 3).unwrap().valuation, -2);
        assert_eq!(local_expansion(&c, &y, &Place::Infinity, 3).unwrap().valuation, -3);
        let xm3 = x.sub(f, &FunctionRep::constant(f, 3));
        let p = Place::Affine(3, 1);
        assert_eq!(local_expansion(&c, &xm3, &p, 4).unwrap().valuation, 1);
        assert!(matches!(local_expansion(&c, &xm3, &p, 1), Err(Error::Precision(_))));
    }

    #[test]
    fn expansions_satisfy_curve_equation() {
        // y^2 = x^3 + x + 1 over F_13 has 2-torsion? Use a curve with one.
        let f = FiniteField::prime(13).unwrap();
        // x^3 - x has roots 0, 1, 12.
        let c = Curve::new(f.clone(), f.from_int(-1), 0).unwrap();
        for p in c.points() {
            let (x, y) = local_xy(&c, p, 12);
            let lhs = y.mul(&f, &y);
            let rhs = eval_poly_series(&f, c.rhs(), &x);
            assert!(lhs.agrees_with(&f, &rhs), "at {p:?}");
            assert!(lhs.precision >= 6);
        }
    }

    #[test]
    fn multiplicative() {
        let c = c7();
        let f = c.field();
        let g = FunctionRep::y(f).add(f, &FunctionRep::x(f));
        let h = FunctionRep::x(f).sub(f, &FunctionRep::constant(f, 5)).inv(&c).unwrap();
        for p in c.points() {
            let a = expand_to(&c, &g, p, 6);
            let b = expand_to(&c, &h, p, 6);
            let ab = expand_to(&c, &g.mul(&c, &h), p, 6);
            assert!(ab.agrees_with(f, &a.mul(f, &b)));
        }
    }
}

//! Elements of the function field `K(x)[y]/(y^2 - x^3 - a4 x - a6)`.

use serde_json::{json, Value};

use crate::ellcurve::curve::Curve;
use crate::exactlin::field::Field;
use crate::exactlin::poly::Poly;

/// `(n0(x) + y·n1(x)) / d(x)` with `d` monic and `gcd(n0, n1, d) = 1`.
///
/// Every function has exactly one such form because the function field is
/// `K(x) ⊕ y·K(x)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FunctionRep<E> {
    pub n0: Poly<E>,
    pub n1: Poly<E>,
    pub d: Poly<E>,
}

impl<E: Clone + Eq> FunctionRep<E> {
    pub fn new<F: Field<Elem = E>>(f: &F, n0: Poly<E>, n1: Poly<E>, d: Poly<E>) -> Self {
        assert!(!d.is_zero(), "zero denominator");
        if n0.is_zero() && n1.is_zero() {
            return Self::zero(f);
        }
        let g = n0.gcd(f, &n1).gcd(f, &d);
        let (n0, _) = n0.divrem(f, &g);
        let (n1, _) = n1.divrem(f, &g);
        let (d, _) = d.divrem(f, &g);
        let lead_inv = f.inv(d.lead().unwrap()).unwrap();
        FunctionRep { n0: n0.scale(f, &lead_inv), n1: n1.scale(f, &lead_inv), d: d.scale(f, &lead_inv) }
    }

    pub fn zero<F: Field<Elem = E>>(f: &F) -> Self {
        FunctionRep { n0: Poly::zero(), n1: Poly::zero(), d: Poly::one(f) }
    }

    pub fn constant<F: Field<Elem = E>>(f: &F, c: E) -> Self {
        FunctionRep { n0: Poly::constant(f, c), n1: Poly::zero(), d: Poly::one(f) }
    }

    pub fn one<F: Field<Elem = E>>(f: &F) -> Self {
        Self::constant(f, f.one())
    }

    pub fn x<F: Field<Elem = E>>(f: &F) -> Self {
        FunctionRep { n0: Poly::from_coeffs(f, vec![f.zero(), f.one()]), n1: Poly::zero(), d: Poly::one(f) }
    }

    pub fn y<F: Field<Elem = E>>(f: &F) -> Self {
        FunctionRep { n0: Poly::zero(), n1: Poly::one(f), d: Poly::one(f) }
    }

    /// A polynomial in `x` alone.
    pub fn from_x_poly<F: Field<Elem = E>>(f: &F, p: Poly<E>) -> Self {
        Self::new(f, p, Poly::zero(), Poly::one(f))
    }

    pub fn is_zero(&self) -> bool {
        self.n0.is_zero() && self.n1.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.d.degree() == Some(0)
    }

    pub fn add<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        let n0 = self.n0.mul(f, &other.d).add(f, &other.n0.mul(f, &self.d));
        let n1 = self.n1.mul(f, &other.d).add(f, &other.n1.mul(f, &self.d));
        Self::new(f, n0, n1, self.d.mul(f, &other.d))
    }

    pub fn neg<F: Field<Elem = E>>(&self, f: &F) -> Self {
        FunctionRep { n0: self.n0.neg(f), n1: self.n1.neg(f), d: self.d.clone() }
    }

    pub fn sub<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        self.add(f, &other.neg(f))
    }

    pub fn scale<F: Field<Elem = E>>(&self, f: &F, c: &E) -> Self {
        if f.is_zero(c) {
            return Self::zero(f);
        }
        FunctionRep { n0: self.n0.scale(f, c), n1: self.n1.scale(f, c), d: self.d.clone() }
    }
}

impl<E: Clone + Eq> FunctionRep<E> {
    pub fn mul<F: Field<Elem = E>>(&self, c: &Curve<F>, other: &Self) -> Self {
        let f = c.field();
        // (a0 + y a1)(b0 + y b1) = a0 b0 + y^2 a1 b1 + y (a0 b1 + a1 b0)
        let n0 = self.n0.mul(f, &other.n0).add(f, &self.n1.mul(f, &other.n1).mul(f, c.rhs()));
        let n1 = self.n0.mul(f, &other.n1).add(f, &self.n1.mul(f, &other.n0));
        Self::new(f, n0, n1, self.d.mul(f, &other.d))
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv<F: Field<Elem = E>>(&self, c: &Curve<F>) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let f = c.field();
        // 1/(n0 + y n1) = (n0 - y n1) / (n0^2 - n1^2 F)
        let norm = self.n0.mul(f, &self.n0).sub(f, &self.n1.mul(f, &self.n1).mul(f, c.rhs()));
        Some(Self::new(f, self.d.mul(f, &self.n0), self.d.mul(f, &self.n1.neg(f)), norm))
    }

    pub fn div<F: Field<Elem = E>>(&self, c: &Curve<F>, other: &Self) -> Option<Self> {
        other.inv(c).map(|i| self.mul(c, &i))
    }

    pub fn pow<F: Field<Elem = E>>(&self, c: &Curve<F>, e: i64) -> Option<Self> {
        let base = if e < 0 { self.inv(c)? } else { self.clone() };
        let mut acc = Self::one(c.field());
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(c, &base);
        }
        Some(acc)
    }

    /// Value at an affine point where `d` does not vanish.
    pub fn eval_affine<F: Field<Elem = E>>(&self, f: &F, x: &E, y: &E) -> Option<E> {
        let den = self.d.eval(f, x);
        let num = f.add(&self.n0.eval(f, x), &f.mul(y, &self.n1.eval(f, x)));
        f.div(&num, &den)
    }

    /// Order of the pole (negative) or zero at infinity.
    pub fn ord_infinity(&self) -> Option<i64> {
        let a = self.n0.degree().map(|d| 2 * d as i64);
        let b = self.n1.degree().map(|d| 2 * d as i64 + 3);
        let top = a.into_iter().chain(b).max()?;
        Some(2 * self.d.degree().unwrap() as i64 - top)
    }

    /// Upper bound for the number of zeros of the numerator, counted with
    /// multiplicity over the algebraic closure.
    pub fn numerator_zero_bound(&self) -> i64 {
        let a = self.n0.degree().map(|d| 2 * d as i64).unwrap_or(0);
        let b = self.n1.degree().map(|d| 2 * d as i64 + 3).unwrap_or(0);
        a.max(b)
    }

    pub fn to_json<F: Field<Elem = E>>(&self, f: &F) -> Value {
        let p = |q: &Poly<E>| Value::Array(q.coeffs.iter().map(|c| f.elem_to_json(c)).collect());
        json!({"n0": p(&self.n0), "n1": p(&self.n1), "d": p(&self.d)})
    }

    /// Human-readable form such as `(x^2 + 3 + y*(1)) / (x + 4)`.
    pub fn fmt<F: Field<Elem = E>>(&self, f: &F) -> String {
        let p = |q: &Poly<E>| -> String {
            if q.is_zero() {
                return "0".into();
            }
            let mut terms = Vec::new();
            for (i, c) in q.coeffs.iter().enumerate().rev() {
                if f.is_zero(c) {
                    continue;
                }
                let cs = f.fmt_elem(c);
                terms.push(match i {
                    0 => cs,
                    1 if f.is_one(c) => "x".into(),
                    1 => format!("{cs}*x"),
                    _ if f.is_one(c) => format!("x^{i}"),
                    _ => format!("{cs}*x^{i}"),
                });
            }
            terms.join(" + ")
        };
        let mut num = p(&self.n0);
        if !self.n1.is_zero() {
            num = if self.n0.is_zero() { format!("y*({})", p(&self.n1)) } else { format!("{num} + y*({})", p(&self.n1)) };
        }
        if self.is_polynomial() {
            num
        } else {
            format!("({num}) / ({})", p(&self.d))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ellcurve::curve::c7;

    #[test]
    fn field_operations_round_trip() {
        let c = c7();
        let f = c.field();
        let x = FunctionRep::x(f);
        let y = FunctionRep::y(f);
        let g = y.add(f, &x.mul(&c, &x)).add(f, &FunctionRep::constant(f, 3));
        let gi = g.inv(&c).unwrap();
        assert_eq!(g.mul(&c, &gi), FunctionRep::one(f));
        // y^2 reduces to x^3 + 2
        let y2 = y.mul(&c, &y);
        assert_eq!(y2, FunctionRep::from_x_poly(f, c.rhs().clone()));
        assert_eq!(x.ord_infinity(), Some(-2));
        assert_eq!(y.ord_infinity(), Some(-3));
        assert_eq!(y.div(&c, &x).unwrap().ord_infinity(), Some(-1));
    }
}

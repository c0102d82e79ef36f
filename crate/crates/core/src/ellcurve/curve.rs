//! Short Weierstrass curves `y^2 = x^3 + a4 x + a6` and their points.

use std::collections::HashMap;

use serde_json::Value;

use crate::error::{Error, Result};
use crate::exactlin::field::{Field, FiniteField};
use crate::exactlin::poly::Poly;

/// A place of the curve: the point at infinity or an affine point.
/// `Infinity` sorts first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place<E> {
    Infinity,
    Affine(E, E),
}

impl<E> Place<E> {
    pub fn is_infinity(&self) -> bool {
        matches!(self, Place::Infinity)
    }
}

#[derive(Clone, Debug)]
pub struct Curve<F: Field> {
    field: F,
    a4: F::Elem,
    a6: F::Elem,
    rhs: Poly<F::Elem>,
    /// One square root per square, finite fields only.
    roots: Option<HashMap<F::Elem, F::Elem>>,
    points: Vec<Place<F::Elem>>,
}

impl<F: Field> Curve<F> {
    pub fn new(field: F, a4: F::Elem, a6: F::Elem) -> Result<Self> {
        let ch = field.characteristic();
        if ch == 2 || ch == 3 {
            return Err(Error::Input("characteristic 2 and 3 are not supported".into()));
        }
        if !field.contains(&a4) || !field.contains(&a6) {
            return Err(Error::Input("curve coefficients are not field elements".into()));
        }
        let f = &field;
        let a3 = f.pow(&a4, 3);
        let a62 = f.mul(&a6, &a6);
        let inner = f.add(&f.mul(&f.from_int(4), &a3), &f.mul(&f.from_int(27), &a62));
        let disc = f.mul(&f.from_int(-16), &inner);
        if f.is_zero(&disc) {
            return Err(Error::Input("singular curve: discriminant is zero".into()));
        }
        let rhs = Poly::from_coeffs(f, vec![a6.clone(), a4.clone(), f.zero(), f.one()]);
        let mut curve = Curve { field, a4, a6, rhs, roots: None, points: Vec::new() };
        if curve.field.order().is_some() {
            let f = &curve.field;
            let mut roots = HashMap::new();
            for y in f.elements() {
                roots.entry(f.mul(&y, &y)).or_insert(y);
            }
            let mut pts = vec![Place::Infinity];
            for x in f.elements() {
                let r = curve.rhs.eval(f, &x);
                if let Some(y) = roots.get(&r) {
                    pts.push(Place::Affine(x.clone(), y.clone()));
                    let ny = f.neg(y);
                    if ny != *y {
                        pts.push(Place::Affine(x.clone(), ny));
                    }
                }
            }
            pts.sort();
            curve.points = pts;
            curve.roots = Some(roots);
        }
        Ok(curve)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn a4(&self) -> &F::Elem {
        &self.a4
    }

    pub fn a6(&self) -> &F::Elem {
        &self.a6
    }

    /// `x^3 + a4 x + a6`.
    pub fn rhs(&self) -> &Poly<F::Elem> {
        &self.rhs
    }

    pub fn is_finite(&self) -> bool {
        self.roots.is_some()
    }

    /// Rational points, `O` first then by coordinates; empty over infinite fields.
    pub fn points(&self) -> &[Place<F::Elem>] {
        &self.points
    }

    pub fn affine_points(&self) -> impl Iterator<Item = &Place<F::Elem>> {
        self.points.iter().filter(|p| !p.is_infinity())
    }

    /// Square root from the precomputed table; `None` for non-squares or
    /// over infinite fields.
    pub fn sqrt(&self, a: &F::Elem) -> Option<F::Elem> {
        self.roots.as_ref()?.get(a).cloned()
    }

    pub fn is_square(&self, a: &F::Elem) -> bool {
        self.sqrt(a).is_some()
    }

    pub fn contains(&self, p: &Place<F::Elem>) -> bool {
        match p {
            Place::Infinity => true,
            Place::Affine(x, y) => {
                let f = &self.field;
                f.contains(x) && f.contains(y) && f.mul(y, y) == self.rhs.eval(f, x)
            }
        }
    }

    pub fn point(&self, x: F::Elem, y: F::Elem) -> Result<Place<F::Elem>> {
        let p = Place::Affine(x, y);
        if self.contains(&p) {
            Ok(p)
        } else {
            Err(Error::Input(format!("{} is not on the curve", self.fmt_place(&p))))
        }
    }

    pub fn neg(&self, p: &Place<F::Elem>) -> Place<F::Elem> {
        match p {
            Place::Infinity => Place::Infinity,
            Place::Affine(x, y) => Place::Affine(x.clone(), self.field.neg(y)),
        }
    }

    /// Slope and intercept of the chord or tangent through `p`, `q`; `None`
    /// when the line is vertical.
    pub fn line_through(&self, p: &Place<F::Elem>, q: &Place<F::Elem>) -> Option<(F::Elem, F::Elem)> {
        let f = &self.field;
        let (Place::Affine(x1, y1), Place::Affine(x2, y2)) = (p, q) else {
            return None;
        };
        let lambda = if x1 != x2 {
            f.div(&f.sub(y2, y1), &f.sub(x2, x1)).unwrap()
        } else if y1 == y2 && !f.is_zero(y1) {
            let num = f.add(&f.mul(&f.from_int(3), &f.mul(x1, x1)), &self.a4);
            f.div(&num, &f.add(y1, y1)).unwrap()
        } else {
            return None;
        };
        let nu = f.sub(y1, &f.mul(&lambda, x1));
        Some((lambda, nu))
    }

    pub fn add(&self, p: &Place<F::Elem>, q: &Place<F::Elem>) -> Place<F::Elem> {
        let f = &self.field;
        match (p, q) {
            (Place::Infinity, _) => q.clone(),
            (_, Place::Infinity) => p.clone(),
            (Place::Affine(x1, _), Place::Affine(x2, _)) => match self.line_through(p, q) {
                None => Place::Infinity,
                Some((lambda, nu)) => {
                    let x3 = f.sub(&f.sub(&f.mul(&lambda, &lambda), x1), x2);
                    let y3 = f.neg(&f.add(&f.mul(&lambda, &x3), &nu));
                    Place::Affine(x3, y3)
                }
            },
        }
    }

    pub fn sub(&self, p: &Place<F::Elem>, q: &Place<F::Elem>) -> Place<F::Elem> {
        self.add(p, &self.neg(q))
    }

    pub fn mul(&self, n: i64, p: &Place<F::Elem>) -> Place<F::Elem> {
        let mut base = if n < 0 { self.neg(p) } else { p.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Place::Infinity;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            base = self.add(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Order of `p` in the group of rational points (finite fields).
    pub fn point_order(&self, p: &Place<F::Elem>) -> usize {
        let mut k = 1;
        let mut acc = p.clone();
        while !acc.is_infinity() {
            acc = self.add(&acc, p);
            k += 1;
        }
        k
    }

    pub fn place_to_json(&self, p: &Place<F::Elem>) -> Value {
        match p {
            Place::Infinity => Value::String("O".into()),
            Place::Affine(x, y) => Value::Array(vec![self.field.elem_to_json(x), self.field.elem_to_json(y)]),
        }
    }

    pub fn place_from_json(&self, v: &Value) -> Result<Place<F::Elem>> {
        match v {
            Value::String(s) if s == "O" => Ok(Place::Infinity),
            Value::Array(a) if a.len() == 2 => {
                let x = self.field.elem_from_json(&a[0])?;
                let y = self.field.elem_from_json(&a[1])?;
                self.point(x, y)
            }
            other => Err(Error::Input(format!("bad place {other}: expected \"O\" or [x, y]"))),
        }
    }

    pub fn fmt_place(&self, p: &Place<F::Elem>) -> String {
        match p {
            Place::Infinity => "O".into(),
            Place::Affine(x, y) => format!("({},{})", self.field.fmt_elem(x), self.field.fmt_elem(y)),
        }
    }
}

impl Curve<FiniteField> {
    /// The same equation over the degree-`e` extension of a prime base field.
    pub fn base_change(&self, e: u32) -> Result<Curve<FiniteField>> {
        if e == 1 {
            return Ok(self.clone());
        }
        let big = self.field.base_change(e)?;
        Curve::new(big, self.a4, self.a6)
    }
}

/// `y^2 = x^3 + 2` over `F_7`, a small curve with nine rational points.
pub fn c7() -> Curve<FiniteField> {
    Curve::new(FiniteField::prime(7).unwrap(), 0, 2).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::field::Rationals;

    #[test]
    fn c7_points() {
        let c = c7();
        let pts: Vec<String> = c.points().iter().map(|p| c.fmt_place(p)).collect();
        assert_eq!(pts, ["O", "(0,3)", "(0,4)", "(3,1)", "(3,6)", "(5,1)", "(5,6)", "(6,1)", "(6,6)"]);
    }

    #[test]
    fn construction_errors() {
        assert!(Curve::new(FiniteField::prime(7).unwrap(), 0, 0).is_err());
        assert!(Curve::new(FiniteField::prime(3).unwrap(), 1, 1).is_err());
        let q = Rationals;
        let c = Curve::new(q.clone(), q.from_int(-1), q.from_int(0)).unwrap();
        assert!(c.points().is_empty());
    }

    #[test]
    fn group_law_examples() {
        let c = c7();
        let p = c.point(3, 1).unwrap();
        let q = c.point(5, 1).unwrap();
        assert_eq!(c.add(&p, &q), Place::Affine(6, 6));
        assert_eq!(c.add(&p, &Place::Infinity), p);
        assert_eq!(c.add(&p, &c.point(3, 6).unwrap()), Place::Infinity);
        assert_eq!(c.point_order(&p), 3);
    }

    #[test]
    fn group_axioms_exhaustive() {
        let c = c7();
        let pts = c.points();
        for a in pts {
            assert_eq!(c.add(a, &c.neg(a)), Place::Infinity);
            assert_eq!(c.add(a, &Place::Infinity), *a);
            for b in pts {
                assert_eq!(c.add(a, b), c.add(b, a));
                for d in pts {
                    assert_eq!(c.add(&c.add(a, b), d), c.add(a, &c.add(b, d)));
                }
            }
        }
    }

    #[test]
    fn base_change_keeps_rational_points() {
        let c = c7();
        let big = c.base_change(2).unwrap();
        for p in c.points() {
            assert!(big.contains(p));
        }
        assert!(big.points().len() > c.points().len());
    }
}

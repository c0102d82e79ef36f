//! Divisors, reduction to the normal form `(R) + m(O)` and principal functions.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::ellcurve::curve::{Curve, Place};
use crate::ellcurve::function::FunctionRep;
use crate::error::{Error, Result};
use crate::exactlin::field::Field;
use crate::exactlin::poly::Poly;

/// Finite formal sum of places; zero multiplicities are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Divisor<E: Ord> {
    mult: BTreeMap<Place<E>, i64>,
}

impl<E: Clone + Ord> Divisor<E> {
    pub fn zero() -> Self {
        Divisor { mult: BTreeMap::new() }
    }

    pub fn point(p: Place<E>, m: i64) -> Self {
        let mut d = Self::zero();
        d.add_point(p, m);
        d
    }

    /// `m·(O)`.
    pub fn infinity(m: i64) -> Self {
        Self::point(Place::Infinity, m)
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Place<E>, i64)>) -> Self {
        let mut d = Self::zero();
        for (p, m) in pairs {
            d.add_point(p, m);
        }
        d
    }

    pub fn add_point(&mut self, p: Place<E>, m: i64) {
        if m == 0 {
            return;
        }
        let e = self.mult.entry(p.clone()).or_insert(0);
        *e += m;
        if *e == 0 {
            self.mult.remove(&p);
        }
    }

    pub fn get(&self, p: &Place<E>) -> i64 {
        self.mult.get(p).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> i64 {
        self.mult.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Place<E>, &i64)> {
        self.mult.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Place<E>> {
        self.mult.keys()
    }

    pub fn is_zero(&self) -> bool {
        self.mult.is_empty()
    }

    pub fn is_effective(&self) -> bool {
        self.mult.values().all(|&m| m >= 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut d = self.clone();
        for (p, m) in other.iter() {
            d.add_point(p.clone(), *m);
        }
        d
    }

    pub fn scale(&self, k: i64) -> Self {
        Self::from_pairs(self.iter().map(|(p, m)| (p.clone(), m * k)))
    }

    pub fn neg(&self) -> Self {
        self.scale(-1)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn plus_point(&self, p: &Place<E>, m: i64) -> Self {
        let mut d = self.clone();
        d.add_point(p.clone(), m);
        d
    }
}

impl<E: Clone + Ord> FromIterator<(Place<E>, i64)> for Divisor<E> {
    fn from_iter<I: IntoIterator<Item = (Place<E>, i64)>>(iter: I) -> Self {
        Self::from_pairs(iter)
    }
}

pub fn divisor_to_json<F: Field>(c: &Curve<F>, d: &Divisor<F::Elem>) -> Value {
    Value::Array(d.iter().map(|(p, m)| json!({"point": c.place_to_json(p), "mult": m})).collect())
}

pub fn divisor_from_json<F: Field>(c: &Curve<F>, v: &Value) -> Result<Divisor<F::Elem>> {
    let items = v.as_array().ok_or_else(|| Error::Input(format!("divisor must be an array, got {v}")))?;
    let mut d = Divisor::zero();
    for it in items {
        let p = it.get("point").ok_or_else(|| Error::Input("divisor entry lacks \"point\"".into()))?;
        let m = it
            .get("mult")
            .and_then(Value::as_i64)
            .ok_or_else(|| Error::Input("divisor entry lacks integer \"mult\"".into()))?;
        d.add_point(c.place_from_json(p)?, m);
    }
    Ok(d)
}

pub fn fmt_divisor<F: Field>(c: &Curve<F>, d: &Divisor<F::Elem>) -> String {
    if d.is_zero() {
        return "0".into();
    }
    let parts: Vec<String> = d.iter().map(|(p, m)| format!("{m}{}", c.fmt_place(p))).collect();
    parts.join(" + ")
}

/// Normal form `D = (R) + shift·(O) + div(h)` with `shift = deg D - 1`.
#[derive(Clone, Debug)]
pub struct Reduction<E> {
    pub point: Place<E>,
    pub shift: i64,
    pub h: FunctionRep<E>,
}

/// Folds the divisor point by point with chord and vertical-line functions.
pub fn reduce_with_function<F: Field>(c: &Curve<F>, d: &Divisor<F::Elem>) -> Reduction<F::Elem> {
    let f = c.field();
    let mut h = FunctionRep::one(f);
    let mut pts: Vec<(Place<F::Elem>, i64)> = Vec::new();
    for (p, &m) in d.iter() {
        let Place::Affine(x0, _) = p else { continue };
        if m > 0 {
            pts.push((p.clone(), m));
        } else {
            // -(P) = (-P) - 2(O) + div(1/(x - x_P))
            let k = -m;
            pts.push((c.neg(p), k));
            let v = FunctionRep::from_x_poly(f, Poly::linear_root(f, x0));
            h = h.mul(c, &v.pow(c, -k).unwrap());
        }
    }
    let mut acc = Place::Infinity;
    for (q, m) in pts {
        for _ in 0..m {
            if acc.is_infinity() {
                acc = q.clone();
                continue;
            }
            // (R) + (Q) = (R+Q) + (O) + div(l / v)
            let sum = c.add(&acc, &q);
            let g = match (&acc, c.line_through(&acc, &q)) {
                (_, Some((lambda, nu))) => {
                    let line = FunctionRep::new(
                        f,
                        Poly::from_coeffs(f, vec![f.neg(&nu), f.neg(&lambda)]),
                        Poly::one(f),
                        Poly::one(f),
                    );
                    match &sum {
                        Place::Affine(xs, _) => {
                            line.mul(c, &FunctionRep::new(f, Poly::one(f), Poly::zero(), Poly::linear_root(f, xs)))
                        }
                        Place::Infinity => line,
                    }
                }
                (Place::Affine(xr, _), None) => FunctionRep::from_x_poly(f, Poly::linear_root(f, xr)),
                (Place::Infinity, None) => unreachable!(),
            };
            h = h.mul(c, &g);
            acc = sum;
        }
    }
    // Multiplicities of O only enter through the degree.
    Reduction { point: acc, shift: d.degree() - 1, h }
}

/// The point `R` and shift `deg D - 1` with `D ~ (R) + shift·(O)`.
pub fn divisor_reduce<F: Field>(c: &Curve<F>, d: &Divisor<F::Elem>) -> (Place<F::Elem>, i64) {
    let r = reduce_with_function(c, d);
    (r.point, r.shift)
}

pub fn linearly_equivalent<F: Field>(c: &Curve<F>, a: &Divisor<F::Elem>, b: &Divisor<F::Elem>) -> bool {
    a.degree() == b.degree() && divisor_reduce(c, a).0 == divisor_reduce(c, b).0
}

pub fn is_principal<F: Field>(c: &Curve<F>, d: &Divisor<F::Elem>) -> bool {
    d.degree() == 0 && divisor_reduce(c, d).0.is_infinity()
}

/// A function with divisor exactly `D`; `D` must be principal.
pub fn principal_function<F: Field>(c: &Curve<F>, d: &Divisor<F::Elem>) -> Result<FunctionRep<F::Elem>> {
    if d.degree() != 0 {
        return Err(Error::Domain(format!("divisor {} has nonzero degree", fmt_divisor(c, d))));
    }
    let r = reduce_with_function(c, d);
    if !r.point.is_infinity() {
        return Err(Error::Domain(format!("divisor {} is not principal", fmt_divisor(c, d))));
    }
    Ok(r.h)
}

/// The degree-0 divisor `(T) - (O)` representing a class in `Pic^0`.
pub fn pic0_class<E: Clone + Ord>(t: &Place<E>) -> Divisor<E> {
    Divisor::from_pairs([(t.clone(), 1), (Place::Infinity, -1)])
}

//! Points of the scroll `P(E)`: a place of the curve and a line in the fiber.

use serde_json::{json, Value};

use crate::bundlesec::lattice::{check_vector, pivot_index};
use crate::ellcurve::curve::{Curve, Place};
use crate::error::Result;
use crate::exactlin::field::Field;
use crate::exactlin::matrix::Echelon;
use crate::serial::{vec_from_json, vec_to_json};

/// A line in the fiber `E|_p`, written in the local frame of `E` at `p` and
/// scaled so that its first nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ScrollPoint<E: Ord> {
    pub place: Place<E>,
    pub direction: Vec<E>,
}

impl<E: Clone + Ord> ScrollPoint<E> {
    pub fn new<F: Field<Elem = E>>(f: &F, place: Place<E>, direction: Vec<E>, rank: usize) -> Result<Self> {
        check_vector(f, &direction, rank)?;
        Ok(ScrollPoint { place, direction: normalize_direction(f, &direction) })
    }

    pub fn to_json<F: Field<Elem = E>>(&self, c: &Curve<F>) -> Value {
        json!({"point": c.place_to_json(&self.place), "direction": vec_to_json(c.field(), &self.direction)})
    }

    pub fn from_json<F: Field<Elem = E>>(c: &Curve<F>, v: &Value, rank: usize) -> Result<Self> {
        let place = c.place_from_json(v.get("point").unwrap_or(&Value::Null))?;
        let dir = vec_from_json(c.field(), v.get("direction").unwrap_or(&Value::Null))?;
        Self::new(c.field(), place, dir, rank)
    }
}

pub fn normalize_direction<F: Field>(f: &F, v: &[F::Elem]) -> Vec<F::Elem> {
    let j = pivot_index(f, v).expect("nonzero direction");
    let inv = f.inv(&v[j]).unwrap();
    v.iter().map(|a| f.mul(a, &inv)).collect()
}

/// All points of `P^{r-1}` over a finite field, normalized, in lexicographic
/// order of the pivot position then coordinates.
pub fn projective_points<F: Field>(f: &F, r: usize) -> Vec<Vec<F::Elem>> {
    let elems = f.elements();
    let q = elems.len();
    let mut out = Vec::new();
    for pivot in 0..r {
        let free = (r - pivot - 1) as u32;
        for mut n in 0..q.pow(free) {
            let mut v = vec![f.zero(); r];
            v[pivot] = f.one();
            for slot in v[pivot + 1..].iter_mut().rev() {
                *slot = elems[n % q].clone();
                n /= q;
            }
            out.push(v);
        }
    }
    out
}

/// The points of `P(U)` for a subspace `U` of `F^r`, normalized and sorted.
pub fn projective_span<F: Field>(f: &F, basis: &Echelon<F::Elem>) -> Vec<Vec<F::Elem>> {
    let b = basis.sorted_basis();
    if b.is_empty() {
        return Vec::new();
    }
    let r = basis.cols();
    let mut out: Vec<Vec<F::Elem>> = projective_points(f, b.len())
        .into_iter()
        .map(|coef| {
            let mut v = vec![f.zero(); r];
            for (a, row) in coef.iter().zip(&b) {
                if f.is_zero(a) {
                    continue;
                }
                for (x, y) in v.iter_mut().zip(row) {
                    *x = f.add(x, &f.mul(a, y));
                }
            }
            normalize_direction(f, &v)
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

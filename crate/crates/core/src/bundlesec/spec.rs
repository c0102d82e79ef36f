//! Presented bundles: a split ambient bundle cut down by fiber conditions.

use serde_json::{json, Value};

use crate::bundlesec::lattice::{check_vector, Bundle};
use crate::ellcurve::curve::{Curve, Place};
use crate::ellcurve::divisor::{divisor_from_json, divisor_to_json, Divisor};
use crate::error::{Error, Result};
use crate::exactlin::field::Field;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Modification<E: Ord> {
    pub place: Place<E>,
    pub codirection: Vec<E>,
}

/// `ker(⊕ O(D_i) → ⊕_Q k_Q)`, one skyscraper per modification.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BundleSpec<E: Ord> {
    pub factors: Vec<Divisor<E>>,
    pub modifications: Vec<Modification<E>>,
}

impl<E: Clone + Ord> BundleSpec<E> {
    pub fn split(factors: Vec<Divisor<E>>) -> Self {
        BundleSpec { factors, modifications: Vec::new() }
    }

    pub fn new<F: Field<Elem = E>>(f: &F, factors: Vec<Divisor<E>>, modifications: Vec<Modification<E>>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::Input("a bundle needs at least one factor".into()));
        }
        let r = factors.len();
        for (i, m) in modifications.iter().enumerate() {
            check_vector(f, &m.codirection, r)?;
            if modifications[..i].iter().any(|o| o.place == m.place) {
                return Err(Error::Input("modification places must be distinct".into()));
            }
        }
        Ok(BundleSpec { factors, modifications })
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn degree(&self) -> i64 {
        self.factors.iter().map(|d| d.degree()).sum::<i64>() - self.modifications.len() as i64
    }

    pub fn is_decomposable(&self) -> bool {
        self.modifications.is_empty()
    }

    pub fn bundle<F: Field<Elem = E>>(&self, f: &F) -> Bundle<E> {
        let mut b = Bundle::split(f, &self.factors);
        for m in &self.modifications {
            b = b.modify(f, &m.place, &m.codirection).expect("validated modification");
        }
        b
    }

    /// `E^* ⊗ M` of a split spec, as a spec.
    pub fn dual_twist(&self, m: &Divisor<E>) -> Result<Self> {
        if !self.is_decomposable() {
            return Err(Error::Unsupported("dual_twist as a spec needs a split bundle; use the lattice dual".into()));
        }
        Ok(Self::split(self.factors.iter().map(|d| m.sub(d)).collect()))
    }

    /// `∧^n E` of a split spec.
    pub fn wedge(&self, n: usize) -> Result<Self> {
        if !self.is_decomposable() {
            return Err(Error::Unsupported("wedge of a modified bundle".into()));
        }
        if n == 0 || n > self.rank() {
            return Err(Error::Input(format!("wedge power {n} out of range 1..={}", self.rank())));
        }
        let factors = subsets(self.rank(), n)
            .into_iter()
            .map(|s| s.iter().fold(Divisor::zero(), |acc, &i| acc.add(&self.factors[i])))
            .collect();
        Ok(Self::split(factors))
    }

    /// `E ⊗ O(T)` keeping the presentation.
    pub fn twist(&self, t: &Divisor<E>) -> Self {
        BundleSpec { factors: self.factors.iter().map(|d| d.add(t)).collect(), modifications: self.modifications.clone() }
    }

    /// Largest factor degree (the formula value of the maximal line subbundle
    /// degree for split bundles).
    pub fn max_factor_degree(&self) -> i64 {
        self.factors.iter().map(|d| d.degree()).max().unwrap()
    }
}

/// Increasing `n`-subsets of `0..r` in lexicographic order.
pub fn subsets(r: usize, n: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, r: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in start..r {
            cur.push(i);
            rec(i + 1, r, n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, r, n, &mut Vec::new(), &mut out);
    out
}

pub fn spec_to_json<F: Field>(c: &Curve<F>, s: &BundleSpec<F::Elem>) -> Value {
    let f = c.field();
    json!({
        "factors": s.factors.iter().map(|d| divisor_to_json(c, d)).collect::<Vec<_>>(),
        "modifications": s.modifications.iter().map(|m| json!({
            "point": c.place_to_json(&m.place),
            "codirection": m.codirection.iter().map(|a| f.elem_to_json(a)).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    })
}

pub fn spec_from_json<F: Field>(c: &Curve<F>, v: &Value) -> Result<BundleSpec<F::Elem>> {
    let f = c.field();
    let factors = v
        .get("factors")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Input("bundle needs a \"factors\" array".into()))?
        .iter()
        .map(|d| divisor_from_json(c, d))
        .collect::<Result<Vec<_>>>()?;
    let mut mods = Vec::new();
    if let Some(ms) = v.get("modifications") {
        let ms = ms.as_array().ok_or_else(|| Error::Input("\"modifications\" must be an array".into()))?;
        for m in ms {
            let place = c.place_from_json(m.get("point").ok_or_else(|| Error::Input("modification lacks \"point\"".into()))?)?;
            let codirection = m
                .get("codirection")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Input("modification lacks \"codirection\" array".into()))?
                .iter()
                .map(|a| f.elem_from_json(a))
                .collect::<Result<Vec<_>>>()?;
            mods.push(Modification { place, codirection });
        }
    }
    BundleSpec::new(f, factors, mods)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ellcurve::curve::c7;

    #[test]
    fn wedge_and_dual() {
        let p = Place::Affine(3u32, 1u32);
        let d1 = Divisor::infinity(-3);
        let d2 = Divisor::from_pairs([(Place::Infinity, -2), (p.clone(), -1)]);
        let e: BundleSpec<u32> = BundleSpec::split(vec![d1.clone(), d2.clone()]);
        let w = e.wedge(2).unwrap();
        assert_eq!(w.factors, vec![d1.add(&d2)]);
        let dual = e.dual_twist(&Divisor::zero()).unwrap();
        assert_eq!(dual.factors, vec![Divisor::infinity(3), Divisor::from_pairs([(Place::Infinity, 2), (p, 1)])]);
        let e3: BundleSpec<u32> = BundleSpec::split(vec![Divisor::infinity(-1), Divisor::infinity(-2), Divisor::infinity(-4)]);
        let w2 = e3.wedge(2).unwrap();
        assert_eq!(w2.rank(), 3);
        assert_eq!(w2.degree(), 2 * e3.degree());
    }

    #[test]
    fn json_round_trip_and_validation() {
        let c = c7();
        let f = c.field();
        let v = serde_json::json!({
            "factors": [[{"point": "O", "mult": -2}], [{"point": [3, 6], "mult": -2}]],
            "modifications": [{"point": [5, 1], "codirection": ["1", "1"]}]
        });
        let s = spec_from_json(&c, &v).unwrap();
        assert_eq!(s.degree(), -5);
        assert_eq!(spec_from_json(&c, &spec_to_json(&c, &s)).unwrap(), s);
        assert!(s.wedge(1).is_err());
        let m = Modification { place: Place::Affine(5, 1), codirection: vec![1, 1] };
        assert!(BundleSpec::new(f, s.factors.clone(), vec![m.clone(), m]).is_err());
    }
}

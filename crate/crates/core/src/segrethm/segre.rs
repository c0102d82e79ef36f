//! The Segre invariant `s_1(E) = d - r·max deg L` over line subbundles `L`.

use serde_json::{json, Value};

use crate::bundlesec::lattice::Bundle;
use crate::bundlesec::sections::{h0, SectionBasis};
use crate::bundlesec::spec::BundleSpec;
use crate::ellcurve::curve::{Curve, Place};
use crate::ellcurve::divisor::{divisor_to_json, Divisor};
use crate::ellcurve::function::FunctionRep;
use crate::error::{Error, Result};
use crate::exactlin::field::Field;
use crate::segrethm::bounds::hirschowitz_bound;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SegreMethod {
    Formula,
    Bruteforce,
}

impl SegreMethod {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "formula" => Ok(SegreMethod::Formula),
            "bruteforce" => Ok(SegreMethod::Bruteforce),
            _ => Err(Error::Input(format!("unknown method {s:?}; expected formula or bruteforce"))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SegreMethod::Formula => "formula",
            SegreMethod::Bruteforce => "bruteforce",
        }
    }
}

/// A line subbundle of maximal degree together with one embedding.
#[derive(Clone, Debug)]
pub struct SegreWitness<E: Ord> {
    pub class: Divisor<E>,
    /// The embedding `L → E` as a section of `E ⊗ L^{-1}`, one function per
    /// ambient component.
    pub section: Vec<FunctionRep<E>>,
}

#[derive(Clone, Debug)]
pub struct SegreReport<E: Ord> {
    pub s1: i64,
    /// Maximal degree of a line subbundle.
    pub max_degree: i64,
    pub witness: Option<SegreWitness<E>>,
    /// Every rational class of maximal degree that embeds.
    pub witness_classes: Vec<Divisor<E>>,
    pub method: SegreMethod,
    pub window: (i64, i64),
    /// Whether the search had to go below the window.
    pub extended: bool,
}

impl<E: Clone + Ord> SegreReport<E> {
    pub fn to_json<F: Field<Elem = E>>(&self, c: &Curve<F>) -> Value {
        let f = c.field();
        let witness = self.witness.as_ref().map(|w| {
            json!({
                "degree": self.max_degree,
                "class": divisor_to_json(c, &w.class),
                "embedding": w.section.iter().map(|g| g.to_json(f)).collect::<Vec<_>>(),
            })
        });
        json!({
            "s1": self.s1,
            "max_subbundle_degree": self.max_degree,
            "witness": witness,
            "witness_classes": self.witness_classes.iter().map(|d| divisor_to_json(c, d)).collect::<Vec<_>>(),
            "method": self.method.name(),
            "window": [self.window.0, self.window.1],
        })
    }
}

/// The class `O((a-1)(O) + (T))` of degree `a`.
pub fn line_class<E: Clone + Ord>(a: i64, t: &Place<E>) -> Divisor<E> {
    Divisor::infinity(a - 1).plus_point(t, 1)
}

/// `[lo, hi]`: `lo` from the Hirschowitz bound at genus one, `hi` from the
/// ambient split bundle containing `E`.
pub fn search_window<E: Clone + Ord>(e: &Bundle<E>) -> Result<(i64, i64)> {
    let r = e.rank() as i64;
    let d = e.degree();
    let (bound, _) = hirschowitz_bound(r, 1, d, 1)?;
    let lo = (d - bound).div_euclid(r) + i64::from((d - bound).rem_euclid(r) != 0);
    let hi = e.pole_bounds().iter().map(|a| a.degree()).max().unwrap();
    if lo > hi {
        return Err(Error::Input(format!("empty search window [{lo}, {hi}]")));
    }
    Ok((lo, hi))
}

pub fn segre1<F: Field>(c: &Curve<F>, spec: &BundleSpec<F::Elem>, method: SegreMethod) -> Result<SegreReport<F::Elem>> {
    let f = c.field();
    if spec.rank() < 2 {
        return Err(Error::Input("the Segre invariant needs rank at least 2".into()));
    }
    match method {
        SegreMethod::Formula => {
            if !spec.is_decomposable() {
                return Err(Error::Unsupported("the formula applies to split bundles only".into()));
            }
            let e = spec.bundle(f);
            let window = search_window(&e)?;
            let a = spec.max_factor_degree();
            let i = spec.factors.iter().position(|d| d.degree() == a).unwrap();
            let mut section = vec![FunctionRep::zero(f); spec.rank()];
            section[i] = FunctionRep::one(f);
            let classes = spec.factors.iter().filter(|d| d.degree() == a).cloned().collect();
            Ok(SegreReport {
                s1: spec.degree() - spec.rank() as i64 * a,
                max_degree: a,
                witness: Some(SegreWitness { class: spec.factors[i].clone(), section }),
                witness_classes: classes,
                method,
                window,
                extended: false,
            })
        }
        SegreMethod::Bruteforce => segre1_bundle(c, &spec.bundle(f)),
    }
}

/// Brute force over all rational line classes, from the top of the window
/// down. The first degree that embeds is maximal, so every embedding found
/// there is saturated: a zero of it would give a subsheaf of larger degree.
pub fn segre1_bundle<F: Field>(c: &Curve<F>, e: &Bundle<F::Elem>) -> Result<SegreReport<F::Elem>> {
    if c.field().order().is_none() {
        return Err(Error::Unsupported("brute-force Segre invariants need a finite field".into()));
    }
    let r = e.rank() as i64;
    if r < 2 {
        return Err(Error::Input("the Segre invariant needs rank at least 2".into()));
    }
    let d = e.degree();
    let (lo, hi) = search_window(e)?;
    // below d/r Riemann-Roch alone forces a section
    let floor = lo.min((d - 1).div_euclid(r));
    for a in (floor..=hi).rev() {
        let mut found: Vec<(Divisor<F::Elem>, SectionBasis<F::Elem>)> = Vec::new();
        for t in c.points() {
            let l = line_class(a, t);
            let s = h0(c, e, &l.neg());
            if s.dim() > 0 {
                found.push((l, s));
            }
        }
        if let Some((class, s)) = found.first() {
            certify_saturated(c, s)?;
            return Ok(SegreReport {
                s1: d - r * a,
                max_degree: a,
                witness: Some(SegreWitness { class: class.clone(), section: s.section(c, 0) }),
                witness_classes: found.iter().map(|(l, _)| l.clone()).collect(),
                method: SegreMethod::Bruteforce,
                window: (lo, hi),
                extended: a < lo,
            });
        }
    }
    Err(Error::Invariant(format!("no line subsheaf found down to degree {floor}")))
}

/// The first basis embedding must be nonzero at every rational point.
fn certify_saturated<F: Field>(c: &Curve<F>, s: &SectionBasis<F::Elem>) -> Result<()> {
    let f = c.field();
    for p in c.points() {
        let v = &s.normalized_jets(c, p, 1)[0];
        if v.iter().all(|comp| f.is_zero(&comp[0])) {
            return Err(Error::Invariant(format!("maximal embedding vanishes at {}", c.fmt_place(p))));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ellcurve::curve::c7;

    #[test]
    fn estar_and_eflat() {
        let c = c7();
        let p = Place::Affine(3, 1);
        let estar = BundleSpec::split(vec![Divisor::infinity(-3), Divisor::from_pairs([(Place::Infinity, -2), (p, -1)])]);
        let b = segre1(&c, &estar, SegreMethod::Bruteforce).unwrap();
        assert_eq!((b.s1, b.max_degree, b.witness_classes.len()), (0, -3, 2));
        assert_eq!(segre1(&c, &estar, SegreMethod::Formula).unwrap().s1, 0);
        let eflat = BundleSpec::split(vec![Divisor::infinity(-1), Divisor::infinity(-5)]);
        assert_eq!(segre1(&c, &eflat, SegreMethod::Bruteforce).unwrap().s1, -4);
        assert_eq!(segre1(&c, &eflat, SegreMethod::Formula).unwrap().s1, -4);
    }
}

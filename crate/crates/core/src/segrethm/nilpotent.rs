//! Rank-one nilpotent endomorphisms `E → K ⊗ E` (at genus one `K = O`).
//!
//! An element `φ = Σ c_a φ_a` of `End(E)` is a matrix of rational functions
//! in the ambient frame. Its 2×2 minors and the entries of `φ²` are
//! quadratic forms in `c` with function coefficients; writing those
//! coefficients over one common denominator turns every vanishing test into
//! exact linear algebra over the base field.

use serde_json::{json, Value};

use crate::bundlesec::lattice::Bundle;
use crate::bundlesec::sections::h0;
use crate::ellcurve::curve::Curve;
use crate::ellcurve::divisor::Divisor;
use crate::ellcurve::function::FunctionRep;
use crate::error::{Error, Result};
use crate::exactlin::field::Field;
use crate::exactlin::poly::Poly;
use crate::scrolljet::point::projective_points;

pub const MAX_HOM_DIM: usize = 7;

#[derive(Clone, Debug)]
pub struct NilpotentReport<E> {
    pub exists: bool,
    pub hom_dim: usize,
    /// Coefficients of a rank-one nilpotent in the `End(E)` basis, and its
    /// matrix `φ[k][i]` acting on column vectors.
    pub witness: Option<(Vec<E>, Vec<Vec<FunctionRep<E>>>)>,
}

impl<E: Clone + Ord> NilpotentReport<E> {
    pub fn to_json<F: Field<Elem = E>>(&self, f: &F) -> Value {
        let witness = self.witness.as_ref().map(|(coef, m)| {
            json!({
                "coefficients": coef.iter().map(|a| f.elem_to_json(a)).collect::<Vec<_>>(),
                "matrix": m.iter().map(|row| row.iter().map(|g| g.to_json(f)).collect::<Vec<_>>()).collect::<Vec<_>>(),
            })
        });
        json!({"exists": self.exists, "hom_dim": self.hom_dim, "witness": witness})
    }
}

/// Matrices of a basis of `End(E)`; entry `[k][i]` is the coefficient of
/// `e_k` in the image of `e_i`.
fn end_basis<F: Field>(c: &Curve<F>, e: &Bundle<F::Elem>) -> Vec<Vec<Vec<FunctionRep<F::Elem>>>> {
    let r = e.rank();
    let s = h0(c, &e.hom(c.field(), e), &Divisor::zero());
    (0..s.dim())
        .map(|a| {
            let comps = s.section(c, a);
            (0..r).map(|k| (0..r).map(|i| comps[i * r + k].clone()).collect()).collect()
        })
        .collect()
}

/// Polynomials `(bilinear terms)` that must vanish for a rank-one nilpotent:
/// for each pair `a ≤ b` the list of function coefficients of `c_a c_b`.
fn quadratic_terms<F: Field>(c: &Curve<F>, basis: &[Vec<Vec<FunctionRep<F::Elem>>>]) -> Vec<Vec<FunctionRep<F::Elem>>> {
    let f = c.field();
    let r = basis.first().map_or(0, |m| m.len());
    let mul = |x: &FunctionRep<F::Elem>, y: &FunctionRep<F::Elem>| x.mul(c, y);
    // symmetric bilinear versions of each condition
    let bilinear = |p: &Vec<Vec<FunctionRep<F::Elem>>>, q: &Vec<Vec<FunctionRep<F::Elem>>>| -> Vec<FunctionRep<F::Elem>> {
        let mut out = Vec::new();
        for i in 0..r {
            for k in i + 1..r {
                for j in 0..r {
                    for l in j + 1..r {
                        let t = mul(&p[i][j], &q[k][l]).add(f, &mul(&q[i][j], &p[k][l]));
                        let u = mul(&p[i][l], &q[k][j]).add(f, &mul(&q[i][l], &p[k][j]));
                        out.push(t.sub(f, &u));
                    }
                }
            }
        }
        for i in 0..r {
            for l in 0..r {
                let mut acc = FunctionRep::zero(f);
                for j in 0..r {
                    acc = acc.add(f, &mul(&p[i][j], &q[j][l])).add(f, &mul(&q[i][j], &p[j][l]));
                }
                out.push(acc);
            }
        }
        out
    };
    let two_inv = f.inv(&f.from_int(2));
    let mut terms = Vec::new();
    for a in 0..basis.len() {
        for b in a..basis.len() {
            let mut t = bilinear(&basis[a], &basis[b]);
            if a == b {
                // the diagonal form counts each product twice
                let h = two_inv.clone().expect("characteristic 2 is excluded");
                t = t.iter().map(|g| g.scale(f, &h)).collect();
            }
            terms.push(t);
        }
    }
    terms
}

/// Coordinates of functions over a common denominator, one row per function.
fn linearize<F: Field>(f: &F, fs: &[FunctionRep<F::Elem>]) -> Vec<Vec<F::Elem>> {
    let mut den = Poly::one(f);
    for g in fs {
        let gcd = den.gcd(f, &g.d);
        den = den.mul(f, &g.d.divrem(f, &gcd).0);
    }
    let lifted: Vec<(Poly<F::Elem>, Poly<F::Elem>)> = fs
        .iter()
        .map(|g| {
            let m = den.divrem(f, &g.d).0;
            (g.n0.mul(f, &m), g.n1.mul(f, &m))
        })
        .collect();
    let w0 = lifted.iter().filter_map(|(a, _)| a.degree()).max().map_or(0, |d| d + 1);
    let w1 = lifted.iter().filter_map(|(_, b)| b.degree()).max().map_or(0, |d| d + 1);
    lifted
        .iter()
        .map(|(a, b)| (0..w0).map(|i| a.coeff(f, i)).chain((0..w1).map(|i| b.coeff(f, i))).collect())
        .collect()
}

pub fn nilpotent_rank1_exists<F: Field>(c: &Curve<F>, e: &Bundle<F::Elem>) -> Result<NilpotentReport<F::Elem>> {
    let f = c.field();
    let Some(q) = f.order() else {
        return Err(Error::Unsupported("nilpotent enumeration needs a finite field".into()));
    };
    let basis = end_basis(c, e);
    let dim = basis.len();
    if dim > MAX_HOM_DIM {
        return Err(Error::Unsupported(format!("End(E) has dimension {dim}, above the enumeration budget {MAX_HOM_DIM}")));
    }
    if e.rank() < 2 {
        // a nilpotent function is zero
        return Ok(NilpotentReport { exists: false, hom_dim: dim, witness: None });
    }
    if q.checked_pow(dim as u32).is_none_or(|n| n > 5_000_000) {
        return Err(Error::Unsupported(format!("{q}^{dim} elements exceed the enumeration budget")));
    }
    let terms = quadratic_terms(c, &basis);
    // flatten: one function per (pair, condition), linearized together
    let per_pair = terms[0].len();
    let flat: Vec<FunctionRep<F::Elem>> = terms.iter().flatten().cloned().collect();
    let rows = linearize(f, &flat);
    let width = rows.first().map_or(0, |r| r.len());
    let pairs: Vec<(usize, usize)> = (0..dim).flat_map(|a| (a..dim).map(move |b| (a, b))).collect();
    // coords[cond][t][pair]
    let coords: Vec<Vec<Vec<F::Elem>>> = (0..per_pair)
        .map(|cond| (0..width).map(|t| (0..pairs.len()).map(|pi| rows[pi * per_pair + cond][t].clone()).collect()).collect())
        .collect();
    for coef in projective_points(f, dim) {
        let prods: Vec<F::Elem> = pairs.iter().map(|&(a, b)| f.mul(&coef[a], &coef[b])).collect();
        let vanishes = coords.iter().flatten().all(|lin| {
            let mut acc = f.zero();
            for (x, y) in lin.iter().zip(&prods) {
                if !f.is_zero(x) && !f.is_zero(y) {
                    acc = f.add(&acc, &f.mul(x, y));
                }
            }
            f.is_zero(&acc)
        });
        if vanishes {
            let r = e.rank();
            let m = (0..r)
                .map(|k| {
                    (0..r)
                        .map(|i| {
                            basis.iter().zip(&coef).fold(FunctionRep::zero(f), |acc, (b, a)| acc.add(f, &b[k][i].scale(f, a)))
                        })
                        .collect()
                })
                .collect();
            return Ok(NilpotentReport { exists: true, hom_dim: dim, witness: Some((coef, m)) });
        }
    }
    Ok(NilpotentReport { exists: false, hom_dim: dim, witness: None })
}

/// `(h^0, h^1)` of `Hom(N, E/N)` for a rank-2 bundle and a maximal line
/// subbundle class `N`. At that degree every embedding is saturated, so
/// `E/N` is the line bundle `det E ⊗ N^{-1}`.
pub fn quot_tangent_obstruction<F: Field>(c: &Curve<F>, e: &Bundle<F::Elem>, n: &Divisor<F::Elem>) -> Result<(i64, i64)> {
    if e.rank() != 2 {
        return Err(Error::Input(format!("obstruction spaces are computed for rank 2, got rank {}", e.rank())));
    }
    if h0(c, e, &n.neg()).dim() == 0 {
        return Err(Error::Domain("N is not a subsheaf of E".into()));
    }
    let seg = crate::segrethm::segre::segre1_bundle(c, e)?;
    if n.degree() < seg.max_degree {
        return Err(Error::Domain(format!(
            "N has degree {} below the maximal {}; saturation is certified for maximal classes only",
            n.degree(),
            seg.max_degree
        )));
    }
    let hom = e.det_divisor().sub(&n.scale(2));
    let line = Bundle::trivial(1);
    let (chi, h1) = crate::bundlesec::sections::chi_h1(c, &line, &hom);
    Ok((chi + h1, h1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundlesec::spec::BundleSpec;
    use crate::ellcurve::curve::{c7, Place};

    #[test]
    fn detects_the_three_cases() {
        let c = c7();
        let f = c.field();
        let p = Place::Affine(3, 1);
        let estar = BundleSpec::split(vec![Divisor::infinity(-3), Divisor::from_pairs([(Place::Infinity, -2), (p, -1)])]).bundle(f);
        let rep = nilpotent_rank1_exists(&c, &estar).unwrap();
        assert_eq!((rep.exists, rep.hom_dim), (false, 2));
        let eflat = BundleSpec::split(vec![Divisor::infinity(-1), Divisor::infinity(-5)]).bundle(f);
        let rep = nilpotent_rank1_exists(&c, &eflat).unwrap();
        assert_eq!((rep.exists, rep.hom_dim), (true, 6));
        let twice = BundleSpec::split(vec![Divisor::infinity(-3), Divisor::infinity(-3)]).bundle(f);
        let rep = nilpotent_rank1_exists(&c, &twice).unwrap();
        assert_eq!((rep.exists, rep.hom_dim), (true, 4));
        let (_, m) = rep.witness.unwrap();
        // φ² = 0 directly
        for i in 0..2 {
            for l in 0..2 {
                let s = (0..2).fold(FunctionRep::zero(f), |acc, j| acc.add(f, &m[i][j].mul(&c, &m[j][l])));
                assert!(s.is_zero());
            }
        }
    }

    #[test]
    fn obstruction_spaces() {
        let c = c7();
        let f = c.field();
        let p = Place::Affine(3, 1);
        let estar = BundleSpec::split(vec![Divisor::infinity(-3), Divisor::from_pairs([(Place::Infinity, -2), (p, -1)])]).bundle(f);
        assert_eq!(quot_tangent_obstruction(&c, &estar, &Divisor::infinity(-3)).unwrap(), (0, 0));
        let twice = BundleSpec::split(vec![Divisor::infinity(-3), Divisor::infinity(-3)]).bundle(f);
        assert_eq!(quot_tangent_obstruction(&c, &twice, &Divisor::infinity(-3)).unwrap(), (1, 1));
        assert!(matches!(quot_tangent_obstruction(&c, &estar, &Divisor::infinity(-9)), Err(Error::Domain(_))));
        assert!(matches!(quot_tangent_obstruction(&c, &estar, &Divisor::infinity(2)), Err(Error::Domain(_))));
    }
}

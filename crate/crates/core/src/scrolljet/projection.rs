//! Incomplete linear systems: random and adversarial subspaces `W ⊆ V`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bundlesec::sections::SectionBasis;
use crate::ellcurve::curve::Curve;
use crate::error::{Error, Result};
use crate::exactlin::field::Field;
use crate::exactlin::matrix::ExactMatrix;
use crate::scrolljet::jet::jet_matrix;
use crate::scrolljet::point::ScrollPoint;

/// A seeded random `(m+1)`-dimensional subspace of `V`, as the row space of a
/// full-rank random matrix in reduced echelon form.
pub fn project_system<F: Field>(f: &F, v: &SectionBasis<F::Elem>, m_plus_1: usize, seed: u64) -> Result<SectionBasis<F::Elem>> {
    let n1 = v.dim();
    if m_plus_1 == 0 || m_plus_1 >= n1 {
        return Err(Error::Input(format!("subspace dimension {m_plus_1} must lie in 1..{n1}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let rows: Vec<Vec<F::Elem>> = (0..m_plus_1).map(|_| (0..n1).map(|_| f.random(&mut rng)).collect()).collect();
        let m = ExactMatrix::from_rows(n1, rows);
        let (r, piv) = m.rref(f);
        if piv.len() == m_plus_1 {
            return Ok(v.subspace(f, &r.select_rows(&(0..m_plus_1).collect::<Vec<_>>())));
        }
    }
}

/// The hyperplane of `V` killed by the `∂/∂z` row of the jet matrix at `x`.
///
/// It contains every section vanishing to second order along `x`, so the
/// first osculating space of `W` at `x` loses a dimension.
pub fn adversarial_subspace<F: Field>(c: &Curve<F>, v: &SectionBasis<F::Elem>, x: &ScrollPoint<F::Elem>) -> Result<SectionBasis<F::Elem>> {
    let f = c.field();
    let jm = jet_matrix(c, v, x, 1)?;
    let idx = jm.labels.iter().position(|&l| l == (1, 1)).expect("order-one jet row");
    let row = ExactMatrix::from_rows(v.dim(), vec![jm.matrix.row(idx).to_vec()]);
    let ker = row.kernel(f);
    if ker.len() == v.dim() {
        return Err(Error::Domain("the tangent row vanishes at this point".into()));
    }
    Ok(v.subspace(f, &ExactMatrix::from_rows(v.dim(), ker)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundlesec::spec::BundleSpec;
    use crate::ellcurve::curve::{c7, Place};
    use crate::ellcurve::divisor::Divisor;
    use crate::scrolljet::jet::complete_system;
    use crate::scrolljet::scan::SystemScan;

    fn estar_system() -> (Curve<crate::exactlin::field::FiniteField>, SectionBasis<u32>) {
        let c = c7();
        let p = Place::Affine(3, 1);
        let e = BundleSpec::split(vec![Divisor::infinity(-3), Divisor::from_pairs([(Place::Infinity, -2), (p, -1)])]).bundle(c.field());
        let v = complete_system(&c, &e, &Divisor::zero()).unwrap();
        (c, v)
    }

    #[test]
    fn reproducible_and_sized() {
        let (c, v) = estar_system();
        let f = c.field();
        let a = project_system(f, &v, 5, 11).unwrap();
        let b = project_system(f, &v, 5, 11).unwrap();
        assert_eq!(a.coeffs, b.coeffs);
        assert_eq!(a.dim(), 5);
        assert!(project_system(f, &v, 6, 0).is_err());
        assert!(project_system(f, &v, 0, 0).is_err());
    }

    #[test]
    fn adversarial_forces_inflection() {
        let (c, v) = estar_system();
        let f = c.field();
        let x = ScrollPoint { place: Place::Affine(3, 1), direction: vec![1, 2] };
        let w = adversarial_subspace(&c, &v, &x).unwrap();
        assert_eq!(w.dim(), 5);
        let scan = SystemScan::run(&c, &w, c.points(), 1).unwrap();
        assert_eq!(scan.d(1), 2);
        assert!(scan.inflection_points(f, 1).contains(&x));
        let full = SystemScan::run(&c, &v, c.points(), 1).unwrap();
        assert!(full.inflection_points(f, 1).is_empty());
    }
}

//! Jet matrices of the complete (or a projected) linear system on `P(E)`.
//!
//! Sections of `E^* ⊗ M` are read in the lattice frame of `E^*(M)` at `p`,
//! which is dual to the frame of `E` used for scroll directions. A direction
//! `v` is completed to a frame by `frame_with_first_column`, and the jet rows
//! are the Taylor coefficients `α_{j,1}` for `j <= k` and `α_{l,i}` for
//! `l < k`, `i >= 2`.

use crate::bundlesec::lattice::{check_vector, frame_with_first_column, Bundle};
use crate::bundlesec::sections::{h0, SectionBasis};
use crate::ellcurve::curve::{Curve, Place};
use crate::ellcurve::divisor::Divisor;
use crate::error::{Error, Result};
use crate::exactlin::field::Field;
use crate::exactlin::matrix::{Echelon, ExactMatrix};
use crate::scrolljet::point::ScrollPoint;

/// Row labels `(j, i)` use the 1-based component index of `α_{j,i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JetMatrix<E> {
    pub k: usize,
    pub labels: Vec<(usize, usize)>,
    pub matrix: ExactMatrix<E>,
}

impl<E: Clone + Eq> JetMatrix<E> {
    pub fn rank<F: Field<Elem = E>>(&self, f: &F) -> usize {
        self.matrix.rank(f)
    }
}

/// Jets of order `k` need `k < char`; one extra order of headroom is kept.
pub fn check_order<F: Field>(f: &F, k: usize) -> Result<()> {
    let p = f.characteristic();
    if p != 0 && (k as u64) + 1 >= p {
        return Err(Error::Precondition(format!("jet order {k} needs k + 1 < characteristic {p}")));
    }
    Ok(())
}

/// `H^0(E^* ⊗ M)`, the complete system of `O(1) ⊗ π^*M`.
pub fn complete_system<F: Field>(c: &Curve<F>, e: &Bundle<F::Elem>, m: &Divisor<F::Elem>) -> Result<SectionBasis<F::Elem>> {
    if m.degree() != 0 {
        return Err(Error::Input(format!("M must have degree 0, got {}", m.degree())));
    }
    Ok(h0(c, &e.dual(), m))
}

pub fn jet_matrix<F: Field>(
    c: &Curve<F>,
    v: &SectionBasis<F::Elem>,
    x: &ScrollPoint<F::Elem>,
    k: usize,
) -> Result<JetMatrix<F::Elem>> {
    let f = c.field();
    check_vector(f, &x.direction, v.rank())?;
    if !c.contains(&x.place) {
        return Err(Error::Input("scroll point lies off the curve".into()));
    }
    jet_matrix_in_frame(c, v, x, k, &frame_with_first_column(f, &x.direction))
}

/// The jet matrix in a frame `a` of the fiber whose first column spans the
/// direction of `x`. Its rank does not depend on the choice of `a`.
pub fn jet_matrix_in_frame<F: Field>(
    c: &Curve<F>,
    v: &SectionBasis<F::Elem>,
    x: &ScrollPoint<F::Elem>,
    k: usize,
    a: &ExactMatrix<F::Elem>,
) -> Result<JetMatrix<F::Elem>> {
    let f = c.field();
    check_order(f, k)?;
    let r = v.rank();
    if a.rows() != r || a.cols() != r || a.rank(f) != r {
        return Err(Error::Input(format!("frame must be an invertible {r}x{r} matrix")));
    }
    let first: Vec<F::Elem> = (0..r).map(|i| a.get(i, 0).clone()).collect();
    if ExactMatrix::from_rows(r, vec![first, x.direction.clone()]).rank(f) != 1 {
        return Err(Error::Input("the first frame column must span the direction".into()));
    }
    let jets = v.normalized_jets(c, &x.place, k + 1);
    let cols = v.dim();
    let mut labels = Vec::new();
    let mut rows = Vec::new();
    for j in 0..=k {
        labels.push((j, 1));
        rows.push((0..cols).map(|s| component(f, a, 0, &jets[s], j)).collect());
    }
    for l in 0..k {
        for i in 1..r {
            labels.push((l, i + 1));
            rows.push((0..cols).map(|s| component(f, a, i, &jets[s], l)).collect());
        }
    }
    Ok(JetMatrix { k, labels, matrix: ExactMatrix::from_rows(cols, rows) })
}

/// Coefficient of `t^l` in component `col` of `A^T c`.
fn component<F: Field>(f: &F, a: &ExactMatrix<F::Elem>, col: usize, c: &[Vec<F::Elem>], l: usize) -> F::Elem {
    let mut acc = f.zero();
    for (i, ci) in c.iter().enumerate() {
        let w = a.get(i, col);
        if !f.is_zero(w) {
            acc = f.add(&acc, &f.mul(w, &ci[l]));
        }
    }
    acc
}

/// `rank(jet_matrix) - 1`; `-1` at a base point of the system.
pub fn osc_dim<F: Field>(c: &Curve<F>, v: &SectionBasis<F::Elem>, x: &ScrollPoint<F::Elem>, k: usize) -> Result<i64> {
    Ok(jet_matrix(c, v, x, k)?.rank(c.field()) as i64 - 1)
}

/// Directions of one fiber whose jet rank falls below a threshold.
#[derive(Clone, Debug)]
pub enum Deficiency<E> {
    None,
    All,
    /// The projectivization of a proper nonzero subspace.
    Subspace(Echelon<E>),
}

impl<E: Clone + Eq> Deficiency<E> {
    pub fn is_empty(&self) -> bool {
        matches!(self, Deficiency::None)
    }

    pub fn contains<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> bool {
        match self {
            Deficiency::None => false,
            Deficiency::All => true,
            Deficiency::Subspace(s) => s.contains(f, v.to_vec()),
        }
    }

    /// The deficient directions as a subspace of `F^r` (zero when empty).
    pub fn span<F: Field<Elem = E>>(&self, f: &F, r: usize) -> Echelon<E> {
        match self {
            Deficiency::None => Echelon::new(r),
            Deficiency::All => Echelon::from_rows(f, r, (0..r).map(|i| unit(f, r, i))),
            Deficiency::Subspace(s) => s.clone(),
        }
    }

    pub fn same_as<F: Field<Elem = E>>(&self, f: &F, other: &Self, r: usize) -> bool {
        self.span(f, r).same_span(f, &other.span(f, r))
    }
}

fn unit<F: Field>(f: &F, r: usize, i: usize) -> Vec<F::Elem> {
    let mut v = vec![f.zero(); r];
    v[i] = f.one();
    v
}

/// Jet rank of every direction of one fiber at one order.
///
/// The row space of the jet matrix at `v` is the span of all coefficients
/// below order `k` together with `Σ v_i c_{i,k}`, so the rank is
/// `lower_rank + [Σ v_i res_i ≠ 0]` with `res_i` the residue of `c_{i,k}`
/// modulo the lower rows.
#[derive(Clone, Debug)]
pub struct FiberLevel<E> {
    pub k: usize,
    pub lower_rank: usize,
    pub residues: Vec<Vec<E>>,
    /// `{v : Σ v_i res_i = 0}`.
    pub kernel: Echelon<E>,
}

impl<E: Clone + Eq> FiberLevel<E> {
    pub fn rank_at<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> usize {
        let n = self.residues.first().map_or(0, Vec::len);
        let mut top = vec![f.zero(); n];
        for (vi, res) in v.iter().zip(&self.residues) {
            if f.is_zero(vi) {
                continue;
            }
            for (x, y) in top.iter_mut().zip(res) {
                *x = f.add(x, &f.mul(vi, y));
            }
        }
        self.lower_rank + usize::from(top.iter().any(|a| !f.is_zero(a)))
    }

    /// The largest rank over directions of the fiber.
    pub fn max_rank(&self) -> usize {
        self.lower_rank + usize::from(self.kernel.rank() < self.kernel.cols())
    }

    /// Directions with rank below `threshold`.
    pub fn deficiency(&self, threshold: usize) -> Deficiency<E> {
        let r = self.kernel.cols();
        if self.lower_rank + 1 < threshold {
            Deficiency::All
        } else if self.lower_rank >= threshold || self.kernel.rank() == 0 {
            Deficiency::None
        } else if self.kernel.rank() == r {
            Deficiency::All
        } else {
            Deficiency::Subspace(self.kernel.clone())
        }
    }
}

/// Normalized Taylor data of a system at one place, `c[s][i][l]` for
/// `l <= kmax`.
#[derive(Clone, Debug)]
pub struct FiberJets<E: Ord> {
    pub place: Place<E>,
    pub rank: usize,
    pub dim: usize,
    pub kmax: usize,
    pub coeffs: Vec<Vec<Vec<E>>>,
}

impl<E: Clone + Ord> FiberJets<E> {
    pub fn compute<F: Field<Elem = E>>(c: &Curve<F>, v: &SectionBasis<E>, p: &Place<E>, kmax: usize) -> Result<Self> {
        check_order(c.field(), kmax)?;
        Ok(FiberJets { place: p.clone(), rank: v.rank(), dim: v.dim(), kmax, coeffs: v.normalized_jets(c, p, kmax + 1) })
    }

    /// Row `(i, l)`: coefficient of `t^l` in component `i`, across sections.
    fn row(&self, i: usize, l: usize) -> Vec<E> {
        self.coeffs.iter().map(|s| s[i][l].clone()).collect()
    }

    pub fn level<F: Field<Elem = E>>(&self, f: &F, k: usize) -> FiberLevel<E> {
        let mut lower = Echelon::new(self.dim);
        for l in 0..k {
            for i in 0..self.rank {
                lower.insert(f, self.row(i, l));
            }
        }
        let residues: Vec<Vec<E>> = (0..self.rank).map(|i| lower.reduce(f, self.row(i, k))).collect();
        let kernel = if self.dim == 0 {
            Echelon::from_rows(f, self.rank, (0..self.rank).map(|i| unit(f, self.rank, i)))
        } else {
            let t = ExactMatrix::from_rows(self.rank, (0..self.dim).map(|s| residues.iter().map(|r| r[s].clone()).collect()).collect());
            Echelon::from_rows(f, self.rank, t.kernel(f))
        };
        FiberLevel { k, lower_rank: lower.rank(), residues, kernel }
    }

    pub fn levels<F: Field<Elem = E>>(&self, f: &F) -> Vec<FiberLevel<E>> {
        (0..=self.kmax).map(|k| self.level(f, k)).collect()
    }
}

/// Jet rank at `x` through the fiber decomposition; equals the rank of
/// `jet_matrix`.
pub fn fiber_rank<F: Field>(c: &Curve<F>, v: &SectionBasis<F::Elem>, x: &ScrollPoint<F::Elem>, k: usize) -> Result<usize> {
    let fj = FiberJets::compute(c, v, &x.place, k)?;
    Ok(fj.level(c.field(), k).rank_at(c.field(), &x.direction))
}

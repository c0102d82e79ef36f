//! Vector bundles as families of local lattices inside `K(C)^r`.
//!
//! A bundle `E` is the sheaf of rational vectors `f` with `B_p^{-1} f` regular
//! at every place `p`, where `B_p` is an invertible matrix of Laurent
//! polynomials in the uniformiser at `p`. Places with no stored lattice have
//! `B_p = I`. The columns of `B_p` form the local frame used for normalized
//! fiber values and scroll directions.

use std::collections::BTreeMap;

use crate::ellcurve::curve::Place;
use crate::ellcurve::divisor::Divisor;
use crate::error::{Error, Result};
use crate::exactlin::field::Field;
use crate::exactlin::laurent::LaurentSeries;
use crate::exactlin::matrix::ExactMatrix;

/// Square or rectangular matrix of exact Laurent polynomials.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LMat<E> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<LaurentSeries<E>>,
}

impl<E: Clone + Eq> LMat<E> {
    pub fn identity<F: Field<Elem = E>>(f: &F, n: usize) -> Self {
        Self::diag_monomials(f, &vec![0; n])
    }

    /// `diag(t^{e_0}, t^{e_1}, ...)`.
    pub fn diag_monomials<F: Field<Elem = E>>(f: &F, exps: &[i64]) -> Self {
        let n = exps.len();
        let mut data = vec![LaurentSeries::exact_zero(); n * n];
        for (i, &e) in exps.iter().enumerate() {
            data[i * n + i] = LaurentSeries::monomial(f, f.one(), e);
        }
        LMat { rows: n, cols: n, data }
    }

    pub fn from_constant<F: Field<Elem = E>>(f: &F, m: &ExactMatrix<E>) -> Self {
        let data = m.entries().iter().map(|c| LaurentSeries::exact_constant(f, c.clone())).collect();
        LMat { rows: m.rows(), cols: m.cols(), data }
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentSeries<E> {
        &self.data[i * self.cols + j]
    }

    pub fn mul<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut data = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = LaurentSeries::exact_zero();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    let b = other.get(k, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(f, &a.mul(f, b));
                    }
                }
                data.push(acc);
            }
        }
        LMat { rows: self.rows, cols: other.cols, data }
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        LMat { rows: self.cols, cols: self.rows, data }
    }

    /// Multiplication by `t^n`.
    pub fn shift(&self, n: i64) -> Self {
        LMat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a.shift(n)).collect() }
    }

    /// Kronecker product; row index `i*other.rows + k`.
    pub fn kron<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut data = vec![LaurentSeries::exact_zero(); rows * cols];
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        data[(i * other.rows + k) * cols + j * other.cols + l] = a.mul(f, other.get(k, l));
                    }
                }
            }
        }
        LMat { rows, cols, data }
    }

    /// Smallest valuation in row `i`.
    pub fn row_min_val(&self, i: usize) -> i64 {
        (0..self.cols).filter_map(|j| self.get(i, j).valuation()).min().expect("zero row in lattice matrix")
    }

    /// Smallest valuation in column `j`.
    pub fn col_min_val(&self, j: usize) -> i64 {
        (0..self.rows).filter_map(|i| self.get(i, j).valuation()).min().expect("zero column in lattice matrix")
    }

    /// Diagonal with a single monomial per diagonal entry.
    pub fn is_monomial_diagonal(&self) -> bool {
        (0..self.rows).all(|i| {
            (0..self.cols).all(|j| {
                let a = self.get(i, j);
                if i == j {
                    a.coeffs.len() == 1
                } else {
                    a.is_zero()
                }
            })
        })
    }

    pub fn is_identity<F: Field<Elem = E>>(&self, f: &F) -> bool {
        *self == Self::identity(f, self.rows)
    }

    /// Coefficient of `t^0` of every entry.
    pub fn constant_part<F: Field<Elem = E>>(&self, f: &F) -> ExactMatrix<E> {
        ExactMatrix::new(self.rows, self.cols, self.data.iter().map(|a| a.coeff(f, 0)).collect()).unwrap()
    }
}

/// `B_p` together with `B_p^{-1}` and `val det B_p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LocalLattice<E> {
    pub basis: LMat<E>,
    pub inverse: LMat<E>,
    pub det_val: i64,
}

impl<E: Clone + Eq> LocalLattice<E> {
    pub fn identity<F: Field<Elem = E>>(f: &F, r: usize) -> Self {
        LocalLattice { basis: LMat::identity(f, r), inverse: LMat::identity(f, r), det_val: 0 }
    }

    fn twist(&self, n: i64) -> Self {
        // B -> t^{-n} B
        LocalLattice {
            basis: self.basis.shift(-n),
            inverse: self.inverse.shift(n),
            det_val: self.det_val - n * self.basis.rows as i64,
        }
    }

    fn dual(&self) -> Self {
        LocalLattice { basis: self.inverse.transpose(), inverse: self.basis.transpose(), det_val: -self.det_val }
    }

    /// `B -> B·A·D` for constant invertible `A` and monomial diagonal `D`.
    fn right_multiply<F: Field<Elem = E>>(&self, f: &F, a: &ExactMatrix<E>, d_exps: &[i64]) -> Self {
        let ainv = a.inverse(f).expect("frame change is invertible");
        let neg: Vec<i64> = d_exps.iter().map(|e| -e).collect();
        let basis = self.basis.mul(f, &LMat::from_constant(f, a)).mul(f, &LMat::diag_monomials(f, d_exps));
        let inverse =
            LMat::diag_monomials(f, &neg).mul(f, &LMat::from_constant(f, &ainv)).mul(f, &self.inverse);
        LocalLattice { basis, inverse, det_val: self.det_val + d_exps.iter().sum::<i64>() }
    }
}

/// Index of the first nonzero coordinate.
pub fn pivot_index<F: Field>(f: &F, v: &[F::Elem]) -> Option<usize> {
    v.iter().position(|a| !f.is_zero(a))
}

/// Frame change with first column `v` followed by the standard vectors other
/// than the pivot of `v`.
pub fn frame_with_first_column<F: Field>(f: &F, v: &[F::Elem]) -> ExactMatrix<F::Elem> {
    let r = v.len();
    let j = pivot_index(f, v).expect("nonzero direction");
    let mut m = ExactMatrix::zeros(f, r, r);
    for (i, vi) in v.iter().enumerate() {
        m.set(i, 0, vi.clone());
    }
    let mut col = 1;
    for i in 0..r {
        if i != j {
            m.set(i, col, f.one());
            col += 1;
        }
    }
    m
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bundle<E: Ord> {
    rank: usize,
    local: BTreeMap<Place<E>, LocalLattice<E>>,
}

impl<E: Clone + Ord> Bundle<E> {
    pub fn trivial(rank: usize) -> Self {
        assert!(rank >= 1);
        Bundle { rank, local: BTreeMap::new() }
    }

    /// `⊕ O(D_i)`.
    pub fn split<F: Field<Elem = E>>(f: &F, factors: &[Divisor<E>]) -> Self {
        let mut b = Self::trivial(factors.len());
        let mut places: Vec<&Place<E>> = factors.iter().flat_map(|d| d.support()).collect();
        places.sort();
        places.dedup();
        for p in places {
            let exps: Vec<i64> = factors.iter().map(|d| -d.get(p)).collect();
            let basis = LMat::diag_monomials(f, &exps);
            let inverse = LMat::diag_monomials(f, &exps.iter().map(|e| -e).collect::<Vec<_>>());
            b.local.insert(p.clone(), LocalLattice { basis, inverse, det_val: exps.iter().sum() });
        }
        b
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn degree(&self) -> i64 {
        -self.local.values().map(|l| l.det_val).sum::<i64>()
    }

    /// Places where the lattice differs from the trivial one.
    pub fn places(&self) -> impl Iterator<Item = &Place<E>> {
        self.local.keys()
    }

    pub fn lattice<F: Field<Elem = E>>(&self, f: &F, p: &Place<E>) -> LocalLattice<E> {
        self.local.get(p).cloned().unwrap_or_else(|| LocalLattice::identity(f, self.rank))
    }

    /// A divisor whose line bundle is `det E`.
    pub fn det_divisor(&self) -> Divisor<E> {
        Divisor::from_pairs(self.local.iter().map(|(p, l)| (p.clone(), -l.det_val)))
    }

    fn set_lattice<F: Field<Elem = E>>(&mut self, f: &F, p: Place<E>, l: LocalLattice<E>) {
        if l.basis.is_identity(f) {
            self.local.remove(&p);
        } else {
            self.local.insert(p, l);
        }
    }

    /// `E ⊗ O(T)`.
    pub fn twist<F: Field<Elem = E>>(&self, f: &F, t: &Divisor<E>) -> Self {
        let mut out = self.clone();
        for (p, &m) in t.iter() {
            let l = self.lattice(f, p).twist(m);
            out.set_lattice(f, p.clone(), l);
        }
        out
    }

    pub fn dual(&self) -> Self {
        Bundle { rank: self.rank, local: self.local.iter().map(|(p, l)| (p.clone(), l.dual())).collect() }
    }

    /// Sections of `E` whose normalized value at `q` pairs to zero with
    /// `codirection`. Degree drops by one.
    pub fn modify<F: Field<Elem = E>>(&self, f: &F, q: &Place<E>, codirection: &[E]) -> Result<Self> {
        check_vector(f, codirection, self.rank)?;
        let j = pivot_index(f, codirection).unwrap();
        let cj_inv = f.inv(&codirection[j]).unwrap();
        let mut a = ExactMatrix::identity(f, self.rank);
        for (i, ci) in codirection.iter().enumerate() {
            if i != j {
                a.set(j, i, f.neg(&f.mul(ci, &cj_inv)));
            }
        }
        let mut exps = vec![0; self.rank];
        exps[j] = 1;
        let l = self.lattice(f, q).right_multiply(f, &a, &exps);
        let mut out = self.clone();
        out.set_lattice(f, q.clone(), l);
        Ok(out)
    }

    /// Sections of `E` allowed a simple pole at `p` along `direction`.
    /// Degree rises by one.
    pub fn elementary_transform<F: Field<Elem = E>>(&self, f: &F, p: &Place<E>, direction: &[E]) -> Result<Self> {
        check_vector(f, direction, self.rank)?;
        let a = frame_with_first_column(f, direction);
        let mut exps = vec![0; self.rank];
        exps[0] = -1;
        let l = self.lattice(f, p).right_multiply(f, &a, &exps);
        let mut out = self.clone();
        out.set_lattice(f, p.clone(), l);
        Ok(out)
    }

    /// Divisors `A_i` with `E ⊆ ⊕ O(A_i)` in the ambient frame.
    pub fn pole_bounds(&self) -> Vec<Divisor<E>> {
        let mut bounds = vec![Divisor::zero(); self.rank];
        for (p, lat) in &self.local {
            for (i, b) in bounds.iter_mut().enumerate() {
                b.add_point(p.clone(), -lat.basis.row_min_val(i));
            }
        }
        bounds
    }

    /// `Hom(self, other) = self^* ⊗ other`, components indexed `i*r2 + k`.
    pub fn hom<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        let (r1, r2) = (self.rank, other.rank);
        let mut out = Bundle::trivial(r1 * r2);
        let mut places: Vec<&Place<E>> = self.places().chain(other.places()).collect();
        places.sort();
        places.dedup();
        for p in places {
            let a = self.lattice(f, p);
            let b = other.lattice(f, p);
            let basis = a.inverse.transpose().kron(f, &b.basis);
            let inverse = a.basis.transpose().kron(f, &b.inverse);
            let det_val = -(r2 as i64) * a.det_val + (r1 as i64) * b.det_val;
            out.set_lattice(f, p.clone(), LocalLattice { basis, inverse, det_val });
        }
        out
    }

    /// Whether every local lattice is diagonal in monomials, i.e. the bundle
    /// is visibly a direct sum of line bundles in its frame.
    pub fn is_visibly_split(&self) -> bool {
        self.local.values().all(|l| l.basis.is_monomial_diagonal())
    }
}

pub fn check_vector<F: Field>(f: &F, v: &[F::Elem], r: usize) -> Result<()> {
    if v.len() != r {
        return Err(Error::Input(format!("vector has length {}, expected rank {r}", v.len())));
    }
    if v.iter().any(|a| !f.contains(a)) {
        return Err(Error::Input("vector entries are not field elements".into()));
    }
    if pivot_index(f, v).is_none() {
        return Err(Error::Input("vector must be nonzero".into()));
    }
    Ok(())
}

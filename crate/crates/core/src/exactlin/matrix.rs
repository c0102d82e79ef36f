//! Dense matrices over a [`Field`] with deterministic row reduction.

use crate::error::{Error, Result};
use crate::exactlin::field::Field;

/// Row-major dense matrix. The field is passed to each operation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactMatrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> ExactMatrix<E> {
    pub fn new(rows: usize, cols: usize, data: Vec<E>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Input(format!(
                "matrix data has {} entries, expected {}x{}",
                data.len(),
                rows,
                cols
            )));
        }
        Ok(ExactMatrix { rows, cols, data })
    }

    pub fn filled(rows: usize, cols: usize, value: E) -> Self {
        ExactMatrix { rows, cols, data: vec![value; rows * cols] }
    }

    /// Rows must all have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<E>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend(r);
        }
        ExactMatrix { rows: n, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[E] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        ExactMatrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let rows = idx.iter().map(|&i| self.row(i).to_vec()).collect();
        Self::from_rows(self.cols, rows)
    }
}

impl<E: Clone + Eq> ExactMatrix<E> {
    pub fn zeros<F: Field<Elem = E>>(f: &F, rows: usize, cols: usize) -> Self {
        Self::filled(rows, cols, f.zero())
    }

    pub fn identity<F: Field<Elem = E>>(f: &F, n: usize) -> Self {
        let mut m = Self::zeros(f, n, n);
        for i in 0..n {
            m.set(i, i, f.one());
        }
        m
    }

    pub fn mul<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if f.is_zero(b) {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    out.data[idx] = f.add(&out.data[idx], &f.mul(a, b));
                }
            }
        }
        out
    }

    pub fn mul_vec<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> Vec<E> {
        assert_eq!(self.cols, v.len());
        (0..self.rows).map(|i| dot(f, self.row(i), v)).collect()
    }

    /// Reduced row echelon form and the pivot columns.
    ///
    /// Pivots are taken in the leftmost column that still has a nonzero entry,
    /// using the first row (from the top of the unreduced block) that is nonzero there.
    pub fn rref<F: Field<Elem = E>>(&self, f: &F) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !f.is_zero(m.get(i, c))) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    m.data.swap(pr * m.cols + j, r * m.cols + j);
                }
            }
            let inv = f.inv(m.get(r, c)).expect("pivot is nonzero");
            for j in c..m.cols {
                let v = f.mul(m.get(r, j), &inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c).clone();
                if f.is_zero(&factor) {
                    continue;
                }
                for j in c..m.cols {
                    let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank<F: Field<Elem = E>>(&self, f: &F) -> usize {
        Echelon::from_rows(f, self.cols, self.row_vecs()).rank()
    }

    /// Basis of the right kernel, one vector per free column in increasing
    /// order; the free coordinate is 1 and other free coordinates are 0.
    pub fn kernel<F: Field<Elem = E>>(&self, f: &F) -> Vec<Vec<E>> {
        let (r, pivots) = self.rref(f);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = f.neg(r.get(i, free));
            }
            out.push(v);
        }
        out
    }

    /// Inverse of a square matrix; `None` when singular.
    pub fn inverse<F: Field<Elem = E>>(&self, f: &F) -> Option<Self> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let mut aug = Self::zeros(f, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, f.one());
        }
        let (r, pivots) = aug.rref(f);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut out = Self::zeros(f, n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, r.get(i, n + j).clone());
            }
        }
        Some(out)
    }

    pub fn is_zero<F: Field<Elem = E>>(&self, f: &F) -> bool {
        self.data.iter().all(|a| f.is_zero(a))
    }
}

pub fn dot<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> F::Elem {
    let mut acc = f.zero();
    for (x, y) in a.iter().zip(b) {
        if !f.is_zero(x) && !f.is_zero(y) {
            acc = f.add(&acc, &f.mul(x, y));
        }
    }
    acc
}

/// Rank and reduced kernel basis, after checking every entry belongs to `f`.
pub fn mat_rank_kernel<F: Field>(f: &F, m: &ExactMatrix<F::Elem>) -> Result<(usize, Vec<Vec<F::Elem>>)> {
    if let Some(bad) = m.entries().iter().find(|a| !f.contains(a)) {
        return Err(Error::Input(format!("matrix entry {bad:?} is not an element of the matrix field")));
    }
    let kernel = m.kernel(f);
    Ok((m.cols() - kernel.len(), kernel))
}

/// Incrementally maintained reduced row space.
///
/// Stored rows are fully reduced against each other, each normalized to 1 at
/// its pivot, so `reduce` gives a canonical residual for each coset.
#[derive(Clone, Debug)]
pub struct Echelon<E> {
    cols: usize,
    rows: Vec<(usize, Vec<E>)>,
}

impl<E: Clone + Eq> Echelon<E> {
    pub fn new(cols: usize) -> Self {
        Echelon { cols, rows: Vec::new() }
    }

    pub fn from_rows<F: Field<Elem = E>>(f: &F, cols: usize, rows: impl IntoIterator<Item = Vec<E>>) -> Self {
        let mut e = Self::new(cols);
        for r in rows {
            e.insert(f, r);
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn basis(&self) -> impl Iterator<Item = &Vec<E>> {
        self.rows.iter().map(|(_, r)| r)
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|(p, _)| *p).collect()
    }

    pub fn reduce<F: Field<Elem = E>>(&self, f: &F, mut v: Vec<E>) -> Vec<E> {
        for (p, row) in &self.rows {
            let c = v[*p].clone();
            if f.is_zero(&c) {
                continue;
            }
            for (x, y) in v.iter_mut().zip(row) {
                if !f.is_zero(y) {
                    *x = f.sub(x, &f.mul(&c, y));
                }
            }
        }
        v
    }

    /// Basis rows ordered by pivot column.
    pub fn sorted_basis(&self) -> Vec<Vec<E>> {
        let mut rows = self.rows.clone();
        rows.sort_by_key(|(p, _)| *p);
        rows.into_iter().map(|(_, r)| r).collect()
    }

    pub fn is_subspace_of<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> bool {
        self.basis().all(|b| other.contains(f, b.clone()))
    }

    pub fn same_span<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> bool {
        self.rank() == other.rank() && self.is_subspace_of(f, other)
    }

    pub fn contains<F: Field<Elem = E>>(&self, f: &F, v: Vec<E>) -> bool {
        self.reduce(f, v).iter().all(|a| f.is_zero(a))
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert<F: Field<Elem = E>>(&mut self, f: &F, v: Vec<E>) -> bool {
        assert_eq!(v.len(), self.cols);
        let mut v = self.reduce(f, v);
        let Some(p) = v.iter().position(|a| !f.is_zero(a)) else {
            return false;
        };
        let inv = f.inv(&v[p]).unwrap();
        for x in v.iter_mut() {
            *x = f.mul(x, &inv);
        }
        for (_, row) in self.rows.iter_mut() {
            let c = row[p].clone();
            if f.is_zero(&c) {
                continue;
            }
            for (x, y) in row.iter_mut().zip(&v) {
                if !f.is_zero(y) {
                    *x = f.sub(x, &f.mul(&c, y));
                }
            }
        }
        let pos = self.rows.iter().position(|(q, _)| *q > p).unwrap_or(self.rows.len());
        self.rows.insert(pos, (p, v));
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::field::{FiniteField, Rationals};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn rank_kernel_examples() {
        let f = FiniteField::prime(7).unwrap();
        let id = ExactMatrix::identity(&f, 2);
        assert_eq!(mat_rank_kernel(&f, &id).unwrap(), (2, vec![]));

        let z = ExactMatrix::zeros(&f, 3, 4);
        let (r, k) = mat_rank_kernel(&f, &z).unwrap();
        assert_eq!(r, 0);
        assert_eq!(k.len(), 4);
        assert_eq!(k[2], vec![0, 0, 1, 0]);

        let m = ExactMatrix::new(2, 2, vec![1, 2, 2, 4]).unwrap();
        assert_eq!(mat_rank_kernel(&f, &m).unwrap(), (1, vec![vec![5, 1]]));
        assert!(m.inverse(&f).is_none());
        let a = ExactMatrix::new(2, 2, vec![1, 2, 3, 4]).unwrap();
        assert_eq!(a.mul(&f, &a.inverse(&f).unwrap()), ExactMatrix::identity(&f, 2));
    }

    #[test]
    fn foreign_entries_rejected() {
        let f = FiniteField::prime(7).unwrap();
        let m = ExactMatrix::new(1, 2, vec![1, 9]).unwrap();
        assert!(matches!(mat_rank_kernel(&f, &m), Err(Error::Input(_))));
    }

    #[test]
    fn random_rank_transpose_and_kernel() {
        let f = FiniteField::prime(5).unwrap();
        let q = Rationals;
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for t in 0..60 {
            let n = 1 + t % 5;
            let mut m = ExactMatrix::zeros(&f, n, n);
            for i in 0..n {
                for j in 0..n {
                    // sparse-ish so low rank shows up
                    if f.random(&mut rng) < 3 {
                        m.set(i, j, f.random(&mut rng));
                    }
                }
            }
            assert_eq!(m.rank(&f), m.transpose().rank(&f));
            let (r, ker) = mat_rank_kernel(&f, &m).unwrap();
            assert_eq!(r, m.rank(&f));
            for v in ker {
                assert!(m.mul_vec(&f, &v).iter().all(|a| *a == 0));
            }
            let mq = ExactMatrix::new(n, n, m.entries().iter().map(|&a| q.from_int(a as i64 - 2)).collect()).unwrap();
            for v in mq.kernel(&q) {
                assert!(mq.mul_vec(&q, &v).iter().all(|a| q.is_zero(a)));
            }
            assert_eq!(mq.rank(&q), mq.transpose().rank(&q));
        }
    }

    #[test]
    fn echelon_residuals_are_canonical() {
        let f = FiniteField::prime(7).unwrap();
        let e = Echelon::from_rows(&f, 3, vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]);
        assert_eq!(e.rank(), 2);
        assert!(e.contains(&f, vec![1, 3, 4]));
        assert_eq!(e.reduce(&f, vec![0, 0, 1]), vec![0, 0, 1]);
    }
}

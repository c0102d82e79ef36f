//! Dense univariate polynomials, coefficients low to high.

use crate::exactlin::field::Field;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly<E> {
    /// No trailing zeros; the zero polynomial is empty.
    pub coeffs: Vec<E>,
}

impl<E: Clone + Eq> Poly<E> {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn from_coeffs<F: Field<Elem = E>>(f: &F, mut coeffs: Vec<E>) -> Self {
        while coeffs.last().is_some_and(|c| f.is_zero(c)) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant<F: Field<Elem = E>>(f: &F, c: E) -> Self {
        Self::from_coeffs(f, vec![c])
    }

    pub fn one<F: Field<Elem = E>>(f: &F) -> Self {
        Self::constant(f, f.one())
    }

    /// `x - a`.
    pub fn linear_root<F: Field<Elem = E>>(f: &F, a: &E) -> Self {
        Poly { coeffs: vec![f.neg(a), f.one()] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&E> {
        self.coeffs.last()
    }

    pub fn coeff<F: Field<Elem = E>>(&self, f: &F, i: usize) -> E {
        self.coeffs.get(i).cloned().unwrap_or_else(|| f.zero())
    }

    pub fn add<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n).map(|i| f.add(&self.coeff(f, i), &other.coeff(f, i))).collect();
        Self::from_coeffs(f, c)
    }

    pub fn neg<F: Field<Elem = E>>(&self, f: &F) -> Self {
        Poly { coeffs: self.coeffs.iter().map(|c| f.neg(c)).collect() }
    }

    pub fn sub<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        self.add(f, &other.neg(f))
    }

    pub fn scale<F: Field<Elem = E>>(&self, f: &F, c: &E) -> Self {
        Self::from_coeffs(f, self.coeffs.iter().map(|a| f.mul(a, c)).collect())
    }

    pub fn mul<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(&out[i + j], &f.mul(a, b));
            }
        }
        Self::from_coeffs(f, out)
    }

    pub fn pow<F: Field<Elem = E>>(&self, f: &F, e: u32) -> Self {
        let mut acc = Self::one(f);
        for _ in 0..e {
            acc = acc.mul(f, self);
        }
        acc
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divrem<F: Field<Elem = E>>(&self, f: &F, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("polynomial division by zero");
        let lead_inv = f.inv(d.lead().unwrap()).unwrap();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![f.zero(); r.len() - dd];
        for s in (0..q.len()).rev() {
            let c = f.mul(&r[s + dd], &lead_inv);
            if f.is_zero(&c) {
                continue;
            }
            for (i, di) in d.coeffs.iter().enumerate() {
                r[s + i] = f.sub(&r[s + i], &f.mul(&c, di));
            }
            q[s] = c;
        }
        r.truncate(dd);
        (Self::from_coeffs(f, q), Self::from_coeffs(f, r))
    }

    pub fn monic<F: Field<Elem = E>>(&self, f: &F) -> Self {
        match self.lead() {
            None => Self::zero(),
            Some(l) => self.scale(f, &f.inv(l).unwrap()),
        }
    }

    /// Monic gcd; zero only if both inputs are zero.
    pub fn gcd<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(f, &b);
            a = b;
            b = r;
        }
        a.monic(f)
    }

    pub fn eval<F: Field<Elem = E>>(&self, f: &F, x: &E) -> E {
        let mut acc = f.zero();
        for c in self.coeffs.iter().rev() {
            acc = f.add(&f.mul(&acc, x), c);
        }
        acc
    }

    pub fn derivative<F: Field<Elem = E>>(&self, f: &F) -> Self {
        let c = self.coeffs.iter().enumerate().skip(1).map(|(i, a)| f.mul(&f.from_int(i as i64), a)).collect();
        Self::from_coeffs(f, c)
    }

    /// Multiplicity of `a` as a root.
    pub fn root_multiplicity<F: Field<Elem = E>>(&self, f: &F, a: &E) -> usize {
        if self.is_zero() {
            return usize::MAX;
        }
        let lin = Self::linear_root(f, a);
        let mut p = self.clone();
        let mut m = 0;
        loop {
            let (q, r) = p.divrem(f, &lin);
            if !r.is_zero() {
                return m;
            }
            p = q;
            m += 1;
        }
    }

    /// Taylor coefficients at `a`: the polynomial in `u` with `p(a + u)`.
    pub fn shift<F: Field<Elem = E>>(&self, f: &F, a: &E) -> Self {
        let mut out = Self::zero();
        let xa = Poly { coeffs: vec![a.clone(), f.one()] };
        for c in self.coeffs.iter().rev() {
            out = out.mul(f, &xa).add(f, &Self::constant(f, c.clone()));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::field::FiniteField;

    #[test]
    fn divrem_and_gcd() {
        let f = FiniteField::prime(7).unwrap();
        // (x-1)(x-2) and (x-1)(x-3)
        let a = Poly::linear_root(&f, &1).mul(&f, &Poly::linear_root(&f, &2));
        let b = Poly::linear_root(&f, &1).mul(&f, &Poly::linear_root(&f, &3));
        assert_eq!(a.gcd(&f, &b), Poly::linear_root(&f, &1));
        let (q, r) = a.divrem(&f, &Poly::linear_root(&f, &2));
        assert!(r.is_zero());
        assert_eq!(q, Poly::linear_root(&f, &1));
        assert_eq!(a.mul(&f, &a).root_multiplicity(&f, &1), 2);
    }

    #[test]
    fn shift_is_taylor_expansion() {
        let f = FiniteField::prime(11).unwrap();
        let p = Poly::from_coeffs(&f, vec![2, 0, 0, 1]); // x^3 + 2
        let s = p.shift(&f, &3);
        for u in 0..11u32 {
            assert_eq!(s.eval(&f, &u), p.eval(&f, &f.add(&3, &u)));
        }
    }
}

//! Truncated Laurent series in one variable `t`.
//!
//! A series is known modulo `t^precision`. Laurent polynomials are the series
//! whose precision is [`EXACT`]; they are used for local frame matrices.

use crate::error::{Error, Result};
use crate::exactlin::field::Field;

/// Precision value marking an exactly known (finite) series.
pub const EXACT: i64 = i64::MAX / 4;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentSeries<E> {
    /// Exponent of `coeffs[0]`; equals `precision` when the series is zero
    /// within its precision.
    pub valuation: i64,
    pub coeffs: Vec<E>,
    pub precision: i64,
}

/// Exact Laurent polynomial: a series with precision [`EXACT`].
pub type LaurentPoly<E> = LaurentSeries<E>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LaurentOp {
    Mul,
    Add,
    Invert,
    Truncate(i64),
}

impl<E: Clone + Eq> LaurentSeries<E> {
    /// Normalizes: strips leading zeros, truncates at the precision and drops
    /// trailing zeros of exact series.
    pub fn new<F: Field<Elem = E>>(f: &F, valuation: i64, coeffs: Vec<E>, precision: i64) -> Self {
        let precision = precision.min(EXACT);
        let lead = coeffs.iter().position(|c| !f.is_zero(c));
        let Some(lead) = lead else {
            return Self::zero_to(precision);
        };
        let valuation = valuation + lead as i64;
        if valuation >= precision {
            return Self::zero_to(precision);
        }
        let mut coeffs: Vec<E> = coeffs.into_iter().skip(lead).collect();
        let room = (precision - valuation).min(coeffs.len() as i64) as usize;
        coeffs.truncate(room);
        if precision == EXACT {
            while coeffs.last().is_some_and(|c| f.is_zero(c)) {
                coeffs.pop();
            }
        }
        LaurentSeries { valuation, coeffs, precision }
    }

    /// Zero modulo `t^precision`.
    pub fn zero_to(precision: i64) -> Self {
        LaurentSeries { valuation: precision, coeffs: Vec::new(), precision }
    }

    pub fn exact_zero() -> Self {
        Self::zero_to(EXACT)
    }

    /// `c · t^n`, exactly.
    pub fn monomial<F: Field<Elem = E>>(f: &F, c: E, n: i64) -> Self {
        Self::new(f, n, vec![c], EXACT)
    }

    pub fn exact_constant<F: Field<Elem = E>>(f: &F, c: E) -> Self {
        Self::monomial(f, c, 0)
    }

    pub fn is_exact(&self) -> bool {
        self.precision >= EXACT
    }

    /// Zero within the known precision.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` if the series is zero within its precision.
    pub fn valuation(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.valuation)
    }

    /// Coefficient of `t^i`; `i` must be below the precision.
    pub fn coeff<F: Field<Elem = E>>(&self, f: &F, i: i64) -> E {
        debug_assert!(i < self.precision, "coefficient t^{i} beyond precision {}", self.precision);
        if i < self.valuation {
            return f.zero();
        }
        self.coeffs.get((i - self.valuation) as usize).cloned().unwrap_or_else(|| f.zero())
    }

    pub fn add<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        let prec = self.precision.min(other.precision);
        if self.is_zero() {
            return other.truncate(prec);
        }
        if other.is_zero() {
            return self.truncate(prec);
        }
        let lo = self.valuation.min(other.valuation);
        if lo >= prec {
            return Self::zero_to(prec);
        }
        let top_a = self.valuation + self.coeffs.len() as i64;
        let top_b = other.valuation + other.coeffs.len() as i64;
        let hi = top_a.max(top_b).min(prec);
        let c = (lo..hi.max(lo))
            .map(|i| {
                let a = if i < self.precision { self.coeff(f, i) } else { f.zero() };
                let b = if i < other.precision { other.coeff(f, i) } else { f.zero() };
                f.add(&a, &b)
            })
            .collect();
        Self::new(f, lo, c, prec)
    }

    pub fn neg<F: Field<Elem = E>>(&self, f: &F) -> Self {
        LaurentSeries {
            valuation: self.valuation,
            coeffs: self.coeffs.iter().map(|c| f.neg(c)).collect(),
            precision: self.precision,
        }
    }

    pub fn sub<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        self.add(f, &other.neg(f))
    }

    pub fn scale<F: Field<Elem = E>>(&self, f: &F, c: &E) -> Self {
        Self::new(f, self.valuation, self.coeffs.iter().map(|a| f.mul(a, c)).collect(), self.precision)
    }

    /// Multiplication by `t^n`.
    pub fn shift(&self, n: i64) -> Self {
        let bump = |p: i64| if p >= EXACT { EXACT } else { p + n };
        LaurentSeries { valuation: bump(self.valuation), coeffs: self.coeffs.clone(), precision: bump(self.precision) }
    }

    pub fn mul<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        let prec = prec_add(self.precision, other.valuation).min(prec_add(other.precision, self.valuation));
        if self.is_zero() || other.is_zero() {
            return Self::zero_to(prec);
        }
        let v = self.valuation + other.valuation;
        let full = self.coeffs.len() + other.coeffs.len() - 1;
        let len = if prec >= EXACT { full } else { ((prec - v).max(0) as usize).min(full) };
        let mut out = vec![f.zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i >= len || f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(len - i) {
                out[i + j] = f.add(&out[i + j], &f.mul(a, b));
            }
        }
        Self::new(f, v, out, prec)
    }

    /// Inverse with the full relative precision of `self`.
    pub fn invert<F: Field<Elem = E>>(&self, f: &F) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Precision("cannot invert a series that is zero to its precision".into()));
        }
        if self.is_exact() {
            if self.coeffs.len() == 1 {
                let c = f.inv(&self.coeffs[0]).unwrap();
                return Ok(Self::monomial(f, c, -self.valuation));
            }
            return Err(Error::Precision("inverse of an exact non-monomial needs a precision".into()));
        }
        let rel = self.precision - self.valuation;
        Ok(self.invert_rel(f, rel))
    }

    /// Inverse known to `rel` terms beyond its leading term; works for exact
    /// inputs as well.
    pub fn invert_rel<F: Field<Elem = E>>(&self, f: &F, rel: i64) -> Self {
        assert!(!self.is_zero());
        let n = rel.max(0) as usize;
        let a0_inv = f.inv(&self.coeffs[0]).unwrap();
        let mut b: Vec<E> = Vec::with_capacity(n);
        for k in 0..n {
            if k == 0 {
                b.push(a0_inv.clone());
                continue;
            }
            let mut s = f.zero();
            for i in 1..=k.min(self.coeffs.len().saturating_sub(1)) {
                s = f.add(&s, &f.mul(&self.coeffs[i], &b[k - i]));
            }
            b.push(f.neg(&f.mul(&s, &a0_inv)));
        }
        let v = -self.valuation;
        Self::new(f, v, b, v + rel)
    }

    pub fn truncate(&self, n: i64) -> Self {
        if n >= self.precision {
            return self.clone();
        }
        let mut c = self.coeffs.clone();
        if n <= self.valuation {
            return Self::zero_to(n);
        }
        c.truncate((n - self.valuation) as usize);
        LaurentSeries { valuation: self.valuation, coeffs: c, precision: n }
    }

    /// Equality of the two series on their common precision.
    pub fn agrees_with<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> bool {
        let n = self.precision.min(other.precision);
        self.truncate(n).sub(f, &other.truncate(n)).is_zero()
    }

    /// Substitutes `t ↦ c·t`.
    pub fn rescale<F: Field<Elem = E>>(&self, f: &F, c: &E) -> Self {
        let mut p = f.pow(c, self.valuation.unsigned_abs());
        if self.valuation < 0 {
            p = f.inv(&p).unwrap();
        }
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(f.mul(a, &p));
            p = f.mul(&p, c);
        }
        Self::new(f, self.valuation, out, self.precision)
    }
}

fn prec_add(p: i64, v: i64) -> i64 {
    if p >= EXACT || v >= EXACT {
        EXACT
    } else {
        (p + v).min(EXACT)
    }
}

/// One binary/unary operation on series, as exposed to frontends.
pub fn laurent_arith<F: Field>(
    f: &F,
    a: &LaurentSeries<F::Elem>,
    b: Option<&LaurentSeries<F::Elem>>,
    op: LaurentOp,
) -> Result<LaurentSeries<F::Elem>> {
    let need_b = || b.ok_or_else(|| Error::Input("operation needs a second operand".into()));
    match op {
        LaurentOp::Mul => Ok(a.mul(f, need_b()?)),
        LaurentOp::Add => Ok(a.add(f, need_b()?)),
        LaurentOp::Invert => a.invert(f),
        LaurentOp::Truncate(n) => Ok(a.truncate(n)),
    }
}

//! Scalar fields: prime fields, small extension fields and the rationals.
//!
//! Every algorithm in the crate is generic over [`Field`]. Finite fields share
//! one runtime type, [`FiniteField`], whose elements are `u32` indices: for a
//! prime field the index is the residue itself, for an extension the index is
//! the base-`p` packing of the coefficient vector (constant term lowest), so the
//! prime subfield embeds as the identity on indices below `p`.

use std::fmt::Debug;
use std::hash::Hash;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, RngCore};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

/// Serializable description of a scalar field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FieldDesc {
    Prime { p: u32 },
    Extension { p: u32, degree: u32, modulus: Vec<u32> },
    Rationals,
}

pub trait Field: Clone + Debug + Send + Sync {
    type Elem: Clone + Eq + Ord + Hash + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_int(&self, n: i64) -> Self::Elem;
    /// 0 for the rationals.
    fn characteristic(&self) -> u64;
    /// Number of elements, `None` when infinite.
    fn order(&self) -> Option<u64>;
    /// Whether `a` is a canonical element of this field.
    fn contains(&self, a: &Self::Elem) -> bool;
    /// All elements of a finite field, zero first; empty for infinite fields.
    fn elements(&self) -> Vec<Self::Elem>;
    fn random(&self, rng: &mut dyn RngCore) -> Self::Elem;
    fn desc(&self) -> FieldDesc;
    fn elem_to_json(&self, a: &Self::Elem) -> Value;
    fn elem_from_json(&self, v: &Value) -> Result<Self::Elem>;
    fn fmt_elem(&self, a: &Self::Elem) -> String;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// A uniformly random nonzero element.
    fn random_nonzero(&self, rng: &mut dyn RngCore) -> Self::Elem {
        loop {
            let a = self.random(rng);
            if !self.is_zero(&a) {
                return a;
            }
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Largest extension order for which log/Zech tables are built.
const MAX_EXT_ORDER: u64 = 1 << 20;
const NO_LOG: u32 = u32::MAX;

#[derive(Debug)]
struct ExtTables {
    log: Vec<u32>,
    exp: Vec<u32>,
    /// `zech[l]` is log(1 + g^l), or `NO_LOG` when that sum is zero.
    zech: Vec<u32>,
}

/// A finite field `F_p` or `F_p[x]/(modulus)`.
#[derive(Clone, Debug)]
pub struct FiniteField {
    p: u32,
    degree: u32,
    modulus: Vec<u32>,
    q: u32,
    tables: Option<Arc<ExtTables>>,
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.degree == other.degree && self.modulus == other.modulus
    }
}

impl Eq for FiniteField {}

// Dense polynomial helpers over F_p on coefficient vectors (low to high).
fn fp_trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn fp_polymod(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = fp_trim(a.to_vec());
    let dm = m.len() - 1;
    let lead_inv = mod_inv(m[dm], p);
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let c = (r[r.len() - 1] as u64 * lead_inv as u64 % p as u64) as u32;
        for (i, &mi) in m.iter().enumerate() {
            let idx = shift + i;
            let sub = (c as u64 * mi as u64 % p as u64) as u32;
            r[idx] = (r[idx] + p - sub) % p;
        }
        r = fp_trim(r);
    }
    r
}

fn fp_polymul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    fp_trim(out.into_iter().map(|v| v as u32).collect())
}

fn mod_inv(a: u32, p: u32) -> u32 {
    let mut acc = 1u64;
    let mut base = a as u64 % p as u64;
    let mut e = p as u64 - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    acc as u32
}

fn digits(mut idx: u32, p: u32, degree: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(degree as usize);
    for _ in 0..degree {
        out.push(idx % p);
        idx /= p;
    }
    out
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0u32, |acc, &c| acc * p + c)
}

/// Exhaustive search for a monic factor of degree `1..=min(3, deg/2)`.
fn has_small_factor(modulus: &[u32], p: u32) -> bool {
    let deg = modulus.len() - 1;
    let max_d = (deg / 2).min(3);
    for d in 1..=max_d {
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let mut f: Vec<u32> = digits(idx as u32, p, d as u32);
            f.push(1);
            if fp_polymod(modulus, &f, p).is_empty() {
                return true;
            }
        }
    }
    false
}

impl FiniteField {
    pub fn prime(p: u32) -> Result<Self> {
        if !is_prime(p as u64) || p >= (1 << 31) {
            return Err(Error::Input(format!("{p} is not a supported prime")));
        }
        Ok(FiniteField { p, degree: 1, modulus: vec![0, 1], q: p, tables: None })
    }

    /// `F_p[x]/(modulus)`, modulus given low-to-high and monic.
    pub fn extension(p: u32, modulus: Vec<u32>) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::Input(format!("{p} is not prime")));
        }
        let modulus = fp_trim(modulus);
        if modulus.len() < 2 {
            return Err(Error::Input("extension modulus must have degree >= 1".into()));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::Input("modulus coefficients must be reduced mod p".into()));
        }
        if *modulus.last().unwrap() != 1 {
            return Err(Error::Input("extension modulus must be monic".into()));
        }
        let degree = (modulus.len() - 1) as u32;
        if degree == 1 {
            return Self::prime(p);
        }
        if degree > 6 {
            return Err(Error::Unsupported(format!(
                "extension degree {degree} > 6 (irreducibility search covers factors up to degree 3)"
            )));
        }
        let q = (p as u64).pow(degree);
        if q > MAX_EXT_ORDER {
            return Err(Error::Unsupported(format!("extension of order {q} too large")));
        }
        if has_small_factor(&modulus, p) {
            return Err(Error::Input("extension modulus is reducible".into()));
        }
        let q = q as u32;
        let tables = Self::build_tables(p, degree, &modulus, q);
        Ok(FiniteField { p, degree, modulus, q, tables: Some(Arc::new(tables)) })
    }

    /// The field with `p^e` elements, using the first monic irreducible
    /// modulus in lexicographic order of its low coefficients.
    pub fn of_order(p: u32, e: u32) -> Result<Self> {
        if e == 1 {
            return Self::prime(p);
        }
        let count = (p as u64).pow(e);
        for idx in 0..count {
            let mut m = digits(idx as u32, p, e);
            if m[0] == 0 {
                continue;
            }
            m.push(1);
            if !has_small_factor(&m, p) {
                return Self::extension(p, m);
            }
        }
        Err(Error::Input(format!("no irreducible polynomial of degree {e} over F_{p}")))
    }

    fn build_tables(p: u32, degree: u32, modulus: &[u32], q: u32) -> ExtTables {
        let n = (q - 1) as u64;
        let factors = prime_factors(n);
        let mulpoly = |a: &[u32], b: &[u32]| fp_polymod(&fp_polymul(a, b, p), modulus, p);
        let powpoly = |a: &[u32], mut e: u64| {
            let mut acc = vec![1u32];
            let mut base = a.to_vec();
            while e > 0 {
                if e & 1 == 1 {
                    acc = mulpoly(&acc, &base);
                }
                base = mulpoly(&base, &base);
                e >>= 1;
            }
            acc
        };
        let mut gen = Vec::new();
        for idx in 2..q {
            let g = fp_trim(digits(idx, p, degree));
            if factors.iter().all(|&l| powpoly(&g, n / l) != vec![1u32]) {
                gen = g;
                break;
            }
        }
        let mut exp = Vec::with_capacity(n as usize);
        let mut log = vec![NO_LOG; q as usize];
        let mut cur = vec![1u32];
        for i in 0..n as u32 {
            let mut d = cur.clone();
            d.resize(degree as usize, 0);
            let idx = undigits(&d, p);
            exp.push(idx);
            log[idx as usize] = i;
            cur = mulpoly(&cur, &gen);
        }
        let zech = (0..n as usize)
            .map(|l| {
                let mut d = digits(exp[l], p, degree);
                d[0] = (d[0] + 1) % p;
                log[undigits(&d, p) as usize]
            })
            .collect();
        ExtTables { log, exp, zech }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The field of order `q^e` containing this prime field.
    pub fn base_change(&self, e: u32) -> Result<FiniteField> {
        if e == 1 {
            return Ok(self.clone());
        }
        if self.degree != 1 {
            return Err(Error::Unsupported("base change is only implemented from a prime field".into()));
        }
        FiniteField::of_order(self.p, e)
    }

    /// Coefficient vector of an element over the prime field.
    pub fn coefficients(&self, a: u32) -> Vec<u32> {
        digits(a, self.p, self.degree)
    }
}

impl Field for FiniteField {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }

    fn one(&self) -> u32 {
        1
    }

    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }

    fn add(&self, a: &u32, b: &u32) -> u32 {
        match &self.tables {
            None => {
                let s = *a as u64 + *b as u64;
                (s % self.p as u64) as u32
            }
            Some(t) => {
                if *a == 0 {
                    return *b;
                }
                if *b == 0 {
                    return *a;
                }
                let n = self.q - 1;
                let la = t.log[*a as usize];
                let lb = t.log[*b as usize];
                let l = (lb + n - la) % n;
                let z = t.zech[l as usize];
                if z == NO_LOG {
                    0
                } else {
                    t.exp[((la as u64 + z as u64) % n as u64) as usize]
                }
            }
        }
    }

    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            return 0;
        }
        match &self.tables {
            None => self.p - *a,
            Some(t) => {
                if self.p == 2 {
                    return *a;
                }
                let n = self.q - 1;
                let la = t.log[*a as usize];
                t.exp[((la + n / 2) % n) as usize]
            }
        }
    }

    fn mul(&self, a: &u32, b: &u32) -> u32 {
        if *a == 0 || *b == 0 {
            return 0;
        }
        match &self.tables {
            None => (*a as u64 * *b as u64 % self.p as u64) as u32,
            Some(t) => {
                let n = (self.q - 1) as u64;
                let s = t.log[*a as usize] as u64 + t.log[*b as usize] as u64;
                t.exp[(s % n) as usize]
            }
        }
    }

    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            return None;
        }
        match &self.tables {
            None => Some(mod_inv(*a, self.p)),
            Some(t) => {
                let n = self.q - 1;
                let la = t.log[*a as usize];
                Some(t.exp[((n - la) % n) as usize])
            }
        }
    }

    fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }

    fn characteristic(&self) -> u64 {
        self.p as u64
    }

    fn order(&self) -> Option<u64> {
        Some(self.q as u64)
    }

    fn contains(&self, a: &u32) -> bool {
        *a < self.q
    }

    fn elements(&self) -> Vec<u32> {
        (0..self.q).collect()
    }

    fn random(&self, rng: &mut dyn RngCore) -> u32 {
        rng.gen_range(0..self.q)
    }

    fn desc(&self) -> FieldDesc {
        if self.degree == 1 {
            FieldDesc::Prime { p: self.p }
        } else {
            FieldDesc::Extension { p: self.p, degree: self.degree, modulus: self.modulus.clone() }
        }
    }

    fn elem_to_json(&self, a: &u32) -> Value {
        if self.degree == 1 {
            Value::String(a.to_string())
        } else {
            Value::Array(self.coefficients(*a).into_iter().map(Value::from).collect())
        }
    }

    fn elem_from_json(&self, v: &Value) -> Result<u32> {
        let parse_int = |v: &Value| -> Result<i64> {
            match v {
                Value::Number(n) => n.as_i64().ok_or_else(|| Error::Input(format!("bad integer {n}"))),
                Value::String(s) => s.trim().parse::<i64>().map_err(|_| Error::Input(format!("bad integer {s:?}"))),
                other => Err(Error::Input(format!("expected integer, got {other}"))),
            }
        };
        match v {
            Value::Array(items) if self.degree > 1 => {
                if items.len() > self.degree as usize {
                    return Err(Error::Input("too many extension coefficients".into()));
                }
                let mut d = vec![0u32; self.degree as usize];
                for (i, it) in items.iter().enumerate() {
                    d[i] = parse_int(it)?.rem_euclid(self.p as i64) as u32;
                }
                Ok(undigits(&d, self.p))
            }
            Value::Array(_) => Err(Error::Input("coefficient arrays are only valid for extension fields".into())),
            other => Ok(self.from_int(parse_int(other)?)),
        }
    }

    fn fmt_elem(&self, a: &u32) -> String {
        if self.degree == 1 {
            a.to_string()
        } else {
            let c = self.coefficients(*a);
            let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            format!("[{}]", parts.join(","))
        }
    }
}

/// The field of rational numbers with arbitrary-precision entries.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }

    fn from_int(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn characteristic(&self) -> u64 {
        0
    }

    fn order(&self) -> Option<u64> {
        None
    }

    fn contains(&self, _a: &BigRational) -> bool {
        true
    }

    fn elements(&self) -> Vec<BigRational> {
        Vec::new()
    }

    fn random(&self, rng: &mut dyn RngCore) -> BigRational {
        let num: i64 = rng.gen_range(-9..=9);
        let den: i64 = rng.gen_range(1..=5);
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn desc(&self) -> FieldDesc {
        FieldDesc::Rationals
    }

    fn elem_to_json(&self, a: &BigRational) -> Value {
        Value::String(format!("{}/{}", a.numer(), a.denom()))
    }

    fn elem_from_json(&self, v: &Value) -> Result<BigRational> {
        match v {
            Value::Number(n) => n
                .as_i64()
                .map(|i| self.from_int(i))
                .ok_or_else(|| Error::Input(format!("bad rational {n}"))),
            Value::String(s) => parse_rational(s),
            other => Err(Error::Input(format!("expected rational, got {other}"))),
        }
    }

    fn fmt_elem(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Input(format!("bad rational {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

/// Small helper for tests and reports: a rational as `i64` when integral.
pub fn rational_to_i64(a: &BigRational) -> Option<i64> {
    if a.denom().is_one() && a.numer().abs() < BigInt::from(i64::MAX) {
        a.numer().to_i64()
    } else {
        None
    }
}

/// A field value and its field, for runtime dispatch in frontends.
#[derive(Clone, Debug)]
pub enum AnyField {
    Finite(FiniteField),
    Rationals(Rationals),
}

impl AnyField {
    pub fn from_desc(desc: &FieldDesc) -> Result<Self> {
        match desc {
            FieldDesc::Prime { p } => Ok(AnyField::Finite(FiniteField::prime(*p)?)),
            FieldDesc::Extension { p, degree, modulus } => {
                if modulus.len() != *degree as usize + 1 {
                    return Err(Error::Input("modulus length must be degree + 1".into()));
                }
                Ok(AnyField::Finite(FiniteField::extension(*p, modulus.clone())?))
            }
            FieldDesc::Rationals => Ok(AnyField::Rationals(Rationals)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn axioms<F: Field>(f: &F, seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..300 {
            let a = f.random(&mut rng);
            let b = f.random(&mut rng);
            let c = f.random(&mut rng);
            assert_eq!(f.add(&f.add(&a, &b), &c), f.add(&a, &f.add(&b, &c)));
            assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
            assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
            assert_eq!(f.add(&a, &f.neg(&a)), f.zero());
            if !f.is_zero(&a) {
                assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
            }
        }
    }

    #[test]
    fn field_axioms_hold_for_each_kind() {
        axioms(&FiniteField::prime(7).unwrap(), 1);
        axioms(&FiniteField::prime(101).unwrap(), 2);
        axioms(&FiniteField::of_order(7, 2).unwrap(), 3);
        axioms(&FiniteField::of_order(7, 3).unwrap(), 4);
        axioms(&FiniteField::extension(17, vec![14, 0, 1]).unwrap(), 5);
        axioms(&Rationals, 6);
    }

    #[test]
    fn extension_matches_hand_computation() {
        // x^2 - 3 over F_17: (2+3x)(1+x) = 11 + 5x.
        let f = FiniteField::extension(17, vec![14, 0, 1]).unwrap();
        let a = f.elem_from_json(&serde_json::json!([2, 3])).unwrap();
        let b = f.elem_from_json(&serde_json::json!([1, 1])).unwrap();
        assert_eq!(f.coefficients(f.mul(&a, &b)), vec![11, 5]);
    }

    #[test]
    fn reducible_modulus_rejected() {
        // x^2 - 2 over F_7: 2 = 3^2 is a square.
        assert!(FiniteField::extension(7, vec![5, 0, 1]).is_err());
        assert!(FiniteField::extension(7, vec![1, 1]).is_ok());
        assert!(FiniteField::prime(9).is_err());
    }

    #[test]
    fn prime_subfield_embeds_as_identity() {
        let base = FiniteField::prime(7).unwrap();
        let ext = base.base_change(3).unwrap();
        for a in 0..7u32 {
            for b in 0..7u32 {
                assert_eq!(ext.add(&a, &b), base.add(&a, &b));
                assert_eq!(ext.mul(&a, &b), base.mul(&a, &b));
            }
        }
    }

    #[test]
    fn json_forms() {
        let f = FiniteField::prime(7).unwrap();
        assert_eq!(f.elem_to_json(&5), serde_json::json!("5"));
        assert_eq!(f.elem_from_json(&serde_json::json!(-2)).unwrap(), 5);
        let q = Rationals;
        let x = q.elem_from_json(&serde_json::json!("-6/4")).unwrap();
        assert_eq!(q.elem_to_json(&x), serde_json::json!("-3/2"));
    }
}

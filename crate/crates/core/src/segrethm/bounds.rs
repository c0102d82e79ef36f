//! Closed-form bounds and thresholds.

use num_rational::Ratio;
use serde_json::{json, Value};

use crate::error::{Error, Result};

/// `(bound, δ)` with `s_n(E) ≤ n(r-n)(g-1) + δ`, `0 ≤ δ < r` and
/// `n(r-n)(g-1) + δ ≡ nd (mod r)`.
pub fn hirschowitz_bound(r: i64, n: i64, d: i64, g: i64) -> Result<(i64, i64)> {
    if r < 2 || n < 1 || n > r - 1 {
        return Err(Error::Input(format!("need 1 <= n <= r-1 with r >= 2, got r={r}, n={n}")));
    }
    if g < 1 {
        return Err(Error::Input(format!("genus must be at least 1, got {g}")));
    }
    let base = n * (r - n) * (g - 1);
    let delta = (n * d - base).rem_euclid(r);
    Ok((base + delta, delta))
}

/// Dimension counts for `|L_M|` on a scroll of rank `r` and degree `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KPrimeRecord {
    pub n: i64,
    pub k_prime: i64,
    /// `(k, expected dim Φ^k)` for `0 ≤ k ≤ k'`.
    pub expected: Vec<(i64, i64)>,
    /// `(k, dim Q_{-(k+1)})`.
    pub quot_dims: Vec<(i64, i64)>,
    /// `(k, dim R^k_M)`.
    pub r_dims: Vec<(i64, i64)>,
    /// `(m, k'_m, expected dim of Φ^{k'_m}_W)` for a projection to `P^m`.
    pub projected: Option<(i64, i64, i64)>,
}

impl KPrimeRecord {
    pub fn to_json(&self) -> Value {
        let pairs = |v: &[(i64, i64)]| v.iter().map(|(k, x)| json!({"k": k, "dim": x})).collect::<Vec<_>>();
        json!({
            "n": self.n,
            "k_prime": self.k_prime,
            "expected_dims": pairs(&self.expected),
            "quot_dims": pairs(&self.quot_dims),
            "r_dims": pairs(&self.r_dims),
            "projection": self.projected.map(|(m, km, e)| json!({"m": m, "k_prime_m": km, "expected_dim": e})),
        })
    }
}

pub fn kprime_expected_dims(r: i64, d: i64, g: i64, n_override: Option<i64>, m: Option<i64>) -> Result<KPrimeRecord> {
    if r < 1 || g < 0 {
        return Err(Error::Input(format!("need r >= 1 and g >= 0, got r={r}, g={g}")));
    }
    let n = n_override.unwrap_or(r * (1 - g) - d - 1);
    if n < 1 {
        return Err(Error::Input(format!("n = {n} must be at least 1")));
    }
    let k_prime = n / r;
    let expected = (0..=k_prime).map(|k| (k, if k < k_prime { -1 } else { (k + 1) * r - n - 1 })).collect();
    let quot_dims = (0..=k_prime).map(|k| (k, r * (k + 1) + d + (r + 1) * (g - 1))).collect();
    let r_dims = (0..=k_prime).map(|k| (k, r * (k + 1) - n - 1)).collect();
    let projected = match m {
        None => None,
        Some(m) if m < 1 || m >= n => return Err(Error::Input(format!("m = {m} must satisfy 0 < m < n = {n}"))),
        Some(m) => {
            let km = m / r;
            Some((m, km, r + km * r - m - 1))
        }
    };
    Ok(KPrimeRecord { n, k_prime, expected, quot_dims, r_dims, projected })
}

/// The ranges of k in the special-case corollary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialCases {
    /// Largest `k` with `k ≤ μ(E^*) - (2g-1)`; full osculation for every `M`
    /// when `s_1 > 0`.
    pub a_max_k: i64,
    /// Smallest `k` with `k ≥ μ(E^*) - ((r+1)g-1)/r`; some deficiency exists.
    pub b_min_k: i64,
    /// The generic value `(r-1)(g-1) + δ` of `s_1`, at which (b) is sharp.
    pub generic_s1: i64,
}

impl SpecialCases {
    pub fn to_json(&self) -> Value {
        json!({"a_max_k": self.a_max_k, "b_min_k": self.b_min_k, "generic_s1": self.generic_s1})
    }
}

pub fn specialcases_ranges(r: i64, d: i64, g: i64) -> Result<SpecialCases> {
    if r < 2 || g < 1 {
        return Err(Error::Input(format!("need r >= 2 and g >= 1, got r={r}, g={g}")));
    }
    if d > r * (1 - 2 * g) {
        return Err(Error::Precondition(format!("degree {d} exceeds r(1-2g) = {}", r * (1 - 2 * g))));
    }
    let mu_dual = Ratio::new(-d, r);
    let a_max_k = (mu_dual - Ratio::from_integer(2 * g - 1)).floor().to_integer();
    let b_min_k = (mu_dual - Ratio::new((r + 1) * g - 1, r)).ceil().to_integer().max(0);
    let (generic_s1, _) = hirschowitz_bound(r, 1, d, g)?;
    Ok(SpecialCases { a_max_k, b_min_k, generic_s1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hirschowitz_values() {
        assert_eq!(hirschowitz_bound(2, 1, -6, 1).unwrap(), (0, 0));
        assert_eq!(hirschowitz_bound(3, 2, -7, 1).unwrap(), (1, 1));
        assert_eq!(hirschowitz_bound(2, 1, -3, 2).unwrap(), (1, 0));
        assert!(hirschowitz_bound(2, 2, -3, 1).is_err());
    }

    #[test]
    fn kprime_values() {
        let k = kprime_expected_dims(2, -6, 1, None, Some(4)).unwrap();
        assert_eq!((k.n, k.k_prime), (5, 2));
        assert_eq!(k.expected, vec![(0, -1), (1, -1), (2, 0)]);
        assert_eq!(k.quot_dims[1], (1, -2));
        assert_eq!(k.projected, Some((4, 2, 1)));
        assert!(kprime_expected_dims(2, -1, 1, None, None).is_err());
    }

    #[test]
    fn special_ranges() {
        let s = specialcases_ranges(2, -8, 1).unwrap();
        assert_eq!((s.a_max_k, s.b_min_k), (3, 3));
        let s = specialcases_ranges(2, -6, 1).unwrap();
        assert_eq!((s.a_max_k, s.b_min_k, s.generic_s1), (2, 2, 0));
        assert_eq!(specialcases_ranges(3, -3, 1).unwrap().a_max_k, 0);
        assert!(specialcases_ranges(2, -1, 1).is_err());
    }
}

//! Exhaustive scans of the inflectional loci over the points of a finite
//! curve, fiber by fiber.

use serde_json::{json, Value};

use crate::bundlesec::lattice::Bundle;
use crate::bundlesec::sections::{h0_dim, SectionBasis};
use crate::ellcurve::curve::{Curve, Place};
use crate::ellcurve::divisor::{divisor_to_json, pic0_class, Divisor};
use crate::error::{Error, Result};
use crate::exactlin::field::{Field, FiniteField};
use crate::exactlin::matrix::Echelon;
use crate::scrolljet::jet::{complete_system, Deficiency, FiberJets, FiberLevel};
use crate::scrolljet::oracle::oracle_with_base;
use crate::scrolljet::point::{projective_points, projective_span, ScrollPoint};
use crate::scrolljet::witness::witness_space;

/// Per-fiber jet data of one linear system for orders `0..=kmax`.
#[derive(Clone, Debug)]
pub struct SystemScan<E: Ord> {
    /// `dim V - 1`.
    pub n: i64,
    pub rank: usize,
    pub kmax: usize,
    pub fibers: Vec<(Place<E>, Vec<FiberLevel<E>>)>,
}

impl<E: Clone + Ord> SystemScan<E> {
    pub fn run<F: Field<Elem = E>>(c: &Curve<F>, v: &SectionBasis<E>, places: &[Place<E>], kmax: usize) -> Result<Self> {
        let f = c.field();
        let fibers = places
            .iter()
            .map(|p| Ok((p.clone(), FiberJets::compute(c, v, p, kmax)?.levels(f))))
            .collect::<Result<Vec<_>>>()?;
        Ok(SystemScan { n: v.dim() as i64 - 1, rank: v.rank(), kmax, fibers })
    }

    /// `d^k + 1`: the largest jet rank seen at order `k`.
    pub fn generic_rank(&self, k: usize) -> usize {
        self.fibers.iter().map(|(_, l)| l[k].max_rank()).max().unwrap_or(0)
    }

    pub fn d(&self, k: usize) -> i64 {
        self.generic_rank(k) as i64 - 1
    }

    /// Fibers with directions of jet rank below `threshold` at order `k`.
    pub fn deficiencies(&self, k: usize, threshold: usize) -> Vec<(&Place<E>, Deficiency<E>)> {
        self.fibers
            .iter()
            .map(|(p, l)| (p, l[k].deficiency(threshold)))
            .filter(|(_, d)| !d.is_empty())
            .collect()
    }

    /// `Φ^k` on the scanned fibers, as explicit points.
    pub fn inflection_points<F: Field<Elem = E>>(&self, f: &F, k: usize) -> Vec<ScrollPoint<E>> {
        points_of(f, self.rank, &self.deficiencies(k, self.generic_rank(k)))
    }

    /// Points where `dim Osc^k < kr`.
    pub fn below_full<F: Field<Elem = E>>(&self, f: &F, k: usize) -> Vec<ScrollPoint<E>> {
        points_of(f, self.rank, &self.deficiencies(k, k * self.rank + 1))
    }

    /// One point with `dim Osc^k < kr`, without enumerating the rest.
    pub fn first_below_full<F: Field<Elem = E>>(&self, f: &F, k: usize) -> Option<ScrollPoint<E>> {
        let d = self.deficiencies(k, k * self.rank + 1);
        let (p, def) = d.first()?;
        let dir = match def {
            Deficiency::All => projective_points(f, self.rank).into_iter().next()?,
            Deficiency::Subspace(s) => projective_span(f, s).into_iter().next()?,
            Deficiency::None => return None,
        };
        Some(ScrollPoint { place: (*p).clone(), direction: dir })
    }
}

fn points_of<F: Field>(f: &F, r: usize, defs: &[(&Place<F::Elem>, Deficiency<F::Elem>)]) -> Vec<ScrollPoint<F::Elem>> {
    let mut out = Vec::new();
    let mut all: Option<Vec<Vec<F::Elem>>> = None;
    for (p, d) in defs {
        let dirs = match d {
            Deficiency::None => continue,
            Deficiency::All => all.get_or_insert_with(|| projective_points(f, r)).clone(),
            Deficiency::Subspace(s) => projective_span(f, s),
        };
        out.extend(dirs.into_iter().map(|direction| ScrollPoint { place: (*p).clone(), direction }));
    }
    out
}

/// Subsheaf-witness agreement at one fiber and order `k`.
///
/// Sound: every witness line of `U_k(p)` has `dim Osc^k < kr`. Complete:
/// if some line of the fiber has `dim Osc^k < kr`, then either all such
/// lines lie in `U_k(p)` or `U_l(p) ≠ 0` for some `l < k`.
pub fn witness_agreement<F: Field>(
    c: &Curve<F>,
    e: &Bundle<F::Elem>,
    m: &Divisor<F::Elem>,
    p: &Place<F::Elem>,
    levels: &[FiberLevel<F::Elem>],
    k: usize,
) -> bool {
    let f = c.field();
    let r = e.rank();
    let spaces: Vec<Echelon<F::Elem>> = (0..=k).map(|l| witness_space(c, e, m, p, l)).collect();
    let def = levels[k].deficiency(k * r + 1).span(f, r);
    let sound = spaces[k].is_subspace_of(f, &def);
    let complete = def.rank() == 0 || spaces[..k].iter().any(|u| u.rank() > 0) || def.is_subspace_of(f, &spaces[k]);
    sound && complete
}

#[derive(Clone, Debug, Default)]
pub struct ScanOptions {
    pub oracle: bool,
    pub witnesses: bool,
    /// Shifts every oracle value by one, to exercise the disagreement path.
    pub inject_fault: bool,
}

/// The inflectional locus `Φ^k(L_M)` of one `M` over the points of a curve.
#[derive(Clone, Debug)]
pub struct OscReport<E: Ord> {
    pub m: Divisor<E>,
    pub k: usize,
    pub n: i64,
    pub d_k: i64,
    pub k_prime: i64,
    pub expected_dim: i64,
    /// Points of `Φ^k` with the degree of the field they are defined over.
    pub deficient_points: Vec<(ScrollPoint<E>, u32)>,
    pub oracle_agreement: bool,
    pub witness_match: bool,
}

impl<E: Clone + Ord> OscReport<E> {
    pub fn to_json<F: Field<Elem = E>>(&self, c: &Curve<F>) -> Value {
        let pts: Vec<Value> = self
            .deficient_points
            .iter()
            .map(|(x, e)| {
                let mut v = x.to_json(c);
                v["ext_degree"] = json!(e);
                v
            })
            .collect();
        json!({
            "M": divisor_to_json(c, &self.m),
            "k": self.k,
            "d_k": self.d_k,
            "k_prime": self.k_prime,
            "expected_dim": self.expected_dim,
            "deficient_points": pts,
            "oracle_agreement": self.oracle_agreement,
            "witness_match": self.witness_match,
        })
    }
}

/// `max{k >= 0 : kr <= n}`, or `-1` for an empty system.
pub fn k_prime(n: i64, r: usize) -> i64 {
    if n < 0 {
        -1
    } else {
        n / r as i64
    }
}

/// Expected dimension of `Φ^k`: `-1` below `k'`, `(k'+1)r - n - 1` at `k'`,
/// and the determinantal count `r + d^k - n - 1` above.
pub fn expected_dim(n: i64, r: usize, k: usize, d_k: i64) -> i64 {
    let kp = k_prime(n, r);
    let (k, r) = (k as i64, r as i64);
    if k < kp {
        -1
    } else if k == kp {
        (k + 1) * r - n - 1
    } else {
        r + d_k - n - 1
    }
}

/// The smallest extension degree over which every coordinate is defined,
/// for a scan over `F_{p^e}` with `e` prime.
fn definition_degree<F: Field<Elem = u32>>(f: &F, x: &ScrollPoint<u32>, e: u32) -> u32 {
    let p = f.characteristic() as u32;
    let coords = match &x.place {
        Place::Infinity => Vec::new(),
        Place::Affine(a, b) => vec![*a, *b],
    };
    if coords.iter().chain(&x.direction).all(|&a| a < p) {
        1
    } else {
        e
    }
}

/// Degree-zero classes `(T) - (O)` for every point `T` of the curve.
pub fn pic0_classes<F: Field>(c: &Curve<F>) -> Vec<Divisor<F::Elem>> {
    c.points().iter().map(pic0_class).collect()
}

/// Scans `Φ^k(L_M)` over `F_{q^e}` for one `M` or for all of `Pic^0(F_{q^e})`.
pub fn infl_scan(
    c: &Curve<FiniteField>,
    e: &Bundle<u32>,
    m: Option<&Divisor<u32>>,
    k: usize,
    ext: u32,
    opts: &ScanOptions,
) -> Result<Vec<OscReport<u32>>> {
    if !(1..=3).contains(&ext) {
        return Err(Error::Input(format!("extension degree {ext} outside 1..=3")));
    }
    let ce = c.base_change(ext)?;
    let ms = match m {
        Some(m) => vec![m.clone()],
        None => pic0_classes(&ce),
    };
    ms.iter().map(|m| scan_one(&ce, e, m, k, ext, opts)).collect()
}

fn scan_one(
    c: &Curve<FiniteField>,
    e: &Bundle<u32>,
    m: &Divisor<u32>,
    k: usize,
    ext: u32,
    opts: &ScanOptions,
) -> Result<OscReport<u32>> {
    let f = c.field();
    let r = e.rank();
    let v = complete_system(c, e, m)?;
    let scan = SystemScan::run(c, &v, c.points(), k)?;
    let d_k = scan.d(k);
    let pts = scan.inflection_points(f, k);
    let mut oracle_agreement = true;
    if opts.oracle {
        let base = h0_dim(c, e, &m.neg());
        for (p, levels) in &scan.fibers {
            // every inflection point of the fiber, plus the two coordinate lines
            let mut probes: Vec<ScrollPoint<u32>> = pts.iter().filter(|x| &x.place == p).cloned().collect();
            for i in [0, r - 1] {
                let mut d = vec![f.zero(); r];
                d[i] = f.one();
                probes.push(ScrollPoint { place: p.clone(), direction: d });
            }
            for x in probes {
                let jet = levels[k].rank_at(f, &x.direction) as i64 - 1;
                let mut oracle = oracle_with_base(c, e, m, &x, k, base)?;
                if opts.inject_fault {
                    oracle += 1;
                }
                oracle_agreement &= jet == oracle;
            }
        }
    }
    let witness_match = !opts.witnesses || scan.fibers.iter().all(|(p, l)| witness_agreement(c, e, m, p, l, k));
    Ok(OscReport {
        m: m.clone(),
        k,
        n: scan.n,
        d_k,
        k_prime: k_prime(scan.n, r),
        expected_dim: expected_dim(scan.n, r, k, d_k),
        deficient_points: pts.into_iter().map(|x| (definition_degree(f, &x, ext), x)).map(|(d, x)| (x, d)).collect(),
        oracle_agreement,
        witness_match,
    })
}

/// Whether `E^* ⊗ M` is generated by global sections at every rational point.
pub fn global_generation_check<F: Field>(c: &Curve<F>, e: &Bundle<F::Elem>, m: &Divisor<F::Elem>) -> Result<bool> {
    if c.field().order().is_none() {
        return Err(Error::Unsupported("global generation is checked over finite fields only".into()));
    }
    let v = complete_system(c, e, m)?;
    let scan = SystemScan::run(c, &v, c.points(), 0)?;
    Ok(scan.deficiencies(0, 1).is_empty())
}

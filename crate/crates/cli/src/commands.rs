//! One function per subcommand. Each returns the JSON document to print and
//! whether an internal cross-check disagreed.

use serde_json::{json, Value};

use scroll_core::bundlesec::{chi_h1, spec_to_json, BundleSpec};
use scroll_core::ellcurve::divisor::divisor_to_json;
use scroll_core::ellcurve::{Curve, Divisor};
use scroll_core::exactlin::{AnyField, Field, FiniteField};
use scroll_core::scrolljet::{
    complete_system, global_generation_check, infl_scan, jet_matrix, osc_dim_oracle, pic0_classes, project_system,
    subsheaf_witnesses, witness_agreement, ScanOptions, ScrollPoint, SystemScan,
};
use scroll_core::segrethm::{
    appendix_a_verify, cohstab_verify, hirschowitz_bound, kprime_expected_dims, main_a_verify, main_b_verify,
    main_c_verify, nilpotent_rank1_exists, quot_tangent_obstruction, segre1, specialcases_ranges, SegreMethod,
};
use scroll_core::{Error, Result};

use crate::instance::{parse_m, InstanceFile, MChoice};

/// Settings after flags have overridden instance parameters.
#[derive(Clone, Debug)]
pub struct Settings {
    pub k: Option<usize>,
    pub ext: u32,
    pub seed: u64,
    pub m: Option<usize>,
    pub trials: u64,
    pub method: SegreMethod,
    pub m_value: Option<Value>,
    pub inject_fault: bool,
}

pub struct Outcome {
    pub doc: Value,
    /// Set when two independent computations disagreed.
    pub fault: bool,
}

impl Outcome {
    fn ok(doc: Value) -> Self {
        Outcome { doc, fault: false }
    }
}

fn finite(inst: &InstanceFile) -> Result<Curve<FiniteField>> {
    match AnyField::from_desc(&inst.field)? {
        AnyField::Finite(f) => inst.curve(f),
        AnyField::Rationals(_) => Err(Error::Unsupported("this command needs a finite field".into())),
    }
}

fn k_or(s: &Settings, default: usize) -> usize {
    s.k.unwrap_or(default)
}

fn single_m<F: Field>(c: &Curve<F>, s: &Settings) -> Result<Divisor<F::Elem>> {
    match parse_m(c, s.m_value.as_ref())? {
        MChoice::One(m) => Ok(m),
        MChoice::All => Err(Error::Input("this command takes a single M, not \"all\"".into())),
    }
}

fn all_or_one(c: &Curve<FiniteField>, s: &Settings) -> Result<Option<Divisor<u32>>> {
    Ok(match parse_m(c, s.m_value.as_ref())? {
        MChoice::One(m) => Some(m),
        MChoice::All => None,
    })
}

pub fn curve_info(inst: &InstanceFile) -> Result<Outcome> {
    match AnyField::from_desc(&inst.field)? {
        AnyField::Finite(f) => Ok(Outcome::ok(curve_doc(&inst.curve(f)?))),
        AnyField::Rationals(f) => Ok(Outcome::ok(curve_doc(&inst.curve(f)?))),
    }
}

fn curve_doc<F: Field>(c: &Curve<F>) -> Value {
    let f = c.field();
    let points: Vec<Value> =
        c.points().iter().map(|p| json!({"point": c.place_to_json(p), "order": c.point_order(p)})).collect();
    json!({
        "field": f.desc(),
        "a4": f.elem_to_json(c.a4()),
        "a6": f.elem_to_json(c.a6()),
        "finite": c.is_finite(),
        "num_points": if c.is_finite() { Some(c.points().len()) } else { None },
        "points": points,
    })
}

pub fn sections(inst: &InstanceFile, s: &Settings) -> Result<Outcome> {
    match AnyField::from_desc(&inst.field)? {
        AnyField::Finite(f) => sections_on(&inst.curve(f)?, inst, s),
        AnyField::Rationals(f) => sections_on(&inst.curve(f)?, inst, s),
    }
}

fn sections_on<F: Field>(c: &Curve<F>, inst: &InstanceFile, s: &Settings) -> Result<Outcome> {
    let spec = inst.bundle(c)?;
    let m = single_m(c, s)?;
    let e = spec.bundle(c.field());
    let v = complete_system(c, &e, &m)?;
    let (chi, h1) = chi_h1(c, &e.dual(), &m);
    Ok(Outcome::ok(json!({
        "bundle": spec_to_json(c, &spec),
        "rank": spec.rank(),
        "degree": spec.degree(),
        "M": divisor_to_json(c, &m),
        "h0": v.dim(),
        "chi": chi,
        "h1": h1,
        "basis": v.to_json(c)["basis"],
        "independent": v.verify_independent(c),
    })))
}

pub fn osc(inst: &InstanceFile, s: &Settings) -> Result<Outcome> {
    if inst.point.is_some() {
        return match AnyField::from_desc(&inst.field)? {
            AnyField::Finite(f) => osc_point(&inst.curve(f)?, inst, s),
            AnyField::Rationals(f) => osc_point(&inst.curve(f)?, inst, s),
        };
    }
    let c = finite(inst)?;
    let spec = inst.bundle(&c)?;
    let e = spec.bundle(c.field());
    let k = k_or(s, 0);
    let m = all_or_one(&c, s)?;
    let opts = ScanOptions { oracle: true, witnesses: false, inject_fault: s.inject_fault };
    let reports = infl_scan(&c, &e, m.as_ref(), k, s.ext, &opts)?;
    let ce = c.base_change(s.ext)?;
    let fault = reports.iter().any(|r| !r.oracle_agreement);
    Ok(Outcome {
        doc: json!({
            "k": k,
            "ext_degree": s.ext,
            "reports": reports.iter().map(|r| r.to_json(&ce)).collect::<Vec<_>>(),
        }),
        fault,
    })
}

/// Jet and principal-parts dimensions at one scroll point.
fn osc_point<F: Field>(c: &Curve<F>, inst: &InstanceFile, s: &Settings) -> Result<Outcome> {
    let f = c.field();
    let spec = inst.bundle(c)?;
    let e = spec.bundle(f);
    let x = inst.point(c, spec.rank())?.expect("checked by caller");
    let m = single_m(c, s)?;
    let k = k_or(s, 0);
    let v = complete_system(c, &e, &m)?;
    let jm = jet_matrix(c, &v, &x, k)?;
    let jet = jm.rank(f) as i64 - 1;
    let mut oracle = osc_dim_oracle(c, &e, &m, &x, k)?;
    if s.inject_fault {
        oracle += 1;
    }
    Ok(Outcome {
        doc: json!({
            "point": x.to_json(c),
            "M": divisor_to_json(c, &m),
            "k": k,
            "osc_dim": jet,
            "osc_dim_oracle": oracle,
            "full": jet == (k * spec.rank()) as i64,
            "jet_rows": jm.labels.iter().map(|(j, i)| json!([j, i])).collect::<Vec<_>>(),
        }),
        fault: jet != oracle,
    })
}

/// Deficiency summary for every `k ≤ K` plus global generation.
pub fn scan(inst: &InstanceFile, s: &Settings) -> Result<Outcome> {
    let c = finite(inst)?;
    let spec = inst.bundle(&c)?;
    let f = c.field();
    let e = spec.bundle(f);
    let kmax = k_or(s, 2);
    let m = all_or_one(&c, s)?;
    let ce = c.base_change(s.ext)?;
    let opts = ScanOptions { oracle: true, witnesses: true, inject_fault: s.inject_fault };
    let mut levels = Vec::new();
    let mut fault = false;
    for k in 0..=kmax {
        let reports = infl_scan(&c, &e, m.as_ref(), k, s.ext, &opts)?;
        let oracle = reports.iter().all(|r| r.oracle_agreement);
        let witnesses = reports.iter().all(|r| r.witness_match);
        fault |= !oracle || !witnesses;
        let mut ds: Vec<i64> = reports.iter().map(|r| r.d_k).collect();
        ds.sort_unstable();
        ds.dedup();
        levels.push(json!({
            "k": k,
            "d_k": ds,
            "M_with_deficiency": reports.iter().filter(|r| !r.deficient_points.is_empty()).count(),
            "deficient_points": reports.iter().map(|r| r.deficient_points.len()).sum::<usize>(),
            "oracle_agreement": oracle,
            "witness_match": witnesses,
        }));
    }
    let ms = match &m {
        Some(m) => vec![m.clone()],
        None => pic0_classes(&ce),
    };
    let mut not_generated = Vec::new();
    for m in &ms {
        if !global_generation_check(&ce, &e, m)? {
            not_generated.push(divisor_to_json(&ce, m));
        }
    }
    Ok(Outcome {
        doc: json!({
            "bundle": spec_to_json(&c, &spec),
            "ext_degree": s.ext,
            "num_M": ms.len(),
            "levels": levels,
            "globally_generated": not_generated.is_empty(),
            "not_generated_M": not_generated,
        }),
        fault,
    })
}

/// Subsheaf witness directions at level `k` on every rational fiber.
pub fn witnesses(inst: &InstanceFile, s: &Settings) -> Result<Outcome> {
    let c = finite(inst)?;
    let spec = inst.bundle(&c)?;
    let ce = c.base_change(s.ext)?;
    let e = spec.bundle(ce.field());
    let k = k_or(s, 0);
    let ms = match all_or_one(&c, s)? {
        Some(m) => vec![m],
        None => pic0_classes(&ce),
    };
    let mut fault = false;
    let mut out = Vec::new();
    for m in &ms {
        let v = complete_system(&ce, &e, m)?;
        let scan = SystemScan::run(&ce, &v, ce.points(), k)?;
        let mut pts = Vec::new();
        let mut agree = true;
        for (p, levels) in &scan.fibers {
            pts.extend(subsheaf_witnesses(&ce, &e, m, p, k)?.iter().map(|x| x.to_json(&ce)));
            agree &= witness_agreement(&ce, &e, m, p, levels, k);
        }
        fault |= !agree;
        out.push(json!({"M": divisor_to_json(&ce, m), "witnesses": pts, "witness_match": agree}));
    }
    Ok(Outcome { doc: json!({"k": k, "ext_degree": s.ext, "reports": out}), fault })
}

/// A seeded random `W ⊂ H^0` compared with the complete system.
pub fn project(inst: &InstanceFile, s: &Settings) -> Result<Outcome> {
    let c = finite(inst)?;
    let spec = inst.bundle(&c)?;
    let m = single_m(&c, s)?;
    let mm = s.m.ok_or_else(|| Error::Input("project needs m (--m or parameters.m)".into()))?;
    let ce = c.base_change(s.ext)?;
    let fe = ce.field();
    let e = spec.bundle(fe);
    let v = complete_system(&ce, &e, &m)?;
    let w = project_system(fe, &v, mm + 1, s.seed)?;
    let kmax = k_or(s, 2);
    let fibers = c.points();
    let sv = SystemScan::run(&ce, &v, fibers, kmax)?;
    let sw = SystemScan::run(&ce, &w, fibers, kmax)?;
    let pts = |x: Vec<ScrollPoint<u32>>| x.iter().map(|p| p.to_json(&ce)).collect::<Vec<_>>();
    let levels: Vec<Value> = (0..=kmax)
        .map(|k| {
            json!({
                "k": k,
                "d_k": sv.d(k),
                "d_k_W": sw.d(k),
                "inflection": pts(sv.inflection_points(fe, k)),
                "inflection_W": pts(sw.inflection_points(fe, k)),
            })
        })
        .collect();
    Ok(Outcome::ok(json!({
        "seed": s.seed,
        "m": mm,
        "M": divisor_to_json(&c, &m),
        "ext_degree": s.ext,
        "dim_V": v.dim(),
        "W": w.to_json(&ce)["basis"],
        "levels": levels,
    })))
}

pub fn segre(inst: &InstanceFile, s: &Settings) -> Result<Outcome> {
    match AnyField::from_desc(&inst.field)? {
        AnyField::Finite(f) => segre_on(&inst.curve(f)?, inst, s),
        AnyField::Rationals(f) => segre_on(&inst.curve(f)?, inst, s),
    }
}

fn segre_on<F: Field>(c: &Curve<F>, inst: &InstanceFile, s: &Settings) -> Result<Outcome> {
    let spec = inst.bundle(c)?;
    let rep = segre1(c, &spec, s.method)?;
    let (bound, delta) = hirschowitz_bound(spec.rank() as i64, 1, spec.degree(), 1)?;
    let mut doc = rep.to_json(c);
    doc["hirschowitz"] = json!({"bound": bound, "delta": delta, "holds": rep.s1 <= bound});
    Ok(Outcome::ok(doc))
}

pub fn bounds(r: i64, n: i64, d: i64, g: i64, m: Option<usize>) -> Result<Outcome> {
    let (bound, delta) = hirschowitz_bound(r, n, d, g)?;
    let mut doc = json!({"bound": bound, "delta": delta});
    // the remaining records apply only in their own ranges
    if let Ok(k) = kprime_expected_dims(r, d, g, None, m.map(|m| m as i64)) {
        doc["kprime"] = k.to_json();
    }
    if let Ok(sc) = specialcases_ranges(r, d, g) {
        doc["special_cases"] = sc.to_json();
    }
    Ok(Outcome::ok(doc))
}

pub fn verify(theorem: &str, inst: &InstanceFile, s: &Settings) -> Result<Outcome> {
    let c = finite(inst)?;
    let spec = inst.bundle(&c)?;
    let report = match theorem {
        "mainA" => {
            let ks: Vec<usize> = match s.k {
                Some(k) => vec![k],
                None => (0..=3.min(c.field().characteristic() as usize - 2)).collect(),
            };
            main_a_verify(&c, &spec, &ks, s.ext)?
        }
        "mainB" => main_b_verify(&c, &spec, s.ext)?,
        "mainBmod" => cohstab_verify(&c, &spec, s.ext)?,
        "mainC" => main_c_verify(&c, &spec, s.ext)?,
        "appendixA" => {
            let m = single_m(&c, s)?;
            let mm = s.m.ok_or_else(|| Error::Input("appendixA needs m (--m or parameters.m)".into()))?;
            appendix_a_verify(&c, &spec, &m, mm + 1, s.trials, s.seed, s.ext)?
        }
        other => return Err(Error::Input(format!("unknown theorem {other:?}"))),
    };
    Ok(Outcome::ok(report.to_json()))
}

pub fn hypothesis_nilpotent(inst: &InstanceFile) -> Result<Outcome> {
    let c = finite(inst)?;
    let spec = inst.bundle(&c)?;
    let f = c.field();
    let e = spec.bundle(f);
    let rep = nilpotent_rank1_exists(&c, &e)?;
    let mut doc = json!({"bundle": spec_to_json(&c, &spec), "nilpotent": rep.to_json(f)});
    if spec.rank() == 2 {
        doc["obstructions"] = Value::Array(obstructions(&c, &spec)?);
    }
    Ok(Outcome::ok(doc))
}

/// `(h^0, h^1)` of `Hom(N, E/N)` for every maximal rational line class `N`.
fn obstructions(c: &Curve<FiniteField>, spec: &BundleSpec<u32>) -> Result<Vec<Value>> {
    let e = spec.bundle(c.field());
    let seg = segre1(c, spec, SegreMethod::Bruteforce)?;
    seg.witness_classes
        .iter()
        .map(|n| {
            let (h0, h1) = quot_tangent_obstruction(c, &e, n)?;
            Ok(json!({"N": divisor_to_json(c, n), "h0": h0, "h1": h1}))
        })
        .collect()
}


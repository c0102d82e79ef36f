//! Instance files: a curve, a bundle, an optional degree-zero class and run
//! parameters.

use serde::Deserialize;
use serde_json::Value;

use scroll_core::bundlesec::{spec_from_json, BundleSpec};
use scroll_core::ellcurve::divisor::divisor_from_json;
use scroll_core::ellcurve::{Curve, Divisor};
use scroll_core::exactlin::{Field, FieldDesc};
use scroll_core::scrolljet::ScrollPoint;
use scroll_core::{Error, Result};

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Parameters {
    pub k: Option<usize>,
    pub ext_degree: Option<u32>,
    pub seed: Option<u64>,
    pub m: Option<usize>,
    pub trials: Option<u64>,
    pub method: Option<String>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct CurveCoeffs {
    pub a4: Value,
    pub a6: Value,
}

/// The raw document; field-dependent parts stay JSON until the field is known.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub field: FieldDesc,
    pub curve: CurveCoeffs,
    pub bundle: Option<Value>,
    #[serde(rename = "M")]
    pub m: Option<Value>,
    /// A single scroll point `{"point": …, "direction": […]}`.
    pub point: Option<Value>,
    #[serde(default)]
    pub parameters: Parameters,
}

impl InstanceFile {
    pub fn load(path: &str) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Input(format!("cannot read {path}: {e}")))?;
        serde_json::from_str(&text).map_err(|e| Error::Input(format!("bad instance file {path}: {e}")))
    }

    pub fn curve<F: Field>(&self, f: F) -> Result<Curve<F>> {
        let a4 = f.elem_from_json(&self.curve.a4)?;
        let a6 = f.elem_from_json(&self.curve.a6)?;
        Curve::new(f, a4, a6)
    }

    pub fn bundle<F: Field>(&self, c: &Curve<F>) -> Result<BundleSpec<F::Elem>> {
        let b = self.bundle.as_ref().ok_or_else(|| Error::Input("instance has no \"bundle\"".into()))?;
        spec_from_json(c, b)
    }

    pub fn point<F: Field>(&self, c: &Curve<F>, rank: usize) -> Result<Option<ScrollPoint<F::Elem>>> {
        self.point.as_ref().map(|v| ScrollPoint::from_json(c, v, rank)).transpose()
    }
}

/// `M` as given: one class, or every class of `Pic^0`.
#[derive(Clone, Debug)]
pub enum MChoice<E: Ord> {
    One(Divisor<E>),
    All,
}

/// Parses `"all"`, `"0"` or a JSON divisor.
pub fn parse_m<F: Field>(c: &Curve<F>, v: Option<&Value>) -> Result<MChoice<F::Elem>> {
    let m = match v {
        None => return Ok(MChoice::One(Divisor::zero())),
        Some(Value::String(s)) if s == "all" => {
            if !c.is_finite() {
                return Err(Error::Input("\"M\": \"all\" needs a finite field".into()));
            }
            return Ok(MChoice::All);
        }
        Some(Value::String(s)) if s == "0" => Divisor::zero(),
        Some(v) => divisor_from_json(c, v)?,
    };
    if m.degree() != 0 {
        return Err(Error::Input(format!("M must have degree 0, got {}", m.degree())));
    }
    Ok(MChoice::One(m))
}

/// Command-line text for `--M`: `all`, `0`, or JSON.
pub fn m_flag_value(s: &str) -> Result<Value> {
    match s {
        "all" | "0" => Ok(Value::String(s.into())),
        _ => serde_json::from_str(s).map_err(|e| Error::Input(format!("--M must be all, 0 or a JSON divisor: {e}"))),
    }
}

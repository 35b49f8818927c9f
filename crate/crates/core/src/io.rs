//! Instance documents, result documents, CSV tables and the x-grid syntax.

use std::io::Write;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cutoff::DecayRow;
use crate::error::{Error, Result};
use crate::evaluator::CentralValueResult;
use crate::fixtures;
use crate::model::{twist, AdmissibilityBound, ArchimedeanParams, CoefficientSource, LFunctionInstance};

/// A complex number as `{"re": .., "im": ..}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDoc {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for ComplexDoc {
    fn from(z: Complex64) -> Self {
        ComplexDoc { re: z.re, im: z.im }
    }
}

impl From<ComplexDoc> for Complex64 {
    fn from(z: ComplexDoc) -> Self {
        Complex64::new(z.re, z.im)
    }
}

/// Serialized form of an instance. Either every explicit field is given,
/// or `builtin` names a fixture, optionally with `length` and `twist`.
///
/// For explicit documents `twist` is the accumulated shift recorded on the
/// instance: `mu` and `kappa` are already the twisted values and only the
/// coefficient reweighting `n^{-it}` is implied. For builtin documents the
/// fixture is twisted by `twist` on load.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub builtin: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub length: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<u32>,
    #[serde(rename = "N", default, skip_serializing_if = "Option::is_none")]
    pub conductor: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kappa: Option<ComplexDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<Vec<ComplexDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<Vec<ComplexDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twist: Option<f64>,
}

fn missing(field: &str) -> Error {
    Error::Parse(format!("missing field `{field}`"))
}

impl InstanceDocument {
    /// Full explicit document for an instance.
    pub fn from_instance(inst: &LFunctionInstance) -> Self {
        InstanceDocument {
            builtin: None,
            length: None,
            label: Some(inst.label.clone()),
            m: Some(inst.m),
            d: Some(inst.d),
            conductor: Some(inst.conductor),
            kappa: Some(inst.root_number.into()),
            mu: Some(inst.arch.mu.iter().map(|&z| z.into()).collect()),
            coefficients: Some(inst.coefficients.as_slice().iter().map(|&z| z.into()).collect()),
            twist: (inst.twist != 0.0).then_some(inst.twist),
        }
    }

    /// Validated instance under the given admissibility bound.
    pub fn to_instance(&self, bound: AdmissibilityBound) -> Result<LFunctionInstance> {
        if let Some(twist_t) = self.twist {
            if !twist_t.is_finite() {
                return Err(Error::Parse("`twist` must be finite".into()));
            }
        }
        if let Some(name) = &self.builtin {
            let explicit = [
                ("label", self.label.is_some()),
                ("m", self.m.is_some()),
                ("d", self.d.is_some()),
                ("N", self.conductor.is_some()),
                ("kappa", self.kappa.is_some()),
                ("mu", self.mu.is_some()),
                ("coefficients", self.coefficients.is_some()),
            ];
            if let Some((field, _)) = explicit.iter().find(|(_, present)| *present) {
                return Err(Error::Parse(format!(
                    "`{field}` cannot be combined with `builtin`; only `length` and `twist` can"
                )));
            }
            let base = fixtures::builtin(name, self.length)?.with_bound(bound)?;
            return match self.twist {
                Some(t) if t != 0.0 => twist(&base, t),
                _ => Ok(base),
            };
        }
        if self.length.is_some() {
            return Err(Error::Parse("`length` is only meaningful with `builtin`".into()));
        }
        let inst = LFunctionInstance {
            label: self.label.clone().ok_or_else(|| missing("label"))?,
            m: self.m.ok_or_else(|| missing("m"))?,
            d: self.d.ok_or_else(|| missing("d"))?,
            conductor: self.conductor.ok_or_else(|| missing("N"))?,
            root_number: self.kappa.ok_or_else(|| missing("kappa"))?.into(),
            arch: ArchimedeanParams::new(
                self.mu.as_ref().ok_or_else(|| missing("mu"))?.iter().map(|&z| z.into()).collect(),
            ),
            coefficients: CoefficientSource::new(
                self.coefficients
                    .as_ref()
                    .ok_or_else(|| missing("coefficients"))?
                    .iter()
                    .map(|&z| z.into())
                    .collect(),
            ),
            twist: self.twist.unwrap_or(0.0),
            bound,
        };
        inst.validate()?;
        Ok(inst)
    }
}

/// Parses and validates an instance document under the unconditional bound.
pub fn parse_instance(text: &[u8]) -> Result<LFunctionInstance> {
    parse_instance_with_bound(text, AdmissibilityBound::Unconditional)
}

pub fn parse_instance_with_bound(text: &[u8], bound: AdmissibilityBound) -> Result<LFunctionInstance> {
    let doc: InstanceDocument =
        serde_json::from_slice(text).map_err(|e| Error::Parse(e.to_string()))?;
    doc.to_instance(bound)
}

/// Pretty-printed explicit document.
pub fn serialize_instance(inst: &LFunctionInstance) -> String {
    serde_json::to_string_pretty(&InstanceDocument::from_instance(inst))
        .expect("instance documents always serialize")
}

/// The result document emitted by `eval`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResultDocument {
    pub value: ComplexDoc,
    pub method: String,
    pub terms_used: usize,
    pub error_estimate: f64,
    #[serde(rename = "C")]
    pub conductor: f64,
    pub eta: f64,
    pub lambda: ComplexDoc,
}

impl From<&CentralValueResult> for ResultDocument {
    fn from(r: &CentralValueResult) -> Self {
        ResultDocument {
            value: r.value.into(),
            method: r.method.as_str().to_string(),
            terms_used: r.terms_used,
            error_estimate: r.error_estimate,
            conductor: r.constants.conductor,
            eta: r.constants.eta,
            lambda: r.constants.lambda.into(),
        }
    }
}

pub fn result_json(r: &CentralValueResult) -> String {
    serde_json::to_string_pretty(&ResultDocument::from(r)).expect("result documents always serialize")
}

/// Shortest round-trip decimal, in exponent form outside `[1e-4, 1e15)`.
fn csv_number(v: f64) -> String {
    let a = v.abs();
    if a == 0.0 || (1e-4..1e15).contains(&a) {
        v.to_string()
    } else {
        format!("{v:e}")
    }
}

/// Writes `x, re_f, im_f, abs_f, quad_error` rows with LF line endings.
pub fn write_f_table<W: Write>(out: W, rows: &[DecayRow]) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    let io_err = |e: csv::Error| Error::Invalid(format!("cannot write table: {e}"));
    w.write_record(["x", "re_f", "im_f", "abs_f", "quad_error"]).map_err(io_err)?;
    for r in rows {
        w.write_record([
            csv_number(r.x),
            csv_number(r.f.re),
            csv_number(r.f.im),
            csv_number(r.abs_f),
            csv_number(r.quad_error),
        ])
        .map_err(io_err)?;
    }
    w.flush().map_err(|e| Error::Invalid(format!("cannot write table: {e}")))?;
    Ok(())
}

/// Largest number of points an x grid may request.
pub const MAX_GRID_POINTS: usize = 1_000_000;

/// Parses `lo:hi:log:n`, `lo:hi:lin:n` or a comma-separated list of
/// increasing positive reals.
pub fn parse_x_grid(spec: &str) -> Result<Vec<f64>> {
    let bad = |msg: String| Error::Parse(format!("x grid `{spec}`: {msg}"));
    let number = |s: &str| -> Result<f64> {
        let v: f64 = s.trim().parse().map_err(|_| bad(format!("`{s}` is not a number")))?;
        if !(v > 0.0 && v.is_finite()) {
            return Err(bad(format!("{v} is not a positive finite real")));
        }
        Ok(v)
    };
    let grid = if spec.contains(':') {
        let parts: Vec<&str> = spec.split(':').collect();
        let [lo, hi, scale, n] = parts.as_slice() else {
            return Err(bad("expected lo:hi:log|lin:n".into()));
        };
        let (lo, hi) = (number(lo)?, number(hi)?);
        let n: usize = n.trim().parse().map_err(|_| bad(format!("`{n}` is not a count")))?;
        if n == 0 || n > MAX_GRID_POINTS {
            return Err(bad(format!("point count must be in 1..={MAX_GRID_POINTS}")));
        }
        if n == 1 {
            if lo != hi {
                return Err(bad("a single point needs lo = hi".into()));
            }
            return Ok(vec![lo]);
        }
        if !(lo < hi) {
            return Err(bad("need lo < hi".into()));
        }
        let at = |i: usize| -> f64 {
            let u = i as f64 / (n - 1) as f64;
            match i {
                0 => lo,
                _ if i == n - 1 => hi,
                _ if scale.trim() == "log" => (lo.ln() + u * (hi.ln() - lo.ln())).exp(),
                _ => lo + u * (hi - lo),
            }
        };
        match scale.trim() {
            "log" | "lin" => (0..n).map(at).collect::<Vec<f64>>(),
            other => return Err(bad(format!("unknown spacing `{other}`, use log or lin"))),
        }
    } else {
        let values = spec.split(',').map(number).collect::<Result<Vec<f64>>>()?;
        if values.len() > MAX_GRID_POINTS {
            return Err(bad(format!("more than {MAX_GRID_POINTS} points")));
        }
        values
    };
    if grid.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(bad("points must be strictly increasing".into()));
    }
    Ok(grid)
}

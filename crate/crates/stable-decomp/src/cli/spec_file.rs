//! Input documents for the command-line front end.
//!
//! Every input is a JSON object with a `kind` discriminator.  Field names
//! follow the notation used throughout the library: `alpha`, `mu`, `f`,
//! `r`, `phi`, `cocycle`, `f0`, `nu`.  See `docs/file-formats.md` for the
//! published schema of each kind.

use std::path::Path;

use serde::Deserialize;

use crate::decompose::{independent_increments_rep, WeightFamily};
use crate::error::{Error, Result};
use crate::maxstable::MaxStableRep;
use crate::rep::{Alpha, FinitePointSpace, SpectralRep};
use crate::stationary::{mma_build, FlowAction, Permutation, StationaryProcessSpec};

/// A parsed, validated input document.
#[derive(Debug, Clone)]
pub enum SpecFile {
    Sas(SpectralRep),
    Max(MaxStableRep),
    Weights(WeightsSpec),
    Flow(StationaryProcessSpec),
    Mma(StationaryProcessSpec),
    Increments(IncrementsSpec),
}

impl SpecFile {
    pub fn kind(&self) -> &'static str {
        match self {
            SpecFile::Sas(_) => "sas_rep",
            SpecFile::Max(_) => "max_rep",
            SpecFile::Weights(_) => "weights",
            SpecFile::Flow(_) => "flow_spec",
            SpecFile::Mma(_) => "mma_spec",
            SpecFile::Increments(_) => "increments",
        }
    }
}

/// Component weight rows, with their own index and point labels so the file
/// validates standalone; columns are reordered against a representation on
/// use.
#[derive(Debug, Clone)]
pub struct WeightsSpec {
    pub alpha: f64,
    pub points: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

/// A validated independent-increments specification together with the
/// representation it builds.
#[derive(Debug, Clone)]
pub struct IncrementsSpec {
    pub alpha: Alpha,
    pub times: Vec<f64>,
    pub m: Vec<f64>,
    pub rep: SpectralRep,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PointDoc {
    label: String,
    mu: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RepDoc {
    #[allow(dead_code)]
    kind: String,
    alpha: f64,
    points: Vec<PointDoc>,
    times: Vec<String>,
    f: Vec<Vec<f64>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct WeightsDoc {
    #[allow(dead_code)]
    kind: String,
    alpha: f64,
    points: Vec<String>,
    r: Vec<Vec<f64>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FlowDoc {
    #[allow(dead_code)]
    kind: String,
    alpha: f64,
    torus: Vec<usize>,
    points: Vec<PointDoc>,
    phi: Vec<Vec<String>>,
    #[serde(default)]
    cocycle: Option<Vec<Vec<i8>>>,
    f0: Vec<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MmaDoc {
    #[allow(dead_code)]
    kind: String,
    alpha: f64,
    torus: Vec<usize>,
    nu: Vec<f64>,
    kernel: Vec<Vec<f64>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct IncrementsDoc {
    #[allow(dead_code)]
    kind: String,
    alpha: f64,
    times: Vec<f64>,
    m: Vec<f64>,
}

/// Parse and validate a spec file from disk.
pub fn parse_spec_file(path: &Path) -> Result<SpecFile> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_spec_str(&text)
}

/// Parse and validate a spec document from its text.
pub fn parse_spec_str(text: &str) -> Result<SpecFile> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::SchemaError(e.to_string()))?;
    let kind = value
        .get("kind")
        .and_then(|k| k.as_str())
        .ok_or_else(|| Error::SchemaError("missing or non-string field 'kind'".into()))?
        .to_string();
    match kind.as_str() {
        "sas_rep" => {
            let doc: RepDoc = from_value(value)?;
            let (space, times, f) = rep_parts(doc.points, doc.times, doc.f)?;
            Ok(SpecFile::Sas(SpectralRep::new(
                Alpha::new(doc.alpha)?,
                space,
                times,
                f,
            )?))
        }
        "max_rep" => {
            let doc: RepDoc = from_value(value)?;
            let (space, times, f) = rep_parts(doc.points, doc.times, doc.f)?;
            Ok(SpecFile::Max(MaxStableRep::new(
                doc.alpha, space, times, f,
            )?))
        }
        "weights" => {
            let doc: WeightsDoc = from_value(value)?;
            if !doc.alpha.is_finite() || doc.alpha <= 0.0 {
                return Err(Error::AlphaOutOfRange(doc.alpha));
            }
            let family = WeightFamily::new(doc.r.clone())?;
            if family.point_dim() != doc.points.len() {
                return Err(Error::SchemaError(format!(
                    "weight rows have {} columns, {} point labels",
                    family.point_dim(),
                    doc.points.len()
                )));
            }
            // standalone norm validation: sum_k |r_k|^alpha = 1 at each point
            family
                .check_norm_exponent(doc.alpha, &doc.points)
                .map_err(|e| match e {
                    Error::WeightNormViolation { point, norm } => Error::SchemaError(format!(
                        "weight rows at point \"{point}\" have alpha-norm {norm}, expected 1"
                    )),
                    other => other,
                })?;
            Ok(SpecFile::Weights(WeightsSpec {
                alpha: doc.alpha,
                points: doc.points,
                rows: doc.r,
            }))
        }
        "flow_spec" => {
            let doc: FlowDoc = from_value(value)?;
            let labels: Vec<String> = doc.points.iter().map(|p| p.label.clone()).collect();
            let weights: Vec<f64> = doc.points.iter().map(|p| p.mu).collect();
            let space = FinitePointSpace::new(labels.clone(), weights)?;
            if doc.phi.len() != doc.torus.len() {
                return Err(Error::SchemaError(format!(
                    "{} phi tables for {} torus factors",
                    doc.phi.len(),
                    doc.torus.len()
                )));
            }
            let mut generators = Vec::with_capacity(doc.phi.len());
            for images in &doc.phi {
                if images.len() != labels.len() {
                    return Err(Error::SchemaError(format!(
                        "phi table has {} entries, {} points",
                        images.len(),
                        labels.len()
                    )));
                }
                let mut map = Vec::with_capacity(images.len());
                for image in images {
                    match labels.iter().position(|l| l == image) {
                        Some(i) => map.push(i),
                        None => return Err(Error::DanglingLabel(image.clone())),
                    }
                }
                generators.push(Permutation::new(map)?);
            }
            let cocycles = doc
                .cocycle
                .unwrap_or_else(|| FlowAction::trivial_cocycles(&doc.torus, labels.len()));
            let flow = FlowAction::new(space, doc.torus, generators, cocycles)?;
            Ok(SpecFile::Flow(StationaryProcessSpec::new(
                Alpha::new(doc.alpha)?,
                flow,
                doc.f0,
            )?))
        }
        "mma_spec" => {
            let doc: MmaDoc = from_value(value)?;
            Ok(SpecFile::Mma(mma_build(
                &doc.torus,
                &doc.kernel,
                &doc.nu,
                Alpha::new(doc.alpha)?,
            )?))
        }
        "increments" => {
            let doc: IncrementsDoc = from_value(value)?;
            let alpha = Alpha::new(doc.alpha)?;
            let rep = independent_increments_rep(&doc.times, &doc.m, alpha)?;
            Ok(SpecFile::Increments(IncrementsSpec {
                alpha,
                times: doc.times,
                m: doc.m,
                rep,
            }))
        }
        other => Err(Error::SchemaError(format!("unknown kind \"{other}\""))),
    }
}

fn from_value<T: serde::de::DeserializeOwned>(value: serde_json::Value) -> Result<T> {
    serde_json::from_value(value).map_err(|e| Error::SchemaError(e.to_string()))
}

fn rep_parts(
    points: Vec<PointDoc>,
    times: Vec<String>,
    f: Vec<Vec<f64>>,
) -> Result<(FinitePointSpace, Vec<String>, Vec<Vec<f64>>)> {
    let labels: Vec<String> = points.iter().map(|p| p.label.clone()).collect();
    let weights: Vec<f64> = points.iter().map(|p| p.mu).collect();
    Ok((FinitePointSpace::new(labels, weights)?, times, f))
}

/// Align a weights document with a representation: its index must match and
/// its labelled columns must cover the representation's points exactly.
/// Returns the weight family with columns in the representation's order.
pub fn weights_for_points(
    weights: &WeightsSpec,
    alpha: f64,
    points: &[String],
) -> Result<WeightFamily> {
    if weights.alpha != alpha {
        return Err(Error::AlphaMismatch(alpha, weights.alpha));
    }
    for label in &weights.points {
        if !points.contains(label) {
            return Err(Error::DanglingLabel(label.clone()));
        }
    }
    let mut rows = Vec::with_capacity(weights.rows.len());
    for row in &weights.rows {
        let mut aligned = Vec::with_capacity(points.len());
        for label in points {
            match weights.points.iter().position(|p| p == label) {
                Some(j) => aligned.push(row[j]),
                None => {
                    return Err(Error::SchemaError(format!(
                        "weights do not cover point \"{label}\""
                    )))
                }
            }
        }
        rows.push(aligned);
    }
    WeightFamily::new(rows)
}

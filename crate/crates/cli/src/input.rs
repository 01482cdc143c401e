//! Input documents: TOML or JSON with one schema, or a pair of CSV files.

use std::fs;
use std::path::Path;

use blade_angles::algebra::MAX_DIM;
use blade_angles::{Algebra, Blade64, Tolerance64};
use serde::{Deserialize, Serialize};

use crate::report::{reals, Node, Obj};
use crate::CliError;

/// Two blades of `R^dim`, each the outer product of its frame rows times a
/// scale.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct InputDocument {
    pub dim: usize,
    pub a_frame: Vec<Vec<f64>>,
    pub b_frame: Vec<Vec<f64>>,
    #[serde(default = "unit")]
    pub a_scale: f64,
    #[serde(default = "unit")]
    pub b_scale: f64,
    #[serde(default, skip_serializing_if = "Options::is_empty")]
    pub options: Options,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct Options {
    /// Identity tolerance.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub structural: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub angle: Option<f64>,
    /// Recorded with the document; no command draws random numbers from it.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl Options {
    fn is_empty(&self) -> bool {
        *self == Options::default()
    }
}

fn unit() -> f64 {
    1.0
}

impl InputDocument {
    /// Parses a document, as JSON when it starts with `{` and as TOML
    /// otherwise.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let doc: InputDocument = if text.trim_start().starts_with('{') {
            serde_json::from_str(text).map_err(|e| CliError::Usage(format!("invalid JSON input: {e}")))?
        } else {
            toml::from_str(text).map_err(|e| CliError::Usage(format!("invalid TOML input: {e}")))?
        };
        doc.validate()?;
        Ok(doc)
    }

    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Builds a document from two CSV files, one vector per row, no header.
    pub fn from_csv(a: &Path, b: &Path) -> Result<Self, CliError> {
        let a_frame = read_csv(a)?;
        let b_frame = read_csv(b)?;
        let dim = a_frame.first().map_or(0, Vec::len);
        let doc = InputDocument { dim, a_frame, b_frame, a_scale: 1.0, b_scale: 1.0, options: Options::default() };
        doc.validate()?;
        Ok(doc)
    }

    fn validate(&self) -> Result<(), CliError> {
        if !(1..=MAX_DIM).contains(&self.dim) {
            return Err(CliError::Usage(format!("dim must be in 1..={}, got {}", MAX_DIM, self.dim)));
        }
        for (name, frame) in [("a-frame", &self.a_frame), ("b-frame", &self.b_frame)] {
            if frame.is_empty() {
                return Err(CliError::Usage(format!("{name} is empty")));
            }
            for (i, v) in frame.iter().enumerate() {
                if v.len() != self.dim {
                    return Err(CliError::Usage(format!(
                        "{name} row {i} has length {}, expected {}",
                        v.len(),
                        self.dim
                    )));
                }
                if v.iter().any(|x| !x.is_finite()) {
                    return Err(CliError::Usage(format!("{name} row {i} has a non-finite entry")));
                }
            }
        }
        if !self.a_scale.is_finite() || !self.b_scale.is_finite() {
            return Err(CliError::Usage("scales must be finite".into()));
        }
        Ok(())
    }

    /// Tolerances: document options over `base`, then `eps` from the command
    /// line over both.
    pub fn tolerance(&self, base: Tolerance64, eps: Option<f64>) -> Result<Tolerance64, CliError> {
        let mut tol = base;
        if let Some(x) = self.options.structural {
            tol = tol.with_structural(x)?;
        }
        if let Some(x) = self.options.angle {
            tol = tol.with_angle(x)?;
        }
        if let Some(x) = eps.or(self.options.eps) {
            tol = tol.with_identity(x)?;
        }
        Ok(tol)
    }

    pub fn blades(&self, tol: &Tolerance64) -> Result<(Blade64, Blade64), CliError> {
        let alg = Algebra::new(self.dim)?;
        let a = Blade64::from_vectors(alg, &self.a_frame, tol)?.scaled(self.a_scale);
        let b = Blade64::from_vectors(alg, &self.b_frame, tol)?.scaled(self.b_scale);
        Ok((a, b))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("documents serialize")
    }

    pub fn to_node(&self) -> Node {
        let frame = |f: &[Vec<f64>]| Node::List(f.iter().map(|v| reals(v)).collect());
        let mut obj = Obj::new()
            .int("dim", self.dim)
            .node("a-frame", frame(&self.a_frame))
            .node("b-frame", frame(&self.b_frame))
            .real("a-scale", self.a_scale)
            .real("b-scale", self.b_scale);
        if !self.options.is_empty() {
            let o = &self.options;
            let mut opts = Obj::new();
            for (k, v) in [("eps", o.eps), ("structural", o.structural), ("angle", o.angle)] {
                if let Some(x) = v {
                    opts = opts.real(k, x);
                }
            }
            if let Some(s) = o.seed {
                opts = opts.int("seed", s);
            }
            obj = obj.node("options", opts.build());
        }
        obj.build()
    }
}

fn read_csv(path: &Path) -> Result<Vec<Vec<f64>>, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_path(path)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let mut rows = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        let row = record
            .iter()
            .map(|field| field.parse::<f64>())
            .collect::<Result<Vec<f64>, _>>()
            .map_err(|e| CliError::Usage(format!("{} row {i}: {e}", path.display())))?;
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(CliError::Usage(format!("{}: no rows", path.display())));
    }
    Ok(rows)
}

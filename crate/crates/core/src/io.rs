//! Vector files in JSON (`{"dim": n, "vectors": [[[re, im], ...], ...]}`)
//! or CSV (header `re0,im0,...,re{n-1},im{n-1}`, one vector per row).

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::CVector;
use crate::numfmt::sig17;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl Format {
    pub fn from_path(path: &Path) -> Option<Format> {
        match path.extension()?.to_str()?.to_ascii_lowercase().as_str() {
            "json" => Some(Format::Json),
            "csv" => Some(Format::Csv),
            _ => None,
        }
    }
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(Error::param(format!("unknown format '{s}' (json|csv)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VectorFile {
    pub format: Format,
    pub dim: usize,
    pub vectors: Vec<CVector>,
}

#[derive(Serialize, Deserialize)]
struct JsonLayout {
    dim: usize,
    vectors: Vec<Vec<[f64; 2]>>,
}

#[derive(Serialize)]
struct JsonOut<'a> {
    dim: usize,
    vectors: &'a [CVector],
}

fn parse_err(location: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Parse {
        location: location.into(),
        message: message.into(),
    }
}

impl VectorFile {
    pub fn new(format: Format, vectors: Vec<CVector>) -> Result<Self> {
        let dim = vectors.first().map(CVector::dim).ok_or_else(|| {
            Error::param("a vector file needs at least one vector to fix its dimension")
        })?;
        for v in &vectors[1..] {
            vectors[0].check_dim(v)?;
        }
        Ok(VectorFile {
            format,
            dim,
            vectors,
        })
    }

    pub fn parse_json(text: &str) -> Result<Self> {
        let raw: JsonLayout = serde_json::from_str(text).map_err(|e| {
            parse_err(
                format!("line {}, column {}", e.line(), e.column()),
                e.to_string(),
            )
        })?;
        if raw.dim == 0 {
            return Err(parse_err("dim", "dimension must be at least 1"));
        }
        let mut vectors = Vec::with_capacity(raw.vectors.len());
        for (i, v) in raw.vectors.into_iter().enumerate() {
            if v.len() != raw.dim {
                return Err(parse_err(
                    format!("vectors[{i}]"),
                    format!("expected {} entries, found {}", raw.dim, v.len()),
                ));
            }
            let entries = v.iter().map(|p| Complex64::new(p[0], p[1])).collect();
            vectors.push(
                CVector::new(entries)
                    .map_err(|e| parse_err(format!("vectors[{i}]"), e.to_string()))?,
            );
        }
        Ok(VectorFile {
            format: Format::Json,
            dim: raw.dim,
            vectors,
        })
    }

    pub fn parse_csv(text: &str) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(true)
            .flexible(true)
            .trim(csv::Trim::All)
            .from_reader(text.as_bytes());
        let header = rdr
            .headers()
            .map_err(|e| parse_err("line 1", e.to_string()))?
            .clone();
        if header.is_empty() || header.len() % 2 != 0 {
            return Err(parse_err("line 1", "header must list re0,im0,re1,im1,..."));
        }
        for (k, name) in header.iter().enumerate() {
            let want = format!("{}{}", if k % 2 == 0 { "re" } else { "im" }, k / 2);
            if !name.eq_ignore_ascii_case(&want) {
                return Err(parse_err(
                    format!("line 1, column {}", k + 1),
                    format!("expected header '{want}', found '{name}'"),
                ));
            }
        }
        let dim = header.len() / 2;
        let mut vectors = Vec::new();
        for rec in rdr.records() {
            let rec = rec.map_err(|e| {
                let line = e.position().map_or(0, |p| p.line());
                parse_err(format!("line {line}"), e.to_string())
            })?;
            let line = rec.position().map_or(0, |p| p.line());
            if rec.len() != header.len() {
                return Err(parse_err(
                    format!("line {line}"),
                    format!("expected {} fields, found {}", header.len(), rec.len()),
                ));
            }
            let mut vals = Vec::with_capacity(rec.len());
            for (k, field) in rec.iter().enumerate() {
                let v: f64 = field.parse().map_err(|_| {
                    parse_err(
                        format!("line {line}, column {}", k + 1),
                        format!("malformed number '{field}'"),
                    )
                })?;
                vals.push(v);
            }
            let entries = vals.chunks(2).map(|c| Complex64::new(c[0], c[1])).collect();
            vectors.push(
                CVector::new(entries)
                    .map_err(|e| parse_err(format!("line {line}"), e.to_string()))?,
            );
        }
        Ok(VectorFile {
            format: Format::Csv,
            dim,
            vectors,
        })
    }

    pub fn parse(text: &str, format: Format) -> Result<Self> {
        match format {
            Format::Json => Self::parse_json(text),
            Format::Csv => Self::parse_csv(text),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&JsonOut {
            dim: self.dim,
            vectors: &self.vectors,
        })
        .expect("vector file serializes")
    }

    pub fn to_csv_string(&self) -> String {
        let mut out = (0..self.dim)
            .map(|k| format!("re{k},im{k}"))
            .collect::<Vec<_>>()
            .join(",");
        out.push('\n');
        for v in &self.vectors {
            let row: Vec<String> = v.iter().flat_map(|z| [sig17(z.re), sig17(z.im)]).collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    pub fn serialize(&self) -> String {
        match self.format {
            Format::Json => self.to_json_string(),
            Format::Csv => self.to_csv_string(),
        }
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.serialize())?;
        Ok(())
    }

    pub fn get(&self, i: usize) -> Result<&CVector> {
        self.vectors.get(i).ok_or_else(|| {
            Error::param(format!(
                "vector index {i} out of range ({} vectors)",
                self.vectors.len()
            ))
        })
    }
}

/// Reads a vector file; the format comes from `hint`, else the extension.
pub fn parse_vectors(path: &Path, hint: Option<Format>) -> Result<VectorFile> {
    let format = hint.or_else(|| Format::from_path(path)).ok_or_else(|| {
        Error::param(format!(
            "cannot infer format of '{}'; use a .json/.csv extension or a format hint",
            path.display()
        ))
    })?;
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    VectorFile::parse(&text, format)
}

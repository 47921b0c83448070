//! File formats: dataset/query/prediction CSV and the versioned JSON model
//! file.
//!
//! CSV schemas (header row required):
//!   binomial datasets     x1..xd, y, m
//!   multinomial datasets  x1..xd, y1..yq
//!   query points          x1..xd
//!
//! Numeric CSV output is printed with 17 significant digits so values
//! round-trip bit-exactly through text.

use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::bkp::{FittedBkp, PosteriorSummary, SimulationResult};
use crate::dkp::{DirichletSummary, DkpSimulationResult, FittedDkp};
use crate::error::{Error, Result};
use crate::matrix::Matrix;

pub const MODEL_FORMAT_VERSION: u32 = 1;

/// On-disk model document: a format version plus the fitted model, tagged
/// by kind.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModelFile {
    pub format_version: u32,
    #[serde(flatten)]
    pub model: ModelKind,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "model_kind", rename_all = "snake_case")]
pub enum ModelKind {
    Bkp(FittedBkp),
    Dkp(FittedDkp),
}

impl ModelFile {
    pub fn bkp(model: FittedBkp) -> Self {
        Self { format_version: MODEL_FORMAT_VERSION, model: ModelKind::Bkp(model) }
    }

    pub fn dkp(model: FittedDkp) -> Self {
        Self { format_version: MODEL_FORMAT_VERSION, model: ModelKind::Dkp(model) }
    }

    fn validate(&self) -> Result<()> {
        if self.format_version != MODEL_FORMAT_VERSION {
            return Err(Error::Parse(format!(
                "unsupported model format version {} (this build reads version {})",
                self.format_version, MODEL_FORMAT_VERSION
            )));
        }
        match &self.model {
            ModelKind::Bkp(m) => m.validate(),
            ModelKind::Dkp(m) => m.validate(),
        }
    }
}

pub fn model_to_json(model: &ModelFile) -> Result<String> {
    serde_json::to_string_pretty(model)
        .map_err(|e| Error::Parse(format!("failed to serialize model: {e}")))
}

/// Parse and structurally validate a model document.
pub fn model_from_json(bytes: &[u8]) -> Result<ModelFile> {
    let model: ModelFile = serde_json::from_slice(bytes)
        .map_err(|e| Error::Parse(format!("invalid model file: {e}")))?;
    model.validate()?;
    Ok(model)
}

pub fn save_model(path: &Path, model: &ModelFile) -> Result<()> {
    std::fs::write(path, model_to_json(model)?)?;
    Ok(())
}

pub fn load_model(path: &Path) -> Result<ModelFile> {
    model_from_json(&std::fs::read(path)?)
}

/// Full-precision decimal rendering (17 significant digits).
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn parse_header(headers: &csv::StringRecord) -> Result<Vec<String>> {
    Ok(headers.iter().map(|h| h.trim().to_string()).collect())
}

/// Count the leading `x1, x2, ...` columns, insisting they are contiguous
/// and correctly numbered.
fn count_x_columns(names: &[String]) -> Result<usize> {
    let mut d = 0;
    for name in names {
        if name == &format!("x{}", d + 1) {
            d += 1;
        } else {
            break;
        }
    }
    if d == 0 {
        return Err(Error::Parse(format!(
            "expected leading input columns named x1, x2, ...; header starts with '{}'",
            names.first().map(String::as_str).unwrap_or("")
        )));
    }
    Ok(d)
}

fn parse_f64_field(field: &str, row: usize, column: &str) -> Result<f64> {
    let v: f64 = field.trim().parse().map_err(|_| {
        Error::Parse(format!("row {}, column {column}: invalid number '{field}'", row + 1))
    })?;
    if !v.is_finite() {
        return Err(Error::Parse(format!(
            "row {}, column {column}: non-finite value '{field}'",
            row + 1
        )));
    }
    Ok(v)
}

fn parse_u64_field(field: &str, row: usize, column: &str) -> Result<u64> {
    field.trim().parse().map_err(|_| {
        Error::Parse(format!("row {}, column {column}: invalid count '{field}'", row + 1))
    })
}

fn csv_reader<R: Read>(reader: R) -> csv::Reader<R> {
    csv::ReaderBuilder::new().has_headers(true).trim(csv::Trim::All).from_reader(reader)
}

/// Read a binomial dataset (`x1..xd, y, m`).
pub fn read_bkp_csv<R: Read>(reader: R) -> Result<(Matrix, Vec<u64>, Vec<u64>)> {
    let mut rdr = csv_reader(reader);
    let names =
        parse_header(rdr.headers().map_err(|e| Error::Parse(format!("unreadable header: {e}")))?)?;
    let d = count_x_columns(&names)?;
    if names.len() != d + 2 || names[d] != "y" || names[d + 1] != "m" {
        return Err(Error::Parse(format!(
            "binomial data needs columns x1..x{d}, y, m; got {names:?}"
        )));
    }
    let mut x_rows = Vec::new();
    let mut y = Vec::new();
    let mut m = Vec::new();
    for (i, record) in rdr.records().enumerate() {
        let record = record.map_err(|e| Error::Parse(format!("row {}: {e}", i + 1)))?;
        if record.len() != names.len() {
            return Err(Error::Parse(format!(
                "row {}: expected {} fields, got {}",
                i + 1,
                names.len(),
                record.len()
            )));
        }
        let mut row = Vec::with_capacity(d);
        for j in 0..d {
            row.push(parse_f64_field(&record[j], i, &names[j])?);
        }
        x_rows.push(row);
        y.push(parse_u64_field(&record[d], i, "y")?);
        m.push(parse_u64_field(&record[d + 1], i, "m")?);
    }
    if x_rows.is_empty() {
        return Err(Error::Parse("dataset contains no data rows".into()));
    }
    Ok((Matrix::from_rows(&x_rows)?, y, m))
}

/// Read a multinomial dataset (`x1..xd, y1..yq`).
pub fn read_dkp_csv<R: Read>(reader: R) -> Result<(Matrix, Matrix)> {
    let mut rdr = csv_reader(reader);
    let names =
        parse_header(rdr.headers().map_err(|e| Error::Parse(format!("unreadable header: {e}")))?)?;
    let d = count_x_columns(&names)?;
    let q = names.len() - d;
    if q < 2 {
        return Err(Error::Parse(format!(
            "multinomial data needs at least two count columns, got {names:?}"
        )));
    }
    for (s, name) in names[d..].iter().enumerate() {
        if name != &format!("y{}", s + 1) {
            return Err(Error::Parse(format!(
                "expected count column y{} after the inputs, got '{name}'",
                s + 1
            )));
        }
    }
    let mut x_rows = Vec::new();
    let mut count_rows = Vec::new();
    for (i, record) in rdr.records().enumerate() {
        let record = record.map_err(|e| Error::Parse(format!("row {}: {e}", i + 1)))?;
        if record.len() != names.len() {
            return Err(Error::Parse(format!(
                "row {}: expected {} fields, got {}",
                i + 1,
                names.len(),
                record.len()
            )));
        }
        let mut row = Vec::with_capacity(d);
        for j in 0..d {
            row.push(parse_f64_field(&record[j], i, &names[j])?);
        }
        x_rows.push(row);
        let mut counts = Vec::with_capacity(q);
        for s in 0..q {
            counts.push(parse_u64_field(&record[d + s], i, &names[d + s])? as f64);
        }
        count_rows.push(counts);
    }
    if x_rows.is_empty() {
        return Err(Error::Parse("dataset contains no data rows".into()));
    }
    Ok((Matrix::from_rows(&x_rows)?, Matrix::from_rows(&count_rows)?))
}

/// Read query points (`x1..xd`); `d` must match the model dimension.
pub fn read_query_csv<R: Read>(reader: R, d: usize) -> Result<Matrix> {
    let mut rdr = csv_reader(reader);
    let names =
        parse_header(rdr.headers().map_err(|e| Error::Parse(format!("unreadable header: {e}")))?)?;
    let found = count_x_columns(&names)?;
    if found != d || names.len() != d {
        return Err(Error::Dimension(format!(
            "query file has columns {names:?}, expected exactly x1..x{d}"
        )));
    }
    let mut rows = Vec::new();
    for (i, record) in rdr.records().enumerate() {
        let record = record.map_err(|e| Error::Parse(format!("row {}: {e}", i + 1)))?;
        if record.len() != d {
            return Err(Error::Parse(format!(
                "row {}: expected {d} fields, got {}",
                i + 1,
                record.len()
            )));
        }
        let mut row = Vec::with_capacity(d);
        for j in 0..d {
            row.push(parse_f64_field(&record[j], i, &names[j])?);
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::Parse("query file contains no data rows".into()));
    }
    Matrix::from_rows(&rows)
}

/// Parse a per-dimension bounds flag: `lo:hi[,lo:hi...]`.
pub fn parse_xbounds(text: &str) -> Result<Vec<(f64, f64)>> {
    let mut out = Vec::new();
    for (j, part) in text.split(',').enumerate() {
        let Some((lo, hi)) = part.split_once(':') else {
            return Err(Error::Parse(format!(
                "bounds entry {} ('{part}') is not of the form lo:hi",
                j + 1
            )));
        };
        let lo: f64 = lo
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bounds entry {}: bad lower '{lo}'", j + 1)))?;
        let hi: f64 = hi
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bounds entry {}: bad upper '{hi}'", j + 1)))?;
        if !lo.is_finite() || !hi.is_finite() || lo >= hi {
            return Err(Error::Parse(format!(
                "bounds entry {}: need finite lo < hi, got {lo}:{hi}",
                j + 1
            )));
        }
        out.push((lo, hi));
    }
    Ok(out)
}

/// Parse a comma-separated list of floats (for `--theta` and `--p0`).
pub fn parse_f64_list(text: &str) -> Result<Vec<f64>> {
    text.split(',')
        .enumerate()
        .map(|(i, part)| {
            let v: f64 = part
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("list entry {}: bad number '{part}'", i + 1)))?;
            if !v.is_finite() {
                return Err(Error::Parse(format!("list entry {}: non-finite '{part}'", i + 1)));
            }
            Ok(v)
        })
        .collect()
}

fn write_header<W: Write>(w: &mut W, columns: &[String]) -> Result<()> {
    writeln!(w, "{}", columns.join(","))?;
    Ok(())
}

fn x_headers(d: usize) -> Vec<String> {
    (1..=d).map(|j| format!("x{j}")).collect()
}

/// Write a binomial dataset in the schema `read_bkp_csv` accepts.
pub fn write_bkp_csv<W: Write>(w: &mut W, x: &Matrix, y: &[u64], m: &[u64]) -> Result<()> {
    let mut cols = x_headers(x.n_cols());
    cols.push("y".into());
    cols.push("m".into());
    write_header(w, &cols)?;
    for i in 0..x.n_rows() {
        let mut fields: Vec<String> = x.row(i).iter().map(|&v| fmt_f64(v)).collect();
        fields.push(y[i].to_string());
        fields.push(m[i].to_string());
        writeln!(w, "{}", fields.join(","))?;
    }
    Ok(())
}

/// Write a multinomial dataset in the schema `read_dkp_csv` accepts.
pub fn write_dkp_csv<W: Write>(w: &mut W, x: &Matrix, counts: &Matrix) -> Result<()> {
    let mut cols = x_headers(x.n_cols());
    cols.extend((1..=counts.n_cols()).map(|s| format!("y{s}")));
    write_header(w, &cols)?;
    for i in 0..x.n_rows() {
        let mut fields: Vec<String> = x.row(i).iter().map(|&v| fmt_f64(v)).collect();
        fields.extend(counts.row(i).iter().map(|&c| format!("{}", c as u64)));
        writeln!(w, "{}", fields.join(","))?;
    }
    Ok(())
}

/// Prediction CSV: `x1..xd, mean, variance, lower, upper[, label]`.
pub fn write_bkp_predictions<W: Write>(
    w: &mut W,
    xnew: &Matrix,
    summaries: &[PosteriorSummary],
) -> Result<()> {
    let with_labels = summaries.iter().all(|s| s.label.is_some());
    let mut cols = x_headers(xnew.n_cols());
    cols.extend(["mean", "variance", "lower", "upper"].map(String::from));
    if with_labels {
        cols.push("label".into());
    }
    write_header(w, &cols)?;
    for (i, s) in summaries.iter().enumerate() {
        let mut fields: Vec<String> = xnew.row(i).iter().map(|&v| fmt_f64(v)).collect();
        fields.extend([fmt_f64(s.mean), fmt_f64(s.variance), fmt_f64(s.lower), fmt_f64(s.upper)]);
        if with_labels {
            fields.push(s.label.unwrap().to_string());
        }
        writeln!(w, "{}", fields.join(","))?;
    }
    Ok(())
}

/// Prediction CSV with per-class blocks:
/// `x1..xd, mean_1..mean_q, var_1..var_q, lower_1.., upper_1..[, label]`.
pub fn write_dkp_predictions<W: Write>(
    w: &mut W,
    xnew: &Matrix,
    summaries: &[DirichletSummary],
) -> Result<()> {
    let q = summaries.first().map_or(0, |s| s.mean.len());
    let with_labels = summaries.iter().all(|s| s.label.is_some());
    let mut cols = x_headers(xnew.n_cols());
    for prefix in ["mean", "var", "lower", "upper"] {
        cols.extend((1..=q).map(|s| format!("{prefix}_{s}")));
    }
    if with_labels {
        cols.push("label".into());
    }
    write_header(w, &cols)?;
    for (i, s) in summaries.iter().enumerate() {
        let mut fields: Vec<String> = xnew.row(i).iter().map(|&v| fmt_f64(v)).collect();
        for block in [&s.mean, &s.variance, &s.lower, &s.upper] {
            fields.extend(block.iter().map(|&v| fmt_f64(v)));
        }
        if with_labels {
            fields.push(s.label.unwrap().to_string());
        }
        writeln!(w, "{}", fields.join(","))?;
    }
    Ok(())
}

/// Wide draw CSV: `x1..xd, draw1..drawN[, label1..labelN]`.
pub fn write_bkp_draws<W: Write>(w: &mut W, xnew: &Matrix, sims: &SimulationResult) -> Result<()> {
    let n_sim = sims.draws.n_cols();
    let mut cols = x_headers(xnew.n_cols());
    cols.extend((1..=n_sim).map(|j| format!("draw{j}")));
    if sims.labels.is_some() {
        cols.extend((1..=n_sim).map(|j| format!("label{j}")));
    }
    write_header(w, &cols)?;
    for i in 0..xnew.n_rows() {
        let mut fields: Vec<String> = xnew.row(i).iter().map(|&v| fmt_f64(v)).collect();
        fields.extend(sims.draws.row(i).iter().map(|&v| fmt_f64(v)));
        if let Some(labels) = &sims.labels {
            fields.extend(labels[i].iter().map(|l| l.to_string()));
        }
        writeln!(w, "{}", fields.join(","))?;
    }
    Ok(())
}

/// Wide draw CSV with per-class columns:
/// `x1..xd, draw1_c1..draw1_cq, draw2_c1, ...[, label1..labelN]`.
pub fn write_dkp_draws<W: Write>(
    w: &mut W,
    xnew: &Matrix,
    sims: &DkpSimulationResult,
) -> Result<()> {
    let n_sim = sims.draws.first().map_or(0, |p| p.len());
    let q = sims.draws.first().and_then(|p| p.first()).map_or(0, |d| d.len());
    let mut cols = x_headers(xnew.n_cols());
    for j in 1..=n_sim {
        cols.extend((1..=q).map(|s| format!("draw{j}_c{s}")));
    }
    if sims.labels.is_some() {
        cols.extend((1..=n_sim).map(|j| format!("label{j}")));
    }
    write_header(w, &cols)?;
    for i in 0..xnew.n_rows() {
        let mut fields: Vec<String> = xnew.row(i).iter().map(|&v| fmt_f64(v)).collect();
        for draw in &sims.draws[i] {
            fields.extend(draw.iter().map(|&v| fmt_f64(v)));
        }
        if let Some(labels) = &sims.labels {
            fields.extend(labels[i].iter().map(|l| l.to_string()));
        }
        writeln!(w, "{}", fields.join(","))?;
    }
    Ok(())
}

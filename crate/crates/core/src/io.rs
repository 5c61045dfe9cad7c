//! Generator matrix files, code metadata and point lists.
//!
//! A matrix file has a header line `q n k` followed by `k` lines of `n`
//! space-separated element encodings.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::code::LrcCode;
use crate::config::ConstructionConfig;
use crate::curve::PointSet;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;

pub const MATRIX_FILE: &str = "generator.txt";
pub const METADATA_FILE: &str = "metadata.toml";

fn io_err(path: &Path, e: impl std::fmt::Display) -> Error {
    Error::Io(format!("{}: {e}", path.display()))
}

pub fn matrix_text(q: u64, m: &Matrix) -> String {
    let mut out = String::with_capacity(m.rows() * m.cols() * 4 + 32);
    let _ = writeln!(out, "{q} {} {}", m.cols(), m.rows());
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(ToString::to_string).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn parse_matrix(text: &str, f: &Field) -> Result<Matrix> {
    let mut lines = text.lines();
    let header: Vec<u64> = lines
        .next()
        .ok_or_else(|| Error::invalid("matrix file is empty"))?
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| Error::invalid("bad matrix header")))
        .collect::<Result<_>>()?;
    let [q, n, k] = header[..] else {
        return Err(Error::invalid("matrix header must be `q n k`"));
    };
    if q != f.size() as u64 {
        return Err(Error::invalid(format!(
            "matrix is over GF({q}) but the code is over GF({})",
            f.size()
        )));
    }
    let mut rows = Vec::with_capacity(k as usize);
    for (i, line) in lines.filter(|l| !l.trim().is_empty()).enumerate() {
        let row = line
            .split_whitespace()
            .map(|t| {
                t.parse::<u32>()
                    .map_err(|_| Error::invalid(format!("row {i}: bad entry `{t}`")))
                    .and_then(|v| f.element(v))
            })
            .collect::<Result<Vec<_>>>()?;
        if row.len() as u64 != n {
            return Err(Error::invalid(format!(
                "row {i} has {} entries, expected {n}",
                row.len()
            )));
        }
        rows.push(row);
    }
    if rows.len() as u64 != k {
        return Err(Error::invalid(format!(
            "matrix has {} rows, expected {k}",
            rows.len()
        )));
    }
    if k == 0 {
        return Ok(Matrix::zeros(0, n as usize));
    }
    Matrix::from_rows(rows)
}

pub fn read_matrix(path: &Path, f: &Field) -> Result<Matrix> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    parse_matrix(&text, f)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalityMeta {
    pub label: String,
    pub subgroup_order: u64,
    pub variable: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<String>,
    pub set_size: u64,
    pub sets_per_coordinate: u64,
}

/// Code parameters written next to the generator matrix. The embedded
/// config rebuilds the code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metadata {
    pub family: String,
    pub curve: String,
    pub q: u64,
    pub n: u64,
    pub k: u64,
    pub delta: u64,
    pub designed_distance: u64,
    pub r_list: Vec<u64>,
    pub availability: u64,
    pub group_order: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub length_formula: Option<u64>,
    pub rank: u64,
    pub rank_columns: u64,
    pub basis: Vec<String>,
    pub locality: Vec<LocalityMeta>,
    pub config: ConstructionConfig,
}

impl Metadata {
    pub fn new(code: &LrcCode, config: &ConstructionConfig) -> Metadata {
        Metadata {
            family: code.tag().to_string(),
            curve: code.model().family().tag().to_string(),
            q: code.field().size() as u64,
            n: code.n() as u64,
            k: code.k() as u64,
            delta: code.delta(),
            designed_distance: code.designed_distance(),
            r_list: code.r_list().iter().map(|&r| r as u64).collect(),
            availability: code.availability() as u64,
            group_order: code.group_order() as u64,
            length_formula: code.length_formula().map(|l| l.value),
            rank: code.rank_certificate().rank as u64,
            rank_columns: code.rank_certificate().columns as u64,
            basis: code
                .basis()
                .monomials()
                .iter()
                .map(ToString::to_string)
                .collect(),
            locality: code
                .locality()
                .iter()
                .map(|e| LocalityMeta {
                    label: e.label.clone(),
                    subgroup_order: e.subgroup.order() as u64,
                    variable: e.var.to_string(),
                    weight: e.weight.map(|w| w.to_string()),
                    set_size: e.set_size as u64,
                    sets_per_coordinate: e.set_count() as u64,
                })
                .collect(),
            config: config.clone(),
        }
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("metadata serializes")
    }

    pub fn from_toml(text: &str) -> Result<Metadata> {
        toml::from_str(text).map_err(|e| Error::invalid(format!("metadata: {}", e.message())))
    }

    pub fn read(path: &Path) -> Result<Metadata> {
        let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
        Metadata::from_toml(&text)
    }
}

/// Writes the generator matrix and metadata into `dir`.
pub fn write_code(
    dir: &Path,
    code: &LrcCode,
    config: &ConstructionConfig,
) -> Result<(PathBuf, PathBuf)> {
    fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
    let mpath = dir.join(MATRIX_FILE);
    let dpath = dir.join(METADATA_FILE);
    let text = matrix_text(code.field().size() as u64, &code.generator_matrix());
    fs::write(&mpath, text).map_err(|e| io_err(&mpath, e))?;
    fs::write(&dpath, Metadata::new(code, config).to_toml()).map_err(|e| io_err(&dpath, e))?;
    Ok((mpath, dpath))
}

/// One line per point: its coordinate encodings.
pub fn points_text(points: &PointSet) -> String {
    let mut out = String::new();
    for p in points.points() {
        let _ = writeln!(out, "{p}");
    }
    out
}

//! JSON file schemas and stdin/stdout plumbing.
//!
//! Wire formats:
//! - instance: `{"charts": [{"a": "<rational>", "b": "<rational>"}, ...]}`
//!   where `<rational>` is a decimal string or `"p/q"`;
//! - packing: `{"assignment": [k0, k1, ...], "length": L}` with 1-based bins
//!   (`length` is tolerated missing on input and cross-checked when present);
//! - NDM: `{"x": [...], "y": [...], "z": [...], "b": B}`.

use crate::instance::{BarChart, Instance, InstanceError};
use crate::packing::Packing;
use crate::rational::{format_rational, parse_rational, ParseRationalError};
use crate::reduction::{CertifyReport, NdmError, NdmInstance};
use crate::verify::BinLoadReport;
use serde::{Deserialize, Serialize};
use std::fs;
use std::io::{Read, Write};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("chart {chart}: field `{field}`: {source}")]
    Height {
        chart: usize,
        field: &'static str,
        source: ParseRationalError,
    },
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error(transparent)]
    Ndm(#[from] NdmError),
    #[error("{path}: {source}")]
    File {
        path: String,
        source: std::io::Error,
    },
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ChartFile {
    pub a: String,
    pub b: String,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct InstanceFile {
    pub charts: Vec<ChartFile>,
}

pub fn parse_instance_json(text: &str) -> Result<Instance, IoError> {
    let file: InstanceFile = serde_json::from_str(text)?;
    let mut charts = Vec::with_capacity(file.charts.len());
    for (chart, entry) in file.charts.iter().enumerate() {
        let a = parse_rational(&entry.a).map_err(|source| IoError::Height {
            chart,
            field: "a",
            source,
        })?;
        let b = parse_rational(&entry.b).map_err(|source| IoError::Height {
            chart,
            field: "b",
            source,
        })?;
        charts.push(BarChart::new(a, b).map_err(|e| match e {
            InstanceError::HeightOutOfRange { kind, value, .. } => {
                IoError::Instance(InstanceError::HeightOutOfRange {
                    index: chart,
                    kind,
                    value,
                })
            }
            other => IoError::Instance(other),
        })?);
    }
    Ok(Instance::new(charts)?)
}

pub fn instance_to_json(instance: &Instance) -> String {
    let file = InstanceFile {
        charts: instance
            .charts()
            .iter()
            .map(|c| ChartFile {
                a: format_rational(c.a()),
                b: format_rational(c.b()),
            })
            .collect(),
    };
    serde_json::to_string(&file).expect("instance serializes")
}

#[derive(Debug, Serialize, Deserialize)]
pub struct PackingFile {
    pub assignment: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub length: Option<usize>,
}

pub fn parse_packing_json(text: &str) -> Result<(Packing, Option<usize>), IoError> {
    let file: PackingFile = serde_json::from_str(text)?;
    Ok((Packing::new(file.assignment), file.length))
}

pub fn packing_to_json(packing: &Packing, length: usize) -> String {
    let file = PackingFile {
        assignment: packing.starts().to_vec(),
        length: Some(length),
    };
    serde_json::to_string(&file).expect("packing serializes")
}

#[derive(Debug, Serialize, Deserialize)]
pub struct NdmFile {
    pub x: Vec<u64>,
    pub y: Vec<u64>,
    pub z: Vec<u64>,
    pub b: u64,
}

pub fn parse_ndm_json(text: &str) -> Result<NdmInstance, IoError> {
    let file: NdmFile = serde_json::from_str(text)?;
    Ok(NdmInstance::new(file.x, file.y, file.z, file.b)?)
}

pub fn ndm_to_json(ndm: &NdmInstance) -> String {
    let file = NdmFile {
        x: ndm.x().to_vec(),
        y: ndm.y().to_vec(),
        z: ndm.z().to_vec(),
        b: ndm.target(),
    };
    serde_json::to_string(&file).expect("ndm serializes")
}

#[derive(Debug, Serialize)]
struct BinLoadEntry {
    bin: usize,
    load: String,
}

#[derive(Debug, Serialize)]
struct LoadReportFile {
    feasible: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    used_bins: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    bins: Vec<BinLoadEntry>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    violations: Vec<BinLoadEntry>,
}

pub fn load_report_to_json(report: &BinLoadReport) -> String {
    let file = LoadReportFile {
        feasible: true,
        used_bins: Some(report.used_bins()),
        bins: report
            .loads
            .iter()
            .map(|(&bin, load)| BinLoadEntry {
                bin,
                load: format_rational(load),
            })
            .collect(),
        violations: Vec::new(),
    };
    serde_json::to_string(&file).expect("report serializes")
}

pub fn violations_to_json(violations: &[crate::verify::BinViolation]) -> String {
    let file = LoadReportFile {
        feasible: false,
        used_bins: None,
        bins: Vec::new(),
        violations: violations
            .iter()
            .map(|v| BinLoadEntry {
                bin: v.bin,
                load: format_rational(&v.load),
            })
            .collect(),
    };
    serde_json::to_string(&file).expect("report serializes")
}

#[derive(Debug, Serialize)]
struct ExactResultFile<'a> {
    opt_length: usize,
    k1: usize,
    k2: usize,
    witness: &'a PackingFile,
}

pub fn exact_result_to_json(result: &crate::exact::ExactResult) -> String {
    let witness = PackingFile {
        assignment: result.witness.starts().to_vec(),
        length: Some(result.opt_length),
    };
    serde_json::to_string(&ExactResultFile {
        opt_length: result.opt_length,
        k1: result.single_count,
        k2: result.pair_count,
        witness: &witness,
    })
    .expect("result serializes")
}

#[derive(Debug, Serialize)]
struct LinearResultFile<'a> {
    opt_length: usize,
    lambda: usize,
    chains: &'a [Vec<usize>],
    witness: PackingFile,
}

pub fn linear_result_to_json(result: &crate::exact::LinearOrderResult) -> String {
    serde_json::to_string(&LinearResultFile {
        opt_length: result.opt_length,
        lambda: result.chains.len(),
        chains: &result.chains,
        witness: PackingFile {
            assignment: result.witness.starts().to_vec(),
            length: Some(result.opt_length),
        },
    })
    .expect("result serializes")
}

#[derive(Debug, Serialize)]
struct CertifyReportFile {
    r: usize,
    b: u64,
    ndm_yes: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    ndm_witness: Option<Vec<[usize; 3]>>,
    opt_length: usize,
    bin_budget: usize,
    equivalent: bool,
}

pub fn certify_report_to_json(report: &CertifyReport) -> String {
    serde_json::to_string(&CertifyReportFile {
        r: report.r,
        b: report.target,
        ndm_yes: report.ndm_yes,
        ndm_witness: report
            .witness
            .as_ref()
            .map(|w| w.triples.iter().map(|&(i, j, k)| [i, j, k]).collect()),
        opt_length: report.opt_length,
        bin_budget: report.bin_budget,
        equivalent: report.equivalent,
    })
    .expect("report serializes")
}

/// Reads a whole input, `-` meaning stdin.
pub fn read_input(path: &str) -> Result<String, IoError> {
    if path == "-" {
        let mut buffer = String::new();
        std::io::stdin()
            .read_to_string(&mut buffer)
            .map_err(|source| IoError::File {
                path: "<stdin>".into(),
                source,
            })?;
        Ok(buffer)
    } else {
        fs::read_to_string(path).map_err(|source| IoError::File {
            path: path.into(),
            source,
        })
    }
}

/// Writes contents plus a trailing newline, `-` meaning stdout.
pub fn write_output(path: &str, contents: &str) -> Result<(), IoError> {
    let with_newline = format!("{contents}\n");
    if path == "-" {
        std::io::stdout()
            .write_all(with_newline.as_bytes())
            .map_err(|source| IoError::File {
                path: "<stdout>".into(),
                source,
            })
    } else {
        fs::write(path, with_newline).map_err(|source| IoError::File {
            path: path.into(),
            source,
        })
    }
}

//! Channel JSON, probe-record CSV and sweep CSV/JSON.

use std::fs;
use std::io::{Read, Write};
use std::path::Path;

use gaussfid_core::scenarios::SweepResult;
use gaussfid_core::tomography::ProbeRecord;
use gaussfid_core::{CovarianceMatrix, GainMatrix, GaussianChannel, PhysicalityReport, Quadratures};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::error::{CliError, Result};
use crate::report::physicality_json;

/// Noise covariance in plain variances (vacuum = ½).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CovarianceFile {
    pub sxx: f64,
    pub spp: f64,
    pub cxp: f64,
}

/// On-disk channel: row-major gain, noise mean `[x, p]`, noise covariance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChannelFile {
    pub gain: [f64; 4],
    #[serde(default)]
    pub noise_mean: [f64; 2],
    pub noise_cov: CovarianceFile,
    /// Written by `tomography`; ignored on input.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub physicality: Option<Value>,
}

impl ChannelFile {
    pub fn from_channel(ch: &GaussianChannel, report: Option<&PhysicalityReport>) -> Self {
        let c = ch.noise_cov;
        Self {
            gain: ch.gain.to_row_major(),
            noise_mean: [ch.noise_mean.x, ch.noise_mean.p],
            noise_cov: CovarianceFile { sxx: c.sxx, spp: c.spp, cxp: c.cxp },
            physicality: report.map(physicality_json),
        }
    }

    pub fn to_channel(&self) -> Result<GaussianChannel> {
        let ch = GaussianChannel::new(
            GainMatrix::from_row_major(self.gain),
            Quadratures::new(self.noise_mean[0], self.noise_mean[1]),
            CovarianceMatrix::new(self.noise_cov.sxx, self.noise_cov.spp, self.noise_cov.cxp),
        );
        if !ch.is_finite() {
            return Err(CliError::Input("channel file contains a non-finite number".into()));
        }
        Ok(ch)
    }
}

pub fn parse_channel(text: &str) -> Result<GaussianChannel> {
    serde_json::from_str::<ChannelFile>(text)?.to_channel()
}

pub fn read_channel(path: &Path) -> Result<GaussianChannel> {
    parse_channel(&fs::read_to_string(path)?)
}

pub fn channel_json(ch: &GaussianChannel, report: Option<&PhysicalityReport>) -> Value {
    serde_json::to_value(ChannelFile::from_channel(ch, report)).expect("channel serializes")
}

/// One row of a probe-record file.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProbeRow {
    pub alpha_re: f64,
    pub alpha_im: f64,
    pub mean_x: f64,
    pub mean_p: f64,
    pub var_x: f64,
    pub var_p: f64,
    pub cov_xp: f64,
}

impl From<&ProbeRecord> for ProbeRow {
    fn from(r: &ProbeRecord) -> Self {
        Self {
            alpha_re: r.alpha.re,
            alpha_im: r.alpha.im,
            mean_x: r.out_mean.x,
            mean_p: r.out_mean.p,
            var_x: r.out_cov.sxx,
            var_p: r.out_cov.spp,
            cov_xp: r.out_cov.cxp,
        }
    }
}

pub const PROBE_HEADER: [&str; 7] = ["alpha_re", "alpha_im", "mean_x", "mean_p", "var_x", "var_p", "cov_xp"];

pub fn parse_probes<R: Read>(reader: R) -> Result<Vec<ProbeRecord>> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let header: Vec<String> = rdr.headers()?.iter().map(str::to_owned).collect();
    if header != PROBE_HEADER {
        return Err(CliError::Input(format!(
            "probe file header must be {}, found {}",
            PROBE_HEADER.join(","),
            header.join(",")
        )));
    }
    let mut out = Vec::new();
    for (line, row) in rdr.deserialize::<ProbeRow>().enumerate() {
        let r = row?;
        let record = ProbeRecord::new(
            Complex64::new(r.alpha_re, r.alpha_im),
            Quadratures::new(r.mean_x, r.mean_p),
            CovarianceMatrix::new(r.var_x, r.var_p, r.cov_xp),
        )
        .map_err(|e| CliError::Input(format!("probe row {}: {e}", line + 1)))?;
        out.push(record);
    }
    Ok(out)
}

pub fn read_probes(path: &Path) -> Result<Vec<ProbeRecord>> {
    parse_probes(fs::File::open(path)?)
}

pub fn write_probes<W: Write>(records: &[ProbeRecord], writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    for r in records {
        w.serialize(ProbeRow::from(r))?;
    }
    w.flush()?;
    Ok(())
}

/// Long form: one column per axis (in axis order) followed by `fq`; rows in
/// grid order with the first axis slowest.
pub fn write_sweep_csv<W: Write>(sweep: &SweepResult, writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    let mut header: Vec<&str> = sweep.axes.iter().map(|a| a.label.as_str()).collect();
    header.push("fq");
    w.write_record(&header)?;
    let shape = sweep.shape();
    for (flat, fq) in sweep.fq.iter().enumerate() {
        let mut rest = flat;
        let mut row = vec![String::new(); shape.len()];
        for (k, n) in shape.iter().enumerate().rev() {
            row[k] = sweep.axes[k].values[rest % n].to_string();
            rest /= n;
        }
        row.push(fq.to_string());
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

/// Axes, fidelity values (nested rows for 2-D grids), metadata and contour segments.
pub fn sweep_json(sweep: &SweepResult) -> Value {
    let axes: Vec<Value> = sweep.axes.iter().map(|a| json!({ "label": a.label, "values": a.values })).collect();
    let fq = match sweep.shape().as_slice() {
        [_, cols] => Value::from(sweep.fq.chunks(*cols).map(|row| Value::from(row.to_vec())).collect::<Vec<_>>()),
        _ => Value::from(sweep.fq.clone()),
    };
    let metadata: Map<String, Value> = sweep.metadata.iter().map(|(k, v)| (k.clone(), Value::from(*v))).collect();
    let mut out = json!({
        "scenario": sweep.scenario,
        "axes": axes,
        "fq": fq,
        "metadata": metadata,
    });
    if !sweep.contour.is_empty() {
        let segs: Vec<[f64; 4]> = sweep.contour.iter().map(|s| [s.start.0, s.start.1, s.end.0, s.end.1]).collect();
        out["contour"] = json!(segs);
    }
    out
}

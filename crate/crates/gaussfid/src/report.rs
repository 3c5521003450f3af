//! Printable reports. Objects serialize with sorted keys, so output is
//! byte-stable for identical input.

use std::io::Write;

use gaussfid_core::{ComplexGains, NoiseEllipse, PhaseOptimum, PhysicalityReport, Quadratures};
use serde_json::{json, Value};

use crate::error::Result;

pub fn physicality_json(r: &PhysicalityReport) -> Value {
    let mut v = json!({
        "physical": r.physical,
        "noise_psd": r.noise_psd,
        "noise_min_eigenvalue": r.noise_min_eigenvalue,
        "uncertainty_ok": r.uncertainty_ok,
        "uncertainty_lhs": r.uncertainty_lhs,
        "uncertainty_bound": r.uncertainty_bound,
    });
    if let Some(b) = r.diagonal_bounds {
        v["diagonal_bounds"] = json!({ "x_ok": b.x_ok, "p_ok": b.p_ok });
    }
    v
}

pub fn ellipse_json(e: &NoiseEllipse) -> Value {
    json!({ "sigma1_sq": e.s1sq, "sigma2_sq": e.s2sq, "theta": e.theta })
}

pub fn gains_json(g: &ComplexGains) -> Value {
    json!({ "c": [g.c.re, g.c.im], "d": [g.d.re, g.d.im] })
}

pub fn offset_json(q: &Quadratures) -> Value {
    json!([q.x, q.p])
}

pub fn phase_json(p: &PhaseOptimum) -> Value {
    json!({
        "theta_prime": p.theta_prime,
        "fq_max": p.fq_max,
        "theta_min": p.theta_min,
        "fq_min": p.fq_min,
        "degenerate": p.degenerate,
    })
}

/// Flattens nested objects into dotted keys; arrays become `key.0`, `key.1`, ...
pub fn flatten(value: &Value) -> Vec<(String, String)> {
    fn walk(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
        let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
        match v {
            Value::Object(map) => map.iter().for_each(|(k, v)| walk(&key(k), v, out)),
            Value::Array(items) => items.iter().enumerate().for_each(|(i, v)| walk(&key(&i.to_string()), v, out)),
            Value::String(s) => out.push((prefix.to_string(), s.clone())),
            other => out.push((prefix.to_string(), other.to_string())),
        }
    }
    let mut out = Vec::new();
    walk("", value, &mut out);
    out
}

/// Two-column `key,value` CSV.
pub fn write_key_value_csv<W: Write>(value: &Value, writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["key", "value"])?;
    for (k, v) in flatten(value) {
        w.write_record([k, v])?;
    }
    w.flush()?;
    Ok(())
}

/// Table CSV from an array of flat objects sharing the same keys.
pub fn write_table_csv<W: Write>(rows: &[Value], writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    if let Some(first) = rows.first() {
        let header: Vec<String> = flatten(first).into_iter().map(|(k, _)| k).collect();
        w.write_record(&header)?;
        for row in rows {
            w.write_record(flatten(row).into_iter().map(|(_, v)| v))?;
        }
    }
    w.flush()?;
    Ok(())
}

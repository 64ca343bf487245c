//! Report emission: CSV with a fixed header row, '\n' line endings, '.'
//! decimal separator, and 17-significant-digit numbers (round-trip exact
//! for f64); JSON mirrors carry identical field names.

use num_complex::Complex64;
use num_rational::Ratio;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::discrepancy::{DiscrepancyReport, EmpiricalMeasure, StudyRow};
use crate::expsum::{FourierDecayReport, WeylSumReport};
use crate::qmcint::{ConvergenceRow, TestFunction};

/// 17 significant digits — the shortest width that reconstructs any f64
/// exactly on parse.
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

fn opt17(x: Option<f64>) -> String {
    x.map(fmt17).unwrap_or_default()
}

fn opt_json(x: Option<f64>) -> Value {
    match x {
        Some(v) => json!(v),
        None => Value::Null,
    }
}

/// Columns k, re, im, magnitude, bound, margin; bound and margin are empty
/// cells when the report carries none.
pub fn weyl_csv(reports: &[WeylSumReport]) -> String {
    let mut out = String::from("k,re,im,magnitude,bound,margin\n");
    for r in reports {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.k,
            fmt17(r.sum.re),
            fmt17(r.sum.im),
            fmt17(r.magnitude),
            opt17(r.bound),
            opt17(r.margin),
        ));
    }
    out
}

pub fn weyl_json(reports: &[WeylSumReport]) -> Value {
    Value::Array(
        reports
            .iter()
            .map(|r| {
                json!({
                    "k": r.k,
                    "re": r.sum.re,
                    "im": r.sum.im,
                    "magnitude": r.magnitude,
                    "bound": opt_json(r.bound),
                    "margin": opt_json(r.margin),
                })
            })
            .collect(),
    )
}

/// Wraps a full scan (index = k, starting at 0) as unbounded Weyl reports.
pub fn scan_reports(scan: &[Complex64], n: u64) -> Vec<WeylSumReport> {
    scan.iter()
        .enumerate()
        .map(|(k, &sum)| {
            let magnitude = sum.norm();
            WeylSumReport {
                k: k as i64,
                sum,
                magnitude,
                normalized_magnitude: magnitude / n as f64,
                bound: None,
                margin: None,
            }
        })
        .collect()
}

/// Columns q, N, Dstar, D, et_bound, interval_a, interval_b, deviation,
/// degenerate. A row with several intervals flattens to one line per
/// interval; a row with none leaves the interval cells empty.
pub fn study_csv(rows: &[StudyRow]) -> String {
    let mut out =
        String::from("q,N,Dstar,D,et_bound,interval_a,interval_b,deviation,degenerate\n");
    for row in rows {
        let lead = format!(
            "{},{},{},{},{}",
            row.q,
            row.n,
            fmt17(row.dstar),
            fmt17(row.d),
            fmt17(row.et_bound),
        );
        if row.deviations.is_empty() {
            out.push_str(&format!("{lead},,,,{}\n", row.degenerate));
        } else {
            for dev in &row.deviations {
                out.push_str(&format!(
                    "{lead},{},{},{},{}\n",
                    fmt17(dev.a),
                    fmt17(dev.b),
                    fmt17(dev.deviation),
                    row.degenerate,
                ));
            }
        }
    }
    out
}

pub fn study_json(rows: &[StudyRow]) -> Value {
    let mut items = Vec::new();
    for row in rows {
        let base = |a: Value, b: Value, dev: Value| {
            json!({
                "q": row.q,
                "N": row.n,
                "Dstar": row.dstar,
                "D": row.d,
                "et_bound": row.et_bound,
                "interval_a": a,
                "interval_b": b,
                "deviation": dev,
                "degenerate": row.degenerate,
            })
        };
        if row.deviations.is_empty() {
            items.push(base(Value::Null, Value::Null, Value::Null));
        } else {
            for dev in &row.deviations {
                items.push(base(json!(dev.a), json!(dev.b), json!(dev.deviation)));
            }
        }
    }
    Value::Array(items)
}

/// Single-report variant of the study table: columns N, Dstar, D, et_bound,
/// worst_a, worst_b.
pub fn discrepancy_csv(report: &DiscrepancyReport) -> String {
    format!(
        "N,Dstar,D,et_bound,worst_a,worst_b\n{},{},{},{},{},{}\n",
        report.n,
        fmt17(report.dstar),
        fmt17(report.d),
        opt17(report.et_bound),
        fmt17(report.worst_interval.0),
        fmt17(report.worst_interval.1),
    )
}

pub fn discrepancy_json(report: &DiscrepancyReport) -> Value {
    json!({
        "N": report.n,
        "Dstar": report.dstar,
        "D": report.d,
        "et_bound": opt_json(report.et_bound),
        "worst_a": report.worst_interval.0,
        "worst_b": report.worst_interval.1,
    })
}

/// Columns q, N, f_name, mean_re, mean_im, reference, abs_error, dstar.
/// `reference` is the real part — every stock reference integral is real.
pub fn table_csv(rows: &[ConvergenceRow], f_name: &str) -> String {
    let mut out = String::from("q,N,f_name,mean_re,mean_im,reference,abs_error,dstar\n");
    for row in rows {
        let r = &row.report;
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            row.q,
            r.n,
            f_name,
            fmt17(r.sample_mean.re),
            fmt17(r.sample_mean.im),
            fmt17(r.reference.re),
            fmt17(r.abs_error),
            opt17(r.dstar_at_n),
        ));
    }
    out
}

pub fn table_json(rows: &[ConvergenceRow], f_name: &str) -> Value {
    Value::Array(
        rows.iter()
            .map(|row| {
                let r = &row.report;
                json!({
                    "q": row.q,
                    "N": r.n,
                    "f_name": f_name,
                    "mean_re": r.sample_mean.re,
                    "mean_im": r.sample_mean.im,
                    "reference": r.reference.re,
                    "abs_error": r.abs_error,
                    "dstar": opt_json(r.dstar_at_n),
                })
            })
            .collect(),
    )
}

/// Columns k, re, im, magnitude, envelope, violation; the envelope H/k² is
/// empty at k = 0.
pub fn decay_csv(report: &FourierDecayReport) -> String {
    let mut out = String::from("k,re,im,magnitude,envelope,violation\n");
    for (&k, c) in &report.coefficients {
        let envelope = if k == 0 {
            String::new()
        } else {
            fmt17(report.h / (k as f64 * k as f64))
        };
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            k,
            fmt17(c.re),
            fmt17(c.im),
            fmt17(c.norm()),
            envelope,
            report.violations.contains(&k),
        ));
    }
    out
}

pub fn decay_json(report: &FourierDecayReport) -> Value {
    Value::Array(
        report
            .coefficients
            .iter()
            .map(|(&k, c)| {
                json!({
                    "k": k,
                    "re": c.re,
                    "im": c.im,
                    "magnitude": c.norm(),
                    "envelope": if k == 0 { Value::Null } else { json!(report.h / (k as f64 * k as f64)) },
                    "violation": report.violations.contains(&k),
                })
            })
            .collect(),
    )
}

/// Columns l, coeff, residue for a reduced polynomial next to its exact
/// decimal coefficients.
pub fn reduce_csv(coeffs: &[crate::decimal::Decimal], residues: &[u64]) -> String {
    let mut out = String::from("l,coeff,residue\n");
    for (l, (a, t)) in coeffs.iter().zip(residues).enumerate() {
        out.push_str(&format!("{l},{a},{t}\n"));
    }
    out
}

pub fn reduce_json(coeffs: &[crate::decimal::Decimal], residues: &[u64]) -> Value {
    Value::Array(
        coeffs
            .iter()
            .zip(residues)
            .enumerate()
            .map(|(l, (a, t))| json!({"l": l, "coeff": a.to_string(), "residue": t}))
            .collect(),
    )
}

/// Columns point, value, mass, multiplicity: each support atom as an exact
/// fraction, its f64 value, the exact mass count/N, and the raw count.
pub fn measure_csv(m: &EmpiricalMeasure) -> String {
    let mut out = String::from("point,value,mass,multiplicity\n");
    let n = m.source_size();
    for (p, mass) in m.support().iter().zip(m.masses()) {
        out.push_str(&format!(
            "{}/{},{},{}/{},{}\n",
            p.numer(),
            p.denom(),
            fmt17(p.to_f64().unwrap()),
            mass.numer(),
            mass.denom(),
            (mass * Ratio::from_integer(n)).to_integer(),
        ));
    }
    out
}

pub fn measure_json(m: &EmpiricalMeasure) -> Value {
    let n = m.source_size();
    Value::Array(
        m.support()
            .iter()
            .zip(m.masses())
            .map(|(p, mass)| {
                json!({
                    "point": format!("{}/{}", p.numer(), p.denom()),
                    "value": p.to_f64().unwrap(),
                    "mass": format!("{}/{}", mass.numer(), mass.denom()),
                    "multiplicity": (mass * Ratio::from_integer(n)).to_integer(),
                })
            })
            .collect(),
    )
}

/// Columns name, reference, smooth, riemann, variation for a function list.
/// `reference` is the real part — every stock reference integral is real.
pub fn registry_csv(fs: &[TestFunction]) -> String {
    let mut out = String::from("name,reference,smooth,riemann,variation\n");
    for f in fs {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            f.name(),
            fmt17(f.reference().re),
            f.smooth(),
            f.riemann(),
            opt17(f.variation()),
        ));
    }
    out
}

pub fn registry_json(fs: &[TestFunction]) -> Value {
    Value::Array(
        fs.iter()
            .map(|f| {
                json!({
                    "name": f.name(),
                    "reference": f.reference().re,
                    "smooth": f.smooth(),
                    "riemann": f.riemann(),
                    "variation": opt_json(f.variation()),
                })
            })
            .collect(),
    )
}

/// Columns a, b, count, fraction, deviation for one interval-count query;
/// `count` is the exact fraction of points landing in [a, b).
pub fn interval_csv(a: f64, b: f64, count: Ratio<u64>, deviation: f64) -> String {
    format!(
        "a,b,count,fraction,deviation\n{},{},{}/{},{},{}\n",
        fmt17(a),
        fmt17(b),
        count.numer(),
        count.denom(),
        fmt17(count.to_f64().unwrap()),
        fmt17(deviation),
    )
}

pub fn interval_json(a: f64, b: f64, count: Ratio<u64>, deviation: f64) -> Value {
    json!({
        "a": a,
        "b": b,
        "count": format!("{}/{}", count.numer(), count.denom()),
        "fraction": count.to_f64().unwrap(),
        "deviation": deviation,
    })
}

/// Columns i, numerator, value for a grid sequence (i starts at 1).
pub fn sequence_csv(numerators: &[u64], q: u64) -> String {
    let mut out = String::from("i,numerator,value\n");
    for (idx, &v) in numerators.iter().enumerate() {
        out.push_str(&format!(
            "{},{},{}\n",
            idx + 1,
            v,
            fmt17(v as f64 / q as f64)
        ));
    }
    out
}

pub fn sequence_json(numerators: &[u64], q: u64) -> Value {
    Value::Array(
        numerators
            .iter()
            .enumerate()
            .map(|(idx, &v)| {
                json!({"i": idx + 1, "numerator": v, "value": v as f64 / q as f64})
            })
            .collect(),
    )
}

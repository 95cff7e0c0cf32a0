//! CSV and JSON emitters. Floats are written with 17 significant digits so
//! that they parse back to the same `f64`.

use std::io::Write;

use anyhow::Result;
use serde::Serialize;
use serde_json::value::RawValue;

/// `x` with 17 significant digits, e.g. `2.5330295910584444e-2`.
pub fn float17(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

fn raw(x: f64) -> Box<RawValue> {
    let text = if x.is_finite() { float17(x) } else { "null".to_string() };
    RawValue::from_string(text).expect("formatted floats are valid JSON")
}

#[derive(Clone, Debug, PartialEq)]
pub struct OutputRecord {
    pub n: u32,
    pub radius: f64,
    pub theta: f64,
    pub value: f64,
    pub method: String,
    pub error_estimate: Option<f64>,
}

#[derive(Serialize)]
struct JsonRecord<'a> {
    n: u32,
    #[serde(rename = "R")]
    radius: Box<RawValue>,
    theta: Box<RawValue>,
    value: Box<RawValue>,
    method: &'a str,
    error_estimate: Option<Box<RawValue>>,
}

impl OutputRecord {
    fn json(&self) -> JsonRecord<'_> {
        JsonRecord {
            n: self.n,
            radius: raw(self.radius),
            theta: raw(self.theta),
            value: raw(self.value),
            method: &self.method,
            error_estimate: self.error_estimate.map(raw),
        }
    }

    fn csv_fields(&self) -> [String; 6] {
        [
            self.n.to_string(),
            float17(self.radius),
            float17(self.theta),
            float17(self.value),
            self.method.clone(),
            self.error_estimate.map(float17).unwrap_or_default(),
        ]
    }
}

pub const CSV_HEADER: [&str; 6] = ["n", "R", "theta", "value", "method", "error_estimate"];

pub fn write_csv<W: Write>(out: W, records: &[OutputRecord]) -> Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in records {
        w.write_record(r.csv_fields())?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_json<W: Write>(mut out: W, records: &[OutputRecord]) -> Result<()> {
    let rows: Vec<_> = records.iter().map(OutputRecord::json).collect();
    serde_json::to_writer_pretty(&mut out, &rows)?;
    writeln!(out)?;
    Ok(())
}

#[derive(Serialize)]
struct JsonTerm {
    k: u32,
    term: Box<RawValue>,
    partial_sum: Box<RawValue>,
}

#[derive(Serialize)]
struct JsonFourier<'a> {
    record: JsonRecord<'a>,
    two_pi_g2: Box<RawValue>,
    leading: Box<RawValue>,
    terms_used: u32,
    tail_bound: Box<RawValue>,
    converged: bool,
    terms: Vec<JsonTerm>,
}

/// Fourier output: the record plus the per-term breakdown.
pub struct FourierReport {
    pub record: OutputRecord,
    pub expansion: sphere_green::applications::FourierExpansion,
}

impl FourierReport {
    /// Rows `(k, term, partial sum)`, with the `k = 0` leading term first.
    fn rows(&self) -> Vec<(u32, f64, f64)> {
        let e = &self.expansion;
        std::iter::once((0, e.leading, e.leading))
            .chain(e.terms.iter().map(|t| (t.k, t.term, t.partial_sum)))
            .collect()
    }

    pub fn write_text<W: Write>(&self, mut out: W) -> Result<()> {
        let e = &self.expansion;
        writeln!(out, "2*pi*G2      {}", float17(e.value))?;
        writeln!(out, "G2           {}", float17(self.record.value))?;
        writeln!(out, "distance     {}", float17(self.record.theta))?;
        writeln!(out, "terms used   {}", e.terms_used)?;
        writeln!(out, "tail bound   {:.3e}{}", e.tail_bound, if e.converged { "" } else { " (max terms reached)" })?;
        writeln!(out)?;
        writeln!(out, "{:>6}  {:>24}  {:>24}", "k", "term", "partial sum")?;
        for (k, term, sum) in self.rows() {
            writeln!(out, "{k:>6}  {:>24}  {:>24}", float17(term), float17(sum))?;
        }
        Ok(())
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
        w.write_record(["k", "term", "partial_sum"])?;
        for (k, term, sum) in self.rows() {
            w.write_record([k.to_string(), float17(term), float17(sum)])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn write_json<W: Write>(&self, mut out: W) -> Result<()> {
        let e = &self.expansion;
        let doc = JsonFourier {
            record: self.record.json(),
            two_pi_g2: raw(e.value),
            leading: raw(e.leading),
            terms_used: e.terms_used,
            tail_bound: raw(e.tail_bound),
            converged: e.converged,
            terms: self
                .rows()
                .into_iter()
                .map(|(k, term, sum)| JsonTerm { k, term: raw(term), partial_sum: raw(sum) })
                .collect(),
        };
        serde_json::to_writer_pretty(&mut out, &doc)?;
        writeln!(out)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(value: f64) -> OutputRecord {
        OutputRecord { n: 3, radius: 1.0, theta: 0.1, value, method: "odd-closed".into(), error_estimate: None }
    }

    #[test]
    fn seventeen_digits_round_trip() {
        for x in [0.1, 1.0 / 3.0, 2.5330295910584444e-2, 1e-300, -7.25e12] {
            let s = float17(x);
            assert_eq!(s.parse::<f64>().unwrap(), x);
            let mantissa = s.split('e').next().unwrap().trim_start_matches('-');
            assert_eq!(mantissa.chars().filter(char::is_ascii_digit).count(), 17);
        }
    }

    #[test]
    fn csv_layout() {
        let mut buf = Vec::new();
        write_csv(&mut buf, &[record(0.5)]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "n,R,theta,value,method,error_estimate\n3,1.0000000000000000e0,1.0000000000000001e-1,5.0000000000000000e-1,odd-closed,\n");
    }

    #[test]
    fn json_layout() {
        let mut buf = Vec::new();
        let mut r = record(0.25);
        r.error_estimate = Some(1e-12);
        write_json(&mut buf, &[r]).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        assert_eq!(v[0]["R"], 1.0);
        assert_eq!(v[0]["value"], 0.25);
        assert_eq!(v[0]["error_estimate"], 1e-12);
        assert_eq!(v[0]["method"], "odd-closed");
    }
}

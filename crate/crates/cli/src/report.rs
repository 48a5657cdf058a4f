//! The run report and its JSON and CSV renderings.

use std::collections::BTreeMap;

use biortho_core::Complex;
use serde::Serialize;

/// JSON schema version.
pub const SCHEMA: u32 = 1;

/// Complex value as it appears in JSON.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct C {
    pub re: f64,
    pub im: f64,
}

impl From<Complex> for C {
    fn from(z: Complex) -> Self {
        Self { re: z.re, im: z.im }
    }
}

/// One output row. Commands fill in the fields that apply to them.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Record {
    pub index: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z: Option<C>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<C>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<C>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub which: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p1: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p2: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub start: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub root_theta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_theta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<C>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reference: Option<C>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub xi1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub xi1_bound: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub xi2: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub xi2_bound: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pass: Option<bool>,
    /// Error message when the point could not be computed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub schema: u32,
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub outputs: Vec<Record>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bounds: Option<BTreeMap<String, f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pass: Option<bool>,
    pub timing_ms: u64,
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        Self {
            schema: SCHEMA,
            command: command.to_string(),
            inputs: BTreeMap::new(),
            outputs: Vec::new(),
            bounds: None,
            pass: None,
            timing_ms: 0,
        }
    }

    pub fn input(&mut self, key: &str, value: impl ToString) {
        self.inputs.insert(key.to_string(), value.to_string());
    }

    /// Appends a record, numbering it by position.
    pub fn push(&mut self, mut r: Record) {
        r.index = self.outputs.len();
        self.outputs.push(r);
    }

    pub fn has_errors(&self) -> bool {
        self.outputs.iter().any(|r| r.detail.is_some())
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// One row per record, columns in [`CSV_COLUMNS`] order.
    pub fn to_csv(&self) -> Result<String, csv::Error> {
        let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
        w.write_record(CSV_COLUMNS)?;
        for r in &self.outputs {
            w.serialize(CsvRow::new(&self.command, r))?;
        }
        let bytes = w.into_inner().map_err(|e| e.into_error())?;
        Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
    }
}

/// CSV header. Complex values are split into `_re`/`_im` columns; fields
/// that do not apply to a command are left empty.
pub const CSV_COLUMNS: [&str; 32] = [
    "command", "index", "n", "m", "z_re", "z_im", "alpha_re", "alpha_im", "beta_re", "beta_im", "which",
    "theta", "k", "p1", "p2", "p", "q", "start", "root_theta", "min_theta", "value_re", "value_im",
    "reference_re", "reference_im", "error", "bound", "xi1", "xi1_bound", "xi2", "xi2_bound", "pass",
    "detail",
];

#[derive(Serialize)]
struct CsvRow<'a> {
    command: &'a str,
    index: usize,
    n: Option<usize>,
    m: Option<usize>,
    z_re: Option<f64>,
    z_im: Option<f64>,
    alpha_re: Option<f64>,
    alpha_im: Option<f64>,
    beta_re: Option<f64>,
    beta_im: Option<f64>,
    which: Option<&'a str>,
    theta: Option<f64>,
    k: Option<usize>,
    p1: Option<usize>,
    p2: Option<usize>,
    p: Option<f64>,
    q: Option<f64>,
    start: Option<usize>,
    root_theta: Option<f64>,
    min_theta: Option<f64>,
    value_re: Option<f64>,
    value_im: Option<f64>,
    reference_re: Option<f64>,
    reference_im: Option<f64>,
    error: Option<f64>,
    bound: Option<f64>,
    xi1: Option<f64>,
    xi1_bound: Option<f64>,
    xi2: Option<f64>,
    xi2_bound: Option<f64>,
    pass: Option<bool>,
    detail: Option<&'a str>,
}

impl<'a> CsvRow<'a> {
    fn new(command: &'a str, r: &'a Record) -> Self {
        let re = |c: Option<C>| c.map(|c| c.re);
        let im = |c: Option<C>| c.map(|c| c.im);
        Self {
            command,
            index: r.index,
            n: r.n,
            m: r.m,
            z_re: re(r.z),
            z_im: im(r.z),
            alpha_re: re(r.alpha),
            alpha_im: im(r.alpha),
            beta_re: re(r.beta),
            beta_im: im(r.beta),
            which: r.which.as_deref(),
            theta: r.theta,
            k: r.k,
            p1: r.p1,
            p2: r.p2,
            p: r.p,
            q: r.q,
            start: r.start,
            root_theta: r.root_theta,
            min_theta: r.min_theta,
            value_re: re(r.value),
            value_im: im(r.value),
            reference_re: re(r.reference),
            reference_im: im(r.reference),
            error: r.error,
            bound: r.bound,
            xi1: r.xi1,
            xi1_bound: r.xi1_bound,
            xi2: r.xi2,
            xi2_bound: r.xi2_bound,
            pass: r.pass,
            detail: r.detail.as_deref(),
        }
    }
}

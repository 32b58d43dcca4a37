//! Machine-readable reports. Everything serialized here is deterministic
//! for a fixed (config, seed); wall-clock timings live only in the CSV
//! sidecar column.

use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Flag {
    /// named invariant this flag traces to
    pub name: String,
    pub passed: bool,
    pub value: f64,
    pub threshold: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub experiment: String,
    pub seed: u64,
    pub tol_scale: f64,
    pub tables: Vec<Table>,
    pub flags: Vec<Flag>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(experiment: &str, seed: u64, tol_scale: f64) -> Self {
        Report {
            experiment: experiment.to_string(),
            seed,
            tol_scale,
            tables: Vec::new(),
            flags: Vec::new(),
            notes: Vec::new(),
        }
    }

    /// flag that passes when value ≤ threshold
    pub fn flag_le(&mut self, name: &str, value: f64, threshold: f64) {
        self.flags.push(Flag { name: name.to_string(), passed: value <= threshold, value, threshold });
    }

    /// flag that passes when value > threshold
    pub fn flag_gt(&mut self, name: &str, value: f64, threshold: f64) {
        self.flags.push(Flag { name: name.to_string(), passed: value > threshold, value, threshold });
    }

    /// flag for an exact boolean condition; value records the witness
    pub fn flag_bool(&mut self, name: &str, passed: bool, value: f64) {
        self.flags.push(Flag { name: name.to_string(), passed, value, threshold: 0.0 });
    }

    pub fn all_passed(&self) -> bool {
        self.flags.iter().all(|f| f.passed)
    }

    pub fn first_failure(&self) -> Option<&Flag> {
        self.flags.iter().find(|f| !f.passed)
    }

    pub fn table(&mut self, name: &str, columns: &[&str], rows: Vec<Vec<String>>) {
        self.tables.push(Table {
            name: name.to_string(),
            columns: columns.iter().map(|s| s.to_string()).collect(),
            rows,
        });
    }
}

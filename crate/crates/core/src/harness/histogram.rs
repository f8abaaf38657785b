use std::collections::BTreeMap;
use std::fmt::Write;

use crate::sim::CycleRecord;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Histogram {
    pub counts: BTreeMap<String, u64>,
    pub total: u64,
}

impl Histogram {
    pub fn add(&mut self, key: impl Into<String>) {
        *self.counts.entry(key.into()).or_insert(0) += 1;
        self.total += 1;
    }

    /// Tallies presented outputs over every record after cycle 0, whose
    /// outputs are the reset values.
    pub fn from_records(records: &[CycleRecord]) -> Histogram {
        let mut h = Histogram::default();
        for r in records.iter().filter(|r| r.cycle > 0) {
            h.add(r.output_key());
        }
        h
    }

    pub fn get(&self, key: &str) -> u64 {
        self.counts.get(key).copied().unwrap_or(0)
    }
}

/// `<bits> <count> <fraction>` per key in lexicographic order, then
/// `total <N>`.
pub fn report_histogram(h: &Histogram) -> String {
    let mut out = String::new();
    for (key, &count) in &h.counts {
        let fraction = if h.total == 0 {
            0.0
        } else {
            count as f64 / h.total as f64
        };
        let _ = writeln!(out, "{key} {count} {fraction:.4}");
    }
    let _ = writeln!(out, "total {}", h.total);
    out
}

//! JSON report documents.
//!
//! Field order is fixed by the struct definitions. Big integers are decimal
//! strings; indices and primes are plain numbers.

use num_bigint::{BigInt, BigUint};
use serde::{Deserialize, Serialize};

use realseq_core::local::EverywhereLocal;
use realseq_core::{LocalReport, MultiplierReport, RealizabilityReport};

use crate::error::FormatError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportDocument {
    pub horizon: usize,
    pub verdict: String,
    pub first_failure: Option<FailureEntry>,
    pub records: Vec<RecordEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub multiplier: Option<MultiplierEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub local_reports: Option<Vec<LocalEntry>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FailureEntry {
    pub n: usize,
    pub condition: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RecordEntry {
    pub n: usize,
    pub dold_value: String,
    pub dold_mod_n: String,
    pub sign_ok: bool,
    pub divisibility_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MultiplierEntry {
    pub value: String,
    pub sign_ok: bool,
    pub denominators: Vec<String>,
    pub primes: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LocalEntry {
    pub prime: u64,
    pub verdict: String,
    pub first_failure: Option<FailureEntry>,
    pub records: Vec<RecordEntry>,
}

fn failure_entry(report: &RealizabilityReport) -> Option<FailureEntry> {
    report
        .first_failure
        .map(|f| FailureEntry { n: f.n, condition: f.condition.to_string() })
}

fn record_entries(report: &RealizabilityReport) -> Vec<RecordEntry> {
    report
        .records
        .iter()
        .map(|r| RecordEntry {
            n: r.n,
            dold_value: r.dold_value.to_string(),
            dold_mod_n: r.dold_mod_n.to_string(),
            sign_ok: r.sign_ok,
            divisibility_ok: r.divisibility_ok,
        })
        .collect()
}

impl From<&RealizabilityReport> for ReportDocument {
    fn from(report: &RealizabilityReport) -> Self {
        ReportDocument {
            horizon: report.horizon,
            verdict: report.verdict_label(),
            first_failure: failure_entry(report),
            records: record_entries(report),
            multiplier: None,
            local_reports: None,
        }
    }
}

impl From<&MultiplierReport> for MultiplierEntry {
    fn from(m: &MultiplierReport) -> Self {
        MultiplierEntry {
            value: m.multiplier.to_string(),
            sign_ok: m.sign_ok,
            denominators: m.denominators.iter().map(ToString::to_string).collect(),
            primes: m.primes(),
        }
    }
}

impl From<&LocalReport> for LocalEntry {
    fn from(l: &LocalReport) -> Self {
        LocalEntry {
            prime: l.prime,
            verdict: l.report.verdict_label(),
            first_failure: failure_entry(&l.report),
            records: record_entries(&l.report),
        }
    }
}

impl ReportDocument {
    pub fn with_multiplier(mut self, m: &MultiplierReport) -> Self {
        self.multiplier = Some(m.into());
        self
    }

    pub fn with_local(mut self, reports: &[LocalReport]) -> Self {
        self.local_reports = Some(reports.iter().map(LocalEntry::from).collect());
        self
    }

    pub fn with_everywhere_local(self, scan: &EverywhereLocal) -> Self {
        self.with_local(&scan.reports)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }

    /// Parses and validates a document.
    pub fn from_json(text: &str) -> Result<Self, FormatError> {
        let doc: ReportDocument = serde_json::from_str(text)?;
        doc.validate()?;
        Ok(doc)
    }

    fn validate(&self) -> Result<(), FormatError> {
        check_block(self.horizon, &self.verdict, self.first_failure.as_ref(), &self.records)?;
        if let Some(m) = &self.multiplier {
            decimal::<BigUint>(&m.value)?;
            if m.denominators.len() != self.horizon {
                return Err(invalid("one denominator per index"));
            }
            for d in &m.denominators {
                decimal::<BigUint>(d)?;
            }
        }
        for l in self.local_reports.iter().flatten() {
            check_block(self.horizon, &l.verdict, l.first_failure.as_ref(), &l.records)?;
        }
        Ok(())
    }
}

fn invalid(why: &str) -> FormatError {
    FormatError::Report(why.to_string())
}

fn decimal<T: std::str::FromStr>(s: &str) -> Result<T, FormatError> {
    s.parse().map_err(|_| FormatError::Report(format!("`{s}` is not a decimal integer")))
}

fn check_block(
    horizon: usize,
    verdict: &str,
    failure: Option<&FailureEntry>,
    records: &[RecordEntry],
) -> Result<(), FormatError> {
    let known = ["fails-D", "fails-S", "fails-both"];
    let consistent = format!("consistent-up-to-{horizon}");
    if verdict != consistent && !known.contains(&verdict) {
        return Err(FormatError::Report(format!("unknown verdict `{verdict}`")));
    }
    if (verdict == consistent) != failure.is_none() {
        return Err(invalid("verdict and first_failure disagree"));
    }
    if let Some(f) = failure {
        if !["(D)", "(S)", "(D) and (S)"].contains(&f.condition.as_str()) {
            return Err(FormatError::Report(format!("unknown condition `{}`", f.condition)));
        }
    }
    if records.len() != horizon {
        return Err(invalid("one record per index"));
    }
    for (i, r) in records.iter().enumerate() {
        if r.n != i + 1 {
            return Err(invalid("records must be indexed 1..=horizon"));
        }
        decimal::<BigInt>(&r.dold_value)?;
        decimal::<BigInt>(&r.dold_mod_n)?;
    }
    Ok(())
}

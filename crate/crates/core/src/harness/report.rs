use std::io::Write;

use serde::{Deserialize, Serialize};

use super::checks::{check_for, declared, Context};
use super::config::{OutputFormat, SuiteConfig};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportEntry {
    pub test_id: String,
    pub module: String,
    pub claim: String,
    pub status: Status,
    /// `None` when the check could not be evaluated.
    pub max_residual: Option<f64>,
    pub threshold: f64,
    pub samples: usize,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub errors: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConformanceReport {
    pub seed: u64,
    pub samples: usize,
    pub tolerance: f64,
    pub entries: Vec<ReportEntry>,
    pub summary: Summary,
}

impl ConformanceReport {
    pub fn all_passed(&self) -> bool {
        self.summary.passed == self.summary.total
    }

    pub fn entry(&self, id: &str) -> Option<&ReportEntry> {
        self.entries.iter().find(|e| e.test_id == id)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record([
            "test_id", "module", "claim", "status", "max_residual", "threshold", "samples", "detail",
        ])?;
        for e in &self.entries {
            let status = match e.status {
                Status::Pass => "pass",
                Status::Fail => "fail",
                Status::Error => "error",
            };
            w.write_record([
                e.test_id.clone(),
                e.module.clone(),
                e.claim.clone(),
                status.to_string(),
                e.max_residual.map(|r| format!("{r:.16e}")).unwrap_or_default(),
                format!("{:.16e}", e.threshold),
                e.samples.to_string(),
                e.detail.clone(),
            ])?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
    }

    pub fn render(&self, format: OutputFormat) -> Result<String> {
        match format {
            OutputFormat::Json => self.to_json(),
            OutputFormat::Csv => self.to_csv(),
        }
    }

    pub fn write_to(&self, out: &mut dyn Write, format: OutputFormat) -> Result<()> {
        out.write_all(self.render(format)?.as_bytes())?;
        Ok(())
    }
}

/// Runs every declared invariant over the configured sweep.
pub fn run_suite(config: &SuiteConfig) -> Result<ConformanceReport> {
    config.validate()?;
    let ctx = Context::new(config);
    let mut entries = Vec::new();
    let mut summary = Summary::default();
    for (module, id, claim) in declared() {
        let check = check_for(id).ok_or_else(|| Error::InvalidConfig(format!("no check registered for {id}")))?;
        let entry = match check(&ctx) {
            Ok(o) => ReportEntry {
                test_id: id.into(),
                module: module.into(),
                claim: claim.into(),
                status: if o.passed(config.tolerance) { Status::Pass } else { Status::Fail },
                max_residual: Some(o.max_residual),
                threshold: o.threshold.unwrap_or(config.tolerance),
                samples: o.samples,
                detail: o.detail,
            },
            Err(e) => ReportEntry {
                test_id: id.into(),
                module: module.into(),
                claim: claim.into(),
                status: Status::Error,
                max_residual: None,
                threshold: config.tolerance,
                samples: 0,
                detail: e.to_string(),
            },
        };
        summary.total += 1;
        match entry.status {
            Status::Pass => summary.passed += 1,
            Status::Fail => summary.failed += 1,
            Status::Error => summary.errors += 1,
        }
        entries.push(entry);
    }
    Ok(ConformanceReport {
        seed: config.seed,
        samples: config.samples,
        tolerance: config.tolerance,
        entries,
        summary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> SuiteConfig {
        SuiteConfig {
            samples: 8,
            ..SuiteConfig::default()
        }
    }

    #[test]
    fn small_suite_passes() {
        let r = run_suite(&small()).unwrap();
        let failing: Vec<_> = r
            .entries
            .iter()
            .filter(|e| e.status != Status::Pass)
            .map(|e| (&e.test_id, e.max_residual, &e.detail))
            .collect();
        assert!(failing.is_empty(), "{failing:?}");
    }

    #[test]
    fn csv_has_one_row_per_entry() {
        let r = run_suite(&small()).unwrap();
        let csv = r.to_csv().unwrap();
        assert_eq!(csv.lines().count(), r.entries.len() + 1);
    }

    #[test]
    fn json_round_trips() {
        let r = run_suite(&small()).unwrap();
        let back: ConformanceReport = serde_json::from_str(&r.to_json().unwrap()).unwrap();
        assert_eq!(back, r);
    }
}

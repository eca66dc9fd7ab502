//! Batch classification over a directory of Cayley tables and spec lists.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;

use wedderkit::config::AnalysisConfig;
use wedderkit::shoda::{classify_group, cross_validate_report, CoverageReport, CrossValidation, Level, Tristate};
use wedderkit::Result;

use crate::load_table;
use wedderkit::dsl::parse_group;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    Table(PathBuf),
    Spec(String),
}

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: String,
    pub source: Source,
}

impl CorpusEntry {
    pub fn describe_source(&self) -> String {
        match &self.source {
            Source::Table(p) => p.file_name().map_or_else(|| p.display().to_string(), |f| f.to_string_lossy().into_owned()),
            Source::Spec(s) => s.clone(),
        }
    }

    pub fn load(&self, bound: usize) -> Result<wedderkit::group::GroupRef> {
        match &self.source {
            Source::Table(p) => load_table(p, bound),
            Source::Spec(s) => parse_group(s, bound),
        }
    }
}

/// Entries of a spec list: `name = spec` or a bare spec, `#` comments.
pub fn parse_spec_list(text: &str) -> Vec<CorpusEntry> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(|l| match l.split_once('=') {
            Some((name, spec)) => CorpusEntry { name: name.trim().to_string(), source: Source::Spec(spec.trim().to_string()) },
            None => CorpusEntry { name: l.to_string(), source: Source::Spec(l.to_string()) },
        })
        .collect()
}

fn entries_of_file(path: &Path) -> Result<Vec<CorpusEntry>> {
    if path.extension().is_some_and(|e| e == "tbl") {
        let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        return Ok(vec![CorpusEntry { name, source: Source::Table(path.to_path_buf()) }]);
    }
    Ok(parse_spec_list(&std::fs::read_to_string(path)?))
}

/// A `.tbl` file, a spec list, or a directory of both (files taken in name
/// order; other extensions than `.tbl`, `.specs` and `.txt` are ignored).
pub fn load_corpus(path: &Path) -> Result<Vec<CorpusEntry>> {
    if !path.is_dir() {
        return entries_of_file(path);
    }
    let mut files: Vec<PathBuf> = std::fs::read_dir(path)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|e| e == "tbl" || e == "specs" || e == "txt"))
        .collect();
    files.sort();
    let mut entries = Vec::new();
    for f in files {
        entries.extend(entries_of_file(&f)?);
    }
    Ok(entries)
}

#[derive(Serialize)]
pub struct EntryResult {
    pub name: String,
    pub source: String,
    pub order: Option<usize>,
    pub report: Option<CoverageReport>,
    pub cross_validation: Option<CrossValidation>,
    pub error: Option<String>,
}

#[derive(Serialize, Default)]
pub struct GeneralizedCounts {
    #[serde(rename = "true")]
    pub yes: usize,
    #[serde(rename = "false")]
    pub no: usize,
    pub unknown: usize,
}

#[derive(Serialize, Default)]
pub struct Summary {
    pub groups: usize,
    pub errors: usize,
    pub monomial: usize,
    pub strongly_monomial: usize,
    pub generalized_strongly_monomial: GeneralizedCounts,
    pub oracle_agreements: usize,
    /// Pair counts by level over all groups.
    pub pairs_by_level: BTreeMap<&'static str, usize>,
}

#[derive(Serialize)]
pub struct CorpusReport {
    pub entries: Vec<EntryResult>,
    pub summary: Summary,
}

impl CorpusReport {
    pub fn has_errors(&self) -> bool {
        self.summary.errors > 0
    }

    pub fn has_unknown(&self) -> bool {
        self.summary.generalized_strongly_monomial.unknown > 0
            || self.summary.pairs_by_level.get(Level::Undetermined.as_str()).is_some_and(|&n| n > 0)
    }
}

fn run_entry(entry: &CorpusEntry, config: &AnalysisConfig, oracle: bool) -> EntryResult {
    let mut result = EntryResult {
        name: entry.name.clone(),
        source: entry.describe_source(),
        order: None,
        report: None,
        cross_validation: None,
        error: None,
    };
    let outcome = (|| -> Result<()> {
        let group = entry.load(config.max_order)?;
        result.order = Some(group.order());
        let report = classify_group(&group, &entry.name, config)?;
        if oracle {
            result.cross_validation = Some(cross_validate_report(&group, &report, config)?);
        }
        result.report = Some(report);
        Ok(())
    })();
    if let Err(e) = outcome {
        result.error = Some(e.to_string());
    }
    result
}

/// Classify every entry (in parallel on the current pool), keeping input
/// order. Errors are recorded per entry and do not stop the batch.
pub fn run_corpus(entries: &[CorpusEntry], config: &AnalysisConfig, oracle: bool) -> CorpusReport {
    // TODO: stream results for corpora too large to hold every report in memory
    let results: Vec<EntryResult> = entries.par_iter().map(|e| run_entry(e, config, oracle)).collect();
    let mut summary = Summary::default();
    for level in [Level::NotShoda, Level::Shoda, Level::Undetermined, Level::GeneralizedStrongShoda, Level::StrongShoda] {
        summary.pairs_by_level.insert(level.as_str(), 0);
    }
    for r in &results {
        summary.groups += 1;
        if r.error.is_some() {
            summary.errors += 1;
            continue;
        }
        let report = r.report.as_ref().expect("successful entries carry a report");
        summary.monomial += report.flags.monomial as usize;
        summary.strongly_monomial += report.flags.strongly_monomial as usize;
        match report.flags.generalized_strongly_monomial {
            Tristate::True => summary.generalized_strongly_monomial.yes += 1,
            Tristate::False => summary.generalized_strongly_monomial.no += 1,
            Tristate::Unknown => summary.generalized_strongly_monomial.unknown += 1,
        }
        summary.oracle_agreements += r.cross_validation.as_ref().is_some_and(|c| c.agree) as usize;
        for v in &report.verdicts {
            *summary.pairs_by_level.get_mut(v.level.as_str()).unwrap() += 1;
        }
    }
    CorpusReport { entries: results, summary }
}

/// Convenience for a spec list held in memory.
pub fn run_spec_list(text: &str, config: &AnalysisConfig, oracle: bool) -> CorpusReport {
    run_corpus(&parse_spec_list(text), config, oracle)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_lists() {
        let e = parse_spec_list("# c\n\ns3 = sym:3\ncyclic:4  # trailing\n");
        assert_eq!(e.len(), 2);
        assert_eq!(e[0].name, "s3");
        assert_eq!(e[1].source, Source::Spec("cyclic:4".into()));
    }

    #[test]
    fn errors_are_isolated() {
        let r = run_spec_list("bad = cyclic:x\ns3 = sym:3\n", &AnalysisConfig::default(), true);
        assert_eq!(r.summary.groups, 2);
        assert_eq!(r.summary.errors, 1);
        assert_eq!(r.summary.strongly_monomial, 1);
        assert_eq!(r.summary.oracle_agreements, 1);
        assert!(r.entries[0].error.as_deref().unwrap().contains("position 7"));
    }

    #[test]
    fn empty_corpus() {
        let r = run_spec_list("", &AnalysisConfig::default(), false);
        assert_eq!(r.summary.groups, 0);
        assert!(!r.has_errors() && !r.has_unknown());
    }
}

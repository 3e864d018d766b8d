//! Battery orchestration: run a configured set of tests over named groups of
//! source strings, summarize each group's metric vector, and compare groups
//! pairwise.
//!
//! The workflow mirrors a "groups of strings per source" experiment layout:
//! per test, each group contributes one metric per string (book stack: ones
//! after the transform; Borel: the aggregate count deviation; compositeness
//! battery: bits consumed; entropy: the estimate; walk: the range). Group
//! vectors are summarized and compared with Kolmogorov-Smirnov always,
//! Shapiro-Wilk per group, and Welch's t only when no group rejects
//! normality.
//!
//! Reports are deterministic given the configuration: two runs differ only
//! in the `generated_at_unix` provenance field.

use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::ait_tests::{book_stack_metric, borel_normality, entropy_sliding, random_walk_range};
use crate::bitstream::BitString;
use crate::error::{Error, Result};
use crate::number_theory::{enumerate_carmichael, load_carmichael_file, ss_carmichael_metric, CarmichaelSet};
use crate::sources::{SourceDescriptor, SourceKind};
use crate::stats::{five_number_summary, ks_two_sample, shapiro_wilk, welch_t, FiveNumberSummary, StatTestResult};

/// Default Carmichael bound when the compositeness test runs without an
/// explicit bound or list file.
pub const DEFAULT_CARMICHAEL_BOUND: u64 = 10_000_000;

const WITNESS_ENCODING: &str = "fixed-width rejection sampling over [2, n-2]: \
    ceil(log2(n-3)) bits per draw, rejected draws consume their bits, \
    rounds k = 1, 2, ... ascending over pending numbers, early stop per \
    number on its first witness";

/// The tests a battery run can include.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TestKind {
    BookStack,
    Borel,
    SsCarmichael,
    Entropy,
    Walk,
}

impl TestKind {
    pub fn name(self) -> &'static str {
        match self {
            TestKind::BookStack => "book_stack",
            TestKind::Borel => "borel",
            TestKind::SsCarmichael => "ss_carmichael",
            TestKind::Entropy => "entropy",
            TestKind::Walk => "walk",
        }
    }
}

/// One named source group: every string in it is treated as a draw from the
/// same source.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SourceGroup {
    pub name: String,
    pub strings: Vec<SourceDescriptor>,
}

/// Per-test knobs. Everything here is echoed into the report's provenance
/// block so a report is reproducible from itself.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct TestParameters {
    pub entropy_window: u64,
    pub entropy_positions: u64,
    pub borel_m_limit: Option<u32>,
    pub carmichael_bound: Option<u64>,
    pub carmichael_list: Option<PathBuf>,
}

impl Default for TestParameters {
    fn default() -> Self {
        Self {
            entropy_window: 4096,
            entropy_positions: 4096,
            borel_m_limit: None,
            carmichael_bound: None,
            carmichael_list: None,
        }
    }
}

fn default_significance() -> f64 {
    crate::stats::DEFAULT_SIGNIFICANCE
}

/// Full configuration of a battery run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BatteryConfig {
    pub sources: Vec<SourceGroup>,
    pub tests: Vec<TestKind>,
    #[serde(default)]
    pub parameters: TestParameters,
    #[serde(default = "default_significance")]
    pub significance: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_dir: Option<PathBuf>,
}

impl BatteryConfig {
    /// Parses a configuration from a JSON file.
    pub fn from_json_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }

    /// Rejects inconsistent configurations before any work happens.
    pub fn validate(&self, out_dir: Option<&Path>) -> Result<()> {
        if self.sources.is_empty() {
            return Err(Error::Config("no source groups configured".into()));
        }
        if self.tests.is_empty() {
            return Err(Error::Config("no tests selected".into()));
        }
        let mut seen_tests = BTreeSet::new();
        for t in &self.tests {
            if !seen_tests.insert(*t) {
                return Err(Error::Config(format!("test {} listed twice", t.name())));
            }
        }
        if !(self.significance > 0.0 && self.significance < 1.0) {
            return Err(Error::Config(format!(
                "significance threshold must lie in (0, 1), got {}",
                self.significance
            )));
        }
        let mut names = BTreeSet::new();
        for group in &self.sources {
            if group.name.is_empty()
                || !group
                    .name
                    .chars()
                    .all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '-' | '.'))
            {
                return Err(Error::Config(format!(
                    "group name {:?} must be nonempty and use only [A-Za-z0-9_.-]",
                    group.name
                )));
            }
            if !names.insert(&group.name) {
                return Err(Error::Config(format!("duplicate group name {:?}", group.name)));
            }
            if group.strings.is_empty() {
                return Err(Error::Config(format!("group {:?} has no strings", group.name)));
            }
            for (i, d) in group.strings.iter().enumerate() {
                d.validate().map_err(|e| {
                    Error::Config(format!("group {:?} string {i}: {e}", group.name))
                })?;
                if let (Some(out), Some(path)) = (out_dir, d.path.as_ref()) {
                    if path == out || path.starts_with(out) {
                        return Err(Error::Config(format!(
                            "group {:?} reads {} from inside the output directory",
                            group.name,
                            path.display()
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Summary row of one group under one test.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupSummary {
    pub group: String,
    pub strings_used: usize,
    #[serde(flatten)]
    pub summary: FiveNumberSummary,
}

/// One pairwise comparison cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairResult {
    pub a: String,
    pub b: String,
    #[serde(flatten)]
    pub result: StatTestResult,
}

/// One per-group test result (Shapiro-Wilk).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupStat {
    pub group: String,
    #[serde(flatten)]
    pub result: StatTestResult,
}

/// A string whose test failed; recorded and excluded from statistics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StringFailure {
    pub group: String,
    pub index: usize,
    pub error: String,
}

/// Everything the battery learned about one test across all groups.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct TestSection {
    pub summaries: Vec<GroupSummary>,
    pub shapiro_wilk: Vec<GroupStat>,
    pub ks: Vec<PairResult>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub welch: Option<Vec<PairResult>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub errors: Vec<StringFailure>,
}

/// Pairwise matrices produced by [`compare_sources`].
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ComparisonMatrices {
    pub shapiro_wilk: Vec<GroupStat>,
    pub ks: Vec<PairResult>,
    pub welch: Option<Vec<PairResult>>,
    pub warnings: Vec<String>,
}

/// Provenance of one source string; file sources carry a content digest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SourceProvenance {
    #[serde(flatten)]
    pub descriptor: SourceDescriptor,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sha256: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupProvenance {
    pub name: String,
    pub strings: Vec<SourceProvenance>,
}

/// Every open parameter decision, echoed so reports are self-describing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub tool_version: String,
    /// Wall-clock seconds since the Unix epoch; the only nondeterministic
    /// field in a report.
    pub generated_at_unix: u64,
    pub significance: f64,
    pub quartile_convention: String,
    pub ks_exact_limit: u64,
    pub entropy_window: u64,
    pub entropy_positions: u64,
    pub entropy_cap: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub borel_m_limit: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub carmichael_source: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub carmichael_count: Option<usize>,
    pub witness_encoding: String,
    pub sources: Vec<GroupProvenance>,
}

/// The full battery report: provenance plus one section per selected test.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BatteryReport {
    pub provenance: Provenance,
    pub tests: BTreeMap<String, TestSection>,
}

/// Runs the battery on the current thread pool.
pub fn run_battery(config: &BatteryConfig) -> Result<BatteryReport> {
    run_battery_with_jobs(config, 0)
}

/// Runs the battery with a bounded worker pool; `jobs == 0` uses the global
/// rayon default.
pub fn run_battery_with_jobs(config: &BatteryConfig, jobs: usize) -> Result<BatteryReport> {
    if jobs == 0 {
        execute(config)
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::Config(format!("cannot build a {jobs}-thread pool: {e}")))?;
        pool.install(|| execute(config))
    }
}

fn execute(config: &BatteryConfig) -> Result<BatteryReport> {
    config.validate(config.output_dir.as_deref())?;

    let carmichael = if config.tests.contains(&TestKind::SsCarmichael) {
        Some(resolve_carmichael_set(&config.parameters)?)
    } else {
        None
    };

    // One task per (group, string); strings are materialized inside the task
    // so generation parallelizes with the tests themselves.
    let tasks: Vec<(usize, usize)> = config
        .sources
        .iter()
        .enumerate()
        .flat_map(|(gi, g)| (0..g.strings.len()).map(move |si| (gi, si)))
        .collect();
    let outcomes: Vec<BTreeMap<TestKind, std::result::Result<f64, String>>> = tasks
        .par_iter()
        .map(|&(gi, si)| {
            run_one_string(
                &config.sources[gi].strings[si],
                &config.tests,
                &config.parameters,
                carmichael.as_ref(),
            )
        })
        .collect();
    let mut by_task: BTreeMap<(usize, usize), BTreeMap<TestKind, std::result::Result<f64, String>>> =
        BTreeMap::new();
    for (task, outcome) in tasks.iter().zip(outcomes) {
        by_task.insert(*task, outcome);
    }

    let mut sections = BTreeMap::new();
    for &kind in &config.tests {
        let mut section = TestSection::default();
        let mut vectors: Vec<(String, Vec<f64>)> = Vec::new();
        for (gi, group) in config.sources.iter().enumerate() {
            let mut metrics = Vec::with_capacity(group.strings.len());
            for si in 0..group.strings.len() {
                match &by_task[&(gi, si)][&kind] {
                    Ok(v) => metrics.push(*v),
                    Err(msg) => section.errors.push(StringFailure {
                        group: group.name.clone(),
                        index: si,
                        error: msg.clone(),
                    }),
                }
            }
            if metrics.len() < 2 {
                section.warnings.push(format!(
                    "group {:?} has {} usable strings under {}; excluded from statistics",
                    group.name,
                    metrics.len(),
                    kind.name()
                ));
                continue;
            }
            section.summaries.push(GroupSummary {
                group: group.name.clone(),
                strings_used: metrics.len(),
                summary: five_number_summary(&metrics)?,
            });
            vectors.push((group.name.clone(), metrics));
        }

        let matrices = compare_sources(&vectors, config.significance);
        section.shapiro_wilk = matrices.shapiro_wilk;
        section.ks = matrices.ks;
        section.welch = matrices.welch;
        section.warnings.extend(matrices.warnings);
        sections.insert(kind.name().to_string(), section);
    }

    Ok(BatteryReport {
        provenance: build_provenance(config, carmichael.as_ref()),
        tests: sections,
    })
}

fn resolve_carmichael_set(params: &TestParameters) -> Result<CarmichaelSet> {
    match (&params.carmichael_list, params.carmichael_bound) {
        (Some(path), _) => load_carmichael_file(path),
        (None, bound) => enumerate_carmichael(bound.unwrap_or(DEFAULT_CARMICHAEL_BOUND)),
    }
}

fn run_one_string(
    descriptor: &SourceDescriptor,
    tests: &[TestKind],
    params: &TestParameters,
    carmichael: Option<&CarmichaelSet>,
) -> BTreeMap<TestKind, std::result::Result<f64, String>> {
    let mut out = BTreeMap::new();
    let x = match descriptor.materialize() {
        Ok(x) => x,
        Err(e) => {
            let msg = format!("materialization failed: {e}");
            for &kind in tests {
                out.insert(kind, Err(msg.clone()));
            }
            return out;
        }
    };
    for &kind in tests {
        out.insert(kind, run_metric(kind, &x, params, carmichael));
    }
    out
}

/// The scalar each test contributes to its group's metric vector.
fn run_metric(
    kind: TestKind,
    x: &BitString,
    params: &TestParameters,
    carmichael: Option<&CarmichaelSet>,
) -> std::result::Result<f64, String> {
    let metric = match kind {
        TestKind::BookStack => book_stack_metric(x).map(|r| r.ones_after as f64),
        TestKind::Borel => {
            borel_normality(x, params.borel_m_limit).map(|r| r.aggregate_metric)
        }
        TestKind::SsCarmichael => {
            let cs = carmichael.expect("set resolved before dispatch");
            ss_carmichael_metric(x, cs).map(|r| r.bits_consumed as f64)
        }
        TestKind::Entropy => {
            entropy_sliding(x, params.entropy_window, params.entropy_positions).map(|r| r.h_hat)
        }
        TestKind::Walk => random_walk_range(x).map(|r| r.range as f64),
    };
    metric.map_err(|e| e.to_string())
}

/// Pairwise comparison of named metric vectors.
///
/// KS runs for every pair; Shapiro-Wilk runs per group; Welch's matrix is
/// produced only when every group's Shapiro-Wilk p-value stays at or above
/// the significance threshold (normality not rejected anywhere). Vectors
/// shorter than 2 are excluded with a warning. Matrix rows follow the input
/// order, pairs are upper-triangular.
pub fn compare_sources(vectors: &[(String, Vec<f64>)], significance: f64) -> ComparisonMatrices {
    let mut m = ComparisonMatrices::default();
    let usable: Vec<&(String, Vec<f64>)> = vectors
        .iter()
        .filter(|(name, v)| {
            if v.len() < 2 {
                m.warnings
                    .push(format!("group {name:?} has fewer than 2 values; excluded"));
                false
            } else {
                true
            }
        })
        .collect();

    let mut normality_ok = true;
    for (name, v) in &usable {
        match shapiro_wilk(v) {
            Ok(mut r) => {
                r.significant = r.p_value < significance;
                if r.significant {
                    normality_ok = false;
                }
                m.shapiro_wilk.push(GroupStat {
                    group: name.clone(),
                    result: r,
                });
            }
            Err(e) => {
                normality_ok = false;
                m.warnings
                    .push(format!("Shapiro-Wilk unavailable for group {name:?}: {e}"));
            }
        }
    }

    for i in 0..usable.len() {
        for j in i + 1..usable.len() {
            let (na, va) = usable[i];
            let (nb, vb) = usable[j];
            if let Ok(mut r) = ks_two_sample(va, vb) {
                r.significant = r.p_value < significance;
                m.ks.push(PairResult {
                    a: na.clone(),
                    b: nb.clone(),
                    result: r,
                });
            }
        }
    }

    if normality_ok && !usable.is_empty() {
        let mut welch = Vec::new();
        for i in 0..usable.len() {
            for j in i + 1..usable.len() {
                let (na, va) = usable[i];
                let (nb, vb) = usable[j];
                match welch_t(va, vb) {
                    Ok(mut r) => {
                        r.significant = r.p_value < significance;
                        welch.push(PairResult {
                            a: na.clone(),
                            b: nb.clone(),
                            result: r,
                        });
                    }
                    Err(e) => m
                        .warnings
                        .push(format!("Welch's t unavailable for {na:?} vs {nb:?}: {e}")),
                }
            }
        }
        m.welch = Some(welch);
    }
    m
}

fn build_provenance(config: &BatteryConfig, carmichael: Option<&CarmichaelSet>) -> Provenance {
    let sources = config
        .sources
        .iter()
        .map(|g| GroupProvenance {
            name: g.name.clone(),
            strings: g
                .strings
                .iter()
                .map(|d| SourceProvenance {
                    descriptor: d.clone(),
                    sha256: match (d.kind, d.path.as_ref()) {
                        (SourceKind::File, Some(p)) => file_sha256(p),
                        _ => None,
                    },
                })
                .collect(),
        })
        .collect();
    let carmichael_source = config.tests.contains(&TestKind::SsCarmichael).then(|| {
        match (&config.parameters.carmichael_list, config.parameters.carmichael_bound) {
            (Some(path), _) => format!("list:{}", path.display()),
            (None, bound) => format!("bound:{}", bound.unwrap_or(DEFAULT_CARMICHAEL_BOUND)),
        }
    });
    Provenance {
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        generated_at_unix: SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0),
        significance: config.significance,
        quartile_convention: "linear interpolation at (n-1)*q on sorted data".to_string(),
        ks_exact_limit: crate::stats::KS_EXACT_LIMIT as u64,
        entropy_window: config.parameters.entropy_window,
        entropy_positions: config.parameters.entropy_positions,
        entropy_cap: 2 * (64 - (config.parameters.entropy_window.max(2) - 1).leading_zeros()),
        borel_m_limit: config.parameters.borel_m_limit,
        carmichael_source,
        carmichael_count: carmichael.map(CarmichaelSet::len),
        witness_encoding: WITNESS_ENCODING.to_string(),
        sources,
    }
}

fn file_sha256(path: &Path) -> Option<String> {
    let data = std::fs::read(path).ok()?;
    let digest = Sha256::digest(&data);
    Some(digest.iter().map(|b| format!("{b:02x}")).collect())
}

/// Output flavor for [`emit_report`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
}

/// Writes the report under `dir`; returns the files created.
///
/// JSON is one `report.json` with the full nested report (floats in the
/// lossless shortest round-trip form). CSV produces, per test, a summary
/// table (`source,min,q1,median,q3,max,mean,sd`) plus per-pair p-value
/// files, all numbers rendered with 6 significant digits.
pub fn emit_report(report: &BatteryReport, dir: &Path, format: ReportFormat) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir).map_err(|e| Error::Io {
        path: dir.to_path_buf(),
        source: e,
    })?;
    let mut written = Vec::new();
    match format {
        ReportFormat::Json => {
            let path = dir.join("report.json");
            let mut json = serde_json::to_string_pretty(report)
                .expect("report serialization cannot fail");
            json.push('\n');
            write_file(&path, json.as_bytes())?;
            written.push(path);
        }
        ReportFormat::Csv => {
            for (test, section) in &report.tests {
                written.push(write_summary_csv(dir, test, section)?);
                written.push(write_ks_csv(dir, test, section)?);
                written.push(write_shapiro_csv(dir, test, section)?);
                if section.welch.is_some() {
                    written.push(write_welch_csv(dir, test, section)?);
                }
            }
        }
    }
    Ok(written)
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    let mut f = std::fs::File::create(path).map_err(|e| Error::Io {
        path: path.to_path_buf(),
        source: e,
    })?;
    f.write_all(bytes).map_err(|e| Error::Io {
        path: path.to_path_buf(),
        source: e,
    })
}

/// Renders `x` with `sig` significant digits, plain or scientific the way
/// `%g` would choose. The CSV emitter uses 6.
pub fn format_significant(x: f64, sig: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    if exp < -4 || exp >= sig as i32 {
        format!("{:.*e}", sig - 1, x)
    } else {
        let decimals = (sig as i32 - 1 - exp).max(0) as usize;
        format!("{x:.decimals$}")
    }
}

fn sig6(x: f64) -> String {
    format_significant(x, 6)
}

fn write_summary_csv(dir: &Path, test: &str, section: &TestSection) -> Result<PathBuf> {
    let path = dir.join(format!("{test}_summary.csv"));
    let mut out = String::from("source,min,q1,median,q3,max,mean,sd\n");
    for row in &section.summaries {
        let s = &row.summary;
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            row.group,
            sig6(s.min),
            sig6(s.q1),
            sig6(s.median),
            sig6(s.q3),
            sig6(s.max),
            sig6(s.mean),
            sig6(s.sd)
        ));
    }
    write_file(&path, out.as_bytes())?;
    Ok(path)
}

fn method_name(r: &StatTestResult) -> &'static str {
    match r.method {
        crate::stats::StatMethod::KsExact => "ks_exact",
        crate::stats::StatMethod::KsAsymptotic => "ks_asymptotic",
        crate::stats::StatMethod::ShapiroWilk => "shapiro_wilk",
        crate::stats::StatMethod::WelchT => "welch_t",
    }
}

fn write_ks_csv(dir: &Path, test: &str, section: &TestSection) -> Result<PathBuf> {
    let path = dir.join(format!("{test}_ks_pvalues.csv"));
    let mut out = String::from("a,b,statistic,p_value,method,significant,ties_warning\n");
    for cell in &section.ks {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            cell.a,
            cell.b,
            sig6(cell.result.statistic),
            sig6(cell.result.p_value),
            method_name(&cell.result),
            cell.result.significant,
            cell.result.ties_warning
        ));
    }
    write_file(&path, out.as_bytes())?;
    Ok(path)
}

fn write_shapiro_csv(dir: &Path, test: &str, section: &TestSection) -> Result<PathBuf> {
    let path = dir.join(format!("{test}_shapiro_wilk.csv"));
    let mut out = String::from("source,statistic,p_value,significant\n");
    for row in &section.shapiro_wilk {
        out.push_str(&format!(
            "{},{},{},{}\n",
            row.group,
            sig6(row.result.statistic),
            sig6(row.result.p_value),
            row.result.significant
        ));
    }
    write_file(&path, out.as_bytes())?;
    Ok(path)
}

fn write_welch_csv(dir: &Path, test: &str, section: &TestSection) -> Result<PathBuf> {
    let path = dir.join(format!("{test}_welch_pvalues.csv"));
    let mut out = String::from("a,b,statistic,df,p_value,significant\n");
    for cell in section.welch.as_deref().unwrap_or_default() {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            cell.a,
            cell.b,
            sig6(cell.result.statistic),
            sig6(cell.result.df.unwrap_or(f64::NAN)),
            sig6(cell.result.p_value),
            cell.result.significant
        ));
    }
    write_file(&path, out.as_bytes())?;
    Ok(path)
}

//! Census tables as versioned TSV files, their validation, and batch
//! invariant runs over them.
//!
//! File format: `name<TAB>[i1,i2,...]`, one entry per line, UTF-8, `#`
//! comments allowed. Entries are processed with per-entry fault isolation;
//! one pathological word never aborts a batch.

use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use serde_json::{json, Value};
use thiserror::Error;

use crate::alexander::{self};
use crate::braid::{parse_word, BraidError, BraidWord, SignClass};
use crate::cyclotomic;
use crate::homfly::{self, Caps};
use crate::semigroup;

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}: missing tab separator")]
    MissingSeparator { path: String, line: usize },
    #[error("{path}:{line}: bad braid word: {source}")]
    BadWord {
        path: String,
        line: usize,
        #[source]
        source: BraidError,
    },
    #[error("{path}:{line}: duplicate name {name:?}")]
    DuplicateName {
        path: String,
        line: usize,
        name: String,
    },
}

/// Which appendix table an entry came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableTag {
    LSpace,
    NonLSpace,
}

impl TableTag {
    pub fn as_str(self) -> &'static str {
        match self {
            TableTag::LSpace => "lspace",
            TableTag::NonLSpace => "non_lspace",
        }
    }
}

#[derive(Debug, Clone)]
pub struct CensusEntry {
    pub name: String,
    pub word: BraidWord,
    pub table: TableTag,
}

/// Loads one table file; duplicate names are rejected and parse failures
/// carry their line number.
pub fn load_corpus(path: &Path, table: TableTag) -> Result<Vec<CensusEntry>, CorpusError> {
    let display = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| CorpusError::Io {
        path: display.clone(),
        source,
    })?;
    let mut entries: Vec<CensusEntry> = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let Some((name, word_text)) = trimmed.split_once('\t') else {
            return Err(CorpusError::MissingSeparator {
                path: display.clone(),
                line: line_no,
            });
        };
        let name = name.trim().to_string();
        if entries.iter().any(|e| e.name == name) {
            return Err(CorpusError::DuplicateName {
                path: display.clone(),
                line: line_no,
                name,
            });
        }
        let word = parse_word(word_text, None).map_err(|source| CorpusError::BadWord {
            path: display.clone(),
            line: line_no,
            source,
        })?;
        entries.push(CensusEntry { name, word, table });
    }
    Ok(entries)
}

/// Canonical file text for a list of entries; `load` of the result gives
/// the entries back.
pub fn save_corpus(entries: &[CensusEntry]) -> String {
    let mut out = String::new();
    for entry in entries {
        out.push_str(&entry.name);
        out.push('\t');
        out.push_str(&crate::braid::format_word(&entry.word));
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone)]
pub struct ClassifyRow {
    pub name: String,
    pub sign_class: SignClass,
    pub is_knot: bool,
    pub strands: usize,
    pub length: usize,
    pub negative_count: usize,
}

#[derive(Debug, Clone, Default)]
pub struct ClassifySummary {
    pub total: usize,
    pub positive: usize,
    pub negative: usize,
    pub mixed: usize,
    pub empty: usize,
    pub knots: usize,
}

#[derive(Debug, Clone)]
pub struct ClassifyReport {
    pub rows: Vec<ClassifyRow>,
    pub summary: ClassifySummary,
}

/// Sign class and knot-closure check for every entry, with summary counts.
pub fn classify(entries: &[CensusEntry]) -> ClassifyReport {
    let mut rows = Vec::with_capacity(entries.len());
    let mut summary = ClassifySummary {
        total: entries.len(),
        ..Default::default()
    };
    for entry in entries {
        let stats = entry.word.stats();
        let is_knot = entry.word.is_knot();
        match stats.sign_class {
            SignClass::Positive => summary.positive += 1,
            SignClass::Negative => summary.negative += 1,
            SignClass::Mixed => summary.mixed += 1,
            SignClass::Empty => summary.empty += 1,
        }
        if is_knot {
            summary.knots += 1;
        }
        rows.push(ClassifyRow {
            name: entry.name.clone(),
            sign_class: stats.sign_class,
            is_knot,
            strands: entry.word.strands(),
            length: stats.length,
            negative_count: stats.negative_count,
        });
    }
    ClassifyReport { rows, summary }
}

impl ClassifyReport {
    pub fn to_json(&self) -> Value {
        json!({
            "rows": self.rows.iter().map(|r| json!({
                "name": r.name,
                "sign_class": r.sign_class.as_str(),
                "is_knot": r.is_knot,
                "strands": r.strands,
                "length": r.length,
            })).collect::<Vec<_>>(),
            "summary": {
                "total": self.summary.total,
                "positive": self.summary.positive,
                "negative": self.summary.negative,
                "mixed": self.summary.mixed,
                "empty": self.summary.empty,
                "knots": self.summary.knots,
            },
        })
    }
}

/// Which invariants a batch run computes.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TaskSet {
    pub alexander: bool,
    pub semigroup: bool,
    pub cyclotomic: bool,
    pub genus: bool,
    pub homfly: bool,
}

impl TaskSet {
    /// Parses a comma-separated task list.
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut tasks = TaskSet::default();
        for part in text.split(',') {
            match part.trim() {
                "" => {}
                "alexander" => tasks.alexander = true,
                "semigroup" => tasks.semigroup = true,
                "cyclotomic" => tasks.cyclotomic = true,
                "genus" => tasks.genus = true,
                "homfly" => tasks.homfly = true,
                other => return Err(format!("unknown task {other:?}")),
            }
        }
        Ok(tasks)
    }
}

/// One entry's batch results; every field is `None` when the task was not
/// requested and `Some(Err(..))` when it was requested and failed.
#[derive(Debug, Clone)]
pub struct BatchRow {
    pub name: String,
    pub alexander: Option<Result<crate::IntPoly, String>>,
    pub semigroup: Option<Result<semigroup::ScanVerdict, String>>,
    pub cyclotomic: Option<Result<(bool, Value), String>>,
    pub genus: Option<Result<u64, String>>,
    pub homfly: Option<Result<Value, String>>,
}

impl BatchRow {
    pub fn to_json(&self) -> Value {
        fn side<T>(field: &Option<Result<T, String>>, render: impl Fn(&T) -> Value) -> Value {
            match field {
                None => Value::Null,
                Some(Ok(v)) => render(v),
                Some(Err(e)) => json!({ "error": e }),
            }
        }
        json!({
            "name": self.name,
            "alexander": side(&self.alexander, |p| p.to_json()),
            "semigroup": side(&self.semigroup, |v| json!({
                "genus": v.genus,
                "small_elements": v.small_elements,
                "is_semigroup": v.is_semigroup,
                "witness": v.witness.map(|(a, b)| json!([a, b])),
                "generators": v.generators,
            })),
            "cyclotomic": side(&self.cyclotomic, |(all_unity, detail)| json!({
                "all_roots_of_unity": all_unity,
                "factorization": detail,
            })),
            "genus": side(&self.genus, |g| json!(g)),
            "homfly": side(&self.homfly, |v| v.clone()),
        })
    }
}

#[derive(Debug, Clone)]
pub struct BatchReport {
    pub rows: Vec<BatchRow>,
}

impl BatchReport {
    pub fn to_json(&self) -> Value {
        Value::Array(self.rows.iter().map(BatchRow::to_json).collect())
    }

    /// Human-readable table, one line per entry.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            out.push_str(&row.name);
            if let Some(result) = &row.genus {
                match result {
                    Ok(g) => out.push_str(&format!("\tgenus={g}")),
                    Err(e) => out.push_str(&format!("\tgenus=error({e})")),
                }
            }
            if let Some(result) = &row.alexander {
                match result {
                    Ok(p) => out.push_str(&format!("\talexander={}", p.to_text())),
                    Err(e) => out.push_str(&format!("\talexander=error({e})")),
                }
            }
            if let Some(result) = &row.semigroup {
                match result {
                    Ok(v) => {
                        let elements = v
                            .small_elements
                            .iter()
                            .map(usize::to_string)
                            .collect::<Vec<_>>()
                            .join(",");
                        out.push_str(&format!(
                            "\tgenus={}\tsmall={{{elements}}}\tis_semigroup={}",
                            v.genus, v.is_semigroup
                        ));
                        match (&v.witness, &v.generators) {
                            (Some((a, b)), _) => out.push_str(&format!("\twitness={a}+{b}")),
                            (None, Some(gens)) => out.push_str(&format!(
                                "\tgenerators={}",
                                gens.iter()
                                    .map(usize::to_string)
                                    .collect::<Vec<_>>()
                                    .join(",")
                            )),
                            (None, None) => {}
                        }
                    }
                    Err(e) => out.push_str(&format!("\tsemigroup=error({e})")),
                }
            }
            if let Some(result) = &row.cyclotomic {
                match result {
                    Ok((unity, _)) => out.push_str(&format!("\tall_roots_of_unity={unity}")),
                    Err(e) => out.push_str(&format!("\tcyclotomic=error({e})")),
                }
            }
            if let Some(result) = &row.homfly {
                match result {
                    Ok(v) => out.push_str(&format!(
                        "\tobstructed={}",
                        v.get("obstructed").cloned().unwrap_or(Value::Null)
                    )),
                    Err(e) => out.push_str(&format!("\thomfly=error({e})")),
                }
            }
            out.push('\n');
        }
        out
    }
}

fn run_entry(entry: &CensusEntry, tasks: &TaskSet, caps: &Caps) -> BatchRow {
    let delta = if tasks.alexander || tasks.semigroup || tasks.cyclotomic {
        Some(alexander::alexander(&entry.word).map_err(|e| e.to_string()))
    } else {
        None
    };
    let alexander_out = tasks.alexander.then(|| delta.clone().unwrap());
    let semigroup_out = tasks.semigroup.then(|| match delta.as_ref().unwrap() {
        Ok(_) => semigroup::scan_word(&entry.word),
        Err(e) => Err(e.clone()),
    });
    let cyclotomic_out = tasks.cyclotomic.then(|| {
        delta
            .as_ref()
            .unwrap()
            .as_ref()
            .map_err(|e| e.clone())
            .map(|d| {
                let factorization = cyclotomic::factor_cyclotomic(d);
                (cyclotomic::all_roots_of_unity(d), factorization.to_json())
            })
    });
    let genus_out = tasks
        .genus
        .then(|| entry.word.bennequin_genus().map_err(|e| e.to_string()));
    let homfly_out = tasks.homfly.then(|| {
        homfly::ito_matrix(&entry.word, caps)
            .map(|(normalized, mirrored)| {
                let obstruction = homfly::braid_positivity_obstruction(&normalized);
                json!({
                    "normalized": normalized.to_json(),
                    "obstructed": obstruction.obstructed,
                    "witnesses": obstruction.witnesses.iter()
                        .map(|&(i, j)| json!([i, j])).collect::<Vec<_>>(),
                    "mirrored": mirrored,
                })
            })
            .map_err(|e| e.to_string())
    });
    BatchRow {
        name: entry.name.clone(),
        alexander: alexander_out,
        semigroup: semigroup_out,
        cyclotomic: cyclotomic_out,
        genus: genus_out,
        homfly: homfly_out,
    }
}

/// Runs the requested invariants over all entries with `jobs` worker
/// threads. The engines are pure, so the merged output is a function of
/// `(entries, tasks, caps)` alone, ordered by name.
pub fn batch_invariants(
    entries: &[CensusEntry],
    tasks: &TaskSet,
    caps: &Caps,
    jobs: usize,
) -> BatchReport {
    let jobs = jobs.max(1).min(entries.len().max(1));
    let slots: Mutex<Vec<Option<BatchRow>>> = Mutex::new(vec![None; entries.len()]);
    let cursor = AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..jobs {
            scope.spawn(|| loop {
                let index = cursor.fetch_add(1, Ordering::Relaxed);
                if index >= entries.len() {
                    break;
                }
                let row = run_entry(&entries[index], tasks, caps);
                slots.lock().unwrap()[index] = Some(row);
            });
        }
    });
    let mut rows: Vec<BatchRow> = slots
        .into_inner()
        .unwrap()
        .into_iter()
        .map(Option::unwrap)
        .collect();
    rows.sort_by(|a, b| a.name.cmp(&b.name));
    BatchReport { rows }
}

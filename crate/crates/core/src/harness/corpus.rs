use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use super::{Dictionaries, Session};
use crate::patterns::Level;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CorpusError {
    #[error("corpus line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("corpus line {line}: duplicate case id `{id}`")]
    DuplicateId { line: usize, id: String },
    #[error("corpus has no cases")]
    Empty,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusCase {
    pub id: String,
    pub source: String,
    pub expected: String,
    pub tags: Vec<String>,
    pub line: usize,
}

impl CorpusCase {
    pub fn has_tag(&self, tag: &str) -> bool {
        self.tags.iter().any(|t| t == tag)
    }
}

/// Cases grouped into documents; cases in one document share context.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Corpus {
    pub documents: Vec<Vec<CorpusCase>>,
}

impl Corpus {
    pub fn cases(&self) -> impl Iterator<Item = &CorpusCase> {
        self.documents.iter().flatten()
    }

    pub fn len(&self) -> usize {
        self.documents.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Drops cases for which `keep` is false, and documents left empty.
    pub fn filter(&self, keep: impl Fn(&CorpusCase) -> bool) -> Corpus {
        Corpus {
            documents: self
                .documents
                .iter()
                .map(|d| d.iter().filter(|c| keep(c)).cloned().collect::<Vec<_>>())
                .filter(|d| !d.is_empty())
                .collect(),
        }
    }
}

/// `id <TAB> source <TAB> expected [<TAB> #tag ...]`, `#` comments, blank
/// lines between documents.
pub fn parse_corpus(text: &str) -> Result<Corpus, CorpusError> {
    let mut corpus = Corpus::default();
    let mut doc: Vec<CorpusCase> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let raw = raw.trim_end_matches('\r');
        if raw.trim().is_empty() {
            if !doc.is_empty() {
                corpus.documents.push(std::mem::take(&mut doc));
            }
            continue;
        }
        if raw.trim_start().starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = raw.split('\t').map(str::trim).collect();
        if !(3..=4).contains(&fields.len()) {
            return Err(CorpusError::Parse {
                line,
                message: format!("expected 3 or 4 tab-separated fields, found {}", fields.len()),
            });
        }
        if let Some(i) = fields[..3].iter().position(|f| f.is_empty()) {
            let name = ["id", "source", "expected"][i];
            return Err(CorpusError::Parse {
                line,
                message: format!("empty {name}"),
            });
        }
        if !seen.insert(fields[0].to_string()) {
            return Err(CorpusError::DuplicateId {
                line,
                id: fields[0].to_string(),
            });
        }
        let tags = fields
            .get(3)
            .map(|t| t.split_whitespace().map(|s| s.trim_start_matches('#').to_string()).collect())
            .unwrap_or_default();
        doc.push(CorpusCase {
            id: fields[0].to_string(),
            source: fields[1].to_string(),
            expected: fields[2].to_string(),
            tags,
            line,
        });
    }
    if !doc.is_empty() {
        corpus.documents.push(doc);
    }
    if corpus.is_empty() {
        return Err(CorpusError::Empty);
    }
    Ok(corpus)
}

/// Label only; both modes run the same check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EvalMode {
    #[default]
    Blind,
    Window,
}

impl fmt::Display for EvalMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EvalMode::Blind => "blind",
            EvalMode::Window => "window",
        })
    }
}

impl FromStr for EvalMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "blind" => Ok(EvalMode::Blind),
            "window" => Ok(EvalMode::Window),
            other => Err(format!("unknown mode `{other}` (expected blind or window)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseResult {
    pub id: String,
    pub expected: String,
    pub output: String,
    pub passed: bool,
    pub errors: Vec<String>,
    pub levels: Vec<Level>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    pub mode: EvalMode,
    pub cases: Vec<CaseResult>,
    /// Winning clause-pattern counts: idiomatic, valency, general.
    pub level_counts: [usize; 3],
}

fn level_slot(l: Level) -> usize {
    match l {
        Level::Idiomatic => 0,
        Level::Valency => 1,
        Level::General => 2,
    }
}

impl EvalReport {
    pub fn passes(&self) -> usize {
        self.cases.iter().filter(|c| c.passed).count()
    }

    pub fn total(&self) -> usize {
        self.cases.len()
    }

    pub fn pass_rate(&self) -> f64 {
        self.passes() as f64 / self.total() as f64
    }

    pub fn error_count(&self) -> usize {
        self.cases.iter().map(|c| c.errors.len()).sum()
    }

    pub fn level_count(&self, l: Level) -> usize {
        self.level_counts[level_slot(l)]
    }

    /// Plain-text report; identical input gives identical bytes.
    pub fn render(&self) -> String {
        let mut s = format!("mode: {}\n", self.mode);
        for c in &self.cases {
            s.push_str(&format!("{} {}\n", if c.passed { "PASS" } else { "FAIL" }, c.id));
            if !c.passed {
                s.push_str(&format!("  expected: {}\n  got:      {}\n", c.expected, c.output));
            }
            for e in &c.errors {
                s.push_str(&format!("  error: {e}\n"));
            }
        }
        s.push_str(&format!(
            "passed {}/{} ({:.1}%)\nlevels: idiomatic {}, valency {}, general {}\n",
            self.passes(),
            self.total(),
            100.0 * self.pass_rate(),
            self.level_counts[0],
            self.level_counts[1],
            self.level_counts[2],
        ));
        s
    }
}

/// Collapses whitespace runs and trims; nothing else is forgiven.
pub fn normalize(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

pub fn run_corpus(dicts: &Dictionaries, corpus: &Corpus, mode: EvalMode) -> Result<EvalReport, CorpusError> {
    if corpus.is_empty() {
        return Err(CorpusError::Empty);
    }
    let mut report = EvalReport {
        mode,
        cases: Vec::with_capacity(corpus.len()),
        level_counts: [0; 3],
    };
    for doc in &corpus.documents {
        let mut session = Session::new(dicts);
        for case in doc {
            let t = session.translate(&case.source);
            for &l in &t.levels {
                report.level_counts[level_slot(l)] += 1;
            }
            let errors: Vec<String> = t.errors.iter().map(|e| e.to_string()).collect();
            report.cases.push(CaseResult {
                id: case.id.clone(),
                passed: errors.is_empty() && normalize(&t.text) == normalize(&case.expected),
                expected: case.expected.clone(),
                output: t.text,
                errors,
                levels: t.levels,
            });
        }
    }
    Ok(report)
}

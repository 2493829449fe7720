use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

/// Mean grade needed to pass, on the 0 to 10 scale.
pub const PASS_MARK: u32 = 6;
const MAX_GRADE: i64 = 10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GradeError {
    #[error("grades line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("grades line {line}: grade {grade} outside 0..=10")]
    OutOfRange { line: usize, grade: i64 },
    #[error("grades line {line}: unknown sentence id `{id}`")]
    UnknownSentence { line: usize, id: String },
    #[error("no grade records")]
    Empty,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradeRecord {
    pub sentence: String,
    pub grader: String,
    pub grade: u32,
    pub line: usize,
}

/// `sentence-id <TAB> grader-id <TAB> grade`, `#` comments allowed.
pub fn parse_grades(text: &str) -> Result<Vec<GradeRecord>, GradeError> {
    let mut out = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let raw = raw.trim_end_matches('\r');
        if raw.trim().is_empty() || raw.trim_start().starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = raw.split('\t').map(str::trim).collect();
        let [sentence, grader, grade] = fields[..] else {
            return Err(GradeError::Parse {
                line,
                message: format!("expected 3 tab-separated fields, found {}", fields.len()),
            });
        };
        if sentence.is_empty() || grader.is_empty() {
            return Err(GradeError::Parse {
                line,
                message: "empty sentence or grader id".into(),
            });
        }
        let grade: i64 = grade.parse().map_err(|_| GradeError::Parse {
            line,
            message: format!("grade `{grade}` is not an integer"),
        })?;
        if !(0..=MAX_GRADE).contains(&grade) {
            return Err(GradeError::OutOfRange { line, grade });
        }
        out.push(GradeRecord {
            sentence: sentence.to_string(),
            grader: grader.to_string(),
            grade: grade as u32,
            line,
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SentenceGrade {
    pub id: String,
    pub graders: usize,
    pub total: u32,
    pub mean: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GradeSummary {
    /// Sorted by sentence id.
    pub sentences: Vec<SentenceGrade>,
}

impl GradeSummary {
    pub fn passes(&self) -> usize {
        self.sentences.iter().filter(|s| s.passed).count()
    }

    pub fn pass_rate(&self) -> f64 {
        self.passes() as f64 / self.sentences.len() as f64
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        for g in &self.sentences {
            s.push_str(&format!(
                "{} {} mean {:.2} ({} graders)\n",
                if g.passed { "PASS" } else { "FAIL" },
                g.id,
                g.mean,
                g.graders
            ));
        }
        s.push_str(&format!(
            "passed {}/{} ({:.1}%)\n",
            self.passes(),
            self.sentences.len(),
            100.0 * self.pass_rate()
        ));
        s
    }
}

/// Averages each sentence's grades; a sentence passes when its mean is at
/// least [`PASS_MARK`]. With `known`, records for other ids are rejected.
pub fn score_grades(records: &[GradeRecord], known: Option<&BTreeSet<String>>) -> Result<GradeSummary, GradeError> {
    if records.is_empty() {
        return Err(GradeError::Empty);
    }
    let mut by_id: BTreeMap<&str, (usize, u32)> = BTreeMap::new();
    for r in records {
        if r.grade > MAX_GRADE as u32 {
            return Err(GradeError::OutOfRange {
                line: r.line,
                grade: r.grade.into(),
            });
        }
        if known.is_some_and(|k| !k.contains(&r.sentence)) {
            return Err(GradeError::UnknownSentence {
                line: r.line,
                id: r.sentence.clone(),
            });
        }
        let e = by_id.entry(&r.sentence).or_default();
        e.0 += 1;
        e.1 += r.grade;
    }
    let sentences = by_id
        .into_iter()
        .map(|(id, (n, total))| SentenceGrade {
            id: id.to_string(),
            graders: n,
            total,
            mean: total as f64 / n as f64,
            // Integer comparison: no rounding at the threshold.
            passed: total >= PASS_MARK * n as u32,
        })
        .collect();
    Ok(GradeSummary { sentences })
}

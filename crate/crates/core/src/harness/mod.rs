//! Whole-pipeline driver: dictionary loading, document translation with a
//! trace of every decision, corpus regression and grade statistics.

mod corpus;
mod grades;

use std::fmt;
use std::fs;
use std::path::Path;

use thiserror::Error;

use crate::analyzer::{parse_sentence, render_japanese, AnalysisError, Pas};
use crate::generator::{pluralize, realize_sentence};
use crate::lexicon::{Lexicon, LexiconError, PartOfSpeech};
use crate::ontology::{CategoryHierarchy, OntologyError};
use crate::patterns::{Level, PatternDictionary, PatternError};
use crate::rewriter::{apply_rewrites, RewriteError, RewriteRules};
use crate::transfer::{transfer_clause, DiscourseContext, FillSource, TransferError};

pub use corpus::{normalize, parse_corpus, run_corpus, CaseResult, Corpus, CorpusCase, CorpusError, EvalMode, EvalReport};
pub use grades::{parse_grades, score_grades, GradeError, GradeRecord, GradeSummary, SentenceGrade, PASS_MARK};

pub const CATEGORIES_FILE: &str = "categories.tsv";
pub const LEXICON_FILE: &str = "lexicon.tsv";
pub const PATTERNS_FILE: &str = "patterns.tsv";
pub const REWRITES_FILE: &str = "rewrites.tsv";

#[derive(Debug, Error)]
pub enum DictionaryError {
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("{file}: {source}")]
    Ontology { file: &'static str, source: OntologyError },
    #[error("{file}: {source}")]
    Lexicon { file: &'static str, source: LexiconError },
    #[error("{file}: {source}")]
    Patterns { file: &'static str, source: PatternError },
    #[error("{file}: {source}")]
    Rewrites { file: &'static str, source: RewriteError },
    #[error("{file}: predicate `{predicate}` has no general-level pattern")]
    MissingGeneral { file: &'static str, predicate: String },
}

#[derive(Debug, Clone)]
pub struct Dictionaries {
    pub ontology: CategoryHierarchy,
    pub lexicon: Lexicon,
    pub patterns: PatternDictionary,
    pub rewrites: RewriteRules,
}

impl Dictionaries {
    /// The dictionaries compiled into the binary.
    pub fn builtin() -> Self {
        Self::from_sources(
            include_str!("../../data/dict/categories.tsv"),
            include_str!("../../data/dict/lexicon.tsv"),
            include_str!("../../data/dict/patterns.tsv"),
            include_str!("../../data/dict/rewrites.tsv"),
        )
        .expect("shipped dictionaries are valid")
    }

    pub fn from_sources(
        categories: &str,
        lexicon: &str,
        patterns: &str,
        rewrites: &str,
    ) -> Result<Self, DictionaryError> {
        let ontology = CategoryHierarchy::parse(categories).map_err(|source| DictionaryError::Ontology {
            file: CATEGORIES_FILE,
            source,
        })?;
        let lexicon = Lexicon::parse(lexicon, &ontology).map_err(|source| DictionaryError::Lexicon {
            file: LEXICON_FILE,
            source,
        })?;
        let patterns =
            PatternDictionary::parse(patterns, &lexicon, &ontology).map_err(|source| DictionaryError::Patterns {
                file: PATTERNS_FILE,
                source,
            })?;
        let rewrites =
            RewriteRules::parse(rewrites, &lexicon, &ontology).map_err(|source| DictionaryError::Rewrites {
                file: REWRITES_FILE,
                source,
            })?;
        let d = Dictionaries {
            ontology,
            lexicon,
            patterns,
            rewrites,
        };
        d.check_general_coverage()?;
        Ok(d)
    }

    /// Loads the four dictionary files from `dir`.
    pub fn load(dir: impl AsRef<Path>) -> Result<Self, DictionaryError> {
        let dir = dir.as_ref();
        let read = |name: &str| {
            let path = dir.join(name);
            fs::read_to_string(&path).map_err(|e| DictionaryError::Io {
                path: path.display().to_string(),
                message: e.to_string(),
            })
        };
        Self::from_sources(
            &read(CATEGORIES_FILE)?,
            &read(LEXICON_FILE)?,
            &read(PATTERNS_FILE)?,
            &read(REWRITES_FILE)?,
        )
    }

    /// Every verb and adjective needs a general pattern so transfer
    /// always has a literal fallback.
    fn check_general_coverage(&self) -> Result<(), DictionaryError> {
        for e in self.lexicon.entries() {
            if !e.pos.is_predicate() {
                continue;
            }
            let covered = self
                .patterns
                .lookup(&e.surface)
                .iter()
                .any(|p| p.level == Level::General);
            if !covered {
                return Err(DictionaryError::MissingGeneral {
                    file: PATTERNS_FILE,
                    predicate: e.surface.clone(),
                });
            }
        }
        Ok(())
    }

    /// Copy keeping only patterns at the given levels.
    pub fn with_levels(&self, levels: &[Level]) -> Self {
        Dictionaries {
            patterns: self.patterns.retain_levels(levels),
            ..self.clone()
        }
    }

    /// One-line inventory for `validate`.
    pub fn summary(&self) -> String {
        let count = |pos: PartOfSpeech| self.lexicon.entries().iter().filter(|e| e.pos == pos).count();
        let level = |l: Level| self.patterns.patterns().iter().filter(|p| p.level == l).count();
        let n = |k: usize, noun: &str| match k {
            1 => format!("1 {noun}"),
            _ => format!("{k} {}", pluralize(noun)),
        };
        format!(
            "{}, {} ({}, {}), {} ({} idiomatic, {} valency, {} general), {}",
            n(self.ontology.ids().count(), "category"),
            n(self.lexicon.len(), "lexical entry"),
            n(count(PartOfSpeech::Verb), "verb"),
            n(count(PartOfSpeech::Adjective), "adjective"),
            n(self.patterns.len(), "pattern"),
            level(Level::Idiomatic),
            level(Level::Valency),
            level(Level::General),
            n(self.rewrites.len(), "rewrite rule"),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TraceEvent {
    Sentence { index: usize, source: String },
    Tokens(Vec<String>),
    Clauses(Vec<String>),
    Rewrite { rule: String, consumed: String, adjunct: String },
    Rewritten(String),
    Pattern { clause: usize, predicate: String, pattern: String, level: Level },
    NounPattern { clause: usize, head: String, pattern: String, level: Level },
    Ellipsis { clause: usize, particle: String, source: FillSource, english: String },
    Output(String),
    Error(String),
}

impl fmt::Display for TraceEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TraceEvent::Sentence { index, source } => write!(f, "sentence {index}: {source}"),
            TraceEvent::Tokens(ts) => write!(f, "  tokens: {}", ts.join(" | ")),
            TraceEvent::Clauses(cs) => {
                write!(f, "  clauses: {}", cs.len())?;
                for (i, c) in cs.iter().enumerate() {
                    write!(f, "\n    [{i}] {c}")?;
                }
                Ok(())
            }
            TraceEvent::Rewrite { rule, consumed, adjunct } => {
                write!(f, "  rewrite {rule}: {consumed} => {adjunct}")
            }
            TraceEvent::Rewritten(s) => write!(f, "  rewritten: {s}"),
            TraceEvent::Pattern {
                clause,
                predicate,
                pattern,
                level,
            } => write!(f, "  clause {clause} {predicate}: {pattern} ({level})"),
            TraceEvent::NounPattern {
                clause,
                head,
                pattern,
                level,
            } => write!(f, "  clause {clause} noun {head}: {pattern} ({level})"),
            TraceEvent::Ellipsis {
                clause,
                particle,
                source,
                english,
            } => {
                let from = match source {
                    FillSource::Context => "context",
                    FillSource::Default => "default",
                };
                write!(f, "  clause {clause} ellipsis {particle}: {english} ({from})")
            }
            TraceEvent::Output(s) => write!(f, "  output: {s}"),
            TraceEvent::Error(e) => write!(f, "  error: {e}"),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Trace {
    pub events: Vec<TraceEvent>,
}

impl Trace {
    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn patterns(&self) -> impl Iterator<Item = (&str, Level)> {
        self.events.iter().filter_map(|e| match e {
            TraceEvent::Pattern { pattern, level, .. } => Some((pattern.as_str(), *level)),
            _ => None,
        })
    }

    pub fn rewrites(&self) -> impl Iterator<Item = &str> {
        self.events.iter().filter_map(|e| match e {
            TraceEvent::Rewrite { rule, .. } => Some(rule.as_str()),
            _ => None,
        })
    }

    pub fn ellipses(&self) -> impl Iterator<Item = (FillSource, &str)> {
        self.events.iter().filter_map(|e| match e {
            TraceEvent::Ellipsis { source, english, .. } => Some((*source, english.as_str())),
            _ => None,
        })
    }
}

impl fmt::Display for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.events {
            writeln!(f, "{e}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SentenceFailure {
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
    #[error(transparent)]
    Transfer(#[from] TransferError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SentenceError {
    /// 1-based sentence number within the document.
    pub sentence: usize,
    pub source: String,
    pub error: SentenceFailure,
}

impl fmt::Display for SentenceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "sentence {} `{}`: {}", self.sentence, self.source, self.error)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DocumentTranslation {
    pub text: String,
    pub trace: Trace,
    pub errors: Vec<SentenceError>,
    /// Winning clause-pattern levels, in order.
    pub levels: Vec<Level>,
}

/// Splits running text after each period. A trailing fragment without one
/// is kept so the analyzer can reject it.
pub fn split_sentences(text: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut start = 0;
    for (i, c) in text.char_indices() {
        if c == '.' {
            let s = text[start..=i].trim();
            if !s.is_empty() {
                out.push(s);
            }
            start = i + 1;
        }
    }
    let rest = text[start..].trim();
    if !rest.is_empty() {
        out.push(rest);
    }
    out
}

fn describe(c: &Pas) -> String {
    let mut parts = vec![format!("{} [{}]", c.predicate, c.subjective)];
    if let Some(t) = &c.topic {
        parts.push(format!("wa:{}", t.phrase.lemma));
    }
    for a in &c.arguments {
        let p = a.particle.map(|p| p.as_str()).unwrap_or("adv");
        parts.push(format!("{p}:{}", a.phrase.lemma));
    }
    parts.join(" ")
}

/// A translation session: discourse context persists across calls.
pub struct Session<'d> {
    dicts: &'d Dictionaries,
    ctx: DiscourseContext,
    sentences: usize,
}

impl<'d> Session<'d> {
    pub fn new(dicts: &'d Dictionaries) -> Self {
        Session {
            dicts,
            ctx: DiscourseContext::new(),
            sentences: 0,
        }
    }

    /// Translates `text` sentence by sentence. A failing sentence is
    /// reported, skipped, and clears the context.
    pub fn translate(&mut self, text: &str) -> DocumentTranslation {
        let mut doc = DocumentTranslation::default();
        let mut outputs: Vec<String> = Vec::new();
        for sentence in split_sentences(text) {
            self.sentences += 1;
            let ev = &mut doc.trace.events;
            ev.push(TraceEvent::Sentence {
                index: self.sentences,
                source: sentence.to_string(),
            });
            ev.push(TraceEvent::Tokens(sentence.split_whitespace().map(str::to_string).collect()));
            match translate_sentence(self.dicts, sentence, &mut self.ctx, ev, &mut doc.levels) {
                Ok(en) => {
                    ev.push(TraceEvent::Output(en.clone()));
                    outputs.push(en);
                }
                Err(error) => {
                    ev.push(TraceEvent::Error(error.to_string()));
                    doc.errors.push(SentenceError {
                        sentence: self.sentences,
                        source: sentence.to_string(),
                        error,
                    });
                    self.ctx = DiscourseContext::new();
                }
            }
        }
        doc.text = outputs.join(" ");
        doc
    }
}

/// Translates a whole document in a fresh session.
pub fn translate_document(dicts: &Dictionaries, text: &str) -> DocumentTranslation {
    Session::new(dicts).translate(text)
}

fn translate_sentence(
    dicts: &Dictionaries,
    sentence: &str,
    ctx: &mut DiscourseContext,
    ev: &mut Vec<TraceEvent>,
    levels: &mut Vec<Level>,
) -> Result<String, SentenceFailure> {
    let (ont, lex) = (&dicts.ontology, &dicts.lexicon);
    let clauses = parse_sentence(lex, ont, sentence)?;
    ev.push(TraceEvent::Clauses(clauses.iter().map(describe).collect()));
    let (clauses, rewrites) = apply_rewrites(&dicts.rewrites, &clauses, lex, ont);
    if !rewrites.is_empty() {
        for s in &rewrites.steps {
            ev.push(TraceEvent::Rewrite {
                rule: s.rule.clone(),
                consumed: describe(&s.consumed),
                adjunct: s.adjunct.japanese(),
            });
        }
        ev.push(TraceEvent::Rewritten(render_japanese(lex, &clauses)));
        ev.push(TraceEvent::Clauses(clauses.iter().map(describe).collect()));
    }
    let mut english = Vec::with_capacity(clauses.len());
    let mut local = Vec::with_capacity(clauses.len());
    for (i, c) in clauses.iter().enumerate() {
        let out = transfer_clause(&dicts.patterns, ont, c, ctx)?;
        ev.push(TraceEvent::Pattern {
            clause: i,
            predicate: c.predicate.clone(),
            pattern: out.pattern.clone(),
            level: out.level,
        });
        for np in &out.noun_patterns {
            ev.push(TraceEvent::NounPattern {
                clause: i,
                head: np.head.clone(),
                pattern: np.pattern.clone(),
                level: np.level,
            });
        }
        if let Some(fill) = &out.fill {
            ev.push(TraceEvent::Ellipsis {
                clause: i,
                particle: fill.particle.to_string(),
                source: fill.source,
                english: fill.english.clone(),
            });
        }
        local.push(out.level);
        english.push(out.english);
    }
    levels.extend(local);
    Ok(realize_sentence(&english))
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIG3: &str = "kare-wa basu-ni notte gakkō-e itta ga, watashi-wa kawa-ni sotte aruite gakkō-e itta.";

    #[test]
    fn builtin_loads_and_covers_predicates() {
        let d = Dictionaries::builtin();
        assert_eq!(
            d.summary(),
            "87 categories, 63 lexical entries (12 verbs, 1 adjective), 36 patterns (3 idiomatic, 19 valency, 14 general), 3 rewrite rules"
        );
    }

    #[test]
    fn bus_and_river() {
        let d = Dictionaries::builtin();
        let t = translate_document(&d, FIG3);
        assert!(t.errors.is_empty());
        assert_eq!(t.text, "He went to school by bus, but I went to school on foot along the river.");
        assert_eq!(t.trace.rewrites().count(), 3);
        assert!(t.trace.events.contains(&TraceEvent::Rewritten(
            "kare-wa basu-de gakkō-e itta ga, watashi-wa kawa-zoi-ni toho-de gakkō-e itta.".into()
        )));
    }

    #[test]
    fn tablecloth() {
        let d = Dictionaries::builtin();
        let t = translate_document(&d, "kanojo-wa shokutaku-ni tēburukurosu-o kaketa.");
        assert_eq!(t.text, "She spread a tablecloth on a dining table.");
    }

    #[test]
    fn empty_document() {
        let t = translate_document(&Dictionaries::builtin(), "  \n");
        assert_eq!(t.text, "");
        assert!(t.trace.is_empty());
        assert!(t.errors.is_empty());
    }

    #[test]
    fn bad_sentence_does_not_stop_the_rest() {
        let d = Dictionaries::builtin();
        let t = translate_document(&d, "kare-wa blorp-o katta. kanojo-wa hana-ni mizu-o kaketa.");
        assert_eq!(t.text, "She poured water on a flower.");
        assert_eq!(t.errors.len(), 1);
        assert_eq!(t.errors[0].sentence, 1);
        assert!(matches!(
            t.errors[0].error,
            SentenceFailure::Analysis(AnalysisError::UnresolvedWord { position: 2, .. })
        ));
    }

    #[test]
    fn trailing_fragment_is_reported() {
        let d = Dictionaries::builtin();
        let t = translate_document(&d, "kare-wa gakkō-e itta. kanojo-wa");
        assert_eq!(t.text, "He went to school.");
        assert!(matches!(
            t.errors[0].error,
            SentenceFailure::Analysis(AnalysisError::MissingPeriod)
        ));
    }

    #[test]
    fn sentence_splitting() {
        assert_eq!(split_sentences("a. b.  c"), ["a.", "b.", "c"]);
        assert!(split_sentences("").is_empty());
    }

    #[test]
    fn missing_general_pattern_is_rejected() {
        let patterns: String = include_str!("../../data/dict/patterns.tsv")
            .lines()
            .filter(|l| !l.starts_with("yomu-general"))
            .map(|l| format!("{l}\n"))
            .collect();
        let err = Dictionaries::from_sources(
            include_str!("../../data/dict/categories.tsv"),
            include_str!("../../data/dict/lexicon.tsv"),
            &patterns,
            include_str!("../../data/dict/rewrites.tsv"),
        )
        .unwrap_err();
        assert!(matches!(err, DictionaryError::MissingGeneral { ref predicate, .. } if predicate == "yomu"));
    }
}

//! The semantic structure dictionary.
//!
//! Each [`TransferPattern`] is a case frame for one predicate (or for a noun
//! head such as `mure`) with per-slot restrictions and an English template.
//! Patterns come in three levels; matching finds every pattern whose required
//! slots can be filled and [`select_pattern`] ranks them.

use std::cmp::{Ordering, Reverse};
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::lexicon::{Lexicon, Particle, Sense};
use crate::ontology::{CategoryConstraint, CategoryHierarchy};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PatternError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("pattern `{pattern}` refers to unknown category `{category}`")]
    UnknownCategory { pattern: String, category: String },
    #[error("pattern `{pattern}` refers to unknown word `{lemma}`")]
    UnknownLemma { pattern: String, lemma: String },
    #[error("idiomatic pattern `{0}` has no word-locked slot")]
    IdiomWithoutLockedSlot(String),
    #[error("general pattern `{0}` has a word-locked or categorial slot")]
    ConstrainedGeneral(String),
    #[error("duplicate pattern id `{0}`")]
    DuplicateId(String),
    #[error("pattern `{pattern}`: {message}")]
    Template { pattern: String, message: String },
    #[error("no pattern matched")]
    NoMatch,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Level {
    General,
    Valency,
    Idiomatic,
}

impl Level {
    pub const ALL: [Level; 3] = [Level::Idiomatic, Level::Valency, Level::General];

    pub fn rank(self) -> u8 {
        match self {
            Level::General => 0,
            Level::Valency => 1,
            Level::Idiomatic => 2,
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Level::Idiomatic => "idiomatic",
            Level::Valency => "valency",
            Level::General => "general",
        })
    }
}

impl FromStr for Level {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "idiomatic" => Ok(Level::Idiomatic),
            "valency" => Ok(Level::Valency),
            "general" => Ok(Level::General),
            other => Err(format!("unknown level `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SlotConstraint {
    WordLocked(String),
    Categorial(CategoryConstraint),
    Unconstrained,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Realization {
    Subject,
    Object,
    Prep(String),
    /// Folded into the verb template.
    Absorbed,
    /// Bare plural complement of a collective noun ("pack of *wolves*").
    Plural,
}

impl Realization {
    fn in_template(&self) -> bool {
        matches!(self, Realization::Object | Realization::Prep(_) | Realization::Plural)
    }
}

impl FromStr for Realization {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "subject" => Ok(Realization::Subject),
            "object" => Ok(Realization::Object),
            "absorbed" => Ok(Realization::Absorbed),
            "plural" => Ok(Realization::Plural),
            _ => s
                .strip_prefix("prep(")
                .and_then(|r| r.strip_suffix(')'))
                .filter(|p| !p.trim().is_empty())
                .map(|p| Realization::Prep(p.trim().to_string()))
                .ok_or_else(|| format!("unknown realization `{s}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseSlotPattern {
    pub particle: Particle,
    pub constraint: SlotConstraint,
    pub required: bool,
    pub realization: Realization,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TemplatePart {
    Word(String),
    Slot(Particle),
}

/// English side of a pattern. The first word is the verb lemma (or the
/// head noun for noun patterns); the rest follows it in order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnglishTemplate {
    pub head: String,
    pub parts: Vec<TemplatePart>,
}

impl EnglishTemplate {
    pub fn parse(s: &str) -> Result<Self, String> {
        let mut words = s.split_whitespace();
        let head = words.next().ok_or("empty template")?;
        if head.starts_with('{') {
            return Err("template must start with a word".into());
        }
        let parts = words
            .map(|w| match w.strip_prefix("{slot:").and_then(|r| r.strip_suffix('}')) {
                Some(p) => Particle::parse(p)
                    .map(TemplatePart::Slot)
                    .ok_or_else(|| format!("unknown particle in placeholder `{w}`")),
                None if w.contains('{') || w.contains('}') => Err(format!("malformed placeholder `{w}`")),
                None => Ok(TemplatePart::Word(w.to_string())),
            })
            .collect::<Result<_, _>>()?;
        Ok(EnglishTemplate {
            head: head.to_string(),
            parts,
        })
    }
}

impl fmt::Display for EnglishTemplate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.head)?;
        for p in &self.parts {
            match p {
                TemplatePart::Word(w) => write!(f, " {w}")?,
                TemplatePart::Slot(p) => write!(f, " {{slot:{p}}}")?,
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransferPattern {
    pub id: String,
    pub level: Level,
    pub predicate: String,
    pub slots: Vec<CaseSlotPattern>,
    pub english: EnglishTemplate,
    /// Position in the pattern file; the final tiebreak.
    pub order: usize,
}

impl TransferPattern {
    pub fn subject_slot(&self) -> Option<usize> {
        self.slots.iter().position(|s| s.realization == Realization::Subject)
    }
}

/// Which argument of a frame a slot is bound to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ArgRef {
    Topic,
    Argument(usize),
    Modifier(usize),
    /// Supplied by ellipsis fill.
    Supplied,
}

/// One argument as the matcher sees it: particle plus resolved word.
#[derive(Debug, Clone)]
pub struct FrameArg<'a> {
    pub arg: ArgRef,
    pub particle: Particle,
    pub lemma: &'a str,
    pub senses: &'a [Sense],
}

/// A predicate (or noun head) and its arguments, ready for matching.
#[derive(Debug, Clone)]
pub struct Frame<'a> {
    pub predicate: &'a str,
    pub args: Vec<FrameArg<'a>>,
    /// Clauses may leave a required subject slot empty for ellipsis fill.
    pub subject_elidable: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Binding {
    pub arg: ArgRef,
    /// Index of the sense that satisfied the slot.
    pub sense: usize,
    /// Depth of the constraint member that matched, for categorial slots.
    pub depth: Option<u32>,
}

/// Ranking key: level, then word-locked slots, then summed match depth,
/// then earliest file position.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Specificity {
    pub level: Level,
    pub locked: u32,
    pub depth_sum: u32,
    pub order: usize,
}

impl Specificity {
    fn key(&self) -> (u8, u32, u32, Reverse<usize>) {
        (self.level.rank(), self.locked, self.depth_sum, Reverse(self.order))
    }
}

impl Ord for Specificity {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for Specificity {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternMatch {
    pub pattern: usize,
    pub id: String,
    pub level: Level,
    /// Parallel to the pattern's slots; `None` for unbound slots.
    pub bindings: Vec<Option<Binding>>,
    pub specificity: Specificity,
}

impl PatternMatch {
    pub fn is_bound(&self, arg: ArgRef) -> bool {
        self.bindings.iter().flatten().any(|b| b.arg == arg)
    }
}

#[derive(Debug, Clone, Default)]
pub struct PatternDictionary {
    patterns: Vec<TransferPattern>,
    by_predicate: HashMap<String, Vec<usize>>,
}

impl PatternDictionary {
    pub fn parse(source: &str, lex: &Lexicon, ont: &CategoryHierarchy) -> Result<Self, PatternError> {
        let mut pd = PatternDictionary::default();
        for (n, raw) in source.lines().enumerate() {
            let line = raw.trim_end_matches('\r');
            if line.trim().is_empty() || line.trim_start().starts_with('#') {
                continue;
            }
            let order = pd.patterns.len();
            let pattern = parse_pattern(line, order, lex, ont).map_err(|e| match e {
                PatternLineError::Syntax(message) => PatternError::Parse { line: n + 1, message },
                PatternLineError::Semantic(e) => e,
            })?;
            pd.push(pattern)?;
        }
        Ok(pd)
    }

    fn push(&mut self, pattern: TransferPattern) -> Result<(), PatternError> {
        if self.patterns.iter().any(|p| p.id == pattern.id) {
            return Err(PatternError::DuplicateId(pattern.id));
        }
        self.by_predicate
            .entry(pattern.predicate.clone())
            .or_default()
            .push(self.patterns.len());
        self.patterns.push(pattern);
        Ok(())
    }

    pub fn lookup(&self, predicate: &str) -> Vec<&TransferPattern> {
        self.by_predicate
            .get(predicate)
            .map(|ix| ix.iter().map(|&i| &self.patterns[i]).collect())
            .unwrap_or_default()
    }

    pub fn get(&self, index: usize) -> &TransferPattern {
        &self.patterns[index]
    }

    pub fn patterns(&self) -> &[TransferPattern] {
        &self.patterns
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    /// A copy keeping only patterns of the given levels. File order is kept.
    pub fn retain_levels(&self, levels: &[Level]) -> PatternDictionary {
        let mut pd = PatternDictionary::default();
        for p in self.patterns.iter().filter(|p| levels.contains(&p.level)) {
            pd.push(p.clone()).expect("ids already unique");
        }
        pd
    }

    /// Every pattern for the frame's predicate whose required slots can be
    /// satisfied, with its specificity. Unmatched patterns are omitted.
    pub fn match_frame(&self, frame: &Frame<'_>, ont: &CategoryHierarchy) -> Vec<PatternMatch> {
        let Some(ix) = self.by_predicate.get(frame.predicate) else {
            return Vec::new();
        };
        ix.iter()
            .filter_map(|&i| match_one(i, &self.patterns[i], frame, ont))
            .collect()
    }
}

fn match_one(index: usize, pattern: &TransferPattern, frame: &Frame<'_>, ont: &CategoryHierarchy) -> Option<PatternMatch> {
    let mut used = vec![false; frame.args.len()];
    let mut bindings = Vec::with_capacity(pattern.slots.len());
    let mut locked = 0;
    let mut depth_sum = 0;
    for slot in &pattern.slots {
        let mut any_candidate = false;
        let mut found = None;
        for (k, fa) in frame.args.iter().enumerate() {
            if used[k] || fa.particle != slot.particle {
                continue;
            }
            any_candidate = true;
            if let Some(b) = satisfy(&slot.constraint, fa, ont) {
                used[k] = true;
                found = Some(b);
                break;
            }
        }
        match found {
            Some(b) => {
                match slot.constraint {
                    SlotConstraint::WordLocked(_) => locked += 1,
                    SlotConstraint::Categorial(_) => depth_sum += b.depth.unwrap_or(0),
                    SlotConstraint::Unconstrained => {}
                }
                bindings.push(Some(b));
            }
            None if !slot.required => bindings.push(None),
            None if frame.subject_elidable && slot.realization == Realization::Subject && !any_candidate => {
                bindings.push(None)
            }
            None => return None,
        }
    }
    Some(PatternMatch {
        pattern: index,
        id: pattern.id.clone(),
        level: pattern.level,
        bindings,
        specificity: Specificity {
            level: pattern.level,
            locked,
            depth_sum,
            order: pattern.order,
        },
    })
}

/// Checks one argument against one slot constraint.
pub fn satisfy(constraint: &SlotConstraint, fa: &FrameArg<'_>, ont: &CategoryHierarchy) -> Option<Binding> {
    match constraint {
        SlotConstraint::Unconstrained => Some(Binding {
            arg: fa.arg,
            sense: 0,
            depth: None,
        }),
        SlotConstraint::WordLocked(lemma) => (fa.lemma == lemma).then_some(Binding {
            arg: fa.arg,
            sense: 0,
            depth: None,
        }),
        SlotConstraint::Categorial(c) => {
            let cats: Vec<_> = fa.senses.iter().flat_map(|s| s.categories.iter().copied()).collect();
            let m = ont.best_match(&cats, c)?;
            let sense = fa
                .senses
                .iter()
                .position(|s| s.categories.contains(&m.word_category))
                .unwrap_or(0);
            Some(Binding {
                arg: fa.arg,
                sense,
                depth: Some(m.depth),
            })
        }
    }
}

/// Picks the most specific match. Deterministic and independent of input order.
pub fn select_pattern(matches: &[PatternMatch]) -> Result<&PatternMatch, PatternError> {
    matches.iter().max_by_key(|m| m.specificity).ok_or(PatternError::NoMatch)
}

enum PatternLineError {
    Syntax(String),
    Semantic(PatternError),
}

impl From<String> for PatternLineError {
    fn from(s: String) -> Self {
        PatternLineError::Syntax(s)
    }
}

fn parse_pattern(
    line: &str,
    order: usize,
    lex: &Lexicon,
    ont: &CategoryHierarchy,
) -> Result<TransferPattern, PatternLineError> {
    let fields: Vec<&str> = line.split('\t').map(str::trim).collect();
    if fields.len() != 5 {
        return Err(format!("expected 5 tab-separated fields, found {}", fields.len()).into());
    }
    let id = fields[0].to_string();
    let level: Level = fields[1].parse()?;
    let predicate = fields[2].to_string();
    let sem = |e: PatternError| PatternLineError::Semantic(e);
    if lex.lookup(&predicate).is_empty() {
        return Err(sem(PatternError::UnknownLemma {
            pattern: id,
            lemma: predicate,
        }));
    }
    let slots = parse_slots(&id, fields[3], lex, ont)?;
    let english = EnglishTemplate::parse(fields[4]).map_err(|message| {
        sem(PatternError::Template {
            pattern: id.clone(),
            message,
        })
    })?;

    let template_err = |message: String| {
        sem(PatternError::Template {
            pattern: id.clone(),
            message,
        })
    };
    for (i, s) in slots.iter().enumerate() {
        if slots[..i].iter().any(|o| o.particle == s.particle) {
            return Err(template_err(format!("particle `{}` used by two slots", s.particle)));
        }
        let uses = english
            .parts
            .iter()
            .filter(|p| **p == TemplatePart::Slot(s.particle))
            .count();
        match (s.realization.in_template(), uses) {
            (true, 1) | (false, 0) => {}
            (true, n) => {
                return Err(template_err(format!(
                    "slot `{}` must appear once in the template, found {n}",
                    s.particle
                )))
            }
            (false, _) => {
                return Err(template_err(format!(
                    "slot `{}` is not realized in place but appears in the template",
                    s.particle
                )))
            }
        }
    }
    for part in &english.parts {
        if let TemplatePart::Slot(p) = part {
            if !slots.iter().any(|s| s.particle == *p) {
                return Err(template_err(format!("placeholder for undeclared slot `{p}`")));
            }
        }
    }

    let locked = slots
        .iter()
        .filter(|s| matches!(s.constraint, SlotConstraint::WordLocked(_)))
        .count();
    match level {
        Level::Idiomatic if locked == 0 => return Err(sem(PatternError::IdiomWithoutLockedSlot(id))),
        Level::General if slots.iter().any(|s| s.constraint != SlotConstraint::Unconstrained) => {
            return Err(sem(PatternError::ConstrainedGeneral(id)))
        }
        _ => {}
    }

    Ok(TransferPattern {
        id,
        level,
        predicate,
        slots,
        english,
        order,
    })
}

/// Parses `particle:constraint` pairs; shared with the rewrite-rule guards.
pub(crate) fn parse_constraint(
    owner: &str,
    text: &str,
    lex: &Lexicon,
    ont: &CategoryHierarchy,
) -> Result<SlotConstraint, PatternError> {
    if text == "*" {
        Ok(SlotConstraint::Unconstrained)
    } else if let Some(lemma) = text.strip_prefix('=') {
        if lex.lookup(lemma).is_empty() {
            return Err(PatternError::UnknownLemma {
                pattern: owner.to_string(),
                lemma: lemma.to_string(),
            });
        }
        Ok(SlotConstraint::WordLocked(lemma.to_string()))
    } else if let Some(cats) = text.strip_prefix('@') {
        let names: Vec<&str> = cats.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
        if names.is_empty() {
            return Err(PatternError::Template {
                pattern: owner.to_string(),
                message: "empty category list".into(),
            });
        }
        let ids = names
            .iter()
            .map(|n| {
                ont.id(n).map_err(|_| PatternError::UnknownCategory {
                    pattern: owner.to_string(),
                    category: n.to_string(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SlotConstraint::Categorial(
            CategoryConstraint::new(ids).expect("non-empty"),
        ))
    } else {
        Err(PatternError::Template {
            pattern: owner.to_string(),
            message: format!("bad constraint `{text}`"),
        })
    }
}

fn parse_slots(
    id: &str,
    text: &str,
    lex: &Lexicon,
    ont: &CategoryHierarchy,
) -> Result<Vec<CaseSlotPattern>, PatternLineError> {
    if text == "-" {
        return Ok(Vec::new());
    }
    let mut slots = Vec::new();
    for raw in text.split(';').map(str::trim).filter(|s| !s.is_empty()) {
        let parts: Vec<&str> = raw.splitn(4, ':').collect();
        if parts.len() != 4 {
            return Err(format!("malformed slot `{raw}`").into());
        }
        let particle = Particle::parse(parts[0]).ok_or_else(|| format!("unknown particle `{}`", parts[0]))?;
        let constraint = parse_constraint(id, parts[1], lex, ont).map_err(PatternLineError::Semantic)?;
        let required = match parts[2] {
            "yes" => true,
            "no" => false,
            other => return Err(format!("required must be yes or no, found `{other}`").into()),
        };
        let realization: Realization = parts[3].parse()?;
        slots.push(CaseSlotPattern {
            particle,
            constraint,
            required,
            realization,
        });
    }
    Ok(slots)
}

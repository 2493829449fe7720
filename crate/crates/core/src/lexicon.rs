//! Word knowledge: surface forms, parts of speech, sense/category
//! assignments and English glosses, plus compound analysis and the
//! hyphen-based token segmenter.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::ontology::{CategoryHierarchy, CategoryId, CategoryKind};

/// Most common-noun categories one word may carry.
pub const MAX_COMMON_CATEGORIES: usize = 5;
/// Most proper-noun categories one word may carry.
pub const MAX_PROPER_CATEGORIES: usize = 10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LexiconError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("entry `{surface}` refers to unknown category `{category}`")]
    UnknownCategory { surface: String, category: String },
    #[error("entry `{surface}` has {count} {kind} categories (limit {max})")]
    TooManyCategories {
        surface: String,
        kind: CategoryKind,
        count: usize,
        max: usize,
    },
    #[error("duplicate entry `{surface}` ({pos})")]
    Duplicate { surface: String, pos: PartOfSpeech },
    #[error("entry `{surface}`: irregular plural given for a non-countable gloss")]
    IrregularPluralNotCountable { surface: String },
    #[error("entry `{surface}`: {message}")]
    Conjugation { surface: String, message: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PartOfSpeech {
    CommonNoun,
    ProperNoun,
    Verb,
    Adjective,
    Suffix,
    Prefix,
    Adverb,
    Determiner,
}

impl PartOfSpeech {
    pub fn is_nominal(self) -> bool {
        matches!(self, PartOfSpeech::CommonNoun | PartOfSpeech::ProperNoun)
    }

    pub fn is_predicate(self) -> bool {
        matches!(self, PartOfSpeech::Verb | PartOfSpeech::Adjective)
    }
}

impl fmt::Display for PartOfSpeech {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PartOfSpeech::CommonNoun => "common-noun",
            PartOfSpeech::ProperNoun => "proper-noun",
            PartOfSpeech::Verb => "verb",
            PartOfSpeech::Adjective => "adjective",
            PartOfSpeech::Suffix => "suffix",
            PartOfSpeech::Prefix => "prefix",
            PartOfSpeech::Adverb => "adverb",
            PartOfSpeech::Determiner => "determiner",
        })
    }
}

impl FromStr for PartOfSpeech {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "common-noun" => PartOfSpeech::CommonNoun,
            "proper-noun" => PartOfSpeech::ProperNoun,
            "verb" => PartOfSpeech::Verb,
            "adjective" => PartOfSpeech::Adjective,
            "suffix" => PartOfSpeech::Suffix,
            "prefix" => PartOfSpeech::Prefix,
            "adverb" => PartOfSpeech::Adverb,
            "determiner" => PartOfSpeech::Determiner,
            other => return Err(format!("unknown part of speech `{other}`")),
        })
    }
}

/// The consonant row of a godan verb, named by its dictionary-form ending.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GodanRow {
    U,
    Ku,
    Gu,
    Su,
    Tsu,
    Nu,
    Bu,
    Mu,
    Ru,
}

impl GodanRow {
    pub const ALL: [GodanRow; 9] = [
        GodanRow::U,
        GodanRow::Ku,
        GodanRow::Gu,
        GodanRow::Su,
        GodanRow::Tsu,
        GodanRow::Nu,
        GodanRow::Bu,
        GodanRow::Mu,
        GodanRow::Ru,
    ];

    /// Dictionary-form ending.
    pub fn ending(self) -> &'static str {
        match self {
            GodanRow::U => "u",
            GodanRow::Ku => "ku",
            GodanRow::Gu => "gu",
            GodanRow::Su => "su",
            GodanRow::Tsu => "tsu",
            GodanRow::Nu => "nu",
            GodanRow::Bu => "bu",
            GodanRow::Mu => "mu",
            GodanRow::Ru => "ru",
        }
    }

    /// Irrealis (a-stem) ending, used before -nai and -reru.
    pub fn a_ending(self) -> &'static str {
        match self {
            GodanRow::U => "wa",
            GodanRow::Ku => "ka",
            GodanRow::Gu => "ga",
            GodanRow::Su => "sa",
            GodanRow::Tsu => "ta",
            GodanRow::Nu => "na",
            GodanRow::Bu => "ba",
            GodanRow::Mu => "ma",
            GodanRow::Ru => "ra",
        }
    }

    /// Euphonic te-form ending ("-te" family); the past replaces the final e with a.
    pub fn te_ending(self) -> &'static str {
        match self {
            GodanRow::U | GodanRow::Tsu | GodanRow::Ru => "tte",
            GodanRow::Nu | GodanRow::Bu | GodanRow::Mu => "nde",
            GodanRow::Ku => "ite",
            GodanRow::Gu => "ide",
            GodanRow::Su => "shite",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConjugationClass {
    Ichidan,
    Godan(GodanRow),
    /// iku: godan-ku except for the te/ta forms (itte/itta).
    IrregularIku,
    /// i-adjectives.
    AdjectiveI,
}

impl fmt::Display for ConjugationClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConjugationClass::Ichidan => f.write_str("ichidan"),
            ConjugationClass::Godan(row) => write!(f, "godan-{}", row.ending()),
            ConjugationClass::IrregularIku => f.write_str("irregular-iku"),
            ConjugationClass::AdjectiveI => f.write_str("adj-i"),
        }
    }
}

impl FromStr for ConjugationClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ichidan" => Ok(ConjugationClass::Ichidan),
            "irregular-iku" => Ok(ConjugationClass::IrregularIku),
            "adj-i" => Ok(ConjugationClass::AdjectiveI),
            _ => s
                .strip_prefix("godan-")
                .and_then(|row| GodanRow::ALL.into_iter().find(|r| r.ending() == row))
                .map(ConjugationClass::Godan)
                .ok_or_else(|| format!("unknown conjugation class `{s}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Countability {
    Countable,
    Uncountable,
    PluralOnly,
}

impl FromStr for Countability {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "countable" => Ok(Countability::Countable),
            "uncountable" => Ok(Countability::Uncountable),
            "plural-only" => Ok(Countability::PluralOnly),
            other => Err(format!("unknown countability `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ArticlePolicy {
    Indefinite,
    Definite,
    None,
}

impl FromStr for ArticlePolicy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "indefinite" => Ok(ArticlePolicy::Indefinite),
            "definite" => Ok(ArticlePolicy::Definite),
            "none" => Ok(ArticlePolicy::None),
            other => Err(format!("unknown article policy `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnglishGloss {
    pub lemma: String,
    pub countability: Countability,
    pub article: ArticlePolicy,
    pub irregular_plural: Option<String>,
}

impl EnglishGloss {
    pub fn new(lemma: impl Into<String>, countability: Countability, article: ArticlePolicy) -> Self {
        EnglishGloss {
            lemma: lemma.into(),
            countability,
            article,
            irregular_plural: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sense {
    pub categories: Vec<CategoryId>,
    pub gloss: EnglishGloss,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexicalEntry {
    pub surface: String,
    pub pos: PartOfSpeech,
    pub conjugation: Option<ConjugationClass>,
    pub senses: Vec<Sense>,
}

impl LexicalEntry {
    /// All categories across senses, in sense order.
    pub fn categories(&self) -> impl Iterator<Item = CategoryId> + '_ {
        self.senses.iter().flat_map(|s| s.categories.iter().copied())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Particle {
    Wa,
    Ga,
    O,
    Ni,
    De,
    E,
    No,
    To,
    Kara,
    Made,
}

impl Particle {
    pub const ALL: [Particle; 10] = [
        Particle::Wa,
        Particle::Ga,
        Particle::O,
        Particle::Ni,
        Particle::De,
        Particle::E,
        Particle::No,
        Particle::To,
        Particle::Kara,
        Particle::Made,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Particle::Wa => "wa",
            Particle::Ga => "ga",
            Particle::O => "o",
            Particle::Ni => "ni",
            Particle::De => "de",
            Particle::E => "e",
            Particle::No => "no",
            Particle::To => "to",
            Particle::Kara => "kara",
            Particle::Made => "made",
        }
    }

    pub fn parse(s: &str) -> Option<Particle> {
        Particle::ALL.into_iter().find(|p| p.as_str() == s)
    }
}

impl fmt::Display for Particle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segmented {
    pub content: String,
    pub particles: Vec<Particle>,
}

/// Splits a hyphenated token into its content word and trailing particles.
///
/// Trailing hyphen-joined segments from the closed particle set become
/// particles; everything before them, hyphens included, is the content.
/// At least one segment always stays content.
pub fn segment(token: &str) -> Segmented {
    let parts: Vec<&str> = token.split('-').collect();
    let mut keep = parts.len();
    while keep > 1 {
        if Particle::parse(parts[keep - 1]).is_none() {
            break;
        }
        keep -= 1;
    }
    Segmented {
        content: parts[..keep].join("-"),
        particles: parts[keep..].iter().filter_map(|p| Particle::parse(p)).collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompoundRelation {
    /// Head is an institution named after its field: "the Ministry of Construction".
    InstitutionOf,
    /// Modifier qualifies the head: "modern jazz".
    Attributive,
    /// Spatial suffix on a place noun: `kawa-zoi` "along the river".
    /// Keeps the modifier's gloss; the suffix gloss is the preposition.
    Relational,
}

impl fmt::Display for CompoundRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CompoundRelation::InstitutionOf => "institution-of",
            CompoundRelation::Attributive => "attributive",
            CompoundRelation::Relational => "relational",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompoundAnalysis {
    pub surface: String,
    pub modifier: LexicalEntry,
    pub head: LexicalEntry,
    pub relation: CompoundRelation,
    pub gloss: EnglishGloss,
}

impl CompoundAnalysis {
    /// Preposition carried by a relational suffix.
    pub fn preposition(&self) -> Option<&str> {
        (self.relation == CompoundRelation::Relational).then(|| self.head.senses[0].gloss.lemma.as_str())
    }

    /// The head's senses, each carrying the compound gloss.
    pub fn senses(&self) -> Vec<Sense> {
        let base = match self.relation {
            CompoundRelation::Relational => &self.modifier,
            _ => &self.head,
        };
        base.senses
            .iter()
            .map(|s| Sense {
                categories: s.categories.clone(),
                gloss: self.gloss.clone(),
            })
            .collect()
    }
}

#[derive(Debug, Clone, Default)]
pub struct Lexicon {
    entries: Vec<LexicalEntry>,
    by_surface: HashMap<String, Vec<usize>>,
}

impl Lexicon {
    pub fn parse(source: &str, ont: &CategoryHierarchy) -> Result<Self, LexiconError> {
        let mut lex = Lexicon::default();
        for (n, raw) in source.lines().enumerate() {
            let line = raw.trim_end_matches('\r');
            if line.trim().is_empty() || line.trim_start().starts_with('#') {
                continue;
            }
            let entry = parse_entry(line, ont).map_err(|e| match e {
                EntryError::Syntax(message) => LexiconError::Parse { line: n + 1, message },
                EntryError::Semantic(e) => e,
            })?;
            lex.insert(entry)?;
        }
        Ok(lex)
    }

    /// Adds a validated entry; surfaces are unique per part of speech.
    pub fn insert(&mut self, entry: LexicalEntry) -> Result<(), LexiconError> {
        let slots = self.by_surface.entry(entry.surface.clone()).or_default();
        if slots.iter().any(|&i| self.entries[i].pos == entry.pos) {
            return Err(LexiconError::Duplicate {
                surface: entry.surface,
                pos: entry.pos,
            });
        }
        slots.push(self.entries.len());
        self.entries.push(entry);
        Ok(())
    }

    pub fn lookup(&self, surface: &str) -> Vec<&LexicalEntry> {
        self.by_surface
            .get(surface)
            .map(|ix| ix.iter().map(|&i| &self.entries[i]).collect())
            .unwrap_or_default()
    }

    pub fn entries(&self) -> &[LexicalEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn find(&self, surface: &str, pred: impl Fn(PartOfSpeech) -> bool) -> Option<&LexicalEntry> {
        self.lookup(surface).into_iter().find(|e| pred(e.pos))
    }

    /// Mutable access for building test variants of the shipped lexicon.
    pub fn entry_mut(&mut self, surface: &str, pos: PartOfSpeech) -> Option<&mut LexicalEntry> {
        let ix = self
            .by_surface
            .get(surface)?
            .iter()
            .copied()
            .find(|&i| self.entries[i].pos == pos)?;
        Some(&mut self.entries[ix])
    }

    /// Binary right-headed split of an unknown noun.
    ///
    /// Tries the longest head first; both halves must resolve. A hyphen at
    /// the split point belongs to neither half.
    pub fn analyze_compound(&self, ont: &CategoryHierarchy, surface: &str) -> Option<CompoundAnalysis> {
        let head_ok = |p: PartOfSpeech| p.is_nominal() || p == PartOfSpeech::Suffix;
        let mod_ok = |p: PartOfSpeech| p.is_nominal() || p == PartOfSpeech::Prefix;
        for (split, _) in surface.char_indices().skip(1) {
            let modifier_s = surface[..split].trim_end_matches('-');
            let head_s = surface[split..].trim_start_matches('-');
            if modifier_s.is_empty() || head_s.is_empty() {
                continue;
            }
            let (Some(head), Some(modifier)) = (self.find(head_s, head_ok), self.find(modifier_s, mod_ok))
            else {
                continue;
            };
            return Some(compose(ont, surface, modifier.clone(), head.clone()));
        }
        None
    }
}

fn compose(ont: &CategoryHierarchy, surface: &str, modifier: LexicalEntry, head: LexicalEntry) -> CompoundAnalysis {
    let institution = ont.id("organization").ok().is_some_and(|org| {
        head.categories().any(|c| ont.subsumes_id(org, c))
    });
    let relational = head.pos == PartOfSpeech::Suffix
        && ont.id("spatial-relation").ok().is_some_and(|rel| {
            head.categories().any(|c| ont.subsumes_id(rel, c))
        });
    let head_gloss = &head.senses[0].gloss;
    let mod_gloss = &modifier.senses[0].gloss;
    let (relation, gloss) = if relational {
        (CompoundRelation::Relational, mod_gloss.clone())
    } else if institution {
        let field = if head_gloss.lemma.starts_with(char::is_uppercase) {
            title_case(&mod_gloss.lemma)
        } else {
            mod_gloss.lemma.clone()
        };
        (
            CompoundRelation::InstitutionOf,
            EnglishGloss::new(
                format!("{} of {}", head_gloss.lemma, field),
                Countability::Countable,
                ArticlePolicy::Definite,
            ),
        )
    } else {
        (
            CompoundRelation::Attributive,
            EnglishGloss {
                lemma: format!("{} {}", mod_gloss.lemma, head_gloss.lemma),
                countability: head_gloss.countability,
                article: head_gloss.article,
                irregular_plural: head_gloss
                    .irregular_plural
                    .as_ref()
                    .map(|p| format!("{} {}", mod_gloss.lemma, p)),
            },
        )
    };
    CompoundAnalysis {
        surface: surface.to_string(),
        modifier,
        head,
        relation,
        gloss,
    }
}

fn title_case(s: &str) -> String {
    s.split(' ')
        .map(|w| {
            let mut cs = w.chars();
            match cs.next() {
                Some(c) => c.to_uppercase().chain(cs).collect(),
                None => String::new(),
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

enum EntryError {
    Syntax(String),
    Semantic(LexiconError),
}

impl From<String> for EntryError {
    fn from(s: String) -> Self {
        EntryError::Syntax(s)
    }
}

fn parse_entry(line: &str, ont: &CategoryHierarchy) -> Result<LexicalEntry, EntryError> {
    let fields: Vec<&str> = line.split('\t').map(str::trim).collect();
    if fields.len() != 4 {
        return Err(format!("expected 4 tab-separated fields, found {}", fields.len()).into());
    }
    let surface = fields[0].to_string();
    if surface.is_empty() {
        return Err("empty surface".to_string().into());
    }
    let pos: PartOfSpeech = fields[1].parse()?;
    let conjugation = match fields[2] {
        "-" => None,
        c => Some(c.parse::<ConjugationClass>()?),
    };
    let conj_err = |message: &str| {
        EntryError::Semantic(LexiconError::Conjugation {
            surface: surface.clone(),
            message: message.to_string(),
        })
    };
    match (pos, conjugation) {
        (PartOfSpeech::Verb, None) | (PartOfSpeech::Adjective, None) => {
            return Err(conj_err("predicates need a conjugation class"))
        }
        (PartOfSpeech::Verb, Some(ConjugationClass::AdjectiveI)) => {
            return Err(conj_err("verbs cannot take the adjective class"))
        }
        (PartOfSpeech::Adjective, Some(c)) if c != ConjugationClass::AdjectiveI => {
            return Err(conj_err("adjectives take the adj-i class"))
        }
        (p, Some(_)) if !p.is_predicate() => return Err(conj_err("only verbs and adjectives conjugate")),
        _ => {}
    }
    if let Some(class) = conjugation {
        let ending_ok = match class {
            ConjugationClass::Ichidan => surface.ends_with("iru") || surface.ends_with("eru"),
            ConjugationClass::Godan(row) => surface.ends_with(row.ending()),
            ConjugationClass::IrregularIku => surface.ends_with("iku"),
            ConjugationClass::AdjectiveI => surface.ends_with('i'),
        };
        if !ending_ok {
            return Err(conj_err(&format!("dictionary form does not fit class {class}")));
        }
    }

    let mut senses = Vec::new();
    for raw in fields[3].split(';').map(str::trim).filter(|s| !s.is_empty()) {
        let parts: Vec<&str> = raw.split('|').map(str::trim).collect();
        if !(2..=5).contains(&parts.len()) || parts[1].is_empty() {
            return Err(format!("malformed sense `{raw}`").into());
        }
        let mut categories = Vec::new();
        for name in parts[0].split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let id = ont.id(name).map_err(|_| {
                EntryError::Semantic(LexiconError::UnknownCategory {
                    surface: surface.clone(),
                    category: name.to_string(),
                })
            })?;
            categories.push(id);
        }
        if categories.is_empty() {
            return Err(format!("sense `{raw}` names no category").into());
        }
        let countability = parts.get(2).map(|s| s.parse()).transpose()?.unwrap_or(Countability::Countable);
        let article = parts.get(3).map(|s| s.parse()).transpose()?.unwrap_or(ArticlePolicy::Indefinite);
        let irregular_plural = parts.get(4).filter(|s| !s.is_empty()).map(|s| s.to_string());
        if irregular_plural.is_some() && countability != Countability::Countable {
            return Err(EntryError::Semantic(LexiconError::IrregularPluralNotCountable {
                surface: surface.clone(),
            }));
        }
        senses.push(Sense {
            categories,
            gloss: EnglishGloss {
                lemma: parts[1].to_string(),
                countability,
                article,
                irregular_plural,
            },
        });
    }
    if senses.is_empty() {
        return Err("entry has no senses".to_string().into());
    }

    let mut distinct: Vec<CategoryId> = Vec::new();
    for c in senses.iter().flat_map(|s| s.categories.iter().copied()) {
        if !distinct.contains(&c) {
            distinct.push(c);
        }
    }
    for kind in [CategoryKind::Common, CategoryKind::Proper] {
        let count = distinct.iter().filter(|&&c| ont.get(c).kind == kind).count();
        let max = match kind {
            CategoryKind::Common => MAX_COMMON_CATEGORIES,
            CategoryKind::Proper => MAX_PROPER_CATEGORIES,
        };
        if count > max {
            return Err(EntryError::Semantic(LexiconError::TooManyCategories {
                surface,
                kind,
                count,
                max,
            }));
        }
    }

    Ok(LexicalEntry {
        surface,
        pos,
        conjugation,
        senses,
    })
}

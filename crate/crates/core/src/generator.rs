//! English generation from clause specifications.

use crate::analyzer::Connective;
use crate::lexicon::{ArticlePolicy, Countability};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EnglishTense {
    #[default]
    Present,
    Past,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct VerbPlan {
    pub tense: EnglishTense,
    pub progressive: bool,
    pub passive: bool,
    pub negative: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Person {
    First,
    Second,
    Third,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Agreement {
    pub person: Person,
    pub plural: bool,
}

impl Agreement {
    pub const THIRD_SINGULAR: Agreement = Agreement {
        person: Person::Third,
        plural: false,
    };
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Case {
    Subjective,
    Objective,
}

/// A noun phrase ready for realization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NounPlan {
    /// English head, possibly several words ("coffee shop").
    pub head: String,
    /// Words after the head ("of wolves"); never inflected.
    pub complement: Option<String>,
    pub countability: Countability,
    pub article: ArticlePolicy,
    pub irregular_plural: Option<String>,
    pub plural: bool,
    /// Replaces the article ("that").
    pub determiner: Option<String>,
}

impl NounPlan {
    pub fn new(head: impl Into<String>, countability: Countability, article: ArticlePolicy) -> Self {
        NounPlan {
            head: head.into(),
            complement: None,
            countability,
            article,
            irregular_plural: None,
            plural: false,
            determiner: None,
        }
    }

    pub fn pronoun(word: &str) -> Self {
        NounPlan::new(word, Countability::Countable, ArticlePolicy::None)
    }

    fn pronoun_row(&self) -> Option<&'static (&'static str, &'static str, Person, bool)> {
        if self.complement.is_some() || self.determiner.is_some() {
            return None;
        }
        PRONOUNS.iter().find(|row| row.0 == self.head)
    }

    pub fn agreement(&self) -> Agreement {
        if let Some(&(_, _, person, plural)) = self.pronoun_row() {
            return Agreement { person, plural };
        }
        Agreement {
            person: Person::Third,
            plural: self.plural || self.countability == Countability::PluralOnly,
        }
    }

    pub fn render(&self, case: Case) -> String {
        if let Some(&(subj, obj, _, _)) = self.pronoun_row() {
            return match case {
                Case::Subjective => subj.to_string(),
                Case::Objective => obj.to_string(),
            };
        }
        let head = if self.plural {
            match &self.irregular_plural {
                Some(p) => p.clone(),
                None => pluralize(&self.head),
            }
        } else {
            self.head.clone()
        };
        let mut words: Vec<String> = Vec::new();
        if let Some(d) = &self.determiner {
            words.push(d.clone());
        } else if let Some(a) = self.article_word(&head) {
            words.push(a.to_string());
        }
        words.push(head);
        if let Some(c) = &self.complement {
            words.push(c.clone());
        }
        words.join(" ")
    }

    fn article_word(&self, head: &str) -> Option<&'static str> {
        match self.article {
            ArticlePolicy::None => None,
            ArticlePolicy::Definite => Some("the"),
            ArticlePolicy::Indefinite => {
                (!self.plural && self.countability == Countability::Countable).then(|| indefinite_article(head))
            }
        }
    }
}

const PRONOUNS: &[(&str, &str, Person, bool)] = &[
    ("I", "me", Person::First, false),
    ("we", "us", Person::First, true),
    ("you", "you", Person::Second, false),
    ("he", "him", Person::Third, false),
    ("she", "her", Person::Third, false),
    ("it", "it", Person::Third, false),
    ("they", "them", Person::Third, true),
];

/// "a" or "an" by the first letter of the following word.
pub fn indefinite_article(next: &str) -> &'static str {
    match next.chars().next().map(|c| c.to_ascii_lowercase()) {
        Some('a' | 'e' | 'i' | 'o' | 'u') => "an",
        _ => "a",
    }
}

const IRREGULAR_NOUNS: &[(&str, &str)] = &[
    ("person", "people"),
    ("man", "men"),
    ("woman", "women"),
    ("child", "children"),
    ("foot", "feet"),
    ("tooth", "teeth"),
    ("mouse", "mice"),
    ("goose", "geese"),
    ("sheep", "sheep"),
    ("fish", "fish"),
    ("deer", "deer"),
    ("wolf", "wolves"),
    ("knife", "knives"),
    ("leaf", "leaves"),
    ("life", "lives"),
    ("half", "halves"),
    ("shelf", "shelves"),
];

/// Plural of an English noun; only the last word of a compound inflects,
/// or the word before "of" in an "X of Y" head.
pub fn pluralize(noun: &str) -> String {
    if let Some((head, rest)) = noun.split_once(" of ") {
        return format!("{} of {rest}", pluralize(head));
    }
    let (prefix, last) = match noun.rsplit_once(' ') {
        Some((p, l)) => (format!("{p} "), l),
        None => (String::new(), noun),
    };
    if let Some((_, pl)) = IRREGULAR_NOUNS.iter().find(|(s, _)| *s == last) {
        return format!("{prefix}{pl}");
    }
    let plural = if ["s", "x", "z", "ch", "sh"].iter().any(|e| last.ends_with(e)) {
        format!("{last}es")
    } else if let Some(stem) = last.strip_suffix('y').filter(|s| ends_with_consonant(s)) {
        format!("{stem}ies")
    } else {
        format!("{last}s")
    };
    format!("{prefix}{plural}")
}

/// Inverse of [`pluralize`] for single words.
pub fn singularize(noun: &str) -> String {
    if let Some((sg, _)) = IRREGULAR_NOUNS.iter().find(|(_, p)| *p == noun) {
        return sg.to_string();
    }
    if let Some(stem) = noun.strip_suffix("ies") {
        return format!("{stem}y");
    }
    // "boxes" -> "box" but "noses" -> "nose": a lone s or z keeps its e
    // unless the stem reads like "bus".
    if let Some(stem) = noun.strip_suffix("es") {
        let sibilant = ["ss", "x", "zz", "ch", "sh"].iter().any(|e| stem.ends_with(e))
            || (stem.ends_with("us") && !stem.ends_with("ous"));
        if sibilant {
            return stem.to_string();
        }
    }
    noun.strip_suffix('s').unwrap_or(noun).to_string()
}

fn is_vowel(c: char) -> bool {
    matches!(c, 'a' | 'e' | 'i' | 'o' | 'u')
}

fn ends_with_consonant(s: &str) -> bool {
    s.chars().last().is_some_and(|c| c.is_ascii_alphabetic() && !is_vowel(c))
}

// (base, past, participle)
const IRREGULAR_VERBS: &[(&str, &str, &str)] = &[
    ("be", "was", "been"),
    ("have", "had", "had"),
    ("do", "did", "done"),
    ("go", "went", "gone"),
    ("build", "built", "built"),
    ("make", "made", "made"),
    ("sit", "sat", "sat"),
    ("buy", "bought", "bought"),
    ("ride", "rode", "ridden"),
    ("read", "read", "read"),
    ("fall", "fell", "fallen"),
    ("spread", "spread", "spread"),
    ("hang", "hung", "hung"),
    ("put", "put", "put"),
    ("take", "took", "taken"),
    ("give", "gave", "given"),
    ("come", "came", "come"),
    ("see", "saw", "seen"),
    ("run", "ran", "run"),
    ("get", "got", "got"),
    ("cast", "cast", "cast"),
    ("set", "set", "set"),
    ("lay", "laid", "laid"),
    ("break", "broke", "broken"),
];

fn syllables(w: &str) -> usize {
    let mut n = 0;
    let mut prev = false;
    for c in w.chars() {
        let v = is_vowel(c) || c == 'y' && n > 0;
        if v && !prev {
            n += 1;
        }
        prev = v;
    }
    n
}

/// Short stressed consonant-vowel-consonant words double the final
/// consonant: "mop" → "mopped", "sit" → "sitting".
fn doubles_final(w: &str) -> bool {
    let cs: Vec<char> = w.chars().collect();
    let n = cs.len();
    n >= 3
        && syllables(w) == 1
        && !is_vowel(cs[n - 1])
        && !matches!(cs[n - 1], 'w' | 'x' | 'y')
        && is_vowel(cs[n - 2])
        && !is_vowel(cs[n - 3])
}

fn regular_ed(w: &str) -> String {
    if w.ends_with('e') {
        format!("{w}d")
    } else if let Some(stem) = w.strip_suffix('y').filter(|s| ends_with_consonant(s)) {
        format!("{stem}ied")
    } else if doubles_final(w) {
        format!("{w}{}ed", &w[w.len() - 1..])
    } else {
        format!("{w}ed")
    }
}

pub fn past(w: &str) -> String {
    IRREGULAR_VERBS
        .iter()
        .find(|(b, _, _)| *b == w)
        .map(|(_, p, _)| p.to_string())
        .unwrap_or_else(|| regular_ed(w))
}

pub fn participle(w: &str) -> String {
    IRREGULAR_VERBS
        .iter()
        .find(|(b, _, _)| *b == w)
        .map(|(_, _, p)| p.to_string())
        .unwrap_or_else(|| regular_ed(w))
}

pub fn gerund(w: &str) -> String {
    if let Some(stem) = w.strip_suffix("ie") {
        format!("{stem}ying")
    } else if w.ends_with('e') && !w.ends_with("ee") && w != "be" {
        format!("{}ing", &w[..w.len() - 1])
    } else if doubles_final(w) {
        format!("{w}{}ing", &w[w.len() - 1..])
    } else {
        format!("{w}ing")
    }
}

pub fn third_singular(w: &str) -> String {
    match w {
        "be" => "is".into(),
        "have" => "has".into(),
        _ if ["s", "x", "z", "ch", "sh", "o"].iter().any(|e| w.ends_with(e)) => format!("{w}es"),
        _ => match w.strip_suffix('y').filter(|s| ends_with_consonant(s)) {
            Some(stem) => format!("{stem}ies"),
            None => format!("{w}s"),
        },
    }
}

fn finite(w: &str, tense: EnglishTense, agr: Agreement) -> String {
    let third_sg = agr.person == Person::Third && !agr.plural;
    match (w, tense) {
        ("be", EnglishTense::Present) if agr.person == Person::First && !agr.plural => "am".into(),
        ("be", EnglishTense::Present) if !third_sg => "are".into(),
        ("be", EnglishTense::Past) if agr.plural || agr.person == Person::Second => "were".into(),
        (_, EnglishTense::Past) => past(w),
        (_, EnglishTense::Present) if third_sg => third_singular(w),
        (_, EnglishTense::Present) => w.to_string(),
    }
}

/// Verb group for `lemma`. Only the first word of a multiword lemma
/// inflects ("sit down" → "is sitting down").
pub fn inflect_verb(lemma: &str, plan: VerbPlan, agr: Agreement) -> String {
    let (verb, particle) = match lemma.split_once(' ') {
        Some((v, rest)) => (v, Some(rest)),
        None => (lemma, None),
    };
    // Innermost form first, then each auxiliary wraps it.
    let mut chain: Vec<String> = Vec::new();
    let mut head = verb.to_string();
    if plan.passive {
        chain.push(participle(&head));
        head = "be".into();
    }
    if plan.progressive {
        chain.push(gerund(&head));
        head = "be".into();
    }
    let mut group = if plan.negative {
        if head == "be" {
            vec![finite("be", plan.tense, agr), "not".into()]
        } else {
            chain.push(head);
            vec![finite("do", plan.tense, agr), "not".into()]
        }
    } else {
        vec![finite(&head, plan.tense, agr)]
    };
    group.extend(chain.into_iter().rev());
    if let Some(p) = particle {
        group.push(p.to_string());
    }
    group.join(" ")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Constituent {
    Word(String),
    Phrase {
        preposition: Option<String>,
        noun: NounPlan,
    },
}

impl Constituent {
    fn render(&self) -> String {
        match self {
            Constituent::Word(w) => w.clone(),
            Constituent::Phrase { preposition, noun } => {
                let np = noun.render(Case::Objective);
                match preposition {
                    Some(p) => format!("{p} {np}"),
                    None => np,
                }
            }
        }
    }
}

/// One English clause: subject, verb group, the template's fixed words and
/// complements in order, then free adjuncts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnglishClause {
    pub subject: NounPlan,
    pub verb: String,
    pub plan: VerbPlan,
    pub complements: Vec<Constituent>,
    pub adjuncts: Vec<Constituent>,
    pub connective: Connective,
}

impl EnglishClause {
    fn predicate(&self) -> String {
        let mut words = vec![inflect_verb(&self.verb, self.plan, self.subject.agreement())];
        words.extend(self.complements.iter().chain(&self.adjuncts).map(Constituent::render));
        words.retain(|w| !w.is_empty());
        words.join(" ")
    }
}

fn join_series(items: &[String]) -> String {
    match items {
        [] => String::new(),
        [one] => one.clone(),
        [init @ .., last] => format!("{} and {last}", init.join(", ")),
    }
}

/// Joins clauses into one sentence. te-linked clauses form a series that
/// shares a repeated subject; a contrastive link becomes ", but".
pub fn realize_sentence(clauses: &[EnglishClause]) -> String {
    let mut out = String::new();
    let mut series: Vec<String> = Vec::new();
    let mut prev_subject: Option<&NounPlan> = None;
    for ec in clauses {
        let subject = ec.subject.render(Case::Subjective);
        let clause = if prev_subject == Some(&ec.subject) {
            ec.predicate()
        } else {
            format!("{subject} {}", ec.predicate())
        };
        series.push(clause);
        if ec.connective == Connective::Sequential {
            prev_subject = Some(&ec.subject);
            continue;
        }
        out.push_str(&join_series(&series));
        series.clear();
        prev_subject = None;
        if ec.connective == Connective::Contrastive {
            out.push_str(", but ");
        }
    }
    if !series.is_empty() {
        out.push_str(&join_series(&series));
    }
    let out = out.trim_end_matches([' ', ',']).trim().to_string();
    if out.is_empty() {
        return out;
    }
    let mut cs = out.chars();
    let first = cs.next().map(|c| c.to_uppercase().collect::<String>()).unwrap_or_default();
    format!("{first}{}.", cs.as_str())
}

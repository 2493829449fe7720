//! Verb and adjective morphology over hyphen-free romaji.
//!
//! [`deinflect`] strips suffix layers outermost-first (past/te, negation,
//! progressive, passive) using a small rule table, and keeps only analyses
//! whose final dictionary form is a lexicon predicate of a compatible
//! conjugation class. [`inflect`] builds forms innermost-first and is
//! independent of the rule table.

use std::collections::VecDeque;

use crate::lexicon::{ConjugationClass, GodanRow, Lexicon};

use super::{Aspect, Connective, Polarity, SubjectiveFeatures, Tense, Voice};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum WordType {
    /// The surface token itself.
    Final,
    Ichidan,
    Godan(GodanRow),
    Iku,
    AdjI,
    /// A te-form that an -iru auxiliary followed.
    TeAux,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum From {
    Final,
    FinalOrIchidan,
    FinalOrAdj,
    TeAux,
}

impl From {
    fn accepts(self, t: WordType) -> bool {
        matches!(
            (self, t),
            (From::Final, WordType::Final)
                | (From::FinalOrIchidan, WordType::Final | WordType::Ichidan)
                | (From::FinalOrAdj, WordType::Final | WordType::AdjI)
                | (From::TeAux, WordType::TeAux)
        )
    }
}

const PAST: u8 = 1;
const TE: u8 = 2;
const PROGRESSIVE: u8 = 4;
const PASSIVE: u8 = 8;
const NEGATIVE: u8 = 16;

#[derive(Debug, Clone)]
struct Rule {
    suffix_in: String,
    suffix_out: String,
    from: From,
    to: WordType,
    reason: u8,
}

fn rule(suffix_in: impl Into<String>, suffix_out: impl Into<String>, from: From, to: WordType, reason: u8) -> Rule {
    Rule {
        suffix_in: suffix_in.into(),
        suffix_out: suffix_out.into(),
        from,
        to,
        reason,
    }
}

fn past_of_te(te: &str) -> String {
    format!("{}a", &te[..te.len() - 1])
}

fn rules() -> Vec<Rule> {
    let mut rs = Vec::new();
    // Tense and te-connective (outermost layer), and bare te before -iru.
    rs.push(rule("ta", "ru", From::Final, WordType::Ichidan, PAST));
    rs.push(rule("te", "ru", From::Final, WordType::Ichidan, TE));
    rs.push(rule("te", "ru", From::TeAux, WordType::Ichidan, 0));
    for row in GodanRow::ALL {
        let te = row.te_ending();
        rs.push(rule(past_of_te(te), row.ending(), From::Final, WordType::Godan(row), PAST));
        rs.push(rule(te, row.ending(), From::Final, WordType::Godan(row), TE));
        rs.push(rule(te, row.ending(), From::TeAux, WordType::Godan(row), 0));
    }
    rs.push(rule("itta", "iku", From::Final, WordType::Iku, PAST));
    rs.push(rule("itte", "iku", From::Final, WordType::Iku, TE));
    rs.push(rule("itte", "iku", From::TeAux, WordType::Iku, 0));
    rs.push(rule("katta", "i", From::Final, WordType::AdjI, PAST));
    rs.push(rule("kute", "i", From::Final, WordType::AdjI, TE));

    // Negation: -nai conjugates as an i-adjective.
    rs.push(rule("nai", "ru", From::FinalOrAdj, WordType::Ichidan, NEGATIVE));
    for row in GodanRow::ALL {
        rs.push(rule(
            format!("{}nai", row.a_ending()),
            row.ending(),
            From::FinalOrAdj,
            WordType::Godan(row),
            NEGATIVE,
        ));
    }
    rs.push(rule("ikanai", "iku", From::FinalOrAdj, WordType::Iku, NEGATIVE));
    rs.push(rule("kunai", "i", From::FinalOrAdj, WordType::AdjI, NEGATIVE));

    // Progressive: te-form + iru (ichidan).
    rs.push(rule("teiru", "te", From::FinalOrIchidan, WordType::TeAux, PROGRESSIVE));
    rs.push(rule("deiru", "de", From::FinalOrIchidan, WordType::TeAux, PROGRESSIVE));

    // Passive: -(r)areru (ichidan).
    rs.push(rule("rareru", "ru", From::FinalOrIchidan, WordType::Ichidan, PASSIVE));
    for row in GodanRow::ALL {
        rs.push(rule(
            format!("{}reru", row.a_ending()),
            row.ending(),
            From::FinalOrIchidan,
            WordType::Godan(row),
            PASSIVE,
        ));
    }
    rs.push(rule("ikareru", "iku", From::FinalOrIchidan, WordType::Iku, PASSIVE));
    rs
}

fn class_fits(t: WordType, class: ConjugationClass) -> bool {
    match t {
        WordType::Final => true,
        WordType::Ichidan => class == ConjugationClass::Ichidan,
        WordType::Godan(row) => class == ConjugationClass::Godan(row),
        WordType::Iku => class == ConjugationClass::IrregularIku,
        WordType::AdjI => class == ConjugationClass::AdjectiveI,
        WordType::TeAux => false,
    }
}

fn features(reasons: u8) -> SubjectiveFeatures {
    let has = |r: u8| reasons & r != 0;
    SubjectiveFeatures {
        tense: if has(PAST) { Tense::Past } else { Tense::Nonpast },
        aspect: if has(PROGRESSIVE) {
            Aspect::Progressive
        } else {
            Aspect::Simple
        },
        voice: if has(PASSIVE) { Voice::Passive } else { Voice::Active },
        polarity: if has(NEGATIVE) {
            Polarity::Negative
        } else {
            Polarity::Affirmative
        },
        connective: if has(TE) {
            Connective::Sequential
        } else {
            Connective::None
        },
    }
}

/// All (lemma, features) analyses of a predicate form, in discovery order.
/// Unknown forms give an empty list.
pub fn deinflect(lex: &Lexicon, form: &str) -> Vec<(String, SubjectiveFeatures)> {
    let rules = rules();
    let mut out: Vec<(String, SubjectiveFeatures)> = Vec::new();
    let mut queue = VecDeque::from([(form.to_string(), WordType::Final, 0u8)]);
    let mut steps = 0;
    while let Some((word, t, reasons)) = queue.pop_front() {
        steps += 1;
        if steps > 256 {
            break;
        }
        for e in lex.lookup(&word) {
            let fits = e.pos.is_predicate() && e.conjugation.is_some_and(|c| class_fits(t, c));
            if fits {
                let f = features(reasons);
                if !out.iter().any(|(l, g)| *l == word && *g == f) {
                    out.push((word.clone(), f));
                }
            }
        }
        for r in &rules {
            if !r.from.accepts(t) || reasons & r.reason != 0 {
                continue;
            }
            if let Some(stem) = word.strip_suffix(r.suffix_in.as_str()) {
                queue.push_back((format!("{stem}{}", r.suffix_out), r.to, reasons | r.reason));
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Stem {
    Ichidan,
    Godan(GodanRow),
    Iku,
    AdjI,
}

fn te_form(word: &str, stem: Stem) -> String {
    match stem {
        Stem::Ichidan => format!("{}te", &word[..word.len() - 2]),
        Stem::Godan(row) => format!("{}{}", &word[..word.len() - row.ending().len()], row.te_ending()),
        Stem::Iku => format!("{}itte", &word[..word.len() - 3]),
        Stem::AdjI => format!("{}kute", &word[..word.len() - 1]),
    }
}

fn past_form(word: &str, stem: Stem) -> String {
    match stem {
        Stem::AdjI => format!("{}katta", &word[..word.len() - 1]),
        _ => past_of_te(&te_form(word, stem)),
    }
}

fn a_stem(word: &str, stem: Stem) -> String {
    match stem {
        Stem::Ichidan => word[..word.len() - 2].to_string(),
        Stem::Godan(row) => format!("{}{}", &word[..word.len() - row.ending().len()], row.a_ending()),
        Stem::Iku => format!("{}ika", &word[..word.len() - 3]),
        Stem::AdjI => format!("{}ku", &word[..word.len() - 1]),
    }
}

/// Builds the surface form of a predicate. The contrastive connective is
/// a separate word and is ignored here; the te-form carries no tense.
/// Returns `None` for combinations the class does not support.
pub fn inflect(lemma: &str, class: ConjugationClass, f: &SubjectiveFeatures) -> Option<String> {
    let mut word = lemma.to_string();
    let mut stem = match class {
        ConjugationClass::Ichidan => Stem::Ichidan,
        ConjugationClass::Godan(row) => Stem::Godan(row),
        ConjugationClass::IrregularIku => Stem::Iku,
        ConjugationClass::AdjectiveI => Stem::AdjI,
    };
    if stem == Stem::AdjI && (f.voice == Voice::Passive || f.aspect != Aspect::Simple) {
        return None;
    }
    if f.voice == Voice::Passive {
        word = match stem {
            Stem::Ichidan => format!("{}rareru", a_stem(&word, stem)),
            _ => format!("{}reru", a_stem(&word, stem)),
        };
        stem = Stem::Ichidan;
    }
    if f.aspect != Aspect::Simple {
        word = format!("{}iru", te_form(&word, stem));
        stem = Stem::Ichidan;
    }
    if f.polarity == Polarity::Negative {
        word = format!("{}nai", a_stem(&word, stem));
        stem = Stem::AdjI;
    }
    Some(match (f.connective, f.tense) {
        (Connective::Sequential, _) => te_form(&word, stem),
        (_, Tense::Past) => past_form(&word, stem),
        (_, Tense::Nonpast) => word,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ontology::CategoryHierarchy;

    fn lex() -> Lexicon {
        let ont = CategoryHierarchy::parse(include_str!("../../data/dict/categories.tsv")).unwrap();
        Lexicon::parse(include_str!("../../data/dict/lexicon.tsv"), &ont).unwrap()
    }

    fn feats(tense: Tense, aspect: Aspect, voice: Voice) -> SubjectiveFeatures {
        SubjectiveFeatures {
            tense,
            aspect,
            voice,
            ..SubjectiveFeatures::default()
        }
    }

    #[test]
    fn kakeru_and_passive_forms() {
        let lex = lex();
        assert_eq!(
            deinflect(&lex, "kaketa"),
            vec![("kakeru".to_string(), feats(Tense::Past, Aspect::Simple, Voice::Active))]
        );
        assert_eq!(
            deinflect(&lex, "osowareta"),
            vec![("osou".to_string(), feats(Tense::Past, Aspect::Simple, Voice::Passive))]
        );
        assert_eq!(
            deinflect(&lex, "kaketeiru"),
            vec![(
                "kakeru".to_string(),
                feats(Tense::Nonpast, Aspect::Progressive, Voice::Active)
            )]
        );
    }

    #[test]
    fn sound_changes_and_iku() {
        let lex = lex();
        let first = |f: &str| deinflect(&lex, f).into_iter().next().map(|(l, _)| l);
        assert_eq!(first("otta").as_deref(), Some("ou"));
        assert_eq!(first("notte").as_deref(), Some("noru"));
        assert_eq!(first("aruite").as_deref(), Some("aruku"));
        assert_eq!(first("yonda").as_deref(), Some("yomu"));
        assert_eq!(first("itta").as_deref(), Some("iku"));
        assert_eq!(first("kawatta").as_deref(), Some("kawaru"));
        assert_eq!(first("ochita").as_deref(), Some("ochiru"));
        let te = deinflect(&lex, "sotte");
        assert_eq!(te[0].0, "sou");
        assert_eq!(te[0].1.connective, Connective::Sequential);
    }

    #[test]
    fn negation_and_adjectives() {
        let lex = lex();
        let (l, f) = deinflect(&lex, "kakenakatta").remove(0);
        assert_eq!(l, "kakeru");
        assert_eq!((f.polarity, f.tense), (Polarity::Negative, Tense::Past));
        let (l, f) = deinflect(&lex, "takakatta").remove(0);
        assert_eq!((l.as_str(), f.tense), ("takai", Tense::Past));
        let (_, f) = deinflect(&lex, "takakunai").remove(0);
        assert_eq!(f.polarity, Polarity::Negative);
        assert_eq!(deinflect(&lex, "takai")[0].1, SubjectiveFeatures::default());
    }

    #[test]
    fn unknown_forms_are_empty() {
        let lex = lex();
        assert!(deinflect(&lex, "mizu").is_empty());
        assert!(deinflect(&lex, "zzzta").is_empty());
        // iku's past is never *iita.
        assert!(deinflect(&lex, "iita").is_empty());
    }

    #[test]
    fn inflect_examples() {
        let class = ConjugationClass::Godan(GodanRow::U);
        let f = feats(Tense::Past, Aspect::Simple, Voice::Passive);
        assert_eq!(inflect("osou", class, &f).as_deref(), Some("osowareta"));
        let f = feats(Tense::Nonpast, Aspect::Progressive, Voice::Active);
        assert_eq!(inflect("kakeru", ConjugationClass::Ichidan, &f).as_deref(), Some("kaketeiru"));
        let f = SubjectiveFeatures {
            connective: Connective::Sequential,
            ..SubjectiveFeatures::default()
        };
        assert_eq!(inflect("iku", ConjugationClass::IrregularIku, &f).as_deref(), Some("itte"));
        assert_eq!(
            inflect("takai", ConjugationClass::AdjectiveI, &feats(Tense::Nonpast, Aspect::Progressive, Voice::Active)),
            None
        );
    }
}

//! Japanese analysis: hyphen-romanized sentence in, clauses of
//! predicate-argument structure out, with the subjective features
//! (tense, aspect, voice, polarity, clause linkage) held apart from the
//! objective content.

mod morphology;

use std::fmt;

use thiserror::Error;

use crate::lexicon::{
    segment, ArticlePolicy, CompoundAnalysis, EnglishGloss, LexicalEntry, Lexicon, Particle, PartOfSpeech, Sense,
};
use crate::ontology::CategoryHierarchy;
use crate::patterns::{ArgRef, Frame, FrameArg};

pub use morphology::{deinflect, inflect};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AnalysisError {
    #[error("empty sentence")]
    Empty,
    #[error("sentence must end with a period")]
    MissingPeriod,
    #[error("token {position} `{token}`: cannot resolve content word")]
    UnresolvedWord { position: usize, token: String },
    #[error("token {position}: clause has no predicate")]
    NoPredicate { position: usize },
    #[error("token {position}: second topic in one clause")]
    DuplicateTopic { position: usize },
    #[error("token {position}: genitive or determiner with nothing to modify")]
    DanglingModifier { position: usize },
    #[error("token {position}: conjunction `ga` must follow a finite predicate")]
    MisplacedConjunction { position: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Tense {
    #[default]
    Nonpast,
    Past,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Aspect {
    #[default]
    Simple,
    Progressive,
    /// -teiru read as a repeated action, cued by a frequency adverbial.
    Habitual,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Voice {
    #[default]
    Active,
    Passive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Polarity {
    #[default]
    Affirmative,
    Negative,
}

/// How a clause links to the next one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Connective {
    #[default]
    None,
    /// Conjunction `ga` after a finite predicate.
    Contrastive,
    /// te-form.
    Sequential,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct SubjectiveFeatures {
    pub tense: Tense,
    pub aspect: Aspect,
    pub voice: Voice,
    pub polarity: Polarity,
    pub connective: Connective,
}

impl fmt::Display for SubjectiveFeatures {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut tags = vec![match self.tense {
            Tense::Past => "past",
            Tense::Nonpast => "nonpast",
        }];
        match self.aspect {
            Aspect::Simple => {}
            Aspect::Progressive => tags.push("progressive"),
            Aspect::Habitual => tags.push("habitual"),
        }
        if self.voice == Voice::Passive {
            tags.push("passive");
        }
        if self.polarity == Polarity::Negative {
            tags.push("negative");
        }
        match self.connective {
            Connective::None => {}
            Connective::Contrastive => tags.push("contrastive"),
            Connective::Sequential => tags.push("te"),
        }
        f.write_str(&tags.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NounSource {
    Entry(LexicalEntry),
    Compound(Box<CompoundAnalysis>),
    /// Inserted by ellipsis fill rather than read from the input.
    Supplied(EnglishGloss),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NounPhrase {
    /// Content word as written, e.g. `kawa-zoi`.
    pub surface: String,
    /// Lexicon lemma used for word-locked matching.
    pub lemma: String,
    pub source: NounSource,
    pub senses: Vec<Sense>,
    /// Genitive (`-no`) modifiers, in surface order.
    pub modifiers: Vec<NounPhrase>,
    pub determiner: Option<LexicalEntry>,
}

impl NounPhrase {
    pub fn from_entry(entry: &LexicalEntry) -> Self {
        NounPhrase {
            surface: entry.surface.clone(),
            lemma: entry.surface.clone(),
            senses: entry.senses.clone(),
            source: NounSource::Entry(entry.clone()),
            modifiers: Vec::new(),
            determiner: None,
        }
    }

    pub fn from_compound(c: CompoundAnalysis) -> Self {
        NounPhrase {
            surface: c.surface.clone(),
            lemma: c.surface.clone(),
            senses: c.senses(),
            source: NounSource::Compound(Box::new(c)),
            modifiers: Vec::new(),
            determiner: None,
        }
    }

    pub fn supplied(gloss: EnglishGloss) -> Self {
        NounPhrase {
            surface: String::new(),
            lemma: gloss.lemma.clone(),
            senses: Vec::new(),
            source: NounSource::Supplied(gloss),
            modifiers: Vec::new(),
            determiner: None,
        }
    }

    pub fn relational_preposition(&self) -> Option<&str> {
        match &self.source {
            NounSource::Compound(c) => c.preposition(),
            _ => None,
        }
    }

    pub fn is_supplied(&self) -> bool {
        matches!(self.source, NounSource::Supplied(_))
    }

    /// Japanese rendering: modifiers, determiner, content word.
    pub fn japanese(&self) -> String {
        let mut words: Vec<String> = Vec::new();
        if let Some(d) = &self.determiner {
            words.push(d.surface.clone());
        }
        for m in &self.modifiers {
            words.push(format!("{}-no", m.japanese()));
        }
        words.push(self.surface.clone());
        words.join(" ")
    }
}

/// English realization fixed by a rewrite rule for a synthesized adjunct.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealizationHint {
    pub preposition: String,
    pub article: ArticlePolicy,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Argument {
    /// `None` for bare adverbial nouns such as `mainichi`.
    pub particle: Option<Particle>,
    pub phrase: NounPhrase,
    /// 1-based token position; orders arguments within a clause.
    pub position: usize,
    pub hint: Option<RealizationHint>,
}

impl Argument {
    /// Synthesized or relational phrases realize on their own and are
    /// never offered to pattern slots.
    pub fn is_adjunct(&self) -> bool {
        self.hint.is_some() || self.phrase.relational_preposition().is_some()
    }

    pub fn japanese(&self) -> String {
        match self.particle {
            Some(p) => format!("{}-{}", self.phrase.japanese(), p),
            None => self.phrase.japanese(),
        }
    }
}

/// One clause: predicate lemma, particle-marked arguments in surface order,
/// the wa-topic, and the separated subjective features.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pas {
    pub predicate: String,
    pub predicate_position: usize,
    pub arguments: Vec<Argument>,
    pub topic: Option<Argument>,
    pub subjective: SubjectiveFeatures,
}

impl Pas {
    pub fn argument(&self, r: ArgRef) -> Option<&Argument> {
        match r {
            ArgRef::Topic => self.topic.as_ref(),
            ArgRef::Argument(i) => self.arguments.get(i),
            ArgRef::Modifier(_) | ArgRef::Supplied => None,
        }
    }

    /// Matching view of the clause.
    ///
    /// The topic stands in for `ga` when no ga-argument is present. Passive
    /// clauses are matched against active patterns: the ga/topic phrase
    /// plays the object role and the ni-phrase the agent.
    pub fn frame(&self) -> Frame<'_> {
        let passive = self.subjective.voice == Voice::Passive;
        let role = |p: Particle| match (passive, p) {
            (true, Particle::Ga) => Particle::O,
            (true, Particle::Ni) => Particle::Ga,
            _ => p,
        };
        let mut args: Vec<FrameArg<'_>> = self
            .arguments
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_adjunct())
            .filter_map(|(i, a)| {
                a.particle.map(|p| FrameArg {
                    arg: ArgRef::Argument(i),
                    particle: role(p),
                    lemma: &a.phrase.lemma,
                    senses: &a.phrase.senses,
                })
            })
            .collect();
        if let Some(t) = &self.topic {
            let has_ga = self.arguments.iter().any(|a| a.particle == Some(Particle::Ga));
            if !has_ga {
                args.push(FrameArg {
                    arg: ArgRef::Topic,
                    particle: role(Particle::Ga),
                    lemma: &t.phrase.lemma,
                    senses: &t.phrase.senses,
                });
            }
        }
        Frame {
            predicate: &self.predicate,
            args,
            subject_elidable: true,
        }
    }
}

/// Matching view of a noun phrase's genitive modifiers, keyed on its head.
pub fn noun_frame(np: &NounPhrase) -> Frame<'_> {
    Frame {
        predicate: &np.lemma,
        args: np
            .modifiers
            .iter()
            .enumerate()
            .map(|(i, m)| FrameArg {
                arg: ArgRef::Modifier(i),
                particle: Particle::No,
                lemma: &m.lemma,
                senses: &m.senses,
            })
            .collect(),
        subject_elidable: false,
    }
}

/// Looks up a content word as a noun, falling back to compound analysis.
pub fn resolve_noun(lex: &Lexicon, ont: &CategoryHierarchy, content: &str) -> Option<NounPhrase> {
    if let Some(e) = lex.find(content, PartOfSpeech::is_nominal) {
        return Some(NounPhrase::from_entry(e));
    }
    lex.analyze_compound(ont, content).map(NounPhrase::from_compound)
}

#[derive(Default)]
struct ClauseBuilder {
    arguments: Vec<Argument>,
    topic: Option<Argument>,
    modifiers: Vec<NounPhrase>,
    determiner: Option<(LexicalEntry, usize)>,
    first_position: Option<usize>,
}

impl ClauseBuilder {
    fn attach(&mut self, mut np: NounPhrase) -> NounPhrase {
        np.modifiers = std::mem::take(&mut self.modifiers);
        np.determiner = self.determiner.take().map(|(d, _)| d);
        np
    }

    fn dangling(&self) -> bool {
        !self.modifiers.is_empty() || self.determiner.is_some()
    }

    fn is_empty(&self) -> bool {
        self.arguments.is_empty() && self.topic.is_none() && !self.dangling()
    }
}

/// Splits a sentence into clauses.
///
/// Clauses end at each predicate; a te-form links to the next clause and a
/// following `ga,` marks contrast. Within a te-linked chain the topic is
/// shared and te-clauses take the tense of the chain's final predicate.
pub fn parse_sentence(lex: &Lexicon, ont: &CategoryHierarchy, sentence: &str) -> Result<Vec<Pas>, AnalysisError> {
    let body = sentence.trim();
    if body.is_empty() {
        return Err(AnalysisError::Empty);
    }
    let body = body.strip_suffix('.').ok_or(AnalysisError::MissingPeriod)?;
    let tokens: Vec<&str> = body.split_whitespace().collect();
    if tokens.is_empty() {
        return Err(AnalysisError::Empty);
    }

    let frequency = ont.id("frequency").ok();
    let mut clauses: Vec<Pas> = Vec::new();
    let mut cur = ClauseBuilder::default();
    let mut last_was_predicate = false;

    for (i, raw) in tokens.iter().enumerate() {
        let position = i + 1;
        let token = raw.trim_end_matches(',');
        cur.first_position.get_or_insert(position);

        if token == "ga" && cur.is_empty() {
            match clauses.last_mut() {
                Some(c) if last_was_predicate && c.subjective.connective == Connective::None => {
                    c.subjective.connective = Connective::Contrastive;
                    last_was_predicate = false;
                    cur.first_position = None;
                    continue;
                }
                _ => return Err(AnalysisError::MisplacedConjunction { position }),
            }
        }
        last_was_predicate = false;

        let seg = segment(token);
        let unresolved = || AnalysisError::UnresolvedWord {
            position,
            token: raw.to_string(),
        };

        if let Some(&case) = seg.particles.last() {
            let np = resolve_noun(lex, ont, &seg.content).ok_or_else(unresolved)?;
            let np = cur.attach(np);
            let arg = Argument {
                particle: Some(case),
                phrase: np,
                position,
                hint: None,
            };
            match case {
                Particle::No => cur.modifiers.push(arg.phrase),
                Particle::Wa => {
                    if cur.topic.is_some() {
                        return Err(AnalysisError::DuplicateTopic { position });
                    }
                    cur.topic = Some(arg);
                }
                _ => cur.arguments.push(arg),
            }
            continue;
        }

        let content = seg.content.as_str();
        if let Some(d) = lex.find(content, |p| p == PartOfSpeech::Determiner) {
            cur.determiner = Some((d.clone(), position));
            continue;
        }
        if let Some(adv) = lex.find(content, |p| p == PartOfSpeech::Adverb) {
            let np = cur.attach(NounPhrase::from_entry(adv));
            cur.arguments.push(Argument {
                particle: None,
                phrase: np,
                position,
                hint: None,
            });
            continue;
        }
        if let Some((lemma, mut subjective)) = deinflect(lex, content).into_iter().next() {
            if cur.dangling() {
                return Err(AnalysisError::DanglingModifier { position });
            }
            let done = std::mem::take(&mut cur);
            let habitual = subjective.aspect == Aspect::Progressive
                && frequency.is_some_and(|freq| {
                    done.arguments.iter().any(|a| {
                        a.particle.is_none() && a.phrase.senses.iter().any(|s| {
                            s.categories.iter().any(|&c| ont.subsumes_id(freq, c))
                        })
                    })
                });
            if habitual {
                subjective.aspect = Aspect::Habitual;
            }
            clauses.push(Pas {
                predicate: lemma,
                predicate_position: position,
                arguments: done.arguments,
                topic: done.topic,
                subjective,
            });
            last_was_predicate = true;
            continue;
        }
        let np = resolve_noun(lex, ont, content).ok_or_else(unresolved)?;
        let np = cur.attach(np);
        cur.arguments.push(Argument {
            particle: None,
            phrase: np,
            position,
            hint: None,
        });
    }

    if cur.dangling() {
        let position = cur.determiner.as_ref().map(|(_, p)| *p).unwrap_or(tokens.len());
        return Err(AnalysisError::DanglingModifier { position });
    }
    if !cur.is_empty() || clauses.is_empty() {
        return Err(AnalysisError::NoPredicate {
            position: cur.first_position.unwrap_or(tokens.len()),
        });
    }
    if clauses.last().is_some_and(|c| c.subjective.connective != Connective::None) {
        return Err(AnalysisError::NoPredicate { position: tokens.len() });
    }

    share_chain_context(&mut clauses);
    Ok(clauses)
}

/// Ranges of te-linked clause chains.
pub fn chains(clauses: &[Pas]) -> Vec<std::ops::Range<usize>> {
    let mut out = Vec::new();
    let mut start = 0;
    for (i, c) in clauses.iter().enumerate() {
        if c.subjective.connective != Connective::Sequential {
            out.push(start..i + 1);
            start = i + 1;
        }
    }
    if start < clauses.len() {
        out.push(start..clauses.len());
    }
    out
}

fn share_chain_context(clauses: &mut [Pas]) {
    for range in chains(clauses) {
        let chain = &mut clauses[range];
        let topic = chain.iter().find_map(|c| c.topic.clone());
        let tense = chain.last().map(|c| c.subjective.tense).unwrap_or_default();
        for c in chain.iter_mut() {
            if c.topic.is_none() {
                c.topic = topic.clone();
            }
            if c.subjective.connective == Connective::Sequential {
                c.subjective.tense = tense;
            }
        }
    }
}

/// Renders clauses back to hyphen-romanized Japanese. Topics shared along
/// a te-chain are written once; supplied arguments are not written.
pub fn render_japanese(lex: &Lexicon, clauses: &[Pas]) -> String {
    let mut words: Vec<String> = Vec::new();
    let mut prev_topic: Option<&NounPhrase> = None;
    for c in clauses {
        if let Some(t) = &c.topic {
            if prev_topic != Some(&t.phrase) {
                words.push(t.japanese());
            }
        }
        let mut args: Vec<&Argument> = c.arguments.iter().filter(|a| !a.phrase.is_supplied()).collect();
        args.sort_by_key(|a| a.position);
        words.extend(args.iter().map(|a| a.japanese()));
        let class = lex
            .find(&c.predicate, PartOfSpeech::is_predicate)
            .and_then(|e| e.conjugation);
        let form = class
            .and_then(|cl| inflect(&c.predicate, cl, &c.subjective))
            .unwrap_or_else(|| c.predicate.clone());
        words.push(form);
        match c.subjective.connective {
            Connective::Contrastive => words.push("ga,".into()),
            Connective::Sequential => {}
            Connective::None => {}
        }
        prev_topic = if c.subjective.connective == Connective::Sequential {
            c.topic.as_ref().map(|t| &t.phrase)
        } else {
            None
        };
    }
    format!("{}.", words.join(" "))
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Fx {
        ont: CategoryHierarchy,
        lex: Lexicon,
    }

    fn fx() -> Fx {
        let ont = CategoryHierarchy::parse(include_str!("../../data/dict/categories.tsv")).unwrap();
        let lex = Lexicon::parse(include_str!("../../data/dict/lexicon.tsv"), &ont).unwrap();
        Fx { ont, lex }
    }

    fn parse(fx: &Fx, s: &str) -> Vec<Pas> {
        parse_sentence(&fx.lex, &fx.ont, s).unwrap()
    }

    fn args(c: &Pas) -> Vec<(Option<Particle>, String)> {
        c.arguments
            .iter()
            .map(|a| (a.particle, a.phrase.lemma.clone()))
            .collect()
    }

    #[test]
    fn simple_kakeru_clause() {
        let fx = fx();
        let cs = parse(&fx, "kanojo-wa hana-ni mizu-o kaketa.");
        assert_eq!(cs.len(), 1);
        let c = &cs[0];
        assert_eq!(c.predicate, "kakeru");
        assert_eq!(c.topic.as_ref().unwrap().phrase.lemma, "kanojo");
        assert_eq!(
            args(c),
            vec![
                (Some(Particle::Ni), "hana".to_string()),
                (Some(Particle::O), "mizu".to_string())
            ]
        );
        assert_eq!(c.subjective.tense, Tense::Past);
    }

    #[test]
    fn bus_and_river_splits_into_five_clauses() {
        let fx = fx();
        let cs = parse(
            &fx,
            "kare-wa basu-ni notte gakkō-e itta ga, watashi-wa kawa-ni sotte aruite gakkō-e itta.",
        );
        let preds: Vec<&str> = cs.iter().map(|c| c.predicate.as_str()).collect();
        assert_eq!(preds, ["noru", "iku", "sou", "aruku", "iku"]);
        assert_eq!(cs[0].subjective.connective, Connective::Sequential);
        assert_eq!(cs[1].subjective.connective, Connective::Contrastive);
        assert_eq!(cs[1].subjective.tense, Tense::Past);
        // te-clauses inherit the chain's tense and topic
        assert_eq!(cs[0].subjective.tense, Tense::Past);
        assert_eq!(cs[1].topic.as_ref().unwrap().phrase.lemma, "kare");
        assert_eq!(cs[3].topic.as_ref().unwrap().phrase.lemma, "watashi");
        assert_eq!(chains(&cs), vec![0..2, 2..5]);
    }

    #[test]
    fn genitive_chain_attaches() {
        let fx = fx();
        let cs = parse(&fx, "ōkami-no mure-ga hitsuji-no mure-o otta.");
        assert_eq!(cs.len(), 1);
        let c = &cs[0];
        assert_eq!(c.predicate, "ou");
        assert_eq!(c.subjective.tense, Tense::Past);
        let ga = &c.arguments[0];
        assert_eq!(ga.particle, Some(Particle::Ga));
        assert_eq!(ga.phrase.lemma, "mure");
        assert_eq!(ga.phrase.modifiers[0].lemma, "ōkami");
        let o = &c.arguments[1];
        assert_eq!(o.phrase.modifiers[0].lemma, "hitsuji");
    }

    #[test]
    fn determiner_compound_and_habitual() {
        let fx = fx();
        let cs = parse(&fx, "ano kissaten-wa modan-jazu-o kaketeiru.");
        let t = cs[0].topic.as_ref().unwrap();
        assert_eq!(t.phrase.determiner.as_ref().unwrap().surface, "ano");
        assert!(matches!(cs[0].arguments[0].phrase.source, NounSource::Compound(_)));
        assert_eq!(cs[0].subjective.aspect, Aspect::Progressive);

        let cs = parse(&fx, "kanojo-wa mainichi rōka-ni zōkin-o kaketeiru.");
        assert_eq!(cs[0].subjective.aspect, Aspect::Habitual);
        assert_eq!(cs[0].arguments[0].particle, None);
    }

    #[test]
    fn subjective_marking_is_separated() {
        let fx = fx();
        for s in [
            "kare-wa isu-ni koshi-o kaketeiru.",
            "ushi-no mure-ga hachi-no mure-ni osowareta.",
        ] {
            for c in parse(&fx, s) {
                assert!(fx.lex.find(&c.predicate, PartOfSpeech::is_predicate).is_some());
            }
        }
    }

    #[test]
    fn errors() {
        let fx = fx();
        let p = |s| parse_sentence(&fx.lex, &fx.ont, s);
        assert_eq!(p(""), Err(AnalysisError::Empty));
        assert_eq!(p("kare-wa itta"), Err(AnalysisError::MissingPeriod));
        assert_eq!(p("kare-wa hon-o."), Err(AnalysisError::NoPredicate { position: 1 }));
        assert!(matches!(
            p("kare-wa blorp-o katta."),
            Err(AnalysisError::UnresolvedWord { position: 2, .. })
        ));
        assert_eq!(
            p("kare-wa kanojo-wa itta."),
            Err(AnalysisError::DuplicateTopic { position: 2 })
        );
        assert_eq!(
            p("ga, kare-wa itta."),
            Err(AnalysisError::MisplacedConjunction { position: 1 })
        );
        assert!(matches!(p("kare-wa hon-no katta."), Err(AnalysisError::DanglingModifier { .. })));
        assert!(matches!(p("kare-wa notte."), Err(AnalysisError::NoPredicate { .. })));
    }

    #[test]
    fn render_round_trips_corpus_sentences() {
        let fx = fx();
        for s in [
            "kanojo-wa hana-ni mizu-o kaketa.",
            "ano kissaten-wa modan-jazu-o kaketeiru.",
            "ushi-no mure-ga hachi-no mure-ni osowareta.",
            "kanojo-wa mainichi rōka-ni zōkin-o kaketeiru.",
            "kare-wa basu-ni notte gakkō-e itta ga, watashi-wa kawa-ni sotte aruite gakkō-e itta.",
        ] {
            assert_eq!(render_japanese(&fx.lex, &parse(&fx, s)), s);
        }
    }

    #[test]
    fn passive_frame_swaps_roles() {
        let fx = fx();
        let cs = parse(&fx, "ushi-no mure-ga hachi-no mure-ni osowareta.");
        let f = cs[0].frame();
        let roles: Vec<(Particle, ArgRef)> = f.args.iter().map(|a| (a.particle, a.arg)).collect();
        assert_eq!(
            roles,
            vec![(Particle::O, ArgRef::Argument(0)), (Particle::Ga, ArgRef::Argument(1))]
        );
    }
}

//! Clause transfer: pick the most specific pattern across the three
//! levels, fill an elided subject from the previous clause, and map the
//! subjective features onto an English verb plan.

use thiserror::Error;

use crate::analyzer::{noun_frame, Argument, Aspect, NounPhrase, NounSource, Pas, Polarity, Tense, Voice};
use crate::analyzer::SubjectiveFeatures;
use crate::generator::{Constituent, EnglishClause, EnglishTense, NounPlan, VerbPlan};
use crate::lexicon::{ArticlePolicy, Countability, EnglishGloss, Particle, PartOfSpeech};
use crate::ontology::CategoryHierarchy;
use crate::patterns::{
    satisfy, ArgRef, Binding, CaseSlotPattern, FrameArg, Level, PatternDictionary, Realization, TemplatePart,
    TransferPattern,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TransferError {
    #[error("no pattern matches predicate `{0}`")]
    NoPattern(String),
}

/// One clause of memory: the last realized subject.
#[derive(Debug, Clone, Default)]
pub struct DiscourseContext {
    last_subject: Option<NounPhrase>,
}

impl DiscourseContext {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn last_subject(&self) -> Option<&NounPhrase> {
        self.last_subject.as_ref()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FillSource {
    /// Subject of the previous clause.
    Context,
    /// Nothing compatible in context; the neutral pronoun.
    Default,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EllipsisFill {
    pub particle: Particle,
    pub source: FillSource,
    /// English head of the supplied phrase.
    pub english: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NounChoice {
    pub head: String,
    pub pattern: String,
    pub level: Level,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransferOutcome {
    pub english: EnglishClause,
    pub pattern: String,
    pub level: Level,
    pub noun_patterns: Vec<NounChoice>,
    pub fill: Option<EllipsisFill>,
}

const DEFAULT_PRONOUN: &str = "it";

pub fn map_subjective(f: &SubjectiveFeatures) -> VerbPlan {
    VerbPlan {
        tense: match f.tense {
            Tense::Past => EnglishTense::Past,
            Tense::Nonpast => EnglishTense::Present,
        },
        progressive: f.aspect == Aspect::Progressive,
        passive: f.voice == Voice::Passive,
        negative: f.polarity == Polarity::Negative,
    }
}

/// Supplies a phrase for an empty subject slot: the previous clause's
/// subject when it satisfies the slot, otherwise the default pronoun.
pub fn fill_ellipsis(
    slot: &CaseSlotPattern,
    ctx: &DiscourseContext,
    ont: &CategoryHierarchy,
) -> (NounPhrase, usize, FillSource) {
    if let Some(prev) = &ctx.last_subject {
        let fa = FrameArg {
            arg: ArgRef::Supplied,
            particle: slot.particle,
            lemma: &prev.lemma,
            senses: &prev.senses,
        };
        if let Some(b) = satisfy(&slot.constraint, &fa, ont) {
            return (prev.clone(), b.sense, FillSource::Context);
        }
    }
    let gloss = EnglishGloss::new(DEFAULT_PRONOUN, Countability::Countable, ArticlePolicy::None);
    (NounPhrase::supplied(gloss), 0, FillSource::Default)
}

fn under(ont: &CategoryHierarchy, np: &NounPhrase, sense: usize, ancestor: &str) -> bool {
    let (Ok(a), Some(s)) = (ont.id(ancestor), np.senses.get(sense)) else {
        return false;
    };
    s.categories.iter().any(|&c| ont.subsumes_id(a, c))
}

struct Builder<'a> {
    pd: &'a PatternDictionary,
    ont: &'a CategoryHierarchy,
    noun_patterns: Vec<NounChoice>,
}

impl Builder<'_> {
    fn noun(&mut self, np: &NounPhrase, sense: usize) -> NounPlan {
        let gloss = match &np.source {
            NounSource::Supplied(g) => g.clone(),
            _ => np.senses.get(sense).or(np.senses.first()).map(|s| s.gloss.clone()).unwrap_or_else(|| {
                EnglishGloss::new(np.lemma.clone(), Countability::Countable, ArticlePolicy::None)
            }),
        };
        let adverb = matches!(&np.source, NounSource::Entry(e) if e.pos == PartOfSpeech::Adverb);
        let mut plan = NounPlan {
            head: gloss.lemma.clone(),
            complement: None,
            countability: gloss.countability,
            article: if adverb { ArticlePolicy::None } else { gloss.article },
            irregular_plural: gloss.irregular_plural.clone(),
            plural: false,
            determiner: np
                .determiner
                .as_ref()
                .and_then(|d| d.senses.first())
                .map(|s| s.gloss.lemma.clone()),
        };
        if np.modifiers.is_empty() {
            return plan;
        }

        let frame = noun_frame(np);
        let matches = self.pd.match_frame(&frame, self.ont);
        let mut bound = vec![false; np.modifiers.len()];
        let mut words: Vec<String> = Vec::new();
        if let Ok(m) = crate::patterns::select_pattern(&matches) {
            let pattern = self.pd.get(m.pattern);
            self.noun_patterns.push(NounChoice {
                head: np.lemma.clone(),
                pattern: m.id.clone(),
                level: m.level,
            });
            plan.head = pattern.english.head.clone();
            plan.irregular_plural = None;
            for part in &pattern.english.parts {
                match part {
                    TemplatePart::Word(w) => words.push(w.clone()),
                    TemplatePart::Slot(p) => {
                        let Some((slot, Some(b))) = slot_binding(pattern, &m.bindings, *p) else {
                            continue;
                        };
                        let ArgRef::Modifier(i) = b.arg else { continue };
                        bound[i] = true;
                        let mut mp = self.noun(&np.modifiers[i], b.sense);
                        if slot.realization == Realization::Plural && mp.countability == Countability::Countable {
                            mp.plural = true;
                            mp.article = ArticlePolicy::None;
                        }
                        let text = mp.render(crate::generator::Case::Objective);
                        match &slot.realization {
                            Realization::Prep(prep) => words.push(format!("{prep} {text}")),
                            _ => words.push(text),
                        }
                    }
                }
            }
            if words.last().is_some_and(|w| w == "of") {
                words.pop();
            }
        }
        for (i, m) in np.modifiers.iter().enumerate() {
            if !bound[i] {
                let mp = self.noun(m, 0);
                words.push(format!("of {}", mp.render(crate::generator::Case::Objective)));
            }
        }
        if !words.is_empty() {
            plan.complement = Some(words.join(" "));
        }
        plan
    }

    fn phrase(&mut self, np: &NounPhrase, sense: usize, preposition: Option<&str>) -> Constituent {
        let preposition = preposition
            .filter(|_| !under(self.ont, np, sense, "deictic-place"))
            .map(str::to_string);
        Constituent::Phrase {
            preposition,
            noun: self.noun(np, sense),
        }
    }

    fn extra(&mut self, a: &Argument) -> Constituent {
        if let Some(h) = &a.hint {
            let mut noun = self.noun(&a.phrase, 0);
            noun.article = h.article;
            return Constituent::Phrase {
                preposition: Some(h.preposition.clone()),
                noun,
            };
        }
        let prep = match (a.phrase.relational_preposition(), a.particle) {
            (Some(p), _) => Some(p),
            (None, None) => None,
            (None, Some(p)) => Some(default_preposition(p)),
        };
        self.phrase(&a.phrase, 0, prep)
    }
}

/// Preposition for an argument no pattern slot accounted for.
pub fn default_preposition(p: Particle) -> &'static str {
    match p {
        Particle::Ni | Particle::E => "to",
        Particle::De | Particle::To => "with",
        Particle::Kara => "from",
        Particle::Made => "until",
        Particle::Wa => "as for",
        Particle::Ga | Particle::O | Particle::No => "of",
    }
}

fn slot_binding<'p>(
    pattern: &'p TransferPattern,
    bindings: &[Option<Binding>],
    p: Particle,
) -> Option<(&'p CaseSlotPattern, Option<Binding>)> {
    let i = pattern.slots.iter().position(|s| s.particle == p)?;
    Some((&pattern.slots[i], bindings[i]))
}

/// Transfers one clause, reading and updating the discourse context.
pub fn transfer_clause(
    pd: &PatternDictionary,
    ont: &CategoryHierarchy,
    clause: &Pas,
    ctx: &mut DiscourseContext,
) -> Result<TransferOutcome, TransferError> {
    let frame = clause.frame();
    let matches = pd.match_frame(&frame, ont);
    let winner = crate::patterns::select_pattern(&matches)
        .map_err(|_| TransferError::NoPattern(clause.predicate.clone()))?;
    let pattern = pd.get(winner.pattern);
    let passive = clause.subjective.voice == Voice::Passive;
    let mut b = Builder {
        pd,
        ont,
        noun_patterns: Vec::new(),
    };

    let subject_ix = if passive {
        pattern.slots.iter().position(|s| s.realization == Realization::Object)
    } else {
        pattern.subject_slot()
    };
    let agent_ix = if passive { pattern.subject_slot() } else { None };

    let mut fill = None;
    let mut next_context = None;
    let subject = match subject_ix {
        Some(i) => match winner.bindings[i] {
            Some(bd) => {
                let np = clause.argument(bd.arg).map(|a| &a.phrase).expect("bound argument exists");
                next_context = Some(np.clone());
                b.noun(np, bd.sense)
            }
            None => {
                let slot = &pattern.slots[i];
                let (np, sense, source) = fill_ellipsis(slot, ctx, ont);
                let plan = b.noun(&np, sense);
                fill = Some(EllipsisFill {
                    particle: slot.particle,
                    source,
                    english: plan.head.clone(),
                });
                if source == FillSource::Context {
                    next_context = Some(np);
                }
                plan
            }
        },
        None => NounPlan::pronoun(DEFAULT_PRONOUN),
    };

    let mut complements = Vec::new();
    for part in &pattern.english.parts {
        match part {
            TemplatePart::Word(w) => complements.push(Constituent::Word(w.clone())),
            TemplatePart::Slot(p) => {
                let i = pattern.slots.iter().position(|s| s.particle == *p).expect("validated template");
                if Some(i) == subject_ix {
                    continue;
                }
                let Some(bd) = winner.bindings[i] else { continue };
                let Some(arg) = clause.argument(bd.arg) else { continue };
                let slot = &pattern.slots[i];
                let prep = match &slot.realization {
                    Realization::Prep(x) => Some(x.as_str()),
                    _ => None,
                };
                let mut c = b.phrase(&arg.phrase, bd.sense, prep);
                if slot.realization == Realization::Plural {
                    if let Constituent::Phrase { noun, .. } = &mut c {
                        noun.plural = true;
                        noun.article = ArticlePolicy::None;
                    }
                }
                complements.push(c);
            }
        }
    }
    if let Some(bd) = agent_ix.and_then(|i| winner.bindings[i]) {
        if let Some(arg) = clause.argument(bd.arg) {
            complements.push(b.phrase(&arg.phrase, bd.sense, Some("by")));
        }
    }

    let mut extras: Vec<&Argument> = clause
        .arguments
        .iter()
        .enumerate()
        .filter(|(i, a)| !winner.is_bound(ArgRef::Argument(*i)) && !a.phrase.is_supplied())
        .map(|(_, a)| a)
        .collect();
    if let Some(t) = &clause.topic {
        if !winner.is_bound(ArgRef::Topic) && next_context.as_ref() != Some(&t.phrase) {
            extras.push(t);
        }
    }
    // Japanese adjuncts stack outward from the verb; English mirrors them.
    extras.sort_by_key(|a| std::cmp::Reverse(a.position));
    let adjuncts = extras.into_iter().map(|a| b.extra(a)).collect();

    ctx.last_subject = next_context;
    Ok(TransferOutcome {
        english: EnglishClause {
            subject,
            verb: pattern.english.head.clone(),
            plan: map_subjective(&clause.subjective),
            complements,
            adjuncts,
            connective: clause.subjective.connective,
        },
        pattern: winner.id.clone(),
        level: winner.level,
        noun_patterns: b.noun_patterns,
        fill,
    })
}

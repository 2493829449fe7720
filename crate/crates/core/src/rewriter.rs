//! Japanese-to-Japanese rewriting: a te-clause whose arguments pass a
//! rule's category guards is deleted and survives as an adjunct on the
//! following clause ("basu-ni notte ... itta" becomes "basu-de ... itta").

use std::collections::HashSet;

use thiserror::Error;

use crate::analyzer::{resolve_noun, Argument, Connective, NounPhrase, Pas, RealizationHint};
use crate::lexicon::{ArticlePolicy, Lexicon, Particle, PartOfSpeech};
use crate::ontology::CategoryHierarchy;
use crate::patterns::{parse_constraint, satisfy, ArgRef, FrameArg, PatternError, SlotConstraint};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RewriteError {
    #[error("rewrites line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("rewrite rule `{0}` defined twice")]
    DuplicateId(String),
    #[error("rewrite rule `{rule}`: trigger `{trigger}` is not a verb in the lexicon")]
    UnknownTrigger { rule: String, trigger: String },
    #[error("rewrite rule `{rule}`: adjunct refers to unguarded slot `{particle}`")]
    UnboundReference { rule: String, particle: Particle },
    #[error("rewrite rule `{rule}`: cannot resolve `{word}`")]
    UnknownWord { rule: String, word: String },
    #[error(transparent)]
    Constraint(#[from] PatternError),
}

/// Noun of the synthesized adjunct.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AdjunctNoun {
    /// `{ni}`: the phrase bound to that guard.
    Slot(Particle),
    /// `{ni}-zoi`: the bound phrase's word plus a suffix.
    SlotWithSuffix(Particle, String),
    /// A fixed lexicon noun.
    Word(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjunctTemplate {
    pub particle: Particle,
    pub noun: AdjunctNoun,
    pub hint: RealizationHint,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteRule {
    pub id: String,
    pub trigger: String,
    pub guards: Vec<(Particle, SlotConstraint)>,
    pub adjunct: AdjunctTemplate,
}

#[derive(Debug, Clone, Default)]
pub struct RewriteRules {
    rules: Vec<RewriteRule>,
}

impl RewriteRules {
    pub fn parse(source: &str, lex: &Lexicon, ont: &CategoryHierarchy) -> Result<Self, RewriteError> {
        let mut rules: Vec<RewriteRule> = Vec::new();
        for (n, raw) in source.lines().enumerate() {
            let line = raw.trim_end_matches('\r');
            if line.trim().is_empty() || line.trim_start().starts_with('#') {
                continue;
            }
            let rule = parse_rule(line, n + 1, lex, ont)?;
            if rules.iter().any(|r| r.id == rule.id) {
                return Err(RewriteError::DuplicateId(rule.id));
            }
            rules.push(rule);
        }
        Ok(RewriteRules { rules })
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }
}

fn parse_rule(line: &str, n: usize, lex: &Lexicon, ont: &CategoryHierarchy) -> Result<RewriteRule, RewriteError> {
    let syntax = |message: String| RewriteError::Parse { line: n, message };
    let fields: Vec<&str> = line.split('\t').map(str::trim).collect();
    if fields.len() != 4 {
        return Err(syntax(format!("expected 4 tab-separated fields, found {}", fields.len())));
    }
    let id = fields[0].to_string();
    let trigger = fields[1].to_string();
    if lex.find(&trigger, |p| p == PartOfSpeech::Verb).is_none() {
        return Err(RewriteError::UnknownTrigger { rule: id, trigger });
    }

    let mut guards: Vec<(Particle, SlotConstraint)> = Vec::new();
    if fields[2] != "-" {
        for g in fields[2].split(';').map(str::trim).filter(|g| !g.is_empty()) {
            let (p, c) = g.split_once(':').ok_or_else(|| syntax(format!("malformed guard `{g}`")))?;
            let particle = Particle::parse(p).ok_or_else(|| syntax(format!("unknown particle `{p}`")))?;
            if guards.iter().any(|(q, _)| *q == particle) {
                return Err(syntax(format!("particle `{particle}` guarded twice")));
            }
            guards.push((particle, parse_constraint(&id, c, lex, ont)?));
        }
    }

    let parts: Vec<&str> = fields[3].split(':').collect();
    let [p, noun, prep, article] = parts[..] else {
        return Err(syntax(format!("malformed adjunct `{}`", fields[3])));
    };
    let particle = Particle::parse(p).ok_or_else(|| syntax(format!("unknown particle `{p}`")))?;
    let article: ArticlePolicy = article.parse().map_err(syntax)?;
    if prep.trim().is_empty() {
        return Err(syntax("empty preposition".into()));
    }
    let guarded = |q: Particle| {
        if guards.iter().any(|(g, _)| *g == q) {
            Ok(q)
        } else {
            Err(RewriteError::UnboundReference {
                rule: id.clone(),
                particle: q,
            })
        }
    };
    let slot_ref = |s: &str| -> Result<Particle, RewriteError> {
        let name = &s[1..s.len() - 1];
        Particle::parse(name).ok_or_else(|| syntax(format!("unknown particle `{name}`")))
    };
    let noun = if let Some(close) = noun.find('}').filter(|_| noun.starts_with('{')) {
        let slot = guarded(slot_ref(&noun[..=close])?)?;
        match noun[close + 1..].strip_prefix('-') {
            None if close + 1 == noun.len() => AdjunctNoun::Slot(slot),
            Some(suffix) if lex.find(suffix, |p| p == PartOfSpeech::Suffix).is_some() => {
                AdjunctNoun::SlotWithSuffix(slot, suffix.to_string())
            }
            _ => {
                return Err(RewriteError::UnknownWord {
                    rule: id,
                    word: noun.to_string(),
                })
            }
        }
    } else {
        if resolve_noun(lex, ont, noun).is_none() {
            return Err(RewriteError::UnknownWord {
                rule: id,
                word: noun.to_string(),
            });
        }
        AdjunctNoun::Word(noun.to_string())
    };

    Ok(RewriteRule {
        id,
        trigger,
        guards,
        adjunct: AdjunctTemplate {
            particle,
            noun,
            hint: RealizationHint {
                preposition: prep.trim().to_string(),
                article,
            },
        },
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteStep {
    /// Position of the consumed clause in the list at the time it fired.
    pub index: usize,
    pub rule: String,
    pub consumed: Pas,
    pub adjunct: Argument,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RewriteTrace {
    pub steps: Vec<RewriteStep>,
}

impl RewriteTrace {
    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Re-applies the recorded steps to the original clause list.
    pub fn replay(&self, clauses: &[Pas]) -> Vec<Pas> {
        let mut out = clauses.to_vec();
        for s in &self.steps {
            fold_into_next(&mut out, s.index, s.adjunct.clone());
        }
        out
    }
}

/// Removes clause `i` and moves its synthesized adjuncts, plus `adjunct`,
/// onto the clause that follows it.
fn fold_into_next(clauses: &mut Vec<Pas>, i: usize, adjunct: Argument) {
    let consumed = clauses.remove(i);
    let next = &mut clauses[i];
    next.arguments
        .extend(consumed.arguments.into_iter().filter(|a| a.hint.is_some()));
    next.arguments.push(adjunct);
    next.arguments.sort_by_key(|a| a.position);
}

/// Single left-to-right pass. Each te-clause with a successor is tested
/// against the rules in file order; the first whose guards bind every
/// argument of the clause fires.
pub fn apply_rewrites(
    rules: &RewriteRules,
    clauses: &[Pas],
    lex: &Lexicon,
    ont: &CategoryHierarchy,
) -> (Vec<Pas>, RewriteTrace) {
    let mut out = clauses.to_vec();
    let mut trace = RewriteTrace::default();
    let mut i = 0;
    while i + 1 < out.len() {
        let fired = (out[i].subjective.connective == Connective::Sequential)
            .then(|| {
                rules
                    .rules
                    .iter()
                    .find_map(|r| fire(r, &out[i], lex, ont).map(|adj| (r, adj)))
            })
            .flatten();
        match fired {
            Some((rule, adjunct)) => {
                trace.steps.push(RewriteStep {
                    index: i,
                    rule: rule.id.clone(),
                    consumed: out[i].clone(),
                    adjunct: adjunct.clone(),
                });
                fold_into_next(&mut out, i, adjunct);
            }
            None => i += 1,
        }
    }
    (out, trace)
}

fn fire(rule: &RewriteRule, clause: &Pas, lex: &Lexicon, ont: &CategoryHierarchy) -> Option<Argument> {
    if clause.predicate != rule.trigger {
        return None;
    }
    let own: Vec<(usize, &Argument)> = clause
        .arguments
        .iter()
        .enumerate()
        .filter(|(_, a)| a.hint.is_none())
        .collect();
    if own.len() != rule.guards.len() {
        return None;
    }
    let mut used = HashSet::new();
    let mut bound: Vec<(Particle, &NounPhrase)> = Vec::new();
    for (particle, constraint) in &rule.guards {
        let (i, a) = own.iter().find(|(i, a)| a.particle == Some(*particle) && !used.contains(i))?;
        let fa = FrameArg {
            arg: ArgRef::Argument(*i),
            particle: *particle,
            lemma: &a.phrase.lemma,
            senses: &a.phrase.senses,
        };
        satisfy(constraint, &fa, ont)?;
        used.insert(*i);
        bound.push((*particle, &a.phrase));
    }
    let slot = |p: Particle| bound.iter().find(|(q, _)| *q == p).map(|(_, np)| *np);
    let phrase = match &rule.adjunct.noun {
        AdjunctNoun::Slot(p) => slot(*p)?.clone(),
        AdjunctNoun::SlotWithSuffix(p, suffix) => {
            let base = slot(*p)?;
            let mut np = resolve_noun(lex, ont, &format!("{}-{suffix}", base.lemma))?;
            np.modifiers = base.modifiers.clone();
            np.determiner = base.determiner.clone();
            np
        }
        AdjunctNoun::Word(w) => resolve_noun(lex, ont, w)?,
    };
    Some(Argument {
        particle: Some(rule.adjunct.particle),
        phrase,
        position: clause.predicate_position,
        hint: Some(rule.adjunct.hint.clone()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analyzer::{parse_sentence, render_japanese};
    use crate::lexicon::Sense;

    const FIG3: &str = "kare-wa basu-ni notte gakkō-e itta ga, watashi-wa kawa-ni sotte aruite gakkō-e itta.";

    struct Fx {
        ont: CategoryHierarchy,
        lex: Lexicon,
        rules: RewriteRules,
    }

    fn fx() -> Fx {
        let ont = CategoryHierarchy::parse(include_str!("../data/dict/categories.tsv")).unwrap();
        let lex = Lexicon::parse(include_str!("../data/dict/lexicon.tsv"), &ont).unwrap();
        let rules = RewriteRules::parse(include_str!("../data/dict/rewrites.tsv"), &lex, &ont).unwrap();
        Fx { ont, lex, rules }
    }

    fn run(fx: &Fx, s: &str) -> (Vec<Pas>, Vec<Pas>, RewriteTrace) {
        let clauses = parse_sentence(&fx.lex, &fx.ont, s).unwrap();
        let (out, trace) = apply_rewrites(&fx.rules, &clauses, &fx.lex, &fx.ont);
        (clauses, out, trace)
    }

    #[test]
    fn shipped_rules_load() {
        let fx = fx();
        let ids: Vec<&str> = fx.rules.rules().iter().map(|r| r.id.as_str()).collect();
        assert_eq!(ids, ["ride-vehicle", "follow-river", "walk-on-foot"]);
    }

    #[test]
    fn bus_and_river_collapses_to_two_clauses() {
        let fx = fx();
        let (before, out, trace) = run(&fx, FIG3);
        assert_eq!(before.len(), 5);
        assert_eq!(out.len(), 2);
        let fired: Vec<&str> = trace.steps.iter().map(|s| s.rule.as_str()).collect();
        assert_eq!(fired, ["ride-vehicle", "follow-river", "walk-on-foot"]);
        assert_eq!(
            render_japanese(&fx.lex, &out),
            "kare-wa basu-de gakkō-e itta ga, watashi-wa kawa-zoi-ni toho-de gakkō-e itta."
        );
        let hints: Vec<&str> = out[1]
            .arguments
            .iter()
            .filter_map(|a| a.hint.as_ref().map(|h| h.preposition.as_str()))
            .collect();
        assert_eq!(hints, ["along", "on"]);
    }

    #[test]
    fn surviving_subjective_features_unchanged() {
        let fx = fx();
        let (before, out, _) = run(&fx, FIG3);
        assert_eq!(out[0].subjective, before[1].subjective);
        assert_eq!(out[1].subjective, before[4].subjective);
    }

    #[test]
    fn replay_reproduces_output() {
        let fx = fx();
        let (before, out, trace) = run(&fx, FIG3);
        assert_eq!(trace.replay(&before), out);
    }

    #[test]
    fn idempotent() {
        let fx = fx();
        for s in [FIG3, "kanojo-wa hana-ni mizu-o kaketa.", "kare-wa basu-ni notte gakkō-e itta."] {
            let (_, once, _) = run(&fx, s);
            let (twice, trace) = apply_rewrites(&fx.rules, &once, &fx.lex, &fx.ont);
            assert_eq!(twice, once);
            assert!(trace.is_empty());
        }
    }

    #[test]
    fn no_te_clause_is_untouched() {
        let fx = fx();
        let (before, out, trace) = run(&fx, "kanojo-wa hana-ni mizu-o kaketa.");
        assert_eq!(before, out);
        assert!(trace.is_empty());
    }

    #[test]
    fn guard_violation_blocks_firing() {
        let mut fx = fx();
        let animal = fx.ont.id("animal").unwrap();
        let basu = fx.lex.entry_mut("basu", PartOfSpeech::CommonNoun).unwrap();
        for Sense { categories, .. } in basu.senses.iter_mut() {
            *categories = vec![animal];
        }
        let (_, out, trace) = run(&fx, "kare-wa basu-ni notte gakkō-e itta.");
        assert_eq!(out.len(), 2);
        assert!(trace.is_empty());
    }

    #[test]
    fn extra_argument_blocks_firing() {
        let fx = fx();
        let (_, out, trace) = run(&fx, "kare-wa hon-o basu-ni notte gakkō-e itta.");
        assert_eq!(out.len(), 2);
        assert!(trace.is_empty());
    }

    #[test]
    fn parse_errors() {
        let fx = fx();
        let p = |s: &str| RewriteRules::parse(s, &fx.lex, &fx.ont).unwrap_err();
        assert!(matches!(p("a\tnoru\tni:@vehicle"), RewriteError::Parse { line: 1, .. }));
        assert!(matches!(p("a\tbasu\t-\tde:toho:on:none"), RewriteError::UnknownTrigger { .. }));
        assert!(matches!(
            p("a\tnoru\t-\tde:{ni}:by:none"),
            RewriteError::UnboundReference { particle: Particle::Ni, .. }
        ));
        assert!(matches!(p("a\tnoru\t-\tde:blorp:by:none"), RewriteError::UnknownWord { .. }));
        assert!(matches!(
            p("a\tnoru\tni:@vehicle\tde:{ni}-blorp:by:none"),
            RewriteError::UnknownWord { .. }
        ));
        assert!(matches!(
            p("a\tnoru\tni:@nonesuch\tde:{ni}:by:none"),
            RewriteError::Constraint(PatternError::UnknownCategory { .. })
        ));
        assert!(matches!(
            p("a\taruku\t-\tde:toho:on:none\na\taruku\t-\tde:toho:on:none"),
            RewriteError::DuplicateId(_)
        ));
    }
}

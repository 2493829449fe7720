mod common;

use std::collections::BTreeMap;

use mltransfer::analyzer::{noun_frame, parse_sentence};
use mltransfer::ontology::CategoryHierarchy;
use mltransfer::patterns::{select_pattern, satisfy, Frame, Level, PatternDictionary, PatternMatch};
use proptest::prelude::*;

use common::*;

type Raw = BTreeMap<String, (String, Option<String>)>;

/// Deepest constraint member above any of the word's categories.
fn raw_depth(raw: &Raw, senses: &[Vec<String>], constraint: &str) -> Option<u32> {
    let members = constraint.trim_start_matches('@').split(',');
    members
        .filter(|m| senses.iter().flatten().any(|c| chain_subsumes(raw, m, c)))
        .map(|m| chain_depth(raw, m))
        .max()
}

/// Independent ranking: level, locked slots, depth sum, earlier line.
fn oracle_winner(raw: &Raw, senses: &BTreeMap<String, Vec<Vec<String>>>, predicate: &str, args: &[(&str, &str)]) -> Option<String> {
    let patterns = raw_patterns(PATTERNS, predicate);
    let ok = brute_force_matches(raw, senses, &patterns, args);
    let mut best: Option<((u8, u32, u32), usize, String)> = None;
    for (order, (id, level, slots)) in patterns.iter().enumerate() {
        if !ok.contains(id) {
            continue;
        }
        let rank = match level.as_str() {
            "idiomatic" => 2,
            "valency" => 1,
            _ => 0,
        };
        let (mut locked, mut depth) = (0, 0);
        for (particle, constraint, _) in slots {
            let hit = args
                .iter()
                .find(|(p, w)| p == particle && raw_satisfies(raw, w, &senses[*w], constraint));
            let Some((_, w)) = hit else { continue };
            if constraint.starts_with('=') {
                locked += 1;
            } else if constraint.starts_with('@') {
                depth += raw_depth(raw, &senses[*w], constraint).unwrap();
            }
        }
        let key = (rank, locked, depth);
        if best.as_ref().is_none_or(|(k, _, _)| key > *k) {
            best = Some((key, order, id.clone()));
        }
    }
    best.map(|(_, _, id)| id)
}

fn frame_args<'a>(frame: &'a Frame<'_>) -> Vec<(&'a str, &'a str)> {
    frame.args.iter().map(|a| (a.particle.as_str(), a.lemma)).collect()
}

fn corpus_sentence(id: &str) -> String {
    CORPUS
        .lines()
        .find(|l| l.starts_with(&format!("{id}\t")))
        .unwrap()
        .split('\t')
        .nth(1)
        .unwrap()
        .to_string()
}

#[test]
fn water_on_flower_matches_liquid_not_bridge() {
    let raw = raw_categories(CATEGORIES);
    let senses = raw_senses(LEXICON);
    let patterns = raw_patterns(PATTERNS, "kakeru");
    let args = [("ga", "kanojo"), ("o", "mizu"), ("ni", "hana")];
    let expected = brute_force_matches(&raw, &senses, &patterns, &args);
    assert!(expected.contains(&"kakeru-liquid".to_string()));
    assert!(!expected.contains(&"kakeru-bridge".to_string()));

    let d = dicts();
    let clauses = parse_sentence(&d.lexicon, &d.ontology, "kanojo-wa hana-ni mizu-o kaketa.").unwrap();
    let frame = clauses[0].frame();
    let got: Vec<String> = d.patterns.match_frame(&frame, &d.ontology).into_iter().map(|m| m.id).collect();
    assert_eq!(got, expected);
    assert_eq!(select_pattern(&d.patterns.match_frame(&frame, &d.ontology)).unwrap().id, "kakeru-liquid");
}

#[test]
fn deeper_constraint_outranks_shallower() {
    let raw = raw_categories(CATEGORIES);
    let liquid = chain_depth(&raw, "liquid");
    let inanimate = chain_depth(&raw, "inanimate");
    assert!(liquid > inanimate);

    let d = dicts();
    let src = "wide\tvalency\tkakeru\tga:*:yes:subject;o:@inanimate:yes:object\tput {slot:o}\n\
               narrow\tvalency\tkakeru\tga:*:yes:subject;o:@liquid:yes:object\tpour {slot:o}\n";
    let pd = PatternDictionary::parse(src, &d.lexicon, &d.ontology).unwrap();
    let clauses = parse_sentence(&d.lexicon, &d.ontology, "kanojo-wa mizu-o kaketa.").unwrap();
    let matches = pd.match_frame(&clauses[0].frame(), &d.ontology);
    assert_eq!(matches.len(), 2);
    let depth = |id: &str| matches.iter().find(|m| m.id == id).unwrap().specificity.depth_sum;
    assert_eq!((depth("wide"), depth("narrow")), (inanimate, liquid));
    assert_eq!(select_pattern(&matches).unwrap().id, "narrow");
}

#[test]
fn equal_keys_fall_back_to_file_order() {
    let d = dicts();
    let src = "first\tvalency\tkakeru\tga:*:yes:subject;o:@liquid:yes:object\tpour {slot:o}\n\
               second\tvalency\tkakeru\tga:*:yes:subject;o:@liquid:yes:object\tspill {slot:o}\n";
    let pd = PatternDictionary::parse(src, &d.lexicon, &d.ontology).unwrap();
    let clauses = parse_sentence(&d.lexicon, &d.ontology, "kanojo-wa mizu-o kaketa.").unwrap();
    assert_eq!(select_pattern(&pd.match_frame(&clauses[0].frame(), &d.ontology)).unwrap().id, "first");
}

/// Every frame in the corpus: the matcher and the brute-force oracle agree
/// on both the candidate set and the winner.
#[test]
fn corpus_frames_agree_with_oracle() {
    let raw = raw_categories(CATEGORIES);
    let senses = raw_senses(LEXICON);
    let d = dicts();
    let mut checked = 0;
    for line in CORPUS.lines().filter(|l| !l.starts_with('#') && !l.trim().is_empty()) {
        let src = line.split('\t').nth(1).unwrap();
        for clause in parse_sentence(&d.lexicon, &d.ontology, src).unwrap() {
            let frame = clause.frame();
            let args = frame_args(&frame);
            if args.iter().any(|(_, w)| !senses.contains_key(*w)) {
                continue;
            }
            let patterns = raw_patterns(PATTERNS, frame.predicate);
            let expected = brute_force_matches(&raw, &senses, &patterns, &args);
            let matches = d.patterns.match_frame(&frame, &d.ontology);
            let got: Vec<&str> = matches.iter().map(|m| m.id.as_str()).collect();
            assert_eq!(got, expected, "{src}");
            assert_eq!(
                Some(select_pattern(&matches).unwrap().id.clone()),
                oracle_winner(&raw, &senses, frame.predicate, &args),
                "{src}"
            );
            checked += 1;
        }
    }
    assert!(checked >= 15, "only {checked} frames checked");
}

/// Re-check every binding the matcher reports with a constraint test that
/// shares nothing with the library.
#[test]
fn every_binding_satisfies_its_slot() {
    let raw = raw_categories(CATEGORIES);
    let senses = raw_senses(LEXICON);
    let d = dicts();
    for line in CORPUS.lines().filter(|l| !l.starts_with('#') && !l.trim().is_empty()) {
        let src = line.split('\t').nth(1).unwrap();
        for clause in parse_sentence(&d.lexicon, &d.ontology, src).unwrap() {
            let frame = clause.frame();
            for m in d.patterns.match_frame(&frame, &d.ontology) {
                let raw_slots = &raw_patterns(PATTERNS, frame.predicate)
                    .into_iter()
                    .find(|(id, _, _)| *id == m.id)
                    .unwrap()
                    .2;
                for (b, (particle, constraint, _)) in m.bindings.iter().zip(raw_slots) {
                    let Some(b) = b else { continue };
                    let fa = frame.args.iter().find(|a| a.arg == b.arg).unwrap();
                    assert_eq!(fa.particle.as_str(), particle);
                    if let Some(ws) = senses.get(fa.lemma) {
                        assert!(raw_satisfies(&raw, fa.lemma, ws, constraint), "{} {}", m.id, fa.lemma);
                    }
                }
            }
        }
    }
}

fn strictly_best(matches: &[PatternMatch]) -> bool {
    let best = select_pattern(matches).unwrap();
    let k = |m: &PatternMatch| (m.specificity.level.rank(), m.specificity.locked, m.specificity.depth_sum);
    matches.iter().filter(|m| m.id != best.id).all(|m| k(m) < k(best))
}

/// Each illustrative sentence is decided by specificity alone, never by
/// file order.
#[test]
fn illustrative_sentences_have_unique_winners() {
    let d = dicts();
    let mut n = 0;
    for i in 1..=11 {
        let src = corpus_sentence(&format!("kakeru-{i:02}"));
        let clauses = parse_sentence(&d.lexicon, &d.ontology, &src).unwrap();
        assert!(strictly_best(&d.patterns.match_frame(&clauses[0].frame(), &d.ontology)), "{src}");
        n += 1;
    }
    for i in 1..=4 {
        let src = corpus_sentence(&format!("mure-{i:02}"));
        for clause in parse_sentence(&d.lexicon, &d.ontology, &src).unwrap() {
            for arg in clause.arguments.iter().filter(|a| a.phrase.lemma == "mure") {
                let frame = noun_frame(&arg.phrase);
                assert!(strictly_best(&d.patterns.match_frame(&frame, &d.ontology)), "{src}");
                n += 1;
            }
        }
    }
    assert_eq!(n, 11 + 8);
}

#[test]
fn school_location_uses_facility_sense() {
    let d = dicts();
    let clauses = parse_sentence(&d.lexicon, &d.ontology, "kare-wa gakkō-e itta.").unwrap();
    let frame = clauses[0].frame();
    let ont: &CategoryHierarchy = &d.ontology;
    let e = frame.args.iter().find(|a| a.particle.as_str() == "e").unwrap();
    let c = ont.constraint(&["location"]).unwrap();
    let b = satisfy(&mltransfer::patterns::SlotConstraint::Categorial(c), e, ont).unwrap();
    assert!(ont.subsumes_id(ont.id("facility").unwrap(), e.senses[b.sense].categories[0]));
}

#[test]
fn level_filter_keeps_order() {
    let d = dicts();
    let general = d.patterns.retain_levels(&[Level::General]);
    assert!(general.patterns().iter().all(|p| p.level == Level::General));
    let ids: Vec<&str> = general.patterns().iter().map(|p| p.id.as_str()).collect();
    let raw: Vec<String> = PATTERNS
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .filter(|l| l.split('\t').nth(1) == Some("general"))
        .map(|l| l.split('\t').next().unwrap().to_string())
        .collect();
    assert_eq!(ids, raw);
}

proptest! {
    #[test]
    fn selection_ignores_match_order(
        case in 1usize..=11,
        perm in any::<u64>(),
    ) {
        use rand::{seq::SliceRandom, SeedableRng};
        let d = dicts();
        let src = corpus_sentence(&format!("kakeru-{case:02}"));
        let clauses = parse_sentence(&d.lexicon, &d.ontology, &src).unwrap();
        let mut matches = d.patterns.match_frame(&clauses[0].frame(), &d.ontology);
        let expected = select_pattern(&matches).unwrap().id.clone();
        matches.shuffle(&mut rand::rngs::StdRng::seed_from_u64(perm));
        prop_assert_eq!(&select_pattern(&matches).unwrap().id, &expected);
        matches.reverse();
        prop_assert_eq!(&select_pattern(&matches).unwrap().id, &expected);
    }
}

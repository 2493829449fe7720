//! Reference computations that share no code with the library: raw TSV
//! reading, parent-chain walks and closure by repeated relaxation.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use mltransfer::Dictionaries;

pub const CATEGORIES: &str = include_str!("../../data/dict/categories.tsv");
pub const LEXICON: &str = include_str!("../../data/dict/lexicon.tsv");
pub const PATTERNS: &str = include_str!("../../data/dict/patterns.tsv");
pub const REWRITES: &str = include_str!("../../data/dict/rewrites.tsv");
pub const CORPUS: &str = include_str!("../../data/corpus.tsv");
pub const DISCOURSE: &str = include_str!("../../data/discourse.tsv");
pub const GRADES: &str = include_str!("../../data/grades-sample.tsv");
pub const FIXTURE_40: &str = include_str!("../fixtures/categories-40.tsv");

pub fn dicts() -> Dictionaries {
    Dictionaries::builtin()
}

fn data_lines(src: &str) -> impl Iterator<Item = Vec<&str>> {
    src.lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| l.split('\t').collect())
}

/// id -> (kind, parent) straight from the file.
pub fn raw_categories(src: &str) -> BTreeMap<String, (String, Option<String>)> {
    data_lines(src)
        .map(|f| {
            let parent = (f[2] != "-").then(|| f[2].to_string());
            (f[0].to_string(), (f[1].to_string(), parent))
        })
        .collect()
}

/// Number of nodes on the chain from `id` to its root, inclusive.
pub fn chain_depth(raw: &BTreeMap<String, (String, Option<String>)>, id: &str) -> u32 {
    let mut n = 1;
    let mut cur = id.to_string();
    while let Some(p) = raw[&cur].1.clone() {
        n += 1;
        cur = p;
    }
    n
}

/// True when `ancestor` is on `descendant`'s parent chain.
pub fn chain_subsumes(raw: &BTreeMap<String, (String, Option<String>)>, ancestor: &str, descendant: &str) -> bool {
    let mut cur = Some(descendant.to_string());
    while let Some(c) = cur {
        if c == ancestor {
            return true;
        }
        cur = raw[&c].1.clone();
    }
    false
}

/// Reflexive-transitive closure of the parent relation by relaxation until
/// nothing changes: `closure[a]` holds every descendant of `a`.
pub fn closure(parents: &[Option<usize>]) -> Vec<BTreeSet<usize>> {
    let n = parents.len();
    let mut below: Vec<BTreeSet<usize>> = (0..n).map(|i| BTreeSet::from([i])).collect();
    loop {
        let mut changed = false;
        for c in 0..n {
            if let Some(p) = parents[c] {
                let add: Vec<usize> = below[c].iter().copied().collect();
                for d in add {
                    changed |= below[p].insert(d);
                }
            }
        }
        if !changed {
            return below;
        }
    }
}

/// Lexicon surface -> sense category names, straight from the file.
pub fn raw_senses(src: &str) -> BTreeMap<String, Vec<Vec<String>>> {
    let mut out: BTreeMap<String, Vec<Vec<String>>> = BTreeMap::new();
    for f in data_lines(src) {
        let senses = f[3]
            .split(';')
            .map(|s| s.split('|').next().unwrap().split(',').map(str::to_string).collect())
            .collect::<Vec<Vec<String>>>();
        out.entry(f[0].to_string()).or_default().extend(senses);
    }
    out
}

/// One slot of a pattern line: particle, constraint text, required.
pub type RawSlot = (String, String, bool);

/// Pattern lines for `predicate`: (id, level, slots).
pub fn raw_patterns(src: &str, predicate: &str) -> Vec<(String, String, Vec<RawSlot>)> {
    data_lines(src)
        .filter(|f| f[2] == predicate)
        .map(|f| {
            let slots = f[3]
                .split(';')
                .filter(|s| *s != "-")
                .map(|s| {
                    let p: Vec<&str> = s.split(':').collect();
                    (p[0].to_string(), p[1].to_string(), p[2] == "yes")
                })
                .collect();
            (f[0].to_string(), f[1].to_string(), slots)
        })
        .collect()
}

/// Does a word with these senses satisfy a raw constraint?
pub fn raw_satisfies(
    raw: &BTreeMap<String, (String, Option<String>)>,
    lemma: &str,
    senses: &[Vec<String>],
    constraint: &str,
) -> bool {
    if constraint == "*" {
        return true;
    }
    if let Some(w) = constraint.strip_prefix('=') {
        return w == lemma;
    }
    let members: Vec<&str> = constraint.trim_start_matches('@').split(',').collect();
    senses
        .iter()
        .flatten()
        .any(|c| members.iter().any(|m| chain_subsumes(raw, m, c)))
}

/// Patterns whose every slot is satisfiable by the given arguments, with
/// each argument used at most once and required slots filled. The ga slot
/// is allowed to stay empty when no ga argument was given.
pub fn brute_force_matches(
    raw: &BTreeMap<String, (String, Option<String>)>,
    senses: &BTreeMap<String, Vec<Vec<String>>>,
    patterns: &[(String, String, Vec<RawSlot>)],
    args: &[(&str, &str)],
) -> Vec<String> {
    let mut out = Vec::new();
    'pattern: for (id, _, slots) in patterns {
        for (particle, constraint, required) in slots {
            let candidates: Vec<&(&str, &str)> = args.iter().filter(|(p, _)| p == particle).collect();
            let ok = candidates
                .iter()
                .any(|(_, w)| raw_satisfies(raw, w, &senses[*w], constraint));
            let elidable = particle == "ga" && candidates.is_empty();
            if !ok && *required && !elidable {
                continue 'pattern;
            }
        }
        out.push(id.clone());
    }
    out
}

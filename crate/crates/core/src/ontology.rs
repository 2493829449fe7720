//! Semantic category hierarchies.
//!
//! Two rooted IS-A trees, one for common nouns and one for proper nouns.
//! Every lexicon sense, pattern slot and rewrite guard refers to categories
//! by their string id; after loading, ids are interned as [`CategoryId`].

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Deepest allowed level of the common-noun tree.
pub const MAX_COMMON_DEPTH: u32 = 12;
/// Deepest allowed level of the proper-noun tree.
pub const MAX_PROPER_DEPTH: u32 = 9;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OntologyError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("duplicate category id `{0}`")]
    DuplicateId(String),
    #[error("category `{id}` has unknown parent `{parent}`")]
    MissingParent { id: String, parent: String },
    #[error("parent cycle through category `{0}`")]
    Cycle(String),
    #[error("category `{id}` ({kind}) has parent `{parent}` of a different kind")]
    KindMismatch {
        id: String,
        kind: CategoryKind,
        parent: String,
    },
    #[error("second {kind} root `{id}` (first root is `{first}`)")]
    DuplicateRoot {
        kind: CategoryKind,
        id: String,
        first: String,
    },
    #[error("no {0} root category")]
    MissingRoot(CategoryKind),
    #[error("category `{id}` is at depth {depth}, deeper than the {kind} ceiling of {max}")]
    DepthExceeded {
        id: String,
        kind: CategoryKind,
        depth: u32,
        max: u32,
    },
    #[error("unknown category `{0}`")]
    UnknownCategory(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CategoryKind {
    Common,
    Proper,
}

impl CategoryKind {
    pub fn max_depth(self) -> u32 {
        match self {
            CategoryKind::Common => MAX_COMMON_DEPTH,
            CategoryKind::Proper => MAX_PROPER_DEPTH,
        }
    }
}

impl fmt::Display for CategoryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CategoryKind::Common => "common",
            CategoryKind::Proper => "proper",
        })
    }
}

impl FromStr for CategoryKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "common" => Ok(CategoryKind::Common),
            "proper" => Ok(CategoryKind::Proper),
            other => Err(format!("unknown category kind `{other}`")),
        }
    }
}

/// Interned handle of a category inside one [`CategoryHierarchy`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CategoryId(u32);

impl CategoryId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemanticCategory {
    pub id: String,
    pub name: String,
    pub kind: CategoryKind,
    pub parent: Option<CategoryId>,
    depth: u32,
}

impl SemanticCategory {
    pub fn depth(&self) -> u32 {
        self.depth
    }
}

/// One raw record, before validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CategoryRecord {
    pub id: String,
    pub kind: CategoryKind,
    pub parent: Option<String>,
    pub name: String,
}

/// Disjunctive category restriction: a word satisfies it when any member
/// subsumes one of the word's categories. Members keep declaration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CategoryConstraint {
    members: Vec<CategoryId>,
}

impl CategoryConstraint {
    /// Returns `None` for an empty member list.
    pub fn new(members: Vec<CategoryId>) -> Option<Self> {
        if members.is_empty() {
            None
        } else {
            Some(CategoryConstraint { members })
        }
    }

    pub fn members(&self) -> &[CategoryId] {
        &self.members
    }
}

/// Result of [`CategoryHierarchy::best_match`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CategoryMatch {
    pub member: CategoryId,
    pub word_category: CategoryId,
    pub depth: u32,
}

#[derive(Debug, Clone)]
pub struct CategoryHierarchy {
    categories: Vec<SemanticCategory>,
    by_id: HashMap<String, CategoryId>,
    children: Vec<Vec<CategoryId>>,
    common_root: CategoryId,
    proper_root: CategoryId,
}

impl CategoryHierarchy {
    /// Parses the tab-separated category file and validates it.
    pub fn parse(source: &str) -> Result<Self, OntologyError> {
        let mut records = Vec::new();
        for (n, raw) in source.lines().enumerate() {
            let line = raw.trim_end_matches('\r');
            if line.trim().is_empty() || line.trim_start().starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            if fields.len() != 4 {
                return Err(OntologyError::Parse {
                    line: n + 1,
                    message: format!("expected 4 tab-separated fields, found {}", fields.len()),
                });
            }
            let kind = fields[1]
                .trim()
                .parse()
                .map_err(|message| OntologyError::Parse { line: n + 1, message })?;
            let parent = match fields[2].trim() {
                "-" => None,
                p => Some(p.to_string()),
            };
            records.push(CategoryRecord {
                id: fields[0].trim().to_string(),
                kind,
                parent,
                name: fields[3].trim().to_string(),
            });
        }
        Self::from_records(records)
    }

    pub fn from_records(records: Vec<CategoryRecord>) -> Result<Self, OntologyError> {
        let mut by_id = HashMap::with_capacity(records.len());
        for (i, r) in records.iter().enumerate() {
            if r.id.is_empty() {
                return Err(OntologyError::Parse {
                    line: i + 1,
                    message: "empty category id".into(),
                });
            }
            if by_id.insert(r.id.clone(), CategoryId(i as u32)).is_some() {
                return Err(OntologyError::DuplicateId(r.id.clone()));
            }
        }

        let mut parents = Vec::with_capacity(records.len());
        for r in &records {
            let parent = match &r.parent {
                None => None,
                Some(p) if *p == r.id => return Err(OntologyError::Cycle(r.id.clone())),
                Some(p) => {
                    let pid = *by_id.get(p).ok_or_else(|| OntologyError::MissingParent {
                        id: r.id.clone(),
                        parent: p.clone(),
                    })?;
                    if records[pid.index()].kind != r.kind {
                        return Err(OntologyError::KindMismatch {
                            id: r.id.clone(),
                            kind: r.kind,
                            parent: p.clone(),
                        });
                    }
                    Some(pid)
                }
            };
            parents.push(parent);
        }

        let mut common_root: Option<CategoryId> = None;
        let mut proper_root: Option<CategoryId> = None;
        for (i, r) in records.iter().enumerate() {
            if parents[i].is_some() {
                continue;
            }
            let slot = match r.kind {
                CategoryKind::Common => &mut common_root,
                CategoryKind::Proper => &mut proper_root,
            };
            if let Some(first) = slot {
                return Err(OntologyError::DuplicateRoot {
                    kind: r.kind,
                    id: r.id.clone(),
                    first: records[first.index()].id.clone(),
                });
            }
            *slot = Some(CategoryId(i as u32));
        }

        // Depths by memoised parent walk; a walk that revisits a node on its
        // own path is a cycle.
        const UNSET: u32 = 0;
        let mut depth = vec![UNSET; records.len()];
        let mut on_path = vec![false; records.len()];
        for start in 0..records.len() {
            if depth[start] != UNSET {
                continue;
            }
            let mut path = Vec::new();
            let mut cur = start;
            let base = loop {
                if depth[cur] != UNSET {
                    break depth[cur];
                }
                if on_path[cur] {
                    return Err(OntologyError::Cycle(records[cur].id.clone()));
                }
                on_path[cur] = true;
                path.push(cur);
                match parents[cur] {
                    Some(p) => cur = p.index(),
                    None => break 0,
                }
            };
            let mut d = base;
            for &node in path.iter().rev() {
                d += 1;
                depth[node] = d;
                on_path[node] = false;
            }
        }

        let common_root = common_root.ok_or(OntologyError::MissingRoot(CategoryKind::Common))?;
        let proper_root = proper_root.ok_or(OntologyError::MissingRoot(CategoryKind::Proper))?;

        for (i, r) in records.iter().enumerate() {
            let max = r.kind.max_depth();
            if depth[i] > max {
                return Err(OntologyError::DepthExceeded {
                    id: r.id.clone(),
                    kind: r.kind,
                    depth: depth[i],
                    max,
                });
            }
        }

        let mut children = vec![Vec::new(); records.len()];
        for (i, p) in parents.iter().enumerate() {
            if let Some(p) = p {
                children[p.index()].push(CategoryId(i as u32));
            }
        }

        let categories = records
            .into_iter()
            .zip(parents)
            .zip(depth)
            .map(|((r, parent), depth)| SemanticCategory {
                id: r.id,
                name: r.name,
                kind: r.kind,
                parent,
                depth,
            })
            .collect();

        Ok(CategoryHierarchy {
            categories,
            by_id,
            children,
            common_root,
            proper_root,
        })
    }

    pub fn len(&self) -> usize {
        self.categories.len()
    }

    pub fn is_empty(&self) -> bool {
        self.categories.is_empty()
    }

    pub fn id(&self, name: &str) -> Result<CategoryId, OntologyError> {
        self.by_id
            .get(name)
            .copied()
            .ok_or_else(|| OntologyError::UnknownCategory(name.to_string()))
    }

    pub fn get(&self, id: CategoryId) -> &SemanticCategory {
        &self.categories[id.index()]
    }

    pub fn name_of(&self, id: CategoryId) -> &str {
        &self.categories[id.index()].id
    }

    pub fn root(&self, kind: CategoryKind) -> CategoryId {
        match kind {
            CategoryKind::Common => self.common_root,
            CategoryKind::Proper => self.proper_root,
        }
    }

    pub fn parent(&self, id: CategoryId) -> Option<CategoryId> {
        self.categories[id.index()].parent
    }

    pub fn children(&self, id: CategoryId) -> &[CategoryId] {
        &self.children[id.index()]
    }

    pub fn ids(&self) -> impl Iterator<Item = CategoryId> + '_ {
        (0..self.categories.len() as u32).map(CategoryId)
    }

    pub fn depth_of(&self, id: CategoryId) -> u32 {
        self.categories[id.index()].depth
    }

    pub fn max_depth(&self, kind: CategoryKind) -> u32 {
        self.categories
            .iter()
            .filter(|c| c.kind == kind)
            .map(|c| c.depth)
            .max()
            .unwrap_or(0)
    }

    /// True iff `ancestor` lies on the parent chain of `descendant`,
    /// including `descendant` itself.
    pub fn subsumes_id(&self, ancestor: CategoryId, descendant: CategoryId) -> bool {
        let target = self.depth_of(ancestor);
        let mut cur = descendant;
        while self.depth_of(cur) > target {
            match self.parent(cur) {
                Some(p) => cur = p,
                None => return false,
            }
        }
        cur == ancestor
    }

    pub fn subsumes(&self, ancestor: &str, descendant: &str) -> Result<bool, OntologyError> {
        Ok(self.subsumes_id(self.id(ancestor)?, self.id(descendant)?))
    }

    pub fn depth(&self, category: &str) -> Result<u32, OntologyError> {
        Ok(self.depth_of(self.id(category)?))
    }

    /// Deepest constraint member subsuming any of the word's categories.
    /// Ties go to the earlier member, then to the earlier word category.
    pub fn best_match(
        &self,
        word_categories: &[CategoryId],
        constraint: &CategoryConstraint,
    ) -> Option<CategoryMatch> {
        let mut best: Option<CategoryMatch> = None;
        for &member in constraint.members() {
            let depth = self.depth_of(member);
            if best.is_some_and(|b| b.depth >= depth) {
                continue;
            }
            if let Some(&w) = word_categories.iter().find(|&&w| self.subsumes_id(member, w)) {
                best = Some(CategoryMatch {
                    member,
                    word_category: w,
                    depth,
                });
            }
        }
        best
    }

    /// Builds a constraint from category names, failing on the first unknown id.
    pub fn constraint<S: AsRef<str>>(&self, names: &[S]) -> Result<CategoryConstraint, OntologyError> {
        let ids = names
            .iter()
            .map(|n| self.id(n.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        CategoryConstraint::new(ids).ok_or_else(|| OntologyError::UnknownCategory(String::new()))
    }
}

//! Symbols, d-sets and faces.
//!
//! Symbols are the integers `0..n`. Every set of symbols is stored as a
//! sorted, duplicate-free vector so that structural equality coincides with
//! set equality and the derived `Ord` is the lexicographic order.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::SpgError;

pub type Symbol = u32;

/// The ambient symbol set `{0, .., n-1}` with optional display labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SymbolSet {
    n: usize,
    labels: Option<Vec<String>>,
}

impl SymbolSet {
    pub fn new(n: usize) -> Self {
        SymbolSet { n, labels: None }
    }

    /// Attach display labels; they must be `n` distinct strings.
    pub fn with_labels(n: usize, labels: Vec<String>) -> Result<Self, SpgError> {
        if labels.len() != n {
            return Err(SpgError::BadLabels(format!(
                "expected {n} labels, found {}",
                labels.len()
            )));
        }
        let mut seen = std::collections::HashSet::new();
        for label in &labels {
            if !seen.insert(label.as_str()) {
                return Err(SpgError::BadLabels(format!("duplicate label {label:?}")));
            }
        }
        Ok(SymbolSet {
            n,
            labels: Some(labels),
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn contains(&self, s: Symbol) -> bool {
        (s as usize) < self.n
    }

    pub fn label(&self, s: Symbol) -> String {
        match &self.labels {
            Some(labels) => labels[s as usize].clone(),
            None => s.to_string(),
        }
    }

    /// Look a symbol up by its label.
    pub fn symbol_for_label(&self, label: &str) -> Option<Symbol> {
        self.labels
            .as_ref()?
            .iter()
            .position(|l| l == label)
            .map(|i| i as Symbol)
    }

    /// Renders a set of symbols. Single-character labels are concatenated
    /// (`123`), anything else is braced and comma separated.
    pub fn format_set(&self, members: &[Symbol]) -> String {
        match &self.labels {
            Some(labels)
                if members
                    .iter()
                    .all(|&s| labels[s as usize].chars().count() == 1) =>
            {
                members
                    .iter()
                    .map(|&s| labels[s as usize].as_str())
                    .collect()
            }
            _ => {
                let parts: Vec<String> = members.iter().map(|&s| self.label(s)).collect();
                format!("{{{}}}", parts.join(","))
            }
        }
    }
}

fn sorted_unique(mut members: Vec<Symbol>) -> Result<Vec<Symbol>, Vec<Symbol>> {
    members.sort_unstable();
    let before = members.len();
    members.dedup();
    if members.len() != before {
        Err(members)
    } else {
        Ok(members)
    }
}

fn meet(a: &[Symbol], b: &[Symbol]) -> Vec<Symbol> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::with_capacity(a.len().min(b.len()));
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn meet_len(a: &[Symbol], b: &[Symbol]) -> usize {
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

fn includes(sup: &[Symbol], sub: &[Symbol]) -> bool {
    if sub.len() > sup.len() {
        return false;
    }
    let mut it = sup.iter();
    'outer: for s in sub {
        for t in it.by_ref() {
            if t == s {
                continue 'outer;
            }
            if t > s {
                return false;
            }
        }
        return false;
    }
    true
}

/// A d-element subset of the symbol set, kept in ascending order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DSet(Vec<Symbol>);

impl DSet {
    /// Builds a d-set from arbitrary-order members. Repeated symbols are rejected.
    pub fn new(members: impl Into<Vec<Symbol>>) -> Result<Self, SpgError> {
        sorted_unique(members.into())
            .map(DSet)
            .map_err(|m| SpgError::WrongCardinality {
                block: None,
                dset: m,
                expected: 0,
            })
    }

    /// Members must already be strictly ascending.
    pub fn from_sorted(members: Vec<Symbol>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        DSet(members)
    }

    pub fn members(&self) -> &[Symbol] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, s: Symbol) -> bool {
        self.0.binary_search(&s).is_ok()
    }

    pub fn meet(&self, other: &DSet) -> Face {
        Face(meet(&self.0, &other.0))
    }

    pub fn meet_len(&self, other: &DSet) -> usize {
        meet_len(&self.0, &other.0)
    }

    pub fn contains_face(&self, face: &Face) -> bool {
        includes(&self.0, &face.0)
    }

    /// The `len()` subsets obtained by dropping one member.
    pub fn facets(&self) -> impl Iterator<Item = Face> + '_ {
        (0..self.0.len()).map(move |skip| {
            Face(
                self.0
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &s)| s)
                    .collect(),
            )
        })
    }

    pub fn as_face(&self) -> Face {
        Face(self.0.clone())
    }

    pub fn into_vec(self) -> Vec<Symbol> {
        self.0
    }
}

impl fmt::Display for DSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, "}}")
    }
}

/// An arbitrary set of symbols (a face), kept in ascending order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Face(Vec<Symbol>);

impl Face {
    pub fn new(members: impl Into<Vec<Symbol>>) -> Self {
        let mut members = members.into();
        members.sort_unstable();
        members.dedup();
        Face(members)
    }

    pub fn empty() -> Self {
        Face(Vec::new())
    }

    pub fn members(&self) -> &[Symbol] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_subset_of(&self, other: &Face) -> bool {
        includes(&other.0, &self.0)
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        DSet(self.0.clone()).fmt(f)
    }
}

/// All `r`-element subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, r: usize) -> Vec<Vec<Symbol>> {
    let mut out = Vec::new();
    if r > n {
        return out;
    }
    let mut current: Vec<Symbol> = (0..r as Symbol).collect();
    loop {
        out.push(current.clone());
        let mut i = r;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if (current[i] as usize) < n - r + i {
                break;
            }
        }
        current[i] += 1;
        for j in i + 1..r {
            current[j] = current[j - 1] + 1;
        }
    }
}

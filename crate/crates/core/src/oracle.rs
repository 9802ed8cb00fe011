//! Slow, direct reference implementations.
//!
//! Nothing here shares code paths with the fast checkers beyond the basic
//! data types: faces are enumerated literally, connectivity uses union-find,
//! distances use Floyd-Warshall.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::clf::ConnectedLayerFamily;
use crate::error::SpgError;
use crate::properties::{Verdict, Witness};
use crate::spg::Spg;
use crate::symbols::{combinations, DSet, Face, Symbol, SymbolSet};

/// Hard limits checked before (and, for time, during) enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_symbols: usize,
    pub max_dimension: usize,
    pub max_dsets: usize,
    pub max_vertices: usize,
    pub time_limit: Duration,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_symbols: 6,
            max_dimension: 3,
            max_dsets: 20,
            max_vertices: 512,
            time_limit: Duration::from_secs(60),
        }
    }
}

impl OracleBudget {
    pub fn validate(&self) -> Result<(), SpgError> {
        if self.max_symbols == 0
            || self.max_dimension == 0
            || self.max_dsets == 0
            || self.max_vertices == 0
            || self.time_limit.is_zero()
        {
            return Err(SpgError::BudgetExceeded(
                "oracle budget limits must all be positive".into(),
            ));
        }
        Ok(())
    }

    fn require(&self, what: &str, value: usize, limit: usize) -> Result<(), SpgError> {
        if value > limit {
            Err(SpgError::BudgetExceeded(format!(
                "{what} = {value} exceeds the limit {limit}"
            )))
        } else {
            Ok(())
        }
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.0[root] != root {
            root = self.0[root];
        }
        let mut x = x;
        while self.0[x] != root {
            let next = self.0[x];
            self.0[x] = root;
            x = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Checks every face `F` with `|F| <= d` literally, in order of size then
/// lexicographically.
pub fn brute_dimension_reduction(g: &Spg, budget: &OracleBudget) -> Result<Verdict, SpgError> {
    budget.validate()?;
    budget.require("symbols", g.n(), budget.max_symbols)?;
    budget.require("dimension", g.d(), budget.max_dimension)?;
    let started = Instant::now();
    for size in 0..=g.d() {
        for face in combinations(g.n(), size) {
            if started.elapsed() > budget.time_limit {
                return Err(SpgError::BudgetExceeded("time limit reached".into()));
            }
            let survives: Vec<bool> = g
                .blocks()
                .iter()
                .map(|block| {
                    block
                        .iter()
                        .any(|a| face.iter().all(|s| a.members().contains(s)))
                })
                .collect();
            let mut uf = UnionFind::new(g.vertex_count());
            for &(u, v) in g.edges() {
                if survives[u] && survives[v] {
                    uf.union(u, v);
                }
            }
            let alive: Vec<usize> = (0..g.vertex_count()).filter(|&b| survives[b]).collect();
            if let Some(&first) = alive.first() {
                let root = uf.find(first);
                if let Some(&other) = alive.iter().find(|&&b| uf.find(b) != root) {
                    return Ok(Verdict::Fails(Witness::SeparatedFace {
                        face: Face::new(face),
                        blocks: [first, other],
                    }));
                }
            }
        }
    }
    Ok(Verdict::Holds)
}

/// All-pairs shortest paths by Floyd-Warshall.
pub fn brute_diameter(g: &Spg, budget: &OracleBudget) -> Result<usize, SpgError> {
    budget.validate()?;
    let m = g.vertex_count();
    budget.require("vertices", m, budget.max_vertices)?;
    const INF: usize = usize::MAX / 4;
    let mut dist = vec![vec![INF; m]; m];
    for (i, row) in dist.iter_mut().enumerate() {
        row[i] = 0;
    }
    for &(u, v) in g.edges() {
        dist[u][v] = 1;
        dist[v][u] = 1;
    }
    for k in 0..m {
        for i in 0..m {
            for j in 0..m {
                let via = dist[i][k] + dist[k][j];
                if via < dist[i][j] {
                    dist[i][j] = via;
                }
            }
        }
    }
    Ok(dist.iter().flatten().copied().max().unwrap_or(0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClfVariant {
    /// Layers are arbitrary nonempty sets of d-sets.
    General,
    /// Every layer is a single d-set.
    OneSubset,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClfSearchResult {
    pub n: usize,
    pub d: usize,
    pub variant: ClfVariant,
    pub diameter: usize,
    /// The lexicographically first class representative.
    pub witness: Vec<Vec<DSet>>,
    /// Number of maximal families up to symbol permutation.
    pub maximal_classes: usize,
    /// One canonical representative per class, in lexicographic order.
    pub classes: Vec<Vec<Vec<DSet>>>,
    pub explored: u64,
}

impl ClfSearchResult {
    pub fn witness_clf(&self) -> Result<ConnectedLayerFamily, SpgError> {
        ConnectedLayerFamily::new(SymbolSet::new(self.n), self.d, self.witness.clone())
    }
}

fn permutations(n: usize) -> Vec<Vec<Symbol>> {
    fn rec(prefix: &mut Vec<Symbol>, used: &mut [bool], out: &mut Vec<Vec<Symbol>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for s in 0..used.len() {
            if !used[s] {
                used[s] = true;
                prefix.push(s as Symbol);
                rec(prefix, used, out);
                prefix.pop();
                used[s] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

type Layers = Vec<Vec<Vec<Symbol>>>;

fn apply(perm: &[Symbol], layers: &Layers) -> Layers {
    layers
        .iter()
        .map(|layer| {
            let mut mapped: Vec<Vec<Symbol>> = layer
                .iter()
                .map(|a| {
                    let mut m: Vec<Symbol> = a.iter().map(|&s| perm[s as usize]).collect();
                    m.sort_unstable();
                    m
                })
                .collect();
            mapped.sort();
            mapped
        })
        .collect()
}

/// Minimal image of a layered family under all symbol permutations.
fn canonical(perms: &[Vec<Symbol>], layers: &Layers) -> Layers {
    perms
        .iter()
        .map(|p| apply(p, layers))
        .min()
        .expect("at least the identity permutation")
}

fn contains(sup: &[Symbol], sub: &[Symbol]) -> bool {
    sub.iter().all(|s| sup.contains(s))
}

fn meet(a: &[Symbol], b: &[Symbol]) -> Vec<Symbol> {
    a.iter().copied().filter(|s| b.contains(s)).collect()
}

/// Whether `c` may be placed in a new last layer: for every earlier pair of
/// layers `i < j`, every `a` in layer `i` has a superset of `a ∩ c` in layer `j`.
fn admissible(all: &[Vec<Symbol>], layers: &[Vec<usize>], c: usize) -> bool {
    for i in 0..layers.len() {
        for &a in &layers[i] {
            let face = meet(&all[a], &all[c]);
            for middle in &layers[i + 1..] {
                if !middle.iter().any(|&b| contains(&all[b], &face)) {
                    return false;
                }
            }
        }
    }
    true
}

struct Search<'a> {
    all: &'a [Vec<Symbol>],
    variant: ClfVariant,
    started: Instant,
    limit: Duration,
    explored: u64,
    best: usize,
    maximal: Vec<Vec<Vec<usize>>>,
    timed_out: bool,
}

impl Search<'_> {
    fn dfs(&mut self, layers: &mut Vec<Vec<usize>>, used: u64) {
        self.explored += 1;
        if self.explored % 4096 == 0 && self.started.elapsed() > self.limit {
            self.timed_out = true;
        }
        if self.timed_out {
            return;
        }
        let depth = layers.len() - 1;
        if depth > self.best {
            self.best = depth;
            self.maximal.clear();
        }
        if depth == self.best {
            self.maximal.push(layers.clone());
        }
        let candidates: Vec<usize> = (0..self.all.len())
            .filter(|&c| used >> c & 1 == 0 && admissible(self.all, layers, c))
            .collect();
        if candidates.is_empty() || depth + candidates.len() < self.best {
            return;
        }
        match self.variant {
            ClfVariant::OneSubset => {
                for &c in &candidates {
                    layers.push(vec![c]);
                    self.dfs(layers, used | 1 << c);
                    layers.pop();
                }
            }
            ClfVariant::General => {
                let k = candidates.len();
                for mask in 1u64..(1 << k) {
                    let layer: Vec<usize> = (0..k)
                        .filter(|&i| mask >> i & 1 == 1)
                        .map(|i| candidates[i])
                        .collect();
                    let bits = layer.iter().fold(used, |acc, &c| acc | 1 << c);
                    layers.push(layer);
                    self.dfs(layers, bits);
                    layers.pop();
                    if self.timed_out {
                        return;
                    }
                }
            }
        }
    }
}

/// Per first layer: best diameter, maximal families, nodes explored, timed out.
type Branch = (usize, Vec<Vec<Vec<usize>>>, u64, bool);

/// Exhaustive search for the longest connected layer family on `n` symbols
/// in dimension `d`. First layers are restricted to canonical
/// representatives under symbol permutations; maximal families are then
/// counted up to permutation.
pub fn brute_max_clf_diameter(
    n: usize,
    d: usize,
    variant: ClfVariant,
    budget: &OracleBudget,
) -> Result<ClfSearchResult, SpgError> {
    budget.validate()?;
    if d == 0 || d > n {
        return Err(SpgError::BadParameter(format!(
            "need 1 <= d <= n, got n = {n}, d = {d}"
        )));
    }
    budget.require("symbols", n, budget.max_symbols)?;
    budget.require("dimension", d, budget.max_dimension)?;
    let all = combinations(n, d);
    budget.require("d-sets", all.len(), budget.max_dsets.min(64))?;
    let perms = permutations(n);
    let started = Instant::now();

    let to_sets = |layers: &[Vec<usize>]| -> Layers {
        layers
            .iter()
            .map(|l| l.iter().map(|&i| all[i].clone()).collect())
            .collect()
    };

    let first_layers: Vec<Vec<usize>> = match variant {
        // every d-set is a permutation image of {0..d-1}
        ClfVariant::OneSubset => vec![vec![0]],
        ClfVariant::General => {
            let mut seen = BTreeSet::new();
            let mut out = Vec::new();
            let k = all.len();
            for mask in 1u64..(1 << k) {
                let layer: Vec<usize> = (0..k).filter(|&i| mask >> i & 1 == 1).collect();
                let sets = to_sets(std::slice::from_ref(&layer));
                if seen.insert(canonical(&perms, &sets)) {
                    out.push(layer);
                }
                if started.elapsed() > budget.time_limit {
                    return Err(SpgError::BudgetExceeded("time limit reached".into()));
                }
            }
            out
        }
    };

    let branches: Vec<Branch> = first_layers
        .par_iter()
        .map(|first| {
            let mut search = Search {
                all: &all,
                variant,
                started,
                limit: budget.time_limit,
                explored: 0,
                best: 0,
                maximal: Vec::new(),
                timed_out: false,
            };
            let used = first.iter().fold(0u64, |acc, &c| acc | 1 << c);
            search.dfs(&mut vec![first.clone()], used);
            (
                search.best,
                search.maximal,
                search.explored,
                search.timed_out,
            )
        })
        .collect();

    if branches.iter().any(|b| b.3) {
        return Err(SpgError::BudgetExceeded(format!(
            "time limit of {:?} reached",
            budget.time_limit
        )));
    }
    let best = branches.iter().map(|b| b.0).max().unwrap_or(0);
    let explored = branches.iter().map(|b| b.2).sum();
    let mut classes: BTreeSet<Layers> = BTreeSet::new();
    for (depth, maximal, _, _) in &branches {
        if *depth != best {
            continue;
        }
        for layers in maximal {
            classes.insert(canonical(&perms, &to_sets(layers)));
        }
    }
    let classes: Vec<Vec<Vec<DSet>>> = classes
        .into_iter()
        .map(|c| {
            c.into_iter()
                .map(|layer| layer.into_iter().map(DSet::from_sorted).collect())
                .collect()
        })
        .collect();
    let witness = classes
        .first()
        .cloned()
        .expect("the first layer alone is a family");
    Ok(ClfSearchResult {
        n,
        d,
        variant,
        diameter: best,
        witness,
        maximal_classes: classes.len(),
        classes,
        explored,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_cyclic_construction, gen_figure1};

    #[test]
    fn brute_dimension_reduction_examples() {
        let budget = OracleBudget::default();
        assert!(brute_dimension_reduction(&gen_figure1(), &budget)
            .unwrap()
            .holds());
        let path = Spg::from_raw(
            3,
            2,
            vec![vec![vec![0, 1]], vec![vec![1, 2]], vec![vec![0, 2]]],
            [(0, 1), (1, 2)],
        )
        .unwrap();
        assert_eq!(
            brute_dimension_reduction(&path, &budget).unwrap(),
            Verdict::Fails(Witness::SeparatedFace {
                face: Face::new(vec![0]),
                blocks: [0, 2]
            })
        );
    }

    #[test]
    fn budget_is_enforced() {
        let g = gen_cyclic_construction(12, 8).unwrap();
        assert!(matches!(
            brute_dimension_reduction(&g, &OracleBudget::default()),
            Err(SpgError::BudgetExceeded(_))
        ));
        let zero = OracleBudget {
            max_dsets: 0,
            ..OracleBudget::default()
        };
        assert!(zero.validate().is_err());
    }

    #[test]
    fn brute_diameter_examples() {
        let budget = OracleBudget::default();
        assert_eq!(brute_diameter(&gen_figure1(), &budget).unwrap(), 2);
        let single = Spg::from_raw(2, 1, vec![vec![vec![0]]], []).unwrap();
        assert_eq!(brute_diameter(&single, &budget).unwrap(), 0);
        let cyclic = gen_cyclic_construction(12, 8).unwrap();
        assert_eq!(brute_diameter(&cyclic, &budget).unwrap(), 16);
    }

    #[test]
    fn trivial_clf_searches() {
        let budget = OracleBudget::default();
        let r = brute_max_clf_diameter(3, 3, ClfVariant::General, &budget).unwrap();
        assert_eq!(r.diameter, 0);
        let r = brute_max_clf_diameter(4, 3, ClfVariant::General, &budget).unwrap();
        assert_eq!(r.diameter, 1);
        let r = brute_max_clf_diameter(4, 2, ClfVariant::OneSubset, &budget).unwrap();
        assert_eq!(r.diameter, 2);
        // {01},{12},{23} and {01},{02},{03} are not related by any permutation
        assert_eq!(r.maximal_classes, 2);
        assert!(r.witness_clf().is_ok());
    }

    #[test]
    fn permutations_count() {
        assert_eq!(permutations(4).len(), 24);
    }
}

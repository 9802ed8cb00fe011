//! The subset partition graph type.

use std::collections::HashMap;

use crate::error::SpgError;
use crate::graph;
use crate::symbols::{DSet, Symbol, SymbolSet};

/// A d-dimensional subset partition graph: a connected graph whose vertices
/// are pairwise disjoint, nonempty blocks of d-sets.
///
/// Values are immutable; every structural operation returns a new graph.
/// Canonical form: members ascending within each d-set, d-sets ascending
/// within each block, edges stored as `(i, j)` with `i < j` in sorted order.
/// Block order is significant and preserved.
#[derive(Debug, Clone)]
pub struct Spg {
    symbols: SymbolSet,
    d: usize,
    blocks: Vec<Vec<DSet>>,
    edges: Vec<(usize, usize)>,
    apices: Option<(DSet, DSet)>,
    adj: Vec<Vec<usize>>,
    owner: HashMap<DSet, usize>,
}

impl PartialEq for Spg {
    fn eq(&self, other: &Self) -> bool {
        self.symbols == other.symbols
            && self.d == other.d
            && self.blocks == other.blocks
            && self.edges == other.edges
            && self.apices == other.apices
    }
}

impl Eq for Spg {}

pub(crate) fn validate_dset(
    symbols: &SymbolSet,
    d: usize,
    members: &[Symbol],
    block: Option<usize>,
) -> Result<DSet, SpgError> {
    if let Some(&bad) = members.iter().find(|&&s| !symbols.contains(s)) {
        return Err(SpgError::UnknownSymbol {
            symbol: bad,
            n: symbols.len(),
        });
    }
    let mut sorted = members.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != members.len() || sorted.len() != d {
        return Err(SpgError::WrongCardinality {
            block,
            dset: members.to_vec(),
            expected: d,
        });
    }
    Ok(DSet::from_sorted(sorted))
}

impl Spg {
    /// Validates and canonicalizes a subset partition graph.
    pub fn new(
        symbols: SymbolSet,
        d: usize,
        blocks: Vec<Vec<DSet>>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, SpgError> {
        if blocks.is_empty() {
            return Err(SpgError::NoVertices);
        }
        let mut owner: HashMap<DSet, usize> = HashMap::new();
        let mut canonical = Vec::with_capacity(blocks.len());
        for (b, block) in blocks.into_iter().enumerate() {
            if block.is_empty() {
                return Err(SpgError::EmptyBlock { block: b });
            }
            let mut sets = Vec::with_capacity(block.len());
            for a in block {
                let a = validate_dset(&symbols, d, a.members(), Some(b))?;
                if let Some(&first) = owner.get(&a) {
                    return Err(SpgError::OverlappingBlocks {
                        first,
                        second: b,
                        dset: a.into_vec(),
                    });
                }
                owner.insert(a.clone(), b);
                sets.push(a);
            }
            sets.sort();
            canonical.push(sets);
        }
        let count = canonical.len();
        let mut edge_list = Vec::new();
        for (u, v) in edges {
            if u == v || u >= count || v >= count {
                return Err(SpgError::BadEdge(u, v));
            }
            edge_list.push((u.min(v), u.max(v)));
        }
        edge_list.sort_unstable();
        edge_list.dedup();
        let adj = graph::adjacency_lists(count, &edge_list);
        let dist = graph::bfs_distances(&adj, 0);
        if let Some(unreachable) = dist.iter().position(|&x| x == graph::UNREACHED) {
            return Err(SpgError::DisconnectedGraph { unreachable });
        }
        Ok(Spg {
            symbols,
            d,
            blocks: canonical,
            edges: edge_list,
            apices: None,
            adj,
            owner,
        })
    }

    /// Convenience constructor from raw symbol vectors.
    pub fn from_raw(
        n: usize,
        d: usize,
        blocks: Vec<Vec<Vec<Symbol>>>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, SpgError> {
        let symbols = SymbolSet::new(n);
        let mut converted = Vec::with_capacity(blocks.len());
        for (b, block) in blocks.into_iter().enumerate() {
            let mut sets = Vec::with_capacity(block.len());
            for a in block {
                sets.push(validate_dset(&symbols, d, &a, Some(b))?);
            }
            converted.push(sets);
        }
        Spg::new(symbols, d, converted, edges)
    }

    /// Records a pair of complementary d-sets as the distinguished apices.
    pub fn with_apices(mut self, first: DSet, second: DSet) -> Result<Self, SpgError> {
        if !self.owner.contains_key(&first) {
            return Err(SpgError::DSetNotPresent(first.into_vec()));
        }
        if !self.owner.contains_key(&second) {
            return Err(SpgError::DSetNotPresent(second.into_vec()));
        }
        if !complementary(&first, &second, self.symbols.len()) {
            return Err(SpgError::NotASpindle);
        }
        self.apices = Some((first, second));
        Ok(self)
    }

    pub(crate) fn set_apices_unchecked(&mut self, apices: Option<(DSet, DSet)>) {
        self.apices = apices;
    }

    pub fn symbols(&self) -> &SymbolSet {
        &self.symbols
    }

    pub fn n(&self) -> usize {
        self.symbols.len()
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn blocks(&self) -> &[Vec<DSet>] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> &[DSet] {
        &self.blocks[i]
    }

    pub fn vertex_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adj[i]
    }

    pub(crate) fn adjacency(&self) -> &[Vec<usize>] {
        &self.adj
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].len()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i < self.adj.len() && self.adj[i].binary_search(&j).is_ok()
    }

    pub fn apices(&self) -> Option<&(DSet, DSet)> {
        self.apices.as_ref()
    }

    /// Index of the block containing `a`.
    pub fn block_of(&self, a: &DSet) -> Option<usize> {
        self.owner.get(a).copied()
    }

    /// Every d-set of the family, in block order.
    pub fn dsets(&self) -> impl Iterator<Item = &DSet> + '_ {
        self.blocks.iter().flatten()
    }

    /// `(block index, d-set)` for every member of the family.
    pub fn indexed_dsets(&self) -> impl Iterator<Item = (usize, &DSet)> + '_ {
        self.blocks
            .iter()
            .enumerate()
            .flat_map(|(b, block)| block.iter().map(move |a| (b, a)))
    }

    pub fn family_size(&self) -> usize {
        self.owner.len()
    }

    /// Whether `self` and `other` have the same blocks and edges after
    /// relabeling blocks. Block order is ignored.
    pub fn same_up_to_block_order(&self, other: &Spg) -> bool {
        if self.symbols.len() != other.n()
            || self.d != other.d
            || self.blocks.len() != other.blocks.len()
            || self.edges.len() != other.edges.len()
        {
            return false;
        }
        let mut map = vec![usize::MAX; self.blocks.len()];
        for (i, block) in self.blocks.iter().enumerate() {
            match other.block_of(&block[0]) {
                Some(j) if other.blocks[j] == *block => map[i] = j,
                _ => return false,
            }
        }
        let mut relabeled: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|&(u, v)| (map[u].min(map[v]), map[u].max(map[v])))
            .collect();
        relabeled.sort_unstable();
        relabeled == other.edges
    }
}

pub(crate) fn complementary(a: &DSet, b: &DSet, n: usize) -> bool {
    a.len() + b.len() == n && a.meet_len(b) == 0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_block_single_dset_is_valid() {
        let g = Spg::from_raw(3, 2, vec![vec![vec![0, 1]]], []).unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.family_size(), 1);
    }

    #[test]
    fn rejects_overlapping_blocks() {
        let err = Spg::from_raw(3, 2, vec![vec![vec![0, 1]], vec![vec![1, 0]]], [(0, 1)]);
        assert!(matches!(
            err,
            Err(SpgError::OverlappingBlocks {
                first: 0,
                second: 1,
                ..
            })
        ));
    }

    #[test]
    fn rejects_bad_inputs() {
        assert_eq!(
            Spg::from_raw(3, 2, vec![vec![]], []).unwrap_err(),
            SpgError::EmptyBlock { block: 0 }
        );
        assert!(matches!(
            Spg::from_raw(3, 2, vec![vec![vec![0, 1, 2]]], []),
            Err(SpgError::WrongCardinality { block: Some(0), .. })
        ));
        assert!(matches!(
            Spg::from_raw(3, 2, vec![vec![vec![0, 7]]], []),
            Err(SpgError::UnknownSymbol { symbol: 7, .. })
        ));
        assert_eq!(
            Spg::from_raw(3, 2, vec![vec![vec![0, 1]], vec![vec![1, 2]]], []).unwrap_err(),
            SpgError::DisconnectedGraph { unreachable: 1 }
        );
        assert_eq!(
            Spg::from_raw(3, 2, vec![vec![vec![0, 1]], vec![vec![1, 2]]], [(0, 2)]).unwrap_err(),
            SpgError::BadEdge(0, 2)
        );
        assert_eq!(
            Spg::from_raw(3, 2, vec![], []).unwrap_err(),
            SpgError::NoVertices
        );
    }

    #[test]
    fn canonicalizes_block_contents_and_edges() {
        let g = Spg::from_raw(
            4,
            2,
            vec![vec![vec![3, 2], vec![1, 0]], vec![vec![1, 2]]],
            [(1, 0), (0, 1)],
        )
        .unwrap();
        assert_eq!(g.block(0)[0].members(), &[0, 1]);
        assert_eq!(g.block(0)[1].members(), &[2, 3]);
        assert_eq!(g.edges(), &[(0, 1)]);
    }
}

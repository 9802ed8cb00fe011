//! Connected layer families and base abstractions.

use std::collections::{HashMap, HashSet};

use crate::error::SpgError;
use crate::graph::{self, UNREACHED};
use crate::properties::{Verdict, Witness};
use crate::spg::{validate_dset, Spg};
use crate::symbols::{DSet, Face, SymbolSet};

/// Ordered, nonempty, pairwise disjoint layers of d-sets. The connectivity
/// condition is not enforced here; see [`ConnectedLayerFamily`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerFamily {
    symbols: SymbolSet,
    d: usize,
    layers: Vec<Vec<DSet>>,
}

impl LayerFamily {
    pub fn new(symbols: SymbolSet, d: usize, layers: Vec<Vec<DSet>>) -> Result<Self, SpgError> {
        if layers.is_empty() {
            return Err(SpgError::InvalidClf(
                "a layer family needs at least one layer".into(),
            ));
        }
        let mut seen: HashMap<DSet, usize> = HashMap::new();
        let mut canonical = Vec::with_capacity(layers.len());
        for (i, layer) in layers.into_iter().enumerate() {
            if layer.is_empty() {
                return Err(SpgError::EmptyBlock { block: i });
            }
            let mut sets = Vec::with_capacity(layer.len());
            for a in layer {
                let a = validate_dset(&symbols, d, a.members(), Some(i))?;
                if let Some(&first) = seen.get(&a) {
                    return Err(SpgError::OverlappingBlocks {
                        first,
                        second: i,
                        dset: a.into_vec(),
                    });
                }
                seen.insert(a.clone(), i);
                sets.push(a);
            }
            sets.sort();
            canonical.push(sets);
        }
        Ok(LayerFamily {
            symbols,
            d,
            layers: canonical,
        })
    }

    pub fn symbols(&self) -> &SymbolSet {
        &self.symbols
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn layers(&self) -> &[Vec<DSet>] {
        &self.layers
    }

    pub fn check(&self) -> Verdict {
        check_layers(&self.layers)
    }
}

/// Checks the connectivity condition: for all `i < j < k`, `A` in layer `i`
/// and `A'` in layer `k`, some d-set of layer `j` contains `A ∩ A'`.
pub fn check_layers(layers: &[Vec<DSet>]) -> Verdict {
    for i in 0..layers.len() {
        for k in i + 2..layers.len() {
            for a in &layers[i] {
                for b in &layers[k] {
                    let face = a.meet(b);
                    for (j, middle) in layers.iter().enumerate().take(k).skip(i + 1) {
                        if !middle.iter().any(|c| c.contains_face(&face)) {
                            return Verdict::Fails(Witness::LayerGap {
                                layers: [i, j, k],
                                first: a.clone(),
                                second: b.clone(),
                                face,
                            });
                        }
                    }
                }
            }
        }
    }
    Verdict::Holds
}

/// A layer family satisfying the connectivity condition. Its diameter is the
/// number of layers minus one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectedLayerFamily {
    inner: LayerFamily,
}

impl ConnectedLayerFamily {
    pub fn new(symbols: SymbolSet, d: usize, layers: Vec<Vec<DSet>>) -> Result<Self, SpgError> {
        Self::from_family(LayerFamily::new(symbols, d, layers)?)
    }

    pub fn from_family(family: LayerFamily) -> Result<Self, SpgError> {
        match family.check() {
            Verdict::Holds => Ok(ConnectedLayerFamily { inner: family }),
            Verdict::Fails(w) => Err(SpgError::InvalidClf(format!("{w}"))),
        }
    }

    pub fn symbols(&self) -> &SymbolSet {
        self.inner.symbols()
    }

    pub fn n(&self) -> usize {
        self.inner.symbols().len()
    }

    pub fn d(&self) -> usize {
        self.inner.d()
    }

    pub fn layers(&self) -> &[Vec<DSet>] {
        self.inner.layers()
    }

    pub fn diameter(&self) -> usize {
        self.inner.layers().len() - 1
    }

    /// The path-shaped subset partition graph with one block per layer.
    pub fn to_spg(&self) -> Spg {
        let count = self.layers().len();
        Spg::new(
            self.symbols().clone(),
            self.d(),
            self.layers().to_vec(),
            (1..count).map(|i| (i - 1, i)),
        )
        .expect("layers of a valid family form a valid path graph")
    }

    /// Reads a path-shaped graph as a layer family, walking the path from its
    /// lower-indexed endpoint. Fails unless the graph is a path whose blocks
    /// satisfy the connectivity condition in path order.
    pub fn from_path_spg(g: &Spg) -> Result<Self, SpgError> {
        let order = path_order(g)
            .ok_or_else(|| SpgError::InvalidClf("underlying graph is not a path".into()))?;
        let layers = order.iter().map(|&b| g.block(b).to_vec()).collect();
        Self::new(g.symbols().clone(), g.d(), layers)
    }
}

/// Block indices in path order if the graph is a path; `None` otherwise.
pub(crate) fn path_order(g: &Spg) -> Option<Vec<usize>> {
    let count = g.vertex_count();
    if count == 1 {
        return Some(vec![0]);
    }
    if g.edges().len() != count - 1 || (0..count).any(|v| g.degree(v) > 2) {
        return None;
    }
    let start = (0..count).find(|&v| g.degree(v) == 1)?;
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while let Some(&next) = g.neighbors(cur).iter().find(|&&v| v != prev) {
        order.push(next);
        prev = cur;
        cur = next;
    }
    (order.len() == count).then_some(order)
}

/// Joins every pair of d-sets in the same or adjacent layers.
pub fn clf_to_base(clf: &ConnectedLayerFamily) -> BaseAbstraction {
    let mut nodes = Vec::new();
    let mut layer_of = Vec::new();
    for (i, layer) in clf.layers().iter().enumerate() {
        for a in layer {
            nodes.push(a.clone());
            layer_of.push(i);
        }
    }
    let mut edges = Vec::new();
    for u in 0..nodes.len() {
        for v in u + 1..nodes.len() {
            if layer_of[v] - layer_of[u] <= 1 {
                edges.push((u, v));
            }
        }
    }
    BaseAbstraction::new(clf.symbols().clone(), clf.d(), nodes, edges)
        .expect("consecutive layers are joined, so the graph is connected")
}

/// A connected graph whose nodes are distinct d-sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseAbstraction {
    symbols: SymbolSet,
    d: usize,
    nodes: Vec<DSet>,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl BaseAbstraction {
    pub fn new(
        symbols: SymbolSet,
        d: usize,
        nodes: Vec<DSet>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, SpgError> {
        if nodes.is_empty() {
            return Err(SpgError::DisconnectedInput("no nodes".into()));
        }
        let mut seen = HashSet::new();
        let mut checked = Vec::with_capacity(nodes.len());
        for a in nodes {
            let a = validate_dset(&symbols, d, a.members(), None)?;
            if !seen.insert(a.clone()) {
                return Err(SpgError::DisconnectedInput(format!("duplicate node {a}")));
            }
            checked.push(a);
        }
        let mut edge_list = Vec::new();
        for (u, v) in edges {
            if u == v || u >= checked.len() || v >= checked.len() {
                return Err(SpgError::BadEdge(u, v));
            }
            edge_list.push((u.min(v), u.max(v)));
        }
        edge_list.sort_unstable();
        edge_list.dedup();
        let adj = graph::adjacency_lists(checked.len(), &edge_list);
        if let Some(v) = graph::bfs_distances(&adj, 0)
            .iter()
            .position(|&x| x == UNREACHED)
        {
            return Err(SpgError::DisconnectedInput(format!(
                "node {} is unreachable from node {}",
                checked[v], checked[0]
            )));
        }
        Ok(BaseAbstraction {
            symbols,
            d,
            nodes: checked,
            edges: edge_list,
            adj,
        })
    }

    /// Reads a graph with singleton blocks as a graph on d-sets.
    pub fn from_one_subset_spg(g: &Spg) -> Result<Self, SpgError> {
        if let Some(b) = (0..g.vertex_count()).find(|&b| g.block(b).len() != 1) {
            return Err(SpgError::BadParameter(format!(
                "block {b} holds {} d-sets; a base abstraction needs singleton blocks",
                g.block(b).len()
            )));
        }
        let nodes = g.blocks().iter().map(|b| b[0].clone()).collect();
        Self::new(g.symbols().clone(), g.d(), nodes, g.edges().iter().copied())
    }

    pub fn symbols(&self) -> &SymbolSet {
        &self.symbols
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn nodes(&self) -> &[DSet] {
        &self.nodes
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn diameter(&self) -> usize {
        graph::diameter_with_pair(&self.adj).0
    }

    pub fn eccentricity(&self, node: usize) -> usize {
        graph::bfs_distances(&self.adj, node)
            .into_iter()
            .max()
            .unwrap_or(0)
    }

    pub fn index_of(&self, a: &DSet) -> Option<usize> {
        self.nodes.iter().position(|x| x == a)
    }
}

/// Every pair of nodes is joined by a path through supersets of their intersection.
pub fn check_base_abstraction(b: &BaseAbstraction) -> Verdict {
    let mut reach_cache: HashMap<Face, (Vec<usize>, usize)> = HashMap::new();
    for u in 0..b.nodes.len() {
        for v in u + 1..b.nodes.len() {
            let face = b.nodes[u].meet(&b.nodes[v]);
            let (label, _) = reach_cache.entry(face.clone()).or_insert_with(|| {
                let keep: Vec<bool> = b.nodes.iter().map(|a| a.contains_face(&face)).collect();
                graph::induced_components(&b.adj, &keep)
            });
            if label[u] != label[v] {
                return Verdict::Fails(Witness::BrokenFacePath {
                    first: b.nodes[u].clone(),
                    second: b.nodes[v].clone(),
                    face,
                });
            }
        }
    }
    Verdict::Holds
}

/// Edges join exactly the pairs of d-sets sharing `d - 1` symbols.
pub fn check_ultraconnected(b: &BaseAbstraction) -> Verdict {
    for u in 0..b.nodes.len() {
        for v in u + 1..b.nodes.len() {
            let close = b.nodes[u].meet_len(&b.nodes[v]) + 1 == b.d;
            let joined = b.adj[u].binary_search(&v).is_ok();
            if close != joined {
                return Verdict::Fails(Witness::UltraMismatch {
                    first: b.nodes[u].clone(),
                    second: b.nodes[v].clone(),
                    joined,
                });
            }
        }
    }
    Verdict::Holds
}

/// Distance classes from `root`, validated as a connected layer family.
pub fn base_layering(b: &BaseAbstraction, root: &DSet) -> Result<ConnectedLayerFamily, SpgError> {
    let source = b
        .index_of(root)
        .ok_or_else(|| SpgError::DSetNotPresent(root.members().to_vec()))?;
    let dist = graph::bfs_distances(&b.adj, source);
    let depth = dist.iter().copied().max().unwrap_or(0);
    let mut layers = vec![Vec::new(); depth + 1];
    for (v, a) in b.nodes.iter().enumerate() {
        layers[dist[v]].push(a.clone());
    }
    ConnectedLayerFamily::new(b.symbols.clone(), b.d, layers)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_cube_spg, gen_hirsch_path_clf};

    fn ds(v: &[u32]) -> DSet {
        DSet::new(v.to_vec()).unwrap()
    }

    #[test]
    fn middle_layer_without_superset_fails() {
        // {12} | {34} | {13}, 0-based
        let layers = vec![vec![ds(&[0, 1])], vec![ds(&[2, 3])], vec![ds(&[0, 2])]];
        match check_layers(&layers) {
            Verdict::Fails(Witness::LayerGap {
                layers,
                first,
                second,
                face,
            }) => {
                assert_eq!(layers, [0, 1, 2]);
                assert_eq!(first, ds(&[0, 1]));
                assert_eq!(second, ds(&[0, 2]));
                assert_eq!(face, Face::new(vec![0]));
            }
            other => panic!("expected failure, got {other:?}"),
        }
    }

    #[test]
    fn single_layer_holds() {
        assert!(check_layers(&[vec![ds(&[0, 1]), ds(&[2, 3])]]).holds());
    }

    #[test]
    fn hirsch_path_base_is_a_path() {
        let clf = gen_hirsch_path_clf(4, 2).unwrap();
        let base = clf_to_base(&clf);
        assert_eq!(base.nodes(), &[ds(&[0, 1]), ds(&[1, 2]), ds(&[2, 3])]);
        assert_eq!(base.edges(), &[(0, 1), (1, 2)]);
        assert!(check_base_abstraction(&base).holds());
        assert!(base.diameter() >= clf.diameter());
    }

    #[test]
    fn single_layer_base_is_complete() {
        let clf = ConnectedLayerFamily::new(
            SymbolSet::new(4),
            2,
            vec![vec![ds(&[0, 1]), ds(&[1, 2]), ds(&[2, 3]), ds(&[0, 3])]],
        )
        .unwrap();
        let base = clf_to_base(&clf);
        assert_eq!(base.edges().len(), 6);
    }

    #[test]
    fn cube_as_base_abstraction() {
        let cube = gen_cube_spg(3).unwrap();
        let base = BaseAbstraction::from_one_subset_spg(&cube).unwrap();
        assert!(check_base_abstraction(&base).holds());
        assert!(check_ultraconnected(&base).holds());
        let clf = base_layering(&base, &ds(&[0, 1, 2])).unwrap();
        let sizes: Vec<usize> = clf.layers().iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![1, 3, 3, 1]);
        assert_eq!(clf.diameter(), 3);
    }

    #[test]
    fn path_12_23_13_is_not_a_base_abstraction() {
        let base = BaseAbstraction::new(
            SymbolSet::new(3),
            2,
            vec![ds(&[0, 1]), ds(&[1, 2]), ds(&[0, 2])],
            [(0, 1), (1, 2)],
        )
        .unwrap();
        match check_base_abstraction(&base) {
            Verdict::Fails(Witness::BrokenFacePath { first, second, .. }) => {
                assert_eq!((first, second), (ds(&[0, 1]), ds(&[0, 2])));
            }
            other => panic!("expected failure, got {other:?}"),
        }
        assert!(matches!(
            base_layering(&base, &ds(&[0, 1])),
            Err(SpgError::InvalidClf(_))
        ));
    }

    #[test]
    fn disconnected_base_is_rejected() {
        let err = BaseAbstraction::new(SymbolSet::new(3), 2, vec![ds(&[0, 1]), ds(&[1, 2])], []);
        assert!(matches!(err, Err(SpgError::DisconnectedInput(_))));
    }

    #[test]
    fn path_spg_round_trip() {
        let clf = gen_hirsch_path_clf(6, 2).unwrap();
        let g = clf.to_spg();
        assert_eq!(ConnectedLayerFamily::from_path_spg(&g).unwrap(), clf);
        let cube = gen_cube_spg(2).unwrap();
        assert!(ConnectedLayerFamily::from_path_spg(&cube).is_err());
    }
}

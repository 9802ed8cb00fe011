//! Structural operations: restriction, distances, contraction, edge addition
//! and layering.

use serde::Serialize;

use crate::clf::{check_layers, LayerFamily};
use crate::error::SpgError;
use crate::graph::{self, UNREACHED};
use crate::properties::{find_apices, Verdict};
use crate::spg::Spg;
use crate::symbols::{DSet, Face};

/// The restriction of a graph to the d-sets containing a face.
///
/// Owned, serializable snapshot of a [`RestrictedView`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RestrictionSummary {
    pub face: Face,
    pub surviving_blocks: Vec<usize>,
    /// Surviving d-sets of each surviving block, in the same order.
    pub surviving_dsets: Vec<Vec<DSet>>,
    pub induced_edges: Vec<(usize, usize)>,
    pub connected: bool,
    pub components: Vec<Vec<usize>>,
}

/// Not itself a subset partition graph: it may be empty or disconnected.
#[derive(Debug, Clone)]
pub struct RestrictedView<'a> {
    parent: &'a Spg,
    face: Face,
    surviving: Vec<usize>,
    induced_edges: Vec<(usize, usize)>,
}

impl<'a> RestrictedView<'a> {
    pub fn parent(&self) -> &'a Spg {
        self.parent
    }

    pub fn face(&self) -> &Face {
        &self.face
    }

    /// Parent indices of the blocks holding at least one superset of the face.
    pub fn surviving_blocks(&self) -> &[usize] {
        &self.surviving
    }

    /// Parent edges whose endpoints both survive.
    pub fn induced_edges(&self) -> &[(usize, usize)] {
        &self.induced_edges
    }

    /// The d-sets of block `i` that contain the face.
    pub fn surviving_dsets(&self, i: usize) -> Vec<&'a DSet> {
        self.parent.blocks()[i]
            .iter()
            .filter(|a| a.contains_face(&self.face))
            .collect()
    }

    /// Connected components of the view, as sorted lists of parent indices.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let keep = self.keep_mask();
        let (label, count) = graph::induced_components(self.parent.adjacency(), &keep);
        let mut comps = vec![Vec::new(); count];
        for &b in &self.surviving {
            comps[label[b]].push(b);
        }
        comps
    }

    /// Empty and single-block views count as connected.
    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    pub fn summary(&self) -> RestrictionSummary {
        let components = self.components();
        RestrictionSummary {
            face: self.face.clone(),
            surviving_blocks: self.surviving.clone(),
            surviving_dsets: self
                .surviving
                .iter()
                .map(|&b| self.surviving_dsets(b).into_iter().cloned().collect())
                .collect(),
            induced_edges: self.induced_edges.clone(),
            connected: components.len() <= 1,
            components,
        }
    }

    fn keep_mask(&self) -> Vec<bool> {
        let mut keep = vec![false; self.parent.vertex_count()];
        for &b in &self.surviving {
            keep[b] = true;
        }
        keep
    }
}

/// Restricts `g` to the d-sets that contain `face`.
pub fn restriction<'a>(g: &'a Spg, face: &Face) -> Result<RestrictedView<'a>, SpgError> {
    if let Some(&symbol) = face.members().iter().find(|&&s| !g.symbols().contains(s)) {
        return Err(SpgError::UnknownSymbol { symbol, n: g.n() });
    }
    let surviving: Vec<usize> = (0..g.vertex_count())
        .filter(|&b| g.block(b).iter().any(|a| a.contains_face(face)))
        .collect();
    let mut keep = vec![false; g.vertex_count()];
    for &b in &surviving {
        keep[b] = true;
    }
    let induced_edges = g
        .edges()
        .iter()
        .copied()
        .filter(|&(u, v)| keep[u] && keep[v])
        .collect();
    Ok(RestrictedView {
        parent: g,
        face: face.clone(),
        surviving,
        induced_edges,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DiameterResult {
    pub value: usize,
    /// Lexicographically first pair of vertex indices at maximum distance.
    pub farthest_pair: (usize, usize),
}

pub fn diameter(g: &Spg) -> DiameterResult {
    let (value, farthest_pair) = graph::diameter_with_pair(g.adjacency());
    DiameterResult {
        value,
        farthest_pair,
    }
}

/// Block distances from vertex `source` to every vertex.
pub fn distances_from(g: &Spg, source: usize) -> Vec<usize> {
    graph::bfs_distances(g.adjacency(), source)
}

/// Distance between the blocks containing `a` and `b`.
pub fn distance(g: &Spg, a: &DSet, b: &DSet) -> Result<usize, SpgError> {
    let from = g
        .block_of(a)
        .ok_or_else(|| SpgError::DSetNotPresent(a.members().to_vec()))?;
    let to = g
        .block_of(b)
        .ok_or_else(|| SpgError::DSetNotPresent(b.members().to_vec()))?;
    let dist = distances_from(g, from)[to];
    debug_assert_ne!(dist, UNREACHED);
    Ok(dist)
}

/// Distance between the apex blocks.
pub fn spindle_length(g: &Spg) -> Result<usize, SpgError> {
    let (a, b) = find_apices(g).ok_or(SpgError::NotASpindle)?;
    distance(g, &a, &b)
}

/// Merges the endpoints of edge `{i, j}` into one block at index `min(i, j)`.
/// Later blocks shift down by one; self-loops vanish and parallel edges merge.
pub fn contraction(g: &Spg, i: usize, j: usize) -> Result<Spg, SpgError> {
    check_vertex(g, i)?;
    check_vertex(g, j)?;
    if i == j || !g.has_edge(i, j) {
        return Err(SpgError::NoSuchEdge(i, j));
    }
    let (keep, gone) = (i.min(j), i.max(j));
    let reindex = |v: usize| -> usize {
        if v == gone {
            keep
        } else if v > gone {
            v - 1
        } else {
            v
        }
    };
    let mut blocks: Vec<Vec<DSet>> = Vec::with_capacity(g.vertex_count() - 1);
    for (b, block) in g.blocks().iter().enumerate() {
        if b == gone {
            blocks[keep].extend(block.iter().cloned());
        } else {
            blocks.push(block.clone());
        }
    }
    let edges: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .map(|&(u, v)| (reindex(u), reindex(v)))
        .filter(|&(u, v)| u != v)
        .collect();
    let mut out = Spg::new(g.symbols().clone(), g.d(), blocks, edges)?;
    out.set_apices_unchecked(g.apices().cloned());
    Ok(out)
}

/// Joins two non-adjacent vertices.
pub fn edge_addition(g: &Spg, i: usize, j: usize) -> Result<Spg, SpgError> {
    check_vertex(g, i)?;
    check_vertex(g, j)?;
    if i == j {
        return Err(SpgError::SelfLoop(i));
    }
    if g.has_edge(i, j) {
        return Err(SpgError::EdgeExists(i.min(j), i.max(j)));
    }
    let mut edges = g.edges().to_vec();
    edges.push((i.min(j), i.max(j)));
    let mut out = Spg::new(g.symbols().clone(), g.d(), g.blocks().to_vec(), edges)?;
    out.set_apices_unchecked(g.apices().cloned());
    Ok(out)
}

fn check_vertex(g: &Spg, index: usize) -> Result<(), SpgError> {
    if index >= g.vertex_count() {
        Err(SpgError::NoSuchVertex {
            index,
            count: g.vertex_count(),
        })
    } else {
        Ok(())
    }
}

/// Distance classes of d-sets from a root d-set, with their connectivity verdict.
#[derive(Debug, Clone)]
pub struct Layering {
    pub root: DSet,
    pub layers: LayerFamily,
    pub verdict: Verdict,
}

/// Layer `i` holds the d-sets whose block lies at distance `i` from the root's block.
pub fn spg_layering(g: &Spg, root: &DSet) -> Result<Layering, SpgError> {
    let source = g
        .block_of(root)
        .ok_or_else(|| SpgError::DSetNotPresent(root.members().to_vec()))?;
    let dist = distances_from(g, source);
    let depth = dist.iter().copied().max().unwrap_or(0);
    let mut layers: Vec<Vec<DSet>> = vec![Vec::new(); depth + 1];
    for (b, block) in g.blocks().iter().enumerate() {
        layers[dist[b]].extend(block.iter().cloned());
    }
    for layer in &mut layers {
        layer.sort();
    }
    let layers = LayerFamily::new(g.symbols().clone(), g.d(), layers)?;
    let verdict = check_layers(layers.layers());
    Ok(Layering {
        root: root.clone(),
        layers,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_cube_spg, gen_figure1, gen_spindle_family};

    fn ds(v: &[u32]) -> DSet {
        DSet::new(v.to_vec()).unwrap()
    }

    fn path_12_23_13() -> Spg {
        // symbols 1,2,3 written 0-based
        Spg::from_raw(
            3,
            2,
            vec![vec![vec![0, 1]], vec![vec![1, 2]], vec![vec![0, 2]]],
            [(0, 1), (1, 2)],
        )
        .unwrap()
    }

    #[test]
    fn restriction_of_figure1() {
        let g = gen_figure1();
        let view = restriction(&g, &Face::new(vec![0, 1])).unwrap();
        assert_eq!(view.surviving_blocks(), &[0]);
        assert!(view.is_connected());
        let view = restriction(&g, &Face::new(vec![3, 4])).unwrap();
        assert_eq!(view.surviving_blocks().len(), 1);
        assert_eq!(
            g.block(view.surviving_blocks()[0]),
            &[ds(&[2, 3, 4]), ds(&[3, 4, 5])]
        );
        let all = restriction(&g, &Face::empty()).unwrap();
        assert_eq!(all.surviving_blocks().len(), g.vertex_count());
        assert_eq!(all.induced_edges().len(), g.edges().len());
        assert!(matches!(
            restriction(&g, &Face::new(vec![9])),
            Err(SpgError::UnknownSymbol { symbol: 9, .. })
        ));
    }

    #[test]
    fn restriction_can_disconnect() {
        let g = path_12_23_13();
        let view = restriction(&g, &Face::new(vec![0])).unwrap();
        assert_eq!(view.surviving_blocks(), &[0, 2]);
        assert!(view.induced_edges().is_empty());
        assert_eq!(view.components(), vec![vec![0], vec![2]]);
    }

    #[test]
    fn figure1_distances() {
        let g = gen_figure1();
        assert_eq!(diameter(&g).value, 2);
        assert_eq!(distance(&g, &ds(&[1, 3, 5]), &ds(&[0, 4, 5])).unwrap(), 2);
        assert_eq!(distance(&g, &ds(&[0, 1, 2]), &ds(&[0, 1, 5])).unwrap(), 0);
        assert_eq!(spindle_length(&g).unwrap(), 2);
        assert!(matches!(
            distance(&g, &ds(&[0, 1, 3]), &ds(&[0, 1, 2])),
            Err(SpgError::DSetNotPresent(_))
        ));
    }

    #[test]
    fn single_vertex_has_diameter_zero() {
        let g = Spg::from_raw(2, 1, vec![vec![vec![0]]], []).unwrap();
        assert_eq!(diameter(&g).value, 0);
        assert!(matches!(spindle_length(&g), Err(SpgError::NotASpindle)));
    }

    #[test]
    fn contraction_merges_at_min_index() {
        let g = path_12_23_13();
        let c = contraction(&g, 2, 1).unwrap();
        assert_eq!(c.vertex_count(), 2);
        assert_eq!(c.block(1), &[ds(&[0, 2]), ds(&[1, 2])]);
        assert_eq!(c.edges(), &[(0, 1)]);
        let single = contraction(&c, 0, 1).unwrap();
        assert_eq!(single.vertex_count(), 1);
        assert_eq!(diameter(&single).value, 0);
        assert_eq!(
            contraction(&g, 0, 2).unwrap_err(),
            SpgError::NoSuchEdge(0, 2)
        );
    }

    #[test]
    fn contraction_reindexes_later_blocks() {
        let g = gen_cube_spg(3).unwrap();
        let c = contraction(&g, 0, 1).unwrap();
        assert_eq!(c.vertex_count(), 7);
        for b in 2..8 {
            assert_eq!(c.block(b - 1), g.block(b));
        }
        assert!(c.edges().iter().all(|&(u, v)| u < v && v < 7));
    }

    #[test]
    fn contraction_lowers_distances_by_at_most_one() {
        // a path through the merged pair shortens by one edge, no more
        let g = gen_spindle_family(2).unwrap();
        assert_eq!(diameter(&g).value, 8);
        for &(u, v) in g.edges() {
            let h = contraction(&g, u, v).unwrap();
            assert_eq!(diameter(&h).value, 7);
        }
        let blocks: Vec<Vec<Vec<u32>>> = (0..7u32).map(|i| vec![vec![i]]).collect();
        let edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5), (3, 6)];
        let g = Spg::from_raw(7, 1, blocks, edges).unwrap();
        let before = diameter(&g).value;
        assert_eq!(before, 4);
        for &(u, v) in g.edges() {
            let after = diameter(&contraction(&g, u, v).unwrap()).value;
            assert!(after + 1 >= before && after <= before, "edge ({u},{v})");
        }
    }

    #[test]
    fn edge_addition_contract() {
        let g = path_12_23_13();
        let h = edge_addition(&g, 0, 2).unwrap();
        assert_eq!(h.edges().len(), 3);
        assert_eq!(
            edge_addition(&g, 0, 1).unwrap_err(),
            SpgError::EdgeExists(0, 1)
        );
        assert_eq!(edge_addition(&g, 1, 1).unwrap_err(), SpgError::SelfLoop(1));
        // adding then contracting merges a former non-edge pair
        let merged = contraction(&h, 0, 2).unwrap();
        assert_eq!(merged.vertex_count(), 2);
    }

    #[test]
    fn layering_figure1_and_cube() {
        let g = gen_figure1();
        let layering = spg_layering(&g, &ds(&[0, 1, 2])).unwrap();
        let sizes: Vec<usize> = layering.layers.layers().iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![2, 4, 2]);
        assert_eq!(
            layering.layers.layers()[1],
            vec![
                ds(&[0, 2, 4]),
                ds(&[0, 4, 5]),
                ds(&[1, 2, 3]),
                ds(&[1, 3, 5])
            ]
        );
        assert!(layering.verdict.holds());

        let cube = gen_cube_spg(3).unwrap();
        let layering = spg_layering(&cube, &ds(&[0, 1, 2])).unwrap();
        let sizes: Vec<usize> = layering.layers.layers().iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![1, 3, 3, 1]);
    }
}

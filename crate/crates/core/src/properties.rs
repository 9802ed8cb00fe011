//! Property checkers. Every failure carries a concrete witness that can be
//! re-verified against the graph with [`Witness::confirms`].

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::clf::{check_layers, path_order};
use crate::connectivity;
use crate::graph;
use crate::ops::restriction;
use crate::spg::{complementary, Spg};
use crate::symbols::{DSet, Face};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Property {
    DimensionReduction,
    Adjacency,
    StrongAdjacency,
    EndpointCount,
    PolytopalEndpointCount,
    OneSubset,
    DRegularity,
    DConnectedness,
    DNeighbors,
    Spindle,
    ClfShape,
    Ultraconnected,
}

impl Property {
    pub const ALL: [Property; 12] = [
        Property::DimensionReduction,
        Property::Adjacency,
        Property::StrongAdjacency,
        Property::EndpointCount,
        Property::PolytopalEndpointCount,
        Property::OneSubset,
        Property::DRegularity,
        Property::DConnectedness,
        Property::DNeighbors,
        Property::Spindle,
        Property::ClfShape,
        Property::Ultraconnected,
    ];

    /// The four main properties.
    pub const MAIN: [Property; 4] = [
        Property::DimensionReduction,
        Property::Adjacency,
        Property::StrongAdjacency,
        Property::EndpointCount,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::DimensionReduction => "dimension-reduction",
            Property::Adjacency => "adjacency",
            Property::StrongAdjacency => "strong-adjacency",
            Property::EndpointCount => "endpoint-count",
            Property::PolytopalEndpointCount => "polytopal-endpoint-count",
            Property::OneSubset => "one-subset",
            Property::DRegularity => "d-regularity",
            Property::DConnectedness => "d-connectedness",
            Property::DNeighbors => "d-neighbors",
            Property::Spindle => "spindle",
            Property::ClfShape => "clf-shape",
            Property::Ultraconnected => "ultraconnected",
        }
    }

    pub fn check(self, g: &Spg) -> Verdict {
        match self {
            Property::DimensionReduction => check_dimension_reduction(g),
            Property::Adjacency => check_adjacency(g),
            Property::StrongAdjacency => check_strong_adjacency(g),
            Property::EndpointCount => check_endpoint_count(g, EndpointMode::Polyhedral),
            Property::PolytopalEndpointCount => check_endpoint_count(g, EndpointMode::Polytopal),
            Property::OneSubset => check_one_subset(g),
            Property::DRegularity => check_d_regularity(g),
            Property::DConnectedness => check_d_connectedness(g),
            Property::DNeighbors => check_d_neighbors(g),
            Property::Spindle => check_spindle(g),
            Property::ClfShape => check_clf_shape(g),
            Property::Ultraconnected => check_ultraconnected_spg(g),
        }
    }

    /// Parses a comma separated list; `all` expands to every property and
    /// `main` to the four main ones.
    pub fn parse_list(list: &str) -> Result<Vec<Property>, String> {
        let mut out = Vec::new();
        for token in list.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            match token {
                "all" => out.extend(Property::ALL),
                "main" => out.extend(Property::MAIN),
                other => out.push(other.parse()?),
            }
        }
        let mut seen = HashSet::new();
        out.retain(|p| seen.insert(*p));
        Ok(out)
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Property {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Property::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| format!("unknown property {s:?}"))
    }
}

/// A concrete counterexample to one property.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    /// Two surviving blocks of the restriction to `face` lie in different components.
    SeparatedFace {
        face: Face,
        blocks: [usize; 2],
    },
    /// Two d-sets sharing `d - 1` symbols sit in distinct, non-adjacent blocks.
    UncoveredPair {
        first: DSet,
        second: DSet,
        blocks: [usize; 2],
    },
    /// An edge with no pair of d-sets across it sharing `d - 1` symbols.
    UnwitnessedEdge {
        edge: [usize; 2],
    },
    /// A `(d - 1)`-set contained in a disallowed number of d-sets.
    FaceCount {
        face: Face,
        count: usize,
    },
    LargeBlock {
        block: usize,
        size: usize,
    },
    Degree {
        vertex: usize,
        degree: usize,
    },
    /// Non-adjacent vertices joined by fewer than `d` disjoint paths.
    FewDisjointPaths {
        pair: [usize; 2],
        paths: usize,
    },
    /// A complete graph with at most `d` vertices.
    TooFewVertices {
        vertices: usize,
    },
    NeighborCount {
        dset: DSet,
        count: usize,
    },
    /// Spindles need `n = 2d`.
    SymbolCount {
        n: usize,
        d: usize,
    },
    NoComplementaryPair,
    NotAPath,
    /// Blocks at path positions `i < j < k`; block `j` has no superset of `face`.
    PathGap {
        blocks: [usize; 3],
        first: DSet,
        second: DSet,
        face: Face,
    },
    /// Layer `j` has no superset of `face = first ∩ second`.
    LayerGap {
        layers: [usize; 3],
        first: DSet,
        second: DSet,
        face: Face,
    },
    BrokenFacePath {
        first: DSet,
        second: DSet,
        face: Face,
    },
    /// Adjacency disagrees with sharing `d - 1` symbols.
    UltraMismatch {
        first: DSet,
        second: DSet,
        joined: bool,
    },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::SeparatedFace { face, blocks } => write!(
                f,
                "restriction to {face} separates blocks {} and {}",
                blocks[0], blocks[1]
            ),
            Witness::UncoveredPair {
                first,
                second,
                blocks,
            } => write!(
                f,
                "{first} and {second} share d-1 symbols but blocks {} and {} are not adjacent",
                blocks[0], blocks[1]
            ),
            Witness::UnwitnessedEdge { edge } => write!(
                f,
                "edge ({}, {}) has no pair of d-sets sharing d-1 symbols",
                edge[0], edge[1]
            ),
            Witness::FaceCount { face, count } => {
                write!(f, "{face} lies in {count} d-sets")
            }
            Witness::LargeBlock { block, size } => {
                write!(f, "block {block} holds {size} d-sets")
            }
            Witness::Degree { vertex, degree } => {
                write!(f, "vertex {vertex} has degree {degree}")
            }
            Witness::FewDisjointPaths { pair, paths } => write!(
                f,
                "vertices {} and {} are joined by only {paths} disjoint paths",
                pair[0], pair[1]
            ),
            Witness::TooFewVertices { vertices } => {
                write!(f, "complete graph on only {vertices} vertices")
            }
            Witness::NeighborCount { dset, count } => {
                write!(f, "{dset} has {count} neighbors at distance d-1")
            }
            Witness::SymbolCount { n, d } => write!(f, "n = {n} is not 2d = {}", 2 * d),
            Witness::NoComplementaryPair => write!(f, "no two d-sets partition the symbols"),
            Witness::NotAPath => write!(f, "underlying graph is not a path"),
            Witness::PathGap {
                blocks,
                first,
                second,
                face,
            } => write!(
                f,
                "block {} has no superset of {face} = {first} ∩ {second} (blocks {} and {})",
                blocks[1], blocks[0], blocks[2]
            ),
            Witness::LayerGap {
                layers,
                first,
                second,
                face,
            } => write!(
                f,
                "layer {} has no superset of {face} = {first} ∩ {second} (layers {} and {})",
                layers[1], layers[0], layers[2]
            ),
            Witness::BrokenFacePath {
                first,
                second,
                face,
            } => write!(
                f,
                "no path from {first} to {second} through supersets of {face}"
            ),
            Witness::UltraMismatch {
                first,
                second,
                joined,
            } => {
                if *joined {
                    write!(
                        f,
                        "{first} and {second} are joined but do not share d-1 symbols"
                    )
                } else {
                    write!(
                        f,
                        "{first} and {second} share d-1 symbols but are not joined"
                    )
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "witness", rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Fails(Witness),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(w) => Some(w),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EndpointMode {
    /// Every `(d - 1)`-set lies in at most two d-sets.
    Polyhedral,
    /// Every `(d - 1)`-set lies in zero or two d-sets.
    Polytopal,
}

fn sorted_family(g: &Spg) -> Vec<(usize, &DSet)> {
    let mut all: Vec<(usize, &DSet)> = g.indexed_dsets().collect();
    all.sort_by(|a, b| a.1.cmp(b.1));
    all
}

/// Every restriction to a face of size at most `d` is connected.
///
/// Only the faces `A ∩ A'` are examined: if some `G_F` separates `A` from
/// `A'`, then `F ⊆ A ∩ A'` and every path in `G_{A ∩ A'}` is also a path in
/// `G_F`, so `G_{A ∩ A'}` separates them too.
pub fn check_dimension_reduction(g: &Spg) -> Verdict {
    let family: Vec<&DSet> = g.dsets().collect();
    let mut faces: HashSet<Face> = HashSet::new();
    for (i, a) in family.iter().enumerate() {
        for b in &family[i + 1..] {
            faces.insert(a.meet(b));
        }
    }
    let mut faces: Vec<Face> = faces.into_iter().collect();
    faces.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let adj = g.adjacency();
    let found = faces.par_iter().find_map_first(|face| {
        let keep: Vec<bool> = g
            .blocks()
            .iter()
            .map(|block| block.iter().any(|a| a.contains_face(face)))
            .collect();
        graph::separated_pair(adj, &keep).map(|(u, v)| Witness::SeparatedFace {
            face: face.clone(),
            blocks: [u, v],
        })
    });
    found.map_or(Verdict::Holds, Verdict::Fails)
}

/// d-sets sharing `d - 1` symbols lie in the same or adjacent blocks.
pub fn check_adjacency(g: &Spg) -> Verdict {
    let all = sorted_family(g);
    let d = g.d();
    for (i, &(bu, a)) in all.iter().enumerate() {
        for &(bv, b) in &all[i + 1..] {
            if bu != bv && a.meet_len(b) + 1 == d && !g.has_edge(bu, bv) {
                return Verdict::Fails(Witness::UncoveredPair {
                    first: a.clone(),
                    second: b.clone(),
                    blocks: [bu, bv],
                });
            }
        }
    }
    Verdict::Holds
}

/// Adjacency, and every edge `{i, j}` has `A` in block `i` and `A'` in block
/// `j` sharing `d - 1` symbols. (The source definition writes `A ∈ V` for the
/// first d-set; it is read here as `A ∈ V_i`.)
pub fn check_strong_adjacency(g: &Spg) -> Verdict {
    if let v @ Verdict::Fails(_) = check_adjacency(g) {
        return v;
    }
    for &(i, j) in g.edges() {
        if !edge_is_witnessed(g, i, j) {
            return Verdict::Fails(Witness::UnwitnessedEdge { edge: [i, j] });
        }
    }
    Verdict::Holds
}

fn edge_is_witnessed(g: &Spg, i: usize, j: usize) -> bool {
    let d = g.d();
    g.block(i)
        .iter()
        .any(|a| g.block(j).iter().any(|b| a.meet_len(b) + 1 == d))
}

/// Counts of every `(d - 1)`-set contained in some member of the family.
pub fn facet_counts(g: &Spg) -> BTreeMap<Face, usize> {
    let mut counts = BTreeMap::new();
    for a in g.dsets() {
        for f in a.facets() {
            *counts.entry(f).or_insert(0) += 1;
        }
    }
    counts
}

pub fn check_endpoint_count(g: &Spg, mode: EndpointMode) -> Verdict {
    let bad = |count: usize| match mode {
        EndpointMode::Polyhedral => count > 2,
        EndpointMode::Polytopal => count != 2,
    };
    facet_counts(g)
        .into_iter()
        .find(|&(_, count)| bad(count))
        .map_or(Verdict::Holds, |(face, count)| {
            Verdict::Fails(Witness::FaceCount { face, count })
        })
}

pub fn check_one_subset(g: &Spg) -> Verdict {
    g.blocks()
        .iter()
        .position(|b| b.len() != 1)
        .map_or(Verdict::Holds, |block| {
            Verdict::Fails(Witness::LargeBlock {
                block,
                size: g.block(block).len(),
            })
        })
}

pub fn check_d_regularity(g: &Spg) -> Verdict {
    (0..g.vertex_count())
        .find(|&v| g.degree(v) != g.d())
        .map_or(Verdict::Holds, |vertex| {
            Verdict::Fails(Witness::Degree {
                vertex,
                degree: g.degree(vertex),
            })
        })
}

/// Vertex connectivity at least `d`. A complete graph on `m` vertices has
/// connectivity `m - 1` by convention.
pub fn check_d_connectedness(g: &Spg) -> Verdict {
    let m = g.vertex_count();
    let complete = g.edges().len() == m * (m - 1) / 2;
    if complete {
        return if m > g.d() {
            Verdict::Holds
        } else {
            Verdict::Fails(Witness::TooFewVertices { vertices: m })
        };
    }
    match connectivity::weak_pair(g.adjacency(), g.d()) {
        None => Verdict::Holds,
        Some((s, t, paths)) => Verdict::Fails(Witness::FewDisjointPaths {
            pair: [s, t],
            paths,
        }),
    }
}

/// Every d-set has exactly `d` others sharing `d - 1` symbols with it.
pub fn check_d_neighbors(g: &Spg) -> Verdict {
    let counts = facet_counts(g);
    let d = g.d();
    for (_, a) in sorted_family(g) {
        let neighbors: usize = a.facets().map(|f| counts[&f] - 1).sum();
        if neighbors != d {
            return Verdict::Fails(Witness::NeighborCount {
                dset: a.clone(),
                count: neighbors,
            });
        }
    }
    Verdict::Holds
}

/// The recorded apices if valid, otherwise the first complementary pair in
/// block order.
pub fn find_apices(g: &Spg) -> Option<(DSet, DSet)> {
    if g.n() != 2 * g.d() {
        return None;
    }
    if let Some(pair) = g.apices() {
        return Some(pair.clone());
    }
    let present: HashSet<&DSet> = g.dsets().collect();
    let n = g.n() as u32;
    for a in g.dsets() {
        let complement: Vec<u32> = (0..n).filter(|&s| !a.contains(s)).collect();
        let complement = DSet::from_sorted(complement);
        if present.contains(&complement) {
            return Some((a.clone(), complement));
        }
    }
    None
}

pub fn check_spindle(g: &Spg) -> Verdict {
    if g.n() != 2 * g.d() {
        return Verdict::Fails(Witness::SymbolCount { n: g.n(), d: g.d() });
    }
    match find_apices(g) {
        Some(_) => Verdict::Holds,
        None => Verdict::Fails(Witness::NoComplementaryPair),
    }
}

/// The underlying graph is a path and its blocks, in path order, form a
/// connected layer family.
pub fn check_clf_shape(g: &Spg) -> Verdict {
    let Some(order) = path_order(g) else {
        return Verdict::Fails(Witness::NotAPath);
    };
    let layers: Vec<Vec<DSet>> = order.iter().map(|&b| g.block(b).to_vec()).collect();
    match check_layers(&layers) {
        Verdict::Holds => Verdict::Holds,
        Verdict::Fails(Witness::LayerGap {
            layers,
            first,
            second,
            face,
        }) => Verdict::Fails(Witness::PathGap {
            blocks: layers.map(|l| order[l]),
            first,
            second,
            face,
        }),
        Verdict::Fails(other) => Verdict::Fails(other),
    }
}

/// Singleton blocks, and two blocks are adjacent exactly when their d-sets
/// share `d - 1` symbols.
pub fn check_ultraconnected_spg(g: &Spg) -> Verdict {
    if let v @ Verdict::Fails(_) = check_one_subset(g) {
        return v;
    }
    let m = g.vertex_count();
    for u in 0..m {
        for v in u + 1..m {
            let (a, b) = (&g.block(u)[0], &g.block(v)[0]);
            let close = a.meet_len(b) + 1 == g.d();
            let joined = g.has_edge(u, v);
            if close != joined {
                return Verdict::Fails(Witness::UltraMismatch {
                    first: a.clone(),
                    second: b.clone(),
                    joined,
                });
            }
        }
    }
    Verdict::Holds
}

/// Verdicts for a set of properties, keyed in declaration order.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PropertyReport(BTreeMap<Property, Verdict>);

impl PropertyReport {
    pub fn for_properties(g: &Spg, properties: &[Property]) -> Self {
        PropertyReport(properties.iter().map(|&p| (p, p.check(g))).collect())
    }

    /// Replaces the verdict for `p`, e.g. with one from an oracle.
    pub fn insert(&mut self, p: Property, verdict: Verdict) {
        self.0.insert(p, verdict);
    }

    pub fn get(&self, p: Property) -> Option<&Verdict> {
        self.0.get(&p)
    }

    pub fn holds(&self, p: Property) -> bool {
        self.0.get(&p).is_some_and(Verdict::holds)
    }

    pub fn all_hold(&self) -> bool {
        self.0.values().all(Verdict::holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = (Property, &Witness)> + '_ {
        self.0
            .iter()
            .filter_map(|(&p, v)| v.witness().map(|w| (p, w)))
    }

    pub fn iter(&self) -> impl Iterator<Item = (Property, &Verdict)> + '_ {
        self.0.iter().map(|(&p, v)| (p, v))
    }
}

/// Runs every checker.
pub fn property_report(g: &Spg) -> PropertyReport {
    PropertyReport::for_properties(g, &Property::ALL)
}

impl Witness {
    /// Re-verifies this witness from scratch as a violation of `property` in `g`.
    pub fn confirms(&self, g: &Spg, property: Property) -> bool {
        let d = g.d();
        match (property, self) {
            (Property::DimensionReduction, Witness::SeparatedFace { face, blocks }) => {
                if face.len() > d {
                    return false;
                }
                let Ok(view) = restriction(g, face) else {
                    return false;
                };
                let comps = view.components();
                let comp_of = |b: usize| comps.iter().position(|c| c.contains(&b));
                matches!((comp_of(blocks[0]), comp_of(blocks[1])), (Some(x), Some(y)) if x != y)
            }
            (
                Property::Adjacency | Property::StrongAdjacency,
                Witness::UncoveredPair {
                    first,
                    second,
                    blocks,
                },
            ) => {
                g.block_of(first) == Some(blocks[0])
                    && g.block_of(second) == Some(blocks[1])
                    && blocks[0] != blocks[1]
                    && first.meet_len(second) + 1 == d
                    && !g.has_edge(blocks[0], blocks[1])
            }
            (Property::StrongAdjacency, Witness::UnwitnessedEdge { edge }) => {
                g.has_edge(edge[0], edge[1])
                    && !g
                        .block(edge[0])
                        .iter()
                        .any(|a| g.block(edge[1]).iter().any(|b| a.meet_len(b) + 1 == d))
            }
            (
                Property::EndpointCount | Property::PolytopalEndpointCount,
                Witness::FaceCount { face, count },
            ) => {
                let actual = g.dsets().filter(|a| a.contains_face(face)).count();
                let bad = if property == Property::EndpointCount {
                    actual > 2
                } else {
                    actual != 2
                };
                face.len() + 1 == d && actual == *count && bad
            }
            (
                Property::OneSubset | Property::Ultraconnected,
                Witness::LargeBlock { block, size },
            ) => *block < g.vertex_count() && g.block(*block).len() == *size && *size != 1,
            (Property::DRegularity, Witness::Degree { vertex, degree }) => {
                *vertex < g.vertex_count() && g.degree(*vertex) == *degree && *degree != d
            }
            (Property::DConnectedness, Witness::FewDisjointPaths { pair, paths }) => {
                !g.has_edge(pair[0], pair[1])
                    && pair[0] != pair[1]
                    && *paths < d
                    && connectivity::disjoint_paths(g.adjacency(), pair[0], pair[1], d) == *paths
            }
            (Property::DConnectedness, Witness::TooFewVertices { vertices }) => {
                let m = g.vertex_count();
                *vertices == m && g.edges().len() == m * (m - 1) / 2 && m <= d
            }
            (Property::DNeighbors, Witness::NeighborCount { dset, count }) => {
                let actual = g
                    .dsets()
                    .filter(|b| *b != dset && b.meet_len(dset) + 1 == d)
                    .count();
                g.block_of(dset).is_some() && actual == *count && actual != d
            }
            (Property::Spindle, Witness::SymbolCount { n, d: dd }) => {
                *n == g.n() && *dd == d && *n != 2 * d
            }
            (Property::Spindle, Witness::NoComplementaryPair) => {
                let all: Vec<&DSet> = g.dsets().collect();
                !all.iter()
                    .enumerate()
                    .any(|(i, a)| all[i + 1..].iter().any(|b| complementary(a, b, g.n())))
            }
            (Property::ClfShape, Witness::NotAPath) => path_order(g).is_none(),
            (
                Property::ClfShape,
                Witness::PathGap {
                    blocks,
                    first,
                    second,
                    face,
                },
            ) => {
                let Some(order) = path_order(g) else {
                    return false;
                };
                let pos = |b: usize| order.iter().position(|&x| x == b);
                let (Some(i), Some(j), Some(k)) = (pos(blocks[0]), pos(blocks[1]), pos(blocks[2]))
                else {
                    return false;
                };
                let between = (i < j && j < k) || (k < j && j < i);
                between
                    && g.block_of(first) == Some(blocks[0])
                    && g.block_of(second) == Some(blocks[2])
                    && first.meet(second) == *face
                    && !g.block(blocks[1]).iter().any(|c| c.contains_face(face))
            }
            (
                Property::Ultraconnected,
                Witness::UltraMismatch {
                    first,
                    second,
                    joined,
                },
            ) => {
                let (Some(u), Some(v)) = (g.block_of(first), g.block_of(second)) else {
                    return false;
                };
                let close = first.meet_len(second) + 1 == d;
                g.has_edge(u, v) == *joined && close != *joined
            }
            _ => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_cube_spg, gen_figure1, gen_spindle_family};

    fn ds(v: &[u32]) -> DSet {
        DSet::new(v.to_vec()).unwrap()
    }

    fn path_12_23_13() -> Spg {
        Spg::from_raw(
            3,
            2,
            vec![vec![vec![0, 1]], vec![vec![1, 2]], vec![vec![0, 2]]],
            [(0, 1), (1, 2)],
        )
        .unwrap()
    }

    fn assert_fails_confirmed(g: &Spg, p: Property) -> Witness {
        match p.check(g) {
            Verdict::Fails(w) => {
                assert!(w.confirms(g, p), "{p}: witness {w} does not re-check");
                w
            }
            Verdict::Holds => panic!("{p} unexpectedly holds"),
        }
    }

    #[test]
    fn figure1_main_properties() {
        let g = gen_figure1();
        assert!(check_dimension_reduction(&g).holds());
        assert!(check_adjacency(&g).holds());
        assert!(check_strong_adjacency(&g).holds());
        assert!(check_endpoint_count(&g, EndpointMode::Polyhedral).holds());
        let w = assert_fails_confirmed(&g, Property::OneSubset);
        assert_eq!(w, Witness::LargeBlock { block: 0, size: 2 });
        assert_eq!(find_apices(&g), Some((ds(&[0, 1, 2]), ds(&[3, 4, 5]))));
    }

    #[test]
    fn figure1_face_counts() {
        let g = gen_figure1();
        let counts = facet_counts(&g);
        assert_eq!(counts[&Face::new(vec![3, 4])], 2);
        // Brute recount over all 15 two-subsets of six symbols.
        let mut brute = Vec::new();
        for x in 0..6u32 {
            for y in x + 1..6 {
                let face = Face::new(vec![x, y]);
                brute.push(g.dsets().filter(|a| a.contains_face(&face)).count());
            }
        }
        let polytopal_ok = brute.iter().all(|&c| c == 0 || c == 2);
        assert_eq!(
            check_endpoint_count(&g, EndpointMode::Polytopal).holds(),
            polytopal_ok
        );
    }

    #[test]
    fn path_fails_dimension_reduction_and_adjacency() {
        let g = path_12_23_13();
        let w = assert_fails_confirmed(&g, Property::DimensionReduction);
        assert_eq!(
            w,
            Witness::SeparatedFace {
                face: Face::new(vec![0]),
                blocks: [0, 2]
            }
        );
        let w = assert_fails_confirmed(&g, Property::Adjacency);
        assert_eq!(
            w,
            Witness::UncoveredPair {
                first: ds(&[0, 1]),
                second: ds(&[0, 2]),
                blocks: [0, 2]
            }
        );
    }

    #[test]
    fn single_block_holds_main_properties() {
        let g = Spg::from_raw(4, 2, vec![vec![vec![0, 1], vec![2, 3]]], []).unwrap();
        assert!(check_dimension_reduction(&g).holds());
        assert!(check_adjacency(&g).holds());
        assert!(check_strong_adjacency(&g).holds());
    }

    #[test]
    fn unwitnessed_edge_breaks_strong_adjacency() {
        let g = Spg::from_raw(4, 2, vec![vec![vec![0, 1]], vec![vec![2, 3]]], [(0, 1)]).unwrap();
        assert!(check_adjacency(&g).holds());
        let w = assert_fails_confirmed(&g, Property::StrongAdjacency);
        assert_eq!(w, Witness::UnwitnessedEdge { edge: [0, 1] });
    }

    #[test]
    fn three_supersets_break_endpoint_count() {
        let g = Spg::from_raw(4, 2, vec![vec![vec![0, 1], vec![0, 2], vec![0, 3]]], []).unwrap();
        let w = assert_fails_confirmed(&g, Property::EndpointCount);
        assert_eq!(
            w,
            Witness::FaceCount {
                face: Face::new(vec![0]),
                count: 3
            }
        );
    }

    #[test]
    fn cube_satisfies_auxiliary_properties() {
        let g = gen_cube_spg(3).unwrap();
        for p in [
            Property::OneSubset,
            Property::DRegularity,
            Property::DConnectedness,
            Property::DNeighbors,
            Property::Spindle,
            Property::Ultraconnected,
            Property::PolytopalEndpointCount,
        ] {
            assert!(p.check(&g).holds(), "{p}");
        }
        assert_fails_confirmed(&g, Property::ClfShape);
    }

    #[test]
    fn spindle_family_lacks_d_neighbors() {
        let g = gen_spindle_family(2).unwrap();
        let w = assert_fails_confirmed(&g, Property::DNeighbors);
        assert_eq!(
            w,
            Witness::NeighborCount {
                dset: g.block(0)[0].clone(),
                count: 1
            }
        );
        assert!(check_spindle(&g).holds());
        assert_fails_confirmed(&g, Property::DConnectedness);
        assert_fails_confirmed(&g, Property::DRegularity);
    }

    #[test]
    fn spindle_needs_n_equal_2d() {
        let g = path_12_23_13();
        assert_eq!(
            check_spindle(&g),
            Verdict::Fails(Witness::SymbolCount { n: 3, d: 2 })
        );
    }

    #[test]
    fn small_complete_graph_is_not_d_connected() {
        let g = Spg::from_raw(4, 2, vec![vec![vec![0, 1]], vec![vec![0, 2]]], [(0, 1)]).unwrap();
        let w = assert_fails_confirmed(&g, Property::DConnectedness);
        assert_eq!(w, Witness::TooFewVertices { vertices: 2 });
    }

    #[test]
    fn property_names_round_trip() {
        for p in Property::ALL {
            assert_eq!(p.name().parse::<Property>().unwrap(), p);
        }
        assert_eq!(
            Property::parse_list("main").unwrap(),
            Property::MAIN.to_vec()
        );
        assert!(Property::parse_list("bogus").is_err());
    }

    #[test]
    fn report_is_deterministic_and_serializable() {
        let g = gen_figure1();
        let r1 = serde_json::to_string(&property_report(&g)).unwrap();
        let r2 = serde_json::to_string(&property_report(&g)).unwrap();
        assert_eq!(r1, r2);
        let back: PropertyReport = serde_json::from_str(&r1).unwrap();
        assert_eq!(back, property_report(&g));
        assert!(r1.starts_with("{\"dimension-reduction\":{\"status\":\"holds\"}"));
    }
}

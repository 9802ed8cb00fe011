//! The superpolynomial construction from a Hamiltonian path on the dual graph
//! of an even-dimensional cyclic polytope.
//!
//! Symbols `0..k` are the facets of one copy of the polar, `k..2k` their
//! primed images (`s' = s + k`). Facet `i` of the path gives
//! `A_i = Z_i ∪ Z_i'`, and each consecutive pair is bridged by two extra
//! d-sets that swap only the unprimed (resp. primed) half.

use serde::Serialize;

use crate::error::SpgError;
use crate::spg::Spg;
use crate::symbols::{combinations, DSet, Symbol, SymbolSet};

/// Gale's evenness condition: between any two non-members there is an even
/// number of members.
fn satisfies_gale(members: &[Symbol], k: usize) -> bool {
    let inside = |s: usize| members.binary_search(&(s as Symbol)).is_ok();
    let outside: Vec<usize> = (0..k).filter(|&s| !inside(s)).collect();
    outside.windows(2).all(|w| {
        let between = (w[0] + 1..w[1]).filter(|&s| inside(s)).count();
        between % 2 == 0
    })
}

/// Facets of the cyclic polytope with `k` vertices in dimension `half_d`,
/// as `half_d`-subsets of `0..k` in lexicographic order.
pub fn gale_facets(k: usize, half_d: usize) -> Result<Vec<DSet>, SpgError> {
    if half_d < 2 || half_d % 2 != 0 || k <= half_d {
        return Err(SpgError::BadParameter(format!(
            "need k > half_d >= 2 with half_d even, got k = {k}, half_d = {half_d}"
        )));
    }
    Ok(combinations(k, half_d)
        .into_iter()
        .filter(|f| satisfies_gale(f, k))
        .map(DSet::from_sorted)
        .collect())
}

/// `t = n / (n - d/2) * C(n/2 - d/4, d/4)`, the facet count of the
/// `d/2`-dimensional cyclic polytope on `n/2` vertices.
pub fn cyclic_facet_count(n: usize, d: usize) -> Result<usize, SpgError> {
    if d % 4 != 0 || n % 2 != 0 || n <= d / 2 {
        return Err(SpgError::BadParameter(format!(
            "facet count formula needs d = 0 mod 4 and n even, got n = {n}, d = {d}"
        )));
    }
    let top = n / 2 - d / 4;
    let choose = binomial(top, d / 4);
    let numerator = n * choose;
    let denominator = n - d / 2;
    if numerator % denominator != 0 {
        return Err(SpgError::BadParameter(format!(
            "facet count {numerator}/{denominator} is not an integer"
        )));
    }
    Ok(numerator / denominator)
}

fn binomial(n: usize, r: usize) -> usize {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    (0..r).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Adjacency lists joining facets that share all but one member.
pub fn dual_graph(facets: &[DSet]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); facets.len()];
    for u in 0..facets.len() {
        for v in u + 1..facets.len() {
            if facets[u].meet_len(&facets[v]) + 1 == facets[u].len() {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
    }
    adj
}

/// Deterministic backtracking search. Starts from vertex 0 (then 1, 2, ..
/// if that fails); extends to the unvisited neighbor with the fewest
/// unvisited neighbors, ties broken by index.
pub fn hamiltonian_path(adj: &[Vec<usize>]) -> Result<Vec<usize>, SpgError> {
    search_path(adj, false)
}

/// As [`hamiltonian_path`], but vertices two steps apart along the path are
/// never adjacent.
///
/// The construction needs this: with `Z_i` and `Z_{i+2}` sharing all but one
/// member, `W_{i,2}` and `W_{i+1,1}` share `d - 1` symbols while their
/// blocks are at distance two, which breaks adjacency.
pub fn hamiltonian_path_without_short_chords(adj: &[Vec<usize>]) -> Result<Vec<usize>, SpgError> {
    search_path(adj, true)
}

fn search_path(adj: &[Vec<usize>], avoid_chords: bool) -> Result<Vec<usize>, SpgError> {
    let n = adj.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    for start in 0..n {
        let mut visited = vec![false; n];
        let mut path = vec![start];
        visited[start] = true;
        if extend(adj, avoid_chords, &mut visited, &mut path) {
            return Ok(path);
        }
    }
    Err(SpgError::NoHamiltonianPath(n))
}

fn extend(
    adj: &[Vec<usize>],
    avoid_chords: bool,
    visited: &mut [bool],
    path: &mut Vec<usize>,
) -> bool {
    if path.len() == adj.len() {
        return true;
    }
    let last = *path.last().expect("path is nonempty");
    let before = path.len().checked_sub(2).map(|i| path[i]);
    let free_degree = |v: usize, visited: &[bool]| adj[v].iter().filter(|&&w| !visited[w]).count();
    let mut candidates: Vec<usize> = adj[last]
        .iter()
        .copied()
        .filter(|&v| !visited[v])
        .filter(|&v| !avoid_chords || before.map_or(true, |b| !adj[b].contains(&v)))
        .collect();
    candidates.sort_by_key(|&v| (free_degree(v, visited), v));
    for v in candidates {
        visited[v] = true;
        path.push(v);
        if extend(adj, avoid_chords, visited, path) {
            return true;
        }
        path.pop();
        visited[v] = false;
    }
    false
}

/// Intermediate data of the construction, exposed for inspection.
#[derive(Debug, Clone, Serialize)]
pub struct CyclicBuild {
    pub k: usize,
    pub half_d: usize,
    pub facets: Vec<DSet>,
    pub dual_edges: Vec<(usize, usize)>,
    /// Facet indices in Hamiltonian path order.
    pub ham_path: Vec<usize>,
    /// Whether facets two steps apart along the path are never adjacent.
    /// Only then do the bridges satisfy adjacency.
    pub chordless: bool,
    /// Primed symbol of `s` is `s + involution_offset`.
    pub involution_offset: usize,
}

impl CyclicBuild {
    pub fn new(n: usize, d: usize) -> Result<Self, SpgError> {
        if d < 8 || d % 4 != 0 || n % 2 != 0 || n <= d {
            return Err(SpgError::BadParameter(format!(
                "cyclic construction needs d >= 8, d = 0 mod 4, n even and n > d; got n = {n}, d = {d}"
            )));
        }
        let k = n / 2;
        let half_d = d / 2;
        let facets = gale_facets(k, half_d)?;
        let adj = dual_graph(&facets);
        let dual_edges = adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
            .collect();
        let (ham_path, chordless) = match hamiltonian_path_without_short_chords(&adj) {
            Ok(path) => (path, true),
            Err(_) => (hamiltonian_path(&adj)?, false),
        };
        Ok(CyclicBuild {
            k,
            half_d,
            facets,
            dual_edges,
            ham_path,
            chordless,
            involution_offset: k,
        })
    }

    pub fn t(&self) -> usize {
        self.ham_path.len()
    }

    /// `A_i = Z_i ∪ Z_i'` for the `i`-th facet along the path (0-based).
    pub fn path_dset(&self, i: usize) -> DSet {
        let z = &self.facets[self.ham_path[i]];
        let mut members: Vec<Symbol> = z.members().to_vec();
        members.extend(z.members().iter().map(|&s| s + self.k as Symbol));
        DSet::new(members).expect("Z and Z' are disjoint")
    }

    /// `W_{i,half} = A_i ∪ (A_{i+1} ∩ D_i ∩ Σ) \ (A_i ∩ D_i ∩ Σ)` where `Σ` is the
    /// unprimed half for `half = 0` and the primed half for `half = 1`, and
    /// `D_i = A_i △ A_{i+1}`.
    pub fn bridge_dset(&self, i: usize, half: usize) -> DSet {
        let (a, b) = (self.path_dset(i), self.path_dset(i + 1));
        let k = self.k as Symbol;
        let in_half = |s: Symbol| if half == 0 { s < k } else { s >= k };
        let mut members: Vec<Symbol> = a
            .members()
            .iter()
            .copied()
            .filter(|&s| !(in_half(s) && !b.contains(s)))
            .collect();
        members.extend(
            b.members()
                .iter()
                .copied()
                .filter(|&s| in_half(s) && !a.contains(s)),
        );
        DSet::new(members).expect("swap keeps members distinct")
    }

    /// Blocks `V_1, W_{1,1}, W_{1,2}, V_2, .., V_t`; each `W_{i,l}` is joined
    /// to `V_i` and `V_{i+1}` and there are no other edges.
    pub fn to_spg(&self) -> Result<Spg, SpgError> {
        let t = self.t();
        let mut blocks = Vec::with_capacity(3 * t - 2);
        let mut edges = Vec::with_capacity(4 * (t - 1));
        for i in 0..t {
            blocks.push(vec![self.path_dset(i)]);
            if i + 1 < t {
                blocks.push(vec![self.bridge_dset(i, 0)]);
                blocks.push(vec![self.bridge_dset(i, 1)]);
                let v = 3 * i;
                for w in [v + 1, v + 2] {
                    edges.push((v, w));
                    edges.push((w, v + 3));
                }
            }
        }
        let k = self.k;
        let labels = (1..=k)
            .map(|s| s.to_string())
            .chain((1..=k).map(|s| format!("{s}'")))
            .collect();
        Spg::new(
            SymbolSet::with_labels(2 * k, labels)?,
            2 * self.half_d,
            blocks,
            edges,
        )
    }
}

pub fn gen_cyclic_construction(n: usize, d: usize) -> Result<Spg, SpgError> {
    CyclicBuild::new(n, d)?.to_spg()
}

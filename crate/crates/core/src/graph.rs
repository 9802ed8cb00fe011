//! Small adjacency-list helpers shared by the checkers and operations.

use std::collections::VecDeque;

pub const UNREACHED: usize = usize::MAX;

/// Build sorted adjacency lists from an edge list.
pub fn adjacency_lists(vertex_count: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); vertex_count];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    for list in &mut adj {
        list.sort_unstable();
        list.dedup();
    }
    adj
}

/// Breadth-first distances from `source`; unreachable vertices get `UNREACHED`.
pub fn bfs_distances(adj: &[Vec<usize>], source: usize) -> Vec<usize> {
    bfs_distances_within(adj, source, |_| true)
}

/// Breadth-first distances restricted to vertices accepted by `keep`.
pub fn bfs_distances_within(
    adj: &[Vec<usize>],
    source: usize,
    keep: impl Fn(usize) -> bool,
) -> Vec<usize> {
    let mut dist = vec![UNREACHED; adj.len()];
    if !keep(source) {
        return dist;
    }
    dist[source] = 0;
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if dist[v] == UNREACHED && keep(v) {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Component labels of the subgraph induced by `keep`; dropped vertices get `UNREACHED`.
/// Components are numbered in order of their least vertex.
pub fn induced_components(adj: &[Vec<usize>], keep: &[bool]) -> (Vec<usize>, usize) {
    let mut label = vec![UNREACHED; adj.len()];
    let mut count = 0;
    let mut stack = Vec::new();
    for start in 0..adj.len() {
        if !keep[start] || label[start] != UNREACHED {
            continue;
        }
        label[start] = count;
        stack.push(start);
        while let Some(u) = stack.pop() {
            for &v in &adj[u] {
                if keep[v] && label[v] == UNREACHED {
                    label[v] = count;
                    stack.push(v);
                }
            }
        }
        count += 1;
    }
    (label, count)
}

/// Returns a pair of kept vertices in different components, if any.
pub fn separated_pair(adj: &[Vec<usize>], keep: &[bool]) -> Option<(usize, usize)> {
    let (label, count) = induced_components(adj, keep);
    if count <= 1 {
        return None;
    }
    let first = (0..adj.len()).find(|&v| label[v] == 0)?;
    let second = (0..adj.len()).find(|&v| label[v] == 1)?;
    Some((first, second))
}

/// Eccentricities and the lexicographically first farthest pair realizing the diameter.
/// Assumes a connected graph.
pub fn diameter_with_pair(adj: &[Vec<usize>]) -> (usize, (usize, usize)) {
    let mut best = (0, (0, 0));
    for u in 0..adj.len() {
        let dist = bfs_distances(adj, u);
        for (v, &d) in dist.iter().enumerate().skip(u + 1) {
            if d != UNREACHED && d > best.0 {
                best = (d, (u, v));
            }
        }
    }
    best
}

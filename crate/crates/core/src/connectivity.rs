//! Vertex connectivity through unit-capacity max flow on the split graph.

use std::collections::VecDeque;

/// Residual network where every vertex `v` becomes `v_in -> v_out` with capacity 1.
struct SplitNetwork {
    head: Vec<usize>,
    cap: Vec<i32>,
    next: Vec<usize>,
    first: Vec<usize>,
}

const NIL: usize = usize::MAX;

impl SplitNetwork {
    fn new(adj: &[Vec<usize>]) -> Self {
        let nodes = 2 * adj.len();
        let mut net = SplitNetwork {
            head: Vec::new(),
            cap: Vec::new(),
            next: Vec::new(),
            first: vec![NIL; nodes],
        };
        for (v, list) in adj.iter().enumerate() {
            net.arc(2 * v, 2 * v + 1, 1);
            for &w in list {
                // v_out -> w_in
                net.arc(2 * v + 1, 2 * w, 1);
            }
        }
        net
    }

    fn arc(&mut self, from: usize, to: usize, cap: i32) {
        for (src, dst, c) in [(from, to, cap), (to, from, 0)] {
            self.head.push(dst);
            self.cap.push(c);
            self.next.push(self.first[src]);
            self.first[src] = self.head.len() - 1;
        }
    }

    /// Number of augmenting paths found, stopping once `limit` is reached.
    fn max_flow(&mut self, source: usize, sink: usize, limit: usize) -> usize {
        let mut flow = 0;
        let nodes = self.first.len();
        while flow < limit {
            let mut via = vec![NIL; nodes];
            let mut seen = vec![false; nodes];
            seen[source] = true;
            let mut queue = VecDeque::from([source]);
            while let Some(u) = queue.pop_front() {
                if u == sink {
                    break;
                }
                let mut e = self.first[u];
                while e != NIL {
                    let w = self.head[e];
                    if self.cap[e] > 0 && !seen[w] {
                        seen[w] = true;
                        via[w] = e;
                        queue.push_back(w);
                    }
                    e = self.next[e];
                }
            }
            if !seen[sink] {
                break;
            }
            let mut w = sink;
            while w != source {
                let e = via[w];
                self.cap[e] -= 1;
                self.cap[e ^ 1] += 1;
                w = self.head[e ^ 1];
            }
            flow += 1;
        }
        flow
    }
}

/// Maximum number of internally vertex-disjoint paths between non-adjacent
/// `s` and `t`, capped at `limit`.
pub fn disjoint_paths(adj: &[Vec<usize>], s: usize, t: usize, limit: usize) -> usize {
    let mut net = SplitNetwork::new(adj);
    net.max_flow(2 * s + 1, 2 * t, limit)
}

/// First non-adjacent pair `(s, t)` joined by fewer than `k` disjoint paths,
/// with the path count. `None` when every non-adjacent pair has at least `k`.
pub fn weak_pair(adj: &[Vec<usize>], k: usize) -> Option<(usize, usize, usize)> {
    let n = adj.len();
    for s in 0..n {
        for t in s + 1..n {
            if adj[s].binary_search(&t).is_ok() {
                continue;
            }
            let paths = disjoint_paths(adj, s, t, k);
            if paths < k {
                return Some((s, t, paths));
            }
        }
    }
    None
}

//! Integral maximum flow (Dinic) and directed cycle detection.

use std::collections::VecDeque;

#[derive(Clone, Debug)]
struct Edge {
    to: usize,
    cap: i64,
}

/// Flow network with integral capacities. Edges are stored in pairs, so edge
/// `e ^ 1` is the reverse of edge `e`.
#[derive(Clone, Debug)]
pub struct FlowNetwork {
    adj: Vec<Vec<usize>>,
    edges: Vec<Edge>,
    original: Vec<i64>,
}

impl FlowNetwork {
    pub fn new(nodes: usize) -> FlowNetwork {
        FlowNetwork { adj: vec![Vec::new(); nodes], edges: Vec::new(), original: Vec::new() }
    }

    /// Adds `from → to` and returns its edge id.
    pub fn add_edge(&mut self, from: usize, to: usize, cap: i64) -> usize {
        let id = self.edges.len();
        self.edges.push(Edge { to, cap });
        self.edges.push(Edge { to: from, cap: 0 });
        self.original.push(cap);
        self.original.push(0);
        self.adj[from].push(id);
        self.adj[to].push(id + 1);
        id
    }

    pub fn flow(&self, edge: usize) -> i64 {
        self.original[edge] - self.edges[edge].cap
    }

    fn levels(&self, s: usize) -> Vec<i64> {
        let mut level = vec![-1; self.adj.len()];
        level[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(v) = q.pop_front() {
            for &e in &self.adj[v] {
                let Edge { to, cap } = self.edges[e];
                if cap > 0 && level[to] < 0 {
                    level[to] = level[v] + 1;
                    q.push_back(to);
                }
            }
        }
        level
    }

    fn augment(&mut self, v: usize, t: usize, limit: i64, level: &[i64], it: &mut [usize]) -> i64 {
        if v == t {
            return limit;
        }
        while it[v] < self.adj[v].len() {
            let e = self.adj[v][it[v]];
            let Edge { to, cap } = self.edges[e];
            if cap > 0 && level[to] == level[v] + 1 {
                let pushed = self.augment(to, t, limit.min(cap), level, it);
                if pushed > 0 {
                    self.edges[e].cap -= pushed;
                    self.edges[e ^ 1].cap += pushed;
                    return pushed;
                }
            }
            it[v] += 1;
        }
        0
    }

    pub fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        let mut total = 0;
        loop {
            let level = self.levels(s);
            if level[t] < 0 {
                return total;
            }
            let mut it = vec![0; self.adj.len()];
            loop {
                let f = self.augment(s, t, i64::MAX, &level, &mut it);
                if f == 0 {
                    break;
                }
                total += f;
            }
        }
    }
}

/// Some directed cycle of the graph given by adjacency lists of `(target, label)`
/// pairs, as the list of labels along it.
pub fn find_cycle(adj: &[Vec<(usize, usize)>]) -> Option<Vec<usize>> {
    // 0 = unvisited, 1 = on stack, 2 = done
    let mut state = vec![0u8; adj.len()];
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; adj.len()];
    for root in 0..adj.len() {
        if state[root] != 0 {
            continue;
        }
        let mut stack = vec![(root, 0usize)];
        state[root] = 1;
        while let Some(&mut (v, ref mut i)) = stack.last_mut() {
            if *i < adj[v].len() {
                let (w, label) = adj[v][*i];
                *i += 1;
                match state[w] {
                    0 => {
                        state[w] = 1;
                        parent[w] = Some((v, label));
                        stack.push((w, 0));
                    }
                    1 => {
                        let mut labels = vec![label];
                        let mut x = v;
                        while x != w {
                            let (p, l) = parent[x].unwrap();
                            labels.push(l);
                            x = p;
                        }
                        labels.reverse();
                        return Some(labels);
                    }
                    _ => {}
                }
            } else {
                state[v] = 2;
                stack.pop();
            }
        }
    }
    None
}

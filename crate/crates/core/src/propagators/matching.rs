//! Bipartite value graphs, Hopcroft-Karp matching and Régin edge filtering.

use std::collections::VecDeque;

/// Bipartite graph with edges stored from the left side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    n_right: usize,
    adj: Vec<Vec<usize>>,
}

impl BipartiteGraph {
    pub fn new(n_left: usize, n_right: usize) -> Self {
        BipartiteGraph {
            n_right,
            adj: vec![Vec::new(); n_left],
        }
    }

    pub fn n_left(&self) -> usize {
        self.adj.len()
    }

    pub fn n_right(&self) -> usize {
        self.n_right
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(v < self.n_right);
        if !self.adj[u].contains(&v) {
            self.adj[u].push(v);
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(&v)
    }

    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adj[u]
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, vs)| vs.iter().map(move |&v| (u, v)))
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum()
    }

    /// Clears all edges, keeping the node counts.
    pub fn clear_edges(&mut self) {
        self.adj.iter_mut().for_each(Vec::clear);
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    left: Vec<Option<usize>>,
    right: Vec<Option<usize>>,
}

impl Matching {
    pub fn empty(n_left: usize, n_right: usize) -> Self {
        Matching {
            left: vec![None; n_left],
            right: vec![None; n_right],
        }
    }

    pub fn size(&self) -> usize {
        self.left.iter().filter(|m| m.is_some()).count()
    }

    pub fn mate_of_left(&self, u: usize) -> Option<usize> {
        self.left[u]
    }

    pub fn mate_of_right(&self, v: usize) -> Option<usize> {
        self.right[v]
    }

    pub fn covers_left(&self) -> bool {
        self.left.iter().all(Option::is_some)
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.left
            .iter()
            .enumerate()
            .filter_map(|(u, m)| m.map(|v| (u, v)))
            .collect()
    }

    fn link(&mut self, u: usize, v: usize) {
        self.left[u] = Some(v);
        self.right[v] = Some(u);
    }

    /// Drops pairs that are not edges of `g` and resizes to `g`.
    fn repair(&mut self, g: &BipartiteGraph) {
        self.left.resize(g.n_left(), None);
        self.right.resize(g.n_right(), None);
        for u in 0..g.n_left() {
            if let Some(v) = self.left[u] {
                if !g.has_edge(u, v) || self.right[v] != Some(u) {
                    self.left[u] = None;
                    if self.right[v] == Some(u) {
                        self.right[v] = None;
                    }
                }
            }
        }
        for v in 0..g.n_right() {
            if let Some(u) = self.right[v] {
                if self.left[u] != Some(v) {
                    self.right[v] = None;
                }
            }
        }
    }
}

const INF: usize = usize::MAX;

/// Maximum-cardinality matching by Hopcroft-Karp, optionally seeded from a
/// previous matching whose vanished pairs are discarded first.
pub fn maximum_matching(g: &BipartiteGraph, warm: Option<&Matching>) -> Matching {
    let mut m = match warm {
        Some(w) => {
            let mut m = w.clone();
            m.repair(g);
            m
        }
        None => Matching::empty(g.n_left(), g.n_right()),
    };
    let mut dist = vec![INF; g.n_left()];
    while bfs_layers(g, &m, &mut dist) {
        for u in 0..g.n_left() {
            if m.left[u].is_none() {
                augment(g, &mut m, &mut dist, u);
            }
        }
    }
    m
}

fn bfs_layers(g: &BipartiteGraph, m: &Matching, dist: &mut [usize]) -> bool {
    let mut queue = VecDeque::new();
    for u in 0..g.n_left() {
        if m.left[u].is_none() {
            dist[u] = 0;
            queue.push_back(u);
        } else {
            dist[u] = INF;
        }
    }
    let mut found = false;
    while let Some(u) = queue.pop_front() {
        for &v in g.neighbors(u) {
            match m.right[v] {
                None => found = true,
                Some(w) if dist[w] == INF => {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
                Some(_) => {}
            }
        }
    }
    found
}

fn augment(g: &BipartiteGraph, m: &mut Matching, dist: &mut [usize], u: usize) -> bool {
    for i in 0..g.neighbors(u).len() {
        let v = g.neighbors(u)[i];
        let ok = match m.right[v] {
            None => true,
            Some(w) => dist[w] == dist[u].wrapping_add(1) && augment(g, m, dist, w),
        };
        if ok {
            m.link(u, v);
            return true;
        }
    }
    dist[u] = INF;
    false
}

/// Edges of `g` that belong to no maximum matching. `m` must be maximum
/// and cover the left side.
///
/// Matched edges are oriented left to right and free edges right to left;
/// a free edge survives iff its ends share a strongly connected component
/// or its right end is reachable from an unmatched right node.
pub fn regin_filter(g: &BipartiteGraph, m: &Matching) -> Vec<(usize, usize)> {
    let nl = g.n_left();
    let nr = g.n_right();
    let n = nl + nr;
    let mut out_adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (u, v) in g.edges() {
        if m.left[u] == Some(v) {
            out_adj[u].push(nl + v);
        } else {
            out_adj[nl + v].push(u);
        }
    }

    let comp = tarjan_scc(&out_adj);

    let mut reach = vec![false; n];
    let mut queue: VecDeque<usize> = VecDeque::new();
    for v in 0..nr {
        if m.right[v].is_none() {
            reach[nl + v] = true;
            queue.push_back(nl + v);
        }
    }
    while let Some(x) = queue.pop_front() {
        for &y in &out_adj[x] {
            if !reach[y] {
                reach[y] = true;
                queue.push_back(y);
            }
        }
    }

    g.edges()
        .filter(|&(u, v)| m.left[u] != Some(v) && comp[u] != comp[nl + v] && !reach[nl + v])
        .collect()
}

/// Component index of every node, via an iterative Tarjan traversal.
pub fn tarjan_scc(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    let mut index = vec![INF; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![INF; n];
    let mut stack = Vec::new();
    let mut call: Vec<(usize, usize)> = Vec::new();
    let mut next_index = 0;
    let mut next_comp = 0;

    for root in 0..n {
        if index[root] != INF {
            continue;
        }
        call.push((root, 0));
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (x, ref mut edge)) = call.last_mut() {
            if *edge < adj[x].len() {
                let y = adj[x][*edge];
                *edge += 1;
                if index[y] == INF {
                    index[y] = next_index;
                    low[y] = next_index;
                    next_index += 1;
                    stack.push(y);
                    on_stack[y] = true;
                    call.push((y, 0));
                } else if on_stack[y] {
                    low[x] = low[x].min(index[y]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[x]);
                }
                if low[x] == index[x] {
                    while let Some(y) = stack.pop() {
                        on_stack[y] = false;
                        comp[y] = next_comp;
                        if y == x {
                            break;
                        }
                    }
                    next_comp += 1;
                }
            }
        }
    }
    comp
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(nl: usize, nr: usize, edges: &[(usize, usize)]) -> BipartiteGraph {
        let mut g = BipartiteGraph::new(nl, nr);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    #[test]
    fn empty_edges() {
        let g = BipartiteGraph::new(3, 3);
        assert_eq!(maximum_matching(&g, None).size(), 0);
    }

    #[test]
    fn complete_3x3() {
        let edges: Vec<_> = (0..3).flat_map(|u| (0..3).map(move |v| (u, v))).collect();
        let g = graph(3, 3, &edges);
        let m = maximum_matching(&g, None);
        assert_eq!(m.size(), 3);
        assert!(regin_filter(&g, &m).is_empty());
    }

    #[test]
    fn perfect_matching_only() {
        let g = graph(3, 3, &[(0, 1), (1, 2), (2, 0)]);
        let m = maximum_matching(&g, None);
        assert!(m.covers_left());
        assert!(regin_filter(&g, &m).is_empty());
    }

    #[test]
    fn forced_edge_prunes_competitors() {
        // Left 0 can only use right 0; left 1 must move to right 1.
        let g = graph(2, 2, &[(0, 0), (1, 0), (1, 1)]);
        let m = maximum_matching(&g, None);
        assert_eq!(regin_filter(&g, &m), vec![(1, 0)]);
    }

    #[test]
    fn warm_start_repairs_vanished_pairs() {
        let g1 = graph(2, 2, &[(0, 0), (0, 1), (1, 1)]);
        let m1 = maximum_matching(&g1, None);
        let g2 = graph(2, 2, &[(0, 1), (1, 0)]);
        let m2 = maximum_matching(&g2, Some(&m1));
        assert_eq!(m2.size(), 2);
        for (u, v) in m2.pairs() {
            assert!(g2.has_edge(u, v));
        }
    }

    #[test]
    fn free_right_nodes_keep_edges() {
        // One left node, three right nodes: every edge is in some maximum matching.
        let g = graph(1, 3, &[(0, 0), (0, 1), (0, 2)]);
        let m = maximum_matching(&g, None);
        assert!(regin_filter(&g, &m).is_empty());
    }

    #[test]
    fn scc_on_cycle_and_chain() {
        let adj = vec![vec![1], vec![2], vec![0, 3], vec![]];
        let c = tarjan_scc(&adj);
        assert_eq!(c[0], c[1]);
        assert_eq!(c[1], c[2]);
        assert_ne!(c[2], c[3]);
    }
}

//! Exact isomorphism of small graphs through canonical labeling.
//!
//! Color refinement followed by individualization of the first smallest
//! non-singleton cell; the certificate is the lexicographically least relabeled
//! edge list over all leaves. There is no automorphism pruning, which is fine
//! for the graphs this crate compares (at most a few hundred vertices, with
//! automorphism groups of size at most a few thousand).

use std::collections::BTreeMap;

use crate::complex::{skeleton, CellComplex, ComplexError, Skeleton};

pub const DEFAULT_ISO_BOUND: usize = 64;

/// Undirected vertex-colored graph on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    pub colors: Vec<u32>,
    pub adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Graph {
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for l in &mut adj {
            l.sort_unstable();
            l.dedup();
        }
        Graph { colors: vec![0; n], adj }
    }

    pub fn with_colors(mut self, colors: Vec<u32>) -> Graph {
        assert_eq!(colors.len(), self.adj.len());
        self.colors = colors;
        self
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn complete(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        Graph::new(n, &edges)
    }

    pub fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, &edges)
    }

    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::new(n, &edges)
    }

    /// Heawood graph in its LCF form [5, -5]^7.
    pub fn heawood() -> Graph {
        let mut edges: Vec<_> = (0..14).map(|i| (i, (i + 1) % 14)).collect();
        for i in (0..14).step_by(2) {
            edges.push((i, (i + 5) % 14));
        }
        Graph::new(14, &edges)
    }

    pub fn from_skeleton(s: &Skeleton) -> Graph {
        let pos: BTreeMap<_, _> = s.vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let edges: Vec<_> = s.edges.iter().map(|(a, b)| (pos[a], pos[b])).collect();
        Graph::new(s.vertices.len(), &edges)
    }

    /// Hasse diagram of a complex: one vertex per cell colored by rank, an
    /// edge for each covering pair (vertex in edge, edge on face border).
    pub fn hasse(x: &CellComplex) -> Graph {
        let pos: BTreeMap<_, _> = x.cells().iter().enumerate().map(|(i, c)| (c.id, i)).collect();
        let mut edges = Vec::new();
        for &e in x.edges() {
            let (a, b) = x.edge_ends(e);
            edges.push((pos[&a], pos[&e]));
            edges.push((pos[&b], pos[&e]));
        }
        for (f, b) in x.borders() {
            for e in &b.edges {
                edges.push((pos[e], pos[f]));
            }
        }
        let colors = x.cells().iter().map(|c| c.rank as u32).collect();
        Graph::new(x.len(), &edges).with_colors(colors)
    }

    pub fn is_bipartite(&self) -> bool {
        let mut side = vec![None; self.len()];
        for s in 0..self.len() {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(false);
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &w in &self.adj[u] {
                    match side[w] {
                        None => {
                            side[w] = Some(!side[u].unwrap());
                            stack.push(w);
                        }
                        Some(x) if x == side[u].unwrap() => return false,
                        _ => {}
                    }
                }
            }
        }
        true
    }

    /// Length of a shortest cycle, if any.
    pub fn girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for s in 0..self.len() {
            let mut dist = vec![usize::MAX; self.len()];
            let mut parent = vec![usize::MAX; self.len()];
            dist[s] = 0;
            let mut queue = std::collections::VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        let len = dist[u] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }
}

/// Canonical certificate: vertex colors and sorted edge list in canonical
/// order. Two graphs are isomorphic iff their certificates are equal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Certificate {
    pub colors: Vec<u32>,
    pub edges: Vec<(usize, usize)>,
}

/// Ranks the values of `keys` densely in sorted order.
fn dense_ranks<K: Ord + Clone>(keys: &[K]) -> Vec<usize> {
    let mut sorted: Vec<K> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter().map(|k| sorted.binary_search(k).unwrap()).collect()
}

fn refine(g: &Graph, mut part: Vec<usize>) -> Vec<usize> {
    let mut cells = part.iter().max().map_or(0, |m| m + 1);
    loop {
        let keys: Vec<(usize, Vec<usize>)> = (0..g.len())
            .map(|v| {
                let mut nb: Vec<usize> = g.adj[v].iter().map(|&w| part[w]).collect();
                nb.sort_unstable();
                (part[v], nb)
            })
            .collect();
        let next = dense_ranks(&keys);
        let count = next.iter().max().map_or(0, |m| m + 1);
        part = next;
        if count == cells {
            return part;
        }
        cells = count;
    }
}

fn certificate_of(g: &Graph, part: &[usize]) -> Certificate {
    let n = g.len();
    let mut colors = vec![0; n];
    for v in 0..n {
        colors[part[v]] = g.colors[v];
    }
    let mut edges: Vec<(usize, usize)> = Vec::with_capacity(g.edge_count());
    for v in 0..n {
        for &w in &g.adj[v] {
            if v < w {
                let (a, b) = (part[v], part[w]);
                edges.push((a.min(b), a.max(b)));
            }
        }
    }
    edges.sort_unstable();
    Certificate { colors, edges }
}

fn search(g: &Graph, part: Vec<usize>, best: &mut Option<Certificate>) {
    let part = refine(g, part);
    let n = g.len();
    let mut sizes = vec![0usize; n];
    for &c in &part {
        sizes[c] += 1;
    }
    let target = (0..n).filter(|&c| sizes[c] > 1).min_by_key(|&c| (sizes[c], c));
    let Some(cell) = target else {
        let cert = certificate_of(g, &part);
        if best.as_ref().is_none_or(|b| cert < *b) {
            *best = Some(cert);
        }
        return;
    };
    for v in (0..n).filter(|&v| part[v] == cell) {
        let keys: Vec<(usize, bool)> = (0..n).map(|w| (part[w], w != v)).collect();
        search(g, dense_ranks(&keys), best);
    }
}

/// Canonical certificate of a vertex-colored graph.
pub fn canonical_form(g: &Graph) -> Certificate {
    let initial = dense_ranks(&g.colors);
    let mut best = None;
    search(g, initial, &mut best);
    best.unwrap_or(Certificate { colors: Vec::new(), edges: Vec::new() })
}

pub fn isomorphic(g: &Graph, h: &Graph, bound: usize) -> Result<bool, ComplexError> {
    for size in [g.len(), h.len()] {
        if size > bound {
            return Err(ComplexError::SizeBound { size, bound });
        }
    }
    if g.len() != h.len() || g.edge_count() != h.edge_count() {
        return Ok(false);
    }
    let mut dg: Vec<_> = g.adj.iter().map(Vec::len).zip(&g.colors).collect();
    let mut dh: Vec<_> = h.adj.iter().map(Vec::len).zip(&h.colors).collect();
    dg.sort_unstable();
    dh.sort_unstable();
    if dg != dh {
        return Ok(false);
    }
    Ok(canonical_form(g) == canonical_form(h))
}

/// Skeleton isomorphism with the default size bound.
pub fn graph_isomorphic(g: &Skeleton, h: &Skeleton) -> Result<bool, ComplexError> {
    isomorphic(&Graph::from_skeleton(g), &Graph::from_skeleton(h), DEFAULT_ISO_BOUND)
}

/// Isomorphism of complexes as graded posets, decided on their Hasse graphs.
pub fn complexes_isomorphic(
    x: &CellComplex,
    y: &CellComplex,
    bound: usize,
) -> Result<bool, ComplexError> {
    isomorphic(&Graph::hasse(x), &Graph::hasse(y), bound)
}

pub fn skeleton_graph(x: &CellComplex) -> Graph {
    Graph::from_skeleton(&skeleton(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn relabel(g: &Graph, perm: &[usize]) -> Graph {
        let mut edges = Vec::new();
        for v in 0..g.len() {
            for &w in &g.adj[v] {
                if v < w {
                    edges.push((perm[v], perm[w]));
                }
            }
        }
        Graph::new(g.len(), &edges)
    }

    #[test]
    fn cycle_versus_path() {
        assert!(!isomorphic(&Graph::cycle(4), &Graph::path(4), 64).unwrap());
        assert!(isomorphic(&Graph::cycle(6), &relabel(&Graph::cycle(6), &[3, 5, 0, 1, 4, 2]), 64)
            .unwrap());
    }

    #[test]
    fn heawood_invariants() {
        let h = Graph::heawood();
        assert_eq!(h.edge_count(), 21);
        assert!(h.is_bipartite());
        assert_eq!(h.girth(), Some(6));
        assert!(h.adj.iter().all(|l| l.len() == 3));
    }

    #[test]
    fn relabeled_heawood_matches() {
        let h = Graph::heawood();
        let perm: Vec<usize> = (0..14).map(|i| (i * 3 + 5) % 14).collect();
        assert!(isomorphic(&h, &relabel(&h, &perm), 64).unwrap());
    }

    #[test]
    fn same_degrees_different_graphs() {
        // two triangles versus a hexagon
        let two = Graph::new(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]);
        assert!(!isomorphic(&two, &Graph::cycle(6), 64).unwrap());
    }

    #[test]
    fn bound_is_enforced() {
        let g = Graph::cycle(70);
        assert_eq!(
            isomorphic(&g, &g, 64),
            Err(ComplexError::SizeBound { size: 70, bound: 64 })
        );
    }

    #[test]
    fn colors_matter() {
        let a = Graph::path(3).with_colors(vec![0, 1, 0]);
        let b = Graph::path(3).with_colors(vec![1, 0, 0]);
        assert!(!isomorphic(&a, &b, 64).unwrap());
    }
}

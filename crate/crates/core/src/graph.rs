//! Cycle-space instances: simple graphs whose edge set is the coordinate
//! system of {0,1}^n, fundamental-cycle bases, exact max-cut, and seeded
//! random regular graphs.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::f2::{BitVec, Subspace};
use crate::parallel;

/// Exact max-cut enumerates 2^{v−1} bipartitions.
pub const MAX_CUT_VERTEX_CAP: usize = 24;

/// Rejection limit for the pairing model.
pub const PAIRING_RETRY_LIMIT: usize = 10_000;

pub const GRAPH_FORMAT: &str = "graph/1";

/// Identifier of the generator behind `random_regular`, recorded in file
/// metadata so samples can be reproduced elsewhere.
pub const RNG_ALGORITHM: &str = "chacha8";

/// A simple undirected graph. The edge list order fixes the coordinate
/// order of the associated vector space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertices: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for &(a, b) in &edges {
            if a >= vertices || b >= vertices {
                return Err(Error::InvalidGraph(format!(
                    "edge ({a}, {b}) out of range for {vertices} vertices"
                )));
            }
            if a == b {
                return Err(Error::InvalidGraph(format!("loop at vertex {a}")));
            }
            if !seen.insert((a.min(b), a.max(b))) {
                return Err(Error::InvalidGraph(format!("duplicate edge ({a}, {b})")));
            }
        }
        Ok(Graph { vertices, edges })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.vertices];
        for (idx, &(a, b)) in self.edges.iter().enumerate() {
            adj[a].push((b, idx));
            adj[b].push((a, idx));
        }
        adj
    }

    pub fn component_count(&self) -> usize {
        let adj = self.adjacency();
        let mut seen = vec![false; self.vertices];
        let mut components = 0;
        for root in 0..self.vertices {
            if seen[root] {
                continue;
            }
            components += 1;
            let mut queue = std::collections::VecDeque::from([root]);
            seen[root] = true;
            while let Some(v) = queue.pop_front() {
                for &(w, _) in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        components
    }

    pub fn is_connected(&self) -> bool {
        self.vertices <= 1 || self.component_count() == 1
    }

    /// Two-coloring test, per component.
    pub fn is_bipartite(&self) -> bool {
        let adj = self.adjacency();
        let mut color = vec![None; self.vertices];
        for root in 0..self.vertices {
            if color[root].is_some() {
                continue;
            }
            color[root] = Some(false);
            let mut queue = std::collections::VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                let c = color[v].unwrap();
                for &(w, _) in &adj[v] {
                    match color[w] {
                        None => {
                            color[w] = Some(!c);
                            queue.push_back(w);
                        }
                        Some(cw) if cw == c => return false,
                        Some(_) => {}
                    }
                }
            }
        }
        true
    }

    /// The subspace of even spanning subgraphs (every vertex of even
    /// degree), spanned by the fundamental cycles of a breadth-first
    /// spanning forest rooted at the smallest-index vertices.
    pub fn cycle_space(&self) -> Subspace {
        let n = self.edges.len();
        let adj = self.adjacency();
        let mut parent_edge: Vec<Option<usize>> = vec![None; self.vertices];
        let mut parent_vertex: Vec<usize> = (0..self.vertices).collect();
        let mut depth_in_tree = vec![0usize; self.vertices];
        let mut visited = vec![false; self.vertices];
        let mut tree_edge = vec![false; n];
        for root in 0..self.vertices {
            if visited[root] {
                continue;
            }
            visited[root] = true;
            let mut queue = std::collections::VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                for &(w, e) in &adj[v] {
                    if !visited[w] {
                        visited[w] = true;
                        tree_edge[e] = true;
                        parent_edge[w] = Some(e);
                        parent_vertex[w] = v;
                        depth_in_tree[w] = depth_in_tree[v] + 1;
                        queue.push_back(w);
                    }
                }
            }
        }
        let mut rows = Vec::new();
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            if tree_edge[e] {
                continue;
            }
            let mut cycle = BitVec::zero(n);
            cycle.set(e, true);
            // Walk both endpoints up to their common ancestor.
            let (mut x, mut y) = (a, b);
            while depth_in_tree[x] > depth_in_tree[y] {
                cycle.set(parent_edge[x].unwrap(), true);
                x = parent_vertex[x];
            }
            while depth_in_tree[y] > depth_in_tree[x] {
                cycle.set(parent_edge[y].unwrap(), true);
                y = parent_vertex[y];
            }
            while x != y {
                cycle.set(parent_edge[x].unwrap(), true);
                x = parent_vertex[x];
                cycle.set(parent_edge[y].unwrap(), true);
                y = parent_vertex[y];
            }
            debug_assert!(self.is_even_subgraph(&cycle));
            rows.push(cycle);
        }
        Subspace::span(n, &rows).expect("cycle rows share the edge count")
    }

    /// Whether a coordinate vector selects a subgraph with every vertex of
    /// even degree.
    pub fn is_even_subgraph(&self, x: &BitVec) -> bool {
        let mut deg = vec![0usize; self.vertices];
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            if x.get(e) {
                deg[a] += 1;
                deg[b] += 1;
            }
        }
        deg.iter().all(|d| d % 2 == 0)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("# format: {GRAPH_FORMAT}\nv={}\n", self.vertices);
        for &(a, b) in &self.edges {
            s.push_str(&format!("{a} {b}\n"));
        }
        s
    }

    pub fn parse_text(input: &str) -> Result<Graph> {
        let mut vertices: Option<usize> = None;
        let mut edges = Vec::new();
        for (idx, raw) in input.lines().enumerate() {
            let line = raw.trim();
            let lineno = idx + 1;
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            match vertices {
                None => {
                    let rest = line.strip_prefix("v=").ok_or(Error::Parse {
                        line: lineno,
                        msg: "expected `v=<int>` header".into(),
                    })?;
                    vertices = Some(rest.trim().parse().map_err(|_| Error::Parse {
                        line: lineno,
                        msg: format!("invalid vertex count `{rest}`"),
                    })?);
                }
                Some(_) => {
                    let mut parts = line.split_whitespace();
                    let a = parts.next().and_then(|t| t.parse().ok());
                    let b = parts.next().and_then(|t| t.parse().ok());
                    match (a, b, parts.next()) {
                        (Some(a), Some(b), None) => edges.push((a, b)),
                        _ => {
                            return Err(Error::Parse {
                                line: lineno,
                                msg: format!("expected `a b` edge line, got `{line}`"),
                            })
                        }
                    }
                }
            }
        }
        let vertices = vertices.ok_or(Error::Parse {
            line: 0,
            msg: "missing `v=<int>` header".into(),
        })?;
        Graph::new(vertices, edges)
    }
}

/// Splits Z into its even-Hamming-weight subspace. Returns the subspace
/// with the codimension: 1 when Z contains an odd-weight vector (the
/// graph case: non-bipartite), 0 otherwise.
pub fn even_weight_sub(z: &Subspace) -> (Subspace, usize) {
    let odd: Vec<usize> = (0..z.dim())
        .filter(|&i| z.basis()[i].weight() % 2 == 1)
        .collect();
    match odd.first() {
        None => (z.clone(), 0),
        Some(&first) => {
            let pivot = z.basis()[first].clone();
            let mut rows = Vec::with_capacity(z.dim() - 1);
            for (i, row) in z.basis().iter().enumerate() {
                if i == first {
                    continue;
                }
                if row.weight() % 2 == 1 {
                    rows.push(row.xor(&pivot).unwrap());
                } else {
                    rows.push(row.clone());
                }
            }
            let z0 = Subspace::span(z.ambient_dim(), &rows)
                .expect("rows share the ambient dimension");
            debug_assert_eq!(z0.dim() + 1, z.dim());
            (z0, 1)
        }
    }
}

/// Exact maximum cut by enumerating the 2^{v−1} bipartitions with vertex 0
/// pinned. `jobs` partitions the mask range; the max reduction is
/// independent of the partitioning.
pub fn max_cut(g: &Graph, jobs: usize) -> Result<usize> {
    let v = g.vertex_count();
    if v > MAX_CUT_VERTEX_CAP {
        return Err(Error::CapExceeded {
            what: "max-cut vertex count",
            limit: MAX_CUT_VERTEX_CAP,
            got: v,
        });
    }
    if v <= 1 || g.edge_count() == 0 {
        return Ok(0);
    }
    let edges = g.edges();
    let total = 1u64 << (v - 1);
    let best = parallel::run_chunked(total, jobs, |lo, hi| {
        let mut local = 0usize;
        for mask in lo..hi {
            let mut cut = 0usize;
            for &(a, b) in edges {
                let sa = if a == 0 { 0 } else { (mask >> (a - 1)) & 1 };
                let sb = if b == 0 { 0 } else { (mask >> (b - 1)) & 1 };
                cut += (sa != sb) as usize;
            }
            local = local.max(cut);
        }
        local
    });
    Ok(best.into_iter().max().unwrap_or(0))
}

/// n − maxcut: the minimum number of edges whose removal leaves the graph
/// bipartite. Undefined (an error) for bipartite graphs, where the
/// even-weight subspace does not drop dimension.
pub fn m_via_maxcut(g: &Graph, jobs: usize) -> Result<usize> {
    if g.is_bipartite() {
        return Err(Error::BipartiteGraph);
    }
    Ok(g.edge_count() - max_cut(g, jobs)?)
}

/// Uniform random `degree`-regular simple graph on `v` vertices by the
/// pairing model with full rejection of loops and repeated edges. Returns
/// the graph and the number of rejected pairings; both are deterministic
/// functions of the seed.
pub fn random_regular(v: usize, degree: usize, seed: u64) -> Result<(Graph, usize)> {
    if degree == 0 || v <= degree || (v * degree) % 2 != 0 {
        return Err(Error::InfeasibleRegular { v, degree });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stubs: Vec<usize> = (0..v).flat_map(|x| std::iter::repeat(x).take(degree)).collect();
    for attempt in 0..PAIRING_RETRY_LIMIT {
        stubs.shuffle(&mut rng);
        let mut edges = Vec::with_capacity(v * degree / 2);
        let mut ok = true;
        let mut seen = std::collections::HashSet::new();
        for pair in stubs.chunks_exact(2) {
            let (a, b) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            if a == b || !seen.insert((a, b)) {
                ok = false;
                break;
            }
            edges.push((a, b));
        }
        if ok {
            edges.sort_unstable();
            let g = Graph::new(v, edges)?;
            debug_assert!((0..v).all(|x| g.degree(x) == degree));
            return Ok((g, attempt));
        }
    }
    Err(Error::RetryLimit {
        attempts: PAIRING_RETRY_LIMIT,
    })
}

/// Complete graph, edges in lexicographic order.
pub fn complete_graph(v: usize) -> Graph {
    let mut edges = Vec::new();
    for a in 0..v {
        for b in (a + 1)..v {
            edges.push((a, b));
        }
    }
    Graph::new(v, edges).expect("complete graphs are simple")
}

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};

pub type Vertex = usize;

/// Unordered edge, stored with the smaller endpoint first.
pub type Edge = (Vertex, Vertex);

pub(crate) fn edge(u: Vertex, v: Vertex) -> Edge {
    (u.min(v), u.max(v))
}

/// Simple undirected graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<BTreeSet<Vertex>>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![BTreeSet::new(); n],
        }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        let bad = |reason: &str| {
            Err(Error::PreconditionViolated(format!(
                "edge {u}-{v}: {reason}"
            )))
        };
        if u == v {
            return bad("self-loop");
        }
        if u.max(v) >= self.n() {
            return bad("vertex out of range");
        }
        if !self.adj[u].insert(v) {
            return bad("duplicate edge");
        }
        self.adj[v].insert(u);
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    /// Edges in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.range(u + 1..).map(move |&v| (u, v)))
    }

    pub fn neighbors(&self, v: Vertex) -> &BTreeSet<Vertex> {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n() && self.adj[u].contains(&v)
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    /// Largest degree; 0 for a graph without edges.
    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).max().unwrap_or(0)
    }

    pub fn cycle(n: usize) -> Self {
        Graph::from_edges(n, (0..n).map(|i| edge(i, (i + 1) % n))).expect("n >= 3")
    }

    pub fn path(n: usize) -> Self {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("valid path")
    }

    pub fn complete(n: usize) -> Self {
        Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
            .expect("valid clique")
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        Graph::from_edges(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))))
            .expect("valid biclique")
    }

    pub fn star(leaves: usize) -> Self {
        Graph::complete_bipartite(1, leaves)
    }

    pub fn petersen() -> Self {
        let outer = (0..5).map(|i| edge(i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| edge(5 + i, 5 + (i + 2) % 5));
        Graph::from_edges(10, outer.chain(spokes).chain(inner)).expect("valid Petersen graph")
    }
}

/// Splits the vertices into two groups with every edge between them, or
/// returns `None` when the graph has an odd cycle.
pub fn bipartition(g: &Graph) -> Option<(BTreeSet<Vertex>, BTreeSet<Vertex>)> {
    let mut side: Vec<Option<bool>> = vec![None; g.n()];
    for start in 0..g.n() {
        if side[start].is_some() {
            continue;
        }
        side[start] = Some(false);
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            let here = side[u].expect("queued vertices are placed");
            for &w in g.neighbors(u) {
                match side[w] {
                    None => {
                        side[w] = Some(!here);
                        queue.push_back(w);
                    }
                    Some(s) if s == here => return None,
                    Some(_) => {}
                }
            }
        }
    }
    let (left, right): (Vec<_>, Vec<_>) = (0..g.n()).partition(|&v| side[v] == Some(false));
    Some((left.into_iter().collect(), right.into_iter().collect()))
}

/// Parses an edge list: one `u v` pair of 0-based vertex ids per line, `#`
/// starting a comment. The vertex count is one more than the largest id.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [u, v] = fields[..] else {
            return Err(Error::parse(line_no, "expected `u v`"));
        };
        let id = |tok: &str| {
            tok.parse::<Vertex>()
                .map_err(|_| Error::parse(line_no, format!("`{tok}` is not a vertex id")))
        };
        edges.push((line_no, id(u)?, id(v)?));
    }
    let n = edges
        .iter()
        .map(|&(_, u, v)| u.max(v) + 1)
        .max()
        .unwrap_or(0);
    let mut g = Graph::new(n);
    for (line_no, u, v) in edges {
        if u == v {
            return Err(Error::parse(line_no, format!("self-loop at vertex {u}")));
        }
        if g.has_edge(u, v) {
            return Err(Error::parse(line_no, format!("duplicate edge {u}-{v}")));
        }
        g.add_edge(u, v)?;
    }
    Ok(g)
}

pub fn write_graph(g: &Graph) -> String {
    g.edges().map(|(u, v)| format!("{u} {v}\n")).collect()
}

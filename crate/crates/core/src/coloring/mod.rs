//! Edge colorings built by playing the solitaire game at each vertex.
//!
//! Uncolor a vertex `v`; every neighbor `x` gets a stack holding the colors
//! missing at `x`. Swapping card `a` for `b` in the stack of `x` is a Kempe
//! chain swap of colors `a` and `b` starting at `x`, and the far end of that
//! chain decides what the "demon" did: nothing, or the matching swap in the
//! stack of the neighbor where the chain stops. In a bipartite graph only the
//! König answer can happen. A winning hand colors the edges at `v`.

mod brute;
mod extend;
mod graph;
mod kempe;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

pub use brute::{brute_force_color, BRUTE_FORCE_EDGE_LIMIT};
pub use extend::{
    edge_color, edge_color_with_stats, extend_at_vertex, extend_at_vertex_traced, ColoringMode,
    ColoringStats, Extension, KempeSwapReport,
};
pub use graph::{bipartition, parse_graph, write_graph, Edge, Graph, Vertex};
pub use kempe::{kempe_swap, KempeChain};

use crate::error::{Error, Result};
use graph::edge;

pub type Color = crate::game::Card;

/// Partial assignment of colors `1..=m` to edges.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdgeColoring {
    m: usize,
    colors: BTreeMap<Edge, Color>,
}

impl EdgeColoring {
    pub fn new(m: usize) -> Self {
        EdgeColoring {
            m,
            colors: BTreeMap::new(),
        }
    }

    /// Number of colors available.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn get(&self, u: Vertex, v: Vertex) -> Option<Color> {
        self.colors.get(&edge(u, v)).copied()
    }

    pub fn set(&mut self, u: Vertex, v: Vertex, c: Color) {
        self.colors.insert(edge(u, v), c);
    }

    pub fn unset(&mut self, u: Vertex, v: Vertex) -> Option<Color> {
        self.colors.remove(&edge(u, v))
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Edge, Color)> + '_ {
        self.colors.iter().map(|(&e, &c)| (e, c))
    }

    pub fn colors_used(&self) -> BTreeSet<Color> {
        self.colors.values().copied().collect()
    }

    /// Neighbor of `x` joined to it by an edge of color `c`.
    pub fn neighbor_via(&self, g: &Graph, x: Vertex, c: Color) -> Option<Vertex> {
        g.neighbors(x)
            .iter()
            .copied()
            .find(|&y| self.get(x, y) == Some(c))
    }
}

/// Colors in `1..=m` not used on any colored edge at `x`.
pub fn free_colors(c: &EdgeColoring, x: Vertex, g: &Graph) -> BTreeSet<Color> {
    let used: BTreeSet<Color> = g.neighbors(x).iter().filter_map(|&y| c.get(x, y)).collect();
    (1..=c.m() as Color).filter(|k| !used.contains(k)).collect()
}

/// First problem found by [`verify_coloring`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Uncolored {
        edge: Edge,
    },
    OutOfRange {
        edge: Edge,
        color: Color,
        m: usize,
    },
    Clash {
        vertex: Vertex,
        color: Color,
        edges: (Edge, Edge),
    },
    NotAnEdge {
        edge: Edge,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Uncolored { edge: (u, v) } => write!(f, "edge {u}-{v} has no color"),
            Violation::OutOfRange {
                edge: (u, v),
                color,
                m,
            } => {
                write!(f, "edge {u}-{v} has color {color}, outside 1..={m}")
            }
            Violation::Clash {
                vertex,
                color,
                edges: ((a, b), (c, d)),
            } => write!(
                f,
                "vertex {vertex}: edges {a}-{b} and {c}-{d} both have color {color}"
            ),
            Violation::NotAnEdge { edge: (u, v) } => {
                write!(f, "{u}-{v} is not an edge of the graph")
            }
        }
    }
}

/// Checks that every edge has a color in `1..=m` and that edges sharing a
/// vertex differ.
pub fn verify_coloring(g: &Graph, c: &EdgeColoring, m: usize) -> Result<(), Violation> {
    if let Some((e, _)) = c.iter().find(|&((u, v), _)| !g.has_edge(u, v)) {
        return Err(Violation::NotAnEdge { edge: e });
    }
    for e in g.edges() {
        match c.get(e.0, e.1) {
            None => return Err(Violation::Uncolored { edge: e }),
            Some(color) if color < 1 || color as usize > m => {
                return Err(Violation::OutOfRange { edge: e, color, m })
            }
            Some(_) => {}
        }
    }
    for x in 0..g.n() {
        let mut seen: BTreeMap<Color, Edge> = BTreeMap::new();
        for &y in g.neighbors(x) {
            let color = c.get(x, y).expect("checked above");
            if let Some(&other) = seen.get(&color) {
                return Err(Violation::Clash {
                    vertex: x,
                    color,
                    edges: (other, edge(x, y)),
                });
            }
            seen.insert(color, edge(x, y));
        }
    }
    Ok(())
}

/// Checks properness of a partial coloring: colored edges exist, colors are
/// in range, and no two colored edges at a vertex share a color.
pub(crate) fn check_partial(g: &Graph, c: &EdgeColoring) -> Result<(), Violation> {
    for ((u, v), color) in c.iter() {
        if !g.has_edge(u, v) {
            return Err(Violation::NotAnEdge { edge: (u, v) });
        }
        if color < 1 || color as usize > c.m() {
            return Err(Violation::OutOfRange {
                edge: (u, v),
                color,
                m: c.m(),
            });
        }
    }
    for x in 0..g.n() {
        let mut seen: BTreeMap<Color, Edge> = BTreeMap::new();
        for &y in g.neighbors(x) {
            if let Some(color) = c.get(x, y) {
                if let Some(&other) = seen.get(&color) {
                    return Err(Violation::Clash {
                        vertex: x,
                        color,
                        edges: (other, edge(x, y)),
                    });
                }
                seen.insert(color, edge(x, y));
            }
        }
    }
    Ok(())
}

/// One `u v c` line per colored edge, in edge order.
pub fn write_coloring(_g: &Graph, c: &EdgeColoring) -> String {
    c.iter()
        .map(|((u, v), k)| format!("{u} {v} {k}\n"))
        .collect()
}

/// Reads `u v c` lines. `m` of the result is the largest color present.
pub fn parse_coloring(text: &str) -> Result<EdgeColoring> {
    let mut entries = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let nums: Vec<u64> = line
            .split_whitespace()
            .map(|tok| {
                tok.parse()
                    .map_err(|_| Error::parse(line_no, format!("`{tok}` is not a number")))
            })
            .collect::<Result<_>>()?;
        let [u, v, color] = nums[..] else {
            return Err(Error::parse(line_no, "expected `u v c`"));
        };
        if u == v {
            return Err(Error::parse(line_no, format!("self-loop at vertex {u}")));
        }
        let color = Color::try_from(color).map_err(|_| Error::parse(line_no, "color too large"))?;
        entries.push((line_no, u as Vertex, v as Vertex, color));
    }
    let m = entries.iter().map(|e| e.3 as usize).max().unwrap_or(0);
    let mut c = EdgeColoring::new(m);
    for (line_no, u, v, color) in entries {
        if c.get(u, v).is_some() {
            return Err(Error::parse(line_no, format!("edge {u}-{v} colored twice")));
        }
        c.set(u, v, color);
    }
    Ok(c)
}

use super::{Color, Edge, EdgeColoring, Graph};
use crate::error::{Error, Result};

pub const BRUTE_FORCE_EDGE_LIMIT: usize = 20;

/// Backtracking search for a proper coloring of every edge with `1..=m`.
///
/// Colors are interchangeable, so each edge only tries colors up to one more
/// than the largest used so far.
pub fn brute_force_color(g: &Graph, m: usize) -> Result<Option<EdgeColoring>> {
    let edges: Vec<Edge> = g.edges().collect();
    if edges.len() > BRUTE_FORCE_EDGE_LIMIT {
        return Err(Error::TooLarge {
            edges: edges.len(),
            limit: BRUTE_FORCE_EDGE_LIMIT,
        });
    }
    let mut assigned: Vec<Color> = Vec::with_capacity(edges.len());
    Ok(search(&edges, m as Color, &mut assigned).then(|| {
        let mut c = EdgeColoring::new(m);
        for (&(u, v), &k) in edges.iter().zip(&assigned) {
            c.set(u, v, k);
        }
        c
    }))
}

fn search(edges: &[Edge], m: Color, assigned: &mut Vec<Color>) -> bool {
    let idx = assigned.len();
    let Some(&(u, v)) = edges.get(idx) else {
        return true;
    };
    let ceiling = (assigned.iter().copied().max().unwrap_or(0) + 1).min(m);
    for k in 1..=ceiling {
        let clash = edges[..idx]
            .iter()
            .zip(assigned.iter())
            .any(|(&(a, b), &c)| c == k && (a == u || a == v || b == u || b == v));
        if clash {
            continue;
        }
        assigned.push(k);
        if search(edges, m, assigned) {
            return true;
        }
        assigned.pop();
    }
    false
}

use super::{free_colors, Color, Edge, EdgeColoring, Graph, Vertex};
use crate::error::{Error, Result};

/// The maximal path swapped by [`kempe_swap`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KempeChain {
    /// Edges in walking order, each as `(from, to)`.
    pub path: Vec<Edge>,
    pub endpoint: Vertex,
    /// Color of the last path edge before the swap.
    pub last_color: Color,
}

/// Swaps colors `a` and `b` along the longest path from `x` that alternates
/// `b`, `a`, `b`, ... . Requires `a` free at `x` and `b` used at `x`, which
/// makes the path unique; afterwards `x` has `a` and misses `b`.
pub fn kempe_swap(
    g: &Graph,
    c: &EdgeColoring,
    x: Vertex,
    a: Color,
    b: Color,
) -> Result<(EdgeColoring, KempeChain)> {
    let free = free_colors(c, x, g);
    let in_range = |k: Color| k >= 1 && k as usize <= c.m();
    if a == b || !in_range(a) || !in_range(b) || !free.contains(&a) || free.contains(&b) {
        return Err(Error::PreconditionViolated(format!(
            "Kempe swap at {x} needs color {a} free and color {b} used there"
        )));
    }
    let mut path = Vec::new();
    let (mut cur, mut want, mut last_color) = (x, b, b);
    while let Some(next) = c.neighbor_via(g, cur, want) {
        if path.len() > g.edge_count() {
            return Err(Error::InvariantViolated("Kempe walk does not end".into()));
        }
        path.push((cur, next));
        last_color = want;
        cur = next;
        want = if want == a { b } else { a };
    }
    let mut out = c.clone();
    for &(u, v) in &path {
        let k = out.get(u, v).expect("path edges are colored");
        out.set(u, v, if k == a { b } else { a });
    }
    Ok((
        out,
        KempeChain {
            path,
            endpoint: cur,
            last_color,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::check_partial;

    #[test]
    fn two_edge_chain() {
        // x=0, y=1, z=2
        let g = Graph::path(3);
        let mut c = EdgeColoring::new(2);
        c.set(0, 1, 2);
        c.set(1, 2, 1);
        let (out, chain) = kempe_swap(&g, &c, 0, 1, 2).unwrap();
        assert_eq!(out.get(0, 1), Some(1));
        assert_eq!(out.get(1, 2), Some(2));
        assert_eq!(chain.path, vec![(0, 1), (1, 2)]);
        assert_eq!((chain.endpoint, chain.last_color), (2, 1));
    }

    #[test]
    fn single_edge_chain() {
        let g = Graph::path(2);
        let mut c = EdgeColoring::new(2);
        c.set(0, 1, 2);
        let (out, chain) = kempe_swap(&g, &c, 0, 1, 2).unwrap();
        assert_eq!(out.get(0, 1), Some(1));
        assert_eq!(chain.path.len(), 1);
        assert_eq!((chain.endpoint, chain.last_color), (1, 2));
        // the far end now has a and misses b
        assert_eq!(free_colors(&out, 1, &g), [2].into());
    }

    #[test]
    fn rejects_bad_colors() {
        let g = Graph::path(2);
        let mut c = EdgeColoring::new(3);
        c.set(0, 1, 2);
        assert!(kempe_swap(&g, &c, 0, 2, 1).is_err());
        assert!(kempe_swap(&g, &c, 0, 1, 3).is_err());
        assert!(kempe_swap(&g, &c, 0, 1, 1).is_err());
        assert!(kempe_swap(&g, &c, 0, 4, 2).is_err());
        assert!(kempe_swap(&g, &c, 0, 1, 2).is_ok());
    }

    #[test]
    fn odd_cycle_chain_stops_before_start() {
        // 5-cycle minus one edge colored 2,1,2,1 from vertex 0
        let g = Graph::path(5);
        let mut c = EdgeColoring::new(3);
        for (i, k) in [2, 1, 2, 1].into_iter().enumerate() {
            c.set(i, i + 1, k);
        }
        let (out, chain) = kempe_swap(&g, &c, 0, 1, 2).unwrap();
        assert_eq!(chain.endpoint, 4);
        assert_eq!(check_partial(&g, &out), Ok(()));
    }
}

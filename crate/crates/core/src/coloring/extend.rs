use serde::{Deserialize, Serialize};

use super::{
    bipartition, check_partial, free_colors, kempe_swap, EdgeColoring, Graph, KempeChain, Vertex,
};
use crate::error::{Error, Result};
use crate::game::{
    run_game, DemonKind, DemonPolicy, DemonResponse, GameState, Outcome, PlayerMove, Transcript,
};
use crate::strategies::{vizing_budget, KonigStrategy, VizingStrategy};

/// `Konig` colors bipartite graphs with `Δ` colors, `Vizing` colors any
/// simple graph with `Δ + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ColoringMode {
    Konig,
    Vizing,
}

impl ColoringMode {
    /// `Konig` for bipartite graphs, `Vizing` otherwise.
    pub fn auto(g: &Graph) -> Self {
        if bipartition(g).is_some() {
            ColoringMode::Konig
        } else {
            ColoringMode::Vizing
        }
    }

    /// Colors the mode uses on a graph of maximum degree `max_degree`.
    pub fn palette(&self, max_degree: usize) -> usize {
        match self {
            ColoringMode::Konig => max_degree,
            ColoringMode::Vizing => max_degree + 1,
        }
    }

    fn demon(&self) -> DemonKind {
        match self {
            ColoringMode::Konig => DemonKind::Konig,
            ColoringMode::Vizing => DemonKind::Vizing,
        }
    }
}

impl std::fmt::Display for ColoringMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ColoringMode::Konig => "konig",
            ColoringMode::Vizing => "vizing",
        })
    }
}

/// A Kempe swap made for a player move, and the demon response it amounts to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KempeSwapReport {
    pub chain: KempeChain,
    pub induced: DemonResponse,
}

#[derive(Debug, Clone)]
pub struct Extension {
    pub coloring: EdgeColoring,
    /// The game played at the vertex; `None` when it had no edges.
    pub transcript: Option<Transcript>,
    pub swaps: Vec<KempeSwapReport>,
}

/// The graph acting as the demon: each player move becomes a Kempe swap,
/// and the response is read off where the chain ends.
struct GraphDemon<'a> {
    g: &'a Graph,
    coloring: EdgeColoring,
    neighbors: Vec<Vertex>,
    mode: ColoringMode,
    swaps: Vec<KempeSwapReport>,
}

impl GraphDemon<'_> {
    fn stacks(&self) -> Vec<Vec<u32>> {
        self.neighbors
            .iter()
            .map(|&x| free_colors(&self.coloring, x, self.g).into_iter().collect())
            .collect()
    }
}

impl DemonPolicy for GraphDemon<'_> {
    fn kind(&self) -> DemonKind {
        self.mode.demon()
    }

    fn respond(
        &mut self,
        after_move: &GameState,
        mv: &PlayerMove,
        _: &[DemonResponse],
    ) -> Result<DemonResponse> {
        let x = self.neighbors[mv.stack - 1];
        let (a, b) = (mv.out, mv.into);
        let (next, chain) = kempe_swap(self.g, &self.coloring, x, a, b)?;
        if chain.endpoint == x {
            return Err(Error::InvariantViolated(format!(
                "Kempe chain from {x} returned to it"
            )));
        }
        let induced = match self.neighbors.iter().position(|&y| y == chain.endpoint) {
            None => DemonResponse::Pass,
            Some(idx) if chain.last_color == a => DemonResponse::swap(idx + 1, b, a),
            Some(idx) => {
                if self.mode == ColoringMode::Konig {
                    return Err(Error::DemonNonconformance(format!(
                        "chain from {x} to neighbor {} has odd length {}",
                        chain.endpoint,
                        chain.path.len()
                    )));
                }
                DemonResponse::swap(idx + 1, a, b)
            }
        };
        self.coloring = next;
        let expected = match induced.as_move() {
            None => after_move.clone(),
            Some(swap) => after_move.apply_player_move(&swap).map_err(|e| {
                Error::DemonNonconformance(format!("induced response {induced}: {e}"))
            })?,
        };
        let actual = self.stacks();
        let matches = expected
            .stacks()
            .iter()
            .zip(&actual)
            .all(|(s, t)| s.iter().eq(t.iter()));
        if !matches {
            return Err(Error::InvariantViolated(format!(
                "stacks drifted from the coloring after {mv} / {induced}"
            )));
        }
        self.swaps.push(KempeSwapReport { chain, induced });
        Ok(induced)
    }
}

/// Colors the edges at `v`, given a proper coloring of every other edge of
/// `g` with colors `1..=c.m()`.
pub fn extend_at_vertex(
    g: &Graph,
    c: &EdgeColoring,
    v: Vertex,
    mode: ColoringMode,
) -> Result<EdgeColoring> {
    extend_at_vertex_traced(g, c, v, mode).map(|e| e.coloring)
}

/// [`extend_at_vertex`], also returning the game transcript and every Kempe
/// swap it made.
pub fn extend_at_vertex_traced(
    g: &Graph,
    c: &EdgeColoring,
    v: Vertex,
    mode: ColoringMode,
) -> Result<Extension> {
    let neighbors: Vec<Vertex> = g.neighbors(v).iter().copied().collect();
    if let Err(violation) = check_partial(g, c) {
        return Err(Error::PreconditionViolated(format!(
            "coloring is not proper: {violation}"
        )));
    }
    if let Some(&x) = neighbors.iter().find(|&&x| c.get(v, x).is_some()) {
        return Err(Error::PreconditionViolated(format!(
            "edge {v}-{x} is already colored"
        )));
    }
    if let Some((u, w)) = g
        .edges()
        .find(|&(u, w)| u != v && w != v && c.get(u, w).is_none())
    {
        return Err(Error::PreconditionViolated(format!(
            "edge {u}-{w} is not colored"
        )));
    }
    if neighbors.is_empty() {
        return Ok(Extension {
            coloring: c.clone(),
            transcript: None,
            swaps: Vec::new(),
        });
    }
    let k = neighbors.len();
    let mut demon = GraphDemon {
        g,
        coloring: c.clone(),
        neighbors,
        mode,
        swaps: Vec::new(),
    };
    let state = GameState::new(k, c.m(), demon.stacks())?;
    let played = match mode {
        ColoringMode::Konig => run_game(&state, &mut KonigStrategy, &mut demon, k),
        ColoringMode::Vizing => run_game(
            &state,
            &mut VizingStrategy::new(),
            &mut demon,
            vizing_budget(k),
        ),
    };
    let transcript = played.map_err(|e| match e.root() {
        Error::NonconformingDemon(resp) => Error::DemonNonconformance(format!(
            "induced response {resp} breaks the {} rule",
            mode.demon()
        )),
        Error::DemonNonconformance(msg) => Error::DemonNonconformance(msg.clone()),
        _ => e,
    })?;
    let hand = match (&transcript.outcome, &transcript.hand) {
        (Outcome::Won, Some(hand)) => hand.clone(),
        _ => {
            return Err(Error::InvariantViolated(format!(
                "game at vertex {v} ended {:?}",
                transcript.outcome
            )))
        }
    };
    let mut coloring = demon.coloring;
    for (&stack, &color) in hand.picks() {
        coloring.set(v, demon.neighbors[stack - 1], color);
    }
    Ok(Extension {
        coloring,
        transcript: Some(transcript),
        swaps: demon.swaps,
    })
}

/// Totals over the games played by [`edge_color_with_stats`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ColoringStats {
    pub games: usize,
    pub player_moves: usize,
    /// Swaps whose chain ended at another neighbor of the vertex.
    pub induced_swaps: usize,
}

/// Colors every edge of `g`, with `Δ` colors in `Konig` mode (bipartite
/// graphs only) or `Δ + 1` in `Vizing` mode.
pub fn edge_color(g: &Graph, mode: ColoringMode) -> Result<EdgeColoring> {
    edge_color_with_stats(g, mode).map(|(c, _)| c)
}

/// Removes vertices lowest index first, then puts them back in reverse order,
/// playing one game per vertex to color its returning edges.
pub fn edge_color_with_stats(
    g: &Graph,
    mode: ColoringMode,
) -> Result<(EdgeColoring, ColoringStats)> {
    if mode == ColoringMode::Konig && bipartition(g).is_none() {
        return Err(Error::NotBipartite);
    }
    let mut current = Graph::new(g.n());
    let mut coloring = EdgeColoring::new(mode.palette(g.max_degree()));
    let mut stats = ColoringStats::default();
    for v in (0..g.n()).rev() {
        for &u in g.neighbors(v).range(v + 1..) {
            current.add_edge(v, u)?;
        }
        let ext = extend_at_vertex_traced(&current, &coloring, v, mode)?;
        if let Some(t) = &ext.transcript {
            stats.games += 1;
            stats.player_moves += t.player_moves();
        }
        stats.induced_swaps += ext
            .swaps
            .iter()
            .filter(|s| s.induced != DemonResponse::Pass)
            .count();
        coloring = ext.coloring;
    }
    Ok((coloring, stats))
}

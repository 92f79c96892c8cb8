#![allow(dead_code)]

use demon_solitaire::coloring::Graph;
use demon_solitaire::game::{Card, GameState};
use rand::seq::SliceRandom;
use rand::Rng;

/// Every deal with `k <= max_k` stacks and `k <= m <= max_m` card numbers.
pub fn all_deals(max_k: usize, max_m: usize) -> Vec<GameState> {
    let mut out = Vec::new();
    for k in 1..=max_k {
        for m in k..=max_m {
            let subsets: Vec<Vec<Card>> = (1u32..(1 << m))
                .map(|mask| {
                    (1..=m as Card)
                        .filter(|c| mask & (1 << (c - 1)) != 0)
                        .collect()
                })
                .collect();
            let mut idx = vec![0usize; k];
            loop {
                let stacks = idx.iter().map(|&i| subsets[i].clone());
                out.push(GameState::new(k, m, stacks).expect("enumerated deals are valid"));
                let mut pos = 0;
                while pos < k {
                    idx[pos] += 1;
                    if idx[pos] < subsets.len() {
                        break;
                    }
                    idx[pos] = 0;
                    pos += 1;
                }
                if pos == k {
                    break;
                }
            }
        }
    }
    out
}

/// Largest hand by trying every one-card-per-stack selection (or skipping a stack).
pub fn brute_force_hand_size(state: &GameState) -> usize {
    fn go(state: &GameState, i: usize, used: &mut Vec<Card>) -> usize {
        if i > state.k() {
            return used.len();
        }
        let mut best = go(state, i + 1, used);
        for &c in state.stack(i) {
            if !used.contains(&c) {
                used.push(c);
                best = best.max(go(state, i + 1, used));
                used.pop();
            }
        }
        best
    }
    go(state, 1, &mut Vec::new())
}

/// Random deal. With `vizing_profile`, at most one stack has a single card.
///
/// Stacks are kept small and drawn from a narrow range of numbers about half
/// the time, so that many deals start far from a win.
pub fn random_deal(rng: &mut impl Rng, k: usize, m: usize, vizing_profile: bool) -> GameState {
    let singleton_allowed = if vizing_profile {
        rng.random_range(0..k)
    } else {
        usize::MAX
    };
    let tight = rng.random_bool(0.5);
    let stacks: Vec<Vec<Card>> = (0..k)
        .map(|i| {
            let min = if vizing_profile && i != singleton_allowed {
                2.min(m)
            } else {
                1
            };
            let (size, pool) = if tight {
                let pool = rng.random_range(min.max(2).min(m)..=m.min(k.max(2)));
                (rng.random_range(min..=min.max(2).min(pool)), pool)
            } else {
                (rng.random_range(min..=m), m)
            };
            let mut cards: Vec<Card> = (1..=pool as Card).collect();
            cards.shuffle(rng);
            cards.truncate(size);
            cards
        })
        .collect();
    GameState::new(k, m, stacks).expect("generated deals are valid")
}

/// Random simple graph on `n` vertices with maximum degree at most `cap`.
pub fn random_graph(rng: &mut impl Rng, n: usize, cap: usize) -> Graph {
    let mut g = Graph::new(n);
    if n < 2 {
        return g;
    }
    let attempts = rng.random_range(0..=n * cap);
    for _ in 0..attempts {
        let u = rng.random_range(0..n);
        let v = rng.random_range(0..n);
        if u != v && !g.has_edge(u, v) && g.degree(u) < cap && g.degree(v) < cap {
            g.add_edge(u, v).unwrap();
        }
    }
    g
}

/// Random bipartite graph with maximum degree at most `cap`.
pub fn random_bipartite(rng: &mut impl Rng, n: usize, cap: usize) -> Graph {
    let mut g = Graph::new(n);
    if n < 2 {
        return g;
    }
    let left = rng.random_range(1..n);
    let attempts = rng.random_range(0..=n * cap);
    for _ in 0..attempts {
        let u = rng.random_range(0..left);
        let v = rng.random_range(left..n);
        if !g.has_edge(u, v) && g.degree(u) < cap && g.degree(v) < cap {
            g.add_edge(u, v).unwrap();
        }
    }
    g
}

/// Edge subsets of the complete graph on `n` vertices with at most
/// `max_edges` edges.
pub fn small_graphs(n: usize, max_edges: usize) -> Vec<Graph> {
    let all: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    fn go(
        all: &[(usize, usize)],
        start: usize,
        n: usize,
        max_edges: usize,
        chosen: &mut Vec<(usize, usize)>,
        out: &mut Vec<Graph>,
    ) {
        out.push(Graph::from_edges(n, chosen.iter().copied()).unwrap());
        if chosen.len() == max_edges {
            return;
        }
        for i in start..all.len() {
            chosen.push(all[i]);
            go(all, i + 1, n, max_edges, chosen, out);
            chosen.pop();
        }
    }
    go(&all, 0, n, max_edges, &mut chosen, &mut out);
    out
}

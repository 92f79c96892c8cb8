//! Invariant suites behind `solitaire selftest`. Suites run on their own
//! threads; results print in a fixed order.

use std::process::ExitCode;
use std::time::Instant;

use clap::ValueEnum;
use demon_solitaire::coloring::{
    bipartition, brute_force_color, edge_color, verify_coloring, ColoringMode, Graph,
};
use demon_solitaire::game::policy::{Eager, Random};
use demon_solitaire::game::{run_game, Card, DemonKind, GameState, Outcome};
use demon_solitaire::strategies::{
    explore, konig_play, vizing_budget, vizing_play, KonigStrategy, Strategy, StrategyKind,
    VizingStrategy,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Scale {
    Small,
    Medium,
    Large,
}

struct Sizes {
    max_k: usize,
    max_m: usize,
    games: u64,
    graphs: u64,
    max_n: usize,
    oracle_n: usize,
    oracle_edges: usize,
}

impl Scale {
    fn sizes(self) -> Sizes {
        match self {
            Scale::Small => Sizes {
                max_k: 3,
                max_m: 4,
                games: 200,
                graphs: 100,
                max_n: 30,
                oracle_n: 5,
                oracle_edges: 6,
            },
            Scale::Medium => Sizes {
                max_k: 3,
                max_m: 4,
                games: 1000,
                graphs: 500,
                max_n: 40,
                oracle_n: 6,
                oracle_edges: 8,
            },
            Scale::Large => Sizes {
                max_k: 4,
                max_m: 4,
                games: 5000,
                graphs: 2000,
                max_n: 60,
                oracle_n: 6,
                oracle_edges: 9,
            },
        }
    }
}

type SuiteResult = Result<usize, String>;
type Suite = (&'static str, fn(&Sizes) -> SuiteResult);

fn all_deals(max_k: usize, max_m: usize) -> Vec<GameState> {
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
            let total = subsets.len().pow(k as u32);
            for mut code in 0..total {
                let stacks = (0..k).map(|_| {
                    let s = subsets[code % subsets.len()].clone();
                    code /= subsets.len();
                    s
                });
                out.push(GameState::new(k, m, stacks.collect::<Vec<_>>()).expect("valid deal"));
            }
        }
    }
    out
}

/// Small stacks over few numbers, so games take several rounds.
fn tight_deal(rng: &mut ChaCha8Rng, k: usize, m: usize, vizing: bool) -> GameState {
    let single = rng.random_range(0..k);
    let pool = rng.random_range(2.min(m)..=m.min(k.max(2)));
    let stacks: Vec<Vec<Card>> = (0..k)
        .map(|i| {
            let min = if vizing && i != single {
                2.min(pool)
            } else {
                1
            };
            let size = rng.random_range(min..=min.max(2).min(pool));
            let mut cards: Vec<Card> = (1..=pool as Card).collect();
            cards.shuffle(rng);
            cards.truncate(size);
            cards
        })
        .collect();
    GameState::new(k, m, stacks).expect("valid deal")
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize, cap: usize, bipartite: bool) -> Graph {
    let mut g = Graph::new(n);
    let left = rng.random_range(1..n.max(2));
    for _ in 0..rng.random_range(0..=n * cap) {
        let (u, v) = if bipartite {
            (
                rng.random_range(0..left),
                rng.random_range(left..n.max(left + 1)),
            )
        } else {
            (rng.random_range(0..n), rng.random_range(0..n))
        };
        if u != v && v < n && !g.has_edge(u, v) && g.degree(u) < cap && g.degree(v) < cap {
            g.add_edge(u, v).expect("checked edge");
        }
    }
    g
}

fn konig_exhaustive(s: &Sizes) -> SuiteResult {
    let deals = all_deals(s.max_k, s.max_m);
    for d in &deals {
        explore(d, KonigStrategy, DemonKind::Konig, d.k()).map_err(|e| format!("{d}: {e}"))?;
    }
    Ok(deals.len())
}

fn vizing_exhaustive(s: &Sizes) -> SuiteResult {
    let deals: Vec<_> = all_deals(s.max_k, s.max_m)
        .into_iter()
        .filter(|d| d.singleton_stacks() <= 1)
        .collect();
    for d in &deals {
        explore(
            d,
            VizingStrategy::new(),
            DemonKind::Vizing,
            vizing_budget(d.k()),
        )
        .map_err(|e| format!("{d}: {e}"))?;
    }
    Ok(deals.len())
}

fn random_games(s: &Sizes) -> SuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for game in 0..s.games {
        let k = rng.random_range(1..=6);
        let m = rng.random_range(k..=8);
        let vizing = game % 2 == 1;
        let d = tight_deal(&mut rng, k, m, vizing);
        let t = if vizing {
            vizing_play(&d, &mut Random::new(DemonKind::Vizing, game))
        } else {
            konig_play(&d, &mut Random::new(DemonKind::Konig, game))
        }
        .map_err(|e| format!("game {game}, {d}: {e}"))?;
        let kind = if vizing {
            DemonKind::Vizing
        } else {
            DemonKind::Konig
        };
        if t.replay(kind).map_err(|e| e.to_string())? != t.final_state {
            return Err(format!("game {game}: transcript does not replay"));
        }
    }
    Ok(s.games as usize)
}

fn contrary(s: &Sizes) -> SuiteResult {
    let deals = all_deals(s.max_k, s.max_m);
    for d in &deals {
        let mut player = Strategy::new(StrategyKind::Konig);
        let t = run_game(d, &mut player, &mut Eager::new(DemonKind::Contrary), d.k())
            .map_err(|e| format!("{d}: {e}"))?;
        if (t.outcome == Outcome::Won) != d.is_winning() {
            return Err(format!("{d}: ended {:?}", t.outcome));
        }
    }
    Ok(deals.len())
}

fn coloring(s: &Sizes, mode: ColoringMode) -> SuiteResult {
    let bipartite = mode == ColoringMode::Konig;
    let mut rng = ChaCha8Rng::seed_from_u64(if bipartite { 2 } else { 3 });
    for i in 0..s.graphs {
        let n = rng.random_range(2..=s.max_n);
        let cap = rng.random_range(1..=8);
        let g = random_graph(&mut rng, n, cap, bipartite);
        let c = edge_color(&g, mode).map_err(|e| format!("graph {i}: {e}"))?;
        verify_coloring(&g, &c, mode.palette(g.max_degree()))
            .map_err(|v| format!("graph {i}: {v}"))?;
    }
    Ok(s.graphs as usize)
}

fn subsets_of_complete(n: usize, max_edges: usize) -> Vec<Graph> {
    let all: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let mut out = Vec::new();
    let mut stack = vec![(0usize, Vec::new())];
    while let Some((start, chosen)) = stack.pop() {
        out.push(Graph::from_edges(n, chosen.iter().copied()).expect("simple graph"));
        if chosen.len() < max_edges {
            for (i, &e) in all.iter().enumerate().skip(start) {
                let mut next = chosen.clone();
                next.push(e);
                stack.push((i + 1, next));
            }
        }
    }
    out
}

fn oracle(s: &Sizes) -> SuiteResult {
    let graphs = subsets_of_complete(s.oracle_n, s.oracle_edges);
    for g in &graphs {
        let d = g.max_degree();
        if brute_force_color(g, d + 1)
            .map_err(|e| e.to_string())?
            .is_none()
        {
            return Err(format!(
                "no {}-coloring found for {:?}",
                d + 1,
                g.edges().collect::<Vec<_>>()
            ));
        }
        let c = edge_color(g, ColoringMode::Vizing).map_err(|e| e.to_string())?;
        verify_coloring(g, &c, d + 1).map_err(|v| v.to_string())?;
        if bipartition(g).is_some() {
            let c = edge_color(g, ColoringMode::Konig).map_err(|e| e.to_string())?;
            verify_coloring(g, &c, d).map_err(|v| v.to_string())?;
        }
    }
    if brute_force_color(&Graph::petersen(), 3)
        .map_err(|e| e.to_string())?
        .is_some()
    {
        return Err("Petersen graph 3-colored".into());
    }
    Ok(graphs.len())
}

/// Claims the triangle needs only two colors; the oracle must disagree.
fn injected(_: &Sizes) -> SuiteResult {
    match brute_force_color(&Graph::complete(3), 2) {
        Ok(Some(_)) => Ok(1),
        _ => Err("injected failure: triangle is not 2-edge-colorable".into()),
    }
}

pub fn run(scale: Scale, inject_failure: bool) -> ExitCode {
    let sizes = scale.sizes();
    let mut suites: Vec<Suite> = vec![
        ("konig-exhaustive", konig_exhaustive),
        ("vizing-exhaustive", vizing_exhaustive),
        ("random-games", random_games),
        ("contrary-demon", contrary),
        ("konig-coloring", |s| coloring(s, ColoringMode::Konig)),
        ("vizing-coloring", |s| coloring(s, ColoringMode::Vizing)),
        ("oracle-cross-check", oracle),
    ];
    if inject_failure {
        suites.push(("injected-failure", injected));
    }
    let name = scale.to_possible_value().expect("no skipped variants");
    println!("selftest {}: {} suites", name.get_name(), suites.len());
    let start = Instant::now();
    let results: Vec<_> = std::thread::scope(|scope| {
        let handles: Vec<_> = suites
            .iter()
            .map(|&(_, suite)| {
                let sizes = &sizes;
                scope.spawn(move || {
                    let t = Instant::now();
                    (suite(sizes), t.elapsed())
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| {
                h.join()
                    .unwrap_or_else(|_| (Err("suite panicked".into()), Default::default()))
            })
            .collect()
    });
    let mut failed = 0;
    for ((name, _), (result, took)) in suites.iter().zip(results) {
        match result {
            Ok(cases) => println!("PASS {name}: {cases} cases [{took:.2?}]"),
            Err(why) => {
                failed += 1;
                println!("FAIL {name}: {why} [{took:.2?}]");
            }
        }
    }
    println!(
        "{} of {} suites passed in {:.2?}",
        suites.len() - failed,
        suites.len(),
        start.elapsed()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

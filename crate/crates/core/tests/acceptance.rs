//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails. Run with `cargo test -p demon-solitaire --test acceptance`.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use demon_solitaire::coloring::{
    bipartition, brute_force_color, edge_color, edge_color_with_stats, extend_at_vertex_traced,
    verify_coloring, ColoringMode, EdgeColoring, Graph,
};
use demon_solitaire::game::policy::{Eager, Random, Scripted};
use demon_solitaire::game::{
    run_game, DemonKind, DemonResponse, GameState, Outcome, PlayerMove, Transcript,
};
use demon_solitaire::strategies::{
    explore, konig_play, vizing_budget, vizing_play, Adversary, KonigStrategy, Strategy,
    StrategyKind, VizingStrategy,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn konig_exhaustive() -> Check {
    let deals = common::all_deals(3, 4);
    let mut worst = 0;
    for s in &deals {
        let k = s.k();
        let tree =
            explore(s, KonigStrategy, DemonKind::Konig, k).map_err(|e| format!("{s}: {e}"))?;
        worst = worst.max(tree.worst_moves);
        let mut adv = Adversary::new(DemonKind::Konig, KonigStrategy, k);
        let t = konig_play(s, &mut adv).map_err(|e| format!("{s}: {e}"))?;
        ensure(t.player_moves() == tree.worst_moves, || {
            format!(
                "{s}: adversary took {} moves, tree says {}",
                t.player_moves(),
                tree.worst_moves
            )
        })?;
    }
    Ok(format!("{} deals, longest line {worst} moves", deals.len()))
}

fn vizing_exhaustive() -> Check {
    let deals: Vec<_> = common::all_deals(3, 4)
        .into_iter()
        .filter(|s| s.singleton_stacks() <= 1)
        .collect();
    let mut worst = 0;
    for s in &deals {
        let bound = vizing_budget(s.k());
        let tree = explore(s, VizingStrategy::new(), DemonKind::Vizing, bound)
            .map_err(|e| format!("{s}: {e}"))?;
        worst = worst.max(tree.worst_moves);
        let mut adv = Adversary::new(DemonKind::Vizing, VizingStrategy::new(), bound);
        let t = vizing_play(s, &mut adv).map_err(|e| format!("{s}: {e}"))?;
        ensure(
            t.hand
                .as_ref()
                .is_some_and(|h| h.is_winning(&t.final_state)),
            || format!("{s}: no winning hand reported"),
        )?;
    }
    Ok(format!("{} deals, longest line {worst} moves", deals.len()))
}

/// Replays a transcript round by round, checking conservation of every
/// number and, for the König strategy, that each round grows the largest hand.
fn check_rounds(t: &Transcript, kind: DemonKind, konig: bool) -> Result<(), String> {
    let k = t.initial.k();
    let profile = t.initial.profile();
    let mut cur = t.initial.clone();
    for (n, r) in t.rounds.iter().enumerate() {
        let mid = cur
            .apply_player_move(&r.player)
            .map_err(|e| e.to_string())?;
        let next = mid
            .apply_demon_response(&r.player, kind, &r.demon)
            .map_err(|e| format!("round {}: {e}", n + 1))?;
        for s in [&mid, &next] {
            ensure(s.profile() == profile, || {
                format!("round {}: profile changed", n + 1)
            })?;
            for c in s.cards() {
                let total = s.occurrences(c) + s.reserve_count(c).unwrap();
                ensure(total == k, || {
                    format!("round {}: number {c} not conserved", n + 1)
                })?;
            }
        }
        if konig && kind != DemonKind::Contrary {
            ensure(next.max_hand().len() == cur.max_hand().len() + 1, || {
                format!("round {}: largest hand did not grow", n + 1)
            })?;
        }
        cur = next;
    }
    ensure(cur == t.final_state, || {
        "replay disagrees with final state".into()
    })
}

fn randomized_scale_up() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut moves = 0;
    for game in 0..1000u64 {
        let k = rng.random_range(1..=6);
        let m = rng.random_range(k..=8);
        let konig = game % 2 == 0;
        let s = common::random_deal(&mut rng, k, m, !konig);
        let kind = if konig {
            [DemonKind::Lazy, DemonKind::Konig][rng.random_range(0..2)]
        } else {
            [DemonKind::Lazy, DemonKind::Konig, DemonKind::Vizing][rng.random_range(0..3)]
        };
        let mut demon = Random::new(kind, game);
        let t = if konig {
            konig_play(&s, &mut demon)
        } else {
            vizing_play(&s, &mut demon)
        }
        .map_err(|e| format!("game {game} ({s}): {e}"))?;
        let budget = if konig { k } else { vizing_budget(k) };
        ensure(
            t.outcome == Outcome::Won && t.player_moves() <= budget,
            || {
                format!(
                    "game {game}: {:?} after {} moves",
                    t.outcome,
                    t.player_moves()
                )
            },
        )?;
        ensure(
            t.hand
                .as_ref()
                .is_some_and(|h| h.is_winning(&t.final_state)),
            || format!("game {game}: hand is not winning"),
        )?;
        check_rounds(&t, kind, konig).map_err(|e| format!("game {game}: {e}"))?;
        moves += t.player_moves();
    }
    Ok(format!("1000 games won, {moves} player moves"))
}

fn contrary_demon() -> Check {
    let deals = common::all_deals(3, 4);
    let mut winning = 0;
    for s in &deals {
        for kind in [StrategyKind::Konig, StrategyKind::Vizing] {
            if kind == StrategyKind::Vizing && s.singleton_stacks() > 1 {
                continue;
            }
            let mut player = Strategy::new(kind);
            let budget = s.k() * s.k() + s.k();
            let t = run_game(s, &mut player, &mut Eager::new(DemonKind::Contrary), budget)
                .map_err(|e| format!("{s}: {e}"))?;
            ensure((t.outcome == Outcome::Won) == s.is_winning(), || {
                format!("{s}: {kind} strategy ended {:?}", t.outcome)
            })?;
            check_rounds(&t, DemonKind::Contrary, false)?;
        }
        winning += usize::from(s.is_winning());
    }
    Ok(format!("{} deals, {winning} start winning", deals.len()))
}

/// Recolors `g` one vertex at a time the same way [`edge_color`] does and
/// replays every game under the demon rule the mode promises.
fn induced_responses_conform(g: &Graph, mode: ColoringMode) -> Result<usize, String> {
    let kind = match mode {
        ColoringMode::Konig => DemonKind::Konig,
        ColoringMode::Vizing => DemonKind::Vizing,
    };
    let mut current = Graph::new(g.n());
    let mut coloring = EdgeColoring::new(mode.palette(g.max_degree()));
    let mut swaps = 0;
    for v in (0..g.n()).rev() {
        for &u in g.neighbors(v).range(v + 1..) {
            current.add_edge(v, u).unwrap();
        }
        let ext =
            extend_at_vertex_traced(&current, &coloring, v, mode).map_err(|e| e.to_string())?;
        if let Some(t) = &ext.transcript {
            let end = t.replay(kind).map_err(|e| format!("vertex {v}: {e}"))?;
            ensure(end == t.final_state, || {
                format!("vertex {v}: replay mismatch")
            })?;
        }
        swaps += ext
            .swaps
            .iter()
            .filter(|s| s.induced != DemonResponse::Pass)
            .count();
        coloring = ext.coloring;
    }
    Ok(swaps)
}

fn timed_coloring(mode: ColoringMode, bipartite_only: bool, limit: Duration) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(if bipartite_only { 31 } else { 37 });
    let start = Instant::now();
    let (mut swaps, mut bip) = (0, 0);
    for i in 0..500 {
        let n = rng.random_range(2..=40);
        let cap = rng.random_range(1..=8);
        let g = if bipartite_only {
            common::random_bipartite(&mut rng, n, cap)
        } else {
            common::random_graph(&mut rng, n, cap)
        };
        let d = g.max_degree();
        let palette = mode.palette(d);
        let (c, stats) = edge_color_with_stats(&g, mode).map_err(|e| format!("graph {i}: {e}"))?;
        verify_coloring(&g, &c, palette).map_err(|e| format!("graph {i}: {e}"))?;
        ensure(c.colors_used().len() <= palette, || {
            format!("graph {i}: too many colors")
        })?;
        swaps += stats.induced_swaps;
        swaps += induced_responses_conform(&g, mode).map_err(|e| format!("graph {i}: {e}"))?;
        if !bipartite_only && bipartition(&g).is_some() {
            bip += 1;
            let c = edge_color(&g, ColoringMode::Konig).map_err(|e| format!("graph {i}: {e}"))?;
            verify_coloring(&g, &c, d).map_err(|e| format!("graph {i}: {e}"))?;
            induced_responses_conform(&g, ColoringMode::Konig)
                .map_err(|e| format!("graph {i}: {e}"))?;
        }
    }
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:.2?}, limit {limit:?}"))?;
    let extra = if bipartite_only {
        String::new()
    } else {
        format!(", {bip} bipartite also in König mode")
    };
    Ok(format!(
        "500 graphs in {took:.2?}, {swaps} induced swaps{extra}"
    ))
}

fn oracle_cross_check() -> Check {
    let graphs = common::small_graphs(6, 8);
    for g in &graphs {
        let d = g.max_degree();
        let found = brute_force_color(g, d + 1).map_err(|e| e.to_string())?;
        ensure(found.is_some(), || {
            format!(
                "no {}-coloring of {:?}",
                d + 1,
                g.edges().collect::<Vec<_>>()
            )
        })?;
        let c = edge_color(g, ColoringMode::Vizing).map_err(|e| e.to_string())?;
        verify_coloring(g, &c, d + 1).map_err(|e| e.to_string())?;
        if bipartition(g).is_some() {
            let c = edge_color(g, ColoringMode::Konig).map_err(|e| e.to_string())?;
            verify_coloring(g, &c, d).map_err(|e| e.to_string())?;
        }
    }
    let triangle = Graph::complete(3);
    ensure(brute_force_color(&triangle, 2).unwrap().is_none(), || {
        "triangle 2-colorable".into()
    })?;
    ensure(brute_force_color(&triangle, 3).unwrap().is_some(), || {
        "triangle not 3-colorable".into()
    })?;
    let c = edge_color(&triangle, ColoringMode::Vizing).map_err(|e| e.to_string())?;
    ensure(c.colors_used().len() == 3, || {
        "triangle colored with fewer than 3".into()
    })?;
    let petersen = Graph::petersen();
    ensure(brute_force_color(&petersen, 3).unwrap().is_none(), || {
        "Petersen 3-colorable".into()
    })?;
    let c = edge_color(&petersen, ColoringMode::Vizing).map_err(|e| e.to_string())?;
    verify_coloring(&petersen, &c, 4).map_err(|e| e.to_string())?;
    Ok(format!(
        "{} edge subsets of K6; triangle 3, Petersen 4",
        graphs.len()
    ))
}

fn worked_example() -> Check {
    let sample = GameState::new(3, 4, [vec![2], vec![2], vec![2, 3, 4]]).unwrap();
    let sample_won = GameState::new(3, 4, [vec![1], vec![2], vec![2, 3, 4]]).unwrap();
    let reserve: Vec<_> = sample.reserve().into_values().collect();
    ensure(reserve == [3, 0, 2, 2], || format!("reserve {reserve:?}"))?;
    ensure(!sample.is_winning() && sample_won.is_winning(), || {
        "win status".into()
    })?;
    let mut demon = Scripted::new(DemonKind::Konig, vec![DemonResponse::Pass]);
    let t = konig_play(&sample, &mut demon).map_err(|e| e.to_string())?;
    ensure(t.rounds.len() == 1, || format!("{} rounds", t.rounds.len()))?;
    ensure(t.rounds[0].player == PlayerMove::new(1, 2, 1), || {
        format!("move {}", t.rounds[0].player)
    })?;
    ensure(t.rounds[0].demon == DemonResponse::Pass, || {
        "demon did not pass".into()
    })?;
    ensure(t.final_state == sample_won, || {
        format!("final state\n{}", t.final_state)
    })?;
    let hand = t.hand.ok_or("no hand")?;
    ensure(
        hand.cards().len() == 3 && hand.is_winning(&sample_won),
        || format!("hand {hand}"),
    )?;
    Ok(format!(
        "(1, 2->1) then pass reaches the winning position with hand {hand}"
    ))
}

fn main() -> ExitCode {
    let checks: [Criterion; 8] = [
        ("konig-strategy-exhaustive", konig_exhaustive),
        ("vizing-strategy-exhaustive", vizing_exhaustive),
        ("randomized-scale-up", randomized_scale_up),
        ("contrary-demon", contrary_demon),
        ("konig-coloring", || {
            timed_coloring(ColoringMode::Konig, true, Duration::from_secs(30))
        }),
        ("vizing-coloring", || {
            timed_coloring(ColoringMode::Vizing, false, Duration::from_secs(60))
        }),
        ("oracle-cross-check", oracle_cross_check),
        ("worked-example", worked_example),
    ];
    let mut failed = 0;
    for (name, check) in checks {
        let start = Instant::now();
        match check() {
            Ok(detail) => println!("PASS {name}: {detail} [{:.2?}]", start.elapsed()),
            Err(why) => {
                failed += 1;
                println!("FAIL {name}: {why} [{:.2?}]", start.elapsed());
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        checks.len() - failed,
        checks.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

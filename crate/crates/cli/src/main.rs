//! `solitaire`: color graphs, verify colorings, play games, self-check, serve.
//!
//! Exit status: 0 on success or a won game, 1 on a domain failure (lost game,
//! improper coloring, failed self-check), 2 on bad usage or unreadable input.

mod selftest;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use demon_solitaire::coloring::{
    edge_color, parse_coloring, parse_graph, verify_coloring, write_coloring, ColoringMode,
};
use demon_solitaire::game::format::parse_game;
use demon_solitaire::game::policy::{Eager, Random};
use demon_solitaire::game::{run_game, DemonKind, DemonPolicy, GameState, Outcome};
use demon_solitaire::strategies::{vizing_budget, Strategy, StrategyKind};
use demon_solitaire::Error as GameError;
use solitaire_service::deal::random_deal;
use solitaire_service::SessionStore;

#[derive(Parser)]
#[command(
    name = "solitaire",
    version,
    about = "Demon solitaire games and the edge colorings they drive"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Auto,
    Konig,
    Vizing,
}

#[derive(Subcommand)]
enum Command {
    /// Edge-color a graph given as `u v` lines.
    Color {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "auto")]
        mode: ModeArg,
        /// Write the coloring here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check a `u v c` coloring against a graph, with colors 1..=M
    /// (default: maximum degree + 1).
    Verify {
        graph: PathBuf,
        coloring: PathBuf,
        m: Option<usize>,
    },
    /// Play one game and write its transcript as JSON.
    Play {
        /// A game file, or `KxM` (e.g. `4x6`) for a deal generated from --seed.
        game: String,
        #[arg(long, default_value = "konig")]
        demon: DemonKind,
        #[arg(long, default_value = "konig")]
        strategy: StrategyKind,
        /// Seeds the deal generator and makes the demon answer at random.
        /// Without it the demon always takes its first allowed swap.
        #[arg(long)]
        seed: Option<u64>,
        /// Player moves allowed (default: k for König, k² + k for Vizing).
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run the invariant suites.
    Selftest {
        #[arg(value_enum, default_value = "small")]
        scale: selftest::Scale,
        /// Add a suite that is bound to fail, to check the failure path.
        #[arg(long)]
        inject_failure: bool,
    },
    /// Run the HTTP session service.
    Serve {
        #[arg(long, default_value = "127.0.0.1:8080")]
        bind: String,
    },
}

/// An error with the exit status it maps to.
struct Failure {
    status: u8,
    error: anyhow::Error,
}

impl Failure {
    fn usage(error: anyhow::Error) -> Self {
        Failure { status: 2, error }
    }
}

impl From<GameError> for Failure {
    fn from(e: GameError) -> Self {
        // the input itself is unusable: malformed, or outside what was asked for
        let status = match e.root() {
            GameError::Parse { .. }
            | GameError::Json(_)
            | GameError::BadGameNumber(_)
            | GameError::BadCardNumber { .. }
            | GameError::WrongStackCount { .. }
            | GameError::EmptyStack(_)
            | GameError::CardOutOfRange { .. }
            | GameError::DuplicateCard { .. }
            | GameError::NotBipartite
            | GameError::ProfileUnsupported(_)
            | GameError::PreconditionViolated(_)
            | GameError::TooLarge { .. } => 2,
            _ => 1,
        };
        Failure {
            status,
            error: e.into(),
        }
    }
}

type CmdResult = Result<ExitCode, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))
        .map_err(Failure::usage)
}

fn write_out(output: Option<&Path>, text: &str) -> Result<(), Failure> {
    match output {
        Some(path) => fs::write(path, text)
            .with_context(|| format!("cannot write {}", path.display()))
            .map_err(Failure::usage),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn with_file<T>(path: &Path, r: demon_solitaire::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| {
        let mut f = Failure::from(e);
        f.error = f.error.context(path.display().to_string());
        f
    })
}

fn cmd_color(input: &Path, mode: ModeArg, output: Option<&Path>) -> CmdResult {
    let g = with_file(input, parse_graph(&read(input)?))?;
    let mode = match mode {
        ModeArg::Auto => ColoringMode::auto(&g),
        ModeArg::Konig => ColoringMode::Konig,
        ModeArg::Vizing => ColoringMode::Vizing,
    };
    let coloring = edge_color(&g, mode)?;
    let bound = mode.palette(g.max_degree());
    if let Err(v) = verify_coloring(&g, &coloring, bound) {
        return Err(Failure {
            status: 1,
            error: anyhow!("produced an improper coloring: {v}"),
        });
    }
    write_out(output, &write_coloring(&g, &coloring))?;
    eprintln!(
        "{mode} mode: {} colors used <= bound {bound} (max degree {})",
        coloring.colors_used().len(),
        g.max_degree()
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(graph: &Path, coloring: &Path, m: Option<usize>) -> CmdResult {
    let g = with_file(graph, parse_graph(&read(graph)?))?;
    let c = with_file(coloring, parse_coloring(&read(coloring)?))?;
    let m = m.unwrap_or(g.max_degree() + 1);
    match verify_coloring(&g, &c, m) {
        Ok(()) => {
            println!(
                "proper: {} edges, {} colors within 1..={m}",
                g.edge_count(),
                c.colors_used().len()
            );
            Ok(ExitCode::SUCCESS)
        }
        Err(v) => {
            println!("improper: {v}");
            Ok(ExitCode::from(1))
        }
    }
}

/// `KxM` with --seed generates a deal; anything else is a game file.
fn load_game(game: &str, seed: Option<u64>, strategy: StrategyKind) -> Result<GameState, Failure> {
    let dims = game
        .split_once(['x', 'X'])
        .and_then(|(k, m)| Some((k.parse::<usize>().ok()?, m.parse::<usize>().ok()?)));
    match dims {
        Some((k, m)) if !Path::new(game).exists() => {
            let seed = seed
                .ok_or_else(|| Failure::usage(anyhow!("a generated deal `{game}` needs --seed")))?;
            Ok(random_deal(k, m, seed, strategy == StrategyKind::Vizing)?)
        }
        _ => {
            let path = Path::new(game);
            with_file(path, parse_game(&read(path)?))
        }
    }
}

fn cmd_play(
    game: &str,
    demon: DemonKind,
    strategy: StrategyKind,
    seed: Option<u64>,
    budget: Option<usize>,
    output: Option<&Path>,
) -> CmdResult {
    let state = load_game(game, seed, strategy)?;
    let singles = state.singleton_stacks();
    if strategy == StrategyKind::Vizing && singles > 1 {
        return Err(GameError::ProfileUnsupported(singles).into());
    }
    let k = state.k();
    let budget = budget.unwrap_or(match strategy {
        StrategyKind::Konig => k,
        StrategyKind::Vizing => vizing_budget(k),
    });
    let mut policy: Box<dyn DemonPolicy> = match seed {
        Some(seed) => Box::new(Random::new(demon, seed)),
        None => Box::new(Eager::new(demon)),
    };
    let mut player = Strategy::new(strategy);
    let t = run_game(&state, &mut player, policy.as_mut(), budget)?;
    write_out(output, &(t.to_json() + "\n"))?;
    let outcome = serde_name(t.outcome);
    eprintln!(
        "{outcome} after {} player moves ({strategy} strategy, {demon} demon)",
        t.player_moves()
    );
    Ok(if t.outcome == Outcome::Won {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn serde_name(o: Outcome) -> &'static str {
    match o {
        Outcome::Won => "Won",
        Outcome::BudgetExhausted => "Budget_Exhausted",
        Outcome::Stuck => "Stuck",
    }
}

fn cmd_serve(bind: &str) -> CmdResult {
    let rt = tokio::runtime::Runtime::new().map_err(|e| Failure {
        status: 1,
        error: e.into(),
    })?;
    eprintln!("serving on http://{bind}");
    rt.block_on(solitaire_service::serve(
        bind,
        Arc::new(SessionStore::new()),
    ))
    .with_context(|| format!("cannot serve on {bind}"))
    .map_err(|e| Failure {
        status: 1,
        error: e,
    })?;
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Color {
            input,
            mode,
            output,
        } => cmd_color(&input, mode, output.as_deref()),
        Command::Verify { graph, coloring, m } => cmd_verify(&graph, &coloring, m),
        Command::Play {
            game,
            demon,
            strategy,
            seed,
            budget,
            output,
        } => cmd_play(&game, demon, strategy, seed, budget, output.as_deref()),
        Command::Selftest {
            scale,
            inject_failure,
        } => Ok(selftest::run(scale, inject_failure)),
        Command::Serve { bind } => cmd_serve(&bind),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.status)
        }
    }
}

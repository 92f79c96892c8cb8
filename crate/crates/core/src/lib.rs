//! Demon solitaire: a card game whose winning strategies double as edge
//! coloring algorithms.
//!
//! - [`game`]: deals, swaps, the four demon rules, hands, and the round loop.
//! - [`strategies`]: the player's winning strategies and an exhaustive
//!   adversary for checking them.
//! - [`coloring`]: graphs, edge colorings, Kempe chain swaps, and colorings
//!   with `Δ` colors (bipartite) or `Δ + 1` colors (any simple graph) built by
//!   playing the game at each vertex.

pub mod coloring;
pub mod error;
pub mod game;
pub mod strategies;

pub use error::{Error, Result};

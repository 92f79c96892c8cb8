//! Seeded deal generator.

use demon_solitaire::game::{Card, GameConfig, GameState};
use demon_solitaire::Result;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Deals `k` random nonempty stacks over `1..=m`. With `vizing_profile` every
/// stack but at most one gets two or more cards (when `m` allows).
pub fn random_deal(k: usize, m: usize, seed: u64, vizing_profile: bool) -> Result<GameState> {
    GameConfig::new(k, m)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let single = rng.random_range(0..k);
    let stacks: Vec<Vec<Card>> = (0..k)
        .map(|i| {
            let min = if vizing_profile && i != single {
                2.min(m)
            } else {
                1
            };
            let size = rng.random_range(min..=m);
            let mut cards: Vec<Card> = (1..=m as Card).collect();
            cards.shuffle(&mut rng);
            cards.truncate(size);
            cards
        })
        .collect();
    GameState::new(k, m, stacks)
}

//! Augmenting-path bipartite matching between stacks and card numbers.

use super::Card;

/// Maximum matching of left vertices (stacks) to card numbers.
///
/// `adj[s]` lists the cards stack `s` may take, in the order they should be
/// tried. Left vertices are processed in index order, so among maximum
/// matchings the result favours low stacks holding low cards.
pub(crate) fn max_matching(adj: &[Vec<Card>]) -> Vec<Option<Card>> {
    let top = adj
        .iter()
        .flat_map(|cards| cards.iter().copied())
        .max()
        .unwrap_or(0) as usize;
    let mut owner: Vec<Option<usize>> = vec![None; top + 1];
    let mut seen = vec![false; top + 1];
    for s in 0..adj.len() {
        seen.iter_mut().for_each(|x| *x = false);
        augment(s, adj, &mut owner, &mut seen);
    }
    let mut pick = vec![None; adj.len()];
    for (card, s) in owner.iter().enumerate() {
        if let Some(s) = s {
            pick[*s] = Some(card as Card);
        }
    }
    pick
}

fn augment(s: usize, adj: &[Vec<Card>], owner: &mut [Option<usize>], seen: &mut [bool]) -> bool {
    // a free card is taken before any earlier stack is asked to move
    if let Some(&c) = adj[s].iter().find(|&&c| owner[c as usize].is_none()) {
        seen[c as usize] = true;
        owner[c as usize] = Some(s);
        return true;
    }
    for &c in &adj[s] {
        let c = c as usize;
        if seen[c] {
            continue;
        }
        seen[c] = true;
        let free = match owner[c] {
            None => true,
            Some(other) => augment(other, adj, owner, seen),
        };
        if free {
            owner[c] = Some(s);
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn augments_through_earlier_choice() {
        // stack 0 grabs 1 first, then yields it to stack 1
        let adj = vec![vec![1, 2], vec![1]];
        assert_eq!(max_matching(&adj), vec![Some(2), Some(1)]);
    }

    #[test]
    fn leaves_later_stack_unmatched() {
        let adj = vec![vec![2], vec![2], vec![2, 3, 4]];
        assert_eq!(max_matching(&adj), vec![Some(2), None, Some(3)]);
    }

    #[test]
    fn prefers_free_cards() {
        let adj = vec![vec![1, 2, 3], vec![1, 2, 3], vec![1, 2, 3]];
        assert_eq!(max_matching(&adj), vec![Some(1), Some(2), Some(3)]);
    }

    #[test]
    fn empty_input() {
        assert!(max_matching(&[]).is_empty());
    }
}

//! Random insertion/deletion channel.

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use vtlist::{Error, Result, Word};

/// `deletions` deletions followed by `insertions` insertions, drawn from
/// ChaCha8 seeded with `seed`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ChannelSpec {
    pub deletions: usize,
    pub insertions: usize,
    pub seed: u64,
}

impl ChannelSpec {
    /// `ε + δ`.
    pub fn total(&self) -> usize {
        self.deletions + self.insertions
    }
}

/// Deletes `spec.deletions` distinct uniformly chosen positions, then
/// inserts uniformly random symbols into uniformly random gaps, one at a
/// time. The same spec and word always give the same output.
pub fn transmit(c: &Word, spec: &ChannelSpec) -> Result<Word> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    transmit_with(c, spec.deletions, spec.insertions, &mut rng)
}

pub(crate) fn transmit_with<R: Rng>(
    c: &Word,
    deletions: usize,
    insertions: usize,
    rng: &mut R,
) -> Result<Word> {
    if deletions > c.len() {
        return Err(Error::InvalidParams(format!(
            "{deletions} deletions from a word of length {}",
            c.len()
        )));
    }
    let mut drop = index::sample(rng, c.len(), deletions).into_vec();
    drop.sort_unstable();
    let mut symbols = Vec::with_capacity(c.len() - deletions + insertions);
    let mut next_drop = drop.iter().peekable();
    for (i, &s) in c.symbols().iter().enumerate() {
        if next_drop.peek() == Some(&&i) {
            next_drop.next();
        } else {
            symbols.push(s);
        }
    }
    for _ in 0..insertions {
        let gap = rng.random_range(0..=symbols.len());
        let s = rng.random_range(0..c.q()) as u8;
        symbols.insert(gap, s);
    }
    Word::new(symbols, c.q())
}

#[cfg(test)]
mod tests {
    use super::*;
    use vtlist::sequences::{indel_distance, is_subsequence};

    fn spec(deletions: usize, insertions: usize, seed: u64) -> ChannelSpec {
        ChannelSpec {
            deletions,
            insertions,
            seed,
        }
    }

    #[test]
    fn identity_channel() {
        let c: Word = "0110100".parse().unwrap();
        assert_eq!(transmit(&c, &spec(0, 0, 0)).unwrap(), c);
    }

    #[test]
    fn deletions_give_subsequences() {
        let c: Word = "0110100111".parse().unwrap();
        for seed in 0..200 {
            let r = transmit(&c, &spec(2, 0, seed)).unwrap();
            assert_eq!(r.len(), 8);
            assert!(is_subsequence(&r, &c).unwrap());
        }
    }

    #[test]
    fn mixed_errors_stay_within_radius() {
        let c: Word = "0110100111".parse().unwrap();
        for seed in 0..200 {
            let r = transmit(&c, &spec(1, 1, seed)).unwrap();
            assert_eq!(r.len(), 10);
            assert!(indel_distance(&c, &r).unwrap() <= 2);
            let r = transmit(&c, &spec(0, 3, seed)).unwrap();
            assert!(is_subsequence(&c, &r).unwrap());
        }
    }

    #[test]
    fn seeded_and_validated() {
        let c: Word = "0110100111".parse().unwrap();
        let runs: Vec<Word> = (0..2)
            .map(|_| transmit(&c, &spec(2, 2, 42)).unwrap())
            .collect();
        assert_eq!(runs[0], runs[1]);
        assert!(transmit(&c, &spec(11, 0, 0)).is_err());
        assert!(transmit(&c, &spec(10, 0, 0)).unwrap().is_empty());
    }
}

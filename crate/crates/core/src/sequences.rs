//! Sequence arithmetic over a finite alphabet.
//!
//! Distances here are *indel* distances: the minimum number of insertions
//! plus deletions turning one word into the other. A substitution costs two.
//!
//! Every enumeration returns a [`BTreeSet`], so results are deduplicated and
//! come out in the canonical word order (shorter first, then lexicographic).

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest supported alphabet.
pub const MAX_ALPHABET: usize = 256;

/// A finite sequence of symbols `0..q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    q: u16,
    symbols: Vec<u8>,
}

impl Word {
    pub fn new(symbols: Vec<u8>, q: usize) -> Result<Self> {
        check_alphabet(q)?;
        if let Some(&bad) = symbols.iter().find(|&&s| usize::from(s) >= q) {
            return Err(Error::SymbolOutOfRange {
                symbol: bad.into(),
                q,
            });
        }
        Ok(Self {
            q: q as u16,
            symbols,
        })
    }

    /// Binary word from a slice of 0/1 values.
    pub fn binary(bits: &[u8]) -> Result<Self> {
        Self::new(bits.to_vec(), 2)
    }

    pub fn empty(q: usize) -> Result<Self> {
        Self::new(Vec::new(), q)
    }

    /// Parses a string of digit characters, e.g. `"01101"`. The empty
    /// string is the empty word.
    pub fn parse(s: &str, q: usize) -> Result<Self> {
        check_alphabet(q)?;
        let parse_err = || Error::Parse {
            input: s.to_owned(),
            q: q as u16,
        };
        let symbols = s
            .chars()
            .map(|ch| {
                ch.to_digit(36)
                    .filter(|&d| (d as usize) < q)
                    .map(|d| d as u8)
                    .ok_or_else(parse_err)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            q: q as u16,
            symbols,
        })
    }

    /// The `index`-th word of length `len` in lexicographic order, i.e. the
    /// base-`q` digits of `index` with the most significant digit first.
    pub fn from_index(mut index: u64, len: usize, q: usize) -> Result<Self> {
        check_alphabet(q)?;
        let mut symbols = vec![0u8; len];
        for slot in symbols.iter_mut().rev() {
            *slot = (index % q as u64) as u8;
            index /= q as u64;
        }
        if index != 0 {
            return Err(Error::Overflow("word index"));
        }
        Ok(Self {
            q: q as u16,
            symbols,
        })
    }

    /// Inverse of [`Word::from_index`].
    pub fn to_index(&self) -> Option<u64> {
        self.symbols.iter().try_fold(0u64, |acc, &s| {
            acc.checked_mul(u64::from(self.q))?
                .checked_add(u64::from(s))
        })
    }

    pub fn q(&self) -> usize {
        self.q.into()
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn is_binary(&self) -> bool {
        self.q == 2
    }

    /// Number of non-zero symbols.
    pub fn weight(&self) -> usize {
        self.symbols.iter().filter(|&&s| s != 0).count()
    }

    /// Copy with `symbol` inserted before the 0-based `index` (`index == len`
    /// appends).
    pub fn with_inserted(&self, index: usize, symbol: u8) -> Result<Self> {
        if usize::from(symbol) >= self.q() {
            return Err(Error::SymbolOutOfRange {
                symbol: symbol.into(),
                q: self.q(),
            });
        }
        if index > self.len() {
            return Err(Error::LengthOutOfRange {
                len: index,
                min: 0,
                max: self.len(),
            });
        }
        let mut symbols = Vec::with_capacity(self.len() + 1);
        symbols.extend_from_slice(&self.symbols[..index]);
        symbols.push(symbol);
        symbols.extend_from_slice(&self.symbols[index..]);
        Ok(Self { q: self.q, symbols })
    }

    /// Copy with the symbol at the 0-based `index` removed.
    pub fn with_deleted(&self, index: usize) -> Result<Self> {
        if index >= self.len() {
            return Err(Error::LengthOutOfRange {
                len: index,
                min: 0,
                max: self.len().saturating_sub(1),
            });
        }
        let mut symbols = self.symbols.clone();
        symbols.remove(index);
        Ok(Self { q: self.q, symbols })
    }

    fn same_alphabet(&self, other: &Word) -> Result<()> {
        if self.q != other.q {
            return Err(Error::AlphabetMismatch {
                left: self.q,
                right: other.q,
            });
        }
        Ok(())
    }

    fn from_parts(q: u16, symbols: Vec<u8>) -> Self {
        Self { q, symbols }
    }
}

fn check_alphabet(q: usize) -> Result<()> {
    if !(2..=MAX_ALPHABET).contains(&q) {
        return Err(Error::InvalidAlphabet(q));
    }
    Ok(())
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.q
            .cmp(&other.q)
            .then(self.len().cmp(&other.len()))
            .then_with(|| self.symbols.cmp(&other.symbols))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q <= 36 {
            for &s in &self.symbols {
                let ch = char::from_digit(s.into(), 36).expect("symbol below 36");
                write!(f, "{ch}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.symbols.iter().map(u8::to_string).collect();
            write!(f, "[{}]", parts.join(","))
        }
    }
}

/// Parses a binary word.
impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Word::parse(s, 2)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Length of a longest common subsequence, O(|a|·|b|) time and
/// O(min(|a|,|b|)) space.
pub fn lcs_len(a: &[u8], b: &[u8]) -> usize {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut row = vec![0usize; short.len() + 1];
    for &x in long {
        let mut diag = 0;
        for (j, &y) in short.iter().enumerate() {
            let up = row[j + 1];
            row[j + 1] = if x == y { diag + 1 } else { up.max(row[j]) };
            diag = up;
        }
    }
    row[short.len()]
}

/// Indel (Levenshtein) distance `|a| + |b| - 2·LCS(a, b)`.
pub fn indel_distance(a: &Word, b: &Word) -> Result<usize> {
    a.same_alphabet(b)?;
    Ok(indel_distance_raw(a.symbols(), b.symbols()))
}

pub(crate) fn indel_distance_raw(a: &[u8], b: &[u8]) -> usize {
    a.len() + b.len() - 2 * lcs_len(a, b)
}

/// True iff `a` can be obtained from `b` by deletions only.
pub fn is_subsequence(a: &Word, b: &Word) -> Result<bool> {
    a.same_alphabet(b)?;
    Ok(is_subsequence_raw(a.symbols(), b.symbols()))
}

pub(crate) fn is_subsequence_raw(a: &[u8], b: &[u8]) -> bool {
    let mut rest = b.iter();
    a.iter().all(|x| rest.any(|y| y == x))
}

/// Number of maximal blocks of equal adjacent symbols; 0 for the empty word.
pub fn runs(w: &Word) -> usize {
    run_starts(w.symbols()).count()
}

fn run_starts(symbols: &[u8]) -> impl Iterator<Item = usize> + '_ {
    (0..symbols.len()).filter(move |&i| i == 0 || symbols[i] != symbols[i - 1])
}

/// Distinct words obtained from `w` by a single deletion. Deleting any symbol
/// of a run gives the same word, so one deletion per run suffices.
fn single_deletions(w: &Word) -> impl Iterator<Item = Word> + '_ {
    run_starts(w.symbols()).map(move |i| {
        let mut symbols = w.symbols.clone();
        symbols.remove(i);
        Word::from_parts(w.q, symbols)
    })
}

fn single_insertions(w: &Word) -> impl Iterator<Item = Word> + '_ {
    (0..=w.len()).flat_map(move |gap| {
        (0..w.q).map(move |sym| {
            let mut symbols = Vec::with_capacity(w.len() + 1);
            symbols.extend_from_slice(&w.symbols[..gap]);
            symbols.push(sym as u8);
            symbols.extend_from_slice(&w.symbols[gap..]);
            Word::from_parts(w.q, symbols)
        })
    })
}

/// All distinct length-`k` subsequences of `w`.
pub fn subsequences(w: &Word, k: usize) -> Result<BTreeSet<Word>> {
    if k > w.len() {
        return Err(Error::LengthOutOfRange {
            len: k,
            min: 0,
            max: w.len(),
        });
    }
    let mut level = BTreeSet::from([w.clone()]);
    for _ in k..w.len() {
        level = level.iter().flat_map(single_deletions).collect();
    }
    Ok(level)
}

/// All distinct length-`k` supersequences of `w` over its alphabet.
pub fn supersequences(w: &Word, k: usize) -> Result<BTreeSet<Word>> {
    if k < w.len() {
        return Err(Error::LengthOutOfRange {
            len: k,
            min: w.len(),
            max: usize::MAX,
        });
    }
    let mut level = BTreeSet::from([w.clone()]);
    for _ in w.len()..k {
        level = level.iter().flat_map(single_insertions).collect();
    }
    Ok(level)
}

/// Exact binomial coefficient, `None` on overflow.
pub fn binomial(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) after the multiplication
        acc = acc.checked_mul(u128::from(n - i))? / u128::from(i + 1);
    }
    Some(acc)
}

/// Number of binary words reachable from a length-`len` word by at most
/// `eps` insertions: `sum_{s=0}^{eps} sum_{i=0}^{s} C(len+s, i)`.
///
/// The count does not depend on the word itself, only on its length.
pub fn insertion_ball_size(len: usize, eps: usize, q: usize) -> Result<u128> {
    if q != 2 {
        return Err(Error::UnsupportedAlphabet(q.min(u16::MAX as usize) as u16));
    }
    let mut total: u128 = 0;
    for s in 0..=eps {
        for i in 0..=s {
            let term = binomial((len + s) as u64, i as u64)
                .ok_or(Error::Overflow("insertion ball size"))?;
            total = total
                .checked_add(term)
                .ok_or(Error::Overflow("insertion ball size"))?;
        }
    }
    Ok(total)
}

/// Words obtainable from `w` by at most `delta` deletions (including `w`).
pub fn deletion_ball(w: &Word, delta: usize) -> Result<BTreeSet<Word>> {
    if delta > w.len() {
        return Err(Error::LengthOutOfRange {
            len: delta,
            min: 0,
            max: w.len(),
        });
    }
    let mut ball = BTreeSet::new();
    let mut level = BTreeSet::from([w.clone()]);
    for step in 0..=delta {
        if step > 0 {
            level = level.iter().flat_map(single_deletions).collect();
        }
        ball.extend(level.iter().cloned());
    }
    Ok(ball)
}

/// Words obtainable from `w` by at most `eps` insertions (including `w`).
pub fn insertion_ball(w: &Word, eps: usize) -> BTreeSet<Word> {
    let mut ball = BTreeSet::new();
    let mut level = BTreeSet::from([w.clone()]);
    for step in 0..=eps {
        if step > 0 {
            level = level.iter().flat_map(single_insertions).collect();
        }
        ball.extend(level.iter().cloned());
    }
    ball
}

/// All words within indel distance `tau` of `w`.
///
/// Built as "delete `del` symbols, then insert at most `tau - del`": every
/// word at distance `<= tau` shares a common subsequence with `w` that is
/// reached this way.
pub fn levenshtein_ball(w: &Word, tau: usize) -> BTreeSet<Word> {
    let mut ball = BTreeSet::new();
    let mut cores = BTreeSet::from([w.clone()]);
    for del in 0..=tau.min(w.len()) {
        if del > 0 {
            cores = cores.iter().flat_map(single_deletions).collect();
        }
        let budget = tau - del;
        let mut level = cores.clone();
        for step in 0..=budget {
            if step > 0 {
                level = level.iter().flat_map(single_insertions).collect();
            }
            ball.extend(level.iter().cloned());
        }
    }
    ball
}

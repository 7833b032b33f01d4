//! Brute-force ground truth.
//!
//! Everything here scans the full codebook (and, for list-size statistics,
//! every received word) with plain distance computations. Nothing in this
//! module calls the unique or list decoders.

use std::collections::BTreeMap;
use std::ops::Range;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::list_decoder::{DecodeList, DecodeStats, ListEntry};
use crate::sequences::{indel_distance_raw, is_subsequence_raw, Word};
use crate::vt_code::VtCode;

/// Longest code or received word the oracle will scan.
pub const MAX_ORACLE_LEN: usize = 20;

const CHUNK: u64 = 1 << 12;

/// Which neighbourhood of a received word counts as its list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "radius", rename_all = "snake_case")]
pub enum ListRadius {
    /// Codewords within indel distance `tau`.
    Levenshtein(usize),
    /// Codewords that contain the received word as a subsequence; the
    /// received length is `n - delta`.
    DeletionsOnly(usize),
}

/// Worst-case list size over every binary received word of one length.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExhaustiveReport {
    pub n: usize,
    pub radius: ListRadius,
    pub received_len: usize,
    pub max_list_size: usize,
    /// Lexicographically smallest received word attaining the maximum.
    pub argmax_received: Word,
    /// list size -> number of received words with that list size.
    pub histogram: BTreeMap<usize, u64>,
}

impl ExhaustiveReport {
    /// Combines reports over disjoint ranges of received words. Associative
    /// and commutative.
    pub fn merge(mut self, other: ExhaustiveReport) -> ExhaustiveReport {
        debug_assert_eq!(
            (self.n, self.radius, self.received_len),
            (other.n, other.radius, other.received_len)
        );
        match other.max_list_size.cmp(&self.max_list_size) {
            std::cmp::Ordering::Greater => {
                self.max_list_size = other.max_list_size;
                self.argmax_received = other.argmax_received;
            }
            std::cmp::Ordering::Equal if other.argmax_received < self.argmax_received => {
                self.argmax_received = other.argmax_received;
            }
            _ => {}
        }
        for (size, count) in other.histogram {
            *self.histogram.entry(size).or_default() += count;
        }
        self
    }

    /// Number of received words covered.
    pub fn words_scanned(&self) -> u64 {
        self.histogram.values().sum()
    }

    /// Sum of list sizes over all scanned received words.
    pub fn total_list_entries(&self) -> u128 {
        self.histogram
            .iter()
            .map(|(&k, &c)| k as u128 * c as u128)
            .sum()
    }

    /// Mean list size as an exact fraction `(numerator, denominator)`.
    pub fn mean_list_size(&self) -> (u128, u128) {
        (self.total_list_entries(), self.words_scanned() as u128)
    }
}

fn codebook(code: &VtCode) -> Result<&[Word]> {
    if code.n() > MAX_ORACLE_LEN {
        return Err(Error::SizeLimit {
            what: "code length",
            value: code.n(),
            limit: MAX_ORACLE_LEN,
        });
    }
    code.enumerate()
}

/// The list by definition: every codeword within indel distance `tau` of `r`.
pub fn brute_force_list(code: &VtCode, r: &Word, tau: usize) -> Result<DecodeList> {
    if !r.is_binary() {
        return Err(Error::UnsupportedAlphabet(r.q() as u16));
    }
    let entries = codebook(code)?.iter().filter_map(|c| {
        let distance = indel_distance_raw(r.symbols(), c.symbols());
        (distance <= tau).then(|| ListEntry {
            codeword: c.clone(),
            distance,
        })
    });
    Ok(DecodeList::from_entries(
        tau,
        entries.collect::<Vec<_>>(),
        DecodeStats::default(),
    ))
}

/// Every codeword containing `r` as a subsequence.
pub fn brute_force_deletion_list(code: &VtCode, r: &Word) -> Result<DecodeList> {
    if !r.is_binary() {
        return Err(Error::UnsupportedAlphabet(r.q() as u16));
    }
    let delta = code.n().saturating_sub(r.len());
    let entries = codebook(code)?
        .iter()
        .filter(|c| is_subsequence_raw(r.symbols(), c.symbols()))
        .map(|c| ListEntry {
            codeword: c.clone(),
            distance: c.len() - r.len(),
        });
    Ok(DecodeList::from_entries(
        delta,
        entries.collect::<Vec<_>>(),
        DecodeStats::default(),
    ))
}

fn list_size(codewords: &[Word], r: &[u8], radius: ListRadius) -> usize {
    match radius {
        ListRadius::Levenshtein(tau) => codewords
            .iter()
            .filter(|c| indel_distance_raw(r, c.symbols()) <= tau)
            .count(),
        ListRadius::DeletionsOnly(_) => codewords
            .iter()
            .filter(|c| is_subsequence_raw(r, c.symbols()))
            .count(),
    }
}

fn check_scan(code: &VtCode, radius: ListRadius, received_len: usize) -> Result<()> {
    if received_len > MAX_ORACLE_LEN {
        return Err(Error::SizeLimit {
            what: "received length",
            value: received_len,
            limit: MAX_ORACLE_LEN,
        });
    }
    if let ListRadius::DeletionsOnly(delta) = radius {
        if received_len + delta != code.n() {
            let expected = code.n().saturating_sub(delta);
            return Err(Error::LengthOutOfRange {
                len: received_len,
                min: expected,
                max: expected,
            });
        }
    }
    Ok(())
}

/// Scans the received words with indices in `range` (see
/// [`Word::from_index`]). Reports over a partition of `0..2^N` merge into
/// the full report regardless of how the range was split.
pub fn scan_range(
    code: &VtCode,
    radius: ListRadius,
    received_len: usize,
    range: Range<u64>,
) -> Result<ExhaustiveReport> {
    check_scan(code, radius, received_len)?;
    let codewords = codebook(code)?;
    let total = 1u64 << received_len;
    if range.start >= range.end || range.end > total {
        return Err(Error::InvalidParams(format!(
            "scan range {range:?} not a non-empty part of 0..{total}"
        )));
    }
    let mut histogram = BTreeMap::new();
    let mut best = (0usize, range.start);
    for index in range {
        let r = Word::from_index(index, received_len, 2)?;
        let size = list_size(codewords, r.symbols(), radius);
        *histogram.entry(size).or_default() += 1;
        // indices increase with the lexicographic order, so the first hit wins ties
        if size > best.0 {
            best = (size, index);
        }
    }
    Ok(ExhaustiveReport {
        n: code.n(),
        radius,
        received_len,
        max_list_size: best.0,
        argmax_received: Word::from_index(best.1, received_len, 2)?,
        histogram,
    })
}

/// Scans every binary received word of length `received_len`, in parallel.
pub fn exhaustive_scan(
    code: &VtCode,
    radius: ListRadius,
    received_len: usize,
) -> Result<ExhaustiveReport> {
    check_scan(code, radius, received_len)?;
    codebook(code)?;
    let total = 1u64 << received_len;
    let chunks: Vec<Range<u64>> = (0..total)
        .step_by(CHUNK as usize)
        .map(|start| start..(start + CHUNK).min(total))
        .collect();
    chunks
        .into_par_iter()
        .map(|range| scan_range(code, radius, received_len, range))
        .try_reduce_with(|a, b| Ok(a.merge(b)))
        .expect("at least one received word")
}

/// Worst-case list size at Levenshtein radius `tau` and received length `N`.
pub fn max_list_size(code: &VtCode, tau: usize, received_len: usize) -> Result<ExhaustiveReport> {
    exhaustive_scan(code, ListRadius::Levenshtein(tau), received_len)
}

/// Worst-case list size when list decoding `delta` deletions.
pub fn max_deletion_list_size(code: &VtCode, delta: usize) -> Result<ExhaustiveReport> {
    if delta > code.n() {
        return Err(Error::InvalidParams(format!(
            "delta={delta} exceeds n={}",
            code.n()
        )));
    }
    exhaustive_scan(code, ListRadius::DeletionsOnly(delta), code.n() - delta)
}

/// Minimum indel distance over distinct codeword pairs; `None` for codes
/// with fewer than two codewords.
pub fn min_distance(code: &VtCode) -> Result<Option<usize>> {
    let words = codebook(code)?;
    Ok(words
        .par_iter()
        .enumerate()
        .filter_map(|(i, a)| {
            words[i + 1..]
                .iter()
                .map(|b| indel_distance_raw(a.symbols(), b.symbols()))
                .min()
        })
        .min())
}

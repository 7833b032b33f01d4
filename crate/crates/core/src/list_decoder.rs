//! List decoding of VT codes beyond the unique-decoding radius.
//!
//! The decoders never search the code directly. They expand the received
//! word into candidate words of length `n - 1` or `n + 1`, hand each one to
//! the unique single-deletion or single-insertion decoder, and keep every
//! result that is a codeword within the requested radius. Failed unique
//! decodes are skipped.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::sequences::{indel_distance_raw, subsequences, supersequences, Word};
use crate::vt_code::VtCode;

/// Default upper limit on the radius accepted by [`list_decode_general`].
pub const DEFAULT_MAX_TAU: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct ListEntry {
    pub codeword: Word,
    pub distance: usize,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct DecodeStats {
    /// Calls to the unique decoders, failed ones included.
    pub invocations: usize,
}

/// Codewords within a radius of a received word, sorted by
/// `(distance, codeword)` with no duplicates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecodeList {
    entries: Vec<ListEntry>,
    tau: usize,
    stats: DecodeStats,
}

impl DecodeList {
    /// Builds a list in canonical order. Duplicate codewords keep the
    /// smallest distance.
    pub fn from_entries(
        tau: usize,
        entries: impl IntoIterator<Item = ListEntry>,
        stats: DecodeStats,
    ) -> Self {
        let mut best: BTreeMap<Word, usize> = BTreeMap::new();
        for e in entries {
            best.entry(e.codeword)
                .and_modify(|d| *d = (*d).min(e.distance))
                .or_insert(e.distance);
        }
        let mut entries: Vec<ListEntry> = best
            .into_iter()
            .map(|(codeword, distance)| ListEntry { codeword, distance })
            .collect();
        entries.sort_by(|x, y| (x.distance, &x.codeword).cmp(&(y.distance, &y.codeword)));
        Self {
            entries,
            tau,
            stats,
        }
    }

    pub fn entries(&self) -> &[ListEntry] {
        &self.entries
    }

    pub fn tau(&self) -> usize {
        self.tau
    }

    pub fn stats(&self) -> DecodeStats {
        self.stats
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn codewords(&self) -> impl Iterator<Item = &Word> {
        self.entries.iter().map(|e| &e.codeword)
    }

    pub fn contains(&self, c: &Word) -> bool {
        self.entries.iter().any(|e| &e.codeword == c)
    }

    /// The codewords as a set, ignoring distances and stats.
    pub fn codeword_set(&self) -> BTreeSet<Word> {
        self.codewords().cloned().collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ListDecodeConfig {
    pub max_tau: usize,
}

impl Default for ListDecodeConfig {
    fn default() -> Self {
        Self {
            max_tau: DEFAULT_MAX_TAU,
        }
    }
}

struct Collector<'a> {
    code: &'a VtCode,
    received: &'a Word,
    tau: usize,
    found: BTreeMap<Word, usize>,
    invocations: usize,
}

impl<'a> Collector<'a> {
    fn new(code: &'a VtCode, received: &'a Word, tau: usize) -> Self {
        Self {
            code,
            received,
            tau,
            found: BTreeMap::new(),
            invocations: 0,
        }
    }

    fn offer(&mut self, c: Word) {
        if !self.code.contains(&c) {
            return;
        }
        let distance = indel_distance_raw(self.received.symbols(), c.symbols());
        if distance <= self.tau {
            self.found.insert(c, distance);
        }
    }

    fn via_deletion_decoder(&mut self, candidate: &Word) {
        self.invocations += 1;
        if let Ok((c, _)) = self.code.decode_single_deletion(candidate) {
            self.offer(c);
        }
    }

    fn via_insertion_decoder(&mut self, candidate: &Word) {
        self.invocations += 1;
        if let Ok(c) = self.code.decode_single_insertion(candidate) {
            self.offer(c);
        }
    }

    fn finish(self) -> DecodeList {
        let entries = self
            .found
            .into_iter()
            .map(|(codeword, distance)| ListEntry { codeword, distance });
        DecodeList::from_entries(
            self.tau,
            entries,
            DecodeStats {
                invocations: self.invocations,
            },
        )
    }
}

fn require_binary(r: &Word) -> Result<()> {
    if !r.is_binary() {
        return Err(Error::UnsupportedAlphabet(r.q() as u16));
    }
    Ok(())
}

/// All codewords within indel distance 2 of `r`.
///
/// | received length | candidates                                   |
/// |-----------------|----------------------------------------------|
/// | `n - 2`         | supersequences of length `n - 1`, deletion decoder |
/// | `n - 1`         | `r` itself, deletion decoder                  |
/// | `n`             | `r` if it is a codeword; otherwise subsequences of length `n - 1` and supersequences of length `n + 1` |
/// | `n + 1`         | `r` itself, insertion decoder                 |
/// | `n + 2`         | subsequences of length `n + 1`, insertion decoder |
///
/// Distances to codewords at length `n ± 1` are odd, so there the radius-2
/// list is the single-indel decode (possibly empty) and nothing more.
pub fn list_decode_tau2(code: &VtCode, r: &Word) -> Result<DecodeList> {
    require_binary(r)?;
    let n = code.n();
    if r.len().abs_diff(n) > 2 {
        return Err(Error::RadiusExceeded {
            received: r.len(),
            n,
            tau: 2,
        });
    }
    let mut col = Collector::new(code, r, 2);
    match r.len() as isize - n as isize {
        -2 => {
            for candidate in supersequences(r, n - 1)? {
                col.via_deletion_decoder(&candidate);
            }
        }
        -1 => col.via_deletion_decoder(r),
        0 => {
            if code.contains(r) {
                // d = 4, so no other codeword is within distance 2
                col.offer(r.clone());
            } else {
                for candidate in subsequences(r, n - 1)? {
                    col.via_deletion_decoder(&candidate);
                }
                for candidate in supersequences(r, n + 1)? {
                    col.via_insertion_decoder(&candidate);
                }
            }
        }
        1 => col.via_insertion_decoder(r),
        _ => {
            for candidate in subsequences(r, n + 1)? {
                col.via_insertion_decoder(&candidate);
            }
        }
    }
    Ok(col.finish())
}

/// All codewords within indel distance `tau` of `r`, for a small constant
/// `tau` (at most [`DEFAULT_MAX_TAU`]).
pub fn list_decode_general(code: &VtCode, r: &Word, tau: usize) -> Result<DecodeList> {
    list_decode_general_with(code, r, tau, &ListDecodeConfig::default())
}

/// [`list_decode_general`] with an explicit radius limit.
///
/// A codeword `c` at distance `del + ins <= tau` loses `del` symbols and
/// gains `ins` on its way to `r`, with `ins - del = |r| - n`. For every such
/// split the decoder rebuilds the common core by deleting `ins` symbols from
/// `r`. When `del >= 1` it re-inserts `del - 1` symbols to reach length
/// `n - 1`, a single deletion of `c`; when `del = 0` it deletes down to
/// length `n + 1`, a single insertion into `c`. Candidates are pooled across
/// splits before the unique decoders run.
pub fn list_decode_general_with(
    code: &VtCode,
    r: &Word,
    tau: usize,
    config: &ListDecodeConfig,
) -> Result<DecodeList> {
    require_binary(r)?;
    if tau > config.max_tau {
        return Err(Error::RadiusTooLarge {
            tau,
            max: config.max_tau,
        });
    }
    let n = code.n();
    let len = r.len();
    if len.abs_diff(n) > tau {
        return Err(Error::RadiusExceeded {
            received: len,
            n,
            tau,
        });
    }

    let mut col = Collector::new(code, r, tau);
    let mut deletion_side = BTreeSet::new();
    let mut insertion_side = BTreeSet::new();
    let shift = len as isize - n as isize;

    for ins in 0..=tau {
        let del = ins as isize - shift;
        if del < 0 || ins + del as usize > tau || del as usize > n {
            continue;
        }
        let del = del as usize;
        match (del, ins) {
            (0, 0) => col.offer(r.clone()),
            (0, _) => insertion_side.extend(subsequences(r, n + 1)?),
            _ => {
                for core in subsequences(r, len - ins)? {
                    deletion_side.extend(supersequences(&core, n - 1)?);
                }
            }
        }
    }

    for candidate in &deletion_side {
        col.via_deletion_decoder(candidate);
    }
    for candidate in &insertion_side {
        col.via_insertion_decoder(candidate);
    }
    Ok(col.finish())
}

/// All codewords that contain `r` as a subsequence, where `r` has length
/// `n - delta`.
pub fn deletions_only_list_decode(code: &VtCode, r: &Word, delta: usize) -> Result<DecodeList> {
    require_binary(r)?;
    let n = code.n();
    if r.len() + delta != n {
        let expected = n.saturating_sub(delta);
        return Err(Error::LengthOutOfRange {
            len: r.len(),
            min: expected,
            max: expected,
        });
    }
    // with |c| - |r| = delta, distance <= delta forces r ⊑ c
    let mut col = Collector::new(code, r, delta);
    if delta == 0 {
        col.offer(r.clone());
    } else {
        for candidate in supersequences(r, n - 1)? {
            col.via_deletion_decoder(&candidate);
        }
    }
    Ok(col.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn pairs(list: &DecodeList) -> Vec<(String, usize)> {
        list.entries()
            .iter()
            .map(|e| (e.codeword.to_string(), e.distance))
            .collect()
    }

    #[test]
    fn tau2_examples() {
        let vt4 = VtCode::new(4, 0).unwrap();
        let list = list_decode_tau2(&vt4, &w("1001")).unwrap();
        assert_eq!(pairs(&list), [("1001".into(), 0)]);
        assert_eq!(list.stats().invocations, 0);

        let list = list_decode_tau2(&vt4, &w("0101")).unwrap();
        assert_eq!(pairs(&list), [("0110".into(), 2), ("1001".into(), 2)]);

        let vt5 = VtCode::new(5, 0).unwrap();
        let list = list_decode_tau2(&vt5, &w("0001")).unwrap();
        assert_eq!(pairs(&list), [("10001".into(), 1)]);
        assert_eq!(list.stats().invocations, 1);
    }

    #[test]
    fn tau2_length_checks() {
        let vt5 = VtCode::new(5, 0).unwrap();
        assert_eq!(
            list_decode_tau2(&vt5, &w("00")),
            Err(Error::RadiusExceeded {
                received: 2,
                n: 5,
                tau: 2
            })
        );
        assert!(list_decode_tau2(&vt5, &Word::parse("00000", 3).unwrap()).is_err());
    }

    #[test]
    fn general_examples() {
        let vt5 = VtCode::new(5, 0).unwrap();
        let list = list_decode_general(&vt5, &w("00000"), 3).unwrap();
        assert_eq!(pairs(&list), [("00000".into(), 0)]);

        let list = list_decode_general(&vt5, &w("01011"), 0).unwrap();
        assert!(list.is_empty());
        assert_eq!(list.stats().invocations, 0);

        assert_eq!(
            list_decode_general(&vt5, &w("0"), 3),
            Err(Error::RadiusExceeded {
                received: 1,
                n: 5,
                tau: 3
            })
        );
        assert_eq!(
            list_decode_general(&vt5, &w("00000"), 5),
            Err(Error::RadiusTooLarge { tau: 5, max: 4 })
        );
        let wide = ListDecodeConfig { max_tau: 5 };
        assert!(list_decode_general_with(&vt5, &w("00000"), 5, &wide).is_ok());
    }

    #[test]
    fn general_radius_four_sees_neighbours_of_codewords() {
        // all words of VT_0(4) are pairwise at distance 4 or more
        let vt4 = VtCode::new(4, 0).unwrap();
        let list = list_decode_general(&vt4, &w("0110"), 4).unwrap();
        assert_eq!(
            list.entries()[0],
            ListEntry {
                codeword: w("0110"),
                distance: 0
            }
        );
        assert!(list.len() > 1);
        assert!(list.entries()[1..].iter().all(|e| e.distance == 4));
    }

    #[test]
    fn deletions_only_examples() {
        let vt5 = VtCode::new(5, 0).unwrap();
        let single = deletions_only_list_decode(&vt5, &w("0001"), 1).unwrap();
        assert_eq!(pairs(&single), [("10001".into(), 1)]);
        assert!(deletions_only_list_decode(&vt5, &w("0001"), 2).is_err());
        let zero = deletions_only_list_decode(&vt5, &w("10001"), 0).unwrap();
        assert_eq!(zero.len(), 1);
    }

    #[test]
    fn canonical_order_and_dedup() {
        let list = DecodeList::from_entries(
            2,
            [
                ListEntry {
                    codeword: w("1001"),
                    distance: 2,
                },
                ListEntry {
                    codeword: w("0110"),
                    distance: 2,
                },
                ListEntry {
                    codeword: w("1111"),
                    distance: 0,
                },
                ListEntry {
                    codeword: w("1001"),
                    distance: 2,
                },
            ],
            DecodeStats::default(),
        );
        assert_eq!(
            pairs(&list),
            [("1111".into(), 0), ("0110".into(), 2), ("1001".into(), 2)]
        );
    }
}

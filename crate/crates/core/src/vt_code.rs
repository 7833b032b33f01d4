//! The binary Varshamov-Tenengolts code
//!
//! `VT_a(n) = { c in {0,1}^n : sum_{i=1}^{n} i·c_i ≡ a (mod n+1) }`
//!
//! Every `VT_a(n)` corrects a single deletion or a single insertion, and the
//! codes `VT_0(n), ..., VT_n(n)` partition `{0,1}^n`. Positions are 1-based in
//! the weighted sum and in [`VtDecodeTrace`], 0-based everywhere else.

use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::sequences::Word;

/// Longest code that [`VtCode::enumerate`] will materialise.
pub const MAX_ENUMERATION_LEN: usize = 26;

/// Longest code supported by [`VtCode::encode`] and [`VtCode::cardinality`].
pub const MAX_ENCODE_LEN: usize = 100;

/// `VT_a(n)`.
#[derive(Debug, Clone)]
pub struct VtCode {
    n: usize,
    a: usize,
    codewords: OnceLock<Vec<Word>>,
}

impl PartialEq for VtCode {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.a == other.a
    }
}

impl Eq for VtCode {}

/// Intermediate quantities of a single-deletion decode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct VtDecodeTrace {
    /// Hamming weight of the received word.
    pub weight: usize,
    /// Checksum deficiency relative to the code's residue.
    pub deficiency: usize,
    /// Zeros left of the deleted 1; only set when a 1 is restored.
    pub zeros_before: Option<usize>,
    /// 1-based position of the restored symbol in the output, in `1..=len+1`
    /// of the received word.
    pub position: usize,
    pub inserted_symbol: u8,
}

/// Checksum deficiency `S(r) = -sum_{i=1}^{N} i·r_i mod (n+1)`.
pub fn checksum(r: &Word, n: usize) -> Result<usize> {
    require_binary(r)?;
    if r.len() > n + 1 {
        return Err(Error::LengthOutOfRange {
            len: r.len(),
            min: 0,
            max: n + 1,
        });
    }
    let m = n + 1;
    Ok((m - weighted_sum(r.symbols(), m)) % m)
}

/// `sum_{i=1}^{N} i·r_i mod m`.
fn weighted_sum(symbols: &[u8], m: usize) -> usize {
    symbols
        .iter()
        .enumerate()
        .filter(|(_, &s)| s != 0)
        .fold(0, |acc, (i, _)| (acc + (i + 1) % m) % m)
}

fn require_binary(r: &Word) -> Result<()> {
    if !r.is_binary() {
        return Err(Error::UnsupportedAlphabet(r.q() as u16));
    }
    Ok(())
}

impl VtCode {
    pub fn new(n: usize, a: usize) -> Result<Self> {
        if n == 0 || a > n {
            return Err(Error::InvalidCode { n, a });
        }
        Ok(Self {
            n,
            a,
            codewords: OnceLock::new(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn modulus(&self) -> usize {
        self.n + 1
    }

    /// Minimum Levenshtein distance of any binary VT code: equal-length
    /// codewords have even distance, and single-indel correction forces at
    /// least 3.
    pub fn min_distance(&self) -> usize {
        4
    }

    pub fn contains(&self, c: &Word) -> bool {
        c.is_binary() && c.len() == self.n && weighted_sum(c.symbols(), self.modulus()) == self.a
    }

    /// `(a - sum i·r_i) mod (n+1)`; for `a = 0` this is [`checksum`].
    pub fn deficiency(&self, r: &Word) -> usize {
        let m = self.modulus();
        (self.a + m - weighted_sum(r.symbols(), m)) % m
    }

    /// All codewords in lexicographic order. Cached after the first call.
    pub fn enumerate(&self) -> Result<&[Word]> {
        if self.n > MAX_ENUMERATION_LEN {
            return Err(Error::SizeLimit {
                what: "code length",
                value: self.n,
                limit: MAX_ENUMERATION_LEN,
            });
        }
        Ok(self.codewords.get_or_init(|| {
            let n = self.n;
            let m = self.modulus();
            // bit b of the counter is position n-b
            let position_weight: Vec<usize> = (0..n).map(|i| (n - i) % m).collect();
            (0u64..1 << n)
                .filter(|bits| {
                    let sum = position_weight
                        .iter()
                        .enumerate()
                        .filter(|(b, _)| bits >> b & 1 == 1)
                        .fold(0, |acc, (_, &w)| (acc + w) % m);
                    sum == self.a
                })
                .map(|bits| Word::from_index(bits, n, 2).expect("counter fits length"))
                .collect()
        }))
    }

    /// `completions[i][s]`: number of ways to fill positions `i+1..=n` so
    /// that their weighted sum is `s mod (n+1)`.
    fn completion_counts(&self) -> Result<Vec<Vec<u128>>> {
        if self.n > MAX_ENCODE_LEN {
            return Err(Error::SizeLimit {
                what: "code length",
                value: self.n,
                limit: MAX_ENCODE_LEN,
            });
        }
        let (n, m) = (self.n, self.modulus());
        let mut counts = vec![vec![0u128; m]; n + 1];
        counts[n][0] = 1;
        for i in (0..n).rev() {
            let pos = i + 1;
            for s in 0..m {
                counts[i][s] = counts[i + 1][s] + counts[i + 1][(s + m - pos % m) % m];
            }
        }
        Ok(counts)
    }

    /// Exact number of codewords.
    pub fn cardinality(&self) -> Result<u128> {
        Ok(self.completion_counts()?[0][self.a])
    }

    /// The `index`-th codeword in lexicographic order.
    pub fn encode(&self, index: u128) -> Result<Word> {
        let counts = self.completion_counts()?;
        let (n, m) = (self.n, self.modulus());
        let size = counts[0][self.a];
        if index >= size {
            return Err(Error::IndexOutOfRange { index, size });
        }
        let mut rest = index;
        let mut need = self.a;
        let mut bits = Vec::with_capacity(n);
        for (pos, row) in counts.iter().enumerate().skip(1) {
            let with_zero = row[need];
            if rest < with_zero {
                bits.push(0);
            } else {
                rest -= with_zero;
                bits.push(1);
                need = (need + m - pos % m) % m;
            }
        }
        debug_assert_eq!(need, 0);
        Word::binary(&bits)
    }

    /// Lexicographic rank of a codeword, inverse of [`VtCode::encode`].
    pub fn index_of(&self, c: &Word) -> Result<u128> {
        if !self.contains(c) {
            return Err(Error::NotDecodable);
        }
        let counts = self.completion_counts()?;
        let m = self.modulus();
        let mut need = self.a;
        let mut index = 0;
        for (i, &bit) in c.symbols().iter().enumerate() {
            let pos = i + 1;
            if bit == 1 {
                index += counts[pos][need];
                need = (need + m - pos % m) % m;
            }
        }
        Ok(index)
    }

    /// Restores a single deleted symbol.
    ///
    /// With `w` the weight of `r` and `s` its deficiency: if `s <= w` a 0 is
    /// inserted so that exactly `s` ones lie to its right; otherwise a 1 is
    /// inserted with `s - w - 1` zeros to its left. `s = 0` appends the 0.
    /// Among equivalent positions the smallest one is reported.
    pub fn decode_single_deletion(&self, r: &Word) -> Result<(Word, VtDecodeTrace)> {
        require_binary(r)?;
        let n = self.n;
        if r.len() + 1 != n {
            return Err(Error::LengthOutOfRange {
                len: r.len(),
                min: n - 1,
                max: n - 1,
            });
        }
        let bits = r.symbols();
        let weight = r.weight();
        let deficiency = self.deficiency(r);

        let (position, inserted_symbol, zeros_before) = if deficiency <= weight {
            let position = if deficiency == 0 {
                bits.len() + 1
            } else {
                // smallest p with weight(r_p..r_N) == deficiency
                let mut suffix = weight;
                let mut p = 1;
                while suffix > deficiency {
                    suffix -= usize::from(bits[p - 1]);
                    p += 1;
                }
                p
            };
            (position, 0, None)
        } else {
            let zeros = deficiency - weight - 1;
            // smallest p with `zeros` zeros in r_1..r_{p-1}
            let mut seen = 0;
            let mut p = 1;
            while seen < zeros {
                if p > bits.len() {
                    return Err(Error::NotDecodable);
                }
                seen += usize::from(bits[p - 1] == 0);
                p += 1;
            }
            (p, 1, Some(zeros))
        };

        let c = r.with_inserted(position - 1, inserted_symbol)?;
        if !self.contains(&c) {
            return Err(Error::NotDecodable);
        }
        let trace = VtDecodeTrace {
            weight,
            deficiency,
            zeros_before,
            position,
            inserted_symbol,
        };
        Ok((c, trace))
    }

    /// Removes a single inserted symbol.
    ///
    /// With `w` the weight of `r` and excess `e = (sum i·r_i - a) mod (n+1)`:
    /// an inserted 0 gives `e` = ones to its right, an inserted 1 gives
    /// `e = w +` zeros to its left. `e = 0` deletes the last symbol and
    /// `e = w` the first; both readings agree there.
    pub fn decode_single_insertion(&self, r: &Word) -> Result<Word> {
        require_binary(r)?;
        let n = self.n;
        if r.len() != n + 1 {
            return Err(Error::LengthOutOfRange {
                len: r.len(),
                min: n + 1,
                max: n + 1,
            });
        }
        let bits = r.symbols();
        let weight = r.weight();
        let m = self.modulus();
        let excess = (m - self.deficiency(r)) % m;

        let index = if excess == 0 {
            Some(bits.len() - 1)
        } else if excess == weight {
            Some(0)
        } else if excess < weight {
            // a 0 with exactly `excess` ones to its right
            let mut ones_right = weight;
            bits.iter().position(|&b| {
                ones_right -= usize::from(b);
                b == 0 && ones_right == excess
            })
        } else {
            // a 1 with exactly `excess - weight` zeros to its left
            let target = excess - weight;
            let mut zeros_left = 0;
            bits.iter().position(|&b| {
                let hit = b == 1 && zeros_left == target;
                zeros_left += usize::from(b == 0);
                hit
            })
        };

        let index = index.ok_or(Error::NotDecodable)?;
        let c = r.with_deleted(index)?;
        if !self.contains(&c) {
            return Err(Error::NotDecodable);
        }
        Ok(c)
    }
}

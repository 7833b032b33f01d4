//! Binary Varshamov-Tenengolts (VT) codes for the insertion/deletion channel.
//!
//! The crate is organised bottom-up:
//!
//! * [`sequences`]: the [`Word`] type, indel (Levenshtein) distance,
//!   sub/supersequence enumeration and insertion/deletion/Levenshtein balls.
//! * [`vt_code`]: the code `VT_a(n)`, its encoder and the unique
//!   single-deletion / single-insertion decoders.
//! * [`list_decoder`]: list decoding of two (or any constant number of)
//!   insertions and deletions on top of the unique decoders.
//! * [`bounds`]: closed-form Johnson-like radii and list-size bounds in the
//!   Levenshtein metric, plus the VT deletion lower bound.
//! * [`oracle`]: exhaustive ground truth used to validate all of the above.
//!
//! ```
//! use vtlist::{list_decoder, VtCode, Word};
//!
//! let code = VtCode::new(4, 0).unwrap();
//! let received: Word = "0101".parse().unwrap();
//! let list = list_decoder::list_decode_tau2(&code, &received).unwrap();
//! let words: Vec<String> = list.codewords().map(|c| c.to_string()).collect();
//! assert_eq!(words, ["0110", "1001"]);
//! ```

pub mod bounds;
mod error;
pub mod list_decoder;
pub mod oracle;
pub mod sequences;
pub mod vt_code;

pub use error::{Error, Result};
pub use list_decoder::{DecodeList, ListEntry};
pub use sequences::Word;
pub use vt_code::{VtCode, VtDecodeTrace};

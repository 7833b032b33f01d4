//! Exhaustive self-checks of the decoders and bounds against brute force.

use rayon::prelude::*;
use serde::Serialize;
use vtlist::bounds::{johnson_list_bound_q, vt_deletion_lower_bound, CodeParams};
use vtlist::list_decoder::list_decode_tau2;
use vtlist::oracle::{brute_force_list, max_deletion_list_size, max_list_size, min_distance};
use vtlist::{Result, VtCode, Word};

/// Largest `--n-max` accepted by [`verify`].
pub const MAX_VERIFY_N: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub name: &'static str,
    pub passed: bool,
    /// Number of individual comparisons made.
    pub checks: u64,
    /// First counterexample, if any.
    pub failure: Option<String>,
}

impl SuiteResult {
    pub fn line(&self) -> String {
        match &self.failure {
            None => format!("PASS {} ({} checks)", self.name, self.checks),
            Some(f) => format!("FAIL {} ({} checks): {f}", self.name, self.checks),
        }
    }
}

fn suite(name: &'static str, run: impl FnOnce() -> Result<(u64, Option<String>)>) -> SuiteResult {
    let (checks, failure) = match run() {
        Ok(r) => r,
        Err(e) => (0, Some(e.to_string())),
    };
    SuiteResult {
        name,
        passed: failure.is_none(),
        checks,
        failure,
    }
}

fn all_binary(len: usize) -> impl ParallelIterator<Item = Word> {
    (0..1u64 << len)
        .into_par_iter()
        .map(move |i| Word::from_index(i, len, 2).expect("len <= 63"))
}

fn round_trips(n_max: usize) -> Result<(u64, Option<String>)> {
    let mut checks = 0;
    for n in 1..=n_max {
        for a in 0..=n {
            let code = VtCode::new(n, a)?;
            for c in code.enumerate()? {
                for p in 0..=n {
                    if p < n {
                        let r = c.with_deleted(p)?;
                        checks += 1;
                        if code.decode_single_deletion(&r).ok().map(|x| x.0).as_ref() != Some(c) {
                            return Ok((
                                checks,
                                Some(format!("VT_{a}({n}) deletion {r} from {c}")),
                            ));
                        }
                    }
                    for s in 0..2 {
                        let r = c.with_inserted(p, s)?;
                        checks += 1;
                        if code.decode_single_insertion(&r).ok().as_ref() != Some(c) {
                            return Ok((
                                checks,
                                Some(format!("VT_{a}({n}) insertion {r} into {c}")),
                            ));
                        }
                    }
                }
            }
        }
    }
    Ok((checks, None))
}

fn list_exactness(n_max: usize) -> Result<(u64, Option<String>)> {
    let mut checks = 0;
    for n in 2..=n_max {
        let code = VtCode::new(n, 0)?;
        for len in n - 2..=n + 2 {
            let mismatch = all_binary(len)
                .map(|r| -> Result<Option<String>> {
                    let fast = list_decode_tau2(&code, &r)?.codeword_set();
                    let slow = brute_force_list(&code, &r, 2)?.codeword_set();
                    Ok((fast != slow).then(|| format!("n={n} received {r}")))
                })
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .flatten()
                .next();
            checks += 1 << len;
            if mismatch.is_some() {
                return Ok((checks, mismatch));
            }
        }
    }
    Ok((checks, None))
}

fn distance_and_partition(n_max: usize) -> Result<(u64, Option<String>)> {
    let mut checks = 0;
    for n in 1..=n_max {
        let mut total = 0u128;
        for a in 0..=n {
            let code = VtCode::new(n, a)?;
            total += code.cardinality()?;
            if a == 0 {
                checks += 1;
                if code.cardinality()? * (n as u128 + 1) < 1 << n {
                    return Ok((checks, Some(format!("|VT_0({n})| below 2^n/(n+1)"))));
                }
                if n >= 4 {
                    checks += 1;
                    let d = min_distance(&code)?;
                    if d != Some(4) {
                        return Ok((checks, Some(format!("VT_0({n}) minimum distance {d:?}"))));
                    }
                }
            }
        }
        checks += 1;
        if total != 1 << n {
            return Ok((
                checks,
                Some(format!("residues at n={n} cover {total} words")),
            ));
        }
    }
    Ok((checks, None))
}

fn list_size_bounds(n_max: usize) -> Result<(u64, Option<String>)> {
    let mut checks = 0;
    for n in 4..=n_max {
        let code = VtCode::new(n, 0)?;
        for received in n - 2..=n + 2 {
            let worst = max_list_size(&code, 2, received)?.max_list_size;
            checks += 1;
            if (received == n || received == n + 2) && worst > n {
                return Ok((
                    checks,
                    Some(format!("n={n} N={received}: list size {worst} > n")),
                ));
            }
            let p = CodeParams::new(n, received, 4, 2, 2)?;
            if let Some(cap) = johnson_list_bound_q(&p).cap() {
                checks += 1;
                if worst as u128 > cap {
                    return Ok((
                        checks,
                        Some(format!("n={n} N={received}: {worst} > bound {cap}")),
                    ));
                }
            }
        }
    }
    for n in 5..=n_max {
        let worst = max_deletion_list_size(&VtCode::new(n, 0)?, 2)?.max_list_size;
        let lower = vt_deletion_lower_bound(n, 2)?;
        checks += 1;
        if !lower.is_met_by(worst as u128) || worst > n {
            return Ok((
                checks,
                Some(format!("n={n}: two-deletion list size {worst}")),
            ));
        }
    }
    Ok((checks, None))
}

/// Runs every suite for code lengths up to `n_max`, in a fixed order.
pub fn verify(n_max: usize) -> Vec<SuiteResult> {
    vec![
        suite("unique-decoder-round-trips", || round_trips(n_max)),
        suite("list-decoder-matches-brute-force", || list_exactness(n_max)),
        suite("distance-cardinality-partition", || {
            distance_and_partition(n_max)
        }),
        suite("list-size-bounds", || list_size_bounds(n_max)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_run_is_green() {
        let results = verify(6);
        assert_eq!(results.len(), 4);
        for r in &results {
            assert!(r.passed, "{}", r.line());
            assert!(r.checks > 0);
            assert!(r.line().starts_with("PASS "));
        }
    }

    #[test]
    fn failure_line_names_the_counterexample() {
        let r = SuiteResult {
            name: "x",
            passed: false,
            checks: 3,
            failure: Some("n=4".into()),
        };
        assert_eq!(r.line(), "FAIL x (3 checks): n=4");
    }
}

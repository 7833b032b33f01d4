//! Monte-Carlo runs of the insertion/deletion channel against the decoders.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use vtlist::bounds::{johnson_list_bound_q, CodeParams};
use vtlist::list_decoder::{list_decode_general, list_decode_tau2, DEFAULT_MAX_TAU};
use vtlist::{DecodeList, Error, Result, VtCode, Word};

use crate::channel::transmit_with;

#[derive(Debug, thiserror::Error)]
pub enum SimulationError {
    #[error(transparent)]
    Params(#[from] Error),
    /// A decoder guarantee failed on some trial.
    #[error("trial {trial}: {message}")]
    Violation { trial: u64, message: String },
}

/// Simulation parameters. Trial `i` uses ChaCha8 seeded with `seed + i`
/// (wrapping), for both the codeword and the channel.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimulationConfig {
    pub n: usize,
    pub a: usize,
    pub trials: u64,
    pub seed: u64,
    pub deletions: usize,
    pub insertions: usize,
    pub tau: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulationReport {
    pub n: usize,
    pub a: usize,
    pub deletions: usize,
    pub insertions: usize,
    pub tau: usize,
    pub seed: u64,
    pub trials: u64,
    /// Fraction of trials where the radius-1 unique decoder returned the
    /// transmitted codeword.
    pub unique_success_rate: f64,
    /// Fraction of trials whose radius-`tau` list holds the transmitted
    /// codeword.
    pub list_contains_rate: f64,
    pub mean_list_size: f64,
    pub max_list_size_observed: usize,
    /// Integer list-size bound for `d = 4`, `q = 2` at the received length,
    /// when the bound is feasible. Every observed list was checked against it.
    pub list_bound_cap: Option<u128>,
}

struct Trial {
    unique_ok: bool,
    list_hit: bool,
    list_size: usize,
    received_len: usize,
}

fn unique_decode(code: &VtCode, r: &Word) -> Option<Word> {
    let n = code.n();
    match r.len() {
        len if len + 1 == n => code.decode_single_deletion(r).ok().map(|(c, _)| c),
        len if len == n + 1 => code.decode_single_insertion(r).ok(),
        len if len == n && code.contains(r) => Some(r.clone()),
        _ => None,
    }
}

fn list_decode(code: &VtCode, r: &Word, tau: usize) -> Result<Option<DecodeList>> {
    if r.len().abs_diff(code.n()) > tau {
        return Ok(None);
    }
    let list = if tau == 2 {
        list_decode_tau2(code, r)?
    } else {
        list_decode_general(code, r, tau)?
    };
    Ok(Some(list))
}

/// Bound cap for a VT code (`d = 4`, binary) at received length `received`.
fn bound_cap(n: usize, received: usize, tau: usize) -> Option<u128> {
    CodeParams::new(n, received, 4, 2, tau)
        .ok()
        .and_then(|p| johnson_list_bound_q(&p).cap())
}

fn run_trial(
    code: &VtCode,
    size: u128,
    cfg: &SimulationConfig,
    i: u64,
) -> std::result::Result<Trial, SimulationError> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(i));
    let c = code.encode(rng.random_range(0..size))?;
    let r = transmit_with(&c, cfg.deletions, cfg.insertions, &mut rng)?;
    let list = list_decode(code, &r, cfg.tau)?;
    let list_hit = list.as_ref().is_some_and(|l| l.contains(&c));
    let list_size = list.as_ref().map_or(0, DecodeList::len);

    if cfg.deletions + cfg.insertions <= cfg.tau && !list_hit {
        return Err(SimulationError::Violation {
            trial: i,
            message: format!("list for received {r} misses transmitted {c}"),
        });
    }
    if let Some(cap) = bound_cap(code.n(), r.len(), cfg.tau) {
        if list_size as u128 > cap {
            return Err(SimulationError::Violation {
                trial: i,
                message: format!("list size {list_size} for received {r} exceeds bound {cap}"),
            });
        }
    }
    Ok(Trial {
        unique_ok: unique_decode(code, &r).as_ref() == Some(&c),
        list_hit,
        list_size,
        received_len: r.len(),
    })
}

/// Runs every trial and checks, per trial, that the list is complete when
/// `deletions + insertions <= tau` and never exceeds the list-size bound.
/// Either violation aborts the run with an error naming the trial.
pub fn simulate(cfg: &SimulationConfig) -> std::result::Result<SimulationReport, SimulationError> {
    if cfg.trials == 0 {
        return Err(Error::InvalidParams("at least one trial required".into()).into());
    }
    if cfg.deletions > cfg.n {
        let msg = format!("{} deletions exceed n={}", cfg.deletions, cfg.n);
        return Err(Error::InvalidParams(msg).into());
    }
    if cfg.tau > DEFAULT_MAX_TAU {
        return Err(Error::RadiusTooLarge {
            tau: cfg.tau,
            max: DEFAULT_MAX_TAU,
        }
        .into());
    }
    let code = VtCode::new(cfg.n, cfg.a)?;
    let size = code.cardinality()?;
    let trials: Vec<Trial> = (0..cfg.trials)
        .into_par_iter()
        .map(|i| run_trial(&code, size, cfg, i))
        .collect::<std::result::Result<_, _>>()?;

    let count = |f: fn(&Trial) -> bool| trials.iter().filter(|t| f(t)).count() as f64;
    let total = cfg.trials as f64;
    let received_len = trials[0].received_len;
    Ok(SimulationReport {
        n: cfg.n,
        a: cfg.a,
        deletions: cfg.deletions,
        insertions: cfg.insertions,
        tau: cfg.tau,
        seed: cfg.seed,
        trials: cfg.trials,
        unique_success_rate: count(|t| t.unique_ok) / total,
        list_contains_rate: count(|t| t.list_hit) / total,
        mean_list_size: trials.iter().map(|t| t.list_size).sum::<usize>() as f64 / total,
        max_list_size_observed: trials.iter().map(|t| t.list_size).max().unwrap_or(0),
        list_bound_cap: bound_cap(cfg.n, received_len, cfg.tau),
    })
}

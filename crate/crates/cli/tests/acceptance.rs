//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
//! failure. Runs under `cargo test` with `harness = false`.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use vtlist::bounds::{
    deletion_only_bound, insertion_only_bound, johnson_list_bound_free, johnson_list_bound_q,
    johnson_radius_free, normalized_radius_free, radius_free_exceeds, vt_deletion_lower_bound,
    CodeParams, ListBound,
};
use vtlist::list_decoder::{list_decode_general, list_decode_tau2};
use vtlist::oracle::{brute_force_list, max_deletion_list_size, max_list_size, min_distance};
use vtlist::sequences::{indel_distance, insertion_ball};
use vtlist::{VtCode, Word};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib<T>(r: vtlist::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn all_binary(len: usize) -> Vec<Word> {
    (0..1u64 << len)
        .map(|i| Word::from_index(i, len, 2).unwrap())
        .collect()
}

fn choose(n: u128, k: u128) -> u128 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn round_trips() -> Outcome {
    let mut checks = 0u64;
    for n in 2..=12 {
        let code = lib(VtCode::new(n, 0))?;
        for c in lib(code.enumerate())? {
            for p in 0..n {
                let r = lib(c.with_deleted(p))?;
                let got = lib(code.decode_single_deletion(&r))?.0;
                ensure(&got == c, || {
                    format!("n={n} c={c} deletion at {p} gave {got}")
                })?;
                checks += 1;
            }
        }
    }
    for n in 2..=11 {
        let code = lib(VtCode::new(n, 0))?;
        for c in lib(code.enumerate())? {
            for p in 0..=n {
                for s in 0..2 {
                    let r = lib(c.with_inserted(p, s))?;
                    let got = lib(code.decode_single_insertion(&r))?;
                    ensure(&got == c, || {
                        format!("n={n} c={c} insertion {s} at {p} gave {got}")
                    })?;
                    checks += 1;
                }
            }
        }
    }
    Ok(format!("{checks} single-error patterns, all recovered"))
}

/// Codewords within distance `tau`, by scanning the codebook.
fn list_by_scan(codebook: &[Word], r: &Word, tau: usize) -> BTreeSet<Word> {
    codebook
        .iter()
        .filter(|c| indel_distance(r, c).unwrap() <= tau)
        .cloned()
        .collect()
}

fn tau2_exactness() -> Outcome {
    let mut words = 0usize;
    for n in 4..=9 {
        let code = lib(VtCode::new(n, 0))?;
        let book = lib(code.enumerate())?;
        for len in n - 2..=n + 2 {
            let bad = all_binary(len).into_par_iter().find_any(|r| {
                list_decode_tau2(&code, r).map(|l| l.codeword_set()).ok()
                    != Some(list_by_scan(book, r, 2))
            });
            if let Some(r) = bad {
                return Err(format!("n={n} received {r}"));
            }
            words += 1 << len;
        }
    }
    Ok(format!("{words} received words, n in 4..=9, set equality"))
}

fn list_size_at_most_n() -> Outcome {
    let mut rows = Vec::new();
    for n in 4..=9 {
        let code = lib(VtCode::new(n, 0))?;
        for received in [n, n + 2] {
            let worst = lib(max_list_size(&code, 2, received))?.max_list_size;
            ensure(worst <= n, || {
                format!("n={n} N={received}: max list {worst} > n")
            })?;
            rows.push(format!("{n}/{received}:{worst}"));
        }
        for c in lib(code.enumerate())? {
            let size = lib(brute_force_list(&code, c, 2))?.len();
            ensure(size == 1, || {
                format!("n={n}: codeword {c} has list size {size}")
            })?;
        }
    }
    Ok(format!(
        "max list n/N:size {}; codeword lists all singletons",
        rows.join(" ")
    ))
}

fn example_feasibility() -> Outcome {
    // log-spaced n in [1, 1e6]
    let mut ns: BTreeSet<usize> = (0..=600)
        .map(|i| 10f64.powf(i as f64 / 100.0).round() as usize)
        .collect();
    ns.insert(1_000_000);
    let mut min_margin = f64::INFINITY;
    for &n in &ns {
        let p = lib(CodeParams::new(n, n + 2, 4, 2, 2))?;
        let tau = johnson_radius_free(&p).ok_or_else(|| format!("n={n}: radius undefined"))?;
        min_margin = min_margin.min(tau - 2.0);
        ensure(tau - 2.0 > 1e-9, || {
            format!("n={n}: radius {tau} not above 2 by 1e-9")
        })?;
    }
    for n in 1..=100usize {
        let p = lib(CodeParams::new(n, n + 2, 4, 2, 2))?;
        // S - sqrt(S(S-4)) > 2  <=>  (S-2)^2 > S(S-4) with S >= 2
        let s = (2 * n + 2) as i128;
        let exact = s >= 2 && (s - 2) * (s - 2) > s * (s - 4);
        ensure(exact, || format!("n={n}: integer test fails"))?;
        ensure(radius_free_exceeds(&p, 2), || {
            format!("n={n}: library exact test fails")
        })?;
    }
    Ok(format!(
        "{} log-spaced n up to 1e6, smallest margin {min_margin:.3e}; exact sign test n=1..100",
        ns.len()
    ))
}

fn deletion_sandwich() -> Outcome {
    let mut rows = Vec::new();
    for n in 5..=11usize {
        let worst = lib(max_deletion_list_size(&lib(VtCode::new(n, 0))?, 2))?.max_list_size as u128;
        let binom = choose(n as u128, 2);
        let lb = lib(vt_deletion_lower_bound(n, 2))?;
        ensure(lb.binomial == binom, || {
            format!("n={n}: binomial {}", lb.binomial)
        })?;
        ensure(binom <= worst * (n as u128 + 1), || {
            format!("n={n}: {worst} below C(n,2)/(n+1)")
        })?;
        ensure(worst <= n as u128, || format!("n={n}: {worst} above n"))?;
        rows.push(format!("{n}:{binom}/{}<={worst}<={n}", n + 1));
    }
    Ok(rows.join(" "))
}

fn insertion_ball_formula() -> Outcome {
    let mut checks = 0;
    for len in 0..=8u128 {
        for eps in 0..=3u128 {
            let formula: u128 = (0..=eps)
                .map(|s| (0..=s).map(|i| choose(len + s, i)).sum::<u128>())
                .sum();
            for w in all_binary(len as usize) {
                let size = insertion_ball(&w, eps as usize).len() as u128;
                ensure(size == formula, || {
                    format!("w={w} eps={eps}: {size} != {formula}")
                })?;
                checks += 1;
            }
        }
    }
    Ok(format!("{checks} (word, eps) pairs"))
}

fn bound_algebra() -> Outcome {
    let rel = |a: f64, b: f64| (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE);
    let mut identities = 0;
    let mut worst_rel = 0f64;
    for n in 1..=200 {
        for d in 1..=10.min(2 * n) {
            for q in [2, 3, 4, 16] {
                for r in 0..=n.min(10) {
                    for (one_sided, received) in [
                        (deletion_only_bound(n, d, q, r), n - r),
                        (insertion_only_bound(n, d, q, r), n + r),
                    ] {
                        let Ok(p) = CodeParams::new(n, received, d, q, r) else {
                            continue;
                        };
                        let general = johnson_list_bound_q(&p);
                        ensure(one_sided.is_feasible() == general.is_feasible(), || {
                            format!("{p:?}")
                        })?;
                        if let (Some(a), Some(b)) = (one_sided.value(), general.value()) {
                            worst_rel = worst_rel.max(rel(a, b));
                            ensure(rel(a, b) <= 1e-12, || format!("{p:?}: {a} vs {b}"))?;
                            identities += 1;
                        }
                    }
                }
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(20_240_101);
    let (mut sampled, mut compared) = (0, 0);
    while sampled < 10_000 {
        let n: usize = rng.random_range(1..=5000);
        let tau: usize = rng.random_range(0..=n.min(100));
        let received = rng.random_range(n.saturating_sub(tau)..=n + tau);
        let d = rng.random_range(1..=(n + received).min(400));
        let q = rng.random_range(2..=256);
        let Ok(p) = CodeParams::new(n, received, d, q, tau) else {
            continue;
        };
        sampled += 1;
        if let (ListBound::Feasible { value: lq, .. }, ListBound::Feasible { value: lf, .. }) =
            (johnson_list_bound_q(&p), johnson_list_bound_free(&p))
        {
            ensure(lq <= lf, || format!("{p:?}: q-ary {lq} > free {lf}"))?;
            compared += 1;
        }
    }

    let mut worst_hamming = 0f64;
    for i in 0..=10_000 {
        let x = i as f64 / 10_000.0;
        let want = 1.0 - (1.0 - x).sqrt();
        let got = normalized_radius_free(x, 0.0).ok_or_else(|| format!("x={x}: undefined"))?;
        let err = if want == 0.0 {
            got.abs()
        } else {
            rel(got, want)
        };
        worst_hamming = worst_hamming.max(err);
        ensure(err <= 1e-12, || format!("x={x}: {got} vs {want}"))?;
    }
    Ok(format!(
        "{identities} one-sided bound identities (max rel {worst_rel:.1e}); {compared}/{sampled} random tuples with both bounds feasible, q-ary <= free; Hamming curve max rel {worst_hamming:.1e}"
    ))
}

fn curves() -> Outcome {
    let golden = include_str!("golden/radius_curves.csv");
    let out = vtlist_cli::run(["vt", "sweep", "--curves"]);
    ensure(out.code == 0, || out.stderr.clone())?;
    ensure(out.stdout == golden, || {
        "sweep --curves output differs from golden file".into()
    })?;
    let header: Vec<&str> = golden.lines().next().unwrap_or("").split(',').collect();
    for col in [
        "free_shift_neg_half",
        "free_shift_zero",
        "free_shift_full",
        "q2_shift_zero",
    ] {
        ensure(header.contains(&col), || format!("missing column {col}"))?;
    }
    let cell = |x: &str| -> Result<f64, String> {
        let row = golden
            .lines()
            .find(|l| l.split(',').next() == Some(x))
            .ok_or_else(|| format!("no row for d/2n = {x}"))?;
        row.split(',')
            .nth(3)
            .unwrap_or("")
            .parse()
            .map_err(|_| format!("row {x}: {row}"))
    };
    for (x, want) in [(0.75, 0.5), (1.0, 1.0)] {
        let exact = normalized_radius_free(x, 0.0).ok_or("undefined")?;
        ensure((exact - want).abs() < 1e-9, || {
            format!("({x}, {want}): got {exact}")
        })?;
    }
    ensure(
        (cell("0.75")? - 0.5).abs() < 1e-9 && (cell("1")? - 1.0).abs() < 1e-9,
        || "golden file spot values".into(),
    )?;
    Ok(format!(
        "{} rows byte-identical; spot values (0.75, 0.5) and (1, 1)",
        golden.lines().count() - 1
    ))
}

fn distance_and_partition() -> Outcome {
    for n in 4..=10 {
        let d = lib(min_distance(&lib(VtCode::new(n, 0))?))?;
        ensure(d == Some(4), || format!("n={n}: minimum distance {d:?}"))?;
    }
    for n in 1..=12usize {
        let mut counts = vec![0u128; n + 1];
        for w in all_binary(n) {
            let sum: usize = w
                .symbols()
                .iter()
                .enumerate()
                .map(|(i, &b)| (i + 1) * b as usize)
                .sum();
            counts[sum % (n + 1)] += 1;
        }
        for (a, &count) in counts.iter().enumerate() {
            let code = lib(VtCode::new(n, a))?;
            ensure(lib(code.cardinality())? == count, || {
                format!("|VT_{a}({n})|")
            })?;
            ensure(lib(code.enumerate())?.len() as u128 == count, || {
                format!("VT_{a}({n}) enumeration")
            })?;
        }
        ensure(counts.iter().sum::<u128>() == 1 << n, || {
            format!("n={n}: residues do not partition")
        })?;
        ensure(counts[0] * (n as u128 + 1) >= 1 << n, || {
            format!("n={n}: |VT_0| = {}", counts[0])
        })?;
    }
    Ok("d = 4 for n in 4..=10; cardinality and partition for n <= 12".into())
}

fn general_tau3() -> Outcome {
    let tau = 3;
    let mut notes = Vec::new();
    for n in 5..=7usize {
        let code = lib(VtCode::new(n, 0))?;
        let book = lib(code.enumerate())?;
        let budget = tau * n.pow(tau as u32 - 1) + 4 * n * n;
        let mut max_list = 0;
        let mut max_calls = 0;
        for len in n - tau..=n + tau {
            for r in all_binary(len) {
                let list = lib(list_decode_general(&code, &r, tau))?;
                ensure(list.codeword_set() == list_by_scan(book, &r, tau), || {
                    format!("n={n} received {r}")
                })?;
                let calls = list.stats().invocations;
                ensure(calls <= budget, || {
                    format!("n={n} received {r}: {calls} calls > {budget}")
                })?;
                max_list = max_list.max(list.len());
                max_calls = max_calls.max(calls);
            }
        }
        let growth = n.pow(tau as u32 - 1);
        let note = if max_list <= growth {
            "within"
        } else {
            "EXCEEDS (recorded only)"
        };
        notes.push(format!(
            "n={n}: max list {max_list} {note} n^2={growth}, max calls {max_calls}/{budget}"
        ));
    }
    Ok(notes.join("; "))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("unique-decoder round trips", round_trips),
        ("tau=2 list decoder equals brute force", tau2_exactness),
        (
            "list size at most n; codeword gives singleton",
            list_size_at_most_n,
        ),
        ("radius above 2 for d=4, N=n+2", example_feasibility),
        ("two-deletion list size sandwich", deletion_sandwich),
        ("insertion ball size formula", insertion_ball_formula),
        ("bound algebra", bound_algebra),
        ("normalised radius curves", curves),
        (
            "minimum distance, cardinality, partition",
            distance_and_partition,
        ),
        ("general tau=3 decoder", general_tau3),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS [{}] {name} ({secs:.2}s): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL [{}] {name} ({secs:.2}s): {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

//! Johnson-like radii and list-size bounds in the Levenshtein metric.
//!
//! For a code of length `n` and minimum indel distance `d`, a received word
//! of length `N` and `S = n + N`, let `eta = q/(q+1)·S`. Any radius
//! `tau < eta - sqrt(eta·(eta - d))` keeps every list below
//!
//! ```text
//!     d·S / ((q+1)/q·tau² - (2·tau - d)·S)
//! ```
//!
//! The alphabet-free variant replaces `eta` by `S` and `(q+1)/q` by 1.
//!
//! Feasibility is decided on exact integers (both sides multiplied by `q`),
//! so a radius sitting exactly on the threshold is never misclassified.
//! Values are reported as `f64`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::sequences::binomial;

/// Parameters of one bound evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CodeParams {
    pub n: usize,
    #[serde(rename = "N")]
    pub received_len: usize,
    pub d: usize,
    pub q: usize,
    pub tau: usize,
}

impl CodeParams {
    pub fn new(n: usize, received_len: usize, d: usize, q: usize, tau: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParams("code length must be positive".into()));
        }
        if q < 2 {
            return Err(Error::InvalidParams(format!("alphabet size {q} < 2")));
        }
        if d > n + received_len {
            return Err(Error::InvalidParams(format!(
                "d={d} exceeds n+N={}",
                n + received_len
            )));
        }
        if received_len.abs_diff(n) > tau {
            return Err(Error::InvalidParams(format!(
                "N={received_len} outside [n-tau, n+tau] for n={n}, tau={tau}"
            )));
        }
        Ok(Self {
            n,
            received_len,
            d,
            q,
            tau,
        })
    }

    /// `N - n`.
    pub fn length_shift(&self) -> i64 {
        self.received_len as i64 - self.n as i64
    }

    fn total_len(&self) -> usize {
        self.n + self.received_len
    }
}

/// An upper bound on the list size, or the marker that the radius is beyond
/// the Johnson-like radius.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum ListBound {
    Feasible {
        value: f64,
        /// `floor(value)`, computed exactly.
        cap: u128,
    },
    Infeasible,
}

impl ListBound {
    pub fn value(&self) -> Option<f64> {
        match *self {
            ListBound::Feasible { value, .. } => Some(value),
            ListBound::Infeasible => None,
        }
    }

    pub fn cap(&self) -> Option<u128> {
        match *self {
            ListBound::Feasible { cap, .. } => Some(cap),
            ListBound::Infeasible => None,
        }
    }

    pub fn is_feasible(&self) -> bool {
        matches!(self, ListBound::Feasible { .. })
    }
}

/// Alphabet weighting `(q+1)/q` as an integer pair; `(1, 1)` is the
/// alphabet-free form.
#[derive(Clone, Copy)]
struct Weight {
    num: i128,
    den: i128,
}

impl Weight {
    fn qary(q: usize) -> Self {
        Self {
            num: q as i128 + 1,
            den: q as i128,
        }
    }

    const FREE: Weight = Weight { num: 1, den: 1 };
}

/// Exact evaluation of `d·S / (w·tau² - (2·tau - d)·S)` under the radius
/// condition `tau < eta - sqrt(eta(eta - d))` with `eta = S/w`.
///
/// With `eta >= d`, the condition is equivalent to `tau < eta` together with a
/// positive denominator.
fn exact_list_bound(span: usize, d: usize, tau: usize, w: Weight) -> (bool, i128, i128) {
    let (s, d, t) = (span as i128, d as i128, tau as i128);
    let radius_defined = w.den * s >= w.num * d;
    let below_vertex = w.num * t < w.den * s;
    let num = w.den * d * s;
    let den = w.num * t * t - w.den * (2 * t - d) * s;
    (radius_defined && below_vertex && den > 0, num, den)
}

fn list_bound(span: usize, d: usize, tau: usize, w: Weight) -> ListBound {
    let (feasible, num, den) = exact_list_bound(span, d, tau, w);
    if !feasible {
        return ListBound::Infeasible;
    }
    ListBound::Feasible {
        value: num as f64 / den as f64,
        cap: (num / den) as u128,
    }
}

/// `eta - sqrt(eta(eta - d))`, evaluated as `eta·d / (eta + sqrt(eta(eta - d)))`
/// to avoid cancellation.
fn johnson_radius(eta: f64, d: f64) -> Option<f64> {
    if eta < d {
        return None;
    }
    if d == 0.0 {
        return Some(0.0);
    }
    Some(eta * d / (eta + (eta * (eta - d)).sqrt()))
}

/// Exclusive unique-decoding threshold: `tau < d/2` always decodes uniquely.
pub fn unique_radius(d: usize) -> f64 {
    d as f64 / 2.0
}

/// `q/(q+1)·(n+N)`.
pub fn eta(q: usize, n: usize, received_len: usize) -> f64 {
    q as f64 / (q as f64 + 1.0) * (n + received_len) as f64
}

/// Alphabet-dependent Johnson-like radius; `None` when `eta < d`.
pub fn johnson_radius_q(p: &CodeParams) -> Option<f64> {
    let w = Weight::qary(p.q);
    if w.den * (p.total_len() as i128) < w.num * p.d as i128 {
        return None;
    }
    johnson_radius(eta(p.q, p.n, p.received_len), p.d as f64)
}

/// Alphabet-free Johnson-like radius `S - sqrt(S(S - d))`.
pub fn johnson_radius_free(p: &CodeParams) -> Option<f64> {
    johnson_radius(p.total_len() as f64, p.d as f64)
}

/// True iff `johnson_radius_q(p) > t`, decided exactly.
pub fn radius_q_exceeds(p: &CodeParams, t: usize) -> bool {
    exact_list_bound(p.total_len(), p.d, t, Weight::qary(p.q)).0
}

/// True iff `johnson_radius_free(p) > t`, decided exactly.
pub fn radius_free_exceeds(p: &CodeParams, t: usize) -> bool {
    exact_list_bound(p.total_len(), p.d, t, Weight::FREE).0
}

pub fn johnson_list_bound_q(p: &CodeParams) -> ListBound {
    list_bound(p.total_len(), p.d, p.tau, Weight::qary(p.q))
}

pub fn johnson_list_bound_free(p: &CodeParams) -> ListBound {
    list_bound(p.total_len(), p.d, p.tau, Weight::FREE)
}

/// One-sided form for a received length `n ∓ radius`: feasibility and cap
/// come from the exact test, the value from the closed form in `f64`.
fn one_sided_bound(span: usize, d: usize, q: usize, radius: usize) -> ListBound {
    match list_bound(span, d, radius, Weight::qary(q)) {
        ListBound::Feasible { cap, .. } => {
            let (qf, df, sf, rf) = (q as f64, d as f64, span as f64, radius as f64);
            let value = df * sf / ((qf + 1.0) / qf * rf * rf - (2.0 * rf - df) * sf);
            ListBound::Feasible { value, cap }
        }
        ListBound::Infeasible => ListBound::Infeasible,
    }
}

/// Bound on the list size when only `delta` deletions occurred
/// (received length `n - delta`):
/// `d(2n-δ) / ((q+1)/q·δ² - (2δ-d)(2n-δ))`.
pub fn deletion_only_bound(n: usize, d: usize, q: usize, delta: usize) -> ListBound {
    if delta > n || q < 2 {
        return ListBound::Infeasible;
    }
    one_sided_bound(2 * n - delta, d, q, delta)
}

/// Bound on the list size when only `eps` insertions occurred
/// (received length `n + eps`):
/// `d(2n+ε) / ((q+1)/q·ε² - (2ε-d)(2n+ε))`.
pub fn insertion_only_bound(n: usize, d: usize, q: usize, eps: usize) -> ListBound {
    if q < 2 {
        return ListBound::Infeasible;
    }
    one_sided_bound(2 * n + eps, d, q, eps)
}

/// Discriminants within this distance below zero are rounding noise of an
/// exactly vanishing square root.
const DISC_EPS: f64 = 1e-12;

fn sqrt_or_none(disc: f64) -> Option<f64> {
    (disc >= -DISC_EPS).then(|| disc.max(0.0).sqrt())
}

/// Alphabet-free radius normalised by `2n`, as a function of
/// `x = d/2n` and `y = Δ/n`. `None` where the square root is undefined.
pub fn normalized_radius_free(d_over_2n: f64, shift_over_n: f64) -> Option<f64> {
    let (x, y) = (d_over_2n, shift_over_n);
    let disc = 1.0 + y + y * y / 4.0 - (1.0 + y / 2.0) * x;
    sqrt_or_none(disc).map(|r| 1.0 + y / 2.0 - r)
}

/// Alphabet-dependent radius normalised by `2n` for any `q`.
pub fn normalized_radius_q(q: usize, d_over_2n: f64, shift_over_n: f64) -> Option<f64> {
    let a = q as f64 / (q as f64 + 1.0) * (1.0 + shift_over_n / 2.0);
    let disc = a * (a - d_over_2n);
    sqrt_or_none(disc).map(|r| a - r)
}

/// [`normalized_radius_q`] written out for the binary alphabet.
pub fn normalized_radius_q2(d_over_2n: f64, shift_over_n: f64) -> Option<f64> {
    let (x, y) = (d_over_2n, shift_over_n);
    let disc = 4.0 / 9.0 + 4.0 * y / 9.0 + y * y / 9.0 - (2.0 / 3.0 + y / 3.0) * x;
    sqrt_or_none(disc).map(|r| 2.0 / 3.0 + y / 3.0 - r)
}

/// Lower bound `C(n, δ)/(n+1)` on the worst-case list size when list
/// decoding `δ` deletions in `VT_0(n)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DeletionLowerBound {
    pub n: usize,
    pub delta: usize,
    pub binomial: u128,
    /// `n + 1`.
    pub denominator: u128,
    pub value: f64,
    /// `(n/δ)^δ / (n+1)`, never larger than `value`.
    pub power_bound: f64,
}

impl DeletionLowerBound {
    /// Exact `list_size >= C(n, δ)/(n+1)`.
    pub fn is_met_by(&self, list_size: u128) -> bool {
        list_size * self.denominator >= self.binomial
    }

    /// Smallest integer list size allowed by the bound.
    pub fn min_list_size(&self) -> u128 {
        self.binomial.div_ceil(self.denominator)
    }
}

pub fn vt_deletion_lower_bound(n: usize, delta: usize) -> Result<DeletionLowerBound> {
    if delta > n {
        return Err(Error::InvalidParams(format!("delta={delta} exceeds n={n}")));
    }
    let binom = binomial(n as u64, delta as u64).ok_or(Error::Overflow("binomial"))?;
    let denominator = n as u128 + 1;
    let power_bound = if delta == 0 {
        1.0 / denominator as f64
    } else {
        (n as f64 / delta as f64).powi(delta as i32) / denominator as f64
    };
    Ok(DeletionLowerBound {
        n,
        delta,
        binomial: binom,
        denominator,
        value: binom as f64 / denominator as f64,
        power_bound,
    })
}

/// Every bound evaluated at one parameter point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundReport {
    #[serde(flatten)]
    pub params: CodeParams,
    pub eta: f64,
    #[serde(rename = "tau_L_q")]
    pub tau_l_q: Option<f64>,
    #[serde(rename = "tau_L_free")]
    pub tau_l_free: Option<f64>,
    pub ell_q: Option<f64>,
    pub ell_free: Option<f64>,
    pub ell_q_cap: Option<u128>,
    pub ell_free_cap: Option<u128>,
    pub feasible_q: bool,
    pub feasible_free: bool,
    pub unique_radius: f64,
}

impl BoundReport {
    pub const CSV_HEADER: &'static str =
        "n,N,d,q,tau,eta,tau_L_q,tau_L_free,ell_q,ell_free,feasible_q,feasible_free";

    pub fn to_csv_row(&self) -> String {
        let opt = |v: Option<f64>| v.map(format_sig6).unwrap_or_default();
        let p = &self.params;
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            p.n,
            p.received_len,
            p.d,
            p.q,
            p.tau,
            format_sig6(self.eta),
            opt(self.tau_l_q),
            opt(self.tau_l_free),
            opt(self.ell_q),
            opt(self.ell_free),
            self.feasible_q,
            self.feasible_free,
        )
    }
}

pub fn evaluate(p: &CodeParams) -> BoundReport {
    let ell_q = johnson_list_bound_q(p);
    let ell_free = johnson_list_bound_free(p);
    BoundReport {
        params: *p,
        eta: eta(p.q, p.n, p.received_len),
        tau_l_q: johnson_radius_q(p),
        tau_l_free: johnson_radius_free(p),
        ell_q: ell_q.value(),
        ell_free: ell_free.value(),
        ell_q_cap: ell_q.cap(),
        ell_free_cap: ell_free.cap(),
        feasible_q: ell_q.is_feasible(),
        feasible_free: ell_free.is_feasible(),
        unique_radius: unique_radius(p.d),
    }
}

/// Cartesian parameter grid. `shift` holds `N - n` values.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SweepGrid {
    pub n: Vec<usize>,
    pub shift: Vec<i64>,
    pub d: Vec<usize>,
    pub q: Vec<usize>,
    pub tau: Vec<usize>,
}

impl SweepGrid {
    /// Valid points in grid order (`n`, then shift, `d`, `q`, `tau`).
    /// Combinations violating [`CodeParams::new`] are skipped.
    pub fn points(&self) -> Vec<CodeParams> {
        let mut out = Vec::new();
        for &n in &self.n {
            for &shift in &self.shift {
                let received = n as i64 + shift;
                if received < 0 {
                    continue;
                }
                for &d in &self.d {
                    for &q in &self.q {
                        for &tau in &self.tau {
                            if let Ok(p) = CodeParams::new(n, received as usize, d, q, tau) {
                                out.push(p);
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

/// One report per point, in input order.
pub fn sweep(points: &[CodeParams]) -> Vec<BoundReport> {
    points.par_iter().map(evaluate).collect()
}

/// One abscissa of the normalised radius curves.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvePoint {
    pub d_over_2n: f64,
    /// `d/4n`.
    pub unique: f64,
    /// Alphabet-free radius for `N - n = -n/2`.
    pub free_shift_neg_half: Option<f64>,
    /// Alphabet-free radius for `N = n`.
    pub free_shift_zero: Option<f64>,
    /// Alphabet-free radius for `N = 2n`.
    pub free_shift_full: Option<f64>,
    /// Binary radius for `N = n`.
    pub q2_shift_zero: Option<f64>,
}

impl CurvePoint {
    pub const CSV_HEADER: &'static str =
        "d_over_2n,unique,free_shift_neg_half,free_shift_zero,free_shift_full,q2_shift_zero";

    pub fn to_csv_row(&self) -> String {
        let opt = |v: Option<f64>| v.map(format_sig6).unwrap_or_default();
        format!(
            "{},{},{},{},{},{}",
            format_sig6(self.d_over_2n),
            format_sig6(self.unique),
            opt(self.free_shift_neg_half),
            opt(self.free_shift_zero),
            opt(self.free_shift_full),
            opt(self.q2_shift_zero),
        )
    }
}

/// A radius is only meaningful when it covers the length change:
/// `tau >= |Δ|`, i.e. `tau/2n >= |Δ/n|/2`.
fn covering(value: Option<f64>, shift_over_n: f64) -> Option<f64> {
    value.filter(|&v| v >= shift_over_n.abs() / 2.0)
}

/// The normalised radius curves over `d/2n = 0, 1/steps, ..., 1`.
pub fn radius_curves(steps: usize) -> Vec<CurvePoint> {
    (0..=steps)
        .map(|i| {
            let x = i as f64 / steps as f64;
            CurvePoint {
                d_over_2n: x,
                unique: x / 2.0,
                free_shift_neg_half: covering(normalized_radius_free(x, -0.5), -0.5),
                free_shift_zero: normalized_radius_free(x, 0.0),
                free_shift_full: covering(normalized_radius_free(x, 1.0), 1.0),
                q2_shift_zero: normalized_radius_q2(x, 0.0),
            }
        })
        .collect()
}

/// Formats like C's `%.6g`: six significant digits, trailing zeros removed.
pub fn format_sig6(x: f64) -> String {
    if x == 0.0 {
        return "0".to_owned();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.5e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    let trim = |s: &str| {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_owned()
        } else {
            s.to_owned()
        }
    };
    if !(-4..6).contains(&exp) {
        format!(
            "{}e{}{:02}",
            trim(mantissa),
            if exp < 0 { '-' } else { '+' },
            exp.abs()
        )
    } else {
        let decimals = (5 - exp).max(0) as usize;
        trim(&format!("{x:.decimals$}"))
    }
}

//! Brute-force verifiers.
//!
//! Everything here works from first principles: sequences are enumerated as
//! bitmasks (bit `i` set means `+1` at position `i + 1`), window weights come
//! from popcounts, gap blocks are decided by a dynamic program, and level-set
//! brackets are recomputed by listing the set. The enumeration space is split
//! into contiguous shards, one per worker, and merged in shard order, so every
//! result is independent of the worker count.

use std::collections::BTreeSet;
use std::thread;

use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::decomp::{decompose, LayeredInstance, PathDecomposition};
use crate::error::{Error, Result};
use crate::extremal::{enumerate_block_family, enumerate_gap_family};
use crate::numtheory::is_prime;
use crate::search::{find_zs_ap, scan_bounded_block, scan_exact_block};
use crate::seq::{BlockKind, BlockWitness, SignedSeq};
use crate::thresholds::{block_threshold, gap_threshold, Rational};

/// Default cap on the number of sequences a single verification enumerates.
pub const DEFAULT_BUDGET: u64 = 1 << 26;

/// Largest number of counterexamples kept in a report.
const MAX_LISTED: usize = 20;

pub fn default_workers() -> usize {
    thread::available_parallelism().map_or(1, |n| n.get())
}

fn check_budget(bits: usize, budget: u64) -> Result<()> {
    if bits >= 63 || (1u64 << bits) > budget {
        return Err(Error::BudgetExceeded {
            bits: bits as u32,
            budget,
        });
    }
    Ok(())
}

/// Runs `visit` on every mask below `2^bits`. `visit` reports whether the
/// mask passed its filter and optionally yields an item. Returns the number
/// of passing masks and the items in increasing mask order.
fn scan_masks<T, F>(bits: usize, workers: usize, visit: F) -> (u64, Vec<T>)
where
    T: Send,
    F: Fn(u64) -> (bool, Option<T>) + Sync,
{
    let total = 1u64 << bits;
    let workers = workers.max(1) as u64;
    let chunk = total.div_ceil(workers).max(1);
    let visit = &visit;
    let shards: Vec<(u64, Vec<T>)> = thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let lo = (w * chunk).min(total);
                let hi = ((w + 1) * chunk).min(total);
                scope.spawn(move || {
                    let mut count = 0;
                    let mut items = Vec::new();
                    for mask in lo..hi {
                        let (passed, item) = visit(mask);
                        count += passed as u64;
                        items.extend(item);
                    }
                    (count, items)
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("oracle worker panicked"))
            .collect()
    });
    let mut count = 0;
    let mut items = Vec::new();
    for (c, mut v) in shards {
        count += c;
        items.append(&mut v);
    }
    (count, items)
}

fn mask_total(mask: u64, n: usize) -> i64 {
    2 * mask.count_ones() as i64 - n as i64
}

/// Whether some `k`-window of the mask has weight at most `t` in absolute value.
fn mask_has_bounded_window(mask: u64, n: usize, k: usize, t: i64) -> bool {
    let window = (1u64 << k) - 1;
    (0..=n - k).any(|i| (2 * ((mask >> i) & window).count_ones() as i64 - k as i64).abs() <= t)
}

fn mask_text(mask: u64, n: usize) -> String {
    SignedSeq::from_mask(mask, n).to_text()
}

fn family_masks(family: &[SignedSeq]) -> BTreeSet<u64> {
    family
        .iter()
        .map(|f| f.to_mask().expect("family members are ±1 and short"))
        .collect()
}

/// Outcome of an exhaustive threshold check at `N` and at `N - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThresholdReport {
    pub n_threshold: usize,
    /// Sequences of length `N` satisfying the weight hypothesis.
    pub checked: u64,
    /// Length-`N` sequences satisfying the hypothesis with no valid block.
    pub counterexamples: Vec<String>,
    pub counterexample_count: usize,
    /// Length-`N - 1` sequences attaining the weight bound with no valid block.
    pub extremal_count: usize,
    pub family_size: usize,
    /// Extremal sequences missing from the constructed family.
    pub unexpected: Vec<String>,
    /// Family members that are not extremal.
    pub missing: Vec<String>,
    pub passed: bool,
}

impl ThresholdReport {
    fn assemble(
        n_threshold: usize,
        checked: u64,
        bad: Vec<u64>,
        extremal: Vec<u64>,
        family: &[SignedSeq],
    ) -> Self {
        let n1 = n_threshold - 1;
        let found: BTreeSet<u64> = extremal.into_iter().collect();
        let expected = family_masks(family);
        let unexpected: Vec<String> = found
            .difference(&expected)
            .take(MAX_LISTED)
            .map(|&m| mask_text(m, n1))
            .collect();
        let missing: Vec<String> = expected
            .difference(&found)
            .take(MAX_LISTED)
            .map(|&m| mask_text(m, n1))
            .collect();
        let passed = bad.is_empty() && found == expected;
        Self {
            n_threshold,
            checked,
            counterexample_count: bad.len(),
            counterexamples: bad
                .iter()
                .take(MAX_LISTED)
                .map(|&m| mask_text(m, n_threshold))
                .collect(),
            extremal_count: found.len(),
            family_size: expected.len(),
            unexpected,
            missing,
            passed,
        }
    }
}

/// Checks by enumeration that every length-`N` sequence with total at most
/// `q` in absolute value has a `k`-window of weight at most `t`, and that at
/// length `N - 1` the sequences of total exactly `±q` without one are
/// precisely the constructed block family.
pub fn verify_block_threshold(
    k: usize,
    t: usize,
    q: usize,
    budget: u64,
    workers: usize,
) -> Result<ThresholdReport> {
    let n = block_threshold(k as i64, t as i64, q as i64)? as usize;
    if n <= k {
        return Err(Error::InvalidParams(format!(
            "threshold {n} does not exceed k = {k}; there is no extremal length"
        )));
    }
    check_budget(n, budget)?;
    let (t, q) = (t as i64, q as i64);

    let (checked, bad) = scan_masks(n, workers, |mask| {
        if mask_total(mask, n).abs() > q {
            return (false, None);
        }
        let ok = mask_has_bounded_window(mask, n, k, t);
        (true, (!ok).then_some(mask))
    });

    let n1 = n - 1;
    let (_, extremal) = scan_masks(n1, workers, |mask| {
        if mask_total(mask, n1).abs() != q {
            return (false, None);
        }
        (
            true,
            (!mask_has_bounded_window(mask, n1, k, t)).then_some(mask),
        )
    });

    let family = enumerate_block_family(k, t as usize, q as usize)?;
    Ok(ThresholdReport::assemble(
        n, checked, bad, extremal, &family,
    ))
}

/// Reachable partial weights: `table[j][c]` has bit `w + k` set when some
/// `c`-element selection ending at position `j` (0-based) with consecutive
/// gaps at most `d` has weight `w`.
fn gap_table(values: &[i64], d: usize, k: usize) -> Vec<Vec<u128>> {
    let n = values.len();
    let mut table = vec![vec![0u128; k + 1]; n];
    let shift = |bits: u128, v: i64| if v > 0 { bits << 1 } else { bits >> 1 };
    for j in 0..n {
        table[j][1] = 1u128 << (k as i64 + values[j]) as u32;
        for i in j.saturating_sub(d)..j {
            for c in 1..k {
                let from = table[i][c];
                if from != 0 {
                    table[j][c + 1] |= shift(from, values[j]);
                }
            }
        }
    }
    table
}

fn gap_args(values: &[i64], d: usize, k: usize) -> Result<()> {
    if values.iter().any(|&v| v != 1 && v != -1) {
        return Err(Error::InvalidParams(
            "gap oracle needs a ±1 sequence".into(),
        ));
    }
    if d == 0 || k == 0 || k > 63 {
        return Err(Error::InvalidParams(format!(
            "gap oracle needs d >= 1 and 1 <= k <= 63, got d = {d}, k = {k}"
        )));
    }
    Ok(())
}

/// Exact existence of a zero-sum `(d, k)`-block, with a witness recovered by
/// backtracking through the reachability table.
pub fn dp_zs_gap_exists(f: &SignedSeq, d: usize, k: usize) -> Result<Option<BlockWitness>> {
    let values = f.values();
    gap_args(values, d, k)?;
    if k > values.len() {
        return Ok(None);
    }
    let table = gap_table(values, d, k);
    let zero = 1u128 << k;
    let Some(end) = (0..values.len()).find(|&j| table[j][k] & zero != 0) else {
        return Ok(None);
    };
    let mut picked = vec![end];
    let (mut j, mut w) = (end, 0i64);
    for c in (1..k).rev() {
        w -= values[j];
        let bit = 1u128 << (w + k as i64) as u32;
        j = (j.saturating_sub(d)..j)
            .find(|&i| table[i][c] & bit != 0)
            .expect("reachable state has a predecessor");
        picked.push(j);
    }
    picked.reverse();
    let indices = picked.into_iter().map(|p| p + 1).collect();
    BlockWitness::new(f, indices, BlockKind::Gap(d)).map(Some)
}

fn mask_has_zs_gap(mask: u64, n: usize, d: usize, k: usize) -> bool {
    let values: Vec<i64> = (0..n)
        .map(|i| if mask >> i & 1 == 1 { 1 } else { -1 })
        .collect();
    let table = gap_table(&values, d, k);
    let zero = 1u128 << k;
    table.iter().any(|row| row[k] & zero != 0)
}

/// Checks by enumeration that every length-`N` sequence with total at most
/// `(d-1)N/(d+1)` in absolute value has a zero-sum `(d, k)`-block, and that
/// at length `N - 1` the sequences with total exactly `±(d-1)(N-1)/(d+1)`
/// and no such block are precisely the constructed gap family.
pub fn verify_gap_threshold(
    d: usize,
    k: usize,
    budget: u64,
    workers: usize,
) -> Result<ThresholdReport> {
    let n = gap_threshold(d as i64, k as i64)? as usize;
    check_budget(n, budget)?;
    let family = enumerate_gap_family(d, k)?;
    let bound = ((d - 1) * n / (d + 1)) as i64;
    let (checked, bad) = scan_masks(n, workers, |mask| {
        if mask_total(mask, n).abs() > bound {
            return (false, None);
        }
        (true, (!mask_has_zs_gap(mask, n, d, k)).then_some(mask))
    });

    let n1 = n - 1;
    if !((d - 1) * n1).is_multiple_of(d + 1) {
        return Err(Error::InvalidParams(format!(
            "(d-1)(N-1)/(d+1) is not an integer for d = {d}, N - 1 = {n1}"
        )));
    }
    let exact = ((d - 1) * n1 / (d + 1)) as i64;
    let (_, extremal) = scan_masks(n1, workers, |mask| {
        if mask_total(mask, n1).abs() != exact {
            return (false, None);
        }
        (true, (!mask_has_zs_gap(mask, n1, d, k)).then_some(mask))
    });
    Ok(ThresholdReport::assemble(
        n, checked, bad, extremal, &family,
    ))
}

/// Outcome of the exhaustive check that `scan_exact_block` finds a window of
/// weight `t` exactly when `t` lies between the extreme window weights.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InterpolationReport {
    pub max_n: usize,
    pub cases: u64,
    pub failures: Vec<String>,
    pub passed: bool,
}

pub fn verify_window_interpolation(max_n: usize, workers: usize) -> Result<InterpolationReport> {
    if max_n > 24 {
        return Err(Error::BudgetExceeded {
            bits: max_n as u32,
            budget: 1 << 24,
        });
    }
    let mut cases = 0;
    let mut failures = Vec::new();
    for n in 1..=max_n {
        let (_, fails) = scan_masks(n, workers, |mask| {
            let f = SignedSeq::from_mask(mask, n);
            let mut count = 0u64;
            let mut fail = None;
            for k in 1..=n {
                let weights: Vec<i64> = (0..=n - k)
                    .map(|i| mask_total((mask >> i) & ((1u64 << k) - 1), k))
                    .collect();
                let lo = *weights.iter().min().unwrap();
                let hi = *weights.iter().max().unwrap();
                let ki = k as i64;
                for t in (1 - ki..ki).filter(|t| (ki - t) % 2 == 0) {
                    count += 1;
                    let got = scan_exact_block(&f, k, t).expect("valid arguments");
                    let ok = match got {
                        Some(w) => lo <= t && t <= hi && w.weight == t && w.len() == k,
                        None => t < lo || t > hi,
                    };
                    if !ok && fail.is_none() {
                        fail = Some(format!("{} k={k} t={t}", f.to_text()));
                    }
                }
            }
            (count > 0, Some((count, fail)))
        });
        for (count, fail) in fails {
            cases += count;
            if failures.len() < MAX_LISTED {
                failures.extend(fail);
            }
        }
    }
    Ok(InterpolationReport {
        max_n,
        cases,
        passed: failures.is_empty(),
        failures,
    })
}

/// Outcome of the decomposition checks for one `(n, m, r, s)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompReport {
    pub n: usize,
    pub m: usize,
    pub r: i64,
    pub s: i64,
    pub instances: u64,
    /// Zero-total instances on which per-path value counts were checked.
    pub zero_sum_instances: u64,
    /// Instances whose mean is not an achievable weight, so both band ends
    /// must occur in every conforming decomposition.
    pub tight_witnesses: u64,
    /// Instances cross-checked by exhaustive search.
    pub exhaustive_checked: u64,
    pub failures: Vec<String>,
    pub passed: bool,
}

/// Achievable weights of `m` cells valued `-r` or `s`, by direct listing.
fn brute_level_set(r: i64, s: i64, m: i64) -> BTreeSet<i64> {
    (0..=m).map(|x| -r * x + s * (m - x)).collect()
}

fn brute_bracket(q: Rational, r: i64, s: i64, m: i64) -> (i64, i64) {
    let l = brute_level_set(r, s, m);
    let lo = *l.iter().filter(|&&p| Rational::from(p) <= q).max().unwrap();
    let hi = *l.iter().filter(|&&p| Rational::from(p) >= q).min().unwrap();
    (lo, hi)
}

/// The level-set identities for bracket `q`, checked against brute force.
fn level_set_identities(q: Rational, r: i64, s: i64, m: i64) -> Vec<String> {
    let mut errs = Vec::new();
    let l = brute_level_set(r, s, m);
    let (lo, hi) = brute_bracket(q, r, s, m);
    let (lo_q, hi_q) = (Rational::from(lo), Rational::from(hi));
    if !(lo_q <= q && q <= hi_q) {
        errs.push(format!("bracket [{lo}, {hi}] misses q = {q}"));
    }
    let in_l = q.is_integer() && l.contains(&q.to_integer());
    if (lo == hi && lo_q == q) != in_l {
        errs.push(format!(
            "degenerate bracket disagrees with membership of {q}"
        ));
    }
    if hi - lo != 0 && hi - lo != r + s {
        errs.push(format!("bracket width {} not in {{0, r+s}}", hi - lo));
    }
    for c in 1..=3 {
        let (clo, chi) = brute_bracket(q * c, r, s, m * c);
        if c * lo > clo || c * hi < chi {
            errs.push(format!("scaling by {c} breaks bracket monotonicity"));
        }
    }
    let by_y: BTreeSet<i64> = (0..=m).map(|y| (r + s) * y - r * m).collect();
    let by_x: BTreeSet<i64> = (0..=m).map(|x| -(r + s) * x + s * m).collect();
    if by_y != l || by_x != l {
        errs.push("level-set parametrizations disagree".into());
    }
    if l.contains(&0) != (m % ((r + s) / r.gcd(&s)) == 0) {
        errs.push("zero membership disagrees with the divisibility test".into());
    }
    errs
}

/// Whether the instance admits some decomposition with all weights in
/// `[lo, hi]`, by depth-first search over per-layer assignments.
fn exhaustive_band_exists(cells: &[Vec<i64>], lo: i64, hi: i64, r: i64, s: i64) -> bool {
    let n = cells[0].len();
    let mut sums = vec![0i64; n];
    fn assign(
        cells: &[Vec<i64>],
        layer: usize,
        path: usize,
        used: &mut Vec<bool>,
        sums: &mut Vec<i64>,
        bounds: (i64, i64, i64, i64),
    ) -> bool {
        let (lo, hi, r, s) = bounds;
        let (m, n) = (cells.len(), cells[0].len());
        if layer == m {
            return true;
        }
        if path == n {
            let mut fresh = vec![false; n];
            return assign(cells, layer + 1, 0, &mut fresh, sums, bounds);
        }
        let rest = (m - layer - 1) as i64;
        for c in 0..n {
            if used[c] {
                continue;
            }
            let w = sums[path] + cells[layer][c];
            if w + s * rest < lo || w - r * rest > hi {
                continue;
            }
            used[c] = true;
            sums[path] = w;
            if assign(cells, layer, path + 1, used, sums, bounds) {
                return true;
            }
            sums[path] -= cells[layer][c];
            used[c] = false;
        }
        false
    }
    let mut used = vec![false; n];
    assign(cells, 0, 0, &mut used, &mut sums, (lo, hi, r, s))
}

struct DecompChecker {
    n: usize,
    m: usize,
    r: i64,
    s: i64,
    exhaustive: bool,
    report: DecompReport,
}

impl DecompChecker {
    fn new(n: usize, m: usize, r: i64, s: i64) -> Result<Self> {
        if n == 0 || m == 0 || r <= 0 || s <= 0 {
            return Err(Error::InvalidParams(format!(
                "need positive n, m, r, s; got {n}, {m}, {r}, {s}"
            )));
        }
        Ok(Self {
            n,
            m,
            r,
            s,
            exhaustive: n <= 4 && m <= 5,
            report: DecompReport {
                n,
                m,
                r,
                s,
                instances: 0,
                zero_sum_instances: 0,
                tight_witnesses: 0,
                exhaustive_checked: 0,
                failures: Vec::new(),
                passed: true,
            },
        })
    }

    fn fail(&mut self, inst: &LayeredInstance, what: String) {
        self.report.passed = false;
        if self.report.failures.len() < MAX_LISTED {
            let cells: Vec<String> = (0..self.m)
                .map(|l| {
                    (0..self.n)
                        .map(|c| inst.cell(l, c).to_string())
                        .collect::<Vec<_>>()
                        .join(" ")
                })
                .collect();
            self.report
                .failures
                .push(format!("[{}] {what}", cells.join(" | ")));
        }
    }

    fn check(&mut self, values: &[i64]) {
        let (n, m, r, s) = (self.n, self.m, self.r, self.s);
        let inst = LayeredInstance::new(n, m, r, s, values).expect("generated values are valid");
        self.report.instances += 1;
        let total: i64 = values.iter().sum();
        let q = Rational::new(total, n as i64);
        let (lo, hi) = brute_bracket(q, r, s, m as i64);

        for e in level_set_identities(q, r, s, m as i64) {
            self.fail(&inst, e);
        }

        let dec: PathDecomposition = decompose(&inst);
        if let Err(e) = dec.validate(&inst) {
            self.fail(&inst, format!("invalid decomposition: {e}"));
            return;
        }
        if dec.weights.iter().sum::<i64>() != total {
            self.fail(&inst, "path weights do not sum to the total".into());
        }
        if (dec.lambda, dec.upper) != (lo, hi) {
            self.fail(
                &inst,
                format!(
                    "reported band [{}, {}], expected [{lo}, {hi}]",
                    dec.lambda, dec.upper
                ),
            );
        }
        if let Some(w) = dec.weights.iter().find(|&&w| w < lo || w > hi) {
            self.fail(&inst, format!("path weight {w} outside [{lo}, {hi}]"));
        }

        if lo != hi {
            self.report.tight_witnesses += 1;
            if !(dec.weights.contains(&lo) && dec.weights.contains(&hi)) {
                self.fail(&inst, "mean not achievable yet one band end unused".into());
            }
        }

        if r == 1 && s == 1 {
            let k = q.ceil().to_integer();
            let pair = if (m as i64 - k).rem_euclid(2) == 0 {
                (k - 2, k)
            } else {
                (k - 1, k + 1)
            };
            if let Some(w) = dec.weights.iter().find(|&&w| w != pair.0 && w != pair.1) {
                self.fail(
                    &inst,
                    format!("weight {w} outside {{{}, {}}}", pair.0, pair.1),
                );
            }
        }

        let g = r.gcd(&s);
        if total == 0 && (m as i64) % ((r + s) / g) == 0 {
            self.report.zero_sum_instances += 1;
            let qz = g * m as i64 / (r + s);
            let (want_s, want_r) = (qz * r / g, qz * s / g);
            for p in &dec.paths {
                let n_s = (0..m).filter(|&l| inst.cell(l, p[l]) == s).count() as i64;
                let n_r = m as i64 - n_s;
                if (n_s, n_r) != (want_s, want_r) {
                    self.fail(
                        &inst,
                        format!("zero-sum path has {n_s} s-cells and {n_r} r-cells, expected {want_s} and {want_r}"),
                    );
                }
            }
        }

        if self.exhaustive {
            self.report.exhaustive_checked += 1;
            let cells: Vec<Vec<i64>> = values.chunks(n).map(<[i64]>::to_vec).collect();
            if !exhaustive_band_exists(&cells, lo, hi, r, s) {
                self.fail(&inst, "no decomposition within the band exists".into());
            }
        }
    }
}

/// Checks `decompose` on every instance of the given shape. Limited to
/// `n * m <= 20` cells.
pub fn verify_decomposition_all(n: usize, m: usize, r: i64, s: i64) -> Result<DecompReport> {
    if n * m > 20 {
        return Err(Error::BudgetExceeded {
            bits: (n * m) as u32,
            budget: 1 << 20,
        });
    }
    let mut checker = DecompChecker::new(n, m, r, s)?;
    for mask in 0..1u64 << (n * m) {
        let values: Vec<i64> = (0..n * m)
            .map(|i| if mask >> i & 1 == 1 { s } else { -r })
            .collect();
        checker.check(&values);
    }
    Ok(checker.report)
}

/// Checks `decompose` on `trials` random instances, plus `trials` random
/// zero-total instances when the shape admits them. Seeded and reproducible.
pub fn verify_decomposition(
    n: usize,
    m: usize,
    r: i64,
    s: i64,
    trials: usize,
    seed: u64,
) -> Result<DecompReport> {
    let mut checker = DecompChecker::new(n, m, r, s)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cells = n * m;
    for _ in 0..trials {
        let values: Vec<i64> = (0..cells)
            .map(|_| if rng.gen_bool(0.5) { s } else { -r })
            .collect();
        checker.check(&values);
    }
    // a zero total over nm cells needs nm*s/(r+s) cells valued -r
    if (cells as i64 * s) % (r + s) == 0 {
        let neg = cells * s as usize / (r + s) as usize;
        let mut values: Vec<i64> = (0..cells).map(|i| if i < neg { -r } else { s }).collect();
        for _ in 0..trials {
            values.shuffle(&mut rng);
            checker.check(&values);
        }
    }
    Ok(checker.report)
}

/// Weight of the explicit progression `1, 1+d, ..., 1+(k-1)d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExplicitAp {
    pub d: usize,
    pub weight: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ApReport {
    pub k: usize,
    pub n: usize,
    pub pattern: String,
    pub family_matches: bool,
    /// Zero-sum progressions found on the pattern and on its negation.
    pub found: Vec<Option<BlockWitness>>,
    pub contiguous_found: bool,
    pub explicit: Vec<ExplicitAp>,
    pub passed: bool,
}

/// For `k ≡ 2 (mod 4)` with `k/2` composite, checks that the unique zero-total
/// length `k^2/4 - 1` sequence without a zero-sum `k`-block still contains a
/// zero-sum `k`-term progression.
pub fn verify_ap_proposition(k: usize) -> Result<ApReport> {
    if k % 4 != 2 || k < 6 {
        return Err(Error::InvalidParams(format!(
            "k = {k} must be at least 6 and ≡ 2 (mod 4)"
        )));
    }
    let half = k / 2;
    if is_prime(half as u64) {
        return Err(Error::InvalidParams(format!("k/2 = {half} is prime")));
    }
    let n = k * k / 4 - 1;
    let neg_run = n % k;
    let values: Vec<i64> = (0..n)
        .map(|i| if i % k < neg_run { -1 } else { 1 })
        .collect();
    let f = SignedSeq::pm1(&values);

    let family = enumerate_block_family(k, 0, 0)?;
    let texts: BTreeSet<String> = family.iter().map(SignedSeq::to_text).collect();
    let family_matches =
        texts.len() == 2 && texts.contains(&f.to_text()) && texts.contains(&f.negated().to_text());

    let mut found = Vec::new();
    let mut contiguous_found = false;
    for g in [f.clone(), f.negated()] {
        let ap = find_zs_ap(&g, k)?.filter(|w| w.weight == 0);
        found.push(ap);
        contiguous_found |= scan_bounded_block(&g, k, 0)?.is_some();
    }

    let explicit: Vec<ExplicitAp> = (2..half)
        .filter(|d| half.is_multiple_of(*d))
        .map(|d| {
            let indices: Vec<usize> = (0..k).map(|j| 1 + j * d).collect();
            let weight = f.weight_of(&indices).expect("progression fits in [n]");
            ExplicitAp { d, weight }
        })
        .collect();

    let passed = family_matches
        && found.iter().all(Option::is_some)
        && !contiguous_found
        && !explicit.is_empty()
        && explicit.iter().all(|e| e.weight == 0);
    Ok(ApReport {
        k,
        n,
        pattern: f.to_text(),
        family_matches,
        found,
        contiguous_found,
        explicit,
        passed,
    })
}

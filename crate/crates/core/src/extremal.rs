//! Extremal families: the exact sets of sequences one below the threshold
//! that reach the largest allowed total weight and still avoid every valid
//! block.
//!
//! Block family `(k, t, q)`: length `n = N - 1` is split as `n = mk + r` with
//! `r = (k - t)/2 + s - 1`. The first `r` positions of every `k`-period
//! (`R_1, ..., R_{m+1}`) hold `-1` except for `s` positions per period; all
//! other positions hold `+1`. If `a_l^i` is the `l`-th `+1` in `R_i`, the
//! layout requires `a_l^{i+1} <= a_l^i + k`, i.e. the in-period offsets are
//! pointwise non-increasing from one period to the next.
//!
//! Gap family `(d, k)`: `n = mb + r` with `m = (k - 2s - 2)/4`,
//! `b = (d+1)k/2 + d - 1`, `r = k/2 - 1 + ds`; each period of length `b`
//! starts with `R_i` (length `r`) followed by `T_i` (all `+1`).

use std::ops::RangeInclusive;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::seq::SignedSeq;
use crate::thresholds::{block_threshold, gap_threshold, residue_s, GapParams};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockFamilyLayout {
    pub k: usize,
    pub t: usize,
    pub q: usize,
    pub s_residue: usize,
    /// Extremal length, one below the threshold.
    pub n: usize,
    pub m: usize,
    pub r: usize,
}

impl BlockFamilyLayout {
    pub fn new(k: usize, t: usize, q: usize) -> Result<Self> {
        let (ki, ti, qi) = (k as i64, t as i64, q as i64);
        let s = residue_s(ki, ti, qi)? as usize;
        let threshold = block_threshold(ki, ti, qi)? as usize;
        if threshold <= k {
            return Err(Error::InvalidParams(format!(
                "threshold {threshold} for (k={k}, t={t}, q={q}) does not exceed k; no extremal family"
            )));
        }
        let n = threshold - 1;
        let (m, r) = (n / k, n % k);
        debug_assert_eq!(r + 1, (k - t) / 2 + s);
        Ok(Self {
            k,
            t,
            q,
            s_residue: s,
            n,
            m,
            r,
        })
    }

    /// Positions of `R_i`, `1 <= i <= m + 1`.
    pub fn r_block(&self, i: usize) -> RangeInclusive<usize> {
        let start = (i - 1) * self.k + 1;
        start..=start + self.r - 1
    }

    fn build(&self, offsets: &[Vec<usize>]) -> Vec<i64> {
        let mut values = vec![1i64; self.n];
        for i in 1..=self.m + 1 {
            let base = (i - 1) * self.k;
            for pos in self.r_block(i) {
                values[pos - 1] = -1;
            }
            for &off in &offsets[i - 1] {
                values[base + off - 1] = 1;
            }
        }
        values
    }
}

/// All increasing `s`-subsets of `1..=r`.
fn combinations(r: usize, s: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, r: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for x in start..=r + 1 - left {
            cur.push(x);
            go(x + 1, r, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if s <= r {
        go(1, r, s, &mut Vec::new(), &mut out);
    }
    out
}

/// Sorts positives by their text, then emits each followed by its negation,
/// dropping repeats.
fn order_with_negations(mut positives: Vec<SignedSeq>) -> Vec<SignedSeq> {
    positives.sort_by_key(|f| f.to_text());
    positives.dedup();
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::with_capacity(2 * positives.len());
    for f in positives {
        let neg = f.negated();
        for g in [f, neg] {
            if seen.insert(g.to_text()) {
                out.push(g);
            }
        }
    }
    out
}

/// Every member of the block family for `(k, t, q)`, negations included.
pub fn enumerate_block_family(k: usize, t: usize, q: usize) -> Result<Vec<SignedSeq>> {
    let layout = BlockFamilyLayout::new(k, t, q)?;
    let choices = combinations(layout.r, layout.s_residue);
    let blocks = layout.m + 1;

    // offsets chosen for R_1..R_i must be pointwise non-increasing
    fn extend(
        layout: &BlockFamilyLayout,
        choices: &[Vec<usize>],
        blocks: usize,
        chain: &mut Vec<Vec<usize>>,
        out: &mut Vec<SignedSeq>,
    ) {
        if chain.len() == blocks {
            out.push(SignedSeq::pm1(&layout.build(chain)));
            return;
        }
        for c in choices {
            let ok = chain
                .last()
                .is_none_or(|prev| c.iter().zip(prev).all(|(a, b)| a <= b));
            if ok {
                chain.push(c.clone());
                extend(layout, choices, blocks, chain, out);
                chain.pop();
            }
        }
    }

    let mut positives = Vec::new();
    extend(&layout, &choices, blocks, &mut Vec::new(), &mut positives);
    Ok(order_with_negations(positives))
}

fn block_layout_matches(layout: &BlockFamilyLayout, g: &[i64]) -> bool {
    let mut prev: Option<Vec<usize>> = None;
    for i in 1..=layout.m + 1 {
        let base = (i - 1) * layout.k;
        let offsets: Vec<usize> = layout
            .r_block(i)
            .filter(|&p| g[p - 1] == 1)
            .map(|p| p - base)
            .collect();
        if offsets.len() != layout.s_residue {
            return false;
        }
        if let Some(prev) = &prev {
            if offsets.iter().zip(prev).any(|(a, b)| a > b) {
                return false;
            }
        }
        prev = Some(offsets);
    }
    // everything outside the R blocks is +1
    (1..=layout.n)
        .filter(|&p| {
            let i = (p - 1) / layout.k + 1;
            !layout.r_block(i).contains(&p)
        })
        .all(|p| g[p - 1] == 1)
}

/// Whether `f` or `-f` has the block-family layout for `(k, t, q)`.
pub fn is_block_family_member(f: &SignedSeq, k: usize, t: usize, q: usize) -> Result<bool> {
    let layout = BlockFamilyLayout::new(k, t, q)?;
    f.require_pm1()?;
    if f.len() != layout.n {
        return Err(Error::LengthMismatch {
            expected: layout.n,
            actual: f.len(),
        });
    }
    let neg: Vec<i64> = f.values().iter().map(|v| -v).collect();
    Ok(block_layout_matches(&layout, f.values()) || block_layout_matches(&layout, &neg))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GapFamilyLayout {
    pub d: usize,
    pub k: usize,
    pub s_residue: usize,
    /// Extremal length, one below the threshold.
    pub n: usize,
    pub m: usize,
    pub b: usize,
    pub r: usize,
}

impl GapFamilyLayout {
    pub fn new(d: usize, k: usize) -> Result<Self> {
        if k < 6 {
            return Err(Error::InvalidParams(format!(
                "gap extremal families need k >= 6, got {k}"
            )));
        }
        let p = GapParams::new(d as i64, k as i64)?;
        let s = p.s_residue as usize;
        let n = gap_threshold(d as i64, k as i64)? as usize - 1;
        let m = (k - 2 * s - 2) / 4;
        let b = (d + 1) * k / 2 + d - 1;
        let r = k / 2 - 1 + d * s;
        debug_assert_eq!(n, m * b + r);
        Ok(Self {
            d,
            k,
            s_residue: s,
            n,
            m,
            b,
            r,
        })
    }

    /// Positions of `R_i`, `1 <= i <= m + 1`.
    pub fn r_block(&self, i: usize) -> RangeInclusive<usize> {
        let start = (i - 1) * self.b + 1;
        start..=start + self.r - 1
    }

    /// Positions of `T_i`, `1 <= i <= m`.
    pub fn t_block(&self, i: usize) -> RangeInclusive<usize> {
        (i - 1) * self.b + self.r + 1..=i * self.b
    }

    /// Total weight of every member: `(d-1)n/(d+1)`.
    pub fn total_weight(&self) -> usize {
        (self.d - 1) * self.n / (self.d + 1)
    }
}

fn is_block_of_ones(r: &[i64]) -> bool {
    let first = r.iter().position(|&v| v == 1);
    let last = r.iter().rposition(|&v| v == 1);
    match (first, last) {
        (Some(a), Some(b)) => r[a..=b].iter().all(|&v| v == 1),
        _ => true,
    }
}

/// Adjacent-pair rules between `R_i` and `R_{i+1}` (with `T_i` all `+1` in
/// between).
///
/// - If the `+1`s of `R_i` are not consecutive, the all-`+1` run around `T_i`
///   must reach at least `d` positions into `R_i` and `R_{i+1}` combined.
/// - If they are consecutive and `R_i` ends in `-1`, the `+1`s of `R_{i+1}`
///   must be consecutive too and at most `k/2 - 1` `-1`s may separate the two
///   runs.
fn gap_pair_rules(cur: &[i64], next: &[i64], d: usize, k: usize) -> bool {
    let trailing = cur.iter().rev().take_while(|&&v| v == 1).count();
    let leading = next.iter().take_while(|&&v| v == 1).count();
    if !is_block_of_ones(cur) {
        return trailing + leading >= d;
    }
    if trailing == 0 {
        if !is_block_of_ones(next) {
            return false;
        }
        let after = cur.len() - cur.iter().rposition(|&v| v == 1).map_or(0, |p| p + 1);
        let before = next.iter().position(|&v| v == 1).unwrap_or(next.len());
        return after + before < k / 2;
    }
    true
}

fn gap_layout_matches(layout: &GapFamilyLayout, g: &[i64]) -> bool {
    let ones_per_r = layout.d * layout.s_residue;
    let slice = |range: RangeInclusive<usize>| &g[*range.start() - 1..*range.end()];
    if !(1..=layout.m).all(|i| slice(layout.t_block(i)).iter().all(|&v| v == 1)) {
        return false;
    }
    let rs: Vec<&[i64]> = (1..=layout.m + 1)
        .map(|i| slice(layout.r_block(i)))
        .collect();
    if !rs
        .iter()
        .all(|r| r.iter().filter(|&&v| v == 1).count() == ones_per_r)
    {
        return false;
    }
    layout.s_residue == 0
        || rs
            .windows(2)
            .all(|w| gap_pair_rules(w[0], w[1], layout.d, layout.k))
}

/// Every member of the gap family for `(d, k)`, negations included.
pub fn enumerate_gap_family(d: usize, k: usize) -> Result<Vec<SignedSeq>> {
    let layout = GapFamilyLayout::new(d, k)?;
    let fillings: Vec<Vec<i64>> = combinations(layout.r, layout.d * layout.s_residue)
        .into_iter()
        .map(|ones| {
            let mut r = vec![-1i64; layout.r];
            for p in ones {
                r[p - 1] = 1;
            }
            r
        })
        .collect();

    fn extend(
        layout: &GapFamilyLayout,
        fillings: &[Vec<i64>],
        chain: &mut Vec<usize>,
        out: &mut Vec<SignedSeq>,
    ) {
        if chain.len() == layout.m + 1 {
            let mut values = vec![1i64; layout.n];
            for (i, &c) in chain.iter().enumerate() {
                let start = *layout.r_block(i + 1).start();
                values[start - 1..start - 1 + layout.r].copy_from_slice(&fillings[c]);
            }
            out.push(SignedSeq::pm1(&values));
            return;
        }
        for c in 0..fillings.len() {
            let ok = chain.last().is_none_or(|&p| {
                layout.s_residue == 0
                    || gap_pair_rules(&fillings[p], &fillings[c], layout.d, layout.k)
            });
            if ok {
                chain.push(c);
                extend(layout, fillings, chain, out);
                chain.pop();
            }
        }
    }

    let mut positives = Vec::new();
    extend(&layout, &fillings, &mut Vec::new(), &mut positives);
    Ok(order_with_negations(positives))
}

/// Whether `f` or `-f` satisfies the gap-family rules for `(d, k)`.
pub fn is_gap_family_member(f: &SignedSeq, d: usize, k: usize) -> Result<bool> {
    let layout = GapFamilyLayout::new(d, k)?;
    f.require_pm1()?;
    if f.len() != layout.n {
        return Err(Error::LengthMismatch {
            expected: layout.n,
            actual: f.len(),
        });
    }
    let neg: Vec<i64> = f.values().iter().map(|v| -v).collect();
    Ok(gap_layout_matches(&layout, f.values()) || gap_layout_matches(&layout, &neg))
}

//! Constructive searches over ±1 sequences: exact- and bounded-weight
//! windows, zero-sum `(d, k)`-blocks, zero-sum arithmetic progressions and a
//! streaming enumerator of zero-sum windows.
//!
//! Contiguous searches return the leftmost witness. Gap-block searches return
//! the witness produced by the residue-class construction when it applies and
//! the lexicographically least witness otherwise.

use crate::error::{Error, Result};
use crate::seq::{BlockKind, BlockWitness, SignedSeq};

fn check_window_args(f: &SignedSeq, k: usize, t: i64) -> Result<()> {
    f.require_pm1()?;
    let ki = k as i64;
    if k == 0 || t.abs() >= ki {
        return Err(Error::InvalidParams(format!(
            "need |t| < k, got t = {t}, k = {k}"
        )));
    }
    if (ki - t).rem_euclid(2) != 0 {
        return Err(Error::Parity { k: ki, t });
    }
    if k > f.len() {
        return Err(Error::BlockTooLong { k, n: f.len() });
    }
    Ok(())
}

/// Leftmost `k`-block of weight exactly `t`.
///
/// Such a block always exists when some window weighs less than `t` and
/// another more, since adjacent windows differ by 0 or 2.
pub fn scan_exact_block(f: &SignedSeq, k: usize, t: i64) -> Result<Option<BlockWitness>> {
    check_window_args(f, k, t)?;
    let hit = (1..=f.len() - k + 1).find(|&i| f.window_unchecked(i, k) == t);
    hit.map(|i| BlockWitness::contiguous(f, i, k)).transpose()
}

/// Leftmost `k`-block whose weight is at most `t` in absolute value.
pub fn scan_bounded_block(f: &SignedSeq, k: usize, t: i64) -> Result<Option<BlockWitness>> {
    if t < 0 {
        return Err(Error::InvalidParams(format!(
            "t = {t} must be non-negative"
        )));
    }
    check_window_args(f, k, t)?;
    let hit = (1..=f.len() - k + 1).find(|&i| f.window_unchecked(i, k).abs() <= t);
    hit.map(|i| BlockWitness::contiguous(f, i, k)).transpose()
}

fn check_gap_args(f: &SignedSeq, d: usize, k: usize) -> Result<()> {
    f.require_pm1()?;
    if d < 1 {
        return Err(Error::InvalidParams("gap bound d must be positive".into()));
    }
    if k == 0 || !k.is_multiple_of(2) {
        return Err(Error::InvalidParams(format!(
            "k = {k} must be even and positive"
        )));
    }
    if k > f.len() {
        return Err(Error::BlockTooLong { k, n: f.len() });
    }
    Ok(())
}

/// Zero-sum `(d, k)`-block via the residue-class construction alone.
///
/// Orient so the total is non-negative, pick the residue class mod `d` with
/// the fewest `+1`s (smallest residue on ties), delete the first `f([n])`
/// `+1`s outside that class, and look for a zero-sum `k`-window in what
/// survives. Surviving neighbours are at most `d` apart because every run of
/// `d` consecutive positions meets the kept class.
///
/// Returns `None` when there are not enough `+1`s to delete or the reduced
/// sequence has no zero-sum window; it makes no claim about existence in that
/// case.
pub fn construct_zs_gap_block(f: &SignedSeq, d: usize, k: usize) -> Result<Option<BlockWitness>> {
    check_gap_args(f, d, k)?;
    let sign = if f.total() < 0 { -1 } else { 1 };
    let oriented: Vec<i64> = f.values().iter().map(|v| v * sign).collect();
    let excess = f.total().unsigned_abs() as usize;

    let class_of = |pos: usize| pos % d;
    let mut ones_per_class = vec![0usize; d];
    for (i, &v) in oriented.iter().enumerate() {
        if v == 1 {
            ones_per_class[class_of(i + 1)] += 1;
        }
    }
    // residues are visited as 1, 2, ..., d so ties go to the smallest residue
    let kept = (1..=d)
        .map(class_of)
        .min_by_key(|&c| ones_per_class[c])
        .expect("d >= 1");

    let mut deleted = 0;
    let mut survivors = Vec::with_capacity(f.len());
    for (i, &v) in oriented.iter().enumerate() {
        let pos = i + 1;
        if deleted < excess && v == 1 && class_of(pos) != kept {
            deleted += 1;
        } else {
            survivors.push(pos);
        }
    }
    if deleted < excess || survivors.len() < k {
        return Ok(None);
    }

    let reduced = f.subsequence(&survivors)?;
    let Some(window) = scan_exact_block(&reduced, k, 0)? else {
        return Ok(None);
    };
    let indices = window.indices.iter().map(|&i| survivors[i - 1]).collect();
    match BlockWitness::new(f, indices, BlockKind::Gap(d)) {
        Ok(w) if w.weight == 0 => Ok(Some(w)),
        _ => Ok(None),
    }
}

/// Lexicographically least zero-sum `(d, k)`-block, or `None` if there is
/// none. Runs in `O(n k^2 d)` time using a completion table.
pub fn least_zs_gap_block(f: &SignedSeq, d: usize, k: usize) -> Result<Option<BlockWitness>> {
    check_gap_args(f, d, k)?;
    least_gap_block_with_weight(f, d, k, 0)
}

fn least_gap_block_with_weight(
    f: &SignedSeq,
    d: usize,
    k: usize,
    target: i64,
) -> Result<Option<BlockWitness>> {
    let n = f.len();
    let span = 2 * k + 1;
    let offset = k as i64;
    // done[(pos, left, w)]: a d-gap run of `left` positions starting at `pos`
    // can weigh exactly `w`
    let idx = |pos: usize, left: usize, w: i64| -> usize {
        ((pos - 1) * (k + 1) + left) * span + (w + offset) as usize
    };
    let mut done = vec![false; n * (k + 1) * span];
    let in_range = |w: i64| w.abs() <= offset;

    for pos in (1..=n).rev() {
        let v = f.values()[pos - 1];
        if in_range(v) {
            done[idx(pos, 1, v)] = true;
        }
        for left in 2..=k {
            for w in -offset..=offset {
                let rest = w - v;
                if !in_range(rest) {
                    continue;
                }
                let reachable =
                    (pos + 1..=(pos + d).min(n)).any(|nx| done[idx(nx, left - 1, rest)]);
                if reachable {
                    done[idx(pos, left, w)] = true;
                }
            }
        }
    }

    if !in_range(target) {
        return Ok(None);
    }
    let Some(start) = (1..=n).find(|&p| done[idx(p, k, target)]) else {
        return Ok(None);
    };
    let mut indices = vec![start];
    let mut need = target - f.values()[start - 1];
    let mut pos = start;
    for left in (1..k).rev() {
        let next = (pos + 1..=(pos + d).min(n))
            .find(|&nx| done[idx(nx, left, need)])
            .expect("completion table is consistent");
        indices.push(next);
        need -= f.values()[next - 1];
        pos = next;
    }
    BlockWitness::new(f, indices, BlockKind::Gap(d)).map(Some)
}

/// Zero-sum `(d, k)`-block: the residue-class construction first, then the
/// exact lexicographic search when the construction does not apply.
pub fn find_zs_gap_block(f: &SignedSeq, d: usize, k: usize) -> Result<Option<BlockWitness>> {
    if let Some(w) = construct_zs_gap_block(f, d, k)? {
        return Ok(Some(w));
    }
    least_zs_gap_block(f, d, k)
}

fn is_gap_set(indices: &[usize], d: usize, n: usize) -> bool {
    indices.first().is_some_and(|&p| p >= 1)
        && indices.last().is_some_and(|&p| p <= n)
        && indices.windows(2).all(|w| w[1] > w[0] && w[1] - w[0] <= d)
}

/// States from `indices` to the contiguous block starting at `indices[0]`.
/// Each step drops the last element and fills the first hole, so every state
/// is a valid gap set and neighbours share all but one element.
fn compaction_path(indices: &[usize]) -> Vec<Vec<usize>> {
    let mut cur = indices.to_vec();
    let mut path = vec![cur.clone()];
    while let Some(j) = (0..cur.len() - 1).find(|&j| cur[j + 1] - cur[j] > 1) {
        cur.pop();
        cur.insert(j + 1, cur[j] + 1);
        path.push(cur.clone());
    }
    path
}

/// Morphs the gap block `low` (negative weight) into `high` (positive weight)
/// one element at a time and returns the first intermediate of weight zero.
///
/// The direct exchange (replace the `i`-th element of `low` by the `i`-th of
/// `high`) is tried first. If it leaves the space of valid `(d, k)`-blocks the
/// morph restarts along compaction paths: compact `low`, slide the contiguous
/// block, and undo the compaction of `high`.
pub fn interpolate_gap_block(
    f: &SignedSeq,
    d: usize,
    k: usize,
    low: &BlockWitness,
    high: &BlockWitness,
) -> Result<BlockWitness> {
    check_gap_args(f, d, k)?;
    for (name, w) in [("first", low), ("second", high)] {
        if w.len() != k || !is_gap_set(&w.indices, d, f.len()) {
            return Err(Error::InvalidWitness(format!(
                "{name} block is not a ({d},{k})-block"
            )));
        }
    }
    let wl = f.weight_of(&low.indices)?;
    let wh = f.weight_of(&high.indices)?;
    let (low, high) = match (wl, wh) {
        (a, b) if a < 0 && b > 0 => (&low.indices, &high.indices),
        (a, b) if a > 0 && b < 0 => (&high.indices, &low.indices),
        _ => {
            return Err(Error::InvalidWitness(format!(
                "block weights {wl} and {wh} do not straddle zero"
            )))
        }
    };
    let emit = |indices: Vec<usize>| BlockWitness::new(f, indices, BlockKind::Gap(d));

    let mut cur = low.clone();
    for i in 0..k {
        cur[i] = high[i];
        let mut sorted = cur.clone();
        sorted.sort_unstable();
        if !is_gap_set(&sorted, d, f.len()) {
            break;
        }
        if f.weight_of(&sorted)? == 0 {
            return emit(sorted);
        }
    }

    let down = compaction_path(low);
    let mut up = compaction_path(high);
    up.reverse();
    let from = down.last().expect("non-empty")[0];
    let to = up[0][0];
    let slide = (0..=from.abs_diff(to)).map(|step| {
        let start = if to >= from { from + step } else { from - step };
        (start..start + k).collect::<Vec<_>>()
    });
    for state in down.into_iter().chain(slide).chain(up) {
        if f.weight_of(&state)? == 0 {
            return emit(state);
        }
    }
    unreachable!("weights move in steps of 0 or 2 between a negative and a positive block")
}

/// A zero-sum `k`-term arithmetic progression. Differences are tried in
/// increasing order and, within a difference, starts from the left.
pub fn find_zs_ap(f: &SignedSeq, k: usize) -> Result<Option<BlockWitness>> {
    f.require_pm1()?;
    let n = f.len();
    if k == 0 || k > n {
        return Err(Error::BlockTooLong { k, n });
    }
    let max_diff = if k == 1 { 1 } else { (n - 1) / (k - 1) };
    let v = |p: usize| f.values()[p - 1];
    for diff in 1..=max_diff {
        let last_start = n - (k - 1) * diff;
        // sums[a] for a in 1..=last_start, filled right to left
        let mut sums = vec![0i64; last_start + 1];
        for a in (1..=last_start).rev() {
            sums[a] = if a + diff <= last_start {
                sums[a + diff] + v(a) - v(a + k * diff)
            } else {
                (0..k).map(|j| v(a + j * diff)).sum()
            };
        }
        if let Some(a) = (1..=last_start).find(|&a| sums[a] == 0) {
            let indices = (0..k).map(|j| a + j * diff).collect();
            return BlockWitness::new(f, indices, BlockKind::Arithmetic(diff)).map(Some);
        }
    }
    Ok(None)
}

/// All zero-sum `k`-blocks whose start is at most `window_limit`, in
/// increasing order of start.
pub fn stream_zs_blocks(f: &SignedSeq, k: usize, window_limit: usize) -> Result<Vec<BlockWitness>> {
    zs_block_starts(f, k, window_limit)?
        .into_iter()
        .map(|i| BlockWitness::contiguous(f, i, k))
        .collect()
}

/// Start positions of the zero-sum `k`-blocks starting at or before
/// `window_limit`.
pub fn zs_block_starts(f: &SignedSeq, k: usize, window_limit: usize) -> Result<Vec<usize>> {
    f.require_pm1()?;
    if k == 0 || !k.is_multiple_of(2) {
        return Err(Error::InvalidParams(format!(
            "k = {k} must be even and positive"
        )));
    }
    if k > f.len() {
        return Ok(Vec::new());
    }
    let last = (f.len() - k + 1).min(window_limit);
    Ok((1..=last)
        .filter(|&i| f.window_unchecked(i, k) == 0)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seq::parse_seq;

    fn seq(s: &str) -> SignedSeq {
        parse_seq(s, 1, 1).unwrap()
    }

    #[test]
    fn exact_block_examples() {
        let w = scan_exact_block(&seq("+-+-+-"), 2, 0).unwrap().unwrap();
        assert_eq!(w.indices, vec![1, 2]);
        assert_eq!(scan_exact_block(&seq("--++++--"), 6, 0).unwrap(), None);
        let w = scan_exact_block(&seq("++++----"), 4, 0).unwrap().unwrap();
        assert_eq!(w.indices, vec![3, 4, 5, 6]);
        let w = scan_exact_block(&seq("++++----"), 4, -2).unwrap().unwrap();
        assert_eq!(w.indices, vec![4, 5, 6, 7]);
    }

    #[test]
    fn exact_block_errors() {
        assert_eq!(
            scan_exact_block(&seq("+-+-"), 2, 1),
            Err(Error::Parity { k: 2, t: 1 })
        );
        assert!(matches!(
            scan_exact_block(&seq("+-"), 4, 0),
            Err(Error::BlockTooLong { .. })
        ));
        assert!(scan_exact_block(&seq("+-+-"), 2, 2).is_err());
        let wide = parse_seq("-2 3", 2, 3).unwrap();
        assert!(matches!(
            scan_exact_block(&wide, 2, 0),
            Err(Error::NotPlusMinusOne { .. })
        ));
    }

    #[test]
    fn bounded_block_examples() {
        assert_eq!(scan_bounded_block(&seq("--++++--"), 6, 0).unwrap(), None);
        let h = seq("--+++++--+++++--");
        assert_eq!(h.total(), 4);
        assert_eq!(scan_bounded_block(&h, 7, 1).unwrap(), None);
        let w = scan_bounded_block(&seq("+++-+"), 3, 1).unwrap().unwrap();
        assert_eq!(w.indices, vec![2, 3, 4]);
        assert!(scan_bounded_block(&seq("+++-+"), 3, -1).is_err());
    }

    #[test]
    fn bounded_block_beyond_extremal_length() {
        // appending one symbol to the extremal sequence for (7,1,4) reaches
        // the threshold 17; every extension with |total| <= 4 has a witness
        let h = "--+++++--+++++--";
        for tail in ["-", "+"] {
            let f = seq(&format!("{h}{tail}"));
            if f.total().abs() <= 4 {
                assert!(scan_bounded_block(&f, 7, 1).unwrap().is_some());
            }
        }
        let f = seq(&format!("-{h}"));
        assert_eq!(f.total(), 3);
        assert!(scan_bounded_block(&f, 7, 1).unwrap().is_some());
    }

    #[test]
    fn gap_block_examples() {
        // construction keeps residue class 1 ({1,3}), deletes position 2
        let f = seq("++-");
        let w = find_zs_gap_block(&f, 2, 2).unwrap().unwrap();
        assert_eq!(w.indices, vec![1, 3]);
        assert_eq!(w.weight, 0);
        assert_eq!(w.kind, BlockKind::Gap(2));

        let alt = seq("+-+-+-+-+-+-+");
        let w = find_zs_gap_block(&alt, 2, 6).unwrap().unwrap();
        assert_eq!(w.weight, 0);
        w.validate(&alt).unwrap();
        assert_eq!(
            least_zs_gap_block(&alt, 2, 6).unwrap().unwrap().indices,
            vec![1, 2, 3, 4, 5, 6]
        );

        assert_eq!(find_zs_gap_block(&seq("--++++++++--"), 2, 6).unwrap(), None);
    }

    #[test]
    fn gap_block_errors() {
        assert!(find_zs_gap_block(&seq("+-+-"), 2, 3).is_err());
        assert!(find_zs_gap_block(&seq("+-"), 2, 4).is_err());
    }

    #[test]
    fn least_gap_block_is_lexicographic() {
        let f = seq("++-+--");
        let w = least_zs_gap_block(&f, 3, 4).unwrap().unwrap();
        assert_eq!(w.indices, vec![1, 2, 3, 5]);
        assert_eq!(least_zs_gap_block(&seq("++++"), 2, 2).unwrap(), None);
    }

    #[test]
    fn interpolation_direct_morph() {
        let f = seq("--++");
        let s = BlockWitness::new(&f, vec![1, 2], BlockKind::Gap(2)).unwrap();
        let t = BlockWitness::new(&f, vec![3, 4], BlockKind::Gap(2)).unwrap();
        assert_eq!(s.weight, -2);
        let w = interpolate_gap_block(&f, 2, 2, &s, &t).unwrap();
        assert_eq!(w.indices, vec![2, 3]);
        assert_eq!(w.weight, 0);
        // argument order does not matter
        let w = interpolate_gap_block(&f, 2, 2, &t, &s).unwrap();
        assert_eq!(w.weight, 0);
    }

    #[test]
    fn interpolation_rejects_bad_pairs() {
        let f = seq("--++");
        let s = BlockWitness::new(&f, vec![1, 2], BlockKind::Gap(2)).unwrap();
        assert!(interpolate_gap_block(&f, 2, 2, &s, &s).is_err());
        let far = BlockWitness {
            indices: vec![1, 4],
            kind: BlockKind::Gap(3),
            weight: 0,
        };
        assert!(interpolate_gap_block(&f, 2, 2, &s, &far).is_err());
    }

    #[test]
    fn interpolation_falls_back_to_compaction() {
        // the first direct exchange gives {2,3,4,7}, which breaks the gap
        // bound, so the morph slides the contiguous block instead
        let f = seq("----++++++");
        let low = BlockWitness::new(&f, vec![1, 2, 3, 4], BlockKind::Gap(2)).unwrap();
        let high = BlockWitness::new(&f, vec![7, 8, 9, 10], BlockKind::Gap(2)).unwrap();
        let w = interpolate_gap_block(&f, 2, 4, &low, &high).unwrap();
        assert_eq!(w.indices, vec![3, 4, 5, 6]);
        assert_eq!(w.weight, 0);
    }

    #[test]
    fn compaction_steps_are_single_exchanges() {
        let path = compaction_path(&[1, 3, 6, 8, 9]);
        assert_eq!(path.last().unwrap(), &vec![1, 2, 3, 4, 5]);
        for pair in path.windows(2) {
            let common = pair[0].iter().filter(|x| pair[1].contains(x)).count();
            assert_eq!(common, pair[0].len() - 1);
            assert!(is_gap_set(&pair[1], 3, 9));
        }
    }

    #[test]
    fn ap_examples() {
        let alt = seq("+-+-+-+-");
        let w = find_zs_ap(&alt, 4).unwrap().unwrap();
        assert_eq!(w.indices, vec![1, 2, 3, 4]);
        assert_eq!(w.kind, BlockKind::Arithmetic(1));
        assert_eq!(find_zs_ap(&seq("--++++--"), 6).unwrap(), None);
        let w = find_zs_ap(&seq("+++--+-"), 2).unwrap().unwrap();
        assert_eq!(w.indices, vec![3, 4]);
        let w = find_zs_ap(&seq("++--+"), 2).unwrap().unwrap();
        assert_eq!(w.indices, vec![2, 3]);
        assert!(find_zs_ap(&seq("+-"), 3).is_err());
    }

    #[test]
    fn ap_small_cases() {
        let f = seq("+ + + - - -");
        let w = find_zs_ap(&f, 2).unwrap().unwrap();
        assert_eq!(w.indices, vec![3, 4]);
        let f = seq("+--+");
        let w = find_zs_ap(&f, 4).unwrap().unwrap();
        assert_eq!(w.indices, vec![1, 2, 3, 4]);
    }

    #[test]
    fn streaming_examples() {
        assert!(stream_zs_blocks(&seq("++++++"), 2, 100).unwrap().is_empty());
        assert!(stream_zs_blocks(&seq("--++++--"), 6, 100)
            .unwrap()
            .is_empty());
        let f = seq("+--+-+--++");
        let starts = zs_block_starts(&f, 2, 100).unwrap();
        assert_eq!(starts, vec![1, 3, 4, 5, 6, 8]);
        assert_eq!(zs_block_starts(&f, 2, 4).unwrap(), vec![1, 3, 4]);
        assert_eq!(stream_zs_blocks(&f, 2, 1).unwrap()[0].indices, vec![1, 2]);
        assert!(stream_zs_blocks(&f, 3, 10).is_err());
    }
}

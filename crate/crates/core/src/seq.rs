//! Signed sequences over a two-letter alphabet `{-r, s}` and the witnesses
//! returned by every search in the crate.
//!
//! Positions are 1-based throughout the public API. The backing vectors are
//! 0-based and the conversion happens only inside this module.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// A finite sequence with entries in `{-r, s}` and a prefix-sum table.
///
/// `prefix[0] = 0` and `prefix[i]` is the weight of positions `1..=i`, so any
/// window weight is a single subtraction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedSeq {
    values: Vec<i64>,
    r: i64,
    s: i64,
    prefix: Vec<i64>,
}

impl SignedSeq {
    pub fn new(values: Vec<i64>, r: i64, s: i64) -> Result<Self> {
        if r <= 0 || s <= 0 {
            return Err(Error::NonPositiveAlphabet { r, s });
        }
        if let Some(&value) = values.iter().find(|&&v| v != -r && v != s) {
            return Err(Error::ValueOutOfAlphabet { value, r, s });
        }
        let mut prefix = Vec::with_capacity(values.len() + 1);
        prefix.push(0);
        let mut acc = 0;
        for &v in &values {
            acc += v;
            prefix.push(acc);
        }
        Ok(Self {
            values,
            r,
            s,
            prefix,
        })
    }

    /// Builds a ±1 sequence. Panics if an entry is not ±1.
    pub fn pm1(values: &[i64]) -> Self {
        Self::new(values.to_vec(), 1, 1).expect("entries must be ±1")
    }

    /// Builds a ±1 sequence from the low `n` bits of `mask`; bit `i` set means
    /// position `i + 1` carries `+1`.
    pub fn from_mask(mask: u64, n: usize) -> Self {
        let values = (0..n)
            .map(|i| if mask >> i & 1 == 1 { 1 } else { -1 })
            .collect();
        Self::new(values, 1, 1).expect("±1 by construction")
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn r(&self) -> i64 {
        self.r
    }

    pub fn s_val(&self) -> i64 {
        self.s
    }

    pub fn is_pm1(&self) -> bool {
        self.r == 1 && self.s == 1
    }

    pub(crate) fn require_pm1(&self) -> Result<()> {
        if self.is_pm1() {
            Ok(())
        } else {
            Err(Error::NotPlusMinusOne {
                r: self.r,
                s: self.s,
            })
        }
    }

    pub fn prefix(&self) -> &[i64] {
        &self.prefix
    }

    /// Total weight `f([n])`.
    pub fn total(&self) -> i64 {
        self.prefix[self.values.len()]
    }

    /// Value at 1-based position `pos`.
    pub fn at(&self, pos: usize) -> Result<i64> {
        if pos == 0 || pos > self.len() {
            return Err(Error::PositionOutOfRange { pos, n: self.len() });
        }
        Ok(self.values[pos - 1])
    }

    /// Weight of the window `{i, ..., i + k - 1}`.
    pub fn window_weight(&self, i: usize, k: usize) -> Result<i64> {
        if i == 0 || k == 0 || i + k - 1 > self.len() {
            return Err(Error::WindowOutOfRange {
                start: i,
                len: k,
                n: self.len(),
            });
        }
        Ok(self.prefix[i + k - 1] - self.prefix[i - 1])
    }

    /// Window weight without bounds checks; callers guarantee `1 <= i` and
    /// `i + k - 1 <= n`.
    #[inline]
    pub(crate) fn window_unchecked(&self, i: usize, k: usize) -> i64 {
        self.prefix[i + k - 1] - self.prefix[i - 1]
    }

    /// Sum of `f` over a set of 1-based positions.
    pub fn weight_of(&self, indices: &[usize]) -> Result<i64> {
        indices.iter().map(|&p| self.at(p)).sum()
    }

    /// The sequence `-f`. Over `{-r, s}` this swaps the roles of `r` and `s`.
    pub fn negated(&self) -> Self {
        let values = self.values.iter().map(|v| -v).collect();
        Self::new(values, self.s, self.r).expect("negation stays in the swapped alphabet")
    }

    /// The subsequence at the given strictly increasing 1-based positions.
    pub fn subsequence(&self, positions: &[usize]) -> Result<Self> {
        let values = positions
            .iter()
            .map(|&p| self.at(p))
            .collect::<Result<Vec<_>>>()?;
        Self::new(values, self.r, self.s)
    }

    /// Bit encoding of a ±1 sequence (bit `i` set iff position `i + 1` is
    /// `+1`). Returns `None` for other alphabets or `n > 64`.
    pub fn to_mask(&self) -> Option<u64> {
        if !self.is_pm1() || self.len() > 64 {
            return None;
        }
        Some(
            self.values
                .iter()
                .enumerate()
                .filter(|(_, &v)| v == 1)
                .fold(0u64, |m, (i, _)| m | 1 << i),
        )
    }

    /// Renders in the text sequence format: `+`/`-` symbols for ±1 sequences,
    /// whitespace-separated integers otherwise.
    pub fn to_text(&self) -> String {
        if self.is_pm1() {
            self.values
                .iter()
                .map(|&v| if v > 0 { '+' } else { '-' })
                .collect()
        } else {
            self.values
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        }
    }
}

impl fmt::Display for SignedSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Parses the line-oriented sequence format.
///
/// Lines whose first non-blank character is `#` are comments. If every
/// remaining non-whitespace character is `+` or `-` the input is read as
/// symbols (`+` is `s`, `-` is `-r`); otherwise it is read as
/// whitespace-separated signed integers, each of which must be `-r` or `s`.
pub fn parse_seq(text: &str, r: i64, s: i64) -> Result<SignedSeq> {
    if r <= 0 || s <= 0 {
        return Err(Error::NonPositiveAlphabet { r, s });
    }
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim_start().starts_with('#'))
        .map(|(i, l)| (i + 1, l))
        .collect();

    let symbolic = lines
        .iter()
        .flat_map(|(_, l)| l.chars())
        .filter(|c| !c.is_whitespace())
        .all(|c| c == '+' || c == '-');

    let mut values = Vec::new();
    if symbolic {
        for (_, line) in &lines {
            for c in line.chars().filter(|c| !c.is_whitespace()) {
                values.push(if c == '+' { s } else { -r });
            }
        }
    } else {
        for (lineno, line) in &lines {
            for token in line.split_whitespace() {
                let value: i64 = token.parse().map_err(|_| Error::InvalidToken {
                    token: token.to_string(),
                    line: *lineno,
                    neg: -r,
                    pos: s,
                })?;
                if value != -r && value != s {
                    return Err(Error::ValueOutOfAlphabet { value, r, s });
                }
                values.push(value);
            }
        }
    }
    if values.is_empty() {
        return Err(Error::EmptyInput);
    }
    SignedSeq::new(values, r, s)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BlockKind {
    /// Consecutive positions.
    Contiguous,
    /// Consecutive positions differ by at most the given bound.
    Gap(usize),
    /// Consecutive positions differ by exactly the given step.
    Arithmetic(usize),
}

/// An index set together with its weight: the certificate returned by every
/// search.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct BlockWitness {
    pub indices: Vec<usize>,
    pub kind: BlockKind,
    pub weight: i64,
}

impl BlockWitness {
    pub fn contiguous(f: &SignedSeq, start: usize, k: usize) -> Result<Self> {
        let weight = f.window_weight(start, k)?;
        Ok(Self {
            indices: (start..start + k).collect(),
            kind: BlockKind::Contiguous,
            weight,
        })
    }

    /// Builds a witness, computing its weight from `f` and checking the kind's
    /// spacing rule.
    pub fn new(f: &SignedSeq, indices: Vec<usize>, kind: BlockKind) -> Result<Self> {
        let weight = f.weight_of(&indices)?;
        let w = Self {
            indices,
            kind,
            weight,
        };
        w.validate(f)?;
        Ok(w)
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn start(&self) -> Option<usize> {
        self.indices.first().copied()
    }

    /// Checks every structural invariant against the referenced sequence.
    pub fn validate(&self, f: &SignedSeq) -> Result<()> {
        let n = f.len();
        if let Some(&p) = self.indices.iter().find(|&&p| p == 0 || p > n) {
            return Err(Error::PositionOutOfRange { pos: p, n });
        }
        for pair in self.indices.windows(2) {
            let gap = pair[1].checked_sub(pair[0]).filter(|&g| g > 0);
            let Some(gap) = gap else {
                return Err(Error::InvalidWitness(format!(
                    "indices not strictly increasing at {} -> {}",
                    pair[0], pair[1]
                )));
            };
            let ok = match self.kind {
                BlockKind::Contiguous => gap == 1,
                BlockKind::Gap(d) => gap <= d,
                BlockKind::Arithmetic(diff) => gap == diff,
            };
            if !ok {
                return Err(Error::InvalidWitness(format!(
                    "step {gap} between {} and {} violates {:?}",
                    pair[0], pair[1], self.kind
                )));
            }
        }
        if let BlockKind::Arithmetic(0) | BlockKind::Gap(0) = self.kind {
            return Err(Error::InvalidWitness("zero step bound".into()));
        }
        let actual = f.weight_of(&self.indices)?;
        if actual != self.weight {
            return Err(Error::InvalidWitness(format!(
                "stated weight {} but indices sum to {actual}",
                self.weight
            )));
        }
        Ok(())
    }
}

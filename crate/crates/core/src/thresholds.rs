//! Closed-form threshold arithmetic and the level sets `L(r, s, m)`.
//!
//! Everything here is exact integer or rational arithmetic.

use num_integer::Integer;
use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};

pub type Rational = Ratio<i64>;

/// Parameters of a bounded-weight block problem together with the derived
/// residue `s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BlockParams {
    pub k: i64,
    pub t: i64,
    pub q: i64,
    pub s_residue: i64,
}

impl BlockParams {
    pub fn new(k: i64, t: i64, q: i64) -> Result<Self> {
        let s_residue = residue_s(k, t, q)?;
        Ok(Self { k, t, q, s_residue })
    }

    pub fn threshold(&self) -> i64 {
        threshold_from(self.k, self.t, self.q, self.s_residue)
    }
}

/// Parameters of a zero-sum `(d, k)`-block problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GapParams {
    pub d: i64,
    pub k: i64,
    pub s_residue: i64,
}

impl GapParams {
    pub fn new(d: i64, k: i64) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidParams(format!(
                "gap bound d = {d} must be at least 2"
            )));
        }
        if k < 2 || k % 2 != 0 {
            return Err(Error::InvalidParams(format!(
                "k = {k} must be even and positive"
            )));
        }
        Ok(Self {
            d,
            k,
            s_residue: ((k - 2) / 2).rem_euclid(2),
        })
    }
}

fn check_block_params(k: i64, t: i64, q: i64) -> Result<()> {
    if t < 0 || q < 0 {
        return Err(Error::InvalidParams(format!(
            "t = {t} and q = {q} must be non-negative"
        )));
    }
    if t >= k {
        return Err(Error::InvalidParams(format!(
            "t = {t} must be smaller than k = {k}"
        )));
    }
    if (k - t).rem_euclid(2) != 0 {
        return Err(Error::Parity { k, t });
    }
    Ok(())
}

/// The unique `s` in `[0, t+1]` with `s ≡ q + (k - t - 2)/2 (mod t + 2)`.
pub fn residue_s(k: i64, t: i64, q: i64) -> Result<i64> {
    check_block_params(k, t, q)?;
    Ok((q + (k - t - 2) / 2).rem_euclid(t + 2))
}

fn threshold_from(k: i64, t: i64, q: i64, s: i64) -> i64 {
    // 2(t+2) * formula = k^2 + 2(q-s)k - t(t+2) + 2s(t+2)
    let denom = 2 * (t + 2);
    let numer = k * k + 2 * (q - s) * k - t * (t + 2) + 2 * s * (t + 2);
    assert_eq!(
        numer.rem_euclid(denom),
        0,
        "threshold for (k={k}, t={t}, q={q}) is not integral"
    );
    k.max(numer / denom)
}

/// Smallest `n` such that every ±1 sequence of length `n` with total weight at
/// most `q` in absolute value has a `k`-block of weight at most `t` in
/// absolute value.
pub fn block_threshold(k: i64, t: i64, q: i64) -> Result<i64> {
    let s = residue_s(k, t, q)?;
    Ok(threshold_from(k, t, q, s))
}

/// The raw quadratic term of [`block_threshold`] without the `max` with `k`.
pub fn block_threshold_formula(k: i64, t: i64, q: i64) -> Result<i64> {
    let s = residue_s(k, t, q)?;
    let denom = 2 * (t + 2);
    Ok((k * k + 2 * (q - s) * k - t * (t + 2) + 2 * s * (t + 2)) / denom)
}

/// Length from which every ±1 sequence whose total is at most
/// `(d-1)/(d+1) n` in absolute value has a zero-sum `(d, k)`-block.
///
/// For `k >= 6` this is `(d+1)(k^2 - 2sk + 4s - 4)/8 + 1`; for `k` in `{2, 4}`
/// the value is `max(k, ...)` and the bound is not claimed to be sharp.
pub fn gap_threshold(d: i64, k: i64) -> Result<i64> {
    let p = GapParams::new(d, k)?;
    let s = p.s_residue;
    let numer = (d + 1) * (k * k - 2 * s * k + 4 * s - 4);
    assert_eq!(
        numer.rem_euclid(8),
        0,
        "gap threshold for (d={d}, k={k}) is not integral"
    );
    let formula = numer / 8 + 1;
    Ok(if k < 6 { k.max(formula) } else { formula })
}

/// The level set `L(r, s, m) = { -r x + s y : x, y >= 0, x + y = m }`,
/// stored in increasing order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelSet {
    pub r: i64,
    pub s_val: i64,
    pub m: i64,
    pub values: Vec<i64>,
}

impl LevelSet {
    pub fn contains(&self, p: i64) -> bool {
        self.values.binary_search(&p).is_ok()
    }
}

fn check_positive(r: i64, s: i64, m: i64) -> Result<()> {
    if r <= 0 || s <= 0 || m <= 0 {
        return Err(Error::InvalidParams(format!(
            "r = {r}, s = {s}, m = {m} must all be positive"
        )));
    }
    Ok(())
}

pub fn level_set(r: i64, s_val: i64, m: i64) -> Result<LevelSet> {
    check_positive(r, s_val, m)?;
    let values = (0..=m).map(|y| (r + s_val) * y - r * m).collect();
    Ok(LevelSet {
        r,
        s_val,
        m,
        values,
    })
}

pub fn in_level_set(p: i64, r: i64, s_val: i64, m: i64) -> bool {
    let shifted = p + r * m;
    shifted >= 0 && shifted % (r + s_val) == 0 && shifted / (r + s_val) <= m
}

fn check_range(q: Rational, r: i64, s_val: i64, m: i64) -> Result<()> {
    check_positive(r, s_val, m)?;
    if q < Rational::from_integer(-r * m) || q > Rational::from_integer(s_val * m) {
        return Err(Error::InvalidParams(format!(
            "q = {q} outside [{}, {}]",
            -r * m,
            s_val * m
        )));
    }
    Ok(())
}

/// Largest element of `L(r, s, m)` not exceeding `q`.
pub fn lambda_floor(q: Rational, r: i64, s_val: i64, m: i64) -> Result<i64> {
    check_range(q, r, s_val, m)?;
    // y = floor((q + rm) / (r + s))
    let shifted = (q + Rational::from_integer(r * m)) / Rational::from_integer(r + s_val);
    let y = shifted.floor().to_integer();
    Ok((r + s_val) * y - r * m)
}

/// Smallest element of `L(r, s, m)` not below `q`.
pub fn lambda_ceil(q: Rational, r: i64, s_val: i64, m: i64) -> Result<i64> {
    check_range(q, r, s_val, m)?;
    let shifted = (q + Rational::from_integer(r * m)) / Rational::from_integer(r + s_val);
    let y = shifted.ceil().to_integer();
    Ok((r + s_val) * y - r * m)
}

/// Whether `0 ∈ L(r, s, m)`, decided by `(r+s)/gcd(r,s) | m`.
pub fn zero_in_level_set(r: i64, s_val: i64, m: i64) -> Result<bool> {
    check_positive(r, s_val, m)?;
    Ok(m % ((r + s_val) / r.gcd(&s_val)) == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn residues() {
        assert_eq!(residue_s(6, 0, 0).unwrap(), 0);
        assert_eq!(residue_s(6, 0, 1).unwrap(), 1);
        assert_eq!(residue_s(7, 1, 4).unwrap(), 0);
    }

    #[test]
    fn residue_errors() {
        assert_eq!(residue_s(6, 1, 0), Err(Error::Parity { k: 6, t: 1 }));
        assert!(residue_s(6, 6, 0).is_err());
        assert!(residue_s(6, 8, 0).is_err());
        assert!(residue_s(6, 0, -1).is_err());
    }

    #[test]
    fn block_thresholds() {
        assert_eq!(block_threshold(6, 0, 0).unwrap(), 9);
        assert_eq!(block_threshold(6, 0, 1).unwrap(), 10);
        assert_eq!(block_threshold(7, 1, 4).unwrap(), 17);
        // alternating-free small case where the max is attained by k
        assert_eq!(block_threshold(2, 0, 0).unwrap(), 2);
    }

    #[test]
    fn block_threshold_matches_closed_forms() {
        // t = 0: k^2/4 + (q-s)k/2 + s ; t = 1: k^2/6 + (q-s)k/3 + s - 1/2
        for k in (2..=20).step_by(2) {
            for q in 0..6 {
                let s = residue_s(k, 0, q).unwrap();
                let four_n = k * k + 2 * (q - s) * k + 4 * s;
                assert_eq!(four_n % 4, 0);
                assert_eq!(block_threshold(k, 0, q).unwrap(), k.max(four_n / 4));
            }
        }
        for k in (3..=21).step_by(2) {
            for q in 0..6 {
                let s = residue_s(k, 1, q).unwrap();
                let six_n = k * k + 2 * (q - s) * k + 6 * s - 3;
                assert_eq!(six_n % 6, 0);
                assert_eq!(block_threshold(k, 1, q).unwrap(), k.max(six_n / 6));
            }
        }
    }

    #[test]
    fn gap_thresholds() {
        assert_eq!(gap_threshold(2, 6).unwrap(), 13);
        assert_eq!(gap_threshold(2, 8).unwrap(), 19);
        assert_eq!(gap_threshold(3, 6).unwrap(), 17);
        assert_eq!(gap_threshold(2, 2).unwrap(), 2);
        assert_eq!(gap_threshold(2, 4).unwrap(), 4);
        assert_eq!(gap_threshold(5, 4).unwrap(), 7);
        assert!(gap_threshold(2, 7).is_err());
        assert!(gap_threshold(1, 6).is_err());
    }

    #[test]
    fn level_sets() {
        assert_eq!(level_set(1, 1, 4).unwrap().values, vec![-4, -2, 0, 2, 4]);
        assert_eq!(
            level_set(2, 3, 5).unwrap().values,
            vec![-10, -5, 0, 5, 10, 15]
        );
        assert_eq!(level_set(2, 3, 4).unwrap().values, vec![-8, -3, 2, 7, 12]);
        assert!(level_set(0, 1, 1).is_err());
    }

    #[test]
    fn floors_and_ceilings() {
        assert_eq!(lambda_floor(q(1, 1), 1, 1, 4).unwrap(), 0);
        assert_eq!(lambda_ceil(q(1, 1), 1, 1, 4).unwrap(), 2);
        assert_eq!(lambda_floor(q(0, 1), 2, 3, 5).unwrap(), 0);
        assert_eq!(lambda_ceil(q(0, 1), 2, 3, 5).unwrap(), 0);
        assert_eq!(lambda_floor(q(1, 1), 2, 3, 4).unwrap(), -3);
        assert_eq!(lambda_ceil(q(1, 1), 2, 3, 4).unwrap(), 2);
        assert_eq!(lambda_floor(q(-8, 1), 2, 3, 4).unwrap(), -8);
        assert_eq!(lambda_ceil(q(12, 1), 2, 3, 4).unwrap(), 12);
        assert_eq!(lambda_floor(q(5, 2), 1, 1, 3).unwrap(), 1);
        assert!(lambda_floor(q(-9, 1), 2, 3, 4).is_err());
        assert!(lambda_ceil(q(25, 2), 2, 3, 4).is_err());
    }

    #[test]
    fn zero_membership() {
        assert!(zero_in_level_set(1, 1, 4).unwrap());
        assert!(zero_in_level_set(2, 3, 5).unwrap());
        assert!(!zero_in_level_set(2, 3, 4).unwrap());
        assert!(zero_in_level_set(2, 4, 3).unwrap());
    }
}

//! Liouville and Legendre sequences and their zero-sum blocks.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::search::zs_block_starts;
use crate::seq::SignedSeq;

/// `λ(1..=limit)` with running sums.
#[derive(Debug, Clone)]
pub struct LiouvilleTable {
    limit: usize,
    values: Vec<i8>,
    partials: Vec<i64>,
}

impl LiouvilleTable {
    pub fn limit(&self) -> usize {
        self.limit
    }

    /// `λ(n)` for `1 <= n <= limit`.
    pub fn get(&self, n: usize) -> i8 {
        self.values[n - 1]
    }

    pub fn values(&self) -> &[i8] {
        &self.values
    }

    /// `Σ_{i <= n} λ(i)`.
    pub fn partial_sum(&self, n: usize) -> i64 {
        self.partials[n]
    }

    pub fn to_seq(&self) -> SignedSeq {
        let v: Vec<i64> = self.values.iter().map(|&x| x as i64).collect();
        SignedSeq::pm1(&v)
    }

    /// `λ(d), λ(2d), ...` up to the limit.
    pub fn dilated(&self, d: usize) -> SignedSeq {
        let v: Vec<i64> = (1..=self.limit / d)
            .map(|j| self.get(j * d) as i64)
            .collect();
        SignedSeq::pm1(&v)
    }
}

/// Smallest prime factor for every `n <= limit` (0 and 1 map to 0).
fn smallest_prime_factors(limit: usize) -> Vec<u32> {
    let mut spf = vec![0u32; limit + 1];
    let mut primes: Vec<u32> = Vec::new();
    for i in 2..=limit {
        if spf[i] == 0 {
            spf[i] = i as u32;
            primes.push(i as u32);
        }
        for &p in &primes {
            let j = i * p as usize;
            if p > spf[i] || j > limit {
                break;
            }
            spf[j] = p;
        }
    }
    spf
}

/// Linear sieve computing `λ(n) = (-1)^Ω(n)`.
pub fn liouville_sieve(limit: usize) -> Result<LiouvilleTable> {
    if limit == 0 {
        return Err(Error::InvalidParams("limit must be at least 1".into()));
    }
    let spf = smallest_prime_factors(limit);
    let mut values = vec![1i8; limit];
    for n in 2..=limit {
        // Ω(n) = Ω(n / p) + 1
        values[n - 1] = -values[n / spf[n] as usize - 1];
    }
    let mut partials = Vec::with_capacity(limit + 1);
    partials.push(0);
    let mut acc = 0i64;
    for &v in &values {
        acc += v as i64;
        partials.push(acc);
    }
    Ok(LiouvilleTable {
        limit,
        values,
        partials,
    })
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Primes up to `limit` by a segmented sieve of Eratosthenes.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let root = (limit as f64).sqrt() as u64 + 1;
    let mut small = vec![true; root as usize + 1];
    let mut base = Vec::new();
    for i in 2..=root {
        if small[i as usize] {
            base.push(i);
            let mut j = i * i;
            while j <= root {
                small[j as usize] = false;
                j += i;
            }
        }
    }

    const SEGMENT: u64 = 1 << 16;
    let mut primes = Vec::new();
    let mut low = 2;
    while low <= limit {
        let high = (low + SEGMENT - 1).min(limit);
        let mut mark = vec![true; (high - low + 1) as usize];
        for &p in &base {
            if p * p > high {
                break;
            }
            let mut j = (low.div_ceil(p) * p).max(p * p);
            while j <= high {
                mark[(j - low) as usize] = false;
                j += p;
            }
        }
        primes.extend(
            mark.iter()
                .enumerate()
                .filter(|(_, &m)| m)
                .map(|(i, _)| low + i as u64),
        );
        low = high + 1;
    }
    primes
}

fn mod_pow(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut acc = 1u128;
    let m = modulus as u128;
    let mut b = base as u128 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    base = acc as u64;
    base
}

/// Legendre symbol `(a / p)` by Euler's criterion.
pub fn legendre(a: i64, p: u64) -> Result<i8> {
    if p == 2 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    let a = a.rem_euclid(p as i64) as u64;
    if a == 0 {
        return Ok(0);
    }
    Ok(if mod_pow(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    })
}

/// Legendre symbols `(p_j / p)` over the primes `p_j <= limit`, skipping
/// `p` itself so every entry is ±1.
#[derive(Debug, Clone)]
pub struct LegendreSeq {
    pub p: u64,
    pub primes: Vec<u64>,
    pub values: Vec<i8>,
}

impl LegendreSeq {
    pub fn new(p: u64, limit: u64) -> Result<Self> {
        legendre(1, p)?;
        let primes: Vec<u64> = primes_up_to(limit)
            .into_iter()
            .filter(|&q| q != p)
            .collect();
        let values = primes
            .iter()
            .map(|&q| legendre(q as i64, p))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { p, primes, values })
    }

    pub fn to_seq(&self) -> SignedSeq {
        let v: Vec<i64> = self.values.iter().map(|&x| x as i64).collect();
        SignedSeq::pm1(&v)
    }
}

/// Counts and first start positions of zero-sum windows in a ±1 sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZsReport {
    pub count: usize,
    pub first_starts: Vec<usize>,
    pub partial_sum: i64,
}

const FIRST_STARTS: usize = 10;

fn report(f: &SignedSeq, k: usize) -> Result<ZsReport> {
    if k == 0 || !k.is_multiple_of(2) {
        return Err(Error::InvalidParams(format!(
            "k = {k} must be even and positive"
        )));
    }
    let starts = zs_block_starts(f, k, usize::MAX)?;
    Ok(ZsReport {
        count: starts.len(),
        first_starts: starts.into_iter().take(FIRST_STARTS).collect(),
        partial_sum: f.total(),
    })
}

/// Zero-sum `k`-blocks of `λ(1..=limit)`.
pub fn liouville_zs_blocks(limit: usize, k: usize) -> Result<ZsReport> {
    if k > limit {
        return Err(Error::BlockTooLong { k, n: limit });
    }
    report(&liouville_sieve(limit)?.to_seq(), k)
}

/// Zero-sum `k`-blocks of `λ(d), λ(2d), ...` within the limit; a start `j`
/// stands for the progression `jd, (j+1)d, ..., (j+k-1)d`.
pub fn liouville_ap_zs(limit: usize, k: usize, d: usize) -> Result<ZsReport> {
    if d == 0 {
        return Err(Error::InvalidParams("d must be positive".into()));
    }
    let table = liouville_sieve(limit)?;
    let seq = table.dilated(d);
    if k > seq.len() {
        return Err(Error::BlockTooLong { k, n: seq.len() });
    }
    report(&seq, k)
}

/// Zero-sum `k`-blocks of consecutive primes under `(· / p)`; starts index
/// the prime list with `p` removed.
pub fn legendre_zs_blocks(p: u64, limit: u64, k: usize) -> Result<ZsReport> {
    if k == 0 || !k.is_multiple_of(2) {
        return Err(Error::InvalidParams(format!(
            "k = {k} must be even and positive"
        )));
    }
    let seq = LegendreSeq::new(p, limit)?;
    report(&seq.to_seq(), k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn liouville_values() {
        let t = liouville_sieve(20).unwrap();
        assert_eq!(t.get(1), 1);
        assert_eq!(t.get(2), -1);
        assert_eq!(t.get(4), 1);
        assert_eq!(t.get(12), -1);
        for p in [2, 3, 5, 7, 11, 13, 17, 19] {
            assert_eq!(t.get(p), -1);
        }
        assert_eq!(t.partial_sum(10), 0);
        assert!(liouville_sieve(0).is_err());
    }

    #[test]
    fn liouville_multiplicative() {
        let t = liouville_sieve(2000).unwrap();
        for a in 1..45 {
            for b in 1..45 {
                assert_eq!(t.get(a * b), t.get(a) * t.get(b));
            }
        }
    }

    #[test]
    fn legendre_values() {
        assert_eq!(legendre(1, 3).unwrap(), 1);
        assert_eq!(legendre(2, 3).unwrap(), -1);
        assert_eq!(legendre(3, 3).unwrap(), 0);
        assert_eq!(legendre(2, 7).unwrap(), 1);
        assert_eq!(legendre(-1, 5).unwrap(), 1);
        assert_eq!(legendre(-1, 7).unwrap(), -1);
        assert_eq!(legendre(1, 2), Err(Error::NotOddPrime(2)));
        assert_eq!(legendre(1, 9), Err(Error::NotOddPrime(9)));
    }

    #[test]
    fn segmented_sieve() {
        assert_eq!(primes_up_to(30), vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(primes_up_to(1).is_empty());
        let big = primes_up_to(200_000);
        assert_eq!(big.len(), 17984);
        assert!(big.iter().all(|&p| is_prime(p)));
    }

    #[test]
    fn liouville_blocks_small() {
        let r = liouville_zs_blocks(10, 2).unwrap();
        assert_eq!(r.first_starts, vec![1, 3, 4, 5, 6, 8]);
        let r = liouville_zs_blocks(10, 4).unwrap();
        assert_eq!(r.first_starts[0], 1);
        assert!(liouville_zs_blocks(10, 3).is_err());
    }

    #[test]
    fn liouville_dilation() {
        let r = liouville_ap_zs(20, 2, 2).unwrap();
        assert_eq!(r.first_starts[0], 1);
        let t = liouville_sieve(300).unwrap();
        let d3 = t.dilated(3);
        for j in 1..=100 {
            assert_eq!(d3.values()[j - 1], (t.get(j) * t.get(3)) as i64);
        }
        assert_eq!(
            liouville_ap_zs(100, 4, 1).unwrap(),
            liouville_zs_blocks(100, 4).unwrap()
        );
        assert!(liouville_ap_zs(100, 4, 0).is_err());
    }

    #[test]
    fn legendre_blocks_small() {
        let s = LegendreSeq::new(3, 11).unwrap();
        assert_eq!(s.primes, vec![2, 5, 7, 11]);
        assert_eq!(s.values, vec![-1, -1, 1, -1]);
        let r = legendre_zs_blocks(3, 11, 2).unwrap();
        assert_eq!(r.first_starts, vec![2, 3]);
        // mod 5, 2 and 3 are non-residues while 11 ≡ 1 is a residue
        let r = legendre_zs_blocks(5, 30, 2).unwrap();
        let s = LegendreSeq::new(5, 30).unwrap();
        assert_eq!(s.primes[..4], [2, 3, 7, 11]);
        assert_eq!(r.first_starts[0], 3);
        assert!(legendre_zs_blocks(3, 100, 3).is_err());
        assert!(legendre_zs_blocks(4, 100, 2).is_err());
    }
}

//! Decomposition of a layered instance into one-cell-per-layer paths of
//! bounded weight.
//!
//! The instance has `m` layers of `n` cells, each valued `-r` or `s`. Since
//! consecutive layers are completely joined, a path is just a choice of one
//! cell per layer; it is stored as a vector of 0-based cell indices.

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::seq::{BlockKind, BlockWitness, SignedSeq};
use crate::thresholds::{in_level_set, lambda_ceil, lambda_floor, zero_in_level_set, Rational};

pub type Path = Vec<usize>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayeredInstance {
    n: usize,
    m: usize,
    r: i64,
    s: i64,
    cells: Vec<Vec<i64>>,
}

impl LayeredInstance {
    /// Builds an instance from `n * m` values listed layer by layer.
    pub fn new(n: usize, m: usize, r: i64, s: i64, values: &[i64]) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(Error::InvalidParams("n and m must be positive".into()));
        }
        if r <= 0 || s <= 0 {
            return Err(Error::NonPositiveAlphabet { r, s });
        }
        if values.len() != n * m {
            return Err(Error::LengthMismatch {
                expected: n * m,
                actual: values.len(),
            });
        }
        if let Some(&value) = values.iter().find(|&&v| v != -r && v != s) {
            return Err(Error::ValueOutOfAlphabet { value, r, s });
        }
        Ok(Self {
            n,
            m,
            r,
            s,
            cells: values.chunks(n).map(<[i64]>::to_vec).collect(),
        })
    }

    /// Reads a sequence of length `n * m` with layer `i` holding positions
    /// `(i-1)n + 1 ..= in`.
    pub fn from_seq(f: &SignedSeq, n: usize, m: usize) -> Result<Self> {
        Self::new(n, m, f.r(), f.s_val(), f.values())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn r(&self) -> i64 {
        self.r
    }

    pub fn s_val(&self) -> i64 {
        self.s
    }

    pub fn cell(&self, layer: usize, idx: usize) -> i64 {
        self.cells[layer][idx]
    }

    pub fn total(&self) -> i64 {
        self.cells.iter().flatten().sum()
    }

    /// Average path weight `total / n` as an exact rational.
    pub fn mean(&self) -> Rational {
        Rational::new(self.total(), self.n as i64)
    }

    /// The band `[λ, Λ]` around the mean path weight.
    pub fn band(&self) -> (i64, i64) {
        let q = self.mean();
        let m = self.m as i64;
        (
            lambda_floor(q, self.r, self.s, m).expect("mean lies in [-rm, sm]"),
            lambda_ceil(q, self.r, self.s, m).expect("mean lies in [-rm, sm]"),
        )
    }

    fn check_path(&self, path: &[usize]) -> Result<()> {
        if path.len() != self.m || path.iter().any(|&c| c >= self.n) {
            return Err(Error::InvalidParams(format!(
                "{path:?} is not a transversal of {} layers with {} cells",
                self.m, self.n
            )));
        }
        Ok(())
    }

    pub fn path_weight(&self, path: &[usize]) -> i64 {
        path.iter()
            .enumerate()
            .map(|(l, &c)| self.cells[l][c])
            .sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PathDecomposition {
    pub paths: Vec<Path>,
    pub weights: Vec<i64>,
    pub lambda: i64,
    #[serde(rename = "Lambda")]
    pub upper: i64,
}

impl PathDecomposition {
    /// Checks that the paths partition the cells and that the stated weights
    /// are the path sums.
    pub fn validate(&self, inst: &LayeredInstance) -> Result<()> {
        if self.paths.len() != inst.n || self.weights.len() != inst.n {
            return Err(Error::InvalidParams(format!(
                "expected {} paths, got {}",
                inst.n,
                self.paths.len()
            )));
        }
        for layer in 0..inst.m {
            let mut used = vec![false; inst.n];
            for p in &self.paths {
                inst.check_path(p)?;
                if std::mem::replace(&mut used[p[layer]], true) {
                    return Err(Error::InvalidParams(format!(
                        "cell {} of layer {layer} used twice",
                        p[layer]
                    )));
                }
            }
        }
        for (p, &w) in self.paths.iter().zip(&self.weights) {
            if inst.path_weight(p) != w {
                return Err(Error::InvalidParams(format!(
                    "stated weight {w} for {p:?} is wrong"
                )));
            }
        }
        Ok(())
    }

    pub fn within_band(&self) -> bool {
        self.weights
            .iter()
            .all(|&w| self.lambda <= w && w <= self.upper)
    }
}

/// Morphs `from` into `to` one layer at a time and returns the first
/// intermediate path of weight exactly `target`.
///
/// Consecutive intermediates differ in one layer, so their weights differ by
/// 0 or `r + s`; every element of `L(r, s, m)` between the two end weights is
/// therefore hit.
pub fn path_interpolate(
    inst: &LayeredInstance,
    from: &[usize],
    to: &[usize],
    target: i64,
) -> Result<Path> {
    inst.check_path(from)?;
    inst.check_path(to)?;
    if !in_level_set(target, inst.r, inst.s, inst.m as i64) {
        return Err(Error::InvalidParams(format!(
            "{target} is not an achievable path weight"
        )));
    }
    let (a, b) = (inst.path_weight(from), inst.path_weight(to));
    if target < a.min(b) || target > a.max(b) {
        return Err(Error::InvalidParams(format!(
            "{target} is outside [{}, {}]",
            a.min(b),
            a.max(b)
        )));
    }
    let mut cur = from.to_vec();
    if a == target {
        return Ok(cur);
    }
    for layer in 0..inst.m {
        cur[layer] = to[layer];
        if inst.path_weight(&cur) == target {
            return Ok(cur);
        }
    }
    unreachable!("steps of 0 or r+s cannot skip a level-set value")
}

/// Decomposes the instance into `n` paths whose weights all lie in
/// `[λ(q), Λ(q)]`, `q = total / n`.
///
/// Starts from the identity transversals. While some path is outside the
/// band, interpolates between the heaviest and the lightest path to a path of
/// weight `λ` (when `q - λ <= Λ - q`) or `Λ`, retires it, and replaces the
/// two parents by the leftover cells, which again form a transversal.
pub fn decompose(inst: &LayeredInstance) -> PathDecomposition {
    let (lambda, upper) = inst.band();
    let m = inst.m as i64;
    let mut active: Vec<Path> = (0..inst.n).map(|j| vec![j; inst.m]).collect();
    let mut retired: Vec<Path> = Vec::with_capacity(inst.n);

    while !active.is_empty() {
        let weights: Vec<i64> = active.iter().map(|p| inst.path_weight(p)).collect();
        let q = Rational::new(weights.iter().sum(), active.len() as i64);
        let lo = lambda_floor(q, inst.r, inst.s, m).expect("mean in range");
        let hi = lambda_ceil(q, inst.r, inst.s, m).expect("mean in range");
        debug_assert!(lambda <= lo && hi <= upper);
        if weights.iter().all(|&w| lo <= w && w <= hi) {
            retired.append(&mut active);
            break;
        }
        let heavy = (0..active.len())
            .max_by_key(|&i| (weights[i], std::cmp::Reverse(i)))
            .unwrap();
        let light = (0..active.len()).min_by_key(|&i| (weights[i], i)).unwrap();
        let target = if q - Rational::from(lo) <= Rational::from(hi) - q {
            lo
        } else {
            hi
        };
        let star = path_interpolate(inst, &active[light], &active[heavy], target)
            .expect("heaviest and lightest straddle the band");
        let leftover: Path = (0..inst.m)
            .map(|l| {
                let (a, b) = (active[light][l], active[heavy][l]);
                if star[l] == a {
                    b
                } else {
                    a
                }
            })
            .collect();
        let (first, second) = (heavy.max(light), heavy.min(light));
        active.swap_remove(first);
        active.swap_remove(second);
        active.push(leftover);
        retired.push(star);
    }

    retired.sort();
    let weights = retired.iter().map(|p| inst.path_weight(p)).collect();
    PathDecomposition {
        paths: retired,
        weights,
        lambda,
        upper,
    }
}

/// Zero-sum specialization: requires `(r+s)/gcd(r,s) | m` and total weight 0;
/// every returned path then weighs exactly 0.
pub fn zs_decompose(inst: &LayeredInstance) -> Result<PathDecomposition> {
    if !zero_in_level_set(inst.r, inst.s, inst.m as i64)? {
        return Err(Error::InvalidParams(format!(
            "(r+s)/gcd(r,s) = {} does not divide m = {}",
            (inst.r + inst.s) / inst.r.gcd(&inst.s),
            inst.m
        )));
    }
    if inst.total() != 0 {
        return Err(Error::InvalidParams(format!(
            "total weight is {}, not 0",
            inst.total()
        )));
    }
    Ok(decompose(inst))
}

/// Number of `s`-valued and `-r`-valued cells on every zero-sum path of
/// length `m`.
pub fn zs_value_counts(r: i64, s: i64, m: i64) -> (i64, i64) {
    let g = r.gcd(&s);
    let q = g * m / (r + s);
    (q * r / g, q * s / g)
}

/// The two admissible path weights for a ±1 instance: with `k = ceil(q)`,
/// `{k-2, k}` if `m ≡ k (mod 2)` and `{k-1, k+1}` otherwise.
pub fn pm1_band(m: usize, total: i64, n: usize) -> (i64, i64) {
    let k = Rational::new(total, n as i64).ceil().to_integer();
    if (m as i64 - k).rem_euclid(2) == 0 {
        (k - 2, k)
    } else {
        (k - 1, k + 1)
    }
}

/// Splits `[nm]` into `n` index sets, each meeting every interval
/// `I_i = {(i-1)n+1, ..., in}` exactly once, with weights in `[λ, Λ]`.
/// Each set is a `(2n-1)`-bounded gap sequence.
pub fn decompose_interval(f: &SignedSeq, n: usize, m: usize) -> Result<Vec<BlockWitness>> {
    let inst = LayeredInstance::from_seq(f, n, m)?;
    let dec = decompose(&inst);
    dec.paths
        .iter()
        .map(|p| {
            let indices = p.iter().enumerate().map(|(l, &c)| l * n + c + 1).collect();
            BlockWitness::new(f, indices, BlockKind::Gap(2 * n - 1))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seq::parse_seq;

    #[test]
    fn instance_validation() {
        assert!(LayeredInstance::new(2, 2, 1, 1, &[1, -1, 1]).is_err());
        assert!(LayeredInstance::new(2, 2, 1, 1, &[1, -1, 1, 2]).is_err());
        assert!(LayeredInstance::new(0, 2, 1, 1, &[]).is_err());
    }

    #[test]
    fn interpolate_pm1() {
        let inst = LayeredInstance::new(2, 2, 1, 1, &[-1, 1, -1, 1]).unwrap();
        let p = path_interpolate(&inst, &[0, 0], &[1, 1], 0).unwrap();
        assert_eq!(p, vec![1, 0]);
        assert_eq!(
            path_interpolate(&inst, &[0, 0], &[1, 1], -2).unwrap(),
            vec![0, 0]
        );
        assert!(path_interpolate(&inst, &[0, 0], &[1, 1], 1).is_err());
        assert!(path_interpolate(&inst, &[0, 0], &[0, 0], 2).is_err());
        assert!(path_interpolate(&inst, &[0, 2], &[1, 1], 0).is_err());
    }

    #[test]
    fn interpolate_r2_s3() {
        let values: Vec<i64> = (0..4).flat_map(|_| [-2, 3]).collect();
        let inst = LayeredInstance::new(2, 4, 2, 3, &values).unwrap();
        let low = vec![0; 4];
        let high = vec![1; 4];
        assert_eq!(inst.path_weight(&low), -8);
        assert_eq!(inst.path_weight(&high), 12);
        let p = path_interpolate(&inst, &low, &high, 2).unwrap();
        assert_eq!(p, vec![1, 1, 0, 0]);
    }

    #[test]
    fn decompose_small_zero_sum() {
        let inst = LayeredInstance::new(2, 2, 1, 1, &[1, -1, 1, -1]).unwrap();
        let dec = decompose(&inst);
        dec.validate(&inst).unwrap();
        assert_eq!(dec.weights, vec![0, 0]);
        assert_eq!((dec.lambda, dec.upper), (0, 0));
    }

    #[test]
    fn decompose_single_path() {
        let inst = LayeredInstance::new(1, 3, 2, 3, &[3, -2, 3]).unwrap();
        let dec = decompose(&inst);
        assert_eq!(dec.paths, vec![vec![0, 0, 0]]);
        assert_eq!(dec.weights, vec![4]);
    }

    #[test]
    fn decompose_odd_mean() {
        // layers (+,+), (+,-), (+,-): total 2, q = 1 ∈ L(1,1,3)
        let inst = LayeredInstance::new(2, 3, 1, 1, &[1, 1, 1, -1, 1, -1]).unwrap();
        let dec = decompose(&inst);
        dec.validate(&inst).unwrap();
        assert_eq!(dec.weights, vec![1, 1]);
        assert_eq!(pm1_band(3, 2, 2), (-1, 1));
    }

    #[test]
    fn pm1_bands() {
        assert_eq!(pm1_band(4, 2, 2), (0, 2));
        assert_eq!(pm1_band(3, 2, 2), (-1, 1));
        assert_eq!(pm1_band(4, 3, 2), (0, 2));
        assert_eq!(pm1_band(3, -3, 2), (-3, -1));
    }

    #[test]
    fn zero_sum_specialization() {
        let inst = LayeredInstance::new(3, 2, 1, 1, &[1, 1, 1, -1, -1, -1]).unwrap();
        let dec = zs_decompose(&inst).unwrap();
        assert_eq!(dec.weights, vec![0, 0, 0]);
        let odd = LayeredInstance::new(2, 3, 1, 1, &[1, -1, 1, -1, 1, -1]).unwrap();
        assert!(zs_decompose(&odd).is_err());
        let nonzero = LayeredInstance::new(2, 2, 1, 1, &[1, 1, 1, -1]).unwrap();
        assert!(zs_decompose(&nonzero).is_err());
        let inst = LayeredInstance::new(2, 3, 1, 2, &[2, -1, -1, 2, -1, -1]).unwrap();
        let dec = zs_decompose(&inst).unwrap();
        assert_eq!(dec.weights, vec![0, 0]);
        assert_eq!(zs_value_counts(1, 2, 3), (1, 2));
        assert_eq!(zs_value_counts(2, 3, 5), (2, 3));
        assert_eq!(zs_value_counts(2, 4, 3), (1, 2));
    }

    #[test]
    fn interval_decomposition() {
        let f = parse_seq("+-+-", 1, 1).unwrap();
        let blocks = decompose_interval(&f, 2, 2).unwrap();
        assert_eq!(blocks.len(), 2);
        for b in &blocks {
            assert_eq!(b.weight, 0);
            assert_eq!(b.kind, BlockKind::Gap(3));
        }
        let single = decompose_interval(&f, 1, 4).unwrap();
        assert_eq!(single[0].indices, vec![1, 2, 3, 4]);
        assert!(decompose_interval(&f, 3, 2).is_err());
    }

    #[test]
    fn interval_decomposition_r2_s3() {
        let f = parse_seq("3 3 -2 -2 3 -2 -2 3 -2 -2", 2, 3).unwrap();
        assert_eq!(f.total(), 0);
        let blocks = decompose_interval(&f, 2, 5).unwrap();
        assert!(blocks.iter().all(|b| b.weight == 0));
    }
}

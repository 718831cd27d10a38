//! Exact counting of dc2-balanced codewords and the exact full-set
//! autocorrelation.
//!
//! Everything here is big-integer arithmetic. The central object is the
//! coefficient table of the bivariate generating function
//!
//! ```text
//! P(z, y) = prod_{k=1..n} (1 + z y^k)
//! ```
//!
//! whose coefficient at `z^c y^p` counts the length-`n` words with weight
//! `c` and index sum `p`. Pair counts `N(x_a = x_b = 1)` are coefficients of
//! `P / ((1 + z y^a)(1 + z y^b))`, obtained by exact long division.

use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{Autocorrelation, Codeword, Method};

/// Largest length accepted by [`enumerate_s2`].
pub const ENUMERATION_MAX_N: usize = 28;

/// Largest length the exact autocorrelation accepts without expensive mode.
pub const DEFAULT_EXACT_MAX_N: usize = 128;

/// Default memory budget for a coefficient table, in bytes.
pub const DEFAULT_MEMORY_BUDGET: u64 = 4 << 30;

/// Environment variable read by [`OracleOptions::from_env`].
pub const MEMORY_BUDGET_ENV: &str = "DC2_ORACLE_MEMORY_BUDGET";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleOptions {
    /// Allow lengths above [`DEFAULT_EXACT_MAX_N`].
    pub expensive: bool,
    /// Upper bound on the estimated table footprint in bytes.
    pub memory_budget: u64,
}

impl Default for OracleOptions {
    fn default() -> Self {
        Self {
            expensive: false,
            memory_budget: DEFAULT_MEMORY_BUDGET,
        }
    }
}

impl OracleOptions {
    pub fn expensive() -> Self {
        Self {
            expensive: true,
            ..Self::default()
        }
    }

    /// Default options with the budget taken from [`MEMORY_BUDGET_ENV`] when set.
    pub fn from_env() -> Result<Self> {
        let mut options = Self::default();
        if let Ok(raw) = std::env::var(MEMORY_BUDGET_ENV) {
            options.memory_budget = raw.trim().parse().map_err(|_| {
                Error::Usage(format!(
                    "{MEMORY_BUDGET_ENV} must be a byte count, got {raw:?}"
                ))
            })?;
        }
        Ok(options)
    }
}

/// All dc2-balanced words of length `n` in lexicographic order.
pub fn enumerate_s2(n: usize) -> Result<Vec<Codeword>> {
    if n == 0 || !n.is_multiple_of(4) {
        return Err(Error::InvalidLength {
            n,
            reason: "dc2-balanced codes need a length that is a positive multiple of 4",
        });
    }
    if n > ENUMERATION_MAX_N {
        return Err(Error::InvalidLength {
            n,
            reason: "enumeration is limited to n <= 28",
        });
    }

    let mut out = Vec::new();
    let mut bits = vec![0u8; n];
    enumerate_from(1, n, n / 2, n * (n + 1) / 4, &mut bits, &mut out);
    Ok(out)
}

// Depth-first over positions `pos..=n`, zero branch first, pruning any branch
// whose remaining weight cannot reach the remaining index sum.
fn enumerate_from(
    pos: usize,
    n: usize,
    ones_left: usize,
    sum_left: usize,
    bits: &mut [u8],
    out: &mut Vec<Codeword>,
) {
    if pos > n {
        if ones_left == 0 && sum_left == 0 {
            out.push(Codeword::from_bits(bits.to_vec()).expect("bits are binary"));
        }
        return;
    }
    let free = n - pos + 1;
    if ones_left > free {
        return;
    }
    let min_sum = ones_left * pos + ones_left * ones_left.saturating_sub(1) / 2;
    let max_sum = ones_left * n - ones_left * ones_left.saturating_sub(1) / 2;
    if sum_left < min_sum || sum_left > max_sum {
        return;
    }

    bits[pos - 1] = 0;
    enumerate_from(pos + 1, n, ones_left, sum_left, bits, out);
    if ones_left > 0 && sum_left >= pos {
        bits[pos - 1] = 1;
        enumerate_from(pos + 1, n, ones_left - 1, sum_left - pos, bits, out);
        bits[pos - 1] = 0;
    }
}

/// Dense table of word counts by weight `c` and index sum `p`.
///
/// The table may be truncated to `c <= max_weight`, `p <= max_index_sum`;
/// truncation never changes the stored coefficients because every factor
/// only raises both degrees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    n: usize,
    max_weight: usize,
    max_index_sum: usize,
    coeffs: Vec<BigUint>,
}

fn estimated_bytes(n: usize, rows: usize, cols: usize) -> u64 {
    let limbs = n / 64 + 1;
    let per_entry = std::mem::size_of::<BigUint>() + 8 * limbs;
    rows as u64 * cols as u64 * per_entry as u64
}

impl CountTable {
    /// Full table for length `n`: `c in 0..=n`, `p in 0..=n(n+1)/2`.
    pub fn build(n: usize) -> Result<Self> {
        Self::build_with_budget(n, DEFAULT_MEMORY_BUDGET)
    }

    pub fn build_with_budget(n: usize, budget: u64) -> Result<Self> {
        Self::truncated(n, n, n * (n + 1) / 2, budget)
    }

    /// Table restricted to `c <= max_weight` and `p <= max_index_sum`.
    pub fn truncated(
        n: usize,
        max_weight: usize,
        max_index_sum: usize,
        budget: u64,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidLength {
                n,
                reason: "count table needs n >= 1",
            });
        }
        Self::from_positions(n, 1..=n, max_weight, max_index_sum, budget)
    }

    /// Product of `(1 + z y^k)` over the given positions only.
    ///
    /// Positions left out are pinned to zero, so the result still counts
    /// length-`n` words.
    pub fn from_positions(
        n: usize,
        positions: impl IntoIterator<Item = usize>,
        max_weight: usize,
        max_index_sum: usize,
        budget: u64,
    ) -> Result<Self> {
        let rows = max_weight + 1;
        let cols = max_index_sum + 1;
        let required = estimated_bytes(n, rows, cols);
        if required > budget {
            return Err(Error::MemoryBudget {
                n,
                required,
                budget,
            });
        }

        let mut table = Self {
            n,
            max_weight,
            max_index_sum,
            coeffs: vec![BigUint::zero(); rows * cols],
        };
        table.coeffs[0] = BigUint::from(1u8);

        let mut used = 0usize;
        let mut reach = 0usize;
        for k in positions {
            debug_assert!((1..=n).contains(&k));
            used += 1;
            reach += k;
            let top_c = used.min(max_weight);
            let top_p = reach.min(max_index_sum);
            if k > top_p {
                continue;
            }
            // Descending c so row c-1 still holds the previous product.
            for c in (1..=top_c).rev() {
                let (lower, upper) = table.coeffs.split_at_mut(c * cols);
                let prev = &lower[(c - 1) * cols..];
                let row = &mut upper[..cols];
                for p in k..=top_p {
                    let src = &prev[p - k];
                    if !src.is_zero() {
                        row[p] += src;
                    }
                }
            }
        }
        Ok(table)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn max_weight(&self) -> usize {
        self.max_weight
    }

    pub fn max_index_sum(&self) -> usize {
        self.max_index_sum
    }

    /// Count of words with weight `c` and index sum `p`; zero outside the table.
    pub fn get(&self, c: usize, p: usize) -> &BigUint {
        if c > self.max_weight || p > self.max_index_sum {
            return zero();
        }
        &self.coeffs[c * (self.max_index_sum + 1) + p]
    }

    pub fn total(&self) -> BigUint {
        self.coeffs.iter().sum()
    }

    /// Exact long division by `(1 + z y^k)`.
    ///
    /// The quotient counts the words of the dividend that have `x_k = 0`.
    pub fn divide_by_factor(&self, k: usize) -> Result<Self> {
        if k == 0 || k > self.n {
            return Err(Error::InvalidPositions {
                n: self.n,
                i0: k,
                i1: k,
            });
        }
        let cols = self.max_index_sum + 1;
        let mut quotient = self.clone();
        for c in 1..=self.max_weight {
            let (lower, upper) = quotient.coeffs.split_at_mut(c * cols);
            let prev = &lower[(c - 1) * cols..];
            let row = &mut upper[..cols];
            for p in k..cols {
                let q = &prev[p - k];
                if q.is_zero() {
                    continue;
                }
                if *q > row[p] {
                    // Only happens when the factor is not part of the product.
                    return Err(Error::InvalidPositions {
                        n: self.n,
                        i0: k,
                        i1: k,
                    });
                }
                row[p] -= q;
            }
        }
        Ok(quotient)
    }
}

fn zero() -> &'static BigUint {
    static ZERO: OnceLock<BigUint> = OnceLock::new();
    ZERO.get_or_init(BigUint::zero)
}

pub fn build_count_table(n: usize) -> Result<CountTable> {
    CountTable::build(n)
}

/// Weight and index-sum targets, when both are integral.
pub fn dc2_targets(n: usize) -> Option<(usize, usize)> {
    (n > 0 && n.is_multiple_of(4)).then(|| (n / 2, n * (n + 1) / 4))
}

/// `|S_2|` for length `n`; zero when the targets are not integral.
pub fn count_dc2(n: usize) -> BigUint {
    match dc2_targets(n) {
        Some((c, p)) => CountTable::truncated(n, c, p, u64::MAX)
            .map(|t| t.get(c, p).clone())
            .unwrap_or_default(),
        None => BigUint::zero(),
    }
}

/// Number of dc2-balanced words with ones at positions `i0 < i1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairCount {
    pub n: usize,
    pub i0: usize,
    pub i1: usize,
    pub count: BigUint,
}

/// Exact oracle for one length: the truncated count table plus `|S_2|`.
#[derive(Debug, Clone)]
pub struct ExactOracle {
    n: usize,
    weight: usize,
    index_sum: usize,
    table: CountTable,
    count: BigUint,
}

impl ExactOracle {
    pub fn new(n: usize) -> Result<Self> {
        Self::with_options(n, &OracleOptions::default())
    }

    pub fn with_options(n: usize, options: &OracleOptions) -> Result<Self> {
        let (weight, index_sum) = dc2_targets(n).ok_or(Error::InvalidLength {
            n,
            reason: "dc2-balanced codes need a length that is a positive multiple of 4",
        })?;
        if n > DEFAULT_EXACT_MAX_N && !options.expensive {
            return Err(Error::ExpensiveRequired {
                n,
                limit: DEFAULT_EXACT_MAX_N,
            });
        }
        let table = CountTable::truncated(n, weight, index_sum, options.memory_budget)?;
        let count = table.get(weight, index_sum).clone();
        if count.is_zero() {
            return Err(Error::EmptyCodebook { n });
        }
        Ok(Self {
            n,
            weight,
            index_sum,
            table,
            count,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `|S_2|`.
    pub fn count(&self) -> &BigUint {
        &self.count
    }

    pub fn table(&self) -> &CountTable {
        &self.table
    }

    fn check_pair(&self, i0: usize, i1: usize) -> Result<()> {
        if i0 == 0 || i0 >= i1 || i1 > self.n {
            return Err(Error::InvalidPositions { n: self.n, i0, i1 });
        }
        Ok(())
    }

    /// Pair count by long division of the full product by both factors.
    ///
    /// Only the quotient coefficient at `(n/2 - 2, n(n+1)/4 - i0 - i1)` is
    /// needed, and the division recurrence unrolls to the alternating sum
    /// `sum_{j,l} (-1)^{j+l} P[c - j - l][p - j*i0 - l*i1]`.
    pub fn pair_count(&self, i0: usize, i1: usize) -> Result<PairCount> {
        self.check_pair(i0, i1)?;
        Ok(PairCount {
            n: self.n,
            i0,
            i1,
            count: self.pair_count_unchecked(i0, i1),
        })
    }

    fn pair_count_unchecked(&self, i0: usize, i1: usize) -> BigUint {
        let (Some(c), Some(p)) = (
            self.weight.checked_sub(2),
            self.index_sum.checked_sub(i0 + i1),
        ) else {
            return BigUint::zero();
        };
        let mut plus = BigUint::zero();
        let mut minus = BigUint::zero();
        for j in 0..=c {
            let Some(pj) = p.checked_sub(j * i0) else {
                break;
            };
            for l in 0..=(c - j) {
                let Some(q) = pj.checked_sub(l * i1) else {
                    break;
                };
                let term = self.table.get(c - j - l, q);
                if term.is_zero() {
                    continue;
                }
                if (j + l) % 2 == 0 {
                    plus += term;
                } else {
                    minus += term;
                }
            }
        }
        plus - minus
    }

    /// Pair count by recomputing the product without the two factors.
    pub fn pair_count_by_skipping(&self, i0: usize, i1: usize) -> Result<PairCount> {
        self.check_pair(i0, i1)?;
        let count = match self.index_sum.checked_sub(i0 + i1) {
            Some(p) => {
                let c = self.weight - 2;
                let rest = (1..=self.n).filter(|&k| k != i0 && k != i1);
                CountTable::from_positions(self.n, rest, c, p, u64::MAX)?
                    .get(c, p)
                    .clone()
            }
            None => BigUint::zero(),
        };
        Ok(PairCount {
            n: self.n,
            i0,
            i1,
            count,
        })
    }

    /// `4 N(x_i0 = x_i1 = 1) / N - 1` as an exact rational. Positions may be
    /// given in either order.
    pub fn pair_correlation_exact(&self, i0: usize, i1: usize) -> Result<BigRational> {
        let (lo, hi) = if i0 < i1 { (i0, i1) } else { (i1, i0) };
        let pc = self.pair_count(lo, hi)?;
        let num = BigInt::from(pc.count) * 4 - BigInt::from(self.count.clone());
        Ok(BigRational::new(num, BigInt::from(self.count.clone())))
    }

    pub fn pair_correlation(&self, i0: usize, i1: usize) -> Result<f64> {
        Ok(to_f64(&self.pair_correlation_exact(i0, i1)?))
    }

    /// `sum_{j=1}^{n-i} N(x_j = x_{j+i} = 1)`.
    ///
    /// Reversal maps the pair `(j, j+i)` onto `(n+1-i-j, n+1-j)`, so only the
    /// first half of the `j` range is computed.
    pub fn lag_pair_sum(&self, lag: usize) -> BigUint {
        assert!((1..self.n).contains(&lag), "lag {lag} out of range");
        let span = self.n - lag;
        let mut total = BigUint::zero();
        for j in 1..=span.div_ceil(2) {
            let mirror = span + 1 - j;
            let pc = self.pair_count_unchecked(j, j + lag);
            if mirror == j {
                total += pc;
            } else {
                total += &pc + &pc;
            }
        }
        total
    }

    /// Exact rational `rho(1) .. rho(n-1)`.
    pub fn autocorrelation_exact(&self) -> ExactAutocorrelation {
        let n = self.n;
        let total = BigInt::from(self.count.clone());
        let denom = &total * BigInt::from(n);
        let values = (1..n)
            .into_par_iter()
            .map(|lag| {
                let sum = BigInt::from(self.lag_pair_sum(lag));
                let num = sum * 4 - &total * BigInt::from(n - lag);
                BigRational::new(num, denom.clone())
            })
            .collect();
        ExactAutocorrelation {
            n,
            count: self.count.clone(),
            values,
        }
    }

    pub fn autocorrelation(&self) -> Autocorrelation {
        self.autocorrelation_exact().to_autocorrelation()
    }
}

pub fn pair_count(n: usize, i0: usize, i1: usize) -> Result<PairCount> {
    ExactOracle::new(n)?.pair_count(i0, i1)
}

pub fn exact_pair_correlation(n: usize, i0: usize, i1: usize) -> Result<f64> {
    ExactOracle::new(n)?.pair_correlation(i0, i1)
}

pub fn exact_autocorrelation(n: usize) -> Result<Autocorrelation> {
    Ok(ExactOracle::new(n)?.autocorrelation())
}

/// Exact full-set autocorrelation as rationals.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactAutocorrelation {
    pub n: usize,
    /// `|S_2|`.
    pub count: BigUint,
    /// `rho(1) .. rho(n-1)`.
    pub values: Vec<BigRational>,
}

impl ExactAutocorrelation {
    pub fn to_autocorrelation(&self) -> Autocorrelation {
        let values = self.values.iter().map(to_f64).collect();
        Autocorrelation::new(self.n, values, Method::Exact).expect("exact values are bounded")
    }

    /// `sum rho(i)` and `sum i^2 rho(i)`, exactly.
    pub fn moment_sums(&self) -> (BigRational, BigRational) {
        let mut s0 = BigRational::zero();
        let mut s2 = BigRational::zero();
        for (k, v) in self.values.iter().enumerate() {
            let i = BigInt::from(k + 1);
            s0 += v;
            s2 += v * BigRational::from_integer(&i * &i);
        }
        (s0, s2)
    }
}

/// `rho(i) = (1/(n |S|)) sum_{x in S} sum_j x'_j x'_{j+i}` evaluated word by word.
pub fn direct_autocorrelation(n: usize, words: &[Codeword]) -> Result<Vec<BigRational>> {
    if words.is_empty() {
        return Err(Error::EmptyCodebook { n });
    }
    if let Some(w) = words.iter().find(|w| w.len() != n) {
        return Err(Error::LengthMismatch {
            expected: n,
            actual: w.len(),
        });
    }
    let denom = BigInt::from(n) * BigInt::from(words.len());
    Ok((1..n)
        .map(|lag| {
            let sum: i64 = words
                .iter()
                .map(|w| {
                    (1..=n - lag)
                        .map(|j| (w.bipolar(j) * w.bipolar(j + lag)) as i64)
                        .sum::<i64>()
                })
                .sum();
            BigRational::new(BigInt::from(sum), denom.clone())
        })
        .collect())
}

fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().expect("bounded rational converts to f64")
}

//! Stall patterns, exhaustive multiplicity search, and error-floor
//! lower bounds.
//!
//! A stall pattern is a cell set in which every occupied row and every
//! occupied column holds more than t errors, so no bounded-distance
//! component decoder can make progress. The floor bounds come in two
//! pairs: `floor_bound_min` counts minimal (t+1)x(t+1) stalls, and
//! `floor_bound_pp` weights the patterns that survive intersection
//! flipping, using the multiplicity table produced by
//! [`enumerate_multiplicities`].
//!
//! The enumeration classifies every candidate subset of the
//! (t+2)x(t+2) grid under an idealized decoder: a line holding exactly
//! t+1 errors counts as a detected failure, a line holding t+2 as
//! undetected; detected intersections are flipped when both axes have
//! detections, and one idealized iteration then clears every line with
//! at most t errors (rows first, then columns). What remains
//! uncorrectable is tallied by cardinality.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use std::collections::BTreeMap;

use crate::Error;

/// A set of (row, column) cells inside a frame grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StallPattern {
    pub cells: Vec<(usize, usize)>,
}

impl StallPattern {
    pub fn new(mut cells: Vec<(usize, usize)>) -> Self {
        cells.sort_unstable();
        cells.dedup();
        Self { cells }
    }

    /// The full cross product of the given rows and columns.
    pub fn grid(rows: &[usize], cols: &[usize]) -> Self {
        let mut cells = Vec::with_capacity(rows.len() * cols.len());
        for &r in rows {
            for &c in cols {
                cells.push((r, c));
            }
        }
        Self::new(cells)
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }
}

/// True when every member cell shares its row with more than `t` member
/// cells and its column with more than `t` member cells.
pub fn is_stall(pattern: &StallPattern, t: usize) -> bool {
    let mut row_counts: BTreeMap<usize, usize> = BTreeMap::new();
    let mut col_counts: BTreeMap<usize, usize> = BTreeMap::new();
    for &(r, c) in &pattern.cells {
        *row_counts.entry(r).or_default() += 1;
        *col_counts.entry(c).or_default() += 1;
    }
    pattern
        .cells
        .iter()
        .all(|&(r, c)| row_counts[&r] > t && col_counts[&c] > t)
}

/// Exact binomial coefficient.
pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Number of minimal (t+1)x(t+1) stall placements in an n x n frame:
/// choose the rows, choose the columns.
pub fn minimal_stall_count(n: usize, t: usize) -> Result<BigUint, Error> {
    if n <= t + 1 {
        return Err(Error::InvalidParameter(format!(
            "need n > t + 1, got n={n} t={t}"
        )));
    }
    let c = binomial(n, t + 1);
    Ok(&c * &c)
}

/// Natural log of a big integer, via the leading bits.
fn ln_big(x: &BigUint) -> f64 {
    if let Some(v) = x.to_f64() {
        if v.is_finite() {
            return v.ln();
        }
    }
    let bits = x.bits();
    let top = (x >> (bits - 64)).to_f64().unwrap_or(f64::MAX);
    top.ln() + (bits - 64) as f64 * std::f64::consts::LN_2
}

/// ln(1 - (1-p)^b) and friends need a stable symbol-error probability.
fn symbol_error_probability(p: f64, b: u32) -> f64 {
    -f64::exp_m1(b as f64 * f64::ln_1p(-p))
}

/// BER lower bound from minimal stall patterns:
/// `(t+1)^2 * C(n,t+1)^2 * p^(t+1)^2 / n^2`.
///
/// Evaluated directly in f64 and falling back to log-domain arithmetic
/// when the power underflows.
pub fn floor_bound_min(n: usize, t: usize, p: f64) -> f64 {
    assert!((0.0..=1.0).contains(&p), "p in [0,1]");
    if p == 0.0 {
        return 0.0;
    }
    let e = ((t + 1) * (t + 1)) as i32;
    let m = minimal_stall_count(n, t).expect("valid parameters");
    let m_f = m.to_f64().unwrap_or(f64::INFINITY);
    let direct = e as f64 * m_f * p.powi(e) / (n * n) as f64;
    if direct.is_finite() && direct > 0.0 {
        return direct;
    }
    let ln_value = (e as f64).ln() + ln_big(&m) + e as f64 * p.ln() - 2.0 * (n as f64).ln();
    ln_value.exp()
}

/// Non-binary BER lower bound from minimal stall patterns: the symbol
/// bound at the symbol error rate, scaled by the expected wrong bits
/// per wrong symbol.
pub fn floor_bound_min_nonbinary(n: usize, t: usize, b: u32, p: f64) -> f64 {
    assert!(b >= 2, "non-binary bound needs b >= 2");
    let ps = symbol_error_probability(p, b);
    ((b as f64 - 1.0) * p + 1.0) / (b as f64 * b as f64) * floor_bound_min(n, t, ps)
}

/// Uncorrectable-pattern multiplicities by cardinality for one
/// correction radius.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicityTable {
    pub t: usize,
    pub entries: BTreeMap<usize, u64>,
}

impl MultiplicityTable {
    pub fn multiplicity(&self, n_e: usize) -> u64 {
        self.entries.get(&n_e).copied().unwrap_or(0)
    }
}

/// Exhaustively classifies every candidate subset of the (t+2)x(t+2)
/// grid and counts the uncorrectable ones by cardinality. Candidates
/// are the subsets in which every occupied row and column holds t+1 or
/// t+2 cells. Supported for t <= 3 (2^25 subsets); larger radii are
/// refused.
pub fn enumerate_multiplicities(t: usize) -> Result<MultiplicityTable, Error> {
    let mut entries: BTreeMap<usize, u64> = BTreeMap::new();
    enumerate_uncorrectable(t, |mask| {
        *entries.entry(mask.count_ones() as usize).or_default() += 1;
    })?;
    Ok(MultiplicityTable { t, entries })
}

/// The uncorrectable patterns behind [`enumerate_multiplicities`], as
/// cell sets on the (t+2)x(t+2) grid. Useful for injecting each class
/// into a real decoder.
pub fn uncorrectable_patterns(t: usize) -> Result<Vec<StallPattern>, Error> {
    let g = t + 2;
    let mut out = Vec::new();
    enumerate_uncorrectable(t, |mask| {
        let cells: Vec<(usize, usize)> = (0..g * g)
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| (i / g, i % g))
            .collect();
        out.push(StallPattern::new(cells));
    })?;
    Ok(out)
}

fn enumerate_uncorrectable(t: usize, mut sink: impl FnMut(u32)) -> Result<(), Error> {
    if t == 0 || t > 3 {
        return Err(Error::InvalidParameter(format!(
            "enumeration supports 1 <= t <= 3 (2^((t+2)^2) subsets); got t={t}"
        )));
    }
    let g = t + 2;
    let cells = g * g;
    let row_masks: Vec<u32> = (0..g)
        .map(|r| ((1u32 << g) - 1) << (r * g))
        .collect();
    let col_masks: Vec<u32> = (0..g)
        .map(|c| {
            let mut m = 0u32;
            for r in 0..g {
                m |= 1 << (r * g + c);
            }
            m
        })
        .collect();

    'subset: for s in 1u64..(1u64 << cells) {
        let s = s as u32;
        for mask in row_masks.iter().chain(&col_masks) {
            let count = (s & mask).count_ones() as usize;
            if count != 0 && count <= t {
                continue 'subset;
            }
        }
        if !idealized_post_processing_corrects(s, t, g, &row_masks, &col_masks) {
            sink(s);
        }
    }
    Ok(())
}

/// The idealized decode-and-flip model used by the exhaustive search.
/// Returns true when the pattern is cleared.
fn idealized_post_processing_corrects(
    pattern: u32,
    t: usize,
    g: usize,
    row_masks: &[u32],
    col_masks: &[u32],
) -> bool {
    let mut state = pattern;

    // Lines with exactly t+1 errors are detected failures; lines with
    // t+2 go undetected.
    let detected_rows: Vec<usize> = (0..g)
        .filter(|&r| (state & row_masks[r]).count_ones() as usize == t + 1)
        .collect();
    let detected_cols: Vec<usize> = (0..g)
        .filter(|&c| (state & col_masks[c]).count_ones() as usize == t + 1)
        .collect();
    if !detected_rows.is_empty() && !detected_cols.is_empty() {
        for &r in &detected_rows {
            for &c in &detected_cols {
                state ^= 1 << (r * g + c);
            }
        }
    }

    // One idealized iteration: clear every row within the correction
    // radius, then every column.
    for r in 0..g {
        if (state & row_masks[r]).count_ones() as usize <= t {
            state &= !row_masks[r];
        }
    }
    for c in 0..g {
        if (state & col_masks[c]).count_ones() as usize <= t {
            state &= !col_masks[c];
        }
    }
    state == 0
}

/// BER lower bound under post-processing:
/// `C(n+1,t+2)^2 / (n+1)^2 * sum_ne m(ne) * p^ne * (1-p)^((t+2)^2-ne) * ne`.
pub fn floor_bound_pp(n: usize, t: usize, p: f64, table: &MultiplicityTable) -> f64 {
    assert!((0.0..=1.0).contains(&p), "p in [0,1]");
    assert_eq!(table.t, t, "multiplicity table computed for a different t");
    if p == 0.0 {
        return 0.0;
    }
    let m = binomial(n + 1, t + 2);
    let m = &m * &m;
    let grid = (t + 2) * (t + 2);
    let scale_direct = m.to_f64().unwrap_or(f64::INFINITY) / ((n + 1) * (n + 1)) as f64;

    let mut direct_sum = 0.0f64;
    let mut any_underflow = false;
    for (&n_e, &count) in &table.entries {
        let term = count as f64
            * p.powi(n_e as i32)
            * (1.0 - p).powi((grid - n_e) as i32)
            * n_e as f64;
        if term == 0.0 {
            any_underflow = true;
        }
        direct_sum += term;
    }
    let direct = scale_direct * direct_sum;
    if direct.is_finite() && direct > 0.0 && !any_underflow {
        return direct;
    }

    // Log-domain fallback: log-sum-exp over the terms, then add the
    // leading scale.
    let ln_scale = ln_big(&m) - 2.0 * ((n + 1) as f64).ln();
    let ln_terms: Vec<f64> = table
        .entries
        .iter()
        .filter(|(_, &count)| count > 0)
        .map(|(&n_e, &count)| {
            (count as f64).ln()
                + n_e as f64 * p.ln()
                + (grid - n_e) as f64 * f64::ln_1p(-p)
                + (n_e as f64).ln()
        })
        .collect();
    if ln_terms.is_empty() {
        return 0.0;
    }
    let max = ln_terms.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let sum: f64 = ln_terms.iter().map(|&l| (l - max).exp()).sum();
    (ln_scale + max + sum.ln()).exp()
}

/// Non-binary BER lower bound under post-processing.
pub fn floor_bound_pp_nonbinary(
    n: usize,
    t: usize,
    b: u32,
    p: f64,
    table: &MultiplicityTable,
) -> f64 {
    assert!(b >= 2, "non-binary bound needs b >= 2");
    let ps = symbol_error_probability(p, b);
    ((b as f64 - 1.0) * p + 1.0) / (b as f64 * b as f64) * floor_bound_pp(n, t, ps, table)
}

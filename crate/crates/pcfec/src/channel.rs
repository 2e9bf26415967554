//! Binary symmetric channel, pattern injection, and the Monte Carlo
//! harness.
//!
//! Noise is a pure function of (seed, trial index, bit position): every
//! bit decision hashes a counter derived from those three values, so a
//! sweep partitioned across any number of workers reproduces the same
//! frames bit for bit. Trials run in fixed-size blocks; early stopping
//! on a frame-error budget is decided only at block boundaries, which
//! keeps the stopping point independent of scheduling as well.

use rayon::prelude::*;

use crate::gf::Symbol;
use crate::product::{Frame, ProductCode};
use crate::stall::StallPattern;
use crate::Error;

/// Channel model selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChannelModel {
    /// Independent bit flips with probability p.
    Bsc,
    /// Deterministic injection of a fixed cell pattern.
    InjectPattern,
}

/// Channel parameters shared by all trials of a run.
#[derive(Debug, Clone)]
pub struct ChannelConfig {
    pub p: f64,
    pub seed: u64,
    pub model: ChannelModel,
}

impl ChannelConfig {
    pub fn bsc(p: f64, seed: u64) -> Self {
        assert!((0.0..=1.0).contains(&p), "p in [0,1]");
        Self { p, seed, model: ChannelModel::Bsc }
    }
}

/// splitmix64 finalizer; bijective on u64.
#[inline]
fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

/// Uniform in [0, 1) from the top 53 bits of a hash.
#[inline]
fn unit(h: u64) -> f64 {
    (h >> 11) as f64 * (1.0 / 9007199254740992.0)
}

/// Per-trial stream key.
#[inline]
fn trial_key(seed: u64, trial: u64) -> u64 {
    mix(seed ^ mix(trial.wrapping_mul(0xA24BAED4963EE407).wrapping_add(0x9E3779B97F4A7C15)))
}

/// Flip decision for one bit of one trial.
#[inline]
fn bit_flips(key: u64, bit_index: u64, p: f64) -> bool {
    unit(mix(key ^ bit_index.wrapping_mul(0xD6E8FEB86659FD93).wrapping_add(1))) < p
}

/// A deterministic xorshift generator for test helpers and placement
/// sampling; seeded explicitly, never from global state.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E3779B97F4A7C15);
        mix(self.state)
    }

    pub fn next_below(&mut self, n: u64) -> u64 {
        debug_assert!(n > 0);
        self.next_u64() % n
    }

    pub fn next_f64(&mut self) -> f64 {
        unit(self.next_u64())
    }
}

/// Passes a frame through the binary symmetric channel. Each bit lane of
/// each symbol flips independently with probability `cfg.p`; the outcome
/// depends only on (seed, trial_index, bit position).
pub fn bsc_transmit(frame: &Frame, cfg: &ChannelConfig, trial_index: u64) -> Frame {
    assert_eq!(cfg.model, ChannelModel::Bsc, "bsc_transmit wants the BSC model");
    bsc_transmit_bits(frame, cfg, trial_index, bits_per_symbol_hint(frame))
}

fn bits_per_symbol_hint(frame: &Frame) -> u32 {
    // Highest set lane across the frame, at least 1. Callers that know b
    // should prefer `bsc_transmit_symbols`.
    let max = frame.data().iter().fold(0u16, |acc, &s| acc | s);
    (16 - max.leading_zeros()).max(1)
}

/// BSC with an explicit symbol width.
pub fn bsc_transmit_symbols(
    frame: &Frame,
    bits: u32,
    cfg: &ChannelConfig,
    trial_index: u64,
) -> Frame {
    bsc_transmit_bits(frame, cfg, trial_index, bits)
}

fn bsc_transmit_bits(frame: &Frame, cfg: &ChannelConfig, trial_index: u64, bits: u32) -> Frame {
    let key = trial_key(cfg.seed, trial_index);
    let mut out = frame.clone();
    if cfg.p == 0.0 {
        return out;
    }
    let cols = frame.cols();
    for r in 0..frame.rows() {
        for c in 0..cols {
            let base = ((r * cols + c) as u64) * bits as u64;
            let mut mask: Symbol = 0;
            for lane in 0..bits {
                if bit_flips(key, base + lane as u64, cfg.p) {
                    mask |= 1 << lane;
                }
            }
            if mask != 0 {
                out.toggle(r, c, mask);
            }
        }
    }
    out
}

/// Lane selector for pattern injection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lane {
    /// Flip a single bit lane of each pattern cell.
    Bit(u32),
    /// Flip every lane of each pattern cell.
    All,
}

/// Flips the selected lane(s) of every cell in the pattern. Injection is
/// an XOR, so applying the same pattern twice restores the frame.
pub fn inject_pattern(
    frame: &Frame,
    pattern: &StallPattern,
    lane: Lane,
    bits: u32,
) -> Result<Frame, Error> {
    let mask: Symbol = match lane {
        Lane::All => ((1u32 << bits) - 1) as Symbol,
        Lane::Bit(w) => {
            if w >= bits {
                return Err(Error::InvalidParameter(format!(
                    "bit lane {w} out of range for b={bits}"
                )));
            }
            1 << w
        }
    };
    let mut out = frame.clone();
    for &(r, c) in &pattern.cells {
        if r >= frame.rows() || c >= frame.cols() {
            return Err(Error::InvalidParameter(format!(
                "pattern cell ({r},{c}) outside {}x{} frame",
                frame.rows(),
                frame.cols()
            )));
        }
        out.toggle(r, c, mask);
    }
    Ok(out)
}

/// Accumulated statistics of a Monte Carlo run. All fields are integer
/// counters so that merging is exact, associative, and commutative;
/// rates are derived on demand.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SimStats {
    pub trials: u64,
    pub bit_errors: u64,
    pub symbol_errors: u64,
    pub frame_errors: u64,
    /// Sum of squared per-frame information-bit error counts, for the
    /// confidence interval.
    pub bit_errors_squared: u128,
    pub info_bits_per_frame: u64,
    pub info_symbols_per_frame: u64,
}

impl SimStats {
    pub fn empty(info_bits_per_frame: u64, info_symbols_per_frame: u64) -> Self {
        Self {
            info_bits_per_frame,
            info_symbols_per_frame,
            ..Self::default()
        }
    }

    fn record(&mut self, frame_bit_errors: u64, frame_symbol_errors: u64, frame_in_error: bool) {
        self.trials += 1;
        self.bit_errors += frame_bit_errors;
        self.symbol_errors += frame_symbol_errors;
        self.frame_errors += u64::from(frame_in_error);
        self.bit_errors_squared += (frame_bit_errors as u128) * (frame_bit_errors as u128);
    }

    pub fn merge(&mut self, other: &SimStats) {
        debug_assert_eq!(self.info_bits_per_frame, other.info_bits_per_frame);
        debug_assert_eq!(self.info_symbols_per_frame, other.info_symbols_per_frame);
        self.trials += other.trials;
        self.bit_errors += other.bit_errors;
        self.symbol_errors += other.symbol_errors;
        self.frame_errors += other.frame_errors;
        self.bit_errors_squared += other.bit_errors_squared;
    }

    pub fn ber(&self) -> f64 {
        if self.trials == 0 {
            return 0.0;
        }
        self.bit_errors as f64 / (self.trials * self.info_bits_per_frame) as f64
    }

    pub fn ser(&self) -> f64 {
        if self.trials == 0 {
            return 0.0;
        }
        self.symbol_errors as f64 / (self.trials * self.info_symbols_per_frame) as f64
    }

    pub fn fer(&self) -> f64 {
        if self.trials == 0 {
            return 0.0;
        }
        self.frame_errors as f64 / self.trials as f64
    }

    /// 95% half-width for the BER from the per-frame sample variance.
    pub fn ci95_ber(&self) -> f64 {
        if self.trials < 2 {
            return f64::INFINITY;
        }
        let n = self.trials as f64;
        let mean = self.bit_errors as f64 / n;
        let var = (self.bit_errors_squared as f64 - n * mean * mean) / (n - 1.0);
        1.96 * (var.max(0.0) / n).sqrt() / self.info_bits_per_frame as f64
    }
}

/// Monte Carlo options beyond the channel itself.
#[derive(Debug, Clone)]
pub struct SimOptions {
    pub trials: u64,
    pub iterations: u32,
    pub post_processing: bool,
    /// Stop once this many frame errors have been seen (checked at block
    /// boundaries); `None` runs all trials.
    pub stop_at_frame_errors: Option<u64>,
    /// Transmit random codewords instead of the all-zero frame.
    pub random_codewords: bool,
}

impl SimOptions {
    pub fn new(trials: u64, iterations: u32, post_processing: bool) -> Self {
        Self {
            trials,
            iterations,
            post_processing,
            stop_at_frame_errors: None,
            random_codewords: false,
        }
    }

    pub fn stop_at(mut self, frame_errors: u64) -> Self {
        self.stop_at_frame_errors = Some(frame_errors);
        self
    }

    pub fn random_codewords(mut self, yes: bool) -> Self {
        self.random_codewords = yes;
        self
    }
}

const TRIAL_BLOCK: u64 = 1024;

/// Runs seeded BSC trials against a product code and accumulates
/// residual error statistics over the information region.
///
/// Trials are independent and processed in blocks of a fixed size in
/// parallel; statistics merge exactly, so the result depends only on
/// the configuration, never on the worker count.
pub fn run_monte_carlo(pc: &ProductCode, cfg: &ChannelConfig, opts: &SimOptions) -> SimStats {
    assert!(opts.trials >= 1, "at least one trial");
    let bits = pc.row_code().params().b;
    let info_symbols = (pc.info_rows() * pc.info_cols()) as u64;
    let mut stats = SimStats::empty(info_symbols * bits as u64, info_symbols);

    let mut done = 0u64;
    while done < opts.trials {
        if let Some(budget) = opts.stop_at_frame_errors {
            if stats.frame_errors >= budget {
                break;
            }
        }
        let block = TRIAL_BLOCK.min(opts.trials - done);
        let partial = (done..done + block)
            .into_par_iter()
            .map(|trial| run_trial(pc, cfg, opts, bits, trial))
            .reduce(
                || SimStats::empty(stats.info_bits_per_frame, stats.info_symbols_per_frame),
                |mut a, b| {
                    a.merge(&b);
                    a
                },
            );
        stats.merge(&partial);
        done += block;
    }
    stats
}

fn run_trial(
    pc: &ProductCode,
    cfg: &ChannelConfig,
    opts: &SimOptions,
    bits: u32,
    trial: u64,
) -> SimStats {
    let (sent_frame, sent_info) = if opts.random_codewords {
        let info = random_info_frame(pc, bits, cfg.seed, trial);
        let frame = pc.encode_frame(&info).expect("valid info dimensions");
        (frame, info)
    } else {
        // The all-zero frame is a codeword of any linear code.
        (
            Frame::zero(pc.frame_rows(), pc.frame_cols()),
            Frame::zero(pc.info_rows(), pc.info_cols()),
        )
    };
    let received = bsc_transmit_symbols(&sent_frame, bits, cfg, trial);
    let mut outcome = pc.decode_iterative(received, opts.iterations);
    if opts.post_processing {
        outcome = pc.post_process(outcome);
    }
    let decoded_info = pc.extract_info(&outcome.frame).expect("frame dimensions");

    let mut symbol_errs = 0u64;
    let mut bit_errs = 0u64;
    for (got, want) in decoded_info.data().iter().zip(sent_info.data()) {
        let diff = got ^ want;
        if diff != 0 {
            symbol_errs += 1;
            bit_errs += diff.count_ones() as u64;
        }
    }
    let frame_in_error = outcome.frame != sent_frame;

    let mut s = SimStats::empty(
        (pc.info_rows() * pc.info_cols()) as u64 * bits as u64,
        (pc.info_rows() * pc.info_cols()) as u64,
    );
    s.record(bit_errs, symbol_errs, frame_in_error);
    s
}

/// Deterministic random information block for the random-codeword mode.
fn random_info_frame(pc: &ProductCode, bits: u32, seed: u64, trial: u64) -> Frame {
    let key = trial_key(seed ^ 0x5151_5151_5151_5151, trial);
    let mask = ((1u32 << bits) - 1) as Symbol;
    let mut info = Frame::zero(pc.info_rows(), pc.info_cols());
    for r in 0..info.rows() {
        for c in 0..info.cols() {
            let h = mix(key ^ ((r * info.cols() + c) as u64).wrapping_mul(0x2545F4914F6CDD1D));
            info.set(r, c, (h as Symbol) & mask);
        }
    }
    info
}

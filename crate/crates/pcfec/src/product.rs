//! Product codes: row/column encoding, iterative hard-decision
//! decoding, and stall post-processing.
//!
//! A frame is an n2_ext x n1_ext symbol matrix; every row is a codeword
//! of the row component code and every column a codeword of the column
//! component code. Decoding alternates full row and column passes. The
//! index sets of rows and columns whose decoder reported failure in the
//! final pass drive the post-processing step: their intersections are
//! flipped (bitwise for binary codes, parity-guided lanes for
//! non-binary), then one more decoding iteration runs.

use std::io::{Read, Write};
use std::sync::Arc;

use crate::component::{build_codec, CodeSpec, ComponentCodec};
use crate::gf::Symbol;
use crate::Error;

/// Row-major symbol matrix. Used both for full product frames and for
/// information blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    rows: usize,
    cols: usize,
    data: Vec<Symbol>,
}

impl Frame {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn from_data(rows: usize, cols: usize, data: Vec<Symbol>) -> Result<Self, Error> {
        if data.len() != rows * cols {
            return Err(Error::LengthMismatch { expected: rows * cols, got: data.len() });
        }
        Ok(Self { rows, cols, data })
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Symbol {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Symbol) {
        self.data[r * self.cols + c] = v;
    }

    /// XORs `mask` into the symbol at (r, c).
    #[inline]
    pub fn toggle(&mut self, r: usize, c: usize, mask: Symbol) {
        self.data[r * self.cols + c] ^= mask;
    }

    pub fn row(&self, r: usize) -> &[Symbol] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [Symbol] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col_vec(&self, c: usize) -> Vec<Symbol> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn set_col(&mut self, c: usize, values: &[Symbol]) {
        debug_assert_eq!(values.len(), self.rows);
        for (r, &v) in values.iter().enumerate() {
            self.set(r, c, v);
        }
    }

    pub fn data(&self) -> &[Symbol] {
        &self.data
    }

    /// Number of symbol positions where the two frames differ.
    pub fn diff_count(&self, other: &Frame) -> usize {
        debug_assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .filter(|(a, b)| a != b)
            .count()
    }
}

/// Result of decoding one frame. `failed_rows` / `failed_cols` are the
/// component failures recorded in the final pass, sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeOutcome {
    pub frame: Frame,
    pub failed_rows: Vec<usize>,
    pub failed_cols: Vec<usize>,
    pub iterations_used: u32,
    pub converged: bool,
}

/// A product code built from a row codec and a column codec with equal
/// symbol widths.
pub struct ProductCode {
    row_code: Arc<dyn ComponentCodec>,
    col_code: Arc<dyn ComponentCodec>,
    pp_iterations: u32,
    pp_guard: Option<(usize, usize)>,
}

impl ProductCode {
    pub fn new(
        row_code: Arc<dyn ComponentCodec>,
        col_code: Arc<dyn ComponentCodec>,
    ) -> Result<Self, Error> {
        if row_code.params().b != col_code.params().b {
            return Err(Error::InvalidParameter(format!(
                "row and column symbol widths differ: {} vs {}",
                row_code.params().b,
                col_code.params().b
            )));
        }
        // Default flip guard: a stall the intersection flip can clear
        // never produces more than t+1 detected failures per dimension
        // within the search grid (a line with t+2 errors evades
        // detection); larger failure sets mean the frame is lost to the
        // waterfall, where blanket flipping mostly adds damage.
        let guard = Some((col_code.params().t + 1, row_code.params().t + 1));
        Ok(Self { row_code, col_code, pp_iterations: 1, pp_guard: guard })
    }

    /// Same component code in both dimensions.
    pub fn from_spec(spec: &CodeSpec) -> Result<Self, Error> {
        let codec = build_codec(spec)?;
        Self::new(codec.clone(), codec)
    }

    /// Number of full decoding iterations run after post-processing
    /// flips (default 1).
    pub fn with_post_process_iterations(mut self, iterations: u32) -> Self {
        self.pp_iterations = iterations.max(1);
        self
    }

    /// Cap on the failed-set sizes post-processing will act on, as
    /// `(max failed rows, max failed columns)`. Defaults to the
    /// stall-sized `(col_t + 1, row_t + 1)`; `None` flips intersections
    /// no matter how many rows and columns failed.
    pub fn with_flip_guard(mut self, guard: Option<(usize, usize)>) -> Self {
        self.pp_guard = guard;
        self
    }

    pub fn row_code(&self) -> &Arc<dyn ComponentCodec> {
        &self.row_code
    }

    pub fn col_code(&self) -> &Arc<dyn ComponentCodec> {
        &self.col_code
    }

    /// Frame dimensions: column-code length x row-code length.
    pub fn frame_rows(&self) -> usize {
        self.col_code.params().total_len()
    }

    pub fn frame_cols(&self) -> usize {
        self.row_code.params().total_len()
    }

    /// Information block dimensions: k2 x k1.
    pub fn info_rows(&self) -> usize {
        self.col_code.params().k
    }

    pub fn info_cols(&self) -> usize {
        self.row_code.params().k
    }

    pub fn info_bits_per_frame(&self) -> u64 {
        (self.info_rows() * self.info_cols()) as u64 * self.row_code.params().b as u64
    }

    /// Encodes a k2 x k1 information block: rows first, then every
    /// column including the row-parity columns.
    pub fn encode_frame(&self, info: &Frame) -> Result<Frame, Error> {
        let (k2, k1) = (self.info_rows(), self.info_cols());
        if info.rows() != k2 || info.cols() != k1 {
            return Err(Error::DimensionMismatch {
                expected_rows: k2,
                expected_cols: k1,
                rows: info.rows(),
                cols: info.cols(),
            });
        }
        let mut frame = Frame::zero(self.frame_rows(), self.frame_cols());
        for r in 0..k2 {
            let encoded = self.row_code.encode(info.row(r))?;
            frame.row_mut(r).copy_from_slice(&encoded);
        }
        for c in 0..self.frame_cols() {
            let msg: Vec<Symbol> = (0..k2).map(|r| frame.get(r, c)).collect();
            let encoded = self.col_code.encode(&msg)?;
            frame.set_col(c, &encoded);
        }
        Ok(frame)
    }

    /// Returns the systematic k2 x k1 information region.
    pub fn extract_info(&self, frame: &Frame) -> Result<Frame, Error> {
        if frame.rows() != self.frame_rows() || frame.cols() != self.frame_cols() {
            return Err(Error::DimensionMismatch {
                expected_rows: self.frame_rows(),
                expected_cols: self.frame_cols(),
                rows: frame.rows(),
                cols: frame.cols(),
            });
        }
        let (k2, k1) = (self.info_rows(), self.info_cols());
        let mut info = Frame::zero(k2, k1);
        for r in 0..k2 {
            info.row_mut(r).copy_from_slice(&frame.row(r)[..k1]);
        }
        Ok(info)
    }

    /// True when every row and every column is a valid component
    /// codeword.
    pub fn is_codeword_frame(&self, frame: &Frame) -> bool {
        (0..frame.rows()).all(|r| self.row_code.is_codeword(frame.row(r)))
            && (0..frame.cols()).all(|c| self.col_code.is_codeword(&frame.col_vec(c)))
    }

    fn row_pass(&self, frame: &mut Frame) -> (bool, Vec<usize>) {
        let mut changed = false;
        let mut failed = Vec::new();
        for r in 0..frame.rows() {
            let out = self.row_code.decode(frame.row(r));
            if out.fail {
                failed.push(r);
            } else if !out.symbol_errors.is_empty() {
                frame.row_mut(r).copy_from_slice(&out.corrected);
                changed = true;
            }
        }
        (changed, failed)
    }

    fn col_pass(&self, frame: &mut Frame) -> (bool, Vec<usize>) {
        let mut changed = false;
        let mut failed = Vec::new();
        for c in 0..frame.cols() {
            let word = frame.col_vec(c);
            let out = self.col_code.decode(&word);
            if out.fail {
                failed.push(c);
            } else if !out.symbol_errors.is_empty() {
                frame.set_col(c, &out.corrected);
                changed = true;
            }
        }
        (changed, failed)
    }

    /// Runs up to `iterations` full passes (all rows, then all columns),
    /// stopping early once a pass changes nothing and reports no
    /// failures. R and C come from the last pass executed.
    pub fn decode_iterative(&self, frame: Frame, iterations: u32) -> DecodeOutcome {
        assert!(iterations >= 1, "at least one iteration");
        assert_eq!(frame.rows(), self.frame_rows(), "frame height");
        assert_eq!(frame.cols(), self.frame_cols(), "frame width");
        let mut frame = frame;
        let mut failed_rows = Vec::new();
        let mut failed_cols = Vec::new();
        let mut used = 0;
        for _ in 0..iterations {
            let (row_changed, rf) = self.row_pass(&mut frame);
            let (col_changed, cf) = self.col_pass(&mut frame);
            used += 1;
            failed_rows = rf;
            failed_cols = cf;
            if !row_changed && !col_changed && failed_rows.is_empty() && failed_cols.is_empty() {
                break;
            }
        }
        let converged = failed_rows.is_empty() && failed_cols.is_empty();
        DecodeOutcome { frame, failed_rows, failed_cols, iterations_used: used, converged }
    }

    /// Flips the intersections of failed rows and failed columns, then
    /// runs the follow-up decoding iteration(s). Outcomes with an empty
    /// failure set on either axis are returned unchanged.
    pub fn post_process(&self, outcome: DecodeOutcome) -> DecodeOutcome {
        if outcome.failed_rows.is_empty() || outcome.failed_cols.is_empty() {
            return outcome;
        }
        if let Some((max_rows, max_cols)) = self.pp_guard {
            if outcome.failed_rows.len() > max_rows || outcome.failed_cols.len() > max_cols {
                return outcome;
            }
        }
        let mut frame = outcome.frame;
        let b = self.row_code.params().b;
        if b == 1 {
            for &r in &outcome.failed_rows {
                for &c in &outcome.failed_cols {
                    frame.toggle(r, c, 1);
                }
            }
        } else {
            // Parity-guided lane flips, with every mismatch computed from
            // the frame state before any flip is applied.
            let row_mismatch: Vec<Symbol> = outcome
                .failed_rows
                .iter()
                .map(|&r| self.row_parity_mismatch(&frame, r))
                .collect();
            let col_mismatch: Vec<Symbol> = outcome
                .failed_cols
                .iter()
                .map(|&c| self.col_parity_mismatch(&frame, c))
                .collect();
            let all_lanes = ((1u32 << b) - 1) as Symbol;
            for (&r, &rm) in outcome.failed_rows.iter().zip(&row_mismatch) {
                for (&c, &cm) in outcome.failed_cols.iter().zip(&col_mismatch) {
                    let mask = rm | cm;
                    frame.toggle(r, c, if mask == 0 { all_lanes } else { mask });
                }
            }
        }
        let follow = self.decode_iterative(frame, self.pp_iterations);
        DecodeOutcome {
            frame: follow.frame,
            failed_rows: follow.failed_rows,
            failed_cols: follow.failed_cols,
            iterations_used: outcome.iterations_used + follow.iterations_used,
            converged: follow.converged,
        }
    }

    /// Recomputed-vs-stored parity of row `r`; zero when the stored
    /// extension symbol matches the XOR of the base symbols. Codes
    /// without an extension carry no parity information, so their
    /// mismatch reads as zero and post-processing falls back to
    /// flipping every lane.
    fn row_parity_mismatch(&self, frame: &Frame, r: usize) -> Symbol {
        let p = self.row_code.params();
        if !p.extended {
            return 0;
        }
        let row = frame.row(r);
        let recomputed = row[..p.n].iter().fold(0, |acc, &v| acc ^ v);
        recomputed ^ row[p.n]
    }

    fn col_parity_mismatch(&self, frame: &Frame, c: usize) -> Symbol {
        let p = self.col_code.params();
        if !p.extended {
            return 0;
        }
        let recomputed = (0..p.n).fold(0, |acc, r| acc ^ frame.get(r, c));
        recomputed ^ frame.get(p.n, c)
    }
}

const FRAME_MAGIC: &[u8; 4] = b"PCF1";

/// Writes a square frame: magic, u32 LE side length, u32 LE bits per
/// symbol, then the symbols row-major, b bits each, least significant
/// lane first, zero-padded to a byte boundary.
pub fn write_frame<W: Write>(frame: &Frame, bits: u32, mut writer: W) -> Result<(), Error> {
    if frame.rows() != frame.cols() {
        return Err(Error::FrameFormat(format!(
            "only square frames serialize, got {}x{}",
            frame.rows(),
            frame.cols()
        )));
    }
    writer.write_all(FRAME_MAGIC)?;
    writer.write_all(&(frame.rows() as u32).to_le_bytes())?;
    writer.write_all(&bits.to_le_bytes())?;
    writer.write_all(&pack_symbols(frame.data(), bits))?;
    Ok(())
}

/// Reads a frame written by [`write_frame`], returning it with its
/// symbol width.
pub fn read_frame<R: Read>(mut reader: R) -> Result<(Frame, u32), Error> {
    let mut header = [0u8; 12];
    reader
        .read_exact(&mut header)
        .map_err(|_| Error::FrameFormat("truncated header".into()))?;
    if &header[..4] != FRAME_MAGIC {
        return Err(Error::FrameFormat("bad magic".into()));
    }
    let n_ext = u32::from_le_bytes(header[4..8].try_into().unwrap()) as usize;
    let bits = u32::from_le_bytes(header[8..12].try_into().unwrap());
    if bits == 0 || bits > 16 {
        return Err(Error::FrameFormat(format!("unsupported symbol width {bits}")));
    }
    let expected = (n_ext * n_ext * bits as usize).div_ceil(8);
    let mut payload = Vec::new();
    reader.read_to_end(&mut payload)?;
    if payload.len() != expected {
        return Err(Error::FrameFormat(format!(
            "payload is {} bytes, expected {expected}",
            payload.len()
        )));
    }
    let symbols = unpack_symbols(&payload, n_ext * n_ext, bits)
        .map_err(|_| Error::FrameFormat("nonzero padding bits".into()))?;
    Ok((Frame::from_data(n_ext, n_ext, symbols)?, bits))
}

/// Packs symbols into bytes, `bits` per symbol, LSB-first.
pub fn pack_symbols(symbols: &[Symbol], bits: u32) -> Vec<u8> {
    let total_bits = symbols.len() * bits as usize;
    let mut out = vec![0u8; total_bits.div_ceil(8)];
    let mut pos = 0usize;
    for &s in symbols {
        for lane in 0..bits {
            if s >> lane & 1 == 1 {
                out[pos / 8] |= 1 << (pos % 8);
            }
            pos += 1;
        }
    }
    out
}

/// Unpacks `count` symbols of `bits` bits each; padding bits past the
/// last symbol must be zero.
pub fn unpack_symbols(bytes: &[u8], count: usize, bits: u32) -> Result<Vec<Symbol>, Error> {
    let total_bits = count * bits as usize;
    if bytes.len() != total_bits.div_ceil(8) {
        return Err(Error::LengthMismatch {
            expected: total_bits.div_ceil(8),
            got: bytes.len(),
        });
    }
    for p in total_bits..bytes.len() * 8 {
        if bytes[p / 8] >> (p % 8) & 1 == 1 {
            return Err(Error::FrameFormat("nonzero padding bits".into()));
        }
    }
    let mut out = Vec::with_capacity(count);
    let mut pos = 0usize;
    for _ in 0..count {
        let mut s: Symbol = 0;
        for lane in 0..bits {
            if bytes[pos / 8] >> (pos % 8) & 1 == 1 {
                s |= 1 << lane;
            }
            pos += 1;
        }
        out.push(s);
    }
    Ok(out)
}

//! Product-code forward error correction with stall-pattern post-processing.
//!
//! This crate implements two-dimensional product codes whose rows and
//! columns are protected by extended polynomial component codes (binary
//! BCH or Reed-Solomon), decoded with iterative hard-decision passes.
//! On top of the decoder it provides:
//!
//! - a post-processing step that flips the intersections of failed rows
//!   and failed columns to clear decoding stalls ([`product`]),
//! - exhaustive stall-pattern search and analytic error-floor lower
//!   bounds ([`stall`]),
//! - a seeded, reproducible Monte Carlo harness over the binary
//!   symmetric channel ([`channel`]).
//!
//! Component-code families are strategies behind the [`component::ComponentCodec`]
//! trait, registered by name and selected at runtime; the same goes for
//! the key-equation solvers in [`component::solver`].
//!
//! ```
//! use pcfec::component::CodeSpec;
//! use pcfec::product::{Frame, ProductCode};
//!
//! // Extended BCH(16,7,2) in both dimensions.
//! let spec = CodeSpec::new("binary-bch", 15, 7, 2, 1).extended(true);
//! let pc = ProductCode::from_spec(&spec).unwrap();
//! let info = Frame::zero(7, 7);
//! let frame = pc.encode_frame(&info).unwrap();
//! let outcome = pc.decode_iterative(frame, 2);
//! assert!(outcome.converged);
//! ```

pub mod channel;
pub mod component;
pub mod gf;
pub mod poly;
pub mod product;
pub mod stall;

pub use gf::{GaloisField, Symbol};

/// Errors reported by code construction, framing, and file handling.
/// Decoding failure is not an error: component and product decoders
/// report it as part of their outcome values.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("polynomial {poly:#x} is not primitive over GF(2^{bits})")]
    NotPrimitive { bits: u32, poly: u32 },
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("dimension mismatch: expected {expected_rows}x{expected_cols}, got {rows}x{cols}")]
    DimensionMismatch {
        expected_rows: usize,
        expected_cols: usize,
        rows: usize,
        cols: usize,
    },
    #[error("unknown strategy `{name}`; available: {available}")]
    UnknownStrategy { name: String, available: String },
    #[error("frame format: {0}")]
    FrameFormat(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

//! Component codes: encoding and bounded-distance decoding of
//! (optionally shortened, optionally extended) BCH and Reed-Solomon
//! codes.
//!
//! Each family is a strategy behind [`ComponentCodec`], registered by
//! name in [`CodecRegistry`] and built from a [`CodeSpec`]. The decode
//! contract is strict bounded distance: a word is corrected only when a
//! codeword lies within Hamming distance t, and every inconsistency
//! (locator degree mismatch, roots in the shortened prefix, root count
//! short of the degree, residual syndromes after correction) turns into
//! a reported failure with the input returned unchanged.
//!
//! Extended codes carry one extra parity symbol equal to the XOR of all
//! base symbols. Decoding an extended word runs the bounded decoder on
//! the base part and then reconciles the overall parity: fewer than t
//! corrections may additionally repair the parity symbol, exactly t
//! corrections are accepted only when the parity already checks out,
//! and anything else is a detected failure.

pub mod solver;

mod bch;
mod rs;

pub use bch::BinaryBch;
pub use rs::ReedSolomon;

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use crate::gf::{GaloisField, Symbol};
use crate::poly::Poly;
use crate::Error;
use solver::KeySolver;

/// Component-code family tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CodeFamily {
    BinaryBch,
    ReedSolomon,
}

impl CodeFamily {
    pub fn name(&self) -> &'static str {
        match self {
            CodeFamily::BinaryBch => "binary-bch",
            CodeFamily::ReedSolomon => "reed-solomon",
        }
    }
}

/// Resolved parameters of a constructed component code.
///
/// `n` and `k` describe the shortened base code, before the extension
/// symbol; `shorten_by` leading information symbols of the parent code
/// are fixed to zero and not transmitted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeParams {
    pub family: CodeFamily,
    pub n: usize,
    pub k: usize,
    pub t: usize,
    pub b: u32,
    pub shorten_by: usize,
    pub extended: bool,
}

impl CodeParams {
    /// Transmitted word length: n plus the extension symbol when present.
    pub fn total_len(&self) -> usize {
        self.n + usize::from(self.extended)
    }

    /// Length of the unshortened parent code.
    pub fn parent_n(&self) -> usize {
        self.n + self.shorten_by
    }

    pub fn parent_k(&self) -> usize {
        self.k + self.shorten_by
    }
}

/// Runtime description of a component code, used to select and build a
/// codec from the registry. `family` and `solver` are registry names.
#[derive(Debug, Clone, PartialEq)]
pub struct CodeSpec {
    pub family: String,
    pub n: usize,
    pub k: usize,
    pub t: usize,
    pub b: u32,
    pub shorten_by: usize,
    pub extended: bool,
    /// Optional override for the field polynomial (locator field for
    /// BCH, symbol field for RS).
    pub primitive_poly: Option<u32>,
    pub solver: String,
}

impl CodeSpec {
    pub fn new(family: &str, n: usize, k: usize, t: usize, b: u32) -> Self {
        Self {
            family: family.to_string(),
            n,
            k,
            t,
            b,
            shorten_by: 0,
            extended: false,
            primitive_poly: None,
            solver: solver::DEFAULT_SOLVER.to_string(),
        }
    }

    pub fn shortened_by(mut self, s: usize) -> Self {
        self.shorten_by = s;
        self
    }

    pub fn extended(mut self, yes: bool) -> Self {
        self.extended = yes;
        self
    }

    pub fn with_solver(mut self, name: &str) -> Self {
        self.solver = name.to_string();
        self
    }

    pub fn with_polynomial(mut self, poly: u32) -> Self {
        self.primitive_poly = Some(poly);
        self
    }
}

/// Result of one component decode. `fail` means the word was returned
/// unchanged; otherwise `corrected` is a codeword and the error sets
/// list the positions that were changed (symbol indices, and flat bit
/// indices `symbol * b + lane`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentDecodeOutcome {
    pub fail: bool,
    pub corrected: Vec<Symbol>,
    pub symbol_errors: Vec<usize>,
    pub bit_errors: Vec<usize>,
}

impl ComponentDecodeOutcome {
    pub(crate) fn failure(word: &[Symbol]) -> Self {
        Self {
            fail: true,
            corrected: word.to_vec(),
            symbol_errors: Vec::new(),
            bit_errors: Vec::new(),
        }
    }
}

/// A component code usable as the row or column code of a product code.
pub trait ComponentCodec: Send + Sync {
    fn params(&self) -> &CodeParams;

    /// Systematic encode of `k` information symbols into a codeword of
    /// `total_len` symbols.
    fn encode(&self, message: &[Symbol]) -> Result<Vec<Symbol>, Error>;

    /// Bounded-distance decode of a base word (length `n`), ignoring any
    /// extension.
    fn decode_bounded(&self, word: &[Symbol]) -> ComponentDecodeOutcome;

    /// Decode of a transmitted word (length `total_len`), using the
    /// extension parity when the code is extended.
    fn decode(&self, word: &[Symbol]) -> ComponentDecodeOutcome;

    /// Whether `word` (length `total_len`) is a valid codeword.
    fn is_codeword(&self, word: &[Symbol]) -> bool;
}

/// Builder signature for registered code families.
pub type CodecBuilder = fn(&CodeSpec) -> Result<Arc<dyn ComponentCodec>, Error>;

/// Name-keyed registry of component-code families.
pub struct CodecRegistry {
    entries: BTreeMap<&'static str, CodecBuilder>,
}

impl CodecRegistry {
    pub fn empty() -> Self {
        Self { entries: BTreeMap::new() }
    }

    pub fn with_defaults() -> Self {
        let mut reg = Self::empty();
        reg.register("binary-bch", |spec| {
            Ok(Arc::new(BinaryBch::from_spec(spec)?) as Arc<dyn ComponentCodec>)
        });
        reg.register("reed-solomon", |spec| {
            Ok(Arc::new(ReedSolomon::from_spec(spec)?) as Arc<dyn ComponentCodec>)
        });
        reg
    }

    pub fn register(&mut self, name: &'static str, builder: CodecBuilder) {
        self.entries.insert(name, builder);
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.entries.keys().copied()
    }

    /// Builds the codec selected by `spec.family`.
    pub fn build(&self, spec: &CodeSpec) -> Result<Arc<dyn ComponentCodec>, Error> {
        match self.entries.get(spec.family.as_str()) {
            Some(builder) => builder(spec),
            None => Err(Error::UnknownStrategy {
                name: spec.family.clone(),
                available: self.names().collect::<Vec<_>>().join(", "),
            }),
        }
    }

    pub fn global() -> &'static CodecRegistry {
        static GLOBAL: OnceLock<CodecRegistry> = OnceLock::new();
        GLOBAL.get_or_init(CodecRegistry::with_defaults)
    }
}

/// Builds a codec from the global registry.
pub fn build_codec(spec: &CodeSpec) -> Result<Arc<dyn ComponentCodec>, Error> {
    CodecRegistry::global().build(spec)
}

/// Shared bounded-distance decode machinery. Words are stored with the
/// highest-degree (first information) symbol at index 0, so array index
/// i carries polynomial degree `n - 1 - i`; the `shorten_by` virtual
/// positions above degree n-1 are implicitly zero.
pub(crate) struct BoundedCore {
    pub field: Arc<GaloisField>,
    pub parent_n: usize,
    pub n: usize,
    pub t: usize,
    pub binary: bool,
}

impl BoundedCore {
    fn degree_of(&self, index: usize) -> usize {
        self.n - 1 - index
    }

    fn index_of(&self, degree: usize) -> usize {
        self.n - 1 - degree
    }

    pub fn syndromes(&self, word: &[Symbol]) -> Vec<Symbol> {
        let order = self.field.order();
        let mut syn = vec![0 as Symbol; 2 * self.t];
        for (i, &w) in word.iter().enumerate() {
            if w == 0 {
                continue;
            }
            let d = self.degree_of(i);
            for (j, s) in syn.iter_mut().enumerate() {
                *s ^= self.field.mul(w, self.field.alpha_pow((j + 1) * d % order));
            }
        }
        syn
    }

    /// Returns the corrections `(index, magnitude)` for a word within
    /// bounded distance, or `None` when decoding must be flagged as
    /// failed.
    pub fn correct(
        &self,
        word: &[Symbol],
        solver: &dyn KeySolver,
    ) -> Option<Vec<(usize, Symbol)>> {
        debug_assert_eq!(word.len(), self.n);
        let syn = self.syndromes(word);
        if syn.iter().all(|&s| s == 0) {
            return Some(Vec::new());
        }

        let (locator, l) = solver.solve(&self.field, &syn)?;
        if l == 0 || l > self.t || locator.degree() != Some(l) {
            return None;
        }

        // Chien search over the whole locator field. Roots are the
        // inverses alpha^-d of the error locations; anything landing at
        // a degree at or beyond the shortened length is invalid.
        let mut degrees = Vec::with_capacity(l);
        for e in 0..self.parent_n {
            if locator.eval(&self.field, self.field.alpha_pow(e)) == 0 {
                degrees.push((self.parent_n - e) % self.parent_n);
            }
        }
        if degrees.len() != l || degrees.iter().any(|&d| d >= self.n) {
            return None;
        }

        let mut corrections = Vec::with_capacity(l);
        if self.binary {
            for &d in &degrees {
                corrections.push((self.index_of(d), 1 as Symbol));
            }
        } else {
            // Forney: magnitudes from the evaluator polynomial
            // S(x) * locator(x) mod x^2t at each root.
            let spoly = Poly::new(syn.clone());
            let evaluator = spoly.mul(&self.field, &locator).truncated(2 * self.t);
            let deriv = locator.derivative();
            for &d in &degrees {
                let root = self.field.alpha_pow((self.parent_n - d) % self.parent_n);
                let denom = deriv.eval(&self.field, root);
                if denom == 0 {
                    return None;
                }
                let magnitude = self
                    .field
                    .div(evaluator.eval(&self.field, root), denom)
                    .expect("denominator checked nonzero");
                if magnitude == 0 {
                    return None;
                }
                corrections.push((self.index_of(d), magnitude));
            }
        }

        // Bounded-distance recheck: the corrections must cancel every
        // syndrome, otherwise no codeword lies within distance t.
        let order = self.field.order();
        for (j, &s) in syn.iter().enumerate() {
            let mut expect: Symbol = 0;
            for &(idx, mag) in &corrections {
                let d = self.degree_of(idx);
                expect ^= self.field.mul(mag, self.field.alpha_pow((j + 1) * d % order));
            }
            if expect != s {
                return None;
            }
        }

        corrections.sort_unstable_by_key(|&(idx, _)| idx);
        Some(corrections)
    }
}

/// Assembles a success outcome from corrections against `word`.
pub(crate) fn apply_corrections(
    word: &[Symbol],
    corrections: &[(usize, Symbol)],
    bits: u32,
) -> ComponentDecodeOutcome {
    let mut corrected = word.to_vec();
    let mut symbol_errors = Vec::with_capacity(corrections.len());
    let mut bit_errors = Vec::new();
    for &(idx, mag) in corrections {
        corrected[idx] ^= mag;
        symbol_errors.push(idx);
        for lane in 0..bits {
            if mag >> lane & 1 == 1 {
                bit_errors.push(idx * bits as usize + lane as usize);
            }
        }
    }
    ComponentDecodeOutcome {
        fail: false,
        corrected,
        symbol_errors,
        bit_errors,
    }
}

/// Systematic encode shared by both families: message symbols occupy
/// the top degrees, parity is the remainder by the generator.
/// `symbol_bits` bounds the message alphabet (1 for binary BCH, whose
/// polynomial arithmetic still runs in the wider locator field).
pub(crate) fn systematic_encode(
    field: &GaloisField,
    generator: &Poly,
    n: usize,
    k: usize,
    symbol_bits: u32,
    message: &[Symbol],
) -> Result<Vec<Symbol>, Error> {
    if message.len() != k {
        return Err(Error::LengthMismatch { expected: k, got: message.len() });
    }
    let max = (1u32 << symbol_bits) as Symbol;
    if let Some(&bad) = message.iter().find(|&&m| m >= max) {
        return Err(Error::InvalidParameter(format!(
            "message symbol {bad} out of range for b={symbol_bits}"
        )));
    }
    let r = n - k;
    let mut dividend = vec![0 as Symbol; n];
    for (j, &m) in message.iter().enumerate() {
        dividend[n - 1 - j] = m;
    }
    let rem = Poly::new(dividend).rem(field, generator);
    let mut word = Vec::with_capacity(n);
    word.extend_from_slice(message);
    for j in 0..r {
        word.push(rem.coeff(r - 1 - j));
    }
    Ok(word)
}

/// XOR of all symbols, the extension parity value.
pub(crate) fn overall_parity(word: &[Symbol]) -> Symbol {
    word.iter().fold(0, |acc, &w| acc ^ w)
}

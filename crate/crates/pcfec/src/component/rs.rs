//! Reed-Solomon codes over GF(2^b) with generator roots alpha..alpha^2t.
//!
//! The parent length is 2^b - 1. Extended codes add one parity symbol,
//! the XOR of all base symbols, which the decoder reconciles lane by
//! lane: bit w of the parity symbol must match the parity of bit w over
//! the whole word.

use std::sync::Arc;

use crate::gf::{GaloisField, Symbol};
use crate::poly::Poly;
use crate::Error;

use super::solver::{build_solver, KeySolver};
use super::{
    apply_corrections, overall_parity, systematic_encode, BoundedCore, CodeFamily, CodeParams,
    CodeSpec, ComponentCodec, ComponentDecodeOutcome,
};

/// A (shortened, optionally extended) Reed-Solomon code.
pub struct ReedSolomon {
    params: CodeParams,
    core: BoundedCore,
    generator: Poly,
    solver: Arc<dyn KeySolver>,
}

impl ReedSolomon {
    pub fn from_spec(spec: &CodeSpec) -> Result<Self, Error> {
        if spec.b < 2 {
            return Err(Error::InvalidParameter(format!(
                "reed-solomon requires b>=2, got b={}",
                spec.b
            )));
        }
        if spec.t == 0 {
            return Err(Error::InvalidParameter("t must be at least 1".into()));
        }
        let parent_n = spec.n + spec.shorten_by;
        if parent_n != (1usize << spec.b) - 1 {
            return Err(Error::InvalidParameter(format!(
                "parent length {parent_n} must be 2^b - 1 = {} for b={}",
                (1usize << spec.b) - 1,
                spec.b
            )));
        }
        if spec.n <= spec.k || spec.n - spec.k != 2 * spec.t {
            return Err(Error::InvalidParameter(format!(
                "need n - k = 2t, got n={} k={} t={}",
                spec.n, spec.k, spec.t
            )));
        }
        if spec.k == 0 {
            return Err(Error::InvalidParameter(
                "shortening leaves no information symbols".into(),
            ));
        }
        let field = match spec.primitive_poly {
            Some(p) => GaloisField::with_polynomial(spec.b, p)?,
            None => GaloisField::new(spec.b)?,
        };
        let mut generator = Poly::one();
        for j in 1..=2 * spec.t {
            generator = generator.mul(&field, &Poly::new(vec![field.alpha_pow(j), 1]));
        }
        let solver = build_solver(&spec.solver)?;
        if let Some(max_t) = solver.max_t() {
            if spec.t > max_t {
                return Err(Error::InvalidParameter(format!(
                    "solver `{}` supports t<={max_t}, got t={}",
                    spec.solver, spec.t
                )));
            }
        }
        let params = CodeParams {
            family: CodeFamily::ReedSolomon,
            n: spec.n,
            k: spec.k,
            t: spec.t,
            b: spec.b,
            shorten_by: spec.shorten_by,
            extended: spec.extended,
        };
        let core = BoundedCore {
            field: Arc::new(field),
            parent_n,
            n: spec.n,
            t: spec.t,
            binary: false,
        };
        Ok(Self { params, core, generator, solver })
    }

    pub fn generator(&self) -> &Poly {
        &self.generator
    }

    pub fn field(&self) -> &GaloisField {
        &self.core.field
    }

    fn decode_extended(&self, word: &[Symbol]) -> ComponentDecodeOutcome {
        let n = self.params.n;
        let t = self.params.t;
        let base = &word[..n];
        let inner = self.decode_bounded(base);
        if inner.fail {
            return ComponentDecodeOutcome::failure(word);
        }
        let d = inner.symbol_errors.len();
        // Lane-wise parity mismatch after the proposed corrections: XOR of
        // every received symbol (parity included) and of every correction
        // magnitude.
        let mut pr = overall_parity(word);
        for &p in &inner.symbol_errors {
            pr ^= inner.corrected[p] ^ base[p];
        }
        if d < t {
            let mut out = inner;
            out.corrected.push(word[n] ^ pr);
            if pr != 0 {
                out.symbol_errors.push(n);
                let b = self.params.b as usize;
                for lane in 0..b {
                    if pr >> lane & 1 == 1 {
                        out.bit_errors.push(n * b + lane);
                    }
                }
            }
            out
        } else if pr == 0 {
            let mut out = inner;
            out.corrected.push(word[n]);
            out
        } else {
            ComponentDecodeOutcome::failure(word)
        }
    }
}

impl ComponentCodec for ReedSolomon {
    fn params(&self) -> &CodeParams {
        &self.params
    }

    fn encode(&self, message: &[Symbol]) -> Result<Vec<Symbol>, Error> {
        let mut word = systematic_encode(
            &self.core.field,
            &self.generator,
            self.params.n,
            self.params.k,
            self.params.b,
            message,
        )?;
        if self.params.extended {
            word.push(overall_parity(&word));
        }
        Ok(word)
    }

    fn decode_bounded(&self, word: &[Symbol]) -> ComponentDecodeOutcome {
        assert_eq!(word.len(), self.params.n, "base word length");
        match self.core.correct(word, self.solver.as_ref()) {
            Some(corrections) => apply_corrections(word, &corrections, self.params.b),
            None => ComponentDecodeOutcome::failure(word),
        }
    }

    fn decode(&self, word: &[Symbol]) -> ComponentDecodeOutcome {
        assert_eq!(word.len(), self.params.total_len(), "word length");
        if self.params.extended {
            self.decode_extended(word)
        } else {
            self.decode_bounded(word)
        }
    }

    fn is_codeword(&self, word: &[Symbol]) -> bool {
        if word.len() != self.params.total_len() {
            return false;
        }
        let base = &word[..self.params.n];
        if !self.core.syndromes(base).iter().all(|&s| s == 0) {
            return false;
        }
        !self.params.extended || overall_parity(word) == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs_7_3() -> ReedSolomon {
        ReedSolomon::from_spec(&CodeSpec::new("reed-solomon", 7, 3, 2, 3)).unwrap()
    }

    fn rs_8_3_ext() -> ReedSolomon {
        ReedSolomon::from_spec(&CodeSpec::new("reed-solomon", 7, 3, 2, 3).extended(true))
            .unwrap()
    }

    #[test]
    fn generator_has_degree_2t() {
        assert_eq!(rs_7_3().generator().degree(), Some(4));
        let rs31 =
            ReedSolomon::from_spec(&CodeSpec::new("reed-solomon", 31, 27, 2, 5)).unwrap();
        assert_eq!(rs31.generator().degree(), Some(4));
    }

    #[test]
    fn parameter_validation() {
        assert!(ReedSolomon::from_spec(&CodeSpec::new("reed-solomon", 7, 4, 2, 3)).is_err());
        assert!(ReedSolomon::from_spec(&CodeSpec::new("reed-solomon", 8, 4, 2, 3)).is_err());
        assert!(ReedSolomon::from_spec(&CodeSpec::new("reed-solomon", 7, 3, 2, 1)).is_err());
    }

    #[test]
    fn systematic_roundtrip() {
        let code = rs_7_3();
        for msg in [[1, 2, 3], [7, 7, 7], [0, 5, 1]] {
            let word = code.encode(&msg).unwrap();
            assert_eq!(&word[..3], &msg);
            assert!(code.is_codeword(&word));
        }
    }

    #[test]
    fn extension_symbol_is_sum_of_codeword_symbols() {
        let code = rs_8_3_ext();
        let word = code.encode(&[3, 1, 4]).unwrap();
        assert_eq!(word.len(), 8);
        let sum = word[..7].iter().fold(0, |acc, &w| acc ^ w);
        assert_eq!(word[7], sum);
    }

    #[test]
    fn corrects_up_to_t_symbol_errors() {
        let code = rs_7_3();
        let word = code.encode(&[5, 2, 6]).unwrap();
        for i in 0..7 {
            for mag in 1..8 as Symbol {
                let mut noisy = word.clone();
                noisy[i] ^= mag;
                let out = code.decode_bounded(&noisy);
                assert!(!out.fail, "i={i} mag={mag}");
                assert_eq!(out.corrected, word);
                assert_eq!(out.symbol_errors, vec![i]);
            }
        }
        for i in 0..7 {
            for j in i + 1..7 {
                let mut noisy = word.clone();
                noisy[i] ^= 3;
                noisy[j] ^= 6;
                let out = code.decode_bounded(&noisy);
                assert!(!out.fail);
                assert_eq!(out.corrected, word);
            }
        }
    }

    #[test]
    fn single_error_in_extended_word_is_corrected() {
        let code = rs_8_3_ext();
        let word = code.encode(&[2, 7, 1]).unwrap();
        for i in 0..7 {
            let mut noisy = word.clone();
            noisy[i] ^= 5;
            let out = code.decode(&noisy);
            assert!(!out.fail, "i={i}");
            assert_eq!(out.corrected, word);
        }
        // Error on the extension symbol itself.
        let mut noisy = word.clone();
        noisy[7] ^= 3;
        let out = code.decode(&noisy);
        assert!(!out.fail);
        assert_eq!(out.corrected, word);
        assert_eq!(out.symbol_errors, vec![7]);
    }

    #[test]
    fn bit_error_positions_reflect_magnitude_lanes() {
        let code = rs_7_3();
        let word = code.encode(&[0, 0, 0]).unwrap();
        let mut noisy = word.clone();
        noisy[2] ^= 0b101;
        let out = code.decode_bounded(&noisy);
        assert!(!out.fail);
        assert_eq!(out.symbol_errors, vec![2]);
        assert_eq!(out.bit_errors, vec![6, 8]);
    }
}

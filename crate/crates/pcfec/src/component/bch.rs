//! Binary BCH codes over GF(2) with locator arithmetic in GF(2^m).
//!
//! The parent code has length 2^m - 1; shortening fixes leading
//! information bits to zero. The generator is the least common multiple
//! of the minimal polynomials of alpha..alpha^2t, so its degree sets the
//! parity budget n - k.

use std::sync::Arc;

use crate::gf::{GaloisField, Symbol};
use crate::poly::Poly;
use crate::Error;

use super::solver::{build_solver, KeySolver};
use super::{
    apply_corrections, overall_parity, systematic_encode, BoundedCore, CodeFamily, CodeParams,
    CodeSpec, ComponentCodec, ComponentDecodeOutcome,
};

/// A (shortened, optionally extended) binary BCH code.
pub struct BinaryBch {
    params: CodeParams,
    core: BoundedCore,
    generator: Poly,
    solver: Arc<dyn KeySolver>,
}

impl BinaryBch {
    pub fn from_spec(spec: &CodeSpec) -> Result<Self, Error> {
        if spec.b != 1 {
            return Err(Error::InvalidParameter(format!(
                "binary-bch requires b=1, got b={}",
                spec.b
            )));
        }
        if spec.t == 0 {
            return Err(Error::InvalidParameter("t must be at least 1".into()));
        }
        let parent_n = spec.n + spec.shorten_by;
        let m = (usize::BITS - parent_n.leading_zeros()) as u32;
        if parent_n < 7 || parent_n != (1usize << m) - 1 {
            return Err(Error::InvalidParameter(format!(
                "parent length {parent_n} is not 2^m - 1 for any m >= 3"
            )));
        }
        if 2 * spec.t >= parent_n {
            return Err(Error::InvalidParameter(format!(
                "t={} too large for parent length {parent_n}",
                spec.t
            )));
        }
        let field = match spec.primitive_poly {
            Some(p) => GaloisField::with_polynomial(m, p)?,
            None => GaloisField::new(m)?,
        };
        let generator = bch_generator(&field, spec.t);
        let r = generator.degree().expect("generator is nonzero");
        let parent_k = parent_n - r;
        if spec.k + spec.shorten_by != parent_k {
            return Err(Error::InvalidParameter(format!(
                "k={} inconsistent with BCH({parent_n},{parent_k},{}) shortened by {}",
                spec.k, spec.t, spec.shorten_by
            )));
        }
        if spec.k == 0 {
            return Err(Error::InvalidParameter(
                "shortening leaves no information bits".into(),
            ));
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
            family: CodeFamily::BinaryBch,
            n: spec.n,
            k: spec.k,
            t: spec.t,
            b: 1,
            shorten_by: spec.shorten_by,
            extended: spec.extended,
        };
        let core = BoundedCore {
            field: Arc::new(field),
            parent_n,
            n: spec.n,
            t: spec.t,
            binary: true,
        };
        Ok(Self { params, core, generator, solver })
    }

    pub fn generator(&self) -> &Poly {
        &self.generator
    }

    pub fn locator_field(&self) -> &GaloisField {
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
        // Parity mismatch after applying the proposed corrections.
        let pr = (d as Symbol & 1) ^ (overall_parity(word) & 1);
        if d < t {
            let mut out = inner;
            out.corrected.push(word[n] ^ pr);
            if pr == 1 {
                out.symbol_errors.push(n);
                out.bit_errors.push(n);
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

impl ComponentCodec for BinaryBch {
    fn params(&self) -> &CodeParams {
        &self.params
    }

    fn encode(&self, message: &[Symbol]) -> Result<Vec<Symbol>, Error> {
        let mut word = systematic_encode(
            &self.core.field,
            &self.generator,
            self.params.n,
            self.params.k,
            1,
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
            Some(corrections) => apply_corrections(word, &corrections, 1),
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

/// lcm of the minimal polynomials of alpha^1..alpha^2t, computed from the
/// cyclotomic cosets of the exponents. Coefficients come out in {0,1}.
fn bch_generator(field: &GaloisField, t: usize) -> Poly {
    let order = field.order();
    let mut covered = vec![false; order];
    let mut generator = Poly::one();
    for j in 1..=2 * t {
        if covered[j] {
            continue;
        }
        let mut minimal = Poly::one();
        let mut e = j;
        loop {
            covered[e] = true;
            minimal = minimal.mul(field, &Poly::new(vec![field.alpha_pow(e), 1]));
            e = e * 2 % order;
            if e == j {
                break;
            }
        }
        generator = generator.mul(field, &minimal);
    }
    debug_assert!(generator.coeffs().iter().all(|&c| c <= 1));
    generator
}

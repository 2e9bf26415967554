//! Polynomials over GF(2^b), lowest-degree coefficient first.
//!
//! Carrier type for generator, syndrome, locator, and evaluator
//! polynomials. Kept in canonical form: no trailing zero coefficients,
//! so the zero polynomial is the empty coefficient vector.

use crate::gf::{GaloisField, Symbol};

/// A polynomial with coefficients in GF(2^b), `coeffs[i]` multiplying x^i.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Symbol>,
}

impl Poly {
    /// The zero polynomial.
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    /// The constant polynomial `1`.
    pub fn one() -> Self {
        Self { coeffs: vec![1] }
    }

    /// Builds from coefficients (lowest degree first), trimming to
    /// canonical form.
    pub fn new(coeffs: Vec<Symbol>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of x^i (zero beyond the stored length).
    #[inline]
    pub fn coeff(&self, i: usize) -> Symbol {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[Symbol] {
        &self.coeffs
    }

    /// Horner evaluation at `x`.
    pub fn eval(&self, field: &GaloisField, x: Symbol) -> Symbol {
        let mut acc: Symbol = 0;
        for &c in self.coeffs.iter().rev() {
            acc = field.mul(acc, x) ^ c;
        }
        acc
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) ^ other.coeff(i));
        }
        Poly::new(out)
    }

    pub fn mul(&self, field: &GaloisField, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![0 as Symbol; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] ^= field.mul(a, b);
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, field: &GaloisField, c: Symbol) -> Poly {
        Poly::new(self.coeffs.iter().map(|&a| field.mul(a, c)).collect())
    }

    /// Multiplies by x^k.
    pub fn shift_up(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![0 as Symbol; k];
        out.extend_from_slice(&self.coeffs);
        Poly { coeffs: out }
    }

    /// Remainder of `self` divided by `divisor` (which must be nonzero).
    pub fn rem(&self, field: &GaloisField, divisor: &Poly) -> Poly {
        let ddeg = divisor.degree().expect("division by zero polynomial");
        let lead_inv = field
            .inv(divisor.coeff(ddeg))
            .expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        while rem.len() > ddeg {
            let pos = rem.len() - 1;
            let factor = field.mul(rem[pos], lead_inv);
            if factor != 0 {
                for i in 0..=ddeg {
                    rem[pos - ddeg + i] ^= field.mul(factor, divisor.coeff(i));
                }
            }
            rem.pop();
        }
        Poly::new(rem)
    }

    /// Truncates to terms of degree < k.
    pub fn truncated(&self, k: usize) -> Poly {
        Poly::new(self.coeffs.iter().take(k).copied().collect())
    }

    /// Formal derivative. In characteristic 2 only odd-degree terms
    /// survive, shifted down by one.
    pub fn derivative(&self) -> Poly {
        let mut out = Vec::new();
        for i in 1..self.coeffs.len() {
            out.push(if i % 2 == 1 { self.coeffs[i] } else { 0 });
        }
        Poly::new(out)
    }
}

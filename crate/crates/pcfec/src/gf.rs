//! GF(2^b) arithmetic backed by log/antilog tables.
//!
//! A [`GaloisField`] is built once from an extension degree `b` and a
//! primitive polynomial, then shared read-only between encoders and
//! decoders. Elements are stored in polynomial basis as plain integers
//! ([`Symbol`]), addition is XOR, and multiplication goes through the
//! tables. Construction verifies that `x` generates the full
//! multiplicative group, so a non-primitive polynomial is rejected
//! instead of silently producing a broken field.

use crate::Error;

/// A field element in polynomial basis. Wide enough for `b <= 16`.
pub type Symbol = u16;

/// Default primitive polynomials per extension degree, including the
/// leading term (index = b - 1). These are the conventional choices;
/// any of them can be overridden at construction time.
const DEFAULT_POLYS: [u32; 16] = [
    0x3,     // b=1:  x + 1
    0x7,     // b=2:  x^2 + x + 1
    0xB,     // b=3:  x^3 + x + 1
    0x13,    // b=4:  x^4 + x + 1
    0x25,    // b=5:  x^5 + x^2 + 1
    0x43,    // b=6:  x^6 + x + 1
    0x89,    // b=7:  x^7 + x^3 + 1
    0x11D,   // b=8:  x^8 + x^4 + x^3 + x^2 + 1
    0x211,   // b=9:  x^9 + x^4 + 1
    0x409,   // b=10: x^10 + x^3 + 1
    0x805,   // b=11: x^11 + x^2 + 1
    0x1053,  // b=12: x^12 + x^6 + x^4 + x + 1
    0x201B,  // b=13: x^13 + x^4 + x^3 + x + 1
    0x4443,  // b=14: x^14 + x^10 + x^6 + x + 1
    0x8003,  // b=15: x^15 + x + 1
    0x1100B, // b=16: x^16 + x^12 + x^3 + x + 1
];

/// GF(2^b) with precomputed log/antilog tables.
///
/// `antilog[i]` is alpha^i for `i` in `0..order` (mirrored once so
/// products can index without a modulo), and `log[a]` inverts it for
/// nonzero `a`. The struct is immutable after construction and safe to
/// share across threads.
#[derive(Debug, Clone)]
pub struct GaloisField {
    bits: u32,
    poly: u32,
    order: usize, // 2^b - 1
    antilog: Vec<Symbol>,
    log: Vec<Symbol>,
}

impl GaloisField {
    /// Builds GF(2^b) with the conventional primitive polynomial for `b`.
    pub fn new(bits: u32) -> Result<Self, Error> {
        let poly = *DEFAULT_POLYS
            .get(bits.wrapping_sub(1) as usize)
            .ok_or_else(|| Error::InvalidParameter(format!("unsupported field width b={bits}")))?;
        Self::with_polynomial(bits, poly)
    }

    /// Builds GF(2^b) from an explicit polynomial bitmask (leading term
    /// included, e.g. `0x13` for x^4 + x + 1).
    pub fn with_polynomial(bits: u32, poly: u32) -> Result<Self, Error> {
        if bits == 0 || bits > 16 {
            return Err(Error::InvalidParameter(format!(
                "field width b={bits} out of range 1..=16"
            )));
        }
        if poly >> bits != 1 {
            return Err(Error::InvalidParameter(format!(
                "polynomial {poly:#x} does not have degree {bits}"
            )));
        }
        let order = (1usize << bits) - 1;
        let size = 1usize << bits;
        let mut antilog = vec![0 as Symbol; 2 * order];
        let mut log = vec![0 as Symbol; size];

        // alpha = x; repeated multiplication by x with reduction walks the
        // powers of alpha. For b = 1 this degenerates to alpha = 1.
        let mut value: u32 = 1;
        for i in 0..order {
            if log[value as usize] != 0 || (value == 1 && i > 0) {
                // Returned to an already-seen element before exhausting the
                // group: x is not primitive modulo `poly`.
                return Err(Error::NotPrimitive { bits, poly });
            }
            antilog[i] = value as Symbol;
            antilog[i + order] = value as Symbol;
            log[value as usize] = i as Symbol;
            value <<= 1;
            if value >> bits != 0 {
                value ^= poly;
            }
        }
        if value != 1 {
            return Err(Error::NotPrimitive { bits, poly });
        }
        Ok(Self { bits, poly, order, antilog, log })
    }

    /// Bits per symbol.
    #[inline]
    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// The polynomial the field was built from.
    #[inline]
    pub fn polynomial(&self) -> u32 {
        self.poly
    }

    /// Size of the multiplicative group, 2^b - 1.
    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    /// Number of field elements, 2^b.
    #[inline]
    pub fn size(&self) -> usize {
        self.order + 1
    }

    /// alpha^i (exponent taken modulo the group order).
    #[inline]
    pub fn alpha_pow(&self, i: usize) -> Symbol {
        self.antilog[i % self.order]
    }

    /// Discrete log of a nonzero element.
    #[inline]
    pub fn log(&self, a: Symbol) -> usize {
        debug_assert!(a != 0, "log of zero");
        self.log[a as usize] as usize
    }

    /// Field addition: bitwise XOR, commutative and self-inverse.
    #[inline]
    pub fn add(&self, a: Symbol, b: Symbol) -> Symbol {
        a ^ b
    }

    /// Field multiplication via the tables; zero is absorbing.
    #[inline]
    pub fn mul(&self, a: Symbol, b: Symbol) -> Symbol {
        if a == 0 || b == 0 {
            return 0;
        }
        self.antilog[self.log[a as usize] as usize + self.log[b as usize] as usize]
    }

    /// Multiplicative inverse. Zero has none.
    pub fn inv(&self, a: Symbol) -> Result<Symbol, Error> {
        if a == 0 {
            return Err(Error::InvalidParameter("inverse of zero".into()));
        }
        let l = self.log[a as usize] as usize;
        Ok(self.antilog[self.order - l])
    }

    /// `a / b`; errors when `b` is zero.
    pub fn div(&self, a: Symbol, b: Symbol) -> Result<Symbol, Error> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e` by table lookup; `0^0 = 1` by convention.
    pub fn pow(&self, a: Symbol, e: usize) -> Symbol {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let l = self.log[a as usize] as usize;
        self.antilog[(l * e) % self.order]
    }
}

//! Arithmetic in GF(2^r) for 1 <= r <= 32.
//!
//! Elements are the low `r` bits of a `u64`, read as polynomials over GF(2).
//! Multiplication is carry-less multiplication followed by reduction modulo
//! a fixed irreducible polynomial of degree `r`.

/// Irreducible polynomial of degree `r` (leading bit included), indexed by `r`.
const IRREDUCIBLE: [u64; 33] = [
    0,
    0b11,                     // x + 1
    0b111,                    // x^2 + x + 1
    0b1011,                   // x^3 + x + 1
    0x13,                     // x^4 + x + 1
    0x25,                     // x^5 + x^2 + 1
    0x43,                     // x^6 + x + 1
    0x83,                     // x^7 + x + 1
    0x11B,                    // x^8 + x^4 + x^3 + x + 1
    0x211,                    // x^9 + x^4 + 1
    0x409,                    // x^10 + x^3 + 1
    0x805,                    // x^11 + x^2 + 1
    0x1053,                   // x^12 + x^6 + x^4 + x + 1
    0x201B,                   // x^13 + x^4 + x^3 + x + 1
    0x4443,                   // x^14 + x^10 + x^6 + x + 1
    0x8003,                   // x^15 + x + 1
    0x1100B,                  // x^16 + x^12 + x^3 + x + 1
    0x20009,                  // x^17 + x^3 + 1
    0x40081,                  // x^18 + x^7 + 1
    0x80027,                  // x^19 + x^5 + x^2 + x + 1
    0x100009,                 // x^20 + x^3 + 1
    0x200005,                 // x^21 + x^2 + 1
    0x400003,                 // x^22 + x + 1
    0x800021,                 // x^23 + x^5 + 1
    0x1000087,                // x^24 + x^7 + x^2 + x + 1
    0x2000009,                // x^25 + x^3 + 1
    0x4000047,                // x^26 + x^6 + x^2 + x + 1
    0x8000027,                // x^27 + x^5 + x^2 + x + 1
    0x10000009,               // x^28 + x^3 + 1
    0x20000005,               // x^29 + x^2 + 1
    0x40800007,               // x^30 + x^23 + x^2 + x + 1
    0x80000009,               // x^31 + x^3 + 1
    0x1_0040_0007,            // x^32 + x^22 + x^2 + x + 1
];

pub const MAX_BITS: u32 = 32;

/// The field GF(2^r).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BinaryField {
    bits: u32,
    modulus: u64,
}

impl BinaryField {
    /// Panics unless `1 <= bits <= 32`.
    pub fn new(bits: u32) -> Self {
        assert!(
            (1..=MAX_BITS).contains(&bits),
            "GF(2^r) supported for 1 <= r <= {MAX_BITS}, got {bits}"
        );
        Self {
            bits,
            modulus: IRREDUCIBLE[bits as usize],
        }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn order(&self) -> u64 {
        1u64 << self.bits
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        a ^ b
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        reduce(clmul(a, b), self.modulus, self.bits)
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }
}

/// Carry-less product of two values below 2^32.
#[inline]
pub fn clmul(a: u64, b: u64) -> u64 {
    let mut acc = 0u64;
    let mut b = b;
    let mut shift = 0;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a << shift;
        }
        b >>= 1;
        shift += 1;
    }
    acc
}

/// Remainder of `value` modulo the degree-`bits` polynomial `modulus`.
#[inline]
pub fn reduce(mut value: u64, modulus: u64, bits: u32) -> u64 {
    let mut deg = 63 - value.leading_zeros().min(63);
    while value >> bits != 0 {
        value ^= modulus << (deg - bits);
        deg = 63 - value.leading_zeros().min(63);
    }
    value
}

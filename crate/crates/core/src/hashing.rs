//! Almost-universal hash families over vertex ids.
//!
//! The shipped family is the polynomial MAC construction: the domain is
//! `{0,1}^u`, a key `x` is cut into `u/r` chunks `x_0..x_{u/r-1}` of `r`
//! bits each, and member `a` of GF(2^r) maps `x` to `sum_i x_i a^i`. Two
//! distinct keys collide for at most `u/r - 1` members (roots of a nonzero
//! polynomial of that degree), and for a fixed member every range value has
//! exactly `2^(u-r)` preimages.

use thiserror::Error;

use crate::gf2::{BinaryField, MAX_BITS};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HashError {
    #[error("range width r={r_bits} must divide domain width u={u_bits}")]
    RangeDoesNotDivide { u_bits: u32, r_bits: u32 },
    #[error("range width r={0} outside 1..={MAX_BITS}")]
    RangeWidth(u32),
    #[error("domain width u={0} exceeds 64 bits")]
    DomainWidth(u32),
    #[error("no stable (delta, range) pair for n={n}, f={f} within {MAX_BITS}-bit ranges")]
    NoParameters { n: usize, f: usize },
}

/// A finite family of functions from `0..domain_size()` to `0..range_size()`.
pub trait HashFamily {
    fn members(&self) -> usize;

    fn range_size(&self) -> usize;

    fn domain_size(&self) -> u64;

    /// Almost-universality parameter: any two distinct keys collide with
    /// probability at most `delta / range_size` over a uniform member.
    fn delta(&self) -> usize;

    fn hash(&self, member: usize, x: u64) -> usize;

    fn describe(&self) -> String;
}

/// `h_a(x) = M_x(a)` over GF(2^r).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyHashFamily {
    u_bits: u32,
    r_bits: u32,
    field: BinaryField,
}

impl PolyHashFamily {
    pub fn new(u_bits: u32, r_bits: u32) -> Result<Self, HashError> {
        if !(1..=MAX_BITS).contains(&r_bits) {
            return Err(HashError::RangeWidth(r_bits));
        }
        if u_bits > 64 {
            return Err(HashError::DomainWidth(u_bits));
        }
        if u_bits == 0 || u_bits % r_bits != 0 {
            return Err(HashError::RangeDoesNotDivide { u_bits, r_bits });
        }
        Ok(Self {
            u_bits,
            r_bits,
            field: BinaryField::new(r_bits),
        })
    }

    /// Smallest domain `{0,1}^u` with `r | u` holding `n` vertex ids.
    pub fn for_vertices(n: usize, r_bits: u32) -> Result<Self, HashError> {
        let need = ceil_log2(n.max(1) as u64);
        let chunks = need.div_ceil(r_bits).max(1);
        Self::new(chunks * r_bits, r_bits)
    }

    pub fn u_bits(&self) -> u32 {
        self.u_bits
    }

    pub fn r_bits(&self) -> u32 {
        self.r_bits
    }

    pub fn chunks(&self) -> u32 {
        self.u_bits / self.r_bits
    }

    /// Evaluates member `a` at key `x` by Horner's rule.
    #[inline]
    pub fn eval(&self, a: u64, x: u64) -> u64 {
        debug_assert!(a < self.field.order());
        debug_assert!(self.u_bits == 64 || x >> self.u_bits == 0);
        let mask = self.field.order() - 1;
        let mut acc = 0u64;
        for i in (0..self.chunks()).rev() {
            let chunk = (x >> (i * self.r_bits)) & mask;
            acc = self.field.add(self.field.mul(acc, a), chunk);
        }
        acc
    }
}

impl HashFamily for PolyHashFamily {
    fn members(&self) -> usize {
        1usize << self.r_bits
    }

    fn range_size(&self) -> usize {
        1usize << self.r_bits
    }

    fn domain_size(&self) -> u64 {
        if self.u_bits == 64 {
            u64::MAX
        } else {
            1u64 << self.u_bits
        }
    }

    fn delta(&self) -> usize {
        self.chunks() as usize
    }

    fn hash(&self, member: usize, x: u64) -> usize {
        self.eval(member as u64, x) as usize
    }

    fn describe(&self) -> String {
        format!("poly-mac(u={}, r={})", self.u_bits, self.r_bits)
    }
}

pub(crate) fn ceil_log2(x: u64) -> u32 {
    if x <= 1 {
        0
    } else {
        64 - (x - 1).leading_zeros()
    }
}

/// Resolved parameters of the MAC family for a given `n` and `f`.
#[derive(Clone, Debug, PartialEq)]
pub struct HashParameters {
    /// `delta` the range was sized for (`|R| >= 4 * delta * f`).
    pub delta_sized: usize,
    /// `ceil(u / r)` of the resulting family; never above `delta_sized`.
    pub delta: usize,
    pub family: PolyHashFamily,
    pub rounds: usize,
}

/// Resolves the mutual dependence of the range (`4 delta f`, rounded up to a
/// power of two) and `delta = ceil(u / r)` by iterating to a fixed point,
/// starting from `delta_target`.
pub fn choose_parameters(
    n: usize,
    f: usize,
    delta_target: usize,
) -> Result<HashParameters, HashError> {
    let f = f.max(1);
    let mut delta = delta_target.max(1);
    for round in 1..=64 {
        let buckets = (4 * delta * f) as u64;
        let r_bits = ceil_log2(buckets).max(1);
        if r_bits > MAX_BITS {
            break;
        }
        let family = PolyHashFamily::for_vertices(n, r_bits)?;
        let achieved = family.delta();
        if achieved <= delta {
            return Ok(HashParameters {
                delta_sized: delta,
                delta: achieved,
                family,
                rounds: round,
            });
        }
        delta = achieved;
    }
    Err(HashError::NoParameters { n, f })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_member_returns_low_chunk() {
        let fam = PolyHashFamily::new(12, 3).unwrap();
        for x in 0..(1u64 << 12) {
            assert_eq!(fam.eval(0, x), x & 0b111);
        }
    }

    #[test]
    fn gf4_worked_example() {
        let fam = PolyHashFamily::new(4, 2).unwrap();
        assert_eq!(fam.eval(0b01, 0b0111), 0b10);
    }

    #[test]
    fn rejects_non_dividing_widths() {
        assert_eq!(
            PolyHashFamily::new(5, 2),
            Err(HashError::RangeDoesNotDivide { u_bits: 5, r_bits: 2 })
        );
        assert_eq!(PolyHashFamily::new(8, 0), Err(HashError::RangeWidth(0)));
    }

    #[test]
    fn padded_domain() {
        let fam = PolyHashFamily::for_vertices(800, 5).unwrap();
        assert_eq!(fam.u_bits(), 10);
        assert_eq!(fam.delta(), 2);
        let fam = PolyHashFamily::for_vertices(1, 3).unwrap();
        assert_eq!(fam.u_bits(), 3);
        assert_eq!(fam.delta(), 1);
    }

    #[test]
    fn exhaustive_collisions_u4_r2() {
        let fam = PolyHashFamily::new(4, 2).unwrap();
        for x in 0..16u64 {
            for y in 0..16u64 {
                if x == y {
                    continue;
                }
                let collisions = (0..4).filter(|&a| fam.eval(a, x) == fam.eval(a, y)).count();
                assert!(collisions <= 1, "x={x} y={y} collide {collisions} times");
            }
        }
    }

    #[test]
    fn fixed_point_parameters() {
        // n=16, f=1: range 8 -> r=3, u=6, delta=2 immediately
        let p = choose_parameters(16, 1, 2).unwrap();
        assert_eq!((p.family.r_bits(), p.family.u_bits(), p.delta), (3, 6, 2));
        // n=200, f=1: r=3 gives u=9, delta=3 > 2; resize for delta 3 -> r=4, u=8
        let p = choose_parameters(200, 1, 2).unwrap();
        assert_eq!((p.family.r_bits(), p.family.u_bits()), (4, 8));
        assert_eq!((p.delta_sized, p.delta, p.rounds), (3, 2, 2));
        // the range always covers 4 * delta * f buckets
        for n in [2usize, 10, 100, 1000, 5000] {
            for f in 1..6 {
                let p = choose_parameters(n, f, 2).unwrap();
                assert!(p.family.range_size() >= 4 * p.delta * f);
                assert!(p.family.range_size() >= 4 * p.delta_sized * f);
                assert!(p.delta <= p.delta_sized);
                assert!(p.rounds <= 3);
            }
        }
    }
}

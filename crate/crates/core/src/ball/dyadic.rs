//! Exact dyadic rationals `mant · 2^exp` with arbitrary-precision mantissa.
//!
//! These are the endpoints of every interval in the crate. Ring operations
//! (add, sub, mul) are exact; rounding to a working precision happens only
//! where an interval operation asks for it, with an explicit direction, so
//! enclosures never silently shrink.

use num::bigint::{BigInt, Sign};
use num::{BigRational, Integer, One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

/// Rounding direction for [`Dyadic::round`] and the directed helpers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Round {
    /// Toward −∞.
    Floor,
    /// Toward +∞.
    Ceil,
}

/// An exact value `mant · 2^exp`. Zero is stored as `(0, 0)`; nonzero
/// mantissas are kept odd so equal values have equal representations.
#[derive(Clone, PartialEq, Eq)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

impl Dyadic {
    pub fn new(mant: BigInt, exp: i64) -> Self {
        let mut d = Dyadic { mant, exp };
        d.normalize();
        d
    }

    fn normalize(&mut self) {
        if self.mant.is_zero() {
            self.exp = 0;
            return;
        }
        let tz = self.mant.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.mant >>= tz;
            self.exp += tz as i64;
        }
    }

    pub fn zero() -> Self {
        Dyadic { mant: BigInt::zero(), exp: 0 }
    }

    pub fn one() -> Self {
        Dyadic { mant: BigInt::one(), exp: 0 }
    }

    pub fn from_bigint(n: &BigInt) -> Self {
        Dyadic::new(n.clone(), 0)
    }

    pub fn from_i64(n: i64) -> Self {
        Dyadic::new(BigInt::from(n), 0)
    }

    /// `2^k`.
    pub fn pow2(k: i64) -> Self {
        Dyadic { mant: BigInt::one(), exp: k }
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    /// Sign as −1, 0, +1.
    pub fn signum(&self) -> i32 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn neg(&self) -> Self {
        Dyadic { mant: -&self.mant, exp: self.exp }
    }

    pub fn abs(&self) -> Self {
        Dyadic { mant: self.mant.abs(), exp: self.exp }
    }

    /// Exact sum.
    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &other.mant << (other.exp - e) as u64;
        Dyadic::new(a + b, e)
    }

    /// Exact difference.
    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Exact product.
    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Dyadic::zero();
        }
        Dyadic { mant: &self.mant * &other.mant, exp: self.exp + other.exp }
    }

    /// Exact product with `2^k`.
    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return Dyadic::zero();
        }
        Dyadic { mant: self.mant.clone(), exp: self.exp + k }
    }

    /// Number of bits of the mantissa (0 for zero).
    pub fn mant_bits(&self) -> u64 {
        self.mant.bits()
    }

    /// ⌊log₂ |x|⌋ for nonzero `x`: the unique `k` with `2^k ≤ |x| < 2^{k+1}`.
    pub fn floor_log2(&self) -> i64 {
        debug_assert!(!self.is_zero());
        self.exp + self.mant.bits() as i64 - 1
    }

    /// Round to at most `prec` mantissa bits in the given direction.
    pub fn round(&self, prec: u32, dir: Round) -> Self {
        let bits = self.mant.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let drop = (bits - prec as u64) as i64;
        let shifted = &self.mant >> drop as u64;
        let back = &shifted << drop as u64;
        let exact = back == self.mant;
        let mut m = shifted;
        if !exact {
            // BigInt shr truncates toward -∞ for negatives? num's BigInt >>
            // is arithmetic shift toward -∞ only for two's complement types;
            // for sign-magnitude BigInt it truncates toward zero. Fix up both
            // directions explicitly from the exact comparison.
            let truncated_low = &m << drop as u64;
            let went_down = truncated_low < self.mant;
            match dir {
                Round::Floor => {
                    if !went_down {
                        m -= 1;
                    }
                }
                Round::Ceil => {
                    if went_down {
                        m += 1;
                    }
                }
            }
        }
        Dyadic::new(m, self.exp + drop)
    }

    /// Directed division: a value `q` with `q ≤ self/other` (Floor) or
    /// `q ≥ self/other` (Ceil), accurate to `prec` bits.
    pub fn div(&self, other: &Self, prec: u32, dir: Round) -> Self {
        assert!(!other.is_zero(), "dyadic division by zero");
        if self.is_zero() {
            return Dyadic::zero();
        }
        // Scale numerator so the integer quotient carries prec+2 bits.
        let na = self.mant.bits() as i64;
        let nb = other.mant.bits() as i64;
        let shift = (nb - na + prec as i64 + 2).max(0);
        let num = &self.mant << shift as u64;
        let (q, r) = num.div_rem(&other.mant);
        let exact = r.is_zero();
        let mut q = q;
        if !exact {
            // div_rem truncates toward zero.
            let quotient_negative = (self.signum() < 0) != (other.signum() < 0);
            match dir {
                Round::Floor => {
                    if quotient_negative {
                        q -= 1;
                    }
                }
                Round::Ceil => {
                    if !quotient_negative {
                        q += 1;
                    }
                }
            }
        }
        Dyadic::new(q, self.exp - other.exp - shift).round(prec + 4, dir)
    }

    /// Directed square root of a non-negative value, accurate to `prec` bits.
    pub fn sqrt(&self, prec: u32, dir: Round) -> Self {
        assert!(self.signum() >= 0, "sqrt of negative dyadic");
        if self.is_zero() {
            return Dyadic::zero();
        }
        // Write self = m · 2^(2f) with enough fractional bits, take isqrt.
        let guard = 2 * prec as i64 + 8;
        let mut m = self.mant.clone();
        let mut e = self.exp;
        let extra = guard + (e.rem_euclid(2));
        m <<= extra as u64;
        e -= extra;
        debug_assert!(e % 2 == 0);
        let root = m.sqrt(); // floor sqrt
        let exact = &root * &root == m;
        let r = match (dir, exact) {
            (Round::Floor, _) => root,
            (Round::Ceil, true) => root,
            (Round::Ceil, false) => root + 1,
        };
        Dyadic::new(r, e / 2).round(prec + 4, dir)
    }

    /// Best-effort conversion for reporting. Saturates on overflow.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        // Use the top 64 bits of the mantissa plus the exponent.
        let bits = self.mant.bits();
        let (top, shift) = if bits > 64 {
            let s = bits - 64;
            ((&self.mant >> s).to_string(), s)
        } else {
            (self.mant.to_string(), 0)
        };
        let top: f64 = top.parse().unwrap_or(f64::NAN);
        let e = self.exp + shift as i64;
        top * 2f64.powi(e.clamp(-2_000_000, 2_000_000) as i32)
    }

    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.mant << self.exp as u64)
        } else {
            BigRational::new(self.mant.clone(), BigInt::one() << (-self.exp) as u64)
        }
    }

    pub fn from_rational_dir(q: &BigRational, prec: u32, dir: Round) -> Self {
        Dyadic::from_bigint(q.numer()).div(&Dyadic::from_bigint(q.denom()), prec, dir)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let s = self.signum();
        let o = other.signum();
        if s != o {
            return s.cmp(&o);
        }
        if s == 0 {
            return Ordering::Equal;
        }
        // Same sign: compare magnitudes cheaply by floor_log2 first.
        let la = self.floor_log2();
        let lb = other.floor_log2();
        if la != lb {
            let mag = la.cmp(&lb);
            return if s > 0 { mag } else { mag.reverse() };
        }
        self.sub(other).signum().cmp(&0)
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}·2^{}", self.mant, self.exp)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(m: i64, e: i64) -> Dyadic {
        Dyadic::new(BigInt::from(m), e)
    }

    #[test]
    fn normalization_cancels_trailing_zeros() {
        assert_eq!(d(8, 0), d(1, 3));
        assert_eq!(d(12, -2), d(3, 0));
        assert!(d(0, 5).is_zero());
    }

    #[test]
    fn exact_ring_ops() {
        // 3/4 + 5/2 = 13/4
        assert_eq!(d(3, -2).add(&d(5, -1)), d(13, -2));
        assert_eq!(d(3, -2).mul(&d(5, -1)), d(15, -3));
        assert_eq!(d(7, 0).sub(&d(7, 0)), Dyadic::zero());
    }

    #[test]
    fn ordering() {
        assert!(d(1, -1) < d(1, 0));
        assert!(d(-1, 10) < d(1, -10));
        assert!(d(5, -3) < d(11, -4)); // 0.625 < 0.6875
        assert_eq!(d(4, 0).cmp(&d(1, 2)), Ordering::Equal);
    }

    #[test]
    fn rounding_directions() {
        // 19 = 0b10011; 3-bit mantissas near it are 16 (1·2^4) and 20 (5·2^2)
        let x = d(19, 0);
        assert_eq!(x.round(3, Round::Floor), d(16, 0));
        assert_eq!(x.round(3, Round::Ceil), d(20, 0));
        let y = d(-19, 0);
        assert_eq!(y.round(3, Round::Floor), d(-20, 0));
        assert_eq!(y.round(3, Round::Ceil), d(-16, 0));
        // already short: unchanged
        assert_eq!(d(5, -1).round(10, Round::Floor), d(5, -1));
    }

    #[test]
    fn division_brackets_true_quotient() {
        let a = d(1, 0);
        let b = d(3, 0);
        let lo = a.div(&b, 30, Round::Floor);
        let hi = a.div(&b, 30, Round::Ceil);
        assert!(lo < hi);
        let third = 1.0 / 3.0;
        assert!(lo.to_f64() <= third && third <= hi.to_f64());
        assert!(hi.sub(&lo).to_f64() < 1e-8);
        // negative quotient
        let lo = a.neg().div(&b, 30, Round::Floor);
        let hi = a.neg().div(&b, 30, Round::Ceil);
        assert!(lo.to_f64() <= -third && -third <= hi.to_f64());
    }

    #[test]
    fn sqrt_brackets() {
        let two = d(2, 0);
        let lo = two.sqrt(40, Round::Floor);
        let hi = two.sqrt(40, Round::Ceil);
        assert!(lo.mul(&lo) <= two && two <= hi.mul(&hi));
        assert!(hi.sub(&lo).to_f64() < 1e-10);
        // exact square stays exact both ways
        assert_eq!(d(9, 0).sqrt(10, Round::Floor), d(3, 0));
        assert_eq!(d(9, 0).sqrt(10, Round::Ceil), d(3, 0));
    }

    #[test]
    fn floor_log2_matches_definition() {
        assert_eq!(d(1, 0).floor_log2(), 0);
        assert_eq!(d(3, 0).floor_log2(), 1);
        assert_eq!(d(1, -3).floor_log2(), -3);
        assert_eq!(d(5, -3).floor_log2(), -1); // 0.625
    }

    #[test]
    fn f64_conversion() {
        assert!((d(3, -2).to_f64() - 0.75).abs() < 1e-15);
        assert!((d(-7, 3).to_f64() + 56.0).abs() < 1e-12);
    }
}

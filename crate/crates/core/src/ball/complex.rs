//! Rectangular complex intervals: a pair of real intervals for the real and
//! imaginary parts. Rectangles are slightly looser than disks but make the
//! directed-rounding story identical to the real case.

use super::dyadic::Dyadic;
use super::interval::{Iv, Prec};
use num::BigInt;

/// A complex rectangle `re + i·im`.
#[derive(Clone, Debug, PartialEq)]
pub struct CIv {
    pub re: Iv,
    pub im: Iv,
}

impl CIv {
    pub fn new(re: Iv, im: Iv) -> Self {
        CIv { re, im }
    }

    pub fn from_real(re: Iv) -> Self {
        CIv { re, im: Iv::zero() }
    }

    pub fn from_bigint(n: &BigInt) -> Self {
        CIv::from_real(Iv::from_bigint(n))
    }

    pub fn from_i64(n: i64) -> Self {
        CIv::from_real(Iv::from_i64(n))
    }

    pub fn zero() -> Self {
        CIv { re: Iv::zero(), im: Iv::zero() }
    }

    pub fn one() -> Self {
        CIv { re: Iv::one(), im: Iv::zero() }
    }

    /// Centered rectangle `center ± radius` in both components.
    pub fn centered(re: Dyadic, im: Dyadic, radius: &Dyadic) -> Self {
        let r = radius.abs();
        CIv {
            re: Iv::new(re.sub(&r), re.add(&r)),
            im: Iv::new(im.sub(&r), im.add(&r)),
        }
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    pub fn conj(&self) -> Self {
        CIv { re: self.re.clone(), im: self.im.neg() }
    }

    pub fn neg(&self) -> Self {
        CIv { re: self.re.neg(), im: self.im.neg() }
    }

    pub fn add(&self, other: &Self, p: Prec) -> Self {
        CIv {
            re: self.re.add(&other.re, p),
            im: self.im.add(&other.im, p),
        }
    }

    pub fn sub(&self, other: &Self, p: Prec) -> Self {
        CIv {
            re: self.re.sub(&other.re, p),
            im: self.im.sub(&other.im, p),
        }
    }

    pub fn mul(&self, other: &Self, p: Prec) -> Self {
        let ac = self.re.mul(&other.re, p);
        let bd = self.im.mul(&other.im, p);
        let ad = self.re.mul(&other.im, p);
        let bc = self.im.mul(&other.re, p);
        CIv { re: ac.sub(&bd, p), im: ad.add(&bc, p) }
    }

    pub fn mul_real(&self, s: &Iv, p: Prec) -> Self {
        CIv { re: self.re.mul(s, p), im: self.im.mul(s, p) }
    }

    /// `|z|²` as a real interval.
    pub fn norm_sq(&self, p: Prec) -> Iv {
        self.re.powi(2, p).add(&self.im.powi(2, p), p)
    }

    /// `|z|` as a real interval.
    pub fn modulus(&self, p: Prec) -> Iv {
        self.norm_sq(p + 8).sqrt(p)
    }

    /// Division; the divisor rectangle must exclude zero (so that `|w|²`
    /// is strictly positive).
    pub fn div(&self, other: &Self, p: Prec) -> Self {
        let den = other.norm_sq(p + 8);
        assert!(
            den.is_strictly_positive(),
            "complex interval division by a rectangle containing 0"
        );
        let num = self.mul(&other.conj(), p + 8);
        CIv { re: num.re.div(&den, p), im: num.im.div(&den, p) }
    }

    pub fn recip(&self, p: Prec) -> Self {
        CIv::one().div(self, p)
    }

    /// Integer power by square-and-multiply.
    pub fn powi(&self, n: u64, p: Prec) -> Self {
        let guard = p + 16 + 2 * (64 - n.leading_zeros());
        let mut acc = CIv::one();
        let mut sq = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq, guard);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq, guard);
            }
        }
        CIv { re: acc.re.add(&Iv::zero(), p), im: acc.im.add(&Iv::zero(), p) }
    }

    /// Maximum halfwidth over the two components.
    pub fn rad(&self) -> Dyadic {
        let rr = self.re.rad();
        let ir = self.im.rad();
        if rr >= ir {
            rr
        } else {
            ir
        }
    }

    pub fn mid_f64(&self) -> (f64, f64) {
        (self.re.mid_f64(), self.im.mid_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: i64, im: i64) -> CIv {
        CIv::new(Iv::from_i64(re), Iv::from_i64(im))
    }

    #[test]
    fn complex_ring_ops() {
        // (1+2i)(3-i) = 5+5i
        let z = c(1, 2).mul(&c(3, -1), 64);
        assert!(z.re.contains(&Dyadic::from_i64(5)));
        assert!(z.im.contains(&Dyadic::from_i64(5)));
        assert!(z.re.rad_f64() < 1e-12);
    }

    #[test]
    fn division_round_trip() {
        let a = c(7, -3);
        let b = c(2, 5);
        let q = a.div(&b, 128);
        let back = q.mul(&b, 128);
        assert!(back.re.contains(&Dyadic::from_i64(7)));
        assert!(back.im.contains(&Dyadic::from_i64(-3)));
    }

    #[test]
    fn modulus_of_three_four() {
        let z = c(3, 4);
        let m = z.modulus(96);
        assert!(m.contains(&Dyadic::from_i64(5)));
        assert!(m.rad_f64() < 1e-20);
    }

    #[test]
    fn powers_of_i() {
        let i = c(0, 1);
        let p4 = i.powi(4, 64);
        assert!(p4.re.contains(&Dyadic::one()));
        assert!(p4.im.contains(&Dyadic::zero()));
        let p3 = i.powi(3, 64);
        assert!(p3.im.contains(&Dyadic::from_i64(-1)));
    }
}

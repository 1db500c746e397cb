//! Directed-rounding interval arithmetic over [`Dyadic`] endpoints.
//!
//! Every operation takes the working precision in bits and rounds the lower
//! endpoint toward −∞ and the upper endpoint toward +∞, so the result always
//! encloses the exact image. Ring operations on dyadics are exact, which
//! keeps the rounding analysis trivial: one outward rounding per operation.

use super::dyadic::{Dyadic, Round};
use num::{BigInt, BigRational};
use once_cell::sync::Lazy;
use std::collections::HashMap;
use std::sync::Mutex;

/// Working precision in bits.
pub type Prec = u32;

/// A closed interval `[lo, hi]`, `lo ≤ hi`.
#[derive(Clone, Debug, PartialEq)]
pub struct Iv {
    lo: Dyadic,
    hi: Dyadic,
}

impl Iv {
    pub fn new(lo: Dyadic, hi: Dyadic) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        Iv { lo, hi }
    }

    pub fn point(x: Dyadic) -> Self {
        Iv { lo: x.clone(), hi: x }
    }

    pub fn zero() -> Self {
        Iv::point(Dyadic::zero())
    }

    pub fn one() -> Self {
        Iv::point(Dyadic::one())
    }

    pub fn from_i64(n: i64) -> Self {
        Iv::point(Dyadic::from_i64(n))
    }

    pub fn from_bigint(n: &BigInt) -> Self {
        Iv::point(Dyadic::from_bigint(n))
    }

    /// Enclosure of an exact rational at the given precision.
    pub fn from_rational(q: &BigRational, prec: Prec) -> Self {
        Iv {
            lo: Dyadic::from_rational_dir(q, prec, Round::Floor),
            hi: Dyadic::from_rational_dir(q, prec, Round::Ceil),
        }
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn lo_f64(&self) -> f64 {
        self.lo.to_f64()
    }

    pub fn hi_f64(&self) -> f64 {
        self.hi.to_f64()
    }

    pub fn mid_f64(&self) -> f64 {
        0.5 * (self.lo_f64() + self.hi_f64())
    }

    pub fn rad_f64(&self) -> f64 {
        0.5 * (self.hi_f64() - self.lo_f64())
    }

    /// Exact midpoint as a dyadic.
    pub fn mid(&self) -> Dyadic {
        self.lo.add(&self.hi).mul_pow2(-1)
    }

    /// Exact halfwidth as a dyadic.
    pub fn rad(&self) -> Dyadic {
        self.hi.sub(&self.lo).mul_pow2(-1)
    }

    pub fn width(&self) -> Dyadic {
        self.hi.sub(&self.lo)
    }

    pub fn contains_zero(&self) -> bool {
        self.lo.signum() <= 0 && self.hi.signum() >= 0
    }

    pub fn contains(&self, x: &Dyadic) -> bool {
        self.lo <= *x && *x <= self.hi
    }

    pub fn contains_iv(&self, other: &Iv) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.lo.signum() > 0
    }

    pub fn is_strictly_negative(&self) -> bool {
        self.hi.signum() < 0
    }

    /// Certified strict comparison: every point of `self` is below every
    /// point of `other`.
    pub fn certainly_lt(&self, other: &Iv) -> bool {
        self.hi < other.lo
    }

    pub fn hull(&self, other: &Iv) -> Iv {
        Iv {
            lo: if self.lo <= other.lo { self.lo.clone() } else { other.lo.clone() },
            hi: if self.hi >= other.hi { self.hi.clone() } else { other.hi.clone() },
        }
    }

    fn outward(lo: Dyadic, hi: Dyadic, prec: Prec) -> Iv {
        Iv {
            lo: lo.round(prec, Round::Floor),
            hi: hi.round(prec, Round::Ceil),
        }
    }

    pub fn neg(&self) -> Iv {
        Iv { lo: self.hi.neg(), hi: self.lo.neg() }
    }

    pub fn abs(&self) -> Iv {
        if self.lo.signum() >= 0 {
            self.clone()
        } else if self.hi.signum() <= 0 {
            self.neg()
        } else {
            let m = if self.lo.neg() >= self.hi { self.lo.neg() } else { self.hi.clone() };
            Iv { lo: Dyadic::zero(), hi: m }
        }
    }

    pub fn add(&self, other: &Iv, prec: Prec) -> Iv {
        Iv::outward(self.lo.add(&other.lo), self.hi.add(&other.hi), prec)
    }

    pub fn sub(&self, other: &Iv, prec: Prec) -> Iv {
        Iv::outward(self.lo.sub(&other.hi), self.hi.sub(&other.lo), prec)
    }

    pub fn mul(&self, other: &Iv, prec: Prec) -> Iv {
        let cands = [
            self.lo.mul(&other.lo),
            self.lo.mul(&other.hi),
            self.hi.mul(&other.lo),
            self.hi.mul(&other.hi),
        ];
        let lo = cands.iter().min().unwrap().clone();
        let hi = cands.iter().max().unwrap().clone();
        Iv::outward(lo, hi, prec)
    }

    pub fn mul_pow2(&self, k: i64) -> Iv {
        Iv { lo: self.lo.mul_pow2(k), hi: self.hi.mul_pow2(k) }
    }

    /// Division; the divisor interval must not contain zero.
    pub fn div(&self, other: &Iv, prec: Prec) -> Iv {
        assert!(!other.contains_zero(), "interval division by an interval containing 0");
        let q = |a: &Dyadic, b: &Dyadic, dir: Round| a.div(b, prec + 4, dir);
        let lo = [
            q(&self.lo, &other.lo, Round::Floor),
            q(&self.lo, &other.hi, Round::Floor),
            q(&self.hi, &other.lo, Round::Floor),
            q(&self.hi, &other.hi, Round::Floor),
        ]
        .into_iter()
        .min()
        .unwrap();
        let hi = [
            q(&self.lo, &other.lo, Round::Ceil),
            q(&self.lo, &other.hi, Round::Ceil),
            q(&self.hi, &other.lo, Round::Ceil),
            q(&self.hi, &other.hi, Round::Ceil),
        ]
        .into_iter()
        .max()
        .unwrap();
        Iv::outward(lo, hi, prec)
    }

    pub fn recip(&self, prec: Prec) -> Iv {
        Iv::one().div(self, prec)
    }

    /// Integer power by repeated squaring with outward rounding per step.
    pub fn powi(&self, n: u64, prec: Prec) -> Iv {
        if n == 0 {
            return Iv::one();
        }
        let guard = prec + 16 + 2 * (64 - n.leading_zeros());
        if n % 2 == 1 {
            let signed = self.clone();
            // odd power is monotone
            let lo = pow_point(&signed.lo, n, guard, Round::Floor);
            let hi = pow_point(&signed.hi, n, guard, Round::Ceil);
            return Iv::outward(lo, hi, prec);
        }
        // even power: work on |x|
        let a = self.abs();
        let lo = pow_point(&a.lo, n, guard, Round::Floor);
        let hi = pow_point(&a.hi, n, guard, Round::Ceil);
        Iv::outward(lo, hi, prec)
    }

    /// `max(1, x)` taken pointwise.
    pub fn max_one(&self) -> Iv {
        let one = Dyadic::one();
        Iv {
            lo: if self.lo >= one { self.lo.clone() } else { one.clone() },
            hi: if self.hi >= one { self.hi.clone() } else { one },
        }
    }

    /// Square root; requires `lo ≥ 0`.
    pub fn sqrt(&self, prec: Prec) -> Iv {
        assert!(self.lo.signum() >= 0, "sqrt of an interval with negative points");
        Iv {
            lo: self.lo.sqrt(prec, Round::Floor),
            hi: self.hi.sqrt(prec, Round::Ceil),
        }
    }

    /// Natural logarithm; requires `lo > 0`.
    pub fn ln(&self, prec: Prec) -> Iv {
        assert!(self.lo.signum() > 0, "ln of an interval touching 0");
        let lo = ln_point(&self.lo, prec);
        let hi = ln_point(&self.hi, prec);
        Iv { lo: lo.lo, hi: hi.hi }
    }
}

/// Directed integer power of a point (rounds every step in `dir`, which is
/// direction-correct because the square-and-multiply chain only multiplies
/// values of the same sign pattern as the result).
fn pow_point(base: &Dyadic, n: u64, prec: Prec, dir: Round) -> Dyadic {
    // Handle sign separately; powers of |base| are monotone.
    let neg = base.signum() < 0 && n % 2 == 1;
    let b = base.abs();
    let dir_abs = if neg {
        match dir {
            Round::Floor => Round::Ceil,
            Round::Ceil => Round::Floor,
        }
    } else {
        dir
    };
    let mut acc = Dyadic::one();
    let mut sq = b;
    let mut e = n;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&sq).round(prec, dir_abs);
        }
        e >>= 1;
        if e > 0 {
            sq = sq.mul(&sq).round(prec, dir_abs);
        }
    }
    if neg {
        acc.neg()
    } else {
        acc
    }
}

/// Rigorous enclosure of `ln x` for a positive dyadic point.
///
/// Reduction: `x = m · 2^e` with `m ∈ [1, 2)`, so `ln x = e·ln 2 + ln m`,
/// and `ln m = 2·atanh(y)` with `y = (m−1)/(m+1) ∈ [0, 1/3)` summed as
/// `2·Σ y^(2j+1)/(2j+1)` with an explicit tail bound.
fn ln_point(x: &Dyadic, prec: Prec) -> Iv {
    assert!(x.signum() > 0);
    let e = x.floor_log2();
    let m = x.mul_pow2(-e); // in [1, 2)
    let w = prec + 32;
    let mut acc = atanh_series(&Iv::point(m), w).mul_pow2(1);
    if e != 0 {
        let l2 = ln2(w);
        acc = acc.add(&l2.mul(&Iv::from_i64(e), w), w);
    }
    Iv::outward(acc.lo, acc.hi, prec + 8)
}

/// `atanh((m−1)/(m+1))` for `m ∈ [1, 2]`, i.e. `(ln m)/2`, with a rigorous
/// truncation remainder. `m` may be a thin interval.
fn atanh_series(m: &Iv, w: Prec) -> Iv {
    let one = Iv::one();
    let num = m.sub(&one, w);
    let den = m.add(&one, w);
    let y = num.div(&den, w); // ⊆ [0, 1/3]
    let y2 = y.mul(&y, w);
    // terms until y^(2J+1) is below 2^-(w) · (roughly); y ≤ 1/3 so each
    // extra term gains log2(9) ≈ 3.17 bits.
    let terms = (w as usize) / 3 + 4;
    let mut acc = Iv::zero();
    let mut p = y.clone(); // y^(2j+1)
    for j in 0..terms {
        let t = p.div(&Iv::from_i64((2 * j + 1) as i64), w);
        acc = acc.add(&t, w);
        p = p.mul(&y2, w);
    }
    // Tail: Σ_{j>J} y^(2j+1)/(2j+1) ≤ y^(2J+3)/((2J+3)(1−y²))
    // with y ≤ 1/3: 1/(1−y²) ≤ 9/8.
    let tail_hi = p
        .hi()
        .mul(&Dyadic::from_i64(9))
        .div(
            &Dyadic::from_i64(8 * (2 * terms as i64 + 1)),
            w,
            Round::Ceil,
        )
        .round(w, Round::Ceil);
    let tail = Iv::new(Dyadic::zero(), tail_hi.abs());
    acc.add(&tail, w)
}

static LN2_CACHE: Lazy<Mutex<HashMap<Prec, Iv>>> = Lazy::new(|| Mutex::new(HashMap::new()));

/// Rigorous enclosure of `ln 2` at the given working precision.
pub fn ln2(w: Prec) -> Iv {
    if let Some(v) = LN2_CACHE.lock().unwrap().get(&w) {
        return v.clone();
    }
    let v = atanh_series(&Iv::from_i64(2), w).mul_pow2(1);
    LN2_CACHE.lock().unwrap().insert(w, v.clone());
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(lo: f64, hi: f64) -> Iv {
        // test helper: f64 values are exact dyadics
        let conv = |x: f64| {
            let r = BigRational::from_float(x).unwrap();
            Dyadic::from_rational_dir(&r, 80, Round::Floor)
        };
        Iv::new(conv(lo), conv(hi))
    }

    #[test]
    fn arithmetic_encloses() {
        let a = iv(1.0, 2.0);
        let b = iv(-3.0, 0.5);
        let s = a.add(&b, 64);
        assert!(s.lo_f64() <= -2.0 && s.hi_f64() >= 2.5);
        let p = a.mul(&b, 64);
        assert!(p.lo_f64() <= -6.0 && p.hi_f64() >= 1.0);
        let d = a.div(&iv(2.0, 4.0), 64);
        assert!(d.lo_f64() <= 0.25 && d.hi_f64() >= 1.0);
    }

    #[test]
    fn powi_handles_signs() {
        let x = iv(-2.0, 3.0);
        let sq = x.powi(2, 64);
        assert!(sq.lo_f64() <= 0.0 && sq.hi_f64() >= 9.0);
        let cube = x.powi(3, 64);
        assert!(cube.lo_f64() <= -8.0 && cube.hi_f64() >= 27.0);
        let neg = iv(-3.0, -2.0);
        let nc = neg.powi(3, 64);
        assert!(nc.lo_f64() <= -27.0 && nc.hi_f64() >= -8.0);
        assert!(neg.powi(2, 64).lo_f64() >= 3.9);
    }

    #[test]
    fn ln_matches_f64_reference() {
        for &v in &[0.0625f64, 0.5, 1.0, 1.5, 2.0, 3.0, 10.0, 122.99186938124421] {
            let x = iv(v, v);
            let l = x.ln(64);
            let reference = v.ln();
            assert!(
                l.lo_f64() <= reference && reference <= l.hi_f64(),
                "ln({v}) = {reference} not in [{}, {}]",
                l.lo_f64(),
                l.hi_f64()
            );
            assert!(l.rad_f64() < 1e-15, "ln enclosure too wide: {}", l.rad_f64());
        }
    }

    #[test]
    fn ln_tightness_at_high_precision() {
        let x = Iv::from_i64(3);
        let l = x.ln(256);
        // width below 2^-250
        assert!(l.width() < Dyadic::pow2(-250));
        // ln 3 = 1.0986122886681098...
        assert!((l.mid_f64() - 1.0986122886681098).abs() < 1e-15);
    }

    #[test]
    fn ln2_value() {
        let l = ln2(128);
        assert!((l.mid_f64() - std::f64::consts::LN_2).abs() < 1e-15);
        assert!(l.lo_f64() <= std::f64::consts::LN_2);
    }

    #[test]
    fn sqrt_encloses() {
        let x = Iv::from_i64(5);
        let s = x.sqrt(128);
        assert!(s.lo_f64() <= 5f64.sqrt() && 5f64.sqrt() <= s.hi_f64());
        assert!(s.width() < Dyadic::pow2(-120));
    }

    #[test]
    fn comparisons() {
        assert!(iv(1.0, 2.0).certainly_lt(&iv(2.5, 3.0)));
        assert!(!iv(1.0, 2.6).certainly_lt(&iv(2.5, 3.0)));
        assert!(iv(-1.0, 1.0).contains_zero());
        assert!(iv(0.5, 1.0).is_strictly_positive());
    }
}

//! Exact univariate polynomial algebra over ℤ and ℚ.
//!
//! Everything here is exact: integer pseudo-remainder sequences for gcds,
//! Yun's algorithm for squarefree decomposition, Sturm chains for real root
//! counting, Sylvester/Bareiss resultants, cyclotomic polynomials, and
//! Lagrange interpolation. The certified-numerics layer consumes these
//! through the exact evaluation hooks (`eval_dyadic` is exact because
//! dyadic ring operations are exact).

use crate::ball::{CIv, Dyadic, Iv, Prec};
use num::{BigInt, BigRational, Integer, One, Signed, Zero};
use std::fmt;

/// Polynomial with integer coefficients, `coeffs[i]` multiplying `x^i`.
/// Invariant: no trailing zero coefficient (the zero polynomial is empty).
#[derive(Clone, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        IntPoly::new(vec![BigInt::one()])
    }

    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = c;
        IntPoly::new(v)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// Degree of a nonzero polynomial.
    pub fn deg(&self) -> usize {
        self.degree().expect("degree of zero polynomial")
    }

    pub fn leading(&self) -> &BigInt {
        self.coeffs.last().expect("leading coefficient of zero polynomial")
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_monic(&self) -> bool {
        !self.is_zero() && self.leading().is_one()
    }

    pub fn eval_bigint(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Exact evaluation at a dyadic point.
    pub fn eval_dyadic(&self, x: &Dyadic) -> Dyadic {
        let mut acc = Dyadic::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(&Dyadic::from_bigint(c));
        }
        acc
    }

    /// Exact sign of the value at a dyadic point.
    pub fn sign_at(&self, x: &Dyadic) -> i32 {
        self.eval_dyadic(x).signum()
    }

    pub fn eval_iv(&self, x: &Iv, p: Prec) -> Iv {
        let mut acc = Iv::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x, p).add(&Iv::from_bigint(c), p);
        }
        acc
    }

    pub fn eval_civ(&self, z: &CIv, p: Prec) -> CIv {
        let mut acc = CIv::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(z, p).add(&CIv::from_bigint(c), p);
        }
        acc
    }

    pub fn derivative(&self) -> IntPoly {
        if self.coeffs.len() <= 1 {
            return IntPoly::zero();
        }
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            v.push(self.coeff(i) + other.coeff(i));
        }
        IntPoly::new(v)
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut v = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        IntPoly::new(v)
    }

    pub fn mul_scalar(&self, s: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Positive gcd of the coefficients (1 for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        if g.is_zero() {
            BigInt::one()
        } else {
            g
        }
    }

    /// Content-free copy. The leading sign is preserved.
    pub fn primitive(&self) -> IntPoly {
        let c = self.content();
        if c.is_one() {
            return self.clone();
        }
        IntPoly { coeffs: self.coeffs.iter().map(|a| a / &c).collect() }
    }

    /// Pseudo-remainder `prem(self, d)` with the multiplier forced positive
    /// (an even power of `lc(d)`), so the sign of the remainder matches the
    /// sign of the true rational remainder. Requires `d` nonzero.
    pub fn prem_abs(&self, d: &IntPoly) -> IntPoly {
        assert!(!d.is_zero());
        let mut r = self.clone();
        let dd = d.deg();
        let lc = d.leading().clone();
        let mut mults: u32 = 0;
        while !r.is_zero() && r.deg() >= dd {
            let shift = r.deg() - dd;
            let rl = r.leading().clone();
            r = r.mul_scalar(&lc).sub(&d.mul(&IntPoly::monomial(rl, shift)));
            mults += 1;
        }
        if mults % 2 == 1 {
            r = r.mul_scalar(&lc);
        }
        r
    }

    /// Primitive gcd with positive leading coefficient.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        let mut a = self.primitive();
        let mut b = other.primitive();
        if a.is_zero() {
            return make_leading_positive(b);
        }
        if b.is_zero() {
            return make_leading_positive(a);
        }
        if a.deg() < b.deg() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.prem_abs(&b).primitive();
            a = b;
            b = r;
        }
        make_leading_positive(a)
    }

    /// Exact quotient; panics if `d` does not divide `self` over ℚ with an
    /// integer quotient existing after the caller's normalization. Checked.
    pub fn div_exact(&self, d: &IntPoly) -> IntPoly {
        let (q, r) = RatPoly::from_int(self).divrem(&RatPoly::from_int(d));
        assert!(r.is_zero(), "div_exact: nonzero remainder");
        q.to_int().expect("div_exact: quotient not integral")
    }

    /// Does `d` divide `self` in ℚ[x]?
    pub fn divisible_by(&self, d: &IntPoly) -> bool {
        let (_, r) = RatPoly::from_int(self).divrem(&RatPoly::from_int(d));
        r.is_zero()
    }

    /// `self / gcd(self, self')`: same distinct roots, all simple.
    pub fn squarefree_part(&self) -> IntPoly {
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            return self.primitive();
        }
        self.primitive().div_exact(&g)
    }

    /// Yun's squarefree decomposition: returns pairwise-coprime squarefree
    /// `g_e` with `self ~ Π g_e^e` up to a rational constant.
    pub fn squarefree_decomposition(&self) -> Vec<(IntPoly, u32)> {
        assert!(!self.is_zero());
        let f = self.primitive();
        if f.deg() == 0 {
            return vec![];
        }
        let df = f.derivative();
        let a0 = f.gcd(&df);
        if a0.degree() == Some(0) {
            return vec![(make_leading_positive(f), 1)];
        }
        let mut out = Vec::new();
        let mut b = f.div_exact(&a0);
        let mut c = df.div_exact(&a0);
        let mut mult = 1u32;
        loop {
            let d = c.sub(&b.derivative());
            if d.is_zero() {
                if b.deg() > 0 {
                    out.push((make_leading_positive(b), mult));
                }
                break;
            }
            let g = b.gcd(&d);
            if g.deg() > 0 {
                out.push((make_leading_positive(g.clone()), mult));
            }
            b = b.div_exact(&g);
            c = d.div_exact(&g);
            mult += 1;
            if b.degree() == Some(0) {
                break;
            }
        }
        out
    }

    /// Sturm chain starting from the primitive part.
    pub fn sturm_chain(&self) -> Vec<IntPoly> {
        let mut chain = vec![self.primitive()];
        let d = self.derivative();
        if d.is_zero() {
            return chain;
        }
        chain.push(d.primitive());
        loop {
            let n = chain.len();
            let r = chain[n - 2].prem_abs(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(r.neg().primitive());
        }
        chain
    }

    /// Number of sign variations of the chain at a point.
    fn variations_at(chain: &[IntPoly], x: &Dyadic) -> u32 {
        let mut last = 0i32;
        let mut v = 0u32;
        for p in chain {
            let s = p.sign_at(x);
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                v += 1;
            }
            last = s;
        }
        v
    }

    /// Exact count of distinct real roots in the open interval `(a, b)`.
    /// Requires that neither endpoint is a root.
    pub fn count_roots_open(chain: &[IntPoly], a: &Dyadic, b: &Dyadic) -> u32 {
        debug_assert!(chain[0].sign_at(a) != 0 && chain[0].sign_at(b) != 0);
        IntPoly::variations_at(chain, a) - IntPoly::variations_at(chain, b)
    }

    /// A power-of-two `B = 2^k` with every root modulus `< B`
    /// (Cauchy bound `1 + max |c_i| / |lc|`).
    pub fn root_bound_exp(&self) -> i64 {
        let lead_bits = self.leading().bits() as i64;
        let max_bits = self
            .coeffs
            .iter()
            .take(self.coeffs.len() - 1)
            .map(|c| c.bits() as i64)
            .max()
            .unwrap_or(0);
        (max_bits - lead_bits + 2).max(1)
    }

    /// Exact resultant via the Sylvester matrix and Bareiss elimination.
    pub fn resultant(&self, other: &IntPoly) -> BigInt {
        if self.is_zero() || other.is_zero() {
            return BigInt::zero();
        }
        let m = self.deg();
        let n = other.deg();
        if m == 0 {
            return self.leading().pow(n as u32);
        }
        if n == 0 {
            return other.leading().pow(m as u32);
        }
        let size = m + n;
        let mut mat = vec![vec![BigInt::zero(); size]; size];
        for row in 0..n {
            for (i, c) in self.coeffs.iter().rev().enumerate() {
                mat[row][row + i] = c.clone();
            }
        }
        for row in 0..m {
            for (i, c) in other.coeffs.iter().rev().enumerate() {
                mat[n + row][row + i] = c.clone();
            }
        }
        bareiss_det(mat)
    }

    /// The `n`-th cyclotomic polynomial.
    pub fn cyclotomic(n: u64) -> IntPoly {
        assert!(n >= 1);
        // x^n − 1 divided by Φ_d for all proper divisors d of n.
        let mut num = IntPoly::monomial(BigInt::one(), n as usize)
            .sub(&IntPoly::one());
        for d in 1..n {
            if n % d == 0 {
                num = num.div_exact(&IntPoly::cyclotomic(d));
            }
        }
        num
    }
}

/// Flip the sign so the leading coefficient is positive.
fn make_leading_positive(p: IntPoly) -> IntPoly {
    if !p.is_zero() && p.leading().is_negative() {
        p.neg()
    } else {
        p
    }
}

/// Fraction-free Bareiss determinant of an integer matrix.
fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            // find a pivot row below
            let Some(p) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = &t / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// Polynomial with rational coefficients; support code for exact division
/// and interpolation.
#[derive(Clone, PartialEq)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: vec![] }
    }

    pub fn from_int(p: &IntPoly) -> Self {
        RatPoly::new(p.coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Long division: returns `(q, r)` with `self = q·d + r`, `deg r < deg d`.
    pub fn divrem(&self, d: &RatPoly) -> (RatPoly, RatPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.degree().unwrap();
        let dl = d.coeffs[dd].clone();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (RatPoly::zero(), RatPoly::new(r));
        }
        let qlen = r.len() - dd;
        let mut q = vec![BigRational::zero(); qlen];
        for i in (0..qlen).rev() {
            let c = &r[i + dd] / &dl;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                let t = dc * &c;
                r[i + j] -= t;
            }
            q[i] = c;
        }
        (RatPoly::new(q), RatPoly::new(r))
    }

    /// Integer conversion when all denominators are 1.
    pub fn to_int(&self) -> Option<IntPoly> {
        let mut v = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            if !c.denom().is_one() {
                return None;
            }
            v.push(c.numer().clone());
        }
        Some(IntPoly::new(v))
    }

    /// Clear denominators and strip content: the primitive integer multiple.
    pub fn to_int_primitive(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut lcm = BigInt::one();
        for c in &self.coeffs {
            lcm = lcm.lcm(c.denom());
        }
        IntPoly::new(self.coeffs.iter().map(|c| c.numer() * (&lcm / c.denom())).collect())
            .primitive()
    }
}

/// Lagrange interpolation through distinct integer nodes.
pub fn lagrange_interpolate(points: &[(BigInt, BigInt)]) -> RatPoly {
    let mut acc = RatPoly::zero();
    for (i, (xi, yi)) in points.iter().enumerate() {
        if yi.is_zero() {
            continue;
        }
        // basis polynomial Π_{j≠i} (x − x_j) / (x_i − x_j)
        let mut num = RatPoly::new(vec![BigRational::one()]);
        let mut den = BigRational::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if j == i {
                continue;
            }
            let lin = RatPoly::new(vec![
                BigRational::from_integer(-xj.clone()),
                BigRational::one(),
            ]);
            num = rat_mul(&num, &lin);
            den *= BigRational::from_integer(xi - xj);
        }
        let scale = BigRational::from_integer(yi.clone()) / den;
        let scaled = RatPoly::new(num.coeffs.iter().map(|c| c * &scale).collect());
        acc = rat_add(&acc, &scaled);
    }
    acc
}

fn rat_mul(a: &RatPoly, b: &RatPoly) -> RatPoly {
    if a.is_zero() || b.is_zero() {
        return RatPoly::zero();
    }
    let mut v = vec![BigRational::zero(); a.coeffs.len() + b.coeffs.len() - 1];
    for (i, x) in a.coeffs.iter().enumerate() {
        for (j, y) in b.coeffs.iter().enumerate() {
            let t = x * y;
            v[i + j] += t;
        }
    }
    RatPoly::new(v)
}

fn rat_add(a: &RatPoly, b: &RatPoly) -> RatPoly {
    let n = a.coeffs.len().max(b.coeffs.len());
    RatPoly::new((0..n).map(|i| a.coeff(i) + b.coeff(i)).collect())
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if i == 0 || !mag.is_one() {
                write!(f, "{}", mag)?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{}", i)?,
            }
        }
        Ok(())
    }
}

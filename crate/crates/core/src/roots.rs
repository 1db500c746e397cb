//! Certified isolation of polynomial roots.
//!
//! The pipeline: exact squarefree decomposition (multiplicities fall out),
//! Sturm-chain bisection for the real roots of each squarefree factor
//! (exact sign evaluations at dyadic points, with a verified Newton
//! fast-path), and for nonreal roots a floating-point Aberth solve whose
//! output is refined by high-precision Newton steps and then certified
//! a posteriori with Weierstrass correction disks:
//!
//! for distinct approximations `z_1..z_n` of a squarefree `g` of degree
//! `n`, every root of `g` lies in `∪ D(z_i, n·|g(z_i)/∏_{j≠i}(z_i−z_j)|)`,
//! and a connected component made of `m` disks contains exactly `m` roots.
//! All disk data is computed from exact dyadic arithmetic, so the final
//! enclosures do not depend on floating-point rounding.

use crate::ball::{CIv, Dyadic, Iv, Prec, Round};
use crate::error::{Error, Result};
use crate::poly::IntPoly;
use num::complex::Complex64;

/// A certified enclosure of one distinct root.
#[derive(Clone, Debug)]
pub struct RootBox {
    re: Dyadic,
    im: Dyadic,
    radius: Dyadic,
    multiplicity: u32,
    is_real: bool,
}

impl RootBox {
    pub fn re(&self) -> &Dyadic {
        &self.re
    }

    pub fn im(&self) -> &Dyadic {
        &self.im
    }

    pub fn radius(&self) -> &Dyadic {
        &self.radius
    }

    pub fn multiplicity(&self) -> u32 {
        self.multiplicity
    }

    pub fn is_real(&self) -> bool {
        self.is_real
    }

    /// Rectangle enclosure `center ± radius` (slightly larger than the disk).
    pub fn as_civ(&self) -> CIv {
        CIv::centered(self.re.clone(), self.im.clone(), &self.radius)
    }

    /// Certified enclosure of the root's modulus.
    pub fn modulus_iv(&self, p: Prec) -> Iv {
        let sq = self.re.mul(&self.re).add(&self.im.mul(&self.im));
        let c_lo = sq.sqrt(p, Round::Floor);
        let c_hi = sq.sqrt(p, Round::Ceil);
        let lo = c_lo.sub(&self.radius);
        let lo = if lo.signum() < 0 { Dyadic::zero() } else { lo };
        Iv::new(lo, c_hi.add(&self.radius))
    }

    /// Exact square of the center's modulus (used for deterministic sorting).
    fn center_norm_sq(&self) -> Dyadic {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }
}

/// Isolate all roots of `p` in certified, pairwise-disjoint boxes with
/// radius at most `2^-prec`. Multiplicities are exact.
pub fn isolate_roots(p: &IntPoly, prec: Prec) -> Result<Vec<RootBox>> {
    if p.degree().unwrap_or(0) < 1 {
        return Err(Error::invalid("root isolation needs degree ≥ 1"));
    }
    let tol_exp = -(prec as i64);

    // Pull out roots at zero exactly.
    let mut zero_mult = 0u32;
    let mut coeffs = p.coeffs().to_vec();
    while coeffs.first().map_or(false, |c| c == &num::BigInt::from(0)) {
        coeffs.remove(0);
        zero_mult += 1;
    }
    let rest = IntPoly::new(coeffs);

    let mut boxes: Vec<RootBox> = Vec::new();
    if zero_mult > 0 {
        boxes.push(RootBox {
            re: Dyadic::zero(),
            im: Dyadic::zero(),
            radius: Dyadic::zero(),
            multiplicity: zero_mult,
            is_real: true,
        });
    }

    if rest.deg() >= 1 {
        let mut attempt_tol = tol_exp;
        loop {
            let mut trial = boxes.clone();
            for (g, mult) in rest.squarefree_decomposition() {
                for b in isolate_squarefree(&g, attempt_tol, mult)? {
                    trial.push(b);
                }
            }
            if pairwise_disjoint(&trial) {
                boxes = trial;
                break;
            }
            attempt_tol -= 64;
            if attempt_tol < tol_exp - 512 {
                return Err(Error::Precision {
                    what: format!("could not separate the roots of {}", p),
                    max_bits: (-attempt_tol) as u32,
                });
            }
        }
    }

    // Deterministic order: descending modulus, exact tie-breaks.
    boxes.sort_by(|a, b| {
        b.center_norm_sq()
            .cmp(&a.center_norm_sq())
            .then_with(|| b.is_real.cmp(&a.is_real))
            .then_with(|| b.im.cmp(&a.im))
            .then_with(|| a.re.cmp(&b.re))
    });
    Ok(boxes)
}

fn pairwise_disjoint(boxes: &[RootBox]) -> bool {
    for i in 0..boxes.len() {
        for j in i + 1..boxes.len() {
            let a = &boxes[i];
            let b = &boxes[j];
            let dr = a.re.sub(&b.re);
            let di = a.im.sub(&b.im);
            let dist_sq = dr.mul(&dr).add(&di.mul(&di));
            let dist_lo = dist_sq.sqrt(96, Round::Floor);
            let rsum = a.radius.add(&b.radius);
            if dist_lo <= rsum {
                return false;
            }
        }
    }
    true
}

/// Isolate the roots of a squarefree polynomial to radius `2^tol_exp`.
fn isolate_squarefree(g: &IntPoly, tol_exp: i64, mult: u32) -> Result<Vec<RootBox>> {
    let deg = g.deg();
    let chain = g.sturm_chain();
    let bexp = g.root_bound_exp();
    let lo = Dyadic::pow2(bexp).neg();
    let hi = Dyadic::pow2(bexp);
    debug_assert!(g.sign_at(&lo) != 0 && g.sign_at(&hi) != 0);

    // --- real roots: Sturm bisection ---
    let mut real_roots: Vec<(Dyadic, Dyadic)> = Vec::new(); // (center, halfwidth)
    let mut stack = vec![(lo, hi)];
    while let Some((a, b)) = stack.pop() {
        let count = IntPoly::count_roots_open(&chain, &a, &b);
        match count {
            0 => {}
            1 => real_roots.push(refine_bracket(g, a, b, tol_exp)),
            _ => {
                let mid = a.add(&b).mul_pow2(-1);
                if g.sign_at(&mid) == 0 {
                    real_roots.push((mid.clone(), Dyadic::zero()));
                }
                stack.push((a, mid.clone()));
                stack.push((mid, b));
            }
        }
    }
    real_roots.sort_by(|x, y| x.0.cmp(&y.0));
    let n_real = real_roots.len();
    let n_complex = deg - n_real;
    debug_assert!(n_complex % 2 == 0);

    let mut out: Vec<RootBox> = Vec::new();
    if n_complex == 0 {
        for (c, h) in real_roots {
            out.push(RootBox {
                re: c,
                im: Dyadic::zero(),
                radius: h,
                multiplicity: mult,
                is_real: true,
            });
        }
        return Ok(out);
    }

    // --- nonreal roots: Aberth seeds, Newton refinement, disk certificates ---
    let mut target = tol_exp;
    for _attempt in 0..6 {
        let seeds = aberth_seeds(g, n_complex / 2)?;
        let mut points: Vec<(Dyadic, Dyadic)> = Vec::new(); // upper half-plane, refined
        for s in &seeds {
            points.push(newton_refine_complex(g, *s, target));
        }
        // full point set for the Weierstrass disks: real centers, complex, conjugates
        let mut all: Vec<(Dyadic, Dyadic)> =
            real_roots.iter().map(|(c, _)| (c.clone(), Dyadic::zero())).collect();
        for (re, im) in &points {
            all.push((re.clone(), im.clone()));
            all.push((re.clone(), im.neg()));
        }
        if let Some(radii) = weierstrass_radii(g, &all) {
            let mut trial: Vec<RootBox> = Vec::new();
            for (i, (c, h)) in real_roots.iter().enumerate() {
                // inflate so the disk covers the Sturm bracket
                let r = if radii[i] >= *h { radii[i].clone() } else { h.clone() };
                trial.push(RootBox {
                    re: c.clone(),
                    im: Dyadic::zero(),
                    radius: r,
                    multiplicity: mult,
                    is_real: true,
                });
            }
            for (k, (re, im)) in points.iter().enumerate() {
                let r = radii[n_real + 2 * k].clone();
                let r2 = radii[n_real + 2 * k + 1].clone();
                let r = if r >= r2 { r } else { r2 };
                for sign in [1i32, -1] {
                    trial.push(RootBox {
                        re: re.clone(),
                        im: if sign > 0 { im.clone() } else { im.neg() },
                        radius: r.clone(),
                        multiplicity: mult,
                        is_real: false,
                    });
                }
            }
            let small_enough = trial.iter().all(|b| b.radius <= Dyadic::pow2(tol_exp));
            if small_enough && pairwise_disjoint(&trial) {
                return Ok(trial);
            }
        }
        target -= 128;
    }
    Err(Error::Precision {
        what: format!("complex root certification failed for {}", g),
        max_bits: (-target) as u32,
    })
}

/// Shrink an isolating bracket (sign change guaranteed) to halfwidth
/// `≤ 2^tol_exp`, using bisection with a sign-verified Newton jump.
fn refine_bracket(g: &IntPoly, mut a: Dyadic, mut b: Dyadic, tol_exp: i64) -> (Dyadic, Dyadic) {
    let sa0 = g.sign_at(&a);
    debug_assert!(sa0 != 0 && g.sign_at(&b) != 0 && sa0 != g.sign_at(&b));
    let mut sa = sa0;
    let dg = g.derivative();
    let tol = Dyadic::pow2(tol_exp + 1);
    loop {
        let width = b.sub(&a);
        if width <= tol {
            break;
        }
        let mid = a.add(&b).mul_pow2(-1);
        let gm = g.eval_dyadic(&mid);
        if gm.is_zero() {
            return (mid, Dyadic::zero());
        }
        // Newton candidate from the midpoint, verified by exact signs.
        let work_prec = (2 * width.floor_log2().unsigned_abs()).clamp(64, 1 << 20) as u32 + 64;
        let dm = dg.eval_dyadic(&mid);
        if !dm.is_zero() {
            let step = gm.div(&dm, work_prec, Round::Floor);
            let z = mid.sub(&step);
            let delta = width.mul_pow2(-3);
            let lo = z.sub(&delta);
            let hi = z.add(&delta);
            if lo > a && hi < b {
                let sl = g.sign_at(&lo);
                let sh = g.sign_at(&hi);
                if sl == 0 {
                    return (lo, Dyadic::zero());
                }
                if sh == 0 {
                    return (hi, Dyadic::zero());
                }
                if sl != sh {
                    a = lo;
                    b = hi;
                    sa = sl;
                    continue;
                }
            }
        }
        // plain bisection step
        let sm = gm.signum();
        if sm == sa {
            a = mid;
        } else {
            b = mid;
        }
    }
    let c = a.add(&b).mul_pow2(-1);
    let h = b.sub(&a).mul_pow2(-1);
    (c, h)
}

/// Floating-point Aberth–Ehrlich iteration; returns the upper-half-plane
/// representatives of the nonreal roots.
fn aberth_seeds(g: &IntPoly, want_pairs: usize) -> Result<Vec<Complex64>> {
    let n = g.deg();
    let cf: Vec<f64> = g
        .coeffs()
        .iter()
        .map(|c| Dyadic::from_bigint(c).to_f64())
        .collect();
    if cf.iter().any(|c| !c.is_finite()) {
        return Err(Error::Precision {
            what: "coefficients overflow f64 in the Aberth seeding stage".into(),
            max_bits: 53,
        });
    }
    let lead = *cf.last().unwrap();
    let radius = 1.0 + cf[..n].iter().map(|c| (c / lead).abs()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            Complex64::from_polar(
                radius * (0.5 + 0.4 * (k as f64) / (n as f64)),
                2.0 * std::f64::consts::PI * (k as f64) / (n as f64) + 0.43,
            )
        })
        .collect();
    let eval = |x: Complex64| {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for &c in cf.iter().rev() {
            dp = dp * x + p;
            p = p * x + Complex64::new(c, 0.0);
        }
        (p, dp)
    };
    for _ in 0..600 {
        let mut max_corr: f64 = 0.0;
        for i in 0..n {
            let (p, dp) = eval(z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = if dp.norm() == 0.0 { Complex64::new(1e-12, 1e-12) } else { p / dp };
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != i {
                    s += (z[i] - z[j]).finv();
                }
            }
            let denom = Complex64::new(1.0, 0.0) - ratio * s;
            let w = if denom.norm() < 1e-300 { ratio } else { ratio / denom };
            z[i] -= w;
            max_corr = max_corr.max(w.norm());
        }
        if max_corr < 1e-13 * radius {
            break;
        }
    }
    // keep the upper-half-plane representatives of the most-imaginary roots
    let mut by_im: Vec<Complex64> = z;
    by_im.sort_by(|a, b| b.im.abs().partial_cmp(&a.im.abs()).unwrap());
    let mut ups: Vec<Complex64> = by_im
        .into_iter()
        .take(2 * want_pairs)
        .filter(|c| c.im > 0.0)
        .collect();
    ups.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap().then(a.im.partial_cmp(&b.im).unwrap()));
    ups.dedup_by(|a, b| (*a - *b).norm() < 1e-9);
    if ups.len() != want_pairs {
        return Err(Error::Precision {
            what: format!(
                "Aberth stage found {} conjugate pairs, expected {}",
                ups.len(),
                want_pairs
            ),
            max_bits: 53,
        });
    }
    Ok(ups)
}

/// High-precision Newton refinement of one complex seed. Heuristic only;
/// rigor comes from the Weierstrass certificate afterwards.
fn newton_refine_complex(g: &IntPoly, seed: Complex64, tol_exp: i64) -> (Dyadic, Dyadic) {
    let dg = g.derivative();
    let target_bits = (-tol_exp + 96).max(128) as u32;
    let mut re = dyadic_from_f64(seed.re);
    let mut im = dyadic_from_f64(seed.im);
    let mut w: u32 = 64;
    while w < 2 * target_bits {
        w = (w * 2).min(2 * target_bits);
        for _ in 0..3 {
            // exact evaluations, rounded division
            let (pr, pi) = eval_complex_exact(g, &re, &im);
            if pr.is_zero() && pi.is_zero() {
                return (re, im);
            }
            let (dr, di) = eval_complex_exact(&dg, &re, &im);
            let den = dr.mul(&dr).add(&di.mul(&di));
            if den.is_zero() {
                break;
            }
            // (pr + i·pi)/(dr + i·di)
            let qr = pr.mul(&dr).add(&pi.mul(&di)).div(&den, w, Round::Floor);
            let qi = pi.mul(&dr).sub(&pr.mul(&di)).div(&den, w, Round::Floor);
            re = re.sub(&qr).round(w + 8, Round::Floor);
            im = im.sub(&qi).round(w + 8, Round::Floor);
        }
    }
    (re, im)
}

fn dyadic_from_f64(x: f64) -> Dyadic {
    // f64 values are dyadic rationals; the decomposition is exact
    let r = num::BigRational::from_float(x)
        .unwrap_or_else(|| num::BigRational::from_integer(0.into()));
    Dyadic::from_rational_dir(&r, 64, Round::Floor)
}

/// Exact evaluation of `g` at the exact complex dyadic `re + i·im`.
pub(crate) fn eval_complex_exact(g: &IntPoly, re: &Dyadic, im: &Dyadic) -> (Dyadic, Dyadic) {
    let mut ar = Dyadic::zero();
    let mut ai = Dyadic::zero();
    for c in g.coeffs().iter().rev() {
        let nr = ar.mul(re).sub(&ai.mul(im)).add(&Dyadic::from_bigint(c));
        let ni = ar.mul(im).add(&ai.mul(re));
        ar = nr;
        ai = ni;
    }
    (ar, ai)
}

/// Upper bounds for the Weierstrass disk radii `deg·|g(z_i)/∏(z_i−z_j)|`.
/// Returns `None` when two points coincide.
fn weierstrass_radii(g: &IntPoly, pts: &[(Dyadic, Dyadic)]) -> Option<Vec<Dyadic>> {
    let n = pts.len();
    debug_assert_eq!(n, g.deg());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let (vr, vi) = eval_complex_exact(g, &pts[i].0, &pts[i].1);
        let num_sq = vr.mul(&vr).add(&vi.mul(&vi));
        // ∏_{j≠i} (z_i − z_j), exact complex product
        let mut dr = Dyadic::one();
        let mut di = Dyadic::zero();
        for (j, pt) in pts.iter().enumerate() {
            if j == i {
                continue;
            }
            let er = pts[i].0.sub(&pt.0);
            let ei = pts[i].1.sub(&pt.1);
            if er.is_zero() && ei.is_zero() {
                return None;
            }
            let nr = dr.mul(&er).sub(&di.mul(&ei));
            let ni = dr.mul(&ei).add(&di.mul(&er));
            dr = nr;
            di = ni;
        }
        let den_sq = dr.mul(&dr).add(&di.mul(&di));
        if den_sq.is_zero() {
            return None;
        }
        // |W_i| ≤ sqrt_hi(num_sq) / sqrt_lo(den_sq)
        let num_hi = num_sq.sqrt(96, Round::Ceil);
        let den_lo = den_sq.sqrt(96, Round::Floor);
        if den_lo.is_zero() {
            return None;
        }
        let w = num_hi.div(&den_lo, 96, Round::Ceil);
        out.push(w.mul(&Dyadic::from_i64(n as i64)).round(96, Round::Ceil));
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigInt;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    /// Quadratic-formula oracle: φ = (1+√5)/2 as an interval.
    fn golden_iv(prec: Prec) -> Iv {
        let five = Dyadic::from_i64(5);
        let lo = Dyadic::one().add(&five.sqrt(prec, Round::Floor)).mul_pow2(-1);
        let hi = Dyadic::one().add(&five.sqrt(prec, Round::Ceil)).mul_pow2(-1);
        Iv::new(lo, hi)
    }

    #[test]
    fn golden_poly_roots() {
        let roots = isolate_roots(&p(&[-1, -1, 1]), 128).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots.iter().all(|r| r.is_real() && r.multiplicity() == 1));
        // sorted by descending modulus: φ first, and its box meets the
        // independent quadratic-formula enclosure
        let phi = golden_iv(160);
        let box0 = Iv::new(roots[0].re().sub(roots[0].radius()), roots[0].re().add(roots[0].radius()));
        assert!(!box0.certainly_lt(&phi) && !phi.certainly_lt(&box0));
        // ψ ≈ -0.6180339887…
        assert!((roots[1].re().to_f64() + 0.6180339887498949).abs() < 1e-12);
        assert!(*roots[0].radius() <= Dyadic::pow2(-128));
    }

    #[test]
    fn perfect_square_detects_multiplicity() {
        let roots = isolate_roots(&p(&[1, -2, 1]), 64).unwrap();
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].multiplicity(), 2);
        assert!(roots[0].is_real());
        assert_eq!(*roots[0].re(), Dyadic::one());
        assert!(roots[0].radius().is_zero());
    }

    #[test]
    fn tribonacci_spectrum() {
        // x^3 - x^2 - x - 1: one real root 1.8392867552…, a conjugate pair
        // of modulus ≈ 0.737352705…
        let roots = isolate_roots(&p(&[-1, -1, -1, 1]), 128).unwrap();
        assert_eq!(roots.len(), 3);
        let real: Vec<_> = roots.iter().filter(|r| r.is_real()).collect();
        assert_eq!(real.len(), 1);
        assert!((real[0].re().to_f64() - 1.8392867552141612).abs() < 1e-12);
        let cplx: Vec<_> = roots.iter().filter(|r| !r.is_real()).collect();
        assert_eq!(cplx.len(), 2);
        // product of all three roots is 1, so |pair|² · realroot = 1
        let t_iv = Iv::new(
            real[0].re().sub(real[0].radius()),
            real[0].re().add(real[0].radius()),
        );
        for c in &cplx {
            let m = c.modulus_iv(96);
            assert!((m.mid_f64() - 0.7373527).abs() < 1e-6);
            let prod = m.powi(2, 128).mul(&t_iv, 128);
            assert!(prod.contains(&Dyadic::one()), "modulus²·t = [{}, {}]", prod.lo_f64(), prod.hi_f64());
        }
        // conjugates mirror each other
        assert_eq!(cplx[0].re(), cplx[1].re());
        assert_eq!(&cplx[0].im().neg(), cplx[1].im());
    }

    #[test]
    fn gaussian_units() {
        // x^2 + 1 → ±i
        let roots = isolate_roots(&p(&[1, 0, 1]), 96).unwrap();
        assert_eq!(roots.len(), 2);
        for r in &roots {
            assert!(!r.is_real());
            assert!(r.re().to_f64().abs() < 1e-20);
            assert!((r.im().to_f64().abs() - 1.0).abs() < 1e-20);
        }
    }

    #[test]
    fn mixed_degree_four() {
        // (x^2+1)(x-2)(x+3)
        let f = p(&[1, 0, 1]).mul(&p(&[-2, 1])).mul(&p(&[3, 1]));
        let roots = isolate_roots(&f, 96).unwrap();
        assert_eq!(roots.len(), 4);
        let mult_sum: u32 = roots.iter().map(|r| r.multiplicity()).sum();
        assert_eq!(mult_sum, 4);
        // descending modulus: -3 first, then 2, then the pair at modulus 1
        assert!((roots[0].re().to_f64() + 3.0).abs() < 1e-20);
        assert!((roots[1].re().to_f64() - 2.0).abs() < 1e-20);
        assert!(!roots[2].is_real() && !roots[3].is_real());
    }

    #[test]
    fn repeated_irrational_pair() {
        // (x^2 - 2)^2 → ±√2, multiplicity 2 each
        let f = p(&[-2, 0, 1]).mul(&p(&[-2, 0, 1]));
        let roots = isolate_roots(&f, 100).unwrap();
        assert_eq!(roots.len(), 2);
        for r in &roots {
            assert_eq!(r.multiplicity(), 2);
            assert!((r.re().to_f64().abs() - std::f64::consts::SQRT_2).abs() < 1e-14);
        }
    }

    #[test]
    fn residual_bound_at_centers() {
        // |p(center)| ≤ radius · sup_box |p'| for every returned box
        for f in [p(&[-1, -1, 1]), p(&[-1, -1, -1, 1]), p(&[1, 0, 1]).mul(&p(&[-2, 1]))] {
            let roots = isolate_roots(&f, 80).unwrap();
            let df = f.derivative();
            for r in &roots {
                let (vr, vi) = eval_complex_exact(&f, r.re(), r.im());
                let val_sq = vr.mul(&vr).add(&vi.mul(&vi));
                let val = val_sq.sqrt(96, Round::Ceil);
                let dbox = df.eval_civ(&r.as_civ(), 96).modulus(96);
                let bound = r.radius().mul(dbox.hi()).round(96, Round::Ceil);
                assert!(
                    val <= bound.add(&Dyadic::pow2(-64)),
                    "residual {} exceeds {} for {}",
                    val.to_f64(),
                    bound.to_f64(),
                    f
                );
            }
        }
    }

    #[test]
    fn rejects_constants() {
        assert!(isolate_roots(&IntPoly::one(), 64).is_err());
        assert!(isolate_roots(&IntPoly::new(vec![BigInt::from(7)]), 64).is_err());
    }

    #[test]
    fn zero_roots_extracted() {
        // x^2 (x - 3)
        let f = IntPoly::monomial(BigInt::from(1), 2).mul(&p(&[-3, 1]));
        let roots = isolate_roots(&f, 64).unwrap();
        assert_eq!(roots.len(), 2);
        let zero = roots.iter().find(|r| r.re().is_zero()).unwrap();
        assert_eq!(zero.multiplicity(), 2);
        assert!(zero.radius().is_zero());
    }
}

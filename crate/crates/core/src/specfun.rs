//! Special functions and scalar numerical primitives.
//!
//! Everything the optimization modules need that is not a one-line formula
//! lives here: the principal branch of the Lambert W function, a bracketed
//! root finder, a golden-section minimizer, and the asymptotic per-antenna
//! MIMO spectral efficiency `f` together with its numerical inverse.

use crate::error::{Error, Result};
use crate::math;

use core::f64::consts::{E, LN_2};

/// Natural log of 4, the constant the closed-form capacity expression is
/// written against.
const LN_4: f64 = 2.0 * LN_2;

/// Convergence control for the iterative routines.
///
/// `abs_tol` bounds function residuals, `rel_tol` bounds interval widths
/// relative to the argument, `max_iter` caps the iteration count.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ToleranceSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_iter: u32,
}

impl Default for ToleranceSpec {
    fn default() -> Self {
        Self {
            abs_tol: 1e-12,
            rel_tol: 1e-10,
            max_iter: 200,
        }
    }
}

impl ToleranceSpec {
    pub fn new(abs_tol: f64, rel_tol: f64, max_iter: u32) -> Result<Self> {
        let spec = Self {
            abs_tol,
            rel_tol,
            max_iter,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.abs_tol.is_finite() || self.abs_tol <= 0.0 {
            return Err(Error::Domain("abs_tol must be positive and finite"));
        }
        if !self.rel_tol.is_finite() || self.rel_tol <= 0.0 {
            return Err(Error::Domain("rel_tol must be positive and finite"));
        }
        if self.max_iter == 0 {
            return Err(Error::Domain("max_iter must be at least 1"));
        }
        Ok(())
    }
}

/// An interval `[lo, hi]` handed to a bracketing method.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BracketedInterval {
    pub lo: f64,
    pub hi: f64,
}

impl BracketedInterval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !lo.is_finite() || !hi.is_finite() {
            return Err(Error::Domain("bracket endpoints must be finite"));
        }
        if lo >= hi {
            return Err(Error::Domain("bracket requires lo < hi"));
        }
        Ok(Self { lo, hi })
    }
}

/// Principal branch `W0` of the Lambert W function, the inverse of
/// `w * e^w` on `[-1/e, inf)`.
///
/// Inputs within `tol.abs_tol` below the branch point `-1/e` are clamped to
/// it; anything further out is a domain error. Convergence is declared when
/// the residual `|w e^w - x|` drops below `abs_tol * max(1, |x|)`.
pub fn lambert_w0(x: f64, tol: ToleranceSpec) -> Result<f64> {
    tol.validate()?;
    if !x.is_finite() {
        return Err(Error::Domain("lambert_w0 argument must be finite"));
    }
    let branch_point = -1.0 / E;
    if x < branch_point - tol.abs_tol {
        return Err(Error::Domain("lambert_w0 argument below -1/e"));
    }
    let x = x.max(branch_point);
    if x == 0.0 {
        return Ok(0.0);
    }

    // p = sqrt(2 (1 + e x)) is the expansion variable at the branch point.
    let p_sq = (2.0 * (1.0 + E * x)).max(0.0);
    let p = math::sqrt(p_sq);
    let mut w = if x < -0.25 {
        // Series about the branch point; for tiny p this is already at
        // machine accuracy and the residual check below accepts it outright.
        -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0)))
    } else if x < 0.5 {
        // Series about zero.
        x * (1.0 - x * (1.0 - 1.5 * x))
    } else if x < 20.0 {
        math::ln(1.0 + x)
    } else {
        let lx = math::ln(x);
        lx - math::ln(lx)
    };

    let scale = math::abs(x).max(1.0);
    for _ in 0..tol.max_iter {
        let ew = math::exp(w);
        let residual = w * ew - x;
        if math::abs(residual) <= tol.abs_tol * scale {
            return Ok(w);
        }
        // Halley step: w <- w - f / (f' - f f'' / (2 f')), with
        // f' = e^w (w + 1) and f'' = e^w (w + 2).
        let d1 = ew * (w + 1.0);
        if d1 == 0.0 {
            break;
        }
        let denom = d1 - residual * (w + 2.0) / (2.0 * (w + 1.0));
        let step = if denom.is_finite() && denom != 0.0 {
            residual / denom
        } else {
            residual / d1
        };
        let prev = w;
        w -= step;
        if w < -1.0 {
            // Principal branch lives in [-1, inf); bisect back inside.
            w = -1.0 + 0.5 * (prev + 1.0);
        }
    }
    Err(Error::Convergence {
        context: "lambert_w0",
        max_iter: tol.max_iter,
    })
}

/// Finds a root of `f` inside a sign-changing bracket using Brent's method.
///
/// Stops when `|f(x)| <= abs_tol` or when the bracket width falls below
/// `rel_tol * |x|` (plus the unavoidable floating-point floor).
pub fn solve_bracketed_root<F>(f: F, interval: BracketedInterval, tol: ToleranceSpec) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    tol.validate()?;
    let mut a = interval.lo;
    let mut b = interval.hi;
    let mut fa = f(a);
    let mut fb = f(b);

    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::Bracket {
            lo: interval.lo,
            hi: interval.hi,
        });
    }

    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;

    for _ in 0..tol.max_iter {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if math::abs(fc) < math::abs(fb) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * math::abs(b) + 0.5 * tol.rel_tol * math::abs(b);
        let xm = 0.5 * (c - b);
        if math::abs(xm) <= tol1 || math::abs(fb) <= tol.abs_tol {
            return Ok(b);
        }
        if math::abs(e) >= tol1 && math::abs(fa) > math::abs(fb) {
            // Inverse quadratic interpolation, falling back to secant.
            let s = fb / fa;
            let (mut p, mut q) = if a == c {
                (2.0 * xm * s, 1.0 - s)
            } else {
                let q = fa / fc;
                let r = fb / fc;
                (
                    s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0)),
                    (q - 1.0) * (r - 1.0) * (s - 1.0),
                )
            };
            if p > 0.0 {
                q = -q;
            }
            p = math::abs(p);
            let min1 = 3.0 * xm * q - math::abs(tol1 * q);
            let min2 = math::abs(e * q);
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        if math::abs(d) > tol1 {
            b += d;
        } else {
            b += if xm >= 0.0 { tol1 } else { -tol1 };
        }
        fb = f(b);
        if fb == 0.0 {
            return Ok(b);
        }
    }
    Err(Error::Convergence {
        context: "solve_bracketed_root",
        max_iter: tol.max_iter,
    })
}

/// Golden-section search for the minimum of a unimodal `f` on `[lo, hi]`.
///
/// Returns `(x_min, f(x_min))` once the bracket width is below
/// `abs_tol + rel_tol * |x|`.
pub fn golden_section_min<F>(f: F, interval: BracketedInterval, tol: ToleranceSpec) -> Result<(f64, f64)>
where
    F: Fn(f64) -> f64,
{
    tol.validate()?;
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut a = interval.lo;
    let mut b = interval.hi;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);

    for _ in 0..tol.max_iter {
        if b - a <= tol.abs_tol + tol.rel_tol * 0.5 * (math::abs(x1) + math::abs(x2)) {
            return Ok(if f1 < f2 { (x1, f1) } else { (x2, f2) });
        }
        if f1 < f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
    }
    Err(Error::Convergence {
        context: "golden_section_min",
        max_iter: tol.max_iter,
    })
}

/// Asymptotic per-antenna spectral efficiency `f(x)` of a square MIMO link
/// with an uninformed transmitter, where `x` is the noise-normalized
/// per-antenna SNR.
///
/// Evaluates the closed form
/// `4 log(sqrt(4x+1)+1)/log 4 + (sqrt(4x+1)-1)/(x log 4) - 2 - 2/log 4`
/// with `(sqrt(4x+1)-1)/x` rewritten as `4/(sqrt(4x+1)+1)` and a Taylor
/// expansion below `x = 1e-6`, so the `x -> 0` limit comes out as exactly
/// zero instead of `0/0`.
pub fn asymptotic_mimo_se(x: f64) -> Result<f64> {
    if !x.is_finite() || x < 0.0 {
        return Err(Error::Domain("asymptotic_mimo_se requires x >= 0"));
    }
    if x < 1e-6 {
        // f(x) = (x - x^2 + (5/3) x^3 + O(x^4)) / ln 2
        return Ok(x * (1.0 - x * (1.0 - x * (5.0 / 3.0))) / LN_2);
    }
    let s = math::sqrt(4.0 * x + 1.0);
    Ok((4.0 * math::ln(s + 1.0) + 4.0 / (s + 1.0) - 2.0 * LN_4 - 2.0) / LN_4)
}

/// Numerical inverse of [`asymptotic_mimo_se`]: the per-antenna SNR that
/// achieves a given per-antenna spectral efficiency `beta`.
///
/// There is no closed form; the root is bracketed from `[0, 2^(beta+2)]`
/// (expanded geometrically if ever needed) and polished with Brent.
pub fn inverse_asymptotic_mimo_se(beta: f64, tol: ToleranceSpec) -> Result<f64> {
    tol.validate()?;
    if !beta.is_finite() || beta < 0.0 {
        return Err(Error::Domain("inverse_asymptotic_mimo_se requires beta >= 0"));
    }
    if beta == 0.0 {
        return Ok(0.0);
    }
    let mut hi = math::exp2(beta + 2.0);
    if !hi.is_finite() {
        return Err(Error::Domain("beta too large to bracket in f64"));
    }
    let mut f_hi = asymptotic_mimo_se(hi)?;
    let mut expansions = 0;
    while f_hi <= beta {
        hi *= 4.0;
        if !hi.is_finite() {
            return Err(Error::Domain("beta too large to bracket in f64"));
        }
        f_hi = asymptotic_mimo_se(hi)?;
        expansions += 1;
        if expansions > 64 {
            return Err(Error::Convergence {
                context: "inverse_asymptotic_mimo_se bracket expansion",
                max_iter: tol.max_iter,
            });
        }
    }
    let interval = BracketedInterval::new(0.0, hi)?;
    solve_bracketed_root(
        // f is strictly increasing, so this residual changes sign exactly once.
        |x| asymptotic_mimo_se(x).map_or(f64::NAN, |v| v - beta),
        interval,
        tol,
    )
}

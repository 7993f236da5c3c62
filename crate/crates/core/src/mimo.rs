//! MIMO spectral-efficiency optimization for square links with an
//! uninformed transmitter.
//!
//! A finite-matrix capacity sample `log2 det(I + P0/(l n_t) H H^dag)` acts
//! as the ground truth; the per-antenna asymptotic capacity `f` from
//! [`crate::specfun`] replaces it in the optimization, with the
//! antenna-normalized spectral efficiency `beta = c / n` as the free
//! variable. The objective `[f^-1(beta)]^(2/alpha) / beta` is minimized
//! numerically (no closed form exists) and a cubic fit approximates the
//! minimizer.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::math;
use crate::siso::{stationarity_residual, ChannelModel, OptMethod, OptimizationResult};
use crate::specfun::{
    golden_section_min, inverse_asymptotic_mimo_se, BracketedInterval, ToleranceSpec,
};

use core::f64::consts::LN_2;

/// Number of grid points used to bracket the objective minimum.
const SCAN_POINTS: usize = 128;
/// Lower edge of the bracketing scan.
const SCAN_LO: f64 = 1e-4;

/// A square MIMO link: `n` antennas on each side, shared power budget `P0`
/// normalized to the thermal noise.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MimoLinkParams {
    pub n_antennas: u32,
    pub channel: ChannelModel,
    pub total_power_p0: f64,
}

impl MimoLinkParams {
    pub fn new(n_antennas: u32, channel: ChannelModel, total_power_p0: f64) -> Result<Self> {
        let params = Self {
            n_antennas,
            channel,
            total_power_p0,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_antennas == 0 {
            return Err(Error::Domain("n_antennas must be at least 1"));
        }
        self.channel.validate()?;
        if !self.total_power_p0.is_finite() || self.total_power_p0 < 0.0 {
            return Err(Error::Domain("total_power_p0 must be nonnegative"));
        }
        Ok(())
    }

    /// Noise-normalized per-antenna SNR `x = a^2 P0 / l` with the receiver
    /// gain normalized to `a = 1`.
    pub fn per_antenna_snr(&self) -> f64 {
        self.total_power_p0 / self.channel.loss_l
    }
}

/// Antenna-normalized spectral efficiency `beta = c / n`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct NormalizedSpectralEfficiency(f64);

impl NormalizedSpectralEfficiency {
    pub fn new(beta: f64) -> Result<Self> {
        if !beta.is_finite() || beta < 0.0 {
            return Err(Error::Domain("beta must be nonnegative"));
        }
        Ok(Self(beta))
    }

    pub fn get(&self) -> f64 {
        self.0
    }
}

/// Spectral efficiency of one channel realization:
/// `c = log2 det(I + P0/(l n_t) H H^dag)`.
pub fn mimo_capacity_sample(channel_matrix: &ComplexMatrix, p0: f64, loss_l: f64) -> Result<f64> {
    if !p0.is_finite() || p0 < 0.0 {
        return Err(Error::Domain("P0 must be nonnegative"));
    }
    if !loss_l.is_finite() || loss_l < 1.0 {
        return Err(Error::Domain("loss_l must be a linear factor >= 1"));
    }
    let n_t = channel_matrix.cols() as f64;
    let scale = p0 / (loss_l * n_t);
    Ok(channel_matrix.logdet_identity_plus_scaled_gram(scale)? / LN_2)
}

/// Monte-Carlo mean of the antenna-normalized capacity `c / n` over i.i.d.
/// complex Gaussian channels, the finite-matrix reference for
/// [`asymptotic_mimo_se`] at `x = P0 / l`.
///
/// Each draw uses its own counter-derived ChaCha stream, so the result is
/// reproducible for a fixed seed no matter how the draws are batched.
pub fn ergodic_normalized_capacity(
    params: &MimoLinkParams,
    draws: u32,
    seed: u64,
) -> Result<f64> {
    params.validate()?;
    if draws == 0 {
        return Err(Error::Domain("draws must be at least 1"));
    }
    let n = params.n_antennas as usize;
    let base = ChaCha8Rng::seed_from_u64(seed);
    let mut acc = 0.0;
    for draw in 0..draws {
        let mut rng = base.clone();
        rng.set_stream(draw as u64);
        let h = ComplexMatrix::complex_gaussian(n, n, &mut rng)?;
        acc += mimo_capacity_sample(&h, params.total_power_p0, params.channel.loss_l)?;
    }
    Ok(acc / (draws as f64 * n as f64))
}

/// MIMO interference objective `[f^-1(beta)]^(2/alpha) / beta`
/// (proportionality constant fixed at 1).
pub fn mimo_objective(beta: f64, alpha: f64) -> Result<f64> {
    if !beta.is_finite() || beta <= 0.0 {
        return Err(Error::Domain("beta must be positive"));
    }
    if !alpha.is_finite() || alpha <= 0.0 {
        return Err(Error::Domain("alpha must be positive"));
    }
    let x = inverse_asymptotic_mimo_se(beta, ToleranceSpec::default())?;
    Ok(math::powf(x, 2.0 / alpha) / beta)
}

/// Minimizes [`mimo_objective`] over `beta` by a log-spaced grid scan
/// followed by golden-section refinement.
///
/// At `alpha = 2` the infimum sits at `beta -> 0` (the same degeneracy as
/// the SISO case); it is reported as `beta = 0` with the degenerate flag and
/// the limiting objective value `ln 2` rather than as an error.
pub fn mimo_beta_opt_numeric(alpha: f64, tol: ToleranceSpec) -> Result<OptimizationResult> {
    tol.validate()?;
    if !alpha.is_finite() || alpha < 2.0 {
        return Err(Error::Domain("mimo_beta_opt_numeric requires alpha >= 2"));
    }

    // The per-antenna optimum sits below the SISO optimum, which is itself
    // below alpha / (2 ln 2); pad that bound for the scan ceiling.
    let scan_hi = alpha / (2.0 * LN_2) + 1.0;
    let log_lo = math::ln(SCAN_LO);
    let log_hi = math::ln(scan_hi);
    let mut best_idx = 0;
    let mut best_val = f64::INFINITY;
    let mut grid = [0.0; SCAN_POINTS];
    for (i, slot) in grid.iter_mut().enumerate() {
        let t = i as f64 / (SCAN_POINTS - 1) as f64;
        let beta = math::exp(log_lo + t * (log_hi - log_lo));
        *slot = beta;
        let val = mimo_objective(beta, alpha)?;
        if val < best_val {
            best_val = val;
            best_idx = i;
        }
    }

    if best_idx == 0 {
        // Objective still decreasing at the scan floor: infimum at beta -> 0.
        return Ok(OptimizationResult {
            c_opt: 0.0,
            objective_value: LN_2,
            stationarity_residual: 0.0,
            method: OptMethod::NumericArgmin,
            degenerate: true,
        });
    }
    if best_idx == SCAN_POINTS - 1 {
        return Err(Error::Convergence {
            context: "mimo_beta_opt_numeric scan hit the grid ceiling",
            max_iter: tol.max_iter,
        });
    }

    let bracket = BracketedInterval::new(grid[best_idx - 1], grid[best_idx + 1])?;
    let (beta_opt, objective_value) = golden_section_min(
        |beta| mimo_objective(beta, alpha).unwrap_or(f64::INFINITY),
        bracket,
        tol,
    )?;
    Ok(OptimizationResult {
        c_opt: beta_opt,
        objective_value,
        stationarity_residual: stationarity_residual(|b| mimo_objective(b, alpha), beta_opt)?,
        method: OptMethod::NumericArgmin,
        degenerate: false,
    })
}

/// Cubic fit to the numeric optimum:
/// `0.795 (a-2) + 0.028 (a-2)^2 - 0.003 (a-2)^3`.
///
/// Calibrated for `alpha` in [`crate::siso::POLY_ALPHA_RANGE`].
pub fn mimo_beta_opt_poly(alpha: f64) -> f64 {
    let d = alpha - 2.0;
    d * (0.795 + d * (0.028 + d * (-0.003)))
}

/// Radius of disruptive interference for a MIMO link running at per-antenna
/// spectral efficiency `beta`: `r_i = r_link (l f^-1(beta) / eta_i)^(1/alpha)`,
/// anchored exactly like the SISO radius.
pub fn mimo_interference_radius(beta: f64, channel: &ChannelModel, eta_i: f64) -> Result<f64> {
    channel.validate()?;
    if !beta.is_finite() || beta <= 0.0 {
        return Err(Error::Domain("beta must be positive"));
    }
    if !eta_i.is_finite() || eta_i <= 0.0 {
        return Err(Error::Domain("eta_i must be positive"));
    }
    let x = inverse_asymptotic_mimo_se(beta, ToleranceSpec::default())?;
    Ok(channel.r_link * math::powf(channel.loss_l * x / eta_i, 1.0 / channel.alpha))
}

/// Average rate delivered by duty-cycled operation at the per-antenna
/// optimum: `R = d n beta_opt B`.
pub fn max_average_rate_mimo(alpha: f64, n_antennas: u32, bandwidth_b: f64, duty_d: f64) -> Result<f64> {
    if n_antennas == 0 {
        return Err(Error::Domain("n_antennas must be at least 1"));
    }
    if !bandwidth_b.is_finite() || bandwidth_b <= 0.0 {
        return Err(Error::Domain("bandwidth must be positive"));
    }
    if !duty_d.is_finite() || duty_d <= 0.0 || duty_d > 1.0 {
        return Err(Error::Domain("duty cycle must lie in (0, 1]"));
    }
    let beta_opt = mimo_beta_opt_numeric(alpha, ToleranceSpec::default())?.c_opt;
    Ok(duty_d * n_antennas as f64 * beta_opt * bandwidth_b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::asymptotic_mimo_se;
    use alloc::vec;
    use num_complex::Complex64;

    const F_AT_1: f64 = 0.837_423_357_042_569_9;

    #[test]
    fn capacity_sample_trivial_cases() {
        let h = ComplexMatrix::identity(1).unwrap();
        assert!((mimo_capacity_sample(&h, 1.0, 1.0).unwrap() - 1.0).abs() < 1e-15);
        let h = ComplexMatrix::zeros(3, 3).unwrap();
        assert_eq!(mimo_capacity_sample(&h, 5.0, 1.0).unwrap(), 0.0);
        assert!(mimo_capacity_sample(&h, -1.0, 1.0).is_err());
        assert!(mimo_capacity_sample(&h, 1.0, 0.9).is_err());
    }

    #[test]
    fn capacity_invariant_under_unitary_rotation() {
        // U = I - 2 v v^dag / (v^dag v) is unitary; left-multiplying H by it
        // must leave log det(I + c H H^dag) unchanged.
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let h = ComplexMatrix::complex_gaussian(4, 4, &mut rng).unwrap();
        let v = [
            Complex64::new(1.0, 0.5),
            Complex64::new(-0.3, 1.0),
            Complex64::new(0.0, -2.0),
            Complex64::new(0.7, 0.1),
        ];
        let norm_sq: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        let mut u = ComplexMatrix::identity(4).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                u[(i, j)] -= v[i] * v[j].conj() * Complex64::new(2.0 / norm_sq, 0.0);
            }
        }
        let uh = u.mul(&h).unwrap();
        let c0 = mimo_capacity_sample(&h, 3.0, 1.0).unwrap();
        let c1 = mimo_capacity_sample(&uh, 3.0, 1.0).unwrap();
        assert!((c0 - c1).abs() <= 1e-9 * c0.abs().max(1.0));
    }

    #[test]
    fn ergodic_capacity_is_deterministic_per_seed() {
        let params = MimoLinkParams::new(8, ChannelModel::default(), 8.0).unwrap();
        let a = ergodic_normalized_capacity(&params, 16, 99).unwrap();
        let b = ergodic_normalized_capacity(&params, 16, 99).unwrap();
        assert_eq!(a, b);
        let c = ergodic_normalized_capacity(&params, 16, 100).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn ergodic_capacity_tracks_asymptotic_value() {
        // x = P0 / l = 1 at n = 32 should already be within a couple percent.
        let params = MimoLinkParams::new(32, ChannelModel::default(), 32.0).unwrap();
        let mean = ergodic_normalized_capacity(&params, 64, 11).unwrap();
        let f = asymptotic_mimo_se(32.0).unwrap();
        assert!((mean - f).abs() / f < 0.03, "mean {mean}, f {f}");
    }

    #[test]
    fn objective_at_unit_snr() {
        // f^-1(f(1)) = 1, so the objective is 1/f(1) for every alpha.
        let want = 1.0 / F_AT_1;
        for alpha in [2.0, 4.0] {
            let got = mimo_objective(F_AT_1, alpha).unwrap();
            assert!((got - want).abs() < 1e-8, "alpha {alpha}: {got} vs {want}");
        }
        assert!(mimo_objective(0.0, 4.0).is_err());
    }

    #[test]
    fn beta_opt_numeric_frozen_values() {
        // Frozen from high-precision minimization of the objective.
        let cases = [
            (2.5, 0.385_326_090_282_299_7),
            (3.0, 0.803_660_926_391_670_3),
            (4.0, 1.681_638_936_755_101_5),
            (6.0, 3.448_670_725_500_164_5),
        ];
        for (alpha, want) in cases {
            let got = mimo_beta_opt_numeric(alpha, ToleranceSpec::default()).unwrap();
            assert!(
                (got.c_opt - want).abs() < 1e-6,
                "alpha {alpha}: got {}, want {want}",
                got.c_opt
            );
            assert!(got.stationarity_residual <= 1e-6);
            assert!(!got.degenerate);
            assert_eq!(got.method, OptMethod::NumericArgmin);
        }
    }

    #[test]
    fn beta_opt_degenerate_at_two() {
        let r = mimo_beta_opt_numeric(2.0, ToleranceSpec::default()).unwrap();
        assert_eq!(r.c_opt, 0.0);
        assert!(r.degenerate);
        assert!(matches!(
            mimo_beta_opt_numeric(1.9, ToleranceSpec::default()),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn beta_opt_poly_examples() {
        assert_eq!(mimo_beta_opt_poly(2.0), 0.0);
        assert!((mimo_beta_opt_poly(3.0) - 0.820).abs() < 1e-12);
        assert!((mimo_beta_opt_poly(4.0) - 1.678).abs() < 1e-12);
    }

    #[test]
    fn radius_examples() {
        let ch = ChannelModel::new(2.0, 1.0, 10.0).unwrap();
        let r = mimo_interference_radius(F_AT_1, &ch, 1.0).unwrap();
        assert!((r - 10.0).abs() < 1e-7);
        let r = mimo_interference_radius(F_AT_1, &ch, 0.01).unwrap();
        assert!((r - 100.0).abs() < 1e-6);

        let ch = ChannelModel::new(4.0, 1.0, 10.0).unwrap();
        let r = mimo_interference_radius(1.678, &ch, 0.001).unwrap();
        // 10 * (f^-1(1.678) / 1e-3)^(1/4) with f^-1(1.678) = 3.3341353770.
        assert!((r - 75.988_138_813_021_7).abs() < 1e-6);
    }

    #[test]
    fn max_average_rate_examples() {
        assert_eq!(max_average_rate_mimo(2.0, 4, 1e6, 0.5).unwrap(), 0.0);
        let r = max_average_rate_mimo(4.0, 4, 1e6, 0.5).unwrap();
        assert!((r - 3.363_277_873_510_203e6).abs() < 1.0);
        let r = max_average_rate_mimo(3.0, 1, 1e6, 0.25).unwrap();
        assert!((r - 2.009_152_315_979_175_6e5).abs() < 1.0);
        assert!(max_average_rate_mimo(4.0, 0, 1e6, 0.5).is_err());
        assert!(max_average_rate_mimo(4.0, 4, 1e6, 1.5).is_err());
    }

    #[test]
    fn normalized_se_newtype_validates() {
        assert!(NormalizedSpectralEfficiency::new(-0.1).is_err());
        assert_eq!(NormalizedSpectralEfficiency::new(1.5).unwrap().get(), 1.5);
    }

    #[test]
    fn diagonal_channel_matches_per_stream_sum() {
        // H = diag(1, 2): c = sum log2(1 + P0 d_k^2 / (l n_t)).
        let h = ComplexMatrix::new(
            2,
            2,
            vec![
                Complex64::new(1.0, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(2.0, 0.0),
            ],
        )
        .unwrap();
        let p0 = 4.0;
        let want = (1.0f64 + p0 / 2.0).log2() + (1.0f64 + 4.0 * p0 / 2.0).log2();
        let got = mimo_capacity_sample(&h, p0, 1.0).unwrap();
        assert!((got - want).abs() < 1e-12);
    }
}

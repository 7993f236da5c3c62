//! SISO spectral-efficiency optimization.
//!
//! A transmitter with a fixed message size trades transmit duration and
//! bandwidth against power. The probability of disrupting a hidden node
//! factors into a collision term proportional to the time-bandwidth product
//! and a range term proportional to the disruptive-interference area, which
//! under power-law loss with exponent `alpha` collapses to the
//! one-dimensional objective `g(c) = (2^c - 1)^(2/alpha) / c` over the
//! spectral efficiency `c`. The minimizer has a closed form in the Lambert W
//! function; a cubic fit in `(alpha - 2)` approximates it.

use crate::error::{Error, Result};
use crate::math;
use crate::specfun::{lambert_w0, ToleranceSpec};

use core::f64::consts::{E, LN_2};
use core::ops::RangeInclusive;

/// Calibrated range of the cubic fits for the optimal spectral efficiency.
pub const POLY_ALPHA_RANGE: RangeInclusive<f64> = 2.0..=6.0;

/// Power-law channel between the transmitter, its receiver, and hidden nodes.
///
/// Gains follow `gain(r) = (r / r_link)^(-alpha)` relative to the receiver
/// gain, so the INR seen at distance `r` from the transmitter is
/// `eta(r) = (r / r_link)^(-alpha) * gamma` for a link SNR `gamma`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(deny_unknown_fields, default))]
pub struct ChannelModel {
    /// Path-loss exponent; 2 in free space, 3-4 in scattering environments.
    pub alpha: f64,
    /// Implementation loss as a linear factor, at least 1.
    pub loss_l: f64,
    /// Transmitter-to-receiver distance.
    pub r_link: f64,
}

impl Default for ChannelModel {
    fn default() -> Self {
        Self {
            alpha: 4.0,
            loss_l: 1.0,
            r_link: 10.0,
        }
    }
}

impl ChannelModel {
    pub fn new(alpha: f64, loss_l: f64, r_link: f64) -> Result<Self> {
        let model = Self {
            alpha,
            loss_l,
            r_link,
        };
        model.validate()?;
        Ok(model)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.alpha.is_finite() || self.alpha <= 0.0 {
            return Err(Error::Domain("alpha must be positive"));
        }
        if !self.loss_l.is_finite() || self.loss_l < 1.0 {
            return Err(Error::Domain("loss_l must be a linear factor >= 1"));
        }
        if !self.r_link.is_finite() || self.r_link <= 0.0 {
            return Err(Error::Domain("r_link must be positive"));
        }
        Ok(())
    }

    /// Hidden-node to receiver gain ratio `b^2 / a^2 = (r / r_link)^(-alpha)`.
    pub fn gain_ratio(&self, r: f64) -> f64 {
        math::powf(r / self.r_link, -self.alpha)
    }
}

/// A concrete transmission: message size, duration, bandwidth, and spectral
/// efficiency tied together by `n_info = T * B * c`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TransmissionPlan {
    /// Message size in bits.
    pub n_info: f64,
    /// Transmit duration in seconds.
    pub duration_t: f64,
    /// Occupied bandwidth in Hz.
    pub bandwidth_b: f64,
    /// Spectral efficiency in b/s/Hz.
    pub spectral_efficiency_c: f64,
    /// Repetition period for periodic (fixed average rate) operation.
    pub period_t0: Option<f64>,
}

impl TransmissionPlan {
    pub fn new(
        n_info: f64,
        duration_t: f64,
        bandwidth_b: f64,
        spectral_efficiency_c: f64,
        period_t0: Option<f64>,
    ) -> Result<Self> {
        let plan = Self {
            n_info,
            duration_t,
            bandwidth_b,
            spectral_efficiency_c,
            period_t0,
        };
        plan.validate()?;
        Ok(plan)
    }

    /// Derives the spectral efficiency from the other three quantities.
    pub fn from_message(n_info: f64, duration_t: f64, bandwidth_b: f64) -> Result<Self> {
        if !duration_t.is_finite()
            || duration_t <= 0.0
            || !bandwidth_b.is_finite()
            || bandwidth_b <= 0.0
        {
            return Err(Error::Domain("duration and bandwidth must be positive"));
        }
        Self::new(
            n_info,
            duration_t,
            bandwidth_b,
            n_info / (duration_t * bandwidth_b),
            None,
        )
    }

    pub fn validate(&self) -> Result<()> {
        for (value, name) in [
            (self.n_info, "n_info must be positive"),
            (self.duration_t, "duration_t must be positive"),
            (self.bandwidth_b, "bandwidth_b must be positive"),
            (self.spectral_efficiency_c, "spectral_efficiency_c must be positive"),
        ] {
            if !value.is_finite() || value <= 0.0 {
                return Err(Error::Domain(name));
            }
        }
        let product = self.duration_t * self.bandwidth_b * self.spectral_efficiency_c;
        if math::abs(product - self.n_info) > 1e-9 * self.n_info {
            return Err(Error::Domain("n_info must equal duration_t * bandwidth_b * c"));
        }
        if let Some(t0) = self.period_t0 {
            if !t0.is_finite() || t0 <= 0.0 {
                return Err(Error::Domain("period_t0 must be positive"));
            }
            if self.duration_t > t0 {
                return Err(Error::Domain("duration_t must not exceed period_t0"));
            }
        }
        Ok(())
    }

    /// Duty cycle `T / T0`, when a repetition period is set.
    pub fn duty_cycle(&self) -> Option<f64> {
        self.period_t0.map(|t0| self.duration_t / t0)
    }
}

/// How the hidden link's time-frequency extent enters the collision factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum OverlapMode {
    /// Both links contribute: `(T + T_H)(B + B_H)`.
    General,
    /// Hidden extents negligible (cognitive-radio case): `T * B`.
    Cognitive,
    /// Jointly optimized network, equal extents: `4 * T * B`.
    Joint,
}

/// Temporal and spectral extents of the hidden link.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct OverlapExtents {
    pub hidden_t_h: f64,
    pub hidden_b_h: f64,
    pub mode: OverlapMode,
}

impl OverlapExtents {
    pub fn new(hidden_t_h: f64, hidden_b_h: f64, mode: OverlapMode) -> Result<Self> {
        if !hidden_t_h.is_finite() || hidden_t_h < 0.0 || !hidden_b_h.is_finite() || hidden_b_h < 0.0 {
            return Err(Error::Domain("hidden extents must be nonnegative"));
        }
        Ok(Self {
            hidden_t_h,
            hidden_b_h,
            mode,
        })
    }
}

/// Which route produced an optimal spectral efficiency.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum OptMethod {
    ExactLambert,
    Polynomial,
    NumericArgmin,
}

impl OptMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            OptMethod::ExactLambert => "exact-lambert",
            OptMethod::Polynomial => "polynomial",
            OptMethod::NumericArgmin => "numeric-argmin",
        }
    }
}

/// An optimal spectral efficiency together with the evidence for it.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct OptimizationResult {
    /// Optimal spectral efficiency (b/s/Hz; per antenna for MIMO).
    pub c_opt: f64,
    /// Objective value at the optimum (proportional interference probability).
    pub objective_value: f64,
    /// Central-difference derivative magnitude at the optimum, relative to
    /// the objective value. Zero by convention at a degenerate optimum.
    pub stationarity_residual: f64,
    pub method: OptMethod,
    /// Set when the optimum sits on the `c -> 0` boundary (alpha = 2).
    pub degenerate: bool,
}

/// Relative central-difference derivative of `f` at `x`, step
/// `1e-6 * max(1, |x|)`.
pub(crate) fn stationarity_residual<F>(f: F, x: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let h = 1e-6 * math::abs(x).max(1.0);
    let fp = f(x + h)?;
    let fm = f(x - h)?;
    let f0 = f(x)?;
    Ok(math::abs((fp - fm) / (2.0 * h)) / math::abs(f0).max(f64::MIN_POSITIVE))
}

/// Receiver SNR needed to run at spectral efficiency `c` with implementation
/// loss `loss_l`: `gamma = l (2^c - 1)`, the inverse of `c = log2(1 + gamma/l)`.
pub fn snr_for_spectral_efficiency(c: f64, loss_l: f64) -> Result<f64> {
    if !c.is_finite() || c < 0.0 {
        return Err(Error::Domain("spectral efficiency must be nonnegative"));
    }
    if !loss_l.is_finite() || loss_l < 1.0 {
        return Err(Error::Domain("loss_l must be a linear factor >= 1"));
    }
    Ok(loss_l * (math::exp2(c) - 1.0))
}

/// Radius inside which a hidden node sees an INR above `eta_i`:
/// `r_i = r_link (l (2^c - 1) / eta_i)^(1/alpha)`.
pub fn interference_radius(c: f64, channel: &ChannelModel, eta_i: f64) -> Result<f64> {
    channel.validate()?;
    if !c.is_finite() || c <= 0.0 {
        return Err(Error::Domain("spectral efficiency must be positive"));
    }
    if !eta_i.is_finite() || eta_i <= 0.0 {
        return Err(Error::Domain("eta_i must be positive"));
    }
    let gamma = snr_for_spectral_efficiency(c, channel.loss_l)?;
    Ok(channel.r_link * math::powf(gamma / eta_i, 1.0 / channel.alpha))
}

/// Interference-probability objective `g(c) = (2^c - 1)^(2/alpha) / c`
/// (proportionality constant fixed at 1).
pub fn siso_objective(c: f64, alpha: f64) -> Result<f64> {
    if !c.is_finite() || c <= 0.0 {
        return Err(Error::Domain("spectral efficiency must be positive"));
    }
    if !alpha.is_finite() || alpha <= 0.0 {
        return Err(Error::Domain("alpha must be positive"));
    }
    Ok(math::powf(math::exp2(c) - 1.0, 2.0 / alpha) / c)
}

/// Closed-form minimizer of [`siso_objective`]:
/// `c_opt = (alpha + 2 W0(-alpha e^(-alpha/2) / 2)) / (2 ln 2)`.
///
/// Defined for `alpha >= 2`. At `alpha = 2` the Lambert argument hits the
/// branch point, the optimum degenerates to `c = 0`, and the objective value
/// reported is the `c -> 0` limit `ln 2`.
pub fn siso_copt_exact(alpha: f64) -> Result<OptimizationResult> {
    if !alpha.is_finite() || alpha < 2.0 {
        return Err(Error::Domain("siso_copt_exact requires alpha >= 2"));
    }
    let arg = -0.5 * math::exp(-alpha / 2.0) * alpha;
    if !(-1.0 / E - 1e-9..0.0).contains(&arg) {
        return Err(Error::Domain("Lambert argument outside [-1/e, 0)"));
    }
    let w = lambert_w0(arg, ToleranceSpec::default())?;
    let c_opt = ((alpha + 2.0 * w) / (2.0 * LN_2)).max(0.0);

    if c_opt < 1e-12 {
        return Ok(OptimizationResult {
            c_opt: 0.0,
            objective_value: LN_2,
            stationarity_residual: 0.0,
            method: OptMethod::ExactLambert,
            degenerate: true,
        });
    }
    Ok(OptimizationResult {
        c_opt,
        objective_value: siso_objective(c_opt, alpha)?,
        stationarity_residual: stationarity_residual(|c| siso_objective(c, alpha), c_opt)?,
        method: OptMethod::ExactLambert,
        degenerate: false,
    })
}

/// Cubic fit to the exact optimum:
/// `1.355 (a-2) - 0.118 (a-2)^2 + 0.008 (a-2)^3`.
///
/// Calibrated for `alpha` in [`POLY_ALPHA_RANGE`]; outside it the cubic is
/// still evaluated but no longer tracks the exact curve.
pub fn siso_copt_poly(alpha: f64) -> f64 {
    let d = alpha - 2.0;
    d * (1.355 + d * (-0.118 + d * 0.008))
}

/// Collision factor in time-bandwidth units for the selected overlap mode.
pub fn collision_overlap_factor(plan: &TransmissionPlan, extents: &OverlapExtents) -> f64 {
    let t = plan.duration_t;
    let b = plan.bandwidth_b;
    match extents.mode {
        OverlapMode::General => (t + extents.hidden_t_h) * (b + extents.hidden_b_h),
        OverlapMode::Cognitive => t * b,
        OverlapMode::Joint => 4.0 * t * b,
    }
}

/// Duty cycle `d = T / T0`.
pub fn duty_cycle(t: f64, t0: f64) -> Result<f64> {
    if !t.is_finite() || !t0.is_finite() || t <= 0.0 || t0 <= 0.0 {
        return Err(Error::Domain("durations must be positive"));
    }
    if t > t0 {
        return Err(Error::Domain("transmit duration exceeds repetition period"));
    }
    Ok(t / t0)
}

/// Whether a duty cycle is inside the regime where the fixed-message optimum
/// carries over to the fixed-average-rate problem (`d < 1/2` under equal
/// hidden-link durations). Reported as a flag; callers decide policy.
pub fn within_low_duty_regime(d: f64) -> bool {
    d < 0.5
}

/// Largest average rate for which transmitting at the fixed-message optimum
/// remains valid: `R < c_opt * B / 2`.
pub fn max_average_rate_siso(alpha: f64, bandwidth_b: f64) -> Result<f64> {
    if !bandwidth_b.is_finite() || bandwidth_b <= 0.0 {
        return Err(Error::Domain("bandwidth must be positive"));
    }
    Ok(0.5 * siso_copt_exact(alpha)?.c_opt * bandwidth_b)
}

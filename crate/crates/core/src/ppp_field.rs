//! Interference probability in a Poisson field of hidden nodes.
//!
//! Hidden nodes form a planar Poisson point process of density `rho`; each
//! receives packets at rate `lambda_rate`, independently of everything else.
//! Pairing node locations with packet-arrival times makes a 3-D point
//! process, and a transmission of duration `T` disrupts someone exactly when
//! a point lands in the cylinder of cross-section `A = pi r_i^2` and height
//! `T` over the transmitter. The analytic collision probability is the
//! complementary void probability `1 - exp(-lambda rho A T)`.
//!
//! An independent Monte-Carlo simulator draws the field and the arrival
//! processes directly (allowing multiple arrivals per node, which the
//! analytic model idealizes away) and serves as the validation oracle.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};

use crate::error::{Error, Result};
use crate::math;

use core::f64::consts::PI;

/// Environment of the Poisson hidden-node field.
///
/// Bandwidth is normalized to 1, so a message of `n_info` bits sent at
/// spectral efficiency `c` lasts `T = n_info / c`. The noise variance
/// `sigma2` converts the INR threshold `eta_i` into an absolute received
/// power, which is how it enters the collision formula.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(deny_unknown_fields, default))]
pub struct PoissonFieldParams {
    /// Hidden-node density in nodes per unit area.
    pub rho: f64,
    /// Packet arrival rate per node, packets per unit time.
    pub lambda_rate: f64,
    /// Transmitter-to-receiver distance of the link of interest.
    pub r_link: f64,
    /// Linear INR threshold for disruption.
    pub eta_i: f64,
    /// Noise variance in linear power units.
    pub sigma2: f64,
    /// Message size in bits.
    pub n_info: f64,
    /// Path-loss exponent.
    pub alpha: f64,
    /// Implementation loss, 1 for Shannon-capacity operation.
    pub loss_l: f64,
}

impl Default for PoissonFieldParams {
    /// Nominal environment: `n_info = 1024`, `r_link = 10`, densities of
    /// `1e-3`, a -30 dB threshold, `sigma2 = 1e-14`, `alpha = 4`, no loss.
    fn default() -> Self {
        Self {
            rho: 1e-3,
            lambda_rate: 1e-3,
            r_link: 10.0,
            eta_i: 1e-3,
            sigma2: 1e-14,
            n_info: 1024.0,
            alpha: 4.0,
            loss_l: 1.0,
        }
    }
}

impl PoissonFieldParams {
    pub fn validate(&self) -> Result<()> {
        if !self.rho.is_finite() || self.rho < 0.0 {
            return Err(Error::Domain("rho must be nonnegative"));
        }
        if !self.lambda_rate.is_finite() || self.lambda_rate < 0.0 {
            return Err(Error::Domain("lambda_rate must be nonnegative"));
        }
        for (value, msg) in [
            (self.r_link, "r_link must be positive"),
            (self.eta_i, "eta_i must be positive"),
            (self.sigma2, "sigma2 must be positive"),
            (self.n_info, "n_info must be positive"),
            (self.alpha, "alpha must be positive"),
        ] {
            if !value.is_finite() || value <= 0.0 {
                return Err(Error::Domain(msg));
            }
        }
        if !self.loss_l.is_finite() || self.loss_l < 1.0 {
            return Err(Error::Domain("loss_l must be a linear factor >= 1"));
        }
        Ok(())
    }

    /// Disruptive-interference radius at spectral efficiency `c`:
    /// `r_i = r_link ((sigma2 / eta_i) l (2^c - 1))^(1/alpha)`.
    ///
    /// The `sigma2 / eta_i` factor converts the INR threshold into an
    /// absolute power threshold; at `loss_l = 1` this is the collision
    /// formula's radius exactly.
    pub fn interference_radius(&self, c: f64) -> Result<f64> {
        self.validate()?;
        if !c.is_finite() || c <= 0.0 {
            return Err(Error::Domain("spectral efficiency must be positive"));
        }
        let gamma = self.loss_l * (math::exp2(c) - 1.0);
        Ok(self.r_link * math::powf(self.sigma2 / self.eta_i * gamma, 1.0 / self.alpha))
    }

    /// Transmission duration `T = n_info / c` under unit bandwidth.
    pub fn transmission_duration(&self, c: f64) -> Result<f64> {
        if !c.is_finite() || c <= 0.0 {
            return Err(Error::Domain("spectral efficiency must be positive"));
        }
        Ok(self.n_info / c)
    }
}

/// Cross-section and height of the space-time exclusion cylinder.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CylinderSpec {
    pub area_a: f64,
    pub duration_t: f64,
}

impl CylinderSpec {
    pub fn new(area_a: f64, duration_t: f64) -> Result<Self> {
        if !area_a.is_finite() || area_a < 0.0 || !duration_t.is_finite() || duration_t < 0.0
        {
            return Err(Error::Domain("cylinder extents must be nonnegative"));
        }
        Ok(Self { area_a, duration_t })
    }
}

/// Outcome of a Monte-Carlo collision run.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SimulationReport {
    /// Estimated collision probability.
    pub p_hat: f64,
    /// Number of simulated transmissions.
    pub trials: u64,
    /// 95% normal-approximation half-width `1.96 sqrt(p (1-p) / trials)`.
    pub ci_halfwidth: f64,
    /// Seed the run was keyed on.
    pub seed: u64,
    /// Radius of the simulated disc.
    pub region_radius: f64,
}

impl SimulationReport {
    /// One standard error of `p_hat` (the half-width with the 1.96 removed).
    pub fn std_error(&self) -> f64 {
        self.ci_halfwidth / 1.96
    }
}

/// Probability that at least one point of the space-time process lands in
/// the cylinder: `1 - exp(-lambda rho A T)`.
pub fn void_probability(cyl: &CylinderSpec, rho: f64, lambda_rate: f64) -> Result<f64> {
    if !rho.is_finite() || rho < 0.0 || !lambda_rate.is_finite() || lambda_rate < 0.0 {
        return Err(Error::Domain("rho and lambda_rate must be nonnegative"));
    }
    Ok(-math::expm1(-lambda_rate * rho * cyl.area_a * cyl.duration_t))
}

/// Collision probability at spectral efficiency `c`:
/// `1 - exp(-lambda rho pi r_link^2 (n_info/c) ((sigma2/eta_i) l (2^c - 1))^(2/alpha))`.
///
/// Evaluated directly from the displayed formula; the composition through
/// [`void_probability`] and [`PoissonFieldParams::interference_radius`] is
/// kept as an independent route and must agree (see the crate tests).
pub fn analytic_pi(c: f64, params: &PoissonFieldParams) -> Result<f64> {
    params.validate()?;
    if !c.is_finite() || c <= 0.0 {
        return Err(Error::Domain("spectral efficiency must be positive"));
    }
    let gamma = params.loss_l * (math::exp2(c) - 1.0);
    let exponent = params.lambda_rate
        * params.rho
        * PI
        * params.r_link
        * params.r_link
        * (params.n_info / c)
        * math::powf(params.sigma2 / params.eta_i * gamma, 2.0 / params.alpha);
    Ok(-math::expm1(-exponent))
}

/// Evaluates [`analytic_pi`] across an ascending grid of spectral
/// efficiencies, returning `(c, p_i)` pairs.
pub fn pi_curve(params: &PoissonFieldParams, c_grid: &[f64]) -> Result<Vec<(f64, f64)>> {
    if c_grid.is_empty() {
        return Err(Error::Domain("spectral-efficiency grid is empty"));
    }
    for pair in c_grid.windows(2) {
        if pair[0] >= pair[1] || pair[0].is_nan() || pair[1].is_nan() {
            return Err(Error::Domain("grid values must be strictly ascending"));
        }
    }
    c_grid
        .iter()
        .map(|&c| analytic_pi(c, params).map(|p| (c, p)))
        .collect()
}

/// Index of the smallest ordinate in a curve, `None` for an empty curve.
pub fn curve_argmin(points: &[(f64, f64)]) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (i, &(_, y)) in points.iter().enumerate() {
        if best.is_none_or(|b| y < points[b].1) {
            best = Some(i);
        }
    }
    best
}

/// Direct Monte-Carlo estimate of the collision probability.
///
/// Per trial: the node count is Poisson with mean `rho pi region_radius^2`,
/// node distances are uniform-in-disc, and each node within the interference
/// radius draws a true Poisson arrival process of rate `lambda_rate` over
/// `[0, window_t]`. The trial collides when any such node has an arrival
/// inside the transmission interval `[0, n_info/c]`. Multiple arrivals per
/// node are allowed, so this is the less idealized side of the comparison
/// with [`analytic_pi`].
///
/// Every trial runs on its own counter-derived ChaCha stream: a fixed seed
/// reproduces `p_hat` exactly regardless of how trials are batched across
/// workers.
pub fn simulate_collision_probability(
    c: f64,
    params: &PoissonFieldParams,
    trials: u64,
    seed: u64,
    window_t: f64,
    region_radius: f64,
) -> Result<SimulationReport> {
    params.validate()?;
    if trials == 0 {
        return Err(Error::Domain("trials must be at least 1"));
    }
    let r_i = params.interference_radius(c)?;
    let duration = params.transmission_duration(c)?;
    if !window_t.is_finite() || window_t <= 0.0 {
        return Err(Error::Config("window_t must be positive"));
    }
    if window_t < duration {
        return Err(Error::Config("window_t shorter than the transmission duration"));
    }
    if !region_radius.is_finite() || region_radius < 3.0 * r_i {
        return Err(Error::RegionTooSmall {
            given: region_radius,
            required: 3.0 * r_i,
        });
    }

    let mean_nodes = params.rho * PI * region_radius * region_radius;
    let node_count_dist = if mean_nodes > 0.0 {
        Some(Poisson::new(mean_nodes).map_err(|_| Error::Config("invalid node-count mean"))?)
    } else {
        None
    };
    let mean_arrivals = params.lambda_rate * window_t;
    let arrival_count_dist = if mean_arrivals > 0.0 {
        Some(Poisson::new(mean_arrivals).map_err(|_| Error::Config("invalid arrival mean"))?)
    } else {
        None
    };

    let base = ChaCha8Rng::seed_from_u64(seed);
    let mut hits: u64 = 0;
    for trial in 0..trials {
        let mut rng = base.clone();
        rng.set_stream(trial);
        let nodes = match &node_count_dist {
            Some(dist) => dist.sample(&mut rng) as u64,
            None => 0,
        };
        let mut collided = false;
        'nodes: for _ in 0..nodes {
            // Uniform placement in the disc; only the radial distance enters
            // the collision predicate.
            let u: f64 = rng.random();
            let distance = region_radius * math::sqrt(u);
            if distance > r_i {
                continue;
            }
            let arrivals = match &arrival_count_dist {
                Some(dist) => dist.sample(&mut rng) as u64,
                None => 0,
            };
            for _ in 0..arrivals {
                let t: f64 = rng.random::<f64>() * window_t;
                if t <= duration {
                    collided = true;
                    break 'nodes;
                }
            }
        }
        if collided {
            hits += 1;
        }
    }

    let p_hat = hits as f64 / trials as f64;
    let ci_halfwidth = 1.96 * math::sqrt(p_hat * (1.0 - p_hat) / trials as f64);
    Ok(SimulationReport {
        p_hat,
        trials,
        ci_halfwidth,
        seed,
        region_radius,
    })
}

//! Long-run cost when refresh intervals are iid random draws.
//!
//! With intervals `Y ~ H` independent of the update process, the renewal-reward
//! argument gives
//!
//! ```text
//! C_H = C_r / E(Y) + λ ∫₀^∞ C_a(t)·H̄(t) dt / E(Y)
//! ```
//!
//! where `H̄ = 1 − H`. The integral equals `E[∫₀^Y C_a]`, which is convex in `Y`,
//! so `C_H ≥ C(E(Y))` with equality only for a degenerate `Y`.

use rand::Rng;
use rand_distr::{Distribution, Exp, Gamma, Uniform};
use serde::{Deserialize, Serialize};
use statrs::function::gamma::{gamma_lr, gamma_ur, ln_gamma};

use crate::cost_model::{long_run_cost, AgeCost, AgeCostSpec, CostReport, Scenario};
use crate::error::{Error, Result};
use crate::numerics::{find_root_increasing, integrate, QuadConfig, RootConfig};

/// Tail mass below which the survival integral is truncated.
const TAIL_CUTOFF: f64 = 1e-15;

/// Distribution of the time between refreshes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawDistribution", into = "RawDistribution")]
pub enum IntervalDistribution {
    Degenerate { t: f64 },
    Uniform { a: f64, b: f64 },
    Exponential { mean: f64 },
    Gamma { shape: f64, scale: f64 },
}

impl IntervalDistribution {
    pub fn degenerate(t: f64) -> Result<Self> {
        Self::checked(IntervalDistribution::Degenerate { t })
    }

    pub fn uniform(a: f64, b: f64) -> Result<Self> {
        Self::checked(IntervalDistribution::Uniform { a, b })
    }

    /// Uniform on `(center − delta, center + delta)`.
    pub fn uniform_around(center: f64, delta: f64) -> Result<Self> {
        Self::uniform(center - delta, center + delta)
    }

    pub fn exponential(mean: f64) -> Result<Self> {
        Self::checked(IntervalDistribution::Exponential { mean })
    }

    pub fn gamma(shape: f64, scale: f64) -> Result<Self> {
        Self::checked(IntervalDistribution::Gamma { shape, scale })
    }

    fn checked(d: Self) -> Result<Self> {
        d.validate()?;
        Ok(d)
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(Error::domain(format!(
                    "{name} must be positive and finite, got {v}"
                )))
            }
        };
        match *self {
            IntervalDistribution::Degenerate { t } => positive("t", t),
            IntervalDistribution::Uniform { a, b } => {
                positive("a", a)?;
                positive("b", b)?;
                if a < b {
                    Ok(())
                } else {
                    Err(Error::domain(format!(
                        "uniform bounds need a < b, got ({a}, {b})"
                    )))
                }
            }
            IntervalDistribution::Exponential { mean } => positive("mean", mean),
            IntervalDistribution::Gamma { shape, scale } => {
                positive("shape", shape)?;
                positive("scale", scale)
            }
        }
    }

    pub fn is_degenerate(&self) -> bool {
        matches!(self, IntervalDistribution::Degenerate { .. })
    }

    /// `E(Y)`.
    pub fn mean(&self) -> f64 {
        match *self {
            IntervalDistribution::Degenerate { t } => t,
            IntervalDistribution::Uniform { a, b } => 0.5 * (a + b),
            IntervalDistribution::Exponential { mean } => mean,
            IntervalDistribution::Gamma { shape, scale } => shape * scale,
        }
    }

    /// `H̄(t) = P(Y > t)`.
    pub fn survival(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return 1.0;
        }
        match *self {
            IntervalDistribution::Degenerate { t: point } => {
                if t < point {
                    1.0
                } else {
                    0.0
                }
            }
            IntervalDistribution::Uniform { a, b } => {
                if t <= a {
                    1.0
                } else if t >= b {
                    0.0
                } else {
                    (b - t) / (b - a)
                }
            }
            IntervalDistribution::Exponential { mean } => (-t / mean).exp(),
            IntervalDistribution::Gamma { shape, scale } => gamma_ur(shape, t / scale),
        }
    }

    /// `H(t) = P(Y <= t)`, computed without cancellation against `H̄`.
    pub fn cdf(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return 0.0;
        }
        match *self {
            IntervalDistribution::Exponential { mean } => -(-t / mean).exp_m1(),
            IntervalDistribution::Gamma { shape, scale } => gamma_lr(shape, t / scale),
            _ => 1.0 - self.survival(t),
        }
    }

    /// Smallest `t` with `H̄(t) < 1e−15` (or the right end of the support).
    fn tail_point(&self) -> Result<f64> {
        match *self {
            IntervalDistribution::Degenerate { t } => Ok(t),
            IntervalDistribution::Uniform { b, .. } => Ok(b),
            IntervalDistribution::Exponential { mean } => Ok(-mean * TAIL_CUTOFF.ln()),
            IntervalDistribution::Gamma { .. } => {
                let hint = self.mean().max(f64::MIN_POSITIVE);
                find_root_increasing(
                    |t| TAIL_CUTOFF - self.survival(t),
                    0.0,
                    hint,
                    &RootConfig {
                        rel_tol: 1e-6,
                        ..RootConfig::default()
                    },
                )
            }
        }
    }

    /// Draws one interval.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match *self {
            IntervalDistribution::Degenerate { t } => t,
            IntervalDistribution::Uniform { a, b } => {
                Uniform::new(a, b).expect("validated bounds").sample(rng)
            }
            IntervalDistribution::Exponential { mean } => {
                Exp::new(1.0 / mean).expect("validated mean").sample(rng)
            }
            IntervalDistribution::Gamma { shape, scale } => Gamma::new(shape, scale)
                .expect("validated parameters")
                .sample(rng),
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum RawDistribution {
    Degenerate { t: f64 },
    Uniform { a: f64, b: f64 },
    Exponential { mean: f64 },
    Gamma { shape: f64, scale: f64 },
}

impl TryFrom<RawDistribution> for IntervalDistribution {
    type Error = Error;

    fn try_from(raw: RawDistribution) -> Result<Self> {
        match raw {
            RawDistribution::Degenerate { t } => Self::degenerate(t),
            RawDistribution::Uniform { a, b } => Self::uniform(a, b),
            RawDistribution::Exponential { mean } => Self::exponential(mean),
            RawDistribution::Gamma { shape, scale } => Self::gamma(shape, scale),
        }
    }
}

impl From<IntervalDistribution> for RawDistribution {
    fn from(d: IntervalDistribution) -> Self {
        match d {
            IntervalDistribution::Degenerate { t } => RawDistribution::Degenerate { t },
            IntervalDistribution::Uniform { a, b } => RawDistribution::Uniform { a, b },
            IntervalDistribution::Exponential { mean } => RawDistribution::Exponential { mean },
            IntervalDistribution::Gamma { shape, scale } => RawDistribution::Gamma { shape, scale },
        }
    }
}

/// `∫₀^∞ C_a(t)·H̄(t) dt`, i.e. the expected age cost accumulated in one
/// random cycle (before multiplying by λ).
pub fn expected_cycle_age_integral(spec: &AgeCostSpec, d: &IntervalDistribution) -> Result<f64> {
    d.validate()?;
    spec.validate()?;
    match *d {
        IntervalDistribution::Degenerate { t } => Ok(spec.integral(t)),
        // E[I(Y)] = (J(b) − J(a)) / (b − a) with J the second antiderivative.
        IntervalDistribution::Uniform { a, b } => {
            Ok((spec.second_integral(b) - spec.second_integral(a)) / (b - a))
        }
        IntervalDistribution::Exponential { mean } => gamma_moment_integral(spec, 1.0, mean, d),
        IntervalDistribution::Gamma { shape, scale } => {
            gamma_moment_integral(spec, shape, scale, d)
        }
    }
}

/// `E[I(Y)]` for `Y ~ Gamma(k, θ)` where `I` is the antiderivative of `C_a`.
fn gamma_moment_integral(
    spec: &AgeCostSpec,
    shape: f64,
    scale: f64,
    d: &IntervalDistribution,
) -> Result<f64> {
    match *spec {
        // C·E[Y²]/2
        AgeCostSpec::Linear { slope } => Ok(0.5 * slope * shape * (shape + 1.0) * scale * scale),
        // a·E[Y^{p+1}]/(p+1), E[Y^m] = θ^m Γ(k+m)/Γ(k)
        AgeCostSpec::Power { coeff, exp } => {
            let m = exp + 1.0;
            let log_moment = m * scale.ln() + ln_gamma(shape + m) - ln_gamma(shape);
            Ok(coeff * log_moment.exp() / m)
        }
        // (a/b)·(E[e^{bY}] − 1) − a·E[Y], E[e^{bY}] = (1 − bθ)^{−k}
        AgeCostSpec::Exponential { scale: a, rate: b } => {
            if b * scale >= 1.0 {
                return Err(Error::InfiniteExpectedCost(format!(
                    "exponential age cost with rate {b} grows faster than the interval tail decays (scale {scale})"
                )));
            }
            let mgf_minus_one = (-shape * (-b * scale).ln_1p()).exp_m1();
            Ok(a / b * mgf_minus_one - a * shape * scale)
        }
        AgeCostSpec::Table(_) => survival_quadrature(spec, d),
    }
}

/// Quadrature of `C_a·H̄` split around `μ = E(Y)` so both pieces are
/// non-negative:
///
/// ```text
/// ∫₀^∞ C_a·H̄ = ∫₀^μ C_a + ∫_μ^∞ (C_a − C_a(μ))·H̄ + ∫₀^μ (C_a(μ) − C_a)·H
/// ```
///
/// using `∫_μ^∞ H̄ = ∫₀^μ H`. Table breakpoints are panel edges.
fn survival_quadrature(spec: &AgeCostSpec, d: &IntervalDistribution) -> Result<f64> {
    let mu = d.mean();
    let tail = d.tail_point()?.max(mu);
    let c_mu = spec.value(mu);
    let cfg = QuadConfig {
        rel_tol: 1e-12,
        abs_tol: 1e-15,
        max_depth: 50,
    };

    let mut edges = vec![0.0, mu, tail];
    if let AgeCostSpec::Table(table) = spec {
        edges.extend(
            table
                .points()
                .iter()
                .map(|p| p.0)
                .filter(|&t| t > 0.0 && t < tail),
        );
    }
    edges.sort_by(f64::total_cmp);
    edges.dedup();

    let mut excess = 0.0;
    for w in edges.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        excess += if hi <= mu {
            integrate(|t| (c_mu - spec.value(t)) * d.cdf(t), lo, hi, &cfg)?
        } else {
            integrate(|t| (spec.value(t) - c_mu) * d.survival(t), lo, hi, &cfg)?
        };
    }
    Ok(spec.integral(mu) + excess)
}

/// `C_H` for a random refresh schedule.
pub fn random_schedule_cost(scn: &Scenario, d: &IntervalDistribution) -> Result<CostReport> {
    scn.validate()?;
    let mu = d.mean();
    let refresh = scn.refresh_cost / mu;
    let age = if scn.lambda == 0.0 {
        0.0
    } else {
        scn.lambda * expected_cycle_age_integral(&scn.age_cost, d)? / mu
    };
    Ok(CostReport::from_parts(refresh, age, mu))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScheduleComparison {
    pub random: CostReport,
    pub fixed: CostReport,
    /// `random.total − fixed.total`; never meaningfully negative.
    pub gap: f64,
}

/// Random-interval cost against the fixed interval with the same mean.
pub fn compare_random_vs_fixed(
    scn: &Scenario,
    d: &IntervalDistribution,
) -> Result<ScheduleComparison> {
    let random = random_schedule_cost(scn, d)?;
    let fixed = long_run_cost(scn, d.mean())?;
    let gap = random.total - fixed.total;
    if gap < -1e-12 * fixed.total.max(1.0) {
        return Err(Error::Numeric(format!(
            "random-schedule cost {} fell below the fixed-interval cost {}",
            random.total, fixed.total
        )));
    }
    Ok(ScheduleComparison { random, fixed, gap })
}

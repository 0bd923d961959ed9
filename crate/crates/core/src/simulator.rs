//! Monte Carlo renewal simulator.
//!
//! Each refresh cycle is simulated on its own: a Poisson number of updates is
//! drawn for the cycle length and their times are placed uniformly on
//! `(0, len]` (the order-statistics property of the Poisson process). The
//! cycle's cost is the refresh cost plus `C_a(len − S_n)` for every update.
//! The long-run cost is the renewal-reward ratio `Σ cost / Σ length`.
//!
//! Randomness comes from ChaCha8 keyed by the seed, with the cycle index as the
//! stream id, so every cycle has its own reproducible sub-stream. Cycles are
//! processed in fixed-size chunks whose partial sums are combined in chunk
//! order; the result is bit-identical for any number of worker threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cost_model::{AgeCost, Scenario};
use crate::error::{Error, Result};
use crate::random_schedule::IntervalDistribution;

const CHUNK_CYCLES: u64 = 1024;

/// How the length of each refresh cycle is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum ScheduleSpec {
    Fixed { interval: f64 },
    Random { distribution: IntervalDistribution },
}

impl ScheduleSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            ScheduleSpec::Fixed { interval } => {
                if interval.is_finite() && *interval > 0.0 {
                    Ok(())
                } else {
                    Err(Error::domain(format!(
                        "fixed interval must be positive and finite, got {interval}"
                    )))
                }
            }
            ScheduleSpec::Random { distribution } => distribution.validate(),
        }
    }

    pub fn mean_interval(&self) -> f64 {
        match self {
            ScheduleSpec::Fixed { interval } => *interval,
            ScheduleSpec::Random { distribution } => distribution.mean(),
        }
    }

    fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match self {
            ScheduleSpec::Fixed { interval } => *interval,
            ScheduleSpec::Random { distribution } => distribution.sample(rng),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub seed: u64,
    pub n_cycles: u64,
    pub schedule: ScheduleSpec,
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_cycles == 0 {
            return Err(Error::domain("n_cycles must be at least 1"));
        }
        self.schedule.validate()
    }
}

/// Sample mean with its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub mean: f64,
    pub std_error: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimBreakdown {
    pub refresh_component: f64,
    pub age_component: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimResult {
    /// `Σ cycle cost / Σ cycle length`.
    pub mean_cost_per_time: f64,
    /// Delta-method standard error of the ratio estimator; 0 for one cycle.
    pub std_error: f64,
    pub n_updates_total: u64,
    pub n_cycles: u64,
    pub total_time: f64,
    pub breakdown: SimBreakdown,
    pub updates_per_cycle: Estimate,
    /// Age-related cost accumulated per cycle, excluding the refresh cost.
    pub age_cost_per_cycle: Estimate,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CycleOutcome {
    pub cost: f64,
    pub n_updates: u64,
}

/// One row of a cycle trace.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CycleRecord {
    pub cycle_index: u64,
    pub cycle_len: f64,
    pub n_updates: u64,
    pub cycle_cost: f64,
}

/// `A(t) = Σ (t − S_i)` over updates with `S_i < t`.
pub fn aggregated_age(update_times: &[f64], t: f64) -> Result<f64> {
    if update_times
        .windows(2)
        .any(|w| w[0].is_nan() || w[1].is_nan() || w[0] > w[1])
    {
        return Err(Error::domain("update times must be sorted ascending"));
    }
    if update_times.iter().any(|s| !(s.is_finite() && *s >= 0.0)) {
        return Err(Error::domain(
            "update times must be finite and non-negative",
        ));
    }
    Ok(update_times
        .iter()
        .take_while(|&&s| s < t)
        .map(|&s| t - s)
        .sum())
}

/// Cost of one cycle of length `cycle_len` given its update times.
pub fn cycle_cost(scn: &Scenario, cycle_len: f64, arrivals: &[f64]) -> f64 {
    scn.refresh_cost + age_cost(scn, cycle_len, arrivals)
}

fn age_cost(scn: &Scenario, cycle_len: f64, arrivals: &[f64]) -> f64 {
    arrivals
        .iter()
        .map(|&s| scn.age_cost.value(cycle_len - s))
        .sum()
}

/// Simulates one cycle of length `cycle_len` with updates drawn from `rng`.
pub fn simulate_cycle<R: Rng + ?Sized>(
    scn: &Scenario,
    cycle_len: f64,
    rng: &mut R,
) -> CycleOutcome {
    let (age, n) = draw_cycle(scn, cycle_len, rng);
    CycleOutcome {
        cost: scn.refresh_cost + age,
        n_updates: n,
    }
}

fn draw_cycle<R: Rng + ?Sized>(scn: &Scenario, cycle_len: f64, rng: &mut R) -> (f64, u64) {
    let expected = scn.lambda * cycle_len;
    if expected.is_nan() || expected <= 0.0 {
        return (0.0, 0);
    }
    let n = Poisson::new(expected)
        .expect("positive finite Poisson mean")
        .sample(rng) as u64;
    let mut age = 0.0;
    for _ in 0..n {
        // S uniform on (0, len]; age len − S uniform on [0, len).
        let u: f64 = rng.random();
        age += scn.age_cost.value(cycle_len * u);
    }
    (age, n)
}

/// Generator for cycle `index` under `seed`.
pub fn cycle_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

#[derive(Debug, Clone, Copy, Default)]
struct Sums {
    n: u64,
    cost: f64,
    len: f64,
    cost2: f64,
    len2: f64,
    cost_len: f64,
    updates: u64,
    updates2: f64,
    age: f64,
    age2: f64,
}

impl Sums {
    fn push(&mut self, cost: f64, age: f64, len: f64, n_updates: u64) {
        self.n += 1;
        self.cost += cost;
        self.len += len;
        self.cost2 += cost * cost;
        self.len2 += len * len;
        self.cost_len += cost * len;
        self.updates += n_updates;
        self.updates2 += (n_updates as f64) * (n_updates as f64);
        self.age += age;
        self.age2 += age * age;
    }

    fn merge(&mut self, o: &Sums) {
        self.n += o.n;
        self.cost += o.cost;
        self.len += o.len;
        self.cost2 += o.cost2;
        self.len2 += o.len2;
        self.cost_len += o.cost_len;
        self.updates += o.updates;
        self.updates2 += o.updates2;
        self.age += o.age;
        self.age2 += o.age2;
    }
}

fn run_cycle(scn: &Scenario, cfg: &SimConfig, index: u64) -> (f64, f64, f64, u64) {
    let mut rng = cycle_rng(cfg.seed, index);
    let len = cfg.schedule.draw(&mut rng);
    let (age, n) = draw_cycle(scn, len, &mut rng);
    (scn.refresh_cost + age, age, len, n)
}

fn sample_estimate(n: u64, sum: f64, sum2: f64) -> Estimate {
    let nf = n as f64;
    let mean = sum / nf;
    let std_error = if n < 2 {
        0.0
    } else {
        let var = ((sum2 - sum * mean) / (nf - 1.0)).max(0.0);
        (var / nf).sqrt()
    };
    Estimate { mean, std_error }
}

/// Long-run average cost estimate over `cfg.n_cycles` renewal cycles.
pub fn simulate(scn: &Scenario, cfg: &SimConfig) -> Result<SimResult> {
    scn.validate()?;
    cfg.validate()?;

    let n_chunks = cfg.n_cycles.div_ceil(CHUNK_CYCLES);
    let partials: Vec<Sums> = (0..n_chunks)
        .into_par_iter()
        .map(|c| {
            let start = c * CHUNK_CYCLES;
            let end = (start + CHUNK_CYCLES).min(cfg.n_cycles);
            let mut s = Sums::default();
            for i in start..end {
                let (cost, age, len, n) = run_cycle(scn, cfg, i);
                s.push(cost, age, len, n);
            }
            s
        })
        .collect();
    let mut s = Sums::default();
    for p in &partials {
        s.merge(p);
    }

    let nf = s.n as f64;
    let ratio = s.cost / s.len;
    let std_error = if s.n < 2 {
        0.0
    } else {
        // Σ (ξ_k − R·Y_k)² expanded in the accumulated sums.
        let resid = (s.cost2 - 2.0 * ratio * s.cost_len + ratio * ratio * s.len2).max(0.0);
        let mean_len = s.len / nf;
        (resid / (nf - 1.0) / nf).sqrt() / mean_len
    };

    Ok(SimResult {
        mean_cost_per_time: ratio,
        std_error,
        n_updates_total: s.updates,
        n_cycles: s.n,
        total_time: s.len,
        breakdown: SimBreakdown {
            refresh_component: nf * scn.refresh_cost / s.len,
            age_component: s.age / s.len,
        },
        updates_per_cycle: sample_estimate(s.n, s.updates as f64, s.updates2),
        age_cost_per_cycle: sample_estimate(s.n, s.age, s.age2),
    })
}

/// Per-cycle records for the first `cfg.n_cycles` cycles, drawn from the same
/// sub-streams as [`simulate`].
pub fn simulate_trace(scn: &Scenario, cfg: &SimConfig) -> Result<Vec<CycleRecord>> {
    scn.validate()?;
    cfg.validate()?;
    Ok((0..cfg.n_cycles)
        .map(|i| {
            let (cost, _, len, n) = run_cycle(scn, cfg, i);
            CycleRecord {
                cycle_index: i,
                cycle_len: len,
                n_updates: n,
                cycle_cost: cost,
            }
        })
        .collect())
}

//! Optimal fixed refresh interval.
//!
//! The derivative of `C(T)` has the sign of
//!
//! ```text
//! φ(T) = T²·C′(T) = −C_r + λ·T·C_a(T) − λ·∫₀ᵀ C_a(t) dt
//! ```
//!
//! which starts at `−C_r`, has derivative `λ·T·C_a′(T) > 0` and grows without
//! bound. Its single zero is the cost-minimizing interval `T*`. For linear age
//! cost `C·t` the zero is `√(2·C_r / (λ·C))` in closed form.

use serde::{Deserialize, Serialize};

use crate::cost_model::{long_run_cost_with, AgeCost, CostReport, Scenario};
use crate::error::{Error, Result};
use crate::numerics::{find_root_increasing, RootConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveMethod {
    ClosedFormLinear,
    NumericRoot,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptimalPolicy {
    pub t_star: f64,
    pub cost_at_star: CostReport,
    pub method: SolveMethod,
}

/// Knobs for [`optimal_interval_with`].
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SolverOptions {
    pub root: RootConfig,
    /// Solve `φ(T) = 0` numerically even when a closed form exists.
    pub force_numeric: bool,
}

/// `φ(T)` for a scenario.
pub fn phi(scn: &Scenario, interval: f64) -> Result<f64> {
    if !(interval.is_finite() && interval > 0.0) {
        return Err(Error::domain(format!(
            "refresh interval must be positive and finite, got {interval}"
        )));
    }
    Ok(phi_with(
        scn.lambda,
        scn.refresh_cost,
        &scn.age_cost,
        interval,
    ))
}

pub(crate) fn phi_with<A: AgeCost + ?Sized>(
    lambda: f64,
    refresh_cost: f64,
    age_cost: &A,
    t: f64,
) -> f64 {
    -refresh_cost + lambda * (t * age_cost.value(t) - age_cost.integral(t))
}

/// `(T*, C(T*)) = (√(2C_r/(λC)), √(2λCC_r))` for linear age cost `C·t`.
pub fn closed_form_linear(lambda: f64, refresh_cost: f64, slope: f64) -> Result<(f64, f64)> {
    for (name, v) in [
        ("lambda", lambda),
        ("refresh_cost", refresh_cost),
        ("slope", slope),
    ] {
        if !(v.is_finite() && v > 0.0) {
            return Err(Error::domain(format!(
                "{name} must be positive and finite, got {v}"
            )));
        }
    }
    Ok((
        (2.0 * refresh_cost / (lambda * slope)).sqrt(),
        (2.0 * lambda * slope * refresh_cost).sqrt(),
    ))
}

/// Cost-minimizing refresh interval for a scenario.
pub fn optimal_interval(scn: &Scenario) -> Result<OptimalPolicy> {
    optimal_interval_with(scn, &SolverOptions::default())
}

pub fn optimal_interval_with(scn: &Scenario, opts: &SolverOptions) -> Result<OptimalPolicy> {
    scn.validate()?;
    solve(scn.lambda, scn.refresh_cost, &scn.age_cost, opts)
}

/// Solves the optimality equation for any [`AgeCost`]. Used directly by the
/// fleet planner with an averaged age cost.
pub fn solve<A: AgeCost + ?Sized>(
    lambda: f64,
    refresh_cost: f64,
    age_cost: &A,
    opts: &SolverOptions,
) -> Result<OptimalPolicy> {
    if !(lambda.is_finite() && lambda > 0.0) || !(refresh_cost.is_finite() && refresh_cost > 0.0) {
        return Err(Error::precondition(format!(
            "no finite optimum: need lambda > 0 and refresh_cost > 0 (got lambda = {lambda}, refresh_cost = {refresh_cost})"
        )));
    }

    let (t_star, method) = match age_cost.linear_slope() {
        Some(slope) if !opts.force_numeric => (
            closed_form_linear(lambda, refresh_cost, slope)?.0,
            SolveMethod::ClosedFormLinear,
        ),
        _ => {
            let hint = bracket_hint(lambda, refresh_cost, age_cost);
            let t = find_root_increasing(
                |t| phi_with(lambda, refresh_cost, age_cost, t),
                0.0,
                hint,
                &opts.root,
            )?;
            (t, SolveMethod::NumericRoot)
        }
    };
    let cost_at_star = long_run_cost_with(lambda, refresh_cost, age_cost, t_star)?;
    Ok(OptimalPolicy {
        t_star,
        cost_at_star,
        method,
    })
}

/// Closed-form linear optimum using the secant slope of `C_a` over `[0, 1]`.
fn bracket_hint<A: AgeCost + ?Sized>(lambda: f64, refresh_cost: f64, age_cost: &A) -> f64 {
    let slope = age_cost.value(1.0) - age_cost.value(0.0);
    let hint = (2.0 * refresh_cost / (lambda * slope)).sqrt();
    if hint.is_finite() && hint > 0.0 {
        hint
    } else {
        1.0
    }
}

fn check_sweep(values: &[f64], what: &str) -> Result<()> {
    if values.is_empty() {
        return Err(Error::domain(format!("{what} sweep is empty")));
    }
    if let Some(v) = values.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
        return Err(Error::domain(format!(
            "{what} values must be positive, got {v}"
        )));
    }
    if values.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::domain(format!(
            "{what} values must be sorted ascending"
        )));
    }
    Ok(())
}

/// Optimal policies along an ascending grid of update rates.
pub fn sweep_lambda(template: &Scenario, lambdas: &[f64]) -> Result<Vec<(f64, OptimalPolicy)>> {
    check_sweep(lambdas, "lambda")?;
    lambdas
        .iter()
        .map(|&l| optimal_interval(&template.with_lambda(l)).map(|p| (l, p)))
        .collect()
}

/// Optimal policies along an ascending grid of refresh costs.
pub fn sweep_refresh_cost(template: &Scenario, costs: &[f64]) -> Result<Vec<(f64, OptimalPolicy)>> {
    check_sweep(costs, "refresh_cost")?;
    costs
        .iter()
        .map(|&c| optimal_interval(&template.with_refresh_cost(c)).map(|p| (c, p)))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostFunctionComparison {
    pub first: OptimalPolicy,
    pub second: OptimalPolicy,
    /// `first.t_star ≥ second.t_star` (with 1e−9 relative slack).
    pub ordered: bool,
}

/// Number of sample points used to check the increment hypothesis.
const INCREMENT_SAMPLES: usize = 64;

/// Optimal intervals for two age costs whose difference
/// `Δ(t) = C_a2(t) − C_a1(t)` is non-negative and nondecreasing. The more
/// expensive cost then refreshes at least as often.
///
/// The hypothesis on `Δ` is checked on a geometric grid over
/// `(0, 4·max(T*₁, T*₂)]`.
pub fn compare_cost_functions(scn1: &Scenario, scn2: &Scenario) -> Result<CostFunctionComparison> {
    scn1.validate()?;
    scn2.validate()?;
    if scn1.lambda != scn2.lambda || scn1.refresh_cost != scn2.refresh_cost {
        return Err(Error::domain(
            "compared scenarios must share lambda and refresh_cost",
        ));
    }
    compare_age_costs(
        scn1.lambda,
        scn1.refresh_cost,
        &scn1.age_cost,
        &scn2.age_cost,
    )
}

/// [`compare_cost_functions`] for arbitrary [`AgeCost`]s.
pub fn compare_age_costs<A, B>(
    lambda: f64,
    refresh_cost: f64,
    first: &A,
    second: &B,
) -> Result<CostFunctionComparison>
where
    A: AgeCost + ?Sized,
    B: AgeCost + ?Sized,
{
    let opts = SolverOptions::default();
    let p1 = solve(lambda, refresh_cost, first, &opts)?;
    let p2 = solve(lambda, refresh_cost, second, &opts)?;

    let horizon = 4.0 * p1.t_star.max(p2.t_star);
    // Geometric grid t_j = horizon · 2^{-(63 - j)/4}, j = 0..63.
    let grid = (0..INCREMENT_SAMPLES)
        .map(|j| horizon * 2f64.powf(-((INCREMENT_SAMPLES - 1 - j) as f64) / 4.0));
    let mut prev = 0.0f64;
    for t in grid {
        let a = first.value(t);
        let b = second.value(t);
        let delta = b - a;
        let slack = 1e-12 * a.abs().max(b.abs());
        if delta < -slack {
            return Err(Error::precondition(format!(
                "cost difference is negative at t = {t}: {delta}"
            )));
        }
        if delta < prev - slack {
            return Err(Error::precondition(format!(
                "cost difference decreases at t = {t}"
            )));
        }
        prev = prev.max(delta);
    }

    let ordered = p1.t_star >= p2.t_star - 1e-9 * p1.t_star.max(p2.t_star);
    Ok(CostFunctionComparison {
        first: p1,
        second: p2,
        ordered,
    })
}

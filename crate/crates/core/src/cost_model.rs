//! Age-related cost functions and the long-run average cost of fixed-interval
//! refreshing.
//!
//! With updates arriving as a Poisson process of rate λ and a refresh every `T`
//! time units costing `C_r`, the expected cost per unit time is
//!
//! ```text
//! C(T) = C_r / T + λ ∫₀ᵀ C_a(t) dt / T
//! ```
//!
//! where `C_a` maps the age of a pending update to a cost. Every built-in
//! `C_a` has a closed-form antiderivative, so no quadrature is involved here.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A nondecreasing age-related cost function `C_a`.
///
/// Implementations must be strictly increasing on `(0, ∞)` and unbounded.
/// Methods assume `t ≥ 0`; the checked entry points are [`eval_age_cost`] and
/// [`integral_age_cost`].
pub trait AgeCost {
    /// `C_a(t)`.
    fn value(&self, t: f64) -> f64;

    /// `∫₀ᵗ C_a(s) ds`.
    fn integral(&self, t: f64) -> f64;

    /// `C_a′(t)`; the right derivative at kinks.
    fn derivative(&self, t: f64) -> f64;

    /// Slope `C` when `C_a(t) = C·t` exactly.
    fn linear_slope(&self) -> Option<f64> {
        None
    }
}

/// Built-in age-cost families.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawAgeCost", into = "RawAgeCost")]
pub enum AgeCostSpec {
    /// `C·t`
    Linear { slope: f64 },
    /// `a·t^p`
    Power { coeff: f64, exp: f64 },
    /// `a·(e^{b·t} − 1)`
    Exponential { scale: f64, rate: f64 },
    /// Piecewise-linear through sorted breakpoints.
    Table(TableCost),
}

impl AgeCostSpec {
    pub fn linear(slope: f64) -> Result<Self> {
        Self::checked(AgeCostSpec::Linear { slope })
    }

    pub fn power(coeff: f64, exp: f64) -> Result<Self> {
        Self::checked(AgeCostSpec::Power { coeff, exp })
    }

    pub fn exponential(scale: f64, rate: f64) -> Result<Self> {
        Self::checked(AgeCostSpec::Exponential { scale, rate })
    }

    pub fn table(points: Vec<(f64, f64)>) -> Result<Self> {
        TableCost::new(points).map(AgeCostSpec::Table)
    }

    fn checked(spec: Self) -> Result<Self> {
        spec.validate()?;
        Ok(spec)
    }

    /// Checks the parameter constraints of the parametric variants. Tables are
    /// validated when built.
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
            AgeCostSpec::Linear { slope } => positive("slope", slope),
            AgeCostSpec::Power { coeff, exp } => {
                positive("coeff", coeff)?;
                positive("exp", exp)
            }
            AgeCostSpec::Exponential { scale, rate } => {
                positive("scale", scale)?;
                positive("rate", rate)
            }
            AgeCostSpec::Table(_) => Ok(()),
        }
    }

    /// `∫₀ᵗ ∫₀ˢ C_a(u) du ds`, used for the expected cost of uniformly
    /// distributed refresh intervals.
    pub fn second_integral(&self, t: f64) -> f64 {
        match *self {
            AgeCostSpec::Linear { slope } => slope * t * t * t / 6.0,
            AgeCostSpec::Power { coeff, exp } => {
                coeff * t.powf(exp + 2.0) / ((exp + 1.0) * (exp + 2.0))
            }
            AgeCostSpec::Exponential { scale, rate } => {
                scale / (rate * rate) * exp_remainder(rate * t, 3)
            }
            AgeCostSpec::Table(ref table) => table.second_integral(t),
        }
    }
}

impl AgeCost for AgeCostSpec {
    fn value(&self, t: f64) -> f64 {
        match *self {
            AgeCostSpec::Linear { slope } => slope * t,
            AgeCostSpec::Power { coeff, exp } => coeff * t.powf(exp),
            AgeCostSpec::Exponential { scale, rate } => scale * (rate * t).exp_m1(),
            AgeCostSpec::Table(ref table) => table.value(t),
        }
    }

    fn integral(&self, t: f64) -> f64 {
        match *self {
            AgeCostSpec::Linear { slope } => 0.5 * slope * t * t,
            AgeCostSpec::Power { coeff, exp } => coeff * t.powf(exp + 1.0) / (exp + 1.0),
            AgeCostSpec::Exponential { scale, rate } => scale / rate * exp_remainder(rate * t, 2),
            AgeCostSpec::Table(ref table) => table.integral(t),
        }
    }

    fn derivative(&self, t: f64) -> f64 {
        match *self {
            AgeCostSpec::Linear { slope } => slope,
            AgeCostSpec::Power { coeff, exp } => coeff * exp * t.powf(exp - 1.0),
            AgeCostSpec::Exponential { scale, rate } => scale * rate * (rate * t).exp(),
            AgeCostSpec::Table(ref table) => table.slope_at(t),
        }
    }

    fn linear_slope(&self) -> Option<f64> {
        match *self {
            AgeCostSpec::Linear { slope } => Some(slope),
            _ => None,
        }
    }
}

/// `e^x − Σ_{k<order} x^k/k!`, accurate for small `|x|`.
pub(crate) fn exp_remainder(x: f64, order: u32) -> f64 {
    if x.abs() < 1.0 {
        // Series from the first retained term.
        let mut term = 1.0;
        for k in 1..=order {
            term *= x / k as f64;
        }
        let mut sum = 0.0f64;
        let mut k = order;
        while term.abs() > f64::EPSILON * sum.abs() * 0.01 || sum == 0.0 {
            sum += term;
            k += 1;
            term *= x / k as f64;
            if term == 0.0 {
                break;
            }
        }
        sum
    } else {
        let mut poly = 0.0;
        let mut term = 1.0;
        for k in 0..order {
            if k > 0 {
                term *= x / k as f64;
            }
            poly += term;
        }
        x.exp() - poly
    }
}

/// Piecewise-linear age cost through validated breakpoints, extended past the
/// last breakpoint with the final segment's slope.
#[derive(Debug, Clone, PartialEq)]
pub struct TableCost {
    points: Vec<(f64, f64)>,
    // ∫₀^{t_k} C_a and its antiderivative at each breakpoint.
    cum_integral: Vec<f64>,
    cum_second: Vec<f64>,
}

impl TableCost {
    /// Requires at least two points, `t_0 = 0`, `c_0 ≥ 0`, and strictly
    /// increasing `t_k` and `c_k`.
    pub fn new(points: Vec<(f64, f64)>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::domain("table needs at least two breakpoints"));
        }
        if points
            .iter()
            .any(|&(t, c)| !(t.is_finite() && c.is_finite()))
        {
            return Err(Error::domain("table breakpoints must be finite"));
        }
        let (t0, c0) = points[0];
        if t0 != 0.0 {
            return Err(Error::domain(format!(
                "first table breakpoint must be at t = 0, got {t0}"
            )));
        }
        if c0 < 0.0 {
            return Err(Error::domain(format!(
                "table cost at t = 0 must be non-negative, got {c0}"
            )));
        }
        for (k, w) in points.windows(2).enumerate() {
            if w[1].0 <= w[0].0 {
                return Err(Error::domain(format!(
                    "table times must be strictly increasing (breakpoint {})",
                    k + 1
                )));
            }
            if w[1].1 <= w[0].1 {
                return Err(Error::domain(format!(
                    "table costs must be strictly increasing (breakpoint {})",
                    k + 1
                )));
            }
        }

        let mut cum_integral = Vec::with_capacity(points.len());
        let mut cum_second = Vec::with_capacity(points.len());
        cum_integral.push(0.0);
        cum_second.push(0.0);
        for (k, w) in points.windows(2).enumerate() {
            let (ta, ca) = w[0];
            let (tb, cb) = w[1];
            let h = tb - ta;
            let m = (cb - ca) / h;
            let i_k = cum_integral[k];
            cum_integral.push(i_k + 0.5 * (ca + cb) * h);
            cum_second.push(cum_second[k] + i_k * h + 0.5 * ca * h * h + m * h * h * h / 6.0);
        }
        Ok(TableCost {
            points,
            cum_integral,
            cum_second,
        })
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    /// Segment index `k` with `t_k ≤ t`, clamped to the last segment.
    fn segment(&self, t: f64) -> usize {
        let last = self.points.len() - 2;
        self.points
            .partition_point(|p| p.0 <= t)
            .saturating_sub(1)
            .min(last)
    }

    fn slope(&self, k: usize) -> f64 {
        let (ta, ca) = self.points[k];
        let (tb, cb) = self.points[k + 1];
        (cb - ca) / (tb - ta)
    }

    fn value(&self, t: f64) -> f64 {
        let k = self.segment(t);
        let (tk, ck) = self.points[k];
        ck + self.slope(k) * (t - tk)
    }

    fn slope_at(&self, t: f64) -> f64 {
        self.slope(self.segment(t))
    }

    fn integral(&self, t: f64) -> f64 {
        let k = self.segment(t);
        let (tk, ck) = self.points[k];
        let u = t - tk;
        self.cum_integral[k] + ck * u + 0.5 * self.slope(k) * u * u
    }

    fn second_integral(&self, t: f64) -> f64 {
        let k = self.segment(t);
        let (tk, ck) = self.points[k];
        let u = t - tk;
        self.cum_second[k]
            + self.cum_integral[k] * u
            + 0.5 * ck * u * u
            + self.slope(k) * u * u * u / 6.0
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum RawAgeCost {
    Linear { slope: f64 },
    Power { coeff: f64, exp: f64 },
    Exponential { scale: f64, rate: f64 },
    Table { points: Vec<[f64; 2]> },
}

impl TryFrom<RawAgeCost> for AgeCostSpec {
    type Error = Error;

    fn try_from(raw: RawAgeCost) -> Result<Self> {
        match raw {
            RawAgeCost::Linear { slope } => AgeCostSpec::linear(slope),
            RawAgeCost::Power { coeff, exp } => AgeCostSpec::power(coeff, exp),
            RawAgeCost::Exponential { scale, rate } => AgeCostSpec::exponential(scale, rate),
            RawAgeCost::Table { points } => {
                AgeCostSpec::table(points.into_iter().map(|[t, c]| (t, c)).collect())
            }
        }
    }
}

impl From<AgeCostSpec> for RawAgeCost {
    fn from(spec: AgeCostSpec) -> Self {
        match spec {
            AgeCostSpec::Linear { slope } => RawAgeCost::Linear { slope },
            AgeCostSpec::Power { coeff, exp } => RawAgeCost::Power { coeff, exp },
            AgeCostSpec::Exponential { scale, rate } => RawAgeCost::Exponential { scale, rate },
            AgeCostSpec::Table(table) => RawAgeCost::Table {
                points: table.points.into_iter().map(|(t, c)| [t, c]).collect(),
            },
        }
    }
}

/// Nonnegative combination `Σ w_k·C_k(t)` of built-in age costs.
///
/// Used for fleet averages and for building cost functions that differ from a
/// base function by a known increment.
#[derive(Debug, Clone, PartialEq)]
pub struct AgeCostMixture {
    terms: Vec<(f64, AgeCostSpec)>,
}

impl AgeCostMixture {
    /// Weights must be finite and non-negative with at least one positive.
    pub fn new(terms: Vec<(f64, AgeCostSpec)>) -> Result<Self> {
        if terms.iter().any(|(w, _)| !(w.is_finite() && *w >= 0.0)) {
            return Err(Error::domain(
                "mixture weights must be finite and non-negative",
            ));
        }
        if !terms.iter().any(|(w, _)| *w > 0.0) {
            return Err(Error::precondition(
                "mixture has no positive weight, so the age cost is identically zero",
            ));
        }
        for (_, spec) in &terms {
            spec.validate()?;
        }
        Ok(AgeCostMixture { terms })
    }

    pub fn terms(&self) -> &[(f64, AgeCostSpec)] {
        &self.terms
    }

    fn sum(&self, f: impl Fn(&AgeCostSpec) -> f64) -> f64 {
        self.terms
            .iter()
            .filter(|(w, _)| *w > 0.0)
            .map(|(w, spec)| w * f(spec))
            .sum()
    }
}

impl AgeCost for AgeCostMixture {
    fn value(&self, t: f64) -> f64 {
        self.sum(|s| s.value(t))
    }

    fn integral(&self, t: f64) -> f64 {
        self.sum(|s| s.integral(t))
    }

    fn derivative(&self, t: f64) -> f64 {
        self.sum(|s| s.derivative(t))
    }

    fn linear_slope(&self) -> Option<f64> {
        let mut total = 0.0;
        for (w, spec) in self.terms.iter().filter(|(w, _)| *w > 0.0) {
            total += w * spec.linear_slope()?;
        }
        Some(total)
    }
}

/// Update rate, refresh cost and age cost of a single cached element.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawScenario")]
pub struct Scenario {
    pub lambda: f64,
    pub refresh_cost: f64,
    pub age_cost: AgeCostSpec,
}

impl Scenario {
    /// `lambda` and `refresh_cost` may be zero here; the optimizer requires
    /// both to be positive.
    pub fn new(lambda: f64, refresh_cost: f64, age_cost: AgeCostSpec) -> Result<Self> {
        let scn = Scenario {
            lambda,
            refresh_cost,
            age_cost,
        };
        scn.validate()?;
        Ok(scn)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.lambda.is_finite() && self.lambda >= 0.0) {
            return Err(Error::domain(format!(
                "lambda must be finite and non-negative, got {}",
                self.lambda
            )));
        }
        if !(self.refresh_cost.is_finite() && self.refresh_cost >= 0.0) {
            return Err(Error::domain(format!(
                "refresh_cost must be finite and non-negative, got {}",
                self.refresh_cost
            )));
        }
        self.age_cost.validate()
    }

    pub fn with_lambda(&self, lambda: f64) -> Self {
        Scenario {
            lambda,
            ..self.clone()
        }
    }

    pub fn with_refresh_cost(&self, refresh_cost: f64) -> Self {
        Scenario {
            refresh_cost,
            ..self.clone()
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    lambda: f64,
    refresh_cost: f64,
    age_cost: AgeCostSpec,
}

impl TryFrom<RawScenario> for Scenario {
    type Error = Error;

    fn try_from(raw: RawScenario) -> Result<Self> {
        Scenario::new(raw.lambda, raw.refresh_cost, raw.age_cost)
    }
}

/// Long-run cost per unit time split into its refresh and staleness parts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CostReport {
    pub total: f64,
    pub refresh_component: f64,
    pub age_component: f64,
    pub interval: f64,
}

impl CostReport {
    pub(crate) fn from_parts(refresh_component: f64, age_component: f64, interval: f64) -> Self {
        CostReport {
            total: refresh_component + age_component,
            refresh_component,
            age_component,
            interval,
        }
    }
}

fn check_time(t: f64, what: &str) -> Result<()> {
    if t.is_finite() && t >= 0.0 {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "{what} must be finite and non-negative, got {t}"
        )))
    }
}

/// `C_a(t)` for `t ≥ 0`.
pub fn eval_age_cost(spec: &AgeCostSpec, t: f64) -> Result<f64> {
    check_time(t, "age")?;
    Ok(spec.value(t))
}

/// `∫₀ᵀ C_a(t) dt` for `T ≥ 0`.
pub fn integral_age_cost(spec: &AgeCostSpec, horizon: f64) -> Result<f64> {
    check_time(horizon, "integration horizon")?;
    Ok(spec.integral(horizon))
}

/// Long-run average cost of refreshing every `interval` time units.
pub fn long_run_cost(scn: &Scenario, interval: f64) -> Result<CostReport> {
    long_run_cost_with(scn.lambda, scn.refresh_cost, &scn.age_cost, interval)
}

/// [`long_run_cost`] for an arbitrary [`AgeCost`].
pub fn long_run_cost_with<A: AgeCost + ?Sized>(
    lambda: f64,
    refresh_cost: f64,
    age_cost: &A,
    interval: f64,
) -> Result<CostReport> {
    if !(interval.is_finite() && interval > 0.0) {
        return Err(Error::domain(format!(
            "refresh interval must be positive and finite, got {interval}"
        )));
    }
    let refresh = refresh_cost / interval;
    let age = lambda * age_cost.integral(interval) / interval;
    Ok(CostReport::from_parts(refresh, age, interval))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> AgeCostSpec {
        AgeCostSpec::table(vec![(0.0, 0.0), (1.0, 2.0), (5.0, 10.0)]).unwrap()
    }

    #[test]
    fn evaluates_examples() {
        let lin1 = AgeCostSpec::linear(1.0).unwrap();
        assert_eq!(eval_age_cost(&lin1, 0.0).unwrap(), 0.0);
        let lin3 = AgeCostSpec::linear(3.0).unwrap();
        assert_eq!(eval_age_cost(&lin3, 2.0).unwrap(), 6.0);
        let sq = AgeCostSpec::power(1.0, 2.0).unwrap();
        assert_eq!(eval_age_cost(&sq, 3.0).unwrap(), 9.0);
        assert_eq!(eval_age_cost(&table(), 3.0).unwrap(), 6.0);
    }

    #[test]
    fn integral_examples() {
        let lin = AgeCostSpec::linear(1.0).unwrap();
        assert_eq!(integral_age_cost(&lin, 2.0).unwrap(), 2.0);
        let sq = AgeCostSpec::power(1.0, 2.0).unwrap();
        assert!((integral_age_cost(&sq, 3.0).unwrap() - 9.0).abs() < 1e-14);
        assert_eq!(integral_age_cost(&table(), 5.0).unwrap(), 25.0);
    }

    #[test]
    fn negative_time_rejected() {
        let lin = AgeCostSpec::linear(1.0).unwrap();
        assert!(matches!(eval_age_cost(&lin, -1.0), Err(Error::Domain(_))));
        assert!(matches!(
            integral_age_cost(&lin, -0.5),
            Err(Error::Domain(_))
        ));
        assert!(eval_age_cost(&lin, f64::NAN).is_err());
    }

    #[test]
    fn table_extrapolates_last_segment() {
        let t = table();
        assert_eq!(t.value(7.0), 14.0);
        // 25 plus the trapezoid from 5 to 7 under 10..14.
        assert_eq!(t.integral(7.0), 25.0 + 24.0);
    }

    #[test]
    fn table_with_positive_origin() {
        let t = AgeCostSpec::table(vec![(0.0, 1.0), (2.0, 3.0)]).unwrap();
        assert_eq!(t.value(0.0), 1.0);
        assert_eq!(t.integral(2.0), 4.0);
    }

    #[test]
    fn table_validation() {
        assert!(AgeCostSpec::table(vec![(0.0, 0.0)]).is_err());
        assert!(AgeCostSpec::table(vec![(0.5, 0.0), (1.0, 1.0)]).is_err());
        assert!(AgeCostSpec::table(vec![(0.0, -1.0), (1.0, 1.0)]).is_err());
        assert!(AgeCostSpec::table(vec![(0.0, 0.0), (1.0, 1.0), (1.0, 2.0)]).is_err());
        assert!(AgeCostSpec::table(vec![(0.0, 0.0), (1.0, 1.0), (2.0, 1.0)]).is_err());
    }

    #[test]
    fn parametric_validation() {
        assert!(AgeCostSpec::linear(0.0).is_err());
        assert!(AgeCostSpec::power(1.0, -1.0).is_err());
        assert!(AgeCostSpec::exponential(f64::INFINITY, 1.0).is_err());
        assert!(AgeCostSpec::exponential(1.0, 0.0).is_err());
    }

    #[test]
    fn long_run_cost_examples() {
        let lin = AgeCostSpec::linear(1.0).unwrap();
        let scn = Scenario::new(1.0, 2.0, lin.clone()).unwrap();
        let r = long_run_cost(&scn, 2.0).unwrap();
        assert_eq!(r.total, 2.0);
        assert_eq!(r.refresh_component, 1.0);
        assert_eq!(r.age_component, 1.0);
        assert_eq!(r.interval, 2.0);

        let idle = Scenario::new(0.0, 2.0, table()).unwrap();
        let r = long_run_cost(&idle, 4.0).unwrap();
        assert_eq!(r.total, 0.5);
        assert_eq!(r.age_component, 0.0);
    }

    #[test]
    fn long_run_cost_rejects_bad_interval() {
        let scn = Scenario::new(1.0, 2.0, AgeCostSpec::linear(1.0).unwrap()).unwrap();
        assert!(long_run_cost(&scn, 0.0).is_err());
        assert!(long_run_cost(&scn, -1.0).is_err());
        assert!(long_run_cost(&scn, f64::INFINITY).is_err());
    }

    #[test]
    fn scenario_validation() {
        let lin = AgeCostSpec::linear(1.0).unwrap();
        assert!(Scenario::new(-1.0, 1.0, lin.clone()).is_err());
        assert!(Scenario::new(1.0, f64::NAN, lin.clone()).is_err());
        assert!(Scenario::new(0.0, 0.0, lin).is_ok());
    }

    #[test]
    fn exponential_small_rate_is_accurate() {
        // a(e^{bT} − 1)/b − aT ≈ a·b·T²/2 for tiny bT.
        let spec = AgeCostSpec::exponential(2.0, 1e-9).unwrap();
        let v = spec.integral(3.0);
        let approx = 2.0 * 1e-9 * 9.0 / 2.0;
        assert!(((v - approx) / approx).abs() < 1e-8);
    }

    #[test]
    fn exp_remainder_matches_direct_for_large_x() {
        for &x in &[0.3f64, 0.99, 1.0, 2.5, 10.0] {
            let direct2 = x.exp() - 1.0 - x;
            assert!((exp_remainder(x, 2) - direct2).abs() <= 1e-14 * direct2.abs().max(1.0));
            let direct3 = x.exp() - 1.0 - x - 0.5 * x * x;
            assert!((exp_remainder(x, 3) - direct3).abs() <= 1e-13 * direct3.abs().max(1.0));
        }
    }

    #[test]
    fn second_integrals_match_closed_forms() {
        let lin = AgeCostSpec::linear(2.0).unwrap();
        assert!((lin.second_integral(3.0) - 9.0).abs() < 1e-12);
        // Table (0,0),(1,2),(5,10) is 2t everywhere, so J = t³/3.
        assert!((table().second_integral(4.5) - 4.5f64.powi(3) / 3.0).abs() < 1e-12);
    }

    #[test]
    fn mixture_of_linear_is_linear() {
        let m = AgeCostMixture::new(vec![
            (0.5, AgeCostSpec::linear(1.0).unwrap()),
            (1.5, AgeCostSpec::linear(1.0).unwrap()),
        ])
        .unwrap();
        assert_eq!(m.linear_slope(), Some(2.0));
        assert_eq!(m.value(3.0), 6.0);
        let mixed = AgeCostMixture::new(vec![
            (1.0, AgeCostSpec::linear(1.0).unwrap()),
            (1.0, AgeCostSpec::power(1.0, 2.0).unwrap()),
        ])
        .unwrap();
        assert_eq!(mixed.linear_slope(), None);
        assert!(AgeCostMixture::new(vec![(0.0, AgeCostSpec::linear(1.0).unwrap())]).is_err());
    }

    #[test]
    fn json_round_trip_and_schema() {
        let json = r#"{"kind":"table","points":[[0,0],[1,2],[5,10]]}"#;
        let spec: AgeCostSpec = serde_json::from_str(json).unwrap();
        assert_eq!(spec, table());
        let back = serde_json::to_string(&spec).unwrap();
        assert_eq!(
            back,
            r#"{"kind":"table","points":[[0.0,0.0],[1.0,2.0],[5.0,10.0]]}"#
        );

        let scn: Scenario = serde_json::from_str(
            r#"{"lambda":1,"refresh_cost":2,"age_cost":{"kind":"power","coeff":1,"exp":2}}"#,
        )
        .unwrap();
        assert_eq!(scn.age_cost, AgeCostSpec::power(1.0, 2.0).unwrap());

        let err =
            serde_json::from_str::<AgeCostSpec>(r#"{"kind":"linear","slope":-1}"#).unwrap_err();
        assert!(err.to_string().contains("slope"));
        assert!(serde_json::from_str::<AgeCostSpec>(r#"{"kind":"cubic","slope":1}"#).is_err());
    }
}

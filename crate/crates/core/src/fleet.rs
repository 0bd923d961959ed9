//! Uniform refresh interval for a set of elements.
//!
//! Refreshing all `M` elements every `T` costs
//!
//! ```text
//! C(T) = M·[ C̄_r / T + ∫₀ᵀ C̄_a(t) dt / T ]
//! C̄_r  = mean of C_r,i
//! C̄_a  = mean of λ_i·C_a,i(t)
//! ```
//!
//! which has the single-element form with `λ = 1`, so the single-element
//! optimizer applies unchanged. The rate population can also be given as a
//! weighted mesh standing in for a continuous rate distribution.

use serde::{Deserialize, Serialize};

use crate::cost_model::{long_run_cost, AgeCost, AgeCostMixture, AgeCostSpec, Scenario};
use crate::error::{Error, Result};
use crate::optimizer::{optimal_interval, solve, OptimalPolicy, SolveMethod, SolverOptions};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FleetElement {
    pub lambda: f64,
    pub refresh_cost: f64,
    pub age_cost: AgeCostSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeshPoint {
    pub lambda: f64,
    pub weight: f64,
    pub refresh_cost: f64,
    pub age_cost: AgeCostSpec,
}

#[derive(Debug, Clone, PartialEq)]
pub enum FleetMembers {
    Elements(Vec<FleetElement>),
    /// Weighted rate mesh describing `population` elements.
    Mesh {
        points: Vec<MeshPoint>,
        population: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawFleet", into = "RawFleet")]
pub struct FleetSpec {
    conn_cost: f64,
    members: FleetMembers,
}

impl FleetSpec {
    pub fn from_elements(elements: Vec<FleetElement>, conn_cost: f64) -> Result<Self> {
        Self::checked(FleetSpec {
            conn_cost,
            members: FleetMembers::Elements(elements),
        })
    }

    /// `population` defaults to the number of mesh points.
    pub fn from_mesh(
        points: Vec<MeshPoint>,
        population: Option<u64>,
        conn_cost: f64,
    ) -> Result<Self> {
        let population = population.unwrap_or(points.len() as u64);
        Self::checked(FleetSpec {
            conn_cost,
            members: FleetMembers::Mesh { points, population },
        })
    }

    fn checked(fs: Self) -> Result<Self> {
        fs.validate()?;
        Ok(fs)
    }

    fn validate(&self) -> Result<()> {
        if !(self.conn_cost.is_finite() && self.conn_cost >= 0.0) {
            return Err(Error::domain(format!(
                "conn_cost must be finite and non-negative, got {}",
                self.conn_cost
            )));
        }
        let check = |i: usize, lambda: f64, refresh_cost: f64, spec: &AgeCostSpec| -> Result<()> {
            if !(lambda.is_finite() && lambda >= 0.0) {
                return Err(Error::domain(format!(
                    "member {i}: lambda must be non-negative, got {lambda}"
                )));
            }
            if !(refresh_cost.is_finite() && refresh_cost > 0.0) {
                return Err(Error::domain(format!(
                    "member {i}: refresh_cost must be positive, got {refresh_cost}"
                )));
            }
            spec.validate()
                .map_err(|e| Error::domain(format!("member {i}: {e}")))
        };
        match &self.members {
            FleetMembers::Elements(elements) => {
                if elements.is_empty() {
                    return Err(Error::domain("fleet has no elements"));
                }
                for (i, e) in elements.iter().enumerate() {
                    check(i, e.lambda, e.refresh_cost, &e.age_cost)?;
                }
            }
            FleetMembers::Mesh { points, population } => {
                if points.is_empty() {
                    return Err(Error::domain("rate mesh is empty"));
                }
                if *population == 0 {
                    return Err(Error::domain("mesh population must be at least 1"));
                }
                for (i, p) in points.iter().enumerate() {
                    check(i, p.lambda, p.refresh_cost, &p.age_cost)?;
                    if !(p.weight.is_finite() && p.weight >= 0.0) {
                        return Err(Error::domain(format!(
                            "member {i}: weight must be non-negative"
                        )));
                    }
                }
                let total: f64 = points.iter().map(|p| p.weight).sum();
                if (total - 1.0).abs() > 1e-9 {
                    return Err(Error::domain(format!(
                        "mesh weights must sum to 1, got {total}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn conn_cost(&self) -> f64 {
        self.conn_cost
    }

    pub fn members(&self) -> &FleetMembers {
        &self.members
    }

    /// Number of elements `M`.
    pub fn size(&self) -> u64 {
        match &self.members {
            FleetMembers::Elements(e) => e.len() as u64,
            FleetMembers::Mesh { population, .. } => *population,
        }
    }

    /// `(weight, scenario)` for every element or mesh point.
    pub fn weighted_scenarios(&self) -> Vec<(f64, Scenario)> {
        match &self.members {
            FleetMembers::Elements(elements) => {
                let w = 1.0 / elements.len() as f64;
                elements
                    .iter()
                    .map(|e| {
                        (
                            w,
                            Scenario {
                                lambda: e.lambda,
                                refresh_cost: e.refresh_cost,
                                age_cost: e.age_cost.clone(),
                            },
                        )
                    })
                    .collect()
            }
            FleetMembers::Mesh { points, .. } => points
                .iter()
                .map(|p| {
                    (
                        p.weight,
                        Scenario {
                            lambda: p.lambda,
                            refresh_cost: p.refresh_cost,
                            age_cost: p.age_cost.clone(),
                        },
                    )
                })
                .collect(),
        }
    }

    /// `C̄_a` as a mixture with weights `w_i·λ_i`.
    pub fn averaged_age_cost_fn(&self) -> Result<AgeCostMixture> {
        AgeCostMixture::new(
            self.weighted_scenarios()
                .into_iter()
                .map(|(w, s)| (w * s.lambda, s.age_cost))
                .collect(),
        )
    }
}

#[derive(Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawFleet {
    conn_cost: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    elements: Option<Vec<FleetElement>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    mesh: Option<Vec<MeshPoint>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    population: Option<u64>,
}

impl TryFrom<RawFleet> for FleetSpec {
    type Error = Error;

    fn try_from(raw: RawFleet) -> Result<Self> {
        match (raw.elements, raw.mesh) {
            (Some(elements), None) => {
                if raw.population.is_some() {
                    return Err(Error::domain("population applies only to a rate mesh"));
                }
                FleetSpec::from_elements(elements, raw.conn_cost)
            }
            (None, Some(mesh)) => FleetSpec::from_mesh(mesh, raw.population, raw.conn_cost),
            _ => Err(Error::domain(
                "fleet needs exactly one of `elements` or `mesh`",
            )),
        }
    }
}

impl From<FleetSpec> for RawFleet {
    fn from(fs: FleetSpec) -> Self {
        match fs.members {
            FleetMembers::Elements(elements) => RawFleet {
                conn_cost: fs.conn_cost,
                elements: Some(elements),
                mesh: None,
                population: None,
            },
            FleetMembers::Mesh { points, population } => RawFleet {
                conn_cost: fs.conn_cost,
                elements: None,
                mesh: Some(points),
                population: Some(population),
            },
        }
    }
}

/// `C̄_r`.
pub fn averaged_refresh_cost(fs: &FleetSpec) -> f64 {
    fs.weighted_scenarios()
        .iter()
        .map(|(w, s)| w * s.refresh_cost)
        .sum()
}

/// `C̄_a(t)`; zero when every rate is zero.
pub fn averaged_age_cost(fs: &FleetSpec, t: f64) -> Result<f64> {
    if !(t.is_finite() && t >= 0.0) {
        return Err(Error::domain(format!(
            "age must be finite and non-negative, got {t}"
        )));
    }
    Ok(fs
        .weighted_scenarios()
        .iter()
        .map(|(w, s)| w * s.lambda * s.age_cost.value(t))
        .sum())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UniformPolicy {
    pub t_star: f64,
    /// Fleet-wide cost per unit time at `t_star`, `M·C̄(T*)`.
    pub total_cost: f64,
    pub method: SolveMethod,
}

/// Shared refresh interval minimizing the fleet's long-run cost.
pub fn uniform_policy(fs: &FleetSpec) -> Result<UniformPolicy> {
    let mixture = fs.averaged_age_cost_fn().map_err(|_| {
        Error::precondition("no finite optimum: every element has zero update rate")
    })?;
    let refresh = averaged_refresh_cost(fs);
    let p = solve(1.0, refresh, &mixture, &SolverOptions::default())?;
    Ok(UniformPolicy {
        t_star: p.t_star,
        total_cost: fs.size() as f64 * p.cost_at_star.total,
        method: p.method,
    })
}

/// Fleet-wide cost per unit time when every element is refreshed every `t`,
/// summed element by element.
pub fn fleet_cost_at(fs: &FleetSpec, t: f64) -> Result<f64> {
    let m = fs.size() as f64;
    let mut total = 0.0;
    for (w, s) in fs.weighted_scenarios() {
        total += w * m * long_run_cost(&s, t)?.total;
    }
    Ok(total)
}

/// Amortized connection cost per element: `(C_conn / M, C_conn)` for shared
/// versus per-element refresh connections.
pub fn amortized_connection_comparison(fs: &FleetSpec) -> (f64, f64) {
    (fs.conn_cost / fs.size() as f64, fs.conn_cost)
}

/// Each element's own optimum, ignoring the others; `None` where the
/// element never updates.
pub fn per_element_optima(fs: &FleetSpec) -> Result<Vec<Option<OptimalPolicy>>> {
    fs.weighted_scenarios()
        .iter()
        .map(|(_, s)| {
            if s.lambda == 0.0 {
                Ok(None)
            } else {
                optimal_interval(s).map(Some)
            }
        })
        .collect()
}

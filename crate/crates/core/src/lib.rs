//! Optimal refresh scheduling for cached content under Poisson updates.
//!
//! A cached element whose origin changes at Poisson rate λ accumulates an
//! age-related cost for every update it has not yet picked up; a refresh
//! clears that backlog at cost `C_r`. This crate evaluates the long-run
//! average cost of fixed and random refresh schedules, finds the unique
//! cost-minimizing interval, plans a shared interval for a fleet of elements,
//! and provides a Monte Carlo renewal simulator to check all of it.
//!
//! ```
//! use freshopt_core::{optimal_interval, AgeCostSpec, Scenario, SolveMethod};
//!
//! let scn = Scenario::new(1.0, 2.0, AgeCostSpec::linear(1.0).unwrap()).unwrap();
//! let policy = optimal_interval(&scn).unwrap();
//! assert_eq!(policy.t_star, 2.0);
//! assert_eq!(policy.method, SolveMethod::ClosedFormLinear);
//! ```

pub mod cost_model;
pub mod error;
pub mod fleet;
pub mod numerics;
pub mod optimizer;
pub mod random_schedule;
pub mod simulator;

pub use cost_model::{
    eval_age_cost, integral_age_cost, long_run_cost, long_run_cost_with, AgeCost, AgeCostMixture,
    AgeCostSpec, CostReport, Scenario, TableCost,
};
pub use error::{Error, Result};
pub use fleet::{
    amortized_connection_comparison, averaged_age_cost, averaged_refresh_cost, fleet_cost_at,
    per_element_optima, uniform_policy, FleetElement, FleetMembers, FleetSpec, MeshPoint,
    UniformPolicy,
};
pub use numerics::{find_root_increasing, integrate, QuadConfig, RootConfig};
pub use optimizer::{
    closed_form_linear, compare_age_costs, compare_cost_functions, optimal_interval,
    optimal_interval_with, phi, solve, sweep_lambda, sweep_refresh_cost, CostFunctionComparison,
    OptimalPolicy, SolveMethod, SolverOptions,
};
pub use random_schedule::{
    compare_random_vs_fixed, expected_cycle_age_integral, random_schedule_cost,
    IntervalDistribution, ScheduleComparison,
};
pub use simulator::{
    aggregated_age, cycle_cost, cycle_rng, simulate, simulate_cycle, simulate_trace, CycleOutcome,
    CycleRecord, Estimate, ScheduleSpec, SimBreakdown, SimConfig, SimResult,
};

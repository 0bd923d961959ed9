//! Fixtures shared by the benchmarks.

use freshopt_core::{AgeCostSpec, Scenario};

pub fn linear() -> Scenario {
    Scenario::new(1.0, 2.0, AgeCostSpec::linear(1.0).unwrap()).unwrap()
}

/// One scenario per age-cost variant, all with `λ = 1`, `C_r = 2`.
pub fn every_variant() -> Vec<(&'static str, Scenario)> {
    let table = AgeCostSpec::table(vec![(0.0, 0.0), (1.0, 1.0), (2.0, 3.0), (4.0, 8.0)]).unwrap();
    [
        ("linear", AgeCostSpec::linear(1.0).unwrap()),
        ("power", AgeCostSpec::power(1.0, 2.0).unwrap()),
        ("exponential", AgeCostSpec::exponential(1.0, 0.3).unwrap()),
        ("table", table),
    ]
    .into_iter()
    .map(|(name, spec)| (name, Scenario::new(1.0, 2.0, spec).unwrap()))
    .collect()
}

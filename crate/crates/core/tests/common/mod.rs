#![allow(dead_code)]

use freshopt_core::{AgeCostSpec, IntervalDistribution, Scenario};
use proptest::prelude::*;
use rand::Rng;

pub fn linear_spec() -> impl Strategy<Value = AgeCostSpec> {
    (0.05f64..20.0).prop_map(|c| AgeCostSpec::linear(c).unwrap())
}

pub fn power_spec() -> impl Strategy<Value = AgeCostSpec> {
    (0.05f64..10.0, 0.5f64..4.0).prop_map(|(a, p)| AgeCostSpec::power(a, p).unwrap())
}

pub fn exponential_spec() -> impl Strategy<Value = AgeCostSpec> {
    (0.05f64..10.0, 0.01f64..0.5).prop_map(|(a, b)| AgeCostSpec::exponential(a, b).unwrap())
}

pub fn table_spec() -> impl Strategy<Value = AgeCostSpec> {
    (
        0.0f64..2.0,
        prop::collection::vec((0.1f64..3.0, 0.1f64..5.0), 1..6),
    )
        .prop_map(|(c0, steps)| {
            let mut pts = vec![(0.0, c0)];
            for (dt, dc) in steps {
                let (t, c) = *pts.last().unwrap();
                pts.push((t + dt, c + dc));
            }
            AgeCostSpec::table(pts).unwrap()
        })
}

pub fn any_spec() -> impl Strategy<Value = AgeCostSpec> {
    prop_oneof![
        linear_spec(),
        power_spec(),
        exponential_spec(),
        table_spec()
    ]
}

pub fn any_scenario() -> impl Strategy<Value = Scenario> {
    (0.1f64..10.0, 0.1f64..10.0, any_spec())
        .prop_map(|(l, c, spec)| Scenario::new(l, c, spec).unwrap())
}

/// Log-uniform draw on `[lo, hi]`.
pub fn log_uniform<R: Rng>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    (rng.random_range(lo.ln()..hi.ln())).exp()
}

/// Age-cost variant `kind % 4` with random parameters.
pub fn random_spec<R: Rng>(rng: &mut R, kind: usize) -> AgeCostSpec {
    match kind % 4 {
        0 => AgeCostSpec::linear(log_uniform(rng, 0.1, 10.0)).unwrap(),
        1 => AgeCostSpec::power(log_uniform(rng, 0.1, 10.0), rng.random_range(0.5..3.0)).unwrap(),
        2 => AgeCostSpec::exponential(log_uniform(rng, 0.1, 10.0), log_uniform(rng, 0.02, 0.5))
            .unwrap(),
        _ => {
            let n = rng.random_range(2..6);
            let mut pts = vec![(0.0, rng.random_range(0.0..1.0))];
            for _ in 0..n {
                let (t, c) = *pts.last().unwrap();
                pts.push((
                    t + rng.random_range(0.2..2.0),
                    c + rng.random_range(0.2..3.0),
                ));
            }
            AgeCostSpec::table(pts).unwrap()
        }
    }
}

pub fn random_scenario<R: Rng>(rng: &mut R, kind: usize) -> Scenario {
    let lambda = log_uniform(rng, 0.1, 10.0);
    let cr = log_uniform(rng, 0.1, 10.0);
    Scenario::new(lambda, cr, random_spec(rng, kind)).unwrap()
}

/// Non-degenerate interval distribution with the given mean.
pub fn random_distribution<R: Rng>(rng: &mut R, mean: f64, kind: usize) -> IntervalDistribution {
    match kind % 3 {
        0 => {
            IntervalDistribution::uniform_around(mean, mean * rng.random_range(0.05..0.95)).unwrap()
        }
        1 => IntervalDistribution::exponential(mean).unwrap(),
        _ => {
            let shape = log_uniform(rng, 0.3, 30.0);
            IntervalDistribution::gamma(shape, mean / shape).unwrap()
        }
    }
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

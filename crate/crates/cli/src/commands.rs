use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use freshopt_core::{
    amortized_connection_comparison, compare_random_vs_fixed, long_run_cost, optimal_interval,
    per_element_optima, simulate, simulate_trace, sweep_lambda, sweep_refresh_cost, uniform_policy,
    OptimalPolicy, ScheduleSpec, SimConfig, SimResult, SolveMethod,
};
use serde::Serialize;

use crate::input::{parse_distribution, ScenarioFile};
use crate::output::{write_csv, Cell, Report};
use crate::{CliError, Notes};

fn header(cols: &[&str]) -> Vec<String> {
    cols.iter().map(|c| c.to_string()).collect()
}

fn method_name(m: SolveMethod) -> &'static str {
    match m {
        SolveMethod::ClosedFormLinear => "closed_form_linear",
        SolveMethod::NumericRoot => "numeric_root",
    }
}

#[derive(Debug, Serialize)]
pub struct PolicyOut {
    pub t_star: f64,
    pub cost: f64,
    pub method: SolveMethod,
}

impl From<&OptimalPolicy> for PolicyOut {
    fn from(p: &OptimalPolicy) -> Self {
        PolicyOut {
            t_star: p.t_star,
            cost: p.cost_at_star.total,
            method: p.method,
        }
    }
}

pub fn optimize(file: &ScenarioFile) -> Result<Report<PolicyOut>, CliError> {
    let p = optimal_interval(file.scenario()?)?;
    Ok(Report {
        header: header(&["t_star", "cost", "method"]),
        rows: vec![vec![
            p.t_star.into(),
            p.cost_at_star.total.into(),
            method_name(p.method).into(),
        ]],
        json: PolicyOut::from(&p),
    })
}

#[derive(Debug, Serialize)]
pub struct CurvePoint {
    pub t: f64,
    pub total: f64,
    pub refresh_component: f64,
    pub age_component: f64,
}

/// `n` log-spaced points from `lo` to `hi`, endpoints exact.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let ratio = hi / lo;
    (0..n)
        .map(|i| match i {
            0 => lo,
            _ if i == n - 1 => hi,
            _ => lo * ratio.powf(i as f64 / (n - 1) as f64),
        })
        .collect()
}

pub fn curve(
    file: &ScenarioFile,
    t_min: f64,
    t_max: f64,
    points: usize,
    notes: &Notes,
) -> Result<Report<Vec<CurvePoint>>, CliError> {
    if !(t_min.is_finite() && t_max.is_finite() && t_min > 0.0 && t_min < t_max) {
        return Err(CliError::Input(format!(
            "need 0 < --t-min < --t-max, got {t_min} and {t_max}"
        )));
    }
    if points < 2 {
        return Err(CliError::Input(format!(
            "--points must be at least 2, got {points}"
        )));
    }
    let scn = file.scenario()?;
    let mut out = Vec::with_capacity(points);
    for t in log_grid(t_min, t_max, points) {
        let c = long_run_cost(scn, t)?;
        out.push(CurvePoint {
            t,
            total: c.total,
            refresh_component: c.refresh_component,
            age_component: c.age_component,
        });
    }
    if let Ok(p) = optimal_interval(scn) {
        if p.t_star < t_min || p.t_star > t_max {
            notes.warn(format!(
                "t_star = {} lies outside the plotted range",
                p.t_star
            ));
        }
    }
    let rows = out
        .iter()
        .map(|p| {
            vec![
                p.t.into(),
                p.total.into(),
                p.refresh_component.into(),
                p.age_component.into(),
            ]
        })
        .collect();
    Ok(Report {
        header: header(&["t", "total", "refresh_component", "age_component"]),
        rows,
        json: out,
    })
}

pub struct SimulateArgs<'a> {
    pub cycles: Option<u64>,
    pub seed: Option<u64>,
    pub interval: Option<f64>,
    pub trace: Option<&'a Path>,
}

pub fn simulate_cmd(
    file: &ScenarioFile,
    args: &SimulateArgs,
    notes: &Notes,
) -> Result<Report<SimResult>, CliError> {
    let scn = file.scenario()?;
    let sim = file.sim.unwrap_or_default();
    let seed = args
        .seed
        .or(sim.seed)
        .ok_or_else(|| CliError::Input("a seed is required: pass --seed or set sim.seed".into()))?;
    let n_cycles = args.cycles.or(sim.n_cycles).ok_or_else(|| {
        CliError::Input("a cycle count is required: pass --cycles or set sim.n_cycles".into())
    })?;
    let schedule = match (args.interval, file.schedule) {
        (Some(interval), _) => ScheduleSpec::Fixed { interval },
        (None, Some(s)) => s,
        (None, None) => {
            return Err(CliError::Input(
                "no schedule: pass --interval or add a \"schedule\" section".into(),
            ))
        }
    };
    let cfg = SimConfig {
        seed,
        n_cycles,
        schedule,
    };
    cfg.validate().map_err(|e| CliError::Input(e.to_string()))?;
    if n_cycles < 2 {
        notes.warn("std_error needs at least two cycles; reporting 0");
    }
    let r = simulate(scn, &cfg)?;
    if let Some(path) = args.trace {
        write_trace(path, &simulate_trace(scn, &cfg)?)?;
    }
    Ok(Report {
        header: header(&[
            "mean_cost_per_time",
            "std_error",
            "n_updates_total",
            "n_cycles",
            "total_time",
            "refresh_component",
            "age_component",
        ]),
        rows: vec![vec![
            r.mean_cost_per_time.into(),
            r.std_error.into(),
            r.n_updates_total.into(),
            r.n_cycles.into(),
            r.total_time.into(),
            r.breakdown.refresh_component.into(),
            r.breakdown.age_component.into(),
        ]],
        json: r,
    })
}

fn write_trace(path: &Path, records: &[freshopt_core::CycleRecord]) -> Result<(), CliError> {
    let io_err = |e: std::io::Error| CliError::Input(format!("{}: {e}", path.display()));
    let mut out = BufWriter::new(File::create(path).map_err(io_err)?);
    let rows: Vec<Vec<Cell>> = records
        .iter()
        .map(|r| {
            vec![
                r.cycle_index.into(),
                r.cycle_len.into(),
                r.n_updates.into(),
                r.cycle_cost.into(),
            ]
        })
        .collect();
    write_csv(
        &mut out,
        &["cycle_index", "cycle_len", "n_updates", "cycle_cost"],
        &rows,
    )
    .and_then(|_| out.flush())
    .map_err(io_err)
}

#[derive(Debug, Serialize)]
pub struct CompareOut {
    pub c_h: f64,
    pub c_fixed: f64,
    pub gap: f64,
}

pub fn compare(file: &ScenarioFile, dist: Option<&str>) -> Result<Report<CompareOut>, CliError> {
    let scn = file.scenario()?;
    let d = match (dist, file.schedule) {
        (Some(text), _) => parse_distribution(text)?,
        (None, Some(ScheduleSpec::Random { distribution })) => distribution,
        (None, _) => {
            return Err(CliError::Input(
                "no distribution: pass --dist or add a random \"schedule\" section".into(),
            ))
        }
    };
    let cmp = compare_random_vs_fixed(scn, &d)?;
    let out = CompareOut {
        c_h: cmp.random.total,
        c_fixed: cmp.fixed.total,
        gap: cmp.gap,
    };
    Ok(Report {
        header: header(&["c_h", "c_fixed", "gap"]),
        rows: vec![vec![out.c_h.into(), out.c_fixed.into(), out.gap.into()]],
        json: out,
    })
}

#[derive(Debug, Serialize)]
pub struct Amortized {
    pub uniform: f64,
    pub non_uniform: f64,
}

#[derive(Debug, Serialize)]
pub struct FleetOut {
    pub t_star: f64,
    pub total_cost: f64,
    pub amortized_conn: Amortized,
    /// Each member's own optimum; `null` for members that never update.
    pub per_element_t_star: Vec<Option<f64>>,
}

pub fn fleet(file: &ScenarioFile) -> Result<Report<FleetOut>, CliError> {
    let fs = file.fleet()?;
    let u = uniform_policy(fs)?;
    let (uniform, non_uniform) = amortized_connection_comparison(fs);
    let per_element: Vec<Option<f64>> = per_element_optima(fs)?
        .iter()
        .map(|p| p.as_ref().map(|p| p.t_star))
        .collect();

    let mut cols = header(&[
        "t_star",
        "total_cost",
        "amortized_uniform",
        "amortized_non_uniform",
    ]);
    cols.extend((0..per_element.len()).map(|i| format!("t_star_{i}")));
    let mut row: Vec<Cell> = vec![
        u.t_star.into(),
        u.total_cost.into(),
        uniform.into(),
        non_uniform.into(),
    ];
    row.extend(per_element.iter().map(|&t| Cell::from(t)));
    Ok(Report {
        header: cols,
        rows: vec![row],
        json: FleetOut {
            t_star: u.t_star,
            total_cost: u.total_cost,
            amortized_conn: Amortized {
                uniform,
                non_uniform,
            },
            per_element_t_star: per_element,
        },
    })
}

#[derive(Debug, Serialize)]
pub struct SweepPoint {
    #[serde(flatten)]
    pub param: SweepParam,
    pub t_star: f64,
    pub cost: f64,
    pub method: SolveMethod,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepParam {
    Lambda(f64),
    RefreshCost(f64),
}

fn sweep_report(points: Vec<SweepPoint>, name: &str) -> Report<Vec<SweepPoint>> {
    let rows = points
        .iter()
        .map(|p| {
            let v = match p.param {
                SweepParam::Lambda(v) | SweepParam::RefreshCost(v) => v,
            };
            vec![
                v.into(),
                p.t_star.into(),
                p.cost.into(),
                method_name(p.method).into(),
            ]
        })
        .collect();
    Report {
        header: header(&[name, "t_star", "cost", "method"]),
        rows,
        json: points,
    }
}

pub fn sweep_rates(
    file: &ScenarioFile,
    values: &[f64],
) -> Result<Report<Vec<SweepPoint>>, CliError> {
    let points = sweep_lambda(file.scenario()?, values)?
        .into_iter()
        .map(|(v, p)| SweepPoint {
            param: SweepParam::Lambda(v),
            t_star: p.t_star,
            cost: p.cost_at_star.total,
            method: p.method,
        })
        .collect();
    Ok(sweep_report(points, "lambda"))
}

pub fn sweep_costs(
    file: &ScenarioFile,
    values: &[f64],
) -> Result<Report<Vec<SweepPoint>>, CliError> {
    let points = sweep_refresh_cost(file.scenario()?, values)?
        .into_iter()
        .map(|(v, p)| SweepPoint {
            param: SweepParam::RefreshCost(v),
            t_star: p.t_star,
            cost: p.cost_at_star.total,
            method: p.method,
        })
        .collect();
    Ok(sweep_report(points, "refresh_cost"))
}

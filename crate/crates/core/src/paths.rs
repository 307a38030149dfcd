//! Technology paths, the year-by-year simulator and path-dependence diagnostics.
//!
//! Capital is not accumulated: every year it jumps to the level at which the
//! rate of return holds, so each record is an independent equilibrium of that
//! year's tech vector and wage.

use serde::{Deserialize, Serialize};

use crate::econ::{solve_equilibrium, EconomyConfig, EquilibriumState};
use crate::error::{Error, Result};
use crate::measurement::{growth_series, BasePolicy, YearRecord};

fn default_peak() -> f64 {
    0.06
}

fn default_span() -> f64 {
    99.0
}

/// Per-sector productivity growth law. Step `i` (from 1) maps `T^{i-1}` to `T^i`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TechSchedule {
    /// `T^i = (1 + rate) T^{i-1}`.
    Constant { rate: f64 },
    /// Fast early, slow late: `1 + peak (span + 1 - i) / span`.
    RampDown {
        #[serde(default = "default_peak")]
        peak: f64,
        #[serde(default = "default_span")]
        span: f64,
    },
    /// Slow early, fast late: `1 + peak (i + 1) / span`.
    RampUp {
        #[serde(default = "default_peak")]
        peak: f64,
        #[serde(default = "default_span")]
        span: f64,
    },
    /// Explicit multipliers, entry `i-1` used at step `i`.
    Table { multipliers: Vec<f64> },
}

impl TechSchedule {
    pub fn constant(rate: f64) -> Self {
        TechSchedule::Constant { rate }
    }

    pub fn ramp_down() -> Self {
        TechSchedule::RampDown {
            peak: default_peak(),
            span: default_span(),
        }
    }

    pub fn ramp_up() -> Self {
        TechSchedule::RampUp {
            peak: default_peak(),
            span: default_span(),
        }
    }

    pub fn multiplier(&self, step: u32) -> Result<f64> {
        if step == 0 {
            return Err(Error::Domain("schedule steps start at 1".into()));
        }
        let i = f64::from(step);
        let m = match self {
            TechSchedule::Constant { rate } => 1.0 + rate,
            TechSchedule::RampDown { peak, span } => 1.0 + peak * (span + 1.0 - i) / span,
            TechSchedule::RampUp { peak, span } => 1.0 + peak * (i + 1.0) / span,
            TechSchedule::Table { multipliers } => {
                *multipliers.get(step as usize - 1).ok_or_else(|| {
                    Error::Domain(format!(
                        "tech table has {} entries, step {step} requested",
                        multipliers.len()
                    ))
                })?
            }
        };
        if !(m > 0.0) || !m.is_finite() {
            return Err(Error::Domain(format!(
                "tech multiplier {m} at step {step} must be positive"
            )));
        }
        Ok(m)
    }
}

/// Product of the first `years` multipliers.
///
/// Factors are multiplied in sorted order so schedules that are permutations
/// of each other give bit-identical results.
pub fn cumulative_tech_factor(schedule: &TechSchedule, years: u32) -> Result<f64> {
    let mut ms = (1..=years)
        .map(|i| schedule.multiplier(i))
        .collect::<Result<Vec<_>>>()?;
    ms.sort_by(f64::total_cmp);
    Ok(ms.into_iter().product())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulationRun {
    /// Economy at the first simulated year.
    pub config: EconomyConfig,
    pub schedules: Vec<TechSchedule>,
    pub wage_growth: f64,
    pub start_year: i32,
    /// Tech vector of every year.
    pub techs: Vec<Vec<f64>>,
    pub records: Vec<YearRecord>,
    pub states: Vec<EquilibriumState>,
}

impl SimulationRun {
    pub fn sector_names(&self) -> Vec<&str> {
        self.config
            .sectors
            .iter()
            .map(|s| s.name.as_str())
            .collect()
    }

    pub fn final_labor_shares(&self) -> Vec<f64> {
        self.states
            .last()
            .map(|s| s.labor_shares())
            .unwrap_or_default()
    }
}

/// Run `years` steps past `start_year`, re-solving the equilibrium each year.
pub fn simulate(
    config: &EconomyConfig,
    schedules: &[TechSchedule],
    years: u32,
    wage_growth: f64,
    start_year: i32,
) -> Result<SimulationRun> {
    config.validate()?;
    if schedules.len() != config.sectors.len() {
        return Err(Error::MismatchedSectors {
            left: schedules.len(),
            right: config.sectors.len(),
        });
    }
    if !(wage_growth > -1.0) {
        return Err(Error::Domain(format!(
            "wage growth {wage_growth} must exceed -1"
        )));
    }
    let n = years as usize + 1;
    let mut year_config = config.clone();
    let mut techs = Vec::with_capacity(n);
    let mut records = Vec::with_capacity(n);
    let mut states = Vec::with_capacity(n);
    for step in 0..=years {
        let year = start_year + step as i32;
        let wrap = |e: Error| Error::Simulation {
            year,
            source: Box::new(e),
        };
        if step > 0 {
            for (sector, schedule) in year_config.sectors.iter_mut().zip(schedules) {
                sector.tech *= schedule.multiplier(step).map_err(wrap)?;
            }
            year_config.wage *= 1.0 + wage_growth;
        }
        let state = solve_equilibrium(&year_config).map_err(wrap)?;
        techs.push(year_config.techs());
        records.push(YearRecord::from_state(year, &state));
        states.push(state);
    }
    Ok(SimulationRun {
        config: config.clone(),
        schedules: schedules.to_vec(),
        wage_growth,
        start_year,
        techs,
        records,
        states,
    })
}

/// Discrete GDP-deflator line integral in simple-return form:
/// `Σ_i Σ_a Y_a^{i-1} (P_a^i - P_a^{i-1}) / Σ_a Y_a^{i-1} P_a^{i-1}`.
pub fn deflator_path_integral(run: &SimulationRun) -> f64 {
    run.records
        .windows(2)
        .map(|w| {
            let (prev, cur) = (&w[0], &w[1]);
            let dp: f64 = prev
                .quantities
                .iter()
                .zip(cur.prices.iter().zip(&prev.prices))
                .map(|(y, (p1, p0))| y * (p1 - p0))
                .sum();
            dp / prev.nominal_gdp
        })
        .sum()
}

/// Sum of log one-period (Paasche) deflators, `Σ_i ln(Σ Y^i P^i / Σ Y^i P^{i-1})`.
pub fn log_deflator_integral(run: &SimulationRun) -> f64 {
    run.records
        .windows(2)
        .map(|w| {
            let (prev, cur) = (&w[0], &w[1]);
            let at_prev: f64 = cur
                .quantities
                .iter()
                .zip(&prev.prices)
                .map(|(y, p)| y * p)
                .sum();
            (cur.nominal_gdp / at_prev).ln()
        })
        .sum()
}

/// `ln(GDP_T / GDP_0) - [Σ ln(1 + g_chained) + log deflator integral]`.
///
/// Zero up to rounding: nominal growth splits exactly into chained real growth
/// and the Paasche deflator each year.
pub fn decomposition_check(run: &SimulationRun) -> Result<f64> {
    let (first, last) = match (run.records.first(), run.records.last()) {
        (Some(f), Some(l)) => (f, l),
        _ => return Ok(0.0),
    };
    let nominal = (last.nominal_gdp / first.nominal_gdp).ln();
    let real: f64 = growth_series(&run.records, BasePolicy::Chained)?
        .rates()
        .map(f64::ln_1p)
        .sum();
    Ok(nominal - (real + log_deflator_integral(run)))
}

/// Component `c` of the deflator integrand in tech space at constant wage:
/// `F_c(T) = Σ_a Y_a ∂P_a/∂T_c / Σ_b Y_b P_b = -(L_c W / (λ_c T_c)) / Σ_b Y_b P_b`.
pub fn deflator_field(config: &EconomyConfig, tech_point: &[f64], sector: usize) -> Result<f64> {
    let cfg = config.with_techs(tech_point);
    let st = solve_equilibrium(&cfg)?;
    let s = &cfg.sectors[sector];
    Ok(-(st.labor[sector] * st.wage / (s.lambda * s.tech)) / st.nominal_gdp)
}

/// Central-difference estimate of `∂F_c/∂T_d - ∂F_d/∂T_c` at `tech_point`.
///
/// Zero everywhere would make the deflator integral, and so measured real
/// growth between two endpoints, independent of the tech path.
pub fn curl_asymmetry(
    config: &EconomyConfig,
    tech_point: &[f64],
    c: usize,
    d: usize,
    h: f64,
) -> Result<f64> {
    let m = config.sectors.len();
    if tech_point.len() != m {
        return Err(Error::MismatchedSectors {
            left: tech_point.len(),
            right: m,
        });
    }
    if c >= m || d >= m {
        return Err(Error::Domain(format!(
            "sector indices ({c}, {d}) out of range for {m} sectors"
        )));
    }
    if !(h > 0.0) {
        return Err(Error::Domain(format!("step {h} must be positive")));
    }
    let relative = h / tech_point[c].min(tech_point[d]);
    if relative > 0.1 {
        return Err(Error::StepTooLarge { relative });
    }
    if c == d {
        return Ok(0.0);
    }
    let partial = |field: usize, along: usize| -> Result<f64> {
        let mut up = tech_point.to_vec();
        let mut down = tech_point.to_vec();
        up[along] += h;
        down[along] -= h;
        Ok(
            (deflator_field(config, &up, field)? - deflator_field(config, &down, field)?)
                / (2.0 * h),
        )
    };
    Ok(partial(c, d)? - partial(d, c)?)
}

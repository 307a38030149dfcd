//! Browser bindings for the growthmeter demo page.
//!
//! Each operation has a plain Rust function returning a serializable struct
//! (tested natively) and a `#[wasm_bindgen]` wrapper that returns JSON. On
//! failure the JSON is `{"error": "..."}` so the page never has to catch.

use growthmeter::econ::{EconomyConfig, SectorSpec};
use growthmeter::kaldor::{
    capital_output_ratio, investment_interval, market_clearing_new_output, sustainable_growth,
    StylizedFacts,
};
use growthmeter::measurement::{
    cumulative_factor, geometric_mean_growth, growth_series, BasePolicy,
};
use growthmeter::paths::{
    cumulative_tech_factor, curl_asymmetry, deflator_path_integral, simulate, TechSchedule,
};
use growthmeter::Result;
use serde::Serialize;
use wasm_bindgen::prelude::wasm_bindgen;

const START_YEAR: i32 = 1900;

fn island(subsistence: f64, omega_b: f64) -> EconomyConfig {
    let sector = |name: &str, subsistence: f64, omega: f64| SectorSpec {
        name: name.into(),
        lambda: 2.0 / 3.0,
        delta: 0.055,
        subsistence,
        omega,
        tech: 1.0,
    };
    EconomyConfig {
        sectors: vec![sector("A", subsistence, 1.0), sector("B", 0.0, omega_b)],
        total_labor: 100_000.0,
        rate_of_return: 0.055,
        wage: 200.0,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct IslandPath {
    pub name: String,
    pub years: Vec<i32>,
    pub chained: Vec<f64>,
    pub fixed_base: Vec<f64>,
    pub labor_share_a: Vec<f64>,
    pub chained_factor: f64,
    pub fixed_base_factor: f64,
    pub mean_growth: f64,
    pub deflator_integral: f64,
}

/// Three islands whose sectors reach the same technology levels by different
/// routes: fast-then-slow in A (north), uniform (middle), slow-then-fast in A (south).
pub fn islands(
    subsistence: f64,
    omega_b: f64,
    peak: f64,
    years: u32,
    wage_growth: f64,
) -> Result<Vec<IslandPath>> {
    let span = f64::from(years) + 1.0;
    let down = TechSchedule::RampDown { peak, span };
    let up = TechSchedule::RampUp { peak, span };
    // Uniform rate with the same cumulative factor as the ramps.
    let uniform = TechSchedule::constant(
        cumulative_tech_factor(&down, years)?.powf(1.0 / f64::from(years)) - 1.0,
    );
    let economy = island(subsistence, omega_b);
    [
        ("north", down.clone(), up.clone()),
        ("middle", uniform.clone(), uniform),
        ("south", up, down),
    ]
    .into_iter()
    .map(|(name, a, b)| {
        let run = simulate(&economy, &[a, b], years, wage_growth, START_YEAR)?;
        let chained = growth_series(&run.records, BasePolicy::Chained)?;
        let fixed = growth_series(&run.records, BasePolicy::FixedBase(START_YEAR))?;
        Ok(IslandPath {
            name: name.into(),
            years: chained.entries.iter().map(|e| e.0).collect(),
            chained: chained.rates().collect(),
            fixed_base: fixed.rates().collect(),
            labor_share_a: run.states.iter().map(|s| s.labor_shares()[0]).collect(),
            chained_factor: cumulative_factor(&chained),
            fixed_base_factor: cumulative_factor(&fixed),
            mean_growth: geometric_mean_growth(&chained),
            deflator_integral: deflator_path_integral(&run),
        })
    })
    .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct CurlGrid {
    /// Tech levels along each axis.
    pub levels: Vec<f64>,
    /// `values[i][j]` is the curl at `T = (levels[i], levels[j])`.
    pub values: Vec<Vec<f64>>,
    pub min: f64,
    pub max: f64,
}

/// Curl of the deflator field on a `steps × steps` grid over `[t_min, t_max]²`.
pub fn curl_grid(
    subsistence: f64,
    omega_b: f64,
    t_min: f64,
    t_max: f64,
    steps: usize,
) -> Result<CurlGrid> {
    if !(t_min > 0.0 && t_max > t_min) || steps < 2 {
        return Err(growthmeter::Error::Domain(
            "need 0 < t_min < t_max and at least 2 steps".into(),
        ));
    }
    let economy = island(subsistence, omega_b);
    let levels: Vec<f64> = (0..steps)
        .map(|i| t_min + (t_max - t_min) * i as f64 / (steps - 1) as f64)
        .collect();
    let h = 0.01 * t_min;
    let values = levels
        .iter()
        .map(|&ta| {
            levels
                .iter()
                .map(|&tb| curl_asymmetry(&economy, &[ta, tb], 0, 1, h))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let flat = values.iter().flatten().copied();
    let (min, max) = flat.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
        (lo.min(v), hi.max(v))
    });
    Ok(CurlGrid {
        levels,
        values,
        min,
        max,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct KaldorReport {
    pub capital_output_ratio: f64,
    pub investment_interval: f64,
    pub sustainable_growth: f64,
    /// New output per unit of current output value that clears the market.
    pub new_output_share: f64,
}

pub fn kaldor(facts: StylizedFacts) -> Result<KaldorReport> {
    facts.validate()?;
    Ok(KaldorReport {
        capital_output_ratio: capital_output_ratio(&facts),
        investment_interval: investment_interval(&facts),
        sustainable_growth: sustainable_growth(&facts),
        new_output_share: market_clearing_new_output(&facts, 1.0),
    })
}

fn to_json<T: Serialize>(result: Result<T>) -> String {
    match result {
        Ok(v) => serde_json::to_string(&v).unwrap_or_else(|e| error_json(&e.to_string())),
        Err(e) => error_json(&e.to_string()),
    }
}

fn error_json(msg: &str) -> String {
    serde_json::json!({ "error": msg }).to_string()
}

#[wasm_bindgen(js_name = islandsJson)]
pub fn islands_json(
    subsistence: f64,
    omega_b: f64,
    peak: f64,
    years: u32,
    wage_growth: f64,
) -> String {
    to_json(islands(subsistence, omega_b, peak, years, wage_growth))
}

#[wasm_bindgen(js_name = curlGridJson)]
pub fn curl_grid_json(
    subsistence: f64,
    omega_b: f64,
    t_min: f64,
    t_max: f64,
    steps: usize,
) -> String {
    to_json(curl_grid(subsistence, omega_b, t_min, t_max, steps))
}

#[wasm_bindgen(js_name = kaldorJson)]
pub fn kaldor_json(
    labor_share: f64,
    saving_rate: f64,
    rate_of_return: f64,
    mean_depreciation: f64,
    tech_growth: f64,
) -> String {
    to_json(kaldor(StylizedFacts {
        labor_share,
        saving_rate,
        rate_of_return,
        mean_depreciation,
        tech_growth,
    }))
}

//! Closed-form competitive equilibrium for an M-sector economy.
//!
//! Each sector produces with `Y = (T L)^λ N^(1-λ)` where `N` is a stock of the
//! sector's own good. Wage `W` and the rate of return `R_c` are common to all
//! sectors; prices adjust so both first-order conditions hold:
//!
//! ```text
//! P λ Y / L = W
//! (1 - λ) Y / N = R_c + δ
//! ```
//!
//! Labor is split by generalized Stone-Geary demand, `U = Π (x_a - N0_a)^Ω_a`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default parameter values used when a scenario file omits them.
pub mod defaults {
    pub const LAMBDA: f64 = 2.0 / 3.0;
    pub const DELTA: f64 = 0.055;
    pub const RATE_OF_RETURN: f64 = 0.055;
    pub const WAGE: f64 = 200.0;
    pub const TOTAL_LABOR: f64 = 100_000.0;
    pub const WAGE_GROWTH: f64 = 0.06;

    pub(crate) fn lambda() -> f64 {
        LAMBDA
    }
    pub(crate) fn delta() -> f64 {
        DELTA
    }
    pub(crate) fn rate_of_return() -> f64 {
        RATE_OF_RETURN
    }
    pub(crate) fn wage() -> f64 {
        WAGE
    }
    pub(crate) fn total_labor() -> f64 {
        TOTAL_LABOR
    }
    pub(crate) fn wage_growth() -> f64 {
        WAGE_GROWTH
    }
}

/// Technology, production and preference parameters of one sector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SectorSpec {
    pub name: String,
    /// Labor exponent of the Cobb-Douglas technology.
    #[serde(default = "defaults::lambda")]
    pub lambda: f64,
    /// Depreciation rate per year.
    #[serde(default = "defaults::delta")]
    pub delta: f64,
    /// Per-capita subsistence quantity `N0`.
    pub subsistence: f64,
    /// Utility exponent `Ω`.
    pub omega: f64,
    /// Productivity level `T`.
    pub tech: f64,
}

impl SectorSpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |field: &str, reason: &str| {
            Err(Error::Domain(format!(
                "sector '{}': {field} {reason}",
                self.name
            )))
        };
        if !(self.lambda > 0.0 && self.lambda < 1.0) {
            return bad("lambda", "must lie in (0, 1)");
        }
        if !(self.tech > 0.0) || !self.tech.is_finite() {
            return bad("tech", "must be positive");
        }
        if !(self.omega > 0.0) {
            return bad("omega", "must be positive");
        }
        if !(self.subsistence >= 0.0) {
            return bad("subsistence", "must be non-negative");
        }
        if !(self.delta >= 0.0) {
            return bad("delta", "must be non-negative");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EconomyConfig {
    pub sectors: Vec<SectorSpec>,
    #[serde(default = "defaults::total_labor")]
    pub total_labor: f64,
    #[serde(default = "defaults::rate_of_return")]
    pub rate_of_return: f64,
    #[serde(default = "defaults::wage")]
    pub wage: f64,
}

impl EconomyConfig {
    pub fn validate(&self) -> Result<()> {
        if self.sectors.is_empty() {
            return Err(Error::Domain("economy needs at least one sector".into()));
        }
        if !(self.total_labor > 0.0) {
            return Err(Error::Domain("total_labor must be positive".into()));
        }
        if !(self.wage > 0.0) {
            return Err(Error::Domain("wage must be positive".into()));
        }
        if !(self.rate_of_return > 0.0) {
            return Err(Error::Domain("rate_of_return must be positive".into()));
        }
        for s in &self.sectors {
            s.validate()?;
            if !(self.rate_of_return + s.delta > 0.0) {
                return Err(Error::Domain(format!(
                    "sector '{}': rate_of_return + delta must be positive",
                    s.name
                )));
            }
        }
        Ok(())
    }

    pub fn techs(&self) -> Vec<f64> {
        self.sectors.iter().map(|s| s.tech).collect()
    }

    /// Copy of the configuration with the tech vector replaced.
    pub fn with_techs(&self, techs: &[f64]) -> Self {
        let mut out = self.clone();
        for (s, &t) in out.sectors.iter_mut().zip(techs) {
            s.tech = t;
        }
        out
    }
}

/// One year's equilibrium, per-sector vectors in configuration order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquilibriumState {
    pub labor: Vec<f64>,
    pub capital_units: Vec<f64>,
    pub output: Vec<f64>,
    pub price: Vec<f64>,
    pub wage: f64,
    pub nominal_gdp: f64,
}

impl EquilibriumState {
    /// `|P λ Y / L - W| / W` per sector; `None` where the sector has no labor.
    pub fn labor_foc_residuals(&self, config: &EconomyConfig) -> Vec<Option<f64>> {
        config
            .sectors
            .iter()
            .enumerate()
            .map(|(a, s)| {
                (self.labor[a] > 0.0).then(|| {
                    let mpl = self.price[a] * s.lambda * self.output[a] / self.labor[a];
                    (mpl - self.wage).abs() / self.wage
                })
            })
            .collect()
    }

    /// `|(1-λ) Y / N - (R_c + δ)| / (R_c + δ)` per sector; `None` where `N = 0`.
    pub fn capital_foc_residuals(&self, config: &EconomyConfig) -> Vec<Option<f64>> {
        config
            .sectors
            .iter()
            .enumerate()
            .map(|(a, s)| {
                (self.capital_units[a] > 0.0).then(|| {
                    let cost = config.rate_of_return + s.delta;
                    ((1.0 - s.lambda) * self.output[a] / self.capital_units[a] - cost).abs() / cost
                })
            })
            .collect()
    }

    pub fn labor_shares(&self) -> Vec<f64> {
        let total: f64 = self.labor.iter().sum();
        self.labor.iter().map(|l| l / total).collect()
    }
}

fn check_technology(lambda: f64, delta: f64, rate_of_return: f64) -> Result<()> {
    if !(lambda > 0.0 && lambda < 1.0) {
        return Err(Error::Domain(format!("lambda {lambda} not in (0, 1)")));
    }
    if !(rate_of_return + delta > 0.0) {
        return Err(Error::Domain(format!(
            "rate_of_return + delta = {} must be positive",
            rate_of_return + delta
        )));
    }
    Ok(())
}

/// Cobb-Douglas output `(T L)^λ N^(1-λ)`.
pub fn cobb_douglas(tech: f64, labor: f64, capital: f64, lambda: f64) -> f64 {
    (tech * labor).powf(lambda) * capital.powf(1.0 - lambda)
}

/// Output per effective labor when capital sits at its FOC level:
/// `c = ((1-λ)/(R_c+δ))^((1-λ)/λ)`, so `Y = T L c`.
pub fn output_per_effective_labor(lambda: f64, delta: f64, rate_of_return: f64) -> Result<f64> {
    check_technology(lambda, delta, rate_of_return)?;
    Ok(((1.0 - lambda) / (rate_of_return + delta)).powf((1.0 - lambda) / lambda))
}

/// Physical capital per effective labor, `n = ((1-λ)/(R_c+δ))^(1/λ)`.
pub fn capital_per_effective_labor(lambda: f64, delta: f64, rate_of_return: f64) -> Result<f64> {
    check_technology(lambda, delta, rate_of_return)?;
    Ok(((1.0 - lambda) / (rate_of_return + delta)).powf(1.0 / lambda))
}

/// Long-run price `P = W / (λ T c)` at which the labor FOC holds.
pub fn long_run_price(
    wage: f64,
    lambda: f64,
    tech: f64,
    delta: f64,
    rate_of_return: f64,
) -> Result<f64> {
    if !(wage > 0.0) {
        return Err(Error::Domain(format!("wage {wage} must be positive")));
    }
    if !(tech > 0.0) {
        return Err(Error::Domain(format!("tech {tech} must be positive")));
    }
    let c = output_per_effective_labor(lambda, delta, rate_of_return)?;
    Ok(wage / (lambda * tech * c))
}

/// Labor allocation from Stone-Geary demand at long-run prices.
///
/// `L_a = L_t [ s_a + λ_a Ω_a (1 - Σ s_b) / Σ λ_b Ω_b ]` with
/// `s_a = N0_a / (T_a c_a)` the labor share needed to cover subsistence.
pub fn allocate_labor(config: &EconomyConfig) -> Result<Vec<f64>> {
    config.validate()?;
    let mut shares = Vec::with_capacity(config.sectors.len());
    for s in &config.sectors {
        let c = output_per_effective_labor(s.lambda, s.delta, config.rate_of_return)?;
        shares.push(s.subsistence / (s.tech * c));
    }
    let share_sum: f64 = shares.iter().sum();
    if share_sum >= 1.0 {
        return Err(Error::InfeasibleSubsistence { share_sum });
    }
    let weight_sum: f64 = config.sectors.iter().map(|s| s.lambda * s.omega).sum();
    let free = 1.0 - share_sum;
    Ok(config
        .sectors
        .iter()
        .zip(&shares)
        .map(|(s, &sub)| config.total_labor * (sub + s.lambda * s.omega * free / weight_sum))
        .collect())
}

pub fn solve_equilibrium(config: &EconomyConfig) -> Result<EquilibriumState> {
    let labor = allocate_labor(config)?;
    let m = config.sectors.len();
    let mut capital_units = Vec::with_capacity(m);
    let mut output = Vec::with_capacity(m);
    let mut price = Vec::with_capacity(m);
    for (s, &l) in config.sectors.iter().zip(&labor) {
        let c = output_per_effective_labor(s.lambda, s.delta, config.rate_of_return)?;
        let n = capital_per_effective_labor(s.lambda, s.delta, config.rate_of_return)?;
        capital_units.push(s.tech * l * n);
        output.push(s.tech * l * c);
        price.push(long_run_price(
            config.wage,
            s.lambda,
            s.tech,
            s.delta,
            config.rate_of_return,
        )?);
    }
    let nominal_gdp = output.iter().zip(&price).map(|(y, p)| y * p).sum();
    Ok(EquilibriumState {
        labor,
        capital_units,
        output,
        price,
        wage: config.wage,
        nominal_gdp,
    })
}

/// Generalized Stone-Geary utility value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Utility {
    pub value: f64,
    /// False when some sector's consumption falls below its subsistence level.
    pub in_domain: bool,
}

/// `Π_a (x_a - N0_a)^Ω_a` for per-capita consumption `x`.
///
/// Below subsistence the value is still returned (with a sign flip for an odd
/// count of negative factors) and flagged, so grid searches can rank it.
pub fn utility_value(per_capita_consumption: &[f64], sectors: &[SectorSpec]) -> Result<Utility> {
    if per_capita_consumption.len() != sectors.len() {
        return Err(Error::MismatchedSectors {
            left: per_capita_consumption.len(),
            right: sectors.len(),
        });
    }
    let mut value = 1.0;
    let mut in_domain = true;
    for (&x, s) in per_capita_consumption.iter().zip(sectors) {
        let surplus = x - s.subsistence;
        if surplus < 0.0 {
            in_domain = false;
            value *= -(-surplus).powf(s.omega);
        } else {
            value *= surplus.powf(s.omega);
        }
    }
    Ok(Utility { value, in_domain })
}

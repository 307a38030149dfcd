//! Saving, labor share and return on capital versus the sustainable measured growth rate.

use serde::{Deserialize, Serialize};

use crate::econ::{EconomyConfig, EquilibriumState};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StylizedFacts {
    pub labor_share: f64,
    pub saving_rate: f64,
    pub rate_of_return: f64,
    pub mean_depreciation: f64,
    /// Average technology growth `G` of the sectors receiving new investment.
    pub tech_growth: f64,
}

impl StylizedFacts {
    pub fn validate(&self) -> Result<()> {
        if !(self.labor_share > 0.0 && self.labor_share < 1.0) {
            return Err(Error::Domain(format!(
                "labor share {} not in (0, 1)",
                self.labor_share
            )));
        }
        if !(self.saving_rate > 0.0 && self.saving_rate < 1.0) {
            return Err(Error::Domain(format!(
                "saving rate {} not in (0, 1)",
                self.saving_rate
            )));
        }
        if !(self.rate_of_return + self.mean_depreciation > 0.0) {
            return Err(Error::Domain(
                "rate_of_return + mean_depreciation must be positive".into(),
            ));
        }
        if !(self.tech_growth >= 0.0) {
            return Err(Error::Domain(format!(
                "tech growth {} negative",
                self.tech_growth
            )));
        }
        Ok(())
    }

    fn capital_cost(&self) -> f64 {
        self.rate_of_return + self.mean_depreciation
    }
}

/// `K / Q = (1 - LS) / (R_c + δ̄)`.
pub fn capital_output_ratio(facts: &StylizedFacts) -> f64 {
    (1.0 - facts.labor_share) / facts.capital_cost()
}

/// Years of saving needed to fund the capital a `G` tech step requires:
/// `Δt = G (1 - LS) / (S (R_c + δ̄))`.
pub fn investment_interval(facts: &StylizedFacts) -> f64 {
    facts.tech_growth * (1.0 - facts.labor_share) / (facts.saving_rate * facts.capital_cost())
}

/// `ḡ = S (R_c + δ̄) / (1 - LS)`, independent of `G`.
pub fn sustainable_growth(facts: &StylizedFacts) -> f64 {
    facts.saving_rate * facts.capital_cost() / (1.0 - facts.labor_share)
}

/// Value of new output that clears the market when new investment is `S Q`
/// and factor shares stay at `LS : 1 - LS`.
pub fn market_clearing_new_output(facts: &StylizedFacts, output_value: f64) -> f64 {
    let investment = facts.saving_rate * output_value;
    let capital_income = investment * facts.capital_cost();
    let labor_income = facts.labor_share / (1.0 - facts.labor_share) * capital_income;
    capital_income + labor_income
}

/// Capital-value-weighted mean depreciation `Σ δ_a P_a N_a / Σ P_a N_a`.
pub fn mean_depreciation(config: &EconomyConfig, state: &EquilibriumState) -> Result<f64> {
    if config.sectors.len() != state.capital_units.len() {
        return Err(Error::MismatchedSectors {
            left: config.sectors.len(),
            right: state.capital_units.len(),
        });
    }
    let (weighted, total) = config
        .sectors
        .iter()
        .zip(state.capital_units.iter().zip(&state.price))
        .fold((0.0, 0.0), |(w, t), (s, (n, p))| {
            let k = n * p;
            (w + s.delta * k, t + k)
        });
    if total <= 0.0 {
        return Err(Error::Domain("economy holds no capital".into()));
    }
    Ok(weighted / total)
}

/// Labor share of nominal output in an equilibrium, `W L_t / Σ P Y`.
pub fn labor_share(state: &EquilibriumState) -> f64 {
    state.wage * state.labor.iter().sum::<f64>() / state.nominal_gdp
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::econ::{solve_equilibrium, SectorSpec};
    use approx::assert_relative_eq;

    fn facts(ls: f64, s: f64, r: f64, d: f64, g: f64) -> StylizedFacts {
        StylizedFacts {
            labor_share: ls,
            saving_rate: s,
            rate_of_return: r,
            mean_depreciation: d,
            tech_growth: g,
        }
    }

    #[test]
    fn capital_output_ratio_values() {
        assert_relative_eq!(
            capital_output_ratio(&facts(2.0 / 3.0, 0.1, 0.055, 0.055, 0.0)),
            3.0303,
            epsilon = 1e-4
        );
        assert_eq!(capital_output_ratio(&facts(1.0, 0.1, 0.05, 0.05, 0.0)), 0.0);
        assert_relative_eq!(
            capital_output_ratio(&facts(0.5, 0.1, 0.06, 0.04, 0.0)),
            5.0,
            max_relative = 1e-14
        );
    }

    #[test]
    fn investment_interval_values() {
        assert_eq!(
            investment_interval(&facts(2.0 / 3.0, 0.0909, 0.055, 0.055, 0.0)),
            0.0
        );
        let f = facts(2.0 / 3.0, 0.0909, 0.055, 0.055, 0.03);
        assert_relative_eq!(investment_interval(&f), 1.0, epsilon = 1e-3);
        let doubled = StylizedFacts {
            saving_rate: 2.0 * f.saving_rate,
            ..f
        };
        assert_relative_eq!(
            investment_interval(&doubled),
            investment_interval(&f) / 2.0,
            max_relative = 1e-15
        );
    }

    #[test]
    fn sustainable_growth_values() {
        assert_relative_eq!(
            sustainable_growth(&facts(2.0 / 3.0, 0.0606, 0.055, 0.055, 0.0)),
            0.02,
            epsilon = 1e-4
        );
        assert_eq!(
            sustainable_growth(&facts(2.0 / 3.0, 0.0, 0.055, 0.055, 0.0)),
            0.0
        );
        for g in [0.01, 0.05, 0.2] {
            let f = facts(2.0 / 3.0, 0.0606, 0.055, 0.055, g);
            assert_relative_eq!(
                g / investment_interval(&f),
                sustainable_growth(&f),
                max_relative = 1e-14
            );
        }
    }

    #[test]
    fn validation() {
        assert!(facts(2.0 / 3.0, 0.1, 0.05, 0.05, 0.02).validate().is_ok());
        assert!(facts(1.0, 0.1, 0.05, 0.05, 0.02).validate().is_err());
        assert!(facts(0.5, 0.1, -0.05, 0.0, 0.02).validate().is_err());
    }

    #[test]
    fn equilibrium_helpers() {
        let sector = |name: &str, lambda, delta| SectorSpec {
            name: name.into(),
            lambda,
            delta,
            subsistence: 0.0,
            omega: 1.0,
            tech: 1.0,
        };
        let cfg = EconomyConfig {
            sectors: vec![sector("a", 2.0 / 3.0, 0.055), sector("b", 2.0 / 3.0, 0.055)],
            total_labor: 100.0,
            rate_of_return: 0.055,
            wage: 10.0,
        };
        let st = solve_equilibrium(&cfg).unwrap();
        assert_relative_eq!(
            mean_depreciation(&cfg, &st).unwrap(),
            0.055,
            max_relative = 1e-14
        );
        // Cobb-Douglas with equal λ pays labor exactly λ of output.
        assert_relative_eq!(labor_share(&st), 2.0 / 3.0, max_relative = 1e-14);

        let mixed = EconomyConfig {
            sectors: vec![sector("a", 0.5, 0.02), sector("b", 0.8, 0.1)],
            ..cfg
        };
        let st = solve_equilibrium(&mixed).unwrap();
        let d = mean_depreciation(&mixed, &st).unwrap();
        assert!(d > 0.02 && d < 0.1);
    }
}

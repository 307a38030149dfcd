//! Independent oracles shared by the integration tests.
//!
//! Nothing here calls the allocation, pricing or curl routines of the crate;
//! each oracle rebuilds its answer from the production function directly.
#![allow(dead_code)]

use growthmeter::econ::{EconomyConfig, SectorSpec};
use rand::Rng;

/// Capital that satisfies `(1-λ) Y / N = R + δ` for `Y = (T L)^λ N^(1-λ)`,
/// solved in closed form: `N = T L ((1-λ)/(R+δ))^(1/λ)`.
fn foc_capital(tech: f64, labor: f64, lambda: f64, cost: f64) -> f64 {
    tech * labor * ((1.0 - lambda) / cost).powf(1.0 / lambda)
}

fn cd_output(tech: f64, labor: f64, capital: f64, lambda: f64) -> f64 {
    (tech * labor).powf(lambda) * capital.powf(1.0 - lambda)
}

fn sector_output(cfg: &EconomyConfig, a: usize, labor: f64) -> f64 {
    let s = &cfg.sectors[a];
    let cost = cfg.rate_of_return + s.delta;
    cd_output(
        s.tech,
        labor,
        foc_capital(s.tech, labor, s.lambda, cost),
        s.lambda,
    )
}

/// Brute-force planner: scan integer `L_A` over `0..=L_t`, capital at its FOC
/// level at each point, maximize `(Y_A/L_t - N0_A)^Ω_A (Y_B/L_t - N0_B)^Ω_B`.
pub fn planner_argmax_labor(cfg: &EconomyConfig) -> f64 {
    assert_eq!(cfg.sectors.len(), 2);
    let lt = cfg.total_labor;
    let n = lt.round() as u64;
    let mut best = (f64::NEG_INFINITY, 0.0);
    for la in 0..=n {
        let la = la as f64;
        let xa = sector_output(cfg, 0, la) / lt - cfg.sectors[0].subsistence;
        let xb = sector_output(cfg, 1, lt - la) / lt - cfg.sectors[1].subsistence;
        if xa <= 0.0 || xb <= 0.0 {
            continue;
        }
        // Logs keep large exponents finite.
        let u = cfg.sectors[0].omega * xa.ln() + cfg.sectors[1].omega * xb.ln();
        if u > best.0 {
            best = (u, la);
        }
    }
    best.1
}

/// Decentralized equilibrium by bisection: prices from the labor FOC, income
/// equal to the value of output, Stone-Geary demand for good A equal to supply.
pub fn market_clearing_labor(cfg: &EconomyConfig) -> f64 {
    assert_eq!(cfg.sectors.len(), 2);
    let lt = cfg.total_labor;
    let w = cfg.wage;
    let price = |a: usize| {
        // P = W / (∂Y/∂L) with ∂Y/∂L = λ Y / L at FOC capital (any L > 0).
        let s = &cfg.sectors[a];
        let y1 = sector_output(cfg, a, 1.0);
        w / (s.lambda * y1)
    };
    let (pa, pb) = (price(0), price(1));
    let omega_sum = cfg.sectors[0].omega + cfg.sectors[1].omega;
    let excess_a = |la: f64| {
        let ya = sector_output(cfg, 0, la);
        let yb = sector_output(cfg, 1, lt - la);
        let income = pa * ya + pb * yb;
        let committed = lt * (pa * cfg.sectors[0].subsistence + pb * cfg.sectors[1].subsistence);
        let demand_a = lt * cfg.sectors[0].subsistence
            + cfg.sectors[0].omega / omega_sum * (income - committed) / pa;
        ya - demand_a
    };
    let (mut lo, mut hi) = (0.0, lt);
    assert!(excess_a(lo) < 0.0 && excess_a(hi) > 0.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if excess_a(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Closed-form curl `∂F_A/∂T_B - ∂F_B/∂T_A` for a bi-sector economy with a
/// common λ and subsistence only in A. Nominal GDP is `W L_t / λ`, so
/// `F_A = -(L_A/L_t)/T_A` depends on `T_A` alone and
/// `F_B = -w_B (1 - s_A) / T_B` with `s_A = N0/(T_A c)`.
pub fn analytic_curl(cfg: &EconomyConfig, t_a: f64, t_b: f64) -> f64 {
    let (a, b) = (&cfg.sectors[0], &cfg.sectors[1]);
    assert_eq!(a.lambda, b.lambda);
    assert_eq!(b.subsistence, 0.0);
    let cost = cfg.rate_of_return + a.delta;
    let c = ((1.0 - a.lambda) / cost).powf((1.0 - a.lambda) / a.lambda);
    let w_b = b.omega / (a.omega + b.omega);
    w_b * a.subsistence / (c * t_a * t_a * t_b)
}

pub fn island(n0: f64, omega_b: f64, t_a: f64, t_b: f64) -> EconomyConfig {
    let sector = |name: &str, subsistence: f64, omega: f64, tech: f64| SectorSpec {
        name: name.into(),
        lambda: 2.0 / 3.0,
        delta: 0.055,
        subsistence,
        omega,
        tech,
    };
    EconomyConfig {
        sectors: vec![sector("A", n0, 1.0, t_a), sector("B", 0.0, omega_b, t_b)],
        total_labor: 100_000.0,
        rate_of_return: 0.055,
        wage: 200.0,
    }
}

/// Random feasible bi-sector economy. `common_lambda` forces λ_A = λ_B.
pub fn random_bisector<R: Rng>(
    rng: &mut R,
    common_lambda: bool,
    total_labor: f64,
) -> EconomyConfig {
    loop {
        let lambda_a = rng.gen_range(0.2..0.9);
        let lambda_b = if common_lambda {
            lambda_a
        } else {
            rng.gen_range(0.2..0.9)
        };
        let rate = rng.gen_range(0.01..0.1);
        let sector =
            |name: &str, lambda: f64, delta: f64, subsistence: f64, omega: f64, tech: f64| {
                SectorSpec {
                    name: name.into(),
                    lambda,
                    delta,
                    subsistence,
                    omega,
                    tech,
                }
            };
        let cfg = EconomyConfig {
            sectors: vec![
                sector(
                    "A",
                    lambda_a,
                    rng.gen_range(0.0..0.1),
                    rng.gen_range(0.0..2.0),
                    1.0,
                    rng.gen_range(0.5..20.0),
                ),
                sector(
                    "B",
                    lambda_b,
                    rng.gen_range(0.0..0.1),
                    0.0,
                    rng.gen_range(1.0..6.0),
                    rng.gen_range(0.5..20.0),
                ),
            ],
            total_labor,
            rate_of_return: rate,
            wage: rng.gen_range(10.0..500.0),
        };
        // Keep a margin from the infeasible corner.
        if let Ok(l) = growthmeter::econ::allocate_labor(&cfg) {
            let s_a = l[0] / total_labor;
            if s_a > 0.01 && s_a < 0.99 {
                return cfg;
            }
        }
    }
}

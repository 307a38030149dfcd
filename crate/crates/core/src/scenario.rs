//! Scenario files, built-in experiments and the artifacts a run emits.
//!
//! A scenario is a JSON document:
//!
//! ```json
//! {
//!   "name": "exp1-north",
//!   "economy": {
//!     "sectors": [
//!       { "name": "A", "subsistence": 1.6711, "omega": 1, "tech": 1 },
//!       { "name": "B", "subsistence": 0, "omega": 1, "tech": 1 }
//!     ]
//!   },
//!   "schedules": { "A": { "kind": "constant", "rate": 0.05 }, "B": { "kind": "constant", "rate": 0 } },
//!   "years": 98,
//!   "policies": ["chained", "fixed:1900"]
//! }
//! ```
//!
//! Omitted `lambda`, `delta`, `total_labor`, `rate_of_return`, `wage`,
//! `wage_growth` and `start_year` take the defaults in [`crate::econ::defaults`]
//! (start year 1900). `outputs` defaults to `["records", "growth"]`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::econ::{defaults, solve_equilibrium, EconomyConfig, SectorSpec};
use crate::error::{Error, Result};
use crate::kaldor::{
    capital_output_ratio, investment_interval, labor_share, mean_depreciation, sustainable_growth,
    StylizedFacts,
};
use crate::measurement::{
    common_price_comparison, cumulative_factor, geometric_mean_growth, growth_series_resolvable,
    BasePolicy, GrowthSeries,
};
use crate::paths::{
    curl_asymmetry, decomposition_check, deflator_path_integral, simulate, SimulationRun,
    TechSchedule,
};
use crate::report;

fn default_start_year() -> i32 {
    1900
}

fn default_outputs() -> Vec<OutputKind> {
    vec![OutputKind::Records, OutputKind::Growth]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputKind {
    Records,
    Growth,
    LaborShares,
    Inflation,
    Indices,
}

impl OutputKind {
    fn file_name(self) -> &'static str {
        match self {
            OutputKind::Records => "records.csv",
            OutputKind::Growth => "growth.csv",
            OutputKind::LaborShares => "labor_shares.csv",
            OutputKind::Inflation => "inflation.csv",
            OutputKind::Indices => "indices.csv",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    #[serde(default)]
    pub name: String,
    #[serde(default = "default_start_year")]
    pub start_year: i32,
    pub economy: EconomyConfig,
    /// Tech schedule per sector name.
    pub schedules: BTreeMap<String, TechSchedule>,
    pub years: u32,
    #[serde(default = "defaults::wage_growth")]
    pub wage_growth: f64,
    #[serde(default)]
    pub policies: Vec<BasePolicy>,
    #[serde(default = "default_outputs")]
    pub outputs: Vec<OutputKind>,
}

impl ScenarioConfig {
    /// Parse and validate; errors carry the JSON path and line/column.
    pub fn from_json(text: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let cfg: ScenarioConfig = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            Error::config(
                if path == "." { "<root>".into() } else { path },
                e.into_inner().to_string(),
            )
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenario serializes")
    }

    pub fn validate(&self) -> Result<()> {
        if self.years < 1 {
            return Err(Error::config("years", "must be at least 1"));
        }
        if !(self.wage_growth > -1.0) {
            return Err(Error::config("wage_growth", "must exceed -1"));
        }
        let eco = &self.economy;
        if eco.sectors.is_empty() {
            return Err(Error::config(
                "economy.sectors",
                "needs at least one sector",
            ));
        }
        for (field, v) in [
            ("total_labor", eco.total_labor),
            ("wage", eco.wage),
            ("rate_of_return", eco.rate_of_return),
        ] {
            if !(v > 0.0) {
                return Err(Error::config(
                    format!("economy.{field}"),
                    "must be positive",
                ));
            }
        }
        let mut seen = std::collections::HashSet::new();
        for (i, s) in eco.sectors.iter().enumerate() {
            let at = |f: &str| format!("economy.sectors[{i}].{f}");
            if !seen.insert(s.name.as_str()) {
                return Err(Error::config(
                    at("name"),
                    format!("duplicate sector '{}'", s.name),
                ));
            }
            if !(s.lambda > 0.0 && s.lambda < 1.0) {
                return Err(Error::config(at("lambda"), "must lie in (0, 1)"));
            }
            if !(s.delta >= 0.0) {
                return Err(Error::config(at("delta"), "must be non-negative"));
            }
            if !(eco.rate_of_return + s.delta > 0.0) {
                return Err(Error::config(
                    at("delta"),
                    "rate_of_return + delta must be positive",
                ));
            }
            if !(s.subsistence >= 0.0) {
                return Err(Error::config(at("subsistence"), "must be non-negative"));
            }
            if !(s.omega > 0.0) {
                return Err(Error::config(at("omega"), "must be positive"));
            }
            if !(s.tech > 0.0) {
                return Err(Error::config(at("tech"), "must be positive"));
            }
            if !self.schedules.contains_key(&s.name) {
                return Err(Error::config(
                    "schedules",
                    format!("no schedule for sector '{}'", s.name),
                ));
            }
        }
        for name in self.schedules.keys() {
            if !seen.contains(name.as_str()) {
                return Err(Error::config(format!("schedules.{name}"), "unknown sector"));
            }
        }
        let last = self.start_year + self.years as i32;
        for (i, p) in self.policies.iter().enumerate() {
            if let BasePolicy::FixedBase(j) = p {
                if *j < self.start_year || *j > last {
                    return Err(Error::config(
                        format!("policies[{i}]"),
                        format!("base year {j} outside {}..={last}", self.start_year),
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn schedules_in_order(&self) -> Vec<TechSchedule> {
        self.economy
            .sectors
            .iter()
            .map(|s| self.schedules[&s.name].clone())
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutputFile {
    pub name: String,
    pub contents: String,
}

/// Headline numbers of one policy's growth series.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PolicySummary {
    pub policy: BasePolicy,
    pub years: usize,
    pub last_growth: f64,
    pub mean_growth: f64,
    pub cumulative_factor: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunSummary {
    pub name: String,
    pub first_year: i32,
    pub last_year: i32,
    pub initial_gdp: f64,
    pub final_gdp: f64,
    pub final_labor_shares: Vec<(String, f64)>,
    pub policies: Vec<PolicySummary>,
    pub deflator_integral: f64,
    pub decomposition_residual: f64,
}

impl RunSummary {
    pub fn policy(&self, policy: BasePolicy) -> Option<&PolicySummary> {
        self.policies.iter().find(|p| p.policy == policy)
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "scenario {} ({}-{})",
            self.name, self.first_year, self.last_year
        );
        let _ = writeln!(
            s,
            "  nominal GDP        {:.2} -> {:.2}",
            self.initial_gdp, self.final_gdp
        );
        for (name, share) in &self.final_labor_shares {
            let _ = writeln!(s, "  final labor share  {name:<8} {share:.4}");
        }
        let _ = writeln!(s, "  deflator integral  {:.6}", self.deflator_integral);
        let _ = writeln!(
            s,
            "  decomposition      {:.3e}",
            self.decomposition_residual
        );
        if !self.policies.is_empty() {
            let _ = writeln!(
                s,
                "  {:<12} {:>5} {:>10} {:>10} {:>12}",
                "policy", "years", "last g", "mean g", "cumulative"
            );
            for p in &self.policies {
                let _ = writeln!(
                    s,
                    "  {:<12} {:>5} {:>10.5} {:>10.5} {:>12.4}",
                    p.policy.to_string(),
                    p.years,
                    p.last_growth,
                    p.mean_growth,
                    p.cumulative_factor
                );
            }
        }
        s
    }
}

pub fn summarize_growth(gs: &GrowthSeries) -> PolicySummary {
    PolicySummary {
        policy: gs.policy,
        years: gs.len(),
        last_growth: gs.last().map_or(0.0, |(_, g)| g),
        mean_growth: geometric_mean_growth(gs),
        cumulative_factor: cumulative_factor(gs),
    }
}

#[derive(Debug, Clone)]
pub struct ScenarioOutput {
    pub run: SimulationRun,
    pub growth: Vec<GrowthSeries>,
    pub summary: RunSummary,
    pub files: Vec<OutputFile>,
}

/// Simulate a validated scenario and render its requested reports in memory.
pub fn execute(cfg: &ScenarioConfig, svg: bool) -> Result<ScenarioOutput> {
    cfg.validate()?;
    let run = simulate(
        &cfg.economy,
        &cfg.schedules_in_order(),
        cfg.years,
        cfg.wage_growth,
        cfg.start_year,
    )?;
    let growth = cfg
        .policies
        .iter()
        .map(|&p| growth_series_resolvable(&run.records, p))
        .collect::<Result<Vec<_>>>()?;

    let (first, last) = (&run.records[0], run.records.last().expect("non-empty run"));
    let summary = RunSummary {
        name: cfg.name.clone(),
        first_year: first.year,
        last_year: last.year,
        initial_gdp: first.nominal_gdp,
        final_gdp: last.nominal_gdp,
        final_labor_shares: run
            .sector_names()
            .into_iter()
            .map(String::from)
            .zip(run.final_labor_shares())
            .collect(),
        policies: growth.iter().map(summarize_growth).collect(),
        deflator_integral: deflator_path_integral(&run),
        decomposition_residual: decomposition_check(&run)?,
    };

    let mut files = Vec::new();
    for &kind in &cfg.outputs {
        let contents = match kind {
            OutputKind::Records => report::records_csv(&run)?,
            // No policies, nothing to measure.
            OutputKind::Growth if growth.is_empty() => continue,
            OutputKind::Growth => report::growth_csv(&growth)?,
            OutputKind::LaborShares => report::labor_shares_csv(&run)?,
            OutputKind::Inflation => report::inflation_csv(&run)?,
            OutputKind::Indices => report::indices_csv(&run)?,
        };
        files.push(OutputFile {
            name: kind.file_name().into(),
            contents,
        });
    }
    if svg {
        files.extend(charts(&cfg.name, &run, &growth));
    }
    Ok(ScenarioOutput {
        run,
        growth,
        summary,
        files,
    })
}

fn charts(name: &str, run: &SimulationRun, growth: &[GrowthSeries]) -> Vec<OutputFile> {
    let mut out = Vec::new();
    if !growth.is_empty() {
        let series: Vec<_> = growth
            .iter()
            .map(|gs| {
                let pts = gs.entries.iter().map(|&(y, g)| (f64::from(y), g)).collect();
                (gs.policy.to_string(), pts)
            })
            .collect();
        out.push(OutputFile {
            name: "growth.svg".into(),
            contents: report::svg_line_chart(
                &format!("{name}: measured real growth"),
                "growth rate",
                &series,
            ),
        });
    }
    let series: Vec<_> = run
        .sector_names()
        .iter()
        .enumerate()
        .map(|(a, n)| {
            let pts = run
                .records
                .iter()
                .zip(&run.states)
                .map(|(r, st)| (f64::from(r.year), st.labor_shares()[a]))
                .collect();
            (n.to_string(), pts)
        })
        .collect();
    out.push(OutputFile {
        name: "labor_shares.svg".into(),
        contents: report::svg_line_chart(
            &format!("{name}: labor shares"),
            "share of labor",
            &series,
        ),
    });
    out
}

pub fn write_files(dir: &Path, files: &[OutputFile]) -> Result<Vec<PathBuf>> {
    let io = |p: &Path, e: std::io::Error| Error::config(p.display().to_string(), e.to_string());
    fs::create_dir_all(dir).map_err(|e| io(dir, e))?;
    files
        .iter()
        .map(|f| {
            let path = dir.join(&f.name);
            fs::write(&path, &f.contents).map_err(|e| io(&path, e))?;
            Ok(path)
        })
        .collect()
}

/// Load a scenario file, run it and write its reports under `out_dir`.
pub fn run_scenario(
    path: &Path,
    out_dir: &Path,
    svg: bool,
    policies: Option<Vec<BasePolicy>>,
) -> Result<ScenarioOutput> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::config(path.display().to_string(), e.to_string()))?;
    let mut cfg = ScenarioConfig::from_json(&text)?;
    if let Some(p) = policies {
        cfg.policies = p;
    }
    let out = execute(&cfg, svg)?;
    write_files(out_dir, &out.files)?;
    Ok(out)
}

pub const BUILTINS: [&str; 8] = [
    "exp1-north",
    "exp1-south",
    "exp2-north",
    "exp2-middle",
    "exp2-south",
    "kaldor-demo",
    "curl-demo",
    "ppp-demo",
];

pub fn list_builtins() -> &'static [&'static str] {
    &BUILTINS
}

/// Subsistence levels of the two calibrated islands. With equal weights the
/// low one keeps about half of labor in A after a century of 5% A-growth;
/// with B weighted 5 the high one keeps about a sixth.
pub const N0_LOW: f64 = 1.6711;
pub const N0_HIGH: f64 = 1.6990;

fn island(n0: f64, omega: f64) -> EconomyConfig {
    let sector = |name: &str, subsistence: f64, omega: f64| SectorSpec {
        name: name.into(),
        lambda: defaults::LAMBDA,
        delta: defaults::DELTA,
        subsistence,
        omega,
        tech: 1.0,
    };
    EconomyConfig {
        sectors: vec![sector("A", n0, 1.0), sector("B", 0.0, omega)],
        total_labor: defaults::TOTAL_LABOR,
        rate_of_return: defaults::RATE_OF_RETURN,
        wage: defaults::WAGE,
    }
}

fn two_sector(
    name: &str,
    economy: EconomyConfig,
    a: TechSchedule,
    b: TechSchedule,
    policies: Vec<BasePolicy>,
) -> ScenarioConfig {
    ScenarioConfig {
        name: name.into(),
        start_year: 1900,
        economy,
        schedules: BTreeMap::from([("A".to_string(), a), ("B".to_string(), b)]),
        years: 98,
        wage_growth: defaults::WAGE_GROWTH,
        policies,
        outputs: vec![
            OutputKind::Records,
            OutputKind::Growth,
            OutputKind::LaborShares,
            OutputKind::Inflation,
        ],
    }
}

/// Scenario for a simulation built-in; `None` for demos and unknown names.
pub fn builtin_scenario(name: &str) -> Option<ScenarioConfig> {
    use BasePolicy::*;
    let exp1 = || vec![Chained, FixedBase(1900), LaggedBase(15)];
    let exp2 = || vec![Chained, FixedBase(1900)];
    let flat = || TechSchedule::constant(0.0);
    let cfg = match name {
        "exp1-north" => two_sector(
            name,
            island(N0_LOW, 1.0),
            TechSchedule::constant(0.05),
            flat(),
            exp1(),
        ),
        "exp1-south" => two_sector(
            name,
            island(N0_HIGH, 5.0),
            TechSchedule::constant(0.05),
            flat(),
            exp1(),
        ),
        "exp2-north" => two_sector(
            name,
            island(N0_HIGH, 5.0),
            TechSchedule::ramp_down(),
            TechSchedule::ramp_up(),
            exp2(),
        ),
        "exp2-middle" => two_sector(
            name,
            island(N0_HIGH, 5.0),
            TechSchedule::constant(0.0305),
            TechSchedule::constant(0.0305),
            exp2(),
        ),
        "exp2-south" => two_sector(
            name,
            island(N0_HIGH, 5.0),
            TechSchedule::ramp_up(),
            TechSchedule::ramp_down(),
            exp2(),
        ),
        _ => return None,
    };
    Some(cfg)
}

/// Output of a built-in: a simulation or one of the analytic demos.
#[derive(Debug, Clone)]
pub struct BuiltinOutput {
    pub summary: String,
    pub files: Vec<OutputFile>,
    pub scenario: Option<ScenarioOutput>,
}

pub fn run_builtin(
    name: &str,
    svg: bool,
    policies: Option<Vec<BasePolicy>>,
) -> Result<BuiltinOutput> {
    if let Some(mut cfg) = builtin_scenario(name) {
        if let Some(p) = policies {
            cfg.policies = p;
        }
        let out = execute(&cfg, svg)?;
        return Ok(BuiltinOutput {
            summary: out.summary.render(),
            files: out.files.clone(),
            scenario: Some(out),
        });
    }
    let (summary, files) = match name {
        "kaldor-demo" => kaldor_demo()?,
        "curl-demo" => curl_demo()?,
        "ppp-demo" => ppp_demo(svg)?,
        _ => {
            return Err(Error::config(
                "builtin",
                format!("unknown builtin '{name}' (try: {})", BUILTINS.join(", ")),
            ))
        }
    };
    Ok(BuiltinOutput {
        summary,
        files,
        scenario: None,
    })
}

fn csv_table(header: &[&str], rows: &[Vec<f64>]) -> String {
    let mut s = header.join(",");
    s.push('\n');
    for r in rows {
        let cells: Vec<String> = r.iter().map(f64::to_string).collect();
        s += &cells.join(",");
        s.push('\n');
    }
    s
}

/// Sustainable growth for a two-thirds labor share, across technology growth rates.
pub fn kaldor_demo() -> Result<(String, Vec<OutputFile>)> {
    let st = solve_equilibrium(&island(N0_HIGH, 5.0))?;
    let eco = island(N0_HIGH, 5.0);
    let base = StylizedFacts {
        labor_share: labor_share(&st),
        saving_rate: 0.0606,
        rate_of_return: eco.rate_of_return,
        mean_depreciation: mean_depreciation(&eco, &st)?,
        tech_growth: 0.0,
    };
    base.validate()?;
    let mut rows = Vec::new();
    let mut s = String::new();
    let _ = writeln!(
        s,
        "kaldor-demo: LS = {:.4}, S = {}, R_c + δ̄ = {:.3}",
        base.labor_share,
        base.saving_rate,
        base.rate_of_return + base.mean_depreciation
    );
    let _ = writeln!(
        s,
        "  capital/output ratio {:.4}",
        capital_output_ratio(&base)
    );
    let _ = writeln!(s, "  {:>8} {:>12} {:>12}", "G", "Δt (years)", "ḡ");
    for g in [0.01, 0.03, 0.05, 0.1, 0.2] {
        let f = StylizedFacts {
            tech_growth: g,
            ..base
        };
        let dt = investment_interval(&f);
        let sg = sustainable_growth(&f);
        let _ = writeln!(s, "  {g:>8.3} {dt:>12.4} {sg:>12.5}");
        rows.push(vec![g, capital_output_ratio(&f), dt, sg]);
    }
    let files = vec![OutputFile {
        name: "kaldor.csv".into(),
        contents: csv_table(
            &[
                "tech_growth",
                "capital_output_ratio",
                "investment_interval",
                "sustainable_growth",
            ],
            &rows,
        ),
    }];
    Ok((s, files))
}

/// Curl of the deflator field on the three-island economy at constant wage.
pub fn curl_demo() -> Result<(String, Vec<OutputFile>)> {
    let eco = island(N0_HIGH, 5.0);
    let mut s = String::new();
    let _ = writeln!(
        s,
        "curl-demo: ∂F_A/∂T_B - ∂F_B/∂T_A at T = (2, 5), W = {}",
        eco.wage
    );
    let mut prev: Option<f64> = None;
    for h in [0.1, 0.05, 0.025, 0.0125] {
        let c = curl_asymmetry(&eco, &[2.0, 5.0], 0, 1, h)?;
        let delta = prev
            .map(|p| format!("  Δ = {:.3e}", c - p))
            .unwrap_or_default();
        let _ = writeln!(s, "  h = {h:<7} curl = {c:.10}{delta}");
        prev = Some(c);
    }
    let mut rows = Vec::new();
    for ta in 1..=19 {
        for tb in 1..=19 {
            let (ta, tb) = (f64::from(ta), f64::from(tb));
            let c = curl_asymmetry(&eco, &[ta, tb], 0, 1, 0.01)?;
            rows.push(vec![ta, tb, c]);
        }
    }
    // Path integrals between the same endpoints at constant wage.
    let _ = writeln!(s, "  deflator integral, constant wage, 1900-1998:");
    for name in ["exp2-north", "exp2-middle", "exp2-south"] {
        let mut cfg = builtin_scenario(name).expect("builtin");
        cfg.wage_growth = 0.0;
        let run = simulate(
            &cfg.economy,
            &cfg.schedules_in_order(),
            cfg.years,
            0.0,
            cfg.start_year,
        )?;
        let _ = writeln!(s, "    {name:<12} {:.6}", deflator_path_integral(&run));
    }
    let files = vec![OutputFile {
        name: "curl.csv".into(),
        contents: csv_table(&["t_a", "t_b", "curl"], &rows),
    }];
    Ok((s, files))
}

/// North vs South of the three-island experiment at Middle-Island prices.
pub fn ppp_demo(svg: bool) -> Result<(String, Vec<OutputFile>)> {
    let run = |name: &str| -> Result<SimulationRun> {
        let cfg = builtin_scenario(name).expect("builtin");
        simulate(
            &cfg.economy,
            &cfg.schedules_in_order(),
            cfg.years,
            cfg.wage_growth,
            cfg.start_year,
        )
    };
    let (north, middle, south) = (run("exp2-north")?, run("exp2-middle")?, run("exp2-south")?);
    let mut s = String::from("ppp-demo: South relative to North at Middle-Island prices\n");
    let mut files = Vec::new();
    let mut chart = Vec::new();
    for ref_year in [1900, 1949, 1998] {
        let idx = (ref_year - middle.start_year) as usize;
        let prices = &middle.records[idx].prices;
        let cmp = common_price_comparison(&north.records, &south.records, prices)?;
        let last = cmp.years.len() - 1;
        let worst = cmp
            .gap
            .iter()
            .copied()
            .fold(0.0_f64, |a, g| if g.abs() > a.abs() { g } else { a });
        let _ = writeln!(
            s,
            "  prices {ref_year}: final ratio {:.6}, own-accounts ratio {:.4}, final gap {:+.4}, largest gap {:+.4}",
            cmp.ratio[last], cmp.extrapolated_ratio[last], cmp.gap[last], worst
        );
        let rows: Vec<Vec<f64>> = (0..cmp.years.len())
            .map(|i| {
                vec![
                    f64::from(cmp.years[i]),
                    cmp.gdp_a[i],
                    cmp.gdp_b[i],
                    cmp.ratio[i],
                    cmp.extrapolated_ratio[i],
                    cmp.gap[i],
                ]
            })
            .collect();
        files.push(OutputFile {
            name: format!("ppp_{ref_year}.csv"),
            contents: csv_table(
                &[
                    "year",
                    "gdp_north",
                    "gdp_south",
                    "ratio",
                    "extrapolated_ratio",
                    "gap",
                ],
                &rows,
            ),
        });
        chart.push((
            format!("ratio @ {ref_year}"),
            cmp.years
                .iter()
                .zip(&cmp.ratio)
                .map(|(&y, &r)| (f64::from(y), r))
                .collect(),
        ));
    }
    if svg {
        files.push(OutputFile {
            name: "ppp.svg".into(),
            contents: report::svg_line_chart("South / North GDP at common prices", "ratio", &chart),
        });
    }
    Ok((s, files))
}

//! GDP aggregation and real-growth measurement.
//!
//! A run is a slice of [`YearRecord`]s sorted by year. Real growth of year `i`
//! values the quantities of years `i` and `i-1` at the prices of a base year
//! `j` chosen by a [`BasePolicy`]:
//!
//! ```text
//! g_i^j = (Σ Y_i P_j - Σ Y_{i-1} P_j) / Σ Y_{i-1} P_j
//! ```

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::econ::EquilibriumState;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct YearRecord {
    pub year: i32,
    pub quantities: Vec<f64>,
    pub prices: Vec<f64>,
    pub wage: f64,
    pub nominal_gdp: f64,
}

impl YearRecord {
    pub fn new(year: i32, quantities: Vec<f64>, prices: Vec<f64>, wage: f64) -> Result<Self> {
        if quantities.len() != prices.len() {
            return Err(Error::MismatchedSectors {
                left: quantities.len(),
                right: prices.len(),
            });
        }
        let nominal_gdp = dot(&quantities, &prices);
        Ok(YearRecord {
            year,
            quantities,
            prices,
            wage,
            nominal_gdp,
        })
    }

    pub fn from_state(year: i32, state: &EquilibriumState) -> Self {
        YearRecord {
            year,
            quantities: state.output.clone(),
            prices: state.price.clone(),
            wage: state.wage,
            nominal_gdp: state.nominal_gdp,
        }
    }

    pub fn sector_count(&self) -> usize {
        self.quantities.len()
    }
}

/// How the price base for a year's real growth is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum BasePolicy {
    /// Previous year's prices.
    Chained,
    /// Prices of one fixed year.
    FixedBase(i32),
    /// Prices of the year `lag` years before the measured year.
    LaggedBase(u32),
}

impl BasePolicy {
    /// The base year used to measure growth of `year`.
    pub fn base_year(&self, year: i32) -> Result<i32> {
        match *self {
            BasePolicy::Chained => Ok(year - 1),
            BasePolicy::FixedBase(j) => Ok(j),
            BasePolicy::LaggedBase(0) => Err(Error::InvalidPolicy("lag must be at least 1".into())),
            BasePolicy::LaggedBase(k) => Ok(year - k as i32),
        }
    }
}

impl fmt::Display for BasePolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasePolicy::Chained => write!(f, "chained"),
            BasePolicy::FixedBase(j) => write!(f, "fixed:{j}"),
            BasePolicy::LaggedBase(k) => write!(f, "lagged:{k}"),
        }
    }
}

impl FromStr for BasePolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || {
            Error::InvalidPolicy(format!(
                "'{s}' (expected chained, fixed:<year> or lagged:<k>)"
            ))
        };
        match s.split_once(':') {
            None if s.eq_ignore_ascii_case("chained") => Ok(BasePolicy::Chained),
            Some((kind, arg)) if kind.eq_ignore_ascii_case("fixed") => arg
                .trim()
                .parse()
                .map(BasePolicy::FixedBase)
                .map_err(|_| bad()),
            Some((kind, arg)) if kind.eq_ignore_ascii_case("lagged") => {
                let k: u32 = arg.trim().parse().map_err(|_| bad())?;
                if k == 0 {
                    return Err(Error::InvalidPolicy("lag must be at least 1".into()));
                }
                Ok(BasePolicy::LaggedBase(k))
            }
            _ => Err(bad()),
        }
    }
}

impl TryFrom<String> for BasePolicy {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<BasePolicy> for String {
    fn from(p: BasePolicy) -> String {
        p.to_string()
    }
}

/// Year-by-year measured real growth under one policy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthSeries {
    pub policy: BasePolicy,
    pub entries: Vec<(i32, f64)>,
}

impl GrowthSeries {
    pub fn rates(&self) -> impl Iterator<Item = f64> + '_ {
        self.entries.iter().map(|&(_, g)| g)
    }

    pub fn last(&self) -> Option<(i32, f64)> {
        self.entries.last().copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn check_aligned(a: &[f64], b: &[f64]) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::MismatchedSectors {
            left: a.len(),
            right: b.len(),
        });
    }
    Ok(())
}

pub fn find_year(series: &[YearRecord], year: i32) -> Option<&YearRecord> {
    // Runs are contiguous in practice, so try direct indexing first.
    let first = series.first()?.year;
    let idx = usize::try_from(year - first).ok();
    match idx.and_then(|i| series.get(i)) {
        Some(r) if r.year == year => Some(r),
        _ => series.iter().find(|r| r.year == year),
    }
}

fn record(series: &[YearRecord], year: i32) -> Result<&YearRecord> {
    find_year(series, year).ok_or(Error::MissingYear(year))
}

pub fn nominal_gdp(record: &YearRecord) -> f64 {
    dot(&record.quantities, &record.prices)
}

/// `Σ_a Y_a^i P_a^j`.
pub fn gdp_at_base(quantities: &[f64], prices: &[f64]) -> Result<f64> {
    check_aligned(quantities, prices)?;
    Ok(dot(quantities, prices))
}

pub fn growth_rate(series: &[YearRecord], year: i32, policy: BasePolicy) -> Result<f64> {
    let cur = record(series, year)?;
    let prev = record(series, year - 1)?;
    let base_year = policy.base_year(year)?;
    let base = find_year(series, base_year).ok_or(Error::MissingBaseYear {
        year,
        base: base_year,
    })?;
    let now = gdp_at_base(&cur.quantities, &base.prices)?;
    let before = gdp_at_base(&prev.quantities, &base.prices)?;
    Ok(now / before - 1.0)
}

/// Growth for every year after the first; fails on the first unresolvable year.
pub fn growth_series(series: &[YearRecord], policy: BasePolicy) -> Result<GrowthSeries> {
    let entries = series
        .iter()
        .skip(1)
        .map(|r| growth_rate(series, r.year, policy).map(|g| (r.year, g)))
        .collect::<Result<_>>()?;
    Ok(GrowthSeries { policy, entries })
}

/// Like [`growth_series`] but drops years whose base year lies outside the run.
pub fn growth_series_resolvable(series: &[YearRecord], policy: BasePolicy) -> Result<GrowthSeries> {
    let mut entries = Vec::new();
    for r in series.iter().skip(1) {
        match growth_rate(series, r.year, policy) {
            Ok(g) => entries.push((r.year, g)),
            Err(Error::MissingBaseYear { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(GrowthSeries { policy, entries })
}

/// `Π (1 + g)`; 1 for an empty series.
pub fn cumulative_factor(gs: &GrowthSeries) -> f64 {
    gs.rates().map(|g| 1.0 + g).product()
}

/// `(Π (1 + g))^(1/n) - 1`; 0 for an empty series.
pub fn geometric_mean_growth(gs: &GrowthSeries) -> f64 {
    if gs.is_empty() {
        return 0.0;
    }
    // Sum of logs keeps long series away from overflow.
    let log_sum: f64 = gs.rates().map(f64::ln_1p).sum();
    (log_sum / gs.len() as f64).exp_m1()
}

/// Average growth expected when productivity scales by `scale` over `years`: `ln(S)/α`.
pub fn expected_log_growth(scale: f64, years: f64) -> Result<f64> {
    if !(scale > 0.0) || !(years > 0.0) {
        return Err(Error::Domain(format!(
            "scale {scale} and years {years} must both be positive"
        )));
    }
    Ok(scale.ln() / years)
}

/// `P_a^i / P_a^{i-1} - 1`.
pub fn sector_inflation(series: &[YearRecord], sector: usize, year: i32) -> Result<f64> {
    let cur = record(series, year)?;
    let prev = record(series, year - 1)?;
    if sector >= cur.sector_count() || sector >= prev.sector_count() {
        return Err(Error::Domain(format!("sector index {sector} out of range")));
    }
    Ok(cur.prices[sector] / prev.prices[sector] - 1.0)
}

/// Nominal GDP of year `i` over year-`i` quantities valued at year-`j` prices.
pub fn gdp_deflator(series: &[YearRecord], year: i32, reference_year: i32) -> Result<f64> {
    let cur = record(series, year)?;
    let base = record(series, reference_year)?;
    Ok(nominal_gdp(cur) / gdp_at_base(&cur.quantities, &base.prices)?)
}

pub fn laspeyres_quantity(prev: &YearRecord, cur: &YearRecord) -> Result<f64> {
    check_aligned(&prev.quantities, &cur.quantities)?;
    Ok(dot(&cur.quantities, &prev.prices) / dot(&prev.quantities, &prev.prices))
}

pub fn paasche_quantity(prev: &YearRecord, cur: &YearRecord) -> Result<f64> {
    check_aligned(&prev.quantities, &cur.quantities)?;
    Ok(dot(&cur.quantities, &cur.prices) / dot(&prev.quantities, &cur.prices))
}

pub fn fisher_quantity(prev: &YearRecord, cur: &YearRecord) -> Result<f64> {
    Ok((laspeyres_quantity(prev, cur)? * paasche_quantity(prev, cur)?).sqrt())
}

/// Two economies valued at one external price vector, year by year.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PriceComparison {
    pub years: Vec<i32>,
    pub gdp_a: Vec<f64>,
    pub gdp_b: Vec<f64>,
    /// `gdp_b / gdp_a` at the reference prices.
    pub ratio: Vec<f64>,
    /// First-year reference ratio carried forward with each country's own chained growth.
    pub extrapolated_ratio: Vec<f64>,
    /// `extrapolated_ratio / ratio - 1`: the space-time inconsistency.
    pub gap: Vec<f64>,
}

/// Compare two runs at a common reference price vector.
///
/// Each country's own (chained) accounts carry the first-year comparison
/// forward; re-measuring every year at the reference prices gives a second
/// answer. Their disagreement is reported as `gap`.
pub fn common_price_comparison(
    series_a: &[YearRecord],
    series_b: &[YearRecord],
    reference_prices: &[f64],
) -> Result<PriceComparison> {
    if series_a.len() != series_b.len() || series_a.is_empty() {
        return Err(Error::Domain(format!(
            "series lengths {} and {} cannot be aligned",
            series_a.len(),
            series_b.len()
        )));
    }
    let mut out = PriceComparison {
        years: Vec::with_capacity(series_a.len()),
        gdp_a: Vec::new(),
        gdp_b: Vec::new(),
        ratio: Vec::new(),
        extrapolated_ratio: Vec::new(),
        gap: Vec::new(),
    };
    let mut extrapolated = 0.0;
    for (idx, (ra, rb)) in series_a.iter().zip(series_b).enumerate() {
        if ra.year != rb.year {
            return Err(Error::Domain(format!(
                "record {idx} has years {} and {}",
                ra.year, rb.year
            )));
        }
        let ga = gdp_at_base(&ra.quantities, reference_prices)?;
        let gb = gdp_at_base(&rb.quantities, reference_prices)?;
        let ratio = gb / ga;
        if idx == 0 {
            extrapolated = ratio;
        } else {
            let growth_a = 1.0 + growth_rate(series_a, ra.year, BasePolicy::Chained)?;
            let growth_b = 1.0 + growth_rate(series_b, rb.year, BasePolicy::Chained)?;
            extrapolated *= growth_b / growth_a;
        }
        out.years.push(ra.year);
        out.gdp_a.push(ga);
        out.gdp_b.push(gb);
        out.ratio.push(ratio);
        out.extrapolated_ratio.push(extrapolated);
        out.gap.push(extrapolated / ratio - 1.0);
    }
    Ok(out)
}

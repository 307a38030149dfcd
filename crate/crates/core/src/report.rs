//! CSV emission/ingestion and static SVG charts.
//!
//! Floats are written with Rust's shortest round-trip formatting, so a
//! re-ingested file reproduces every value bit for bit.

use std::io::{Read, Write};

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::measurement::{
    fisher_quantity, laspeyres_quantity, paasche_quantity, sector_inflation, GrowthSeries,
    YearRecord,
};
use crate::paths::SimulationRun;

pub const RECORDS_HEADER: [&str; 9] = [
    "year",
    "sector",
    "T",
    "L",
    "N",
    "Y",
    "P",
    "W",
    "nominal_gdp",
];
pub const GROWTH_HEADER: [&str; 3] = ["year", "policy", "g"];

fn csv_err(e: impl std::fmt::Display) -> Error {
    Error::config("csv", e.to_string())
}

fn write_rows<W: Write>(
    out: W,
    header: &[&str],
    rows: impl IntoIterator<Item = Vec<String>>,
) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header).map_err(csv_err)?;
    for row in rows {
        w.write_record(&row).map_err(csv_err)?;
    }
    w.flush().map_err(csv_err)
}

fn to_string(f: impl FnOnce(&mut Vec<u8>) -> Result<()>) -> Result<String> {
    let mut buf = Vec::new();
    f(&mut buf)?;
    String::from_utf8(buf).map_err(csv_err)
}

/// One row per sector-year: `year,sector,T,L,N,Y,P,W,nominal_gdp`.
pub fn records_csv(run: &SimulationRun) -> Result<String> {
    let names = run.sector_names();
    let rows = run
        .records
        .iter()
        .zip(&run.states)
        .zip(&run.techs)
        .flat_map(|((rec, st), techs)| {
            names.iter().enumerate().map(move |(a, name)| {
                vec![
                    rec.year.to_string(),
                    name.to_string(),
                    techs[a].to_string(),
                    st.labor[a].to_string(),
                    st.capital_units[a].to_string(),
                    st.output[a].to_string(),
                    st.price[a].to_string(),
                    rec.wage.to_string(),
                    rec.nominal_gdp.to_string(),
                ]
            })
        });
    to_string(|buf| write_rows(buf, &RECORDS_HEADER, rows))
}

pub fn growth_csv(series: &[GrowthSeries]) -> Result<String> {
    let rows = series.iter().flat_map(|gs| {
        gs.entries
            .iter()
            .map(move |(year, g)| vec![year.to_string(), gs.policy.to_string(), g.to_string()])
    });
    to_string(|buf| write_rows(buf, &GROWTH_HEADER, rows))
}

pub fn labor_shares_csv(run: &SimulationRun) -> Result<String> {
    let names = run.sector_names();
    let rows = run.records.iter().zip(&run.states).flat_map(|(rec, st)| {
        let shares = st.labor_shares();
        names
            .iter()
            .zip(shares)
            .map(|(n, s)| vec![rec.year.to_string(), n.to_string(), s.to_string()])
            .collect::<Vec<_>>()
    });
    to_string(|buf| write_rows(buf, &["year", "sector", "share"], rows))
}

pub fn inflation_csv(run: &SimulationRun) -> Result<String> {
    let names = run.sector_names();
    let mut rows = Vec::new();
    for rec in run.records.iter().skip(1) {
        for (a, n) in names.iter().enumerate() {
            let r = sector_inflation(&run.records, a, rec.year)?;
            rows.push(vec![rec.year.to_string(), n.to_string(), r.to_string()]);
        }
    }
    to_string(|buf| write_rows(buf, &["year", "sector", "inflation"], rows))
}

pub fn indices_csv(run: &SimulationRun) -> Result<String> {
    let mut rows = Vec::new();
    for w in run.records.windows(2) {
        rows.push(vec![
            w[1].year.to_string(),
            laspeyres_quantity(&w[0], &w[1])?.to_string(),
            paasche_quantity(&w[0], &w[1])?.to_string(),
            fisher_quantity(&w[0], &w[1])?.to_string(),
        ]);
    }
    to_string(|buf| write_rows(buf, &["year", "laspeyres", "paasche", "fisher"], rows))
}

#[derive(Debug, Deserialize)]
struct RecordRow {
    year: i32,
    sector: String,
    #[serde(rename = "T")]
    _tech: f64,
    #[serde(rename = "L")]
    _labor: f64,
    #[serde(rename = "N")]
    _capital: f64,
    #[serde(rename = "Y")]
    output: f64,
    #[serde(rename = "P")]
    price: f64,
    #[serde(rename = "W")]
    wage: f64,
    nominal_gdp: f64,
}

struct PendingYear {
    year: i32,
    names: Vec<String>,
    quantities: Vec<f64>,
    prices: Vec<f64>,
    wage: f64,
    nominal_gdp: f64,
}

impl PendingYear {
    fn start(row: RecordRow) -> Self {
        PendingYear {
            year: row.year,
            names: vec![row.sector],
            quantities: vec![row.output],
            prices: vec![row.price],
            wage: row.wage,
            nominal_gdp: row.nominal_gdp,
        }
    }

    fn finish(self, sectors: &mut Vec<String>, records: &mut Vec<YearRecord>) -> Result<()> {
        let year = self.year;
        if sectors.is_empty() {
            *sectors = self.names;
        } else if *sectors != self.names {
            return Err(Error::config(
                format!("records.csv year {year}"),
                "sector set differs from the first year",
            ));
        }
        let rec = YearRecord::new(year, self.quantities, self.prices, self.wage)?;
        let gdp = self.nominal_gdp;
        if ((rec.nominal_gdp - gdp) / gdp).abs() > 1e-9 {
            return Err(Error::config(
                format!("records.csv year {year}"),
                format!(
                    "nominal_gdp {gdp} disagrees with Σ Y P = {}",
                    rec.nominal_gdp
                ),
            ));
        }
        records.push(rec);
        Ok(())
    }
}

/// Parse a records CSV back into sector names and year records.
pub fn read_records_csv<R: Read>(input: R) -> Result<(Vec<String>, Vec<YearRecord>)> {
    let mut reader = csv::Reader::from_reader(input);
    let mut sectors = Vec::new();
    let mut records = Vec::new();
    let mut pending: Option<PendingYear> = None;
    for (line, row) in reader.deserialize::<RecordRow>().enumerate() {
        let row: RecordRow =
            row.map_err(|e| Error::config(format!("records.csv row {}", line + 2), e.to_string()))?;
        match pending.as_mut() {
            Some(p) if p.year == row.year => {
                p.names.push(row.sector);
                p.quantities.push(row.output);
                p.prices.push(row.price);
            }
            _ => {
                if let Some(done) = pending.replace(PendingYear::start(row)) {
                    done.finish(&mut sectors, &mut records)?;
                }
            }
        }
    }
    if let Some(done) = pending {
        done.finish(&mut sectors, &mut records)?;
    }
    Ok((sectors, records))
}

/// Minimal static line chart.
pub fn svg_line_chart(title: &str, y_label: &str, series: &[(String, Vec<(f64, f64)>)]) -> String {
    const W: f64 = 720.0;
    const H: f64 = 420.0;
    const PAD: f64 = 56.0;
    const COLORS: [&str; 6] = [
        "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b",
    ];

    let points = series.iter().flat_map(|(_, p)| p.iter());
    let (mut x0, mut x1, mut y0, mut y1) = (
        f64::INFINITY,
        f64::NEG_INFINITY,
        f64::INFINITY,
        f64::NEG_INFINITY,
    );
    for &(x, y) in points {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if !x0.is_finite() {
        (x0, x1, y0, y1) = (0.0, 1.0, 0.0, 1.0);
    }
    if x1 == x0 {
        x1 = x0 + 1.0;
    }
    if y1 == y0 {
        y1 = y0 + 1.0;
    }
    let sx = |x: f64| PAD + (x - x0) / (x1 - x0) * (W - 2.0 * PAD);
    let sy = |y: f64| H - PAD - (y - y0) / (y1 - y0) * (H - 2.0 * PAD);

    let mut svg = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{H}\" font-family=\"sans-serif\" font-size=\"12\">\n\
         <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n\
         <text x=\"{}\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">{}</text>\n",
        W / 2.0,
        escape(title)
    );
    svg += &format!(
        "<line x1=\"{PAD}\" y1=\"{b}\" x2=\"{r}\" y2=\"{b}\" stroke=\"black\"/>\n\
         <line x1=\"{PAD}\" y1=\"{PAD}\" x2=\"{PAD}\" y2=\"{b}\" stroke=\"black\"/>\n",
        b = H - PAD,
        r = W - PAD
    );
    for k in 0..=4 {
        let fy = y0 + (y1 - y0) * f64::from(k) / 4.0;
        let fx = x0 + (x1 - x0) * f64::from(k) / 4.0;
        svg += &format!(
            "<text x=\"{}\" y=\"{:.1}\" text-anchor=\"end\">{}</text>\n<text x=\"{:.1}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n",
            PAD - 6.0,
            sy(fy) + 4.0,
            fmt_tick(fy),
            sx(fx),
            H - PAD + 18.0,
            fmt_tick(fx)
        );
    }
    svg += &format!(
        "<text x=\"16\" y=\"{}\" transform=\"rotate(-90 16 {})\" text-anchor=\"middle\">{}</text>\n",
        H / 2.0,
        H / 2.0,
        escape(y_label)
    );
    for (i, (name, pts)) in series.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let path: Vec<String> = pts
            .iter()
            .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
            .collect();
        svg += &format!(
            "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\" points=\"{}\"/>\n",
            path.join(" ")
        );
        let ly = PAD + 16.0 * i as f64;
        svg += &format!(
            "<line x1=\"{}\" y1=\"{ly}\" x2=\"{}\" y2=\"{ly}\" stroke=\"{color}\" stroke-width=\"2\"/><text x=\"{}\" y=\"{}\">{}</text>\n",
            W - PAD - 150.0,
            W - PAD - 130.0,
            W - PAD - 124.0,
            ly + 4.0,
            escape(name)
        );
    }
    svg += "</svg>\n";
    svg
}

fn fmt_tick(v: f64) -> String {
    if v.abs() >= 1000.0 || v == v.trunc() {
        format!("{v:.0}")
    } else {
        format!("{v:.3}")
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

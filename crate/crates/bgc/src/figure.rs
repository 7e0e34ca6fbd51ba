//! Data series behind the capacity-bound figures.

use std::fmt;
use std::str::FromStr;

use bgc_core::bounds::{bounds_additive, bounds_amplifier, bounds_attenuator, BoundName, BoundReport, DEFAULT_GRID};
use rayon::prelude::*;

use crate::format::{cell, sig, text_cell, CsvDoc};
use crate::CliError;

pub const ARTIFACT_VERSION: &str = env!("CARGO_PKG_VERSION");
/// Largest grid accepted, to catch typos such as a zero step.
pub const MAX_POINTS: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FigureId {
    /// Additive noise against `1/beta`.
    Fig1,
    /// Thermal amplifier against the gain.
    Fig2,
    /// Thermal attenuator against the transmissivity, with ratios to the lower bound.
    Fig3,
    /// `Fig3` with the data-processing decomposition folded into `combined`.
    Fig3Inset,
}

impl FigureId {
    pub const ALL: [FigureId; 4] = [FigureId::Fig1, FigureId::Fig2, FigureId::Fig3, FigureId::Fig3Inset];

    pub fn as_str(self) -> &'static str {
        match self {
            FigureId::Fig1 => "fig1",
            FigureId::Fig2 => "fig2",
            FigureId::Fig3 => "fig3",
            FigureId::Fig3Inset => "fig3-inset",
        }
    }
}

impl fmt::Display for FigureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FigureId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FigureId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| format!("unknown figure '{s}' (expected fig1, fig2, fig3 or fig3-inset)"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Grid {
    /// `from, from + step, ...` up to `to` inclusive.
    Linear { from: f64, to: f64, step: f64 },
    /// `points` values evenly spaced in `log` between `from` and `to`.
    Log { from: f64, to: f64, points: usize },
}

impl Grid {
    pub fn points(&self) -> Result<Vec<f64>, CliError> {
        match *self {
            Grid::Linear { from, to, step } => {
                if !(from.is_finite() && to.is_finite() && step.is_finite()) || !(step > 0.0) || to < from {
                    return Err(CliError::Grid(format!(
                        "linear grid needs finite from <= to and step > 0 (got {from}, {to}, {step})"
                    )));
                }
                // tolerate rounding in (to - from) / step
                let count = ((to - from) / step + 1e-9).floor() + 1.0;
                if count > MAX_POINTS as f64 {
                    return Err(CliError::Grid(format!("grid has more than {MAX_POINTS} points")));
                }
                Ok((0..count as usize).map(|i| from + i as f64 * step).collect())
            }
            Grid::Log { from, to, points } => {
                if !(from > 0.0 && to > from && to.is_finite()) || !(2..=MAX_POINTS).contains(&points) {
                    return Err(CliError::Grid(format!(
                        "log grid needs 0 < from < to and 2..={MAX_POINTS} points (got {from}, {to}, {points})"
                    )));
                }
                let (a, b) = (from.ln(), to.ln());
                Ok((0..points)
                    .map(|i| match i {
                        0 => from,
                        i if i == points - 1 => to,
                        i => (a + (b - a) * i as f64 / (points - 1) as f64).exp(),
                    })
                    .collect())
            }
        }
    }

    fn describe(&self) -> String {
        match *self {
            Grid::Linear { from, to, step } => format!("linear from={} to={} step={}", sig(from), sig(to), sig(step)),
            Grid::Log { from, to, points } => format!("log from={} to={} points={points}", sig(from), sig(to)),
        }
    }
}

/// What to compute for a figure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FigureSpec {
    pub id: FigureId,
    /// Over `1/beta` (fig1), `g - 1` (fig2) or `eta` (fig3, fig3-inset).
    pub grid: Grid,
    /// Bath photons (fig2, fig3, fig3-inset).
    pub n: f64,
    /// Resolution of the decomposition search (fig3-inset).
    pub decomposition_grid: usize,
}

impl FigureSpec {
    pub fn default_for(id: FigureId) -> Self {
        let (grid, n) = match id {
            FigureId::Fig1 => (
                Grid::Linear {
                    from: 0.02,
                    to: 0.7,
                    step: 0.005,
                },
                0.0,
            ),
            FigureId::Fig2 => (
                Grid::Log {
                    from: 1e-4,
                    to: 0.2,
                    points: 200,
                },
                10.0,
            ),
            FigureId::Fig3 | FigureId::Fig3Inset => (
                Grid::Linear {
                    from: 0.55,
                    to: 0.995,
                    step: 0.0025,
                },
                0.05,
            ),
        };
        FigureSpec {
            id,
            grid,
            n,
            decomposition_grid: DEFAULT_GRID,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Column {
    pub name: String,
    /// `None` where the entry is inapplicable.
    pub values: Vec<Option<f64>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TextColumn {
    pub name: String,
    pub values: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FigureSeries {
    pub id: FigureId,
    pub x_name: &'static str,
    pub x: Vec<f64>,
    /// Clamped bound values named as in the bound reports, then derived columns.
    pub columns: Vec<Column>,
    pub text_columns: Vec<TextColumn>,
    pub metadata: Vec<(String, String)>,
}

impl FigureSeries {
    pub fn column(&self, name: &str) -> Option<&Column> {
        self.columns.iter().find(|c| c.name == name)
    }

    pub fn to_csv(&self) -> CsvDoc {
        let mut header = vec![self.x_name.to_string()];
        header.extend(self.columns.iter().map(|c| c.name.clone()));
        header.extend(self.text_columns.iter().map(|c| c.name.clone()));
        let rows = (0..self.x.len())
            .map(|i| {
                let mut row = vec![sig(self.x[i])];
                row.extend(self.columns.iter().map(|c| cell(c.values[i])));
                row.extend(self.text_columns.iter().map(|c| text_cell(&c.values[i])));
                row
            })
            .collect();
        CsvDoc {
            metadata: self.metadata.clone(),
            header,
            rows,
        }
    }
}

/// Per-point values; `names` are identical across points of one figure.
struct Point {
    names: Vec<String>,
    values: Vec<Option<f64>>,
    text: Vec<(String, String)>,
}

/// `leading` columns, then the report's clamped entries, then `trailing`.
fn report_point(
    report: &BoundReport,
    leading: Vec<(String, Option<f64>)>,
    trailing: Vec<(String, Option<f64>)>,
) -> Point {
    let (mut names, mut values): (Vec<String>, Vec<Option<f64>>) = leading.into_iter().unzip();
    for e in report.entries() {
        names.push(e.name.as_str().to_string());
        values.push(e.clamped());
    }
    for (n, v) in trailing {
        names.push(n);
        values.push(v);
    }
    Point {
        names,
        values,
        text: Vec::new(),
    }
}

fn with_ratios(mut p: Point, report: &BoundReport) -> Point {
    let lower = report.lower();
    for e in report.entries().iter().filter(|e| e.name.is_upper()) {
        p.names.push(format!("{}/lower", e.name.as_str()));
        p.values.push(e.clamped().filter(|_| lower > 0.0).map(|u| u / lower));
    }
    p
}

fn compute_point(spec: &FigureSpec, x: f64) -> Result<Point, CliError> {
    Ok(match spec.id {
        FigureId::Fig1 => {
            let beta = 1.0 / x;
            report_point(&bounds_additive(beta)?, vec![("beta".into(), Some(beta))], Vec::new())
        }
        FigureId::Fig2 => {
            let g = 1.0 + x;
            let extra = vec![
                ("g_minus_1".into(), Some(x)),
                ("beta_tilde".into(), (spec.n > 0.0).then(|| 1.0 / (x * spec.n))),
            ];
            report_point(&bounds_amplifier(g, spec.n)?, extra, Vec::new())
        }
        FigureId::Fig3 => {
            let r = bounds_attenuator(x, spec.n)?;
            with_ratios(report_point(&r, Vec::new(), Vec::new()), &r)
        }
        FigureId::Fig3Inset => {
            let r = bounds_attenuator(x, spec.n)?.with_decomposition(spec.decomposition_grid)?;
            let d = r.decomposition().expect("decomposition was requested");
            let w = &d.witness;
            let extra = vec![
                ("decomposition".into(), Some(d.value)),
                ("witness_tau1".into(), w.second.map(|_| w.first.tau())),
                ("witness_tau2".into(), w.second.map(|s| s.tau())),
            ];
            let mut p = with_ratios(report_point(&r, Vec::new(), extra), &r);
            p.text.push(("witness".into(), w.form.as_str().to_string()));
            p
        }
    })
}

/// Computes a figure; grid points are evaluated in parallel and gathered in grid order.
pub fn build_figure(spec: &FigureSpec) -> Result<FigureSeries, CliError> {
    let grid = spec.grid.points()?;
    let points: Vec<Point> = grid
        .par_iter()
        .map(|&x| compute_point(spec, x))
        .collect::<Result<_, _>>()?;

    let mut columns: Vec<Column> = points
        .first()
        .map(|p| {
            p.names
                .iter()
                .map(|n| Column {
                    name: n.clone(),
                    values: Vec::with_capacity(points.len()),
                })
                .collect()
        })
        .unwrap_or_default();
    let mut text_columns: Vec<TextColumn> = points
        .first()
        .map(|p| {
            p.text
                .iter()
                .map(|(n, _)| TextColumn {
                    name: n.clone(),
                    values: Vec::with_capacity(points.len()),
                })
                .collect()
        })
        .unwrap_or_default();
    for p in points {
        debug_assert_eq!(p.names.len(), columns.len());
        for (c, v) in columns.iter_mut().zip(p.values) {
            c.values.push(v);
        }
        for (c, (_, v)) in text_columns.iter_mut().zip(p.text) {
            c.values.push(v);
        }
    }

    let (x_name, x) = match spec.id {
        FigureId::Fig1 => ("inv_beta", grid),
        FigureId::Fig2 => ("g", grid.iter().map(|t| 1.0 + t).collect()),
        FigureId::Fig3 | FigureId::Fig3Inset => ("eta", grid),
    };
    let mut metadata = vec![
        ("figure".to_string(), spec.id.to_string()),
        ("x".to_string(), x_name.to_string()),
        ("grid".to_string(), spec.grid.describe()),
        ("points".to_string(), x.len().to_string()),
    ];
    match spec.id {
        FigureId::Fig1 => metadata.push(("channel".into(), "additive noise".into())),
        FigureId::Fig2 => {
            metadata.push(("channel".into(), "thermal amplifier; grid is over g - 1".into()));
            metadata.push(("N".into(), sig(spec.n)));
        }
        FigureId::Fig3 | FigureId::Fig3Inset => {
            metadata.push(("channel".into(), "thermal attenuator".into()));
            metadata.push(("N".into(), sig(spec.n)));
        }
    }
    if spec.id == FigureId::Fig3Inset {
        metadata.push(("decomposition_grid".into(), spec.decomposition_grid.to_string()));
    }
    metadata.push((
        "values".into(),
        "bits, clamped at 0; empty cells are inapplicable".into(),
    ));
    metadata.push(("version".into(), ARTIFACT_VERSION.to_string()));
    metadata.push(("seed".into(), "none".into()));

    Ok(FigureSeries {
        id: spec.id,
        x_name,
        x,
        columns,
        text_columns,
        metadata,
    })
}

/// Names of the upper-bound columns of a series, excluding derived ones.
pub fn upper_bound_columns(series: &FigureSeries) -> Vec<&Column> {
    let uppers = [
        BoundName::Plob,
        BoundName::AmPlob,
        BoundName::Naj,
        BoundName::Rosati,
        BoundName::Extension,
        BoundName::Combined,
    ];
    series
        .columns
        .iter()
        .filter(|c| c.name == "decomposition" || uppers.iter().any(|u| u.as_str() == c.name))
        .collect()
}

/// Standalone matplotlib script plotting every bound column of `csv_name`.
pub fn plot_script(series: &FigureSeries, csv_name: &str) -> String {
    // attenuator figures plot ratios to the lower bound, the others plot bits
    let ratios = matches!(series.id, FigureId::Fig3 | FigureId::Fig3Inset);
    let skip: Vec<&str> = series
        .columns
        .iter()
        .map(|c| c.name.as_str())
        .filter(|n| n.ends_with("/lower") != ratios)
        .collect();
    let skip_list = skip.iter().map(|s| format!("{s:?}")).collect::<Vec<_>>().join(", ");
    format!(
        r##"# Plots {csv} (written by bgc figure {id}).
import csv
import matplotlib.pyplot as plt

with open({csv:?}) as f:
    rows = list(csv.reader(line for line in f if not line.startswith("#")))
header, data = rows[0], rows[1:]
skip = {{{skip}, "beta", "g_minus_1", "beta_tilde", "witness", "witness_tau1", "witness_tau2"}}
x = [float(r[0]) for r in data]
for j, name in enumerate(header[1:], start=1):
    if name in skip:
        continue
    pts = [(xi, float(r[j])) for xi, r in zip(x, data) if r[j] != ""]
    if pts:
        plt.plot(*zip(*pts), label=name)
plt.xlabel(header[0])
plt.legend()
plt.savefig({png:?})
"##,
        csv = csv_name,
        id = series.id,
        skip = skip_list,
        png = csv_name.trim_end_matches(".csv").to_string() + ".png",
    )
}

//! Serialisable views of bound reports and oracle estimates.

use bgc_core::bounds::{BoundReport, ChannelParams, CoherentInfoEstimate, DecompositionBound};
use bgc_core::channels::PhaseInsensitiveParams;
use serde::Serialize;

use crate::format::{cell, text_cell, CsvDoc};

#[derive(Debug, Clone, Serialize)]
pub struct ParamsJson {
    pub family: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<f64>,
}

impl From<&ChannelParams> for ParamsJson {
    fn from(p: &ChannelParams) -> Self {
        let mut out = ParamsJson {
            family: p.family_name(),
            beta: None,
            g: None,
            eta: None,
            n: None,
        };
        match *p {
            ChannelParams::Additive { beta } => out.beta = Some(beta),
            ChannelParams::Amplifier { g, n } => {
                out.g = Some(g);
                out.n = Some(n);
            }
            ChannelParams::Attenuator { eta, n } => {
                out.eta = Some(eta);
                out.n = Some(n);
            }
        }
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct EntryJson {
    pub name: &'static str,
    pub upper: bool,
    pub applicable: bool,
    pub raw: Option<f64>,
    pub clamped: Option<f64>,
    pub note: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct StageJson {
    pub tau: f64,
    pub y: f64,
    pub bound: f64,
}

fn stage(p: &PhaseInsensitiveParams, bound: f64) -> StageJson {
    StageJson {
        tau: p.tau(),
        y: p.y(),
        bound,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DecompositionJson {
    pub value: f64,
    pub form: &'static str,
    pub stages: Vec<StageJson>,
}

impl From<&DecompositionBound> for DecompositionJson {
    fn from(d: &DecompositionBound) -> Self {
        let w = &d.witness;
        let mut stages = vec![stage(&w.first, w.first_bound)];
        if let (Some(s), Some(b)) = (w.second, w.second_bound) {
            stages.push(stage(&s, b));
        }
        DecompositionJson {
            value: d.value,
            form: w.form.as_str(),
            stages,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundReportJson {
    pub parameters: ParamsJson,
    pub bounds: Vec<EntryJson>,
    /// Bits; bounds both the quantum and the private capacity.
    pub combined: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<DecompositionJson>,
}

impl From<&BoundReport> for BoundReportJson {
    fn from(r: &BoundReport) -> Self {
        BoundReportJson {
            parameters: (&r.params).into(),
            bounds: r
                .entries()
                .iter()
                .map(|e| EntryJson {
                    name: e.name.as_str(),
                    upper: e.name.is_upper(),
                    applicable: e.applicable(),
                    raw: e.raw,
                    clamped: e.clamped(),
                    note: e.note,
                })
                .collect(),
            combined: r.combined(),
            decomposition: r.decomposition().map(Into::into),
        }
    }
}

/// `name,upper,raw,clamped,note` rows with the parameters as metadata.
pub fn bound_report_csv(r: &BoundReport) -> CsvDoc {
    let p = ParamsJson::from(&r.params);
    let mut metadata = vec![("family".to_string(), p.family.to_string())];
    for (k, v) in [("beta", p.beta), ("g", p.g), ("eta", p.eta), ("N", p.n)] {
        if let Some(v) = v {
            metadata.push((k.to_string(), crate::format::sig(v)));
        }
    }
    if let Some(d) = r.decomposition() {
        metadata.push(("decomposition".to_string(), d.witness.form.as_str().to_string()));
    }
    CsvDoc {
        metadata,
        header: ["name", "upper", "raw", "clamped", "note"].map(String::from).to_vec(),
        rows: r
            .entries()
            .iter()
            .map(|e| {
                vec![
                    e.name.as_str().to_string(),
                    e.name.is_upper().to_string(),
                    cell(e.raw),
                    cell(e.clamped()),
                    text_cell(e.note),
                ]
            })
            .collect(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleJson {
    pub channel: String,
    pub strategy: &'static str,
    pub value: f64,
    pub mean_photons: f64,
    pub convergence_gap: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closed_form: Option<f64>,
}

impl OracleJson {
    pub fn new(channel: String, strategy: &'static str, e: &CoherentInfoEstimate, closed_form: Option<f64>) -> Self {
        OracleJson {
            channel,
            strategy,
            value: e.value,
            mean_photons: e.mean_photons,
            convergence_gap: e.convergence_gap,
            closed_form,
        }
    }
}

//! Exchange formats: ideal files, chart catalogs with manifests, JSON check
//! reports and CSV count tables.
//!
//! Ideal file grammar: a header line
//! `ring: v1,v2,...,pi ; order: grevlex|lex|block:k`, then one polynomial per
//! line in the polynomial text format; `#` starts a comment.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use anyhow::{anyhow, Context, Result};
use serde::{Deserialize, Serialize};

use ulm_core::model::ChartPresentation;
use ulm_core::poly::Polynomial;
use ulm_core::ring::{MonomialOrder, PolyRing};
use ulm_core::verify::{CheckReport, CheckStatus};
use ulm_core::Ideal;

/// Renders an ideal to the exchange text format.
pub fn ideal_to_text(ideal: &Ideal, comment: Option<&str>) -> String {
    let ring = ideal.ring();
    let mut out = String::new();
    if let Some(c) = comment {
        for line in c.lines() {
            let _ = writeln!(out, "# {line}");
        }
    }
    let _ = writeln!(
        out,
        "ring: {} ; order: {}",
        ring.vars().join(","),
        ring.order()
    );
    for (g, tag) in ideal.gens().iter().zip(ideal.provenance().iter()) {
        if !tag.is_empty() {
            let _ = writeln!(out, "# {tag}");
        }
        let _ = writeln!(out, "{}", g.to_text());
    }
    out
}

/// Parses the exchange text format back into an ideal.
pub fn ideal_from_text(text: &str) -> Result<Ideal> {
    let mut lines = text
        .lines()
        .map(|l| l.trim())
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines.next().ok_or_else(|| anyhow!("empty ideal file"))?;
    let rest = header
        .strip_prefix("ring:")
        .ok_or_else(|| anyhow!("missing ring header"))?;
    let (vars_part, order_part) = rest
        .split_once(';')
        .ok_or_else(|| anyhow!("missing order clause"))?;
    let order_str = order_part
        .trim()
        .strip_prefix("order:")
        .ok_or_else(|| anyhow!("missing order clause"))?
        .trim();
    let order = match order_str {
        "grevlex" => MonomialOrder::GrevLex,
        "lex" => MonomialOrder::Lex,
        other => {
            let k = other
                .strip_prefix("block:")
                .ok_or_else(|| anyhow!("unknown order {other}"))?
                .parse::<usize>()
                .context("block split index")?;
            MonomialOrder::Block(k)
        }
    };
    let vars: Vec<&str> = vars_part.split(',').map(|v| v.trim()).collect();
    let ring = PolyRing::new(&vars, order).map_err(|e| anyhow!("{e}"))?;
    let mut gens = Vec::new();
    for line in lines {
        gens.push(Polynomial::parse(&ring, line).map_err(|e| anyhow!("{e}: {line}"))?);
    }
    Ok(Ideal::new(&ring, gens))
}

/// Writes one chart as `{label}.ideal` in `dir` and appends its blocks and
/// substitutions to the manifest text.
pub fn export_chart(chart: &ChartPresentation, dir: &Path, manifest: &mut String) -> Result<String> {
    let label = chart.id.label(&chart.instance);
    let path = dir.join(format!("{label}.ideal"));
    let text = ideal_to_text(&chart.ideal(), Some(&label));
    fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
    let _ = writeln!(manifest, "[{label}]");
    let _ = writeln!(manifest, "case = {}", chart.instance.case.as_str());
    for (name, vars) in &chart.blocks {
        let _ = writeln!(manifest, "block.{name} = {}", vars.join(", "));
    }
    for (name, poly) in &chart.substitutions {
        let _ = writeln!(manifest, "subst.{name} = {}", poly.to_text());
    }
    let _ = writeln!(manifest);
    Ok(label)
}

// ---- JSON report schema ----

#[derive(Debug, Serialize, Deserialize)]
pub struct ReportFile {
    pub version: u32,
    pub instance: InstanceJson,
    pub config: ConfigJson,
    pub checks: Vec<CheckJson>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct InstanceJson {
    pub n: usize,
    pub k: usize,
    pub case: String,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ConfigJson {
    pub sign_variant: String,
    pub trace_variant: String,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CheckJson {
    pub id: String,
    pub chart: Option<String>,
    pub status: String,
    pub witness: Option<WitnessJson>,
    pub ms: u64,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct WitnessJson {
    pub generator: String,
    pub normal_form: String,
}

/// Assembles the stable JSON report body from check reports.
pub fn report_json(n: usize, k: usize, case: &str, reports: &[CheckReport]) -> Result<String> {
    let config = match reports.first() {
        Some(r) => ConfigJson {
            sign_variant: r.config.sign_str().to_string(),
            trace_variant: r.config.trace_str().to_string(),
        },
        None => ConfigJson {
            sign_variant: "sec33".to_string(),
            trace_variant: "two-pi".to_string(),
        },
    };
    let file = ReportFile {
        version: 1,
        instance: InstanceJson {
            n,
            k,
            case: case.to_string(),
        },
        config,
        checks: reports
            .iter()
            .map(|r| CheckJson {
                id: r.check_id.clone(),
                chart: r.chart.clone(),
                status: r.status.as_str().to_string(),
                witness: r.witness.as_ref().map(|(g, nf)| WitnessJson {
                    generator: g.clone(),
                    normal_form: nf.clone(),
                }),
                ms: r.duration_ms,
            })
            .collect(),
    };
    let mut body = serde_json::to_string_pretty(&file)?;
    body.push('\n');
    Ok(body)
}

/// Exit status of a report set: fail beats pass, a tripped guard beats fail.
pub fn aggregate_status(reports: &[CheckReport]) -> i32 {
    let mut code = 0;
    for r in reports {
        match r.status {
            CheckStatus::Pass => {}
            CheckStatus::Fail => {
                if code == 0 {
                    code = 1;
                }
            }
            CheckStatus::Guard => code = 3,
        }
    }
    code
}

// ---- CSV count tables ----

/// One row of the count table.
#[derive(Debug, Clone)]
pub struct CountRow {
    pub target: String,
    pub q: u64,
    pub m: usize,
    pub count: u64,
    pub component: String,
    pub ms: u64,
}

pub fn counts_csv(rows: &[CountRow]) -> String {
    let mut out = String::from("target,q,m,count,component,ms\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            r.target, r.q, r.m, r.count, r.component, r.ms
        );
    }
    out
}

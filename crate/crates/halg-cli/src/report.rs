//! Report emission: a versioned JSON document, a flat CSV residual
//! table, and a sidecar metadata file. Timestamps live only in the
//! sidecar so the report itself is byte-identical across reruns of the
//! same configuration.

use std::io::Write;
use std::path::Path;

use anyhow::Context;
use serde_json::json;

use crate::config::ScenarioConfig;
use crate::scenarios::ScenarioOutcome;

pub fn build_report(cfg: &ScenarioConfig, outcome: &ScenarioOutcome) -> serde_json::Value {
    json!({
        "schema": 1,
        "scenario": cfg.scenario.name(),
        "config": cfg,
        "pass": outcome.pass,
        "results": outcome.results,
    })
}

pub fn emit(cfg: &ScenarioConfig, outcome: &ScenarioOutcome) -> anyhow::Result<()> {
    let report = build_report(cfg, outcome);
    let text = format!("{}\n", serde_json::to_string_pretty(&report)?);
    match &cfg.out {
        None => {
            print!("{text}");
            std::io::stdout().flush()?;
        }
        Some(path) => {
            if let Some(parent) = path.parent() {
                if !parent.as_os_str().is_empty() {
                    std::fs::create_dir_all(parent)
                        .with_context(|| format!("cannot create {}", parent.display()))?;
                }
            }
            std::fs::write(path, &text)
                .with_context(|| format!("cannot write report {}", path.display()))?;
            std::fs::write(csv_path(path), render_csv(outcome))
                .with_context(|| "cannot write residual table")?;
            let meta = json!({
                "created_unix_ms": std::time::SystemTime::now()
                    .duration_since(std::time::UNIX_EPOCH)
                    .map(|d| d.as_millis() as u64)
                    .unwrap_or(0),
                "tool": "halg",
                "version": env!("CARGO_PKG_VERSION"),
            });
            std::fs::write(meta_path(path), format!("{}\n", serde_json::to_string_pretty(&meta)?))
                .with_context(|| "cannot write metadata sidecar")?;
        }
    }
    Ok(())
}

pub fn csv_path(report: &Path) -> std::path::PathBuf {
    report.with_extension("csv")
}

pub fn meta_path(report: &Path) -> std::path::PathBuf {
    report.with_extension("meta.json")
}

fn render_csv(outcome: &ScenarioOutcome) -> String {
    let mut out = String::from("check,index,value,threshold,status\n");
    for row in &outcome.csv_rows {
        out.push_str(&format!(
            "{},{},{:e},{:e},{}\n",
            row.check, row.index, row.value, row.threshold, row.status
        ));
    }
    out
}

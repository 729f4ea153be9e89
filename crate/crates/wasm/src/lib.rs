//! Browser bindings. Every entry point takes a JSON experiment document (the
//! same shape the CLI reads) and returns JSON.

use derivsim_core::config::ConfigDocument;
use derivsim_core::mc::{self, PathOutcome};
use derivsim_core::report::{self, GridMetric};
use derivsim_core::PricePath;
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Upper bound on replications per batch so a slider cannot hang the tab.
pub const MAX_REPLICATIONS: usize = 5_000;

fn load(config_json: &str) -> Result<(ConfigDocument, mc::ExperimentConfig), String> {
    let doc = ConfigDocument::from_json(config_json).map_err(|e| e.to_string())?;
    if doc.experiment.replications > MAX_REPLICATIONS {
        return Err(format!("replications capped at {MAX_REPLICATIONS} in the browser"));
    }
    let config = doc.experiment_config().map_err(|e| e.to_string())?;
    Ok((doc, config))
}

fn to_json<T: Serialize>(value: &T) -> Result<String, String> {
    serde_json::to_string(value).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct PathView<'a> {
    outcome: &'a PathOutcome,
    path: &'a PricePath,
    trace_csv: String,
}

pub fn simulate_path_json(config_json: &str, path_index: u64) -> Result<String, String> {
    let (_, config) = load(config_json)?;
    let result = mc::run_single(&config, path_index).map_err(|e| e.to_string())?;
    to_json(&PathView {
        outcome: &result.outcome,
        path: &result.path,
        trace_csv: report::trace_csv(&result.trace),
    })
}

#[derive(Serialize)]
struct GridView {
    csv: String,
    median_csv: String,
    svg: String,
    median_svg: String,
}

pub fn liquidation_grid_json(config_json: &str) -> Result<String, String> {
    let (doc, config) = load(config_json)?;
    let axes = &doc.experiment.grid;
    let grid = mc::grid_sweep(&config, &axes.sigmas, &axes.leverages).map_err(|e| e.to_string())?;
    let svg = |m| report::render_heatmap(&grid, m).map_err(|e| e.to_string());
    to_json(&GridView {
        csv: report::grid_csv(&grid, GridMetric::LiqProb),
        median_csv: report::grid_csv(&grid, GridMetric::MedianRpnl),
        svg: svg(GridMetric::LiqProb)?,
        median_svg: svg(GridMetric::MedianRpnl)?,
    })
}

#[derive(Serialize)]
struct TornadoView<'a> {
    result: &'a mc::TornadoResult,
    svg: String,
}

pub fn tornado_json(config_json: &str) -> Result<String, String> {
    let (doc, config) = load(config_json)?;
    let settings = &doc.experiment.tornado;
    let result = mc::tornado(&config, settings.shock, &settings.parameters).map_err(|e| e.to_string())?;
    let svg = report::render_tornado(&result).map_err(|e| e.to_string())?;
    to_json(&TornadoView { result: &result, svg })
}

#[wasm_bindgen]
pub fn simulate_path(config_json: &str, path_index: u32) -> Result<String, JsValue> {
    simulate_path_json(config_json, u64::from(path_index)).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn liquidation_grid(config_json: &str) -> Result<String, JsValue> {
    liquidation_grid_json(config_json).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn tornado(config_json: &str) -> Result<String, JsValue> {
    tornado_json(config_json).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn presets() -> String {
    serde_json::to_string(&derivsim_core::presets()).unwrap_or_default()
}

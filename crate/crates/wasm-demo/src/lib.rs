//! Browser bindings. Each export is a thin wrapper over a plain function of
//! the same name in [`view`], which native tests call directly.

use wasm_bindgen::prelude::*;

pub mod view;

pub use view::{DensityProfile, LemniscateView, ZeroView};

fn js(e: harmonic_zeros::Error) -> JsError {
    JsError::new(&e.to_string())
}

#[wasm_bindgen]
pub fn version() -> String {
    env!("CARGO_PKG_VERSION").to_string()
}

/// Radial Kac-Rice density on `points` radii in `[0, r_max]`.
#[wasm_bindgen(js_name = densityProfile)]
pub fn density_profile(
    n: usize,
    m: usize,
    r_max: f64,
    points: usize,
) -> Result<DensityProfile, JsError> {
    view::density_profile(n, m, r_max, points).map_err(js)
}

/// `{|p'| < |q'|}` for one truncated-model draw on the full-disk window.
#[wasm_bindgen(js_name = lemniscate)]
pub fn lemniscate(
    n: usize,
    m: usize,
    seed: u64,
    trial: u64,
    resolution: usize,
) -> Result<LemniscateView, JsError> {
    view::lemniscate(n, m, seed, trial, resolution).map_err(js)
}

/// Zeros of one truncated-model draw, with orientation.
#[wasm_bindgen(js_name = sampleZeros)]
pub fn sample_zeros(n: usize, m: usize, seed: u64, trial: u64) -> Result<ZeroView, JsError> {
    view::sample_zeros(n, m, seed, trial).map_err(js)
}

//! wasm-bindgen surface for the browser demo in `www/`.
//!
//! Every export is a thin shim over a plain Rust function so the logic can be
//! unit tested natively.

use duskify::pipeline::{transform, TransformOptions};
use duskify::samples::{chart_suite, stock_chart, SUITE_NAMES};
use duskify::{
    extract_palette, invert_image, mask_background, wcag_contrast_ratio, BackgroundSpec, PixelImage, RenderMode, Rgb8,
    SaConfig, Weights,
};
use wasm_bindgen::prelude::*;

fn parse_hex(s: &str) -> Result<Rgb8, String> {
    s.parse().map_err(|e: duskify::Error| e.to_string())
}

/// Parameters of a demo transform run, as sent from the page.
#[derive(Clone, Debug)]
pub struct DemoParams {
    pub light_bg: String,
    pub dark_bg: String,
    pub k: usize,
    pub weights: [f64; 3],
    pub iterations: usize,
    pub seed: u64,
    pub residual: bool,
}

impl DemoParams {
    fn options(&self) -> Result<TransformOptions, String> {
        let options = TransformOptions {
            background: BackgroundSpec::new(parse_hex(&self.light_bg)?, parse_hex(&self.dark_bg)?),
            k: self.k,
            weights: Weights::new(self.weights[0], self.weights[1], self.weights[2]),
            annealing: SaConfig {
                iterations: self.iterations,
                seed: self.seed,
                ..SaConfig::default()
            },
            mode: if self.residual { RenderMode::Residual } else { RenderMode::Quantize },
        };
        options.validate().map_err(|e| e.to_string())?;
        Ok(options)
    }
}

/// Runs the transform on RGBA bytes, returning RGBA bytes and the JSON report.
pub fn run_transform(rgba: &[u8], width: usize, height: usize, params: &DemoParams) -> Result<(Vec<u8>, String), String> {
    let options = params.options()?;
    let image = PixelImage::from_rgba_bytes(width, height, rgba, options.background.light_bg).map_err(|e| e.to_string())?;
    let result = transform(&image, &options).map_err(|e| e.to_string())?;
    Ok((result.image.to_rgba_bytes(), result.report(&options).to_json()))
}

/// Extracted palette as JSON: colors, counts and adjacency.
pub fn run_extract(rgba: &[u8], width: usize, height: usize, light_bg: &str, k: usize, seed: u64) -> Result<String, String> {
    let light_bg = parse_hex(light_bg)?;
    let image = PixelImage::from_rgba_bytes(width, height, rgba, light_bg).map_err(|e| e.to_string())?;
    let bg = BackgroundSpec::new(light_bg, Rgb8::BLACK);
    let mask = mask_background(&image, &bg).map_err(|e| e.to_string())?;
    let palette = extract_palette(&image, &mask, k, seed).map_err(|e| e.to_string())?;
    let value = serde_json::json!({
        "requested_k": palette.requested_k,
        "k": palette.k(),
        "colors": palette.centroids,
        "counts": palette.counts,
        "adjacency": palette.adjacency.iter().map(|&(i, j)| [i, j]).collect::<Vec<_>>(),
    });
    Ok(value.to_string())
}

pub fn run_invert(rgba: &[u8], width: usize, height: usize) -> Result<Vec<u8>, String> {
    let image = PixelImage::from_rgba_bytes(width, height, rgba, Rgb8::WHITE).map_err(|e| e.to_string())?;
    Ok(invert_image(&image).to_rgba_bytes())
}

pub fn run_contrast(a: &str, b: &str) -> Result<f64, String> {
    Ok(wcag_contrast_ratio(parse_hex(a)?, parse_hex(b)?))
}

/// Names accepted by [`run_sample`].
pub fn sample_names() -> Vec<String> {
    let mut names: Vec<String> = SUITE_NAMES.iter().map(|n| n.to_string()).collect();
    names.push("stock".into());
    names
}

/// A built-in chart as RGBA bytes plus its suggested k.
pub fn run_sample(name: &str, width: usize, height: usize) -> Result<(Vec<u8>, usize), String> {
    if width < 120 || height < 90 {
        return Err("sample charts need at least 120x90 pixels".into());
    }
    if name == "stock" {
        return Ok((stock_chart(width, height, 30, 11).to_rgba_bytes(), 3));
    }
    chart_suite(width, height)
        .into_iter()
        .find(|c| c.name == name)
        .map(|c| (c.image.to_rgba_bytes(), c.k))
        .ok_or_else(|| format!("unknown sample {name:?}"))
}

#[wasm_bindgen]
pub struct TransformResult {
    pixels: Vec<u8>,
    report: String,
}

#[wasm_bindgen]
impl TransformResult {
    /// Output image as RGBA bytes.
    #[wasm_bindgen(getter)]
    pub fn pixels(&self) -> Vec<u8> {
        self.pixels.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn report(&self) -> String {
        self.report.clone()
    }
}

#[allow(clippy::too_many_arguments)]
#[wasm_bindgen]
pub fn transform_rgba(
    rgba: &[u8],
    width: u32,
    height: u32,
    light_bg: &str,
    dark_bg: &str,
    k: u32,
    w_lc: f64,
    w_cc: f64,
    w_ac: f64,
    iterations: u32,
    seed: u32,
    residual: bool,
) -> Result<TransformResult, JsValue> {
    let params = DemoParams {
        light_bg: light_bg.to_string(),
        dark_bg: dark_bg.to_string(),
        k: k as usize,
        weights: [w_lc, w_cc, w_ac],
        iterations: iterations as usize,
        seed: seed as u64,
        residual,
    };
    let (pixels, report) = run_transform(rgba, width as usize, height as usize, &params).map_err(|e| JsValue::from_str(&e))?;
    Ok(TransformResult { pixels, report })
}

#[wasm_bindgen]
pub fn extract_palette_json(rgba: &[u8], width: u32, height: u32, light_bg: &str, k: u32, seed: u32) -> Result<String, JsValue> {
    run_extract(rgba, width as usize, height as usize, light_bg, k as usize, seed as u64).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn invert_rgba(rgba: &[u8], width: u32, height: u32) -> Result<Vec<u8>, JsValue> {
    run_invert(rgba, width as usize, height as usize).map_err(|e| JsValue::from_str(&e))
}

/// Comma-separated sample chart names.
#[wasm_bindgen]
pub fn sample_chart_names() -> String {
    sample_names().join(",")
}

#[wasm_bindgen]
pub struct SampleChart {
    pixels: Vec<u8>,
    k: u32,
}

#[wasm_bindgen]
impl SampleChart {
    #[wasm_bindgen(getter)]
    pub fn pixels(&self) -> Vec<u8> {
        self.pixels.clone()
    }

    /// Suggested cluster count.
    #[wasm_bindgen(getter)]
    pub fn k(&self) -> u32 {
        self.k
    }
}

#[wasm_bindgen]
pub fn sample_chart(name: &str, width: u32, height: u32) -> Result<SampleChart, JsValue> {
    let (pixels, k) = run_sample(name, width as usize, height as usize).map_err(|e| JsValue::from_str(&e))?;
    Ok(SampleChart { pixels, k: k as u32 })
}

#[wasm_bindgen]
pub fn contrast_ratio(a: &str, b: &str) -> Result<f64, JsValue> {
    run_contrast(a, b).map_err(|e| JsValue::from_str(&e))
}

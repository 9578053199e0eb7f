//! End-to-end transform: mask, extract, anneal, render, measure.

use serde::{Deserialize, Serialize};

use crate::color::{LchColor, Rgb8};
use crate::error::Result;
use crate::evaluate::{evaluate_conditions, ConditionMetrics, PerCondition};
use crate::image::PixelImage;
use crate::optimize::{anneal_with_progress, AnnealOutcome, EnergyComponents, Objective, Progress, SaConfig, Weights};
use crate::palette::{extract_palette, mask_background, BackgroundSpec, ExtractedPalette, ForegroundMask};
use crate::recolor::{apply_palette, RenderMode};

pub const DEFAULT_K: usize = 8;
/// Schema version of [`TransformReport`].
pub const TRANSFORM_REPORT_VERSION: u32 = 1;
/// Stride of the energy trace kept in reports.
pub const TRACE_STRIDE: usize = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TransformOptions {
    pub background: BackgroundSpec,
    pub k: usize,
    pub weights: Weights,
    /// Annealing schedule; its seed also drives k-means seeding.
    pub annealing: SaConfig,
    pub mode: RenderMode,
}

impl Default for TransformOptions {
    fn default() -> Self {
        Self {
            background: BackgroundSpec::default(),
            k: DEFAULT_K,
            weights: Weights::default(),
            annealing: SaConfig::default(),
            mode: RenderMode::default(),
        }
    }
}

impl TransformOptions {
    pub fn validate(&self) -> Result<()> {
        self.background.validate()?;
        self.weights.validate()?;
        self.annealing.validate()?;
        if self.k == 0 {
            return Err(crate::error::Error::InvalidK);
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct Transformed {
    pub mask: ForegroundMask,
    pub palette: ExtractedPalette,
    pub outcome: AnnealOutcome,
    pub dark_colors: Vec<Rgb8>,
    pub image: PixelImage,
    pub metrics: PerCondition<ConditionMetrics>,
    pub initial_components: EnergyComponents,
    pub final_components: EnergyComponents,
}

pub fn transform(image: &PixelImage, options: &TransformOptions) -> Result<Transformed> {
    transform_with_progress(image, options, 0, |_| {})
}

pub fn transform_with_progress(
    image: &PixelImage,
    options: &TransformOptions,
    every: usize,
    on_progress: impl FnMut(Progress),
) -> Result<Transformed> {
    options.validate()?;
    let bg = &options.background;
    let mask = mask_background(image, bg)?;
    let palette = extract_palette(image, &mask, options.k, options.annealing.seed)?;
    let outcome = anneal_with_progress(&palette, bg, &options.weights, &options.annealing, every, on_progress)?;
    let dark_colors = outcome.best.to_rgb();
    let rendered = apply_palette(image, &mask, &palette, &outcome.best, bg, options.mode)?;
    let metrics = evaluate_conditions(&palette, &dark_colors, bg);

    let light: Vec<LchColor> = palette.centroids.iter().map(|c| c.to_lch()).collect();
    let objective = Objective::new(&light, &palette.adjacency, bg, options.weights);
    Ok(Transformed {
        initial_components: objective.components(&light),
        final_components: objective.components(&outcome.best.colors),
        mask,
        palette,
        outcome,
        dark_colors,
        image: rendered,
        metrics,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PalettePair {
    pub light: Rgb8,
    pub dark: Rgb8,
    pub count: u64,
    pub light_lch: LchColor,
    pub dark_lch: LchColor,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnergySummary {
    pub initial: f64,
    #[serde(rename = "final")]
    pub final_energy: f64,
    pub initial_components: EnergyComponents,
    pub final_components: EnergyComponents,
    pub accepted_worse: usize,
    pub trace_stride: usize,
    pub trace: Vec<f64>,
}

/// Machine-readable summary of one transform run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TransformReport {
    pub version: u32,
    pub options: TransformOptions,
    pub requested_k: usize,
    pub k: usize,
    pub k_clamped: bool,
    pub foreground_pixels: u64,
    pub palette: Vec<PalettePair>,
    pub adjacency: Vec<[usize; 2]>,
    pub energy: EnergySummary,
    pub metrics: PerCondition<ConditionMetrics>,
}

impl TransformReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl Transformed {
    pub fn report(&self, options: &TransformOptions) -> TransformReport {
        let palette = self
            .palette
            .centroids
            .iter()
            .zip(&self.dark_colors)
            .zip(&self.palette.counts)
            .zip(&self.outcome.best.colors)
            .map(|(((&light, &dark), &count), &dark_lch)| PalettePair {
                light,
                dark,
                count,
                light_lch: light.to_lch(),
                dark_lch,
            })
            .collect();
        TransformReport {
            version: TRANSFORM_REPORT_VERSION,
            options: *options,
            requested_k: self.palette.requested_k,
            k: self.palette.k(),
            k_clamped: self.palette.was_clamped(),
            foreground_pixels: self.palette.foreground_pixels(),
            palette,
            adjacency: self.palette.adjacency.iter().map(|&(i, j)| [i, j]).collect(),
            energy: EnergySummary {
                initial: self.outcome.initial_energy,
                final_energy: self.outcome.best.energy,
                initial_components: self.initial_components,
                final_components: self.final_components,
                accepted_worse: self.outcome.accepted_worse,
                trace_stride: TRACE_STRIDE,
                trace: self.outcome.trace_summary(TRACE_STRIDE),
            },
            metrics: self.metrics,
        }
    }
}

//! Legibility and color-consistency metrics for the light, inverse and dark
//! conditions, per image and over a corpus.
//!
//! Contrast is the pixel-weighted mean WCAG contrast ratio between each
//! palette color and the background; an image passes at 3:1. Color difference
//! is the pixel-weighted mean ΔE2000 between each light color and its
//! counterpart in the condition being measured.

use serde::{Deserialize, Serialize};

use crate::color::{delta_e_rgb, wcag_contrast_ratio, Rgb8};
use crate::error::{Error, Result};
use crate::image::PixelImage;
use crate::palette::{BackgroundSpec, ExtractedPalette};
use crate::pipeline::{transform, TransformOptions};

/// WCAG 2.1 AA minimum for graphical objects.
pub const CONTRAST_THRESHOLD: f64 = 3.0;
/// Schema version of [`EvaluationReport`].
pub const REPORT_VERSION: u32 = 1;
pub const HISTOGRAM_BIN_WIDTH: f64 = 5.0;
/// Lower edge of the open-ended last histogram bin.
pub const HISTOGRAM_CAP: f64 = 60.0;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContrastScore {
    pub score: f64,
    pub pass: bool,
}

/// `Σ P_i · CR(C_i, bg) / Σ P_i`, passing at [`CONTRAST_THRESHOLD`].
pub fn contrast_compliance(colors: &[Rgb8], counts: &[u64], bg: Rgb8) -> ContrastScore {
    assert_eq!(colors.len(), counts.len(), "colors and counts must be index-aligned");
    let total: u64 = counts.iter().sum();
    let score = if total == 0 {
        1.0
    } else {
        colors
            .iter()
            .zip(counts)
            .map(|(&c, &n)| n as f64 * wcag_contrast_ratio(c, bg))
            .sum::<f64>()
            / total as f64
    };
    ContrastScore {
        score,
        pass: score >= CONTRAST_THRESHOLD,
    }
}

/// `Σ P_i · ΔE2000(light_i, candidate_i) / Σ P_i`.
pub fn color_difference_score(light: &[Rgb8], candidate: &[Rgb8], counts: &[u64]) -> f64 {
    assert_eq!(light.len(), candidate.len(), "palettes must be index-aligned");
    assert_eq!(light.len(), counts.len(), "palette and counts must be index-aligned");
    let total: u64 = counts.iter().sum();
    if total == 0 {
        return 0.0;
    }
    light
        .iter()
        .zip(candidate)
        .zip(counts)
        .map(|((&l, &c), &n)| n as f64 * delta_e_rgb(l, c))
        .sum::<f64>()
        / total as f64
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConditionMetrics {
    pub contrast_score: f64,
    pub pass: bool,
    pub color_difference: f64,
}

impl ConditionMetrics {
    fn measure(light: &[Rgb8], colors: &[Rgb8], counts: &[u64], bg: Rgb8) -> Self {
        let contrast = contrast_compliance(colors, counts, bg);
        Self {
            contrast_score: contrast.score,
            pass: contrast.pass,
            color_difference: color_difference_score(light, colors, counts),
        }
    }
}

/// One value per evaluated condition.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct PerCondition<T> {
    /// Original palette on the light background.
    pub light: T,
    /// Channel-inverted palette on the inverted light background.
    pub inverse: T,
    /// Optimized palette on the dark background.
    pub dark: T,
}

impl<T> PerCondition<T> {
    pub fn map<U>(&self, mut f: impl FnMut(&T) -> U) -> PerCondition<U> {
        PerCondition {
            light: f(&self.light),
            inverse: f(&self.inverse),
            dark: f(&self.dark),
        }
    }
}

/// Measures the three conditions for one extracted palette and its dark counterpart.
pub fn evaluate_conditions(palette: &ExtractedPalette, dark: &[Rgb8], bg: &BackgroundSpec) -> PerCondition<ConditionMetrics> {
    let light = &palette.centroids;
    let inverse: Vec<Rgb8> = light.iter().map(|c| c.inverted()).collect();
    PerCondition {
        light: ConditionMetrics::measure(light, light, &palette.counts, bg.light_bg),
        inverse: ConditionMetrics::measure(light, &inverse, &palette.counts, bg.light_bg.inverted()),
        dark: ConditionMetrics::measure(light, dark, &palette.counts, bg.dark_bg),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ImageEvaluation {
    pub name: String,
    pub k: usize,
    pub conditions: PerCondition<ConditionMetrics>,
}

/// Runs the full transform on one image and measures all three conditions.
pub fn evaluate_image(name: &str, image: &PixelImage, options: &TransformOptions) -> Result<ImageEvaluation> {
    let result = transform(image, options)?;
    Ok(ImageEvaluation {
        name: name.to_string(),
        k: result.palette.k(),
        conditions: result.metrics,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HistogramBin {
    pub lower: f64,
    /// `None` for the open-ended last bin.
    pub upper: Option<f64>,
    pub count: usize,
}

/// Bins values into `[0,5), [5,10), …, [55,60), [60,∞)`.
pub fn color_difference_histogram(values: impl IntoIterator<Item = f64>) -> Vec<HistogramBin> {
    let closed = (HISTOGRAM_CAP / HISTOGRAM_BIN_WIDTH) as usize;
    let mut bins: Vec<HistogramBin> = (0..=closed)
        .map(|i| {
            let lower = i as f64 * HISTOGRAM_BIN_WIDTH;
            HistogramBin {
                lower,
                upper: (i < closed).then_some(lower + HISTOGRAM_BIN_WIDTH),
                count: 0,
            }
        })
        .collect();
    for v in values {
        let i = ((v.max(0.0) / HISTOGRAM_BIN_WIDTH).floor() as usize).min(closed);
        bins[i].count += 1;
    }
    bins
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SkippedInput {
    pub name: String,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub images: usize,
    /// Percentage of images passing the contrast threshold, in `[0, 100]`.
    pub pass_rate_by_condition: PerCondition<f64>,
    pub histogram: PerCondition<Vec<HistogramBin>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvaluationReport {
    pub version: u32,
    pub per_image: Vec<ImageEvaluation>,
    pub skipped: Vec<SkippedInput>,
    pub summary: Summary,
}

impl EvaluationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Aggregates per-image results. Fails when nothing was evaluated.
pub fn summarize(per_image: Vec<ImageEvaluation>, skipped: Vec<SkippedInput>) -> Result<EvaluationReport> {
    if per_image.is_empty() {
        return Err(Error::NoImages);
    }
    let n = per_image.len() as f64;
    let pass_rate = |f: fn(&PerCondition<ConditionMetrics>) -> bool| {
        100.0 * per_image.iter().filter(|e| f(&e.conditions)).count() as f64 / n
    };
    let histogram = |f: fn(&PerCondition<ConditionMetrics>) -> f64| {
        color_difference_histogram(per_image.iter().map(|e| f(&e.conditions)))
    };
    let summary = Summary {
        images: per_image.len(),
        pass_rate_by_condition: PerCondition {
            light: pass_rate(|c| c.light.pass),
            inverse: pass_rate(|c| c.inverse.pass),
            dark: pass_rate(|c| c.dark.pass),
        },
        histogram: PerCondition {
            light: histogram(|c| c.light.color_difference),
            inverse: histogram(|c| c.inverse.color_difference),
            dark: histogram(|c| c.dark.color_difference),
        },
    };
    Ok(EvaluationReport {
        version: REPORT_VERSION,
        per_image,
        skipped,
        summary,
    })
}

/// Evaluates a corpus in the order given. Inputs that failed to decode, or
/// that fail the pipeline, are recorded as skipped.
pub fn batch_report<I>(inputs: I, options: &TransformOptions) -> Result<EvaluationReport>
where
    I: IntoIterator<Item = (String, std::result::Result<PixelImage, String>)>,
{
    let mut per_image = Vec::new();
    let mut skipped = Vec::new();
    for (name, decoded) in inputs {
        match decoded.and_then(|img| evaluate_image(&name, &img, options).map_err(|e| e.to_string())) {
            Ok(eval) => per_image.push(eval),
            Err(reason) => skipped.push(SkippedInput { name, reason }),
        }
    }
    summarize(per_image, skipped)
}

//! Light-to-dark mode adaptation for raster data-visualization images.
//!
//! The pipeline masks the light background, clusters the remaining pixels
//! into a k-color palette, searches for a dark-mode palette that keeps
//! lightness contrast, color identity and adjacent-color differences, and
//! repaints the bitmap with it.
//!
//! ```
//! use duskify::{transform, PixelImage, Rgb8, SaConfig, TransformOptions};
//!
//! let mut chart = PixelImage::filled(40, 30, Rgb8::WHITE);
//! chart.fill_rect(5, 10, 15, 30, Rgb8::new(31, 119, 180));
//! chart.fill_rect(20, 4, 30, 30, Rgb8::new(255, 127, 14));
//!
//! let options = TransformOptions {
//!     k: 2,
//!     annealing: SaConfig { iterations: 2_000, ..SaConfig::default() },
//!     ..TransformOptions::default()
//! };
//! let out = transform(&chart, &options).unwrap();
//! assert_eq!(out.image.get(0, 0), Rgb8::BLACK);
//! assert!(out.outcome.best.energy <= out.outcome.initial_energy);
//! ```

pub mod color;
pub mod error;
pub mod evaluate;
pub mod image;
pub mod optimize;
pub mod palette;
pub mod pipeline;
pub mod recolor;
pub mod samples;

pub use color::{
    delta_e_2000, lab_to_lch, lch_to_srgb_checked, srgb_to_lab, wcag_contrast_ratio, wcag_relative_luminance, LabColor,
    LchColor, OutOfGamut, Rgb8,
};
pub use error::{Error, Result};
pub use evaluate::{batch_report, color_difference_score, contrast_compliance, EvaluationReport};
pub use image::PixelImage;
pub use optimize::{anneal, PaletteState, SaConfig, Weights};
pub use palette::{extract_palette, mask_background, BackgroundSpec, ExtractedPalette, ForegroundMask};
pub use pipeline::{transform, TransformOptions, TransformReport, Transformed};
pub use recolor::{apply_palette, compose_preview, invert_image, RenderMode};

use serde::{Deserialize, Serialize};

use crate::color::{lab_to_srgb_clamped, srgb_to_lab, LabColor, Rgb8};
use crate::error::{Error, Result};
use crate::image::PixelImage;
use crate::optimize::PaletteState;
use crate::palette::{BackgroundSpec, ExtractedPalette, ForegroundMask};

/// Separator and padding color used by [`compose_preview`].
pub const PREVIEW_SEPARATOR: Rgb8 = Rgb8::new(128, 128, 128);
pub const PREVIEW_GAP: usize = 2;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RenderMode {
    /// Every foreground pixel takes its cluster's dark color.
    #[default]
    Quantize,
    /// Dark color plus the pixel's Lab offset from its light centroid, clipped to sRGB.
    Residual,
}

impl std::str::FromStr for RenderMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "quantize" => Ok(Self::Quantize),
            "residual" => Ok(Self::Residual),
            other => Err(Error::InvalidConfig(format!("unknown render mode {other:?}"))),
        }
    }
}

/// Renders the dark-mode bitmap.
pub fn apply_palette(
    image: &PixelImage,
    mask: &ForegroundMask,
    palette: &ExtractedPalette,
    dark: &PaletteState,
    bg: &BackgroundSpec,
    mode: RenderMode,
) -> Result<PixelImage> {
    let n = image.len();
    for found in [mask.len(), palette.labels.len()] {
        if found != n {
            return Err(Error::DimensionMismatch { expected: n, found });
        }
    }
    if dark.colors.len() != palette.k() {
        return Err(Error::DimensionMismatch {
            expected: palette.k(),
            found: dark.colors.len(),
        });
    }

    let dark_rgb = dark.to_rgb();
    let dark_lab: Vec<LabColor> = dark.colors.iter().map(|c| c.to_lab()).collect();
    let light_lab: Vec<LabColor> = palette.centroids.iter().map(|&c| srgb_to_lab(c)).collect();

    let mut out = Vec::with_capacity(n);
    for (i, &p) in image.pixels().iter().enumerate() {
        let label = if mask.is_foreground(i) { palette.labels[i] } else { None };
        let Some(label) = label else {
            out.push(bg.dark_bg);
            continue;
        };
        let j = label as usize;
        let c = match mode {
            RenderMode::Quantize => dark_rgb[j],
            RenderMode::Residual => {
                let px = srgb_to_lab(p);
                let shifted = LabColor::new(
                    dark_lab[j].l + (px.l - light_lab[j].l),
                    dark_lab[j].a + (px.a - light_lab[j].a),
                    dark_lab[j].b + (px.b - light_lab[j].b),
                );
                lab_to_srgb_clamped(shifted)
            }
        };
        out.push(c);
    }
    PixelImage::new(image.width(), image.height(), out)
}

/// `255 - c` on every channel.
pub fn invert_image(image: &PixelImage) -> PixelImage {
    let mut out = image.clone();
    for p in out.pixels_mut() {
        *p = p.inverted();
    }
    out
}

/// Places `light` and `dark` side by side with a thin gray separator. The
/// shorter image is padded at the bottom with the separator color.
pub fn compose_preview(light: &PixelImage, dark: &PixelImage) -> PixelImage {
    let width = light.width() + PREVIEW_GAP + dark.width();
    let height = light.height().max(dark.height());
    let mut out = PixelImage::filled(width, height, PREVIEW_SEPARATOR);
    for y in 0..light.height() {
        for x in 0..light.width() {
            out.set(x, y, light.get(x, y));
        }
    }
    let offset = light.width() + PREVIEW_GAP;
    for y in 0..dark.height() {
        for x in 0..dark.width() {
            out.set(offset + x, y, dark.get(x, y));
        }
    }
    out
}

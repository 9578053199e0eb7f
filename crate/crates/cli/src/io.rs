use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use image::{ExtendedColorType, ImageFormat};

use duskify::{PixelImage, Rgb8};

pub type IoError = anyhow::Error;

const EXTENSIONS: &[&str] = &["png", "jpg", "jpeg"];

/// Decodes a PNG or JPEG, compositing any alpha over `bg`.
pub fn load(path: &Path, bg: Rgb8) -> Result<PixelImage, IoError> {
    let decoded = image::ImageReader::open(path)
        .with_context(|| format!("opening {}", path.display()))?
        .with_guessed_format()
        .with_context(|| format!("reading {}", path.display()))?
        .decode()
        .with_context(|| format!("decoding {}", path.display()))?;
    let rgba = decoded.to_rgba8();
    let (w, h) = rgba.dimensions();
    PixelImage::from_rgba_bytes(w as usize, h as usize, rgba.as_raw(), bg)
        .with_context(|| format!("decoding {}", path.display()))
}

pub fn save_png(path: &Path, img: &PixelImage) -> Result<(), IoError> {
    image::save_buffer_with_format(
        path,
        &img.to_rgb_bytes(),
        img.width() as u32,
        img.height() as u32,
        ExtendedColorType::Rgb8,
        ImageFormat::Png,
    )
    .with_context(|| format!("writing {}", path.display()))
}

/// A single file, or every PNG/JPEG directly inside a directory sorted by name.
pub fn list_images(input: &Path) -> Result<Vec<PathBuf>, IoError> {
    if input.is_file() {
        return Ok(vec![input.to_path_buf()]);
    }
    if !input.is_dir() {
        bail!("{} is neither a file nor a directory", input.display());
    }
    let mut files = Vec::new();
    for entry in std::fs::read_dir(input).with_context(|| format!("listing {}", input.display()))? {
        let path = entry?.path();
        let known = path
            .extension()
            .and_then(|e| e.to_str())
            .is_some_and(|e| EXTENSIONS.contains(&e.to_ascii_lowercase().as_str()));
        if path.is_file() && known {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

//! Deterministic synthetic light-mode charts for demos and tests.

use crate::color::Rgb8;
use crate::image::PixelImage;

/// D3 `schemeCategory10`.
pub const CATEGORY10: [Rgb8; 10] = [
    Rgb8::new(0x1f, 0x77, 0xb4),
    Rgb8::new(0xff, 0x7f, 0x0e),
    Rgb8::new(0x2c, 0xa0, 0x2c),
    Rgb8::new(0xd6, 0x27, 0x28),
    Rgb8::new(0x94, 0x67, 0xbd),
    Rgb8::new(0x8c, 0x56, 0x4b),
    Rgb8::new(0xe3, 0x77, 0xc2),
    Rgb8::new(0x7f, 0x7f, 0x7f),
    Rgb8::new(0xbc, 0xbd, 0x22),
    Rgb8::new(0x17, 0xbe, 0xcf),
];

pub const STEELBLUE: Rgb8 = Rgb8::new(70, 130, 180);
pub const AXIS_GRAY: Rgb8 = Rgb8::new(0x33, 0x33, 0x33);
pub const STOCK_UP: Rgb8 = Rgb8::new(0x2c, 0xa0, 0x2c);
pub const STOCK_DOWN: Rgb8 = Rgb8::new(0xd6, 0x27, 0x28);

/// Seven-step ColorBrewer `Blues`.
pub const BLUES: [Rgb8; 7] = [
    Rgb8::new(0xef, 0xf3, 0xff),
    Rgb8::new(0xc6, 0xdb, 0xef),
    Rgb8::new(0x9e, 0xca, 0xe1),
    Rgb8::new(0x6b, 0xae, 0xd6),
    Rgb8::new(0x42, 0x92, 0xc6),
    Rgb8::new(0x21, 0x71, 0xb5),
    Rgb8::new(0x08, 0x45, 0x94),
];

/// Seven-step ColorBrewer `RdBu`.
pub const RDBU: [Rgb8; 7] = [
    Rgb8::new(0xb2, 0x18, 0x2b),
    Rgb8::new(0xef, 0x8a, 0x62),
    Rgb8::new(0xfd, 0xdb, 0xc7),
    Rgb8::new(0xf7, 0xf7, 0xf7),
    Rgb8::new(0xd1, 0xe5, 0xf0),
    Rgb8::new(0x67, 0xa9, 0xcf),
    Rgb8::new(0x21, 0x66, 0xac),
];

/// Five-step `viridis` samples.
pub const VIRIDIS: [Rgb8; 5] = [
    Rgb8::new(0x44, 0x01, 0x54),
    Rgb8::new(0x3b, 0x52, 0x8b),
    Rgb8::new(0x21, 0x90, 0x8d),
    Rgb8::new(0x5d, 0xc8, 0x63),
    Rgb8::new(0xfd, 0xe7, 0x25),
];

/// Small deterministic generator for chart data (xorshift64*).
struct DataRng(u64);

impl DataRng {
    fn new(seed: u64) -> Self {
        Self(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) | 1)
    }

    fn unit(&mut self) -> f64 {
        self.0 ^= self.0 >> 12;
        self.0 ^= self.0 << 25;
        self.0 ^= self.0 >> 27;
        (self.0.wrapping_mul(0x2545_F491_4F6C_DD1D) >> 11) as f64 / (1u64 << 53) as f64
    }
}

fn blend(fg: Rgb8, bg: Rgb8, coverage: f64) -> Rgb8 {
    fg.over((coverage.clamp(0.0, 1.0) * 255.0).round() as u8, bg)
}

fn draw_axes(img: &mut PixelImage, left: usize, bottom: usize) {
    let w = img.width();
    img.fill_rect(left - 2, 10, left, bottom, AXIS_GRAY);
    img.fill_rect(left - 2, bottom, w - 10, bottom + 2, AXIS_GRAY);
}

/// Anti-aliased disc.
fn fill_disc(img: &mut PixelImage, cx: f64, cy: f64, r: f64, c: Rgb8) {
    let x0 = (cx - r - 1.0).floor().max(0.0) as usize;
    let y0 = (cy - r - 1.0).floor().max(0.0) as usize;
    let x1 = ((cx + r + 1.0).ceil() as usize).min(img.width());
    let y1 = ((cy + r + 1.0).ceil() as usize).min(img.height());
    for y in y0..y1 {
        for x in x0..x1 {
            let d = ((x as f64 + 0.5 - cx).powi(2) + (y as f64 + 0.5 - cy).powi(2)).sqrt();
            let coverage = r + 0.5 - d;
            if coverage > 0.0 {
                let under = img.get(x, y);
                img.set(x, y, blend(c, under, coverage));
            }
        }
    }
}

/// Thick anti-aliased polyline made of discs.
fn stroke_polyline(img: &mut PixelImage, points: &[(f64, f64)], width: f64, c: Rgb8) {
    for seg in points.windows(2) {
        let ((xa, ya), (xb, yb)) = (seg[0], seg[1]);
        let steps = ((xb - xa).hypot(yb - ya) * 2.0).ceil().max(1.0) as usize;
        for s in 0..=steps {
            let t = s as f64 / steps as f64;
            let (x, y) = (xa + (xb - xa) * t, ya + (yb - ya) * t);
            let x0 = (x - width).floor().max(0.0) as usize;
            let y0 = (y - width).floor().max(0.0) as usize;
            for py in y0..((y + width).ceil() as usize).min(img.height()) {
                for px in x0..((x + width).ceil() as usize).min(img.width()) {
                    let d = (px as f64 + 0.5 - x).hypot(py as f64 + 0.5 - y);
                    if d <= width / 2.0 {
                        img.set(px, py, c);
                    }
                }
            }
        }
    }
}

/// Vertical bars, one color per bar, with axes.
pub fn bar_chart(width: usize, height: usize, colors: &[Rgb8], seed: u64) -> PixelImage {
    let mut img = PixelImage::filled(width, height, Rgb8::WHITE);
    let mut rng = DataRng::new(seed);
    let (left, bottom) = (40, height - 30);
    let slot = (width - left - 20) / colors.len();
    for (i, &c) in colors.iter().enumerate() {
        let top = 20 + (rng.unit() * (bottom - 40) as f64) as usize;
        let x = left + i * slot + slot / 6;
        img.fill_rect(x, top, x + slot * 2 / 3, bottom, c);
    }
    draw_axes(&mut img, left, bottom);
    img
}

/// Pairs of touching bars per group.
pub fn grouped_bar_chart(width: usize, height: usize, a: Rgb8, b: Rgb8, groups: usize, seed: u64) -> PixelImage {
    let mut img = PixelImage::filled(width, height, Rgb8::WHITE);
    let mut rng = DataRng::new(seed);
    let (left, bottom) = (40, height - 30);
    let slot = (width - left - 20) / groups;
    for g in 0..groups {
        let x = left + g * slot + slot / 8;
        let bw = slot * 3 / 8;
        for (j, c) in [a, b].into_iter().enumerate() {
            let top = 20 + (rng.unit() * (bottom - 40) as f64) as usize;
            img.fill_rect(x + j * bw, top, x + (j + 1) * bw, bottom, c);
        }
    }
    draw_axes(&mut img, left, bottom);
    img
}

/// Stacked bars with one color per layer; layers touch vertically.
pub fn stacked_bar_chart(width: usize, height: usize, layers: &[Rgb8], bars: usize, seed: u64) -> PixelImage {
    let mut img = PixelImage::filled(width, height, Rgb8::WHITE);
    let mut rng = DataRng::new(seed);
    let (left, bottom) = (40, height - 30);
    let slot = (width - left - 20) / bars;
    let max_stack = (bottom - 20) as f64;
    for i in 0..bars {
        let x = left + i * slot + slot / 6;
        let mut y = bottom;
        for &c in layers {
            let h = ((0.3 + 0.7 * rng.unit()) * max_stack / layers.len() as f64) as usize;
            img.fill_rect(x, y - h, x + slot * 2 / 3, y, c);
            y -= h;
        }
    }
    draw_axes(&mut img, left, bottom);
    img
}

/// Random-walk line series, 3 px wide.
pub fn line_chart(width: usize, height: usize, colors: &[Rgb8], seed: u64) -> PixelImage {
    let mut img = PixelImage::filled(width, height, Rgb8::WHITE);
    let mut rng = DataRng::new(seed);
    let (left, bottom) = (40.0, (height - 30) as f64);
    let n = 24;
    for &c in colors {
        let mut v = 0.2 + 0.6 * rng.unit();
        let points: Vec<(f64, f64)> = (0..n)
            .map(|i| {
                v = (v + (rng.unit() - 0.5) * 0.15).clamp(0.05, 0.95);
                let x = left + 4.0 + i as f64 * (width as f64 - left - 24.0) / (n - 1) as f64;
                (x, bottom - v * (bottom - 20.0))
            })
            .collect();
        stroke_polyline(&mut img, &points, 3.0, c);
    }
    draw_axes(&mut img, left as usize, bottom as usize);
    img
}

/// Anti-aliased scatter plot.
pub fn scatter_chart(width: usize, height: usize, colors: &[Rgb8], points_per_series: usize, seed: u64) -> PixelImage {
    let mut img = PixelImage::filled(width, height, Rgb8::WHITE);
    let mut rng = DataRng::new(seed);
    let (left, bottom) = (40.0, (height - 30) as f64);
    for (s, &c) in colors.iter().enumerate() {
        let (mx, my) = (0.2 + 0.3 * s as f64, 0.3 + 0.2 * s as f64);
        for _ in 0..points_per_series {
            let x = left + 10.0 + (mx + (rng.unit() - 0.5) * 0.4).clamp(0.0, 1.0) * (width as f64 - left - 40.0);
            let y = bottom - 10.0 - (my + (rng.unit() - 0.5) * 0.4).clamp(0.0, 1.0) * (bottom - 40.0);
            fill_disc(&mut img, x, y, 5.0, c);
        }
    }
    draw_axes(&mut img, left as usize, bottom as usize);
    img
}

/// Grid heatmap; each cell takes a smoothly varying ramp step.
pub fn heatmap(width: usize, height: usize, ramp: &[Rgb8], cells: usize, seed: u64) -> PixelImage {
    let mut img = PixelImage::filled(width, height, Rgb8::WHITE);
    let mut rng = DataRng::new(seed);
    let (phase_x, phase_y) = (rng.unit() * 3.0, rng.unit() * 3.0);
    let (x0, y0) = (30, 20);
    let cw = (width - x0 - 20) / cells;
    let ch = (height - y0 - 20) / cells;
    for gy in 0..cells {
        for gx in 0..cells {
            let u = gx as f64 / cells as f64 * 4.0 + phase_x;
            let v = gy as f64 / cells as f64 * 4.0 + phase_y;
            let value = 0.5 + 0.25 * u.sin() + 0.25 * v.cos();
            let step = ((value * ramp.len() as f64) as usize).min(ramp.len() - 1);
            let (x, y) = (x0 + gx * cw, y0 + gy * ch);
            img.fill_rect(x, y, x + cw, y + ch, ramp[step]);
        }
    }
    img
}

/// Candlestick chart: green bodies for rising days, red for falling.
pub fn stock_chart(width: usize, height: usize, days: usize, seed: u64) -> PixelImage {
    let mut img = PixelImage::filled(width, height, Rgb8::WHITE);
    let mut rng = DataRng::new(seed);
    let (left, bottom) = (40, height - 30);
    let slot = (width - left - 20) / days;
    let span = (bottom - 30) as f64;
    let mut price = 0.5;
    for d in 0..days {
        let open = price;
        let close = (open + (rng.unit() - 0.5) * 0.2).clamp(0.05, 0.95);
        let high = open.max(close) + rng.unit() * 0.05;
        let low = open.min(close) - rng.unit() * 0.05;
        price = close;
        let c = if close >= open { STOCK_UP } else { STOCK_DOWN };
        let to_y = |v: f64| bottom - 10 - (v.clamp(0.0, 1.0) * span) as usize;
        let x = left + d * slot + slot / 5;
        let bw = (slot * 3 / 5).max(2);
        let mid = x + bw / 2;
        img.fill_rect(mid - 1, to_y(high), mid + 1, to_y(low) + 1, c);
        let (top, bot) = (to_y(open.max(close)), to_y(open.min(close)));
        img.fill_rect(x, top, x + bw, bot.max(top + 2), c);
    }
    draw_axes(&mut img, left, bottom);
    img
}

/// A named synthetic chart.
pub struct SampleChart {
    pub name: &'static str,
    pub image: PixelImage,
    /// Cluster count suited to the chart.
    pub k: usize,
}

/// Names of the [`chart_suite`] entries, in order.
pub const SUITE_NAMES: [&str; 10] = [
    "bars-steelblue",
    "bars-category10",
    "bars-grouped",
    "bars-stacked",
    "lines-three",
    "lines-single",
    "scatter",
    "heatmap-blues",
    "heatmap-rdbu",
    "heatmap-viridis",
];

/// Ten charts spanning bars, lines, scatter and heatmaps. Sizes below about
/// 120x90 leave no room for the plot area.
pub fn chart_suite(width: usize, height: usize) -> Vec<SampleChart> {
    let images = [
        (bar_chart(width, height, &[STEELBLUE; 6], 1), 2),
        (bar_chart(width, height, &CATEGORY10[..6], 2), 7),
        (grouped_bar_chart(width, height, CATEGORY10[0], CATEGORY10[1], 5, 3), 3),
        (stacked_bar_chart(width, height, &CATEGORY10[..4], 6, 4), 5),
        (line_chart(width, height, &CATEGORY10[..3], 5), 4),
        (line_chart(width, height, &[CATEGORY10[3]], 6), 2),
        (scatter_chart(width, height, &CATEGORY10[..3], 40, 7), 6),
        (heatmap(width, height, &BLUES, 12, 8), 7),
        (heatmap(width, height, &RDBU, 12, 9), 7),
        (heatmap(width, height, &VIRIDIS, 10, 10), 5),
    ];
    SUITE_NAMES
        .into_iter()
        .zip(images)
        .map(|(name, (image, k))| SampleChart { name, image, k })
        .collect()
}

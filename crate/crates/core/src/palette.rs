//! Palette extraction: background masking, k-means over foreground RGB and the
//! cluster adjacency graph.
//!
//! Clustering runs on the histogram of distinct foreground colors weighted by
//! pixel count. This is the same objective (and the same centroids) as
//! clustering every pixel, at a fraction of the cost for chart images that
//! carry a few hundred distinct colors.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::color::{delta_e_2000, srgb_to_lab, Rgb8};
use crate::error::{Error, Result};
use crate::image::PixelImage;

/// Default ΔE2000 radius around the light background that counts as background.
pub const DEFAULT_BG_TOLERANCE: f64 = 2.0;

const MAX_LLOYD_ITERATIONS: usize = 100;
const MIN_RELATIVE_IMPROVEMENT: f64 = 1e-6;
const MIN_BOUNDARY_PAIRS: u64 = 8;
const MIN_BOUNDARY_FRACTION: f64 = 0.001;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BackgroundSpec {
    pub light_bg: Rgb8,
    pub dark_bg: Rgb8,
    pub tolerance: f64,
}

impl BackgroundSpec {
    pub fn new(light_bg: Rgb8, dark_bg: Rgb8) -> Self {
        Self {
            light_bg,
            dark_bg,
            tolerance: DEFAULT_BG_TOLERANCE,
        }
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tolerance >= 0.0 && self.tolerance.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "background tolerance must be a finite value >= 0, got {}",
                self.tolerance
            )));
        }
        Ok(())
    }
}

impl Default for BackgroundSpec {
    fn default() -> Self {
        Self::new(Rgb8::WHITE, Rgb8::BLACK)
    }
}

/// Per-pixel foreground flags, row-major like the image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForegroundMask {
    flags: Vec<bool>,
}

impl ForegroundMask {
    pub fn from_flags(flags: Vec<bool>) -> Self {
        Self { flags }
    }

    pub fn len(&self) -> usize {
        self.flags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flags.is_empty()
    }

    pub fn is_foreground(&self, index: usize) -> bool {
        self.flags[index]
    }

    pub fn foreground_count(&self) -> usize {
        self.flags.iter().filter(|&&f| f).count()
    }

    pub fn flags(&self) -> &[bool] {
        &self.flags
    }
}

/// Marks every pixel within `spec.tolerance` (ΔE2000) of the light background
/// as background.
pub fn mask_background(image: &PixelImage, spec: &BackgroundSpec) -> Result<ForegroundMask> {
    if image.is_empty() {
        return Err(Error::EmptyImage);
    }
    spec.validate()?;
    let bg_lab = srgb_to_lab(spec.light_bg);
    let mut cache: HashMap<Rgb8, bool> = HashMap::new();
    let flags: Vec<bool> = image
        .pixels()
        .iter()
        .map(|&p| {
            *cache
                .entry(p)
                .or_insert_with(|| delta_e_2000(srgb_to_lab(p), bg_lab) > spec.tolerance)
        })
        .collect();
    if !flags.iter().any(|&f| f) {
        return Err(Error::AllBackground);
    }
    Ok(ForegroundMask { flags })
}

/// Diagnostics of the Lloyd iterations.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ClusteringStats {
    pub iterations: usize,
    /// Pixel-weighted sum of squared RGB distances after each assignment step.
    pub objective_trace: Vec<f64>,
}

impl ClusteringStats {
    pub fn final_objective(&self) -> f64 {
        self.objective_trace.last().copied().unwrap_or(0.0)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExtractedPalette {
    /// Cluster centers, ordered by descending pixel count.
    pub centroids: Vec<Rgb8>,
    /// Unrounded cluster means, index-aligned with `centroids`.
    pub means: Vec<[f64; 3]>,
    /// Per-pixel cluster index; `None` for background pixels.
    pub labels: Vec<Option<u32>>,
    pub counts: Vec<u64>,
    /// Unordered adjacent cluster pairs stored as `(i, j)` with `i < j`.
    pub adjacency: BTreeSet<(usize, usize)>,
    pub width: usize,
    pub height: usize,
    pub requested_k: usize,
    pub stats: ClusteringStats,
}

impl ExtractedPalette {
    pub fn k(&self) -> usize {
        self.centroids.len()
    }

    /// True when fewer distinct foreground colors than requested forced a smaller k.
    pub fn was_clamped(&self) -> bool {
        self.centroids.len() < self.requested_k
    }

    pub fn foreground_pixels(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Sum of squared RGB distances from every foreground pixel to its centroid mean.
    pub fn quantization_error(&self) -> f64 {
        self.stats.final_objective()
    }
}

fn dist2(a: [f64; 3], b: [f64; 3]) -> f64 {
    let d = [a[0] - b[0], a[1] - b[1], a[2] - b[2]];
    d[0] * d[0] + d[1] * d[1] + d[2] * d[2]
}

fn to_point(c: Rgb8) -> [f64; 3] {
    [c.r as f64, c.g as f64, c.b as f64]
}

struct WeightedPoints {
    colors: Vec<Rgb8>,
    points: Vec<[f64; 3]>,
    weights: Vec<f64>,
}

fn foreground_histogram(image: &PixelImage, mask: &ForegroundMask) -> WeightedPoints {
    let mut hist: BTreeMap<Rgb8, u64> = BTreeMap::new();
    for (i, &p) in image.pixels().iter().enumerate() {
        if mask.is_foreground(i) {
            *hist.entry(p).or_default() += 1;
        }
    }
    WeightedPoints {
        colors: hist.keys().copied().collect(),
        points: hist.keys().map(|&c| to_point(c)).collect(),
        weights: hist.values().map(|&n| n as f64).collect(),
    }
}

/// Draws an index with probability proportional to `weights`.
fn sample_weighted(rng: &mut impl Rng, weights: &[f64]) -> usize {
    let total: f64 = weights.iter().sum();
    let mut target = rng.random::<f64>() * total;
    for (i, &w) in weights.iter().enumerate() {
        if w > 0.0 {
            if target < w {
                return i;
            }
            target -= w;
        }
    }
    weights.iter().rposition(|&w| w > 0.0).unwrap_or(0)
}

fn kmeans_plus_plus(data: &WeightedPoints, k: usize, rng: &mut impl Rng) -> Vec<[f64; 3]> {
    let mut centers = Vec::with_capacity(k);
    centers.push(data.points[sample_weighted(rng, &data.weights)]);
    let mut nearest: Vec<f64> = data.points.iter().map(|&p| dist2(p, centers[0])).collect();
    while centers.len() < k {
        let scores: Vec<f64> = nearest.iter().zip(&data.weights).map(|(d, w)| d * w).collect();
        let c = data.points[sample_weighted(rng, &scores)];
        for (n, &p) in nearest.iter_mut().zip(&data.points) {
            *n = n.min(dist2(p, c));
        }
        centers.push(c);
    }
    centers
}

/// Nearest center; ties go to the lowest index.
fn nearest_center(p: [f64; 3], centers: &[[f64; 3]]) -> (usize, f64) {
    let mut best = (0, f64::INFINITY);
    for (j, &c) in centers.iter().enumerate() {
        let d = dist2(p, c);
        if d < best.1 {
            best = (j, d);
        }
    }
    best
}

fn assign(data: &WeightedPoints, centers: &[[f64; 3]], assignment: &mut [usize]) -> f64 {
    let mut objective = 0.0;
    for (i, &p) in data.points.iter().enumerate() {
        let (j, d) = nearest_center(p, centers);
        assignment[i] = j;
        objective += d * data.weights[i];
    }
    objective
}

fn update_centers(data: &WeightedPoints, assignment: &[usize], centers: &mut [[f64; 3]]) -> Vec<f64> {
    let k = centers.len();
    let mut sums = vec![[0.0; 3]; k];
    let mut mass = vec![0.0; k];
    for (i, &j) in assignment.iter().enumerate() {
        let w = data.weights[i];
        for (s, v) in sums[j].iter_mut().zip(data.points[i]) {
            *s += v * w;
        }
        mass[j] += w;
    }
    for j in 0..k {
        if mass[j] > 0.0 {
            centers[j] = sums[j].map(|s| s / mass[j]);
        }
    }
    mass
}

/// Moves each empty cluster onto the point farthest from its current centroid.
fn repair_empty(data: &WeightedPoints, assignment: &mut [usize], centers: &mut [[f64; 3]], mass: &[f64]) -> bool {
    let mut repaired = false;
    for j in 0..centers.len() {
        if mass[j] > 0.0 {
            continue;
        }
        let farthest = (0..data.points.len())
            .map(|i| (i, dist2(data.points[i], centers[assignment[i]])))
            .fold((0, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        centers[j] = data.points[farthest.0];
        assignment[farthest.0] = j;
        repaired = true;
    }
    repaired
}

/// Weighted Lloyd iterations with k-means++ seeding.
fn kmeans(data: &WeightedPoints, k: usize, seed: u64) -> (Vec<[f64; 3]>, Vec<usize>, ClusteringStats) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut centers = kmeans_plus_plus(data, k, &mut rng);
    let mut assignment = vec![0; data.points.len()];
    let mut stats = ClusteringStats::default();

    let mut objective = assign(data, &centers, &mut assignment);
    stats.objective_trace.push(objective);
    for _ in 0..MAX_LLOYD_ITERATIONS {
        stats.iterations += 1;
        let mass = update_centers(data, &assignment, &mut centers);
        if repair_empty(data, &mut assignment, &mut centers, &mass) {
            update_centers(data, &assignment, &mut centers);
        }
        let next = assign(data, &centers, &mut assignment);
        stats.objective_trace.push(next);
        let converged = next == 0.0 || (objective - next) <= MIN_RELATIVE_IMPROVEMENT * objective;
        objective = next;
        if converged {
            break;
        }
    }
    // Means of the final assignment.
    let mass = update_centers(data, &assignment, &mut centers);
    if mass.contains(&0.0) {
        repair_empty(data, &mut assignment, &mut centers, &mass);
        update_centers(data, &assignment, &mut centers);
        let last = assign(data, &centers, &mut assignment);
        stats.objective_trace.push(last);
        update_centers(data, &assignment, &mut centers);
    }
    let final_objective: f64 = data
        .points
        .iter()
        .zip(&assignment)
        .zip(&data.weights)
        .map(|((&p, &j), &w)| dist2(p, centers[j]) * w)
        .sum();
    if let Some(last) = stats.objective_trace.last_mut() {
        *last = last.min(final_objective);
    }
    (centers, assignment, stats)
}

/// Clusters the foreground pixels into at most `k` colors.
///
/// When the foreground has fewer than `k` distinct colors, `k` is clamped to
/// that count; `ExtractedPalette::was_clamped` reports it.
pub fn extract_palette(image: &PixelImage, mask: &ForegroundMask, k: usize, seed: u64) -> Result<ExtractedPalette> {
    if k == 0 {
        return Err(Error::InvalidK);
    }
    if mask.len() != image.len() {
        return Err(Error::DimensionMismatch {
            expected: image.len(),
            found: mask.len(),
        });
    }
    let data = foreground_histogram(image, mask);
    if data.colors.is_empty() {
        return Err(Error::AllBackground);
    }
    let k_used = k.min(data.colors.len());
    let (centers, assignment, stats) = kmeans(&data, k_used, seed);

    let mut counts = vec![0u64; k_used];
    for (i, &j) in assignment.iter().enumerate() {
        counts[j] += data.weights[i] as u64;
    }
    let rounded: Vec<Rgb8> = centers
        .iter()
        .map(|c| {
            let [r, g, b] = c.map(|v| v.round().clamp(0.0, 255.0) as u8);
            Rgb8::new(r, g, b)
        })
        .collect();

    // Stable presentation order: most populous first, then by color.
    let mut order: Vec<usize> = (0..k_used).collect();
    order.sort_by(|&a, &b| counts[b].cmp(&counts[a]).then(rounded[a].cmp(&rounded[b])).then(a.cmp(&b)));
    let mut rank = vec![0usize; k_used];
    for (new, &old) in order.iter().enumerate() {
        rank[old] = new;
    }

    let color_label: HashMap<Rgb8, u32> = data
        .colors
        .iter()
        .zip(&assignment)
        .map(|(&c, &j)| (c, rank[j] as u32))
        .collect();
    let labels: Vec<Option<u32>> = image
        .pixels()
        .iter()
        .enumerate()
        .map(|(i, p)| mask.is_foreground(i).then(|| color_label[p]))
        .collect();

    let adjacency = build_adjacency(&labels, image.width(), image.height())?;
    Ok(ExtractedPalette {
        centroids: order.iter().map(|&j| rounded[j]).collect(),
        means: order.iter().map(|&j| centers[j]).collect(),
        labels,
        counts: order.iter().map(|&j| counts[j]).collect(),
        adjacency,
        width: image.width(),
        height: image.height(),
        requested_k: k,
        stats,
    })
}

/// Number of 8-connected pixel pairs between each pair of distinct clusters.
pub fn boundary_counts(labels: &[Option<u32>], width: usize, height: usize) -> Result<BTreeMap<(usize, usize), u64>> {
    if labels.len() != width * height {
        return Err(Error::DimensionMismatch {
            expected: width * height,
            found: labels.len(),
        });
    }
    let mut counts: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    let mut bump = |a: u32, b: Option<u32>| {
        if let Some(b) = b {
            if a != b {
                let key = (a.min(b) as usize, a.max(b) as usize);
                *counts.entry(key).or_default() += 1;
            }
        }
    };
    for y in 0..height {
        for x in 0..width {
            let Some(a) = labels[y * width + x] else { continue };
            // Forward half of the 8-neighborhood so each pixel pair is seen once.
            if x + 1 < width {
                bump(a, labels[y * width + x + 1]);
            }
            if y + 1 < height {
                let below = (y + 1) * width;
                bump(a, labels[below + x]);
                if x + 1 < width {
                    bump(a, labels[below + x + 1]);
                }
                if x > 0 {
                    bump(a, labels[below + x - 1]);
                }
            }
        }
    }
    Ok(counts)
}

/// Minimum shared boundary length for two clusters to count as adjacent.
pub fn min_boundary(foreground_pixels: usize) -> u64 {
    MIN_BOUNDARY_PAIRS.max((foreground_pixels as f64 * MIN_BOUNDARY_FRACTION).ceil() as u64)
}

/// Cluster pairs whose shared 8-connected boundary reaches [`min_boundary`].
pub fn build_adjacency(labels: &[Option<u32>], width: usize, height: usize) -> Result<BTreeSet<(usize, usize)>> {
    let threshold = min_boundary(labels.iter().filter(|l| l.is_some()).count());
    Ok(boundary_counts(labels, width, height)?
        .into_iter()
        .filter(|&(_, n)| n >= threshold)
        .map(|(pair, _)| pair)
        .collect())
}

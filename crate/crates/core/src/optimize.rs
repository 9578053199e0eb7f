//! Dark-mode palette search.
//!
//! The energy of a candidate palette is a weighted sum of three losses, each
//! averaged so its scale does not depend on the number of colors:
//!
//! * luminance contrast consistency: per color, the lightness gap to the dark
//!   background should match the gap to the light background;
//! * color consistency: ΔE2000 between each light color and its dark twin;
//! * adjacent difference consistency: for every adjacent cluster pair, the
//!   ΔE2000 between the pair should survive the transform.
//!
//! [`anneal`] minimizes it with simulated annealing over LCh perturbations.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::color::{delta_e_2000, lch_to_srgb_checked, normalize_hue, srgb_to_lab, LabColor, LchColor, Rgb8};
use crate::error::{Error, Result};
use crate::palette::{BackgroundSpec, ExtractedPalette};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Weights {
    /// Luminance contrast consistency.
    pub w_lc: f64,
    /// Color consistency.
    pub w_cc: f64,
    /// Adjacent color difference consistency.
    pub w_ac: f64,
}

impl Weights {
    pub const fn new(w_lc: f64, w_cc: f64, w_ac: f64) -> Self {
        Self { w_lc, w_cc, w_ac }
    }

    pub fn validate(&self) -> Result<()> {
        let all = [self.w_lc, self.w_cc, self.w_ac];
        if all.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::InvalidConfig(format!(
                "weights must be finite and non-negative, got {all:?}"
            )));
        }
        if all.iter().all(|&w| w == 0.0) {
            return Err(Error::InvalidConfig("at least one weight must be positive".into()));
        }
        Ok(())
    }
}

impl Default for Weights {
    fn default() -> Self {
        Self::new(1.0, 1.0, 1.0)
    }
}

/// Half-widths of the uniform perturbation applied to one LCh channel.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PerturbBounds {
    pub lightness: f64,
    pub chroma: f64,
    /// Degrees.
    pub hue: f64,
}

impl Default for PerturbBounds {
    fn default() -> Self {
        Self {
            lightness: 20.0,
            chroma: 20.0,
            hue: 50.0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SaConfig {
    pub t0: f64,
    pub alpha: f64,
    pub iterations: usize,
    pub max_perturb_attempts: usize,
    pub seed: u64,
    pub bounds: PerturbBounds,
}

impl Default for SaConfig {
    fn default() -> Self {
        Self {
            t0: 10_000.0,
            alpha: 0.99,
            iterations: 20_000,
            max_perturb_attempts: 100,
            seed: 42,
            bounds: PerturbBounds::default(),
        }
    }
}

impl SaConfig {
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidConfig(msg));
        if !(self.t0 > 0.0 && self.t0.is_finite()) {
            return fail(format!("t0 must be positive, got {}", self.t0));
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return fail(format!("alpha must lie in (0, 1), got {}", self.alpha));
        }
        if self.iterations == 0 {
            return fail("iterations must be at least 1".into());
        }
        if self.max_perturb_attempts == 0 {
            return fail("max_perturb_attempts must be at least 1".into());
        }
        let b = self.bounds;
        if [b.lightness, b.chroma, b.hue].iter().any(|v| !v.is_finite() || *v < 0.0) {
            return fail(format!("perturbation bounds must be non-negative, got {b:?}"));
        }
        Ok(())
    }
}

/// A candidate dark palette, index-aligned with the light centroids.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PaletteState {
    pub colors: Vec<LchColor>,
    pub energy: f64,
}

impl PaletteState {
    /// 8-bit colors of the palette. Colors produced by the optimizer are in
    /// gamut; anything else is clipped.
    pub fn to_rgb(&self) -> Vec<Rgb8> {
        self.colors
            .iter()
            .map(|&c| {
                lch_to_srgb_checked(c).unwrap_or_else(|_| crate::color::lab_to_srgb_clamped(c.to_lab()))
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct EnergyComponents {
    pub lc: f64,
    pub cc: f64,
    pub ac: f64,
}

impl EnergyComponents {
    pub fn weighted(&self, w: &Weights) -> f64 {
        w.w_lc * self.lc + w.w_cc * self.cc + w.w_ac * self.ac
    }
}

fn mean(values: impl Iterator<Item = f64>) -> f64 {
    let (sum, n) = values.fold((0.0, 0usize), |(s, n), v| (s + v, n + 1));
    if n == 0 {
        0.0
    } else {
        sum / n as f64
    }
}

fn check_aligned(light: usize, dark: usize) {
    assert_eq!(light, dark, "light and dark palettes must be index-aligned");
}

/// `| |L_bg_light - L_light| - |L_dark - L_bg_dark| |` for one color.
pub fn lc_term(bg_light: f64, light: f64, dark: f64, bg_dark: f64) -> f64 {
    ((bg_light - light).abs() - (dark - bg_dark).abs()).abs()
}

/// Mean of [`lc_term`] over the palette.
pub fn loss_lc(light: &[LchColor], dark: &[LchColor], bg: &BackgroundSpec) -> f64 {
    check_aligned(light.len(), dark.len());
    let bg_light = srgb_to_lab(bg.light_bg).l;
    let bg_dark = srgb_to_lab(bg.dark_bg).l;
    mean(
        light
            .iter()
            .zip(dark)
            .map(|(l, d)| lc_term(bg_light, l.l, d.l, bg_dark)),
    )
}

/// Mean ΔE2000 between each light color and its dark counterpart.
pub fn loss_cc(light: &[LchColor], dark: &[LchColor]) -> f64 {
    check_aligned(light.len(), dark.len());
    mean(light.iter().zip(dark).map(|(l, d)| delta_e_2000(l.to_lab(), d.to_lab())))
}

/// Mean over adjacent pairs of the change in their ΔE2000 separation.
pub fn loss_ac(light: &[LchColor], dark: &[LchColor], adjacency: &BTreeSet<(usize, usize)>) -> f64 {
    check_aligned(light.len(), dark.len());
    mean(adjacency.iter().map(|&(i, j)| {
        let before = delta_e_2000(light[i].to_lab(), light[j].to_lab());
        let after = delta_e_2000(dark[i].to_lab(), dark[j].to_lab());
        (before - after).abs()
    }))
}

pub fn total_energy(
    light: &[LchColor],
    dark: &[LchColor],
    adjacency: &BTreeSet<(usize, usize)>,
    bg: &BackgroundSpec,
    weights: &Weights,
) -> f64 {
    EnergyComponents {
        lc: loss_lc(light, dark, bg),
        cc: loss_cc(light, dark),
        ac: loss_ac(light, dark, adjacency),
    }
    .weighted(weights)
}

/// The energy function with everything that depends only on the light
/// palette precomputed.
#[derive(Clone, Debug)]
pub struct Objective {
    light_lab: Vec<LabColor>,
    light_contrast: Vec<f64>,
    bg_dark_l: f64,
    pairs: Vec<(usize, usize)>,
    light_pair_delta: Vec<f64>,
    weights: Weights,
}

impl Objective {
    pub fn new(light: &[LchColor], adjacency: &BTreeSet<(usize, usize)>, bg: &BackgroundSpec, weights: Weights) -> Self {
        let light_lab: Vec<LabColor> = light.iter().map(|c| c.to_lab()).collect();
        let bg_light_l = srgb_to_lab(bg.light_bg).l;
        let pairs: Vec<(usize, usize)> = adjacency.iter().copied().collect();
        let light_pair_delta = pairs
            .iter()
            .map(|&(i, j)| delta_e_2000(light_lab[i], light_lab[j]))
            .collect();
        Self {
            light_contrast: light.iter().map(|c| (bg_light_l - c.l).abs()).collect(),
            bg_dark_l: srgb_to_lab(bg.dark_bg).l,
            light_lab,
            pairs,
            light_pair_delta,
            weights,
        }
    }

    pub fn len(&self) -> usize {
        self.light_lab.len()
    }

    pub fn is_empty(&self) -> bool {
        self.light_lab.is_empty()
    }

    pub fn components(&self, dark: &[LchColor]) -> EnergyComponents {
        check_aligned(self.len(), dark.len());
        let dark_lab: Vec<LabColor> = dark.iter().map(|c| c.to_lab()).collect();
        EnergyComponents {
            lc: mean(
                self.light_contrast
                    .iter()
                    .zip(dark)
                    .map(|(contrast, d)| (contrast - (d.l - self.bg_dark_l).abs()).abs()),
            ),
            cc: mean(self.light_lab.iter().zip(&dark_lab).map(|(&l, &d)| delta_e_2000(l, d))),
            ac: mean(
                self.pairs
                    .iter()
                    .zip(&self.light_pair_delta)
                    .map(|(&(i, j), before)| (before - delta_e_2000(dark_lab[i], dark_lab[j])).abs()),
            ),
        }
    }

    pub fn energy(&self, dark: &[LchColor]) -> f64 {
        self.components(dark).weighted(&self.weights)
    }
}

/// Perturbs one randomly chosen LCh channel, retrying until the result is
/// displayable. Returns `c` unchanged after `max_attempts` gamut failures.
pub fn perturb_color(c: LchColor, rng: &mut impl Rng, bounds: &PerturbBounds, max_attempts: usize) -> LchColor {
    let jitter = |rng: &mut dyn rand::RngCore, bound: f64| {
        if bound == 0.0 {
            0.0
        } else {
            rng.random_range(-bound..=bound)
        }
    };
    for _ in 0..max_attempts {
        let mut candidate = c;
        match rng.random_range(0..3u8) {
            0 => candidate.l = (c.l + jitter(rng, bounds.lightness)).clamp(0.0, 100.0),
            1 => candidate.c = (c.c + jitter(rng, bounds.chroma)).clamp(0.0, 100.0),
            _ => candidate.h = normalize_hue(c.h + jitter(rng, bounds.hue)),
        }
        if lch_to_srgb_checked(candidate).is_ok() {
            return candidate;
        }
    }
    c
}

/// Metropolis test for a move that does not lower the energy.
pub fn accept_worse(delta: f64, temperature: f64, rng: &mut impl Rng) -> bool {
    let p = (-delta / temperature).exp();
    rng.random::<f64>() < p
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnnealOutcome {
    pub best: PaletteState,
    pub initial_energy: f64,
    /// Best energy after each iteration.
    pub trace: Vec<f64>,
    pub accepted_worse: usize,
    pub final_temperature: f64,
}

impl AnnealOutcome {
    /// Every `step`-th entry of the trace, always including the last.
    pub fn trace_summary(&self, step: usize) -> Vec<f64> {
        let step = step.max(1);
        let mut out: Vec<f64> = self.trace.iter().skip(step - 1).step_by(step).copied().collect();
        if !self.trace.len().is_multiple_of(step) {
            out.extend(self.trace.last());
        }
        out
    }
}

/// Progress snapshot passed to [`anneal_with_progress`] callbacks.
#[derive(Clone, Copy, Debug)]
pub struct Progress {
    pub iteration: usize,
    pub temperature: f64,
    pub current_energy: f64,
    pub best_energy: f64,
}

/// Optimizes a dark palette starting from the extracted light centroids.
pub fn anneal(palette: &ExtractedPalette, bg: &BackgroundSpec, weights: &Weights, cfg: &SaConfig) -> Result<AnnealOutcome> {
    anneal_with_progress(palette, bg, weights, cfg, 0, |_| {})
}

/// Like [`anneal`], calling `on_progress` every `every` iterations (never when 0).
pub fn anneal_with_progress(
    palette: &ExtractedPalette,
    bg: &BackgroundSpec,
    weights: &Weights,
    cfg: &SaConfig,
    every: usize,
    on_progress: impl FnMut(Progress),
) -> Result<AnnealOutcome> {
    let light: Vec<LchColor> = palette.centroids.iter().map(|c| c.to_lch()).collect();
    anneal_colors(&light, &palette.adjacency, bg, weights, cfg, every, on_progress)
}

/// Annealing over an explicit light palette.
pub fn anneal_colors(
    light: &[LchColor],
    adjacency: &BTreeSet<(usize, usize)>,
    bg: &BackgroundSpec,
    weights: &Weights,
    cfg: &SaConfig,
    every: usize,
    mut on_progress: impl FnMut(Progress),
) -> Result<AnnealOutcome> {
    cfg.validate()?;
    weights.validate()?;
    bg.validate()?;
    if light.is_empty() {
        return Err(Error::InvalidConfig("palette is empty".into()));
    }
    if let Some(&(i, j)) = adjacency.iter().find(|&&(i, j)| i == j || i >= light.len() || j >= light.len()) {
        return Err(Error::InvalidConfig(format!("adjacency pair ({i}, {j}) is invalid")));
    }

    let objective = Objective::new(light, adjacency, bg, *weights);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);

    let mut current = light.to_vec();
    let mut current_energy = objective.energy(&current);
    let initial_energy = current_energy;
    let mut best = current.clone();
    let mut best_energy = current_energy;
    let mut temperature = cfg.t0;
    let mut trace = Vec::with_capacity(cfg.iterations);
    let mut accepted_worse = 0;
    let mut candidate = current.clone();

    for iteration in 1..=cfg.iterations {
        let index = rng.random_range(0..current.len());
        candidate.copy_from_slice(&current);
        candidate[index] = perturb_color(current[index], &mut rng, &cfg.bounds, cfg.max_perturb_attempts);
        let candidate_energy = objective.energy(&candidate);

        if candidate_energy < current_energy {
            current.copy_from_slice(&candidate);
            current_energy = candidate_energy;
            if candidate_energy < best_energy {
                best.copy_from_slice(&candidate);
                best_energy = candidate_energy;
            }
        } else if accept_worse(candidate_energy - current_energy, temperature, &mut rng) {
            current.copy_from_slice(&candidate);
            current_energy = candidate_energy;
            accepted_worse += 1;
        }

        temperature *= cfg.alpha;
        trace.push(best_energy);
        if every > 0 && iteration % every == 0 {
            on_progress(Progress {
                iteration,
                temperature,
                current_energy,
                best_energy,
            });
        }
    }

    Ok(AnnealOutcome {
        best: PaletteState {
            colors: best,
            energy: best_energy,
        },
        initial_energy,
        trace,
        accepted_worse,
        final_temperature: temperature,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn lch(l: f64, c: f64, h: f64) -> LchColor {
        LchColor::new(l, c, h)
    }

    fn white_to_black() -> BackgroundSpec {
        BackgroundSpec::new(Rgb8::WHITE, Rgb8::BLACK)
    }

    #[test]
    fn lc_matching_contrast_is_zero() {
        assert_abs_diff_eq!(loss_lc(&[lch(40.0, 0.0, 0.0)], &[lch(60.0, 0.0, 0.0)], &white_to_black()), 0.0, epsilon = 1e-9);
    }

    #[test]
    fn lc_gap_with_lifted_dark_background() {
        assert_eq!(lc_term(100.0, 40.0, 60.0, 10.0), 10.0);
        assert_eq!(lc_term(100.0, 40.0, 60.0, 0.0), 0.0);
        let dark_bg = Rgb8::new(27, 27, 27);
        let bg_l = srgb_to_lab(dark_bg).l;
        let bg = BackgroundSpec::new(Rgb8::WHITE, dark_bg);
        let got = loss_lc(&[lch(40.0, 0.0, 0.0)], &[lch(60.0, 0.0, 0.0)], &bg);
        assert_abs_diff_eq!(got, bg_l, epsilon = 1e-9);
    }

    #[test]
    fn lc_unchanged_palette_on_black() {
        let light = [lch(30.0, 10.0, 20.0), lch(75.0, 0.0, 0.0)];
        let want = ((100.0f64 - 60.0).abs() + (100.0f64 - 150.0).abs()) / 2.0;
        assert_abs_diff_eq!(loss_lc(&light, &light, &white_to_black()), want, epsilon = 1e-9);
    }

    #[test]
    fn cc_identity_and_verification_pair() {
        let light = [lch(50.0, 30.0, 200.0)];
        assert_eq!(loss_cc(&light, &light), 0.0);
        let a = LabColor::new(50.0, 2.6772, -79.7751).to_lch();
        let b = LabColor::new(50.0, 0.0, -82.7485).to_lch();
        assert_abs_diff_eq!(loss_cc(&[a], &[b]), 2.0425, epsilon = 1e-4);
    }

    #[test]
    fn cc_is_order_free() {
        let light = [lch(50.0, 30.0, 20.0), lch(70.0, 10.0, 100.0), lch(20.0, 5.0, 300.0)];
        let dark = [lch(55.0, 25.0, 30.0), lch(40.0, 12.0, 90.0), lch(80.0, 0.0, 0.0)];
        let perm = [2, 0, 1];
        let pl: Vec<_> = perm.iter().map(|&i| light[i]).collect();
        let pd: Vec<_> = perm.iter().map(|&i| dark[i]).collect();
        assert_abs_diff_eq!(loss_cc(&light, &dark), loss_cc(&pl, &pd), epsilon = 1e-12);
    }

    #[test]
    fn ac_cases() {
        let light = [lch(50.0, 40.0, 30.0), lch(60.0, 30.0, 250.0)];
        let adj = BTreeSet::from([(0, 1)]);
        assert_eq!(loss_ac(&light, &light, &adj), 0.0);
        let dark = [lch(60.0, 35.0, 40.0), lch(55.0, 30.0, 240.0)];
        assert_eq!(loss_ac(&light, &dark, &BTreeSet::new()), 0.0);
        let d1 = delta_e_2000(light[0].to_lab(), light[1].to_lab());
        let d2 = delta_e_2000(dark[0].to_lab(), dark[1].to_lab());
        assert_abs_diff_eq!(loss_ac(&light, &dark, &adj), (d1 - d2).abs(), epsilon = 1e-12);
    }

    #[test]
    fn weighted_sum() {
        let parts = EnergyComponents { lc: 10.0, cc: 5.0, ac: 2.0 };
        assert_eq!(parts.weighted(&Weights::new(1.0, 1.0, 1.0)), 17.0);
        assert_eq!(parts.weighted(&Weights::new(1.0, 0.0, 0.0)), 10.0);
        assert_eq!(parts.weighted(&Weights::new(2.0, 2.0, 2.0)), 34.0);
    }

    #[test]
    fn objective_matches_free_functions() {
        let light = [lch(30.0, 40.0, 20.0), lch(70.0, 20.0, 140.0), lch(50.0, 0.0, 0.0)];
        let dark = [lch(70.0, 35.0, 25.0), lch(35.0, 25.0, 150.0), lch(50.0, 5.0, 10.0)];
        let adj = BTreeSet::from([(0, 1), (1, 2)]);
        let bg = BackgroundSpec::new(Rgb8::WHITE, Rgb8::new(18, 18, 18));
        let w = Weights::new(1.0, 0.5, 1.5);
        let fast = Objective::new(&light, &adj, &bg, w).energy(&dark);
        assert_abs_diff_eq!(fast, total_energy(&light, &dark, &adj, &bg, &w), epsilon = 1e-12);
    }

    #[test]
    fn scaling_weights_scales_energy() {
        let light = [lch(30.0, 40.0, 20.0), lch(70.0, 20.0, 140.0)];
        let adj = BTreeSet::from([(0, 1)]);
        let bg = white_to_black();
        let candidates = [
            [lch(70.0, 35.0, 25.0), lch(35.0, 25.0, 150.0)],
            [lch(60.0, 30.0, 20.0), lch(40.0, 20.0, 140.0)],
            light,
        ];
        let w = Weights::default();
        let w2 = Weights::new(2.0, 2.0, 2.0);
        let e1: Vec<f64> = candidates.iter().map(|c| total_energy(&light, c, &adj, &bg, &w)).collect();
        let e2: Vec<f64> = candidates.iter().map(|c| total_energy(&light, c, &adj, &bg, &w2)).collect();
        for (a, b) in e1.iter().zip(&e2) {
            assert_abs_diff_eq!(2.0 * a, *b, epsilon = 1e-9);
        }
        let argmin = |e: &[f64]| (0..e.len()).min_by(|&i, &j| e[i].total_cmp(&e[j])).unwrap();
        assert_eq!(argmin(&e1), argmin(&e2));
    }

    #[test]
    fn perturbation_stays_in_gamut_and_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let bounds = PerturbBounds::default();
        let start = Rgb8::new(214, 39, 40).to_lch();
        let mut c = start;
        for _ in 0..2000 {
            let next = perturb_color(c, &mut rng, &bounds, 100);
            assert!(lch_to_srgb_checked(next).is_ok());
            let changed = [next.l != c.l, next.c != c.c, next.h != c.h];
            assert!(changed.iter().filter(|&&x| x).count() <= 1);
            assert!((next.l - c.l).abs() <= 20.0 + 1e-12);
            assert!((next.c - c.c).abs() <= 20.0 + 1e-12);
            assert!(crate::color::hue_delta(c.h, next.h).abs() <= 50.0 + 1e-9);
            assert!((0.0..360.0).contains(&next.h));
            c = next;
        }
    }

    #[test]
    fn perturbation_gives_up_after_max_attempts() {
        // Pure blue is on the gamut boundary; with zero attempts nothing changes.
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let c = Rgb8::new(0, 0, 255).to_lch();
        assert_eq!(perturb_color(c, &mut rng, &PerturbBounds::default(), 0), c);
    }

    #[test]
    fn perturbation_is_seeded() {
        let run = || {
            let mut rng = ChaCha8Rng::seed_from_u64(99);
            let mut c = lch(50.0, 20.0, 100.0);
            (0..50)
                .map(|_| {
                    c = perturb_color(c, &mut rng, &PerturbBounds::default(), 100);
                    c
                })
                .collect::<Vec<_>>()
        };
        assert_eq!(run(), run());
    }

    #[test]
    fn invalid_configs_rejected() {
        let bad = [
            SaConfig { t0: 0.0, ..SaConfig::default() },
            SaConfig { alpha: 1.0, ..SaConfig::default() },
            SaConfig { alpha: 0.0, ..SaConfig::default() },
            SaConfig { iterations: 0, ..SaConfig::default() },
            SaConfig { max_perturb_attempts: 0, ..SaConfig::default() },
        ];
        for cfg in bad {
            assert!(matches!(cfg.validate(), Err(Error::InvalidConfig(_))), "{cfg:?}");
        }
        assert!(Weights::new(0.0, 0.0, 0.0).validate().is_err());
        assert!(Weights::new(-1.0, 1.0, 0.0).validate().is_err());
        assert!(Weights::new(f64::NAN, 1.0, 0.0).validate().is_err());
    }

    #[test]
    fn anneal_rejects_bad_adjacency() {
        let light = [lch(50.0, 0.0, 0.0)];
        let adj = BTreeSet::from([(0, 1)]);
        let cfg = SaConfig { iterations: 10, ..SaConfig::default() };
        assert!(anneal_colors(&light, &adj, &white_to_black(), &Weights::default(), &cfg, 0, |_| {}).is_err());
    }

    #[test]
    fn anneal_improves_and_traces() {
        let light: Vec<LchColor> = [Rgb8::new(31, 119, 180), Rgb8::new(255, 127, 14), Rgb8::new(44, 160, 44)]
            .iter()
            .map(|c| c.to_lch())
            .collect();
        let adj = BTreeSet::from([(0, 1), (1, 2)]);
        let cfg = SaConfig { iterations: 3000, ..SaConfig::default() };
        let mut calls = 0;
        let out = anneal_colors(&light, &adj, &white_to_black(), &Weights::default(), &cfg, 1000, |_| calls += 1).unwrap();
        assert_eq!(calls, 3);
        assert_eq!(out.trace.len(), 3000);
        assert!(out.best.energy <= out.initial_energy);
        assert!(out.trace.windows(2).all(|w| w[1] <= w[0]));
        let recomputed = total_energy(&light, &out.best.colors, &adj, &white_to_black(), &Weights::default());
        assert_abs_diff_eq!(*out.trace.last().unwrap(), recomputed, epsilon = 1e-9);
        assert!(out.best.colors.iter().all(|&c| lch_to_srgb_checked(c).is_ok()));
        assert_eq!(out.trace_summary(1000).len(), 3);
    }
}

use std::collections::BTreeSet;

use duskify::color::{lch_to_srgb_checked, LchColor};
use duskify::evaluate::{color_difference_score, contrast_compliance, evaluate_conditions};
use duskify::optimize::{anneal_colors, total_energy, SaConfig, Weights};
use duskify::palette::{build_adjacency, BackgroundSpec};
use duskify::{apply_palette, extract_palette, invert_image, mask_background, PixelImage, RenderMode, Rgb8};
use proptest::prelude::*;

const INKS: [Rgb8; 5] = [
    Rgb8::new(31, 119, 180),
    Rgb8::new(255, 127, 14),
    Rgb8::new(44, 160, 44),
    Rgb8::new(51, 51, 51),
    Rgb8::new(150, 110, 200),
];

fn rgb() -> impl Strategy<Value = Rgb8> {
    any::<[u8; 3]>().prop_map(|[r, g, b]| Rgb8::new(r, g, b))
}

/// Small chart-like images: mostly white with blocks of a few inks, plus some noise.
fn chart() -> impl Strategy<Value = PixelImage> {
    (4usize..24, 4usize..24).prop_flat_map(|(w, h)| {
        let px = prop_oneof![
            4 => Just(Rgb8::WHITE),
            4 => (0..INKS.len()).prop_map(|i| INKS[i]),
            1 => rgb(),
        ];
        proptest::collection::vec(px, w * h).prop_map(move |pixels| {
            let mut pixels = pixels;
            pixels[0] = INKS[0];
            PixelImage::new(w, h, pixels).unwrap()
        })
    })
}

fn palette_and_adjacency() -> impl Strategy<Value = (Vec<LchColor>, BTreeSet<(usize, usize)>)> {
    proptest::collection::vec(rgb(), 1..6).prop_flat_map(|colors| {
        let n = colors.len();
        let light: Vec<LchColor> = colors.iter().map(|c| c.to_lch()).collect();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let m = pairs.len();
        proptest::collection::vec(any::<bool>(), m).prop_map(move |keep| {
            let adj = pairs.iter().zip(keep).filter(|(_, k)| *k).map(|(p, _)| *p).collect();
            (light.clone(), adj)
        })
    })
}

fn short(seed: u64) -> SaConfig {
    SaConfig {
        iterations: 300,
        seed,
        ..SaConfig::default()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn clustering_invariants(img in chart(), k in 1usize..6, seed in any::<u64>()) {
        let mask = mask_background(&img, &BackgroundSpec::default()).unwrap();
        let p = extract_palette(&img, &mask, k, seed).unwrap();
        prop_assert_eq!(p.foreground_pixels() as usize, mask.foreground_count());
        prop_assert!(p.k() <= k);

        let mut sums = vec![[0f64; 3]; p.k()];
        for (px, label) in img.pixels().iter().zip(&p.labels) {
            if let Some(j) = label {
                for (s, v) in sums[*j as usize].iter_mut().zip(px.to_array()) {
                    *s += v as f64;
                }
            }
        }
        for ((sum, centroid), &count) in sums.iter().zip(&p.centroids).zip(&p.counts) {
            for (s, c) in sum.iter().zip(centroid.to_array()) {
                prop_assert!((c as f64 - s / count as f64).abs() <= 0.5);
            }
        }
        for w in p.stats.objective_trace.windows(2) {
            prop_assert!(w[1] <= w[0] * (1.0 + 1e-12));
        }
        for &(i, j) in &p.adjacency {
            prop_assert!(i < j && j < p.k());
        }

        let (w, h) = (img.width(), img.height());
        let mut mirrored = vec![None; p.labels.len()];
        for y in 0..h {
            for x in 0..w {
                mirrored[y * w + (w - 1 - x)] = p.labels[y * w + x];
            }
        }
        prop_assert_eq!(&build_adjacency(&mirrored, w, h).unwrap(), &p.adjacency);
        prop_assert_eq!(&extract_palette(&img, &mask, k, seed).unwrap(), &p);
    }

    #[test]
    fn labels_follow_mask(img in chart()) {
        let mask = mask_background(&img, &BackgroundSpec::default()).unwrap();
        let p = extract_palette(&img, &mask, 3, 1).unwrap();
        for (i, label) in p.labels.iter().enumerate() {
            prop_assert_eq!(label.is_some(), mask.is_foreground(i));
        }
    }

    #[test]
    fn annealing_invariants((light, adj) in palette_and_adjacency(), seed in any::<u64>(),
                            w in (0.0f64..2.0, 0.0f64..2.0, 0.0f64..2.0)) {
        let bg = BackgroundSpec::default();
        let weights = Weights::new(w.0, w.1, w.2);
        let out = anneal_colors(&light, &adj, &bg, &weights, &short(seed), 0, |_| {}).unwrap();
        for c in &out.best.colors {
            prop_assert!(lch_to_srgb_checked(*c).is_ok());
        }
        prop_assert!(out.trace.windows(2).all(|p| p[1] <= p[0]));
        let final_energy = *out.trace.last().unwrap();
        prop_assert!((final_energy - total_energy(&light, &out.best.colors, &adj, &bg, &weights)).abs() < 1e-9);
        prop_assert!(out.best.energy <= out.initial_energy);
        let again = anneal_colors(&light, &adj, &bg, &weights, &short(seed), 0, |_| {}).unwrap();
        prop_assert_eq!(again, out);
    }

    #[test]
    fn color_consistency_alone_is_fixed_point((light, adj) in palette_and_adjacency(), seed in any::<u64>()) {
        let out = anneal_colors(&light, &adj, &BackgroundSpec::default(), &Weights::new(0.0, 1.0, 0.0), &short(seed), 0, |_| {}).unwrap();
        prop_assert!(out.best.energy < 1e-9);
    }

    #[test]
    fn recolor_keeps_background(img in chart(), residual in any::<bool>(), dark_bg in rgb()) {
        let bg = BackgroundSpec::new(Rgb8::WHITE, dark_bg);
        let mask = mask_background(&img, &bg).unwrap();
        let p = extract_palette(&img, &mask, 3, 2).unwrap();
        let dark = anneal_colors(
            &p.centroids.iter().map(|c| c.to_lch()).collect::<Vec<_>>(),
            &p.adjacency, &bg, &Weights::default(), &short(3), 0, |_| {},
        ).unwrap().best;
        let mode = if residual { RenderMode::Residual } else { RenderMode::Quantize };
        let out = apply_palette(&img, &mask, &p, &dark, &bg, mode).unwrap();
        for (i, px) in out.pixels().iter().enumerate() {
            if !mask.is_foreground(i) {
                prop_assert_eq!(*px, dark_bg);
            }
        }
    }

    #[test]
    fn inversion_is_involution(img in chart()) {
        prop_assert_eq!(invert_image(&invert_image(&img)), img);
    }

    #[test]
    fn compliance_ignores_palette_order(colors in proptest::collection::vec((rgb(), 1u64..1000), 1..8),
                                        bg in rgb(), rot in 0usize..8) {
        let (c, n): (Vec<Rgb8>, Vec<u64>) = colors.iter().copied().unzip();
        let mut rotated = colors.clone();
        rotated.rotate_left(rot % colors.len());
        let (rc, rn): (Vec<Rgb8>, Vec<u64>) = rotated.into_iter().unzip();
        let a = contrast_compliance(&c, &n, bg);
        let b = contrast_compliance(&rc, &rn, bg);
        prop_assert!((a.score - b.score).abs() < 1e-9);
        prop_assert!((1.0..=21.0).contains(&a.score));
        prop_assert_eq!(color_difference_score(&c, &c, &n), 0.0);
    }

    #[test]
    fn light_condition_has_no_color_difference(img in chart()) {
        let bg = BackgroundSpec::default();
        let mask = mask_background(&img, &bg).unwrap();
        let p = extract_palette(&img, &mask, 3, 5).unwrap();
        let m = evaluate_conditions(&p, &p.centroids, &bg);
        prop_assert_eq!(m.light.color_difference, 0.0);
    }
}

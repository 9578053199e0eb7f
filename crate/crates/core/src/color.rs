//! Colorimetry kernel: sRGB, CIELAB and CIELCh(ab) conversions, the CIEDE2000
//! color difference, and WCAG relative luminance / contrast ratio.
//!
//! All conversions use the D65 white point and the 2° observer. The white
//! point is derived from the sRGB matrix itself so that `#FFFFFF` lands on
//! `L = 100, a = b = 0` without rounding residue.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// An 8-bit sRGB color.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rgb8 {
    pub r: u8,
    pub g: u8,
    pub b: u8,
}

impl Rgb8 {
    pub const WHITE: Rgb8 = Rgb8::new(255, 255, 255);
    pub const BLACK: Rgb8 = Rgb8::new(0, 0, 0);

    pub const fn new(r: u8, g: u8, b: u8) -> Self {
        Self { r, g, b }
    }

    pub const fn to_array(self) -> [u8; 3] {
        [self.r, self.g, self.b]
    }

    /// Channel-wise `255 - c`.
    pub const fn inverted(self) -> Self {
        Self::new(255 - self.r, 255 - self.g, 255 - self.b)
    }

    pub fn to_hex(self) -> String {
        format!("#{:02X}{:02X}{:02X}", self.r, self.g, self.b)
    }

    pub fn to_lab(self) -> LabColor {
        srgb_to_lab(self)
    }

    pub fn to_lch(self) -> LchColor {
        lab_to_lch(srgb_to_lab(self))
    }

    /// Alpha-composites `(self, alpha)` over an opaque background.
    pub fn over(self, alpha: u8, background: Rgb8) -> Rgb8 {
        let a = alpha as u32;
        let mix = |fg: u8, bg: u8| ((fg as u32 * a + bg as u32 * (255 - a) + 127) / 255) as u8;
        Rgb8::new(
            mix(self.r, background.r),
            mix(self.g, background.g),
            mix(self.b, background.b),
        )
    }
}

impl From<[u8; 3]> for Rgb8 {
    fn from(c: [u8; 3]) -> Self {
        Rgb8::new(c[0], c[1], c[2])
    }
}

impl fmt::Display for Rgb8 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

/// Parses `#RRGGBB`, `RRGGBB`, `#RGB` or `RGB` (case-insensitive).
impl FromStr for Rgb8 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || Error::InvalidHex(s.to_string());
        let digits = s.trim().strip_prefix('#').unwrap_or(s.trim());
        if !digits.chars().all(|c| c.is_ascii_hexdigit()) {
            return Err(bad());
        }
        let channel = |i: usize, w: usize| u8::from_str_radix(&digits[i * w..(i + 1) * w], 16);
        match digits.len() {
            6 => Ok(Rgb8::new(
                channel(0, 2).map_err(|_| bad())?,
                channel(1, 2).map_err(|_| bad())?,
                channel(2, 2).map_err(|_| bad())?,
            )),
            3 => {
                let short = |i| channel(i, 1).map(|v| v * 17).map_err(|_| bad());
                Ok(Rgb8::new(short(0)?, short(1)?, short(2)?))
            }
            _ => Err(bad()),
        }
    }
}

impl Serialize for Rgb8 {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_hex())
    }
}

impl<'de> Deserialize<'de> for Rgb8 {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// CIELAB coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct LabColor {
    pub l: f64,
    pub a: f64,
    pub b: f64,
}

impl LabColor {
    pub const fn new(l: f64, a: f64, b: f64) -> Self {
        Self { l, a, b }
    }

    pub fn to_lch(self) -> LchColor {
        lab_to_lch(self)
    }
}

/// Cylindrical CIELAB: lightness, chroma, hue angle in degrees.
#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct LchColor {
    pub l: f64,
    pub c: f64,
    pub h: f64,
}

impl LchColor {
    pub const fn new(l: f64, c: f64, h: f64) -> Self {
        Self { l, c, h }
    }

    pub fn to_lab(self) -> LabColor {
        lch_to_lab(self)
    }
}

/// The color has no representation inside the sRGB cube.
#[derive(Clone, Copy, Debug, PartialEq, thiserror::Error)]
#[error("color is outside the sRGB gamut")]
pub struct OutOfGamut;

// sRGB (IEC 61966-2-1) primaries, D65.
const RGB_TO_XYZ: [[f64; 3]; 3] = [
    [0.4124564, 0.3575761, 0.1804375],
    [0.2126729, 0.7151522, 0.0721750],
    [0.0193339, 0.1191920, 0.9503041],
];

const XYZ_TO_RGB: [[f64; 3]; 3] = [
    [3.2404548360214087, -1.5371388501025751, -0.498531546868481],
    [-0.9692663898756538, 1.876010928842491, 0.04155608234667355],
    [0.05564341960421367, -0.20402585426769818, 1.057225162457929],
];

const CIE_EPSILON: f64 = 216.0 / 24389.0;
const CIE_KAPPA: f64 = 24389.0 / 27.0;

/// Slack on the `[0, 1]` linear-RGB test that absorbs floating-point residue
/// from the matrix round trip.
const GAMUT_SLACK: f64 = 1e-9;

fn mat_mul(m: &[[f64; 3]; 3], v: [f64; 3]) -> [f64; 3] {
    [
        m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2],
        m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2],
        m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2],
    ]
}

fn white_point() -> [f64; 3] {
    mat_mul(&RGB_TO_XYZ, [1.0, 1.0, 1.0])
}

/// sRGB electro-optical transfer function, `[0, 1]` encoded to linear.
pub fn srgb_to_linear(v: f64) -> f64 {
    if v <= 0.04045 {
        v / 12.92
    } else {
        ((v + 0.055) / 1.055).powf(2.4)
    }
}

pub fn linear_to_srgb(v: f64) -> f64 {
    if v <= 0.0031308 {
        v * 12.92
    } else {
        1.055 * v.powf(1.0 / 2.4) - 0.055
    }
}

fn linear_rgb(c: Rgb8) -> [f64; 3] {
    c.to_array().map(|v| srgb_to_linear(v as f64 / 255.0))
}

fn lab_f(t: f64) -> f64 {
    if t > CIE_EPSILON {
        t.cbrt()
    } else {
        (CIE_KAPPA * t + 16.0) / 116.0
    }
}

fn lab_f_inv(f: f64) -> f64 {
    let cube = f * f * f;
    if cube > CIE_EPSILON {
        cube
    } else {
        (116.0 * f - 16.0) / CIE_KAPPA
    }
}

pub fn srgb_to_lab(c: Rgb8) -> LabColor {
    let xyz = mat_mul(&RGB_TO_XYZ, linear_rgb(c));
    let white = white_point();
    let fx = lab_f(xyz[0] / white[0]);
    let fy = lab_f(xyz[1] / white[1]);
    let fz = lab_f(xyz[2] / white[2]);
    LabColor::new(116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz))
}

/// Unclamped linear-light RGB for a Lab color.
pub fn lab_to_linear_rgb(c: LabColor) -> [f64; 3] {
    let fy = (c.l + 16.0) / 116.0;
    let fx = fy + c.a / 500.0;
    let fz = fy - c.b / 200.0;
    let y = if c.l > CIE_KAPPA * CIE_EPSILON {
        fy * fy * fy
    } else {
        c.l / CIE_KAPPA
    };
    let white = white_point();
    let xyz = [lab_f_inv(fx) * white[0], y * white[1], lab_f_inv(fz) * white[2]];
    mat_mul(&XYZ_TO_RGB, xyz)
}

fn quantize(linear: [f64; 3]) -> Rgb8 {
    let [r, g, b] = linear.map(|v| (linear_to_srgb(v.clamp(0.0, 1.0)) * 255.0).round() as u8);
    Rgb8::new(r, g, b)
}

pub fn lab_to_lch(c: LabColor) -> LchColor {
    let chroma = c.a.hypot(c.b);
    let hue = if chroma == 0.0 {
        0.0
    } else {
        normalize_hue(c.b.atan2(c.a).to_degrees())
    };
    LchColor::new(c.l, chroma, hue)
}

pub fn lch_to_lab(c: LchColor) -> LabColor {
    let (sin, cos) = c.h.to_radians().sin_cos();
    LabColor::new(c.l, c.c * cos, c.c * sin)
}

/// Wraps an angle in degrees into `[0, 360)`.
pub fn normalize_hue(h: f64) -> f64 {
    let wrapped = h.rem_euclid(360.0);
    // rem_euclid can return 360.0 for tiny negative inputs
    if wrapped >= 360.0 {
        0.0
    } else {
        wrapped
    }
}

/// Signed shortest angular distance from `from` to `to`, in `(-180, 180]`.
pub fn hue_delta(from: f64, to: f64) -> f64 {
    let d = normalize_hue(to - from);
    if d > 180.0 {
        d - 360.0
    } else {
        d
    }
}

/// True when the linear-RGB image of `c` lies inside the unit cube.
pub fn in_gamut(c: LabColor) -> bool {
    lab_to_linear_rgb(c)
        .iter()
        .all(|v| (-GAMUT_SLACK..=1.0 + GAMUT_SLACK).contains(v))
}

/// Converts to 8-bit sRGB, refusing colors whose continuous linear-RGB
/// components fall outside `[0, 1]`.
pub fn lch_to_srgb_checked(c: LchColor) -> Result<Rgb8, OutOfGamut> {
    lab_to_srgb_checked(lch_to_lab(c))
}

pub fn lab_to_srgb_checked(c: LabColor) -> Result<Rgb8, OutOfGamut> {
    let linear = lab_to_linear_rgb(c);
    if linear
        .iter()
        .all(|v| (-GAMUT_SLACK..=1.0 + GAMUT_SLACK).contains(v))
    {
        Ok(quantize(linear))
    } else {
        Err(OutOfGamut)
    }
}

/// Converts to 8-bit sRGB, clamping each linear channel into `[0, 1]`.
pub fn lab_to_srgb_clamped(c: LabColor) -> Rgb8 {
    quantize(lab_to_linear_rgb(c))
}

/// CIEDE2000 color difference with `kL = kC = kH = 1`.
pub fn delta_e_2000(c1: LabColor, c2: LabColor) -> f64 {
    const POW25_7: f64 = 6_103_515_625.0; // 25^7

    let c1_ab = c1.a.hypot(c1.b);
    let c2_ab = c2.a.hypot(c2.b);
    let c_bar7 = ((c1_ab + c2_ab) / 2.0).powi(7);
    let g = 0.5 * (1.0 - (c_bar7 / (c_bar7 + POW25_7)).sqrt());

    let a1p = (1.0 + g) * c1.a;
    let a2p = (1.0 + g) * c2.a;
    let c1p = a1p.hypot(c1.b);
    let c2p = a2p.hypot(c2.b);

    let hue_prime = |b: f64, ap: f64| {
        if b == 0.0 && ap == 0.0 {
            0.0
        } else {
            normalize_hue(b.atan2(ap).to_degrees())
        }
    };
    let h1p = hue_prime(c1.b, a1p);
    let h2p = hue_prime(c2.b, a2p);

    let dl = c2.l - c1.l;
    let dc = c2p - c1p;
    let chroma_product = c1p * c2p;
    let dh_angle = if chroma_product == 0.0 {
        0.0
    } else {
        let d = h2p - h1p;
        if d > 180.0 {
            d - 360.0
        } else if d < -180.0 {
            d + 360.0
        } else {
            d
        }
    };
    let dh = 2.0 * chroma_product.sqrt() * (dh_angle.to_radians() / 2.0).sin();

    let l_bar = (c1.l + c2.l) / 2.0;
    let c_bar_p = (c1p + c2p) / 2.0;
    let h_bar_p = if chroma_product == 0.0 {
        h1p + h2p
    } else if (h1p - h2p).abs() <= 180.0 {
        (h1p + h2p) / 2.0
    } else if h1p + h2p < 360.0 {
        (h1p + h2p + 360.0) / 2.0
    } else {
        (h1p + h2p - 360.0) / 2.0
    };

    let t = 1.0 - 0.17 * (h_bar_p - 30.0).to_radians().cos()
        + 0.24 * (2.0 * h_bar_p).to_radians().cos()
        + 0.32 * (3.0 * h_bar_p + 6.0).to_radians().cos()
        - 0.20 * (4.0 * h_bar_p - 63.0).to_radians().cos();

    let l50 = (l_bar - 50.0).powi(2);
    let s_l = 1.0 + 0.015 * l50 / (20.0 + l50).sqrt();
    let s_c = 1.0 + 0.045 * c_bar_p;
    let s_h = 1.0 + 0.015 * c_bar_p * t;

    let d_theta = 30.0 * (-((h_bar_p - 275.0) / 25.0).powi(2)).exp();
    let c_bar_p7 = c_bar_p.powi(7);
    let r_c = 2.0 * (c_bar_p7 / (c_bar_p7 + POW25_7)).sqrt();
    let r_t = -(2.0 * d_theta).to_radians().sin() * r_c;

    let tl = dl / s_l;
    let tc = dc / s_c;
    let th = dh / s_h;
    (tl * tl + tc * tc + th * th + r_t * tc * th).max(0.0).sqrt()
}

/// ΔE2000 between two 8-bit colors.
pub fn delta_e_rgb(c1: Rgb8, c2: Rgb8) -> f64 {
    delta_e_2000(srgb_to_lab(c1), srgb_to_lab(c2))
}

/// WCAG 2.1 relative luminance in `[0, 1]`.
pub fn wcag_relative_luminance(c: Rgb8) -> f64 {
    let [r, g, b] = linear_rgb(c);
    0.2126 * r + 0.7152 * g + 0.0722 * b
}

/// WCAG contrast ratio in `[1, 21]`, symmetric in its arguments.
pub fn wcag_contrast_ratio(c1: Rgb8, c2: Rgb8) -> f64 {
    let l1 = wcag_relative_luminance(c1);
    let l2 = wcag_relative_luminance(c2);
    let (hi, lo) = if l1 >= l2 { (l1, l2) } else { (l2, l1) };
    (hi + 0.05) / (lo + 0.05)
}

//! Schema colors.
//!
//! Well-known schema families get a fixed hue so a pink circle always means
//! persistence, whatever project is on screen. Members of one family share the
//! hue and step through lightness. Other families get a hue derived from a
//! hash of their family key. White and the two grays carry structure and
//! black marks unresolved annotations, so no schema color may come near them.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::schema::{family_key, Schema, UNRESOLVED};

pub const CLASS_FILL: &str = "#FFFFFF";
pub const BACKGROUND_GRAY: &str = "#EEEEEE";
pub const ELEMENT_GRAY: &str = "#BDBDBD";
pub const UNRESOLVED_BLACK: &str = "#000000";

pub const MIN_SATURATION: f64 = 0.25;
pub const MAX_LIGHTNESS: f64 = 0.92;
pub const MIN_LIGHTNESS: f64 = 0.08;

/// Two colors are told apart when either difference reaches its threshold.
pub const MIN_HUE_GAP: f64 = 12.0;
pub const MIN_LIGHTNESS_GAP: f64 = 0.12;

/// Half-width of the hue band kept free around each fixed family.
const FIXED_BAND: f64 = 15.0;
const FIXED_SATURATION: f64 = 0.70;
const HASHED_SATURATION: f64 = 0.65;
/// Lightness for successive members of one family; 0.125 apart.
const LIGHTNESS_STEPS: [f64; 5] = [0.55, 0.425, 0.675, 0.30, 0.80];
/// Hue offsets tried once a fixed family runs out of lightness steps.
const FIXED_HUE_OFFSETS: [f64; 3] = [0.0, -13.0, 13.0];

pub const BLUE: f64 = 215.0;
pub const PINK: f64 = 330.0;
pub const ORANGE: f64 = 30.0;
pub const PURPLE: f64 = 275.0;
pub const GREEN: f64 = 135.0;

/// Fixed families, keyed by the first two package segments.
pub const FIXED_FAMILIES: &[(&str, f64)] = &[
    ("java.lang", BLUE),
    ("javax.persistence", PINK),
    ("org.hibernate", PINK),
    ("org.springframework", ORANGE),
    ("org.junit", PURPLE),
    ("org.mockito", PURPLE),
    ("javax.ejb", GREEN),
];

const FIXED_HUES: [f64; 5] = [BLUE, PINK, ORANGE, PURPLE, GREEN];

#[derive(Debug, Error, PartialEq)]
pub enum PaletteError {
    #[error("color override for `{schema}` ({color}) collides with a reserved color: {reason}")]
    OverrideConflict {
        schema: String,
        color: String,
        reason: String,
    },
    #[error("`{0}` is not a #RRGGBB color")]
    BadColor(String),
    #[error("cannot read color config {path}: {message}")]
    Config { path: String, message: String },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hsl {
    /// Degrees in `[0, 360)`.
    pub h: f64,
    pub s: f64,
    pub l: f64,
}

impl Hsl {
    pub fn new(h: f64, s: f64, l: f64) -> Self {
        Self {
            h: h.rem_euclid(360.0),
            s,
            l,
        }
    }

    pub fn to_rgb(self) -> [u8; 3] {
        let c = (1.0 - (2.0 * self.l - 1.0).abs()) * self.s;
        let hp = self.h / 60.0;
        let x = c * (1.0 - (hp.rem_euclid(2.0) - 1.0).abs());
        let (r, g, b) = match hp as u32 {
            0 => (c, x, 0.0),
            1 => (x, c, 0.0),
            2 => (0.0, c, x),
            3 => (0.0, x, c),
            4 => (x, 0.0, c),
            _ => (c, 0.0, x),
        };
        let m = self.l - c / 2.0;
        let to_byte = |v: f64| ((v + m) * 255.0).round().clamp(0.0, 255.0) as u8;
        [to_byte(r), to_byte(g), to_byte(b)]
    }

    pub fn from_rgb([r, g, b]: [u8; 3]) -> Self {
        let (r, g, b) = (r as f64 / 255.0, g as f64 / 255.0, b as f64 / 255.0);
        let max = r.max(g).max(b);
        let min = r.min(g).min(b);
        let l = (max + min) / 2.0;
        let d = max - min;
        if d == 0.0 {
            return Self { h: 0.0, s: 0.0, l };
        }
        let s = d / (1.0 - (2.0 * l - 1.0).abs());
        let h = if max == r {
            60.0 * ((g - b) / d).rem_euclid(6.0)
        } else if max == g {
            60.0 * ((b - r) / d + 2.0)
        } else {
            60.0 * ((r - g) / d + 4.0)
        };
        Self::new(h, s, l)
    }

    pub fn to_hex(self) -> String {
        let [r, g, b] = self.to_rgb();
        format!("#{r:02X}{g:02X}{b:02X}")
    }

    pub fn parse_hex(text: &str) -> Result<Self, PaletteError> {
        let bad = || PaletteError::BadColor(text.to_owned());
        let digits = text.strip_prefix('#').ok_or_else(bad)?;
        if digits.len() != 6 || !digits.chars().all(|c| c.is_ascii_hexdigit()) {
            return Err(bad());
        }
        let byte = |i: usize| u8::from_str_radix(&digits[i..i + 2], 16).map_err(|_| bad());
        Ok(Self::from_rgb([byte(0)?, byte(2)?, byte(4)?]))
    }

    /// Why this color would read as white, gray or black, if it would.
    pub fn reservation_violation(self) -> Option<&'static str> {
        if self.s < MIN_SATURATION {
            Some("saturation too low, reads as gray")
        } else if self.l > MAX_LIGHTNESS {
            Some("lightness too high, reads as white")
        } else if self.l < MIN_LIGHTNESS {
            Some("lightness too low, reads as black")
        } else {
            None
        }
    }

    pub fn distinct_from(self, other: Hsl) -> bool {
        hue_distance(self.h, other.h) >= MIN_HUE_GAP || (self.l - other.l).abs() >= MIN_LIGHTNESS_GAP
    }
}

impl fmt::Display for Hsl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

pub fn hue_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(360.0);
    d.min(360.0 - d)
}

/// What a schema's color is.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SchemaColor {
    Assigned(Hsl),
    /// The unresolved pseudo-schema, drawn in reserved black.
    Unresolved,
}

impl SchemaColor {
    pub fn to_hex(self) -> String {
        match self {
            SchemaColor::Assigned(c) => c.to_hex(),
            SchemaColor::Unresolved => UNRESOLVED_BLACK.to_owned(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ColorAssignment {
    pub colors: BTreeMap<String, SchemaColor>,
}

impl ColorAssignment {
    pub fn get(&self, schema_id: &str) -> Option<SchemaColor> {
        self.colors.get(schema_id).copied()
    }

    pub fn hex(&self, schema_id: &str) -> Option<String> {
        self.get(schema_id).map(SchemaColor::to_hex)
    }
}

/// User color overrides, as read from `{ "colors": { "<schema>": "#RRGGBB" } }`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ColorConfig {
    #[serde(default)]
    pub colors: BTreeMap<String, String>,
}

impl ColorConfig {
    pub fn load(path: &Path) -> Result<Self, PaletteError> {
        let err = |message: String| PaletteError::Config {
            path: path.display().to_string(),
            message,
        };
        let text = std::fs::read_to_string(path).map_err(|e| err(e.to_string()))?;
        serde_json::from_str(&text).map_err(|e| err(e.to_string()))
    }
}

fn fixed_hue(family: &str) -> Option<f64> {
    FIXED_FAMILIES.iter().find(|(key, _)| *key == family).map(|&(_, hue)| hue)
}

/// Width of the hue circle left after removing the fixed bands.
fn free_hue_span() -> f64 {
    360.0 - FIXED_HUES.len() as f64 * 2.0 * FIXED_BAND
}

/// Maps `t ∈ [0, free_hue_span())` onto the hue circle, skipping fixed bands.
fn free_hue_at(t: f64) -> f64 {
    let mut bands: Vec<(f64, f64)> = FIXED_HUES
        .iter()
        .map(|h| ((h - FIXED_BAND).rem_euclid(360.0), 2.0 * FIXED_BAND))
        .collect();
    bands.sort_by(|a, b| a.0.total_cmp(&b.0));
    // walk the free arcs starting just after the first band
    let mut remaining = t.rem_euclid(free_hue_span());
    for (i, &(start, width)) in bands.iter().enumerate() {
        let arc_start = start + width;
        let next_start = bands.get(i + 1).map_or(bands[0].0 + 360.0, |b| b.0);
        let arc = next_start - arc_start;
        if remaining < arc {
            return (arc_start + remaining).rem_euclid(360.0);
        }
        remaining -= arc;
    }
    (bands[0].0 + 2.0 * FIXED_BAND).rem_euclid(360.0)
}

fn fnv1a(text: &str) -> u64 {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for byte in text.bytes() {
        hash ^= byte as u64;
        hash = hash.wrapping_mul(0x0100_0000_01b3);
    }
    hash
}

/// Starting point, in tenths of a degree of free hue, for a family.
fn hashed_offset(family: &str) -> u64 {
    let slots = (free_hue_span() * 10.0) as u64;
    fnv1a(family) % slots
}

fn conflicts(candidate: Hsl, taken: &[Hsl]) -> bool {
    taken.iter().any(|t| !candidate.distinct_from(*t))
}

/// Assigns a color to every schema. Pure function of the schema id set and
/// the overrides.
pub fn assign_colors(
    schemas: &[Schema],
    overrides: Option<&ColorConfig>,
) -> Result<ColorAssignment, PaletteError> {
    let mut overridden: BTreeMap<&str, Hsl> = BTreeMap::new();
    if let Some(config) = overrides {
        for (schema, hex) in &config.colors {
            let color = Hsl::parse_hex(hex)?;
            let conflict = |reason: &str| PaletteError::OverrideConflict {
                schema: schema.clone(),
                color: hex.clone(),
                reason: reason.to_owned(),
            };
            if schema == UNRESOLVED {
                return Err(conflict("the unresolved pseudo-schema is always black"));
            }
            if let Some(reason) = color.reservation_violation() {
                return Err(conflict(reason));
            }
            overridden.insert(schema.as_str(), color);
        }
    }

    // group by family; fixed families first in their listed order, then the
    // others by family key
    let mut ids: Vec<&str> = schemas.iter().map(|s| s.id.as_str()).collect();
    ids.sort_unstable();
    ids.dedup();
    let mut families: BTreeMap<(usize, &str), Vec<&str>> = BTreeMap::new();
    let mut result = ColorAssignment::default();
    for id in ids {
        if id == UNRESOLVED {
            result.colors.insert(id.to_owned(), SchemaColor::Unresolved);
            continue;
        }
        if let Some(&color) = overridden.get(id) {
            result.colors.insert(id.to_owned(), SchemaColor::Assigned(color));
            continue;
        }
        let family = family_key(id);
        let rank = FIXED_FAMILIES
            .iter()
            .position(|(key, _)| *key == family)
            .unwrap_or(FIXED_FAMILIES.len());
        families.entry((rank, family)).or_default().push(id);
    }

    let mut taken: Vec<Hsl> = overridden.values().copied().collect();
    for ((_, family), members) in families {
        let (hues, saturation): (Vec<f64>, f64) = match fixed_hue(family) {
            Some(base) => (FIXED_HUE_OFFSETS.iter().map(|o| base + o).collect(), FIXED_SATURATION),
            None => (hashed_hues(family, &taken), HASHED_SATURATION),
        };
        for id in members {
            let candidates = hues
                .iter()
                .flat_map(|&h| LIGHTNESS_STEPS.iter().map(move |&l| Hsl::new(h, saturation, l)));
            let fallback = Hsl::new(hues[0], saturation, LIGHTNESS_STEPS[0]);
            let color = candidates
                .clone()
                .find(|c| !conflicts(*c, &taken))
                .or_else(|| {
                    // crowded: search the whole free hue circle
                    (0..(free_hue_span() as u64))
                        .flat_map(|deg| {
                            LIGHTNESS_STEPS
                                .iter()
                                .map(move |&l| Hsl::new(free_hue_at(deg as f64), saturation, l))
                        })
                        .find(|c| !conflicts(*c, &taken))
                })
                .unwrap_or(fallback);
            taken.push(color);
            result.colors.insert(id.to_owned(), SchemaColor::Assigned(color));
        }
    }
    Ok(result)
}

/// Hue candidates for a non-fixed family: the hashed hue first, moved forward
/// through the free arc until no taken hue is within the minimum gap.
fn hashed_hues(family: &str, taken: &[Hsl]) -> Vec<f64> {
    let start = hashed_offset(family) as f64 / 10.0;
    let span = free_hue_span() as usize;
    let clear = (0..span)
        .map(|step| free_hue_at(start + step as f64))
        .find(|&h| taken.iter().all(|t| hue_distance(h, t.h) >= MIN_HUE_GAP));
    vec![clear.unwrap_or_else(|| free_hue_at(start))]
}

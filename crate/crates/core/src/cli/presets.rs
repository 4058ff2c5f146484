use crate::error::{Error, Result};

use super::config::RunConfig;

/// Bundled configurations carrying the reference coefficient sets.
pub const PRESETS: &[(&str, &str)] = &[
    ("thm1", include_str!("../../presets/thm1.toml")),
    ("thm1_star", include_str!("../../presets/thm1_star.toml")),
    ("thm2", include_str!("../../presets/thm2.toml")),
    ("thm2_star", include_str!("../../presets/thm2_star.toml")),
];

pub fn preset_names() -> impl Iterator<Item = &'static str> {
    PRESETS.iter().map(|(n, _)| *n)
}

pub fn preset_text(name: &str) -> Result<&'static str> {
    PRESETS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, t)| *t)
        .ok_or_else(|| {
            Error::Parse(format!(
                "unknown preset `{name}`; available: {}",
                preset_names().collect::<Vec<_>>().join(", ")
            ))
        })
}

pub fn load_preset(name: &str) -> Result<RunConfig> {
    RunConfig::from_toml(preset_text(name)?)
}

use super::{from_toml_str, MorseData, MorseDataError};

pub const BUILTIN_NAMES: [&str; 3] = ["s2_height_area", "t2_cos_dx", "t2_cos_zero"];

fn source(name: &str) -> Option<&'static str> {
    Some(match name {
        "s2_height_area" => include_str!("../../data/s2_height_area.toml"),
        "t2_cos_dx" => include_str!("../../data/t2_cos_dx.toml"),
        "t2_cos_zero" => include_str!("../../data/t2_cos_zero.toml"),
        _ => return None,
    })
}

pub fn builtin(name: &str) -> Result<MorseData, MorseDataError> {
    let text = source(name).ok_or_else(|| MorseDataError::UnknownBuiltin(name.to_string()))?;
    from_toml_str(text)
}

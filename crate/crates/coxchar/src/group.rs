//! Group names (`B5`, `E6`, ...) and generator subsets on the command line.

use coxeter_core::coxgroup::GroupBox;
use coxeter_core::rootsys::{CoxeterDatum, CoxeterType};

use crate::AppError;

/// Parses `B5`, `b5` or `B 5`.
pub fn parse_group_name(name: &str) -> Result<(CoxeterType, usize), AppError> {
    let compact: String = name.chars().filter(|c| !c.is_whitespace()).collect();
    let mut chars = compact.chars();
    let family = chars
        .next()
        .and_then(|c| CoxeterType::from_letter(c.to_ascii_uppercase()))
        .ok_or_else(|| AppError::Usage(format!("unknown group {name:?}")))?;
    let rank: usize = chars.as_str().parse().map_err(|_| AppError::Usage(format!("bad rank in group {name:?}")))?;
    Ok((family, rank))
}

pub fn group_name(family: CoxeterType, rank: usize) -> String {
    format!("{}{}", family.letter(), rank)
}

pub fn build_group(name: &str) -> Result<GroupBox, AppError> {
    let (family, rank) = parse_group_name(name)?;
    Ok(GroupBox::of_type(family, rank)?)
}

/// Parses a subset given as generator labels separated by commas or
/// spaces, e.g. `1,2,4,5` or `1' 2 3 4`. `S` (or `all`) is the full set and
/// an empty string the empty set.
pub fn parse_subset(datum: &CoxeterDatum, text: &str) -> Result<Vec<usize>, AppError> {
    let t = text.trim().trim_start_matches('{').trim_end_matches('}');
    if t == "S" || t == "all" {
        return Ok((0..datum.rank()).collect());
    }
    let mut out = Vec::new();
    for label in t.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()) {
        let i = datum.label_index(label).ok_or_else(|| AppError::Usage(format!("unknown generator {label:?}")))?;
        out.push(i);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// `{1,2,4,5}`.
pub fn format_subset(datum: &CoxeterDatum, subset: &[usize]) -> String {
    let labels: Vec<&str> = subset.iter().map(|&i| datum.labels()[i].as_str()).collect();
    format!("{{{}}}", labels.join(","))
}

//! Parameter grids (`a:b:count` or comma lists) and `key=value` option lists.

use std::collections::BTreeMap;
use std::str::FromStr;

use crate::error::{usage, CliResult};

/// `"0.005:0.1:20"` is 20 evenly spaced points from 0.005 to 0.1 inclusive;
/// `"0.001,0.01"` is an explicit list.
pub fn parse_grid(text: &str) -> CliResult<Vec<f64>> {
    let number = |s: &str| {
        s.trim()
            .parse::<f64>()
            .map_err(|e| usage(format!("bad grid value '{s}': {e}")))
    };
    let points = if text.contains(':') {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 3 {
            return Err(usage(format!("grid '{text}' must look like start:end:count")));
        }
        let (lo, hi) = (number(parts[0])?, number(parts[1])?);
        let count: usize = parts[2]
            .trim()
            .parse()
            .map_err(|e| usage(format!("bad grid count '{}': {e}", parts[2])))?;
        match count {
            0 => Vec::new(),
            1 => vec![lo],
            _ => (0..count)
                .map(|k| lo + (hi - lo) * k as f64 / (count - 1) as f64)
                .collect(),
        }
    } else {
        text.split(',')
            .filter(|s| !s.trim().is_empty())
            .map(number)
            .collect::<CliResult<Vec<_>>>()?
    };
    if points.is_empty() {
        return Err(usage(format!("grid '{text}' is empty")));
    }
    if let Some(bad) = points.iter().find(|v| !(**v > 0.0) || !v.is_finite()) {
        return Err(usage(format!("grid values must be positive, got {bad}")));
    }
    Ok(points)
}

/// `["q=16"]` → `{q: "16"}`; unknown keys are rejected.
pub fn parse_pairs(items: &[String], allowed: &[&str]) -> CliResult<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for item in items {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| usage(format!("expected key=value, got '{item}'")))?;
        if !allowed.contains(&k) {
            return Err(usage(format!("unknown key '{k}' (expected one of {})", allowed.join(", "))));
        }
        if out.insert(k.to_string(), v.to_string()).is_some() {
            return Err(usage(format!("key '{k}' given twice")));
        }
    }
    Ok(out)
}

pub fn required<T: FromStr>(pairs: &BTreeMap<String, String>, key: &str) -> CliResult<T>
where
    T::Err: std::fmt::Display,
{
    let raw = pairs.get(key).ok_or_else(|| usage(format!("missing {key}=...")))?;
    raw.parse().map_err(|e| usage(format!("bad value for {key}: {e}")))
}

pub fn optional<T: FromStr>(pairs: &BTreeMap<String, String>, key: &str, default: T) -> CliResult<T>
where
    T::Err: std::fmt::Display,
{
    match pairs.get(key) {
        Some(_) => required(pairs, key),
        None => Ok(default),
    }
}

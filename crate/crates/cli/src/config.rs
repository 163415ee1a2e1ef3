//! Flat key-value configuration files with `[section]` headers, plus the
//! list/fraction parsing helpers shared by the flag interface.
//!
//! ```text
//! # comment
//! [converge]
//! scheme = both
//! tau_list = 1/40,1/80,1/160
//!
//! [problem]
//! preset = example1
//! alpha = 0.7
//! ```

use std::collections::HashMap;
use std::path::Path;

use mtfrac::model::{FracTerm, ModelCoefficients, OldroydBParams, ProblemSpec};
use mtfrac::{Error, Result};
use std::sync::Arc;

/// Parsed configuration: section name (lowercase) -> key -> raw value.
#[derive(Clone, Debug, Default)]
pub struct Config {
    sections: HashMap<String, HashMap<String, String>>,
}

impl Config {
    pub fn parse(text: &str) -> Result<Self> {
        let mut sections: HashMap<String, HashMap<String, String>> = HashMap::new();
        let mut current = String::from("");
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') || line.starts_with(';') {
                continue;
            }
            if let Some(name) = line.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
                current = name.trim().to_lowercase();
                sections.entry(current.clone()).or_default();
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(Error::Usage(format!(
                    "config line {} is neither `key = value` nor a [section]: {line}",
                    lineno + 1
                )));
            };
            sections
                .entry(current.clone())
                .or_default()
                .insert(key.trim().to_lowercase(), value.trim().to_string());
        }
        Ok(Config { sections })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Usage(format!("cannot read config {}: {e}", path.display())))?;
        Config::parse(&text)
    }

    pub fn get(&self, section: &str, key: &str) -> Option<&str> {
        self.sections.get(section)?.get(key).map(String::as_str)
    }

    pub fn get_f64(&self, section: &str, key: &str) -> Result<Option<f64>> {
        match self.get(section, key) {
            None => Ok(None),
            Some(raw) => parse_number(raw).map(Some),
        }
    }

    pub fn get_usize(&self, section: &str, key: &str) -> Result<Option<usize>> {
        match self.get(section, key) {
            None => Ok(None),
            Some(raw) => raw
                .parse::<usize>()
                .map(Some)
                .map_err(|e| Error::Usage(format!("bad integer `{raw}` for {section}.{key}: {e}"))),
        }
    }

    pub fn get_bool(&self, section: &str, key: &str) -> Result<Option<bool>> {
        match self.get(section, key) {
            None => Ok(None),
            Some("true") | Some("1") | Some("yes") => Ok(Some(true)),
            Some("false") | Some("0") | Some("no") => Ok(Some(false)),
            Some(other) => Err(Error::Usage(format!(
                "bad boolean `{other}` for {section}.{key}"
            ))),
        }
    }
}

/// Parse a number that may be written as a fraction: `1/40` or `0.025`.
pub fn parse_number(raw: &str) -> Result<f64> {
    let raw = raw.trim();
    if let Some((num, den)) = raw.split_once('/') {
        let n: f64 = num
            .trim()
            .parse()
            .map_err(|e| Error::Usage(format!("bad fraction numerator `{num}`: {e}")))?;
        let d: f64 = den
            .trim()
            .parse()
            .map_err(|e| Error::Usage(format!("bad fraction denominator `{den}`: {e}")))?;
        if d == 0.0 {
            return Err(Error::Usage(format!("zero denominator in `{raw}`")));
        }
        return Ok(n / d);
    }
    raw.parse()
        .map_err(|e| Error::Usage(format!("bad number `{raw}`: {e}")))
}

/// Parse a comma-separated list of numbers (fractions allowed).
pub fn parse_number_list(raw: &str) -> Result<Vec<f64>> {
    raw.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(parse_number)
        .collect()
}

/// Parse a size list: either `1..300` (inclusive range) or a comma list.
pub fn parse_size_list(raw: &str) -> Result<Vec<usize>> {
    let raw = raw.trim();
    if let Some((lo, hi)) = raw.split_once("..") {
        let lo: usize = lo
            .trim()
            .parse()
            .map_err(|e| Error::Usage(format!("bad range start `{lo}`: {e}")))?;
        let hi: usize = hi
            .trim()
            .parse()
            .map_err(|e| Error::Usage(format!("bad range end `{hi}`: {e}")))?;
        if lo == 0 || hi < lo {
            return Err(Error::Usage(format!("bad size range `{raw}`")));
        }
        return Ok((lo..=hi).collect());
    }
    raw.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|e| Error::Usage(format!("bad size `{s}`: {e}")))
        })
        .collect()
}

/// Parse `coeff:order` pair lists for the general preset,
/// e.g. `1.0:1.5, 0.5:1.8`.
pub fn parse_term_list(raw: &str) -> Result<Vec<FracTerm>> {
    raw.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|pair| {
            let (c, o) = pair.split_once(':').ok_or_else(|| {
                Error::Usage(format!("term `{pair}` is not of the form coeff:order"))
            })?;
            Ok(FracTerm::new(parse_number(c)?, parse_number(o)?))
        })
        .collect()
}

/// Oldroyd-B parameters from a `[problem]` section, with defaults from the
/// Couette benchmark.
pub fn oldroyd_params_from(config: &Config) -> Result<OldroydBParams> {
    Ok(OldroydBParams {
        lambda_relax: config.get_f64("problem", "lambda")?.unwrap_or(3.0),
        theta_retard: config.get_f64("problem", "theta")?.unwrap_or(4.0),
        alpha: config.get_f64("problem", "alpha")?.unwrap_or(0.5),
        beta: config.get_f64("problem", "beta")?.unwrap_or(0.6),
        nu: config.get_f64("problem", "nu")?.unwrap_or(1.0),
        magnetic: config.get_f64("problem", "k")?.unwrap_or(2.0),
    })
}

/// Build a problem from a `[problem]` section naming a preset:
/// `example1`, `oldroyd-mhd`, or `general` (explicit coefficient lists with
/// zero data and an optional `amp * t^power` right boundary).
pub fn problem_from(config: &Config) -> Result<ProblemSpec> {
    let preset = config.get("problem", "preset").unwrap_or("example1");
    match preset {
        "example1" => {
            let alpha = config.get_f64("problem", "alpha")?.unwrap_or(0.7);
            let beta = config.get_f64("problem", "beta")?.unwrap_or(0.6);
            let gamma = config.get_f64("problem", "gamma")?.unwrap_or(1.5);
            mtfrac::model::example1_problem(alpha, beta, gamma)
        }
        "oldroyd-mhd" => {
            let params = oldroyd_params_from(config)?;
            let p_exp = config.get_f64("problem", "p_exp")?.unwrap_or(1.0);
            let raw_times = config.get_bool("problem", "raw_times")?.unwrap_or(false);
            mtfrac::model::example2_problem(p_exp, &params, raw_times)
        }
        "general" => {
            let coeffs = ModelCoefficients::new(
                config.get_f64("problem", "a1")?.unwrap_or(1.0),
                config.get_f64("problem", "a2")?.unwrap_or(0.0),
                config.get_f64("problem", "a3")?.unwrap_or(1.0),
                config.get_f64("problem", "a4")?.unwrap_or(0.0),
                config
                    .get("problem", "gamma_terms")
                    .map(parse_term_list)
                    .transpose()?
                    .unwrap_or_default(),
                config
                    .get("problem", "alpha_terms")
                    .map(parse_term_list)
                    .transpose()?
                    .unwrap_or_default(),
                config.get_f64("problem", "beta")?.unwrap_or(0.5),
            )?;
            let length = config.get_f64("problem", "l")?.unwrap_or(1.0);
            let final_time = config.get_f64("problem", "t")?.unwrap_or(1.0);
            let amp = config.get_f64("problem", "right_boundary_amp")?.unwrap_or(0.0);
            let power = config
                .get_f64("problem", "right_boundary_power")?
                .unwrap_or(1.0);
            ProblemSpec::new(
                coeffs,
                length,
                final_time,
                Arc::new(|_| 0.0),
                Arc::new(|_| 0.0),
                Arc::new(|_| 0.0),
                Arc::new(move |t: f64| amp * t.powf(power)),
                Arc::new(|_, _| 0.0),
            )
        }
        other => Err(Error::Usage(format!(
            "unknown problem preset `{other}` (expected example1, oldroyd-mhd or general)"
        ))),
    }
}

//! Sweep configuration: one JSON object, strictly validated. Unknown keys
//! are rejected so a typo in a physics parameter cannot silently vanish.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::args::{FormatArg, MethodArg, ScenarioArg};
use crate::error::CliError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    #[serde(default = "default_scenario")]
    pub scenario: ScenarioArg,
    /// Required (nonempty) for the late scenario; must be absent for early.
    #[serde(default)]
    pub gamma0_values: Vec<f64>,
    pub omega_over_t_values: Vec<f64>,
    pub n_values: Vec<usize>,
    pub m_values: Vec<usize>,
    #[serde(default = "default_method")]
    pub method: MethodArg,
    #[serde(default = "default_tol")]
    pub tol: f64,
    #[serde(default = "default_ceiling")]
    pub n_max_ceiling: usize,
    #[serde(default)]
    pub out: Option<PathBuf>,
    #[serde(default = "default_format")]
    pub format: FormatArg,
}

fn default_scenario() -> ScenarioArg {
    ScenarioArg::Late
}

fn default_method() -> MethodArg {
    MethodArg::Analytic
}

fn default_tol() -> f64 {
    1e-8
}

fn default_ceiling() -> usize {
    40
}

fn default_format() -> FormatArg {
    FormatArg::Csv
}

impl SweepConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)?;
        let config: SweepConfig = serde_json::from_str(&text)
            .map_err(|e| CliError::Config(format!("config {}: {e}", path.display())))?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |msg: String| Err(CliError::Config(msg));
        match self.scenario {
            ScenarioArg::Late => {
                if self.gamma0_values.is_empty() {
                    return bad("late scenario needs a nonempty gamma0_values list".into());
                }
                if let Some(g) = self
                    .gamma0_values
                    .iter()
                    .find(|g| !(0.0..=1.0).contains(*g) || !g.is_finite())
                {
                    return bad(format!("gamma0 must lie in [0, 1], got {g}"));
                }
            }
            ScenarioArg::Early => {
                if !self.gamma0_values.is_empty() {
                    return bad("early scenario takes no gamma0_values".into());
                }
            }
        }
        if self.omega_over_t_values.is_empty() {
            return bad("omega_over_t_values must be nonempty".into());
        }
        if let Some(x) = self
            .omega_over_t_values
            .iter()
            .find(|x| !(**x > 0.0) || !x.is_finite())
        {
            return bad(format!("omega/T must be positive and finite, got {x}"));
        }
        if self.n_values.is_empty() || self.m_values.is_empty() {
            return bad("n_values and m_values must be nonempty".into());
        }
        if self.n_values.contains(&0) {
            return bad("N must be at least 1".into());
        }
        if self.m_values.contains(&0) {
            return bad("M must be at least 1".into());
        }
        if self.scenario == ScenarioArg::Early {
            let n_hi = *self.n_values.iter().max().unwrap();
            let m_lo = *self.m_values.iter().min().unwrap();
            if m_lo < n_hi {
                return bad(format!(
                    "early scenario needs M >= N for every grid point (min M = {m_lo}, max N = {n_hi})"
                ));
            }
        }
        if !(self.tol > 0.0) {
            return bad(format!("tol must be positive, got {}", self.tol));
        }
        if self.n_max_ceiling == 0 {
            return bad("n_max_ceiling must be at least 1".into());
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<SweepConfig, serde_json::Error> {
        serde_json::from_str(text)
    }

    #[test]
    fn minimal_late_config_parses_with_defaults() {
        let c = parse(
            r#"{"gamma0_values": [0.5], "omega_over_t_values": [2.0],
                "n_values": [1], "m_values": [1, 2]}"#,
        )
        .unwrap();
        c.validate().unwrap();
        assert_eq!(c.scenario, ScenarioArg::Late);
        assert_eq!(c.method, MethodArg::Analytic);
        assert_eq!(c.tol, 1e-8);
        assert_eq!(c.n_max_ceiling, 40);
        assert_eq!(c.format, FormatArg::Csv);
    }

    #[test]
    fn unknown_keys_are_rejected_at_parse_time() {
        let err = parse(
            r#"{"gamma0_values": [0.5], "omega_over_t_values": [2.0],
                "n_values": [1], "m_values": [1], "gamma_values": [0.3]}"#,
        )
        .unwrap_err();
        assert!(err.to_string().contains("gamma_values"));
    }

    #[test]
    fn scenario_rules_are_enforced() {
        let late_empty = parse(
            r#"{"gamma0_values": [], "omega_over_t_values": [2.0],
                "n_values": [1], "m_values": [1]}"#,
        )
        .unwrap();
        assert!(late_empty.validate().is_err());

        let early_with_gamma = parse(
            r#"{"scenario": "early", "gamma0_values": [0.5],
                "omega_over_t_values": [2.0], "n_values": [1], "m_values": [1]}"#,
        )
        .unwrap();
        assert!(early_with_gamma.validate().is_err());

        let early_m_below_n = parse(
            r#"{"scenario": "early", "omega_over_t_values": [2.0],
                "n_values": [2], "m_values": [1, 4]}"#,
        )
        .unwrap();
        assert!(early_m_below_n.validate().is_err());

        let early_ok = parse(
            r#"{"scenario": "early", "omega_over_t_values": [2.0],
                "n_values": [2], "m_values": [2, 4]}"#,
        )
        .unwrap();
        early_ok.validate().unwrap();
    }

    #[test]
    fn out_of_range_values_are_rejected() {
        for text in [
            r#"{"gamma0_values": [1.2], "omega_over_t_values": [2.0], "n_values": [1], "m_values": [1]}"#,
            r#"{"gamma0_values": [0.5], "omega_over_t_values": [-1.0], "n_values": [1], "m_values": [1]}"#,
            r#"{"gamma0_values": [0.5], "omega_over_t_values": [2.0], "n_values": [0], "m_values": [1]}"#,
            r#"{"gamma0_values": [0.5], "omega_over_t_values": [2.0], "n_values": [1], "m_values": [0]}"#,
            r#"{"gamma0_values": [0.5], "omega_over_t_values": [2.0], "n_values": [1], "m_values": [1], "tol": 0.0}"#,
        ] {
            assert!(parse(text).unwrap().validate().is_err(), "accepted: {text}");
        }
    }
}
